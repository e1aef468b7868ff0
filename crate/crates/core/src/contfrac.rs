//! g-fractions for w_{a,b,c} and the derived fractions T and U, value-region
//! disks, and total monotonicity of coefficient sequences.
//!
//! A g-fraction is
//!
//! ```text
//! h(0) / (1 - (1-g0) g1 z / (1 - (1-g1) g2 z / (1 - ...)))
//! ```
//!
//! with every g_n in [0, 1]. For -1 <= a <= c and 0 < b <= c the ratio
//! w_{a,b,c} has such an expansion with h(0) = 1, g0 = 0 and
//! g_{2k} = (a+k)/(c+2k-1), g_{2k-1} = (b+k-1)/(c+2k-2).

use crate::dd::DoubleDouble;

use crate::error::{Error, Result};
use crate::hyp2f1::{Params, C64};

/// Substitute for vanishing Lentz denominators.
const LENTZ_TINY: f64 = 1e-30;

/// Default stopping tolerance of [`cf_eval`].
pub const CF_TOL: f64 = 1e-14;

/// Default depth limit of [`cf_eval`].
pub const CF_MAX_DEPTH: usize = 10_000;

/// Coefficient g_n of the fraction for w_{a,b,c}.
pub fn g_coeff(p: &Params, n: usize) -> Result<f64> {
    if !p.fraction_ok() {
        return Err(Error::domain(format!(
            "g-fraction needs -1 <= a <= c and 0 < b <= c, got ({}, {}, {})",
            p.a, p.b, p.c
        )));
    }
    Ok(g_unchecked(p, n))
}

fn g_unchecked(p: &Params, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let k = n.div_ceil(2) as f64;
    if n % 2 == 0 {
        (p.a + k) / (p.c + 2.0 * k - 1.0)
    } else {
        (p.b + k - 1.0) / (p.c + 2.0 * k - 2.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    /// g'_n = g_{n+shift}, or 1 - g_{n+shift} when `complement` is set.
    Kustner {
        params: Params,
        shift: usize,
        complement: bool,
    },
    /// g_0, g_1, ...; entries past the end are zero, which terminates the fraction.
    Explicit(Vec<f64>),
}

/// Coefficient sequence of a g-fraction together with its leading value h(0).
#[derive(Debug, Clone, PartialEq)]
pub struct GSequence {
    h0: f64,
    kind: Kind,
}

impl GSequence {
    /// The fraction of w_{a,b,c}: h(0) = 1, g_0 = 0.
    pub fn kustner(p: &Params) -> Result<Self> {
        g_coeff(p, 0)?;
        Ok(Self {
            h0: 1.0,
            kind: Kind::Kustner { params: *p, shift: 0, complement: false },
        })
    }

    /// T = g1 / (1 - (1-g1) g2 z / (1 - (1-g2) g3 z / ...)), so that w = 1/(1 - zT).
    pub fn t_fraction(p: &Params) -> Result<Self> {
        let g1 = g_coeff(p, 1)?;
        Ok(Self {
            h0: g1,
            kind: Kind::Kustner { params: *p, shift: 1, complement: false },
        })
    }

    /// U = (1-g1) / (1 - g1(1-g2) z / (1 - g2(1-g3) z / ...)), so that w = (1 - zU)/(1 - z).
    pub fn u_fraction(p: &Params) -> Result<Self> {
        let g1 = g_coeff(p, 1)?;
        Ok(Self {
            h0: 1.0 - g1,
            kind: Kind::Kustner { params: *p, shift: 1, complement: true },
        })
    }

    /// Arbitrary coefficients `g[0], g[1], ...`; the fraction ends after the list.
    pub fn explicit(h0: f64, g: Vec<f64>) -> Self {
        Self { h0, kind: Kind::Explicit(g) }
    }

    pub fn h0(&self) -> f64 {
        self.h0
    }

    pub fn params(&self) -> Option<Params> {
        match self.kind {
            Kind::Kustner { params, .. } => Some(params),
            Kind::Explicit(_) => None,
        }
    }

    pub fn g(&self, n: usize) -> f64 {
        match &self.kind {
            Kind::Kustner { params, shift, complement } => {
                let g = g_unchecked(params, n + shift);
                if *complement {
                    1.0 - g
                } else {
                    g
                }
            }
            Kind::Explicit(g) => g.get(n).copied().unwrap_or(0.0),
        }
    }

    fn partial_numerator(&self, n: usize, z: C64) -> Result<C64> {
        let (prev, cur) = (self.g(n - 1), self.g(n));
        if !(0.0..=1.0).contains(&cur) || !(0.0..=1.0).contains(&prev) {
            return Err(Error::domain(format!("g_{n} = {cur} lies outside [0, 1]")));
        }
        Ok(-(1.0 - prev) * cur * z)
    }
}

/// Evaluates a g-fraction at z by the modified Lentz scheme.
pub fn cf_eval(g: &GSequence, z: C64, tol: f64, max_depth: usize) -> Result<C64> {
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::domain(format!("|z| = {} exceeds 1", z.norm())));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance {tol} must be positive")));
    }
    let tiny = C64::new(LENTZ_TINY, 0.0);
    let one = C64::new(1.0, 0.0);
    let mut f = one;
    let mut c = f;
    let mut d = C64::new(0.0, 0.0);
    let mut f_prev = f;
    for n in 1..=max_depth {
        let a_n = g.partial_numerator(n, z)?;
        d = one + a_n * d;
        if d.norm() < LENTZ_TINY {
            d = tiny;
        }
        c = one + a_n / c;
        if c.norm() < LENTZ_TINY {
            c = tiny;
        }
        d = one / d;
        let delta = c * d;
        f_prev = f;
        f *= delta;
        if (delta - one).norm() < tol {
            return Ok(g.h0 / f);
        }
    }
    Err(Error::FractionConvergence {
        depth: max_depth,
        last: g.h0 / f,
        previous: g.h0 / f_prev,
    })
}

/// The first `count` convergents of a g-fraction, by the forward recurrence.
pub fn cf_convergents(g: &GSequence, z: C64, count: usize) -> Result<Vec<C64>> {
    let one = C64::new(1.0, 0.0);
    // A_n / B_n with A_{-1} = 1, A_0 = 0 shifted so the first convergent is h0.
    let (mut a_prev, mut a_cur) = (one, one);
    let (mut b_prev, mut b_cur) = (C64::new(0.0, 0.0), one);
    let mut out = Vec::with_capacity(count);
    for n in 1..=count {
        out.push(g.h0 / (a_cur / b_cur));
        let a_n = g.partial_numerator(n, z)?;
        let a_next = a_cur + a_n * a_prev;
        let b_next = b_cur + a_n * b_prev;
        a_prev = a_cur;
        a_cur = a_next;
        b_prev = b_cur;
        b_cur = b_next;
    }
    Ok(out)
}

/// w_{a,b,c}(z) from its g-fraction.
pub fn w_fraction(p: &Params, z: C64, tol: f64) -> Result<C64> {
    cf_eval(&GSequence::kustner(p)?, z, tol, CF_MAX_DEPTH)
}

/// T(z) and U(z) from their g-fractions; |z| <= 1.
pub fn eval_t_u(p: &Params, z: C64, tol: f64) -> Result<(C64, C64)> {
    let t = cf_eval(&GSequence::t_fraction(p)?, z, tol, CF_MAX_DEPTH)?;
    let u = cf_eval(&GSequence::u_fraction(p)?, z, tol, CF_MAX_DEPTH)?;
    Ok((t, u))
}

/// Closed disk in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskEnclosure {
    pub center: C64,
    pub radius: f64,
}

impl DiskEnclosure {
    pub fn new(center: C64, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) {
            return Err(Error::domain(format!("negative radius {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn contains(&self, v: C64) -> bool {
        self.contains_within(v, 1e-12)
    }

    pub fn contains_within(&self, v: C64, slack: f64) -> bool {
        (v - self.center).norm() <= self.radius + slack
    }

    /// Distance of v outside the disk, zero inside.
    pub fn excess(&self, v: C64) -> f64 {
        ((v - self.center).norm() - self.radius).max(0.0)
    }
}

/// Value-region disks of T and U valid on the closed unit disk.
pub fn enclosure_t_u(p: &Params) -> Result<(DiskEnclosure, DiskEnclosure)> {
    g_coeff(p, 0)?;
    let Params { b, c, .. } = *p;
    let t = DiskEnclosure::new(C64::new(c / (2.0 * c - b), 0.0), (c - b) / (2.0 * c - b))?;
    let u = DiskEnclosure::new(C64::new(c / (b + c), 0.0), b / (b + c))?;
    Ok((t, u))
}

/// Disk containing h(D) for h with totally monotone coefficients, from
/// its values at -1 and 1-.
pub fn cm_disk(h_at_minus1: f64, h_at_1minus: f64) -> Result<DiskEnclosure> {
    if !(0.0 < h_at_minus1 && h_at_minus1 <= h_at_1minus && h_at_1minus.is_finite()) {
        return Err(Error::domain(format!(
            "need 0 < h(-1) <= h(1-) < inf, got {h_at_minus1} and {h_at_1minus}"
        )));
    }
    DiskEnclosure::new(
        C64::new(0.5 * (h_at_1minus + h_at_minus1), 0.0),
        0.5 * (h_at_1minus - h_at_minus1),
    )
}

/// 1e-9 times the largest magnitude in the sequence.
pub fn default_monotone_tol(coeffs: &[f64]) -> f64 {
    1e-9 * coeffs.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// True iff every forward difference Delta^k a_n, n + k <= N - 1, is at
/// least -tol. Differences are formed in double-double arithmetic.
pub fn total_monotone_check(coeffs: &[f64], tol: f64) -> bool {
    let extended: Vec<DoubleDouble> = coeffs.iter().map(|&x| DoubleDouble::from(x)).collect();
    total_monotone_check_extended(&extended, tol)
}

/// [`total_monotone_check`] for coefficients already held in double-double.
pub fn total_monotone_check_extended(coeffs: &[DoubleDouble], tol: f64) -> bool {
    let floor = DoubleDouble::from(-tol);
    let mut row = coeffs.to_vec();
    while !row.is_empty() {
        if row.iter().any(|&x| x < floor) {
            return false;
        }
        row = row.windows(2).map(|w| w[0] - w[1]).collect();
    }
    true
}

/// First `count` Taylor coefficients of w_{a,b,c} at 0, as the quotient of
/// the two hypergeometric series, in double-double.
pub fn w_taylor_coefficients(p: &Params, count: usize) -> Vec<DoubleDouble> {
    let series = |a: f64| {
        let mut out = Vec::with_capacity(count);
        let mut t = DoubleDouble::from(1.0);
        for n in 0..count {
            out.push(t);
            let k = n as f64;
            let num = (DoubleDouble::from(a) + DoubleDouble::from(k)) * (DoubleDouble::from(p.b) + DoubleDouble::from(k));
            let den = (DoubleDouble::from(p.c) + DoubleDouble::from(k)) * DoubleDouble::from(k + 1.0);
            t = t * num / den;
        }
        out
    };
    let f = series(p.a);
    let g = series(p.a + 1.0);
    let mut w: Vec<DoubleDouble> = Vec::with_capacity(count);
    for n in 0..count {
        let mut acc = g[n];
        for j in 1..=n {
            acc = acc - f[j] * w[n - j];
        }
        w.push(acc);
    }
    w
}

/// Lower bound for w(-1) from the fraction truncated after g3:
/// 1 / (1 + g1 / (1 + (1-g1) g2 / (1 + (1-g2) g3))).
pub fn w_minus1_lower_depth3(p: &Params) -> Result<f64> {
    let g1 = g_coeff(p, 1)?;
    let g2 = g_coeff(p, 2)?;
    let g3 = g_coeff(p, 3)?;
    Ok(1.0 / (1.0 + g1 / (1.0 + (1.0 - g1) * g2 / (1.0 + (1.0 - g2) * g3))))
}

/// The same bound written as a rational function of (a, b, c).
pub fn w_minus1_depth3_rational(p: &Params) -> f64 {
    let Params { a, b, c } = *p;
    let num = (c + 1.0) * (-2.0 * a * b + a * c + b * c - 2.0 * b + c * c + 4.0 * c);
    let den = -a * b * b - 2.0 * a * b * c - 3.0 * a * b + a * c * c + a * c + b * b * c
        + 2.0 * b * c * c
        + 3.0 * b * c
        + c * c * c
        + 5.0 * c * c
        + 4.0 * c;
    num / den
}
