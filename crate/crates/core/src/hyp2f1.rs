//! Gauss hypergeometric function 2F1(a,b;c;z) and its first two derivatives
//! on the closed unit disk minus z = 1.
//!
//! Evaluation paths:
//! - direct Maclaurin series in z;
//! - Pfaff transformation 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a,c-b;c;z/(z-1)),
//!   used when it shrinks the expansion variable;
//! - re-expansion of the hypergeometric ODE by Taylor steps, for points near
//!   the unit circle where neither of the above converges quickly;
//! - the connection formula in 1-z near z = 1, with the logarithmic variant
//!   when c = a+b.
//!
//! Derivatives are always obtained by differentiating the series term by
//! term and applying the chain/product rule to the transformation factors.

use num_complex::Complex64;

use crate::dd::{exact_sum, DoubleDouble};
use crate::error::{Error, Result};
use crate::specfun::{digamma_real, euler_gamma, gamma_real, is_gamma_pole, recip_gamma};

pub type C64 = Complex64;

/// Default relative stopping tolerance for series and fractions.
pub const DEFAULT_TOL: f64 = 1e-15;

/// Term budget of an ordinary series evaluation.
pub const SERIES_BUDGET: usize = 100_000;

/// Term budget of the near-integer `c-a-b` fallback.
pub const FALLBACK_BUDGET: usize = 1_000_000;

/// |c-a-b| at or below this is treated as the logarithmic case c = a+b.
const LOG_CASE_EPS: f64 = 1e-12;

/// Distance of c-a-b from a nonzero integer below which the connection
/// formula is abandoned.
const NEAR_INTEGER_EPS: f64 = 1e-6;

/// Above this expansion modulus the direct and Pfaff series hand over to
/// ODE re-expansion.
const REEXPAND_ABOVE: f64 = 0.9;

/// Radius of the starting point of an ODE re-expansion path.
const REEXPAND_START: f64 = 0.5;

/// Real parameter triple (a, b, c) of 2F1(a,b;c;z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Params {
    /// Builds a parameter triple, rejecting non-finite values and c in {0,-1,-2,...}.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::domain(format!("non-finite parameters ({a}, {b}, {c})")));
        }
        if is_gamma_pole(c) {
            return Err(Error::domain(format!("c = {c} is a non-positive integer")));
        }
        Ok(Self { a, b, c })
    }

    /// -1 < a <= c and 0 < b <= c: the continued fraction of w_{a,b,c} exists.
    pub fn kustner_ok(&self) -> bool {
        -1.0 < self.a && self.a <= self.c && 0.0 < self.b && self.b <= self.c
    }

    /// -1 <= a <= c and 0 < b <= c: closed variant admitted by the T/U
    /// fraction identities and the w(-1) enclosure.
    pub fn fraction_ok(&self) -> bool {
        -1.0 <= self.a && self.a <= self.c && 0.0 < self.b && self.b <= self.c
    }

    /// 0 < a <= b and a+b+1/2 <= c <= 1+a, compared exactly on the inputs.
    pub fn thm2_ok(&self) -> bool {
        let Params { a, b, c } = *self;
        let c_dd = DoubleDouble::from(c);
        0.0 < a && a <= b && exact_sum(&[a, b, 0.5]) <= c_dd && c_dd <= exact_sum(&[1.0, a])
    }

    /// Positive a, b, c with a+b-1 < c < a+b+1/2 and (c-a)(c-b) > 0,
    /// compared exactly on the inputs.
    pub fn thm1_ok(&self) -> bool {
        let Params { a, b, c } = *self;
        let c_dd = DoubleDouble::from(c);
        a > 0.0
            && b > 0.0
            && c > 0.0
            && exact_sum(&[a, b, -1.0]) < c_dd
            && c_dd < exact_sum(&[a, b, 0.5])
            && ((c > a && c > b) || (c < a && c < b))
    }

    /// None of a, b, c, c-a, c-b is a non-positive integer.
    pub fn asym_ok(&self) -> bool {
        let Params { a, b, c } = *self;
        [a, b, c, c - a, c - b].iter().all(|&x| !is_gamma_pole(x))
    }

    /// (b, a, c).
    pub fn swapped(&self) -> Self {
        Self { a: self.b, b: self.a, c: self.c }
    }

    /// (a + 1, b, c), the numerator parameters of w_{a,b,c}.
    pub fn raised(&self) -> Self {
        Self { a: self.a + 1.0, ..*self }
    }

    /// c - a - b.
    pub fn excess(&self) -> f64 {
        self.c - self.a - self.b
    }

    fn ordered(&self) -> Self {
        if self.a <= self.b {
            *self
        } else {
            self.swapped()
        }
    }

    fn is_polynomial(&self) -> bool {
        is_gamma_pole(self.a) || is_gamma_pole(self.b)
    }
}

/// Which evaluation route produced a [`SeriesEval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalPath {
    Direct,
    Pfaff,
    Reexpansion,
    Connection,
    LogConnection,
    /// Direct series with the extended budget because c-a-b sits within
    /// 1e-6 of a nonzero integer. Results on this path are flagged.
    Fallback,
}

/// Value and first two derivatives of 2F1 at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEval {
    pub value: C64,
    pub deriv1: C64,
    pub deriv2: C64,
    pub terms_used: usize,
    /// Estimated absolute truncation error of the slowest of the three sums.
    pub tail_bound: f64,
    pub path: EvalPath,
}

impl SeriesEval {
    pub fn flagged(&self) -> bool {
        self.path == EvalPath::Fallback
    }
}

#[derive(Debug, Clone, Copy)]
struct Jet {
    v: C64,
    d1: C64,
    d2: C64,
}

impl Jet {
    fn constant(v: C64) -> Self {
        Self { v, d1: C64::new(0.0, 0.0), d2: C64::new(0.0, 0.0) }
    }

    fn scale(self, k: C64) -> Self {
        Self { v: self.v * k, d1: self.d1 * k, d2: self.d2 * k }
    }

    fn add(self, o: Self) -> Self {
        Self { v: self.v + o.v, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }

    fn mul(self, o: Self) -> Self {
        Self {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }

    /// f(g(z)) given this jet of f at g(z) and the jet of g at z.
    fn compose(self, inner: Jet) -> Self {
        Self {
            v: self.v,
            d1: self.d1 * inner.d1,
            d2: self.d2 * inner.d1 * inner.d1 + self.d1 * inner.d2,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct SeriesSum {
    jet: Jet,
    terms: usize,
    tail: f64,
}

/// Sums sum_n coeff(n) u^n and its first two term-wise derivatives.
///
/// `coeff` is called with n = 0, 1, 2, ... in order. Stops once three
/// consecutive terms of all three sums fall below `tol` times the partial sums.
fn sum_power_series(
    u: C64,
    tol: f64,
    budget: usize,
    mut coeff: impl FnMut(usize) -> C64,
) -> Result<SeriesSum> {
    let zero = C64::new(0.0, 0.0);
    let (mut s0, mut s1, mut s2) = (zero, zero, zero);
    // u^n, u^(n-1), u^(n-2) with negative powers replaced by zero
    let (mut p0, mut p1, mut p2) = (C64::new(1.0, 0.0), zero, zero);
    let mut streak = 0;
    let rho = u.norm();
    for n in 0..budget {
        let cn = coeff(n);
        let nf = n as f64;
        let t0 = cn * p0;
        let t1 = cn * p1 * nf;
        let t2 = cn * p2 * (nf * (nf - 1.0));
        s0 += t0;
        s1 += t1;
        s2 += t2;
        let small = t0.norm() <= tol * s0.norm()
            && t1.norm() <= tol * s1.norm()
            && t2.norm() <= tol * s2.norm();
        streak = if small { streak + 1 } else { 0 };
        if streak >= 3 && n >= 2 {
            let last = t0.norm().max(t1.norm()).max(t2.norm());
            let factor = if rho < 1.0 { rho / (1.0 - rho) } else { nf };
            return Ok(SeriesSum {
                jet: Jet { v: s0, d1: s1, d2: s2 },
                terms: n + 1,
                tail: last * factor,
            });
        }
        p2 = p1;
        p1 = p0;
        p0 *= u;
    }
    Err(Error::SeriesConvergence { terms_used: budget })
}

/// Maclaurin series of 2F1(a,b;c;u) with its u-derivatives.
fn hyp_series(a: f64, b: f64, c: f64, u: C64, tol: f64, budget: usize) -> Result<SeriesSum> {
    let mut cn = 1.0;
    sum_power_series(u, tol, budget, |n| {
        if n > 0 {
            let k = (n - 1) as f64;
            cn *= ((a + k) * (b + k)) / ((c + k) * n as f64);
        }
        C64::new(cn, 0.0)
    })
}

fn check_point(p: &Params, z: C64, tol: f64) -> Result<()> {
    if is_gamma_pole(p.c) {
        return Err(Error::domain(format!("c = {} is a non-positive integer", p.c)));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("non-finite z"));
    }
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::domain(format!("|z| = {} exceeds 1", z.norm())));
    }
    if z == C64::new(1.0, 0.0) {
        return Err(Error::domain("z = 1 is the branch point"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance {tol} must be positive")));
    }
    Ok(())
}

fn in_connection_region(z: C64) -> bool {
    z.re > 0.5 && (C64::new(1.0, 0.0) - z).norm() < 0.5
}

fn finish(sum: SeriesSum, path: EvalPath) -> SeriesEval {
    SeriesEval {
        value: sum.jet.v,
        deriv1: sum.jet.d1,
        deriv2: sum.jet.d2,
        terms_used: sum.terms,
        tail_bound: sum.tail,
        path,
    }
}

fn direct(p: &Params, z: C64, tol: f64, budget: usize, path: EvalPath) -> Result<SeriesEval> {
    hyp_series(p.a, p.b, p.c, z, tol, budget).map(|s| finish(s, path))
}

fn pfaff(p: &Params, z: C64, tol: f64) -> Result<SeriesEval> {
    let one = C64::new(1.0, 0.0);
    let zm1 = z - one;
    let zeta = z / zm1;
    let inner = hyp_series(p.a, p.c - p.b, p.c, zeta, tol, SERIES_BUDGET)?;
    let zeta_jet = Jet {
        v: zeta,
        d1: -one / (zm1 * zm1),
        d2: 2.0 / (zm1 * zm1 * zm1),
    };
    let s = one - z;
    let m = s.powf(-p.a);
    let prefactor = Jet {
        v: m,
        d1: p.a * m / s,
        d2: p.a * (p.a + 1.0) * m / (s * s),
    };
    let jet = prefactor.mul(inner.jet.compose(zeta_jet));
    Ok(SeriesEval {
        value: jet.v,
        deriv1: jet.d1,
        deriv2: jet.d2,
        terms_used: inner.terms,
        tail_bound: inner.tail * m.norm() * (1.0 + zeta_jet.d1.norm()).powi(2),
        path: EvalPath::Pfaff,
    })
}

/// One Taylor step of the hypergeometric ODE from `z0`, where F = y0 and
/// F' = y1, to z0 + t.
fn taylor_step(p: &Params, z0: C64, y0: C64, y1: C64, t: C64, tol: f64) -> Result<SeriesSum> {
    let one = C64::new(1.0, 0.0);
    let p0 = z0 * (one - z0);
    let p1 = one - 2.0 * z0;
    let q0 = p.c - (p.a + p.b + 1.0) * z0;
    let (mut prev, mut cur) = (y0, y1);
    sum_power_series(t, tol, SERIES_BUDGET, |n| match n {
        0 => y0,
        1 => y1,
        _ => {
            let k = (n - 2) as f64;
            let next = ((k + p.a) * (k + p.b) * prev - (k + 1.0) * (p1 * k + q0) * cur)
                / (p0 * ((k + 1.0) * (k + 2.0)));
            prev = cur;
            cur = next;
            next
        }
    })
}

fn reexpansion(p: &Params, z: C64, tol: f64) -> Result<SeriesEval> {
    let one = C64::new(1.0, 0.0);
    let mut z0 = z / z.norm() * REEXPAND_START;
    let start = hyp_series(p.a, p.b, p.c, z0, tol, SERIES_BUDGET)?;
    let (mut y0, mut y1) = (start.jet.v, start.jet.d1);
    let mut terms = start.terms;
    loop {
        let remaining = z - z0;
        let dist = remaining.norm();
        let radius = z0.norm().min((one - z0).norm());
        let h = dist.min(0.5 * radius);
        let t = if h < dist { remaining * (h / dist) } else { remaining };
        let step = taylor_step(p, z0, y0, y1, t, tol)?;
        terms += step.terms;
        if h >= dist {
            return Ok(SeriesEval {
                value: step.jet.v,
                deriv1: step.jet.d1,
                deriv2: step.jet.d2,
                terms_used: terms,
                tail_bound: step.tail,
                path: EvalPath::Reexpansion,
            });
        }
        z0 += t;
        y0 = step.jet.v;
        y1 = step.jet.d1;
    }
}

/// Jet of u^s in u.
fn power_jet(u: C64, s: f64) -> Jet {
    let v = u.powf(s);
    Jet {
        v,
        d1: s * v / u,
        d2: s * (s - 1.0) * v / (u * u),
    }
}

/// Converts a jet in u = 1 - z to a jet in z.
fn u_to_z(j: Jet) -> Jet {
    Jet { v: j.v, d1: -j.d1, d2: j.d2 }
}

fn connection_nonlog(p: &Params, z: C64, tol: f64) -> Result<SeriesEval> {
    let Params { a, b, c } = *p;
    let gamma = c - a - b;
    let u = C64::new(1.0, 0.0) - z;
    let gc = gamma_real(c)?;
    let coef_a = gc * gamma_real(gamma)? * recip_gamma(c - a) * recip_gamma(c - b);
    let coef_b = gc * gamma_real(-gamma)? * recip_gamma(a) * recip_gamma(b);
    let mut jet = Jet::constant(C64::new(0.0, 0.0));
    let mut terms = 0;
    let mut tail = 0.0;
    if coef_a != 0.0 {
        let s1 = hyp_series(a, b, 1.0 - gamma, u, tol, SERIES_BUDGET)?;
        jet = jet.add(s1.jet.scale(C64::new(coef_a, 0.0)));
        terms = terms.max(s1.terms);
        tail += coef_a.abs() * s1.tail;
    }
    if coef_b != 0.0 {
        let s2 = hyp_series(c - a, c - b, 1.0 + gamma, u, tol, SERIES_BUDGET)?;
        let pj = power_jet(u, gamma);
        jet = jet.add(pj.mul(s2.jet).scale(C64::new(coef_b, 0.0)));
        terms = terms.max(s2.terms);
        tail += coef_b.abs() * pj.v.norm() * s2.tail;
    }
    let jet = u_to_z(jet);
    Ok(SeriesEval {
        value: jet.v,
        deriv1: jet.d1,
        deriv2: jet.d2,
        terms_used: terms,
        tail_bound: tail,
        path: EvalPath::Connection,
    })
}

/// c = a+b: 2F1(a,b;a+b;z) = Gamma(a+b)/(Gamma(a)Gamma(b)) sum_n (a)_n(b)_n/(n!)^2
/// [2 psi(n+1) - psi(a+n) - psi(b+n) - ln(1-z)] (1-z)^n.
fn connection_log(p: &Params, z: C64, tol: f64) -> Result<SeriesEval> {
    let Params { a, b, .. } = *p;
    let u = C64::new(1.0, 0.0) - z;
    let prefactor = gamma_real(a + b)? * recip_gamma(a) * recip_gamma(b);

    let mut e = 1.0;
    let plain = sum_power_series(u, tol, SERIES_BUDGET, |n| {
        if n > 0 {
            let k = (n - 1) as f64;
            e *= ((a + k) * (b + k)) / (n as f64 * n as f64);
        }
        C64::new(e, 0.0)
    })?;

    let mut e = 1.0;
    let mut d = -2.0 * euler_gamma() - digamma_real(a)? - digamma_real(b)?;
    let weighted = sum_power_series(u, tol, SERIES_BUDGET, |n| {
        if n > 0 {
            let k = (n - 1) as f64;
            e *= ((a + k) * (b + k)) / (n as f64 * n as f64);
            d += 2.0 / n as f64 - 1.0 / (a + k) - 1.0 / (b + k);
        }
        C64::new(e * d, 0.0)
    })?;

    let log_u = u.ln();
    let s = plain.jet;
    let pj = weighted.jet;
    let ju = Jet {
        v: pj.v - log_u * s.v,
        d1: pj.d1 - s.v / u - log_u * s.d1,
        d2: pj.d2 + s.v / (u * u) - 2.0 * s.d1 / u - log_u * s.d2,
    }
    .scale(C64::new(prefactor, 0.0));
    let jet = u_to_z(ju);
    Ok(SeriesEval {
        value: jet.v,
        deriv1: jet.d1,
        deriv2: jet.d2,
        terms_used: plain.terms.max(weighted.terms),
        tail_bound: prefactor.abs() * (weighted.tail + (1.0 + log_u.norm()) * plain.tail),
        path: EvalPath::LogConnection,
    })
}

/// 2F1(a,b;c;z) from the connection formula in 1-z.
///
/// Uses the logarithmic series when c = a+b (to 1e-12), the two-branch
/// formula when c-a-b is at least 1e-6 away from every integer, and
/// otherwise falls back to the direct series with the extended budget
/// (reported as [`EvalPath::Fallback`]).
pub fn connection_eval(p: &Params, z: C64) -> Result<SeriesEval> {
    connection_eval_tol(p, z, DEFAULT_TOL)
}

fn connection_eval_tol(p: &Params, z: C64, tol: f64) -> Result<SeriesEval> {
    check_point(p, z, tol)?;
    let u = C64::new(1.0, 0.0) - z;
    if u.norm() >= 1.0 || (z.im == 0.0 && z.re >= 1.0) {
        return Err(Error::domain(format!("|1 - z| = {} is not below 1", u.norm())));
    }
    let p = p.ordered();
    if p.is_polynomial() {
        return direct(&p, z, tol, SERIES_BUDGET, EvalPath::Direct);
    }
    let gamma = p.excess();
    if gamma.abs() <= LOG_CASE_EPS {
        connection_log(&p, z, tol)
    } else if (gamma - gamma.round()).abs() > NEAR_INTEGER_EPS {
        connection_nonlog(&p, z, tol)
    } else {
        direct(&p, z, tol, FALLBACK_BUDGET, EvalPath::Fallback)
    }
}

/// 2F1 and its first two derivatives at z, |z| <= 1, z != 1.
pub fn gauss_2f1_derivatives(p: &Params, z: C64, tol: f64) -> Result<SeriesEval> {
    let e = dispatch(p, z, tol)?;
    let finite = |v: C64| v.re.is_finite() && v.im.is_finite();
    if finite(e.value) && finite(e.deriv1) && finite(e.deriv2) {
        Ok(e)
    } else {
        Err(Error::Overflow(z))
    }
}

fn dispatch(p: &Params, z: C64, tol: f64) -> Result<SeriesEval> {
    check_point(p, z, tol)?;
    let p = p.ordered();
    if p.is_polynomial() {
        return direct(&p, z, tol, SERIES_BUDGET, EvalPath::Direct);
    }
    if in_connection_region(z) {
        return connection_eval_tol(&p, z, tol);
    }
    let rho_direct = z.norm();
    let rho_pfaff = rho_direct / (C64::new(1.0, 0.0) - z).norm();
    if rho_direct.min(rho_pfaff) <= REEXPAND_ABOVE {
        if rho_direct <= rho_pfaff {
            direct(&p, z, tol, SERIES_BUDGET, EvalPath::Direct)
        } else {
            pfaff(&p, z, tol)
        }
    } else {
        reexpansion(&p, z, tol)
    }
}

/// 2F1(a,b;c;z) for |z| <= 1, z != 1.
pub fn gauss_2f1(p: &Params, z: C64, tol: f64) -> Result<C64> {
    gauss_2f1_derivatives(p, z, tol).map(|e| e.value)
}

/// Evaluates along a caller-chosen path, bypassing the region switch.
///
/// Intended for cross-checking paths against each other. `Fallback` means
/// the direct series with the extended term budget.
pub fn gauss_2f1_via(p: &Params, z: C64, tol: f64, path: EvalPath) -> Result<SeriesEval> {
    check_point(p, z, tol)?;
    let p = p.ordered();
    match path {
        EvalPath::Direct => direct(&p, z, tol, SERIES_BUDGET, EvalPath::Direct),
        EvalPath::Fallback => direct(&p, z, tol, FALLBACK_BUDGET, EvalPath::Fallback),
        EvalPath::Pfaff => pfaff(&p, z, tol),
        EvalPath::Reexpansion => reexpansion(&p, z, tol),
        EvalPath::Connection => {
            if (1.0 - z).norm() >= 1.0 {
                return Err(Error::domain("connection formula needs |1 - z| < 1"));
            }
            connection_nonlog(&p, z, tol)
        }
        EvalPath::LogConnection => {
            if (1.0 - z).norm() >= 1.0 {
                return Err(Error::domain("connection formula needs |1 - z| < 1"));
            }
            connection_log(&p, z, tol)
        }
    }
}

/// Normalized residual |z(1-z)F'' + [c-(a+b+1)z]F' - abF| / (1 + |F|).
pub fn ode_residual(p: &Params, z: C64) -> Result<f64> {
    let e = gauss_2f1_derivatives(p, z, DEFAULT_TOL)?;
    let Params { a, b, c } = *p;
    let r = z * (1.0 - z) * e.deriv2 + (c - (a + b + 1.0) * z) * e.deriv1 - a * b * e.value;
    Ok(r.norm() / (1.0 + e.value.norm()))
}

/// Complete elliptic integrals K(z) and E(z) in the parameter convention
/// K(z) = int_0^1 dt / sqrt((1-t^2)(1-z t^2)).
pub fn elliptic_k_e(z: C64) -> Result<(C64, C64)> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let k = gauss_2f1(&Params { a: 0.5, b: 0.5, c: 1.0 }, z, DEFAULT_TOL)?;
    let e = gauss_2f1(&Params { a: -0.5, b: 0.5, c: 1.0 }, z, DEFAULT_TOL)?;
    Ok((k * half_pi, e * half_pi))
}
