//! The ratio w_{a,b,c}, the convexity functional W = 1 + z w''/w', and grid
//! estimates of the orders of convexity and starlikeness.
//!
//! Closed form of the functional in terms of w alone:
//!
//! ```text
//! W = a-b-1 + (a+b-c+2)/(1-z) - 2a w + (a w + b - a) z / Q
//! Q = 1+a+b-c + (a-b)(1-z) - a(1-z) w + (c-a-1)/w = z (b - a + w1)
//! w1 = a U + (1+a-c) T
//! ```
//!
//! where w = 1/(1 - zT) = (1 - zU)/(1 - z).

use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::contfrac::{eval_t_u, CF_TOL};
use crate::error::{Error, Result};
use crate::hyp2f1::{gauss_2f1_derivatives, Params, C64};

/// Where w, T and U come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioSource {
    /// Continued fractions when the parameters admit them, otherwise hypergeometric.
    Auto,
    /// w = G/F from hypergeometric evaluation; T and U from their defining identities.
    Hypergeometric,
    /// T and U from their g-fractions, w = 1/(1 - zT).
    ContinuedFraction,
}

/// w_{a,b,c}(z) = 2F1(a+1,b;c;z) / 2F1(a,b;c;z) by hypergeometric evaluation.
pub fn w_ratio(p: &Params, z: C64, tol: f64) -> Result<C64> {
    let f = gauss_2f1_derivatives(p, z, tol)?;
    let g = match gauss_2f1_derivatives(&p.raised(), z, tol) {
        Ok(g) => g.value,
        // c-a-b-1 near a nonzero integer can defeat the numerator near z = 1;
        // fall back to G = F + z F'/a.
        Err(Error::SeriesConvergence { .. }) if p.a != 0.0 => f.value + z * f.deriv1 / p.a,
        Err(e) => return Err(e),
    };
    if f.value.norm() < 1e-13 * g.norm() {
        return Err(Error::NearZeroDenominator(z));
    }
    Ok(g / f.value)
}

/// w together with the auxiliary functions entering the closed form of W.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WParts {
    pub w: C64,
    pub t: C64,
    pub u: C64,
    pub w1: C64,
    pub q: C64,
    /// The functional W = 1 + z w''/w'.
    pub functional: C64,
}

impl WParts {
    /// |Q - z(b - a + w1)|, which vanishes identically.
    pub fn q_identity_gap(&self, p: &Params, z: C64) -> f64 {
        (self.q - z * (p.b - p.a + self.w1)).norm()
    }
}

/// Auto uses the connection formula near z = 1, where w = 1/(1 - zT)
/// amplifies the error of T, unless c-a-b is close to an integer and the
/// formula degenerates; elsewhere it takes the fractions.
fn use_fraction(p: &Params, z: C64, source: RatioSource) -> Result<bool> {
    match source {
        RatioSource::Auto => {
            let g = p.excess();
            let near_one = z.re > 0.5 && (1.0 - z).norm() < 0.5;
            Ok(p.fraction_ok() && (!near_one || (g - g.round()).abs() <= 1e-6))
        }
        RatioSource::Hypergeometric => Ok(false),
        RatioSource::ContinuedFraction => {
            if p.fraction_ok() {
                Ok(true)
            } else {
                Err(Error::domain("continued fraction needs -1 <= a <= c and 0 < b <= c"))
            }
        }
    }
}

fn ratio_from_fractions(p: &Params, z: C64, tol: f64) -> Result<(C64, C64, C64)> {
    let (t, u) = eval_t_u(p, z, tol.max(CF_TOL))?;
    Ok((1.0 / (1.0 - z * t), t, u))
}

fn ratio_from_series(p: &Params, z: C64, tol: f64) -> Result<(C64, C64, C64)> {
    if z == C64::new(0.0, 0.0) {
        return Err(Error::domain("T and U are not defined by their identities at z = 0"));
    }
    let w = w_ratio(p, z, tol)?;
    Ok((w, (1.0 - 1.0 / w) / z, (1.0 - (1.0 - z) * w) / z))
}

/// w, T and U at z from the chosen source.
pub fn ratio_with_fractions(p: &Params, z: C64, tol: f64, source: RatioSource) -> Result<(C64, C64, C64)> {
    let auto = source == RatioSource::Auto;
    if use_fraction(p, z, source)? {
        match ratio_from_fractions(p, z, tol) {
            Err(Error::FractionConvergence { .. }) if auto && z.norm() > 0.0 => ratio_from_series(p, z, tol),
            r => r,
        }
    } else {
        match ratio_from_series(p, z, tol) {
            Err(e) if auto && p.fraction_ok() && !e.is_domain() => ratio_from_fractions(p, z, tol),
            r => r,
        }
    }
}

/// W(z) = 1 + z w''/w' from the closed form in w (see module docs).
pub fn convexity_closed_form(p: &Params, z: C64, tol: f64) -> Result<WParts> {
    convexity_closed_form_with(p, z, tol, RatioSource::Auto)
}

/// [`convexity_closed_form`] with an explicit source for w, T and U.
pub fn convexity_closed_form_with(p: &Params, z: C64, tol: f64, source: RatioSource) -> Result<WParts> {
    if z == C64::new(0.0, 0.0) || z == C64::new(1.0, 0.0) || z.norm() > 1.0 + 1e-12 {
        return Err(Error::domain(format!("closed form needs |z| <= 1 and z not in {{0, 1}}, got {z}")));
    }
    let Params { a, b, c } = *p;
    let (w, t, u) = ratio_with_fractions(p, z, tol, source)?;
    // Q/z = b - a + w1 avoids the cancellation of Q near z = 0.
    let fraction = use_fraction(p, z, source)? && z.norm() < 0.5;
    let one_minus_z = 1.0 - z;
    let w1 = a * u + (1.0 + a - c) * t;
    let q = 1.0 + a + b - c + (a - b) * one_minus_z - a * one_minus_z * w + (c - a - 1.0) / w;
    let last = if fraction {
        let denom = b - a + w1;
        if denom.norm() < 1e-12 {
            return Err(Error::SingularQ(z));
        }
        (a * w + b - a) / denom
    } else {
        if q.norm() < 1e-12 {
            return Err(Error::SingularQ(z));
        }
        (a * w + b - a) * z / q
    };
    let functional = a - b - 1.0 + (a + b - c + 2.0) / one_minus_z - 2.0 * a * w + last;
    Ok(WParts { w, t, u, w1, q, functional })
}

/// W(z) from the derivatives of F and G: 1 + z(G''F - GF'')/(G'F - GF') - 2zF'/F.
pub fn convexity_numeric(p: &Params, z: C64, tol: f64) -> Result<C64> {
    if z.norm() >= 1.0 {
        return Err(Error::domain(format!("numeric functional needs |z| < 1, got {z}")));
    }
    let f = gauss_2f1_derivatives(p, z, tol)?;
    let g = gauss_2f1_derivatives(&p.raised(), z, tol)?;
    let cross = g.deriv1 * f.value - g.value * f.deriv1;
    let f2 = f.value * f.value;
    if f.value.norm() < 1e-13 * g.value.norm() {
        return Err(Error::NearZeroDenominator(z));
    }
    if (cross / f2).norm() < 1e-13 {
        return Err(Error::CriticalPoint(z));
    }
    Ok(1.0 + z * (g.deriv2 * f.value - g.value * f.deriv2) / cross - 2.0 * z * f.deriv1 / f.value)
}

/// z w'(z) / (w(z) - 1), continuous at 0 with value 1.
pub fn starlikeness_functional(p: &Params, z: C64, tol: f64) -> Result<C64> {
    if z == C64::new(0.0, 0.0) {
        return Ok(C64::new(1.0, 0.0));
    }
    let Params { a, b, c } = *p;
    let (w, t, _) = ratio_with_fractions(p, z, tol, RatioSource::Auto)?;
    // z w'/w = zG'/G - zF'/F, with zF'/F = a(w - 1) and the contiguous
    // relation for zG'/G; w/(w - 1) = 1/(zT).
    let zg = (a + 1.0 - c + b * z + (c - a - 1.0) / w) / (1.0 - z);
    let log_deriv = zg - a * (w - 1.0);
    let zt = z * t;
    if zt.norm() < 1e-300 {
        return Err(Error::NearZeroDenominator(z));
    }
    Ok(log_deriv / zt)
}

/// Sampling layout for grid estimates on the disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub rings: usize,
    pub angles: usize,
    pub rmax: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { rings: 64, angles: 720, rmax: 0.9999 }
    }
}

impl GridSpec {
    pub fn new(rings: usize, angles: usize, rmax: f64) -> Result<Self> {
        if !(0.0 < rmax && rmax < 1.0) {
            return Err(Error::domain(format!("rmax = {rmax} must lie in (0, 1)")));
        }
        if rings < 8 || angles < 64 {
            return Err(Error::domain(format!(
                "need rings >= 8 and angles >= 64, got {rings} and {angles}"
            )));
        }
        Ok(Self { rings, angles, rmax })
    }

    /// Inner rings 0.1, ..., 0.8 followed by geometric boundary rings
    /// r_j = 1 - 0.1 (10 (1 - rmax))^(j/(rings-1)), from 0.9 up to rmax.
    ///
    /// For rmax = 0.9999 the boundary rings are 1 - 0.1 * 10^(-3j/(rings-1)).
    pub fn radii(&self) -> Vec<f64> {
        let mut radii: Vec<f64> = (1..=8).map(|k| k as f64 / 10.0).filter(|&r| r < self.rmax).collect();
        if self.rmax > 0.9 {
            let ratio = 10.0 * (1.0 - self.rmax);
            for j in 0..self.rings {
                let r = 1.0 - 0.1 * ratio.powf(j as f64 / (self.rings - 1) as f64);
                radii.push(r.min(self.rmax));
            }
        } else {
            radii.push(self.rmax);
        }
        radii
    }

    pub fn thetas(&self) -> Vec<f64> {
        (0..self.angles).map(|k| TAU * k as f64 / self.angles as f64).collect()
    }
}

/// Re W sampled on a polar grid; failed evaluations are NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalGrid {
    pub radii: Vec<f64>,
    pub thetas: Vec<f64>,
    /// values[i][k] at radii[i] * exp(i thetas[k])
    pub values: Vec<Vec<f64>>,
    pub failures: usize,
}

impl FunctionalGrid {
    pub fn samples(&self) -> usize {
        self.radii.len() * self.thetas.len()
    }

    /// (value, ring index, angle index) of the smallest finite sample.
    pub fn argmin(&self) -> Option<(f64, usize, usize)> {
        let mut best: Option<(f64, usize, usize)> = None;
        for (i, row) in self.values.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                if v.is_finite() && best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, i, k));
                }
            }
        }
        best
    }

    fn ring_argmin(&self, i: usize) -> Option<(f64, usize)> {
        self.values[i]
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_finite())
            .min_by(|x, y| x.1.total_cmp(y.1))
            .map(|(k, &v)| (v, k))
    }
}

fn reduce_angle(theta: f64) -> f64 {
    theta.rem_euclid(TAU)
}

fn sample_grid(spec: &GridSpec, f: impl Fn(C64) -> Result<f64> + Sync) -> FunctionalGrid {
    let radii = spec.radii();
    let thetas = spec.thetas();
    let values: Vec<Vec<f64>> = radii
        .par_iter()
        .map(|&r| {
            thetas
                .iter()
                .map(|&th| f(C64::from_polar(r, th)).unwrap_or(f64::NAN))
                .collect()
        })
        .collect();
    let failures = values.iter().flatten().filter(|v| !v.is_finite()).count();
    FunctionalGrid { radii, thetas, values, failures }
}

fn check_failures(failed: usize, total: usize) -> Result<()> {
    if failed * 100 > total {
        Err(Error::Estimation { failed, total })
    } else {
        Ok(())
    }
}

/// Re W on the grid described by `spec`.
pub fn functional_grid(p: &Params, spec: &GridSpec) -> FunctionalGrid {
    sample_grid(spec, |z| convexity_closed_form(p, z, CF_TOL).map(|parts| parts.functional.re))
}

/// Grid estimate of the order of convexity of w_{a,b,c}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaEstimate {
    /// 1 + min Re(z w''/w') over the samples: an upper bound for the true
    /// order up to refinement error.
    pub kappa_min: f64,
    pub argmin_r: f64,
    pub argmin_theta: f64,
    /// Minima over the outermost three rings strictly decrease and the last
    /// is below -10.
    pub boundary_divergence: bool,
    pub samples: usize,
    pub rmax_used: f64,
}

const REFINE_STEPS: usize = 20;
const DIVERGENCE_LEVEL: f64 = -10.0;

/// Coordinate shrink search starting at (r, theta) with steps (dr, dtheta).
fn shrink_search(
    eval: &impl Fn(f64, f64) -> f64,
    start: (f64, f64, f64),
    mut dr: f64,
    mut dtheta: f64,
    r_bounds: (f64, f64),
) -> (f64, f64, f64) {
    let (mut best, mut r, mut th) = start;
    for _ in 0..REFINE_STEPS {
        let mut moved = false;
        let mut candidates = vec![(r, th + dtheta), (r, th - dtheta)];
        if dr > 0.0 {
            candidates.push(((r + dr).min(r_bounds.1), th));
            candidates.push(((r - dr).max(r_bounds.0), th));
        }
        for (cr, ct) in candidates {
            let v = eval(cr, ct);
            if v < best {
                best = v;
                r = cr;
                th = ct;
                moved = true;
            }
        }
        if !moved {
            dr *= 0.5;
            dtheta *= 0.5;
        }
    }
    (best, r, reduce_angle(th))
}

/// Estimates the order of convexity on a polar grid and refines the minimum.
pub fn kappa_estimate(p: &Params, rings: usize, angles: usize, rmax: f64) -> Result<KappaEstimate> {
    let spec = GridSpec::new(rings, angles, rmax)?;
    let grid = functional_grid(p, &spec);
    check_failures(grid.failures, grid.samples())?;
    let (v0, i0, k0) = grid.argmin().ok_or(Error::Estimation {
        failed: grid.failures,
        total: grid.samples(),
    })?;
    let n = grid.radii.len();
    let rmax_used = grid.radii[n - 1];
    let dtheta = TAU / angles as f64;
    let eval = |r: f64, th: f64| {
        convexity_closed_form(p, C64::from_polar(r, th), CF_TOL)
            .map(|parts| parts.functional.re)
            .ok()
            .filter(|v| v.is_finite())
            .unwrap_or(f64::INFINITY)
    };

    // Boundary behavior: refined minima on the outermost three rings.
    let ring_minima: Vec<(f64, f64)> = (n - 3..n)
        .map(|i| {
            let r = grid.radii[i];
            match grid.ring_argmin(i) {
                Some((v, k)) => {
                    let (best, _, th) = shrink_search(&eval, (v, r, grid.thetas[k]), 0.0, dtheta, (r, r));
                    (best, th)
                }
                None => (f64::INFINITY, 0.0),
            }
        })
        .collect();
    let boundary_divergence = ring_minima[0].0 > ring_minima[1].0
        && ring_minima[1].0 > ring_minima[2].0
        && ring_minima[2].0 < DIVERGENCE_LEVEL;

    let r0 = grid.radii[i0];
    let dr = if i0 + 1 < n {
        grid.radii[i0 + 1] - r0
    } else {
        r0 - grid.radii[i0 - 1]
    };
    let (mut best, mut r_best, mut th_best) =
        shrink_search(&eval, (v0, r0, grid.thetas[k0]), dr, dtheta, (grid.radii[0], rmax_used));
    if boundary_divergence {
        let (ring_best, ring_theta) = ring_minima[2];
        best = best.min(ring_best);
        r_best = rmax_used;
        th_best = ring_theta;
    }
    Ok(KappaEstimate {
        kappa_min: best,
        argmin_r: r_best,
        argmin_theta: th_best,
        boundary_divergence,
        samples: grid.samples(),
        rmax_used,
    })
}

/// Grid infimum of Re(z w'/(w - 1)), with the value 1 at the origin included.
pub fn sigma_estimate(p: &Params, rings: usize, angles: usize, rmax: f64) -> Result<f64> {
    let spec = GridSpec::new(rings, angles, rmax)?;
    let grid = sample_grid(&spec, |z| starlikeness_functional(p, z, CF_TOL).map(|v| v.re));
    check_failures(grid.failures, grid.samples())?;
    let min = grid.argmin().map_or(f64::INFINITY, |(v, _, _)| v);
    Ok(min.min(1.0))
}

/// h_{alpha,beta} = z (s_alpha * s_beta)'/(s_alpha * s_beta) = 1 + a (w_{a,b,1} - 1)
/// with a = 2 - 2 alpha, b = 2 - 2 beta.
pub fn h_alpha_beta(alpha: f64, beta: f64, z: C64) -> Result<C64> {
    if !(alpha < 1.0 && beta < 1.0) {
        return Err(Error::domain(format!("need alpha, beta < 1, got {alpha}, {beta}")));
    }
    let a = 2.0 - 2.0 * alpha;
    let p = Params::new(a, 2.0 - 2.0 * beta, 1.0)?;
    let w = w_ratio(&p, z, crate::hyp2f1::DEFAULT_TOL)?;
    Ok(1.0 + a * (w - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp2f1::DEFAULT_TOL;

    fn p(a: f64, b: f64, c: f64) -> Params {
        Params::new(a, b, c).unwrap()
    }

    fn z(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn ratio_values() {
        assert_eq!(w_ratio(&p(0.3, 0.7, 1.1), z(0.0, 0.0), DEFAULT_TOL).unwrap(), z(1.0, 0.0));
        let w = w_ratio(&p(0.5, 0.7, 0.7), z(0.3, 0.0), DEFAULT_TOL).unwrap();
        assert!((w - 1.0 / 0.7).norm() < 1e-13);
        let w = w_ratio(&p(0.5, 0.5, 1.0), z(-1.0, 0.0), DEFAULT_TOL).unwrap();
        assert!(w.re >= 2.0 / 3.0 && w.re <= 0.75);
        assert!((w.re - 0.728_473_290_522_231_8).abs() < 1e-12);
    }

    #[test]
    fn closed_form_for_geometric_ratio() {
        let q = p(0.5, 0.7, 0.7);
        let parts = convexity_closed_form(&q, z(0.4, 0.0), DEFAULT_TOL).unwrap();
        assert!((parts.functional - 1.4 / 0.6).norm() < 1e-12);
        let numeric = convexity_numeric(&q, z(0.4, 0.0), DEFAULT_TOL).unwrap();
        assert!((numeric - 1.4 / 0.6).norm() < 1e-9);
        assert!(parts.q_identity_gap(&q, z(0.4, 0.0)) < 1e-12);
    }

    #[test]
    fn closed_form_references() {
        // references from high-precision numerical differentiation of w
        let q = p(0.3, 0.3, 0.7);
        let w = convexity_closed_form(&q, z(0.5, 0.0), DEFAULT_TOL).unwrap().functional;
        assert!((w.re - 2.768_964_355_994_69).abs() < 1e-10);
        let w = convexity_closed_form(&q, z(-0.8, 0.0), DEFAULT_TOL).unwrap().functional;
        assert!((w.re - 0.249_745_072_639_042_2).abs() < 1e-10);
        let n = convexity_numeric(&q, z(-0.8, 0.0), DEFAULT_TOL).unwrap();
        assert!((n - w).norm() < 1e-7);
        let w = convexity_closed_form(&p(0.1, 0.2, 0.9), z(0.0, 0.5), DEFAULT_TOL).unwrap().functional;
        assert!((w - z(0.725_690_516_066_854_3, 0.534_089_883_921_279_5)).norm() < 1e-10);
        assert!(w.re >= -0.109_090_9 - 1e-6);
    }

    #[test]
    fn sources_agree() {
        let q = p(0.3, 0.4, 0.9);
        for zz in [z(0.5, 0.3), z(-0.7, 0.1), z(0.95, 0.05)] {
            let cf = convexity_closed_form_with(&q, zz, DEFAULT_TOL, RatioSource::ContinuedFraction).unwrap();
            let hy = convexity_closed_form_with(&q, zz, DEFAULT_TOL, RatioSource::Hypergeometric).unwrap();
            assert!((cf.functional - hy.functional).norm() < 1e-8 * (1.0 + cf.functional.norm()));
        }
        assert!(convexity_closed_form_with(&p(1.5, 0.3, 1.0), z(0.2, 0.0), DEFAULT_TOL, RatioSource::ContinuedFraction).is_err());
    }

    #[test]
    fn closed_form_rejects_origin() {
        assert!(convexity_closed_form(&p(0.3, 0.3, 0.7), z(0.0, 0.0), DEFAULT_TOL).is_err());
        assert!(convexity_closed_form(&p(0.3, 0.3, 0.7), z(1.0, 0.0), DEFAULT_TOL).is_err());
    }

    #[test]
    fn numeric_at_origin_is_one() {
        let v = convexity_numeric(&p(0.3, 0.3, 0.7), z(0.0, 0.0), DEFAULT_TOL).unwrap();
        assert_eq!(v, z(1.0, 0.0));
    }

    #[test]
    fn starlikeness_of_geometric_ratio() {
        let q = p(0.5, 0.7, 0.7);
        for zz in [z(0.3, 0.2), z(-0.9, 0.0), z(0.1, -0.8)] {
            let s = starlikeness_functional(&q, zz, DEFAULT_TOL).unwrap();
            assert!((s - 1.0 / (1.0 - zz)).norm() < 1e-12);
        }
        assert_eq!(starlikeness_functional(&q, z(0.0, 0.0), DEFAULT_TOL).unwrap(), z(1.0, 0.0));
    }

    #[test]
    fn grid_radii() {
        let spec = GridSpec::default();
        let radii = spec.radii();
        assert_eq!(radii.len(), 8 + 64);
        assert!((radii[8] - 0.9).abs() < 1e-15);
        assert!((radii.last().unwrap() - 0.9999).abs() < 1e-15);
        assert!(radii.windows(2).all(|w| w[0] < w[1]));
        assert!(GridSpec::new(4, 720, 0.99).is_err());
        assert!(GridSpec::new(64, 720, 1.0).is_err());
    }

    #[test]
    fn h_values() {
        assert_eq!(h_alpha_beta(0.75, 0.75, z(0.0, 0.0)).unwrap(), z(1.0, 0.0));
        // s_{1/2} * s_{1/2} = z/(1-z), so h = 1/(1-z)
        let h = h_alpha_beta(0.5, 0.5, z(0.5, 0.0)).unwrap();
        assert!((h - 2.0).norm() < 1e-13);
        assert!(h_alpha_beta(1.0, 0.5, z(0.1, 0.0)).is_err());
    }
}
