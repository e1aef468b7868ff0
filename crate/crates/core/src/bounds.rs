//! Closed-form classifications and lower bounds for the order of convexity
//! of w_{a,b,c}, and the two-sided enclosure of w(-1).

use crate::contfrac::w_minus1_lower_depth3;
use crate::dd::{exact_sum, DoubleDouble};
use crate::error::{Error, Result};
use crate::hyp2f1::Params;

/// Closed real interval [lo, hi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo <= hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::domain(format!("empty interval [{lo}, {hi}]")))
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// True when the order of convexity of w_{a,b,c} is minus infinity by the
/// divergence criterion: a, b, c > 0, a+b-1 < c < a+b+1/2 and (c-a)(c-b) > 0.
pub fn classify_thm1(p: &Params) -> bool {
    p.thm1_ok()
}

fn require_thm2(p: &Params) -> Result<()> {
    if p.thm2_ok() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "bound needs 0 < a <= b and a+b+1/2 <= c <= 1+a, got ({}, {}, {})",
            p.a, p.b, p.c
        )))
    }
}

/// Lower bound for the order of convexity when 0 < a <= b and
/// a+b+1/2 <= c <= 1+a:
///
/// (3a-b-c)/2 + (b-a)/(1+a+b-c) + ac(2(c-a-b)-1)/((b+c)(1+a+b-c)).
pub fn bound_thm_sufficient(p: &Params) -> Result<f64> {
    require_thm2(p)?;
    let Params { a, b, c } = *p;
    let d = 1.0 + a + b - c;
    Ok((3.0 * a - b - c) / 2.0 + (b - a) / d + a * c * (2.0 * (c - a - b) - 1.0) / ((b + c) * d))
}

/// The sharper bound with the lower estimate c/(b+c) of w(-1) replaced by
/// any admissible value of w(-1).
pub fn bound_tech(p: &Params, w_at_minus1: f64) -> Result<f64> {
    require_thm2(p)?;
    let enclosure = w_minus1_enclosure(p)?;
    let slack = 1e-12 * enclosure.hi.abs().max(1.0);
    if !(enclosure.lo - slack <= w_at_minus1 && w_at_minus1 <= enclosure.hi + slack) {
        return Err(Error::domain(format!(
            "w(-1) = {w_at_minus1} outside [{}, {}]",
            enclosure.lo, enclosure.hi
        )));
    }
    let Params { a, b, c } = *p;
    let d = 1.0 + a + b - c;
    Ok((3.0 * a - b - c) / 2.0 + (b - a) / d + a * (2.0 * (c - a - b) - 1.0) * w_at_minus1 / d)
}

/// [`bound_tech`] evaluated with the depth-3 continued-fraction lower bound for w(-1).
pub fn bound_tech_depth3(p: &Params) -> Result<f64> {
    require_thm2(p)?;
    bound_tech(p, w_minus1_lower_depth3(p)?)
}

/// Convexity test for w_{a,b,1} with a+b <= 1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryResult {
    /// (3b-1)a^2 + (2b^2-5b-1)a + b(1-b^2) with a <= b.
    pub polynomial: f64,
    pub convex: bool,
    /// (3a-b-1)/2 + (b+b^2-2a^2-3ab)/((1+b)(a+b)).
    pub kappa_lower: f64,
}

/// Evaluates the convexity polynomial for w_{a,b,1}; (a, b) is reordered so that a <= b.
pub fn corollary_convexity(a: f64, b: f64) -> Result<CorollaryResult> {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    if !(a > 0.0) {
        return Err(Error::domain(format!("need a, b > 0, got {a}")));
    }
    if exact_sum(&[a, b]) > DoubleDouble::from(0.5) {
        return Err(Error::domain(format!("a+b = {} exceeds 1/2; w_{{a,b,1}} is not convex", a + b)));
    }
    let polynomial = (3.0 * b - 1.0) * a * a + (2.0 * b * b - 5.0 * b - 1.0) * a + b * (1.0 - b * b);
    let kappa_lower =
        (3.0 * a - b - 1.0) / 2.0 + (b + b * b - 2.0 * a * a - 3.0 * a * b) / ((1.0 + b) * (a + b));
    Ok(CorollaryResult { polynomial, convex: polynomial >= 0.0, kappa_lower })
}

/// Whether s_alpha * s_beta is subordinate to its convexity-preserving
/// comparison function, for 1/2 <= beta <= alpha < 1 and alpha+beta >= 7/4.
pub fn subordination_condition(alpha: f64, beta: f64) -> Result<bool> {
    if !(0.5 <= beta && beta <= alpha && alpha < 1.0 && alpha + beta >= 1.75) {
        return Err(Error::domain(format!(
            "need 1/2 <= beta <= alpha < 1 and alpha+beta >= 7/4, got ({alpha}, {beta})"
        )));
    }
    Ok(subordination_polynomial(alpha, beta) >= 0.0)
}

/// 2(5-6b)a^2 + (30b-17-8b^2)a + 4-7b-4b^2+4b^3 at (a, b) = (alpha, beta).
pub fn subordination_polynomial(alpha: f64, beta: f64) -> f64 {
    let (a, b) = (alpha, beta);
    2.0 * (5.0 - 6.0 * b) * a * a + (30.0 * b - 17.0 - 8.0 * b * b) * a + 4.0 - 7.0 * b - 4.0 * b * b
        + 4.0 * b * b * b
}

/// [c/(b+c), (2c-b)/(2c)], which contains w(-1) when -1 <= a <= c and 0 < b <= c.
pub fn w_minus1_enclosure(p: &Params) -> Result<Interval> {
    if !p.fraction_ok() {
        return Err(Error::domain(format!(
            "enclosure needs -1 <= a <= c and 0 < b <= c, got ({}, {}, {})",
            p.a, p.b, p.c
        )));
    }
    let Params { b, c, .. } = *p;
    Interval::new(c / (b + c), (2.0 * c - b) / (2.0 * c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, b: f64, c: f64) -> Params {
        Params::new(a, b, c).unwrap()
    }

    #[test]
    fn thm1_classification() {
        assert!(classify_thm1(&p(0.5, 0.5, 1.0)));
        assert!(!classify_thm1(&p(0.5, 0.7, 0.7)));
        assert!(!classify_thm1(&p(1.5, 0.3, 1.0)));
        assert!(classify_thm1(&p(0.3, 0.3, 0.7)));
        assert!(classify_thm1(&p(0.5, 0.5, 0.8)));
    }

    #[test]
    fn sufficient_bound_values() {
        let v = bound_thm_sufficient(&p(0.1, 0.2, 0.9)).unwrap();
        assert!((v + 0.109_090_909_090_909_1).abs() < 1e-12);
        assert!((bound_thm_sufficient(&p(0.2, 0.2, 0.9)).unwrap() + 0.25).abs() < 1e-15);
        assert!(bound_thm_sufficient(&p(0.5, 0.5, 1.0)).is_err());
    }

    #[test]
    fn tech_bound_reduces_and_improves() {
        let q = p(0.1, 0.2, 0.9);
        let lo = bound_tech(&q, 0.9 / 1.1).unwrap();
        assert!((lo - bound_thm_sufficient(&q).unwrap()).abs() < 1e-15);
        assert!(bound_tech_depth3(&q).unwrap() >= lo);
        assert!(bound_tech(&q, 0.5).is_err());
        let r = p(0.2, 0.2, 0.9);
        for w in [0.82, 0.85, 0.88] {
            assert!((bound_tech(&r, w).unwrap() + 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn corollary_values() {
        let r = corollary_convexity(0.05, 0.4).unwrap();
        assert!((r.polynomial - 0.2025).abs() < 1e-14);
        assert!(r.convex);
        assert_eq!(corollary_convexity(0.4, 0.05).unwrap(), r);
        let r = corollary_convexity(0.25, 0.25).unwrap();
        assert!((r.polynomial + 0.3125).abs() < 1e-14);
        assert!(!r.convex);
        let r = corollary_convexity(1e-9, 0.3).unwrap();
        assert!((r.polynomial - 0.273).abs() < 1e-8);
        assert!(corollary_convexity(0.3, 0.3).is_err());
        // agrees with the general bound at c = 1
        let r = corollary_convexity(0.1, 0.3).unwrap();
        assert!((r.kappa_lower - bound_thm_sufficient(&p(0.1, 0.3, 1.0)).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn subordination_values() {
        assert!((subordination_polynomial(0.95, 0.8) - 0.035).abs() < 1e-12);
        assert!(subordination_condition(0.95, 0.8).unwrap());
        assert!(subordination_condition(0.8, 0.8).is_err());
        assert!(subordination_condition(0.8, 0.9).is_err());
        let c = corollary_convexity(2.0 - 2.0 * 0.95, 2.0 - 2.0 * 0.8).unwrap();
        assert!((c.polynomial - 2.0 * subordination_polynomial(0.95, 0.8)).abs() < 1e-12);
    }

    #[test]
    fn enclosure_values() {
        let e = w_minus1_enclosure(&p(0.5, 0.5, 1.0)).unwrap();
        assert!((e.lo - 2.0 / 3.0).abs() < 1e-15 && e.hi == 0.75);
        assert!(w_minus1_enclosure(&p(0.5, 0.7, 0.7)).unwrap().contains(0.5));
        let e = w_minus1_enclosure(&p(0.1, 0.2, 0.9)).unwrap();
        assert!((e.lo - 0.818_181_818_181_818_2).abs() < 1e-15);
        assert!((e.hi - 0.888_888_888_888_888_9).abs() < 1e-15);
        assert!(w_minus1_enclosure(&p(1.5, 0.3, 1.0)).is_err());
    }
}
