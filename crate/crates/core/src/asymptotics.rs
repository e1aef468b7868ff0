//! Behavior of w_{a,b,c} near z = 1 and the tangential probe of Re W.
//!
//! With gamma = c-a-b, three regimes occur for a+b-1 < c < a+b+1:
//!
//! * I   (0 < gamma < 1):  w ~ lambda (1-z)^(gamma-1)
//! * II  (gamma = 0):      w ~ 1 / (-a (1-z) log(1-z))
//! * III (-1 < gamma < 0): w ~ gamma'/(a(1-z)) + eta (1-z)^(gamma'-1), gamma' = -gamma

use std::f64::consts::{FRAC_PI_2, PI};

use crate::convexity::{convexity_closed_form_with, w_ratio, RatioSource};
use crate::error::{Error, Result};
use crate::hyp2f1::{Params, C64, DEFAULT_TOL};
use crate::specfun::gamma_real;

const CASE_II_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticCase {
    I,
    II,
    III,
}

impl AsymptoticCase {
    pub fn label(self) -> &'static str {
        match self {
            Self::I => "I",
            Self::II => "II",
            Self::III => "III",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticProfile {
    pub case: AsymptoticCase,
    /// c - a - b.
    pub gamma: f64,
    /// Leading coefficient in case I.
    pub lambda: Option<f64>,
    /// Second coefficient in case III.
    pub eta: Option<f64>,
    /// Error exponent: min(2 gamma - 1, 0) in case I, min(2 gamma' - 1, 0) in case III.
    pub eps: Option<f64>,
}

impl AsymptoticProfile {
    /// a + b - c.
    pub fn gamma_prime(&self) -> f64 {
        -self.gamma
    }

    /// -a eta / (a+b-c), the coefficient of (1-z)^(gamma'-1) relative to
    /// the pole term in case III.
    pub fn a0(&self, p: &Params) -> Option<f64> {
        self.eta.map(|eta| -p.a * eta / self.gamma_prime())
    }
}

/// Determines the regime of w_{a,b,c} at z = 1 and its coefficients.
pub fn classify_case(p: &Params) -> Result<AsymptoticProfile> {
    let Params { a, b, c } = *p;
    if !p.asym_ok() {
        return Err(Error::domain(format!(
            "one of a, b, c, c-a, c-b is a non-positive integer for ({a}, {b}, {c})"
        )));
    }
    let gamma = c - a - b;
    if !(gamma > -1.0 && gamma < 1.0) {
        return Err(Error::domain(format!("need a+b-1 < c < a+b+1, got c-a-b = {gamma}")));
    }
    if gamma.abs() <= CASE_II_EPS {
        return Ok(AsymptoticProfile { case: AsymptoticCase::II, gamma, lambda: None, eta: None, eps: None });
    }
    if gamma > 0.0 {
        let lambda = gamma_real(1.0 - gamma)? * gamma_real(c - a)? * gamma_real(c - b)?
            / (gamma_real(a + 1.0)? * gamma_real(b)? * gamma_real(gamma)?);
        Ok(AsymptoticProfile {
            case: AsymptoticCase::I,
            gamma,
            lambda: Some(lambda),
            eta: None,
            eps: Some((2.0 * gamma - 1.0).min(0.0)),
        })
    } else {
        let gp = -gamma;
        let eta = gamma_real(1.0 - gp)? * gamma_real(a)? * gamma_real(b)?
            / (a * gamma_real(gp)? * gamma_real(c - a)? * gamma_real(c - b)?);
        Ok(AsymptoticProfile {
            case: AsymptoticCase::III,
            gamma,
            lambda: None,
            eta: Some(eta),
            eps: Some((2.0 * gp - 1.0).min(0.0)),
        })
    }
}

/// Leading-order model of w(z) near z = 1 (principal branches).
pub fn w_asymptotic(prof: &AsymptoticProfile, p: &Params, z: C64) -> Result<C64> {
    let u = 1.0 - z;
    if !(u.norm() > 0.0 && u.norm() < 0.3 && z.norm() <= 1.0 + 1e-12) {
        return Err(Error::domain(format!("need 0 < |1-z| < 0.3 and |z| <= 1, got z = {z}")));
    }
    Ok(match prof.case {
        AsymptoticCase::I => prof.lambda.unwrap_or(f64::NAN) * u.powf(prof.gamma - 1.0),
        AsymptoticCase::II => 1.0 / (-p.a * u * u.ln()),
        AsymptoticCase::III => {
            let gp = prof.gamma_prime();
            gp / (p.a * u) + prof.eta.unwrap_or(f64::NAN) * u.powf(gp - 1.0)
        }
    })
}

/// z_theta = (exp(2 i theta) + 1)/2 = exp(i theta) cos(theta), on the circle |z - 1/2| = 1/2.
pub fn tangential_point(theta: f64) -> C64 {
    (C64::from_polar(1.0, 2.0 * theta) + 1.0) / 2.0
}

/// Leading term of Re W(z_theta) as theta -> 0+.
pub fn rew_model(prof: &AsymptoticProfile, p: &Params, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < 0.3) {
        return Err(Error::domain(format!("need 0 < theta < 0.3, got {theta}")));
    }
    let a = p.a;
    Ok(match prof.case {
        AsymptoticCase::I => {
            let g = prof.gamma;
            let lambda = prof.lambda.unwrap_or(f64::NAN);
            a * lambda * (1.0 / (1.0 - g) - 2.0) * ((g - 1.0) * (theta - FRAC_PI_2)).cos() * theta.sin().powf(g - 1.0)
        }
        AsymptoticCase::II => -PI / (2.0 * theta * theta.ln().powi(2)),
        AsymptoticCase::III => {
            let gp = prof.gamma_prime();
            let eta = prof.eta.unwrap_or(f64::NAN);
            -a * eta * ((gp - 1.0) * (theta - FRAC_PI_2)).cos() * theta.sin().powf(gp - 1.0)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Diverges,
    Inconclusive,
}

impl Classification {
    pub fn label(self) -> &'static str {
        match self {
            Self::Diverges => "DIVERGES",
            Self::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceReport {
    /// Strictly decreasing.
    pub thetas: Vec<f64>,
    /// Re W(z_theta); NaN where evaluation failed.
    pub rew_direct: Vec<f64>,
    /// Leading-order model; NaN when no regime applies.
    pub rew_model: Vec<f64>,
    pub classification: Classification,
}

impl DivergenceReport {
    /// |direct/model - 1| at each theta.
    pub fn relative_gaps(&self) -> Vec<f64> {
        self.rew_direct
            .iter()
            .zip(&self.rew_model)
            .map(|(d, m)| (d / m - 1.0).abs())
            .collect()
    }
}

const PROBE_PER_DECADE: f64 = 5.0;
const PROBE_TAIL: usize = 6;
const PROBE_LEVEL: f64 = -100.0;

/// theta = 10^(-1 - k/5) for k = 0, 1, ... down to theta_min.
pub fn probe_thetas(theta_min: f64) -> Result<Vec<f64>> {
    if !(theta_min > 0.0 && theta_min < 0.1) {
        return Err(Error::domain(format!("need 0 < theta_min < 0.1, got {theta_min}")));
    }
    let steps = (PROBE_PER_DECADE * (0.1 / theta_min).log10() + 1e-9).floor() as usize;
    Ok((0..=steps).map(|k| 10f64.powf(-1.0 - k as f64 / PROBE_PER_DECADE)).collect())
}

/// Evaluates Re W along the tangential path z_theta and compares it with the
/// leading-order model.
pub fn tangential_probe(p: &Params, theta_min: f64) -> Result<DivergenceReport> {
    let thetas = probe_thetas(theta_min)?;
    let profile = classify_case(p).ok();
    let rew_direct: Vec<f64> = thetas
        .iter()
        .map(|&th| {
            convexity_closed_form_with(p, tangential_point(th), DEFAULT_TOL, RatioSource::Hypergeometric)
                .map(|parts| parts.functional.re)
                .ok()
                .filter(|v| v.is_finite())
                .unwrap_or(f64::NAN)
        })
        .collect();
    let rew_model: Vec<f64> = thetas
        .iter()
        .map(|&th| profile.and_then(|prof| rew_model(&prof, p, th).ok()).unwrap_or(f64::NAN))
        .collect();
    let failed = rew_direct.iter().filter(|v| v.is_nan()).count();
    if failed * 5 > thetas.len() {
        return Err(Error::Estimation { failed, total: thetas.len() });
    }
    let n = rew_direct.len();
    let tail = &rew_direct[n.saturating_sub(PROBE_TAIL)..];
    let diverges = tail.len() == PROBE_TAIL
        && tail.windows(2).all(|w| w[1] < w[0])
        && tail[PROBE_TAIL - 1] < PROBE_LEVEL;
    let classification = if diverges { Classification::Diverges } else { Classification::Inconclusive };
    Ok(DivergenceReport { thetas, rew_direct, rew_model, classification })
}

/// Re W at real points x in (0, 1).
pub fn radial_values(p: &Params, xs: &[f64]) -> Result<Vec<f64>> {
    xs.iter()
        .map(|&x| {
            if !(x > 0.0 && x < 1.0) {
                return Err(Error::domain(format!("need 0 < x < 1, got {x}")));
            }
            convexity_closed_form_with(p, C64::new(x, 0.0), DEFAULT_TOL, RatioSource::Hypergeometric)
                .map(|parts| parts.functional.re)
        })
        .collect()
}

/// Samples of (1-x) w(x) at x = 1 - 10^-k, k = 3..=6, and their Richardson
/// extrapolation to x = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialLimit {
    pub xs: Vec<f64>,
    pub scaled: Vec<f64>,
    pub extrapolated: f64,
    /// (a+b-c)/a.
    pub expected: f64,
}

/// Limit of (1-x) w(x) as x -> 1- when c < a+b.
pub fn radial_limit(p: &Params) -> Result<RadialLimit> {
    let Params { a, b, c } = *p;
    if !(c < a + b && a != 0.0) {
        return Err(Error::domain(format!("need c < a+b and a != 0, got ({a}, {b}, {c})")));
    }
    let xs: Vec<f64> = (3..=6).map(|k| 1.0 - 10f64.powi(-k)).collect();
    let scaled = xs
        .iter()
        .map(|&x| Ok(((1.0 - x) * w_ratio(p, C64::new(x, 0.0), DEFAULT_TOL)?).re))
        .collect::<Result<Vec<f64>>>()?;
    // error term ~ (1-x)^s; the samples shrink 1-x by 10 each step
    let r = 10f64.powf((a + b - c).min(1.0));
    let n = scaled.len();
    let extrapolated = (r * scaled[n - 1] - scaled[n - 2]) / (r - 1.0);
    Ok(RadialLimit { xs, scaled, extrapolated, expected: (a + b - c) / a })
}
