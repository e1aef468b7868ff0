//! Named invariant checks over seeded parameter samples.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::time::Instant;

use rand::Rng;

use crate::asymptotics::{classify_case, radial_limit, tangential_probe, Classification};
use crate::bounds::{
    bound_tech, bound_thm_sufficient, classify_thm1, corollary_convexity, subordination_condition,
    w_minus1_enclosure,
};
use crate::contfrac::{
    cf_convergents, default_monotone_tol, enclosure_t_u, eval_t_u, total_monotone_check,
    total_monotone_check_extended, w_fraction, w_minus1_lower_depth3, w_taylor_coefficients, GSequence, CF_TOL,
};
use crate::convexity::{
    convexity_closed_form, convexity_closed_form_with, convexity_numeric, functional_grid, h_alpha_beta,
    kappa_estimate, sigma_estimate, w_ratio, GridSpec, RatioSource,
};
use crate::dd::{exact_sum, DoubleDouble};
use crate::error::Result;
use crate::hyp2f1::{
    connection_eval, elliptic_k_e, gauss_2f1, gauss_2f1_derivatives, gauss_2f1_via, ode_residual, EvalPath,
    Params, C64, DEFAULT_TOL,
};
use crate::sampling::{disk_point, kustner_triple, rng, thm1_triple, thm2_triple};
use crate::scan::{parse_pgm, render_pgm, scan_region, Cell, Window};
use crate::specfun::{gamma_real, pochhammer};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Fast,
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Largest residual or violation observed.
    pub worst: f64,
    pub tol: f64,
    pub samples: usize,
    /// First evaluation error, if any.
    pub error: Option<String>,
    pub seconds: f64,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} worst {:.3e} (tol {:.1e}, {} samples, {:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.worst,
            self.tol,
            self.samples,
            self.seconds
        )?;
        if let Some(e) = &self.error {
            write!(f, " error: {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Accumulates residuals for one check.
struct Tally {
    worst: f64,
    samples: usize,
    errors: usize,
    first_error: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self { worst: 0.0, samples: 0, errors: 0, first_error: None }
    }

    fn residual(&mut self, r: f64) {
        self.samples += 1;
        if r.is_nan() {
            self.worst = f64::INFINITY;
        } else {
            self.worst = self.worst.max(r);
        }
    }

    fn flag(&mut self, ok: bool) {
        self.residual(if ok { 0.0 } else { 1.0 });
    }

    fn with(&mut self, r: Result<f64>) {
        match r {
            Ok(v) => self.residual(v),
            Err(e) => {
                self.samples += 1;
                self.errors += 1;
                if self.first_error.is_none() {
                    self.first_error = Some(e.to_string());
                }
            }
        }
    }

    fn finish(self, name: &'static str, tol: f64, start: Instant) -> CheckOutcome {
        CheckOutcome {
            name,
            passed: self.errors == 0 && self.worst <= tol,
            worst: self.worst,
            tol,
            samples: self.samples,
            error: self.first_error,
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(f64::MIN_POSITIVE)
}

fn gamma_reflection() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..200 {
        let x: f64 = r.gen_range(-5.0..5.0);
        if (x - x.round()).abs() < 1e-3 {
            continue;
        }
        t.with((|| Ok((gamma_real(x)? * gamma_real(1.0 - x)? * (PI * x).sin() / PI - 1.0).abs()))());
    }
    t.finish("gamma_reflection", 1e-10, start)
}

fn gamma_recurrence() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..200 {
        let x: f64 = r.gen_range(0.1..10.0);
        t.with((|| Ok(rel(gamma_real(x + 1.0)?, x * gamma_real(x)?)))());
    }
    t.finish("gamma_recurrence", 1e-12, start)
}

fn pochhammer_ratio() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..50 {
        let x: f64 = r.gen_range(0.5..3.0);
        for n in 0..=10u32 {
            t.with((|| Ok(rel(gamma_real(x + n as f64)? / gamma_real(x)?, pochhammer(x, n))))());
            t.flag(pochhammer(x, n + 1) == pochhammer(x, n) * (x + n as f64));
        }
    }
    t.finish("pochhammer_gamma_ratio", 1e-10, start)
}

fn hyp2f1_symmetry() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..40 {
        let p = kustner_triple(&mut r);
        for _ in 0..10 {
            let z = disk_point(&mut r, 0.99);
            t.with((|| Ok((gauss_2f1(&p, z, DEFAULT_TOL)? - gauss_2f1(&p.swapped(), z, DEFAULT_TOL)?).norm()))());
        }
    }
    t.finish("hyp2f1_ab_symmetry", 0.0, start)
}

fn derivative_identity() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..40 {
        let p = kustner_triple(&mut r);
        for _ in 0..10 {
            let z = disk_point(&mut r, 0.9);
            t.with((|| {
                let f = gauss_2f1_derivatives(&p, z, DEFAULT_TOL)?;
                let rhs = p.a * (w_ratio(&p, z, DEFAULT_TOL)? - 1.0);
                Ok((z * f.deriv1 / f.value - rhs).norm() / (1.0 + rhs.norm()))
            })());
        }
    }
    t.finish("derivative_identity", 1e-9, start)
}

fn contiguous_relation() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..40 {
        let p = kustner_triple(&mut r);
        for _ in 0..10 {
            let z = disk_point(&mut r, 0.95);
            t.with((|| {
                let Params { a, b, c } = p;
                let f = gauss_2f1(&p, z, DEFAULT_TOL)?;
                let g = gauss_2f1(&p.raised(), z, DEFAULT_TOL)?;
                let h = gauss_2f1(&p.raised().raised(), z, DEFAULT_TOL)?;
                let lhs = (a + 1.0) * (1.0 - z) * h;
                let rhs = (2.0 * a + 2.0 - c + (b - a - 1.0) * z) * g + (c - a - 1.0) * f;
                Ok((lhs - rhs).norm() / (1.0 + lhs.norm()))
            })());
        }
    }
    t.finish("contiguous_relation", 1e-9, start)
}

fn series_vs_connection() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    let mut done = 0;
    while done < 40 {
        let p = kustner_triple(&mut r);
        let g = p.excess();
        if !p.asym_ok() || (g - g.round()).abs() < 0.05 {
            continue;
        }
        done += 1;
        for _ in 0..5 {
            let z = loop {
                let z = C64::from_polar(r.gen_range(0.55..0.75), r.gen_range(-1.0..1.0));
                if z.re > 0.5 {
                    break z;
                }
            };
            t.with((|| {
                let s = gauss_2f1_via(&p, z, DEFAULT_TOL, EvalPath::Direct)?.value;
                let c = connection_eval(&p, z)?.value;
                Ok((s - c).norm() / (1.0 + s.norm()))
            })());
        }
    }
    t.finish("series_vs_connection", 1e-9, start)
}

fn ode_residuals() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..40 {
        let p = kustner_triple(&mut r);
        for _ in 0..10 {
            t.with(ode_residual(&p, disk_point(&mut r, 0.99)));
        }
    }
    t.finish("ode_residual", 1e-7, start)
}

/// |series - continued fraction| for w on 20 triples x 50 points with |z| <= 0.9.
pub fn fraction_vs_series_residual() -> (f64, usize) {
    let mut r = rng();
    let mut worst: f64 = 0.0;
    let mut errors = 0;
    for _ in 0..20 {
        let p = kustner_triple(&mut r);
        for _ in 0..50 {
            let z = disk_point(&mut r, 0.9);
            match (w_ratio(&p, z, DEFAULT_TOL), w_fraction(&p, z, CF_TOL)) {
                (Ok(s), Ok(f)) => worst = worst.max((s - f).norm() / (1.0 + s.norm())),
                _ => errors += 1,
            }
        }
    }
    (worst, errors)
}

fn fraction_vs_series() -> CheckOutcome {
    let start = Instant::now();
    let (worst, errors) = fraction_vs_series_residual();
    let mut t = Tally::new();
    t.residual(worst);
    t.samples = 1000;
    if errors > 0 {
        t.errors = errors;
        t.first_error = Some(format!("{errors} evaluations failed"));
    }
    t.finish("fraction_vs_series", 1e-10, start)
}

fn tu_enclosures() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..20 {
        let p = kustner_triple(&mut r);
        let Ok((et, eu)) = enclosure_t_u(&p) else {
            t.with(enclosure_t_u(&p).map(|_| 0.0));
            continue;
        };
        for k in 0..40 {
            let z = if k % 2 == 0 {
                disk_point(&mut r, 1.0)
            } else {
                C64::from_polar(1.0, r.gen_range(0.05..PI * 2.0 - 0.05))
            };
            t.with(eval_t_u(&p, z, CF_TOL).map(|(tv, uv)| et.excess(tv).max(eu.excess(uv))));
        }
    }
    t.finish("tu_enclosures", 1e-10, start)
}

fn convergent_pattern() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..20 {
        let p = kustner_triple(&mut r);
        let Ok(g) = GSequence::kustner(&p) else { continue };
        for (x, alternating) in [(0.5, false), (-0.5, true)] {
            let z = C64::new(x, 0.0);
            t.with((|| {
                let conv = cf_convergents(&g, z, 12)?;
                let limit = w_fraction(&p, z, CF_TOL)?;
                let errs: Vec<f64> =
                    conv.iter().map(|v| (v - limit).re).take_while(|e| e.abs() > 1e-12).collect();
                let bad = if alternating {
                    errs.windows(2).filter(|w| w[0] * w[1] >= 0.0).count()
                } else {
                    errs.windows(2).filter(|w| !(w[0] <= 0.0 && w[1] <= 0.0 && w[1] >= w[0])).count()
                };
                Ok(bad as f64)
            })());
        }
    }
    t.finish("convergent_pattern", 0.0, start)
}

fn w_minus1_bounds() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..50 {
        let p = kustner_triple(&mut r);
        t.with((|| {
            let w = w_ratio(&p, C64::new(-1.0, 0.0), DEFAULT_TOL)?.re;
            let e = w_minus1_enclosure(&p)?;
            let lo = w_minus1_lower_depth3(&p)?;
            Ok((lo - w).max(e.lo - w).max(w - e.hi).max(e.lo - lo).max(0.0))
        })());
    }
    t.finish("w_minus1_bounds", 1e-10, start)
}

fn total_monotone() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..20 {
        let p = kustner_triple(&mut r);
        let coeffs = w_taylor_coefficients(&p, 40);
        let plain: Vec<f64> = coeffs.iter().map(|c| c.to_f64()).collect();
        t.flag(total_monotone_check_extended(&coeffs, default_monotone_tol(&plain)));
    }
    t.flag(!total_monotone_check(&[1.0, 2.0], default_monotone_tol(&[1.0, 2.0])));
    t.finish("total_monotone", 0.0, start)
}

fn dual_path_functional() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..20 {
        let p = kustner_triple(&mut r);
        for _ in 0..25 {
            let z = disk_point(&mut r, 0.99);
            if z.norm() < 1e-3 {
                continue;
            }
            match convexity_closed_form(&p, z, DEFAULT_TOL) {
                Ok(parts) if parts.q.norm() > 1e-6 => t.with(
                    convexity_numeric(&p, z, DEFAULT_TOL)
                        .map(|n| (n - parts.functional).norm() / (1.0 + parts.functional.norm())),
                ),
                Ok(_) => {}
                Err(e) if e.is_domain() => {}
                Err(e) => t.with(Err(e)),
            }
        }
    }
    t.finish("closed_vs_numeric_functional", 1e-7, start)
}

fn q_identity() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..20 {
        let p = kustner_triple(&mut r);
        for _ in 0..25 {
            let z = disk_point(&mut r, 0.999);
            for source in [RatioSource::ContinuedFraction, RatioSource::Hypergeometric] {
                t.with(convexity_closed_form_with(&p, z, DEFAULT_TOL, source)
                    .map(|parts| parts.q_identity_gap(&p, z) / (1.0 + parts.q.norm())));
            }
        }
    }
    t.finish("q_identity", 1e-10, start)
}

fn half_plane_signs() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..20 {
        let p = thm2_triple(&mut r);
        for _ in 0..25 {
            let z = disk_point(&mut r, 0.999);
            t.with(convexity_closed_form(&p, z, DEFAULT_TOL).map(|parts| {
                (-(z.im * parts.w.im)).max(-(z.im * parts.w1.im)).max(0.0)
            }));
        }
    }
    t.finish("im_sign", 1e-10, start)
}

fn reciprocal_real_part() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..20 {
        let p = thm2_triple(&mut r);
        let floor = 1.0 / (1.0 + p.a + p.b - p.c);
        for _ in 0..50 {
            let z = disk_point(&mut r, 0.999);
            t.with(convexity_closed_form(&p, z, DEFAULT_TOL).map(|parts| {
                (floor - (1.0 / (p.b - p.a + parts.w1)).re).max(0.0)
            }));
        }
    }
    t.finish("reciprocal_real_part", 1e-8, start)
}

/// Re(z w''/w') from a truncated Taylor series.
fn series_functional(coeffs: &[f64], z: C64) -> C64 {
    let mut d1 = C64::new(0.0, 0.0);
    let mut d2 = C64::new(0.0, 0.0);
    for n in (1..coeffs.len()).rev() {
        d1 = d1 * z + n as f64 * coeffs[n];
    }
    for n in (2..coeffs.len()).rev() {
        d2 = d2 * z + (n * (n - 1)) as f64 * coeffs[n];
    }
    z * d2 / d1
}

fn affine_invariance() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..10 {
        let p = kustner_triple(&mut r);
        let coeffs: Vec<f64> = w_taylor_coefficients(&p, 80).iter().map(|c| c.to_f64()).collect();
        let moved: Vec<f64> =
            coeffs.iter().enumerate().map(|(n, c)| if n == 0 { 2.0 * c + 5.0 } else { 2.0 * c }).collect();
        for _ in 0..10 {
            let z = disk_point(&mut r, 0.5);
            if z.norm() < 1e-3 {
                continue;
            }
            let f = series_functional(&coeffs, z);
            let g = series_functional(&moved, z);
            t.residual((f.re - g.re).abs());
            t.with(convexity_closed_form(&p, z, DEFAULT_TOL)
                .map(|parts| (parts.functional - 1.0 - f).norm() / (1.0 + f.norm())));
        }
    }
    t.finish("affine_invariance", 1e-9, start)
}

fn bound_identities() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..200 {
        let p = thm2_triple(&mut r);
        t.with((|| {
            let e = w_minus1_enclosure(&p)?;
            let base = bound_thm_sufficient(&p)?;
            let reduced = bound_tech(&p, e.lo)?;
            let mid = bound_tech(&p, 0.5 * (e.lo + e.hi))?;
            let top = bound_tech(&p, e.hi)?;
            let mono = (reduced - mid).max(mid - top).max(0.0);
            Ok(rel(reduced, base).min((reduced - base).abs()).max(mono))
        })());
    }
    t.finish("bound_reduction_monotone", 1e-14, start)
}

fn exclusivity() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..5000 {
        let p = Params { a: r.gen_range(0.0..2.0), b: r.gen_range(0.0..2.0), c: r.gen_range(0.05..3.0) };
        t.flag(!(classify_thm1(&p) && p.thm2_ok()));
    }
    t.finish("thm_exclusivity", 0.0, start)
}

fn coefficient_signs() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..50 {
        let p = thm1_triple(&mut r);
        t.with(classify_case(&p).map(|prof| {
            let v = prof.lambda.or(prof.eta).unwrap_or(f64::NAN);
            if v > 0.0 {
                0.0
            } else {
                1.0
            }
        }));
    }
    t.finish("lambda_eta_positive", 0.0, start)
}

fn a0_cross_check() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    let mut done = 0;
    while done < 30 {
        let p = thm1_triple(&mut r);
        if p.excess() >= 0.0 {
            continue;
        }
        done += 1;
        t.with((|| {
            let Params { a, b, c } = p;
            let prof = classify_case(&p)?;
            let direct = gamma_real(c - a - b)? * gamma_real(a)? * gamma_real(b)?
                / (gamma_real(a + b - c)? * gamma_real(c - a)? * gamma_real(c - b)?);
            Ok(rel(prof.a0(&p).unwrap_or(f64::NAN), direct))
        })());
    }
    t.finish("a0_cross_check", 1e-10, start)
}

fn radial_limits() -> CheckOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for (a, b, c) in [(0.5, 0.5, 0.8), (0.3, 0.6, 0.5), (0.7, 0.9, 1.2), (1.2, 0.8, 1.1)] {
        let p = Params { a, b, c };
        t.with(radial_limit(&p).map(|l| rel(l.extrapolated, l.expected)));
    }
    t.finish("radial_limit", 5e-3, start)
}

fn elliptic_identity() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..20 {
        let z = disk_point(&mut r, 0.9);
        t.with((|| {
            let (k, e) = elliptic_k_e(z)?;
            let (ki, ei) = elliptic_quadrature(z);
            let h = h_alpha_beta(0.75, 0.75, z)?;
            let target = 0.5 * (1.0 + e / ((1.0 - z) * k));
            Ok((h - target).norm().max((k - ki).norm()).max((e - ei).norm()))
        })());
    }
    t.finish("elliptic_identity", 1e-9, start)
}

/// K(z) and E(z) by the trapezoidal rule in phi on [0, pi/2], which is
/// spectrally accurate for these smooth periodic integrands.
pub fn elliptic_quadrature(z: C64) -> (C64, C64) {
    let n = 2000;
    let h = FRAC_PI_2 / n as f64;
    let mut k = C64::new(0.0, 0.0);
    let mut e = C64::new(0.0, 0.0);
    for j in 0..=n {
        let s = (j as f64 * h).sin();
        let root = (1.0 - z * s * s).sqrt();
        let weight = if j == 0 || j == n { 0.5 } else { 1.0 };
        k += weight / root;
        e += weight * root;
    }
    (k * h, e * h)
}

fn scan_topology() -> CheckOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    match scan_region(1.0, Window::default(), 200, 200) {
        Ok(grid) => {
            for j in 0..grid.nb {
                let b = grid.b_center(j);
                for i in 0..grid.na {
                    let a = grid.a_center(i);
                    let cell = grid.get(i, j);
                    let sum = exact_sum(&[a, b]);
                    let black = DoubleDouble::from(0.5) < sum
                        && sum < DoubleDouble::from(2.0)
                        && ((a > 1.0 && b > 1.0) || (a < 1.0 && b < 1.0));
                    t.flag((cell == Cell::Black) == black);
                    if cell == Cell::Gray {
                        t.flag(sum <= DoubleDouble::from(0.5));
                    }
                }
            }
            for (a, b, want) in [(0.5, 0.5, Cell::Black), (0.05, 0.4, Cell::Gray), (1.5, 0.3, Cell::White)] {
                t.flag(grid.cell_at(a, b).map(|(i, j)| grid.get(i, j)) == Some(want));
            }
            let bytes = render_pgm(&grid);
            t.flag(parse_pgm(&bytes).and_then(|pgm| pgm.cells()).is_ok_and(|cells| cells == grid.cells));
        }
        Err(e) => t.with(Err(e)),
    }
    t.finish("scan_topology_pgm", 0.0, start)
}

fn corollary_mapping() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    let mut done = 0;
    while done < 100 {
        let beta: f64 = r.gen_range(0.75..1.0);
        let alpha: f64 = r.gen_range(beta..1.0);
        if alpha + beta < 1.75 {
            continue;
        }
        done += 1;
        t.with((|| {
            let sub = subordination_condition(alpha, beta)?;
            let cor = corollary_convexity(2.0 - 2.0 * alpha, 2.0 - 2.0 * beta)?;
            Ok(if sub == cor.convex { 0.0 } else { 1.0 })
        })());
    }
    t.finish("corollary_mapping", 0.0, start)
}

fn soundness_sweep() -> CheckOutcome {
    let start = Instant::now();
    let mut r = rng();
    let mut t = Tally::new();
    for _ in 0..50 {
        let p = thm2_triple(&mut r);
        t.with((|| {
            let k = kappa_estimate(&p, 64, 720, 0.9999)?;
            Ok((bound_thm_sufficient(&p)? - k.kappa_min).max(0.0))
        })());
    }
    t.finish("bound_soundness", 2e-3, start)
}

fn symmetric_triples() -> Vec<Params> {
    let mut r = rng();
    let mut out = Vec::new();
    while out.len() < 4 {
        let p = kustner_triple(&mut r);
        if p.a > 0.0 && p.swapped().kustner_ok() {
            out.push(p);
        }
    }
    out
}

fn kappa_grid_symmetry() -> CheckOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let spec = GridSpec::default();
    for p in symmetric_triples() {
        let g1 = functional_grid(&p, &spec);
        let g2 = functional_grid(&p.swapped(), &spec);
        for (x, y) in g1.values.iter().flatten().zip(g2.values.iter().flatten()) {
            if x.is_finite() && y.is_finite() {
                t.residual((x - y).abs());
            }
        }
    }
    t.finish("kappa_grid_symmetry", 1e-8, start)
}

fn kappa_estimate_symmetry() -> CheckOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for p in symmetric_triples() {
        t.with((|| {
            let k1 = kappa_estimate(&p, 64, 720, 0.9999)?;
            let k2 = kappa_estimate(&p.swapped(), 64, 720, 0.9999)?;
            Ok(if k1.boundary_divergence || k2.boundary_divergence {
                0.0
            } else {
                (k1.kappa_min - k2.kappa_min).abs()
            })
        })());
    }
    t.finish("kappa_estimate_symmetry", 2e-3, start)
}

fn geometric_case() -> CheckOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let p = Params { a: 0.5, b: 0.7, c: 0.7 };
    t.with(kappa_estimate(&p, 64, 720, 0.9999).map(|k| {
        if k.boundary_divergence {
            1.0
        } else {
            k.kappa_min.abs()
        }
    }));
    t.with(sigma_estimate(&p, 64, 720, 0.9999).map(|s| (s - 0.5).abs()));
    t.finish("geometric_ratio_orders", 1e-3, start)
}

fn tangential_divergence() -> CheckOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for (a, b, c) in [(0.3, 0.3, 0.7), (0.5, 0.5, 0.8), (0.5, 0.5, 1.0)] {
        let p = Params { a, b, c };
        t.with(tangential_probe(&p, 1e-5).map(|rep| {
            if rep.classification == Classification::Diverges {
                0.0
            } else {
                1.0
            }
        }));
    }
    t.with(tangential_probe(&Params { a: 0.5, b: 0.7, c: 0.7 }, 1e-5).map(|rep| {
        if rep.classification == Classification::Inconclusive {
            0.0
        } else {
            1.0
        }
    }));
    t.finish("tangential_divergence", 0.0, start)
}

/// Runs the named checks; `All` adds the grid-based estimates.
pub fn run_verify(suite: Suite) -> VerifyReport {
    let mut fast: Vec<fn() -> CheckOutcome> = vec![
        gamma_reflection,
        gamma_recurrence,
        pochhammer_ratio,
        hyp2f1_symmetry,
        derivative_identity,
        contiguous_relation,
        series_vs_connection,
        ode_residuals,
        fraction_vs_series,
        tu_enclosures,
        convergent_pattern,
        w_minus1_bounds,
        total_monotone,
        dual_path_functional,
        q_identity,
        half_plane_signs,
        reciprocal_real_part,
        affine_invariance,
        bound_identities,
        exclusivity,
        coefficient_signs,
        a0_cross_check,
        radial_limits,
        elliptic_identity,
        scan_topology,
        corollary_mapping,
        tangential_divergence,
    ];
    if suite == Suite::All {
        fast.extend([
            geometric_case as fn() -> CheckOutcome,
            kappa_grid_symmetry,
            kappa_estimate_symmetry,
            soundness_sweep,
        ]);
    }
    VerifyReport { checks: fast.into_iter().map(|check| check()).collect() }
}
