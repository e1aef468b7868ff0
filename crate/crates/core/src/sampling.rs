//! Seeded random parameter triples and disk points for sweeps.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hyp2f1::{Params, C64};

pub const SEED: u64 = 0x5EED;

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

/// -1 < a <= c, 0 < b <= c, with c in (0.3, 3).
pub fn kustner_triple(rng: &mut impl Rng) -> Params {
    let c = rng.gen_range(0.3..3.0);
    let a = rng.gen_range(-0.9..c);
    let b = rng.gen_range(0.02..=c);
    Params { a, b, c }
}

/// 0 < a <= b <= 1/2 and a+b+1/2 <= c <= 1+a.
pub fn thm2_triple(rng: &mut impl Rng) -> Params {
    let a = rng.gen_range(0.01..0.5);
    let b = rng.gen_range(a..=0.5);
    let c = rng.gen_range(a + b + 0.5..=1.0 + a);
    Params { a, b, c }
}

/// Positive a, b, c with a+b-1 < c < a+b+1/2, (c-a)(c-b) > 0 and c - a - b
/// kept at least 0.02 away from 0.
pub fn thm1_triple(rng: &mut impl Rng) -> Params {
    loop {
        let a: f64 = rng.gen_range(0.05..1.5);
        let b = rng.gen_range(0.05..1.5);
        let c = rng.gen_range((a + b - 1.0).max(0.05)..a + b + 0.5);
        let p = Params { a, b, c };
        if p.thm1_ok() && p.asym_ok() && (c - a - b).abs() > 0.02 {
            return p;
        }
    }
}

/// Uniform point of the disk |z| <= rmax.
pub fn disk_point(rng: &mut impl Rng, rmax: f64) -> C64 {
    let r = rmax * rng.gen_range(0.0f64..=1.0).sqrt();
    C64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples_satisfy_hypotheses() {
        let mut r = rng();
        for _ in 0..500 {
            assert!(kustner_triple(&mut r).kustner_ok());
            assert!(thm2_triple(&mut r).thm2_ok());
            assert!(thm1_triple(&mut r).thm1_ok());
            assert!(disk_point(&mut r, 0.9).norm() <= 0.9 + 1e-15);
        }
    }

    #[test]
    fn deterministic() {
        let a: Vec<Params> = (0..5).map({
            let mut r = rng();
            move |_| thm2_triple(&mut r)
        }).collect();
        let b: Vec<Params> = (0..5).map({
            let mut r = rng();
            move |_| thm2_triple(&mut r)
        }).collect();
        assert_eq!(a, b);
    }
}
