use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::normalized_rank;
use crate::error::{domain, Result};
use crate::linalg::{field, regular_witness, FpMatrix};

/// Counts of the pseudo-rank axiom checks at one finite level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomsReport {
    pub p: u32,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub normalization_checks: usize,
    pub normalization_violations: usize,
    pub product_checks: usize,
    pub product_violations: usize,
    pub additivity_checks: usize,
    pub additivity_violations: usize,
}

impl AxiomsReport {
    pub fn violations(&self) -> usize {
        self.normalization_violations + self.product_violations + self.additivity_violations
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "seed {}", self.seed);
        let _ = writeln!(out, "prime {}", self.p);
        let _ = writeln!(out, "size {}", self.n);
        let _ = writeln!(out, "trials {}", self.trials);
        let _ = writeln!(
            out,
            "normalization {}/{} violations",
            self.normalization_violations, self.normalization_checks
        );
        let _ = writeln!(
            out,
            "submultiplicativity {}/{} violations",
            self.product_violations, self.product_checks
        );
        let _ = writeln!(
            out,
            "additivity {}/{} violations",
            self.additivity_violations, self.additivity_checks
        );
        out
    }
}

/// Orthogonal idempotents `e = U P U^{-1}`, `f = U Q U^{-1}` where `P` and
/// `Q` project onto disjoint coordinate sets. Half the time the sets cover
/// all coordinates.
fn conjugated_projectors<R: Rng>(p: u32, n: usize, rng: &mut R) -> Result<(FpMatrix, FpMatrix)> {
    let mut coords: Vec<usize> = (0..n).collect();
    coords.shuffle(rng);
    let k = rng.gen_range(0..=n);
    let m = if rng.gen_bool(0.5) {
        n - k
    } else {
        rng.gen_range(0..=n - k)
    };
    let mut pm = FpMatrix::zeros(p, n, n)?;
    let mut qm = FpMatrix::zeros(p, n, n)?;
    for &c in &coords[..k] {
        pm.set(c, c, 1);
    }
    for &c in &coords[k..k + m] {
        qm.set(c, c, 1);
    }
    let u = FpMatrix::random_invertible(p, n, rng)?;
    let ui = u.inverse().expect("invertible");
    Ok((u.mul(&pm)?.mul(&ui)?, u.mul(&qm)?.mul(&ui)?))
}

/// Exact checks of `N(1) = 1`, `N(0) = 0`, `N(xy) ≤ min(N(x), N(y))` and
/// `N(e + f) = N(e) + N(f)` for orthogonal idempotents, with `N = rank/n` on
/// `n x n` matrices over GF(p).
pub fn pseudo_rank_axioms_check(
    p: u32,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<AxiomsReport> {
    field::check_prime(p)?;
    if n == 0 || trials == 0 {
        return Err(domain("need n >= 1 and trials >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AxiomsReport {
        p,
        n,
        trials,
        seed,
        normalization_checks: 2,
        normalization_violations: 0,
        product_checks: 0,
        product_violations: 0,
        additivity_checks: 0,
        additivity_violations: 0,
    };
    let zero = crate::Rational::from_integer(0);
    let one = crate::Rational::from_integer(1);
    if normalized_rank(&FpMatrix::identity(p, n)?)? != one {
        report.normalization_violations += 1;
    }
    if normalized_rank(&FpMatrix::zeros(p, n, n)?)? != zero {
        report.normalization_violations += 1;
    }
    for _ in 0..trials {
        let rx = rng.gen_range(0..=n);
        let ry = rng.gen_range(0..=n);
        let x = FpMatrix::random_low_rank(p, n, n, rx, &mut rng)?;
        let y = FpMatrix::random_low_rank(p, n, n, ry, &mut rng)?;
        let (nx, ny, nxy) = (
            normalized_rank(&x)?,
            normalized_rank(&y)?,
            normalized_rank(&x.mul(&y)?)?,
        );
        report.product_checks += 1;
        if nxy > nx || nxy > ny {
            report.product_violations += 1;
        }

        let (e, f) = conjugated_projectors(p, n, &mut rng)?;
        report.additivity_checks += 1;
        let orthogonal_idempotents =
            e.mul(&e)? == e && f.mul(&f)? == f && e.mul(&f)?.is_zero() && f.mul(&e)?.is_zero();
        let additive = normalized_rank(&e.add(&f)?)? == normalized_rank(&e)? + normalized_rank(&f)?;
        if !(orthogonal_idempotents && additive) {
            report.additivity_violations += 1;
        }
    }
    Ok(report)
}

/// Counts for the generalized-inverse check `x y x = x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityReport {
    pub p: u32,
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub verified: usize,
}

impl RegularityReport {
    pub fn failures(&self) -> usize {
        self.trials - self.verified
    }

    pub fn to_text(&self) -> String {
        format!(
            "seed {}\nprime {}\nsize {}\nverified {}/{}\n",
            self.seed, self.p, self.n, self.verified, self.trials
        )
    }
}

/// Random `n x n` matrices of random rank; each gets a witness `y` from
/// [`regular_witness`] and is checked for `x y x = x`.
pub fn regularity_check(p: u32, n: usize, trials: usize, seed: u64) -> Result<RegularityReport> {
    field::check_prime(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verified = 0;
    for _ in 0..trials {
        let r = rng.gen_range(0..=n);
        let x = FpMatrix::random_low_rank(p, n, n, r, &mut rng)?;
        let y = regular_witness(&x);
        if x.mul(&y)?.mul(&x)? == x {
            verified += 1;
        }
    }
    Ok(RegularityReport {
        p,
        n,
        seed,
        trials,
        verified,
    })
}
