//! Seeded random choices (linear forms, combinations) used by parameter and
//! certificate searches. All randomness in the crate flows through here.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ideal::monomials_of_weighted_degree;
use crate::poly::Poly;
use crate::ring::Ring;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random nonzero element of `F_p`.
pub fn nonzero_coeff(ring: &Ring, rng: &mut SeededRng) -> u32 {
    rng.gen_range(1..ring.characteristic())
}

/// `sum c_i f_i` with uniformly random coefficients, retried until nonzero.
pub fn combination(ring: &Ring, polys: &[Poly], rng: &mut SeededRng) -> Poly {
    if polys.is_empty() {
        return ring.zero();
    }
    let p = ring.characteristic();
    for _ in 0..64 {
        let mut acc = ring.zero();
        for f in polys {
            let c = rng.gen_range(0..p);
            acc = acc.add_scaled(c, None, f);
        }
        if !acc.is_zero() {
            return acc;
        }
    }
    polys[0].clone()
}

/// A random nonzero form of the given weighted degree.
pub fn random_form(ring: &Ring, weights: &[u32], degree: u64, rng: &mut SeededRng) -> Poly {
    let monos: Vec<Poly> = monomials_of_weighted_degree(weights, degree)
        .into_iter()
        .map(|m| Poly::monomial(ring, m, 1))
        .collect();
    combination(ring, &monos, rng)
}

/// A random nonzero linear form in all variables.
pub fn linear_form(ring: &Ring, rng: &mut SeededRng) -> Poly {
    combination(ring, &ring.vars(), rng)
}
