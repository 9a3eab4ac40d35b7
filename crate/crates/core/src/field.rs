//! Prime field arithmetic.
//!
//! Coefficients are stored as plain `u32` residues in `[0, p)`; the [`PrimeField`]
//! carries the modulus and does the reduction. [`FieldElem`] pairs a residue with
//! its modulus for callers that want a self-describing value.

use std::fmt;

use crate::error::PolyError;

/// Largest supported characteristic.
pub const MAX_PRIME: u32 = (1 << 31) - 1;

/// The field `F_p` for a word-sized prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn new(p: u32) -> Result<Self, PolyError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(PolyError::NotPrime(p as u64));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: u32) -> Result<u32, PolyError> {
        if a.is_multiple_of(self.p) {
            return Err(PolyError::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(self.from_i64(t0))
    }

    pub fn elem(&self, v: i64) -> FieldElem {
        FieldElem {
            value: self.from_i64(v),
            p: self.p,
        }
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    p: u32,
}

impl FieldElem {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn field(&self, other: &FieldElem) -> Result<PrimeField, PolyError> {
        if self.p != other.p {
            return Err(PolyError::ModulusMismatch(self.p, other.p));
        }
        Ok(PrimeField { p: self.p })
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem, PolyError> {
        let f = self.field(other)?;
        Ok(FieldElem {
            value: f.add(self.value, other.value),
            p: self.p,
        })
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem, PolyError> {
        let f = self.field(other)?;
        Ok(FieldElem {
            value: f.mul(self.value, other.value),
            p: self.p,
        })
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            value: PrimeField { p: self.p }.neg(self.value),
            p: self.p,
        }
    }

    pub fn inv(&self) -> Result<FieldElem, PolyError> {
        Ok(FieldElem {
            value: PrimeField { p: self.p }.inv(self.value)?,
            p: self.p,
        })
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let n = n as u64;
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_field_identities() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.inv(3).unwrap(), 5);
        assert_eq!(f7.add(4, 3), 0);
        assert_eq!(f7.mul(6, 6), 1);
        assert_eq!(f7.neg(0), 0);
        assert_eq!(f7.sub(2, 5), 4);
        assert_eq!(f7.pow(3, 6), 1);
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f7 = PrimeField::new(7).unwrap();
        assert!(matches!(f7.inv(0), Err(PolyError::DivisionByZero)));
        assert_eq!(
            PolyError::DivisionByZero.to_string(),
            "division by zero in F_p"
        );
    }

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(MAX_PRIME).is_ok());
    }

    #[test]
    fn elem_arith_checks_modulus() {
        let a = PrimeField::new(5).unwrap().elem(3);
        let b = PrimeField::new(7).unwrap().elem(3);
        assert!(a.add(&b).is_err());
        assert_eq!(a.inv().unwrap().value(), 2);
        assert_eq!(a.neg().value(), 2);
    }

    #[test]
    fn inverses_over_large_prime() {
        let f = PrimeField::new(MAX_PRIME).unwrap();
        for a in [1u32, 2, 12345, MAX_PRIME - 1] {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }
}
