//! Exponent-vector monomials and the admissible orders on them.

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::PolyError;

pub type Exponents = SmallVec<[u16; 16]>;

/// A monomial `x_0^{e_0} ... x_{n-1}^{e_{n-1}}` in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Self {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bit `i` set iff variable `i` occurs (variables past 63 are folded onto bit 63).
    #[inline]
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i.min(63);
            }
        }
        mask
    }

    /// Product; panics on exponent overflow, which the Groebner degree budget rules out.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("exponent overflow")
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        if self.nvars() != other.nvars() {
            return Err(PolyError::LengthMismatch(self.nvars(), other.nvars()));
        }
        let mut exps = self.exps.clone();
        for (a, &b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(b).ok_or(PolyError::ExponentOverflow)?;
        }
        Ok(Monomial {
            exps,
            deg: self.deg + other.deg,
        })
    }

    pub fn checked_pow(&self, k: u64) -> Result<Monomial, PolyError> {
        let mut exps = self.exps.clone();
        for a in exps.iter_mut() {
            let v = (*a as u64)
                .checked_mul(k)
                .filter(|&v| v <= u16::MAX as u64)
                .ok_or(PolyError::ExponentOverflow)?;
            *a = v as u16;
        }
        let deg = exps.iter().map(|&e| e as u32).sum();
        Ok(Monomial { exps, deg })
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(b, a)| b - a)
            .collect();
        Monomial {
            exps,
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.max(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Reindexes the exponent vector: variable `i` of `self` moves to slot `map[i]`.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                exps[map[i]] = e;
            }
        }
        Monomial { exps, deg: self.deg }
    }
}

/// Admissible monomial orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    /// Block order eliminating the first `k` variables: grevlex on the block, ties by
    /// grevlex on the remaining variables.
    Elimination(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex(&a.exps, a.deg, &b.exps, b.deg),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination(k) => {
                let (a1, a2) = a.exps.split_at(k.min(a.exps.len()));
                let (b1, b2) = b.exps.split_at(k.min(b.exps.len()));
                let da1: u32 = a1.iter().map(|&e| e as u32).sum();
                let db1: u32 = b1.iter().map(|&e| e as u32).sum();
                grevlex(a1, da1, b1, db1).then_with(|| grevlex(a2, a.deg - da1, b2, b.deg - db1))
            }
        }
    }

    /// Comparison with an explicit length check.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
        if a.nvars() != b.nvars() {
            return Err(PolyError::LengthMismatch(a.nvars(), b.nvars()));
        }
        Ok(self.cmp(a, b))
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination(k) => format!("elim({k})"),
        }
    }
}

#[inline]
fn grevlex(a: &[u16], da: u32, b: &[u16], db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            // smaller power of a later variable means a larger monomial
            return y.cmp(x);
        }
    }
    Ordering::Equal
}
