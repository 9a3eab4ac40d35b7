//! Sparse multivariate polynomials over `F_p`.
//!
//! Terms are kept in a vector sorted strictly decreasing in the ring's monomial
//! order with no zero coefficients. Every constructor and operation restores that
//! invariant.

use std::cmp::Ordering;
use std::fmt;

use crate::error::PolyError;
use crate::monomial::Monomial;
use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Self {
        Self {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), ring.field().from_i64(c))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: u32) -> Self {
        let c = c % ring.characteristic();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u32)>,
    {
        let order = ring.order();
        let field = *ring.field();
        let mut v: Vec<(Monomial, u32)> = terms.into_iter().collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            let c = c % field.characteristic();
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Self {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub(crate) fn from_sorted_unchecked(ring: &Ring, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as [`Poly::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map(|(_, c)| *c).unwrap_or(0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_weighted_homogeneous(&vec![1; self.ring.nvars()])
    }

    pub fn is_weighted_homogeneous(&self, weights: &[u32]) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.weighted_degree(weights));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.weighted_degree(weights)).max()
    }

    /// Bitmask of variables occurring in some term.
    pub fn support_mask(&self) -> u64 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support_mask())
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[i] > 0)
    }

    fn check_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        Ok(self.add_scaled(1, None, other))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let f = self.ring.field();
        Ok(self.add_scaled(f.neg(1 % f.characteristic()), None, other))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let field = *self.ring.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Poly::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add_scaled(*c, Some(m), large);
        }
        debug_assert!(acc.terms.iter().all(|(_, c)| *c < field.characteristic()));
        Ok(acc)
    }

    /// `self + c * m * g`, merging two sorted term lists.
    pub fn add_scaled(&self, c: u32, m: Option<&Monomial>, g: &Poly) -> Poly {
        let field = *self.ring.field();
        let order = self.ring.order();
        if c == 0 || g.is_zero() {
            return self.clone();
        }
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let shifted = g.terms.iter().map(|(gm, gc)| {
            let mm = match m {
                Some(m) => m.mul(gm),
                None => gm.clone(),
            };
            (mm, field.mul(*gc, c))
        });
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (ma, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let s = field.add(*ca, cb);
                        if s != 0 {
                            out.push((ma.clone(), s));
                        }
                    }
                },
            }
        }
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Poly {
        let f = *self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = *self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    /// Multiplication by a monomial preserves term order.
    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), *c)).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self
            .ring
            .field()
            .inv(self.leading_coeff())
            .expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `f^(p^e)` computed term-wise: `sum c^(p^e) m^(p^e)`.
    pub fn frobenius_power(&self, e: u32) -> Result<Poly, PolyError> {
        let field = *self.ring.field();
        let q = (field.characteristic() as u64)
            .checked_pow(e)
            .ok_or(PolyError::ExponentOverflow)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.checked_pow(q)?, field.pow(*c, q)));
        }
        // raising exponents by a common factor keeps a monomial order's ranking
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Exact division by `g`; errors if a nonzero remainder is left.
    pub fn exact_div(&self, g: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(g)?;
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let field = *self.ring.field();
        let lm = g.leading_monomial().unwrap().clone();
        let lc_inv = field.inv(g.leading_coeff())?;
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, u32)> = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !lm.divides(&m) {
                return Err(PolyError::InexactDivision(format!("{g}")));
            }
            let qm = lm.quotient_of(&m);
            let qc = field.mul(c, lc_inv);
            rem = rem.add_scaled(field.neg(qc), Some(&qm), g);
            quot.push((qm, qc));
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms: quot,
        })
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to `map[i]`.
    pub fn map_to(&self, target: &Ring, map: &[usize]) -> Poly {
        let n = target.nvars();
        Poly::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.remap(map, n), *c)),
        )
    }

    /// Same variables, different order (or ring tag).
    pub fn reorder(&self, target: &Ring) -> Poly {
        if &self.ring == target {
            return self.clone();
        }
        debug_assert_eq!(self.ring.nvars(), target.nvars());
        Poly::from_terms(target, self.terms.iter().cloned())
    }

    /// Substitutes `images[i]` for variable `i`; images live in a common ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let target = images[0].ring().clone();
        let mut acc = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, *c as i64);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e as u32);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Evaluates with all variables set to zero.
    pub fn constant_term(&self) -> u32 {
        self.terms
            .last()
            .filter(|(m, _)| m.is_one())
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let p = self.ring.characteristic();
        let names = self.ring.var_names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            // print residues above p/2 as negatives
            let (neg, mag) = if p > 2 && *c > p / 2 { (true, p - c) } else { (false, *c) };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != 1 || m.is_one() {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_poly;

    fn ring(p: u32, vars: &[&str]) -> Ring {
        Ring::new(p, vars, MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn difference_of_squares_mod_5() {
        let r = ring(5, &["x", "y"]);
        let f = parse_poly(&r, "x + y").unwrap();
        let g = parse_poly(&r, "x - y").unwrap();
        let prod = &f * &g;
        assert_eq!(prod, parse_poly(&r, "x^2 + 4*y^2").unwrap());
        assert_eq!(prod.to_string(), "x^2 - y^2");
    }

    #[test]
    fn additive_inverse() {
        let r = ring(7, &["x", "y", "z"]);
        let f = parse_poly(&r, "3*x^2*y - z + 5").unwrap();
        assert!((&f + &f.neg()).is_zero());
    }

    #[test]
    fn freshmans_dream_at_two() {
        let r = ring(2, &["x", "y"]);
        let f = parse_poly(&r, "x + y").unwrap();
        assert_eq!(&f * &f, parse_poly(&r, "x^2 + y^2").unwrap());
    }

    #[test]
    fn frobenius_examples() {
        let r3 = ring(3, &["x", "y"]);
        let f = parse_poly(&r3, "x + y").unwrap();
        assert_eq!(f.frobenius_power(1).unwrap(), parse_poly(&r3, "x^3 + y^3").unwrap());
        let r5 = ring(5, &["x"]);
        let g = parse_poly(&r5, "2*x").unwrap();
        assert_eq!(g.frobenius_power(1).unwrap(), parse_poly(&r5, "2*x^5").unwrap());
        let r2 = ring(2, &["x", "y", "z"]);
        let h = parse_poly(&r2, "x + y + z").unwrap();
        let sq = &h * &h;
        let naive = &sq * &sq;
        assert_eq!(h.frobenius_power(2).unwrap(), naive);
        assert_eq!(naive, parse_poly(&r2, "x^4 + y^4 + z^4").unwrap());
    }

    #[test]
    fn ring_mismatch_is_structural_error() {
        let a = parse_poly(&ring(5, &["x"]), "x").unwrap();
        let b = parse_poly(&ring(7, &["x"]), "x").unwrap();
        assert_eq!(a.checked_add(&b), Err(PolyError::RingMismatch));
        assert_eq!(a.checked_mul(&b), Err(PolyError::RingMismatch));
    }

    #[test]
    fn exact_division() {
        let r = ring(5, &["x", "y"]);
        let f = parse_poly(&r, "x^3 - x*y^2").unwrap();
        let g = parse_poly(&r, "x - y").unwrap();
        assert_eq!(f.exact_div(&g).unwrap(), parse_poly(&r, "x^2 + x*y").unwrap());
        assert!(parse_poly(&r, "x + 1").unwrap().exact_div(&g).is_err());
    }

    #[test]
    fn substitution() {
        let r = ring(3, &["x", "y"]);
        let f = parse_poly(&r, "x^2 + y").unwrap();
        let images = vec![parse_poly(&r, "y + 1").unwrap(), parse_poly(&r, "x").unwrap()];
        assert_eq!(f.substitute(&images), parse_poly(&r, "y^2 + 2*y + 1 + x").unwrap());
    }
}
