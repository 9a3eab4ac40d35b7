//! Ideals of the ambient polynomial ring and their algebra.
//!
//! An [`Ideal`] is a generator list plus a lazily computed reduced Groebner basis
//! in the ring's own order. Colon ideals, intersections and elimination all go
//! through auxiliary-variable Groebner computations; no module bases are needed.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{AlgebraError, Result};
use crate::groebner::GroebnerBasis;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::ring::Ring;

#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb: OnceLock<GroebnerBasis>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Self {
        let gens = gens
            .into_iter()
            .map(|g| g.reorder(ring))
            .filter(|g| !g.is_zero())
            .collect();
        Self {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn from_gb(gb: GroebnerBasis) -> Self {
        let cell = OnceLock::new();
        let gens = gb.elements().to_vec();
        let ring = gb.ring().clone();
        let _ = cell.set(gb);
        Self { ring, gens, gb: cell }
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::new(ring, vec![ring.one()])
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: &Ring) -> Self {
        Self::new(ring, ring.vars())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced Groebner basis in the ring's order, computed at most once.
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = GroebnerBasis::compute(&self.ring, &self.gens)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    /// Reduced Groebner basis elements, a canonical generating set.
    pub fn reduced_gens(&self) -> Result<Vec<Poly>> {
        Ok(self.groebner()?.elements().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_unit()) {
            return Ok(true);
        }
        Ok(self.groebner()?.is_unit())
    }

    pub fn contains_poly(&self, f: &Poly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        Ok(self.groebner()?.contains(f))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        let gb = self.groebner()?;
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    /// Equality of ideals via reduced Groebner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        if self.ring != other.ring {
            return Ok(self.contains(other)? && other.contains(self)?);
        }
        Ok(self.groebner()?.elements() == other.groebner()?.elements())
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        Ok(self.groebner()?.normal_form(f))
    }

    pub fn with_gen(&self, f: Poly) -> Ideal {
        let mut gens = self.gens.clone();
        gens.push(f);
        Ideal::new(&self.ring, gens)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                push_unique(&mut gens, a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `I^n`; `I^0` is the unit ideal.
    pub fn power(&self, n: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    /// `I^{[p^e]}`, generated by the `p^e`-th powers of the generators.
    pub fn bracket_power(&self, e: u32) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.frobenius_power(e))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `I ∩ J` by eliminating `t` from `tI + (1 - t)J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit()? {
            return Ok(other.clone());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let n = self.ring.nvars();
        let (ext, t) = extend_front(&self.ring);
        let shift: Vec<usize> = (1..=n).collect();
        let one_minus_t = &ext.one() - &t;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for g in &self.gens {
            gens.push(&t * &g.map_to(&ext, &shift));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.map_to(&ext, &shift));
        }
        self.eliminated_front(&ext, 1, &gens)
    }

    /// Maps a Groebner computation in `ext` (eliminating its first `k` variables)
    /// back into this ring.
    fn eliminated_front(&self, ext: &Ring, k: usize, gens: &[Poly]) -> Result<Ideal> {
        let gb = GroebnerBasis::compute(ext, gens)?;
        let n = self.ring.nvars();
        let mut back = vec![0usize; ext.nvars()];
        for i in 0..n {
            back[k + i] = i;
        }
        let kept: Vec<Poly> = gb
            .elements()
            .iter()
            .filter(|g| (0..k).all(|v| !g.uses_var(v)))
            .map(|g| g.map_to(&self.ring, &back))
            .collect();
        if self.ring.order() == MonomialOrder::GrevLex {
            // the block order restricts to grevlex on the kept variables, so the
            // surviving elements already form the reduced basis
            return Ok(Ideal::from_gb(GroebnerBasis::from_reduced(&self.ring, kept)));
        }
        Ok(Ideal::new(&self.ring, kept))
    }

    /// `(I : g) = (I ∩ (g)) / g`.
    pub fn quotient_poly(&self, g: &Poly) -> Result<Ideal> {
        let g = g.reorder(&self.ring);
        if g.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if g.is_unit() {
            return Ok(self.clone());
        }
        if self.contains_poly(&g)? {
            return Ok(Ideal::unit(&self.ring));
        }
        if self.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let inter = self.intersect(&Ideal::new(&self.ring, vec![g.clone()]))?;
        let gens = inter
            .gens
            .iter()
            .map(|h| h.exact_div(&g))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `(I : J)`, intersecting the quotients by the generators of `J`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let q = self.quotient_poly(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
            if let Some(a) = &acc {
                if a.contains(self)? && self.contains(a)? {
                    // already as small as it can get
                    return Ok(a.clone());
                }
            }
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// `(I : g^∞)` by iterated quotients, together with the least `k` such that
    /// `(I : g^k) = (I : g^{k+1})`.
    pub fn saturation(&self, g: &Poly) -> Result<(Ideal, u32)> {
        let mut cur = self.clone();
        let mut k = 0u32;
        loop {
            let next = cur.quotient_poly(g)?;
            if next.equals(&cur)? {
                return Ok((cur, k));
            }
            cur = next;
            k += 1;
        }
    }

    /// `(I : g^∞)` via `I + (1 - s g)` with `s` eliminated.
    pub fn saturation_aux(&self, g: &Poly) -> Result<Ideal> {
        let n = self.ring.nvars();
        let (ext, s) = extend_front(&self.ring);
        let shift: Vec<usize> = (1..=n).collect();
        let mut gens: Vec<Poly> = self.gens.iter().map(|h| h.map_to(&ext, &shift)).collect();
        gens.push(&ext.one() - &(&s * &g.map_to(&ext, &shift)));
        self.eliminated_front(&ext, 1, &gens)
    }

    /// `I ∩ F_p[keep]`, returned as an ideal of the same ring.
    pub fn eliminate(&self, keep: &[usize]) -> Result<Ideal> {
        let n = self.ring.nvars();
        let drop: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        if drop.is_empty() {
            return Ok(self.clone());
        }
        let k = drop.len();
        let names = self.ring.var_names();
        let mut order_vars: Vec<usize> = drop.clone();
        order_vars.extend(keep.iter().copied());
        let ext_names: Vec<String> = order_vars.iter().map(|&i| names[i].clone()).collect();
        let ext = self.ring.with_vars(&ext_names, MonomialOrder::Elimination(k));
        let mut to_ext = vec![0usize; n];
        for (slot, &orig) in order_vars.iter().enumerate() {
            to_ext[orig] = slot;
        }
        let gens: Vec<Poly> = self.gens.iter().map(|g| g.map_to(&ext, &to_ext)).collect();
        let gb = GroebnerBasis::compute(&ext, &gens)?;
        let kept: Vec<Poly> = gb
            .elements()
            .iter()
            .filter(|g| (0..k).all(|v| !g.uses_var(v)))
            .map(|g| g.map_to(&self.ring, &order_vars))
            .collect();
        Ok(Ideal::new(&self.ring, kept))
    }

    /// Krull dimension of `S/I`; `None` for the unit ideal.
    pub fn dimension(&self) -> Result<Option<usize>> {
        Ok(self.groebner()?.quotient_dimension())
    }

    /// `n - dim(S/I)`.
    pub fn height(&self) -> Result<usize> {
        match self.dimension()? {
            Some(d) => Ok(self.ring.nvars() - d),
            None => Err(AlgebraError::UnitIdeal),
        }
    }

    /// Height, treating the unit ideal as having infinite height.
    pub fn height_or_max(&self) -> Result<usize> {
        match self.dimension()? {
            Some(d) => Ok(self.ring.nvars() - d),
            None => Ok(usize::MAX),
        }
    }

    /// Whether every generator is homogeneous for the weights.
    pub fn is_weighted_homogeneous(&self, weights: &[u32]) -> bool {
        self.gens.iter().all(|g| g.is_weighted_homogeneous(weights))
    }

    /// Whether `m^k ⊆ I` (monomial test against the Groebner basis).
    pub fn contains_maximal_power(&self, k: u32) -> Result<bool> {
        let n = self.ring.nvars();
        let gb = self.groebner()?;
        for m in monomials_of_degree(n, k) {
            if !gb.contains(&Poly::monomial(&self.ring, m, 1)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn push_unique(v: &mut Vec<Poly>, p: Poly) {
    if !p.is_zero() && !v.contains(&p) {
        v.push(p);
    }
}

/// Prepends a fresh variable with an order eliminating it.
fn extend_front(ring: &Ring) -> (Ring, Poly) {
    let mut names = vec![ring.fresh_name("t")];
    names.extend(ring.var_names().iter().cloned());
    let ext = ring.with_vars(&names, MonomialOrder::Elimination(1));
    let t = ext.var(0);
    (ext, t)
}

/// All monomials of total degree `k` in `n` variables, in a fixed enumeration order.
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left as u16;
            out.push(Monomial::from_exponents(cur));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if k == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, k, &mut cur, &mut out);
    out
}

/// All monomials of the given weighted degree.
pub fn monomials_of_weighted_degree(weights: &[u32], k: u64) -> Vec<Monomial> {
    let n = weights.len();
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    fn rec(i: usize, left: u64, w: &[u32], cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur));
            }
            return;
        }
        let wi = w[i].max(1) as u64;
        let mut e = left / wi;
        loop {
            cur[i] = e as u16;
            rec(i + 1, left - e * wi, w, cur, out);
            if e == 0 {
                break;
            }
            e -= 1;
        }
        cur[i] = 0;
    }
    rec(0, k, weights, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ring(p: u32, vars: &[&str]) -> Ring {
        Ring::new(p, vars, MonomialOrder::GrevLex).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_poly(r, g).unwrap()).collect())
    }

    fn eq(a: &Ideal, b: &Ideal) -> bool {
        a.equals(b).unwrap()
    }

    #[test]
    fn sum_product_power() {
        let r = ring(5, &["x", "y"]);
        assert!(eq(&ideal(&r, &["x"]).sum(&ideal(&r, &["y"])), &ideal(&r, &["x", "y"])));
        assert!(eq(&ideal(&r, &["x", "y"]).power(2), &ideal(&r, &["x^2", "x*y", "y^2"])));
        assert!(ideal(&r, &["x", "y"]).product(&Ideal::zero(&r)).is_zero());
        assert!(ideal(&r, &["x"]).power(0).is_unit().unwrap());
    }

    #[test]
    fn bracket_powers() {
        let r = ring(3, &["x", "y"]);
        let m3 = ideal(&r, &["x^3", "y^3"]);
        assert!(eq(&ideal(&r, &["x", "y"]).bracket_power(1).unwrap(), &m3));
        assert!(eq(&ideal(&r, &["x", "x + y"]).bracket_power(1).unwrap(), &m3));
        let r2 = ring(2, &["x", "y"]);
        assert!(eq(
            &ideal(&r2, &["x + y"]).bracket_power(1).unwrap(),
            &ideal(&r2, &["x^2 + y^2"])
        ));
    }

    #[test]
    fn quotients() {
        let r = ring(3, &["x", "y"]);
        assert!(eq(&ideal(&r, &["x^2"]).quotient(&ideal(&r, &["x"])).unwrap(), &ideal(&r, &["x"])));
        assert!(eq(&ideal(&r, &["x*y"]).quotient(&ideal(&r, &["x"])).unwrap(), &ideal(&r, &["y"])));
        let q = ideal(&r, &["x^3", "y^3"]).quotient(&ideal(&r, &["x^2*y^2"])).unwrap();
        assert!(eq(&q, &ideal(&r, &["x", "y"])));
        assert!(ideal(&r, &["x"]).quotient(&Ideal::zero(&r)).unwrap().is_unit().unwrap());
    }

    #[test]
    fn saturations() {
        let r = ring(5, &["x", "y"]);
        let (s, _) = ideal(&r, &["x*y"]).saturation(&r.var(1)).unwrap();
        assert!(eq(&s, &ideal(&r, &["x"])));
        let (s, _) = ideal(&r, &["x"]).saturation(&r.var(0)).unwrap();
        assert!(s.is_unit().unwrap());
        let i = ideal(&r, &["x^2*y", "y^3"]);
        let (s, k) = i.saturation(&r.var(1)).unwrap();
        assert!(eq(&s, &ideal(&r, &["x^2", "y"])) || s.is_unit().unwrap());
        assert!(eq(&s, &i.saturation_aux(&r.var(1)).unwrap()));
        // stabilization exponent
        let mut iter = i.clone();
        for _ in 0..k {
            iter = iter.quotient_poly(&r.var(1)).unwrap();
        }
        assert!(eq(&iter, &s));
    }

    #[test]
    fn intersections() {
        let r = ring(7, &["x", "y"]);
        assert!(eq(&ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap(), &ideal(&r, &["x*y"])));
        assert!(eq(
            &ideal(&r, &["x", "y"]).intersect(&Ideal::unit(&r)).unwrap(),
            &ideal(&r, &["x", "y"])
        ));
        assert!(eq(
            &ideal(&r, &["x^2", "y"]).intersect(&ideal(&r, &["x"])).unwrap(),
            &ideal(&r, &["x^2", "x*y"])
        ));
    }

    #[test]
    fn eliminations() {
        let r = ring(7, &["x", "y", "z"]);
        assert!(ideal(&r, &["y - x^2"]).eliminate(&[0]).unwrap().is_zero());
        assert!(ideal(&r, &["x*y - 1"]).eliminate(&[0]).unwrap().is_zero());
        let tc = ideal(&r, &["y - x^2", "z - x^3"]).eliminate(&[1, 2]).unwrap();
        assert!(eq(&tc, &ideal(&r, &["z^2 - y^3"])));
    }

    #[test]
    fn heights() {
        let r = ring(7, &["x", "y", "z"]);
        assert_eq!(ideal(&r, &["x"]).height().unwrap(), 1);
        assert_eq!(ideal(&r, &["x", "y"]).height().unwrap(), 2);
        assert_eq!(ideal(&r, &["x*y - z^2"]).height().unwrap(), 1);
        assert!(matches!(Ideal::unit(&r).height(), Err(AlgebraError::UnitIdeal)));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(2, 0).len(), 1);
        assert_eq!(monomials_of_weighted_degree(&[1, 2], 4).len(), 3);
    }
}
