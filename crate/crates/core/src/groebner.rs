//! Buchberger's algorithm over `F_p`.
//!
//! Pairs are managed with the Gebauer-Moeller installation, which subsumes the
//! coprime-leading-term criterion and the chain criterion. Selection follows the
//! normal strategy: the pair with the smallest lcm in the monomial order goes first.

use std::cmp::Ordering;

use crate::error::{AlgebraError, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::ring::Ring;

/// A reduced Groebner basis: monic, auto-reduced, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    elements: Vec<Poly>,
}

struct Reducer {
    lm: Monomial,
    mask: u64,
    poly: Poly,
}

fn find_reducer<'a>(reducers: &'a [Reducer], active: &[bool], m: &Monomial) -> Option<&'a Reducer> {
    let mask = m.support_mask();
    reducers
        .iter()
        .zip(active)
        .find(|(r, &a)| a && r.mask & !mask == 0 && r.lm.divides(m))
        .map(|(r, _)| r)
}

/// Full reduction of `f` by the active monic reducers.
fn reduce_full(f: &Poly, reducers: &[Reducer], active: &[bool]) -> Poly {
    let ring = f.ring().clone();
    let field = *ring.field();
    let mut result: Vec<(Monomial, u32)> = Vec::new();
    let mut rem: Poly = f.clone();
    let mut pos = 0usize;
    loop {
        let Some((m, c)) = rem.terms().get(pos).cloned() else {
            break;
        };
        match find_reducer(reducers, active, &m) {
            Some(r) => {
                let shift = r.lm.quotient_of(&m);
                let tail = Poly::from_sorted_unchecked(&ring, rem.terms()[pos..].to_vec());
                rem = tail.add_scaled(field.neg(c), Some(&shift), &r.poly);
                pos = 0;
            }
            None => {
                result.push((m, c));
                pos += 1;
            }
        }
    }
    Poly::from_sorted_unchecked(&ring, result)
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn spoly(f: &Poly, g: &Poly, lcm: &Monomial) -> Poly {
    // both monic
    let field = *f.ring().field();
    let a = f.leading_monomial().unwrap().quotient_of(lcm);
    let b = g.leading_monomial().unwrap().quotient_of(lcm);
    f.mul_monomial(&a).add_scaled(field.neg(1), Some(&b), g)
}

impl GroebnerBasis {
    /// Reduced Groebner basis of the ideal generated by `gens` in `ring`'s order.
    pub fn compute(ring: &Ring, gens: &[Poly]) -> Result<Self> {
        buchberger(ring, gens)
    }

    /// Wraps elements already known to be a reduced basis (for example the
    /// variable-free part of a reduced elimination basis).
    pub(crate) fn from_reduced(ring: &Ring, mut elements: Vec<Poly>) -> Self {
        let order = ring.order();
        elements.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        Self {
            ring: ring.clone(),
            elements,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Whether the basis generates the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_unit()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().map(|g| g.leading_monomial().unwrap())
    }

    /// The remainder of `f` under multivariate division by the basis.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        let f = f.reorder(&self.ring);
        if self.elements.is_empty() || f.is_zero() {
            return f;
        }
        let reducers: Vec<Reducer> = self
            .elements
            .iter()
            .map(|g| Reducer {
                lm: g.leading_monomial().unwrap().clone(),
                mask: g.leading_monomial().unwrap().support_mask(),
                poly: g.clone(),
            })
            .collect();
        let active = vec![true; reducers.len()];
        reduce_full(&f, &reducers, &active)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Krull dimension of `S / <G>`: the largest set of variables containing the
    /// support of no leading monomial. `None` for the unit ideal.
    pub fn quotient_dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let n = self.ring.nvars();
        let mut supports: Vec<u64> = self.leading_monomials().map(support_bits).collect();
        supports.sort_by_key(|s| s.count_ones());
        let mut minimal: Vec<u64> = Vec::new();
        for s in supports {
            if !minimal.iter().any(|&t| t & !s == 0) {
                minimal.push(s);
            }
        }
        // smallest hitting set of the minimal supports = height
        for k in 0..=n {
            if hitting_set_exists(&minimal, n, k) {
                return Some(n - k);
            }
        }
        Some(0)
    }

    /// `dim_k S/<G>` when it is finite (counts standard monomials); `None` for
    /// positive-dimensional quotients. The unit ideal has colength 0.
    pub fn colength(&self) -> Option<usize> {
        if self.is_unit() {
            return Some(0);
        }
        if self.quotient_dimension() != Some(0) {
            return None;
        }
        let lms: Vec<&Monomial> = self.leading_monomials().collect();
        let n = self.ring.nvars();
        // depth-first walk over the staircase
        let mut count = 0usize;
        let mut stack = vec![Monomial::one(n)];
        while let Some(m) = stack.pop() {
            count += 1;
            // extend only along variables >= the last nonzero one, so each monomial is
            // visited once
            let last = m.exponents().iter().rposition(|&e| e > 0).unwrap_or(0);
            for i in last..n {
                let next = m.mul(&Monomial::var(n, i, 1));
                if !lms.iter().any(|l| l.divides(&next)) {
                    stack.push(next);
                }
            }
        }
        Some(count)
    }
}

fn support_bits(m: &Monomial) -> u64 {
    assert!(m.nvars() <= 64, "dimension computation supports at most 64 variables");
    m.support_mask()
}

fn hitting_set_exists(sets: &[u64], n: usize, k: usize) -> bool {
    fn rec(sets: &[u64], chosen: u64, k: usize) -> bool {
        match sets.iter().find(|&&s| s & chosen == 0) {
            None => true,
            Some(&s) => {
                if k == 0 {
                    return false;
                }
                let mut bits = s;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    if rec(sets, chosen | b, k - 1) {
                        return true;
                    }
                    bits &= bits - 1;
                }
                false
            }
        }
    }
    let _ = n;
    rec(sets, 0, k)
}

/// Buchberger's algorithm with Gebauer-Moeller pair management.
pub fn buchberger(ring: &Ring, gens: &[Poly]) -> Result<GroebnerBasis> {
    let budget = ring.budget();
    let order = ring.order();
    let mut input: Vec<Poly> = gens
        .iter()
        .map(|g| g.reorder(ring))
        .filter(|g| !g.is_zero())
        .collect();
    if input.iter().any(|g| g.is_constant()) {
        return Ok(GroebnerBasis {
            ring: ring.clone(),
            elements: vec![ring.one()],
        });
    }
    input.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut reducers: Vec<Reducer> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let check_degree = |p: &Poly| -> Result<()> {
        if let Some(d) = p.degree() {
            if d > budget.max_degree {
                return Err(AlgebraError::BudgetExceeded(format!(
                    "polynomial degree {d} exceeds {}",
                    budget.max_degree
                )));
            }
        }
        Ok(())
    };

    let mut pending: Vec<Poly> = input;
    pending.reverse();
    let mut reduced_pairs = 0usize;
    loop {
        let h = if let Some(g) = pending.pop() {
            reduce_full(&g, &reducers, &active)
        } else if let Some(idx) = select_pair(&pairs, order) {
            reduced_pairs += 1;
            if reduced_pairs > budget.max_pairs {
                return Err(AlgebraError::BudgetExceeded(format!(
                    "more than {} S-pairs",
                    budget.max_pairs
                )));
            }
            let pair = pairs.swap_remove(idx);
            let s = spoly(&reducers[pair.i].poly, &reducers[pair.j].poly, &pair.lcm);
            reduce_full(&s, &reducers, &active)
        } else {
            break;
        };
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                elements: vec![ring.one()],
            });
        }
        check_degree(&h)?;
        if h.len() > budget.max_terms {
            return Err(AlgebraError::BudgetExceeded(format!(
                "basis element with {} terms exceeds {}",
                h.len(),
                budget.max_terms
            )));
        }
        let h = h.monic();
        install(&mut reducers, &mut active, &mut pairs, h);
        let live = active.iter().filter(|&&a| a).count();
        if live > budget.max_basis {
            return Err(AlgebraError::BudgetExceeded(format!(
                "basis size {live} exceeds {}",
                budget.max_basis
            )));
        }
    }

    // inter-reduce the minimal basis
    let idx: Vec<usize> = (0..reducers.len()).filter(|&i| active[i]).collect();
    let mut elements = Vec::with_capacity(idx.len());
    for &i in &idx {
        active[i] = false;
        let r = reduce_full(&reducers[i].poly, &reducers, &active);
        active[i] = true;
        elements.push(r.monic());
    }
    elements.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(GroebnerBasis {
        ring: ring.clone(),
        elements,
    })
}

fn select_pair(pairs: &[Pair], order: MonomialOrder) -> Option<usize> {
    if pairs.is_empty() {
        return None;
    }
    let mut best = 0;
    for (k, p) in pairs.iter().enumerate().skip(1) {
        let b = &pairs[best];
        let ord = order
            .cmp(&p.lcm, &b.lcm)
            .then_with(|| (p.i, p.j).cmp(&(b.i, b.j)));
        if ord == Ordering::Less {
            best = k;
        }
    }
    Some(best)
}

fn install(reducers: &mut Vec<Reducer>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Poly) {
    let t = h.leading_monomial().unwrap().clone();
    let hi = reducers.len();

    // candidate new pairs
    let mut cand: Vec<(Pair, bool)> = (0..hi)
        .filter(|&i| active[i])
        .map(|i| {
            let lm = &reducers[i].lm;
            (
                Pair {
                    i,
                    j: hi,
                    lcm: lm.lcm(&t),
                },
                lm.is_coprime(&t),
            )
        })
        .collect();

    // chain criterion among the new pairs: drop (i,h) if some (j,h) has lcm properly
    // dividing it; among equal lcms keep one, preferring a coprime witness
    let mut keep = vec![true; cand.len()];
    for a in 0..cand.len() {
        for b in 0..cand.len() {
            if a == b || !keep[b] {
                continue;
            }
            let (la, lb) = (&cand[a].0.lcm, &cand[b].0.lcm);
            if lb.divides(la) && lb != la {
                keep[a] = false;
                break;
            }
        }
    }
    let mut groups: Vec<(Monomial, Vec<usize>)> = Vec::new();
    for (k, (p, _)) in cand.iter().enumerate() {
        if !keep[k] {
            continue;
        }
        match groups.iter_mut().find(|(l, _)| *l == p.lcm) {
            Some((_, v)) => v.push(k),
            None => groups.push((p.lcm.clone(), vec![k])),
        }
    }
    let mut new_pairs: Vec<Pair> = Vec::new();
    for (_, members) in groups {
        // product criterion: if any member has coprime leading monomials the whole
        // class reduces to zero
        if members.iter().any(|&k| cand[k].1) {
            continue;
        }
        new_pairs.push(cand[members[0]].0.clone());
    }
    cand.clear();

    // old pairs made redundant by t
    pairs.retain(|p| {
        if !t.divides(&p.lcm) {
            return true;
        }
        let li = reducers[p.i].lm.lcm(&t);
        let lj = reducers[p.j].lm.lcm(&t);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(new_pairs);

    for i in 0..hi {
        if active[i] && t.divides(&reducers[i].lm) {
            active[i] = false;
        }
    }
    reducers.push(Reducer {
        mask: t.support_mask(),
        lm: t,
        poly: h,
    });
    active.push(true);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ring(p: u32, vars: &[&str], order: MonomialOrder) -> Ring {
        Ring::new(p, vars, order).unwrap()
    }

    fn polys(r: &Ring, src: &[&str]) -> Vec<Poly> {
        src.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    #[test]
    fn principal_ideal() {
        let r = ring(5, &["x", "y"], MonomialOrder::GrevLex);
        let gb = GroebnerBasis::compute(&r, &polys(&r, &["x"])).unwrap();
        assert_eq!(gb.elements(), polys(&r, &["x"]).as_slice());
    }

    #[test]
    fn lex_example_mod_3() {
        let r = ring(3, &["x", "y"], MonomialOrder::Lex);
        let gb = GroebnerBasis::compute(&r, &polys(&r, &["x*y - 1", "y^2 - 1"])).unwrap();
        assert_eq!(gb.elements(), polys(&r, &["y^2 - 1", "x - y"]).as_slice());
        // x - y = y*(x*y - 1) - x*(y^2 - 1)
        let lhs = &(&r.var(1) * &parse_poly(&r, "x*y - 1").unwrap())
            - &(&r.var(0) * &parse_poly(&r, "y^2 - 1").unwrap());
        assert_eq!(lhs, parse_poly(&r, "x - y").unwrap());
    }

    #[test]
    fn lex_stays_small_on_inhomogeneous_input() {
        let r = ring(5, &["x", "y", "z"], MonomialOrder::Lex).with_budget(crate::ring::Budget {
            max_degree: 50,
            ..Default::default()
        });
        let g = polys(&r, &["1 + x^2 + x*z", "x^2*z^2 + y*z^2", "x^2*y^2*z"]);
        let gb = GroebnerBasis::compute(&r, &g).unwrap();
        assert_eq!(gb.elements(), polys(&r, &["z^2", "y^2*z", "x^2 + x*z + 1"]).as_slice());
    }

    #[test]
    fn y4_in_basis_mod_2() {
        let r = ring(2, &["x", "y"], MonomialOrder::GrevLex);
        let gb = GroebnerBasis::compute(&r, &polys(&r, &["x^2 + y^2", "x^2*y^2"])).unwrap();
        let y4 = parse_poly(&r, "y^4").unwrap();
        assert!(gb.elements().contains(&y4));
        assert!(gb.contains(&y4));
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(5, &["x", "y"], MonomialOrder::GrevLex);
        let gx = GroebnerBasis::compute(&r, &polys(&r, &["x"])).unwrap();
        assert!(gx.normal_form(&parse_poly(&r, "x^2").unwrap()).is_zero());
        assert_eq!(gx.normal_form(&r.var(1)), r.var(1));
        let g = GroebnerBasis::compute(&r, &polys(&r, &["x^2 - y", "y^2 - 1"])).unwrap();
        let nf = g.normal_form(&parse_poly(&r, "x^2*y + y").unwrap());
        assert_eq!(nf, parse_poly(&r, "y + 1").unwrap());
    }

    #[test]
    fn membership_examples() {
        let r = ring(3, &["x", "y"], MonomialOrder::GrevLex);
        let m = GroebnerBasis::compute(&r, &polys(&r, &["x", "y"])).unwrap();
        assert!(m.contains(&r.var(0)));
        assert!(!m.contains(&r.one()));
        let frob = GroebnerBasis::compute(&r, &polys(&r, &["x^3", "y^3"])).unwrap();
        assert!(!frob.contains(&parse_poly(&r, "x^2*y^2").unwrap()));
    }

    #[test]
    fn dimension_examples() {
        let r2 = ring(7, &["x", "y"], MonomialOrder::GrevLex);
        let g = GroebnerBasis::compute(&r2, &polys(&r2, &["x", "y"])).unwrap();
        assert_eq!(g.quotient_dimension(), Some(0));
        let r3 = ring(7, &["x", "y", "z"], MonomialOrder::GrevLex);
        let g = GroebnerBasis::compute(&r3, &polys(&r3, &["x*y - z^2"])).unwrap();
        assert_eq!(g.quotient_dimension(), Some(2));
        let g = GroebnerBasis::compute(&r3, &polys(&r3, &["x*y", "x*z"])).unwrap();
        assert_eq!(g.quotient_dimension(), Some(2));
        let g = GroebnerBasis::compute(&r3, &polys(&r3, &["x + 1", "x"])).unwrap();
        assert!(g.is_unit());
        assert_eq!(g.quotient_dimension(), None);
        let zero = GroebnerBasis::compute(&r3, &[]).unwrap();
        assert_eq!(zero.quotient_dimension(), Some(3));
    }

    #[test]
    fn budget_is_enforced() {
        let r = ring(7, &["x", "y"], MonomialOrder::GrevLex)
            .with_budget(crate::ring::Budget { max_degree: 10, ..Default::default() });
        let err = GroebnerBasis::compute(&r, &polys(&r, &["x^11 - y"])).unwrap_err();
        assert!(err.is_budget());
        assert!(err.to_string().starts_with("computation budget exceeded"));
    }
}
