//! Cyclic covers `R_D = (⊕_{i>=0} J^(i) t^i) / (u t^n - 1)` of a torsion divisorial
//! ideal `J` with `J^(n) = (u)`.
//!
//! The algebra is presented by a graph ideal `Q + (y_ij - g_ij t^i)` in `S[t, y]`
//! with `t` eliminated, plus `y_nu - 1`. That raw presentation is then pruned: the
//! variables of weight zero are set to `1` (the point of the cover over the origin
//! used for all local questions) and variables that occur linearly in a relation
//! are solved for, leaving a positively graded presentation whose irrelevant ideal
//! is the point of interest.

use crate::divisorial::{
    qgor_index, canonical_ideal, is_principal_mod_q, symbolic_power, DivisorialIdeal, RingPresentation,
};
use crate::error::{AlgebraError, Result};
use crate::fsingular::fedder_is_fpure;
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::ring::Ring;

/// A cover variable and the element of `J^(degree)` it stands for.
#[derive(Clone, Debug)]
pub struct CoverVar {
    pub name: String,
    pub generator: Poly,
    pub degree: u32,
}

#[derive(Clone, Debug)]
pub struct CoverPresentation {
    pub base: RingPresentation,
    pub divisor: DivisorialIdeal,
    pub n: u32,
    pub u: Poly,
    /// `S[y] / (P + (y_nu - 1))`, variables `y..` followed by the base variables.
    pub raw: RingPresentation,
    /// Pruned, positively graded presentation.
    pub cover: RingPresentation,
    pub degree_map: Vec<CoverVar>,
}

impl CoverPresentation {
    /// Indices of the base variables inside the raw ring.
    pub fn base_indices(&self) -> Vec<usize> {
        let k = self.degree_map.len();
        (k..k + self.base.nvars()).collect()
    }
}

/// Drops generators lying in the ideal of the others plus `Q`.
fn minimalize(r: &RingPresentation, gens: Vec<Poly>) -> Result<Vec<Poly>> {
    let mut kept = gens;
    let mut i = 0;
    while i < kept.len() {
        let others: Vec<Poly> = kept
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        if r.ideal(others).contains_poly(&kept[i])? {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(kept)
}

/// Generators of `J^(i)` modulo `Q`.
fn symbolic_generators(r: &RingPresentation, j: &DivisorialIdeal, i: u32) -> Result<Vec<Poly>> {
    let s = symbolic_power(j, i, r)?;
    let mut gens = Vec::new();
    for g in s.reduced_gens()? {
        if !r.defining_ideal().contains_poly(&g)? {
            gens.push(g);
        }
    }
    gens.sort_by_key(|g| (r.degree_of(g), g.len()));
    minimalize(r, gens)
}

/// Builds the cover of index `n`. `J` must carry a certificate and `J^(n)` must be
/// principal; `n = 1` returns the base itself.
pub fn build_cover(r: &RingPresentation, j: &DivisorialIdeal, n: u32) -> Result<CoverPresentation> {
    if n == 0 {
        return Err(AlgebraError::Precondition("cover index must be positive".into()));
    }
    let jn = symbolic_power(j, n, r)?;
    let u = is_principal_mod_q(&jn, r)?.ok_or_else(|| {
        AlgebraError::Precondition(format!("J^({n}) is not principal (no generator found)"))
    })?;
    if n == 1 {
        return Ok(CoverPresentation {
            base: r.clone(),
            divisor: j.clone(),
            n,
            u,
            raw: r.clone(),
            cover: r.clone(),
            degree_map: Vec::new(),
        });
    }
    let base_ring = r.ring();
    let mut degree_map = Vec::new();
    for i in 1..n {
        for (k, g) in symbolic_generators(r, j, i)?.into_iter().enumerate() {
            degree_map.push(CoverVar {
                name: var_name(base_ring, i, k + 1),
                generator: g,
                degree: i,
            });
        }
    }
    degree_map.push(CoverVar {
        name: var_name(base_ring, n, 1),
        generator: u.clone(),
        degree: n,
    });
    let ky = degree_map.len();
    let nx = base_ring.nvars();

    // S[t, y] with t eliminated first
    let mut names = vec![base_ring.fresh_name("t")];
    names.extend(degree_map.iter().map(|v| v.name.clone()));
    names.extend(base_ring.var_names().iter().cloned());
    let ext = base_ring.with_vars(&names, MonomialOrder::Elimination(1));
    let to_ext: Vec<usize> = (0..nx).map(|i| 1 + ky + i).collect();
    let t = ext.var(0);
    let mut gens: Vec<Poly> = r.defining_ideal().gens().iter().map(|g| g.map_to(&ext, &to_ext)).collect();
    for (k, v) in degree_map.iter().enumerate() {
        gens.push(&ext.var(1 + k) - &(&v.generator.map_to(&ext, &to_ext) * &t.pow(v.degree)));
    }
    let gb = crate::groebner::GroebnerBasis::compute(&ext, &gens)?;
    let raw_ring = base_ring.with_vars(&names[1..], MonomialOrder::GrevLex);
    let back: Vec<usize> = std::iter::once(0).chain(0..ky + nx).collect();
    let mut p: Vec<Poly> = gb
        .elements()
        .iter()
        .filter(|g| !g.uses_var(0))
        .map(|g| g.map_to(&raw_ring, &back))
        .collect();
    p.push(&raw_ring.var(ky - 1) - &raw_ring.one());

    // weights: n * deg(x), n * deg(g) - i * deg(u)
    let du = r.degree_of(&u) as i64;
    let mut weights: Vec<i64> = degree_map
        .iter()
        .map(|v| n as i64 * r.degree_of(&v.generator) as i64 - v.degree as i64 * du)
        .collect();
    weights.extend(r.weights().iter().map(|&w| n as i64 * w as i64));
    if weights.iter().any(|&w| w < 0) {
        return Err(AlgebraError::Unsupported("cover grading has negative weights".into()));
    }
    let raw = RingPresentation::with_weights(&raw_ring, p.clone(), vec![1; ky + nx])?;
    let cover = prune(&raw_ring, p, weights)?;
    Ok(CoverPresentation {
        base: r.clone(),
        divisor: j.clone(),
        n,
        u,
        raw,
        cover,
        degree_map,
    })
}

fn var_name(base: &Ring, i: u32, k: usize) -> String {
    let name = format!("y{i}_{k}");
    if base.var_index(&name).is_some() {
        format!("_y{i}_{k}")
    } else {
        name
    }
}

/// Sets weight-zero variables to 1 and solves away variables occurring linearly.
fn prune(ring: &Ring, gens: Vec<Poly>, weights: Vec<i64>) -> Result<RingPresentation> {
    let mut ring = ring.clone();
    let mut gens = gens;
    let mut weights = weights;

    let zero: Vec<usize> = (0..ring.nvars()).filter(|&i| weights[i] == 0).collect();
    if !zero.is_empty() {
        let keep: Vec<usize> = (0..ring.nvars()).filter(|i| !zero.contains(i)).collect();
        let (next, images) = drop_vars(&ring, &keep, |_| None);
        gens = gens.iter().map(|g| g.substitute(&images)).filter(|g| !g.is_zero()).collect();
        weights = keep.iter().map(|&i| weights[i]).collect();
        ring = next;
        if Ideal::new(&ring, gens.clone()).is_unit()? {
            return Err(AlgebraError::Unsupported(
                "the cover has no point over the origin with degree-zero variables equal to 1".into(),
            ));
        }
    }

    loop {
        let ideal = Ideal::new(&ring, gens.clone());
        let gb: Vec<Poly> = ideal.reduced_gens()?;
        let mut order: Vec<usize> = (0..ring.nvars()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(weights[i]), i));
        let mut solved = None;
        'outer: for &v in &order {
            for g in &gb {
                if let Some(h) = linear_in(g, v) {
                    solved = Some((v, h));
                    break 'outer;
                }
            }
        }
        let Some((v, image)) = solved else {
            let g = weights.iter().fold(0i64, |a, &b| gcd(a, b)).max(1);
            let w: Vec<u32> = weights.iter().map(|&w| (w / g) as u32).collect();
            return RingPresentation::with_weights(&ring, gb, w);
        };
        let keep: Vec<usize> = (0..ring.nvars()).filter(|&i| i != v).collect();
        let (next, images) = drop_vars(&ring, &keep, |i| if i == v { Some(image.clone()) } else { None });
        gens = gb.iter().map(|g| g.substitute(&images)).filter(|g| !g.is_zero()).collect();
        weights = keep.iter().map(|&i| weights[i]).collect();
        ring = next;
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Ring on the kept variables and the images of all old variables in it: kept
/// variables map to themselves, dropped ones to `solve(i)` (mapped into the new ring)
/// or to `1`.
fn drop_vars(ring: &Ring, keep: &[usize], solve: impl Fn(usize) -> Option<Poly>) -> (Ring, Vec<Poly>) {
    let names: Vec<String> = keep.iter().map(|&i| ring.var_names()[i].clone()).collect();
    let next = ring.with_vars(&names, MonomialOrder::GrevLex);
    let mut to_next = vec![usize::MAX; ring.nvars()];
    for (slot, &i) in keep.iter().enumerate() {
        to_next[i] = slot;
    }
    let images = (0..ring.nvars())
        .map(|i| {
            if to_next[i] != usize::MAX {
                next.var(to_next[i])
            } else {
                match solve(i) {
                    Some(h) => {
                        let map: Vec<usize> = to_next.iter().map(|&s| if s == usize::MAX { 0 } else { s }).collect();
                        h.map_to(&next, &map)
                    }
                    None => next.one(),
                }
            }
        })
        .collect();
    (next, images)
}

/// If `g = c v + h` with `v` absent from `h`, returns `-h / c`.
fn linear_in(g: &Poly, v: usize) -> Option<Poly> {
    let ring = g.ring();
    let n = ring.nvars();
    let mv = Monomial::var(n, v, 1);
    let mut c = None;
    for (m, coeff) in g.terms() {
        let e = m.exponents()[v];
        if e == 0 {
            continue;
        }
        if *m == mv {
            c = Some(*coeff);
        } else {
            return None;
        }
    }
    let c = c?;
    let field = ring.field();
    let inv = field.inv(c).ok()?;
    let rest = g.add_scaled(field.neg(c), None, &Poly::monomial(ring, mv, 1));
    Some(rest.scale(field.neg(inv)))
}

/// Outcome of comparing the cover's index with an expected value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexCheck {
    Match,
    Mismatch(u32),
    NotFound { n_max: u32 },
}

/// Computes the Q-Gorenstein index of the pruned cover.
pub fn cover_index_check(c: &CoverPresentation, m_expected: u32, n_max: u32, seed: u64) -> Result<IndexCheck> {
    let j = canonical_ideal(&c.cover, seed)?.certified(&c.cover, 8, seed)?;
    Ok(match qgor_index(&j, &c.cover, n_max)? {
        Some(m) if m == m_expected => IndexCheck::Match,
        Some(m) => IndexCheck::Mismatch(m),
        None => IndexCheck::NotFound { n_max },
    })
}

/// Fedder on the base and on the cover agree.
pub fn fpure_transfer_check(c: &CoverPresentation) -> Result<bool> {
    Ok(fedder_is_fpure(&c.base)?.is_fpure == fedder_is_fpure(&c.cover)?.is_fpure)
}

/// Eliminating the cover variables from the raw presentation recovers `Q`.
pub fn base_embedding_check(c: &CoverPresentation) -> Result<bool> {
    if c.n == 1 {
        return Ok(true);
    }
    let keep = c.base_indices();
    let elim = c.raw.defining_ideal().eliminate(&keep)?;
    let base_ring = c.base.ring();
    let k = c.degree_map.len();
    let mut map = vec![0usize; k + base_ring.nvars()];
    for (i, slot) in map.iter_mut().enumerate().skip(k) {
        *slot = i - k;
    }
    let gens: Vec<Poly> = elim.gens().iter().map(|g| g.map_to(base_ring, &map)).collect();
    Ideal::new(base_ring, gens).equals(c.base.defining_ideal())
}

/// The cover of `R/(f)` built from the images of the same generators agrees with the
/// cover of `R` modulo `f` (as raw presentations). Also checks that the images still
/// generate the symbolic powers downstairs.
pub fn base_change_cover_check(c: &CoverPresentation, f: &Poly, seed: u64) -> Result<bool> {
    if c.n == 1 {
        return Ok(true);
    }
    let down = c.base.quotient_by(f)?;
    let jd = DivisorialIdeal::new(&down, c.divisor.ideal())?.certified(&down, 8, seed)?;
    for i in 1..=c.n {
        let gens: Vec<Poly> = c
            .degree_map
            .iter()
            .filter(|v| v.degree == i)
            .map(|v| v.generator.clone())
            .collect();
        if !down.ideal(gens).equals(&down.lift(&symbolic_power(&jd, i, &down)?))? {
            return Ok(false);
        }
    }
    let raw_ring = c.raw.ring();
    let k = c.degree_map.len();
    let to_raw: Vec<usize> = (0..c.base.nvars()).map(|i| k + i).collect();
    let f_raw = f.map_to(raw_ring, &to_raw);
    let up = c.raw.defining_ideal().with_gen(f_raw);
    let cover_down = build_cover_with(&down, &jd, c)?;
    up.equals(cover_down.defining_ideal())
}

/// Raw cover of `down` using the generators recorded in `c`.
fn build_cover_with(down: &RingPresentation, _jd: &DivisorialIdeal, c: &CoverPresentation) -> Result<RingPresentation> {
    let raw_ring = c.raw.ring();
    let base_ring = down.ring();
    let k = c.degree_map.len();
    let nx = base_ring.nvars();
    let mut names = vec![raw_ring.fresh_name("t")];
    names.extend(raw_ring.var_names().iter().cloned());
    let ext = raw_ring.with_vars(&names, MonomialOrder::Elimination(1));
    let to_ext: Vec<usize> = (0..nx).map(|i| 1 + k + i).collect();
    let t = ext.var(0);
    let mut gens: Vec<Poly> = down.defining_ideal().gens().iter().map(|g| g.map_to(&ext, &to_ext)).collect();
    for (idx, v) in c.degree_map.iter().enumerate() {
        gens.push(&ext.var(1 + idx) - &(&v.generator.map_to(&ext, &to_ext) * &t.pow(v.degree)));
    }
    let gb = crate::groebner::GroebnerBasis::compute(&ext, &gens)?;
    let back: Vec<usize> = std::iter::once(0).chain(0..k + nx).collect();
    let mut p: Vec<Poly> = gb
        .elements()
        .iter()
        .filter(|g| !g.uses_var(0))
        .map(|g| g.map_to(raw_ring, &back))
        .collect();
    p.push(&raw_ring.var(k - 1) - &raw_ring.one());
    RingPresentation::new(raw_ring, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn pres(p: u32, vars: &[&str], q: &[&str]) -> RingPresentation {
        let ring = Ring::new(p, vars, MonomialOrder::GrevLex).unwrap();
        let gens = q.iter().map(|s| parse_poly(&ring, s).unwrap()).collect();
        RingPresentation::new(&ring, gens).unwrap()
    }

    #[test]
    fn principal_cover_is_kummer() {
        let r = pres(3, &["x", "y"], &[]);
        let j = DivisorialIdeal::new(&r, &r.ideal(vec![parse_poly(r.ring(), "x").unwrap()]))
            .unwrap()
            .certified(&r, 4, 1)
            .unwrap();
        let c = build_cover(&r, &j, 2).unwrap();
        let raw = c.raw.ring();
        let y1 = raw.var(0);
        assert!(c.raw.defining_ideal().contains_poly(&(&y1.pow(2) - &raw.one())).unwrap());
        assert!(base_embedding_check(&c).unwrap());
        assert!(fpure_transfer_check(&c).unwrap());
    }

    #[test]
    fn identity_cover() {
        let r = pres(3, &["x", "y", "z"], &["x*y - z^2"]);
        let j = canonical_ideal(&r, 1).unwrap().certified(&r, 4, 1).unwrap();
        let c = build_cover(&r, &j, 1).unwrap();
        assert!(c.cover.defining_ideal().equals(r.defining_ideal()).unwrap());
        assert_eq!(cover_index_check(&c, 1, 3, 1).unwrap(), IndexCheck::Match);
    }

    #[test]
    fn veronese_cover_is_the_plane() {
        let r = pres(2, &["a", "b", "c", "d"], &["a*c - b^2", "a*d - b*c", "b*d - c^2"]);
        let j = canonical_ideal(&r, 1).unwrap().certified(&r, 8, 1).unwrap();
        let c = build_cover(&r, &j, 3).unwrap();
        assert!(base_embedding_check(&c).unwrap());
        assert_eq!(c.cover.nvars(), 2, "{:?}", c.cover);
        assert!(c.cover.defining_ideal().is_zero());
        assert_eq!(cover_index_check(&c, 1, 3, 1).unwrap(), IndexCheck::Match);
        assert!(fpure_transfer_check(&c).unwrap());
    }

    #[test]
    fn non_principal_power_is_rejected() {
        let r = pres(2, &["a", "b", "c", "d"], &["a*c - b^2", "a*d - b*c", "b*d - c^2"]);
        let j = canonical_ideal(&r, 1).unwrap().certified(&r, 8, 1).unwrap();
        assert!(matches!(build_cover(&r, &j, 2), Err(AlgebraError::Precondition(_))));
    }
}
