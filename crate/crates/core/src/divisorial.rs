//! Ring presentations `R = S/Q`, canonical ideals by linkage, symbolic powers of
//! height-one ideals, principality, and the Q-Gorenstein index.
//!
//! Every ideal "of R" is carried as an ideal of `S` containing `Q`. Symbolic
//! powers are only computed for ideals carrying a principality certificate
//! `(a, x2)`: `a ∈ J` a non-zero-divisor mod `Q`, `x2 J ⊆ (a) + Q`, and
//! `ht((J, x2)/Q) >= 2`. With such a certificate `J^(n) = ((a^n) + Q) : x2^∞`.

use crate::error::{AlgebraError, Result};
use crate::ideal::Ideal;
use crate::poly::Poly;
use crate::random::{self, SeededRng};
use crate::ring::{Budget, Ring};

/// `R = S/Q` with a positive grading used for all random choices.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    ring: Ring,
    q: Ideal,
    weights: Vec<u32>,
    height_q: usize,
}

impl RingPresentation {
    /// Standard-graded presentation (inhomogeneous `Q` is accepted; random choices
    /// then ignore degrees).
    pub fn new(ring: &Ring, q: Vec<Poly>) -> Result<Self> {
        Self::with_weights(ring, q, vec![1; ring.nvars()])
    }

    pub fn with_weights(ring: &Ring, q: Vec<Poly>, weights: Vec<u32>) -> Result<Self> {
        assert_eq!(weights.len(), ring.nvars());
        let q = Ideal::new(ring, q);
        let height_q = match q.dimension()? {
            Some(d) => ring.nvars() - d,
            None => return Err(AlgebraError::InvalidDivisorial("defining ideal is the unit ideal".into())),
        };
        Ok(Self {
            ring: ring.clone(),
            q,
            weights,
            height_q,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The same presentation over a ring with another computation budget.
    pub fn with_budget(&self, budget: Budget) -> Result<Self> {
        let ring = self.ring.with_budget(budget);
        let q = self.q.gens().iter().map(|g| g.reorder(&ring)).collect();
        Self::with_weights(&ring, q, self.weights.clone())
    }

    pub fn defining_ideal(&self) -> &Ideal {
        &self.q
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn characteristic(&self) -> u32 {
        self.ring.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn height_q(&self) -> usize {
        self.height_q
    }

    /// Krull dimension of `R`.
    pub fn dim(&self) -> usize {
        self.ring.nvars() - self.height_q
    }

    /// Whether `Q` is homogeneous for the presentation's weights.
    pub fn is_graded(&self) -> bool {
        self.q.is_weighted_homogeneous(&self.weights)
    }

    /// `I + Q`.
    pub fn lift(&self, i: &Ideal) -> Ideal {
        i.sum(&self.q)
    }

    pub fn ideal(&self, gens: Vec<Poly>) -> Ideal {
        self.lift(&Ideal::new(&self.ring, gens))
    }

    pub fn maximal_ideal(&self) -> Ideal {
        self.lift(&Ideal::maximal(&self.ring))
    }

    /// Height of `(I + Q)/Q` in `R`; `usize::MAX` for the unit ideal.
    pub fn height_of(&self, i: &Ideal) -> Result<usize> {
        let h = self.lift(i).height_or_max()?;
        Ok(if h == usize::MAX { h } else { h - self.height_q })
    }

    /// `f` is a non-zero-divisor on `R` iff `(Q : f) = Q`.
    pub fn is_nonzerodivisor(&self, f: &Poly) -> Result<bool> {
        if f.is_zero() {
            return Ok(false);
        }
        self.q.quotient_poly(f)?.equals(&self.q)
    }

    /// `f` is regular on `S/I` for `I ⊇ Q`.
    pub fn is_regular_mod(&self, i: &Ideal, f: &Poly) -> Result<bool> {
        let i = self.lift(i);
        i.quotient_poly(f)?.equals(&i)
    }

    /// `R/(f)` presented as `S/(Q + f)`.
    pub fn quotient_by(&self, f: &Poly) -> Result<RingPresentation> {
        let mut gens = self.q.gens().to_vec();
        gens.push(f.clone());
        Self::with_weights(&self.ring, gens, self.weights.clone())
    }

    /// Colon in `R`: `((A + Q) : g)`.
    pub fn colon(&self, a: &Ideal, g: &Poly) -> Result<Ideal> {
        self.lift(a).quotient_poly(g)
    }

    pub(crate) fn degree_of(&self, f: &Poly) -> u64 {
        f.weighted_degree(&self.weights).unwrap_or(0)
    }

    /// Elements of `gens` grouped by weighted degree, ascending.
    fn by_degree(&self, gens: &[Poly]) -> Vec<(u64, Vec<Poly>)> {
        let mut groups: Vec<(u64, Vec<Poly>)> = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let d = self.degree_of(g);
            match groups.iter_mut().find(|(e, _)| *e == d) {
                Some((_, v)) => v.push(g.clone()),
                None => groups.push((d, vec![g.clone()])),
            }
        }
        groups.sort_by_key(|(d, _)| *d);
        groups
    }

    /// A random homogeneous element of the ideal generated by `gens` of weighted
    /// degree `d` (generators of lower degree are multiplied by random forms).
    pub(crate) fn random_element_of_degree(&self, gens: &[Poly], d: u64, rng: &mut SeededRng) -> Poly {
        let mut pool = Vec::new();
        for g in gens {
            let e = self.degree_of(g);
            if e == d {
                pool.push(g.clone());
            } else if e < d && g.is_weighted_homogeneous(&self.weights) {
                let form = random::random_form(&self.ring, &self.weights, d - e, rng);
                if !form.is_zero() {
                    pool.push(&form * g);
                }
            }
        }
        random::combination(&self.ring, &pool, rng)
    }

    /// Random homogeneous elements of the ideal, in increasing degree, `trials` per
    /// degree, over `extra_degrees` degrees beyond the lowest generator degree.
    pub(crate) fn candidates(&self, gens: &[Poly], trials: usize, extra_degrees: u64, rng: &mut SeededRng) -> Vec<Poly> {
        let homogeneous = gens.iter().all(|g| g.is_weighted_homogeneous(&self.weights));
        let mut out = Vec::new();
        if !homogeneous {
            for _ in 0..trials {
                out.push(random::combination(&self.ring, gens, rng));
            }
            return out;
        }
        let groups = self.by_degree(gens);
        let Some(lowest) = groups.first().map(|(d, _)| *d) else {
            return out;
        };
        let highest = groups.last().map(|(d, _)| *d).unwrap_or(lowest);
        let mut degrees: Vec<u64> = groups.iter().map(|(d, _)| *d).collect();
        for k in 1..=extra_degrees {
            degrees.push(highest + k);
        }
        for d in degrees {
            for _ in 0..trials {
                let z = self.random_element_of_degree(gens, d, rng);
                if !z.is_zero() {
                    out.push(z);
                }
            }
        }
        out
    }
}

/// `z_1..z_h ⊆ Q` with `ht(z_1..z_h) = h`, built greedily from random homogeneous
/// combinations of the generators of `Q`.
pub fn regular_sequence_in(q: &Ideal, h: usize, trials: usize, seed: u64) -> Result<Vec<Poly>> {
    let weights = vec![1; q.ring().nvars()];
    regular_sequence_weighted(q, h, &weights, trials, seed)
}

pub fn regular_sequence_weighted(
    q: &Ideal,
    h: usize,
    weights: &[u32],
    trials: usize,
    seed: u64,
) -> Result<Vec<Poly>> {
    let ring = q.ring();
    let mut rng = random::seeded(seed);
    let helper = RingPresentation {
        ring: ring.clone(),
        q: Ideal::zero(ring),
        weights: weights.to_vec(),
        height_q: 0,
    };
    let mut gens: Vec<Poly> = q.gens().to_vec();
    if gens.is_empty() && h > 0 {
        return Err(AlgebraError::NoRegularSequence(h));
    }
    // single generators of the right shape are tried verbatim first
    gens.sort_by_key(|g| (helper.degree_of(g), g.len()));
    let mut seq: Vec<Poly> = Vec::with_capacity(h);
    for i in 0..h {
        let mut found = None;
        let mut tries: Vec<Poly> = gens.iter().map(|g| g.monic()).collect();
        tries.extend(helper.candidates(&gens, trials, 2, &mut rng));
        for z in tries {
            if seq.contains(&z) {
                continue;
            }
            let mut cand = seq.clone();
            cand.push(z.clone());
            if Ideal::new(ring, cand).height_or_max()? == i + 1 {
                found = Some(z.monic());
                break;
            }
        }
        match found {
            Some(z) => seq.push(z),
            None => return Err(AlgebraError::NoRegularSequence(h)),
        }
    }
    Ok(seq)
}

/// Principality certificate for a height-one ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub a: Poly,
    pub x2: Poly,
}

/// A height-one ideal `J/Q` of `R` (or the unit ideal), stored as `J ⊇ Q`.
#[derive(Clone, Debug)]
pub struct DivisorialIdeal {
    ideal: Ideal,
    cert: Option<Certificate>,
}

impl DivisorialIdeal {
    /// Checks `ht(J/Q) = 1` (or `J/Q = R`).
    pub fn new(r: &RingPresentation, j: &Ideal) -> Result<Self> {
        let ideal = r.lift(j);
        if !ideal.is_unit()? {
            let h = r.height_of(&ideal)?;
            if h != 1 {
                return Err(AlgebraError::InvalidDivisorial(format!(
                    "ideal has height {h} in R, expected pure height 1"
                )));
            }
        }
        Ok(Self { ideal, cert: None })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        self.cert.as_ref()
    }

    pub fn is_unit(&self) -> Result<bool> {
        self.ideal.is_unit()
    }

    /// Attaches a certificate after verifying it.
    pub fn with_certificate(mut self, r: &RingPresentation, cert: Certificate) -> Result<Self> {
        verify_certificate(r, &self, &cert)?;
        self.cert = Some(cert);
        Ok(self)
    }

    /// Finds and attaches a certificate.
    pub fn certified(self, r: &RingPresentation, trials: usize, seed: u64) -> Result<Self> {
        let cert = find_certificate(&self, r, trials, seed)?;
        Ok(Self {
            ideal: self.ideal,
            cert: Some(cert),
        })
    }
}

/// Machine check of the certificate conditions.
pub fn verify_certificate(r: &RingPresentation, j: &DivisorialIdeal, cert: &Certificate) -> Result<()> {
    let fail = |m: String| Err(AlgebraError::InvalidDivisorial(m));
    if !j.ideal.contains_poly(&cert.a)? {
        return fail(format!("a = {} does not lie in J", cert.a));
    }
    if !r.is_nonzerodivisor(&cert.a)? {
        return fail(format!("a = {} is a zero-divisor mod Q", cert.a));
    }
    let aq = r.ideal(vec![cert.a.clone()]);
    for g in j.ideal.gens() {
        if !aq.contains_poly(&(&cert.x2 * g))? {
            return fail(format!("x2 * {g} does not lie in (a) + Q"));
        }
    }
    if !j.ideal.is_unit()? {
        let h = r.height_of(&j.ideal.with_gen(cert.x2.clone()))?;
        if h < 2 {
            return fail(format!("height of (J, x2) in R is {h} < 2"));
        }
    }
    Ok(())
}

/// Searches for `(a, x2)`; principal ideals get `(g, 1)`.
pub fn find_certificate(j: &DivisorialIdeal, r: &RingPresentation, trials: usize, seed: u64) -> Result<Certificate> {
    let ring = r.ring();
    if j.ideal.is_unit()? {
        return Ok(Certificate {
            a: ring.one(),
            x2: ring.one(),
        });
    }
    if let Some(g) = is_principal_mod_q(&j.ideal, r)? {
        if r.is_nonzerodivisor(&g)? {
            return Ok(Certificate { a: g, x2: ring.one() });
        }
    }
    let mut rng = random::seeded(seed);
    let jgens: Vec<Poly> = outside_q(r, &j.ideal)?;
    let a_cands = r.candidates(&jgens, trials.max(1), 1, &mut rng);
    for a in a_cands {
        if r.defining_ideal().contains_poly(&a)? || !r.is_nonzerodivisor(&a)? {
            continue;
        }
        let colon = r.ideal(vec![a.clone()]).quotient(&j.ideal)?;
        let cgens = outside_ideal(&colon, &j.ideal)?;
        if cgens.is_empty() {
            continue;
        }
        for x2 in r.candidates(&cgens, trials.max(1), 1, &mut rng) {
            if j.ideal.contains_poly(&x2)? {
                continue;
            }
            let cert = Certificate {
                a: a.clone(),
                x2: x2.monic(),
            };
            if verify_certificate(r, j, &cert).is_ok() {
                return Ok(cert);
            }
        }
    }
    Err(AlgebraError::NoCertificate(format!(
        "no (a, x2) found for J = {} after {trials} trials per degree",
        j.ideal
    )))
}

/// Reduced generators of `I` not lying in `Q`.
fn outside_q(r: &RingPresentation, i: &Ideal) -> Result<Vec<Poly>> {
    outside_ideal(i, r.defining_ideal())
}

fn outside_ideal(i: &Ideal, other: &Ideal) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for g in i.reduced_gens()? {
        if !other.contains_poly(&g)? {
            out.push(g);
        }
    }
    Ok(out)
}

/// `J^(n) = ((a^n) + Q) : x2^∞`.
pub fn symbolic_power(j: &DivisorialIdeal, n: u32, r: &RingPresentation) -> Result<Ideal> {
    let cert = j.cert.as_ref().ok_or(AlgebraError::MissingCertificate)?;
    if n == 0 || j.ideal.is_unit()? {
        return Ok(Ideal::unit(r.ring()));
    }
    if n == 1 {
        return Ok(j.ideal.clone());
    }
    let an = r.ideal(vec![cert.a.pow(n)]);
    if cert.x2.is_unit() {
        return Ok(an);
    }
    Ok(an.saturation(&cert.x2)?.0)
}

/// A generator `g` with `I + Q = (g) + Q`, if one is found among the reduced
/// generators of `I + Q` and random combinations of the lowest-degree ones.
/// `None` means "not found", which is weaker than "not principal".
pub fn is_principal_mod_q(i: &Ideal, r: &RingPresentation) -> Result<Option<Poly>> {
    let full = r.lift(i);
    if full.is_unit()? {
        return Ok(Some(r.ring().one()));
    }
    let mut cands = outside_q(r, &full)?;
    if cands.is_empty() {
        // I ⊆ Q: the zero ideal of R is principal
        return Ok(Some(r.ring().zero()));
    }
    cands.sort_by_key(|g| (r.degree_of(g), g.len()));
    let mut rng = random::seeded(0x5eed_0001);
    let lowest = r.degree_of(&cands[0]);
    let low: Vec<Poly> = cands.iter().filter(|g| r.degree_of(g) == lowest).cloned().collect();
    if low.len() > 1 {
        for _ in 0..8 {
            cands.push(random::combination(r.ring(), &low, &mut rng));
        }
    }
    for g in cands {
        if g.is_zero() {
            continue;
        }
        let principal = r.ideal(vec![g.clone()]);
        if principal.contains(&full)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Canonical ideal by linkage: `J = ((z) : Q) + Q` for a maximal regular sequence
/// `z ⊆ Q`. The unit ideal when `Q` is a complete intersection.
pub fn canonical_ideal(r: &RingPresentation, seed: u64) -> Result<DivisorialIdeal> {
    let h = r.height_q();
    let ring = r.ring();
    if h == 0 {
        return DivisorialIdeal::new(r, &Ideal::unit(ring));
    }
    let z = regular_sequence_weighted(r.defining_ideal(), h, r.weights(), 8, seed)?;
    let zi = Ideal::new(ring, z);
    if zi.contains(r.defining_ideal())? {
        return DivisorialIdeal::new(r, &Ideal::unit(ring));
    }
    let link = zi.quotient(r.defining_ideal())?;
    DivisorialIdeal::new(r, &link)
}

/// Retries linkage until `f` is regular on `R/J` as well as on `R`.
pub fn canonical_ideal_avoiding(r: &RingPresentation, f: &Poly, seed: u64, retries: usize) -> Result<DivisorialIdeal> {
    if !r.is_nonzerodivisor(f)? {
        return Err(AlgebraError::Precondition(format!("{f} is a zero-divisor mod Q")));
    }
    for k in 0..retries.max(1) {
        let j = canonical_ideal(r, seed.wrapping_add(k as u64 * 7919))?;
        if j.is_unit()? {
            // R Gorenstein: a principal canonical ideal avoiding f is chosen later
            return Ok(j);
        }
        if r.is_regular_mod(j.ideal(), f)? {
            return Ok(j);
        }
    }
    Err(AlgebraError::Precondition(format!(
        "no canonical ideal with {f} regular on R/J after {retries} linkages"
    )))
}

/// Least `n <= n_max` with `J^(n)` principal mod `Q`.
pub fn qgor_index(j: &DivisorialIdeal, r: &RingPresentation, n_max: u32) -> Result<Option<u32>> {
    if j.is_unit()? {
        return Ok(Some(1));
    }
    for n in 1..=n_max {
        let s = symbolic_power(j, n, r)?;
        if is_principal_mod_q(&s, r)?.is_some() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Q-Gorenstein index of a presentation via its own canonical ideal.
pub fn ring_index(r: &RingPresentation, n_max: u32, seed: u64) -> Result<Option<u32>> {
    let j = canonical_ideal(r, seed)?.certified(r, 8, seed)?;
    qgor_index(&j, r, n_max)
}

/// Outcome of comparing `J^(n) + (f)` with the symbolic power downstairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseChange {
    Equal,
    NotEqual,
    HypothesisFailed(String),
    CertificateFailed(String),
}

/// `J^(n) + (f)` versus `((J + (f))/(f))^(n)` in `R/(f)` with a fresh certificate.
pub fn base_change_symbolic_check(
    j: &DivisorialIdeal,
    f: &Poly,
    n: u32,
    r: &RingPresentation,
    seed: u64,
) -> Result<BaseChange> {
    if !r.is_nonzerodivisor(f)? {
        return Ok(BaseChange::HypothesisFailed(format!("{f} is a zero-divisor mod Q")));
    }
    if !r.is_regular_mod(j.ideal(), f)? {
        return Ok(BaseChange::HypothesisFailed(format!("{f} is a zero-divisor mod J")));
    }
    let up = symbolic_power(j, n, r)?.with_gen(f.clone());
    let down_ring = r.quotient_by(f)?;
    let jd = match DivisorialIdeal::new(&down_ring, j.ideal()) {
        Ok(jd) => jd,
        Err(e) => return Ok(BaseChange::CertificateFailed(e.to_string())),
    };
    let jd = match jd.certified(&down_ring, 8, seed) {
        Ok(jd) => jd,
        Err(e) => return Ok(BaseChange::CertificateFailed(e.to_string())),
    };
    let down = down_ring.lift(&symbolic_power(&jd, n, &down_ring)?);
    Ok(if up.equals(&down)? {
        BaseChange::Equal
    } else {
        BaseChange::NotEqual
    })
}

/// Least `N` with `f ∉ m^N + p_i` for every listed prime; `1` for an empty list.
pub fn g1_stability_witness(r: &RingPresentation, f: &Poly, primes: &[Ideal]) -> Result<u32> {
    const MAX_N: u32 = 64;
    let ring = r.ring();
    let m = Ideal::maximal(ring);
    let mut best = 1u32;
    for p in primes {
        let p = r.lift(p);
        if p.contains_poly(f)? {
            return Err(AlgebraError::Precondition(format!("R/(f) not G1 at {p}")));
        }
        let mut found = None;
        let mut mn = m.clone();
        for n in 1..=MAX_N {
            if !mn.sum(&p).contains_poly(f)? {
                found = Some(n);
                break;
            }
            mn = mn.product(&m);
        }
        match found {
            Some(n) => best = best.max(n),
            None => {
                return Err(AlgebraError::BudgetExceeded(format!(
                    "no N <= {MAX_N} separates f from m^N + p"
                )))
            }
        }
    }
    Ok(best)
}
