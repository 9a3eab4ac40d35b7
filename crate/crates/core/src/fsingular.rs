//! F-purity via Fedder's criterion and Frobenius splitting ideals as colon ideals.
//!
//! For a Cohen-Macaulay `R = S/Q` of dimension `d` with canonical ideal `J`, a
//! non-zero-divisor `x1 ∈ J`, parameters `x2..xd` on `R/(x1)` and a socle
//! generator `u` of `R/(J, x2..xd)`,
//!
//! ```text
//! I_e(R) = (x1^(t-1) J, x2^t, .., xd^t)^[q] : (x1 .. xd)^((t-1) q) u^q,   q = p^e
//! ```
//!
//! for all large `t`. The `t` threshold is found by a ladder search.

use crate::divisorial::{symbolic_power, Certificate, DivisorialIdeal, RingPresentation};
use crate::error::{AlgebraError, Result};
use crate::ideal::Ideal;
use crate::poly::Poly;
use crate::random::{self, SeededRng};

/// Largest `t` tried by the stabilization ladder.
pub const MAX_T: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FPurityMethod {
    Fedder,
    SplittingIdeal,
}

#[derive(Clone, Debug)]
pub struct FPurityVerdict {
    pub is_fpure: bool,
    pub method: FPurityMethod,
    /// An element of `(Q^[p] : Q)` outside `m^[p]`.
    pub witness: Option<Poly>,
}

/// Whether some term of `g` has every exponent below `q`, i.e. `g ∉ m^[q]`.
pub fn outside_frobenius_maximal(g: &Poly, q: u64) -> bool {
    g.terms()
        .iter()
        .any(|(m, _)| m.exponents().iter().all(|&e| (e as u64) < q))
}

/// `(Q^[p] : Q)`.
pub fn fedder_ideal(r: &RingPresentation) -> Result<Ideal> {
    let q = r.defining_ideal();
    if q.is_zero() {
        return Ok(Ideal::unit(r.ring()));
    }
    q.bracket_power(1)?.quotient(q)
}

/// For a complete intersection `Q = (g1..gc)`, `(Q^[p] : Q) = Q^[p] + (g1..gc)^(p-1)`.
fn complete_intersection_generator(r: &RingPresentation) -> Option<Poly> {
    let gens: Vec<&Poly> = r.defining_ideal().gens().iter().filter(|g| !g.is_zero()).collect();
    if gens.len() != r.height_q() {
        return None;
    }
    let p = r.characteristic();
    let mut prod = r.ring().one();
    for g in gens {
        prod = &prod * g;
    }
    Some(prod.pow(p - 1))
}

/// Fedder's criterion at the homogeneous maximal ideal: `R` is F-pure iff
/// `(Q^[p] : Q) ⊄ m^[p]`. Complete intersections skip the colon computation.
pub fn fedder_is_fpure(r: &RingPresentation) -> Result<FPurityVerdict> {
    let p = r.characteristic() as u64;
    if let Some(g) = complete_intersection_generator(r) {
        let is_fpure = outside_frobenius_maximal(&g, p);
        return Ok(FPurityVerdict {
            is_fpure,
            method: FPurityMethod::Fedder,
            witness: is_fpure.then_some(g),
        });
    }
    fedder_is_fpure_colon(r)
}

/// Fedder's criterion through the colon ideal, for any presentation.
pub fn fedder_is_fpure_colon(r: &RingPresentation) -> Result<FPurityVerdict> {
    let p = r.characteristic() as u64;
    let colon = fedder_ideal(r)?;
    let mut gens = colon.gens().to_vec();
    gens.extend(colon.reduced_gens()?);
    let witness = gens.into_iter().find(|g| outside_frobenius_maximal(g, p));
    Ok(FPurityVerdict {
        is_fpure: witness.is_some(),
        method: FPurityMethod::Fedder,
        witness,
    })
}

/// Parameters for the colon formula.
#[derive(Clone, Debug)]
pub struct SplittingParams {
    /// The canonical ideal used, containing `Q`; `(x1) + Q` when `R` is Gorenstein.
    pub j: Ideal,
    /// `x1 .. xd`.
    pub x: Vec<Poly>,
    /// `a ∈ J` with `x2 J ⊆ (a) + Q` (only meaningful for `d >= 2`).
    pub a: Poly,
    pub u: Poly,
}

impl SplittingParams {
    pub fn d(&self) -> usize {
        self.x.len()
    }

    /// `(J, x2..xd) + Q`.
    pub fn socle_ideal(&self, r: &RingPresentation) -> Ideal {
        let mut k = r.lift(&self.j);
        for x in self.x.iter().skip(1) {
            k = k.with_gen(x.clone());
        }
        k
    }
}

#[derive(Clone, Debug)]
pub struct SplittingData {
    pub e: u32,
    pub params: Vec<Poly>,
    pub socle_u: Poly,
    pub t_used: u32,
    pub ie: Ideal,
}

/// `q = p^e`, checked against the exponent range.
fn frobenius_q(r: &RingPresentation, e: u32) -> Result<u32> {
    let p = r.characteristic() as u64;
    let q = p
        .checked_pow(e)
        .filter(|&q| q <= u16::MAX as u64)
        .ok_or_else(|| AlgebraError::Unsupported(format!("p^e too large for e = {e}")))?;
    Ok(q as u32)
}

/// Dimension of the socle `((K : m)/K)` of an m-primary `K`.
pub fn socle_dimension(k: &Ideal) -> Result<(usize, Ideal)> {
    let total = k
        .groebner()?
        .colength()
        .ok_or(AlgebraError::NotGorensteinArtinian(0))?;
    let vars = k.ring().vars();
    if total == 0 {
        return Err(AlgebraError::NotGorensteinArtinian(0));
    }
    let socle = k.quotient(&Ideal::new(k.ring(), vars))?;
    let inner = socle.groebner()?.colength().unwrap_or(0);
    Ok((total - inner, socle))
}

/// Socle generator of the artinian quotient `S/K`; errors unless the socle is
/// one-dimensional.
pub fn socle_generator(k: &Ideal) -> Result<Poly> {
    if k.dimension()? != Some(0) {
        return Err(AlgebraError::Precondition(
            "canonical ideal plus parameters is not primary to the maximal ideal".into(),
        ));
    }
    let (dim, socle) = socle_dimension(k)?;
    if dim != 1 {
        return Err(AlgebraError::NotGorensteinArtinian(dim));
    }
    for g in socle.reduced_gens()? {
        if !k.contains_poly(&g)? {
            return Ok(g);
        }
    }
    Err(AlgebraError::NotGorensteinArtinian(0))
}

/// Heights of the partial parameter sequences are checked in `rf` (which is `r`
/// itself or `r/(f)`); the certificate colon `((a) + Q) : J` is taken in `r`.
pub fn choose_parameters(
    r: &RingPresentation,
    j: &DivisorialIdeal,
    f: Option<&Poly>,
    trials: usize,
    seed: u64,
) -> Result<SplittingParams> {
    let rf = match f {
        Some(f) => r.quotient_by(f)?,
        None => r.clone(),
    };
    let d = rf.dim();
    if d == 0 {
        return Err(AlgebraError::Precondition("ring has dimension 0".into()));
    }
    let mut rng = random::seeded(seed);
    let trials = trials.max(1);

    let (jw, x1) = if j.is_unit()? {
        let x1 = pick(&rf, &linear_pool(&rf), trials, &mut rng, |c| {
            Ok(rf.is_nonzerodivisor(c)? && r.is_nonzerodivisor(c)?)
        })?
        .ok_or_else(|| AlgebraError::Precondition("no non-zero-divisor linear form found".into()))?;
        (r.ideal(vec![x1.clone()]), x1)
    } else {
        let jgens = nonzero_mod(r, j.ideal())?;
        let x1 = pick(&rf, &jgens, trials, &mut rng, |c| {
            Ok(rf.is_nonzerodivisor(c)? && r.is_nonzerodivisor(c)?)
        })?
        .ok_or_else(|| AlgebraError::Precondition("no non-zero-divisor found in J".into()))?;
        (j.ideal().clone(), x1)
    };
    let mut x = vec![x1.clone()];
    let mut a = x1.clone();

    if d >= 2 {
        let (found_a, x2) = choose_x2(r, &rf, &jw, &x1, trials, &mut rng)?;
        a = found_a;
        x.push(x2);
    }
    let base_h = rf.height_q();
    while x.len() < d {
        let i = x.len();
        let cur = x.clone();
        let next = pick(&rf, &linear_pool(&rf), trials, &mut rng, |c| {
            let mut seq = cur.clone();
            seq.push(c.clone());
            Ok(rf.ideal(seq).height_or_max()? == base_h + i + 1)
        })?
        .ok_or_else(|| AlgebraError::Precondition(format!("no parameter x{} found", i + 1)))?;
        x.push(next);
    }

    let mut k = rf.lift(&jw);
    for xi in x.iter().skip(1) {
        k = k.with_gen(xi.clone());
    }
    let u = socle_generator(&k)?;
    Ok(SplittingParams { j: jw, x, a, u })
}

/// Nonzero (mod `Q`) reduced generators.
fn nonzero_mod(r: &RingPresentation, i: &Ideal) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for g in i.reduced_gens()? {
        if !r.defining_ideal().contains_poly(&g)? {
            out.push(g);
        }
    }
    Ok(out)
}

fn linear_pool(r: &RingPresentation) -> Vec<Poly> {
    r.ring().vars()
}

/// First candidate (homogeneous random elements of the ideal generated by `gens`,
/// increasing degree) satisfying `ok`.
fn pick(
    r: &RingPresentation,
    gens: &[Poly],
    trials: usize,
    rng: &mut SeededRng,
    mut ok: impl FnMut(&Poly) -> Result<bool>,
) -> Result<Option<Poly>> {
    for c in r.candidates(gens, trials, 2, rng) {
        if ok(&c)? {
            return Ok(Some(c.monic()));
        }
    }
    Ok(None)
}

fn choose_x2(
    r: &RingPresentation,
    rf: &RingPresentation,
    jw: &Ideal,
    x1: &Poly,
    trials: usize,
    rng: &mut SeededRng,
) -> Result<(Poly, Poly)> {
    let base_h = rf.height_q();
    let x1_ok = |c: &Poly| -> Result<bool> {
        Ok(rf.ideal(vec![x1.clone(), c.clone()]).height_or_max()? == base_h + 2
            && rf.height_of(&jw.with_gen(c.clone()))? >= 2)
    };
    // J principal: any parameter works with a = its generator
    if let Some(g) = crate::divisorial::is_principal_mod_q(jw, r)? {
        if r.is_nonzerodivisor(&g)? {
            if let Some(x2) = pick(rf, &linear_pool(rf), trials, rng, x1_ok)? {
                return Ok((g, x2));
            }
        }
    }
    let jgens = nonzero_mod(r, jw)?;
    let mut a_cands = vec![x1.clone()];
    a_cands.extend(r.candidates(&jgens, trials, 1, rng));
    for a in a_cands {
        if !r.is_nonzerodivisor(&a)? {
            continue;
        }
        let colon = r.ideal(vec![a.clone()]).quotient(jw)?;
        let cgens: Vec<Poly> = colon
            .reduced_gens()?
            .into_iter()
            .filter(|g| !jw.contains_poly(g).unwrap_or(true))
            .collect();
        if cgens.is_empty() {
            continue;
        }
        if let Some(x2) = pick(rf, &cgens, trials, rng, x1_ok)? {
            return Ok((a, x2));
        }
    }
    Err(AlgebraError::NoCertificate(
        "no parameter x2 with x2 J ⊆ (a) + Q found".into(),
    ))
}

/// `(x1^(t-1) J, x2^t .. xd^t)^[q] + Q`.
fn ladder_numerator(r: &RingPresentation, sp: &SplittingParams, t: u32, e: u32) -> Result<Ideal> {
    let x1t = sp.x[0].pow(t - 1);
    let mut gens: Vec<Poly> = sp.j.gens().iter().map(|g| &x1t * g).collect();
    for x in sp.x.iter().skip(1) {
        gens.push(x.pow(t));
    }
    Ok(r.lift(&Ideal::new(r.ring(), gens).bracket_power(e)?))
}

/// `A : (g_1 .. g_k)` as iterated colons.
fn colon_product(a: &Ideal, factors: &[Poly]) -> Result<Ideal> {
    let mut cur = a.clone();
    for g in factors {
        if g.is_unit() {
            continue;
        }
        if cur.is_unit()? {
            break;
        }
        cur = cur.quotient_poly(g)?;
    }
    Ok(cur)
}

/// The colon formula at a fixed `t`.
pub fn splitting_ideal_at(r: &RingPresentation, sp: &SplittingParams, e: u32, t: u32) -> Result<Ideal> {
    let q = frobenius_q(r, e)?;
    let num = ladder_numerator(r, sp, t.max(1), e)?;
    let mut factors = Vec::new();
    if t > 1 {
        for x in &sp.x {
            factors.push(x.pow((t - 1) * q));
        }
    }
    factors.push(sp.u.pow(q));
    colon_product(&num, &factors)
}

/// `I_e(R)` with parameters chosen from `seed`.
pub fn splitting_ideal(r: &RingPresentation, j: &DivisorialIdeal, e: u32, seed: u64) -> Result<SplittingData> {
    let sp = choose_parameters(r, j, None, 8, seed)?;
    splitting_ideal_with(r, &sp, e)
}

/// Ladder search for the stable value of the colon formula.
pub fn splitting_ideal_with(r: &RingPresentation, sp: &SplittingParams, e: u32) -> Result<SplittingData> {
    let mut ladder: Vec<String> = Vec::new();
    let mut prev = splitting_ideal_at(r, sp, e, 1)?;
    ladder.push(summarize(&prev)?);
    for t in 2..=MAX_T {
        let cur = splitting_ideal_at(r, sp, e, t)?;
        ladder.push(summarize(&cur)?);
        if cur.equals(&prev)? {
            return Ok(SplittingData {
                e,
                params: sp.x.clone(),
                socle_u: sp.u.clone(),
                t_used: t - 1,
                ie: prev,
            });
        }
        prev = cur;
    }
    Err(AlgebraError::NoStabilization { max_t: MAX_T, ladder })
}

fn summarize(i: &Ideal) -> Result<String> {
    let gens = i.reduced_gens()?;
    Ok(format!("{} generators, colength {:?}", gens.len(), i.groebner()?.colength()))
}

/// `(J, x2^2, x3..xd)`, the ideal whose bracket power appears in the t-free formula.
pub fn reduced_base_ideal(r: &RingPresentation, sp: &SplittingParams) -> Result<Ideal> {
    if sp.d() < 2 {
        return Err(AlgebraError::Precondition("the t-free formula needs dimension at least 2".into()));
    }
    let mut gens: Vec<Poly> = sp.j.gens().to_vec();
    gens.push(sp.x[1].pow(2));
    gens.extend(sp.x.iter().skip(2).cloned());
    Ok(Ideal::new(r.ring(), gens))
}

/// `(J, x2^2, x3..xd)^[q] : (x2 u)^q` in `R`.
pub fn splitting_ideal_reduced(r: &RingPresentation, j: &DivisorialIdeal, e: u32, seed: u64) -> Result<Ideal> {
    let sp = choose_parameters(r, j, None, 8, seed)?;
    splitting_ideal_reduced_with(r, &sp, e)
}

pub fn splitting_ideal_reduced_with(r: &RingPresentation, sp: &SplittingParams, e: u32) -> Result<Ideal> {
    let q = frobenius_q(r, e)?;
    let base = r.lift(&reduced_base_ideal(r, sp)?.bracket_power(e)?);
    colon_product(&base, &[sp.x[1].pow(q), sp.u.pow(q)])
}

/// Verifies `x2 J ⊆ (a) + Q`, `a ∈ J` a non-zero-divisor, and the parameter heights.
pub fn verify_params(r: &RingPresentation, sp: &SplittingParams) -> Result<()> {
    let d = r.dim();
    if sp.x.len() != d {
        return Err(AlgebraError::Precondition(format!("expected {d} parameters, got {}", sp.x.len())));
    }
    if !sp.j.contains_poly(&sp.x[0])? || !r.is_nonzerodivisor(&sp.x[0])? {
        return Err(AlgebraError::Precondition("x1 must be a non-zero-divisor in J".into()));
    }
    if r.ideal(sp.x.clone()).height_or_max()? != r.height_q() + d {
        return Err(AlgebraError::Precondition("x1..xd is not a system of parameters".into()));
    }
    if d >= 2 {
        let dj = DivisorialIdeal::new(r, &sp.j)?;
        let cert = Certificate {
            a: sp.a.clone(),
            x2: sp.x[1].clone(),
        };
        crate::divisorial::verify_certificate(r, &dj, &cert)
            .map_err(|e| AlgebraError::Precondition(format!("certificate rejected: {e}")))?;
    }
    Ok(())
}

/// One claimed equality between two named ideals.
#[derive(Clone, Debug)]
pub struct ChainCheck {
    pub identity: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub e: u32,
    pub params: Vec<Poly>,
    pub socle_u: Poly,
    pub checks: Vec<ChainCheck>,
}

impl ChainReport {
    pub fn all_equal(&self) -> bool {
        self.checks.iter().all(|c| c.equal)
    }

    pub fn failures(&self) -> Vec<&ChainCheck> {
        self.checks.iter().filter(|c| !c.equal).collect()
    }
}

/// Chooses parameters from `seed` and runs [`colon_chain_check_with`].
pub fn colon_chain_check(r: &RingPresentation, j: &DivisorialIdeal, e: u32, seed: u64) -> Result<ChainReport> {
    let sp = choose_parameters(r, j, None, 8, seed)?;
    colon_chain_check_with(r, &sp, e)
}

/// Evaluates every intermediate ideal of the splitting-ideal reduction and compares
/// the claimed equal pairs. Requires `d >= 2` and a valid certificate.
pub fn colon_chain_check_with(r: &RingPresentation, sp: &SplittingParams, e: u32) -> Result<ChainReport> {
    verify_params(r, sp)?;
    let d = sp.d();
    if d < 2 {
        return Err(AlgebraError::Precondition("the colon chain needs dimension at least 2".into()));
    }
    let q = frobenius_q(r, e)?;
    let ring = r.ring();
    let x = &sp.x;
    let jq = sp.j.bracket_power(e)?;
    let dj = DivisorialIdeal::new(r, &sp.j)?.with_certificate(
        r,
        Certificate {
            a: sp.a.clone(),
            x2: x[1].clone(),
        },
    )?;
    let jsym = symbolic_power(&dj, q, r)?;
    let uq = sp.u.pow(q);
    let mut checks = Vec::new();
    let mut push = |identity: String, lhs: &str, rhs: &str, a: &Ideal, b: &Ideal| -> Result<()> {
        checks.push(ChainCheck {
            identity,
            lhs: lhs.into(),
            rhs: rhs.into(),
            equal: a.equals(b)?,
        });
        Ok(())
    };
    let with = |base: &Ideal, extra: Vec<Poly>| r.lift(&base.sum(&Ideal::new(ring, extra)));

    // removing x1: ((x1^(t-1) J)^[q], y2..yd) : x1^((t-1)q) = (J^[q], y2..yd), y_i = x_i^(tq)
    for t in [2u32, 3] {
        let ys: Vec<Poly> = x.iter().skip(1).map(|xi| xi.pow(t * q)).collect();
        let x1j = Ideal::new(ring, sp.j.gens().iter().map(|g| &x[0].pow(t - 1) * g).collect());
        let lhs = with(&x1j.bracket_power(e)?, ys.clone()).quotient_poly(&x[0].pow((t - 1) * q))?;
        let rhs = with(&jq, ys);
        push(format!("remove-x1(t={t})"), "((x1^(t-1)J)^[q],y):x1^((t-1)q)", "(J^[q],y)", &lhs, &rhs)?;
    }

    // bracket versus symbolic powers, y_i = x_i^q for i >= 3
    let ys: Vec<Poly> = x.iter().skip(2).map(|xi| xi.pow(q)).collect();
    for n in [2u32, 3] {
        let mk = |base: &Ideal, top: u32, down: u32| -> Result<Ideal> {
            let mut extra = ys.clone();
            extra.push(x[1].pow(top * q));
            with(base, extra).quotient_poly(&x[1].pow(down * q))
        };
        let l1 = mk(&jq, n, n - 1)?;
        let l2 = mk(&jsym, n, n - 1)?;
        let l3 = mk(&jsym, 2, 1)?;
        let l4 = mk(&jq, 2, 1)?;
        let id = format!("bracket-symbolic(N={n})");
        push(id.clone(), "(J^[q],x2^(Nq),y):x2^((N-1)q)", "(J^(q),x2^(Nq),y):x2^((N-1)q)", &l1, &l2)?;
        push(id.clone(), "(J^(q),x2^(Nq),y):x2^((N-1)q)", "(J^(q),x2^(2q),y):x2^q", &l2, &l3)?;
        push(id, "(J^(q),x2^(2q),y):x2^q", "(J^[q],x2^(2q),y):x2^q", &l3, &l4)?;
    }

    // the reduction chain for I_e
    let i4 = splitting_ideal_reduced_with(r, sp, e)?;
    let i3 = colon_product(&with(&jsym, x.iter().skip(1).map(|xi| xi.pow(q)).collect()), std::slice::from_ref(&uq))?;
    for t in [2u32, 3] {
        let i0 = splitting_ideal_at(r, sp, e, t)?;
        let mut g1 = Vec::new();
        for xi in x.iter().skip(1) {
            g1.push(xi.pow(t));
        }
        let num1 = with(&Ideal::new(ring, sp.j.gens().to_vec()).sum(&Ideal::new(ring, g1)).bracket_power(e)?, vec![]);
        let mut f1: Vec<Poly> = x.iter().skip(1).map(|xi| xi.pow((t - 1) * q)).collect();
        f1.push(uq.clone());
        let i1 = colon_product(&num1, &f1)?;
        let mut extra2 = vec![x[1].pow(2 * q)];
        extra2.extend(x.iter().skip(2).map(|xi| xi.pow(t * q)));
        let mut f2: Vec<Poly> = x.iter().skip(2).map(|xi| xi.pow((t - 1) * q)).collect();
        f2.push(x[1].pow(q));
        f2.push(uq.clone());
        let i2 = colon_product(&with(&jsym, extra2), &f2)?;
        let id = format!("splitting-chain(t={t})");
        push(id.clone(), "I0: (x1^(t-1)J,x2^t..)^[q]:(x1..xd)^((t-1)q)u^q", "I1: (J,x2^t..)^[q]:(x2..xd)^((t-1)q)u^q", &i0, &i1)?;
        push(id.clone(), "I1", "I2: (J^(q),x2^(2q),x3^(tq)..):(x3..xd)^((t-1)q)(x2u)^q", &i1, &i2)?;
        push(id.clone(), "I2", "I3: (J^(q),x2^q..xd^q):u^q", &i2, &i3)?;
        push(id, "I3", "I4: (J,x2^2,x3..xd)^[q]:(x2u)^q", &i3, &i4)?;
    }
    Ok(ChainReport {
        e,
        params: x.clone(),
        socle_u: sp.u.clone(),
        checks,
    })
}

/// Outcome of comparing the t-free colon ideals for `f` and `f + ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortcutOutcome {
    /// `ε ∈ (J, x2^2, x3..xd, f) + Q`.
    pub literal_hypothesis: bool,
    /// `ε ∈ (J, x2^2, x3..xd)^[q] + m (f) + Q`, which forces `(f + ε)` to agree with
    /// `(f)` up to a unit modulo the bracket power.
    pub hypothesis: bool,
    /// Equality of the two colon ideals in `S`.
    pub equal_global: bool,
    /// Equality after localizing at the homogeneous maximal ideal.
    pub equal_local: bool,
}

/// The perturbation comparison used by the stability argument. Parameters are chosen
/// for `R/(f)`; `J` must be a canonical ideal of `R` with `f` regular on `R/J`.
pub fn epsilon_shortcut_check(
    r: &RingPresentation,
    j: &DivisorialIdeal,
    f: &Poly,
    eps: &Poly,
    e: u32,
    seed: u64,
) -> Result<ShortcutOutcome> {
    let sp = choose_parameters(r, j, Some(f), 8, seed)?;
    epsilon_shortcut_with(r, &sp, f, eps, e)
}

pub fn epsilon_shortcut_with(
    r: &RingPresentation,
    sp: &SplittingParams,
    f: &Poly,
    eps: &Poly,
    e: u32,
) -> Result<ShortcutOutcome> {
    ShortcutContext::new(r, sp, f, e)?.check(eps)
}

/// Data shared by every perturbation of a fixed `f`.
#[derive(Clone, Debug)]
pub struct ShortcutContext {
    f: Poly,
    literal_ideal: Ideal,
    hypothesis_ideal: Ideal,
    bracket: Ideal,
    denom: [Poly; 2],
    unperturbed: Ideal,
}

impl ShortcutContext {
    pub fn new(r: &RingPresentation, sp: &SplittingParams, f: &Poly, e: u32) -> Result<Self> {
        if !r.is_nonzerodivisor(f)? {
            return Err(AlgebraError::Precondition(format!("{f} is a zero-divisor mod Q")));
        }
        let q = frobenius_q(r, e)?;
        let ring = r.ring();
        let b = reduced_base_ideal(r, sp)?;
        let literal_ideal = r.lift(&b.with_gen(f.clone()));
        let bracket = r.lift(&b.bracket_power(e)?);
        let mf = Ideal::new(ring, ring.vars().iter().map(|v| v * f).collect());
        let hypothesis_ideal = bracket.sum(&mf);
        let denom = [sp.x[1].pow(q), sp.u.pow(q)];
        let unperturbed = colon_product(&bracket.with_gen(f.clone()), &denom)?;
        Ok(Self {
            f: f.clone(),
            literal_ideal,
            hypothesis_ideal,
            bracket,
            denom,
            unperturbed,
        })
    }

    /// `((J, x2^2, x3..xd)^[q], f) : (x2 u)^q`.
    pub fn unperturbed(&self) -> &Ideal {
        &self.unperturbed
    }

    pub fn check(&self, eps: &Poly) -> Result<ShortcutOutcome> {
        let (literal_hypothesis, hypothesis) = self.hypotheses(eps)?;
        let (equal_global, equal_local) = self.compare(eps)?;
        Ok(ShortcutOutcome {
            literal_hypothesis,
            hypothesis,
            equal_global,
            equal_local,
        })
    }

    /// Membership of `ε` in the literal and the bracket-power hypothesis ideals.
    pub fn hypotheses(&self, eps: &Poly) -> Result<(bool, bool)> {
        Ok((self.literal_ideal.contains_poly(eps)?, self.hypothesis_ideal.contains_poly(eps)?))
    }

    /// Global and local equality of the colon ideals for `f` and `f + ε`.
    pub fn compare(&self, eps: &Poly) -> Result<(bool, bool)> {
        let fe = &self.f + eps;
        let ce = colon_product(&self.bracket.with_gen(fe), &self.denom)?;
        let global = self.unperturbed.equals(&ce)?;
        let local = global || locally_equal(&self.unperturbed, &ce)?;
        Ok((global, local))
    }
}

/// Equality of `A` and `B` in the localization at the homogeneous maximal ideal,
/// where `A` is primary to it (or the unit ideal): with `m^k ⊆ A`, this holds iff
/// `B + m^(k+1) = A`.
pub fn locally_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    let ring = a.ring();
    if a.is_unit()? {
        return Ok(!b.sum(&Ideal::maximal(ring)).equals(&Ideal::maximal(ring))?);
    }
    if a.dimension()? != Some(0) {
        return Err(AlgebraError::Precondition(
            "local comparison needs an ideal primary to the maximal ideal".into(),
        ));
    }
    let mut k = 1;
    while !a.contains_maximal_power(k)? {
        k += 1;
    }
    let mk = Ideal::maximal(ring).power(k + 1);
    b.sum(&mk).equals(a)
}
