//! Deformation and stability experiments over catalog entries.

use std::path::Path;

use fpure_core::divisorial::{canonical_ideal_avoiding, g1_stability_witness, ring_index, RingPresentation};
use fpure_core::fsingular::{choose_parameters, fedder_is_fpure, ShortcutContext};
use fpure_core::ideal::monomials_of_degree;
use fpure_core::random::{self, nonzero_coeff};
use fpure_core::{AlgebraError, Poly};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dsl::{parse_presentation, Assertion, CatalogEntry};
use crate::error::{HarnessError, Result};
use crate::report::Report;

/// Loads every `*.ring` file of a directory, sorted by file name.
pub fn load_catalog(dir: &Path) -> Result<Vec<CatalogEntry>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| HarnessError::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ring"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_entry(p)).collect()
}

pub fn load_entry(path: &Path) -> Result<CatalogEntry> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("entry");
    parse_presentation(&text, stem).map_err(|source| HarnessError::Dsl {
        path: path.display().to_string(),
        source,
    })
}

fn require_f(entry: &CatalogEntry) -> Result<&Poly> {
    entry
        .f
        .as_ref()
        .ok_or_else(|| HarnessError::Usage(format!("entry '{}' has no designated f", entry.name)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeformStatus {
    Consistent,
    /// The quotient is not F-pure, so the deformation statement says nothing.
    HypothesesUnmet,
    /// Some hypothesis is not asserted by the entry; computations ran but no
    /// classification is made.
    UnverifiedHypotheses,
    CounterexampleCandidate,
    DivisibilityViolation,
}

impl DeformStatus {
    /// Whether this outcome contradicts a theorem (CI-fatal).
    pub fn is_failure(self) -> bool {
        matches!(self, DeformStatus::CounterexampleCandidate | DeformStatus::DivisibilityViolation)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformRecord {
    pub name: String,
    pub p: u32,
    pub f: String,
    pub homogeneous: bool,
    pub asserted: Vec<String>,
    pub missing: Vec<String>,
    pub quotient_fpure: bool,
    pub quotient_witness: Option<String>,
    pub ring_fpure: bool,
    pub ring_witness: Option<String>,
    pub index: Option<u32>,
    pub quotient_index: Option<u32>,
    pub index_note: Option<String>,
    /// The quotient's index divides the ring's index (when both are known).
    pub index_divides: Option<bool>,
    pub g1_witness: Option<u32>,
    pub status: DeformStatus,
    pub expected_mismatches: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub index_max: u32,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { seed: 1, index_max: 6 }
    }
}

const DEFORM_HYPOTHESES: [Assertion; 3] = [Assertion::CohenMacaulay, Assertion::G1, Assertion::S2];

fn index_of(r: &RingPresentation, opts: RunOptions) -> (Option<u32>, Option<String>) {
    if r.dim() == 0 {
        return (None, Some("zero-dimensional ring".into()));
    }
    match ring_index(r, opts.index_max, opts.seed) {
        Ok(Some(n)) => (Some(n), None),
        Ok(None) => (None, Some(format!("no principal symbolic power up to {}", opts.index_max))),
        Err(e) => (None, Some(e.to_string())),
    }
}

/// F-purity of `R/(f)` and `R`, indices up and down, and the expected outcomes.
pub fn deform_check(entry: &CatalogEntry, opts: RunOptions) -> Result<DeformRecord> {
    let r = &entry.presentation;
    let f = require_f(entry)?;
    let down = r.quotient_by(f)?;
    let qv = fedder_is_fpure(&down)?;
    let rv = fedder_is_fpure(r)?;
    let (index, note_up) = index_of(r, opts);
    let (quotient_index, note_down) = index_of(&down, opts);
    let index_note = match (note_up, note_down) {
        (None, None) => None,
        (a, b) => Some(
            [a.map(|s| format!("ring: {s}")), b.map(|s| format!("quotient: {s}"))]
                .into_iter()
                .flatten()
                .collect::<Vec<_>>()
                .join("; "),
        ),
    };
    let index_divides = match (index, quotient_index) {
        (Some(up), Some(down)) => Some(up % down == 0),
        _ => None,
    };
    let missing: Vec<String> = DEFORM_HYPOTHESES
        .iter()
        .filter(|a| !entry.has(**a))
        .map(|a| a.to_string())
        .collect();
    let g1_witness = if entry.primes.is_empty() {
        None
    } else {
        match g1_stability_witness(r, f, &entry.primes) {
            Ok(n) => Some(n),
            Err(AlgebraError::BudgetExceeded(m)) => return Err(AlgebraError::BudgetExceeded(m).into()),
            Err(_) => None,
        }
    };

    let status = if !missing.is_empty() {
        DeformStatus::UnverifiedHypotheses
    } else if !qv.is_fpure {
        DeformStatus::HypothesesUnmet
    } else if !rv.is_fpure && index.is_none() {
        // Not shown to be Q-Gorenstein, so the statement does not apply.
        DeformStatus::UnverifiedHypotheses
    } else if !rv.is_fpure {
        DeformStatus::CounterexampleCandidate
    } else if index_divides == Some(false) {
        DeformStatus::DivisibilityViolation
    } else {
        DeformStatus::Consistent
    };

    let mut expected_mismatches = Vec::new();
    let mut cmp = |what: &str, want: Option<String>, got: Option<String>| {
        if let Some(w) = want {
            if Some(&w) != got.as_ref() {
                expected_mismatches.push(format!("{what}: expected {w}, got {}", got.unwrap_or_else(|| "none".into())));
            }
        }
    };
    let ex = &entry.expected;
    cmp("fpure", ex.fpure.map(|b| b.to_string()), Some(rv.is_fpure.to_string()));
    cmp("quotient_fpure", ex.quotient_fpure.map(|b| b.to_string()), Some(qv.is_fpure.to_string()));
    cmp("index", ex.index.map(|n| n.to_string()), index.map(|n| n.to_string()));
    cmp("quotient_index", ex.quotient_index.map(|n| n.to_string()), quotient_index.map(|n| n.to_string()));

    Ok(DeformRecord {
        name: entry.name.clone(),
        p: entry.p(),
        f: f.to_string(),
        homogeneous: entry.homogeneous,
        asserted: entry.assertions.iter().map(|a| a.to_string()).collect(),
        missing,
        quotient_fpure: qv.is_fpure,
        quotient_witness: qv.witness.map(|w| w.to_string()),
        ring_fpure: rv.is_fpure,
        ring_witness: rv.witness.map(|w| w.to_string()),
        index,
        quotient_index,
        index_note,
        index_divides,
        g1_witness,
        status,
        expected_mismatches,
    })
}

/// Outcome for one perturbation `ε`.
#[derive(Clone, Debug, Serialize)]
pub struct EpsilonResult {
    pub epsilon: String,
    pub fpure: Option<bool>,
    /// `ε` lies in the bracket-power hypothesis ideal of the shortcut check.
    pub hypothesis: Option<bool>,
    /// `ε` lies in `(J, x2^2, x3..xd, f) + Q`.
    pub literal_hypothesis: Option<bool>,
    /// Local equality of the colon ideals for `f` and `f + ε`.
    pub shortcut_equal: Option<bool>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelResult {
    pub n: u32,
    pub samples: usize,
    pub fpure_count: usize,
    pub failures: Vec<String>,
    pub shortcut_checked: usize,
    pub shortcut_failures: Vec<String>,
    /// `ε` meeting only the literal hypothesis whose colon ideals differ.
    pub literal_only_unequal: Vec<String>,
    /// Shortcut equality with `R/(f)` F-pure but `R/(f + ε)` not F-pure.
    pub cross_validation_failures: Vec<String>,
    pub errors: usize,
    pub results: Vec<EpsilonResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub name: String,
    pub p: u32,
    pub e: u32,
    pub f: String,
    pub seed: u64,
    pub n_max: u32,
    pub samples_per_n: usize,
    pub monomial_cap: usize,
    pub quotient_fpure: bool,
    pub shortcut: Option<ShortcutSetup>,
    pub shortcut_note: Option<String>,
    pub levels: Vec<LevelResult>,
    /// Least `N` with no sampled failure; a sampled estimate, not a proof.
    pub minimal_stable_n: Option<u32>,
    pub monotonicity_anomalies: Vec<String>,
    pub incomplete: bool,
}

impl StabilityReport {
    pub fn shortcut_failures(&self) -> usize {
        self.levels.iter().map(|l| l.shortcut_failures.len()).sum()
    }

    pub fn shortcut_checked(&self) -> usize {
        self.levels.iter().map(|l| l.shortcut_checked).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ShortcutSetup {
    pub canonical_ideal: Vec<String>,
    pub params: Vec<String>,
    pub socle_u: String,
    pub unperturbed_proper: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub e: u32,
    pub n_max: u32,
    pub samples: usize,
    pub seed: u64,
    pub monomial_cap: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            e: 1,
            n_max: 6,
            samples: 4,
            seed: 1,
            monomial_cap: 200,
        }
    }
}

/// Perturbations of degree `n`: monomials (up to the cap) then random two-term
/// combinations.
fn perturbations(r: &RingPresentation, n: u32, opts: ScanOptions) -> Vec<Poly> {
    let ring = r.ring();
    let monos = monomials_of_degree(ring.nvars(), n);
    let mut out: Vec<Poly> = monos
        .iter()
        .take(opts.monomial_cap)
        .map(|m| Poly::monomial(ring, m.clone(), 1))
        .collect();
    let mut rng = random::seeded(opts.seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(n as u64 + 1)));
    for _ in 0..opts.samples {
        let a = &monos[rng.gen_range(0..monos.len())];
        let b = &monos[rng.gen_range(0..monos.len())];
        let ca = nonzero_coeff(ring, &mut rng);
        let cb = nonzero_coeff(ring, &mut rng);
        let eps = &Poly::monomial(ring, a.clone(), ca) + &Poly::monomial(ring, b.clone(), cb);
        if !eps.is_zero() {
            out.push(eps);
        }
    }
    out
}

fn shortcut_context(entry: &CatalogEntry, f: &Poly, opts: ScanOptions) -> std::result::Result<(ShortcutContext, ShortcutSetup), String> {
    let r = &entry.presentation;
    if r.dim() < 3 {
        return Err(format!("dimension {} < 3: the perturbation colon argument does not apply", r.dim()));
    }
    let j = canonical_ideal_avoiding(r, f, opts.seed, 8).map_err(|e| e.to_string())?;
    let sp = choose_parameters(r, &j, Some(f), 8, opts.seed).map_err(|e| e.to_string())?;
    let ctx = ShortcutContext::new(r, &sp, f, opts.e).map_err(|e| e.to_string())?;
    let proper = !ctx.unperturbed().is_unit().map_err(|e| e.to_string())?;
    let setup = ShortcutSetup {
        canonical_ideal: sp.j.gens().iter().map(|g| g.to_string()).collect(),
        params: sp.x.iter().map(|g| g.to_string()).collect(),
        socle_u: sp.u.to_string(),
        unperturbed_proper: proper,
    };
    Ok((ctx, setup))
}

fn evaluate(r: &RingPresentation, f: &Poly, eps: &Poly, ctx: Option<&ShortcutContext>) -> EpsilonResult {
    let mut res = EpsilonResult {
        epsilon: eps.to_string(),
        fpure: None,
        hypothesis: None,
        literal_hypothesis: None,
        shortcut_equal: None,
        error: None,
    };
    let perturbed = f + eps;
    match r.quotient_by(&perturbed).and_then(|q| fedder_is_fpure(&q)) {
        Ok(v) => res.fpure = Some(v.is_fpure),
        Err(e) => res.error = Some(e.to_string()),
    }
    if let Some(ctx) = ctx {
        match ctx.hypotheses(eps) {
            Ok((lit, hyp)) => {
                res.literal_hypothesis = Some(lit);
                res.hypothesis = Some(hyp);
                if lit || hyp {
                    match ctx.compare(eps) {
                        Ok((_, local)) => res.shortcut_equal = Some(local),
                        Err(e) => {
                            res.error.get_or_insert_with(|| e.to_string());
                        }
                    }
                }
            }
            Err(e) => {
                res.error.get_or_insert_with(|| e.to_string());
            }
        }
    }
    res
}

/// Samples perturbations `f + ε`, `ε ∈ m^N`, and tests F-purity of `R/(f + ε)`.
pub fn stability_scan(entry: &CatalogEntry, opts: ScanOptions) -> Result<StabilityReport> {
    let r = &entry.presentation;
    let f = require_f(entry)?;
    let quotient_fpure = fedder_is_fpure(&r.quotient_by(f)?)?.is_fpure;
    let (ctx, shortcut, shortcut_note) = match shortcut_context(entry, f, opts) {
        Ok((c, s)) => (Some(c), Some(s), None),
        Err(note) => (None, None, Some(note)),
    };

    let mut levels = Vec::new();
    let mut incomplete = false;
    for n in 1..=opts.n_max {
        let eps = perturbations(r, n, opts);
        let results: Vec<EpsilonResult> = eps.par_iter().map(|e| evaluate(r, f, e, ctx.as_ref())).collect();
        let mut level = LevelResult {
            n,
            samples: results.len(),
            fpure_count: 0,
            failures: Vec::new(),
            shortcut_checked: 0,
            shortcut_failures: Vec::new(),
            literal_only_unequal: Vec::new(),
            cross_validation_failures: Vec::new(),
            errors: 0,
            results: Vec::new(),
        };
        for res in &results {
            if res.error.is_some() {
                level.errors += 1;
                incomplete = true;
            }
            match res.fpure {
                Some(true) => level.fpure_count += 1,
                Some(false) => level.failures.push(res.epsilon.clone()),
                None => {}
            }
            if res.hypothesis == Some(true) && res.shortcut_equal.is_some() {
                level.shortcut_checked += 1;
                if res.shortcut_equal == Some(false) {
                    level.shortcut_failures.push(res.epsilon.clone());
                }
                if res.shortcut_equal == Some(true) && quotient_fpure && res.fpure == Some(false) {
                    level.cross_validation_failures.push(res.epsilon.clone());
                }
            } else if res.literal_hypothesis == Some(true) && res.shortcut_equal == Some(false) {
                level.literal_only_unequal.push(res.epsilon.clone());
            }
        }
        level.results = results;
        levels.push(level);
    }

    let clean = |l: &LevelResult| l.failures.is_empty() && l.results.iter().all(|r| r.fpure.is_some());
    let minimal_stable_n = levels.iter().find(|l| clean(l)).map(|l| l.n);
    let mut monotonicity_anomalies = Vec::new();
    for (i, l) in levels.iter().enumerate() {
        if clean(l) {
            for later in &levels[i + 1..] {
                if !later.failures.is_empty() {
                    monotonicity_anomalies.push(format!(
                        "all samples pass at N = {} but {} fail at N = {}",
                        l.n,
                        later.failures.len(),
                        later.n
                    ));
                }
            }
        }
    }
    monotonicity_anomalies.dedup();

    Ok(StabilityReport {
        name: entry.name.clone(),
        p: entry.p(),
        e: opts.e,
        f: f.to_string(),
        seed: opts.seed,
        n_max: opts.n_max,
        samples_per_n: opts.samples,
        monomial_cap: opts.monomial_cap,
        quotient_fpure,
        shortcut,
        shortcut_note,
        levels,
        minimal_stable_n,
        monotonicity_anomalies,
        incomplete,
    })
}

/// `deform_check` over every entry, then `stability_scan` over those with an F-pure
/// quotient when `scan` is given.
pub fn catalog_run(entries: &[CatalogEntry], opts: RunOptions, scan: Option<ScanOptions>) -> Result<Report> {
    let mut report = Report::new("catalog-run", Some(opts.seed));
    for entry in entries {
        report.deform.push(deform_check(entry, opts)?);
    }
    if let Some(sopts) = scan {
        for (entry, rec) in entries.iter().zip(&report.deform) {
            if rec.quotient_fpure && entry.f.is_some() {
                report.stability.push(stability_scan(entry, sopts)?);
            }
        }
    }
    Ok(report)
}
