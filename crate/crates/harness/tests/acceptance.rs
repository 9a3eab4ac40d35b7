//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines reach stdout under a plain
//! `cargo test`. Criteria listed in `UNATTAINABLE` are expected to fail; any other
//! failure makes the target exit non-zero.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use fpure_core::cyclic::{base_embedding_check, build_cover, cover_index_check, fpure_transfer_check, IndexCheck};
use fpure_core::divisorial::{
    canonical_ideal, find_certificate, qgor_index, symbolic_power, RingPresentation,
};
use fpure_core::fsingular::{
    colon_chain_check, fedder_is_fpure, fedder_is_fpure_colon, splitting_ideal,
};
use fpure_core::random::{random_form, seeded};
use fpure_core::{Budget, GroebnerBasis, Ideal, MonomialOrder, Poly, Ring};
use fpure_harness::experiments::{catalog_run, load_catalog, stability_scan, RunOptions, ScanOptions};
use fpure_harness::{parse_presentation, CatalogEntry, Format};
use rand::seq::SliceRandom;
use rand::Rng;

/// `J^(2) = J^2` on the cubic Veronese cone, and the literal perturbation
/// hypothesis is not sufficient for equality of the colon ideals.
const UNATTAINABLE: [usize; 2] = [6, 9];

type Criterion = (usize, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn entry(src: &str) -> CatalogEntry {
    parse_presentation(src, "acceptance").expect("valid presentation")
}

fn catalog_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

fn catalog_entry(name: &str) -> CatalogEntry {
    fpure_harness::load_entry(&catalog_dir().join(format!("{name}.ring"))).expect("catalog entry")
}

const VERONESE2: &str = "p = 2; vars = a, b, c, d; Q = [a*c - b^2, a*d - b*c, b*d - c^2]";

// ---------------------------------------------------------------------------
// Independent oracles

type Dense = BTreeMap<Vec<u16>, u32>;

fn dense(f: &Poly) -> Dense {
    f.terms().iter().map(|(m, c)| (m.exponents().to_vec(), *c)).collect()
}

fn dense_mul(a: &Dense, b: &Dense, p: u32) -> Dense {
    let mut out = Dense::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u16> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let c = out.entry(m).or_insert(0);
            *c = ((*c as u64 + *ca as u64 * *cb as u64) % p as u64) as u32;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Fedder for a hypersurface by direct expansion: `f^(p-1)` has a term with every
/// exponent below `p`.
fn hypersurface_fpure_oracle(f: &Poly, p: u32) -> bool {
    let base = dense(f);
    let mut acc: Dense = [(vec![0u16; f.ring().nvars()], 1u32)].into_iter().collect();
    for _ in 0..p - 1 {
        acc = dense_mul(&acc, &base, p);
    }
    acc.keys().any(|m| m.iter().all(|&e| (e as u32) < p))
}

fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u16>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponent_vectors(n - 1, d - first) {
            rest.insert(0, first as u16);
            out.push(rest);
        }
    }
    out
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Membership of a homogeneous `f` in the ideal of homogeneous `gens`, by Gaussian
/// elimination on the degree-`deg f` part: the Macaulay matrix.
fn macaulay_member(gens: &[Poly], f: &Poly, p: u32) -> bool {
    let Some(d) = f.degree() else { return true };
    let n = f.ring().nvars();
    let mut rows: Vec<Dense> = Vec::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        let gd = dense(g);
        for m in exponent_vectors(n, d - dg) {
            let mono: Dense = [(m, 1u32)].into_iter().collect();
            rows.push(dense_mul(&mono, &gd, p));
        }
    }
    // echelon form keyed by pivot monomial
    let mut pivots: BTreeMap<Vec<u16>, Dense> = BTreeMap::new();
    let reduce = |mut v: Dense, pivots: &BTreeMap<Vec<u16>, Dense>| -> Dense {
        loop {
            let Some(k) = v.keys().find(|k| pivots.contains_key(*k)).cloned() else {
                return v;
            };
            let c = v[&k];
            for (m, pc) in &pivots[&k] {
                let e = v.entry(m.clone()).or_insert(0);
                *e = ((*e as u64 + (p - c) as u64 * *pc as u64) % p as u64) as u32;
            }
            v.retain(|_, c| *c != 0);
        }
    };
    for row in rows {
        let r = reduce(row, &pivots);
        if let Some((k, c)) = r.iter().next().map(|(k, c)| (k.clone(), *c)) {
            let inv = inv_mod(c, p);
            let normalized = r.into_iter().map(|(m, x)| (m, (x as u64 * inv as u64 % p as u64) as u32)).collect();
            pivots.insert(k, normalized);
        }
    }
    reduce(dense(f), &pivots).is_empty()
}

// ---------------------------------------------------------------------------
// Criteria

fn c1_groebner_kernel() -> Outcome {
    let mut rng = seeded(2024);
    let mut disagreements = 0;
    let mut permutation_failures = 0;
    let (mut members, mut tests) = (0, 0);
    for k in 0..100 {
        let p = if k % 2 == 0 { 2 } else { 3 };
        let n = rng.gen_range(2..=3usize);
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let ring = Ring::new(p, &names, MonomialOrder::GrevLex).unwrap();
        let w = vec![1; n];
        let ngens = rng.gen_range(1..=3);
        let gens: Vec<Poly> = (0..ngens)
            .map(|_| random_form(&ring, &w, rng.gen_range(1..=3), &mut rng))
            .filter(|g| !g.is_zero())
            .collect();
        let ideal = Ideal::new(&ring, gens.clone());
        for _ in 0..4 {
            let d = rng.gen_range(1..=4u64);
            // half the probes are combinations of the generators
            let f = if rng.gen_bool(0.5) {
                gens.iter()
                    .filter(|g| g.degree().unwrap() as u64 <= d)
                    .map(|g| &random_form(&ring, &w, d - g.degree().unwrap() as u64, &mut rng) * g)
                    .fold(ring.zero(), |a, b| &a + &b)
            } else {
                random_form(&ring, &w, d, &mut rng)
            };
            let gb_says = ideal.contains_poly(&f).unwrap();
            let oracle = macaulay_member(&gens, &f, p);
            tests += 1;
            members += oracle as usize;
            if gb_says != oracle {
                disagreements += 1;
            }
        }
        let reference: Vec<String> = sorted_basis(&ring, &gens);
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        if sorted_basis(&ring, &shuffled) != reference {
            permutation_failures += 1;
        }
    }
    outcome(
        disagreements == 0 && permutation_failures == 0,
        format!(
            "{disagreements} membership disagreements in {tests} probes ({members} members) over 100 ideals, \
             {permutation_failures} permutation-dependent reduced bases"
        ),
    )
}

fn sorted_basis(ring: &Ring, gens: &[Poly]) -> Vec<String> {
    let mut v: Vec<String> = GroebnerBasis::compute(ring, gens)
        .unwrap()
        .elements()
        .iter()
        .map(|g| g.to_string())
        .collect();
    v.sort();
    v
}

fn c2_fedder_catalog() -> Outcome {
    let mut cases: Vec<(String, u32, &str, &[&str], bool)> = Vec::new();
    for p in [2, 3, 5, 7] {
        cases.push((format!("node p={p}"), p, "x*y", &["x", "y"], true));
        cases.push((format!("cusp p={p}"), p, "x^2 - y^3", &["x", "y"], false));
    }
    cases.push(("Fermat cubic p=7".into(), 7, "x^3 + y^3 + z^3", &["x", "y", "z"], true));
    cases.push(("Fermat cubic p=5".into(), 5, "x^3 + y^3 + z^3", &["x", "y", "z"], false));
    let mut bad = Vec::new();
    for (name, p, f, vars, expected) in &cases {
        let e = entry(&format!("p = {p}; vars = {}; Q = [{f}]", vars.join(", ")));
        let r = &e.presentation;
        let g = r.defining_ideal().gens()[0].clone();
        let oracle = hypersurface_fpure_oracle(&g, *p);
        let fast = fedder_is_fpure(r).unwrap().is_fpure;
        let colon = fedder_is_fpure_colon(r).unwrap().is_fpure;
        if !(oracle == *expected && fast == *expected && colon == *expected) {
            bad.push(format!("{name}: oracle {oracle} library {fast}/{colon} expected {expected}"));
        }
    }
    outcome(bad.is_empty(), format!("{} cases, mismatches: {bad:?}", cases.len()))
}

fn c3_splitting_vs_fedder() -> Outcome {
    let mut rings: Vec<(String, RingPresentation)> = Vec::new();
    for e in load_catalog(&catalog_dir()).unwrap() {
        // catalog budgets are tuned for perturbation scans
        let r = e.presentation.with_budget(Budget::default()).unwrap();
        if let Some(f) = &e.f {
            let f = f.reorder(r.ring());
            rings.push((format!("{}/(f)", e.name), r.quotient_by(&f).unwrap()));
        }
        rings.push((e.name.clone(), r));
    }
    let mut rng = seeded(77);
    for k in 0..8 {
        let p = [2, 3, 5][k % 3];
        let ring = Ring::new(p, &["x", "y", "z"], MonomialOrder::GrevLex).unwrap();
        let g = random_form(&ring, &[1, 1, 1], rng.gen_range(2..=3), &mut rng);
        rings.push((format!("random hypersurface {g} (p={p})"), RingPresentation::new(&ring, vec![g]).unwrap()));
    }
    let mut bad = Vec::new();
    let mut fpure = 0;
    for (name, r) in &rings {
        let fedder = fedder_is_fpure(r).unwrap().is_fpure;
        fpure += fedder as usize;
        let split = canonical_ideal(r, 1)
            .and_then(|j| j.certified(r, 16, 1))
            .and_then(|j| splitting_ideal(r, &j, 1, 1))
            .and_then(|d| d.ie.is_unit());
        match split {
            Ok(unit) if unit != fedder => {}
            Ok(_) => bad.push(format!("{name}: Fedder {fedder}, splitting ideal proper {}", !fedder)),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    outcome(
        bad.is_empty() && rings.len() >= 20,
        format!("{} rings ({fpure} F-pure), disagreements: {bad:?}", rings.len()),
    )
}

fn c4_regular_ring_law() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for p in [2, 3] {
        for vars in [&["x", "y"][..], &["x", "y", "z"][..]] {
            let e = entry(&format!("p = {p}; vars = {}", vars.join(", ")));
            let r = &e.presentation;
            let j = canonical_ideal(r, 1).unwrap().certified(r, 8, 1).unwrap();
            for ex in [1, 2] {
                n += 1;
                let ie = splitting_ideal(r, &j, ex, 5).unwrap().ie;
                let frob = Ideal::maximal(r.ring()).bracket_power(ex).unwrap();
                if ie.reduced_gens().unwrap() != frob.reduced_gens().unwrap() {
                    bad.push(format!("p={p} n={} e={ex}", vars.len()));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{n} cases, reduced bases differ: {bad:?}"))
}

fn c5_colon_chains() -> Outcome {
    let rings = [
        ("cubic Veronese cone p=2", entry(VERONESE2)),
        ("node times line p=3", entry("p = 3; vars = x, y, z; Q = [x*y]")),
        ("Veronese cone times line p=2", catalog_entry("veronese-line2")),
        ("A1 times line p=5", catalog_entry("a1-line5")),
    ];
    let mut checks = 0;
    let mut bad = Vec::new();
    for (name, e) in &rings {
        let r = &e.presentation;
        let j = canonical_ideal(r, 1).unwrap().certified(r, 16, 1).unwrap();
        for seed in 1..=5 {
            match colon_chain_check(r, &j, 1, seed) {
                Ok(rep) => {
                    checks += rep.checks.len();
                    for c in rep.failures() {
                        bad.push(format!("{name} seed {seed}: {}", c.identity));
                    }
                }
                Err(err) => bad.push(format!("{name} seed {seed}: {err}")),
            }
        }
    }
    outcome(bad.is_empty(), format!("{checks} equalities on {} rings x 5 seeds, failures: {bad:?}", rings.len()))
}

fn c6_divisorial_veronese() -> Outcome {
    let e = entry(VERONESE2);
    let r = &e.presentation;
    let j = canonical_ideal(r, 1).unwrap().certified(r, 16, 1).unwrap();
    let index = qgor_index(&j, r, 6).unwrap();
    let j2 = symbolic_power(&j, 2, r).unwrap();
    let sq = r.lift(&j.ideal().power(2));
    let strict = j2.contains(&sq).unwrap() && !sq.contains(&j2).unwrap();

    let mut certs = Vec::new();
    for seed in 0..64 {
        let c = find_certificate(&j, r, 16, seed).unwrap();
        if !certs.contains(&c) {
            certs.push(c);
        }
        if certs.len() == 5 {
            break;
        }
    }
    let reference: Vec<Ideal> = (2..=3).map(|n| symbolic_power(&j, n, r).unwrap()).collect();
    let independent = certs.iter().all(|c| {
        let jc = j.clone().with_certificate(r, c.clone()).unwrap();
        (2..=3).all(|n| symbolic_power(&jc, n, r).unwrap().equals(&reference[n as usize - 2]).unwrap())
    });
    outcome(
        index == Some(3) && strict && independent && certs.len() == 5,
        format!(
            "index {index:?}; J^(2) strictly contains J^2: {strict}; \
             J^(2), J^(3) agree across {} certificates: {independent}",
            certs.len()
        ),
    )
}

fn c7_veronese_cover() -> Outcome {
    let e = entry(VERONESE2);
    let r = &e.presentation;
    let j = canonical_ideal(r, 1).unwrap().certified(r, 16, 1).unwrap();
    let c = build_cover(r, &j, 3).unwrap();
    let index = cover_index_check(&c, 1, 6, 1).unwrap();
    let transfer = fpure_transfer_check(&c).unwrap();
    let embedding = base_embedding_check(&c).unwrap();
    outcome(
        index == IndexCheck::Match && transfer && embedding,
        format!(
            "cover in {} variables, index check {index:?}, F-purity transfer {transfer}, base embedding {embedding}",
            c.cover.nvars()
        ),
    )
}

fn c8_deformation_sweep() -> Outcome {
    let entries = load_catalog(&catalog_dir()).unwrap();
    let report = catalog_run(&entries, RunOptions::default(), None).unwrap();
    let satisfying = report.deform.iter().filter(|d| d.missing.is_empty()).count();
    let failures: Vec<String> = report
        .deform
        .iter()
        .filter(|d| d.status.is_failure())
        .map(|d| format!("{}: {:?}", d.name, d.status))
        .collect();
    let mismatches: Vec<&String> = report.deform.iter().flat_map(|d| &d.expected_mismatches).collect();
    outcome(
        satisfying >= 10 && failures.is_empty(),
        format!(
            "{} entries, {satisfying} asserting every hypothesis, fatal events {failures:?}, \
             expected-value mismatches {mismatches:?}",
            report.deform.len()
        ),
    )
}

fn c9_stability() -> Outcome {
    let names = ["a1-line5", "veronese-line2", "veronese-line5", "quotient18-line3"];
    let mut stable = 0;
    let (mut checked, mut corrected_failures) = (0, 0);
    let (mut literal, mut literal_unequal) = (0, 0);
    let mut examples = Vec::new();
    for name in names {
        let rep = stability_scan(&catalog_entry(name), ScanOptions::default()).unwrap();
        if rep.quotient_fpure && rep.minimal_stable_n.is_some_and(|n| n <= 6) {
            stable += 1;
        }
        checked += rep.shortcut_checked();
        corrected_failures += rep.shortcut_failures();
        for l in &rep.levels {
            for res in &l.results {
                if res.literal_hypothesis == Some(true) && res.shortcut_equal.is_some() {
                    literal += 1;
                    if res.shortcut_equal == Some(false) {
                        literal_unequal += 1;
                        if examples.len() < 3 {
                            examples.push(format!("{name}: eps = {}", res.epsilon));
                        }
                    }
                }
            }
        }
    }
    outcome(
        stable >= 3 && literal_unequal == 0 && corrected_failures == 0,
        format!(
            "stable N <= 6 on {stable}/{} entries; literal membership hypothesis: {literal_unequal} of {literal} \
             perturbations give unequal colon ideals (e.g. {examples:?}); bracket-power hypothesis: \
             {corrected_failures} failures in {checked}",
            names.len()
        ),
    )
}

fn c10_determinism() -> Outcome {
    let entries = load_catalog(&catalog_dir()).unwrap();
    let scan = ScanOptions::default();
    let run = || {
        catalog_run(&entries, RunOptions::default(), Some(scan))
            .unwrap()
            .render(Format::Json)
            .unwrap()
    };
    let (a, b) = (run(), run());
    let csv_equal = {
        let r = catalog_run(&entries, RunOptions::default(), None).unwrap();
        r.render(Format::Csv).unwrap() == r.render(Format::Csv).unwrap()
    };
    outcome(a == b && csv_equal, format!("two catalog runs with scans: {} bytes, identical: {}", a.len(), a == b))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "Groebner kernel", c1_groebner_kernel),
        (2, "Fedder catalog", c2_fedder_catalog),
        (3, "splitting ideal vs Fedder", c3_splitting_vs_fedder),
        (4, "regular-ring law", c4_regular_ring_law),
        (5, "colon-chain identities", c5_colon_chains),
        (6, "divisorial layer on the Veronese cone", c6_divisorial_veronese),
        (7, "cyclic cover of the Veronese cone", c7_veronese_cover),
        (8, "deformation sweep", c8_deformation_sweep),
        (9, "stability at desk scale", c9_stability),
        (10, "determinism", c10_determinism),
    ];
    let filter: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut unexpected = Vec::new();
    for (n, name, run) in criteria {
        if filter.is_some_and(|f| f != n) {
            continue;
        }
        let t = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let known = if !o.pass && UNATTAINABLE.contains(&n) { " (known)" } else { "" };
        println!(
            "criterion {n:>2} {verdict}{known} [{name}, {:.1}s] {}",
            t.elapsed().as_secs_f64(),
            o.detail
        );
        if !o.pass && !UNATTAINABLE.contains(&n) {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
