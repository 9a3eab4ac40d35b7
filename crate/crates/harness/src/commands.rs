//! Single-shot computations behind the `gb`, `fpure`, `canonical`, `index`,
//! `splitting-ideal` and `cover` subcommands. Each returns a JSON record.

use fpure_core::cyclic::{base_embedding_check, build_cover, fpure_transfer_check};
use fpure_core::divisorial::{canonical_ideal, qgor_index, symbolic_power, DivisorialIdeal};
use fpure_core::fsingular::{fedder_is_fpure, splitting_ideal};
use fpure_core::{Ideal, Poly};
use serde_json::{json, Value};

use crate::dsl::CatalogEntry;
use crate::error::Result;

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn reduced(i: &Ideal) -> Result<Vec<String>> {
    Ok(strings(&i.reduced_gens()?))
}

pub fn gb(entry: &CatalogEntry) -> Result<Value> {
    let r = &entry.presentation;
    Ok(json!({
        "name": entry.name,
        "p": entry.p(),
        "order": format!("{:?}", r.ring().order()),
        "basis": reduced(r.defining_ideal())?,
        "dim": r.dim(),
    }))
}

pub fn fpure(entry: &CatalogEntry) -> Result<Value> {
    let r = &entry.presentation;
    let v = fedder_is_fpure(r)?;
    let mut out = json!({
        "name": entry.name,
        "p": entry.p(),
        "is_fpure": v.is_fpure,
        "method": "fedder",
        "witness": v.witness.map(|w| w.to_string()),
    });
    if let Some(f) = &entry.f {
        let q = fedder_is_fpure(&r.quotient_by(f)?)?;
        out["quotient"] = json!({
            "f": f.to_string(),
            "is_fpure": q.is_fpure,
            "witness": q.witness.map(|w| w.to_string()),
        });
    }
    Ok(out)
}

pub fn canonical(entry: &CatalogEntry, seed: u64) -> Result<Value> {
    let r = &entry.presentation;
    let j = canonical_ideal(r, seed)?.certified(r, 16, seed)?;
    let cert = j.certificate().map(|c| json!({"a": c.a.to_string(), "x2": c.x2.to_string()}));
    Ok(json!({
        "name": entry.name,
        "seed": seed,
        "canonical_ideal": strings(j.ideal().gens()),
        "unit": j.is_unit()?,
        "certificate": cert,
    }))
}

pub fn index(entry: &CatalogEntry, n_max: u32, seed: u64) -> Result<Value> {
    let r = &entry.presentation;
    let j = canonical_ideal(r, seed)?.certified(r, 16, seed)?;
    let idx = qgor_index(&j, r, n_max)?;
    Ok(json!({
        "name": entry.name,
        "seed": seed,
        "n_max": n_max,
        "index": idx,
        "found": idx.is_some(),
    }))
}

pub fn splitting(entry: &CatalogEntry, e: u32, seed: u64) -> Result<Value> {
    let r = &entry.presentation;
    let j = canonical_ideal(r, seed)?.certified(r, 16, seed)?;
    let data = splitting_ideal(r, &j, e, seed)?;
    let fpure = !data.ie.is_unit()?;
    Ok(json!({
        "name": entry.name,
        "seed": seed,
        "e": e,
        "params": strings(&data.params),
        "socle_u": data.socle_u.to_string(),
        "t_used": data.t_used,
        "splitting_ideal": reduced(&data.ie)?,
        "is_fpure": fpure,
    }))
}

/// Cover of `D = multiple * K` of order `n`.
pub fn cover(entry: &CatalogEntry, n: u32, multiple: u32, seed: u64) -> Result<Value> {
    let r = &entry.presentation;
    let k = canonical_ideal(r, seed)?.certified(r, 16, seed)?;
    let d = if multiple <= 1 {
        k
    } else {
        let jm = symbolic_power(&k, multiple, r)?;
        DivisorialIdeal::new(r, &jm)?.certified(r, 16, seed)?
    };
    let c = build_cover(r, &d, n)?;
    let vars: Vec<Value> = c
        .degree_map
        .iter()
        .map(|v| json!({"name": v.name, "generator": v.generator.to_string(), "degree": v.degree}))
        .collect();
    Ok(json!({
        "name": entry.name,
        "seed": seed,
        "n": n,
        "multiple": multiple,
        "u": c.u.to_string(),
        "cover_vars": vars,
        "cover_ring": c.cover.ring().var_names(),
        "cover_weights": c.cover.weights(),
        "cover_ideal": reduced(c.cover.defining_ideal())?,
        "fpure_transfer": fpure_transfer_check(&c)?,
        "base_embedding": base_embedding_check(&c)?,
    }))
}
