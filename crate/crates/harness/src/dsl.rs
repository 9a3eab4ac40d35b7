//! The catalog text format.
//!
//! ```text
//! # V3 times a line
//! name = veronese-line
//! p = 2
//! vars = a, b, c, d, w
//! Q = [a*c - b^2, a*d - b*c, b*d - c^2]
//! f = w
//! assertions = [CM, equidimensional, generically-Gorenstein, G1, S2, J_pe_CM(1)]
//! expected = [fpure = true, quotient_fpure = true, index = 3, quotient_index = 3]
//! prime = a, b, c, d
//! notes = Veronese cone of degree 3 times a line
//! ```
//!
//! Statements are separated by newlines or `;`; `#` starts a comment. Keys may
//! appear in any order; `prime` and `notes` may repeat.

use fpure_core::divisorial::RingPresentation;
use fpure_core::{parse_poly, Ideal, MonomialOrder, Poly, PolyError, Ring};

use crate::error::DslError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Assertion {
    CohenMacaulay,
    Equidimensional,
    GenericallyGorenstein,
    G1,
    S2,
    /// `J^(p^e)` is Cohen-Macaulay for this `e`.
    SymbolicPowerCM(u32),
}

impl Assertion {
    pub fn parse(s: &str) -> Option<Assertion> {
        Some(match s {
            "CM" => Assertion::CohenMacaulay,
            "equidimensional" => Assertion::Equidimensional,
            "generically-Gorenstein" => Assertion::GenericallyGorenstein,
            "G1" => Assertion::G1,
            "S2" => Assertion::S2,
            _ => {
                let e = s.strip_prefix("J_pe_CM(")?.strip_suffix(')')?;
                Assertion::SymbolicPowerCM(e.trim().parse().ok()?)
            }
        })
    }
}

impl std::fmt::Display for Assertion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Assertion::CohenMacaulay => write!(f, "CM"),
            Assertion::Equidimensional => write!(f, "equidimensional"),
            Assertion::GenericallyGorenstein => write!(f, "generically-Gorenstein"),
            Assertion::G1 => write!(f, "G1"),
            Assertion::S2 => write!(f, "S2"),
            Assertion::SymbolicPowerCM(e) => write!(f, "J_pe_CM({e})"),
        }
    }
}

/// Known outcomes recorded with an entry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub fpure: Option<bool>,
    pub quotient_fpure: Option<bool>,
    pub index: Option<u32>,
    pub quotient_index: Option<u32>,
    /// Upper bound for the sampled stable `N`.
    pub stable_n: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub source: String,
    pub presentation: RingPresentation,
    pub f: Option<Poly>,
    pub assertions: Vec<Assertion>,
    pub notes: Vec<String>,
    pub expected: Expected,
    /// Height-two primes of the non-Gorenstein locus (metadata, not computed).
    pub primes: Vec<Ideal>,
    /// `Q` and `f` homogeneous for the weights.
    pub homogeneous: bool,
}

impl CatalogEntry {
    pub fn has(&self, a: Assertion) -> bool {
        self.assertions.contains(&a)
    }

    pub fn p(&self) -> u32 {
        self.presentation.characteristic()
    }
}

/// One `key = value` statement with the location of its value.
struct Stmt {
    key: String,
    value: String,
    line: usize,
    key_col: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> DslError {
    DslError {
        line,
        col,
        msg: msg.into(),
        budget: false,
    }
}

fn algebra_err(line: usize, col: usize, prefix: &str, e: fpure_core::AlgebraError) -> DslError {
    DslError {
        budget: e.is_budget(),
        ..err(line, col, format!("{prefix}{e}"))
    }
}

fn statements(text: &str) -> Result<Vec<Stmt>, DslError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let chars: Vec<char> = raw.chars().collect();
        let end = chars.iter().position(|&c| c == '#').unwrap_or(chars.len());
        let mut start = 0;
        let mut depth = 0i32;
        for i in 0..=end {
            let at_end = i == end;
            if !at_end {
                match chars[i] {
                    '[' => depth += 1,
                    ']' => depth -= 1,
                    _ => {}
                }
            }
            if at_end || (chars[i] == ';' && depth == 0) {
                let piece: String = chars[start..i].iter().collect();
                if !piece.trim().is_empty() {
                    out.push(statement(&piece, line, start + 1)?);
                }
                start = i + 1;
            }
        }
    }
    Ok(out)
}

fn statement(piece: &str, line: usize, col0: usize) -> Result<Stmt, DslError> {
    let Some(eq) = piece.find('=') else {
        let lead = piece.len() - piece.trim_start().len();
        return Err(err(line, col0 + lead, "expected 'key = value'"));
    };
    let key = piece[..eq].trim().to_string();
    if key.is_empty() {
        return Err(err(line, col0, "missing key before '='"));
    }
    let after = &piece[eq + 1..];
    let lead = after.len() - after.trim_start().len();
    let value = after.trim().to_string();
    let col = col0 + piece[..eq + 1 + lead].chars().count();
    let key_col = col0 + piece.len() - piece.trim_start().len();
    Ok(Stmt {
        key,
        value,
        line,
        key_col,
        col,
    })
}

/// Items of `[a, b, c]` (or a bare `a, b, c`) with their columns.
fn list_items(s: &Stmt, bracketed: bool) -> Result<Vec<(String, usize)>, DslError> {
    let v = s.value.as_str();
    let (inner, offset) = if let Some(rest) = v.strip_prefix('[') {
        match rest.strip_suffix(']') {
            Some(inner) => (inner, 1),
            None => return Err(err(s.line, s.col + v.chars().count(), "expected ']'")),
        }
    } else if bracketed {
        return Err(err(s.line, s.col, format!("expected '[' to start the {} list", s.key)));
    } else {
        (v, 0)
    };
    let mut items = Vec::new();
    let mut col = s.col + offset;
    for part in inner.split(',') {
        let lead = part.chars().count() - part.trim_start().chars().count();
        if !part.trim().is_empty() {
            items.push((part.trim().to_string(), col + lead));
        }
        col += part.chars().count() + 1;
    }
    Ok(items)
}

fn poly_at(ring: &Ring, src: &str, line: usize, col: usize) -> Result<Poly, DslError> {
    parse_poly(ring, src).map_err(|e| match e {
        PolyError::Parse { col: c, msg } => err(line, col + c - 1, msg),
        other => err(line, col, other.to_string()),
    })
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" | "yes" => Some(true),
        "false" | "no" => Some(false),
        _ => None,
    }
}

/// Parses a catalog entry. `fallback_name` is used when no `name` key is given.
pub fn parse_presentation(text: &str, fallback_name: &str) -> Result<CatalogEntry, DslError> {
    let stmts = statements(text)?;
    let find = |k: &str| stmts.iter().find(|s| s.key == k);
    for s in &stmts {
        const KEYS: [&str; 13] = [
            "name",
            "p",
            "vars",
            "order",
            "weights",
            "Q",
            "f",
            "assertions",
            "notes",
            "expected",
            "prime",
            "budget_pairs",
            "budget_terms",
        ];
        if !KEYS.contains(&s.key.as_str()) {
            return Err(err(s.line, s.key_col, format!("unknown key '{}'", s.key)));
        }
        let repeatable = matches!(s.key.as_str(), "prime" | "notes");
        if !repeatable && stmts.iter().filter(|t| t.key == s.key).count() > 1 {
            return Err(err(s.line, s.key_col, format!("duplicate key '{}'", s.key)));
        }
    }

    let ps = find("p").ok_or_else(|| err(1, 1, "missing key 'p'"))?;
    let p: u64 = ps
        .value
        .parse()
        .map_err(|_| err(ps.line, ps.col, format!("p must be a positive integer (got '{}')", ps.value)))?;
    let vs = find("vars").ok_or_else(|| err(1, 1, "missing key 'vars'"))?;
    let vars = list_items(vs, false)?;
    if vars.is_empty() {
        return Err(err(vs.line, vs.col, "vars must list at least one variable"));
    }
    for (i, (v, c)) in vars.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|ch| ch.is_alphabetic() || ch == '_')
            && v.chars().all(|ch| ch.is_alphanumeric() || ch == '_');
        if !ok {
            return Err(err(vs.line, *c, format!("invalid variable name '{v}'")));
        }
        if vars[..i].iter().any(|(w, _)| w == v) {
            return Err(err(vs.line, *c, format!("duplicate variable '{v}'")));
        }
    }
    let order = match find("order") {
        None => MonomialOrder::GrevLex,
        Some(s) => match s.value.as_str() {
            "grevlex" => MonomialOrder::GrevLex,
            "lex" => MonomialOrder::Lex,
            other => return Err(err(s.line, s.col, format!("unknown order '{other}' (use grevlex or lex)"))),
        },
    };
    let names: Vec<&str> = vars.iter().map(|(v, _)| v.as_str()).collect();
    let p32 = u32::try_from(p).map_err(|_| err(ps.line, ps.col, "p must be prime (too large)"))?;
    let ring = Ring::new(p32, &names, order).map_err(|e| match e {
        PolyError::NotPrime(_) => err(ps.line, ps.col, "p must be prime"),
        other => err(ps.line, ps.col, other.to_string()),
    })?;
    let mut budget = ring.budget();
    for (key, slot) in [("budget_pairs", &mut budget.max_pairs), ("budget_terms", &mut budget.max_terms)] {
        if let Some(s) = find(key) {
            *slot = s
                .value
                .parse::<usize>()
                .map_err(|_| err(s.line, s.col, format!("{key} must be a positive integer (got '{}')", s.value)))?;
        }
    }
    let ring = ring.with_budget(budget);

    let weights = match find("weights") {
        None => vec![1; names.len()],
        Some(s) => {
            let items = list_items(s, false)?;
            if items.len() != names.len() {
                return Err(err(s.line, s.col, format!("expected {} weights", names.len())));
            }
            items
                .iter()
                .map(|(w, c)| match w.parse::<u32>() {
                    Ok(w) if w > 0 => Ok(w),
                    _ => Err(err(s.line, *c, format!("weights must be positive integers (got '{w}')"))),
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };

    let mut q = Vec::new();
    if let Some(s) = find("Q") {
        for (src, c) in list_items(s, true)? {
            q.push(poly_at(&ring, &src, s.line, c)?);
        }
    }
    let qs = find("Q");
    let (ql, qc) = qs.map(|s| (s.line, s.col)).unwrap_or((1, 1));
    let presentation = RingPresentation::with_weights(&ring, q, weights.clone())
        .map_err(|e| algebra_err(ql, qc, "invalid defining ideal: ", e))?;

    let f = match find("f") {
        None => None,
        Some(s) => {
            let f = poly_at(&ring, &s.value, s.line, s.col)?;
            let nzd = presentation
                .is_nonzerodivisor(&f)
                .map_err(|e| algebra_err(s.line, s.col, "", e))?;
            if !nzd {
                return Err(err(s.line, s.col, format!("f = {f} is a zero-divisor modulo Q")));
            }
            Some(f)
        }
    };

    let mut assertions = Vec::new();
    if let Some(s) = find("assertions") {
        for (a, c) in list_items(s, true)? {
            let parsed = Assertion::parse(&a).ok_or_else(|| err(s.line, c, format!("unknown assertion '{a}'")))?;
            assertions.push(parsed);
        }
    }
    assertions.sort();
    assertions.dedup();

    let mut expected = Expected::default();
    if let Some(s) = find("expected") {
        for (item, c) in list_items(s, true)? {
            let Some((k, v)) = item.split_once('=') else {
                return Err(err(s.line, c, format!("expected 'key = value' in '{item}'")));
            };
            let (k, v) = (k.trim(), v.trim());
            let bad = || err(s.line, c, format!("invalid value '{v}' for expected {k}"));
            match k {
                "fpure" => expected.fpure = Some(parse_bool(v).ok_or_else(bad)?),
                "quotient_fpure" => expected.quotient_fpure = Some(parse_bool(v).ok_or_else(bad)?),
                "index" => expected.index = Some(v.parse().map_err(|_| bad())?),
                "quotient_index" => expected.quotient_index = Some(v.parse().map_err(|_| bad())?),
                "stable_n" => expected.stable_n = Some(v.parse().map_err(|_| bad())?),
                other => return Err(err(s.line, c, format!("unknown expected outcome '{other}'"))),
            }
        }
    }

    let mut primes = Vec::new();
    for s in stmts.iter().filter(|s| s.key == "prime") {
        let mut gens = Vec::new();
        for (src, c) in list_items(s, false)? {
            gens.push(poly_at(&ring, &src, s.line, c)?);
        }
        primes.push(Ideal::new(&ring, gens));
    }

    let homogeneous = presentation.is_graded() && f.as_ref().is_none_or(|f| f.is_weighted_homogeneous(&weights));
    Ok(CatalogEntry {
        name: find("name").map(|s| s.value.clone()).unwrap_or_else(|| fallback_name.to_string()),
        source: text.to_string(),
        presentation,
        f,
        assertions,
        notes: stmts.iter().filter(|s| s.key == "notes").map(|s| s.value.clone()).collect(),
        expected,
        primes,
        homogeneous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_presentation() {
        let e = parse_presentation("p=3; vars=x,y; Q=[x*y]", "node").unwrap();
        assert_eq!(e.name, "node");
        assert_eq!(e.presentation.dim(), 1);
        assert!(e.f.is_none());
        assert!(e.homogeneous);
    }

    #[test]
    fn rejects_composite_p() {
        let e = parse_presentation("p=4; vars=x,y; Q=[x*y]", "bad").unwrap_err();
        assert_eq!((e.line, e.col), (1, 3));
        assert!(e.msg.contains("p must be prime"));
    }

    #[test]
    fn designated_f() {
        let e = parse_presentation("p=5; vars=x,y,z\nQ=[x*y - z^2]; f = x + y", "h").unwrap();
        assert_eq!(e.f.unwrap().to_string(), "x + y");
    }

    #[test]
    fn locations() {
        let e = parse_presentation("p=5\nvars=x,y\nQ=[x*y, x + w]", "h").unwrap_err();
        assert_eq!((e.line, e.col), (3, 13));
        assert!(e.msg.contains("unknown variable"));
        let e = parse_presentation("p=5\nvars=x,y\nQ=[x*y]\ncolour = red", "h").unwrap_err();
        assert_eq!((e.line, e.col), (4, 1));
        let e = parse_presentation("p=5; vars=x,y; Q=[x*y]; f = x", "h").unwrap_err();
        assert!(e.msg.contains("zero-divisor"));
        let e = parse_presentation("p=5; vars=x,y; Q=[x 2]", "h").unwrap_err();
        assert_eq!(e.col, 21);
    }

    #[test]
    fn metadata() {
        let src = "name = v\np = 2 # small\nvars = a, b, c, d, w\n\
                   Q = [a*c - b^2, a*d - b*c, b*d - c^2]\nf = w\n\
                   assertions = [CM, G1, S2, J_pe_CM(1)]\n\
                   expected = [fpure = true, index = 3]\nprime = a, b, c, d\nnotes = first\nnotes = second";
        let e = parse_presentation(src, "x").unwrap();
        assert_eq!(e.name, "v");
        assert!(e.has(Assertion::SymbolicPowerCM(1)));
        assert!(!e.has(Assertion::Equidimensional));
        assert_eq!(e.expected.index, Some(3));
        assert_eq!(e.expected.fpure, Some(true));
        assert_eq!(e.primes.len(), 1);
        assert_eq!(e.notes, vec!["first", "second"]);
    }

    #[test]
    fn inhomogeneous_flag() {
        let e = parse_presentation("p=5; vars=x,y,z; Q=[x*y - z^3]", "c").unwrap();
        assert!(!e.homogeneous);
        let e = parse_presentation("p=5; vars=x,y,z; weights=3,3,2; Q=[x*y - z^3]", "c").unwrap();
        assert!(e.homogeneous);
    }
}
