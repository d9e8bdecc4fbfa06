use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{bail, Result};
use hgs_core::sweep::{self, OracleOutcome, SweepOptions, Verdict};
use hgs_core::{
    breakdown, enumerate_types, factor_squarefree, four_prime_table, three_prime_table,
    SquarefreeFactorization, TableRow,
};
use serde_json::{json, Value};

use crate::document::{CsvTable, OutputDocument};

/// What a command produced, in every output format, plus its exit code.
pub struct Outcome {
    pub doc: OutputDocument,
    pub text: String,
    pub csv: CsvTable,
    pub exit_code: i32,
}

/// Bad user input; maps to exit code 2.
#[derive(Debug)]
pub struct InvalidInput(pub String);

impl std::fmt::Display for InvalidInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidInput {}

fn squarefree(n: u64) -> Result<SquarefreeFactorization> {
    factor_squarefree(n).map_err(|e| InvalidInput(e.to_string()).into())
}

fn inputs(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn groups(n: u64, ascii: bool) -> Result<Outcome> {
    let nf = squarefree(n)?;
    let types = enumerate_types(&nf);
    let mut csv = CsvTable::new(vec!["n", "d", "e", "k", "z", "g", "presentation"]);
    let mut text = format!("{} isomorphism type(s) of groups of order {n}\n\n", types.len());
    let _ = writeln!(text, "{:>4} {:>12} {:>12} {:>12} {:>12} {:>12}  presentation", "#", "d", "e", "k", "z", "g");
    let mut rows = Vec::new();
    for (i, s) in types.iter().enumerate() {
        let pres = s.presentation(ascii);
        let _ = writeln!(text, "{:>4} {:>12} {:>12} {:>12} {:>12} {:>12}  {pres}", i + 1, s.d, s.e, s.k, s.z, s.g);
        csv.push([s.n, s.d, s.e, s.k, s.z, s.g].map(|x| x.to_string()).into_iter().chain([pres.clone()]));
        rows.push(json!({"spec": s, "presentation": pres}));
    }
    let doc = OutputDocument::new(
        "groups",
        inputs(&[("n", json!(n)), ("ascii", json!(ascii))]),
        json!({"n": n, "type_count": types.len(), "types": rows}),
    );
    Ok(Outcome { doc, text, csv, exit_code: 0 })
}

pub fn count(n: u64, terms: bool, per_type: bool, ascii: bool) -> Result<Outcome> {
    let nf = squarefree(n)?;
    let bd = breakdown(&nf)?;
    let mut text = format!(
        "n = {n}: {} Hopf-Galois structures on a cyclic extension, across {} isomorphism types\n",
        bd.total_by_formula,
        bd.types.len()
    );
    let _ = writeln!(text, "|Aut(C_n)| = phi(n) = {}", bd.aut_gamma);
    let mut csv = CsvTable::new(vec!["kind", "d", "g", "z", "e", "k", "value", "zero"]);
    csv.push(["total", "", "", "", "", "", &bd.total_by_formula.to_string(), ""].map(String::from));

    if per_type {
        let _ = writeln!(text, "\n{:>12} {:>12} {:>12} {:>12} {:>8}  presentation", "d", "g", "z", "k", "# HGS");
        for t in &bd.types {
            let s = &t.spec;
            let _ = writeln!(
                text,
                "{:>12} {:>12} {:>12} {:>12} {:>8}  {}",
                s.d, s.g, s.z, s.k, t.hgs_count, s.presentation(ascii)
            );
            csv.push(
                ["type".to_string()]
                    .into_iter()
                    .chain([s.d, s.g, s.z, s.e, s.k, t.hgs_count].map(|x| x.to_string()))
                    .chain([String::new()]),
            );
        }
    }
    if terms {
        let _ = writeln!(text, "\n{:>12} {:>12} {:>12} {:>12}", "d", "g", "z", "term");
        for t in &bd.formula_terms {
            let flag = if t.zero { "  (zero)" } else { "" };
            let _ = writeln!(text, "{:>12} {:>12} {:>12} {:>12}{flag}", t.triple.d, t.triple.g, t.triple.z, t.term);
            csv.push([
                "term".to_string(),
                t.triple.d.to_string(),
                t.triple.g.to_string(),
                t.triple.z.to_string(),
                t.triple.e().to_string(),
                String::new(),
                t.term.to_string(),
                t.zero.to_string(),
            ]);
        }
    }

    let mut results = json!({
        "n": n,
        "aut_gamma": bd.aut_gamma,
        "type_count": bd.types.len(),
        "total_by_sum": bd.total_by_sum,
        "total_by_formula": bd.total_by_formula,
    });
    if per_type {
        results["types"] = serde_json::to_value(&bd.types)?;
    }
    if terms {
        results["formula_terms"] = serde_json::to_value(&bd.formula_terms)?;
    }
    let doc = OutputDocument::new(
        "count",
        inputs(&[("n", json!(n)), ("terms", json!(terms)), ("per_type", json!(per_type))]),
        results,
    );
    Ok(Outcome { doc, text, csv, exit_code: 0 })
}

fn table_text(rows: &[TableRow], label: &str) -> String {
    let mut text = format!("{:>5} {:>10} {:>12} {:>12} {:>10} {:>18}\n", label, "d", "g", "z", "# groups", "# HGS per group");
    for r in rows {
        let _ = writeln!(
            text,
            "{:>5} {:>10} {:>12} {:>12} {:>10} {:>18}",
            r.label, r.triple.d, r.triple.g, r.triple.z, r.groups, r.hgs_per_group
        );
    }
    text
}

fn table_csv(rows: &[TableRow], type_count: u64, total: u64) -> CsvTable {
    let mut csv = CsvTable::new(vec!["kind", "label", "d", "g", "z", "groups", "hgs_per_group"]);
    for r in rows {
        csv.push(
            ["row".to_string()]
                .into_iter()
                .chain([r.label as u64, r.triple.d, r.triple.g, r.triple.z, r.groups, r.hgs_per_group].map(|x| x.to_string())),
        );
    }
    csv.push(["total".to_string(), String::new(), String::new(), String::new(), String::new(), type_count.to_string(), total.to_string()]);
    csv
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn table(kind: &str, primes: &[u64]) -> Result<Outcome> {
    let invalid = |e: hgs_core::Error| -> anyhow::Error { InvalidInput(e.to_string()).into() };
    match (kind, primes) {
        ("three-prime", &[p1, p2, p3]) => {
            let t = three_prime_table(p1, p2, p3).map_err(invalid)?;
            let (a, b, c) = t.conditions.as_tuple();
            let mut text = format!("n = {p1} * {p2} * {p3} = {}\n", p1 * p2 * p3);
            let _ = writeln!(
                text,
                "p2 | (p3-1): {}   p1 | (p3-1): {}   p1 | (p2-1): {}\n",
                yes_no(a),
                yes_no(b),
                yes_no(c)
            );
            text += &table_text(&t.rows, "Case");
            let _ = writeln!(text, "\n# groups: {}   Total # HGS: {}", t.type_count, t.total);
            let csv = table_csv(&t.rows, t.type_count, t.total);
            let doc = OutputDocument::new(
                "table",
                inputs(&[("kind", json!(kind)), ("primes", json!(primes))]),
                serde_json::to_value(&t)?,
            );
            Ok(Outcome { doc, text, csv, exit_code: 0 })
        }
        ("four-prime", &[p1, p2, p3, p4]) => {
            let t = four_prime_table([p1, p2, p3, p4]).map_err(invalid)?;
            let mut text = format!("n = {p1} * {p2} * {p3} * {p4} = {}\n\n", p1 * p2 * p3 * p4);
            text += &table_text(&t.rows, "Row");
            let _ = writeln!(text, "\n# groups: {}   Total # HGS: {}", t.type_count, t.total);
            let csv = table_csv(&t.rows, t.type_count, t.total);
            let doc = OutputDocument::new(
                "table",
                inputs(&[("kind", json!(kind)), ("primes", json!(primes))]),
                serde_json::to_value(&t)?,
            );
            Ok(Outcome { doc, text, csv, exit_code: 0 })
        }
        ("three-prime", _) => bail!(InvalidInput("three-prime needs exactly 3 primes".into())),
        ("four-prime", _) => bail!(InvalidInput("four-prime needs exactly 4 primes".into())),
        _ => bail!(InvalidInput(format!("unknown table kind {kind:?}"))),
    }
}

/// Expand `a..b` ranges and single values. Non-squarefree values inside a
/// range are skipped; an explicit non-squarefree value is an error.
pub fn parse_targets(targets: &[String]) -> Result<Vec<SquarefreeFactorization>> {
    let mut out = Vec::new();
    for t in targets {
        let bad = || InvalidInput(format!("cannot parse {t:?}; expected n or a..b"));
        if let Some((lo, hi)) = t.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
            if hi > hgs_core::numutil::MAX_N {
                bail!(InvalidInput(format!("range end {hi} exceeds {}", hgs_core::numutil::MAX_N)));
            }
            out.extend(sweep::squarefree_in(lo, hi));
        } else {
            let n: u64 = t.trim().parse().map_err(|_| bad())?;
            out.push(squarefree(n)?);
        }
    }
    out.sort_by_key(|f| f.n());
    out.dedup_by_key(|f| f.n());
    Ok(out)
}

fn outcome_text(o: &OracleOutcome) -> String {
    match o {
        OracleOutcome::Ran { total, matches } => format!("{total}{}", if *matches { "" } else { " MISMATCH" }),
        OracleOutcome::Skipped { required, .. } => format!("skipped({required})"),
    }
}

pub fn verify(targets: &[String], budget: u64, strict: bool) -> Result<Outcome> {
    let ns = parse_targets(targets)?;
    let opts = SweepOptions { perm_budget: budget, check_structure: true };
    let verdicts: Vec<Verdict> = sweep::verify_all(&ns, &opts);

    let failed = verdicts.iter().filter(|v| !v.passed()).count();
    let skipped = verdicts.iter().filter(|v| v.any_skipped()).count();
    let ok = failed == 0 && (!strict || skipped == 0);

    let mut text = format!(
        "{:>10} {:>6} {:>10} {:>10} {:>10} {:>16} {:>10}  verdict\n",
        "n", "types", "formula", "by type", "fast", "perm", "structure"
    );
    let mut csv = CsvTable::new(vec![
        "n", "type_count", "formula_total", "sum_of_types", "fast_oracle", "census_ok", "perm_oracle", "structure_ok", "passed",
    ]);
    for v in &verdicts {
        let structure = match v.structure_ok {
            Some(true) => "ok",
            Some(false) => "MISMATCH",
            None => "skipped",
        };
        let verdict = if !v.passed() {
            "FAIL"
        } else if strict && v.any_skipped() {
            "FAIL(strict)"
        } else {
            "pass"
        };
        let _ = writeln!(
            text,
            "{:>10} {:>6} {:>10} {:>10} {:>10} {:>16} {:>10}  {verdict}{}",
            v.n,
            v.type_count,
            v.formula_total,
            v.sum_of_types,
            v.fast_oracle,
            outcome_text(&v.perm_oracle),
            structure,
            v.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default()
        );
        csv.push([
            v.n.to_string(),
            v.type_count.to_string(),
            v.formula_total.to_string(),
            v.sum_of_types.to_string(),
            v.fast_oracle.to_string(),
            v.census_ok.to_string(),
            outcome_text(&v.perm_oracle),
            structure.to_string(),
            v.passed().to_string(),
        ]);
    }
    let _ = writeln!(
        text,
        "\n{} value(s) checked, {failed} failed, {skipped} with skipped oracles: {}",
        verdicts.len(),
        if ok { "PASS" } else { "FAIL" }
    );
    let doc = OutputDocument::new(
        "verify",
        inputs(&[("targets", json!(targets)), ("perm_budget", json!(budget)), ("strict", json!(strict))]),
        json!({
            "passed": ok,
            "checked": verdicts.len(),
            "failed": failed,
            "skipped": skipped,
            "verdicts": verdicts,
        }),
    );
    Ok(Outcome { doc, text, csv, exit_code: if ok { 0 } else { 1 } })
}
