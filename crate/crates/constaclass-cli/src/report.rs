//! Text and JSON rendering. Both carry the same data: the round-trip tests
//! in tests/cli.rs parse each back and compare.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use constaclass::codes::ConstacyclicCode;
use constaclass::{
    weight_enumerator, Error, Factorization, FieldElement, FiniteField, IsometryClass,
    IsometryWitness,
};

use crate::CliError;

fn poly_json(field: &Arc<FiniteField>, poly: &constaclass::Poly) -> Value {
    Value::Array(
        poly.coeffs()
            .iter()
            .map(|&c| Value::String(field.format_element(c)))
            .collect(),
    )
}

pub fn factor_parts(fact: &Factorization) -> String {
    fact.factors
        .iter()
        .map(|(p, m)| {
            if *m == 1 {
                format!("({})", p.format_text())
            } else {
                format!("({})^{}", p.format_text(), m)
            }
        })
        .collect::<Vec<String>>()
        .join(" ")
}

pub fn factor_text(
    field: &Arc<FiniteField>,
    n: u64,
    lambda: FieldElement,
    fact: &Factorization,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "X^{n} - ({}) over {}",
        field.format_element(lambda),
        field.descriptor()
    );
    let _ = writeln!(
        out,
        "unit={}; {}; case={}",
        field.format_element(fact.unit),
        factor_parts(fact),
        fact.provenance.label()
    );
    out
}

pub fn factor_json(
    field: &Arc<FiniteField>,
    n: u64,
    lambda: FieldElement,
    fact: &Factorization,
) -> Value {
    json!({
        "field": field.descriptor(),
        "n": n,
        "lambda": field.format_element(lambda),
        "case": fact.provenance.label(),
        "unit": field.format_element(fact.unit),
        "factors": fact.factors.iter().map(|(p, m)| json!({
            "poly": poly_json(field, p),
            "mult": m,
        })).collect::<Vec<Value>>(),
    })
}

pub fn classes_text(field: &Arc<FiniteField>, n: u64, cls: &[IsometryClass], full: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} isometry classes of {}* for length {n}",
        cls.len(),
        field.descriptor()
    );
    for c in cls {
        let _ = write!(
            out,
            "class d'={}: rep={} size={}",
            c.subgroup_index,
            field.format_element(c.representative),
            c.members.len()
        );
        if c.members.len() <= 100 || full {
            let members: Vec<String> = c.members.iter().map(|&x| field.format_element(x)).collect();
            let _ = writeln!(out, " members=[{}]", members.join(", "));
        } else {
            let _ = writeln!(out, " members=(elided, use --full)");
        }
    }
    out
}

pub fn classes_json(field: &Arc<FiniteField>, n: u64, cls: &[IsometryClass]) -> Value {
    json!({
        "field": field.descriptor(),
        "n": n,
        "classes": cls.iter().map(|c| json!({
            "subgroup_index": c.subgroup_index,
            "representative": field.format_element(c.representative),
            "size": c.members.len(),
            "members": c.members.iter().map(|&x| field.format_element(x)).collect::<Vec<String>>(),
        })).collect::<Vec<Value>>(),
    })
}

pub fn witness_text(field: &Arc<FiniteField>, w: &IsometryWitness) -> String {
    format!(
        "lambda={} mu={} n={}: a={}; k={}  (a^n*lambda = mu^k = {})\n",
        field.format_element(w.lambda),
        field.format_element(w.mu),
        w.n,
        field.format_element(w.a),
        w.k,
        field.format_element(field.pow(w.mu, w.k)),
    )
}

pub fn witness_json(field: &Arc<FiniteField>, w: &IsometryWitness) -> Value {
    json!({
        "field": field.descriptor(),
        "n": w.n,
        "lambda": field.format_element(w.lambda),
        "witness": {
            "mu": field.format_element(w.mu),
            "a": field.format_element(w.a),
            "k": w.k,
        },
    })
}

fn weights_entry(
    field: &Arc<FiniteField>,
    code: &ConstacyclicCode,
    cap: u128,
) -> Result<Option<Vec<u64>>, CliError> {
    match weight_enumerator(field, code, cap) {
        Ok(we) => Ok(Some(we.counts)),
        Err(Error::CodeTooLarge(_, _)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn codes_text(
    field: &Arc<FiniteField>,
    n: u64,
    lambda: FieldElement,
    fact: &Factorization,
    codes: &[ConstacyclicCode],
    weights: bool,
    weight_cap: u128,
) -> Result<String, CliError> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} {}-constacyclic codes of length {n} over {} (factors: {})",
        codes.len(),
        field.format_element(lambda),
        field.descriptor(),
        factor_parts(fact),
    );
    for code in codes {
        let exps: Vec<String> = code.exponents.iter().map(|e| e.to_string()).collect();
        let _ = write!(
            out,
            "e=[{}] g={} dim={} size={}",
            exps.join(","),
            code.generator.format_text(),
            code.dimension,
            code.size_text(field)
        );
        if weights {
            match weights_entry(field, code, weight_cap)? {
                Some(counts) => {
                    let dist = counts
                        .iter()
                        .enumerate()
                        .skip(1)
                        .find(|(_, &c)| c > 0)
                        .map(|(w, _)| w.to_string())
                        .unwrap_or_else(|| "-".into());
                    let strs: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
                    let _ = write!(out, " weights=[{}] distance={}", strs.join(","), dist);
                }
                None => {
                    let _ = write!(out, " distance: not computed (size cap)");
                }
            }
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn codes_json(
    field: &Arc<FiniteField>,
    n: u64,
    lambda: FieldElement,
    fact: &Factorization,
    codes: &[ConstacyclicCode],
    weights: bool,
    weight_cap: u128,
) -> Result<Value, CliError> {
    let mut rows = Vec::with_capacity(codes.len());
    for code in codes {
        let mut row = json!({
            "exponents": code.exponents,
            "generator": poly_json(field, &code.generator),
            "dimension": code.dimension,
            "size": code.size_text(field),
        });
        if weights {
            let entry = weights_entry(field, code, weight_cap)?;
            row["weights"] = match entry {
                Some(counts) => json!(counts),
                None => Value::Null,
            };
        }
        rows.push(row);
    }
    Ok(json!({
        "field": field.descriptor(),
        "n": n,
        "lambda": field.format_element(lambda),
        "case": fact.provenance.label(),
        "unit": field.format_element(fact.unit),
        "factors": fact.factors.iter().map(|(p, m)| json!({
            "poly": poly_json(field, p),
            "mult": m,
        })).collect::<Vec<Value>>(),
        "codes": rows,
    }))
}
