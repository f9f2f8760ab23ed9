//! The six reference classification tables: lengths 6 over GF(2^4), 175 over
//! GF(5^2) and 20 over GF(5^2), one table per isometry class, every row
//! derived from the minimal witness and the closed-form factorization.

use std::fmt::Write as _;
use std::sync::Arc;

use constaclass::{
    classes, enumerate_codes, factor_consta, isometry, ConstaLength, FieldElement, FiniteField,
};

use crate::CliError;

struct TableSpec {
    index: u32,
    p: u64,
    m: u32,
    n: u64,
    class_rank: usize,
}

const TABLES: [TableSpec; 6] = [
    TableSpec {
        index: 1,
        p: 2,
        m: 4,
        n: 6,
        class_rank: 0,
    },
    TableSpec {
        index: 2,
        p: 2,
        m: 4,
        n: 6,
        class_rank: 1,
    },
    TableSpec {
        index: 3,
        p: 5,
        m: 2,
        n: 175,
        class_rank: 0,
    },
    TableSpec {
        index: 4,
        p: 5,
        m: 2,
        n: 20,
        class_rank: 0,
    },
    TableSpec {
        index: 5,
        p: 5,
        m: 2,
        n: 20,
        class_rank: 1,
    },
    TableSpec {
        index: 6,
        p: 5,
        m: 2,
        n: 20,
        class_rank: 2,
    },
];

pub fn render(which: Option<u32>, expand: bool) -> Result<String, CliError> {
    if let Some(w) = which {
        if !(1..=6).contains(&w) {
            return Err(CliError::Usage(format!("no table {w}; valid: 1-6")));
        }
    }
    let mut out = String::new();
    for spec in &TABLES {
        if which.is_some_and(|w| w != spec.index) {
            continue;
        }
        render_one(&mut out, spec, expand)?;
    }
    Ok(out)
}

fn render_one(out: &mut String, spec: &TableSpec, expand: bool) -> Result<(), CliError> {
    let field = FiniteField::new(spec.p, spec.m)?;
    let cls = classes(&field, spec.n)?;
    let class = &cls[spec.class_rank];
    let rep = class.representative;
    let rep_text = field.format_element(rep);
    let relation = if rep == field.one() {
        "a^n*lambda = 1".to_owned()
    } else {
        format!("a^n*lambda = ({rep_text})^k")
    };
    let _ = writeln!(
        out,
        "Table {}: lambda-constacyclic codes of length {} over {}, lambda ~ {}, {}",
        spec.index,
        spec.n,
        field.descriptor(),
        rep_text,
        relation
    );
    let header = if rep == field.one() {
        "lambda | a | generators | sizes"
    } else {
        "lambda | k | a | generators | sizes"
    };
    let _ = writeln!(out, "{header}");
    for &lambda in &class.members {
        render_row(out, &field, spec.n, rep, lambda, expand)?;
    }
    out.push('\n');
    Ok(())
}

fn render_row(
    out: &mut String,
    field: &Arc<FiniteField>,
    n: u64,
    rep: FieldElement,
    lambda: FieldElement,
    expand: bool,
) -> Result<(), CliError> {
    let len = ConstaLength::detect(field.characteristic(), n).expect("table lengths are ell^t*p^s");
    let w = isometry::witness(field, n, lambda, rep)?;
    let fact = factor_consta(field, len, lambda)?;
    let pattern = generator_pattern(&fact);
    let sizes = size_formula(field, n, &fact);
    if rep == field.one() {
        let _ = writeln!(
            out,
            "{} | {} | {} | {}",
            field.format_element(lambda),
            field.format_element(w.a),
            pattern,
            sizes
        );
    } else {
        let _ = writeln!(
            out,
            "{} | {} | {} | {} | {}",
            field.format_element(lambda),
            w.k,
            field.format_element(w.a),
            pattern,
            sizes
        );
    }
    if expand {
        let codes = enumerate_codes(field, &fact, n, lambda, u128::MAX)?;
        for code in &codes {
            let exps: Vec<String> = code.exponents.iter().map(|e| e.to_string()).collect();
            let _ = writeln!(
                out,
                "  e=[{}] dim={} size={}",
                exps.join(","),
                code.dimension,
                code.size_text(field)
            );
        }
    }
    Ok(())
}

fn generator_pattern(fact: &constaclass::Factorization) -> String {
    let mult = fact.factors.first().map(|&(_, m)| m).unwrap_or(1);
    let parts: Vec<String> = fact
        .factors
        .iter()
        .enumerate()
        .map(|(i, (p, _))| {
            if fact.factors.len() == 1 {
                format!("({})^j", p.format_text())
            } else {
                format!("({})^j{}", p.format_text(), i)
            }
        })
        .collect();
    format!("{} with 0 <= j_i <= {}", parts.join(" "), mult)
}

fn size_formula(field: &Arc<FiniteField>, n: u64, fact: &constaclass::Factorization) -> String {
    let mut terms = String::new();
    for (i, (p, _)) in fact.factors.iter().enumerate() {
        let deg = p.degree().unwrap_or(0);
        let name = if fact.factors.len() == 1 {
            "j".to_owned()
        } else {
            format!("j{i}")
        };
        if deg == 1 {
            let _ = write!(terms, "-{name}");
        } else {
            let _ = write!(terms, "-{deg}{name}");
        }
    }
    format!("{}^({}{})", field.order(), n, terms)
}
