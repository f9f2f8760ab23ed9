//! Oracle-equivalence sweep: over every prime-power field up to the cap and
//! every closed-form length, the closed-form factorization of X^n - lambda
//! must re-multiply exactly and agree with the seeded oracle as a multiset.

use constaclass::arith::is_prime;
use constaclass::{factor_consta, factorize_seeded, ConstaLength, FiniteField, Poly};

use crate::CliError;

pub fn run(max_q: u64, max_n: u64, seed: u64) -> Result<(), CliError> {
    let mut total = 0u64;
    let mut mismatches = 0u64;
    for q in 2..=max_q {
        let Some((p, m)) = prime_power(q) else {
            continue;
        };
        let field = FiniteField::new(p, m)?;
        let mut field_cases = 0u64;
        for n in 1..=max_n {
            let Some(len) = ConstaLength::detect(p, n) else {
                continue;
            };
            for lambda in field.powers_of_xi() {
                field_cases += 1;
                let closed = factor_consta(&field, len, lambda)?;
                let target = Poly::x_pow_minus(field.clone(), n as usize, lambda);
                let oracle = factorize_seeded(&target, seed)?;
                let ok = closed.product(&field) == target && closed.same_factors(&oracle);
                if !ok {
                    mismatches += 1;
                    println!(
                        "MISMATCH q={q} n={n} lambda={}",
                        field.format_element(lambda)
                    );
                }
            }
        }
        total += field_cases;
        println!("{}: {} cases checked", field.descriptor(), field_cases);
    }
    println!("selftest: {total} factorizations cross-checked, {mismatches} mismatches");
    if mismatches > 0 {
        return Err(CliError::Fail(format!("{mismatches} oracle mismatches")));
    }
    Ok(())
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let fs = constaclass::arith::factorize_u64(q);
    if fs.len() == 1 && is_prime(fs[0].0) {
        Some((fs[0].0, fs[0].1))
    } else {
        None
    }
}
