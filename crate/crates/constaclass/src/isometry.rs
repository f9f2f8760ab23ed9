//! The length-n isometry relation on F_q*: two constants are equivalent
//! exactly when their quotient algebras F_q[X]/(X^n - c) are linked by a
//! Hamming-distance-preserving algebra isomorphism. Equivalence is decided
//! through discrete logarithms; witnesses carry the concrete (a, k) with
//! a^n * lambda = mu^k that realize the map f(X) -> f(aX).

use std::sync::Arc;

use crate::arith::{divisor_count, divisors, gcd, inv_mod, valuation};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::poly::Poly;

/// Constructive witness: a^n * lambda = mu^k with gcd(k, n) = 1, inducing
/// the isometry f(X) + (X^n - mu^k)  ->  f(aX) + (X^n - lambda).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsometryWitness {
    pub n: u64,
    pub lambda: FieldElement,
    pub mu: FieldElement,
    pub a: FieldElement,
    pub k: u64,
}

/// One equivalence class: all lambda with gcd(dlog lambda, d) = subgroup_index,
/// where d = gcd(n, q - 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryClass {
    pub n: u64,
    pub representative: FieldElement,
    pub members: Vec<FieldElement>,
    pub subgroup_index: u64,
}

/// lambda and mu generate the same subgroup together with the n-th powers;
/// equivalently their discrete logs have the same gcd with gcd(n, q - 1).
pub fn isometric(
    field: &Arc<FiniteField>,
    n: u64,
    lambda: FieldElement,
    mu: FieldElement,
) -> Result<bool> {
    let d = gcd(n, field.order() - 1);
    let l = field.discrete_log(lambda)?;
    let m = field.discrete_log(mu)?;
    Ok(gcd(l, d) == gcd(m, d))
}

/// Number of classes: the divisor count of gcd(n, q - 1).
pub fn class_count(field: &Arc<FiniteField>, n: u64) -> u64 {
    divisor_count(gcd(n, field.order() - 1))
}

/// Cap on full class enumeration.
pub const MAX_CLASS_ENUMERATION: u64 = 1 << 20;

/// All classes, one per divisor of gcd(n, q - 1), sorted by the discrete log
/// of their representative (the class of 1 first).
pub fn classes(field: &Arc<FiniteField>, n: u64) -> Result<Vec<IsometryClass>> {
    let q = field.order();
    if q > MAX_CLASS_ENUMERATION {
        return Err(Error::FieldTooLarge(q as u128));
    }
    let d = gcd(n, q - 1);
    let mut by_index: Vec<(u64, Vec<FieldElement>)> =
        divisors(d).into_iter().map(|dv| (dv, Vec::new())).collect();
    for (k, x) in field.powers_of_xi().enumerate() {
        let idx = gcd(k as u64, d);
        let slot = by_index
            .iter_mut()
            .find(|(dv, _)| *dv == idx)
            .expect("gcd with d divides d");
        slot.1.push(x);
    }
    let mut out: Vec<IsometryClass> = by_index
        .into_iter()
        .map(|(subgroup_index, members)| IsometryClass {
            n,
            representative: class_representative(field, n, d, subgroup_index),
            members,
            subgroup_index,
        })
        .collect();
    out.sort_by_key(|c| field.canonical_key(c.representative));
    Ok(out)
}

/// Representative normalization: the class containing 1 is represented by 1;
/// for lengths of the form ell^t * p^s the remaining classes are represented
/// by powers zeta^(ell^j) of the fixed ell-power root of unity; otherwise by
/// xi^(d').
fn class_representative(
    field: &Arc<FiniteField>,
    n: u64,
    d: u64,
    subgroup_index: u64,
) -> FieldElement {
    if subgroup_index == d {
        return field.one();
    }
    let p = field.characteristic();
    let dec = crate::cyclotomic::decompose_length(p, n);
    if dec.n_prime > 1 {
        let fs = crate::arith::factorize_u64(dec.n_prime);
        if fs.len() == 1 {
            let ell = fs[0].0;
            let u = valuation(ell, field.order() - 1);
            let j = valuation(ell, subgroup_index);
            // zeta^(ell^j) where zeta = xi^((q-1)/ell^u)
            return field.xi_pow(((field.order() - 1) / ell.pow(u)) as i64 * ell.pow(j) as i64);
        }
    }
    field.xi_pow(subgroup_index as i64)
}

/// Minimal witness for an isometric pair: smallest valid k, then the a of
/// smallest discrete log with a^n * lambda = mu^k.
pub fn witness(
    field: &Arc<FiniteField>,
    n: u64,
    lambda: FieldElement,
    mu: FieldElement,
) -> Result<IsometryWitness> {
    if !isometric(field, n, lambda, mu)? {
        return Err(Error::NotIsometric);
    }
    let big_n = field.order() - 1;
    let d = gcd(n, big_n);
    let l = field.discrete_log(lambda)?;
    let m = field.discrete_log(mu)?;
    let k = if n == 1 {
        1
    } else {
        (1..n)
            .find(|&k| {
                gcd(k, n) == 1
                    && (k as u128 * m as u128 + (d - l % d) as u128).is_multiple_of(d as u128)
            })
            .expect("a coprime lift exists for isometric constants")
    };
    // solve n * A = k*m - l (mod q - 1); solutions step by (q-1)/d
    let rhs = ((k as u128 * m as u128 + (big_n - l) as u128) % big_n as u128) as u64;
    debug_assert_eq!(rhs % d, 0);
    let step = big_n / d;
    let a_log = {
        // (n/d) * A = rhs/d (mod step), with n/d invertible mod step
        let inv = inv_mod((n / d) % step.max(1), step.max(1)).expect("n/d coprime to (q-1)/d");
        (rhs / d) % step.max(1) * inv % step.max(1)
    };
    let a = field.xi_pow(a_log as i64);
    let w = IsometryWitness {
        n,
        lambda,
        mu,
        a,
        k,
    };
    debug_assert!(verify(field, &w));
    Ok(w)
}

/// Check a^n * lambda = mu^k in the field.
pub fn verify(field: &Arc<FiniteField>, w: &IsometryWitness) -> bool {
    !w.a.is_zero()
        && gcd(w.k, w.n) == 1
        && field.mul(field.pow(w.a, w.n), w.lambda) == field.pow(w.mu, w.k)
}

/// Apply the isometry to a representative polynomial: f(X) -> f(aX).
/// Requires deg f < n so f represents a residue class.
pub fn apply_phi(w: &IsometryWitness, f: &Poly) -> Result<Poly> {
    if let Some(deg) = f.degree() {
        if deg as u64 >= w.n {
            return Err(Error::DegreeTooLarge(deg as u64, w.n));
        }
    }
    f.substitute_scale(w.a)
}
