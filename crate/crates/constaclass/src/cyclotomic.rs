//! q-cyclotomic cosets modulo n' and the resulting factorization of X^n - 1
//! through minimal polynomials of roots of unity.

use std::sync::Arc;

use crate::arith::{gcd, multiplicative_order, valuation};
use crate::error::{Error, Result};
use crate::extension::{extend_field, ExtElement, FieldExtension};
use crate::factorizer::{Factorization, Provenance};
use crate::field::{FieldElement, FiniteField};
use crate::poly::Poly;

/// Orbit of a residue under multiplication by q modulo n'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicCoset {
    pub modulus: u64,
    pub representative: u64,
    pub members: Vec<u64>,
}

/// n = n' * p^s with p coprime to n'.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LengthDecomposition {
    pub n: u64,
    pub n_prime: u64,
    pub s: u32,
}

/// Strip the characteristic part out of the length.
pub fn decompose_length(p: u64, n: u64) -> LengthDecomposition {
    debug_assert!(n >= 1);
    let s = valuation(p, n);
    LengthDecomposition {
        n,
        n_prime: n / p.pow(s),
        s,
    }
}

/// All q-cyclotomic cosets modulo n', sorted by representative. Their
/// members partition {0, ..., n'-1}.
pub fn cosets(field: &Arc<FiniteField>, n_prime: u64) -> Result<Vec<CyclotomicCoset>> {
    let p = field.characteristic();
    if gcd(n_prime, p) != 1 {
        return Err(Error::NotCoprimeToCharacteristic(n_prime, p));
    }
    let q = field.order() % n_prime;
    let mut seen = vec![false; n_prime as usize];
    let mut out = Vec::new();
    for r in 0..n_prime {
        if seen[r as usize] {
            continue;
        }
        let mut members = Vec::new();
        let mut cur = r;
        loop {
            seen[cur as usize] = true;
            members.push(cur);
            cur = (cur as u128 * q as u128 % n_prime as u128) as u64;
            if cur == r {
                break;
            }
        }
        members.sort_unstable();
        out.push(CyclotomicCoset {
            modulus: n_prime,
            representative: r,
            members,
        });
    }
    Ok(out)
}

/// Minimal polynomial of eta^representative over the base:
/// the product of (X - eta^j) over the coset, expanded in the extension and
/// coerced down. `eta` must be a primitive n'-th root of unity in `ext`.
pub fn minimal_polynomial(
    ext: &FieldExtension,
    eta: &ExtElement,
    coset: &CyclotomicCoset,
) -> Result<Poly> {
    let base = ext.base().clone();
    // expand prod (X - eta^j) with coefficients in the extension
    let mut acc: Vec<ExtElement> = vec![ext.one()];
    for &j in &coset.members {
        let root = ext.pow(eta, j);
        let mut next: Vec<ExtElement> = Vec::with_capacity(acc.len() + 1);
        next.push(ext.neg(&ext.mul(&acc[0], &root)));
        for i in 1..acc.len() {
            next.push(ext.sub(&acc[i - 1], &ext.mul(&acc[i], &root)));
        }
        next.push(acc[acc.len() - 1].clone());
        acc = next;
    }
    let coeffs = acc
        .iter()
        .map(|c| ext.as_base(c).ok_or(Error::CoefficientNotInBaseField))
        .collect::<Result<Vec<FieldElement>>>()?;
    let poly = Poly::from_coeffs(base, coeffs);
    debug_assert_eq!(poly.degree(), Some(coset.members.len()));
    debug_assert!(poly.is_monic());
    Ok(poly)
}

/// The smallest extension containing a primitive n'-th root of unity, and
/// one such root (order exactly n').
pub fn unity_root_extension(
    field: &Arc<FiniteField>,
    n_prime: u64,
) -> Result<(Arc<FieldExtension>, ExtElement)> {
    let d = multiplicative_order(field.order() % n_prime.max(1), n_prime) as u32;
    let ext = extend_field(field, d)?;
    let eta = ext.nth_root_of_unity(n_prime)?;
    Ok((ext, eta))
}

/// Irreducible factorization of X^n - 1 as the p^s-th power of the
/// minimal-polynomial factorization of X^(n') - 1.
pub fn factor_xn_minus_one(field: &Arc<FiniteField>, n: u64) -> Result<Factorization> {
    debug_assert!(n >= 1);
    let dec = decompose_length(field.characteristic(), n);
    let mult = field.characteristic().pow(dec.s);
    let (ext, eta) = unity_root_extension(field, dec.n_prime)?;
    let mut factors = Vec::new();
    for coset in cosets(field, dec.n_prime)? {
        factors.push((minimal_polynomial(&ext, &eta, &coset)?, mult));
    }
    let fact = Factorization::new(field.one(), factors, Provenance::CyclotomicCaseI);
    debug_assert_eq!(
        fact.product(field),
        Poly::x_pow_minus(field.clone(), n as usize, field.one())
    );
    Ok(fact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorizer::{factorize, is_irreducible};

    fn gf(p: u64, m: u32) -> Arc<FiniteField> {
        FiniteField::new(p, m).unwrap()
    }

    #[test]
    fn cosets_split_completely_when_q_is_1_mod_n() {
        let f = gf(2, 4);
        let cs = cosets(&f, 3).unwrap();
        let members: Vec<Vec<u64>> = cs.iter().map(|c| c.members.clone()).collect();
        assert_eq!(members, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn cosets_mod_7_over_gf25() {
        let f = gf(5, 2);
        let cs = cosets(&f, 7).unwrap();
        let members: Vec<Vec<u64>> = cs.iter().map(|c| c.members.clone()).collect();
        assert_eq!(members, vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]);
        assert_eq!(cs[1].representative, 1);
    }

    #[test]
    fn trivial_modulus() {
        let f = gf(3, 2);
        let cs = cosets(&f, 1).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].members, vec![0]);
    }

    #[test]
    fn rejects_modulus_sharing_characteristic() {
        let f = gf(5, 2);
        assert_eq!(
            cosets(&f, 10).unwrap_err(),
            Error::NotCoprimeToCharacteristic(10, 5)
        );
    }

    #[test]
    fn coset_members_partition() {
        for (p, m, np) in [(2u64, 4u32, 15u64), (5, 2, 24), (3, 2, 13), (7, 1, 12)] {
            let f = gf(p, m);
            let cs = cosets(&f, np).unwrap();
            let total: usize = cs.iter().map(|c| c.members.len()).sum();
            assert_eq!(total, np as usize);
            let mut all: Vec<u64> = cs.iter().flat_map(|c| c.members.clone()).collect();
            all.sort_unstable();
            assert_eq!(all, (0..np).collect::<Vec<u64>>());
            for c in &cs {
                assert_eq!(c.representative, *c.members.iter().min().unwrap());
                // closed under multiplication by q
                for &j in &c.members {
                    let next = j * (f.order() % np) % np;
                    assert!(c.members.contains(&next));
                }
            }
        }
    }

    #[test]
    fn linear_minimal_polynomials_over_gf16() {
        let f = gf(2, 4);
        let (ext, eta) = unity_root_extension(&f, 3).unwrap();
        assert_eq!(ext.degree(), 1);
        let cs = cosets(&f, 3).unwrap();
        let m0 = minimal_polynomial(&ext, &eta, &cs[0]).unwrap();
        assert_eq!(m0, Poly::x_pow_minus(f.clone(), 1, f.one()));
        let m1 = minimal_polynomial(&ext, &eta, &cs[1]).unwrap();
        let m2 = minimal_polynomial(&ext, &eta, &cs[2]).unwrap();
        let roots: Vec<FieldElement> = vec![f.neg(m1.coeff(0)), f.neg(m2.coeff(0))];
        // eta and eta^2 are xi^5 and xi^10 in some order
        let mut dlogs: Vec<u64> = roots.iter().map(|&r| f.discrete_log(r).unwrap()).collect();
        dlogs.sort_unstable();
        assert_eq!(dlogs, vec![5, 10]);
    }

    #[test]
    fn cubic_minimal_polynomials_over_gf25() {
        // the two cubics of X^7 - 1; eta-choice swaps them, so compare as sets
        let f = gf(5, 2);
        let (ext, eta) = unity_root_extension(&f, 7).unwrap();
        assert_eq!(ext.degree(), 3);
        let cs = cosets(&f, 7).unwrap();
        let m1 = minimal_polynomial(&ext, &eta, &cs[1]).unwrap();
        let m2 = minimal_polynomial(&ext, &eta, &cs[2]).unwrap();
        let expect1 = Poly::parse(&f, "X^3 + xi*X^2 + xi^17*X + xi^12").unwrap();
        let expect2 = Poly::parse(&f, "X^3 + xi^5*X^2 + xi^13*X + xi^12").unwrap();
        assert!(
            (m1 == expect1 && m2 == expect2) || (m1 == expect2 && m2 == expect1),
            "{m1} / {m2}"
        );
        assert!(is_irreducible(&m1) && is_irreducible(&m2));
    }

    #[test]
    fn bad_eta_is_reported() {
        let f = gf(5, 2);
        let (ext, _) = unity_root_extension(&f, 7).unwrap();
        // generator itself is not a 7th root of unity: coefficients stay in
        // the big field
        let cs = cosets(&f, 7).unwrap();
        let bad = minimal_polynomial(&ext, &ext.generator().unwrap(), &cs[1]);
        assert_eq!(bad.unwrap_err(), Error::CoefficientNotInBaseField);
    }

    #[test]
    fn factor_x6_minus_1_over_gf16() {
        let f = gf(2, 4);
        let fact = factor_xn_minus_one(&f, 6).unwrap();
        assert_eq!(fact.factors.len(), 3);
        assert!(fact
            .factors
            .iter()
            .all(|(p, m)| p.degree() == Some(1) && *m == 2));
        assert_eq!(fact.product(&f), Poly::x_pow_minus(f.clone(), 6, f.one()));
    }

    #[test]
    fn factor_x1_minus_1() {
        let f = gf(7, 1);
        let fact = factor_xn_minus_one(&f, 1).unwrap();
        assert_eq!(fact.factors.len(), 1);
        assert_eq!(
            fact.factors[0],
            (Poly::x_pow_minus(f.clone(), 1, f.one()), 1)
        );
    }

    #[test]
    fn factor_x175_minus_1_over_gf25() {
        let f = gf(5, 2);
        let fact = factor_xn_minus_one(&f, 175).unwrap();
        assert_eq!(fact.factors.len(), 3);
        assert!(fact.factors.iter().all(|(_, m)| *m == 25));
        let degs: Vec<usize> = fact
            .factors
            .iter()
            .map(|(p, _)| p.degree().unwrap())
            .collect();
        assert_eq!(degs, vec![1, 3, 3]);
        assert_eq!(fact.product(&f), Poly::x_pow_minus(f.clone(), 175, f.one()));
    }

    #[test]
    fn agrees_with_oracle_on_small_lengths() {
        for (p, m) in [(2u64, 2u32), (3, 1), (5, 1), (2, 3)] {
            let f = gf(p, m);
            for n in 1u64..=18 {
                let ours = factor_xn_minus_one(&f, n).unwrap();
                let oracle = factorize(&Poly::x_pow_minus(f.clone(), n as usize, f.one())).unwrap();
                assert!(ours.same_factors(&oracle), "q={} n={}", f.order(), n);
                let degree_sum: u64 = ours
                    .factors
                    .iter()
                    .map(|(p, m)| p.degree().unwrap() as u64 * m)
                    .sum();
                assert_eq!(degree_sum, n);
            }
        }
    }
}
