//! Closed-form irreducible factorization of X^(ell^t * p^s) - lambda, where
//! ell is a prime different from the characteristic p. Dispatches among the
//! scaled-cyclotomic case (lambda isometric to 1), the trinomial case
//! (ell = 2, t >= 2, exactly one factor of 2 in q - 1) and the binomial
//! case, and certifies every output by exact re-multiplication.

use std::sync::Arc;

use crate::arith::{checked_pow_u128, gcd, is_prime, valuation};
use crate::cyclotomic::factor_xn_minus_one;
use crate::error::{Error, Result};
use crate::factorizer::{Factorization, Provenance};
use crate::field::{FieldElement, FiniteField};
use crate::isometry::{isometric, witness};
use crate::poly::Poly;

/// Cap on closed-form lengths ell^t * p^s.
pub const MAX_CONSTA_LENGTH: u128 = 1 << 20;

/// A length of the form ell^t * p^s relative to a field of characteristic p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstaLength {
    pub ell: u64,
    pub t: u32,
    pub s: u32,
}

impl ConstaLength {
    /// Recognize n = ell^t * p^s; the pure p-power case reports t = 0 with
    /// the smallest prime different from p standing in for ell.
    pub fn detect(p: u64, n: u64) -> Option<ConstaLength> {
        let dec = crate::cyclotomic::decompose_length(p, n);
        if dec.n_prime == 1 {
            let ell = if p == 2 { 3 } else { 2 };
            return Some(ConstaLength {
                ell,
                t: 0,
                s: dec.s,
            });
        }
        let fs = crate::arith::factorize_u64(dec.n_prime);
        if fs.len() == 1 {
            Some(ConstaLength {
                ell: fs[0].0,
                t: fs[0].1,
                s: dec.s,
            })
        } else {
            None
        }
    }

    pub fn value(&self, p: u64) -> u64 {
        self.ell.pow(self.t) * p.pow(self.s)
    }

    /// ell^t * p^s without overflow; None when it exceeds u64.
    pub fn checked_value(&self, p: u64) -> Option<u64> {
        let v = checked_pow_u128(self.ell, self.t)?.checked_mul(checked_pow_u128(p, self.s)?)?;
        u64::try_from(v).ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstaCase {
    /// j = v: lambda is isometric to 1.
    CaseI,
    /// ell = 2, t >= 2, 2 || (q - 1): trinomial factors.
    CaseIIA,
    /// Remaining j < v: binomial factors of equal degree.
    CaseIIB,
}

/// The classification data driving the case dispatch: the ell-adic valuation
/// u of q - 1, v = min(t, u), the fixed ell-power root of unity zeta, the
/// class index j, and the reduced Frobenius shift s'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstaParams {
    pub length: ConstaLength,
    pub lambda: FieldElement,
    pub u: u32,
    pub v: u32,
    pub zeta: FieldElement,
    pub j: u32,
    pub s_prime: u32,
    pub case: ConstaCase,
}

/// Coefficient sets for the trinomial factorization of X^(2^t) + 1 when
/// q = 3 (mod 4): H_1 = {0}, then H_i = {+-((h+1)/2)^((q+1)/4)} with the
/// sign of the inner shift flipping at level e (2^e || q + 1), after which
/// the sets are stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlakeParams {
    pub e: u32,
    pub b: u32,
    pub c: u32,
    pub h_set: Vec<FieldElement>,
}

pub fn consta_params(
    field: &Arc<FiniteField>,
    length: ConstaLength,
    lambda: FieldElement,
) -> Result<ConstaParams> {
    let ConstaLength { ell, t, s } = length;
    if !is_prime(ell) {
        return Err(Error::EllNotPrime(ell));
    }
    let p = field.characteristic();
    if ell == p {
        return Err(Error::EllEqualsCharacteristic(p));
    }
    let n = length
        .checked_value(p)
        .ok_or(Error::FieldTooLarge(u128::MAX))?;
    if n as u128 > MAX_CONSTA_LENGTH {
        return Err(Error::FieldTooLarge(n as u128));
    }
    if lambda.is_zero() {
        return Err(Error::LogOfZero);
    }
    let q = field.order();
    let u = valuation(ell, q - 1);
    let v = t.min(u);
    let zeta = field.xi_pow(((q - 1) / ell.pow(u)) as i64);
    let l = field.discrete_log(lambda)?;
    let j = if l == 0 { v } else { v.min(valuation(ell, l)) };
    debug_assert!(isometric(
        field,
        length.value(p),
        lambda,
        field.pow(zeta, ell.pow(j))
    )?);
    let case = if j == v {
        ConstaCase::CaseI
    } else if ell == 2 && t >= 2 && u == 1 {
        debug_assert_eq!(j, 0);
        ConstaCase::CaseIIA
    } else {
        ConstaCase::CaseIIB
    };
    let m = field.extension_degree();
    Ok(ConstaParams {
        length,
        lambda,
        u,
        v,
        zeta,
        j,
        s_prime: s % m,
        case,
    })
}

pub fn blake_h_set(field: &Arc<FiniteField>, t: u32) -> Result<BlakeParams> {
    assert!(t >= 1);
    let q = field.order();
    if q % 4 != 3 {
        return Err(Error::FieldNotThreeModFour(q));
    }
    let e = valuation(2, q + 1);
    debug_assert!(e >= 2);
    let exp = (q + 1) / 4;
    let half = field.inv(field.from_int(2));
    let mut level: Vec<FieldElement> = vec![field.zero()];
    for i in 2..=t.min(e) {
        let shift = if i == e { field.neg_one() } else { field.one() };
        let mut next = Vec::with_capacity(2 * level.len());
        for &h in &level {
            let x = field.pow(field.mul(field.add(h, shift), half), exp);
            next.push(x);
            next.push(field.neg(x));
        }
        next.sort_by_key(|&x| field.canonical_key(x));
        next.dedup();
        assert_eq!(
            next.len(),
            2 * level.len(),
            "coefficient set must double below the stable level"
        );
        level = next;
    }
    let (b, c) = if t < e { (t, 0) } else { (e, 1) };
    debug_assert_eq!(level.len() as u64, 1 << (t.min(e) - 1));
    Ok(BlakeParams {
        e,
        b,
        c,
        h_set: level,
    })
}

/// All ell^j binomials X^(ell^(t-j)) - zeta^(i*ell^(u-j) + k*p^(m-s')), the
/// scaffold identity behind the binomial case (multiplied by scale^(...) when
/// transported along a witness).
fn binomial_constants(field: &Arc<FiniteField>, prm: &ConstaParams, k: u64) -> Vec<FieldElement> {
    let ell = prm.length.ell;
    let p = field.characteristic();
    let m = field.extension_degree();
    let zeta_order = ell.pow(prm.u);
    let shift = (k as u128 * checked_pow_u128(p, m - prm.s_prime).expect("q fits")
        % zeta_order as u128) as u64;
    (0..ell.pow(prm.j))
        .map(|i| {
            let e =
                (i as u128 * ell.pow(prm.u - prm.j) as u128 + shift as u128) % zeta_order as u128;
            field.pow(prm.zeta, e as u64)
        })
        .collect()
}

/// Closed-form factorization of X^(ell^t * p^s) - lambda.
pub fn factor_consta(
    field: &Arc<FiniteField>,
    length: ConstaLength,
    lambda: FieldElement,
) -> Result<Factorization> {
    let prm = consta_params(field, length, lambda)?;
    factor_consta_with_params(field, &prm)
}

pub fn factor_consta_with_params(
    field: &Arc<FiniteField>,
    prm: &ConstaParams,
) -> Result<Factorization> {
    let p = field.characteristic();
    let ConstaLength { ell, t, s } = prm.length;
    let n = prm.length.value(p);
    let mult = p.pow(s);
    let lambda = prm.lambda;

    let fact = match prm.case {
        ConstaCase::CaseI => {
            let w = witness(field, n, lambda, field.one())?;
            let a_inv = field.inv(w.a);
            let factors: Vec<(Poly, u64)> = if t == 0 {
                // length p^s: X^(p^s) - lambda = lambda * (aX - 1)^(p^s)
                vec![(Poly::x_pow_minus(field.clone(), 1, a_inv), mult)]
            } else if prm.v == t {
                // the root of unity already lives in the base field, so the
                // scaled factorization is linear: prod (X - a^-1 zeta^(i*ell^(u-t)))
                let step = ell.pow(prm.u - t);
                (0..ell.pow(t))
                    .map(|i| {
                        let root = field.mul(
                            a_inv,
                            field.pow(
                                prm.zeta,
                                (i as u128 * step as u128 % ell.pow(prm.u) as u128) as u64,
                            ),
                        );
                        (Poly::x_pow_minus(field.clone(), 1, root), mult)
                    })
                    .collect()
            } else {
                factor_xn_minus_one(field, n)?
                    .factors
                    .into_iter()
                    .map(|(f, m)| Ok((f.substitute_scale(w.a)?.monic().1, m)))
                    .collect::<Result<Vec<_>>>()?
            };
            Factorization::new(field.one(), factors, Provenance::CyclotomicCaseI)
        }
        ConstaCase::CaseIIA => {
            let w = witness(field, n, lambda, prm.zeta)?;
            debug_assert_eq!(field.pow(w.a, n), field.neg(field.inv(lambda)));
            let blake = blake_h_set(field, t)?;
            let hi = 1u64 << (t - blake.b + 1);
            let lo = 1u64 << (t - blake.b);
            let a_hi_inv = field.inv(field.pow(w.a, hi));
            let a_lo_inv = field.inv(field.pow(w.a, lo));
            let two = field.from_int(2);
            let last = if blake.c == 1 {
                field.neg_one()
            } else {
                field.one()
            };
            let factors = blake
                .h_set
                .iter()
                .map(|&h| {
                    // monic form of a^hi X^hi - 2 a^lo h X^lo + (-1)^c
                    let mut coeffs = vec![field.zero(); hi as usize + 1];
                    coeffs[hi as usize] = field.one();
                    coeffs[lo as usize] = field.neg(field.mul(field.mul(two, h), a_lo_inv));
                    coeffs[0] = field.mul(last, a_hi_inv);
                    let f = Poly::from_coeffs(field.clone(), coeffs);
                    assert_eq!(f.hamming_weight(), 3);
                    (f, mult)
                })
                .collect();
            Factorization::new(field.one(), factors, Provenance::BlakeCaseIIA)
        }
        ConstaCase::CaseIIB => {
            let target = field.pow(prm.zeta, ell.pow(prm.j));
            let w = witness(field, n, lambda, target)?;
            debug_assert_eq!(gcd(w.k, n), 1);
            let deg = ell.pow(t - prm.j);
            let a_deg_inv = field.inv(field.pow(w.a, deg));
            let factors = binomial_constants(field, prm, w.k)
                .into_iter()
                .map(|z| {
                    (
                        Poly::x_pow_minus(field.clone(), deg as usize, field.mul(a_deg_inv, z)),
                        mult,
                    )
                })
                .collect();
            Factorization::new(field.one(), factors, Provenance::BinomialCaseIIB)
        }
    };
    assert_eq!(
        fact.product(field),
        Poly::x_pow_minus(field.clone(), n as usize, lambda),
        "closed-form factorization must re-multiply exactly"
    );
    Ok(fact)
}
