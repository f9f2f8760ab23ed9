//! Constacyclic codes as ideals: enumeration of all generators from a
//! factorization of X^n - lambda, exhaustive weight enumerators at desk
//! scale, and transport of codes along isometry witnesses.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factorizer::Factorization;
use crate::field::{FieldElement, FiniteField};
use crate::isometry::IsometryWitness;
use crate::poly::Poly;

pub const DEFAULT_CODE_CAP: u128 = 1_000_000;
pub const DEFAULT_WEIGHT_CAP: u128 = 1 << 20;

/// One lambda-constacyclic code: the ideal of F_q[X]/(X^n - lambda)
/// generated by prod factor_i^(e_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstacyclicCode {
    pub n: u64,
    pub lambda: FieldElement,
    /// Exponent of each factor, aligned with `factors`.
    pub exponents: Vec<u64>,
    pub generator: Poly,
    pub dimension: u64,
    /// The canonical factor list of X^n - lambda this code is indexed by.
    pub factors: Arc<Vec<(Poly, u64)>>,
}

impl ConstacyclicCode {
    /// Number of codewords as q^dimension, when it fits in u128.
    pub fn size_u128(&self, field: &Arc<FiniteField>) -> Option<u128> {
        crate::arith::checked_pow_u128(field.order(), u32::try_from(self.dimension).ok()?)
    }

    /// `q^dim` in text.
    pub fn size_text(&self, field: &Arc<FiniteField>) -> String {
        format!("{}^{}", field.order(), self.dimension)
    }
}

/// Codeword weight counts A_0..A_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    pub counts: Vec<u64>,
}

impl WeightEnumerator {
    pub fn minimum_distance(&self) -> Option<u64> {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w as u64)
    }
}

/// All prod (mult_i + 1) codes, exponent vectors in lexicographic order
/// (last factor fastest). Includes the full space (all zero) and the zero
/// code (all maximal).
pub fn enumerate_codes(
    field: &Arc<FiniteField>,
    fact: &Factorization,
    n: u64,
    lambda: FieldElement,
    cap: u128,
) -> Result<Vec<ConstacyclicCode>> {
    let field = field.clone();
    debug_assert_eq!(
        fact.product(&field),
        Poly::x_pow_minus(field.clone(), n as usize, lambda),
        "factorization must belong to X^n - lambda"
    );
    let total: u128 = fact.factors.iter().map(|&(_, m)| m as u128 + 1).product();
    if total > cap {
        return Err(Error::TooManyCodes(total, cap));
    }
    let rho = fact.factors.len();
    let factors = Arc::new(fact.factors.clone());
    let mut out = Vec::with_capacity(total as usize);
    let mut exps = vec![0u64; rho];
    // prefix[i] = prod_{j < i} factor_j^(e_j); rebuilt lazily from the
    // lowest digit that changed
    let mut prefix: Vec<Poly> = vec![Poly::one(field.clone()); rho + 1];
    let mut dirty = 0usize;
    loop {
        for i in dirty..rho {
            prefix[i + 1] = prefix[i]
                .mul(&fact.factors[i].0.pow(exps[i]))
                .expect("same field");
        }
        let generator = prefix[rho].clone();
        let deg = generator.degree().unwrap_or(0) as u64;
        out.push(ConstacyclicCode {
            n,
            lambda,
            exponents: exps.clone(),
            dimension: n - deg,
            generator,
            factors: factors.clone(),
        });
        // odometer increment, last digit fastest
        let mut i = rho;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] <= fact.factors[i].1 {
                break;
            }
            exps[i] = 0;
        }
        dirty = i;
    }
}

/// Exhaustive weight enumerator: every message m(X) of degree < dimension is
/// encoded as m(X) * g(X) (degree < n, no reduction needed) and its Hamming
/// weight counted.
pub fn weight_enumerator(
    field: &Arc<FiniteField>,
    code: &ConstacyclicCode,
    cap: u128,
) -> Result<WeightEnumerator> {
    let size = code
        .size_u128(field)
        .ok_or(Error::CodeTooLarge(u128::MAX, cap))?;
    if size > cap {
        return Err(Error::CodeTooLarge(size, cap));
    }
    let n = code.n as usize;
    let dim = code.dimension as usize;
    let q = field.order();
    let mut counts = vec![0u64; n + 1];
    if dim == 0 {
        counts[0] = 1;
        return Ok(WeightEnumerator { counts });
    }
    let g = &code.generator;
    let gdeg = g.degree().unwrap_or(0);
    // walk messages as a base-q odometer, updating the codeword in place
    let mut digits = vec![0u64; dim];
    let mut word: Vec<FieldElement> = vec![field.zero(); n];
    let mut weight = 0usize;
    let mut remaining = size;
    loop {
        counts[weight] += 1;
        remaining -= 1;
        if remaining == 0 {
            return Ok(WeightEnumerator { counts });
        }
        // increment message, applying (new - old) * X^pos * g to the word
        let mut pos = 0usize;
        loop {
            let old = FieldElement::from_packed(digits[pos]);
            let new_packed = (digits[pos] + 1) % q;
            digits[pos] = new_packed;
            let delta = field.sub(FieldElement::from_packed(new_packed), old);
            for (j, &gc) in g.coeffs().iter().enumerate() {
                let slot = pos + j;
                let before = word[slot];
                let after = field.add(before, field.mul(delta, gc));
                word[slot] = after;
                match (before.is_zero(), after.is_zero()) {
                    (true, false) => weight += 1,
                    (false, true) => weight -= 1,
                    _ => {}
                }
            }
            if new_packed != 0 {
                break;
            }
            pos += 1;
            debug_assert!(pos < dim && pos + gdeg < n);
        }
    }
}

/// Transport a code along an isometry witness: the source code lives modulo
/// X^n - mu^k and maps to the code generated by monic g(aX) modulo
/// X^n - lambda. Dimension is preserved; factor exponents follow their
/// mapped factors.
pub fn image_code(
    field: &Arc<FiniteField>,
    w: &IsometryWitness,
    code: &ConstacyclicCode,
) -> Result<ConstacyclicCode> {
    if code.n != w.n || code.lambda != field.pow(w.mu, w.k) {
        return Err(Error::WitnessMismatch);
    }
    let generator = code.generator.substitute_scale(w.a)?.monic().1;
    let mut mapped: Vec<((Poly, u64), u64)> = code
        .factors
        .iter()
        .zip(&code.exponents)
        .map(|(&(ref f, m), &e)| Ok(((f.substitute_scale(w.a)?.monic().1, m), e)))
        .collect::<Result<_>>()?;
    mapped.sort_by_key(|((a, _), _)| a.canonical_key());
    let exponents = mapped.iter().map(|&(_, e)| e).collect();
    let factors = Arc::new(mapped.into_iter().map(|(fm, _)| fm).collect());
    Ok(ConstacyclicCode {
        n: code.n,
        lambda: w.lambda,
        exponents,
        generator,
        dimension: code.dimension,
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constafactor::{factor_consta, ConstaLength};
    use crate::factorizer::factorize;
    use crate::isometry::witness;

    fn gf(p: u64, m: u32) -> Arc<FiniteField> {
        FiniteField::new(p, m).unwrap()
    }

    #[test]
    fn three_codes_for_single_factor() {
        let f = gf(2, 4);
        let fact = factor_consta(&f, ConstaLength { ell: 3, t: 1, s: 1 }, f.generator()).unwrap();
        let codes = enumerate_codes(&f, &fact, 6, f.generator(), DEFAULT_CODE_CAP).unwrap();
        assert_eq!(codes.len(), 3);
        let dims: Vec<u64> = codes.iter().map(|c| c.dimension).collect();
        assert_eq!(dims, vec![6, 3, 0]);
        assert_eq!(codes[0].generator, Poly::one(f.clone()));
        assert_eq!(
            codes[2].generator,
            Poly::x_pow_minus(f.clone(), 6, f.generator())
        );
        for c in &codes {
            assert!(c
                .generator
                .divides(&Poly::x_pow_minus(f.clone(), 6, f.generator()))
                .unwrap());
        }
    }

    #[test]
    fn twenty_seven_cyclic_codes() {
        let f = gf(2, 4);
        let fact = factor_consta(&f, ConstaLength { ell: 3, t: 1, s: 1 }, f.one()).unwrap();
        let codes = enumerate_codes(&f, &fact, 6, f.one(), DEFAULT_CODE_CAP).unwrap();
        assert_eq!(codes.len(), 27);
        for c in &codes {
            let esum: u64 = c.exponents.iter().sum();
            assert_eq!(c.dimension, 6 - esum);
        }
        // generators pairwise distinct
        for (i, a) in codes.iter().enumerate() {
            for b in codes.iter().skip(i + 1) {
                assert_ne!(a.generator, b.generator);
            }
        }
        // lexicographic exponent order, last digit fastest
        assert_eq!(codes[0].exponents, vec![0, 0, 0]);
        assert_eq!(codes[1].exponents, vec![0, 0, 1]);
        assert_eq!(codes[26].exponents, vec![2, 2, 2]);
    }

    #[test]
    fn full_length_175_family() {
        // 26^3 = 17576 codes with sizes 25^(175 - i - 3j - 3k)
        let f = gf(5, 2);
        let fact = factor_consta(&f, ConstaLength { ell: 7, t: 1, s: 2 }, f.one()).unwrap();
        let codes = enumerate_codes(&f, &fact, 175, f.one(), DEFAULT_CODE_CAP).unwrap();
        assert_eq!(codes.len(), 17576);
        let degs: Vec<u64> = fact
            .factors
            .iter()
            .map(|(p, _)| p.degree().unwrap() as u64)
            .collect();
        for code in &codes {
            let used: u64 = code.exponents.iter().zip(&degs).map(|(e, d)| e * d).sum();
            assert_eq!(code.dimension, 175 - used);
        }
        assert_eq!(codes[0].dimension, 175);
        assert_eq!(codes.last().unwrap().dimension, 0);
    }

    #[test]
    fn cap_respected() {
        let f = gf(5, 2);
        let fact = factorize(&Poly::x_pow_minus(f.clone(), 20, f.one())).unwrap();
        let err = enumerate_codes(&f, &fact, 20, f.one(), 10).unwrap_err();
        assert!(matches!(err, Error::TooManyCodes(_, 10)));
    }

    #[test]
    fn lattice_containment() {
        // componentwise larger exponents generate smaller codes
        let f = gf(2, 4);
        let fact = factor_consta(&f, ConstaLength { ell: 3, t: 1, s: 1 }, f.one()).unwrap();
        let codes = enumerate_codes(&f, &fact, 6, f.one(), DEFAULT_CODE_CAP).unwrap();
        for a in &codes {
            for b in &codes {
                let le = a.exponents.iter().zip(&b.exponents).all(|(x, y)| x <= y);
                if le {
                    assert!(a.generator.divides(&b.generator).unwrap());
                }
            }
        }
    }

    #[test]
    fn weight_enumerator_trivial_codes() {
        let f = gf(2, 2);
        let lam = f.generator();
        let fact = factor_consta(&f, ConstaLength { ell: 3, t: 1, s: 1 }, lam).unwrap();
        let codes = enumerate_codes(&f, &fact, 6, lam, DEFAULT_CODE_CAP).unwrap();
        // zero code: only the zero word
        let zero = codes.iter().find(|c| c.dimension == 0).unwrap();
        let zero_we = weight_enumerator(&f, zero, DEFAULT_WEIGHT_CAP).unwrap();
        assert_eq!(zero_we.counts[0], 1);
        assert_eq!(zero_we.counts.iter().sum::<u64>(), 1);
        // full space: A_w = C(6, w) * 3^w
        let full = codes.iter().find(|c| c.dimension == 6).unwrap();
        let full_we = weight_enumerator(&f, full, DEFAULT_WEIGHT_CAP).unwrap();
        let choose =
            |n: u64, k: u64| -> u64 { (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) };
        for w in 0..=6u64 {
            assert_eq!(
                full_we.counts[w as usize],
                choose(6, w) * 3u64.pow(w as u32),
                "w={w}"
            );
        }
        assert_eq!(full_we.counts.iter().sum::<u64>(), 4u64.pow(6));
        // cap enforcement
        assert!(matches!(
            weight_enumerator(&f, full, 10).unwrap_err(),
            Error::CodeTooLarge(4096, 10)
        ));
    }

    #[test]
    fn weight_enumerator_against_direct_count() {
        // independent oracle: enumerate all multiples of g directly
        let f = gf(3, 1);
        let lam = f.from_int(2);
        let modulus = Poly::x_pow_minus(f.clone(), 4, lam);
        let fact = factorize(&modulus).unwrap();
        let codes = enumerate_codes(&f, &fact, 4, lam, DEFAULT_CODE_CAP).unwrap();
        for code in &codes {
            let fast = weight_enumerator(&f, code, DEFAULT_WEIGHT_CAP).unwrap();
            let dim = code.dimension as u32;
            let mut slow = vec![0u64; 5];
            for idx in 0..3u64.pow(dim) {
                let mut digits = Vec::new();
                let mut v = idx;
                for _ in 0..dim {
                    digits.push(FieldElement::from_packed(v % 3));
                    v /= 3;
                }
                let msg = Poly::from_coeffs(f.clone(), digits);
                let word = msg.mul(&code.generator).unwrap();
                slow[word.hamming_weight()] += 1;
            }
            assert_eq!(fast.counts, slow);
        }
    }

    #[test]
    fn minimum_distance_reading() {
        let we = WeightEnumerator {
            counts: vec![1, 0, 0, 4, 2],
        };
        assert_eq!(we.minimum_distance(), Some(3));
        let zero = WeightEnumerator { counts: vec![1] };
        assert_eq!(zero.minimum_distance(), None);
    }

    #[test]
    fn image_code_preserves_dimension_and_enumerator() {
        // codes modulo X^6 - mu^k transport to codes modulo X^6 - lambda
        let f = gf(2, 4);
        let w = witness(&f, 6, f.generator(), f.xi_pow(5)).unwrap();
        let source_lambda = f.pow(w.mu, w.k);
        let fact = factorize(&Poly::x_pow_minus(f.clone(), 6, source_lambda)).unwrap();
        let codes = enumerate_codes(&f, &fact, 6, source_lambda, DEFAULT_CODE_CAP).unwrap();
        for code in &codes {
            let img = image_code(&f, &w, code).unwrap();
            assert_eq!(img.dimension, code.dimension);
            assert_eq!(img.lambda, f.generator());
            assert!(img
                .generator
                .divides(&Poly::x_pow_minus(f.clone(), 6, f.generator()))
                .unwrap());
            if code.dimension <= 3 {
                let we_src = weight_enumerator(&f, code, DEFAULT_WEIGHT_CAP).unwrap();
                let we_img = weight_enumerator(&f, &img, DEFAULT_WEIGHT_CAP).unwrap();
                assert_eq!(we_src, we_img);
            }
        }
    }

    #[test]
    fn image_code_checks_witness() {
        let f = gf(2, 4);
        let w = witness(&f, 6, f.generator(), f.xi_pow(5)).unwrap();
        let fact = factorize(&Poly::x_pow_minus(f.clone(), 6, f.one())).unwrap();
        let codes = enumerate_codes(&f, &fact, 6, f.one(), DEFAULT_CODE_CAP).unwrap();
        assert_eq!(
            image_code(&f, &w, &codes[0]).unwrap_err(),
            Error::WitnessMismatch
        );
    }

    #[test]
    fn identity_witness_fixes_codes() {
        let f = gf(5, 2);
        let w = witness(&f, 4, f.xi_pow(4), f.xi_pow(4)).unwrap();
        assert_eq!(w.a, f.one());
        let lam = f.xi_pow(4);
        let fact = factorize(&Poly::x_pow_minus(f.clone(), 4, lam)).unwrap();
        let codes = enumerate_codes(&f, &fact, 4, lam, DEFAULT_CODE_CAP).unwrap();
        for code in &codes {
            let img = image_code(&f, &w, code).unwrap();
            assert_eq!(img.generator, code.generator);
        }
    }
}
