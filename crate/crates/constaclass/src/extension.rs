//! Extension fields GF(q^d) over a constructed base field, represented as
//! degree-d towers: elements are vectors over the base modulo a searched
//! irreducible polynomial. Used for roots of unity that live outside GF(q).
//!
//! Towers are indexed by degree, not by order: arithmetic never enumerates
//! the q^d elements, so degrees far beyond the exhaustive range work. A full
//! primitive element is only fixed when q^d is small enough to factor
//! q^d - 1 (the desk cap below); root-of-unity searches avoid that entirely
//! by exponentiating with limb-sized exponents.

use std::sync::Arc;

use crate::arith::{
    checked_pow_u128, distinct_prime_factors, limb_bits_msb, pow_minus_one_div_limbs,
};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};

/// Orders up to this bound get a precomputed primitive generator.
pub const MAX_GENERATOR_ORDER: u128 = 1 << 48;

/// Structural cap on tower degrees.
pub const MAX_EXTENSION_DEGREE: u32 = 64;

/// An element of the top field: exactly `degree` base-field coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtElement(Vec<FieldElement>);

impl ExtElement {
    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }
}

/// GF(q^d) as a tower over the base.
#[derive(Debug)]
pub struct FieldExtension {
    base: Arc<FiniteField>,
    degree: u32,
    modulus: Vec<FieldElement>,
    /// q^d when it fits.
    top_order: Option<u128>,
    /// Fixed primitive element, available below MAX_GENERATOR_ORDER.
    generator: Option<ExtElement>,
}

/// Construct GF(q^d) over `base`, memoized per (base, d).
pub fn extend_field(base: &Arc<FiniteField>, degree: u32) -> Result<Arc<FieldExtension>> {
    assert!(degree >= 1, "extension degree must be positive");
    {
        let cache = base.extensions.lock().unwrap();
        if let Some(ext) = cache.get(&degree) {
            return Ok(ext.clone());
        }
    }
    let ext = Arc::new(FieldExtension::build(base.clone(), degree)?);
    base.extensions
        .lock()
        .unwrap()
        .entry(degree)
        .or_insert_with(|| ext.clone());
    Ok(ext)
}

impl FieldExtension {
    fn build(base: Arc<FiniteField>, degree: u32) -> Result<FieldExtension> {
        if degree > MAX_EXTENSION_DEGREE {
            return Err(Error::FieldTooLarge(u128::MAX));
        }
        let top_order = checked_pow_u128(base.order(), degree);
        let modulus = if degree == 1 {
            vec![base.zero(), base.one()]
        } else {
            search_irreducible(&base, degree)
        };
        let mut ext = FieldExtension {
            base,
            degree,
            modulus,
            top_order,
            generator: None,
        };
        ext.generator = match top_order {
            Some(o) if o <= MAX_GENERATOR_ORDER => Some(ext.search_generator(o as u64)),
            _ => None,
        };
        Ok(ext)
    }

    /// First element of full order q^d - 1 in canonical packed order. For
    /// d = 1 this recovers the base generator.
    fn search_generator(&self, top_order: u64) -> ExtElement {
        if self.degree == 1 {
            return self.embed(self.base.generator());
        }
        let order_primes = distinct_prime_factors(top_order - 1);
        let q = self.base.order();
        // start past the constants: they lie in the base subfield
        for t in q..top_order {
            let cand = self.element_from_index(t as u128);
            let full = order_primes
                .iter()
                .all(|&r| self.pow(&cand, (top_order - 1) / r) != self.one());
            if full {
                return cand;
            }
        }
        unreachable!("the top field is cyclic")
    }

    fn element_from_index(&self, t: u128) -> ExtElement {
        let q = self.base.order() as u128;
        let mut v = t;
        let mut coords = Vec::with_capacity(self.degree as usize);
        for _ in 0..self.degree {
            coords.push(FieldElement::from_packed((v % q) as u64));
            v /= q;
        }
        ExtElement(coords)
    }

    pub fn base(&self) -> &Arc<FiniteField> {
        &self.base
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// q^d when it fits in u128.
    pub fn top_order(&self) -> Option<u128> {
        self.top_order
    }

    /// The fixed primitive element; None above the generator-order cap.
    pub fn generator(&self) -> Option<ExtElement> {
        self.generator.clone()
    }

    /// Deterministic element of multiplicative order exactly n. Requires n
    /// to divide q^d - 1 (guaranteed when d is the order of q modulo n).
    pub fn nth_root_of_unity(&self, n: u64) -> Result<ExtElement> {
        if self.degree == 1 {
            let q = self.base.order();
            if !(q - 1).is_multiple_of(n) {
                return Err(Error::CoefficientNotInBaseField);
            }
            return Ok(self.embed(self.base.xi_pow(((q - 1) / n) as i64)));
        }
        let exp = pow_minus_one_div_limbs(self.base.order(), self.degree, n)
            .ok_or(Error::CoefficientNotInBaseField)?;
        let bits = limb_bits_msb(&exp);
        let n_primes = distinct_prime_factors(n);
        let mut index: u128 = self.base.order() as u128;
        loop {
            let cand = self.element_from_index(index);
            index += 1;
            let z = self.pow_bits(&cand, &bits);
            if self.is_zero(&z) || z == self.one() {
                continue;
            }
            if self.pow(&z, n) != self.one() {
                continue;
            }
            if n_primes.iter().all(|&r| self.pow(&z, n / r) != self.one()) {
                return Ok(z);
            }
        }
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement(vec![self.base.zero(); self.degree as usize])
    }

    pub fn one(&self) -> ExtElement {
        self.embed(self.base.one())
    }

    pub fn is_zero(&self, x: &ExtElement) -> bool {
        x.0.iter().all(|c| c.is_zero())
    }

    /// The injective homomorphism base -> top (constant coordinate).
    pub fn embed(&self, x: FieldElement) -> ExtElement {
        let mut coords = vec![self.base.zero(); self.degree as usize];
        coords[0] = x;
        ExtElement(coords)
    }

    /// Inverse of `embed` on its image: Some(c) iff x is a base constant.
    pub fn as_base(&self, x: &ExtElement) -> Option<FieldElement> {
        if x.0[1..].iter().all(|c| c.is_zero()) {
            Some(x.0[0])
        } else {
            None
        }
    }

    pub fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| self.base.add(x, y))
                .collect(),
        )
    }

    pub fn neg(&self, a: &ExtElement) -> ExtElement {
        ExtElement(a.0.iter().map(|&x| self.base.neg(x)).collect())
    }

    pub fn sub(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let d = self.degree as usize;
        if d == 1 {
            return ExtElement(vec![self.base.mul(a.0[0], b.0[0])]);
        }
        let mut buf = vec![self.base.zero(); 2 * d - 1];
        for i in 0..d {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..d {
                buf[i + j] = self.base.add(buf[i + j], self.base.mul(a.0[i], b.0[j]));
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = buf[i];
            if c.is_zero() {
                continue;
            }
            buf[i] = self.base.zero();
            for j in 0..d {
                let sub = self.base.mul(c, self.modulus[j]);
                buf[i - d + j] = self.base.sub(buf[i - d + j], sub);
            }
        }
        buf.truncate(d);
        ExtElement(buf)
    }

    pub fn pow(&self, x: &ExtElement, mut e: u64) -> ExtElement {
        let mut acc = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Square-and-multiply with a most-significant-bit-first exponent.
    fn pow_bits(&self, x: &ExtElement, bits: &[bool]) -> ExtElement {
        let mut acc = self.one();
        for &bit in bits {
            acc = self.mul(&acc, &acc);
            if bit {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }

    /// Subfield criterion: x lies in the embedded base iff x^q = x.
    pub fn fixed_by_base_frobenius(&self, x: &ExtElement) -> bool {
        self.pow(x, self.base.order()) == *x
    }

    /// All q^d elements (exhaustive checks only; requires a small order).
    pub fn all_elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        let order = self
            .top_order
            .expect("exhaustive enumeration needs a small field");
        (0..order).map(|t| self.element_from_index(t))
    }
}

/// First monic irreducible polynomial of the given degree over the base, in
/// canonical coefficient order (packed odometer). Coefficients ascending,
/// length degree + 1.
fn search_irreducible(base: &Arc<FiniteField>, degree: u32) -> Vec<FieldElement> {
    let q = base.order() as u128;
    let d = degree as usize;
    let mut t: u128 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut v = t;
        for _ in 0..d {
            coeffs.push(FieldElement::from_packed((v % q) as u64));
            v /= q;
        }
        assert_eq!(
            v, 0,
            "irreducible polynomials of every degree exist below the bound"
        );
        coeffs.push(base.one());
        let poly = crate::poly::Poly::from_coeffs(base.clone(), coeffs.clone());
        if crate::factorizer::is_irreducible(&poly) {
            return coeffs;
        }
        t += 1;
    }
}
