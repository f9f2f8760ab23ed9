//! Dense univariate polynomials over a constructed finite field.
//!
//! Coefficients are stored ascending with no trailing zeros; the zero
//! polynomial is the empty vector. All operations are pure and check that
//! both operands share one field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};

#[derive(Clone)]
pub struct Poly {
    field: Arc<FiniteField>,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_text())
    }
}

impl Poly {
    pub fn zero(field: Arc<FiniteField>) -> Poly {
        Poly {
            field,
            coeffs: vec![],
        }
    }

    pub fn one(field: Arc<FiniteField>) -> Poly {
        let c = field.one();
        Poly::constant(field, c)
    }

    pub fn constant(field: Arc<FiniteField>, c: FieldElement) -> Poly {
        let coeffs = if c.is_zero() { vec![] } else { vec![c] };
        Poly { field, coeffs }
    }

    /// Trims trailing zeros.
    pub fn from_coeffs(field: Arc<FiniteField>, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn monomial(field: Arc<FiniteField>, c: FieldElement, degree: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Poly { field, coeffs }
    }

    /// X^n - c.
    pub fn x_pow_minus(field: Arc<FiniteField>, n: usize, c: FieldElement) -> Poly {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[0] = field.neg(c);
        coeffs[n] = field.one();
        Poly::from_coeffs(field, coeffs)
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(self.field.one())
    }

    /// Number of nonzero coefficients.
    pub fn hamming_weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::from_coeffs(self.field.clone(), coeffs))
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field.clone()));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly {
            field: self.field.clone(),
            coeffs: out,
        })
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Euclidean division: (quotient, remainder) with deg rem < deg divisor.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let f = &self.field;
        let dd = divisor.degree().unwrap();
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(f.clone()), self.clone()));
        }
        let lead_inv = f.inv(divisor.leading_coeff().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &mj) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(c, mj));
            }
        }
        Ok((
            Poly::from_coeffs(f.clone(), quot),
            Poly::from_coeffs(f.clone(), rem),
        ))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic().1)
    }

    /// Splits off the leading coefficient: (unit, monic polynomial).
    pub fn monic(&self) -> (FieldElement, Poly) {
        match self.leading_coeff() {
            None => (self.field.one(), self.clone()),
            Some(lc) => {
                if lc == self.field.one() {
                    (lc, self.clone())
                } else {
                    (lc, self.scale(self.field.inv(lc)))
                }
            }
        }
    }

    /// Square-and-multiply self^e mod `modulus`.
    pub fn powmod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        self.same_field(modulus)?;
        if modulus.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let mut acc = Poly::one(self.field.clone()).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
            base = base.mul(&base)?.rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u64) -> Poly {
        let mut acc = Poly::one(self.field.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        let mut acc = f.zero();
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// f(X) -> f(aX): coefficient i is multiplied by a^i. Preserves degree
    /// and Hamming weight; this is the polynomial form of the isometry map.
    pub fn substitute_scale(&self, a: FieldElement) -> Result<Poly> {
        if a.is_zero() {
            return Err(Error::ZeroScale);
        }
        let f = &self.field;
        let mut pw = f.one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let out = f.mul(c, pw);
                pw = f.mul(pw, a);
                out
            })
            .collect();
        Ok(Poly {
            field: f.clone(),
            coeffs,
        })
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as u64 % f.characteristic())))
            .collect();
        Poly::from_coeffs(f.clone(), coeffs)
    }

    /// For f with f' = 0 (so f = g(X^p)): the unique g with g^p = f.
    pub fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| f.pth_root(c))
            .collect();
        Poly::from_coeffs(f.clone(), coeffs)
    }

    /// Sort key for the canonical factor order: degree first, then the
    /// coefficient discrete logs from the leading term down.
    pub fn canonical_key(&self) -> Vec<u64> {
        let mut key = vec![self.coeffs.len() as u64];
        key.extend(
            self.coeffs
                .iter()
                .rev()
                .map(|&c| self.field.canonical_key(c)),
        );
        key
    }

    /// Canonical text: descending terms joined by " + ", zero terms omitted,
    /// unit coefficients omitted, e.g. `X^3 + xi*X^2 + xi^17*X + xi^12`.
    pub fn format_text(&self) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let celt = f.format_element(c);
            let part = match i {
                0 => celt,
                _ => {
                    let xs = if i == 1 {
                        "X".to_owned()
                    } else {
                        format!("X^{i}")
                    };
                    if celt == "1" {
                        xs
                    } else {
                        format!("{celt}*{xs}")
                    }
                }
            };
            parts.push(part);
        }
        parts.join(" + ")
    }

    /// Parses the canonical text format (terms joined by `+`).
    pub fn parse(field: &Arc<FiniteField>, s: &str) -> Result<Poly> {
        let err = || Error::Parse {
            what: "polynomial",
            input: s.to_owned(),
        };
        let s = s.trim();
        if s == "0" {
            return Ok(Poly::zero(field.clone()));
        }
        let mut acc = Poly::zero(field.clone());
        for term in s.split('+') {
            let term = term.trim();
            let (coeff_text, degree) = match term.find('X') {
                None => (term, 0usize),
                Some(pos) => {
                    let ctext = term[..pos].trim().trim_end_matches('*').trim();
                    let rest = &term[pos + 1..];
                    let deg = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(err)?
                            .trim()
                            .parse()
                            .map_err(|_| err())?
                    };
                    (if ctext.is_empty() { "1" } else { ctext }, deg)
                }
            };
            let c = field.parse_element(coeff_text)?;
            acc = acc.add(&Poly::monomial(field.clone(), c, degree))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use proptest::prelude::*;

    fn gf(p: u64, m: u32) -> Arc<FiniteField> {
        FiniteField::new(p, m).unwrap()
    }

    fn poly_of(field: &Arc<FiniteField>, packed: &[u64]) -> Poly {
        Poly::from_coeffs(
            field.clone(),
            packed
                .iter()
                .map(|&v| FieldElement::from_packed(v))
                .collect(),
        )
    }

    #[test]
    fn char2_square_of_linear() {
        let f = gf(2, 1);
        let xm1 = Poly::x_pow_minus(f.clone(), 1, f.one());
        let sq = xm1.mul(&xm1).unwrap();
        assert_eq!(sq, Poly::x_pow_minus(f.clone(), 2, f.one()));
        assert_eq!(sq.format_text(), "X^2 + 1");
    }

    #[test]
    fn division_from_table_row() {
        // (X^3 - xi^8) divides X^6 - xi over GF(2^4) with quotient X^3 + xi^8
        let f = gf(2, 4);
        let num = Poly::x_pow_minus(f.clone(), 6, f.generator());
        let den = Poly::x_pow_minus(f.clone(), 3, f.xi_pow(8));
        let (q, r) = num.divrem(&den).unwrap();
        assert!(r.is_zero());
        assert_eq!(q.format_text(), "X^3 + xi^8");
        assert!(den.divides(&num).unwrap());
    }

    #[test]
    fn gcd_hand_example() {
        // gcd(X^4 - 1, X^2 - 1) = X^2 - 1 over GF(5^2), per the Euclidean
        // algorithm by hand: X^4 - 1 = (X^2 + 1)(X^2 - 1) + 0
        let f = gf(5, 2);
        let a = Poly::x_pow_minus(f.clone(), 4, f.one());
        let b = Poly::x_pow_minus(f.clone(), 2, f.one());
        assert_eq!(a.gcd(&b).unwrap(), b);
    }

    #[test]
    fn divrem_by_zero_fails() {
        let f = gf(2, 4);
        let a = Poly::one(f.clone());
        assert_eq!(
            a.divrem(&Poly::zero(f.clone())).unwrap_err(),
            Error::DivisionByZeroPoly
        );
    }

    #[test]
    fn field_mismatch_detected() {
        let a = Poly::one(gf(2, 4));
        let b = Poly::one(gf(5, 2));
        assert_eq!(a.add(&b).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn substitute_scale_table_rows() {
        let f = gf(2, 4);
        let xm1 = Poly::x_pow_minus(f.clone(), 1, f.one());
        let scaled = xm1.substitute_scale(f.xi_pow(7)).unwrap();
        assert_eq!(scaled.coeff(1), f.xi_pow(7));
        assert_eq!(scaled.coeff(0), f.neg_one());
        let id = xm1.substitute_scale(f.one()).unwrap();
        assert_eq!(id, xm1);
        assert_eq!(
            xm1.substitute_scale(f.zero()).unwrap_err(),
            Error::ZeroScale
        );
    }

    #[test]
    fn substitute_scale_cross_checked_by_evaluation() {
        // f(aX) evaluated at 20 points must agree with f at a*point
        let f = gf(5, 2);
        let poly = {
            let c = [f.neg_one(), f.xi_pow(17), f.generator(), f.one()];
            Poly::from_coeffs(f.clone(), c.to_vec())
        };
        let a = f.xi_pow(17);
        let scaled = poly.substitute_scale(a).unwrap();
        for x in f.all_elements().take(20) {
            assert_eq!(scaled.eval(x), poly.eval(f.mul(a, x)));
        }
        assert_eq!(scaled.coeff(3), f.mul(f.one(), f.pow(a, 3)));
    }

    #[test]
    fn eval_roots() {
        let f16 = gf(2, 4);
        let c = Poly::x_pow_minus(f16.clone(), 3, f16.one());
        assert!(c.eval(f16.one()).is_zero());
        let lin = Poly::x_pow_minus(f16.clone(), 1, f16.xi_pow(5));
        assert!(lin.eval(f16.xi_pow(5)).is_zero());
        // over GF(5^2): xi^12 = -1, so xi^6 is a root of X^2 + 1
        let f25 = gf(5, 2);
        let sq = poly_of(&f25, &[1, 0, 1]);
        assert!(sq.eval(f25.xi_pow(6)).is_zero());
    }

    #[test]
    fn derivative_and_pth_root() {
        let f = gf(5, 2);
        // X^10 - xi has zero derivative; its 5th root is X^2 - xi^5
        let p10 = Poly::x_pow_minus(f.clone(), 10, f.generator());
        assert!(p10.derivative().is_zero());
        let root = p10.pth_root();
        assert_eq!(root, Poly::x_pow_minus(f.clone(), 2, f.xi_pow(5)));
        assert_eq!(root.pow(5), p10);
    }

    #[test]
    fn text_round_trip() {
        let f = gf(5, 2);
        let poly = {
            let c = [f.neg_one(), f.xi_pow(17), f.generator(), f.one()];
            Poly::from_coeffs(f.clone(), c.to_vec())
        };
        let text = poly.format_text();
        assert_eq!(text, "X^3 + xi*X^2 + xi^17*X + xi^12");
        assert_eq!(Poly::parse(&f, &text).unwrap(), poly);
        assert_eq!(Poly::parse(&f, "0").unwrap(), Poly::zero(f.clone()));
        assert_eq!(
            Poly::parse(&f, "X").unwrap(),
            Poly::monomial(f.clone(), f.one(), 1)
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn ring_axioms(a in proptest::collection::vec(0u64..25, 0..6),
                       b in proptest::collection::vec(0u64..25, 0..6),
                       c in proptest::collection::vec(0u64..25, 0..6)) {
            for field in [gf(2, 4), gf(5, 2)] {
                let clamp: Vec<u64> = a.iter().map(|&v| v % field.order()).collect();
                let pa = poly_of(&field, &clamp);
                let clamp: Vec<u64> = b.iter().map(|&v| v % field.order()).collect();
                let pb = poly_of(&field, &clamp);
                let clamp: Vec<u64> = c.iter().map(|&v| v % field.order()).collect();
                let pc = poly_of(&field, &clamp);
                // associativity and distributivity
                let ab_c = pa.mul(&pb).unwrap().mul(&pc).unwrap();
                let a_bc = pa.mul(&pb.mul(&pc).unwrap()).unwrap();
                prop_assert_eq!(ab_c, a_bc);
                let lhs = pa.mul(&pb.add(&pc).unwrap()).unwrap();
                let rhs = pa.mul(&pb).unwrap().add(&pa.mul(&pc).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn divrem_reconstructs_gf25(a in proptest::collection::vec(0u64..25, 0..8),
                                    b in proptest::collection::vec(0u64..25, 1..5)) {
            let f = gf(5, 2);
            let pa = poly_of(&f, &a);
            let pb = poly_of(&f, &b);
            prop_assume!(!pb.is_zero());
            let (q, r) = pa.divrem(&pb).unwrap();
            if let (Some(dr), Some(db)) = (r.degree(), pb.degree()) {
                prop_assert!(dr < db);
            }
            let back = q.mul(&pb).unwrap().add(&r).unwrap();
            prop_assert_eq!(back, pa);
        }

        #[test]
        fn substitute_scale_involution_and_weight(a in proptest::collection::vec(0u64..25, 0..8), k in 0i64..24) {
            let f = gf(5, 2);
            let pa = poly_of(&f, &a);
            let s = f.xi_pow(k);
            let scaled = pa.substitute_scale(s).unwrap();
            prop_assert_eq!(scaled.hamming_weight(), pa.hamming_weight());
            let back = scaled.substitute_scale(f.inv(s)).unwrap();
            prop_assert_eq!(back, pa);
        }
    }
}
