//! Generic factorization oracle over GF(q): square-free decomposition (with
//! p-th-root extraction in characteristic p), distinct-degree splitting and
//! seeded equal-degree splitting, plus the binomial irreducibility criterion.
//!
//! This is the independent route every closed-form factorization in
//! `constafactor` is certified against, so nothing here may depend on that
//! module.

use std::sync::Arc;

use crate::arith::distinct_prime_factors;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::poly::Poly;

/// Which route produced a factorization.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    /// Square-free / distinct-degree / equal-degree splitting.
    Oracle,
    /// Scaled cyclotomic minimal polynomials (constants isometric to 1).
    CyclotomicCaseI,
    /// Trinomial family over the recursive coefficient sets (ell = 2 with
    /// exactly one factor of 2 in q - 1).
    BlakeCaseIIA,
    /// Equal-degree binomial family.
    BinomialCaseIIB,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::Oracle => "oracle",
            Provenance::CyclotomicCaseI => "i",
            Provenance::BlakeCaseIIA => "ii.a",
            Provenance::BinomialCaseIIB => "ii.b",
        }
    }
}

/// unit * prod factor_i^mult_i, with monic pairwise-distinct factors in
/// canonical order (degree, then coefficient discrete logs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u64)>,
    pub provenance: Provenance,
}

impl Factorization {
    pub fn new(
        unit: FieldElement,
        mut factors: Vec<(Poly, u64)>,
        provenance: Provenance,
    ) -> Factorization {
        factors.sort_by_key(|(a, _)| a.canonical_key());
        // merge duplicates
        let mut merged: Vec<(Poly, u64)> = Vec::with_capacity(factors.len());
        for (f, m) in factors {
            match merged.last_mut() {
                Some((g, n)) if *g == f => *n += m,
                _ => merged.push((f, m)),
            }
        }
        Factorization {
            unit,
            factors: merged,
            provenance,
        }
    }

    /// Re-multiply unit * prod factor^mult.
    pub fn product(&self, field: &Arc<FiniteField>) -> Poly {
        let mut acc = Poly::constant(field.clone(), self.unit);
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m)).expect("same field");
        }
        acc
    }

    /// Same multiset of (factor, multiplicity), ignoring provenance and unit.
    pub fn same_factors(&self, other: &Factorization) -> bool {
        self.factors == other.factors
    }

    pub fn total_degree(&self) -> u64 {
        self.factors
            .iter()
            .map(|(f, m)| f.degree().unwrap_or(0) as u64 * m)
            .sum()
    }
}

/// Tiny deterministic generator for equal-degree splitting.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// Complete factorization with the default seed 0.
pub fn factorize(f: &Poly) -> Result<Factorization> {
    factorize_seeded(f, 0)
}

pub fn factorize_seeded(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    let (unit, monic) = f.monic();
    if monic.degree() == Some(0) || monic.is_one() {
        return Ok(Factorization::new(unit, vec![], Provenance::Oracle));
    }
    let mut rng = SplitMix64(seed.wrapping_add(0x5eed));
    let mut factors: Vec<(Poly, u64)> = Vec::new();
    for (sqfree, mult) in squarefree_decomposition(&monic)? {
        for (part, deg) in distinct_degree_split(&sqfree)? {
            for irr in equal_degree_split(&part, deg, &mut rng)? {
                factors.push((irr, mult));
            }
        }
    }
    let fact = Factorization::new(unit, factors, Provenance::Oracle);
    debug_assert_eq!(fact.product(&field), *f);
    Ok(fact)
}

/// Monic square-free parts with multiplicities; handles vanishing
/// derivatives by coefficient-wise p-th roots.
fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, u64)>> {
    let mut out = Vec::new();
    let mut stack = vec![(f.clone(), 1u64)];
    while let Some((f, base_mult)) = stack.pop() {
        if f.degree() == Some(0) {
            continue;
        }
        let deriv = f.derivative();
        if deriv.is_zero() {
            let p = f.field().characteristic();
            stack.push((f.pth_root(), base_mult * p));
            continue;
        }
        let c = f.gcd(&deriv)?;
        let mut w = f.divrem(&c)?.0;
        let mut c = c;
        let mut i = 1u64;
        while !w.is_one() {
            let y = w.gcd(&c)?;
            let fac = w.divrem(&y)?.0;
            if fac.degree().unwrap_or(0) > 0 {
                out.push((fac, base_mult * i));
            }
            w = y;
            c = c.divrem(&w)?.0;
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            let p = f.field().characteristic();
            stack.push((c.pth_root(), base_mult * p));
        }
    }
    Ok(out)
}

/// Splits a monic square-free polynomial into (product of irreducibles of
/// degree d, d) parts.
fn distinct_degree_split(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field().clone();
    let q = field.order();
    let mut out = Vec::new();
    let mut v = f.clone();
    let x = Poly::monomial(field.clone(), field.one(), 1);
    let mut h = x.rem(&v)?;
    let mut d = 0usize;
    while v.degree().unwrap_or(0) >= 1 {
        d += 1;
        if 2 * d > v.degree().unwrap() {
            let deg = v.degree().unwrap();
            out.push((v, deg));
            break;
        }
        h = h.powmod(q, &v)?;
        let w = h.sub(&x)?.gcd(&v)?;
        if w.degree().unwrap_or(0) > 0 {
            v = v.divrem(&w)?.0;
            h = h.rem(&v)?;
            out.push((w, d));
        }
    }
    Ok(out)
}

/// Cantor-Zassenhaus on a monic square-free product of degree-d irreducibles.
fn equal_degree_split(f: &Poly, d: usize, rng: &mut SplitMix64) -> Result<Vec<Poly>> {
    let deg = f.degree().unwrap_or(0);
    if deg == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field().clone();
    let q = field.order();
    for _attempt in 0..100_000 {
        let t = random_poly_below(&field, deg, rng);
        if t.degree().unwrap_or(0) < 1 {
            continue;
        }
        let g = t.gcd(f)?;
        let split = if g.degree().unwrap_or(0) > 0 && g.degree().unwrap() < deg {
            Some(g)
        } else if field.characteristic() == 2 {
            // absolute trace: T + T^2 + T^4 + ... over GF(2^(m*d))
            let bits = field.extension_degree() as usize * d;
            let mut acc = t.clone();
            let mut cur = t.clone();
            for _ in 1..bits {
                cur = cur.powmod(2, f)?;
                acc = acc.add(&cur)?.rem(f)?;
            }
            let g = acc.gcd(f)?;
            (g.degree().unwrap_or(0) > 0 && g.degree().unwrap() < deg).then_some(g)
        } else {
            // odd q: norm to the degree-d subfield, then the (q-1)/2 power
            let mut norm = t.rem(f)?;
            let mut cur = t.rem(f)?;
            for _ in 1..d {
                cur = cur.powmod(q, f)?;
                norm = norm.mul(&cur)?.rem(f)?;
            }
            let w = norm.powmod((q - 1) / 2, f)?;
            let g = w.sub(&Poly::one(field.clone()))?.gcd(f)?;
            (g.degree().unwrap_or(0) > 0 && g.degree().unwrap() < deg).then_some(g)
        };
        if let Some(g) = split {
            let rest = f.divrem(&g)?.0;
            let mut out = equal_degree_split(&g, d, rng)?;
            out.extend(equal_degree_split(&rest, d, rng)?);
            return Ok(out);
        }
    }
    unreachable!("equal-degree splitting succeeds with probability ~1/2 per attempt")
}

fn random_poly_below(field: &Arc<FiniteField>, deg: usize, rng: &mut SplitMix64) -> Poly {
    let q = field.order();
    let coeffs = (0..deg)
        .map(|_| FieldElement::from_packed(rng.below(q)))
        .collect();
    Poly::from_coeffs(field.clone(), coeffs)
}

/// Irreducibility without a full split: f is reducible iff it has an
/// irreducible factor of degree at most deg(f)/2, which gcd(X^(q^d) - X, f)
/// detects at stage d. Rejects most reducible inputs at the first stages.
pub fn is_irreducible(f: &Poly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let field = f.field().clone();
    if f.coeff(0).is_zero() {
        return false;
    }
    let q = field.order();
    let x = Poly::monomial(field.clone(), field.one(), 1);
    let mut h = x.powmod(q, f).expect("nonzero");
    for d in 1..=n / 2 {
        let g = h.sub(&x).expect("same field").gcd(f).expect("nonzero");
        if !g.is_one() {
            return false;
        }
        if d < n / 2 {
            h = h.powmod(q, f).expect("nonzero");
        }
    }
    true
}

/// Binomial irreducibility: X^n - a is irreducible over GF(q) iff every
/// prime divisor of n divides ord(a) without dividing (q-1)/ord(a), and
/// 4 | n implies 4 | q - 1.
pub fn serret_irreducible(field: &Arc<FiniteField>, n: u64, a: FieldElement) -> bool {
    debug_assert!(n >= 2);
    debug_assert!(!a.is_zero());
    let q = field.order();
    let k = field.element_order(a).expect("nonzero");
    for r in distinct_prime_factors(n) {
        if !k.is_multiple_of(r) || ((q - 1) / k).is_multiple_of(r) {
            return false;
        }
    }
    if n.is_multiple_of(4) && !(q - 1).is_multiple_of(4) {
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    fn gf(p: u64, m: u32) -> Arc<FiniteField> {
        FiniteField::new(p, m).unwrap()
    }

    fn xn_minus(field: &Arc<FiniteField>, n: usize, c: FieldElement) -> Poly {
        Poly::x_pow_minus(field.clone(), n, c)
    }

    #[test]
    fn linear_is_its_own_factorization() {
        let f = gf(5, 2);
        let lin = xn_minus(&f, 1, f.one());
        let fact = factorize(&lin).unwrap();
        assert_eq!(fact.unit, f.one());
        assert_eq!(fact.factors, vec![(lin, 1)]);
    }

    #[test]
    fn x7_minus_1_over_gf25_matches_reference_factors() {
        let f = gf(5, 2);
        let fact = factorize(&xn_minus(&f, 7, f.one())).unwrap();
        assert_eq!(fact.factors.len(), 3);
        assert!(fact.factors.iter().all(|(_, m)| *m == 1));
        let texts: Vec<String> = fact.factors.iter().map(|(p, _)| p.format_text()).collect();
        assert!(texts.contains(&"X + xi^12".to_owned())); // X - 1
        assert!(texts.contains(&"X^3 + xi*X^2 + xi^17*X + xi^12".to_owned()));
        assert!(texts.contains(&"X^3 + xi^5*X^2 + xi^13*X + xi^12".to_owned()));
        assert_eq!(fact.product(&f), xn_minus(&f, 7, f.one()));
    }

    #[test]
    fn x6_minus_1_over_gf16_has_three_squared_linear_factors() {
        let f = gf(2, 4);
        let fact = factorize(&xn_minus(&f, 6, f.one())).unwrap();
        assert_eq!(fact.factors.len(), 3);
        assert!(fact
            .factors
            .iter()
            .all(|(p, m)| p.degree() == Some(1) && *m == 2));
        let roots: Vec<u64> = fact
            .factors
            .iter()
            .map(|(p, _)| f.discrete_log(f.neg(p.coeff(0))).unwrap())
            .collect();
        assert_eq!(roots, vec![0, 5, 10]);
    }

    #[test]
    fn deep_pth_power_handled() {
        // X^20 - xi^2 over GF(5^2) has a vanishing derivative
        let f = gf(5, 2);
        let fact = factorize(&xn_minus(&f, 20, f.xi_pow(2))).unwrap();
        assert_eq!(fact.total_degree(), 20);
        assert!(fact.factors.iter().all(|(_, m)| *m == 5));
        assert_eq!(fact.product(&f), xn_minus(&f, 20, f.xi_pow(2)));
        assert!(fact.factors.iter().all(|(p, _)| is_irreducible(p)));
    }

    #[test]
    fn factors_are_canonically_sorted_and_deterministic() {
        let f = gf(3, 2);
        let poly = xn_minus(&f, 8, f.generator());
        let a = factorize(&poly).unwrap();
        let b = factorize(&poly).unwrap();
        assert_eq!(a, b);
        let keys: Vec<Vec<u64>> = a.factors.iter().map(|(p, _)| p.canonical_key()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn irreducibility_spot_checks() {
        let f16 = gf(2, 4);
        assert!(is_irreducible(&xn_minus(&f16, 3, f16.xi_pow(8))));
        let f25 = gf(5, 2);
        assert!(!is_irreducible(&xn_minus(&f25, 2, f25.one())));
        let cubic = Poly::parse(&f25, "X^3 + xi*X^2 + xi^17*X + xi^12").unwrap();
        assert!(is_irreducible(&cubic));
    }

    #[test]
    fn serret_examples() {
        let f16 = gf(2, 4);
        assert!(serret_irreducible(&f16, 3, f16.xi_pow(8)));
        let f25 = gf(5, 2);
        assert!(serret_irreducible(&f25, 2, f25.generator()));
        assert!(!serret_irreducible(&f25, 2, f25.one()));
        assert!(!serret_irreducible(&f16, 2, f16.one()));
    }

    #[test]
    fn serret_agrees_with_oracle_small() {
        // cross-oracle agreement over two small fields and n up to 8
        for (p, m) in [(3u64, 2u32), (2, 4)] {
            let f = gf(p, m);
            for n in 2usize..=8 {
                for a in f.powers_of_xi() {
                    let want = is_irreducible(&xn_minus(&f, n, a));
                    assert_eq!(
                        serret_irreducible(&f, n as u64, a),
                        want,
                        "q={} n={} a={}",
                        f.order(),
                        n,
                        f.format_element(a)
                    );
                }
            }
        }
    }

    #[test]
    fn char2_equal_degree_split() {
        // (X^4 + X + 1)(X^4 + X^3 + 1) over GF(2): two quartics
        let f = gf(2, 1);
        let one = f.one();
        let a = Poly::from_coeffs(f.clone(), vec![one, one, f.zero(), f.zero(), one]);
        let b = Poly::from_coeffs(f.clone(), vec![one, f.zero(), f.zero(), one, one]);
        let prod = a.mul(&b).unwrap();
        let fact = factorize(&prod).unwrap();
        assert_eq!(fact.factors.len(), 2);
        assert!(fact
            .factors
            .iter()
            .all(|(p, m)| p.degree() == Some(4) && *m == 1));
        assert_eq!(fact.product(&f), prod);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let f = gf(2, 4);
        assert_eq!(
            factorize(&Poly::zero(f)).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn unit_carried_for_nonmonic_input() {
        let f = gf(5, 2);
        let poly = xn_minus(&f, 4, f.one()).scale(f.xi_pow(7));
        let fact = factorize(&poly).unwrap();
        assert_eq!(fact.unit, f.xi_pow(7));
        assert_eq!(fact.product(&f), poly);
    }

    #[test]
    fn gcd_is_multiplicity_aware() {
        let f = gf(7, 1);
        let lin = xn_minus(&f, 1, f.from_int(3));
        let quad = xn_minus(&f, 2, f.from_int(3));
        let poly = lin.pow(3).mul(&quad).unwrap();
        let fact = factorize(&poly).unwrap();
        let mults: Vec<u64> = fact.factors.iter().map(|&(_, m)| m).collect();
        assert_eq!(fact.total_degree(), 5);
        assert!(mults.contains(&3));
        assert_eq!(fact.product(&f), poly);
    }
}
