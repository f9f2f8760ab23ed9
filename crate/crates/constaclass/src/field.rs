//! Construction of GF(p^m) with a designated primitive element, element
//! arithmetic in the polynomial basis, and baby-step/giant-step discrete
//! logarithms.
//!
//! Elements are packed base-p digit vectors relative to their owning field;
//! all operations go through the [`FiniteField`] handle. The designated
//! generator `xi` is the residue class of the indeterminate of the Conway
//! modulus (or of the deterministically searched primitive modulus), so
//! printed exponents follow the GAP convention wherever a Conway polynomial
//! is known.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{self, distinct_prime_factors, gcd, is_prime};
use crate::conway;
use crate::error::{Error, Result};
use crate::extension::FieldExtension;

/// Hard cap on constructible base-field orders.
pub const MAX_FIELD_ORDER: u128 = 1 << 32;

/// A GF(p^m) element in polynomial-basis representation, packed as base-p
/// digits into a single word. Only meaningful together with its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The packed digit value; ranges over [0, q) bijectively.
    pub fn packed(self) -> u64 {
        self.0
    }

    pub fn from_packed(v: u64) -> FieldElement {
        FieldElement(v)
    }
}

struct BsgsTable {
    baby: HashMap<u64, u64>,
    stride: u64,
    giant: FieldElement,
}

/// Dense q x q lookup tables, built for small fields where they pay off.
struct OpTables {
    mul: Vec<u64>,
    add: Vec<u64>,
    neg: Vec<u64>,
}

const MAX_TABLED_ORDER: u64 = 256;

/// GF(p^m) with modulus and designated primitive element fixed at
/// construction. Immutable afterwards; wrap in `Arc` to share.
pub struct FiniteField {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    xi: FieldElement,
    q1_primes: Vec<u64>,
    tables: Option<OpTables>,
    dlog_table: OnceLock<BsgsTable>,
    pub(crate) extensions: Mutex<HashMap<u32, Arc<FieldExtension>>>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.m == other.m
            && self.modulus == other.modulus
            && self.xi == other.xi
    }
}
impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

impl FiniteField {
    /// Build GF(p^m) from the Conway table (falling back to the first
    /// primitive polynomial in base-p order when the table has no entry).
    pub fn new(p: u64, m: u32) -> Result<Arc<FiniteField>> {
        assert!(m >= 1, "extension degree must be positive");
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q128 = (p as u128).pow(m);
        if q128 > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q128));
        }
        let modulus =
            conway::conway_polynomial(p, m).unwrap_or_else(|| conway::search_primitive(p, m));
        Self::from_parts(p, m, modulus, None)
    }

    /// Build GF(p^m) with an explicit modulus and optional explicit
    /// generator, both verified.
    pub fn with_modulus(
        p: u64,
        m: u32,
        modulus: Vec<u64>,
        xi: Option<FieldElement>,
    ) -> Result<Arc<FiniteField>> {
        assert!(m >= 1, "extension degree must be positive");
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q128 = (p as u128).pow(m);
        if q128 > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q128));
        }
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        if modulus.len() != m as usize + 1
            || modulus[m as usize] != 1
            || !conway::is_irreducible_gfp(&modulus, p)
        {
            return Err(Error::InvalidModulus(p));
        }
        Self::from_parts(p, m, modulus, xi)
    }

    fn from_parts(
        p: u64,
        m: u32,
        modulus: Vec<u64>,
        xi: Option<FieldElement>,
    ) -> Result<Arc<FiniteField>> {
        let q = p.pow(m);
        let q1_primes = if q > 2 {
            distinct_prime_factors(q - 1)
        } else {
            vec![]
        };
        let mut field = FiniteField {
            p,
            m,
            q,
            modulus,
            xi: FieldElement::ZERO,
            q1_primes,
            tables: None,
            dlog_table: OnceLock::new(),
            extensions: Mutex::new(HashMap::new()),
        };
        if q <= MAX_TABLED_ORDER {
            let mut mul = vec![0u64; (q * q) as usize];
            let mut add = vec![0u64; (q * q) as usize];
            let mut neg = vec![0u64; q as usize];
            for a in 0..q {
                let ea = FieldElement(a);
                neg[a as usize] = field.neg_raw(ea).0;
                for b in 0..q {
                    let eb = FieldElement(b);
                    mul[(a * q + b) as usize] = field.mul_raw(ea, eb).0;
                    add[(a * q + b) as usize] = field.add_raw(ea, eb).0;
                }
            }
            field.tables = Some(OpTables { mul, add, neg });
        }
        let xi = match xi {
            Some(x) => x,
            None => {
                let x_class = field.indeterminate_class();
                if field.has_order_q_minus_1(x_class) {
                    x_class
                } else {
                    // bootstrap search in packed order; only reachable with a
                    // non-primitive custom modulus
                    (1..q)
                        .map(FieldElement)
                        .find(|&c| field.has_order_q_minus_1(c))
                        .expect("GF(q)* is cyclic")
                }
            }
        };
        if xi.0 >= q || !field.has_order_q_minus_1(xi) {
            return Err(Error::InvalidGenerator(q - 1));
        }
        field.xi = xi;
        Ok(Arc::new(field))
    }

    fn has_order_q_minus_1(&self, x: FieldElement) -> bool {
        if x.is_zero() {
            return false;
        }
        if self.pow(x, self.q - 1) != self.one() {
            return false;
        }
        self.q1_primes
            .iter()
            .all(|&r| self.pow(x, (self.q - 1) / r) != self.one())
    }

    /// Residue class of the modulus indeterminate.
    pub fn indeterminate_class(&self) -> FieldElement {
        if self.m == 1 {
            FieldElement((self.p - self.modulus[0]) % self.p)
        } else {
            FieldElement(self.p)
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients over GF(p), ascending degree, monic.
    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.xi
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn neg_one(&self) -> FieldElement {
        self.from_int(self.p - 1)
    }

    /// Embed an integer as a prime-subfield constant.
    pub fn from_int(&self, c: u64) -> FieldElement {
        FieldElement(c % self.p)
    }

    fn unpack(&self, x: FieldElement, out: &mut [u64; 32]) {
        let mut v = x.0;
        for slot in out.iter_mut().take(self.m as usize) {
            *slot = v % self.p;
            v /= self.p;
        }
    }

    fn pack(&self, digits: &[u64]) -> FieldElement {
        let mut v = 0u64;
        for &d in digits[..self.m as usize].iter().rev() {
            v = v * self.p + d;
        }
        FieldElement(v)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => FieldElement(t.add[(a.0 * self.q + b.0) as usize]),
            None => self.add_raw(a, b),
        }
    }

    fn add_raw(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut da, mut db) = ([0u64; 32], [0u64; 32]);
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        for i in 0..self.m as usize {
            da[i] = (da[i] + db[i]) % self.p;
        }
        self.pack(&da)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => FieldElement(t.neg[a.0 as usize]),
            None => self.neg_raw(a),
        }
    }

    fn neg_raw(&self, a: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        let mut da = [0u64; 32];
        self.unpack(a, &mut da);
        for d in da.iter_mut().take(self.m as usize) {
            *d = (self.p - *d) % self.p;
        }
        self.pack(&da)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => FieldElement(t.mul[(a.0 * self.q + b.0) as usize]),
            None => self.mul_raw(a, b),
        }
    }

    fn mul_raw(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        if self.m == 1 {
            return FieldElement(arith::mul_mod(a.0, b.0, self.p));
        }
        let m = self.m as usize;
        let (mut da, mut db) = ([0u64; 32], [0u64; 32]);
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        let mut buf = [0u64; 64];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                buf[i + j] = (buf[i + j] + da[i] * db[j]) % self.p;
            }
        }
        // reduce by the monic modulus
        for i in (m..2 * m - 1).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..m {
                let sub = c * self.modulus[j] % self.p;
                buf[i - m + j] = (buf[i - m + j] + self.p - sub) % self.p;
            }
        }
        self.pack(&buf)
    }

    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero (callers check).
    pub fn inv(&self, x: FieldElement) -> FieldElement {
        assert!(!x.is_zero(), "inverse of zero");
        self.pow(x, self.q - 2)
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b))
    }

    /// xi^k with k reduced modulo q-1 (negative k allowed).
    pub fn xi_pow(&self, k: i64) -> FieldElement {
        let n = (self.q - 1) as i64;
        let k = if n == 0 { 0 } else { k.rem_euclid(n) };
        self.pow(self.xi, k as u64)
    }

    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.p)
    }

    /// The unique y with y^p = x.
    pub fn pth_root(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.p.pow(self.m - 1))
    }

    fn bsgs(&self) -> &BsgsTable {
        self.dlog_table.get_or_init(|| {
            let n = self.q - 1;
            let stride = ((n as f64).sqrt().ceil() as u64).max(1);
            let mut baby = HashMap::with_capacity(stride as usize);
            let mut cur = self.one();
            for i in 0..stride {
                baby.entry(cur.0).or_insert(i);
                cur = self.mul(cur, self.xi);
            }
            let giant = self.inv(self.pow(self.xi, stride));
            BsgsTable {
                baby,
                stride,
                giant,
            }
        })
    }

    /// The k in [0, q-1) with xi^k = x, by baby-step/giant-step.
    pub fn discrete_log(&self, x: FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::LogOfZero);
        }
        if self.q == 2 {
            return Ok(0);
        }
        let t = self.bsgs();
        let mut y = x;
        let giants = (self.q - 1) / t.stride + 1;
        for j in 0..=giants {
            if let Some(&i) = t.baby.get(&y.0) {
                return Ok((j * t.stride + i) % (self.q - 1));
            }
            y = self.mul(y, t.giant);
        }
        unreachable!("every nonzero element is a power of xi")
    }

    /// Multiplicative order, via ord(xi^k) = (q-1)/gcd(k, q-1).
    pub fn element_order(&self, x: FieldElement) -> Result<u64> {
        let k = self.discrete_log(x)?;
        Ok((self.q - 1) / gcd(k, self.q - 1))
    }

    /// Sort key for the canonical element order: 0 first, then by discrete log.
    pub fn canonical_key(&self, x: FieldElement) -> u64 {
        if x.is_zero() {
            0
        } else {
            1 + self.discrete_log(x).expect("nonzero")
        }
    }

    /// All q elements in packed order (exhaustive sweeps).
    pub fn all_elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Nonzero elements walked as successive powers of xi: item k is xi^k.
    pub fn powers_of_xi(&self) -> PowersOfXi<'_> {
        PowersOfXi {
            field: self,
            cur: self.one(),
            remaining: self.q - 1,
        }
    }

    pub fn format_element(&self, x: FieldElement) -> String {
        if x.is_zero() {
            return "0".to_owned();
        }
        match self.discrete_log(x).expect("nonzero") {
            0 => "1".to_owned(),
            1 => "xi".to_owned(),
            k => format!("xi^{k}"),
        }
    }

    pub fn display(&self, x: FieldElement) -> impl fmt::Display {
        self.format_element(x)
    }

    /// Accepts `0`, `1`, `xi`, `xi^k` (k may be negative), bare integers
    /// (reduced into the prime subfield) and sums of `a*w^i` terms in the
    /// polynomial basis.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let err = || Error::Parse {
            what: "field element",
            input: s.to_owned(),
        };
        if s.is_empty() {
            return Err(err());
        }
        if s.contains('w') {
            let w = self.indeterminate_class();
            let mut acc = self.zero();
            for term in s.split('+') {
                let term = term.trim();
                let (coeff, power) = match term.split_once('*') {
                    Some((c, rest)) => (c.trim(), rest.trim()),
                    None => {
                        if term.starts_with('w') {
                            ("1", term)
                        } else {
                            (term, "")
                        }
                    }
                };
                let c: u64 = coeff.parse().map_err(|_| err())?;
                let e: u32 = if power.is_empty() {
                    0
                } else if power == "w" {
                    1
                } else {
                    power
                        .strip_prefix("w^")
                        .ok_or_else(err)?
                        .parse()
                        .map_err(|_| err())?
                };
                acc = self.add(acc, self.mul(self.from_int(c), self.pow(w, e as u64)));
            }
            return Ok(acc);
        }
        if let Some(rest) = s.strip_prefix("xi") {
            if rest.is_empty() {
                return Ok(self.xi);
            }
            let k: i64 = rest
                .strip_prefix('^')
                .ok_or_else(err)?
                .parse()
                .map_err(|_| err())?;
            return Ok(self.xi_pow(k));
        }
        if s == "-1" {
            return Ok(self.neg_one());
        }
        let c: u64 = s.parse().map_err(|_| err())?;
        Ok(self.from_int(c))
    }

    /// `GF(p^m)` or `GF(q)`, with optional `;modulus=...` (ascending GF(p)
    /// coefficients) and `;xi=<element>` overrides.
    pub fn parse_descriptor(desc: &str) -> Result<Arc<FiniteField>> {
        let desc = desc.trim();
        let err = || Error::Parse {
            what: "field descriptor",
            input: desc.to_owned(),
        };
        let mut parts = desc.split(';');
        let head = parts.next().ok_or_else(err)?.trim();
        let inner = head
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        let (p, m) = match inner.split_once('^') {
            Some((ps, ms)) => (
                ps.trim().parse::<u64>().map_err(|_| err())?,
                ms.trim().parse::<u32>().map_err(|_| err())?,
            ),
            None => {
                let q: u64 = inner.trim().parse().map_err(|_| err())?;
                if q < 2 {
                    return Err(err());
                }
                if is_prime(q) {
                    (q, 1)
                } else {
                    // allow GF(q) for prime powers
                    let fs = arith::factorize_u64(q);
                    if fs.len() != 1 {
                        return Err(err());
                    }
                    (fs[0].0, fs[0].1)
                }
            }
        };
        if m == 0 {
            return Err(err());
        }
        let mut modulus: Option<Vec<u64>> = None;
        let mut xi_text: Option<String> = None;
        for part in parts {
            let part = part.trim();
            if let Some(v) = part.strip_prefix("modulus=") {
                let coeffs = v
                    .split(',')
                    .map(|c| c.trim().parse::<u64>().map_err(|_| err()))
                    .collect::<Result<Vec<u64>>>()?;
                modulus = Some(coeffs);
            } else if let Some(v) = part.strip_prefix("xi=") {
                xi_text = Some(v.to_owned());
            } else if !part.is_empty() {
                return Err(err());
            }
        }
        match modulus {
            None if xi_text.is_none() => FiniteField::new(p, m),
            None => {
                let field = FiniteField::new(p, m)?;
                let xi = field.parse_element(xi_text.as_deref().unwrap())?;
                FiniteField::with_modulus(p, m, field.modulus.clone(), Some(xi))
            }
            Some(coeffs) => {
                let field = FiniteField::with_modulus(p, m, coeffs.clone(), None)?;
                let xi = match xi_text {
                    Some(t) => Some(field.parse_element(&t)?),
                    None => None,
                };
                match xi {
                    None => Ok(field),
                    Some(x) => FiniteField::with_modulus(p, m, coeffs, Some(x)),
                }
            }
        }
    }

    pub fn descriptor(&self) -> String {
        format!("GF({}^{})", self.p, self.m)
    }
}

pub struct PowersOfXi<'a> {
    field: &'a FiniteField,
    cur: FieldElement,
    remaining: u64,
}

impl Iterator for PowersOfXi<'_> {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.cur;
        self.cur = self.field.mul(self.cur, self.field.generator());
        Some(out)
    }
}
