//! Conway polynomials over GF(p) and the deterministic fallback search.
//!
//! The table below pins the generator convention so that discrete-log
//! exponents printed by this crate line up with GAP's. Entries were produced
//! by `search_conway` (the standard definition: the minimal primitive
//! polynomial compatible with all subfield norms, in the signed-word
//! lexicographic order) and are frozen here so field construction does not
//! pay the search cost.

use crate::arith::{distinct_prime_factors, is_prime};

/// Raw polynomials over GF(p): coefficient vectors, ascending degree,
/// no trailing zeros. Enough machinery for irreducibility and order tests
/// without dragging in the full field types (which depend on this module).
mod gfp {

    pub fn trim(mut f: Vec<u64>) -> Vec<u64> {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + (x as u128 * y as u128 % p as u128) as u64) % p;
            }
        }
        trim(out)
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        let dm = m.len() - 1;
        let lead_inv = crate::arith::inv_mod(m[dm], p).expect("unit leading coefficient");
        while r.len() > dm {
            let c = (r.last().copied().unwrap() as u128 * lead_inv as u128 % p as u128) as u64;
            let shift = r.len() - 1 - dm;
            if c != 0 {
                for (j, &mj) in m.iter().enumerate() {
                    let sub = (c as u128 * mj as u128 % p as u128) as u64;
                    let idx = shift + j;
                    r[idx] = (r[idx] + p - sub) % p;
                }
            }
            r = trim(r);
            if r.len() <= dm {
                break;
            }
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin irreducibility test for monic f of degree >= 1.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let n = (f.len() - 1) as u64;
        if n == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        // X^(p^n) == X mod f
        let mut xp = x.clone();
        for _ in 0..n {
            xp = powmod(&xp, p, f, p);
        }
        if xp != x {
            return false;
        }
        for r in super::distinct_prime_factors(n) {
            let mut xe = x.clone();
            for _ in 0..(n / r) {
                xe = powmod(&xe, p, f, p);
            }
            // gcd(X^(p^(n/r)) - X, f) must be 1
            let mut diff = xe;
            if diff.len() < 2 {
                diff.resize(2, 0);
            }
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f, &trim(diff), p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    /// Is the residue class of X a generator of GF(p^m)* for irreducible f?
    pub fn x_is_primitive(f: &[u64], p: u64, order: u64, order_primes: &[u64]) -> bool {
        let x = vec![0u64, 1];
        // rules out f = X, whose root is 0
        if powmod(&x, order, f, p) != vec![1] {
            return false;
        }
        for &r in order_primes {
            if powmod(&x, order / r, f, p) == vec![1] {
                return false;
            }
        }
        true
    }
}

pub(crate) fn is_irreducible_gfp(f: &[u64], p: u64) -> bool {
    gfp::is_irreducible(f, p)
}

/// Evaluate the compatibility requirement of the Conway definition:
/// the norm of a root of `cand` down to GF(p^d) must be a root of `sub`,
/// i.e. sub(X^((p^m - 1)/(p^d - 1))) == 0 mod cand.
fn norm_compatible(cand: &[u64], sub: &[u64], p: u64, m: u32, d: u32) -> bool {
    let exp = (pow_mod_free(p, m) - 1) / (pow_mod_free(p, d) - 1);
    let xn = gfp::powmod(&[0, 1], exp, cand, p);
    let mut acc: Vec<u64> = vec![];
    // Horner over GF(p)[X]/cand
    for &c in sub.iter().rev() {
        acc = gfp::mulmod(&acc, &xn, cand, p);
        if c != 0 {
            if acc.is_empty() {
                acc = vec![c];
            } else {
                acc[0] = (acc[0] + c) % p;
            }
            acc = gfp::trim(acc);
        }
    }
    acc.is_empty()
}

fn pow_mod_free(p: u64, m: u32) -> u64 {
    p.pow(m)
}

/// The Conway candidate with signed word (c_{m-1}, ..., c_0):
/// f(X) = X^m + sum_i (-1)^(m-i) c_i X^i.
fn candidate_from_word(word: &[u64], p: u64, m: u32) -> Vec<u64> {
    let mut f = vec![0u64; m as usize + 1];
    f[m as usize] = 1;
    for (idx, &c) in word.iter().enumerate() {
        let i = m as usize - 1 - idx;
        let sign_neg = (m as usize - i) % 2 == 1;
        f[i] = if sign_neg { (p - c % p) % p } else { c % p };
    }
    f
}

/// Compute the Conway polynomial for GF(p^m) from the definition.
/// Quadratic-ish in p^m; intended for table generation and small fields.
pub fn search_conway(p: u64, m: u32) -> Vec<u64> {
    let q = pow_mod_free(p, m);
    let order_primes = distinct_prime_factors(q - 1);
    let subs: Vec<(u32, Vec<u64>)> = (1..m)
        .filter(|d| m.is_multiple_of(*d))
        .map(|d| (d, conway_polynomial(p, d).expect("subfield within cap")))
        .collect();
    let mut word = vec![0u64; m as usize];
    loop {
        let f = candidate_from_word(&word, p, m);
        if gfp::is_irreducible(&f, p)
            && gfp::x_is_primitive(&f, p, q - 1, &order_primes)
            && subs
                .iter()
                .all(|(d, sub)| norm_compatible(&f, sub, p, m, *d))
        {
            return f;
        }
        // next word in lexicographic order, last coordinate fastest
        let mut i = m as usize;
        loop {
            if i == 0 {
                unreachable!("no primitive polynomial found for GF({p}^{m})");
            }
            i -= 1;
            word[i] += 1;
            if word[i] < p {
                break;
            }
            word[i] = 0;
        }
    }
}

/// Deterministic non-Conway fallback: the first monic primitive polynomial in
/// plain base-p coefficient order. Used when (p, m) is outside the table and
/// above the on-the-fly search cap.
pub fn search_primitive(p: u64, m: u32) -> Vec<u64> {
    let q = pow_mod_free(p, m);
    let order_primes = distinct_prime_factors(q - 1);
    for t in 0..q {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut v = t;
        for _ in 0..m {
            f.push(v % p);
            v /= p;
        }
        f.push(1);
        if gfp::is_irreducible(&f, p) && gfp::x_is_primitive(&f, p, q - 1, &order_primes) {
            return f;
        }
    }
    unreachable!("GF({p}^{m}) has a primitive polynomial")
}

/// Conway polynomial for GF(p^m): from the embedded table when present, by
/// direct search when p^m is small enough, `None` otherwise.
pub fn conway_polynomial(p: u64, m: u32) -> Option<Vec<u64>> {
    if let Some(&(_, _, coeffs)) = CONWAY_TABLE.iter().find(|&&(tp, tm, _)| tp == p && tm == m) {
        return Some(coeffs.to_vec());
    }
    let q = (p as u128).checked_pow(m)?;
    if q <= 1 << 16 && is_prime(p) {
        return Some(search_conway(p, m));
    }
    None
}

include!("conway_table.rs");
