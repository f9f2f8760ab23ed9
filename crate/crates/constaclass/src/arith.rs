//! Integer helpers: primality, factoring and modular arithmetic on `u64`.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Modular inverse of `a` mod `n` when gcd(a, n) = 1.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u64)
}

/// Deterministic Miller-Rabin for the full u64 range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'outer: for a in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of n >= 1 as sorted (prime, exponent) pairs.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "cannot factor zero");
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += 1,
        None => out.push((p, 1)),
    };
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        while n.is_multiple_of(p) {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            push(m, &mut out);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

pub fn distinct_prime_factors(n: u64) -> Vec<u64> {
    factorize_u64(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors of `n`, sorted ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize_u64(n) {
        let prev = out.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            out.extend(prev.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    out
}

/// Number of positive divisors of `n`.
pub fn divisor_count(n: u64) -> u64 {
    factorize_u64(n)
        .into_iter()
        .map(|(_, e)| e as u64 + 1)
        .product()
}

/// Largest e with base^e dividing n; returns 0 when base does not divide n.
pub fn valuation(base: u64, mut n: u64) -> u32 {
    debug_assert!(base >= 2);
    let mut e = 0;
    while n.is_multiple_of(base) {
        n /= base;
        e += 1;
    }
    e
}

/// Multiplicative order of `a` modulo `n` for gcd(a, n) = 1; order mod 1 is 1.
pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    debug_assert_eq!(gcd(a % n, n), 1);
    let mut cur = a % n;
    let mut d = 1u64;
    while cur != 1 {
        cur = mul_mod(cur, a, n);
        d += 1;
    }
    d
}

pub fn checked_pow_u128(base: u64, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

/// (q^d - 1) / n as little-endian u64 limbs; None when n does not divide
/// q^d - 1. Sizes beyond u64 are needed for root-of-unity exponents in
/// large towers.
pub fn pow_minus_one_div_limbs(q: u64, d: u32, n: u64) -> Option<Vec<u64>> {
    // q^d
    let mut limbs: Vec<u64> = vec![1];
    for _ in 0..d {
        let mut carry: u128 = 0;
        for limb in limbs.iter_mut() {
            let v = *limb as u128 * q as u128 + carry;
            *limb = v as u64;
            carry = v >> 64;
        }
        if carry != 0 {
            limbs.push(carry as u64);
        }
    }
    // minus 1 (q^d >= 1)
    let mut i = 0;
    loop {
        if limbs[i] > 0 {
            limbs[i] -= 1;
            break;
        }
        limbs[i] = u64::MAX;
        i += 1;
    }
    while limbs.len() > 1 && *limbs.last().unwrap() == 0 {
        limbs.pop();
    }
    // divide by n
    let mut rem: u128 = 0;
    for limb in limbs.iter_mut().rev() {
        let cur = (rem << 64) | *limb as u128;
        *limb = (cur / n as u128) as u64;
        rem = cur % n as u128;
    }
    if rem != 0 {
        return None;
    }
    while limbs.len() > 1 && *limbs.last().unwrap() == 0 {
        limbs.pop();
    }
    Some(limbs)
}

/// Bits of a little-endian limb number, most significant first, without
/// leading zeros. Empty for zero.
pub fn limb_bits_msb(limbs: &[u64]) -> Vec<bool> {
    let mut bits = Vec::with_capacity(limbs.len() * 64);
    let mut started = false;
    for limb in limbs.iter().rev() {
        for i in (0..64).rev() {
            let bit = (limb >> i) & 1 == 1;
            if bit {
                started = true;
            }
            if started {
                bits.push(bit);
            }
        }
    }
    bits
}
