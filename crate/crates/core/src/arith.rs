//! Small integer and prime-field helpers shared by every module.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime divisors of `n` in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    let mut b = base % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero");
    pow_mod(a, p - 2, p)
}

/// `base^exp` for a possibly negative exponent; `base` must be a unit.
pub fn pow_signed(base: u64, exp: i64, p: u64) -> u64 {
    if exp >= 0 {
        pow_mod(base, exp as u64, p)
    } else {
        pow_mod(inv_mod(base, p), exp.unsigned_abs(), p)
    }
}

pub fn neg_mod(a: u64, p: u64) -> u64 {
    (p - a % p) % p
}

/// Reduce a signed integer into `0..p`.
pub fn reduce(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

/// Multiplicative order of a unit modulo `p`.
pub fn mult_order(a: u64, p: u64) -> u64 {
    let mut x = a % p;
    let mut k = 1;
    while x != 1 {
        x = x * a % p;
        k += 1;
    }
    k
}
