//! Small prime utilities shared by the arithmetic modules.

/// Trial-division primality test, adequate for desk-scale moduli.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes in the inclusive range `[lo, hi]`, in increasing order.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < lo {
        return Vec::new();
    }
    (lo.max(2)..=hi).filter(|&n| is_prime(n)).collect()
}

/// Prime factorization as `(p, multiplicity)` pairs in increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of distinct prime divisors.
pub fn omega(n: u64) -> u32 {
    factorize(n).len() as u32
}

/// Euler totient.
pub fn phi(n: u64) -> u64 {
    let mut out = n;
    for (p, _) in factorize(n) {
        out = out / p * (p - 1);
    }
    out
}

/// `b^e mod m` with `m > 0`.
pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut base = (b % m) as u128;
    let mut acc = 1u128;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// Modular inverse mod prime `q`.
pub fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

/// First prime `>= n` (n must leave room below u64::MAX; desk scale only).
pub fn next_prime(mut n: u64) -> u64 {
    if n < 2 {
        return 2;
    }
    loop {
        if is_prime(n) {
            return n;
        }
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(primes_in(2, 20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(is_prime(1009));
        assert!(is_prime(10007));
        assert!(!is_prime(1));
        assert!(!is_prime(1001));
    }

    #[test]
    fn factorization_and_phi() {
        assert_eq!(factorize(60), vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(phi(60), 16);
        assert_eq!(omega(60), 3);
        assert_eq!(phi(7), 6);
    }

    #[test]
    fn modular_ops() {
        assert_eq!(pow_mod(3, 6, 7), 1);
        assert_eq!(inv_mod(2, 5), 3);
        assert_eq!(next_prime(1000), 1009);
    }
}
