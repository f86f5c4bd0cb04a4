//! Integer helpers used across the crate.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn mobius(n: u64) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn checked_pow(base: u64, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

/// `base^exp`, panicking on overflow. Only for values known to be small.
pub fn pow(base: u64, exp: usize) -> u128 {
    checked_pow(base, exp).expect("integer power overflow")
}

/// (q^k - 1)/(q - 1): the number of points of PG(k-1, q).
pub fn gaussian_count(q: u64, k: usize) -> u128 {
    (0..k).map(|i| pow(q, i)).sum()
}

/// Largest `e` with `base^e <= x`; `x >= 1`, `base >= 2`.
pub fn floor_log(x: u128, base: u64) -> usize {
    let mut e = 0;
    let mut acc: u128 = 1;
    while let Some(next) = acc.checked_mul(base as u128) {
        if next > x {
            break;
        }
        acc = next;
        e += 1;
    }
    e
}

/// `Some(e)` when `x == base^e`.
pub fn exact_log(x: u128, base: u64) -> Option<usize> {
    let e = floor_log(x, base);
    (pow(base, e) == x).then_some(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_small_values() {
        let got: Vec<i32> = (1..=12).map(mobius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn logs() {
        assert_eq!(floor_log(17, 2), 4);
        assert_eq!(floor_log(1, 3), 0);
        assert_eq!(exact_log(243, 3), Some(5));
        assert_eq!(exact_log(244, 3), None);
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(63), vec![3, 7]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert!(is_prime(65521));
        assert!(!is_prime(65535));
    }
}
