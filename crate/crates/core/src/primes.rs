//! Trial-division primality and factoring. Inputs in this crate stay well
//! below 10^12, where a 6k±1 scan is instantaneous.

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m < 4 {
        return true;
    }
    if m % 2 == 0 || m % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d * d <= m {
        if m % d == 0 || m % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Largest prime `p <= m`, or `None` when `m < 2`.
pub fn largest_prime_at_most(m: u64) -> Option<u64> {
    (2..=m).rev().find(|&c| is_prime(c))
}

/// Largest prime `p` with `f(p) <= limit`, for `f` increasing in `p`.
pub(crate) fn largest_prime_with(limit: u64, f: impl Fn(u64) -> u64) -> Option<u64> {
    if f(2) > limit {
        return None;
    }
    // smallest p with f(p) > limit, then walk down to a prime
    let (mut lo, mut hi) = (2u64, 3u64);
    while f(hi) <= limit {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if f(mid) <= limit {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    largest_prime_at_most(lo)
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push(m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert!(is_prime(7));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(!is_prime(91));
        assert!(is_prime(997));
        let sieve: Vec<u64> = (0..100).filter(|&m| is_prime(m)).collect();
        assert_eq!(sieve.len(), 25);
        assert_eq!(sieve.last(), Some(&97));
    }

    #[test]
    fn largest_below() {
        assert_eq!(largest_prime_at_most(10), Some(7));
        assert_eq!(largest_prime_at_most(2), Some(2));
        assert_eq!(largest_prime_at_most(1), None);
        assert_eq!(largest_prime_at_most(0), None);
    }

    #[test]
    fn largest_under_map() {
        let q = |p: u64| p * p + p + 1;
        assert_eq!(largest_prime_with(6, q), None);
        assert_eq!(largest_prime_with(7, q), Some(2));
        assert_eq!(largest_prime_with(56, q), Some(5));
        assert_eq!(largest_prime_with(57, q), Some(7));
        assert_eq!(largest_prime_with(10_000, q), Some(97));
        assert_eq!(largest_prime_with(18, |p| 2 * p * p), Some(3));
    }

    #[test]
    fn divisors() {
        assert_eq!(prime_divisors(26), vec![2, 13]);
        assert_eq!(prime_divisors(7), vec![7]);
        assert_eq!(prime_divisors(360), vec![2, 3, 5]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
    }
}
