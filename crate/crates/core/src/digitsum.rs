//! Base-p digit expansions, the digit sum `s_p(n)`, and Legendre's formula.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorint::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitExpansion {
    pub n: u64,
    pub p: u64,
    /// Least significant digit first; empty for `n = 0`.
    pub digits: Vec<u64>,
    pub digit_sum: u64,
}

impl DigitExpansion {
    /// Reassembles `n` from the digits. `None` on overflow.
    pub fn value(&self) -> Option<u64> {
        self.digits
            .iter()
            .rev()
            .try_fold(0u64, |acc, &d| acc.checked_mul(self.p)?.checked_add(d))
    }
}

fn check_base(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("digit base {p} is not prime")))
    }
}

pub fn expand(n: u64, p: u64) -> Result<DigitExpansion> {
    check_base(p)?;
    let mut digits = Vec::new();
    let mut rest = n;
    while rest > 0 {
        digits.push(rest % p);
        rest /= p;
    }
    let digit_sum = digits.iter().sum();
    Ok(DigitExpansion {
        n,
        p,
        digits,
        digit_sum,
    })
}

/// `s_p(n)`.
pub fn digit_sum(n: u64, p: u64) -> Result<u64> {
    check_base(p)?;
    Ok(raw_digit_sum(n, p))
}

/// `s_p(n)` without validating the base. The caller guarantees `p >= 2`.
#[inline]
pub fn raw_digit_sum(mut n: u64, p: u64) -> u64 {
    debug_assert!(p >= 2);
    let mut sum = 0;
    while n >= p {
        sum += n % p;
        n /= p;
    }
    sum + n
}

/// `v_p(n!) = (n - s_p(n)) / (p - 1)`.
pub fn factorial_valuation(n: u64, p: u64) -> Result<u64> {
    let s = digit_sum(n, p)?;
    Ok((n - s) / (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorint::{factorize, primes_up_to};

    /// Digits by greedy subtraction of the largest power of `p`.
    fn greedy_digits(n: u64, p: u64) -> Vec<u64> {
        if n == 0 {
            return vec![];
        }
        let mut powers = vec![1u64];
        while let Some(next) = powers.last().unwrap().checked_mul(p) {
            if next > n {
                break;
            }
            powers.push(next);
        }
        let mut rest = n;
        let mut out = vec![0; powers.len()];
        for (i, &pw) in powers.iter().enumerate().rev() {
            while rest >= pw {
                rest -= pw;
                out[i] += 1;
            }
        }
        out
    }

    fn legendre_floor_sum(n: u64, p: u64) -> u64 {
        let mut total = 0;
        let mut pw = p;
        while pw <= n {
            total += n / pw;
            match pw.checked_mul(p) {
                Some(next) => pw = next,
                None => break,
            }
        }
        total
    }

    #[test]
    fn spec_examples() {
        let e = expand(561, 3).unwrap();
        assert_eq!(e.digits, greedy_digits(561, 3));
        assert_eq!(e.digits, vec![0, 1, 2, 2, 0, 2]);
        assert_eq!(e.digit_sum, 7);
        assert_eq!(expand(1729, 19).unwrap().digit_sum, 19);
        let e = expand(5, 7).unwrap();
        assert_eq!((e.digits, e.digit_sum), (vec![5], 5));

        assert_eq!(digit_sum(231, 11).unwrap(), 11);
        assert_eq!(digit_sum(11102, 61).unwrap(), 62);
        assert_eq!(digit_sum(0, 13).unwrap(), 0);
        assert!(expand(0, 2).unwrap().digits.is_empty());

        assert_eq!(factorial_valuation(4, 19).unwrap(), 0);
        assert_eq!(factorial_valuation(767, 37).unwrap(), 20);
    }

    #[test]
    fn valuation_of_six_factorial() {
        // 6! = 720; count factors of 3 by factorizing it
        let f = factorize(720).unwrap();
        let v3 = f.factors.iter().find(|&&(p, _)| p == 3).unwrap().1 as u64;
        assert_eq!(v3, 2);
        assert_eq!(factorial_valuation(6, 3).unwrap(), v3);
    }

    #[test]
    fn non_prime_base_rejected() {
        assert!(matches!(expand(10, 4), Err(Error::Domain(_))));
        assert!(matches!(digit_sum(10, 1), Err(Error::Domain(_))));
        assert!(matches!(factorial_valuation(10, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn congruence_mod_p_minus_one() {
        for p in primes_up_to(97) {
            for n in 1..=100_000u64 {
                assert_eq!(n % (p - 1), raw_digit_sum(n, p) % (p - 1));
            }
        }
    }

    #[test]
    fn shift_identity() {
        for m in 2..=100_000u64 {
            for p in factorize(m).unwrap().primes() {
                assert_eq!(
                    raw_digit_sum(m, p),
                    raw_digit_sum(m / p, p),
                    "m = {m}, p = {p}"
                );
            }
        }
    }

    #[test]
    fn legendre_consistency() {
        for p in primes_up_to(97) {
            for n in 0..=10_000u64 {
                let s = raw_digit_sum(n, p);
                assert_eq!((n - s) % (p - 1), 0);
                assert_eq!(factorial_valuation(n, p).unwrap(), legendre_floor_sum(n, p));
            }
        }
    }

    #[test]
    fn digit_sum_one_only_at_the_prime() {
        for n in 2..=10_000u64 {
            let f = factorize(n).unwrap();
            if !f.is_squarefree() {
                continue;
            }
            for p in primes_up_to(n) {
                assert_eq!(raw_digit_sum(n, p) == 1, n == p, "n = {n}, p = {p}");
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn expansion_is_canonical(n in proptest::num::u64::ANY, idx in 0usize..25) {
            let p = primes_up_to(97)[idx];
            let e = expand(n, p).unwrap();
            proptest::prop_assert_eq!(e.value(), Some(n));
            proptest::prop_assert!(e.digits.iter().all(|&d| d < p));
            proptest::prop_assert!(e.digits.last().map_or(n == 0, |&d| d != 0));
            proptest::prop_assert_eq!(e.digit_sum, raw_digit_sum(n, p));
        }
    }
}
