//! Exact factorization of 64-bit integers and the quantities derived from it.
//!
//! Small inputs are answered from a smallest-prime-factor table that is built
//! once and shared read-only. Larger inputs go through trial division by the
//! small primes, then deterministic Miller-Rabin and Brent's variant of
//! Pollard's rho for whatever cofactor remains.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exclusive upper bound accepted by [`factorize`].
pub const MAX_INPUT: u64 = 1 << 63;

/// Size of the shared smallest-prime-factor table.
pub const SHARED_SIEVE_LIMIT: u64 = 1 << 21;

/// Witness set that makes Miller-Rabin deterministic for every `n < 2^64`.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test valid on the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `p <= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    if limit < SHARED_SIEVE_LIMIT {
        let shared = shared_sieve().primes();
        let end = shared.partition_point(|&p| p <= limit);
        return shared[..end].to_vec();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        if let Some(start) = i.checked_mul(i) {
            for j in (start..=n).step_by(i) {
                composite[j] = true;
            }
        }
    }
    out
}

/// Smallest-prime-factor table for `0..limit`.
#[derive(Debug, Clone)]
pub struct SpfSieve {
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl SpfSieve {
    pub fn new(limit: u64) -> Self {
        assert!(limit <= u32::MAX as u64, "spf sieve limit must fit in u32");
        let n = limit as usize;
        let mut spf = vec![0u32; n.max(2)];
        let mut primes = Vec::new();
        // linear sieve: each composite is written exactly once
        for i in 2..n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let si = spf[i] as u64;
            for &p in &primes {
                if p > si || p as usize * i >= n {
                    break;
                }
                spf[p as usize * i] = p as u32;
            }
        }
        SpfSieve { spf, primes }
    }

    pub fn limit(&self) -> u64 {
        self.spf.len() as u64
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Smallest prime factor of `n`, or `None` for `n < 2` or `n` past the table.
    pub fn smallest_factor(&self, n: u64) -> Option<u64> {
        match self.spf.get(n as usize) {
            Some(&p) if p != 0 => Some(p as u64),
            _ => None,
        }
    }

    pub fn factorize(&self, n: u64) -> Option<Factorization> {
        if n == 0 || n >= self.limit() {
            return None;
        }
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let mut rest = n;
        while rest > 1 {
            let p = self.spf[rest as usize] as u64;
            rest /= p;
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Some(Factorization { value: n, factors })
    }
}

pub fn shared_sieve() -> &'static SpfSieve {
    static SIEVE: OnceLock<SpfSieve> = OnceLock::new();
    SIEVE.get_or_init(|| SpfSieve::new(SHARED_SIEVE_LIMIT))
}

/// A positive integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub value: u64,
    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    pub fn is_composite(&self) -> bool {
        self.value > 1 && !self.is_prime()
    }

    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    /// Greatest prime factor, with the convention `P(1) = 1`.
    pub fn greatest_prime(&self) -> u64 {
        self.factors.last().map_or(1, |&(p, _)| p)
    }

    pub fn divides_by(&self, p: u64) -> bool {
        self.factors.binary_search_by_key(&p, |&(q, _)| q).is_ok()
    }
}

fn check_input(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::Range {
            value: m,
            reason: "factorization requires m >= 1",
        });
    }
    if m >= MAX_INPUT {
        return Err(Error::Range {
            value: m,
            reason: "factorization requires m < 2^63",
        });
    }
    Ok(())
}

/// Complete prime factorization of `1 <= m < 2^63`.
pub fn factorize(m: u64) -> Result<Factorization> {
    check_input(m)?;
    let sieve = shared_sieve();
    if let Some(f) = sieve.factorize(m) {
        return Ok(f);
    }

    let mut primes: Vec<u64> = Vec::new();
    let mut rest = m;
    for &p in sieve.primes().iter().take_while(|&&p| p <= 1000) {
        if p * p > rest {
            break;
        }
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    let mut stack = vec![rest];
    while let Some(n) = stack.pop() {
        if n == 1 {
            continue;
        }
        if n < sieve.limit() {
            let f = sieve.factorize(n).expect("inside shared sieve");
            for (p, e) in f.factors {
                primes.extend(std::iter::repeat_n(p, e as usize));
            }
        } else if is_prime(n) {
            primes.push(n);
        } else {
            let d = find_divisor(n);
            stack.push(d);
            stack.push(n / d);
        }
    }
    primes.sort_unstable();

    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { value: m, factors })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Nontrivial divisor of an odd composite `n` (Brent's rho).
fn find_divisor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let isqrt = n.isqrt();
    if isqrt * isqrt == n {
        return isqrt;
    }
    for c in 1.. {
        let step = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (0u64, 2u64, 0u64);
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        const BLOCK: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BLOCK.min(r - k) {
                    y = step(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BLOCK;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = step(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

pub fn radical(m: u64) -> Result<u64> {
    Ok(factorize(m)?.radical())
}

pub fn is_squarefree(m: u64) -> Result<bool> {
    Ok(factorize(m)?.is_squarefree())
}

/// `P(m)`, with `P(1) = 1`.
pub fn greatest_prime_factor(m: u64) -> Result<u64> {
    Ok(factorize(m)?.greatest_prime())
}

/// `floor(m / P(m)^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShiftedIndex(pub u64);

pub fn shifted_index(m: u64) -> Result<ShiftedIndex> {
    if m < 2 {
        return Err(Error::domain("shifted index needs m >= 2"));
    }
    Ok(shifted_index_of(&factorize(m)?))
}

pub(crate) fn shifted_index_of(f: &Factorization) -> ShiftedIndex {
    let p = f.greatest_prime() as u128;
    ShiftedIndex((f.value as u128 / (p * p)) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_is_prime(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    fn flat(f: &Factorization) -> Vec<u64> {
        f.factors
            .iter()
            .flat_map(|&(p, e)| std::iter::repeat_n(p, e as usize))
            .collect()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(flat(&factorize(561).unwrap()), vec![3, 11, 17]);
        assert_eq!(flat(&factorize(10606681).unwrap()), vec![31, 43, 73, 109]);
        assert!(factorize(1).unwrap().factors.is_empty());

        assert_eq!(radical(12).unwrap(), 6);
        assert_eq!(radical(561).unwrap(), 561);
        assert_eq!(radical(1).unwrap(), 1);

        assert!(!is_squarefree(4).unwrap());
        assert!(is_squarefree(231).unwrap());
        assert!(is_squarefree(1).unwrap());

        assert_eq!(greatest_prime_factor(1045).unwrap(), 19);
        assert_eq!(greatest_prime_factor(1).unwrap(), 1);
        assert_eq!(greatest_prime_factor(1729).unwrap(), 19);

        assert_eq!(shifted_index(231).unwrap(), ShiftedIndex(1));
        assert_eq!(shifted_index(1729).unwrap(), ShiftedIndex(4));
        assert_eq!(shifted_index(5005).unwrap(), ShiftedIndex(29));
    }

    #[test]
    fn range_and_domain_errors() {
        assert!(matches!(factorize(0), Err(Error::Range { .. })));
        assert!(matches!(factorize(1 << 63), Err(Error::Range { .. })));
        assert!(matches!(shifted_index(1), Err(Error::Domain(_))));
    }

    #[test]
    fn large_inputs() {
        let f = factorize(8801128801).unwrap();
        assert_eq!(flat(&f), vec![181, 733, 66337]);
        // product of two primes near 2^31
        let (p, q) = (2147483647u64, 2147483629u64);
        assert_eq!(flat(&factorize(p * q).unwrap()), vec![q, p]);
        let big_prime = 9223372036854775783u64;
        assert!(is_prime(big_prime));
        assert!(factorize(big_prime).unwrap().is_prime());
        let square = 4294967291u64 * 4294967291u64 / 4;
        let f = factorize(square).unwrap();
        assert_eq!(
            f.factors.iter().map(|&(p, e)| p.pow(e)).product::<u64>(),
            square
        );
    }

    #[test]
    fn reconstruction_up_to_one_million() {
        for m in 2..=1_000_000u64 {
            let f = factorize(m).unwrap();
            let mut prod = 1u64;
            let mut last = 0;
            for &(p, e) in &f.factors {
                assert!(p > last && e >= 1);
                last = p;
                prod *= p.pow(e);
            }
            assert_eq!(prod, m);
            if m % 997 == 0 || m < 5000 {
                assert!(f.primes().all(trial_division_is_prime), "m = {m}");
            }
        }
    }

    #[test]
    fn reported_primes_pass_trial_division() {
        let mut seen = vec![false; 1_000_001];
        for m in 2..=1_000_000u64 {
            for p in factorize(m).unwrap().primes() {
                seen[p as usize] = true;
            }
        }
        for (p, &hit) in seen.iter().enumerate() {
            if hit {
                assert!(trial_division_is_prime(p as u64), "{p}");
            }
        }
    }

    #[test]
    fn radical_and_squarefree_agree() {
        for m in 1..=100_000u64 {
            let r = radical(m).unwrap();
            assert_eq!(m % r, 0);
            assert_eq!(r == m, is_squarefree(m).unwrap());
        }
    }

    #[test]
    fn shifted_index_min_formula() {
        for m in 2..=100_000u64 {
            let f = factorize(m).unwrap();
            let by_min = f.primes().map(|p| m / (p * p)).min().unwrap();
            assert_eq!(shifted_index(m).unwrap().0, by_min, "m = {m}");
        }
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..200_000u64 {
            assert_eq!(is_prime(n), trial_division_is_prime(n), "{n}");
        }
        // strong pseudoprimes to several small bases
        for n in [
            3215031751u64,
            2152302898747,
            3474749660383,
            341550071728321,
            3825123056546413051,
        ] {
            assert!(!is_prime(n), "{n}");
        }
    }

    #[test]
    fn primes_up_to_beyond_shared_sieve() {
        let ps = primes_up_to(SHARED_SIEVE_LIMIT + 100);
        assert!(ps.iter().all(|&p| is_prime(p)));
        assert_eq!(
            ps.len(),
            primes_up_to(SHARED_SIEVE_LIMIT - 1).len()
                + ps.iter().filter(|&&p| p >= SHARED_SIEVE_LIMIT).count()
        );
    }
}
