//! Denominators of Bernoulli numbers and polynomials.
//!
//! For `n >= 1`:
//!
//! * `D_n`  = denom(B_n), by von Staudt-Clausen;
//! * `D~_n` = denom(B_n(x) - B_n), the product of primes `p` with `s_p(n) >= p`;
//! * `DB_n` = denom(B_n(x)), the triple product of the parts of `n + 1`.
//!
//! `D~_n` splits into a part over primes dividing `n` and a part over primes
//! not dividing `n`. The primes of `n` with small digit sum form the
//! complementary part, so that `dividing * complementary = rad(n)`.
//!
//! All of these are squarefree and grow far beyond 64 bits, so they are kept
//! as sorted prime sets ([`SquarefreeProduct`]) and only turned into big
//! integers on demand. The exact-rational Bernoulli oracle at the bottom is
//! independent of the digit-sum formulas and is what the tests check them
//! against.

use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::digitsum::raw_digit_sum;
use crate::error::{Error, Result};
use crate::factorint::{factorize, is_prime, mul_mod, primes_up_to, Factorization};

/// Largest index accepted by the prime-scanning denominator functions.
pub const MAX_DENOM_INDEX: u64 = 100_000_000;

/// Default and hard ceiling for the exact-rational oracle.
pub const DEFAULT_ORACLE_BOUND: usize = 60;
pub const MAX_ORACLE_BOUND: usize = 200;

/// A squarefree positive integer stored as its ascending list of primes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SquarefreeProduct {
    primes: Vec<u64>,
}

impl SquarefreeProduct {
    pub fn one() -> Self {
        Self::default()
    }

    /// Panics if the primes are not strictly increasing.
    pub fn from_sorted(primes: Vec<u64>) -> Self {
        assert!(
            primes.windows(2).all(|w| w[0] < w[1]),
            "primes must be strictly increasing"
        );
        SquarefreeProduct { primes }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_one(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn to_biguint(&self) -> BigUint {
        self.primes.iter().fold(BigUint::one(), |acc, &p| acc * p)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.primes
            .iter()
            .try_fold(1u64, |acc, &p| acc.checked_mul(p))
    }

    /// lcm of two squarefree numbers; also their product when coprime.
    pub fn lcm(&self, other: &Self) -> Self {
        let mut primes = Vec::with_capacity(self.primes.len() + other.primes.len());
        let (mut i, mut j) = (0, 0);
        while i < self.primes.len() || j < other.primes.len() {
            let a = self.primes.get(i).copied().unwrap_or(u64::MAX);
            let b = other.primes.get(j).copied().unwrap_or(u64::MAX);
            primes.push(a.min(b));
            if a <= b {
                i += 1;
            }
            if b <= a {
                j += 1;
            }
        }
        SquarefreeProduct { primes }
    }

    pub fn is_coprime_to(&self, other: &Self) -> bool {
        !self.primes.iter().any(|&p| other.contains(p))
    }

    pub fn is_divisible_by(&self, m: u64) -> bool {
        m != 0
            && self
                .primes
                .iter()
                .fold(1 % m, |acc, &p| mul_mod(acc, p % m, m))
                == 0
    }
}

impl fmt::Display for SquarefreeProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_u64() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}", self.to_biguint()),
        }
    }
}

/// Serialized as a decimal string: values routinely exceed 64 bits.
impl Serialize for SquarefreeProduct {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn check_index(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("denominator index must be >= 1"));
    }
    if n > MAX_DENOM_INDEX {
        return Err(Error::Resource(format!(
            "denominator index {n} exceeds the scan limit {MAX_DENOM_INDEX}"
        )));
    }
    Ok(())
}

/// `D_n = denom(B_n)`.
pub fn denom_bernoulli_number(n: u64) -> Result<SquarefreeProduct> {
    check_index(n)?;
    if n == 1 {
        return Ok(SquarefreeProduct::from_sorted(vec![2]));
    }
    if n % 2 == 1 {
        return Ok(SquarefreeProduct::one());
    }
    let mut primes: Vec<u64> = divisors(&factorize(n)?)
        .into_iter()
        .map(|d| d + 1)
        .filter(|&p| is_prime(p))
        .collect();
    primes.sort_unstable();
    Ok(SquarefreeProduct::from_sorted(primes))
}

fn divisors(f: &Factorization) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in &f.factors {
        let len = out.len();
        let mut pw = 1;
        for _ in 0..e {
            pw *= p;
            for i in 0..len {
                out.push(out[i] * pw);
            }
        }
    }
    out
}

/// Primes that can satisfy `s_p(n) >= p`. For `p > (n + 1) / 2` either
/// `n < p` or `n = p + a` with `a <= p - 2`, and the digit sum is below `p`.
fn candidate_primes(n: u64) -> Vec<u64> {
    primes_up_to(n.div_ceil(2))
}

/// `D~_n = denom(B_n(x) - B_n)`, scanning every prime up to `n`.
pub fn denom_poly_no_const(n: u64) -> Result<SquarefreeProduct> {
    check_index(n)?;
    let primes = candidate_primes(n)
        .into_iter()
        .filter(|&p| raw_digit_sum(n, p) >= p)
        .collect();
    Ok(SquarefreeProduct::from_sorted(primes))
}

/// Whether `m | D~_n`, from the primes of `m` alone.
///
/// `D~_n` is squarefree, so `m` divides it exactly when `m` is squarefree and
/// every prime of `m` satisfies the digit-sum condition for `n`.
pub fn no_const_denominator_divisible_by(n: u64, m: u64) -> Result<bool> {
    check_index(n)?;
    let f = factorize(m)?;
    Ok(f.is_squarefree() && f.primes().all(|p| raw_digit_sum(n, p) >= p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DenominatorParts {
    pub n: u64,
    /// Primes `p | n` with `s_p(n) >= p`.
    pub dividing: SquarefreeProduct,
    /// Primes `p` not dividing `n` with `s_p(n) >= p`.
    pub non_dividing: SquarefreeProduct,
    /// Primes `p | n` with `s_p(n) < p`.
    pub complementary: SquarefreeProduct,
}

impl DenominatorParts {
    /// `D~_n = dividing * non_dividing`.
    pub fn no_const_denominator(&self) -> SquarefreeProduct {
        self.dividing.lcm(&self.non_dividing)
    }

    /// `DB_{n-1}`, the triple product.
    pub fn triple_product(&self) -> SquarefreeProduct {
        self.non_dividing
            .lcm(&self.dividing)
            .lcm(&self.complementary)
    }

    pub fn radical(&self) -> SquarefreeProduct {
        self.dividing.lcm(&self.complementary)
    }
}

fn split_own_primes(f: &Factorization) -> (Vec<u64>, Vec<u64>) {
    f.primes().partition(|&p| raw_digit_sum(f.value, p) >= p)
}

/// `D~|_n`: only needs the primes of `n`.
pub fn dividing_part(n: u64) -> Result<SquarefreeProduct> {
    check_index(n)?;
    Ok(SquarefreeProduct::from_sorted(
        split_own_primes(&factorize(n)?).0,
    ))
}

/// `D~∁_n`: only needs the primes of `n`.
pub fn complementary_part(n: u64) -> Result<SquarefreeProduct> {
    check_index(n)?;
    Ok(SquarefreeProduct::from_sorted(
        split_own_primes(&factorize(n)?).1,
    ))
}

pub fn denominator_parts(n: u64) -> Result<DenominatorParts> {
    check_index(n)?;
    let f = factorize(n)?;
    let (dividing, complementary) = split_own_primes(&f);
    let non_dividing = candidate_primes(n)
        .into_iter()
        .filter(|&p| !n.is_multiple_of(p) && raw_digit_sum(n, p) >= p)
        .collect();
    Ok(DenominatorParts {
        n,
        dividing: SquarefreeProduct::from_sorted(dividing),
        non_dividing: SquarefreeProduct::from_sorted(non_dividing),
        complementary: SquarefreeProduct::from_sorted(complementary),
    })
}

/// `DB_n = denom(B_n(x))` via the triple product over the parts of `n + 1`.
pub fn denom_poly(n: u64) -> Result<SquarefreeProduct> {
    check_index(n)?;
    let next = n.checked_add(1).ok_or(Error::Overflow("denom_poly"))?;
    Ok(denominator_parts(next)?.triple_product())
}

/// One row of the `denom` report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DenominatorRow {
    pub n: u64,
    pub d: SquarefreeProduct,
    pub d_tilde: SquarefreeProduct,
    pub d_poly: SquarefreeProduct,
    pub dividing: SquarefreeProduct,
    pub non_dividing: SquarefreeProduct,
    pub complementary: SquarefreeProduct,
}

pub fn denominator_row(n: u64) -> Result<DenominatorRow> {
    let parts = denominator_parts(n)?;
    Ok(DenominatorRow {
        n,
        d: denom_bernoulli_number(n)?,
        d_tilde: parts.no_const_denominator(),
        d_poly: denom_poly(n)?,
        dividing: parts.dividing,
        non_dividing: parts.non_dividing,
        complementary: parts.complementary,
    })
}

// ---------------------------------------------------------------------------
// exact-rational oracle

/// A rational number in lowest terms with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        ExactRational(BigRational::new(numer, denom))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn bernoulli_cache() -> &'static Mutex<Vec<BigRational>> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]))
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let prev = row[k - 1].clone();
        row.push(prev * BigInt::from(n - k + 1) / BigInt::from(k));
    }
    row
}

/// `B_0, ..., B_n` with `B_1 = -1/2`, from `sum_{k<=m} C(m+1, k) B_k = 0`.
fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while cache.len() <= n {
        let m = cache.len();
        let row = binomial_row(m + 1);
        let acc = cache
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (k, b)| acc + b * &row[k]);
        cache.push(-acc / BigInt::from(m + 1));
    }
    cache[..=n].to_vec()
}

/// Coefficients of `B_n(x)`, index `j` holding the coefficient of `x^j`.
pub fn bernoulli_polynomial_exact(n: usize, oracle_bound: usize) -> Result<Vec<ExactRational>> {
    if n == 0 {
        return Err(Error::domain("oracle index must be >= 1"));
    }
    if oracle_bound > MAX_ORACLE_BOUND {
        return Err(Error::Resource(format!(
            "oracle bound {oracle_bound} exceeds {MAX_ORACLE_BOUND}"
        )));
    }
    if n > oracle_bound {
        return Err(Error::Resource(format!(
            "oracle index {n} exceeds bound {oracle_bound}"
        )));
    }
    let b = bernoulli_numbers(n);
    let row = binomial_row(n);
    Ok((0..=n)
        .map(|j| ExactRational(&b[n - j] * &row[n - j]))
        .collect())
}

/// Denominators read off the exact polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleDenominators {
    /// denom(B_n)
    pub number: BigUint,
    /// denom(B_n(x) - B_n)
    pub without_constant: BigUint,
    /// denom(B_n(x))
    pub polynomial: BigUint,
}

pub fn oracle_denominators(n: usize, oracle_bound: usize) -> Result<OracleDenominators> {
    let coeffs = bernoulli_polynomial_exact(n, oracle_bound)?;
    let den = |c: &ExactRational| c.denominator().abs().to_biguint().expect("positive");
    let without_constant = coeffs[1..]
        .iter()
        .fold(BigUint::one(), |acc, c| acc.lcm(&den(c)));
    let number = den(&coeffs[0]);
    Ok(OracleDenominators {
        polynomial: without_constant.lcm(&number),
        number,
        without_constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorint::radical;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn spec_examples() {
        assert_eq!(denom_bernoulli_number(4).unwrap().to_u64(), Some(30));
        assert_eq!(denom_bernoulli_number(7).unwrap().to_u64(), Some(1));
        assert_eq!(
            denom_bernoulli_number(12).unwrap().primes(),
            &[2, 3, 5, 7, 13]
        );
        assert_eq!(denom_bernoulli_number(12).unwrap().to_u64(), Some(2730));

        assert_eq!(denom_poly_no_const(5).unwrap().to_u64(), Some(6));
        assert_eq!(denom_poly_no_const(9).unwrap().to_u64(), Some(10));
        assert_eq!(denom_poly_no_const(1).unwrap().to_u64(), Some(1));

        let p = denominator_parts(10).unwrap();
        assert_eq!(
            (
                p.dividing.to_u64(),
                p.non_dividing.to_u64(),
                p.complementary.to_u64()
            ),
            (Some(2), Some(1), Some(5))
        );
        assert_eq!(denominator_parts(561).unwrap().dividing.to_u64(), Some(561));
        assert_eq!(
            denominator_parts(198).unwrap().non_dividing.to_u64(),
            Some(2465)
        );

        assert_eq!(denom_poly(4).unwrap().to_u64(), Some(30));
        assert_eq!(denom_poly(9).unwrap().to_u64(), Some(10));
        assert_eq!(denom_poly(10).unwrap().to_u64(), Some(66));
    }

    #[test]
    fn ten_by_brute_force() {
        // p in {2,3,5,7}: s_2(10)=2, s_3(10)=2, s_5(10)=2, s_7(10)=4
        let (mut div, mut nondiv, mut comp) = (1, 1, 1);
        for p in [2u64, 3, 5, 7] {
            let s = raw_digit_sum(10, p);
            match (10 % p == 0, s >= p) {
                (true, true) => div *= p,
                (false, true) => nondiv *= p,
                (true, false) => comp *= p,
                _ => {}
            }
        }
        assert_eq!((div, nondiv, comp), (2, 1, 5));
        assert_eq!(
            div * nondiv,
            denom_poly_no_const(10).unwrap().to_u64().unwrap()
        );
        assert_eq!(div * comp, radical(10).unwrap());
    }

    #[test]
    fn opening_sequences() {
        let seq = |f: fn(u64) -> Result<SquarefreeProduct>| -> Vec<u64> {
            (1..=10).map(|n| f(n).unwrap().to_u64().unwrap()).collect()
        };
        assert_eq!(
            seq(denom_bernoulli_number),
            [2, 6, 1, 30, 1, 42, 1, 30, 1, 66]
        );
        assert_eq!(seq(denom_poly_no_const), [1, 1, 2, 1, 6, 2, 6, 3, 10, 2]);
        assert_eq!(seq(denom_poly), [2, 6, 2, 30, 6, 42, 6, 30, 10, 66]);
    }

    #[test]
    fn oracle_small_polynomials() {
        let c = bernoulli_polynomial_exact(1, DEFAULT_ORACLE_BOUND).unwrap();
        assert_eq!(c[0].to_string(), "-1/2");
        assert_eq!(c[1].to_string(), "1");

        let c = bernoulli_polynomial_exact(2, DEFAULT_ORACLE_BOUND).unwrap();
        let shown: Vec<String> = c.iter().map(|r| r.to_string()).collect();
        assert_eq!(shown, ["1/6", "-1", "1"]);
        let d = oracle_denominators(2, DEFAULT_ORACLE_BOUND).unwrap();
        assert_eq!((d.polynomial, d.without_constant), (big(6), big(1)));

        assert_eq!(
            oracle_denominators(6, DEFAULT_ORACLE_BOUND)
                .unwrap()
                .polynomial,
            big(42)
        );
        assert_eq!(
            oracle_denominators(12, DEFAULT_ORACLE_BOUND)
                .unwrap()
                .number,
            big(2730)
        );
    }

    #[test]
    fn oracle_errors() {
        assert!(matches!(
            bernoulli_polynomial_exact(61, 60),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            bernoulli_polynomial_exact(5, 201),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            bernoulli_polynomial_exact(0, 60),
            Err(Error::Domain(_))
        ));
        assert!(matches!(denom_poly(0), Err(Error::Domain(_))));
        assert!(matches!(
            denom_poly_no_const(MAX_DENOM_INDEX + 1),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn formulas_match_oracle() {
        for n in 1..=DEFAULT_ORACLE_BOUND {
            let o = oracle_denominators(n, DEFAULT_ORACLE_BOUND).unwrap();
            let n64 = n as u64;
            assert_eq!(
                denom_bernoulli_number(n64).unwrap().to_biguint(),
                o.number,
                "D_{n}"
            );
            assert_eq!(
                denom_poly_no_const(n64).unwrap().to_biguint(),
                o.without_constant,
                "D~_{n}"
            );
            assert_eq!(
                denom_poly(n64).unwrap().to_biguint(),
                o.polynomial,
                "DB_{n}"
            );
        }
    }

    #[test]
    fn oracle_cache_is_shared_across_threads() {
        let handles: Vec<_> = (0..4)
            .map(|i| {
                std::thread::spawn(move || oracle_denominators(30 + i, 60).unwrap().polynomial)
            })
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            assert_eq!(
                h.join().unwrap(),
                denom_poly(30 + i as u64).unwrap().to_biguint()
            );
        }
    }

    #[test]
    fn triple_product_three_routes() {
        for n in 1..=5000u64 {
            let triple = denom_poly(n).unwrap().to_biguint();
            let d_tilde = denom_poly_no_const(n).unwrap().to_biguint();
            let d = denom_bernoulli_number(n).unwrap().to_biguint();
            assert_eq!(triple, d_tilde.lcm(&d), "n = {n}");
            let next_tilde = denom_poly_no_const(n + 1).unwrap().to_biguint();
            assert_eq!(
                triple,
                next_tilde.lcm(&big(radical(n + 1).unwrap())),
                "n = {n}"
            );
        }
    }

    #[test]
    fn squarefree_iff_divides_previous_polynomial_denominator() {
        for m in 2..=100_000u64 {
            let sf = factorize(m).unwrap().is_squarefree();
            assert_eq!(sf, denom_poly(m - 1).unwrap().is_divisible_by(m), "m = {m}");
        }
    }

    #[test]
    fn successor_identities() {
        for n in 1..=5001u64 {
            let rad_next = big(radical(n + 1).unwrap());
            if n >= 3 && n % 2 == 1 {
                let lhs = denom_poly_no_const(n).unwrap().to_biguint();
                let rhs = denom_poly_no_const(n + 1)
                    .unwrap()
                    .to_biguint()
                    .lcm(&rad_next);
                assert_eq!(lhs, rhs, "D~ succ n = {n}");
            }
            if n >= 2 && n % 2 == 0 && n <= 5000 {
                let lhs = denom_poly(n).unwrap().to_biguint();
                let rhs = denom_poly(n + 1).unwrap().to_biguint().lcm(&rad_next);
                assert_eq!(lhs, rhs, "DB succ n = {n}");
            }
            if n < 5000 && !is_prime(n + 1) {
                let parts = denominator_parts(n).unwrap();
                assert!(parts
                    .no_const_denominator()
                    .is_divisible_by(radical(n + 1).unwrap()));
                assert!(parts.non_dividing.is_divisible_by(radical(n + 1).unwrap()));
            }
        }
    }

    #[test]
    fn parts_are_coprime_and_multiply_out() {
        for n in 1..=10_000u64 {
            let p = denominator_parts(n).unwrap();
            assert!(p.dividing.is_coprime_to(&p.non_dividing));
            assert!(p.dividing.is_coprime_to(&p.complementary));
            assert!(p.non_dividing.is_coprime_to(&p.complementary));
            assert_eq!(p.radical().to_u64(), Some(radical(n).unwrap()));
            assert_eq!(p.dividing, dividing_part(n).unwrap());
            assert_eq!(p.complementary, complementary_part(n).unwrap());
            if n <= 3000 {
                assert_eq!(p.no_const_denominator(), denom_poly_no_const(n).unwrap());
            }
        }
    }

    #[test]
    fn divisibility_shortcut_matches_full_product() {
        for n in 1..=3000u64 {
            let full = denom_poly_no_const(n).unwrap();
            for m in [n, n + 1, 2 * n + 1, 6, 30] {
                assert_eq!(
                    no_const_denominator_divisible_by(n, m).unwrap(),
                    full.is_divisible_by(m),
                    "n = {n}, m = {m}"
                );
            }
        }
    }

    #[test]
    fn serializes_as_decimal_string() {
        let v = serde_json::to_value(denom_poly(10).unwrap()).unwrap();
        assert_eq!(v, serde_json::json!("66"));
        let huge = (1..5000u64)
            .map(|n| denom_poly(n).unwrap())
            .find(|d| d.to_u64().is_none())
            .expect("some denominator beyond 64 bits");
        assert_eq!(
            serde_json::to_value(&huge).unwrap(),
            serde_json::json!(huge.to_biguint().to_string())
        );
    }
}
