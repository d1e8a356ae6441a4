//! Membership predicates for the digit-sum sets and the Carmichael function.
//!
//! * `SF`: squarefree `m > 1`.
//! * `S`: `m` in `SF` with `s_p(m) >= p` for every prime `p | m`.
//! * `C`: Carmichael numbers, tested both by Korselt's criterion and by the
//!   digit-sum criterion (`S` plus `s_p(m) = 1 mod (p - 1)`).
//! * `C'`: `m` in `SF` with `s_p(m) = p` for every `p | m`.
//! * `S_d`: `m` in `S` with `s_p(m) = d mod (p - 1)` for every `p | m`.
//! * `K_d`, `K^_d`: d-Knödel numbers and the superset without `m > d`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::digitsum::raw_digit_sum;
use crate::error::{Error, Result};
use crate::factorint::{factorize, pow_mod, Factorization};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn checked_lcm(a: u64, b: u64) -> Result<u64> {
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Overflow("lcm"))
}

pub fn in_sf_of(f: &Factorization) -> bool {
    f.value > 1 && f.is_squarefree()
}

/// Every prime passes `s_p(m) >= p`. Primes are tried smallest first.
pub fn in_s_of(f: &Factorization) -> bool {
    in_sf_of(f) && f.primes().all(|p| raw_digit_sum(f.value, p) >= p)
}

pub fn is_carmichael_digit_of(f: &Factorization) -> bool {
    in_sf_of(f)
        && f.primes().all(|p| {
            let s = raw_digit_sum(f.value, p);
            s >= p && s % (p - 1) == 1 % (p - 1)
        })
}

pub fn is_carmichael_korselt_of(f: &Factorization) -> bool {
    f.is_composite() && f.is_squarefree() && f.primes().all(|p| (f.value - 1).is_multiple_of(p - 1))
}

pub fn is_primary_carmichael_of(f: &Factorization) -> bool {
    in_sf_of(f) && f.primes().all(|p| raw_digit_sum(f.value, p) == p)
}

pub fn in_s_d_of(f: &Factorization, d: u64) -> bool {
    in_s_of(f)
        && f.primes()
            .all(|p| raw_digit_sum(f.value, p) % (p - 1) == d % (p - 1))
}

pub fn lambda_of(f: &Factorization) -> Result<u64> {
    f.factors.iter().try_fold(1u64, |acc, &(p, e)| {
        let pe1 = p.checked_pow(e - 1).ok_or(Error::Overflow("lambda"))?;
        let phi = pe1 * (p - 1);
        let part = if p == 2 && e >= 3 { phi / 2 } else { phi };
        checked_lcm(acc, part)
    })
}

pub fn rho_of(f: &Factorization) -> Result<u64> {
    Ok(match f.value {
        1 => 0,
        2 => 1,
        m => {
            let lambda = lambda_of(f)?;
            match m % lambda {
                0 => lambda,
                r => r,
            }
        }
    })
}

pub fn in_sf(m: u64) -> Result<bool> {
    Ok(in_sf_of(&factorize(m)?))
}

pub fn in_s(m: u64) -> Result<bool> {
    Ok(in_s_of(&factorize(m)?))
}

/// Korselt: composite, squarefree, and `p - 1 | m - 1` for all `p | m`.
pub fn is_carmichael_korselt(m: u64) -> Result<bool> {
    Ok(is_carmichael_korselt_of(&factorize(m)?))
}

/// Digit-sum criterion. Never tests compositeness: a prime fails on its own
/// since `s_p(p) = 1 < p`.
pub fn is_carmichael_digit(m: u64) -> Result<bool> {
    Ok(is_carmichael_digit_of(&factorize(m)?))
}

pub fn is_primary_carmichael(m: u64) -> Result<bool> {
    Ok(is_primary_carmichael_of(&factorize(m)?))
}

pub fn in_s_d(m: u64, d: u64) -> Result<bool> {
    if d == 0 {
        return Err(Error::domain("S_d needs d >= 1"));
    }
    Ok(in_s_d_of(&factorize(m)?, d))
}

/// Carmichael function: exponent of the unit group mod `m`.
pub fn carmichael_lambda(m: u64) -> Result<u64> {
    lambda_of(&factorize(m)?)
}

/// Least positive residue of `m` mod `lambda(m)`, with `rho(1) = 0`, `rho(2) = 1`.
pub fn rho(m: u64) -> Result<u64> {
    rho_of(&factorize(m)?)
}

/// Least `d >= 1` with `m` in `S_d`, by scanning `d` upward.
pub fn least_modular_index(m: u64) -> Result<u64> {
    let f = factorize(m)?;
    if !in_s_of(&f) {
        return Err(Error::domain(format!("{m} is not in S")));
    }
    let lambda = lambda_of(&f)?;
    (1..=lambda)
        .find(|&d| in_s_d_of(&f, d))
        .ok_or_else(|| Error::domain(format!("no modular index below lambda({m}) = {lambda}")))
}

/// Solves `x = a_i (mod n_i)` for the given residues; `None` when inconsistent.
/// Returns the least positive solution and the combined modulus.
pub fn solve_congruences(system: impl IntoIterator<Item = (u64, u64)>) -> Option<(u64, u64)> {
    fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
        if b == 0 {
            (a, 1, 0)
        } else {
            let (g, x, y) = ext_gcd(b, a % b);
            (g, y, x - (a / b) * y)
        }
    }
    let (mut a, mut n) = (0i128, 1i128);
    for (ai, ni) in system {
        let (ai, ni) = (ai as i128 % ni as i128, ni as i128);
        let (g, x, _) = ext_gcd(n, ni);
        if (ai - a) % g != 0 {
            return None;
        }
        let l = n / g * ni;
        let k = ((ai - a) / g % (ni / g)) * x % (ni / g);
        a = (a + n * k).rem_euclid(l);
        n = l;
    }
    let least = if a == 0 { n } else { a };
    Some((least as u64, n as u64))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub m: u64,
    #[serde(rename = "in_SF")]
    pub in_sf: bool,
    #[serde(rename = "in_S")]
    pub in_s: bool,
    #[serde(rename = "in_C")]
    pub in_c: bool,
    #[serde(rename = "in_Cprime")]
    pub in_cprime: bool,
    /// `(p, s_p(m), s_p(m) mod (p - 1))` for each prime `p | m`.
    pub per_prime: Vec<(u64, u64, u64)>,
    pub lambda: u64,
    pub rho: u64,
    /// Least `d` with `m` in `S_d`; present exactly when `m` is in `S`.
    pub least_d: Option<u64>,
}

impl MembershipReport {
    pub fn of(f: &Factorization) -> Result<Self> {
        let m = f.value;
        let per_prime: Vec<_> = f
            .primes()
            .map(|p| {
                let s = raw_digit_sum(m, p);
                (p, s, s % (p - 1))
            })
            .collect();
        let in_s = in_s_of(f);
        // the simultaneous residue of the digit sums, independent of m mod lambda
        let least_d = if in_s {
            solve_congruences(per_prime.iter().map(|&(p, _, r)| (r, p - 1))).map(|(d, _)| d)
        } else {
            None
        };
        Ok(MembershipReport {
            m,
            in_sf: in_sf_of(f),
            in_s,
            in_c: is_carmichael_digit_of(f),
            in_cprime: is_primary_carmichael_of(f),
            per_prime,
            lambda: lambda_of(f)?,
            rho: rho_of(f)?,
            least_d,
        })
    }
}

pub fn membership_report(m: u64) -> Result<MembershipReport> {
    MembershipReport::of(&factorize(m)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnodelQuery {
    pub m: u64,
    pub d: u64,
    pub in_k: bool,
    pub in_k_superset: bool,
}

/// d-Knödel test through `lambda(m) | m - d`.
///
/// `a^(m-d) = 1` for all units `a` exactly when the exponent is a multiple of
/// `lambda(m)`. For `m < d` the exponent is negative and the same holds with
/// `d - m`.
pub fn is_knodel(m: u64, d: u64) -> Result<KnodelQuery> {
    if m < 2 || d == 0 {
        return Err(Error::domain("Knödel query needs m > 1 and d >= 1"));
    }
    let f = factorize(m)?;
    let holds = f.is_composite() && m.abs_diff(d).is_multiple_of(lambda_of(&f)?);
    Ok(KnodelQuery {
        m,
        d,
        in_k: holds && m > d,
        in_k_superset: holds,
    })
}

/// Whether `a^|m-d| = 1 (mod m)` for every `a` in `[1, m)` coprime to `m`.
pub fn knodel_congruence_brute_force(m: u64, d: u64) -> bool {
    let exp = m.abs_diff(d);
    (1..m)
        .filter(|&a| gcd(a, m) == 1)
        .all(|a| pow_mod(a, exp, m) == 1 % m)
}

/// Named sets addressable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetTag {
    SF,
    S,
    SEven,
    C,
    Cprime,
    Sd(u64),
    Kd(u64),
}

impl SetTag {
    pub fn contains_factored(&self, f: &Factorization) -> Result<bool> {
        Ok(match *self {
            SetTag::SF => in_sf_of(f),
            SetTag::S => in_s_of(f),
            SetTag::SEven => f.value.is_multiple_of(2) && in_s_of(f),
            SetTag::C => is_carmichael_digit_of(f),
            SetTag::Cprime => is_primary_carmichael_of(f),
            SetTag::Sd(d) => in_s_d_of(f, d),
            SetTag::Kd(d) => {
                f.value > d && f.is_composite() && (f.value - d).is_multiple_of(lambda_of(f)?)
            }
        })
    }

    pub fn contains(&self, m: u64) -> Result<bool> {
        self.contains_factored(&factorize(m)?)
    }

    /// Whether every member of the set also lies in `S`.
    pub fn is_subset_of_s(&self) -> bool {
        !matches!(self, SetTag::SF | SetTag::Kd(_))
    }
}

impl fmt::Display for SetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetTag::SF => f.write_str("SF"),
            SetTag::S => f.write_str("S"),
            SetTag::SEven => f.write_str("S_even"),
            SetTag::C => f.write_str("C"),
            SetTag::Cprime => f.write_str("Cprime"),
            SetTag::Sd(d) => write!(f, "Sd={d}"),
            SetTag::Kd(d) => write!(f, "Kd={d}"),
        }
    }
}

impl FromStr for SetTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let index = |v: &str| -> Result<u64> {
            match v.parse::<u64>() {
                Ok(d) if d >= 1 => Ok(d),
                _ => Err(Error::domain(format!("bad set index in {s:?}"))),
            }
        };
        match s {
            "SF" => Ok(SetTag::SF),
            "S" => Ok(SetTag::S),
            "S_even" | "Seven" => Ok(SetTag::SEven),
            "C" => Ok(SetTag::C),
            "Cprime" | "C'" => Ok(SetTag::Cprime),
            _ => {
                if let Some(v) = s.strip_prefix("Sd=") {
                    Ok(SetTag::Sd(index(v)?))
                } else if let Some(v) = s.strip_prefix("Kd=") {
                    Ok(SetTag::Kd(index(v)?))
                } else {
                    Err(Error::domain(format!("unknown set {s:?}")))
                }
            }
        }
    }
}
