//! Polygonal numbers and the polygonal structure of `S`.
//!
//! With `p = P(m)` and `l = floor(m / p^2)`, a member `m` of `S` is a (quasi)
//! polygonal number `d * G^r_p` exactly when the digit sum `s_p(m) = eta*(p-1) + mu`
//! has `mu = d + e*(p-1)/2` for `(d, e)` in `{(1,0), (1,1), (2,0)}`. The rank is
//! then `r = (2/d) * (l + v_p(l!) + eta + d) + e`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::digitsum::{factorial_valuation, raw_digit_sum};
use crate::enumerate::{first_occurrence, s_members, EnumConfig};
use crate::error::{Error, Result};
use crate::factorint::{factorize, shifted_index_of, Factorization};
use crate::numbersets::{in_s_of, is_carmichael_digit_of, is_primary_carmichael_of, SetTag};

/// `G^r_n = (n^2 (r - 2) - n (r - 4)) / 2`.
pub fn polygonal(r: u64, n: u64) -> Result<u64> {
    if r < 3 || n < 1 {
        return Err(Error::domain(format!(
            "polygonal number needs r >= 3 and n >= 1, got r = {r}, n = {n}"
        )));
    }
    let (r, n) = (r as i128, n as i128);
    let twice = n
        .checked_mul(n)
        .and_then(|n2| n2.checked_mul(r - 2))
        .and_then(|a| a.checked_sub(n * (r - 4)))
        .ok_or(Error::Overflow("polygonal"))?;
    u64::try_from(twice / 2).map_err(|_| Error::Overflow("polygonal"))
}

/// The three (quasi) polygonal shapes reachable with `l <= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolygonalShape {
    Hexagonal,
    Octagonal,
    TwicePentagonal,
}

impl PolygonalShape {
    pub fn multiplier(self) -> u64 {
        match self {
            PolygonalShape::TwicePentagonal => 2,
            _ => 1,
        }
    }

    pub fn rank(self) -> u64 {
        match self {
            PolygonalShape::Hexagonal => 6,
            PolygonalShape::Octagonal => 8,
            PolygonalShape::TwicePentagonal => 5,
        }
    }

    /// `H_n`, `O_n` or `2 P_n`.
    pub fn value(self, n: u64) -> Result<u64> {
        polygonal(self.rank(), n)?
            .checked_mul(self.multiplier())
            .ok_or(Error::Overflow("polygonal shape"))
    }

    pub fn symbol(self, n: u64) -> String {
        match self {
            PolygonalShape::Hexagonal => format!("H_{n}"),
            PolygonalShape::Octagonal => format!("O_{n}"),
            PolygonalShape::TwicePentagonal => format!("2P_{n}"),
        }
    }
}

impl fmt::Display for PolygonalShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolygonalShape::Hexagonal => "hexagonal",
            PolygonalShape::Octagonal => "octagonal",
            PolygonalShape::TwicePentagonal => "twice_pentagonal",
        })
    }
}

impl FromStr for PolygonalShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hexagonal" => Ok(PolygonalShape::Hexagonal),
            "octagonal" => Ok(PolygonalShape::Octagonal),
            "twice_pentagonal" => Ok(PolygonalShape::TwicePentagonal),
            _ => Err(Error::domain(format!("unknown shape {s:?}"))),
        }
    }
}

fn require_s(f: &Factorization) -> Result<()> {
    if in_s_of(f) {
        Ok(())
    } else {
        Err(Error::domain(format!("{} is not in S", f.value)))
    }
}

/// Shape of `m` in `S` when `l(m) <= 2`, re-verified against the value.
pub fn classify_low_ell(m: u64) -> Result<Option<PolygonalShape>> {
    let f = factorize(m)?;
    require_s(&f)?;
    let p = f.greatest_prime();
    let shape = match shifted_index_of(&f).0 {
        1 => PolygonalShape::Hexagonal,
        2 if raw_digit_sum(m, p) == p => PolygonalShape::Octagonal,
        2 => PolygonalShape::TwicePentagonal,
        _ => return Ok(None),
    };
    if shape.value(p)? != m {
        return Err(Error::domain(format!(
            "{m} failed the {shape} identity at p = {p}"
        )));
    }
    Ok(Some(shape))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonalForm {
    pub m: u64,
    /// Quasi multiplier, 1 or 2.
    pub d: u64,
    pub r: u64,
    pub p: u64,
    pub ell: u64,
    pub eta: u64,
    pub mu: u64,
    pub e: u64,
}

impl PolygonalForm {
    /// `H_17`, `2O_31`, `G^10_17`, `2G^15_17`, ...
    pub fn label(&self) -> String {
        let base = match self.r {
            5 => format!("P_{}", self.p),
            6 => format!("H_{}", self.p),
            8 => format!("O_{}", self.p),
            r => format!("G^{r}_{}", self.p),
        };
        if self.d == 2 {
            format!("2{base}")
        } else {
            base
        }
    }
}

/// Decomposition of a member of `S`; `Ok(None)` when `mu` admits no `(d, e)`.
pub fn decompose_factored(f: &Factorization) -> Result<Option<PolygonalForm>> {
    require_s(f)?;
    let m = f.value;
    let p = f.greatest_prime();
    if p < 5 {
        return Err(Error::domain(format!(
            "greatest prime factor of {m} is below 5"
        )));
    }
    let ell = shifted_index_of(f).0;
    let s = raw_digit_sum(m, p);
    let (eta, mu) = (s / (p - 1), s % (p - 1));
    assert!(eta >= 1, "s_p(m) >= p forces eta >= 1");

    let (d, e) = match mu {
        1 => (1, 0),
        2 => (2, 0),
        _ if mu == 1 + (p - 1) / 2 => (1, 1),
        _ => return Ok(None),
    };
    let inner = [ell, factorial_valuation(ell, p)?, eta, d]
        .into_iter()
        .try_fold(0u64, u64::checked_add)
        .ok_or(Error::Overflow("polygonal rank"))?;
    let r = (2 * inner)
        .checked_div(d)
        .and_then(|v| v.checked_add(e))
        .ok_or(Error::Overflow("polygonal rank"))?;
    let value = polygonal(r, p)?
        .checked_mul(d)
        .ok_or(Error::Overflow("polygonal"))?;
    if value != m {
        return Err(Error::domain(format!("{m} != {d} * G^{r}_{p}")));
    }
    Ok(Some(PolygonalForm {
        m,
        d,
        r,
        p,
        ell,
        eta,
        mu,
        e,
    }))
}

pub fn polygonal_decomposition(m: u64) -> Result<Option<PolygonalForm>> {
    decompose_factored(&factorize(m)?)
}

/// Every Carmichael number `m` equals `G^r_p` with `p = P(m)`.
pub fn carmichael_polygonal(m: u64) -> Result<PolygonalForm> {
    let f = factorize(m)?;
    if !is_carmichael_digit_of(&f) {
        return Err(Error::domain(format!("{m} is not a Carmichael number")));
    }
    let form = decompose_factored(&f)?
        .ok_or_else(|| Error::domain(format!("{m}: digit sum of P(m) admits no form")))?;
    if (form.d, form.e) != (1, 0) {
        return Err(Error::domain(format!("{m}: expected d = 1, e = 0")));
    }
    if is_primary_carmichael_of(&f) && form.eta != 1 {
        return Err(Error::domain(format!(
            "{m} is primary but eta = {}",
            form.eta
        )));
    }
    Ok(form)
}

/// `alpha = 1 / sqrt(offset - 1/q) = sqrt(q / (offset*q - 1))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaConstant {
    /// 2 for the hexagonal shape, 3 for the quasi pentagonal one.
    pub offset: u64,
    pub q: u64,
}

impl AlphaConstant {
    pub fn value(&self) -> f64 {
        let q = self.q as f64;
        (q / (self.offset as f64 * q - 1.0)).sqrt()
    }

    /// Truncated to four decimals.
    pub fn decimal(&self) -> String {
        format!("{:.4}", (self.value() * 1e4).floor() / 1e4)
    }

    /// Exact test of `p <= alpha * sqrt(m)`, i.e. `p^2 (offset*q - 1) <= m q`.
    pub fn bounds(&self, p: u64, m: u64) -> std::cmp::Ordering {
        let lhs = p as u128 * p as u128 * (self.offset as u128 * self.q as u128 - 1);
        lhs.cmp(&(m as u128 * self.q as u128))
    }
}

impl fmt::Display for AlphaConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/sqrt({} - 1/{})", self.offset, self.q)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaWitness {
    pub m: u64,
    pub q: u64,
    pub shape: PolygonalShape,
    pub alpha: AlphaConstant,
    pub alpha_exact: String,
    pub alpha_decimal: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalSup {
    pub m: u64,
    pub p: u64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaReport {
    pub set: String,
    pub bound: u64,
    /// `None`: no witness of the extremal shape up to `bound`.
    pub witness: Option<AlphaWitness>,
    /// Largest `P(m) / sqrt(m)` over the set up to `bound`.
    pub empirical_sup: Option<EmpiricalSup>,
    /// Whether `P(m) <= alpha sqrt(m)` held for every scanned member; absent without a witness.
    pub bound_holds: Option<bool>,
    /// Members attaining `P(m) = alpha sqrt(m)`.
    pub equality_at: Vec<u64>,
}

/// The sharp constant for `set` in `{S, C, Cprime, S_even}`, located by
/// shape-first search and checked against a full scan of the set.
pub fn sharp_alpha(set: SetTag, bound: u64, cfg: &EnumConfig) -> Result<AlphaReport> {
    if bound < 231 {
        return Err(Error::domain("search bound must be >= 231"));
    }
    let (shape, search_set, offset) = match set {
        SetTag::S | SetTag::C | SetTag::Cprime => (PolygonalShape::Hexagonal, set, 2),
        SetTag::SEven => (PolygonalShape::TwicePentagonal, SetTag::S, 3),
        other => return Err(Error::domain(format!("no sharp constant for set {other}"))),
    };

    let witness = first_occurrence(shape, search_set, bound)?.map(|m| {
        let q = factorize(m).expect("witness in range").greatest_prime();
        let alpha = AlphaConstant { offset, q };
        AlphaWitness {
            m,
            q,
            shape,
            alpha,
            alpha_exact: alpha.to_string(),
            alpha_decimal: alpha.decimal(),
        }
    });

    let mut sup: Option<EmpiricalSup> = None;
    let mut holds = true;
    let mut equality_at = Vec::new();
    for hit in s_members(bound, cfg)? {
        let keep = match set {
            SetTag::S => true,
            SetTag::SEven => hit.m % 2 == 0,
            SetTag::C => hit.in_c,
            SetTag::Cprime => hit.in_cprime,
            _ => unreachable!(),
        };
        if !keep {
            continue;
        }
        let p = hit.greatest_prime;
        let better = sup.is_none_or(|s| {
            // p^2 / m > s.p^2 / s.m
            (p as u128 * p as u128) * s.m as u128 > (s.p as u128 * s.p as u128) * hit.m as u128
        });
        if better {
            sup = Some(EmpiricalSup {
                m: hit.m,
                p,
                ratio: p as f64 / (hit.m as f64).sqrt(),
            });
        }
        if let Some(w) = &witness {
            match w.alpha.bounds(p, hit.m) {
                std::cmp::Ordering::Greater => holds = false,
                std::cmp::Ordering::Equal => equality_at.push(hit.m),
                std::cmp::Ordering::Less => {}
            }
        }
    }

    Ok(AlphaReport {
        set: set.to_string(),
        bound,
        bound_holds: witness.as_ref().map(|_| holds),
        witness,
        empirical_sup: sup,
        equality_at,
    })
}
