//! Named reproduction checks, grouped into profiles of increasing cost.
//!
//! `quick` runs in seconds on bounds up to 1e5, `full` reaches 1e6 and 1e7,
//! `extended` adds the counts through 1e10 and the large hexagonal witness.

use std::cell::OnceCell;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use serde::Serialize;

use crate::berndenom::{
    denom_bernoulli_number, denom_poly, denom_poly_no_const, denominator_parts, dividing_part,
    no_const_denominator_divisible_by, oracle_denominators,
};
use crate::enumerate::{
    count_sets, first_occurrence, s_members, CountRow, EnumConfig, EXTENDED_MAX_LIMIT,
};
use crate::error::Error;
use crate::factorint::{factorize, radical, shifted_index_of};
use crate::numbersets::{
    carmichael_lambda, in_s_d_of, is_carmichael_digit_of, is_carmichael_korselt_of, is_knodel,
    knodel_congruence_brute_force, lambda_of, rho, rho_of, SetTag,
};
use crate::polygon::{
    carmichael_polygonal, classify_low_ell, decompose_factored, sharp_alpha, PolygonalShape,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Quick,
    Full,
    Extended,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            "extended" => Ok(Profile::Extended),
            _ => Err(Error::Domain(format!("unknown profile {s:?}"))),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
            Profile::Extended => "extended",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    /// What the check regenerates.
    pub reproduces: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{}: {verdict}  [{}] {}",
            self.name, self.reproduces, self.detail
        )
    }
}

type CheckResult = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// `(x, C'(x), C(x), S(x))`.
pub const COUNTS: [(u64, u64, u64, u64); 8] = [
    (1_000, 0, 1, 2),
    (10_000, 2, 7, 57),
    (100_000, 4, 16, 636),
    (1_000_000, 9, 43, 7048),
    (10_000_000, 19, 105, 75150),
    (100_000_000, 51, 255, 801931),
    (1_000_000_000, 107, 646, 8350039),
    (10_000_000_000, 219, 1547, 86361487),
];

/// `(m, rho(m), lambda(m))`.
pub const RHO_LAMBDA: [(u64, u64, u64); 9] = [
    (231, 21, 30),
    (561, 1, 80),
    (1001, 41, 60),
    (1045, 145, 180),
    (1105, 1, 48),
    (1122, 2, 80),
    (1155, 15, 60),
    (1729, 1, 36),
    (2002, 22, 60),
];

/// `(set, m, p, l(m), label)` for the first (quasi) polygonal occurrences.
pub const FIRST_OCCURRENCES: [(&str, u64, u64, u64, &str); 7] = [
    ("S", 231, 11, 1, "H_11"),
    ("C", 561, 17, 1, "H_17"),
    ("Cprime", 8801128801, 66337, 1, "H_66337"),
    ("S", 1045, 19, 2, "O_19"),
    ("C", 2465, 29, 2, "O_29"),
    ("Cprime", 2821, 31, 2, "O_31"),
    ("S", 11102, 61, 2, "2P_61"),
];

/// `(m, set, p, s_p(m), l(m), label)`.
pub type PolygonRow = (u64, &'static str, u64, u64, u64, &'static str);

pub const LOW_ELL_ROWS: [PolygonRow; 10] = [
    (231, "S", 11, 11, 1, "H_11"),
    (561, "C", 17, 17, 1, "H_17"),
    (1045, "S", 19, 19, 2, "O_19"),
    (2465, "C", 29, 29, 2, "O_29"),
    (2821, "Cprime", 31, 31, 2, "O_31"),
    (3655, "S", 43, 43, 1, "H_43"),
    (5565, "S", 53, 53, 1, "H_53"),
    (8911, "C", 67, 67, 1, "H_67"),
    (10585, "C", 73, 73, 1, "H_73"),
    (11102, "S", 61, 62, 2, "2P_61"),
];

pub const HIGH_ELL_ROWS: [PolygonRow; 11] = [
    (1105, "C", 17, 17, 3, "G^10_17"),
    (1122, "S", 17, 18, 3, "2H_17"),
    (1729, "Cprime", 19, 19, 4, "G^12_19"),
    (3458, "S", 19, 20, 9, "2G^12_19"),
    (3570, "S", 17, 18, 12, "2G^15_17"),
    (5005, "S", 13, 13, 29, "G^66_13"),
    (5642, "S", 31, 32, 5, "2O_31"),
    (6118, "S", 23, 24, 11, "2G^14_23"),
    (6545, "S", 17, 17, 22, "G^50_17"),
    (6601, "C", 41, 41, 3, "G^10_41"),
    (6734, "S", 37, 38, 4, "2G^7_37"),
];

/// Most specific of `Cprime`, `C`, `S` containing `m`.
pub fn tightest_set(m: u64) -> Result<&'static str, Error> {
    for tag in [SetTag::Cprime, SetTag::C, SetTag::S] {
        if tag.contains(m)? {
            return Ok(match tag {
                SetTag::Cprime => "Cprime",
                SetTag::C => "C",
                _ => "S",
            });
        }
    }
    Err(Error::Domain(format!("{m} is not in S")))
}

/// A regenerated row; the label is computed, so it is owned.
pub type PolygonRowOwned = (u64, &'static str, u64, u64, u64, String);

/// Recomputes `(m, set, p, s_p(m), l(m), label)` for a member of `S` with a form.
pub fn polygon_row(m: u64) -> Result<Option<PolygonRowOwned>, Error> {
    let f = factorize(m)?;
    let Some(form) = decompose_factored(&f)? else {
        return Ok(None);
    };
    let s = crate::digitsum::raw_digit_sum(m, form.p);
    Ok(Some((
        m,
        tightest_set(m)?,
        form.p,
        s,
        form.ell,
        form.label(),
    )))
}

fn check_counts(
    rows: &Result<Vec<CountRow>, String>,
    x: u64,
    expected: (u64, u64, u64),
) -> CheckResult {
    let rows = rows.as_ref().map_err(Clone::clone)?;
    let row = rows
        .iter()
        .find(|r| r.x == x)
        .ok_or(format!("no row for {x}"))?;
    let got = (row.c_prime_count, row.carmichael_count, row.s_count);
    ensure(got == expected, || {
        format!("got {got:?}, expected {expected:?}")
    })?;
    Ok(format!("x = {x}: {got:?}"))
}

fn check_rho_lambda() -> CheckResult {
    for &(m, r, l) in &RHO_LAMBDA {
        let got = (rho(m).map_err(err)?, carmichael_lambda(m).map_err(err)?);
        ensure(got == (r, l), || {
            format!("m = {m}: got {got:?}, expected {:?}", (r, l))
        })?;
    }
    Ok("9 columns".into())
}

fn check_dual_route(limit: u64) -> CheckResult {
    let mut found = 0;
    for m in 2..=limit {
        let f = factorize(m).map_err(err)?;
        let digit = is_carmichael_digit_of(&f);
        ensure(is_carmichael_korselt_of(&f) == digit, || {
            format!("discrepancy at {m}")
        })?;
        found += digit as u64;
    }
    Ok(format!("{found} Carmichael numbers, 0 discrepancies"))
}

fn check_bernoulli_oracle(bound: usize) -> CheckResult {
    for n in 1..=bound {
        let o = oracle_denominators(n, bound).map_err(err)?;
        let n64 = n as u64;
        ensure(
            denom_bernoulli_number(n64).map_err(err)?.to_biguint() == o.number,
            || format!("D_{n}"),
        )?;
        ensure(
            denom_poly_no_const(n64).map_err(err)?.to_biguint() == o.without_constant,
            || format!("D~_{n}"),
        )?;
        ensure(
            denom_poly(n64).map_err(err)?.to_biguint() == o.polynomial,
            || format!("DB_{n}"),
        )?;
    }
    let seq = |f: fn(u64) -> crate::Result<crate::berndenom::SquarefreeProduct>| -> Result<Vec<u64>, String> {
        (1..=10).map(|n| f(n).map_err(err)?.to_u64().ok_or("overflow".to_string())).collect()
    };
    ensure(
        seq(denom_bernoulli_number)? == [2, 6, 1, 30, 1, 42, 1, 30, 1, 66],
        || "D_n opening terms".into(),
    )?;
    ensure(
        seq(denom_poly_no_const)? == [1, 1, 2, 1, 6, 2, 6, 3, 10, 2],
        || "D~_n opening terms".into(),
    )?;
    ensure(
        seq(denom_poly)? == [2, 6, 2, 30, 6, 42, 6, 30, 10, 66],
        || "DB_n opening terms".into(),
    )?;
    Ok(format!("n <= {bound}"))
}

fn check_triple_product(limit: u64, sf_limit: u64) -> CheckResult {
    use num_integer::Integer;
    for n in 1..=limit {
        let triple = denom_poly(n).map_err(err)?.to_biguint();
        let by_d = denom_poly_no_const(n)
            .map_err(err)?
            .to_biguint()
            .lcm(&denom_bernoulli_number(n).map_err(err)?.to_biguint());
        let by_rad = denom_poly_no_const(n + 1)
            .map_err(err)?
            .to_biguint()
            .lcm(&radical(n + 1).map_err(err)?.into());
        ensure(triple == by_d && triple == by_rad, || {
            format!("routes disagree at n = {n}")
        })?;
    }
    for m in 2..=sf_limit {
        let sf = factorize(m).map_err(err)?.is_squarefree();
        ensure(
            sf == denom_poly(m - 1).map_err(err)?.is_divisible_by(m),
            || format!("m = {m}"),
        )?;
    }
    Ok(format!("n <= {limit}, m <= {sf_limit}"))
}

fn check_fixed_points(limit: u64) -> CheckResult {
    let mut members = 0;
    for m in 2..=limit {
        let in_s = SetTag::S.contains(m).map_err(err)?;
        let fixed = dividing_part(m).map_err(err)?.to_u64() == Some(m);
        let divides = no_const_denominator_divisible_by(m, m).map_err(err)?;
        ensure(in_s == fixed && fixed == divides, || format!("m = {m}"))?;
        members += in_s as u64;
    }
    let spot = denominator_parts(198).map_err(err)?.non_dividing.to_u64();
    ensure(spot == Some(2465), || format!("D~nd_198 = {spot:?}"))?;
    Ok(format!("{members} members of S, D~nd_198 = 2465"))
}

fn check_first_occurrences(include_large: bool) -> CheckResult {
    let mut rows = 0;
    for &(set, m, p, ell, label) in &FIRST_OCCURRENCES {
        if m > 1_000_000_000 && !include_large {
            continue;
        }
        let shape: PolygonalShape = match &label[..label.find('_').unwrap()] {
            "H" => PolygonalShape::Hexagonal,
            "O" => PolygonalShape::Octagonal,
            _ => PolygonalShape::TwicePentagonal,
        };
        let tag: SetTag = set.parse().map_err(err)?;
        let found = first_occurrence(shape, tag, 10 * m).map_err(err)?;
        ensure(found == Some(m), || {
            format!("first {shape} in {set}: {found:?}")
        })?;
        let f = factorize(m).map_err(err)?;
        let got = (
            f.greatest_prime(),
            shifted_index_of(&f).0,
            shape.symbol(f.greatest_prime()),
        );
        ensure(got == (p, ell, label.to_string()), || {
            format!("{m}: {got:?}")
        })?;
        ensure(classify_low_ell(m).map_err(err)? == Some(shape), || {
            format!("{m}: classification")
        })?;
        rows += 1;
    }
    Ok(format!("{rows} rows"))
}

fn regenerate_polygon_rows(
    limit: u64,
    keep: impl Fn(u64) -> bool,
) -> Result<Vec<PolygonRowOwned>, String> {
    let mut out = Vec::new();
    for hit in s_members(limit, &EnumConfig::default()).map_err(err)? {
        if let Some(row) = polygon_row(hit.m).map_err(err)? {
            if keep(row.4) {
                out.push(row);
            }
        }
    }
    Ok(out)
}

fn compare_rows(got: &[PolygonRowOwned], expected: &[PolygonRow]) -> CheckResult {
    ensure(got.len() == expected.len(), || {
        format!("{} rows, expected {}", got.len(), expected.len())
    })?;
    for (g, e) in got.iter().zip(expected) {
        let e_owned = (e.0, e.1, e.2, e.3, e.4, e.5.to_string());
        ensure(*g == e_owned, || format!("got {g:?}, expected {e:?}"))?;
    }
    Ok(format!("{} rows", got.len()))
}

fn check_low_ell_rows() -> CheckResult {
    let rows = regenerate_polygon_rows(11_102, |ell| ell <= 2)?;
    compare_rows(&rows, &LOW_ELL_ROWS)
}

fn check_high_ell_rows() -> CheckResult {
    let rows = regenerate_polygon_rows(6_999, |ell| ell >= 3)?;
    compare_rows(&rows, &HIGH_ELL_ROWS)
}

fn check_alpha(cfg: &EnumConfig, sup_bound: u64) -> CheckResult {
    let cases = [
        (SetTag::S, 11, 231, "0.7237"),
        (SetTag::C, 17, 561, "0.7177"),
        (SetTag::SEven, 61, 11102, "0.5789"),
    ];
    for (set, q, m, decimal) in cases {
        let report = sharp_alpha(set, sup_bound, cfg).map_err(err)?;
        let w = report.witness.ok_or(format!("{set}: no witness"))?;
        ensure((w.q, w.m) == (q, m), || {
            format!("{set}: witness {} with q = {}", w.m, w.q)
        })?;
        ensure(w.alpha_decimal == decimal, || {
            format!("{set}: alpha {}", w.alpha_decimal)
        })?;
        ensure(
            (w.alpha.value() - decimal.parse::<f64>().unwrap()).abs() < 1e-4,
            || format!("{set}: tolerance"),
        )?;
        ensure(report.bound_holds == Some(true), || {
            format!("{set}: sup exceeds alpha")
        })?;
    }
    Ok(format!("sup checked up to {sup_bound}"))
}

fn check_carmichael_polygonal(limit: u64) -> CheckResult {
    let mut count = 0;
    for hit in s_members(limit, &EnumConfig::default())
        .map_err(err)?
        .filter(|h| h.in_c)
    {
        let form = carmichael_polygonal(hit.m).map_err(err)?;
        let back = crate::polygon::polygonal(form.r, form.p).map_err(err)?;
        ensure(back == hit.m, || {
            format!("{} != G^{}_{}", hit.m, form.r, form.p)
        })?;
        count += 1;
    }
    let f = carmichael_polygonal(1_050_985).map_err(err)?;
    ensure((f.r, f.p, f.eta) == (1580, 37, 2), || {
        format!("1050985: {f:?}")
    })?;
    Ok(format!("{count} Carmichael numbers, 1050985 = G^1580_37"))
}

fn check_structure(limit: u64) -> CheckResult {
    let mut n = 0;
    for hit in s_members(limit, &EnumConfig::default()).map_err(err)? {
        let f = factorize(hit.m).map_err(err)?;
        let m = hit.m;
        ensure(f.primes().all(|p| p * p < m), || {
            format!("{m}: prime above sqrt")
        })?;
        ensure(f.omega() >= if m % 2 == 1 { 3 } else { 4 }, || {
            format!("{m}: too few factors")
        })?;
        let (r, l) = (rho_of(&f).map_err(err)?, lambda_of(&f).map_err(err)?);
        ensure(r % 2 == m % 2, || format!("{m}: parity"))?;
        ensure((0..3).all(|j| in_s_d_of(&f, r + j * l)), || {
            format!("{m}: cover")
        })?;
        ensure(is_knodel(m, r).map_err(err)?.in_k_superset, || {
            format!("{m}: not in K^_rho")
        })?;
        n += 1;
    }
    Ok(format!("{n} members of S"))
}

fn check_digit_properties(limit: u64) -> CheckResult {
    use crate::digitsum::raw_digit_sum;
    for m in 2..=limit {
        for p in factorize(m).map_err(err)?.primes() {
            ensure(raw_digit_sum(m, p) == raw_digit_sum(m / p, p), || {
                format!("shift at {m}, {p}")
            })?;
        }
        for p in [2u64, 3, 5, 7, 11, 13, 97] {
            ensure(m % (p - 1) == raw_digit_sum(m, p) % (p - 1), || {
                format!("congruence at {m}, {p}")
            })?;
        }
    }
    Ok(format!("n <= {limit}"))
}

fn check_knodel(m_limit: u64) -> CheckResult {
    for m in 4..=m_limit {
        if !factorize(m).map_err(err)?.is_composite() {
            continue;
        }
        for d in 1..=10 {
            let q = is_knodel(m, d).map_err(err)?;
            ensure(
                q.in_k_superset == knodel_congruence_brute_force(m, d),
                || format!("m = {m}, d = {d}"),
            )?;
        }
    }
    Ok(format!("m <= {m_limit}, d <= 10"))
}

fn check_large_hexagonal() -> CheckResult {
    let f = factorize(8_801_128_801).map_err(err)?;
    ensure(f.primes().eq([181, 733, 66337]), || "factorization".into())?;
    ensure(SetTag::Cprime.contains_factored(&f).map_err(err)?, || {
        "not primary".into()
    })?;
    ensure(
        PolygonalShape::Hexagonal.value(66337).map_err(err)? == 8_801_128_801,
        || "not H_66337".into(),
    )?;
    let first =
        first_occurrence(PolygonalShape::Hexagonal, SetTag::Cprime, 10_000_000_000).map_err(err)?;
    ensure(first == Some(8_801_128_801), || {
        format!("least hexagonal in C': {first:?}")
    })?;
    Ok("8801128801 = 181*733*66337 = H_66337, least hexagonal in C'".into())
}

struct Entry {
    name: String,
    reproduces: &'static str,
    run: Box<dyn Fn() -> CheckResult>,
}

fn entry(
    name: impl Into<String>,
    reproduces: &'static str,
    run: impl Fn() -> CheckResult + 'static,
) -> Entry {
    Entry {
        name: name.into(),
        reproduces,
        run: Box::new(run),
    }
}

fn plan(profile: Profile, cfg: &EnumConfig, oracle_bound: usize) -> Vec<Entry> {
    let mut out = Vec::new();
    let c = cfg.clone();
    let counts_top = match profile {
        Profile::Quick => 100_000,
        Profile::Full => 10_000_000,
        Profile::Extended => 10_000_000_000,
    };
    // One pass serves every row; it runs when the first row is checked.
    let counts: Rc<OnceCell<Result<Vec<CountRow>, String>>> = Rc::default();
    for &(x, cp, cc, s) in COUNTS.iter().filter(|r| r.0 <= counts_top) {
        let (c, counts) = (c.clone(), counts.clone());
        let exp = x.ilog10();
        out.push(entry(
            format!("Table1@1e{exp} = ({cp},{cc},{s})"),
            "counts of Cprime, C, S below x",
            move || {
                check_counts(
                    counts.get_or_init(|| count_sets(counts_top, &c).map_err(err)),
                    x,
                    (cp, cc, s),
                )
            },
        ));
    }
    out.push(entry(
        "Table5 rho/lambda (9 columns)",
        "rho and lambda of small members of S",
        check_rho_lambda,
    ));
    out.push(entry(
        format!("Bernoulli denominators = exact oracle, n <= {oracle_bound}"),
        "denominator sequences",
        move || check_bernoulli_oracle(oracle_bound),
    ));
    out.push(entry(
        "Table2 first occurrences",
        "least hexagonal, octagonal, twice pentagonal members",
        move || check_first_occurrences(profile == Profile::Extended),
    ));
    out.push(entry(
        "Table3 rows",
        "members of S with l <= 2",
        check_low_ell_rows,
    ));
    out.push(entry(
        "Table4 rows",
        "members of S with l >= 3 and a polygonal form",
        check_high_ell_rows,
    ));
    {
        let c = c.clone();
        let bound = if profile == Profile::Quick {
            100_000
        } else {
            1_000_000
        };
        out.push(entry(
            format!("alpha constants (sup to {bound:.0e})"),
            "sharp lower bound on P(m)",
            move || check_alpha(&c, bound),
        ));
    }

    let (dual, tri, sf, s_bound, carm_bound, knodel) = match profile {
        Profile::Quick => (100_000, 1_000, 10_000, 100_000, 100_000, 1_000),
        _ => (1_000_000, 5_000, 10_000, 1_000_000, 1_000_000, 5_000),
    };
    out.push(entry(
        format!("Korselt≡digit-criterion on [2,{dual:.0e}]"),
        "two characterizations of C",
        move || check_dual_route(dual),
    ));
    out.push(entry(
        format!("Triple product routes n<={tri}, SF<=>m|DB_(m-1) m<={sf}"),
        "polynomial denominator identities",
        move || check_triple_product(tri, sf),
    ));
    out.push(entry(
        format!("S∪{{1}} = fixed points of D~| on [2,{s_bound:.0e}]"),
        "S as fixed points of the dividing part",
        move || check_fixed_points(s_bound),
    ));
    out.push(entry(
        format!("Carmichael numbers are polygonal below {carm_bound:.0e}"),
        "Carmichael numbers as polygonal numbers",
        move || check_carmichael_polygonal(carm_bound),
    ));
    out.push(entry(
        format!("S structure, parity and cover below {s_bound:.0e}"),
        "structure of S and its cover by S_d",
        move || check_structure(s_bound),
    ));
    out.push(entry(
        "Digit-sum congruence and shift identity",
        "digit-sum identities",
        move || check_digit_properties(100_000),
    ));
    out.push(entry(
        format!("Knödel fast path ≡ brute force (m<={knodel}, d<=10)"),
        "Knödel congruence",
        move || check_knodel(knodel),
    ));
    if profile == Profile::Extended {
        out.push(entry(
            "8801128801 ∈ C' and = H_66337",
            "least hexagonal member of Cprime",
            check_large_hexagonal,
        ));
    }
    out
}

/// Runs every check of `profile`, in order, calling `on_result` after each.
pub fn run_with(
    profile: Profile,
    cfg: &EnumConfig,
    oracle_bound: usize,
    mut on_result: impl FnMut(&CheckOutcome),
) -> Vec<CheckOutcome> {
    let mut cfg = cfg.clone();
    if profile == Profile::Extended {
        cfg.max_limit = cfg.max_limit.max(EXTENDED_MAX_LIMIT);
    }
    plan(profile, &cfg, oracle_bound)
        .into_iter()
        .map(|s| {
            let (passed, detail) = match (s.run)() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            let outcome = CheckOutcome {
                name: s.name,
                reproduces: s.reproduces,
                passed,
                detail,
            };
            on_result(&outcome);
            outcome
        })
        .collect()
}

pub fn run(profile: Profile, cfg: &EnumConfig, oracle_bound: usize) -> Vec<CheckOutcome> {
    run_with(profile, cfg, oracle_bound, |_| {})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_profile_passes() {
        let outcomes = run(Profile::Quick, &EnumConfig::default(), 60);
        for o in &outcomes {
            assert!(o.passed, "{o}");
        }
        let names: Vec<String> = outcomes.iter().map(|o| o.to_string()).collect();
        assert!(names
            .iter()
            .any(|n| n.starts_with("Table1@1e4 = (2,7,57): PASS")));
        assert!(names
            .iter()
            .any(|n| n.starts_with("Table5 rho/lambda (9 columns): PASS")));
    }

    #[test]
    fn tightest_set_labels() {
        assert_eq!(tightest_set(1729).unwrap(), "Cprime");
        assert_eq!(tightest_set(561).unwrap(), "C");
        assert_eq!(tightest_set(231).unwrap(), "S");
        assert!(tightest_set(105).is_err());
    }
}
