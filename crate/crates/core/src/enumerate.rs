//! Segmented enumeration of `S` and its subsets.
//!
//! Each segment `[lo, hi)` is sieved by the primes `p <= sqrt(hi)`: first all
//! multiples of `p^2` are struck (squarefree filter), then for every surviving
//! multiple of `p`, in ascending `p`, the digit condition `s_p(m) >= p` is
//! tested and the factor divided out. Whatever cofactor remains is a single
//! prime and gets the same test. Survivors are exactly the members of `S`.
//!
//! Segments are independent; batches of them run on a rayon pool and are
//! merged in ascending order, so output never depends on the thread count.

use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::digitsum::raw_digit_sum;
use crate::error::{Error, Result};
use crate::factorint::{factorize, is_prime, primes_up_to};
use crate::numbersets::{MembershipReport, SetTag};
use crate::polygon::PolygonalShape;

pub const DEFAULT_MAX_LIMIT: u64 = 100_000_000;
/// Ceiling when extended runs are enabled.
pub const EXTENDED_MAX_LIMIT: u64 = 1_000_000_000_000;
pub const DEFAULT_SEGMENT_SIZE: u64 = 1_000_000;
pub const MIN_SEGMENT_SIZE: u64 = 1_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumConfig {
    pub max_limit: u64,
    pub segment_size: u64,
    pub threads: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            max_limit: DEFAULT_MAX_LIMIT,
            segment_size: DEFAULT_SEGMENT_SIZE,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl EnumConfig {
    pub fn validate(&self) -> Result<()> {
        if self.segment_size < MIN_SEGMENT_SIZE {
            return Err(Error::domain(format!(
                "segment size must be >= {MIN_SEGMENT_SIZE}"
            )));
        }
        if self.threads == 0 {
            return Err(Error::domain("thread count must be >= 1"));
        }
        if self.max_limit > EXTENDED_MAX_LIMIT {
            return Err(Error::Resource(format!(
                "max limit cannot exceed {EXTENDED_MAX_LIMIT}"
            )));
        }
        Ok(())
    }

    fn check_limit(&self, limit: u64) -> Result<()> {
        self.validate()?;
        if limit > self.max_limit {
            return Err(Error::Resource(format!(
                "limit {limit} exceeds the configured maximum {}",
                self.max_limit
            )));
        }
        Ok(())
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| Error::Resource(format!("thread pool: {e}")))
    }
}

/// A member of `S` found by the segment sieve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub m: u64,
    pub greatest_prime: u64,
    #[serde(rename = "in_C")]
    pub in_c: bool,
    #[serde(rename = "in_Cprime")]
    pub in_cprime: bool,
}

/// A sieved range with its smallest-prime-factor table.
#[derive(Debug, Clone)]
pub struct Segment {
    pub lo: u64,
    pub hi: u64,
    /// Smallest sieving prime dividing `lo + i`; 0 when none does
    /// (so `lo + i` is 0, 1, or a prime beyond the sieving bound).
    pub spf: Vec<u32>,
}

impl Segment {
    /// Sieves `[lo, hi)` with `primes`, which must cover every prime `<= sqrt(hi - 1)`.
    pub fn scan(lo: u64, hi: u64, primes: &[u64]) -> (Segment, Vec<Hit>) {
        let len = (hi - lo) as usize;
        let sieving: &[u64] = {
            let end = primes.partition_point(|&p| p.saturating_mul(p) < hi);
            &primes[..end]
        };
        let mut spf = vec![0u32; len];
        let mut alive = vec![true; len];
        for m in lo..hi.min(2) {
            alive[(m - lo) as usize] = false;
        }

        for &p in sieving {
            let start = lo.div_ceil(p) * p;
            for m in (start..hi).step_by(p as usize) {
                let slot = &mut spf[(m - lo) as usize];
                if *slot == 0 {
                    *slot = p as u32;
                }
            }
            let p2 = p * p;
            let start = lo.div_ceil(p2) * p2;
            for m in (start..hi).step_by(p2 as usize) {
                alive[(m - lo) as usize] = false;
            }
        }

        let mut rest: Vec<u64> = (lo..hi).collect();
        let mut greatest = vec![1u64; len];
        let mut cong_one = vec![true; len];
        let mut exact = vec![true; len];
        for &p in sieving {
            let start = lo.div_ceil(p) * p;
            for m in (start..hi).step_by(p as usize) {
                let i = (m - lo) as usize;
                if !alive[i] {
                    continue;
                }
                let s = raw_digit_sum(m, p);
                if s < p {
                    alive[i] = false;
                    continue;
                }
                rest[i] /= p;
                greatest[i] = p;
                cong_one[i] &= s % (p - 1) == 1 % (p - 1);
                exact[i] &= s == p;
            }
        }

        let mut hits = Vec::new();
        for i in 0..len {
            if !alive[i] {
                continue;
            }
            let m = lo + i as u64;
            let q = rest[i];
            if q > 1 {
                let s = raw_digit_sum(m, q);
                if s < q {
                    continue;
                }
                greatest[i] = q;
                cong_one[i] &= s % (q - 1) == 1 % (q - 1);
                exact[i] &= s == q;
            }
            hits.push(Hit {
                m,
                greatest_prime: greatest[i],
                in_c: cong_one[i],
                in_cprime: exact[i],
            });
        }
        (Segment { lo, hi, spf }, hits)
    }
}

fn sieving_primes(limit: u64) -> Arc<Vec<u64>> {
    Arc::new(primes_up_to(limit.isqrt() + 1))
}

/// Ordered batches of hits over `[from, to)`.
struct HitBatches {
    next: u64,
    end: u64,
    segment: u64,
    per_batch: u64,
    primes: Arc<Vec<u64>>,
    pool: rayon::ThreadPool,
}

impl HitBatches {
    fn new(from: u64, to: u64, cfg: &EnumConfig) -> Result<Self> {
        Ok(HitBatches {
            next: from,
            end: to,
            segment: cfg.segment_size,
            per_batch: 2 * cfg.threads as u64,
            primes: sieving_primes(to),
            pool: cfg.pool()?,
        })
    }

    /// Returns the hits of the next batch and the exclusive end it covered.
    fn next_batch(&mut self) -> Option<(Vec<Hit>, u64)> {
        if self.next >= self.end {
            return None;
        }
        let ranges: Vec<(u64, u64)> = (0..self.per_batch)
            .map(|k| self.next + k * self.segment)
            .take_while(|&lo| lo < self.end)
            .map(|lo| (lo, (lo + self.segment).min(self.end)))
            .collect();
        let covered = ranges.last().expect("non-empty batch").1;
        self.next = covered;
        let primes = &self.primes;
        let parts: Vec<Vec<Hit>> = self.pool.install(|| {
            ranges
                .par_iter()
                .map(|&(lo, hi)| Segment::scan(lo, hi, primes).1)
                .collect()
        });
        Some((parts.into_iter().flatten().collect(), covered))
    }
}

impl Iterator for HitBatches {
    type Item = Vec<Hit>;

    fn next(&mut self) -> Option<Vec<Hit>> {
        self.next_batch().map(|(hits, _)| hits)
    }
}

/// Every member of `S` up to and including `limit`, ascending.
pub fn s_members(limit: u64, cfg: &EnumConfig) -> Result<impl Iterator<Item = Hit>> {
    cfg.check_limit(limit)?;
    Ok(HitBatches::new(1, limit + 1, cfg)?.flatten())
}

/// Full membership reports for every `m <= limit` in `S`, ascending.
pub struct SStream {
    batches: HitBatches,
    buffer: std::vec::IntoIter<MembershipReport>,
}

impl Iterator for SStream {
    type Item = MembershipReport;

    fn next(&mut self) -> Option<MembershipReport> {
        loop {
            if let Some(r) = self.buffer.next() {
                return Some(r);
            }
            let hits = self.batches.next()?;
            let reports: Vec<MembershipReport> = self.batches.pool.install(|| {
                hits.par_iter()
                    .map(|h| {
                        let f = factorize(h.m).expect("member of S is in range");
                        MembershipReport::of(&f).expect("lambda of a member of S fits")
                    })
                    .collect()
            });
            self.buffer = reports.into_iter();
        }
    }
}

pub fn stream_s(limit: u64, cfg: &EnumConfig) -> Result<SStream> {
    cfg.check_limit(limit)?;
    Ok(SStream {
        batches: HitBatches::new(1, limit + 1, cfg)?,
        buffer: Vec::new().into_iter(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub x: u64,
    pub c_prime_count: u64,
    pub carmichael_count: u64,
    pub s_count: u64,
}

/// Powers of ten `10, 100, ...` up to `limit`.
fn thresholds(limit: u64) -> Vec<u64> {
    std::iter::successors(Some(10u64), |&x| x.checked_mul(10))
        .take_while(|&x| x <= limit)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Tally {
    next_lo: u64,
    c_prime: u64,
    carmichael: u64,
    s: u64,
    rows: Vec<CountRow>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            next_lo: 1,
            c_prime: 0,
            carmichael: 0,
            s: 0,
            rows: Vec::new(),
        }
    }

    fn close_rows_below(&mut self, upto: u64, marks: &[u64]) {
        while let Some(&x) = marks.get(self.rows.len()) {
            if x > upto {
                break;
            }
            self.rows.push(CountRow {
                x,
                c_prime_count: self.c_prime,
                carmichael_count: self.carmichael,
                s_count: self.s,
            });
        }
    }

    fn absorb(&mut self, hits: &[Hit], covered: u64, marks: &[u64]) {
        for h in hits {
            self.close_rows_below(h.m, marks);
            self.s += 1;
            self.carmichael += h.in_c as u64;
            self.c_prime += h.in_cprime as u64;
        }
        self.close_rows_below(covered, marks);
        self.next_lo = covered;
    }
}

/// Counts of `C'`, `C` and `S` below each power of ten up to `limit`.
pub fn count_sets(limit: u64, cfg: &EnumConfig) -> Result<Vec<CountRow>> {
    cfg.check_limit(limit)?;
    let marks = thresholds(limit);
    let Some(&top) = marks.last() else {
        return Ok(Vec::new());
    };
    let mut tally = Tally::new();
    let mut batches = HitBatches::new(1, top, cfg)?;
    while let Some((hits, covered)) = batches.next_batch() {
        tally.absorb(&hits, covered, &marks);
    }
    Ok(tally.rows)
}

pub const CHECKPOINT_MAGIC: &str = "SDIGITS-COUNT-CHECKPOINT";
pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Checkpoint {
    magic: String,
    version: u32,
    limit: u64,
    segment_size: u64,
    #[serde(flatten)]
    tally: Tally,
}

impl Checkpoint {
    fn load(path: &Path, limit: u64, cfg: &EnumConfig) -> Result<Option<Checkpoint>> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::Checkpoint(format!("{}: {e}", path.display()))),
        };
        let cp: Checkpoint = serde_json::from_str(&text)
            .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        if cp.magic != CHECKPOINT_MAGIC {
            return Err(Error::Checkpoint(format!(
                "{}: bad magic {:?}",
                path.display(),
                cp.magic
            )));
        }
        if cp.version != CHECKPOINT_VERSION {
            return Err(Error::Checkpoint(format!(
                "unsupported checkpoint version {}",
                cp.version
            )));
        }
        if cp.limit != limit || cp.segment_size != cfg.segment_size {
            return Err(Error::Checkpoint(format!(
                "checkpoint is for limit {} / segment {}, not {limit} / {}",
                cp.limit, cp.segment_size, cfg.segment_size
            )));
        }
        Ok(Some(cp))
    }

    fn store(&self, path: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Checkpoint(format!("{}: {e}", path.display()));
        let tmp = path.with_extension("tmp");
        let mut file = fs::File::create(&tmp).map_err(io)?;
        let body = serde_json::to_string_pretty(self).expect("checkpoint serializes");
        file.write_all(body.as_bytes()).map_err(io)?;
        file.sync_all().map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }
}

/// [`count_sets`] that records progress after every batch and resumes from
/// `checkpoint` when it already exists.
pub fn count_sets_resumable(
    limit: u64,
    cfg: &EnumConfig,
    checkpoint: &Path,
) -> Result<Vec<CountRow>> {
    cfg.check_limit(limit)?;
    let marks = thresholds(limit);
    let Some(&top) = marks.last() else {
        return Ok(Vec::new());
    };
    let mut state = match Checkpoint::load(checkpoint, limit, cfg)? {
        Some(cp) => cp,
        None => Checkpoint {
            magic: CHECKPOINT_MAGIC.to_string(),
            version: CHECKPOINT_VERSION,
            limit,
            segment_size: cfg.segment_size,
            tally: Tally::new(),
        },
    };
    let mut batches = HitBatches::new(state.tally.next_lo, top, cfg)?;
    while let Some((hits, covered)) = batches.next_batch() {
        state.tally.absorb(&hits, covered, &marks);
        state.store(checkpoint)?;
    }
    state.tally.close_rows_below(top, &marks);
    Ok(state.tally.rows)
}

/// Least `m <= bound` of the given shape at `n = q = P(m)` that lies in `set`.
///
/// Walks the primes `q` upward and tests the single candidate each one
/// yields, so the work is proportional to `sqrt(bound)` rather than `bound`.
pub fn first_occurrence(shape: PolygonalShape, set: SetTag, bound: u64) -> Result<Option<u64>> {
    for q in (2u64..).filter(|&q| is_prime(q)) {
        let m = shape.value(q)?;
        if m > bound {
            return Ok(None);
        }
        let f = factorize(m)?;
        if f.greatest_prime() == q && set.contains_factored(&f)? {
            return Ok(Some(m));
        }
    }
    unreachable!("primes are unbounded")
}
