//! Brute-force checks that share no code path with [`crate::enumerate`] or
//! the counting formulas.
//!
//! * A bounded triple loop over `(a, b, c)` testing `b c - a^2 = n`.
//! * Breadth-first balls under `{x, y, y^2}`: balls around distinct
//!   canonical representatives must not meet, and every element must reach
//!   its own representative within `2 |a| + 1` steps.
//!
//! Disjoint balls are evidence, not proof: two orbits could in principle
//! meet beyond the horizon. An overlap, however, is always a real bug.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{factorize, require_squarefree};
use crate::enumerate::{enumerate_a_plus, SetKind, SignatureSet};
use crate::orbits::{canonical_reps, reduce};
use crate::signature::{Generator, Signature};
use crate::{Error, Result};

/// Default element budget for one ball.
pub const DEFAULT_BALL_BUDGET: usize = 1_000_000;

/// Seed of the sampler used by [`oracle_check`].
pub const SAMPLE_SEED: u64 = 0x5EED_0F0B_17A5;

/// `A+(-n)` by the naive triple loop with `a < limit`, `2 <= b, c < limit`.
///
/// Complete exactly when `limit > (n + 1)/2`; smaller bounds are rejected.
pub fn brute_force_a_plus(n: u64, limit: u64) -> Result<SignatureSet> {
    if limit <= n.div_ceil(2) {
        return Err(Error::LimitTooSmall { n, limit });
    }
    brute_force_a_plus_raw(n, limit)
}

/// The triple loop with no completeness check on `limit`.
pub fn brute_force_a_plus_raw(n: u64, limit: u64) -> Result<SignatureSet> {
    if n == 0 {
        return Err(Error::Zero("n"));
    }
    let n_signed = i64::try_from(n).map_err(|_| Error::Overflow)?;
    let limit = i64::try_from(limit).map_err(|_| Error::Overflow)?;
    let mut elements = Vec::new();
    for a in 1..limit {
        for b in 2..limit {
            for c in 2..limit {
                if b > a && c > a && i128::from(b) * i128::from(c) - i128::from(a) * i128::from(a) == i128::from(n_signed) {
                    elements.push(Signature::from_parts(n_signed, a, b, c));
                }
            }
        }
    }
    Ok(SignatureSet { n, kind: SetKind::APlus, elements })
}

/// Everything reachable from `center` in at most `depth` generator steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsBall {
    /// Start of the search.
    pub center: Signature,
    /// Step horizon.
    pub depth: u32,
    /// Reached signatures, sorted.
    pub elements: BTreeSet<Signature>,
}

impl BfsBall {
    /// Membership test.
    pub fn contains(&self, s: &Signature) -> bool {
        self.elements.contains(s)
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Never true: the center is always present.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// [`bfs_ball_with_budget`] with [`DEFAULT_BALL_BUDGET`].
pub fn bfs_ball(s: Signature, depth: u32) -> Result<BfsBall> {
    bfs_ball_with_budget(s, depth, DEFAULT_BALL_BUDGET)
}

/// Breadth-first closure of `s` under `x`, `y`, `y^2` to `depth` steps.
pub fn bfs_ball_with_budget(s: Signature, depth: u32, budget: usize) -> Result<BfsBall> {
    let mut elements = BTreeSet::from([s]);
    let mut frontier = alloc::vec![s];
    for _ in 0..depth {
        let mut next = Vec::new();
        for u in &frontier {
            for g in [Generator::X, Generator::Y, Generator::Y2] {
                let v = u.try_apply(g)?;
                if elements.insert(v) {
                    if elements.len() > budget {
                        return Err(Error::CapExceeded { budget });
                    }
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(BfsBall { center: s, depth, elements })
}

/// Outcome of [`oracle_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// Modulus.
    pub n: u64,
    /// BFS horizon.
    pub depth: u32,
    /// Number of balls grown, one per canonical representative.
    pub balls: usize,
    /// No two balls share a signature.
    pub disjoint: bool,
    /// First shared signatures found, if any.
    pub overlaps: Vec<Signature>,
    /// Sampled signatures whose representative was not inside their ball.
    pub reachability_failures: Vec<Signature>,
    /// Number of signatures sampled for the reachability check.
    pub sampled: usize,
    /// The triple loop agrees with the divisor-driven enumeration.
    pub enumeration_match: bool,
    /// Some ball exceeded its budget; the verdict is then a failure.
    pub cap_exceeded: bool,
}

impl Verdict {
    /// True when every check passed.
    pub fn passed(&self) -> bool {
        self.disjoint
            && self.reachability_failures.is_empty()
            && self.enumeration_match
            && !self.cap_exceeded
    }

    /// One-line human summary that never claims more than was checked.
    pub fn summary(&self) -> alloc::string::String {
        if self.cap_exceeded {
            return alloc::format!("n={}: inconclusive, ball budget exceeded", self.n);
        }
        alloc::format!(
            "n={}: {} balls, {} at depth {}; {} of {} samples reached their representative; enumerations {}",
            self.n,
            self.balls,
            if self.disjoint { "no overlap found" } else { "OVERLAP" },
            self.depth,
            self.sampled - self.reachability_failures.len(),
            self.sampled,
            if self.enumeration_match { "agree" } else { "DISAGREE" },
        )
    }
}

/// Configuration for [`oracle_check_with`].
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// BFS horizon, at least 2.
    pub depth: u32,
    /// Number of random signatures for the reachability check.
    pub samples: usize,
    /// Element budget per ball.
    pub budget: usize,
    /// RNG seed.
    pub seed: u64,
}

impl OracleConfig {
    /// Defaults for the given depth and sample count.
    pub fn new(depth: u32, samples: usize) -> Self {
        OracleConfig { depth, samples, budget: DEFAULT_BALL_BUDGET, seed: SAMPLE_SEED }
    }
}

/// [`oracle_check_with`] using the default budget and seed.
pub fn oracle_check(n: u64, depth: u32, sample_size: usize) -> Result<Verdict> {
    oracle_check_with(n, OracleConfig::new(depth, sample_size))
}

/// Runs the three brute-force checks for `n`.
///
/// 1. Balls of radius `depth` around the first member of each canonical
///    representative are pairwise disjoint.
/// 2. For random signatures with `2 |a| + 1 <= depth`, every member of
///    `reduce(s)` lies in the ball around `s`.
/// 3. The triple loop with bound `ceil((n + 3)/2)` reproduces `A+(-n)`.
pub fn oracle_check_with(n: u64, config: OracleConfig) -> Result<Verdict> {
    require_squarefree(n)?;
    let depth = config.depth.max(2);
    let mut verdict = Verdict {
        n,
        depth,
        balls: 0,
        disjoint: true,
        overlaps: Vec::new(),
        reachability_failures: Vec::new(),
        sampled: 0,
        enumeration_match: false,
        cap_exceeded: false,
    };

    let reps = canonical_reps(n)?;
    let mut owner: BTreeMap<Signature, usize> = BTreeMap::new();
    for (index, rep) in reps.iter().enumerate() {
        let ball = match bfs_ball_with_budget(rep.members()[0], depth, config.budget) {
            Ok(ball) => ball,
            Err(Error::CapExceeded { .. }) => {
                verdict.cap_exceeded = true;
                break;
            }
            Err(e) => return Err(e),
        };
        verdict.balls += 1;
        for s in ball.elements {
            if let Some(&other) = owner.get(&s) {
                if other != index {
                    verdict.disjoint = false;
                    if verdict.overlaps.len() < 16 {
                        verdict.overlaps.push(s);
                    }
                }
            } else {
                owner.insert(s, index);
            }
        }
    }

    let max_norm = u64::from((depth - 1) / 2);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ n);
    for _ in 0..config.samples {
        let s = random_signature(n, max_norm, &mut rng)?;
        verdict.sampled += 1;
        let ball = match bfs_ball_with_budget(s, depth, config.budget) {
            Ok(ball) => ball,
            Err(Error::CapExceeded { .. }) => {
                verdict.cap_exceeded = true;
                break;
            }
            Err(e) => return Err(e),
        };
        if !reduce(s).members().iter().all(|m| ball.contains(m)) {
            verdict.reachability_failures.push(s);
        }
    }

    let limit = (n + 3).div_ceil(2);
    verdict.enumeration_match = brute_force_a_plus(n, limit)? == enumerate_a_plus(n)?;
    Ok(verdict)
}

/// A uniformly chosen `a` with `|a| <= max_norm`, then a random divisor of
/// `a^2 + n` with random sign as `c`.
pub fn random_signature<R: Rng + ?Sized>(n: u64, max_norm: u64, rng: &mut R) -> Result<Signature> {
    let bound = i64::try_from(max_norm).map_err(|_| Error::Overflow)?;
    let a = rng.random_range(-bound..=bound);
    let m = a.unsigned_abs() * a.unsigned_abs() + n;
    let divisors = factorize(m)?.divisors();
    let c = divisors[rng.random_range(0..divisors.len())] as i64;
    let c = if rng.random_bool(0.5) { c } else { -c };
    Signature::with_squarefree_modulus(n, a, c)
}
