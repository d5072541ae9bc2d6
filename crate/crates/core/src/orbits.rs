//! Orbit counting, canonical representatives, and per-modulus audits.
//!
//! Every orbit of `M(-n)` contains either exactly one `x`-pair of norm-zero
//! elements or exactly one totally positive triple, never both. That pair or
//! triple is the orbit's canonical representative, reached from any element
//! by a descent on `|a|`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{binomial, require_squarefree_with, Factorizer, TrialDivision};
use crate::enumerate::{
    diagonal_of, enumerate_a_plus_with, norm_zero_elements, triples_of, PositiveTriple,
};
use crate::signature::{ElementClass, Signature};
use crate::{Error, Result};

/// Canonical representative of an orbit.
///
/// Ordering puts pairs before triples, then compares sorted member lists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitRep {
    /// `{z, x z}` with `a = 0`; a single element when `n = 1`.
    NormZeroPair(Vec<Signature>),
    /// A totally positive `y`-orbit.
    Triple(PositiveTriple),
}

impl OrbitRep {
    fn pair(z: Signature) -> Self {
        let mut members = vec![z, z.apply_x()];
        members.sort_unstable();
        members.dedup();
        OrbitRep::NormZeroPair(members)
    }

    /// Sorted members.
    pub fn members(&self) -> &[Signature] {
        match self {
            OrbitRep::NormZeroPair(m) => m,
            OrbitRep::Triple(t) => t.members(),
        }
    }

    /// Modulus.
    pub fn n(&self) -> i64 {
        self.members()[0].n()
    }

    /// True for a norm-zero pair.
    pub fn is_pair(&self) -> bool {
        matches!(self, OrbitRep::NormZeroPair(_))
    }
}

impl fmt::Display for OrbitRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitRep::NormZeroPair(_) => "NormZeroPair{",
            OrbitRep::Triple(_) => "Triple{",
        })?;
        for (i, m) in self.members().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// Full record of one descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent {
    /// Where the descent ended.
    pub rep: OrbitRep,
    /// Number of triple inspections.
    pub iterations: u64,
    /// Signatures visited in order: the input, its `x`-image if it was
    /// totally negative, then each totally negative `beta` followed by
    /// `x beta`.
    pub path: Vec<Signature>,
}

impl Descent {
    /// Class of every signature on the path.
    pub fn classes(&self) -> Vec<ElementClass> {
        self.path.iter().map(Signature::classify).collect()
    }
}

/// Canonical representative of the orbit of `s`.
pub fn reduce(s: Signature) -> OrbitRep {
    reduce_traced(s).rep
}

/// The descent with its path.
///
/// A totally negative input is first moved by `x`. Then, repeatedly, the
/// triple `{s, ys, y^2 s}` is inspected: a norm-zero member ends the
/// descent at its `x`-pair, an all-positive triple ends it at that triple,
/// and otherwise the unique totally negative member `beta` has smaller norm
/// than `s` and the descent continues from `x beta`. At most `|a| + 1`
/// inspections happen.
pub fn reduce_traced(s: Signature) -> Descent {
    let mut path = vec![s];
    let mut current = s;
    if current.classify() == ElementClass::TotallyNegative {
        current = current.apply_x();
        path.push(current);
    }
    let mut iterations = 0u64;
    loop {
        iterations += 1;
        let triple = [current, current.apply_y(), current.apply_y2()];
        if let Some(&z) = triple.iter().find(|m| m.norm() == 0) {
            return Descent { rep: OrbitRep::pair(z), iterations, path };
        }
        let mut negatives = triple
            .iter()
            .filter(|m| m.classify() == ElementClass::TotallyNegative);
        let Some(&beta) = negatives.next() else {
            let t = PositiveTriple::generated_by(current).expect("all members totally positive");
            return Descent { rep: OrbitRep::Triple(t), iterations, path };
        };
        debug_assert!(negatives.next().is_none(), "two negatives in one y-triple");
        debug_assert!(beta.norm() < current.norm());
        current = beta.apply_x();
        path.push(beta);
        path.push(current);
    }
}

/// Whether two signatures lie in the same orbit.
pub fn same_orbit(s1: Signature, s2: Signature) -> Result<bool> {
    if s1.n() != s2.n() {
        return Err(Error::ModulusMismatch { left: s1.n(), right: s2.n() });
    }
    Ok(reduce(s1) == reduce(s2))
}

/// Orbit count from `d(n) + |T+(-n)|` (and `2` for `n = 1`).
pub fn count_orbits(n: u64) -> Result<u64> {
    count_orbits_with(n, &TrialDivision)
}

/// [`count_orbits`] with a caller-supplied factorizer.
pub fn count_orbits_with<F: Factorizer + ?Sized>(n: u64, factorizer: &F) -> Result<u64> {
    Ok(summarize_with(n, factorizer)?.orbits)
}

/// The quantities behind the direct orbit count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitSummary {
    /// Modulus.
    pub n: u64,
    /// `d(n)`.
    pub d: u64,
    /// `|T+(-n)|`.
    pub t_plus: usize,
    /// Number of orbits.
    pub orbits: u64,
}

impl OrbitSummary {
    /// Orbits holding norm-zero elements: `d(n)`, or 2 when `n = 1`.
    pub fn norm_zero_orbits(&self) -> u64 {
        self.orbits - self.t_plus as u64
    }
}

/// `d(n)`, `|T+(-n)|` and the orbit count for one modulus.
pub fn summarize_with<F: Factorizer + ?Sized>(n: u64, factorizer: &F) -> Result<OrbitSummary> {
    let f = require_squarefree_with(n, factorizer)?;
    let d = f.divisor_count();
    let t_plus = triples_of(&enumerate_a_plus_with(n, factorizer)?).len();
    let orbits = if n == 1 { 2 } else { d + t_plus as u64 };
    Ok(OrbitSummary { n, d, t_plus, orbits })
}

/// One summand `d(i^2 + n) - 2 d_{<=i}(i^2 + n)` of the divisor-sum count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisorSumTerm {
    /// Summation index.
    pub i: u64,
    /// `i^2 + n`.
    pub m: u64,
    /// `d(m)`.
    pub divisors: u64,
    /// `d_{<=i}(m)`.
    pub divisors_upto: u64,
}

impl DivisorSumTerm {
    /// `d(m) - 2 d_{<=i}(m)`, the number of elements of `A+(-n)` with `a = i`.
    pub fn value(&self) -> i64 {
        self.divisors as i64 - 2 * self.divisors_upto as i64
    }
}

/// The summands for `i = 1..=n/2`.
pub fn divisor_sum_terms<F: Factorizer + ?Sized>(
    n: u64,
    factorizer: &F,
) -> Result<Vec<DivisorSumTerm>> {
    require_squarefree_with(n, factorizer)?;
    (1..=n / 2)
        .map(|i| {
            let m = i.checked_mul(i).and_then(|sq| sq.checked_add(n)).ok_or(Error::Overflow)?;
            let f = factorizer.factorize(m)?;
            Ok(DivisorSumTerm {
                i,
                m,
                divisors: f.divisor_count(),
                divisors_upto: f.divisor_count_upto(i),
            })
        })
        .collect()
}

/// Orbit count from `d(n) + (2/3) sum_{i=1}^{n/2} [d(i^2+n) - 2 d_{<=i}(i^2+n)]`,
/// valid for square-free `n > 3`.
pub fn count_orbits_divisor_sum(n: u64) -> Result<u64> {
    count_orbits_divisor_sum_with(n, &TrialDivision)
}

/// [`count_orbits_divisor_sum`] with a caller-supplied factorizer.
pub fn count_orbits_divisor_sum_with<F: Factorizer + ?Sized>(n: u64, factorizer: &F) -> Result<u64> {
    let f = require_squarefree_with(n, factorizer)?;
    if n <= 3 {
        return Err(Error::OutOfDomain { n });
    }
    let sum: i64 = divisor_sum_terms(n, factorizer)?.iter().map(DivisorSumTerm::value).sum();
    if sum < 0 || sum % 3 != 0 {
        return Err(Error::FractionalCount { n, sum });
    }
    Ok(f.divisor_count() + 2 * sum as u64 / 3)
}

/// One representative per orbit: the norm-zero pairs first, then one
/// triple per element of `T+(-n)`.
pub fn canonical_reps(n: u64) -> Result<Vec<OrbitRep>> {
    let zero = norm_zero_elements(n)?;
    let pairs: BTreeSet<OrbitRep> = zero.elements.iter().map(|&z| OrbitRep::pair(z)).collect();
    let a_plus = enumerate_a_plus_with(n, &TrialDivision)?;
    let mut reps: Vec<OrbitRep> = pairs.into_iter().collect();
    reps.extend(triples_of(&a_plus).into_iter().map(OrbitRep::Triple));
    Ok(reps)
}

/// A failed law in an [`OrbitReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The two counting formulas disagree.
    CountMismatch {
        /// `d(n) + |T+|`.
        orbits: u64,
        /// The divisor-sum value.
        divisor_sum: u64,
    },
    /// The divisor-sum count could not be evaluated.
    DivisorSum(Error),
    /// The orbit count is not divisible by four.
    Mod4 {
        /// The orbit count.
        count: u64,
    },
    /// `|A+(-n)|` is not divisible by three for `n != 3`.
    APlusMod3 {
        /// `|A+(-n)|`.
        size: usize,
    },
    /// `|A+(-n)| = 1` does not hold exactly for `n = 3`.
    APlusSingleton {
        /// `|A+(-n)|`.
        size: usize,
    },
    /// `|T+(-n)| != (2/3) |A+(-n)|` for `n != 3`.
    TripleRatio {
        /// `|A+(-n)|`.
        a_plus: usize,
        /// `|T+(-n)|`.
        t_plus: usize,
    },
    /// The `b = c` subset has the wrong size or content.
    Diagonal {
        /// Size predicted from the factorization of `n`.
        expected: usize,
        /// Size found by enumeration.
        found: usize,
    },
}

impl Violation {
    /// Short stable name of the violated law.
    pub fn law(&self) -> &'static str {
        match self {
            Violation::CountMismatch { .. } => "count-agreement",
            Violation::DivisorSum(_) => "divisor-sum",
            Violation::Mod4 { .. } => "orbits-mod-4",
            Violation::APlusMod3 { .. } => "a-plus-mod-3",
            Violation::APlusSingleton { .. } => "a-plus-singleton",
            Violation::TripleRatio { .. } => "triple-ratio",
            Violation::Diagonal { .. } => "diagonal",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CountMismatch { orbits, divisor_sum } => {
                write!(f, "direct count {orbits} != divisor-sum count {divisor_sum}")
            }
            Violation::DivisorSum(e) => write!(f, "{e}"),
            Violation::Mod4 { count } => write!(f, "orbit count {count} is not 0 mod 4"),
            Violation::APlusMod3 { size } => write!(f, "|A+| = {size} is not 0 mod 3"),
            Violation::APlusSingleton { size } => {
                write!(f, "|A+| = {size} breaks |A+| = 1 iff n = 3")
            }
            Violation::TripleRatio { a_plus, t_plus } => {
                write!(f, "|T+| = {t_plus} != 2/3 * |A+| = 2/3 * {a_plus}")
            }
            Violation::Diagonal { expected, found } => {
                write!(f, "b = c subset has {found} elements, expected {expected}")
            }
        }
    }
}

/// Everything known about one modulus, with every failed law listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    /// Modulus.
    pub n: u64,
    /// `d(n)`.
    pub d: u64,
    /// `|A+(-n)|`.
    pub a_plus: usize,
    /// `|T+(-n)|`.
    pub t_plus: usize,
    /// `|A+(-n)|` restricted to `b = c`.
    pub diagonal: usize,
    /// Orbit count via `d(n) + |T+|`.
    pub orbits: u64,
    /// Orbit count via the divisor sum, for `n > 3`.
    pub divisor_sum: Option<u64>,
    /// Whether `orbits` is divisible by 4. Only a violation for `n > 2`.
    pub mod4_ok: bool,
    /// Failed laws; empty when everything holds.
    pub violations: Vec<Violation>,
}

impl OrbitReport {
    /// Orbits without a totally positive triple, i.e. those holding the
    /// norm-zero elements. Equals `d(n)` except at `n = 1`, where both
    /// norm-zero elements are `x`-fixed and lie in separate orbits.
    pub fn norm_zero_orbits(&self) -> u64 {
        self.orbits - self.t_plus as u64
    }

    /// True when no law failed.
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Audit one modulus using trial division.
pub fn verify_report(n: u64) -> Result<OrbitReport> {
    verify_report_with(n, &TrialDivision)
}

/// Computes both counts and checks the congruences and diagonal laws.
pub fn verify_report_with<F: Factorizer + ?Sized>(n: u64, factorizer: &F) -> Result<OrbitReport> {
    let fact = require_squarefree_with(n, factorizer)?;
    let d = fact.divisor_count();
    let a_plus_set = enumerate_a_plus_with(n, factorizer)?;
    let a_plus = a_plus_set.len();
    let t_plus = triples_of(&a_plus_set).len();
    let diag = diagonal_of(&a_plus_set);
    let orbits = if n == 1 { 2 } else { d + t_plus as u64 };
    let mut violations = Vec::new();

    let divisor_sum = if n > 3 {
        match count_orbits_divisor_sum_with(n, factorizer) {
            Ok(v) => Some(v),
            Err(e) => {
                violations.push(Violation::DivisorSum(e));
                None
            }
        }
    } else {
        None
    };
    if let Some(divisor_sum) = divisor_sum {
        if divisor_sum != orbits {
            violations.push(Violation::CountMismatch { orbits, divisor_sum });
        }
    }

    let mod4_ok = orbits % 4 == 0;
    if n > 2 && !mod4_ok {
        violations.push(Violation::Mod4 { count: orbits });
    }
    if (a_plus == 1) != (n == 3) {
        violations.push(Violation::APlusSingleton { size: a_plus });
    }
    if n != 3 {
        if a_plus % 3 != 0 {
            violations.push(Violation::APlusMod3 { size: a_plus });
        }
        if 3 * t_plus != 2 * a_plus {
            violations.push(Violation::TripleRatio { a_plus, t_plus });
        }
    }

    if let Some(expected) = expected_diagonal_size(n, fact.prime_count() as u64) {
        let content_ok = !(n % 2 == 1 && fact.prime_count() == 1) || {
            let (lo, hi) = ((n as i64 - 1) / 2, (n as i64 + 1) / 2);
            diag.elements.iter().all(|s| s.triple() == (lo, hi, hi))
        };
        if diag.len() != expected || !content_ok {
            violations.push(Violation::Diagonal { expected, found: diag.len() });
        }
    }

    Ok(OrbitReport {
        n,
        d,
        a_plus,
        t_plus,
        diagonal: diag.len(),
        orbits,
        divisor_sum,
        mod4_ok,
        violations,
    })
}

/// Size of the `b = c` subset predicted from the shape of `n`, or `None`
/// for `n` in `{1, 2}` where no law is stated.
///
/// Odd primes give one element and even composites none. For odd `n` with
/// `r >= 2` prime factors each factorization `n = (b + a)(b - a)` with
/// `b + a > b - a` counts once: `sum_{k < r/2} C(r, k)`, plus `C(r, r/2)/2`
/// when `r` is even, which is `2^(r-1)`.
pub fn expected_diagonal_size(n: u64, prime_count: u64) -> Option<usize> {
    let r = prime_count;
    match (n % 2 == 0, r) {
        _ if n <= 2 => None,
        (true, _) => Some(0),
        (false, 1) => Some(1),
        (false, r) => {
            let half: u64 = (0..r.div_ceil(2)).map(|k| binomial(r, k)).sum();
            let count = if r % 2 == 0 { half + binomial(r, r / 2) / 2 } else { half };
            debug_assert_eq!(count, 1 << (r - 1));
            Some(count as usize)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: u64, a: i64, c: i64) -> Signature {
        Signature::new(n, a, c).unwrap()
    }

    fn member_triples(rep: &OrbitRep) -> Vec<(i64, i64, i64)> {
        rep.members().iter().map(Signature::triple).collect()
    }

    #[test]
    fn direct_count_examples() {
        let one = summarize_with(1, &TrialDivision).unwrap();
        assert_eq!((one.d, one.t_plus, one.orbits, one.norm_zero_orbits()), (1, 0, 2, 2));
        assert_eq!(count_orbits(1), Ok(2));
        assert_eq!(count_orbits(2), Ok(2));
        assert_eq!(count_orbits(3), Ok(4));
        assert_eq!(count_orbits(11), Ok(8));
        assert_eq!(count_orbits(66), Ok(16));
        assert!(count_orbits(8).is_err());
    }

    #[test]
    fn divisor_sum_examples() {
        assert_eq!(count_orbits_divisor_sum(11), Ok(8));
        assert_eq!(count_orbits_divisor_sum(5), Ok(4));
        assert_eq!(count_orbits_divisor_sum(95), Ok(32));
        assert_eq!(count_orbits_divisor_sum(3), Err(Error::OutOfDomain { n: 3 }));
        assert_eq!(count_orbits_divisor_sum(1), Err(Error::OutOfDomain { n: 1 }));
        assert_eq!(
            count_orbits_divisor_sum(9),
            Err(Error::NotSquareFree { n: 9, prime: 3 })
        );
    }

    #[test]
    fn divisor_sum_terms_for_eleven() {
        let terms = divisor_sum_terms(11, &TrialDivision).unwrap();
        let got: Vec<_> = terms.iter().map(|t| (t.i, t.m, t.divisors, t.divisors_upto)).collect();
        assert_eq!(
            got,
            [(1, 12, 6, 1), (2, 15, 4, 1), (3, 20, 6, 2), (4, 27, 4, 2), (5, 36, 9, 4)]
        );
        let total: i64 = terms.iter().map(DivisorSumTerm::value).sum();
        assert_eq!(total, 29 - 20);
    }

    #[test]
    fn reduce_examples() {
        let rep = reduce(sig(5, 1, 2));
        assert_eq!(member_triples(&rep), [(1, 2, 3), (1, 3, 2), (2, 3, 3)]);
        assert!(!rep.is_pair());

        let rep = reduce(sig(1, 0, 1));
        assert_eq!(rep, OrbitRep::NormZeroPair(vec![sig(1, 0, 1)]));

        // (-5,-6,-6) is in A-(-11); its y-orbit is its own representative
        let rep = reduce(sig(11, -5, -6));
        assert_eq!(
            member_triples(&rep),
            [(-5, -6, -6), (-1, -6, -2), (-1, -2, -6)]
        );
    }

    #[test]
    fn reduce_trace_shape() {
        // (3,10,1) in M(-1) walks down to i
        let d = reduce_traced(sig(1, 3, 1));
        assert_eq!(d.rep, OrbitRep::NormZeroPair(vec![sig(1, 0, 1)]));
        assert_eq!(d.iterations, 3);
        assert_eq!(
            d.path.iter().map(Signature::triple).collect::<Vec<_>>(),
            [(3, 10, 1), (-2, 1, 5), (2, 5, 1), (-1, 1, 2), (1, 2, 1)]
        );
        use ElementClass::*;
        assert_eq!(
            d.classes(),
            [TotallyPositive, TotallyNegative, TotallyPositive, TotallyNegative, TotallyPositive]
        );
    }

    #[test]
    fn same_orbit_examples() {
        let s = sig(7, 3, 2);
        assert_eq!(same_orbit(s, s.apply_x()), Ok(true));
        assert_eq!(same_orbit(sig(1, 0, 1), sig(1, 0, -1)), Ok(false));
        assert_eq!(same_orbit(sig(6, 0, 1), sig(6, 0, 6)), Ok(true));
        assert_eq!(
            same_orbit(sig(6, 0, 1), sig(5, 0, 1)),
            Err(Error::ModulusMismatch { left: 6, right: 5 })
        );
    }

    #[test]
    fn canonical_reps_examples() {
        let one = canonical_reps(1).unwrap();
        assert_eq!(
            one,
            [
                OrbitRep::NormZeroPair(vec![sig(1, 0, -1)]),
                OrbitRep::NormZeroPair(vec![sig(1, 0, 1)])
            ]
        );
        let two = canonical_reps(2).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.iter().all(OrbitRep::is_pair));
        let eleven = canonical_reps(11).unwrap();
        assert_eq!(eleven.iter().filter(|r| r.is_pair()).count(), 2);
        assert_eq!(eleven.len(), 8);
    }

    #[test]
    fn report_examples() {
        let r = verify_report(11).unwrap();
        assert_eq!((r.d, r.a_plus, r.t_plus, r.orbits, r.divisor_sum), (2, 9, 6, 8, Some(8)));
        assert!(r.mod4_ok && r.is_ok());

        let r = verify_report(2).unwrap();
        assert_eq!((r.d, r.a_plus, r.t_plus, r.orbits, r.divisor_sum), (2, 0, 0, 2, None));
        assert!(!r.mod4_ok && r.is_ok());

        let r = verify_report(66).unwrap();
        assert_eq!((r.d, r.t_plus, r.orbits), (8, 8, 16));

        let r = verify_report(1).unwrap();
        assert_eq!((r.d, r.orbits, r.norm_zero_orbits()), (1, 2, 2));
        assert!(r.is_ok());

        assert!(verify_report(50).is_err());
    }

    #[test]
    fn expected_diagonal_sizes() {
        assert_eq!(expected_diagonal_size(1, 0), None);
        assert_eq!(expected_diagonal_size(2, 1), None);
        assert_eq!(expected_diagonal_size(11, 1), Some(1));
        assert_eq!(expected_diagonal_size(30, 3), Some(0));
        assert_eq!(expected_diagonal_size(15, 2), Some(2));
        assert_eq!(expected_diagonal_size(105, 3), Some(4));
        assert_eq!(expected_diagonal_size(1155, 4), Some(8));
    }

    #[test]
    fn violation_names() {
        let v = Violation::Mod4 { count: 6 };
        assert_eq!(v.law(), "orbits-mod-4");
        assert_eq!(alloc::format!("{v}"), "orbit count 6 is not 0 mod 4");
    }
}
