//! The finite signature sets behind the orbit count.
//!
//! `A+(-n)` holds the positive signatures with `b > a` and `c > a`; these
//! are exactly the positive elements whose whole `y`-orbit is totally
//! positive. `A-(-n)` is its negation. Together they split into the
//! `y`-orbits that make up `T+(-n)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith::{require_squarefree_with, Factorizer, TrialDivision};
use crate::signature::{ElementClass, Signature};
use crate::{Error, Result};

/// Which set a [`SignatureSet`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetKind {
    /// `A+(-n)`.
    APlus,
    /// `A-(-n)`.
    AMinus,
    /// Members of all totally positive triples, i.e. `A+ u A-`.
    TPlus,
    /// The `2 d(n)` elements with `a = 0`.
    NormZero,
    /// Elements of `A+(-n)` with `b = c`.
    BEqualsC,
}

impl SetKind {
    /// Short name used on the command line and in output: `a+`, `a-`,
    /// `t+`, `zero`, `diag`.
    pub fn name(self) -> &'static str {
        match self {
            SetKind::APlus => "a+",
            SetKind::AMinus => "a-",
            SetKind::TPlus => "t+",
            SetKind::NormZero => "zero",
            SetKind::BEqualsC => "diag",
        }
    }
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetKind {
    type Err = &'static str;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "a+" => Ok(SetKind::APlus),
            "a-" => Ok(SetKind::AMinus),
            "t+" => Ok(SetKind::TPlus),
            "zero" => Ok(SetKind::NormZero),
            "diag" => Ok(SetKind::BEqualsC),
            _ => Err("expected one of a+, a-, t+, zero, diag"),
        }
    }
}

/// A sorted, duplicate-free list of signatures for one modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureSet {
    /// Modulus.
    pub n: u64,
    /// What the set is.
    pub kind: SetKind,
    /// Elements in increasing `(a, b, c)` order.
    pub elements: Vec<Signature>,
}

impl SignatureSet {
    fn new(n: u64, kind: SetKind, mut elements: Vec<Signature>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        SignatureSet { n, kind, elements }
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// True when empty.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Membership by binary search.
    pub fn contains(&self, s: &Signature) -> bool {
        self.elements.binary_search(s).is_ok()
    }
}

/// A `y`-orbit `{s, ys, y^2 s}` of totally positive elements.
///
/// Members are sorted, so two triples are equal exactly when they are the
/// same set. There are three members except for the two `y`-fixed points at
/// `n = 3`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositiveTriple {
    members: Vec<Signature>,
}

impl PositiveTriple {
    /// The `y`-orbit of `s`, or `None` if some member is not totally
    /// positive.
    pub fn generated_by(s: Signature) -> Option<Self> {
        let mut members = vec![s, s.apply_y(), s.apply_y2()];
        if members
            .iter()
            .any(|m| m.classify() != ElementClass::TotallyPositive)
        {
            return None;
        }
        members.sort_unstable();
        members.dedup();
        Some(PositiveTriple { members })
    }

    /// Sorted members.
    pub fn members(&self) -> &[Signature] {
        &self.members
    }

    /// Modulus of the members.
    pub fn n(&self) -> i64 {
        self.members[0].n()
    }

    /// Sign of the denominators (shared by all members).
    pub fn sign(&self) -> i64 {
        self.members[0].sign()
    }
}

/// `A+(-n)` using trial division.
pub fn enumerate_a_plus(n: u64) -> Result<SignatureSet> {
    enumerate_a_plus_with(n, &TrialDivision)
}

/// `A+(-n)`: for every `a` in `1..=n/2` and every divisor `c` of `a^2 + n`
/// with `c > a` and `(a^2 + n)/c > a`.
///
/// Elements outside `a <= n/2` cannot satisfy both inequalities, so the
/// outer bound loses nothing.
pub fn enumerate_a_plus_with<F: Factorizer + ?Sized>(
    n: u64,
    factorizer: &F,
) -> Result<SignatureSet> {
    require_squarefree_with(n, factorizer)?;
    let n_signed = i64::try_from(n).map_err(|_| Error::Overflow)?;
    let mut elements = Vec::new();
    for a in 1..=n / 2 {
        let m = a.checked_mul(a).and_then(|sq| sq.checked_add(n)).ok_or(Error::Overflow)?;
        for c in factorizer.factorize(m)?.divisors() {
            let b = m / c;
            if c > a && b > a {
                elements.push(Signature::from_parts(n_signed, a as i64, b as i64, c as i64));
            }
        }
    }
    Ok(SignatureSet::new(n, SetKind::APlus, elements))
}

/// `A-(-n)`, the componentwise negation of `A+(-n)`.
pub fn enumerate_a_minus(n: u64) -> Result<SignatureSet> {
    Ok(negate(&enumerate_a_plus(n)?))
}

fn negate(a_plus: &SignatureSet) -> SignatureSet {
    SignatureSet::new(
        a_plus.n,
        SetKind::AMinus,
        a_plus.elements.iter().map(Signature::negated).collect(),
    )
}

/// `T+(-n)` using trial division.
pub fn enumerate_t_plus(n: u64) -> Result<Vec<PositiveTriple>> {
    enumerate_t_plus_with(n, &TrialDivision)
}

/// `T+(-n)`: the `y`-orbits of `A+(-n) u A-(-n)`, one triple per orbit.
pub fn enumerate_t_plus_with<F: Factorizer + ?Sized>(
    n: u64,
    factorizer: &F,
) -> Result<Vec<PositiveTriple>> {
    let a_plus = enumerate_a_plus_with(n, factorizer)?;
    Ok(triples_of(&a_plus))
}

/// Groups `A+ u A-` into `y`-orbits. `a_plus` must be a complete `A+(-n)`.
pub(crate) fn triples_of(a_plus: &SignatureSet) -> Vec<PositiveTriple> {
    let a_minus = negate(a_plus);
    let mut triples = Vec::with_capacity(2 * a_plus.len() / 3 + 2);
    for set in [&a_minus, a_plus] {
        let mut visited = vec![false; set.len()];
        for (i, &s) in set.elements.iter().enumerate() {
            if visited[i] {
                continue;
            }
            let triple = PositiveTriple::generated_by(s)
                .expect("A+ and A- members generate totally positive triples");
            for m in triple.members() {
                let j = set
                    .elements
                    .binary_search(m)
                    .expect("A+ and A- are closed under y");
                visited[j] = true;
            }
            triples.push(triple);
        }
    }
    triples.sort_unstable();
    triples
}

/// The `2 d(n)` norm-zero elements `(0, n/c, c)` for `c | n`, both signs.
pub fn norm_zero_elements(n: u64) -> Result<SignatureSet> {
    let f = require_squarefree_with(n, &TrialDivision)?;
    let n_signed = i64::try_from(n).map_err(|_| Error::Overflow)?;
    let mut elements = Vec::new();
    for c in f.divisors() {
        let (b, c) = ((n / c) as i64, c as i64);
        elements.push(Signature::from_parts(n_signed, 0, b, c));
        elements.push(Signature::from_parts(n_signed, 0, -b, -c));
    }
    Ok(SignatureSet::new(n, SetKind::NormZero, elements))
}

/// Elements of `A+(-n)` with `b = c`, i.e. `(b + a)(b - a) = n`.
pub fn a_plus_diagonal(n: u64) -> Result<SignatureSet> {
    Ok(diagonal_of(&enumerate_a_plus(n)?))
}

pub(crate) fn diagonal_of(a_plus: &SignatureSet) -> SignatureSet {
    SignatureSet::new(
        a_plus.n,
        SetKind::BEqualsC,
        a_plus.elements.iter().filter(|s| s.b() == s.c()).copied().collect(),
    )
}

/// All members of `T+(-n)` as a flat set.
pub fn t_plus_members(n: u64) -> Result<SignatureSet> {
    let elements = enumerate_t_plus(n)?
        .iter()
        .flat_map(|t| t.members().iter().copied())
        .collect();
    Ok(SignatureSet::new(n, SetKind::TPlus, elements))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triples(set: &SignatureSet) -> Vec<(i64, i64, i64)> {
        set.elements.iter().map(Signature::triple).collect()
    }

    #[test]
    fn a_plus_examples() {
        assert_eq!(triples(&enumerate_a_plus(3).unwrap()), [(1, 2, 2)]);
        assert!(enumerate_a_plus(2).unwrap().is_empty());
        assert!(enumerate_a_plus(1).unwrap().is_empty());
        assert_eq!(
            triples(&enumerate_a_plus(11).unwrap()),
            [
                (1, 2, 6),
                (1, 3, 4),
                (1, 4, 3),
                (1, 6, 2),
                (2, 3, 5),
                (2, 5, 3),
                (3, 4, 5),
                (3, 5, 4),
                (5, 6, 6)
            ]
        );
        assert_eq!(
            enumerate_a_plus(12),
            Err(Error::NotSquareFree { n: 12, prime: 2 })
        );
    }

    #[test]
    fn a_minus_examples() {
        assert_eq!(triples(&enumerate_a_minus(3).unwrap()), [(-1, -2, -2)]);
        assert!(enumerate_a_minus(2).unwrap().is_empty());
        let plus = enumerate_a_plus(11).unwrap();
        let minus = enumerate_a_minus(11).unwrap();
        assert_eq!(minus.len(), 9);
        assert!(plus.elements.iter().all(|s| minus.contains(&s.negated())));
        assert!(enumerate_a_minus(25).is_err());
    }

    #[test]
    fn t_plus_examples() {
        let five = enumerate_t_plus(5).unwrap();
        assert_eq!(five.len(), 2);
        let pos: Vec<_> = five[1].members().iter().map(Signature::triple).collect();
        assert_eq!(pos, [(1, 2, 3), (1, 3, 2), (2, 3, 3)]);
        let neg: Vec<_> = five[0].members().iter().map(Signature::triple).collect();
        assert_eq!(neg, [(-2, -3, -3), (-1, -3, -2), (-1, -2, -3)]);

        let three = enumerate_t_plus(3).unwrap();
        assert_eq!(three.len(), 2);
        assert!(three.iter().all(|t| t.members().len() == 1));

        assert_eq!(enumerate_t_plus(11).unwrap().len(), 6);
        assert_eq!(t_plus_members(11).unwrap().len(), 18);
    }

    #[test]
    fn norm_zero_examples() {
        assert_eq!(
            triples(&norm_zero_elements(1).unwrap()),
            [(0, -1, -1), (0, 1, 1)]
        );
        let six = norm_zero_elements(6).unwrap();
        assert_eq!(six.len(), 8);
        let mut cs: Vec<_> = six.elements.iter().map(Signature::c).collect();
        cs.sort_unstable();
        assert_eq!(cs, [-6, -3, -2, -1, 1, 2, 3, 6]);
        assert_eq!(
            triples(&norm_zero_elements(11).unwrap()),
            [(0, -11, -1), (0, -1, -11), (0, 1, 11), (0, 11, 1)]
        );
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(triples(&a_plus_diagonal(11).unwrap()), [(5, 6, 6)]);
        assert!(a_plus_diagonal(10).unwrap().is_empty());
        assert_eq!(triples(&a_plus_diagonal(15).unwrap()), [(1, 4, 4), (7, 8, 8)]);
    }

    #[test]
    fn set_kind_names_round_trip() {
        for kind in [
            SetKind::APlus,
            SetKind::AMinus,
            SetKind::TPlus,
            SetKind::NormZero,
            SetKind::BEqualsC,
        ] {
            assert_eq!(kind.name().parse::<SetKind>(), Ok(kind));
        }
        assert!("b+".parse::<SetKind>().is_err());
    }
}
