//! Signatures of elements of `M(-n)` and the action of the generators.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith;
use crate::{Error, Result};

/// Largest `|b|` or `|c|` accepted from outside.
///
/// With both bounded by `2^61` a single generator step cannot overflow, and
/// the descent in [`crate::orbits::reduce`] never increases `max(|b|, |c|)`
/// before its final step.
pub const MAX_ENTRY: i64 = 1 << 61;

/// The element `(a + sqrt(-n)) / c` of `M(-n)`, stored as `(n, a, b, c)` with
/// `b * c = a^2 + n`.
///
/// `b` and `c` are never zero and always share a sign. Ordering is
/// lexicographic on `(n, a, b, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    n: i64,
    a: i64,
    b: i64,
    c: i64,
}

/// The trichotomy of elements of `M(-n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementClass {
    /// `a * c > 0`.
    TotallyPositive,
    /// `a * c < 0`.
    TotallyNegative,
    /// `a = 0`.
    NormZero,
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementClass::TotallyPositive => "positive",
            ElementClass::TotallyNegative => "negative",
            ElementClass::NormZero => "zero",
        })
    }
}

/// Generators of the modular group as used in words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `z -> -1/z`, order 2.
    X,
    /// `z -> (z - 1)/z`, order 3.
    Y,
    /// `y` applied twice.
    Y2,
}

impl Generator {
    /// Textual symbol: `x`, `y` or `yy`.
    pub fn symbol(self) -> &'static str {
        match self {
            Generator::X => "x",
            Generator::Y => "y",
            Generator::Y2 => "yy",
        }
    }
}

impl Signature {
    /// Builds the signature of `(a + sqrt(-n)) / c`, deriving `b`.
    ///
    /// Fails if `n` is zero or not square-free, if `c` is zero or does not
    /// divide `a^2 + n`, or if an entry exceeds [`MAX_ENTRY`].
    pub fn new(n: u64, a: i64, c: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Zero("n"));
        }
        arith::require_squarefree(n)?;
        Self::with_squarefree_modulus(n, a, c)
    }

    /// Like [`Signature::new`] without re-checking that `n` is square-free.
    pub(crate) fn with_squarefree_modulus(n: u64, a: i64, c: i64) -> Result<Self> {
        if c == 0 {
            return Err(Error::Zero("c"));
        }
        let n_signed = i64::try_from(n).map_err(|_| Error::Overflow)?;
        let value = i128::from(a) * i128::from(a) + i128::from(n_signed);
        let value = i64::try_from(value).map_err(|_| Error::Overflow)?;
        if value % c != 0 {
            return Err(Error::NotDivisible { n: n_signed, a, c });
        }
        let b = value / c;
        if b.unsigned_abs() > MAX_ENTRY as u64 || c.unsigned_abs() > MAX_ENTRY as u64 {
            return Err(Error::Overflow);
        }
        Ok(Self::from_parts(n_signed, a, b, c))
    }

    /// Assembles a signature already known to satisfy `b * c = a^2 + n`.
    pub(crate) fn from_parts(n: i64, a: i64, b: i64, c: i64) -> Self {
        debug_assert!(n > 0 && c != 0);
        debug_assert_eq!(
            i128::from(b) * i128::from(c),
            i128::from(a) * i128::from(a) + i128::from(n),
            "b*c != a^2+n for ({n}; {a}, {b}, {c})"
        );
        Signature { n, a, b, c }
    }

    /// The modulus `n`.
    pub fn n(&self) -> i64 {
        self.n
    }

    /// Numerator offset `a`.
    pub fn a(&self) -> i64 {
        self.a
    }

    /// Derived entry `b = (a^2 + n) / c`.
    pub fn b(&self) -> i64 {
        self.b
    }

    /// Denominator `c`.
    pub fn c(&self) -> i64 {
        self.c
    }

    /// `(a, b, c)`.
    pub fn triple(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    /// Componentwise negation `(-a, -b, -c)`, which is again a signature.
    pub fn negated(&self) -> Self {
        Signature::from_parts(self.n, -self.a, -self.b, -self.c)
    }

    /// `|a|`. Not the field norm.
    pub fn norm(&self) -> u64 {
        self.a.unsigned_abs()
    }

    /// Sign of the denominator, `1` or `-1`. Constant on orbits.
    pub fn sign(&self) -> i64 {
        self.c.signum()
    }

    /// Classifies by the sign of `a * c`.
    pub fn classify(&self) -> ElementClass {
        match self.a.signum() * self.c.signum() {
            0 => ElementClass::NormZero,
            1 => ElementClass::TotallyPositive,
            _ => ElementClass::TotallyNegative,
        }
    }

    /// Applies one generator, reporting overflow instead of panicking.
    pub fn try_apply(&self, g: Generator) -> Result<Self> {
        let (a, b, c) = (i128::from(self.a), i128::from(self.b), i128::from(self.c));
        let (na, nb, nc) = match g {
            Generator::X => (-a, c, b),
            Generator::Y => (b - a, -2 * a + b + c, b),
            Generator::Y2 => (c - a, c, -2 * a + b + c),
        };
        let fit = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow);
        Ok(Signature::from_parts(self.n, fit(na)?, fit(nb)?, fit(nc)?))
    }

    /// Applies one generator.
    ///
    /// Panics on `i64` overflow, which cannot happen for entries within
    /// [`MAX_ENTRY`].
    pub fn apply(&self, g: Generator) -> Self {
        self.try_apply(g).expect("signature arithmetic overflow")
    }

    /// `x`: `(a, b, c) -> (-a, c, b)`.
    pub fn apply_x(&self) -> Self {
        self.apply(Generator::X)
    }

    /// `y`: `(a, b, c) -> (b - a, -2a + b + c, b)`.
    pub fn apply_y(&self) -> Self {
        self.apply(Generator::Y)
    }

    /// `y^2`: `(a, b, c) -> (c - a, c, -2a + b + c)`.
    pub fn apply_y2(&self) -> Self {
        self.apply(Generator::Y2)
    }

    /// Applies the generators of `word` in order, first symbol first.
    pub fn apply_word(&self, word: &GeneratorWord) -> Self {
        word.0.iter().fold(*self, |s, &g| s.apply(g))
    }

    /// Checked variant of [`Signature::apply_word`].
    pub fn try_apply_word(&self, word: &GeneratorWord) -> Result<Self> {
        word.0.iter().try_fold(*self, |s, &g| s.try_apply(g))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// A finite word over `{x, y, yy}`. No free reduction is performed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GeneratorWord(pub Vec<Generator>);

impl GeneratorWord {
    /// The empty word.
    pub fn identity() -> Self {
        GeneratorWord(Vec::new())
    }

    /// Number of symbols.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the identity.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<Generator>> for GeneratorWord {
    fn from(v: Vec<Generator>) -> Self {
        GeneratorWord(v)
    }
}

impl FromStr for GeneratorWord {
    type Err = Error;

    /// Parses dot-separated symbols, e.g. `x.y.yy`. The empty string is the
    /// identity.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::identity());
        }
        s.split('.')
            .map(|sym| match sym.trim() {
                "x" => Ok(Generator::X),
                "y" => Ok(Generator::Y),
                "yy" => Ok(Generator::Y2),
                _ => Err(Error::BadWord),
            })
            .collect::<Result<Vec<_>>>()
            .map(GeneratorWord)
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(g.symbol())?;
        }
        Ok(())
    }
}
