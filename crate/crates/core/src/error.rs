use core::fmt;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument that must be a positive integer was zero.
    Zero(&'static str),
    /// The modulus is divisible by the square of `prime`.
    NotSquareFree {
        /// The offending modulus.
        n: u64,
        /// Smallest prime whose square divides `n`.
        prime: u64,
    },
    /// `c` does not divide `a^2 + n`.
    NotDivisible {
        /// Modulus.
        n: i64,
        /// Numerator offset.
        a: i64,
        /// Proposed denominator.
        c: i64,
    },
    /// A value left the range the signature arithmetic supports.
    Overflow,
    /// The divisor-sum count is only stated for `n > 3`.
    OutOfDomain {
        /// The rejected modulus.
        n: u64,
    },
    /// The divisor sum was not divisible by three.
    FractionalCount {
        /// Modulus.
        n: u64,
        /// The offending sum.
        sum: i64,
    },
    /// Two signatures with different moduli were compared.
    ModulusMismatch {
        /// Modulus of the first signature.
        left: i64,
        /// Modulus of the second signature.
        right: i64,
    },
    /// The bounded triple loop would miss elements of `A+(-n)`.
    LimitTooSmall {
        /// Modulus.
        n: u64,
        /// The rejected loop bound.
        limit: u64,
    },
    /// A BFS ball outgrew its element budget.
    CapExceeded {
        /// The configured budget.
        budget: usize,
    },
    /// A generator word contained an unknown symbol.
    BadWord,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Zero(what) => write!(f, "{what} must be positive"),
            Error::NotSquareFree { n, prime } => {
                write!(f, "{n} is not square-free ({prime}\u{b2} | {n})")
            }
            Error::NotDivisible { n, a, c } => {
                let value = i128::from(*a) * i128::from(*a) + i128::from(*n);
                write!(f, "{c} \u{2224} {value} (a\u{b2}+n with a={a}, n={n})")
            }
            Error::Overflow => f.write_str("signature arithmetic overflow"),
            Error::OutOfDomain { n } => {
                write!(f, "divisor-sum count requires n > 3, got {n}")
            }
            Error::FractionalCount { n, sum } => {
                write!(f, "divisor sum {sum} for n={n} is not divisible by 3")
            }
            Error::ModulusMismatch { left, right } => {
                write!(f, "signatures have different moduli ({left} and {right})")
            }
            Error::LimitTooSmall { n, limit } => write!(
                f,
                "loop bound {limit} cannot reach every element of A+(-{n}); need > {}",
                n.div_ceil(2)
            ),
            Error::CapExceeded { budget } => {
                write!(f, "ball exceeded the budget of {budget} signatures")
            }
            Error::BadWord => f.write_str("generator words use x, y, yy separated by dots"),
        }
    }
}

impl core::error::Error for Error {}

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
