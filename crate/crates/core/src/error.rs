use core::fmt;

/// Errors produced by the geometry and search routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    EvenDegree(u32),
    UnsupportedDegree(u32),
    NonPrimitiveModulus(u32),
    InvertZero,
    /// A derived presemifield has a singular right multiplication.
    DegeneratePresemifield,
    NonCommutative,
    WrongSize { expected: usize, found: usize },
    BadShift { n: u32, d: u32 },
    NotTypeA,
    NotTypeB,
    NotTranslation,
    InfeasibleDomain { n: u32 },
    ParameterMismatch,
    NotADifferenceSet,
    InfinityNotInOval,
    /// The plane has no Frobenius autotopism, so group operations that rely on it are unavailable.
    NoFrobenius,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EvenDegree(n) => write!(f, "extension degree {n} is even"),
            Error::UnsupportedDegree(n) => write!(f, "extension degree {n} is outside the supported range"),
            Error::NonPrimitiveModulus(m) => write!(f, "modulus {m:#x} is not a primitive polynomial of the requested degree"),
            Error::InvertZero => f.write_str("cannot invert zero"),
            Error::DegeneratePresemifield => f.write_str("derived multiplication has a zero divisor"),
            Error::NonCommutative => f.write_str("presemifield is not commutative"),
            Error::WrongSize { expected, found } => write!(f, "expected {expected} elements, found {found}"),
            Error::BadShift { n, d } => write!(f, "shift d={d} is not coprime to n={n}"),
            Error::NotTypeA => f.write_str("not a type (a) translation hyperoval"),
            Error::NotTypeB => f.write_str("not a type (b) translation hyperoval"),
            Error::NotTranslation => f.write_str("affine part is not a coset of an additive subgroup of order q"),
            Error::InfeasibleDomain { n } => write!(f, "search domain is infeasible for n={n}"),
            Error::ParameterMismatch => f.write_str("design parameters do not match"),
            Error::NotADifferenceSet => f.write_str("set is not a difference set"),
            Error::InfinityNotInOval => f.write_str("hyperoval does not contain the point (oo)"),
            Error::NoFrobenius => f.write_str("Frobenius map is not an autotopism of this presemifield"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
