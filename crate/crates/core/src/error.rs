use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numeric core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite complex value {0}; use ExtendedComplex::Infinity for the point at infinity")]
    NonFinite(Complex64),

    #[error("matrix is singular (|ad - bc| = {0:e})")]
    SingularMatrix(f64),

    #[error("trace of conj(S)·S has imaginary part {0:e}, expected a real value")]
    NonRealInvariant(f64),

    #[error("trace of conj(S)·S is {0}, below the admissible range [-2, inf)")]
    InvariantOutOfRange(f64),

    #[error("degenerate point: w2 = conj(w1) = {0}")]
    DegeneratePoint(Complex64),

    #[error("the pairing is only defined in the finite chart")]
    InfiniteChart,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("polynomial has no roots (degree {0})")]
    ConstantPolynomial(isize),

    #[error("root finder did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("square-free decomposition inconsistent: {0}")]
    MultiplicityMismatch(String),

    #[error("contour passes within {distance:e} of a pole at {pole}")]
    PoleOnContour { pole: Complex64, distance: f64 },

    #[error("function vanishes on the boundary near {0}")]
    BoundaryZero(Complex64),

    #[error("quadrature did not converge (last difference {0:e})")]
    QuadratureNoConvergence(f64),

    #[error("argument-principle count {0} is not close to an integer")]
    RoundingResidual(f64),

    #[error("evaluation hit a pole at {0}")]
    Pole(Complex64),

    #[error("phi does not satisfy the null identity (residual {0:e})")]
    NotNull(f64),

    #[error("phi vanishes identically")]
    ZeroPhi,

    #[error("target {0} lies in E_f")]
    TargetInEf(String),

    #[error("E_f is {0}; the operation needs a finite nonempty set")]
    Inapplicable(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("sample {0} lies outside the target disk")]
    OutsideTarget(Complex64),
}

pub type Result<T> = std::result::Result<T, Error>;
