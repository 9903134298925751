use core::fmt;

/// Failures reported by the geometry, algebra and quantization routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The point lies outside the metric's domain `r^m > a^m`.
    Domain {
        /// `r^m − a^m` at the offending point.
        excess: f64,
    },
    /// Closed-form and direct inverses of the metric disagree.
    Conditioning {
        /// Largest entrywise discrepancy.
        discrepancy: f64,
    },
    /// Rejection sampling failed too many consecutive times.
    Exhaustion {
        /// Consecutive rejections before giving up.
        attempts: u32,
    },
    /// Two objects built over different dimensions were combined.
    DimensionMismatch {
        /// Dimension that was required.
        expected: usize,
        /// Dimension that was supplied.
        found: usize,
    },
    /// A coordinate index outside `0..m`.
    Index {
        /// Offending index.
        index: usize,
        /// Complex dimension.
        m: usize,
    },
    /// Parameters violate their invariants.
    InvalidParams(&'static str),
    /// A matrix that had to be singular-free was singular.
    Singular,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { excess } => {
                write!(
                    f,
                    "point outside the metric domain (r^m - a^m = {excess:e})"
                )
            }
            Error::Conditioning { discrepancy } => write!(
                f,
                "closed-form and direct metric inverses disagree by {discrepancy:e}"
            ),
            Error::Exhaustion { attempts } => {
                write!(f, "sampling rejected {attempts} consecutive draws")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Index { index, m } => {
                write!(f, "coordinate index {index} out of range for m = {m}")
            }
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::Singular => f.write_str("singular matrix"),
        }
    }
}

impl core::error::Error for Error {}
