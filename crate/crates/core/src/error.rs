use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    /// Family parameters outside the admissible range.
    InvalidParameters(String),
    /// Self loop or repeated edge in an edge list.
    NonSimpleGraph(String),
    /// A vertex name that the graph does not contain.
    UnknownVertex(String),
    /// The graph is not connected.
    Disconnected,
    /// The graph violates the odd-cycle condition, so the edge ring is not normal.
    NotNormal,
    /// No closed form is available for this graph.
    UnsupportedFamily,
    /// Closed-form canonical generators disagree with the brute-force enumeration.
    GeneratorMismatch(String),
    /// A graded Betti number was requested at a degree with odd total.
    OddTotalDegree,
    /// Two census members produced the same multidegree.
    DuplicateDegree(String),
    /// Dense scan region above the caller's cap.
    RegionTooLarge { size: u128, cap: u128 },
    /// Some earlier generator divides the current one, so the colon is the unit ideal.
    UnitColon { index: usize },
    /// A colon ideal in the chain is not generated by variables.
    IrregularStep { index: usize },
    /// A monomial list that is not a minimal generating set.
    NotMinimal(String),
    /// Malformed input text.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameters(m) => write!(f, "invalid family parameters: {m}"),
            Error::NonSimpleGraph(m) => write!(f, "graph is not simple: {m}"),
            Error::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            Error::Disconnected => f.write_str("graph is not connected"),
            Error::NotNormal => {
                f.write_str("graph violates the odd-cycle condition; edge ring is not normal")
            }
            Error::UnsupportedFamily => {
                f.write_str("graph is not a compact, multi-path, one-ear or two-ear graph")
            }
            Error::GeneratorMismatch(m) => write!(f, "canonical generators disagree: {m}"),
            Error::OddTotalDegree => f.write_str("multidegree has odd total degree"),
            Error::DuplicateDegree(m) => write!(f, "duplicate multidegree {m}"),
            Error::RegionTooLarge { size, cap } => {
                write!(f, "scan region has {size} points, cap is {cap}")
            }
            Error::UnitColon { index } => {
                write!(f, "colon ideal at position {index} is the unit ideal")
            }
            Error::IrregularStep { index } => {
                write!(f, "colon ideal at position {index} is not generated by variables")
            }
            Error::NotMinimal(m) => write!(f, "not a minimal generating set: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl core::error::Error for Error {}
