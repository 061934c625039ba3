//! Error type shared across the crate.

use std::fmt;

use crate::parabolic::KernelSpec;

/// Domain errors. `Display` yields the stable kebab-case error name,
/// followed by context where available.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    UnsupportedType(String),
    NotDominant,
    BadDimension { expected: usize, got: usize },
    NotARoot(String),
    NotReduced,
    NoVerySpecialIsogeny { ty: String, p: u8 },
    NoExotic { ty: String, p: u8 },
    /// The numerical function is realized by no parabolic subgroup scheme.
    /// Carries a witness: the root where reconstruction disagrees, together
    /// with the value found and the value the classification forces.
    NotAParabolic {
        root: Vec<i64>,
        found: Option<u32>,
        expected: Option<u32>,
    },
    /// Factors carry genuinely distinct nontrivial kernels; no single
    /// isogeny kernel reproduces the subgroup.
    NotUniform(Vec<(usize, KernelSpec)>),
    /// Tagged passthrough for the exotic parabolics, which fall outside the
    /// smooth-contraction normal form.
    Exotic,
    NotAFactor(usize),
    KernelTooSmall,
    /// The subgroup contains a full non-central isogeny kernel, so the
    /// normal form does not apply before dividing out a Frobenius twist.
    ContainsIsogenyKernel,
    BadScenario(String),
    InvalidSpec(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedType(s) => write!(f, "unsupported-type: {s}"),
            Error::NotDominant => write!(f, "not-dominant"),
            Error::BadDimension { expected, got } => {
                write!(f, "bad-dimension: expected {expected}, got {got}")
            }
            Error::NotARoot(s) => write!(f, "not-a-root: {s}"),
            Error::NotReduced => write!(f, "not-reduced"),
            Error::NoVerySpecialIsogeny { ty, p } => {
                write!(f, "no-very-special-isogeny: {ty} at p={p}")
            }
            Error::NoExotic { ty, p } => write!(f, "no-exotic: {ty} at p={p}"),
            Error::NotAParabolic { root, found, expected } => {
                let s = |v: &Option<u32>| match v {
                    Some(m) => m.to_string(),
                    None => "inf".to_string(),
                };
                write!(
                    f,
                    "not-a-parabolic: at root {:?} found {} but classification forces {}",
                    root,
                    s(found),
                    s(expected)
                )
            }
            Error::NotUniform(ks) => {
                write!(f, "not-uniform: per-factor kernels ")?;
                for (i, (a, k)) in ks.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "a{}:{}", a + 1, k)?;
                }
                Ok(())
            }
            Error::Exotic => write!(f, "exotic"),
            Error::NotAFactor(a) => write!(f, "not-a-factor: a{}", a + 1),
            Error::KernelTooSmall => write!(f, "kernel-too-small"),
            Error::ContainsIsogenyKernel => write!(f, "contains-isogeny-kernel"),
            Error::BadScenario(s) => write!(f, "bad-scenario: {s}"),
            Error::InvalidSpec(s) => write!(f, "invalid-spec: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
