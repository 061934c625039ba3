//! Parabolic subgroup schemes of simple algebraic groups in positive
//! characteristic: the numerical-function classification, the group scheme
//! structure of the connected automorphism group of the associated
//! homogeneous space, and exact linear-algebra verification of the
//! supporting Lie-theoretic facts over prime fields.

pub mod autgroup;
pub mod catalog;
pub mod chevalley;
pub mod dynkin;
pub mod error;
pub mod fp;
pub mod geometry;
pub mod isogeny;
pub mod oracle;
pub mod parabolic;
pub mod rootsys;

pub use autgroup::{aut_group, demazure_aut, AutDescriptor};
pub use dynkin::{DynkinType, Family};
pub use error::{Error, Result};
pub use parabolic::{parse_spec, ParabolicSpec, PhiFunction};
pub use rootsys::{RootSystem, Weight};
