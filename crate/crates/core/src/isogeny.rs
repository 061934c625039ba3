//! The chain of non-central isogeny kernels and the combinatorial action
//! of the very special isogeny.

use crate::dynkin::DynkinType;
use crate::error::{Error, Result};
use crate::fp::Subspace;
use crate::parabolic::KernelSpec;
use crate::rootsys::{Root, RootSystem};

pub use crate::parabolic::chain_compare;

/// A non-central isogeny described by its kernel; Frobenius twists keep
/// the type, very special kernels land in the dual type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsogenyDescriptor {
    pub source: DynkinType,
    pub target: DynkinType,
    pub kernel: KernelSpec,
    pub twist: u32,
}

impl IsogenyDescriptor {
    pub fn new(source: DynkinType, p: u8, kernel: KernelSpec) -> Result<IsogenyDescriptor> {
        match kernel {
            KernelSpec::VerySpecial(m) => {
                let (target, _) = very_special_dual(source, p)?;
                Ok(IsogenyDescriptor { source, target, kernel, twist: m })
            }
            KernelSpec::Frob(m) => Ok(IsogenyDescriptor { source, target: source, kernel, twist: m }),
            KernelSpec::Trivial => Ok(IsogenyDescriptor { source, target: source, kernel, twist: 0 }),
        }
    }
}

/// Index permutation realizing the diagram duality on simple roots:
/// identity for B/C, the flip for F4, the swap for G2.
pub fn dual_index_map(ty: DynkinType) -> Option<Vec<usize>> {
    use crate::dynkin::Family;
    match ty.family {
        Family::B | Family::C => Some((0..ty.rank).collect()),
        Family::F | Family::G => Some((0..ty.rank).rev().collect()),
        _ => None,
    }
}

/// Dual type together with the induced bijection on simple roots
/// (short and long exchanged for F4 and G2; indices preserved for B/C).
pub fn very_special_dual(ty: DynkinType, p: u8) -> Result<(DynkinType, Vec<usize>)> {
    if !ty.has_very_special_isogeny(p) {
        return Err(Error::NoVerySpecialIsogeny { ty: ty.to_string(), p });
    }
    Ok((ty.dual_type().unwrap(), dual_index_map(ty).unwrap()))
}

/// Image of a root under the very special isogeny, as a root of the dual
/// system: coroot coordinates relabelled by the diagram duality.
pub fn dual_root(rs: &RootSystem, p: u8, gamma: &Root) -> Result<Root> {
    let (_, perm) = very_special_dual(rs.ty, p)?;
    let cc = rs.coroot_coords(gamma);
    let mut out = vec![0i64; rs.rank()];
    for (i, &c) in cc.iter().enumerate() {
        out[perm[i]] = c;
    }
    Ok(Root(out))
}

/// One row of the composition table: heights added at a positive root by
/// the very special isogeny and by the dual one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeRow {
    pub root: Root,
    pub first: u32,
    pub second: u32,
}

/// The two-step height table of the very special isogeny followed by the
/// dual one; the row sums all equal 1, the Frobenius rule.
pub fn compose_very_special(ty: DynkinType, p: u8) -> Result<Vec<ComposeRow>> {
    let rs = RootSystem::new(ty);
    let (dual, _) = very_special_dual(ty, p)?;
    let dual_rs = RootSystem::new(dual);
    let mut rows = Vec::new();
    for gamma in &rs.positive_roots {
        let first = if rs.is_short(gamma) { 1 } else { 0 };
        let image = dual_root(&rs, p, gamma)?;
        assert!(dual_rs.is_root(&image), "duality sends roots to roots");
        // lengths flip: the image of a long root is short in the dual
        assert_eq!(rs.is_short(gamma), !dual_rs.is_short(&image));
        let second = if dual_rs.is_short(&image) { 1 } else { 0 };
        assert_eq!(first + second, 1, "composition is the Frobenius rule");
        rows.push(ComposeRow { root: gamma.clone(), first, second });
    }
    Ok(rows)
}

/// Dimension of the smallest restricted subalgebra of the Chevalley
/// algebra containing all short root spaces.
pub fn lie_n_dimension(ty: DynkinType, p: u8) -> Result<usize> {
    if !ty.has_very_special_isogeny(p) {
        return Err(Error::NoVerySpecialIsogeny { ty: ty.to_string(), p });
    }
    let l = crate::chevalley::build_lie_algebra(ty, p)?;
    let short_vectors: Vec<Vec<u8>> = l
        .rs
        .roots()
        .filter(|r| l.rs.is_short(r))
        .map(|r| {
            let mut v = vec![0u8; l.dim];
            v[l.basis_index(r).unwrap()] = 1;
            v
        })
        .collect();
    let span = Subspace::from_vectors(p, l.dim, short_vectors);
    Ok(crate::oracle::p_closure(&l, &span).dim())
}
