//! Schubert divisor and curve combinatorics on the homogeneous space:
//! Picard rank, the intersection pairing, the nef test, and contraction
//! targets.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::parabolic::{
    canonical_form, minimal_dominating_factor, phi_from_spec, FactorKernel,
    ParabolicSpec,
};

/// Integer divisor class over the Schubert divisor basis indexed by the
/// factor roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub coeffs: BTreeMap<usize, i64>,
}

/// Integer curve class over the dual Schubert curve basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    pub coeffs: BTreeMap<usize, i64>,
}

impl DivisorClass {
    pub fn basis(spec: &ParabolicSpec, alpha: usize) -> Result<DivisorClass> {
        check_factor(spec, alpha)?;
        Ok(DivisorClass { coeffs: BTreeMap::from([(alpha, 1)]) })
    }

    pub fn from_coeffs(spec: &ParabolicSpec, coeffs: &[(usize, i64)]) -> Result<DivisorClass> {
        for &(a, _) in coeffs {
            check_factor(spec, a)?;
        }
        Ok(DivisorClass { coeffs: coeffs.iter().copied().collect() })
    }
}

impl CurveClass {
    pub fn basis(spec: &ParabolicSpec, beta: usize) -> Result<CurveClass> {
        check_factor(spec, beta)?;
        Ok(CurveClass { coeffs: BTreeMap::from([(beta, 1)]) })
    }
}

fn check_factor(spec: &ParabolicSpec, alpha: usize) -> Result<()> {
    if spec.factor_roots().contains(&alpha) {
        Ok(())
    } else {
        Err(Error::NotAFactor(alpha))
    }
}

/// Number of Schubert divisor classes: the factor roots.
pub fn picard_rank(spec: &ParabolicSpec) -> usize {
    spec.factor_roots().len()
}

/// Intersection number against the dual bases: the identity matrix,
/// extended bilinearly.
pub fn pairing(d: &DivisorClass, c: &CurveClass) -> i64 {
    d.coeffs
        .iter()
        .map(|(a, x)| x * c.coeffs.get(a).copied().unwrap_or(0))
        .sum()
}

/// Nef exactly when every coefficient is non-negative.
pub fn is_nef(d: &DivisorClass) -> bool {
    d.coeffs.values().all(|&c| c >= 0)
}

/// The smallest parabolic containing both the subgroup and the reduced
/// maximal parabolic at `alpha`: the target of the contraction keeping
/// only the Schubert curve at `alpha`.
pub fn contraction_target(spec: &ParabolicSpec, alpha: usize) -> Result<ParabolicSpec> {
    check_factor(spec, alpha)?;
    let phi = phi_from_spec(spec);
    match minimal_dominating_factor(spec.ty, spec.p, alpha, &phi) {
        FactorKernel::Chain(k) => ParabolicSpec::new(spec.ty, spec.p, vec![(alpha, k)], None),
        FactorKernel::Exotic(e) => {
            ParabolicSpec::new(spec.ty, spec.p, Vec::new(), Some(e))
        }
    }
}

/// Factor roots whose contraction target is reduced; the minimal reduced
/// parabolic containing the subgroup is the intersection of those.
pub fn smooth_target(spec: &ParabolicSpec) -> Result<Vec<usize>> {
    if spec.exotic.is_some() {
        return Err(Error::Exotic);
    }
    // the normal-form preconditions also rule out contained isogeny kernels
    Ok(canonical_form(spec)?.j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::parse_spec;

    #[test]
    fn picard_ranks() {
        assert_eq!(picard_rank(&parse_spec("C3:p3:a1:T,a2:G1").unwrap()), 2);
        assert_eq!(picard_rank(&parse_spec("B4:p2:a2:N1").unwrap()), 1);
        assert_eq!(picard_rank(&parse_spec("G2:p2:a1:T,a2:T").unwrap()), 2);
        assert_eq!(picard_rank(&parse_spec("G2:p2:Q1,a2:G1").unwrap()), 2);
    }

    #[test]
    fn pairing_matrix() {
        let spec = parse_spec("C3:p3:a1:T,a2:G1").unwrap();
        let d1 = DivisorClass::basis(&spec, 0).unwrap();
        let d2 = DivisorClass::basis(&spec, 1).unwrap();
        let c1 = CurveClass::basis(&spec, 0).unwrap();
        let c2 = CurveClass::basis(&spec, 1).unwrap();
        assert_eq!(pairing(&d1, &c1), 1);
        assert_eq!(pairing(&d1, &c2), 0);
        assert_eq!(pairing(&d2, &c2), 1);
        let mix = DivisorClass::from_coeffs(&spec, &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(pairing(&mix, &c2), 3);
        assert!(DivisorClass::basis(&spec, 2).is_err());
    }

    #[test]
    fn nef_test() {
        let spec = parse_spec("G2:p2:a1:T,a2:T").unwrap();
        let zero = DivisorClass::from_coeffs(&spec, &[]).unwrap();
        assert!(is_nef(&zero));
        assert!(is_nef(&DivisorClass::basis(&spec, 0).unwrap()));
        let mixed = DivisorClass::from_coeffs(&spec, &[(0, 1), (1, -1)]).unwrap();
        assert!(!is_nef(&mixed));
    }

    #[test]
    fn contraction_targets() {
        let spec = parse_spec("C3:p3:a1:T,a2:G1").unwrap();
        assert_eq!(
            contraction_target(&spec, 1).unwrap(),
            parse_spec("C3:p3:a2:G1").unwrap()
        );
        assert_eq!(
            contraction_target(&spec, 0).unwrap(),
            parse_spec("C3:p3:a1:T").unwrap()
        );
        assert!(contraction_target(&spec, 2).is_err());

        let g2 = parse_spec("G2:p3:a2:T,a1:G1").unwrap();
        assert_eq!(
            contraction_target(&g2, 0).unwrap(),
            parse_spec("G2:p3:a1:N0").unwrap()
        );

        // containment and rank-one invariants
        for s in ["C3:p3:a1:T,a2:G1", "B3:p2:a3:T,a1:N1", "G2:p2:Q1,a2:G1"] {
            let spec = parse_spec(s).unwrap();
            let phi = phi_from_spec(&spec);
            for a in spec.factor_roots() {
                let t = contraction_target(&spec, a).unwrap();
                assert!(phi.le(&phi_from_spec(&t)), "{s} at a{}", a + 1);
                assert_eq!(picard_rank(&t), 1);
            }
        }
    }

    #[test]
    fn smooth_targets() {
        assert_eq!(
            smooth_target(&parse_spec("C3:p3:a1:T,a2:G1").unwrap()).unwrap(),
            vec![0]
        );
        assert_eq!(
            smooth_target(&parse_spec("A3:p2:a1:T,a3:T").unwrap()).unwrap(),
            vec![0, 2]
        );
        assert_eq!(
            smooth_target(&parse_spec("G2:p2:Q1,a2:G1").unwrap()).unwrap_err(),
            Error::Exotic
        );
        // the smooth target collects exactly the factors whose contraction
        // is reduced
        for s in ["C3:p3:a1:T,a2:G1", "B4:p2:a4:T,a1:N0,a2:G1", "G2:p3:a2:T,a1:G1"] {
            let spec = parse_spec(s).unwrap();
            let j = smooth_target(&spec).unwrap();
            for a in spec.factor_roots() {
                let t = contraction_target(&spec, a).unwrap();
                let reduced = t.is_reduced();
                assert_eq!(j.contains(&a), reduced, "{s} at a{}", a + 1);
            }
        }
    }
}
