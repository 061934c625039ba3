//! Randomized structural invariants.

use proptest::prelude::*;

use flagvar::dynkin::DynkinType;
use flagvar::fp::Subspace;
use flagvar::parabolic::{
    canonicalize, intersect, phi_from_spec, spec_from_phi, ExoticKind, KernelSpec, ParabolicSpec,
};
use flagvar::rootsys::{is_dominant, BorelSide, Weight};

fn arb_type() -> impl Strategy<Value = DynkinType> {
    prop::sample::select(vec![
        "A1", "A2", "A3", "B2", "B3", "C2", "C3", "D3", "D4", "F4", "G2",
    ])
    .prop_map(|s| DynkinType::parse(s).unwrap())
}

fn arb_kernel(ty: DynkinType, p: u8) -> impl Strategy<Value = KernelSpec> {
    let has_vs = ty.has_very_special_isogeny(p);
    (0u32..=4).prop_map(move |rank| {
        let k = KernelSpec::from_chain_rank(rank);
        if k.is_valid_for(ty, p) {
            k
        } else {
            KernelSpec::Frob(rank.max(1))
        }
    })
    .prop_filter("kernel valid", move |k| match k {
        KernelSpec::VerySpecial(_) => has_vs,
        _ => true,
    })
}

fn arb_spec() -> impl Strategy<Value = ParabolicSpec> {
    (arb_type(), prop::sample::select(vec![2u8, 3, 5])).prop_flat_map(|(ty, p)| {
        let rank = ty.rank;
        (1u32..(1 << rank)).prop_flat_map(move |mask| {
            let alphas: Vec<usize> = (0..rank).filter(|i| mask & (1 << i) != 0).collect();
            let kernels = prop::collection::vec(arb_kernel(ty, p), alphas.len());
            kernels.prop_map(move |ks| {
                let factors = alphas.iter().copied().zip(ks).collect();
                ParabolicSpec::new(ty, p, factors, None).unwrap()
            })
        })
    })
}

fn arb_exotic_spec() -> impl Strategy<Value = ParabolicSpec> {
    (
        prop::sample::select(vec![ExoticKind::Q1, ExoticKind::Q2]),
        0u32..3,
        prop::option::of(0u32..3),
    )
        .prop_map(|(kind, pull, extra)| {
            let extra: Vec<(usize, KernelSpec)> = match extra {
                None => Vec::new(),
                Some(0) => vec![(1, KernelSpec::Trivial)],
                Some(m) => vec![(1, KernelSpec::Frob(m))],
            };
            ParabolicSpec::exotic(kind, pull, &extra).unwrap()
        })
}

proptest! {
    #[test]
    fn phi_round_trip(spec in arb_spec()) {
        let phi = phi_from_spec(&spec);
        let back = spec_from_phi(spec.ty, spec.p, &phi).unwrap();
        prop_assert_eq!(&back, &canonicalize(&spec));
        prop_assert_eq!(phi_from_spec(&back), phi);
    }

    #[test]
    fn phi_round_trip_exotic(spec in arb_exotic_spec()) {
        let phi = phi_from_spec(&spec);
        let back = spec_from_phi(spec.ty, spec.p, &phi).unwrap();
        prop_assert_eq!(phi_from_spec(&back), phi);
    }

    #[test]
    fn arbitrary_functions_reconstruct_or_reject(
        ty in arb_type(),
        p in prop::sample::select(vec![2u8, 3, 5]),
        seed in any::<u64>(),
    ) {
        // spec_from_phi on an arbitrary total function: either a spec whose
        // function matches exactly, or a clean rejection with a witness
        use flagvar::rootsys::RootSystem;
        use flagvar::error::Error;
        let rs = RootSystem::shared(ty);
        let n = rs.positive_roots.len();
        let mut state = seed | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let values: Vec<Option<u32>> = (0..n)
            .map(|_| match next() % 5 {
                0 => None,
                k => Some((k - 1) as u32),
            })
            .collect();
        let phi = flagvar::PhiFunction { ty, p, values };
        match spec_from_phi(ty, p, &phi) {
            Ok(spec) => prop_assert_eq!(phi_from_spec(&spec), phi),
            Err(Error::NotAParabolic { root, .. }) => {
                prop_assert!(rs.positive_roots.iter().any(|r| r.0 == root));
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn intersection_commutes(a in arb_spec(), b in arb_spec()) {
        if a.ty == b.ty && a.p == b.p {
            let ab = intersect(&a, &b).unwrap();
            let ba = intersect(&b, &a).unwrap();
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn grammar_displays_and_reparses(spec in arb_spec()) {
        let text = spec.to_string();
        let back = flagvar::parse_spec(&text).unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn grammar_displays_and_reparses_exotic(spec in arb_exotic_spec()) {
        let text = spec.to_string();
        let back = flagvar::parse_spec(&text).unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn dominance_flip(coords in prop::collection::vec(-5i64..=5, 2)) {
        let ty = DynkinType::parse("G2").unwrap();
        let w = Weight(coords);
        prop_assert_eq!(
            is_dominant(ty, &w, BorelSide::B),
            is_dominant(ty, &w.neg(), BorelSide::BMinus)
        );
    }

    #[test]
    fn subspace_sum_contains_parts(
        rows_a in prop::collection::vec(prop::collection::vec(0u8..5, 4), 1..3),
        rows_b in prop::collection::vec(prop::collection::vec(0u8..5, 4), 1..3),
    ) {
        let a = Subspace::from_vectors(5, 4, rows_a);
        let b = Subspace::from_vectors(5, 4, rows_b);
        let s = a.sum(&b);
        prop_assert!(s.contains(&a));
        prop_assert!(s.contains(&b));
        let i = a.intersect(&b);
        prop_assert!(a.contains(&i));
        prop_assert!(b.contains(&i));
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
    }
}

#[test]
fn bracket_vector_jacobi_samples() {
    // Jacobi holds for arbitrary vectors, not only basis triples.
    let l = flagvar::chevalley::build_lie_algebra(DynkinType::parse("G2").unwrap(), 3).unwrap();
    let mut state = 42u64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as u8 % 3
    };
    for _ in 0..25 {
        let x: Vec<u8> = (0..l.dim).map(|_| next()).collect();
        let y: Vec<u8> = (0..l.dim).map(|_| next()).collect();
        let z: Vec<u8> = (0..l.dim).map(|_| next()).collect();
        let mut acc = vec![0u8; l.dim];
        for (a, b, c) in [(&x, &y, &z), (&y, &z, &x), (&z, &x, &y)] {
            let t = l.bracket(&l.bracket(a, b).unwrap(), c).unwrap();
            for k in 0..l.dim {
                acc[k] = (acc[k] + t[k]) % 3;
            }
        }
        assert!(acc.iter().all(|&v| v == 0));
    }
}
