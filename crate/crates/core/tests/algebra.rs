//! Canonical (anti)commutation relations and basic operator identities over
//! randomly composed mixed boson/fermion spaces.

use heisenfield::fock::{
    annihilation_op, anticommutator, basis_state, build_space, commutator, create_op, expectation,
    identity_op, FockSpace, MatrixOperator, ModeSpec, Statistics,
};
use heisenfield::C64;
use proptest::prelude::*;

fn mode_strategy() -> impl Strategy<Value = (u8, usize)> {
    // kind: 0 photon, 1 electron, 2 positron; cutoff only used for photons
    (0u8..3, 1usize..=3)
}

fn space_strategy() -> impl Strategy<Value = FockSpace> {
    prop::collection::vec(mode_strategy(), 1..=4).prop_map(|kinds| {
        let specs: Vec<ModeSpec> = kinds
            .iter()
            .enumerate()
            .map(|(i, &(kind, cutoff))| {
                let site = format!("s{i}");
                match kind {
                    0 => ModeSpec::photon(&site, cutoff),
                    1 => ModeSpec::electron(&site),
                    _ => ModeSpec::positron(&site),
                }
            })
            .collect();
        build_space(&specs).unwrap()
    })
}

/// Max-abs entry of `op` restricted to columns where every bosonic mode sits
/// strictly below its cutoff.
fn below_cutoff_norm(space: &FockSpace, op: &MatrixOperator) -> f64 {
    let mut worst: f64 = 0.0;
    for col in 0..space.dim() {
        let ok = space
            .modes()
            .iter()
            .enumerate()
            .all(|(p, m)| match m.statistics {
                Statistics::Bose { cutoff } => space.occupation(col, p) < cutoff,
                Statistics::Fermi => true,
            });
        if ok {
            for z in op.matrix().column(col).iter() {
                worst = worst.max(z.norm());
            }
        }
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_relations(space in space_strategy()) {
        let ids: Vec<_> = space.modes().iter().map(|m| m.id.clone()).collect();
        let id = identity_op(&space);
        for (i, x) in ids.iter().enumerate() {
            let ax = annihilation_op(&space, x).unwrap();
            let fermi_x = space.modes()[i].statistics.is_fermi();
            for (j, y) in ids.iter().enumerate() {
                let ay = annihilation_op(&space, y).unwrap();
                let ay_dag = create_op(&space, y).unwrap();
                let fermi_y = space.modes()[j].statistics.is_fermi();
                if fermi_x && fermi_y {
                    let delta = if i == j { id.clone() } else { MatrixOperator::zeros(&space) };
                    let car = anticommutator(&ax, &ay_dag).unwrap().distance(&delta).unwrap();
                    prop_assert!(car < 1e-12);
                    prop_assert!(anticommutator(&ax, &ay).unwrap().norm_max() < 1e-12);
                } else if i != j {
                    // distinct modes where at least one is bosonic commute exactly
                    prop_assert_eq!(commutator(&ax, &ay).unwrap().norm_max(), 0.0);
                    prop_assert_eq!(commutator(&ax, &ay_dag).unwrap().norm_max(), 0.0);
                } else {
                    let ccr = commutator(&ax, &ay_dag).unwrap().sub(&id).unwrap();
                    prop_assert!(below_cutoff_norm(&space, &ccr) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn vacuum_is_annihilated(space in space_strategy()) {
        let vac = basis_state(&space, &vec![0; space.modes().len()]).unwrap();
        for m in space.modes() {
            let a = annihilation_op(&space, &m.id).unwrap();
            prop_assert!(a.apply(&vac).unwrap().iter().all(|z| z.norm() == 0.0));
        }
    }

    #[test]
    fn adjoint_involution_and_real_expectations(
        space in space_strategy(),
        seed in any::<u64>(),
    ) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let psi = heisenfield::scenarios::random::random_state(&mut rng, &space).unwrap();
        for m in space.modes() {
            let a = annihilation_op(&space, &m.id).unwrap();
            prop_assert_eq!(a.adjoint().adjoint(), a.clone());
            let herm = a.add(&a.adjoint()).unwrap().scale(C64::new(0.3, 0.0))
                .add(&a.adjoint().mul(&a).unwrap()).unwrap();
            prop_assert!(herm.is_hermitian(1e-14));
            prop_assert!(expectation(&psi, &herm).unwrap().im.abs() < 1e-10);
        }
    }
}

#[test]
fn photons_commute_with_fermions_under_the_global_string() {
    let space = build_space(&[
        ModeSpec::electron("L"),
        ModeSpec::photon("L", 2),
        ModeSpec::positron("L"),
        ModeSpec::photon("R", 2),
        ModeSpec::electron("R"),
    ])
    .unwrap();
    for p in space.species_modes(heisenfield::fock::Species::Photon) {
        let a = annihilation_op(&space, &p).unwrap();
        for f in space.fermionic_modes() {
            let b = annihilation_op(&space, &f).unwrap();
            for (x, y) in [(&a, &b), (&a, &b.adjoint()), (&a.adjoint(), &b)] {
                assert!(commutator(x, y).unwrap().norm_max() < 1e-12);
            }
        }
    }
    // electron and positron ladders anticommute (single global string)
    let b = annihilation_op(&space, &heisenfield::fock::ModeId::electron("L")).unwrap();
    let d = annihilation_op(&space, &heisenfield::fock::ModeId::positron("L")).unwrap();
    assert!(anticommutator(&b, &d).unwrap().norm_max() < 1e-12);
    assert!(anticommutator(&b, &d.adjoint()).unwrap().norm_max() < 1e-12);
}
