//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails.

use heisenfield::descriptors::{
    frame_distance_mod_phase, normalize_global_phase, Circuit, GateSpec,
};
use heisenfield::fock::{
    annihilation_op, anticommutator, commutator, create_op, identity_op, number_op, FockSpace,
    MatrixOperator, ModeId, Site, Statistics,
};
use heisenfield::scenarios::random::random_circuit;
use heisenfield::scenarios::{
    boson_mz_circuit, bosonic_mz, dirac_space, equivalence_trials, fermion_mz_circuit,
    fermionic_mz, locality_audit, phase_concealment_check, phi_grid, photon_pair_space,
};
use heisenfield::superselection::{
    charge_density_op, check_admissible, coherence_op, parity_violating_unitary, wigner_demo,
    wigner_space,
};
use heisenfield::{Config, Result, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Result<Outcome> + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn grid() -> Vec<f64> {
    phi_grid(0.0, TAU, 64).expect("grid")
}

fn bosonic_fringe(cfg: &Config) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for phi in grid() {
        let r = bosonic_mz(phi, 2, cfg)?.record;
        worst = worst
            .max((r.n_left - (phi / 2.0).cos().powi(2)).abs())
            .max((r.n_right - (phi / 2.0).sin().powi(2)).abs());
    }
    outcome(
        worst < 1e-9,
        format!("max fringe deviation {worst:.3e} (tol 1e-9)"),
    )
}

fn descriptor_shape(cfg: &Config) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for phi in [0.0, FRAC_PI_3, FRAC_PI_2, PI] {
        let run = bosonic_mz(phi, 2, cfg)?;
        let row = run
            .frames
            .last()
            .expect("final frame")
            .row(&ModeId::photon("L"))?;
        let expected = [
            C64::new((phi / 2.0).cos(), 0.0),
            C64::new(0.0, (phi / 2.0).sin()),
        ];
        let (got, want) = (
            normalize_global_phase(&row),
            normalize_global_phase(&expected),
        );
        for (g, w) in got.iter().zip(&want) {
            worst = worst.max((g - w).norm());
        }
    }
    outcome(
        worst < 1e-10,
        format!("max row deviation {worst:.3e} (tol 1e-10)"),
    )
}

fn quadrature_identity(cfg: &Config) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for phi in grid() {
        let r = bosonic_mz(phi, 2, cfg)?.record;
        worst = worst.max((r.a_squared_left - 1.0 - 2.0 * r.n_left).abs());
    }
    outcome(
        worst < 1e-9,
        format!("max |<A^2> - 1 - 2<N>| {worst:.3e} (tol 1e-9)"),
    )
}

fn concealment(cfg: &Config) -> Result<Outcome> {
    let report = phase_concealment_check(&grid(), cfg)?;
    let space = photon_pair_space(2)?;
    let frame_at = |phi: f64| -> Result<_> {
        let frames = heisenfield::descriptors::run_frame(&boson_mz_circuit(&space, phi)?)?;
        Ok(frames[2].clone())
    };
    let frame_gap = frame_distance_mod_phase(&frame_at(0.0)?, &frame_at(FRAC_PI_2)?)?;
    outcome(
        report.max_boson_deviation < 1e-9 && frame_gap > 1e-3,
        format!(
            "max |<N_L(t2)> - 1/2| {:.3e} (tol 1e-9); t2 frame gap phi=0 vs pi/2 {frame_gap:.3}",
            report.max_boson_deviation
        ),
    )
}

fn fermionic_fringe(cfg: &Config) -> Result<Outcome> {
    let mut fringe: f64 = 0.0;
    let mut terms: f64 = 0.0;
    for phi in grid() {
        let r = fermionic_mz(phi, cfg)?.record;
        fringe = fringe.max((r.j0_left + (phi / 2.0).cos().powi(2)).abs());
        terms = terms.max((r.j0_left - r.surviving_terms).abs());
    }
    outcome(
        fringe < 1e-9 && terms < 1e-10,
        format!("max |<j0_L> + cos^2| {fringe:.3e} (tol 1e-9); surviving-terms gap {terms:.3e} (tol 1e-10)"),
    )
}

fn wigner(cfg: &Config) -> Result<Outcome> {
    let space = wigner_space();
    let r = wigner_demo(
        &space,
        &ModeId::electron("A"),
        &ModeId::electron("B"),
        cfg.tol.operator,
    )?;
    let dev = (r.expectation_without - 1.0)
        .abs()
        .max((r.expectation_with + 1.0).abs());
    outcome(
        dev < 1e-10 && r.descriptor_flip_residual < 1e-12 && r.signalling_detected,
        format!(
            "without {:+.12} with {:+.12}; flip residual {:.3e} (tol 1e-12)",
            r.expectation_without, r.expectation_with, r.descriptor_flip_residual
        ),
    )
}

fn superselection() -> Result<Outcome> {
    let space = dirac_space();
    let b = ModeId::electron("L");
    let f = annihilation_op(&space, &b)?;
    let fd = f.adjoint();
    let tol = 1e-10;
    let cases: Vec<(&str, MatrixOperator, bool)> = vec![
        ("f+f†", f.add(&fd)?, false),
        ("i(f†-f)", fd.sub(&f)?.scale(C64::new(0.0, 1.0)), false),
        ("n", number_op(&space, &b)?, true),
        (
            "j0(L)",
            charge_density_op(&space, &Site::from("L"), 1.0)?,
            true,
        ),
        (
            "coherence",
            coherence_op(&space, &Site::from("L"), &Site::from("R"))?,
            true,
        ),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, op, expected) in cases {
        let v = check_admissible(&op, tol);
        ok &= v.admissible == expected;
        parts.push(format!(
            "{name}:{}",
            if v.admissible { "accept" } else { "reject" }
        ));
    }
    outcome(ok, parts.join(" "))
}

fn audit(cfg: &Config) -> Result<Outcome> {
    let mut circuits = vec![
        boson_mz_circuit(&photon_pair_space(2)?, 1.1)?,
        fermion_mz_circuit(&dirac_space(), 0.7)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..20 {
        circuits.push(random_circuit(&mut rng, &dirac_space(), 10)?);
    }
    let mut library_ok = true;
    for c in &circuits {
        library_ok &= locality_audit(c, cfg)?.pass;
    }

    let space = wigner_space();
    let a = ModeId::electron("A");
    let pv = GateSpec::opaque(
        "PV(A)",
        vec![a.clone()],
        parity_violating_unitary(&space, &a)?,
    )?;
    let injected = locality_audit(&Circuit::new(&space, vec![pv])?, cfg)?;
    let dev = injected.gates[0].conjugation_deviation;
    outcome(
        library_ok && !injected.pass && dev >= 2.0 - 1e-10,
        format!(
            "{} library circuits pass: {library_ok}; injected gate fails: {}, far-mode deviation {dev:.12}",
            circuits.len(),
            !injected.pass
        ),
    )
}

fn equivalence(cfg: &Config) -> Result<Outcome> {
    let s = equivalence_trials(0, 100, 10, cfg)?;
    outcome(
        s.max_deviation < 1e-9 && s.failures == 0,
        format!(
            "{} circuits, max deviation {:.3e} (tol 1e-9)",
            s.trials, s.max_deviation
        ),
    )
}

fn below_cutoff(space: &FockSpace, op: &MatrixOperator) -> f64 {
    let mut worst: f64 = 0.0;
    for col in 0..space.dim() {
        let faithful = space
            .modes()
            .iter()
            .enumerate()
            .all(|(p, m)| match m.statistics {
                Statistics::Bose { cutoff } => space.occupation(col, p) < cutoff,
                Statistics::Fermi => true,
            });
        if faithful {
            for z in op.matrix().column(col).iter() {
                worst = worst.max(z.norm());
            }
        }
    }
    worst
}

fn algebra() -> Result<Outcome> {
    let bosons = photon_pair_space(3)?;
    let id = identity_op(&bosons);
    let mut ccr: f64 = 0.0;
    for x in bosons.modes() {
        for y in bosons.modes() {
            let c = commutator(
                &annihilation_op(&bosons, &x.id)?,
                &create_op(&bosons, &y.id)?,
            )?;
            let c = if x.id == y.id { c.sub(&id)? } else { c };
            ccr = ccr.max(below_cutoff(&bosons, &c));
        }
    }

    let fermions = dirac_space();
    let id = identity_op(&fermions);
    let mut car: f64 = 0.0;
    for x in fermions.modes() {
        let fx = annihilation_op(&fermions, &x.id)?;
        for y in fermions.modes() {
            let fy = annihilation_op(&fermions, &y.id)?;
            let mixed = anticommutator(&fx, &fy.adjoint())?;
            let mixed = if x.id == y.id { mixed.sub(&id)? } else { mixed };
            car = car
                .max(mixed.norm_max())
                .max(anticommutator(&fx, &fy)?.norm_max());
        }
    }

    let local = |site: &str| -> Result<Vec<MatrixOperator>> {
        let b = ModeId::electron(site);
        let d = ModeId::positron(site);
        let (bo, dop) = (
            annihilation_op(&fermions, &b)?,
            annihilation_op(&fermions, &d)?,
        );
        Ok(vec![
            number_op(&fermions, &b)?,
            number_op(&fermions, &d)?,
            bo.mul(&dop)?,
            bo.mul(&dop)?.adjoint(),
            bo.adjoint().mul(&dop.adjoint())?,
            charge_density_op(&fermions, &Site::from(site), 1.0)?,
        ])
    };
    let mut cross: f64 = 0.0;
    for x in local("L")? {
        for y in local("R")? {
            cross = cross.max(commutator(&x, &y)?.norm_max());
        }
    }
    outcome(
        ccr < 1e-12 && car < 1e-12 && cross < 1e-12,
        format!("CCR {ccr:.1e}, CAR {car:.1e}, cross-site quadratics {cross:.1e} (tol 1e-12)"),
    )
}

fn main() -> ExitCode {
    let cfg = Config::default();
    let criteria: Vec<Criterion> = vec![
        ("bosonic fringe", Box::new(|| bosonic_fringe(&cfg))),
        ("descriptor shape", Box::new(|| descriptor_shape(&cfg))),
        (
            "quadrature identity",
            Box::new(|| quadrature_identity(&cfg)),
        ),
        ("phase concealment", Box::new(|| concealment(&cfg))),
        ("fermionic fringe", Box::new(|| fermionic_fringe(&cfg))),
        ("wigner signalling", Box::new(|| wigner(&cfg))),
        ("superselection gate", Box::new(superselection)),
        ("locality audit", Box::new(|| audit(&cfg))),
        ("picture equivalence", Box::new(|| equivalence(&cfg))),
        ("algebra suite", Box::new(algebra)),
    ];

    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "[{}] {:>2}. {name}: {detail} ({:.2}s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
