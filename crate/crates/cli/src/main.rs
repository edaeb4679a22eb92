mod scenario;
mod table;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heisenfield::descriptors::{Circuit, GateSpec};
use heisenfield::scenarios::{
    boson_mz_circuit, dirac_space, equivalence_trials, fermion_mz_circuit, locality_audit,
    photon_pair_space, picture_equivalence, sweep, AuditReport, EquivalenceReport, FringeRecord,
    ScenarioKind,
};
use heisenfield::superselection::{
    local_quadratics, parity_violating_unitary, wigner_demo, wigner_space,
};
use heisenfield::{Config, Tolerances};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "heisenfield",
    version,
    about = "Heisenberg-picture few-mode interferometer simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Seed for randomized commands.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Agreement threshold for expectation values.
    #[arg(long, global = true)]
    tol_expectation: Option<f64>,
    /// Threshold for operator identities.
    #[arg(long, global = true)]
    tol_operator: Option<f64>,
    /// Threshold for exact algebraic identities.
    #[arg(long, global = true)]
    tol_exact: Option<f64>,
    /// Elementary charge magnitude.
    #[arg(long, default_value_t = 1.0, global = true)]
    charge: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi_min: f64,
    #[arg(long, default_value_t = TAU, allow_negative_numbers = true)]
    phi_max: f64,
    #[arg(long, default_value_t = 33)]
    steps: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AuditTarget {
    Boson,
    Fermion,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Single-photon Mach-Zehnder fringe sweep.
    BosonMz {
        #[command(flatten)]
        grid: GridArgs,
        /// Photon-number cutoff per mode.
        #[arg(long, default_value_t = 2)]
        cutoff: usize,
    },
    /// Electron Mach-Zehnder with charge rotation: charge-density fringe sweep.
    FermionMz {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Signalling protocol with a parity-violating unitary at A.
    Wigner,
    /// Gate-by-gate locality audit of a built-in interferometer or a circuit file.
    Audit {
        #[arg(long, value_enum, default_value_t = AuditTarget::Fermion, conflicts_with = "circuit")]
        scenario: AuditTarget,
        /// Circuit JSON file to audit instead of a built-in scenario.
        #[arg(long)]
        circuit: Option<PathBuf>,
        /// Phase used by the built-in scenario.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        phi: f64,
        /// Append a parity-violating gate on the first fermionic mode.
        #[arg(long)]
        inject_parity_violation: bool,
    },
    /// Schrödinger vs Heisenberg expectations on seeded random circuits.
    Equivalence {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 10)]
        max_gates: usize,
    },
    /// Run a circuit file: picture equivalence on local observables plus audit.
    Run { path: PathBuf },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Scenario(#[from] scenario::ScenarioError),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Model(heisenfield::Error),
    #[error("internal consistency check failed: {0}")]
    Physics(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<heisenfield::Error> for CliError {
    fn from(e: heisenfield::Error) -> Self {
        match e {
            heisenfield::Error::Consistency(msg) => CliError::Physics(msg),
            other => CliError::Model(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Physics(_) | CliError::Json(_) => 1,
            _ => 2,
        }
    }
}

/// Output text plus whether every physics check passed.
struct Outcome {
    text: String,
    pass: bool,
    failures: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RunReport {
    equivalence: EquivalenceReport,
    audit: AuditReport,
    pass: bool,
}

fn config(g: &GlobalArgs) -> Result<Config, CliError> {
    let d = Tolerances::default();
    let tol = Tolerances {
        expectation: g.tol_expectation.unwrap_or(d.expectation),
        operator: g.tol_operator.unwrap_or(d.operator),
        exact: g.tol_exact.unwrap_or(d.exact),
    };
    for (name, v) in [
        ("tol-expectation", tol.expectation),
        ("tol-operator", tol.operator),
        ("tol-exact", tol.exact),
        ("charge", g.charge),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(CliError::Input(format!(
                "--{name} must be positive, got {v}"
            )));
        }
    }
    Ok(Config {
        tol,
        charge: g.charge,
        ..Config::default()
    })
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn boson_mz(
    grid: &GridArgs,
    cutoff: usize,
    format: Format,
    cfg: &Config,
) -> Result<Outcome, CliError> {
    let records = sweep(
        ScenarioKind::Boson,
        grid.phi_min,
        grid.phi_max,
        grid.steps,
        cutoff,
        cfg,
    )?;
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for rec in &records {
        let FringeRecord::Boson(r) = rec else {
            unreachable!()
        };
        let (c2, s2) = ((r.phi / 2.0).cos().powi(2), (r.phi / 2.0).sin().powi(2));
        let dev = (r.n_left - c2)
            .abs()
            .max((r.n_right - s2).abs())
            .max((r.a_squared_left - 1.0 - 2.0 * r.n_left).abs());
        if dev >= cfg.tol.expectation {
            failures.push(format!("phi={}: fringe deviation {dev:e}", r.phi));
        }
        rows.push(
            [r.phi, r.n_left, r.n_right, r.a_squared_left]
                .map(table::number)
                .to_vec(),
        );
    }
    let text = match format {
        Format::Json => json(&records)?,
        Format::Csv => table::csv(&["phi", "n_left", "n_right", "a2_left"], &rows),
    };
    Ok(Outcome {
        text,
        pass: failures.is_empty(),
        failures,
    })
}

fn fermion_mz(grid: &GridArgs, format: Format, cfg: &Config) -> Result<Outcome, CliError> {
    let records = sweep(
        ScenarioKind::Fermion,
        grid.phi_min,
        grid.phi_max,
        grid.steps,
        2,
        cfg,
    )?;
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for rec in &records {
        let FringeRecord::Fermion(r) = rec else {
            unreachable!()
        };
        let expected = -cfg.charge * (r.phi / 2.0).cos().powi(2);
        let dev = (r.j0_left - expected)
            .abs()
            .max((r.j0_left - r.surviving_terms).abs());
        if dev >= cfg.tol.expectation {
            failures.push(format!("phi={}: charge-density deviation {dev:e}", r.phi));
        }
        rows.push(
            [r.phi, r.j0_left, r.j0_right, r.coherence]
                .map(table::number)
                .to_vec(),
        );
    }
    let text = match format {
        Format::Json => json(&records)?,
        Format::Csv => table::csv(&["phi", "j0_left", "j0_right", "coherence"], &rows),
    };
    Ok(Outcome {
        text,
        pass: failures.is_empty(),
        failures,
    })
}

fn wigner(format: Format, cfg: &Config) -> Result<Outcome, CliError> {
    use heisenfield::fock::ModeId;
    let space = wigner_space();
    let r = wigner_demo(
        &space,
        &ModeId::electron("A"),
        &ModeId::electron("B"),
        cfg.tol.operator,
    )?;
    let mut failures = Vec::new();
    if (r.expectation_without - 1.0).abs() >= cfg.tol.operator
        || (r.expectation_with + 1.0).abs() >= cfg.tol.operator
    {
        failures.push(format!(
            "expected +1 / -1, got {} / {}",
            r.expectation_without, r.expectation_with
        ));
    }
    if r.descriptor_flip_residual >= cfg.tol.exact {
        failures.push(format!("flip residual {:e}", r.descriptor_flip_residual));
    }
    let text = match format {
        Format::Json => json(&r)?,
        Format::Csv => table::csv(
            &[
                "expectation_without",
                "expectation_with",
                "expectation_with_heisenberg",
                "descriptor_flip_residual",
                "signalling_detected",
            ],
            &[vec![
                table::number(r.expectation_without),
                table::number(r.expectation_with),
                table::number(r.expectation_with_heisenberg),
                table::number(r.descriptor_flip_residual),
                r.signalling_detected.to_string(),
            ]],
        ),
    };
    Ok(Outcome {
        text,
        pass: failures.is_empty(),
        failures,
    })
}

fn inject_parity_violation(circuit: &mut Circuit) -> Result<(), CliError> {
    let space = circuit.space().clone();
    let target = space.fermionic_modes().into_iter().next().ok_or_else(|| {
        CliError::Input("--inject-parity-violation needs a fermionic mode".into())
    })?;
    let u = parity_violating_unitary(&space, &target)?;
    circuit.push(GateSpec::opaque(&format!("PV({target})"), vec![target], u)?)?;
    Ok(())
}

fn audit_csv(report: &AuditReport) -> String {
    let join = |ms: &[heisenfield::fock::ModeId]| {
        ms.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(";")
    };
    let rows: Vec<Vec<String>> = report
        .gates
        .iter()
        .map(|g| {
            vec![
                g.index.to_string(),
                g.gate.clone(),
                join(&g.support),
                join(&g.untouched),
                g.descriptor_row_deviation
                    .map(table::number)
                    .unwrap_or_default(),
                table::number(g.conjugation_deviation),
                g.worst_observable.clone().unwrap_or_default(),
                g.pass.to_string(),
            ]
        })
        .collect();
    table::csv(
        &[
            "index",
            "gate",
            "support",
            "untouched",
            "descriptor_row_deviation",
            "conjugation_deviation",
            "worst_observable",
            "pass",
        ],
        &rows,
    )
}

fn audit_failures(report: &AuditReport) -> Vec<String> {
    report
        .gates
        .iter()
        .filter(|g| !g.pass)
        .map(|g| {
            format!(
                "gate {} {} moves {} by {:e}",
                g.index,
                g.gate,
                g.worst_observable.as_deref().unwrap_or("?"),
                g.conjugation_deviation
            )
        })
        .collect()
}

fn audit(
    target: AuditTarget,
    circuit_path: Option<&PathBuf>,
    phi: f64,
    inject: bool,
    format: Format,
    cfg: &Config,
) -> Result<Outcome, CliError> {
    let mut circuit = match (circuit_path, target) {
        (Some(path), _) => scenario::load_scenario(path, cfg)?.circuit,
        (None, AuditTarget::Boson) => boson_mz_circuit(&photon_pair_space(2)?, phi)?,
        (None, AuditTarget::Fermion) => fermion_mz_circuit(&dirac_space(), phi)?,
    };
    if inject {
        inject_parity_violation(&mut circuit)?;
    }
    let report = locality_audit(&circuit, cfg)?;
    let text = match format {
        Format::Json => json(&report)?,
        Format::Csv => audit_csv(&report),
    };
    Ok(Outcome {
        text,
        pass: report.pass,
        failures: audit_failures(&report),
    })
}

fn equivalence(
    trials: usize,
    max_gates: usize,
    seed: u64,
    format: Format,
    cfg: &Config,
) -> Result<Outcome, CliError> {
    if trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    let s = equivalence_trials(seed, trials, max_gates, cfg)?;
    let text = match format {
        Format::Json => json(&s)?,
        Format::Csv => table::csv(
            &["seed", "trials", "max_deviation", "failures", "pass"],
            &[vec![
                s.seed.to_string(),
                s.trials.to_string(),
                table::number(s.max_deviation),
                s.failures.to_string(),
                s.pass.to_string(),
            ]],
        ),
    };
    let failures = if s.pass {
        vec![]
    } else {
        vec![format!(
            "{} of {} trials deviate, max {:e}",
            s.failures, s.trials, s.max_deviation
        )]
    };
    Ok(Outcome {
        text,
        pass: s.pass,
        failures,
    })
}

fn run(path: &std::path::Path, format: Format, cfg: &Config) -> Result<Outcome, CliError> {
    let sc = scenario::load_scenario(path, cfg)?;
    let space = sc.circuit.space();
    let mut observables: Vec<(String, heisenfield::fock::MatrixOperator)> = Vec::new();
    for m in space.modes() {
        for (name, op) in local_quadratics(space, &m.id, cfg.charge)? {
            if !observables.iter().any(|(n, _)| *n == name) {
                observables.push((name, op));
            }
        }
    }
    let equivalence = picture_equivalence(&sc.circuit, &sc.state, &observables, cfg)?;
    let audit = locality_audit(&sc.circuit, cfg)?;
    let mut failures = audit_failures(&audit);
    if !equivalence.pass {
        failures.push(format!("picture deviation {:e}", equivalence.max_deviation));
    }
    let pass = equivalence.pass && audit.pass;
    let text = match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = equivalence
                .entries
                .iter()
                .map(|e| {
                    vec![
                        e.time.to_string(),
                        e.observable.clone(),
                        table::number(e.schrodinger),
                        table::number(e.heisenberg),
                        table::number(e.deviation),
                    ]
                })
                .collect();
            table::csv(
                &[
                    "time",
                    "observable",
                    "schrodinger",
                    "heisenberg",
                    "deviation",
                ],
                &rows,
            )
        }
        Format::Json => json(&RunReport {
            equivalence,
            audit,
            pass,
        })?,
    };
    Ok(Outcome {
        text,
        pass,
        failures,
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = config(&cli.global)?;
    let format = cli.global.format;
    match &cli.command {
        Command::BosonMz { grid, cutoff } => boson_mz(grid, *cutoff, format, &cfg),
        Command::FermionMz { grid } => fermion_mz(grid, format, &cfg),
        Command::Wigner => wigner(format, &cfg),
        Command::Audit {
            scenario,
            circuit,
            phi,
            inject_parity_violation,
        } => audit(
            *scenario,
            circuit.as_ref(),
            *phi,
            *inject_parity_violation,
            format,
            &cfg,
        ),
        Command::Equivalence { trials, max_gates } => {
            equivalence(*trials, *max_gates, cli.global.seed, format, &cfg)
        }
        Command::Run { path } => run(path, format, &cfg),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = out
                .write_all(outcome.text.as_bytes())
                .and_then(|_| out.flush())
            {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            }
            for f in &outcome.failures {
                eprintln!("check failed: {f}");
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
