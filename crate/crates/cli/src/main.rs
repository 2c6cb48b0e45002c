use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use noisy_teleport::analysis::{
    epsilon_threshold_with_tol, format_sig12, gsf_xi, gsf_xi_prime, qcrit_with_tol, sweep, write_csv, xi_output,
    xi_prime_output_at, SweepParameter, SweepSpec, EPSILON_TOL, QCRIT_TOL,
};
use noisy_teleport::channels::{big_xi, big_xi_prime, DampingStrength};
use noisy_teleport::measures::{fidelity_from_g, min_discord, negativity, Bipartition};
use noisy_teleport::repro::reference_checks;
use noisy_teleport::teleport::avg_fidelity_mc;
use noisy_teleport::Error;

/// Two-qubit teleportation through amplitude-damped four-qubit resources.
///
/// Angles (--alpha, --beta, --epsilon, and angular sweep bounds) are given in
/// units of π: `--alpha 0.1` means 0.1π.
#[derive(Parser)]
#[command(name = "noisy-teleport", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Largest q at which the doubly damped resource has the larger generalized singlet fraction
    Qcrit {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha: f64,
        /// Bisection tolerance in q
        #[arg(long, default_value_t = QCRIT_TOL)]
        tol: f64,
    },
    /// Input ε at which the discord advantage of the doubly damped channel ends
    EpsThreshold {
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.01)]
        q: f64,
        /// Bisection tolerance in ε (radians)
        #[arg(long, default_value_t = EPSILON_TOL)]
        tol: f64,
    },
    /// Sweep one parameter and write CSV rows
    Sweep(SweepArgs),
    /// Generalized singlet fractions of both resources and their maximizing angles
    Gsf(Point),
    /// Minimum discord of both channel outputs
    Discord(PointWithInput),
    /// Negativity of both channel outputs
    Negativity(PointWithInput),
    /// Teleportation fidelity from the singlet fraction, with an optional Monte Carlo estimate
    Fidelity {
        #[command(flatten)]
        point: Point,
        /// Haar-random inputs for Monte Carlo estimates of both channels
        #[arg(long, requires = "seed")]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Recompute every reference value and print a PASS/FAIL table
    Repro,
}

#[derive(Args)]
struct Point {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long)]
    q: f64,
}

#[derive(Args)]
struct PointWithInput {
    #[command(flatten)]
    point: Point,
    #[arg(long)]
    epsilon: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Param {
    Q,
    Alpha,
    Epsilon,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    param: Param,
    #[arg(long, allow_negative_numbers = true)]
    start: f64,
    #[arg(long, allow_negative_numbers = true)]
    stop: f64,
    #[arg(long)]
    steps: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, default_value_t = 0.01)]
    q: f64,
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    BadArgs(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ParameterOutOfRange { .. } | Error::InvalidSweep(_) => Failure::BadArgs(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Numerical(e.to_string())
    }
}

fn damping(q: f64) -> Result<DampingStrength, Failure> {
    Ok(DampingStrength::new(q)?)
}

fn print_value(name: &str, value: f64) {
    println!("{name} = {}", format_sig12(value));
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Qcrit { alpha, tol } => print_value("q_crit", qcrit_with_tol(alpha * PI, tol)?),
        Command::EpsThreshold { alpha, q, tol } => {
            let eps = epsilon_threshold_with_tol(alpha * PI, damping(q)?, tol)?;
            print_value("epsilon", eps);
            print_value("epsilon_over_pi", eps / PI);
        }
        Command::Sweep(args) => {
            let angular = |v: f64| match args.param {
                Param::Q => v,
                Param::Alpha | Param::Epsilon => v * PI,
            };
            let spec = SweepSpec {
                parameter: match args.param {
                    Param::Q => SweepParameter::Q,
                    Param::Alpha => SweepParameter::Alpha,
                    Param::Epsilon => SweepParameter::Epsilon,
                },
                start: angular(args.start),
                stop: angular(args.stop),
                steps: args.steps,
                alpha: args.alpha * PI,
                beta: args.beta * PI,
                q: args.q,
                epsilon: args.epsilon * PI,
            };
            spec.validate()?;
            let rows = sweep(&spec)?;
            match args.out {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(&path)?);
                    write_csv(&mut w, spec.parameter, &rows)?;
                    w.flush()?;
                }
                None => write_csv(io::stdout().lock(), spec.parameter, &rows)?,
            }
        }
        Command::Gsf(p) => {
            let (alpha, beta, q) = (p.alpha * PI, p.beta * PI, damping(p.q)?);
            let g = gsf_xi(alpha, beta, q)?;
            let gp = gsf_xi_prime(alpha, beta, q, &[])?;
            print_value("G_xi", g.value);
            print_value("G_xi_theta12_over_pi", g.angles.theta12() / PI);
            print_value("G_xi_phi12_over_pi", g.angles.phi12() / PI);
            print_value("G_xi_prime", gp.value);
            print_value("G_xi_prime_theta12_over_pi", gp.angles.theta12() / PI);
            print_value("G_xi_prime_phi12_over_pi", gp.angles.phi12() / PI);
        }
        Command::Discord(p) => {
            let (single, primed) = outputs(&p)?;
            print_value("discord_xi_out", min_discord(&single)?.value);
            print_value("discord_xi_prime_out", min_discord(&primed)?.value);
        }
        Command::Negativity(p) => {
            let (single, primed) = outputs(&p)?;
            let cut = Bipartition::two_qubit();
            print_value("neg_xi_out", negativity(&single, &cut)?);
            print_value("neg_xi_prime_out", negativity(&primed, &cut)?);
        }
        Command::Fidelity { point, samples, seed } => {
            let (alpha, beta, q) = (point.alpha * PI, point.beta * PI, damping(point.q)?);
            let g = gsf_xi(alpha, beta, q)?;
            let gp = gsf_xi_prime(alpha, beta, q, &[])?;
            print_value("fidelity_xi", fidelity_from_g(g.value.clamp(0.0, 1.0))?);
            print_value("fidelity_xi_prime", fidelity_from_g(gp.value.clamp(0.0, 1.0))?);
            if let (Some(n), Some(seed)) = (samples, seed) {
                let est = avg_fidelity_mc(&big_xi(alpha, beta, q)?, g.angles, n, seed)?;
                print_value("fidelity_xi_mc", est.mean);
                print_value("fidelity_xi_mc_stderr", est.std_error);
                let est = avg_fidelity_mc(&big_xi_prime(alpha, beta, q)?, gp.angles, n, seed)?;
                print_value("fidelity_xi_prime_mc", est.mean);
                print_value("fidelity_xi_prime_mc_stderr", est.std_error);
            }
        }
        Command::Repro => {
            let checks = reference_checks()?;
            for check in &checks {
                println!("{check}");
            }
            let failed = checks.iter().filter(|c| !c.pass()).count();
            println!("{} checks, {} failed", checks.len(), failed);
            return Ok(failed == 0);
        }
    }
    Ok(true)
}

fn outputs(p: &PointWithInput) -> Result<(noisy_teleport::DensityMatrix, noisy_teleport::DensityMatrix), Failure> {
    let (alpha, beta, q) = (p.point.alpha * PI, p.point.beta * PI, damping(p.point.q)?);
    let eps = p.epsilon * PI;
    let single = xi_output(alpha, beta, q, eps)?;
    let angles = gsf_xi_prime(alpha, beta, q, &[])?.angles;
    Ok((single, xi_prime_output_at(alpha, beta, q, angles, eps)?))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::BadArgs(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
