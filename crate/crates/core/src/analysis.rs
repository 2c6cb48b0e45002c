//! Comparisons between the singly and doubly damped resources: critical
//! damping, discord thresholds and parameter sweeps.

use std::f64::consts::{FRAC_PI_4, PI};
use std::io::Write;

use rayon::prelude::*;

use crate::channels::{big_xi, big_xi_prime, DampingStrength};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::measures::{fidelity_from_g, generalized_singlet_fraction_from, min_discord, negativity, Bipartition};
use crate::optimize::bisect;
use crate::qmat::DensityMatrix;
use crate::states::{input_state, AnglePair};
use crate::teleport::depolarizing_bichannel_e0;

/// Bracket and tolerance for [`qcrit`].
pub const QCRIT_BRACKET: (f64, f64) = (1e-6, 0.5);
pub const QCRIT_TOL: f64 = 1e-7;
/// Bracket and tolerance for [`epsilon_threshold`].
pub const EPSILON_BRACKET: (f64, f64) = (1e-4, FRAC_PI_4 - 1e-4);
pub const EPSILON_TOL: f64 = 1e-6;

/// A generalized singlet fraction with the angles attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gsf {
    pub value: f64,
    pub angles: AnglePair,
}

fn gsf(xi: &DensityMatrix, warm: &[AnglePair]) -> Result<Gsf> {
    let res = generalized_singlet_fraction_from(xi, warm)?;
    let margin = Tolerances::DEFAULT.angle_margin;
    Ok(Gsf {
        value: res.value,
        angles: AnglePair::clamped(res.angles[0], res.angles[1], margin),
    })
}

fn warm_pair(alpha: f64, beta: f64) -> Vec<AnglePair> {
    AnglePair::new(alpha, beta).into_iter().collect()
}

/// 𝒢[Ξ(α, β, q)], warm-started at (α, β).
pub fn gsf_xi(alpha: f64, beta: f64, q: DampingStrength) -> Result<Gsf> {
    gsf(&big_xi(alpha, beta, q)?, &warm_pair(alpha, beta))
}

/// 𝒢[Ξ′(α, β, q)], warm-started at (α, β) and any extra points.
pub fn gsf_xi_prime(alpha: f64, beta: f64, q: DampingStrength, warm: &[AnglePair]) -> Result<Gsf> {
    let mut starts = warm_pair(alpha, beta);
    starts.extend_from_slice(warm);
    gsf(&big_xi_prime(alpha, beta, q)?, &starts)
}

/// Ξ-channel output for input cos ε|00⟩ + sin ε|11⟩, with the channel built at (α, β).
pub fn xi_output(alpha: f64, beta: f64, q: DampingStrength, epsilon: f64) -> Result<DensityMatrix> {
    let resource = big_xi(alpha, beta, q)?;
    let angles = AnglePair::new(alpha, beta)?;
    depolarizing_bichannel_e0(&resource, angles, &input_state(epsilon)?.density())
}

/// Ξ′-channel output at the angles maximizing 𝒢[Ξ′].
pub fn xi_prime_output_at(
    alpha: f64,
    beta: f64,
    q: DampingStrength,
    angles: AnglePair,
    epsilon: f64,
) -> Result<DensityMatrix> {
    let resource = big_xi_prime(alpha, beta, q)?;
    depolarizing_bichannel_e0(&resource, angles, &input_state(epsilon)?.density())
}

/// As [`xi_prime_output_at`], locating the maximizing angles first.
pub fn xi_prime_output(alpha: f64, beta: f64, q: DampingStrength, epsilon: f64) -> Result<DensityMatrix> {
    let best = gsf_xi_prime(alpha, beta, q, &[])?;
    xi_prime_output_at(alpha, beta, q, best.angles, epsilon)
}

fn bisect_or_report<F: FnMut(f64) -> f64>(f: F, (lo, hi): (f64, f64), tol: f64) -> Result<f64> {
    bisect(f, lo, hi, tol).map_err(|(f_lo, f_hi)| Error::NoSignChange { lo, hi, f_lo, f_hi })
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::ParameterOutOfRange {
            name: "tol",
            value: tol,
            range: "(0, inf)",
        });
    }
    Ok(())
}

fn damping(q: f64) -> DampingStrength {
    DampingStrength::new(q).expect("bracket lies in [0, 1]")
}

/// Largest q for which 𝒢[Ξ′(α, 0, q)] ≥ 𝒢[Ξ(α, 0, q)].
///
/// Bisection on [`QCRIT_BRACKET`]; each 𝒢[Ξ′] search is warm-started from the
/// previous iterate's maximizer.
pub fn qcrit(alpha: f64) -> Result<f64> {
    qcrit_with_tol(alpha, QCRIT_TOL)
}

/// [`qcrit`] with a custom bisection tolerance in q.
pub fn qcrit_with_tol(alpha: f64, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    AnglePair::new(alpha, 0.0)?;
    let mut previous: Vec<AnglePair> = Vec::new();
    let mut failure = None;
    let root = bisect_or_report(
        |q| {
            let mut eval = || -> Result<f64> {
                let p = gsf_xi_prime(alpha, 0.0, damping(q), &previous)?;
                let s = gsf_xi(alpha, 0.0, damping(q))?;
                previous = vec![p.angles];
                Ok(p.value - s.value)
            };
            eval().unwrap_or_else(|e| {
                failure.get_or_insert(e);
                f64::NAN
            })
        },
        QCRIT_BRACKET,
        tol,
    );
    match failure {
        Some(e) => Err(e),
        None => root,
    }
}

/// D_min of the Ξ′ output minus D_min of the Ξ output, with β = 0.
///
/// `xi_prime_angles` are the maximizing angles of 𝒢[Ξ′]; they do not depend on ε.
pub fn discord_gap_at(alpha: f64, q: DampingStrength, xi_prime_angles: AnglePair, epsilon: f64) -> Result<f64> {
    let primed = xi_prime_output_at(alpha, 0.0, q, xi_prime_angles, epsilon)?;
    let single = xi_output(alpha, 0.0, q, epsilon)?;
    Ok(min_discord(&primed)?.value - min_discord(&single)?.value)
}

/// Input parameter ε at which the Ξ′ output stops carrying more discord than the Ξ output.
pub fn epsilon_threshold(alpha: f64, q: DampingStrength) -> Result<f64> {
    epsilon_threshold_with_tol(alpha, q, EPSILON_TOL)
}

/// [`epsilon_threshold`] with a custom bisection tolerance in ε.
pub fn epsilon_threshold_with_tol(alpha: f64, q: DampingStrength, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let angles = gsf_xi_prime(alpha, 0.0, q, &[])?.angles;
    let mut failure = None;
    let root = bisect_or_report(
        |eps| {
            discord_gap_at(alpha, q, angles, eps).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                f64::NAN
            })
        },
        EPSILON_BRACKET,
        tol,
    );
    match failure {
        Some(e) => Err(e),
        None => root,
    }
}

/// Swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Q,
    Alpha,
    Epsilon,
}

impl SweepParameter {
    /// Value as written in the `param` column: angles in units of π.
    pub fn display_value(self, value: f64) -> f64 {
        match self {
            SweepParameter::Q => value,
            SweepParameter::Alpha | SweepParameter::Epsilon => value / PI,
        }
    }
}

/// A one-dimensional sweep. `start` and `stop` are in the parameter's own
/// units (radians for angles); the fixed fields give the other parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub alpha: f64,
    pub beta: f64,
    pub q: f64,
    pub epsilon: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.start.is_nan() || self.stop.is_nan() || self.start >= self.stop {
            return Err(Error::InvalidSweep(format!(
                "start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidSweep(format!(
                "steps must be at least 2, got {}",
                self.steps
            )));
        }
        for v in self.points() {
            self.row_inputs(v)?;
        }
        Ok(())
    }

    /// Grid values, endpoints included.
    pub fn points(&self) -> Vec<f64> {
        let n = self.steps.max(2);
        let h = (self.stop - self.start) / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.stop
                } else {
                    self.start + i as f64 * h
                }
            })
            .collect()
    }

    fn row_inputs(&self, value: f64) -> Result<(f64, DampingStrength, f64)> {
        let (mut alpha, mut q, mut eps) = (self.alpha, self.q, self.epsilon);
        match self.parameter {
            SweepParameter::Q => q = value,
            SweepParameter::Alpha => alpha = value,
            SweepParameter::Epsilon => eps = value,
        }
        AnglePair::new(alpha, self.beta)?;
        input_state(eps)?;
        Ok((alpha, DampingStrength::new(q)?, eps))
    }
}

/// One sweep point. Output figures describe the Ξ′ channel at its maximizing
/// angles acting on the ε input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResultRow {
    pub param: f64,
    pub g_xi: f64,
    pub g_xi_prime: f64,
    pub neg_out: f64,
    pub discord_out: f64,
    /// 1/5 + 4𝒢[Ξ′]/5.
    pub fidelity: f64,
}

pub const CSV_HEADER: &str = "param,G_xi,G_xi_prime,neg_out,discord_out,fidelity";

fn sweep_row(spec: &SweepSpec, value: f64) -> Result<ResultRow> {
    let (alpha, q, eps) = spec.row_inputs(value)?;
    let g = gsf_xi(alpha, spec.beta, q)?;
    let gp = gsf_xi_prime(alpha, spec.beta, q, &[])?;
    let out = xi_prime_output_at(alpha, spec.beta, q, gp.angles, eps)?;
    let row = ResultRow {
        param: value,
        g_xi: g.value,
        g_xi_prime: gp.value,
        neg_out: negativity(&out, &Bipartition::two_qubit())?,
        discord_out: min_discord(&out)?.value,
        fidelity: fidelity_from_g(gp.value.clamp(0.0, 1.0))?,
    };
    let figures = [row.g_xi, row.g_xi_prime, row.neg_out, row.discord_out, row.fidelity];
    if figures.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidSweep(format!("non-finite result at {value}")));
    }
    Ok(row)
}

/// Evaluates every grid point; rows come back in grid order.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<ResultRow>> {
    spec.validate()?;
    spec.points().into_par_iter().map(|v| sweep_row(spec, v)).collect()
}

/// Formats like C's `%.12g`.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..12).contains(&exp) {
        trim(format!("{:.*}", (11 - exp) as usize, x))
    } else {
        format!("{}e{}", trim(mantissa.to_string()), exp)
    }
}

/// Writes the header and rows with LF line endings.
pub fn write_csv<W: Write>(mut w: W, parameter: SweepParameter, rows: &[ResultRow]) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for row in rows {
        let fields = [
            parameter.display_value(row.param),
            row.g_xi,
            row.g_xi_prime,
            row.neg_out,
            row.discord_out,
            row.fidelity,
        ];
        let line: Vec<String> = fields.iter().map(|&v| format_sig12(v)).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}
