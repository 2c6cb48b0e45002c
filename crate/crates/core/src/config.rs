//! Numerical tolerances shared by every module.

/// Tolerances used for validation and convergence.
///
/// The defaults are used throughout the crate via [`Tolerances::DEFAULT`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max entrywise |M - M†| for matrices promised to be Hermitian.
    pub hermitian: f64,
    /// Max deviation of a trace or norm from 1.
    pub unit: f64,
    /// Smallest eigenvalue accepted for a positive-semidefinite matrix.
    pub psd_floor: f64,
    /// Hermiticity accepted by the eigensolver on input.
    pub eigen_input: f64,
    /// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this.
    pub jacobi_off_diagonal: f64,
    /// Probabilities below this are treated as zero.
    pub probability_floor: f64,
    /// Distance kept from the open ends of the angle intervals during optimization.
    pub angle_margin: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-10,
        unit: 1e-10,
        psd_floor: -1e-9,
        eigen_input: 1e-8,
        jacobi_off_diagonal: 1e-12,
        probability_floor: 1e-12,
        angle_margin: 1e-6,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Settings for the grid-seeded simplex searches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchSettings {
    /// Grid points per dimension.
    pub grid: usize,
    /// How many of the best grid cells seed a simplex refinement.
    pub starts: usize,
    pub max_iterations: usize,
    /// Simplex diameter at which a refinement stops.
    pub diameter_tol: f64,
}

impl SearchSettings {
    pub const GSF: SearchSettings = SearchSettings {
        grid: 64,
        starts: 4,
        max_iterations: 500,
        diameter_tol: 1e-9,
    };

    pub const DISCORD: SearchSettings = SearchSettings {
        grid: 48,
        starts: 4,
        max_iterations: 500,
        diameter_tol: 1e-9,
    };

    pub const SINGLET: SearchSettings = SearchSettings {
        grid: 10,
        starts: 4,
        max_iterations: 500,
        diameter_tol: 1e-9,
    };
}
