//! Floating-point verification lab for the explicit Lagrangian families:
//! finite-difference Lagrangian defects, moment-map containment, double
//! points of sphere maps, and antipodal preimage counts.
//!
//! Everything here is double precision; the exact side of the project lives
//! in `lattice-core`/`atf-base`/`markov`. Samplers are pure, so grid scans
//! are data-parallel (rayon) with max/collect reductions.

use num_complex::Complex64;

mod curve;
mod defect;
mod double;
mod linalg;
mod spheres;
mod surfaces;

pub use curve::{
    chekanov_default_curve, enclosed_area, gamma_circle, gamma_ellipse, ta_gamma_default_curve,
    winding_number, Curve2D,
};
pub use defect::{defect_convergence, lagrangian_defect, Convergence, LagTarget};
pub use double::{double_points, double_points_sphere_circle, DoublePoint};
pub use spheres::{
    count_antipodal_preimages, count_antipodal_preimages_at, e_n_embedding, nemirovski_embedding,
    round_sphere, sphere_frame, w_n, w_n_basepoint, whitney_immersion, whitney_invariant_e_n,
    MapParams, SphereCircleMap, SphereMap, WhitneyInvariant,
};
pub use surfaces::{chekanov_torus, product_is_monotone, product_torus, t_a_gamma, ParamSurface};

pub type C = Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LabError {
    #[error("step must be in [1e-7, 1e-1], got {0:e}")]
    BadStep(f64),
    #[error("tolerance must be positive and finite, got {0:e}")]
    BadTolerance(f64),
    #[error("grid must have at least 2 samples per axis, got {0}")]
    BadGrid(usize),
    #[error("area must be positive and finite, got {0}")]
    BadArea(f64),
    #[error("open curve: endpoint gap {0:e} exceeds tolerance")]
    OpenCurve(f64),
    #[error("curve is not in a half-plane")]
    NotInHalfPlane,
    #[error("pinched torus, not embedded (a = 0 and the curve meets the origin)")]
    PinchedTorus,
    #[error("winding number undefined: curve passes through the base point")]
    WindingUndefined,
    #[error("point is off the unit sphere by {0:e}")]
    OffSphere(f64),
    #[error("coefficient c must lie in (0,1) so that the map is an embedding, got {0}")]
    BadCoefficient(f64),
    #[error("k = {0} is not supported here; the geometric construction is for k = 2")]
    UnsupportedDimension(usize),
    #[error("invariant defined for k >= 3, got k = {0}")]
    InvariantRange(usize),
    #[error("non-finite evaluation near parameters {0:?}")]
    NonFinite(Vec<f64>),
    #[error("resolution too coarse: {0}")]
    ResolutionTooCoarse(String),
}

/// Finite-difference controls: central-difference step, acceptance
/// tolerance, and the per-family sample budget (`grid`² points in total,
/// re-balanced per axis for higher-dimensional domains).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FDConfig {
    pub h: f64,
    pub tol: f64,
    pub grid: usize,
}

impl Default for FDConfig {
    fn default() -> Self {
        FDConfig { h: 1e-4, tol: 1e-6, grid: 256 }
    }
}

impl FDConfig {
    pub fn new(h: f64, tol: f64, grid: usize) -> Result<Self, LabError> {
        // below ~1e-7 the h^2 truncation term drowns in rounding noise
        if !h.is_finite() || !(1e-7..=1e-1).contains(&h) {
            return Err(LabError::BadStep(h));
        }
        if !tol.is_finite() || tol <= 0.0 {
            return Err(LabError::BadTolerance(tol));
        }
        if grid < 2 {
            return Err(LabError::BadGrid(grid));
        }
        Ok(FDConfig { h, tol, grid })
    }
}

/// A point of C² = R⁴, `z_j = x_j + i y_j`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point4 {
    pub z1: C,
    pub z2: C,
}

impl Point4 {
    pub fn new(z1: C, z2: C) -> Self {
        Point4 { z1, z2 }
    }

    pub fn is_finite(&self) -> bool {
        self.z1.is_finite() && self.z2.is_finite()
    }
}

/// `H(z1, z2) = π(|z1|² − |z2|²)`.
pub fn hamiltonian_h(p: Point4) -> f64 {
    std::f64::consts::PI * (p.z1.norm_sqr() - p.z2.norm_sqr())
}

/// `F(z1, z2) = z1 z2`.
pub fn map_f(p: Point4) -> C {
    p.z1 * p.z2
}

/// `μ(z1, z2) = (π|z1|², π|z2|²)`.
pub fn moment_map(p: Point4) -> (f64, f64) {
    (
        std::f64::consts::PI * p.z1.norm_sqr(),
        std::f64::consts::PI * p.z2.norm_sqr(),
    )
}

/// `(θ1, θ2) · (z1, z2) = (e^{2πiθ1} z1, e^{2πiθ2} z2)`.
pub fn torus_action(p: Point4, theta1: f64, theta2: f64) -> Point4 {
    let rot = |th: f64| C::from_polar(1.0, 2.0 * std::f64::consts::PI * th);
    Point4::new(p.z1 * rot(theta1), p.z2 * rot(theta2))
}

/// The standard symplectic form on C^m paired against two tangent vectors:
/// `ω(u, v) = Σ_j Im(conj(u_j) v_j) = Σ_j (x_j^u y_j^v − y_j^u x_j^v)`.
pub fn omega(u: &[C], v: &[C]) -> f64 {
    debug_assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| (a.conj() * b).im).sum()
}
