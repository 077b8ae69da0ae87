//! Closed parametrized curves in C and the two default generating curves.

use crate::{C, LabError};
use std::f64::consts::PI;
use std::sync::Arc;

/// A closed curve `t ∈ [0,1) → C`. The sampler must accept any real `t`
/// (periodic extension); closure is checked at construction by comparing the
/// endpoints.
#[derive(Clone)]
pub struct Curve2D {
    sampler: Arc<dyn Fn(f64) -> C + Send + Sync>,
    pub sample_count: usize,
}

impl std::fmt::Debug for Curve2D {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Curve2D")
            .field("sample_count", &self.sample_count)
            .finish()
    }
}

impl Curve2D {
    pub fn new(
        sampler: impl Fn(f64) -> C + Send + Sync + 'static,
        sample_count: usize,
    ) -> Result<Self, LabError> {
        if sample_count < 3 {
            return Err(LabError::BadGrid(sample_count));
        }
        let gap = (sampler(0.0) - sampler(1.0)).norm();
        if !gap.is_finite() || gap > 1e-8 {
            return Err(LabError::OpenCurve(gap));
        }
        Ok(Curve2D { sampler: Arc::new(sampler), sample_count })
    }

    pub fn at(&self, t: f64) -> C {
        (self.sampler)(t)
    }

    /// `sample_count` points at `t = i / sample_count`.
    pub fn samples(&self) -> Vec<C> {
        let n = self.sample_count;
        (0..n).map(|i| self.at(i as f64 / n as f64)).collect()
    }

    pub fn min_abs(&self) -> f64 {
        self.samples().iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
    }

    /// True when all samples fit in an open half-plane bounded by a line
    /// through the origin — equivalently, the angular extent of the samples
    /// is strictly less than π.
    pub fn in_half_plane(&self) -> bool {
        let mut angles: Vec<f64> = Vec::with_capacity(self.sample_count);
        for z in self.samples() {
            if z.norm() < 1e-12 {
                return false; // the origin is on the boundary of every half-plane
            }
            angles.push(z.arg());
        }
        angles.sort_by(|a, b| a.total_cmp(b));
        let mut max_gap = angles[0] + 2.0 * PI - angles[angles.len() - 1];
        for w in angles.windows(2) {
            max_gap = max_gap.max(w[1] - w[0]);
        }
        max_gap > PI + 1e-12
    }
}

/// Circle of the given enclosed area, traversed counterclockwise.
pub fn gamma_circle(center: C, area: f64) -> Result<Curve2D, LabError> {
    if !area.is_finite() || area <= 0.0 {
        return Err(LabError::BadArea(area));
    }
    let r = (area / PI).sqrt();
    Curve2D::new(
        move |t| center + C::from_polar(r, 2.0 * PI * t),
        4096,
    )
}

/// Axis-aligned ellipse with semi-axes `(rx, ry)` (enclosed area `π rx ry`).
pub fn gamma_ellipse(center: C, rx: f64, ry: f64) -> Result<Curve2D, LabError> {
    if !(rx.is_finite() && ry.is_finite()) || rx <= 0.0 || ry <= 0.0 {
        return Err(LabError::BadArea(rx * ry));
    }
    Curve2D::new(
        move |t| {
            let (s, c) = (2.0 * PI * t).sin_cos();
            center + C::new(rx * c, ry * s)
        },
        4096,
    )
}

/// Default generating curve for the Chekanov-type torus: an area-1 ellipse
/// in the open right half-plane, chosen flat and close to the origin so that
/// every swept sample keeps `μ1 + μ2 < 3` and `μ1, μ2 < 2` with margin.
/// The swept samples have `μ1 = μ2 = π|γ|²/2`, so containment needs
/// `max |γ| < sqrt(3/π) ≈ 0.977` — which rules out any area-1 disc placed in
/// the right half-plane (its diameter alone forces `|γ| > 1.128` somewhere).
/// Semi-axes 2/5 and 5/(2π) keep the area exactly 1 and `max |γ| ≈ 0.95`.
pub fn chekanov_default_curve() -> Curve2D {
    gamma_ellipse(C::new(0.45, 0.0), 0.4, 2.5 / PI).expect("static ellipse")
}

/// Default generating curve for the `T_a(γ)` family: a small circle well
/// away from the origin, where the fiber construction is least stiff and the
/// finite-difference defect converges cleanly at second order.
pub fn ta_gamma_default_curve() -> Curve2D {
    gamma_circle(C::new(2.0, 0.0), 0.25).expect("static circle")
}

/// Signed enclosed area by the shoelace rule on the sample polygon.
pub fn enclosed_area(curve: &Curve2D) -> f64 {
    let pts = curve.samples();
    let n = pts.len();
    let mut twice = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        twice += a.re * b.im - b.re * a.im;
    }
    twice / 2.0
}

/// Winding number of a closed sample polygon around `center`, by summing
/// turn angles. Errors out when the polygon meets the center.
pub fn winding_number(points: &[C], center: C) -> Result<i32, LabError> {
    let mut total = 0.0;
    let n = points.len();
    for i in 0..n {
        let a = points[i] - center;
        let b = points[(i + 1) % n] - center;
        if a.norm() < 1e-14 || b.norm() < 1e-14 {
            return Err(LabError::WindingUndefined);
        }
        total += (b * a.conj()).arg();
    }
    Ok((total / (2.0 * PI)).round() as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_and_ellipse_areas() {
        let c = gamma_circle(C::new(2.0, 0.0), 1.0).unwrap();
        assert!((enclosed_area(&c) - 1.0).abs() < 1e-6);
        let e = gamma_ellipse(C::new(0.0, 0.0), 0.7, 0.2).unwrap();
        assert!((enclosed_area(&e) - PI * 0.7 * 0.2).abs() < 1e-6);
        // reversed orientation flips the sign
        let r = Curve2D::new(|t| C::from_polar(1.0 / PI.sqrt(), -2.0 * PI * t), 4096).unwrap();
        assert!((enclosed_area(&r) + 1.0).abs() < 1e-6);
        assert!((enclosed_area(&chekanov_default_curve()) - 1.0).abs() < 1e-6);
        assert!((enclosed_area(&ta_gamma_default_curve()) - 0.25).abs() < 1e-6);
    }

    #[test]
    fn open_curves_are_rejected() {
        let err = Curve2D::new(|t| C::new(t, 0.0), 64);
        assert!(matches!(err, Err(LabError::OpenCurve(_))));
        assert!(matches!(gamma_circle(C::new(0.0, 0.0), -1.0), Err(LabError::BadArea(_))));
    }

    #[test]
    fn half_plane_detection() {
        assert!(gamma_circle(C::new(2.0, 0.0), 1.0).unwrap().in_half_plane());
        assert!(chekanov_default_curve().in_half_plane());
        // surrounds the origin
        assert!(!gamma_circle(C::new(0.0, 0.0), 1.0).unwrap().in_half_plane());
        // meets the origin
        assert!(!gamma_circle(C::new(1.0, 0.0), PI).unwrap().in_half_plane());
    }

    #[test]
    fn winding_numbers() {
        let c = gamma_circle(C::new(0.0, 0.0), 1.0).unwrap();
        assert_eq!(winding_number(&c.samples(), C::new(0.0, 0.0)).unwrap(), 1);
        assert_eq!(winding_number(&c.samples(), C::new(5.0, 0.0)).unwrap(), 0);
        let r = Curve2D::new(|t| C::from_polar(1.0, -2.0 * PI * t), 512).unwrap();
        assert_eq!(winding_number(&r.samples(), C::new(0.0, 0.0)).unwrap(), -1);
        let through = [C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 1.0)];
        assert!(matches!(
            winding_number(&through, C::new(0.0, 0.0)),
            Err(LabError::WindingUndefined)
        ));
    }

    #[test]
    fn default_curve_stays_clear_of_the_origin_band() {
        let g = chekanov_default_curve();
        assert!(g.min_abs() > 0.04);
        // and fits inside the disc of radius sqrt(3/pi) needed for containment
        let max = g.samples().iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(max < (3.0 / PI).sqrt(), "max |γ| = {max}");
    }
}
