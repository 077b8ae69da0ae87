//! Doubly periodic samplers for the explicit torus families in C².

use crate::{Curve2D, LabError, Point4, C};
use std::f64::consts::PI;
use std::sync::Arc;

/// A surface parametrized by `(s, t) ∈ [0,1)²`, doubly periodic.
#[derive(Clone)]
pub struct ParamSurface {
    pub name: &'static str,
    eval: Arc<dyn Fn(f64, f64) -> Point4 + Send + Sync>,
}

impl std::fmt::Debug for ParamSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParamSurface").field("name", &self.name).finish()
    }
}

impl ParamSurface {
    pub fn at(&self, s: f64, t: f64) -> Point4 {
        (self.eval)(s, t)
    }
}

/// Torus swept from a half-plane curve by the anti-diagonal circle action:
/// `(s, t) ↦ (1/√2)(e^{2πis} γ(t), e^{−2πis} γ(t))`.
///
/// Requires γ to lie in an open half-plane bounded by a line through the
/// origin; otherwise `γ(t) = −γ(t')` can happen and the sweep is not
/// embedded.
pub fn chekanov_torus(gamma: &Curve2D) -> Result<ParamSurface, LabError> {
    if !gamma.in_half_plane() {
        return Err(LabError::NotInHalfPlane);
    }
    let g = gamma.clone();
    let scale = 1.0 / 2.0_f64.sqrt();
    Ok(ParamSurface {
        name: "chekanov",
        eval: Arc::new(move |s, t| {
            let z = g.at(t);
            let rot = C::from_polar(1.0, 2.0 * PI * s);
            Point4::new(scale * rot * z, scale * z / rot)
        }),
    })
}

/// Product of two circles enclosing areas `a` and `b`.
pub fn product_torus(a: f64, b: f64) -> Result<ParamSurface, LabError> {
    for v in [a, b] {
        if !v.is_finite() || v <= 0.0 {
            return Err(LabError::BadArea(v));
        }
    }
    let (ra, rb) = ((a / PI).sqrt(), (b / PI).sqrt());
    Ok(ParamSurface {
        name: "product",
        eval: Arc::new(move |s, t| {
            Point4::new(
                C::from_polar(ra, 2.0 * PI * s),
                C::from_polar(rb, 2.0 * PI * t),
            )
        }),
    })
}

/// The product torus is monotone exactly when the two areas agree.
pub fn product_is_monotone(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// The fiber torus `{H = a, F ∈ γ}`, parametrized by the curve parameter `t`
/// and the fiber angle `s`: with `u = r1² = (a/π + sqrt((a/π)² + 4|γ|²))/2`
/// set `z1 = sqrt(u) e^{2πis}`, `z2 = γ(t)/z1`. Then `H ≡ a` and
/// `F = z1 z2 = γ(t)` hold exactly.
///
/// At `a = 0` the construction degenerates where γ meets the origin (the
/// fiber is the pinched torus/immersed sphere), so that case is rejected.
pub fn t_a_gamma(a: f64, gamma: &Curve2D) -> Result<ParamSurface, LabError> {
    if !a.is_finite() {
        return Err(LabError::BadArea(a));
    }
    if a == 0.0 && gamma.min_abs() < 1e-12 {
        return Err(LabError::PinchedTorus);
    }
    let g = gamma.clone();
    let ap = a / PI;
    Ok(ParamSurface {
        name: "ta-gamma",
        eval: Arc::new(move |s, t| {
            let z = g.at(t);
            let u = (ap + (ap * ap + 4.0 * z.norm_sqr()).sqrt()) / 2.0;
            let z1 = C::from_polar(u.sqrt(), 2.0 * PI * s);
            Point4::new(z1, z / z1)
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{
        chekanov_default_curve, gamma_circle, hamiltonian_h, map_f, moment_map,
        ta_gamma_default_curve, winding_number,
    };

    fn grid(n: usize) -> impl Iterator<Item = (f64, f64)> {
        (0..n).flat_map(move |i| {
            (0..n).map(move |j| (i as f64 / n as f64, j as f64 / n as f64))
        })
    }

    #[test]
    fn chekanov_h_vanishes_and_f_traces_the_curve_squared() {
        let g = chekanov_default_curve();
        let surf = chekanov_torus(&g).unwrap();
        let mut image = Vec::new();
        for (s, t) in grid(48) {
            let p = surf.at(s, t);
            assert!(hamiltonian_h(p).abs() < 1e-12);
            let expect = g.at(t) * g.at(t) / 2.0;
            assert!((map_f(p) - expect).norm() < 1e-12);
            if s == 0.0 {
                image.push(map_f(p));
            }
        }
        // γ stays in a half-plane away from 0, so γ²/2 does not wind around it
        assert_eq!(winding_number(&image, C::new(0.0, 0.0)).unwrap(), 0);
    }

    #[test]
    fn chekanov_rejects_curves_around_the_origin() {
        let bad = gamma_circle(C::new(0.0, 0.0), 1.0).unwrap();
        assert!(matches!(chekanov_torus(&bad), Err(LabError::NotInHalfPlane)));
    }

    #[test]
    fn product_torus_moment_values() {
        let surf = product_torus(1.0, 1.0).unwrap();
        for (s, t) in grid(16) {
            let (m1, m2) = moment_map(surf.at(s, t));
            assert!((m1 - 1.0).abs() < 1e-12 && (m2 - 1.0).abs() < 1e-12);
        }
        assert!(product_is_monotone(1.0, 1.0, 1e-9));
        assert!(!product_is_monotone(1.0, 2.5, 1e-9));
        assert!(product_torus(0.0, 1.0).is_err());
    }

    #[test]
    fn ta_gamma_sits_exactly_on_its_level_set() {
        for a in [0.0, 0.4, -0.7] {
            let g = ta_gamma_default_curve();
            let surf = t_a_gamma(a, &g).unwrap();
            for (s, t) in grid(24) {
                let p = surf.at(s, t);
                assert!((hamiltonian_h(p) - a).abs() < 1e-9, "H off at a={a}");
                assert!((map_f(p) - g.at(t)).norm() < 1e-9, "F off the curve at a={a}");
            }
        }
    }

    #[test]
    fn ta_gamma_clifford_type_circle_about_origin() {
        // |γ| constant = 1/π puts both moment coordinates at 1
        let g = gamma_circle(C::new(0.0, 0.0), 1.0 / PI).unwrap();
        let surf = t_a_gamma(0.0, &g).unwrap();
        for (s, t) in grid(16) {
            let p = surf.at(s, t);
            assert!(hamiltonian_h(p).abs() < 1e-12);
            let (m1, m2) = moment_map(p);
            assert!((m1 - 1.0).abs() < 1e-9 && (m2 - 1.0).abs() < 1e-9);
            assert!((map_f(p).norm() - 1.0 / PI).abs() < 1e-12);
        }
    }

    #[test]
    fn ta_gamma_rejects_the_pinched_fiber() {
        // circle through the origin
        let g = gamma_circle(C::new(1.0, 0.0), PI).unwrap();
        assert!(matches!(t_a_gamma(0.0, &g), Err(LabError::PinchedTorus)));
        // but a != 0 resolves the pinch
        assert!(t_a_gamma(0.5, &g).is_ok());
    }
}
