//! Sphere-domain maps: the Whitney immersion, the explicit Lagrangian
//! embedding of S^k × S¹, the twisted embeddings e_n built from a degree-n
//! sphere self-map, and the antipodal preimage counter behind the Whitney
//! invariant.

use crate::linalg::{dist, least_squares_step, norm, normalized};
use crate::{LabError, C};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::sync::Arc;

/// A map from the unit sphere S^{dim-1} ⊂ R^{dim} into C^{out}.
#[derive(Clone)]
pub struct SphereMap {
    pub name: &'static str,
    /// Ambient dimension of the domain sphere (domain is S^{dim-1}).
    pub dim: usize,
    pub out: usize,
    eval: Arc<dyn Fn(&[f64]) -> Vec<C> + Send + Sync>,
}

impl std::fmt::Debug for SphereMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SphereMap")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish()
    }
}

impl SphereMap {
    /// Evaluation with the on-sphere precondition enforced.
    pub fn at(&self, p: &[f64]) -> Result<Vec<C>, LabError> {
        let gap = (norm(p) - 1.0).abs();
        if p.len() != self.dim || gap > 1e-9 {
            return Err(LabError::OffSphere(gap));
        }
        Ok((self.eval)(p))
    }

    pub(crate) fn eval_raw(&self, p: &[f64]) -> Vec<C> {
        (self.eval)(p)
    }
}

/// Maps on S^k × S¹: `(x, t)` with `x ∈ S^k ⊂ R^{k+1}`, `t ∈ [0, 2π)`.
#[derive(Clone)]
pub struct SphereCircleMap {
    pub name: &'static str,
    pub k: usize,
    pub params: MapParams,
    eval: Arc<dyn Fn(&[f64], f64) -> Vec<C> + Send + Sync>,
}

impl std::fmt::Debug for SphereCircleMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SphereCircleMap")
            .field("name", &self.name)
            .field("k", &self.k)
            .field("params", &self.params)
            .finish()
    }
}

/// Family constants carried along for reporting.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MapParams {
    pub c: Option<f64>,
    pub n: Option<i64>,
    pub delta: Option<f64>,
    pub w0: Option<[f64; 3]>,
}

impl SphereCircleMap {
    pub fn at(&self, x: &[f64], t: f64) -> Result<Vec<C>, LabError> {
        let gap = (norm(x) - 1.0).abs();
        if x.len() != self.k + 1 || gap > 1e-9 {
            return Err(LabError::OffSphere(gap));
        }
        Ok((self.eval)(x, t))
    }

    pub(crate) fn eval_raw(&self, x: &[f64], t: f64) -> Vec<C> {
        (self.eval)(x, t)
    }
}

/// Deterministic orthonormal tangent basis at `p` on the unit sphere:
/// Gram-Schmidt over the coordinate axes, dropping the axis most parallel
/// to `p`.
pub fn sphere_frame(p: &[f64]) -> Vec<Vec<f64>> {
    let d = p.len();
    let skip = (0..d).max_by(|&a, &b| p[a].abs().total_cmp(&p[b].abs())).unwrap();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d - 1);
    for axis in 0..d {
        if axis == skip {
            continue;
        }
        let mut v: Vec<f64> = (0..d).map(|i| -p[axis] * p[i]).collect();
        v[axis] += 1.0;
        for b in &basis {
            let c = crate::linalg::dot(&v, b);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= c * bi;
            }
        }
        basis.push(normalized(&v));
    }
    basis
}

/// The Whitney immersion of S^{k+1} = {(x, y) : |x|² + y² = 1, x ∈ R^{k+1}}:
/// `w(x, y) = (1 + iy) x ∈ C^{k+1}`. Both poles `(0, ±1)` land on the
/// origin — the single double point.
pub fn whitney_immersion(k: usize) -> Result<SphereMap, LabError> {
    if k < 1 {
        return Err(LabError::UnsupportedDimension(k));
    }
    let out = k + 1;
    Ok(SphereMap {
        name: "whitney",
        dim: k + 2,
        out,
        eval: Arc::new(move |p: &[f64]| {
            let y = p[out];
            p[..out].iter().map(|&x| C::new(x, y * x)).collect()
        }),
    })
}

/// The round sphere S^k placed as the real slice `x ↦ x + 0i` of C^{k+1}.
pub fn round_sphere(k: usize) -> Result<SphereMap, LabError> {
    if k < 1 {
        return Err(LabError::UnsupportedDimension(k));
    }
    Ok(SphereMap {
        name: "round-sphere",
        dim: k + 1,
        out: k + 1,
        eval: Arc::new(|p: &[f64]| p.iter().map(|&x| C::new(x, 0.0)).collect()),
    })
}

/// The explicit Lagrangian embedding of S^k × S¹ into C^{k+1}:
/// `(x, t) ↦ (1 + ½ sin t) x + i (½ cos t) x`.
pub fn nemirovski_embedding(k: usize) -> Result<SphereCircleMap, LabError> {
    if k < 1 {
        return Err(LabError::UnsupportedDimension(k));
    }
    Ok(SphereCircleMap {
        name: "nemirovski",
        k,
        params: MapParams { c: Some(0.5), ..MapParams::default() },
        eval: Arc::new(|x: &[f64], t: f64| {
            let (st, ct) = t.sin_cos();
            x.iter().map(|&xi| C::new((1.0 + 0.5 * st) * xi, 0.5 * ct * xi)).collect()
        }),
    })
}

// --- the degree-n sphere self-map w_n ---------------------------------------

/// Geodesic distance of the auxiliary base point from the south pole.
const W0_DIST: f64 = 0.05;
/// Width parameter of the interpolation collar (kept for reporting).
const DELTA: f64 = 0.1;

/// The fixed base point w₀: very close to, but different from, the south
/// pole of S².
pub fn w_n_basepoint() -> [f64; 3] {
    [W0_DIST.sin(), 0.0, -W0_DIST.cos()]
}

/// C^∞ step: 0 for t ≤ 0, 1 for t ≥ 1, strictly increasing between.
fn smoothstep(t: f64) -> f64 {
    fn bump(u: f64) -> f64 {
        if u > 0.0 { (-1.0 / u).exp() } else { 0.0 }
    }
    let a = bump(t);
    a / (a + bump(1.0 - t))
}

/// Degree-n self-map of S². On the polar cap `{x₃ ≥ 3/4}` it is the power
/// map `(u, x₃) ↦ (uⁿ, sqrt(1 − |u|^{2n}))` in the horizontal complex
/// coordinate `u = x₁ + i x₂` (conjugated for n < 0); below `{x₃ ≤ 1/2}` it
/// is the constant w₀; in the collar the two are blended along great-circle
/// chords and renormalized, which stays away from −w₀ because both
/// endpoints sit in the open hemisphere around w₀'s side of the equator of
/// the chord. For n = 0 the map is constant w₀.
pub fn w_n(p: &[f64], n: i64) -> [f64; 3] {
    let w0 = w_n_basepoint();
    if n == 0 || p[2] <= 0.5 {
        return w0;
    }
    let u = C::new(p[0], p[1]);
    let un = if n > 0 { u.powi(n as i32) } else { u.conj().powi((-n) as i32) };
    let cap = [
        un.re,
        un.im,
        (1.0 - u.norm_sqr().powi(n.unsigned_abs() as i32)).max(0.0).sqrt(),
    ];
    if p[2] >= 0.75 {
        return cap;
    }
    let beta = smoothstep((0.75 - p[2]) / 0.25);
    let v = [
        (1.0 - beta) * cap[0] + beta * w0[0],
        (1.0 - beta) * cap[1] + beta * w0[1],
        (1.0 - beta) * cap[2] + beta * w0[2],
    ];
    let nv = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / nv, v[1] / nv, v[2] / nv]
}

/// The twisted embedding `e_n(x, t) = (1 + c cos t) x + i c sin t w_n(x)`
/// of S² × S¹ into C³. Injective for any unit field w_n and 0 < c < 1:
/// `|e_n|²` pins down `cos t`, the real block then recovers `x` (its factor
/// is ≥ 1 − c > 0), and the imaginary block fixes the sign of `sin t`.
pub fn e_n_embedding(k: usize, n: i64, c: f64) -> Result<SphereCircleMap, LabError> {
    if k != 2 {
        return Err(LabError::UnsupportedDimension(k));
    }
    if !c.is_finite() || c <= 0.0 || c >= 1.0 {
        return Err(LabError::BadCoefficient(c));
    }
    Ok(SphereCircleMap {
        name: "e-n",
        k,
        params: MapParams {
            c: Some(c),
            n: Some(n),
            delta: Some(DELTA),
            w0: Some(w_n_basepoint()),
        },
        eval: Arc::new(move |x: &[f64], t: f64| {
            let (st, ct) = t.sin_cos();
            let w = w_n(x, n);
            (0..3).map(|j| C::new((1.0 + c * ct) * x[j], c * st * w[j])).collect()
        }),
    })
}

// --- antipodal preimages -----------------------------------------------------

/// Solutions of `w_n(ξ) = −w₀` on S², counted by a latitude-longitude scan
/// plus projected Gauss-Newton refinement and clustering.
pub fn count_antipodal_preimages_at(n: i64, resolution: usize) -> Result<usize, LabError> {
    if resolution < 8 {
        return Err(LabError::BadGrid(resolution));
    }
    let w0 = w_n_basepoint();
    let target = [-w0[0], -w0[1], -w0[2]];
    let res = resolution;
    let candidates: Vec<[f64; 3]> = (0..=res)
        .into_par_iter()
        .flat_map_iter(|i| {
            let th = PI * i as f64 / res as f64;
            (0..2 * res).filter_map(move |j| {
                let ph = PI * j as f64 / res as f64;
                let p = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
                let w = w_n(&p, n);
                let gap = dist(&w, &target);
                (gap < 0.2).then_some(p)
            })
        })
        .collect();

    let mut solutions: Vec<[f64; 3]> = Vec::new();
    for start in candidates {
        let mut p = start.to_vec();
        let mut converged = false;
        for _ in 0..50 {
            let r: Vec<f64> = w_n(&p, n).iter().zip(&target).map(|(a, b)| a - b).collect();
            if norm(&r) < 1e-10 {
                converged = true;
                break;
            }
            let frame = sphere_frame(&p);
            let h = 1e-6;
            let cols: Vec<Vec<f64>> = frame
                .iter()
                .map(|v| {
                    let pp = normalized(&offset(&p, v, h));
                    let pm = normalized(&offset(&p, v, -h));
                    let (wp, wm) = (w_n(&pp, n), w_n(&pm, n));
                    (0..3).map(|a| (wp[a] - wm[a]) / (2.0 * h)).collect()
                })
                .collect();
            let d = least_squares_step(&cols, &r);
            for (a, (v0, v1)) in frame[0].iter().zip(&frame[1]).enumerate() {
                p[a] += d[0] * v0 + d[1] * v1;
            }
            p = normalized(&p);
        }
        if converged && !solutions.iter().any(|s| dist(s, &p) < 1e-4) {
            solutions.push([p[0], p[1], p[2]]);
        }
    }
    Ok(solutions.len())
}

/// Preimage count with a built-in stability check: the count must agree at
/// the base resolution and at double resolution.
pub fn count_antipodal_preimages(k: usize, n: i64) -> Result<usize, LabError> {
    if k != 2 {
        return Err(LabError::UnsupportedDimension(k));
    }
    let lo = count_antipodal_preimages_at(n, 128)?;
    let hi = count_antipodal_preimages_at(n, 256)?;
    if lo != hi {
        return Err(LabError::ResolutionTooCoarse(format!(
            "preimage clusters unresolved: {lo} at 128 vs {hi} at 256"
        )));
    }
    Ok(lo)
}

fn offset(p: &[f64], v: &[f64], h: f64) -> Vec<f64> {
    p.iter().zip(v).map(|(a, b)| a + h * b).collect()
}

// --- the Whitney invariant ---------------------------------------------------

/// Value of the embedding invariant: a full integer for even k, a residue
/// mod 2 for odd k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhitneyInvariant {
    Integer(i64),
    Mod2(u8),
}

impl std::fmt::Display for WhitneyInvariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WhitneyInvariant::Integer(n) => write!(f, "{n}"),
            WhitneyInvariant::Mod2(r) => write!(f, "{r} (mod 2)"),
        }
    }
}

/// `W(e_n)`: n for even k ≥ 4, n mod 2 for odd k ≥ 3. Below k = 3 the
/// invariant is not defined.
pub fn whitney_invariant_e_n(k: usize, n: i64) -> Result<WhitneyInvariant, LabError> {
    if k < 3 {
        return Err(LabError::InvariantRange(k));
    }
    Ok(if k % 2 == 0 {
        WhitneyInvariant::Integer(n)
    } else {
        WhitneyInvariant::Mod2((n.rem_euclid(2)) as u8)
    })
}
