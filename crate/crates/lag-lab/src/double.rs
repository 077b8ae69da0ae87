//! Grid-based double-point detection for sphere and sphere×circle maps.
//!
//! Pipeline: sample the domain on an angle grid (polar endpoints included,
//! exact duplicates removed), hash the images into coarse cells, collect
//! candidate pairs (image gap below a small threshold, domain separation
//! above one), keep one representative per coarse domain-cell pair, refine
//! each by Gauss-Newton on `f(p) − f(q) = 0` along the product of tangent
//! frames, and cluster the converged pairs. Candidates that collapse onto
//! the diagonal are discarded (they witness the immersed branch, not a
//! self-intersection); candidates that neither converge nor collapse make
//! the run fail with a "resolution too coarse" diagnostic.

use crate::linalg::{dist, least_squares_step, norm, normalized};
use crate::spheres::{sphere_frame, SphereCircleMap, SphereMap};
use crate::LabError;
use rayon::prelude::*;
use std::collections::HashMap;
use std::f64::consts::PI;

/// A refined self-intersection: two domain points with a common image.
#[derive(Debug, Clone)]
pub struct DoublePoint {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    /// |f(p) − f(q)| after refinement.
    pub image_gap: f64,
    /// |f(p)|, to locate the intersection in the target.
    pub image_norm: f64,
}

/// Double points of a sphere map `S^{dim-1} → C^out`.
pub fn double_points(
    m: &SphereMap,
    resolution: usize,
    tol: f64,
) -> Result<Vec<DoublePoint>, LabError> {
    let dom = Domain::Sphere(m);
    search(&dom, resolution, tol)
}

/// Double points of a map on S^k × S¹ (the circle factor is embedded as a
/// unit pair `(cos t, sin t)`, so the domain metric is chordal throughout).
pub fn double_points_sphere_circle(
    m: &SphereCircleMap,
    resolution: usize,
    tol: f64,
) -> Result<Vec<DoublePoint>, LabError> {
    let dom = Domain::SphereCircle(m);
    search(&dom, resolution, tol)
}

enum Domain<'a> {
    Sphere(&'a SphereMap),
    SphereCircle(&'a SphereCircleMap),
}

impl Domain<'_> {
    fn image(&self, p: &[f64]) -> Vec<f64> {
        let zs = match self {
            Domain::Sphere(m) => m.eval_raw(p),
            Domain::SphereCircle(m) => {
                let k = m.k;
                m.eval_raw(&p[..=k], p[k + 2].atan2(p[k + 1]))
            }
        };
        let mut out = Vec::with_capacity(2 * zs.len());
        for z in zs {
            out.push(z.re);
            out.push(z.im);
        }
        out
    }

    /// Orthonormal tangent directions at `p` in the embedded domain.
    fn frame(&self, p: &[f64]) -> Vec<Vec<f64>> {
        match self {
            Domain::Sphere(_) => sphere_frame(p),
            Domain::SphereCircle(m) => {
                let k = m.k;
                let mut dirs: Vec<Vec<f64>> = sphere_frame(&p[..=k])
                    .into_iter()
                    .map(|mut v| {
                        v.extend_from_slice(&[0.0, 0.0]);
                        v
                    })
                    .collect();
                let mut circ = vec![0.0; k + 3];
                circ[k + 1] = -p[k + 2];
                circ[k + 2] = p[k + 1];
                dirs.push(circ);
                dirs
            }
        }
    }

    /// Pull an offset point back onto the domain.
    fn retract(&self, p: &[f64]) -> Vec<f64> {
        match self {
            Domain::Sphere(_) => normalized(p),
            Domain::SphereCircle(m) => {
                let k = m.k;
                let mut out = normalized(&p[..=k]);
                let c = (p[k + 1] * p[k + 1] + p[k + 2] * p[k + 2]).sqrt();
                out.push(p[k + 1] / c);
                out.push(p[k + 2] / c);
                out
            }
        }
    }

    /// Angle grid with exact poles included, deduplicated.
    fn grid(&self, res: usize) -> Vec<Vec<f64>> {
        let polar = |steps: usize| -> Vec<f64> {
            (0..=steps).map(|i| PI * i as f64 / steps as f64).collect()
        };
        let azim: Vec<f64> = (0..res).map(|i| 2.0 * PI * i as f64 / res as f64).collect();
        let mut axes: Vec<Vec<f64>> = Vec::new();
        match self {
            Domain::Sphere(m) => {
                // first polar axis at full resolution so the poles are hit
                // exactly, remaining polar axes at half
                for a in 0..m.dim - 2 {
                    axes.push(polar(if a == 0 { res } else { res / 2 }));
                }
                axes.push(azim.clone());
            }
            Domain::SphereCircle(m) => {
                for _ in 0..m.k - 1 {
                    axes.push(polar(res / 2));
                }
                axes.push(azim.clone());
                axes.push(azim.clone()); // the circle factor
            }
        }
        let mut pts: Vec<Vec<f64>> = Vec::new();
        let mut idx = vec![0usize; axes.len()];
        loop {
            let angles: Vec<f64> = idx.iter().zip(&axes).map(|(&i, ax)| ax[i]).collect();
            pts.push(self.point_from_angles(&angles));
            let mut a = axes.len();
            loop {
                if a == 0 {
                    break;
                }
                a -= 1;
                idx[a] += 1;
                if idx[a] < axes[a].len() {
                    break;
                }
                idx[a] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
        // drop duplicates (polar degeneracies)
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        pts.retain(|p| {
            let key: Vec<i64> = p.iter().map(|x| (x * 1e9).round() as i64).collect();
            seen.insert(key, ()).is_none()
        });
        pts
    }

    fn point_from_angles(&self, angles: &[f64]) -> Vec<f64> {
        // nested spherical coordinates: S^m = (sin a * S^{m-1}, cos a)
        fn sphere(angles: &[f64]) -> Vec<f64> {
            if angles.len() == 1 {
                return vec![angles[0].cos(), angles[0].sin()];
            }
            let (s, c) = angles[0].sin_cos();
            let mut inner = sphere(&angles[1..]);
            for v in inner.iter_mut() {
                *v *= s;
            }
            inner.push(c);
            inner
        }
        match self {
            Domain::Sphere(_) => sphere(angles),
            Domain::SphereCircle(_) => {
                let n = angles.len();
                let mut p = sphere(&angles[..n - 1]);
                p.push(angles[n - 1].cos());
                p.push(angles[n - 1].sin());
                p
            }
        }
    }
}

fn cell_key(v: &[f64], cell: f64) -> Vec<i64> {
    v.iter().map(|x| (x / cell).floor() as i64).collect()
}

fn search(dom: &Domain<'_>, res: usize, tol: f64) -> Result<Vec<DoublePoint>, LabError> {
    if res < 8 || !tol.is_finite() || tol <= 0.0 {
        return Err(LabError::BadTolerance(tol));
    }
    let pts = dom.grid(res);
    let images: Vec<Vec<f64>> = pts.par_iter().map(|p| dom.image(p)).collect();
    if images.iter().flatten().any(|v| !v.is_finite()) {
        return Err(LabError::NonFinite(vec![]));
    }

    // coarse pass: hash images, pull out separated pairs with nearby images
    let hash_cell = 0.05f64.max(10.0 * tol);
    let pair_gap = 0.01f64.max(10.0 * tol);
    let sep = (8.0 * PI / res as f64).min(0.5).max(10.0 * tol);
    let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (i, im) in images.iter().enumerate() {
        buckets.entry(cell_key(im, hash_cell)).or_default().push(i);
    }

    let keys: Vec<&Vec<i64>> = buckets.keys().collect();
    // candidate representatives, one per coarse domain-cell pair
    let domain_cell = 0.25;
    let reps: Vec<(Vec<i64>, f64, usize, usize)> = keys
        .par_iter()
        .map(|key| {
            let mut local: HashMap<Vec<i64>, (f64, usize, usize)> = HashMap::new();
            let dim = key.len();
            let mut neighbors: Vec<usize> = Vec::new();
            let mut offs = vec![0i64; dim];
            'outer: loop {
                let k: Vec<i64> = key.iter().zip(&offs).map(|(a, b)| a + b - 1).collect();
                if let Some(v) = buckets.get(&k) {
                    neighbors.extend_from_slice(v);
                }
                let mut a = dim;
                loop {
                    if a == 0 {
                        break 'outer;
                    }
                    a -= 1;
                    offs[a] += 1;
                    if offs[a] < 3 {
                        break;
                    }
                    offs[a] = 0;
                }
            }
            for &a in &buckets[*key] {
                for &b in &neighbors {
                    if b <= a {
                        continue;
                    }
                    let gap = dist(&images[a], &images[b]);
                    if gap >= pair_gap || dist(&pts[a], &pts[b]) <= sep {
                        continue;
                    }
                    let mut ck = cell_key(&pts[a], domain_cell);
                    ck.extend(cell_key(&pts[b], domain_cell));
                    let e = local.entry(ck).or_insert((f64::INFINITY, 0, 0));
                    if (gap, a, b) < (e.0, e.1, e.2) {
                        *e = (gap, a, b);
                    }
                }
            }
            local
        })
        .reduce(HashMap::new, |mut acc, local| {
            for (k, v) in local {
                let e = acc.entry(k).or_insert((f64::INFINITY, 0, 0));
                if v < *e {
                    *e = v;
                }
            }
            acc
        })
        .into_iter()
        .map(|(k, (gap, a, b))| (k, gap, a, b))
        .collect();

    let mut reps = reps;
    reps.sort_by(|x, y| (&x.0, x.2, x.3).cmp(&(&y.0, y.2, y.3)));

    // refine each representative
    let accept = tol.min(1e-9);
    let mut solutions: Vec<DoublePoint> = Vec::new();
    let mut unresolved = 0usize;
    for (_, _, ia, ib) in reps {
        let mut p = pts[ia].clone();
        let mut q = pts[ib].clone();
        let mut converged = false;
        let mut collapsed = false;
        for _ in 0..60 {
            if dist(&p, &q) < 10.0 * tol {
                collapsed = true;
                break;
            }
            let (fp, fq) = (dom.image(&p), dom.image(&q));
            let r: Vec<f64> = fp.iter().zip(&fq).map(|(a, b)| a - b).collect();
            if norm(&r) < accept {
                converged = true;
                break;
            }
            let h = 1e-6;
            let mut cols: Vec<Vec<f64>> = Vec::new();
            for (point, sign) in [(&p, 1.0), (&q, -1.0)] {
                for v in dom.frame(point) {
                    let plus: Vec<f64> =
                        point.iter().zip(&v).map(|(a, b)| a + h * b).collect();
                    let minus: Vec<f64> =
                        point.iter().zip(&v).map(|(a, b)| a - h * b).collect();
                    let (gp, gm) = (dom.image(&dom.retract(&plus)), dom.image(&dom.retract(&minus)));
                    cols.push(
                        gp.iter().zip(&gm).map(|(a, b)| sign * (a - b) / (2.0 * h)).collect(),
                    );
                }
            }
            let d = least_squares_step(&cols, &r);
            let fp_frame = dom.frame(&p);
            let fq_frame = dom.frame(&q);
            let np = fp_frame.len();
            for (a, x) in p.iter_mut().enumerate() {
                *x += (0..np).map(|c| d[c] * fp_frame[c][a]).sum::<f64>();
            }
            for (a, x) in q.iter_mut().enumerate() {
                *x += (0..fq_frame.len()).map(|c| d[np + c] * fq_frame[c][a]).sum::<f64>();
            }
            p = dom.retract(&p);
            q = dom.retract(&q);
        }
        if collapsed {
            continue;
        }
        if !converged {
            unresolved += 1;
            continue;
        }
        if dist(&p, &q) <= 10.0 * tol {
            continue;
        }
        // canonical order within the pair, then cluster
        if p > q {
            std::mem::swap(&mut p, &mut q);
        }
        let already = solutions.iter().any(|s| {
            (dist(&s.p, &p) < 10.0 * tol && dist(&s.q, &q) < 10.0 * tol)
                || (dist(&s.p, &q) < 10.0 * tol && dist(&s.q, &p) < 10.0 * tol)
        });
        if !already {
            let gap = dist(&dom.image(&p), &dom.image(&q));
            let image_norm = norm(&dom.image(&p));
            solutions.push(DoublePoint { p, q, image_gap: gap, image_norm });
        }
    }
    if unresolved > 0 {
        return Err(LabError::ResolutionTooCoarse(format!(
            "{unresolved} candidate pair(s) did not converge at resolution {res}"
        )));
    }
    Ok(solutions)
}
