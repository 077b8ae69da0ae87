use lag_lab::{
    chekanov_default_curve, chekanov_torus, count_antipodal_preimages, defect_convergence,
    double_points, double_points_sphere_circle, e_n_embedding, hamiltonian_h, lagrangian_defect,
    map_f, moment_map, nemirovski_embedding, product_is_monotone, product_torus, t_a_gamma,
    ta_gamma_default_curve, whitney_immersion, whitney_invariant_e_n, winding_number, DoublePoint,
    FDConfig, LabError, LagTarget, ParamSurface, WhitneyInvariant, C,
};
use std::fmt;
use std::str::FromStr;

use crate::report::Report;

/// Pass bar for every finite-difference defect line; matches the acceptance
/// setup at the default step h = 1e-4.
pub const DEFECT_BAR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Chekanov,
    Clifford,
    TaGamma,
    Whitney,
    Nemirovski,
    EN,
}

impl Family {
    pub fn is_torus(self) -> bool {
        matches!(self, Family::Chekanov | Family::Clifford | Family::TaGamma)
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "chekanov" => Ok(Family::Chekanov),
            "clifford" => Ok(Family::Clifford),
            "ta-gamma" => Ok(Family::TaGamma),
            "whitney" => Ok(Family::Whitney),
            "nemirovski" => Ok(Family::Nemirovski),
            "e-n" => Ok(Family::EN),
            _ => Err(format!(
                "unknown family {s:?}; expected chekanov|clifford|ta-gamma|whitney|nemirovski|e-n"
            )),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Chekanov => "chekanov",
            Family::Clifford => "clifford",
            Family::TaGamma => "ta-gamma",
            Family::Whitney => "whitney",
            Family::Nemirovski => "nemirovski",
            Family::EN => "e-n",
        })
    }
}

/// Numeric knobs shared by the `lag` verbs.
#[derive(Debug, Clone, Copy)]
pub struct LagParams {
    /// Total sample budget; the per-axis grid is its square root.
    pub samples: usize,
    /// Finite-difference step.
    pub h: f64,
    /// Degree for the `e-n` family.
    pub n: i64,
    /// Sphere dimension parameter for the sphere families.
    pub k: usize,
    /// Level of the Hamiltonian for `ta-gamma`.
    pub a: f64,
}

impl Default for LagParams {
    fn default() -> Self {
        LagParams {
            samples: 65536,
            h: 1e-4,
            n: 1,
            k: 2,
            a: 0.0,
        }
    }
}

fn grid_of(samples: usize) -> usize {
    ((samples as f64).sqrt().ceil() as usize).max(2)
}

/// The torus-family surface for `family`, or `None` for the sphere families.
pub fn torus_surface(family: Family, p: &LagParams) -> Result<Option<ParamSurface>, LabError> {
    Ok(match family {
        Family::Chekanov => Some(chekanov_torus(&chekanov_default_curve())?),
        Family::Clifford => Some(product_torus(1.0, 1.0)?),
        Family::TaGamma => Some(t_a_gamma(p.a, &ta_gamma_default_curve())?),
        _ => None,
    })
}

/// Runs the named family's check suite. Every family gets a defect line
/// against [`DEFECT_BAR`]; the rest of the lines pin the identities that are
/// exact for that family (level sets, moment image, double points, preimage
/// counts, the invariant case split).
pub fn check_family(family: Family, p: &LagParams) -> Result<Report, LabError> {
    let grid = grid_of(p.samples);
    let cfg = FDConfig::new(p.h, 1e-6, grid)?;
    let mut r = Report::new(format!(
        "lag check --family {family} (h = {:e}, samples = {})",
        p.h, p.samples
    ));
    match family {
        Family::Chekanov => {
            let gamma = chekanov_default_curve();
            let surf = chekanov_torus(&gamma)?;
            defect_line(&mut r, LagTarget::Surface(&surf), &cfg)?;
            let mut max_h = 0.0f64;
            let mut violations = 0usize;
            for i in 0..grid {
                for j in 0..grid {
                    let q = surf.at(i as f64 / grid as f64, j as f64 / grid as f64);
                    max_h = max_h.max(hamiltonian_h(q).abs());
                    let (m1, m2) = moment_map(q);
                    if !(m1 + m2 < 3.0 && m1 < 2.0 && m2 < 2.0) {
                        violations += 1;
                    }
                }
            }
            r.push(
                "H vanishes on the torus",
                max_h < 1e-12,
                format!("max |H| = {max_h:.3e}"),
            );
            r.push(
                "moment image in the monotone triangle",
                violations == 0,
                format!(
                    "{} samples, {violations} outside {{m1+m2 < 3, m_i < 2}}",
                    grid * grid
                ),
            );
            let loops: Vec<C> = (0..512)
                .map(|j| map_f(surf.at(0.0, j as f64 / 512.0)))
                .collect();
            let wind = winding_number(&loops, C::new(0.0, 0.0))?;
            r.push(
                "F-image loop does not encircle the origin",
                wind == 0,
                format!("winding number {wind}"),
            );
        }
        Family::Clifford => {
            let surf = product_torus(1.0, 1.0)?;
            defect_line(&mut r, LagTarget::Surface(&surf), &cfg)?;
            let mut dev = 0.0f64;
            for i in 0..grid {
                for j in 0..grid {
                    let (m1, m2) = moment_map(surf.at(i as f64 / grid as f64, j as f64 / grid as f64));
                    dev = dev.max((m1 - 1.0).abs()).max((m2 - 1.0).abs());
                }
            }
            r.push(
                "moment map is constantly (1, 1)",
                dev < 1e-9,
                format!("max deviation {dev:.3e}"),
            );
            r.push(
                "monotone (equal areas)",
                product_is_monotone(1.0, 1.0, 0.0),
                "areas 1, 1".to_string(),
            );
        }
        Family::TaGamma => {
            let gamma = ta_gamma_default_curve();
            let surf = t_a_gamma(p.a, &gamma)?;
            defect_line(&mut r, LagTarget::Surface(&surf), &cfg)?;
            let mut dev_h = 0.0f64;
            let mut dev_f = 0.0f64;
            for i in 0..grid {
                for j in 0..grid {
                    let (s, t) = (i as f64 / grid as f64, j as f64 / grid as f64);
                    let q = surf.at(s, t);
                    dev_h = dev_h.max((hamiltonian_h(q) - p.a).abs());
                    dev_f = dev_f.max((map_f(q) - gamma.at(t)).norm());
                }
            }
            r.push(
                "H is constantly a on the fiber",
                dev_h < 1e-12,
                format!("a = {}, max |H - a| = {dev_h:.3e}", p.a),
            );
            r.push(
                "F traces the curve exactly",
                dev_f < 1e-12,
                format!("max |F - gamma| = {dev_f:.3e}"),
            );
            let conv_cfg = FDConfig::new(p.h, 1e-6, grid.min(64))?;
            let steps = [p.h, p.h / 2.0, p.h / 4.0];
            let conv = defect_convergence(LagTarget::Surface(&surf), &conv_cfg, &steps)?;
            let ok = conv.is_second_order(3.5, 4.5, 1e-9);
            r.push(
                "defect converges at second order",
                ok,
                format!("defects {:?}", conv.defects),
            );
        }
        Family::Whitney => {
            let m = whitney_immersion(p.k)?;
            defect_line(&mut r, LagTarget::Sphere(&m), &cfg)?;
            if p.k == 2 {
                let dps = double_points(&m, 64, 1e-9)?;
                let ok = dps.len() == 1 && dps[0].image_norm < 1e-6;
                let detail = match dps.first() {
                    Some(d) => format!("{} found, image norm {:.3e}", dps.len(), d.image_norm),
                    None => "0 found".to_string(),
                };
                r.push("single double point at the origin", ok, detail);
            }
        }
        Family::Nemirovski => {
            let m = nemirovski_embedding(p.k)?;
            defect_line(&mut r, LagTarget::SphereCircle(&m), &cfg)?;
            if p.k == 2 {
                let dps = double_points_sphere_circle(&m, 32, 1e-9)?;
                r.push(
                    "embedded (no double points)",
                    dps.is_empty(),
                    format!("{} found at resolution 32", dps.len()),
                );
            }
        }
        Family::EN => {
            if p.k == 2 {
                let count = count_antipodal_preimages(2, p.n)?;
                r.push(
                    "antipodal preimage count equals |n|",
                    count == p.n.unsigned_abs() as usize,
                    format!("n = {}: {count} preimages of the antipode", p.n),
                );
                let emb = e_n_embedding(2, p.n, 0.4);
                r.push(
                    "embedding well-defined for c = 0.4",
                    emb.is_ok(),
                    "injective by the norm argument".to_string(),
                );
            } else {
                let inv = whitney_invariant_e_n(p.k, p.n)?;
                let expected = if p.k % 2 == 0 {
                    WhitneyInvariant::Integer(p.n)
                } else {
                    WhitneyInvariant::Mod2(p.n.rem_euclid(2) as u8)
                };
                r.push(
                    "Whitney invariant case split",
                    inv == expected,
                    format!("k = {}, n = {}: W = {inv}", p.k, p.n),
                );
            }
        }
    }
    Ok(r)
}

fn defect_line(r: &mut Report, target: LagTarget<'_>, cfg: &FDConfig) -> Result<(), LabError> {
    let d = lagrangian_defect(target, cfg)?;
    r.push(
        "lagrangian defect",
        d < DEFECT_BAR,
        format!("{d:.3e} at h = {:e} (bar {DEFECT_BAR:e})", cfg.h),
    );
    Ok(())
}

/// Moment-map CSV for a torus family: one row per grid point, full-precision
/// scientific notation, stable row order.
pub fn moment_csv(surf: &ParamSurface, per_axis: usize) -> String {
    let mut out = String::from("s,t,x1,y1,x2,y2,mu1,mu2\n");
    for i in 0..per_axis {
        for j in 0..per_axis {
            let (s, t) = (i as f64 / per_axis as f64, j as f64 / per_axis as f64);
            let q = surf.at(s, t);
            let (m1, m2) = moment_map(q);
            out.push_str(&format!(
                "{s:e},{t:e},{:e},{:e},{:e},{:e},{m1:e},{m2:e}\n",
                q.z1.re, q.z1.im, q.z2.re, q.z2.im
            ));
        }
    }
    out
}

/// Self-intersection scan for the sphere families; the torus families are
/// rejected by the CLI before this is reached.
pub fn sphere_scan(
    family: Family,
    p: &LagParams,
    resolution: usize,
) -> Result<Vec<DoublePoint>, LabError> {
    match family {
        Family::Whitney => double_points(&whitney_immersion(p.k)?, resolution, 1e-9),
        Family::Nemirovski => {
            double_points_sphere_circle(&nemirovski_embedding(p.k)?, resolution, 1e-9)
        }
        Family::EN => {
            double_points_sphere_circle(&e_n_embedding(p.k, p.n, 0.4)?, resolution, 1e-9)
        }
        _ => Err(LabError::UnsupportedDimension(0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_round_trip() {
        for name in ["chekanov", "clifford", "ta-gamma", "whitney", "nemirovski", "e-n"] {
            let f: Family = name.parse().unwrap();
            assert_eq!(f.to_string(), name);
        }
        assert!("klein".parse::<Family>().is_err());
    }

    #[test]
    fn clifford_checks_pass_on_a_small_grid() {
        let p = LagParams {
            samples: 1024,
            ..LagParams::default()
        };
        let r = check_family(Family::Clifford, &p).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn e_n_lines_split_on_k() {
        let p = LagParams {
            n: 3,
            k: 4,
            ..LagParams::default()
        };
        let r = check_family(Family::EN, &p).unwrap();
        assert!(r.all_pass(), "{r}");
        assert!(r.to_string().contains("W = 3"));
    }

    #[test]
    fn moment_csv_shape_and_determinism() {
        let surf = product_torus(1.0, 1.0).unwrap();
        let csv = moment_csv(&surf, 8);
        assert_eq!(csv.lines().count(), 65);
        assert!(csv.starts_with("s,t,x1,y1,x2,y2,mu1,mu2\n"));
        assert_eq!(csv, moment_csv(&surf, 8));
        let row = csv.lines().nth(1).unwrap();
        assert_eq!(row.split(',').count(), 8);
    }
}
