use atf_base::{mutate, weights, AtfError, BaseTriangle};
use num_traits::ToPrimitive;

/// Renders a base triangle as a standalone SVG document: the polygon, a dot
/// at the origin (the monotone fiber), one weight label just outside each
/// vertex and, when `cut` names a vertex, the eigenray of the mutation at
/// that vertex dashed from the vertex to the opposite edge.
///
/// The viewBox is the bounding box of everything drawn, padded by 10%; the
/// y-axis points up (plane coordinates are negated into SVG's). Output is a
/// pure function of the input, so re-rendering is byte-identical.
pub fn render_svg(t: &BaseTriangle, cut: Option<usize>) -> Result<String, AtfError> {
    let to_xy = |v: &lattice_core::Vec2Q| -> (f64, f64) {
        (
            v.x.to_f64().expect("rational fits in f64"),
            -v.y.to_f64().expect("rational fits in f64"),
        )
    };
    let pts: Vec<(f64, f64)> = t.vertices().iter().map(|v| to_xy(v)).collect();
    let labels: Vec<(f64, f64, String)> = {
        let w = weights(t);
        (0..3)
            .map(|i| {
                let (x, y) = pts[i];
                (x * 1.14, y * 1.14, w[i].to_string())
            })
            .collect()
    };
    let cut_seg: Option<((f64, f64), (f64, f64))> = match cut {
        Some(i) => {
            let m = mutate(t, i)?;
            let v_new = to_xy(m.triangle.vertex(m.new_vertex_index));
            Some((pts[i], v_new))
        }
        None => None,
    };

    let mut xs = vec![0.0];
    let mut ys = vec![0.0];
    for &(x, y) in &pts {
        xs.push(x);
        ys.push(y);
    }
    for (x, y, _) in &labels {
        xs.push(*x);
        ys.push(*y);
    }
    if let Some((a, b)) = cut_seg {
        xs.extend([a.0, b.0]);
        ys.extend([a.1, b.1]);
    }
    let min = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (x0, x1, y0, y1) = (min(&xs), max(&xs), min(&ys), max(&ys));
    let span = (x1 - x0).max(y1 - y0);
    let pad = 0.1 * span;
    let (vx, vy, vw, vh) = (x0 - pad, y0 - pad, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);

    let stroke = 0.012 * span;
    let font = 0.08 * span;
    let dot = 0.02 * span;
    let n = |x: f64| {
        let s = format!("{x:.4}");
        if s == "-0.0000" {
            "0.0000".to_string()
        } else {
            s
        }
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        n(vx),
        n(vy),
        n(vw),
        n(vh)
    ));
    svg.push_str(&format!(
        "  <path d=\"M {} {} L {} {} L {} {} Z\" fill=\"#eef2fa\" stroke=\"#1f3b73\" stroke-width=\"{}\"/>\n",
        n(pts[0].0), n(pts[0].1), n(pts[1].0), n(pts[1].1), n(pts[2].0), n(pts[2].1), n(stroke)
    ));
    if let Some((a, b)) = cut_seg {
        svg.push_str(&format!(
            "  <path d=\"M {} {} L {} {}\" fill=\"none\" stroke=\"#a33028\" stroke-width=\"{}\" stroke-dasharray=\"{} {}\"/>\n",
            n(a.0), n(a.1), n(b.0), n(b.1), n(stroke), n(3.0 * stroke), n(2.0 * stroke)
        ));
    }
    svg.push_str(&format!(
        "  <circle cx=\"0\" cy=\"0\" r=\"{}\" fill=\"#1f3b73\"/>\n",
        n(dot)
    ));
    for (x, y, text) in &labels {
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"monospace\" \
             text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"#17213a\">{}</text>\n",
            n(*x),
            n(*y),
            n(font),
            text
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use atf_base::root_triangle;

    #[test]
    fn root_render_has_three_unit_labels_and_a_dot() {
        let svg = render_svg(&root_triangle(), None).unwrap();
        assert_eq!(svg.matches("<text").count(), 3);
        assert_eq!(svg.matches(">1</text>").count(), 3);
        assert!(svg.contains("<circle cx=\"0\" cy=\"0\""));
        assert!(svg.contains("viewBox="));
        assert!(!svg.contains("dasharray"));
    }

    #[test]
    fn first_mutation_renders_weights_4_1_1() {
        let m = mutate(&root_triangle(), 0).unwrap();
        let svg = render_svg(&m.triangle, None).unwrap();
        assert_eq!(svg.matches(">4</text>").count(), 1);
        assert_eq!(svg.matches(">1</text>").count(), 2);
    }

    #[test]
    fn rendering_is_deterministic_and_cut_is_dashed() {
        let t = root_triangle();
        let a = render_svg(&t, Some(1)).unwrap();
        let b = render_svg(&t, Some(1)).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("stroke-dasharray"));
        assert!(render_svg(&t, Some(3)).is_err());
    }
}
