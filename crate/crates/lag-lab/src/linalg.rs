//! Tiny dense least-squares solve for the Gauss-Newton refinements
//! (systems never exceed 6 unknowns).

/// Minimizes |J d + r| over d, with J given by columns. Normal equations
/// with a hair of Tikhonov damping so rank-deficient candidates (pairs
/// collapsing onto the diagonal) do not blow up; solved by Gaussian
/// elimination with partial pivoting.
pub(crate) fn least_squares_step(cols: &[Vec<f64>], r: &[f64]) -> Vec<f64> {
    let n = cols.len();
    let mut g = vec![vec![0.0; n + 1]; n];
    let mut trace = 0.0;
    for i in 0..n {
        for j in 0..n {
            g[i][j] = dot(&cols[i], &cols[j]);
        }
        trace += g[i][i];
        g[i][n] = -dot(&cols[i], r);
    }
    let damp = 1e-14 * (trace / n as f64).max(1e-30);
    for (i, row) in g.iter_mut().enumerate() {
        row[i] += damp;
    }
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| g[a][col].abs().total_cmp(&g[b][col].abs())).unwrap();
        g.swap(col, pivot);
        let p = g[col][col];
        if p.abs() < 1e-300 {
            continue;
        }
        for row in col + 1..n {
            let f = g[row][col] / p;
            for k in col..=n {
                g[row][k] -= f * g[col][k];
            }
        }
    }
    let mut d = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = g[row][n];
        for k in row + 1..n {
            s -= g[row][k] * d[k];
        }
        d[row] = if g[row][row].abs() < 1e-300 { 0.0 } else { s / g[row][row] };
    }
    d
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn normalized(a: &[f64]) -> Vec<f64> {
    let n = norm(a);
    a.iter().map(|x| x / n).collect()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
