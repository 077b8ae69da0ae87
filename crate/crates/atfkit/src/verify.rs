use atf_base::{
    gl2z_equivalent, invariant_report, mutate, mutate_path, root_triangle, transform,
    verify_shear_lemma, weights, BaseTriangle, VertexSource,
};
use markov::geometric_nodes;
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Report;

/// Outcome of checking every triangle of the full ternary mutation tree
/// (undo edges included) to the given depth.
#[derive(Debug, Clone)]
pub struct TernaryOutcome {
    pub nodes: usize,
    /// Nodes where some vertex weight is not the square of the lockstep
    /// Markov number at that position.
    pub lockstep_failures: usize,
    /// Nodes where an exact identity (area, length sum, edge products,
    /// weight-product square) fails.
    pub identity_failures: usize,
    /// Nodes where the shear lemma fails at some vertex.
    pub shear_failures: usize,
    pub first_failure: Option<String>,
}

impl TernaryOutcome {
    pub fn all_ok(&self) -> bool {
        self.lockstep_failures == 0 && self.identity_failures == 0 && self.shear_failures == 0
    }
}

/// Walks all `(3^(depth+1) - 1) / 2` triangles reachable by mutation paths of
/// length at most `depth` (no deduplication, undo moves included), carrying
/// the Markov triple in lockstep through the mutation provenance, and checks
/// at every node: weights are the squares of the aligned triple, the exact
/// conserved identities hold, and the shear lemma holds at all three vertices.
pub fn ternary_suite(depth: usize) -> TernaryOutcome {
    fn note(out: &mut TernaryOutcome, path: &[usize], what: &str) {
        if out.first_failure.is_none() {
            let spec: Vec<String> = path.iter().map(|i| (i + 1).to_string()).collect();
            out.first_failure = Some(format!("{what} at path [{}]", spec.join(",")));
        }
    }
    fn walk(
        t: &BaseTriangle,
        triple: &[BigInt; 3],
        path: &mut Vec<usize>,
        left: usize,
        out: &mut TernaryOutcome,
    ) {
        out.nodes += 1;
        let w = weights(t);
        if !(0..3).all(|k| &triple[k] * &triple[k] == w[k]) {
            out.lockstep_failures += 1;
            note(out, path, "weights differ from lockstep squares");
        }
        if !invariant_report(t).all_hold() {
            out.identity_failures += 1;
            note(out, path, "conserved identity broken");
        }
        if !(0..3).all(|i| verify_shear_lemma(t, i).map(|c| c.ok()).unwrap_or(false)) {
            out.shear_failures += 1;
            note(out, path, "shear lemma broken");
        }
        if left == 0 {
            return;
        }
        for i in 0..3 {
            let new_val =
                BigInt::from(3) * &triple[(i + 1) % 3] * &triple[(i + 2) % 3] - &triple[i];
            let m = mutate(t, i).expect("mutation of a valid triangle");
            let child: [BigInt; 3] = std::array::from_fn(|k| match m.provenance[k] {
                VertexSource::New => new_val.clone(),
                VertexSource::Sheared(j) | VertexSource::Kept(j) => triple[j].clone(),
            });
            path.push(i);
            walk(&m.triangle, &child, path, left - 1, out);
            path.pop();
        }
    }
    let mut out = TernaryOutcome {
        nodes: 0,
        lockstep_failures: 0,
        identity_failures: 0,
        shear_failures: 0,
        first_failure: None,
    };
    let triple: [BigInt; 3] = std::array::from_fn(|_| BigInt::one());
    walk(&root_triangle(), &triple, &mut Vec::new(), depth, &mut out);
    out
}

/// Runs `pairs` random double-mutation trials: pick a triangle by a random
/// mutation path of length at most `max_len`, mutate at a random vertex, then
/// mutate again at the fresh vertex; the result must be GL(2,Z)-equivalent to
/// the start, and the returned matrix is re-applied and checked as a witness.
/// Returns (passed, total, first failure).
pub fn involution_trials(
    max_len: usize,
    pairs: usize,
    seed: u64,
) -> (usize, usize, Option<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    let mut first_fail = None;
    for trial in 0..pairs {
        let len = rng.gen_range(0..=max_len);
        let path: Vec<usize> = (0..len).map(|_| rng.gen_range(0..3)).collect();
        let vertex = rng.gen_range(0..3);
        let ok = (|| {
            let t = mutate_path(&root_triangle(), &path).ok()?;
            let m1 = mutate(&t, vertex).ok()?;
            let m2 = mutate(&m1.triangle, m1.new_vertex_index).ok()?;
            let a = gl2z_equivalent(&m2.triangle, &t)?;
            transform(&m2.triangle, &a).same_vertex_set(&t).then_some(())
        })()
        .is_some();
        if ok {
            passed += 1;
        } else if first_fail.is_none() {
            let spec: Vec<String> = path.iter().map(|i| (i + 1).to_string()).collect();
            first_fail = Some(format!(
                "trial {trial}: path [{}], vertex {}",
                spec.join(","),
                vertex + 1
            ));
        }
    }
    (passed, pairs, first_fail)
}

/// Checks that the deduplicated tree's triangles are pairwise distinguishable:
/// weight multisets all differ, and the GL(2,Z) search finds no equivalence
/// for any pair. Returns (weights distinct, no equivalences, node count).
pub fn dedup_distinctness(depth: usize) -> (bool, bool, usize) {
    let nodes = geometric_nodes(depth).expect("tree mutations stay valid");
    let mut multisets: Vec<Vec<BigInt>> = nodes
        .iter()
        .map(|n| {
            let mut w = weights(&n.triangle).to_vec();
            w.sort();
            w
        })
        .collect();
    let count = nodes.len();
    let mut distinct = true;
    let mut no_equiv = true;
    for i in 0..count {
        for j in (i + 1)..count {
            if multisets[i] == multisets[j] {
                distinct = false;
            }
            if gl2z_equivalent(&nodes[i].triangle, &nodes[j].triangle).is_some() {
                no_equiv = false;
            }
        }
    }
    multisets.clear();
    (distinct, no_equiv, count)
}

/// The full `atf verify` suite as a report: ternary-walk checks, involution
/// trials, and dedup distinguishability.
pub fn run_verify(depth: usize, pairs: usize, seed: u64) -> Report {
    let mut report = Report::new(format!("atf verify --depth {depth} (seed {seed})"));
    let walk = ternary_suite(depth);
    let tag = |fails: usize| {
        if fails == 0 {
            format!("all {} triangles", walk.nodes)
        } else {
            format!(
                "{fails}/{} triangles failed ({})",
                walk.nodes,
                walk.first_failure.as_deref().unwrap_or("?")
            )
        }
    };
    report.push(
        "weights are lockstep Markov squares",
        walk.lockstep_failures == 0,
        tag(walk.lockstep_failures),
    );
    report.push(
        "conserved identities (area, lengths, products)",
        walk.identity_failures == 0,
        tag(walk.identity_failures),
    );
    report.push(
        "shear lemma at every vertex",
        walk.shear_failures == 0,
        tag(walk.shear_failures),
    );
    let (passed, total, fail) = involution_trials(depth.min(5), pairs, seed);
    report.push(
        "mutation involution with verified witness",
        passed == total,
        match fail {
            None => format!("{passed}/{total} random pairs"),
            Some(f) => format!("{passed}/{total} random pairs; first failure: {f}"),
        },
    );
    let (distinct, no_equiv, count) = dedup_distinctness(depth.min(5));
    report.push(
        "weight multisets pairwise distinct",
        distinct,
        format!("{count} deduplicated triangles"),
    );
    report.push(
        "no unimodular equivalences between tree triangles",
        no_equiv,
        format!("{} pairs searched", count * (count - 1) / 2),
    );
    report
}
