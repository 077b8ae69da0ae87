//! Markov triples, the mutation tree, and the exact lockstep between the
//! arithmetic tree and the triangle mutation calculus: a triangle reachable
//! from the root carries the squares of a Markov triple as its vertex
//! weights, position by position.

use atf_base::{mutate, root_triangle, weights, AtfError, BaseTriangle, VertexSource};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MarkovError {
    #[error("Markov numbers must be positive, got {0}")]
    NonPositive(BigInt),
    #[error("position {0} out of range (0..3)")]
    Position(usize),
    #[error("triangle is not in the mutation tree: {0}")]
    NotInTree(String),
    #[error(transparent)]
    Atf(#[from] AtfError),
}

/// Ordered triple of positive integers. `is_markov` decides membership in the
/// Markov equation `a^2 + b^2 + c^2 = 3abc`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkovTriple(pub [BigInt; 3]);

impl MarkovTriple {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self, MarkovError> {
        for v in [&a, &b, &c] {
            if !v.is_positive() {
                return Err(MarkovError::NonPositive(v.clone()));
            }
        }
        Ok(MarkovTriple([a, b, c]))
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self, MarkovError> {
        MarkovTriple::new(BigInt::from(a), BigInt::from(b), BigInt::from(c))
    }

    pub fn is_markov(&self) -> bool {
        let [a, b, c] = &self.0;
        a * a + b * b + c * c == BigInt::from(3) * a * b * c
    }

    /// Entries sorted descending, the display convention of the tree.
    pub fn sorted_desc(&self) -> MarkovTriple {
        let mut v = self.0.clone();
        v.sort();
        v.reverse();
        MarkovTriple(v)
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl Serialize for MarkovTriple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [
            self.0[0].to_string(),
            self.0[1].to_string(),
            self.0[2].to_string(),
        ]
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MarkovTriple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b, c] = <[String; 3]>::deserialize(d)?;
        let parse = |s: &str| {
            s.trim()
                .parse::<BigInt>()
                .map_err(D::Error::custom)
        };
        MarkovTriple::new(parse(&a)?, parse(&b)?, parse(&c)?).map_err(D::Error::custom)
    }
}

/// `a^2 + b^2 + c^2 = 3abc`, with positivity enforced.
pub fn is_markov(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<bool, MarkovError> {
    Ok(MarkovTriple::new(a.clone(), b.clone(), c.clone())?.is_markov())
}

/// Replaces the entry at `pos` by `3 * (product of the others) - entry`.
/// On a Markov triple the result is again Markov (Vieta: the two roots of the
/// quadratic in that variable multiply to the sum of the other two squares).
pub fn mutate_triple(t: &MarkovTriple, pos: usize) -> Result<MarkovTriple, MarkovError> {
    if pos >= 3 {
        return Err(MarkovError::Position(pos));
    }
    let mut v = t.0.clone();
    v[pos] = BigInt::from(3) * &t.0[(pos + 1) % 3] * &t.0[(pos + 2) % 3] - &t.0[pos];
    if !v[pos].is_positive() {
        return Err(MarkovError::NonPositive(v[pos].clone()));
    }
    Ok(MarkovTriple(v))
}

// ---------------------------------------------------------------------------
// The tree
// ---------------------------------------------------------------------------

/// Node of the Markov tree. Triples are stored sorted descending; `path`
/// holds the 1-based mutation positions from the root that created the node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub triple: MarkovTriple,
    pub path: Vec<u8>,
    pub children: Vec<TreeNode>,
}

impl TreeNode {
    pub fn walk(&self, f: &mut impl FnMut(&TreeNode)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }

    /// Triples by depth, `levels()[d]` = all triples at depth `d` (in edges).
    pub fn levels(&self) -> Vec<Vec<MarkovTriple>> {
        let mut out: Vec<Vec<MarkovTriple>> = Vec::new();
        let mut frontier = vec![self];
        while !frontier.is_empty() {
            out.push(frontier.iter().map(|n| n.triple.clone()).collect());
            frontier = frontier.iter().flat_map(|n| n.children.iter()).collect();
        }
        out
    }
}

/// The Markov tree to the given depth (counted in edges from `(1,1,1)`).
///
/// The top of the tree is degenerate: the three mutations of `(1,1,1)`
/// coincide after sorting, as do the two non-undoing mutations of `(2,1,1)`,
/// so those levels have a single child; from `(5, 2, 1)` on, the tree
/// branches in two (the mutation undoing the parent edge is not expanded).
/// Deduplication is by sorted triple, keeping the smallest creating position.
pub fn markov_tree(depth: usize) -> TreeNode {
    fn build(triple: &MarkovTriple, parent: Option<&MarkovTriple>, path: &[u8], left: usize) -> TreeNode {
        let mut children = Vec::new();
        if left > 0 {
            let mut seen: Vec<MarkovTriple> = Vec::new();
            for pos in 0..3 {
                let child = mutate_triple(triple, pos).expect("tree triples stay positive");
                let canon = child.sorted_desc();
                if Some(&canon) == parent || seen.contains(&canon) {
                    continue;
                }
                seen.push(canon.clone());
                let mut cpath = path.to_vec();
                cpath.push(pos as u8 + 1);
                children.push(build(&canon, Some(&triple.sorted_desc()), &cpath, left - 1));
            }
        }
        TreeNode {
            triple: triple.clone(),
            path: path.to_vec(),
            children,
        }
    }
    let root = MarkovTriple::from_ints(1, 1, 1).unwrap();
    build(&root, None, &[], depth)
}

// ---------------------------------------------------------------------------
// Lockstep with the triangle calculus
// ---------------------------------------------------------------------------

/// Result of walking a mutation path on both sides at once.
#[derive(Debug, Clone)]
pub struct GeometricMatch {
    pub triangle: BaseTriangle,
    /// Markov numbers aligned to the triangle's vertex positions.
    pub triple: [BigInt; 3],
    pub weights: [BigInt; 3],
    /// `weights[k] == triple[k]^2` for every vertex `k`.
    pub matches: bool,
}

/// Walks `path` (0-based vertex indices) from the root triangle, mutating the
/// Markov triple at the same positions, and carries the alignment between
/// triple entries and triangle vertices across the counterclockwise
/// re-sorting that mutation performs. Checks the per-vertex weight
/// equality positionally, not just as multisets.
pub fn match_geometric(path: &[usize]) -> Result<GeometricMatch, MarkovError> {
    let mut triangle = root_triangle();
    let mut triple: [BigInt; 3] = std::array::from_fn(|_| BigInt::one());
    for &i in path {
        if i >= 3 {
            return Err(MarkovError::Position(i));
        }
        let new_val = BigInt::from(3) * &triple[(i + 1) % 3] * &triple[(i + 2) % 3] - &triple[i];
        let m = mutate(&triangle, i)?;
        triple = std::array::from_fn(|k| match m.provenance[k] {
            VertexSource::New => new_val.clone(),
            VertexSource::Sheared(j) | VertexSource::Kept(j) => triple[j].clone(),
        });
        triangle = m.triangle;
    }
    let w = weights(&triangle);
    let matches = (0..3).all(|k| &triple[k] * &triple[k] == w[k]);
    Ok(GeometricMatch {
        triangle,
        triple,
        weights: w,
        matches,
    })
}

/// One node of the deduplicated geometric mutation tree: the triangle, the
/// 0-based path that reached it, and the position-aligned Markov triple.
#[derive(Debug, Clone)]
pub struct GeoNode {
    pub path: Vec<usize>,
    pub triangle: BaseTriangle,
    pub triple: [BigInt; 3],
}

/// All nodes of the geometric tree to `depth`, deduplicated exactly like
/// [`markov_tree`]: a child that undoes its parent edge is skipped, and
/// siblings with equal sorted triples are merged (keeping the smallest
/// position). The result is in one-to-one correspondence with the nodes of
/// `markov_tree(depth)`.
pub fn geometric_nodes(depth: usize) -> Result<Vec<GeoNode>, MarkovError> {
    fn sorted(triple: &[BigInt; 3]) -> MarkovTriple {
        MarkovTriple(triple.clone()).sorted_desc()
    }
    fn walk(
        out: &mut Vec<GeoNode>,
        triangle: &BaseTriangle,
        triple: &[BigInt; 3],
        parent: Option<&MarkovTriple>,
        path: &[usize],
        left: usize,
    ) -> Result<(), MarkovError> {
        out.push(GeoNode {
            path: path.to_vec(),
            triangle: triangle.clone(),
            triple: triple.clone(),
        });
        if left == 0 {
            return Ok(());
        }
        let here = sorted(triple);
        let mut seen: Vec<MarkovTriple> = Vec::new();
        for i in 0..3 {
            let new_val =
                BigInt::from(3) * &triple[(i + 1) % 3] * &triple[(i + 2) % 3] - &triple[i];
            let m = mutate(triangle, i)?;
            let child: [BigInt; 3] = std::array::from_fn(|k| match m.provenance[k] {
                VertexSource::New => new_val.clone(),
                VertexSource::Sheared(j) | VertexSource::Kept(j) => triple[j].clone(),
            });
            let canon = sorted(&child);
            if Some(&canon) == parent || seen.contains(&canon) {
                continue;
            }
            seen.push(canon);
            let mut cpath = path.to_vec();
            cpath.push(i);
            walk(out, &m.triangle, &child, Some(&here), &cpath, left - 1)?;
        }
        Ok(())
    }
    let mut out = Vec::new();
    let triple: [BigInt; 3] = std::array::from_fn(|_| BigInt::one());
    walk(&mut out, &root_triangle(), &triple, None, &[], depth)?;
    Ok(out)
}

/// Reads the Markov triple off a triangle's weights (ordered as the
/// vertices are). Errors when a weight is not a perfect square or the root
/// triple does not satisfy the Markov equation — both certify that the
/// triangle is not reachable from the root.
pub fn triple_of_triangle(t: &BaseTriangle) -> Result<MarkovTriple, MarkovError> {
    let w = weights(t);
    let mut roots: Vec<BigInt> = Vec::with_capacity(3);
    for wi in &w {
        let r = wi.sqrt();
        if &(&r * &r) != wi {
            return Err(MarkovError::NotInTree(format!(
                "weight {wi} is not a perfect square"
            )));
        }
        roots.push(r);
    }
    let triple = MarkovTriple([roots[0].clone(), roots[1].clone(), roots[2].clone()]);
    if !triple.is_markov() {
        return Err(MarkovError::NotInTree(format!(
            "weight roots {triple} do not satisfy the Markov equation"
        )));
    }
    Ok(triple)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: i64, b: i64, c: i64) -> MarkovTriple {
        MarkovTriple::from_ints(a, b, c).unwrap()
    }

    #[test]
    fn markov_membership() {
        for (a, b, c) in [(1, 1, 1), (2, 1, 1), (5, 2, 1), (13, 5, 1), (194, 13, 5), (433, 29, 5)] {
            assert!(t(a, b, c).is_markov(), "({a},{b},{c})");
        }
        assert!(!t(2, 2, 1).is_markov());
        assert!(!t(3, 1, 1).is_markov());
        assert!(MarkovTriple::from_ints(0, 1, 1).is_err());
        assert!(MarkovTriple::from_ints(-2, 1, 1).is_err());
    }

    #[test]
    fn triple_mutation_and_involution() {
        let base = t(5, 2, 1);
        assert_eq!(mutate_triple(&base, 0).unwrap(), t(1, 2, 1));
        assert_eq!(mutate_triple(&base, 1).unwrap(), t(5, 13, 1));
        assert_eq!(mutate_triple(&base, 2).unwrap(), t(5, 2, 29));
        for pos in 0..3 {
            let m = mutate_triple(&base, pos).unwrap();
            assert!(m.is_markov());
            assert_eq!(mutate_triple(&m, pos).unwrap(), base);
        }
        assert!(mutate_triple(&base, 3).is_err());
    }

    #[test]
    fn tree_reproduces_the_displayed_levels() {
        let tree = markov_tree(5);
        let levels = tree.levels();
        let lv = |v: Vec<(i64, i64, i64)>| -> Vec<MarkovTriple> {
            v.into_iter().map(|(a, b, c)| t(a, b, c)).collect()
        };
        assert_eq!(levels[0], lv(vec![(1, 1, 1)]));
        assert_eq!(levels[1], lv(vec![(2, 1, 1)]));
        assert_eq!(levels[2], lv(vec![(5, 2, 1)]));
        assert_eq!(levels[3], lv(vec![(13, 5, 1), (29, 5, 2)]));
        assert_eq!(
            levels[4],
            lv(vec![(34, 13, 1), (194, 13, 5), (169, 29, 2), (433, 29, 5)])
        );
        assert_eq!(
            levels[5],
            lv(vec![
                (89, 34, 1),
                (1325, 34, 13),
                (2897, 194, 5),
                (7561, 194, 13),
                (985, 169, 2),
                (14701, 169, 29),
                (6466, 433, 5),
                (37666, 433, 29),
            ])
        );
        // degenerate top, then binary branching
        assert_eq!(tree.children.len(), 1);
        assert_eq!(tree.children[0].children.len(), 1);
        let five21 = &tree.children[0].children[0];
        assert_eq!(five21.children.len(), 2);
        assert!(five21.children.iter().all(|c| c.children.len() == 2));
    }

    #[test]
    fn tree_paths_record_positions() {
        let tree = markov_tree(3);
        let five21 = &tree.children[0].children[0];
        assert_eq!(five21.path, vec![1, 2]);
        let m2952 = five21
            .children
            .iter()
            .find(|c| c.triple == t(29, 5, 2))
            .unwrap();
        assert_eq!(m2952.path, vec![1, 2, 3]);
    }

    #[test]
    fn tree_json_roundtrip() {
        let tree = markov_tree(4);
        let s = serde_json::to_string_pretty(&tree).unwrap();
        let back: TreeNode = serde_json::from_str(&s).unwrap();
        assert_eq!(back, tree);
    }

    #[test]
    fn lockstep_matches_on_paths() {
        for path in [vec![], vec![0], vec![0, 1], vec![2, 2, 0], vec![1, 0, 2, 1]] {
            let m = match_geometric(&path).unwrap();
            assert!(m.matches, "lockstep mismatch on {path:?}: {m:?}");
        }
    }

    #[test]
    fn geometric_tree_mirrors_the_arithmetic_tree() {
        let nodes = geometric_nodes(5).unwrap();
        assert_eq!(nodes.len(), 17);
        // same sorted triples as the arithmetic tree, node for node
        let mut geo: Vec<MarkovTriple> =
            nodes.iter().map(|n| MarkovTriple(n.triple.clone()).sorted_desc()).collect();
        let mut arith = Vec::new();
        markov_tree(5).walk(&mut |n| arith.push(n.triple.clone()));
        geo.sort();
        arith.sort();
        assert_eq!(geo, arith);
        // weights really are the squares, per position
        for n in &nodes {
            let w = weights(&n.triangle);
            for k in 0..3 {
                assert_eq!(w[k], &n.triple[k] * &n.triple[k], "at {:?}", n.path);
            }
        }
    }

    #[test]
    fn triple_readback() {
        let root = root_triangle();
        assert_eq!(triple_of_triangle(&root).unwrap(), t(1, 1, 1));
        let m = mutate(&root, 0).unwrap().triangle;
        assert_eq!(triple_of_triangle(&m).unwrap(), t(1, 1, 2));
        // not in the tree: weights (3, 3, 3)
        let off = BaseTriangle::new(
            [
                lattice_core::Vec2Q::from_ints(1, 0),
                lattice_core::Vec2Q::from_ints(0, 1),
                lattice_core::Vec2Q::from_ints(-1, -1),
            ],
            None,
        )
        .unwrap();
        assert!(matches!(
            triple_of_triangle(&off),
            Err(MarkovError::NotInTree(_))
        ));
    }
}
