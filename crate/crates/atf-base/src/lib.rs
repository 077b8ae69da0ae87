//! Base triangles of the plane and their mutation calculus.
//!
//! A *base triangle* here is a rational triangle containing the origin in its
//! interior, stored with counterclockwise vertices. Mutation at a vertex cuts
//! the triangle along the line through that vertex and the origin and shears
//! one half onto the other side of the cut; the defining data (primitive edge
//! directions, integral edge lengths, vertex weights) transform by exact
//! integer/rational arithmetic throughout.
//!
//! Vertex and edge indexing: edge `i` runs from vertex `i` to vertex `i+1`
//! (mod 3); the weight at vertex `i` is `|q_{i-1} x q_i|` for the primitive
//! edge directions `q`. All indices in this crate are 0-based.

use lattice_core::{
    parse_rat, primitive, rat_to_string, shear_by, LatticeError, Rat, Unimodular, Vec2Q, Vec2Z,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AtfError {
    #[error("vertices are not in counterclockwise order with the origin strictly inside")]
    InvalidTriangle,
    #[error("vertex index {0} out of range (0..3)")]
    VertexIndex(usize),
    #[error("mutation produced a degenerate triangle")]
    DegenerateMutation,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("cannot parse triangle JSON: {0}")]
    Json(String),
}

// ---------------------------------------------------------------------------
// BaseTriangle
// ---------------------------------------------------------------------------

/// Rational triangle with counterclockwise vertices and the origin strictly
/// interior. Construction validates both conditions; every value of this type
/// satisfies them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseTriangle {
    vertices: [Vec2Q; 3],
    /// Optional mutation-path annotation ("2,3,1" style, 1-based), carried
    /// through serialization but ignored by all geometry.
    pub label: Option<String>,
}

impl BaseTriangle {
    /// Validates that `cross(v_i, v_{i+1}) > 0` for all `i`. For three points
    /// this is exactly "counterclockwise and origin strictly interior".
    pub fn new(vertices: [Vec2Q; 3], label: Option<String>) -> Result<Self, AtfError> {
        for i in 0..3 {
            if vertices[i].cross(&vertices[(i + 1) % 3]) <= Rat::zero() {
                return Err(AtfError::InvalidTriangle);
            }
        }
        Ok(BaseTriangle { vertices, label })
    }

    pub fn vertices(&self) -> &[Vec2Q; 3] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vec2Q {
        &self.vertices[i]
    }

    /// Twice the signed area (positive by the orientation invariant).
    pub fn two_area(&self) -> Rat {
        let [a, b, c] = &self.vertices;
        b.sub(a).cross(&c.sub(a))
    }

    /// Vertex set comparison, ignoring order and label.
    pub fn same_vertex_set(&self, other: &BaseTriangle) -> bool {
        let mut a: Vec<_> = self.vertices.iter().collect();
        let mut b: Vec<_> = other.vertices.iter().collect();
        a.sort();
        b.sort();
        a == b
    }

    pub fn from_json_str(s: &str) -> Result<Self, AtfError> {
        serde_json::from_str(s).map_err(|e| AtfError::Json(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        // serde_json cannot fail on this shape
        serde_json::to_string_pretty(self).expect("triangle serialization")
    }
}

impl fmt::Display for BaseTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}]",
            self.vertices[0], self.vertices[1], self.vertices[2]
        )
    }
}

#[derive(Serialize, Deserialize)]
struct TriangleWire {
    vertices: [Vec2Q; 3],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    label: Option<String>,
}

impl Serialize for BaseTriangle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TriangleWire {
            vertices: self.vertices.clone(),
            label: self.label.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BaseTriangle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = TriangleWire::deserialize(d)?;
        BaseTriangle::new(w.vertices, w.label).map_err(D::Error::custom)
    }
}

/// The anchored triangle with vertices (2,-1), (-1,2), (-1,-1).
///
/// Its edges have integral length 3, all weights are 1, and twice its area
/// is 9; the origin sits at the distinguished interior point.
pub fn root_triangle() -> BaseTriangle {
    BaseTriangle::new(
        [
            Vec2Q::from_ints(2, -1),
            Vec2Q::from_ints(-1, 2),
            Vec2Q::from_ints(-1, -1),
        ],
        None,
    )
    .expect("root triangle is valid")
}

// ---------------------------------------------------------------------------
// Edge data, weights, duals
// ---------------------------------------------------------------------------

/// Exact data of one oriented edge `v_i -> v_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeData {
    /// Primitive direction of the edge.
    pub q: Vec2Z,
    /// Integral length: the edge vector is `len * q`.
    pub len: Rat,
    /// Primitive outward normal (clockwise rotation of `q`).
    pub outward_normal: Vec2Z,
}

/// Edge data for all three edges, in edge order.
pub fn edge_data(t: &BaseTriangle) -> [EdgeData; 3] {
    std::array::from_fn(|i| {
        let u = t.vertex((i + 1) % 3).sub(t.vertex(i));
        let q = primitive(&u).expect("triangle edges are nonzero");
        let len = if !q.x.is_zero() {
            &u.x / Rat::from(q.x.clone())
        } else {
            &u.y / Rat::from(q.y.clone())
        };
        debug_assert!(len.is_positive());
        let outward_normal = Vec2Z::new(q.y.clone(), -q.x.clone());
        EdgeData {
            q,
            len,
            outward_normal,
        }
    })
}

/// Vertex weights `w_i = |q_{i-1} x q_i|`, exact integers.
pub fn weights(t: &BaseTriangle) -> [BigInt; 3] {
    let ed = edge_data(t);
    std::array::from_fn(|i| ed[(i + 2) % 3].q.cross(&ed[i].q).abs())
}

/// Primitive direction from the origin through vertex `i`.
pub fn vertex_direction(t: &BaseTriangle, i: usize) -> Result<Vec2Z, AtfError> {
    if i >= 3 {
        return Err(AtfError::VertexIndex(i));
    }
    Ok(primitive(t.vertex(i)).expect("vertices are nonzero"))
}

/// The dual triangle: primitive outward normals of the edges, in edge order.
pub fn dual_triangle(t: &BaseTriangle) -> [Vec2Z; 3] {
    edge_data(t).map(|e| e.outward_normal)
}

// ---------------------------------------------------------------------------
// Mutation
// ---------------------------------------------------------------------------

/// Where an output vertex of a mutation came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexSource {
    /// The fresh vertex on the opposite edge.
    New,
    /// The sheared image of input vertex `i`.
    Sheared(usize),
    /// Input vertex `i`, unchanged.
    Kept(usize),
}

#[derive(Debug, Clone)]
pub struct MutationResult {
    pub triangle: BaseTriangle,
    /// Position of the fresh vertex in `triangle` (0-based).
    pub new_vertex_index: usize,
    /// The shear applied to the half containing the counterclockwise-next
    /// vertex.
    pub shear: Unimodular,
    /// Primitive direction of the mutated vertex; the cut runs along its span.
    pub cut_direction: Vec2Z,
    /// Origin of each output vertex, indexed like `triangle.vertices()`.
    pub provenance: [VertexSource; 3],
}

/// Reorders three points counterclockwise starting from the lexicographically
/// smallest. Returns the order as indices into the input.
fn canonical_order(pts: &[Vec2Q; 3]) -> [usize; 3] {
    let mut idx = [0usize, 1, 2];
    let ab = pts[1].sub(&pts[0]);
    let bc = pts[2].sub(&pts[1]);
    if ab.cross(&bc) < Rat::zero() {
        idx = [2, 1, 0];
    }
    let start = (0..3)
        .min_by(|&a, &b| pts[idx[a]].cmp(&pts[idx[b]]))
        .unwrap();
    [idx[start], idx[(start + 1) % 3], idx[(start + 2) % 3]]
}

/// Mutation at vertex `i`.
///
/// With `vhat = primitive(v_i)`: the new vertex is the intersection of the ray
/// from the origin opposite to `vhat` with the edge `[v_{i+1}, v_{i+2}]`; the
/// shear along `vhat` is applied to the open half-plane `{vhat x p > 0}`
/// (the side of `v_{i+1}`), which sends `v_{i+1}` onto the line through `v_i`
/// and `v_{i+2}`. Output vertices are re-sorted counterclockwise starting from
/// the lexicographically smallest; `new_vertex_index` and `provenance` report
/// where everything landed.
pub fn mutate(t: &BaseTriangle, i: usize) -> Result<MutationResult, AtfError> {
    if i >= 3 {
        return Err(AtfError::VertexIndex(i));
    }
    let vhat = vertex_direction(t, i)?;
    let vhat_q = vhat.to_q();
    let v1 = t.vertex((i + 1) % 3);
    let v2 = t.vertex((i + 2) % 3);
    let c1 = vhat_q.cross(v1);
    let c2 = vhat_q.cross(v2);
    // Both hold for every valid base triangle: v_{i+1} is counterclockwise of
    // the cut, v_{i+2} clockwise.
    debug_assert!(c1.is_positive() && c2.is_negative());
    let tau = &c1 / (&c1 - &c2);
    let v_new = v1.add(&v2.sub(v1).scale(&tau));
    debug_assert!(vhat_q.cross(&v_new).is_zero() && vhat_q.dot(&v_new).is_negative());
    let shear = shear_by(&vhat)?;
    let sheared = shear.apply(v1);

    let raw = [v_new, sheared, v2.clone()];
    let sources = [
        VertexSource::New,
        VertexSource::Sheared((i + 1) % 3),
        VertexSource::Kept((i + 2) % 3),
    ];
    let order = canonical_order(&raw);
    let vertices = std::array::from_fn(|k| raw[order[k]].clone());
    let provenance = std::array::from_fn(|k| sources[order[k]]);
    let new_vertex_index = provenance
        .iter()
        .position(|s| *s == VertexSource::New)
        .unwrap();

    let label = {
        let step = (i + 1).to_string();
        Some(match &t.label {
            Some(p) if !p.is_empty() => format!("{p},{step}"),
            _ => step,
        })
    };
    let triangle =
        BaseTriangle::new(vertices, label).map_err(|_| AtfError::DegenerateMutation)?;
    Ok(MutationResult {
        triangle,
        new_vertex_index,
        shear,
        cut_direction: vhat,
        provenance,
    })
}

/// Applies a sequence of mutations (each index 0-based).
pub fn mutate_path(t: &BaseTriangle, path: &[usize]) -> Result<BaseTriangle, AtfError> {
    let mut cur = t.clone();
    for &i in path {
        cur = mutate(&cur, i)?.triangle;
    }
    Ok(cur)
}

/// Image of a triangle under a unimodular map (vertices re-sorted to the
/// canonical counterclockwise order; the label is dropped).
pub fn transform(t: &BaseTriangle, a: &Unimodular) -> BaseTriangle {
    let raw: [Vec2Q; 3] = std::array::from_fn(|k| a.apply(t.vertex(k)));
    let order = canonical_order(&raw);
    BaseTriangle::new(std::array::from_fn(|k| raw[order[k]].clone()), None)
        .expect("unimodular image of a valid triangle is valid")
}

// ---------------------------------------------------------------------------
// GL(2, Z) equivalence
// ---------------------------------------------------------------------------

/// Searches for `A` in GL(2, Z) with `A {vertices of a} = {vertices of b}`.
///
/// For each of the six vertex correspondences, the 2x2 system sending two
/// source vertices to their targets is solved exactly; integrality, |det| = 1,
/// and the third vertex are then checked.
pub fn gl2z_equivalent(a: &BaseTriangle, b: &BaseTriangle) -> Option<Unimodular> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let [s1, s2, s3] = a.vertices();
    let d = s1.cross(s2); // nonzero: origin is interior
    for perm in PERMS {
        let t1 = b.vertex(perm[0]);
        let t2 = b.vertex(perm[1]);
        let t3 = b.vertex(perm[2]);
        // M [s1 s2] = [t1 t2]  =>  M = [t1 t2] [s1 s2]^{-1}
        // [s1 s2]^{-1} = (1/d) [[ s2.y, -s2.x], [-s1.y, s1.x]]
        let m00 = (&t1.x * &s2.y - &t2.x * &s1.y) / &d;
        let m01 = (-(&t1.x * &s2.x) + &t2.x * &s1.x) / &d;
        let m10 = (&t1.y * &s2.y - &t2.y * &s1.y) / &d;
        let m11 = (-(&t1.y * &s2.x) + &t2.y * &s1.x) / &d;
        if ![&m00, &m01, &m10, &m11]
            .iter()
            .all(|r| r.denom().is_one())
        {
            continue;
        }
        let m = lattice_core::Mat2Z::new(
            m00.numer().clone(),
            m01.numer().clone(),
            m10.numer().clone(),
            m11.numer().clone(),
        );
        if let Ok(u) = Unimodular::new(m) {
            if &u.apply(s3) == t3 {
                debug_assert!(&u.apply(s1) == t1 && &u.apply(s2) == t2);
                return Some(u);
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Invariant report and shear lemma
// ---------------------------------------------------------------------------

/// Exact values of the quantities conserved along mutation paths from the
/// root: twice the area and the length sum are 9, each adjacent product
/// `l_{i-1} l_i w_i` is 9, and `9 w_1 w_2 w_3` is the square of `w_1+w_2+w_3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    #[serde(serialize_with = "ser_rat")]
    pub two_area: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub length_sum: Rat,
    #[serde(serialize_with = "ser_rat_array")]
    pub edge_products: [Rat; 3],
    #[serde(serialize_with = "ser_int_array")]
    pub weights: [BigInt; 3],
    #[serde(serialize_with = "ser_int")]
    pub nine_w_product: BigInt,
    #[serde(serialize_with = "ser_int")]
    pub weight_sum_squared: BigInt,
    /// Integer square root of each weight, when the weight is a perfect square.
    #[serde(serialize_with = "ser_opt_int_array")]
    pub weight_roots: [Option<BigInt>; 3],
}

fn ser_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    rat_to_string(r).serialize(s)
}

fn ser_rat_array<S: Serializer>(r: &[Rat; 3], s: S) -> Result<S::Ok, S::Error> {
    [
        rat_to_string(&r[0]),
        rat_to_string(&r[1]),
        rat_to_string(&r[2]),
    ]
    .serialize(s)
}

fn ser_int<S: Serializer>(i: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    i.to_string().serialize(s)
}

fn ser_int_array<S: Serializer>(i: &[BigInt; 3], s: S) -> Result<S::Ok, S::Error> {
    [i[0].to_string(), i[1].to_string(), i[2].to_string()].serialize(s)
}

fn ser_opt_int_array<S: Serializer>(i: &[Option<BigInt>; 3], s: S) -> Result<S::Ok, S::Error> {
    let strs: [Option<String>; 3] = std::array::from_fn(|k| i[k].as_ref().map(|v| v.to_string()));
    strs.serialize(s)
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn invariant_report(t: &BaseTriangle) -> InvariantReport {
    let ed = edge_data(t);
    let w = weights(t);
    let nine = BigInt::from(9);
    InvariantReport {
        two_area: t.two_area(),
        length_sum: ed.iter().map(|e| e.len.clone()).sum(),
        edge_products: std::array::from_fn(|i| {
            &ed[(i + 2) % 3].len * &ed[i].len * Rat::from(w[i].clone())
        }),
        nine_w_product: &nine * &w[0] * &w[1] * &w[2],
        weight_sum_squared: {
            let s = &w[0] + &w[1] + &w[2];
            &s * &s
        },
        weight_roots: std::array::from_fn(|i| exact_sqrt(&w[i])),
        weights: w,
    }
}

impl InvariantReport {
    /// All identities that hold on mutation-tree triangles.
    pub fn all_hold(&self) -> bool {
        let nine = Rat::from(BigInt::from(9));
        self.two_area == nine
            && self.length_sum == nine
            && self.edge_products.iter().all(|p| *p == nine)
            && self.nine_w_product == self.weight_sum_squared
    }
}

/// Result of checking the shear lemma at one vertex: with `n_i = sqrt(w_i)`,
/// the shear along `vhat_i` maps `q_i` to `q_{i-1}`, and
/// `q_{i-1} - q_i = n_i vhat_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShearLemmaCheck {
    /// `w_i` is a perfect square (it must be, on tree triangles).
    pub weight_is_square: bool,
    /// `sigma_{vhat_i}(q_i) = q_{i-1}`.
    pub maps_edge_to_edge: bool,
    /// `q_{i-1} - q_i = n_i vhat_i`.
    pub difference_formula: bool,
}

impl ShearLemmaCheck {
    pub fn ok(&self) -> bool {
        self.weight_is_square && self.maps_edge_to_edge && self.difference_formula
    }
}

pub fn verify_shear_lemma(t: &BaseTriangle, i: usize) -> Result<ShearLemmaCheck, AtfError> {
    if i >= 3 {
        return Err(AtfError::VertexIndex(i));
    }
    let ed = edge_data(t);
    let w = weights(t);
    let q_prev = &ed[(i + 2) % 3].q;
    let q_i = &ed[i].q;
    let vhat = vertex_direction(t, i)?;
    let shear = shear_by(&vhat)?;
    let maps_edge_to_edge = shear.apply_z(q_i) == *q_prev;
    let (weight_is_square, difference_formula) = match exact_sqrt(&w[i]) {
        Some(n) => {
            let diff = Vec2Z::new(&q_prev.x - &q_i.x, &q_prev.y - &q_i.y);
            let scaled = Vec2Z::new(&n * &vhat.x, &n * &vhat.y);
            (true, diff == scaled)
        }
        None => (false, false),
    };
    Ok(ShearLemmaCheck {
        weight_is_square,
        maps_edge_to_edge,
        difference_formula,
    })
}

/// Convenience used by tests and the CLI: parse a rational pair.
pub fn vec2q_from_strs(x: &str, y: &str) -> Result<Vec2Q, AtfError> {
    Ok(Vec2Q::new(parse_rat(x)?, parse_rat(y)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64, y: i64) -> Vec2Q {
        Vec2Q::from_ints(x, y)
    }

    fn rq(s: &str) -> Rat {
        parse_rat(s).unwrap()
    }

    #[test]
    fn root_is_pinned() {
        let t = root_triangle();
        assert_eq!(t.vertices(), &[q(2, -1), q(-1, 2), q(-1, -1)]);
        assert_eq!(t.two_area(), rq("9"));
    }

    #[test]
    fn root_edges_and_weights() {
        let t = root_triangle();
        let ed = edge_data(&t);
        assert_eq!(ed[0].q, Vec2Z::from_ints(-1, 1));
        assert_eq!(ed[1].q, Vec2Z::from_ints(0, -1));
        assert_eq!(ed[2].q, Vec2Z::from_ints(1, 0));
        assert!(ed.iter().all(|e| e.len == rq("3")));
        assert_eq!(weights(&t), [1, 1, 1].map(BigInt::from));
    }

    #[test]
    fn root_dual_is_pinned() {
        assert_eq!(
            dual_triangle(&root_triangle()),
            [
                Vec2Z::from_ints(1, 1),
                Vec2Z::from_ints(-1, 0),
                Vec2Z::from_ints(0, -1)
            ]
        );
    }

    #[test]
    fn first_mutation_regression() {
        let r = mutate(&root_triangle(), 0).unwrap();
        // canonical order: ccw from the lexicographically smallest vertex
        assert_eq!(
            r.triangle.vertices(),
            &[
                q(-1, -1),
                q(5, -1),
                Vec2Q::new(rq("-1"), rq("1/2")),
            ]
        );
        assert_eq!(r.new_vertex_index, 2);
        assert_eq!(r.cut_direction, Vec2Z::from_ints(2, -1));
        assert_eq!(
            r.shear.matrix(),
            &lattice_core::Mat2Z::from_ints(3, 4, -1, -1)
        );
        assert_eq!(weights(&r.triangle), [1, 1, 4].map(BigInt::from));
        let ed = edge_data(&r.triangle);
        assert_eq!(ed[0].len, rq("6"));
        assert_eq!(ed[1].len, rq("3/2"));
        assert_eq!(ed[2].len, rq("3/2"));
        // the edge leaving the sheared vertex has direction (-4, 1)
        assert_eq!(ed[1].q, Vec2Z::from_ints(-4, 1));
        assert_eq!(r.triangle.label.as_deref(), Some("1"));
    }

    #[test]
    fn mutation_is_involutive_up_to_gl2z() {
        let t = root_triangle();
        let m1 = mutate(&t, 0).unwrap();
        let m2 = mutate(&m1.triangle, m1.new_vertex_index).unwrap();
        // exact vertex set of the undo
        let expect = BaseTriangle::new([q(-7, 2), q(2, -1), q(5, -1)], None).unwrap();
        assert!(m2.triangle.same_vertex_set(&expect));
        let a = gl2z_equivalent(&t, &m2.triangle).expect("undo is equivalent");
        assert!(transform(&t, &a).same_vertex_set(&m2.triangle));
    }

    #[test]
    fn mutate_rejects_bad_index() {
        assert_eq!(
            mutate(&root_triangle(), 3).unwrap_err(),
            AtfError::VertexIndex(3)
        );
    }

    #[test]
    fn dual_of_image_is_image_of_dual() {
        let t = root_triangle();
        let a = shear_by(&Vec2Z::from_ints(2, -1)).unwrap();
        let ta = transform(&t, &a);
        // outward normals transform by the inverse transpose
        let ainv = a.inverse();
        let m = ainv.matrix();
        let mut expected: Vec<Vec2Z> = dual_triangle(&t)
            .iter()
            .map(|n| {
                Vec2Z::new(&m.a * &n.x + &m.c * &n.y, &m.b * &n.x + &m.d * &n.y)
            })
            .collect();
        let mut got: Vec<Vec2Z> = dual_triangle(&ta).to_vec();
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn equivalence_finds_symmetry_and_rejects_distinct() {
        let t = root_triangle();
        let sym = gl2z_equivalent(&t, &t).expect("self-equivalent");
        assert!(transform(&t, &sym).same_vertex_set(&t));

        let swap = Unimodular::new(lattice_core::Mat2Z::from_ints(0, 1, 1, 0)).unwrap();
        let img = transform(&t, &swap);
        assert!(gl2z_equivalent(&t, &img).is_some());

        let d211 = mutate(&t, 0).unwrap().triangle;
        assert!(gl2z_equivalent(&t, &d211).is_none());
    }

    #[test]
    fn invariants_and_shear_lemma_on_small_tree() {
        let t = root_triangle();
        for path in [
            vec![],
            vec![0],
            vec![1],
            vec![2],
            vec![0, 1],
            vec![2, 0, 1],
            vec![1, 1, 1],
        ] {
            let cur = mutate_path(&t, &path).unwrap();
            let rep = invariant_report(&cur);
            assert!(rep.all_hold(), "invariants fail on path {path:?}: {rep:?}");
            for i in 0..3 {
                assert!(
                    verify_shear_lemma(&cur, i).unwrap().ok(),
                    "shear lemma fails at vertex {i} on path {path:?}"
                );
            }
        }
    }

    #[test]
    fn rejects_invalid_triangles() {
        // clockwise
        assert!(BaseTriangle::new([q(-1, -1), q(-1, 2), q(2, -1)], None).is_err());
        // origin on an edge
        assert!(BaseTriangle::new([q(1, 0), q(-1, 0), q(0, 1)], None).is_err());
        // origin outside
        assert!(BaseTriangle::new([q(1, 1), q(2, 1), q(1, 2)], None).is_err());
        // degenerate
        assert!(BaseTriangle::new([q(1, 0), q(2, 0), q(3, 0)], None).is_err());
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let t = mutate(&root_triangle(), 0).unwrap().triangle;
        let s = t.to_json_string();
        let back = BaseTriangle::from_json_str(&s).unwrap();
        assert_eq!(back, t);

        let bad = r#"{"vertices": [["1","0"],["0","1"],["1","1"]]}"#;
        assert!(BaseTriangle::from_json_str(bad).is_err());
        assert!(BaseTriangle::from_json_str("not json").is_err());
        assert!(BaseTriangle::from_json_str(r#"{"vertices": [["1","1/0"],["0","1"],["-1","-1"]]}"#).is_err());
    }
}
