//! Combinatorial ideal triangulations: tetrahedra glued along faces, the
//! derived edge and cusp classes, induced cusp-link triangulations, and
//! peripheral curves as closed paths in the dual 1-skeleton of each link.

mod census;
mod format;
mod peripheral;

#[doc(hidden)]
pub use census::{census, census_names};
pub use format::{parse_triangulation, serialize_triangulation};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TriError {
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("gluing of tet {tet} face {face} is not involutive")]
    NotInvolutive { tet: usize, face: usize },
    #[error("tet {tet} face {face} is not glued")]
    UngluedFace { tet: usize, face: usize },
    #[error("tet {tet} face {face} is glued to itself")]
    SelfGluedFace { tet: usize, face: usize },
    #[error("gluing of tet {tet} face {face} is orientation-incompatible (even permutation)")]
    NotOrientable { tet: usize, face: usize },
    #[error("link of cusp {cusp} is not a torus (Euler characteristic {chi})")]
    NonTorusLink { cusp: usize, chi: i64 },
    #[error("peripheral path on cusp {cusp} does not close up: {message}")]
    OpenPath { cusp: usize, message: String },
    #[error("meridian and longitude of cusp {cusp} have intersection number {number}, not ±1")]
    BadIntersection { cusp: usize, number: i64 },
    #[error("declared {what} disagree with the derived ones")]
    DeclarationMismatch { what: String },
    #[error("unknown census entry {0}; available: {1}")]
    UnknownCensus(String, String),
    #[error("inconsistent structure: {0}")]
    Inconsistent(String),
}

/// A permutation of {0,1,2,3}, mapping `k` to `0[k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Perm4(pub [usize; 4]);

impl Perm4 {
    pub fn identity() -> Perm4 {
        Perm4([0, 1, 2, 3])
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = [false; 4];
        for &v in &self.0 {
            if v > 3 || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn inverse(&self) -> Perm4 {
        let mut inv = [0; 4];
        for k in 0..4 {
            inv[self.0[k]] = k;
        }
        Perm4(inv)
    }

    /// `self` after `other`: `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        let mut out = [0; 4];
        for k in 0..4 {
            out[k] = self.0[other.0[k]];
        }
        Perm4(out)
    }

    pub fn is_even(&self) -> bool {
        let mut inv = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 0
    }
}

/// Target of a face gluing: `(tet, face)` plus the vertex bijection carrying
/// vertex `k` of the source tet to vertex `perm[k]` of the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gluing {
    pub tet: usize,
    pub face: usize,
    pub perm: Perm4,
}

/// One small triangle of a cusp link, cut from the corner of `tet` at
/// `vertex`. Its three corners are indexed by the other three vertices; its
/// side "at face f" is the side cut from face `f` of the tetrahedron,
/// opposite the corner at `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CuspTriangle {
    pub tet: usize,
    pub vertex: usize,
}

/// One step of a dual path through a cusp link: the triangle traversed, the
/// side entered through, and the side exited through (sides named by faces).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathStep {
    pub triangle: CuspTriangle,
    pub entry: usize,
    pub exit: usize,
}

/// A closed path in the dual 1-skeleton of a cusp link.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CuspPath {
    pub steps: Vec<PathStep>,
}

#[derive(Debug, Clone)]
pub struct Cusp {
    pub label: String,
    /// The tet corners `(tet, vertex)` on this cusp, sorted.
    pub corners: Vec<(usize, usize)>,
    pub meridian: CuspPath,
    pub longitude: CuspPath,
}

/// An ideal triangulation, fully validated on construction: gluings form an
/// involution with all faces glued once and odd vertex bijections
/// (orientability), every vertex link is a torus, and each cusp carries a
/// closed meridian/longitude pair of intersection number ±1.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub name: String,
    pub n_tet: usize,
    /// `gluings[tet][face]`.
    pub gluings: Vec<[Gluing; 4]>,
    /// Partition of the tet edges `(tet, a, b)` with `a < b` into classes.
    pub edge_classes: Vec<Vec<(usize, usize, usize)>>,
    pub cusps: Vec<Cusp>,
}

/// Index of the simplex-parameter triple carried by the tet edge `{a, b}`:
/// 0 for `z` (edges 01, 23), 1 for `1/(1-z)` (02, 13), 2 for `(z-1)/z`
/// (03, 12). Opposite edges carry the same parameter.
pub fn edge_param_index(a: usize, b: usize) -> usize {
    match if a < b { (a, b) } else { (b, a) } {
        (0, 1) | (2, 3) => 0,
        (0, 2) | (1, 3) => 1,
        (0, 3) | (1, 2) => 2,
        _ => unreachable!("not a tet edge"),
    }
}

/// The three corners of the link triangle at `vertex`, in counterclockwise
/// order as seen from the vertex (so that `(vertex, a, b, c)` is an even
/// permutation of 0..4). With this order the corner parameters cycle
/// through `z, 1/(1-z), (z-1)/z` up to rotation.
pub fn ccw_corners(vertex: usize) -> [usize; 3] {
    let mut others = [0usize; 3];
    let mut k = 0;
    for w in 0..4 {
        if w != vertex {
            others[k] = w;
            k += 1;
        }
    }
    let p = Perm4([vertex, others[0], others[1], others[2]]);
    if !p.is_even() {
        others.swap(1, 2);
    }
    others
}

/// Parameter index (see [`edge_param_index`]) of the corner of link
/// triangle `(tet, vertex)` at corner `w`: the edge through `vertex` and `w`.
pub fn corner_param_index(vertex: usize, w: usize) -> usize {
    edge_param_index(vertex, w)
}

impl Triangulation {
    /// Validate raw gluing data and derive edge classes and cusps. Cusps are
    /// labeled `cusp0`, `cusp1`, ... in order of their smallest corner;
    /// peripheral curves start empty and are installed by the caller (the
    /// parser or the census builders) before `validate_peripheral`.
    pub fn from_gluings(
        name: &str,
        n_tet: usize,
        gluings: Vec<[Gluing; 4]>,
    ) -> Result<Triangulation, TriError> {
        if gluings.len() != n_tet {
            return Err(TriError::Inconsistent(format!(
                "{} gluing rows for {n_tet} tetrahedra",
                gluings.len()
            )));
        }
        for (t, row) in gluings.iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                if g.tet >= n_tet || g.face > 3 || !g.perm.is_valid() {
                    return Err(TriError::Inconsistent(format!(
                        "gluing of tet {t} face {f} is out of range"
                    )));
                }
                if g.perm.apply(f) != g.face {
                    return Err(TriError::Inconsistent(format!(
                        "gluing of tet {t} face {f}: permutation does not carry face {f} to face {}",
                        g.face
                    )));
                }
                if (g.tet, g.face) == (t, f) {
                    return Err(TriError::SelfGluedFace { tet: t, face: f });
                }
                let back = &gluings[g.tet][g.face];
                if back.tet != t || back.face != f || back.perm != g.perm.inverse() {
                    return Err(TriError::NotInvolutive { tet: t, face: f });
                }
                if g.perm.is_even() {
                    return Err(TriError::NotOrientable { tet: t, face: f });
                }
            }
        }

        // Edge classes: orbits of tet edges under the face identifications.
        let edge_id = |t: usize, a: usize, b: usize| t * 6 + edge_slot(a, b);
        let mut uf = UnionFind::new(n_tet * 6);
        for (t, row) in gluings.iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                for a in 0..4 {
                    for b in a + 1..4 {
                        if a == f || b == f {
                            continue;
                        }
                        uf.union(edge_id(t, a, b), edge_id(g.tet, g.perm.apply(a), g.perm.apply(b)));
                    }
                }
            }
        }
        let mut classes: Vec<Vec<(usize, usize, usize)>> = Vec::new();
        let mut class_of = vec![usize::MAX; n_tet * 6];
        for t in 0..n_tet {
            for a in 0..4 {
                for b in a + 1..4 {
                    let root = uf.find(edge_id(t, a, b));
                    if class_of[root] == usize::MAX {
                        class_of[root] = classes.len();
                        classes.push(Vec::new());
                    }
                    classes[class_of[root]].push((t, a, b));
                }
            }
        }

        // Cusps: orbits of tet corners.
        let mut cf = UnionFind::new(n_tet * 4);
        for (t, row) in gluings.iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                for v in 0..4 {
                    if v != f {
                        cf.union(t * 4 + v, g.tet * 4 + g.perm.apply(v));
                    }
                }
            }
        }
        let mut cusps: Vec<Cusp> = Vec::new();
        let mut cusp_of_root: Vec<usize> = vec![usize::MAX; n_tet * 4];
        for t in 0..n_tet {
            for v in 0..4 {
                let root = cf.find(t * 4 + v);
                if cusp_of_root[root] == usize::MAX {
                    cusp_of_root[root] = cusps.len();
                    cusps.push(Cusp {
                        label: format!("cusp{}", cusps.len()),
                        corners: Vec::new(),
                        meridian: CuspPath::default(),
                        longitude: CuspPath::default(),
                    });
                }
                cusps[cusp_of_root[root]].corners.push((t, v));
            }
        }

        let tri = Triangulation { name: name.to_string(), n_tet, gluings, edge_classes: classes, cusps };

        // Torus links: V - E + F = 0 with F the corner count, E = 3F/2, and
        // V the orbit count of link corners.
        for c in 0..tri.cusps.len() {
            let chi = tri.link_euler_characteristic(c);
            if chi != 0 {
                return Err(TriError::NonTorusLink { cusp: c, chi });
            }
        }
        Ok(tri)
    }

    /// The glued image of the link-triangle side `(tet, vertex, face)`.
    pub fn side_partner(&self, tet: usize, vertex: usize, face: usize) -> (usize, usize, usize) {
        let g = &self.gluings[tet][face];
        (g.tet, g.perm.apply(vertex), g.perm.apply(face))
    }

    pub fn cusp_of_corner(&self, tet: usize, vertex: usize) -> usize {
        self.cusps
            .iter()
            .position(|c| c.corners.binary_search(&(tet, vertex)).is_ok())
            .expect("corner belongs to some cusp")
    }

    pub fn cusp_index(&self, label: &str) -> Option<usize> {
        self.cusps.iter().position(|c| c.label == label)
    }

    /// Induced triangulation of the link of `cusp`: its triangles and the
    /// pairing of their sides.
    pub fn cusp_link(
        &self,
        cusp: usize,
    ) -> (Vec<CuspTriangle>, Vec<((usize, usize, usize), (usize, usize, usize))>) {
        let triangles: Vec<CuspTriangle> = self.cusps[cusp]
            .corners
            .iter()
            .map(|&(tet, vertex)| CuspTriangle { tet, vertex })
            .collect();
        let mut adjacency = Vec::new();
        for &CuspTriangle { tet, vertex } in &triangles {
            for face in 0..4 {
                if face == vertex {
                    continue;
                }
                let side = (tet, vertex, face);
                let partner = self.side_partner(tet, vertex, face);
                if side < partner {
                    adjacency.push((side, partner));
                }
            }
        }
        (triangles, adjacency)
    }

    fn link_euler_characteristic(&self, cusp: usize) -> i64 {
        let corners = &self.cusps[cusp].corners;
        let f = corners.len() as i64;
        // Link vertices: orbits of link-triangle corners (tet, vertex, w)
        // under the side identifications.
        let idx = |t: usize, v: usize, w: usize| (t * 4 + v) * 4 + w;
        let mut uf = UnionFind::new(self.n_tet * 16);
        for &(t, v) in corners {
            for w in 0..4 {
                if w == v {
                    continue;
                }
                for face in 0..4 {
                    if face == v || face == w {
                        continue;
                    }
                    let g = &self.gluings[t][face];
                    uf.union(idx(t, v, w), idx(g.tet, g.perm.apply(v), g.perm.apply(w)));
                }
            }
        }
        let mut roots = std::collections::HashSet::new();
        for &(t, v) in corners {
            for w in 0..4 {
                if w != v {
                    roots.insert(uf.find(idx(t, v, w)));
                }
            }
        }
        let v_count = roots.len() as i64;
        // Each side is shared by exactly two triangle-side slots.
        let e_count = 3 * f / 2;
        v_count - e_count + f
    }

    /// Check that a path is combinatorially closed on the given cusp.
    pub fn validate_path(&self, cusp: usize, path: &CuspPath) -> Result<(), TriError> {
        if path.steps.is_empty() {
            return Err(TriError::OpenPath { cusp, message: "empty path".into() });
        }
        for (k, step) in path.steps.iter().enumerate() {
            let CuspTriangle { tet, vertex } = step.triangle;
            if self.cusp_of_corner(tet, vertex) != cusp {
                return Err(TriError::OpenPath {
                    cusp,
                    message: format!("step {k} lies on a different cusp"),
                });
            }
            if step.entry == vertex || step.exit == vertex || step.entry > 3 || step.exit > 3 {
                return Err(TriError::OpenPath {
                    cusp,
                    message: format!("step {k} uses an invalid side"),
                });
            }
            let next = &path.steps[(k + 1) % path.steps.len()];
            let (jt, jv, jf) = self.side_partner(tet, vertex, step.exit);
            if (jt, jv) != (next.triangle.tet, next.triangle.vertex) || jf != next.entry {
                return Err(TriError::OpenPath {
                    cusp,
                    message: format!("exit of step {k} does not match entry of the next step"),
                });
            }
        }
        Ok(())
    }

    /// Validate the stored peripheral curves of every cusp: closure and
    /// algebraic intersection number ±1.
    pub fn validate_peripheral(&self) -> Result<(), TriError> {
        for c in 0..self.cusps.len() {
            self.validate_path(c, &self.cusps[c].meridian)?;
            self.validate_path(c, &self.cusps[c].longitude)?;
            let n = self.intersection_number(c);
            if n.abs() != 1 {
                return Err(TriError::BadIntersection { cusp: c, number: n });
            }
        }
        Ok(())
    }

    /// Algebraic intersection number of the meridian and longitude of
    /// `cusp`, computed by placing both curves as generic arc systems in the
    /// link triangles and counting signed segment crossings. Any consistent
    /// generic placement computes the homological pairing, so crossing
    /// points along each side are ordered arbitrarily but consistently
    /// across the side's two appearances.
    pub fn intersection_number(&self, cusp: usize) -> i64 {
        use std::collections::HashMap;

        let m = &self.cusps[cusp].meridian;
        let l = &self.cusps[cusp].longitude;
        // One crossing point per (path, step boundary); crossing k of a path
        // sits on the exit side of step k (= entry side of step k+1).
        // Parameters are assigned per unordered side class, in the frame of
        // the lexicographically smaller directed side.
        #[derive(Clone, Copy)]
        struct Crossing {
            side_rep: (usize, usize, usize),
            u: f64,
        }
        let mut per_side: HashMap<(usize, usize, usize), usize> = HashMap::new();
        let mut build = |path: &CuspPath, out: &mut Vec<Crossing>| {
            for step in &path.steps {
                let side = (step.triangle.tet, step.triangle.vertex, step.exit);
                let partner = self.side_partner(side.0, side.1, side.2);
                let rep = side.min(partner);
                let count = per_side.entry(rep).or_insert(0);
                *count += 1;
                out.push(Crossing { side_rep: rep, u: *count as f64 });
            }
        };
        let mut mc = Vec::new();
        let mut lc = Vec::new();
        build(m, &mut mc);
        build(l, &mut lc);
        let totals = per_side;
        let param = |cr: &Crossing| cr.u / (totals[&cr.side_rep] as f64 + 1.0);

        // Position of a crossing inside a given triangle occurrence of its
        // side, in that triangle's abstract coordinates.
        let corner_pos = |vertex: usize, w: usize| -> (f64, f64) {
            let ccw = ccw_corners(vertex);
            let k = ccw.iter().position(|&x| x == w).expect("corner of this triangle");
            [(0.0, 0.0), (1.0, 0.0), (0.5, 0.8660254037844386)][k]
        };
        let point_in = |cr: &Crossing, tet: usize, vertex: usize, face: usize| -> (f64, f64) {
            // Sorted corners of the representative side and of this side.
            let sorted = |v: usize, f: usize| {
                let mut ws: Vec<usize> = (0..4).filter(|&w| w != v && w != f).collect();
                ws.sort_unstable();
                (ws[0], ws[1])
            };
            let (r1, _r2) = sorted(cr.side_rep.1, cr.side_rep.2);
            let mut u = param(cr);
            if (tet, vertex, face) != cr.side_rep {
                // This is the partner occurrence; align via the gluing perm.
                let g = &self.gluings[cr.side_rep.0][cr.side_rep.2];
                debug_assert_eq!((g.tet, g.perm.apply(cr.side_rep.1), g.perm.apply(cr.side_rep.2)), (tet, vertex, face));
                let (h1, _h2) = sorted(vertex, face);
                if g.perm.apply(r1) != h1 {
                    u = 1.0 - u;
                }
            }
            let (s1, s2) = sorted(vertex, face);
            let p1 = corner_pos(vertex, s1);
            let p2 = corner_pos(vertex, s2);
            (p1.0 * (1.0 - u) + p2.0 * u, p1.1 * (1.0 - u) + p2.1 * u)
        };

        // Transits: path step k runs inside its triangle from crossing k-1
        // (entered) to crossing k (exited).
        let transits = |path: &CuspPath, crs: &[Crossing]| -> Vec<(CuspTriangle, (f64, f64), (f64, f64))> {
            let n = path.steps.len();
            (0..n)
                .map(|k| {
                    let step = &path.steps[k];
                    let t = step.triangle;
                    let a = point_in(&crs[(k + n - 1) % n], t.tet, t.vertex, step.entry);
                    let b = point_in(&crs[k], t.tet, t.vertex, step.exit);
                    (t, a, b)
                })
                .collect()
        };
        let mt = transits(m, &mc);
        let lt = transits(l, &lc);

        let orient = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| -> f64 {
            (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
        };
        let mut total = 0i64;
        for (t1, p1, q1) in &mt {
            for (t2, p2, q2) in &lt {
                if t1 != t2 {
                    continue;
                }
                let d1 = orient(*p1, *q1, *p2) * orient(*p1, *q1, *q2);
                let d2 = orient(*p2, *q2, *p1) * orient(*p2, *q2, *q1);
                if d1 < 0.0 && d2 < 0.0 {
                    // Sign: +1 when the longitude crosses the meridian from
                    // its right to its left.
                    total += if orient(*p1, *q1, *q2) > 0.0 { 1 } else { -1 };
                }
            }
        }
        total
    }
}

fn edge_slot(a: usize, b: usize) -> usize {
    match if a < b { (a, b) } else { (b, a) } {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => unreachable!("not a tet edge"),
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Crossing-sequence view of closed dual paths: a loop based at `root` is
/// the list of directed sides crossed in order, ending back at `root`.
/// This form composes by concatenation; [`crossings_to_steps`] converts to
/// the step form stored in [`CuspPath`].
pub(crate) fn crossings_to_steps(
    tri: &Triangulation,
    root: CuspTriangle,
    crossings: &[(usize, usize, usize)],
) -> Result<CuspPath, TriError> {
    let cusp = tri.cusp_of_corner(root.tet, root.vertex);
    let mut steps = Vec::with_capacity(crossings.len());
    let mut current = root;
    for (k, &(t, v, f)) in crossings.iter().enumerate() {
        if (t, v) != (current.tet, current.vertex) {
            return Err(TriError::OpenPath {
                cusp,
                message: format!("crossing {k} does not start at the current triangle"),
            });
        }
        let prev = if k == 0 { crossings[crossings.len() - 1] } else { crossings[k - 1] };
        let (_, _, entry) = tri.side_partner(prev.0, prev.1, prev.2);
        steps.push(PathStep { triangle: current, entry, exit: f });
        let (nt, nv, _) = tri.side_partner(t, v, f);
        current = CuspTriangle { tet: nt, vertex: nv };
    }
    if (current.tet, current.vertex) != (root.tet, root.vertex) {
        return Err(TriError::OpenPath { cusp, message: "crossing sequence does not return to the root".into() });
    }
    Ok(CuspPath { steps })
}

/// Reverse a root-based crossing loop: cross the same sides backwards, each
/// from its other occurrence.
pub(crate) fn reverse_crossings(
    tri: &Triangulation,
    crossings: &[(usize, usize, usize)],
) -> Vec<(usize, usize, usize)> {
    crossings.iter().rev().map(|&(t, v, f)| tri.side_partner(t, v, f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_algebra() {
        let p = Perm4([1, 2, 3, 0]);
        assert!(p.is_valid());
        assert!(!p.is_even());
        assert_eq!(p.compose(&p.inverse()), Perm4::identity());
        assert_eq!(p.inverse().apply(p.apply(2)), 2);
        assert!(Perm4([0, 1, 2, 3]).is_even());
        assert!(!Perm4([0, 1, 2, 2]).is_valid());
    }

    #[test]
    fn edge_params_pair_opposite_edges() {
        assert_eq!(edge_param_index(0, 1), edge_param_index(2, 3));
        assert_eq!(edge_param_index(0, 2), edge_param_index(1, 3));
        assert_eq!(edge_param_index(0, 3), edge_param_index(1, 2));
        let all: Vec<usize> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
            .iter()
            .map(|&(a, b)| edge_param_index(a, b))
            .collect();
        assert_eq!(all.iter().filter(|&&k| k == 0).count(), 2);
        assert_eq!(all.iter().filter(|&&k| k == 1).count(), 2);
        assert_eq!(all.iter().filter(|&&k| k == 2).count(), 2);
    }

    #[test]
    fn ccw_corner_orders_are_even() {
        for v in 0..4 {
            let [a, b, c] = ccw_corners(v);
            assert!(Perm4([v, a, b, c]).is_even());
            // Corner parameters cycle z, z', z'' up to rotation.
            let params = [
                corner_param_index(v, a),
                corner_param_index(v, b),
                corner_param_index(v, c),
            ];
            let start = params[0];
            assert_eq!(params[1], (start + 1) % 3, "vertex {v}: {params:?}");
            assert_eq!(params[2], (start + 2) % 3, "vertex {v}: {params:?}");
        }
    }

    #[test]
    fn bad_gluings_rejected() {
        // A single tet glued to itself face 0 -> face 0 is rejected outright.
        let p = Perm4([0, 2, 1, 3]);
        let row = [
            Gluing { tet: 0, face: 0, perm: p },
            Gluing { tet: 0, face: 1, perm: Perm4::identity() },
            Gluing { tet: 0, face: 2, perm: Perm4::identity() },
            Gluing { tet: 0, face: 3, perm: Perm4::identity() },
        ];
        assert!(Triangulation::from_gluings("bad", 1, vec![row]).is_err());
    }
}
