//! Programmatic peripheral curves: at the all-regular reference structure,
//! the dual-graph loops of each cusp link develop to translations; a
//! reduced basis of the translation lattice, with the corresponding loop
//! words carried along, yields a meridian/longitude pair.

use super::{crossings_to_steps, reverse_crossings, CuspTriangle, TriError, Triangulation};
use crate::cusps::develop::{place_across, root_positions};
use crate::numerics::{omega, C};
use std::collections::{HashMap, VecDeque};

type Crossing = (usize, usize, usize);

/// Develop along a root-based crossing loop at parameters `z`; returns
/// `(scale, translation)` of the holonomy.
fn loop_holonomy(tri: &Triangulation, z: &[C], root: CuspTriangle, crossings: &[Crossing]) -> (C, C) {
    let start = root_positions(z, root);
    let mut current = root;
    let mut pos = start;
    for &(t, v, f) in crossings {
        debug_assert_eq!((t, v), (current.tet, current.vertex));
        let (next, npos) = place_across(tri, z, current, &pos, f);
        current = next;
        pos = npos;
    }
    debug_assert_eq!(current, root);
    let [a, b, _] = super::ccw_corners(root.vertex);
    let scale = (pos[b] - pos[a]) / (start[b] - start[a]);
    (scale, pos[a] - start[a] * scale)
}

/// Remove immediate backtracks (a crossing followed by its partner). The
/// basepoint is preserved, so root-based loops stay root-based and their
/// holonomy translations stay directly comparable.
fn simplify(tri: &Triangulation, mut c: Vec<Crossing>) -> Vec<Crossing> {
    loop {
        let mut removed = false;
        let mut k = 0;
        while k + 1 < c.len() {
            if tri.side_partner(c[k].0, c[k].1, c[k].2) == c[k + 1] {
                c.drain(k..k + 2);
                removed = true;
                k = k.saturating_sub(1);
            } else {
                k += 1;
            }
        }
        if !removed {
            return c;
        }
    }
}

/// Install meridian and longitude paths on every cusp. Requires the
/// all-regular reference `z_i = e^{iπ/3}` to be complete (every dual loop a
/// translation); this holds for the census entries this is used to build.
pub(crate) fn install_peripheral(tri: &mut Triangulation) -> Result<(), TriError> {
    let z = vec![omega(); tri.n_tet];
    for cusp in 0..tri.cusps.len() {
        let (meridian, longitude) = peripheral_for_cusp(tri, &z, cusp)?;
        tri.cusps[cusp].meridian = meridian;
        tri.cusps[cusp].longitude = longitude;
    }
    tri.validate_peripheral()
}

fn peripheral_for_cusp(
    tri: &Triangulation,
    z: &[C],
    cusp: usize,
) -> Result<(super::CuspPath, super::CuspPath), TriError> {
    let corners = &tri.cusps[cusp].corners;
    let root = CuspTriangle { tet: corners[0].0, vertex: corners[0].1 };

    // Breadth-first spanning tree of the dual graph; `back[t]` is the
    // crossing sequence from the root to triangle t along tree edges.
    let mut back: HashMap<(usize, usize), Vec<Crossing>> = HashMap::new();
    back.insert((root.tet, root.vertex), Vec::new());
    let mut queue = VecDeque::from([root]);
    let mut non_tree: Vec<Crossing> = Vec::new();
    while let Some(current) = queue.pop_front() {
        for face in 0..4 {
            if face == current.vertex {
                continue;
            }
            let crossing = (current.tet, current.vertex, face);
            let (jt, jv, _) = tri.side_partner(current.tet, current.vertex, face);
            if back.contains_key(&(jt, jv)) {
                non_tree.push(crossing);
            } else {
                let mut path = back[&(current.tet, current.vertex)].clone();
                path.push(crossing);
                back.insert((jt, jv), path);
                queue.push_back(CuspTriangle { tet: jt, vertex: jv });
            }
        }
    }

    // One root-based loop per non-tree dual edge.
    let mut generators: Vec<(C, Vec<Crossing>)> = Vec::new();
    for crossing in non_tree {
        let (t, v, _) = crossing;
        let (jt, jv, _) = tri.side_partner(crossing.0, crossing.1, crossing.2);
        let mut word = back[&(t, v)].clone();
        word.push(crossing);
        word.extend(reverse_crossings(tri, &back[&(jt, jv)]));
        let word = simplify(tri, word);
        if word.is_empty() {
            continue;
        }
        let (scale, trans) = loop_holonomy(tri, z, root, &word);
        if (scale - C::new(1.0, 0.0)).norm() > 1e-9 {
            return Err(TriError::Inconsistent(format!(
                "cusp {cusp}: reference structure is not complete (loop scale {scale})"
            )));
        }
        if trans.norm() > 1e-9 {
            generators.push((trans, word));
        }
    }

    // Lattice reduction with word tracking: repeatedly shorten one
    // generator by an integer multiple of another; drop null vectors.
    let scale0 = generators.iter().map(|(t, _)| t.norm()).fold(0.0, f64::max);
    let mut gens = generators;
    loop {
        gens.sort_by(|a, b| a.0.norm().partial_cmp(&b.0.norm()).expect("finite norms"));
        let mut changed = false;
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                if i == j {
                    continue;
                }
                let (vi, vj) = (gens[i].0, gens[j].0);
                if vi.norm() < 1e-9 * scale0 {
                    continue;
                }
                let k = ((vj * vi.conj()).re / vi.norm_sqr()).round();
                if k != 0.0 && (vj - vi * k).norm() < vj.norm() * (1.0 - 1e-12) {
                    let (wi, base) = {
                        let wi = gens[i].1.clone();
                        (wi, gens[j].1.clone())
                    };
                    let mut word = base;
                    let steps = k.abs() as usize;
                    for _ in 0..steps {
                        if k > 0.0 {
                            word.extend(reverse_crossings(tri, &wi));
                        } else {
                            word.extend(wi.iter().copied());
                        }
                    }
                    gens[j] = (vj - vi * k, simplify(tri, word));
                    changed = true;
                }
            }
        }
        gens.retain(|(t, _)| t.norm() > 1e-9 * scale0.max(1e-9));
        if !changed {
            break;
        }
    }
    if gens.len() < 2 {
        return Err(TriError::Inconsistent(format!(
            "cusp {cusp}: peripheral loops span a rank-{} lattice",
            gens.len()
        )));
    }
    gens.sort_by(|a, b| a.0.norm().partial_cmp(&b.0.norm()).expect("finite norms"));
    if gens.len() > 2 {
        // After full reduction any further generators are lattice
        // duplicates of the basis; verify and discard.
        let (b1, b2) = (gens[0].0, gens[1].0);
        let det = b1.re * b2.im - b1.im * b2.re;
        for (v, _) in gens.iter().skip(2) {
            let x = (v.re * b2.im - v.im * b2.re) / det;
            let y = (b1.re * v.im - b1.im * v.re) / det;
            if (x - x.round()).abs() > 1e-6 || (y - y.round()).abs() > 1e-6 {
                return Err(TriError::Inconsistent(format!(
                    "cusp {cusp}: translation lattice failed to reduce"
                )));
            }
        }
        gens.truncate(2);
    }
    let (tm, wm) = gens[0].clone();
    let (tl, wl) = gens[1].clone();
    // Orient the basis so the longitude/meridian ratio is in the upper
    // half-plane.
    let wl = if (tl / tm).im < 0.0 { reverse_crossings(tri, &wl) } else { wl };
    // Rebase words so each starts at its own first crossing's triangle.
    let meridian_root = CuspTriangle { tet: wm[0].0, vertex: wm[0].1 };
    let longitude_root = CuspTriangle { tet: wl[0].0, vertex: wl[0].1 };
    let meridian = crossings_to_steps(tri, meridian_root, &wm)?;
    let longitude = crossings_to_steps(tri, longitude_root, &wl)?;
    Ok((meridian, longitude))
}
