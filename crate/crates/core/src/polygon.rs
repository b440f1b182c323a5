//! Closed surfaces glued from a regular polygon, and rotations of them.
//!
//! The polygon has edges `0..m`, edge `e` running from corner `e` to corner
//! `e + 1` in the direction of positive rotation. The complex is subdivided
//! by coning from the barycenter `c` and splitting each edge at its
//! midpoint `w_e`, giving the triangles
//!
//! ```text
//! T(e, 0) = (c, v_e, w_e)      T(e, 1) = (c, w_e, v_{e+1})
//! ```
//!
//! all positively oriented. Gluing edge `e` to edge `p(e)` with reversed
//! orientation identifies `v_e ~ v_{p(e)+1}`, `w_e ~ w_{p(e)}` and the first
//! half of `e` with the second half of `p(e)`.
//!
//! A rotation by `step` edges is simplicial on this complex whenever the
//! pairing is equivariant. The valency of a multiple orbit is read from the
//! link of one of its points: the isotropy generator shifts the cyclic list
//! of link corners by `s` of `W` places, which is a rotation by `2πν/λ` with
//! `ν = s / (W/λ)`. The link is traversed in the positive direction, the one
//! in which the rotation turns the barycenter, so the barycenter of the
//! basic rotation always gets `ν = 1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::gcd;
use crate::family::Family;
use crate::valency::{TotalValency, Valency, ValencyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("polygon needs an even number of edges, got {0}")]
    OddEdgeCount(usize),
    #[error("pairing is not a fixed-point-free involution on 0..{m}: {reason}")]
    NotAnInvolution { m: usize, reason: String },
    #[error("edges {0} and {1} are glued preserving orientation; the surface would not be orientable")]
    NonOrientableGluing(usize, usize),
    #[error("gluing does not produce a closed surface: {0}")]
    NotASurface(String),
    #[error("pairing is not equivariant under rotation by {step}: p({e} + {step}) != p({e}) + {step}")]
    NotEquivariant { step: usize, e: usize },
    #[error("rotation shifts the link of vertex {vertex} by {shift} of {wedges} corners, inconsistent with isotropy {lambda}")]
    InconsistentRotation { vertex: usize, shift: usize, wedges: usize, lambda: u64 },
    #[error(transparent)]
    Valency(#[from] ValencyError),
}

/// One glued pair of edges. `reversed = false` asks for an
/// orientation-preserving gluing, which is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "PairRepr", into = "PairRepr")]
pub struct EdgePair {
    pub a: usize,
    pub b: usize,
    pub reversed: bool,
}

/// JSON form: `[a, b]` or `[a, b, reversed]`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PairRepr {
    Plain(usize, usize),
    Flagged(usize, usize, bool),
}

impl From<PairRepr> for EdgePair {
    fn from(r: PairRepr) -> Self {
        match r {
            PairRepr::Plain(a, b) => EdgePair { a, b, reversed: true },
            PairRepr::Flagged(a, b, reversed) => EdgePair { a, b, reversed },
        }
    }
}

impl From<EdgePair> for PairRepr {
    fn from(p: EdgePair) -> Self {
        if p.reversed {
            PairRepr::Plain(p.a, p.b)
        } else {
            PairRepr::Flagged(p.a, p.b, false)
        }
    }
}

impl EdgePair {
    pub fn new(a: usize, b: usize) -> Self {
        EdgePair { a, b, reversed: true }
    }
}

/// A corner of a triangle: triangle index `2e + s` and position `0..3`.
type Corner = (usize, usize);

/// A polygon with its edge pairing and the quotient complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedPolygon {
    m: usize,
    partner: Vec<usize>,
    /// Quotient vertex of each polygon corner.
    corner_vertex: Vec<usize>,
    /// Quotient vertex of each edge midpoint.
    midpoint_vertex: Vec<usize>,
    vertex_count: usize,
    genus: u64,
    /// For each quotient vertex, its link corners in cyclic order.
    links: Vec<Vec<Corner>>,
}

const BARYCENTER: usize = 0;

impl GluedPolygon {
    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn partner(&self, e: usize) -> usize {
        self.partner[e]
    }

    pub fn pairs(&self) -> Vec<EdgePair> {
        (0..self.m).filter(|&e| e < self.partner[e]).map(|e| EdgePair::new(e, self.partner[e])).collect()
    }

    /// Number of vertices of the quotient complex: the barycenter, the
    /// corner classes and the midpoint classes.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn corner_classes(&self) -> usize {
        self.vertex_count - 1 - self.m / 2
    }

    /// `V − E + F` of the quotient complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - 3 * self.m as i64 + 2 * self.m as i64
    }

    /// Number of corners in the link of a quotient vertex (its wedge count).
    pub fn link_size(&self, vertex: usize) -> usize {
        self.links[vertex].len()
    }

    fn triangle_vertices(&self, t: usize) -> [usize; 3] {
        let e = t / 2;
        if t % 2 == 0 {
            [BARYCENTER, self.corner_vertex[e], self.midpoint_vertex[e]]
        } else {
            [BARYCENTER, self.midpoint_vertex[e], self.corner_vertex[(e + 1) % self.m]]
        }
    }

    fn vertex_at(&self, (t, p): Corner) -> usize {
        self.triangle_vertices(t)[p]
    }
}

/// Side `side` of triangle `t` (from position `side` to `side + 1`) and the
/// side of the neighbouring triangle glued to it.
fn side_partner(m: usize, partner: &[usize], t: usize, side: usize) -> (usize, usize) {
    let e = t / 2;
    let prev = (e + m - 1) % m;
    let next = (e + 1) % m;
    match (t % 2, side) {
        (0, 0) => (2 * prev + 1, 2),
        (0, 1) => (2 * partner[e] + 1, 1),
        (0, 2) => (2 * e + 1, 0),
        (1, 0) => (2 * e, 2),
        (1, 1) => (2 * partner[e], 1),
        (1, 2) => (2 * next, 0),
        _ => unreachable!("triangle sides are 0..3"),
    }
}

/// Next corner around the same vertex, turning in the positive direction.
fn next_corner(m: usize, partner: &[usize], (t, p): Corner) -> Corner {
    side_partner(m, partner, t, (p + 2) % 3)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut y = x;
    while parent[y] != root {
        let up = parent[y];
        parent[y] = root;
        y = up;
    }
    root
}

/// Glues a regular `m`-gon along `pairs`.
pub fn build(m: usize, pairs: &[EdgePair]) -> Result<GluedPolygon, PolygonError> {
    if m == 0 || m % 2 == 1 {
        return Err(PolygonError::OddEdgeCount(m));
    }
    let not_inv = |reason: String| PolygonError::NotAnInvolution { m, reason };
    let mut partner = vec![usize::MAX; m];
    for p in pairs {
        if p.a >= m || p.b >= m {
            return Err(not_inv(format!("edge index out of range in ({}, {})", p.a, p.b)));
        }
        if p.a == p.b {
            return Err(not_inv(format!("edge {} paired with itself", p.a)));
        }
        for x in [p.a, p.b] {
            if partner[x] != usize::MAX {
                return Err(not_inv(format!("edge {x} appears in two pairs")));
            }
        }
        if !p.reversed {
            return Err(PolygonError::NonOrientableGluing(p.a, p.b));
        }
        partner[p.a] = p.b;
        partner[p.b] = p.a;
    }
    if let Some(e) = partner.iter().position(|&x| x == usize::MAX) {
        return Err(not_inv(format!("edge {e} is unpaired")));
    }
    from_partner(partner)
}

fn from_partner(partner: Vec<usize>) -> Result<GluedPolygon, PolygonError> {
    let m = partner.len();
    let mut parent: Vec<usize> = (0..m).collect();
    for e in 0..m {
        let p = partner[e];
        let (a, b) = (find(&mut parent, e), find(&mut parent, (p + 1) % m));
        parent[a] = b;
        let (a, b) = (find(&mut parent, (e + 1) % m), find(&mut parent, p));
        parent[a] = b;
    }
    let mut class_of_root = BTreeMap::new();
    let mut corner_vertex = vec![0; m];
    for (i, cv) in corner_vertex.iter_mut().enumerate() {
        let r = find(&mut parent, i);
        let next = 1 + class_of_root.len();
        *cv = *class_of_root.entry(r).or_insert(next);
    }
    let corner_classes = class_of_root.len();
    let mut midpoint_vertex = vec![0; m];
    let mut next = 1 + corner_classes;
    for e in 0..m {
        if e < partner[e] {
            midpoint_vertex[e] = next;
            midpoint_vertex[partner[e]] = next;
            next += 1;
        }
    }
    let vertex_count = next;

    let mut surface = GluedPolygon {
        m,
        partner,
        corner_vertex,
        midpoint_vertex,
        vertex_count,
        genus: 0,
        links: vec![Vec::new(); vertex_count],
    };

    // Walk every link; each vertex must have exactly one cycle of corners.
    let mut seen = vec![[false; 3]; 2 * m];
    for t in 0..2 * m {
        for p in 0..3 {
            if seen[t][p] {
                continue;
            }
            let v = surface.vertex_at((t, p));
            if !surface.links[v].is_empty() {
                return Err(PolygonError::NotASurface(format!("vertex {v} has a disconnected link")));
            }
            let mut cycle = Vec::new();
            let mut c = (t, p);
            while !seen[c.0][c.1] {
                seen[c.0][c.1] = true;
                if surface.vertex_at(c) != v {
                    return Err(PolygonError::NotASurface(format!("link of vertex {v} leaves the vertex")));
                }
                cycle.push(c);
                c = next_corner(m, &surface.partner, c);
            }
            if c != (t, p) {
                return Err(PolygonError::NotASurface(format!("link of vertex {v} is not a cycle")));
            }
            surface.links[v] = cycle;
        }
    }

    let chi = surface.euler_characteristic();
    if chi > 2 || chi % 2 != 0 {
        return Err(PolygonError::NotASurface(format!("Euler characteristic {chi}")));
    }
    surface.genus = ((2 - chi) / 2) as u64;
    Ok(surface)
}

/// Rotation of the polygon by `step` edges (by `2π·step/m`), acting on the
/// glued surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RotationAction {
    step: usize,
    order: u64,
}

impl RotationAction {
    pub fn new(surface: &GluedPolygon, step: usize) -> Result<Self, PolygonError> {
        let m = surface.m;
        let step = step % m;
        for e in 0..m {
            if surface.partner[(e + step) % m] != (surface.partner[e] + step) % m {
                return Err(PolygonError::NotEquivariant { step, e });
            }
        }
        Ok(RotationAction { step, order: (m / gcd(m as u64, step as u64) as usize) as u64 })
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    fn map_vertex(&self, s: &GluedPolygon, v: usize, times: usize) -> usize {
        let shift = (self.step * times) % s.m;
        if v == BARYCENTER {
            return v;
        }
        if let Some(i) = s.corner_vertex.iter().position(|&x| x == v) {
            return s.corner_vertex[(i + shift) % s.m];
        }
        let e = s.midpoint_vertex.iter().position(|&x| x == v).expect("vertex id in range");
        s.midpoint_vertex[(e + shift) % s.m]
    }

    fn map_corner(&self, s: &GluedPolygon, (t, p): Corner, times: usize) -> Corner {
        let shift = (self.step * times) % s.m;
        let e = (t / 2 + shift) % s.m;
        (2 * e + t % 2, p)
    }
}

/// A multiple orbit of a rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MultipleOrbit {
    /// Number of points in the orbit.
    pub orbit_size: u64,
    /// Isotropy order `λ`.
    pub isotropy: u64,
    /// Local rotation number `ν` of the isotropy generator.
    pub rotation: u64,
    pub valency: Valency,
    /// A quotient vertex in the orbit.
    pub representative: usize,
}

/// All orbits of `rot` with nontrivial isotropy, sorted by valency
/// (descending `λ`, ascending `θ`).
pub fn multiple_orbits(surface: &GluedPolygon, rot: &RotationAction) -> Result<Vec<MultipleOrbit>, PolygonError> {
    let n = rot.order;
    let mut visited = vec![false; surface.vertex_count];
    let mut out = Vec::new();
    for v in 0..surface.vertex_count {
        if visited[v] {
            continue;
        }
        let mut size = 0usize;
        let mut x = v;
        loop {
            visited[x] = true;
            size += 1;
            x = rot.map_vertex(surface, x, 1);
            if x == v {
                break;
            }
        }
        let lambda = n / size as u64;
        if lambda < 2 {
            continue;
        }
        let link = &surface.links[v];
        let wedges = link.len();
        let image = rot.map_corner(surface, link[0], size);
        let shift = link.iter().position(|&c| c == image).expect("isotropy preserves the link");
        let bad = PolygonError::InconsistentRotation { vertex: v, shift, wedges, lambda };
        if wedges % lambda as usize != 0 || shift % (wedges / lambda as usize) != 0 {
            return Err(bad);
        }
        let nu = (shift / (wedges / lambda as usize)) as u64;
        let valency = Valency::from_rotation(nu, lambda).map_err(|_| bad)?;
        out.push(MultipleOrbit { orbit_size: size as u64, isotropy: lambda, rotation: nu, valency, representative: v });
    }
    out.sort_by(|a, b| {
        b.isotropy.cmp(&a.isotropy).then(a.valency.theta().cmp(&b.valency.theta())).then(a.orbit_size.cmp(&b.orbit_size))
    });
    Ok(out)
}

/// Total valency of the rotation, with the quotient genus forced by
/// Riemann-Hurwitz and the result validated.
pub fn tv_from_polygon(surface: &GluedPolygon, rot: &RotationAction) -> Result<TotalValency, PolygonError> {
    if rot.order == 1 {
        return Ok(TotalValency::identity(surface.genus));
    }
    let valencies = multiple_orbits(surface, rot)?.into_iter().map(|o| o.valency).collect();
    let tv = TotalValency::with_forced_quotient_genus(surface.genus, rot.order, valencies)?;
    tv.ensure_valid()?;
    Ok(tv)
}

/// All fixed-point-free involutions on `0..m` commuting with `e ↦ e + step`.
pub fn equivariant_pairings(m: usize, step: usize) -> Vec<Vec<usize>> {
    fn assign(partner: &mut [Option<usize>], m: usize, step: usize, e: usize, f: usize) -> Option<Vec<usize>> {
        let mut touched = Vec::new();
        let orbit = m / gcd(m as u64, step as u64) as usize;
        for k in 0..orbit {
            let a = (e + k * step) % m;
            let b = (f + k * step) % m;
            let ok = a != b
                && partner[a].is_none_or(|x| x == b)
                && partner[b].is_none_or(|y| y == a);
            if !ok {
                for &x in &touched {
                    partner[x] = None;
                }
                return None;
            }
            for (x, y) in [(a, b), (b, a)] {
                if partner[x].is_none() {
                    partner[x] = Some(y);
                    touched.push(x);
                }
            }
        }
        Some(touched)
    }

    fn search(partner: &mut Vec<Option<usize>>, m: usize, step: usize, out: &mut Vec<Vec<usize>>) {
        let Some(e) = partner.iter().position(Option::is_none) else {
            out.push(partner.iter().map(|x| x.expect("complete")).collect());
            return;
        };
        for f in 0..m {
            if f == e || partner[f].is_some() {
                continue;
            }
            if let Some(touched) = assign(partner, m, step, e, f) {
                search(partner, m, step, out);
                for x in touched {
                    partner[x] = None;
                }
            }
        }
    }

    let mut out = Vec::new();
    if m > 0 && m % 2 == 0 {
        search(&mut vec![None; m], m, step % m, &mut out);
    }
    out
}

/// Offset of the standard pairing: edge `2j` is glued to edge
/// `2j + 2·offset + 1`. These are the solutions of the equivariant search
/// with genus `g` and the closed-form total valency; each family has a
/// mirror-image solution as well (except `f₁` at `g = 2`).
fn standard_offset(family: Family, g: usize) -> usize {
    match family {
        Family::F1 => 2 * g + 1,
        Family::F2 => 2 * g,
        Family::F3 => 1,
    }
}

fn pairing_with_offset(m: usize, offset: usize) -> Vec<usize> {
    let mut partner = vec![0; m];
    for j in (0..m).step_by(2) {
        let b = (j + 2 * offset + 1) % m;
        partner[j] = b;
        partner[b] = j;
    }
    partner
}

/// Built-in polygon model of `f₁`, `f₂` or `f₃` at genus `g ≥ 2`: the
/// `(8g+4)`-, `8g`- or `(4g+4)`-gon rotated by two edges.
pub fn standard_family(family: Family, g: u64) -> Result<(GluedPolygon, RotationAction), PolygonError> {
    let m = family.polygon_sides(g) as usize;
    let surface = from_partner(pairing_with_offset(m, standard_offset(family, g as usize)))?;
    let rot = RotationAction::new(&surface, 2)?;
    Ok((surface, rot))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> GluedPolygon {
        build(4, &[EdgePair::new(0, 2), EdgePair::new(1, 3)]).unwrap()
    }

    #[test]
    fn build_examples() {
        let t = torus();
        assert_eq!(t.genus(), 1);
        assert_eq!(t.corner_classes(), 1);
        for fam in Family::ALL {
            let (s, _) = standard_family(fam, 2).unwrap();
            assert_eq!(s.genus(), 2, "{fam}");
            assert_eq!(s.edge_count() as u64, fam.polygon_sides(2));
        }
        // The F2 pairing on the 16-gon given explicitly.
        let pairs: Vec<_> = (0..16).step_by(2).map(|j| EdgePair::new(j, (j + 9) % 16)).collect();
        assert_eq!(build(16, &pairs).unwrap().genus(), 2);
        // A square with adjacent edges glued is a sphere.
        assert_eq!(build(4, &[EdgePair::new(0, 1), EdgePair::new(2, 3)]).unwrap().genus(), 0);
    }

    #[test]
    fn build_errors() {
        assert!(matches!(build(3, &[]), Err(PolygonError::OddEdgeCount(3))));
        assert!(matches!(build(4, &[EdgePair::new(0, 2)]), Err(PolygonError::NotAnInvolution { .. })));
        assert!(matches!(
            build(4, &[EdgePair::new(0, 2), EdgePair::new(2, 3)]),
            Err(PolygonError::NotAnInvolution { .. })
        ));
        assert!(matches!(
            build(4, &[EdgePair::new(0, 0), EdgePair::new(1, 3)]),
            Err(PolygonError::NotAnInvolution { .. })
        ));
        assert!(matches!(
            build(4, &[EdgePair::new(0, 5), EdgePair::new(1, 3)]),
            Err(PolygonError::NotAnInvolution { .. })
        ));
        let twisted = [EdgePair { a: 0, b: 2, reversed: false }, EdgePair::new(1, 3)];
        assert!(matches!(build(4, &twisted), Err(PolygonError::NonOrientableGluing(0, 2))));
    }

    #[test]
    fn pair_json_forms() {
        let pairs: Vec<EdgePair> = serde_json::from_str("[[0,2],[1,3,true],[4,5,false]]").unwrap();
        assert_eq!(pairs[0], EdgePair::new(0, 2));
        assert_eq!(pairs[1], EdgePair::new(1, 3));
        assert!(!pairs[2].reversed);
        assert_eq!(serde_json::to_string(&pairs[0]).unwrap(), "[0,2]");
    }

    #[test]
    fn torus_quarter_turn() {
        let t = torus();
        let rot = RotationAction::new(&t, 1).unwrap();
        assert_eq!(rot.order(), 4);
        assert_eq!(tv_from_polygon(&t, &rot).unwrap(), "[1,4;1/4+1/4+1/2]@0".parse().unwrap());
        let half = RotationAction::new(&t, 2).unwrap();
        assert_eq!(tv_from_polygon(&t, &half).unwrap(), "[1,2;1/2x4]@0".parse().unwrap());
    }

    #[test]
    fn identity_rotation_has_no_multiple_orbits() {
        for fam in Family::ALL {
            let (s, _) = standard_family(fam, 3).unwrap();
            let id = RotationAction::new(&s, 0).unwrap();
            assert!(multiple_orbits(&s, &id).unwrap().is_empty());
            assert_eq!(tv_from_polygon(&s, &id).unwrap(), TotalValency::identity(3));
        }
    }

    #[test]
    fn f1_orbits_at_genus_two() {
        let (s, rot) = standard_family(Family::F1, 2).unwrap();
        let got: Vec<_> = multiple_orbits(&s, &rot)
            .unwrap()
            .into_iter()
            .map(|o| (o.orbit_size, o.isotropy, o.rotation, o.valency.to_string()))
            .collect();
        assert_eq!(
            got,
            vec![(1, 10, 1, "1/10".to_string()), (2, 5, 3, "2/5".to_string()), (5, 2, 1, "1/2".to_string())]
        );
    }

    #[test]
    fn standard_families_reproduce_closed_forms() {
        for fam in Family::ALL {
            for g in 2..=10 {
                let (s, rot) = standard_family(fam, g).unwrap();
                assert_eq!(s.genus(), g);
                assert_eq!(tv_from_polygon(&s, &rot).unwrap(), fam.closed_form(g), "{fam} g={g}");
            }
        }
    }

    #[test]
    fn search_recovers_standard_pairings() {
        for fam in Family::ALL {
            for g in 2..=5u64 {
                let m = fam.polygon_sides(g) as usize;
                let want = fam.closed_form(g);
                let matches: Vec<Vec<usize>> = equivariant_pairings(m, 2)
                    .into_iter()
                    .filter(|p| {
                        let Ok(s) = from_partner(p.clone()) else { return false };
                        let rot = RotationAction::new(&s, 2).unwrap();
                        s.genus() == g && tv_from_polygon(&s, &rot).ok().as_ref() == Some(&want)
                    })
                    .collect();
                let (std, _) = standard_family(fam, g).unwrap();
                assert!(matches.contains(&std.partner), "{fam} g={g}");
                assert!(!matches.is_empty() && matches.len() <= 2, "{fam} g={g}: {}", matches.len());
            }
        }
    }

    #[test]
    fn search_counts_small_cases() {
        // Fixed-point-free involutions on 4 points commuting with a shift by 2:
        // (0 1)(2 3), (0 3)(1 2) and (0 2)(1 3).
        assert_eq!(equivariant_pairings(4, 2).len(), 3);
        // Without symmetry the count is (m − 1)!!.
        assert_eq!(equivariant_pairings(6, 0).len(), 15);
        assert!(equivariant_pairings(5, 1).is_empty());
    }

    #[test]
    fn rotation_must_be_equivariant() {
        let (s, _) = standard_family(Family::F1, 2).unwrap();
        assert!(matches!(RotationAction::new(&s, 1), Err(PolygonError::NotEquivariant { .. })));
    }

    #[test]
    fn links_close_up() {
        for fam in Family::ALL {
            let (s, _) = standard_family(fam, 4).unwrap();
            let total: usize = (0..s.vertex_count()).map(|v| s.link_size(v)).sum();
            // every triangle corner lies in exactly one link
            assert_eq!(total, 3 * 2 * s.edge_count());
            assert_eq!(s.link_size(BARYCENTER), 2 * s.edge_count());
            // each midpoint class sees four corners
            for e in 0..s.edge_count() {
                assert_eq!(s.link_size(s.midpoint_vertex[e]), 4);
            }
        }
    }

    #[test]
    fn powers_match_tv_power() {
        for fam in Family::ALL {
            for g in 2..=6 {
                let (s, base) = standard_family(fam, g).unwrap();
                let base_tv = tv_from_polygon(&s, &base).unwrap();
                for k in 1..base.order() {
                    let rot = RotationAction::new(&s, (k as usize * base.step()) % s.edge_count()).unwrap();
                    assert_eq!(
                        tv_from_polygon(&s, &rot).unwrap(),
                        crate::valency::tv_power(&base_tv, k).unwrap(),
                        "{fam} g={g} k={k}"
                    );
                }
            }
        }
    }
}
