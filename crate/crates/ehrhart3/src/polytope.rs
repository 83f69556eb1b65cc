//! Combinatorial structure of a 3-dimensional simple integral polytope.
//!
//! [`build`] computes the convex hull of the input points by gift wrapping
//! with exact integer predicates: it bootstraps one supporting facet plane by
//! rotating a plane onto the point set, then discovers the remaining facets
//! by pivoting around the directed edges of known facets. Coplanar contact
//! sets become polygon facets directly, so no triangle merging is needed.
//!
//! Facet cycles are stored in the direction that makes the walk determinants
//! of Definition-style facet corrections positive (clockwise as seen from the
//! tip of the inward normal), rotated so the smallest vertex id comes first.
//! Facets are sorted by (normal, offset) and edges by endpoints, which makes
//! the whole structure a deterministic function of the input point set.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::{Signed, Zero};

use crate::intlinalg::{
    content, det3, plane_coords, plane_lattice_basis, primitive, vec3, Integer, Rational, Vec3i,
};
use crate::Error;

/// A facet with primitive inward normal and cyclically ordered boundary.
///
/// Every polytope vertex `w` satisfies `⟨w, normal⟩ ≥ offset`, with equality
/// exactly for the members of `cycle`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec3i,
    pub offset: Integer,
    pub cycle: Vec<usize>,
}

/// An edge together with its two incident facets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// Vertex ids, ascending.
    pub endpoints: (usize, usize),
    /// Facet ids, ascending.
    pub facets: (usize, usize),
}

/// A 3-dimensional simple integral convex polytope.
#[derive(Debug, Clone)]
pub struct Polytope {
    pub vertices: Vec<Vec3i>,
    pub facets: Vec<Facet>,
    pub edges: Vec<Edge>,
    /// For each vertex, its exactly three incident facets (simplicity).
    pub vertex_facets: Vec<[usize; 3]>,
    edge_index: BTreeMap<(usize, usize), usize>,
}

/// Ordered data around one facet: boundary vertices, the neighboring facet
/// across each boundary edge, and the off-facet neighbor of each vertex.
///
/// `edge_facets[i]` is the facet across the edge from `verts[i-1]` to
/// `verts[i]` (cyclically), and `off_verts[i]` is the unique neighbor of
/// `verts[i]` not lying on the facet. The direction of `verts` is chosen so
/// that every determinant `det(normal, n_{i+1}, n_i)` of consecutive
/// neighboring normals is positive.
#[derive(Debug, Clone)]
pub struct FacetWalk {
    pub facet: usize,
    pub normal: Vec3i,
    pub verts: Vec<usize>,
    pub edge_facets: Vec<usize>,
    pub off_verts: Vec<usize>,
}

impl FacetWalk {
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// The same walk started `shift` positions later around the facet.
    pub fn rotated(&self, shift: usize) -> FacetWalk {
        let rot = |v: &Vec<usize>| {
            let mut v = v.clone();
            let n = v.len();
            v.rotate_left(shift % n);
            v
        };
        FacetWalk {
            facet: self.facet,
            normal: self.normal.clone(),
            verts: rot(&self.verts),
            edge_facets: rot(&self.edge_facets),
            off_verts: rot(&self.off_verts),
        }
    }
}

impl Polytope {
    /// Index of the edge joining vertices `a` and `b`, if present.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.edge_index.get(&key).copied()
    }

    /// The three neighbors of a vertex.
    pub fn neighbors(&self, vid: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(3);
        for e in &self.edges {
            if e.endpoints.0 == vid {
                out.push(e.endpoints.1);
            } else if e.endpoints.1 == vid {
                out.push(e.endpoints.0);
            }
        }
        out
    }
}

/// Builds the polytope, rejecting input points that are not hull vertices.
pub fn build(points: &[Vec3i]) -> Result<Polytope, Error> {
    build_with(points, false).map(|(p, _)| p)
}

/// Builds the polytope. With `allow_interior` set, input points that are not
/// vertices of the hull are dropped and returned; otherwise they are an
/// error.
pub fn build_with(points: &[Vec3i], allow_interior: bool) -> Result<(Polytope, Vec<Vec3i>), Error> {
    let mut pts: Vec<Vec3i> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 4 {
        return Err(Error::TooFewPoints { got: pts.len() });
    }
    check_full_dimensional(&pts)?;

    // Gift wrap: discover facet planes by BFS over facet edges.
    let first = initial_facet(&pts);
    let mut plane_ids: HashMap<(Vec3i, Integer), usize> = HashMap::new();
    let mut raw: Vec<Facet> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    plane_ids.insert((first.0.clone(), first.1.clone()), 0);
    raw.push(make_facet(&pts, first.0, first.1));
    queue.push_back(0);

    while let Some(fid) = queue.pop_front() {
        let cycle = raw[fid].cycle.clone();
        let normal = raw[fid].normal.clone();
        let offset = raw[fid].offset.clone();
        let r = cycle.len();
        for i in 0..r {
            let a = cycle[i];
            let b = cycle[(i + 1) % r];
            let c = pivot_around_edge(&pts, a, b, &normal, &offset);
            let ab = &pts[b] - &pts[a];
            let n = primitive(&ab.cross(&(&pts[c] - &pts[a])))
                .expect("pivot point is never collinear with the edge");
            let o = pts[a].dot(&n);
            let key = (n, o);
            if !plane_ids.contains_key(&key) {
                let next = raw.len();
                plane_ids.insert(key.clone(), next);
                raw.push(make_facet(&pts, key.0, key.1));
                queue.push_back(next);
            }
        }
    }

    // Vertex set and the strict-input check.
    let mut on_hull: BTreeSet<usize> = BTreeSet::new();
    for f in &raw {
        on_hull.extend(f.cycle.iter().copied());
    }
    let mut dropped = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        if !on_hull.contains(&i) {
            if !allow_interior {
                return Err(Error::NonVertexInput { point: p.clone() });
            }
            dropped.push(p.clone());
        }
    }
    let vertex_ids: Vec<usize> = on_hull.iter().copied().collect();
    let mut remap = vec![usize::MAX; pts.len()];
    for (new, &old) in vertex_ids.iter().enumerate() {
        remap[old] = new;
    }
    let vertices: Vec<Vec3i> = vertex_ids.iter().map(|&i| pts[i].clone()).collect();

    let mut facets: Vec<Facet> = raw
        .into_iter()
        .map(|f| {
            let mut cycle: Vec<usize> = f.cycle.into_iter().map(|v| remap[v]).collect();
            rotate_min_first(&mut cycle);
            Facet {
                normal: f.normal,
                offset: f.offset,
                cycle,
            }
        })
        .collect();
    facets.sort_by(|a, b| {
        (a.normal.coords(), &a.offset).cmp(&(b.normal.coords(), &b.offset))
    });

    // Edges from facet cycles; every edge must be shared by exactly two.
    let mut edge_facets: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (fid, f) in facets.iter().enumerate() {
        let r = f.cycle.len();
        for i in 0..r {
            let a = f.cycle[i];
            let b = f.cycle[(i + 1) % r];
            let key = if a <= b { (a, b) } else { (b, a) };
            edge_facets.entry(key).or_default().push(fid);
        }
    }
    let mut edges = Vec::with_capacity(edge_facets.len());
    let mut edge_index = BTreeMap::new();
    for (key, fs) in edge_facets {
        assert!(
            fs.len() == 2 && fs[0] != fs[1],
            "hull edge must bound exactly two facets"
        );
        edge_index.insert(key, edges.len());
        edges.push(Edge {
            endpoints: key,
            facets: (fs[0].min(fs[1]), fs[0].max(fs[1])),
        });
    }

    // Simplicity: every vertex on exactly three facets.
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (fid, f) in facets.iter().enumerate() {
        for &v in &f.cycle {
            incident[v].push(fid);
        }
    }
    let mut vertex_facets = Vec::with_capacity(vertices.len());
    for (v, inc) in incident.into_iter().enumerate() {
        if inc.len() != 3 {
            return Err(Error::NotSimple {
                vertex: vertices[v].clone(),
                facet_count: inc.len(),
            });
        }
        vertex_facets.push([inc[0], inc[1], inc[2]]);
    }

    let p = Polytope {
        vertices,
        facets,
        edges,
        vertex_facets,
        edge_index,
    };
    debug_assert!(validate(&p));
    Ok((p, dropped))
}

/// Relative length of an edge: the gcd of the endpoint difference.
pub fn edge_rel_volume(p: &Polytope, e: &Edge) -> Integer {
    content(&(&p.vertices[e.endpoints.1] - &p.vertices[e.endpoints.0]))
}

/// Area of the facet polygon measured in an integral basis of the rank-2
/// lattice orthogonal to its normal; always a positive multiple of 1/2.
pub fn facet_rel_volume(p: &Polytope, f: &Facet) -> Rational {
    let (u1, u2) = plane_lattice_basis(&f.normal);
    let origin = &p.vertices[f.cycle[0]];
    let coords: Vec<(Integer, Integer)> = f
        .cycle
        .iter()
        .map(|&v| plane_coords(&(&p.vertices[v] - origin), &u1, &u2, &f.normal))
        .collect();
    let mut doubled = Integer::zero();
    for i in 0..coords.len() {
        let (ref x0, ref y0) = coords[i];
        let (ref x1, ref y1) = coords[(i + 1) % coords.len()];
        doubled += x0 * y1 - x1 * y0;
    }
    Rational::new(doubled.abs(), Integer::from(2))
}

/// Euclidean volume, exact; six times it is an integer.
pub fn volume(p: &Polytope) -> Rational {
    let origin = &p.vertices[0];
    let mut six = Integer::zero();
    for f in &p.facets {
        let c = &f.cycle;
        let base = &p.vertices[c[0]] - origin;
        for i in 1..c.len() - 1 {
            six += det3(
                &base,
                &(&p.vertices[c[i]] - origin),
                &(&p.vertices[c[i + 1]] - origin),
            );
        }
    }
    Rational::new(six.abs(), Integer::from(6))
}

/// The unique neighbor of `vid` along the one edge at `vid` leaving `facet`.
pub fn off_facet_neighbor(p: &Polytope, facet: usize, vid: usize) -> Result<usize, Error> {
    let f = &p.facets[facet];
    if !f.cycle.contains(&vid) {
        return Err(Error::VertexNotOnFacet);
    }
    for nb in p.neighbors(vid) {
        if !f.cycle.contains(&nb) {
            return Ok(nb);
        }
    }
    unreachable!("simple polytope vertex has exactly one off-facet edge");
}

/// Walk data around a facet, oriented so every ε is positive.
pub fn facet_walk(p: &Polytope, facet: usize) -> Result<FacetWalk, Error> {
    let f = &p.facets[facet];
    let r = f.cycle.len();
    'direction: for reversed in [false, true] {
        let mut verts = f.cycle.clone();
        if reversed {
            verts.reverse();
            rotate_min_first(&mut verts);
        }
        let mut edge_facets = Vec::with_capacity(r);
        for i in 0..r {
            let a = verts[(i + r - 1) % r];
            let b = verts[i];
            let e = p
                .edge_between(a, b)
                .expect("consecutive cycle vertices form an edge");
            let (f1, f2) = p.edges[e].facets;
            edge_facets.push(if f1 == facet { f2 } else { f1 });
        }
        for i in 0..r {
            let eps = det3(
                &f.normal,
                &p.facets[edge_facets[(i + 1) % r]].normal,
                &p.facets[edge_facets[i]].normal,
            );
            if !eps.is_positive() {
                continue 'direction;
            }
        }
        let off_verts = verts
            .iter()
            .map(|&v| off_facet_neighbor(p, facet, v))
            .collect::<Result<Vec<usize>, Error>>()?;
        if cfg!(debug_assertions) {
            for i in 0..r {
                let to_off = &p.vertices[off_verts[i]] - &p.vertices[verts[i]];
                debug_assert!(to_off.dot(&f.normal).is_positive());
                let along = &p.vertices[verts[(i + 1) % r]] - &p.vertices[verts[i]];
                debug_assert!(along.dot(&p.facets[edge_facets[i]].normal).is_positive());
            }
        }
        return Ok(FacetWalk {
            facet,
            normal: f.normal.clone(),
            verts,
            edge_facets,
            off_verts,
        });
    }
    Err(Error::OrientationFailure { facet })
}

fn check_full_dimensional(pts: &[Vec3i]) -> Result<(), Error> {
    let p0 = &pts[0];
    let mut d1: Option<Vec3i> = None;
    let mut d2: Option<Vec3i> = None;
    for p in &pts[1..] {
        let d = p - p0;
        match (&d1, &d2) {
            (None, _) => d1 = Some(d),
            (Some(a), None) => {
                if !a.cross(&d).is_zero() {
                    d2 = Some(d);
                }
            }
            (Some(a), Some(b)) => {
                if !det3(a, b, &d).is_zero() {
                    return Ok(());
                }
            }
        }
    }
    Err(Error::NotFullDimensional)
}

/// One supporting facet plane, by rotating a supporting plane onto the set.
///
/// Starts from `{x = min}` (supporting because points are sorted), and while
/// the contact set does not span two dimensions, rotates around a line in the
/// current plane until another point is hit. The contact dimension grows each
/// round, so at most three rounds are needed.
fn initial_facet(pts: &[Vec3i]) -> (Vec3i, Integer) {
    let p0 = &pts[0];
    let mut normal = vec3(1, 0, 0);
    for _ in 0..4 {
        let offset = p0.dot(&normal);
        let contact: Vec<usize> = (0..pts.len())
            .filter(|&i| pts[i].dot(&normal) == offset)
            .collect();
        if contact_spans(pts, &contact) {
            return (normal, offset);
        }
        let axis = if contact.len() >= 2 {
            primitive(&(&pts[contact[1]] - p0)).expect("distinct points")
        } else {
            plane_lattice_basis(&normal).0
        };
        let side = normal.cross(&axis);

        // Pivot: smallest rotation angle away from the current plane, where a
        // candidate at coordinates (alpha, beta) beats the best seen so far
        // iff cross2((alpha, beta), best) > 0. All off-plane points have
        // beta > 0, so the comparison is a total order.
        let mut best: Option<(Integer, Integer, usize)> = None;
        for (i, p) in pts.iter().enumerate() {
            let d = p - p0;
            let beta = d.dot(&normal);
            if beta.is_zero() {
                continue;
            }
            debug_assert!(beta.is_positive(), "plane must support the point set");
            let alpha = d.dot(&side);
            let better = match &best {
                None => true,
                Some((ba, bb, _)) => (&alpha * bb - &beta * ba).is_positive(),
            };
            if better {
                best = Some((alpha, beta, i));
            }
        }
        let (_, _, hit) = best.expect("full-dimensional set has off-plane points");
        let mut n = axis.cross(&(&pts[hit] - p0));
        // Orient inward: some point must be strictly off the new plane.
        let probe = pts
            .iter()
            .map(|p| (p - p0).dot(&n))
            .find(|d| !d.is_zero())
            .expect("full-dimensional set");
        if probe.is_negative() {
            n = -&n;
        }
        debug_assert!(pts.iter().all(|p| !(p - p0).dot(&n).is_negative()));
        normal = primitive(&n).expect("cross product of independent vectors");
    }
    unreachable!("contact dimension grows every rotation round");
}

fn contact_spans(pts: &[Vec3i], contact: &[usize]) -> bool {
    if contact.len() < 3 {
        return false;
    }
    let p0 = &pts[contact[0]];
    let mut d1: Option<Vec3i> = None;
    for &i in &contact[1..] {
        let d = &pts[i] - p0;
        match &d1 {
            None => d1 = Some(d),
            Some(a) => {
                if !a.cross(&d).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Wraps around the directed edge `a -> b` of the facet with the given plane:
/// returns the point spanning the adjacent facet. Candidates are the points
/// strictly off the current plane; a single pass suffices because their
/// rotation angles around the edge line are totally ordered.
fn pivot_around_edge(
    pts: &[Vec3i],
    a: usize,
    b: usize,
    normal: &Vec3i,
    offset: &Integer,
) -> usize {
    let pa = &pts[a];
    let ab = &pts[b] - pa;
    let mut best: Option<usize> = None;
    for (i, p) in pts.iter().enumerate() {
        if &p.dot(normal) == offset {
            continue;
        }
        match best {
            None => best = Some(i),
            Some(c) => {
                if det3(&ab, &(&pts[c] - pa), &(p - pa)).is_negative() {
                    best = Some(i);
                }
            }
        }
    }
    best.expect("full-dimensional set has points off every facet plane")
}

/// Collects the contact polygon of a supporting plane: 2D hull of the
/// on-plane points, oriented clockwise as seen from the inward-normal side
/// and rotated so the smallest index comes first.
fn make_facet(pts: &[Vec3i], normal: Vec3i, offset: Integer) -> Facet {
    let on_plane: Vec<usize> = (0..pts.len())
        .filter(|&i| pts[i].dot(&normal) == offset)
        .collect();
    debug_assert!(on_plane.len() >= 3);

    // Project along the dominant axis of the normal; injective on the plane.
    let axis = {
        let [x, y, z] = normal.coords();
        let (ax, ay, az) = (x.abs(), y.abs(), z.abs());
        if ax >= ay && ax >= az {
            0
        } else if ay >= az {
            1
        } else {
            2
        }
    };
    let project = |p: &Vec3i| -> (Integer, Integer) {
        match axis {
            0 => (p.y.clone(), p.z.clone()),
            1 => (p.x.clone(), p.z.clone()),
            _ => (p.x.clone(), p.y.clone()),
        }
    };
    let mut flat: Vec<(Integer, Integer, usize)> = on_plane
        .iter()
        .map(|&i| {
            let (s, t) = project(&pts[i]);
            (s, t, i)
        })
        .collect();
    flat.sort();
    let mut cycle = hull2d(&flat);

    // Canonical direction: cross of consecutive edges points against the
    // inward normal.
    let w = (&pts[cycle[1]] - &pts[cycle[0]]).cross(&(&pts[cycle[2]] - &pts[cycle[1]]));
    let d = w.dot(&normal);
    debug_assert!(!d.is_zero());
    if d.is_positive() {
        cycle.reverse();
    }
    rotate_min_first(&mut cycle);
    Facet {
        normal,
        offset,
        cycle,
    }
}

/// Monotone chain on pre-sorted projected points; strict turns only, so
/// points interior to polygon edges are excluded.
fn hull2d(flat: &[(Integer, Integer, usize)]) -> Vec<usize> {
    let turn = |o: &(Integer, Integer, usize),
                a: &(Integer, Integer, usize),
                b: &(Integer, Integer, usize)|
     -> Integer {
        (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
    };
    let mut lower: Vec<&(Integer, Integer, usize)> = Vec::new();
    for p in flat {
        while lower.len() >= 2 && !turn(lower[lower.len() - 2], lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&(Integer, Integer, usize)> = Vec::new();
    for p in flat.iter().rev() {
        while upper.len() >= 2 && !turn(upper[upper.len() - 2], upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.iter().chain(upper.iter()).map(|p| p.2).collect()
}

fn rotate_min_first(cycle: &mut [usize]) {
    let pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap_or(0);
    cycle.rotate_left(pos);
}

fn validate(p: &Polytope) -> bool {
    let v = p.vertices.len();
    let e = p.edges.len();
    let f = p.facets.len();
    assert_eq!(v + f, e + 2, "Euler relation");
    assert_eq!(3 * v, 2 * e, "simplicity edge count");
    for facet in &p.facets {
        for (i, w) in p.vertices.iter().enumerate() {
            let d = w.dot(&facet.normal) - &facet.offset;
            assert!(!d.is_negative(), "facet inequality");
            assert_eq!(d.is_zero(), facet.cycle.contains(&i), "equality on cycle");
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::ratio;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    fn cube_points(n: i64) -> Vec<Vec3i> {
        crate::cli::cube_vertices(n).unwrap()
    }

    fn tetra_points(a: i64, b: i64, c: i64) -> Vec<Vec3i> {
        crate::cli::tetra_vertices(a, b, c).unwrap()
    }

    fn prism_points(a: i64, b: i64, c: i64) -> Vec<Vec3i> {
        crate::cli::prism_vertices(a, b, c).unwrap()
    }

    #[test]
    fn cube_combinatorics() {
        let p = build(&cube_points(1)).unwrap();
        assert_eq!(p.vertices.len(), 8);
        assert_eq!(p.edges.len(), 12);
        assert_eq!(p.facets.len(), 6);
        let normals: BTreeSet<Vec3i> = p.facets.iter().map(|f| f.normal.clone()).collect();
        let expected: BTreeSet<Vec3i> = [
            vec3(1, 0, 0),
            vec3(-1, 0, 0),
            vec3(0, 1, 0),
            vec3(0, -1, 0),
            vec3(0, 0, 1),
            vec3(0, 0, -1),
        ]
        .into_iter()
        .collect();
        assert_eq!(normals, expected);
    }

    #[test]
    fn prism_combinatorics() {
        for (a, b, c) in [(1i64, 0, 1), (2, 1, 3), (3, 5, 7), (2, 2, 4)] {
            let p = build(&prism_points(a, b, c)).unwrap();
            assert_eq!(p.vertices.len(), 6, "prism({a},{b},{c})");
            assert_eq!(p.edges.len(), 9);
            assert_eq!(p.facets.len(), 5);
            let g = num_integer::gcd(b, c);
            let normals: BTreeSet<Vec3i> = p.facets.iter().map(|f| f.normal.clone()).collect();
            let expected: BTreeSet<Vec3i> = [
                vec3(0, 0, 1),
                vec3(0, 0, -1),
                vec3(0, 1, 0),
                vec3(c / g, 0, -b / g),
                vec3(-c / g, -c / g, b / g),
            ]
            .into_iter()
            .collect();
            assert_eq!(normals, expected, "prism({a},{b},{c})");
        }
    }

    #[test]
    fn tetra_normals() {
        let p = build(&tetra_points(2, 3, 5)).unwrap();
        assert_eq!(p.facets.len(), 4);
        let normals: BTreeSet<Vec3i> = p.facets.iter().map(|f| f.normal.clone()).collect();
        let expected: BTreeSet<Vec3i> = [
            vec3(0, 0, 1),
            vec3(0, 1, 0),
            vec3(1, 0, 0),
            vec3(-15, -10, -6),
        ]
        .into_iter()
        .collect();
        assert_eq!(normals, expected);
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            build(&[vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0)]).map(|_| ()),
            Err(Error::TooFewPoints { got: 3 })
        );
        // Duplicates collapse before the count.
        assert_eq!(
            build(&[vec3(0, 0, 0), vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0)]).map(|_| ()),
            Err(Error::TooFewPoints { got: 3 })
        );
        let coplanar = vec![vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0), vec3(1, 1, 0)];
        assert_eq!(build(&coplanar).map(|_| ()), Err(Error::NotFullDimensional));
        let collinear = vec![vec3(0, 0, 0), vec3(1, 1, 1), vec3(2, 2, 2), vec3(3, 3, 3)];
        assert_eq!(build(&collinear).map(|_| ()), Err(Error::NotFullDimensional));
    }

    #[test]
    fn square_pyramid_is_not_simple() {
        let pts = vec![
            vec3(0, 0, 0),
            vec3(2, 0, 0),
            vec3(0, 2, 0),
            vec3(2, 2, 0),
            vec3(1, 1, 1),
        ];
        match build(&pts) {
            Err(Error::NotSimple {
                vertex,
                facet_count,
            }) => {
                assert_eq!(vertex, vec3(1, 1, 1));
                assert_eq!(facet_count, 4);
            }
            other => panic!("expected NotSimple, got {other:?}"),
        }
    }

    #[test]
    fn interior_and_boundary_inputs() {
        let mut pts = cube_points(2);
        pts.push(vec3(1, 1, 1)); // interior
        assert_eq!(
            build(&pts).map(|_| ()),
            Err(Error::NonVertexInput {
                point: vec3(1, 1, 1)
            })
        );
        let (p, dropped) = build_with(&pts, true).unwrap();
        assert_eq!(p.vertices.len(), 8);
        assert_eq!(dropped, vec![vec3(1, 1, 1)]);

        // A point interior to an edge and one interior to a facet.
        let mut pts = cube_points(2);
        pts.push(vec3(1, 0, 0));
        pts.push(vec3(1, 1, 0));
        let (p, dropped) = build_with(&pts, true).unwrap();
        assert_eq!(p.vertices.len(), 8);
        assert_eq!(dropped.len(), 2);
        assert!(build(&pts).is_err());
    }

    #[test]
    fn edge_rel_volume_examples() {
        let cube = build(&cube_points(1)).unwrap();
        for e in &cube.edges {
            assert_eq!(edge_rel_volume(&cube, e), int(1));
        }
        let tetra = build(&tetra_points(2, 3, 5)).unwrap();
        let o = tetra.vertices.iter().position(|v| *v == vec3(0, 0, 0)).unwrap();
        let p1 = tetra.vertices.iter().position(|v| *v == vec3(2, 0, 0)).unwrap();
        let e = tetra.edge_between(o, p1).unwrap();
        assert_eq!(edge_rel_volume(&tetra, &tetra.edges[e]), int(2));
        assert_eq!(content(&(&vec3(2, 4, 6) - &vec3(0, 0, 0))), int(2));
    }

    #[test]
    fn facet_rel_volume_examples() {
        let cube = build(&cube_points(1)).unwrap();
        for f in &cube.facets {
            assert_eq!(facet_rel_volume(&cube, f), ratio(1, 1));
        }
        // Facet z = 0 of the (2, 3, 5) tetrahedron: triangle (0,0),(2,0),(0,3).
        let tetra = build(&tetra_points(2, 3, 5)).unwrap();
        let f = tetra
            .facets
            .iter()
            .find(|f| f.normal == vec3(0, 0, 1))
            .unwrap();
        assert_eq!(facet_rel_volume(&tetra, f), ratio(3, 1));
        // Facet y = 0 rectangle of the prism (2, 1, 3).
        let prism = build(&prism_points(2, 1, 3)).unwrap();
        let f = prism
            .facets
            .iter()
            .find(|f| f.normal == vec3(3, 0, -1))
            .unwrap();
        assert_eq!(facet_rel_volume(&prism, f), ratio(2, 1));
    }

    /// Cross-check of the shoelace-in-lattice-basis area against the
    /// coordinate-free form |Σ det(Vᵢ, Vᵢ₊₁, n)| / (2⟨n, n⟩).
    #[test]
    fn facet_rel_volume_determinant_route() {
        for pts in [
            cube_points(3),
            tetra_points(2, 3, 5),
            prism_points(2, 1, 3),
            prism_points(3, 5, 7),
        ] {
            let p = build(&pts).unwrap();
            for f in &p.facets {
                let mut acc = Integer::zero();
                let r = f.cycle.len();
                for i in 0..r {
                    acc += det3(
                        &p.vertices[f.cycle[i]],
                        &p.vertices[f.cycle[(i + 1) % r]],
                        &f.normal,
                    );
                }
                let alt = Rational::new(acc.abs(), int(2) * f.normal.dot(&f.normal));
                assert_eq!(facet_rel_volume(&p, f), alt);
            }
        }
    }

    #[test]
    fn volume_examples() {
        assert_eq!(volume(&build(&cube_points(1)).unwrap()), ratio(1, 1));
        assert_eq!(volume(&build(&tetra_points(2, 3, 5)).unwrap()), ratio(5, 1));
        assert_eq!(volume(&build(&prism_points(1, 0, 1)).unwrap()), ratio(1, 2));
    }

    #[test]
    fn off_facet_neighbor_examples() {
        let cube = build(&cube_points(1)).unwrap();
        let bottom = cube
            .facets
            .iter()
            .position(|f| f.normal == vec3(0, 0, 1))
            .unwrap();
        let origin = cube.vertices.iter().position(|v| *v == vec3(0, 0, 0)).unwrap();
        let up = off_facet_neighbor(&cube, bottom, origin).unwrap();
        assert_eq!(cube.vertices[up], vec3(0, 0, 1));

        let prism = build(&prism_points(1, 2, 3)).unwrap();
        let bottom = prism
            .facets
            .iter()
            .position(|f| f.normal == vec3(0, 0, 1))
            .unwrap();
        let o = prism.vertices.iter().position(|v| *v == vec3(0, 0, 0)).unwrap();
        let q = off_facet_neighbor(&prism, bottom, o).unwrap();
        assert_eq!(prism.vertices[q], vec3(2, 0, 3));

        let tetra = build(&tetra_points(1, 1, 1)).unwrap();
        let f = tetra
            .facets
            .iter()
            .position(|f| f.normal == vec3(0, 0, 1))
            .unwrap();
        let o = tetra.vertices.iter().position(|v| *v == vec3(0, 0, 0)).unwrap();
        let q = off_facet_neighbor(&tetra, f, o).unwrap();
        assert_eq!(tetra.vertices[q], vec3(0, 0, 1));

        let apex = tetra.vertices.iter().position(|v| *v == vec3(0, 0, 1)).unwrap();
        assert_eq!(
            off_facet_neighbor(&tetra, f, apex),
            Err(Error::VertexNotOnFacet)
        );
    }

    #[test]
    fn facet_walk_cube_bottom() {
        let cube = build(&cube_points(1)).unwrap();
        let bottom = cube
            .facets
            .iter()
            .position(|f| f.normal == vec3(0, 0, 1))
            .unwrap();
        let w = facet_walk(&cube, bottom).unwrap();
        assert_eq!(w.len(), 4);
        for i in 0..4 {
            let eps = det3(
                &w.normal,
                &cube.facets[w.edge_facets[(i + 1) % 4]].normal,
                &cube.facets[w.edge_facets[i]].normal,
            );
            assert_eq!(eps, int(1));
        }
    }

    #[test]
    fn facet_walk_tetra_and_prism() {
        let tetra = build(&tetra_points(1, 1, 1)).unwrap();
        for fid in 0..tetra.facets.len() {
            let w = facet_walk(&tetra, fid).unwrap();
            assert_eq!(w.len(), 3);
            let mut others: Vec<usize> = w.edge_facets.clone();
            others.sort();
            let mut expected: Vec<usize> = (0..4).filter(|&f| f != fid).collect();
            expected.sort();
            assert_eq!(others, expected);
        }

        let prism = build(&prism_points(2, 1, 3)).unwrap();
        let side = prism
            .facets
            .iter()
            .position(|f| f.normal == vec3(0, 1, 0))
            .unwrap();
        let w = facet_walk(&prism, side).unwrap();
        assert_eq!(w.len(), 4);
        let b = prism.vertices.iter().position(|v| *v == vec3(0, 2, 0)).unwrap();
        let b2 = prism.vertices.iter().position(|v| *v == vec3(1, 2, 3)).unwrap();
        for &q in &w.off_verts {
            assert!(q == b || q == b2, "off-facet neighbors must be B or B'");
        }
    }

    #[test]
    fn euler_and_simplicity() {
        for pts in [
            cube_points(1),
            cube_points(3),
            tetra_points(1, 1, 1),
            tetra_points(2, 3, 5),
            prism_points(1, 0, 1),
            prism_points(3, 5, 7),
        ] {
            let p = build(&pts).unwrap();
            assert_eq!(
                p.vertices.len() + p.facets.len(),
                p.edges.len() + 2,
                "Euler"
            );
            assert_eq!(3 * p.vertices.len(), 2 * p.edges.len(), "simplicity");
            let two = Rational::from_integer(int(2));
            for f in &p.facets {
                assert_eq!(content(&f.normal), Integer::from(1));
                let area = facet_rel_volume(&p, f);
                assert!(area.is_positive());
                assert!((&area * &two).is_integer(), "area doubles to an integer");
            }
            assert!((volume(&p) * Rational::from_integer(int(6))).is_integer());
        }
    }

    #[test]
    fn unimodular_invariance() {
        let pts = prism_points(2, 1, 3);
        let p = build(&pts).unwrap();
        let vols = |p: &Polytope| {
            let mut ev: Vec<Integer> = p.edges.iter().map(|e| edge_rel_volume(p, e)).collect();
            ev.sort();
            let mut fv: Vec<Rational> = p.facets.iter().map(|f| facet_rel_volume(p, f)).collect();
            fv.sort();
            (ev, fv, volume(p))
        };
        let base = vols(&p);
        for seed in [1u64, 2, 9] {
            let image = oracle::unimodular_fuzz(&pts, seed);
            let q = build(&image).unwrap();
            assert_eq!(vols(&q), base, "seed {seed}");
        }
    }

    /// The walk invariants behind the correction denominators hold on every
    /// facet of every test polytope.
    #[test]
    fn walk_sign_conditions() {
        for pts in [
            cube_points(2),
            tetra_points(2, 3, 5),
            tetra_points(1, 1, 6),
            prism_points(2, 1, 3),
            prism_points(3, 3, 4),
        ] {
            let p = build(&pts).unwrap();
            for fid in 0..p.facets.len() {
                let w = facet_walk(&p, fid).unwrap();
                let r = w.len();
                for i in 0..r {
                    let eps = det3(
                        &w.normal,
                        &p.facets[w.edge_facets[(i + 1) % r]].normal,
                        &p.facets[w.edge_facets[i]].normal,
                    );
                    assert!(eps.is_positive());
                    let to_off = &p.vertices[w.off_verts[i]] - &p.vertices[w.verts[i]];
                    assert!(to_off.dot(&w.normal).is_positive());
                    let along = &p.vertices[w.verts[(i + 1) % r]] - &p.vertices[w.verts[i]];
                    assert!(along.dot(&p.facets[w.edge_facets[i]].normal).is_positive());
                }
            }
        }
    }

    #[test]
    fn rotated_walk_is_consistent() {
        let p = build(&prism_points(2, 1, 3)).unwrap();
        let w = facet_walk(&p, 0).unwrap();
        let r = w.len();
        let rot = w.rotated(2);
        assert_eq!(rot.verts[0], w.verts[2 % r]);
        assert_eq!(rot.edge_facets[0], w.edge_facets[2 % r]);
    }
}
