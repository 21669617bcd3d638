//! Convex lattice and rational polygons in the plane.
//!
//! Polygons are stored as counterclockwise vertex lists; facet data
//! (primitive inner normals with offsets) and lattice points are derived at
//! construction and never authoritative.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{Int, Rat};

/// An integer point of the plane.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LPoint {
    pub x: Int,
    pub y: Int,
}

impl LPoint {
    pub fn new(x: impl Into<Int>, y: impl Into<Int>) -> Self {
        LPoint { x: x.into(), y: y.into() }
    }

    pub fn to_rational(&self) -> RPoint {
        RPoint { x: Rat::from(self.x.clone()), y: Rat::from(self.y.clone()) }
    }
}

/// A rational point of the plane.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RPoint {
    pub x: Rat,
    pub y: Rat,
}

impl RPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        RPoint { x, y }
    }

    pub fn from_ints(x: impl Into<Int>, y: impl Into<Int>) -> Self {
        RPoint { x: Rat::from(x.into()), y: Rat::from(y.into()) }
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn to_lattice(&self) -> Option<LPoint> {
        self.is_integral().then(|| LPoint { x: self.x.to_integer(), y: self.y.to_integer() })
    }
}

fn cross_r(o: &RPoint, a: &RPoint, b: &RPoint) -> Rat {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

pub(crate) fn det2(a: &(Int, Int), b: &(Int, Int)) -> Int {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Divides an integer vector by the gcd of its entries.
pub(crate) fn primitive(v: (Int, Int)) -> (Int, Int) {
    let g = v.0.gcd(&v.1);
    if g.is_zero() || g.is_one() {
        v
    } else {
        (v.0 / &g, v.1 / g)
    }
}

/// Convex hull of rational points, counterclockwise, collinear points
/// dropped. Errors if the hull is not two-dimensional.
pub fn hull2d(points: &[RPoint]) -> Result<RationalPolygon> {
    let mut pts: Vec<RPoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return Err(Error::DegeneratePolytope);
    }
    fn build<'a>(iter: impl Iterator<Item = &'a RPoint>) -> Vec<RPoint> {
        let mut chain: Vec<RPoint> = Vec::new();
        for p in iter {
            while chain.len() >= 2
                && !cross_r(&chain[chain.len() - 2], &chain[chain.len() - 1], p).is_positive()
            {
                chain.pop();
            }
            chain.push(p.clone());
        }
        chain
    }
    let mut vertices = build(pts.iter());
    vertices.pop();
    vertices.extend(build(pts.iter().rev()));
    vertices.pop();
    if vertices.len() < 3 {
        return Err(Error::DegeneratePolytope);
    }
    Ok(RationalPolygon { vertices })
}

/// A convex rational polygon, counterclockwise vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolygon {
    vertices: Vec<RPoint>,
}

impl RationalPolygon {
    pub fn vertices(&self) -> &[RPoint] {
        &self.vertices
    }

    /// Facets as (primitive integer inner normal, rational offset) pairs, in
    /// edge order: every point p of the polygon satisfies <n, p> >= offset.
    pub fn facets(&self) -> Vec<((Int, Int), Rat)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = &self.vertices[i];
                let b = &self.vertices[(i + 1) % n];
                let dx = &b.x - &a.x;
                let dy = &b.y - &a.y;
                // Clear denominators, then reduce to a primitive normal.
                let scale = Rat::from(dx.denom().lcm(dy.denom()));
                let normal = primitive(((-&dy * &scale).to_integer(), (dx * &scale).to_integer()));
                let offset = Rat::from(normal.0.clone()) * &a.x + Rat::from(normal.1.clone()) * &a.y;
                (normal, offset)
            })
            .collect()
    }

    pub fn contains_origin_strictly(&self) -> bool {
        self.facets().iter().all(|(_, offset)| offset.is_negative())
    }

    /// Vertex sets compared as sets (the counterclockwise lists may start at
    /// different vertices).
    pub fn same_vertex_set(&self, other: &RationalPolygon) -> bool {
        let mut a = self.vertices.clone();
        let mut b = other.vertices.clone();
        a.sort();
        b.sort();
        a == b
    }
}

/// `{u : <u, v> >= -1 for all v in p}` as a vertex list.
///
/// Applying it twice returns the original polygon.
pub fn polar_dual(p: &RationalPolygon) -> Result<RationalPolygon> {
    let facets = p.facets();
    if facets.iter().any(|(_, offset)| !offset.is_negative()) {
        return Err(Error::OriginNotInterior);
    }
    let duals: Vec<RPoint> = facets
        .into_iter()
        .map(|((nx, ny), offset)| {
            let d = -offset;
            RPoint::new(Rat::from(nx) / d.clone(), Rat::from(ny) / d)
        })
        .collect();
    hull2d(&duals)
}

/// Facet of a lattice polygon: primitive inner normal with integer offset,
/// plus the edge's vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: (Int, Int),
    pub offset: Int,
    pub from: usize,
    pub to: usize,
}

/// A full-dimensional convex lattice polygon, counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolygon {
    vertices: Vec<LPoint>,
    facets: Vec<Facet>,
    lattice_points: Vec<LPoint>,
}

impl LatticePolygon {
    /// Hull of a set of integer points.
    pub fn hull(points: &[LPoint]) -> Result<Self> {
        let rational: Vec<RPoint> = points.iter().map(LPoint::to_rational).collect();
        let hull = hull2d(&rational)?;
        let vertices: Vec<LPoint> = hull
            .vertices()
            .iter()
            .map(|p| p.to_lattice().expect("hull of integer points has integer vertices"))
            .collect();
        Ok(Self::from_hull_vertices(vertices))
    }

    /// Internal constructor: `vertices` must already be a counterclockwise
    /// hull with no collinear triples.
    pub(crate) fn from_hull_vertices(vertices: Vec<LPoint>) -> Self {
        let n = vertices.len();
        let facets: Vec<Facet> = (0..n)
            .map(|i| {
                let a = &vertices[i];
                let b = &vertices[(i + 1) % n];
                let normal = primitive((-(&b.y - &a.y), &b.x - &a.x));
                let offset = &normal.0 * &a.x + &normal.1 * &a.y;
                Facet { normal, offset, from: i, to: (i + 1) % n }
            })
            .collect();
        let lattice_points = scan_lattice_points(&vertices, &facets);
        LatticePolygon { vertices, facets, lattice_points }
    }

    pub fn vertices(&self) -> &[LPoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn lattice_points(&self) -> &[LPoint] {
        &self.lattice_points
    }

    pub fn contains(&self, p: &LPoint) -> bool {
        self.facets.iter().all(|f| &f.normal.0 * &p.x + &f.normal.1 * &p.y >= f.offset)
    }

    pub fn contains_strictly(&self, p: &LPoint) -> bool {
        self.facets.iter().all(|f| &f.normal.0 * &p.x + &f.normal.1 * &p.y > f.offset)
    }

    pub fn interior_lattice_points(&self) -> Vec<LPoint> {
        self.lattice_points.iter().filter(|p| self.contains_strictly(p)).cloned().collect()
    }

    pub fn vertex_index(&self, v: &LPoint) -> Option<usize> {
        self.vertices.iter().position(|u| u == v)
    }

    pub fn to_rational(&self) -> RationalPolygon {
        RationalPolygon { vertices: self.vertices.iter().map(LPoint::to_rational).collect() }
    }

    /// True when every vertex cone is unimodular.
    pub fn is_smooth(&self) -> bool {
        self.vertices.iter().all(|v| {
            vertex_cone_type(self, v).map(|t| t.is_smooth()).unwrap_or(false)
        })
    }

    /// True when the canonical class of the normal fan is Cartier: every
    /// pair of adjacent facet normals admits an integral functional that is
    /// 1 on both.
    pub fn is_gorenstein(&self) -> bool {
        let n = self.facets.len();
        (0..n).all(|i| cone_admits_unit_functional(
            &self.facets[i].normal,
            &self.facets[(i + 1) % n].normal,
        ))
    }
}

/// Whether the cone spanned by two primitive integer vectors carries an
/// integral functional evaluating to 1 on both generators.
pub fn cone_admits_unit_functional(u: &(Int, Int), w: &(Int, Int)) -> bool {
    let det = det2(u, w);
    if det.is_zero() {
        return false;
    }
    ((&w.1 - &u.1) % &det).is_zero() && ((&u.0 - &w.0) % &det).is_zero()
}

/// Exactly the integer points of the closed polygon, scanned row by row.
pub fn lattice_points(p: &LatticePolygon) -> Vec<LPoint> {
    p.lattice_points().to_vec()
}

fn scan_lattice_points(vertices: &[LPoint], facets: &[Facet]) -> Vec<LPoint> {
    let ymin = vertices.iter().map(|v| &v.y).min().unwrap().clone();
    let ymax = vertices.iter().map(|v| &v.y).max().unwrap().clone();
    let mut out = Vec::new();
    let mut y = ymin;
    while y <= ymax {
        // Intersect the row with every half-plane: nx*x >= offset - ny*y.
        let mut lo: Option<Int> = None;
        let mut hi: Option<Int> = None;
        let mut empty = false;
        for f in facets {
            let rhs = &f.offset - &f.normal.1 * &y;
            let nx = &f.normal.0;
            if nx.is_zero() {
                if rhs.is_positive() {
                    empty = true;
                    break;
                }
            } else if nx.is_positive() {
                let bound = rhs.div_ceil(nx);
                lo = Some(lo.map_or(bound.clone(), |l: Int| l.max(bound)));
            } else {
                let bound = rhs.div_floor(nx);
                hi = Some(hi.map_or(bound.clone(), |h: Int| h.min(bound)));
            }
        }
        if !empty {
            if let (Some(lo), Some(hi)) = (lo, hi) {
                let mut x = lo;
                while x <= hi {
                    out.push(LPoint { x: x.clone(), y: y.clone() });
                    x += Int::one();
                }
            }
        }
        y += Int::one();
    }
    out
}

/// Cyclic quotient type `1/r (1, a)` of a vertex cone; `r = 1` means smooth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeType {
    pub r: Int,
    pub a: Int,
}

impl ConeType {
    pub fn smooth() -> Self {
        ConeType { r: Int::one(), a: Int::zero() }
    }

    pub fn is_smooth(&self) -> bool {
        self.r.is_one()
    }
}

impl std::fmt::Display for ConeType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_smooth() {
            write!(f, "smooth")
        } else {
            write!(f, "1/{}(1,{})", self.r, self.a)
        }
    }
}

/// Quotient type of the cone spanned by two primitive integer vectors.
///
/// The index `r` is the determinant of the sublattice spanned by the rays;
/// the weight `a` is normalized to `0 <= a < r` using the given ray order.
pub fn cone_type_of(u: (Int, Int), w: (Int, Int)) -> ConeType {
    let u = primitive(u);
    let w = primitive(w);
    let r = det2(&u, &w).abs();
    if r.is_one() {
        return ConeType::smooth();
    }
    // Unimodular map sending u to (0, 1); then the cone reads ((0,1),(r,-a)).
    let eg = u.0.extended_gcd(&u.1);
    let row1 = (-u.1.clone(), u.0.clone());
    let row2 = (eg.x.clone(), eg.y.clone());
    let mut x = &row1.0 * &w.0 + &row1.1 * &w.1;
    let y = &row2.0 * &w.0 + &row2.1 * &w.1;
    if x.is_negative() {
        x = -x;
    }
    debug_assert_eq!(x, r);
    let a = (-y).mod_floor(&r);
    debug_assert!(a.gcd(&r).is_one());
    ConeType { r, a }
}

/// Cyclic quotient descriptor of the polygon's cone at vertex `v`.
pub fn vertex_cone_type(p: &LatticePolygon, v: &LPoint) -> Result<ConeType> {
    let i = p
        .vertex_index(v)
        .ok_or_else(|| Error::NotAVertex { x: v.x.to_string(), y: v.y.to_string() })?;
    let n = p.vertices.len();
    let next = &p.vertices[(i + 1) % n];
    let prev = &p.vertices[(i + n - 1) % n];
    let u = (&next.x - &v.x, &next.y - &v.y);
    let w = (&prev.x - &v.x, &prev.y - &v.y);
    Ok(cone_type_of(u, w))
}

/// `Some(1)` when the polygon has a unique interior lattice point and its
/// translate to the origin is reflexive (all facet offsets -1); `None`
/// otherwise. No larger index is possible for a lattice polygon since facet
/// offsets scale with dilation.
pub fn gorenstein_index(p: &LatticePolygon) -> Option<u32> {
    let interior = p.interior_lattice_points();
    let [center] = interior.as_slice() else { return None };
    let translated: Vec<LPoint> =
        p.vertices().iter().map(|v| LPoint::new(&v.x - &center.x, &v.y - &center.y)).collect();
    let q = LatticePolygon::from_hull_vertices(translated);
    let minus_one = -Int::one();
    q.facets().iter().all(|f| f.offset == minus_one).then_some(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn lp(x: i64, y: i64) -> LPoint {
        LPoint::new(x, y)
    }

    fn rp(x: i64, y: i64) -> RPoint {
        RPoint::from_ints(x, y)
    }

    #[test]
    fn hull_drops_interior_point() {
        let pts =
            vec![rp(0, 0), rp(1, 0), rp(0, 1), RPoint::new(rat(1, 4), rat(1, 4))];
        let hull = hull2d(&pts).unwrap();
        assert_eq!(hull.vertices(), &[rp(0, 0), rp(1, 0), rp(0, 1)]);
    }

    #[test]
    fn hull_unit_square() {
        let pts = vec![rp(1, 1), rp(-1, 1), rp(1, -1), rp(-1, -1)];
        let hull = hull2d(&pts).unwrap();
        assert_eq!(hull.vertices().len(), 4);
    }

    #[test]
    fn hull_collinear_is_degenerate() {
        let pts = vec![rp(0, 0), rp(1, 1), rp(2, 2), rp(3, 3)];
        assert_eq!(hull2d(&pts), Err(Error::DegeneratePolytope));
    }

    #[test]
    fn hull_idempotent() {
        let pts = vec![rp(0, 0), rp(3, 1), rp(2, 4), rp(1, 1), rp(-1, 2)];
        let h1 = hull2d(&pts).unwrap();
        let h2 = hull2d(h1.vertices()).unwrap();
        assert!(h1.same_vertex_set(&h2));
    }

    #[test]
    fn unit_square_lattice_points() {
        let p = LatticePolygon::hull(&[lp(0, 0), lp(1, 0), lp(1, 1), lp(0, 1)]).unwrap();
        assert_eq!(p.lattice_points().len(), 4);
    }

    #[test]
    fn polar_dual_square_diamond() {
        let square =
            LatticePolygon::hull(&[lp(1, 1), lp(-1, 1), lp(-1, -1), lp(1, -1)]).unwrap();
        let dual = polar_dual(&square.to_rational()).unwrap();
        let diamond = hull2d(&[rp(1, 0), rp(0, 1), rp(-1, 0), rp(0, -1)]).unwrap();
        assert!(dual.same_vertex_set(&diamond));
        let bidual = polar_dual(&dual).unwrap();
        assert!(bidual.same_vertex_set(&square.to_rational()));
    }

    #[test]
    fn polar_dual_needs_interior_origin() {
        let p = LatticePolygon::hull(&[lp(0, 0), lp(1, 0), lp(0, 1)]).unwrap();
        assert_eq!(polar_dual(&p.to_rational()), Err(Error::OriginNotInterior));
    }

    #[test]
    fn cone_types() {
        let square = LatticePolygon::hull(&[lp(0, 0), lp(1, 0), lp(1, 1), lp(0, 1)]).unwrap();
        let t = vertex_cone_type(&square, &lp(0, 0)).unwrap();
        assert!(t.is_smooth());
        assert_eq!(t, ConeType { r: int(1), a: int(0) });

        // Cone spanned by (0,1) and (2,-1) has index 2, type 1/2(1,1).
        let t = cone_type_of((int(0), int(1)), (int(2), int(-1)));
        assert_eq!(t, ConeType { r: int(2), a: int(1) });

        let err = vertex_cone_type(&square, &lp(5, 5));
        assert!(matches!(err, Err(Error::NotAVertex { .. })));
    }

    #[test]
    fn gorenstein_examples() {
        let square =
            LatticePolygon::hull(&[lp(1, 1), lp(-1, 1), lp(-1, -1), lp(1, -1)]).unwrap();
        assert_eq!(gorenstein_index(&square), Some(1));

        // No interior lattice point at all.
        let small = LatticePolygon::hull(&[lp(0, 0), lp(1, 0), lp(0, 1)]).unwrap();
        assert_eq!(gorenstein_index(&small), None);

        // (1,1) lies on the hypotenuse of conv{(0,0),(2,0),(0,2)}, so there
        // is no interior lattice point and no reflexive translate.
        let two_delta = LatticePolygon::hull(&[lp(0, 0), lp(2, 0), lp(0, 2)]).unwrap();
        assert!(two_delta.interior_lattice_points().is_empty());
        assert_eq!(gorenstein_index(&two_delta), None);

        // 3x dilation of the unit triangle, recentred, is reflexive.
        let three_delta =
            LatticePolygon::hull(&[lp(-1, -1), lp(2, -1), lp(-1, 2)]).unwrap();
        assert_eq!(gorenstein_index(&three_delta), Some(1));
    }

    #[test]
    fn row_scan_matches_membership_scan() {
        let p = LatticePolygon::hull(&[lp(-2, -1), lp(0, -1), lp(1, 0), lp(1, 1), lp(0, 1)])
            .unwrap();
        let mut brute = Vec::new();
        for y in -3..=3i64 {
            for x in -4..=4i64 {
                if p.contains(&lp(x, y)) {
                    brute.push(lp(x, y));
                }
            }
        }
        let mut scanned = p.lattice_points().to_vec();
        scanned.sort();
        brute.sort();
        assert_eq!(scanned, brute);
    }
}
