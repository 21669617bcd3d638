//! The rank-two shearing polyptych lattice: mutation map, tropical points,
//! PL polytopes with their two chart images, facet correspondence, PL
//! vertices, sink/source faces, and the adapted-basis monomial table.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{hull2d, LPoint, LatticePolygon, RPoint};
use crate::{Int, Rat};

/// Shear parameter of the lattice; restricted to `s >= 1`.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash)]
pub struct ShearParam(u32);

impl ShearParam {
    pub fn new(s: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidShearParameter);
        }
        Ok(ShearParam(s))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn to_int(self) -> Int {
        Int::from(self.0)
    }
}

/// Chart label of the two-chart lattice.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum Chart {
    One,
    Two,
}

impl Chart {
    pub fn index(self) -> u8 {
        match self {
            Chart::One => 1,
            Chart::Two => 2,
        }
    }
}

/// The mutation `(x, y) -> (-x, y)` for `y >= 0`, `(sy - x, y)` for
/// `y <= 0`. Both branch formulas agree on `y = 0`, the second coordinate is
/// preserved, and the same formula transports either chart to the other, so
/// the map is an involution.
pub fn mutate(s: ShearParam, pt: &LPoint) -> LPoint {
    if pt.y.is_negative() {
        LPoint { x: s.to_int() * &pt.y - &pt.x, y: pt.y.clone() }
    } else {
        LPoint { x: -pt.x.clone(), y: pt.y.clone() }
    }
}

pub(crate) fn mutate_rational(s: ShearParam, pt: &RPoint) -> RPoint {
    if pt.y.is_negative() {
        RPoint { x: Rat::from(s.to_int()) * &pt.y - &pt.x, y: pt.y.clone() }
    } else {
        RPoint { x: -pt.x.clone(), y: pt.y.clone() }
    }
}

/// A tropical point `(a, b, c)` with `a + b = min(s*c, 0)`.
///
/// As a piecewise-linear functional on chart 1 it evaluates to
/// `c*x + a*y` for `y >= 0` and `c*x - b*y` for `y <= 0`; each tropical
/// point cuts out one boundary divisor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropicalPoint {
    pub a: Int,
    pub b: Int,
    pub c: Int,
}

impl TropicalPoint {
    pub fn new(s: ShearParam, a: impl Into<Int>, b: impl Into<Int>, c: impl Into<Int>) -> Result<Self> {
        let p = TropicalPoint { a: a.into(), b: b.into(), c: c.into() };
        p.validate(s)?;
        Ok(p)
    }

    pub fn validate(&self, s: ShearParam) -> Result<()> {
        let sc = s.to_int() * &self.c;
        let expected = sc.min(Int::zero());
        if &self.a + &self.b != expected {
            return Err(Error::InvalidTropicalPoint {
                a: self.a.to_string(),
                b: self.b.to_string(),
                c: self.c.to_string(),
                s: s.get(),
            });
        }
        // A non-primitive point is a scaled copy of the primitive one; the
        // divisor dictionary (orders of vanishing, class-group rows) needs
        // the primitive representative, exactly like ray generators of a
        // fan.
        let g = num_integer::Integer::gcd(&num_integer::Integer::gcd(&self.a, &self.b), &self.c);
        if !g.is_one() {
            return Err(Error::NonPrimitiveTropicalPoint {
                a: self.a.to_string(),
                b: self.b.to_string(),
                c: self.c.to_string(),
                g: g.to_string(),
            });
        }
        Ok(())
    }

    /// The linear piece active on `y >= 0`, as a chart-1 covector.
    pub fn upper_piece(&self) -> (Int, Int) {
        (self.c.clone(), self.a.clone())
    }

    /// The linear piece active on `y <= 0`.
    pub fn lower_piece(&self) -> (Int, Int) {
        (self.c.clone(), -self.b.clone())
    }

    /// Evaluation at a chart-1 point.
    pub fn eval(&self, pt: &LPoint) -> Int {
        if pt.y.is_negative() {
            &self.c * &pt.x - &self.b * &pt.y
        } else {
            &self.c * &pt.x + &self.a * &pt.y
        }
    }

    /// Evaluation at a chart-2 point (pull back through the mutation).
    pub fn eval_chart2(&self, s: ShearParam, pt: &LPoint) -> Int {
        self.eval(&mutate(s, pt))
    }
}

/// Free-standing form of [`TropicalPoint::eval`].
pub fn eval_tropical(p: &TropicalPoint, pt: &LPoint) -> Int {
    p.eval(pt)
}

/// An element of the lattice, recorded in both charts. The coordinates
/// satisfy `x + x' = min(0, s*y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PLPoint {
    pub chart1: LPoint,
    pub chart2: LPoint,
}

impl PLPoint {
    pub fn from_chart1(s: ShearParam, chart1: LPoint) -> Self {
        let chart2 = mutate(s, &chart1);
        PLPoint { chart1, chart2 }
    }
}

/// One defining inequality `p(m) >= level` with `level < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub point: TropicalPoint,
    pub level: Int,
}

/// Chart edges on which one constraint is tight: one edge, or two when the
/// facet bends across `y = 0` in that chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetImages {
    pub chart1_edges: Vec<usize>,
    pub chart2_edges: Vec<usize>,
}

/// A face of the polytope singled out by the vertical coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FaceTag {
    /// Index (into the sorted constraints) of the facet forming the face.
    Divisor(usize),
    /// The face is a single vertex.
    Nodal(PLPoint),
}

/// Sink and source: the faces of maximal resp. minimal `y`. The vertical
/// coordinate is chart-independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SinkSource {
    pub sink: FaceTag,
    pub source: FaceTag,
}

/// A polytope in the shearing lattice together with its two chart images.
///
/// Constraints are canonicalized so that all `c >= 0` entries precede all
/// `c < 0` entries (stable within each group); `user_order[k]` records where
/// sorted constraint `k` sat in the caller's list.
#[derive(Debug, Clone)]
pub struct PLPolytope {
    s: ShearParam,
    constraints: Vec<Constraint>,
    user_order: Vec<usize>,
    split_index: usize,
    chart1: LatticePolygon,
    chart2: LatticePolygon,
    facet_map: Vec<FacetImages>,
}

/// Builds the polytope `{m : p_i(m) >= level_i}` and both chart images,
/// enforcing every validity rule.
pub fn build_polytope(s: ShearParam, constraints: &[(TropicalPoint, Int)]) -> Result<PLPolytope> {
    PLPolytope::build(s, constraints)
}

impl PLPolytope {
    pub fn build(s: ShearParam, input: &[(TropicalPoint, Int)]) -> Result<Self> {
        for (index, (point, level)) in input.iter().enumerate() {
            point.validate(s)?;
            if !level.is_negative() {
                return Err(Error::NonNegativeLevel { index, level: level.to_string() });
            }
        }
        for (index, (point, level)) in input.iter().enumerate() {
            if input[..index].iter().any(|(p, l)| p == point && l == level) {
                return Err(Error::RedundantConstraint { index });
            }
        }

        // Canonical order: nonnegative c first, stable within groups.
        let mut order: Vec<usize> = (0..input.len()).collect();
        order.sort_by_key(|&i| input[i].0.c.is_negative());
        let constraints: Vec<Constraint> = order
            .iter()
            .map(|&i| Constraint { point: input[i].0.clone(), level: input[i].1.clone() })
            .collect();
        let split_index = constraints.iter().filter(|c| !c.point.c.is_negative()).count();

        // The PL functional is the min of its two linear pieces, so the
        // region is a plain half-plane intersection in chart 1.
        let mut pieces: Vec<((Int, Int), Int)> = Vec::new();
        for c in &constraints {
            let upper = c.point.upper_piece();
            let lower = c.point.lower_piece();
            pieces.push((upper.clone(), c.level.clone()));
            if upper != lower {
                pieces.push((lower, c.level.clone()));
            }
        }

        // Bounded iff the recession cone of the pieces is trivial.
        for (n, _) in &pieces {
            for d in [(-n.1.clone(), n.0.clone()), (n.1.clone(), -n.0.clone())] {
                if d.0.is_zero() && d.1.is_zero() {
                    continue;
                }
                if pieces.iter().all(|(m, _)| (&m.0 * &d.0 + &m.1 * &d.1) >= Int::zero()) {
                    return Err(Error::Unbounded);
                }
            }
        }

        // Everything below up to the polygon constructions needs only hull
        // vertices, so rejected inputs never pay for a lattice scan.
        let vertices1 = half_plane_vertices(&pieces)?;

        // Tightness of each constraint on chart 1 and derived edges.
        let chart1_tight: Vec<Vec<usize>> = constraints
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let values: Vec<Int> = vertices1.iter().map(|v| c.point.eval(v)).collect();
                tight_edges(&values, &c.level, user_index(&order, k))
            })
            .collect::<Result<_>>()?;
        check_edge_cover(&chart1_tight, vertices1.len(), &order)?;

        // A chart-1 vertex on y = 0 supporting two or more facets would be a
        // PL vertex inside no linear domain; every chart-transfer statement
        // (local rings, singularity types, the intersection isometry) breaks
        // there, so such polytopes are rejected.
        for v in &vertices1 {
            if v.y.is_zero() {
                let tight = constraints
                    .iter()
                    .filter(|c| c.point.eval(v) == c.level)
                    .count();
                if tight >= 2 {
                    return Err(Error::VertexOnMutationWall { x: v.x.to_string(), count: tight });
                }
            }
        }

        let vertices2 = transport_boundary(s, &vertices1)?;
        let chart2_tight: Vec<Vec<usize>> = constraints
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let values: Vec<Int> =
                    vertices2.iter().map(|v| c.point.eval_chart2(s, v)).collect();
                tight_edges(&values, &c.level, user_index(&order, k))
            })
            .collect::<Result<_>>()?;
        check_edge_cover(&chart2_tight, vertices2.len(), &order)?;

        let chart1 = LatticePolygon::from_hull_vertices(vertices1);
        let chart2 = LatticePolygon::from_hull_vertices(vertices2);

        // Independent route: chart 2 must also be the hull of the mutated
        // chart-1 lattice points, and the point counts must agree.
        let transported: Vec<LPoint> =
            chart1.lattice_points().iter().map(|p| mutate(s, p)).collect();
        let hull = LatticePolygon::hull(&transported)
            .map_err(|_| Error::Internal("mutated lattice points are degenerate".into()))?;
        if hull.vertices().len() != chart2.vertices().len()
            || hull.vertices().iter().any(|v| chart2.vertex_index(v).is_none())
        {
            let v = &hull.vertices()[0];
            return Err(Error::NonConvexChartImage { x: v.x.to_string(), y: v.y.to_string() });
        }
        if chart1.lattice_points().len() != chart2.lattice_points().len() {
            return Err(Error::Internal("chart lattice point counts differ".into()));
        }

        let facet_map = chart1_tight
            .into_iter()
            .zip(chart2_tight)
            .map(|(chart1_edges, chart2_edges)| FacetImages { chart1_edges, chart2_edges })
            .collect();

        Ok(PLPolytope { s, constraints, user_order: order, split_index, chart1, chart2, facet_map })
    }

    pub fn s(&self) -> ShearParam {
        self.s
    }

    /// Constraints in canonical order.
    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Number of constraints with `c >= 0` (they come first).
    pub fn split_index(&self) -> usize {
        self.split_index
    }

    /// `user_order()[k]` is the caller-side index of sorted constraint `k`.
    pub fn user_order(&self) -> &[usize] {
        &self.user_order
    }

    pub fn n(&self) -> usize {
        self.constraints.len()
    }

    pub fn chart1(&self) -> &LatticePolygon {
        &self.chart1
    }

    pub fn chart2(&self) -> &LatticePolygon {
        &self.chart2
    }

    pub fn chart(&self, chart: Chart) -> &LatticePolygon {
        match chart {
            Chart::One => &self.chart1,
            Chart::Two => &self.chart2,
        }
    }

    pub fn facet_map(&self) -> &[FacetImages] {
        &self.facet_map
    }

    /// The same polytope with all levels multiplied by `k >= 1`.
    pub fn dilate(&self, k: u32) -> Result<PLPolytope> {
        let input: Vec<(TropicalPoint, Int)> = self
            .constraints
            .iter()
            .map(|c| (c.point.clone(), &c.level * Int::from(k)))
            .collect();
        PLPolytope::build(self.s, &input)
    }

    /// Lattice points of the polytope as PL points (chart-1 order).
    pub fn pl_lattice_points(&self) -> Vec<PLPoint> {
        self.chart1
            .lattice_points()
            .iter()
            .map(|p| PLPoint::from_chart1(self.s, p.clone()))
            .collect()
    }

    /// Vertices of the polytope that remain vertices in both chart images.
    pub fn pl_vertices(&self) -> Vec<PLPoint> {
        self.chart1
            .vertices()
            .iter()
            .filter_map(|v| {
                let image = mutate(self.s, v);
                self.chart2
                    .vertex_index(&image)
                    .map(|_| PLPoint { chart1: v.clone(), chart2: image })
            })
            .collect()
    }

    /// The faces of maximal and minimal `y`, tagged as a boundary divisor or
    /// a nodal vertex.
    pub fn sink_source(&self) -> SinkSource {
        SinkSource {
            sink: self.extremal_face(true),
            source: self.extremal_face(false),
        }
    }

    fn extremal_face(&self, max: bool) -> FaceTag {
        let vs = self.chart1.vertices();
        let best = if max {
            vs.iter().map(|v| &v.y).max().unwrap()
        } else {
            vs.iter().map(|v| &v.y).min().unwrap()
        }
        .clone();
        let at: Vec<usize> =
            (0..vs.len()).filter(|&i| vs[i].y == best).collect();
        if at.len() == 1 {
            return FaceTag::Nodal(PLPoint::from_chart1(self.s, vs[at[0]].clone()));
        }
        debug_assert_eq!(at.len(), 2);
        let n = vs.len();
        let edge = if (at[0] + 1) % n == at[1] { at[0] } else { at[1] };
        let facet = self
            .facet_map
            .iter()
            .position(|f| f.chart1_edges.contains(&edge))
            .expect("every chart edge belongs to a facet");
        FaceTag::Divisor(facet)
    }
}

fn user_index(order: &[usize], sorted: usize) -> usize {
    order[sorted]
}

/// Exact vertex enumeration for `{m : <n_i, m> >= l_i}`: pairwise line
/// intersections filtered by feasibility, then the hull.
fn half_plane_vertices(pieces: &[((Int, Int), Int)]) -> Result<Vec<LPoint>> {
    let mut candidates: Vec<RPoint> = Vec::new();
    for (i, ((ax, ay), ao)) in pieces.iter().enumerate() {
        for ((bx, by), bo) in pieces.iter().skip(i + 1) {
            let det = ax * by - ay * bx;
            if det.is_zero() {
                continue;
            }
            let det = Rat::from(det);
            let x = Rat::from(ao * by - bo * ay) / det.clone();
            let y = Rat::from(ax * bo - bx * ao) / det;
            let p = RPoint::new(x, y);
            let feasible = pieces.iter().all(|((nx, ny), o)| {
                Rat::from(nx.clone()) * &p.x + Rat::from(ny.clone()) * &p.y >= Rat::from(o.clone())
            });
            if feasible {
                candidates.push(p);
            }
        }
    }
    let hull = hull2d(&candidates)
        .map_err(|_| Error::Internal("bounded feasible region has a degenerate hull".into()))?;
    let mut vertices = Vec::with_capacity(hull.vertices().len());
    for v in hull.vertices() {
        match v.to_lattice() {
            Some(p) => vertices.push(p),
            None => {
                return Err(Error::NonIntegralVertex {
                    chart: 1,
                    x: v.x.to_string(),
                    y: v.y.to_string(),
                })
            }
        }
    }
    Ok(vertices)
}

/// Tight edges of one constraint: the vertices where the value meets the
/// level must form an arc of the boundary supporting 1 or 2 edges.
fn tight_edges(values: &[Int], level: &Int, user_index: usize) -> Result<Vec<usize>> {
    let n = values.len();
    let min = values.iter().min().expect("polygon has vertices");
    if min != level {
        return Err(Error::RedundantConstraint { index: user_index });
    }
    let tight: Vec<bool> = values.iter().map(|v| v == level).collect();
    let count = tight.iter().filter(|&&t| t).count();
    let transitions = (0..n).filter(|&i| tight[i] != tight[(i + 1) % n]).count();
    if count < 2 || transitions != 2 {
        return Err(Error::RedundantConstraint { index: user_index });
    }
    let edges: Vec<usize> = (0..n).filter(|&i| tight[i] && tight[(i + 1) % n]).collect();
    if edges.is_empty() || edges.len() > 2 {
        return Err(Error::RedundantConstraint { index: user_index });
    }
    Ok(edges)
}

fn check_edge_cover(per_constraint: &[Vec<usize>], edge_count: usize, order: &[usize]) -> Result<()> {
    let mut seen = vec![false; edge_count];
    for (k, edges) in per_constraint.iter().enumerate() {
        for &e in edges {
            if seen[e] {
                return Err(Error::RedundantConstraint { index: user_index(order, k) });
            }
            seen[e] = true;
        }
    }
    if seen.iter().all(|&s| s) {
        Ok(())
    } else {
        Err(Error::Internal("some chart edge is tight for no constraint".into()))
    }
}

/// Chart-2 vertices from the chart-1 boundary cycle: insert the exact
/// `y = 0` crossings, push everything through the mutation, and check
/// convexity of the image.
fn transport_boundary(s: ShearParam, vs: &[LPoint]) -> Result<Vec<LPoint>> {
    let n = vs.len();
    let mut cycle: Vec<RPoint> = Vec::new();
    for i in 0..n {
        let a = &vs[i];
        let b = &vs[(i + 1) % n];
        cycle.push(a.to_rational());
        if (a.y.is_negative() && b.y.is_positive()) || (a.y.is_positive() && b.y.is_negative()) {
            let t = Rat::new(-a.y.clone(), &b.y - &a.y);
            let x = Rat::from(a.x.clone()) + t * Rat::from(&b.x - &a.x);
            cycle.push(RPoint::new(x, Rat::zero()));
        }
    }
    let mut image: Vec<RPoint> = cycle.iter().map(|p| mutate_rational(s, p)).collect();
    // The mutation reverses orientation; flip back to counterclockwise.
    image.reverse();

    let m = image.len();
    let mut vertices: Vec<RPoint> = Vec::new();
    for i in 0..m {
        let prev = &image[(i + m - 1) % m];
        let cur = &image[i];
        let next = &image[(i + 1) % m];
        let turn = (&cur.x - &prev.x) * (&next.y - &cur.y) - (&cur.y - &prev.y) * (&next.x - &cur.x);
        if turn.is_negative() {
            return Err(Error::NonConvexChartImage {
                x: cur.x.to_string(),
                y: cur.y.to_string(),
            });
        }
        if turn.is_positive() {
            vertices.push(cur.clone());
        }
    }
    let mut lattice = Vec::with_capacity(vertices.len());
    for v in &vertices {
        match v.to_lattice() {
            Some(p) => lattice.push(p),
            None => {
                return Err(Error::NonIntegralVertex {
                    chart: 2,
                    x: v.x.to_string(),
                    y: v.y.to_string(),
                })
            }
        }
    }
    if lattice.len() < 3 {
        return Err(Error::Internal("chart 2 image is degenerate".into()));
    }
    Ok(lattice)
}

/// A Laurent monomial in `x1`, `x2`, `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub x1: Int,
    pub x2: Int,
    pub y: Int,
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (name, e) in [("x1", &self.x1), ("x2", &self.x2), ("y", &self.y)] {
            if e.is_zero() {
                continue;
            }
            if e == &Int::from(1) {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// The adapted-basis monomial attached to the lattice point `(a, b)` of the
/// given chart:
///
/// | row      | chart 1            | chart 2        |
/// |----------|--------------------|----------------|
/// | `b >= 0` | `x1^b y^-a`        | `x1^b y^a`     |
/// | `b <= 0` | `x2^-b y^(s*b-a)`  | `x2^-b y^a`    |
///
/// The two rows agree at `b = 0`.
pub fn adapted_monomial(chart: Chart, a: &Int, b: &Int, s: ShearParam) -> Monomial {
    let zero = Int::zero();
    match chart {
        Chart::One => {
            if b >= &zero {
                Monomial { x1: b.clone(), x2: zero, y: -a.clone() }
            } else {
                Monomial { x1: zero, x2: -b.clone(), y: s.to_int() * b - a }
            }
        }
        Chart::Two => {
            if b >= &zero {
                Monomial { x1: b.clone(), x2: zero, y: a.clone() }
            } else {
                Monomial { x1: zero, x2: -b.clone(), y: a.clone() }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn s(v: u32) -> ShearParam {
        ShearParam::new(v).unwrap()
    }

    fn lp(x: i64, y: i64) -> LPoint {
        LPoint::new(x, y)
    }

    pub(crate) fn e1() -> PLPolytope {
        let s1 = s(1);
        let pts = [
            (TropicalPoint::new(s1, 0, 0, 1).unwrap(), int(-1)),
            (TropicalPoint::new(s1, 1, -1, 0).unwrap(), int(-1)),
            (TropicalPoint::new(s1, -1, 1, 0).unwrap(), int(-1)),
            (TropicalPoint::new(s1, -1, 0, -1).unwrap(), int(-1)),
        ];
        PLPolytope::build(s1, &pts).unwrap()
    }

    pub(crate) fn e2() -> PLPolytope {
        let s2 = s(2);
        let pts = [
            (TropicalPoint::new(s2, 0, 0, 1).unwrap(), int(-1)),
            (TropicalPoint::new(s2, 1, -1, 0).unwrap(), int(-1)),
            (TropicalPoint::new(s2, -1, 1, 0).unwrap(), int(-1)),
            (TropicalPoint::new(s2, -1, -1, -1).unwrap(), int(-1)),
        ];
        PLPolytope::build(s2, &pts).unwrap()
    }

    #[test]
    fn mutate_examples() {
        assert_eq!(mutate(s(1), &lp(2, 3)), lp(-2, 3));
        assert_eq!(mutate(s(2), &lp(7, 0)), lp(-7, 0));
        let once = mutate(s(1), &lp(1, -1));
        assert_eq!(once, lp(-2, -1));
        assert_eq!(mutate(s(1), &once), lp(1, -1));
    }

    #[test]
    fn eval_tropical_examples() {
        let p = TropicalPoint::new(s(1), 1, -1, 0).unwrap();
        assert_eq!(eval_tropical(&p, &lp(5, -2)), int(-2));
        assert_eq!(eval_tropical(&p, &lp(7, 0)), int(0));
        let q = TropicalPoint::new(s(1), 0, 0, 1).unwrap();
        assert_eq!(eval_tropical(&q, &lp(-1, 7)), int(-1));
    }

    #[test]
    fn invalid_tropical_point_rejected() {
        assert!(matches!(
            TropicalPoint::new(s(1), 1, 1, 1),
            Err(Error::InvalidTropicalPoint { .. })
        ));
        // For c < 0 the sum must be s*c.
        assert!(TropicalPoint::new(s(2), -1, -1, -1).is_ok());
        assert!(TropicalPoint::new(s(1), -1, -1, -1).is_err());
    }

    #[test]
    fn e1_chart_vertices() {
        let p = e1();
        let c1: Vec<LPoint> = p.chart1().vertices().to_vec();
        for v in [lp(-1, -1), lp(1, -1), lp(1, 0), lp(0, 1), lp(-1, 1)] {
            assert!(c1.contains(&v), "chart1 missing {v:?}");
        }
        assert_eq!(c1.len(), 5);
        let c2: Vec<LPoint> = p.chart2().vertices().to_vec();
        for v in [lp(-2, -1), lp(0, -1), lp(1, 0), lp(1, 1), lp(0, 1)] {
            assert!(c2.contains(&v), "chart2 missing {v:?}");
        }
        assert_eq!(c2.len(), 5);
        assert_eq!(p.chart1().lattice_points().len(), 8);
        assert_eq!(p.chart2().lattice_points().len(), 8);
    }

    #[test]
    fn e2_chart_vertices() {
        let p = e2();
        let c1: Vec<LPoint> = p.chart1().vertices().to_vec();
        for v in [lp(-1, -1), lp(0, -1), lp(1, 0), lp(0, 1), lp(-1, 1)] {
            assert!(c1.contains(&v), "chart1 missing {v:?}");
        }
        assert_eq!(c1.len(), 5);
        let c2: Vec<LPoint> = p.chart2().vertices().to_vec();
        for v in [lp(-2, -1), lp(-1, -1), lp(1, 0), lp(1, 1), lp(0, 1)] {
            assert!(c2.contains(&v), "chart2 missing {v:?}");
        }
        assert_eq!(c2.len(), 5);
    }

    #[test]
    fn single_constraint_is_unbounded() {
        let s1 = s(1);
        let pts = [(TropicalPoint::new(s1, 0, 0, 1).unwrap(), int(-1))];
        assert_eq!(PLPolytope::build(s1, &pts).unwrap_err(), Error::Unbounded);
    }

    #[test]
    fn nonnegative_level_rejected() {
        let s1 = s(1);
        let pts = [(TropicalPoint::new(s1, 0, 0, 1).unwrap(), int(0))];
        assert!(matches!(
            PLPolytope::build(s1, &pts),
            Err(Error::NonNegativeLevel { index: 0, .. })
        ));
    }

    #[test]
    fn redundant_constraint_rejected() {
        let s1 = s(1);
        // E1 plus a strictly slack copy of the x >= -2 half-plane.
        let pts = [
            (TropicalPoint::new(s1, 0, 0, 1).unwrap(), int(-1)),
            (TropicalPoint::new(s1, 1, -1, 0).unwrap(), int(-1)),
            (TropicalPoint::new(s1, -1, 1, 0).unwrap(), int(-1)),
            (TropicalPoint::new(s1, -1, 0, -1).unwrap(), int(-1)),
            (TropicalPoint::new(s1, 0, 0, 1).unwrap(), int(-2)),
        ];
        assert_eq!(
            PLPolytope::build(s1, &pts).unwrap_err(),
            Error::RedundantConstraint { index: 4 }
        );
    }

    #[test]
    fn e1_pl_vertices() {
        let p = e1();
        let pls = p.pl_vertices();
        let coords: Vec<LPoint> = pls.iter().map(|v| v.chart1.clone()).collect();
        assert_eq!(pls.len(), 4);
        for v in [lp(-1, -1), lp(1, -1), lp(0, 1), lp(-1, 1)] {
            assert!(coords.contains(&v));
        }
        assert!(!coords.contains(&lp(1, 0)));
    }

    #[test]
    fn e2_pl_vertices() {
        let p = e2();
        let coords: Vec<LPoint> = p.pl_vertices().iter().map(|v| v.chart1.clone()).collect();
        assert_eq!(coords.len(), 4);
        assert!(!coords.contains(&lp(1, 0)));
    }

    #[test]
    fn e1_sink_source() {
        let p = e1();
        let ss = p.sink_source();
        assert_eq!(ss.sink, FaceTag::Divisor(2));
        assert_eq!(ss.source, FaceTag::Divisor(1));
    }

    #[test]
    fn e2_sink_source() {
        let p = e2();
        let ss = p.sink_source();
        assert_eq!(ss.sink, FaceTag::Divisor(2));
        assert_eq!(ss.source, FaceTag::Divisor(1));
    }

    #[test]
    fn nodal_sink_detected() {
        // Triangle with a unique top vertex: x >= -1, y >= -1, and a c = -1
        // facet cutting the top corner.
        let s1 = s(1);
        let pts = [
            (TropicalPoint::new(s1, 0, 0, 1).unwrap(), int(-1)),
            (TropicalPoint::new(s1, 1, -1, 0).unwrap(), int(-1)),
            (TropicalPoint::new(s1, -1, 0, -1).unwrap(), int(-1)),
        ];
        let p = PLPolytope::build(s1, &pts).unwrap();
        let ss = p.sink_source();
        assert!(matches!(ss.sink, FaceTag::Nodal(_)));
        assert_eq!(ss.source, FaceTag::Divisor(1));
    }

    #[test]
    fn e1_facet_map_splits_d4() {
        let p = e1();
        let fm = p.facet_map();
        assert_eq!(fm.len(), 4);
        assert_eq!(fm[3].chart1_edges.len(), 2, "D4 bends in chart 1");
        assert_eq!(fm[3].chart2_edges.len(), 1, "D4 is straight in chart 2");
        let split_normals: Vec<(Int, Int)> = fm[3]
            .chart1_edges
            .iter()
            .map(|&e| p.chart1().facets()[e].normal.clone())
            .collect();
        assert!(split_normals.contains(&(int(-1), int(0))));
        assert!(split_normals.contains(&(int(-1), int(-1))));
        // D1 (x >= -1) is the mirrored case: straight in chart 1, bent in 2.
        assert_eq!(fm[0].chart1_edges.len(), 1);
        assert_eq!(fm[0].chart2_edges.len(), 2);
    }

    #[test]
    fn adapted_monomial_table() {
        let m = adapted_monomial(Chart::Two, &int(2), &int(-1), s(1));
        assert_eq!(m.to_string(), "x2*y^2");
        let m = adapted_monomial(Chart::One, &int(2), &int(-1), s(2));
        assert_eq!(m.to_string(), "x2*y^-4");
        let m = adapted_monomial(Chart::One, &int(0), &int(0), s(3));
        assert_eq!(m.to_string(), "1");
        let m = adapted_monomial(Chart::Two, &int(0), &int(0), s(3));
        assert_eq!(m.to_string(), "1");
    }

    #[test]
    fn constraint_sorting_and_permutation() {
        let s1 = s(1);
        // Same data as E1 but listed with the negative-c constraint first.
        let pts = [
            (TropicalPoint::new(s1, -1, 0, -1).unwrap(), int(-1)),
            (TropicalPoint::new(s1, 0, 0, 1).unwrap(), int(-1)),
            (TropicalPoint::new(s1, 1, -1, 0).unwrap(), int(-1)),
            (TropicalPoint::new(s1, -1, 1, 0).unwrap(), int(-1)),
        ];
        let p = PLPolytope::build(s1, &pts).unwrap();
        assert_eq!(p.split_index(), 3);
        assert_eq!(p.user_order(), &[1, 2, 3, 0]);
        assert!(p.constraints()[3].point.c.is_negative());
    }

    #[test]
    fn dilation_preserves_point_count_equality() {
        let p = e1();
        for k in 1..=4 {
            let d = p.dilate(k).unwrap();
            assert_eq!(
                d.chart1().lattice_points().len(),
                d.chart2().lattice_points().len()
            );
        }
    }
}
