//! Toric degeneration data: the two toric fibers with their facet-split
//! maps, boundary intersection matrices transported through the chart
//! isometry, the collinear blow-up toric model, the polar-dual combinatorial
//! mutation, the divisorial-fan coefficient table, and the global family
//! over the projective line.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::detrop::Poly;
use crate::error::{Error, Result};
use crate::lattice::{
    cone_admits_unit_functional, hull2d, polar_dual, LPoint, RPoint, RationalPolygon,
};
use crate::polyptych::{adapted_monomial, Chart, FaceTag, Monomial, PLPolytope, ShearParam};
use crate::surface::{nodal_advisory_text, SurfaceInput};
use crate::{Int, Rat};

/// Inner-normal fan of a chart polygon with exact intersection data.
#[derive(Debug, Clone)]
pub struct ToricSurfaceData {
    /// Primitive ray generators in counterclockwise order.
    pub rays: Vec<(Int, Int)>,
    pub self_intersections: Vec<Rat>,
    /// `det(v_i, v_{i+1})` for consecutive rays; all positive.
    pub cone_multiplicities: Vec<Int>,
    pub smooth: bool,
    pub gorenstein: bool,
}

/// For each boundary divisor, the chart rays its degeneration covers
/// (one, or two when the facet bends across `y = 0` in that chart).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetSplitMap {
    pub components: Vec<Vec<usize>>,
}

/// Toric fiber of the degeneration along one chart.
pub fn toric_fiber(p: &PLPolytope, chart: Chart) -> Result<(ToricSurfaceData, FacetSplitMap)> {
    let polygon = p.chart(chart);
    let rays: Vec<(Int, Int)> = polygon.facets().iter().map(|f| f.normal.clone()).collect();
    let data = fan_intersection_data(&rays)?;
    let components = p
        .facet_map()
        .iter()
        .map(|f| match chart {
            Chart::One => f.chart1_edges.clone(),
            Chart::Two => f.chart2_edges.clone(),
        })
        .collect();
    Ok((data, FacetSplitMap { components }))
}

/// Exact intersection data of a complete simplicial fan given by cyclically
/// ordered rays.
pub fn fan_intersection_data(rays: &[(Int, Int)]) -> Result<ToricSurfaceData> {
    let m = rays.len();
    if m < 3 {
        return Err(Error::Internal("a complete fan needs at least 3 rays".into()));
    }
    let det = |a: &(Int, Int), b: &(Int, Int)| -> Int { &a.0 * &b.1 - &a.1 * &b.0 };
    let mut cone_multiplicities = Vec::with_capacity(m);
    for i in 0..m {
        let d = det(&rays[i], &rays[(i + 1) % m]);
        if !d.is_positive() {
            return Err(Error::Internal("fan rays are not in counterclockwise order".into()));
        }
        cone_multiplicities.push(d);
    }
    let self_intersections = (0..m)
        .map(|i| {
            let prev = &rays[(i + m - 1) % m];
            let next = &rays[(i + 1) % m];
            let num = -det(prev, next);
            let den = &cone_multiplicities[(i + m - 1) % m] * &cone_multiplicities[i];
            Rat::new(num, den)
        })
        .collect();
    let smooth = cone_multiplicities.iter().all(One::is_one);
    let gorenstein =
        (0..m).all(|i| cone_admits_unit_functional(&rays[i], &rays[(i + 1) % m]));
    Ok(ToricSurfaceData {
        rays: rays.to_vec(),
        self_intersections,
        cone_multiplicities,
        smooth,
        gorenstein,
    })
}

/// `D_r . D_t` for two rays of the fan: the self-intersection formula on the
/// diagonal, `1/det` for adjacent rays, 0 otherwise.
fn ray_intersection(data: &ToricSurfaceData, r: usize, t: usize) -> Rat {
    let m = data.rays.len();
    if r == t {
        return data.self_intersections[r].clone();
    }
    if (r + 1) % m == t {
        return Rat::new(Int::one(), data.cone_multiplicities[r].clone());
    }
    if (t + 1) % m == r {
        return Rat::new(Int::one(), data.cone_multiplicities[t].clone());
    }
    Rat::zero()
}

/// Intersection matrix of the boundary divisors `D_i . D_j`, computed on the
/// chosen chart's toric fiber by summing over split components. The result
/// is independent of the chart.
pub fn intersection_matrix(p: &PLPolytope, chart: Chart) -> Result<Vec<Vec<Rat>>> {
    let (data, split) = toric_fiber(p, chart)?;
    let out: Vec<Vec<Rat>> = split
        .components
        .iter()
        .map(|rays_a| {
            split
                .components
                .iter()
                .map(|rays_b| {
                    let mut sum = Rat::zero();
                    for &r in rays_a {
                        for &t in rays_b {
                            sum += ray_intersection(&data, r, t);
                        }
                    }
                    sum
                })
                .collect()
        })
        .collect();
    for (a, row) in out.iter().enumerate() {
        for (b, entry) in row.iter().enumerate().skip(a + 1) {
            if *entry != out[b][a] {
                return Err(Error::Internal("intersection matrix is not symmetric".into()));
            }
        }
    }
    Ok(out)
}

/// The toric model reached by contracting the exceptional curves over the
/// sink (or source) divisor: same boundary self-intersection sequence with
/// that divisor raised by `s`.
#[derive(Debug, Clone)]
pub struct CollinearBlowupModel {
    pub sink: FaceTag,
    pub source: FaceTag,
    /// Divisor whose self-intersection shifts; `None` when both extremal
    /// faces are nodal.
    pub pivot: Option<usize>,
    pub boundary_self_intersections: Vec<Rat>,
    pub model_self_intersections: Option<Vec<Rat>>,
    /// Rays of the model fan, one per divisor, counterclockwise.
    pub model_rays: Option<Vec<(Int, Int)>>,
    /// Number of interior (-2)-curves contracted on the way: `sum (beta_i - 1)`.
    pub minus_two_contractions: u32,
    pub nodal_advisory: Option<String>,
}

pub fn collinear_blowup_model(inp: &SurfaceInput) -> Result<CollinearBlowupModel> {
    let p = inp.polytope();
    let ss = p.sink_source();
    let matrix = intersection_matrix(p, Chart::One)?;
    let boundary: Vec<Rat> = (0..p.n()).map(|i| matrix[i][i].clone()).collect();
    let minus_two_contractions = inp.f().s() - inp.gamma() as u32;

    let pivot = match (&ss.sink, &ss.source) {
        (FaceTag::Divisor(i), _) => Some(*i),
        (_, FaceTag::Divisor(i)) => Some(*i),
        _ => None,
    };
    let nodal_advisory = match (&ss.sink, &ss.source) {
        (FaceTag::Nodal(v), _) | (_, FaceTag::Nodal(v)) => Some(nodal_advisory_text(v)),
        _ => None,
    };

    let (model_rays, model_self_intersections) = match pivot {
        None => (None, None),
        Some(pivot) => {
            let keep_lower = matches!(ss.sink, FaceTag::Divisor(_));
            let model = merged_model(p, pivot, &boundary, keep_lower)
                .or_else(|_| merged_model(p, pivot, &boundary, !keep_lower))?;
            (Some(model.0), Some(model.1))
        }
    };

    Ok(CollinearBlowupModel {
        sink: ss.sink,
        source: ss.source,
        pivot,
        boundary_self_intersections: boundary,
        model_self_intersections,
        model_rays,
        minus_two_contractions,
        nodal_advisory,
    })
}

/// Chart-1 fan with each split facet merged to a single ray (the lower-side
/// normal when contracting towards the sink, the upper-side one towards the
/// source); verified against the expected self-intersection shift.
type ModelFan = (Vec<(Int, Int)>, Vec<Rat>);

fn merged_model(
    p: &PLPolytope,
    pivot: usize,
    boundary: &[Rat],
    keep_lower: bool,
) -> Result<ModelFan> {
    let polygon = p.chart1();
    // Kept edge per divisor, then counterclockwise edge order.
    let mut ordered: Vec<(usize, usize)> = Vec::with_capacity(p.n());
    for (d, images) in p.facet_map().iter().enumerate() {
        let e = match images.chart1_edges.as_slice() {
            [e] => *e,
            [e1, e2] => {
                let lower = lower_piece_edge(p, d, *e1, *e2);
                if keep_lower {
                    lower
                } else if lower == *e1 {
                    *e2
                } else {
                    *e1
                }
            }
            _ => return Err(Error::Internal("facet with unexpected edge count".into())),
        };
        ordered.push((e, d));
    }
    ordered.sort();
    let fan_rays: Vec<(Int, Int)> =
        ordered.iter().map(|&(e, _)| polygon.facets()[e].normal.clone()).collect();
    let data = fan_intersection_data(&fan_rays)?;
    let mut model = vec![Rat::zero(); boundary.len()];
    for (slot, &(_, d)) in ordered.iter().enumerate() {
        model[d] = data.self_intersections[slot].clone();
    }
    let s = Rat::from(p.s().to_int());
    for (d, b) in boundary.iter().enumerate() {
        let expected = if d == pivot { b + &s } else { b.clone() };
        if model[d] != expected {
            return Err(Error::Internal(format!(
                "model self-intersection at D{} is {} but {} was expected",
                d + 1,
                model[d],
                expected
            )));
        }
    }
    Ok((fan_rays, model))
}

/// Of a split facet's two chart-1 edges, the one supported by the lower
/// linear piece `(c, -b)` of its tropical point.
fn lower_piece_edge(p: &PLPolytope, divisor: usize, e1: usize, e2: usize) -> usize {
    let lower_prim = primitive_pair(p.constraints()[divisor].point.lower_piece());
    if p.chart1().facets()[e1].normal == lower_prim {
        e1
    } else {
        e2
    }
}

fn primitive_pair(v: (Int, Int)) -> (Int, Int) {
    let g = v.0.gcd(&v.1);
    if g.is_zero() || g.is_one() {
        v
    } else {
        (v.0 / &g, v.1 / g)
    }
}

/// One generator of the global family: a lattice point of chart 2 and its
/// adapted monomial.
#[derive(Debug, Clone)]
pub struct FamilyGenerator {
    /// Chart-2 coordinates `(a, b)`; `b` is the vertical coordinate.
    pub point: LPoint,
    pub monomial: Monomial,
}

/// Monomial support of a specialized generator: the lattice point it lands
/// on and the scalar it picks up.
#[derive(Debug, Clone)]
pub struct SpecializedGenerator {
    pub point: LPoint,
    pub coefficient: Rat,
}

/// Presentation of the family over the projective line interpolating the
/// two toric fibers, with the relation
/// `x1 x2 - unit * prod_k G_k(t0, t1, y)^k` (each `G_k` the homogenized
/// squarefree stratum of `f`).
#[derive(Debug, Clone)]
pub struct FamilyPresentation {
    pub generators: Vec<FamilyGenerator>,
    pub relation: String,
    /// Specialization at `[t0 : t1] = [1 : 0]`: supports are the chart-1
    /// lattice points.
    pub support_at_1_0: Vec<SpecializedGenerator>,
    /// Specialization at `[0 : 1]`: supports are the chart-2 lattice points.
    pub support_at_0_1: Vec<SpecializedGenerator>,
}

/// Homogenization of a monic polynomial `g(y)` to `sum g_i (t0 y)^i t1^(d-i)`.
fn homogenize(g: &Poly) -> String {
    let d = g.degree();
    let mut terms: Vec<String> = Vec::new();
    for k in (0..=d).rev() {
        let c = g.coeff(k);
        if c.is_zero() {
            continue;
        }
        let mut part = String::new();
        if terms.is_empty() {
            if c.is_negative() {
                part.push('-');
            }
        } else if c.is_negative() {
            part.push_str(" - ");
        } else {
            part.push_str(" + ");
        }
        let mag = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || k == 0 && d == 0 {
            factors.push(mag.to_string());
        }
        match k {
            0 => {}
            1 => factors.push("t0*y".into()),
            _ => factors.push(format!("(t0*y)^{k}")),
        }
        match d - k {
            0 => {}
            1 => factors.push("t1".into()),
            _ => factors.push(format!("t1^{}", d - k)),
        }
        if factors.is_empty() {
            factors.push(mag.to_string());
        }
        part.push_str(&factors.join("*"));
        terms.push(part);
    }
    terms.concat()
}

pub fn family_presentation(inp: &SurfaceInput) -> FamilyPresentation {
    let p = inp.polytope();
    let s = p.s();
    let generators: Vec<FamilyGenerator> = p
        .chart2()
        .lattice_points()
        .iter()
        .map(|pt| FamilyGenerator {
            point: pt.clone(),
            monomial: adapted_monomial(Chart::Two, &pt.x, &pt.y, s),
        })
        .collect();

    let unit = inp.f().unit();
    let mut relation =
        if unit.is_negative() { String::from("x1*x2 + ") } else { String::from("x1*x2 - ") };
    let mut pieces: Vec<String> = Vec::new();
    let mag = unit.abs();
    if !mag.is_one() {
        pieces.push(mag.to_string());
    }
    for (g, k) in inp.f().strata() {
        let h = homogenize(g);
        if *k == 1 {
            pieces.push(format!("({h})"));
        } else {
            pieces.push(format!("({h})^{k}"));
        }
    }
    relation.push_str(&pieces.join("*"));

    // At [1:0] the relation degenerates to x1 x2 = unit * y^s, so a
    // generator x2^-b y^a matches the chart-1 monomial at (s b - a, b); at
    // [0:1] it degenerates to x1 x2 = f(0) and the supports stay put.
    let kappa = inp.f().coeffs().coeff(0);
    let support_at_1_0 = generators
        .iter()
        .map(|g| {
            let (a, b) = (&g.point.x, &g.point.y);
            let point = if b.is_negative() {
                LPoint { x: s.to_int() * b - a, y: b.clone() }
            } else {
                LPoint { x: -a.clone(), y: b.clone() }
            };
            let coefficient = if b.is_negative() {
                num_traits::pow(unit.clone(), usize::try_from(-b).expect("small exponent"))
            } else {
                Rat::one()
            };
            SpecializedGenerator { point, coefficient }
        })
        .collect();
    let support_at_0_1 = generators
        .iter()
        .map(|g| {
            let b = &g.point.y;
            let coefficient = if b.is_negative() {
                num_traits::pow(kappa.clone(), usize::try_from(-b).expect("small exponent"))
            } else {
                Rat::one()
            };
            SpecializedGenerator { point: g.point.clone(), coefficient }
        })
        .collect();

    FamilyPresentation { generators, relation, support_at_1_0, support_at_0_1 }
}

/// Frozen convention of the level-set mutation on polar duals, documented in
/// every report that carries one.
pub const MUTATION_CONVENTION: &str = "slices taken along the first dual coordinate h; the upper \
chain gains s*h of vertical extent (losing it for h < 0), then the first coordinate is negated";

/// Both dual polygons and the mutated image; construction fails when the
/// identity `mu(P1*) = P2*` does not hold.
#[derive(Debug, Clone)]
pub struct DualMutation {
    pub p1_dual: RationalPolygon,
    pub p2_dual: RationalPolygon,
    pub mutated: RationalPolygon,
    pub convention: &'static str,
}

/// Applies the combinatorial mutation with width vector `e1` and vertical
/// factor of height `s` to a rational polygon: the slice at height `h`
/// keeps its lower end and moves its upper end by `s*h`, and the first
/// coordinate is negated afterwards.
pub fn mutate_dual(q: &RationalPolygon, s: ShearParam) -> Result<RationalPolygon> {
    let vs = q.vertices();
    let n = vs.len();
    let lex_min = (0..n).min_by(|&i, &j| (&vs[i].x, &vs[i].y).cmp(&(&vs[j].x, &vs[j].y))).unwrap();
    let bottom_right = (0..n)
        .max_by(|&i, &j| {
            (&vs[i].x, std::cmp::Reverse(&vs[i].y)).cmp(&(&vs[j].x, std::cmp::Reverse(&vs[j].y)))
        })
        .unwrap();
    let top_right = (0..n).max_by(|&i, &j| (&vs[i].x, &vs[i].y).cmp(&(&vs[j].x, &vs[j].y))).unwrap();
    let top_left = (0..n)
        .min_by(|&i, &j| {
            (&vs[i].x, std::cmp::Reverse(&vs[i].y)).cmp(&(&vs[j].x, std::cmp::Reverse(&vs[j].y)))
        })
        .unwrap();

    let walk = |from: usize, to: usize| -> Vec<RPoint> {
        let mut out = Vec::new();
        let mut i = from;
        loop {
            out.push(vs[i].clone());
            if i == to {
                break;
            }
            i = (i + 1) % n;
        }
        out
    };
    let lower = walk(lex_min, bottom_right);
    let upper = walk(top_right, top_left);
    let s_rat = Rat::from(s.to_int());

    // Summand condition at every breakpoint with h <= 0: the slice must be
    // wide enough to give up s*|h| from the top.
    let mut upper_sorted = upper.clone();
    upper_sorted.reverse();
    for h in lower.iter().map(|p| &p.x).chain(upper_sorted.iter().map(|p| &p.x)) {
        if h.is_positive() {
            continue;
        }
        let lo = chain_eval(&lower, h)?;
        let hi = chain_eval(&upper_sorted, h)?;
        if lo > hi + &s_rat * h {
            return Err(Error::MutationIdentityFailed(format!(
                "slice at height {h} is too short for the factor"
            )));
        }
    }

    let mut candidates: Vec<RPoint> = Vec::new();
    for p in &lower {
        candidates.push(RPoint::new(-p.x.clone(), p.y.clone()));
    }
    for p in &upper {
        candidates.push(RPoint::new(-p.x.clone(), &p.y + &s_rat * &p.x));
    }
    hull2d(&candidates).map_err(|_| Error::MutationIdentityFailed("mutated polygon degenerated".into()))
}

/// Piecewise-linear evaluation along a chain with strictly increasing first
/// coordinates.
fn chain_eval(chain: &[RPoint], h: &Rat) -> Result<Rat> {
    if chain.len() == 1 {
        return Ok(chain[0].y.clone());
    }
    for w in chain.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if &a.x <= h && h <= &b.x {
            let t = (h - &a.x) / (&b.x - &a.x);
            return Ok(&a.y + t * (&b.y - &a.y));
        }
    }
    Err(Error::Internal(format!("height {h} outside the chain range")))
}

/// Checks the combinatorial-mutation identity between the polar duals of
/// the two chart polygons. On failure the message reports whether the
/// built-in corpus still passes, separating bad input from a broken
/// convention.
pub fn dual_mutation_check(p: &PLPolytope) -> Result<DualMutation> {
    let p1_dual = polar_dual(&p.chart1().to_rational())?;
    let p2_dual = polar_dual(&p.chart2().to_rational())?;
    let mutated = mutate_dual(&p1_dual, p.s())?;
    if mutated.same_vertex_set(&p2_dual) {
        return Ok(DualMutation { p1_dual, p2_dual, mutated, convention: MUTATION_CONVENTION });
    }
    let corpus_ok = crate::corpus::builtin().iter().all(|q| {
        let d1 = polar_dual(&q.chart1().to_rational());
        let d2 = polar_dual(&q.chart2().to_rational());
        match (d1, d2) {
            (Ok(d1), Ok(d2)) => {
                mutate_dual(&d1, q.s()).map(|m| m.same_vertex_set(&d2)).unwrap_or(false)
            }
            _ => false,
        }
    });
    let detail = format!(
        "mu(P1*) != P2* (mutated vertices {:?})",
        mutated.vertices().iter().map(|v| (v.x.to_string(), v.y.to_string())).collect::<Vec<_>>()
    );
    if corpus_ok {
        Err(Error::MutationIdentityFailed(format!(
            "{detail}; the built-in corpus passes, so this input violates the mutation identity"
        )))
    } else {
        Err(Error::Internal(format!(
            "{detail}; the built-in corpus fails too: the frozen slice convention is broken"
        )))
    }
}

/// One row of the divisorial-fan coefficient table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanTableRow {
    /// Vertical degree of the slice.
    pub b: Int,
    /// Number of chart-2 lattice points at this degree.
    pub count: usize,
    pub h0: Int,
    pub h_infty: Int,
    /// `h_i(b) = -beta_i * min(0, b)` per distinct root.
    pub h_roots: Vec<Int>,
}

/// Per-degree coefficient data of the divisorial fan: `h_i` is fixed by the
/// graph-divisor coefficients, and `(h0, h_infty)` are the minimal integers
/// balancing the section count `h0 + h_infty + sum h_i + 1 = count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorialFanTable {
    pub rows: Vec<FanTableRow>,
}

pub fn divisorial_fan_table(inp: &SurfaceInput) -> Result<DivisorialFanTable> {
    let points = inp.polytope().chart2().lattice_points();
    let bmin = points.iter().map(|p| &p.y).min().unwrap().clone();
    let bmax = points.iter().map(|p| &p.y).max().unwrap().clone();
    let mut rows = Vec::new();
    let mut b = bmin;
    while b <= bmax {
        rows.push(fan_table_row(inp, &b)?);
        b += Int::one();
    }
    let total: usize = rows.iter().map(|r| r.count).sum();
    if total != points.len() {
        return Err(Error::Internal("fan table rows do not partition the lattice points".into()));
    }
    Ok(DivisorialFanTable { rows })
}

/// The table row at one vertical degree; errors outside the projection of
/// the polytope.
pub fn fan_table_row(inp: &SurfaceInput, b: &Int) -> Result<FanTableRow> {
    let slice: Vec<&Int> = inp
        .polytope()
        .chart2()
        .lattice_points()
        .iter()
        .filter(|p| &p.y == b)
        .map(|p| &p.x)
        .collect();
    if slice.is_empty() {
        return Err(Error::EmptySlice { b: b.to_string() });
    }
    let amin = (*slice.iter().min().unwrap()).clone();
    let amax = (*slice.iter().max().unwrap()).clone();
    let neg_part = b.clone().min(Int::zero());
    let h_roots: Vec<Int> = inp
        .f()
        .roots()
        .iter()
        .map(|r| -Int::from(r.multiplicity) * &neg_part)
        .collect();
    let h0 = -&amin + Int::from(inp.f().s()) * &neg_part;
    let h_infty = amax.clone();
    let count = slice.len();
    let check = &h0 + &h_infty + h_roots.iter().sum::<Int>() + Int::one();
    if check != Int::from(count) {
        return Err(Error::Internal(format!(
            "section-count identity failed at degree {b}: {check} != {count}"
        )));
    }
    Ok(FanTableRow { b: b.clone(), count, h0, h_infty, h_roots })
}
