//! The analysis pipeline and its machine-readable report.
//!
//! Reports are deterministic byte for byte for a given job and schema
//! version: every map is a struct with fixed field order, integers are
//! decimal strings, rationals are `p/q` strings.

use serde::Serialize;

use mutsurf::degeneration::{
    collinear_blowup_model, divisorial_fan_table, dual_mutation_check, family_presentation,
    intersection_matrix, toric_fiber,
};
use mutsurf::detrop::{
    aut, interior_curves, interior_singularities, normal_form, Parity, RootLabel,
};
use mutsurf::error::Error;
use mutsurf::lattice::{gorenstein_index, LPoint, RPoint, RationalPolygon};
use mutsurf::polyptych::{adapted_monomial, Chart, FaceTag, PLPolytope};
use mutsurf::surface::{
    boundary_report, boundary_singularities, class_group, class_group_affine, complexity,
    cox_presentation, degree_vectors, is_toric, ClassElement, SurfaceInput,
};
use mutsurf::{Int, Rat};

use crate::job::{Analysis, JobSpec};
use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

pub const INEQUALITY_CONVENTION: &str = "the polytope is { m : p_i(m) >= level_i } with every \
level_i < 0, so the origin is strictly interior";

pub const CURVE_INDEX_CONVENTION: &str = "C_{2i-1} = {x1 = 0} and C_{2i} = {x2 = 0} over the \
i-th distinct root; deg(x) refers to x = x2";

pub const FAN_TABLE_CONVENTION: &str = "h_i(b) = -beta_i * min(0, b) is fixed by the graph \
divisors; h0 and h_infty are the minimal integers with h0 + h_infty + sum h_i + 1 = #slice, \
split as h0 = -a_min + s*min(0, b) and h_infty = a_max";

fn int_s(v: &Int) -> String {
    v.to_string()
}

fn rat_s(v: &Rat) -> String {
    v.to_string()
}

fn lpt(p: &LPoint) -> [String; 2] {
    [p.x.to_string(), p.y.to_string()]
}

fn rpt(p: &RPoint) -> [String; 2] {
    [p.x.to_string(), p.y.to_string()]
}

fn ivec(v: &[Int]) -> Vec<String> {
    v.iter().map(int_s).collect()
}

fn rvec(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_s).collect()
}

fn rational_polygon(p: &RationalPolygon) -> Vec<[String; 2]> {
    p.vertices().iter().map(rpt).collect()
}

#[derive(Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub input: InputEcho,
    pub conventions: Conventions,
    pub warnings: Vec<String>,
    pub validate: ValidateSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charts: Option<ChartsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moduli: Option<ModuliSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_group: Option<ClassGroupSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cox: Option<CoxSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complexity: Option<ComplexitySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub toricity: Option<ToricitySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singularities: Option<SingularitiesSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degeneration: Option<DegenerationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_mutation: Option<DualMutationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySection>,
}

#[derive(Serialize)]
pub struct InputEcho {
    /// The canonicalized job: constraints in sorted order, analyses
    /// expanded. Re-parses as a job document.
    pub canonical: crate::job::RawJob,
    /// `constraint_permutation[k]` is the position of sorted constraint `k`
    /// in the user's original list.
    pub constraint_permutation: Vec<usize>,
}

#[derive(Serialize)]
pub struct Conventions {
    pub inequality_orientation: &'static str,
    pub curve_indexing: &'static str,
}

#[derive(Serialize)]
pub struct ValidateSection {
    pub s: u32,
    pub n: usize,
    pub gamma: usize,
    /// Number of constraints with `c >= 0`.
    pub split_index: usize,
    pub multiplicities: Vec<u32>,
}

#[derive(Serialize)]
pub struct PolygonReport {
    pub vertices: Vec<[String; 2]>,
    pub facets: Vec<FacetReport>,
    pub lattice_points: Vec<[String; 2]>,
    pub smooth: bool,
    pub gorenstein: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reflexive_index: Option<u32>,
}

#[derive(Serialize)]
pub struct FacetReport {
    pub normal: [String; 2],
    pub offset: String,
    pub divisor: String,
}

#[derive(Serialize)]
pub struct ChartsSection {
    pub chart1: PolygonReport,
    pub chart2: PolygonReport,
    pub facet_map: Vec<FacetMapEntry>,
    pub pl_vertices: Vec<PlVertexReport>,
    pub sink: FaceReport,
    pub source: FaceReport,
    pub adapted_monomials: Vec<MonomialEntry>,
}

#[derive(Serialize)]
pub struct FacetMapEntry {
    pub divisor: String,
    pub point: [String; 3],
    pub level: String,
    pub chart1_edges: Vec<usize>,
    pub chart2_edges: Vec<usize>,
}

#[derive(Serialize)]
pub struct PlVertexReport {
    pub chart1: [String; 2],
    pub chart2: [String; 2],
}

#[derive(Serialize)]
pub struct FaceReport {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<[String; 2]>,
}

fn face_report(tag: &FaceTag) -> FaceReport {
    match tag {
        FaceTag::Divisor(i) => FaceReport {
            kind: "divisor",
            divisor: Some(format!("D{}", i + 1)),
            vertex: None,
        },
        FaceTag::Nodal(v) => FaceReport {
            kind: "nodal",
            divisor: None,
            vertex: Some(lpt(&v.chart1)),
        },
    }
}

#[derive(Serialize)]
pub struct MonomialEntry {
    pub chart1_point: [String; 2],
    pub chart2_point: [String; 2],
    /// The basis element is one monomial; both chart tables agree on it.
    pub monomial: String,
}

#[derive(Serialize)]
pub struct ModuliSection {
    pub gamma: usize,
    pub strata: Vec<StratumReport>,
    pub roots: Vec<RootReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<NormalFormReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aut: Option<AutReport>,
}

#[derive(Serialize)]
pub struct StratumReport {
    pub factor: String,
    pub multiplicity: u32,
}

#[derive(Serialize)]
pub struct RootReport {
    pub label: String,
    pub multiplicity: u32,
    pub rational: bool,
}

#[derive(Serialize)]
pub struct NormalFormReport {
    /// Coefficients `b_1, ..., b_{s-1}` of the normal form.
    pub b: Vec<String>,
    pub lambda: String,
    pub c: String,
}

#[derive(Serialize)]
pub struct AutReport {
    pub order: usize,
    /// Elements `(eps, j)` acting by `y -> zeta^j y^((-1)^eps)`.
    pub elements: Vec<String>,
}

#[derive(Serialize)]
pub struct ClassGroupSection {
    pub generators: Vec<String>,
    pub relations: Vec<Vec<String>>,
    pub invariant_factors: Vec<String>,
    pub rank: usize,
    pub rho: usize,
    pub torsion: Vec<String>,
    pub description: String,
    pub degree_vectors: DegreeVectorsReport,
    pub affine: AffineSection,
}

#[derive(Serialize)]
pub struct DegreeVectorsReport {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub y_minus_alpha: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct AffineSection {
    pub description: String,
    pub free_rank: usize,
    pub torsion: Vec<String>,
    pub snf_invariant_factors: Vec<String>,
}

#[derive(Serialize)]
pub struct CoxSection {
    pub generators: Vec<CoxGeneratorReport>,
    pub relations: Vec<String>,
    pub symbolic_coefficients: bool,
    pub complete_intersection: CompleteIntersectionReport,
}

#[derive(Serialize)]
pub struct CoxGeneratorReport {
    pub name: String,
    pub divisor: String,
    pub degree: ClassElementReport,
}

#[derive(Serialize)]
pub struct ClassElementReport {
    pub free: Vec<String>,
    pub torsion: Vec<TorsionCoord>,
}

#[derive(Serialize)]
pub struct TorsionCoord {
    pub value: String,
    pub modulus: String,
}

fn class_element_report(e: &ClassElement) -> ClassElementReport {
    ClassElementReport {
        free: ivec(&e.free),
        torsion: e
            .torsion
            .iter()
            .map(|(v, d)| TorsionCoord { value: int_s(v), modulus: int_s(d) })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct CompleteIntersectionReport {
    pub generators: usize,
    pub relations: usize,
    pub expected_difference: usize,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct ComplexitySection {
    pub value: usize,
    pub gamma: usize,
    pub rho: usize,
    pub boundary_components: usize,
    pub cross_check: String,
}

#[derive(Serialize)]
pub struct ToricitySection {
    pub toric: bool,
    pub criterion: CriterionReport,
    pub oracle: OracleReport,
    pub note: &'static str,
}

#[derive(Serialize)]
pub struct CriterionReport {
    pub gamma_is_one: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<&'static str>,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct OracleReport {
    pub eliminations: Vec<EliminationStep>,
    pub polynomial_ring: bool,
}

#[derive(Serialize)]
pub struct EliminationStep {
    pub generator: String,
    pub relation: usize,
}

#[derive(Serialize)]
pub struct SingularitiesSection {
    pub interior: Vec<InteriorSingularityReport>,
    pub interior_curves: Vec<InteriorCurveReport>,
    pub boundary: Vec<BoundaryVertexReport>,
    pub boundary_summary: BoundarySummaryReport,
}

#[derive(Serialize)]
pub struct InteriorSingularityReport {
    pub root: String,
    pub du_val_type: String,
}

#[derive(Serialize)]
pub struct InteriorCurveReport {
    pub name: String,
    pub locus: &'static str,
    pub root: String,
}

#[derive(Serialize)]
pub struct BoundaryVertexReport {
    pub chart1_vertex: [String; 2],
    pub pl_vertex: bool,
    pub cone_type: String,
}

#[derive(Serialize)]
pub struct BoundarySummaryReport {
    pub components: Vec<BoundaryComponentReport>,
    pub sink: FaceReport,
    pub source: FaceReport,
    pub smooth_along_boundary: bool,
    pub gorenstein_along_boundary: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodal_advisory: Option<String>,
}

#[derive(Serialize)]
pub struct BoundaryComponentReport {
    pub divisor: String,
    pub is_sink: bool,
    pub is_source: bool,
    pub curves: Vec<String>,
}

#[derive(Serialize)]
pub struct DegenerationSection {
    pub chart1_fiber: FiberReport,
    pub chart2_fiber: FiberReport,
    pub intersection_matrix: Vec<Vec<String>>,
    pub charts_agree: bool,
    pub blowup_model: BlowupModelReport,
    pub divisorial_fan: FanTableReport,
}

#[derive(Serialize)]
pub struct FiberReport {
    pub rays: Vec<[String; 2]>,
    pub self_intersections: Vec<String>,
    pub cone_multiplicities: Vec<String>,
    pub smooth: bool,
    pub gorenstein: bool,
    pub splits: Vec<SplitReport>,
}

#[derive(Serialize)]
pub struct SplitReport {
    pub divisor: String,
    pub rays: Vec<usize>,
}

#[derive(Serialize)]
pub struct BlowupModelReport {
    pub sink: FaceReport,
    pub source: FaceReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pivot_divisor: Option<String>,
    pub boundary_self_intersections: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model_self_intersections: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model_rays: Option<Vec<[String; 2]>>,
    pub minus_two_contractions: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodal_advisory: Option<String>,
}

#[derive(Serialize)]
pub struct FanTableReport {
    pub convention: &'static str,
    pub rows: Vec<FanRowReport>,
}

#[derive(Serialize)]
pub struct FanRowReport {
    pub b: String,
    pub section_count: usize,
    pub h0: String,
    pub h_infty: String,
    pub h_roots: Vec<String>,
}

#[derive(Serialize)]
pub struct DualMutationSection {
    pub p1_dual: Vec<[String; 2]>,
    pub p2_dual: Vec<[String; 2]>,
    pub mutated: Vec<[String; 2]>,
    pub identity_holds: bool,
    pub convention: &'static str,
}

#[derive(Serialize)]
pub struct FamilySection {
    pub relation: String,
    pub generators: Vec<FamilyGeneratorReport>,
    pub support_at_1_0: Vec<SupportEntry>,
    pub support_at_0_1: Vec<SupportEntry>,
    pub hilbert_counts: Vec<HilbertRow>,
}

#[derive(Serialize)]
pub struct FamilyGeneratorReport {
    pub point: [String; 2],
    pub monomial: String,
}

#[derive(Serialize)]
pub struct SupportEntry {
    pub generator: [String; 2],
    pub point: [String; 2],
    pub coefficient: String,
}

#[derive(Serialize)]
pub struct HilbertRow {
    pub k: u32,
    pub chart1_points: usize,
    pub chart2_points: usize,
}

/// Maps core errors to exit classes: cross-check failures are internal,
/// everything else is a data problem.
pub fn classify(err: Error) -> CliError {
    match err {
        Error::Internal(_) | Error::CriterionOracleMismatch(_) => CliError::Internal(err),
        other => CliError::Validation(other),
    }
}

/// Executes the requested analyses in dependency order and assembles the
/// report.
pub fn run(job: &JobSpec) -> Result<Report, CliError> {
    let wanted = |a: Analysis| job.analyses.contains(&a);

    let constraints: Vec<_> = job
        .constraints
        .iter()
        .map(|(p, level)| (p.clone(), level * Int::from(job.dilate)))
        .collect();
    let polytope = PLPolytope::build(job.s, &constraints).map_err(classify)?;
    let inp = SurfaceInput::new(job.f.clone(), polytope).map_err(classify)?;
    let p = inp.polytope();

    let mut warnings: Vec<String> = Vec::new();

    let validate = ValidateSection {
        s: job.s.get(),
        n: p.n(),
        gamma: inp.gamma(),
        split_index: p.split_index(),
        multiplicities: inp.f().multiplicities(),
    };

    let charts = wanted(Analysis::Charts).then(|| charts_section(&inp));

    let moduli = if wanted(Analysis::Moduli) {
        Some(moduli_section(&inp, &mut warnings)?)
    } else {
        None
    };

    let needs_cl = [Analysis::ClassGroup, Analysis::Cox, Analysis::Complexity, Analysis::Toricity]
        .into_iter()
        .any(wanted);
    let cl = if needs_cl { Some(class_group(&inp).map_err(classify)?) } else { None };
    let cox = if wanted(Analysis::Cox) || wanted(Analysis::Toricity) {
        Some(cox_presentation(&inp, cl.as_ref().unwrap()).map_err(classify)?)
    } else {
        None
    };

    let class_group_section = if wanted(Analysis::ClassGroup) {
        let cl = cl.as_ref().unwrap();
        let affine = class_group_affine(inp.f()).map_err(classify)?;
        let dv = degree_vectors(&inp);
        Some(ClassGroupSection {
            generators: cl.generators.clone(),
            relations: (0..cl.relations.rows()).map(|i| ivec(cl.relations.row(i))).collect(),
            invariant_factors: ivec(&cl.snf.invariant_factors),
            rank: cl.snf.rank(),
            rho: cl.rho(),
            torsion: ivec(&cl.torsion()),
            description: cl.describe(),
            degree_vectors: DegreeVectorsReport {
                x: ivec(&dv.x),
                y: ivec(&dv.y),
                y_minus_alpha: dv.y_minus_alpha.iter().map(|v| ivec(v)).collect(),
            },
            affine: AffineSection {
                description: affine.description.clone(),
                free_rank: affine.free_rank,
                torsion: ivec(&affine.torsion),
                snf_invariant_factors: ivec(&affine.snf.invariant_factors),
            },
        })
    } else {
        None
    };

    let cox_section = if wanted(Analysis::Cox) {
        let cox = cox.as_ref().unwrap();
        if cox.symbolic_coefficients {
            warnings.push(
                "some Cox coefficients are symbolic roots bound to their squarefree stratum"
                    .to_string(),
            );
        }
        Some(CoxSection {
            generators: cox
                .labels
                .iter()
                .zip(&cox.degrees)
                .zip(&inp.generator_labels())
                .map(|((name, degree), divisor)| CoxGeneratorReport {
                    name: name.clone(),
                    divisor: divisor.clone(),
                    degree: class_element_report(degree),
                })
                .collect(),
            relations: cox.relations.iter().map(|r| cox.render_relation(r)).collect(),
            symbolic_coefficients: cox.symbolic_coefficients,
            complete_intersection: CompleteIntersectionReport {
                generators: cox.labels.len(),
                relations: cox.relations.len(),
                expected_difference: inp.n() + inp.gamma(),
                holds: cox.labels.len() - cox.relations.len() == inp.n() + inp.gamma(),
            },
        })
    } else {
        None
    };

    let complexity_section = if wanted(Analysis::Complexity) {
        let c = complexity(&inp, cl.as_ref().unwrap()).map_err(classify)?;
        Some(ComplexitySection {
            value: c.value,
            gamma: c.gamma,
            rho: c.rho,
            boundary_components: c.n,
            cross_check: format!("dim 2 + rho {} - |B| {} = {}", c.rho, c.n, c.value),
        })
    } else {
        None
    };

    let toricity_section = if wanted(Analysis::Toricity) {
        let t = is_toric(&inp, cox.as_ref().unwrap()).map_err(classify)?;
        Some(ToricitySection {
            toric: t.toric,
            criterion: CriterionReport {
                gamma_is_one: t.criterion.gamma_is_one,
                pattern: t.criterion.pattern.map(|p| match p {
                    mutsurf::surface::SinglePattern::PlusOne => "single +1, others <= 0",
                    mutsurf::surface::SinglePattern::MinusOne => "single -1, others >= 0",
                }),
                holds: t.criterion.holds,
            },
            oracle: OracleReport {
                eliminations: t
                    .oracle
                    .steps
                    .iter()
                    .map(|&(g, r)| EliminationStep { generator: format!("w{}", g + 1), relation: r })
                    .collect(),
                polynomial_ring: t.oracle.polynomial_ring,
            },
            note: t.note,
        })
    } else {
        None
    };

    let singularities_section = if wanted(Analysis::Singularities) {
        Some(singularities_section(&inp, &mut warnings)?)
    } else {
        None
    };

    let degeneration_section = if wanted(Analysis::Degeneration) {
        Some(degeneration_section(&inp)?)
    } else {
        None
    };

    let dual_mutation_section = if wanted(Analysis::DualMutation) {
        let check = dual_mutation_check(p).map_err(classify)?;
        Some(DualMutationSection {
            p1_dual: rational_polygon(&check.p1_dual),
            p2_dual: rational_polygon(&check.p2_dual),
            mutated: rational_polygon(&check.mutated),
            identity_holds: true,
            convention: check.convention,
        })
    } else {
        None
    };

    let family_section = if wanted(Analysis::Family) {
        let fam = family_presentation(&inp);
        let mut hilbert = Vec::new();
        for k in 1..=4u32 {
            let d = p.dilate(k).map_err(classify)?;
            hilbert.push(HilbertRow {
                k,
                chart1_points: d.chart1().lattice_points().len(),
                chart2_points: d.chart2().lattice_points().len(),
            });
        }
        Some(FamilySection {
            relation: fam.relation.clone(),
            generators: fam
                .generators
                .iter()
                .map(|g| FamilyGeneratorReport {
                    point: lpt(&g.point),
                    monomial: g.monomial.to_string(),
                })
                .collect(),
            support_at_1_0: fam
                .generators
                .iter()
                .zip(&fam.support_at_1_0)
                .map(|(g, s)| SupportEntry {
                    generator: lpt(&g.point),
                    point: lpt(&s.point),
                    coefficient: rat_s(&s.coefficient),
                })
                .collect(),
            support_at_0_1: fam
                .generators
                .iter()
                .zip(&fam.support_at_0_1)
                .map(|(g, s)| SupportEntry {
                    generator: lpt(&g.point),
                    point: lpt(&s.point),
                    coefficient: rat_s(&s.coefficient),
                })
                .collect(),
            hilbert_counts: hilbert,
        })
    } else {
        None
    };

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        input: InputEcho {
            canonical: job.to_raw(p.user_order()),
            constraint_permutation: p.user_order().to_vec(),
        },
        conventions: Conventions {
            inequality_orientation: INEQUALITY_CONVENTION,
            curve_indexing: CURVE_INDEX_CONVENTION,
        },
        warnings,
        validate,
        charts,
        moduli,
        class_group: class_group_section,
        cox: cox_section,
        complexity: complexity_section,
        toricity: toricity_section,
        singularities: singularities_section,
        degeneration: degeneration_section,
        dual_mutation: dual_mutation_section,
        family: family_section,
    })
}

fn polygon_report(
    polygon: &mutsurf::lattice::LatticePolygon,
    divisor_of_edge: &[String],
) -> PolygonReport {
    PolygonReport {
        vertices: polygon.vertices().iter().map(lpt).collect(),
        facets: polygon
            .facets()
            .iter()
            .enumerate()
            .map(|(e, f)| FacetReport {
                normal: [f.normal.0.to_string(), f.normal.1.to_string()],
                offset: int_s(&f.offset),
                divisor: divisor_of_edge[e].clone(),
            })
            .collect(),
        lattice_points: polygon.lattice_points().iter().map(lpt).collect(),
        smooth: polygon.is_smooth(),
        gorenstein: polygon.is_gorenstein(),
        reflexive_index: gorenstein_index(polygon),
    }
}

fn edge_divisors(p: &PLPolytope, chart: Chart) -> Vec<String> {
    let edge_count = p.chart(chart).facets().len();
    let mut out = vec![String::new(); edge_count];
    for (d, images) in p.facet_map().iter().enumerate() {
        let edges = match chart {
            Chart::One => &images.chart1_edges,
            Chart::Two => &images.chart2_edges,
        };
        for &e in edges {
            out[e] = format!("D{}", d + 1);
        }
    }
    out
}

fn charts_section(inp: &SurfaceInput) -> ChartsSection {
    let p = inp.polytope();
    let ss = p.sink_source();
    let adapted = p
        .chart1()
        .lattice_points()
        .iter()
        .map(|pt| {
            let image = mutsurf::polyptych::mutate(p.s(), pt);
            let m1 = adapted_monomial(Chart::One, &pt.x, &pt.y, p.s());
            let m2 = adapted_monomial(Chart::Two, &image.x, &image.y, p.s());
            debug_assert_eq!(m1, m2);
            MonomialEntry {
                chart1_point: lpt(pt),
                chart2_point: lpt(&image),
                monomial: m1.to_string(),
            }
        })
        .collect();
    ChartsSection {
        chart1: polygon_report(p.chart1(), &edge_divisors(p, Chart::One)),
        chart2: polygon_report(p.chart2(), &edge_divisors(p, Chart::Two)),
        facet_map: p
            .facet_map()
            .iter()
            .enumerate()
            .map(|(d, images)| {
                let c = &p.constraints()[d];
                FacetMapEntry {
                    divisor: format!("D{}", d + 1),
                    point: [c.point.a.to_string(), c.point.b.to_string(), c.point.c.to_string()],
                    level: int_s(&c.level),
                    chart1_edges: images.chart1_edges.clone(),
                    chart2_edges: images.chart2_edges.clone(),
                }
            })
            .collect(),
        pl_vertices: p
            .pl_vertices()
            .iter()
            .map(|v| PlVertexReport { chart1: lpt(&v.chart1), chart2: lpt(&v.chart2) })
            .collect(),
        sink: face_report(&ss.sink),
        source: face_report(&ss.source),
        adapted_monomials: adapted,
    }
}

fn moduli_section(inp: &SurfaceInput, warnings: &mut Vec<String>) -> Result<ModuliSection, CliError> {
    let f = inp.f();
    let (nf, obstruction, aut_report) = match normal_form(f) {
        Ok(nf) => {
            let group = aut(f).map_err(classify)?;
            (
                Some(NormalFormReport {
                    b: rvec(&nf.b),
                    lambda: rat_s(&nf.lambda),
                    c: rat_s(&nf.c),
                }),
                None,
                Some(AutReport {
                    order: group.order(),
                    elements: group.elements.iter().map(|e| e.to_string()).collect(),
                }),
            )
        }
        Err(e) => {
            warnings.push(format!(
                "{e}; the automorphism group over the algebraic closure is not determined by \
rational data, only strata-level invariants are reported"
            ));
            (None, Some(e.to_string()), None)
        }
    };
    Ok(ModuliSection {
        gamma: f.gamma(),
        strata: f
            .strata()
            .iter()
            .map(|(g, k)| StratumReport { factor: g.render("y"), multiplicity: *k })
            .collect(),
        roots: f
            .roots()
            .iter()
            .map(|r| RootReport {
                label: r.label.to_string(),
                multiplicity: r.multiplicity,
                rational: matches!(r.label, RootLabel::Rational(_)),
            })
            .collect(),
        normal_form: nf,
        obstruction,
        aut: aut_report,
    })
}

fn singularities_section(
    inp: &SurfaceInput,
    warnings: &mut Vec<String>,
) -> Result<SingularitiesSection, CliError> {
    let boundary = boundary_singularities(inp).map_err(classify)?;
    let summary = boundary_report(inp);
    if let Some(note) = &summary.nodal_advisory {
        warnings.push(note.clone());
    }
    Ok(SingularitiesSection {
        interior: interior_singularities(inp.f())
            .iter()
            .map(|(root, k)| InteriorSingularityReport {
                root: root.to_string(),
                du_val_type: format!("A{k}"),
            })
            .collect(),
        interior_curves: interior_curves(inp.f())
            .iter()
            .map(|c| InteriorCurveReport {
                name: format!("C{}", c.index),
                locus: match c.parity {
                    Parity::Odd => "x1 = 0",
                    Parity::Even => "x2 = 0",
                },
                root: c.root.to_string(),
            })
            .collect(),
        boundary: boundary
            .iter()
            .map(|v| BoundaryVertexReport {
                chart1_vertex: lpt(&v.chart1),
                pl_vertex: v.is_pl,
                cone_type: v.cone_type.to_string(),
            })
            .collect(),
        boundary_summary: BoundarySummaryReport {
            components: summary
                .components
                .iter()
                .map(|c| BoundaryComponentReport {
                    divisor: format!("D{}", c.index),
                    is_sink: c.is_sink,
                    is_source: c.is_source,
                    curves: c.curves.iter().map(|k| format!("C{k}")).collect(),
                })
                .collect(),
            sink: face_report(&summary.sink),
            source: face_report(&summary.source),
            smooth_along_boundary: summary.smooth_along_boundary,
            gorenstein_along_boundary: summary.gorenstein_along_boundary,
            nodal_advisory: summary.nodal_advisory.clone(),
        },
    })
}

fn fiber_report(inp: &SurfaceInput, chart: Chart) -> Result<FiberReport, CliError> {
    let (data, split) = toric_fiber(inp.polytope(), chart).map_err(classify)?;
    Ok(FiberReport {
        rays: data.rays.iter().map(|r| [r.0.to_string(), r.1.to_string()]).collect(),
        self_intersections: rvec(&data.self_intersections),
        cone_multiplicities: ivec(&data.cone_multiplicities),
        smooth: data.smooth,
        gorenstein: data.gorenstein,
        splits: split
            .components
            .iter()
            .enumerate()
            .map(|(d, rays)| SplitReport { divisor: format!("D{}", d + 1), rays: rays.clone() })
            .collect(),
    })
}

fn degeneration_section(inp: &SurfaceInput) -> Result<DegenerationSection, CliError> {
    let m1 = intersection_matrix(inp.polytope(), Chart::One).map_err(classify)?;
    let m2 = intersection_matrix(inp.polytope(), Chart::Two).map_err(classify)?;
    if m1 != m2 {
        return Err(CliError::Internal(Error::Internal(
            "intersection matrices differ between charts".into(),
        )));
    }
    let model = collinear_blowup_model(inp).map_err(classify)?;
    let table = divisorial_fan_table(inp).map_err(classify)?;
    Ok(DegenerationSection {
        chart1_fiber: fiber_report(inp, Chart::One)?,
        chart2_fiber: fiber_report(inp, Chart::Two)?,
        intersection_matrix: m1.iter().map(|row| rvec(row)).collect(),
        charts_agree: true,
        blowup_model: BlowupModelReport {
            sink: face_report(&model.sink),
            source: face_report(&model.source),
            pivot_divisor: model.pivot.map(|i| format!("D{}", i + 1)),
            boundary_self_intersections: rvec(&model.boundary_self_intersections),
            model_self_intersections: model.model_self_intersections.as_deref().map(rvec),
            model_rays: model
                .model_rays
                .as_ref()
                .map(|rays| rays.iter().map(|r| [r.0.to_string(), r.1.to_string()]).collect()),
            minus_two_contractions: model.minus_two_contractions,
            nodal_advisory: model.nodal_advisory.clone(),
        },
        divisorial_fan: FanTableReport {
            convention: FAN_TABLE_CONVENTION,
            rows: table
                .rows
                .iter()
                .map(|r| FanRowReport {
                    b: int_s(&r.b),
                    section_count: r.count,
                    h0: int_s(&r.h0),
                    h_infty: int_s(&r.h_infty),
                    h_roots: ivec(&r.h_roots),
                })
                .collect(),
        },
    })
}
