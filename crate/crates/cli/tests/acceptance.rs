//! Acceptance suite: one test per criterion, exact comparisons throughout.
//! Each test prints a single PASS line (visible with `--nocapture`); a
//! failure panics with the offending data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mutsurf::corpus;
use mutsurf::degeneration::{
    collinear_blowup_model, dual_mutation_check, family_presentation, intersection_matrix,
};
use mutsurf::detrop::FactoredPoly;
use mutsurf::lattice::{smith_normal_form, IntMatrix, LPoint, LatticePolygon};
use mutsurf::polyptych::{mutate, Chart, PLPolytope, ShearParam, TropicalPoint};
use mutsurf::surface::{
    class_group, class_group_affine, cox_presentation, degree_vectors, is_toric, SurfaceInput,
};
use mutsurf::{int, rat, Int, Rat};

fn sp(v: u32) -> ShearParam {
    ShearParam::new(v).unwrap()
}

fn surface_corpus(seed: u64, count: usize, max_s: u32) -> Vec<SurfaceInput> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![
        SurfaceInput::new(FactoredPoly::from_roots(&[(rat(-1, 1), 1)]).unwrap(), corpus::e1())
            .unwrap(),
        SurfaceInput::new(
            FactoredPoly::from_roots(&[(rat(-2, 1), 1), (rat(-1, 2), 1)]).unwrap(),
            corpus::e2(),
        )
        .unwrap(),
    ];
    while out.len() < count {
        let s = sp(rng.gen_range(1..=max_s));
        out.push(corpus::random_surface_input(&mut rng, s));
    }
    out
}

#[test]
fn acceptance_01_mutation_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for s_val in 1..=8u32 {
        let s = sp(s_val);
        for _ in 0..10_000 {
            let pt = LPoint::new(rng.gen_range(-1000..=1000i64), rng.gen_range(-1000..=1000i64));
            let once = mutate(s, &pt);
            assert_eq!(once.y, pt.y, "y must be preserved at s = {s_val}");
            assert_eq!(mutate(s, &once), pt, "involution failed at s = {s_val}");
        }
    }
    println!("ACCEPTANCE 1: PASS - involution and y-preservation on 10^4 points per s in 1..8");
}

#[test]
fn acceptance_02_e1_end_to_end() {
    let job = mutsurf_cli::JobSpec::from_json(
        r#"{
            "s": 1,
            "f": { "roots": [[-1, 1]] },
            "polytope": [
                { "point": [0, 0, 1], "level": -1 },
                { "point": [1, -1, 0], "level": -1 },
                { "point": [-1, 1, 0], "level": -1 },
                { "point": [-1, 0, -1], "level": -1 }
            ]
        }"#,
    )
    .unwrap();
    let report = mutsurf_cli::run(&job).unwrap();

    let charts = report.charts.as_ref().unwrap();
    let expect = |pairs: &[(i64, i64)]| -> Vec<[String; 2]> {
        pairs.iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect()
    };
    let mut c1 = charts.chart1.vertices.clone();
    let mut w1 = expect(&[(-1, -1), (1, -1), (1, 0), (0, 1), (-1, 1)]);
    c1.sort();
    w1.sort();
    assert_eq!(c1, w1, "chart 1 vertex list");
    let mut c2 = charts.chart2.vertices.clone();
    let mut w2 = expect(&[(-2, -1), (0, -1), (1, 0), (1, 1), (0, 1)]);
    c2.sort();
    w2.sort();
    assert_eq!(c2, w2, "chart 2 vertex list");

    let cl = report.class_group.as_ref().unwrap();
    assert_eq!(cl.description, "Z^3");
    assert!(cl.torsion.is_empty());

    let cx = report.complexity.as_ref().unwrap();
    assert_eq!(cx.value, 1);
    assert_eq!((cx.rho, cx.boundary_components), (3, 4));

    let cox = report.cox.as_ref().unwrap();
    assert_eq!(cox.relations, vec!["w5*w6 - w1 - w4".to_string()]);

    let t = report.toricity.as_ref().unwrap();
    assert!(t.toric && t.criterion.holds && t.oracle.polynomial_ring);

    println!("ACCEPTANCE 2: PASS - E1: charts as specified, Cl = Z^3, complexity 1, Cox w5*w6 - w1 - w4, toric by both certificates");
}

#[test]
fn acceptance_03_e2_end_to_end() {
    let job = mutsurf_cli::JobSpec::from_json(
        r#"{
            "s": 2,
            "f": { "roots": [[-2, 1], ["-1/2", 1]] },
            "polytope": [
                { "point": [0, 0, 1], "level": -1 },
                { "point": [1, -1, 0], "level": -1 },
                { "point": [-1, 1, 0], "level": -1 },
                { "point": [-1, -1, -1], "level": -1 }
            ]
        }"#,
    )
    .unwrap();
    let report = mutsurf_cli::run(&job).unwrap();

    let cl = report.class_group.as_ref().unwrap();
    assert_eq!(cl.description, "Z^4");

    let cx = report.complexity.as_ref().unwrap();
    assert_eq!(cx.value, 2);
    assert_eq!(cx.gamma, 2);

    let cox = report.cox.as_ref().unwrap();
    assert_eq!(cox.generators.len(), 8);
    assert_eq!(
        cox.relations,
        vec!["w5*w6 - 2*w1 - w4".to_string(), "w7*w8 - 1/2*w1 - w4".to_string()]
    );

    let t = report.toricity.as_ref().unwrap();
    assert!(!t.toric && !t.oracle.polynomial_ring);

    println!("ACCEPTANCE 3: PASS - E2: Cl = Z^4, complexity 2 = gamma, 8-generator 2-relation Cox, not toric");
}

#[test]
fn acceptance_04_affine_class_group_formula() {
    fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - first, first) {
                let mut p = vec![first];
                p.append(&mut rest);
                out.push(p);
            }
        }
        out
    }
    let pool: Vec<Rat> = (1..=8).map(|k| rat(k, 1)).collect();
    let mut checked = 0;
    for total in 1..=8u32 {
        for mults in partitions(total, total) {
            let roots: Vec<(Rat, u32)> =
                mults.iter().enumerate().map(|(i, &m)| (pool[i].clone(), m)).collect();
            let f = FactoredPoly::from_roots(&roots).unwrap();
            // class_group_affine itself compares the formula to its own SNF;
            // rebuild the affine relation matrix here as a separate oracle.
            let gamma = mults.len();
            let mut rows = Vec::new();
            for k in 0..gamma {
                let mut r = vec![Int::from(0); 2 * gamma];
                r[2 * k] = int(1);
                r[2 * k + 1] = int(1);
                rows.push(r);
            }
            let mut last = vec![Int::from(0); 2 * gamma];
            for (k, &m) in mults.iter().enumerate() {
                last[2 * k] = int(m as i64);
            }
            rows.push(last);
            let snf = smith_normal_form(&IntMatrix::from_rows(rows));
            let got = class_group_affine(&f).unwrap();
            assert_eq!(got.free_rank, snf.free_rank);
            assert_eq!(got.torsion, snf.torsion());
            let gcd = mults.iter().fold(0u32, |acc, &b| {
                let (mut a, mut b) = (acc, b);
                while b != 0 {
                    (a, b) = (b, a % b);
                }
                a
            });
            assert_eq!(got.free_rank, gamma - 1);
            assert_eq!(got.torsion, if gcd > 1 { vec![int(gcd as i64)] } else { vec![] });
            checked += 1;
        }
    }
    println!("ACCEPTANCE 4: PASS - affine class group formula matches the SNF oracle on all {checked} multiplicity vectors with sum <= 8");
}

#[test]
fn acceptance_05_relation_degree_duality() {
    let inputs = surface_corpus(105, 100, 4);
    for inp in &inputs {
        let dv = degree_vectors(inp);
        let cl = class_group(inp).unwrap();
        let row = |i: usize| cl.relations.row(i).to_vec();
        let neg_r0: Vec<Int> = row(0).iter().map(|v| -v.clone()).collect();
        assert_eq!(dv.y, neg_r0, "deg(y) = -R0");
        assert_eq!(dv.x, row(1), "deg(x) = R1");
        for (k, v) in dv.y_minus_alpha.iter().enumerate() {
            assert_eq!(*v, row(2 + k), "deg(y - alpha_{}) = R_{}", k + 1, k + 2);
        }
    }
    println!("ACCEPTANCE 5: PASS - relation/degree duality on {} randomized inputs", inputs.len());
}

#[test]
fn acceptance_06_cox_homogeneity_and_count() {
    let inputs = surface_corpus(106, 100, 4);
    for inp in &inputs {
        let cl = class_group(inp).unwrap();
        // Homogeneity is re-verified inside against the SNF grading.
        let cox = cox_presentation(inp, &cl).unwrap();
        assert_eq!(
            cox.labels.len() - cox.relations.len(),
            inp.n() + inp.gamma(),
            "complete-intersection count"
        );
        assert_eq!(cox.relations.len(), inp.gamma());
    }
    println!("ACCEPTANCE 6: PASS - Cox homogeneity and #gens - #rels = n + gamma on {} inputs", inputs.len());
}

/// A named toricity edge case: constraints, a polynomial, and the expected
/// verdict.
struct ToricCase {
    name: &'static str,
    s: u32,
    points: Vec<[i64; 3]>,
    levels: Vec<i64>,
    roots: Vec<(Rat, u32)>,
    expect_toric: bool,
}

fn build_case(case: &ToricCase) -> SurfaceInput {
    let s = sp(case.s);
    let constraints: Vec<(TropicalPoint, Int)> = case
        .points
        .iter()
        .zip(&case.levels)
        .map(|(p, &l)| (TropicalPoint::new(s, p[0], p[1], p[2]).unwrap(), int(l)))
        .collect();
    let p = PLPolytope::build(s, &constraints)
        .unwrap_or_else(|e| panic!("case '{}' must be a valid polytope: {e}", case.name));
    SurfaceInput::new(FactoredPoly::from_roots(&case.roots).unwrap(), p).unwrap()
}

#[test]
fn acceptance_07_toricity_double_certificate() {
    // All-zero c never reaches the toricity test: it is blocked by
    // validation as an unbounded polytope.
    let s1 = sp(1);
    let zeros = [
        (TropicalPoint::new(s1, 1, -1, 0).unwrap(), int(-1)),
        (TropicalPoint::new(s1, -1, 1, 0).unwrap(), int(-1)),
    ];
    assert_eq!(PLPolytope::build(s1, &zeros).unwrap_err(), mutsurf::Error::Unbounded);

    let e1_points = vec![[0, 0, 1], [1, -1, 0], [-1, 1, 0], [-1, 0, -1]];
    let e2_points = vec![[0, 0, 1], [1, -1, 0], [-1, 1, 0], [-1, -1, -1]];
    let m1 = rat(-1, 1);
    let cases = vec![
        ToricCase {
            name: "E1: single +1",
            s: 1,
            points: e1_points.clone(),
            levels: vec![-1; 4],
            roots: vec![(m1.clone(), 1)],
            expect_toric: true,
        },
        ToricCase {
            name: "E2: gamma = 2 blocks the shared monomials",
            s: 2,
            points: e2_points.clone(),
            levels: vec![-1; 4],
            roots: vec![(rat(-2, 1), 1), (rat(-1, 2), 1)],
            expect_toric: false,
        },
        ToricCase {
            name: "E2 polytope with a repeated root: gamma = 1 again",
            s: 2,
            points: e2_points.clone(),
            levels: vec![-1; 4],
            roots: vec![(m1.clone(), 2)],
            expect_toric: true,
        },
        ToricCase {
            name: "two +1 and a single -1: mirrored pattern",
            s: 1,
            points: vec![[0, 0, 1], [1, -1, 1], [1, -1, 0], [-1, 1, 0], [-1, 0, -1]],
            levels: vec![-2, -3, -2, -1, -1],
            roots: vec![(m1.clone(), 1)],
            expect_toric: true,
        },
        ToricCase {
            name: "a c = +2 facet alongside the single -1",
            s: 1,
            points: vec![[1, -1, 2], [1, -1, 0], [-1, 1, 0], [-1, 0, -1], [0, 0, 1]],
            levels: vec![-5, -3, -1, -1, -2],
            roots: vec![(m1.clone(), 1)],
            expect_toric: true,
        },
        ToricCase {
            name: "c = +2 against c = -2: no unit exponent on either side",
            s: 1,
            points: vec![[1, -1, 2], [1, -1, 0], [-1, 1, 0], [-1, -1, -2]],
            levels: vec![-4, -2, -2, -6],
            roots: vec![(m1.clone(), 1)],
            expect_toric: false,
        },
        ToricCase {
            name: "two +1 and two -1: both patterns blocked",
            s: 1,
            points: vec![[0, 0, 1], [1, -1, 1], [-1, 0, -1], [0, -1, -1]],
            levels: vec![-1, -3, -2, -3],
            roots: vec![(m1.clone(), 1)],
            expect_toric: false,
        },
        ToricCase {
            name: "dilated E1 keeps the pattern",
            s: 1,
            points: e1_points.clone(),
            levels: vec![-2; 4],
            roots: vec![(m1.clone(), 1)],
            expect_toric: true,
        },
        ToricCase {
            name: "E1 polytope, root at -7",
            s: 1,
            points: e1_points.clone(),
            levels: vec![-1; 4],
            roots: vec![(rat(-7, 1), 1)],
            expect_toric: true,
        },
        ToricCase {
            name: "s = 3 with a triple root and the E1 pattern",
            s: 3,
            points: vec![[0, 0, 1], [1, -1, 0], [-1, 1, 0], [-3, 0, -1]],
            levels: vec![-1, -1, -1, -3],
            roots: vec![(rat(2, 1), 3)],
            expect_toric: true,
        },
        ToricCase {
            name: "s = 3, gamma = 2 on the same polytope",
            s: 3,
            points: vec![[0, 0, 1], [1, -1, 0], [-1, 1, 0], [-3, 0, -1]],
            levels: vec![-1, -1, -1, -3],
            roots: vec![(rat(2, 1), 2), (rat(1, 1), 1)],
            expect_toric: false,
        },
        ToricCase {
            name: "s = 3, gamma = 3 on the same polytope",
            s: 3,
            points: vec![[0, 0, 1], [1, -1, 0], [-1, 1, 0], [-3, 0, -1]],
            levels: vec![-1, -1, -1, -3],
            roots: vec![(rat(2, 1), 1), (rat(1, 1), 1), (rat(-1, 1), 1)],
            expect_toric: false,
        },
        ToricCase {
            name: "one +1 against two -1 facets",
            s: 1,
            points: vec![[0, 0, 1], [-1, 0, -1], [0, -1, -1]],
            levels: vec![-1, -1, -2],
            roots: vec![(m1.clone(), 1)],
            expect_toric: true,
        },
        ToricCase {
            name: "stretched E2 with two rational roots",
            s: 2,
            points: vec![[0, 0, 1], [1, -1, 0], [-1, 1, 0], [-1, -1, -1]],
            levels: vec![-2, -1, -1, -1],
            roots: vec![(m1.clone(), 1), (rat(-4, 1), 1)],
            expect_toric: false,
        },
        ToricCase {
            name: "stretched E2 with a double root",
            s: 2,
            points: vec![[0, 0, 1], [1, -1, 0], [-1, 1, 0], [-1, -1, -1]],
            levels: vec![-2, -1, -1, -1],
            roots: vec![(m1.clone(), 2)],
            expect_toric: true,
        },
        ToricCase {
            name: "s = 4 pattern with a quadruple root",
            s: 4,
            points: vec![[0, 0, 1], [1, -1, 0], [-1, 1, 0], [-4, 0, -1]],
            levels: vec![-1, -1, -1, -4],
            roots: vec![(m1.clone(), 4)],
            expect_toric: true,
        },
        ToricCase {
            name: "s = 4 with multiplicities (3,1)",
            s: 4,
            points: vec![[0, 0, 1], [1, -1, 0], [-1, 1, 0], [-4, 0, -1]],
            levels: vec![-1, -1, -1, -4],
            roots: vec![(m1.clone(), 3), (rat(-2, 1), 1)],
            expect_toric: false,
        },
        ToricCase {
            name: "s = 4 with multiplicities (2,2)",
            s: 4,
            points: vec![[0, 0, 1], [1, -1, 0], [-1, 1, 0], [-4, 0, -1]],
            levels: vec![-1, -1, -1, -4],
            roots: vec![(m1.clone(), 2), (rat(-2, 1), 2)],
            expect_toric: false,
        },
        ToricCase {
            name: "nodal sink with the single +1 pattern",
            s: 1,
            points: vec![[0, 0, 1], [1, -1, 0], [-1, 0, -1]],
            levels: vec![-1, -1, -1],
            roots: vec![(rat(1, 2), 1)],
            expect_toric: true,
        },
    ];
    let mut total = 0usize;
    for case in &cases {
        let inp = build_case(case);
        let cl = class_group(&inp).unwrap();
        let cox = cox_presentation(&inp, &cl).unwrap();
        let verdict = is_toric(&inp, &cox)
            .unwrap_or_else(|e| panic!("case '{}': certificates disagree: {e}", case.name));
        assert_eq!(verdict.toric, case.expect_toric, "case '{}'", case.name);
        total += 1;
    }

    // Coefficient-mode cases: irrational roots never satisfy gamma = 1, and
    // a perfect square with a single rational root still does.
    for (coeffs, expect) in [
        (vec![rat(2, 1), rat(0, 1), rat(1, 1)], false), // y^2 + 2, gamma = 2
        (vec![rat(1, 1), rat(2, 1), rat(1, 1)], true),  // (y + 1)^2
    ] {
        let f = FactoredPoly::from_coeffs(coeffs).unwrap();
        let inp = SurfaceInput::new(f, corpus::e2()).unwrap();
        let cl = class_group(&inp).unwrap();
        let cox = cox_presentation(&inp, &cl).unwrap();
        let verdict = is_toric(&inp, &cox).unwrap();
        assert_eq!(verdict.toric, expect);
        total += 1;
    }

    // Corpus cases, with the sign-pattern criterion recomputed here as an
    // independent expectation.
    for inp in surface_corpus(107, 40, 4) {
        let cl = class_group(&inp).unwrap();
        let cox = cox_presentation(&inp, &cl).unwrap();
        let verdict = is_toric(&inp, &cox).unwrap();
        let cs: Vec<i64> = inp
            .polytope()
            .constraints()
            .iter()
            .map(|c| i64::try_from(&c.point.c).unwrap())
            .collect();
        let plus = cs.iter().filter(|&&c| c > 0).collect::<Vec<_>>();
        let minus = cs.iter().filter(|&&c| c < 0).collect::<Vec<_>>();
        let pattern = (plus.len() == 1 && *plus[0] == 1) || (minus.len() == 1 && *minus[0] == -1);
        let expected = inp.gamma() == 1 && pattern;
        assert_eq!(verdict.toric, expected);
        if inp.gamma() >= 2 {
            assert!(!verdict.toric, "gamma >= 2 is never toric");
        }
        total += 1;
    }
    println!("ACCEPTANCE 7: PASS - criterion and elimination oracle agree on {total} cases (handcrafted + corpus)");
}

#[test]
fn acceptance_08_intersection_matrix_chart_independence() {
    // P^2 sanity: the fan of the unit triangle has all self-intersections 1.
    let tri = LatticePolygon::hull(&[LPoint::new(0, 0), LPoint::new(1, 0), LPoint::new(0, 1)])
        .unwrap();
    let rays: Vec<(Int, Int)> = tri.facets().iter().map(|f| f.normal.clone()).collect();
    let data = mutsurf::degeneration::fan_intersection_data(&rays).unwrap();
    assert!(data.self_intersections.iter().all(|d| *d == rat(1, 1)));

    let inputs = surface_corpus(108, 60, 4);
    for inp in &inputs {
        let m1 = intersection_matrix(inp.polytope(), Chart::One).unwrap();
        let m2 = intersection_matrix(inp.polytope(), Chart::Two).unwrap();
        assert_eq!(m1, m2, "intersection matrices differ between charts");
    }
    println!("ACCEPTANCE 8: PASS - chart-independent intersection matrices on {} inputs, P^2 sanity ok", inputs.len());
}

#[test]
fn acceptance_09_dual_mutation_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut polytopes = corpus::builtin();
    for s_val in 1..=4u32 {
        for _ in 0..12 {
            polytopes.push(corpus::random_polytope(&mut rng, sp(s_val)));
        }
    }
    for p in &polytopes {
        let check = dual_mutation_check(p)
            .unwrap_or_else(|e| panic!("mutation identity failed at s = {}: {e}", p.s().get()));
        assert!(check.mutated.same_vertex_set(&check.p2_dual));
    }
    println!("ACCEPTANCE 9: PASS - mu_(e1,H_s^1)(P1*) = P2* on {} polytopes, s in 1..4", polytopes.len());
}

#[test]
fn acceptance_10_family_specializations() {
    let inputs = surface_corpus(110, 30, 4);
    for inp in &inputs {
        for k in 1..=4u32 {
            let d = inp.polytope().dilate(k).unwrap();
            let dilated = SurfaceInput::new(inp.f().clone(), d).unwrap();
            let fam = family_presentation(&dilated);
            let mut at10: Vec<LPoint> = fam.support_at_1_0.iter().map(|s| s.point.clone()).collect();
            let mut p1: Vec<LPoint> = dilated.polytope().chart1().lattice_points().to_vec();
            at10.sort();
            p1.sort();
            assert_eq!(at10, p1, "support at [1:0] must be the chart-1 lattice points");
            let mut at01: Vec<LPoint> = fam.support_at_0_1.iter().map(|s| s.point.clone()).collect();
            let mut p2: Vec<LPoint> = dilated.polytope().chart2().lattice_points().to_vec();
            at01.sort();
            p2.sort();
            assert_eq!(at01, p2, "support at [0:1] must be the chart-2 lattice points");
            assert_eq!(fam.generators.len(), p1.len(), "Hilbert counts agree at k = {k}");
        }
    }
    println!("ACCEPTANCE 10: PASS - family specialization supports and Hilbert counts for k <= 4 on {} inputs", inputs.len());
}

#[test]
fn acceptance_11_blowup_shift() {
    let inputs = surface_corpus(111, 60, 4);
    let mut with_pivot = 0;
    for inp in &inputs {
        let model = collinear_blowup_model(inp).unwrap();
        let Some(pivot) = model.pivot else { continue };
        with_pivot += 1;
        let ms = model.model_self_intersections.as_ref().unwrap();
        let s_rat = Rat::from(inp.polytope().s().to_int());
        for (i, b) in model.boundary_self_intersections.iter().enumerate() {
            let expected = if i == pivot { b + &s_rat } else { b.clone() };
            assert_eq!(ms[i], expected, "divisor D{}", i + 1);
        }
    }
    assert!(with_pivot >= 20, "need enough divisorial extremal faces, got {with_pivot}");
    println!("ACCEPTANCE 11: PASS - toric model shifts the extremal divisor by exactly +s on {with_pivot} inputs");
}
