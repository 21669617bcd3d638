//! Invariants of the projective surface attached to a polynomial `f` and a
//! polytope: degree vectors of the distinguished rational functions, class
//! group, Cox presentation, complexity, toricity, and boundary data.
//!
//! Conventions, pinned once and used everywhere:
//! * constraints are in canonical order, `c >= 0` first (`j` of them);
//! * boundary divisors are `D_1, ..., D_n` in that order;
//! * interior curves are `C_{2i-1} = {x1 = 0}`, `C_{2i} = {x2 = 0}` over the
//!   `i`-th distinct root, and `x` means `x2`;
//! * the Picard rank is the free rank of the class group.

use num_traits::{One, Signed, Zero};

use crate::detrop::{interior_curves, FactoredPoly, Parity, RootLabel};
use crate::error::{Error, Result};
use crate::lattice::{
    smith_normal_form, vertex_cone_type, ConeType, IntMatrix, LPoint, SnfResult,
};
use crate::polyptych::{mutate, FaceTag, PLPolytope, PLPoint};
use crate::{Int, Rat};

/// The pair defining the surface; the shear parameter and `deg f` must
/// match.
#[derive(Debug, Clone)]
pub struct SurfaceInput {
    f: FactoredPoly,
    polytope: PLPolytope,
}

impl SurfaceInput {
    pub fn new(f: FactoredPoly, polytope: PLPolytope) -> Result<Self> {
        if f.s() != polytope.s().get() {
            return Err(Error::InvalidPolynomial(format!(
                "deg f = {} but the polytope has s = {}",
                f.s(),
                polytope.s().get()
            )));
        }
        Ok(SurfaceInput { f, polytope })
    }

    pub fn f(&self) -> &FactoredPoly {
        &self.f
    }

    pub fn polytope(&self) -> &PLPolytope {
        &self.polytope
    }

    pub fn n(&self) -> usize {
        self.polytope.n()
    }

    pub fn gamma(&self) -> usize {
        self.f.gamma()
    }

    /// Generator labels `D_1..D_n, C_1..C_{2 gamma}`.
    pub fn generator_labels(&self) -> Vec<String> {
        let mut out: Vec<String> = (1..=self.n()).map(|i| format!("D{i}")).collect();
        out.extend((1..=2 * self.gamma()).map(|i| format!("C{i}")));
        out
    }
}

/// Orders of vanishing of `x (= x2)`, `y`, and `y - alpha_k` along
/// `(D_1, ..., D_n, C_1, ..., C_{2 gamma})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVectors {
    pub x: Vec<Int>,
    pub y: Vec<Int>,
    pub y_minus_alpha: Vec<Vec<Int>>,
}

pub fn degree_vectors(inp: &SurfaceInput) -> DegreeVectors {
    let n = inp.n();
    let gamma = inp.gamma();
    let j = inp.polytope().split_index();
    let constraints = inp.polytope().constraints();
    let width = n + 2 * gamma;

    let mut x = vec![Int::zero(); width];
    let mut y = vec![Int::zero(); width];
    for (i, c) in constraints.iter().enumerate() {
        x[i] = c.point.a.clone();
        y[i] = -c.point.c.clone();
    }
    for (k, root) in inp.f().roots().iter().enumerate() {
        x[n + 2 * k + 1] = Int::from(root.multiplicity);
    }
    let y_minus_alpha = (0..gamma)
        .map(|k| {
            let mut v = vec![Int::zero(); width];
            for (i, c) in constraints.iter().enumerate().take(j) {
                v[i] = -c.point.c.clone();
            }
            v[n + 2 * k] = Int::one();
            v[n + 2 * k + 1] = Int::one();
            v
        })
        .collect();
    DegreeVectors { x, y, y_minus_alpha }
}

/// An element of the class group in the coordinates split off by the Smith
/// normal form of the relation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassElement {
    /// `(value mod d, d)` per invariant factor `d > 1`.
    pub torsion: Vec<(Int, Int)>,
    pub free: Vec<Int>,
}

/// Presentation of `Cl(X)` by boundary divisors and interior curves.
#[derive(Debug, Clone)]
pub struct ClassGroupPresentation {
    pub generators: Vec<String>,
    /// Rows: `R_0 = sum c_i D_i`, `R_1 = sum a_i D_i + sum beta_i C_{2i}`,
    /// `R_{1+k} = -sum_{i<=j} c_i D_i + C_{2k-1} + C_{2k}`.
    pub relations: IntMatrix,
    pub snf: SnfResult,
}

impl ClassGroupPresentation {
    /// Free rank of the class group; the surface's Picard rank.
    pub fn rho(&self) -> usize {
        self.snf.free_rank
    }

    pub fn torsion(&self) -> Vec<Int> {
        self.snf.torsion()
    }

    pub fn describe(&self) -> String {
        describe_group(self.rho(), &self.torsion())
    }

    /// Image of an exponent vector under the quotient map `Z^g -> Cl`.
    pub fn class_of(&self, v: &[Int]) -> ClassElement {
        let g = self.relations.cols();
        assert_eq!(v.len(), g);
        let rank = self.snf.rank();
        let mut image = vec![Int::zero(); g];
        for (k, vk) in v.iter().enumerate() {
            if vk.is_zero() {
                continue;
            }
            for (i, img) in image.iter_mut().enumerate() {
                *img += vk * &self.snf.right[(k, i)];
            }
        }
        let mut torsion = Vec::new();
        for (i, d) in self.snf.invariant_factors.iter().enumerate() {
            if !d.is_one() {
                torsion.push((num_integer::Integer::mod_floor(&image[i], d), d.clone()));
            }
        }
        let free = image[rank..].to_vec();
        ClassElement { torsion, free }
    }
}

pub fn describe_group(free_rank: usize, torsion: &[Int]) -> String {
    let mut parts = Vec::new();
    match free_rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    for d in torsion {
        parts.push(format!("Z/{d}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Class group of the projective surface from the canonical relation
/// matrix; the relation rank is structurally `gamma + 2` and a violation is
/// an internal error.
pub fn class_group(inp: &SurfaceInput) -> Result<ClassGroupPresentation> {
    let n = inp.n();
    let gamma = inp.gamma();
    let j = inp.polytope().split_index();
    let constraints = inp.polytope().constraints();
    let width = n + 2 * gamma;

    let mut rows = Vec::with_capacity(gamma + 2);
    let mut r0 = vec![Int::zero(); width];
    for (i, c) in constraints.iter().enumerate() {
        r0[i] = c.point.c.clone();
    }
    rows.push(r0);
    let mut r1 = vec![Int::zero(); width];
    for (i, c) in constraints.iter().enumerate() {
        r1[i] = c.point.a.clone();
    }
    for (k, root) in inp.f().roots().iter().enumerate() {
        r1[n + 2 * k + 1] = Int::from(root.multiplicity);
    }
    rows.push(r1);
    for k in 0..gamma {
        let mut r = vec![Int::zero(); width];
        for (i, c) in constraints.iter().enumerate().take(j) {
            r[i] = -c.point.c.clone();
        }
        r[n + 2 * k] = Int::one();
        r[n + 2 * k + 1] = Int::one();
        rows.push(r);
    }
    let relations = IntMatrix::from_rows(rows);
    let snf = smith_normal_form(&relations);
    snf.verify(&relations)?;
    if snf.rank() != gamma + 2 {
        return Err(Error::Internal(format!(
            "relation rank {} differs from gamma + 2 = {}",
            snf.rank(),
            gamma + 2
        )));
    }
    Ok(ClassGroupPresentation { generators: inp.generator_labels(), relations, snf })
}

/// Class group of the affine surface, by the closed formula and by an
/// independent Smith normal form of the affine relation matrix
/// `{C_{2i-1} + C_{2i} ~ 0, sum beta_i C_{2i-1} ~ 0}`; the two must agree.
#[derive(Debug, Clone)]
pub struct AffineClassGroup {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
    pub snf: SnfResult,
    pub description: String,
}

pub fn class_group_affine(f: &FactoredPoly) -> Result<AffineClassGroup> {
    let gamma = f.gamma();
    let width = 2 * gamma;
    let mut rows = Vec::with_capacity(gamma + 1);
    for k in 0..gamma {
        let mut r = vec![Int::zero(); width];
        r[2 * k] = Int::one();
        r[2 * k + 1] = Int::one();
        rows.push(r);
    }
    let mut r = vec![Int::zero(); width];
    for (k, root) in f.roots().iter().enumerate() {
        r[2 * k] = Int::from(root.multiplicity);
    }
    rows.push(r);
    let m = IntMatrix::from_rows(rows);
    let snf = smith_normal_form(&m);
    snf.verify(&m)?;

    let gcd: Int = f
        .multiplicities()
        .iter()
        .fold(Int::zero(), |acc, &b| num_integer::Integer::gcd(&acc, &Int::from(b)));
    let formula_torsion: Vec<Int> = if gcd.is_one() { vec![] } else { vec![gcd] };
    let formula_free = gamma - 1;

    if snf.free_rank != formula_free || snf.torsion() != formula_torsion {
        return Err(Error::Internal(format!(
            "affine class group mismatch: SNF gives {} but the formula gives {}",
            describe_group(snf.free_rank, &snf.torsion()),
            describe_group(formula_free, &formula_torsion),
        )));
    }
    let description = describe_group(formula_free, &formula_torsion);
    Ok(AffineClassGroup { free_rank: formula_free, torsion: formula_torsion, snf, description })
}

/// Coefficient of a Cox relation: an exact rational for a rational root, a
/// named symbol bound to its squarefree stratum otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoxCoefficient {
    Rational(Rat),
    Symbolic { name: String, minpoly: String },
}

impl std::fmt::Display for CoxCoefficient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoxCoefficient::Rational(r) => write!(f, "{r}"),
            CoxCoefficient::Symbolic { name, .. } => write!(f, "{name}"),
        }
    }
}

/// A monomial in the Cox generators: `(generator index, positive exponent)`
/// pairs in increasing index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxMonomial {
    pub factors: Vec<(usize, Int)>,
}

impl CoxMonomial {
    fn exponent_vector(&self, width: usize) -> Vec<Int> {
        let mut v = vec![Int::zero(); width];
        for (i, e) in &self.factors {
            v[*i] = e.clone();
        }
        v
    }

    pub fn render(&self, labels: &[String]) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|(i, e)| {
                if e.is_one() {
                    labels[*i].clone()
                } else {
                    format!("{}^{}", labels[*i], e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// One trinomial relation
/// `w_{n+2i-1} w_{n+2i} + alpha_i * M+ - M-` with
/// `M+ = prod_{i<=j} w_i^{c_i}` and `M- = prod_{i>j} w_i^{-c_i}`.
#[derive(Debug, Clone)]
pub struct CoxRelation {
    pub pair: (usize, usize),
    pub alpha: CoxCoefficient,
    pub m_plus: CoxMonomial,
    pub m_minus: CoxMonomial,
}

/// Graded presentation of the Cox ring: `n + 2 gamma` generators and
/// `gamma` trinomial relations, verified homogeneous for the class-group
/// grading.
#[derive(Debug, Clone)]
pub struct CoxPresentation {
    pub labels: Vec<String>,
    pub degrees: Vec<ClassElement>,
    pub relations: Vec<CoxRelation>,
    /// Set when some coefficient is a symbolic root.
    pub symbolic_coefficients: bool,
}

impl CoxPresentation {
    pub fn render_relation(&self, rel: &CoxRelation) -> String {
        let pair = CoxMonomial {
            factors: vec![(rel.pair.0, Int::one()), (rel.pair.1, Int::one())],
        };
        let mut out = pair.render(&self.labels);
        match &rel.alpha {
            CoxCoefficient::Rational(a) => {
                let mag = a.abs();
                let sign = if a.is_negative() { " - " } else { " + " };
                out.push_str(sign);
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&rel.m_plus.render(&self.labels));
            }
            CoxCoefficient::Symbolic { name, .. } => {
                out.push_str(&format!(" + {name}*"));
                out.push_str(&rel.m_plus.render(&self.labels));
            }
        }
        out.push_str(" - ");
        out.push_str(&rel.m_minus.render(&self.labels));
        out
    }
}

/// Cox ring of the surface: generators graded by the class group, `gamma`
/// trinomial relations, homogeneity and the complete-intersection count
/// `#generators - #relations = n + gamma` both verified.
pub fn cox_presentation(inp: &SurfaceInput, cl: &ClassGroupPresentation) -> Result<CoxPresentation> {
    let n = inp.n();
    let gamma = inp.gamma();
    let j = inp.polytope().split_index();
    let constraints = inp.polytope().constraints();
    let width = n + 2 * gamma;

    let labels: Vec<String> = (1..=width).map(|i| format!("w{i}")).collect();
    let degrees: Vec<ClassElement> = (0..width)
        .map(|i| {
            let mut e = vec![Int::zero(); width];
            e[i] = Int::one();
            cl.class_of(&e)
        })
        .collect();

    let m_plus = CoxMonomial {
        factors: (0..j)
            .filter(|&i| constraints[i].point.c.is_positive())
            .map(|i| (i, constraints[i].point.c.clone()))
            .collect(),
    };
    let m_minus = CoxMonomial {
        factors: (j..n)
            .map(|i| (i, -constraints[i].point.c.clone()))
            .collect(),
    };

    let mut symbolic = false;
    let mut relations = Vec::with_capacity(gamma);
    for (k, root) in inp.f().roots().iter().enumerate() {
        let alpha = match &root.label {
            RootLabel::Rational(r) => CoxCoefficient::Rational(r.clone()),
            RootLabel::Symbolic { minpoly, .. } => {
                symbolic = true;
                CoxCoefficient::Symbolic {
                    name: format!("alpha{}", k + 1),
                    minpoly: minpoly.render("y"),
                }
            }
        };
        relations.push(CoxRelation {
            pair: (n + 2 * k, n + 2 * k + 1),
            alpha,
            m_plus: m_plus.clone(),
            m_minus: m_minus.clone(),
        });
    }

    // Cl-homogeneity of every relation.
    for rel in &relations {
        let mut pair_vec = vec![Int::zero(); width];
        pair_vec[rel.pair.0] = Int::one();
        pair_vec[rel.pair.1] = Int::one();
        let d_pair = cl.class_of(&pair_vec);
        let d_plus = cl.class_of(&rel.m_plus.exponent_vector(width));
        let d_minus = cl.class_of(&rel.m_minus.exponent_vector(width));
        if d_pair != d_plus || d_pair != d_minus {
            return Err(Error::Internal(format!(
                "Cox relation at pair ({},{}) is not Cl-homogeneous",
                rel.pair.0 + 1,
                rel.pair.1 + 1
            )));
        }
    }
    if width - relations.len() != n + gamma {
        return Err(Error::Internal("complete-intersection count violated".into()));
    }
    Ok(CoxPresentation { labels, degrees, relations, symbolic_coefficients: symbolic })
}

/// Complexity of the pair, with both routes cross-checked: the number of
/// distinct roots of `f`, and `dim X + rho(X) - n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complexity {
    pub value: usize,
    pub gamma: usize,
    pub rho: usize,
    pub n: usize,
}

pub fn complexity(inp: &SurfaceInput, cl: &ClassGroupPresentation) -> Result<Complexity> {
    let gamma = inp.gamma();
    let n = inp.n();
    let rho = cl.rho();
    if n < 2 {
        return Err(Error::Internal("the boundary has fewer than 2 components".into()));
    }
    if 2 + rho != gamma + n {
        return Err(Error::Internal(format!(
            "complexity routes disagree: gamma = {gamma} but 2 + rho - n = {}",
            2 + rho as i64 - n as i64
        )));
    }
    Ok(Complexity { value: gamma, gamma, rho, n })
}

/// The sign pattern of the toricity criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SinglePattern {
    /// Exactly one `c_i = +1` and every other `c_i <= 0`.
    PlusOne,
    /// Exactly one `c_i = -1` and every other `c_i >= 0`.
    MinusOne,
}

/// The combinatorial certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionCertificate {
    pub gamma_is_one: bool,
    pub pattern: Option<SinglePattern>,
    pub holds: bool,
}

/// The elimination certificate: the sequence of `(generator, relation)`
/// eliminations performed, and whether all relations were removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationCertificate {
    pub steps: Vec<(usize, usize)>,
    pub polynomial_ring: bool,
}

#[derive(Debug, Clone)]
pub struct ToricityReport {
    pub toric: bool,
    pub criterion: CriterionCertificate,
    pub oracle: EliminationCertificate,
    /// Reading of the sign-pattern condition used by the criterion.
    pub note: &'static str,
}

pub const TORICITY_NOTE: &str = "criterion reads: gamma(f) = 1 and exactly one c_i = +1 with all \
others <= 0, or exactly one c_i = -1 with all others >= 0; the elimination oracle on the Cox \
presentation is kept as an independent guard";

/// Toricity by two independent certificates that must agree.
pub fn is_toric(inp: &SurfaceInput, cox: &CoxPresentation) -> Result<ToricityReport> {
    let constraints = inp.polytope().constraints();
    let one = Int::one();
    let minus_one = -Int::one();
    let pos: Vec<&Int> = constraints.iter().map(|c| &c.point.c).filter(|c| c.is_positive()).collect();
    let neg: Vec<&Int> = constraints.iter().map(|c| &c.point.c).filter(|c| c.is_negative()).collect();
    let pattern = if pos.len() == 1 && *pos[0] == one {
        Some(SinglePattern::PlusOne)
    } else if neg.len() == 1 && *neg[0] == minus_one {
        Some(SinglePattern::MinusOne)
    } else {
        None
    };
    let gamma_is_one = inp.gamma() == 1;
    let criterion = CriterionCertificate { gamma_is_one, pattern, holds: gamma_is_one && pattern.is_some() };

    let oracle = eliminate(cox);

    if criterion.holds != oracle.polynomial_ring {
        return Err(Error::CriterionOracleMismatch(format!(
            "criterion says {} (gamma = {}, pattern = {:?}) but elimination says {} (steps {:?})",
            criterion.holds,
            inp.gamma(),
            pattern,
            oracle.polynomial_ring,
            oracle.steps
        )));
    }
    Ok(ToricityReport { toric: criterion.holds, criterion, oracle, note: TORICITY_NOTE })
}

/// Repeatedly eliminates a generator that appears as a whole degree-one
/// monomial of a single remaining relation and in no other relation; the
/// presentation is a polynomial ring exactly when every relation is
/// consumed.
fn eliminate(cox: &CoxPresentation) -> EliminationCertificate {
    let mut live: Vec<usize> = (0..cox.relations.len()).collect();
    let mut steps = Vec::new();
    'outer: loop {
        for (pos, &r) in live.iter().enumerate() {
            let rel = &cox.relations[r];
            for mon in [&rel.m_plus, &rel.m_minus] {
                let [(var, exp)] = mon.factors.as_slice() else { continue };
                if !exp.is_one() {
                    continue;
                }
                let appears_elsewhere = live.iter().any(|&other| {
                    other != r
                        && cox.relations[other]
                            .monomial_supports()
                            .iter()
                            .any(|s| s.contains(var))
                });
                if !appears_elsewhere {
                    steps.push((*var, r));
                    live.remove(pos);
                    continue 'outer;
                }
            }
        }
        break;
    }
    EliminationCertificate { polynomial_ring: live.is_empty(), steps }
}

impl CoxRelation {
    fn monomial_supports(&self) -> Vec<Vec<usize>> {
        vec![
            vec![self.pair.0, self.pair.1],
            self.m_plus.factors.iter().map(|(i, _)| *i).collect(),
            self.m_minus.factors.iter().map(|(i, _)| *i).collect(),
        ]
    }
}

/// Singularity data at one vertex of the polytope.
#[derive(Debug, Clone)]
pub struct BoundaryVertex {
    pub chart1: LPoint,
    pub is_pl: bool,
    /// Cyclic quotient type of the vertex cone; smooth for non-PL vertices.
    /// PL vertices lie in a linear domain, so the two charts give the same
    /// type (checked).
    pub cone_type: ConeType,
}

/// Cyclic quotient types at the PL vertices; every other vertex is a smooth
/// point of the surface.
pub fn boundary_singularities(inp: &SurfaceInput) -> Result<Vec<BoundaryVertex>> {
    let p = inp.polytope();
    let mut out = Vec::new();
    for v in p.chart1().vertices() {
        let image = mutate(p.s(), v);
        let is_pl = p.chart2().vertex_index(&image).is_some();
        if !is_pl {
            out.push(BoundaryVertex { chart1: v.clone(), is_pl, cone_type: ConeType::smooth() });
            continue;
        }
        let t1 = vertex_cone_type(p.chart1(), v)?;
        let t2 = vertex_cone_type(p.chart2(), &image)?;
        if t1 != t2 {
            return Err(Error::Internal(format!(
                "cone types differ between charts at ({},{})",
                v.x, v.y
            )));
        }
        out.push(BoundaryVertex { chart1: v.clone(), is_pl, cone_type: t1 });
    }
    Ok(out)
}

/// One irreducible boundary component in the summary report.
#[derive(Debug, Clone)]
pub struct BoundaryComponent {
    /// 1-based divisor index.
    pub index: usize,
    pub is_sink: bool,
    pub is_source: bool,
    /// 1-based indices of the interior curves meeting this component.
    pub curves: Vec<usize>,
}

/// Log Calabi-Yau boundary summary: components with sink/source tags and
/// attached interior curves, plus smoothness/Gorenstein flags along the
/// boundary.
#[derive(Debug, Clone)]
pub struct BoundaryReport {
    pub components: Vec<BoundaryComponent>,
    pub sink: FaceTag,
    pub source: FaceTag,
    pub smooth_along_boundary: bool,
    pub gorenstein_along_boundary: bool,
    /// Advisory issued when the sink (or source) is a nodal vertex: a
    /// weighted blow-up inserting the vertical ray in both charts separates
    /// the interior curves there.
    pub nodal_advisory: Option<String>,
}

pub fn boundary_report(inp: &SurfaceInput) -> BoundaryReport {
    let p = inp.polytope();
    let ss = p.sink_source();
    let curves = interior_curves(inp.f());
    let mut components: Vec<BoundaryComponent> = (0..inp.n())
        .map(|i| BoundaryComponent {
            index: i + 1,
            is_sink: ss.sink == FaceTag::Divisor(i),
            is_source: ss.source == FaceTag::Divisor(i),
            curves: Vec::new(),
        })
        .collect();
    for curve in &curves {
        // Odd curves (x1 = 0) run into the sink, even ones into the source.
        let target = match curve.parity {
            Parity::Odd => &ss.sink,
            Parity::Even => &ss.source,
        };
        if let FaceTag::Divisor(i) = target {
            components[*i].curves.push(curve.index);
        }
    }
    let nodal_advisory = match (&ss.sink, &ss.source) {
        (FaceTag::Nodal(v), _) | (_, FaceTag::Nodal(v)) => Some(nodal_advisory_text(v)),
        _ => None,
    };
    BoundaryReport {
        components,
        sink: ss.sink,
        source: ss.source,
        smooth_along_boundary: p.chart1().is_smooth() || p.chart2().is_smooth(),
        gorenstein_along_boundary: p.chart1().is_gorenstein() || p.chart2().is_gorenstein(),
        nodal_advisory,
    }
}

pub(crate) fn nodal_advisory_text(v: &PLPoint) -> String {
    format!(
        "extremal face at chart-1 vertex ({},{}) is a nodal point: apply the weighted blow-up \
inserting the ray e2 in both charts before reading off a toric model",
        v.chart1.x, v.chart1.y
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyptych::{PLPolytope, ShearParam, TropicalPoint};
    use crate::{int, rat};

    fn e1_input() -> SurfaceInput {
        let s1 = ShearParam::new(1).unwrap();
        let pts = [
            (TropicalPoint::new(s1, 0, 0, 1).unwrap(), int(-1)),
            (TropicalPoint::new(s1, 1, -1, 0).unwrap(), int(-1)),
            (TropicalPoint::new(s1, -1, 1, 0).unwrap(), int(-1)),
            (TropicalPoint::new(s1, -1, 0, -1).unwrap(), int(-1)),
        ];
        let p = PLPolytope::build(s1, &pts).unwrap();
        let f = FactoredPoly::from_roots(&[(rat(-1, 1), 1)]).unwrap();
        SurfaceInput::new(f, p).unwrap()
    }

    fn e2_input() -> SurfaceInput {
        let s2 = ShearParam::new(2).unwrap();
        let pts = [
            (TropicalPoint::new(s2, 0, 0, 1).unwrap(), int(-1)),
            (TropicalPoint::new(s2, 1, -1, 0).unwrap(), int(-1)),
            (TropicalPoint::new(s2, -1, 1, 0).unwrap(), int(-1)),
            (TropicalPoint::new(s2, -1, -1, -1).unwrap(), int(-1)),
        ];
        let p = PLPolytope::build(s2, &pts).unwrap();
        let f = FactoredPoly::from_roots(&[(rat(-2, 1), 1), (rat(-1, 2), 1)]).unwrap();
        SurfaceInput::new(f, p).unwrap()
    }

    fn to_i64(v: &[Int]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn e1_degree_vectors() {
        let inp = e1_input();
        let dv = degree_vectors(&inp);
        assert_eq!(to_i64(&dv.y), vec![-1, 0, 0, 1, 0, 0]);
        assert_eq!(to_i64(&dv.x), vec![0, 1, -1, -1, 0, 1]);
        assert_eq!(dv.y_minus_alpha.len(), 1);
        assert_eq!(to_i64(&dv.y_minus_alpha[0]), vec![-1, 0, 0, 0, 1, 1]);
    }

    #[test]
    fn degree_duality_on_e1() {
        // deg(y) = -R0, deg(x) = R1, deg(y - alpha_k) = R_{1+k}.
        let inp = e1_input();
        let dv = degree_vectors(&inp);
        let cl = class_group(&inp).unwrap();
        let width = cl.relations.cols();
        let neg_r0: Vec<Int> = (0..width).map(|c| -cl.relations[(0, c)].clone()).collect();
        assert_eq!(dv.y, neg_r0);
        let r1: Vec<Int> = (0..width).map(|c| cl.relations[(1, c)].clone()).collect();
        assert_eq!(dv.x, r1);
        let r2: Vec<Int> = (0..width).map(|c| cl.relations[(2, c)].clone()).collect();
        assert_eq!(dv.y_minus_alpha[0], r2);
    }

    #[test]
    fn e1_class_group() {
        let inp = e1_input();
        let cl = class_group(&inp).unwrap();
        assert_eq!(cl.rho(), 3);
        assert!(cl.torsion().is_empty());
        assert_eq!(cl.describe(), "Z^3");
        let expected = IntMatrix::from_i64_rows(&[
            &[1, 0, 0, -1, 0, 0],
            &[0, 1, -1, -1, 0, 1],
            &[-1, 0, 0, 0, 1, 1],
        ]);
        assert_eq!(cl.relations, expected);
    }

    #[test]
    fn e2_class_group() {
        let inp = e2_input();
        let cl = class_group(&inp).unwrap();
        assert_eq!(cl.rho(), 4);
        assert!(cl.torsion().is_empty());
        assert_eq!(cl.describe(), "Z^4");
        assert_eq!(cl.relations.rows(), 4);
        assert_eq!(cl.relations.cols(), 8);
    }

    #[test]
    fn affine_class_group_examples() {
        let f = FactoredPoly::from_roots(&[(rat(-1, 1), 1)]).unwrap();
        assert_eq!(class_group_affine(&f).unwrap().description, "0");

        let f = FactoredPoly::from_roots(&[(rat(1, 1), 2), (rat(2, 1), 2)]).unwrap();
        let g = class_group_affine(&f).unwrap();
        assert_eq!(g.description, "Z + Z/2");

        let f = FactoredPoly::from_roots(&[(rat(1, 1), 2), (rat(2, 1), 3)]).unwrap();
        let g = class_group_affine(&f).unwrap();
        assert_eq!(g.description, "Z");
    }

    #[test]
    fn e1_cox_presentation() {
        let inp = e1_input();
        let cl = class_group(&inp).unwrap();
        let cox = cox_presentation(&inp, &cl).unwrap();
        assert_eq!(cox.labels.len(), 6);
        assert_eq!(cox.relations.len(), 1);
        assert_eq!(cox.render_relation(&cox.relations[0]), "w5*w6 - w1 - w4");
        assert!(!cox.symbolic_coefficients);
    }

    #[test]
    fn e2_cox_presentation() {
        let inp = e2_input();
        let cl = class_group(&inp).unwrap();
        let cox = cox_presentation(&inp, &cl).unwrap();
        assert_eq!(cox.labels.len(), 8);
        assert_eq!(cox.relations.len(), 2);
        assert_eq!(cox.render_relation(&cox.relations[0]), "w5*w6 - 2*w1 - w4");
        assert_eq!(cox.render_relation(&cox.relations[1]), "w7*w8 - 1/2*w1 - w4");
    }

    #[test]
    fn e1_complexity_and_toricity() {
        let inp = e1_input();
        let cl = class_group(&inp).unwrap();
        let c = complexity(&inp, &cl).unwrap();
        assert_eq!(c.value, 1);
        assert_eq!((c.rho, c.n), (3, 4));
        let cox = cox_presentation(&inp, &cl).unwrap();
        let t = is_toric(&inp, &cox).unwrap();
        assert!(t.toric);
        assert_eq!(t.criterion.pattern, Some(SinglePattern::PlusOne));
        assert_eq!(t.oracle.steps.len(), 1);
        assert_eq!(t.oracle.steps[0], (0, 0)); // w1 eliminated from relation 1
    }

    #[test]
    fn e2_complexity_and_toricity() {
        let inp = e2_input();
        let cl = class_group(&inp).unwrap();
        let c = complexity(&inp, &cl).unwrap();
        assert_eq!(c.value, 2);
        assert_eq!((c.rho, c.n), (4, 4));
        let cox = cox_presentation(&inp, &cl).unwrap();
        let t = is_toric(&inp, &cox).unwrap();
        assert!(!t.toric);
        assert!(!t.criterion.gamma_is_one);
        // The c-pattern alone holds for E2; gamma = 2 is what blocks it,
        // and the shared monomials block every elimination step.
        assert_eq!(t.criterion.pattern, Some(SinglePattern::PlusOne));
        assert!(t.oracle.steps.is_empty());
    }

    #[test]
    fn e1_boundary_singularities_smooth() {
        let inp = e1_input();
        let sing = boundary_singularities(&inp).unwrap();
        let pl: Vec<_> = sing.iter().filter(|v| v.is_pl).collect();
        assert_eq!(pl.len(), 4);
        assert!(pl.iter().all(|v| v.cone_type.is_smooth()));
        let non_pl: Vec<_> = sing.iter().filter(|v| !v.is_pl).collect();
        assert_eq!(non_pl.len(), 1);
        assert!(non_pl[0].cone_type.is_smooth());
    }

    #[test]
    fn singular_pl_vertex_has_quotient_type() {
        // c = +2 against c = -2 produces index-2 corners away from the wall.
        let s1 = ShearParam::new(1).unwrap();
        let pts = [
            (TropicalPoint::new(s1, 1, -1, 2).unwrap(), int(-4)),
            (TropicalPoint::new(s1, 1, -1, 0).unwrap(), int(-2)),
            (TropicalPoint::new(s1, -1, 1, 0).unwrap(), int(-2)),
            (TropicalPoint::new(s1, -1, -1, -2).unwrap(), int(-6)),
        ];
        let p = PLPolytope::build(s1, &pts).unwrap();
        let f = FactoredPoly::from_roots(&[(rat(-1, 1), 1)]).unwrap();
        let inp = SurfaceInput::new(f, p).unwrap();
        let sing = boundary_singularities(&inp).unwrap();
        let at = |x: i64, y: i64| {
            sing.iter().find(|v| v.chart1 == crate::lattice::LPoint::new(x, y)).unwrap()
        };
        let top_right = at(2, 2);
        assert!(top_right.is_pl);
        assert_eq!(top_right.cone_type.to_string(), "1/2(1,1)");
        let bend = at(3, 0);
        assert!(!bend.is_pl);
        assert!(bend.cone_type.is_smooth());
    }

    #[test]
    fn nodal_sink_boundary_report() {
        // Triangle with a unique top vertex: the sink is nodal, odd curves
        // attach to no divisor, and the advisory is emitted.
        let s1 = ShearParam::new(1).unwrap();
        let pts = [
            (TropicalPoint::new(s1, 0, 0, 1).unwrap(), int(-1)),
            (TropicalPoint::new(s1, 1, -1, 0).unwrap(), int(-1)),
            (TropicalPoint::new(s1, -1, 0, -1).unwrap(), int(-1)),
        ];
        let p = PLPolytope::build(s1, &pts).unwrap();
        let f = FactoredPoly::from_roots(&[(rat(-1, 1), 1)]).unwrap();
        let inp = SurfaceInput::new(f, p).unwrap();
        let rep = boundary_report(&inp);
        assert!(matches!(rep.sink, FaceTag::Nodal(_)));
        assert_eq!(rep.source, FaceTag::Divisor(1));
        assert!(rep.components.iter().all(|c| !c.is_sink));
        assert_eq!(rep.components[1].curves, vec![2]);
        assert!(rep.nodal_advisory.is_some());
    }

    #[test]
    fn e1_boundary_report() {
        let inp = e1_input();
        let rep = boundary_report(&inp);
        assert_eq!(rep.sink, FaceTag::Divisor(2));
        assert_eq!(rep.source, FaceTag::Divisor(1));
        // C1 (odd) meets the sink D3, C2 (even) meets the source D2.
        assert_eq!(rep.components[2].curves, vec![1]);
        assert_eq!(rep.components[1].curves, vec![2]);
        assert!(rep.smooth_along_boundary);
        assert!(rep.nodal_advisory.is_none());
    }
}
