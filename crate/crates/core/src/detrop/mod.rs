//! The defining polynomial `f` of the detropicalization
//! `A_f = K[x1, x2, y^{+-1}] / (x1 x2 - f(y))`: representations, squarefree
//! strata, moduli normal form, isomorphism testing, the automorphism group,
//! interior curves and interior Du Val singularities.
//!
//! Everything is computed over the rationals. Irrational roots are never
//! isolated; they are carried symbolically through their squarefree stratum.

mod poly;

pub use poly::{gcd, squarefree_decomposition, Poly};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{Int, Rat};

/// A root of `f`, either an exact rational or a symbolic root of a
/// squarefree stratum of degree at least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootLabel {
    Rational(Rat),
    Symbolic {
        /// Index of the stratum in [`FactoredPoly::strata`].
        stratum: usize,
        /// 1-based index of the root within its stratum.
        index: u32,
        /// The squarefree stratum the root satisfies.
        minpoly: Poly,
    },
}

impl RootLabel {
    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            RootLabel::Rational(r) => Some(r),
            RootLabel::Symbolic { .. } => None,
        }
    }
}

impl std::fmt::Display for RootLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootLabel::Rational(r) => write!(f, "{r}"),
            RootLabel::Symbolic { stratum: _, index, minpoly } => {
                write!(f, "root {} of {}", index, minpoly.render("y"))
            }
        }
    }
}

/// One distinct root together with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub label: RootLabel,
    pub multiplicity: u32,
}

/// How `f` was supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyRepr {
    /// Rational roots with multiplicities; `f` is monic.
    Roots(Vec<(Rat, u32)>),
    /// Ascending coefficient list `a_0, ..., a_s`.
    Coeffs(Vec<Rat>),
}

/// A degree-`s` polynomial with nonzero constant term, its squarefree
/// strata `f = unit * prod g_k^k`, and the derived root data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    s: u32,
    repr: PolyRepr,
    coeffs: Poly,
    unit: Rat,
    strata: Vec<(Poly, u32)>,
    roots: Vec<Root>,
}

impl FactoredPoly {
    /// Builds `f = prod (y - root_i)^{beta_i}` from distinct nonzero
    /// rational roots.
    pub fn from_roots(roots: &[(Rat, u32)]) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::InvalidPolynomial("at least one root required".into()));
        }
        for (i, (root, mult)) in roots.iter().enumerate() {
            if root.is_zero() {
                return Err(Error::InvalidPolynomial("roots must be nonzero".into()));
            }
            if *mult == 0 {
                return Err(Error::InvalidPolynomial("multiplicities must be positive".into()));
            }
            if roots[..i].iter().any(|(r, _)| r == root) {
                return Err(Error::InvalidPolynomial(format!("duplicate root {root}")));
            }
        }
        let s: u32 = roots.iter().map(|(_, m)| m).sum();
        let mut coeffs = Poly::one();
        for (root, mult) in roots {
            coeffs = coeffs.mul(&Poly::linear_root(root).pow(*mult));
        }
        let mut strata: Vec<(Poly, u32)> = Vec::new();
        let mut mults: Vec<u32> = roots.iter().map(|(_, m)| *m).collect();
        mults.sort_unstable();
        mults.dedup();
        for k in mults {
            let mut g = Poly::one();
            for (root, mult) in roots {
                if *mult == k {
                    g = g.mul(&Poly::linear_root(root));
                }
            }
            strata.push((g, k));
        }
        let root_data = roots
            .iter()
            .map(|(root, mult)| Root { label: RootLabel::Rational(root.clone()), multiplicity: *mult })
            .collect();
        let fp = FactoredPoly {
            s,
            repr: PolyRepr::Roots(roots.to_vec()),
            coeffs,
            unit: Rat::one(),
            strata,
            roots: root_data,
        };
        fp.check_consistency()?;
        Ok(fp)
    }

    /// Builds `f` from its ascending coefficient list `a_0, ..., a_s`.
    /// Linear strata contribute exact rational roots; higher-degree strata
    /// contribute symbolic roots bound to their stratum.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        if coeffs[0].is_zero() {
            return Err(Error::InvalidPolynomial("constant term must be nonzero".into()));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::InvalidPolynomial("leading coefficient must be nonzero".into()));
        }
        let s = (coeffs.len() - 1) as u32;
        let f = Poly::from_coeffs(coeffs.clone());
        let (unit, strata) = squarefree_decomposition(&f);
        let mut roots = Vec::new();
        for (idx, (g, k)) in strata.iter().enumerate() {
            if g.degree() == 1 {
                let root = -g.coeff(0);
                roots.push(Root { label: RootLabel::Rational(root), multiplicity: *k });
            } else {
                for index in 1..=g.degree() as u32 {
                    roots.push(Root {
                        label: RootLabel::Symbolic { stratum: idx, index, minpoly: g.clone() },
                        multiplicity: *k,
                    });
                }
            }
        }
        let fp = FactoredPoly {
            s,
            repr: PolyRepr::Coeffs(coeffs),
            coeffs: f,
            unit,
            strata,
            roots,
        };
        fp.check_consistency()?;
        Ok(fp)
    }

    fn check_consistency(&self) -> Result<()> {
        let mut rebuilt = Poly::constant(self.unit.clone());
        for (g, k) in &self.strata {
            rebuilt = rebuilt.mul(&g.pow(*k));
        }
        if rebuilt != self.coeffs {
            return Err(Error::Internal("strata do not reproduce f".into()));
        }
        // Independent route to gamma: deg f - deg gcd(f, f').
        let g = gcd(&self.coeffs, &self.coeffs.derivative());
        if self.coeffs.degree() - g.degree() != self.roots.len() {
            return Err(Error::Internal("gcd route and strata disagree on gamma".into()));
        }
        Ok(())
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn repr(&self) -> &PolyRepr {
        &self.repr
    }

    /// Expanded coefficients of `f`, ascending.
    pub fn coeffs(&self) -> &Poly {
        &self.coeffs
    }

    pub fn unit(&self) -> &Rat {
        &self.unit
    }

    /// Squarefree strata `(g_k, k)` in increasing multiplicity.
    pub fn strata(&self) -> &[(Poly, u32)] {
        &self.strata
    }

    /// Distinct roots with multiplicities in canonical order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.roots.iter().map(|r| r.multiplicity).collect()
    }

    /// Number of distinct roots.
    pub fn gamma(&self) -> usize {
        self.roots.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.roots.iter().all(|r| r.multiplicity == 1)
    }

    /// True when every root is rational.
    pub fn all_roots_rational(&self) -> bool {
        self.roots.iter().all(|r| matches!(r.label, RootLabel::Rational(_)))
    }
}

/// Number of distinct roots of `f` (the degree of its squarefree part).
pub fn gamma(f: &FactoredPoly) -> usize {
    f.gamma()
}

/// The scaling bringing `f` to the form `y^s + b_{s-1} y^{s-1} + ... + b_1 y + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    /// `b_1, ..., b_{s-1}` (empty when `s = 1`).
    pub b: Vec<Rat>,
    /// Witness: `lambda * f(c * y)` is the normal form.
    pub lambda: Rat,
    pub c: Rat,
}

/// Exact rational `n`-th root, when it exists. Even `n` returns the
/// positive root.
fn rational_nth_root(x: &Rat, n: u32) -> Option<Rat> {
    use num_bigint::Sign;
    if x.is_zero() {
        return Some(Rat::zero());
    }
    if n.is_multiple_of(2) && x.is_negative() {
        return None;
    }
    let num = x.numer().abs();
    let den = x.denom().clone();
    let nr = num.nth_root(n);
    let dr = den.nth_root(n);
    if num_traits::pow(nr.clone(), n as usize) != num || num_traits::pow(dr.clone(), n as usize) != den {
        return None;
    }
    let sign = if x.numer().sign() == Sign::Minus { -Int::one() } else { Int::one() };
    Some(Rat::new(sign * nr, dr))
}

/// Monic, constant-term-1 normal form of `f` over the rationals.
///
/// Fails with [`Error::NoRationalScaling`] when `a_0 / a_s` has no rational
/// `s`-th root; downstream invariants that need only the strata still run.
pub fn normal_form(f: &FactoredPoly) -> Result<NormalForm> {
    let s = f.s();
    let a0 = f.coeffs().coeff(0);
    let a_s = f.coeffs().coeff(s as usize);
    let ratio = a0.clone() / a_s;
    let c = rational_nth_root(&ratio, s).ok_or_else(|| Error::NoRationalScaling {
        s,
        ratio: ratio.to_string(),
    })?;
    let lambda = Rat::one() / a0;
    let scaled = f.coeffs().compose_scale(&c).scale(&lambda);
    debug_assert!(scaled.is_monic());
    debug_assert!(scaled.coeff(0).is_one());
    let b = (1..s as usize).map(|k| scaled.coeff(k)).collect();
    Ok(NormalForm { b, lambda, c })
}

/// Which of the two isomorphism shapes matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flip {
    Plain,
    Reversed,
}

/// Result of the isomorphism test between two detropicalizations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic { lambda: Rat, c: Rat, flip: Flip },
    Distinct,
}

fn match_plain(f: &Poly, g: &Poly) -> Option<(Rat, Rat)> {
    let s = f.degree();
    let lambda = g.coeff(0) / f.coeff(0);
    for k in 0..=s {
        if f.coeff(k).is_zero() != g.coeff(k).is_zero() {
            return None;
        }
    }
    let k = (1..=s).find(|&k| !f.coeff(k).is_zero()).expect("degree is positive");
    let target = g.coeff(k) / (&lambda * f.coeff(k));
    let base = rational_nth_root(&target, k as u32)?;
    let candidates = if k % 2 == 0 { vec![base.clone(), -base] } else { vec![base] };
    candidates.into_iter().find(|c| {
        (0..=s).all(|k| &lambda * f.coeff(k) * num_traits::pow(c.clone(), k) == g.coeff(k))
    }).map(|c| (lambda, c))
}

/// Decides whether `A_f` and `A_g` are isomorphic: searches for rational
/// `lambda, c` with `lambda f(c y) = g(y)` or `lambda y^s f(c / y) = g(y)`.
/// `c` is pinned by a single coefficient ratio and then verified on every
/// coefficient.
pub fn are_isomorphic(f: &FactoredPoly, g: &FactoredPoly) -> IsoVerdict {
    if f.s() != g.s() {
        return IsoVerdict::Distinct;
    }
    if let Some((lambda, c)) = match_plain(f.coeffs(), g.coeffs()) {
        return IsoVerdict::Isomorphic { lambda, c, flip: Flip::Plain };
    }
    if let Some((lambda_r, c_r)) = match_plain(&f.coeffs().reversed(), g.coeffs()) {
        // lambda' rev(f)(c' y) = g  <=>  lambda y^s f(c / y) = g
        // with c = 1/c', lambda = lambda' c'^s.
        let c = Rat::one() / c_r.clone();
        let lambda = lambda_r * num_traits::pow(c_r, f.s() as usize);
        return IsoVerdict::Isomorphic { lambda, c, flip: Flip::Reversed };
    }
    IsoVerdict::Distinct
}

/// An element `(eps, zeta^j)` of the dihedral group `D_{2s}`, acting by
/// `y -> zeta^j * y^((-1)^eps)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DihedralElement {
    pub eps: u8,
    pub j: u32,
}

impl DihedralElement {
    pub fn identity() -> Self {
        DihedralElement { eps: 0, j: 0 }
    }

    /// Group law: `(e1, j1) * (e2, j2) = (e1 + e2, j1 + (-1)^{e1} j2)`.
    pub fn compose(self, other: DihedralElement, s: u32) -> DihedralElement {
        let j = if self.eps == 0 {
            (self.j + other.j) % s
        } else {
            (self.j + s - other.j % s) % s
        };
        DihedralElement { eps: (self.eps + other.eps) % 2, j }
    }
}

impl std::fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.eps, self.j)
    }
}

/// The subgroup of `D_{2s}` fixing the normal form of `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroup {
    pub s: u32,
    pub elements: Vec<DihedralElement>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, e: DihedralElement) -> bool {
        self.elements.contains(&e)
    }
}

/// Brute force over `eps in {0,1}` and `j mod s` on the normal form of `f`.
///
/// Roots of unity are handled symbolically: `zeta^m` is rational only for
/// `m = 0 mod s` (value 1) or `m = s/2 mod s` with `s` even (value -1); a
/// constraint equating a nonzero rational coefficient with an irrational
/// multiple of another rejects the candidate.
pub fn aut(f: &FactoredPoly) -> Result<AutGroup> {
    let s = f.s();
    let nf = normal_form(f).map_err(|_| Error::NotNormalForm)?;
    let b = |k: usize| -> Rat {
        if k == 0 || k == s as usize {
            Rat::one()
        } else {
            nf.b[k - 1].clone()
        }
    };
    let mut elements = Vec::new();
    for j in 0..s {
        // eps = 0: b_k = zeta^{jk} b_k for all k.
        let ok = (1..s as usize).all(|k| {
            b(k).is_zero() || (j as usize * k).is_multiple_of(s as usize)
        });
        if ok {
            elements.push(DihedralElement { eps: 0, j });
        }
        // eps = 1: b_m = zeta^{j(s-m)} b_{s-m} for all m.
        let ok = (0..=s as usize).all(|m| {
            let k = s as usize - m;
            let rhs = b(k);
            if rhs.is_zero() {
                return b(m).is_zero();
            }
            let e = (j as usize * k) % s as usize;
            if e == 0 {
                b(m) == rhs
            } else if s.is_multiple_of(2) && e == s as usize / 2 {
                b(m) == -rhs
            } else {
                false
            }
        });
        if ok {
            elements.push(DihedralElement { eps: 1, j });
        }
    }
    elements.sort();
    let group = AutGroup { s, elements };
    if !group.contains(DihedralElement::identity()) {
        return Err(Error::Internal("automorphism set misses the identity".into()));
    }
    for &a in &group.elements {
        for &b in &group.elements {
            if !group.contains(a.compose(b, s)) {
                return Err(Error::Internal(format!(
                    "automorphism set not closed: {a} * {b} missing"
                )));
            }
        }
    }
    Ok(group)
}

/// Whether a curve lies on `x1 = 0` (odd) or `x2 = 0` (even).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// One of the `2*gamma` affine lines inside the affine surface:
/// `C_{2i-1} = {x1 = 0, y = alpha_i}` and `C_{2i} = {x2 = 0, y = alpha_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorCurve {
    /// 1-based index `k` of `C_k`, `k = 1, ..., 2*gamma`.
    pub index: usize,
    pub parity: Parity,
    pub root: RootLabel,
}

/// The `2*gamma` interior curves, odd/even in pairs over each distinct root.
pub fn interior_curves(f: &FactoredPoly) -> Vec<InteriorCurve> {
    let mut out = Vec::with_capacity(2 * f.gamma());
    for (i, root) in f.roots().iter().enumerate() {
        out.push(InteriorCurve { index: 2 * i + 1, parity: Parity::Odd, root: root.label.clone() });
        out.push(InteriorCurve { index: 2 * i + 2, parity: Parity::Even, root: root.label.clone() });
    }
    out
}

/// Du Val singularities of the affine surface: one `A_{beta_i - 1}` at
/// `(0, 0, alpha_i)` for each root with multiplicity at least 2.
pub fn interior_singularities(f: &FactoredPoly) -> Vec<(RootLabel, u32)> {
    f.roots()
        .iter()
        .filter(|r| r.multiplicity >= 2)
        .map(|r| (r.label.clone(), r.multiplicity - 1))
        .collect()
}
