//! Dense univariate polynomials over the rationals: exact division, gcd,
//! and Yun's squarefree decomposition.

use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

/// Coefficients in ascending order with no trailing zeros; an empty list is
/// the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `y - root`
    pub fn linear_root(root: &Rat) -> Self {
        Poly::from_coeffs(vec![-root.clone(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * Rat::from(Int::from(k)))
                .collect(),
        )
    }

    /// `f(c * y)`
    pub fn compose_scale(&self, c: &Rat) -> Poly {
        let mut power = Rat::one();
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .map(|a| {
                    let out = a * &power;
                    power = &power * c;
                    out
                })
                .collect(),
        )
    }

    /// Coefficients reversed: `y^deg * f(1/y)`.
    pub fn reversed(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree();
        let lead = divisor.leading();
        let mut rem = self.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while !rem.is_zero() && rem.degree() >= dd {
            let k = rem.degree();
            let factor = rem.coeff(k) / lead.clone();
            let mut shifted = vec![Rat::zero(); k - dd];
            shifted.extend(divisor.coeffs.iter().map(|c| c * &factor));
            rem = rem.sub(&Poly::from_coeffs(shifted));
            quot[k - dd] = factor;
        }
        (Poly::from_coeffs(quot), rem)
    }

    pub fn divides_exactly(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic polynomial.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lead = self.leading();
        self.scale(&(Rat::one() / lead))
    }

    /// Deterministic rendering, descending powers, e.g. `y^2 - 1/2*y + 3`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            if out.is_empty() {
                if a.is_negative() {
                    out.push('-');
                }
            } else if a.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_part = if mag.is_one() && k > 0 { None } else { Some(mag.to_string()) };
            let var_part = match k {
                0 => None,
                1 => Some(var.to_string()),
                _ => Some(format!("{var}^{k}")),
            };
            match (coeff_part, var_part) {
                (Some(c), Some(v)) => out.push_str(&format!("{c}*{v}")),
                (Some(c), None) => out.push_str(&c),
                (None, Some(v)) => out.push_str(&v),
                (None, None) => unreachable!(),
            }
        }
        out
    }
}

/// Monic gcd by the Euclidean algorithm; `gcd(f, 0) = monic(f)`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

/// Yun's squarefree decomposition: returns `(unit, [(g_k, k)])` with each
/// `g_k` monic squarefree of positive degree, pairwise coprime, and
/// `f = unit * prod g_k^k` exactly.
pub fn squarefree_decomposition(f: &Poly) -> (Rat, Vec<(Poly, u32)>) {
    assert!(!f.is_zero(), "squarefree decomposition of zero");
    let unit = f.leading();
    let g = f.monic();
    if g.degree() == 0 {
        return (unit, Vec::new());
    }
    let mut out = Vec::new();
    let a0 = gcd(&g, &g.derivative());
    let mut b = g.divides_exactly(&a0).expect("gcd divides");
    let mut c = g.derivative().divides_exactly(&a0).expect("gcd divides derivative");
    let mut i = 1u32;
    while b.degree() > 0 {
        let d = c.sub(&b.derivative());
        let a = gcd(&b, &d);
        if a.degree() > 0 {
            out.push((a.clone(), i));
        }
        b = b.divides_exactly(&a).expect("factor divides");
        c = d.divides_exactly(&a).expect("factor divides");
        i += 1;
    }
    (unit, out)
}
