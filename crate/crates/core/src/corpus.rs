//! Reference inputs and randomized generators of valid data, used by the
//! property and acceptance suites and by the mutation-identity diagnostics.

use rand::Rng;

use crate::detrop::FactoredPoly;
use crate::polyptych::{PLPolytope, ShearParam, TropicalPoint};
use crate::surface::SurfaceInput;
use crate::{int, rat, Int, Rat};

/// Pentagon example at `s = 1`: tropical points `(0,0,1)`, `(1,-1,0)`,
/// `(-1,1,0)`, `(-1,0,-1)`, all at level -1.
pub fn e1() -> PLPolytope {
    let s = ShearParam::new(1).unwrap();
    let pts = [
        (TropicalPoint::new(s, 0, 0, 1).unwrap(), int(-1)),
        (TropicalPoint::new(s, 1, -1, 0).unwrap(), int(-1)),
        (TropicalPoint::new(s, -1, 1, 0).unwrap(), int(-1)),
        (TropicalPoint::new(s, -1, 0, -1).unwrap(), int(-1)),
    ];
    PLPolytope::build(s, &pts).unwrap()
}

/// Pentagon example at `s = 2`: tropical points `(0,0,1)`, `(1,-1,0)`,
/// `(-1,1,0)`, `(-1,-1,-1)`, all at level -1.
pub fn e2() -> PLPolytope {
    let s = ShearParam::new(2).unwrap();
    let pts = [
        (TropicalPoint::new(s, 0, 0, 1).unwrap(), int(-1)),
        (TropicalPoint::new(s, 1, -1, 0).unwrap(), int(-1)),
        (TropicalPoint::new(s, -1, 1, 0).unwrap(), int(-1)),
        (TropicalPoint::new(s, -1, -1, -1).unwrap(), int(-1)),
    ];
    PLPolytope::build(s, &pts).unwrap()
}

/// The built-in reference polytopes.
pub fn builtin() -> Vec<PLPolytope> {
    vec![e1(), e2()]
}

/// A random valid polytope for the given shear parameter, by rejection
/// sampling over small tropical points and levels.
pub fn random_polytope(rng: &mut impl Rng, s: ShearParam) -> PLPolytope {
    for _ in 0..200_000 {
        let n = rng.gen_range(3..=6);
        let mut input: Vec<(TropicalPoint, Int)> = Vec::with_capacity(n);
        for k in 0..n {
            // Force at least one positive and one negative c so that the
            // polytope has a chance of being bounded; |c| = 2 shows up
            // occasionally to exercise multi-exponent monomials and
            // singular cones.
            let big = if rng.gen_ratio(1, 6) { 2 } else { 1 };
            let c: i64 = match k {
                0 => big,
                1 => -big,
                _ => rng.gen_range(-1..=1) * big,
            };
            let point = random_tropical_point(rng, s, c);
            let level = int(-rng.gen_range(1..=3));
            input.push((point, level));
        }
        if let Ok(p) = PLPolytope::build(s, &input) {
            return p;
        }
    }
    panic!("no valid random polytope found for s = {}", s.get());
}

fn random_tropical_point(rng: &mut impl Rng, s: ShearParam, c: i64) -> TropicalPoint {
    let s_i64 = s.get() as i64;
    loop {
        let candidate = if c >= 0 {
            let a: i64 = if c == 0 {
                if rng.gen_bool(0.5) { 1 } else { -1 }
            } else {
                rng.gen_range(-2..=2)
            };
            TropicalPoint::new(s, a, -a, c)
        } else {
            let sc = s_i64 * c;
            let a: i64 = rng.gen_range(sc..=0);
            TropicalPoint::new(s, a, sc - a, c)
        };
        if let Ok(p) = candidate {
            return p;
        }
    }
}

/// A random polynomial of degree `s` in roots mode: distinct nonzero
/// rationals from a small pool with a random composition of multiplicities.
pub fn random_factored_poly(rng: &mut impl Rng, s: u32) -> FactoredPoly {
    let pool: Vec<Rat> = [
        (-1, 1),
        (1, 1),
        (-2, 1),
        (2, 1),
        (-1, 2),
        (1, 2),
        (3, 1),
        (-3, 1),
        (2, 3),
        (-5, 2),
    ]
    .iter()
    .map(|&(p, q)| rat(p, q))
    .collect();
    let mut remaining = s;
    let mut roots: Vec<(Rat, u32)> = Vec::new();
    let mut available: Vec<Rat> = pool;
    while remaining > 0 {
        let mult = if remaining == 1 { 1 } else { rng.gen_range(1..=remaining) };
        let idx = rng.gen_range(0..available.len());
        roots.push((available.swap_remove(idx), mult));
        remaining -= mult;
    }
    FactoredPoly::from_roots(&roots).unwrap()
}

/// A random valid surface input with matching degrees.
pub fn random_surface_input(rng: &mut impl Rng, s: ShearParam) -> SurfaceInput {
    let p = random_polytope(rng, s);
    let f = random_factored_poly(rng, s.get());
    SurfaceInput::new(f, p).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generators_produce_valid_data() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for s_val in 1..=4 {
            let s = ShearParam::new(s_val).unwrap();
            let p = random_polytope(&mut rng, s);
            assert!(p.n() >= 3);
            let f = random_factored_poly(&mut rng, s_val);
            assert_eq!(f.s(), s_val);
        }
    }
}
