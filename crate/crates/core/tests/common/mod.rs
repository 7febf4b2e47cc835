//! Fixtures shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use sigma3::curvering::{sample_sym_square, trial_rng, u_from_points, CurveParams, CurvePoint};
use sigma3::dynsys::{State4, System};
use sigma3::exactalg::{Poly, Scalar, Universe};
use sigma3::flows::{integrate, Tolerances};
use sigma3::Error;

pub fn rng(seed: u64, index: u64) -> ChaCha8Rng {
    trial_rng(seed, index)
}

/// Nonsingular parameters y4..y14 with values in {-1, -3/4, ..., 1}.
pub fn small_params(rng: &mut impl Rng) -> CurveParams {
    loop {
        let vals: [BigRational; 6] =
            std::array::from_fn(|_| BigRational::new(rng.gen_range(-4i64..=4).into(), 4.into()));
        let p = CurveParams::from_rationals(vals);
        if p.is_nonsingular() == Some(true) {
            return p;
        }
    }
}

pub fn flow_params(p: &CurveParams) -> [Complex64; 4] {
    let y = p.complex_values().unwrap();
    [y[0], y[1], y[2], y[3]]
}

/// A point of the disk |z| <= r.
pub fn in_disk(rng: &mut impl Rng, r: f64) -> Complex64 {
    loop {
        let z = Complex64::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r));
        if z.norm() <= r {
            return z;
        }
    }
}

/// A state on the level set of `params`: the u-coordinates of two curve points.
pub fn level_state(params: &CurveParams, rng: &mut impl Rng) -> State4 {
    sample_sym_square(params, rng).unwrap().u
}

/// A level-set state of unit scale: both X in the unit disk, at least
/// `sep` apart, with Y = +-sqrt(Q(X)).
pub fn unit_level_state(params: &CurveParams, rng: &mut impl Rng, sep: f64) -> State4 {
    loop {
        let (x1, x2) = (in_disk(rng, 1.0), in_disk(rng, 1.0));
        if (x1 - x2).norm() < sep {
            continue;
        }
        let lift = |x: Complex64, rng: &mut dyn rand::RngCore| {
            let s = params.q_complex(x).unwrap().sqrt();
            CurvePoint { x, y: if rng.gen::<bool>() { s } else { -s } }
        };
        let (p1, p2) = (lift(x1, rng), lift(x2, rng));
        return u_from_points(p1, p2).unwrap();
    }
}

pub fn flow_to(system: System, x: State4, y: [Complex64; 4], t: Complex64) -> Result<State4, Error> {
    Ok(integrate(system, x, y, t, Tolerances::default())?.last().state)
}

pub fn max_dist(a: &State4, b: &State4) -> f64 {
    (0..4).map(|k| (a[k] - b[k]).norm()).fold(0.0, f64::max)
}

/// Random polynomial with `terms` monomials of total degree <= `max_deg` and
/// integer coefficients in [-5, 5].
pub fn random_poly(rng: &mut impl Rng, u: &std::sync::Arc<Universe>, terms: usize, max_deg: u32) -> Poly {
    let mut p = Poly::zero(u);
    for _ in 0..terms {
        let mut m = vec![0u32; u.len()];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            m[rng.gen_range(0..u.len())] += 1;
        }
        let c = rng.gen_range(-5i64..=5);
        p.add_term(m, Scalar::from_i64(c));
    }
    p
}

pub fn xy_universe() -> std::sync::Arc<Universe> {
    Universe::new(&[("X1", 2), ("Y1", 7), ("X2", 2), ("Y2", 7)])
}

/// g + swap(g) for a random g in X1, Y1, X2, Y2.
pub fn random_symmetric(rng: &mut impl Rng, terms: usize, max_deg: u32) -> Poly {
    let u = xy_universe();
    let g = random_poly(rng, &u, terms, max_deg);
    &g + &g.permute(&[2, 3, 0, 1])
}
