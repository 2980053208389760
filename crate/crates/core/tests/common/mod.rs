#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use so3five_core::{Field, KVector, QuadSurd, Tensor2};

pub type Q = QuadSurd;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Q {
    Q::ratio(n, d)
}

pub fn r3() -> Q {
    Q::sqrt3()
}

pub fn rand_rational(rng: &mut ChaCha8Rng) -> Q {
    Q::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn rand_vector(rng: &mut ChaCha8Rng) -> KVector<Q> {
    KVector::vector([0; 5].map(|_| rand_rational(rng)))
}

pub fn rand_kvector(rng: &mut ChaCha8Rng, k: usize) -> KVector<Q> {
    let n = so3five_core::multilinear::blade_count(k);
    KVector::from_coeffs(k, (0..n).map(|_| rand_rational(rng)).collect()).unwrap()
}

pub fn rand_vector_f64(rng: &mut ChaCha8Rng) -> KVector<f64> {
    KVector::vector([0; 5].map(|_| rng.gen_range(-1.0..1.0)))
}

pub fn rand_tensor(rng: &mut ChaCha8Rng) -> Tensor2<Q> {
    Tensor2::from_fn(|_, _| rand_rational(rng))
}

pub fn rand_symmetric(rng: &mut ChaCha8Rng) -> Tensor2<Q> {
    rand_tensor(rng).symmetric_part()
}

pub fn rand_skew(rng: &mut ChaCha8Rng) -> Tensor2<Q> {
    rand_tensor(rng).skew_part()
}

/// (cos, sin) pairs of angles whose values lie in ℚ(√2,√3).
pub fn special_angles() -> Vec<(Q, Q)> {
    let h = q(1, 2);
    let s3 = r3() * &h;
    let s2 = Q::sqrt2() * &h;
    let base = vec![
        (Q::one(), Q::zero()),
        (Q::zero(), Q::one()),
        (s3.clone(), h.clone()),
        (h.clone(), s3.clone()),
        (s2.clone(), s2.clone()),
    ];
    let mut out = Vec::new();
    for (c, s) in base {
        out.push((c.clone(), s.clone()));
        out.push((-s.clone(), c.clone()));
        out.push((-c.clone(), -s.clone()));
        out.push((s, -c));
    }
    out
}

/// Points of the unit sphere with rational coordinates (inverse stereographic projection).
pub fn rational_sphere_points(n: usize, rng: &mut ChaCha8Rng) -> Vec<[Q; 3]> {
    (0..n)
        .map(|_| {
            let u = rand_rational(rng);
            let v = rand_rational(rng);
            let d = (Q::one() + &u.square() + &v.square()).inv().unwrap();
            [
                u.scale_int(2) * &d,
                v.scale_int(2) * &d,
                (Q::one() - &u.square() - &v.square()) * &d,
            ]
        })
        .collect()
}

pub fn unit_sphere_f64(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v = [0; 3].map(|_| rng.gen_range(-1.0..1.0f64));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-3 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}
