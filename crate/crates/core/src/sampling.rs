//! Random torsion/curvature data with prescribed normality conditions.

use rand::Rng;

use crate::analysis::{q_reduced, q_test_vectors};
use crate::examples::StructureData;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::multilinear::{KVector, Tensor2, DIM};
use crate::representation::{project, Component, KappaTriple};
use crate::structure::{psi_inverse, CurvatureDecomposition, TorsionTensor};
use crate::twistor::TwistorPoint;

/// One of the four normality conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    StarT,
    S9,
    L27,
    Q,
}

impl Condition {
    pub const ALL: [Condition; 4] = [Condition::StarT, Condition::S9, Condition::L27, Condition::Q];

    pub fn name(self) -> &'static str {
        match self {
            Condition::StarT => "star_T",
            Condition::S9 => "S9",
            Condition::L27 => "L27",
            Condition::Q => "Q",
        }
    }
}

/// n/d with n ∈ [−9, 9], d ∈ [1, 4].
pub fn rand_ratio<F: Field, R: Rng>(rng: &mut R) -> F {
    F::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn rand_kvector<F: Field, R: Rng>(rng: &mut R, degree: usize) -> KVector<F> {
    let n = crate::multilinear::blade_count(degree);
    KVector::from_coeffs(degree, (0..n).map(|_| rand_ratio(rng)).collect()).expect("length")
}

pub fn rand_l23<F: Field, R: Rng>(rng: &mut R) -> KVector<F> {
    KappaTriple::standard().combine(&[0; 3].map(|_| rand_ratio(rng)))
}

fn rand_symmetric<F: Field, R: Rng>(rng: &mut R) -> Tensor2<F> {
    Tensor2::from_fn(|_, _| rand_ratio(rng)).symmetric_part()
}

fn rand_in<F: Field, R: Rng>(rng: &mut R, c: Component) -> Tensor2<F> {
    loop {
        let t = if c == Component::L23 || c == Component::L27 {
            Tensor2::from_fn(|_, _| rand_ratio(rng)).skew_part()
        } else {
            rand_symmetric(rng)
        };
        let p = project(c, &t);
        if !p.near_zero(1e-9) {
            return p;
        }
    }
}

/// Spanning set of a symmetric component: projections of eᵢ⊙eⱼ.
fn symmetric_generators<F: Field>(c: Component) -> Vec<Tensor2<F>> {
    let mut out = Vec::new();
    for i in 0..DIM {
        for j in i..DIM {
            out.push(project(c, &Tensor2::sym_product(&KVector::e(i), &KVector::e(j))));
        }
    }
    out
}

/// The six values Q(κᵢ, v) that decide Q = 0.
fn q_values<F: Field>(a: &KVector<F>, eta: &Tensor2<F>) -> Vec<F> {
    let mut out = Vec::with_capacity(6);
    for i in 0..3 {
        let p = TwistorPoint::kappa(i);
        for x in q_test_vectors::<F>(i) {
            out.push(q_reduced(a, eta, &p, &x));
        }
    }
    out
}

/// A random element of the kernel of the Q values over the given generators,
/// each generator being an (A, η) pair.
fn q_kernel_sample<F: Field, R: Rng>(rng: &mut R, gens: &[(KVector<F>, Tensor2<F>)], tol: f64) -> (KVector<F>, Tensor2<F>) {
    let cols: Vec<Vec<F>> = gens.iter().map(|(a, e)| q_values(a, e)).collect();
    let m = Matrix::from_columns(&cols);
    let kernel = m.nullspace(tol);
    let mut a = KVector::zero(4);
    let mut eta = Tensor2::zero();
    for v in &kernel {
        let c: F = rand_ratio(rng);
        for (coef, (ga, ge)) in v.iter().zip(gens) {
            let w = c.clone() * coef;
            a = &a + &ga.scale(&w);
            eta = eta.add(&ge.scale(&w));
        }
    }
    (a, eta)
}

fn assemble<F: Field>(tau: KVector<F>, d: CurvatureDecomposition<F>, tol: f64) -> StructureData<F> {
    StructureData {
        torsion: TorsionTensor::from_form(tau.hodge()).expect("3-form"),
        curvature: psi_inverse(&d, tol).expect("valid decomposition"),
    }
}

fn normal_parts<F: Field, R: Rng>(rng: &mut R, tol: f64) -> (KVector<F>, CurvatureDecomposition<F>) {
    let mut gens: Vec<(KVector<F>, Tensor2<F>)> =
        (0..5).map(|i| (KVector::basis(4, i), Tensor2::zero())).collect();
    gens.extend(symmetric_generators(Component::S5).into_iter().map(|e| (KVector::zero(4), e)));
    let (a, eta) = q_kernel_sample(rng, &gens, tol);
    let d = CurvatureDecomposition {
        a,
        rho_minus: Tensor2::from_bivector(&rand_l23(rng)),
        s: rand_ratio(rng),
        eta,
    };
    (rand_l23(rng), d)
}

/// Data satisfying all four normality conditions.
pub fn random_normal_data<F: Field, R: Rng>(rng: &mut R, tol: f64) -> StructureData<F> {
    let (tau, d) = normal_parts(rng, tol);
    assemble(tau, d, tol)
}

/// Data violating exactly the given condition.
pub fn random_violating_data<F: Field, R: Rng>(rng: &mut R, c: Condition, tol: f64) -> StructureData<F> {
    let (mut tau, mut d) = normal_parts::<F, R>(rng, tol);
    match c {
        Condition::StarT => {
            tau = &tau + &rand_in::<F, R>(rng, Component::L27).to_bivector();
        }
        Condition::L27 => {
            d.rho_minus = d.rho_minus.add(&rand_in(rng, Component::L27));
        }
        Condition::S9 => {
            // Keep Q = 0 so that only the ⊙²₉ condition fails.
            let gens: Vec<_> = symmetric_generators(Component::S9)
                .into_iter()
                .map(|e| (KVector::zero(4), e))
                .collect();
            loop {
                let (_, eta9) = q_kernel_sample(rng, &gens, tol);
                if !eta9.near_zero(tol) {
                    d.eta = d.eta.add(&eta9);
                    break;
                }
            }
        }
        Condition::Q => loop {
            let a: KVector<F> = rand_kvector(rng, 4);
            let eta = rand_in(rng, Component::S5);
            if q_values(&a, &eta).iter().any(|v| !v.near_zero(tol)) {
                d.a = a;
                d.eta = eta;
                break;
            }
        },
    }
    assemble(tau, d, tol)
}
