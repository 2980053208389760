mod common;

use common::*;
use so3five_core::matrix::Matrix;
use so3five_core::multilinear::blades;
use so3five_core::representation::l23_part;
use so3five_core::structure::*;
use so3five_core::{Error, Field, KVector, Tensor2};

const TOL: f64 = 1e-12;

fn rand_curvature(rng: &mut rand_chacha::ChaCha8Rng) -> CurvatureMap<Q> {
    let m = Matrix::from_fn(10, 10, |_, _| rand_rational(rng));
    CurvatureMap::from_map(|b| l23_part(&KVector::from_coeffs(2, m.mul_vec(b.coeffs())).unwrap()))
}

fn rand_decomposition(rng: &mut rand_chacha::ChaCha8Rng) -> CurvatureDecomposition<Q> {
    let sym = rand_symmetric(rng);
    let tr = sym.trace() * &q(1, 5);
    CurvatureDecomposition {
        a: rand_kvector(rng, 4),
        rho_minus: rand_skew(rng),
        s: rand_rational(rng),
        eta: sym.sub(&Tensor2::metric().scale(&tr)),
    }
}

#[test]
fn rank_one_kappa3_decomposes_to_known_values() {
    let k = CurvatureMap::rank_one_kappa3(&q(2, 1));
    let rho = ricci(&k);
    assert_eq!(rho, Tensor2::diagonal([0, 8, 2, 8, 2].map(|v| q(v, 1))));
    let d = psi_decompose(&k, TOL).unwrap();
    assert_eq!(d.s, q(20, 1));
    assert_eq!(d.eta, Tensor2::diagonal([-4, 4, -2, 4, -2].map(|v| q(v, 1))));
    assert!(d.rho_minus.near_zero(TOL));
    assert_eq!(d.a, KVector::blade(&[1, 2, 3, 4]).scale(&q(-4, 3)));
}

#[test]
fn projection_has_einstein_ricci_and_is_its_own_killing_multiple() {
    let p = CurvatureMap::<Q>::projection();
    assert_eq!(ricci(&p), Tensor2::metric().scale(&q(6, 5)));
    assert_eq!(chi_killing_t(&p, TOL), Some(Q::one()));
    assert_eq!(chi_killing_t(&p.scale(&q(1, 3)), TOL), Some(q(3, 1)));
    assert_eq!(chi_killing_t(&p.scale(&q(-1, 1)), TOL), None);
    assert_eq!(chi_killing_t(&CurvatureMap::rank_one_kappa3(&Q::one()), TOL), None);
    assert_eq!(chi_killing_t(&CurvatureMap::<Q>::zero(), TOL), None);
    assert!(antisym(&p).is_zero());
}

#[test]
fn psi_inverse_round_trips_decompositions() {
    let mut rng = rng(11);
    for _ in 0..50 {
        let d = rand_decomposition(&mut rng);
        let k = psi_inverse(&d, TOL).unwrap();
        assert!(k.range_residual().is_zero());
        assert_eq!(psi_decompose(&k, TOL).unwrap(), d);
    }
}

#[test]
fn psi_round_trips_curvature_maps() {
    let mut rng = rng(12);
    for _ in 0..50 {
        let k = rand_curvature(&mut rng);
        let d = psi_decompose(&k, TOL).unwrap();
        assert_eq!(psi_inverse(&d, TOL).unwrap(), k);
    }
}

#[test]
fn psi_round_trips_in_float_mode() {
    let mut rng = rng(13);
    let d = rand_decomposition(&mut rng);
    let df = CurvatureDecomposition {
        a: d.a.to_f64(),
        rho_minus: Tensor2::from_fn(|i, j| d.rho_minus.get(i, j).to_f64()),
        s: d.s.to_f64(),
        eta: Tensor2::from_fn(|i, j| d.eta.get(i, j).to_f64()),
    };
    let k = psi_inverse(&df, 1e-9).unwrap();
    let back = psi_decompose(&k, 1e-9).unwrap();
    assert!((&back.a - &df.a).max_abs() < 1e-12);
    assert!(back.rho_minus.sub(&df.rho_minus).max_abs() < 1e-12);
    assert!((back.s - df.s).abs() < 1e-12);
    assert!(back.eta.sub(&df.eta).max_abs() < 1e-12);
}

fn image_rank(maps: &[CurvatureMap<Q>]) -> usize {
    let rows: Vec<Vec<Q>> = maps.iter().map(|k| k.matrix().entries().to_vec()).collect();
    Matrix::from_rows(rows).rank(TOL)
}

fn images() -> Vec<Vec<CurvatureMap<Q>>> {
    let nu: Vec<_> = (0..5).map(|i| k_nu(&KVector::basis(4, i)).unwrap()).collect();
    let minus: Vec<_> = (0..10)
        .map(|i| k_minus(&Tensor2::from_bivector(&KVector::basis(2, i)), TOL).unwrap())
        .collect();
    let scalar = vec![CurvatureMap::projection()];
    let mut plus = Vec::new();
    for i in 0..5 {
        for j in i..5 {
            let mut t = Tensor2::sym_product(&KVector::e(i), &KVector::e(j));
            let tr = t.trace() * &q(1, 5);
            t = t.sub(&Tensor2::metric().scale(&tr));
            plus.push(k_plus(&t, TOL).unwrap());
        }
    }
    vec![nu, minus, scalar, plus]
}

#[test]
fn constructor_images_have_full_dimension() {
    let ims = images();
    let dims: Vec<usize> = ims.iter().map(|v| image_rank(v)).collect();
    assert_eq!(dims, vec![5, 10, 1, 14]);
    // Hom(Λ², Λ²₃) has dimension 10 · 3.
    let all: Vec<_> = ims.into_iter().flatten().collect();
    assert_eq!(image_rank(&all), 30);
}

#[test]
fn constructor_images_are_mutually_orthogonal() {
    let ims = images();
    for a in 0..ims.len() {
        for b in a + 1..ims.len() {
            for x in &ims[a] {
                for y in &ims[b] {
                    assert!(x.inner(y).is_zero(), "images {a} and {b} overlap");
                }
            }
        }
    }
}

#[test]
fn range_condition_is_enforced() {
    let id = CurvatureMap::from_map(|b: &KVector<Q>| b.clone());
    assert!(matches!(psi_decompose(&id, TOL), Err(Error::RangeCondition(_))));
    assert!(matches!(
        CurvatureMap::new(Matrix::<Q>::identity(10), TOL),
        Err(Error::RangeCondition(_))
    ));
    let p = CurvatureMap::<Q>::projection();
    assert!(CurvatureMap::new(p.matrix().clone(), TOL).is_ok());
}

#[test]
fn constructors_reject_wrong_symmetry() {
    let sym = Tensor2::diagonal([1, -1, 0, 0, 0].map(|v| q(v, 1)));
    let skew = Tensor2::from_bivector(&KVector::<Q>::blade(&[0, 1]));
    assert!(k_minus(&sym, TOL).is_err());
    assert!(k_plus(&skew, TOL).is_err());
    assert!(k_plus(&Tensor2::<Q>::metric(), TOL).is_err());
    assert!(k_nu(&KVector::<Q>::blade(&[0, 1, 2])).is_err());
}

#[test]
fn eta_prime_is_a_multiple_on_irreducible_pieces() {
    // η ↦ η′ commutes with SO(3), so it is scalar on the metric.
    assert_eq!(eta_prime(&Tensor2::<Q>::metric()), Tensor2::metric().scale(&q(6, 1)));
}

#[test]
fn antisym_matches_full_alternation() {
    let mut rng = rng(14);
    let k = rand_curvature(&mut rng);
    let a = antisym(&k);
    for m in blades(4) {
        let ix = so3five_core::multilinear::mask_indices(*m);
        let mut sum = Q::zero();
        for p in permutations(&ix) {
            let e: Vec<_> = p.0.iter().map(|&i| KVector::<Q>::e(i)).collect();
            let v = k.eval(&e[0], &e[1], &e[2], &e[3]);
            sum = sum + &v.scale_int(p.1);
        }
        assert_eq!(sum * &q(1, 24), a.component(&ix));
    }
}

fn permutations(ix: &[usize]) -> Vec<(Vec<usize>, i64)> {
    if ix.len() == 1 {
        return vec![(ix.to_vec(), 1)];
    }
    let mut out = Vec::new();
    for i in 0..ix.len() {
        let mut rest = ix.to_vec();
        let head = rest.remove(i);
        for (mut p, s) in permutations(&rest) {
            p.insert(0, head);
            out.push((p, if i % 2 == 0 { s } else { -s }));
        }
    }
    out
}

#[test]
fn torsion_is_totally_skew() {
    let mut rng = rng(15);
    let t = TorsionTensor::from_form(rand_kvector(&mut rng, 3)).unwrap();
    let (x, y, z) = (rand_vector(&mut rng), rand_vector(&mut rng), rand_vector(&mut rng));
    let v = t.eval(&x, &y, &z);
    assert_eq!(t.eval(&y, &x, &z), -v.clone());
    assert_eq!(t.eval(&x, &z, &y), -v.clone());
    assert_eq!(t.eval(&z, &x, &y), v.clone());
    assert_eq!(t.apply(&x, &y).dot(&z), v);
    let e = TorsionTensor::from_entries(&[([0, 2, 4], q(3, 1))]).unwrap();
    assert_eq!(e.eval(&KVector::e(4), &KVector::e(0), &KVector::e(2)), q(3, 1));
    assert!(TorsionTensor::from_entries(&[([2, 0, 4], q(1, 1))]).is_err());
}

#[test]
fn change_of_frame_preserves_the_decomposition_norms() {
    let k = CurvatureMap::rank_one_kappa3(&q(2, 1));
    let rows = Matrix::from_fn(5, 5, |i, j| if (i + 1) % 5 == j { Q::one() } else { Q::zero() });
    let k2 = k.change_frame(&rows);
    assert_eq!(k2.inner(&k2), k.inner(&k));
    assert_eq!(ricci(&k2).trace(), q(20, 1));
}

fn rand_traceless(rng: &mut rand_chacha::ChaCha8Rng) -> Tensor2<Q> {
    let sym = rand_symmetric(rng);
    let tr = sym.trace() * &q(1, 5);
    sym.sub(&Tensor2::metric().scale(&tr))
}

#[test]
fn k_nu_recovers_the_four_form() {
    let mut rng = rng(21);
    assert_eq!(k_nu(&KVector::<Q>::zero(4)).unwrap(), CurvatureMap::zero());
    for _ in 0..50 {
        let nu = rand_kvector(&mut rng, 4);
        let k = k_nu(&nu).unwrap();
        assert!(ricci(&k).near_zero(TOL));
        assert_eq!(antisym(&k), nu);
        assert_eq!(psi_decompose(&k, TOL).unwrap().a, nu);
    }
}

#[test]
fn k_minus_recovers_the_skew_form() {
    let mut rng = rng(22);
    assert_eq!(k_minus(&Tensor2::<Q>::zero(), TOL).unwrap(), CurvatureMap::zero());
    for _ in 0..50 {
        let eta = rand_skew(&mut rng);
        let d = psi_decompose(&k_minus(&eta, TOL).unwrap(), TOL).unwrap();
        assert_eq!(d.rho_minus, eta);
        assert!(d.a.is_zero() && d.s.is_zero() && d.eta.near_zero(TOL));
    }
}

#[test]
fn k_plus_recovers_the_traceless_form() {
    let mut rng = rng(23);
    assert_eq!(k_plus(&Tensor2::<Q>::zero(), TOL).unwrap(), CurvatureMap::zero());
    for _ in 0..50 {
        let eta = rand_traceless(&mut rng);
        let d = psi_decompose(&k_plus(&eta, TOL).unwrap(), TOL).unwrap();
        assert_eq!(d.eta, eta);
        assert!(d.a.is_zero() && d.s.is_zero() && d.rho_minus.near_zero(TOL));
    }
}

#[test]
fn scaled_projection_has_metric_ricci() {
    let k = CurvatureMap::<Q>::projection().scale(&q(5, 6));
    assert_eq!(ricci(&k), Tensor2::metric());
    let d = psi_decompose(&k, TOL).unwrap();
    assert_eq!(d.s, q(5, 1));
    assert!(d.eta.near_zero(TOL));
}

#[test]
fn eta_prime_on_skew_forms_is_five_times_the_projection() {
    let mut rng = rng(24);
    for _ in 0..20 {
        let eta = rand_skew(&mut rng);
        let p = Tensor2::from_bivector(&l23_part(&eta.to_bivector()));
        assert_eq!(eta_prime(&eta), p.scale(&q(5, 1)));
    }
}

#[test]
fn eta_prime_on_symmetric_forms_satisfies_the_quadratic_relation() {
    let mut rng = rng(25);
    for _ in 0..100 {
        let eta = rand_symmetric(&mut rng);
        let p = eta_prime(&eta);
        let lhs = p.add(&eta_prime(&p));
        let rhs = eta.scale(&q(12, 1)).add(&Tensor2::metric().scale(&(eta.trace() * &q(6, 1))));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn zero_data_behaves() {
    assert!(ricci(&CurvatureMap::<Q>::zero()).near_zero(TOL));
    let zero = CurvatureDecomposition::<Q>::zero();
    assert_eq!(psi_inverse(&zero, TOL).unwrap(), CurvatureMap::zero());
    let k = CurvatureMap::rank_one_kappa3(&q(2, 1));
    let d = psi_decompose(&k, TOL).unwrap();
    assert_eq!(d.a.component(&[0, 1, 2, 4]), Q::zero());
    assert_eq!(psi_inverse(&d, TOL).unwrap(), k);
}
