mod common;

use common::*;
use so3five_core::matrix::Matrix;
use so3five_core::representation::{KappaTriple, SO3Element, Frame};
use so3five_core::structure::TorsionTensor;
use so3five_core::twistor::*;
use so3five_core::{Error, Field, KVector};

const TOL: f64 = 1e-12;

fn e(i: usize) -> KVector<Q> {
    KVector::e(i)
}

fn kappa(i: usize) -> KVector<Q> {
    KappaTriple::<Q>::standard().get(i).clone()
}

fn points(n: usize, seed: u64) -> Vec<TwistorPoint<Q>> {
    let mut rng = rng(seed);
    rational_sphere_points(n, &mut rng)
        .into_iter()
        .map(|y| TwistorPoint::standard(y, TOL).unwrap())
        .collect()
}

fn rand_vertical(p: &TwistorPoint<Q>, rng: &mut rand_chacha::ChaCha8Rng) -> KVector<Q> {
    let w = KappaTriple::standard().combine(&[0; 3].map(|_| rand_rational(rng)));
    p.cross(&w)
}

fn rand_pair(p: &TwistorPoint<Q>, rng: &mut rand_chacha::ChaCha8Rng) -> TangentPair<Q> {
    TangentPair::new(rand_vector(rng), rand_vertical(p, rng))
}

#[test]
fn xi_at_kappa_points() {
    assert_eq!(xi(&kappa(2), TOL).unwrap(), -e(0));
    let expected = &e(0).scale(&q(1, 2)) - &e(3).scale(&(r3() * &q(1, 2)));
    assert_eq!(xi(&kappa(0), TOL).unwrap(), expected);
    assert!(matches!(xi(&KVector::<Q>::blade(&[0, 1]), TOL), Err(Error::NotInL23(_))));
}

#[test]
fn xi_matches_the_coordinate_polynomial() {
    for p in points(100, 1) {
        let poly = KVector::vector(xi_polynomial(p.coords()));
        assert_eq!(p.xi(), poly);
        assert_eq!(p.xi().norm_sq(), Q::one());
        assert!(p.sigma().contract(&p.xi()).is_zero());
    }
    let mut rng = rng(2);
    for _ in 0..100 {
        let y = unit_sphere_f64(&mut rng);
        let p = TwistorPoint::<f64>::standard(y, 1e-12).unwrap();
        let poly = KVector::vector(xi_polynomial(&y));
        assert!((&p.xi() - &poly).max_abs() < 1e-12);
    }
}

#[test]
fn xi_is_quadratic_and_scales_its_norm_by_the_fourth_power() {
    let mut rng = rng(3);
    for p in points(10, 4) {
        let l = rand_rational(&mut rng);
        let s = p.sigma().scale(&l);
        let x = xi(&s, TOL).unwrap();
        assert_eq!(x, p.xi().scale(&l.square()));
        let n = s.norm_sq();
        assert_eq!(x.norm_sq(), n.square() * &q(1, 25));
    }
}

#[test]
fn sigma_pm_at_kappa3() {
    let p = TwistorPoint::<Q>::kappa(2);
    let (sp, sm) = sigma_pm(&p);
    let b24 = KVector::blade(&[1, 3]);
    let b35 = KVector::blade(&[2, 4]);
    assert_eq!(sp, (&b24 + &b35).scale(&q(3, 2)));
    assert_eq!(sm, (&b24 - &b35).scale(&q(1, 2)));
}

#[test]
fn sigma_pm_split_is_self_dual_on_the_horizontal_space() {
    for p in points(20, 5) {
        let (sp, sm) = sigma_pm(&p);
        assert_eq!(&sp + &sm, p.sigma().clone());
        let xi = p.xi();
        assert!(sp.contract(&xi).is_zero() && sm.contract(&xi).is_zero());
        // On Λ²H, ∗ restricted is ι_ξ ∗.
        assert_eq!(sp.hodge().contract(&xi), sp);
        assert_eq!(sm.hodge().contract(&xi), -sm);
    }
}

#[test]
fn phi_pm_at_kappa3() {
    let p = TwistorPoint::<Q>::kappa(2);
    assert_eq!(phi_pm(&p, Sign::Plus, &e(1)), e(3));
    assert_eq!(phi_pm(&p, Sign::Plus, &e(2)), e(4));
    assert_eq!(phi_pm(&p, Sign::Minus, &e(1)), e(3));
    assert_eq!(phi_pm(&p, Sign::Minus, &e(2)), -e(4));
    for s in Sign::BOTH {
        assert!(phi_pm(&p, s, &p.xi()).is_zero());
    }
}

#[test]
fn phi_pm_is_a_skew_partial_complex_structure() {
    let mut rng = rng(6);
    for p in points(20, 7) {
        let xi = p.xi();
        for s in Sign::BOTH {
            let x = rand_vector(&mut rng);
            let y = rand_vector(&mut rng);
            assert_eq!(phi_pm(&p, s, &x).dot(&y), -phi_pm(&p, s, &y).dot(&x));
            let xx = phi_pm(&p, s, &phi_pm(&p, s, &x));
            assert_eq!(xx, &xi.scale(&x.dot(&xi)) - &x);
            assert!(phi_pm(&p, s, &xi).is_zero());
        }
    }
}

#[test]
fn extended_phi_restricts_and_is_cubic() {
    let mut rng = rng(8);
    assert_eq!(phi_plus_extended(&kappa(2), &e(1), TOL).unwrap(), e(3));
    assert!(phi_plus_extended(&kappa(2), &-e(0), TOL).unwrap().is_zero());
    for p in points(10, 9) {
        let x = rand_vector(&mut rng);
        let l = rand_rational(&mut rng);
        let base = phi_plus_extended(p.sigma(), &x, TOL).unwrap();
        assert_eq!(base, phi_pm(&p, Sign::Plus, &x));
        let scaled = phi_plus_extended(&p.sigma().scale(&l), &x, TOL).unwrap();
        assert_eq!(scaled, base.scale(&(l.square() * &l)));
    }
}

fn phi_matrix(p: &TwistorPoint<Q>, s: Sign) -> Matrix<Q> {
    let f = p.frame().vectors().to_vec();
    Matrix::from_fn(5, 5, |a, b| phi_pm(p, s, &f[a]).dot(&f[b]))
}

#[test]
fn f_matrix_agrees_with_phi() {
    let p = TwistorPoint::<Q>::kappa(2);
    for s in Sign::BOTH {
        assert_eq!(f_matrix(&p, s), phi_matrix(&p, s));
    }
    for p in points(30, 10) {
        for s in Sign::BOTH {
            let f = f_matrix(&p, s);
            assert_eq!(f, phi_matrix(&p, s));
            assert_eq!(f.transpose(), f.scale(&q(-1, 1)));
            assert!(f.mul_vec(p.xi().coeffs()).iter().all(|v| v.is_zero()));
        }
    }
}

#[test]
fn f_matrix_squares_to_minus_the_horizontal_identity() {
    let mut rng = rng(11);
    for _ in 0..100 {
        let y = unit_sphere_f64(&mut rng);
        let p = TwistorPoint::<f64>::standard(y, 1e-12).unwrap();
        let f = f_matrix(&p, Sign::Plus);
        let xi = p.xi();
        let target = Matrix::from_fn(5, 5, |i, j| {
            xi.coeffs()[i] * xi.coeffs()[j] - if i == j { 1.0 } else { 0.0 }
        });
        assert!(f.mul(&f).sub(&target).max_abs() < 1e-10);
    }
}

#[test]
fn f_matrix_in_a_rotated_frame() {
    let h = SO3Element::rot_theta(q(1, 2), r3() * &q(1, 2), TOL).unwrap();
    let frame = Frame::<Q>::standard().rotated(&h, TOL);
    for p in points(10, 12) {
        let p = TwistorPoint::new(frame.clone(), p.coords().clone(), TOL).unwrap();
        for s in Sign::BOTH {
            assert_eq!(f_matrix(&p, s), phi_matrix(&p, s));
        }
    }
}

#[test]
fn xi_of_kappa3_in_any_adapted_frame_is_minus_the_first_vector() {
    for (c, s) in special_angles() {
        let h = SO3Element::rot_phi(c, s, TOL).unwrap();
        let frame = Frame::<Q>::standard().rotated(&h, TOL);
        let p = TwistorPoint::new(frame.clone(), [Q::zero(), Q::zero(), Q::one()], TOL).unwrap();
        assert_eq!(p.xi(), -frame.get(0).clone());
    }
}

#[test]
fn big_phi_vertical_and_horizontal_actions() {
    let p = TwistorPoint::<Q>::kappa(2);
    let v = TangentPair::vertical(kappa(0));
    let out = big_phi(1, Sign::Plus, &p, &v, TOL).unwrap();
    assert_eq!(out.vertical, -kappa(1));
    let out = big_phi(2, Sign::Plus, &p, &v, TOL).unwrap();
    assert_eq!(out.vertical, kappa(1));
    let hx = TangentPair::horizontal(e(1));
    assert_eq!(big_phi(1, Sign::Plus, &p, &hx, TOL).unwrap().horizontal, e(3));
    let bad = TangentPair::vertical(kappa(2));
    assert!(matches!(big_phi(1, Sign::Plus, &p, &bad, TOL), Err(Error::NotVertical)));
}

#[test]
fn big_phi_is_partially_complex() {
    let mut rng = rng(13);
    for p in points(10, 14) {
        for n in [1, 2] {
            for s in Sign::BOTH {
                let a = rand_pair(&p, &mut rng);
                let f1 = big_phi(n, s, &p, &a, TOL).unwrap();
                let f2 = big_phi(n, s, &p, &f1, TOL).unwrap();
                let f3 = big_phi(n, s, &p, &f2, TOL).unwrap();
                assert!(f3.add(&f1).is_zero());
            }
        }
    }
}

#[test]
fn metric_ht_values() {
    let p = TwistorPoint::<Q>::kappa(2);
    let a1 = TangentPair::horizontal(e(0));
    let k1 = TangentPair::vertical(kappa(0));
    assert_eq!(metric_ht(&Q::one(), &a1, &a1).unwrap(), Q::one());
    assert_eq!(metric_ht(&q(2, 1), &k1, &k1).unwrap(), q(10, 1));
    assert_eq!(metric_ht(&q(2, 1), &a1, &k1).unwrap(), Q::zero());
    assert!(metric_ht(&Q::zero(), &a1, &a1).is_err());
    assert!(metric_ht(&q(-1, 1), &a1, &a1).is_err());
    let mut rng = rng(15);
    let a = rand_pair(&p, &mut rng);
    if !a.is_zero() {
        assert!(metric_ht(&q(1, 3), &a, &a).unwrap().is_positive());
    }
}

#[test]
fn d_eta_witness_differs_from_omega() {
    let p = TwistorPoint::<Q>::kappa(2);
    let a = TangentPair::horizontal(e(2));
    let b = TangentPair::vertical(kappa(0));
    let t0 = TorsionTensor::zero();
    for s in Sign::BOTH {
        assert_eq!(d_eta(&p, s, &a, &b, &t0), -r3());
        assert_eq!(d_eta(&p, s, &b, &a, &t0), r3());
        assert!(d_eta(&p, s, &a, &a, &t0).is_zero());
        for n in [1, 2] {
            assert!(omega(n, s, &Q::one(), &p, &a, &b).unwrap().is_zero());
        }
    }
}

#[test]
fn d_eta_is_antisymmetric_and_t_free() {
    let mut rng = rng(16);
    for p in points(10, 17) {
        let t = TorsionTensor::from_form(rand_kvector(&mut rng, 3)).unwrap();
        for s in Sign::BOTH {
            let a = rand_pair(&p, &mut rng);
            let b = rand_pair(&p, &mut rng);
            assert_eq!(d_eta(&p, s, &a, &b, &t), -d_eta(&p, s, &b, &a, &t));
            assert!(d_eta(&p, s, &a, &a, &t).is_zero());
        }
    }
}

#[test]
fn eta_t_reads_the_horizontal_xi_component() {
    let p = TwistorPoint::<Q>::kappa(2);
    assert_eq!(eta_t(&p, &TangentPair::horizontal(e(0))), q(-1, 1));
    assert!(eta_t(&p, &TangentPair::vertical(kappa(0))).is_zero());
}

#[test]
fn comm_identity_holds_at_the_anchors() {
    let p = TwistorPoint::<Q>::kappa(2);
    assert!(comm_identity_check(&p, 1, Sign::Plus, &kappa(0), TOL).unwrap());
    assert!(comm_identity_check(&p, 2, Sign::Minus, &kappa(1), TOL).unwrap());
    assert!(comm_identity_check(&p, 1, Sign::Minus, &KVector::zero(2), TOL).unwrap());
    assert!(comm_identity_check(&p, 1, Sign::Plus, &kappa(2), TOL).is_err());
}

#[test]
fn comm_identity_holds_on_random_points() {
    let mut rng = rng(18);
    for p in points(20, 19) {
        for n in [1, 2] {
            for s in Sign::BOTH {
                let v = rand_vertical(&p, &mut rng);
                assert!(comm_identity_check(&p, n, s, &v, TOL).unwrap());
            }
        }
    }
}

#[test]
fn twistor_point_rejects_off_sphere_coordinates() {
    assert!(matches!(
        TwistorPoint::<Q>::standard([Q::one(), Q::one(), Q::zero()], TOL),
        Err(Error::OffSphere)
    ));
    assert!(matches!(TwistorPoint::from_sigma(&kappa(0).scale(&q(2, 1)), TOL), Err(Error::OffSphere)));
    let p = TwistorPoint::from_sigma(&kappa(1), TOL).unwrap();
    assert_eq!(p.coords(), &[Q::zero(), Q::one(), Q::zero()]);
}
