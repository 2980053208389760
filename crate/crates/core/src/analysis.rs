//! Normality and CR-integrability of the twistor almost contact structures,
//! decided from the torsion and curvature at a point.
//!
//! The four conditions are: ∗T ∈ Λ²₃, vanishing ⊙²₉ and Λ²₇ components of
//! the curvature, and vanishing of the tensor Q. A sampled evaluation of the
//! Nijenhuis tensor N⁽¹⁾₊ on horizontal pairs cross-checks the verdict.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::multilinear::{KVector, Tensor2, DIM};
use crate::representation::{l23_residual, project, Component, Frame};
use crate::structure::{chi_killing_t, psi_decompose, CurvatureMap, TorsionTensor};
use crate::twistor::{phi_pm, phi_plus_extended, vertical_j, xi, Sign, TangentPair, TwistorPoint};

/// Outcome of one condition: whether it holds and the squared norm it is judged on.
#[derive(Clone, Debug, PartialEq)]
pub struct Check<F> {
    pub holds: bool,
    pub residual: F,
}

impl<F: Field> Check<F> {
    fn from_residual(residual: F, tol: f64) -> Self {
        Check {
            holds: residual.near_zero(tol),
            residual,
        }
    }
}

fn blade<F: Field>(terms: &[(F, usize, usize)]) -> KVector<F> {
    terms.iter().fold(KVector::zero(2), |acc, (c, i, j)| {
        &acc + &KVector::blade(&[*i, *j]).scale(c)
    })
}

/// The basis of (Λ²₃)^⊥ on which ∗T is tested, in an adapted frame.
pub fn l27_torsion_basis<F: Field>() -> Vec<KVector<F>> {
    let one = F::one;
    let m = || -F::one();
    let r3 = || -F::sqrt3();
    vec![
        blade(&[(one(), 1, 2), (m(), 3, 4)]),
        blade(&[(one(), 1, 4), (m(), 2, 3)]),
        blade(&[(one(), 0, 1)]),
        blade(&[(one(), 1, 3), (F::from_int(-2), 2, 4)]),
        blade(&[(one(), 0, 3)]),
        blade(&[(one(), 0, 2), (r3(), 1, 4)]),
        blade(&[(one(), 0, 4), (r3(), 1, 2)]),
    ]
}

/// The basis of Λ²₇ on which ρ⁻ is tested, in an adapted frame.
pub fn l27_ricci_basis<F: Field>() -> Vec<KVector<F>> {
    let one = F::one;
    let m = || -F::one();
    let r3 = || -F::sqrt3();
    vec![
        blade(&[(one(), 0, 1)]),
        blade(&[(one(), 1, 3), (F::from_int(-2), 2, 4)]),
        blade(&[(one(), 0, 3)]),
        blade(&[(one(), 1, 2), (m(), 3, 4)]),
        blade(&[(one(), 1, 4), (m(), 2, 3)]),
        blade(&[(one(), 0, 4), (r3(), 3, 4)]),
        blade(&[(one(), 0, 2), (r3(), 2, 3)]),
    ]
}

/// aᵢ ⊙ aⱼ = ½(aᵢ⊗aⱼ + aⱼ⊗aᵢ), so aᵢ ⊙ aᵢ = aᵢ⊗aᵢ.
fn sym<F: Field>(terms: &[(F, usize, usize)]) -> Tensor2<F> {
    let h = F::ratio(1, 2);
    terms.iter().fold(Tensor2::zero(), |acc, (c, i, j)| {
        let t = Tensor2::sym_product(&KVector::e(*i), &KVector::e(*j)).scale(&(c.clone() * &h));
        acc.add(&t)
    })
}

/// The basis of ⊙²₉ on which η is tested, in an adapted frame.
pub fn s9_basis<F: Field>() -> Vec<Tensor2<F>> {
    let n = |v: i64| F::from_int(v);
    let r = |v: i64| F::sqrt3().scale_int(v);
    vec![
        sym(&[(n(1), 1, 3)]),
        sym(&[(n(1), 1, 1), (n(-1), 3, 3)]),
        sym(&[(r(2), 0, 3), (n(-3), 0, 0), (n(4), 2, 2), (n(-1), 3, 3)]),
        sym(&[(r(1), 0, 2), (n(-1), 2, 3)]),
        sym(&[(r(2), 0, 3), (n(3), 0, 0), (n(-4), 4, 4), (n(1), 3, 3)]),
        sym(&[(r(1), 0, 4), (n(1), 3, 4)]),
        sym(&[(r(1), 0, 2), (n(1), 1, 4)]),
        sym(&[(r(1), 0, 4), (n(1), 1, 2)]),
        sym(&[(n(3), 0, 0), (n(1), 1, 1), (n(-2), 2, 2), (n(-2), 4, 4)]),
        sym(&[(r(1), 0, 1), (n(-2), 2, 4)]),
    ]
}

fn sum_squares<F: Field>(values: impl IntoIterator<Item = F>) -> F {
    values.into_iter().fold(F::zero(), |acc, v| acc + &v.square())
}

/// ∗T ∈ Λ²₃, judged on |∗T − 𝒫(∗T)|².
pub fn check_star_t<F: Field>(t: &TorsionTensor<F>, tol: f64) -> Check<F> {
    Check::from_residual(l23_residual(&t.star()), tol)
}

/// Σ g(∗T, b)² over the listed basis of (Λ²₃)^⊥.
pub fn star_t_basis_residual<F: Field>(t: &TorsionTensor<F>) -> F {
    let s = t.star();
    sum_squares(l27_torsion_basis().iter().map(|b| s.dot(b)))
}

/// The ⊙²₉ component of η = ρ⁺ − ⅕ s g vanishes.
pub fn check_s9<F: Field>(k: &CurvatureMap<F>, tol: f64) -> Result<Check<F>> {
    let d = psi_decompose(k, tol)?;
    let p = project(Component::S9, &d.eta);
    Ok(Check::from_residual(p.inner(&p), tol))
}

/// Σ ⟨η, b⟩² over the listed basis of ⊙²₉.
pub fn s9_basis_residual<F: Field>(k: &CurvatureMap<F>, tol: f64) -> Result<F> {
    let d = psi_decompose(k, tol)?;
    Ok(sum_squares(s9_basis().iter().map(|b| d.eta.inner(b))))
}

/// The Λ²₇ component of ρ⁻ vanishes.
pub fn check_l27<F: Field>(k: &CurvatureMap<F>, tol: f64) -> Result<Check<F>> {
    let d = psi_decompose(k, tol)?;
    let p = project(Component::L27, &d.rho_minus);
    Ok(Check::from_residual(p.inner(&p), tol))
}

/// Σ ρ⁻(b)² over the listed basis of Λ²₇, with ρ⁻ read as a 2-form.
pub fn l27_basis_residual<F: Field>(k: &CurvatureMap<F>, tol: f64) -> Result<F> {
    let d = psi_decompose(k, tol)?;
    let r = d.rho_minus.to_bivector();
    Ok(sum_squares(l27_ricci_basis().iter().map(|b| r.dot(b))))
}

/// Q(σ, X) = −6 A(ξ ∧ ι_{X'}σ ∧ σ) + 5 η(X', ξ), where X' is the part of X in
/// the (−4)-eigenspace of S_σ², S_σ(X) = ι_X σ.
pub fn q_reduced<F: Field>(a: &KVector<F>, eta: &Tensor2<F>, p: &TwistorPoint<F>, x: &KVector<F>) -> F {
    let s = p.sigma();
    let sq = |v: &KVector<F>| s.contract(&s.contract(v));
    let s2x = sq(x);
    // Π = S²(S² + 1)/12 projects onto the (−4)-eigenspace.
    let x3 = (&sq(&s2x) + &s2x).scale(&F::ratio(1, 12));
    let xi = p.xi();
    let four = &(&xi ^ &s.contract(&x3)) ^ s;
    a.dot(&four).scale_int(-6) + &eta.form(&x3, &xi).scale_int(5)
}

/// Q in an adapted frame a with κ₃(a) = σ:
/// −(12A₁₃₄₅ + 5η₁₂)x₂ − (12A₁₂₃₅ + 5η₁₄)x₄.
pub fn q_reduced_in_frame<F: Field>(
    a: &KVector<F>,
    eta: &Tensor2<F>,
    frame: &Frame<F>,
    x: &KVector<F>,
) -> F {
    let f = frame.vectors();
    let a4 = |i: usize, j: usize, k: usize, l: usize| {
        a.dot(&(&(&(&f[i] ^ &f[j]) ^ &f[k]) ^ &f[l]))
    };
    let c2 = a4(0, 2, 3, 4).scale_int(12) + &eta.form(&f[0], &f[1]).scale_int(5);
    let c4 = a4(0, 1, 2, 4).scale_int(12) + &eta.form(&f[0], &f[3]).scale_int(5);
    -(c2 * &x.dot(&f[1])) - &(c4 * &x.dot(&f[3]))
}

/// The literal sextic
/// 12[A(ξ∧φ₊X∧s) − A(ξ∧ι_X s∧s)|s|²] + 5[g(X,ξ)η(ξ,ξ) − η(X,ξ)g(ξ,ξ) − η(φ₊(ι_X s),ξ)]
/// for s ∈ Λ²₃ of any norm.
pub fn q_raw<F: Field>(
    a: &KVector<F>,
    eta: &Tensor2<F>,
    s: &KVector<F>,
    x: &KVector<F>,
    tol: f64,
) -> Result<F> {
    let xi = xi(s, tol)?;
    let phx = phi_plus_extended(s, x, tol)?;
    let sx = s.contract(x);
    let ph_sx = phi_plus_extended(s, &sx, tol)?;
    let t1 = a.dot(&(&(&xi ^ &phx) ^ s));
    let t2 = a.dot(&(&(&xi ^ &sx) ^ s)) * &s.norm_sq();
    let t3 = x.dot(&xi) * &eta.form(&xi, &xi);
    let t4 = eta.form(x, &xi) * &xi.dot(&xi);
    let t5 = eta.form(&ph_sx, &xi);
    Ok((t1 - &t2).scale_int(12) + &(t3 - &t4 - &t5).scale_int(5))
}

/// Basis of the complement on which Q(κᵢ, ·) can be nonzero, for the standard frame.
pub fn q_test_vectors<F: Field>(i: usize) -> [KVector<F>; 2] {
    let h = F::ratio(1, 2);
    let c = F::sqrt3() * &h;
    let e = KVector::<F>::e;
    match i {
        0 => [&e(0).scale(&c) + &e(3).scale(&h), e(4)],
        1 => [&e(0).scale(&c) - &e(3).scale(&h), e(2)],
        2 => [e(1), e(3)],
        _ => panic!("κ index {i} out of range"),
    }
}

/// A point where Q is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct QWitness<F> {
    /// σ = κᵢ of the standard frame, 0-based.
    pub kappa: usize,
    pub sigma: KVector<F>,
    pub x: KVector<F>,
    pub value: F,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QCheck<F> {
    pub holds: bool,
    pub residual: F,
    pub witness: Option<QWitness<F>>,
    /// Whether η has no ⊙²₉ part, so that the six values decide Q = 0 everywhere.
    pub reduction_valid: bool,
}

fn q_sample<F: Field>(a: &KVector<F>, eta: &Tensor2<F>, tol: f64) -> QCheck<F> {
    let p9 = project(Component::S9, eta);
    let mut residual = F::zero();
    let mut witness = None;
    for i in 0..3 {
        let p = TwistorPoint::kappa(i);
        for x in q_test_vectors::<F>(i) {
            let v = q_reduced(a, eta, &p, &x);
            if witness.is_none() && !v.near_zero(tol) {
                witness = Some(QWitness {
                    kappa: i,
                    sigma: p.sigma().clone(),
                    x: x.clone(),
                    value: v.clone(),
                });
            }
            residual = residual + &v.square();
        }
    }
    QCheck {
        holds: residual.near_zero(tol),
        residual,
        witness,
        reduction_valid: p9.inner(&p9).near_zero(tol),
    }
}

/// Q = 0 on the whole fibre, decided from Q(κᵢ, ·) on the three complements.
///
/// Needs η without ⊙²₉ part.
pub fn q_vanishes<F: Field>(a: &KVector<F>, eta: &Tensor2<F>, tol: f64) -> Result<QCheck<F>> {
    let c = q_sample(a, eta, tol);
    if !c.reduction_valid {
        return Err(Error::Invalid(
            "Q reduction needs η with vanishing ⊙²₉ component".into(),
        ));
    }
    Ok(c)
}

/// R(X,Y)σ = −⅕ Σⱼ g(𝒦(X∧Y), σ×κⱼ) κⱼ.
pub fn curvature_on_sigma<F: Field>(
    k: &CurvatureMap<F>,
    p: &TwistorPoint<F>,
    x: &KVector<F>,
    y: &KVector<F>,
) -> KVector<F> {
    let r = k.apply(&(x ^ y));
    let c = F::ratio(-1, 5);
    (0..3).fold(KVector::zero(2), |acc, j| {
        let kj = p.triple().get(j);
        &acc + &kj.scale(&(r.dot(&p.cross(kj)) * &c))
    })
}

/// N⁽ⁿ⁾±(Xʰ, Yʰ).
#[allow(clippy::too_many_arguments)]
pub fn nijenhuis_horizontal<F: Field>(
    n: u8,
    sign: Sign,
    t: &TorsionTensor<F>,
    k: &CurvatureMap<F>,
    p: &TwistorPoint<F>,
    x: &KVector<F>,
    y: &KVector<F>,
) -> TangentPair<F> {
    let phi = |v: &KVector<F>| phi_pm(p, sign, v);
    let (px, py) = (phi(x), phi(y));
    let hor = &(&(&t.apply(x, y) - &t.apply(&px, &py)) + &phi(&t.apply(&px, y))) + &phi(&t.apply(x, &py));
    let r = |u: &KVector<F>, v: &KVector<F>| curvature_on_sigma(k, p, u, v);
    let mixed = &r(&px, y) + &r(x, &py);
    let ver = &(&r(&px, &py) - &r(x, y)) - &vertical_j(n, p, &mixed);
    TangentPair::new(hor, ver)
}

fn mixed_parts<F: Field>(
    n: u8,
    p: &TwistorPoint<F>,
    x: &KVector<F>,
    v: &KVector<F>,
) -> (KVector<F>, F, F, KVector<F>) {
    let xi = p.xi();
    let jv = vertical_j(n, p, v);
    let jv_xi = jv.contract(&xi);
    let gx = x.dot(&xi);
    let gj = jv_xi.dot(x);
    (jv_xi, gx, gj, jv)
}

/// N⁽ⁿ⁾±(Xʰ, V) for vertical V.
///
/// The minus case is re-derived from the bracket of a horizontal lift with a
/// parallel vertical field; it differs from the printed expression, which is
/// kept as [`nijenhuis_mixed_printed`].
pub fn nijenhuis_mixed<F: Field>(
    n: u8,
    sign: Sign,
    p: &TwistorPoint<F>,
    x: &KVector<F>,
    v: &KVector<F>,
    tol: f64,
) -> Result<TangentPair<F>> {
    TangentPair::vertical(v.clone()).validate(p, tol)?;
    let (jv_xi, gx, gj, jv) = mixed_parts(n, p, x, v);
    let xi = p.xi();
    let odd = n % 2 == 1;
    let hor = match sign {
        Sign::Plus => {
            if odd {
                KVector::zero(1)
            } else {
                &jv_xi.scale(&gx.scale_int(-2)) + &xi.scale(&gj.scale_int(2))
            }
        }
        Sign::Minus => {
            let (c1, c2) = if odd { (6, -4) } else { (0, -2) };
            let base = &jv_xi.scale(&gx.scale_int(c1)) + &xi.scale(&gj.scale_int(c2));
            let tail = &phi_pm(p, Sign::Minus, &v.contract(x)) - &jv.contract(x);
            &base + &tail.scale(&F::from_int(2))
        }
    };
    Ok(TangentPair::horizontal(hor))
}

/// The expression for N⁽ⁿ⁾±(Xʰ, V) exactly as printed in the source.
pub fn nijenhuis_mixed_printed<F: Field>(
    n: u8,
    sign: Sign,
    p: &TwistorPoint<F>,
    x: &KVector<F>,
    v: &KVector<F>,
    tol: f64,
) -> Result<TangentPair<F>> {
    TangentPair::vertical(v.clone()).validate(p, tol)?;
    let (jv_xi, gx, gj, jv) = mixed_parts(n, p, x, v);
    let xi = p.xi();
    let pn: i64 = if n.is_multiple_of(2) { 1 } else { -1 };
    let hor = match sign {
        Sign::Plus => &jv_xi.scale(&gx.scale_int(-pn - 1)) + &xi.scale(&gj.scale_int(pn + 1)),
        Sign::Minus => {
            let base = &jv_xi.scale(&gx.scale_int(3 * (pn + 1))) + &xi.scale(&gj.scale_int(pn + 3));
            let tail = &jv.contract(x) - &phi_pm(p, Sign::Minus, &v.contract(x));
            &base + &tail.scale(&F::from_int(2))
        }
    };
    Ok(TangentPair::horizontal(hor))
}

/// The Levi form ω⁽ⁿ⁾± on the contact distribution, as the coefficient of ξʰ.
///
/// Horizontal pairs give −g(T(X,Y), ξ), vertical pairs 0, and mixed pairs
/// ±g(X, φ±(V(ξ))). The value does not depend on n.
pub fn levi_form<F: Field>(
    sign: Sign,
    p: &TwistorPoint<F>,
    t: &TorsionTensor<F>,
    a: &TangentPair<F>,
    b: &TangentPair<F>,
    tol: f64,
) -> Result<F> {
    let xi = p.xi();
    for v in [a, b] {
        v.validate(p, tol)?;
        if !v.horizontal.dot(&xi).near_zero(tol) {
            return Err(Error::Invalid("Levi form arguments must lie in the contact distribution".into()));
        }
    }
    let sg = F::from_int(sign.value());
    let hv = |x: &KVector<F>, v: &KVector<F>| x.dot(&phi_pm(p, sign, &v.contract(&xi))) * &sg;
    let hh = -t.apply(&a.horizontal, &b.horizontal).dot(&xi);
    Ok(hh + &hv(&a.horizontal, &b.vertical) - &hv(&b.horizontal, &a.vertical))
}

/// Twistor points used by the Nijenhuis probe: κ₁, κ₂, κ₃ and rational points
/// of the y-sphere.
pub fn probe_points<F: Field>() -> Vec<TwistorPoint<F>> {
    let mut out: Vec<TwistorPoint<F>> = (0..3).map(TwistorPoint::kappa).collect();
    for (u, v) in [((1, 2), (1, 3)), ((-2, 1), (1, 1)), ((1, 3), (-3, 4)), ((3, 1), (2, 5))] {
        let u = F::ratio(u.0, u.1);
        let v = F::ratio(v.0, v.1);
        let d = (F::one() + &u.square() + &v.square()).inv().expect("positive");
        let y = [
            u.scale_int(2) * &d,
            v.scale_int(2) * &d,
            (F::one() - &u.square() - &v.square()) * &d,
        ];
        out.push(TwistorPoint::standard(y, 1e-12).expect("point on the sphere"));
    }
    out
}

/// Σ |N⁽¹⁾₊(eᵢʰ, eⱼʰ)|² over the probe points and basis pairs.
pub fn normality_probe<F: Field>(t: &TorsionTensor<F>, k: &CurvatureMap<F>) -> F {
    let mut acc = F::zero();
    for p in probe_points::<F>() {
        for i in 0..DIM {
            for j in i + 1..DIM {
                let nv = nijenhuis_horizontal(1, Sign::Plus, t, k, &p, &KVector::e(i), &KVector::e(j));
                acc = acc + &nv.horizontal.norm_sq() + &nv.vertical.norm_sq();
            }
        }
    }
    acc
}

/// Verdicts and residuals for a (T, 𝒦) pair.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport<F> {
    pub star_t_in_l23: Check<F>,
    pub s9_vanishes: Check<F>,
    pub l27_vanishes: Check<F>,
    pub q_vanishes: QCheck<F>,
    pub normal: bool,
    pub cr_integrable: bool,
    pub chi_killing_t: Option<F>,
    pub probe_residual: F,
    pub probe_agrees: bool,
}

impl<F: Field> StructureReport<F> {
    /// Name of the first failing normality condition.
    pub fn failing_condition(&self) -> Option<&'static str> {
        if !self.star_t_in_l23.holds {
            Some("star_T")
        } else if !self.s9_vanishes.holds {
            Some("S9")
        } else if !self.l27_vanishes.holds {
            Some("L27")
        } else if !self.q_vanishes.holds {
            Some("Q")
        } else {
            None
        }
    }
}

/// Runs every check; fails only if 𝒦 is not Λ²₃-valued.
pub fn analyze<F: Field>(t: &TorsionTensor<F>, k: &CurvatureMap<F>, tol: f64) -> Result<StructureReport<F>> {
    let d = psi_decompose(k, tol)?;
    let star_t_in_l23 = check_star_t(t, tol);
    let s9_vanishes = check_s9(k, tol)?;
    let l27_vanishes = check_l27(k, tol)?;
    let q = q_sample(&d.a, &d.eta, tol);
    let normal = star_t_in_l23.holds && s9_vanishes.holds && l27_vanishes.holds && q.holds;
    let cr_integrable = star_t_in_l23.holds && s9_vanishes.holds;
    let probe_residual = normality_probe(t, k);
    let probe_agrees = probe_residual.near_zero(tol) == normal;
    Ok(StructureReport {
        star_t_in_l23,
        s9_vanishes,
        l27_vanishes,
        q_vanishes: q,
        normal,
        cr_integrable,
        chi_killing_t: chi_killing_t(k, tol),
        probe_residual,
        probe_agrees,
    })
}

/// Normality of (Φ⁽¹⁾₊, χ, h_t).
pub fn is_normal<F: Field>(t: &TorsionTensor<F>, k: &CurvatureMap<F>, tol: f64) -> Result<StructureReport<F>> {
    analyze(t, k, tol)
}

/// Integrability of the CR structure (𝒟, 𝒥⁽¹⁾₊).
pub fn is_cr_integrable<F: Field>(
    t: &TorsionTensor<F>,
    k: &CurvatureMap<F>,
    tol: f64,
) -> Result<StructureReport<F>> {
    analyze(t, k, tol)
}
