//! Pointwise geometry of the twistor fibre 𝕋_p = {σ ∈ Λ²₃ : |σ|² = 5}.
//!
//! Tangent vectors of 𝕋 at σ are pairs (X, V): X ∈ ℝ⁵ stands for its
//! horizontal lift and V ∈ Λ²₃ with g(V, σ) = 0 is vertical. A bivector V
//! acts on vectors by V(x) = ι_x V.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::multilinear::{KVector, DIM};
use crate::representation::{cross3, kappa_frame, l23_residual, Frame, KappaTriple};
use crate::structure::TorsionTensor;

/// Which of the two partial complex structures φ₊, φ₋.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// (−1)ⁿ as a field element.
pub(crate) fn parity<F: Field>(n: u8) -> F {
    if n.is_multiple_of(2) {
        F::one()
    } else {
        -F::one()
    }
}

/// A point σ = Σ yᵢκᵢ of the twistor fibre, with Σ yᵢ² = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistorPoint<F> {
    frame: Frame<F>,
    kappa: KappaTriple<F>,
    y: [F; 3],
    sigma: KVector<F>,
}

impl<F: Field> TwistorPoint<F> {
    pub fn new(frame: Frame<F>, y: [F; 3], tol: f64) -> Result<Self> {
        let kappa = kappa_frame(&frame, tol)?;
        let norm = y.iter().fold(F::zero(), |acc, v| acc + &v.square());
        if !(norm - F::one()).near_zero(tol) {
            return Err(Error::OffSphere);
        }
        let sigma = kappa.combine(&y);
        Ok(TwistorPoint {
            frame,
            kappa,
            y,
            sigma,
        })
    }

    /// σ = Σ yᵢκᵢ over the standard frame.
    pub fn standard(y: [F; 3], tol: f64) -> Result<Self> {
        Self::new(Frame::standard(), y, tol)
    }

    /// σ = κᵢ of the standard frame.
    pub fn kappa(i: usize) -> Self {
        let mut y = [F::zero(), F::zero(), F::zero()];
        y[i] = F::one();
        Self::standard(y, 0.0).expect("unit coordinate vector")
    }

    /// The point σ of the standard fibre; requires |σ|² = 5.
    pub fn from_sigma(s: &KVector<F>, tol: f64) -> Result<Self> {
        let r = l23_residual(s);
        if !r.near_zero(tol) {
            return Err(Error::NotInL23(r.to_f64()));
        }
        let y = KappaTriple::standard().coords(s);
        Self::standard(y, tol)
    }

    pub fn sigma(&self) -> &KVector<F> {
        &self.sigma
    }

    pub fn coords(&self) -> &[F; 3] {
        &self.y
    }

    pub fn frame(&self) -> &Frame<F> {
        &self.frame
    }

    pub fn triple(&self) -> &KappaTriple<F> {
        &self.kappa
    }

    pub fn xi(&self) -> KVector<F> {
        xi_unchecked(&self.sigma)
    }

    /// σ × V for V ∈ Λ²₃.
    pub fn cross(&self, v: &KVector<F>) -> KVector<F> {
        let c = cross3(&self.y, &self.kappa.coords(v));
        self.kappa.combine(&c)
    }
}

/// A tangent vector of 𝕋: horizontal X ∈ ℝ⁵ and vertical V ∈ Λ²₃, V ⊥ σ.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentPair<F> {
    pub horizontal: KVector<F>,
    pub vertical: KVector<F>,
}

impl<F: Field> TangentPair<F> {
    pub fn new(horizontal: KVector<F>, vertical: KVector<F>) -> Self {
        assert_eq!(horizontal.degree(), 1);
        assert_eq!(vertical.degree(), 2);
        TangentPair {
            horizontal,
            vertical,
        }
    }

    pub fn horizontal(x: KVector<F>) -> Self {
        Self::new(x, KVector::zero(2))
    }

    pub fn vertical(v: KVector<F>) -> Self {
        Self::new(KVector::zero(1), v)
    }

    pub fn zero() -> Self {
        Self::new(KVector::zero(1), KVector::zero(2))
    }

    /// Checks V ∈ Λ²₃ and g(V, σ) = 0.
    pub fn validate(&self, p: &TwistorPoint<F>, tol: f64) -> Result<()> {
        let r = l23_residual(&self.vertical);
        if !r.near_zero(tol) {
            return Err(Error::NotInL23(r.to_f64()));
        }
        if !self.vertical.dot(p.sigma()).near_zero(tol) {
            return Err(Error::NotVertical);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(
            &self.horizontal + &rhs.horizontal,
            &self.vertical + &rhs.vertical,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(
            &self.horizontal - &rhs.horizontal,
            &self.vertical - &rhs.vertical,
        )
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.horizontal.scale(s), self.vertical.scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.horizontal.is_zero() && self.vertical.is_zero()
    }

    pub fn max_abs(&self) -> f64 {
        self.horizontal.max_abs().max(self.vertical.max_abs())
    }
}

// `^` is the wedge product; σ∧σ is nonzero for a 2-form.
#[allow(clippy::eq_op)]
fn xi_unchecked<F: Field>(s: &KVector<F>) -> KVector<F> {
    (s ^ s).hodge().scale(&F::ratio(1, 4))
}

/// ξ_s = ¼ ∗(s ∧ s) for s ∈ Λ²₃ of any norm.
pub fn xi<F: Field>(s: &KVector<F>, tol: f64) -> Result<KVector<F>> {
    if s.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: s.degree(),
        });
    }
    let r = l23_residual(s);
    if !r.near_zero(tol) {
        return Err(Error::NotInL23(r.to_f64()));
    }
    Ok(xi_unchecked(s))
}

/// Coefficients of ξ_σ in the frame E as quadratic polynomials in y.
pub fn xi_polynomial<F: Field>(y: &[F; 3]) -> [F; DIM] {
    let r3 = F::sqrt3();
    let h = F::ratio(1, 2);
    let [y1, y2, y3] = y;
    [
        (y1.square() + &y2.square()) * &h - &y3.square(),
        -(r3.clone() * y1 * y2),
        r3.clone() * y1 * y3,
        -(r3.clone() * &h * &(y1.square() - &y2.square())),
        -(r3 * y2 * y3),
    ]
}

/// σ± = ½(σ ± ι_ξ ∗σ).
pub fn sigma_pm<F: Field>(p: &TwistorPoint<F>) -> (KVector<F>, KVector<F>) {
    let s = p.sigma();
    let t = p.sigma().hodge().contract(&p.xi());
    let h = F::ratio(1, 2);
    ((s + &t).scale(&h), (s - &t).scale(&h))
}

/// φ±X, defined by g(φ±X, Y) = 2/(2±1) g(σ±, X∧Y).
pub fn phi_pm<F: Field>(p: &TwistorPoint<F>, sign: Sign, x: &KVector<F>) -> KVector<F> {
    let (sp, sm) = sigma_pm(p);
    match sign {
        Sign::Plus => sp.contract(x).scale(&F::ratio(2, 3)),
        Sign::Minus => sm.contract(x).scale(&F::from_int(2)),
    }
}

/// ⅓ ι_X(s |s|²/5 + ι_{ξ_s} ∗s): cubic in s, equal to φ₊X when |s|² = 5.
pub fn phi_plus_extended<F: Field>(s: &KVector<F>, x: &KVector<F>, tol: f64) -> Result<KVector<F>> {
    let xi = xi(s, tol)?;
    let body = &s.scale(&(s.norm_sq() * &F::ratio(1, 5))) + &s.hodge().contract(&xi);
    Ok(body.contract(x).scale(&F::ratio(1, 3)))
}

/// f±_{αβ} = g(φ±E_α, E_β) from the coordinate formula in y, with E the point's frame.
pub fn f_matrix<F: Field>(p: &TwistorPoint<F>, sign: Sign) -> Matrix<F> {
    let e = p.frame().vectors();
    let h = xi_polynomial(p.coords());
    let stars: Vec<KVector<F>> = p.triple().all().iter().map(KVector::hodge).collect();
    let pre = F::ratio(1, 2 + sign.value());
    let sg = F::from_int(sign.value());
    Matrix::from_fn(DIM, DIM, |a, b| {
        let ab = &e[a] ^ &e[b];
        let mut acc = F::zero();
        for i in 0..3 {
            let y = &p.coords()[i];
            if y.is_zero() {
                continue;
            }
            let mut term = p.triple().get(i).dot(&ab);
            for (eps, he) in h.iter().enumerate() {
                if he.is_zero() {
                    continue;
                }
                let v = stars[i].dot(&(&ab ^ &e[eps]));
                term = term + &(sg.clone() * he * &v);
            }
            acc = acc + &(y.clone() * &term);
        }
        acc * &pre
    })
}

/// Φ⁽ⁿ⁾±(X, V) = (φ±X, (−1)ⁿ σ×V).
pub fn big_phi<F: Field>(
    n: u8,
    sign: Sign,
    p: &TwistorPoint<F>,
    a: &TangentPair<F>,
    tol: f64,
) -> Result<TangentPair<F>> {
    a.validate(p, tol)?;
    Ok(big_phi_unchecked(n, sign, p, a))
}

pub(crate) fn big_phi_unchecked<F: Field>(
    n: u8,
    sign: Sign,
    p: &TwistorPoint<F>,
    a: &TangentPair<F>,
) -> TangentPair<F> {
    TangentPair::new(
        phi_pm(p, sign, &a.horizontal),
        p.cross(&a.vertical).scale(&parity(n)),
    )
}

/// 𝒥⁽ⁿ⁾V = (−1)ⁿ σ×V on vertical vectors.
pub fn vertical_j<F: Field>(n: u8, p: &TwistorPoint<F>, v: &KVector<F>) -> KVector<F> {
    p.cross(v).scale(&parity(n))
}

/// h_t(A, B) = g(X, Y) + t g(V, W).
pub fn metric_ht<F: Field>(t: &F, a: &TangentPair<F>, b: &TangentPair<F>) -> Result<F> {
    if !t.is_positive() {
        return Err(Error::Invalid("metric parameter t must be positive".into()));
    }
    Ok(a.horizontal.dot(&b.horizontal) + &(t.clone() * &a.vertical.dot(&b.vertical)))
}

/// η_t(A) = h_t(A, χ) with χ the horizontal lift of ξ_σ.
pub fn eta_t<F: Field>(p: &TwistorPoint<F>, a: &TangentPair<F>) -> F {
    a.horizontal.dot(&p.xi())
}

/// Ω⁽ⁿ⁾±(A, B) = h_t(A, Φ⁽ⁿ⁾± B).
pub fn omega<F: Field>(
    n: u8,
    sign: Sign,
    t: &F,
    p: &TwistorPoint<F>,
    a: &TangentPair<F>,
    b: &TangentPair<F>,
) -> Result<F> {
    metric_ht(t, a, &big_phi_unchecked(n, sign, p, b))
}

/// dη_t(X+V, Y+W) = −½[T(X,ξ,Y) − T(Y,ξ,X)] ± [g(φ±X, W(ξ)) − g(φ±Y, V(ξ))].
///
/// Independent of t.
pub fn d_eta<F: Field>(
    p: &TwistorPoint<F>,
    sign: Sign,
    a: &TangentPair<F>,
    b: &TangentPair<F>,
    torsion: &TorsionTensor<F>,
) -> F {
    let xi = p.xi();
    let (x, v) = (&a.horizontal, &a.vertical);
    let (y, w) = (&b.horizontal, &b.vertical);
    let tors = torsion.eval(x, &xi, y) - &torsion.eval(y, &xi, x);
    let vert = phi_pm(p, sign, x).dot(&w.contract(&xi)) - &phi_pm(p, sign, y).dot(&v.contract(&xi));
    vert * &F::from_int(sign.value()) - &(tors * &F::ratio(1, 2))
}

/// Whether (𝒥⁽ⁿ⁾±V)(ξ) = ±(−1)ⁿ⁺¹ J±(V(ξ)) holds at the given inputs.
pub fn comm_identity_check<F: Field>(
    p: &TwistorPoint<F>,
    n: u8,
    sign: Sign,
    v: &KVector<F>,
    tol: f64,
) -> Result<bool> {
    TangentPair::vertical(v.clone()).validate(p, tol)?;
    let xi = p.xi();
    let lhs = vertical_j(n, p, v).contract(&xi);
    let rhs = phi_pm(p, sign, &v.contract(&xi))
        .scale(&(F::from_int(sign.value()) * &parity::<F>(n + 1)));
    Ok((&lhs - &rhs).near_zero(tol))
}
