//! Torsion and curvature data at a point, and the decomposition Ψ of
//! curvature maps Λ² → Λ²₃ into (A, ρ⁻, s g, η).

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::multilinear::{blades, mask_indices, KVector, Tensor2, DIM};
use crate::representation::{l23_part, l23_residual, KappaTriple};

/// Totally skew torsion, stored as the 3-form T(X,Y,Z) = g(T(X,Y), Z).
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionTensor<F> {
    form: KVector<F>,
}

impl<F: Field> TorsionTensor<F> {
    pub fn zero() -> Self {
        TorsionTensor {
            form: KVector::zero(3),
        }
    }

    pub fn from_form(form: KVector<F>) -> Result<Self> {
        if form.degree() != 3 {
            return Err(Error::DegreeMismatch {
                expected: 3,
                found: form.degree(),
            });
        }
        Ok(TorsionTensor { form })
    }

    /// Builds T from components T_{ijk}, i < j < k (0-based).
    pub fn from_entries(entries: &[([usize; 3], F)]) -> Result<Self> {
        let mut form = KVector::zero(3);
        for ([i, j, k], v) in entries {
            if !(i < j && j < k && *k < DIM) {
                return Err(Error::Invalid(format!(
                    "torsion indices ({}, {}, {}) must be strictly increasing in 1..=5",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            form = &form + &KVector::blade(&[*i, *j, *k]).scale(v);
        }
        Ok(TorsionTensor { form })
    }

    pub fn form(&self) -> &KVector<F> {
        &self.form
    }

    /// T(X, Y, Z).
    pub fn eval(&self, x: &KVector<F>, y: &KVector<F>, z: &KVector<F>) -> F {
        self.apply(x, y).dot(z)
    }

    /// The vector T(X, Y) = ι_Y ι_X T.
    pub fn apply(&self, x: &KVector<F>, y: &KVector<F>) -> KVector<F> {
        self.form.contract(x).contract(y)
    }

    /// ∗T as a bivector.
    pub fn star(&self) -> KVector<F> {
        self.form.hodge()
    }

    pub fn scale(&self, s: &F) -> Self {
        TorsionTensor {
            form: self.form.scale(s),
        }
    }
}

/// A linear map 𝒦: Λ² → Λ², as a 10×10 matrix acting on bivector components.
///
/// K(X,Y,Z,U) = g(𝒦(X∧Y), Z∧U). Validated maps take values in Λ²₃.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureMap<F> {
    m: Matrix<F>,
}

impl<F: Field> CurvatureMap<F> {
    /// Wraps a matrix, checking that every column lies in Λ²₃.
    pub fn new(m: Matrix<F>, tol: f64) -> Result<Self> {
        if m.rows() != 10 || m.cols() != 10 {
            return Err(Error::InvalidTensor(format!(
                "curvature matrix must be 10×10, got {}×{}",
                m.rows(),
                m.cols()
            )));
        }
        let k = CurvatureMap { m };
        let r = k.range_residual();
        if !r.near_zero(tol) {
            return Err(Error::RangeCondition(r.to_f64()));
        }
        Ok(k)
    }

    pub fn zero() -> Self {
        CurvatureMap {
            m: Matrix::zeros(10, 10),
        }
    }

    /// The map whose value on the i-th basis bivector is f(that bivector).
    pub fn from_map(f: impl Fn(&KVector<F>) -> KVector<F>) -> Self {
        let cols: Vec<Vec<F>> = (0..10)
            .map(|i| f(&KVector::basis(2, i)).into_coeffs())
            .collect();
        CurvatureMap {
            m: Matrix::from_columns(&cols),
        }
    }

    /// 𝒫, the orthogonal projection Λ² → Λ²₃.
    pub fn projection() -> Self {
        Self::from_map(l23_part)
    }

    /// c κ₃ g(κ₃, ·) for the standard κ₃.
    pub fn rank_one_kappa3(c: &F) -> Self {
        let k3 = KappaTriple::<F>::standard().get(2).clone();
        Self::from_map(|b| k3.scale(&(c.clone() * &k3.dot(b))))
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.m
    }

    pub fn apply(&self, b: &KVector<F>) -> KVector<F> {
        KVector::from_coeffs(2, self.m.mul_vec(b.coeffs())).expect("bivector")
    }

    /// K(X, Y, Z, U).
    pub fn eval(&self, x: &KVector<F>, y: &KVector<F>, z: &KVector<F>, u: &KVector<F>) -> F {
        self.apply(&(x ^ y)).dot(&(z ^ u))
    }

    fn eval_basis(&self, a: usize, b: usize, c: usize, d: usize) -> F {
        let s1 = KVector::<F>::blade(&[a, b]);
        let s2 = KVector::<F>::blade(&[c, d]);
        self.apply(&s1).dot(&s2)
    }

    /// Σ over columns of |column − 𝒫 column|².
    pub fn range_residual(&self) -> F {
        (0..10).fold(F::zero(), |acc, i| {
            let col = KVector::from_coeffs(2, self.m.column(i)).expect("bivector");
            acc + &l23_residual(&col)
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        CurvatureMap {
            m: self.m.add(&rhs.m),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        CurvatureMap {
            m: self.m.sub(&rhs.m),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        CurvatureMap { m: self.m.scale(s) }
    }

    /// Frobenius inner product of the matrices.
    pub fn inner(&self, rhs: &Self) -> F {
        self.m
            .entries()
            .iter()
            .zip(rhs.m.entries())
            .fold(F::zero(), |acc, (a, b)| acc + &(a.clone() * b))
    }

    pub fn max_abs(&self) -> f64 {
        self.m.max_abs()
    }

    /// The same map in coordinates of another orthonormal frame: `rows` holds
    /// the frame vectors (in standard coordinates) as rows.
    pub fn change_frame(&self, rows: &Matrix<F>) -> Self {
        let l2 = induced_on_bivectors(rows);
        // components in the new frame = L · K · Lᵀ for orthogonal L.
        CurvatureMap {
            m: l2.mul(&self.m).mul(&l2.transpose()),
        }
    }
}

/// Matrix of the bivector map e_i∧e_j ↦ f_i∧f_j written in frame rows f.
pub(crate) fn induced_on_bivectors<F: Field>(rows: &Matrix<F>) -> Matrix<F> {
    let vecs: Vec<KVector<F>> = (0..DIM).map(|i| KVector::from_slice(&rows.row(i))).collect();
    let cols: Vec<Vec<F>> = blades(2)
        .iter()
        .map(|m| {
            let ix = mask_indices(*m);
            (&vecs[ix[0]] ^ &vecs[ix[1]]).into_coeffs()
        })
        .collect();
    // Column b is f_{b} in standard coordinates; components along f are its transpose.
    Matrix::from_columns(&cols).transpose()
}

/// ρ_K(X, Y) = Σ_α K(X, e_α, Y, e_α).
pub fn ricci<F: Field>(k: &CurvatureMap<F>) -> Tensor2<F> {
    Tensor2::from_fn(|x, y| {
        (0..DIM).fold(F::zero(), |acc, a| {
            if a == x || a == y {
                acc
            } else {
                acc + &k.eval_basis(x, a, y, a)
            }
        })
    })
}

/// Full alternation of the 4-tensor K, as a 4-vector.
///
/// For K skew in each pair the 24-term sum collapses to six pair splittings.
pub fn antisym<F: Field>(k: &CurvatureMap<F>) -> KVector<F> {
    let sixth = F::ratio(1, 6);
    let coeffs = blades(4)
        .iter()
        .map(|m| {
            let ix = mask_indices(*m);
            let (i, j, l, n) = (ix[0], ix[1], ix[2], ix[3]);
            let s = k.eval_basis(i, j, l, n) - &k.eval_basis(i, l, j, n)
                + &k.eval_basis(i, n, j, l)
                + &k.eval_basis(j, l, i, n)
                - &k.eval_basis(j, n, i, l)
                + &k.eval_basis(l, n, i, j);
            s * &sixth
        })
        .collect();
    KVector::from_coeffs(4, coeffs).expect("five components")
}

/// η′(X, Z) = Σᵢ η(κᵢX, κᵢZ) over the standard κ-triple.
pub fn eta_prime<F: Field>(eta: &Tensor2<F>) -> Tensor2<F> {
    let kt = KappaTriple::<F>::standard();
    let images: Vec<Vec<KVector<F>>> = (0..3)
        .map(|i| (0..DIM).map(|x| kt.get(i).contract(&KVector::e(x))).collect())
        .collect();
    Tensor2::from_fn(|x, z| {
        (0..3).fold(F::zero(), |acc, i| acc + &eta.form(&images[i][x], &images[i][z]))
    })
}

/// 𝒦_ν = (10/3) 𝒫 ∘ 𝒩, where g(𝒩(X∧Y), Z∧U) = ν(X∧Y∧Z∧U).
pub fn k_nu<F: Field>(nu: &KVector<F>) -> Result<CurvatureMap<F>> {
    if nu.degree() != 4 {
        return Err(Error::DegreeMismatch {
            expected: 4,
            found: nu.degree(),
        });
    }
    let c = F::ratio(10, 3);
    Ok(CurvatureMap::from_map(|b| {
        let n = KVector::from_coeffs(
            2,
            (0..10)
                .map(|j| nu.dot(&(b ^ &KVector::basis(2, j))))
                .collect(),
        )
        .expect("bivector");
        l23_part(&n).scale(&c)
    }))
}

/// X∧Y ↦ 𝒫(a(X)∧Y + X∧a(Y)) for an endomorphism a.
fn derivation_map<F: Field>(a: &Tensor2<F>) -> CurvatureMap<F> {
    CurvatureMap::from_map(|b: &KVector<F>| {
        let mut out = KVector::zero(2);
        for (m, c) in blades(2).iter().zip(b.coeffs()) {
            if c.is_zero() {
                continue;
            }
            let ix = mask_indices(*m);
            let x = KVector::e(ix[0]);
            let y = KVector::e(ix[1]);
            let t = &(&a.apply(&x) ^ &y) + &(&x ^ &a.apply(&y));
            out = &out + &t.scale(c);
        }
        l23_part(&out)
    })
}

/// 𝒦⁻_η = (5/6) 𝒫(ηX∧Y + X∧ηY + η′X∧Y + X∧η′Y) for skew η.
pub fn k_minus<F: Field>(eta: &Tensor2<F>, tol: f64) -> Result<CurvatureMap<F>> {
    if !eta.flags(tol).skew {
        return Err(Error::InvalidTensor("k_minus needs a skew form".into()));
    }
    let a = eta.add(&eta_prime(eta));
    Ok(derivation_map(&a).scale(&F::ratio(5, 6)))
}

/// 𝒦⁺_η = (5/18) 𝒫(5ηX∧Y + 5X∧ηY − η′X∧Y − X∧η′Y) for symmetric traceless η.
pub fn k_plus<F: Field>(eta: &Tensor2<F>, tol: f64) -> Result<CurvatureMap<F>> {
    let flags = eta.flags(tol);
    if !flags.symmetric || !flags.traceless {
        return Err(Error::InvalidTensor(
            "k_plus needs a symmetric traceless form".into(),
        ));
    }
    let a = eta.scale(&F::from_int(5)).sub(&eta_prime(eta));
    Ok(derivation_map(&a).scale(&F::ratio(5, 18)))
}

/// The components (A_K, ρ⁻_K, s_K, ρ⁺_K − ⅕ s_K g).
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureDecomposition<F> {
    pub a: KVector<F>,
    pub rho_minus: Tensor2<F>,
    pub s: F,
    pub eta: Tensor2<F>,
}

impl<F: Field> CurvatureDecomposition<F> {
    pub fn zero() -> Self {
        CurvatureDecomposition {
            a: KVector::zero(4),
            rho_minus: Tensor2::zero(),
            s: F::zero(),
            eta: Tensor2::zero(),
        }
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.a.degree() != 4 {
            return Err(Error::DegreeMismatch {
                expected: 4,
                found: self.a.degree(),
            });
        }
        if !self.rho_minus.flags(tol).skew {
            return Err(Error::InvalidTensor("ρ⁻ must be skew".into()));
        }
        let f = self.eta.flags(tol);
        if !f.symmetric || !f.traceless {
            return Err(Error::InvalidTensor("η must be symmetric and traceless".into()));
        }
        Ok(())
    }
}

/// Ψ(K); requires the range condition.
pub fn psi_decompose<F: Field>(k: &CurvatureMap<F>, tol: f64) -> Result<CurvatureDecomposition<F>> {
    let r = k.range_residual();
    if !r.near_zero(tol) {
        return Err(Error::RangeCondition(r.to_f64()));
    }
    Ok(psi_decompose_unchecked(k))
}

pub(crate) fn psi_decompose_unchecked<F: Field>(k: &CurvatureMap<F>) -> CurvatureDecomposition<F> {
    let rho = ricci(k);
    let s = rho.trace();
    let eta = rho
        .symmetric_part()
        .sub(&Tensor2::metric().scale(&(s.clone() * &F::ratio(1, 5))));
    CurvatureDecomposition {
        a: antisym(k),
        rho_minus: rho.skew_part(),
        s,
        eta,
    }
}

/// Ψ⁻¹ = 𝒦_A + 𝒦⁻_{ρ⁻} + c 𝒫 + 𝒦⁺_η, with c fixed by s(c𝒫) = s.
pub fn psi_inverse<F: Field>(d: &CurvatureDecomposition<F>, tol: f64) -> Result<CurvatureMap<F>> {
    d.validate(tol)?;
    let p = CurvatureMap::<F>::projection();
    let s_p = ricci(&p).trace();
    let c = d.s.div(&s_p).ok_or(Error::DivisionByZero)?;
    Ok(k_nu(&d.a)?
        .add(&k_minus(&d.rho_minus, tol)?)
        .add(&p.scale(&c))
        .add(&k_plus(&d.eta, tol)?))
}

/// The t > 0 with t K = 𝒫, if any.
pub fn chi_killing_t<F: Field>(k: &CurvatureMap<F>, tol: f64) -> Option<F> {
    let p = CurvatureMap::<F>::projection();
    let entries = k.matrix().entries();
    let (idx, pivot) = entries
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.near_zero(tol))
        .max_by(|a, b| a.1.to_f64().abs().total_cmp(&b.1.to_f64().abs()))?;
    let t = p.matrix().entries()[idx].div(pivot)?;
    if !t.is_positive() {
        return None;
    }
    if k.scale(&t).sub(&p).matrix().is_zero_within(tol) {
        Some(t)
    } else {
        None
    }
}
