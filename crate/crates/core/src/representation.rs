//! The irreducible representation of SO(3) on ℝ⁵.
//!
//! ℝ⁵ is identified with symmetric traceless 3×3 matrices through μ, and
//! h ∈ SO(3) acts by ι(h)x = μ⁻¹(h μ(x) hᵀ). The invariant cubic Υ, its
//! operator Υ̂ on ⊗²ℝ⁵ and the resulting decomposition
//! Λ²₃ ⊕ Λ²₇ ⊕ ⊙²₁ ⊕ ⊙²₅ ⊕ ⊙²₉ live here, together with κ-triples,
//! adapted frames and the so(3) cross product on Λ²₃.

use crate::cache::cached;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::multilinear::{KVector, Tensor2, DIM};
use std::sync::Arc;

/// Symmetric traceless 3×3 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Sym3Traceless<F> {
    m: Matrix<F>,
}

impl<F: Field> Sym3Traceless<F> {
    pub fn new(m: Matrix<F>, tol: f64) -> Result<Self> {
        if m.rows() != 3 || m.cols() != 3 {
            return Err(Error::InvalidTensor("expected a 3×3 matrix".into()));
        }
        for i in 0..3 {
            for j in 0..i {
                if !(m[(i, j)].clone() - &m[(j, i)]).near_zero(tol) {
                    return Err(Error::InvalidTensor("matrix is not symmetric".into()));
                }
            }
        }
        if !m.trace().near_zero(tol) {
            return Err(Error::InvalidTensor("matrix is not traceless".into()));
        }
        Ok(Sym3Traceless { m })
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.m
    }
}

/// μ(x) = [[x₁/√3−x₄, x₂, x₃], [x₂, x₁/√3+x₄, x₅], [x₃, x₅, −2x₁/√3]].
pub fn mu<F: Field>(x: &KVector<F>) -> Sym3Traceless<F> {
    let c = x.coeffs();
    let a = c[0].clone() * &F::sqrt3() * &F::ratio(1, 3);
    let m = Matrix::from_rows(vec![
        vec![a.clone() - &c[3], c[1].clone(), c[2].clone()],
        vec![c[1].clone(), a.clone() + &c[3], c[4].clone()],
        vec![c[2].clone(), c[4].clone(), a.scale_int(-2)],
    ]);
    Sym3Traceless { m }
}

/// xᵢ = ½ tr(m μ(eᵢ)).
pub fn mu_inv<F: Field>(m: &Sym3Traceless<F>) -> KVector<F> {
    let half = F::ratio(1, 2);
    let v: Vec<F> = (0..DIM)
        .map(|i| m.m.mul(&mu(&KVector::<F>::e(i)).m).trace() * &half)
        .collect();
    KVector::from_slice(&v)
}

/// Rotation of ℝ³.
#[derive(Clone, Debug, PartialEq)]
pub struct SO3Element<F> {
    h: Matrix<F>,
}

impl<F: Field> SO3Element<F> {
    pub fn new(h: Matrix<F>, tol: f64) -> Result<Self> {
        if h.rows() != 3 || h.cols() != 3 {
            return Err(Error::NotRotation("expected a 3×3 matrix".into()));
        }
        if !h.transpose().mul(&h).sub(&Matrix::identity(3)).is_zero_within(tol) {
            return Err(Error::NotRotation("hᵀh ≠ I".into()));
        }
        if !(h.determinant() - F::one()).near_zero(tol) {
            return Err(Error::NotRotation("det h ≠ 1".into()));
        }
        Ok(SO3Element { h })
    }

    pub fn identity() -> Self {
        SO3Element {
            h: Matrix::identity(3),
        }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.h
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        SO3Element {
            h: self.h.mul(&rhs.h),
        }
    }

    pub fn inverse(&self) -> Self {
        SO3Element {
            h: self.h.transpose(),
        }
    }

    fn unchecked(rows: [[F; 3]; 3]) -> Self {
        SO3Element {
            h: Matrix::from_rows(rows.into_iter().map(Vec::from).collect()),
        }
    }

    /// h_ψ = [[c, s, 0], [−s, c, 0], [0, 0, 1]] for c = cos ψ, s = sin ψ.
    pub fn rot_psi(c: F, s: F, tol: f64) -> Result<Self> {
        let z = F::zero;
        Self::new(
            Self::unchecked([
                [c.clone(), s.clone(), z()],
                [-s, c, z()],
                [z(), z(), F::one()],
            ])
            .h,
            tol,
        )
    }

    /// h_θ = [[0, 0, 1], [c, s, 0], [−s, c, 0]].
    pub fn rot_theta(c: F, s: F, tol: f64) -> Result<Self> {
        let z = F::zero;
        Self::new(
            Self::unchecked([
                [z(), z(), F::one()],
                [c.clone(), s.clone(), z()],
                [-s, c, z()],
            ])
            .h,
            tol,
        )
    }

    /// h_φ = [[−s, c, 0], [0, 0, 1], [c, s, 0]].
    pub fn rot_phi(c: F, s: F, tol: f64) -> Result<Self> {
        let z = F::zero;
        Self::new(
            Self::unchecked([
                [-s.clone(), c.clone(), z()],
                [z(), z(), F::one()],
                [c, s, z()],
            ])
            .h,
            tol,
        )
    }
}

impl SO3Element<f64> {
    pub fn from_euler(psi: f64, theta: f64, phi: f64) -> Self {
        let t = 1e-12;
        let a = Self::rot_psi(psi.cos(), psi.sin(), t).expect("rotation");
        let b = Self::rot_theta(theta.cos(), theta.sin(), t).expect("rotation");
        let c = Self::rot_phi(phi.cos(), phi.sin(), t).expect("rotation");
        a.compose(&b).compose(&c)
    }

    /// Angles (ψ, θ, φ) with h = h_ψ h_θ h_φ and θ ∈ [0, π].
    ///
    /// Row 3 of the product is (sin θ sin φ, −sin θ cos φ, cos θ) and column 3
    /// is (sin ψ sin θ, cos ψ sin θ, cos θ). When sin θ vanishes, φ is fixed
    /// to 0 and ψ is read off h (h_θ h_φ)ᵀ.
    pub fn euler_angles(&self) -> (f64, f64, f64) {
        let h = &self.h;
        let theta = h[(2, 2)].clamp(-1.0, 1.0).acos();
        if theta.sin().abs() > 1e-9 {
            let phi = h[(2, 0)].atan2(-h[(2, 1)]);
            let psi = h[(0, 2)].atan2(h[(1, 2)]);
            (psi, theta, phi)
        } else {
            let t = 1e-9;
            let b = Self::rot_theta(theta.cos(), theta.sin(), t).expect("rotation");
            let c = Self::rot_phi(1.0, 0.0, t).expect("rotation");
            let rest = h.mul(&b.compose(&c).h.transpose());
            let psi = rest[(0, 1)].atan2(rest[(0, 0)]);
            (psi, theta, 0.0)
        }
    }
}

/// ι(h): column j is μ⁻¹(h μ(eⱼ) hᵀ).
pub fn iota<F: Field>(h: &SO3Element<F>) -> Matrix<F> {
    let ht = h.h.transpose();
    let cols: Vec<Vec<F>> = (0..DIM)
        .map(|j| {
            let m = h.h.mul(&mu(&KVector::<F>::e(j)).m).mul(&ht);
            mu_inv(&Sym3Traceless { m }).into_coeffs()
        })
        .collect();
    Matrix::from_columns(&cols)
}

fn upsilon_poly<F: Field>(x: &[F]) -> F {
    let sq = |v: &F| v.square();
    let r3 = F::sqrt3();
    let inner = sq(&x[1]).scale_int(6) + &sq(&x[3]).scale_int(6)
        - &sq(&x[0]).scale_int(2)
        - &sq(&x[2]).scale_int(3)
        - &sq(&x[4]).scale_int(3);
    let t1 = x[0].clone() * &inner * &F::ratio(1, 2);
    let t2 = r3.clone() * &F::ratio(3, 2) * &x[3] * &(sq(&x[4]) - &sq(&x[2]));
    let t3 = r3.scale_int(3) * &x[1] * &x[2] * &x[4];
    t1 + &t2 + &t3
}

/// Υ(x,x,x), the invariant cubic in an adapted frame.
pub fn upsilon_cubic<F: Field>(x: &KVector<F>) -> F {
    upsilon_poly(x.coeffs())
}

/// Coefficients u[i][j][k] = Υ(eᵢ,eⱼ,e_k), by inclusion–exclusion over the cubic.
fn upsilon_coeffs<F: Field>() -> Arc<Vec<F>> {
    cached("upsilon_coeffs", || {
        let p = |idx: &[usize]| {
            let mut v = vec![F::zero(); DIM];
            for &i in idx {
                v[i] = v[i].clone() + &F::one();
            }
            upsilon_poly(&v)
        };
        let sixth = F::ratio(1, 6);
        let mut out = Vec::with_capacity(DIM * DIM * DIM);
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    let s = p(&[i, j, k]) - &p(&[i, j]) - &p(&[i, k]) - &p(&[j, k])
                        + &p(&[i])
                        + &p(&[j])
                        + &p(&[k]);
                    out.push(s * &sixth);
                }
            }
        }
        out
    })
}

/// The symmetric trilinear form with Υ(x,x,x) = [`upsilon_cubic`].
pub fn upsilon<F: Field>(x: &KVector<F>, y: &KVector<F>, z: &KVector<F>) -> F {
    let u = upsilon_coeffs::<F>();
    let (x, y, z) = (x.coeffs(), y.coeffs(), z.coeffs());
    let mut acc = F::zero();
    for i in 0..DIM {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..DIM {
            if y[j].is_zero() {
                continue;
            }
            let xy = x[i].clone() * &y[j];
            for k in 0..DIM {
                let c = &u[(i * DIM + j) * DIM + k];
                if c.is_zero() || z[k].is_zero() {
                    continue;
                }
                acc = acc + &(xy.clone() * c * &z[k]);
            }
        }
    }
    acc
}

/// Υ_v, defined by g(Υ_v(x), y) = Υ(v, x, y).
pub fn upsilon_op<F: Field>(v: &KVector<F>) -> Tensor2<F> {
    let u = upsilon_coeffs::<F>();
    let v = v.coeffs();
    Tensor2::from_fn(|i, j| {
        (0..DIM).fold(F::zero(), |acc, k| {
            let c = &u[(k * DIM + i) * DIM + j];
            if c.is_zero() || v[k].is_zero() {
                acc
            } else {
                acc + &(v[k].clone() * c)
            }
        })
    })
}

/// Υ̂ as a 25×25 matrix on row-major flattened tensors.
///
/// With W(x) = Σ xᵢ W(eᵢ,eⱼ) eⱼ, the definition Υ̂(W)(x) = 4 Σⱼ Υ_{W(eⱼ)} Υ_{eⱼ}(x)
/// becomes Υ̂(W) = 4 Σ_{j,l} W(eⱼ,e_l) Υ_{eⱼ} Υ_{e_l} as a bilinear form.
pub fn upsilon_hat_matrix<F: Field>() -> Arc<Matrix<F>> {
    cached("upsilon_hat", || {
        let ops: Vec<Matrix<F>> = (0..DIM)
            .map(|i| upsilon_op(&KVector::<F>::e(i)).matrix().clone())
            .collect();
        let four = F::from_int(4);
        let cols: Vec<Vec<F>> = (0..DIM * DIM)
            .map(|c| {
                let (j, l) = (c / DIM, c % DIM);
                ops[j].mul(&ops[l]).scale(&four).entries().to_vec()
            })
            .collect();
        Matrix::from_columns(&cols)
    })
}

pub fn upsilon_hat<F: Field>(w: &Tensor2<F>) -> Tensor2<F> {
    Tensor2::from_vec(&upsilon_hat_matrix::<F>().mul_vec(&w.to_vec()))
}

/// The five irreducible summands of ⊗²ℝ⁵.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    L23,
    L27,
    S1,
    S5,
    S9,
}

impl Component {
    pub const ALL: [Component; 5] = [
        Component::L23,
        Component::L27,
        Component::S1,
        Component::S5,
        Component::S9,
    ];

    /// Eigenvalue of Υ̂ on this summand.
    pub fn eigenvalue(self) -> i64 {
        match self {
            Component::L23 => 7,
            Component::L27 => -8,
            Component::S1 => 14,
            Component::S5 => -3,
            Component::S9 => 4,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Component::L23 => 3,
            Component::L27 => 7,
            Component::S1 => 1,
            Component::S5 => 5,
            Component::S9 => 9,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Component::L23 => "L23",
            Component::L27 => "L27",
            Component::S1 => "S1",
            Component::S5 => "S5",
            Component::S9 => "S9",
        }
    }

    fn key(self) -> &'static str {
        match self {
            Component::L23 => "proj_l23",
            Component::L27 => "proj_l27",
            Component::S1 => "proj_s1",
            Component::S5 => "proj_s5",
            Component::S9 => "proj_s9",
        }
    }
}

/// Applies Π_{μ≠λ} (Υ̂ − μ)/(λ − μ) to a flattened tensor.
fn lagrange_apply<F: Field>(c: Component, v: &[F]) -> Vec<F> {
    let hat = upsilon_hat_matrix::<F>();
    let lambda = c.eigenvalue();
    let mut out = v.to_vec();
    for other in Component::ALL {
        if other == c {
            continue;
        }
        let mu = other.eigenvalue();
        let denom = F::ratio(1, lambda - mu);
        let shift = F::from_int(mu);
        let applied = hat.mul_vec(&out);
        out = applied
            .into_iter()
            .zip(&out)
            .map(|(a, b)| (a - &(shift.clone() * b)) * &denom)
            .collect();
    }
    out
}

/// Orthogonal projector onto a summand, as a 25×25 matrix (cached).
pub fn projector_matrix<F: Field>(c: Component) -> Arc<Matrix<F>> {
    cached(c.key(), || {
        let cols: Vec<Vec<F>> = (0..DIM * DIM)
            .map(|k| {
                let mut e = vec![F::zero(); DIM * DIM];
                e[k] = F::one();
                lagrange_apply(c, &e)
            })
            .collect();
        Matrix::from_columns(&cols)
    })
}

/// Component of W in the given summand.
pub fn project<F: Field>(c: Component, w: &Tensor2<F>) -> Tensor2<F> {
    Tensor2::from_vec(&projector_matrix::<F>(c).mul_vec(&w.to_vec()))
}

/// Ordered orthonormal-candidate frame of ℝ⁵ with cached status flags.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame<F> {
    vectors: Vec<KVector<F>>,
    status: FrameStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameStatus {
    pub orthonormal: bool,
    pub oriented: bool,
    pub adapted: bool,
}

impl<F: Field> Frame<F> {
    pub fn new(vectors: Vec<KVector<F>>, tol: f64) -> Result<Self> {
        if vectors.len() != DIM {
            return Err(Error::Invalid(format!("a frame needs 5 vectors, got {}", vectors.len())));
        }
        if let Some(v) = vectors.iter().find(|v| v.degree() != 1) {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: v.degree(),
            });
        }
        let status = frame_status(&vectors, tol);
        Ok(Frame { vectors, status })
    }

    pub fn standard() -> Self {
        Frame {
            vectors: (0..DIM).map(KVector::e).collect(),
            status: FrameStatus {
                orthonormal: true,
                oriented: true,
                adapted: true,
            },
        }
    }

    pub fn vectors(&self) -> &[KVector<F>] {
        &self.vectors
    }

    pub fn get(&self, i: usize) -> &KVector<F> {
        &self.vectors[i]
    }

    pub fn status(&self) -> FrameStatus {
        self.status
    }

    /// Rows are the frame vectors.
    pub fn matrix(&self) -> Matrix<F> {
        Matrix::from_rows(self.vectors.iter().map(|v| v.coeffs().to_vec()).collect())
    }

    /// The frame bⱼ = Σ_k m[j][k] a_k.
    pub fn transformed(&self, m: &Matrix<F>, tol: f64) -> Self {
        let rows = m.mul(&self.matrix());
        let vectors = (0..DIM).map(|j| KVector::from_slice(&rows.row(j))).collect();
        Frame::new(vectors, tol).expect("five vectors")
    }

    /// The frame obtained by letting h act on this one: bⱼ = Σ_k ι(h)ⱼ_k a_k.
    pub fn rotated(&self, h: &SO3Element<F>, tol: f64) -> Self {
        self.transformed(&iota(h), tol)
    }

    /// Expresses x in this frame: components g(x, aᵢ).
    pub fn coords(&self, x: &KVector<F>) -> KVector<F> {
        let c: Vec<F> = self.vectors.iter().map(|a| a.dot(x)).collect();
        KVector::from_slice(&c)
    }

    /// Σ cᵢ aᵢ.
    pub fn combine(&self, c: &[F]) -> KVector<F> {
        self.vectors
            .iter()
            .zip(c)
            .fold(KVector::zero(1), |acc, (a, x)| &acc + &a.scale(x))
    }
}

fn frame_status<F: Field>(v: &[KVector<F>], tol: f64) -> FrameStatus {
    let mut orthonormal = true;
    for i in 0..DIM {
        for j in 0..DIM {
            let expect = if i == j { F::one() } else { F::zero() };
            if !(v[i].dot(&v[j]) - &expect).near_zero(tol) {
                orthonormal = false;
            }
        }
    }
    let m = Matrix::from_rows(v.iter().map(|x| x.coeffs().to_vec()).collect());
    let oriented = (m.determinant() - F::one()).near_zero(tol);
    let adapted = orthonormal && oriented && upsilon_table_matches(v, tol);
    FrameStatus {
        orthonormal,
        oriented,
        adapted,
    }
}

fn upsilon_table_matches<F: Field>(v: &[KVector<F>], tol: f64) -> bool {
    let u = upsilon_coeffs::<F>();
    for i in 0..DIM {
        for j in i..DIM {
            for k in j..DIM {
                let got = upsilon(&v[i], &v[j], &v[k]);
                if !(got - &u[(i * DIM + j) * DIM + k]).near_zero(tol) {
                    return false;
                }
            }
        }
    }
    true
}

/// Orthonormal, oriented, and Υ has the canonical coefficients in it.
pub fn is_adapted<F: Field>(f: &Frame<F>, tol: f64) -> bool {
    frame_status(&f.vectors, tol).adapted
}

/// κ₁ = √3 a₁∧a₅ + a₂∧a₃ + a₄∧a₅, κ₂ = √3 a₁∧a₃ + a₂∧a₅ + a₃∧a₄, κ₃ = 2a₂∧a₄ + a₃∧a₅.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaTriple<F> {
    k: [KVector<F>; 3],
}

fn kappas_of<F: Field>(a: &[KVector<F>]) -> [KVector<F>; 3] {
    let w = |i: usize, j: usize| &a[i] ^ &a[j];
    let r3 = F::sqrt3();
    [
        &(&w(0, 4).scale(&r3) + &w(1, 2)) + &w(3, 4),
        &(&w(0, 2).scale(&r3) + &w(1, 4)) + &w(2, 3),
        &w(1, 3).scale(&F::from_int(2)) + &w(2, 4),
    ]
}

impl<F: Field> KappaTriple<F> {
    /// The κ-triple of the standard frame.
    pub fn standard() -> Self {
        KappaTriple {
            k: kappas_of(Frame::<F>::standard().vectors()),
        }
    }

    /// Validates orthogonality, |qᵢ|² = 5, membership in Λ²₃ and orientation.
    pub fn new(q: [KVector<F>; 3], tol: f64) -> Result<Self> {
        for s in &q {
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
        }
        let std = Self::standard();
        let r = Matrix::from_fn(3, 3, |i, j| q[i].dot(&std.k[j]) * &F::ratio(1, 5));
        if !r.transpose().mul(&r).sub(&Matrix::identity(3)).is_zero_within(tol) {
            return Err(Error::Invalid(
                "triple must be pairwise orthogonal with |qᵢ|² = 5".into(),
            ));
        }
        if !(r.determinant() - F::one()).near_zero(tol) {
            return Err(Error::Invalid("triple has the wrong orientation".into()));
        }
        Ok(KappaTriple { k: q })
    }

    pub fn get(&self, i: usize) -> &KVector<F> {
        &self.k[i]
    }

    pub fn all(&self) -> &[KVector<F>; 3] {
        &self.k
    }

    /// κ-coordinates yᵢ = g(s, κᵢ)/5.
    pub fn coords(&self, s: &KVector<F>) -> [F; 3] {
        let fifth = F::ratio(1, 5);
        [0, 1, 2].map(|i| s.dot(&self.k[i]) * &fifth)
    }

    /// Σ yᵢ κᵢ.
    pub fn combine(&self, y: &[F; 3]) -> KVector<F> {
        (0..3).fold(KVector::zero(2), |acc, i| &acc + &self.k[i].scale(&y[i]))
    }

    /// (s × t)ᵢ = εᵢⱼ_k sⱼ t_k in κ-coordinates.
    pub fn cross(&self, s: &KVector<F>, t: &KVector<F>, tol: f64) -> Result<KVector<F>> {
        for x in [s, t] {
            let r = l23_residual(x);
            if !r.near_zero(tol) {
                return Err(Error::NotInL23(r.to_f64()));
            }
        }
        Ok(self.combine(&cross3(&self.coords(s), &self.coords(t))))
    }
}

pub(crate) fn cross3<F: Field>(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    [
        a[1].clone() * &b[2] - &(a[2].clone() * &b[1]),
        a[2].clone() * &b[0] - &(a[0].clone() * &b[2]),
        a[0].clone() * &b[1] - &(a[1].clone() * &b[0]),
    ]
}

/// κ-triple of an adapted frame.
pub fn kappa_frame<F: Field>(a: &Frame<F>, tol: f64) -> Result<KappaTriple<F>> {
    if !is_adapted(a, tol) {
        return Err(Error::NotAdapted);
    }
    Ok(KappaTriple {
        k: kappas_of(a.vectors()),
    })
}

/// Orthogonal projection of a bivector onto Λ²₃: 𝒫(s) = ⅕ Σ g(s, κᵢ) κᵢ.
pub fn l23_part<F: Field>(s: &KVector<F>) -> KVector<F> {
    let std = KappaTriple::<F>::standard();
    std.combine(&std.coords(s))
}

/// |s − 𝒫s|².
pub fn l23_residual<F: Field>(s: &KVector<F>) -> F {
    (s - &l23_part(s)).norm_sq()
}

/// Cross product in the standard κ-triple (the product is frame-independent).
pub fn cross<F: Field>(s: &KVector<F>, t: &KVector<F>, tol: f64) -> Result<KVector<F>> {
    KappaTriple::standard().cross(s, t, tol)
}

/// The rotation h whose adapted frame has κ-triple (q₁, q₂, q₃).
///
/// In κ-coordinates ι(h) acts on Λ²₃ by C(h) = P h P with P = diag(1, −1, 1),
/// so h is recovered exactly from the coordinate matrix R of the triple.
pub fn rotation_from_triple<F: Field>(q: &KappaTriple<F>, tol: f64) -> Result<SO3Element<F>> {
    let std = KappaTriple::<F>::standard();
    let fifth = F::ratio(1, 5);
    let sign = |i: usize| if i == 1 { -F::one() } else { F::one() };
    let h = Matrix::from_fn(3, 3, |i, j| q.k[i].dot(&std.k[j]) * &fifth * &sign(i) * &sign(j));
    SO3Element::new(h, tol)
}

/// An adapted frame a with κᵢ(a) = qᵢ.
pub fn adapted_from_triple<F: Field>(q: [KVector<F>; 3], tol: f64) -> Result<Frame<F>> {
    let triple = KappaTriple::new(q, tol)?;
    let h = rotation_from_triple(&triple, tol)?;
    Ok(Frame::<F>::standard().rotated(&h, tol))
}
