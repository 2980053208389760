//! Exterior algebra of ℝ⁵ in a fixed orthonormal frame, and 2-tensors.
//!
//! A basis blade e_I is stored by the bitmask of I; components of degree k
//! are ordered lexicographically over strictly increasing index tuples.
//! Indices are 0-based throughout the API (e₁ is `e(0)`).

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use std::ops::{Add, BitXor, Neg, Sub};
use std::sync::OnceLock;

pub const DIM: usize = 5;
const FULL: u8 = 0b11111;

struct Tables {
    blades: [Vec<u8>; DIM + 1],
    index: [usize; 32],
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut blades: [Vec<u8>; DIM + 1] = Default::default();
        let mut index = [0usize; 32];
        for (k, list) in blades.iter_mut().enumerate() {
            let mut combos = Vec::new();
            combinations(0, k, 0, &mut combos);
            for (pos, &m) in combos.iter().enumerate() {
                index[m as usize] = pos;
            }
            *list = combos;
        }
        Tables { blades, index }
    })
}

fn combinations(start: usize, left: usize, acc: u8, out: &mut Vec<u8>) {
    if left == 0 {
        out.push(acc);
        return;
    }
    for i in start..DIM {
        combinations(i + 1, left - 1, acc | (1 << i), out);
    }
}

/// binomial(5, k).
pub fn blade_count(k: usize) -> usize {
    [1, 5, 10, 10, 5, 1][k]
}

/// Bitmasks of the degree-k basis blades in storage order.
pub fn blades(k: usize) -> &'static [u8] {
    &tables().blades[k]
}

/// Storage position of a blade within its degree.
pub fn blade_index(mask: u8) -> usize {
    tables().index[mask as usize]
}

/// Increasing 0-based indices of a blade.
pub fn mask_indices(mask: u8) -> Vec<usize> {
    (0..DIM).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of e_A ∧ e_B relative to e_{A∪B}; 0 if the blades overlap.
pub fn wedge_sign(a: u8, b: u8) -> i64 {
    if a & b != 0 {
        return 0;
    }
    let mut swaps = 0;
    for j in 0..DIM {
        if b & (1 << j) != 0 {
            // Elements of a above j must move past e_j.
            swaps += (a >> (j + 1)).count_ones();
        }
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Element of Λᵏℝ⁵ (0 ≤ k ≤ 5).
#[derive(Clone, Debug, PartialEq)]
pub struct KVector<F> {
    degree: usize,
    coeffs: Vec<F>,
}

impl<F: Field> KVector<F> {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM, "degree {degree} out of range");
        KVector {
            degree,
            coeffs: vec![F::zero(); blade_count(degree)],
        }
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<F>) -> Result<Self> {
        if degree > DIM {
            return Err(Error::DegreeOverflow(degree, 0));
        }
        if coeffs.len() != blade_count(degree) {
            return Err(Error::Invalid(format!(
                "degree {degree} needs {} components, got {}",
                blade_count(degree),
                coeffs.len()
            )));
        }
        Ok(KVector { degree, coeffs })
    }

    pub fn scalar(x: F) -> Self {
        KVector {
            degree: 0,
            coeffs: vec![x],
        }
    }

    pub fn vector(v: [F; DIM]) -> Self {
        KVector {
            degree: 1,
            coeffs: v.to_vec(),
        }
    }

    pub fn from_slice(v: &[F]) -> Self {
        assert_eq!(v.len(), DIM);
        KVector {
            degree: 1,
            coeffs: v.to_vec(),
        }
    }

    /// Standard basis vector e_{i+1}.
    pub fn e(i: usize) -> Self {
        Self::blade(&[i])
    }

    /// e_{i₁} ∧ … ∧ e_{i_k}, in the given (possibly unsorted) order.
    pub fn blade(indices: &[usize]) -> Self {
        let mut out = KVector::scalar(F::one());
        for &i in indices {
            out = out.wedge(&KVector::basis(1, i)).expect("degree ≤ 5");
        }
        out
    }

    /// The `pos`-th basis blade of degree k.
    pub fn basis(degree: usize, pos: usize) -> Self {
        let mut v = Self::zero(degree);
        v.coeffs[pos] = F::one();
        v
    }

    pub fn volume() -> Self {
        Self::basis(DIM, 0)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Component along e_{i₁}∧…∧e_{i_k}; indices may be unsorted.
    pub fn component(&self, indices: &[usize]) -> F {
        let b = Self::blade(indices);
        self.inner(&b).expect("degrees agree")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    pub fn near_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.near_zero(tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: &F) -> Self {
        KVector {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s).collect(),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_degree(rhs)?;
        Ok(self.zip(rhs, |a, b| a.clone() + b))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_degree(rhs)?;
        Ok(self.zip(rhs, |a, b| a.clone() - b))
    }

    fn same_degree(&self, rhs: &Self) -> Result<()> {
        if self.degree != rhs.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: rhs.degree,
            });
        }
        Ok(())
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        KVector {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn wedge(&self, rhs: &Self) -> Result<Self> {
        let k = self.degree + rhs.degree;
        if k > DIM {
            return Err(Error::DegreeOverflow(self.degree, rhs.degree));
        }
        let mut out = Self::zero(k);
        for (a, x) in blades(self.degree).iter().zip(&self.coeffs) {
            if x.is_zero() {
                continue;
            }
            for (b, y) in blades(rhs.degree).iter().zip(&rhs.coeffs) {
                if y.is_zero() {
                    continue;
                }
                let s = wedge_sign(*a, *b);
                if s == 0 {
                    continue;
                }
                let p = x.clone() * y;
                let slot = &mut out.coeffs[blade_index(a | b)];
                let cur = std::mem::replace(slot, F::zero());
                *slot = if s > 0 { cur + &p } else { cur - &p };
            }
        }
        Ok(out)
    }

    /// Hodge star with α ∧ ∗β = g(α,β) e₁∧…∧e₅.
    pub fn hodge(&self) -> Self {
        let mut out = Self::zero(DIM - self.degree);
        for (m, x) in blades(self.degree).iter().zip(&self.coeffs) {
            let c = FULL ^ m;
            let s = wedge_sign(*m, c);
            out.coeffs[blade_index(c)] = if s > 0 { x.clone() } else { -x.clone() };
        }
        out
    }

    /// Interior product ι_x w, the metric adjoint of x ∧ ·.
    pub fn interior(x: &Self, w: &Self) -> Result<Self> {
        if x.degree != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: x.degree,
            });
        }
        if w.degree == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut out = Self::zero(w.degree - 1);
        for (m, c) in blades(w.degree).iter().zip(&w.coeffs) {
            if c.is_zero() {
                continue;
            }
            for i in mask_indices(*m) {
                let xi = &x.coeffs[i];
                if xi.is_zero() {
                    continue;
                }
                let below = (m & ((1u8 << i) - 1)).count_ones();
                let p = xi.clone() * c;
                let slot = &mut out.coeffs[blade_index(m & !(1 << i))];
                let cur = std::mem::replace(slot, F::zero());
                *slot = if below.is_multiple_of(2) { cur + &p } else { cur - &p };
            }
        }
        Ok(out)
    }

    /// ι_x self.
    pub fn contract(&self, x: &Self) -> Self {
        Self::interior(x, self).expect("vector contraction")
    }

    /// Induced inner product; basis blades are orthonormal.
    pub fn inner(&self, rhs: &Self) -> Result<F> {
        self.same_degree(rhs)?;
        let mut acc = F::zero();
        for (a, b) in self.coeffs.iter().zip(&rhs.coeffs) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc = acc + &(a.clone() * b);
        }
        Ok(acc)
    }

    pub fn dot(&self, rhs: &Self) -> F {
        self.inner(rhs).expect("degree mismatch in inner product")
    }

    pub fn norm_sq(&self) -> F {
        self.dot(self)
    }

    pub fn to_f64(&self) -> KVector<f64> {
        KVector {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(Field::to_f64).collect(),
        }
    }

    pub fn convert<G: Field>(&self, f: impl Fn(&F) -> G) -> KVector<G> {
        KVector {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<F: Field> Add for &KVector<F> {
    type Output = KVector<F>;
    fn add(self, rhs: &KVector<F>) -> KVector<F> {
        self.checked_add(rhs).expect("degree mismatch in sum")
    }
}

impl<F: Field> Sub for &KVector<F> {
    type Output = KVector<F>;
    fn sub(self, rhs: &KVector<F>) -> KVector<F> {
        self.checked_sub(rhs).expect("degree mismatch in difference")
    }
}

impl<F: Field> Neg for KVector<F> {
    type Output = KVector<F>;
    fn neg(self) -> KVector<F> {
        -&self
    }
}

impl<F: Field> Neg for &KVector<F> {
    type Output = KVector<F>;
    fn neg(self) -> KVector<F> {
        KVector {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// Wedge product.
///
/// # Panics
/// If the degrees sum past 5; use [`KVector::wedge`] for a checked version.
impl<F: Field> BitXor for &KVector<F> {
    type Output = KVector<F>;
    fn bitxor(self, rhs: &KVector<F>) -> KVector<F> {
        self.wedge(rhs).expect("degree overflow in wedge")
    }
}

/// Linear combination Σ cᵢ vᵢ of equal-degree k-vectors.
pub fn combination<F: Field>(terms: &[(F, &KVector<F>)]) -> KVector<F> {
    let deg = terms.first().map_or(0, |t| t.1.degree());
    terms.iter().fold(KVector::zero(deg), |acc, (c, v)| &acc + &v.scale(c))
}

/// A 5×5 tensor, stored as the bilinear form b[i][j] = W(eᵢ, eⱼ).
///
/// As an endomorphism, W(x) = Σᵢⱼ xᵢ b[i][j] eⱼ, so g(W(x), y) = W(x, y).
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor2<F> {
    m: Matrix<F>,
}

/// Symmetry properties checked on a [`Tensor2`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tensor2Flags {
    pub symmetric: bool,
    pub skew: bool,
    pub traceless: bool,
}

impl<F: Field> Tensor2<F> {
    pub fn new(m: Matrix<F>) -> Result<Self> {
        if m.rows() != DIM || m.cols() != DIM {
            return Err(Error::InvalidTensor(format!(
                "expected 5×5, got {}×{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Tensor2 { m })
    }

    pub fn from_fn(f: impl FnMut(usize, usize) -> F) -> Self {
        Tensor2 {
            m: Matrix::from_fn(DIM, DIM, f),
        }
    }

    pub fn zero() -> Self {
        Tensor2 {
            m: Matrix::zeros(DIM, DIM),
        }
    }

    /// The metric g.
    pub fn metric() -> Self {
        Tensor2 {
            m: Matrix::identity(DIM),
        }
    }

    pub fn diagonal(d: [F; DIM]) -> Self {
        let mut t = Self::zero();
        for (i, x) in d.into_iter().enumerate() {
            t.m[(i, i)] = x;
        }
        t
    }

    /// Validates symmetry before wrapping.
    pub fn symmetric(m: Matrix<F>, tol: f64) -> Result<Self> {
        let t = Self::new(m)?;
        if !t.flags(tol).symmetric {
            return Err(Error::InvalidTensor("not symmetric".into()));
        }
        Ok(t)
    }

    /// Validates skewness before wrapping.
    pub fn skew(m: Matrix<F>, tol: f64) -> Result<Self> {
        let t = Self::new(m)?;
        if !t.flags(tol).skew {
            return Err(Error::InvalidTensor("not skew".into()));
        }
        Ok(t)
    }

    pub fn flags(&self, tol: f64) -> Tensor2Flags {
        let mut symmetric = true;
        let mut skew = true;
        for i in 0..DIM {
            for j in 0..DIM {
                let a = &self.m[(i, j)];
                let b = &self.m[(j, i)];
                if !(a.clone() - b).near_zero(tol) {
                    symmetric = false;
                }
                if !(a.clone() + b).near_zero(tol) {
                    skew = false;
                }
            }
        }
        Tensor2Flags {
            symmetric,
            skew,
            traceless: self.m.trace().near_zero(tol),
        }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.m[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.m[(i, j)] = v;
    }

    pub fn trace(&self) -> F {
        self.m.trace()
    }

    pub fn transpose(&self) -> Self {
        Tensor2 {
            m: self.m.transpose(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Tensor2 {
            m: self.m.add(&rhs.m),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Tensor2 {
            m: self.m.sub(&rhs.m),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Tensor2 { m: self.m.scale(s) }
    }

    pub fn symmetric_part(&self) -> Self {
        self.add(&self.transpose()).scale(&F::ratio(1, 2))
    }

    pub fn skew_part(&self) -> Self {
        self.sub(&self.transpose()).scale(&F::ratio(1, 2))
    }

    /// W(x) = Σ xᵢ b[i][j] eⱼ.
    pub fn apply(&self, x: &KVector<F>) -> KVector<F> {
        assert_eq!(x.degree(), 1);
        let v = self.m.transpose().mul_vec(x.coeffs());
        KVector::from_slice(&v)
    }

    /// W(x, y).
    pub fn form(&self, x: &KVector<F>, y: &KVector<F>) -> F {
        self.apply(x).dot(y)
    }

    /// Composition as endomorphisms: (self ∘ rhs)(x) = self(rhs(x)).
    pub fn compose(&self, rhs: &Self) -> Self {
        Tensor2 {
            m: rhs.m.mul(&self.m),
        }
    }

    /// x ⊗ y, i.e. b[i][j] = xᵢyⱼ.
    pub fn outer(x: &KVector<F>, y: &KVector<F>) -> Self {
        Self::from_fn(|i, j| x.coeffs()[i].clone() * &y.coeffs()[j])
    }

    /// x ⊙ y = x ⊗ y + y ⊗ x.
    pub fn sym_product(x: &KVector<F>, y: &KVector<F>) -> Self {
        Self::outer(x, y).add(&Self::outer(y, x))
    }

    /// The skew form (x, y) ↦ g(σ, x∧y) of a bivector.
    pub fn from_bivector(s: &KVector<F>) -> Self {
        assert_eq!(s.degree(), 2);
        let mut t = Self::zero();
        for (m, c) in blades(2).iter().zip(s.coeffs()) {
            let ix = mask_indices(*m);
            t.m[(ix[0], ix[1])] = c.clone();
            t.m[(ix[1], ix[0])] = -c.clone();
        }
        t
    }

    /// Bivector of the skew part: inverse of [`Tensor2::from_bivector`].
    pub fn to_bivector(&self) -> KVector<F> {
        let coeffs = blades(2)
            .iter()
            .map(|m| {
                let ix = mask_indices(*m);
                (self.m[(ix[0], ix[1])].clone() - &self.m[(ix[1], ix[0])]) * &F::ratio(1, 2)
            })
            .collect();
        KVector::from_coeffs(2, coeffs).expect("ten components")
    }

    /// Frobenius inner product Σ aᵢⱼbᵢⱼ.
    pub fn inner(&self, rhs: &Self) -> F {
        self.m
            .entries()
            .iter()
            .zip(rhs.m.entries())
            .fold(F::zero(), |acc, (a, b)| acc + &(a.clone() * b))
    }

    /// Flattened row-major entries (length 25).
    pub fn to_vec(&self) -> Vec<F> {
        self.m.entries().to_vec()
    }

    pub fn from_vec(v: &[F]) -> Self {
        assert_eq!(v.len(), DIM * DIM);
        Self::from_fn(|i, j| v[i * DIM + j].clone())
    }

    pub fn max_abs(&self) -> f64 {
        self.m.max_abs()
    }

    pub fn near_zero(&self, tol: f64) -> bool {
        self.m.is_zero_within(tol)
    }
}

/// The skew endomorphism X ↦ ι_X σ of a bivector.
pub fn bivector_endomorphism<F: Field>(s: &KVector<F>) -> Tensor2<F> {
    Tensor2::from_bivector(s)
}
