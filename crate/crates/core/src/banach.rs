//! Banach-algebra computations on `ℓ¹(A)` for a finite abelian group `A`,
//! and on square complex matrices.
//!
//! Multiplication in `ℓ¹(A)` is convolution with counting measure and the
//! identity is `δ_0`. Matrices use the operator norm, estimated by power
//! iteration.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{convolve, dft, dft_fast, FiniteAbelianGroup, GroupChar, GroupFun, Haar, EXHAUSTIVE_LIMIT};
use crate::scalar::Complex;

/// Element of `ℓ¹(A)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GroupFun", into = "GroupFun")]
pub struct L1AlgebraElement(GroupFun);

impl TryFrom<GroupFun> for L1AlgebraElement {
    type Error = Error;

    fn try_from(f: GroupFun) -> Result<Self> {
        Self::new(f)
    }
}

impl From<L1AlgebraElement> for GroupFun {
    fn from(x: L1AlgebraElement) -> Self {
        x.0
    }
}

impl L1AlgebraElement {
    /// Requires counting measure.
    pub fn new(f: GroupFun) -> Result<Self> {
        if f.haar != Haar::Counting {
            return Err(Error::InvalidArgument("l1 algebra elements use counting measure".into()));
        }
        Ok(L1AlgebraElement(f))
    }

    pub fn from_values(group: &FiniteAbelianGroup, values: Vec<Complex>) -> Result<Self> {
        Self::new(GroupFun::new(group.clone(), Haar::Counting, values)?)
    }

    /// `e = δ_0`.
    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        Self::delta(group, 0)
    }

    pub fn delta(group: &FiniteAbelianGroup, at: usize) -> Self {
        L1AlgebraElement(GroupFun::delta(group, Haar::Counting, at))
    }

    pub fn zero(group: &FiniteAbelianGroup) -> Self {
        L1AlgebraElement(GroupFun::zeros(group, Haar::Counting))
    }

    /// Entries with real and imaginary parts uniform in `[−1, 1)`.
    pub fn random<R: Rng + ?Sized>(group: &FiniteAbelianGroup, rng: &mut R) -> Self {
        L1AlgebraElement(GroupFun::random(group, Haar::Counting, rng))
    }

    pub fn fun(&self) -> &GroupFun {
        &self.0
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.0.group
    }

    pub fn values(&self) -> &[Complex] {
        &self.0.values
    }

    pub fn norm(&self) -> f64 {
        self.0.l1_norm()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(L1AlgebraElement(convolve(&self.0, &other.0)?))
    }

    fn zip(&self, other: &Self, op: impl Fn(Complex, Complex) -> Complex) -> Result<Self> {
        if self.group() != other.group() {
            return Err(Error::GroupMismatch(self.group().moduli().to_vec(), other.group().moduli().to_vec()));
        }
        let values = self.values().iter().zip(other.values()).map(|(&a, &b)| op(a, b)).collect();
        Self::from_values(self.group(), values)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex) -> Self {
        L1AlgebraElement(self.0.scale(s))
    }

    /// `x^{*k}` by repeated convolution; `x^0 = e`.
    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.group());
        for _ in 0..k {
            out = out.mul(self).expect("same group");
        }
        out
    }

    /// Matrix of `f ↦ x * f`: entry `(i, j)` is `x(i − j)`.
    pub fn conv_matrix(&self) -> DMatrix<Complex> {
        let g = self.group();
        let n = g.order();
        DMatrix::from_fn(n, n, |i, j| self.values()[g.sub(i, j)])
    }

    /// Inverse through LU of the convolution matrix.
    pub fn inverse(&self) -> Result<Self> {
        let inv = self
            .conv_matrix()
            .try_inverse()
            .ok_or_else(|| Error::InvalidArgument("element is not invertible".into()))?;
        Self::from_values(self.group(), inv.column(0).iter().copied().collect())
    }
}

#[derive(Debug, Clone)]
pub struct NeumannInverse {
    pub inverse: L1AlgebraElement,
    /// Number of powers summed, `a^0` through `a^{terms−1}`.
    pub terms: usize,
    /// `‖a‖^{terms}/(1 − ‖a‖)`.
    pub tail_bound: f64,
}

/// `(e − a)^{−1} = Σ a^{*j}`, summed until the geometric tail is below `tol`.
pub fn neumann_inverse(a: &L1AlgebraElement, tol: f64) -> Result<NeumannInverse> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let norm = a.norm();
    if norm >= 1.0 {
        return Err(Error::NormTooLarge { norm });
    }
    let mut sum = L1AlgebraElement::zero(a.group());
    let mut power = L1AlgebraElement::identity(a.group());
    let mut terms = 0;
    loop {
        sum = sum.add(&power)?;
        terms += 1;
        let tail = norm.powi(terms as i32) / (1.0 - norm);
        if tail < tol {
            return Ok(NeumannInverse { inverse: sum, terms, tail_bound: tail });
        }
        power = power.mul(a)?;
    }
}

/// `‖(e − a) * s − e‖₁`.
pub fn neumann_residual(a: &L1AlgebraElement, s: &L1AlgebraElement) -> Result<f64> {
    let e = L1AlgebraElement::identity(a.group());
    Ok(e.sub(a)?.mul(s)?.sub(&e)?.norm())
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralRadius {
    /// `‖x^k‖₁^{1/k}` for `k = 1..=k_max`.
    pub sequence: Vec<f64>,
    /// Minimum of the sequence.
    pub estimate: f64,
}

/// Gelfand's sequence. Powers are rescaled after each step and the scale is
/// carried in logarithms, so large `k` neither overflows nor underflows.
pub fn spectral_radius_seq(x: &L1AlgebraElement, k_max: usize) -> Result<SpectralRadius> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let mut sequence = Vec::with_capacity(k_max);
    let mut power = L1AlgebraElement::identity(x.group());
    let mut log_scale = 0.0;
    for k in 1..=k_max {
        power = power.mul(x)?;
        let n = power.norm();
        if n == 0.0 {
            sequence.extend(std::iter::repeat(0.0).take(k_max - k + 1));
            break;
        }
        log_scale += n.ln();
        power = power.scale(Complex::new(1.0 / n, 0.0));
        sequence.push((log_scale / k as f64).exp());
    }
    let estimate = sequence.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(SpectralRadius { sequence, estimate })
}

/// `σ(x) = {x̂(φ)}`, one value per character in lexicographic order.
pub fn spectrum_via_characters(x: &L1AlgebraElement) -> Vec<Complex> {
    dft(x.fun()).values
}

/// `|det((λ e − x) / s)|` with `s = ‖x‖₁ + |λ|`, computed from the convolution
/// matrix. Each eigenvalue of the scaled matrix is at most 1 in modulus, so a
/// small value means `λ e − x` is singular.
pub fn singularity_measure(x: &L1AlgebraElement, lambda: Complex) -> f64 {
    let n = x.group().order();
    let s = (x.norm() + lambda.norm()).max(f64::MIN_POSITIVE);
    let m = (DMatrix::identity(n, n) * lambda - x.conv_matrix()) / Complex::new(s, 0.0);
    m.lu().determinant().norm()
}

/// The functional `f ↦ f̂(φ_b)` with its verification record.
#[derive(Debug, Clone, Serialize)]
pub struct Homomorphism {
    pub character: Vec<u64>,
    /// Largest `|Φ(f*g) − Φ(f)Φ(g)|` over the sampled pairs.
    pub multiplicative_defect: f64,
    /// Largest `|Φ(f)| − ‖f‖₁` over the sampled functions.
    pub bound_excess: f64,
}

impl Homomorphism {
    pub fn apply(&self, f: &L1AlgebraElement) -> Result<Complex> {
        let chi = GroupChar::new(f.group(), self.character.clone())?;
        let b = chi.index(f.group());
        Ok((0..f.group().order())
            .map(|x| f.values()[x] * crate::scalar::root_of_unity(-(f.group().pairing_numerator(b, x) as i64), f.group().exponent()))
            .sum())
    }
}

pub const HOM_SAMPLES: usize = 50;

/// Every complex homomorphism of `ℓ¹(G)`, each checked on
/// [`HOM_SAMPLES`] random pairs drawn from `seed`.
pub fn homs_l1(group: &FiniteAbelianGroup, seed: u64) -> Result<Vec<Homomorphism>> {
    let n = group.order();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::InvalidArgument(format!("group order {n} exceeds {EXHAUSTIVE_LIMIT}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut homs: Vec<Homomorphism> = (0..n)
        .map(|b| Homomorphism {
            character: group.element(b),
            multiplicative_defect: 0.0,
            bound_excess: f64::NEG_INFINITY,
        })
        .collect();
    for _ in 0..HOM_SAMPLES {
        let f = L1AlgebraElement::random(group, &mut rng);
        let g = L1AlgebraElement::random(group, &mut rng);
        let fg = f.mul(&g)?;
        let (hf, hg, hfg) = (dft_fast(f.fun()), dft_fast(g.fun()), dft_fast(fg.fun()));
        let (nf, ng) = (f.norm(), g.norm());
        for (b, h) in homs.iter_mut().enumerate() {
            let d = (hfg.values[b] - hf.values[b] * hg.values[b]).norm();
            h.multiplicative_defect = h.multiplicative_defect.max(d);
            h.bound_excess = h.bound_excess.max(hf.values[b].norm() - nf).max(hg.values[b].norm() - ng);
        }
    }
    Ok(homs)
}

/// Square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix(pub DMatrix<Complex>);

impl OperatorMatrix {
    pub fn from_rows(rows: Vec<Vec<Complex>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: r.len() });
        }
        Ok(OperatorMatrix(DMatrix::from_fn(n, n, |i, j| rows[i][j])))
    }

    pub fn diagonal(d: &[Complex]) -> Self {
        OperatorMatrix(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d)))
    }

    pub fn zeros(n: usize) -> Self {
        OperatorMatrix(DMatrix::zeros(n, n))
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        OperatorMatrix(DMatrix::from_fn(n, n, |_, _| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix(self.0.adjoint())
    }

    pub fn rows(&self) -> Vec<Vec<Complex>> {
        self.0.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    /// Operator norm by power iteration on `T*T`.
    pub fn op_norm(&self) -> f64 {
        largest_eigenvalue_psd(&(self.0.adjoint() * &self.0)).sqrt()
    }
}

impl Serialize for OperatorMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self.rows().into_iter().map(|r| r.into_iter().map(|z| [z.re, z.im]).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OperatorMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        let rows = rows.into_iter().map(|r| r.into_iter().map(|[re, im]| Complex::new(re, im)).collect()).collect();
        OperatorMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

pub const POWER_ITERATIONS: usize = 500;
pub const POWER_REL_TOL: f64 = 1e-12;

/// Largest eigenvalue of a Hermitian positive semidefinite matrix.
fn largest_eigenvalue_psd(h: &DMatrix<Complex>) -> f64 {
    let n = h.nrows();
    if n == 0 {
        return 0.0;
    }
    // fixed start so results are reproducible
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v = nalgebra::DVector::from_fn(n, |_, _| Complex::new(rng.gen_range(0.5..1.5), rng.gen_range(-0.5..0.5)));
    v /= Complex::new(v.norm(), 0.0);
    let mut lambda = 0.0;
    for _ in 0..POWER_ITERATIONS {
        let w = h * &v;
        let next = v.dotc(&w).re;
        let wn = w.norm();
        if wn == 0.0 {
            return 0.0;
        }
        v = w / Complex::new(wn, 0.0);
        let done = (next - lambda).abs() <= POWER_REL_TOL * next.abs();
        lambda = next;
        if done {
            break;
        }
    }
    let w = h * &v;
    lambda.max(v.dotc(&w).re)
}

pub const CSTAR_LIMIT: usize = 256;

/// `| ‖T*T‖ − ‖T‖² |`.
pub fn cstar_gap(t: &OperatorMatrix) -> Result<f64> {
    if t.dim() > CSTAR_LIMIT {
        return Err(Error::InvalidArgument(format!("dimension {} exceeds {CSTAR_LIMIT}", t.dim())));
    }
    let tt = OperatorMatrix(t.0.adjoint() * &t.0);
    let n = t.op_norm();
    Ok((tt.op_norm() - n * n).abs())
}

/// `y^{−1} = (e − a)^{−1} x^{−1}` with `a = x^{−1}(x − y)`, the inverse of
/// `e − a` summed as a Neumann series. Requires `‖a‖ < 1`.
pub fn perturbed_inverse(x_inv: &DMatrix<Complex>, x: &DMatrix<Complex>, y: &DMatrix<Complex>, tol: f64) -> Result<DMatrix<Complex>> {
    let n = x.nrows();
    let a = x_inv * (x - y);
    let norm = OperatorMatrix(a.clone()).op_norm();
    if norm >= 1.0 {
        return Err(Error::NormTooLarge { norm });
    }
    let mut sum = DMatrix::<Complex>::identity(n, n);
    let mut power = DMatrix::<Complex>::identity(n, n);
    let mut k = 1;
    while norm.powi(k) / (1.0 - norm) >= tol {
        power = &power * &a;
        sum += &power;
        k += 1;
    }
    Ok(sum * x_inv)
}
