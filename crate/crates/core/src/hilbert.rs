//! Finite-dimensional inner products, weighted ℓᵖ norms, Hölder duality,
//! orthogonal projection, Gram–Schmidt and iterated double sums.
//!
//! Index sets are finite. Weights live on the index set rather than on the
//! operation, so the same [`IndexedFun`] models ℓ²(E) with counting weights and
//! L²(A) with normalised Haar weights `1/|A|`.

use std::ops::Add;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{rational_to_f64, rational_vec, Complex, Rational};

/// Default dependence threshold for [`gram_schmidt`].
pub const GRAM_SCHMIDT_TOL: f64 = 1e-10;

/// Orthonormality tolerance accepted by [`project`].
pub const ORTHONORMAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexedFun {
    pub labels: Vec<String>,
    pub values: Vec<Complex>,
    #[serde(with = "rational_vec")]
    pub weights: Vec<Rational>,
}

impl IndexedFun {
    pub fn new(labels: Vec<String>, values: Vec<Complex>, weights: Vec<Rational>) -> Result<Self> {
        let f = IndexedFun { labels, values, weights };
        f.validate()?;
        Ok(f)
    }

    /// Labels `"0", "1", ...` with unit weights.
    pub fn unweighted(values: Vec<Complex>) -> Self {
        let n = values.len();
        IndexedFun {
            labels: (0..n).map(|i| i.to_string()).collect(),
            values,
            weights: vec![Rational::one(); n],
        }
    }

    pub fn with_weights(values: Vec<Complex>, weights: Vec<Rational>) -> Result<Self> {
        let labels = (0..values.len()).map(|i| i.to_string()).collect();
        Self::new(labels, values, weights)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.labels.len();
        if self.values.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: self.values.len() });
        }
        if self.weights.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: self.weights.len() });
        }
        if let Some(w) = self.weights.iter().find(|w| **w <= Rational::zero()) {
            return Err(Error::InvalidArgument(format!("weight {w} is not positive")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn weights_f64(&self) -> impl Iterator<Item = f64> + '_ {
        self.weights.iter().map(rational_to_f64)
    }

    fn check_same_index(&self, other: &IndexedFun) -> Result<()> {
        if self.labels != other.labels {
            return Err(Error::IndexMismatch("labels differ".into()));
        }
        if self.weights != other.weights {
            return Err(Error::IndexMismatch("weights differ".into()));
        }
        Ok(())
    }
}

/// Exponent of an ℓᵖ norm, `p > 0` or `p = ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Hölder conjugate `q` with `1/p + 1/q = 1`, for `p ∈ [1, ∞]`.
    pub fn conjugate(self) -> Result<Exponent> {
        match self {
            Exponent::Infinity => Ok(Exponent::Finite(1.0)),
            Exponent::Finite(p) if p == 1.0 => Ok(Exponent::Infinity),
            Exponent::Finite(p) if p > 1.0 => Ok(Exponent::Finite(p / (p - 1.0))),
            Exponent::Finite(p) => Err(Error::InvalidArgument(format!("no conjugate for p = {p}"))),
        }
    }
}

impl std::str::FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            t => {
                let p = crate::scalar::parse_rational(t)
                    .map(|q| rational_to_f64(&q))
                    .or_else(|_| t.parse::<f64>().map_err(|e| Error::Parse(e.to_string())))?;
                if p > 0.0 {
                    Ok(Exponent::Finite(p))
                } else {
                    Err(Error::InvalidArgument(format!("exponent must be positive, got {p}")))
                }
            }
        }
    }
}

/// `Σ_x f(x)·conj(g(x))·w(x)`.
pub fn inner_product(f: &IndexedFun, g: &IndexedFun) -> Result<Complex> {
    f.check_same_index(g)?;
    Ok(f.values
        .iter()
        .zip(&g.values)
        .zip(f.weights_f64())
        .map(|((a, b), w)| a * b.conj() * w)
        .sum())
}

/// Weighted p-norm: weights multiply `|f(x)|^p`; the sup norm ignores them.
pub fn lp_norm(f: &IndexedFun, p: Exponent) -> f64 {
    match p {
        Exponent::Infinity => f.values.iter().map(|v| v.norm()).fold(0.0, f64::max),
        Exponent::Finite(p) => {
            let s: f64 = f.values.iter().zip(f.weights_f64()).map(|(v, w)| w * v.norm().powf(p)).sum();
            s.powf(1.0 / p)
        }
    }
}

/// Weighted bilinear pairing `Σ f(x) g(x) w(x)` used for ℓᵖ–ℓ^q duality.
pub fn pairing(f: &IndexedFun, g: &IndexedFun) -> Result<Complex> {
    f.check_same_index(g)?;
    Ok(f.values
        .iter()
        .zip(&g.values)
        .zip(f.weights_f64())
        .map(|((a, b), w)| a * b * w)
        .sum())
}

fn phase(z: Complex) -> Complex {
    let r = z.norm();
    if r == 0.0 {
        Complex::zero()
    } else {
        z / r
    }
}

/// Norm of `f ↦ Σ f g w` as a functional on ℓᵖ, i.e. `‖g‖_q`, together with an
/// extremal `f` with `‖f‖_p ≤ 1` attaining it.
pub fn dual_norm(g: &IndexedFun, p: Exponent) -> Result<(f64, IndexedFun)> {
    let q = p.conjugate()?;
    let norm = lp_norm(g, q);
    let mut witness = g.clone();
    if norm == 0.0 {
        witness.values.iter_mut().for_each(|v| *v = Complex::zero());
        return Ok((0.0, witness));
    }
    match p {
        Exponent::Finite(p) if p == 1.0 => {
            // all mass on one point of maximal modulus
            let (k, _) = g
                .values
                .iter()
                .enumerate()
                .fold((0, -1.0), |best, (i, v)| if v.norm() > best.1 { (i, v.norm()) } else { best });
            let wk = rational_to_f64(&g.weights[k]);
            for (i, v) in witness.values.iter_mut().enumerate() {
                *v = if i == k { phase(g.values[k]).conj() / wk } else { Complex::zero() };
            }
        }
        Exponent::Infinity => {
            for (v, gv) in witness.values.iter_mut().zip(&g.values) {
                *v = phase(*gv).conj();
            }
        }
        Exponent::Finite(_) => {
            let Exponent::Finite(q) = q else { unreachable!() };
            let scale = norm.powf(q - 1.0);
            for (v, gv) in witness.values.iter_mut().zip(&g.values) {
                *v = phase(*gv).conj() * gv.norm().powf(q - 1.0) / scale;
            }
        }
    }
    Ok((norm, witness))
}

/// A list of vectors in `Cⁿ`, all of the same length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorList {
    pub dimension: usize,
    pub vectors: Vec<Vec<Complex>>,
}

impl VectorList {
    pub fn new(dimension: usize, vectors: Vec<Vec<Complex>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != dimension) {
            return Err(Error::LengthMismatch { expected: dimension, got: v.len() });
        }
        Ok(VectorList { dimension, vectors })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot(a, b) - target).norm());
            }
        }
        worst
    }
}

/// `Σ a_k conj(b_k)`.
pub fn dot(a: &[Complex], b: &[Complex]) -> Complex {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

pub fn norm2(a: &[Complex]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthogonal projection of `v` onto the span of the orthonormal list `onb`.
/// Returns `(P v, v − P v)`.
pub fn project(v: &[Complex], onb: &VectorList) -> Result<(Vec<Complex>, Vec<Complex>)> {
    if v.len() != onb.dimension {
        return Err(Error::LengthMismatch { expected: onb.dimension, got: v.len() });
    }
    for (i, a) in onb.vectors.iter().enumerate() {
        for (j, b) in onb.vectors.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            let value = (dot(a, b) - target).norm();
            if value > ORTHONORMAL_TOL {
                return Err(Error::NotOrthonormal { i, j, value });
            }
        }
    }
    let mut proj = vec![Complex::zero(); v.len()];
    for basis in &onb.vectors {
        let c = dot(v, basis);
        for (p, b) in proj.iter_mut().zip(basis) {
            *p += c * b;
        }
    }
    let residual = v.iter().zip(&proj).map(|(a, b)| a - b).collect();
    Ok((proj, residual))
}

/// Classical Gram–Schmidt with one re-orthogonalisation pass. Vectors whose
/// residual norm falls below `tol` are dropped as dependent.
pub fn gram_schmidt(vs: &VectorList, tol: f64) -> VectorList {
    let mut out: Vec<Vec<Complex>> = Vec::new();
    for v in &vs.vectors {
        let mut w = v.clone();
        for _pass in 0..2 {
            let coeffs: Vec<Complex> = out.iter().map(|e| dot(&w, e)).collect();
            for (c, e) in coeffs.iter().zip(&out) {
                for (wk, ek) in w.iter_mut().zip(e) {
                    *wk -= c * ek;
                }
            }
        }
        let n = norm2(&w);
        if n >= tol {
            out.push(w.into_iter().map(|x| x / n).collect());
        }
    }
    VectorList { dimension: vs.dimension, vectors: out }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleSum<T> {
    pub total: T,
    pub row_sums: Vec<T>,
    pub col_sums: Vec<T>,
}

/// Row sums, column sums and the total of a table on `E1 × E2`. The total is
/// accumulated in row order; exact scalar types make the two iterated orders
/// agree identically.
pub fn double_sum<T>(table: &[Vec<T>]) -> Result<DoubleSum<T>>
where
    T: Clone + Zero + Add<Output = T>,
{
    let cols = table.first().map_or(0, Vec::len);
    if let Some(row) = table.iter().find(|r| r.len() != cols) {
        return Err(Error::LengthMismatch { expected: cols, got: row.len() });
    }
    let row_sums: Vec<T> = table
        .iter()
        .map(|row| row.iter().cloned().fold(T::zero(), |a, b| a + b))
        .collect();
    let col_sums: Vec<T> = (0..cols)
        .map(|j| table.iter().map(|row| row[j].clone()).fold(T::zero(), |a, b| a + b))
        .collect();
    let total = row_sums.iter().cloned().fold(T::zero(), |a, b| a + b);
    Ok(DoubleSum { total, row_sums, col_sums })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn real(xs: &[f64]) -> Vec<Complex> {
        xs.iter().map(|&x| c(x, 0.0)).collect()
    }

    #[test]
    fn inner_product_examples() {
        let f = IndexedFun::unweighted(vec![c(1.0, 0.0), c(0.0, 1.0)]);
        let g = IndexedFun::unweighted(real(&[1.0, 1.0]));
        assert_eq!(inner_product(&f, &g).unwrap(), c(1.0, 1.0));

        let h = IndexedFun::with_weights(real(&[1.0, 1.0]), vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(inner_product(&h, &h).unwrap(), c(1.0, 0.0));

        let a = IndexedFun::unweighted(real(&[2.0, 0.0]));
        let b = IndexedFun::unweighted(real(&[0.0, 3.0]));
        assert_eq!(inner_product(&a, &b).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn inner_product_rejects_mismatched_index() {
        let f = IndexedFun::unweighted(real(&[1.0, 2.0]));
        let g = IndexedFun::with_weights(real(&[1.0, 2.0]), vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        assert!(matches!(inner_product(&f, &g), Err(Error::IndexMismatch(_))));
        let h = IndexedFun::unweighted(real(&[1.0]));
        assert!(inner_product(&f, &h).is_err());
    }

    #[test]
    fn non_positive_weights_rejected() {
        assert!(IndexedFun::with_weights(real(&[1.0]), vec![ratio(0, 1)]).is_err());
        assert!(IndexedFun::with_weights(real(&[1.0]), vec![]).is_err());
    }

    #[test]
    fn lp_norm_examples() {
        let f = IndexedFun::unweighted(real(&[3.0, 4.0]));
        assert!((lp_norm(&f, Exponent::Finite(2.0)) - 5.0).abs() < 1e-15);
        assert_eq!(lp_norm(&f, Exponent::Infinity), 4.0);
        let ones = IndexedFun::unweighted(real(&[1.0, 1.0]));
        assert!((lp_norm(&ones, Exponent::Finite(0.5)) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("3/2".parse::<Exponent>().unwrap(), Exponent::Finite(1.5));
        assert_eq!("2.5".parse::<Exponent>().unwrap(), Exponent::Finite(2.5));
        assert!("0".parse::<Exponent>().is_err());
        assert!(Exponent::Finite(0.5).conjugate().is_err());
    }

    #[test]
    fn dual_norm_p1_brute_force() {
        let g = IndexedFun::unweighted(real(&[1.0, -2.0]));
        let (n, f) = dual_norm(&g, Exponent::Finite(1.0)).unwrap();
        // oracle: best of the four signed point masses
        let mut best = 0.0f64;
        for k in 0..2 {
            for s in [-1.0, 1.0] {
                let mut vals = real(&[0.0, 0.0]);
                vals[k] = c(s, 0.0);
                let cand = IndexedFun::unweighted(vals);
                best = best.max(pairing(&cand, &g).unwrap().norm());
            }
        }
        assert_eq!(n, best);
        assert_eq!(n, 2.0);
        assert_eq!(f.values, real(&[0.0, -1.0]));
    }

    #[test]
    fn dual_norm_p2_and_pinf() {
        let g = IndexedFun::unweighted(real(&[3.0, 4.0]));
        let (n, f) = dual_norm(&g, Exponent::Finite(2.0)).unwrap();
        assert!((n - 5.0).abs() < 1e-14);
        assert!((f.values[0] - c(0.6, 0.0)).norm() < 1e-15);
        assert!((f.values[1] - c(0.8, 0.0)).norm() < 1e-15);

        let g = IndexedFun::unweighted(real(&[1.0, 1.0]));
        let (n, f) = dual_norm(&g, Exponent::Infinity).unwrap();
        assert_eq!(n, 2.0);
        assert_eq!(f.values, real(&[1.0, 1.0]));
    }

    #[test]
    fn dual_norm_witness_attains() {
        let g = IndexedFun::with_weights(
            vec![c(1.0, 2.0), c(-0.5, 0.25), c(0.0, -3.0)],
            vec![ratio(1, 3), ratio(1, 2), ratio(2, 1)],
        )
        .unwrap();
        for p in [Exponent::Finite(1.0), Exponent::Finite(1.5), Exponent::Finite(3.0), Exponent::Infinity] {
            let (n, f) = dual_norm(&g, p).unwrap();
            assert!(lp_norm(&f, p) <= 1.0 + 1e-12);
            assert!(pairing(&f, &g).unwrap().norm() >= n - 1e-9);
        }
    }

    #[test]
    fn dual_norm_of_zero() {
        let g = IndexedFun::unweighted(real(&[0.0, 0.0]));
        let (n, f) = dual_norm(&g, Exponent::Finite(2.0)).unwrap();
        assert_eq!(n, 0.0);
        assert_eq!(f.values, real(&[0.0, 0.0]));
    }

    #[test]
    fn projection_examples() {
        let e = |n: usize, k: usize| {
            let mut v = vec![Complex::zero(); n];
            v[k] = c(1.0, 0.0);
            v
        };
        let onb = VectorList::new(2, vec![e(2, 0)]).unwrap();
        let (p, r) = project(&real(&[1.0, 1.0]), &onb).unwrap();
        assert_eq!((p, r), (real(&[1.0, 0.0]), real(&[0.0, 1.0])));

        let onb = VectorList::new(3, vec![e(3, 1), e(3, 2)]).unwrap();
        let (p, r) = project(&real(&[5.0, 0.0, 0.0]), &onb).unwrap();
        assert_eq!(p, real(&[0.0, 0.0, 0.0]));
        assert_eq!(r, real(&[5.0, 0.0, 0.0]));

        let s = 0.5f64.sqrt();
        let onb = VectorList::new(3, vec![real(&[s, s, 0.0])]).unwrap();
        let (p, _) = project(&real(&[1.0, 2.0, 3.0]), &onb).unwrap();
        for (a, b) in p.iter().zip(real(&[1.5, 1.5, 0.0])) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn projection_rejects_non_orthonormal() {
        let onb = VectorList::new(2, vec![real(&[1.0, 0.0]), real(&[1.0, 1.0])]).unwrap();
        assert!(matches!(project(&real(&[1.0, 1.0]), &onb), Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn gram_schmidt_examples() {
        let out = gram_schmidt(&VectorList::new(2, vec![real(&[1.0, 0.0]), real(&[1.0, 1.0])]).unwrap(), GRAM_SCHMIDT_TOL);
        assert_eq!(out.vectors, vec![real(&[1.0, 0.0]), real(&[0.0, 1.0])]);

        let out = gram_schmidt(&VectorList::new(2, vec![real(&[2.0, 0.0]), real(&[4.0, 0.0])]).unwrap(), GRAM_SCHMIDT_TOL);
        assert_eq!(out.vectors, vec![real(&[1.0, 0.0])]);

        let out = gram_schmidt(&VectorList::new(2, vec![real(&[1.0, 1.0]), real(&[1.0, 0.0])]).unwrap(), GRAM_SCHMIDT_TOL);
        let s = 0.5f64.sqrt();
        let want = [real(&[s, s]), real(&[s, -s])];
        assert_eq!(out.len(), 2);
        for (a, b) in out.vectors.iter().zip(&want) {
            assert!(a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-12));
        }
    }

    #[test]
    fn double_sum_examples() {
        let xs = [1i64, 2];
        let ys = [1i64, 3];
        let table: Vec<Vec<i64>> = xs.iter().map(|x| ys.iter().map(|y| x * y).collect()).collect();
        let s = double_sum(&table).unwrap();
        assert_eq!(s.total, 12);
        assert_eq!(s.row_sums, vec![4, 8]);
        assert_eq!(s.col_sums, vec![3, 9]);

        let zero = double_sum(&vec![vec![0.0f64; 3]; 2]).unwrap();
        assert_eq!(zero.total, 0.0);
        assert!(zero.row_sums.iter().chain(&zero.col_sums).all(|&v| v == 0.0));

        assert!(double_sum(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn double_sum_orders_agree_on_sign_tables() {
        // exhaustive over a deterministic family of ±1 tables
        for seed in 0u64..64 {
            let table: Vec<Vec<Rational>> = (0..8)
                .map(|i| {
                    (0..8)
                        .map(|j| {
                            let bit = (seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> ((i * 8 + j) % 64)) & 1;
                            ratio(if bit == 1 { 1 } else { -1 }, 1)
                        })
                        .collect()
                })
                .collect();
            let s = double_sum(&table).unwrap();
            let by_cols = s.col_sums.iter().cloned().fold(Rational::zero(), |a, b| a + b);
            assert_eq!(s.total, by_cols);
        }
    }

    mod props {
        use super::*;
        use proptest::collection::vec;
        use proptest::prelude::*;

        fn cvec(n: usize) -> impl Strategy<Value = Vec<Complex>> {
            vec((-5.0..5.0f64, -5.0..5.0f64).prop_map(|(a, b)| c(a, b)), n)
        }

        fn onb(dim: usize, k: usize) -> impl Strategy<Value = VectorList> {
            vec(cvec(dim), k).prop_filter_map("rank deficient", move |vs| {
                let out = gram_schmidt(&VectorList::new(dim, vs).unwrap(), 1e-3);
                (out.len() == k).then_some(out)
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn cauchy_schwarz(f in cvec(7), g in cvec(7)) {
                let f = IndexedFun::unweighted(f);
                let g = IndexedFun::unweighted(g);
                let lhs = inner_product(&f, &g).unwrap().norm();
                let rhs = lp_norm(&f, Exponent::Finite(2.0)) * lp_norm(&g, Exponent::Finite(2.0));
                prop_assert!(lhs <= rhs + 1e-12 * rhs.max(1.0));
                let sym = inner_product(&g, &f).unwrap().conj();
                prop_assert!((sym - inner_product(&f, &g).unwrap()).norm() < 1e-12);
            }

            #[test]
            fn parallelogram(x in cvec(5), y in cvec(5)) {
                let half = |a: &[Complex], b: &[Complex], s: f64| -> Vec<Complex> {
                    a.iter().zip(b).map(|(u, v)| (u + v * s) / 2.0).collect()
                };
                let lhs = norm2(&half(&x, &y, 1.0)).powi(2) + norm2(&half(&x, &y, -1.0)).powi(2);
                let rhs = norm2(&x).powi(2) / 2.0 + norm2(&y).powi(2) / 2.0;
                prop_assert!((lhs - rhs).abs() < 1e-10 * rhs.max(1.0));
            }

            #[test]
            fn holder(f in cvec(6), g in cvec(6), which in 0usize..5) {
                let ps = [Exponent::Finite(1.0), Exponent::Finite(1.5), Exponent::Finite(2.0), Exponent::Finite(3.0), Exponent::Infinity];
                let p = ps[which];
                let f = IndexedFun::unweighted(f);
                let g = IndexedFun::unweighted(g);
                let lhs = pairing(&f, &g).unwrap().norm();
                let rhs = lp_norm(&f, p) * lp_norm(&g, p.conjugate().unwrap());
                prop_assert!(lhs <= rhs + 1e-10 * rhs.max(1.0));
            }

            #[test]
            fn lp_monotone_in_p(f in cvec(6), p in 0.3..4.0f64, dq in 0.01..4.0f64) {
                let f = IndexedFun::unweighted(f);
                let small = lp_norm(&f, Exponent::Finite(p + dq));
                let big = lp_norm(&f, Exponent::Finite(p));
                prop_assert!(small <= big * (1.0 + 1e-12));
                prop_assert!(lp_norm(&f, Exponent::Infinity) <= small * (1.0 + 1e-12));
            }

            #[test]
            fn sub_one_quasi_triangle(f in cvec(6), g in cvec(6), p in 0.1..1.0f64) {
                let sum = IndexedFun::unweighted(f.iter().zip(&g).map(|(a, b)| a + b).collect());
                let f = IndexedFun::unweighted(f);
                let g = IndexedFun::unweighted(g);
                let e = Exponent::Finite(p);
                let lhs = lp_norm(&sum, e).powf(p);
                let rhs = lp_norm(&f, e).powf(p) + lp_norm(&g, e).powf(p);
                prop_assert!(lhs <= rhs + 1e-10 * rhs.max(1.0));
            }

            #[test]
            fn bessel_and_pythagoras(v in cvec(6), basis in onb(6, 3)) {
                let bessel: f64 = basis.vectors.iter().map(|e| dot(&v, e).norm_sqr()).sum();
                let vv = norm2(&v).powi(2);
                prop_assert!(bessel <= vv + 1e-10 * vv.max(1.0));
                let (p, r) = project(&v, &basis).unwrap();
                for e in &basis.vectors {
                    prop_assert!(dot(&r, e).norm() < 1e-8);
                }
                let split = norm2(&p).powi(2) + norm2(&r).powi(2);
                prop_assert!((split - vv).abs() < 1e-8 * vv.max(1.0));
                for ((a, b), x) in p.iter().zip(&r).zip(&v) {
                    prop_assert!((a + b - x).norm() <= 4.0 * f64::EPSILON * (a.norm() + x.norm()));
                }
            }

            #[test]
            fn gram_schmidt_is_orthonormal_and_spans(vs in vec(cvec(5), 1..8)) {
                let input = VectorList::new(5, vs).unwrap();
                let out = gram_schmidt(&input, GRAM_SCHMIDT_TOL);
                prop_assert!(out.orthonormality_defect() < 1e-10);
                for v in &input.vectors {
                    let (_, r) = project(v, &out).unwrap();
                    prop_assert!(norm2(&r) < 1e-8 * norm2(v).max(1.0));
                }
            }
        }
    }
}
