//! Fourier series on the unit circle `T`.
//!
//! Functions are either trigonometric polynomials ([`TrigPoly`]) or uniform
//! samples ([`SampledCircleFun`]) at `z_k = exp(2πik/M)`. Integrals over `T`
//! with respect to `|dz|/2π` are computed with the uniform `M`-point rule,
//! which is exact on frequencies `|k| < M`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::io::Write;

use num_traits::Zero;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{root_of_unity, Complex};

/// Largest supported degree.
pub const MAX_DEGREE: usize = 4096;

/// How far `|z|` may stray from 1 for a point to count as on the circle.
pub const ON_CIRCLE_TOL: f64 = 1e-9;

/// `f(z) = Σ_{n=−N}^{N} a_n z^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    degree: usize,
    coeffs: Vec<Complex>,
}

impl TrigPoly {
    /// Coefficients for `n = −N..=N`, in that order.
    pub fn new(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::InvalidArgument("need 2N + 1 coefficients".into()));
        }
        let degree = coeffs.len() / 2;
        if degree > MAX_DEGREE {
            return Err(Error::InvalidArgument(format!("degree {degree} exceeds {MAX_DEGREE}")));
        }
        Ok(TrigPoly { degree, coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        TrigPoly { degree, coeffs: vec![Complex::zero(); 2 * degree + 1] }
    }

    /// Single frequency `n` with coefficient 1.
    pub fn monomial(n: i64) -> Self {
        let mut p = Self::zero(n.unsigned_abs() as usize);
        p.set(n, Complex::new(1.0, 0.0));
        p
    }

    /// From a sparse `n ↦ a_n` list; the degree is the largest `|n|`.
    pub fn from_sparse(terms: &[(i64, Complex)]) -> Result<Self> {
        let degree = terms.iter().map(|(n, _)| n.unsigned_abs() as usize).max().unwrap_or(0);
        if degree > MAX_DEGREE {
            return Err(Error::InvalidArgument(format!("degree {degree} exceeds {MAX_DEGREE}")));
        }
        let mut p = Self::zero(degree);
        for &(n, a) in terms {
            p.coeffs[(n + degree as i64) as usize] += a;
        }
        Ok(p)
    }

    pub fn random<R: rand::Rng + ?Sized>(degree: usize, rng: &mut R) -> Self {
        let coeffs = (0..2 * degree + 1)
            .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        TrigPoly { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `a_n`, zero outside `[−N, N]`.
    pub fn coeff(&self, n: i64) -> Complex {
        if n.unsigned_abs() as usize > self.degree {
            Complex::zero()
        } else {
            self.coeffs[(n + self.degree as i64) as usize]
        }
    }

    fn set(&mut self, n: i64, a: Complex) {
        self.coeffs[(n + self.degree as i64) as usize] = a;
    }

    /// `(n, a_n)` for every `n` in `[−N, N]`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex)> + '_ {
        let d = self.degree as i64;
        self.coeffs.iter().enumerate().map(move |(i, a)| (i as i64 - d, *a))
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.terms().map(|(n, a)| a * z.powi(n as i32)).sum()
    }

    /// `Σ |a_n|`, the Wiener-algebra norm.
    pub fn l1_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm()).sum()
    }

    /// Values at the `M` roots of unity.
    pub fn sample(&self, samples: usize) -> SampledCircleFun {
        let values = (0..samples).map(|k| self.eval(circle_point(k, samples))).collect();
        SampledCircleFun { values, bandwidth: Some(self.degree) }
    }

    /// Abel mean `f_r(z) = Σ a_n r^{|n|} z^n` as a polynomial.
    pub fn abel_mean(&self, r: f64) -> Result<TrigPoly> {
        check_radius(r)?;
        let coeffs = self.terms().map(|(n, a)| a * r.powi(n.unsigned_abs() as i32)).collect();
        Ok(TrigPoly { degree: self.degree, coeffs })
    }
}

impl Serialize for TrigPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a TrigPoly);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let nonzero: Vec<(i64, Complex)> = self.0.terms().filter(|(_, a)| !a.is_zero()).collect();
                let mut m = s.serialize_map(Some(nonzero.len()))?;
                for (n, a) in nonzero {
                    m.serialize_entry(&n.to_string(), &a)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("N", &self.degree)?;
        m.serialize_entry("coeffs", &Coeffs(self))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for TrigPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            #[serde(rename = "N")]
            degree: usize,
            coeffs: BTreeMap<String, Complex>,
        }
        let w = Wire::deserialize(d)?;
        if w.degree > MAX_DEGREE {
            return Err(D::Error::custom(format!("degree {} exceeds {MAX_DEGREE}", w.degree)));
        }
        let mut p = TrigPoly::zero(w.degree);
        for (k, a) in w.coeffs {
            let n: i64 = k.trim().parse().map_err(|_| D::Error::custom(format!("bad frequency {k:?}")))?;
            if n.unsigned_abs() as usize > w.degree {
                return Err(D::Error::custom(format!("frequency {n} exceeds N = {}", w.degree)));
            }
            p.set(n, a);
        }
        Ok(p)
    }
}

/// Samples `f(exp(2πik/M))`, `k = 0..M`, with an optional known bandwidth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledCircleFun {
    pub values: Vec<Complex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bandwidth: Option<usize>,
}

impl SampledCircleFun {
    pub fn new(values: Vec<Complex>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("need at least one sample".into()));
        }
        Ok(SampledCircleFun { values, bandwidth: None })
    }

    pub fn from_fn<F: Fn(Complex) -> Complex>(samples: usize, f: F) -> Result<Self> {
        Self::new((0..samples).map(|k| f(circle_point(k, samples))).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> Complex {
        self.values.iter().sum::<Complex>() / self.values.len() as f64
    }
}

/// `exp(2πik/M)`.
pub fn circle_point(k: usize, samples: usize) -> Complex {
    root_of_unity(k as i64, samples as u64)
}

fn check_radius(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("radius must lie in [0, 1), got {r}")))
    }
}

fn check_on_circle(z: Complex) -> Result<()> {
    if (z.norm() - 1.0).abs() <= ON_CIRCLE_TOL {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("|z| = {} is not 1", z.norm())))
    }
}

/// `f̂(n) = (1/2π) ∫_T f(z) z̄ⁿ |dz|`.
pub trait FourierCoefficients {
    fn fourier_coeff(&self, n: i64) -> Result<Complex>;
}

impl FourierCoefficients for TrigPoly {
    /// Exact: the coefficient itself.
    fn fourier_coeff(&self, n: i64) -> Result<Complex> {
        Ok(self.coeff(n))
    }
}

impl FourierCoefficients for SampledCircleFun {
    /// Uniform `M`-point average of `f(z_k) z̄_k^n`.
    fn fourier_coeff(&self, n: i64) -> Result<Complex> {
        let m = self.values.len();
        let need = n.unsigned_abs() as usize;
        let need = self.bandwidth.map_or(need, |b| need.max(b));
        if m <= 2 * need {
            return Err(Error::Aliasing { frequency: need, samples: m });
        }
        let s: Complex = self
            .values
            .iter()
            .enumerate()
            .map(|(k, v)| v * root_of_unity(-(n.rem_euclid(m as i64)) * k as i64 % m as i64, m as u64))
            .sum();
        Ok(s / m as f64)
    }
}

pub fn fourier_coeff<F: FourierCoefficients + ?Sized>(f: &F, n: i64) -> Result<Complex> {
    f.fourier_coeff(n)
}

/// `A(r) = Σ_n a_n r^{|n|} zⁿ`, summed term by term.
pub fn abel_sum(a: &TrigPoly, r: f64, z: Complex) -> Result<Complex> {
    check_radius(r)?;
    check_on_circle(z)?;
    Ok(a.terms().map(|(n, an)| an * r.powi(n.unsigned_abs() as i32) * z.powi(n as i32)).sum())
}

/// `P_r(z, w) = (1 − r²) / |1 − r z w̄|²`, for `0 ≤ r < 1` and `z, w ∈ T`.
pub fn poisson_kernel(r: f64, z: Complex, w: Complex) -> f64 {
    (1.0 - r * r) / (Complex::new(1.0, 0.0) - r * z * w.conj()).norm_sqr()
}

/// `(1/2π) ∫_T P_r(z, w) f(w) |dw|` by the uniform rule over the samples of `f`.
pub fn poisson_extension(f: &SampledCircleFun, r: f64, z: Complex) -> Result<Complex> {
    poisson_extension_with(f, r, z, poisson_kernel)
}

/// [`poisson_extension`] with a caller-supplied kernel.
pub fn poisson_extension_with<K>(f: &SampledCircleFun, r: f64, z: Complex, kernel: K) -> Result<Complex>
where
    K: Fn(f64, Complex, Complex) -> f64,
{
    check_radius(r)?;
    check_on_circle(z)?;
    let m = f.values.len();
    if m == 0 {
        return Err(Error::InvalidArgument("no samples".into()));
    }
    let s: Complex = f
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| v * kernel(r, z, circle_point(k, m)))
        .sum();
    Ok(s / m as f64)
}

/// Cauchy product `c_n = Σ_j a_j b_{n−j}`.
pub fn convolve_sequences(a: &TrigPoly, b: &TrigPoly) -> TrigPoly {
    let degree = a.degree + b.degree;
    let mut c = TrigPoly::zero(degree);
    for (j, aj) in a.terms().filter(|(_, v)| !v.is_zero()) {
        for (k, bk) in b.terms() {
            c.coeffs[(j + k + degree as i64) as usize] += aj * bk;
        }
    }
    c
}

/// `|Σ |a_n|² − (1/M) Σ_k |f(z_k)|²|`.
pub fn parseval_gap(f: &TrigPoly, samples: usize) -> Result<f64> {
    if samples <= 2 * f.degree() {
        return Err(Error::Aliasing { frequency: f.degree(), samples });
    }
    let coeff_energy: f64 = f.coeffs.iter().map(|a| a.norm_sqr()).sum();
    let sampled = f.sample(samples);
    let mean_sq = sampled.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / samples as f64;
    Ok((coeff_energy - mean_sq).abs())
}

/// Writes `r, theta_z, theta_w, P` rows for every `r` and every pair of
/// grid angles `2πk/M`.
pub fn write_kernel_csv<W: Write>(out: W, radii: &[f64], samples: usize) -> Result<()> {
    for &r in radii {
        check_radius(r)?;
    }
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(["r", "theta_z", "theta_w", "P"]).map_err(io)?;
    for &r in radii {
        for i in 0..samples {
            for j in 0..samples {
                let (tz, tw) = (TAU * i as f64 / samples as f64, TAU * j as f64 / samples as f64);
                let p = poisson_kernel(r, circle_point(i, samples), circle_point(j, samples));
                w.write_record([r.to_string(), tz.to_string(), tw.to_string(), p.to_string()]).map_err(io)?;
            }
        }
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(())
}
