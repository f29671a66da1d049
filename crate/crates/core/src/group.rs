//! Harmonic analysis on finite abelian groups `Z/n_1 × … × Z/n_m`.
//!
//! Elements and characters are both exponent tuples, stored by their
//! lexicographic index (last coordinate fastest). The character with exponent
//! `b` is `φ_b(x) = Π_k exp(2πi x_k b_k / n_k)`; its value is carried as an
//! exact angle `k / lcm(n)` and converted to `f64` only at the end.
//!
//! The transform follows `f̂(φ) = Σ_x f(x)·conj(φ(x))·w`, with `w = 1` for
//! counting Haar measure and `w = 1/|A|` for the normalised one. Inversion
//! uses the dual weight, so `idft ∘ dft` is the identity for both flags.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{rational_to_f64, root_of_unity, Complex, Rational};

/// Upper bound on `|A|` for the exhaustive duality checks.
pub const EXHAUSTIVE_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    moduli: Vec<u64>,
    order: usize,
    exponent: u64,
}

impl FiniteAbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.iter().any(|&n| n == 0) {
            return Err(Error::InvalidArgument("cyclic factors need n >= 1".into()));
        }
        let order = moduli
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(usize::try_from(n).ok()?))
            .ok_or_else(|| Error::InvalidArgument("group order overflows".into()))?;
        let exponent = moduli.iter().fold(1u64, |acc, &n| acc.lcm(&n));
        Ok(FiniteAbelianGroup { moduli, order, exponent })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new()).expect("empty product is the trivial group")
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Least common multiple of the moduli; every character value is an
    /// `exponent`-th root of unity.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn element(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.moduli.len()];
        for (slot, &n) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = (index % n as usize) as u64;
            index /= n as usize;
        }
        out
    }

    /// Index of an exponent tuple; coordinates are reduced modulo `n_k`.
    pub fn index_of(&self, x: &[u64]) -> Result<usize> {
        if x.len() != self.moduli.len() {
            return Err(Error::LengthMismatch { expected: self.moduli.len(), got: x.len() });
        }
        Ok(x.iter().zip(&self.moduli).fold(0usize, |acc, (&xi, &n)| acc * n as usize + (xi % n) as usize))
    }

    pub fn index_of_signed(&self, x: &[i64]) -> Result<usize> {
        let reduced: Vec<u64> = x
            .iter()
            .zip(&self.moduli)
            .map(|(&xi, &n)| xi.rem_euclid(n as i64) as u64)
            .collect();
        self.index_of(&reduced)
    }

    fn combine(&self, i: usize, j: usize, sign: i64) -> usize {
        let (mut i, mut j) = (i, j);
        let mut out = 0usize;
        let mut stride = 1usize;
        for &n in self.moduli.iter().rev() {
            let n = n as usize;
            let (a, b) = (i % n, j % n);
            let c = if sign > 0 { (a + b) % n } else { (a + n - b) % n };
            out += c * stride;
            stride *= n;
            i /= n;
            j /= n;
        }
        out
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        self.combine(i, j, 1)
    }

    pub fn sub(&self, i: usize, j: usize) -> usize {
        self.combine(i, j, -1)
    }

    pub fn neg(&self, i: usize) -> usize {
        self.combine(0, i, -1)
    }

    /// `φ_b(x) = exp(2πi k / exponent)`; returns `k`.
    pub fn pairing_numerator(&self, b: usize, x: usize) -> u64 {
        let (mut b, mut x) = (b, x);
        let e = u128::from(self.exponent);
        let mut k: u128 = 0;
        for &n in self.moduli.iter().rev() {
            let nu = n as usize;
            let (bk, xk) = ((b % nu) as u128, (x % nu) as u128);
            k = (k + bk * xk % u128::from(n) * (e / u128::from(n))) % e;
            b /= nu;
            x /= nu;
        }
        k as u64
    }

    /// Exact angle of `φ_b(x)` in turns, in `[0, 1)`.
    pub fn pairing_angle(&self, b: usize, x: usize) -> Rational {
        Rational::new(self.pairing_numerator(b, x).into(), self.exponent.into())
    }

    fn unit_roots(&self) -> Vec<Complex> {
        (0..self.exponent as i64).map(|k| root_of_unity(k, self.exponent)).collect()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "{{0}}");
        }
        let parts: Vec<String> = self.moduli.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Character `φ_b` of a finite abelian group, identified by its exponent tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupChar {
    pub exponents: Vec<u64>,
}

impl GroupChar {
    pub fn new(group: &FiniteAbelianGroup, exponents: Vec<u64>) -> Result<Self> {
        let index = group.index_of(&exponents)?;
        Ok(Self::from_index(group, index))
    }

    pub fn from_index(group: &FiniteAbelianGroup, index: usize) -> Self {
        GroupChar { exponents: group.element(index) }
    }

    pub fn index(&self, group: &FiniteAbelianGroup) -> usize {
        group.index_of(&self.exponents).expect("character shape matches its group")
    }
}

pub fn char_eval(group: &FiniteAbelianGroup, chi: &GroupChar, x: &[u64]) -> Result<Complex> {
    let b = group.index_of(&chi.exponents)?;
    let x = group.index_of(x)?;
    Ok(root_of_unity(group.pairing_numerator(b, x) as i64, group.exponent()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Haar {
    #[default]
    Counting,
    Normalized,
}

impl Haar {
    /// Mass of one point.
    pub fn weight(self, order: usize) -> f64 {
        match self {
            Haar::Counting => 1.0,
            Haar::Normalized => 1.0 / order as f64,
        }
    }

    /// Point mass of the dual measure on the character group.
    pub fn dual_weight(self, order: usize) -> f64 {
        match self {
            Haar::Counting => 1.0 / order as f64,
            Haar::Normalized => 1.0,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TableWire {
    moduli: Vec<u64>,
    #[serde(default)]
    haar: Haar,
    values: Vec<Complex>,
}

/// Complex function on a finite abelian group together with its Haar
/// normalisation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableWire", into = "TableWire")]
pub struct GroupFun {
    pub group: FiniteAbelianGroup,
    pub haar: Haar,
    pub values: Vec<Complex>,
}

/// Transform of a [`GroupFun`]: one value per character, in the same
/// lexicographic order. `haar` records the normalisation of the function
/// that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableWire", into = "TableWire")]
pub struct CharTable {
    pub group: FiniteAbelianGroup,
    pub haar: Haar,
    pub values: Vec<Complex>,
}

macro_rules! table_wire {
    ($t:ty) => {
        impl TryFrom<TableWire> for $t {
            type Error = Error;

            fn try_from(w: TableWire) -> Result<Self> {
                let group = FiniteAbelianGroup::new(w.moduli)?;
                if w.values.len() != group.order() {
                    return Err(Error::LengthMismatch { expected: group.order(), got: w.values.len() });
                }
                Ok(Self { group, haar: w.haar, values: w.values })
            }
        }

        impl From<$t> for TableWire {
            fn from(t: $t) -> Self {
                TableWire { moduli: t.group.moduli, haar: t.haar, values: t.values }
            }
        }
    };
}

table_wire!(GroupFun);
table_wire!(CharTable);

impl GroupFun {
    pub fn new(group: FiniteAbelianGroup, haar: Haar, values: Vec<Complex>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::LengthMismatch { expected: group.order(), got: values.len() });
        }
        Ok(GroupFun { group, haar, values })
    }

    pub fn zeros(group: &FiniteAbelianGroup, haar: Haar) -> Self {
        GroupFun { group: group.clone(), haar, values: vec![Complex::zero(); group.order()] }
    }

    pub fn delta(group: &FiniteAbelianGroup, haar: Haar, at: usize) -> Self {
        let mut f = Self::zeros(group, haar);
        f.values[at] = Complex::new(1.0, 0.0);
        f
    }

    /// The character `φ_b` viewed as a function.
    pub fn character(group: &FiniteAbelianGroup, haar: Haar, b: usize) -> Self {
        let roots = group.unit_roots();
        let values = (0..group.order()).map(|x| roots[group.pairing_numerator(b, x) as usize]).collect();
        GroupFun { group: group.clone(), haar, values }
    }

    /// Independent uniform real and imaginary parts in `[-1, 1)`.
    pub fn random<R: Rng + ?Sized>(group: &FiniteAbelianGroup, haar: Haar, rng: &mut R) -> Self {
        let values = (0..group.order())
            .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        GroupFun { group: group.clone(), haar, values }
    }

    pub fn at(&self, x: &[u64]) -> Result<Complex> {
        Ok(self.values[self.group.index_of(x)?])
    }

    fn weight(&self) -> f64 {
        self.haar.weight(self.group.order())
    }

    /// `∫ |f| dH`.
    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum::<f64>() * self.weight()
    }

    /// `(∫ |f|² dH)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.weight()).sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `∫ f conj(g) dH`.
    pub fn inner(&self, other: &GroupFun) -> Result<Complex> {
        check_compatible(self, other)?;
        let s: Complex = self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum();
        Ok(s * self.weight())
    }

    pub fn max_abs_diff(&self, other: &GroupFun) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex) -> GroupFun {
        GroupFun { values: self.values.iter().map(|v| v * s).collect(), ..self.clone() }
    }

    pub fn to_indexed_fun(&self) -> crate::hilbert::IndexedFun {
        let w = match self.haar {
            Haar::Counting => Rational::from_integer(1.into()),
            Haar::Normalized => Rational::new(1.into(), self.group.order().into()),
        };
        let labels = (0..self.group.order())
            .map(|i| {
                let e: Vec<String> = self.group.element(i).iter().map(u64::to_string).collect();
                format!("({})", e.join(","))
            })
            .collect();
        crate::hilbert::IndexedFun {
            labels,
            values: self.values.clone(),
            weights: vec![w; self.group.order()],
        }
    }
}

impl CharTable {
    pub fn max_abs_diff(&self, other: &CharTable) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn at(&self, chi: &GroupChar) -> Result<Complex> {
        Ok(self.values[self.group.index_of(&chi.exponents)?])
    }
}

fn check_compatible(f: &GroupFun, g: &GroupFun) -> Result<()> {
    if f.group != g.group {
        return Err(Error::GroupMismatch(f.group.moduli.clone(), g.group.moduli.clone()));
    }
    if f.haar != g.haar {
        return Err(Error::InvalidArgument("Haar normalisations differ".into()));
    }
    Ok(())
}

fn transform_sum(group: &FiniteAbelianGroup, values: &[Complex], sign: i64, weight: f64) -> Vec<Complex> {
    let roots = group.unit_roots();
    let e = group.exponent() as usize;
    (0..group.order())
        .into_par_iter()
        .map(|b| {
            let s: Complex = values
                .iter()
                .enumerate()
                .map(|(x, v)| {
                    let k = group.pairing_numerator(b, x) as usize;
                    let k = if sign < 0 { (e - k) % e } else { k };
                    v * roots[k]
                })
                .sum();
            s * weight
        })
        .collect()
}

/// Direct `O(|A|²)` transform.
pub fn dft(f: &GroupFun) -> CharTable {
    let w = f.haar.weight(f.group.order());
    CharTable { group: f.group.clone(), haar: f.haar, values: transform_sum(&f.group, &f.values, -1, w) }
}

/// Row–column transform: one FFT along each cyclic factor.
pub fn dft_fast(f: &GroupFun) -> CharTable {
    let w = f.haar.weight(f.group.order());
    let mut values = f.values.clone();
    axis_fft(&f.group, &mut values, rustfft::FftDirection::Forward);
    values.iter_mut().for_each(|v| *v *= w);
    CharTable { group: f.group.clone(), haar: f.haar, values }
}

fn axis_fft(group: &FiniteAbelianGroup, values: &mut [Complex], direction: rustfft::FftDirection) {
    let mut planner = FftPlanner::<f64>::new();
    let mut inner = 1usize;
    for &n in group.moduli().iter().rev() {
        let n = n as usize;
        if n > 1 {
            let fft = planner.plan_fft(n, direction);
            let outer = values.len() / (n * inner);
            let mut line = vec![Complex::zero(); n];
            for o in 0..outer {
                for i in 0..inner {
                    let base = o * n * inner + i;
                    for (k, slot) in line.iter_mut().enumerate() {
                        *slot = values[base + k * inner];
                    }
                    fft.process(&mut line);
                    for (k, v) in line.iter().enumerate() {
                        values[base + k * inner] = *v;
                    }
                }
            }
        }
        inner *= n;
    }
}

/// Inverse transform with the dual normalisation of `t.haar`.
pub fn idft(t: &CharTable) -> GroupFun {
    let w = t.haar.dual_weight(t.group.order());
    GroupFun { group: t.group.clone(), haar: t.haar, values: transform_sum(&t.group, &t.values, 1, w) }
}

pub fn idft_fast(t: &CharTable) -> GroupFun {
    let w = t.haar.dual_weight(t.group.order());
    let mut values = t.values.clone();
    axis_fft(&t.group, &mut values, rustfft::FftDirection::Inverse);
    values.iter_mut().for_each(|v| *v *= w);
    GroupFun { group: t.group.clone(), haar: t.haar, values }
}

/// `(f * g)(x) = ∫ f(x − y) g(y) dH(y)`.
pub fn convolve(f: &GroupFun, g: &GroupFun) -> Result<GroupFun> {
    check_compatible(f, g)?;
    let group = &f.group;
    let w = f.weight();
    let values = (0..group.order())
        .map(|x| {
            let s: Complex = g
                .values
                .iter()
                .enumerate()
                .filter(|(_, gy)| !gy.is_zero())
                .map(|(y, gy)| f.values[group.sub(x, y)] * gy)
                .sum();
            s * w
        })
        .collect();
    Ok(GroupFun { group: group.clone(), haar: f.haar, values })
}

/// `(T_a f)(x) = f(x + a)`.
pub fn translate(f: &GroupFun, a: &[u64]) -> Result<GroupFun> {
    let a = f.group.index_of(a)?;
    let values = (0..f.group.order()).map(|x| f.values[f.group.add(x, a)]).collect();
    Ok(GroupFun { values, ..f.clone() })
}

/// `f*(x) = conj(f(−x))`.
pub fn involution(f: &GroupFun) -> GroupFun {
    let values = (0..f.group.order()).map(|x| f.values[f.group.neg(x)].conj()).collect();
    GroupFun { values, ..f.clone() }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenpair {
    pub eigenvalue: Complex,
    pub character: GroupChar,
    /// `‖θ*φ − λφ‖_∞` measured for this character.
    pub residual: f64,
}

/// Residual accepted by [`conv_operator_spectrum`].
pub const EIGEN_TOL: f64 = 1e-9;

/// Diagonalises `f ↦ θ * f` (counting measure) by characters: each `φ` is an
/// eigenvector with eigenvalue `θ̂(φ)`. Pairs are listed in character order.
pub fn conv_operator_spectrum(theta: &GroupFun) -> Result<Vec<Eigenpair>> {
    if theta.haar != Haar::Counting {
        return Err(Error::InvalidArgument("convolution operators use counting measure".into()));
    }
    let group = &theta.group;
    let hat = dft(theta);
    let mut out = Vec::with_capacity(group.order());
    for b in 0..group.order() {
        let phi = GroupFun::character(group, Haar::Counting, b);
        let image = convolve(theta, &phi)?;
        let lambda = hat.values[b];
        let residual = image.max_abs_diff(&phi.scale(lambda));
        if residual >= EIGEN_TOL * theta.l1_norm().max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "character {b} fails the eigenvector check (residual {residual:e})"
            )));
        }
        out.push(Eigenpair { eigenvalue: lambda, character: GroupChar::from_index(group, b), residual });
    }
    Ok(out)
}

/// Subgroup generated by `gens`, as sorted element indices.
pub fn subgroup_generated(group: &FiniteAbelianGroup, gens: &[Vec<u64>]) -> Result<Vec<usize>> {
    let gens: Vec<usize> = gens.iter().map(|g| group.index_of(g)).collect::<Result<_>>()?;
    let mut seen = BTreeSet::from([0usize]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &g in &gens {
            let y = group.add(x, g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Characters trivial on the subgroup generated by `gens`. Triviality is
/// decided exactly on the angle numerators.
pub fn annihilator(group: &FiniteAbelianGroup, gens: &[Vec<u64>]) -> Result<Vec<GroupChar>> {
    let gen_idx: Vec<usize> = gens.iter().map(|g| group.index_of(g)).collect::<Result<_>>()?;
    Ok((0..group.order())
        .filter(|&b| gen_idx.iter().all(|&h| group.pairing_numerator(b, h) == 0))
        .map(|b| GroupChar::from_index(group, b))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum DualityCheck {
    Pass,
    /// Two elements whose evaluation maps coincide, or an element whose
    /// evaluation map is not the expected character of the dual.
    Witness { a: Vec<u64>, b: Vec<u64> },
}

/// Checks that `a ↦ Ψ_a`, `Ψ_a(φ) = φ(a)`, identifies `A` with the characters
/// of `Â`: each `Ψ_a` must equal the dual character with exponent tuple `a`,
/// and distinct elements must give distinct maps. All comparisons are exact.
pub fn second_dual_check(group: &FiniteAbelianGroup) -> Result<DualityCheck> {
    let n = group.order();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::InvalidArgument(format!("|G| = {n} exceeds {EXHAUSTIVE_LIMIT}")));
    }
    let e = group.exponent();
    // unit characters of Â read off the exponent tuple of Ψ_a
    let units: Vec<usize> = (0..group.moduli().len())
        .map(|k| {
            let mut t = vec![0u64; group.moduli().len()];
            t[k] = 1;
            group.index_of(&t).expect("unit tuple")
        })
        .collect();
    let mut seen: HashSet<usize> = HashSet::with_capacity(n);
    let mut owner = vec![usize::MAX; n];
    for a in 0..n {
        // Ψ_a(φ_{e_k}) = exp(2πi c_k / n_k) recovers c
        let c: Vec<u64> = units
            .iter()
            .zip(group.moduli())
            .map(|(&u, &nk)| group.pairing_numerator(u, a) / (e / nk))
            .collect();
        let c_idx = group.index_of(&c)?;
        // Ψ_a(φ_b) = φ_b(a) against the dual character ψ_c(φ_b) = φ_c(b)
        let mismatch = (0..n).find(|&b| group.pairing_numerator(b, a) != group.pairing_numerator(c_idx, b));
        if let Some(b) = mismatch {
            return Ok(DualityCheck::Witness { a: group.element(a), b: group.element(b) });
        }
        if c_idx != a || !seen.insert(c_idx) {
            let other = if owner[c_idx] == usize::MAX { c_idx } else { owner[c_idx] };
            return Ok(DualityCheck::Witness { a: group.element(other), b: group.element(a) });
        }
        owner[c_idx] = a;
    }
    Ok(DualityCheck::Pass)
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrbitAngle {
    Rational(Rational),
    Real(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub dense: bool,
    /// Largest circular gap between consecutive orbit points.
    pub mesh: f64,
    /// The same gap as an exact fraction, for rational angles.
    pub exact_mesh: Option<String>,
    pub distinct_points: usize,
}

/// Whether `{j·angle mod 1 : 0 ≤ j < max_iter}` is ε-dense in `[0, 1)`,
/// meaning its largest circular gap is below `epsilon`.
pub fn orbit_density(angle: &OrbitAngle, epsilon: f64, max_iter: usize) -> Result<OrbitReport> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    if max_iter == 0 {
        return Err(Error::InvalidArgument("max_iter must be positive".into()));
    }
    match angle {
        OrbitAngle::Rational(q) => {
            let step = crate::scalar::frac(q);
            let den = step.denom().to_usize().unwrap_or(usize::MAX);
            let mesh = if max_iter >= den {
                Rational::new(1.into(), step.denom().clone())
            } else {
                let mut pts: Vec<Rational> =
                    (0..max_iter).map(|j| crate::scalar::frac(&(&step * Rational::from_integer(j.into())))).collect();
                pts.sort();
                pts.dedup();
                circular_max_gap(&pts, |a, b| b - a, Rational::from_integer(1.into()))
            };
            let m = rational_to_f64(&mesh);
            Ok(OrbitReport {
                dense: m < epsilon,
                mesh: m,
                exact_mesh: Some(crate::scalar::format_rational(&mesh)),
                distinct_points: den.min(max_iter),
            })
        }
        OrbitAngle::Real(t) => {
            if !t.is_finite() {
                return Err(Error::InvalidArgument("angle must be finite".into()));
            }
            let mut pts: Vec<f64> = (0..max_iter).map(|j| (j as f64 * t).rem_euclid(1.0)).collect();
            pts.sort_by(f64::total_cmp);
            pts.dedup();
            let mesh = circular_max_gap(&pts, |a, b| b - a, 1.0);
            Ok(OrbitReport { dense: mesh < epsilon, mesh, exact_mesh: None, distinct_points: pts.len() })
        }
    }
}

/// Largest gap between sorted points of `[0, 1)`, wrapping around once.
fn circular_max_gap<T, F>(sorted: &[T], gap: F, one: T) -> T
where
    T: Clone + PartialOrd + std::ops::Add<Output = T>,
    F: Fn(&T, &T) -> T,
{
    let first = sorted[0].clone();
    let last = sorted[sorted.len() - 1].clone();
    let mut best = gap(&last, &(first + one));
    for w in sorted.windows(2) {
        let g = gap(&w[0], &w[1]);
        if g > best {
            best = g;
        }
    }
    best
}

/// Complex measure with finite support on a finite abelian group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupMeasure {
    pub group: FiniteAbelianGroup,
    pub masses: Vec<Complex>,
}

impl GroupMeasure {
    pub fn new(group: FiniteAbelianGroup, masses: Vec<Complex>) -> Result<Self> {
        if masses.len() != group.order() {
            return Err(Error::LengthMismatch { expected: group.order(), got: masses.len() });
        }
        Ok(GroupMeasure { group, masses })
    }

    pub fn dirac(group: &FiniteAbelianGroup, at: usize) -> Self {
        let mut masses = vec![Complex::zero(); group.order()];
        masses[at] = Complex::new(1.0, 0.0);
        GroupMeasure { group: group.clone(), masses }
    }

    pub fn random<R: Rng + ?Sized>(group: &FiniteAbelianGroup, rng: &mut R) -> Self {
        let f = GroupFun::random(group, Haar::Counting, rng);
        GroupMeasure { group: f.group, masses: f.values }
    }

    /// Total variation `|μ|(A) = Σ |μ({x})|`.
    pub fn total_variation(&self) -> f64 {
        self.masses.iter().map(|m| m.norm()).sum()
    }

    pub fn convolve(&self, other: &GroupMeasure) -> Result<GroupMeasure> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(self.group.moduli.clone(), other.group.moduli.clone()));
        }
        let as_fun = |m: &GroupMeasure| GroupFun { group: m.group.clone(), haar: Haar::Counting, values: m.masses.clone() };
        let c = convolve(&as_fun(self), &as_fun(other))?;
        Ok(GroupMeasure { group: c.group, masses: c.values })
    }

    /// `μ̂(φ) = Σ_x conj(φ(x)) μ({x})`.
    pub fn transform(&self) -> CharTable {
        CharTable {
            group: self.group.clone(),
            haar: Haar::Counting,
            values: transform_sum(&self.group, &self.masses, -1, 1.0),
        }
    }
}
