//! The acceptance suite: eighteen end-to-end checks with fixed tolerances.
//!
//! Every criterion draws from its own ChaCha8 stream derived from the master
//! seed, so reports are reproducible and independent of execution order.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::banach::{cstar_gap, homs_l1, neumann_inverse, neumann_residual, spectral_radius_seq, spectrum_via_characters, L1AlgebraElement, OperatorMatrix};
use crate::circle::{abel_sum, circle_point, parseval_gap, poisson_extension, poisson_kernel, TrigPoly};
use crate::error::Result;
use crate::group::{convolve, dft, FiniteAbelianGroup, GroupFun, Haar};
use crate::hilbert::{dot, gram_schmidt, norm2, project, VectorList};
use crate::padic::{
    ball_indicator, geometric_inverse, haar_integral_exact, qp_fourier, radic_char_angle, translate_table, zp_fourier, zp_inverse, PAdicNumber,
    QpTable, RAdicInt, RadixTower,
};
use crate::scalar::{Complex, Rational};
use crate::solenoid::{sol_add, sol_char_angle, sol_char_eval, zr_embed, SolenoidChar, SolenoidPoint};
use crate::ultra::{quotient_metric, FiniteMetric};

pub const DEFAULT_SEED: u64 = 0;
pub const CRITERIA: usize = 18;

/// Outcome of one criterion. `measured` is compared against `threshold`;
/// exact criteria count violations against a threshold of 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
    pub detail: String,
}

impl Criterion {
    fn below(id: usize, measured: f64, threshold: f64, detail: String) -> Self {
        Criterion { id, name: NAMES[id - 1], measured, threshold, pass: measured < threshold, detail }
    }

    fn exact(id: usize, violations: usize, detail: String) -> Self {
        Criterion { id, name: NAMES[id - 1], measured: violations as f64, threshold: 0.0, pass: violations == 0, detail }
    }

    /// `PASS`/`FAIL` line as printed by the runners.
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<28} measured={:.3e} threshold={:.1e} {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.measured,
            self.threshold,
            self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub criteria: Vec<Criterion>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.criteria.iter().all(|c| c.pass)
    }
}

pub const NAMES: [&str; CRITERIA] = [
    "parseval_circle",
    "poisson_normalization",
    "abel_closed_form",
    "abel_kernel_agreement",
    "convolution_theorem",
    "character_orthogonality",
    "spectral_radius",
    "neumann_inversion",
    "homomorphism_completeness",
    "cstar_identity",
    "padic_laws",
    "unit_inversion",
    "zp_haar",
    "zp_fourier_inversion",
    "qp_self_duality",
    "solenoid",
    "quotient_metric",
    "projection_optimality",
];

fn stream(seed: u64, id: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64);
    rng
}

/// Runs one criterion by number (1-based).
pub fn run_criterion(id: usize, seed: u64) -> Result<Criterion> {
    let rng = &mut stream(seed, id);
    match id {
        1 => parseval_circle(rng),
        2 => poisson_normalization(poisson_kernel),
        3 => abel_closed_form(),
        4 => abel_kernel_agreement(rng),
        5 => convolution_theorem(rng),
        6 => character_orthogonality(),
        7 => spectral_radius(rng),
        8 => neumann_inversion(rng),
        9 => homomorphism_completeness(seed),
        10 => cstar_identity(rng),
        11 => padic_laws(rng),
        12 => unit_inversion(rng),
        13 => zp_haar(rng),
        14 => zp_fourier_inversion(rng),
        15 => qp_self_duality(rng),
        16 => solenoid(rng),
        17 => quotient(),
        18 => projection_optimality(rng),
        _ => Err(crate::Error::InvalidArgument(format!("no criterion {id}"))),
    }
}

/// Runs every criterion; results are in criterion order regardless of
/// scheduling.
pub fn run_all(seed: u64) -> Result<Report> {
    let criteria = (1..=CRITERIA).into_par_iter().map(|id| run_criterion(id, seed)).collect::<Result<Vec<_>>>()?;
    Ok(Report { seed, criteria })
}

/// 100 random polynomials of degree at most 16 sampled at 64 points, within
/// one second.
pub fn parseval_circle(rng: &mut ChaCha8Rng) -> Result<Criterion> {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let f = TrigPoly::random(rng.gen_range(0..=16), rng);
        worst = worst.max(parseval_gap(&f, 64)?);
    }
    let mut c = Criterion::below(1, worst, 1e-9, "100 polynomials, N <= 16, M = 64".into());
    if start.elapsed().as_secs_f64() >= 1.0 {
        c.pass = false;
        c.detail.push_str(", over the 1 s budget");
    }
    Ok(c)
}

/// Mean of `P_r(z, ·)` over 4096 grid points for several `z`, plus
/// positivity. The kernel is a parameter so a broken kernel can be fed in.
pub fn poisson_normalization<K>(kernel: K) -> Result<Criterion>
where
    K: Fn(f64, Complex, Complex) -> f64,
{
    const M: usize = 4096;
    let zs = [Complex::new(1.0, 0.0), circle_point(1, 7), Complex::from_polar(1.0, 2.0), Complex::new(0.0, -1.0)];
    let mut worst: f64 = 0.0;
    let mut negative = 0;
    for r in [0.0, 0.5, 0.9, 0.99] {
        for &z in &zs {
            let mut sum = 0.0;
            for k in 0..M {
                let p = kernel(r, z, circle_point(k, M));
                if p < 0.0 {
                    negative += 1;
                }
                sum += p;
            }
            worst = worst.max((sum / M as f64 - 1.0).abs());
        }
    }
    let mut c = Criterion::below(2, worst, 1e-6, format!("r in {{0, 0.5, 0.9, 0.99}}, {negative} negative samples"));
    c.pass &= negative == 0;
    Ok(c)
}

/// `a_j = i^j` for `j ≤ 200` at `r = 0.999` against `(1 − r i)^{−1}`.
pub fn abel_closed_form() -> Result<Criterion> {
    let r = 0.999;
    let i = Complex::new(0.0, 1.0);
    let terms: Vec<(i64, Complex)> = (0..=200).map(|j| (j, i.powi(j as i32))).collect();
    let a = TrigPoly::from_sparse(&terms)?;
    let got = abel_sum(&a, r, Complex::new(1.0, 0.0))?;
    let want = (Complex::new(1.0, 0.0) - r * i).inv();
    Ok(Criterion::below(3, (got - want).norm(), 1e-10, "N = 200, r = 0.999".into()))
}

/// Abel sums against Poisson integrals of the sampled function at 16 points
/// off the sample grid.
pub fn abel_kernel_agreement(rng: &mut ChaCha8Rng) -> Result<Criterion> {
    const M: usize = 256;
    let points: Vec<Complex> = (0..16).map(|k| Complex::from_polar(1.0, std::f64::consts::TAU * (k as f64 + 0.37) / 16.0)).collect();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let f = TrigPoly::random(rng.gen_range(0..=16), rng);
        let samples = f.sample(M);
        for r in [0.5, 0.9] {
            for &z in &points {
                worst = worst.max((abel_sum(&f, r, z)? - poisson_extension(&samples, r, z)?).norm());
            }
        }
    }
    Ok(Criterion::below(4, worst, 1e-8, format!("100 functions, N <= 16, M = {M}")))
}

pub fn convolution_theorem(rng: &mut ChaCha8Rng) -> Result<Criterion> {
    let g = FiniteAbelianGroup::new(vec![8, 5])?;
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let f = GroupFun::random(&g, Haar::Counting, rng);
        let h = GroupFun::random(&g, Haar::Counting, rng);
        let lhs = dft(&convolve(&f, &h)?);
        let (a, b) = (dft(&f), dft(&h));
        for k in 0..g.order() {
            worst = worst.max((lhs.values[k] - a.values[k] * b.values[k]).norm());
        }
    }
    Ok(Criterion::below(5, worst, 1e-9, "Z/8 x Z/5, 20 pairs".into()))
}

/// Worst `|Σ φ ψ̄ − |A| [φ = ψ]| / |A|` over all pairs.
pub fn character_orthogonality() -> Result<Criterion> {
    let mut worst: f64 = 0.0;
    for moduli in [vec![12], vec![2, 2, 3]] {
        let g = FiniteAbelianGroup::new(moduli)?;
        let n = g.order();
        let chars: Vec<GroupFun> = (0..n).map(|b| GroupFun::character(&g, Haar::Counting, b)).collect();
        for (b, phi) in chars.iter().enumerate() {
            for (c, psi) in chars.iter().enumerate() {
                let s: Complex = phi.values.iter().zip(&psi.values).map(|(x, y)| x * y.conj()).sum();
                let want = if b == c { n as f64 } else { 0.0 };
                worst = worst.max((s - want).norm() / n as f64);
            }
        }
    }
    Ok(Criterion::below(6, worst, 1e-9, "Z/12 and Z/2 x Z/2 x Z/3, relative to |A|".into()))
}

pub fn spectral_radius(rng: &mut ChaCha8Rng) -> Result<Criterion> {
    let g = FiniteAbelianGroup::cyclic(16)?;
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let x = L1AlgebraElement::random(&g, rng);
        let truth = spectrum_via_characters(&x).iter().map(|z| z.norm()).fold(0.0, f64::max);
        let est = spectral_radius_seq(&x, 64)?.estimate;
        worst = worst.max((est - truth).abs() / truth);
    }
    Ok(Criterion::below(7, worst, 0.05, "Z/16, 20 elements, k <= 64".into()))
}

pub fn neumann_inversion(rng: &mut ChaCha8Rng) -> Result<Criterion> {
    let g = FiniteAbelianGroup::cyclic(8)?;
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let a = L1AlgebraElement::random(&g, rng);
        let a = a.scale(Complex::new(0.9 / a.norm(), 0.0));
        let inv = neumann_inverse(&a, 5e-10)?;
        worst = worst.max(neumann_residual(&a, &inv.inverse)?);
    }
    Ok(Criterion::below(8, worst, 1e-9, "Z/8, ||a|| = 0.9, 20 elements".into()))
}

pub fn homomorphism_completeness(seed: u64) -> Result<Criterion> {
    let g = FiniteAbelianGroup::cyclic(6)?;
    let homs = homs_l1(&g, seed)?;
    let worst = homs.iter().map(|h| h.multiplicative_defect).fold(0.0, f64::max);
    let bound = homs.iter().map(|h| h.bound_excess).fold(f64::NEG_INFINITY, f64::max);
    let mut c = Criterion::below(9, worst, 1e-9, format!("{} functionals, max |phi(f)| - ||f|| = {bound:.2e}", homs.len()));
    c.pass &= homs.len() == 6 && bound <= 1e-12;
    Ok(c)
}

/// Worst `gap / ‖T‖²`.
pub fn cstar_identity(rng: &mut ChaCha8Rng) -> Result<Criterion> {
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let t = OperatorMatrix::random(8, rng);
        let n = t.op_norm();
        worst = worst.max(cstar_gap(&t)? / (n * n).max(f64::MIN_POSITIVE));
    }
    Ok(Criterion::below(10, worst, 1e-8, "50 random 8x8, relative to ||T||^2".into()))
}

/// Random element of `Z_3` with valuation spread over `0..=L`.
fn spread<R: Rng + ?Sized>(tower: &Arc<RadixTower>, rng: &mut R) -> RAdicInt {
    let v = rng.gen_range(0..=tower.levels());
    let u = RAdicInt::random(tower, rng);
    let shift = RAdicInt::from_int(tower, &BigInt::from(tower.partial(v).clone()));
    u.mul(&shift).expect("same tower")
}

pub fn padic_laws(rng: &mut ChaCha8Rng) -> Result<Criterion> {
    const L: usize = 20;
    let tower = Arc::new(RadixTower::constant(3, L)?);
    let decay = tower.default_decay();
    let mut violations = 0;
    for _ in 0..1000 {
        let (x, y) = (spread(&tower, rng), spread(&tower, rng));
        let (ax, ay) = (x.abs(&decay)?, y.abs(&decay)?);
        let s = x.add(&y)?.abs(&decay)?;
        if s > ax.clone().max(ay.clone()) {
            violations += 1;
        }
        if ax != ay && s != ax.clone().max(ay.clone()) {
            violations += 1;
        }
        // exact in Z_3 when the product keeps a nonzero digit below 3^L
        if !x.is_zero() && !y.is_zero() && x.valuation() + y.valuation() < L && x.mul(&y)?.abs(&decay)? != &ax * &ay {
            violations += 1;
        }
        let (px, py) = (PAdicNumber::from_radic(&x)?, PAdicNumber::from_radic(&y)?);
        if px.mul(&py)?.abs() != px.abs() * py.abs() {
            violations += 1;
        }
        let l = BigInt::from(rng.gen_range(-1_000_000i64..1_000_000));
        let unit = RAdicInt::from_int(&tower, &(BigInt::one() - BigInt::from(3) * &l));
        if !unit.mul(&geometric_inverse(&tower, &l)?)?.residue().is_one() {
            violations += 1;
        }
    }
    Ok(Criterion::exact(11, violations, "1000 pairs mod 3^20".into()))
}

pub fn unit_inversion(rng: &mut ChaCha8Rng) -> Result<Criterion> {
    let mut violations = 0;
    for p in [2u64, 3, 5] {
        let tower = Arc::new(RadixTower::constant(p, 20)?);
        let mut done = 0;
        while done < 500 {
            let x = RAdicInt::random(&tower, rng);
            if (x.residue() % p).is_zero() {
                continue;
            }
            if !x.mul(&x.invert_unit()?)?.residue().is_one() {
                violations += 1;
            }
            done += 1;
        }
    }
    Ok(Criterion::exact(12, violations, "500 units each for p = 2, 3, 5 at L = 20".into()))
}

pub fn zp_haar(rng: &mut ChaCha8Rng) -> Result<Criterion> {
    let mut violations = 0;
    for p in [2u64, 3] {
        for j in 0..=6 {
            let want = Rational::new(BigInt::one(), BigInt::from(p).pow(j as u32));
            let n = p.pow(j as u32);
            for a in 0..n {
                if haar_integral_exact(p, &ball_indicator(p, j, a)?, j)? != want {
                    violations += 1;
                }
            }
        }
    }
    for p in [2u64, 3, 5] {
        for _ in 0..20 {
            let j = rng.gen_range(0..=3);
            let big_j = j + rng.gen_range(0..=2);
            let table: Vec<Rational> = (0..p.pow(j as u32))
                .map(|_| Rational::new(BigInt::from(rng.gen_range(-50..50)), BigInt::from(rng.gen_range(1..20))))
                .collect();
            let a = rng.gen_range(0..1_000_000u64);
            if haar_integral_exact(p, &translate_table(&table, a), big_j)? != haar_integral_exact(p, &table, big_j)? {
                violations += 1;
            }
        }
    }
    Ok(Criterion::exact(13, violations, "every ball of level <= 6 for p = 2, 3; 60 translations".into()))
}

pub fn zp_fourier_inversion(rng: &mut ChaCha8Rng) -> Result<Criterion> {
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let f: Vec<Complex> = (0..27).map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let back = zp_inverse(&zp_fourier(3, &f)?)?;
        worst = back.iter().zip(&f).map(|(a, b)| (a - b).norm()).fold(worst, f64::max);
    }
    Ok(Criterion::below(14, worst, 1e-10, "p = 3, level 3, 20 tables".into()))
}

pub fn qp_self_duality(rng: &mut ChaCha8Rng) -> Result<Criterion> {
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let vals = (0..16).map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let f = QpTable::new(2, 2, 2, vals)?;
        let twice = qp_fourier(&qp_fourier(&f)?)?;
        worst = twice.values.iter().zip(&f.reflect().values).map(|(a, b)| (a - b).norm()).fold(worst, f64::max);
    }
    let ball = QpTable::unit_ball(2, 1, 1)?;
    let hat = qp_fourier(&ball)?;
    let fixed = hat.values.iter().zip(&ball.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let mut c = Criterion::below(15, worst, 1e-9, format!("p = 2, window (2,2); unit ball residual {fixed:.2e}"));
    c.pass &= fixed < 1e-10;
    Ok(c)
}

pub fn solenoid(rng: &mut ChaCha8Rng) -> Result<Criterion> {
    let tower = Arc::new(RadixTower::new(vec![2, 3, 4, 5])?);
    let mut incoherent = 0;
    let mut acc = SolenoidPoint::random(&tower, rng);
    for _ in 0..1000 {
        acc = sol_add(&acc, &SolenoidPoint::random(&tower, rng))?;
        if !acc.is_coherent() {
            incoherent += 1;
        }
    }
    let random_char = |rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(0..=tower.levels());
        let a = RAdicInt::random(&Arc::new(tower.prefix(k)), rng).residue().clone();
        SolenoidChar::new(&tower, k, a)
    };
    let mut gap: f64 = 0.0;
    for _ in 0..500 {
        let chi = random_char(rng)?;
        let (x, y) = (SolenoidPoint::random(&tower, rng), SolenoidPoint::random(&tower, rng));
        let lhs = sol_char_eval(&chi, &sol_add(&x, &y)?)?;
        gap = gap.max((lhs - sol_char_eval(&chi, &x)? * sol_char_eval(&chi, &y)?).norm());
    }
    let mut mismatches = 0;
    for _ in 0..50 {
        let chi = random_char(rng)?;
        let u = RAdicInt::random(&tower, rng);
        if sol_char_angle(&chi, &zr_embed(&u))? != radic_char_angle(&chi.a, chi.level, &u)? {
            mismatches += 1;
        }
    }
    let mut c = Criterion::below(
        16,
        gap,
        1e-10,
        format!("tower (2,3,4,5): {incoherent} incoherent sums, {mismatches} fiber mismatches"),
    );
    c.pass &= incoherent == 0 && mismatches == 0;
    Ok(c)
}

pub fn quotient() -> Result<Criterion> {
    let g = FiniteAbelianGroup::cyclic(12)?;
    let points: Vec<u64> = (0..12).collect();
    let d = FiniteMetric::from_fn(&points, |&x, &y| {
        let diff = x.abs_diff(y);
        Rational::from_integer(BigInt::from(diff.min(12 - diff)))
    })?;
    let q = quotient_metric(&g, &[vec![6]], &d)?;
    let n = q.metric.len();
    let mut violations = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if q.metric.d(x, z) > &(q.metric.d(x, y) + q.metric.d(y, z)) {
                    violations += 1;
                }
            }
        }
    }
    let detail = format!("Z/12 mod {{0, 6}}: {n} cosets, {} triples", n * n * n);
    let mut c = Criterion::exact(17, violations, detail);
    c.pass &= n == 6 && q.metric.d(0, 1) == &Rational::one() && q.metric.d(0, 0).is_zero();
    Ok(c)
}

/// Worst `‖v − P v‖ − ‖v − w‖` over competitors `w` in the span.
pub fn projection_optimality(rng: &mut ChaCha8Rng) -> Result<Criterion> {
    let rand_vec = |rng: &mut ChaCha8Rng| -> Vec<Complex> { (0..6).map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect() };
    let span = VectorList::new(6, (0..3).map(|_| rand_vec(rng)).collect())?;
    let onb = gram_schmidt(&span, crate::hilbert::GRAM_SCHMIDT_TOL);
    let v = rand_vec(rng);
    let (_, residual) = project(&v, &onb)?;
    let best = norm2(&residual);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let mut w = vec![Complex::zero(); 6];
        for e in &onb.vectors {
            let c = Complex::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            for (wi, ei) in w.iter_mut().zip(e) {
                *wi += c * ei;
            }
        }
        let diff: Vec<Complex> = v.iter().zip(&w).map(|(a, b)| a - b).collect();
        worst = worst.max(best - dot(&diff, &diff).re.sqrt());
    }
    let mut c = Criterion::below(18, worst, 1e-10, format!("dim 6, span dim {}, 1000 competitors", onb.len()));
    c.pass &= onb.len() == 3;
    Ok(c)
}
