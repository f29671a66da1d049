//! The r-adic solenoid as coherent towers of angles.
//!
//! A point is a sequence `x_0, …, x_L` with `x_l ∈ [0, R_l)` and
//! `x_{l+1} ≡ x_l (mod R_l)`. Angles are exact rationals. A character is a
//! fraction `a/R_k ∈ B_r` acting by `x ↦ exp(2πi a x_k / R_k)`, so it only
//! reads the level-`k` angle.
//!
//! Only the algebra is modelled. The topology of the solenoid is visible
//! through the dense image of [`sol_from_real`] and nothing else.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{RAdicInt, RadixTower};
use crate::scalar::{frac, turn, Complex, Rational};

/// Coherent tower of angles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolenoidPoint {
    tower: Arc<RadixTower>,
    angles: Vec<Rational>,
}

fn partial(tower: &RadixTower, l: usize) -> Rational {
    Rational::from_integer(BigInt::from(tower.partial(l).clone()))
}

/// `a mod m` for rationals, `m > 0`.
fn reduce(a: &Rational, m: &Rational) -> Rational {
    let q = (a / m).floor();
    a - q * m
}

impl SolenoidPoint {
    /// Checks range and coherence.
    pub fn new(tower: &Arc<RadixTower>, angles: Vec<Rational>) -> Result<Self> {
        if angles.len() != tower.levels() + 1 {
            return Err(Error::LengthMismatch { expected: tower.levels() + 1, got: angles.len() });
        }
        for (l, x) in angles.iter().enumerate() {
            let r = partial(tower, l);
            if x < &Rational::zero() || x >= &r {
                return Err(Error::InvalidArgument(format!("angle {x} at level {l} is outside [0, {r})")));
            }
            if l > 0 && reduce(x, &partial(tower, l - 1)) != angles[l - 1] {
                return Err(Error::InvalidArgument(format!("angles at levels {} and {l} are not coherent", l - 1)));
            }
        }
        Ok(SolenoidPoint { tower: tower.clone(), angles })
    }

    pub fn zero(tower: &Arc<RadixTower>) -> Self {
        SolenoidPoint { tower: tower.clone(), angles: vec![Rational::zero(); tower.levels() + 1] }
    }

    /// The tower determined by its top angle.
    fn from_top(tower: &Arc<RadixTower>, top: Rational) -> Self {
        let angles = (0..=tower.levels()).map(|l| reduce(&top, &partial(tower, l))).collect();
        SolenoidPoint { tower: tower.clone(), angles }
    }

    /// Top angle uniform on a grid of step `2^{−32}` in `[0, R_L)`.
    pub fn random<R: Rng + ?Sized>(tower: &Arc<RadixTower>, rng: &mut R) -> Self {
        let whole = RAdicInt::random(tower, rng);
        let part = Rational::new(BigInt::from(rng.gen::<u32>()), BigInt::from(1u64 << 32));
        Self::from_top(tower, Rational::from_integer(BigInt::from(whole.residue().clone())) + part)
    }

    pub fn tower(&self) -> &Arc<RadixTower> {
        &self.tower
    }

    pub fn angles(&self) -> &[Rational] {
        &self.angles
    }

    /// `π_k(x) = x_k ∈ R / R_k Z`.
    pub fn project(&self, k: usize) -> Result<&Rational> {
        self.angles.get(k).ok_or(Error::PrecisionExceeded { requested: k as i64, precision: self.tower.levels() as i64 })
    }

    pub fn is_coherent(&self) -> bool {
        Self::new(&self.tower, self.angles.clone()).is_ok()
    }

    fn same_tower(&self, other: &SolenoidPoint) -> Result<()> {
        if Arc::ptr_eq(&self.tower, &other.tower) || self.tower == other.tower {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    /// Forgets every level above `k`.
    pub fn truncate(&self, k: usize) -> SolenoidPoint {
        SolenoidPoint { tower: Arc::new(self.tower.prefix(k)), angles: self.angles[..=k].to_vec() }
    }
}

/// `x_l = a mod R_l`.
pub fn sol_from_real(tower: &Arc<RadixTower>, a: &Rational) -> SolenoidPoint {
    SolenoidPoint::from_top(tower, a.clone())
}

/// Componentwise sum modulo `R_l`.
pub fn sol_add(x: &SolenoidPoint, y: &SolenoidPoint) -> Result<SolenoidPoint> {
    x.same_tower(y)?;
    let angles = x
        .angles
        .iter()
        .zip(&y.angles)
        .enumerate()
        .map(|(l, (a, b))| reduce(&(a + b), &partial(&x.tower, l)))
        .collect();
    Ok(SolenoidPoint { tower: x.tower.clone(), angles })
}

pub fn sol_neg(x: &SolenoidPoint) -> SolenoidPoint {
    let angles = x.angles.iter().enumerate().map(|(l, a)| reduce(&-a, &partial(&x.tower, l))).collect();
    SolenoidPoint { tower: x.tower.clone(), angles }
}

/// `Z_r → Ỹ_0`, `u ↦ (u mod R_l)_l`.
pub fn zr_embed(u: &RAdicInt) -> SolenoidPoint {
    let angles = u
        .coherent_sequence()
        .into_iter()
        .map(|x| Rational::from_integer(BigInt::from(x)))
        .collect();
    SolenoidPoint { tower: u.tower().clone(), angles }
}

/// Character `x ↦ exp(2πi a x_k / R_k)`. Two characters are equal when
/// `a/R_k` agree as rationals.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolenoidChar {
    pub level: usize,
    #[serde(with = "numerator_str")]
    pub a: BigUint,
}

mod numerator_str {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.trim().parse().map_err(serde::de::Error::custom)
    }
}

impl SolenoidChar {
    pub fn new(tower: &RadixTower, level: usize, a: BigUint) -> Result<Self> {
        if level > tower.levels() {
            return Err(Error::PrecisionExceeded { requested: level as i64, precision: tower.levels() as i64 });
        }
        if &a >= tower.partial(level) {
            return Err(Error::InvalidArgument(format!("numerator {a} is not below {}", tower.partial(level))));
        }
        Ok(SolenoidChar { level, a })
    }

    pub fn trivial() -> Self {
        SolenoidChar { level: 0, a: BigUint::zero() }
    }

    /// `a/R_k` in lowest terms, given the tower.
    pub fn fraction(&self, tower: &RadixTower) -> Rational {
        Rational::new(BigInt::from(self.a.clone()), BigInt::from(tower.partial(self.level).clone()))
    }

    pub fn equals(&self, other: &SolenoidChar, tower: &RadixTower) -> bool {
        frac(&self.fraction(tower)) == frac(&other.fraction(tower))
    }
}

/// Exact angle `frac(a · x_k / R_k)`.
pub fn sol_char_angle(chi: &SolenoidChar, x: &SolenoidPoint) -> Result<Rational> {
    let xk = x.project(chi.level)?;
    let rk = partial(&x.tower, chi.level);
    Ok(frac(&(Rational::from_integer(BigInt::from(chi.a.clone())) * xk / rk)))
}

pub fn sol_char_eval(chi: &SolenoidChar, x: &SolenoidPoint) -> Result<Complex> {
    Ok(turn(&sol_char_angle(chi, x)?))
}

/// `(1/M) Σ χ(x) conj ψ(x)` over `M` jittered points of `[0, R_k)` lifted to
/// the solenoid: stratum `j` is `[j R_k/M, (j+1) R_k/M)`.
pub fn char_inner_sampled<R: Rng + ?Sized>(
    tower: &Arc<RadixTower>,
    chi: &SolenoidChar,
    psi: &SolenoidChar,
    samples: usize,
    rng: &mut R,
) -> Result<Complex> {
    let k = chi.level.max(psi.level);
    if k > tower.levels() {
        return Err(Error::PrecisionExceeded { requested: k as i64, precision: tower.levels() as i64 });
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    // the sample x_k = t·R_k/D with D = M·2^32 gives χ angle a·t·(R_k/R_c)/D
    // exactly, so the sum runs in integers
    let d = BigUint::from(samples) << 32;
    let weight = |c: &SolenoidChar| &c.a * (tower.partial(k) / tower.partial(c.level));
    let (wa, wb) = (weight(chi), weight(psi));
    let w: BigUint = (&wa % &d + &d - &wb % &d) % &d;
    let df = (samples as f64) * 4294967296.0;
    let mut sum = Complex::zero();
    for j in 0..samples as u64 {
        let t = BigUint::from((j << 32) | u64::from(rng.gen::<u32>()));
        let num: BigUint = (&w * t) % &d;
        let angle = num.to_f64().expect("finite") / df;
        sum += Complex::from_polar(1.0, std::f64::consts::TAU * angle);
    }
    Ok(sum / samples as f64)
}

/// Exact version over the finite quotient `(1/M)Z / R_k Z` with `M = R_k · n`:
/// the character values are `M`-th roots of unity and their average is 0 or 1.
pub fn char_inner_exact(tower: &Arc<RadixTower>, chi: &SolenoidChar, psi: &SolenoidChar, n: u64) -> Result<Complex> {
    let k = chi.level.max(psi.level);
    if k > tower.levels() {
        return Err(Error::PrecisionExceeded { requested: k as i64, precision: tower.levels() as i64 });
    }
    let rk = tower.partial(k).clone();
    let count = &rk * n;
    let total: u64 = count.clone().try_into().map_err(|_| Error::InvalidArgument("quotient is too large".into()))?;
    let step = Rational::new(BigInt::one(), BigInt::from(n));
    let mut sum = Complex::zero();
    for j in 0..total {
        let x = sol_from_real(tower, &(Rational::from_integer(j.into()) * &step));
        sum += turn(&(sol_char_angle(chi, &x)? - sol_char_angle(psi, &x)?));
    }
    Ok(sum / total as f64)
}

#[derive(Serialize, Deserialize)]
struct PointWire {
    radices: Vec<u64>,
    #[serde(with = "crate::scalar::rational_vec")]
    angles: Vec<Rational>,
}

impl Serialize for SolenoidPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PointWire { radices: self.tower.radices().to_vec(), angles: self.angles.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SolenoidPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = PointWire::deserialize(d)?;
        let tower = Arc::new(RadixTower::new(w.radices).map_err(D::Error::custom)?);
        SolenoidPoint::new(&tower, w.angles).map_err(D::Error::custom)
    }
}

/// `true` when `a·u ≡ 0 (mod R_k)`.
pub fn in_kernel(chi: &SolenoidChar, u: &RAdicInt) -> bool {
    (&chi.a * u.level(chi.level)).is_multiple_of(u.tower().partial(chi.level))
}
