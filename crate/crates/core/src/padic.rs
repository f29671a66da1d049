//! Exact r-adic and p-adic arithmetic on truncated coherent towers.
//!
//! An r-adic integer is stored as one residue modulo `R_L = r_1 ⋯ r_L`; the
//! coherent sequence `x_l = residue mod R_l` is recovered by reduction, so
//! every level is consistent by construction. A p-adic integer is the
//! constant-radix case `r_j = p`. Elements of `Q_p` are kept as
//! `p^v · unit` with the unit a residue prime to `p`.
//!
//! Character values are computed as exact angles in `Q/Z` and only the final
//! `exp(2πi·angle)` is evaluated in floating point.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{dft, idft, CharTable, FiniteAbelianGroup, GroupFun, Haar};
use crate::scalar::{turn, Complex, Rational};
use crate::ultra::DecaySeq;

/// Default number of levels for prime towers.
pub const DEFAULT_PRIME_LEVELS: usize = 20;
/// Default number of levels for mixed-radix towers.
pub const DEFAULT_MIXED_LEVELS: usize = 12;

/// Radices `r_1, …, r_L ≥ 2` with partial products `R_0 = 1, …, R_L`.
#[derive(Clone)]
pub struct RadixTower {
    radices: Vec<u64>,
    partial: Vec<BigUint>,
}

impl RadixTower {
    pub fn new(radices: Vec<u64>) -> Result<Self> {
        if let Some(r) = radices.iter().find(|&&r| r < 2) {
            return Err(Error::InvalidArgument(format!("radix {r} is below 2")));
        }
        let mut partial = Vec::with_capacity(radices.len() + 1);
        partial.push(BigUint::one());
        for &r in &radices {
            let next = partial.last().expect("non-empty") * r;
            partial.push(next);
        }
        Ok(RadixTower { radices, partial })
    }

    /// `r_j = p` for `j = 1..=levels`.
    pub fn constant(p: u64, levels: usize) -> Result<Self> {
        Self::new(vec![p; levels])
    }

    pub fn radices(&self) -> &[u64] {
        &self.radices
    }

    /// Number of levels `L`.
    pub fn levels(&self) -> usize {
        self.radices.len()
    }

    /// `R_l`.
    pub fn partial(&self, l: usize) -> &BigUint {
        &self.partial[l]
    }

    pub fn partials(&self) -> &[BigUint] {
        &self.partial
    }

    /// `R_L`.
    pub fn modulus(&self) -> &BigUint {
        &self.partial[self.levels()]
    }

    /// The common radix when all radices agree.
    pub fn constant_radix(&self) -> Option<u64> {
        let first = *self.radices.first()?;
        self.radices.iter().all(|&r| r == first).then_some(first)
    }

    /// Tower truncated to its first `l` levels.
    pub fn prefix(&self, l: usize) -> RadixTower {
        RadixTower { radices: self.radices[..l].to_vec(), partial: self.partial[..=l].to_vec() }
    }

    /// `t_l = 1/R_l`, `l = 0..=L`.
    pub fn default_decay(&self) -> DecaySeq {
        let partial: Vec<BigInt> = self.partial.iter().map(|r| BigInt::from(r.clone())).collect();
        DecaySeq::reciprocal(&partial).expect("partial products increase strictly")
    }
}

impl PartialEq for RadixTower {
    fn eq(&self, other: &Self) -> bool {
        self.radices == other.radices
    }
}

impl Eq for RadixTower {}

impl fmt::Debug for RadixTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("RadixTower").field(&self.radices).finish()
    }
}

/// Element of `Z_r` at precision `R_L`.
#[derive(Clone, PartialEq, Eq)]
pub struct RAdicInt {
    tower: Arc<RadixTower>,
    residue: BigUint,
}

impl fmt::Debug for RAdicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.tower.modulus())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl RAdicInt {
    /// Image of an integer: `a mod R_L`.
    pub fn from_int(tower: &Arc<RadixTower>, a: &BigInt) -> Self {
        let m = BigInt::from(tower.modulus().clone());
        let r = a.mod_floor(&m);
        RAdicInt { tower: tower.clone(), residue: r.to_biguint().expect("mod_floor is non-negative") }
    }

    pub fn from_i64(tower: &Arc<RadixTower>, a: i64) -> Self {
        Self::from_int(tower, &BigInt::from(a))
    }

    /// From a residue already in `[0, R_L)`.
    pub fn from_residue(tower: &Arc<RadixTower>, residue: BigUint) -> Result<Self> {
        if &residue >= tower.modulus() {
            return Err(Error::InvalidArgument(format!("residue {residue} is not below {}", tower.modulus())));
        }
        Ok(RAdicInt { tower: tower.clone(), residue })
    }

    pub fn zero(tower: &Arc<RadixTower>) -> Self {
        RAdicInt { tower: tower.clone(), residue: BigUint::zero() }
    }

    pub fn random<R: Rng + ?Sized>(tower: &Arc<RadixTower>, rng: &mut R) -> Self {
        let residue = random_below(tower.modulus(), rng);
        RAdicInt { tower: tower.clone(), residue }
    }

    pub fn tower(&self) -> &Arc<RadixTower> {
        &self.tower
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    /// `x_l = residue mod R_l`.
    pub fn level(&self, l: usize) -> BigUint {
        &self.residue % self.tower.partial(l)
    }

    /// The coherent sequence `x_0, …, x_L`.
    pub fn coherent_sequence(&self) -> Vec<BigUint> {
        (0..=self.tower.levels()).map(|l| self.level(l)).collect()
    }

    /// Projection to the tower with the first `l` levels.
    pub fn truncate(&self, l: usize) -> RAdicInt {
        RAdicInt { tower: Arc::new(self.tower.prefix(l)), residue: self.level(l) }
    }

    fn same_tower(&self, other: &RAdicInt) -> Result<()> {
        if Arc::ptr_eq(&self.tower, &other.tower) || self.tower == other.tower {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    fn wrap(&self, residue: BigUint) -> RAdicInt {
        RAdicInt { tower: self.tower.clone(), residue: residue % self.tower.modulus() }
    }

    pub fn add(&self, other: &RAdicInt) -> Result<RAdicInt> {
        self.same_tower(other)?;
        Ok(self.wrap(&self.residue + &other.residue))
    }

    pub fn sub(&self, other: &RAdicInt) -> Result<RAdicInt> {
        self.same_tower(other)?;
        Ok(self.wrap(&self.residue + self.tower.modulus() - &other.residue))
    }

    pub fn mul(&self, other: &RAdicInt) -> Result<RAdicInt> {
        self.same_tower(other)?;
        Ok(self.wrap(&self.residue * &other.residue))
    }

    pub fn neg(&self) -> RAdicInt {
        self.wrap(self.tower.modulus() - &self.residue)
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// Largest `l ≤ L` with `R_l | residue`; `L` for zero.
    pub fn valuation(&self) -> usize {
        (0..=self.tower.levels())
            .rev()
            .find(|&l| (&self.residue % self.tower.partial(l)).is_zero())
            .unwrap_or(0)
    }

    /// `|x|_r = t_{l(x)}`, and 0 for the zero residue.
    pub fn abs(&self, t: &DecaySeq) -> Result<Rational> {
        if t.len() < self.tower.levels() + 1 {
            return Err(Error::InvalidArgument(format!(
                "decay sequence has {} terms, need {}",
                t.len(),
                self.tower.levels() + 1
            )));
        }
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        Ok(t.get(self.valuation()).expect("length checked").clone())
    }

    /// Inverse modulo `R_L` by the extended Euclidean algorithm.
    pub fn invert_unit(&self) -> Result<RAdicInt> {
        let m = BigInt::from(self.tower.modulus().clone());
        let a = BigInt::from(self.residue.clone());
        let e = a.extended_gcd(&m);
        if !e.gcd.is_one() {
            return Err(Error::NotUnit { gcd: e.gcd.to_string() });
        }
        Ok(RAdicInt::from_int(&self.tower, &e.x))
    }
}

impl fmt::Display for RAdicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

/// Applies one ring operation; `Neg` ignores `y`.
pub fn radic_arith(x: &RAdicInt, y: &RAdicInt, op: RadicOp) -> Result<RAdicInt> {
    match op {
        RadicOp::Add => x.add(y),
        RadicOp::Sub => x.sub(y),
        RadicOp::Mul => x.mul(y),
        RadicOp::Neg => Ok(x.neg()),
    }
}

#[derive(Serialize, Deserialize)]
struct RadicWire {
    radices: Vec<u64>,
    residue: String,
}

impl Serialize for RAdicInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RadicWire { radices: self.tower.radices.clone(), residue: self.residue.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RAdicInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = RadicWire::deserialize(d)?;
        let tower = Arc::new(RadixTower::new(w.radices).map_err(D::Error::custom)?);
        let residue: BigUint = w.residue.trim().parse().map_err(|_| D::Error::custom("residue is not a decimal integer"))?;
        RAdicInt::from_residue(&tower, residue).map_err(D::Error::custom)
    }
}

fn random_below<R: Rng + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    // rejection sampling on whole 32-bit digits
    let digits = bound.to_u32_digits().len().max(1);
    loop {
        let v = BigUint::new((0..digits).map(|_| rng.gen()).collect());
        let top = BigUint::one() << (32 * digits);
        let limit = &top - (&top % bound);
        if v < limit {
            return v % bound;
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(k, m)` with `n = p^k · m` and `p ∤ m`, for `n ≠ 0`.
fn split_prime_power(n: &BigInt, p: u64) -> (i64, BigInt) {
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut k = 0;
    while !m.is_zero() && (&m % &p).is_zero() {
        m /= &p;
        k += 1;
    }
    (k, m)
}

/// `p^v · unit` in `Q_p`, with the unit known modulo `p^L`.
#[derive(Clone, PartialEq, Eq)]
pub struct PAdicNumber {
    p: u64,
    precision: usize,
    value: Option<(i64, BigUint)>,
}

impl fmt::Debug for PAdicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            None => write!(f, "0 (p = {}, L = {})", self.p, self.precision),
            Some((v, u)) => write!(f, "{}^{} * {} (L = {})", self.p, v, u, self.precision),
        }
    }
}

impl PAdicNumber {
    pub fn zero(p: u64, precision: usize) -> Self {
        PAdicNumber { p, precision, value: None }
    }

    /// `p^v · unit`; `unit` is reduced modulo `p^L` and must be prime to `p`.
    pub fn from_parts(p: u64, precision: usize, v: i64, unit: BigUint) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let m = BigUint::from(p).pow(precision as u32);
        let unit = unit % &m;
        if (&unit % p).is_zero() {
            return Err(Error::InvalidArgument(format!("unit {unit} is divisible by {p}")));
        }
        Ok(PAdicNumber { p, precision, value: Some((v, unit)) })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_none()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.value.as_ref().map(|(v, _)| *v)
    }

    pub fn unit(&self) -> Option<&BigUint> {
        self.value.as_ref().map(|(_, u)| u)
    }

    fn modulus(&self) -> BigUint {
        BigUint::from(self.p).pow(self.precision as u32)
    }

    /// `|x|_p = p^{−v}`, and 0 for zero.
    pub fn abs(&self) -> Rational {
        match &self.value {
            None => Rational::zero(),
            Some((v, _)) => {
                let pv = BigInt::from(self.p).pow(v.unsigned_abs() as u32);
                if *v >= 0 {
                    Rational::new(BigInt::one(), pv)
                } else {
                    Rational::from_integer(pv)
                }
            }
        }
    }

    /// Reads an element of `Z_p` off a constant-radix tower. The unit is
    /// known modulo `p^{L − v}`; the missing digits are taken as zero.
    pub fn from_radic(x: &RAdicInt) -> Result<Self> {
        let p = x
            .tower()
            .constant_radix()
            .filter(|&p| is_prime(p))
            .ok_or_else(|| Error::InvalidArgument("tower is not a prime tower".into()))?;
        let levels = x.tower().levels();
        if x.is_zero() {
            return Ok(Self::zero(p, levels));
        }
        let v = x.valuation();
        let unit = x.residue() / x.tower().partial(v);
        Self::from_parts(p, levels, v as i64, unit)
    }

    fn check_compatible(&self, other: &PAdicNumber) -> Result<()> {
        if self.p != other.p || self.precision != other.precision {
            return Err(Error::InvalidArgument("p-adic numbers use different primes or precisions".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &PAdicNumber) -> Result<PAdicNumber> {
        self.check_compatible(other)?;
        Ok(match (&self.value, &other.value) {
            (Some((v, u)), Some((w, t))) => PAdicNumber {
                p: self.p,
                precision: self.precision,
                value: Some((v + w, (u * t) % self.modulus())),
            },
            _ => Self::zero(self.p, self.precision),
        })
    }

    pub fn neg(&self) -> PAdicNumber {
        let value = self.value.as_ref().map(|(v, u)| (*v, self.modulus() - u));
        PAdicNumber { value, ..self.clone() }
    }

    /// Sum at relative precision `L`: the digits beyond the unit precision of
    /// the lower-valuation summand are dropped, so cancellation loses them.
    pub fn add(&self, other: &PAdicNumber) -> Result<PAdicNumber> {
        self.check_compatible(other)?;
        let (a, b) = match (&self.value, &other.value) {
            (None, _) => return Ok(other.clone()),
            (_, None) => return Ok(self.clone()),
            (Some(a), Some(b)) => (a, b),
        };
        let ((v, u), (w, t)) = if a.0 <= b.0 { (a, b) } else { (b, a) };
        let m = self.modulus();
        let shift = (w - v) as u32;
        let sum = if shift as usize >= self.precision {
            u.clone()
        } else {
            (u + t * BigUint::from(self.p).pow(shift)) % &m
        };
        if sum.is_zero() {
            return Ok(Self::zero(self.p, self.precision));
        }
        let (k, rest) = split_prime_power(&BigInt::from(sum), self.p);
        let rest = rest.to_biguint().expect("positive");
        Ok(PAdicNumber { p: self.p, precision: self.precision, value: Some((v + k, rest % m)) })
    }

    /// Exact rational value `p^v · unit` of the stored representative.
    pub fn to_rational(&self) -> Rational {
        match &self.value {
            None => Rational::zero(),
            Some((v, u)) => {
                let pv = BigInt::from(self.p).pow(v.unsigned_abs() as u32);
                let u = Rational::from_integer(BigInt::from(u.clone()));
                if *v >= 0 {
                    u * Rational::from_integer(pv)
                } else {
                    u / Rational::from_integer(pv)
                }
            }
        }
    }
}

/// Writes `q = p^v · a/b` with `a, b` prime to `p` and returns
/// `p^v · (a · b^{−1} mod p^L)`.
pub fn qp_normalize(p: u64, q: &Rational, precision: usize) -> Result<PAdicNumber> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if q.is_zero() {
        return Ok(PAdicNumber::zero(p, precision));
    }
    let (vn, a) = split_prime_power(q.numer(), p);
    let (vd, b) = split_prime_power(q.denom(), p);
    let tower = Arc::new(RadixTower::constant(p, precision)?);
    let a = RAdicInt::from_int(&tower, &a);
    let b_inv = RAdicInt::from_int(&tower, &b).invert_unit()?;
    let unit = a.mul(&b_inv)?;
    PAdicNumber::from_parts(p, precision, vn - vd, unit.residue().clone())
}

/// Element `a/p^k` of the Prüfer group `C_p ⊂ Q/Z`, in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrueferElement {
    pub p: u64,
    #[serde(with = "biguint_str")]
    pub numerator: BigUint,
    pub level: u32,
}

impl PrueferElement {
    /// Reduces `a/p^k` modulo 1 and to lowest terms.
    pub fn new(p: u64, numerator: BigUint, level: u32) -> Self {
        let mut a = numerator % BigUint::from(p).pow(level);
        let mut k = level;
        while k > 0 && (&a % p).is_zero() {
            a /= p;
            k -= 1;
        }
        if a.is_zero() {
            k = 0;
        }
        PrueferElement { p, numerator: a, level: k }
    }

    /// The angle `a/p^k` in turns.
    pub fn angle(&self) -> Rational {
        Rational::new(BigInt::from(self.numerator.clone()), BigInt::from(self.p).pow(self.level))
    }

    pub fn eval(&self) -> Complex {
        turn(&self.angle())
    }
}

mod biguint_str {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.trim().parse().map_err(serde::de::Error::custom)
    }
}

/// Fractional part of `x·y` in `Q_p/Z_p ≅ C_p`.
pub fn pairing_element(y: &PAdicNumber, x: &RAdicInt) -> Result<PrueferElement> {
    let p = y.prime();
    if x.tower().constant_radix() != Some(p) {
        return Err(Error::InvalidArgument(format!("x does not live on the {p}-adic tower")));
    }
    let (v, unit) = match &y.value {
        None => return Ok(PrueferElement::new(p, BigUint::zero(), 0)),
        Some((v, _)) if *v >= 0 => return Ok(PrueferElement::new(p, BigUint::zero(), 0)),
        Some((v, u)) => (*v, u),
    };
    let k = v.unsigned_abs() as usize;
    let precision = x.tower().levels().min(y.precision());
    if k > precision {
        return Err(Error::PrecisionExceeded { requested: v, precision: -(precision as i64) });
    }
    let pk = BigUint::from(p).pow(k as u32);
    let a = (x.residue() % &pk) * (unit % &pk) % &pk;
    Ok(PrueferElement::new(p, a, k as u32))
}

/// `φ_y(x) = exp(2πi {x·y}_p)`.
pub fn char_pairing(y: &PAdicNumber, x: &RAdicInt) -> Result<Complex> {
    Ok(pairing_element(y, x)?.eval())
}

/// Angle of the character `a/R_k ∈ B_r` at `x ∈ Z_r`: `frac(a · x_k / R_k)`.
pub fn radic_char_angle(a: &BigUint, level: usize, x: &RAdicInt) -> Result<Rational> {
    if level > x.tower().levels() {
        return Err(Error::PrecisionExceeded { requested: level as i64, precision: x.tower().levels() as i64 });
    }
    let rk = x.tower().partial(level);
    let num = (a * x.level(level)) % rk;
    Ok(Rational::new(BigInt::from(num), BigInt::from(rk.clone())))
}

pub fn radic_char_pairing(a: &BigUint, level: usize, x: &RAdicInt) -> Result<Complex> {
    Ok(turn(&radic_char_angle(a, level, x)?))
}

/// `Σ_{j<L} (p·l)^j mod p^L`, the truncated geometric series for
/// `(1 − p·l)^{−1}`.
pub fn geometric_inverse(tower: &Arc<RadixTower>, l: &BigInt) -> Result<RAdicInt> {
    let p = tower
        .constant_radix()
        .ok_or_else(|| Error::InvalidArgument("geometric inversion needs a constant radix".into()))?;
    let ratio = RAdicInt::from_int(tower, &(l * BigInt::from(p)));
    let mut term = RAdicInt::from_i64(tower, 1);
    let mut sum = RAdicInt::zero(tower);
    for _ in 0..tower.levels() {
        sum = sum.add(&term)?;
        term = term.mul(&ratio)?;
    }
    Ok(sum)
}

fn level_size(p: u64, level: usize) -> Result<usize> {
    (p as usize)
        .checked_pow(level as u32)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{level} points is too many")))
}

/// `p^{−J} Σ_{x mod p^J} f(x mod p^j)` for a table constant on cosets of
/// `p^j Z_p`, summed exactly.
pub fn haar_integral_exact(p: u64, table: &[Rational], sample_level: usize) -> Result<Rational> {
    let j = table_level(p, table.len())?;
    if sample_level < j {
        return Err(Error::InvalidArgument(format!("sample level {sample_level} is below table level {j}")));
    }
    let n = level_size(p, sample_level)?;
    let sum: Rational = (0..n).map(|x| &table[x % table.len()]).sum();
    Ok(sum / Rational::from_integer(n.into()))
}

/// Floating-point variant of [`haar_integral_exact`].
pub fn haar_integral(p: u64, table: &[Complex], sample_level: usize) -> Result<Complex> {
    let j = table_level(p, table.len())?;
    if sample_level < j {
        return Err(Error::InvalidArgument(format!("sample level {sample_level} is below table level {j}")));
    }
    let n = level_size(p, sample_level)?;
    let sum: Complex = (0..n).map(|x| table[x % table.len()]).sum();
    Ok(sum / n as f64)
}

/// Riemann sum of a callback at the residues `0..p^J`.
pub fn haar_integral_fn<F: Fn(u64) -> Complex>(p: u64, sample_level: usize, f: F) -> Result<Complex> {
    let n = level_size(p, sample_level)?;
    let sum: Complex = (0..n as u64).map(f).sum();
    Ok(sum / n as f64)
}

/// Level `j` with `len = p^j`.
pub fn table_level(p: u64, len: usize) -> Result<usize> {
    let mut n = 1usize;
    for j in 0..64 {
        if n == len {
            return Ok(j);
        }
        n = match n.checked_mul(p as usize) {
            Some(n) if n <= len => n,
            _ => break,
        };
    }
    Err(Error::InvalidArgument(format!("table length {len} is not a power of {p}")))
}

/// Indicator of the ball `a + p^j Z_p` as a table at level `j`.
pub fn ball_indicator(p: u64, level: usize, center: u64) -> Result<Vec<Rational>> {
    let n = level_size(p, level)?;
    let c = center as usize % n;
    Ok((0..n).map(|x| if x == c { Rational::one() } else { Rational::zero() }).collect())
}

/// `x ↦ f(x + a)` on a level-`j` table.
pub fn translate_table<T: Clone>(table: &[T], a: u64) -> Vec<T> {
    let n = table.len();
    (0..n).map(|x| table[(x + a as usize % n) % n].clone()).collect()
}

/// Transform of a locally constant function on `Z_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZpSpectrum {
    pub p: u64,
    pub level: usize,
    /// `f̂(a/p^j)` for `a = 0..p^j`.
    pub values: Vec<Complex>,
}

impl ZpSpectrum {
    /// The Prüfer element labelling entry `a`.
    pub fn character(&self, a: usize) -> PrueferElement {
        PrueferElement::new(self.p, BigUint::from(a), self.level as u32)
    }
}

fn cyclic_of(p: u64, level: usize) -> Result<FiniteAbelianGroup> {
    FiniteAbelianGroup::cyclic(level_size(p, level)? as u64)
}

/// `f̂(a/p^j) = p^{−j} Σ_x f(x) exp(−2πi a x / p^j)` (Haar measure with
/// `H(Z_p) = 1`).
pub fn zp_fourier(p: u64, table: &[Complex]) -> Result<ZpSpectrum> {
    let level = table_level(p, table.len())?;
    let f = GroupFun::new(cyclic_of(p, level)?, Haar::Normalized, table.to_vec())?;
    Ok(ZpSpectrum { p, level, values: dft(&f).values })
}

/// Inverse of [`zp_fourier`]: `f(x) = Σ_a f̂(a/p^j) exp(2πi a x / p^j)`.
pub fn zp_inverse(spec: &ZpSpectrum) -> Result<Vec<Complex>> {
    let t = CharTable { group: cyclic_of(spec.p, spec.level)?, haar: Haar::Normalized, values: spec.values.clone() };
    Ok(idft(&t).values)
}

/// Function on the window `p^{−m} Z_p / p^k Z_p`, tabulated at the coset
/// representatives `x_j = j · p^{−m}`, `j = 0..p^{m+k}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QpTable {
    pub p: u64,
    pub m: usize,
    pub k: usize,
    pub values: Vec<Complex>,
}

impl QpTable {
    pub fn new(p: u64, m: usize, k: usize, values: Vec<Complex>) -> Result<Self> {
        let n = level_size(p, m + k)?;
        if values.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: values.len() });
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(QpTable { p, m, k, values })
    }

    /// Indicator of `Z_p` inside the window.
    pub fn unit_ball(p: u64, m: usize, k: usize) -> Result<Self> {
        let n = level_size(p, m + k)?;
        let pm = level_size(p, m)?;
        let values = (0..n).map(|j| if j % pm == 0 { Complex::new(1.0, 0.0) } else { Complex::zero() }).collect();
        Self::new(p, m, k, values)
    }

    /// `x ↦ f(−x)`.
    pub fn reflect(&self) -> QpTable {
        let n = self.values.len();
        let values = (0..n).map(|j| self.values[(n - j) % n]).collect();
        QpTable { values, ..self.clone() }
    }

    /// Exact representative `j · p^{−m}` of entry `j`.
    pub fn point(&self, j: usize) -> Rational {
        Rational::new(BigInt::from(j), BigInt::from(self.p).pow(self.m as u32))
    }
}

/// `f̂(ξ) = ∫ f(x) exp(−2πi {xξ}_p) dx` with `H(Z_p) = 1`.
///
/// The input lives on `p^{−m}Z_p / p^kZ_p` and the output on the dual window
/// `p^{−k}Z_p / p^mZ_p`. Each coset carries mass `p^{−k}`, which makes the
/// transform its own inverse up to reflection.
pub fn qp_fourier(f: &QpTable) -> Result<QpTable> {
    let n = f.values.len();
    let g = GroupFun::new(FiniteAbelianGroup::cyclic(n as u64)?, Haar::Counting, f.values.clone())?;
    let mass = 1.0 / level_size(f.p, f.k)? as f64;
    let values = dft(&g).values.into_iter().map(|v| v * mass).collect();
    QpTable::new(f.p, f.k, f.m, values)
}

/// `{x·ξ}_p` for window points, exactly.
pub fn qp_pairing_angle(x: &Rational, xi: &Rational, p: u64) -> Result<Rational> {
    let prod = x * xi;
    if prod.is_zero() {
        return Ok(Rational::zero());
    }
    let (vd, _) = split_prime_power(prod.denom(), p);
    let (vn, a) = split_prime_power(prod.numer(), p);
    let v = vn - vd;
    if v >= 0 {
        return Ok(Rational::zero());
    }
    let b = prod.denom() / BigInt::from(p).pow(vd as u32);
    let precision = (-v) as usize;
    let tower = Arc::new(RadixTower::constant(p, precision)?);
    let unit = RAdicInt::from_int(&tower, &a).mul(&RAdicInt::from_int(&tower, &b).invert_unit()?)?;
    let a = BigInt::from(unit.residue().clone()) * BigInt::from(p).pow(vn as u32);
    let pk = BigInt::from(p).pow(vd as u32);
    let num = a.mod_floor(&pk);
    Ok(Rational::new(num, pk))
}

impl PAdicNumber {
    fn from_wire(p: u64, v: i64, unit: &str, precision: usize) -> Result<Self> {
        let unit: BigUint = unit.trim().parse().map_err(|_| Error::Parse(format!("bad unit {unit:?}")))?;
        if unit.is_zero() {
            return Ok(Self::zero(p, precision));
        }
        Self::from_parts(p, precision, v, unit)
    }
}

#[derive(Serialize, Deserialize)]
struct PAdicWire {
    p: u64,
    v: i64,
    unit: String,
    #[serde(rename = "L", default = "default_levels")]
    precision: usize,
}

fn default_levels() -> usize {
    DEFAULT_PRIME_LEVELS
}

impl Serialize for PAdicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (v, unit) = match &self.value {
            None => (0, "0".to_string()),
            Some((v, u)) => (*v, u.to_string()),
        };
        PAdicWire { p: self.p, v, unit, precision: self.precision }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PAdicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PAdicWire::deserialize(d)?;
        PAdicNumber::from_wire(w.p, w.v, &w.unit, w.precision).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use crate::scalar::ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tower(r: &[u64]) -> Arc<RadixTower> {
        Arc::new(RadixTower::new(r.to_vec()).unwrap())
    }

    fn int(t: &Arc<RadixTower>, a: i64) -> RAdicInt {
        RAdicInt::from_i64(t, a)
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn tower_validation() {
        assert!(RadixTower::new(vec![2, 1]).is_err());
        let t = tower(&[2, 3, 4]);
        let r: Vec<u64> = t.partials().iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(r, vec![1, 2, 6, 24]);
        assert_eq!(t.constant_radix(), None);
        assert_eq!(tower(&[3, 3]).constant_radix(), Some(3));
    }

    #[test]
    fn from_int_examples() {
        let t = tower(&[2, 3, 4]);
        assert_eq!(int(&t, 25).residue(), &BigUint::from(1u8));
        assert!(int(&t, 0).is_zero());
        assert_eq!(int(&t, -1).residue(), &BigUint::from(23u8));
        assert_eq!(int(&t, 25).coherent_sequence(), vec![0u8, 1, 1, 1].into_iter().map(BigUint::from).collect::<Vec<_>>());
    }

    #[test]
    fn arithmetic_examples() {
        let t3 = Arc::new(RadixTower::constant(3, 4).unwrap());
        let x = int(&t3, 5);
        assert!(x.add(&x.neg()).unwrap().is_zero());
        assert_eq!(x.mul(&int(&t3, 17)).unwrap(), int(&t3, 4));
        assert_eq!(radic_arith(&x, &int(&t3, 80), RadicOp::Sub).unwrap(), int(&t3, 6));
        let other = tower(&[3, 3, 3]);
        assert_eq!(x.add(&int(&other, 1)), Err(Error::TowerMismatch));
        assert!(RAdicInt::from_residue(&t3, BigUint::from(81u8)).is_err());
    }

    #[test]
    fn valuation_examples() {
        let t3 = Arc::new(RadixTower::constant(3, 4).unwrap());
        assert_eq!(int(&t3, 18).valuation(), 2);
        assert_eq!(int(&t3, 1).valuation(), 0);
        assert_eq!(int(&t3, 0).valuation(), 4);
        let t = tower(&[2, 3, 4]);
        assert_eq!(int(&t, 12).valuation(), 2);
    }

    #[test]
    fn abs_examples() {
        let t = tower(&[2, 3, 4]);
        let decay = t.default_decay();
        assert_eq!(int(&t, 12).abs(&decay).unwrap(), ratio(1, 6));
        assert_eq!(int(&t, 1).abs(&decay).unwrap(), ratio(1, 1));
        assert_eq!(int(&t, 0).abs(&decay).unwrap(), ratio(0, 1));
        let t3 = Arc::new(RadixTower::constant(3, 4).unwrap());
        assert_eq!(int(&t3, 18).abs(&t3.default_decay()).unwrap(), ratio(1, 9));
        let short = DecaySeq::new(vec![ratio(1, 1)]).unwrap();
        assert!(int(&t3, 18).abs(&short).is_err());
    }

    #[test]
    fn unit_inversion_examples() {
        let t3 = Arc::new(RadixTower::constant(3, 4).unwrap());
        assert_eq!(int(&t3, 2).invert_unit().unwrap(), int(&t3, 41));
        assert_eq!(int(&t3, 1).invert_unit().unwrap(), int(&t3, 1));
        let t = tower(&[2, 3, 4]);
        assert_eq!(int(&t, 5).invert_unit().unwrap(), int(&t, 5));
        assert_eq!(int(&t3, 6).invert_unit(), Err(Error::NotUnit { gcd: "3".into() }));
    }

    #[test]
    fn geometric_series_matches_euclid() {
        let t3 = Arc::new(RadixTower::constant(3, 6).unwrap());
        for l in -20i64..20 {
            let unit = int(&t3, 1 - 3 * l);
            let geo = geometric_inverse(&t3, &BigInt::from(l)).unwrap();
            assert_eq!(unit.invert_unit().unwrap(), geo);
        }
    }

    #[test]
    fn normalize_examples() {
        let x = qp_normalize(3, &ratio(18, 5), 4).unwrap();
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(x.unit(), Some(&BigUint::from(49u8)));
        assert_eq!(x.abs(), ratio(1, 9));
        let one = qp_normalize(3, &ratio(1, 1), 4).unwrap();
        assert_eq!((one.valuation(), one.unit().cloned()), (Some(0), Some(BigUint::one())));
        let pole = qp_normalize(3, &ratio(1, 3), 4).unwrap();
        assert_eq!((pole.valuation(), pole.unit().cloned()), (Some(-1), Some(BigUint::one())));
        assert_eq!(pole.abs(), ratio(3, 1));
        assert!(qp_normalize(3, &ratio(0, 1), 4).unwrap().is_zero());
        assert!(qp_normalize(4, &ratio(1, 2), 4).is_err());
    }

    #[test]
    fn padic_add_and_mul() {
        let q = |a, b| qp_normalize(5, &ratio(a, b), 8).unwrap();
        assert_eq!(q(2, 5).mul(&q(5, 3)).unwrap(), q(2, 3));
        assert_eq!(q(1, 5).add(&q(4, 5)).unwrap(), q(1, 1));
        assert_eq!(q(7, 25).add(&q(-7, 25)).unwrap(), PAdicNumber::zero(5, 8));
        assert_eq!(q(3, 1).neg(), q(-3, 1));
        assert_eq!(q(1, 10).add(&q(1, 2)).unwrap(), q(3, 5));
    }

    #[test]
    fn pairing_examples() {
        let t2 = Arc::new(RadixTower::constant(2, 8).unwrap());
        let half = qp_normalize(2, &ratio(1, 2), 8).unwrap();
        assert_eq!(char_pairing(&half, &int(&t2, 1)).unwrap(), c(-1.0, 0.0));

        let t3 = Arc::new(RadixTower::constant(3, 8).unwrap());
        let integral = qp_normalize(3, &ratio(7, 2), 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            assert_eq!(char_pairing(&integral, &RAdicInt::random(&t3, &mut rng)).unwrap(), c(1.0, 0.0));
        }
        let third = qp_normalize(3, &ratio(1, 3), 8).unwrap();
        let v = char_pairing(&third, &int(&t3, 2)).unwrap();
        assert!((v - crate::scalar::root_of_unity(2, 3)).norm() < 1e-12);
        assert_eq!(pairing_element(&third, &int(&t3, 2)).unwrap().angle(), ratio(2, 3));
    }

    #[test]
    fn pairing_precision_error() {
        let t3 = Arc::new(RadixTower::constant(3, 2).unwrap());
        let tiny = qp_normalize(3, &ratio(1, 27), 2).unwrap();
        assert!(matches!(char_pairing(&tiny, &int(&t3, 1)), Err(Error::PrecisionExceeded { .. })));
    }

    #[test]
    fn pairing_kernel_is_a_ball() {
        // |y|_p = p^j ⇒ φ_y vanishes exactly on p^j Z_p
        let t = Arc::new(RadixTower::constant(2, 6).unwrap());
        let y = qp_normalize(2, &ratio(3, 8), 6).unwrap();
        for x in 0..64 {
            let trivial = pairing_element(&y, &int(&t, x)).unwrap().numerator.is_zero();
            assert_eq!(trivial, x % 8 == 0, "x = {x}");
        }
    }

    #[test]
    fn haar_examples() {
        assert_eq!(haar_integral_exact(5, &[ratio(1, 1)], 3).unwrap(), ratio(1, 1));
        let alt = [c(1.0, 0.0), c(-1.0, 0.0)];
        assert_eq!(haar_integral(2, &alt, 1).unwrap(), c(0.0, 0.0));
        assert_eq!(haar_integral(2, &alt, 5).unwrap(), c(0.0, 0.0));
        for p in [2, 3, 5] {
            let ind = ball_indicator(p, 1, 0).unwrap();
            assert_eq!(haar_integral_exact(p, &ind, 3).unwrap(), ratio(1, p as i64));
        }
        assert!(haar_integral_exact(2, &ball_indicator(2, 3, 0).unwrap(), 2).is_err());
        assert!(haar_integral(3, &alt, 1).is_err());
        let mean = haar_integral_fn(3, 2, |x| c(x as f64, 0.0)).unwrap();
        assert!((mean - c(4.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zp_fourier_examples() {
        let s = zp_fourier(2, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(s.values, vec![c(0.5, 0.0), c(0.5, 0.0)]);
        let s = zp_fourier(3, &[c(1.0, 0.0); 9]).unwrap();
        assert!((s.values[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(s.values[1..].iter().all(|v| v.norm() < 1e-15));
        assert_eq!(s.character(3), PrueferElement::new(3, BigUint::one(), 1));
        assert!(zp_fourier(3, &[c(1.0, 0.0); 4]).is_err());
    }

    #[test]
    fn zp_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f: Vec<Complex> = (0..9).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let back = zp_inverse(&zp_fourier(3, &f).unwrap()).unwrap();
        assert!(back.iter().zip(&f).all(|(a, b)| (a - b).norm() < 1e-10));
    }

    #[test]
    fn qp_fourier_examples() {
        let scalar = QpTable::new(5, 0, 0, vec![c(2.0, -1.0)]).unwrap();
        assert_eq!(qp_fourier(&scalar).unwrap(), scalar);

        let ball = QpTable::unit_ball(2, 1, 1).unwrap();
        assert_eq!(ball.values, vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let hat = qp_fourier(&ball).unwrap();
        assert!(hat.values.iter().zip(&ball.values).all(|(a, b)| (a - b).norm() < 1e-10));
    }

    #[test]
    fn qp_unit_ball_is_self_dual_in_uneven_windows() {
        for (m, k) in [(1, 2), (2, 1), (0, 3), (3, 0)] {
            let ball = QpTable::unit_ball(3, m, k).unwrap();
            let hat = qp_fourier(&ball).unwrap();
            assert_eq!((hat.m, hat.k), (k, m));
            let want = QpTable::unit_ball(3, k, m).unwrap();
            assert!(hat.values.iter().zip(&want.values).all(|(a, b)| (a - b).norm() < 1e-10), "({m}, {k})");
        }
    }

    #[test]
    fn qp_double_transform_reflects() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (m, k) in [(2, 2), (1, 3), (0, 2)] {
            let vals = (0..1 << (m + k)).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let f = QpTable::new(2, m, k, vals).unwrap();
            let twice = qp_fourier(&qp_fourier(&f).unwrap()).unwrap();
            let refl = f.reflect();
            assert!(twice.values.iter().zip(&refl.values).all(|(a, b)| (a - b).norm() < 1e-9));
        }
    }

    #[test]
    fn qp_transform_matches_exact_pairing() {
        // direct evaluation of ∫ f(x) exp(−2πi{xξ}_p) dx at exact points
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let (p, m, k) = (3u64, 1usize, 1usize);
        let vals: Vec<Complex> = (0..9).map(|_| c(rng.gen_range(-1.0..1.0), 0.0)).collect();
        let f = QpTable::new(p, m, k, vals).unwrap();
        let hat = qp_fourier(&f).unwrap();
        for l in 0..9 {
            let xi = hat.point(l);
            let direct: Complex = (0..9)
                .map(|j| {
                    let angle = qp_pairing_angle(&f.point(j), &xi, p).unwrap();
                    f.values[j] * turn(&-angle) / 3.0
                })
                .sum();
            assert!((direct - hat.values[l]).norm() < 1e-12);
        }
    }

    #[test]
    fn prufer_reduction() {
        let e = PrueferElement::new(3, BigUint::from(6u8), 2);
        assert_eq!((e.numerator.clone(), e.level), (BigUint::from(2u8), 1));
        let z = PrueferElement::new(3, BigUint::from(9u8), 2);
        assert_eq!((z.numerator.clone(), z.level), (BigUint::zero(), 0));
        assert_eq!(z.eval(), c(1.0, 0.0));
    }

    #[test]
    fn json_schemas() {
        let t = tower(&[3, 3, 3]);
        let x = int(&t, 20);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"radices":[3,3,3],"residue":"20"}"#);
        assert_eq!(serde_json::from_str::<RAdicInt>(&s).unwrap(), x);
        assert!(serde_json::from_str::<RAdicInt>(r#"{"radices":[3],"residue":"3"}"#).is_err());

        let y = qp_normalize(3, &ratio(49, 9), 4).unwrap();
        let s = serde_json::to_string(&y).unwrap();
        assert_eq!(s, r#"{"p":3,"v":-2,"unit":"49","L":4}"#);
        assert_eq!(serde_json::from_str::<PAdicNumber>(&s).unwrap(), y);
        let d: PAdicNumber = serde_json::from_str(r#"{"p":3,"v":-2,"unit":"49"}"#).unwrap();
        assert_eq!(d.precision(), DEFAULT_PRIME_LEVELS);
        assert!(serde_json::from_str::<PAdicNumber>(r#"{"p":3,"v":0,"unit":"6"}"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn mixed_tower() -> impl Strategy<Value = Arc<RadixTower>> {
            proptest::collection::vec(2u64..7, 1..8).prop_map(|r| Arc::new(RadixTower::new(r).unwrap()))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn ring_homomorphism_and_coherence(t in mixed_tower(), a in -10_000i64..10_000, b in -10_000i64..10_000) {
                let (x, y) = (int(&t, a), int(&t, b));
                prop_assert_eq!(x.add(&y).unwrap(), int(&t, a + b));
                prop_assert_eq!(x.mul(&y).unwrap(), int(&t, a * b));
                prop_assert_eq!(x.sub(&y).unwrap(), int(&t, a - b));
                for op in [RadicOp::Add, RadicOp::Sub, RadicOp::Mul, RadicOp::Neg] {
                    let full = radic_arith(&x, &y, op).unwrap();
                    for l in 0..=t.levels() {
                        let low = radic_arith(&x.truncate(l), &y.truncate(l), op).unwrap();
                        prop_assert_eq!(full.truncate(l), low);
                    }
                }
            }

            #[test]
            fn distributivity(t in mixed_tower(), seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let (x, y, z) = (RAdicInt::random(&t, &mut rng), RAdicInt::random(&t, &mut rng), RAdicInt::random(&t, &mut rng));
                prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
            }

            #[test]
            fn mixed_radix_product_bound(t in mixed_tower(), seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let decay = t.default_decay();
                let (x, y) = (RAdicInt::random(&t, &mut rng), RAdicInt::random(&t, &mut rng));
                let xy = x.mul(&y).unwrap().abs(&decay).unwrap();
                let (ax, ay) = (x.abs(&decay).unwrap(), y.abs(&decay).unwrap());
                prop_assert!(xy <= ax.clone().min(ay.clone()));
                let s = x.add(&y).unwrap().abs(&decay).unwrap();
                prop_assert!(s <= ax.max(ay));
            }

            #[test]
            fn pairing_is_biadditive(seed in any::<u64>(), a in 1i64..500, b in 1i64..500, j in 0u32..4, k in 0u32..4) {
                let p = 3u64;
                let t = Arc::new(RadixTower::constant(p, 10).unwrap());
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let (x, x2) = (RAdicInt::random(&t, &mut rng), RAdicInt::random(&t, &mut rng));
                let y = qp_normalize(p, &ratio(a, 3i64.pow(j)), 10).unwrap();
                let y2 = qp_normalize(p, &ratio(b, 3i64.pow(k)), 10).unwrap();
                let lhs = char_pairing(&y, &x.add(&x2).unwrap()).unwrap();
                prop_assert!((lhs - char_pairing(&y, &x).unwrap() * char_pairing(&y, &x2).unwrap()).norm() < 1e-10);
                let lhs = char_pairing(&y.add(&y2).unwrap(), &x).unwrap();
                prop_assert!((lhs - char_pairing(&y, &x).unwrap() * char_pairing(&y2, &x).unwrap()).norm() < 1e-10);
                // trivial on Z_p iff v(y) ≥ 0
                let trivial = (0..27).all(|u| pairing_element(&y, &int(&t, u)).unwrap().numerator.is_zero());
                prop_assert_eq!(trivial, y.valuation().unwrap() >= 0);
            }

            #[test]
            fn ultrametric_equality_case(a in 1i64..729, b in 1i64..729) {
                let t = Arc::new(RadixTower::constant(3, 6).unwrap());
                let decay = t.default_decay();
                let (x, y) = (int(&t, a), int(&t, b));
                let (ax, ay) = (x.abs(&decay).unwrap(), y.abs(&decay).unwrap());
                let s = x.add(&y).unwrap().abs(&decay).unwrap();
                if ax != ay {
                    prop_assert_eq!(s, ax.max(ay));
                } else {
                    prop_assert!(s <= ax);
                }
            }
        }
    }
}
