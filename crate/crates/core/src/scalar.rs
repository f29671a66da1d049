//! Scalars shared by every other module: exact rationals, `f64` complex
//! values, the exponential series and roots of unity.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;
pub type Rational = num_rational::BigRational;

/// Largest modulus accepted by [`exp_approx`].
pub const EXP_RANGE: f64 = 64.0;

/// Partial sum of `Σ z^j / j!`, stopped once the geometric tail bound
/// `|z|^j/j! · 1/(1 − |z|/(j+1))` drops below `tol`.
///
/// The bound covers truncation only; for large `|z|` with negative real part
/// the summands cancel and rounding dominates.
pub fn exp_approx(z: Complex, tol: f64) -> Result<Complex> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol must be positive, got {tol}")));
    }
    let r = z.norm();
    if !r.is_finite() || r > EXP_RANGE {
        return Err(Error::Domain { value: r, limit: EXP_RANGE });
    }
    let mut sum = Complex::new(0.0, 0.0);
    let mut term = Complex::new(1.0, 0.0);
    let mut j = 0u32;
    loop {
        sum += term;
        j += 1;
        term *= z / f64::from(j);
        let next = f64::from(j + 1);
        if r < next {
            let bound = term.norm() / (1.0 - r / next);
            if bound < tol {
                return Ok(sum);
            }
        }
    }
}

/// `exp(2πi k/n)`. Multiples of a quarter turn are returned exactly.
pub fn root_of_unity(k: i64, n: u64) -> Complex {
    assert!(n >= 1, "root_of_unity needs n >= 1");
    let n_i = i128::from(n);
    let k = i128::from(k).rem_euclid(n_i);
    if (4 * k) % n_i == 0 {
        return match 4 * k / n_i {
            0 => Complex::new(1.0, 0.0),
            1 => Complex::new(0.0, 1.0),
            2 => Complex::new(-1.0, 0.0),
            _ => Complex::new(0.0, -1.0),
        };
    }
    let (s, c) = (TAU * (k as f64) / (n as f64)).sin_cos();
    Complex::new(c, s)
}

pub fn modulus(z: Complex) -> f64 {
    z.norm()
}

/// Reduces a rational angle (in turns) into `[0, 1)`.
pub fn frac(angle: &Rational) -> Rational {
    angle - angle.floor()
}

/// `exp(2πi·angle)` for an exact angle measured in turns. The angle is
/// reduced exactly before the single floating-point evaluation.
pub fn turn(angle: &Rational) -> Complex {
    let a = frac(angle);
    let num = a.numer();
    let den = a.denom();
    match (i64::try_from(num), u64::try_from(den)) {
        (Ok(k), Ok(n)) => root_of_unity(k, n),
        _ => {
            let x = rational_to_f64(&a);
            let (s, c) = (TAU * x).sin_cos();
            Complex::new(c, s)
        }
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // numerator and denominator too large individually; scale down
        let shift = q.denom().bits().max(q.numer().bits()).saturating_sub(1000);
        let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `p/q` with `gcd` normalisation and positive denominator.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_reduced(q: &Rational) -> bool {
    q.denom().is_positive() && q.numer().gcd(q.denom()) == BigInt::from(1)
}

/// Serde adapter writing a [`Rational`] as `"num/den"`.
pub mod rational_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>` as a list of `"num/den"` strings.
pub mod rational_vec {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(qs.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
