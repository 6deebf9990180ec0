//! Numeric backends.
//!
//! Every algebraic routine in this crate is generic over [`Scalar`]. Two
//! backends are provided: [`Rational`] (arbitrary precision, exact, the only
//! backend used to adjudicate group laws) and `f64` (simulation and reporting).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number with big-integer numerator and denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as a number: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub reason: &'static str,
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// `true` when arithmetic is exact and equality is decidable.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    /// `n / d`; panics when `d == 0`.
    fn ratio(n: i64, d: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;

    fn parse_scalar(s: &str) -> Result<Self, ParseScalarError>;

    /// Canonical text form: `n` or `n/d` for rationals, shortest round-trip
    /// decimal for floats.
    fn render(&self) -> String;

    /// Zero test. Exact backends ignore `scale` and `rel_tol`; floats treat
    /// `|self| <= rel_tol * scale` as zero.
    fn is_negligible(&self, scale: f64, rel_tol: f64) -> bool;

    /// Rank of a dense row-major matrix.
    fn rank(rows: &[Vec<Self>], rel_tol: f64) -> usize;

    fn half() -> Self {
        Self::ratio(1, 2)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratio(n: i64, d: i64) -> Self {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn parse_scalar(s: &str) -> Result<Self, ParseScalarError> {
        parse_rational(s.trim()).ok_or_else(|| ParseScalarError {
            input: s.to_string(),
            reason: "expected an integer, a fraction n/d, or a decimal",
        })
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn is_negligible(&self, _scale: f64, _rel_tol: f64) -> bool {
        self.is_zero()
    }

    fn rank(rows: &[Vec<Self>], _rel_tol: f64) -> usize {
        let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
        bareiss_rank(ints)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        n as f64 / d as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn parse_scalar(s: &str) -> Result<Self, ParseScalarError> {
        let s = s.trim();
        if let Some(r) = parse_rational(s) {
            return Ok(Scalar::to_f64(&r));
        }
        s.parse::<f64>().map_err(|_| ParseScalarError {
            input: s.to_string(),
            reason: "expected a floating-point number or a fraction n/d",
        })
    }

    fn render(&self) -> String {
        format!("{self}")
    }

    fn is_negligible(&self, scale: f64, rel_tol: f64) -> bool {
        f64::abs(*self) <= rel_tol * scale
    }

    fn rank(rows: &[Vec<Self>], rel_tol: f64) -> usize {
        let mut m: Vec<Vec<f64>> = rows.to_vec();
        let scale = m
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, v| acc.max(f64::abs(*v)));
        if scale == 0.0 {
            return 0;
        }
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            if rank == m.len() {
                break;
            }
            let (pivot, best) = (rank..m.len())
                .map(|r| (r, f64::abs(m[r][col])))
                .fold((rank, -1.0), |a, b| if b.1 > a.1 { b } else { a });
            if best <= rel_tol * scale {
                continue;
            }
            m.swap(rank, pivot);
            let pivot_row = m[rank].clone();
            for row in m.iter_mut().skip(rank + 1) {
                let factor = row[col] / pivot_row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= factor * p;
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Parses integers, `n/d` fractions and decimals (optionally with exponent)
/// exactly.
fn parse_rational(s: &str) -> Option<Rational> {
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Some(if negative { -value } else { value })
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect()
}

/// Fraction-free (Bareiss) elimination; every intermediate stays integral.
fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| m[r][col].sign() != Sign::NoSign) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}
