//! Exact scalar fields: the rationals and prime fields F_p.
//!
//! Every scalar is stored as a [`BigRational`]; over F_p the value is kept as
//! an integer in `[0, p)`. Vectors are row vectors and matrices are lists of
//! rows, so a vector `v` in canonical coordinates is sent to `v·M`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;
pub type Vector = Vec<Scalar>;
pub type Matrix = Vec<Vector>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.normalize(Scalar::from_integer(BigInt::from(n)))
    }

    /// Brings an arbitrary rational into the canonical representative.
    pub fn normalize(&self, x: Scalar) -> Scalar {
        match self {
            Field::Rationals => x,
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                let inv = mod_inverse(&den, &p).expect("denominator divisible by p");
                Scalar::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a * b)
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        Some(self.normalize(a.recip()))
    }

    /// Parses `"3"`, `"-2"` or `"3/2"`. Over F_p the denominator must be a unit.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::domain(format!("invalid scalar {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        if let Field::Prime(p) = self {
            if den.mod_floor(&BigInt::from(*p)).is_zero() {
                return Err(Error::domain(format!(
                    "scalar {s:?} has denominator divisible by {p}"
                )));
            }
        }
        Ok(self.normalize(Scalar::new(num, den)))
    }

    pub fn format(&self, x: &Scalar) -> String {
        if x.is_integer() {
            x.numer().to_string()
        } else {
            format!("{}/{}", x.numer(), x.denom())
        }
    }

    pub fn zero_vector(&self, n: usize) -> Vector {
        vec![Scalar::zero(); n]
    }

    pub fn unit_vector(&self, n: usize, i: usize) -> Vector {
        let mut v = self.zero_vector(n);
        v[i] = Scalar::one();
        v
    }

    pub fn identity_matrix(&self, n: usize) -> Matrix {
        (0..n).map(|i| self.unit_vector(n, i)).collect()
    }

    pub fn axpy(&self, acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            *a = self.add(a, &self.mul(c, x));
        }
    }

    /// Row vector times matrix.
    pub fn vec_mat(&self, v: &[Scalar], m: &Matrix, cols: usize) -> Vector {
        let mut out = self.zero_vector(cols);
        for (c, row) in v.iter().zip(m) {
            self.axpy(&mut out, c, row);
        }
        out
    }

    pub fn mat_mul(&self, a: &Matrix, b: &Matrix, cols: usize) -> Matrix {
        a.iter().map(|row| self.vec_mat(row, b, cols)).collect()
    }

    /// Gauss-Jordan inverse of a square matrix; `None` when singular.
    pub fn invert(&self, m: &Matrix) -> Option<Matrix> {
        let n = m.len();
        if m.iter().any(|r| r.len() != n) {
            return None;
        }
        let mut a: Matrix = m.clone();
        let mut inv = self.identity_matrix(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = self.inv(&a[col][col])?;
            for j in 0..n {
                a[col][j] = self.mul(&a[col][j], &p);
                inv[col][j] = self.mul(&inv[col][j], &p);
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        let t = self.mul(&f, &a[col][j]);
                        a[r][j] = self.sub(&a[r][j], &t);
                        let t = self.mul(&f, &inv[col][j]);
                        inv[r][j] = self.sub(&inv[r][j], &t);
                    }
                }
            }
        }
        Some(inv)
    }

    pub fn rank(&self, m: &Matrix) -> usize {
        let mut a = m.clone();
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, pivot);
            let p = self.inv(&a[rank][col]).unwrap();
            for r in rank + 1..rows {
                if !a[r][col].is_zero() {
                    let f = self.mul(&a[r][col], &p);
                    for j in col..cols {
                        let t = self.mul(&f, &a[rank][j]);
                        a[r][j] = self.sub(&a[r][j], &t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(p);
    if !e.gcd.abs().is_one() {
        return None;
    }
    Some(e.x.mod_floor(p))
}

/// Small helper for tests and fixtures: an integer scalar as `i64` when possible.
pub fn as_i64(x: &Scalar) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_parses_and_reduces() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.format(&f.parse("7").unwrap()), "2");
        assert_eq!(f.format(&f.parse("-1").unwrap()), "4");
        // 1/2 = 3 in F_5
        assert_eq!(f.format(&f.parse("1/2").unwrap()), "3");
        assert!(f.parse("1/5").is_err());
        assert!(Field::prime(4).is_err());
    }

    #[test]
    fn rationals_normalize_fractions() {
        let f = Field::Rationals;
        assert_eq!(f.format(&f.parse("2/4").unwrap()), "1/2");
        assert_eq!(f.format(&f.parse("-6/3").unwrap()), "-2");
        assert!(f.parse("1/0").is_err());
        assert!(f.parse("x").is_err());
    }

    #[test]
    fn inverse_over_f2() {
        let f = Field::prime(2).unwrap();
        let m = vec![vec![f.one(), f.zero()], vec![f.one(), f.one()]];
        let inv = f.invert(&m).unwrap();
        // the matrix is its own inverse in characteristic 2
        assert_eq!(inv, m);
        let singular = vec![vec![f.one(), f.one()], vec![f.one(), f.one()]];
        assert!(f.invert(&singular).is_none());
        assert_eq!(f.rank(&singular), 1);
    }
}
