use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial in `q` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn from_integers(coeffs: &[i64]) -> Self {
        let mut p = Polynomial { coeffs: coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect() };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Integer coefficients, if all coefficients are integral and fit in `i64`.
    pub fn integer_coefficients(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect()
    }

    pub fn eval(&self, q: i64) -> BigRational {
        let x = BigRational::from_integer(q.into());
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Value at `q = 1`, the Euler characteristic of a polynomial-count variety.
    pub fn euler_characteristic(&self) -> Option<i64> {
        let v = self.eval(1);
        if v.is_integer() {
            v.to_integer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = a.is_one();
            if !unit || d == 0 {
                write!(f, "{a}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{d}")?,
            }
        }
        Ok(())
    }
}

/// Interpolates point counts `(q, |X(F_q)|)` by a polynomial of degree at most
/// `degree_bound`, using the first `degree_bound + 1` points and checking the rest.
pub fn interpolate_count(points: &[(u64, u64)], degree_bound: usize) -> Result<Polynomial> {
    let mut seen = std::collections::BTreeSet::new();
    for &(q, _) in points {
        if !seen.insert(q) {
            return Err(Error::Interpolation(format!("repeated abscissa q={q}")));
        }
    }
    if points.len() < degree_bound + 1 {
        return Err(Error::InsufficientPoints { needed: degree_bound + 1, got: points.len() });
    }
    let used = &points[..degree_bound + 1];
    let xs: Vec<BigRational> = used.iter().map(|&(q, _)| BigRational::from_integer(BigInt::from(q))).collect();
    let mut coeffs = vec![BigRational::zero(); used.len()];
    // Lagrange basis expanded into monomials
    for (i, &(_, y)) in used.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xj;
            }
            basis = next;
            denom *= &xs[i] - xj;
        }
        let scale = BigRational::from_integer(BigInt::from(y)) / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    let mut poly = Polynomial { coeffs };
    poly.trim();
    for &(q, y) in &points[degree_bound + 1..] {
        let v = poly.eval(q as i64);
        if v != BigRational::from_integer(BigInt::from(y)) {
            return Err(Error::InconsistentCount { q, got: y, predicted: v.to_string() });
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_from_four_primes() {
        let p = interpolate_count(&[(2, 25), (3, 61), (5, 211), (7, 505)], 3).unwrap();
        assert_eq!(p, Polynomial::from_integers(&[1, 2, 3, 1]));
        assert_eq!(p.to_string(), "q^3 + 3q^2 + 2q + 1");
        assert_eq!(p.euler_characteristic(), Some(7));
    }

    #[test]
    fn cube_of_q_plus_one() {
        let p = interpolate_count(&[(2, 27), (3, 64), (5, 216), (7, 512)], 3).unwrap();
        assert_eq!(p, Polynomial::from_integers(&[1, 3, 3, 1]));
        assert_eq!(p.euler_characteristic(), Some(8));
    }

    #[test]
    fn constant_counts() {
        let p = interpolate_count(&[(2, 1), (3, 1), (5, 1)], 2).unwrap();
        assert_eq!(p.degree(), Some(0));
        assert_eq!(p.to_string(), "1");
    }

    #[test]
    fn errors() {
        assert!(matches!(interpolate_count(&[(2, 1)], 1), Err(Error::InsufficientPoints { .. })));
        assert!(matches!(
            interpolate_count(&[(2, 3), (3, 4), (5, 7)], 1),
            Err(Error::InconsistentCount { q: 5, .. })
        ));
    }

    #[test]
    fn display_negative_terms() {
        assert_eq!(Polynomial::from_integers(&[1, -1, 1]).to_string(), "q^2 - q + 1");
        assert_eq!(Polynomial::from_integers(&[]).to_string(), "0");
    }
}
