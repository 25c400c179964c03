//! Dense univariate polynomials over the exact rationals.
//!
//! Coefficients are stored by ascending degree with a nonzero leading
//! coefficient; the zero polynomial is the empty list and its degree is the
//! distinguished sentinel `None` rather than `-1`. The Mahler substitution
//! `z -> z^p` is index dilation, so it stays linear in the degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rat::{fmt_rat, rat_int, Rat};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    /// Coefficient of `z^k` at index `k`; empty means the zero polynomial.
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(rat_int(1))
    }

    /// The variable `z`.
    pub fn var() -> Poly {
        Poly::monomial(rat_int(1), 1)
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(c: Rat, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Builds a polynomial from ascending coefficients, trimming leading zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with `None` as the sentinel for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a polynomial known to be nonzero.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Order of vanishing at `z = 0`; `None` for the zero polynomial.
    pub fn ord_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True for `c * z^k` with `c != 0`.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Constant term.
    pub fn eval0(&self) -> Rat {
        self.coeff(0)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `z^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Exact division by `z^k`; panics unless `z^k` divides `self`.
    pub fn shift_down(&self, k: usize) -> Poly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        assert!(
            self.ord_at_zero().is_none_or(|o| o >= k),
            "shift_down would truncate nonzero coefficients"
        );
        Poly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// The Mahler substitution `z -> z^p` as index dilation.
    pub fn dilate(&self, p: u32) -> Poly {
        let p = p as usize;
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); (self.coeffs.len() - 1) * p + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[k * p] = c.clone();
            }
        }
        Poly { coeffs }
    }

    /// Euler derivation `z d/dz`: coefficient `k` picks up a factor `k`.
    pub fn theta(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * rat_int(k as i64))
                .collect(),
        )
    }

    /// Ordinary derivative `d/dz`.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * rat_int(k as i64 + 1))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    ///
    /// Panics when dividing by the zero polynomial.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        let dd = div.degree().expect("division by the zero polynomial");
        if self.degree().is_none() || self.degree().unwrap() < dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = Rat::one() / div.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] * &lead_inv;
            for i in 0..dd {
                let sub = &q * &div.coeffs[i];
                rem[k - dd + i] = &rem[k - dd + i] - &sub;
            }
            rem[k] = Rat::zero();
            quot[k - dd] = q;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, div: &Poly) -> Poly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Scales so the leading coefficient is 1; the zero polynomial is unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = Rat::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor via the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (&self.div_exact(&g) * other).monic()
    }

    /// First `n` coefficients of the power-series inverse.
    ///
    /// Requires a nonzero constant term.
    pub fn series_inverse(&self, n: usize) -> Vec<Rat> {
        let c0 = self.coeff(0);
        assert!(!c0.is_zero(), "series inverse needs a unit constant term");
        let c0_inv = Rat::one() / c0;
        let mut inv = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                inv.push(c0_inv.clone());
                continue;
            }
            let mut acc = Rat::zero();
            for i in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                acc += &self.coeffs[i] * &inv[k - i];
            }
            inv.push(-acc * &c0_inv);
        }
        inv
    }

    /// Sum of numerator sizes, used for bound heuristics.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl fmt::Display for Poly {
    /// Renders in descending powers, re-parseable by the expression grammar,
    /// e.g. `2*z^3 - z + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{}", fmt_rat(&mag))?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{}*z", fmt_rat(&mag))?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{}*z^{k}", fmt_rat(&mag))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
        assert_eq!(p(&[0, 0, 3]).degree(), Some(2));
        assert_eq!(Poly::from_coeffs(vec![rat_int(0); 4]).degree(), None);
    }

    #[test]
    fn arithmetic_and_division() {
        let a = p(&[1, 2, 1]); // (1+z)^2
        let b = p(&[1, 1]);
        assert_eq!(a.div_exact(&b), b);
        let (q, r) = p(&[1, 0, 0, 1]).divrem(&p(&[1, 1]));
        assert_eq!(&(&q * &p(&[1, 1])) + &r, p(&[1, 0, 0, 1]));
        assert_eq!(r, Poly::zero()); // 1+z divides 1+z^3
    }

    #[test]
    fn gcd_is_monic() {
        let a = p(&[2, 2]); // 2(1+z)
        let b = p(&[3, 0, -3]); // -3(z^2-1)
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[0]).gcd(&p(&[7])), Poly::one());
        assert_eq!(Poly::zero().gcd(&Poly::zero()), Poly::zero());
    }

    #[test]
    fn dilation_and_theta() {
        let f = p(&[1, 1]); // 1+z
        assert_eq!(f.dilate(2), p(&[1, 0, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).theta(), p(&[0, 0, 0, 3])); // theta z^3 = 3 z^3
        assert_eq!(p(&[7]).theta(), Poly::zero());
    }

    #[test]
    fn series_inverse_matches_geometric_series() {
        let inv = p(&[1, -1]).series_inverse(5);
        assert!(inv.iter().all(|c| c.is_one())); // 1/(1-z) = 1 + z + z^2 + ...
    }

    #[test]
    fn display_is_parseable_shape() {
        assert_eq!(p(&[1, -2, 1]).to_string(), "z^2 - 2*z + 1");
        assert_eq!(p(&[0]).to_string(), "0");
        assert_eq!(p(&[0, -1]).to_string(), "-z");
        assert_eq!(
            Poly::from_coeffs(vec![rat(1, 2), rat(-3, 2)]).to_string(),
            "-3/2*z + 1/2"
        );
    }
}
