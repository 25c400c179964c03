//! Normalized rational functions over the exact rationals.
//!
//! The representation is unique: numerator and denominator are coprime and the
//! denominator is monic, so structural equality decides functional equality.
//! The two operators the rest of the crate is built on live here:
//!
//! - [`RatFun::mahler_substitute`]: `f(z) -> f(z^p)` for a radix `p >= 2`;
//! - [`RatFun::theta_derive`]: the Euler derivation `z d/dz`.
//!
//! They satisfy the commutation law `theta . phi_p = p * (phi_p . theta)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{MahlerError, Result};
use crate::poly::Poly;
use crate::rat::{rat_int, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

/// Factorization `a = c * z^m * l` with `l(0) = 1` and `l` free of zeros and
/// poles at the origin; recomposition is exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialDecomposition {
    pub c: Rat,
    pub m: i64,
    pub l: RatFun,
}

impl MonomialDecomposition {
    /// Reassembles `c * z^m * l`.
    pub fn recompose(&self) -> RatFun {
        &(&RatFun::constant(self.c.clone()) * &RatFun::monomial_zm(self.m)) * &self.l
    }
}

impl RatFun {
    /// Builds `num/den`, normalizing to the unique representative.
    pub fn new(num: Poly, den: Poly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(MahlerError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> RatFun {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead = den.leading().expect("nonzero denominator").clone();
        if !lead.is_one() {
            let inv = Rat::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn zero() -> RatFun {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RatFun {
        RatFun {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn var() -> RatFun {
        RatFun {
            num: Poly::var(),
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> RatFun {
        RatFun {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> RatFun {
        RatFun::constant(rat_int(n))
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    /// `z^m` for a possibly negative exponent.
    pub fn monomial_zm(m: i64) -> RatFun {
        if m >= 0 {
            RatFun::from_poly(Poly::monomial(rat_int(1), m as usize))
        } else {
            RatFun {
                num: Poly::one(),
                den: Poly::monomial(rat_int(1), (-m) as usize),
            }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.degree().is_none_or(|d| d == 0)
    }

    /// Sum of numerator and denominator degrees; a size measure for bounds.
    pub fn total_degree(&self) -> usize {
        self.num.degree_or_zero() + self.den.degree_or_zero()
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(MahlerError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Result<RatFun> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = RatFun::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// The Mahler substitution `f(z) -> f(z^p)`.
    pub fn mahler_substitute(&self, p: u32) -> RatFun {
        assert!(p >= 2, "Mahler radix must be at least 2");
        // Dilation preserves coprimality and only rescales the leading
        // coefficient position, so renormalization is cheap.
        Self::normalized(self.num.dilate(p), self.den.dilate(p))
    }

    /// The Euler derivation `theta = z d/dz`.
    pub fn theta_derive(&self) -> RatFun {
        if self.is_zero() {
            return RatFun::zero();
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let num = num.shift_up(1);
        Self::normalized(num, &self.den * &self.den)
    }

    /// Valuation at `z = 0`: negative for a pole.
    pub fn ord_at_zero(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(MahlerError::ZeroInput);
        }
        let a = self.num.ord_at_zero().expect("nonzero numerator") as i64;
        let b = self.den.ord_at_zero().expect("nonzero denominator") as i64;
        Ok(a - b)
    }

    /// Writes a nonzero function as `c * z^m * l` with `l(0) = 1`.
    pub fn monomial_decompose(&self) -> Result<MonomialDecomposition> {
        if self.is_zero() {
            return Err(MahlerError::ZeroInput);
        }
        let an = self.num.ord_at_zero().expect("nonzero numerator");
        let ad = self.den.ord_at_zero().expect("nonzero denominator");
        let n1 = self.num.shift_down(an);
        let d1 = self.den.shift_down(ad);
        let c = n1.eval0() / d1.eval0();
        let c_inv = Rat::one() / c.clone();
        let l = Self::normalized(n1.scale(&c_inv), d1);
        Ok(MonomialDecomposition {
            c,
            m: an as i64 - ad as i64,
            l,
        })
    }

    /// True iff the function is `c * z^m` for a nonzero constant `c`.
    pub fn is_monomial(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(MahlerError::ZeroInput);
        }
        Ok(self.num.is_monomial() && self.den.is_monomial())
    }

    /// Value at the origin for functions with no pole there.
    pub fn eval0(&self) -> Result<Rat> {
        let d0 = self.den.eval0();
        if d0.is_zero() {
            return Err(MahlerError::DivisionByZero);
        }
        Ok(self.num.eval0() / d0)
    }

    /// Laurent expansion at the origin: returns `(v, coeffs)` such that
    /// `f = z^v * sum coeffs[k] z^k` with `coeffs[0] != 0`, to `n` terms.
    ///
    /// The zero function expands as `(0, [])`.
    pub fn laurent_prefix(&self, n: usize) -> (i64, Vec<Rat>) {
        if self.is_zero() {
            return (0, Vec::new());
        }
        let an = self.num.ord_at_zero().expect("nonzero numerator");
        let ad = self.den.ord_at_zero().expect("nonzero denominator");
        let n1 = self.num.shift_down(an);
        let d1 = self.den.shift_down(ad);
        let inv = d1.series_inverse(n);
        let mut out = vec![Rat::zero(); n];
        for (i, a) in n1.coeffs().iter().enumerate() {
            if a.is_zero() || i >= n {
                continue;
            }
            for (j, b) in inv.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        (an as i64 - ad as i64, out)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RatFun::normalized(num, &self.den * &rhs.den)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        // Cross-reduce before multiplying to keep degrees small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.div_exact(&g1) * &rhs.num.div_exact(&g2);
        let den = &self.den.div_exact(&g2) * &rhs.den.div_exact(&g1);
        RatFun::normalized(num, den)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    /// Panics on division by zero; use [`RatFun::inv`] for a fallible route.
    #[allow(clippy::suspicious_arithmetic_impl)] // division as multiply-by-inverse
    fn div(self, rhs: &RatFun) -> RatFun {
        self * &rhs.inv().expect("division by the zero function")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}
