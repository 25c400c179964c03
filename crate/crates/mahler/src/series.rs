//! Exact truncated power series: automatic-sequence generators, residual
//! verification of Mahler systems, and rational (Pade) reconstruction.
//!
//! A [`TruncatedSeries`] stores the coefficients of `z^0 .. z^{N-1}` exactly;
//! arithmetic never claims coefficients at or beyond the precision `N`.

use num_traits::{One, Zero};

use crate::error::{MahlerError, Result};
use crate::linalg::EchelonModP;
use crate::matrix::MahlerSystem;
use crate::poly::Poly;
use crate::rat::{parse_rat, rat_int, Rat, MOD_PRIMES};
use crate::ratfun::RatFun;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Rat>) -> Result<TruncatedSeries> {
        if coeffs.is_empty() {
            return Err(MahlerError::InsufficientPrecision { needed: 1, have: 0 });
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn zero(n: usize) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: vec![Rat::zero(); n.max(1)],
        }
    }

    pub fn one(n: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(n);
        s.coeffs[0] = Rat::one();
        s
    }

    /// Expansion of a rational function without a pole at the origin.
    pub fn from_ratfun(f: &RatFun, n: usize) -> Result<TruncatedSeries> {
        if n == 0 {
            return Err(MahlerError::InsufficientPrecision { needed: 1, have: 0 });
        }
        if f.is_zero() {
            return Ok(TruncatedSeries::zero(n));
        }
        let (v, pref) = f.laurent_prefix(n);
        if v < 0 {
            return Err(MahlerError::PoleStructure(format!(
                "{f} has a pole of order {} at the origin",
                -v
            )));
        }
        let mut coeffs = vec![Rat::zero(); n];
        for (k, c) in pref.into_iter().enumerate() {
            let idx = k + v as usize;
            if idx < n {
                coeffs[idx] = c;
            }
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn truncate(&self, n: usize) -> TruncatedSeries {
        assert!(n >= 1 && n <= self.coeffs.len(), "invalid truncation");
        TruncatedSeries {
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    /// Index of the first nonzero coefficient, `None` when zero to precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.precision().min(rhs.precision());
        TruncatedSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.precision().min(rhs.precision());
        TruncatedSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }

    pub fn mul(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.precision().min(rhs.precision());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, c: &Rat) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    /// Substitution `z -> z^p` by index dilation, at the same precision.
    pub fn substitute(&self, p: u32) -> TruncatedSeries {
        assert!(p >= 2, "Mahler radix must be at least 2");
        let n = self.precision();
        let p = p as usize;
        let mut coeffs = vec![Rat::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            match k.checked_mul(p) {
                Some(idx) if idx < n => coeffs[idx] = c.clone(),
                _ => break,
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Euler derivation: coefficient `k` is multiplied by `k`.
    pub fn theta(&self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * rat_int(k as i64))
                .collect(),
        }
    }

    /// Multiplication by `z^t` at unchanged precision (top coefficients fall off).
    pub fn shift_up(&self, t: usize) -> TruncatedSeries {
        let n = self.precision();
        let mut coeffs = vec![Rat::zero(); n];
        if t < n {
            coeffs[t..].clone_from_slice(&self.coeffs[..n - t]);
        }
        TruncatedSeries { coeffs }
    }

    /// The sign substitution `z -> -z`: flips odd-index coefficients.
    pub fn negate_z(&self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        }
    }

    /// One line per coefficient: `index numerator denominator`.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{} {} {}\n", k, c.numer(), c.denom()));
        }
        out
    }

    pub fn from_lines(text: &str) -> Result<TruncatedSeries> {
        let mut coeffs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(idx), Some(num), Some(den), None) =
                (parts.next(), parts.next(), parts.next(), parts.next())
            else {
                return Err(MahlerError::Parse(format!(
                    "series line {} must be `index numerator denominator`",
                    lineno + 1
                )));
            };
            let idx: usize = idx
                .parse()
                .map_err(|_| MahlerError::Parse(format!("bad index on line {}", lineno + 1)))?;
            if idx != coeffs.len() {
                return Err(MahlerError::Parse(format!(
                    "series indices must be contiguous from 0; got {idx} at position {}",
                    coeffs.len()
                )));
            }
            coeffs.push(parse_rat(&format!("{num}/{den}"))?);
        }
        TruncatedSeries::new(coeffs)
    }

    /// Compact single-line form: space-separated rationals.
    pub fn to_compact(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn from_compact(text: &str) -> Result<TruncatedSeries> {
        let coeffs = text
            .split_whitespace()
            .map(parse_rat)
            .collect::<Result<Vec<_>>>()?;
        TruncatedSeries::new(coeffs)
    }
}

/// Generating series of the Baum-Sweet sequence to order `n`:
/// `a_0 = 1`, `a_{2k+1} = a_k`, `a_{4k} = a_k`, `a_{4k+2} = 0`.
pub fn gen_baum_sweet(n: usize) -> TruncatedSeries {
    assert!(n >= 1);
    let mut a = vec![0i64; n];
    a[0] = 1;
    for k in 1..n {
        a[k] = if k % 2 == 1 {
            a[(k - 1) / 2]
        } else if k % 4 == 0 {
            a[k / 4]
        } else {
            0
        };
    }
    TruncatedSeries {
        coeffs: a.into_iter().map(rat_int).collect(),
    }
}

/// Generating series of the Rudin-Shapiro sequence to order `n`:
/// `a_0 = 1`, `a_{2k} = a_k`, `a_{2k+1} = (-1)^k a_k`.
pub fn gen_rudin_shapiro(n: usize) -> TruncatedSeries {
    assert!(n >= 1);
    let mut a = vec![0i64; n];
    a[0] = 1;
    for k in 1..n {
        // a_{2m} = a_m and a_{2m+1} = (-1)^m a_m: the sign flips only on the
        // odd-index rule with odd m.
        let half = k / 2;
        a[k] = if k % 2 == 1 && half % 2 == 1 {
            -a[half]
        } else {
            a[half]
        };
    }
    TruncatedSeries {
        coeffs: a.into_iter().map(rat_int).collect(),
    }
}

/// Residual valuation of `phi(Y) - A Y` for a candidate solution vector.
///
/// Entries of `A` with poles at the origin are handled by clearing the common
/// `z`-power before comparison; the returned valuation is expressed on the
/// original (uncleared) scale, so a residual that vanishes to the working
/// precision `N` reports `N - h` where `h` is the cleared pole order.
pub fn verify_series_solution(
    sys: &MahlerSystem,
    y: &[TruncatedSeries],
    n: usize,
) -> Result<i64> {
    let dim = sys.dim();
    if y.len() != dim {
        return Err(MahlerError::ShapeMismatch(format!(
            "system dimension {dim} vs {} series",
            y.len()
        )));
    }
    let mut eff = n;
    for s in y {
        eff = eff.min(s.precision());
    }
    if eff == 0 {
        return Err(MahlerError::InsufficientPrecision { needed: 1, have: 0 });
    }
    // Common z-power clearing the poles of A at the origin.
    let mut h: usize = 0;
    for e in sys.matrix().entries() {
        if !e.is_zero() {
            let v = e.ord_at_zero().expect("nonzero entry");
            if v < 0 {
                h = h.max((-v) as usize);
            }
        }
    }
    let p = sys.p();
    let mut min_val: usize = eff;
    for i in 0..dim {
        // z^h * phi(Y_i)
        let mut residual = y[i].truncate(eff).substitute(p).shift_up(h);
        for (j, yj) in y.iter().enumerate() {
            let a = sys.matrix().at(i, j);
            if a.is_zero() {
                continue;
            }
            // z^h * A_ij as a power series.
            let (v, pref) = a.laurent_prefix(eff);
            let start = (v + h as i64) as usize;
            let mut av = vec![Rat::zero(); eff];
            for (k, c) in pref.into_iter().enumerate() {
                let idx = k + start;
                if idx < eff {
                    av[idx] = c;
                }
            }
            let a_series = TruncatedSeries { coeffs: av };
            residual = residual.sub(&a_series.mul(&yj.truncate(eff)));
        }
        if let Some(v) = residual.valuation() {
            min_val = min_val.min(v);
        }
    }
    Ok(min_val as i64 - h as i64)
}

/// Bounded rational reconstruction: a function with numerator degree at most
/// `dmax_num` and denominator degree at most `dmax_den` whose expansion
/// matches every available coefficient of `s`, or `None`.
///
/// Any returned value is re-expanded and checked against the full input. A
/// `None` is backed either by full column rank of the matching system modulo
/// a large prime (which forces full rank over the rationals) or by an exact
/// reconstruction attempt that fails the full-match check.
pub fn pade_reconstruct(
    s: &TruncatedSeries,
    dmax_num: usize,
    dmax_den: usize,
) -> Result<Option<RatFun>> {
    let n = s.precision();
    let needed = dmax_num + dmax_den + 2;
    if n < needed {
        return Err(MahlerError::InsufficientPrecision { needed, have: n });
    }
    if s.valuation().is_none() {
        return Ok(Some(RatFun::zero()));
    }
    if trivial_kernel_mod(s, dmax_num, dmax_den) {
        return Ok(None);
    }
    let k = dmax_num + dmax_den + 1;
    let (p_poly, q_poly) = pade_eea(s, k, dmax_num);
    if q_poly.is_zero() {
        return Ok(None);
    }
    let cand = RatFun::new(p_poly, q_poly)?;
    if cand.num().degree_or_zero() > dmax_num || cand.den().degree_or_zero() > dmax_den {
        return Ok(None);
    }
    if cand.den().ord_at_zero() != Some(0) {
        return Ok(None);
    }
    match TruncatedSeries::from_ratfun(&cand, n) {
        Ok(expansion) if expansion == s.truncate(n) => Ok(Some(cand)),
        _ => Ok(None),
    }
}

/// Extended Euclid on `(z^k, s mod z^k)`, stopping at remainder degree
/// `<= dmax_num`; returns the remainder and the cofactor of `s`.
fn pade_eea(s: &TruncatedSeries, k: usize, dmax_num: usize) -> (Poly, Poly) {
    let mut r_prev = Poly::monomial(rat_int(1), k);
    let mut r_cur = Poly::from_coeffs(s.coeffs()[..k].to_vec());
    let mut v_prev = Poly::zero();
    let mut v_cur = Poly::one();
    while r_cur.degree().is_some_and(|d| d > dmax_num) {
        let (q, rem) = r_prev.divrem(&r_cur);
        let v_next = &v_prev - &(&q * &v_cur);
        r_prev = r_cur;
        r_cur = rem;
        v_prev = v_cur;
        v_cur = v_next;
    }
    (r_cur, v_cur)
}

/// True when the coefficient-matching kernel is provably trivial: the Toeplitz
/// system over all rows `dmax_num+1 .. n-1` has full column rank modulo a
/// prime not dividing any coefficient denominator.
fn trivial_kernel_mod(s: &TruncatedSeries, dmax_num: usize, dmax_den: usize) -> bool {
    let n = s.precision();
    let cols = dmax_den + 1;
    'primes: for &p in MOD_PRIMES.iter() {
        let mut residues = Vec::with_capacity(n);
        for c in s.coeffs() {
            match crate::rat::rat_mod(c, p) {
                Some(r) => residues.push(r),
                None => continue 'primes,
            }
        }
        let mut ech = EchelonModP::new(p);
        for row_k in dmax_num + 1..n {
            let row: Vec<u64> = (0..cols)
                .map(|i| if i <= row_k { residues[row_k - i] } else { 0 })
                .collect();
            ech.insert(row);
            if ech.rank() == cols {
                return true;
            }
        }
        return false;
    }
    false
}
