//! Algebro-differential relation falsifier for truncated series.
//!
//! Enumerates every monomial of total degree at most `D` in the quantities
//! `theta^j(g_i)` for `j <= r`, multiplies by `z`-powers up to degree `e`,
//! and looks for exact rational nullspace vectors of the coefficient matrix
//! truncated at order `N`. An empty answer is evidence, not proof, and the
//! report carries the full search parameters so runs are reproducible.
//!
//! The trivial-nullspace case is certified by full column rank modulo a large
//! prime (a primitive rational kernel vector would survive the reduction);
//! only a rank-deficient reduction triggers the exact rational elimination,
//! and every relation it produces is re-verified by direct series arithmetic.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{MahlerError, Result};
use crate::linalg::{nullspace, EchelonModP};
use crate::rat::{rat_mod, Rat, MOD_PRIMES};
use crate::series::TruncatedSeries;

/// Echo of the search envelope: derivation order, total degree, z-degree,
/// truncation order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SearchParams {
    pub deriv_order: u32,
    pub total_degree: u32,
    pub z_degree: u32,
    pub precision: usize,
}

/// One term `coeff * z^{z_power} * prod_i quantity_i^{exponents[i]}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationTerm {
    pub coeff: Rat,
    pub z_power: u32,
    pub exponents: Vec<u32>,
}

/// A polynomial relation that vanishes to the working precision on the inputs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    pub terms: Vec<RelationTerm>,
}

impl Relation {
    /// Human-readable form against the quantity labels of the report.
    pub fn to_text(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "({})", t.coeff);
            if t.z_power > 0 {
                let _ = write!(out, "*z^{}", t.z_power);
            }
            for (q, &e) in t.exponents.iter().enumerate() {
                if e == 1 {
                    let _ = write!(out, "*{}", labels[q]);
                } else if e > 1 {
                    let _ = write!(out, "*{}^{}", labels[q], e);
                }
            }
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationReport {
    pub relations: Vec<Relation>,
    pub params: SearchParams,
    pub quantity_labels: Vec<String>,
}

impl RelationReport {
    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

pub fn find_relations(
    series: &[TruncatedSeries],
    deriv_order: u32,
    total_degree: u32,
    z_degree: u32,
    precision: usize,
) -> Result<RelationReport> {
    if series.is_empty() {
        return Err(MahlerError::ShapeMismatch("no input series".into()));
    }
    if precision == 0 {
        return Err(MahlerError::InsufficientPrecision { needed: 1, have: 0 });
    }
    for s in series {
        if s.precision() < precision {
            return Err(MahlerError::InsufficientPrecision {
                needed: precision,
                have: s.precision(),
            });
        }
    }

    // Quantities theta^j(g_i), with stable labels.
    let mut quantities = Vec::new();
    let mut labels = Vec::new();
    for (i, s) in series.iter().enumerate() {
        let mut cur = s.truncate(precision);
        for j in 0..=deriv_order {
            if j > 0 {
                cur = cur.theta();
            }
            quantities.push(cur.clone());
            labels.push(if j == 0 {
                format!("g{i}")
            } else {
                format!("th^{j}(g{i})")
            });
        }
    }

    // All monomials of total degree <= D, in deterministic order; each is
    // evaluated once, and z-shifts are realized as column offsets.
    let exponent_vectors = monomials_up_to(quantities.len(), total_degree);
    let mono_series: Vec<TruncatedSeries> = exponent_vectors
        .iter()
        .map(|exps| {
            let mut acc = TruncatedSeries::one(precision);
            for (q, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&quantities[q]);
                }
            }
            acc
        })
        .collect();

    let shifts = z_degree as usize + 1;
    let cols = mono_series.len() * shifts;
    let zero = Rat::zero();
    let col_coeff = |c: usize, row: usize| -> &Rat {
        let (mono, t) = (c / shifts, c % shifts);
        if row < t {
            &zero
        } else {
            mono_series[mono].coeff(row - t)
        }
    };

    let params = SearchParams {
        deriv_order,
        total_degree,
        z_degree,
        precision,
    };

    if certified_full_rank(&mono_series, shifts, cols, precision) {
        return Ok(RelationReport {
            relations: Vec::new(),
            params,
            quantity_labels: labels,
        });
    }

    // Exact rational nullspace.
    let mat: Vec<Vec<Rat>> = (0..precision)
        .map(|row| (0..cols).map(|c| col_coeff(c, row).clone()).collect())
        .collect();
    let basis = nullspace(&mat);
    let mut relations = Vec::new();
    for vec in basis {
        let mut terms = Vec::new();
        for (c, coeff) in vec.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let (mono, t) = (c / shifts, c % shifts);
            terms.push(RelationTerm {
                coeff: coeff.clone(),
                z_power: t as u32,
                exponents: exponent_vectors[mono].clone(),
            });
        }
        let relation = Relation { terms };
        verify_relation(&relation, &mono_series, &exponent_vectors, precision)?;
        relations.push(relation);
    }
    Ok(RelationReport {
        relations,
        params,
        quantity_labels: labels,
    })
}

/// Full column rank modulo a usable prime proves the rational nullspace is
/// trivial. Requires agreement of two usable primes before giving up on the
/// cheap path, so a single unlucky prime cannot force the exact elimination.
fn certified_full_rank(
    mono_series: &[TruncatedSeries],
    shifts: usize,
    cols: usize,
    precision: usize,
) -> bool {
    let mut deficient_seen = 0;
    'primes: for &p in MOD_PRIMES.iter() {
        let mut residues: Vec<Vec<u64>> = Vec::with_capacity(mono_series.len());
        for s in mono_series {
            let mut r = Vec::with_capacity(precision);
            for c in s.coeffs().iter().take(precision) {
                match rat_mod(c, p) {
                    Some(v) => r.push(v),
                    None => continue 'primes,
                }
            }
            residues.push(r);
        }
        let mut ech = EchelonModP::new(p);
        for row in 0..precision {
            let r: Vec<u64> = (0..cols)
                .map(|c| {
                    let (mono, t) = (c / shifts, c % shifts);
                    if row < t {
                        0
                    } else {
                        residues[mono][row - t]
                    }
                })
                .collect();
            ech.insert(r);
            if ech.rank() == cols {
                return true;
            }
        }
        deficient_seen += 1;
        if deficient_seen >= 2 {
            return false;
        }
    }
    false
}

/// Direct re-verification: the relation, evaluated by series arithmetic, must
/// vanish to the full working precision.
fn verify_relation(
    relation: &Relation,
    mono_series: &[TruncatedSeries],
    exponent_vectors: &[Vec<u32>],
    precision: usize,
) -> Result<()> {
    let mut acc = TruncatedSeries::zero(precision);
    for term in &relation.terms {
        let mono = exponent_vectors
            .iter()
            .position(|e| *e == term.exponents)
            .expect("term exponents come from the enumeration");
        let contrib = mono_series[mono]
            .scale(&term.coeff)
            .shift_up(term.z_power as usize);
        acc = acc.add(&contrib);
    }
    if acc.valuation().is_some() {
        return Err(MahlerError::InternalInconsistency(
            "nullspace relation fails direct series re-verification".into(),
        ));
    }
    Ok(())
}

/// Exponent vectors of all monomials in `q` variables with total degree at
/// most `d`, in lexicographic order (the empty monomial first).
fn monomials_up_to(q: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; q];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(out, cur, pos + 1, left - e);
        }
        cur[pos] = 0;
    }
    rec(&mut out, &mut cur, 0, d);
    out
}
