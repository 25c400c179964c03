//! Search envelopes for the rational-solution solvers.
//!
//! Every negative solver answer is tagged with the exact envelope that was
//! exhausted, so "no rational solution" always means "none within these
//! bounds" rather than an unqualified claim.

use std::fmt;

use crate::error::{MahlerError, Result};

/// Degree and precision caps for a solver run, plus the number of dyadic
/// escalation steps used to reach them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolveBounds {
    pub max_num_degree: usize,
    pub max_den_degree: usize,
    pub series_precision: usize,
    pub escalation_steps: u32,
}

impl SolveBounds {
    pub fn new(
        max_num_degree: usize,
        max_den_degree: usize,
        series_precision: usize,
        escalation_steps: u32,
    ) -> Result<SolveBounds> {
        if max_num_degree == 0 || max_den_degree == 0 || series_precision == 0 {
            return Err(MahlerError::InvalidBounds(
                "all bound fields must be at least 1".into(),
            ));
        }
        let needed = 2 * (max_num_degree + max_den_degree) + 4;
        if series_precision < needed {
            return Err(MahlerError::InvalidBounds(format!(
                "series precision {series_precision} below the required {needed}"
            )));
        }
        Ok(SolveBounds {
            max_num_degree,
            max_den_degree,
            series_precision,
            escalation_steps,
        })
    }

    /// Default envelope for input data of the given total degree: degree caps
    /// `4 * (total + 1)`, matching precision, three dyadic escalations.
    pub fn default_for_total_degree(total: usize) -> SolveBounds {
        let d = 4 * (total + 1);
        SolveBounds {
            max_num_degree: d,
            max_den_degree: d,
            series_precision: 2 * (d + d) + 4,
            escalation_steps: 3,
        }
    }

    /// The escalation ladder, smallest first; the last level is exactly the
    /// stated caps, so a search that exhausts the ladder has exhausted the
    /// envelope.
    pub fn levels(&self) -> Vec<SolveBounds> {
        let mut out = Vec::new();
        for step in 0..=self.escalation_steps {
            let shift = self.escalation_steps - step;
            let dn = (self.max_num_degree >> shift).max(1);
            let dd = (self.max_den_degree >> shift).max(1);
            let prec = if step == self.escalation_steps {
                self.series_precision
            } else {
                (2 * (dn + dd) + 4).min(self.series_precision)
            };
            out.push(SolveBounds {
                max_num_degree: dn,
                max_den_degree: dd,
                series_precision: prec,
                escalation_steps: 0,
            });
        }
        out.dedup();
        out
    }
}

impl fmt::Display for SolveBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "num<={} den<={} prec={} escalations={}",
            self.max_num_degree, self.max_den_degree, self.series_precision, self.escalation_steps
        )
    }
}

/// Outcome of a bounded solver run. `Found` witnesses are verified exactly
/// against the defining equation before being returned.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveOutcome<W> {
    Found(W),
    NotFoundWithin(SolveBounds),
}

impl<W> SolveOutcome<W> {
    pub fn is_found(&self) -> bool {
        matches!(self, SolveOutcome::Found(_))
    }

    pub fn found(&self) -> Option<&W> {
        match self {
            SolveOutcome::Found(w) => Some(w),
            SolveOutcome::NotFoundWithin(_) => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> SolveOutcome<V> {
        match self {
            SolveOutcome::Found(w) => SolveOutcome::Found(f(w)),
            SolveOutcome::NotFoundWithin(b) => SolveOutcome::NotFoundWithin(b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_bounds_satisfy_their_own_invariant() {
        for t in [0, 1, 5, 40] {
            let b = SolveBounds::default_for_total_degree(t);
            assert!(b.series_precision >= 2 * (b.max_num_degree + b.max_den_degree) + 4);
            SolveBounds::new(
                b.max_num_degree,
                b.max_den_degree,
                b.series_precision,
                b.escalation_steps,
            )
            .unwrap();
        }
    }

    #[test]
    fn ladder_ends_at_stated_caps() {
        let b = SolveBounds::default_for_total_degree(3);
        let levels = b.levels();
        let last = levels.last().unwrap();
        assert_eq!(last.max_num_degree, b.max_num_degree);
        assert_eq!(last.max_den_degree, b.max_den_degree);
        assert_eq!(last.series_precision, b.series_precision);
        // ladder grows monotonically
        for w in levels.windows(2) {
            assert!(w[0].max_num_degree <= w[1].max_num_degree);
            assert!(w[0].series_precision <= w[1].series_precision);
        }
    }

    #[test]
    fn invalid_bounds_rejected() {
        assert!(SolveBounds::new(0, 1, 100, 1).is_err());
        assert!(SolveBounds::new(4, 4, 10, 1).is_err());
    }
}
