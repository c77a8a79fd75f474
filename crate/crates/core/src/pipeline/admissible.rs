use std::fmt;

use super::PipelineError;
use crate::seq::CountSequence;

/// The two linear identities a face census `p` and valence census `v` of a
/// map on a surface with euler characteristic `chi` satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    /// `sum (6 - k) p_k + 2 sum (3 - k) v_k`
    pub eq6_lhs: i64,
    /// `sum (4 - k) p_k + sum (4 - k) v_k`
    pub eq4_lhs: i64,
    pub sum_faces_eq_sum_vertices_weighted: bool,
    /// `sum k p_k` is even.
    pub parity_ok: bool,
    pub chi: i64,
    pub admissible: bool,
}

fn linear(s: &CountSequence, base: i64, factor: i64) -> i64 {
    s.iter().map(|(k, c)| factor * (base - k as i64) * c as i64).sum()
}

pub fn check_admissible(p: &CountSequence, v: &CountSequence, chi: i64) -> Result<AdmissibilityReport, PipelineError> {
    if chi > 2 || chi % 2 != 0 {
        return Err(PipelineError::BadChi(chi));
    }
    let eq6_lhs = linear(p, 6, 1) + linear(v, 3, 2);
    let eq4_lhs = linear(p, 4, 1) + linear(v, 4, 1);
    let weighted = p.weighted_sum() == v.weighted_sum();
    Ok(AdmissibilityReport {
        eq6_lhs,
        eq4_lhs,
        sum_faces_eq_sum_vertices_weighted: weighted,
        parity_ok: p.weighted_sum().is_multiple_of(2),
        chi,
        admissible: eq6_lhs == 6 * chi && eq4_lhs == 4 * chi && weighted,
    })
}

impl fmt::Display for AdmissibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "eq6_lhs {} (target {})", self.eq6_lhs, 6 * self.chi)?;
        writeln!(f, "eq4_lhs {} (target {})", self.eq4_lhs, 4 * self.chi)?;
        writeln!(f, "weighted_sums_equal {}", self.sum_faces_eq_sum_vertices_weighted)?;
        writeln!(f, "parity_ok {}", self.parity_ok)?;
        writeln!(f, "admissible {}", self.admissible)
    }
}
