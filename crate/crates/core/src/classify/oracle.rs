use serde::{Deserialize, Serialize};

use crate::abst::{prime_to_p_part, AbelianStructure};
use crate::error::{Error, Result};
use crate::liea::{build_sylow, LieParams};
use crate::matgrp::LinearGroupSpec;

/// Brute-force rank data for `G/Z` at the prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub group: String,
    pub group_order: usize,
    pub p_rank: u32,
    /// Classes of maximal elementary abelian p-subgroups of rank 2.
    pub n_g: usize,
    pub tf_rank: usize,
}

/// Enumerates `G/Z`, finds its elementary abelian p-subgroups and counts the
/// classes of maximal ones of rank 2; the torsion-free rank is that count,
/// plus one when the p-rank is at least 3.
pub fn tf_rank_oracle(spec: &LinearGroupSpec, p: u64, cap: usize) -> Result<OracleReport> {
    if !crate::arith::is_prime(p) {
        return Err(Error::domain(format!("p = {p} is not prime")));
    }
    let g = spec.enumerate(cap)?;
    let ea = g.elementary_abelian_subgroups(p);
    let p_rank = ea.iter().map(|e| e.rank).max().unwrap_or(0);
    let max2: Vec<_> = ea.into_iter().filter(|e| e.rank == 2 && e.maximal).map(|e| e.subgroup).collect();
    let n_g = g.subgroup_conjugacy_classes(&max2)?.len();
    let tf_rank = if p_rank >= 3 { n_g + 1 } else { n_g };
    Ok(OracleReport { group: spec.to_string(), group_order: g.order(), p_rank, n_g, tf_rank })
}

/// `X(N^)` computed directly: the p'-part of `N/[N,N]` for the normalizer `N`
/// of a Sylow p-subgroup of the enumerated `G/Z`.
pub fn x_hat_oracle(params: &LieParams, cap: usize) -> Result<AbelianStructure> {
    let g = params.group_spec()?.enumerate(cap)?;
    let s = build_sylow(params)?.subgroup_in(&g)?;
    if s.order() as u128 != params.quotient_sylow_order {
        return Err(Error::domain(format!(
            "Sylow image has order {}, expected {}",
            s.order(),
            params.quotient_sylow_order
        )));
    }
    let n = g.normalizer(&s)?;
    let d = g.commutator_subgroup(&n)?;
    prime_to_p_part(&g.quotient_structure(&n, &d)?, params.p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liea::compute_params;

    #[test]
    fn spec_examples() {
        let r = tf_rank_oracle(&"SL(2,4)".parse().unwrap(), 2, 100_000).unwrap();
        assert_eq!((r.p_rank, r.n_g, r.tf_rank), (2, 1, 1));
        let r = tf_rank_oracle(&"PSL(3,4)".parse().unwrap(), 3, 100_000).unwrap();
        assert_eq!((r.p_rank, r.n_g, r.tf_rank), (2, 1, 1));
    }

    #[test]
    fn normalizer_quotients() {
        let x = |n, q, p, d, z| x_hat_oracle(&compute_params(n, q, p, d, z).unwrap(), 1 << 20).unwrap().to_string();
        assert_eq!(x(2, 7, 3, 1, 1), "Z/4");
        assert_eq!(x(2, 7, 3, 1, 2), "Z/2");
        assert_eq!(x(2, 4, 3, 1, 1), "Z/2");
    }
}
