mod levi;
mod named;
mod sylow;

pub use levi::{levi, levi_normalizer, Levi, LeviSplit};
pub use named::{named_matrices, NAMED_TAGS};
pub use sylow::{build_sylow, primitive_companion, sylow_normalizer_block, SylowPresentation};

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// The parameter tuple driving every case split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieParams {
    pub n: u64,
    pub q: u64,
    pub p: u64,
    pub e: u64,
    pub t: u32,
    pub d: u128,
    pub r: u64,
    pub f: u64,
    pub det_order: u64,
    pub z_order: u64,
    pub scalar_center_order: u64,
    pub sylow_trivial: bool,
    pub sylow_cyclic: bool,
    pub sylow_abelian: bool,
    pub p_rank: u64,
    /// p-part of |G|.
    pub sylow_order: u128,
    /// p-part of |G/Z|.
    pub quotient_sylow_order: u128,
}

/// `|{a : a^n in Det(G)}|`, the order of the scalar subgroup `Z(G)`.
pub fn scalar_center_order(n: u64, q: u64, det_order: u64) -> Result<u64> {
    if q < 2 || det_order == 0 || (q - 1) % det_order != 0 {
        return Err(Error::domain(format!("det order {det_order} does not divide q-1")));
    }
    Ok(det_order * arith::gcd((q - 1) / det_order, n))
}

/// p-part of `|G|` where `G` has determinant group of order `det_order`.
pub fn group_p_part(n: u64, q: u64, p: u64, det_order: u64) -> Result<u128> {
    let mut v = arith::valuation(det_order as u128, p as u128);
    for i in 2..=n as u32 {
        let qi = (q as u128).checked_pow(i).ok_or_else(|| Error::domain("parameters too large"))?;
        v += arith::valuation(qi - 1, p as u128);
    }
    (p as u128).checked_pow(v).ok_or_else(|| Error::domain("parameters too large"))
}

pub fn compute_params(n: u64, q: u64, p: u64, det_order: u64, z_order: u64) -> Result<LieParams> {
    if n == 0 || n > 64 {
        return Err(Error::domain("n must lie in 1..=64"));
    }
    if !arith::is_prime(p) {
        return Err(Error::domain(format!("p = {p} is not prime")));
    }
    let (p0, _) = arith::prime_power(q).ok_or_else(|| Error::domain(format!("q = {q} is not a prime power")))?;
    if p0 == p {
        return Err(Error::domain(format!("p = {p} divides q = {q} (defining characteristic)")));
    }
    let zc = scalar_center_order(n, q, det_order)?;
    if z_order == 0 || zc % z_order != 0 {
        return Err(Error::domain(format!("z order {z_order} does not divide |Z(G)| = {zc}")));
    }
    let e = arith::mult_order_mod(q % p, p);
    let qe = (q as u128).checked_pow(e as u32).ok_or_else(|| Error::domain("parameters too large"))? - 1;
    let t = arith::valuation(qe, p as u128);
    let d = arith::p_prime_part(qe, p as u128);
    let (r, f) = (n / e, n % e);
    let p_divides_det = det_order % p == 0;
    let sylow_order = group_p_part(n, q, p, det_order)?;
    let zp = arith::p_part(z_order as u128, p as u128);
    let sylow_trivial = sylow_order == 1;
    let sylow_cyclic = !sylow_trivial
        && if e > 1 {
            n < 2 * e
        } else {
            (n == 1 && p_divides_det) || (n == 2 && p != 2 && !p_divides_det)
        };
    let p_rank = if sylow_trivial {
        0
    } else if e == 1 && !p_divides_det {
        r - 1
    } else {
        r
    };
    Ok(LieParams {
        n,
        q,
        p,
        e,
        t,
        d,
        r,
        f,
        det_order,
        z_order,
        scalar_center_order: zc,
        sylow_trivial,
        sylow_cyclic,
        sylow_abelian: n < p * e,
        p_rank,
        sylow_order,
        quotient_sylow_order: sylow_order / zp,
    })
}

impl LieParams {
    /// `|Det(Z)|` for the cyclic scalar group `Z` of order `z`.
    pub fn det_of_z(&self) -> u64 {
        self.z_order / arith::gcd(self.n, self.z_order)
    }

    /// `(q-1)/|Det(G)|`.
    pub fn m(&self) -> u64 {
        (self.q - 1) / self.det_order
    }

    pub fn group_spec(&self) -> Result<crate::matgrp::LinearGroupSpec> {
        crate::matgrp::LinearGroupSpec::new(self.n as usize, self.q, self.det_order, self.z_order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let a = compute_params(2, 5, 3, 1, 1).unwrap();
        assert_eq!((a.e, a.t, a.d, a.r, a.f), (2, 1, 8, 1, 0));
        assert!(a.sylow_cyclic);
        let b = compute_params(4, 3, 5, 2, 1).unwrap();
        assert_eq!((b.e, b.t, b.d, b.r, b.f), (4, 1, 16, 1, 0));
        assert!(b.sylow_cyclic);
        let c = compute_params(3, 4, 3, 3, 1).unwrap();
        assert_eq!((c.e, c.t, c.d, c.r, c.f), (1, 1, 1, 3, 0));
        assert!(!c.sylow_cyclic);
    }

    #[test]
    fn centers() {
        assert_eq!(scalar_center_order(2, 7, 1).unwrap(), 2);
        assert_eq!(scalar_center_order(3, 4, 3).unwrap(), 3);
        assert_eq!(scalar_center_order(3, 4, 1).unwrap(), 3);
        assert_eq!(scalar_center_order(3, 5, 1).unwrap(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(compute_params(2, 9, 3, 1, 1).is_err());
        assert!(compute_params(2, 7, 4, 1, 1).is_err());
        assert!(compute_params(2, 7, 3, 4, 1).is_err());
        assert!(compute_params(2, 7, 3, 1, 3).is_err());
        assert!(compute_params(2, 6, 5, 1, 1).is_err());
    }

    #[test]
    fn sylow_orders() {
        assert_eq!(compute_params(2, 7, 3, 6, 1).unwrap().sylow_order, 9);
        assert_eq!(compute_params(2, 5, 2, 4, 1).unwrap().sylow_order, 32);
        assert_eq!(compute_params(4, 2, 3, 1, 1).unwrap().sylow_order, 9);
        let psl = compute_params(2, 7, 2, 1, 2).unwrap();
        assert_eq!((psl.sylow_order, psl.quotient_sylow_order), (16, 8));
    }
}
