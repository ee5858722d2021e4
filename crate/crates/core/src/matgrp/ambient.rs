use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::group::{closure, EnumeratedGroup};
use super::matrix::{Matrix, MatrixContext, MAX_DIM};
use crate::arith;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;

/// A group `G/Z` with `SL(n,q) <= G <= GL(n,q)`, `G` fixed by `|Det(G)|`
/// and `Z` the scalar subgroup of order `z_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearGroupSpec {
    pub n: usize,
    pub q: u64,
    pub det_order: u64,
    pub z_order: u64,
}

impl LinearGroupSpec {
    pub fn new(n: usize, q: u64, det_order: u64, z_order: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("n must be positive"));
        }
        if arith::prime_power(q).is_none() {
            return Err(Error::domain(format!("q = {q} is not a prime power")));
        }
        if det_order == 0 || (q - 1) % det_order != 0 {
            return Err(Error::domain(format!("det order {det_order} does not divide q-1 = {}", q - 1)));
        }
        let zc = crate::liea::scalar_center_order(n as u64, q, det_order)?;
        if z_order == 0 || zc % z_order != 0 {
            return Err(Error::domain(format!("z order {z_order} does not divide |Z(G)| = {zc}")));
        }
        Ok(LinearGroupSpec { n, q, det_order, z_order })
    }

    pub fn gl(n: usize, q: u64) -> Result<Self> {
        Self::new(n, q, q - 1, 1)
    }

    pub fn sl(n: usize, q: u64) -> Result<Self> {
        Self::new(n, q, 1, 1)
    }

    pub fn pgl(n: usize, q: u64) -> Result<Self> {
        Self::new(n, q, q - 1, q - 1)
    }

    pub fn psl(n: usize, q: u64) -> Result<Self> {
        Self::new(n, q, 1, arith::gcd(n as u64, q - 1))
    }

    /// `|G/Z|`.
    pub fn order(&self) -> u128 {
        let q = self.q as u128;
        let mut o: u128 = 1;
        for i in 0..self.n as u32 {
            o = o.saturating_mul(q.pow(self.n as u32) - q.pow(i));
        }
        o / (self.q as u128 - 1) * self.det_order as u128 / self.z_order as u128
    }

    /// Same determinant condition, trivial `Z`.
    pub fn lift(&self) -> Self {
        LinearGroupSpec { z_order: 1, ..self.clone() }
    }

    pub fn field(&self) -> Result<Arc<FieldSpec>> {
        FieldSpec::new(self.q)
    }

    pub fn context(&self) -> Result<Arc<MatrixContext>> {
        if self.n > MAX_DIM {
            return Err(Error::domain(format!("matrix dimension {} exceeds {MAX_DIM}", self.n)));
        }
        MatrixContext::new(&self.field()?, self.n, self.z_order as u32)
    }

    /// Whether a matrix lies in `G` (its determinant lies in `Det(G)`).
    pub fn contains(&self, ctx: &MatrixContext, m: &Matrix) -> bool {
        ctx.det_in(m, self.det_order as u32)
    }

    /// Adjacent root elements over an additive basis of GF(q), plus a
    /// diagonal generator of the determinant group.
    pub fn generators(&self, ctx: &MatrixContext) -> Vec<Matrix> {
        let f = ctx.field();
        let n = self.n;
        let mut gens = Vec::new();
        for i in 0..n.saturating_sub(1) {
            for j in 0..f.degree() as u64 {
                let a = f.exp(j);
                for (r, c) in [(i, i + 1), (i + 1, i)] {
                    let mut rows = identity_rows(n);
                    rows[r][c] = a;
                    gens.push(ctx.from_rows(&rows).expect("root element is invertible"));
                }
            }
        }
        if self.det_order > 1 || n == 1 {
            let mut d = vec![1u32; n];
            d[0] = f.exp((self.q - 1) / self.det_order);
            gens.push(ctx.diag(&d).expect("diagonal generator is invertible"));
        }
        gens
    }

    /// Enumerates `G/Z`, refusing before closure when the order exceeds `cap`.
    pub fn enumerate(&self, cap: usize) -> Result<EnumeratedGroup> {
        if self.order() > cap as u128 {
            return Err(Error::CapExceeded { what: format!("{self} of order {}", self.order()), cap });
        }
        let ctx = self.context()?;
        let gens = self.generators(&ctx);
        let g = closure(&ctx, &gens, cap)?;
        debug_assert_eq!(g.order() as u128, self.order());
        Ok(g)
    }
}

pub(crate) fn identity_rows(n: usize) -> Vec<Vec<u32>> {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

impl fmt::Display for LinearGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, q) = (self.n, self.q);
        let full = self.det_order == q - 1;
        if self.z_order == 1 {
            if full {
                write!(f, "GL({n},{q})")
            } else if self.det_order == 1 {
                write!(f, "SL({n},{q})")
            } else {
                write!(f, "SL({n},{q}):{}", self.det_order)
            }
        } else if full && self.z_order == q - 1 {
            write!(f, "PGL({n},{q})")
        } else if self.det_order == 1 && self.z_order == arith::gcd(n as u64, q - 1) {
            write!(f, "PSL({n},{q})")
        } else {
            write!(f, "G({n},{q};det={},z={})", self.det_order, self.z_order)
        }
    }
}

impl FromStr for LinearGroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Usage(format!("malformed group spec '{s}'"));
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let close = s.find(')').ok_or_else(bad)?;
        let kind = &s[..open];
        if kind == "G" {
            // G(n,q;det=d,z=z), the display form of the general case
            let (nq, rest) = s[open + 1..close].split_once(';').ok_or_else(bad)?;
            let (n, q) = nq.split_once(',').ok_or_else(bad)?;
            let mut det = None;
            let mut z = None;
            for kv in rest.split(',') {
                match kv.trim().split_once('=') {
                    Some(("det", v)) => det = v.trim().parse::<u64>().ok(),
                    Some(("z", v)) => z = v.trim().parse::<u64>().ok(),
                    _ => return Err(bad()),
                }
            }
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            let q: u64 = q.trim().parse().map_err(|_| bad())?;
            if !s[close + 1..].trim().is_empty() || q < 2 {
                return Err(bad());
            }
            return Self::new(n, q, det.ok_or_else(bad)?, z.ok_or_else(bad)?);
        }
        let inner: Vec<&str> = s[open + 1..close].split(',').map(str::trim).collect();
        if inner.len() != 2 {
            return Err(bad());
        }
        let n: usize = inner[0].parse().map_err(|_| bad())?;
        let q: u64 = inner[1].parse().map_err(|_| bad())?;
        let tail = s[close + 1..].trim();
        if q < 2 || n == 0 {
            return Err(bad());
        }
        match (kind, tail) {
            ("GL", "") => Self::gl(n, q),
            ("SL", "") => Self::sl(n, q),
            ("PGL", "") => Self::pgl(n, q),
            ("PSL", "") => Self::psl(n, q),
            ("SL", t) if t.starts_with(':') => {
                let d: u64 = t[1..].trim().parse().map_err(|_| bad())?;
                Self::new(n, q, d, 1)
            }
            _ => Err(bad()),
        }
    }
}
