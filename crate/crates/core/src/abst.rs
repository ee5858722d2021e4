//! Finitely generated abelian groups and integer Smith normal form.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Result of [`smith_normal_form`]: the nonzero diagonal in divisibility order
/// (unit entries included) and the number of free generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub free_rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith normal form of an integer matrix whose rows are relations among
/// `cols` generators. `free_rank` is `cols - rank`.
pub fn smith_normal_form(rows: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| {
        assert_eq!(r.len(), cols, "ragged relation matrix");
        r.clone()
    }).collect();
    let nr = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(cols) {
        // pivot of least absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..cols {
                if !m[i][j].is_zero() && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..nr {
            if !m[i][t].is_zero() {
                let qt = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let v = &m[t][j] * &qt;
                    m[i][j] -= v;
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if !m[t][j].is_zero() {
                let qt = m[t][j].div_floor(&m[t][t]);
                for i in t..nr {
                    let v = &m[i][t] * &qt;
                    m[i][j] -= v;
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
        }
        if clean {
            diag.push(m[t][t].abs());
            t += 1;
        }
    }
    let rank = diag.len();
    SmithForm { diagonal: chain(&diag), free_rank: cols - rank }
}

/// Turns any list of positive cyclic orders into a divisibility chain of the
/// same length (padding with ones on the left).
fn chain(diag: &[BigInt]) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = diag.to_vec();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// `Z^free_rank + Z/d1 + ... + Z/dk` with `d1 | d2 | ... | dk`, all `di >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawStructure", into = "RawStructure")]
pub struct AbelianStructure {
    free_rank: u32,
    invariant_factors: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawStructure {
    rank: u32,
    torsion: Vec<u64>,
}

impl TryFrom<RawStructure> for AbelianStructure {
    type Error = Error;
    fn try_from(r: RawStructure) -> Result<Self> {
        let s = AbelianStructure::new(r.rank, &r.torsion);
        if s.invariant_factors != r.torsion {
            return Err(Error::domain(format!("torsion {:?} is not in invariant-factor form", r.torsion)));
        }
        Ok(s)
    }
}

impl From<AbelianStructure> for RawStructure {
    fn from(a: AbelianStructure) -> Self {
        RawStructure { rank: a.free_rank, torsion: a.invariant_factors }
    }
}

impl AbelianStructure {
    /// Canonicalizes an arbitrary list of cyclic orders (zeros are not allowed; ones dropped).
    pub fn new(free_rank: u32, cyclic_orders: &[u64]) -> Self {
        assert!(cyclic_orders.iter().all(|&d| d > 0), "cyclic orders must be positive");
        let big: Vec<BigInt> = cyclic_orders.iter().map(|&d| BigInt::from(d)).collect();
        let invariant_factors = chain(&big)
            .into_iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().expect("invariant factor fits u64"))
            .collect();
        AbelianStructure { free_rank, invariant_factors }
    }

    pub fn trivial() -> Self {
        AbelianStructure { free_rank: 0, invariant_factors: vec![] }
    }

    pub fn free(rank: u32) -> Self {
        AbelianStructure { free_rank: rank, invariant_factors: vec![] }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, &[order])
    }

    /// The group `Z^cols / (row span)`.
    pub fn from_relations(rows: &[Vec<i64>], cols: usize) -> Self {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let snf = smith_normal_form(&big, cols);
        let tors: Vec<u64> = snf.torsion().iter().map(|d| d.to_u64().expect("factor fits u64")).collect();
        Self::new(snf.free_rank as u32, &tors)
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn torsion_order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        (self.free_rank == 0).then(|| self.torsion_order())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn torsion(&self) -> AbelianStructure {
        AbelianStructure { free_rank: 0, invariant_factors: self.invariant_factors.clone() }
    }

    /// Prime-power cyclic orders, sorted ascending.
    pub fn primary_decomposition(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .invariant_factors
            .iter()
            .flat_map(|&d| arith::factorize(d).into_iter().map(|(p, k)| p.pow(k)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn primary_string(&self) -> String {
        render(self.free_rank, &self.primary_decomposition())
    }
}

fn render(rank: u32, tors: &[u64]) -> String {
    let mut parts = Vec::new();
    match rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        a => parts.push(format!("Z^{a}")),
    }
    parts.extend(tors.iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for AbelianStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.free_rank, &self.invariant_factors))
    }
}

impl FromStr for AbelianStructure {
    type Err = Error;

    /// Accepts `0`, `Z`, `Z^a`, `Z/d` joined by `+`, in any order and any
    /// (not necessarily canonical) decomposition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Self::trivial());
        }
        let mut rank = 0;
        let mut tors = Vec::new();
        for part in s.split('+').map(str::trim) {
            let bad = || Error::Usage(format!("cannot parse abelian group term {part:?}"));
            if part == "Z" {
                rank += 1;
            } else if let Some(e) = part.strip_prefix("Z^") {
                rank += e.parse::<u32>().map_err(|_| bad())?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d: u64 = d.parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                tors.push(d);
            } else {
                return Err(bad());
            }
        }
        Ok(Self::new(rank, &tors))
    }
}

pub fn direct_sum(a: &AbelianStructure, b: &AbelianStructure) -> AbelianStructure {
    let mut t = a.invariant_factors.clone();
    t.extend_from_slice(&b.invariant_factors);
    AbelianStructure::new(a.free_rank + b.free_rank, &t)
}

/// The largest subgroup of order prime to `p` (finite groups only).
pub fn prime_to_p_part(a: &AbelianStructure, p: u64) -> Result<AbelianStructure> {
    if a.free_rank != 0 {
        return Err(Error::domain("prime_to_p_part needs a finite group"));
    }
    let t: Vec<u64> = a.invariant_factors.iter().map(|&d| arith::p_prime_part(d as u128, p as u128) as u64).collect();
    Ok(AbelianStructure::new(0, &t))
}

/// The Sylow p-subgroup of a finite abelian group.
pub fn p_part(a: &AbelianStructure, p: u64) -> Result<AbelianStructure> {
    if a.free_rank != 0 {
        return Err(Error::domain("p_part needs a finite group"));
    }
    let t: Vec<u64> = a.invariant_factors.iter().map(|&d| arith::p_part(d as u128, p as u128) as u64).collect();
    Ok(AbelianStructure::new(0, &t))
}

/// Abelian groups `E` fitting into `0 -> sub -> E -> quot -> 0`, for finite
/// `sub` and cyclic (or trivial) finite `quot`, up to isomorphism.
pub fn abelian_extensions(sub: &AbelianStructure, quot: &AbelianStructure) -> Result<Vec<AbelianStructure>> {
    if sub.free_rank != 0 || quot.free_rank != 0 || quot.invariant_factors.len() > 1 {
        return Err(Error::domain("extension candidates need finite sub and finite cyclic quotient"));
    }
    let Some(&k) = quot.invariant_factors.first() else {
        return Ok(vec![sub.clone()]);
    };
    let ds = sub.invariant_factors.clone();
    let ranges: Vec<u64> = ds.iter().map(|&d| arith::gcd(d, k)).collect();
    let cols = ds.len() + 1;
    let mut out = BTreeSet::new();
    let total: u64 = ranges.iter().product();
    for idx in 0..total {
        let mut rest = idx;
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut last = vec![0i64; cols];
        for (i, (&d, &r)) in ds.iter().zip(&ranges).enumerate() {
            let mut row = vec![0i64; cols];
            row[i] = d as i64;
            rows.push(row);
            last[i] = -((rest % r) as i64);
            rest /= r;
        }
        last[cols - 1] = k as i64;
        rows.push(last);
        out.insert(AbelianStructure::from_relations(&rows, cols));
    }
    Ok(out.into_iter().collect())
}

/// An extension `0 -> sub -> T -> quot -> 0` whose middle term the governing
/// result leaves open. `resolved` is filled only when a single middle term is possible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDescriptor {
    pub sub: AbelianStructure,
    pub quot: AbelianStructure,
    pub resolved: Option<AbelianStructure>,
    pub candidates: Vec<AbelianStructure>,
}

impl ExtensionDescriptor {
    pub fn new(sub: AbelianStructure, quot: AbelianStructure) -> Result<Self> {
        let candidates = abelian_extensions(&sub, &quot)?;
        let resolved = (candidates.len() == 1).then(|| candidates[0].clone());
        Ok(ExtensionDescriptor { sub, quot, resolved, candidates })
    }

    /// Checks ranks add and torsion orders multiply for the resolved term.
    pub fn is_consistent(&self) -> bool {
        match &self.resolved {
            None => true,
            Some(r) => {
                r.free_rank == self.sub.free_rank + self.quot.free_rank
                    && r.torsion_order() == self.sub.torsion_order() * self.quot.torsion_order()
            }
        }
    }
}

impl fmt::Display for ExtensionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.resolved {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "EXT({}; {})", self.sub, self.quot),
        }
    }
}
