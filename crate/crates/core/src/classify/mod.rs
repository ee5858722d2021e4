mod oracle;

pub use oracle::{tf_rank_oracle, x_hat_oracle, OracleReport};

use serde::{Deserialize, Serialize};

use crate::abst::{direct_sum, prime_to_p_part, AbelianStructure, ExtensionDescriptor};
use crate::arith;
use crate::error::{Error, Result};
use crate::liea::{compute_params, LieParams};

/// Either a determined group or an extension whose middle term is left open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TResult {
    Group(AbelianStructure),
    Extension(ExtensionDescriptor),
}

impl TResult {
    /// The group when it is determined (directly or by a unique extension).
    pub fn structure(&self) -> Option<&AbelianStructure> {
        match self {
            TResult::Group(a) => Some(a),
            TResult::Extension(x) => x.resolved.as_ref(),
        }
    }
}

impl std::fmt::Display for TResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TResult::Group(a) => write!(f, "{a}"),
            TResult::Extension(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawClassification", into = "RawClassification")]
pub struct TClassification {
    pub n: u64,
    pub q: u64,
    pub p: u64,
    pub det_order: u64,
    pub z_order: u64,
    pub result: TResult,
    pub x_factor: AbelianStructure,
    pub tf_rank: u32,
    pub case_tag: String,
    pub notes: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawClassification {
    n: u64,
    q: u64,
    p: u64,
    det: u64,
    z: u64,
    rank: Option<u32>,
    torsion: Option<Vec<u64>>,
    extension: Option<ExtensionDescriptor>,
    group: String,
    primary: Option<String>,
    x_factor: AbelianStructure,
    tf_rank: u32,
    case_tag: String,
    notes: Vec<String>,
}

impl From<TClassification> for RawClassification {
    fn from(c: TClassification) -> Self {
        let s = c.result.structure().cloned();
        RawClassification {
            n: c.n,
            q: c.q,
            p: c.p,
            det: c.det_order,
            z: c.z_order,
            rank: s.as_ref().map(|a| a.free_rank()),
            torsion: s.as_ref().map(|a| a.invariant_factors().to_vec()),
            primary: s.as_ref().map(|a| a.primary_string()),
            extension: match &c.result {
                TResult::Extension(x) => Some(x.clone()),
                TResult::Group(_) => None,
            },
            group: c.result.to_string(),
            x_factor: c.x_factor,
            tf_rank: c.tf_rank,
            case_tag: c.case_tag,
            notes: c.notes,
        }
    }
}

impl TryFrom<RawClassification> for TClassification {
    type Error = Error;
    fn try_from(r: RawClassification) -> Result<Self> {
        let result = match (r.extension, r.rank, r.torsion) {
            (Some(x), _, _) => TResult::Extension(x),
            (None, Some(rank), Some(t)) => {
                let a = AbelianStructure::new(rank, &t);
                if a.invariant_factors() != t.as_slice() {
                    return Err(Error::domain("torsion not in invariant-factor form"));
                }
                TResult::Group(a)
            }
            _ => return Err(Error::domain("classification record has neither a group nor an extension")),
        };
        Ok(TClassification {
            n: r.n,
            q: r.q,
            p: r.p,
            det_order: r.det,
            z_order: r.z,
            result,
            x_factor: r.x_factor,
            tf_rank: r.tf_rank,
            case_tag: r.case_tag,
            notes: r.notes,
        })
    }
}

/// p'-part of the cyclic group `Det(G)/Det(Z)`.
fn det_quotient(params: &LieParams) -> AbelianStructure {
    let k = params.det_order / params.det_of_z();
    AbelianStructure::cyclic(arith::p_prime_part(k as u128, params.p as u128) as u64)
}

/// `X(G/Z)`: the p'-part of `Det(G)/Det(Z)`. Rejects `n = 2, q <= 3`, where
/// `SL(2,q)` is not perfect.
pub fn x_group(params: &LieParams) -> Result<AbelianStructure> {
    if params.n == 2 && params.q <= 3 {
        return Err(Error::domain(format!("SL(2,{}) is not perfect; X(G/Z) is not the determinant quotient", params.q)));
    }
    Ok(det_quotient(params))
}

fn from_rows(rows: &[Vec<i64>], cols: usize, p: u64) -> Result<AbelianStructure> {
    prime_to_p_part(&AbelianStructure::from_relations(rows, cols), p)
}

/// `X(N^)` for `N^ = N_{G/Z}(S^)` with `S^` cyclic, from an explicit
/// presentation of the abelianized normalizer.
pub fn x_hat_presentation(params: &LieParams) -> Result<AbelianStructure> {
    let (n, q, e, f, p) = (params.n, params.q as i64, params.e, params.f, params.p);
    let d = params.det_order as i64;
    let m = params.m() as i64;
    let z = params.z_order as i64;
    let c = (q - 1) / z;
    if n == 1 {
        let k = params.det_order / params.z_order;
        return Ok(AbelianStructure::cyclic(arith::p_prime_part(k as u128, p as u128) as u64));
    }
    if e == 1 && n == 2 && p != 2 {
        // generators diag(w, w^-1), diag(1, w^m), antidiag(1, -1)
        let h = if q % 2 == 1 { (q - 1) / 2 } else { 0 };
        let rows = vec![
            vec![q - 1, 0, 0],
            vec![0, d, 0],
            vec![2, 0, 0],
            vec![m, 0, 0],
            vec![-h, 0, 2],
            vec![c, 2 * d / z, 0],
        ];
        return from_rows(&rows, 3, p);
    }
    if e > 1 {
        let big = (q as i128).pow(e as u32) - 1;
        let big = i64::try_from(big).map_err(|_| Error::domain("parameters too large"))?;
        let e = e as i64;
        if f >= 1 {
            // (Singer quotient, Frobenius, determinant) plus GL(2,2)^ab when it is not det
            let extra = f == 2 && q == 2;
            let cols = if extra { 4 } else { 3 };
            let pad = |mut v: Vec<i64>| {
                v.resize(cols, 0);
                v
            };
            let mut rows = vec![
                pad(vec![q - 1, 0, 0]),
                pad(vec![0, e, 0]),
                pad(vec![0, 0, d]),
                pad(vec![c * big / (q - 1), 0, c * n as i64 / m]),
            ];
            if extra {
                rows.push(vec![0, 0, 0, 2]);
            }
            return from_rows(&rows, cols, p);
        }
        // generators x = w^m, y = Frobenius adjusted into G
        let minus_one_in_d = q % 2 == 0 || d % 2 == 0;
        let det_g_in_d = e % 2 == 1 || minus_one_in_d;
        let eps = if det_g_in_d { 0 } else { big / (2 * m) };
        let rows = vec![vec![big / m, 0], vec![q - 1, 0], vec![-eps, e], vec![big / (z * m), 0]];
        return from_rows(&rows, 2, p);
    }
    Err(Error::domain("no normalizer presentation for these parameters"))
}

struct Builder {
    params: LieParams,
    notes: Vec<String>,
}

impl Builder {
    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn done(self, tag: &str, result: TResult, x: AbelianStructure) -> TClassification {
        let tf_rank = match &result {
            TResult::Group(a) => a.free_rank(),
            TResult::Extension(e) => e.sub.free_rank() + e.quot.free_rank(),
        };
        let p = &self.params;
        TClassification {
            n: p.n,
            q: p.q,
            p: p.p,
            det_order: p.det_order,
            z_order: p.z_order,
            result,
            x_factor: x,
            tf_rank,
            case_tag: tag.to_string(),
            notes: self.notes,
        }
    }
}

fn with_x(free: u32, torsion: &[u64], x: &AbelianStructure) -> TResult {
    TResult::Group(direct_sum(&AbelianStructure::new(free, torsion), x))
}

/// `T(G/Z)` for `SL(n,q) <= G <= GL(n,q)` with `|Det(G)| = det_order` and
/// `|Z| = z_order`, with a tag naming the clause used.
pub fn classify(n: u64, q: u64, p: u64, det_order: u64, z_order: u64) -> Result<TClassification> {
    let params = compute_params(n, q, p, det_order, z_order)?;
    if params.sylow_trivial {
        return Err(Error::domain(format!("p = {p} does not divide |G|")));
    }
    if params.quotient_sylow_order == 1 {
        return Err(Error::domain(format!("p = {p} does not divide |G/Z|")));
    }
    let mut b = Builder { params: params.clone(), notes: Vec::new() };
    let pr = &params;
    b.note(format!("e={} t={} d={} r={} f={}", pr.e, pr.t, pr.d, pr.r, pr.f));
    let zc = pr.scalar_center_order;
    let z_misses_p = (zc / pr.z_order) % p == 0;

    if pr.sylow_cyclic {
        b.note("Sylow p-subgroup of G is cyclic");
        if pr.z_order == 1 {
            let x = det_quotient(pr);
            let d = pr.det_order;
            let m = pr.m();
            if p == 2 {
                b.note("p = 2 forces n = 1; T(G) = D/Det(S)");
                let t = arith::p_prime_part(d as u128, 2) as u64;
                return Ok(b.done("cyclic.a", with_x(0, &[t], &AbelianStructure::trivial()), x));
            }
            if pr.e == 1 && d % p == 0 {
                let a = arith::p_prime_part(d as u128, p as u128) as u64;
                b.note(format!("p | q-1 and p | d; d = a p^t with a = {a}"));
                return Ok(b.done("cyclic.b", with_x(0, &[a, 2], &AbelianStructure::trivial()), x));
            }
            if pr.e == 1 {
                b.note(format!("p | q-1, p does not divide d; (q-1)/d = {m}"));
                return Ok(if m % 2 == 1 {
                    b.done("cyclic.c.i", with_x(0, &[d, 4], &AbelianStructure::trivial()), x)
                } else {
                    b.done("cyclic.c.ii", with_x(0, &[d, 4, 2], &AbelianStructure::trivial()), x)
                });
            }
            let big = (q as u128).pow(pr.e as u32) - 1;
            let l = (arith::gcd((m as u128 * (q as u128 - 1)) as u64, big as u64) / m) as u64;
            let two_e = 2 * pr.e;
            if pr.f == 0 {
                b.note(format!("p does not divide q-1, f = 0, m = {m}, l = {l}"));
                return Ok(b.done("cyclic.d.i", with_x(0, &[l, two_e], &AbelianStructure::trivial()), x));
            }
            b.note(format!("p does not divide q-1, f = {} > 0", pr.f));
            let t = if pr.f == 2 && q == 2 { vec![two_e, 2] } else { vec![two_e, q - 1, d] };
            return Ok(b.done("cyclic.d.ii", with_x(0, &t, &AbelianStructure::trivial()), x));
        }
        let sub = x_hat_presentation(pr)?;
        let quot = if pr.quotient_sylow_order >= 3 { AbelianStructure::cyclic(2) } else { AbelianStructure::trivial() };
        b.note(format!("z = {} > 1: T(G/Z) = T(N^) is an extension of T(S^) by X(N^)", pr.z_order));
        let tag = if n == 2 && pr.e == 1 { "sl2-odd.b" } else { "cyclic.ext" };
        let x = x_group(pr).unwrap_or_else(|_| det_quotient(pr));
        return Ok(b.done(tag, TResult::Extension(ExtensionDescriptor::new(sub, quot)?), x));
    }

    if n == 2 && p > 2 && pr.e == 1 {
        let x = x_group(pr)?;
        if z_misses_p {
            b.note("p divides |Z(G):Z|");
            return Ok(b.done("sl2-odd.a", with_x(1, &[], &x), x));
        }
        b.note("Z contains the Sylow p-subgroup of Z(G); S^ is cyclic");
        let sub = x_hat_presentation(pr)?;
        let quot = AbelianStructure::cyclic(2);
        return Ok(b.done("sl2-odd.b", TResult::Extension(ExtensionDescriptor::new(sub, quot)?), x));
    }

    if n == 3 && p == 3 && pr.e == 1 && !z_misses_p {
        let x = x_group(pr)?;
        b.note("n = p = 3, 3 | q-1, Z contains the Sylow 3-subgroup of Z(G)");
        if pr.m() % 3 != 0 {
            b.note("3 does not divide (q-1)/|Det(G)|: G/Z = PGL(3,q) x V");
            return Ok(b.done("sl3-char3.a", with_x(3, &[], &x), x));
        }
        if q % 9 == 1 {
            b.note("q = 1 mod 9: G/Z = PSL(3,q) x V");
            return Ok(b.done("sl3-char3.b", with_x(4, &[], &x), x));
        }
        b.note("q = 4, 7 mod 9: G/Z = PSL(3,q) x V");
        return Ok(b.done("sl3-char3.c", with_x(1, &[2, 2], &x), x));
    }

    if p == 2 && n == 3 {
        let x = x_group(pr)?;
        let k = pr.det_order / pr.det_of_z();
        if k % 2 == 0 {
            b.note("2 divides |Det(G)/Det(Z)|");
            return Ok(b.done("sl3-char2.a", with_x(1, &[], &x), x));
        }
        if (q - 1) % 4 == 0 {
            b.note("2 does not divide |Det(G)/Det(Z)|, 4 | q-1");
            return Ok(b.done("sl3-char2.b.i", with_x(1, &[], &x), x));
        }
        b.note("2 does not divide |Det(G)/Det(Z)|, 4 | q+1");
        return Ok(b.done("sl3-char2.b.ii", with_x(1, &[2], &x), x));
    }

    if p == 2 && n == 2 {
        let x = det_quotient(pr);
        let s = arith::valuation(pr.det_order as u128, 2);
        let r = arith::valuation(pr.z_order as u128, 2);
        if q % 4 == 3 {
            let t = arith::valuation(q as u128 + 1, 2);
            b.note(format!("q = 3 mod 4: r = {r}, s = {s}, t = {t}"));
            let (tag, free, tor): (&str, u32, Vec<u64>) = match (s, r) {
                (0, 0) => ("sl2-char2.A.1.a", 0, vec![4, 2]),
                (0, _) if q % 8 == 3 => ("sl2-char2.A.1.b.i", 1, vec![3]),
                (0, _) => ("sl2-char2.A.1.b.ii", 2, vec![]),
                (_, 0) => ("sl2-char2.A.2.a", 1, vec![2]),
                _ => ("sl2-char2.A.2.b", 2, vec![]),
            };
            return Ok(b.done(tag, with_x(free, &tor, &x), x));
        }
        let t = arith::valuation(q as u128 - 1, 2);
        b.note(format!("q = 1 mod 4: r = {r}, s = {s}, t = {t}"));
        let (tag, free, tor): (&str, u32, Vec<u64>) = if r == 0 {
            if s == 0 {
                ("sl2-char2.B.1.a", 0, vec![4, 2])
            } else {
                ("sl2-char2.B.1.b", 1, vec![])
            }
        } else if r < s + 1 && s + 1 <= t {
            ("sl2-char2.B.2.a", 1, vec![])
        } else if r == s + 1 && s + 1 <= t {
            if q % 8 == 1 {
                ("sl2-char2.B.2.b.i", 2, vec![])
            } else {
                ("sl2-char2.B.2.b.ii", 1, vec![3])
            }
        } else if r == s && s == t {
            ("sl2-char2.B.2.c", 2, vec![])
        } else {
            return Err(Error::Ambiguous(format!(
                "(r, s, t) = ({r}, {s}, {t}) matches none of the stated clauses for q = 1 mod 4"
            )));
        };
        return Ok(b.done(tag, with_x(free, &tor, &x), x));
    }

    // the general theorem: n >= 2e, remaining exclusions handled above
    if n < 2 * pr.e {
        return Err(Error::domain("uncovered case: n < 2e with noncyclic Sylow"));
    }
    let x = x_group(pr)?;
    b.note("n >= 2e and no excluded configuration applies");
    Ok(b.done("main", with_x(1, &[], &x), x))
}
