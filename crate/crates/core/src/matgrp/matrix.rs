use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;

/// Largest supported matrix dimension.
pub const MAX_DIM: usize = 6;

/// A square matrix over a field, entries stored as field encodings, row-major.
#[derive(Clone, Copy)]
pub struct Matrix {
    n: u8,
    a: [u16; MAX_DIM * MAX_DIM],
}

impl Matrix {
    fn zero(n: usize) -> Self {
        Matrix { n: n as u8, a: [0; MAX_DIM * MAX_DIM] }
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.a[i * self.n as usize + j] as u32
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: u32) {
        self.a[i * self.n as usize + j] = v as u16;
    }

    pub fn entries(&self) -> &[u16] {
        &self.a[..self.n as usize * self.n as usize]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.get(i, j) == 0))
    }

    /// Exactly one nonzero entry in each row and column.
    pub fn is_monomial(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).filter(|&j| self.get(i, j) != 0).count() == 1)
            && (0..n).all(|j| (0..n).filter(|&i| self.get(i, j) != 0).count() == 1)
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries() == other.entries()
    }
}
impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.entries().hash(state);
    }
}

impl PartialOrd for Matrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Matrix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.entries().cmp(other.entries()))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

/// Shared setting for a computation: the field, the dimension and a scalar
/// subgroup `Z`. Matrices are stored as canonical coset representatives
/// modulo `Z`, so every group built on this context lives in `GL(n,q)/Z`.
pub struct MatrixContext {
    field: Arc<FieldSpec>,
    n: usize,
    z_order: u32,
    scalar_step: u32,
}

impl fmt::Debug for MatrixContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GL({},{})/Z{}", self.n, self.field.order(), self.z_order)
    }
}

impl MatrixContext {
    pub fn new(field: &Arc<FieldSpec>, n: usize, z_order: u32) -> Result<Arc<Self>> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::domain(format!("matrix dimension {n} outside 1..={MAX_DIM}")));
        }
        let m = field.order() - 1;
        if z_order == 0 || m % z_order != 0 {
            return Err(Error::domain(format!("scalar subgroup order {z_order} does not divide {m}")));
        }
        Ok(Arc::new(MatrixContext { field: Arc::clone(field), n, z_order, scalar_step: m / z_order }))
    }

    /// Same field and dimension, different scalar subgroup.
    pub fn with_scalars(&self, z_order: u32) -> Result<Arc<Self>> {
        MatrixContext::new(&self.field, self.n, z_order)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn z_order(&self) -> u32 {
        self.z_order
    }

    /// Elements of the scalar subgroup `Z` as field encodings.
    pub fn scalars(&self) -> Vec<u32> {
        (0..self.z_order).map(|j| self.field.exp((j * self.scalar_step) as u64)).collect()
    }

    pub fn identity(&self) -> Matrix {
        let mut m = Matrix::zero(self.n);
        for i in 0..self.n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from field encodings and canonicalizes it. Fails on
    /// bad shapes, bad encodings or singular input.
    pub fn from_rows(&self, rows: &[Vec<u32>]) -> Result<Matrix> {
        if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::domain(format!("expected a {0}x{0} matrix", self.n)));
        }
        let mut m = Matrix::zero(self.n);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if v >= self.q() {
                    return Err(Error::domain(format!("{v} is not an element of GF({})", self.q())));
                }
                m.set(i, j, v);
            }
        }
        if self.det(&m) == 0 {
            return Err(Error::domain("singular matrix"));
        }
        Ok(self.canonical(&m))
    }

    /// Like [`from_rows`](Self::from_rows) but entries are integers read in the prime field.
    pub fn from_ints(&self, rows: &[&[i64]]) -> Result<Matrix> {
        let r: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&x| self.field.from_int(x)).collect()).collect();
        self.from_rows(&r)
    }

    pub fn diag(&self, d: &[u32]) -> Result<Matrix> {
        let rows: Vec<Vec<u32>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| if i == j { d.get(i).copied().unwrap_or(0) } else { 0 }).collect())
            .collect();
        self.from_rows(&rows)
    }

    /// Block-diagonal matrix; blocks must fill the dimension.
    pub fn block_diag(&self, blocks: &[Vec<Vec<u32>>]) -> Result<Matrix> {
        let total: usize = blocks.iter().map(|b| b.len()).sum();
        if total != self.n {
            return Err(Error::domain("blocks do not fill the dimension"));
        }
        let mut rows = vec![vec![0u32; self.n]; self.n];
        let mut off = 0;
        for b in blocks {
            for (i, r) in b.iter().enumerate() {
                for (j, &v) in r.iter().enumerate() {
                    rows[off + i][off + j] = v;
                }
            }
            off += b.len();
        }
        self.from_rows(&rows)
    }

    /// Product of representatives, without canonicalization.
    #[inline]
    pub fn raw_mul(&self, x: &Matrix, y: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(n);
        let f = &*self.field;
        if f.degree() == 1 {
            let p = f.order() as u64;
            for i in 0..n {
                for j in 0..n {
                    let mut acc = 0u64;
                    for k in 0..n {
                        acc += x.get(i, k) as u64 * y.get(k, j) as u64;
                    }
                    out.set(i, j, (acc % p) as u32);
                }
            }
        } else {
            for i in 0..n {
                for j in 0..n {
                    let mut acc = 0u32;
                    for k in 0..n {
                        acc = f.add(acc, f.mul(x.get(i, k), y.get(k, j)));
                    }
                    out.set(i, j, acc);
                }
            }
        }
        out
    }

    pub fn scale(&self, x: &Matrix, lambda: u32) -> Matrix {
        let mut out = *x;
        let nn = self.n * self.n;
        for v in out.a[..nn].iter_mut() {
            *v = self.field.mul(*v as u32, lambda) as u16;
        }
        out
    }

    /// The representative of `x Z` with least entry sequence.
    #[inline]
    pub fn canonical(&self, x: &Matrix) -> Matrix {
        if self.z_order == 1 {
            return *x;
        }
        let first = x.entries().iter().copied().find(|&v| v != 0).expect("nonzero matrix") as u32;
        let f = &*self.field;
        let base = f.log(first) as u64;
        let mut best = (u32::MAX, 0u64);
        for j in 0..self.z_order as u64 {
            let shift = j * self.scalar_step as u64;
            let v = f.exp(base + shift);
            if v < best.0 {
                best = (v, shift);
            }
        }
        if best.1 == 0 {
            *x
        } else {
            self.scale(x, f.exp(best.1))
        }
    }

    #[inline]
    pub fn mul(&self, x: &Matrix, y: &Matrix) -> Matrix {
        self.canonical(&self.raw_mul(x, y))
    }

    /// Determinant of the representative (well defined modulo `Det(Z)`).
    pub fn det(&self, x: &Matrix) -> u32 {
        let f = &*self.field;
        let n = self.n;
        let mut m = x.rows();
        let mut det = 1u32;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| m[r][c] != 0) else { return 0 };
            if piv != c {
                m.swap(piv, c);
                det = f.neg(det);
            }
            let pv = m[c][c];
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for r in c + 1..n {
                if m[r][c] != 0 {
                    let factor = f.mul(m[r][c], inv);
                    for k in c..n {
                        let v = f.mul(factor, m[c][k]);
                        m[r][k] = f.sub(m[r][k], v);
                    }
                }
            }
        }
        det
    }

    /// Inverse of the representative, without canonicalization.
    pub fn raw_inv(&self, x: &Matrix) -> Matrix {
        let f = &*self.field;
        let n = self.n;
        let mut m = x.rows();
        let mut inv = self.identity().rows();
        for c in 0..n {
            let piv = (c..n).find(|&r| m[r][c] != 0).expect("invertible matrix");
            m.swap(piv, c);
            inv.swap(piv, c);
            let s = f.inv(m[c][c]);
            for k in 0..n {
                m[c][k] = f.mul(m[c][k], s);
                inv[c][k] = f.mul(inv[c][k], s);
            }
            for r in 0..n {
                if r != c && m[r][c] != 0 {
                    let factor = m[r][c];
                    for k in 0..n {
                        let a = f.mul(factor, m[c][k]);
                        m[r][k] = f.sub(m[r][k], a);
                        let b = f.mul(factor, inv[c][k]);
                        inv[r][k] = f.sub(inv[r][k], b);
                    }
                }
            }
        }
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, inv[i][j]);
            }
        }
        out
    }

    pub fn inv(&self, x: &Matrix) -> Matrix {
        self.canonical(&self.raw_inv(x))
    }

    /// `g x g^-1`.
    pub fn conj(&self, g: &Matrix, x: &Matrix) -> Matrix {
        self.mul(&self.raw_mul(g, x), &self.raw_inv(g))
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let ab = self.raw_mul(a, b);
        let ba = self.raw_mul(b, a);
        self.mul(&ab, &self.raw_inv(&ba))
    }

    pub fn pow(&self, x: &Matrix, mut k: u64) -> Matrix {
        let mut base = *x;
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.raw_mul(&acc, &base);
            }
            base = self.raw_mul(&base, &base);
            k >>= 1;
        }
        self.canonical(&acc)
    }

    pub fn is_identity(&self, x: &Matrix) -> bool {
        self.canonical(x) == self.identity()
    }

    /// True when the representative is a scalar matrix (upstairs).
    pub fn is_scalar(&self, x: &Matrix) -> bool {
        let d = x.get(0, 0);
        x.is_diagonal() && (0..self.n).all(|i| x.get(i, i) == d)
    }

    /// Order of `x` in `GL(n,q)/Z`.
    pub fn order(&self, x: &Matrix) -> u64 {
        let id = self.identity();
        let x = self.canonical(x);
        let mut y = x;
        let mut k = 1;
        while y != id {
            y = self.mul(&y, &x);
            k += 1;
        }
        k
    }

    /// Whether `det(x)` lies in the subgroup of `F_q^x` of order `det_order`.
    pub fn det_in(&self, x: &Matrix, det_order: u32) -> bool {
        let d = self.det(x);
        d != 0 && {
            let m = self.q() - 1;
            (self.field.log(d) as u64 * det_order as u64) % m as u64 == 0
        }
    }

    pub fn format(&self, x: &Matrix) -> String {
        let rows: Vec<String> = x
            .rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r
                    .iter()
                    .map(|&v| if self.field.degree() == 1 { v.to_string() } else { self.field.format(v) })
                    .collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_over_gf4() {
        let f = FieldSpec::new(4).unwrap();
        let ctx = MatrixContext::new(&f, 2, 1).unwrap();
        let a = ctx.from_rows(&[vec![1, 2], vec![0, 1]]).unwrap();
        let b = ctx.from_rows(&[vec![2, 0], vec![3, 1]]).unwrap();
        let ab = ctx.mul(&a, &b);
        assert_eq!(ctx.mul(&ab, &ctx.inv(&ab)), ctx.identity());
        assert_eq!(ctx.det(&ab), f.mul(ctx.det(&a), ctx.det(&b)));
        assert_eq!(ctx.order(&a), 2);
    }

    #[test]
    fn canonical_reps_mod_scalars() {
        let f = FieldSpec::new(7).unwrap();
        let ctx = MatrixContext::new(&f, 2, 6).unwrap();
        let a = ctx.from_ints(&[&[3, 1], &[0, 5]]).unwrap();
        assert_eq!(a.get(0, 0), 1);
        for l in 1..7 {
            assert_eq!(ctx.canonical(&ctx.scale(&a, l)), a);
        }
        let minus = ctx.from_ints(&[&[-1, 0], &[0, -1]]).unwrap();
        assert_eq!(minus, ctx.identity());
        let pm = MatrixContext::new(&f, 2, 2).unwrap();
        let y = pm.from_ints(&[&[0, 1], &[-1, 0]]).unwrap();
        assert_eq!(pm.order(&y), 2);
        assert_eq!(ctx.with_scalars(1).unwrap().order(&y), 4);
    }

    #[test]
    fn singular_rejected() {
        let f = FieldSpec::new(5).unwrap();
        let ctx = MatrixContext::new(&f, 2, 1).unwrap();
        assert!(ctx.from_ints(&[&[1, 2], &[2, 4]]).is_err());
        assert!(MatrixContext::new(&f, 2, 3).is_err());
        assert!(MatrixContext::new(&f, 7, 1).is_err());
    }
}
