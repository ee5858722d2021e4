//! Arithmetic in GF(q), q = p0^k, with elements encoded as integers
//! `c0 + c1 p0 + ... + c_{k-1} p0^{k-1}` (coefficients of the residue class).

use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// A finite field together with its log/exp tables.
pub struct FieldSpec {
    characteristic: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u16>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}
impl Eq for FieldSpec {}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c != 0 {
            for (i, &m) in modulus.iter().take(k).enumerate() {
                let sub = c * m as u64 % p as u64;
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + p as u64 - sub) % p as u64;
            }
            prod[deg] = 0;
        }
    }
    prod.truncate(k);
    prod.into_iter().map(|c| c as u32).collect()
}

/// Remainder of `a` modulo monic `b`, coefficients low to high.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (c as u64 * bi as u64 % p as u64) as u32) % p;
            }
        }
        r.pop();
    }
    r
}

fn digits(mut v: u32, p: u32, k: usize) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    for deg in 1..=k / 2 {
        for low in 0..(p as u64).pow(deg as u32) {
            let mut g = digits(low as u32, p, deg);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible polynomial of degree k over GF(p),
/// ordering candidates by the integer encoding of their lower coefficients.
fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    for low in 0..(p as u64).pow(k) {
        let mut f = digits(low as u32, p, k as usize);
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Builds GF(q). Fails unless q is a prime power with 2 <= q <= 2^16.
    pub fn new(q: u64) -> Result<Arc<FieldSpec>> {
        let (p, k) = arith::prime_power(q)
            .ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::domain(format!("field order {q} exceeds 2^16")));
        }
        let (p, q32) = (p as u32, q as u32);
        let modulus = least_irreducible(p, k);
        let slow_mul = |a: u32, b: u32| -> u32 {
            let ka = digits(a, p, k as usize);
            let kb = digits(b, p, k as usize);
            undigits(&poly_mulmod(&ka, &kb, &modulus, p), p)
        };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let (mut base, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let n = q - 1;
        let primes: Vec<u64> = arith::factorize(n).into_iter().map(|(r, _)| r).collect();
        let gen = (1..q32)
            .find(|&v| primes.iter().all(|&r| slow_pow(v, n / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n as usize {
            exp[i] = x;
            exp[i + n as usize] = x;
            log[x as usize] = i as u32;
            x = slow_mul(x, gen);
        }
        let add_table = (k > 1 && q <= 256).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q32 {
                for b in 0..q32 {
                    let da = digits(a, p, k as usize);
                    let db = digits(b, p, k as usize);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q32 + b) as usize] = undigits(&s, p) as u16;
                }
            }
            t
        });
        Ok(Arc::new(FieldSpec { characteristic: p, degree: k, order: q32, modulus, exp, log, add_table }))
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients of the modulus, low degree first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element used for the log tables (least encoding of order q-1).
    pub fn generator(&self) -> u32 {
        if self.order == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.degree == 1 {
            let s = a + b;
            if s >= self.order {
                s - self.order
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[(a * self.order + b) as usize] as u32
        } else {
            let p = self.characteristic;
            let (mut a, mut b, mut place, mut out) = (a, b, 1u32, 0u32);
            while a > 0 || b > 0 {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.degree == 1 {
            if a == 0 {
                0
            } else {
                self.order - a
            }
        } else {
            let p = self.characteristic;
            let (mut a, mut place, mut out) = (a, 1u32, 0u32);
            while a > 0 {
                out += ((p - a % p) % p) * place;
                a /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let n = self.order - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    /// Discrete log to the base `generator()` (a must be nonzero).
    #[inline]
    pub fn log(&self, a: u32) -> u32 {
        self.log[a as usize]
    }

    /// `generator()^i`.
    #[inline]
    pub fn exp(&self, i: u64) -> u32 {
        self.exp[(i % (self.order as u64 - 1)) as usize]
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.order - 1) as i64;
        let l = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        self.exp[l as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: u32) -> u64 {
        let n = (self.order - 1) as u64;
        n / arith::gcd(self.log[a as usize] as u64, n)
    }

    /// Integer image of a prime-field residue (only meaningful in GF(p0)).
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.characteristic as i64) as u32
    }

    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        digits(a, self.characteristic, self.degree as usize)
    }

    pub fn format(&self, a: u32) -> String {
        let c: Vec<String> = self.coeffs(a).iter().map(|d| d.to_string()).collect();
        format!("[{}]", c.join(","))
    }
}

/// An element of a specific field.
#[derive(Clone)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    value: u32,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec.order == other.spec.order && self.value == other.value
    }
}
impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec.format(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec.format(self.value))
    }
}

impl FieldElement {
    pub fn new(spec: &Arc<FieldSpec>, value: u32) -> Result<Self> {
        if value >= spec.order {
            return Err(Error::domain(format!("{value} is not an element encoding of GF({})", spec.order)));
        }
        Ok(FieldElement { spec: Arc::clone(spec), value })
    }

    pub fn from_coeffs(spec: &Arc<FieldSpec>, coeffs: &[u32]) -> Result<Self> {
        if coeffs.len() != spec.degree as usize || coeffs.iter().any(|&c| c >= spec.characteristic) {
            return Err(Error::domain(format!("bad coefficient vector for GF({})", spec.order)));
        }
        Ok(FieldElement { spec: Arc::clone(spec), value: undigits(coeffs, spec.characteristic) })
    }

    pub fn zero(spec: &Arc<FieldSpec>) -> Self {
        FieldElement { spec: Arc::clone(spec), value: 0 }
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        FieldElement { spec: Arc::clone(spec), value: 1 }
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.spec.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.spec.order != other.spec.order {
            return Err(Error::FieldMismatch(format!("GF({}) vs GF({})", self.spec.order, other.spec.order)));
        }
        Ok(())
    }

    fn with(&self, value: u32) -> Self {
        FieldElement { spec: Arc::clone(&self.spec), value }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.spec.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.spec.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.spec.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.spec.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::domain("zero has no inverse"));
        }
        Ok(self.with(self.spec.inv(self.value)))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if self.value == 0 && e < 0 {
            return Err(Error::domain("negative power of zero"));
        }
        Ok(self.with(self.spec.pow(self.value, e)))
    }

    pub fn mult_order(&self) -> Result<u64> {
        if self.value == 0 {
            return Err(Error::domain("zero has no multiplicative order"));
        }
        Ok(self.spec.order_of(self.value))
    }
}

pub fn mul(a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    a.mul(b)
}

pub fn mult_order(a: &FieldElement) -> Result<u64> {
    a.mult_order()
}

/// Least element (by encoding) generating the multiplicative group.
pub fn primitive_element(spec: &Arc<FieldSpec>) -> FieldElement {
    FieldElement { spec: Arc::clone(spec), value: spec.generator() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(spec: &Arc<FieldSpec>, v: u32) -> FieldElement {
        FieldElement::new(spec, v).unwrap()
    }

    #[test]
    fn moduli_are_least_irreducibles() {
        assert_eq!(FieldSpec::new(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldSpec::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldSpec::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldSpec::new(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn spec_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(mul(&el(&f2, 1), &el(&f2, 1)).unwrap(), el(&f2, 1));
        let f4 = FieldSpec::new(4).unwrap();
        let x = FieldElement::from_coeffs(&f4, &[0, 1]).unwrap();
        assert_eq!(mul(&x, &x).unwrap().coeffs(), vec![1, 1]);
        assert_eq!(mul(&x, &x).unwrap().to_string(), "[1,1]");
        let f5 = FieldSpec::new(5).unwrap();
        assert_eq!(mul(&el(&f5, 2), &el(&f5, 3)).unwrap(), el(&f5, 1));

        assert_eq!(mult_order(&el(&f5, 1)).unwrap(), 1);
        assert_eq!(mult_order(&el(&f5, 2)).unwrap(), 4);
        assert_eq!(mult_order(&primitive_element(&f4)).unwrap(), 3);
        assert!(mult_order(&el(&f5, 0)).is_err());

        assert_eq!(primitive_element(&f2).value(), 1);
        assert_eq!(primitive_element(&f5).value(), 2);
        assert_eq!(primitive_element(&f4).coeffs(), vec![0, 1]);
    }

    #[test]
    fn mismatched_fields_rejected() {
        let f4 = FieldSpec::new(4).unwrap();
        let f5 = FieldSpec::new(5).unwrap();
        assert!(matches!(mul(&el(&f4, 1), &el(&f5, 1)), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn bad_orders_rejected() {
        assert!(FieldSpec::new(6).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(1 << 17).is_err());
        assert!(FieldSpec::new(1 << 16).is_ok());
    }

    #[test]
    fn orders_divide_group_order_exhaustively() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64] {
            let f = FieldSpec::new(q).unwrap();
            for v in 1..q as u32 {
                let a = el(&f, v);
                let m = mult_order(&a).unwrap();
                assert_eq!((q - 1) % m, 0);
                assert_eq!(a.pow(m as i64).unwrap().value(), 1);
                // brute-force order
                let mut x = 1u32;
                let mut k = 0;
                loop {
                    x = f.mul(x, v);
                    k += 1;
                    if x == 1 {
                        break;
                    }
                }
                assert_eq!(k, m);
            }
        }
    }

    #[test]
    fn primitive_elements_have_full_order() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 81, 121, 125, 256, 343] {
            let f = FieldSpec::new(q).unwrap();
            let g = primitive_element(&f);
            assert_eq!(g.pow((q - 1) as i64).unwrap().value(), 1);
            for m in arith::divisors(q - 1) {
                if m < q - 1 {
                    assert_ne!(g.pow(m as i64).unwrap().value(), 1, "q={q} m={m}");
                }
            }
            // least such element
            for v in 1..g.value() {
                assert!(el(&f, v).mult_order().unwrap() < q - 1);
            }
        }
    }

    #[test]
    fn large_field_addition_without_table() {
        let f = FieldSpec::new(3u64.pow(6)).unwrap();
        for a in (0..729u32).step_by(7) {
            for b in (0..729u32).step_by(11) {
                assert_eq!(f.sub(f.add(a, b), b), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
    }
}
