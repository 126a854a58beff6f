//! Arithmetic in `GF(p^k)`.
//!
//! An element is stored as the integer `sum c_i p^i` of its power-basis
//! coordinates `c_0, ..., c_{k-1}`, so integer order on elements is the
//! lexicographic order on coordinates read from the top degree down
//! (`0 < 1 < x < x+1` in `GF(4)`). Multiplication goes through discrete
//! log tables built once per field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field this module will tabulate.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Position of the element in the field's canonical order.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct Inner {
    p: u32,
    k: u32,
    size: u32,
    /// Monic, low degree first, length `k + 1`.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i < size - 1`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`.
    log: Vec<u32>,
}

/// A finite field `GF(p^k)` with a deterministic defining polynomial.
///
/// Cheap to clone; all clones share the same tables.
#[derive(Clone, Debug)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^k` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

/// Builds `GF(p^k)`; the modulus is the smallest monic irreducible of
/// degree `k` in the element order described at module level.
pub fn make_field(p: u32, k: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, k)
}

// Dense polynomial helpers over F_p, low degree first.
mod fp_poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &mi) in m.iter().enumerate() {
                let sub = (c as u64 * mi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime; Fermat.
        let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    /// Coefficients of `index` in base `p`, `len` digits.
    pub fn digits(mut index: u64, p: u32, len: usize) -> Vec<u32> {
        (0..len)
            .map(|_| {
                let d = (index % p as u64) as u32;
                index /= p as u64;
                d
            })
            .collect()
    }

    /// A polynomial of degree `k` with no monic factor of degree `1..=k/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        for d in 1..=k / 2 {
            let count = (p as u64).pow(d as u32);
            for low in 0..count {
                let mut g = digits(low, p, d);
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FieldCtx {
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let size = (p as u64)
            .checked_pow(k)
            .filter(|&s| s <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge { p, k })?;
        let modulus = (0..size)
            .map(|low| {
                let mut f = fp_poly::digits(low, p, k as usize);
                f.push(1);
                f
            })
            .find(|f| fp_poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");

        let size = size as u32;
        let encode = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        let slow_mul = |a: u32, b: u32| {
            let pa = fp_poly::digits(a as u64, p, k as usize);
            let pb = fp_poly::digits(b as u64, p, k as usize);
            encode(&fp_poly::rem(&fp_poly::mul(&pa, &pb, p), &modulus, p))
        };

        // Smallest primitive element, and its power table.
        let order = size - 1;
        let mut exp = Vec::with_capacity(order as usize);
        for g in 1..size {
            exp.clear();
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = slow_mul(x, g);
                if x == 1 || exp.len() > order as usize {
                    break;
                }
            }
            if exp.len() == order as usize {
                break;
            }
        }
        debug_assert_eq!(exp.len(), order as usize);
        let mut log = vec![0u32; size as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        Ok(FieldCtx(Arc::new(Inner { p, k, size, modulus, exp, log })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    /// Number of elements, `p^k`.
    pub fn size(&self) -> u32 {
        self.0.size
    }

    /// The defining polynomial, low degree first (monic, length `k + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The class of the indeterminate `x`; a field generator when `k > 1`.
    pub fn generator(&self) -> FieldElement {
        self.from_coeffs(&[0, 1]).expect("reduction cannot fail")
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.size).map(FieldElement)
    }

    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.0.size).then_some(FieldElement(index))
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        fp_poly::digits(x.0 as u64, self.0.p, self.0.k as usize)
    }

    /// Reduces `coeffs` (low degree first, any length) modulo the defining
    /// polynomial.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        let p = self.0.p;
        let c: Vec<u32> = coeffs.iter().map(|&c| c % p).collect();
        let r = fp_poly::rem(&c, &self.0.modulus, p);
        Ok(FieldElement(r.iter().rev().fold(0u32, |acc, &d| acc * p + d)))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.0.k == 1 {
            return FieldElement((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut place, mut out) = (a.0, b.0, 1u32, 0u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let (mut x, mut place, mut out) = (a.0, 1u32, 0u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = self.0.size - 1;
        let e = (self.0.log[a.0 as usize] as u64 + self.0.log[b.0 as usize] as u64) % order as u64;
        FieldElement(self.0.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let order = self.0.size - 1;
        let e = (order - self.0.log[a.0 as usize]) % order;
        Some(FieldElement(self.0.exp[e as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = (self.0.size - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64 * (e % order) % order;
        FieldElement(self.0.exp[l as usize])
    }

    /// `j` with `q = p^j` and `j | k`, i.e. `GF(q)` is a subfield.
    pub fn subfield_degree(&self, q: u64) -> Result<u32> {
        let err = Error::NotSubfield { q, p: self.0.p, k: self.0.k };
        match prime_power(q) {
            Some((p, j)) if p == self.0.p && self.0.k.is_multiple_of(j) => Ok(j),
            _ => Err(err),
        }
    }

    /// The relative Frobenius `x -> x^q`.
    pub fn frobenius(&self, x: FieldElement, q: u64) -> Result<FieldElement> {
        self.subfield_degree(q)?;
        Ok(self.pow(x, q))
    }

    pub fn in_subfield(&self, x: FieldElement, q: u64) -> Result<bool> {
        Ok(self.frobenius(x, q)? == x)
    }

    /// Renders an element as a polynomial in `x`, top degree first:
    /// `0`, `1`, `x`, `x+1`, `2x^2+x+2`.
    pub fn format(&self, a: FieldElement) -> String {
        let c = self.coeffs(a);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &ci)| ci != 0)
            .map(|(d, &ci)| {
                let coef = if ci == 1 && d > 0 { String::new() } else { ci.to_string() };
                match d {
                    0 => coef,
                    1 => format!("{coef}x"),
                    _ => format!("{coef}x^{d}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Inverse of [`format`](FieldCtx::format).
    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        let err = || Error::Parse { what: "field element", input: s.to_string() };
        let p = self.0.p;
        let mut coeffs = vec![0u32; self.0.k as usize];
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        for term in s.split('+') {
            let (coef, deg) = match term.find('x') {
                None => (term, 0usize),
                Some(pos) => {
                    let rest = &term[pos + 1..];
                    let deg = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').and_then(|d| d.parse().ok()).ok_or_else(err)?
                    };
                    (&term[..pos], deg)
                }
            };
            let c: u32 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| err())? };
            if c >= p || deg >= coeffs.len() {
                return Err(err());
            }
            coeffs[deg] = (coeffs[deg] + c) % p;
        }
        self.from_coeffs(&coeffs)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}
