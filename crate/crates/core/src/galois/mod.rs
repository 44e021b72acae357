//! Finite fields F_{p^n} with dense coefficient representation.
//!
//! Elements are stored as coefficient arrays over F_p modulo a fixed monic
//! irreducible polynomial. The modulus is the first irreducible found when
//! monic candidates are scanned in index order, so two contexts built from the
//! same `(p, n)` are identical.

mod poly;

pub use poly::FFPoly;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 12;
/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

/// Element of a finite field.
///
/// `field` is the order of the owning field and acts as its identifier: for a
/// given order there is exactly one context.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FFElem {
    field: u32,
    c: [u32; MAX_DEGREE],
}

impl FFElem {
    /// Coefficient of `u^i`.
    pub fn coeff(&self, i: usize) -> u32 {
        self.c[i]
    }

    pub fn field_order(&self) -> u64 {
        self.field as u64
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

impl Ord for FFElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl PartialOrd for FFElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| match i {
                0 => format!("{x}"),
                1 => format!("{x}u"),
                _ => format!("{x}u^{i}"),
            })
            .collect();
        if nz.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", nz.join("+"))
        }
    }
}

/// A finite field F_{p^n}.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldCtx {
    p: u32,
    n: usize,
    /// Monic modulus, low-to-high, length `n + 1`.
    modulus: Vec<u32>,
    #[serde(skip)]
    order: u64,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.n, self.modulus)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p.
fn rem_mod_p(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let dm = m.len() - 1;
    let p64 = p as u64;
    while r.len() > dm {
        let lead = r[r.len() - 1] % p64;
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let sub = lead * mi as u64 % p64;
                r[shift + i] = (r[shift + i] + p64 - sub) % p64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|x| (x % p64) as u32).collect()
}

/// Monic polynomial of degree `d` over F_p whose lower coefficients encode `idx`
/// in base p.
fn monic_from_index(idx: u64, d: usize, p: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(d + 1);
    let mut t = idx;
    for _ in 0..d {
        v.push((t % p as u64) as u32);
        t /= p as u64;
    }
    v.push(1);
    v
}

fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let g = monic_from_index(idx, d, p);
            if rem_mod_p(f, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    /// Builds F_{p^n}.
    pub fn new(p: u32, n: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::pre(format!("{p} is not prime")));
        }
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::pre(format!(
                "extension degree {n} outside 1..={MAX_DEGREE}"
            )));
        }
        let order = (p as u64)
            .checked_pow(n as u32)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or_else(|| Error::Budget(format!("field {p}^{n} exceeds 2^20 elements")))?;
        let count = (p as u64).pow(n as u32);
        for idx in 0..count {
            let cand = monic_from_index(idx, n, p);
            if is_irreducible_mod_p(&cand, p) {
                return Ok(FieldCtx {
                    p,
                    n,
                    modulus: cand,
                    order,
                });
            }
        }
        Err(Error::inv(format!(
            "no irreducible polynomial of degree {n} over F_{p}"
        )))
    }

    /// Rebuilds the cached order after deserialization and validates the modulus.
    pub fn validated(mut self) -> Result<Self> {
        let fresh = FieldCtx::new(self.p, self.n)?;
        if fresh.modulus != self.modulus {
            return Err(Error::pre("modulus does not match the canonical choice"));
        }
        self.order = fresh.order;
        Ok(self)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// JSON dump `{"p":..,"n":..,"modulus":[..]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"p": self.p, "n": self.n, "modulus": self.modulus})
    }

    fn id(&self) -> u32 {
        self.order as u32
    }

    fn check(&self, a: &FFElem) -> Result<()> {
        if a.field != self.id() {
            return Err(Error::pre(format!(
                "element of F_{} used in F_{}",
                a.field, self.order
            )));
        }
        Ok(())
    }

    pub fn owns(&self, a: &FFElem) -> bool {
        a.field == self.id()
    }

    pub fn zero(&self) -> FFElem {
        FFElem {
            field: self.id(),
            c: [0; MAX_DEGREE],
        }
    }

    pub fn one(&self) -> FFElem {
        self.from_int(1)
    }

    /// The class of `u`, the root of the modulus.
    pub fn gen(&self) -> FFElem {
        if self.n == 1 {
            // modulus is x, so u = 0
            return self.zero();
        }
        let mut e = self.zero();
        e.c[1] = 1;
        e
    }

    pub fn from_int(&self, k: i64) -> FFElem {
        let mut e = self.zero();
        e.c[0] = k.rem_euclid(self.p as i64) as u32;
        e
    }

    pub fn from_coeffs(&self, cs: &[u32]) -> Result<FFElem> {
        if cs.len() > self.n {
            return Err(Error::pre(format!(
                "{} coefficients given for a degree-{} field",
                cs.len(),
                self.n
            )));
        }
        let mut e = self.zero();
        for (i, &x) in cs.iter().enumerate() {
            if x >= self.p {
                return Err(Error::pre(format!(
                    "coefficient {x} not reduced mod {}",
                    self.p
                )));
            }
            e.c[i] = x;
        }
        Ok(e)
    }

    pub fn coeffs(&self, a: &FFElem) -> Vec<u32> {
        a.c[..self.n].to_vec()
    }

    /// Element with base-p digits `idx` (lowest coefficient first).
    pub fn from_index(&self, idx: u64) -> FFElem {
        let mut e = self.zero();
        let mut t = idx;
        for i in 0..self.n {
            e.c[i] = (t % self.p as u64) as u32;
            t /= self.p as u64;
        }
        e
    }

    pub fn index(&self, a: &FFElem) -> u64 {
        let mut t = 0u64;
        for i in (0..self.n).rev() {
            t = t * self.p as u64 + a.c[i] as u64;
        }
        t
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.order).map(move |i| self.from_index(i))
    }

    /// Nonzero elements in index order.
    pub fn units(&self) -> impl Iterator<Item = FFElem> + '_ {
        (1..self.order).map(move |i| self.from_index(i))
    }

    pub fn add(&self, a: FFElem, b: FFElem) -> FFElem {
        debug_assert!(self.owns(&a) && self.owns(&b));
        let mut e = a;
        for i in 0..self.n {
            let s = a.c[i] + b.c[i];
            e.c[i] = if s >= self.p { s - self.p } else { s };
        }
        e
    }

    pub fn sub(&self, a: FFElem, b: FFElem) -> FFElem {
        debug_assert!(self.owns(&a) && self.owns(&b));
        let mut e = a;
        for i in 0..self.n {
            e.c[i] = if a.c[i] >= b.c[i] {
                a.c[i] - b.c[i]
            } else {
                a.c[i] + self.p - b.c[i]
            };
        }
        e
    }

    pub fn neg(&self, a: FFElem) -> FFElem {
        self.sub(self.zero(), a)
    }

    /// Multiplication by an integer.
    pub fn scale(&self, a: FFElem, k: i64) -> FFElem {
        let k = k.rem_euclid(self.p as i64) as u64;
        let mut e = a;
        for i in 0..self.n {
            e.c[i] = (a.c[i] as u64 * k % self.p as u64) as u32;
        }
        e
    }

    pub fn mul(&self, a: FFElem, b: FFElem) -> FFElem {
        debug_assert!(self.owns(&a) && self.owns(&b));
        let n = self.n;
        let p = self.p as u64;
        if n == 1 {
            let mut e = self.zero();
            e.c[0] = (a.c[0] as u64 * b.c[0] as u64 % p) as u32;
            return e;
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..n {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + a.c[i] as u64 * b.c[j] as u64) % p;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            // u^n = -(m_0 + ... + m_{n-1} u^{n-1})
            for i in 0..n {
                let t = lead * self.modulus[i] as u64 % p;
                prod[k - n + i] = (prod[k - n + i] + p - t) % p;
            }
            prod[k] = 0;
        }
        let mut e = self.zero();
        for i in 0..n {
            e.c[i] = prod[i] as u32;
        }
        e
    }

    pub fn square(&self, a: FFElem) -> FFElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FFElem, mut e: u64) -> FFElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Power with a signed exponent; negative exponents need `a != 0`.
    pub fn pow_i(&self, a: FFElem, e: i64) -> Result<FFElem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: FFElem) -> Result<FFElem> {
        if a.is_zero() {
            return Err(Error::pre("inversion of zero"));
        }
        Ok(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: FFElem, b: FFElem) -> Result<FFElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Absolute Frobenius a -> a^p.
    pub fn frobenius(&self, a: FFElem) -> FFElem {
        self.pow(a, self.p as u64)
    }

    pub fn try_add(&self, a: FFElem, b: FFElem) -> Result<FFElem> {
        self.check(&a)?;
        self.check(&b)?;
        Ok(self.add(a, b))
    }

    pub fn try_mul(&self, a: FFElem, b: FFElem) -> Result<FFElem> {
        self.check(&a)?;
        self.check(&b)?;
        Ok(self.mul(a, b))
    }

    pub fn try_inv(&self, a: FFElem) -> Result<FFElem> {
        self.check(&a)?;
        self.inv(a)
    }

    pub fn try_pow(&self, a: FFElem, e: u64) -> Result<FFElem> {
        self.check(&a)?;
        Ok(self.pow(a, e))
    }

    /// Square root when one exists (odd characteristic or characteristic 2).
    pub fn sqrt(&self, a: FFElem) -> Option<FFElem> {
        if a.is_zero() {
            return Some(a);
        }
        if self.p == 2 {
            return Some(self.pow(a, self.order / 2));
        }
        poly::roots_in_field(
            self,
            &FFPoly::new(vec![self.neg(a), self.zero(), self.one()]),
        )
        .into_iter()
        .next()
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FFElem) -> u64 {
        let n = self.order - 1;
        let mut ord = n;
        let mut t = n;
        let mut d = 2;
        while d * d <= t {
            if t % d == 0 {
                while t % d == 0 {
                    t /= d;
                }
                while ord % d == 0 && self.pow(a, ord / d) == self.one() {
                    ord /= d;
                }
            }
            d += 1;
        }
        if t > 1 && ord % t == 0 && self.pow(a, ord / t) == self.one() {
            ord /= t;
        }
        ord
    }

    /// Degree over F_{p^sub_n} of the smallest subfield containing `a`.
    pub fn degree_over(&self, a: FFElem, sub_n: usize) -> usize {
        let q = (self.p as u64).pow(sub_n as u32);
        let mut x = self.pow(a, q);
        let mut d = 1;
        while x != a {
            x = self.pow(x, q);
            d += 1;
        }
        d
    }
}

/// Explicit embedding of a subfield F_{p^n} into F_{p^N}.
///
/// The generator of the subfield is sent to the index-least root of its modulus
/// in the big field.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub sub: FieldCtx,
    pub big: FieldCtx,
    images: Vec<FFElem>,
}

impl Embedding {
    pub fn new(sub: &FieldCtx, big: &FieldCtx) -> Result<Self> {
        if sub.p != big.p || big.n % sub.n != 0 {
            return Err(Error::pre(format!("{sub:?} is not a subfield of {big:?}")));
        }
        let modulus = FFPoly::new(
            sub.modulus
                .iter()
                .map(|&c| big.from_int(c as i64))
                .collect(),
        );
        let root = poly::roots_in_field(big, &modulus)
            .into_iter()
            .next()
            .ok_or_else(|| Error::inv("subfield modulus has no root in the big field"))?;
        Ok(Embedding::from_root(sub, big, root))
    }

    fn from_root(sub: &FieldCtx, big: &FieldCtx, root: FFElem) -> Self {
        let mut images = Vec::with_capacity(sub.n);
        let mut pw = big.one();
        for _ in 0..sub.n {
            images.push(pw);
            pw = big.mul(pw, root);
        }
        Embedding {
            sub: sub.clone(),
            big: big.clone(),
            images,
        }
    }

    /// Embedding of `lower.big` into `upper.big` that restricts to the given
    /// embeddings on their common subfield: `self.embed(lower.embed(a)) ==
    /// upper.embed(a)`. Least such root of the modulus.
    pub fn compatible(lower: &Embedding, upper: &Embedding) -> Result<Self> {
        let (mid, big) = (&lower.big, &upper.big);
        if lower.sub != upper.sub {
            return Err(Error::pre("embeddings start from different fields"));
        }
        if mid.p != big.p || big.n % mid.n != 0 {
            return Err(Error::pre(format!("{mid:?} is not a subfield of {big:?}")));
        }
        let modulus = FFPoly::new(
            mid.modulus
                .iter()
                .map(|&c| big.from_int(c as i64))
                .collect(),
        );
        let base_gen = lower.sub.gen();
        for root in poly::roots_in_field(big, &modulus) {
            let e = Embedding::from_root(mid, big, root);
            if e.embed(lower.embed(base_gen)) == upper.embed(base_gen) {
                return Ok(e);
            }
        }
        Err(Error::inv("no embedding compatible with the base field"))
    }

    pub fn embed(&self, a: FFElem) -> FFElem {
        debug_assert!(self.sub.owns(&a));
        let mut acc = self.big.zero();
        for i in 0..self.sub.n {
            if a.c[i] != 0 {
                acc = self
                    .big
                    .add(acc, self.big.scale(self.images[i], a.c[i] as i64));
            }
        }
        acc
    }

    /// Inverse of `embed` on its image.
    pub fn preimage(&self, b: FFElem) -> Option<FFElem> {
        let (nn, n, p) = (self.big.n, self.sub.n, self.big.p as u64);
        // augmented matrix rows = big coordinates, columns = sub coordinates
        let mut m: Vec<Vec<u64>> = (0..nn)
            .map(|r| {
                let mut row: Vec<u64> = self.images.iter().map(|im| im.c[r] as u64).collect();
                row.push(b.c[r] as u64);
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(pr) = (row..nn).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, pr);
            let inv = mod_inv(m[row][col], p);
            for c in 0..=n {
                m[row][c] = m[row][c] * inv % p;
            }
            for r in 0..nn {
                if r != row && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in 0..=n {
                        m[r][c] = (m[r][c] + p * p - f * m[row][c] % p) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if (row..nn).any(|r| m[r][n] != 0) {
            return None;
        }
        let mut out = self.sub.zero();
        for (r, &col) in pivots.iter().enumerate() {
            out.c[col] = m[r][n] as u32;
        }
        Some(out)
    }

    /// Relative trace Tr(a) = sum_{i<r} a^{q^i} with q = |sub|.
    pub fn trace(&self, a: FFElem) -> Result<FFElem> {
        let r = self.big.n / self.sub.n;
        let q = self.sub.order;
        let mut acc = self.big.zero();
        let mut x = a;
        for _ in 0..r {
            acc = self.big.add(acc, x);
            x = self.big.pow(x, q);
        }
        self.preimage(acc)
            .ok_or_else(|| Error::inv("trace landed outside the subfield"))
    }

    /// Relative norm N(a) = prod_{i<r} a^{q^i}.
    pub fn norm(&self, a: FFElem) -> Result<FFElem> {
        let r = self.big.n / self.sub.n;
        let q = self.sub.order;
        let mut acc = self.big.one();
        let mut x = a;
        for _ in 0..r {
            acc = self.big.mul(acc, x);
            x = self.big.pow(x, q);
        }
        self.preimage(acc)
            .ok_or_else(|| Error::inv("norm landed outside the subfield"))
    }
}

/// Trace of `a` from the big field of `emb` down to its subfield.
pub fn trace_to_base(a: FFElem, emb: &Embedding) -> Result<FFElem> {
    emb.big.check(&a)?;
    emb.trace(a)
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Number of distinct roots of `f` in the field.
pub fn count_roots(f: &FFPoly, ctx: &FieldCtx) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::pre("zero polynomial has every element as a root"));
    }
    Ok(poly::distinct_root_part(ctx, f).degree().unwrap_or(0))
}

/// Number of roots of `f` in the field, counted with multiplicity.
pub fn count_roots_with_multiplicity(f: &FFPoly, ctx: &FieldCtx) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::pre("zero polynomial has every element as a root"));
    }
    let mut total = 0;
    let mut g = f.clone();
    loop {
        let d = poly::distinct_root_part(ctx, &g);
        let k = d.degree().unwrap_or(0);
        if k == 0 {
            return Ok(total);
        }
        total += k;
        g = poly::divrem(ctx, &g, &d).0;
    }
}

pub use poly::{
    divrem, factor_degrees, poly_add, poly_compose, poly_deriv, poly_eval, poly_gcd, poly_mul,
    poly_pow, poly_powmod, poly_rem, poly_scale, poly_sub, roots_in_field, sqfree_degree,
};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(FieldCtx::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FieldCtx::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldCtx::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldCtx::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldCtx::new(4, 1).is_err());
        assert!(FieldCtx::new(2, 21).is_err());
        assert!(FieldCtx::new(3, 13).is_err());
        assert!(matches!(FieldCtx::new(1031, 2), Err(Error::Budget(_))));
    }

    #[test]
    fn f4_arithmetic() {
        let f = FieldCtx::new(2, 2).unwrap();
        let u = f.gen();
        let u1 = f.add(u, f.one());
        assert_eq!(f.mul(u, u), u1);
        assert_eq!(f.inv(u).unwrap(), u1);
        assert_eq!(f.mul(u, f.one()), u);
        assert!(f.inv(f.zero()).is_err());
    }

    #[test]
    fn f4_enumeration_order() {
        let f = FieldCtx::new(2, 2).unwrap();
        let u = f.gen();
        let els: Vec<_> = f.elements().collect();
        assert_eq!(els, vec![f.zero(), f.one(), u, f.add(u, f.one())]);
        assert_eq!(FieldCtx::new(3, 2).unwrap().elements().count(), 9);
    }

    #[test]
    fn trace_f4_over_f2() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        let f4 = FieldCtx::new(2, 2).unwrap();
        let emb = Embedding::new(&f2, &f4).unwrap();
        assert_eq!(trace_to_base(f4.zero(), &emb).unwrap(), f2.zero());
        assert_eq!(trace_to_base(f4.gen(), &emb).unwrap(), f2.one());
        assert_eq!(trace_to_base(f4.one(), &emb).unwrap(), f2.zero());
    }

    #[test]
    fn ctx_mismatch_is_reported() {
        let f4 = FieldCtx::new(2, 2).unwrap();
        let f8 = FieldCtx::new(2, 3).unwrap();
        assert!(f4.try_mul(f4.gen(), f8.gen()).is_err());
    }

    #[test]
    fn root_counts() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        let f4 = FieldCtx::new(2, 2).unwrap();
        let x2x = FFPoly::from_ints(&f2, &[0, 1, 1]);
        assert_eq!(count_roots(&x2x, &f2).unwrap(), 2);
        let x2x1 = FFPoly::from_ints(&f2, &[1, 1, 1]);
        assert_eq!(count_roots(&x2x1, &f2).unwrap(), 0);
        let x2x1_4 = FFPoly::from_ints(&f4, &[1, 1, 1]);
        assert_eq!(count_roots(&x2x1_4, &f4).unwrap(), 2);
        let sq = FFPoly::from_ints(&f2, &[1, 0, 1]); // (x+1)^2
        assert_eq!(count_roots(&sq, &f2).unwrap(), 1);
        assert_eq!(count_roots_with_multiplicity(&sq, &f2).unwrap(), 2);
        assert!(count_roots(&FFPoly::zero(), &f2).is_err());
    }

    #[test]
    fn json_dump() {
        let f4 = FieldCtx::new(2, 2).unwrap();
        assert_eq!(
            f4.to_json().to_string(),
            r#"{"modulus":[1,1,1],"n":2,"p":2}"#
        );
    }
}
