//! Univariate polynomials over a finite field.

use super::{FFElem, FieldCtx};

/// Dense univariate polynomial, low-to-high, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FFPoly {
    c: Vec<FFElem>,
}

impl FFPoly {
    pub fn new(mut c: Vec<FFElem>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        FFPoly { c }
    }

    pub fn zero() -> Self {
        FFPoly { c: Vec::new() }
    }

    pub fn constant(a: FFElem) -> Self {
        FFPoly::new(vec![a])
    }

    /// `x - a`.
    pub fn linear(ctx: &FieldCtx, a: FFElem) -> Self {
        FFPoly::new(vec![ctx.neg(a), ctx.one()])
    }

    /// `x^k`.
    pub fn monomial(ctx: &FieldCtx, k: usize) -> Self {
        let mut c = vec![ctx.zero(); k + 1];
        c[k] = ctx.one();
        FFPoly { c }
    }

    pub fn from_ints(ctx: &FieldCtx, cs: &[i64]) -> Self {
        FFPoly::new(cs.iter().map(|&k| ctx.from_int(k)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.c
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, ctx: &FieldCtx, i: usize) -> FFElem {
        self.c.get(i).copied().unwrap_or_else(|| ctx.zero())
    }

    pub fn lead(&self) -> Option<FFElem> {
        self.c.last().copied()
    }

    pub fn is_one(&self, ctx: &FieldCtx) -> bool {
        self.c.len() == 1 && self.c[0] == ctx.one()
    }

    pub fn monic(&self, ctx: &FieldCtx) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => poly_scale(ctx, self, ctx.inv(l).expect("nonzero lead")),
        }
    }
}

pub fn poly_add(ctx: &FieldCtx, a: &FFPoly, b: &FFPoly) -> FFPoly {
    let n = a.c.len().max(b.c.len());
    FFPoly::new(
        (0..n)
            .map(|i| ctx.add(a.coeff(ctx, i), b.coeff(ctx, i)))
            .collect(),
    )
}

pub fn poly_sub(ctx: &FieldCtx, a: &FFPoly, b: &FFPoly) -> FFPoly {
    let n = a.c.len().max(b.c.len());
    FFPoly::new(
        (0..n)
            .map(|i| ctx.sub(a.coeff(ctx, i), b.coeff(ctx, i)))
            .collect(),
    )
}

pub fn poly_scale(ctx: &FieldCtx, a: &FFPoly, k: FFElem) -> FFPoly {
    FFPoly::new(a.c.iter().map(|&x| ctx.mul(x, k)).collect())
}

pub fn poly_mul(ctx: &FieldCtx, a: &FFPoly, b: &FFPoly) -> FFPoly {
    if a.is_zero() || b.is_zero() {
        return FFPoly::zero();
    }
    let mut out = vec![ctx.zero(); a.c.len() + b.c.len() - 1];
    for (i, &x) in a.c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.c.iter().enumerate() {
            out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
        }
    }
    FFPoly::new(out)
}

pub fn poly_pow(ctx: &FieldCtx, a: &FFPoly, mut e: u64) -> FFPoly {
    let mut base = a.clone();
    let mut acc = FFPoly::constant(ctx.one());
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul(ctx, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = poly_mul(ctx, &base, &base);
        }
    }
    acc
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(ctx: &FieldCtx, a: &FFPoly, b: &FFPoly) -> (FFPoly, FFPoly) {
    let db = b.degree().expect("division by the zero polynomial");
    let Some(da) = a.degree() else {
        return (FFPoly::zero(), FFPoly::zero());
    };
    if da < db {
        return (FFPoly::zero(), a.clone());
    }
    let inv_lead = ctx.inv(b.c[db]).expect("nonzero lead");
    let mut r = a.c.clone();
    let mut q = vec![ctx.zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let t = ctx.mul(r[k + db], inv_lead);
        if t.is_zero() {
            continue;
        }
        q[k] = t;
        for (i, &bi) in b.c.iter().enumerate() {
            r[k + i] = ctx.sub(r[k + i], ctx.mul(t, bi));
        }
    }
    r.truncate(db);
    (FFPoly::new(q), FFPoly::new(r))
}

pub fn poly_rem(ctx: &FieldCtx, a: &FFPoly, b: &FFPoly) -> FFPoly {
    divrem(ctx, a, b).1
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn poly_gcd(ctx: &FieldCtx, a: &FFPoly, b: &FFPoly) -> FFPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let r = poly_rem(ctx, &x, &y);
        x = y;
        y = r;
    }
    x.monic(ctx)
}

/// `base^e mod m`.
pub fn poly_powmod(ctx: &FieldCtx, base: &FFPoly, mut e: u64, m: &FFPoly) -> FFPoly {
    let mut b = poly_rem(ctx, base, m);
    let mut acc = poly_rem(ctx, &FFPoly::constant(ctx.one()), m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(ctx, &poly_mul(ctx, &acc, &b), m);
        }
        e >>= 1;
        if e > 0 {
            b = poly_rem(ctx, &poly_mul(ctx, &b, &b), m);
        }
    }
    acc
}

pub fn poly_eval(ctx: &FieldCtx, f: &FFPoly, x: FFElem) -> FFElem {
    f.c.iter()
        .rev()
        .fold(ctx.zero(), |acc, &c| ctx.add(ctx.mul(acc, x), c))
}

pub fn poly_deriv(ctx: &FieldCtx, f: &FFPoly) -> FFPoly {
    FFPoly::new(
        f.c.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ctx.scale(c, i as i64))
            .collect(),
    )
}

/// Composition f(g).
pub fn poly_compose(ctx: &FieldCtx, f: &FFPoly, g: &FFPoly) -> FFPoly {
    let mut acc = FFPoly::zero();
    for &c in f.c.iter().rev() {
        acc = poly_add(ctx, &poly_mul(ctx, &acc, g), &FFPoly::constant(c));
    }
    acc
}

/// Product of the distinct linear factors of `f` over the field.
pub(crate) fn distinct_root_part(ctx: &FieldCtx, f: &FFPoly) -> FFPoly {
    if f.degree().unwrap_or(0) == 0 {
        return FFPoly::constant(ctx.one());
    }
    let x = FFPoly::monomial(ctx, 1);
    let xq = poly_powmod(ctx, &x, ctx.order(), f);
    poly_gcd(ctx, f, &poly_sub(ctx, &xq, &x))
}

/// deg f - deg gcd(f, f').
pub fn sqfree_degree(ctx: &FieldCtx, f: &FFPoly) -> usize {
    let d = f.degree().unwrap_or(0);
    let g = poly_gcd(ctx, f, &poly_deriv(ctx, f));
    d - g.degree().unwrap_or(0)
}

/// Splitting polynomial for equal-degree splitting, parametrized by `delta`.
fn splitter(ctx: &FieldCtx, g: &FFPoly, delta: FFElem) -> FFPoly {
    if ctx.p() == 2 {
        // sum_{i<n} (delta x)^{2^i} mod g
        let mut t = poly_rem(ctx, &FFPoly::new(vec![ctx.zero(), delta]), g);
        let mut acc = t.clone();
        for _ in 1..ctx.n() {
            t = poly_rem(ctx, &poly_mul(ctx, &t, &t), g);
            acc = poly_add(ctx, &acc, &t);
        }
        acc
    } else {
        let base = FFPoly::new(vec![delta, ctx.one()]);
        let e = poly_powmod(ctx, &base, (ctx.order() - 1) / 2, g);
        poly_sub(ctx, &e, &FFPoly::constant(ctx.one()))
    }
}

fn split_roots(ctx: &FieldCtx, g: &FFPoly, out: &mut Vec<FFElem>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = g.monic(ctx);
            out.push(ctx.neg(m.c[0]));
        }
        Some(d) => {
            for delta in ctx.elements() {
                let h = poly_gcd(ctx, g, &splitter(ctx, g, delta));
                let dh = h.degree().unwrap_or(0);
                if dh > 0 && dh < d {
                    let (q, _) = divrem(ctx, g, &h);
                    split_roots(ctx, &h, out);
                    split_roots(ctx, &q, out);
                    return;
                }
            }
            unreachable!("squarefree split polynomial failed to split");
        }
    }
}

/// Distinct roots of `f` in the field, sorted in index order.
pub fn roots_in_field(ctx: &FieldCtx, f: &FFPoly) -> Vec<FFElem> {
    if f.is_zero() {
        return ctx.elements().collect();
    }
    let g = distinct_root_part(ctx, f);
    let mut out = Vec::new();
    split_roots(ctx, &g, &mut out);
    out.sort();
    out
}

/// Distinct-degree factorization of the squarefree part of `f`: pairs
/// `(degree, number of irreducible factors of that degree)`.
pub fn factor_degrees(ctx: &FieldCtx, f: &FFPoly) -> Vec<(usize, usize)> {
    let mut g = f.monic(ctx);
    // squarefree part: f / gcd(f, f') is squarefree when p does not divide
    // the multiplicities; handle p-th powers by repeated extraction
    let mut sq = FFPoly::constant(ctx.one());
    loop {
        if g.degree().unwrap_or(0) == 0 {
            break;
        }
        let d = poly_deriv(ctx, &g);
        if d.is_zero() {
            g = pth_root(ctx, &g);
            continue;
        }
        let c = poly_gcd(ctx, &g, &d);
        let w = divrem(ctx, &g, &c).0;
        sq = poly_lcm(ctx, &sq, &w);
        g = c;
    }
    let mut out = Vec::new();
    let x = FFPoly::monomial(ctx, 1);
    let mut rest = sq;
    let mut xp = x.clone();
    let mut k = 1;
    while rest.degree().unwrap_or(0) > 0 {
        if 2 * k > rest.degree().unwrap() {
            out.push((rest.degree().unwrap(), 1));
            break;
        }
        xp = poly_powmod(ctx, &xp, ctx.order(), &rest);
        let h = poly_gcd(ctx, &rest, &poly_sub(ctx, &xp, &x));
        let dh = h.degree().unwrap_or(0);
        if dh > 0 {
            out.push((k, dh / k));
            rest = divrem(ctx, &rest, &h).0;
            xp = poly_rem(ctx, &xp, &rest);
        }
        k += 1;
    }
    out
}

fn poly_lcm(ctx: &FieldCtx, a: &FFPoly, b: &FFPoly) -> FFPoly {
    let g = poly_gcd(ctx, a, b);
    divrem(ctx, &poly_mul(ctx, a, b), &g).0.monic(ctx)
}

/// f(x) = g(x)^p with f' = 0; returns g.
fn pth_root(ctx: &FieldCtx, f: &FFPoly) -> FFPoly {
    let p = ctx.p() as usize;
    let e = ctx.order() / ctx.p() as u64;
    FFPoly::new(f.c.iter().step_by(p).map(|&c| ctx.pow(c, e)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let f = FieldCtx::new(3, 2).unwrap();
        let a = FFPoly::from_ints(&f, &[1, 2, 0, 1, 2]);
        let b = FFPoly::from_ints(&f, &[2, 1, 1]);
        let (q, r) = divrem(&f, &a, &b);
        assert_eq!(poly_add(&f, &poly_mul(&f, &q, &b), &r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn roots_sorted() {
        let f = FieldCtx::new(5, 1).unwrap();
        let p = poly_mul(
            &f,
            &FFPoly::linear(&f, f.from_int(3)),
            &FFPoly::linear(&f, f.from_int(1)),
        );
        assert_eq!(roots_in_field(&f, &p), vec![f.from_int(1), f.from_int(3)]);
    }

    #[test]
    fn roots_char2() {
        let f = FieldCtx::new(2, 3).unwrap();
        let all = poly_sub(&f, &FFPoly::monomial(&f, 8), &FFPoly::monomial(&f, 1));
        assert_eq!(roots_in_field(&f, &all).len(), 8);
    }

    #[test]
    fn ddf_counts() {
        let f = FieldCtx::new(2, 1).unwrap();
        // x^4 + x = x (x+1)(x^2+x+1)
        let p = FFPoly::from_ints(&f, &[0, 1, 0, 0, 1]);
        assert_eq!(factor_degrees(&f, &p), vec![(1, 2), (2, 1)]);
        // (x^2+x+1)^2 has squarefree part x^2+x+1
        let s = FFPoly::from_ints(&f, &[1, 0, 1, 0, 1]);
        assert_eq!(factor_degrees(&f, &s), vec![(2, 1)]);
    }
}
