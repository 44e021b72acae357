//! Dense polynomials over the rationals, used for L-polynomial diagnostics and
//! the resultant filter on real-part polynomials.

use nalgebra::{Complex, DMatrix, Schur};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial over Q, low-to-high, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly {
    c: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        QPoly::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        QPoly::new(
            c.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        )
    }

    pub fn one() -> Self {
        QPoly::from_ints(&[1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.c.last()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Integer coefficients when all are integral.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.c
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, k: &BigRational) -> QPoly {
        QPoly::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::new(vec![]);
        }
        let mut out = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.c.clone();
        let Some(ds) = self.degree() else {
            return (QPoly::new(vec![]), QPoly::new(vec![]));
        };
        if ds < dd {
            return (QPoly::new(vec![]), self.clone());
        }
        let mut quo = vec![BigRational::zero(); ds - dd + 1];
        let lead = d.c[dd].clone();
        for k in (0..=ds - dd).rev() {
            let t = &r[k + dd] / &lead;
            if t.is_zero() {
                continue;
            }
            for (i, di) in d.c.iter().enumerate() {
                r[k + i] -= &t * di;
            }
            quo[k] = t;
        }
        r.truncate(dd);
        (QPoly::new(quo), QPoly::new(r))
    }

    pub fn monic(&self) -> QPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&(BigRational::one() / l)),
        }
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * q(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.c
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> QPoly {
        if self.degree().unwrap_or(0) == 0 {
            return QPoly::one();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Coefficients as f64.
    pub fn to_f64(&self) -> Vec<f64> {
        self.c
            .iter()
            .map(|x| x.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

/// Resultant of two polynomials via the Sylvester determinant.
/// Complex roots of a nonzero polynomial, by the Schur form of its companion
/// matrix with an Aberth iteration as fallback when QR stalls.
pub fn complex_roots(f: &QPoly) -> Vec<Complex<f64>> {
    let c = f.monic().to_f64();
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i];
    }
    if let Some(s) = Schur::try_new(m, 1e-15, 2000) {
        return s.complex_eigenvalues().iter().copied().collect();
    }
    aberth(&c)
}

fn aberth(c: &[f64]) -> Vec<Complex<f64>> {
    let n = c.len() - 1;
    let eval = |z: Complex<f64>| {
        let (mut p, mut d) = (Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
        for &a in c.iter().rev() {
            d = d * z + p;
            p = p * z + a;
        }
        (p, d)
    };
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|k| {
            Complex::from_polar(
                radius * 0.5,
                0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64,
            )
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, d) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / d;
            let s: Complex<f64> = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    z
}

pub fn resultant(a: &QPoly, b: &QPoly) -> BigRational {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return BigRational::zero();
    };
    if m == 0 && n == 0 {
        return BigRational::one();
    }
    let size = m + n;
    let mut mat = vec![vec![BigRational::zero(); size]; size];
    for row in 0..n {
        for i in 0..=m {
            mat[row][row + i] = a.coeff(m - i);
        }
    }
    for row in 0..m {
        for i in 0..=n {
            mat[n + row][row + i] = b.coeff(n - i);
        }
    }
    determinant(mat)
}

fn determinant(mut mat: Vec<Vec<BigRational>>) -> BigRational {
    let n = mat.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !mat[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            mat.swap(piv, col);
            det = -det;
        }
        let p = mat[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let f = &mat[r][col] / &p;
            for c in col..n {
                let t = &f * &mat[col][c];
                mat[r][c] -= t;
            }
        }
    }
    det
}

/// Monic irreducible factors over Z of a monic integer polynomial whose
/// roots are bounded by `root_bound` in absolute value, with multiplicity,
/// sorted. Candidate factors up to degree deg/2 are tried by trial division;
/// the cofactor left at the end is irreducible.
pub fn factor_monic(f: &QPoly, root_bound: f64) -> Vec<QPoly> {
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut k = 1;
    loop {
        let d = rest.degree().unwrap_or(0);
        if d == 0 {
            break;
        }
        if 2 * k > d {
            out.push(rest.clone());
            break;
        }
        for cand in monic_candidates(k, root_bound) {
            loop {
                let (quo, r) = rest.divrem(&cand);
                if !r.is_zero() {
                    break;
                }
                out.push(cand.clone());
                rest = quo;
            }
        }
        k += 1;
    }
    out.sort();
    out
}

/// Monic integer polynomials of degree `k` whose roots could all lie in
/// [-b, b]: coefficient of x^{k-i} bounded by C(k, i) b^i.
fn monic_candidates(k: usize, b: f64) -> Vec<QPoly> {
    let bounds: Vec<i64> = (1..=k)
        .map(|i| (binom(k, i) as f64 * b.powi(i as i32)).floor() as i64)
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0i64; k];
    fn rec(i: usize, bounds: &[i64], cur: &mut Vec<i64>, out: &mut Vec<QPoly>) {
        if i == bounds.len() {
            let k = bounds.len();
            // cur[i-1] is the coefficient of x^{k-i}
            let mut c = vec![0i64; k + 1];
            c[k] = 1;
            for (i, &v) in cur.iter().enumerate() {
                c[k - 1 - i] = v;
            }
            out.push(QPoly::from_ints(&c));
            return;
        }
        for v in -bounds[i]..=bounds[i] {
            cur[i] = v;
            rec(i + 1, bounds, cur, out);
        }
    }
    rec(0, &bounds, &mut cur, &mut out);
    out
}

fn binom(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// `a >= b * sqrt(n)` for rationals a, b and a non-negative integer n.
pub fn ge_b_sqrt(a: &BigRational, b: &BigRational, n: u64) -> bool {
    let n = BigRational::from_integer(BigInt::from(n));
    match (a.is_negative(), b.is_negative()) {
        (false, true) => true,
        (false, false) => a * a >= b * b * n,
        (true, true) => a * a <= b * b * n,
        (true, false) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_when_qr_stalls() {
        // x^4 + 1/4: every root has modulus 1/sqrt(2)
        let f = QPoly::new(vec![q(1) / q(4), q(0), q(0), q(0), q(1)]);
        let r = complex_roots(&f);
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|z| (z.norm() - 0.5f64.sqrt()).abs() < 1e-9));
        let r = aberth(&[0.25, 0.0, 0.0, 0.0, 1.0]);
        assert!(r.iter().all(|z| (z.norm() - 0.5f64.sqrt()).abs() < 1e-9));
    }

    #[test]
    fn resultant_small() {
        let a = QPoly::from_ints(&[-2, 1]);
        let b = QPoly::from_ints(&[-1, 1]);
        assert_eq!(resultant(&a, &b), q(1));
        let c = QPoly::from_ints(&[1, 1]);
        assert_eq!(resultant(&a, &c).abs(), q(3));
    }

    #[test]
    fn factoring() {
        // (x-2)^2 (x+1)
        let f = QPoly::from_ints(&[-2, 1])
            .mul(&QPoly::from_ints(&[-2, 1]))
            .mul(&QPoly::from_ints(&[1, 1]));
        let fac = factor_monic(&f, 2.9);
        assert_eq!(fac.len(), 3);
        // x^2 - 3 is irreducible
        assert_eq!(factor_monic(&QPoly::from_ints(&[-3, 0, 1]), 2.0).len(), 1);
    }

    #[test]
    fn sqrt_compare() {
        assert!(ge_b_sqrt(&q(3), &q(1), 8));
        assert!(!ge_b_sqrt(&q(2), &q(1), 8));
        assert!(ge_b_sqrt(&q(-2), &q(-1), 8));
        assert!(!ge_b_sqrt(&q(-3), &q(-1), 8));
    }
}
