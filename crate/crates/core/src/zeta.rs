//! L-polynomials, class numbers, effective divisor counts and p-ranks.

use crate::error::{Error, Result};
use crate::intpoly::{complex_roots, ge_b_sqrt, QPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Tolerance of the numeric Weil diagnostic.
pub const WEIL_TOL: f64 = 1e-6;

/// Numerator L(t) = sum a_i t^i of the zeta function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LPolynomial {
    q: u64,
    g: u32,
    a: Vec<BigInt>,
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn qpow(q: u64, e: u32) -> BigInt {
    num_traits::pow(big(q), e as usize)
}

impl LPolynomial {
    /// Validates a_0 = 1, the length 2g+1 and the functional equation.
    pub fn new(q: u64, g: u32, a: Vec<BigInt>) -> Result<Self> {
        if a.len() != 2 * g as usize + 1 {
            return Err(Error::pre(format!(
                "expected {} coefficients, got {}",
                2 * g + 1,
                a.len()
            )));
        }
        if !a[0].is_one() {
            return Err(Error::pre("a_0 must be 1"));
        }
        let l = LPolynomial { q, g, a };
        if !l.functional_equation_ok() {
            return Err(Error::pre("coefficients violate the functional equation"));
        }
        Ok(l)
    }

    pub fn from_i64(q: u64, g: u32, a: &[i64]) -> Result<Self> {
        LPolynomial::new(q, g, a.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// From N_1..N_g by the Newton recursion and the functional equation.
    pub fn from_counts(q: u64, g: u32, counts: &[u64]) -> Result<Self> {
        if g == 0 {
            return LPolynomial::new(q, 0, vec![BigInt::one()]);
        }
        if counts.len() < g as usize {
            return Err(Error::pre(format!(
                "need N_1..N_{g}, got {} counts",
                counts.len()
            )));
        }
        let s: Vec<BigInt> = (1..=g)
            .map(|r| BigInt::from(counts[r as usize - 1]) - qpow(q, r) - 1)
            .collect();
        let mut a = vec![BigInt::one()];
        for i in 1..=g as usize {
            let acc: BigInt = (1..=i).map(|j| &s[j - 1] * &a[i - j]).sum();
            let (quo, rem) = acc.div_rem(&BigInt::from(i));
            if !rem.is_zero() {
                return Err(Error::pre(format!(
                    "invalid counts: {i} does not divide the recursion sum"
                )));
            }
            a.push(quo);
        }
        for i in (0..g as usize).rev() {
            a.push(qpow(q, g - i as u32) * &a[i]);
        }
        let l = LPolynomial { q, g, a };
        if l.class_number() < BigInt::one() {
            return Err(Error::pre("invalid counts: L(1) < 1"));
        }
        Ok(l)
    }

    /// Product of the real-part factors.
    pub fn from_real_parts(q: u64, g: u32, spec: &RealPartSpec) -> Result<Self> {
        spec.validate(q, g)?;
        let qq = BigRational::from_integer(big(q));
        let mut acc = QPoly::one();
        for e in &spec.entries {
            let f = match e {
                RealPart::Rational(x) => {
                    QPoly::new(vec![BigRational::one(), -x.clone(), qq.clone()])
                }
                RealPart::Pair { s, p } => QPoly::new(vec![
                    BigRational::one(),
                    -s.clone(),
                    p + &qq * BigRational::from_integer(big(2)),
                    -(&qq * s),
                    &qq * &qq,
                ]),
            };
            acc = acc.mul(&f);
        }
        let a = acc.to_bigints().ok_or_else(|| {
            Error::pre("invalid spec: L-polynomial has non-integral coefficients")
        })?;
        let mut a = a;
        a.resize(2 * g as usize + 1, BigInt::zero());
        LPolynomial::new(q, g, a)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.a
    }

    /// a_i, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.a.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn functional_equation_ok(&self) -> bool {
        let g = self.g as usize;
        (0..=g).all(|i| self.a[2 * g - i] == qpow(self.q, (g - i) as u32) * &self.a[i])
    }

    /// h = L(1).
    pub fn class_number(&self) -> BigInt {
        self.a.iter().sum()
    }

    /// A_0..A_n.
    pub fn effective_counts(&self, n: usize) -> Result<Vec<BigInt>> {
        if n > 2 * self.g as usize + 6 {
            return Err(Error::pre(format!(
                "effective counts limited to n <= 2g+6 = {}",
                2 * self.g + 6
            )));
        }
        let qm1 = big(self.q - 1);
        let out: Vec<BigInt> = (0..=n)
            .map(|m| {
                (0..=m)
                    .map(|i| (qpow(self.q, (m - i + 1) as u32) - 1) / &qm1 * self.coeff(i))
                    .sum()
            })
            .collect();
        if let Some(m) = out.iter().position(|a| a.is_negative()) {
            return Err(Error::pre(format!(
                "A_{m} < 0: not the L-polynomial of a curve"
            )));
        }
        Ok(out)
    }

    /// A_{g-k} from the closed form in h and partial coefficient sums, checked
    /// against the direct expansion.
    pub fn a_g_minus_k(&self, k: u32) -> Result<BigInt> {
        if k == 0 || k > self.g {
            return Err(Error::pre(format!("k = {k} outside 1..=g")));
        }
        let g = self.g as usize;
        let k_ = k as usize;
        let h = self.class_number();
        let s1: BigInt = (0..g + k_).map(|i| self.coeff(i)).sum();
        let s2: BigInt = (0..=g - k_).map(|i| self.coeff(i)).sum();
        let head = BigRational::new(h - s1, qpow(self.q, k - 1));
        let val =
            (head - BigRational::from_integer(s2)) / BigRational::from_integer(big(self.q - 1));
        if !val.is_integer() {
            return Err(Error::inv("closed form for A_{g-k} is not an integer"));
        }
        let val = val.to_integer();
        let direct = self.effective_counts(g - k_)?[g - k_].clone();
        if val != direct {
            return Err(Error::inv(format!(
                "closed form A_{} = {val} disagrees with the expansion {direct}",
                g - k_
            )));
        }
        Ok(val)
    }

    /// a_g + 2 (a_0 + ... + a_{g-1}).
    pub fn cns_sum(&self) -> BigInt {
        let g = self.g as usize;
        let s: BigInt = (0..g).map(|i| self.coeff(i)).sum();
        self.coeff(g) + s * 2
    }

    /// Degree of L mod p.
    pub fn p_rank(&self, p: u32) -> u32 {
        let p = big(p as u64);
        (0..self.a.len())
            .rev()
            .find(|&i| !(&self.a[i] % &p).is_zero())
            .unwrap_or(0) as u32
    }

    pub fn is_ordinary(&self, p: u32) -> bool {
        self.p_rank(p) == self.g
    }

    /// Power sums S_r = N_r - q^r - 1 for r = 1..=n.
    pub fn power_sums(&self, n: u32) -> Vec<BigInt> {
        let mut s: Vec<BigInt> = Vec::new();
        for i in 1..=n as usize {
            let mut v = BigInt::from(i) * self.coeff(i);
            for j in 1..i {
                v -= &s[j - 1] * self.coeff(i - j);
            }
            s.push(v);
        }
        s
    }

    /// N_r predicted by the L-polynomial.
    pub fn point_count(&self, r: u32) -> BigInt {
        qpow(self.q, r) + 1 + self.power_sums(r)[r as usize - 1].clone()
    }

    /// B_1..B_n by Moebius inversion of the predicted N_r.
    pub fn place_counts(&self, n: u32) -> Result<Vec<u64>> {
        let ns: Vec<BigInt> = (1..=n).map(|r| self.point_count(r)).collect();
        let mut out = Vec::with_capacity(n as usize);
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for d in (1..=k).filter(|d| k % d == 0) {
                acc += BigInt::from(crate::curves::moebius(k / d)) * &ns[d as usize - 1];
            }
            let (b, rem) = acc.div_rem(&BigInt::from(k));
            if !rem.is_zero() || b.is_negative() {
                return Err(Error::inv(format!("B_{k} = {acc}/{k} is not a count")));
            }
            out.push(
                b.to_u64()
                    .ok_or_else(|| Error::Budget(format!("B_{k} overflows")))?,
            );
        }
        Ok(out)
    }

    /// Numeric check that every reciprocal root has absolute value sqrt(q).
    pub fn weil_check(&self) -> WeilReport {
        let fe = self.functional_equation_ok();
        if self.g == 0 {
            return WeilReport {
                ok: fe,
                functional_equation: fe,
                max_deviation: 0.0,
                roots: vec![],
            };
        }
        // reciprocal roots are the roots of t^{2g} L(1/t); work on its
        // squarefree part so repeated roots stay well conditioned
        let rev: Vec<BigInt> = self.a.iter().rev().cloned().collect();
        let sf = QPoly::from_bigints(&rev).squarefree_part().monic();
        let sq = (self.q as f64).sqrt();
        let mut deviation: f64 = 0.0;
        let mut roots = Vec::new();
        for z in complex_roots(&sf) {
            deviation = deviation.max((z.norm() - sq).abs());
            roots.push((z.re, z.im));
        }
        WeilReport {
            ok: fe && deviation < WEIL_TOL,
            functional_equation: fe,
            max_deviation: deviation,
            roots,
        }
    }

    /// Real parts x_i = alpha_i + conj(alpha_i) as the monic integer polynomial
    /// prod (X - x_i) of degree g.
    pub fn real_part_polynomial(&self) -> Result<QPoly> {
        // L(t) = prod (1 - x_i t + q t^2); substitute to recover the x_i
        // through the symmetric structure: t^{-g} L(t) is a polynomial in
        // u = q t + 1/t
        let g = self.g as usize;
        let qq = BigRational::from_integer(big(self.q));
        // write sum_{i} a_i t^{i-g} as sum_k c_k (q t + 1/t)^k, peeling the top power
        let mut rem: Vec<BigRational> = self
            .a
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let mut c = vec![BigRational::zero(); g + 1];
        for k in (0..=g).rev() {
            // (q t + 1/t)^k has coefficient q^k at t^k, index g + k
            let top = rem[g + k].clone() / num_traits::pow(qq.clone(), k);
            c[k] = top.clone();
            for j in 0..=k {
                let coef = BigRational::from_integer(BigInt::from(binom(k, j)))
                    * num_traits::pow(qq.clone(), j);
                // term q^j t^j * t^{-(k-j)} = t^{2j-k}
                let idx = g + 2 * j - k;
                rem[idx] -= &top * coef;
            }
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return Err(Error::inv("L-polynomial is not palindromic in q t + 1/t"));
        }
        // prod (1 - x t + q t^2) = t^g prod (u - x) with u = q t + 1/t
        // so sum c_k u^k = prod (u - x_i)
        let poly = QPoly::new(c);
        if poly.lead() != Some(&BigRational::one()) {
            return Err(Error::inv("real-part polynomial is not monic"));
        }
        Ok(poly)
    }
}

fn binom(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct WeilReport {
    pub ok: bool,
    pub functional_equation: bool,
    pub max_deviation: f64,
    pub roots: Vec<(f64, f64)>,
}

/// Coefficient of t^n in prod_k (1 - t^k)^{-B_k}.
pub fn effective_counts_oracle(b: &[u64], n: usize) -> BigInt {
    let mut series = vec![BigInt::zero(); n + 1];
    series[0] = BigInt::one();
    for (k0, &bk) in b.iter().enumerate() {
        let k = k0 + 1;
        if k > n || bk == 0 {
            continue;
        }
        // multiply by (1 - t^k)^{-bk} = sum_j C(bk + j - 1, j) t^{kj}
        let mut next = vec![BigInt::zero(); n + 1];
        let mut coef = BigInt::one();
        let mut j = 0usize;
        while k * j <= n {
            for i in 0..=n - k * j {
                if !series[i].is_zero() {
                    next[i + k * j] += &series[i] * &coef;
                }
            }
            j += 1;
            coef = coef * BigInt::from(bk + j as u64 - 1) / BigInt::from(j);
        }
        series = next;
    }
    series[n].clone()
}

/// A real part: a single rational value or a conjugate pair given by its sum
/// and product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealPart {
    Rational(BigRational),
    Pair { s: BigRational, p: BigRational },
}

impl RealPart {
    pub fn int(x: i64) -> Self {
        RealPart::Rational(BigRational::from_integer(BigInt::from(x)))
    }

    pub fn pair(s: i64, p: i64) -> Self {
        RealPart::Pair {
            s: BigRational::from_integer(BigInt::from(s)),
            p: BigRational::from_integer(BigInt::from(p)),
        }
    }

    fn count(&self) -> u32 {
        match self {
            RealPart::Rational(_) => 1,
            RealPart::Pair { .. } => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealPartSpec {
    pub entries: Vec<RealPart>,
}

impl RealPartSpec {
    pub fn new(entries: Vec<RealPart>) -> Self {
        RealPartSpec { entries }
    }

    pub fn count(&self) -> u32 {
        self.entries.iter().map(|e| e.count()).sum()
    }

    /// Checks the count and that every real part lies in [-2 sqrt q, 2 sqrt q].
    pub fn validate(&self, q: u64, g: u32) -> Result<()> {
        if self.count() != g {
            return Err(Error::pre(format!(
                "spec has {} real parts, genus is {g}",
                self.count()
            )));
        }
        let four_q = BigRational::from_integer(big(4 * q));
        for e in &self.entries {
            match e {
                RealPart::Rational(x) => {
                    if x * x > four_q {
                        return Err(Error::pre(format!("real part {x} exceeds 2 sqrt q")));
                    }
                }
                RealPart::Pair { s, p } => {
                    let disc = s * s - p * BigRational::from_integer(big(4));
                    if disc.is_negative() {
                        return Err(Error::pre("pair has non-real roots (s^2 < 4p)"));
                    }
                    // |s/2| <= 2 sqrt q
                    if s * s > &four_q * BigRational::from_integer(big(4)) {
                        return Err(Error::pre("pair midpoint exceeds 2 sqrt q"));
                    }
                    // P(c) = 4q + p - s c >= 0 and P(-c) = 4q + p + s c >= 0, c = 2 sqrt q
                    let base = &four_q + p;
                    let two_s = s * BigRational::from_integer(big(2));
                    if !ge_b_sqrt(&base, &two_s, q) || !ge_b_sqrt(&base, &(-two_s), q) {
                        return Err(Error::pre("pair has a root outside [-2 sqrt q, 2 sqrt q]"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Class number as i64 for convenience in reports.
pub fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("value fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(l: &LPolynomial) -> Vec<i64> {
        l.coeffs().iter().map(to_i64).collect()
    }

    #[test]
    fn from_counts_examples() {
        assert_eq!(
            ints(&LPolynomial::from_counts(2, 1, &[1]).unwrap()),
            vec![1, -2, 2]
        );
        let l = LPolynomial::from_counts(2, 2, &[1, 5]).unwrap();
        assert_eq!(ints(&l), vec![1, -2, 2, -4, 4]);
        assert_eq!(l.class_number(), BigInt::from(1));
        assert_eq!(
            ints(&LPolynomial::from_counts(4, 1, &[9]).unwrap()),
            vec![1, 4, 4]
        );
    }

    #[test]
    fn real_parts_examples() {
        let spec = RealPartSpec::new(vec![RealPart::int(2), RealPart::int(2), RealPart::int(-1)]);
        let l = LPolynomial::from_real_parts(2, 3, &spec).unwrap();
        assert_eq!(l.coeff(3), BigInt::from(-8));
        assert_eq!(l.cns_sum(), BigInt::from(0));
        let one = RealPartSpec::new(vec![RealPart::int(2)]);
        assert_eq!(
            ints(&LPolynomial::from_real_parts(2, 1, &one).unwrap()),
            vec![1, -2, 2]
        );
        let q3 = RealPartSpec::new(vec![RealPart::int(3), RealPart::pair(1, -8)]);
        assert_eq!(
            LPolynomial::from_real_parts(3, 3, &q3).unwrap().cns_sum(),
            BigInt::from(2)
        );
    }

    #[test]
    fn effective_counts_examples() {
        let herm = LPolynomial::from_i64(4, 1, &[1, 4, 4]).unwrap();
        let a = herm.effective_counts(2).unwrap();
        assert_eq!(a[1], BigInt::from(9));
        assert_eq!(a[2], BigInt::from(45));
        let g2 = LPolynomial::from_i64(2, 2, &[1, -2, 2, -4, 4]).unwrap();
        assert_eq!(g2.effective_counts(2).unwrap()[2], BigInt::from(3));
        assert_eq!(effective_counts_oracle(&[9, 0], 2), BigInt::from(45));
        assert_eq!(effective_counts_oracle(&[1, 2], 2), BigInt::from(3));
        assert_eq!(effective_counts_oracle(&[], 0), BigInt::from(1));
    }

    #[test]
    fn closed_form_a_g_minus_k() {
        let g2 = LPolynomial::from_i64(2, 2, &[1, -2, 2, -4, 4]).unwrap();
        assert_eq!(g2.a_g_minus_k(1).unwrap(), BigInt::from(1));
        let herm = LPolynomial::from_i64(4, 1, &[1, 4, 4]).unwrap();
        assert_eq!(herm.a_g_minus_k(1).unwrap(), BigInt::from(1));
        let other = LPolynomial::from_i64(2, 2, &[1, -1, 0, -2, 4]).unwrap();
        assert_eq!(other.a_g_minus_k(1).unwrap(), BigInt::from(2));
    }

    #[test]
    fn p_ranks() {
        assert_eq!(
            LPolynomial::from_i64(2, 1, &[1, -2, 2]).unwrap().p_rank(2),
            0
        );
        assert_eq!(
            LPolynomial::from_i64(2, 2, &[1, -1, 0, -2, 4])
                .unwrap()
                .p_rank(2),
            1
        );
    }

    #[test]
    fn weil() {
        assert!(
            LPolynomial::from_i64(4, 1, &[1, 4, 4])
                .unwrap()
                .weil_check()
                .ok
        );
        assert!(
            LPolynomial::from_i64(2, 1, &[1, -2, 2])
                .unwrap()
                .weil_check()
                .ok
        );
        let bad = LPolynomial {
            q: 2,
            g: 1,
            a: vec![BigInt::from(1), BigInt::from(0), BigInt::from(-5)],
        };
        assert!(!bad.weil_check().ok);
        let herm9 = LPolynomial::from_i64(9, 3, &[1, 18, 135, 540, 1215, 1458, 729]).unwrap();
        assert!(herm9.weil_check().ok);
    }

    #[test]
    fn real_part_polynomial_roundtrip() {
        let spec = RealPartSpec::new(vec![RealPart::int(2), RealPart::int(2), RealPart::int(-1)]);
        let l = LPolynomial::from_real_parts(2, 3, &spec).unwrap();
        let p = l.real_part_polynomial().unwrap();
        let expect = QPoly::from_ints(&[-2, 1])
            .mul(&QPoly::from_ints(&[-2, 1]))
            .mul(&QPoly::from_ints(&[1, 1]));
        assert_eq!(p, expect);
    }
}
