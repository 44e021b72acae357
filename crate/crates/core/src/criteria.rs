//! Existence verdicts for non-special divisors of degree g and g-1, the
//! defect-k tuple machinery and the defect table comparison.

use crate::curves::Curve;
use crate::error::{Error, Result};
use crate::intpoly::{factor_monic, ge_b_sqrt, resultant, QPoly};
use crate::reference::{self, DefectCase, DefectRow};
use crate::zeta::{LPolynomial, RealPart, RealPartSpec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    DegreeG,
    DegreeGminus1,
    DegreeGammaMinus1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Value {
    True,
    False,
    Unknown,
    BoundaryFalse,
}

impl Value {
    /// BoundaryFalse folds into False.
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Value::True => Some(true),
            Value::False | Value::BoundaryFalse => Some(false),
            Value::Unknown => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Value::True => "True",
            Value::False => "False",
            Value::Unknown => "Unknown",
            Value::BoundaryFalse => "BoundaryFalse",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub witness: BTreeMap<String, serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub target: Target,
    pub value: Value,
    pub certificate: Option<Certificate>,
    pub attempted: Vec<String>,
}

fn num(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(x.to_string()),
    }
}

struct Builder {
    target: Target,
    attempted: Vec<String>,
}

impl Builder {
    fn new(target: Target) -> Self {
        Builder {
            target,
            attempted: Vec::new(),
        }
    }

    fn attempt(&mut self, name: &str) {
        self.attempted.push(name.to_string());
    }

    fn fire(self, value: Value, name: &str, witness: &[(&str, serde_json::Value)]) -> Verdict {
        let mut attempted = self.attempted;
        if attempted.last().map(String::as_str) != Some(name) {
            attempted.push(name.to_string());
        }
        Verdict {
            target: self.target,
            value,
            certificate: Some(Certificate {
                name: name.to_string(),
                witness: witness
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.clone()))
                    .collect(),
            }),
            attempted,
        }
    }

    fn unknown(self) -> Verdict {
        Verdict {
            target: self.target,
            value: Value::Unknown,
            certificate: None,
            attempted: self.attempted,
        }
    }
}

/// Data the verdicts are computed from.
#[derive(Clone, Debug)]
pub struct CurveData {
    pub q: u64,
    pub p: u32,
    pub g: u32,
    pub l: LPolynomial,
    pub b1: u64,
}

impl CurveData {
    /// Checks that B_1 agrees with the L-polynomial.
    pub fn new(p: u32, l: LPolynomial, b1: u64) -> Result<Self> {
        let d = CurveData {
            q: l.q(),
            p,
            g: l.genus(),
            l,
            b1,
        };
        if d.g == 0 {
            return Err(Error::pre("verdicts need g >= 1"));
        }
        let n1 = d.l.point_count(1);
        if n1 != BigInt::from(b1) {
            return Err(Error::pre(format!(
                "inconsistent inputs: B_1 = {b1} but L gives N_1 = {n1}"
            )));
        }
        Ok(d)
    }

    /// B_1 read off the L-polynomial.
    pub fn from_l(p: u32, l: LPolynomial) -> Result<Self> {
        let n1 = l.point_count(1);
        let b1 = n1
            .to_u64()
            .ok_or_else(|| Error::pre(format!("L-polynomial gives N_1 = {n1} < 0")))?;
        CurveData::new(p, l, b1)
    }

    pub fn from_curve(c: &Curve) -> Result<Self> {
        let g = c.genus();
        if g == 0 {
            return Err(Error::pre("verdicts need g >= 1"));
        }
        let counts = c.counts(g)?;
        let l = LPolynomial::from_counts(c.q(), g, &counts)?;
        CurveData::new(c.field().p(), l, counts[0])
    }

    fn a(&self, n: i64) -> Result<BigInt> {
        if n < 0 {
            return Ok(BigInt::zero());
        }
        Ok(self.l.effective_counts(n as usize)?[n as usize].clone())
    }
}

/// [2 sqrt q] as the largest t with t^2 <= 4q.
pub fn floor_two_sqrt(q: u64) -> u64 {
    let mut t = ((4 * q) as f64).sqrt() as u64;
    while t * t > 4 * q {
        t -= 1;
    }
    while (t + 1) * (t + 1) <= 4 * q {
        t += 1;
    }
    t
}

/// Degree g.
pub fn verdict_degree_g(d: &CurveData) -> Result<Verdict> {
    let mut b = Builder::new(Target::DegreeG);
    let (q, g) = (d.q, d.g);
    let gw = serde_json::Value::from(g);
    b.attempt("q>=3");
    if q >= 3 {
        return Ok(b.fire(Value::True, "q>=3", &[("q", q.into())]));
    }
    b.attempt("B1>=g");
    if d.b1 >= g as u64 {
        return Ok(b.fire(Value::True, "B1>=g", &[("B1", d.b1.into()), ("g", gw)]));
    }
    b.attempt("q=2,g=3");
    if q == 2 && g == 3 {
        return Ok(b.fire(Value::True, "q=2,g=3", &[("q", q.into()), ("g", gw)]));
    }
    b.attempt("q=2,g>=4,B1>=3");
    if q == 2 && g >= 4 && d.b1 >= 3 {
        return Ok(b.fire(
            Value::True,
            "q=2,g>=4,B1>=3",
            &[("B1", d.b1.into()), ("g", gw)],
        ));
    }
    let h = d.l.class_number();
    let agm2 = d.a(g as i64 - 2)?;
    let wit = [("A_{g-2}", num(&agm2)), ("h", num(&h))];
    b.attempt("A_{g-2}<h");
    if agm2 < h {
        return Ok(b.fire(Value::True, "A_{g-2}<h", &wit));
    }
    b.attempt("A_{g-2}=h,g<=3");
    if (2..=3).contains(&g) && agm2 == h {
        return Ok(b.fire(Value::False, "A_{g-2}=h,g<=3", &wit));
    }
    b.attempt("genus2_exception");
    if q == 2 && g == 2 && is_genus2_exception(&d.l) {
        return Ok(b.fire(Value::False, "genus2_exception", &wit));
    }
    Ok(b.unknown())
}

/// L-polynomials of the two genus 2 curves over F_2 with no non-special
/// divisor of degree g-1: y^2+y = x^5+x^3+1 and y^2+y = (x^4+x+1)/x.
pub fn genus2_exceptions() -> [LPolynomial; 2] {
    [
        LPolynomial::from_i64(2, 2, &[1, -2, 2, -4, 4]).expect("valid"),
        LPolynomial::from_i64(2, 2, &[1, -1, 0, -2, 4]).expect("valid"),
    ]
}

fn is_genus2_exception(l: &LPolynomial) -> bool {
    genus2_exceptions().iter().any(|e| e == l)
}

/// Name of the genus 1 curve with h = 1 over F_q, q in {2,3,4}.
pub fn elliptic_exception(q: u64) -> Option<&'static str> {
    match q {
        2 => Some("y^2+y=x^3+x+1/F2"),
        3 => Some("y^2=x^3+2x+2/F3"),
        4 => Some("y^2+y=x^3+a/F4"),
        _ => None,
    }
}

/// Threshold rule for the CNS sign test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Threshold {
    /// > 0 for q = 2, >= 0 for q >= 3.
    Standard,
    Strict,
    NonStrict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CnsResult {
    pub sum: BigInt,
    pub a_gm1: BigInt,
    pub h: BigInt,
    pub value: Value,
}

/// a_g + 2 sum a_i with its sign verdict and A_{g-1} = (h - sum)/(q-1).
pub fn cns_sum(l: &LPolynomial) -> Result<CnsResult> {
    cns_sum_with(l, Threshold::Standard)
}

pub fn cns_sum_with(l: &LPolynomial, t: Threshold) -> Result<CnsResult> {
    let sum = l.cns_sum();
    let h = l.class_number();
    let (a_gm1, rem) = (&h - &sum).div_rem(&BigInt::from(l.q() - 1));
    if !rem.is_zero() {
        return Err(Error::pre(
            "data inconsistent: q-1 does not divide h - cns sum",
        ));
    }
    let strict = match t {
        Threshold::Standard => l.q() == 2,
        Threshold::Strict => true,
        Threshold::NonStrict => false,
    };
    let value = if sum.is_positive() || (!strict && sum.is_zero()) {
        Value::True
    } else if sum.is_zero() && l.q() == 2 {
        Value::BoundaryFalse
    } else {
        Value::False
    };
    Ok(CnsResult {
        sum,
        a_gm1,
        h,
        value,
    })
}

/// Degree g-1.
pub fn verdict_degree_gm1(d: &CurveData) -> Result<Verdict> {
    let mut b = Builder::new(Target::DegreeGminus1);
    let (q, g) = (d.q, d.g);
    let h = d.l.class_number();
    b.attempt("q>=4");
    if q >= 4 && g != 1 {
        return Ok(b.fire(Value::True, "q>=4", &[("q", q.into())]));
    }
    b.attempt("genus1");
    if g == 1 {
        let wit = [("h", num(&h))];
        return Ok(if h > BigInt::one() {
            b.fire(Value::True, "genus1:h>1", &wit)
        } else {
            let name = elliptic_exception(q).unwrap_or("genus1:h=1");
            b.fire(Value::False, name, &wit)
        });
    }
    b.attempt("B1>=g+1");
    if d.b1 > g as u64 {
        return Ok(b.fire(
            Value::True,
            "B1>=g+1",
            &[("B1", d.b1.into()), ("g", g.into())],
        ));
    }
    let agm1 = d.a(g as i64 - 1)?;
    b.attempt("A_{g-1}<h");
    if agm1 < h {
        return Ok(b.fire(
            Value::True,
            "A_{g-1}<h",
            &[("A_{g-1}", num(&agm1)), ("h", num(&h))],
        ));
    }
    let cns = cns_sum(&d.l)?;
    if cns.a_gm1 != agm1 {
        return Err(Error::inv(format!(
            "A_{{g-1}} = {agm1} but (h - sum)/(q-1) = {}",
            cns.a_gm1
        )));
    }
    let cw = [
        ("cns_sum", num(&cns.sum)),
        ("h", num(&h)),
        ("A_{g-1}", num(&agm1)),
    ];
    b.attempt("cns_sum");
    if cns.value == Value::True {
        return Ok(b.fire(Value::True, "cns_sum", &cw));
    }
    b.attempt("ordinary,q<=3");
    if d.l.is_ordinary(d.p) && q <= 3 {
        return Ok(b.fire(
            Value::True,
            "ordinary,q<=3",
            &[("p_rank", d.l.p_rank(d.p).into())],
        ));
    }
    b.attempt("genus2_exception");
    if q == 2 && g == 2 && is_genus2_exception(&d.l) {
        return Ok(b.fire(Value::False, "genus2_exception", &cw));
    }
    Ok(b.fire(cns.value, "cns_sum", &cw))
}

/// A divisor of degree gamma-1 with zero-dimensional space always exists.
pub fn gamma_minus_1_dimension_zero(l: &LPolynomial, p: u32) -> Verdict {
    let gamma = l.p_rank(p);
    let b = Builder::new(Target::DegreeGammaMinus1);
    let deg = gamma as i64 - 1;
    let mut v = b.fire(
        Value::True,
        "p_rank",
        &[
            ("gamma", gamma.into()),
            ("degree", deg.into()),
            ("ordinary", (gamma == l.genus()).into()),
        ],
    );
    if deg < 0 {
        v.certificate
            .as_mut()
            .expect("fired")
            .witness
            .insert("note".into(), "vacuous".into());
    }
    v
}

/// A_n >= m A_{n-1} - m(m-1)/2 A_{n-2} for B_1 >= m >= 1, n >= 2.
pub fn nixi_inequality(a: &[BigInt], b1: u64, m: u64, n: usize) -> Result<bool> {
    if m < 1 || b1 < m {
        return Err(Error::pre(format!(
            "need B_1 >= m >= 1, got B_1 = {b1}, m = {m}"
        )));
    }
    if n < 2 || n >= a.len() {
        return Err(Error::pre(format!("need 2 <= n < {}", a.len())));
    }
    let m_ = BigInt::from(m);
    let rhs = &m_ * &a[n - 1] - BigInt::from(m * (m - 1) / 2) * &a[n - 2];
    Ok(a[n] >= rhs)
}

/// k = g[2 sqrt q] - |N_1 - (q+1)|.
pub fn defect(n1: u64, q: u64, g: u32) -> Result<u64> {
    let bound = g as u64 * floor_two_sqrt(q);
    let dev = n1.abs_diff(q + 1);
    if dev > bound {
        return Err(Error::pre(format!(
            "Weil bound violated: |N_1 - (q+1)| = {dev} > {bound}"
        )));
    }
    Ok(bound - dev)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectSpec {
    pub q: u64,
    pub g: u32,
    pub k: u64,
    pub case: DefectCase,
    pub n: Option<u64>,
    pub branch: Branch,
}

#[derive(Clone, Debug)]
pub struct ScasenTuple {
    pub spec: RealPartSpec,
    pub warnings: Vec<String>,
}

/// Real parts realizing a defect-k tuple.
pub fn scasen_tuple(s: &DefectSpec) -> Result<ScasenTuple> {
    let t = floor_two_sqrt(s.q) as i64;
    let k = s.k as i64;
    let sign = match s.branch {
        Branch::Plus => 1,
        Branch::Minus => -1,
    };
    let mut warnings = Vec::new();
    let mut entries = Vec::new();
    match s.case {
        DefectCase::A => {
            if !(3..=2 * t).contains(&k) {
                return Err(Error::pre(format!(
                    "case A needs 3 <= k <= 2[2 sqrt q] = {}",
                    2 * t
                )));
            }
            if s.g < 1 {
                return Err(Error::pre("case A needs g >= 1"));
            }
            for _ in 1..s.g {
                entries.push(RealPart::int(sign * t));
            }
            entries.push(RealPart::int(sign * (t - k)));
        }
        DefectCase::B => {
            let n = s.n.ok_or_else(|| Error::pre("case B needs n"))? as i64;
            if s.g < 2 {
                return Err(Error::pre("case B needs g >= 2"));
            }
            if n < 1 {
                return Err(Error::pre("case B needs n >= 1"));
            }
            let d2 = (k + 2) * (k + 2) - 4 * n;
            if d2 < 0 {
                return Err(Error::pre(format!(
                    "(k+2)^2/4 > n fails: (k+2)^2 - 4n = {d2}"
                )));
            }
            if d2 == 0 {
                warnings.push(format!(
                    "Delta = 0 for (q,g,k,n) = ({},{},{k},{n}); admitted",
                    s.q, s.g
                ));
            }
            let sp = 2 * t - k;
            let p = (t + 1) * (t + 1) - (t + 1) * (k + 2) + n;
            // roots x = (sp -+ Delta)/2 of X^2 - sp X + p must lie in
            // [-c, c], c = 2 sqrt q
            let r = |x: i64| BigRational::from_integer(BigInt::from(x));
            let base = r(4 * s.q as i64 + p);
            let upper = ge_b_sqrt(&base, &r(2 * sp), s.q) && ge_b_sqrt(&r(-sp), &r(-4), s.q);
            if !upper {
                return Err(Error::pre("-2(2 sqrt q - [2 sqrt q]) <= k +- Delta fails"));
            }
            let lower = ge_b_sqrt(&base, &r(-2 * sp), s.q) && ge_b_sqrt(&r(sp), &r(-4), s.q);
            if !lower {
                return Err(Error::pre("k +- Delta <= 4 sqrt q + 2[2 sqrt q] fails"));
            }
            for _ in 2..s.g {
                entries.push(RealPart::int(sign * t));
            }
            entries.push(RealPart::pair(sign * sp, p));
        }
    }
    let spec = RealPartSpec::new(entries);
    spec.validate(s.q, s.g)?;
    Ok(ScasenTuple { spec, warnings })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelDefTr {
    pub d: u32,
    pub trace: i64,
    pub norm: i64,
    pub disc: Option<i64>,
    pub alpha: Option<i64>,
}

/// Totally positive algebraic integer of degree 1 or 2 with given defect value.
pub fn reldeftr_solve(d: u32, kval: i64, n: Option<i64>) -> Result<RelDefTr> {
    if kval < 0 {
        return Err(Error::pre("kval must be >= 0"));
    }
    match d {
        1 => Ok(RelDefTr {
            d,
            trace: kval + 1,
            norm: kval + 1,
            disc: None,
            alpha: Some(kval + 1),
        }),
        2 => {
            let n = n.ok_or_else(|| Error::pre("d = 2 needs n"))?;
            let tr = kval + 2;
            let disc = tr * tr - 4 * n;
            if disc <= 0 {
                return Err(Error::pre(format!(
                    "d = 2 needs (kval+2)^2 > 4n, got discriminant {disc}"
                )));
            }
            if n <= 0 {
                return Err(Error::pre("not totally positive: norm <= 0"));
            }
            Ok(RelDefTr {
                d,
                trace: tr,
                norm: n,
                disc: Some(disc),
                alpha: None,
            })
        }
        _ => Err(Error::pre("d must be 1 or 2")),
    }
}

/// Whether the real-part polynomial splits as P1 P2 with |Res(P1, P2)| = 1,
/// which rules out a curve.
pub fn exicur_excludes(poly: &QPoly) -> Result<bool> {
    if poly.lead() != Some(&BigRational::one()) || poly.to_bigints().is_none() {
        return Err(Error::pre(
            "polynomial must be monic with integer coefficients",
        ));
    }
    let factors = factor_monic(poly, root_bound(poly));
    let nf = factors.len();
    if nf < 2 {
        return Ok(false);
    }
    for mask in 1..(1u64 << nf) - 1 {
        // each unordered split once
        if mask & 1 == 0 {
            continue;
        }
        let (mut p1, mut p2) = (QPoly::one(), QPoly::one());
        for (i, f) in factors.iter().enumerate() {
            if mask >> i & 1 == 1 {
                p1 = p1.mul(f);
            } else {
                p2 = p2.mul(f);
            }
        }
        if resultant(&p1, &p2).abs().is_one() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Bound on the absolute values of the real roots, from the companion matrix
/// of the squarefree part with a margin; Cauchy's bound otherwise.
fn root_bound(poly: &QPoly) -> f64 {
    let c = poly.to_f64();
    let cauchy = 1.0 + c[..c.len() - 1].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let eig = crate::intpoly::complex_roots(&poly.squarefree_part());
    if eig.is_empty() {
        return cauchy;
    }
    if eig.iter().any(|z| z.im.abs() > 1e-6) {
        return cauchy;
    }
    let b = eig.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    cauchy.min(b + 1e-6)
}

/// Convention for the defect table regeneration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convention {
    pub branches: BranchChoice,
    pub threshold: Threshold,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BranchChoice {
    Plus,
    Minus,
    Both,
}

impl BranchChoice {
    pub fn branches(self) -> Vec<Branch> {
        match self {
            BranchChoice::Plus => vec![Branch::Plus],
            BranchChoice::Minus => vec![Branch::Minus],
            BranchChoice::Both => vec![Branch::Plus, Branch::Minus],
        }
    }
}

impl Default for Convention {
    fn default() -> Self {
        Convention {
            branches: BranchChoice::Both,
            threshold: Threshold::Standard,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub q: u64,
    pub g: u32,
    pub k: u64,
    pub case: DefectCase,
    pub n: Option<u64>,
    pub branch: Branch,
    pub cns_sum: Option<BigInt>,
    pub computed: String,
    pub expected: bool,
    pub matches: bool,
    pub note: String,
}

impl TableRow {
    pub fn csv_header() -> &'static str {
        "q,g,k,case,n,branch,cns_sum,computed_verdict,reference_verdict,match"
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.q,
            self.g,
            self.k,
            self.case.label(),
            self.n.map(|n| n.to_string()).unwrap_or_default(),
            self.branch.label(),
            self.cns_sum
                .as_ref()
                .map(|s| s.to_string())
                .unwrap_or_default(),
            self.computed,
            if self.expected { "True" } else { "False" },
            self.matches
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RowSummary {
    pub q: u64,
    pub g: u32,
    pub k: u64,
    pub case: DefectCase,
    pub n: Option<u64>,
    pub expected: bool,
    pub matching_branches: Vec<Branch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
    pub per_reference_row: Vec<RowSummary>,
    pub total: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub rejected: usize,
    pub warnings: Vec<String>,
}

impl TableReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(TableRow::csv_header());
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.to_csv());
            s.push('\n');
        }
        s
    }

    pub fn mismatch_summary(&self) -> String {
        let mut s = format!(
            "rows {} matched {} mismatched {} rejected {}\n",
            self.total, self.matched, self.mismatched, self.rejected
        );
        for r in self
            .per_reference_row
            .iter()
            .filter(|r| r.matching_branches.is_empty())
        {
            s.push_str(&format!(
                "mismatch ({},{},{},{},{}) reference {}\n",
                r.q,
                r.g,
                r.k,
                r.case.label(),
                r.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
                r.expected
            ));
        }
        for w in &self.warnings {
            s.push_str(&format!("warning: {w}\n"));
        }
        s
    }
}

/// Verdict of one tuple: the CNS sign of the L-polynomial built from the
/// real parts, with the resultant filter applied first.
pub fn defect_row(spec: &DefectSpec, t: Threshold) -> (Option<BigInt>, String, Vec<String>) {
    let tuple = match scasen_tuple(spec) {
        Ok(t) => t,
        Err(e) => return (None, "Rejected".into(), vec![e.to_string()]),
    };
    let l = match LPolynomial::from_real_parts(spec.q, spec.g, &tuple.spec) {
        Ok(l) => l,
        Err(e) => return (None, "Rejected".into(), vec![e.to_string()]),
    };
    let mut notes = tuple.warnings;
    if let Ok(rp) = l.real_part_polynomial() {
        if let Ok(true) = exicur_excludes(&rp) {
            notes.push("excluded by resultant filter".into());
        }
    }
    match cns_sum_with(&l, t) {
        Ok(c) => (Some(c.sum), c.value.label().into(), notes),
        Err(e) => (None, "Rejected".into(), vec![e.to_string()]),
    }
}

/// Recomputes every bundled defect table row and compares.
pub fn regenerate_defect_tables(conv: Convention) -> Result<TableReport> {
    let refs = reference::defect_rows()?;
    regenerate_from(&refs, conv)
}

pub fn regenerate_from(refs: &[DefectRow], conv: Convention) -> Result<TableReport> {
    let branches = conv.branches.branches();
    let per: Vec<(Vec<TableRow>, RowSummary, Vec<String>)> = refs
        .par_iter()
        .map(|r| {
            let mut rows = Vec::new();
            let mut warns = Vec::new();
            let mut matching = Vec::new();
            for &branch in &branches {
                let spec = DefectSpec {
                    q: r.q,
                    g: r.g,
                    k: r.k,
                    case: r.case,
                    n: r.n,
                    branch,
                };
                let (sum, computed, notes) = defect_row(&spec, conv.threshold);
                let matches = match computed.as_str() {
                    "True" => r.expected,
                    "False" | "BoundaryFalse" => !r.expected,
                    _ => false,
                };
                if matches {
                    matching.push(branch);
                }
                for n in &notes {
                    warns.push(format!(
                        "({},{},{},{},{}) {}: {n}",
                        r.q,
                        r.g,
                        r.k,
                        r.case.label(),
                        r.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
                        branch.label()
                    ));
                }
                rows.push(TableRow {
                    q: r.q,
                    g: r.g,
                    k: r.k,
                    case: r.case,
                    n: r.n,
                    branch,
                    cns_sum: sum,
                    computed,
                    expected: r.expected,
                    matches,
                    note: notes.join("; "),
                });
            }
            let summary = RowSummary {
                q: r.q,
                g: r.g,
                k: r.k,
                case: r.case,
                n: r.n,
                expected: r.expected,
                matching_branches: matching,
            };
            (rows, summary, warns)
        })
        .collect();
    let mut report = TableReport {
        rows: Vec::new(),
        per_reference_row: Vec::new(),
        total: 0,
        matched: 0,
        mismatched: 0,
        rejected: 0,
        warnings: Vec::new(),
    };
    for (rows, summary, warns) in per {
        for r in &rows {
            report.total += 1;
            if r.computed == "Rejected" {
                report.rejected += 1;
            } else if r.matches {
                report.matched += 1;
            } else {
                report.mismatched += 1;
            }
        }
        report.rows.extend(rows);
        report.per_reference_row.push(summary);
        report.warnings.extend(warns);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(
        q: u64,
        g: u32,
        k: u64,
        case: DefectCase,
        n: Option<u64>,
        branch: Branch,
    ) -> DefectSpec {
        DefectSpec {
            q,
            g,
            k,
            case,
            n,
            branch,
        }
    }

    fn cns(s: &DefectSpec) -> CnsResult {
        let t = scasen_tuple(s).unwrap();
        cns_sum(&LPolynomial::from_real_parts(s.q, s.g, &t.spec).unwrap()).unwrap()
    }

    #[test]
    fn two_sqrt_floor() {
        assert_eq!(floor_two_sqrt(2), 2);
        assert_eq!(floor_two_sqrt(3), 3);
        assert_eq!(floor_two_sqrt(4), 4);
        assert_eq!(floor_two_sqrt(9), 6);
        assert_eq!(floor_two_sqrt(11), 6);
    }

    #[test]
    fn defects() {
        assert_eq!(defect(0, 2, 3).unwrap(), 3);
        assert_eq!(defect(7, 2, 2).unwrap(), 0);
        assert_eq!(defect(0, 3, 3).unwrap(), 5);
        assert!(defect(20, 2, 1).is_err());
    }

    #[test]
    fn scasen_examples() {
        let a = scasen_tuple(&spec(2, 3, 3, DefectCase::A, None, Branch::Plus)).unwrap();
        assert_eq!(
            a.spec.entries,
            vec![RealPart::int(2), RealPart::int(2), RealPart::int(-1)]
        );
        let b = scasen_tuple(&spec(2, 3, 4, DefectCase::B, Some(1), Branch::Plus)).unwrap();
        assert_eq!(
            b.spec.entries,
            vec![RealPart::int(2), RealPart::pair(0, -8)]
        );
        let c = scasen_tuple(&spec(3, 3, 5, DefectCase::B, Some(9), Branch::Plus)).unwrap();
        assert_eq!(
            c.spec.entries,
            vec![RealPart::int(3), RealPart::pair(1, -3)]
        );
        assert!(scasen_tuple(&spec(2, 3, 2, DefectCase::A, None, Branch::Plus)).is_err());
        assert!(scasen_tuple(&spec(2, 3, 4, DefectCase::B, Some(10), Branch::Plus)).is_err());
    }

    #[test]
    fn table_rows_exact() {
        let r = cns(&spec(2, 3, 3, DefectCase::B, Some(1), Branch::Plus));
        assert_eq!(r.sum, BigInt::from(0));
        assert_eq!(r.value, Value::BoundaryFalse);
        assert_eq!(
            cns(&spec(2, 3, 4, DefectCase::B, Some(1), Branch::Plus)).sum,
            BigInt::from(2)
        );
        assert_eq!(
            cns(&spec(3, 3, 5, DefectCase::B, Some(4), Branch::Plus)).sum,
            BigInt::from(2)
        );
        let f = cns(&spec(3, 3, 5, DefectCase::B, Some(9), Branch::Plus));
        assert_eq!(f.sum, BigInt::from(-3));
        assert_eq!(f.value, Value::False);
        let m = cns(&spec(2, 3, 3, DefectCase::A, None, Branch::Minus));
        assert_eq!(m.sum, BigInt::from(28));
        assert_eq!(
            cns(&spec(2, 3, 3, DefectCase::A, None, Branch::Plus)).sum,
            BigInt::from(0)
        );
    }

    #[test]
    fn reldeftr() {
        assert_eq!(reldeftr_solve(1, 0, None).unwrap().alpha, Some(1));
        assert_eq!(reldeftr_solve(1, 3, None).unwrap().alpha, Some(4));
        let r = reldeftr_solve(2, 3, Some(1)).unwrap();
        assert_eq!((r.trace, r.disc), (5, Some(21)));
        assert!(reldeftr_solve(2, 0, Some(1)).is_err());
    }

    #[test]
    fn exicur() {
        let f = QPoly::from_ints(&[-2, 1])
            .mul(&QPoly::from_ints(&[-2, 1]))
            .mul(&QPoly::from_ints(&[1, 1]));
        assert!(!exicur_excludes(&f).unwrap());
        assert!(
            exicur_excludes(&QPoly::from_ints(&[-2, 1]).mul(&QPoly::from_ints(&[-1, 1]))).unwrap()
        );
        assert!(!exicur_excludes(&QPoly::from_ints(&[-3, 0, 1])).unwrap());
    }

    #[test]
    fn nixi() {
        let a: Vec<BigInt> = [1, 9, 45].iter().map(|&x| BigInt::from(x)).collect();
        assert!(nixi_inequality(&a, 9, 9, 2).unwrap());
        assert!(nixi_inequality(&a, 9, 1, 2).unwrap());
        assert!(nixi_inequality(&a, 9, 10, 2).is_err());
    }

    #[test]
    fn gm1_examples() {
        let e = CurveData::from_l(2, LPolynomial::from_i64(2, 1, &[1, -2, 2]).unwrap()).unwrap();
        let v = verdict_degree_gm1(&e).unwrap();
        assert_eq!(v.value, Value::False);
        let g2 =
            CurveData::from_l(2, LPolynomial::from_i64(2, 2, &[1, -1, 0, -2, 4]).unwrap()).unwrap();
        let v = verdict_degree_gm1(&g2).unwrap();
        assert_eq!(v.value, Value::False);
        assert_eq!(v.certificate.unwrap().name, "genus2_exception");
        let herm = CurveData::from_l(2, LPolynomial::from_i64(4, 1, &[1, 4, 4]).unwrap()).unwrap();
        assert_eq!(verdict_degree_gm1(&herm).unwrap().value, Value::True);
        assert_eq!(
            verdict_degree_g(&herm).unwrap().certificate.unwrap().name,
            "q>=3"
        );
    }

    #[test]
    fn g_examples() {
        let g2 =
            CurveData::from_l(2, LPolynomial::from_i64(2, 2, &[1, -2, 2, -4, 4]).unwrap()).unwrap();
        let v = verdict_degree_g(&g2).unwrap();
        assert_eq!(v.value, Value::False);
        let herm = CurveData::from_l(2, LPolynomial::from_i64(2, 1, &[1, 3, 2]).unwrap()).unwrap();
        assert_eq!(
            verdict_degree_g(&herm).unwrap().certificate.unwrap().name,
            "B1>=g"
        );
        assert!(CurveData::new(2, LPolynomial::from_i64(2, 1, &[1, 3, 2]).unwrap(), 5).is_err());
    }

    #[test]
    fn gamma_verdicts() {
        let v = gamma_minus_1_dimension_zero(&LPolynomial::from_i64(2, 1, &[1, -2, 2]).unwrap(), 2);
        assert_eq!(
            v.certificate.unwrap().witness["degree"],
            serde_json::Value::from(-1)
        );
        let v = gamma_minus_1_dimension_zero(
            &LPolynomial::from_i64(2, 2, &[1, -1, 0, -2, 4]).unwrap(),
            2,
        );
        assert_eq!(
            v.certificate.unwrap().witness["degree"],
            serde_json::Value::from(0)
        );
    }
}
