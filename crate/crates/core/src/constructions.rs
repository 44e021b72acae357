//! Explicit non-special divisors: ramified supports on Kummer models, the
//! norm-trace and hyperelliptic families, greedy search, and the incremental
//! method driven by the f_1 / f_2 bounds.

use crate::curves::{Curve, CurveDescriptor, Divisor, Place};
use crate::error::{Error, Result};
use crate::rrspaces::{
    greedy_support_extension, index_of_speciality, is_ordinary_divisor, rr_dim, GreedyRule, RrModel,
};
use crate::semigroups::{generators_in_box, ramified_places};
use crate::tower::prime_power;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ConstructionCertificate {
    SemigroupCertified,
    OracleCertified { dim: u64 },
    DegreeBookkeepingOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionResult {
    pub divisor: Divisor,
    pub target_degree: i64,
    pub certificate: ConstructionCertificate,
    /// Whether the generating-set test also certifies the divisor.
    pub semigroup_check: Option<bool>,
    pub trace: Vec<String>,
}

impl ConstructionResult {
    pub fn to_json(&self) -> Value {
        json!({
            "divisor": self.divisor.to_json(),
            "degree": self.divisor.degree_i64(),
            "target_degree": self.target_degree,
            "certificate": self.certificate,
            "semigroup_check": self.semigroup_check,
            "trace": self.trace,
        })
    }
}

/// Runs the oracle on `d`, expecting `want`; falls back to `fallback` when
/// the oracle does not cover the curve or the budget.
fn certify(
    c: &Curve,
    d: &Divisor,
    want: u64,
    fallback: ConstructionCertificate,
) -> Result<ConstructionCertificate> {
    match rr_dim(c, d) {
        Ok(dim) if dim == want => Ok(ConstructionCertificate::OracleCertified { dim }),
        Ok(dim) => Err(Error::inv(format!(
            "construction produced {d} with dim {dim}, expected {want}"
        ))),
        Err(Error::Budget(_)) | Err(Error::Unsupported(_)) => Ok(fallback),
        Err(e) => Err(e),
    }
}

fn semigroup_check(c: &Curve, places: &[Place], coeffs: &[u64]) -> Option<bool> {
    let model = RrModel::of(c).ok()?;
    if model.d != 1 || places.len() as u64 >= c.q() {
        return None;
    }
    generators_in_box(model.m as u64, model.r as u64, coeffs)
        .ok()
        .map(|g| g.is_empty())
}

/// Multiplicities s_j, j = 1..=m-1-floor(m/r).
pub fn kummer_multiplicities(m: u64, r: u64) -> Result<Vec<u64>> {
    if m < 2 || r < 1 || m.gcd(&r) != 1 {
        return Err(Error::pre(format!(
            "(m, r) = ({m}, {r}) is not a coprime pair"
        )));
    }
    let top = (m - 1).saturating_sub(m / r);
    let l = |j: u64| r - r * j / m;
    Ok((1..=top)
        .map(|j| if j < top { l(j) - l(j + 1) } else { l(top) - 1 })
        .collect())
}

/// Coefficients of the degree g divisor, in the order they are assigned to
/// ramified places.
pub fn kummer_coefficients(m: u64, r: u64) -> Result<Vec<u64>> {
    let s = kummer_multiplicities(m, r)?;
    Ok(s.iter()
        .enumerate()
        .flat_map(|(i, &sj)| std::iter::repeat(i as u64 + 1).take(sj as usize))
        .collect())
}

fn ramified_construction(
    c: &Curve,
    places: &[Place],
    coeffs: &[u64],
    trace: &mut Vec<String>,
) -> Result<ConstructionResult> {
    if coeffs.len() > places.len() {
        return Err(Error::pre(format!(
            "{} places needed, {} available",
            coeffs.len(),
            places.len()
        )));
    }
    let mut d = c.divisor();
    for (p, &n) in places.iter().zip(coeffs) {
        trace.push(format!("{p} -> {n}"));
        d = d.plus(p, n as i64);
    }
    let g = c.genus() as i64;
    if d.degree_i64() != g {
        return Err(Error::inv(format!(
            "degree {} differs from g = {g}",
            d.degree_i64()
        )));
    }
    let used = &places[..coeffs.len()];
    let sg = semigroup_check(c, used, coeffs);
    let fallback = if sg == Some(true) {
        ConstructionCertificate::SemigroupCertified
    } else {
        ConstructionCertificate::DegreeBookkeepingOnly
    };
    let certificate = certify(c, &d, 1, fallback)?;
    Ok(ConstructionResult {
        divisor: d,
        target_degree: g,
        certificate,
        semigroup_check: sg,
        trace: trace.clone(),
    })
}

/// Effective non-special divisor of degree g on the ramified places of a
/// coprime Kummer model, places taken in canonical order.
pub fn kummer_g(c: &Curve) -> Result<ConstructionResult> {
    let model = RrModel::of(c)?;
    if model.d != 1 {
        return Err(Error::pre("kummer_g needs gcd(m, r) = 1"));
    }
    let s = kummer_multiplicities(model.m as u64, model.r as u64)?;
    let mut trace = vec![format!("s = {s:?}")];
    let mut places = ramified_places(c)?;
    places.sort();
    ramified_construction(
        c,
        &places,
        &kummer_coefficients(model.m as u64, model.r as u64)?,
        &mut trace,
    )
}

/// y^{q^{r-1}} + ... + y = x^{(q^r-1)/(q-1)} over F_{q^r}.
pub fn norm_trace_curve(q: u64, r: u32) -> Result<Curve> {
    let (p, s) = prime_power(q)?;
    if r < 2 {
        return Err(Error::pre("norm-trace needs r >= 2"));
    }
    let order = (q as u128).pow(r);
    if order > 1 << 20 {
        return Err(Error::Budget(format!(
            "F_{{{q}^{r}}} exceeds 2^20 elements"
        )));
    }
    let u = (q.pow(r) - 1) / (q - 1);
    let mut lhs = vec![0i64; s * (r as usize - 1) + 1];
    for i in 0..r as usize {
        lhs[s * i] = 1;
    }
    let mut num = vec![0i64; u as usize + 1];
    num[u as usize] = 1;
    let desc = json!({
        "name": format!("norm_trace_{q}_{r}"),
        "q": {"p": p, "n": s * r as usize},
        "model": {"artin_schreier": {"lhs": lhs, "num": num}},
    });
    Curve::new(CurveDescriptor::from_json(&desc.to_string())?)
}

/// Sum of i P_{0 b_i} over 1 <= i <= u-2 with q not dividing i.
pub fn norm_trace_g(q: u64, r: u32) -> Result<(Curve, ConstructionResult)> {
    let c = norm_trace_curve(q, r)?;
    let u = (q.pow(r) - 1) / (q - 1);
    let coeffs: Vec<u64> = (1..=u.saturating_sub(2)).filter(|i| i % q != 0).collect();
    let mut places = ramified_places(&c)?;
    places.sort();
    let mut trace = vec![format!("u = {u}")];
    let res = ramified_construction(&c, &places, &coeffs, &mut trace)?;
    Ok((c, res))
}

/// D - P for a degree g non-special D and a rational place P off its support.
pub fn reduce_to_gm1(c: &Curve, res: &ConstructionResult, p: &Place) -> Result<ConstructionResult> {
    let g = c.genus() as i64;
    if res.target_degree != g {
        return Err(Error::pre("reduction needs a degree g construction"));
    }
    if p.degree != 1 {
        return Err(Error::pre(format!("{p} is not rational")));
    }
    if !res.divisor.coeff(p).is_zero() {
        return Err(Error::pre(format!("{p} lies in the support")));
    }
    let d = res.divisor.plus(p, -1);
    let fallback = match res.certificate {
        ConstructionCertificate::DegreeBookkeepingOnly => {
            ConstructionCertificate::DegreeBookkeepingOnly
        }
        _ => ConstructionCertificate::SemigroupCertified,
    };
    let certificate = certify(c, &d, 0, fallback)?;
    let mut trace = res.trace.clone();
    trace.push(format!("minus {p}"));
    Ok(ConstructionResult {
        divisor: d,
        target_degree: g - 1,
        certificate,
        semigroup_check: res.semigroup_check,
        trace,
    })
}

/// y^{q+1} = x^2 + x over F_{q^2}, stored as the Kummer model with the
/// coordinates swapped: X^{q+1} = Y (Y + 1).
pub fn hyperelliptic_curve(q: u64) -> Result<Curve> {
    let (p, s) = prime_power(q)?;
    if p == 2 {
        return Err(Error::pre("q must be odd"));
    }
    if (q as u128).pow(2) > 1 << 20 {
        return Err(Error::Budget(format!("F_{{{q}^2}} exceeds 2^20 elements")));
    }
    let desc = json!({
        "name": format!("hyperelliptic_{q}"),
        "q": {"p": p, "n": 2 * s},
        "model": {"kummer": {"m": q + 1, "roots": [0, -1]}},
    });
    Curve::new(CurveDescriptor::from_json(&desc.to_string())?)
}

/// Coordinates (a, b) of a rational point on the hyperelliptic model, with
/// a the x-coordinate of y^{q+1} = x^2 + x.
fn hyperelliptic_point(c: &Curve, p: &Place) -> Result<(u64, u64)> {
    let q = (c.q() as f64).sqrt().round() as u64;
    let ok = matches!(c.model(), crate::curves::ModelData::Kummer { m, roots }
        if *m as u64 == q + 1 && q * q == c.q() && roots.len() == 2
            && roots.contains(&c.field().zero()) && roots.contains(&c.field().from_int(-1)));
    if !ok {
        return Err(Error::pre("curve is not y^{q+1} = x^2 + x"));
    }
    match p.coords() {
        Some(xy) if p.degree == 1 && xy.len() == 2 => Ok((xy[1], xy[0])),
        _ => Err(Error::pre(format!("{p} is not a rational affine point"))),
    }
}

/// g P for a rational point P = (a, b) with 2a + 1 != 0.
pub fn hyperelliptic_gp(c: &Curve, p: &Place) -> Result<ConstructionResult> {
    let (a, _) = hyperelliptic_point(c, p)?;
    let f = c.field();
    let a = f.from_index(a);
    if f.add(f.add(a, a), f.one()).is_zero() {
        return Err(Error::pre(format!(
            "{p} is fixed by the hyperelliptic involution"
        )));
    }
    let g = c.genus() as i64;
    let d = c.divisor_from([(p.clone(), g)]);
    let certificate = certify(c, &d, 1, ConstructionCertificate::SemigroupCertified)?;
    Ok(ConstructionResult {
        divisor: d,
        target_degree: g,
        certificate,
        semigroup_check: None,
        trace: vec![format!("{g} * {p}")],
    })
}

/// Degree g, dimension 1, built by keep-dim steps over the rational places.
pub fn greedy_degree_g(c: &Curve) -> Result<ConstructionResult> {
    let places = c.rational_places()?;
    let g = c.genus() as usize;
    if places.len() < g {
        return Err(Error::pre(format!("B1 = {} < g = {g}", places.len())));
    }
    let mut d = c.divisor();
    let mut trace = Vec::new();
    for step in 0..g {
        let p = greedy_support_extension(c, &d, &places, GreedyRule::KeepDim)?
            .ok_or_else(|| Error::inv(format!("no keep-dim place at step {step}")))?;
        trace.push(format!("step {step}: {p}"));
        d = d.plus(&p, 1);
    }
    let certificate = certify(c, &d, 1, ConstructionCertificate::DegreeBookkeepingOnly)?;
    Ok(ConstructionResult {
        divisor: d,
        target_degree: g as i64,
        certificate,
        semigroup_check: None,
        trace,
    })
}

// ---------------------------------------------------------------------------
// bounds

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn bpow(q: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

/// G_q(n) from its defining sum.
pub fn g_q(q: u64, n: u32) -> BigRational {
    if n < 2 {
        return BigRational::zero();
    }
    let one = BigInt::one();
    let den = (bpow(q, n) - &one) * (bpow(q, n - 1) - &one);
    let mut acc = BigInt::zero();
    for k in 1..=n.saturating_sub(2) {
        acc += (bpow(q, n - k) - &one) * (bpow(q, n - k - 1) - &one);
    }
    BigRational::new(acc, den)
}

/// Closed form of G_q(n), used as a cross-check of `g_q`.
pub fn g_q_closed(q: u64, n: u32) -> BigRational {
    if n < 2 {
        return BigRational::zero();
    }
    let one = BigInt::one();
    let qb = BigInt::from(q);
    let a = BigRational::new(
        &qb * &qb * &qb * (bpow(q, 2 * (n - 2)) - &one),
        &qb * &qb - &one,
    );
    let b = BigRational::new((&qb * &qb + &qb) * (bpow(q, n - 2) - &one), &qb - &one);
    let den = (bpow(q, n) - &one) * (bpow(q, n - 1) - &one);
    (a - b + rat(n as i64 - 2)) / BigRational::from_integer(den)
}

/// (1 + (q^{w-2} - 1)/(q^w - 1))^{-1}.
fn plu_factor(q: u64, w: u32) -> BigRational {
    let one = BigInt::one();
    let t = BigRational::new(bpow(q, w - 2) - &one, bpow(q, w) - &one);
    BigRational::one() / (BigRational::one() + t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundFns {
    pub g: i64,
    pub q: u64,
    pub points: u64,
}

impl BoundFns {
    pub fn new(g: i64, q: u64, points: u64) -> Self {
        BoundFns { g, q, points }
    }

    pub fn of(c: &Curve) -> Result<Self> {
        Ok(BoundFns {
            g: c.genus() as i64,
            q: c.q(),
            points: c.count_points(1)?,
        })
    }
}

/// f_1 and f_2 from the incremental method.
pub fn bound_f(s: u8, a: i64, b: &BoundFns) -> Result<i64> {
    let g = b.g;
    match s {
        1 => Ok(if a == -1 {
            1
        } else if (0..=g - 2).contains(&a) {
            g
        } else {
            0
        }),
        2 => {
            if a == g - 2 {
                return Ok(g);
            }
            if !(-2..=g - 3).contains(&a) {
                return Ok(0);
            }
            let n = rat(b.points as i64);
            let mut best: Option<BigInt> = None;
            for w in 2..=(g - 1 - a) {
                let inner = rat(2 * g - 2 + 2 * a + 4 * w) - rat(2) * g_q(b.q, w as u32) * &n;
                let v = (rat(g - 1 - a - w) + plu_factor(b.q, w as u32) * inner)
                    .floor()
                    .to_integer();
                best = Some(match best {
                    Some(x) if x <= v => x,
                    _ => v,
                });
            }
            best.and_then(|v| v.to_i64())
                .ok_or_else(|| Error::inv("empty f_2 range"))
        }
        _ => Err(Error::pre(format!("s = {s} is not 1 or 2"))),
    }
}

// ---------------------------------------------------------------------------
// incremental construction

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RandriamStep {
    pub degree: i64,
    pub chosen: String,
    pub rejected: usize,
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandriamRun {
    pub divisor: Divisor,
    pub steps: Vec<RandriamStep>,
    pub inp6_bound: i64,
}

fn targets_ordinary(c: &Curve, d: &Divisor, targets: &[(u8, Divisor)]) -> Result<bool> {
    for (s, t) in targets {
        if !is_ordinary_divisor(c, &d.scale(*s as i64).try_sub(t)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Extends `d0` to degree `d` one point of `candidates` at a time, keeping
/// every s_i D - T_i ordinary.
pub fn randriam_extend(
    c: &Curve,
    d0: &Divisor,
    targets: &[(u8, Divisor)],
    d: i64,
    candidates: &[Place],
) -> Result<RandriamRun> {
    let d0_deg = d0.degree_i64();
    if d < d0_deg {
        return Err(Error::pre(format!(
            "target degree {d} below deg D0 = {d0_deg}"
        )));
    }
    if targets.iter().any(|(s, _)| *s != 1 && *s != 2) {
        return Err(Error::pre("multipliers must be 1 or 2"));
    }
    if candidates.iter().any(|p| p.degree != 1) {
        return Err(Error::pre("candidates must be rational places"));
    }
    if !targets_ordinary(c, d0, targets)? {
        return Err(Error::pre("some s_i D0 - T_i is exceptional"));
    }
    let bounds = BoundFns::of(c)?;
    let step_bound = |dp: i64| -> Result<i64> {
        let mut acc = 0;
        for (s, t) in targets {
            acc += bound_f(*s, *s as i64 * dp - t.degree_i64(), &bounds)?;
        }
        Ok(acc)
    };
    let mut inp6 = 0;
    for dp in d0_deg..d {
        inp6 = inp6.max(step_bound(dp)?);
    }
    let mut s: Vec<Place> = candidates.to_vec();
    s.sort();
    s.dedup();
    if d > d0_deg && s.len() as i64 <= inp6 {
        return Err(Error::pre(format!(
            "{} candidates do not exceed the bound {inp6}",
            s.len()
        )));
    }
    let mut cur = d0.clone();
    let mut steps = Vec::new();
    for dp in d0_deg..d {
        let bound = step_bound(dp)?;
        let mut rejected = 0;
        let mut chosen = None;
        for p in &s {
            let next = cur.plus(p, 1);
            if targets_ordinary(c, &next, targets)? {
                chosen = Some((p.clone(), next));
                break;
            }
            rejected += 1;
        }
        if rejected as i64 > bound {
            return Err(Error::inv(format!(
                "{rejected} rejected points at degree {dp} exceed the bound {bound}"
            )));
        }
        let (p, next) =
            chosen.ok_or_else(|| Error::pre(format!("no admissible point at degree {dp}")))?;
        steps.push(RandriamStep {
            degree: dp + 1,
            chosen: p.to_string(),
            rejected,
            bound,
        });
        cur = next;
    }
    Ok(RandriamRun {
        divisor: cur,
        steps,
        inp6_bound: inp6,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExdeconsResult {
    pub divisor: Divisor,
    pub start: Divisor,
    pub dim_d_minus_q: u64,
    pub dim_2d_minus_g: u64,
    pub d_minus_q_nonspecial: bool,
    /// Set when deg G = 2 deg Q + g - 1.
    pub two_d_minus_g_nonspecial: Option<bool>,
    pub boundary_case: bool,
    pub steps: Vec<RandriamStep>,
}

impl ExdeconsResult {
    pub fn to_json(&self) -> Value {
        json!({
            "divisor": self.divisor.to_json(),
            "degree": self.divisor.degree_i64(),
            "start": self.start.to_json(),
            "dim_d_minus_q": self.dim_d_minus_q,
            "dim_2d_minus_g": self.dim_2d_minus_g,
            "d_minus_q_nonspecial": self.d_minus_q_nonspecial,
            "two_d_minus_g_nonspecial": self.two_d_minus_g_nonspecial,
            "boundary_case": self.boundary_case,
            "steps": self.steps,
        })
    }
}

/// D with D - Q non-special of degree g-1 and dim(2D - G) = 0, on curves with
/// more than 5g rational points.
pub fn exdecons1(c: &Curve, q_div: &Divisor, g_div: &Divisor) -> Result<ExdeconsResult> {
    let places = c.rational_places()?;
    let g = c.genus() as i64;
    if places.len() as i64 <= 5 * g {
        return Err(Error::pre(format!(
            "{} rational points, need more than 5g = {}",
            places.len(),
            5 * g
        )));
    }
    let (k, n) = (q_div.degree_i64(), g_div.degree_i64());
    if n < 2 * k + g - 1 {
        return Err(Error::pre(format!(
            "deg G = {n} < 2 deg Q + g - 1 = {}",
            2 * k + g - 1
        )));
    }
    let p0 = places[0].clone();
    let start = q_div.plus(&p0, -1);
    let targets = vec![(1u8, q_div.clone()), (2u8, g_div.clone())];
    let run = randriam_extend(c, &start, &targets, k + g - 1, &places)?;
    let d = run.divisor;
    let dq = d.try_sub(q_div)?;
    let dim_dq = rr_dim(c, &dq)?;
    let dim_2dg = rr_dim(c, &d.scale(2).try_sub(g_div)?)?;
    Ok(ExdeconsResult {
        start,
        dim_d_minus_q: dim_dq,
        dim_2d_minus_g: dim_2dg,
        d_minus_q_nonspecial: dim_dq == 0,
        two_d_minus_g_nonspecial: (n == 2 * k + g - 1).then_some(dim_2dg == 0),
        boundary_case: g == 1,
        divisor: d,
        steps: run.steps,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PluBound {
    pub name: String,
    pub value: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PluAudit {
    pub s: u8,
    pub applicable: bool,
    pub degree: i64,
    pub dim: u64,
    pub index_of_speciality: i64,
    pub jumps: Vec<String>,
    pub bounds: Vec<PluBound>,
}

/// Counts rational P with dim(A + sP) > dim(A) and checks every applicable
/// bound on that count.
pub fn plu_bound_audit(c: &Curve, a: &Divisor, s: u8) -> Result<PluAudit> {
    if s != 1 && s != 2 {
        return Err(Error::pre(format!("s = {s} is not 1 or 2")));
    }
    let g = c.genus() as i64;
    let degree = a.degree_i64();
    let dim = rr_dim(c, a)?;
    let i = index_of_speciality(c, a)?;
    let applicable = if s == 1 {
        i >= 1
    } else {
        i >= 2 && degree >= -2
    };
    let mut audit = PluAudit {
        s,
        applicable,
        degree,
        dim,
        index_of_speciality: i,
        jumps: vec![],
        bounds: vec![],
    };
    if !applicable {
        return Ok(audit);
    }
    let places = c.rational_places()?;
    let jumps: Vec<Result<Option<String>>> = places
        .par_iter()
        .map(|p| Ok((rr_dim(c, &a.plus(p, s as i64))? > dim).then(|| p.to_string())))
        .collect();
    for j in jumps {
        if let Some(p) = j? {
            audit.jumps.push(p);
        }
    }
    let count = rat(audit.jumps.len() as i64);
    let mut push = |name: String, v: BigRational| {
        let holds = count <= v;
        audit.bounds.push(PluBound {
            name,
            value: v.to_string(),
            holds,
        });
    };
    let dim_i = dim as i64;
    if s == 1 {
        push("g-dim(A)".into(), rat(g - dim_i));
        if degree == -1 {
            push("deg(A)=-1".into(), rat(1));
        }
    } else {
        let q = c.q();
        let n = rat(places.len() as i64);
        push(
            "3g+3+deg(A)-3dim(A)".into(),
            rat(3 * g + 3 + degree - 3 * dim_i),
        );
        for w in 2..=i {
            let inner = rat(6 * g - 6 - 2 * degree - 4 * (i - w)) - rat(2) * g_q(q, w as u32) * &n;
            push(
                format!("w={w}"),
                rat(i - w) + plu_factor(q, w as u32) * inner,
            );
        }
    }
    if let Some(b) = audit.bounds.iter().find(|b| !b.holds) {
        return Err(Error::inv(format!(
            "{} jumps exceed the bound {} = {}",
            audit.jumps.len(),
            b.name,
            b.value
        )));
    }
    Ok(audit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::bundled_curve;

    #[test]
    fn multiplicities() {
        assert_eq!(kummer_coefficients(5, 3).unwrap(), vec![1, 3]);
        assert_eq!(kummer_coefficients(4, 3).unwrap(), vec![1, 2]);
        assert_eq!(kummer_coefficients(3, 2).unwrap(), vec![1]);
        assert_eq!(kummer_coefficients(3, 7).unwrap().iter().sum::<u64>(), 6);
    }

    #[test]
    fn hermitian_constructions() {
        for name in ["hermitian_q2", "hermitian_q3"] {
            let c = bundled_curve(name).unwrap();
            let res = kummer_g(&c).unwrap();
            assert_eq!(res.divisor.degree_i64(), c.genus() as i64);
            assert_eq!(
                res.certificate,
                ConstructionCertificate::OracleCertified { dim: 1 }
            );
            assert_eq!(res.semigroup_check, Some(true));
            let red = reduce_to_gm1(&c, &res, &Place::infinity()).unwrap();
            assert_eq!(
                red.certificate,
                ConstructionCertificate::OracleCertified { dim: 0 }
            );
            let p = res.divisor.support()[0].clone();
            assert!(reduce_to_gm1(&c, &res, &p).is_err());
        }
    }

    #[test]
    fn norm_trace() {
        let (c, res) = norm_trace_g(2, 3).unwrap();
        assert_eq!(c.genus(), 9);
        assert_eq!(res.divisor.degree_i64(), 9);
        assert_eq!(
            res.certificate,
            ConstructionCertificate::OracleCertified { dim: 1 }
        );
        let (c, res) = norm_trace_g(3, 2).unwrap();
        assert_eq!(c.genus(), 3);
        assert_eq!(res.divisor.degree_i64(), 3);
    }

    #[test]
    fn hyperelliptic() {
        for q in [3, 5] {
            let c = hyperelliptic_curve(q).unwrap();
            assert_eq!(c.genus() as u64, (q - 1) / 2);
            let f = c.field();
            let pts = c.rational_places().unwrap();
            let mut tested = 0;
            for p in pts.iter().filter(|p| p.coords().is_some()) {
                let a = f.from_index(p.coords().unwrap()[1]);
                let fixed = f.add(f.add(a, a), f.one()).is_zero();
                match hyperelliptic_gp(&c, p) {
                    Ok(res) => {
                        assert!(!fixed);
                        assert_eq!(
                            res.certificate,
                            ConstructionCertificate::OracleCertified { dim: 1 }
                        );
                        let other = pts.iter().find(|o| *o != p).unwrap();
                        let red = reduce_to_gm1(&c, &res, other).unwrap();
                        assert_eq!(
                            red.certificate,
                            ConstructionCertificate::OracleCertified { dim: 0 }
                        );
                        tested += 1;
                    }
                    Err(_) => assert!(fixed),
                }
                if tested > 6 {
                    break;
                }
            }
            assert!(tested > 0);
        }
    }

    #[test]
    fn greedy() {
        let c = bundled_curve("hermitian_q3").unwrap();
        let res = greedy_degree_g(&c).unwrap();
        assert_eq!(res.divisor.degree_i64(), 3);
        assert!(res.divisor.is_effective());
    }

    #[test]
    fn g_q_values() {
        for q in [2u64, 3, 4, 9] {
            assert!(g_q(q, 2).is_zero());
            let mut prev = BigRational::zero();
            for n in 2..=40 {
                let v = g_q(q, n);
                assert_eq!(v, g_q_closed(q, n));
                assert!(v >= prev);
                prev = v;
            }
        }
    }

    #[test]
    fn f_bounds() {
        let b = BoundFns::new(3, 9, 28);
        assert_eq!(bound_f(1, -1, &b).unwrap(), 1);
        assert_eq!(bound_f(2, 1, &b).unwrap(), 3);
        for s in [1u8, 2] {
            let max = (-10..20).map(|a| bound_f(s, a, &b).unwrap()).max().unwrap();
            assert_eq!(max, (s as i64).pow(2) * 3);
            assert_eq!(bound_f(s, 3 - 1 - s as i64, &b).unwrap(), max);
        }
    }

    #[test]
    fn exdecons_hermitian() {
        let c = bundled_curve("hermitian_q3").unwrap();
        let q = c.divisor();
        let g = c.divisor_from([(Place::infinity(), 2)]);
        let res = exdecons1(&c, &q, &g).unwrap();
        assert_eq!(res.divisor.degree_i64(), 2);
        assert_eq!(res.dim_d_minus_q, 0);
        assert_eq!(res.dim_2d_minus_g, 0);
        assert_eq!(res.two_d_minus_g_nonspecial, Some(true));
        let bad = randriam_extend(
            &c,
            &c.divisor(),
            &[(1, c.divisor()), (2, g.clone())],
            2,
            &c.rational_places().unwrap(),
        );
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }

    #[test]
    fn plu_audits() {
        let c = bundled_curve("hermitian_q3").unwrap();
        let a = c.divisor();
        let audit = plu_bound_audit(&c, &a, 1).unwrap();
        assert!(audit.applicable && audit.jumps.is_empty());
        let a = c.divisor_from([(Place::infinity(), 2)]);
        assert!(plu_bound_audit(&c, &a, 1)
            .unwrap()
            .bounds
            .iter()
            .all(|b| b.holds));
        let audit = plu_bound_audit(&c, &c.divisor(), 2).unwrap();
        assert!(audit.applicable && audit.bounds.iter().all(|b| b.holds));
        let big = c.divisor_from([(Place::infinity(), 5)]);
        assert!(!plu_bound_audit(&c, &big, 1).unwrap().applicable);
    }
}
