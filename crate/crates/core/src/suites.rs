//! Invariant suites behind `divforge verify`.

use crate::constructions::{
    g_q, g_q_closed, greedy_degree_g, kummer_g, kummer_multiplicities, reduce_to_gm1,
    ConstructionCertificate,
};
use crate::criteria::{
    cns_sum, nixi_inequality, regenerate_defect_tables, verdict_degree_g, verdict_degree_gm1,
    Convention, CurveData, Value, Verdict,
};
use crate::curves::{Curve, Divisor, Place};
use crate::error::{Error, Result};
use crate::galois::{Embedding, FieldCtx};
use crate::reference::{bundled_curves, class_number_rows, load_reference_tables};
use crate::rrspaces::{rr_dim, valuation_from, FunctionRep, RrModel};
use crate::semigroups::{floor_identities, gamma_plus_multi, gap_set_single, is_pole_number};
use crate::tower::{a_index, c_m, deg_a, finite_level_check, tower_genus, tower_points};
use crate::zeta::{effective_counts_oracle, LPolynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const SUITES: [&str; 9] = [
    "galois",
    "curves",
    "zeta",
    "criteria",
    "rr",
    "semigroups",
    "constructions",
    "tower",
    "reference",
];

const SEED: u64 = 0x00d1_f095;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pass": self.all_pass(),
            "total": self.checks.len(),
            "failed": self.failures().len(),
            "checks": self.checks,
        })
    }
}

struct Sink {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Sink {
    fn new(suite: &'static str) -> Self {
        Sink {
            suite,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            suite: self.suite.into(),
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    /// Errors become failing checks.
    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let name = name.into();
        match f() {
            Ok((pass, detail)) => self.check(name, pass, detail),
            Err(e) => self.check(name, false, format!("error: {e}")),
        }
    }

    fn extend(&mut self, other: Vec<Check>) {
        self.checks.extend(other);
    }
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

/// Every suite, run in parallel and reported in a fixed order.
pub fn run_all() -> SuiteReport {
    let parts: Vec<Vec<Check>> = SUITES.par_iter().map(|s| run_named(s)).collect();
    SuiteReport {
        checks: parts.into_iter().flatten().collect(),
    }
}

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::pre(format!(
            "unknown suite '{name}'; expected one of {}",
            SUITES.join(", ")
        )));
    }
    Ok(SuiteReport {
        checks: run_named(name),
    })
}

fn run_named(name: &str) -> Vec<Check> {
    match name {
        "galois" => galois_suite(),
        "curves" => curves_suite(),
        "zeta" => zeta_suite(),
        "criteria" => criteria_suite(),
        "rr" => rr_suite(),
        "semigroups" => semigroup_suite(),
        "constructions" => construction_suite(),
        "tower" => tower_suite(),
        _ => reference_suite(),
    }
}

struct Named {
    name: String,
    curve: Curve,
}

fn curves_or_fail(s: &mut Sink) -> Vec<Named> {
    match bundled_curves().and_then(|bs| {
        bs.into_iter()
            .map(|b| {
                Ok(Named {
                    name: b.name.clone(),
                    curve: b.curve()?,
                })
            })
            .collect::<Result<Vec<_>>>()
    }) {
        Ok(v) => v,
        Err(e) => {
            s.check("load bundled curves", false, e.to_string());
            Vec::new()
        }
    }
}

fn per_curve(suite: &'static str, f: impl Fn(&Named, &mut Sink) + Sync) -> Vec<Check> {
    let mut s = Sink::new(suite);
    let curves = curves_or_fail(&mut s);
    let parts: Vec<Vec<Check>> = curves
        .par_iter()
        .map(|nc| {
            let mut local = Sink::new(suite);
            f(nc, &mut local);
            local.checks
        })
        .collect();
    for p in parts {
        s.extend(p);
    }
    s.checks
}

fn l_poly(c: &Curve) -> Result<LPolynomial> {
    LPolynomial::from_counts(c.q(), c.genus(), &c.counts(c.genus())?)
}

fn galois_suite() -> Vec<Check> {
    let mut s = Sink::new("galois");
    let shapes = [
        (2u32, 1usize),
        (2, 4),
        (2, 8),
        (3, 2),
        (5, 1),
        (7, 2),
        (11, 2),
    ];
    for (i, &(p, n)) in shapes.iter().enumerate() {
        s.run(format!("field axioms F_{p}^{n}"), || {
            let f = FieldCtx::new(p, n)?;
            let mut r = rng(i as u64);
            let q = f.order();
            for _ in 0..200 {
                let [a, b, c] = [0; 3].map(|_| f.from_index(r.gen_range(0..q)));
                let ok = f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                    && f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                    && f.mul(a, b) == f.mul(b, a)
                    && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                    && f.add(a, f.neg(a)) == f.zero();
                if !ok {
                    return Ok((
                        false,
                        format!(
                            "axiom fails at {}, {}, {}",
                            f.index(&a),
                            f.index(&b),
                            f.index(&c)
                        ),
                    ));
                }
                if !a.is_zero() && f.mul(a, f.inv(a)?) != f.one() {
                    return Ok((false, format!("a * a^-1 != 1 at {}", f.index(&a))));
                }
            }
            Ok((true, "200 random triples".into()))
        });
        s.run(format!("frobenius F_{p}^{n}"), || {
            let f = FieldCtx::new(p, n)?;
            let fixed = f.elements().filter(|&a| f.frobenius(a) == a).count() as u64;
            let mut r = rng(100 + i as u64);
            for _ in 0..50 {
                let a = f.from_index(r.gen_range(0..f.order()));
                let mut b = a;
                for _ in 0..n {
                    b = f.frobenius(b);
                }
                if b != a {
                    return Ok((false, "frobenius^n is not the identity".into()));
                }
            }
            Ok((fixed == p as u64, format!("{fixed} fixed points")))
        });
        s.run(format!("modulus reproducible F_{p}^{n}"), || {
            let (a, b) = (FieldCtx::new(p, n)?, FieldCtx::new(p, n)?);
            Ok((a.modulus() == b.modulus(), format!("{:?}", a.modulus())))
        });
    }
    for &(p, sub, big) in &[(2u32, 2usize, 4usize), (3, 1, 2), (2, 2, 6)] {
        s.run(format!("embedding F_{p}^{sub} -> F_{p}^{big}"), || {
            let (k, l) = (FieldCtx::new(p, sub)?, FieldCtx::new(p, big)?);
            let e = Embedding::new(&k, &l)?;
            for a in k.elements() {
                for b in k.elements() {
                    if e.embed(k.mul(a, b)) != l.mul(e.embed(a), e.embed(b))
                        || e.embed(k.add(a, b)) != l.add(e.embed(a), e.embed(b))
                    {
                        return Ok((false, "not a ring homomorphism".into()));
                    }
                }
                if e.preimage(e.embed(a)) != Some(a) {
                    return Ok((false, "preimage does not invert embed".into()));
                }
            }
            Ok((true, format!("{} elements", k.order())))
        });
    }
    s.checks
}

fn max_level(c: &Curve) -> u32 {
    let mut r = 1;
    while r < 8 && c.q().pow(r + 1) <= 1 << 12 {
        r += 1;
    }
    r.max(c.genus() + 1)
}

fn curves_suite() -> Vec<Check> {
    per_curve("curves", |nc, s| {
        let (c, name) = (&nc.curve, &nc.name);
        let g = c.genus();
        let l = match l_poly(c) {
            Ok(l) => l,
            Err(e) => return s.check(format!("{name}: L-polynomial"), false, e.to_string()),
        };
        s.check(
            format!("{name}: functional equation"),
            l.functional_equation_ok(),
            format!("{:?}", l.coeffs()),
        );
        let w = l.weil_check();
        s.check(
            format!("{name}: Weil bound"),
            w.ok,
            format!("max deviation {:.2e}", w.max_deviation),
        );
        let rmax = max_level(c);
        s.run(format!("{name}: N_r round trip r <= {rmax}"), || {
            for r in 1..=rmax {
                let n = c.count_points(r)?;
                if BigInt::from(n) != l.point_count(r) {
                    return Ok((
                        false,
                        format!("N_{r}: enumerated {n}, predicted {}", l.point_count(r)),
                    ));
                }
                let dev = n as i128 - c.q().pow(r) as i128 - 1;
                if dev * dev > 4 * (g as i128).pow(2) * c.q().pow(r) as i128 {
                    return Ok((false, format!("N_{r} = {n} violates the Hasse-Weil bound")));
                }
            }
            Ok((true, String::new()))
        });
        s.run(format!("{name}: place counts"), || {
            let b = c.place_counts(rmax)?;
            let pred = l.place_counts(rmax)?;
            for r in 1..=rmax {
                let sum: u64 = (1..=r)
                    .filter(|d| r % d == 0)
                    .map(|d| d as u64 * b[d as usize - 1])
                    .sum();
                if sum != c.count_points(r)? {
                    return Ok((false, format!("sum d B_d = {sum} differs from N_{r}")));
                }
            }
            Ok((b == pred, format!("B = {b:?}")))
        });
        s.run(format!("{name}: canonical place listing"), || {
            let (a, b) = (c.rational_places()?, c.rational_places()?);
            let mut sorted = a.clone();
            sorted.sort();
            let n1 = c.count_points(1)?;
            let (b2, listed) = c.places_of_degree(2)?;
            let deg2_ok = listed.map_or(true, |v| {
                v.len() as u64 == b2 && v.iter().all(|p| p.degree == 2)
            });
            Ok((
                a == b && a == sorted && a.len() as u64 == n1 && deg2_ok,
                format!("{} rational places", a.len()),
            ))
        });
    })
}

fn zeta_suite() -> Vec<Check> {
    per_curve("zeta", |nc, s| {
        let (c, name) = (&nc.curve, &nc.name);
        let g = c.genus();
        if g == 0 {
            return;
        }
        let l = match l_poly(c) {
            Ok(l) => l,
            Err(e) => return s.check(format!("{name}: L-polynomial"), false, e.to_string()),
        };
        let n = 2 * g as usize + 2;
        s.run(
            format!("{name}: effective counts against the product oracle, n <= {n}"),
            || {
                let a = l.effective_counts(n)?;
                let b = l.place_counts(n as u32)?;
                let enumerated = c.place_counts(max_level(c))?;
                for k in 0..=n {
                    if a[k] != effective_counts_oracle(&b, k) {
                        return Ok((
                            false,
                            format!(
                                "A_{k} = {} but the oracle gives {}",
                                a[k],
                                effective_counts_oracle(&b, k)
                            ),
                        ));
                    }
                    if k <= enumerated.len() && a[k] != effective_counts_oracle(&enumerated, k) {
                        return Ok((
                            false,
                            format!("A_{k} disagrees with the enumerated place counts"),
                        ));
                    }
                }
                Ok((true, format!("A = {a:?}")))
            },
        );
        if g >= 2 {
            s.run(format!("{name}: A_g = h + q A_(g-2)"), || {
                let a = l.effective_counts(g as usize)?;
                let rhs = l.class_number() + BigInt::from(c.q()) * &a[g as usize - 2];
                Ok((
                    a[g as usize] == rhs,
                    format!("A_g = {}, rhs = {rhs}", a[g as usize]),
                ))
            });
        }
        s.run(format!("{name}: closed form for A_(g-k)"), || {
            let a = l.effective_counts(g as usize)?;
            for k in 1..=g {
                if l.a_g_minus_k(k)? != a[(g - k) as usize] {
                    return Ok((false, format!("k = {k}")));
                }
            }
            Ok((true, String::new()))
        });
        s.run(format!("{name}: A_n >= m A_(n-1) - C(m,2) A_(n-2)"), || {
            let a = l.effective_counts(n)?;
            let b1 = c.count_points(1)?;
            let mut tried = 0;
            for m in 1..=b1.min(8) {
                for k in 2..=n {
                    tried += 1;
                    if !nixi_inequality(&a, b1, m, k)? {
                        return Ok((false, format!("fails at m = {m}, n = {k}")));
                    }
                }
            }
            Ok((true, format!("{tried} cases")))
        });
    })
}

/// Recomputes the condition named by a verdict's certificate.
fn certificate_sound(d: &CurveData, v: &Verdict) -> Result<bool> {
    let Some(cert) = &v.certificate else {
        return Ok(v.value == Value::Unknown);
    };
    let h = d.l.class_number();
    let a = |n: i64| -> Result<BigInt> {
        if n < 0 {
            Ok(BigInt::zero())
        } else {
            Ok(d.l.effective_counts(n as usize)?[n as usize].clone())
        }
    };
    let (q, g, b1) = (d.q, d.g as u64, d.b1);
    let g2 = crate::criteria::genus2_exceptions()
        .iter()
        .any(|e| *e == d.l);
    Ok(match cert.name.as_str() {
        "q>=3" => q >= 3,
        "B1>=g" => b1 >= g,
        "q=2,g=3" => q == 2 && g == 3,
        "q=2,g>=4,B1>=3" => q == 2 && g >= 4 && b1 >= 3,
        "A_{g-2}<h" => a(g as i64 - 2)? < h,
        "A_{g-2}=h,g<=3" => a(g as i64 - 2)? == h && (2..=3).contains(&g),
        "genus2_exception" => q == 2 && g == 2 && g2,
        "q>=4" => q >= 4 && g >= 2,
        "genus1:h>1" => g == 1 && h > BigInt::one(),
        "B1>=g+1" => b1 > g,
        "A_{g-1}<h" => a(g as i64 - 1)? < h,
        "cns_sum" => cns_sum(&d.l)?.value == v.value,
        "ordinary,q<=3" => q <= 3 && d.l.is_ordinary(d.p),
        _ => g == 1 && h.is_one() && v.value == Value::False,
    })
}

fn criteria_suite() -> Vec<Check> {
    per_curve("criteria", |nc, s| {
        let (c, name) = (&nc.curve, &nc.name);
        if c.genus() == 0 {
            return;
        }
        let d = match CurveData::from_curve(c) {
            Ok(d) => d,
            Err(e) => return s.check(format!("{name}: curve data"), false, e.to_string()),
        };
        s.run(format!("{name}: (q-1) A_(g-1) + sum = h"), || {
            let a = d.l.effective_counts(d.g as usize - 1)?;
            let lhs = BigInt::from(d.q - 1) * &a[d.g as usize - 1] + d.l.cns_sum();
            Ok((
                lhs == d.l.class_number(),
                format!("h = {}", d.l.class_number()),
            ))
        });
        s.run(format!("{name}: degree g verdict"), || {
            let v = verdict_degree_g(&d)?;
            let sound = certificate_sound(&d, &v)?;
            let rule = d.q < 3 || v.value == Value::True;
            Ok((
                sound && rule,
                format!(
                    "{} via {:?}",
                    v.value.label(),
                    v.certificate.map(|c| c.name)
                ),
            ))
        });
        s.run(format!("{name}: degree g-1 verdict"), || {
            let v = verdict_degree_gm1(&d)?;
            let sound = certificate_sound(&d, &v)?;
            let rule = d.q < 4 || d.g < 2 || v.value == Value::True;
            Ok((
                sound && rule,
                format!(
                    "{} via {:?}",
                    v.value.label(),
                    v.certificate.map(|c| c.name)
                ),
            ))
        });
    })
}

fn random_divisor(c: &Curve, places: &[Place], r: &mut ChaCha8Rng) -> Divisor {
    let g = c.genus() as i64;
    loop {
        let k = r.gen_range(1..=3.min(places.len()));
        let mut d = c.divisor();
        for p in places.choose_multiple(r, k) {
            d = d.plus(p, r.gen_range(-2..=3));
        }
        if (-1..=2 * g + 1).contains(&d.degree_i64()) {
            return d;
        }
    }
}

fn rr_suite() -> Vec<Check> {
    per_curve("rr", |nc, s| {
        let (c, name) = (&nc.curve, &nc.name);
        let Ok(model) = RrModel::of(c) else { return };
        let g = c.genus() as i64;
        let places = match c.rational_places() {
            Ok(p) => p,
            Err(e) => return s.check(format!("{name}: places"), false, e.to_string()),
        };
        let inf = c.infinity();
        let canonical = match (&inf, model.d) {
            (Some(p), 1) => Some(c.divisor().plus(p, 2 * g - 2)),
            _ => None,
        };
        if let Some(k) = &canonical {
            s.run(format!("{name}: canonical divisor has dimension g"), || {
                let dim = rr_dim(c, k)?;
                Ok((dim as i64 == g, format!("dim = {dim}")))
            });
        }
        let mut r = rng(name.len() as u64 * 7919 + places.len() as u64);
        for t in 0..10 {
            let d = random_divisor(c, &places, &mut r);
            let p = places
                .choose(&mut r)
                .expect("rational places exist")
                .clone();
            let label = format!("{name}: random divisor {t}");
            s.run(label, || {
                let deg = d.degree_i64();
                let dim = rr_dim(c, &d)? as i64;
                let i = dim - deg - 1 + g;
                let mut bad = Vec::new();
                if i < 0 {
                    bad.push("Riemann inequality");
                }
                if deg < 0 && dim != 0 {
                    bad.push("negative degree");
                }
                if deg > 2 * g - 2 && i != 0 {
                    bad.push("large degree is special");
                }
                if i > 0 && dim > 0 && 2 * (dim - 1) > deg {
                    bad.push("Clifford");
                }
                let up = rr_dim(c, &d.plus(&p, 1))? as i64;
                if up < dim || up > dim + 1 {
                    bad.push("monotonicity");
                }
                if let Some(k) = &canonical {
                    if rr_dim(c, &k.try_sub(&d)?)? as i64 != i {
                        bad.push("Serre duality");
                    }
                }
                Ok((
                    bad.is_empty(),
                    format!("deg {deg}, dim {dim}, i {i} {bad:?}"),
                ))
            });
        }
        s.run(
            format!("{name}: valuation independent of start precision"),
            || {
                let f = c.field();
                let y = FunctionRep::from_monomials(c, &[(1, 0, f.one())])?;
                let xy = FunctionRep::from_monomials(c, &[(1, 1, f.one()), (0, 0, f.one())])?;
                let mut targets: Vec<Place> = places.iter().take(3).cloned().collect();
                targets.extend(inf.clone());
                for func in [&y, &xy] {
                    for p in &targets {
                        let base = valuation_from(c, func, p, 1)?;
                        for start in [2, 8, 64] {
                            if valuation_from(c, func, p, start)? != base {
                                return Ok((
                                    false,
                                    format!("valuation at {p} changes with precision"),
                                ));
                            }
                        }
                    }
                }
                let ok = match (&inf, model.d) {
                    (Some(p), 1) => valuation_from(c, &y, p, 8)? == -(model.m as i64),
                    _ => true,
                };
                Ok((ok, String::new()))
            },
        );
        if let (Some(p), 1) = (&inf, model.d) {
            s.run(format!("{name}: gaps at infinity"), || {
                let (m, rr) = (model.m as u64, model.r as u64);
                let mut prev = rr_dim(c, &c.divisor())?;
                for n in 1..=2 * g as u64 {
                    let dim = rr_dim(c, &c.divisor().plus(p, n as i64))?;
                    let pole = dim > prev;
                    let expected = (0..=n / m).any(|a| (n - a * m) % rr == 0);
                    if pole != expected {
                        return Ok((false, format!("order {n}")));
                    }
                    prev = dim;
                }
                Ok((true, format!("semigroup <{m}, {rr}>")))
            });
        }
    })
}

fn coprime_pairs(hi: u64) -> Vec<(u64, u64)> {
    (2..=hi)
        .flat_map(|m| (2..=hi).map(move |r| (m, r)))
        .filter(|&(m, r)| m.gcd(&r) == 1)
        .collect()
}

fn semigroup_suite() -> Vec<Check> {
    let mut s = Sink::new("semigroups");
    s.run("gap count (m-1)(r-1)/2 for coprime m, r <= 20", || {
        let pairs = coprime_pairs(20);
        for &(m, r) in &pairs {
            let gaps = gap_set_single(m, r)?;
            if gaps.len() as u64 != (m - 1) * (r - 1) / 2 {
                return Ok((false, format!("({m}, {r})")));
            }
        }
        Ok((true, format!("{} pairs", pairs.len())))
    });
    s.run("gaps of (4, 3)", || {
        Ok((gap_set_single(4, 3)? == vec![1, 2, 5], String::new()))
    });
    s.run("pole numbers closed under addition", || {
        let mut r = rng(7);
        let pairs = coprime_pairs(12);
        for _ in 0..300 {
            let (m, rr) = *pairs.choose(&mut r).expect("pairs");
            let (a, b) = (r.gen_range(0..60u64), r.gen_range(0..60u64));
            if is_pole_number(m, rr, a)?
                && is_pole_number(m, rr, b)?
                && !is_pole_number(m, rr, a + b)?
            {
                return Ok((false, format!("({m}, {rr}): {a} + {b}")));
            }
        }
        Ok((true, "300 samples".into()))
    });
    s.run("floor identities on 50 coprime pairs", || {
        let mut r = rng(11);
        let mut n = 0;
        while n < 50 {
            let (rr, m) = (r.gen_range(1..60u64), r.gen_range(2..40u64));
            if rr.gcd(&m) != 1 {
                continue;
            }
            floor_identities(rr, m)?;
            n += 1;
        }
        Ok((true, "50 pairs".into()))
    });
    s.run(
        "generator vectors share j and satisfy the sum constraint",
        || {
            for (m, r) in coprime_pairs(9) {
                for l in 2..=(r - r / m) as usize {
                    for v in gamma_plus_multi(m, r, l)?.vectors {
                        let j = v[0] % m;
                        let total: u64 = v.iter().map(|x| x / m).sum();
                        let want = r as i64 - l as i64 - (r * j / m) as i64;
                        if j == 0 || v.iter().any(|x| x % m != j) || total as i64 != want {
                            return Ok((false, format!("({m}, {r}, {l}): {v:?}")));
                        }
                    }
                }
            }
            Ok((true, String::new()))
        },
    );
    s.checks
}

fn construction_suite() -> Vec<Check> {
    let mut s = Sink::new("constructions");
    s.run("sum j s_j = g for coprime m, r <= 20", || {
        for (m, r) in coprime_pairs(20) {
            let sj = kummer_multiplicities(m, r)?;
            let deg: u64 = sj
                .iter()
                .enumerate()
                .map(|(i, &x)| (i as u64 + 1) * x)
                .sum();
            if deg != (m - 1) * (r - 1) / 2 {
                return Ok((false, format!("({m}, {r}) gives {deg}")));
            }
        }
        Ok((true, String::new()))
    });
    for name in ["hermitian_q2", "hermitian_q3", "kummer_5_3_f11"] {
        s.run(
            format!("{name}: degree g construction is certified"),
            || {
                let c = crate::reference::bundled_curve(name)?;
                let res = kummer_g(&c)?;
                let ok = res.divisor.degree_i64() == c.genus() as i64
                    && res.certificate == ConstructionCertificate::OracleCertified { dim: 1 };
                let inf = c
                    .infinity()
                    .ok_or_else(|| Error::inv("no place at infinity"))?;
                let red = reduce_to_gm1(&c, &res, &inf)?;
                let ok_red = rr_dim(&c, &red.divisor)? == 0;
                Ok((ok && ok_red, format!("{:?}", res.certificate)))
            },
        );
    }
    for name in ["hermitian_q3", "elliptic_f2_h3"] {
        s.run(format!("{name}: greedy degree g divisor"), || {
            let c = crate::reference::bundled_curve(name)?;
            let res = greedy_degree_g(&c)?;
            let ok = matches!(
                res.certificate,
                ConstructionCertificate::OracleCertified { .. }
            );
            Ok((
                ok && res.divisor.degree_i64() == c.genus() as i64,
                format!("{:?}", res.certificate),
            ))
        });
    }
    s.run("G_q monotone and equal to its closed form", || {
        for q in [2u64, 3, 4, 5] {
            for n in 2..30 {
                if g_q(q, n) != g_q_closed(q, n) || g_q(q, n + 1) < g_q(q, n) {
                    return Ok((false, format!("q = {q}, n = {n}")));
                }
            }
        }
        Ok((true, String::new()))
    });
    s.checks
}

fn tower_suite() -> Vec<Check> {
    let mut s = Sink::new("tower");
    s.run("c_m - g = deg A = q^(m/2) - 1", || {
        for q in [2u64, 3, 4] {
            for m in 1..=16u32 {
                let want = q.pow(m / 2) - 1;
                if c_m(q, m) - tower_genus(q, m) != want || deg_a(q, m) != want {
                    return Ok((false, format!("q = {q}, m = {m}")));
                }
            }
        }
        Ok((true, String::new()))
    });
    for m in 2..=3u32 {
        s.run(format!("enumerated zero sets q = 2, m = {m}"), || {
            let t = tower_points(2, m, 1)?;
            let ok = (1..=a_index(m)).all(|j| t.deg_aj(j) == 2u64.pow(j) - 1);
            Ok((ok, format!("zero set degrees {:?}", t.zero_set_degrees)))
        });
        s.run(format!("finite level check q = 2, m = {m}"), || {
            let rep = finite_level_check(2, m)?;
            Ok((
                rep.roundtrip_ok,
                format!(
                    "g = {}, h = {}, A_(g-1) < h: {}",
                    rep.genus, rep.h, rep.holds
                ),
            ))
        });
    }
    s.checks
}

fn reference_suite() -> Vec<Check> {
    let mut s = Sink::new("reference");
    s.run("checksums and parsing", || {
        let t = load_reference_tables()?;
        Ok((
            !t.defect.is_empty() && !t.class_number.is_empty(),
            format!(
                "{} defect rows, {} class number rows",
                t.defect.len(),
                t.class_number.len()
            ),
        ))
    });
    s.run("class number rows are self-consistent", || {
        for row in class_number_rows()? {
            if row.b.is_empty() {
                return Ok((false, row.equation));
            }
        }
        Ok((true, String::new()))
    });
    s.run("defect table regeneration completes", || {
        let rep = regenerate_defect_tables(Convention::default())?;
        Ok((
            true,
            rep.mismatch_summary()
                .lines()
                .next()
                .unwrap_or("")
                .to_string(),
        ))
    });
    s.checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope").is_err());
    }

    #[test]
    fn semigroup_suite_passes() {
        let r = run_suite("semigroups").unwrap();
        assert!(r.all_pass(), "{:?}", r.failures());
    }
}
