use crate::args::{Command, Common, Format, Method};
use divforge::constructions::{
    exdecons1, greedy_degree_g, hyperelliptic_curve, hyperelliptic_gp, kummer_g, norm_trace_g, reduce_to_gm1,
    ConstructionResult,
};
use divforge::criteria::{
    cns_sum, gamma_minus_1_dimension_zero, regenerate_defect_tables, verdict_degree_g, verdict_degree_gm1, BranchChoice,
    Convention, CurveData, Threshold,
};
use divforge::curves::{Curve, Divisor, Place};
use divforge::reference::{bundled_curve, sha256_hex};
use divforge::rrspaces::rr_report;
use divforge::semigroups::{gamma_plus_multi, gap_set_single, generators_in_box, member, pole_numbers};
use divforge::suites::{run_all, run_suite};
use divforge::tower::{finite_level_check, nonspecial_tower_divisor, tower_points};
use divforge::zeta::LPolynomial;
use divforge::{Error, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::path::Path;

/// What a command produced, before formatting.
pub struct Outcome {
    pub result: Value,
    pub csv: Option<String>,
    pub checks: Vec<(String, bool)>,
    /// Printed on stderr.
    pub summary: Option<String>,
    pub inputs: Vec<u8>,
}

impl Outcome {
    fn json(result: Value) -> Self {
        Outcome { result, csv: None, checks: Vec::new(), summary: None, inputs: Vec::new() }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, p)| *p)
    }

    pub fn digest(&self) -> String {
        sha256_hex(&self.inputs)
    }
}

pub fn default_format(cmd: &Command) -> Format {
    match cmd {
        Command::Tables => Format::Csv,
        _ => Format::Json,
    }
}

fn read(path: &Path, inputs: &mut Vec<u8>) -> Result<String> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::pre(format!("cannot read {}: {e}", path.display())))?;
    inputs.extend_from_slice(text.as_bytes());
    Ok(text)
}

/// The payload of a report written by this tool, or the value itself.
fn unwrap_report(v: Value) -> Value {
    match v {
        Value::Object(mut o) if o.contains_key("result") && o.contains_key("command") => o.remove("result").unwrap_or(Value::Null),
        other => other,
    }
}

fn parse_json(text: &str) -> Result<Value> {
    Ok(unwrap_report(serde_json::from_str(text)?))
}

fn load_curve(common: &Common, inputs: &mut Vec<u8>) -> Result<Curve> {
    let spec = common.curve.as_deref().ok_or_else(|| Error::pre("this command needs --curve"))?;
    let path = Path::new(spec);
    if path.exists() {
        let v = parse_json(&read(path, inputs)?)?;
        let desc = v.get("descriptor").cloned().unwrap_or(v);
        return Curve::from_json(&desc.to_string());
    }
    inputs.extend_from_slice(spec.as_bytes());
    let name = spec.strip_suffix(".json").unwrap_or(spec);
    let name = Path::new(name).file_name().and_then(|s| s.to_str()).unwrap_or(name);
    bundled_curve(name)
}

fn descriptor_json(c: &Curve) -> Result<Value> {
    let mut d: Value = serde_json::from_str(&c.descriptor().to_json())?;
    if let Value::Object(o) = &mut d {
        o.insert("name".into(), json!(c.name()));
    }
    Ok(d)
}

fn big(x: &BigInt) -> Value {
    x.to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| json!(x.to_string()))
}

fn parse_big(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| Error::Parse(format!("{n} is not an integer"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("'{s}' is not an integer"))),
        _ => Err(Error::Parse("expected an integer".into())),
    }
}

fn field_u64(v: &Value, key: &str) -> Result<u64> {
    v.get(key).and_then(Value::as_u64).ok_or_else(|| Error::Parse(format!("missing integer field '{key}'")))
}

pub fn parse_convention(s: &str) -> Result<Convention> {
    let mut conv = Convention::default();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::pre(format!("malformed convention '{part}'")))?;
        match (k, v) {
            ("branch", "plus") => conv.branches = BranchChoice::Plus,
            ("branch", "minus") => conv.branches = BranchChoice::Minus,
            ("branch", "both") => conv.branches = BranchChoice::Both,
            ("threshold", "standard") => conv.threshold = Threshold::Standard,
            ("threshold", "strict") => conv.threshold = Threshold::Strict,
            ("threshold", "nonstrict") => conv.threshold = Threshold::NonStrict,
            _ => return Err(Error::pre(format!("unknown convention setting '{part}'"))),
        }
    }
    Ok(conv)
}

pub fn execute(cmd: &Command, common: &Common) -> Result<Outcome> {
    let mut inputs = format!("{cmd:?}|{}", common.convention).into_bytes();
    let mut out = match cmd {
        Command::Zeta { levels } => zeta(common, *levels, &mut inputs)?,
        Command::Places { degree } => places(common, *degree, &mut inputs)?,
        Command::Criteria { zeta } => criteria(common, zeta.as_deref(), &mut inputs)?,
        Command::Tables => tables(common)?,
        Command::Construct { method, q, r, reduce, q_divisor, g_divisor } => {
            construct(common, *method, *q, *r, *reduce, q_divisor.as_deref(), g_divisor.as_deref(), &mut inputs)?
        }
        Command::Rrdim { divisor } => rrdim(common, divisor, &mut inputs)?,
        Command::Semigroup { m, r, alpha, q, places } => semigroup(*m, *r, alpha.as_deref(), *q, *places)?,
        Command::Tower { q, m, enumerate } => tower(*q, *m, *enumerate)?,
        Command::Verify { suite } => verify(suite.as_deref())?,
    };
    out.inputs = inputs;
    Ok(out)
}

fn zeta(common: &Common, levels: Option<u32>, inputs: &mut Vec<u8>) -> Result<Outcome> {
    let c = load_curve(common, inputs)?;
    let g = c.genus();
    let levels = levels.unwrap_or(g + 1).max(g).max(1);
    let counts = c.counts(levels)?;
    let l = LPolynomial::from_counts(c.q(), g, &counts)?;
    let b = c.place_counts(levels)?;
    let a = l.effective_counts(2 * g as usize + 2)?;
    let weil = l.weil_check();
    let p = c.field().p();
    let mut checks = vec![("functional equation".to_string(), weil.functional_equation), ("Weil bound".to_string(), weil.ok)];
    for (r, &n) in counts.iter().enumerate() {
        checks.push((format!("N_{} round trip", r + 1), l.point_count(r as u32 + 1) == BigInt::from(n)));
    }
    let mut csv = String::from("r,N_r,B_r\n");
    for (r, (n, b)) in counts.iter().zip(&b).enumerate() {
        csv.push_str(&format!("{},{n},{b}\n", r + 1));
    }
    let result = json!({
        "curve": c.name(),
        "q": c.q(),
        "p": p,
        "genus": g,
        "counts": counts,
        "place_counts": b,
        "l_coeffs": l.coeffs().iter().map(big).collect::<Vec<_>>(),
        "class_number": big(&l.class_number()),
        "effective_counts": a.iter().map(big).collect::<Vec<_>>(),
        "p_rank": l.p_rank(p),
        "ordinary": l.is_ordinary(p),
        "weil": {"ok": weil.ok, "max_deviation": weil.max_deviation},
    });
    Ok(Outcome { csv: Some(csv), checks, ..Outcome::json(result) })
}

fn places(common: &Common, degree: u32, inputs: &mut Vec<u8>) -> Result<Outcome> {
    let c = load_curve(common, inputs)?;
    let (count, listed) = c.places_of_degree(degree)?;
    let mut csv = String::from("place,degree\n");
    if let Some(ps) = &listed {
        for p in ps {
            csv.push_str(&format!("\"{p}\",{}\n", p.degree));
        }
    }
    let result = json!({"curve": c.name(), "degree": degree, "count": count, "places": listed});
    Ok(Outcome { csv: Some(csv), ..Outcome::json(result) })
}

fn curve_data_from_zeta(v: &Value) -> Result<CurveData> {
    let q = field_u64(v, "q")?;
    let g = field_u64(v, "genus")? as u32;
    let p = field_u64(v, "p")? as u32;
    let coeffs = v
        .get("l_coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing 'l_coeffs'".into()))?
        .iter()
        .map(parse_big)
        .collect::<Result<Vec<_>>>()?;
    CurveData::from_l(p, LPolynomial::new(q, g, coeffs)?)
}

fn criteria(common: &Common, zeta: Option<&Path>, inputs: &mut Vec<u8>) -> Result<Outcome> {
    let (name, d) = match zeta {
        Some(path) => {
            let v = parse_json(&read(path, inputs)?)?;
            let name = v.get("curve").and_then(Value::as_str).unwrap_or("").to_string();
            (name, curve_data_from_zeta(&v)?)
        }
        None => {
            let c = load_curve(common, inputs)?;
            (c.name(), CurveData::from_curve(&c)?)
        }
    };
    let cns = cns_sum(&d.l)?;
    let result = json!({
        "curve": name,
        "q": d.q,
        "genus": d.g,
        "b1": d.b1,
        "class_number": big(&d.l.class_number()),
        "cns": {"sum": big(&cns.sum), "a_g_minus_1": big(&cns.a_gm1), "value": cns.value},
        "degree_g": verdict_degree_g(&d)?,
        "degree_g_minus_1": verdict_degree_gm1(&d)?,
        "degree_gamma_minus_1": gamma_minus_1_dimension_zero(&d.l, d.p),
    });
    Ok(Outcome::json(result))
}

fn tables(common: &Common) -> Result<Outcome> {
    let report = regenerate_defect_tables(parse_convention(&common.convention)?)?;
    Ok(Outcome {
        csv: Some(report.to_csv()),
        summary: Some(report.mismatch_summary()),
        ..Outcome::json(serde_json::to_value(&report)?)
    })
}

fn read_divisor(c: &Curve, path: &Path, inputs: &mut Vec<u8>) -> Result<Divisor> {
    let v = parse_json(&read(path, inputs)?)?;
    let d = match v.get("divisor") {
        Some(inner) if !v.get("coeffs").is_some() => inner.clone(),
        _ => v,
    };
    Divisor::from_json(c.fingerprint(), &d)
}

fn first_reduction_place(c: &Curve, res: &ConstructionResult) -> Result<Place> {
    let mut cands: Vec<Place> = c.infinity().into_iter().filter(|p| p.degree == 1).collect();
    cands.extend(c.rational_places()?);
    cands
        .into_iter()
        .find(|p| res.divisor.coeff(p) == BigInt::from(0))
        .ok_or_else(|| Error::pre("no rational place outside the support"))
}

#[allow(clippy::too_many_arguments)]
fn construct(
    common: &Common,
    method: Method,
    q: Option<u64>,
    r: u32,
    reduce: bool,
    q_div: Option<&Path>,
    g_div: Option<&Path>,
    inputs: &mut Vec<u8>,
) -> Result<Outcome> {
    let need_q = || q.ok_or_else(|| Error::pre("this method needs --q"));
    let (c, res) = match method {
        Method::Kummer => {
            let c = load_curve(common, inputs)?;
            let res = kummer_g(&c)?;
            (c, res)
        }
        Method::Greedy => {
            let c = load_curve(common, inputs)?;
            let res = greedy_degree_g(&c)?;
            (c, res)
        }
        Method::Hyperelliptic => {
            let c = hyperelliptic_curve(need_q()?)?;
            let mut found = None;
            for p in c.rational_places()? {
                match hyperelliptic_gp(&c, &p) {
                    Ok(res) => {
                        found = Some(res);
                        break;
                    }
                    Err(Error::Precondition(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
            let res = found.ok_or_else(|| Error::pre("no rational place off the fixed locus"))?;
            (c, res)
        }
        Method::NormTrace => norm_trace_g(need_q()?, r)?,
        Method::Exdecons => {
            let c = load_curve(common, inputs)?;
            let qd = match q_div {
                Some(p) => read_divisor(&c, p, inputs)?,
                None => c.divisor(),
            };
            let gd = match g_div {
                Some(p) => read_divisor(&c, p, inputs)?,
                None => {
                    let inf = c.infinity().ok_or_else(|| Error::pre("curve has no distinguished place at infinity"))?;
                    c.divisor().plus(&inf, 2)
                }
            };
            let ex = exdecons1(&c, &qd, &gd)?;
            let mut result = ex.to_json();
            if let Value::Object(o) = &mut result {
                o.insert("curve".into(), json!(c.name()));
                o.insert("descriptor".into(), descriptor_json(&c)?);
                o.insert("method".into(), json!("exdecons"));
            }
            let mut checks = vec![("D - Q non-special".to_string(), ex.d_minus_q_nonspecial)];
            if let Some(ok) = ex.two_d_minus_g_nonspecial {
                checks.push(("2D - G non-special".to_string(), ok));
            }
            return Ok(Outcome { checks, ..Outcome::json(result) });
        }
    };
    let mut result = res.to_json();
    let reduced = if reduce {
        let p = first_reduction_place(&c, &res)?;
        Some(reduce_to_gm1(&c, &res, &p)?)
    } else {
        None
    };
    if let Value::Object(o) = &mut result {
        o.insert("curve".into(), json!(c.name()));
        o.insert("genus".into(), json!(c.genus()));
        o.insert("descriptor".into(), descriptor_json(&c)?);
        o.insert("method".into(), json!(format!("{method:?}").to_lowercase()));
        if let Some(red) = &reduced {
            o.insert("reduced".into(), red.to_json());
        }
    }
    Ok(Outcome::json(result))
}

fn rrdim(common: &Common, path: &Path, inputs: &mut Vec<u8>) -> Result<Outcome> {
    let c = load_curve(common, inputs)?;
    let d = read_divisor(&c, path, inputs)?;
    let rep = rr_report(&c, &d)?;
    let result = json!({
        "curve": c.name(),
        "divisor": d.to_json(),
        "dim": rep.dim,
        "degree": rep.degree,
        "index_of_speciality": rep.index_of_speciality,
        "nonspecial": rep.nonspecial,
    });
    Ok(Outcome::json(result))
}

fn semigroup(m: u64, r: u64, alpha: Option<&[u64]>, q: Option<u64>, l: Option<usize>) -> Result<Outcome> {
    let gaps = gap_set_single(m, r)?;
    let g = gaps.len() as u64;
    let mut result = json!({
        "m": m,
        "r": r,
        "genus": g,
        "gaps": gaps,
        "pole_numbers": pole_numbers(m, r, 2 * g)?,
    });
    if let Some(l) = l {
        result["generators"] = json!(gamma_plus_multi(m, r, l)?.vectors);
    }
    if let Some(alpha) = alpha {
        let q = q.ok_or_else(|| Error::pre("membership needs --q"))?;
        result["alpha"] = json!(alpha);
        result["generators_below"] = json!(generators_in_box(m, r, alpha)?);
        result["member"] = json!(member(m, r, alpha, q)?);
    }
    Ok(Outcome::json(result))
}

fn tower(q: u64, m: u32, enumerate: bool) -> Result<Outcome> {
    let td = nonspecial_tower_divisor(q, m)?;
    let mut result = json!({"divisor": td});
    let mut checks = Vec::new();
    if enumerate {
        let pts = tower_points(q, m, 1)?;
        let rep = finite_level_check(q, m)?;
        checks.push(("L-polynomial round trip".to_string(), rep.roundtrip_ok));
        result["points"] = serde_json::to_value(&pts)?;
        result["finite_level"] = serde_json::to_value(&rep)?;
    }
    Ok(Outcome { checks, ..Outcome::json(result) })
}

fn verify(suite: Option<&str>) -> Result<Outcome> {
    let report = match suite {
        Some(s) => run_suite(s)?,
        None => run_all(),
    };
    let mut csv = String::from("suite,name,pass,detail\n");
    for c in &report.checks {
        csv.push_str(&format!("{},\"{}\",{},\"{}\"\n", c.suite, c.name.replace('"', "'"), c.pass, c.detail.replace('"', "'")));
    }
    let failures: Vec<String> = report.failures().iter().map(|c| format!("FAIL {} | {} | {}", c.suite, c.name, c.detail)).collect();
    let summary = format!(
        "{} checks, {} failed{}{}",
        report.checks.len(),
        failures.len(),
        if failures.is_empty() { "" } else { "\n" },
        failures.join("\n")
    );
    let checks = report.checks.iter().map(|c| (format!("{}: {}", c.suite, c.name), c.pass)).collect();
    Ok(Outcome { csv: Some(csv), checks, summary: Some(summary), ..Outcome::json(report.to_json()) })
}
