//! Riemann-Roch dimensions on Kummer models x^m = u prod (y - a_i), and on
//! Artin-Schreier models L(y) = c x^k that rewrite to that form.
//!
//! L(D) is computed by clearing the affine poles of D with a polynomial h(y),
//! which puts h L(D) inside the coordinate ring with bounded pole orders at
//! infinity, and cutting that space down by vanishing conditions read off
//! local power series expansions. All linear algebra is exact over a constant
//! field extension in which every relevant place splits.

use crate::curves::{
    canonical_orbit, kummer_inf_name, Curve, Divisor, ModelData, Place, PlaceKind,
};
use crate::error::{Error, Result};
use crate::galois::{roots_in_field, Embedding, FFElem, FFPoly, FieldCtx};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// Largest constant field extension used for splitting, in elements.
pub const SPLIT_CAP: u64 = 1 << 20;
/// Largest precision tried by `valuation` before giving up.
pub const PRECISION_CAP: usize = 4096;

/// The model data the oracle works with.
#[derive(Clone, Debug)]
pub struct RrModel {
    pub m: u32,
    pub r: u32,
    pub d: u32,
    pub u: FFElem,
    pub roots: Vec<FFElem>,
}

impl RrModel {
    pub fn of(c: &Curve) -> Result<RrModel> {
        let base = c.field();
        let p = base.p();
        let (m, u, roots) = match c.model() {
            ModelData::Kummer { m, roots } => (*m, base.one(), roots.clone()),
            ModelData::ArtinSchreier {
                lhs,
                num,
                den,
                kernel,
            } => {
                if den.degree() != Some(0) {
                    return Err(Error::Unsupported(
                        "Riemann-Roch needs a polynomial right hand side".into(),
                    ));
                }
                let k = num.degree().unwrap_or(0);
                if k < 2 || num.coeffs()[..k].iter().any(|c| !c.is_zero()) {
                    return Err(Error::Unsupported(
                        "Riemann-Roch on Artin-Schreier models needs the form L(y) = c x^k".into(),
                    ));
                }
                let c0 = base.div(num.lead().unwrap(), den.lead().unwrap())?;
                let u = base.div(*lhs.last().unwrap(), c0)?;
                (k as u32, u, kernel.clone())
            }
            _ => {
                return Err(Error::Unsupported(
                    "Riemann-Roch is available on Kummer models only".into(),
                ))
            }
        };
        if m % p == 0 {
            return Err(Error::Unsupported(
                "exponent divisible by the characteristic".into(),
            ));
        }
        let r = roots.len() as u32;
        let d = m.gcd(&r);
        if d != 1 && (d != r || r % p == 0) {
            return Err(Error::Unsupported(format!(
                "gcd(m, r) = {d}: only coprime models and r | m are supported"
            )));
        }
        if d > 1 && !u.is_zero() && u != base.one() {
            return Err(Error::Unsupported(
                "r | m needs a monic right hand side".into(),
            ));
        }
        Ok(RrModel { m, r, d, u, roots })
    }

    /// Pole order at each place at infinity of y^i x^j.
    pub fn pole_order(&self, i: u64, j: u64) -> u64 {
        (self.m as u64 * i + self.r as u64 * j) / self.d as u64
    }
}

/// The model with coefficients moved into F_{q^E}.
struct KModel {
    k: FieldCtx,
    m: u32,
    r: u32,
    d: u32,
    e: u32,
    u: FFElem,
    roots: Vec<FFElem>,
    /// u prod (y - a_i).
    f: FFPoly,
}

impl KModel {
    fn new(model: &RrModel, emb: &Embedding) -> KModel {
        let k = emb.big.clone();
        let u = emb.embed(model.u);
        let roots: Vec<FFElem> = model.roots.iter().map(|&a| emb.embed(a)).collect();
        let mut f = FFPoly::constant(u);
        for &a in &roots {
            f = crate::galois::poly_mul(&k, &f, &FFPoly::linear(&k, a));
        }
        KModel {
            k,
            m: model.m,
            r: model.r,
            d: model.d,
            e: model.m / model.d,
            u,
            roots,
            f,
        }
    }

    fn on_curve(&self, x: FFElem, y: FFElem) -> bool {
        self.k.pow(x, self.m as u64) == crate::galois::poly_eval(&self.k, &self.f, y)
    }
}

/// A place over F_{q^E}: a place at infinity labelled by the value of
/// x^{m/d}/y^{r/d} there, or an affine point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum KPlace {
    Inf(FFElem),
    Aff(FFElem, FFElem),
}

fn embedding_cache() -> &'static Mutex<HashMap<(u32, usize, u32, u32), Arc<Embedding>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize, u32, u32), Arc<Embedding>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Embedding F_{q^k} -> F_{q^big} compatible with the level embeddings of the
/// base field.
fn level_embedding(c: &Curve, k: u32, big: u32) -> Result<Arc<Embedding>> {
    let key = (c.field().p(), c.field().n(), k, big);
    if let Some(e) = embedding_cache().lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let lo = c.level(k)?;
    let hi = c.level(big)?;
    let e = Arc::new(Embedding::compatible(&lo.emb, &hi.emb)?);
    embedding_cache().lock().unwrap().insert(key, e.clone());
    Ok(e)
}

fn mult_order_mod(q: u64, m: u64) -> u32 {
    if m <= 1 {
        return 1;
    }
    let mut acc = q % m;
    let mut e = 1;
    while acc != 1 {
        acc = acc * (q % m) % m;
        e += 1;
    }
    e
}

/// Frobenius orbit of a K-place under a -> a^q, `deg` elements.
fn orbit(kf: &FieldCtx, q: u64, p: KPlace, deg: u32) -> Vec<KPlace> {
    let mut out = Vec::with_capacity(deg as usize);
    let mut cur = p;
    for _ in 0..deg {
        out.push(cur);
        cur = match cur {
            KPlace::Inf(z) => KPlace::Inf(kf.pow(z, q)),
            KPlace::Aff(x, y) => KPlace::Aff(kf.pow(x, q), kf.pow(y, q)),
        };
    }
    out
}

/// Representative of a place over F_{q^deg} as a K-place over that field.
fn resolve_place(
    c: &Curve,
    model: &RrModel,
    place: &Place,
) -> Result<(KPlace, Arc<crate::curves::Level>)> {
    let k = place.degree;
    let level = c.level(k)?;
    let lf = &level.field.clone();
    match &place.kind {
        PlaceKind::Named(name) => {
            if model.d == 1 {
                if name == "Pinf" && k == 1 {
                    return Ok((KPlace::Inf(lf.one()), level));
                }
            } else {
                let one = lf.one();
                for z in lf.elements() {
                    if !z.is_zero()
                        && lf.pow(z, model.d as u64) == one
                        && canonical_orbit(lf, c.q(), &[z], k).is_some()
                        && kummer_inf_name(lf, model.d, z) == *name
                    {
                        return Ok((KPlace::Inf(z), level));
                    }
                }
            }
            Err(Error::Unsupported(format!(
                "place {place} is not supported by the Riemann-Roch oracle"
            )))
        }
        PlaceKind::Point(coords) => {
            if coords.len() != 2 || coords.iter().any(|&i| i >= lf.order()) {
                return Err(Error::pre(format!("bad coordinates for place {place}")));
            }
            let (x, y) = (lf.from_index(coords[0]), lf.from_index(coords[1]));
            let km = KModel::new(model, &level.emb);
            if !km.on_curve(x, y) {
                return Err(Error::pre(format!("{place} is not on the curve")));
            }
            if canonical_orbit(lf, c.q(), &[x, y], k).is_none() {
                return Err(Error::pre(format!(
                    "{place} is not a canonical degree {k} representative"
                )));
            }
            Ok((KPlace::Aff(x, y), level))
        }
    }
}

// ---------------------------------------------------------------------------
// truncated power series over K

type Series = Vec<FFElem>;

fn s_zero(k: &FieldCtx, n: usize) -> Series {
    vec![k.zero(); n]
}

fn s_mul(k: &FieldCtx, a: &[FFElem], b: &[FFElem], n: usize) -> Series {
    let mut out = s_zero(k, n);
    for (i, &ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(n - i) {
            if !bj.is_zero() {
                out[i + j] = k.add(out[i + j], k.mul(ai, bj));
            }
        }
    }
    out
}

fn s_add(k: &FieldCtx, a: &[FFElem], b: &[FFElem]) -> Series {
    a.iter().zip(b).map(|(&x, &y)| k.add(x, y)).collect()
}

fn s_sub(k: &FieldCtx, a: &[FFElem], b: &[FFElem]) -> Series {
    a.iter().zip(b).map(|(&x, &y)| k.sub(x, y)).collect()
}

fn s_inv(k: &FieldCtx, a: &[FFElem], n: usize) -> Result<Series> {
    let b0 = k
        .inv(a[0])
        .map_err(|_| Error::inv("series inverse of a non-unit"))?;
    let mut b = s_zero(k, n);
    b[0] = b0;
    for i in 1..n {
        let mut acc = k.zero();
        for j in 1..=i.min(a.len() - 1) {
            acc = k.add(acc, k.mul(a[j], b[i - j]));
        }
        b[i] = k.neg(k.mul(b0, acc));
    }
    Ok(b)
}

fn s_pow(k: &FieldCtx, a: &[FFElem], e: u32, n: usize) -> Series {
    let mut out = s_zero(k, n);
    out[0] = k.one();
    for _ in 0..e {
        out = s_mul(k, &out, a, n);
    }
    out
}

/// f(s) for a polynomial f and a series s.
fn s_compose(k: &FieldCtx, f: &FFPoly, s: &[FFElem], n: usize) -> Series {
    let mut acc = s_zero(k, n);
    for &c in f.coeffs().iter().rev() {
        acc = s_mul(k, &acc, s, n);
        acc[0] = k.add(acc[0], c);
    }
    acc
}

fn newton_steps(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()) as usize + 2
}

/// Local data at a K-place: (x, y) as series in a uniformizer t, or at
/// infinity (d > 1) the series W with y = t^{-e} W, t = 1/x.
struct Local {
    x: Series,
    y: Series,
}

fn local_expansion(km: &KModel, p: KPlace, n: usize) -> Result<Local> {
    let k = &km.k;
    let n = n.max(1);
    let check = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(Error::inv("local expansion failed to converge"))
        }
    };
    match p {
        KPlace::Aff(x0, y0) if !x0.is_zero() => {
            // t = y - y0, x^m = f(y0 + t)
            let mut ys = s_zero(k, n);
            ys[0] = y0;
            if n > 1 {
                ys[1] = k.one();
            }
            let fy = s_compose(k, &km.f, &ys, n);
            let mut x = s_zero(k, n);
            x[0] = x0;
            let mk = k.from_int(km.m as i64);
            for _ in 0..newton_steps(n) {
                let xm1 = s_pow(k, &x, km.m - 1, n);
                let num = s_sub(k, &s_mul(k, &xm1, &x, n), &fy);
                let den: Series = xm1.iter().map(|&c| k.mul(c, mk)).collect();
                x = s_sub(k, &x, &s_mul(k, &num, &s_inv(k, &den, n)?, n));
            }
            check(s_pow(k, &x, km.m, n) == fy)?;
            Ok(Local { x, y: ys })
        }
        KPlace::Aff(_, a) => {
            // t = x, f(y) = t^m
            let mut xs = s_zero(k, n);
            if n > 1 {
                xs[1] = k.one();
            }
            let tm = s_pow(k, &xs, km.m, n);
            let df = crate::galois::poly_deriv(k, &km.f);
            let mut y = s_zero(k, n);
            y[0] = a;
            for _ in 0..newton_steps(n) {
                let num = s_sub(k, &s_compose(k, &km.f, &y, n), &tm);
                let den = s_compose(k, &df, &y, n);
                y = s_sub(k, &y, &s_mul(k, &num, &s_inv(k, &den, n)?, n));
            }
            check(s_compose(k, &km.f, &y, n) == tm)?;
            Ok(Local { x: xs, y })
        }
        KPlace::Inf(zeta) => {
            // t = 1/x, y = t^{-e} W, u prod (W - a_i t^e) = 1, W(0) = 1/zeta
            let mut s = s_zero(k, n);
            if (km.e as usize) < n {
                s[km.e as usize] = k.one();
            }
            let factors = |w: &Series| -> Vec<Series> {
                km.roots
                    .iter()
                    .map(|&a| s_sub(k, w, &s.iter().map(|&c| k.mul(c, a)).collect::<Series>()))
                    .collect()
            };
            let mut w = s_zero(k, n);
            w[0] = k.inv(zeta)?;
            let mut unit = s_zero(k, n);
            unit[0] = k.one();
            let prod = |fs: &[Series], skip: Option<usize>| -> Series {
                let mut acc = unit.clone();
                for (i, f) in fs.iter().enumerate() {
                    if Some(i) != skip {
                        acc = s_mul(k, &acc, f, n);
                    }
                }
                acc.iter().map(|&c| k.mul(c, km.u)).collect()
            };
            for _ in 0..newton_steps(n) {
                let fs = factors(&w);
                let h = s_sub(k, &prod(&fs, None), &unit);
                let mut dh = s_zero(k, n);
                for i in 0..fs.len() {
                    dh = s_add(k, &dh, &prod(&fs, Some(i)));
                }
                w = s_sub(k, &w, &s_mul(k, &h, &s_inv(k, &dh, n)?, n));
            }
            check(prod(&factors(&w), None) == unit)?;
            Ok(Local {
                x: s_zero(k, n),
                y: w,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// dimension

fn rank(k: &FieldCtx, mut rows: Vec<Vec<FFElem>>, ncols: usize) -> usize {
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = k.inv(rows[r][col]).expect("nonzero pivot");
        let pivot_row: Vec<FFElem> = rows[r].iter().map(|&v| k.mul(v, inv)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[col];
            if f.is_zero() {
                continue;
            }
            for c in col..ncols {
                row[c] = k.sub(row[c], k.mul(f, pivot_row[c]));
            }
        }
        rows[r] = pivot_row;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// dim L(D).
pub fn rr_dim(c: &Curve, d: &Divisor) -> Result<u64> {
    if let Some(fp) = d.curve() {
        if fp != c.fingerprint() {
            return Err(Error::pre("divisor belongs to a different curve"));
        }
    }
    let deg = d.degree();
    if deg.is_negative() {
        return Ok(0);
    }
    let g = c.genus() as i64;
    let deg = deg
        .to_i64()
        .ok_or_else(|| Error::pre("degree out of range"))?;
    if deg > 4 * g + 8 {
        return Err(Error::pre(format!(
            "deg D = {deg} exceeds 4g+8 = {}",
            4 * g + 8
        )));
    }
    if d.support().len() > 24 {
        return Err(Error::pre("support larger than 24 places"));
    }
    let model = RrModel::of(c)?;
    let q = c.q();

    // coefficients and representatives
    let mut reps = Vec::new();
    for (p, n) in d.terms() {
        let n = n
            .to_i64()
            .ok_or_else(|| Error::pre("coefficient out of range"))?;
        let (kp, _) = resolve_place(c, &model, p)?;
        reps.push((p.degree, kp, n));
    }

    // splitting degree
    let mut e_deg: u32 = 1;
    let mut need_fibers = false;
    for (k, kp, n) in &reps {
        e_deg = e_deg.lcm(k);
        if let KPlace::Aff(x0, _) = kp {
            if *n > 0 && !x0.is_zero() {
                need_fibers = true;
            }
        }
    }
    if need_fibers {
        e_deg = e_deg.lcm(&mult_order_mod(q, model.m as u64));
    }
    if model.d > 1 {
        e_deg = e_deg.lcm(&mult_order_mod(q, model.d as u64));
    }
    if (q as u128).pow(e_deg) > SPLIT_CAP as u128 {
        return Err(Error::Budget(format!(
            "splitting field F_{{{q}^{e_deg}}} exceeds 2^20 elements"
        )));
    }
    let level = c.level(e_deg)?;
    let kf = level.field.clone();
    let km = KModel::new(&model, &level.emb);

    // D over K
    let mut dk: BTreeMap<KPlace, i64> = BTreeMap::new();
    for (k, kp, n) in &reps {
        let emb = level_embedding(c, *k, e_deg)?;
        let lifted = match *kp {
            KPlace::Inf(z) => KPlace::Inf(emb.embed(z)),
            KPlace::Aff(x, y) => KPlace::Aff(emb.embed(x), emb.embed(y)),
        };
        for o in orbit(&kf, q, lifted, *k) {
            *dk.entry(o).or_insert(0) += n;
        }
    }

    // h = prod (y - b)^{e_b}
    let mut h: BTreeMap<FFElem, i64> = BTreeMap::new();
    for (&kp, &n) in &dk {
        if let KPlace::Aff(x0, y0) = kp {
            if n > 0 {
                let v = if x0.is_zero() { km.m as i64 } else { 1 };
                let need = (n + v - 1) / v;
                let e = h.entry(y0).or_insert(0);
                *e = (*e).max(need);
            }
        }
    }
    let deg_h: i64 = h.values().sum();

    // places at infinity over K
    let inf_places: Vec<FFElem> = if model.d == 1 {
        vec![kf.one()]
    } else {
        kf.elements()
            .filter(|&z| !z.is_zero() && kf.pow(z, model.d as u64) == km.u)
            .collect()
    };
    let e = km.e as i64;
    let bounds: Vec<(FFElem, i64)> = inf_places
        .iter()
        .map(|&z| (z, dk.get(&KPlace::Inf(z)).copied().unwrap_or(0) + e * deg_h))
        .collect();
    let big_b = bounds.iter().map(|b| b.1).max().unwrap_or(0);
    if big_b < 0 {
        return Ok(0);
    }

    // monomial box
    let mut monos: Vec<(u32, u32)> = Vec::new();
    for j in 0..km.m {
        let mut i = 0u32;
        while (km.m as i64 * i as i64 + km.r as i64 * j as i64) <= big_b * km.d as i64 {
            monos.push((i, j));
            i += 1;
        }
    }
    let ncols = monos.len();
    if ncols == 0 {
        return Ok(0);
    }
    let max_i = monos.iter().map(|m| m.0).max().unwrap_or(0);
    let max_j = monos.iter().map(|m| m.1).max().unwrap_or(0);

    // affine conditions: zeros of h and negative support
    let mut conds: BTreeMap<KPlace, i64> = BTreeMap::new();
    for (&y0, &eb) in &h {
        let fy = crate::galois::poly_eval(&kf, &km.f, y0);
        if fy.is_zero() {
            conds.insert(KPlace::Aff(kf.zero(), y0), eb * km.m as i64);
        } else {
            let xm = FFPoly::new({
                let mut v = vec![kf.neg(fy)];
                v.extend(std::iter::repeat(kf.zero()).take(km.m as usize - 1));
                v.push(kf.one());
                v
            });
            let xs = roots_in_field(&kf, &xm);
            if xs.len() != km.m as usize {
                return Err(Error::inv("fiber did not split in the chosen extension"));
            }
            for x0 in xs {
                conds.insert(KPlace::Aff(x0, y0), eb);
            }
        }
    }
    for (&kp, &n) in &dk {
        if let KPlace::Aff(..) = kp {
            *conds.entry(kp).or_insert(0) -= n;
        }
    }

    let mut rows: Vec<Vec<FFElem>> = Vec::new();
    for (&kp, &t) in &conds {
        if t <= 0 {
            continue;
        }
        let n = t as usize;
        let loc = local_expansion(&km, kp, n + 2)?;
        let ypow = powers(&kf, &loc.y, max_i, n);
        let xpow = powers(&kf, &loc.x, max_j, n);
        let cols: Vec<Series> = monos
            .iter()
            .map(|&(i, j)| s_mul(&kf, &ypow[i as usize], &xpow[j as usize], n))
            .collect();
        for s in 0..n {
            rows.push(cols.iter().map(|c| c[s]).collect());
        }
    }
    // infinity conditions where the bound is below the box
    for &(z, bq) in &bounds {
        if bq >= big_b {
            continue;
        }
        let n = (big_b - bq) as usize;
        let loc = local_expansion(&km, KPlace::Inf(z), n + 2)?;
        let wpow = powers(&kf, &loc.y, max_i, n);
        // coefficient of t^{-B + s} in t^{-(e i + j)} W^i
        for s in 0..n as i64 {
            rows.push(
                monos
                    .iter()
                    .map(|&(i, j)| {
                        let shift = big_b - (e * i as i64 + j as i64);
                        let idx = s - shift;
                        if idx < 0 {
                            kf.zero()
                        } else {
                            wpow[i as usize][idx as usize]
                        }
                    })
                    .collect(),
            );
        }
    }
    let rk = rank(&kf, rows, ncols);
    Ok((ncols - rk) as u64)
}

fn powers(k: &FieldCtx, s: &[FFElem], up_to: u32, n: usize) -> Vec<Series> {
    let mut out = Vec::with_capacity(up_to as usize + 1);
    let mut cur = s_zero(k, n);
    cur[0] = k.one();
    let s: Series = s
        .iter()
        .take(n)
        .copied()
        .chain(std::iter::repeat(k.zero()))
        .take(n)
        .collect();
    for _ in 0..=up_to {
        out.push(cur.clone());
        cur = s_mul(k, &cur, &s, n);
    }
    out
}

/// i(D) = dim D - deg D - 1 + g.
pub fn index_of_speciality(c: &Curve, d: &Divisor) -> Result<i64> {
    let dim = rr_dim(c, d)? as i64;
    Ok(dim - d.degree_i64() - 1 + c.genus() as i64)
}

pub fn is_nonspecial(c: &Curve, d: &Divisor) -> Result<bool> {
    Ok(index_of_speciality(c, d)? == 0)
}

/// dim D = max(0, deg D + 1 - g).
pub fn is_ordinary_divisor(c: &Curve, d: &Divisor) -> Result<bool> {
    let dim = rr_dim(c, d)? as i64;
    Ok(dim == (d.degree_i64() + 1 - c.genus() as i64).max(0))
}

/// D1 ~ D2.
pub fn equivalent(c: &Curve, d1: &Divisor, d2: &Divisor) -> Result<bool> {
    if d1.degree() != d2.degree() {
        return Err(Error::pre("equivalence needs equal degrees"));
    }
    Ok(rr_dim(c, &d1.try_sub(d2)?)? == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GreedyRule {
    KeepDim,
    RaiseDim,
}

/// First candidate P in canonical order with dim(D+P) = dim D (KeepDim) or
/// dim D + 1 (RaiseDim).
pub fn greedy_support_extension(
    c: &Curve,
    d: &Divisor,
    candidates: &[Place],
    rule: GreedyRule,
) -> Result<Option<Place>> {
    let base = rr_dim(c, d)?;
    let mut cands = candidates.to_vec();
    cands.sort();
    for p in cands {
        let dim = rr_dim(c, &d.plus(&p, 1))?;
        let ok = match rule {
            GreedyRule::KeepDim => dim == base,
            GreedyRule::RaiseDim => dim == base + 1,
        };
        if ok {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RrReport {
    pub dim: u64,
    pub degree: i64,
    pub index_of_speciality: i64,
    pub nonspecial: bool,
}

pub fn rr_report(c: &Curve, d: &Divisor) -> Result<RrReport> {
    let dim = rr_dim(c, d)?;
    let degree = d.degree_i64();
    let i = dim as i64 - degree - 1 + c.genus() as i64;
    Ok(RrReport {
        dim,
        degree,
        index_of_speciality: i,
        nonspecial: i == 0,
    })
}

/// sum_j g_j(y) x^j with g_j over the base field, reduced modulo the curve
/// equation (j < m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionRep {
    pub terms: Vec<FFPoly>,
}

impl FunctionRep {
    /// From monomials c y^i x^j.
    pub fn from_monomials(c: &Curve, monos: &[(u32, u32, FFElem)]) -> Result<FunctionRep> {
        let model = RrModel::of(c)?;
        let f = c.field();
        let mut rhs = FFPoly::constant(model.u);
        for &a in &model.roots {
            rhs = crate::galois::poly_mul(f, &rhs, &FFPoly::linear(f, a));
        }
        let mut terms = vec![FFPoly::zero(); model.m as usize];
        for &(i, j, cf) in monos {
            let (qj, rj) = (j / model.m, j % model.m);
            let mut t = crate::galois::poly_scale(f, &FFPoly::monomial(f, i as usize), cf);
            for _ in 0..qj {
                t = crate::galois::poly_mul(f, &t, &rhs);
            }
            terms[rj as usize] = crate::galois::poly_add(f, &terms[rj as usize], &t);
        }
        Ok(FunctionRep { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero())
    }
}

/// v_P(f).
pub fn valuation(c: &Curve, f: &FunctionRep, place: &Place) -> Result<i64> {
    valuation_from(c, f, place, 8)
}

/// v_P(f), starting the expansion at the given precision.
pub fn valuation_from(c: &Curve, f: &FunctionRep, place: &Place, start: usize) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::pre("valuation of the zero function"));
    }
    let model = RrModel::of(c)?;
    if f.terms.len() != model.m as usize {
        return Err(Error::pre("function is not reduced for this model"));
    }
    let (kp, level) = resolve_place(c, &model, place)?;
    if let (KPlace::Inf(_), 1) = (kp, model.d) {
        let top = f
            .terms
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(j, g)| model.m as i64 * g.degree().unwrap() as i64 + model.r as i64 * j as i64)
            .max()
            .unwrap();
        return Ok(-top);
    }
    let km = KModel::new(&model, &level.emb);
    let kf = &km.k;
    let terms: Vec<FFPoly> = f
        .terms
        .iter()
        .map(|g| FFPoly::new(g.coeffs().iter().map(|&a| level.emb.embed(a)).collect()))
        .collect();
    let mut n = start.max(1);
    while n <= PRECISION_CAP {
        let loc = local_expansion(&km, kp, n + 2)?;
        match kp {
            KPlace::Aff(..) => {
                let xpow = powers(kf, &loc.x, model.m - 1, n);
                let mut acc = s_zero(kf, n);
                for (j, g) in terms.iter().enumerate() {
                    let gy = s_compose(kf, g, &loc.y[..n], n);
                    acc = s_add(kf, &acc, &s_mul(kf, &gy, &xpow[j], n));
                }
                if let Some(v) = acc.iter().position(|a| !a.is_zero()) {
                    return Ok(v as i64);
                }
            }
            KPlace::Inf(_) => {
                // y^i x^j = t^{-(e i + j)} W^i; shift everything by the top order
                let e = km.e as i64;
                let top = terms
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| !g.is_zero())
                    .map(|(j, g)| e * g.degree().unwrap() as i64 + j as i64)
                    .max()
                    .unwrap();
                let max_i = terms.iter().filter_map(|g| g.degree()).max().unwrap_or(0) as u32;
                let wpow = powers(kf, &loc.y, max_i, n);
                let mut acc = s_zero(kf, n);
                for (j, g) in terms.iter().enumerate() {
                    for (i, &cf) in g.coeffs().iter().enumerate() {
                        if cf.is_zero() {
                            continue;
                        }
                        let shift = (top - (e * i as i64 + j as i64)) as usize;
                        for s in 0..n.saturating_sub(shift) {
                            acc[s + shift] = kf.add(acc[s + shift], kf.mul(cf, wpow[i][s]));
                        }
                    }
                }
                if let Some(v) = acc.iter().position(|a| !a.is_zero()) {
                    return Ok(v as i64 - top);
                }
            }
        }
        n *= 2;
    }
    Err(Error::Budget("valuation precision exhausted".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(s: &str) -> Curve {
        Curve::from_json(s).unwrap()
    }

    fn herm2() -> Curve {
        curve(r#"{"q":{"p":2,"n":2},"model":{"kummer":{"m":3,"roots":[0,1]}}}"#)
    }

    fn herm3() -> Curve {
        curve(r#"{"q":{"p":3,"n":2},"model":{"kummer":{"m":4,"roots":[0,3,6]}}}"#)
    }

    #[test]
    fn multiples_of_infinity() {
        let c = herm2();
        let inf = Place::infinity();
        let dims: Vec<u64> = (0..6)
            .map(|n| rr_dim(&c, &c.divisor_from([(inf.clone(), n)])).unwrap())
            .collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 4, 5]);
        let c = herm3();
        let dims: Vec<u64> = (0..8)
            .map(|n| rr_dim(&c, &c.divisor_from([(inf.clone(), n)])).unwrap())
            .collect();
        // semigroup <3,4>: gaps 1, 2, 5
        assert_eq!(dims, vec![1, 1, 1, 2, 3, 3, 4, 5]);
    }

    #[test]
    fn hermitian_nonspecial_degree_g() {
        let c = herm3();
        let r = c.ramified_places();
        let d = c.divisor_from([(r[0].clone(), 1), (r[1].clone(), 2)]);
        assert_eq!(rr_dim(&c, &d).unwrap(), 1);
        assert!(is_nonspecial(&c, &d).unwrap());
        let k = c.divisor_from([(Place::infinity(), 4)]);
        assert_eq!(rr_dim(&c, &k).unwrap(), 3);
        assert!(!is_nonspecial(&c, &k).unwrap());
    }

    #[test]
    fn affine_points_and_equivalence() {
        let c = herm2();
        let pts: Vec<Place> = c
            .rational_places()
            .unwrap()
            .into_iter()
            .filter(|p| p.coords().is_some())
            .collect();
        let (p, q) = (pts[0].clone(), pts[1].clone());
        let dp = c.divisor_from([(p.clone(), 1)]);
        let dq = c.divisor_from([(q.clone(), 1)]);
        assert!(!equivalent(&c, &dp, &dq).unwrap());
        assert!(equivalent(&c, &dp, &dp).unwrap());
        // P - Pinf is not principal on an elliptic curve
        assert_eq!(
            rr_dim(
                &c,
                &c.divisor_from([(p.clone(), 1), (Place::infinity(), -1)])
            )
            .unwrap(),
            0
        );
        // dim(P + Q) = 2 = deg on genus 1
        assert_eq!(rr_dim(&c, &c.divisor_from([(p, 1), (q, 1)])).unwrap(), 2);
    }

    #[test]
    fn valuations() {
        let c = herm3();
        let f = c.field();
        let x = FunctionRep::from_monomials(&c, &[(0, 1, f.one())]).unwrap();
        assert_eq!(valuation(&c, &x, &Place::infinity()).unwrap(), -3);
        let r = c.ramified_places();
        assert_eq!(valuation(&c, &x, &r[0]).unwrap(), 1);
        let a1 = f.from_index(r[0].coords().unwrap()[1]);
        let y_a = FunctionRep::from_monomials(&c, &[(1, 0, f.one()), (0, 0, f.neg(a1))]).unwrap();
        assert_eq!(valuation(&c, &y_a, &r[0]).unwrap(), 4);
        let one = FunctionRep::from_monomials(&c, &[(0, 0, f.one())]).unwrap();
        assert_eq!(valuation(&c, &one, &r[1]).unwrap(), 0);
    }

    #[test]
    fn double_cover_at_infinity() {
        // y^4 = x^2 + x over F_9 as x'^4 = (y' - 0)(y' + 1): r = 2 divides m = 4
        let c = curve(r#"{"q":{"p":3,"n":2},"model":{"kummer":{"m":4,"roots":[0,-1]}}}"#);
        assert_eq!(c.genus(), 1);
        let plus = Place::named("Pinf+", 1);
        let minus = Place::named("Pinf-", 1);
        let d = c.divisor_from([(plus.clone(), 1), (minus.clone(), 1)]);
        assert_eq!(rr_dim(&c, &d).unwrap(), 2);
        assert_eq!(rr_dim(&c, &c.divisor_from([(plus.clone(), 1)])).unwrap(), 1);
        assert_eq!(
            rr_dim(&c, &c.divisor_from([(plus, 1), (minus, -1)])).unwrap(),
            0
        );
    }

    #[test]
    fn artin_schreier_rewrite() {
        let c = curve(
            r#"{"q":{"p":2,"n":2},"model":{"artin_schreier":{"lhs":[1,1],"num":[0,0,0,1]}}}"#,
        );
        let dims: Vec<u64> = (0..4)
            .map(|n| rr_dim(&c, &c.divisor_from([(Place::infinity(), n)])).unwrap())
            .collect();
        assert_eq!(dims, vec![1, 1, 2, 3]);
    }
}
