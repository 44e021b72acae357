//! Weierstrass semigroups at the totally ramified places (x, y) = (0, a_i) of
//! a Kummer model x^m = prod (y - a_i) with gcd(m, r) = 1.

use crate::curves::{Curve, Divisor, Place};
use crate::error::{Error, Result};
use crate::rrspaces::RrModel;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use std::collections::BTreeSet;

fn coprime(m: u64, r: u64) -> Result<()> {
    if m < 1 || r < 1 || m.gcd(&r) != 1 {
        return Err(Error::pre(format!(
            "(m, r) = ({m}, {r}) is not a coprime pair"
        )));
    }
    Ok(())
}

/// Largest j with a gap of the form mk + j.
fn top_j(m: u64, r: u64) -> u64 {
    (m - 1).saturating_sub(m / r)
}

/// Gaps at a single ramified place, sorted.
pub fn gap_set_single(m: u64, r: u64) -> Result<Vec<u64>> {
    coprime(m, r)?;
    let mut gaps = BTreeSet::new();
    for j in 1..=top_j(m, r) {
        let kmax = (r as i64) - 2 - (r * j / m) as i64;
        for k in 0..=kmax.max(-1) {
            gaps.insert(m * k as u64 + j);
        }
    }
    let g = (m - 1) * (r - 1) / 2;
    if gaps.len() as u64 != g {
        return Err(Error::inv(format!(
            "{} gaps for ({m}, {r}), expected g = {g}",
            gaps.len()
        )));
    }
    Ok(gaps.into_iter().collect())
}

/// Pole numbers at a single ramified place up to `bound`.
pub fn pole_numbers(m: u64, r: u64, bound: u64) -> Result<Vec<u64>> {
    let gaps: BTreeSet<u64> = gap_set_single(m, r)?.into_iter().collect();
    Ok((0..=bound).filter(|n| !gaps.contains(n)).collect())
}

pub fn is_pole_number(m: u64, r: u64, n: u64) -> Result<bool> {
    Ok(!gap_set_single(m, r)?.contains(&n))
}

/// Generating vectors at l >= 2 ramified places.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaSet {
    pub m: u64,
    pub r: u64,
    pub l: usize,
    pub vectors: Vec<Vec<u64>>,
}

fn compositions(total: u64, parts: usize, out: &mut Vec<Vec<u64>>, cur: &mut Vec<u64>) {
    if parts == 1 {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for s in 0..=total {
        cur.push(s);
        compositions(total - s, parts - 1, out, cur);
        cur.pop();
    }
}

fn multi_vectors(m: u64, r: u64, l: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for j in 1..=top_j(m, r) {
        let total = r as i64 - l as i64 - (r * j / m) as i64;
        if total < 0 {
            continue;
        }
        let mut comps = Vec::new();
        compositions(total as u64, l, &mut comps, &mut Vec::new());
        out.extend(
            comps
                .into_iter()
                .map(|s| s.into_iter().map(|si| m * si + j).collect::<Vec<u64>>()),
        );
    }
    out.sort();
    out.dedup();
    out
}

/// Tuples (m s_1 + j, ..., m s_l + j) with sum s_i = r - l - floor(rj/m).
pub fn gamma_plus_multi(m: u64, r: u64, l: usize) -> Result<GammaSet> {
    coprime(m, r)?;
    let hi = r - r / m;
    if l < 2 || l as u64 > hi {
        return Err(Error::pre(format!("l = {l} outside 2..={hi}")));
    }
    Ok(GammaSet {
        m,
        r,
        l,
        vectors: multi_vectors(m, r, l),
    })
}

/// Nonzero generators of H(P_1, ..., P_l) lying in the box [0, alpha].
pub fn generators_in_box(m: u64, r: u64, alpha: &[u64]) -> Result<Vec<Vec<u64>>> {
    coprime(m, r)?;
    let l = alpha.len();
    if l > 20 {
        return Err(Error::pre("too many places"));
    }
    let gaps: BTreeSet<u64> = gap_set_single(m, r)?.into_iter().collect();
    let active: Vec<usize> = (0..l).filter(|&i| alpha[i] > 0).collect();
    let hi = (r - r / m) as usize;
    let mut out = BTreeSet::new();
    for mask in 1u32..(1u32 << active.len()) {
        let idx: Vec<usize> = active
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        if idx.len() == 1 {
            let i = idx[0];
            for n in 1..=alpha[i] {
                if !gaps.contains(&n) {
                    let mut v = vec![0; l];
                    v[i] = n;
                    out.insert(v);
                }
            }
        } else if idx.len() <= hi {
            for t in multi_vectors(m, r, idx.len()) {
                if idx.iter().zip(&t).all(|(&i, &ti)| ti <= alpha[i]) {
                    let mut v = vec![0; l];
                    for (&i, &ti) in idx.iter().zip(&t) {
                        v[i] = ti;
                    }
                    out.insert(v);
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// alpha in H iff it is the least upper bound of generators below it.
pub fn semigroup_member(alpha: &[u64], gens: &[Vec<u64>], q: u64) -> Result<bool> {
    if alpha.len() as u64 >= q {
        return Err(Error::pre(format!(
            "{} places is not below q = {q}",
            alpha.len()
        )));
    }
    if gens.iter().any(|v| v.len() != alpha.len()) {
        return Err(Error::pre("generator dimension mismatch"));
    }
    let below: Vec<&Vec<u64>> = gens
        .iter()
        .filter(|v| v.iter().zip(alpha).all(|(a, b)| a <= b))
        .collect();
    Ok(alpha
        .iter()
        .enumerate()
        .all(|(i, &a)| a == 0 || below.iter().any(|v| v[i] == a)))
}

/// Membership of alpha in the semigroup at |alpha| ramified places of the
/// (m, r) model over F_q.
pub fn member(m: u64, r: u64, alpha: &[u64], q: u64) -> Result<bool> {
    semigroup_member(alpha, &generators_in_box(m, r, alpha)?, q)
}

/// (m, r) of a curve whose model is a coprime Kummer form.
pub fn kummer_pair(c: &Curve) -> Result<(u64, u64)> {
    let model = RrModel::of(c)?;
    if model.d != 1 {
        return Err(Error::Unsupported("semigroups need gcd(m, r) = 1".into()));
    }
    Ok((model.m as u64, model.r as u64))
}

/// The places (0, a_i) in root order, also for Artin-Schreier models that
/// rewrite to Kummer form.
pub fn ramified_places(c: &Curve) -> Result<Vec<Place>> {
    let model = RrModel::of(c)?;
    Ok(model
        .roots
        .iter()
        .map(|a| Place::rational(vec![0, c.field().index(a)]))
        .collect())
}

/// Coefficient vector of a divisor supported on ramified places.
pub fn ramified_coefficients(c: &Curve, a: &Divisor) -> Result<(Vec<Place>, Vec<u64>)> {
    let ram = ramified_places(c)?;
    let mut places = Vec::new();
    let mut alpha = Vec::new();
    for (p, n) in a.terms() {
        if !ram.contains(p) {
            return Err(Error::pre(format!("{p} is not a totally ramified place")));
        }
        let n = n
            .to_u64()
            .ok_or_else(|| Error::pre("divisor is not effective"))?;
        places.push(p.clone());
        alpha.push(n);
    }
    Ok((places, alpha))
}

/// Sufficient test: an effective degree g divisor on ramified places is
/// non-special when no nonzero generator lies below its coefficients.
pub fn nonspecial_by_semigroup(c: &Curve, a: &Divisor) -> Result<bool> {
    if a.degree_i64() != c.genus() as i64 {
        return Err(Error::pre(format!(
            "deg A = {} is not g = {}",
            a.degree_i64(),
            c.genus()
        )));
    }
    let (m, r) = kummer_pair(c)?;
    let (_, alpha) = ramified_coefficients(c, a)?;
    if alpha.len() as u64 >= c.q() {
        return Err(Error::pre(
            "support too large for the generating set description",
        ));
    }
    Ok(generators_in_box(m, r, &alpha)?.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FloorReport {
    pub r: u64,
    pub m: u64,
    pub t: u64,
    pub jumps_checked: u64,
    pub sum: u64,
    pub expected_sum: u64,
}

/// Checks the jump pattern of floor(rj/m) for 1 <= j <= m-2 and the sum
/// identity for t = r mod m.
pub fn floor_identities(r: u64, m: u64) -> Result<FloorReport> {
    coprime(m, r)?;
    let t = r % m;
    let specials: BTreeSet<u64> = (1..t).map(|k| k * m / t).collect();
    let mut checked = 0;
    for j in 1..m.saturating_sub(1) {
        let jump = r * (j + 1) / m - r * j / m;
        let want = r / m + u64::from(specials.contains(&j));
        if jump != want {
            return Err(Error::inv(format!(
                "floor jump at j = {j} for (r, m) = ({r}, {m}): {jump} != {want}"
            )));
        }
        checked += 1;
    }
    let sum: u64 = (1..t).map(|k| k * m / t).sum();
    let expected = if t == 0 { 0 } else { (m - 1) * (t - 1) / 2 };
    if sum != expected {
        return Err(Error::inv(format!(
            "floor sum for (r, m) = ({r}, {m}): {sum} != {expected}"
        )));
    }
    Ok(FloorReport {
        r,
        m,
        t,
        jumps_checked: checked,
        sum,
        expected_sum: expected,
    })
}
