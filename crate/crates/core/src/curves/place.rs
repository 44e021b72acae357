//! Places and divisors.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// How a place is identified.
///
/// `Named` places are the ones not visible as affine points of the model
/// (places at infinity, poles of the right hand side, declared corrections).
/// `Point` places carry coordinate indices in F_{q^d}, `d` being the degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaceKind {
    Named(String),
    Point(Vec<u64>),
}

impl PlaceKind {
    fn rank(&self) -> u8 {
        match self {
            PlaceKind::Named(_) => 0,
            PlaceKind::Point(_) => 1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Place {
    pub degree: u32,
    pub kind: PlaceKind,
}

impl Place {
    pub fn named(id: impl Into<String>, degree: u32) -> Self {
        Place {
            degree,
            kind: PlaceKind::Named(id.into()),
        }
    }

    pub fn point(coords: Vec<u64>, degree: u32) -> Self {
        Place {
            degree,
            kind: PlaceKind::Point(coords),
        }
    }

    /// Rational affine point with coordinates given as base-field indices.
    pub fn rational(coords: Vec<u64>) -> Self {
        Place::point(coords, 1)
    }

    pub fn infinity() -> Self {
        Place::named("Pinf", 1)
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    pub fn name(&self) -> Option<&str> {
        match &self.kind {
            PlaceKind::Named(s) => Some(s),
            PlaceKind::Point(_) => None,
        }
    }

    pub fn coords(&self) -> Option<&[u64]> {
        match &self.kind {
            PlaceKind::Point(c) => Some(c),
            PlaceKind::Named(_) => None,
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.kind.rank().cmp(&other.kind.rank()))
            .then_with(|| match (&self.kind, &other.kind) {
                (PlaceKind::Named(a), PlaceKind::Named(b)) => a.cmp(b),
                (PlaceKind::Point(a), PlaceKind::Point(b)) => a.cmp(b),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::Named(s) if self.degree == 1 => write!(f, "{s}"),
            PlaceKind::Named(s) => write!(f, "{s}/deg{}", self.degree),
            PlaceKind::Point(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                if self.degree == 1 {
                    write!(f, "({})", parts.join(","))
                } else {
                    write!(f, "({})/deg{}", parts.join(","), self.degree)
                }
            }
        }
    }
}

/// Formal sum of places with integer coefficients.
///
/// `curve` is the fingerprint of the owning curve, `None` for the zero divisor
/// built without a curve, which combines with anything.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Divisor {
    curve: Option<String>,
    coeffs: BTreeMap<Place, BigInt>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn on(curve: &str) -> Self {
        Divisor {
            curve: Some(curve.to_string()),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(curve: &str, terms: impl IntoIterator<Item = (Place, i64)>) -> Self {
        let mut d = Divisor::on(curve);
        for (p, n) in terms {
            d.add_term(p, BigInt::from(n));
        }
        d
    }

    pub fn curve(&self) -> Option<&str> {
        self.curve.as_deref()
    }

    pub fn add_term(&mut self, p: Place, n: BigInt) {
        if n.is_zero() {
            return;
        }
        let e = self.coeffs.entry(p.clone()).or_insert_with(BigInt::zero);
        *e += n;
        if e.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn coeff(&self, p: &Place) -> BigInt {
        self.coeffs.get(p).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient as i64; panics when out of range.
    pub fn coeff_i64(&self, p: &Place) -> i64 {
        i64::try_from(self.coeff(p)).expect("coefficient fits in i64")
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> Vec<Place> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|(p, n)| n * BigInt::from(p.degree))
            .sum()
    }

    pub fn degree_i64(&self) -> i64 {
        i64::try_from(self.degree()).expect("degree fits in i64")
    }

    /// Degree of the positive part.
    pub fn degree_plus(&self) -> BigInt {
        self.coeffs
            .iter()
            .filter(|(_, n)| n.is_positive())
            .map(|(p, n)| n * BigInt::from(p.degree))
            .sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|n| !n.is_negative())
    }

    fn merged_curve(&self, other: &Divisor) -> Result<Option<String>> {
        match (&self.curve, &other.curve) {
            (Some(a), Some(b)) if a != b => Err(Error::pre("divisors live on different curves")),
            (Some(a), _) => Ok(Some(a.clone())),
            (None, b) => Ok(b.clone()),
        }
    }

    pub fn try_add(&self, other: &Divisor) -> Result<Divisor> {
        let mut out = Divisor {
            curve: self.merged_curve(other)?,
            coeffs: self.coeffs.clone(),
        };
        for (p, n) in &other.coeffs {
            out.add_term(p.clone(), n.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Divisor) -> Result<Divisor> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            curve: self.curve.clone(),
            coeffs: self.coeffs.iter().map(|(p, n)| (p.clone(), -n)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor {
                curve: self.curve.clone(),
                coeffs: BTreeMap::new(),
            };
        }
        Divisor {
            curve: self.curve.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(p, n)| (p.clone(), n * k))
                .collect(),
        }
    }

    /// `self + n*P`.
    pub fn plus(&self, p: &Place, n: i64) -> Divisor {
        let mut out = self.clone();
        out.add_term(p.clone(), BigInt::from(n));
        out
    }

    /// `D >= E` componentwise.
    pub fn dominates(&self, other: &Divisor) -> bool {
        let mut places: Vec<&Place> = self.coeffs.keys().collect();
        places.extend(other.coeffs.keys());
        places.iter().all(|p| self.coeff(p) >= other.coeff(p))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "coeffs": self.coeffs.iter().map(|(p, n)| serde_json::json!({
                "place": p,
                "n": n.to_string().parse::<i64>().unwrap_or(0),
            })).collect::<Vec<_>>()
        })
    }

    /// Parses `{"coeffs":[{"place":..,"n":..}]}`.
    pub fn from_json(curve: &str, v: &serde_json::Value) -> Result<Divisor> {
        let arr = v
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Parse("divisor needs a \"coeffs\" array".into()))?;
        let mut d = Divisor::on(curve);
        for item in arr {
            let place: Place = serde_json::from_value(
                item.get("place")
                    .cloned()
                    .ok_or_else(|| Error::Parse("missing place".into()))?,
            )?;
            let n = item
                .get("n")
                .and_then(|n| n.as_i64())
                .ok_or_else(|| Error::Parse("missing integer n".into()))?;
            d.add_term(place, BigInt::from(n));
        }
        Ok(d)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(p, n)| {
                if n == &BigInt::from(1) {
                    format!("{p}")
                } else {
                    format!("{n}*{p}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let p = Place::rational(vec![0, 1]);
        let q = Place::point(vec![2, 3], 2);
        let d = Divisor::from_terms("c", [(p.clone(), 1), (q.clone(), 2)]);
        assert_eq!(d.degree(), BigInt::from(5));
        assert!(d.try_add(&d.neg()).unwrap().is_zero());
        let other = Divisor::from_terms("other", [(p, 1)]);
        assert!(d.try_add(&other).is_err());
        assert!(d.try_add(&Divisor::zero()).is_ok());
    }

    #[test]
    fn ordering() {
        let inf = Place::infinity();
        let pt = Place::rational(vec![0, 0]);
        let deg2 = Place::named("Pinf", 2);
        assert!(inf < pt);
        assert!(pt < deg2);
    }

    #[test]
    fn json_roundtrip() {
        let d = Divisor::from_terms(
            "c",
            [(Place::infinity(), -2), (Place::rational(vec![1, 4]), 3)],
        );
        let back = Divisor::from_json("c", &d.to_json()).unwrap();
        assert_eq!(d, back);
    }
}
