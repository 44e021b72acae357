//! Bundled reference data: defect table rows, class number rows and the
//! curve collection used by the invariant suites.

use crate::curves::{Curve, CurveDescriptor};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const DEFECT_TABLES: &str = include_str!("../data/defect_tables.csv");
pub const CLASS_NUMBER_ROWS: &str = include_str!("../data/class_number_rows.json");
pub const CURVES: &str = include_str!("../data/curves.json");
pub const CHECKSUMS: &str = include_str!("../data/CHECKSUMS");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DefectCase {
    A,
    B,
}

impl DefectCase {
    pub fn label(self) -> &'static str {
        match self {
            DefectCase::A => "A",
            DefectCase::B => "B",
        }
    }
}

/// One row of the defect tables; `table` is 1 for case A, 2 for case B.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectRow {
    pub table: u8,
    pub q: u64,
    pub g: u32,
    pub k: u64,
    pub case: DefectCase,
    pub n: Option<u64>,
    pub expected: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassNumberRow {
    pub h: u64,
    pub q: u64,
    pub g: u32,
    pub equation: String,
    pub b: Vec<u64>,
    pub descriptor: Option<CurveDescriptor>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundledCurve {
    pub name: String,
    pub descriptor: CurveDescriptor,
}

impl BundledCurve {
    pub fn curve(&self) -> Result<Curve> {
        let mut d = self.descriptor.clone();
        d.name = Some(self.name.clone());
        Curve::new(d)
    }
}

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Checks `content` against the digest recorded for `file`.
pub fn verify_checksum(file: &str, content: &str) -> Result<()> {
    let want = CHECKSUMS
        .lines()
        .filter_map(|l| l.split_once("  "))
        .find(|(_, f)| f.trim() == file)
        .map(|(h, _)| h.trim())
        .ok_or_else(|| Error::inv(format!("no checksum recorded for {file}")))?;
    let got = sha256_hex(content.as_bytes());
    if got != want {
        return Err(Error::inv(format!(
            "checksum mismatch for {file}: {got} != {want}"
        )));
    }
    Ok(())
}

/// Parses the defect table CSV.
pub fn parse_defect_rows(text: &str) -> Result<Vec<DefectRow>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty defect table".into()))?;
    if header.trim() != "table,q,g,k,case,n,expected" {
        return Err(Error::Parse(format!("unexpected header {header:?}")));
    }
    let bad = |l: &str| Error::Parse(format!("bad defect row {l:?}"));
    let mut rows = Vec::new();
    for l in lines {
        let f: Vec<&str> = l.split(',').map(str::trim).collect();
        if f.len() != 7 {
            return Err(bad(l));
        }
        let case = match f[4] {
            "A" => DefectCase::A,
            "B" => DefectCase::B,
            _ => return Err(bad(l)),
        };
        rows.push(DefectRow {
            table: f[0].parse().map_err(|_| bad(l))?,
            q: f[1].parse().map_err(|_| bad(l))?,
            g: f[2].parse().map_err(|_| bad(l))?,
            k: f[3].parse().map_err(|_| bad(l))?,
            case,
            n: if f[5].is_empty() {
                None
            } else {
                Some(f[5].parse().map_err(|_| bad(l))?)
            },
            expected: match f[6] {
                "True" => true,
                "False" => false,
                _ => return Err(bad(l)),
            },
        });
    }
    if rows.is_empty() {
        return Err(Error::Parse("defect table has no rows".into()));
    }
    Ok(rows)
}

pub fn defect_rows() -> Result<Vec<DefectRow>> {
    verify_checksum("defect_tables.csv", DEFECT_TABLES)?;
    parse_defect_rows(DEFECT_TABLES)
}

pub fn class_number_rows() -> Result<Vec<ClassNumberRow>> {
    verify_checksum("class_number_rows.json", CLASS_NUMBER_ROWS)?;
    let rows: Vec<ClassNumberRow> = serde_json::from_str(CLASS_NUMBER_ROWS)?;
    if rows.is_empty() {
        return Err(Error::Parse("class number table has no rows".into()));
    }
    Ok(rows)
}

pub fn bundled_curves() -> Result<Vec<BundledCurve>> {
    verify_checksum("curves.json", CURVES)?;
    Ok(serde_json::from_str(CURVES)?)
}

pub fn bundled_curve(name: &str) -> Result<Curve> {
    bundled_curves()?
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::pre(format!("no bundled curve named {name}")))?
        .curve()
}

/// Every bundled row set.
#[derive(Clone, Debug, Serialize)]
pub struct ReferenceTables {
    pub defect: Vec<DefectRow>,
    pub class_number: Vec<ClassNumberRow>,
}

pub fn load_reference_tables() -> Result<ReferenceTables> {
    Ok(ReferenceTables {
        defect: defect_rows()?,
        class_number: class_number_rows()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_load() {
        let t = load_reference_tables().unwrap();
        let first = &t.defect[0];
        assert_eq!(
            (first.q, first.g, first.k, first.case, first.expected),
            (2, 3, 3, DefectCase::A, true)
        );
        let row = t
            .class_number
            .iter()
            .find(|r| r.equation == "y^2+y+(x^4+x+1)/x=0")
            .unwrap();
        assert_eq!((row.b[0], row.b[1], row.h), (2, 1, 2));
    }

    #[test]
    fn empty_is_error() {
        assert!(parse_defect_rows("").is_err());
        assert!(parse_defect_rows("table,q,g,k,case,n,expected\n").is_err());
    }

    #[test]
    fn tamper_detected() {
        assert!(verify_checksum("defect_tables.csv", "table,q,g,k,case,n,expected\n").is_err());
    }
}
