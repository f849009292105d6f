//! Per-radicand classification records and batch scans.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class_group::{class_group_from, factor_base, ClassGroupResult};
use crate::dpf::{classify_field, DpfReport};
use crate::error::{Error, Result};
use crate::field::{build_field, CubicField};
use crate::minima::Infrastructure;
use crate::radicand::{normalize, Radicand};
use crate::splitting::{conductor_p3, split_in_cyclotomic, theorem1_radicands, SplittingReport};
use crate::units::{fundamental_unit_from, UnitGroupL};

/// Radicands for `p = 7` below 200 singled out in the septic divisibility result.
pub const THEOREM1_REFERENCE: [u64; 16] = [2, 11, 23, 37, 53, 67, 79, 107, 109, 137, 149, 151, 163, 179, 191, 193];

/// One output row. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub d: u64,
    pub p: u32,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub species: Option<String>,
    pub disc: Option<i64>,
    pub conductor: Option<u64>,
    #[serde(rename = "h_L")]
    pub h_l: Option<u64>,
    pub three_rank: Option<u32>,
    #[serde(rename = "U")]
    pub u: Option<u32>,
    #[serde(rename = "P")]
    pub p_dim: Option<u32>,
    #[serde(rename = "A")]
    pub a_dim: Option<u32>,
    #[serde(rename = "R")]
    pub r: Option<u32>,
    #[serde(rename = "type")]
    pub type_label: Option<String>,
    pub theorem1: bool,
    /// `;`-separated machine-readable tokens.
    pub notes: String,
}

pub const CSV_HEADER: &str = "d,p,a,b,species,disc,conductor,h_L,three_rank,U,P,A,R,type,theorem1,notes";

/// Everything computed for a pure cubic field.
#[derive(Debug)]
pub struct CubicAnalysis {
    pub field: CubicField,
    pub units: UnitGroupL,
    pub class_group: ClassGroupResult,
    pub dpf: DpfReport,
}

pub fn analyze_cubic(r: &Radicand) -> Result<CubicAnalysis> {
    let field = build_field(r)?;
    let infra = Infrastructure::build(&field)?;
    let units = fundamental_unit_from(&field, &infra)?;
    let class_group = class_group_from(&field, &infra, factor_base(&field)?)?;
    let dpf = classify_field(&field, &infra)?;
    Ok(CubicAnalysis { field, units, class_group, dpf })
}

/// Splitting in `Q(ζ_p)` of the primes relevant to `r`: the conductor primes
/// for `p = 3`, the prime divisors of the radicand otherwise.
pub fn relevant_splitting(r: &Radicand) -> Result<Vec<SplittingReport>> {
    if r.p == 3 {
        Ok(conductor_p3(r)?.prime_divisors.into_iter().map(|(_, s)| s).collect())
    } else {
        r.prime_divisors().into_iter().map(|q| split_in_cyclotomic(q, r.p)).collect()
    }
}

fn is_theorem1(r: &Radicand) -> bool {
    r.p == 7 && r.factors.len() == 1 && r.factors[0].1 == 1 && matches!(r.stripped % 7, 2 | 4) && r.stripped == r.factors[0].0
}

fn flag_tokens(reports: &[SplittingReport]) -> Vec<String> {
    let mut out = Vec::new();
    for s in reports {
        if s.ishida {
            out.push(format!("ISHIDA:{}", s.ell));
        }
        if s.kobayashi {
            out.push(format!("KOBAYASHI:{}", s.ell));
        }
        if s.septic_two_split {
            out.push(format!("SEPTIC_TWO_SPLIT:{}", s.ell));
        }
    }
    out
}

/// Record for `d_raw`, plus the failure that truncated it, if any.
///
/// Only invalid or degenerate radicands are errors; computational failures
/// produce a partial record whose notes carry the error code.
pub fn classify_record(d_raw: u64, p: u32) -> Result<(ClassificationRecord, Option<Error>)> {
    let r = normalize(d_raw, p)?;
    let canonical = r.is_canonical();
    let mut notes: Vec<String> = Vec::new();
    if !canonical {
        notes.push(format!("NONCANONICAL:{}", r.d));
    }
    let (a, b) = match (r.a, r.b) {
        // the given radicand is the co-radicand, with a and b swapped
        (Some(a), Some(b)) if !canonical => (Some(b), Some(a)),
        other => other,
    };
    let mut rec = ClassificationRecord {
        d: r.stripped,
        p,
        a,
        b,
        species: r.species.map(|s| s.as_str().to_string()),
        disc: None,
        conductor: None,
        h_l: None,
        three_rank: None,
        u: None,
        p_dim: None,
        a_dim: None,
        r: None,
        type_label: None,
        theorem1: is_theorem1(&r),
        notes: String::new(),
    };
    let mut failure = None;
    match relevant_splitting(&r) {
        Ok(reports) => notes.extend(flag_tokens(&reports)),
        Err(e) => failure = Some(e),
    }
    if p == 3 {
        if let Ok(c) = conductor_p3(&r) {
            rec.conductor = Some(c.value);
        }
        match analyze_cubic(&r) {
            Ok(an) => {
                rec.disc = i64::try_from(&an.field.discriminant).ok();
                rec.h_l = Some(an.class_group.h);
                rec.three_rank = Some(an.class_group.three_rank);
                let inv = an.dpf.invariants;
                rec.u = Some(inv.u);
                rec.p_dim = Some(inv.p);
                rec.a_dim = Some(inv.a);
                rec.r = Some(inv.r);
                rec.type_label = Some(an.dpf.coarse.label.clone());
                if notes.iter().any(|n| n.starts_with("ISHIDA:")) && an.class_group.h % 3 != 0 {
                    notes.push("ISHIDA_MISMATCH".into());
                }
            }
            Err(e) => {
                if let Ok(f) = build_field(&r) {
                    rec.disc = i64::try_from(&f.discriminant).ok();
                }
                failure = Some(e);
            }
        }
    } else {
        notes.push("LATTICE_ONLY".into());
        if rec.theorem1 {
            notes.push("H_DIVISIBILITY_UNVERIFIED".into());
        }
    }
    if let Some(e) = &failure {
        notes.push(e.code().to_string());
    }
    rec.notes = notes.join(";");
    Ok((rec, failure))
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScanEntry {
    Record { record: ClassificationRecord, failure: Option<String> },
    /// A value in range that is not a normalized radicand.
    Skipped { d: u64, reason: &'static str },
}

/// Classify every `p`-th-power-free `d` in `dmin..=dmax`, ordered by `d`.
pub fn scan(p: u32, dmin: u64, dmax: u64, jobs: usize) -> Result<Vec<ScanEntry>> {
    crate::radicand::check_prime(p)?;
    if dmin < 2 || dmin > dmax {
        return Err(Error::InvalidInput(format!("bad range {dmin}..={dmax}")));
    }
    let work = |d: u64| -> ScanEntry {
        match normalize(d, p) {
            Err(e) => ScanEntry::Skipped { d, reason: e.code() },
            Ok(r) if r.stripped != d => ScanEntry::Skipped { d, reason: "NOT_POWER_FREE" },
            Ok(_) => match classify_record(d, p) {
                Ok((record, failure)) => ScanEntry::Record { record, failure: failure.map(|e| e.to_string()) },
                Err(e) => ScanEntry::Skipped { d, reason: e.code() },
            },
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(pool.install(|| (dmin..=dmax).into_par_iter().map(work).collect()))
}

pub fn to_csv(records: &[ClassificationRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    if records.is_empty() {
        return Ok(format!("{CSV_HEADER}\n"));
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn from_csv(text: &str) -> Result<Vec<ClassificationRecord>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::InvalidInput(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub limit: u64,
    pub primes: Vec<u64>,
    /// Comparison with the published list, only for `limit = 200`.
    pub matches_reference: Option<bool>,
}

pub fn theorem1_report(limit: u64) -> Result<Theorem1Report> {
    if limit < 2 {
        return Err(Error::InvalidInput(format!("limit {limit} must be at least 2")));
    }
    let primes = theorem1_radicands(limit);
    let matches_reference = (limit == 200).then(|| primes == THEOREM1_REFERENCE);
    Ok(Theorem1Report { limit, primes, matches_reference })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_for_two() {
        let (rec, fail) = classify_record(2, 3).unwrap();
        assert!(fail.is_none());
        assert_eq!(rec.h_l, Some(1));
        assert_eq!(rec.disc, Some(-108));
        assert_eq!(rec.conductor, Some(6));
        assert_eq!(rec.type_label.as_deref(), Some("β"));
    }

    #[test]
    fn noncanonical_record_keeps_its_radicand() {
        let (rec, _) = classify_record(18, 3).unwrap();
        assert_eq!((rec.d, rec.a, rec.b), (18, Some(2), Some(3)));
        assert!(rec.notes.contains("NONCANONICAL:12"));
        let (canon, _) = classify_record(12, 3).unwrap();
        assert_eq!(rec.h_l, canon.h_l);
    }

    #[test]
    fn septic_record() {
        let (rec, _) = classify_record(2, 7).unwrap();
        assert!(rec.theorem1);
        assert!(rec.notes.contains("SEPTIC_TWO_SPLIT:2"));
        assert!(rec.notes.contains("H_DIVISIBILITY_UNVERIFIED"));
        assert_eq!(rec.h_l, None);
    }

    #[test]
    fn csv_round_trip() {
        let recs: Vec<_> = [2u64, 7, 12].iter().map(|&d| classify_record(d, 3).unwrap().0).collect();
        let text = to_csv(&recs).unwrap();
        assert!(text.starts_with(CSV_HEADER));
        assert_eq!(from_csv(&text).unwrap(), recs);
        let json = serde_json::to_string(&recs).unwrap();
        assert_eq!(serde_json::from_str::<Vec<ClassificationRecord>>(&json).unwrap(), recs);
    }

    #[test]
    fn theorem1_matches() {
        let rep = theorem1_report(200).unwrap();
        assert_eq!(rep.matches_reference, Some(true));
        assert_eq!(theorem1_report(3).unwrap().primes, vec![2]);
    }
}
