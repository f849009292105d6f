use std::str::FromStr;

use metacyclic::field::build_field;
use metacyclic::radicand::normalize;
use metacyclic::units::fundamental_unit;
use num_rational::BigRational;
use serde::Deserialize;

#[derive(Deserialize)]
struct Row {
    d: u64,
    reg: f64,
    fu: Vec<String>,
}

fn rows() -> Vec<Row> {
    include_str!("fixtures/pari_pure_cubic.jsonl")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn regulators_and_units_match_reference() {
    for row in rows() {
        let r = normalize(row.d, 3).unwrap();
        let f = build_field(&r).unwrap();
        let u = fundamental_unit(&f).unwrap_or_else(|e| panic!("d={}: {e}", row.d));
        assert!((u.regulator - row.reg).abs() < 1e-8 * row.reg.max(1.0), "d={} reg {} vs {}", row.d, u.regulator, row.reg);
        // reference unit over (1, θ, θ²) with θ³ = d; compare up to sign and inversion
        let p: Vec<BigRational> = row.fu.iter().map(|s| BigRational::from_str(s).unwrap()).collect();
        if !r.is_canonical() {
            continue;
        }
        let b = BigRational::from(f.b.clone());
        let reference = f.from_rationals(&[p[0].clone(), p[1].clone(), &p[2] * &b]);
        let inv = f.inv(&reference).unwrap();
        let eps = &u.fundamental;
        assert!(
            [reference.clone(), reference.neg(), inv.clone(), inv.neg()].contains(eps),
            "d={} unit mismatch",
            row.d
        );
    }
}
