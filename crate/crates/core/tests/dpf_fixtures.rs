use metacyclic::dpf::classify_field;
use metacyclic::field::build_field;
use metacyclic::minima::Infrastructure;
use metacyclic::radicand::normalize;
use serde::Deserialize;

#[derive(Deserialize)]
#[allow(non_snake_case)]
struct Row {
    d: u64,
    A: u32,
    t: usize,
    U: u32,
}

#[test]
fn dpf_invariants_match_reference() {
    for line in include_str!("fixtures/pari_pure_cubic.jsonl").lines().filter(|l| !l.trim().is_empty()) {
        let row: Row = serde_json::from_str(line).unwrap();
        let f = build_field(&normalize(row.d, 3).unwrap()).unwrap();
        let infra = Infrastructure::build(&f).unwrap();
        let rep = classify_field(&f, &infra).unwrap_or_else(|e| panic!("d={}: {e}", row.d));
        assert_eq!(rep.t, row.t, "t for d={}", row.d);
        assert_eq!(rep.invariants.a, row.A, "A for d={}", row.d);
        assert_eq!(rep.invariants.u, row.U, "U for d={}", row.d);
        assert!(rep.saturation.verify(&f));
    }
}
