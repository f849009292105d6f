use metacyclic::report::{from_csv, to_csv};
use metacyclic::{
    build_field, ideal_mul, ideal_norm, normalize, split_in_cyclotomic, theorem1_report, ClassificationRecord,
    FieldElement, FracIdeal, Species,
};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn cube_free(d: u64) -> bool {
    (2..).take_while(|q| q * q * q <= d).all(|q| !d.is_multiple_of(q * q * q))
}

fn small_prime() -> impl Strategy<Value = u64> {
    (2u64..2000).prop_filter("prime", |&n| (2..n).take_while(|q| q * q <= n).all(|q| n % q != 0))
}

fn cubic_radicand() -> impl Strategy<Value = u64> {
    (2u64..200).prop_filter("cube-free", |&d| cube_free(d))
}

fn element() -> impl Strategy<Value = FieldElement> {
    prop::array::uniform3(-40i64..40)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(|c| FieldElement::integral(c.map(BigInt::from)))
}

fn record() -> impl Strategy<Value = ClassificationRecord> {
    (
        2u64..100_000,
        prop::sample::select(vec![3u32, 5, 7]),
        prop::option::of((1u64..100, 1u64..100)),
        prop::option::of(-10_000_000i64..0),
        prop::option::of(0u32..2),
        any::<bool>(),
        prop::sample::select(vec!["", "LATTICE_ONLY", "ISHIDA:7;NONCANONICAL:12", "a,b \"quoted\""]),
    )
        .prop_map(|(d, p, ab, disc, u, theorem1, notes)| ClassificationRecord {
            d,
            p,
            a: ab.map(|x| x.0),
            b: ab.map(|x| x.1),
            species: ab.map(|_| "I".to_string()),
            disc,
            conductor: disc.map(|x| x.unsigned_abs() % 997),
            h_l: u.map(|x| 3 * u64::from(x) + 1),
            three_rank: u,
            u,
            p_dim: u.map(|x| 2 - x),
            a_dim: u.map(|_| 1),
            r: u,
            type_label: u.map(|x| if x == 0 { "γ".into() } else { "α".into() }),
            theorem1,
            notes: notes.to_string(),
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_is_idempotent(d in 2u64..1_000_000, p in prop::sample::select(vec![3u32, 5, 7])) {
        match normalize(d, p) {
            Ok(r) => {
                let again = normalize(r.d, p).unwrap();
                prop_assert_eq!(again.d, r.d);
                prop_assert!(again.is_canonical());
                prop_assert_eq!(normalize(r.stripped, p).unwrap().d, r.d);
            }
            Err(e) => prop_assert_eq!(e.code(), "DEGENERATE_RADICAND"),
        }
    }

    #[test]
    fn cubic_decomposition(d in 2u64..1_000_000) {
        if let Ok(r) = normalize(d, 3) {
            let (a, b) = r.ab().unwrap();
            prop_assert_eq!(a * b * b, r.d);
            prop_assert!(cube_free(r.d));
            prop_assert!(a > b);
            let expected = if (r.d * r.d) % 9 == 1 { Species::TypeI } else { Species::TypeII };
            prop_assert_eq!(r.species3().unwrap(), expected);
        }
    }

    #[test]
    fn splitting_counts(ell in small_prime(), p in prop::sample::select(vec![3u32, 5, 7])) {
        let s = split_in_cyclotomic(ell, p).unwrap();
        prop_assert_eq!(s.e * s.f * s.g, p - 1);
        prop_assert_eq!(s.e > 1, ell == u64::from(p));
    }

    #[test]
    fn norm_is_multiplicative(d in cubic_radicand(), x in element(), y in element()) {
        let r = normalize(d, 3).unwrap();
        let f = build_field(&r).unwrap();
        prop_assert_eq!(f.norm(&f.mul(&x, &y)), f.norm(&x) * f.norm(&y));
    }

    #[test]
    fn ideal_norm_is_multiplicative(d in cubic_radicand(), x in element(), y in element(), z in element()) {
        let r = normalize(d, 3).unwrap();
        let f = build_field(&r).unwrap();
        let i = FracIdeal::from_generators(&f, &[x.clone(), y.clone()]).unwrap();
        let j = FracIdeal::principal(&f, &z).unwrap();
        prop_assert_eq!(ideal_norm(&ideal_mul(&f, &i, &j)), ideal_norm(&i) * ideal_norm(&j));
        prop_assert_eq!(ideal_norm(&j), f.norm(&z).abs());
    }

    #[test]
    fn records_survive_csv_and_json(recs in prop::collection::vec(record(), 0..6)) {
        let text = to_csv(&recs).unwrap();
        prop_assert_eq!(from_csv(&text).unwrap(), recs.clone());
        let json = serde_json::to_string(&recs).unwrap();
        prop_assert_eq!(serde_json::from_str::<Vec<ClassificationRecord>>(&json).unwrap(), recs);
    }

    #[test]
    fn septic_list_grows_with_the_limit(a in 2u64..3000, b in 2u64..3000) {
        let (lo, hi) = (a.min(b), a.max(b));
        let small = theorem1_report(lo).unwrap().primes;
        let large = theorem1_report(hi).unwrap().primes;
        prop_assert!(large.starts_with(&small));
        prop_assert!(large[small.len()..].iter().all(|&q| q >= lo));
        prop_assert!(large.iter().all(|q| matches!(q % 7, 2 | 4)));
    }
}
