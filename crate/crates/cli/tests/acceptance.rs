//! Acceptance checks, one line per criterion. Exits non-zero if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use metacyclic::class_group::class_group;
use metacyclic::dpf::{saturate_from, sextic_mul, sextic_pow, sextic_sigma, unit_inverse, SaturatedUnits};
use metacyclic::minima::Infrastructure;
use metacyclic::units::{certify, fundamental_unit_from};
use metacyclic::{
    build_field, classify_record, cube_saturate_units, normalize, split_in_cyclotomic, CoarseType, CubicField,
    FieldElement, SexticElement,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> Result<(String, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_metacyclic")).args(args).output().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!("`{}` exited with {}", args.join(" "), out.status));
    }
    Ok((String::from_utf8_lossy(&out.stdout).into_owned(), elapsed))
}

fn primes_below(n: usize) -> Vec<u64> {
    let mut sieve = vec![true; n];
    let mut out = Vec::new();
    for i in 2..n {
        if sieve[i] {
            out.push(i as u64);
            for j in (i * i..n).step_by(i) {
                sieve[j] = false;
            }
        }
    }
    out
}

fn cube_free_below(n: u64) -> Vec<u64> {
    (2..n).filter(|&d| normalize(d, 3).is_ok_and(|r| r.stripped == d)).collect()
}

fn theorem1_list() -> Check {
    let (out, elapsed) = cli(&["theorem1", "--limit", "200"])?;
    let got: Vec<u64> = out
        .lines()
        .next()
        .unwrap_or_default()
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| format!("unparsable output {out:?}")))
        .collect::<Result<_, _>>()?;
    let want = vec![2, 11, 23, 37, 53, 67, 79, 107, 109, 137, 149, 151, 163, 179, 191, 193];
    ensure(got == want, || format!("got {got:?}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("16 primes in {elapsed:.2?}"))
}

fn splitting_law() -> Check {
    let start = Instant::now();
    let primes = primes_below(100_000);
    for &ell in &primes {
        for p in [3u32, 5, 7] {
            let s = split_in_cyclotomic(ell, p).map_err(|e| e.to_string())?;
            let pm = u64::from(p);
            ensure(s.e * s.f * s.g == p - 1, || format!("e f g != p-1 for ell={ell} p={p}"))?;
            if ell % pm == 1 {
                ensure(s.g == p - 1, || format!("ell={ell} p={p} should split completely"))?;
            }
            if p == 5 && ell % 5 == 4 {
                ensure(s.g == 2, || format!("ell={ell} should give g=2 for p=5"))?;
            }
            if p == 7 && matches!(ell % 7, 2 | 4) {
                ensure(s.g == 2, || format!("ell={ell} should give g=2 for p=7"))?;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{} primes x 3 in {elapsed:.2?}", primes.len()))
}

fn lattice(p: u32) -> Result<Vec<CoarseType>, String> {
    let (out, _) = cli(&["lattice", "--p", &p.to_string(), "--format", "json"])?;
    serde_json::from_str(&out).map_err(|e| e.to_string())
}

fn lattice_transcription() -> Check {
    let counts = [(3, lattice(3)?), (5, lattice(5)?), (7, lattice(7)?)];
    let sizes: Vec<usize> = counts.iter().map(|(_, t)| t.len()).collect();
    ensure(sizes == [3, 8, 10], || format!("lattice sizes {sizes:?}"))?;
    let cells: BTreeSet<(u32, u32)> = counts[1].1.iter().map(|t| (t.u, t.a)).collect();
    ensure(cells.len() == 6, || format!("p=5 has {} (U,A) cells", cells.len()))?;
    for (p, types) in &counts[1..] {
        for t in types {
            ensure(t.fine_marker == (t.u + 1 > t.a), || format!("marker of {} for p={p}", t.label))?;
        }
    }
    Ok("sizes 3/8/10, six p=5 cells, markers consistent".into())
}

fn sweep_p3() -> Check {
    let start = Instant::now();
    let allowed = [(1, 1), (1, 2), (0, 1)];
    let ds = cube_free_below(50);
    for &d in &ds {
        let (rec, failure) = classify_record(d, 3).map_err(|e| format!("d={d}: {e}"))?;
        if let Some(e) = failure {
            return Err(format!("d={d}: {e}"));
        }
        let (u, a, r) = (rec.u.unwrap_or(9), rec.a_dim.unwrap_or(0), rec.r.unwrap_or(9));
        ensure(allowed.contains(&(u, a)), || format!("d={d}: (U,A)=({u},{a})"))?;
        ensure(a >= 1 && u + 1 >= a && r == u + 1 - a, || format!("d={d}: U={u} A={a} R={r}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
    Ok(format!("{} radicands in {elapsed:.2?}", ds.len()))
}

fn oracle_h(d: u64) -> Result<u64, String> {
    let fixture = include_str!("../../core/tests/fixtures/pari_pure_cubic.jsonl");
    for line in fixture.lines().filter(|l| !l.trim().is_empty()) {
        let row: serde_json::Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
        if row["d"].as_u64() == Some(d) {
            return row["h"].as_u64().ok_or_else(|| format!("fixture row for {d} has no h"));
        }
    }
    Err(format!("no fixture row for {d}"))
}

fn class_numbers() -> Check {
    let ds = [2u64, 3, 5, 6, 7, 10, 11, 12, 17, 19];
    let mut hs = Vec::new();
    for d in ds {
        let f = build_field(&normalize(d, 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let h = class_group(&f).map_err(|e| format!("d={d}: {e}"))?.h;
        let want = oracle_h(d)?;
        ensure(h == want, || format!("d={d}: h={h}, oracle {want}"))?;
        hs.push(h);
    }
    Ok(format!("h = {hs:?}"))
}

fn ishida() -> Check {
    let mut seen = Vec::new();
    for d in primes_below(50).into_iter().filter(|d| d % 3 == 1) {
        let f = build_field(&normalize(d, 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let h = class_group(&f).map_err(|e| format!("d={d}: {e}"))?.h;
        ensure(h % 3 == 0, || format!("d={d}: h={h}"))?;
        seen.push(format!("{d}:{h}"));
    }
    Ok(seen.join(" "))
}

fn unit_certificates() -> Check {
    let ds = cube_free_below(50);
    for &d in &ds {
        let f = build_field(&normalize(d, 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let infra = Infrastructure::build(&f).map_err(|e| format!("d={d}: {e}"))?;
        let units = fundamental_unit_from(&f, &infra).map_err(|e| format!("d={d}: {e}"))?;
        let eps = &units.fundamental;
        ensure(f.norm(eps) == BigRational::one(), || format!("d={d}: norm is not 1"))?;
        let cert = certify(&f, eps).map_err(|e| format!("d={d}: {e}"))?;
        let needed: Vec<u32> = primes_below(cert.max_exponent as usize + 1).into_iter().map(|q| q as u32).collect();
        ensure(cert.excluded_roots == needed, || format!("d={d}: roots {:?} of {needed:?}", cert.excluded_roots))?;
        if d == 2 {
            let theta = f.theta();
            let want = FieldElement::one().add(&theta).add(&f.mul(&theta, &theta));
            ensure(*eps == want, || format!("d=2: unit {:?}", eps.to_strings()))?;
            let minus_one = theta.sub(&FieldElement::one());
            ensure(f.mul(&minus_one, eps) == FieldElement::from_int(BigInt::one()), || "d=2: (θ-1)ε != 1".into())?;
        }
    }
    Ok(format!("{} units certified, d=2 gives 1 + θ + θ²", ds.len()))
}

/// Rebuild every step's target from the basis in force at that step.
fn replay(f: &CubicField, start: [SexticElement; 2], sat: &SaturatedUnits) -> Result<(), String> {
    let mut basis = start;
    for step in &sat.steps {
        let rep = step.representative;
        let power = |u: &SexticElement, e: i32| -> Result<SexticElement, String> {
            let base = if e < 0 { unit_inverse(f, u).map_err(|e| e.to_string())? } else { u.clone() };
            Ok(sextic_pow(f, &base, e.unsigned_abs()))
        };
        let x = sextic_mul(
            f,
            &sextic_mul(f, &sextic_pow(f, &SexticElement::omega(), rep.a), &power(&basis[0], rep.b)?),
            &power(&basis[1], rep.c)?,
        );
        ensure(x == step.target, || format!("target of {rep:?} is not the claimed representative"))?;
        ensure(sextic_pow(f, &step.root, 3) == x, || format!("root for {rep:?} does not cube to its target"))?;
        basis[if rep.b != 0 { 0 } else { 1 }] = step.root.clone();
    }
    ensure(basis == sat.basis, || "replayed basis differs".into())
}

fn saturation() -> Check {
    let ds = cube_free_below(50);
    let mut total = 0;
    for &d in &ds {
        let f = build_field(&normalize(d, 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let infra = Infrastructure::build(&f).map_err(|e| format!("d={d}: {e}"))?;
        let sat = cube_saturate_units(&f, &infra.epsilon).map_err(|e| format!("d={d}: {e}"))?;
        ensure(sat.verify(&f), || format!("d={d}: a saturation step does not cube to its target"))?;
        let e = SexticElement::from_field(&f, &infra.epsilon);
        replay(&f, [e.clone(), sextic_sigma(&e)], &sat).map_err(|why| format!("d={d}: {why}"))?;
        total += sat.steps.len();
        let again = saturate_from(&f, sat.basis.clone()).map_err(|e| format!("d={d}: {e}"))?;
        ensure(again.steps.is_empty(), || format!("d={d}: re-saturation added {} steps", again.steps.len()))?;
    }
    Ok(format!("{} radicands, {total} steps, all fixed points", ds.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("septic radicand list", theorem1_list),
        ("cyclotomic splitting law", splitting_law),
        ("type lattice transcription", lattice_transcription),
        ("p=3 classification sweep", sweep_p3),
        ("class numbers against oracle", class_numbers),
        ("3 | h for primes d = 1 mod 3", ishida),
        ("fundamental unit certificate", unit_certificates),
        ("cube saturation soundness", saturation),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
