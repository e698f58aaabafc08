//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//! Expected values are frozen from independent computation; tolerances are
//! exact integer equality unless a runtime budget is stated.

use std::collections::HashMap;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use dnq::builder::{self, case_for, AuxElements};
use dnq::counterexample::{self, Representability};
use dnq::pell::{self, canonical_rep};
use dnq::primes;
use dnq::quadring::{classify_mod4, NormForm, RingCtx, RingElt};

fn ctx(d: i64) -> RingCtx {
    RingCtx::new(d).unwrap()
}

fn e(re: i64, im: i64) -> RingElt {
    RingElt::new(re, im)
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn uniform(state: &mut u64, lo: i64, hi: i64) -> i64 {
    let span = (hi - lo + 1) as u64;
    lo + (splitmix64(state) % span) as i64
}

/// Canonical sign for comparing roots quoted with either sign.
fn canonical(x: &RingElt) -> RingElt {
    if x.re.is_negative() || (x.re.is_zero() && x.im.is_negative()) {
        -x
    } else {
        x.clone()
    }
}

fn report(criterion: &str, ok: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

const TABLE_MINUS_ONE: [(i64, i64, i64); 5] = [
    (10, 3, 1),
    (58, 99, 13),
    (106, 4005, 389),
    (202, 3141, 221),
    (298, 409557, 23725),
];

const TABLE_SIX: [(i64, i64, i64); 5] = [
    (10, 4, 1),
    (58, 8, 1),
    (106, 1184, 115),
    (202, 668, 47),
    (298, 328, 19),
];

#[test]
fn c1_fundamental_solution_table() {
    let started = Instant::now();
    for (target, rows) in [(-1i64, TABLE_MINUS_ONE), (6, TABLE_SIX)] {
        for (d, x, y) in rows {
            let c = ctx(d);
            let listed = e(x, y);
            assert_eq!(c.norm(&listed), BigInt::from(target), "d={d}");
            let set = c.solution_set(target).unwrap();
            assert!(set.solvable, "d={d} target={target}");
            let rep = canonical_rep(&c, &listed);
            assert!(
                set.primitives.contains(&rep),
                "class of ({x}, {y}) missing for d={d}, N={target}"
            );
            let stream = pell::enumerate_norm(&c, target, 12).unwrap();
            assert!(
                stream.contains(&listed),
                "({x}, {y}) not regenerated for d={d}, N={target}"
            );
        }
    }
    let elapsed = started.elapsed();
    report(
        "1",
        elapsed < Duration::from_secs(10),
        &format!("all ten table rows reproduced exactly in {elapsed:?} (< 10 s)"),
    );
}

#[test]
fn c2_first_printed_fixture() {
    let c = ctx(10);
    let n = e(26, 6);
    let elems = [e(19, 6), e(-8, 6), e(35, 18), e(35, 42)];
    let expected_roots =
        [e(12, 3), e(31, 9), e(39, 13), e(4, 9), e(-4, 15), e(39, 27)].map(|r| canonical(&r));
    let rep = builder::verify(&c, &n, &elems).unwrap();
    assert!(rep.ok(), "fixture must verify");
    for (pair, expected) in rep.pairs.iter().zip(expected_roots.iter()) {
        assert_eq!(
            pair.root.as_ref(),
            Some(expected),
            "pair ({}, {})",
            pair.i,
            pair.j
        );
    }
    report(
        "2",
        true,
        "d=10 fixture verifies with the six quoted roots (canonical sign)",
    );
}

#[test]
fn c3_second_printed_fixture() {
    let c = ctx(58);
    let n = e(18, 2);
    let elems = [
        e(19603, 2574),
        e(543627, -70094),
        e(543616, -70094),
        e(2154883, -282950),
    ];
    let expected_roots = [
        e(9807, 1287),
        e(9796, 1287),
        e(-3, 1),
        e(-533820, 71381),
        e(1077447, -141475),
        e(-1077436, 141475),
    ]
    .map(|r| canonical(&r));
    let rep = builder::verify(&c, &n, &elems).unwrap();
    assert!(rep.ok(), "fixture must verify");
    for (pair, expected) in rep.pairs.iter().zip(expected_roots.iter()) {
        assert_eq!(
            pair.root.as_ref(),
            Some(expected),
            "pair ({}, {})",
            pair.i,
            pair.j
        );
    }
    report(
        "3",
        true,
        "d=58 fixture verifies with the six quoted roots (canonical sign)",
    );
}

#[test]
fn c4_norm_form_invariants() {
    let mut checked = 0;
    for d in [10i64, 58, 106, 202, 298] {
        let c = ctx(d);
        assert_eq!(c.d().mod_floor(&BigInt::from(48)), BigInt::from(10));
        for target in [1i64, -1, 6, -6] {
            for sol in pell::enumerate_norm(&c, target, 50).unwrap() {
                let form = c
                    .norm_form(&sol)
                    .unwrap_or_else(|err| panic!("d={d} N={target} {sol}: {err}"));
                let matches = matches!(
                    (target, &form),
                    (1, NormForm::UnitPlus { .. })
                        | (-1, NormForm::UnitMinus { .. })
                        | (6, NormForm::NormSix { .. })
                        | (-6, NormForm::NormMinusSix { .. })
                );
                assert!(matches, "d={d} N={target} {sol}: wrong variant");
                assert_eq!(form.reconstruct(), sol, "d={d} N={target}");
                checked += 1;
            }
        }
    }
    report(
        "4",
        checked == 5 * 4 * 50,
        &format!("{checked}/1000 enumerated elements match their mandated residue forms"),
    );
}

#[test]
fn c5_no_norm_pm_two() {
    for d in [10i64, 58, 106, 202, 298] {
        let c = ctx(d);
        let started = Instant::now();
        for target in [2i64, -2] {
            let set = c.solution_set(target).unwrap();
            assert!(!set.solvable, "d={d}, N={target} must be unsolvable");
            assert!(set.primitives.is_empty());
            assert!(set.search_bound.is_positive());
        }
        let elapsed = started.elapsed();
        assert!(
            elapsed < Duration::from_secs(5),
            "d={d}: certificates took {elapsed:?}"
        );
    }
    report(
        "5",
        true,
        "norm ±2 certified unsolvable with recorded bounds for all five rings (< 5 s each)",
    );
}

#[test]
fn c6_construction_property_suite() {
    let mut state = 0x5eed_c0de_u64;
    let mut constructed = 0;
    for d in [10i64, 58] {
        let c = ctx(d);
        let aux = AuxElements::for_ctx(&c);
        for offsets in [(1u8, 0u8), (1, 2), (3, 0), (3, 2), (2, 2)] {
            for _ in 0..25 {
                let m = uniform(&mut state, -50, 50);
                let k = uniform(&mut state, -50, 50);
                let n = e(4 * m + i64::from(offsets.0), 4 * k + i64::from(offsets.1));
                let q = builder::construct(&c, &n, 0)
                    .unwrap_or_else(|err| panic!("d={d} n={n}: {err}"));
                assert!(
                    builder::verify(&c, &q.n, &q.elements).unwrap().ok(),
                    "d={d} n={n}: constructed quadruple fails verification"
                );
                let tag = classify_mod4(&n);
                let case = case_for(&tag).unwrap();
                let params = builder::extract_params(case, &tag, &aux, &q.seed).unwrap();
                let (r, b) = builder::closed_form(&c, case, &params).unwrap();
                assert_eq!(q.r, r, "d={d} n={n}: engine r differs from closed form");
                assert_eq!(
                    q.elements[1], b,
                    "d={d} n={n}: engine b differs from closed form"
                );
                constructed += 1;
            }
        }
        // S-class rejection, all nine classes.
        for (c1, c2) in [
            (0u8, 1u8),
            (0, 2),
            (0, 3),
            (1, 1),
            (1, 3),
            (2, 1),
            (2, 3),
            (3, 1),
            (3, 3),
        ] {
            let m = uniform(&mut state, -50, 50);
            let k = uniform(&mut state, -50, 50);
            let n = e(4 * m + i64::from(c1), 4 * k + i64::from(c2));
            assert!(
                matches!(
                    builder::construct(&c, &n, 0),
                    Err(builder::BuildError::SClassNoQuadruple(_, _))
                ),
                "d={d} n={n} must be rejected"
            );
        }
    }
    report(
        "6",
        constructed == 2 * 5 * 25,
        &format!("{constructed}/250 random constructions verified and matched closed forms; S classes rejected"),
    );
}

fn run_cli(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_dnq"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

fn counterexample_records() -> Vec<serde_json::Value> {
    let (stdout, _, code) = run_cli(&["counterexample", "10", "--limit", "10"]);
    assert_eq!(code, 0);
    stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn c7a_counterexample_pipeline() {
    let started = Instant::now();
    let records = counterexample_records();
    let elapsed = started.elapsed();
    assert_eq!(records.len(), 10);

    let c = ctx(10);
    for rec in &records {
        let p: BigInt = rec["witness"]["p"].as_str().unwrap().parse().unwrap();
        assert!(primes::is_prime(&p), "{p} must be prime");
        assert_eq!(p.mod_floor(&BigInt::from(4)), BigInt::from(3));
        let n = RingElt {
            re: rec["n"]["re"].as_str().unwrap().parse().unwrap(),
            im: rec["n"]["im"].as_str().unwrap().parse().unwrap(),
        };
        assert!(matches!(
            counterexample::representable_diff_squares(&c, &n),
            Representability::No { .. }
        ));
        let elems: Vec<RingElt> = rec["quadruple"]["elements"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| RingElt {
                re: v["re"].as_str().unwrap().parse().unwrap(),
                im: v["im"].as_str().unwrap().parse().unwrap(),
            })
            .collect();
        let elems: [RingElt; 4] = elems.try_into().unwrap();
        assert!(builder::verify(&c, &n, &elems).unwrap().ok());
    }
    report(
        "7a",
        elapsed < Duration::from_secs(30),
        &format!("10 records, each prime ≡ 3 (mod 4), non-representable, verified, in {elapsed:?} (< 30 s)"),
    );
}

/// Pins the first emitted witness to (6, 1, 79). Known red: under the
/// deterministic scan order (x ascending, then y) the first valid witness
/// for d = 10 is (m, k, p) = (4, 0, 71), since 9² − 10·1² = 71 is prime
/// and ≡ 3 (mod 4); (5, 1, 31) follows, and the pinned witness is third.
/// The pipeline itself is exercised and green in `c7a`.
#[test]
fn c7b_first_witness_pin() {
    let records = counterexample_records();
    let first = &records[0]["witness"];
    let got = (
        first["m"].as_str().unwrap().to_owned(),
        first["k"].as_str().unwrap().to_owned(),
        first["p"].as_str().unwrap().to_owned(),
    );
    let ok = got == ("6".into(), "1".into(), "79".into());
    report(
        "7b",
        ok,
        &format!("first record's witness pinned to (6, 1, 79); stream yields {got:?} first"),
    );
}

#[test]
fn c8_radicand_hunt() {
    let hunt = counterexample::hunt_radicands(50);
    assert!(hunt.anomalies.is_empty(), "anomalies: {:?}", hunt.anomalies);
    let ds: Vec<BigInt> = hunt.candidates.iter().map(|c| c.d.clone()).collect();
    assert!(ds.contains(&BigInt::from(10)));
    assert!(ds.contains(&BigInt::from(58)));
    for cand in &hunt.candidates {
        assert!(cand.norm_minus_one_ok && cand.norm_six_ok);
        let c = RingCtx::new(cand.d.clone()).unwrap();
        let rep = pell::hypothesis_check(&c).unwrap();
        assert!(rep.holds, "d = {} fails the hypothesis", cand.d);
    }
    report(
        "8",
        true,
        &format!(
            "{} verified candidates (incl. d = 10, 58); every emitted d passes the hypothesis check",
            hunt.candidates.len()
        ),
    );
}

#[test]
fn c9_sqrt_oracle_equivalence() {
    const SAMPLES: usize = 10_000;
    const BOX: i64 = 1_000_000;
    let mut state = 0x0e5a_11ab_1e05_ac1e_u64; // fixed seed
    let mut checked = 0;
    for d in [10i64, 58] {
        let c = ctx(d);
        // Exhaustive oracle over all roots that can produce |re| ≤ BOX:
        // u² ≤ re ⇒ |u| ≤ 1000, d·v² ≤ re ⇒ |v| ≤ √(BOX/d).
        let v_max = (BOX as f64 / d as f64).sqrt() as i64 + 1;
        let mut oracle: HashMap<(i64, i64), RingElt> = HashMap::new();
        for u in 0..=1000i64 {
            for v in -v_max..=v_max {
                if u == 0 && v < 0 {
                    continue;
                }
                oracle.insert((u * u + d * v * v, 2 * u * v), e(u, v));
            }
        }
        for i in 0..SAMPLES / 2 {
            // Half uniform, half drawn from the square locus (clipped to
            // the box) so the Some path is exercised.
            let (re, im) = if i % 2 == 0 {
                (
                    uniform(&mut state, -BOX, BOX),
                    uniform(&mut state, -BOX, BOX),
                )
            } else {
                let u = uniform(&mut state, -1000, 1000);
                let v = uniform(&mut state, -v_max + 1, v_max - 1);
                let (re, im) = (u * u + d * v * v, 2 * u * v);
                if re.abs() > BOX || im.abs() > BOX {
                    (
                        uniform(&mut state, -BOX, BOX),
                        uniform(&mut state, -BOX, BOX),
                    )
                } else {
                    (re, im)
                }
            };
            let x = e(re, im);
            let expected = if re >= 0 {
                oracle.get(&(re, im)).cloned()
            } else {
                None
            };
            assert_eq!(
                c.sqrt(&x),
                expected,
                "disagreement at d={d}, x=({re}, {im})"
            );
            checked += 1;
        }
    }
    report(
        "9",
        checked == SAMPLES,
        &format!(
            "{checked}/10000 random elements agree with the exhaustive oracle; zero disagreements"
        ),
    );
}
