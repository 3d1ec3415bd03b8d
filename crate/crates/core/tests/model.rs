mod common;

use common::{candidate_count, enumerate_max, ENUMERATION_LIMIT};
use sdr_core::generators::{
    gen_box_cycle_power, gen_cycle_power_blocks, gen_few_lines_tight, gen_hv_tight, gen_quadratic_lower,
    gen_random_instance, Family, GenSpec,
};
use sdr_core::model::{
    build_intersection_graph, is_sdr, max_sdr_bruteforce, max_sdr_bruteforce_with, rainbow_independent_set, Instance,
    OracleOptions,
};
use sdr_core::Error;

fn check(inst: &Instance, what: &str) {
    assert!(candidate_count(inst) <= ENUMERATION_LIMIT, "{what} is too large to enumerate");
    let r = max_sdr_bruteforce(inst, None).unwrap();
    assert_eq!(r.size, enumerate_max(inst), "{what}");
    assert!(is_sdr(inst, &r.witness), "{what}");
}

fn sampled(family: Family, params: &[(&'static str, i64)], seeds: u64) {
    for seed in 0..seeds {
        let spec = GenSpec::new(family, params.iter().copied(), seed);
        let inst = gen_random_instance(&spec).unwrap();
        check(&inst, &format!("{spec:?}"));
    }
}

#[test]
fn oracle_matches_enumerator_on_samples() {
    sampled(Family::RandomIntervals, &[("n", 3), ("blocks", 3)], 100);
    sampled(Family::RandomIntervals, &[("n", 3), ("blocks", 4), ("lines", 2)], 100);
    sampled(Family::RandomFewLines, &[("n", 3), ("m", 2)], 100);
    sampled(Family::RandomFewLines, &[("n", 4), ("m", 2)], 50);
    sampled(Family::RandomTwoSweep, &[("n", 2)], 100);
    sampled(Family::RandomTwoSweep, &[("n", 3)], 50);
    sampled(Family::RandomSegments, &[("n", 3), ("blocks", 5), ("k", 3)], 100);
}

#[test]
fn oracle_matches_enumerator_on_constructions() {
    // (5, 3) with 10 blocks has 4^10 > 10^6 candidates.
    for (n, m) in [(4, 2), (5, 2)] {
        check(&gen_few_lines_tight(n, m, 10).unwrap(), &format!("few_lines_tight({n},{m})"));
    }
    for n in 2..=4 {
        check(&gen_hv_tight(n).unwrap(), &format!("hv_tight({n})"));
    }
    check(&gen_quadratic_lower(6, 3).unwrap(), "quadratic_lower(6,3)");
    for (n, q) in [(2, 3), (3, 2), (3, 3)] {
        check(&gen_cycle_power_blocks(n, q).unwrap(), &format!("cycle_power({n},{q})"));
    }
    check(&gen_box_cycle_power(1, 4).unwrap(), "box_cycle_power(1,4)");
}

#[test]
fn rainbow_agrees_with_oracle() {
    for (n, q) in [(2, 3), (3, 2), (3, 3), (4, 2)] {
        let inst = gen_cycle_power_blocks(n, q).unwrap();
        let g = build_intersection_graph(&inst).unwrap();
        let best = max_sdr_bruteforce(&inst, None).unwrap().size;
        for size in 1..=n {
            let found = rainbow_independent_set(&g, inst.blocks(), size).unwrap();
            assert_eq!(found.is_some(), size <= best, "cycle_power({n},{q}) size {size}");
            if let Some(a) = found {
                assert_eq!(a.len(), size);
                assert!(is_sdr(&inst, &a));
            }
        }
    }
}

#[test]
fn target_stops_early() {
    let inst = gen_quadratic_lower(8, 4).unwrap();
    let full = max_sdr_bruteforce(&inst, None).unwrap();
    let early = max_sdr_bruteforce(&inst, Some(3)).unwrap();
    assert_eq!(early.size, 3);
    assert!(early.nodes <= full.nodes);
}

#[test]
fn budget_is_reported() {
    let inst = gen_quadratic_lower(8, 4).unwrap();
    let opts = OracleOptions {
        target: None,
        node_budget: 10,
    };
    assert_eq!(max_sdr_bruteforce_with(&inst, &opts), Err(Error::BudgetExceeded { budget: 10 }));
}
