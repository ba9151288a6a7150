//! Acceptance suite: one test per criterion, each printing a `criterion N:
//! PASS` line once its assertions hold (run with `--nocapture` to see them).
//! Every tolerance and range is pinned here, not configured elsewhere.

use std::process::Command;

use rand::{Rng, SeedableRng};

use bpa::counting::{
    fubini, j_closed_form, j_multinomial, j_recurrence, p_general_recurrence_thm6,
    p_general_recurrence_thm8, p_multinomial, p_via_lemma1, p_via_theorem4, p_via_theorem5,
    p_via_theorem7,
};
use bpa::egf::{general_series, nelsen_schmidt_series};
use bpa::enumerate::{enumerate_barred, enumerate_restricted};
use bpa::exact::{count, rational, Count};
use bpa::verify::{
    bracketed_integer, chains_in_power_set, check_conjecture2, check_identity,
    conjecture1_exact, conjecture1_truncated, IdentityId, IdentitySpec, Ranges, Status,
};
use bpa::RestrictionProfile;

/// `p^k_n` reference used throughout: the `k = 0` column is the Fubini
/// sequence.
fn p_one_free(n: u32, k: u32) -> Count {
    if k == 0 {
        fubini(n)
    } else {
        p_via_theorem4(n, k)
    }
}

#[test]
fn criterion_01_fubini_golden_values() {
    let expected: [u64; 6] = [1, 1, 3, 13, 75, 541];
    for (n, &want) in expected.iter().enumerate() {
        assert_eq!(fubini(n as u32), count(want), "fubini({n})");
    }
    println!("criterion 1: PASS — fubini(0..=5) = 1, 1, 3, 13, 75, 541");
}

#[test]
fn criterion_02_four_route_agreement_unrestricted() {
    for n in 0..=6u32 {
        for k in 0..=3u32 {
            let closed = j_closed_form(n, k);
            assert_eq!(closed, j_recurrence(n, k), "recurrence n={n} k={k}");
            assert_eq!(closed, j_multinomial(n, k), "multinomial n={n} k={k}");
            let streamed = enumerate_barred(n, k).expect("within ceiling").count();
            assert_eq!(closed, count(streamed as u64), "enumeration n={n} k={k}");
        }
    }
    println!(
        "criterion 2: PASS — closed form = recurrence = multinomial = enumeration \
         for n ≤ 6, k ≤ 3"
    );
}

#[test]
fn criterion_03_six_route_agreement_one_free_section() {
    for n in 0..=6u32 {
        for k in 0..=3u32 {
            let reference = p_one_free(n, k);
            if k >= 1 {
                assert_eq!(p_via_theorem4(n, k), reference, "binomial formula n={n} k={k}");
                assert_eq!(p_via_theorem5(n, k - 1), reference, "transform n={n} k={k}");
                if n >= 1 {
                    assert_eq!(p_via_lemma1(n, k), reference, "split formula n={n} k={k}");
                }
            }
            assert_eq!(
                p_general_recurrence_thm8(n, k, 1),
                reference,
                "one-free recurrence n={n} k={k}"
            );
            let egf = nelsen_schmidt_series(k, n as usize)
                .integer_coefficient(n as usize)
                .expect("integral coefficient");
            assert_eq!(egf, reference, "egf n={n} k={k}");
            let profile = RestrictionProfile::one_free(k);
            let streamed = enumerate_restricted(n, &profile)
                .expect("within ceiling")
                .count();
            assert_eq!(count(streamed as u64), reference, "enumeration n={n} k={k}");
        }
    }
    println!(
        "criterion 3: PASS — six routes agree on the one-free-section family \
         for n ≤ 6, k ≤ 3"
    );
}

#[test]
fn criterion_04_general_case_agreement() {
    for n in 0..=5u32 {
        for r in 0..=3u32 {
            for j in 1..=3u32 {
                let reference = p_general_recurrence_thm8(n, r, j);
                assert_eq!(
                    p_general_recurrence_thm6(n, r, j),
                    reference,
                    "free-section recurrence n={n} r={r} j={j}"
                );
                assert_eq!(
                    p_via_theorem7(n, r, j),
                    reference,
                    "bar-doubling n={n} r={r} j={j}"
                );
                let profile = RestrictionProfile::canonical(r, j).unwrap();
                assert_eq!(
                    p_multinomial(n, r, j, &profile).unwrap(),
                    reference,
                    "convolution n={n} r={r} j={j}"
                );
                let egf = general_series(r, j, n as usize)
                    .integer_coefficient(n as usize)
                    .expect("integral coefficient");
                assert_eq!(egf, reference, "egf n={n} r={r} j={j}");
                let streamed = enumerate_restricted(n, &profile)
                    .expect("within ceiling")
                    .count();
                assert_eq!(count(streamed as u64), reference, "enumeration n={n} r={r} j={j}");
            }
        }
    }
    for n in 0..=8u32 {
        for j in 1..=4u32 {
            assert_eq!(
                p_general_recurrence_thm8(n, 0, j),
                j_closed_form(n, j - 1),
                "boundary collapse n={n} j={j}"
            );
        }
    }
    println!(
        "criterion 4: PASS — five formula routes and enumeration agree for n ≤ 5, \
         r ≤ 3, j ≤ 3, and p with no restricted sections collapses to the \
         unrestricted counts for n ≤ 8, j ≤ 4"
    );
}

#[test]
fn criterion_05_series_conjecture_exact_and_bracketed() {
    let mut cells = 0u32;
    for n in 0..=20u32 {
        for k in 0..=6u32 {
            assert_eq!(conjecture1_exact(n, k), p_one_free(n, k), "n={n} k={k}");
            cells += 1;
        }
    }
    assert_eq!(cells, 147);

    let tolerance = rational(1, 4);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x0bb1);
    for _ in 0..20 {
        let n = rng.random_range(0..=20u32);
        let k = rng.random_range(0..=6u32);
        let (lower, upper) = conjecture1_truncated(n, k, &tolerance);
        assert!(&upper - &lower <= tolerance, "width at n={n} k={k}");
        let bracketed = bracketed_integer(&lower, &upper)
            .unwrap_or_else(|| panic!("no unique integer in bracket at n={n} k={k}"));
        assert_eq!(bracketed, conjecture1_exact(n, k), "bracket value n={n} k={k}");
    }
    println!(
        "criterion 5: PASS — series value equals the closed form on 147 cells \
         (n ≤ 20, k ≤ 6); 20 sampled brackets at tolerance 1/4 pin the same integer"
    );
}

#[test]
fn criterion_06_self_convolution_conjecture() {
    let report = check_conjecture2(20, 6);
    assert_eq!(report.status, Status::Pass);
    assert_eq!(report.cells_checked, 21 * 7);
    println!("criterion 6: PASS — self-convolution identity holds for n ≤ 20, r ≤ 6");
}

#[test]
fn criterion_07_chains_in_power_set() {
    let expected: [u64; 5] = [1, 3, 11, 51, 299];
    for (n, &want) in expected.iter().enumerate() {
        let n = n as u32;
        assert_eq!(chains_in_power_set(n).unwrap(), count(want), "chains({n})");
        assert_eq!(chains_in_power_set(n).unwrap(), p_one_free(n, 2), "claim at n={n}");
    }
    println!(
        "criterion 7: PASS — power-set chains for n = 0..4 are 1, 3, 11, 51, 299, \
         matching the two-restricted-section counts"
    );
}

#[test]
fn criterion_08_erratum_evidence() {
    let ranges = Ranges {
        n_max: 5,
        k_max: 3,
        r_max: 3,
        j_max: 3,
    };
    let corrected = check_identity(&IdentitySpec::new(IdentityId::Thm6, ranges)).unwrap();
    assert_eq!(corrected.status, Status::Pass, "corrected recurrence must pass");

    let literal = check_identity(&IdentitySpec::new(IdentityId::Thm6Literal, ranges)).unwrap();
    assert_eq!(literal.status, Status::Fail, "literal statement must fail");
    let cex = literal.counterexample.expect("failure carries a counterexample");
    let cell = (cex.params["n"], cex.params["r"], cex.params["j"]);
    assert!(
        cell <= (2, 1, 2),
        "first failure {cell:?} must come at or before (2, 1, 2)"
    );
    println!(
        "criterion 8: PASS — literal free-section recurrence fails first at \
         (n, r, j) = {cell:?} with lhs {} vs rhs {}; corrected form passes n ≤ 5, \
         r ≤ 3, j ≤ 3",
        cex.lhs, cex.rhs
    );
}

#[test]
fn criterion_09_integrality_through_order_12() {
    for k in 0..=4u32 {
        nelsen_schmidt_series(k, 12)
            .integer_sequence()
            .unwrap_or_else(|e| panic!("one-free series k={k}: {e}"));
        general_series(0, k + 1, 12)
            .integer_sequence()
            .unwrap_or_else(|e| panic!("reciprocal power k={k}: {e}"));
    }
    for r in 0..=3u32 {
        for j in 1..=3u32 {
            general_series(r, j, 12)
                .integer_sequence()
                .unwrap_or_else(|e| panic!("general series r={r} j={j}: {e}"));
        }
    }
    println!(
        "criterion 9: PASS — every n!·coefficient through order 12 has denominator 1"
    );
}

#[test]
fn criterion_10_interface_determinism() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_bpa"))
            .args(["count", "J", "--n", "0..5", "--k", "0", "--format", "bfile"])
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        out.stdout
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "b-file output must be byte-identical across runs");
    assert_eq!(
        first,
        include_bytes!("golden/fubini_k0.bfile"),
        "b-file output must match the vendored golden file"
    );
    println!("criterion 10: PASS — b-file output is byte-identical across runs and matches the golden file");
}
