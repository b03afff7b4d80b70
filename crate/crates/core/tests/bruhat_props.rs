use schubert_core::bruhat::{self, covers_in_window, dual_polynomial, IntPolynomial};
use schubert_core::rootsys::{shared, supported_types, TypeLabel::*};
use schubert_core::series::bott_prefix;

use proptest::prelude::*;

#[test]
fn covers_drop_length_and_pass_subword_test() {
    for (t, n) in [(A, 2), (A, 3), (B, 3), (C, 2), (G, 2)] {
        let rs = shared(t, n).unwrap();
        for lam in bruhat::enumerate_levels(&rs, 7).unwrap().values().flatten() {
            for mu in bruhat::covers(lam) {
                assert_eq!(mu.length_s() + 1, lam.length_s(), "{t}{n} ({lam}) > ({mu})");
                assert!(bruhat::subword_leq(&mu, lam).unwrap());
            }
        }
    }
}

#[test]
fn covers_stable_under_window_doubling() {
    for (t, n) in supported_types(4) {
        let rs = shared(t, n).unwrap();
        let max = if n <= 2 { 8 } else { 6 };
        for lam in bruhat::enumerate_levels(&rs, max).unwrap().values().flatten() {
            let base = covers_in_window(lam, 1, false);
            assert_eq!(base, covers_in_window(lam, 2, true), "{t}{n} ({lam})");
        }
    }
}

#[test]
fn ideals_are_graded_with_unique_extremes() {
    for (t, n) in [(A, 2), (B, 3), (C, 2), (G, 2), (D, 4)] {
        let rs = shared(t, n).unwrap();
        for lam in bruhat::enumerate_levels(&rs, 7).unwrap().values().flatten() {
            let ideal = bruhat::order_ideal(lam).unwrap();
            let members = ideal.members();
            assert!(members[0].is_zero());
            assert_eq!(members.iter().filter(|m| m.length_s() == 0).count(), 1);
            assert_eq!(members.iter().filter(|m| m.length_s() == lam.length_s()).count(), 1);
            for (i, m) in members.iter().enumerate() {
                for &j in ideal.covered_by(i) {
                    assert_eq!(ideal.length_of(j) + 1, m.length_s());
                }
                if i > 0 {
                    assert!(!ideal.covered_by(i).is_empty());
                }
            }
            let p = ideal.poincare();
            assert_eq!(p.coeff(0), 1);
            assert_eq!(p.coeff(lam.length_s() as usize), 1);
            assert_eq!(p.eval_at_one() as usize, ideal.len());
        }
    }
}

#[test]
fn level_counts_match_series() {
    for (t, n) in supported_types(5) {
        let rs = shared(t, n).unwrap();
        let max = 8;
        let levels = bruhat::enumerate_levels(&rs, max).unwrap();
        let bott = bott_prefix(&rs, max as usize);
        for l in 0..=max {
            let got = levels.get(&l).map_or(0, |v| v.len() as u64);
            assert_eq!(got, bott.coeff(l as usize), "{t}{n} level {l}");
        }
    }
}

#[test]
fn palindromic_elements_have_one_negative_node() {
    for (t, n) in [(A, 2), (A, 3), (B, 3), (C, 2), (C, 3), (G, 2), (D, 4)] {
        let rs = shared(t, n).unwrap();
        for lam in bruhat::enumerate_levels(&rs, 8).unwrap().values().flatten() {
            if !lam.is_zero() && bruhat::is_palindromic(lam).unwrap() {
                assert_eq!(lam.descents().len(), 1, "{t}{n} ({lam})");
            }
        }
    }
}

proptest! {
    #[test]
    fn dual_is_involution(mut c in prop::collection::vec(-50i64..50, 1..12)) {
        c[0] = 1;
        let p = IntPolynomial::new(c);
        prop_assert_eq!(dual_polynomial(&dual_polynomial(&p)), p);
    }
}
