use std::collections::{BTreeMap, BTreeSet, VecDeque};

use schubert_core::bruhat::{self, IntPolynomial};
use schubert_core::rootsys::{shared, supported_types, Node, TypeLabel::*};
use schubert_core::schubert::*;
use schubert_core::series::{bott_prefix, q_binomial};
use schubert_core::weyl::CorootElement;

fn orbit_polynomial(lam: &CorootElement, nodes: &[Node]) -> IntPolynomial {
    let mut seen = BTreeSet::from([lam.clone()]);
    let mut queue = VecDeque::from([lam.clone()]);
    while let Some(mu) = queue.pop_front() {
        for &s in nodes {
            let nu = mu.fire(s);
            if seen.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
    }
    let mut c = vec![0i64; 1 + seen.iter().map(|m| m.length_s() as usize).max().unwrap()];
    for m in &seen {
        c[m.length_s() as usize] += 1;
    }
    IntPolynomial::new(c)
}

#[test]
fn levi_orbit_matches_direct_orbit() {
    for (t, n) in supported_types(4) {
        let rs = shared(t, n).unwrap();
        let levels = bruhat::enumerate_levels(&rs, 5).unwrap();
        for drop in 0..=n {
            let nodes: Vec<Node> = (0..=n).filter(|&i| i != drop).map(Node).collect();
            for lam in levels.values().flatten().filter(|l| i_minimal(l, &nodes)) {
                let d = levi_data(lam, &nodes).unwrap();
                assert_eq!(d.orbit, orbit_polynomial(lam, &nodes), "{t}{n} ({lam}) without s{drop}");
            }
        }
    }
}

#[test]
fn b3_orbit_decomposition_matches_series() {
    let rs = shared(B, 3).unwrap();
    let nodes = [Node(0), Node(2), Node(3)];
    let mut sum = IntPolynomial::zero();
    let mut tops = Vec::new();
    for lam in bruhat::enumerate_levels(&rs, 8).unwrap().values().flatten() {
        if i_minimal(lam, &nodes) {
            sum = sum.add(&levi_data(lam, &nodes).unwrap().orbit);
            tops.push(lam.coords().to_vec());
        }
    }
    assert_eq!(tops, vec![vec![0, 0, 0], vec![-1, 0, 1], vec![-2, 1, 0]]);
    let bott = bott_prefix(&rs, 8);
    for k in 0..=8 {
        assert_eq!(sum.coeff(k) as u64, bott.coeff(k), "degree {k}");
    }
}

#[test]
fn cpo_tops_are_palindromic_of_degree_dim() {
    for (t, n) in supported_types(4) {
        let rs = shared(t, n).unwrap();
        for d in enumerate_cpos(&rs).iter().filter(|d| d.dim <= 24) {
            let p = bruhat::poincare_polynomial(&d.top).unwrap();
            assert!(p.is_palindromic(), "{t}{n} {:?}", d.nodes);
            assert_eq!(p.degree(), Some(d.dim as usize));
            assert!(is_cpo(&d.top));
        }
    }
}

#[test]
fn dominant_cpo_criterion() {
    for (t, n) in supported_types(5) {
        let rs = shared(t, n).unwrap();
        for lam in bruhat::enumerate_levels(&rs, 10).unwrap().values().flatten() {
            if lam.is_dominant() && !lam.is_zero() {
                assert_eq!(is_cpo(lam), lam.alpha0() == 2, "{t}{n} ({lam})");
            }
        }
    }
}

#[test]
fn chevalley_positive_at_ascents() {
    for (t, n) in [(A, 2), (B, 3), (C, 3), (G, 2), (F, 4)] {
        let rs = shared(t, n).unwrap();
        for lam in bruhat::enumerate_levels(&rs, 6).unwrap().values().flatten() {
            for s in lam.ascents() {
                assert!(chevalley_coeff(lam, s).unwrap() > 0, "{t}{n} ({lam}) {s}");
            }
        }
    }
}

#[test]
fn spiral_poincare_is_q_binomial() {
    for n in 1..=3 {
        let rs = shared(A, n).unwrap();
        for k in 1..=3u64 {
            for fam in [SpiralFamily::Plain, SpiralFamily::Prime] {
                let lam = spiral_lambda(&rs, k, fam).unwrap();
                assert!(is_spiral(&lam));
                let p = bruhat::poincare_polynomial(&lam).unwrap();
                assert_eq!(p, q_binomial(n + k as usize, n), "A{n} k={k} {fam:?}");
            }
        }
    }
}

#[test]
fn classification_agrees_with_brute_force() {
    for (t, n) in [(A, 2), (A, 3), (B, 3), (C, 2), (G, 2), (D, 4)] {
        let rs = shared(t, n).unwrap();
        for lam in bruhat::enumerate_levels(&rs, 8).unwrap().values().flatten() {
            let v = classify(lam).unwrap();
            assert!(v.consistent(), "{t}{n} ({lam})");
            assert_eq!(v.palindromic, bruhat::is_palindromic(lam).unwrap());
            if v.smooth {
                assert!(pd_necessary(lam), "{t}{n} ({lam})");
            }
        }
    }
}

#[test]
fn chain_predicate_matches_enumeration() {
    for (t, n) in [(A, 1), (A, 2), (B, 3), (C, 2), (C, 3), (G, 2), (F, 4)] {
        let rs = shared(t, n).unwrap();
        let tops: BTreeSet<CorootElement> =
            enumerate_chains(&rs, 9).unwrap().into_iter().map(|c| c.top).collect();
        for lam in bruhat::enumerate_levels(&rs, 9).unwrap().values().flatten() {
            let brute = bruhat::poincare_polynomial(lam).unwrap().coeffs().iter().all(|&c| c == 1);
            assert_eq!(is_chain(lam).unwrap(), brute, "{t}{n} ({lam})");
            assert_eq!(lam.is_zero() || tops.contains(lam), brute, "{t}{n} ({lam})");
        }
    }
}

#[test]
fn chains_in_classical_types_are_cpo_iff_cup_palindromic() {
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for (t, n) in [(A, 2), (A, 3), (A, 4), (B, 3), (B, 4), (C, 2), (C, 3), (D, 4), (D, 5)] {
        let rs = shared(t, n).unwrap();
        for c in enumerate_chains(&rs, 12).unwrap().iter().filter(|c| !c.top.is_zero()) {
            let pal = c.cup_sequence.iter().eq(c.cup_sequence.iter().rev());
            assert_eq!(is_cpo(&c.top), pal, "{t}{n} ({}) {:?}", c.top, c.cup_sequence);
            if rs.is_simply_laced() {
                assert!(c.cup_sequence.iter().all(|&a| a == 1), "{t}{n} ({})", c.top);
            }
            *seen.entry(format!("{t}")).or_default() += 1;
        }
    }
    assert_eq!(seen.len(), 4);
}
