use boxball::evolution::{self, Capacity};
use boxball::rmatrix::{self, pair, pair_in_order};
use boxball::solitons::{
    self, detect, predict_m_body, predict_m_body_with_word, run_scattering, state_from_labels,
};
use boxball::{ensemble, verify};
use boxball::{CrystalParams, Element, Parallelism, SolitonLabel, State, TensorElement};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(n: u32) -> CrystalParams {
    CrystalParams::new(n).unwrap()
}

fn el(s: &str) -> Element {
    Element::parse(s).unwrap()
}

fn lab(c: i64, s: &str) -> SolitonLabel {
    SolitonLabel::new(c, el(s))
}

fn element_strategy(n: u8, max_len: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec(1..=n, 1..=max_len).prop_map(|mut v| {
        v.sort();
        Element::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn pairing_summary_is_independent_of_pick_order(
        (b, b2, order) in (element_strategy(5, 6), element_strategy(5, 6))
            .prop_filter("l >= l'", |(b, b2)| b.len() >= b2.len())
            .prop_flat_map(|(b, b2)| {
                let idx: Vec<usize> = (0..b2.len()).collect();
                (Just(b), Just(b2), Just(idx).prop_shuffle())
            })
    ) {
        let params = p(5);
        let canonical = pair(params, &b, &b2).unwrap();
        let other = pair_in_order(params, &b, &b2, &order).unwrap();
        prop_assert_eq!(canonical.winding_count(), other.winding_count());
        prop_assert_eq!(&canonical.unpaired_left, &other.unpaired_left);
        prop_assert_eq!(canonical.image(), other.image());
    }

    #[test]
    fn evolution_round_trips_and_keeps_content(seed in any::<u64>(), l in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = p(rng.gen_range(2..=5));
        let s = ensemble::random_state(&mut rng, params, 25, 12);
        let fwd = evolution::step(&s, Capacity::Finite(l)).unwrap();
        prop_assert_eq!(&evolution::step_inverse(&fwd, Capacity::Finite(l)).unwrap(), &s);
        let mut a = s.reading_word();
        let mut b = fwd.reading_word();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn energies_are_concave_and_bounded(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = p(rng.gen_range(2..=5));
        let s = ensemble::random_state(&mut rng, params, 30, 12);
        let sp = evolution::spectrum(&s, 6).unwrap();
        for l in 1..=sp.top() {
            prop_assert!(sp.e(l) >= sp.e(l - 1));
            prop_assert!(sp.e(l) <= s.nonvacuum_count() as u64);
            prop_assert!(sp.n(l) >= 0, "N_{} = {} for {}", l, sp.n(l), s);
        }
        // E_l = sum_k min(k, l) N_k.
        for l in 1..=sp.top() {
            let rebuilt: i64 = (1..=sp.top()).map(|k| k.min(l) as i64 * sp.n(k)).sum();
            prop_assert_eq!(rebuilt, sp.e(l) as i64);
        }
    }
}

#[test]
fn iso_commutes_with_crystal_operators() {
    for n in 2..=4 {
        let params = p(n);
        for l in 1..=3 {
            for l2 in 1..=3 {
                for b in params.elements(l) {
                    for b2 in params.elements(l2) {
                        let dom = TensorElement::pair(b.clone(), b2.clone());
                        let (x, y) = rmatrix::iso(params, &b, &b2).unwrap();
                        let cod = TensorElement::pair(x, y);
                        for i in 0..params.n() {
                            let mapped = dom.e(params, i).unwrap().map(|t| {
                                let f = t.factors();
                                let (x, y) = rmatrix::iso(params, &f[0], &f[1]).unwrap();
                                TensorElement::pair(x, y)
                            });
                            assert_eq!(mapped, cod.e(params, i).unwrap(), "e_{i} on {dom:?}");
                            let mapped = dom.f(params, i).unwrap().map(|t| {
                                let f = t.factors();
                                let (x, y) = rmatrix::iso(params, &f[0], &f[1]).unwrap();
                                TensorElement::pair(x, y)
                            });
                            assert_eq!(mapped, cod.f(params, i).unwrap(), "f_{i} on {dom:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn energy_satisfies_the_e0_step_rule() {
    for n in 2..=4 {
        let params = p(n);
        for l in 1..=3 {
            for l2 in 1..=3 {
                assert_eq!(
                    rmatrix::energy(
                        params,
                        &params.vacuum_element(l),
                        &params.vacuum_element(l2)
                    )
                    .unwrap(),
                    0
                );
                for b in params.elements(l) {
                    for b2 in params.elements(l2) {
                        let h = rmatrix::energy(params, &b, &b2).unwrap();
                        let (bt2, bt) = rmatrix::iso(params, &b, &b2).unwrap();
                        let dom = TensorElement::pair(b.clone(), b2.clone());
                        for i in 0..params.n() {
                            let Some(up) = dom.e(params, i).unwrap() else {
                                continue;
                            };
                            let f = up.factors();
                            let h_up = rmatrix::energy(params, &f[0], &f[1]).unwrap();
                            let left =
                                params.phi(&b, 0).unwrap() >= params.epsilon(&b2, 0).unwrap();
                            let left_img =
                                params.phi(&bt2, 0).unwrap() >= params.epsilon(&bt, 0).unwrap();
                            let step = match (i, left, left_img) {
                                (0, true, true) => 1,
                                (0, false, false) => -1,
                                _ => 0,
                            };
                            assert_eq!(h_up, h + step, "e_{i} on {dom:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn iso_is_an_involution_preserving_energy() {
    for n in 2..=4 {
        let params = p(n);
        for l in 1..=3 {
            for l2 in 1..=3 {
                for b in params.elements(l) {
                    for b2 in params.elements(l2) {
                        let h = rmatrix::energy(params, &b, &b2).unwrap();
                        let (x, y) = rmatrix::iso(params, &b, &b2).unwrap();
                        assert_eq!(rmatrix::energy(params, &x, &y).unwrap(), h, "{b:?} {b2:?}");
                        assert_eq!(
                            rmatrix::iso(params, &x, &y).unwrap(),
                            (b.clone(), b2.clone())
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn yang_baxter_with_shifted_exponents() {
    for sizes in [[1, 2, 3], [3, 1, 2], [2, 2, 1]] {
        let report = rmatrix::check_yang_baxter(p(3), sizes, 1, Parallelism::Parallel).unwrap();
        assert!(report.passed(), "{:?}", report.counterexample);
    }
}

#[test]
fn commuting_family_on_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let states: Vec<State> = (0..200)
        .map(|_| ensemble::random_state(&mut rng, p(4), 30, 10))
        .collect();
    let caps = [
        Capacity::Finite(1),
        Capacity::Finite(2),
        Capacity::Finite(3),
        Capacity::Finite(4),
        Capacity::Infinite,
    ];
    assert!(verify::invertibility(&states, &caps, Parallelism::Parallel)
        .unwrap()
        .passed());
    for s in &states {
        let a = evolution::step(
            &evolution::step(s, Capacity::Finite(2)).unwrap(),
            Capacity::Infinite,
        )
        .unwrap();
        let b = evolution::step(
            &evolution::step(s, Capacity::Infinite).unwrap(),
            Capacity::Finite(2),
        )
        .unwrap();
        assert_eq!(a, b);
        let cap = evolution::effective_capacity(s).unwrap();
        assert_eq!(
            evolution::step(s, Capacity::Finite(cap + 3)).unwrap(),
            evolution::step(s, Capacity::Infinite).unwrap()
        );
    }
}

#[test]
fn local_energies_mark_the_soliton_tail() {
    // -H_j = 1 exactly on the min(k, l) cells after the last soliton letter.
    let params = p(5);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for l in 1..=5 {
        for k in 1..=6 {
            let mut cells = vec![5; 4];
            cells.extend(ensemble::random_soliton(&mut rng, params, l));
            cells.extend(vec![5; 8]);
            let s = State::new(params, cells, 0).unwrap();
            let trace = evolution::carrier_pass(&s, k).unwrap();
            let last = 4 + l - 1;
            for (j, h) in trace.h_values.iter().enumerate() {
                let expected = if j > last && j <= last + k.min(l) {
                    -1
                } else {
                    0
                };
                assert_eq!(*h, expected, "l={l} k={k} j={j} in {s}");
            }
        }
    }
}

#[test]
fn three_soliton_scattering_matches_factorized_prediction() {
    let params = p(4);
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..150 {
        let mut lengths: Vec<usize> = rand::seq::index::sample(&mut rng, 5, 3)
            .into_iter()
            .map(|x| x + 1)
            .collect();
        lengths.sort_by(|a, b| b.cmp(a));
        let s =
            ensemble::random_soliton_state(&mut rng, params, &lengths, lengths[0], lengths[0] + 6);
        let report = run_scattering(&s, Capacity::Infinite, 1000).unwrap();
        assert!(
            report.matched,
            "{s}: {:?} vs {:?}",
            report.out_simulated, report.out_predicted
        );
        assert_eq!(report.tableau_in, report.tableau_out);
    }
}

#[test]
fn finite_rule_scattering_matches_prediction() {
    let params = p(4);
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..150 {
        let l1 = rng.gen_range(2..=5);
        let l2 = rng.gen_range(1..l1);
        let r = rng.gen_range(l2 + 1..=6);
        let s = ensemble::random_soliton_state(&mut rng, params, &[l1, l2], l1, l1 + 8);
        let report = run_scattering(&s, Capacity::Finite(r), 2000).unwrap();
        assert!(
            report.matched,
            "T_{r} on {s}: {:?} vs {:?}",
            report.out_simulated, report.out_predicted
        );
    }
}

#[test]
fn highest_weight_pairs_scatter_as_stated() {
    // (1^i) ⊗ (1^l 2^k) -> (1^{l+k}) ⊗ (1^{i-k} 2^k), H = -k.
    for n in [3, 4] {
        let params = p(n);
        for i in 2..=6usize {
            for l in 0..i {
                for k in 0..i - l {
                    if l + k == 0 {
                        continue;
                    }
                    let b1 = Element::new(vec![1; i]).unwrap();
                    let mut v = vec![1; l];
                    v.extend(vec![2; k]);
                    let b2 = Element::new(v).unwrap();
                    let reduced = CrystalParams::new(n - 1).unwrap();
                    let colors: Vec<u8> = (1..=(n as u8 - 2)).collect();
                    assert!(TensorElement::pair(b1.clone(), b2.clone())
                        .is_highest_weight(reduced, &colors)
                        .unwrap());
                    assert_eq!(rmatrix::energy(reduced, &b1, &b2).unwrap(), -(k as i32));
                    let gap = (2 * i + 2) as i64;
                    let labels = [
                        SolitonLabel::new(0, b1.clone()),
                        SolitonLabel::new(-gap, b2.clone()),
                    ];
                    let s = state_from_labels(params, &labels).unwrap();
                    let report = run_scattering(&s, Capacity::Infinite, 500).unwrap();
                    let mut w = vec![1; i - k];
                    w.extend(vec![2; k]);
                    let out = &report.out_simulated;
                    assert_eq!(out[0].element, Element::new(vec![1; l + k]).unwrap());
                    assert_eq!(out[1].element, Element::new(w).unwrap());
                    let delta = (2 * l + k) as i64;
                    assert_eq!(out[0].exponent, -gap + delta);
                    assert_eq!(out[1].exponent, -delta);
                    assert!(report.matched);
                }
            }
        }
    }
}

fn apply_to_labels(
    reduced: CrystalParams,
    labels: &[SolitonLabel],
    color: u8,
    raise: bool,
) -> Option<Vec<SolitonLabel>> {
    let t = TensorElement::new(labels.iter().map(|x| x.element.clone()).collect()).unwrap();
    let moved = if raise {
        t.e(reduced, color).unwrap()?
    } else {
        t.f(reduced, color).unwrap()?
    };
    Some(
        moved
            .factors()
            .iter()
            .zip(labels)
            .map(|(b, x)| SolitonLabel::new(x.exponent, b.clone()))
            .collect(),
    )
}

#[test]
fn scattering_commutes_with_reduced_crystal_operators() {
    let params = p(4);
    let reduced = p(3);
    // The e_2 instance worked out for the three-soliton example.
    let input = [lab(0, "233"), lab(-6, "11"), lab(-11, "2")];
    let moved = apply_to_labels(reduced, &input, 2, true).unwrap();
    assert_eq!(moved, vec![lab(0, "223"), lab(-6, "11"), lab(-11, "2")]);
    let report = run_scattering(
        &state_from_labels(params, &moved).unwrap(),
        Capacity::Infinite,
        100,
    )
    .unwrap();
    assert_eq!(
        report.out_simulated,
        vec![lab(-8, "3"), lab(-4, "12"), lab(-5, "122")]
    );

    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut exercised = 0;
    for _ in 0..200 {
        let l1 = rng.gen_range(2..=4);
        let l2 = rng.gen_range(1..l1);
        let s = ensemble::random_soliton_state(&mut rng, params, &[l1, l2], l1, l1 + 6);
        let base = run_scattering(&s, Capacity::Infinite, 500).unwrap();
        let color = rng.gen_range(1..=2);
        let raise = rng.gen_bool(0.5);
        let Some(moved_in) = apply_to_labels(reduced, &base.in_labels, color, raise) else {
            continue;
        };
        let moved_out = apply_to_labels(reduced, &base.out_simulated, color, raise)
            .expect("operator acts on the outgoing labels too");
        let r = run_scattering(
            &state_from_labels(params, &moved_in).unwrap(),
            Capacity::Infinite,
            500,
        )
        .unwrap();
        assert_eq!(r.out_simulated, moved_out, "{s} with color {color}");
        exercised += 1;
    }
    assert!(exercised > 50);
}

/// All reduced words of the order-reversing permutation of `m` items.
fn reduced_words(m: usize) -> Vec<Vec<usize>> {
    fn go(order: &mut Vec<usize>, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let mut any = false;
        for j in 0..order.len() - 1 {
            if order[j] < order[j + 1] {
                any = true;
                order.swap(j, j + 1);
                word.push(j);
                go(order, word, out);
                word.pop();
                order.swap(j, j + 1);
            }
        }
        if !any {
            out.push(word.clone());
        }
    }
    let mut out = Vec::new();
    go(&mut (0..m).collect(), &mut Vec::new(), &mut out);
    out
}

#[test]
fn factorization_is_independent_of_bracketing() {
    assert_eq!(reduced_words(3).len(), 2);
    assert_eq!(reduced_words(4).len(), 16);
    let params = p(5);
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for _ in 0..100 {
        let m = rng.gen_range(3..=4);
        let mut lengths: Vec<usize> = rand::seq::index::sample(&mut rng, 5, m)
            .into_iter()
            .map(|x| x + 1)
            .collect();
        lengths.sort_by(|a, b| b.cmp(a));
        let labels: Vec<SolitonLabel> = lengths
            .iter()
            .map(|&l| {
                let mut v = ensemble::random_soliton(&mut rng, params, l);
                v.reverse();
                SolitonLabel::new(rng.gen_range(-30..30), Element::new(v).unwrap())
            })
            .collect();
        let reference = predict_m_body(params, &labels).unwrap();
        for word in reduced_words(m) {
            assert_eq!(
                predict_m_body_with_word(params, &labels, &word).unwrap(),
                reference
            );
        }
        let total_in: i64 = labels.iter().map(|x| x.exponent).sum();
        let total_out: i64 = reference.iter().map(|x| x.exponent).sum();
        assert_eq!(total_in, total_out);
    }
}

#[test]
fn two_soliton_classical_case() {
    // n = 2: the reduced alphabet has a single letter and the shift is 2 l2.
    let params = p(2);
    let s = State::parse(params, "111..1.....").unwrap();
    let report = run_scattering(&s, Capacity::Infinite, 100).unwrap();
    assert!(report.matched);
    assert_eq!(report.out_simulated, vec![lab(-5 + 2, "1"), lab(-2, "111")]);
}

#[test]
fn detect_rejects_rows_during_collision() {
    let params = p(4);
    let start = State::parse(params, "332...11...2..............").unwrap();
    let rows = evolution::trajectory(&start, Capacity::Infinite, 6).unwrap();
    assert!(detect(&rows[2], 2).is_err());
    assert!(detect(&rows[3], 3).is_err());
    for t in [0, 1, 4, 5, 6] {
        assert!(detect(&rows[t], t as i64).is_ok(), "row {t}");
    }
    let labels = solitons::labels(&detect(&rows[6], 6).unwrap(), Capacity::Infinite);
    assert_eq!(labels, vec![lab(-8, "3"), lab(-4, "13"), lab(-5, "122")]);
}
