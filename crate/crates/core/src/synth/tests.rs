use super::*;
use crate::circuit::Gate;
use crate::f2linalg::{entry_mask, BitMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn example_f() -> Permutation {
    let images = (0..256)
        .map(|x| match x {
            0 => 0,
            254 => 1,
            255 => 2,
            x => x + 2,
        })
        .collect();
    Permutation::from_images(8, images).unwrap()
}

fn pointwise(c: &Circuit) -> Vec<usize> {
    (0..1u64 << c.width())
        .map(|x| c.apply(x) as usize)
        .collect()
}

fn is_swaps(c: &Circuit, pairs: &[(usize, usize)]) -> bool {
    let mut expect: Vec<usize> = (0..1 << c.width()).collect();
    for &(a, b) in pairs {
        expect.swap(a, b);
    }
    pointwise(c) == expect
}

/// `y_i = e_1 + |i−1⟩` in the last m wires.
fn y(i: usize, m: usize, n: usize) -> u64 {
    debug_assert!(i <= 1 << m);
    entry_mask(n, 1) | (i as u64 - 1)
}

#[test]
fn worked_example_selection() {
    let sel = select_pairs_independent(&example_f(), 2).unwrap();
    assert_eq!(sel.pairs, vec![(1, 3), (4, 6)]);
    assert_eq!(sel.fillers, vec![(4, 8)]);
    assert_eq!(sel.u.column_bits(), &[1, 3, 4, 8, 16, 32, 64, 128]);
    assert_eq!(sel.v.column_bits(), &[1, 3, 4, 6, 16, 32, 64, 128]);
}

#[test]
fn worked_example_pe() {
    let sel = select_pairs_independent(&example_f(), 2).unwrap();
    let pe = pe_construction(&sel, 2).unwrap();
    assert_eq!(pe.r1.mul(&sel.u).unwrap(), BitMatrix::identity(8));
    let e = |t| entry_mask(8, t);
    assert_eq!(
        pe.v_prime.column_bits(),
        &[e(1), e(2), e(3), e(1) | e(2) | e(3), e(5), e(6), e(7), e(8)]
    );
    assert_eq!(pe.toffolis, vec![Gate::toffoli(1, 3, 4)]);
    assert!(pe.v_double_prime.get(3, 3));
    assert_eq!(
        pe.r2.mul(&pe.v_double_prime).unwrap(),
        BitMatrix::identity(8)
    );
    for (k, &v) in sel.values().iter().enumerate() {
        assert_eq!(pe.circuit.apply(v as u64), e(k + 1));
    }
}

#[test]
fn worked_example_pmap_gates() {
    let c = build_pmap(2, 8).unwrap();
    let expect = vec![
        Gate::cnot(2, 1),
        Gate::cnot(2, 8),
        Gate::new(2, [8], [7]).unwrap(),
        Gate::cnot(3, 1),
        Gate::cnot(3, 7),
        Gate::new(3, [7], [8]).unwrap(),
        Gate::cnot(4, 1),
        Gate::cnot(4, 7),
        Gate::cnot(4, 8),
        Gate::new(4, [7, 8], []).unwrap(),
    ];
    assert_eq!(c.gates(), expect.as_slice());
}

#[test]
fn worked_example_round() {
    let p = example_f();
    let sel = select_pairs_independent(&p, 2).unwrap();
    let pe = build_pe(&sel, 2).unwrap();
    let swap = main_swap(2, 8).unwrap();
    assert_eq!(swap, Gate::new(8, [1], 2..=6).unwrap());
    let q = build_q(&pe, &build_pmap(2, 8).unwrap(), swap);
    assert!(is_swaps(&q, &[(1, 3), (4, 6)]));
    let qp = Permutation::compose(&q.simulate().unwrap(), &p).unwrap();
    for x in [0, 1, 4] {
        assert_eq!(qp.apply(x), x);
    }
    assert_eq!(qp.apply(254), 3);
    assert_eq!(qp.apply(2), 6);
    assert_eq!(qp.apply(255), 2);
    assert_eq!(qp.apply(10), 12);
    assert_eq!(qp.support_size(), p.support_size() - 2);
}

#[test]
fn pmap_maps_basis_to_patterns() {
    for n in 4usize..=12 {
        for m in 1..=n.ilog2() as usize {
            let count = 1usize << m;
            if let Ok(c) = build_pmap(m, n) {
                for i in 1..=count {
                    assert_eq!(c.apply(entry_mask(n, i)), y(i, m, n), "n={n} m={m} i={i}");
                }
            }
            if let Ok(c) = build_pmap_extended(m, n) {
                for i in 1..=count {
                    assert_eq!(
                        c.apply(entry_mask(n, i)),
                        y(i, m, n),
                        "ext n={n} m={m} i={i}"
                    );
                }
            } else {
                assert!(n < 2 * m + 1 && count > n - m);
            }
        }
    }
}

#[test]
fn pmap_extended_fragment() {
    // n = 8, m = 3: e_6 goes to |11000100⟩, then |11000101⟩, then y_6.
    let (c, groups) = rest_groups(3, 8);
    let e6 = entry_mask(8, 6);
    let first = Circuit::new(8);
    let mut prefix = first.clone();
    prefix.push(Gate::cnot(6, 1));
    prefix.push(Gate::cnot(6, 2));
    assert_eq!(prefix.apply(e6), 0b1100_0100);
    assert_eq!(c.apply(e6), 0b1000_0101);
    assert_eq!(groups, vec![1, 1, 2]);
    assert!(c.gates().contains(&Gate::toffoli(1, 2, 8)));
    assert!(c.gates().contains(&Gate::new(2, [6, 8], [7]).unwrap()));
}

fn rest_groups(m: usize, n: usize) -> (Circuit, Vec<usize>) {
    stages::pmap_extended_with_groups(m, n).unwrap()
}

#[test]
fn pmap_rejects_overlap() {
    assert!(matches!(
        build_pmap(3, 8),
        Err(SynthError::PatternOverlap { .. })
    ));
    assert!(matches!(
        build_pmap(0, 8),
        Err(SynthError::PatternOverlap { .. })
    ));
    assert!(matches!(
        build_pmap_extended(2, 4),
        Err(SynthError::PatternOverlap { .. })
    ));
}

#[test]
fn main_swap_swaps_adjacent_patterns() {
    for n in 4..=10 {
        for m in 1..=n - 2 {
            let g = main_swap(m, n).unwrap();
            for i in (1..=1usize << m).step_by(2) {
                if i + 1 > 1 << m {
                    break;
                }
                assert_eq!(g.apply(n, y(i, m, n)), y(i + 1, m, n));
            }
        }
    }
    assert!(main_swap(0, 5).is_err());
    assert!(main_swap(4, 5).is_err());
}

#[test]
fn transposition_circuits_swap_exactly() {
    let n = 4;
    for a in 0..16 {
        for b in 0..16 {
            if a == b {
                assert!(matches!(
                    transposition_circuit(a, b, n),
                    Err(SynthError::EqualValues(_))
                ));
                continue;
            }
            let c = transposition_circuit(a, b, n).unwrap();
            assert!(is_swaps(&c, &[(a, b)]), "({a} {b})");
        }
    }
    assert!(transposition_circuit(3, 16, 4).is_err());
}

#[test]
fn fix_zero_clears_image_of_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=6 {
        let p = Permutation::random(n, &mut rng).unwrap();
        let (t, p0) = fix_zero(&p);
        assert_eq!(p0.apply(0), 0);
        assert_eq!(t.len(), p.apply(0).count_ones() as usize);
        for x in 0..p.size() {
            assert_eq!(t.apply(p0.apply(x) as u64) as usize, p.apply(x));
        }
    }
}

#[test]
fn pe_greedy_rejects_bad_values() {
    assert!(matches!(
        build_pe_greedy(&[1, 0], 4),
        Err(SynthError::ZeroValue)
    ));
    assert!(matches!(
        build_pe_greedy(&[3, 3], 4),
        Err(SynthError::DuplicateValues(3))
    ));
    assert!(build_pe_greedy(&[1, 2, 3, 4, 5], 4).is_err());
}

#[test]
fn selection_errors() {
    let id = Permutation::identity(8).unwrap();
    assert!(matches!(
        select_pairs_independent(&id, 2),
        Err(SynthError::InsufficientPairs {
            found: 0,
            needed: 2
        })
    ));
    assert!(select_pairs_distinct(&id, 0).is_err());
    let t = Permutation::transposition(8, 1, 2).unwrap();
    assert_eq!(select_pairs_distinct(&t, 1).unwrap(), vec![(1, 2)]);
}

#[test]
fn reduce_requires_fixed_zero() {
    let t = Permutation::transposition(6, 0, 5).unwrap();
    assert!(matches!(
        reduce_support(&t, 1),
        Err(SynthError::InvalidParameter(_))
    ));
}

#[test]
fn synthesize_identity_is_empty() {
    for n in 1..=6 {
        let (c, r) =
            synthesize(&Permutation::identity(n).unwrap(), &SynthOptions::default()).unwrap();
        assert!(c.is_empty());
        assert_eq!(r.iterations, 0);
        assert_eq!(r.elementary_estimate, 0);
    }
}

#[test]
fn synthesize_worked_example() {
    let p = example_f();
    for strategy in [RestStrategy::Naive, RestStrategy::Improved] {
        let opts = SynthOptions {
            rest_strategy: strategy,
            ..Default::default()
        };
        let (c, r) = synthesize(&p, &opts).unwrap();
        assert_eq!(c.simulate().unwrap(), p);
        assert_eq!(r.support_initial, 255);
        assert!(r.iterations > 0);
        assert!(r.pairs_per_iteration.iter().all(|&k| k == 2));
        assert!(r.support_after_reduction <= 1 << 3);
        assert_eq!(r.gate_count, c.len());
        let total: u64 = r.phase_breakdown.iter().map(|s| s.elementary).sum();
        assert_eq!(total, r.elementary_estimate);
    }
}

#[test]
fn strategy_parse() {
    assert_eq!(
        "naive".parse::<RestStrategy>().unwrap(),
        RestStrategy::Naive
    );
    assert_eq!(
        "improved".parse::<RestStrategy>().unwrap(),
        RestStrategy::Improved
    );
    assert!("fast".parse::<RestStrategy>().is_err());
}

fn arb_perm(min_n: usize, max_n: usize) -> impl Strategy<Value = Permutation> {
    (min_n..=max_n, any::<u64>())
        .prop_map(|(n, seed)| Permutation::random(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn synthesize_round_trips(p in arb_perm(1, 9), improved in any::<bool>()) {
        let opts = SynthOptions {
            rest_strategy: if improved { RestStrategy::Improved } else { RestStrategy::Naive },
            ..Default::default()
        };
        let (c, r) = synthesize(&p, &opts).unwrap();
        prop_assert_eq!(c.simulate().unwrap(), p);
        prop_assert_eq!(r.elementary_estimate, opts.cost_model.circuit_cost(&c));
    }

    #[test]
    fn reduction_rounds_are_swaps(p in arb_perm(4, 9)) {
        let (_, p0) = fix_zero(&p);
        let red = reduce_support(&p0, 1).unwrap();
        let mut cur = p0.clone();
        for (q, pairs) in red.rounds.iter().zip(&red.round_pairs) {
            prop_assert!(is_swaps(q, pairs));
            for &(a, b) in pairs {
                prop_assert_eq!(cur.apply(a), b);
            }
            let before = cur.support_size();
            cur = Permutation::compose(&q.simulate().unwrap(), &cur).unwrap();
            prop_assert!(cur.support_size() <= before - pairs.len());
        }
        prop_assert_eq!(&cur, &red.residual);
        let n = p.width();
        // |S| <= 2^(n/2 - 1), squared to stay in integers for odd n.
        let s = red.residual.support_size();
        prop_assert!(s * s <= 1 << (n - 2), "support {} at n = {}", s, n);
    }

    #[test]
    fn independent_pairs_are_independent(p in arb_perm(4, 9), m in 1usize..3) {
        let (_, p0) = fix_zero(&p);
        if let Ok(sel) = select_pairs_independent(&p0, m) {
            prop_assert_eq!(sel.pairs.len(), 1 << (m - 1));
            prop_assert_eq!(sel.u.rank(), p.width());
            for &(a, b) in &sel.pairs {
                prop_assert_eq!(p0.apply(a), b);
            }
            let pe = build_pe(&sel, 1).unwrap();
            for (k, &v) in sel.values().iter().enumerate() {
                prop_assert_eq!(pe.apply(v as u64), entry_mask(p.width(), k + 1));
            }
        }
    }

    #[test]
    fn distinct_pairs_succeed_on_large_support(p in arb_perm(3, 9), m in 1usize..4) {
        let need = 1usize << (m - 1);
        let res = select_pairs_distinct(&p, m);
        if p.support_size() > 3 * need - 3 {
            let pairs = res.unwrap();
            let mut vals: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            vals.sort_unstable();
            vals.dedup();
            prop_assert_eq!(vals.len(), 2 * need);
        }
    }

    #[test]
    fn pe_greedy_sends_values_to_basis(seed in any::<u64>(), n in 2usize..10, k in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = k.min(n);
        let perm = Permutation::random(n, &mut rng).unwrap();
        let values: Vec<usize> = perm.images().iter().copied().filter(|&v| v != 0).take(k).collect();
        let c = build_pe_greedy(&values, n).unwrap();
        for (t, &v) in values.iter().enumerate() {
            prop_assert_eq!(c.apply(v as u64), entry_mask(n, t + 1));
        }
    }

    #[test]
    fn rest_strategies_realize_p(p in arb_perm(1, 8)) {
        let (_, p0) = fix_zero(&p);
        prop_assert_eq!(rest_naive(&p0).unwrap().simulate().unwrap(), p0.clone());
        prop_assert_eq!(rest_improved(&p0).unwrap().simulate().unwrap(), p0);
    }
}

#[test]
fn pe_greedy_single_value() {
    let c = build_pe_greedy(&[3], 4).unwrap();
    assert_eq!(
        c.gates(),
        &[Gate::toffoli(3, 4, 1), Gate::cnot(1, 3), Gate::cnot(1, 4)]
    );
    assert_eq!(c.apply(3), 0b1000);
    assert!(build_pe_greedy(&[8, 4], 4).unwrap().is_empty());
}

#[test]
fn rest_improved_endgame_uses_two_full_gates() {
    for n in 5..=8 {
        let mut images: Vec<usize> = (0..1 << n).collect();
        images[1] = 2;
        images[2] = 3;
        images[3] = 1;
        let p = Permutation::from_images(n, images).unwrap();
        let c = rest_improved(&p).unwrap();
        assert_eq!(c.simulate().unwrap(), p);
        let full = c
            .gates()
            .iter()
            .filter(|g| g.num_controls() == n - 1)
            .count();
        assert!(full <= 2, "n = {n}: {full} full-width gates");
    }
    assert!(rest_improved(&Permutation::identity(5).unwrap())
        .unwrap()
        .is_empty());
    assert!(rest_naive(&Permutation::identity(5).unwrap())
        .unwrap()
        .is_empty());
}

#[test]
fn rest_naive_one_transposition() {
    let p = Permutation::transposition(3, 6, 7).unwrap();
    let c = rest_naive(&p).unwrap();
    assert_eq!(c, transposition_circuit(6, 7, 3).unwrap());
}
