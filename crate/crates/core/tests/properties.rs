use std::collections::HashMap;

use num_complex::Complex64;
use proptest::prelude::*;

use dtoric_core::dephasing::{
    closed_form, code_space_operator, decoherence_factor, LogicalFrame, NoiseKind, NoiseModel, Normalization,
};
use dtoric_core::engine::{
    distance_symplectic, find_logical_set, logical_basis_state, verify_logical_set, StabilizerGroup,
};
use dtoric_core::lattice::{build_named, build_unit, column_stack_counts, stack_columns};
use dtoric_core::pauli::{phase_factor, Letter, PauliOperator};
use dtoric_core::{CodeSpec, LogicalPair, PureState};

fn pauli(max_n: usize) -> impl Strategy<Value = PauliOperator> {
    (1..=max_n).prop_flat_map(|n| {
        let m = u64::MAX >> (64 - n);
        (Just(n), 0..=m, 0..=m, 0u8..4).prop_map(|(n, x, z, ph)| PauliOperator::from_masks(n, x, z, ph).unwrap())
    })
}

fn pauli_pair(max_n: usize) -> impl Strategy<Value = (PauliOperator, PauliOperator)> {
    (1..=max_n).prop_flat_map(|n| {
        let m = u64::MAX >> (64 - n);
        let one =
            move || (0..=m, 0..=m, 0u8..4).prop_map(move |(x, z, ph)| PauliOperator::from_masks(n, x, z, ph).unwrap());
        (one(), one())
    })
}

fn triple(max_n: usize) -> impl Strategy<Value = [PauliOperator; 3]> {
    (1..=max_n).prop_flat_map(|n| {
        let m = u64::MAX >> (64 - n);
        let one =
            move || (0..=m, 0..=m, 0u8..4).prop_map(move |(x, z, ph)| PauliOperator::from_masks(n, x, z, ph).unwrap());
        (one(), one(), one()).prop_map(|(a, b, c)| [a, b, c])
    })
}

type Matrix = Vec<Vec<Complex64>>;

/// Kronecker-product matrix built from the printed letters and sign.
fn dense(p: &PauliOperator) -> Matrix {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let single = |l: Option<Letter>| -> [[Complex64; 2]; 2] {
        match l {
            None => [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(1., 0.)]],
            Some(Letter::X) => [[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]],
            Some(Letter::Y) => [[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]],
            Some(Letter::Z) => [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]],
        }
    };
    let n = p.n();
    let mats: Vec<_> = (0..n).map(|q| single(p.letter_at(q))).collect();
    let sign = phase_factor(p.sign_exponent());
    let dim = 1usize << n;
    (0..dim)
        .map(|r| (0..dim).map(|col| (0..n).fold(sign, |acc, q| acc * mats[q][r >> q & 1][col >> q & 1])).collect())
        .collect()
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    (0..d).map(|i| (0..d).map(|j| (0..d).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn close(a: &Matrix, b: &Matrix) -> bool {
    a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| (x - y).norm() < 1e-12)
}

fn random_state(n: usize, seed: &[f64]) -> PureState {
    let amps: Vec<Complex64> = (0..1usize << n)
        .map(|i| Complex64::new(seed[i % seed.len()] + i as f64 * 0.1, seed[(i + 1) % seed.len()]))
        .collect();
    PureState::from_amplitudes(n, amps).unwrap().normalized().unwrap()
}

proptest! {
    #[test]
    fn multiplication_is_associative([a, b, c] in triple(10)) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_matches_dense_matrices((a, b) in pauli_pair(4)) {
        prop_assert!(close(&dense(&a.multiply(&b).unwrap()), &matmul(&dense(&a), &dense(&b))));
    }

    #[test]
    fn commutation_matches_dense_matrices((a, b) in pauli_pair(4)) {
        let ab = matmul(&dense(&a), &dense(&b));
        let ba = matmul(&dense(&b), &dense(&a));
        prop_assert_eq!(a.commutes(&b).unwrap(), close(&ab, &ba));
        let neg: Matrix = ba.iter().map(|r| r.iter().map(|v| -v).collect()).collect();
        prop_assert!(close(&ab, &ba) || close(&ab, &neg));
    }

    #[test]
    fn basis_action_matches_dense_matrix(p in pauli(5)) {
        let m = dense(&p);
        for b in 0..(1u64 << p.n()) {
            let (t, f) = p.act_on_basis(b);
            prop_assert!((m[t as usize][b as usize] - f).norm() < 1e-12);
        }
    }

    #[test]
    fn apply_respects_products((a, b) in pauli_pair(6), seed in prop::collection::vec(-1.0f64..1.0, 3)) {
        let s = random_state(a.n(), &seed);
        let lhs = a.multiply(&b).unwrap().apply(&s).unwrap();
        let rhs = a.apply(&b.apply(&s).unwrap()).unwrap();
        for (x, y) in lhs.amplitudes().iter().zip(rhs.amplitudes()) {
            prop_assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn weight_is_subadditive((a, b) in pauli_pair(64)) {
        prop_assert!(a.multiply(&b).unwrap().weight() <= a.weight() + b.weight());
    }

    #[test]
    fn text_round_trip(p in pauli(64)) {
        prop_assert_eq!(PauliOperator::parse(&p.to_string(), p.n()).unwrap(), p);
    }

    #[test]
    fn hermitian_iff_squares_to_identity(p in pauli(8)) {
        let sq = p.multiply(&p).unwrap();
        prop_assert_eq!(p.is_hermitian(), sq == PauliOperator::identity(p.n()).unwrap());
    }
}

fn heights() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=3, 1..=3)
        .prop_filter("fits in 64 qubits", |h| h.iter().map(|&x| 2 * (2 * x + 1)).sum::<usize>() <= 64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn column_stacks_are_valid_codes(h in heights()) {
        let code = stack_columns(&h).unwrap();
        prop_assert!(code.all_commute() && code.is_css());
        let g = StabilizerGroup::new(&code);
        prop_assert!(g.is_independent());
        let (n, m, k) = column_stack_counts(&h).unwrap();
        prop_assert_eq!((code.n, code.m(), g.k()), (n, m, k));
        let layout = code.layout.as_ref().unwrap();
        let (xs, zs) = layout.support_masks();
        let stab: Vec<u64> = code.stabilizers.iter().map(|s| s.x_mask() | s.z_mask()).collect();
        prop_assert_eq!([xs, zs].concat(), stab);
    }

    #[test]
    fn json_round_trip(h in heights()) {
        let code = stack_columns(&h).unwrap();
        prop_assert_eq!(CodeSpec::from_json(&code.to_json()).unwrap(), code);
    }

    #[test]
    fn synthesized_logicals_are_valid(h in heights()) {
        let code = stack_columns(&h).unwrap();
        let set = find_logical_set(&code).unwrap();
        prop_assert_eq!(set.k(), StabilizerGroup::new(&code).k());
        prop_assert!(verify_logical_set(&code, &set.pairs).is_valid());
    }

    #[test]
    fn distance_is_thread_invariant(h in heights()) {
        let code = stack_columns(&h).unwrap();
        let run = |t| rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap().install(|| distance_symplectic(&code, 3).unwrap());
        prop_assert_eq!(run(1), run(3));
    }

    #[test]
    fn logical_states_ignore_stabilizer_cosets(pick in 0usize..16, which in 0usize..3) {
        let code = build_named("two_vertical").unwrap();
        let pairs = code.logical_pairs.clone().unwrap();
        let mut shifted = pairs.clone();
        let mut x = shifted[which].x;
        for (i, s) in code.stabilizers.iter().enumerate().filter(|(_, s)| s.is_x_type()) {
            if pick >> i & 1 == 1 {
                x = x.multiply(s).unwrap();
            }
        }
        shifted[which] = LogicalPair::new(x, shifted[which].z);
        let bits: Vec<bool> = (0..3).map(|i| i == which).collect();
        prop_assert_eq!(
            logical_basis_state(&code, &pairs, &bits).unwrap(),
            logical_basis_state(&code, &shifted, &bits).unwrap()
        );
    }
}

fn unit_frame() -> LogicalFrame {
    let code = build_unit();
    let pairs = code.logical_pairs.clone().unwrap();
    LogicalFrame::new(&code, &pairs, 0).unwrap()
}

fn kind() -> impl Strategy<Value = NoiseKind> {
    prop_oneof![Just(NoiseKind::Global), Just(NoiseKind::Local)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decoherence_is_monotone(a in 0u64..64, b in 0u64..64, k in kind(), g in 0.0f64..3.0, t in 0.0f64..3.0, dt in 0.0f64..1.0) {
        let m = NoiseModel::new(k, g).unwrap();
        let m2 = NoiseModel::new(k, g + dt).unwrap();
        let c = decoherence_factor(a, b, 6, &m, t);
        prop_assert!(c > 0.0 && c <= 1.0);
        prop_assert!(decoherence_factor(a, b, 6, &m, t + dt) <= c);
        prop_assert!(decoherence_factor(a, b, 6, &m2, t) <= c);
    }

    #[test]
    fn r_z_is_time_invariant(th in 0.0f64..std::f64::consts::PI, ph in 0.0f64..std::f64::consts::TAU, k in kind(), g in 0.0f64..2.0, t in 0.0f64..5.0) {
        let f = unit_frame();
        let s = f.state(th, ph).unwrap();
        let m = NoiseModel::new(k, g).unwrap();
        let r0 = f.evaluate(&s, &m, 0.0).unwrap();
        let rt = f.evaluate(&s, &m, t).unwrap();
        prop_assert!((r0.r_z - rt.r_z).abs() < 1e-13);
    }

    #[test]
    fn leakage_prefactor_at_time_zero(th in 0.0f64..std::f64::consts::PI, ph in 0.0f64..std::f64::consts::TAU, k in kind(), g in 0.0f64..2.0) {
        let f = unit_frame();
        let r = f.evaluate(&f.state(th, ph).unwrap(), &NoiseModel::new(k, g).unwrap(), 0.0).unwrap();
        for (p, q) in [(r.p_x, r.r_x), (r.p_y, r.r_y), (r.p_z, r.r_z)] {
            prop_assert!((p - q / 4.0).abs() < 1e-13);
        }
    }

    #[test]
    fn global_engine_matches_closed_form(th in 0.0f64..std::f64::consts::PI, ph in 0.0f64..std::f64::consts::TAU, g in 0.0f64..2.0, t in 0.0f64..5.0) {
        let f = unit_frame();
        let r = f.evaluate(&f.state(th, ph).unwrap(), &NoiseModel::new(NoiseKind::Global, g).unwrap(), t).unwrap();
        prop_assert!(r.max_abs_diff(&closed_form(NoiseKind::Global, th, ph, g, t)) < 1e-12);
    }
}

type PauliSum = HashMap<(u64, u64), Complex64>;

fn sum_of(terms: &[(f64, PauliOperator)]) -> PauliSum {
    let mut out = PauliSum::new();
    for (c, p) in terms {
        *out.entry((p.x_mask(), p.z_mask())).or_default() += *c * phase_factor(p.phase());
    }
    out
}

fn product(a: &[(f64, PauliOperator)], b: &[(f64, PauliOperator)]) -> PauliSum {
    let mut out = PauliSum::new();
    for (ca, pa) in a {
        for (cb, pb) in b {
            let p = pa.multiply(pb).unwrap();
            *out.entry((p.x_mask(), p.z_mask())).or_default() += ca * cb * phase_factor(p.phase());
        }
    }
    out
}

fn same(a: &PauliSum, b: &PauliSum) -> bool {
    let keys: std::collections::HashSet<_> = a.keys().chain(b.keys()).collect();
    keys.into_iter()
        .all(|k| (a.get(k).copied().unwrap_or_default() - b.get(k).copied().unwrap_or_default()).norm() < 1e-12)
}

#[test]
fn projector_normalization_is_idempotent() {
    for name in ["unit", "two_horizontal", "two_vertical", "grid_2x2"] {
        let code = build_named(name).unwrap();
        let p = code_space_operator(&code, Normalization::Projector).unwrap();
        assert!(same(&product(&p, &p), &sum_of(&p)), "{name}");
        let full = code_space_operator(&code, Normalization::FullSpace).unwrap();
        assert!(!same(&product(&full, &full), &sum_of(&full)), "{name}");
    }
}

#[test]
fn stabilizers_commute_for_every_named_code() {
    for name in ["unit", "two_horizontal", "two_vertical", "grid_2x2"] {
        assert!(build_named(name).unwrap().all_commute(), "{name}");
    }
}
