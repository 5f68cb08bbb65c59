//! Exhaustive identities for the model transforms: the QUBO↔Ising mapping
//! and external-field elimination. Integer inputs keep every energy exactly
//! representable, so the identities are asserted with `==`.

use qaoa1::ising::{
    eliminate_fields, from_qubo, generate_erdos_renyi, with_random_fields, QuboModel,
    SpinAssignment, WeightClass, WeightDist,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_qubo(n: usize, seed: u64) -> QuboModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = vec![0.0f64; n * n];
    for i in 0..n {
        a[i * n + i] = rng.random_range(-5..=5) as f64;
        for j in (i + 1)..n {
            let w = rng.random_range(-5..=5) as f64;
            a[i * n + j] = w;
            a[j * n + i] = w;
        }
    }
    let b: Vec<f64> = (0..n).map(|_| rng.random_range(-5..=5) as f64).collect();
    QuboModel::new(n, a, b).expect("symmetric finite matrix")
}

/// Spin image of a bit vector under the pinned convention `x = 1 ↔ s = +1`.
fn spins_of_bits(bits: u64, n: usize) -> SpinAssignment {
    let spins: Vec<i8> = (0..n)
        .map(|i| if bits >> i & 1 == 1 { 1 } else { -1 })
        .collect();
    SpinAssignment::new(spins).expect("±1 entries")
}

#[test]
fn qubo_mapping_is_an_exact_exhaustive_identity() {
    for k in 0..20u64 {
        let n = 2 + (k % 7) as usize;
        let q = random_qubo(n, 500 + k);
        let m = from_qubo(&q).expect("mapping succeeds");
        for bits in 0u64..(1 << n) {
            let x: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
            let objective = q.objective(&x).expect("length n");
            let s = spins_of_bits(bits, n);
            let energy = m.energy(&s).expect("length n");
            assert_eq!(
                objective, energy,
                "objective and mapped energy differ at bits {bits:b} on instance {k}"
            );
        }
    }
}

#[test]
fn quarter_weight_mapping_stays_in_a_small_integer_class() {
    // Integer QUBO couplings map to quarter-integer Ising couplings, so the
    // detected denominator divides 4.
    for k in 0..10u64 {
        let q = random_qubo(5, 900 + k);
        let m = from_qubo(&q).expect("mapping succeeds");
        match m.weight_class() {
            WeightClass::Integer { scale } => {
                assert!(
                    4 % scale == 0,
                    "scale {scale} does not divide 4 on instance {k}"
                )
            }
            WeightClass::Real => panic!("integer QUBO mapped to a real weight class"),
        }
    }
}

#[test]
fn field_elimination_is_an_exact_exhaustive_identity() {
    let dist = WeightDist::UniformInt { lo: -5, hi: 5 };
    for k in 0..20u64 {
        let n = 2 + (k % 8) as usize;
        let base = generate_erdos_renyi(n, 0.5, &dist, 600 + k).expect("generator");
        let model = with_random_fields(&base, &dist, 700 + k).expect("field overlay");
        let eliminated = eliminate_fields(&model);
        assert_eq!(eliminated.n(), n + 1, "elimination adds one vertex");
        assert!(!eliminated.has_fields(), "fields must be folded into couplings");

        for bits in 0u64..(1 << n) {
            let s = spins_of_bits(bits, n);
            // The new vertex is pinned to +1; equality of energies then
            // carries the constant terms along unchanged.
            let mut extended = s.spins().to_vec();
            extended.push(1);
            let s_ext = SpinAssignment::new(extended).expect("±1 entries");
            let original = model.energy(&s).expect("length n");
            let lifted = eliminated.energy(&s_ext).expect("length n + 1");
            assert_eq!(
                original, lifted,
                "energies differ at bits {bits:b} on instance {k}"
            );
        }
    }
}

#[test]
fn eliminated_models_have_the_global_flip_symmetry() {
    // A coupling-only model cannot distinguish an assignment from its global
    // flip, which is exactly why the ancilla can be pinned to +1.
    let dist = WeightDist::UniformInt { lo: -3, hi: 3 };
    let base = generate_erdos_renyi(6, 0.7, &dist, 42).expect("generator");
    let model = with_random_fields(&base, &dist, 43).expect("field overlay");
    let eliminated = eliminate_fields(&model);
    for bits in 0u64..(1 << eliminated.n()) {
        let s = spins_of_bits(bits, eliminated.n());
        let e = eliminated.energy(&s).expect("length n + 1");
        let e_flipped = eliminated.energy(&s.flipped()).expect("length n + 1");
        assert_eq!(e, e_flipped, "flip symmetry broken at bits {bits:b}");
    }
}
