use std::collections::BTreeSet;

use edgp::bp::{bp_enumerate, bp_solve};
use edgp::cnf::{enumerate_models, CnfFormula};
use edgp::gadgets::{expand_weights, lift_saxe, lift_saxe_realization};
use edgp::oracle::{partition_subset, random_line_graph, sign_vector_classes};
use edgp::reduction::{compile_3sat, reduce_partition, PartitionInstance, ReductionWitness};
use edgp::reproduce::trial_rng;
use edgp::scalar::Rational;
use edgp::{verify_realization, WeightedGraph};
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn partition_witness_roundtrip() {
    let p = PartitionInstance::new(vec![3, 1, 1, 2, 2, 1]).unwrap();
    let (g, w) = reduce_partition(&p).unwrap();
    let set = partition_subset(p.values()).unwrap();
    let x = w.forward(&set).unwrap();
    assert!(verify_realization(&g, &x, &Rational::zero()).unwrap().valid);
    assert_eq!(w.backward(&x).unwrap(), set);
    let solved = bp_solve(&g).unwrap();
    let back: BTreeSet<usize> = w.backward(&solved.realizations[0]).unwrap();
    let sum: u64 = back.iter().map(|&i| p.values()[i - 1]).sum();
    assert_eq!(sum * 2, p.values().iter().sum::<u64>());
}

#[test]
fn every_model_maps_to_a_distinct_realization() {
    let f = CnfFormula::from_dimacs_clauses(3, &[&[1, -2, 3], &[-1, 2], &[2, 3, -3]]).unwrap();
    let (compiled, w) = compile_3sat(&f).unwrap();
    let models = enumerate_models(&f, usize::MAX).unwrap().models;
    let mut seen = BTreeSet::new();
    for a in &models {
        let x = w.forward(a).unwrap();
        assert!(verify_realization(&compiled.graph, &x, &Rational::zero()).unwrap().valid);
        assert_eq!(&w.backward(&x).unwrap(), a);
        assert!(seen.insert(x.to_text()));
    }
    let all = bp_enumerate(&compiled.graph, 1000).unwrap();
    assert_eq!(all.realizations.len(), models.len());
}

#[test]
fn expanded_and_lifted_instances_stay_realizable() {
    let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
    let (compiled, w) = compile_3sat(&f).unwrap();
    let expanded = expand_weights(&compiled.graph).unwrap();
    assert!(expanded.edges().iter().all(|e| e.weight == Rational::from_integer(1.into())
        || e.weight == Rational::from_integer(2.into())));
    let y = bp_solve(&expanded).unwrap();
    assert!(y.is_realizable());
    let lifted = lift_saxe(&expanded).unwrap();
    let x2 = lift_saxe_realization(&expanded, &y.realizations[0]).unwrap();
    assert!(verify_realization(&lifted, &x2, &Rational::zero()).unwrap().valid);
    let x = w.forward(&edgp::Assignment::new(vec![true, false])).unwrap();
    assert!(verify_realization(&compiled.graph, &x, &Rational::zero()).unwrap().valid);
}

#[test]
fn seeded_oracle_agreement_on_larger_graphs() {
    for i in 0..60 {
        let g: WeightedGraph = random_line_graph(&mut trial_rng(11, i), 10, 8);
        let r = bp_enumerate(&g, 1 << 16).unwrap();
        assert_eq!(r.realizations.len(), sign_vector_classes(&g).unwrap(), "{}", g.to_text());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solutions_verify_and_text_roundtrips(seed in 0u64..10_000) {
        let g = random_line_graph(&mut trial_rng(seed, 0), 7, 5);
        prop_assert_eq!(WeightedGraph::parse(&g.to_text()).unwrap().to_text(), g.to_text());
        let r = bp_enumerate(&g, 256).unwrap();
        for x in &r.realizations {
            prop_assert!(verify_realization(&g, x, &Rational::zero()).unwrap().valid);
            prop_assert_eq!(&edgp::Realization::parse(&x.to_text()).unwrap(), x);
        }
    }
}
