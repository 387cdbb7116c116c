use super::*;
use crate::instances::prop::PropInstitution;

fn prop2() -> PropInstitution {
    PropInstitution::new(2).unwrap()
}

fn sig01(inst: &PropInstitution) -> String {
    inst.signature_of_atoms(&[0, 1]).unwrap()
}

fn class_of(inst: &PropInstitution, sigma: &str, text: &str) -> String {
    let f = crate::instances::prop::parse_formula(text).unwrap();
    inst.classify(sigma, &f).unwrap()
}

#[test]
fn models_of_conjunction() {
    let inst = prop2();
    let sigma = sig01(&inst);
    let c = class_of(&inst, &sigma, "[0 & 1]");
    let (v, cat) = models_of(&inst, &sigma, &[c]).unwrap();
    assert_eq!(v, vec!["v11".to_string()]);
    assert_eq!(cat.object_count(), 1);
}

#[test]
fn models_of_empty_gamma_is_everything() {
    let inst = prop2();
    let sigma = sig01(&inst);
    let (v, cat) = models_of(&inst, &sigma, &[]).unwrap();
    assert_eq!(v.len(), 4);
    assert_eq!(cat.object_count(), 4);
}

#[test]
fn models_of_contradictory_pair_is_empty() {
    let inst = prop2();
    let sigma = sig01(&inst);
    let c0 = class_of(&inst, &sigma, "0");
    let n0 = class_of(&inst, &sigma, "~0");
    let (v, cat) = models_of(&inst, &sigma, &[c0, n0]).unwrap();
    assert!(v.is_empty());
    assert_eq!(cat.object_count(), 0);
}

#[test]
fn consequence_examples() {
    let inst = prop2();
    let sigma = sig01(&inst);
    let conj = class_of(&inst, &sigma, "[0 & 1]");
    let disj = class_of(&inst, &sigma, "[0 | 1]");
    let atom = class_of(&inst, &sigma, "0");
    assert!(semantic_consequence(&inst, &sigma, &[conj.clone()], &disj).unwrap());
    assert!(semantic_consequence(&inst, &sigma, &[atom.clone()], &atom).unwrap());
    assert!(!semantic_consequence(&inst, &sigma, &[], &atom).unwrap());
}

#[test]
fn closure_of_conjunction_has_eight_classes() {
    // Classes true at the valuation (1,1): half of the 16 tables.
    let inst = prop2();
    let sigma = sig01(&inst);
    let conj = class_of(&inst, &sigma, "[0 & 1]");
    let state = closure_and_theory(&inst, &sigma, &[conj]).unwrap();
    assert_eq!(state.gamma.len(), 8);
    assert!(state.is_theory);
    assert!(state.consistent);
    // Idempotent.
    let state2 = closure_and_theory(&inst, &sigma, &state.gamma).unwrap();
    assert_eq!(state2.gamma, state.gamma);
}

#[test]
fn closure_is_monotone_and_extensive() {
    let inst = prop2();
    let sigma = sig01(&inst);
    let view = SpectrumView::build(&inst, &sigma).unwrap();
    let classes = view.classes.clone();
    for (i, j) in [(0usize, 1usize), (3, 7), (5, 11), (2, 9)] {
        let small = vec![classes[i].clone()];
        let large = vec![classes[i].clone(), classes[j].clone()];
        let cs: std::collections::BTreeSet<usize> =
            view.closure(&small).unwrap().into_iter().collect();
        let cl: std::collections::BTreeSet<usize> =
            view.closure(&large).unwrap().into_iter().collect();
        // Extensive.
        assert!(cs.contains(&view.class_index(&classes[i]).unwrap()));
        // Monotone: a larger Γ has a larger closure.
        assert!(cl.is_superset(&cs));
    }
}

#[test]
fn galois_property_on_samples() {
    let inst = prop2();
    let sigma = sig01(&inst);
    let view = SpectrumView::build(&inst, &sigma).unwrap();
    for mask in [0usize, 1, 5, 9, 15] {
        let gamma: Vec<String> = view
            .classes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << (i % 4)) != 0 && i % 3 == 0)
            .map(|(_, c)| c.clone())
            .collect();
        let v_gamma = view.v_of_set(&gamma).unwrap();
        let i_v = view.i_of(&v_gamma);
        let gamma2: Vec<String> = i_v.iter().map(|&c| view.classes[c].clone()).collect();
        // V(I(V(Γ))) = V(Γ)
        assert_eq!(view.v_of_set(&gamma2).unwrap(), v_gamma);
    }
    // I(V(I(U))) = I(U) over every model subset.
    for u_mask in 0usize..16 {
        let u: std::collections::BTreeSet<usize> =
            (0..4).filter(|i| u_mask & (1 << i) != 0).collect();
        let i_u = view.i_of(&u);
        let gamma: Vec<String> = i_u.iter().map(|&c| view.classes[c].clone()).collect();
        let v = view.v_of_set(&gamma).unwrap();
        assert_eq!(view.i_of(&v), i_u);
    }
}

#[test]
fn theory_of_models_counts() {
    let inst = prop2();
    let sigma = sig01(&inst);
    let all: Vec<String> = vec!["v00".into(), "v01".into(), "v10".into(), "v11".into()];
    // All valuations: only the tautology class.
    let t = theory_of_models(&inst, &sigma, &all).unwrap();
    assert_eq!(t, vec!["c1111".to_string()]);
    // Empty set: every class.
    let t = theory_of_models(&inst, &sigma, &[]).unwrap();
    assert_eq!(t.len(), 16);
    // A single valuation: the 8 classes true there.
    let t = theory_of_models(&inst, &sigma, &["v10".to_string()]).unwrap();
    assert_eq!(t.len(), 8);
}

#[test]
fn spectrum_view_partitions() {
    let inst = prop2();
    let sigma = sig01(&inst);
    let view = SpectrumView::build(&inst, &sigma).unwrap();
    for c in &view.classes {
        let v = view.v_of(c).unwrap();
        let d = view.d_of(c).unwrap();
        assert_eq!(v.len() + d.len(), view.spec.len());
        for m in &v {
            assert!(view.o_at(m).unwrap().contains(c));
        }
        for m in &d {
            assert!(!view.o_at(m).unwrap().contains(c));
        }
    }
}

#[test]
fn independence_trichotomy() {
    let inst = prop2();
    let sigma = sig01(&inst);
    let atom0 = class_of(&inst, &sigma, "0");
    let theory = closure_and_theory(&inst, &sigma, &[atom0.clone()]).unwrap();
    let not0 = class_of(&inst, &sigma, "~0");
    let atom1 = class_of(&inst, &sigma, "1");
    assert_eq!(
        independence_status(&inst, &sigma, &theory.gamma, &atom0).unwrap(),
        IndependenceStatus::Provable
    );
    assert_eq!(
        independence_status(&inst, &sigma, &theory.gamma, &not0).unwrap(),
        IndependenceStatus::Refutable
    );
    assert_eq!(
        independence_status(&inst, &sigma, &theory.gamma, &atom1).unwrap(),
        IndependenceStatus::Independent
    );
}

#[test]
fn independence_requires_theory() {
    let inst = prop2();
    let sigma = sig01(&inst);
    let conj = class_of(&inst, &sigma, "[0 & 1]");
    let disj = class_of(&inst, &sigma, "[0 | 1]");
    let err = independence_status(&inst, &sigma, &[conj], &disj).unwrap_err();
    assert!(matches!(err, crate::error::Error::GammaNotATheory));
}

#[test]
fn axiom_checker_passes_on_prop() {
    let inst = PropInstitution::new(3).unwrap();
    let report = check_institution_axioms(&inst, CheckBudget::default()).unwrap();
    assert!(report.all_pass(), "counterexamples: {report:?}");
    assert!(report.i1_cases > 0);
    assert!(report.coherence_cases > 0);
}

#[test]
fn axiom_checker_detects_injected_fault() {
    let inst = PropInstitution::faulty(3).unwrap();
    let report = check_institution_axioms(&inst, CheckBudget::default()).unwrap();
    assert!(
        !report.i1_counterexamples.is_empty(),
        "fault must surface as an (I1) counterexample"
    );
    let ce = &report.i1_counterexamples[0];
    assert!(!ce.morphism.is_empty() && !ce.model.is_empty() && !ce.class.is_empty());
}

#[test]
fn axiom_checker_vacuous_without_morphisms() {
    // The graphs instance has one signature and no morphisms: (I1) holds
    // vacuously.
    let inst = crate::instances::fo::FoInstitution::graphs(
        2,
        vec![crate::instances::fo::parse_fo_formula("(exists x (E x x))").unwrap()],
    )
    .unwrap();
    let report = check_institution_axioms(&inst, CheckBudget::default()).unwrap();
    assert_eq!(report.i1_cases, 0);
    assert!(report.i1_counterexamples.is_empty());
    // (I2) is exercised for real: labeled isomorphic structures exist.
    assert!(report.i2_cases > 0);
    assert!(report.i2_counterexamples.is_empty());
}

#[test]
fn elementary_equivalence_respects_isomorphism() {
    let inst = crate::instances::fo::FoInstitution::graphs(
        2,
        vec![
            crate::instances::fo::parse_fo_formula("(exists x (E x x))").unwrap(),
            crate::instances::fo::parse_fo_formula("(forall x (exists y (E x y)))").unwrap(),
        ],
    )
    .unwrap();
    // k2.E(1,2) and k2.E(2,1) are isomorphic via the swap.
    assert!(elementarily_equivalent(&inst, "fo", "k2.E(1,2)", "k2.E(2,1)").unwrap());
}
