use super::fields::build_field_site;
use super::fo::{
    enumerate_homomorphisms, eval_fo, parse_fo_formula, FoInstitution, RelStructure,
};
use super::prop::{eval_formula, parse_formula, PropFormula, PropInstitution};
use crate::institution::Institution;
use num_bigint::BigInt;

#[test]
fn parse_basic_forms() {
    assert_eq!(
        parse_formula("[0 & 1]").unwrap(),
        PropFormula::And(
            Box::new(PropFormula::Atom(0)),
            Box::new(PropFormula::Atom(1))
        )
    );
    assert_eq!(
        parse_formula("~[0 -> 1]").unwrap(),
        PropFormula::Not(Box::new(PropFormula::Implies(
            Box::new(PropFormula::Atom(0)),
            Box::new(PropFormula::Atom(1))
        )))
    );
}

#[test]
fn parse_error_offset() {
    let err = parse_formula("0 &").unwrap_err();
    match err {
        crate::error::Error::Syntax { offset, .. } => assert_eq!(offset, 3),
        other => panic!("expected syntax error, got {other:?}"),
    }
}

#[test]
fn printer_round_trips() {
    for text in ["0", "~~5", "[0 & [1 | 2]]", "[[0 -> 1] & ~2]", "[10 | 3]"] {
        let ast = parse_formula(text).unwrap();
        let printed = ast.to_string();
        assert_eq!(parse_formula(&printed).unwrap(), ast);
    }
}

#[test]
fn eval_and_free_vars() {
    let f = parse_formula("[0 & 1]").unwrap();
    let v: super::prop::Valuation = [(0, true), (1, false)].into_iter().collect();
    assert!(!eval_formula(&v, &f).unwrap());
    assert_eq!(
        f.free_vars().into_iter().collect::<Vec<_>>(),
        vec![0usize, 1]
    );
    // Tautology under every valuation.
    let taut = parse_formula("[0 | ~0]").unwrap();
    for b in [false, true] {
        let v: super::prop::Valuation = [(0, b)].into_iter().collect();
        assert!(eval_formula(&v, &taut).unwrap());
    }
    // Unbound atom errors.
    let v: super::prop::Valuation = [(0, true)].into_iter().collect();
    let g = parse_formula("1").unwrap();
    assert!(matches!(
        eval_formula(&v, &g).unwrap_err(),
        crate::error::Error::UnboundAtom(1)
    ));
}

#[test]
fn prop_institution_shape() {
    let inst = PropInstitution::new(2).unwrap();
    let sigma = inst.signature_of_atoms(&[0, 1]).unwrap();
    assert_eq!(inst.model_category(&sigma).unwrap().object_count(), 4);
    assert_eq!(inst.formula_classes(&sigma).unwrap().len(), 16);
    // The model category is discrete.
    let cat = inst.model_category(&sigma).unwrap();
    assert_eq!(cat.morphism_count(), cat.object_count());
    // Reduct along {0} ⊆ {0,1} of v10 (0 -> 1, 1 -> 0) keeps atom 0.
    let small = inst.signature_of_atoms(&[0]).unwrap();
    let mor = format!("{small}->{sigma}");
    assert_eq!(inst.reduct_model(&mor, "v10").unwrap(), "v1");
    // Refuse oversized bounds.
    assert!(PropInstitution::new(5).is_err());
}

#[test]
fn prop_representatives_match_classes() {
    let inst = PropInstitution::new(2).unwrap();
    let sigma = inst.signature_of_atoms(&[0, 1]).unwrap();
    for class in inst.formula_classes(&sigma).unwrap() {
        let rep = inst.representative(&sigma, &class).unwrap().unwrap();
        assert_eq!(inst.classify(&sigma, &rep).unwrap(), class);
    }
}

#[test]
fn fo_parse_and_print() {
    let f = parse_fo_formula("(forall x (exists y (E x y)))").unwrap();
    assert_eq!(f.to_string(), "(forall x (exists y (E x y)))");
    assert!(f.free_vars().is_empty());
    let open = parse_fo_formula("(E x y)").unwrap();
    assert_eq!(open.free_vars().len(), 2);
}

#[test]
fn fo_satisfaction_examples() {
    let sig = vec![("E".to_string(), 2)];
    let loop1 = RelStructure::with_tuples(&sig, 1, "E", &[vec![1, 1]]).unwrap();
    let bare1 = RelStructure::new(&sig, 1);
    let exists_loop = parse_fo_formula("(exists x (E x x))").unwrap();
    let total = parse_fo_formula("(forall x (exists y (E x y)))").unwrap();
    let mut env = Vec::new();
    assert!(eval_fo(&sig, &loop1, &exists_loop, &mut env).unwrap());
    assert!(!eval_fo(&sig, &bare1, &total, &mut env).unwrap());
    // The empty structure satisfies universal sentences vacuously.
    let empty = RelStructure::new(&sig, 0);
    assert!(eval_fo(&sig, &empty, &total, &mut env).unwrap());
}

#[test]
fn fo_structure_count_graphs_size_two() {
    // 2^(k^2) labeled graphs per universe size k: 1 + 2 + 16.
    let inst = FoInstitution::graphs(2, vec![parse_fo_formula("(exists x (E x x))").unwrap()])
        .unwrap();
    assert_eq!(inst.structure_ids().len(), 19);
    let cat = inst.model_category("fo").unwrap();
    assert_eq!(cat.object_count(), 19);
    assert!(cat.validate().is_empty());
}

#[test]
fn hom_enumeration_examples() {
    let sig = vec![("E".to_string(), 2)];
    let edge = RelStructure::with_tuples(&sig, 2, "E", &[vec![1, 2]]).unwrap();
    let loop1 = RelStructure::with_tuples(&sig, 1, "E", &[vec![1, 1]]).unwrap();
    let bare1 = RelStructure::new(&sig, 1);
    let empty = RelStructure::new(&sig, 0);
    // Edge into a loop: both endpoints land on the loop vertex.
    assert_eq!(enumerate_homomorphisms(&edge, &loop1).len(), 1);
    // Edge into an edgeless vertex: none.
    assert_eq!(enumerate_homomorphisms(&edge, &bare1).len(), 0);
    // Empty structure: exactly one (empty) map anywhere.
    assert_eq!(enumerate_homomorphisms(&empty, &edge).len(), 1);
    assert_eq!(enumerate_homomorphisms(&empty, &empty).len(), 1);
}

#[test]
fn hom_enumeration_agrees_with_exhaustive_filter() {
    // Independent oracle: filter all |B|^|A| maps by the full
    // preservation check.
    let sig = vec![("E".to_string(), 2)];
    let structures = [
        RelStructure::new(&sig, 0),
        RelStructure::new(&sig, 1),
        RelStructure::with_tuples(&sig, 1, "E", &[vec![1, 1]]).unwrap(),
        RelStructure::with_tuples(&sig, 2, "E", &[vec![1, 2]]).unwrap(),
        RelStructure::with_tuples(&sig, 2, "E", &[vec![1, 2], vec![2, 1]]).unwrap(),
        RelStructure::with_tuples(&sig, 2, "E", &[vec![1, 1], vec![1, 2]]).unwrap(),
    ];
    for a in &structures {
        for b in &structures {
            let fast: std::collections::BTreeSet<Vec<usize>> =
                enumerate_homomorphisms(a, b).into_iter().collect();
            let slow: std::collections::BTreeSet<Vec<usize>> = all_maps(a.universe, b.universe)
                .into_iter()
                .filter(|m| a.preserves(b, m))
                .collect();
            assert_eq!(fast, slow);
        }
    }
}

fn all_maps(from: usize, to: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..from {
        let mut next = Vec::new();
        for prefix in &out {
            for img in 1..=to {
                let mut m = prefix.clone();
                m.push(img);
                next.push(m);
            }
        }
        out = next;
    }
    out
}

#[test]
fn fo_satisfaction_matches_assignment_oracle() {
    // The production evaluator against a brute-force assignment table.
    let inst = FoInstitution::graphs(
        2,
        vec![
            parse_fo_formula("(exists x (E x x))").unwrap(),
            parse_fo_formula("(forall x (exists y (E x y)))").unwrap(),
            parse_fo_formula("(forall x (forall y (implies (E x y) (E y x))))").unwrap(),
        ],
    )
    .unwrap();
    for id in inst.structure_ids() {
        let s = inst.structure(id).unwrap();
        for class in inst.formula_classes("fo").unwrap() {
            let f = parse_fo_formula(&class).unwrap();
            let got = inst.satisfies("fo", id, &class).unwrap();
            let want = oracle_eval(&inst.sig, s, &f, &Default::default());
            assert_eq!(got, want, "structure {id}, formula {class}");
        }
    }
}

/// Test-only evaluator: no environment threading; each quantifier
/// materializes the full set of satisfying sub-assignments.
fn oracle_eval(
    sig: &super::fo::RelSignature,
    s: &RelStructure,
    f: &super::fo::FoFormula,
    env: &std::collections::BTreeMap<String, usize>,
) -> bool {
    use super::fo::FoFormula::*;
    match f {
        Atom(rel, vars) => {
            let ri = sig.iter().position(|(n, _)| n == rel).unwrap();
            let tuple: Vec<usize> = vars.iter().map(|v| env[v]).collect();
            s.interp[ri].contains(&tuple)
        }
        Not(inner) => !oracle_eval(sig, s, inner, env),
        And(l, r) => oracle_eval(sig, s, l, env) && oracle_eval(sig, s, r, env),
        Or(l, r) => oracle_eval(sig, s, l, env) || oracle_eval(sig, s, r, env),
        Implies(l, r) => !oracle_eval(sig, s, l, env) || oracle_eval(sig, s, r, env),
        Forall(v, body) => (1..=s.universe).all(|e| {
            let mut env2 = env.clone();
            env2.insert(v.clone(), e);
            oracle_eval(sig, s, body, &env2)
        }),
        Exists(v, body) => (1..=s.universe).any(|e| {
            let mut env2 = env.clone();
            env2.insert(v.clone(), e);
            oracle_eval(sig, s, body, &env2)
        }),
    }
}

#[test]
fn field_site_units_maps() {
    // p=3, N=2: the units map from degree 1 to degree 2 is multiplication
    // by (9-1)/(3-1) = 4 from Z/2 to Z/8.
    let site = build_field_site(&[3], 2).unwrap();
    let comp = &site.components[0];
    let amb = &comp.affine_ambient;
    let mor = amb.morphism_idx("F3^2->F3^1").unwrap();
    let map = comp.units_ambient.map_at(mor);
    assert_eq!(map.get(0, 0), &BigInt::from(4));
    assert_eq!(
        comp.units_ambient
            .group_at(amb.object_idx("F3^1").unwrap())
            .torsion,
        vec![BigInt::from(2)]
    );
    assert_eq!(
        comp.units_ambient
            .group_at(amb.object_idx("F3^2").unwrap())
            .torsion,
        vec![BigInt::from(8)]
    );
}

#[test]
fn field_site_slice_terminal_is_degree_one() {
    let site = build_field_site(&[2, 3, 5], 4).unwrap();
    for comp in &site.components {
        let analysis = comp.slice.slice.analyze();
        assert_eq!(
            analysis.terminal_objects,
            vec![format!("(F{}^1,F{}^1->Spec(Z))", comp.p, comp.p)]
        );
        // The degree-1 object is initial in the divisibility poset.
        let div = comp.divisibility.analyze();
        assert!(div
            .initial_objects
            .contains(&format!("F{}^1", comp.p)));
    }
}

#[test]
fn field_site_units_functorial_all_chains() {
    // (p^c - 1)/(p^a - 1) is multiplicative along a | b | c; the explicit
    // system constructor verifies composition, so building is the test.
    for p in [2u64, 3, 5] {
        let site = build_field_site(&[p], 6).unwrap();
        site.components[0].units_ambient.check().unwrap();
        site.components[0].units_on_slice.check().unwrap();
    }
}

#[test]
fn field_site_rejects_bad_input() {
    assert!(build_field_site(&[4], 2).is_err());
    assert!(build_field_site(&[], 2).is_err());
    assert!(build_field_site(&[2], 9).is_err());
}
