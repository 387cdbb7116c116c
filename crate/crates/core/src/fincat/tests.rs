use super::build::{chain_poset, circle_poset, cospan, discrete_n};
use super::*;

#[test]
fn two_element_chain_counts() {
    let c = arrow();
    assert_eq!(c.object_count(), 2);
    assert_eq!(c.morphism_count(), 3);
    assert!(c.validate().is_empty());
}

#[test]
fn discrete_three() {
    let c = discrete_n(3);
    assert_eq!(c.object_count(), 3);
    assert_eq!(c.morphism_count(), 3);
    assert!(c.validate().is_empty());
}

#[test]
fn circle_poset_counts() {
    // Transitive-closure enumeration: 6 identities plus one morphism per
    // strict incidence pair vi <= eij.
    let c = circle_poset();
    assert_eq!(c.object_count(), 6);
    assert_eq!(c.morphism_count(), 12);
    assert!(c.validate().is_empty());
}

#[test]
fn builder_outputs_validate_clean() {
    for c in [
        point(),
        arrow(),
        circle_poset(),
        cospan(),
        discrete_n(4),
        chain_poset(5),
    ] {
        assert!(c.validate().is_empty());
    }
}

#[test]
fn broken_compose_reports_closure() {
    let err = FinCategory::new(
        vec!["a".into(), "b".into()],
        vec![
            ("id_a".into(), "a".into(), "a".into()),
            ("id_b".into(), "b".into(), "b".into()),
            ("f".into(), "a".into(), "b".into()),
        ],
        vec![
            ("id_a".into(), "id_a".into(), "id_a".into()),
            ("id_b".into(), "id_b".into(), "id_b".into()),
            ("f".into(), "id_a".into(), "f".into()),
            ("id_b".into(), "f".into(), "missing".into()),
        ],
    )
    .unwrap_err();
    assert!(matches!(err, crate::error::Error::CompositionNotClosed { .. }));
}

#[test]
fn broken_associativity_detected() {
    // Mutate a valid 3-chain category: Z/3-like monoid table with one
    // associativity defect.
    let spec = build::MonoidSpec {
        object: "*".into(),
        elements: vec!["e".into(), "s".into(), "t".into()],
        identity: "e".into(),
        // s*s = t, s*t = e, t*s = e is fine cyclically, but t*t = t breaks
        // associativity: (t*t)*s = t*s = e while t*(t*s) = t*e = t.
        table: vec![
            vec!["e".into(), "s".into(), "t".into()],
            vec!["s".into(), "t".into(), "e".into()],
            vec!["t".into(), "e".into(), "t".into()],
        ],
    };
    let err = build::monoid(&spec).unwrap_err();
    let msg = format!("{err}");
    assert!(msg.contains("associativity"), "got: {msg}");
}

#[test]
fn product_of_arrows() {
    let a = arrow();
    let p = combine(CombineMode::Product, &a, Some(&a), None).unwrap();
    assert_eq!(p.object_count(), 4);
    assert_eq!(p.morphism_count(), 9);
    assert!(p.validate().is_empty());
}

#[test]
fn coproduct_counts() {
    let c = combine(CombineMode::Coproduct, &point(), Some(&circle_poset()), None).unwrap();
    assert_eq!(c.object_count(), 7);
    assert_eq!(c.morphism_count(), 13);
    assert!(c.validate().is_empty());
}

#[test]
fn opposite_involution() {
    for c in [arrow(), circle_poset(), cospan(), chain_poset(4)] {
        let oo = combine(
            CombineMode::Opposite,
            &combine(CombineMode::Opposite, &c, None, None).unwrap(),
            None,
            None,
        )
        .unwrap();
        assert_eq!(oo, c);
    }
}

#[test]
fn combine_missing_argument() {
    let err = combine(CombineMode::Product, &point(), None, None).unwrap_err();
    assert!(matches!(err, crate::error::Error::MissingArgument { .. }));
}

#[test]
fn slice_of_arrow_over_codomain() {
    let c = arrow();
    let s = slice(&c, "1").unwrap();
    assert_eq!(s.slice.object_count(), 2);
    let analysis = s.slice.analyze();
    assert_eq!(analysis.terminal_objects, vec!["(1,id_1)".to_string()]);
    assert!(s.slice.validate().is_empty());
    s.projection.check().unwrap();
}

#[test]
fn slice_contains_identity_object() {
    for c in [arrow(), circle_poset(), cospan(), chain_poset(3)] {
        for x in c.objects() {
            let s = slice(&c, x).unwrap();
            let id_obj = format!("({},id_{})", x, x);
            assert!(
                s.slice.objects().contains(&id_obj),
                "slice over {x} missing {id_obj}"
            );
        }
    }
}

#[test]
fn slice_of_discrete_is_single_object() {
    let c = discrete_n(4);
    let s = slice(&c, "2").unwrap();
    assert_eq!(s.slice.object_count(), 1);
    assert_eq!(s.slice.morphism_count(), 1);
}

#[test]
fn restricted_slice_can_be_empty() {
    let c = arrow();
    // Only object "1" selected, sliced over "0": no morphisms 1 -> 0.
    let s = slice_over(&c, &["1".to_string()], "0").unwrap();
    assert_eq!(s.slice.object_count(), 0);
    assert_eq!(s.slice.morphism_count(), 0);
}

#[test]
fn functor_slice_of_identity_matches_slice() {
    let c = cospan();
    let u = FunctorData::identity(&c);
    for x in c.objects() {
        let via_functor = slice_of_functor(&u, x).unwrap();
        let direct = slice(&c, x).unwrap();
        assert_eq!(via_functor.slice.object_count(), direct.slice.object_count());
        assert_eq!(
            via_functor.slice.morphism_count(),
            direct.slice.morphism_count()
        );
    }
}

#[test]
fn functor_slice_over_point_recovers_source() {
    let c = circle_poset();
    let p = point();
    let u = FunctorData::to_point(&c, &p).unwrap();
    let s = slice_of_functor(&u, "*").unwrap();
    assert_eq!(s.slice.object_count(), c.object_count());
    assert_eq!(s.slice.morphism_count(), c.morphism_count());
}

#[test]
fn functor_slice_vertex_into_circle() {
    // Inclusion of the single vertex v1 into the circle poset, sliced over
    // e12: exactly the one augmentation v1 -> e12.
    let c = circle_poset();
    let v = super::build::discrete(&["v1".to_string()]);
    let u = FunctorData::from_maps(
        v.clone(),
        c.clone(),
        &[("v1".to_string(), "v1".to_string())].into_iter().collect(),
        &[("id_v1".to_string(), "id_v1".to_string())]
            .into_iter()
            .collect(),
    )
    .unwrap();
    let s = slice_of_functor(&u, "e12").unwrap();
    assert_eq!(s.slice.object_count(), 1);
}

#[test]
fn analyze_point_and_circle() {
    let a = point().analyze();
    assert_eq!(a.terminal_objects, vec!["*".to_string()]);
    assert_eq!(a.initial_objects, vec!["*".to_string()]);
    assert!(a.loop_free);
    assert_eq!(a.longest_chain, Some(0));

    let a = circle_poset().analyze();
    assert!(a.terminal_objects.is_empty());
    assert!(a.loop_free);
    assert_eq!(a.longest_chain, Some(1));
}

#[test]
fn analyze_z2_monoid_not_loop_free() {
    let z2 = build::monoid(&build::MonoidSpec {
        object: "*".into(),
        elements: vec!["e".into(), "s".into()],
        identity: "e".into(),
        table: vec![vec!["e".into(), "s".into()], vec!["s".into(), "e".into()]],
    })
    .unwrap();
    let a = z2.analyze();
    assert!(!a.loop_free);
    assert_eq!(a.longest_chain, None);
}

#[test]
fn posetal_reflection_of_poset_is_isomorphic() {
    let c = circle_poset();
    let (q, _) = posetal_reflection(&c).unwrap();
    assert_eq!(q.object_count(), c.object_count());
    assert_eq!(q.morphism_count(), c.morphism_count());
}

#[test]
fn posetal_reflection_collapses_mutual_pair() {
    // Preorder a <-> b: one object after reflection.
    let c = FinCategory::new(
        vec!["a".into(), "b".into()],
        vec![
            ("id_a".into(), "a".into(), "a".into()),
            ("id_b".into(), "b".into(), "b".into()),
            ("f".into(), "a".into(), "b".into()),
            ("g".into(), "b".into(), "a".into()),
        ],
        vec![
            ("id_a".into(), "id_a".into(), "id_a".into()),
            ("id_b".into(), "id_b".into(), "id_b".into()),
            ("f".into(), "id_a".into(), "f".into()),
            ("id_b".into(), "f".into(), "f".into()),
            ("g".into(), "id_b".into(), "g".into()),
            ("id_a".into(), "g".into(), "g".into()),
            ("id_a".into(), "g".into(), "g".into()),
            ("g".into(), "f".into(), "id_a".into()),
            ("f".into(), "g".into(), "id_b".into()),
        ],
    )
    .unwrap();
    let (q, functor) = posetal_reflection(&c).unwrap();
    assert_eq!(q.object_count(), 1);
    functor.check().unwrap();
    // Idempotent up to isomorphism: reflecting again changes nothing.
    let (q2, _) = posetal_reflection(&q).unwrap();
    assert_eq!(q2.object_count(), q.object_count());
    assert_eq!(q2.morphism_count(), q.morphism_count());
}

#[test]
fn poset_builder_rejects_cycles() {
    let err = build::poset_from_pairs(
        &["a".into(), "b".into()],
        &[("a".into(), "b".into()), ("b".into(), "a".into())],
    )
    .unwrap_err();
    assert!(matches!(err, crate::error::Error::NotAntisymmetric { .. }));
}

#[test]
fn empty_category_is_valid() {
    let c = super::build::discrete(&[]);
    assert_eq!(c.object_count(), 0);
    assert!(c.validate().is_empty());
    let a = c.analyze();
    assert!(a.loop_free);
    assert!(a.terminal_objects.is_empty());
}
