use super::*;
use crate::fincat::{
    circle_poset, cospan, coproduct, discrete, discrete_n, monoid, point,
    FunctorData, MonoidSpec,
};
use crate::simplicial::{assemble_chain_complex, assemble_cochain_complex, chain_map_from_functor};
use crate::simplicial::{constant_system, PresentedGroup, Variance};
use num_bigint::BigInt;

fn constant_z(cat: &crate::fincat::FinCategory, v: Variance) -> crate::simplicial::CoefficientSystem {
    constant_system(cat, PresentedGroup::z(), v)
}

fn homology_groups(cat: &crate::fincat::FinCategory, d: usize) -> Vec<HomologyGroup> {
    let t = constant_z(cat, Variance::Covariant);
    let cx = assemble_chain_complex(cat, &t, d).unwrap();
    let h = homology_of_complex(&cx).unwrap();
    (0..=h.reliable_through).map(|n| h.group(n)).collect()
}

#[test]
fn point_homology() {
    let h = homology_groups(&point(), 3);
    assert!(h[0].is_z());
    assert!(h[1..].iter().all(HomologyGroup::is_zero));
}

#[test]
fn circle_homology() {
    let h = homology_groups(&circle_poset(), 4);
    assert!(h[0].is_z());
    assert!(h[1].is_z());
    assert!(h[2..].iter().all(HomologyGroup::is_zero));
}

#[test]
fn cospan_homology() {
    let h = homology_groups(&cospan(), 3);
    assert!(h[0].is_z());
    assert!(h[1..].iter().all(HomologyGroup::is_zero));
}

#[test]
fn discrete_two_euler() {
    let cat = discrete_n(2);
    let t = constant_z(&cat, Variance::Covariant);
    let cx = assemble_chain_complex(&cat, &t, 2).unwrap();
    let e = euler_characteristic(&cx).unwrap();
    assert_eq!(e.chi, Some(2));
    assert!(e.truncation_honest);
}

#[test]
fn circle_euler_is_zero() {
    let cx = assemble_chain_complex(
        &circle_poset(),
        &constant_z(&circle_poset(), Variance::Covariant),
        4,
    )
    .unwrap();
    let e = euler_characteristic(&cx).unwrap();
    assert_eq!(e.chi, Some(0));
    assert_eq!(e.via, ChiRoute::ChainRanks);
}

#[test]
fn point_euler_is_one() {
    let cx =
        assemble_chain_complex(&point(), &constant_z(&point(), Variance::Covariant), 2).unwrap();
    assert_eq!(euler_characteristic(&cx).unwrap().chi, Some(1));
}

#[test]
fn z2_monoid_classifying_space_torsion() {
    // One object with an involution: homology Z, Z/2, 0, Z/2, ... — the
    // truncated complex reports reliable degrees only.
    let z2 = monoid(&MonoidSpec {
        object: "*".into(),
        elements: vec!["e".into(), "s".into()],
        identity: "e".into(),
        table: vec![vec!["e".into(), "s".into()], vec!["s".into(), "e".into()]],
    })
    .unwrap();
    let t = constant_z(&z2, Variance::Covariant);
    let cx = assemble_chain_complex(&z2, &t, 4).unwrap();
    assert!(!cx.exact_above);
    let h = homology_of_complex(&cx).unwrap();
    assert_eq!(h.reliable_through, 3);
    assert!(h.group(0).is_z());
    assert_eq!(h.group(1).betti, 0);
    assert_eq!(h.group(1).torsion, vec![BigInt::from(2)]);
    assert!(h.group(2).is_zero());
    assert_eq!(h.group(3).torsion, vec![BigInt::from(2)]);
    // Truncated with nonzero top chains: chi undefined.
    let e = euler_characteristic(&cx).unwrap();
    assert_eq!(e.chi, None);
    assert!(!e.truncation_honest);
}

#[test]
fn cochain_h0_is_group_at_terminal() {
    // Cospan has terminal object c; with a nonconstant contravariant
    // system H^0 must be the group at c.
    let c = cospan();
    let groups = vec![
        PresentedGroup::cyclic(3.into()),
        PresentedGroup::cyclic(9.into()),
        PresentedGroup::cyclic(3.into()),
    ];
    let maps: Vec<IntMatrix> = c
        .morphisms()
        .iter()
        .map(|m| {
            if m.dom == m.cod {
                IntMatrix::identity(1)
            } else if m.dom == 0 {
                // T(a -> c): Z/3 -> Z/3 identity
                IntMatrix::identity(1)
            } else {
                // T(b -> c): Z/3 -> Z/9 multiplication by 3
                IntMatrix::from_rows(&[vec![3]])
            }
        })
        .collect();
    let sys =
        crate::simplicial::explicit_system(&c, Variance::Contravariant, groups, maps).unwrap();
    let cx = assemble_cochain_complex(&c, &sys, 3).unwrap();
    let h = homology_of_complex(&cx).unwrap();
    assert_eq!(h.group(0).torsion, vec![BigInt::from(3)]);
    assert_eq!(h.group(0).betti, 0);
    assert!(h.group(1).is_zero());
}

#[test]
fn cochain_circle_constant_z() {
    let c = circle_poset();
    let t = constant_z(&c, Variance::Contravariant);
    let cx = assemble_cochain_complex(&c, &t, 4).unwrap();
    let h = homology_of_complex(&cx).unwrap();
    assert!(h.group(0).is_z());
    assert!(h.group(1).is_z());
    assert!(h.group(2).is_zero());
}

#[test]
fn identity_chain_map_induces_identity() {
    let c = circle_poset();
    let t = constant_z(&c, Variance::Covariant);
    let cx = assemble_chain_complex(&c, &t, 3).unwrap();
    let u = FunctorData::identity(&c);
    let f = chain_map_from_functor(&u, &cx, &cx).unwrap();
    let maps = induced_homology_map(&f, &cx, &cx).unwrap();
    for (_, im) in &maps {
        assert!(im.is_isomorphism());
        assert_eq!(im.matrix, IntMatrix::identity(im.source.generators()));
    }
    assert!(is_quasi_isomorphism(&maps));
}

#[test]
fn point_into_cospan_induces_h0_iso() {
    let c = cospan();
    let pt = discrete(&["a".to_string()]);
    let u = FunctorData::from_maps(
        pt.clone(),
        c.clone(),
        &[("a".to_string(), "a".to_string())].into_iter().collect(),
        &[("id_a".to_string(), "id_a".to_string())]
            .into_iter()
            .collect(),
    )
    .unwrap();
    let src = assemble_chain_complex(&pt, &constant_z(&pt, Variance::Covariant), 3).unwrap();
    let dst = assemble_chain_complex(&c, &constant_z(&c, Variance::Covariant), 3).unwrap();
    let f = chain_map_from_functor(&u, &src, &dst).unwrap();
    let maps = induced_homology_map(&f, &src, &dst).unwrap();
    assert!(maps[&0].is_isomorphism());
    assert!(is_quasi_isomorphism(&maps));
}

#[test]
fn vertex_into_circle_h1_is_zero_map() {
    let c = circle_poset();
    let sub = discrete(&["v1".to_string()]);
    let u = FunctorData::from_maps(
        sub.clone(),
        c.clone(),
        &[("v1".to_string(), "v1".to_string())].into_iter().collect(),
        &[("id_v1".to_string(), "id_v1".to_string())]
            .into_iter()
            .collect(),
    )
    .unwrap();
    let src = assemble_chain_complex(&sub, &constant_z(&sub, Variance::Covariant), 3).unwrap();
    let dst = assemble_chain_complex(&c, &constant_z(&c, Variance::Covariant), 3).unwrap();
    let f = chain_map_from_functor(&u, &src, &dst).unwrap();
    let maps = induced_homology_map(&f, &src, &dst).unwrap();
    // H_0 iso (both connected), H_1 map is 0 : 0 -> Z.
    assert!(maps[&0].is_isomorphism());
    assert_eq!(maps[&1].source, HomologyGroup::zero());
    assert!(maps[&1].target.is_z());
    assert!(!is_quasi_isomorphism(&maps));
}

#[test]
fn non_chain_map_rejected() {
    let c = circle_poset();
    let t = constant_z(&c, Variance::Covariant);
    let cx = assemble_chain_complex(&c, &t, 3).unwrap();
    // Degreewise maps that scale degree 1 only cannot commute with the
    // boundary.
    let mut degrees = vec![
        IntMatrix::identity(cx.generators_at(0)),
        IntMatrix::zero(cx.generators_at(1), cx.generators_at(1)),
        IntMatrix::identity(cx.generators_at(2)),
        IntMatrix::identity(cx.generators_at(3)),
    ];
    for i in 0..cx.generators_at(1) {
        degrees[1].set(i, i, num_bigint::BigInt::from(2));
    }
    let f = crate::simplicial::ChainMap { degrees };
    assert!(matches!(
        induced_homology_map(&f, &cx, &cx),
        Err(crate::error::Error::NotAChainMap { .. })
    ));
}

#[test]
fn coproduct_homology_is_additive() {
    let a = circle_poset();
    let b = cospan();
    let ab = coproduct(&a, &b);
    let ha = homology_groups(&a, 4);
    let hb = homology_groups(&b, 4);
    let hab = homology_groups(&ab, 4);
    for n in 0..hab.len() {
        let ga = ha.get(n).cloned().unwrap_or_else(HomologyGroup::zero);
        let gb = hb.get(n).cloned().unwrap_or_else(HomologyGroup::zero);
        assert_eq!(hab[n].betti, ga.betti + gb.betti);
        let mut torsion = [ga.torsion.clone(), gb.torsion.clone()].concat();
        torsion.sort();
        let mut got = hab[n].torsion.clone();
        got.sort();
        assert_eq!(got, torsion);
    }
}

#[test]
fn free_resolution_rewrite_agrees_on_free_input() {
    // A free complex is unchanged by presenting each degree with empty
    // relations; the subquotient route must give the same answer as the
    // plain kernel/image route, checked through the public API by
    // comparing constant-Z homology with homology for the "explicitly
    // presented Z" constant system.
    let c = circle_poset();
    let plain = constant_system(&c, PresentedGroup::z(), Variance::Covariant);
    let presented = constant_system(
        &c,
        PresentedGroup {
            free_rank: 1,
            torsion: vec![],
        },
        Variance::Covariant,
    );
    let h1 = homology_of_complex(&assemble_chain_complex(&c, &plain, 4).unwrap()).unwrap();
    let h2 = homology_of_complex(&assemble_chain_complex(&c, &presented, 4).unwrap()).unwrap();
    for n in 0..=h1.reliable_through {
        assert_eq!(h1.group(n), h2.group(n));
    }
}

#[test]
fn preorder_and_reflection_agree_on_homology() {
    // a <-> b collapses to a point; both sides have the homology of a
    // point in every reliable degree.
    let c = crate::fincat::FinCategory::new(
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
            ("g".into(), "f".into(), "id_a".into()),
            ("f".into(), "g".into(), "id_b".into()),
        ],
    )
    .unwrap();
    let (q, _) = crate::fincat::posetal_reflection(&c).unwrap();
    let t_c = constant_z(&c, Variance::Covariant);
    let t_q = constant_z(&q, Variance::Covariant);
    let hc = homology_of_complex(&assemble_chain_complex(&c, &t_c, 4).unwrap()).unwrap();
    let hq = homology_of_complex(&assemble_chain_complex(&q, &t_q, 4).unwrap()).unwrap();
    let top = hc.reliable_through.min(hq.reliable_through);
    for n in 0..=top {
        assert_eq!(hc.group(n), hq.group(n), "degree {n}");
    }
}
