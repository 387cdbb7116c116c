//! Products, coproducts, opposites, full subcategories, and the posetal
//! reflection of a preorder.

use super::{FinCategory, FunctorData, Morphism, ObjectId};
use crate::error::{Error, Result};
use std::collections::{HashMap, HashSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CombineMode {
    Product,
    Coproduct,
    Opposite,
    FullSubcategory,
}

/// Binary product, binary coproduct, opposite, or full subcategory.
/// `other` is required for product/coproduct, `objs` for full_subcategory.
pub fn combine(
    mode: CombineMode,
    cat: &FinCategory,
    other: Option<&FinCategory>,
    objs: Option<&[ObjectId]>,
) -> Result<FinCategory> {
    match mode {
        CombineMode::Product => {
            let d = other.ok_or(Error::MissingArgument {
                mode: "product".into(),
                arg: "second category".into(),
            })?;
            Ok(product(cat, d))
        }
        CombineMode::Coproduct => {
            let d = other.ok_or(Error::MissingArgument {
                mode: "coproduct".into(),
                arg: "second category".into(),
            })?;
            Ok(coproduct(cat, d))
        }
        CombineMode::Opposite => Ok(opposite(cat)),
        CombineMode::FullSubcategory => {
            let objs = objs.ok_or(Error::MissingArgument {
                mode: "full_subcategory".into(),
                arg: "object set".into(),
            })?;
            full_subcategory(cat, objs)
        }
    }
}

pub fn product(c: &FinCategory, d: &FinCategory) -> FinCategory {
    let mut objects = Vec::new();
    for a in c.objects() {
        for b in d.objects() {
            objects.push(format!("({a},{b})"));
        }
    }
    let dn = d.object_count();
    let dm = d.morphism_count();
    let mut morphisms = Vec::new();
    for f in c.morphisms() {
        for g in d.morphisms() {
            morphisms.push(Morphism {
                id: format!("({},{})", f.id, g.id),
                dom: f.dom * dn + g.dom,
                cod: f.cod * dn + g.cod,
            });
        }
    }
    let identities: Vec<usize> = (0..c.object_count())
        .flat_map(|a| (0..dn).map(move |b| (a, b)))
        .map(|(a, b)| c.identity_of(a) * dm + d.identity_of(b))
        .collect();
    let mut compose = HashMap::new();
    for f1 in 0..c.morphism_count() {
        for f2 in 0..c.morphism_count() {
            let Some(f12) = c.try_compose_idx(f1, f2) else {
                continue;
            };
            for g1 in 0..dm {
                for g2 in 0..dm {
                    if let Some(g12) = d.try_compose_idx(g1, g2) {
                        compose.insert((f1 * dm + g1, f2 * dm + g2), f12 * dm + g12);
                    }
                }
            }
        }
    }
    FinCategory::from_parts_unchecked(objects, morphisms, identities, compose)
}

pub fn coproduct(c: &FinCategory, d: &FinCategory) -> FinCategory {
    let mut objects: Vec<ObjectId> = c.objects().iter().map(|o| format!("l.{o}")).collect();
    objects.extend(d.objects().iter().map(|o| format!("r.{o}")));
    let co = c.object_count();
    let cm = c.morphism_count();
    let mut morphisms: Vec<Morphism> = c
        .morphisms()
        .iter()
        .map(|m| Morphism {
            id: format!("l.{}", m.id),
            dom: m.dom,
            cod: m.cod,
        })
        .collect();
    morphisms.extend(d.morphisms().iter().map(|m| Morphism {
        id: format!("r.{}", m.id),
        dom: co + m.dom,
        cod: co + m.cod,
    }));
    let mut identities: Vec<usize> = (0..co).map(|o| c.identity_of(o)).collect();
    identities.extend((0..d.object_count()).map(|o| cm + d.identity_of(o)));
    let mut compose = HashMap::new();
    for g in 0..cm {
        for f in 0..cm {
            if let Some(gf) = c.try_compose_idx(g, f) {
                compose.insert((g, f), gf);
            }
        }
    }
    for g in 0..d.morphism_count() {
        for f in 0..d.morphism_count() {
            if let Some(gf) = d.try_compose_idx(g, f) {
                compose.insert((cm + g, cm + f), cm + gf);
            }
        }
    }
    FinCategory::from_parts_unchecked(objects, morphisms, identities, compose)
}

pub fn opposite(c: &FinCategory) -> FinCategory {
    let morphisms: Vec<Morphism> = c
        .morphisms()
        .iter()
        .map(|m| Morphism {
            id: m.id.clone(),
            dom: m.cod,
            cod: m.dom,
        })
        .collect();
    let identities: Vec<usize> = (0..c.object_count()).map(|o| c.identity_of(o)).collect();
    let mut compose = HashMap::new();
    for g in 0..c.morphism_count() {
        for f in 0..c.morphism_count() {
            if let Some(gf) = c.try_compose_idx(g, f) {
                compose.insert((f, g), gf);
            }
        }
    }
    FinCategory::from_parts_unchecked(c.objects().to_vec(), morphisms, identities, compose)
}

pub fn full_subcategory(c: &FinCategory, objs: &[ObjectId]) -> Result<FinCategory> {
    let mut keep = HashSet::new();
    for o in objs {
        keep.insert(c.object_idx(o)?);
    }
    let mut kept_objects = Vec::new();
    let mut obj_new = HashMap::new();
    for (i, o) in c.objects().iter().enumerate() {
        if keep.contains(&i) {
            obj_new.insert(i, kept_objects.len());
            kept_objects.push(o.clone());
        }
    }
    let mut mor_new = HashMap::new();
    let mut kept_morphisms = Vec::new();
    for (mi, m) in c.morphisms().iter().enumerate() {
        if keep.contains(&m.dom) && keep.contains(&m.cod) {
            mor_new.insert(mi, kept_morphisms.len());
            kept_morphisms.push(Morphism {
                id: m.id.clone(),
                dom: obj_new[&m.dom],
                cod: obj_new[&m.cod],
            });
        }
    }
    let identities: Vec<usize> = c
        .objects()
        .iter()
        .enumerate()
        .filter(|(i, _)| keep.contains(i))
        .map(|(i, _)| mor_new[&c.identity_of(i)])
        .collect();
    let mut compose = HashMap::new();
    for (&g_old, &g) in &mor_new {
        for (&f_old, &f) in &mor_new {
            if let Some(gf_old) = c.try_compose_idx(g_old, f_old) {
                compose.insert((g, f), mor_new[&gf_old]);
            }
        }
    }
    Ok(FinCategory::from_parts_unchecked(
        kept_objects,
        kept_morphisms,
        identities,
        compose,
    ))
}

/// Quotient a preorder by mutual comparability, returning the poset and
/// the quotient functor. Errors when the input is not a preorder.
pub fn posetal_reflection(c: &FinCategory) -> Result<(FinCategory, FunctorData)> {
    let n = c.object_count();
    for a in 0..n {
        for b in 0..n {
            let hom = c.hom(a, b);
            if hom.len() > 1 {
                return Err(Error::NotAPreorder {
                    first: c.morphism(hom[0]).id.clone(),
                    second: c.morphism(hom[1]).id.clone(),
                });
            }
        }
    }
    let le = |a: usize, b: usize| !c.hom(a, b).is_empty();
    // Equivalence classes of mutual comparability; representative = first
    // listed member.
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let k = reps.len();
        class_of[a] = k;
        reps.push(a);
        for b in a + 1..n {
            if class_of[b] == usize::MAX && le(a, b) && le(b, a) {
                class_of[b] = k;
            }
        }
    }
    let elements: Vec<ObjectId> = reps.iter().map(|&r| c.object_id(r).clone()).collect();
    let m = reps.len();
    let mut le_q = vec![vec![false; m]; m];
    for (i, &ri) in reps.iter().enumerate() {
        for (j, &rj) in reps.iter().enumerate() {
            le_q[i][j] = le(ri, rj);
        }
    }
    let quotient = super::build::poset_category(&elements, &le_q);
    let object_map: Vec<usize> = (0..n).map(|a| class_of[a]).collect();
    let morphism_map: Vec<usize> = c
        .morphisms()
        .iter()
        .map(|mor| {
            let qa = class_of[mor.dom];
            let qb = class_of[mor.cod];
            let hom = quotient.hom(qa, qb);
            hom[0]
        })
        .collect();
    let functor = FunctorData {
        source: c.clone(),
        target: quotient.clone(),
        object_map,
        morphism_map,
    };
    debug_assert!(functor.check().is_ok());
    Ok((quotient, functor))
}
