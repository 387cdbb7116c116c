//! Slice categories C/X, slices restricted to a subcategory selection, and
//! slices of a functor u/b.

use super::{FinCategory, FunctorData, Morphism, ObjectId};
use crate::error::Result;
use std::collections::HashMap;

/// A slice category together with its projection back to the ambient (or
/// source) category and the witness data for every slice object.
#[derive(Clone, Debug)]
pub struct SliceResult {
    pub slice: FinCategory,
    /// Projection functor (a, s) -> a.
    pub projection: FunctorData,
    /// Per slice object: (ambient object index in the projection target,
    /// ambient morphism index of the structure arrow s).
    pub witness: Vec<(usize, usize)>,
}

impl SliceResult {
    pub fn witness_of(&self, slice_obj: usize) -> (usize, usize) {
        self.witness[slice_obj]
    }
}

/// slice(C, X): objects are pairs (a, s: a -> X), morphisms are ambient
/// u: a -> b with t∘u = s.
pub fn slice(c: &FinCategory, x: &str) -> Result<SliceResult> {
    let all: Vec<ObjectId> = c.objects().to_vec();
    slice_over(c, &all, x)
}

/// slice restricted to objects from the selection S: only pairs (a, s)
/// with a in S are kept. The full slice is slice_over(C, Ob C, X).
pub fn slice_over(c: &FinCategory, selection: &[ObjectId], x: &str) -> Result<SliceResult> {
    let xi = c.object_idx(x)?;
    let mut selected = vec![false; c.object_count()];
    for s in selection {
        selected[c.object_idx(s)?] = true;
    }
    // Objects: (a, s) for every morphism s: a -> X with a selected,
    // enumerated in morphism order.
    let mut objects: Vec<ObjectId> = Vec::new();
    let mut witness: Vec<(usize, usize)> = Vec::new();
    let mut obj_of_arrow: HashMap<usize, usize> = HashMap::new();
    for (si, s) in c.morphisms().iter().enumerate() {
        if s.cod == xi && selected[s.dom] {
            obj_of_arrow.insert(si, objects.len());
            objects.push(format!("({},{})", c.object_id(s.dom), s.id));
            witness.push((s.dom, si));
        }
    }
    // Morphisms: for each ambient u: a -> b (a, b selected) and each
    // t: b -> X, u induces (a, t∘u) -> (b, t).
    let mut morphisms: Vec<Morphism> = Vec::new();
    let mut proj_map: Vec<usize> = Vec::new();
    let mut mor_key: HashMap<(usize, usize), usize> = HashMap::new();
    for (ui, u) in c.morphisms().iter().enumerate() {
        if !selected[u.dom] || !selected[u.cod] {
            continue;
        }
        for (ti, t) in c.morphisms().iter().enumerate() {
            if t.cod != xi || t.dom != u.cod || !selected[t.dom] {
                continue;
            }
            let s = c.compose_idx(ti, ui);
            let src = obj_of_arrow[&s];
            let dst = obj_of_arrow[&ti];
            mor_key.insert((ui, ti), morphisms.len());
            morphisms.push(Morphism {
                id: format!("{};{}", u.id, t.id),
                dom: src,
                cod: dst,
            });
            proj_map.push(ui);
        }
    }
    let identities: Vec<usize> = witness
        .iter()
        .map(|&(a, s)| mor_key[&(c.identity_of(a), s)])
        .collect();
    let mut compose = HashMap::new();
    for (&(u1, t1), &m1) in &mor_key {
        // m1: (a, t1∘u1) -> (b, t1)
        for (&(u2, t2), &m2) in &mor_key {
            // m2 composes after m1 when its source is (b, t1):
            // dom(u2) = cod(u1) and t2∘u2 = t1.
            if c.morphism(u2).dom != c.morphism(u1).cod {
                continue;
            }
            if c.compose_idx(t2, u2) != t1 {
                continue;
            }
            let u21 = c.compose_idx(u2, u1);
            compose.insert((m2, m1), mor_key[&(u21, t2)]);
        }
    }
    let slice = FinCategory::from_parts_unchecked(objects, morphisms, identities, compose);
    let object_map: Vec<usize> = witness.iter().map(|&(a, _)| a).collect();
    let projection = FunctorData {
        source: slice.clone(),
        target: c.clone(),
        object_map,
        morphism_map: proj_map,
    };
    Ok(SliceResult {
        slice,
        projection,
        witness,
    })
}

/// slice_of_functor(u, b): objects (a, s: u(a) -> b), morphisms f: a -> a'
/// with s'∘u(f) = s; projection to the source of u.
pub fn slice_of_functor(u: &FunctorData, b: &str) -> Result<SliceResult> {
    let bi = u.target.object_idx(b)?;
    let a_cat = &u.source;
    let b_cat = &u.target;
    let mut objects: Vec<ObjectId> = Vec::new();
    let mut witness: Vec<(usize, usize)> = Vec::new();
    let mut obj_key: HashMap<(usize, usize), usize> = HashMap::new();
    for ai in 0..a_cat.object_count() {
        for (si, s) in b_cat.morphisms().iter().enumerate() {
            if s.dom == u.object_map[ai] && s.cod == bi {
                obj_key.insert((ai, si), objects.len());
                objects.push(format!("({},{})", a_cat.object_id(ai), s.id));
                witness.push((ai, si));
            }
        }
    }
    let mut morphisms: Vec<Morphism> = Vec::new();
    let mut proj_map: Vec<usize> = Vec::new();
    let mut mor_key: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, f) in a_cat.morphisms().iter().enumerate() {
        let uf = u.morphism_map[fi];
        for (ti, t) in b_cat.morphisms().iter().enumerate() {
            if t.dom != u.object_map[f.cod] || t.cod != bi {
                continue;
            }
            let s = b_cat.compose_idx(ti, uf);
            let src = obj_key[&(f.dom, s)];
            let dst = obj_key[&(f.cod, ti)];
            mor_key.insert((fi, ti), morphisms.len());
            morphisms.push(Morphism {
                id: format!("{};{}", f.id, t.id),
                dom: src,
                cod: dst,
            });
            proj_map.push(fi);
        }
    }
    let identities: Vec<usize> = witness
        .iter()
        .map(|&(a, s)| mor_key[&(a_cat.identity_of(a), s)])
        .collect();
    let mut compose = HashMap::new();
    for (&(f1, t1), &m1) in &mor_key {
        for (&(f2, t2), &m2) in &mor_key {
            if a_cat.morphism(f2).dom != a_cat.morphism(f1).cod {
                continue;
            }
            if b_cat.compose_idx(t2, u.morphism_map[f2]) != t1 {
                continue;
            }
            let f21 = a_cat.compose_idx(f2, f1);
            compose.insert((m2, m1), mor_key[&(f21, t2)]);
        }
    }
    let slice = FinCategory::from_parts_unchecked(objects, morphisms, identities, compose);
    let object_map: Vec<usize> = witness.iter().map(|&(a, _)| a).collect();
    let projection = FunctorData {
        source: slice.clone(),
        target: a_cat.clone(),
        object_map,
        morphism_map: proj_map,
    };
    Ok(SliceResult {
        slice,
        projection,
        witness,
    })
}
