//! Finite categories with explicit composition tables, functors between
//! them, and the constructions (slices, products, reflections) the rest of
//! the crate consumes.
//!
//! Everything is immutable after construction and iteration follows listed
//! order, so downstream matrix bases are reproducible.

mod build;
mod combine;
mod slice;

pub use build::{
    build_from_spec, chain_poset, circle_poset, cospan, discrete, discrete_n, monoid,
    poset_from_pairs, preorder_from_pairs, CategorySpec, DiscreteSpec, MonoidSpec, MorphismSpec,
    PosetSpec,
};
pub use combine::{
    combine, coproduct, full_subcategory, opposite, posetal_reflection, product, CombineMode,
};
pub use slice::{slice, slice_of_functor, slice_over, SliceResult};

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;

pub type ObjectId = String;
pub type MorphismId = String;

/// A morphism record: identifier plus endpoint object indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: MorphismId,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category: ordered objects and morphisms, identity assignment,
/// and a total composition table on composable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<ObjectId>,
    morphisms: Vec<Morphism>,
    /// identity morphism index per object index
    identities: Vec<usize>,
    /// (g index, f index) -> (g∘f) index, defined when cod(f) = dom(g)
    compose: HashMap<(usize, usize), usize>,
    object_index: HashMap<ObjectId, usize>,
    morphism_index: HashMap<MorphismId, usize>,
}

/// A single validation finding. `validate_category` returns these instead
/// of failing, so a report can list every violation at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    DuplicateId,
    CompositionNotClosed,
    CompositionMissing,
    EndpointMismatch,
    Associativity,
    Identity,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl FinCategory {
    /// Assemble a category from raw parts and validate it. The identity
    /// assignment is inferred from the composition table.
    pub fn new(
        objects: Vec<ObjectId>,
        morphisms: Vec<(MorphismId, ObjectId, ObjectId)>,
        compose_pairs: Vec<(MorphismId, MorphismId, MorphismId)>,
    ) -> Result<Self> {
        let mut object_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(Error::DuplicateId(o.clone()));
            }
        }
        let mut morphism_index = HashMap::new();
        let mut recs = Vec::with_capacity(morphisms.len());
        for (i, (id, dom, cod)) in morphisms.into_iter().enumerate() {
            if morphism_index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateId(id));
            }
            let dom = *object_index
                .get(&dom)
                .ok_or_else(|| Error::UnknownObject(dom.clone()))?;
            let cod = *object_index
                .get(&cod)
                .ok_or_else(|| Error::UnknownObject(cod.clone()))?;
            recs.push(Morphism { id, dom, cod });
        }
        let mut compose = HashMap::new();
        for (g, f, gf) in compose_pairs {
            let gi = *morphism_index
                .get(&g)
                .ok_or_else(|| Error::UnknownMorphism(g.clone()))?;
            let fi = *morphism_index
                .get(&f)
                .ok_or_else(|| Error::UnknownMorphism(f.clone()))?;
            let gfi = *morphism_index.get(&gf).ok_or(Error::CompositionNotClosed {
                g: g.clone(),
                f: f.clone(),
                result: gf.clone(),
            })?;
            compose.insert((gi, fi), gfi);
        }
        let identities = infer_identities(&objects, &recs, &compose)?;
        let cat = FinCategory {
            objects,
            morphisms: recs,
            identities,
            compose,
            object_index,
            morphism_index,
        };
        let diags = cat.validate();
        if let Some(d) = diags.first() {
            return Err(Error::Config(d.message.clone()));
        }
        Ok(cat)
    }

    /// Construction path for builders that guarantee well-formed data;
    /// still validated in debug builds.
    pub(crate) fn from_parts_unchecked(
        objects: Vec<ObjectId>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Self {
        let object_index: HashMap<ObjectId, usize> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), i))
            .collect();
        let morphism_index: HashMap<MorphismId, usize> = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.id.clone(), i))
            .collect();
        assert_eq!(object_index.len(), objects.len(), "duplicate object ids");
        assert_eq!(morphism_index.len(), morphisms.len(), "duplicate morphism ids");
        let cat = FinCategory {
            objects,
            morphisms,
            identities,
            compose,
            object_index,
            morphism_index,
        };
        debug_assert!(cat.validate().is_empty(), "builder produced invalid category");
        cat
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_id(&self, idx: usize) -> &ObjectId {
        &self.objects[idx]
    }

    pub fn morphism(&self, idx: usize) -> &Morphism {
        &self.morphisms[idx]
    }

    pub fn object_idx(&self, id: &str) -> Result<usize> {
        self.object_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownObject(id.to_string()))
    }

    pub fn morphism_idx(&self, id: &str) -> Result<usize> {
        self.morphism_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownMorphism(id.to_string()))
    }

    pub fn identity_of(&self, obj: usize) -> usize {
        self.identities[obj]
    }

    pub fn is_identity(&self, mor: usize) -> bool {
        self.identities[self.morphisms[mor].dom] == mor
    }

    /// g∘f for cod(f) = dom(g). Panics on non-composable input; use the
    /// morphism records to guard.
    pub fn compose_idx(&self, g: usize, f: usize) -> usize {
        *self
            .compose
            .get(&(g, f))
            .unwrap_or_else(|| panic!("compose not defined for ({g}, {f})"))
    }

    pub fn try_compose_idx(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    /// All morphisms a -> b, in listed order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].dom == a && self.morphisms[m].cod == b)
            .collect()
    }

    pub fn non_identity_morphisms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len()).filter(|&m| !self.is_identity(m))
    }

    /// Check every category axiom exhaustively; one diagnostic per
    /// violation, empty when the structure is a category.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        // Identity axioms.
        for (oi, &e) in self.identities.iter().enumerate() {
            let em = &self.morphisms[e];
            if em.dom != oi || em.cod != oi {
                out.push(Diagnostic {
                    kind: DiagnosticKind::Identity,
                    message: format!(
                        "identity of `{}` is `{}` with wrong endpoints",
                        self.objects[oi], em.id
                    ),
                });
                continue;
            }
            for (fi, f) in self.morphisms.iter().enumerate() {
                if f.cod == oi {
                    match self.compose.get(&(e, fi)) {
                        Some(&c) if c == fi => {}
                        Some(&c) => out.push(Diagnostic {
                            kind: DiagnosticKind::Identity,
                            message: format!(
                                "compose(id_{}, {}) = {} instead of {}",
                                self.objects[oi], f.id, self.morphisms[c].id, f.id
                            ),
                        }),
                        None => out.push(Diagnostic {
                            kind: DiagnosticKind::CompositionMissing,
                            message: format!(
                                "compose(id_{}, {}) missing from table",
                                self.objects[oi], f.id
                            ),
                        }),
                    }
                }
                if f.dom == oi {
                    match self.compose.get(&(fi, e)) {
                        Some(&c) if c == fi => {}
                        Some(&c) => out.push(Diagnostic {
                            kind: DiagnosticKind::Identity,
                            message: format!(
                                "compose({}, id_{}) = {} instead of {}",
                                f.id, self.objects[oi], self.morphisms[c].id, f.id
                            ),
                        }),
                        None => out.push(Diagnostic {
                            kind: DiagnosticKind::CompositionMissing,
                            message: format!(
                                "compose({}, id_{}) missing from table",
                                f.id, self.objects[oi]
                            ),
                        }),
                    }
                }
            }
        }
        // Totality, closure and endpoint sanity of the table.
        for (fi, f) in self.morphisms.iter().enumerate() {
            for (gi, g) in self.morphisms.iter().enumerate() {
                let composable = f.cod == g.dom;
                match self.compose.get(&(gi, fi)) {
                    Some(&c) => {
                        if !composable {
                            out.push(Diagnostic {
                                kind: DiagnosticKind::EndpointMismatch,
                                message: format!(
                                    "compose({}, {}) defined but cod({}) != dom({})",
                                    g.id, f.id, f.id, g.id
                                ),
                            });
                        } else {
                            let c = &self.morphisms[c];
                            if c.dom != f.dom || c.cod != g.cod {
                                out.push(Diagnostic {
                                    kind: DiagnosticKind::EndpointMismatch,
                                    message: format!(
                                        "compose({}, {}) = {} has wrong endpoints",
                                        g.id, f.id, c.id
                                    ),
                                });
                            }
                        }
                    }
                    None if composable => out.push(Diagnostic {
                        kind: DiagnosticKind::CompositionMissing,
                        message: format!("compose({}, {}) missing from table", g.id, f.id),
                    }),
                    None => {}
                }
            }
        }
        // Associativity over every composable triple.
        for (fi, f) in self.morphisms.iter().enumerate() {
            for (gi, g) in self.morphisms.iter().enumerate() {
                if f.cod != g.dom {
                    continue;
                }
                let Some(&gf) = self.compose.get(&(gi, fi)) else {
                    continue;
                };
                for (hi, h) in self.morphisms.iter().enumerate() {
                    if g.cod != h.dom {
                        continue;
                    }
                    let (Some(&hg), Some(&h_gf)) =
                        (self.compose.get(&(hi, gi)), self.compose.get(&(hi, gf)))
                    else {
                        continue;
                    };
                    let Some(&hg_f) = self.compose.get(&(hg, fi)) else {
                        continue;
                    };
                    if h_gf != hg_f {
                        out.push(Diagnostic {
                            kind: DiagnosticKind::Associativity,
                            message: format!(
                                "associativity @ ({}, {}, {}): {} != {}",
                                h.id, g.id, f.id, self.morphisms[h_gf].id, self.morphisms[hg_f].id
                            ),
                        });
                    }
                }
            }
        }
        out
    }

    /// Terminal/initial objects, loop-freeness and the longest composable
    /// chain of non-identity morphisms.
    pub fn analyze(&self) -> CategoryAnalysis {
        let n = self.objects.len();
        let terminal: Vec<ObjectId> = (0..n)
            .filter(|&t| (0..n).all(|a| self.hom(a, t).len() == 1))
            .map(|t| self.objects[t].clone())
            .collect();
        let initial: Vec<ObjectId> = (0..n)
            .filter(|&s| (0..n).all(|b| self.hom(s, b).len() == 1))
            .map(|s| self.objects[s].clone())
            .collect();
        // Strict reachability by single non-identity arrows.
        let mut arrow = vec![vec![false; n]; n];
        for m in self.non_identity_morphisms() {
            let rec = &self.morphisms[m];
            arrow[rec.dom][rec.cod] = true;
        }
        let mut loop_free = true;
        'outer: for a in 0..n {
            if arrow[a][a] {
                loop_free = false;
                break;
            }
            for b in 0..n {
                if a != b && arrow[a][b] && arrow[b][a] {
                    loop_free = false;
                    break 'outer;
                }
            }
        }
        let longest_chain = if loop_free {
            Some(self.longest_chain_dag(&arrow))
        } else {
            None
        };
        CategoryAnalysis {
            terminal_objects: terminal,
            initial_objects: initial,
            loop_free,
            longest_chain,
        }
    }

    fn longest_chain_dag(&self, arrow: &[Vec<bool>]) -> usize {
        let n = self.objects.len();
        let mut memo = vec![None; n];
        fn go(v: usize, arrow: &[Vec<bool>], memo: &mut Vec<Option<usize>>) -> usize {
            if let Some(x) = memo[v] {
                return x;
            }
            let mut best = 0;
            for w in 0..arrow.len() {
                if arrow[v][w] {
                    best = best.max(1 + go(w, arrow, memo));
                }
            }
            memo[v] = Some(best);
            best
        }
        (0..n).map(|v| go(v, arrow, &mut memo)).max().unwrap_or(0)
    }

    /// True when there is at most one morphism between any ordered pair of
    /// objects (identities included).
    pub fn is_preorder(&self) -> bool {
        let n = self.objects.len();
        (0..n).all(|a| (0..n).all(|b| self.hom(a, b).len() <= 1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryAnalysis {
    pub terminal_objects: Vec<ObjectId>,
    pub initial_objects: Vec<ObjectId>,
    pub loop_free: bool,
    /// Max length of a composable sequence of non-identity morphisms;
    /// present exactly when loop_free.
    pub longest_chain: Option<usize>,
}

fn infer_identities(
    objects: &[ObjectId],
    morphisms: &[Morphism],
    compose: &HashMap<(usize, usize), usize>,
) -> Result<Vec<usize>> {
    let mut identities = Vec::with_capacity(objects.len());
    for (oi, oname) in objects.iter().enumerate() {
        let mut found = None;
        for (ei, e) in morphisms.iter().enumerate() {
            if e.dom != oi || e.cod != oi {
                continue;
            }
            let left_ok = morphisms
                .iter()
                .enumerate()
                .filter(|(_, f)| f.cod == oi)
                .all(|(fi, _)| compose.get(&(ei, fi)) == Some(&fi));
            let right_ok = morphisms
                .iter()
                .enumerate()
                .filter(|(_, g)| g.dom == oi)
                .all(|(gi, _)| compose.get(&(gi, ei)) == Some(&gi));
            if left_ok && right_ok {
                found = Some(ei);
                break;
            }
        }
        match found {
            Some(e) => identities.push(e),
            None => {
                return Err(Error::IdentityViolation {
                    object: oname.clone(),
                    detail: "no morphism acts as identity".into(),
                })
            }
        }
    }
    Ok(identities)
}

/// A functor between finite categories, stored as explicit object and
/// morphism maps (source index -> target index).
#[derive(Clone, Debug)]
pub struct FunctorData {
    pub source: FinCategory,
    pub target: FinCategory,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

impl FunctorData {
    pub fn identity(cat: &FinCategory) -> Self {
        FunctorData {
            source: cat.clone(),
            target: cat.clone(),
            object_map: (0..cat.object_count()).collect(),
            morphism_map: (0..cat.morphism_count()).collect(),
        }
    }

    /// The unique functor to the one-object category.
    pub fn to_point(cat: &FinCategory, point: &FinCategory) -> Result<Self> {
        if point.object_count() != 1 || point.morphism_count() != 1 {
            return Err(Error::InvalidFunctor("target is not the point".into()));
        }
        Ok(FunctorData {
            source: cat.clone(),
            target: point.clone(),
            object_map: vec![0; cat.object_count()],
            morphism_map: vec![0; cat.morphism_count()],
        })
    }

    pub fn from_maps(
        source: FinCategory,
        target: FinCategory,
        object_map: &HashMap<ObjectId, ObjectId>,
        morphism_map: &HashMap<MorphismId, MorphismId>,
    ) -> Result<Self> {
        let mut omap = Vec::with_capacity(source.object_count());
        for o in source.objects() {
            let img = object_map
                .get(o)
                .ok_or_else(|| Error::InvalidFunctor(format!("object `{o}` unmapped")))?;
            omap.push(target.object_idx(img)?);
        }
        let mut mmap = Vec::with_capacity(source.morphism_count());
        for m in source.morphisms() {
            let img = morphism_map
                .get(&m.id)
                .ok_or_else(|| Error::InvalidFunctor(format!("morphism `{}` unmapped", m.id)))?;
            mmap.push(target.morphism_idx(img)?);
        }
        let f = FunctorData {
            source,
            target,
            object_map: omap,
            morphism_map: mmap,
        };
        f.check()?;
        Ok(f)
    }

    /// Verify that the data preserves endpoints, identities and every
    /// composite.
    pub fn check(&self) -> Result<()> {
        for (mi, m) in self.source.morphisms().iter().enumerate() {
            let img = &self.target.morphisms()[self.morphism_map[mi]];
            if img.dom != self.object_map[m.dom] || img.cod != self.object_map[m.cod] {
                return Err(Error::InvalidFunctor(format!(
                    "morphism `{}` image has wrong endpoints",
                    m.id
                )));
            }
        }
        for (oi, _) in self.source.objects().iter().enumerate() {
            let e = self.source.identity_of(oi);
            if self.morphism_map[e] != self.target.identity_of(self.object_map[oi]) {
                return Err(Error::InvalidFunctor(format!(
                    "identity of `{}` not preserved",
                    self.source.object_id(oi)
                )));
            }
        }
        for g in 0..self.source.morphism_count() {
            for f in 0..self.source.morphism_count() {
                if let Some(gf) = self.source.try_compose_idx(g, f) {
                    let img =
                        self.target
                            .try_compose_idx(self.morphism_map[g], self.morphism_map[f]);
                    if img != Some(self.morphism_map[gf]) {
                        return Err(Error::InvalidFunctor(format!(
                            "composite of `{}` after `{}` not preserved",
                            self.source.morphism(g).id,
                            self.source.morphism(f).id
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Convenience: the one-object, one-morphism category.
pub fn point() -> FinCategory {
    build::discrete(&["*".to_string()])
}

/// The walking arrow 0 -> 1.
pub fn arrow() -> FinCategory {
    build::poset_from_pairs(
        &["0".into(), "1".into()],
        &[("0".to_string(), "1".to_string())],
    )
    .expect("arrow poset is valid")
}

#[cfg(test)]
mod tests;
