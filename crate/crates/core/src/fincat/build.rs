//! Builders: explicit tables, posets (with transitive closure), discrete
//! categories and one-object monoids. Every builder output passes
//! `validate_category`.

use super::{FinCategory, Morphism, ObjectId};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// JSON-facing category description. Exactly one construction block must
/// be present: explicit tables, or one of the `poset`/`discrete`/`monoid`
/// shorthands.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategorySpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<ObjectId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphisms: Option<Vec<MorphismSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compose: Option<Vec<(String, String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discrete: Option<DiscreteSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoid: Option<MonoidSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    /// Strict order pairs (a, b) meaning a <= b; the builder closes them
    /// transitively and adds the reflexive pairs.
    pub pairs: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DiscreteSpec {
    Count(usize),
    Objects(Vec<String>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonoidSpec {
    #[serde(default = "default_monoid_object")]
    pub object: String,
    pub elements: Vec<String>,
    pub identity: String,
    /// table[i][j] = elements index of elements[i] * elements[j]
    /// (apply j first, then i).
    pub table: Vec<Vec<String>>,
}

fn default_monoid_object() -> String {
    "*".to_string()
}

/// Build a category from a description, dispatching on which block is
/// present.
pub fn build_from_spec(spec: &CategorySpec) -> Result<FinCategory> {
    let blocks = [
        spec.objects.is_some() || spec.morphisms.is_some() || spec.compose.is_some(),
        spec.poset.is_some(),
        spec.discrete.is_some(),
        spec.monoid.is_some(),
    ];
    if blocks.iter().filter(|b| **b).count() != 1 {
        return Err(Error::Config(
            "exactly one of explicit tables, `poset`, `discrete`, `monoid` must be given".into(),
        ));
    }
    if let Some(p) = &spec.poset {
        let pairs: Vec<(String, String)> = p.pairs.clone();
        return poset_from_pairs(&p.elements, &pairs);
    }
    if let Some(d) = &spec.discrete {
        return Ok(match d {
            DiscreteSpec::Count(n) => discrete_n(*n),
            DiscreteSpec::Objects(names) => discrete(names),
        });
    }
    if let Some(m) = &spec.monoid {
        return monoid(m);
    }
    let objects = spec
        .objects
        .clone()
        .ok_or_else(|| Error::Config("explicit form requires `objects`".into()))?;
    let morphisms = spec
        .morphisms
        .clone()
        .ok_or_else(|| Error::Config("explicit form requires `morphisms`".into()))?;
    let compose = spec
        .compose
        .clone()
        .ok_or_else(|| Error::Config("explicit form requires `compose`".into()))?;
    FinCategory::new(
        objects,
        morphisms.into_iter().map(|m| (m.id, m.dom, m.cod)).collect(),
        compose,
    )
}

/// Discrete category on the given object names.
pub fn discrete(names: &[String]) -> FinCategory {
    let objects: Vec<ObjectId> = names.to_vec();
    let morphisms: Vec<Morphism> = objects
        .iter()
        .enumerate()
        .map(|(i, o)| Morphism {
            id: format!("id_{o}"),
            dom: i,
            cod: i,
        })
        .collect();
    let identities: Vec<usize> = (0..objects.len()).collect();
    let compose = (0..objects.len()).map(|i| ((i, i), i)).collect();
    FinCategory::from_parts_unchecked(objects, morphisms, identities, compose)
}

pub fn discrete_n(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    discrete(&names)
}

/// Poset category: one morphism per comparable pair after transitive
/// closure. Rejects pair sets whose closure is not antisymmetric.
pub fn poset_from_pairs(elements: &[String], pairs: &[(String, String)]) -> Result<FinCategory> {
    let n = elements.len();
    let mut index = HashMap::new();
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(Error::DuplicateId(e.clone()));
        }
    }
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        le[i][i] = true;
    }
    for (a, b) in pairs {
        let ai = *index.get(a).ok_or_else(|| Error::UnknownObject(a.clone()))?;
        let bi = *index.get(b).ok_or_else(|| Error::UnknownObject(b.clone()))?;
        le[ai][bi] = true;
    }
    // Warshall transitive closure.
    for k in 0..n {
        for i in 0..n {
            if le[i][k] {
                for j in 0..n {
                    if le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] && le[j][i] {
                return Err(Error::NotAntisymmetric {
                    a: elements[i].clone(),
                    b: elements[j].clone(),
                });
            }
        }
    }
    Ok(poset_category(elements, &le))
}

/// Preorder category: one morphism per related pair after
/// reflexive-transitive closure. Mutually related elements are allowed;
/// `posetal_reflection` quotients them away.
pub fn preorder_from_pairs(elements: &[String], pairs: &[(String, String)]) -> Result<FinCategory> {
    let n = elements.len();
    let mut index = HashMap::new();
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(Error::DuplicateId(e.clone()));
        }
    }
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        le[i][i] = true;
    }
    for (a, b) in pairs {
        let ai = *index.get(a).ok_or_else(|| Error::UnknownObject(a.clone()))?;
        let bi = *index.get(b).ok_or_else(|| Error::UnknownObject(b.clone()))?;
        le[ai][bi] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if le[i][k] {
                for j in 0..n {
                    if le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
    }
    Ok(poset_category(elements, &le))
}

/// Internal: build the category of a reflexive-transitive, antisymmetric
/// relation given as a matrix.
pub(crate) fn poset_category(elements: &[String], le: &[Vec<bool>]) -> FinCategory {
    let n = elements.len();
    let objects: Vec<ObjectId> = elements.to_vec();
    let mut morphisms = Vec::new();
    let mut identities = vec![0usize; n];
    let mut arrow_idx = HashMap::new();
    for i in 0..n {
        identities[i] = morphisms.len();
        arrow_idx.insert((i, i), morphisms.len());
        morphisms.push(Morphism {
            id: format!("id_{}", elements[i]),
            dom: i,
            cod: i,
        });
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] {
                arrow_idx.insert((i, j), morphisms.len());
                morphisms.push(Morphism {
                    id: format!("{}->{}", elements[i], elements[j]),
                    dom: i,
                    cod: j,
                });
            }
        }
    }
    let mut compose = HashMap::new();
    for (&(a, b), &f) in &arrow_idx {
        for (&(b2, c), &g) in &arrow_idx {
            if b == b2 {
                compose.insert((g, f), arrow_idx[&(a, c)]);
            }
        }
    }
    FinCategory::from_parts_unchecked(objects, morphisms, identities, compose)
}

/// One-object category from a monoid multiplication table.
pub fn monoid(spec: &MonoidSpec) -> Result<FinCategory> {
    let k = spec.elements.len();
    if spec.table.len() != k || spec.table.iter().any(|r| r.len() != k) {
        return Err(Error::Config("monoid table must be square over elements".into()));
    }
    let mut index = HashMap::new();
    for (i, e) in spec.elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(Error::DuplicateId(e.clone()));
        }
    }
    let id_elem = *index
        .get(&spec.identity)
        .ok_or_else(|| Error::UnknownMorphism(spec.identity.clone()))?;
    let morphisms: Vec<Morphism> = spec
        .elements
        .iter()
        .map(|e| Morphism {
            id: e.clone(),
            dom: 0,
            cod: 0,
        })
        .collect();
    let mut compose = HashMap::new();
    for i in 0..k {
        for j in 0..k {
            let prod = &spec.table[i][j];
            let p = *index
                .get(prod)
                .ok_or_else(|| Error::CompositionNotClosed {
                    g: spec.elements[i].clone(),
                    f: spec.elements[j].clone(),
                    result: prod.clone(),
                })?;
            compose.insert((i, j), p);
        }
    }
    let cat = FinCategory {
        objects: vec![spec.object.clone()],
        morphisms,
        identities: vec![id_elem],
        compose,
        object_index: [(spec.object.clone(), 0)].into_iter().collect(),
        morphism_index: spec
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect(),
    };
    let diags = cat.validate();
    if let Some(d) = diags.first() {
        return Err(Error::Config(d.message.clone()));
    }
    Ok(cat)
}

/// The six-object "circle" poset: three vertices v1, v2, v3 under the three
/// edges e12, e23, e13, ordered by incidence. Its nerve is a hexagonal
/// circle.
pub fn circle_poset() -> FinCategory {
    let elements: Vec<String> = ["v1", "v2", "v3", "e12", "e23", "e13"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let pairs = vec![
        ("v1".to_string(), "e12".to_string()),
        ("v2".to_string(), "e12".to_string()),
        ("v2".to_string(), "e23".to_string()),
        ("v3".to_string(), "e23".to_string()),
        ("v1".to_string(), "e13".to_string()),
        ("v3".to_string(), "e13".to_string()),
    ];
    poset_from_pairs(&elements, &pairs).expect("circle poset is valid")
}

/// Cospan a -> c <- b.
pub fn cospan() -> FinCategory {
    poset_from_pairs(
        &["a".into(), "b".into(), "c".into()],
        &[("a".into(), "c".into()), ("b".into(), "c".into())],
    )
    .expect("cospan is valid")
}

/// Linear order 0 < 1 < ... < n-1 (the "n-chain" poset).
pub fn chain_poset(n: usize) -> FinCategory {
    let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let pairs: Vec<(String, String)> = (1..n).map(|i| ((i - 1).to_string(), i.to_string())).collect();
    poset_from_pairs(&elements, &pairs).expect("chain poset is valid")
}
