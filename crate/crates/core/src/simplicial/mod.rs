//! Nondegenerate nerve chains of a finite category and the chain/cochain
//! complexes they span, with functor coefficients.

mod coeff;
mod complex;

pub use coeff::{
    constant_system, constant_z, explicit_system, pullback_system, CoefficientSystem,
    PresentedGroup, Variance,
};
pub use complex::{
    assemble_chain_complex, assemble_cochain_complex, chain_map_from_functor, ChainComplex,
    ChainMap, ComplexKind, DegreeData,
};

use crate::error::{Error, Result};
use crate::fincat::FinCategory;

/// A composable sequence of non-identity morphisms, stored in path order:
/// `arrows[0]` leaves the top object, `arrows[n-1]` enters the bottom
/// object. `objects` lists the n+1 visited objects top to bottom. For
/// slice-based use the augmentation is carried inside the slice objects, so
/// the bottom object is the augmentation end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NerveChain {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl NerveChain {
    pub fn vertex(obj: usize) -> Self {
        NerveChain {
            objects: vec![obj],
            arrows: vec![],
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Top object: the domain of the first arrow (farthest from the
    /// augmentation end).
    pub fn top(&self) -> usize {
        self.objects[0]
    }

    /// Bottom object: the codomain of the last arrow.
    pub fn bottom(&self) -> usize {
        *self.objects.last().unwrap()
    }
}

/// Result of applying a face map: either a shorter chain or the degenerate
/// marker (a composite collapsed to an identity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceResult {
    Chain(NerveChain),
    Degenerate,
}

/// All nondegenerate n-chains of `cat`, in deterministic order: 0-chains
/// follow object order; (n+1)-chains extend n-chains at the bottom in
/// morphism order.
pub fn enumerate_chains(cat: &FinCategory, n: usize) -> Vec<NerveChain> {
    if n == 0 {
        return (0..cat.object_count()).map(NerveChain::vertex).collect();
    }
    let prev = enumerate_chains(cat, n - 1);
    let mut out = Vec::new();
    for chain in &prev {
        let bottom = chain.bottom();
        for m in cat.non_identity_morphisms() {
            if cat.morphism(m).dom == bottom {
                let mut objects = chain.objects.clone();
                let mut arrows = chain.arrows.clone();
                objects.push(cat.morphism(m).cod);
                arrows.push(m);
                out.push(NerveChain { objects, arrows });
            }
        }
    }
    out
}

/// The i-th face of a chain, indexed as in the boundary formula: face 0
/// drops the bottom (augmentation-end) object, face n drops the top object,
/// and 0 < i < n composes the two arrows meeting at the i-th object from
/// the bottom. Returns the degenerate marker when the composite is an
/// identity.
pub fn face(cat: &FinCategory, chain: &NerveChain, i: usize) -> Result<FaceResult> {
    let n = chain.len();
    if n == 0 || i > n {
        return Err(Error::FaceIndexOutOfRange {
            index: i,
            length: n,
        });
    }
    if i == 0 {
        let objects = chain.objects[..n].to_vec();
        let arrows = chain.arrows[..n - 1].to_vec();
        return Ok(FaceResult::Chain(NerveChain { objects, arrows }));
    }
    if i == n {
        let objects = chain.objects[1..].to_vec();
        let arrows = chain.arrows[1..].to_vec();
        return Ok(FaceResult::Chain(NerveChain { objects, arrows }));
    }
    // Drop the object at position n - i (counting from the top); compose
    // the arrow entering it with the arrow leaving it.
    let pos = n - i;
    let first = chain.arrows[pos - 1];
    let second = chain.arrows[pos];
    let composite = cat.compose_idx(second, first);
    if cat.is_identity(composite) {
        return Ok(FaceResult::Degenerate);
    }
    let mut objects = chain.objects.clone();
    objects.remove(pos);
    let mut arrows = chain.arrows.clone();
    arrows[pos - 1] = composite;
    arrows.remove(pos);
    Ok(FaceResult::Chain(NerveChain { objects, arrows }))
}
