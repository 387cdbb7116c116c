//! Assembly of the chain complex (covariant coefficients) and cochain
//! complex (contravariant coefficients) spanned by nondegenerate nerve
//! chains, truncated at a mandatory degree bound.

use super::coeff::{CoefficientSystem, PresentedGroup, Variance};
use super::{enumerate_chains, face, FaceResult, NerveChain};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FunctorData};
use crate::homalg::IntMatrix;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexKind {
    /// Differentials lower degree: maps[n]: C_n -> C_{n-1}.
    Homological,
    /// Differentials raise degree: maps[n]: C^{n-1} -> C^n.
    Cohomological,
}

/// One graded piece: the chains spanning it and the coefficient group
/// sitting at each chain (always the group at the chain's top object).
#[derive(Clone, Debug)]
pub struct DegreeData {
    pub basis: Vec<NerveChain>,
    pub groups: Vec<PresentedGroup>,
    /// Generator column offset per basis slot.
    pub offsets: Vec<usize>,
    pub generators: usize,
}

impl DegreeData {
    fn build(basis: Vec<NerveChain>, system: &CoefficientSystem) -> Self {
        let groups: Vec<PresentedGroup> = basis
            .iter()
            .map(|c| system.group_at(c.top()).clone())
            .collect();
        let mut offsets = Vec::with_capacity(basis.len());
        let mut acc = 0usize;
        for g in &groups {
            offsets.push(acc);
            acc += g.generators();
        }
        DegreeData {
            basis,
            groups,
            offsets,
            generators: acc,
        }
    }

    /// Total free rank of this degree (chain count for constant Z).
    pub fn free_rank(&self) -> usize {
        self.groups.iter().map(|g| g.free_rank).sum()
    }

    /// Block-diagonal relation matrix of the degree.
    pub fn relation_matrix(&self) -> IntMatrix {
        let rel_cols: usize = self.groups.iter().map(|g| g.torsion.len()).sum();
        let mut r = IntMatrix::zero(self.generators, rel_cols);
        let mut col = 0;
        for (slot, g) in self.groups.iter().enumerate() {
            let off = self.offsets[slot];
            for (j, m) in g.torsion.iter().enumerate() {
                r.set(off + g.free_rank + j, col + j, m.clone());
            }
            col += g.torsion.len();
        }
        r
    }
}

/// A truncated complex of finitely generated abelian groups with recorded
/// chain bases. `exact_above` is true when the truncation already contains
/// the whole complex, so every computed degree is final.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub kind: ComplexKind,
    pub variance: Variance,
    pub degrees: Vec<DegreeData>,
    /// maps[n] relates degrees n and n-1 according to `kind`; maps[0] is a
    /// dimension-consistent placeholder.
    pub maps: Vec<IntMatrix>,
    pub truncation: usize,
    pub exact_above: bool,
}

impl ChainComplex {
    pub fn generators_at(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.generators)
    }

    pub fn chain_count(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.basis.len())
    }

    /// All degrees free (no torsion coefficients)?
    pub fn is_free(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.groups.iter().all(|g| g.torsion.is_empty()))
    }

    /// Check that adjacent differentials compose to zero (modulo the
    /// coefficient relations of the target degree).
    pub fn verify_dd(&self) -> Result<()> {
        for n in 1..self.maps.len().saturating_sub(1) {
            let (first, second, target) = match self.kind {
                // ∂_n ∘ ∂_{n+1}: lands in degree n-1.
                ComplexKind::Homological => (&self.maps[n + 1], &self.maps[n], n - 1),
                // d^n ∘ d^{n-1}: maps[n+1] ∘ maps[n], lands in degree n+1.
                ComplexKind::Cohomological => (&self.maps[n], &self.maps[n + 1], n + 1),
            };
            let prod = second.mul(first);
            let deg = &self.degrees[target];
            for col in 0..prod.cols() {
                for (slot, g) in deg.groups.iter().enumerate() {
                    let off = deg.offsets[slot];
                    let v: Vec<BigInt> =
                        (0..g.generators()).map(|i| prod.get(off + i, col).clone()).collect();
                    if !g.annihilates(&v) {
                        return Err(match self.kind {
                            ComplexKind::Homological => Error::DdNotZero {
                                upper: n + 1,
                                lower: n - 1,
                            },
                            ComplexKind::Cohomological => Error::DdNotZero {
                                upper: n - 1,
                                lower: n + 1,
                            },
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn truncation_is_complete(cat: &FinCategory, top_degree_chains: usize, truncation: usize) -> bool {
    if top_degree_chains == 0 {
        // No chains at the top degree: none above either.
        return true;
    }
    let analysis = cat.analyze();
    match analysis.longest_chain {
        Some(l) => truncation >= l,
        None => false,
    }
}

fn assemble(
    cat: &FinCategory,
    system: &CoefficientSystem,
    truncation: usize,
    kind: ComplexKind,
) -> Result<ChainComplex> {
    if truncation < 2 {
        return Err(Error::TruncationTooSmall(truncation));
    }
    let mut degrees: Vec<DegreeData> = Vec::with_capacity(truncation + 1);
    let mut index: Vec<HashMap<NerveChain, usize>> = Vec::with_capacity(truncation + 1);
    for n in 0..=truncation {
        let basis = enumerate_chains(cat, n);
        let mut map = HashMap::with_capacity(basis.len());
        for (i, c) in basis.iter().enumerate() {
            map.insert(c.clone(), i);
        }
        index.push(map);
        degrees.push(DegreeData::build(basis, system));
    }
    let mut maps: Vec<IntMatrix> = Vec::with_capacity(truncation + 1);
    maps.push(match kind {
        ComplexKind::Homological => IntMatrix::zero(0, degrees[0].generators),
        ComplexKind::Cohomological => IntMatrix::zero(degrees[0].generators, 0),
    });
    for n in 1..=truncation {
        let (rows, cols) = match kind {
            ComplexKind::Homological => (degrees[n - 1].generators, degrees[n].generators),
            ComplexKind::Cohomological => (degrees[n].generators, degrees[n - 1].generators),
        };
        let mut d = IntMatrix::zero(rows, cols);
        for (ci, chain) in degrees[n].basis.iter().enumerate() {
            for i in 0..=n {
                let f = face(cat, chain, i)?;
                let FaceResult::Chain(fc) = f else {
                    continue;
                };
                let fi = index[n - 1][&fc];
                let sign = if i % 2 == 0 { 1 } else { -1 };
                // The coefficient block: identity while the top object is
                // untouched; the face dropping the top applies the
                // coefficient map of the arrow leaving the top.
                let block: IntMatrix = if i < n {
                    IntMatrix::identity(degrees[n].groups[ci].generators())
                } else {
                    system.map_at(chain.arrows[0]).clone()
                };
                let (row_off, col_off) = match kind {
                    ComplexKind::Homological => {
                        (degrees[n - 1].offsets[fi], degrees[n].offsets[ci])
                    }
                    ComplexKind::Cohomological => {
                        (degrees[n].offsets[ci], degrees[n - 1].offsets[fi])
                    }
                };
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        let v = block.get(r, c);
                        if v.is_zero() {
                            continue;
                        }
                        let signed = if sign > 0 { v.clone() } else { -v };
                        let cur = d.get(row_off + r, col_off + c) + signed;
                        d.set(row_off + r, col_off + c, cur);
                    }
                }
            }
        }
        maps.push(d);
    }
    let exact_above = truncation_is_complete(cat, degrees[truncation].basis.len(), truncation);
    Ok(ChainComplex {
        kind,
        variance: system.variance,
        degrees,
        maps,
        truncation,
        exact_above,
    })
}

/// Chain complex with covariant coefficients: C_n is the sum over
/// nondegenerate n-chains of the group at the chain's top object, and the
/// boundary is the alternating face sum.
pub fn assemble_chain_complex(
    cat: &FinCategory,
    system: &CoefficientSystem,
    truncation: usize,
) -> Result<ChainComplex> {
    if system.variance != Variance::Covariant {
        return Err(Error::VarianceMismatch {
            expected: "covariant".into(),
            found: system.variance.as_str().into(),
        });
    }
    assemble(cat, system, truncation, ComplexKind::Homological)
}

/// Cochain complex with contravariant coefficients, dual faces and
/// alternating signs; for a base with terminal object t and any truncation,
/// H^0 is the group at t.
pub fn assemble_cochain_complex(
    cat: &FinCategory,
    system: &CoefficientSystem,
    truncation: usize,
) -> Result<ChainComplex> {
    if system.variance != Variance::Contravariant {
        return Err(Error::VarianceMismatch {
            expected: "contravariant".into(),
            found: system.variance.as_str().into(),
        });
    }
    assemble(cat, system, truncation, ComplexKind::Cohomological)
}

/// A degreewise matrix map between two complexes of the same kind.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub degrees: Vec<IntMatrix>,
}

impl ChainMap {
    /// Does the map commute with the differentials?
    pub fn verify(&self, source: &ChainComplex, target: &ChainComplex) -> Result<()> {
        let top = self
            .degrees
            .len()
            .min(source.maps.len())
            .min(target.maps.len());
        for n in 1..top {
            let (lhs, rhs) = match source.kind {
                ComplexKind::Homological => (
                    target.maps[n].mul(&self.degrees[n]),
                    self.degrees[n - 1].mul(&source.maps[n]),
                ),
                ComplexKind::Cohomological => (
                    target.maps[n].mul(&self.degrees[n - 1]),
                    self.degrees[n].mul(&source.maps[n]),
                ),
            };
            if lhs != rhs {
                return Err(Error::NotAChainMap { degree: n });
            }
        }
        Ok(())
    }
}

/// The chain map induced by a functor on constant-coefficient (or
/// pulled-back) complexes: a chain goes to its image when that image is
/// nondegenerate and to zero otherwise.
pub fn chain_map_from_functor(
    u: &FunctorData,
    source_cx: &ChainComplex,
    target_cx: &ChainComplex,
) -> Result<ChainMap> {
    let mut degrees = Vec::new();
    for n in 0..source_cx.degrees.len().min(target_cx.degrees.len()) {
        let src = &source_cx.degrees[n];
        let dst = &target_cx.degrees[n];
        let mut index: HashMap<&NerveChain, usize> = HashMap::new();
        for (i, c) in dst.basis.iter().enumerate() {
            index.insert(c, i);
        }
        let mut m = IntMatrix::zero(dst.generators, src.generators);
        for (ci, chain) in src.basis.iter().enumerate() {
            let img_arrows: Vec<usize> =
                chain.arrows.iter().map(|&a| u.morphism_map[a]).collect();
            if img_arrows.iter().any(|&a| u.target.is_identity(a)) {
                continue;
            }
            let img = NerveChain {
                objects: chain.objects.iter().map(|&o| u.object_map[o]).collect(),
                arrows: img_arrows,
            };
            let Some(&ti) = index.get(&img) else {
                return Err(Error::Config(format!(
                    "functor image of a chain not found at degree {n}"
                )));
            };
            let g = src.groups[ci].generators();
            if dst.groups[ti].generators() != g {
                return Err(Error::Config(
                    "coefficient groups of source and image chain differ".into(),
                ));
            }
            for k in 0..g {
                m.set(dst.offsets[ti] + k, src.offsets[ci] + k, BigInt::from(1));
            }
        }
        degrees.push(m);
    }
    let map = ChainMap { degrees };
    map.verify(source_cx, target_cx)?;
    Ok(map)
}
