//! Exact integer homological algebra: Smith normal form, homology of
//! complexes of finitely generated abelian groups, Euler characteristics,
//! and induced maps on homology.

pub mod matrix;
pub mod snf;

pub use matrix::IntMatrix;
pub use snf::{column_lattice_basis, kernel_basis, smith_normal_form, solve_in_lattice, SmithForm};

use crate::error::{Error, Result};
use crate::simplicial::{ChainComplex, ChainMap, ComplexKind, PresentedGroup};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// A computed homology group: free rank plus torsion invariant factors
/// (each >= 2, divisibility chain).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    #[serde(serialize_with = "serialize_torsion", skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<BigInt>,
}

fn serialize_torsion<S: serde::Serializer>(
    torsion: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(torsion.iter().map(|t| t.to_string()))
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup {
            betti: 0,
            torsion: vec![],
        }
    }

    pub fn z() -> Self {
        HomologyGroup {
            betti: 1,
            torsion: vec![],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_z(&self) -> bool {
        self.betti == 1 && self.torsion.is_empty()
    }

    pub fn generators(&self) -> usize {
        self.betti + self.torsion.len()
    }

    pub fn to_presented(&self) -> PresentedGroup {
        PresentedGroup {
            free_rank: self.betti,
            torsion: self.torsion.clone(),
        }
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Internal presentation of one homology degree, retained so induced maps
/// can be expressed in the computed bases.
#[derive(Clone, Debug)]
struct DegreePresentation {
    group: HomologyGroup,
    /// Columns: basis of the cycle lattice inside the degree's generator
    /// coordinates.
    cycle_basis: IntMatrix,
    /// U of the Smith form of the relation expression matrix E (H = Z^k /
    /// col E in cycle coordinates).
    normalizer: IntMatrix,
    /// Invariant factors of E (length <= k).
    factors: Vec<BigInt>,
}

impl DegreePresentation {
    /// Indices (in normalized coordinates) of the surviving generators,
    /// free generators first, then torsion in factor order.
    fn generator_coords(&self) -> Vec<usize> {
        let k = self.cycle_basis.cols();
        let r = self.factors.len();
        let mut coords: Vec<usize> = (r..k).collect();
        for (i, d) in self.factors.iter().enumerate() {
            if !d.is_one() {
                coords.push(i);
            }
        }
        coords
    }
}

/// Homology (or cohomology, per the complex kind) of a truncated complex.
#[derive(Clone, Debug)]
pub struct HomologyResult {
    pub kind: ComplexKind,
    pub groups: BTreeMap<usize, HomologyGroup>,
    /// Largest degree whose group is final. Degrees above it are not
    /// reported when the truncation is not exhaustive.
    pub reliable_through: usize,
    /// True when the truncation contained the entire complex; all degrees
    /// above the top computed one are then zero.
    pub exact: bool,
    presentations: BTreeMap<usize, DegreePresentation>,
}

impl HomologyResult {
    pub fn group(&self, n: usize) -> HomologyGroup {
        match self.groups.get(&n) {
            Some(g) => g.clone(),
            None if self.exact => HomologyGroup::zero(),
            None => HomologyGroup::zero(),
        }
    }
}

/// Compute ker/im at every reliable degree. Fails when the differentials
/// do not compose to zero.
pub fn homology_of_complex(cx: &ChainComplex) -> Result<HomologyResult> {
    cx.verify_dd()?;
    let d = cx.truncation;
    let top = if cx.exact_above { d } else { d - 1 };
    let mut groups = BTreeMap::new();
    let mut presentations = BTreeMap::new();
    for n in 0..=top {
        let gens_n = cx.degrees[n].generators;
        // Outgoing map from degree n and incoming map into degree n,
        // oriented by the complex kind.
        let (outgoing, outgoing_relations, incoming) = match cx.kind {
            ComplexKind::Homological => {
                let o = cx.maps[n].clone();
                let o_rel = if n == 0 {
                    IntMatrix::zero(0, 0)
                } else {
                    cx.degrees[n - 1].relation_matrix()
                };
                let i = if n + 1 <= d {
                    cx.maps[n + 1].clone()
                } else {
                    IntMatrix::zero(gens_n, 0)
                };
                (o, o_rel, i)
            }
            ComplexKind::Cohomological => {
                let o = if n + 1 <= d {
                    cx.maps[n + 1].clone()
                } else {
                    IntMatrix::zero(0, gens_n)
                };
                let o_rel = if n + 1 <= d {
                    cx.degrees[n + 1].relation_matrix()
                } else {
                    IntMatrix::zero(0, 0)
                };
                let i = cx.maps[n].clone();
                (o, o_rel, i)
            }
        };
        let own_relations = cx.degrees[n].relation_matrix();
        let pres = subquotient(&outgoing, &outgoing_relations, &[&incoming, &own_relations]);
        groups.insert(n, pres.group.clone());
        presentations.insert(n, pres);
    }
    Ok(HomologyResult {
        kind: cx.kind,
        groups,
        reliable_through: top,
        exact: cx.exact_above,
        presentations,
    })
}

/// H = {x : outgoing(x) in relations of the target} / (images of the
/// incoming maps). The two-term free presentations of the coefficient
/// groups enter through the relation matrices.
fn subquotient(
    outgoing: &IntMatrix,
    outgoing_relations: &IntMatrix,
    incoming: &[&IntMatrix],
) -> DegreePresentation {
    let gens = outgoing.cols();
    // Cycle lattice: projection of ker [outgoing | outgoing_relations].
    let cycle_basis = if outgoing.rows() == 0 {
        IntMatrix::identity(gens)
    } else {
        let combined = outgoing.hconcat(outgoing_relations);
        let ker = kernel_basis(&combined);
        let projected = {
            let mut p = IntMatrix::zero(gens, ker.cols());
            for j in 0..ker.cols() {
                for i in 0..gens {
                    p.set(i, j, ker.get(i, j).clone());
                }
            }
            p
        };
        column_lattice_basis(&projected)
    };
    let k = cycle_basis.cols();
    // Express the boundary generators in cycle coordinates.
    let total_cols: usize = incoming.iter().map(|m| m.cols()).sum();
    let mut expr = IntMatrix::zero(k, total_cols);
    let mut col = 0;
    for m in incoming {
        for j in 0..m.cols() {
            let target = m.column(j);
            let sol = solve_in_lattice(&cycle_basis, &target)
                .expect("boundary column must lie in the cycle lattice");
            for (i, v) in sol.iter().enumerate() {
                expr.set(i, col, v.clone());
            }
            col += 1;
        }
    }
    let snf = smith_normal_form(&expr);
    let factors = snf.invariant_factors.clone();
    let betti = k - factors.len();
    let torsion: Vec<BigInt> = factors.iter().filter(|f| !f.is_one()).cloned().collect();
    DegreePresentation {
        group: HomologyGroup { betti, torsion },
        cycle_basis,
        normalizer: snf.u,
        factors,
    }
}

/// How an Euler characteristic was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChiRoute {
    Homology,
    ChainRanks,
}

/// Euler characteristic data. `chi` is the alternating sum of free ranks;
/// absent when the truncation cannot determine it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerData {
    pub chi: Option<i64>,
    pub via: ChiRoute,
    pub truncation_honest: bool,
}

/// Euler characteristic of a complex: alternating sum of homology free
/// ranks; for free exhaustive complexes the chain-rank route is also
/// computed and the two are asserted equal.
pub fn euler_characteristic(cx: &ChainComplex) -> Result<EulerData> {
    let h = homology_of_complex(cx)?;
    Ok(euler_from_parts(cx, &h))
}

fn euler_from_parts(cx: &ChainComplex, h: &HomologyResult) -> EulerData {
    if !cx.exact_above {
        // Unknown degrees above the truncation with nonzero chains there:
        // the sum is not determined.
        if cx.degrees[cx.truncation].generators > 0 {
            return EulerData {
                chi: None,
                via: ChiRoute::Homology,
                truncation_honest: false,
            };
        }
    }
    let chi_h: i64 = h
        .groups
        .iter()
        .map(|(n, g)| {
            let sign = if n % 2 == 0 { 1i64 } else { -1i64 };
            sign * g.betti as i64
        })
        .sum();
    if cx.is_free() && cx.exact_above {
        let chi_r: i64 = cx
            .degrees
            .iter()
            .enumerate()
            .map(|(n, d)| {
                let sign = if n % 2 == 0 { 1i64 } else { -1i64 };
                sign * d.free_rank() as i64
            })
            .sum();
        assert_eq!(
            chi_h, chi_r,
            "alternating homology ranks disagree with alternating chain ranks"
        );
        return EulerData {
            chi: Some(chi_r),
            via: ChiRoute::ChainRanks,
            truncation_honest: true,
        };
    }
    EulerData {
        chi: Some(chi_h),
        via: ChiRoute::Homology,
        truncation_honest: cx.exact_above,
    }
}

/// Euler characteristic straight from computed homology groups.
pub fn euler_of_homology(h: &HomologyResult) -> EulerData {
    let chi: i64 = h
        .groups
        .iter()
        .map(|(n, g)| {
            let sign = if n % 2 == 0 { 1i64 } else { -1i64 };
            sign * g.betti as i64
        })
        .sum();
    EulerData {
        chi: Some(chi),
        via: ChiRoute::Homology,
        truncation_honest: h.exact,
    }
}

/// The induced map on one homology degree, expressed on the computed
/// generators (free generators first, then torsion generators).
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: HomologyGroup,
    pub target: HomologyGroup,
    pub matrix: IntMatrix,
}

impl InducedMap {
    /// Is this an isomorphism of finitely generated abelian groups?
    pub fn is_isomorphism(&self) -> bool {
        let src = self.source.to_presented();
        let tgt = self.target.to_presented();
        if src.free_rank != tgt.free_rank || src.torsion != tgt.torsion {
            return false;
        }
        let r_src = src.relation_matrix();
        let r_tgt = tgt.relation_matrix();
        // Surjectivity: [M | R_tgt] must have full target rank with unit
        // factors.
        let aug = self.matrix.hconcat(&r_tgt);
        let snf = smith_normal_form(&aug);
        if snf.invariant_factors.len() != tgt.generators()
            || snf.invariant_factors.iter().any(|f| !f.is_one())
        {
            return false;
        }
        // Injectivity: preimage of the target relations must lie in the
        // source relations.
        let gens = src.generators();
        if gens == 0 {
            return true;
        }
        let combined = self.matrix.hconcat(&r_tgt);
        let ker = kernel_basis(&combined);
        for j in 0..ker.cols() {
            let x: Vec<BigInt> = (0..gens).map(|i| ker.get(i, j).clone()).collect();
            if x.iter().all(Zero::is_zero) {
                continue;
            }
            if r_src.cols() == 0 {
                return false;
            }
            if solve_in_lattice(&r_src, &x).is_none() {
                return false;
            }
        }
        true
    }
}

/// Induced maps on homology for a verified chain map, per reliable degree.
pub fn induced_homology_map(
    f: &ChainMap,
    source_cx: &ChainComplex,
    target_cx: &ChainComplex,
) -> Result<BTreeMap<usize, InducedMap>> {
    f.verify(source_cx, target_cx)?;
    let hs = homology_of_complex(source_cx)?;
    let ht = homology_of_complex(target_cx)?;
    let top = hs.reliable_through.min(ht.reliable_through);
    let mut out = BTreeMap::new();
    for n in 0..=top {
        let ps = &hs.presentations[&n];
        let pt = &ht.presentations[&n];
        let fon = &f.degrees[n];
        // Map cycle basis through f and express in the target cycle basis.
        let k_s = ps.cycle_basis.cols();
        let k_t = pt.cycle_basis.cols();
        let mut y = IntMatrix::zero(k_t, k_s);
        for j in 0..k_s {
            let img = fon.mul_vec(&ps.cycle_basis.column(j));
            let sol = solve_in_lattice(&pt.cycle_basis, &img)
                .ok_or(Error::NotAChainMap { degree: n })?;
            for (i, v) in sol.iter().enumerate() {
                y.set(i, j, v.clone());
            }
        }
        // Normalize both sides and restrict to the surviving generators.
        let src_inv = ps.normalizer.unimodular_inverse();
        let m_full = pt.normalizer.mul(&y).mul(&src_inv);
        let src_coords = ps.generator_coords();
        let tgt_coords = pt.generator_coords();
        let mut m = IntMatrix::zero(tgt_coords.len(), src_coords.len());
        for (ri, &rc) in tgt_coords.iter().enumerate() {
            for (cj, &cc) in src_coords.iter().enumerate() {
                let mut v = m_full.get(rc, cc).clone();
                // Reduce torsion rows modulo their factor.
                if rc < pt.factors.len() {
                    let d = &pt.factors[rc];
                    if !d.is_one() {
                        v = ((&v % d) + d) % d;
                    }
                }
                m.set(ri, cj, v);
            }
        }
        out.insert(
            n,
            InducedMap {
                source: ps.group.clone(),
                target: pt.group.clone(),
                matrix: m,
            },
        );
    }
    Ok(out)
}

/// A chain map is a quasi-isomorphism when every reliable induced map is an
/// isomorphism.
pub fn is_quasi_isomorphism(maps: &BTreeMap<usize, InducedMap>) -> bool {
    maps.values().all(InducedMap::is_isomorphism)
}

#[cfg(test)]
mod tests;
