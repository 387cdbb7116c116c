//! Proof systems seen through slice homology: the formula poset, the
//! four-way theorem characterization, and the curvature hierarchy.

use crate::error::{Error, Result};
use crate::fincat::{posetal_reflection, preorder_from_pairs, slice_over, FinCategory};
use crate::homalg::{homology_of_complex, HomologyGroup};
use crate::institution::{FormulaClassId, Institution, SpectrumView};
use crate::simplicial::{assemble_cochain_complex, constant_z, Variance};
use std::collections::{BTreeMap, BTreeSet};

/// A consequence relation rendered as a poset of formulas (the posetal
/// reflection of the entailment preorder), a distinguished formula set Γ,
/// and the precomputed entailment verdicts Γ ⊢ φ.
#[derive(Clone, Debug)]
pub struct ProofSystemView {
    pub poset: FinCategory,
    /// Formula id per poset object (poset object order).
    pub formulas: Vec<FormulaClassId>,
    /// Γ as poset object ids.
    pub gamma: BTreeSet<String>,
    /// Γ ⊢ φ per formula id, computed by the source-specific route.
    pub entails: BTreeMap<FormulaClassId, bool>,
    /// Is Γ deductively closed?
    pub gamma_closed: bool,
    /// Human-readable rendering per formula id.
    pub display: BTreeMap<FormulaClassId, String>,
}

impl ProofSystemView {
    /// Entailment from the semantic consequence of an institution:
    /// formulas are the classes of a signature, φ -> ψ when
    /// V(φ) ⊆ V(ψ), and Γ ⊢ φ when V(Γ) ⊆ V(φ).
    pub fn from_institution(
        inst: &dyn Institution,
        sigma: &str,
        gamma: &[FormulaClassId],
    ) -> Result<Self> {
        let view = SpectrumView::build(inst, sigma)?;
        let classes = view.classes.clone();
        let mut pairs = Vec::new();
        for (i, a) in classes.iter().enumerate() {
            let va = view.v_of_set(&[a.clone()])?;
            for (j, b) in classes.iter().enumerate() {
                if i == j {
                    continue;
                }
                let vb = view.v_of_set(&[b.clone()])?;
                if va.is_subset(&vb) {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
        // Semantic classes have distinct value sets, so the preorder is
        // already a poset.
        let poset = crate::fincat::poset_from_pairs(&classes, &pairs)?;
        let mut entails = BTreeMap::new();
        let v_gamma = view.v_of_set(gamma)?;
        for (ci, c) in classes.iter().enumerate() {
            entails.insert(
                c.clone(),
                v_gamma.iter().all(|&m| view.holds(m, ci)),
            );
        }
        let closed: BTreeSet<usize> = view.closure(gamma)?.into_iter().collect();
        let given: BTreeSet<usize> = gamma
            .iter()
            .map(|c| view.class_index(c))
            .collect::<Result<_>>()?;
        let display = classes
            .iter()
            .map(|c| (c.clone(), inst.describe_class(sigma, c)))
            .collect();
        Ok(ProofSystemView {
            poset,
            formulas: classes.clone(),
            gamma: gamma.iter().cloned().collect(),
            entails,
            gamma_closed: given == closed,
            display,
        })
    }

    /// Entailment from a user-supplied binary preorder table. Mutually
    /// entailing formulas are collapsed by the posetal reflection; Γ ⊢ φ
    /// is read existentially (some member of Γ entails φ) which is the
    /// least set-consequence generated by the table.
    pub fn from_table(
        formulas: &[FormulaClassId],
        pairs: &[(String, String)],
        gamma: &[FormulaClassId],
    ) -> Result<Self> {
        let preorder = preorder_from_pairs(formulas, pairs)?;
        let (poset, quotient) = posetal_reflection(&preorder)?;
        let rep_of = |f: &str| -> Result<String> {
            let idx = preorder.object_idx(f)?;
            Ok(poset.object_id(quotient.object_map[idx]).clone())
        };
        let mut gamma_reps = BTreeSet::new();
        for g in gamma {
            gamma_reps.insert(rep_of(g)?);
        }
        let reps: Vec<String> = poset.objects().to_vec();
        let gamma_idx: BTreeSet<usize> = gamma_reps
            .iter()
            .map(|g| poset.object_idx(g))
            .collect::<Result<_>>()?;
        let mut entails = BTreeMap::new();
        for (fi, f) in reps.iter().enumerate() {
            let holds = gamma_idx.iter().any(|&g| !poset.hom(g, fi).is_empty());
            entails.insert(f.clone(), holds);
        }
        // Γ is closed when it is up-closed in the preorder.
        let mut closed = true;
        for &g in &gamma_idx {
            for fi in 0..poset.object_count() {
                if !poset.hom(g, fi).is_empty() && !gamma_idx.contains(&fi) {
                    closed = false;
                }
            }
        }
        let display = reps.iter().map(|r| (r.clone(), r.clone())).collect();
        Ok(ProofSystemView {
            poset,
            formulas: reps,
            gamma: gamma_reps,
            entails,
            gamma_closed: closed,
            display,
        })
    }

    /// The slice Γ/φ: formulas of Γ lying below φ, with the induced
    /// order.
    pub fn gamma_slice(&self, phi: &str) -> Result<FinCategory> {
        let selection: Vec<String> = self.gamma.iter().cloned().collect();
        Ok(slice_over(&self.poset, &selection, phi)?.slice)
    }

    /// Cochain homology profile of Γ/φ with constant Z coefficients, up
    /// to the reliable degree.
    pub fn slice_cohomology(&self, phi: &str, truncation: usize) -> Result<Vec<HomologyGroup>> {
        let slice = self.gamma_slice(phi)?;
        let system = constant_z(&slice, Variance::Contravariant);
        let cx = assemble_cochain_complex(&slice, &system, truncation)?;
        let h = homology_of_complex(&cx)?;
        Ok((0..=h.reliable_through).map(|n| h.group(n)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremEvidence {
    pub entails: bool,
    pub nonempty: bool,
    pub aspherical: bool,
    pub h_profile_trivial: bool,
    pub terminal_certificate: Option<String>,
    pub cohomology: Vec<HomologyGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremStatus {
    pub formula: FormulaClassId,
    pub theorem: bool,
    pub evidence: TheoremEvidence,
}

/// Evaluate the four equivalent theorem conditions independently: the
/// entailment verdict, slice non-emptiness, asphericity (terminal
/// certificate route), and the cohomology profile (matrix route). Any
/// disagreement is an implementation-level invariant breach, reported as
/// a hard error.
pub fn theorem_status(
    view: &ProofSystemView,
    phi: &str,
    truncation: usize,
) -> Result<TheoremStatus> {
    if !view.gamma_closed {
        return Err(Error::GammaNotClosed);
    }
    let entails = *view
        .entails
        .get(phi)
        .ok_or_else(|| Error::UnknownFormulaClass(phi.to_string()))?;
    let slice = view.gamma_slice(phi)?;
    let nonempty = slice.object_count() > 0;
    let analysis = slice.analyze();
    let terminal = analysis.terminal_objects.first().cloned();
    // Condition (2): asphericity, decided by the categorical certificate
    // route when available.
    let aspherical = if terminal.is_some() {
        true
    } else {
        super::homological_asphericity(&slice, truncation)?.aspherical
    };
    // Condition (3): the raw cochain profile, always via matrices.
    let cohomology = view.slice_cohomology(phi, truncation)?;
    let h_profile_trivial = cohomology
        .iter()
        .enumerate()
        .take(truncation)
        .all(|(n, g)| if n == 0 { g.is_z() } else { g.is_zero() });
    let verdicts = [entails, nonempty, aspherical, h_profile_trivial];
    if verdicts.iter().any(|&v| v != entails) {
        return Err(Error::PropositionEquivalenceBreach {
            formula: phi.to_string(),
            detail: format!(
                "entails={entails}, nonempty={nonempty}, aspherical={aspherical}, \
                 h_profile_trivial={h_profile_trivial}"
            ),
        });
    }
    Ok(TheoremStatus {
        formula: phi.to_string(),
        theorem: entails,
        evidence: TheoremEvidence {
            entails,
            nonempty,
            aspherical,
            h_profile_trivial,
            terminal_certificate: terminal,
            cohomology,
        },
    })
}

/// Per-formula curvature label. `exact` is false when the truncation may
/// hide higher nonvanishing degrees, in which case a curvature degree
/// reads "at least k".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvatureStatus {
    Theorem { exact: bool },
    Void,
    Curvature { k: usize, exact: bool },
}

impl std::fmt::Display for CurvatureStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CurvatureStatus::Theorem { exact: true } => write!(f, "theorem"),
            CurvatureStatus::Theorem { exact: false } => write!(f, "theorem (up to truncation)"),
            CurvatureStatus::Void => write!(f, "void"),
            CurvatureStatus::Curvature { k, exact: true } => write!(f, "{k}-curvature"),
            CurvatureStatus::Curvature { k, exact: false } => write!(f, "curvature >= {k}"),
        }
    }
}

/// Partition every formula of the view by its slice cohomology: theorems
/// (nonempty slice, vanishing above degree 0), void formulas (empty
/// slice), and k-curvatures (k = top nonvanishing degree within the
/// truncation). Γ need not be closed here; the labels follow the raw
/// profiles.
pub fn curvature_hierarchy(
    view: &ProofSystemView,
    truncation: usize,
) -> Result<Vec<(FormulaClassId, CurvatureStatus, Vec<HomologyGroup>)>> {
    let mut out = Vec::with_capacity(view.formulas.len());
    for phi in &view.formulas {
        let slice = view.gamma_slice(phi)?;
        if slice.object_count() == 0 {
            out.push((phi.clone(), CurvatureStatus::Void, vec![]));
            continue;
        }
        let system = constant_z(&slice, Variance::Contravariant);
        let cx = assemble_cochain_complex(&slice, &system, truncation)?;
        let exact = cx.exact_above;
        let h = homology_of_complex(&cx)?;
        let profile: Vec<HomologyGroup> = (0..=h.reliable_through).map(|n| h.group(n)).collect();
        let top_nonzero = profile.iter().rposition(|g| !g.is_zero());
        let status = match top_nonzero {
            None | Some(0) => CurvatureStatus::Theorem { exact },
            Some(k) => CurvatureStatus::Curvature { k, exact },
        };
        out.push((phi.clone(), status, profile));
    }
    Ok(out)
}
