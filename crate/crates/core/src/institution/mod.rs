//! The abstract logic layer: a pluggable institution contract, the
//! spectral operators V/D/I over model spaces, closure and consequence,
//! and the satisfaction-condition checker.

mod check;

pub use check::{check_institution_axioms, AxiomReport, CheckBudget, Counterexample};

use crate::error::{Error, Result};
use crate::fincat::FinCategory;
use std::collections::BTreeSet;
use std::sync::Arc;

pub type SignatureId = String;
pub type FormulaClassId = String;
pub type ModelId = String;

/// A signature morphism: an identifier plus its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureMorphism {
    pub id: String,
    pub dom: SignatureId,
    pub cod: SignatureId,
}

/// The pluggable institution contract. Instances supply finitely many
/// signatures, finitely many semantic formula classes per signature, a
/// finite model category per signature, and a decidable satisfaction
/// relation; translation and reduct must be total on their stated domains.
///
/// Results are always relative to the declared finite model universe of
/// the instance.
pub trait Institution: Send + Sync {
    fn name(&self) -> String;
    fn signatures(&self) -> Vec<SignatureId>;
    fn signature_morphisms(&self) -> Vec<SignatureMorphism>;
    /// Duplicate-free list of semantic formula classes over a signature.
    fn formula_classes(&self, sigma: &str) -> Result<Vec<FormulaClassId>>;
    fn model_category(&self, sigma: &str) -> Result<Arc<FinCategory>>;
    fn satisfies(&self, sigma: &str, model: &str, class: &str) -> Result<bool>;
    /// Sentence translation along a signature morphism.
    fn translate_formula(&self, morphism: &str, class: &str) -> Result<FormulaClassId>;
    /// Model reduct against a signature morphism (models of the codomain
    /// restrict to models of the domain).
    fn reduct_model(&self, morphism: &str, model: &str) -> Result<ModelId>;
    /// Human-readable description of a model, for report legends.
    fn describe_model(&self, _sigma: &str, model: &str) -> String {
        model.to_string()
    }
    /// Human-readable rendering of a formula class (e.g. a canonical
    /// representative formula).
    fn describe_class(&self, _sigma: &str, class: &str) -> String {
        class.to_string()
    }
}

/// The value spectrum of a signature: per-class model sets V(φ), their
/// complements D(φ), and the dual view O_{Σ,M} per model.
#[derive(Clone, Debug)]
pub struct SpectrumView {
    pub sigma: SignatureId,
    /// All model object ids, in model-category order.
    pub spec: Vec<ModelId>,
    pub classes: Vec<FormulaClassId>,
    /// v_of[c] = set of indices into `spec` satisfying class c.
    v_of: Vec<BTreeSet<usize>>,
}

impl SpectrumView {
    pub fn build(inst: &dyn Institution, sigma: &str) -> Result<SpectrumView> {
        let cat = inst.model_category(sigma)?;
        let spec: Vec<ModelId> = cat.objects().to_vec();
        let classes = inst.formula_classes(sigma)?;
        let mut v_of = Vec::with_capacity(classes.len());
        for c in &classes {
            let mut set = BTreeSet::new();
            for (mi, m) in spec.iter().enumerate() {
                if inst.satisfies(sigma, m, c)? {
                    set.insert(mi);
                }
            }
            v_of.push(set);
        }
        Ok(SpectrumView {
            sigma: sigma.to_string(),
            spec,
            classes,
            v_of,
        })
    }

    pub fn class_index(&self, class: &str) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c == class)
            .ok_or_else(|| Error::UnknownFormulaClass(class.to_string()))
    }

    pub fn model_index(&self, model: &str) -> Result<usize> {
        self.spec
            .iter()
            .position(|m| m == model)
            .ok_or_else(|| Error::UnknownModel(model.to_string()))
    }

    /// V(φ) as model ids.
    pub fn v_of(&self, class: &str) -> Result<Vec<ModelId>> {
        let ci = self.class_index(class)?;
        Ok(self.v_of[ci].iter().map(|&m| self.spec[m].clone()).collect())
    }

    /// D(φ) = Spec(Σ) − V(φ).
    pub fn d_of(&self, class: &str) -> Result<Vec<ModelId>> {
        let ci = self.class_index(class)?;
        Ok((0..self.spec.len())
            .filter(|m| !self.v_of[ci].contains(m))
            .map(|m| self.spec[m].clone())
            .collect())
    }

    /// O_{Σ,M}: the classes a model satisfies.
    pub fn o_at(&self, model: &str) -> Result<Vec<FormulaClassId>> {
        let mi = self.model_index(model)?;
        Ok((0..self.classes.len())
            .filter(|&c| self.v_of[c].contains(&mi))
            .map(|c| self.classes[c].clone())
            .collect())
    }

    /// V(Γ) as a set of model indices; Γ = ∅ gives the whole spectrum.
    pub fn v_of_set(&self, gamma: &[FormulaClassId]) -> Result<BTreeSet<usize>> {
        let idx: Vec<usize> = gamma
            .iter()
            .map(|c| self.class_index(c))
            .collect::<Result<_>>()?;
        Ok(self.v_of_indices(&idx))
    }

    /// V(Γ) for class indices.
    pub fn v_of_indices(&self, gamma: &[usize]) -> BTreeSet<usize> {
        let mut acc: BTreeSet<usize> = (0..self.spec.len()).collect();
        for &ci in gamma {
            acc = acc.intersection(&self.v_of[ci]).copied().collect();
        }
        acc
    }

    /// Closure over class indices.
    pub fn closure_indices(&self, gamma: &[usize]) -> Vec<usize> {
        self.i_of(&self.v_of_indices(gamma))
    }

    /// Does the model satisfy the class, per the precomputed table?
    pub fn holds(&self, model_idx: usize, class_idx: usize) -> bool {
        self.v_of[class_idx].contains(&model_idx)
    }

    /// I(U) over model indices: classes satisfied by every model of U;
    /// the empty intersection convention yields all classes.
    pub fn i_of(&self, models: &BTreeSet<usize>) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| models.iter().all(|m| self.v_of[c].contains(m)))
            .collect()
    }

    /// Closure Γ̿ = I(V(Γ)) as class indices.
    pub fn closure(&self, gamma: &[FormulaClassId]) -> Result<Vec<usize>> {
        let v = self.v_of_set(gamma)?;
        Ok(self.i_of(&v))
    }
}

/// A set of formula classes together with its theory flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryState {
    pub sigma: SignatureId,
    pub gamma: Vec<FormulaClassId>,
    pub is_theory: bool,
    pub consistent: bool,
}

/// V(Γ) together with the full subcategory of the model category it
/// generates.
pub fn models_of(
    inst: &dyn Institution,
    sigma: &str,
    gamma: &[FormulaClassId],
) -> Result<(Vec<ModelId>, FinCategory)> {
    let view = SpectrumView::build(inst, sigma)?;
    let v = view.v_of_set(gamma)?;
    let ids: Vec<ModelId> = v.iter().map(|&m| view.spec[m].clone()).collect();
    let cat = inst.model_category(sigma)?;
    let sub = crate::fincat::full_subcategory(&cat, &ids)?;
    Ok((ids, sub))
}

/// Γ ⊩ φ: every model of Γ is a model of φ.
pub fn semantic_consequence(
    inst: &dyn Institution,
    sigma: &str,
    gamma: &[FormulaClassId],
    phi: &str,
) -> Result<bool> {
    let view = SpectrumView::build(inst, sigma)?;
    semantic_consequence_in_view(&view, gamma, phi)
}

pub fn semantic_consequence_in_view(
    view: &SpectrumView,
    gamma: &[FormulaClassId],
    phi: &str,
) -> Result<bool> {
    let v_gamma = view.v_of_set(gamma)?;
    let ci = view.class_index(phi)?;
    Ok(v_gamma.iter().all(|m| view.holds(*m, ci)))
}

/// Replace Γ by its closure Γ̿ and report the theory flags; idempotent.
pub fn closure_and_theory(
    inst: &dyn Institution,
    sigma: &str,
    gamma: &[FormulaClassId],
) -> Result<TheoryState> {
    let view = SpectrumView::build(inst, sigma)?;
    let closed = view.closure(gamma)?;
    let consistent = !view.v_of_set(gamma)?.is_empty();
    let gamma_out: Vec<FormulaClassId> = closed.iter().map(|&c| view.classes[c].clone()).collect();
    Ok(TheoryState {
        sigma: sigma.to_string(),
        gamma: gamma_out,
        is_theory: true,
        consistent,
    })
}

/// Theory flags for Γ as given (without replacing it by the closure).
pub fn theory_state_of(
    inst: &dyn Institution,
    sigma: &str,
    gamma: &[FormulaClassId],
) -> Result<TheoryState> {
    let view = SpectrumView::build(inst, sigma)?;
    let closed = view.closure(gamma)?;
    let given: BTreeSet<usize> = gamma
        .iter()
        .map(|c| view.class_index(c))
        .collect::<Result<_>>()?;
    let closed_set: BTreeSet<usize> = closed.into_iter().collect();
    Ok(TheoryState {
        sigma: sigma.to_string(),
        gamma: gamma.to_vec(),
        is_theory: given == closed_set,
        consistent: !view.v_of_set(gamma)?.is_empty(),
    })
}

/// I(U) for a set of model ids; |U| = 1 recovers the elementary diagram
/// M̄, and equality of two such sets is elementary equivalence.
pub fn theory_of_models(
    inst: &dyn Institution,
    sigma: &str,
    models: &[ModelId],
) -> Result<Vec<FormulaClassId>> {
    let view = SpectrumView::build(inst, sigma)?;
    let mut u = BTreeSet::new();
    for m in models {
        u.insert(view.model_index(m)?);
    }
    Ok(view
        .i_of(&u)
        .into_iter()
        .map(|c| view.classes[c].clone())
        .collect())
}

/// Elementary equivalence: M̄ = M̄′.
pub fn elementarily_equivalent(
    inst: &dyn Institution,
    sigma: &str,
    m1: &str,
    m2: &str,
) -> Result<bool> {
    let a = theory_of_models(inst, sigma, &[m1.to_string()])?;
    let b = theory_of_models(inst, sigma, &[m2.to_string()])?;
    Ok(a == b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndependenceStatus {
    Provable,
    Refutable,
    Independent,
}

impl IndependenceStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            IndependenceStatus::Provable => "provable",
            IndependenceStatus::Refutable => "refutable",
            IndependenceStatus::Independent => "independent",
        }
    }
}

/// Classify φ against a theory Γ: provable when V(Γ) ⊆ V(φ), refutable
/// when V(Γ) ∩ V(φ) = ∅, independent when both the intersection with
/// V(φ) and with D(φ) are inhabited.
pub fn independence_status(
    inst: &dyn Institution,
    sigma: &str,
    gamma: &[FormulaClassId],
    phi: &str,
) -> Result<IndependenceStatus> {
    let state = theory_state_of(inst, sigma, gamma)?;
    if !state.is_theory {
        return Err(Error::GammaNotATheory);
    }
    let view = SpectrumView::build(inst, sigma)?;
    let v_gamma = view.v_of_set(gamma)?;
    let ci = view.class_index(phi)?;
    let inter = v_gamma.iter().filter(|&&m| view.holds(m, ci)).count();
    if inter == v_gamma.len() {
        Ok(IndependenceStatus::Provable)
    } else if inter == 0 {
        Ok(IndependenceStatus::Refutable)
    } else {
        Ok(IndependenceStatus::Independent)
    }
}

#[cfg(test)]
mod tests;
