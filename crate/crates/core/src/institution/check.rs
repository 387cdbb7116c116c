//! Exhaustive (within budget) verification of the satisfaction condition,
//! isomorphism invariance, and the closure coherence condition.

use super::{Institution, SpectrumView};
use crate::error::Result;
use crate::fincat::FinCategory;
use std::collections::BTreeSet;

/// Bounds on the enumeration. The coherence check ranges over subsets of
/// the formula classes, which is exponential; `max_gamma_size` keeps it to
/// the empty set, singletons and pairs by default.
#[derive(Clone, Copy, Debug)]
pub struct CheckBudget {
    pub max_signatures: usize,
    pub max_models_per_signature: usize,
    pub max_classes_per_signature: usize,
    pub max_gamma_size: usize,
    /// Cap on enumerated Γ per signature morphism in the coherence check.
    pub max_gamma_cases: usize,
}

impl Default for CheckBudget {
    fn default() -> Self {
        CheckBudget {
            max_signatures: 64,
            max_models_per_signature: 512,
            max_classes_per_signature: 4096,
            max_gamma_size: 2,
            max_gamma_cases: 600,
        }
    }
}

/// A violation witness: the morphism/model/class triple where the check
/// failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub morphism: String,
    pub model: String,
    pub class: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub i1_cases: usize,
    pub i1_counterexamples: Vec<Counterexample>,
    pub i2_cases: usize,
    pub i2_counterexamples: Vec<Counterexample>,
    pub coherence_cases: usize,
    pub coherence_counterexamples: Vec<Counterexample>,
    pub truncated: bool,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.i1_counterexamples.is_empty()
            && self.i2_counterexamples.is_empty()
            && self.coherence_counterexamples.is_empty()
    }
}

/// Pairs of isomorphic objects: f: a -> b and g: b -> a composing to the
/// identities both ways.
fn isomorphic_pairs(cat: &FinCategory) -> Vec<(usize, usize)> {
    let n = cat.object_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut iso = false;
            'search: for f in cat.hom(a, b) {
                for g in cat.hom(b, a) {
                    if cat.compose_idx(g, f) == cat.identity_of(a)
                        && cat.compose_idx(f, g) == cat.identity_of(b)
                    {
                        iso = true;
                        break 'search;
                    }
                }
            }
            if iso {
                out.push((a, b));
            }
        }
    }
    out
}

/// Verify (I1) satisfaction stability, (I2) isomorphism invariance, and —
/// with the semantic closure standing in for the per-signature closure
/// operator — the coherence condition for translations. Violations are
/// report content, never errors.
pub fn check_institution_axioms(
    inst: &dyn Institution,
    budget: CheckBudget,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    let mut signatures = inst.signatures();
    if signatures.len() > budget.max_signatures {
        signatures.truncate(budget.max_signatures);
        report.truncated = true;
    }
    let sig_set: BTreeSet<&String> = signatures.iter().collect();

    // (I1): for every morphism, codomain model and domain class, the
    // translated class holds in the model iff the class holds in the
    // reduct.
    for mor in inst.signature_morphisms() {
        if !sig_set.contains(&mor.dom) || !sig_set.contains(&mor.cod) {
            report.truncated = true;
            continue;
        }
        let models = inst.model_category(&mor.cod)?;
        let mut model_ids: Vec<String> = models.objects().to_vec();
        if model_ids.len() > budget.max_models_per_signature {
            model_ids.truncate(budget.max_models_per_signature);
            report.truncated = true;
        }
        let mut classes = inst.formula_classes(&mor.dom)?;
        if classes.len() > budget.max_classes_per_signature {
            classes.truncate(budget.max_classes_per_signature);
            report.truncated = true;
        }
        for m in &model_ids {
            let reduct = inst.reduct_model(&mor.id, m)?;
            for c in &classes {
                report.i1_cases += 1;
                let translated = inst.translate_formula(&mor.id, c)?;
                let lhs = inst.satisfies(&mor.cod, m, &translated)?;
                let rhs = inst.satisfies(&mor.dom, &reduct, c)?;
                if lhs != rhs {
                    report.i1_counterexamples.push(Counterexample {
                        morphism: mor.id.clone(),
                        model: m.clone(),
                        class: c.clone(),
                        detail: format!(
                            "M' |= translated is {lhs} but reduct |= class is {rhs}"
                        ),
                    });
                }
            }
        }
    }

    // (I2): isomorphic models satisfy the same classes.
    for sigma in &signatures {
        let cat = inst.model_category(sigma)?;
        let classes = inst.formula_classes(sigma)?;
        for (a, b) in isomorphic_pairs(&cat) {
            let ma = cat.object_id(a).clone();
            let mb = cat.object_id(b).clone();
            for c in &classes {
                report.i2_cases += 1;
                let sa = inst.satisfies(sigma, &ma, c)?;
                let sb = inst.satisfies(sigma, &mb, c)?;
                if sa != sb {
                    report.i2_counterexamples.push(Counterexample {
                        morphism: format!("iso {ma} ~ {mb}"),
                        model: ma.clone(),
                        class: c.clone(),
                        detail: format!("{ma} |= class is {sa} but {mb} |= class is {sb}"),
                    });
                }
            }
        }
    }

    // Coherence: translation of the closure lands inside the closure of
    // the translation, over bounded Γ.
    for mor in inst.signature_morphisms() {
        if !sig_set.contains(&mor.dom) || !sig_set.contains(&mor.cod) {
            continue;
        }
        let dom_view = SpectrumView::build(inst, &mor.dom)?;
        let cod_view = SpectrumView::build(inst, &mor.cod)?;
        let classes = &dom_view.classes;
        // Translate every domain class once; the coherence loop then runs
        // on indices only.
        let cod_index: std::collections::HashMap<&str, usize> = cod_view
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_str(), i))
            .collect();
        let mut trans_idx = Vec::with_capacity(classes.len());
        for c in classes {
            let t = inst.translate_formula(&mor.id, c)?;
            let ti = *cod_index
                .get(t.as_str())
                .ok_or_else(|| crate::error::Error::UnknownFormulaClass(t.clone()))?;
            trans_idx.push(ti);
        }
        let mut gammas: Vec<Vec<usize>> = vec![vec![]];
        if budget.max_gamma_size >= 1 {
            gammas.extend((0..classes.len()).map(|c| vec![c]));
        }
        if budget.max_gamma_size >= 2 {
            'pairs: for i in 0..classes.len() {
                for j in i + 1..classes.len() {
                    if gammas.len() >= budget.max_gamma_cases {
                        report.truncated = true;
                        break 'pairs;
                    }
                    gammas.push(vec![i, j]);
                }
            }
        }
        if gammas.len() > budget.max_gamma_cases {
            gammas.truncate(budget.max_gamma_cases);
            report.truncated = true;
        }
        if budget.max_gamma_size < 2 || classes.len() > budget.max_classes_per_signature {
            report.truncated = true;
        }
        for gamma in &gammas {
            report.coherence_cases += 1;
            let closed = dom_view.closure_indices(gamma);
            let translated_gamma: Vec<usize> = gamma.iter().map(|&c| trans_idx[c]).collect();
            let closed_translated: BTreeSet<usize> = cod_view
                .closure_indices(&translated_gamma)
                .into_iter()
                .collect();
            for &ci in &closed {
                if !closed_translated.contains(&trans_idx[ci]) {
                    let gamma_ids: Vec<String> =
                        gamma.iter().map(|&c| classes[c].clone()).collect();
                    report.coherence_counterexamples.push(Counterexample {
                        morphism: mor.id.clone(),
                        model: format!("gamma {{{}}}", gamma_ids.join(", ")),
                        class: classes[ci].clone(),
                        detail: "translated consequence escapes the translated closure".into(),
                    });
                }
            }
        }
    }
    Ok(report)
}
