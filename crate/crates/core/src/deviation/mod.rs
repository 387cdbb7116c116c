//! Deviation categories Mod_Σ[Γ]/M and their homological reports:
//! errancy, curvature sets, quasi-model verdicts.

mod claims;
mod proof;

pub use claims::{
    random_loop_free_poset, random_poset_with_top, verify_paper_claims, ClaimCase, ClaimConfig,
    ClaimKind, ClaimReport,
};
pub use proof::{
    curvature_hierarchy, theorem_status, CurvatureStatus, ProofSystemView, TheoremEvidence,
    TheoremStatus,
};

use crate::error::Result;
use crate::fincat::{slice_over, FinCategory, SliceResult};
use crate::homalg::{
    euler_characteristic, homology_of_complex, EulerData, HomologyGroup, HomologyResult,
};
use crate::institution::{FormulaClassId, Institution, SpectrumView};
use crate::simplicial::{
    assemble_chain_complex, assemble_cochain_complex, constant_z, CoefficientSystem, Variance,
};
use serde::Serialize;

/// One homology group entry of a report.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomologyEntry {
    pub n: usize,
    pub betti: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<String>,
}

/// Report rows for the reliable degrees, trailing zero groups trimmed (the
/// degree-0 row always stays).
pub fn homology_entries(h: &HomologyResult) -> Vec<HomologyEntry> {
    let mut out: Vec<HomologyEntry> = (0..=h.reliable_through)
        .map(|n| {
            let g = h.group(n);
            HomologyEntry {
                n,
                betti: g.betti,
                torsion: g.torsion.iter().map(|t| t.to_string()).collect(),
            }
        })
        .collect();
    while out.len() > 1 {
        let last = out.last().unwrap();
        if last.betti == 0 && last.torsion.is_empty() {
            out.pop();
        } else {
            break;
        }
    }
    out
}

/// Conventions block carried by every report: which route evaluates the
/// coefficients where, and what the verdicts mean under truncation.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Conventions {
    pub chain_route: String,
    pub cochain_route: String,
    pub coefficients: String,
    pub verdict_scope: String,
}

impl Conventions {
    fn new(coefficients: &str, truncation: usize) -> Self {
        Conventions {
            chain_route: "covariant, coefficient taken at the chain top object".into(),
            cochain_route: "contravariant, coefficient taken at the chain top object".into(),
            coefficients: coefficients.to_string(),
            verdict_scope: format!("homological verdicts cover degrees 0..={}", truncation - 1),
        }
    }
}

/// Per-formula section of a deviation report. Serialized fields follow
/// the report schema; in-memory extras are skipped.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaDeviation {
    pub formula: FormulaClassId,
    pub satisfied: bool,
    pub homology: Vec<HomologyEntry>,
    pub chi: Option<i64>,
    pub aspherical: bool,
    #[serde(skip)]
    pub display: String,
    #[serde(skip)]
    pub slice_size: usize,
    #[serde(skip)]
    pub chi_data: Option<EulerData>,
    #[serde(skip)]
    pub terminal_certificate: Option<String>,
}

/// The full report for a model against a formula set: per-formula slice
/// homology, Euler characteristics, errancy and the quasi-model verdict.
#[derive(Clone, Debug, Serialize)]
pub struct DeviationReport {
    pub schema: String,
    pub sigma: String,
    pub model: String,
    pub truncation: usize,
    pub conventions: Conventions,
    pub per_formula: Vec<FormulaDeviation>,
    pub errant: bool,
    pub curvature_set: Vec<FormulaClassId>,
    pub quasi_model: bool,
    #[serde(skip)]
    pub model_display: String,
}

impl DeviationReport {
    /// Did the model satisfy every formula (the non-homological verdict)?
    pub fn is_model(&self) -> bool {
        self.per_formula.iter().all(|f| f.satisfied)
    }
}

/// The deviation category Mod_Σ[Γ]/M with its projection (the deviation
/// functor). M need not satisfy Γ; when it does, (M, id) is terminal.
pub fn deviation_category(
    inst: &dyn Institution,
    sigma: &str,
    gamma: &[FormulaClassId],
    model: &str,
) -> Result<SliceResult> {
    let cat = inst.model_category(sigma)?;
    cat.object_idx(model)?;
    let view = SpectrumView::build(inst, sigma)?;
    let v = view.v_of_set(gamma)?;
    let selection: Vec<String> = v.iter().map(|&m| view.spec[m].clone()).collect();
    slice_over(&cat, &selection, model)
}

/// Asphericity verdict with its certificate: a terminal object short-cuts
/// the homology computation.
#[derive(Clone, Debug)]
pub struct AsphericityResult {
    pub aspherical: bool,
    /// Terminal object id when the certificate route applied.
    pub certificate: Option<String>,
    /// Homology profile when the matrix route ran.
    pub homology: Option<Vec<HomologyGroup>>,
}

/// A category is homologically aspherical up to the truncation when
/// H_0 = Z and H_n = 0 for 1 <= n <= D-1 with constant Z coefficients.
pub fn homological_asphericity(cat: &FinCategory, truncation: usize) -> Result<AsphericityResult> {
    let analysis = cat.analyze();
    if let Some(t) = analysis.terminal_objects.first() {
        return Ok(AsphericityResult {
            aspherical: true,
            certificate: Some(t.clone()),
            homology: None,
        });
    }
    let system = constant_z(cat, Variance::Covariant);
    let cx = assemble_chain_complex(cat, &system, truncation)?;
    let h = homology_of_complex(&cx)?;
    let profile: Vec<HomologyGroup> = (0..=h.reliable_through).map(|n| h.group(n)).collect();
    let ok = aspherical_from_groups(&h, truncation);
    Ok(AsphericityResult {
        aspherical: ok,
        certificate: None,
        homology: Some(profile),
    })
}

fn aspherical_from_groups(h: &HomologyResult, truncation: usize) -> bool {
    (0..=h.reliable_through.min(truncation - 1)).all(|n| {
        let g = h.group(n);
        if n == 0 {
            g.is_z()
        } else {
            g.is_zero()
        }
    })
}

/// Full deviation report for a model against a set of formula classes.
///
/// Each φ gets its own slice Mod_Σ[φ]/M. With no coefficient system given
/// the constant-Z chain and cochain routes are both computed; the chain
/// route is the reported one. A custom system runs on the route matching
/// its variance.
pub fn deviation_report(
    inst: &dyn Institution,
    sigma: &str,
    gamma: &[FormulaClassId],
    model: &str,
    coefficients: Option<&CoefficientSystem>,
    truncation: usize,
) -> Result<DeviationReport> {
    let cat = inst.model_category(sigma)?;
    cat.object_idx(model)?;
    let view = SpectrumView::build(inst, sigma)?;
    let mut per_formula = Vec::with_capacity(gamma.len());
    for phi in gamma {
        per_formula.push(formula_deviation(
            inst,
            sigma,
            &cat,
            &view,
            phi,
            model,
            coefficients,
            truncation,
        )?);
    }
    finish_report(inst, sigma, model, coefficients, truncation, per_formula)
}

pub fn finish_report(
    inst: &dyn Institution,
    sigma: &str,
    model: &str,
    coefficients: Option<&CoefficientSystem>,
    truncation: usize,
    per_formula: Vec<FormulaDeviation>,
) -> Result<DeviationReport> {
    let curvature_set: Vec<FormulaClassId> = per_formula
        .iter()
        .filter(|f| f.chi != Some(1))
        .map(|f| f.formula.clone())
        .collect();
    let errant = !curvature_set.is_empty();
    let quasi_model = per_formula.iter().all(|f| f.aspherical);
    let coeff_name = coefficients.map_or("constant Z".to_string(), |s| {
        format!("custom ({})", s.variance.as_str())
    });
    Ok(DeviationReport {
        schema: crate::SCHEMA.to_string(),
        sigma: sigma.to_string(),
        model: model.to_string(),
        truncation,
        conventions: Conventions::new(&coeff_name, truncation),
        per_formula,
        errant,
        curvature_set,
        quasi_model,
        model_display: inst.describe_model(sigma, model),
    })
}

/// The per-formula computation, exposed for parallel drivers: the result
/// for one φ is independent of every other formula.
#[allow(clippy::too_many_arguments)]
pub fn formula_deviation(
    inst: &dyn Institution,
    sigma: &str,
    cat: &FinCategory,
    view: &SpectrumView,
    phi: &FormulaClassId,
    model: &str,
    coefficients: Option<&CoefficientSystem>,
    truncation: usize,
) -> Result<FormulaDeviation> {
    let ci = view.class_index(phi)?;
    let selection: Vec<String> = (0..view.spec.len())
        .filter(|&m| view.holds(m, ci))
        .map(|m| view.spec[m].clone())
        .collect();
    let slice = slice_over(cat, &selection, model)?;
    let satisfied = inst.satisfies(sigma, model, phi)?;
    let (h, chi_data) = match coefficients {
        None => {
            let cov = constant_z(&slice.slice, Variance::Covariant);
            let chain = assemble_chain_complex(&slice.slice, &cov, truncation)?;
            let h = homology_of_complex(&chain)?;
            let chi = euler_characteristic(&chain)?;
            // The dual route is computed alongside; for constant
            // coefficients the two routes must agree on asphericity.
            let con = constant_z(&slice.slice, Variance::Contravariant);
            let cochain = assemble_cochain_complex(&slice.slice, &con, truncation)?;
            let hc = homology_of_complex(&cochain)?;
            debug_assert_eq!(
                aspherical_from_groups(&h, truncation),
                aspherical_from_groups(&hc, truncation),
            );
            (h, chi)
        }
        Some(system) => {
            check_system_base(system, cat)?;
            let pulled = crate::simplicial::pullback_system(system, &slice.projection)?;
            let cx = match system.variance {
                Variance::Covariant => assemble_chain_complex(&slice.slice, &pulled, truncation)?,
                Variance::Contravariant => {
                    assemble_cochain_complex(&slice.slice, &pulled, truncation)?
                }
            };
            let h = homology_of_complex(&cx)?;
            let chi = euler_characteristic(&cx)?;
            (h, chi)
        }
    };
    let analysis = slice.slice.analyze();
    let aspherical = if analysis.terminal_objects.is_empty() {
        aspherical_from_groups(&h, truncation)
    } else {
        true
    };
    Ok(FormulaDeviation {
        formula: phi.clone(),
        satisfied,
        homology: homology_entries(&h),
        chi: chi_data.chi,
        aspherical,
        display: inst.describe_class(sigma, phi),
        slice_size: slice.slice.object_count(),
        chi_data: Some(chi_data),
        terminal_certificate: analysis.terminal_objects.first().cloned(),
    })
}

fn check_system_base(system: &CoefficientSystem, ambient: &FinCategory) -> Result<()> {
    if system.base.objects() != ambient.objects() {
        return Err(crate::error::Error::Config(
            "coefficient system base does not match the model category".into(),
        ));
    }
    Ok(())
}
