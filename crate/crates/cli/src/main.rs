//! Batch command-line front end: load categories and instances, run the
//! homological computations, and emit human tables or machine JSON with
//! byte-stable output.

mod inputs;
mod render;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use devhom::deviation::{
    curvature_hierarchy, deviation_report, finish_report, formula_deviation, theorem_status,
    verify_paper_claims, ClaimConfig, ClaimKind, ProofSystemView,
};
use devhom::homalg::{euler_characteristic, homology_of_complex};
use devhom::institution::{
    check_institution_axioms, closure_and_theory, CheckBudget, Institution, SpectrumView,
};
use devhom::instances::fo::FoInstitution;
use devhom::instances::prop::PropInstitution;
use devhom::simplicial::{
    assemble_chain_complex, assemble_cochain_complex, constant_z, Variance,
};
use rayon::prelude::*;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Parser)]
#[command(
    name = "devhom",
    version,
    about = "Homological deviation of structures from theories: slice categories, nerve homology, errancy and quasi-model verdicts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the category axioms (identities, closure, associativity) of
    /// a category description file; findings exit with code 2.
    Validate {
        #[arg(long)]
        category: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integer homology of the nerve of a finite category (chain route;
    /// --cochain for the dual), with Betti numbers, torsion and the Euler
    /// characteristic.
    Homology {
        #[arg(long)]
        category: PathBuf,
        /// Truncation degree D (homology reported through D-1, or D when
        /// the complex is exhausted).
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        /// Use the cochain (contravariant) route.
        #[arg(long)]
        cochain: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The slice category C/X: objects are arrows into X, morphisms are
    /// commuting triangles. --restrict keeps only sources from a listed
    /// object set.
    Slice {
        #[arg(long)]
        category: PathBuf,
        /// Object to slice over.
        #[arg(long)]
        over: String,
        /// Comma-separated object selection restricting the slice sources.
        #[arg(long)]
        restrict: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-formula deviation slices Mod[phi]/M with homology, Euler
    /// characteristic, errancy, curvature set and the quasi-model
    /// verdict; an errant model exits with code 2.
    Deviation {
        /// Instance: `prop` or `graphs`.
        #[arg(long)]
        instance: String,
        /// Atom bound for the propositional instance.
        #[arg(long)]
        atoms: Option<usize>,
        /// Comma-separated atom list naming the signature (propositional;
        /// defaults to all atoms).
        #[arg(long)]
        sigma: Option<String>,
        /// Formulas of Gamma, separated by `;` (propositional instance).
        #[arg(long)]
        gamma: Option<String>,
        /// Universe bound for the graphs instance.
        #[arg(long)]
        max_size: Option<usize>,
        /// Closed formulas for the graphs instance (repeatable); they
        /// form both the formula classes and Gamma.
        #[arg(long)]
        fragment: Vec<String>,
        /// Config file for the graphs instance.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Model id (propositional: v-prefixed bits; graphs: structure id).
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        /// Fan the per-formula computations out across threads; output is
        /// identical to the serial run.
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Four-way theorem characterization of Gamma |- phi: entailment,
    /// slice non-emptiness, asphericity, and the cohomology profile of
    /// the slice Gamma/phi must agree.
    Theorem {
        #[arg(long)]
        instance: String,
        #[arg(long)]
        atoms: Option<usize>,
        /// Formulas generating the theory (closed before checking),
        /// separated by `;`.
        #[arg(long)]
        gamma: String,
        /// The candidate formula.
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition all formulas by the cohomology of their slices
    /// Gamma/phi: theorems, void formulas, and k-curvatures.
    Curvature {
        /// Instance: `prop` (with --atoms/--gamma) or omit with
        /// --preorder for a custom entailment table.
        #[arg(long)]
        instance: Option<String>,
        #[arg(long)]
        atoms: Option<usize>,
        /// Formulas generating Gamma, separated by `;` (closed first).
        #[arg(long)]
        gamma: Option<String>,
        /// Custom entailment table file: {formulas, pairs, gamma}.
        #[arg(long)]
        preorder: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the satisfaction condition (I1), isomorphism invariance
    /// (I2) and the closure coherence condition on an instance;
    /// counterexamples exit with code 2.
    CheckInstitution {
        /// Instance: `prop` or `graphs`.
        #[arg(long)]
        instance: String,
        #[arg(long)]
        atoms: Option<usize>,
        /// Use the fault-injected propositional variant (for exercising
        /// the checker).
        #[arg(long)]
        faulty: bool,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        fragment: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Side-by-side claim checkers: product homology, coproduct
    /// additivity (asserted), stabilizing nested chains, and the
    /// finite-field site with units coefficients. Disagreement exits
    /// with code 2.
    VerifyClaims {
        /// One of products|coproducts|filtered|fields.
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = 20)]
        cases: usize,
        /// Primes for the fields checker, comma-separated.
        #[arg(long, default_value = "2,3,5")]
        primes: String,
        #[arg(long, default_value_t = 4)]
        degree_bound: u32,
        /// Field-site config file ({"primes": [...], "degree_bound": n});
        /// overrides --primes/--degree-bound.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the bundled example corpus (categories and instance
    /// configurations) into a directory.
    Examples {
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let kind = e.kind();
            let _ = e.print();
            return if kind == ErrorKind::DisplayHelp || kind == ErrorKind::DisplayVersion {
                ExitCode::SUCCESS
            } else {
                eprintln!(
                    "subcommands: validate, homology, slice, deviation, theorem, curvature, check-institution, verify-claims, examples"
                );
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write `{}`: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_truncation(d: usize) -> Result<(), String> {
    if d < 2 {
        return Err(format!("truncation must be at least 2, got {d}"));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Validate {
            category,
            format,
            out,
        } => {
            let cat = inputs::load_category(&category).map_err(|e| e.to_string())?;
            let diagnostics = cat.validate();
            #[derive(Serialize)]
            struct ValidateOut {
                schema: String,
                valid: bool,
                diagnostics: Vec<String>,
            }
            let payload = ValidateOut {
                schema: devhom::SCHEMA.to_string(),
                valid: diagnostics.is_empty(),
                diagnostics: diagnostics.iter().map(|d| d.message.clone()).collect(),
            };
            let text = match format {
                Format::Json => render::to_json_string(&payload),
                Format::Table => {
                    if payload.valid {
                        format!(
                            "valid: {} objects, {} morphisms, all axioms hold\n",
                            cat.object_count(),
                            cat.morphism_count()
                        )
                    } else {
                        let mut s = String::from("invalid:\n");
                        for d in &payload.diagnostics {
                            s.push_str(&format!("  - {d}\n"));
                        }
                        s
                    }
                }
            };
            emit(&text, &out)?;
            Ok(if payload.valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Homology {
            category,
            max_dim,
            cochain,
            format,
            out,
        } => {
            check_truncation(max_dim)?;
            let cat = inputs::load_category(&category).map_err(|e| e.to_string())?;
            let (cx, h) = if cochain {
                let sys = constant_z(&cat, Variance::Contravariant);
                let cx = assemble_cochain_complex(&cat, &sys, max_dim).map_err(err_str)?;
                let h = homology_of_complex(&cx).map_err(err_str)?;
                (cx, h)
            } else {
                let sys = constant_z(&cat, Variance::Covariant);
                let cx = assemble_chain_complex(&cat, &sys, max_dim).map_err(err_str)?;
                let h = homology_of_complex(&cx).map_err(err_str)?;
                (cx, h)
            };
            let chi = euler_characteristic(&cx).map_err(err_str)?;
            #[derive(Serialize)]
            struct HomologyOut {
                schema: String,
                #[serde(rename = "H")]
                h: Vec<devhom::deviation::HomologyEntry>,
                chi: Option<i64>,
                exact: bool,
            }
            let payload = HomologyOut {
                schema: devhom::SCHEMA.to_string(),
                h: devhom::deviation::homology_entries(&h),
                chi: chi.chi,
                exact: h.exact,
            };
            let text = match format {
                Format::Json => render::to_json_string(&payload),
                Format::Table => format!(
                    "{}\nchi: {}   exact through reported degrees: {}\n",
                    render::profile_line(&payload.h),
                    payload
                        .chi
                        .map_or("undefined".to_string(), |c| c.to_string()),
                    if payload.exact { "yes" } else { "no" }
                ),
            };
            emit(&text, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Slice {
            category,
            over,
            restrict,
            format,
            out,
        } => {
            let cat = inputs::load_category(&category).map_err(|e| e.to_string())?;
            let slice = match restrict {
                Some(csv) => {
                    let selection: Vec<String> =
                        csv.split(',').map(|s| s.trim().to_string()).collect();
                    devhom::fincat::slice_over(&cat, &selection, &over).map_err(err_str)?
                }
                None => devhom::fincat::slice(&cat, &over).map_err(err_str)?,
            };
            let analysis = slice.slice.analyze();
            #[derive(Serialize)]
            struct MorOut {
                id: String,
                dom: String,
                cod: String,
            }
            #[derive(Serialize)]
            struct SliceOut {
                schema: String,
                over: String,
                objects: Vec<String>,
                morphisms: Vec<MorOut>,
                terminal_objects: Vec<String>,
                loop_free: bool,
            }
            let payload = SliceOut {
                schema: devhom::SCHEMA.to_string(),
                over: over.clone(),
                objects: slice.slice.objects().to_vec(),
                morphisms: slice
                    .slice
                    .morphisms()
                    .iter()
                    .map(|m| MorOut {
                        id: m.id.clone(),
                        dom: slice.slice.object_id(m.dom).clone(),
                        cod: slice.slice.object_id(m.cod).clone(),
                    })
                    .collect(),
                terminal_objects: analysis.terminal_objects.clone(),
                loop_free: analysis.loop_free,
            };
            let text = match format {
                Format::Json => render::to_json_string(&payload),
                Format::Table => {
                    let mut s = format!(
                        "slice over `{}`: {} objects, {} morphisms\n",
                        over,
                        payload.objects.len(),
                        payload.morphisms.len()
                    );
                    for o in &payload.objects {
                        s.push_str(&format!("  object {o}\n"));
                    }
                    for m in &payload.morphisms {
                        s.push_str(&format!("  morphism {}: {} -> {}\n", m.id, m.dom, m.cod));
                    }
                    s.push_str(&format!(
                        "terminal: [{}]   loop-free: {}\n",
                        payload.terminal_objects.join(", "),
                        payload.loop_free
                    ));
                    s
                }
            };
            emit(&text, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Deviation {
            instance,
            atoms,
            sigma,
            gamma,
            max_size,
            fragment,
            config,
            model,
            max_dim,
            parallel,
            format,
            out,
        } => {
            check_truncation(max_dim)?;
            let (inst, sig, gamma_classes): (Box<dyn Institution>, String, Vec<String>) =
                match instance.as_str() {
                    "prop" => {
                        let atoms = atoms.ok_or("`prop` needs --atoms")?;
                        let inst = PropInstitution::new(atoms).map_err(err_str)?;
                        let sig = resolve_prop_sigma(&inst, &sigma)?;
                        let gamma_text = gamma.ok_or("`prop` needs --gamma")?;
                        let classes = classify_gamma(&inst, &sig, &gamma_text)?;
                        (Box::new(inst), sig, classes)
                    }
                    "graphs" => {
                        let inst = build_graphs(max_size, &fragment, &config)?;
                        let classes = inst.formula_classes("fo").map_err(err_str)?;
                        (Box::new(inst), "fo".to_string(), classes)
                    }
                    other => return Err(format!("unknown instance `{other}`")),
                };
            let report = if parallel {
                let cat = inst.model_category(&sig).map_err(err_str)?;
                let view = SpectrumView::build(inst.as_ref(), &sig).map_err(err_str)?;
                let per_formula = gamma_classes
                    .par_iter()
                    .map(|phi| {
                        formula_deviation(
                            inst.as_ref(),
                            &sig,
                            &cat,
                            &view,
                            phi,
                            &model,
                            None,
                            max_dim,
                        )
                    })
                    .collect::<devhom::Result<Vec<_>>>()
                    .map_err(err_str)?;
                finish_report(inst.as_ref(), &sig, &model, None, max_dim, per_formula)
                    .map_err(err_str)?
            } else {
                deviation_report(inst.as_ref(), &sig, &gamma_classes, &model, None, max_dim)
                    .map_err(err_str)?
            };
            let text = match format {
                Format::Json => render::to_json_string(&report),
                Format::Table => render::deviation_table(&report),
            };
            emit(&text, &out)?;
            Ok(if report.errant {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Theorem {
            instance,
            atoms,
            gamma,
            phi,
            max_dim,
            format,
            out,
        } => {
            check_truncation(max_dim)?;
            if instance != "prop" {
                return Err("theorem analysis currently supports the `prop` instance".into());
            }
            let atoms = atoms.ok_or("`prop` needs --atoms")?;
            let inst = PropInstitution::new(atoms).map_err(err_str)?;
            let sig = inst.full_signature();
            let gamma_classes = classify_gamma(&inst, &sig, &gamma)?;
            let theory = closure_and_theory(&inst, &sig, &gamma_classes).map_err(err_str)?;
            let phi_class = classify_gamma(&inst, &sig, &phi)?
                .into_iter()
                .next()
                .ok_or("--phi must contain a formula")?;
            let view =
                ProofSystemView::from_institution(&inst, &sig, &theory.gamma).map_err(err_str)?;
            let status = theorem_status(&view, &phi_class, max_dim).map_err(err_str)?;
            #[derive(Serialize)]
            struct EvidenceOut {
                entails: bool,
                nonempty: bool,
                aspherical: bool,
                h_profile_trivial: bool,
                terminal_certificate: Option<String>,
            }
            #[derive(Serialize)]
            struct TheoremOut {
                schema: String,
                formula: String,
                class: String,
                status: String,
                evidence: EvidenceOut,
            }
            let payload = TheoremOut {
                schema: devhom::SCHEMA.to_string(),
                formula: phi.clone(),
                class: phi_class.clone(),
                status: if status.theorem {
                    "theorem".into()
                } else {
                    "non-theorem".into()
                },
                evidence: EvidenceOut {
                    entails: status.evidence.entails,
                    nonempty: status.evidence.nonempty,
                    aspherical: status.evidence.aspherical,
                    h_profile_trivial: status.evidence.h_profile_trivial,
                    terminal_certificate: status.evidence.terminal_certificate.clone(),
                },
            };
            let text = match format {
                Format::Json => render::to_json_string(&payload),
                Format::Table => format!(
                    "{}: {}\nevidence: entails={}, nonempty={}, aspherical={}, h-profile trivial={}\n",
                    phi,
                    payload.status,
                    payload.evidence.entails,
                    payload.evidence.nonempty,
                    payload.evidence.aspherical,
                    payload.evidence.h_profile_trivial
                ),
            };
            emit(&text, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Curvature {
            instance,
            atoms,
            gamma,
            preorder,
            max_dim,
            format,
            out,
        } => {
            check_truncation(max_dim)?;
            let (view, display): (ProofSystemView, Box<dyn Fn(&str) -> String>) =
                match (&instance, &preorder) {
                    (Some(name), None) if name == "prop" => {
                        let atoms = atoms.ok_or("`prop` needs --atoms")?;
                        let inst = PropInstitution::new(atoms).map_err(err_str)?;
                        let sig = inst.full_signature();
                        let gamma_text = gamma.ok_or("`prop` needs --gamma")?;
                        let classes = classify_gamma(&inst, &sig, &gamma_text)?;
                        let theory =
                            closure_and_theory(&inst, &sig, &classes).map_err(err_str)?;
                        let view = ProofSystemView::from_institution(&inst, &sig, &theory.gamma)
                            .map_err(err_str)?;
                        let displays = view.display.clone();
                        (
                            view,
                            Box::new(move |c: &str| {
                                displays.get(c).cloned().unwrap_or_else(|| c.to_string())
                            }),
                        )
                    }
                    (None, Some(path)) => {
                        let cfg: inputs::PreorderConfig =
                            inputs::load_config(path).map_err(|e| e.to_string())?;
                        let view =
                            ProofSystemView::from_table(&cfg.formulas, &cfg.pairs, &cfg.gamma)
                                .map_err(err_str)?;
                        (view, Box::new(|c: &str| c.to_string()))
                    }
                    _ => {
                        return Err(
                            "use either --instance prop (with --atoms/--gamma) or --preorder FILE"
                                .into(),
                        )
                    }
                };
            let partition = curvature_hierarchy(&view, max_dim).map_err(err_str)?;
            #[derive(Serialize)]
            struct Row {
                formula: String,
                status: String,
                profile: Vec<devhom::deviation::HomologyEntry>,
            }
            #[derive(Serialize)]
            struct CurvatureOut {
                schema: String,
                truncation: usize,
                rows: Vec<Row>,
            }
            let payload = CurvatureOut {
                schema: devhom::SCHEMA.to_string(),
                truncation: max_dim,
                rows: partition
                    .iter()
                    .map(|(f, s, profile)| Row {
                        formula: f.clone(),
                        status: s.to_string(),
                        profile: profile
                            .iter()
                            .enumerate()
                            .map(|(n, g)| devhom::deviation::HomologyEntry {
                                n,
                                betti: g.betti,
                                torsion: g.torsion.iter().map(|t| t.to_string()).collect(),
                            })
                            .collect(),
                    })
                    .collect(),
            };
            let text = match format {
                Format::Json => render::to_json_string(&payload),
                Format::Table => render::curvature_table(&partition, &display),
            };
            emit(&text, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckInstitution {
            instance,
            atoms,
            faulty,
            max_size,
            fragment,
            format,
            out,
        } => {
            let inst: Box<dyn Institution> = match instance.as_str() {
                "prop" => {
                    let atoms = atoms.ok_or("`prop` needs --atoms")?;
                    let inst = if faulty {
                        PropInstitution::faulty(atoms).map_err(err_str)?
                    } else {
                        PropInstitution::new(atoms).map_err(err_str)?
                    };
                    Box::new(inst)
                }
                "graphs" => Box::new(build_graphs(max_size, &fragment, &None)?),
                other => return Err(format!("unknown instance `{other}`")),
            };
            let report =
                check_institution_axioms(inst.as_ref(), CheckBudget::default()).map_err(err_str)?;
            #[derive(Serialize)]
            struct CounterOut {
                morphism: String,
                model: String,
                class: String,
                detail: String,
            }
            #[derive(Serialize)]
            struct SectionOut {
                ok: bool,
                cases: usize,
                counterexamples: Vec<CounterOut>,
            }
            #[derive(Serialize)]
            struct CheckOut {
                schema: String,
                instance: String,
                i1: SectionOut,
                i2: SectionOut,
                coherence: SectionOut,
                truncated: bool,
                pass: bool,
            }
            let section = |cases: usize, ces: &[devhom::institution::Counterexample]| SectionOut {
                ok: ces.is_empty(),
                cases,
                counterexamples: ces
                    .iter()
                    .map(|c| CounterOut {
                        morphism: c.morphism.clone(),
                        model: c.model.clone(),
                        class: c.class.clone(),
                        detail: c.detail.clone(),
                    })
                    .collect(),
            };
            let payload = CheckOut {
                schema: devhom::SCHEMA.to_string(),
                instance: inst.name(),
                i1: section(report.i1_cases, &report.i1_counterexamples),
                i2: section(report.i2_cases, &report.i2_counterexamples),
                coherence: section(report.coherence_cases, &report.coherence_counterexamples),
                truncated: report.truncated,
                pass: report.all_pass(),
            };
            let text = match format {
                Format::Json => render::to_json_string(&payload),
                Format::Table => {
                    let line = |name: &str, s: &SectionOut| {
                        let mut t = format!(
                            "{name} {} — {} cases\n",
                            if s.ok { "OK" } else { "FAIL" },
                            s.cases
                        );
                        for c in &s.counterexamples {
                            t.push_str(&format!(
                                "  counterexample: morphism={}, model={}, class={}: {}\n",
                                c.morphism, c.model, c.class, c.detail
                            ));
                        }
                        t
                    };
                    format!(
                        "instance: {}\n{}{}{}",
                        payload.instance,
                        line("(I1)", &payload.i1),
                        line("(I2)", &payload.i2),
                        line("pi-coherence", &payload.coherence)
                    )
                }
            };
            emit(&text, &out)?;
            Ok(if payload.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::VerifyClaims {
            which,
            cases,
            primes,
            degree_bound,
            config,
            max_dim,
            format,
            out,
        } => {
            check_truncation(max_dim)?;
            let kind = ClaimKind::parse(&which).map_err(err_str)?;
            let (primes, degree_bound): (Vec<u64>, u32) = match &config {
                Some(path) => {
                    let cfg: inputs::FieldConfig =
                        inputs::load_config(path).map_err(|e| e.to_string())?;
                    (cfg.primes, cfg.degree_bound)
                }
                None => {
                    let primes = primes
                        .split(',')
                        .map(|p| {
                            p.trim()
                                .parse::<u64>()
                                .map_err(|e| format!("bad prime: {e}"))
                        })
                        .collect::<Result<_, _>>()?;
                    (primes, degree_bound)
                }
            };
            let config = ClaimConfig {
                cases,
                truncation: max_dim,
                primes,
                degree_bound,
            };
            let report = verify_paper_claims(kind, &config).map_err(err_str)?;
            let text = match format {
                Format::Json => render::to_json_string(&report),
                Format::Table => render::claim_table(&report),
            };
            emit(&text, &out)?;
            Ok(if report.all_agree {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Examples { out } => {
            write_examples(&out)?;
            println!("wrote example corpus to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn err_str(e: devhom::Error) -> String {
    e.to_string()
}

fn resolve_prop_sigma(inst: &PropInstitution, sigma: &Option<String>) -> Result<String, String> {
    match sigma {
        None => Ok(inst.full_signature()),
        Some(csv) => {
            let atoms: Vec<usize> = csv
                .split(',')
                .map(|a| a.trim().parse::<usize>().map_err(|e| format!("bad atom: {e}")))
                .collect::<Result<_, _>>()?;
            inst.signature_of_atoms(&atoms).map_err(err_str)
        }
    }
}

fn classify_gamma(
    inst: &PropInstitution,
    sigma: &str,
    gamma: &str,
) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for part in gamma.split(';') {
        let text = part.trim();
        if text.is_empty() {
            continue;
        }
        let formula = devhom::instances::prop::parse_formula(text).map_err(err_str)?;
        let class = inst.classify(sigma, &formula).map_err(err_str)?;
        if !out.contains(&class) {
            out.push(class);
        }
    }
    Ok(out)
}

fn build_graphs(
    max_size: Option<usize>,
    fragment: &[String],
    config: &Option<PathBuf>,
) -> Result<FoInstitution, String> {
    let (signature, size, texts): (Vec<(String, usize)>, usize, Vec<String>) = match config {
        Some(path) => {
            let cfg: inputs::FoConfig = inputs::load_config(path).map_err(|e| e.to_string())?;
            (cfg.signature, cfg.max_size, cfg.fragment)
        }
        None => {
            let size = max_size.ok_or("`graphs` needs --max-size or --config")?;
            if fragment.is_empty() {
                return Err("`graphs` needs at least one --fragment formula".into());
            }
            (vec![("E".to_string(), 2)], size, fragment.to_vec())
        }
    };
    let formulas = texts
        .iter()
        .map(|t| devhom::instances::fo::parse_fo_formula(t).map_err(err_str))
        .collect::<Result<Vec<_>, _>>()?;
    FoInstitution::new(signature, size, formulas).map_err(err_str)
}

fn write_examples(dir: &Path) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create `{}`: {e}", dir.display()))?;
    let files: Vec<(&str, String)> = vec![
        (
            "circle.json",
            serde_json::json!({
                "schema": devhom::SCHEMA,
                "poset": {
                    "elements": ["v1", "v2", "v3", "e12", "e23", "e13"],
                    "pairs": [["v1","e12"],["v2","e12"],["v2","e23"],["v3","e23"],["v1","e13"],["v3","e13"]]
                }
            })
            .to_string(),
        ),
        (
            "cospan.json",
            serde_json::json!({
                "schema": devhom::SCHEMA,
                "poset": { "elements": ["a", "b", "c"], "pairs": [["a","c"],["b","c"]] }
            })
            .to_string(),
        ),
        (
            "point.json",
            serde_json::json!({
                "schema": devhom::SCHEMA,
                "discrete": 1
            })
            .to_string(),
        ),
        (
            "arrow.json",
            serde_json::json!({
                "schema": devhom::SCHEMA,
                "poset": { "elements": ["0", "1"], "pairs": [["0","1"]] }
            })
            .to_string(),
        ),
        (
            "involution.json",
            serde_json::json!({
                "schema": devhom::SCHEMA,
                "monoid": {
                    "object": "*",
                    "elements": ["e", "s"],
                    "identity": "e",
                    "table": [["e","s"],["s","e"]]
                }
            })
            .to_string(),
        ),
        (
            "graphs.json",
            serde_json::json!({
                "schema": devhom::SCHEMA,
                "signature": [["E", 2]],
                "max_size": 2,
                "fragment": [
                    "(forall x (exists y (E x y)))",
                    "(exists x (E x x))"
                ]
            })
            .to_string(),
        ),
        (
            "fieldsite.json",
            serde_json::json!({
                "schema": devhom::SCHEMA,
                "primes": [2, 3, 5],
                "degree_bound": 4
            })
            .to_string(),
        ),
        (
            "hexagon-preorder.json",
            serde_json::json!({
                "schema": devhom::SCHEMA,
                "formulas": ["v1","v2","v3","e12","e23","e13","phi"],
                "pairs": [["v1","e12"],["v2","e12"],["v2","e23"],["v3","e23"],["v1","e13"],["v3","e13"],["e12","phi"],["e23","phi"],["e13","phi"]],
                "gamma": ["v1","v2","v3","e12","e23","e13"]
            })
            .to_string(),
        ),
    ];
    for (name, body) in files {
        let path = dir.join(name);
        std::fs::write(&path, body + "\n")
            .map_err(|e| format!("cannot write `{}`: {e}", path.display()))?;
        println!("  {}", path.display());
    }
    Ok(())
}
