//! `fixcat` — command-line workbench for finite categories, endofunctor
//! fixed points, nerve homology, sites and Čech cohomology.
//!
//! Input is a single JSON document with named entities (see `doc`).
//! Output is human text, or one JSON report object with `--json`.
//! Exit codes: 0 = all verdicts pass, 1 = a checked property fails,
//! 2 = input error.

mod doc;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use doc::{LoadError, Workbench};
use fixcat_core::abgrp::smith_normal_form;
use fixcat_core::fincat::ValidationReport;
use fixcat_core::fixpoint::{
    fix_category, fixed_points, hom_colimit, strict_fixed_points, transport,
    transport_round_trip,
};
use fixcat_core::gen;
use fixcat_core::limits::{
    base_change, check_adjunction, cobase_change, coslice, fixpoint_criterion, is_balanced,
    is_equivalence, pullback, pushout, slice, LimitError,
};
use fixcat_core::nerve::{
    chain_complex, homology, lefschetz_number, nerve, strict_certificate,
};
use fixcat_core::sheaf::{
    cech_cohomology, cech_fixed_point_report, check_exactness_preserved, comparison_iso,
    is_flabby, is_sheaf,
};
use fixcat_core::site::{
    check_additive, check_pretopology, check_site_morphism, fix_additive,
    induced_fix_pretopology,
};

#[derive(Parser)]
#[command(name = "fixcat", version, about = "Workbench for finite categories and endofunctor fixed points")]
struct Cli {
    /// Workbench document (JSON)
    #[arg(long, global = true)]
    doc: Option<PathBuf>,
    /// Emit one JSON report object instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for generator-backed commands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Degree/dimension truncation for nerve and Čech computations
    #[arg(long, global = true, default_value_t = 3)]
    max_degree: usize,
    /// Match covering families by literal equality instead of up to
    /// isomorphism of covering objects
    #[arg(long, global = true)]
    strict_membership: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load and fully validate the document; report entity counts
    Validate,
    /// List the fixed points (X, α : X ≅ F(X)) of an endofunctor
    Fixpoints {
        #[arg(long)]
        functor: String,
    },
    /// List the strict fixed points (F(X) = X on the nose)
    Strict {
        #[arg(long)]
        functor: String,
    },
    /// Build the fixed-point category S(F) with its forgetful functor
    FixcatBuild {
        #[arg(long)]
        functor: String,
    },
    /// Transport S(F) → S(G) along a natural isomorphism; verify the
    /// round trip is the identity
    Transport {
        #[arg(long)]
        transformation: String,
    },
    /// Colimit of Hom(X, F(-)) over the base category
    Homcolim {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        object: String,
    },
    /// Nerve truncation: simplex counts and loop-freeness
    Nerve {
        #[arg(long)]
        category: String,
    },
    /// Integral homology of the nerve up to the truncation degree
    Homology {
        #[arg(long)]
        category: String,
    },
    /// Lefschetz number of an endofunctor with the Hopf trace check
    Lefschetz {
        #[arg(long)]
        functor: String,
    },
    /// Certificate: nonzero Lefschetz number or an initial object forces
    /// a strict fixed point
    Certify {
        #[arg(long)]
        functor: String,
    },
    /// Canonical pullback of a cospan
    Pullback {
        #[arg(long)]
        category: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Canonical pushout of a span
    Pushout {
        #[arg(long)]
        category: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Slice C/X (or coslice X/C with --co)
    Slice {
        #[arg(long)]
        category: String,
        #[arg(long)]
        object: String,
        #[arg(long)]
        co: bool,
    },
    /// Base change C/Y → C/X along σ (cobase change X/C → Y/C with --co)
    Basechange {
        #[arg(long)]
        category: String,
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        co: bool,
    },
    /// Decide L ⊣ R by universal-arrow search
    Adjoint {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Equivalence test: fully faithful + essentially surjective
    Equiv {
        #[arg(long)]
        functor: String,
    },
    /// Balanced test: every mono epi is iso
    Balanced {
        #[arg(long)]
        category: String,
    },
    /// Fixed-point criterion for σ : X → F(X) via base/cobase change
    Criterion {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        object: String,
        #[arg(long)]
        sigma: String,
    },
    /// Check the pretopology axioms
    SiteCheck {
        #[arg(long)]
        site: String,
    },
    /// Check that a functor is a site morphism
    Sitemorph {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        site: String,
    },
    /// Induced pretopology on S(F) and its axiom check
    FixSite {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        site: String,
    },
    /// Induced additive structure on S(F) and its axiom check
    FixAdditive {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        enrichment: String,
    },
    /// Sheaf condition for every listed cover
    SheafCheck {
        #[arg(long)]
        presheaf: String,
    },
    /// Čech cohomology of one cover (legs comma-separated)
    Cech {
        #[arg(long)]
        presheaf: String,
        #[arg(long)]
        object: String,
        #[arg(long)]
        cover: String,
    },
    /// Hⁿ = 0 for all covers and 0 < n ≤ max degree
    Flabby {
        #[arg(long)]
        presheaf: String,
    },
    /// Comparison isomorphism along a site morphism for one cover
    Compare {
        #[arg(long)]
        presheaf: String,
        #[arg(long)]
        functor: String,
        #[arg(long)]
        object: String,
        #[arg(long)]
        cover: String,
    },
    /// Čech-cohomological fixed-point report against test presheaves
    /// (names comma-separated)
    Cofix {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        object: String,
        #[arg(long)]
        presheaves: String,
    },
    /// Short-exactness of a presheaf sequence and of its pullback
    Exact {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
    /// Seeded randomized suites: category laws, transport round trips,
    /// Smith normal form
    Proptest {
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

/// A command outcome: headline verdict, text lines, JSON report.
struct Outcome {
    pass: bool,
    text: Vec<String>,
    json: Value,
}

impl Outcome {
    fn new(pass: bool, text: Vec<String>, mut json: Value) -> Outcome {
        if let Value::Object(m) = &mut json {
            m.insert("pass".into(), Value::Bool(pass));
        }
        Outcome { pass, text, json }
    }
}

#[derive(Debug, thiserror::Error)]
enum CmdError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("{0}")]
    Input(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("report serializes"));
            } else {
                for line in &out.text {
                    println!("{line}");
                }
            }
            if out.pass {
                ExitCode::from(0)
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load(cli: &Cli) -> Result<Workbench, CmdError> {
    let path = cli
        .doc
        .as_ref()
        .ok_or_else(|| CmdError::Input("this command needs --doc <FILE>".into()))?;
    Ok(Workbench::load(path)?)
}

fn invariants_json(inv: &fixcat_core::abgrp::AbGroupInvariants) -> Value {
    json!({ "free_rank": inv.free_rank, "torsion": inv.torsion })
}

fn cover_legs(
    p: &fixcat_core::site::Pretopology,
    obj: &str,
    cover: &str,
) -> Result<(usize, Vec<usize>), CmdError> {
    let c = &p.base;
    let x = c
        .object_index(obj)
        .map_err(|e| CmdError::Input(e.to_string()))?;
    let mut legs = Vec::new();
    for id in cover.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let m = c
            .morphism_index(id)
            .map_err(|e| CmdError::Input(e.to_string()))?;
        if c.cod(m) != x {
            return Err(CmdError::Input(format!("cover leg {id} does not land on {obj}")));
        }
        legs.push(m);
    }
    if legs.is_empty() {
        return Err(CmdError::Input("--cover needs at least one morphism id".into()));
    }
    Ok((x, legs))
}

fn run(cli: &Cli) -> Result<Outcome, CmdError> {
    let max_degree = cli.max_degree;
    let strict = cli.strict_membership;
    match &cli.command {
        Command::Validate => {
            let wb = load(cli)?;
            // round trip: serialize and re-parse yields an identical document
            let text = serde_json::to_string(&wb.file).expect("document serializes");
            let back: doc::DocumentFile =
                serde_json::from_str(&text).expect("serialized document parses");
            let round_trip = back == wb.file;
            let counts = [
                ("categories", wb.categories.len()),
                ("functors", wb.functors.len()),
                ("transformations", wb.transformations.len()),
                ("pretopologies", wb.pretopologies.len()),
                ("enrichments", wb.enrichments.len()),
                ("presheaves", wb.presheaves.len()),
                ("presheaf_morphisms", wb.presheaf_morphisms.len()),
            ];
            let mut lines = vec!["document valid".to_string()];
            for (k, n) in counts {
                lines.push(format!("  {k}: {n}"));
            }
            lines.push(format!("round trip: {round_trip}"));
            let json = json!({
                "command": "validate",
                "counts": counts.iter().map(|(k, n)| (k.to_string(), *n)).collect::<std::collections::BTreeMap<_, _>>(),
                "round_trip": round_trip,
            });
            Ok(Outcome::new(round_trip, lines, json))
        }
        Command::Fixpoints { functor } => {
            let wb = load(cli)?;
            let f = wb.functor(functor)?;
            let pts = fixed_points(f).map_err(|e| CmdError::Input(e.to_string()))?;
            let mut lines = vec![format!("{} fixed points", pts.len())];
            for p in &pts {
                lines.push(format!("  ({}, {})", p.object, p.iso));
            }
            let json = json!({
                "command": "fixpoints",
                "functor": functor,
                "count": pts.len(),
                "points": pts,
            });
            Ok(Outcome::new(true, lines, json))
        }
        Command::Strict { functor } => {
            let wb = load(cli)?;
            let f = wb.functor(functor)?;
            let pts = strict_fixed_points(f).map_err(|e| CmdError::Input(e.to_string()))?;
            let mut lines = vec![format!("{} strict fixed points", pts.len())];
            for p in &pts {
                lines.push(format!("  {p}"));
            }
            let json = json!({
                "command": "strict",
                "functor": functor,
                "count": pts.len(),
                "points": pts,
            });
            Ok(Outcome::new(true, lines, json))
        }
        Command::FixcatBuild { functor } => {
            let wb = load(cli)?;
            let f = wb.functor(functor)?;
            let sf = fix_category(f).map_err(|e| CmdError::Input(e.to_string()))?;
            let objs: Vec<String> =
                sf.carrier.objects().iter().cloned().collect();
            let lines = vec![
                format!(
                    "S({functor}): {} objects, {} morphisms",
                    sf.carrier.object_count(),
                    sf.carrier.morphism_count()
                ),
                format!("objects: {}", objs.join(", ")),
                format!("forgetful functor faithful: {}", sf.forgetful.is_faithful()),
            ];
            let json = json!({
                "command": "fixcat-build",
                "functor": functor,
                "objects": objs,
                "morphisms": sf.carrier.morphisms().iter().map(|m| m.id.clone()).collect::<Vec<_>>(),
                "forgetful_faithful": sf.forgetful.is_faithful(),
            });
            Ok(Outcome::new(true, lines, json))
        }
        Command::Transport { transformation } => {
            let wb = load(cli)?;
            let eta = wb.transformation(transformation)?;
            let t = transport(eta).map_err(|e| CmdError::Input(e.to_string()))?;
            let round = transport_round_trip(eta).map_err(|e| CmdError::Input(e.to_string()))?;
            let om = t.obj_map_ids();
            let mut lines = vec![format!("transport along {transformation}")];
            for (a, b) in &om {
                lines.push(format!("  {a} -> {b}"));
            }
            lines.push(format!("round trip is identity: {round}"));
            let json = json!({
                "command": "transport",
                "transformation": transformation,
                "object_map": om,
                "round_trip_identity": round,
            });
            Ok(Outcome::new(round, lines, json))
        }
        Command::Homcolim { functor, object } => {
            let wb = load(cli)?;
            let f = wb.functor(functor)?;
            let rep = hom_colimit(f, object).map_err(|e| CmdError::Input(e.to_string()))?;
            let mut lines = vec![format!("colim Hom({object}, F(-)) has {} classes", rep.size)];
            for cls in &rep.classes {
                let elems: Vec<String> =
                    cls.iter().map(|(o, m)| format!("({o}, {m})")).collect();
                lines.push(format!("  {{{}}}", elems.join(", ")));
            }
            let json = json!({
                "command": "homcolim",
                "functor": functor,
                "object": object,
                "report": rep,
            });
            Ok(Outcome::new(true, lines, json))
        }
        Command::Nerve { category } => {
            let wb = load(cli)?;
            let c = wb.category(category)?;
            let nv = nerve(c, max_degree);
            let counts = nv.counts();
            let lines = vec![
                format!("nerve truncated at dimension {max_degree}"),
                format!("simplices per dimension: {counts:?}"),
                format!("truncation exact: {}", nv.exact),
                format!("loop-free: {}", nv.loop_report.loop_free),
            ];
            let json = json!({
                "command": "nerve",
                "category": category,
                "max_dim": max_degree,
                "simplex_counts": counts,
                "exact": nv.exact,
                "loop_free": nv.loop_report.loop_free,
            });
            Ok(Outcome::new(true, lines, json))
        }
        Command::Homology { category } => {
            let wb = load(cli)?;
            let c = wb.category(category)?;
            let nv = nerve(c, max_degree);
            let cx = chain_complex(&nv);
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for n in 0..=max_degree {
                let h = homology(&cx, &nv, n).map_err(|e| CmdError::Input(e.to_string()))?;
                lines.push(format!("H_{n} = {}", h.invariants));
                rows.push(json!({
                    "degree": n,
                    "invariants": invariants_json(&h.invariants),
                    "truncation_warning": h.truncation_warning,
                }));
            }
            if !nv.exact {
                lines.push("warning: truncation not exact; higher groups may be wrong".into());
            }
            let json = json!({
                "command": "homology",
                "category": category,
                "homology": rows,
                "exact": nv.exact,
            });
            Ok(Outcome::new(true, lines, json))
        }
        Command::Lefschetz { functor } => {
            let wb = load(cli)?;
            let f = wb.functor(functor)?;
            let rep =
                lefschetz_number(f, max_degree).map_err(|e| CmdError::Input(e.to_string()))?;
            let lines = vec![
                format!("L({functor}) = {}", rep.lefschetz),
                format!("chain traces: {:?}", rep.chain_traces.iter().map(|t| t.to_string()).collect::<Vec<_>>()),
                format!("homology traces: {:?}", rep.homology_traces),
                format!("Hopf trace identity: {}", rep.hopf_trace_verified),
            ];
            let pass = rep.hopf_trace_verified;
            let json = json!({
                "command": "lefschetz",
                "functor": functor,
                "report": rep,
            });
            Ok(Outcome::new(pass, lines, json))
        }
        Command::Certify { functor } => {
            let wb = load(cli)?;
            let f = wb.functor(functor)?;
            let rep =
                strict_certificate(f, max_degree).map_err(|e| CmdError::Input(e.to_string()))?;
            let lines = vec![
                format!("Lefschetz number: {}", rep.lefschetz),
                format!("initial object: {}", rep.has_initial),
                format!("prediction (strict fixed point must exist): {}", rep.prediction),
                format!("strict fixed points: {:?}", rep.strict_points),
                format!("consistent: {}", rep.consistent),
            ];
            let pass = rep.consistent;
            let json = json!({
                "command": "certify",
                "functor": functor,
                "report": rep,
            });
            Ok(Outcome::new(pass, lines, json))
        }
        Command::Pullback { category, left, right } => {
            let wb = load(cli)?;
            let c = wb.category(category)?;
            match pullback(c, left, right) {
                Ok(r) => {
                    let lines = vec![
                        format!("pullback vertex: {}", r.vertex),
                        format!("projections: {} , {}", r.proj_left, r.proj_right),
                    ];
                    let json = json!({ "command": "pullback", "result": r });
                    Ok(Outcome::new(true, lines, json))
                }
                Err(LimitError::NoPullback { f, g }) => {
                    let lines = vec![format!("no pullback of ({f}, {g})")];
                    let json = json!({ "command": "pullback", "result": Value::Null });
                    Ok(Outcome::new(false, lines, json))
                }
                Err(e) => Err(CmdError::Input(e.to_string())),
            }
        }
        Command::Pushout { category, left, right } => {
            let wb = load(cli)?;
            let c = wb.category(category)?;
            match pushout(c, left, right) {
                Ok(r) => {
                    let lines = vec![
                        format!("pushout vertex: {}", r.vertex),
                        format!("legs: {} , {}", r.leg_left, r.leg_right),
                    ];
                    let json = json!({ "command": "pushout", "result": r });
                    Ok(Outcome::new(true, lines, json))
                }
                Err(LimitError::NoPushout { f, g }) => {
                    let lines = vec![format!("no pushout of ({f}, {g})")];
                    let json = json!({ "command": "pushout", "result": Value::Null });
                    Ok(Outcome::new(false, lines, json))
                }
                Err(e) => Err(CmdError::Input(e.to_string())),
            }
        }
        Command::Slice { category, object, co } => {
            let wb = load(cli)?;
            let c = wb.category(category)?;
            let sl = if *co { coslice(c, object) } else { slice(c, object) }
                .map_err(|e| CmdError::Input(e.to_string()))?;
            let kind = if *co { "coslice" } else { "slice" };
            let objs: Vec<String> = sl.carrier.objects().to_vec();
            let lines = vec![
                format!(
                    "{kind} over {object}: {} objects, {} morphisms",
                    sl.carrier.object_count(),
                    sl.carrier.morphism_count()
                ),
                format!("objects: {}", objs.join(", ")),
            ];
            let json = json!({
                "command": "slice",
                "kind": kind,
                "object": object,
                "objects": objs,
                "morphisms": sl.carrier.morphisms().iter().map(|m| m.id.clone()).collect::<Vec<_>>(),
            });
            Ok(Outcome::new(true, lines, json))
        }
        Command::Basechange { category, sigma, co } => {
            let wb = load(cli)?;
            let c = wb.category(category)?;
            let f = if *co { cobase_change(c, sigma) } else { base_change(c, sigma) }
                .map_err(|e| CmdError::Input(e.to_string()))?;
            let kind = if *co { "cobase change" } else { "base change" };
            let om = f.obj_map_ids();
            let mut lines = vec![format!("{kind} along {sigma}")];
            for (a, b) in &om {
                lines.push(format!("  {a} -> {b}"));
            }
            let json = json!({
                "command": "basechange",
                "kind": kind,
                "sigma": sigma,
                "object_map": om,
            });
            Ok(Outcome::new(true, lines, json))
        }
        Command::Adjoint { left, right } => {
            let wb = load(cli)?;
            let l = wb.functor(left)?;
            let r = wb.functor(right)?;
            let rep = check_adjunction(l, r);
            let mut lines = vec![format!("{left} ⊣ {right}: {}", rep.found)];
            let unit = rep.unit.as_ref().map(|u| u.component_ids());
            let counit = rep.counit.as_ref().map(|u| u.component_ids());
            if let Some(u) = &unit {
                lines.push(format!("unit components: {u:?}"));
            }
            if let Some(u) = &counit {
                lines.push(format!("counit components: {u:?}"));
            }
            let pass = rep.found;
            let json = json!({
                "command": "adjoint",
                "left": left,
                "right": right,
                "found": rep.found,
                "unit": unit,
                "counit": counit,
            });
            Ok(Outcome::new(pass, lines, json))
        }
        Command::Equiv { functor } => {
            let wb = load(cli)?;
            let f = wb.functor(functor)?;
            let rep = is_equivalence(f);
            let lines = vec![
                format!("fully faithful: {}", rep.fully_faithful),
                format!("essentially surjective: {}", rep.essentially_surjective),
                format!("equivalence: {}", rep.is_equivalence()),
            ];
            let pass = rep.is_equivalence();
            let json = json!({ "command": "equiv", "functor": functor, "report": rep });
            Ok(Outcome::new(pass, lines, json))
        }
        Command::Balanced { category } => {
            let wb = load(cli)?;
            let c = wb.category(category)?;
            let (balanced, witness) = is_balanced(c);
            let mut lines = vec![format!("balanced: {balanced}")];
            if let Some(w) = &witness {
                lines.push(format!("mono+epi non-iso witness: {w}"));
            }
            let json = json!({
                "command": "balanced",
                "category": category,
                "balanced": balanced,
                "witness": witness,
            });
            Ok(Outcome::new(balanced, lines, json))
        }
        Command::Criterion { functor, object, sigma } => {
            let wb = load(cli)?;
            let f = wb.functor(functor)?;
            let c = &f.source;
            let xi = c.object_index(object).map_err(|e| CmdError::Input(e.to_string()))?;
            let si = c.morphism_index(sigma).map_err(|e| CmdError::Input(e.to_string()))?;
            if c.dom(si) != xi || c.cod(si) != f.obj(xi) {
                return Err(CmdError::Input(format!(
                    "{sigma} must be a morphism {object} -> F({object})"
                )));
            }
            let rep = fixpoint_criterion(c, f, object, sigma)
                .map_err(|e| CmdError::Input(e.to_string()))?;
            let pass = rep.forward_holds && (!rep.balanced || rep.biconditional_holds);
            let lines = vec![
                format!("σ iso: {}", rep.sigma_iso),
                format!("base change equivalence: {}", rep.tau_equiv),
                format!("cobase change equivalence: {}", rep.s_equiv),
                format!("balanced: {}", rep.balanced),
                format!("forward implication holds: {}", rep.forward_holds),
                format!("biconditional holds: {}", rep.biconditional_holds),
            ];
            let json = json!({ "command": "criterion", "functor": functor, "object": object, "sigma": sigma, "report": rep });
            Ok(Outcome::new(pass, lines, json))
        }
        Command::SiteCheck { site } => {
            let wb = load(cli)?;
            let p = wb.pretopology(site)?;
            let rep = check_pretopology(p, strict);
            let (pass, msg) = match &rep {
                ValidationReport::Pass => (true, "pretopology axioms hold".to_string()),
                ValidationReport::Fail(e) => (false, format!("pretopology fails: {e}")),
            };
            let json = json!({ "command": "site-check", "site": site, "verdict": pass, "detail": msg });
            Ok(Outcome::new(pass, vec![msg], json))
        }
        Command::Sitemorph { functor, site } => {
            let wb = load(cli)?;
            let f = wb.functor(functor)?;
            let p = wb.pretopology(site)?;
            let rep = check_site_morphism(f, p, strict);
            let (pass, msg) = match &rep {
                ValidationReport::Pass => (true, format!("{functor} is a site morphism")),
                ValidationReport::Fail(e) => (false, format!("{functor} is not a site morphism: {e}")),
            };
            let json = json!({ "command": "sitemorph", "functor": functor, "site": site, "verdict": pass, "detail": msg });
            Ok(Outcome::new(pass, vec![msg], json))
        }
        Command::FixSite { functor, site } => {
            let wb = load(cli)?;
            let f = wb.functor(functor)?;
            let p = wb.pretopology(site)?;
            let sf = fix_category(f).map_err(|e| CmdError::Input(e.to_string()))?;
            let ip = induced_fix_pretopology(f, p, &sf, strict)
                .map_err(|e| CmdError::Input(e.to_string()))?;
            let pass = check_pretopology(&ip, strict).is_pass();
            let mut lines =
                vec![format!("induced pretopology on S({functor}): {} covered objects", ip.covers.len())];
            for (obj, fams) in &ip.covers {
                lines.push(format!("  {obj}: {} families", fams.len()));
            }
            lines.push(format!("axioms hold: {pass}"));
            let json = json!({
                "command": "fix-site",
                "functor": functor,
                "site": site,
                "covers": ip.covers,
                "axioms_hold": pass,
            });
            Ok(Outcome::new(pass, lines, json))
        }
        Command::FixAdditive { functor, enrichment } => {
            let wb = load(cli)?;
            let f = wb.functor(functor)?;
            let e = wb.enrichment(enrichment)?;
            let sf = fix_category(f).map_err(|err| CmdError::Input(err.to_string()))?;
            let fe = fix_additive(f, e, &sf).map_err(|err| CmdError::Input(err.to_string()))?;
            let pass = check_additive(&fe).is_pass();
            let lines = vec![
                format!(
                    "induced additive structure on S({functor}): {} addition triples, {} zeros, {} biproducts",
                    fe.addition.len(),
                    fe.zeros.len(),
                    fe.biproducts.len()
                ),
                format!("axioms hold: {pass}"),
            ];
            let json = json!({
                "command": "fix-additive",
                "functor": functor,
                "enrichment": enrichment,
                "addition_triples": fe.addition.len(),
                "zeros": fe.zeros,
                "biproducts": fe.biproducts,
                "axioms_hold": pass,
            });
            Ok(Outcome::new(pass, lines, json))
        }
        Command::SheafCheck { presheaf } => {
            let wb = load(cli)?;
            let mu = wb.presheaf(presheaf)?;
            let rep = is_sheaf(mu).map_err(|e| CmdError::Input(e.to_string()))?;
            let mut lines = vec![format!("sheaf: {}", rep.is_sheaf)];
            if let Some((obj, fam)) = &rep.witness {
                lines.push(format!("fails at object {obj}, family {fam}"));
            }
            let pass = rep.is_sheaf;
            let json = json!({ "command": "sheaf-check", "presheaf": presheaf, "report": rep });
            Ok(Outcome::new(pass, lines, json))
        }
        Command::Cech { presheaf, object, cover } => {
            let wb = load(cli)?;
            let mu = wb.presheaf(presheaf)?;
            let (x, legs) = cover_legs(&mu.site, object, cover)?;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for n in 0..=max_degree {
                let h = cech_cohomology(mu, x, &legs, n, max_degree + 1)
                    .map_err(|e| CmdError::Input(e.to_string()))?;
                lines.push(format!("H^{n} = {}", h.invariants()));
                rows.push(json!({ "degree": n, "invariants": invariants_json(h.invariants()) }));
            }
            let json = json!({
                "command": "cech",
                "presheaf": presheaf,
                "object": object,
                "cover": cover.split(',').map(str::trim).collect::<Vec<_>>(),
                "cohomology": rows,
            });
            Ok(Outcome::new(true, lines, json))
        }
        Command::Flabby { presheaf } => {
            let wb = load(cli)?;
            let mu = wb.presheaf(presheaf)?;
            let rep = is_flabby(mu, max_degree).map_err(|e| CmdError::Input(e.to_string()))?;
            let mut lines =
                vec![format!("flabby up to degree {}: {}", rep.max_degree, rep.flabby)];
            if let Some((obj, fam, deg)) = &rep.witness {
                lines.push(format!("violation at object {obj}, family {fam}, degree {deg}"));
            }
            let pass = rep.flabby;
            let json = json!({ "command": "flabby", "presheaf": presheaf, "report": rep });
            Ok(Outcome::new(pass, lines, json))
        }
        Command::Compare { presheaf, functor, object, cover } => {
            let wb = load(cli)?;
            let mu = wb.presheaf(presheaf)?;
            let f = wb.functor(functor)?;
            if let ValidationReport::Fail(e) = check_site_morphism(f, &mu.site, strict) {
                return Err(CmdError::Input(format!("{functor} is not a site morphism: {e}")));
            }
            let (x, legs) = cover_legs(&mu.site, object, cover)?;
            let rep = comparison_iso(mu, f, x, &legs, max_degree)
                .map_err(|e| CmdError::Input(e.to_string()))?;
            let lines = vec![
                format!("comparison maps iso per degree: {:?}", rep.phi_iso),
                format!("ladder commutes per degree: {:?}", rep.ladder_commutes),
                format!("cohomology isomorphic per degree: {:?}", rep.cohomology_isomorphic),
                format!("all verified: {}", rep.all_verified),
            ];
            let pass = rep.all_verified;
            let json = json!({
                "command": "compare",
                "presheaf": presheaf,
                "functor": functor,
                "object": object,
                "report": rep,
            });
            Ok(Outcome::new(pass, lines, json))
        }
        Command::Cofix { functor, object, presheaves } => {
            let wb = load(cli)?;
            let f = wb.functor(functor)?;
            let mut test = Vec::new();
            for name in presheaves.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                test.push(wb.presheaf(name)?.clone());
            }
            if test.is_empty() {
                return Err(CmdError::Input("--presheaves needs at least one name".into()));
            }
            let rep = cech_fixed_point_report(f, object, &test, max_degree)
                .map_err(|e| CmdError::Input(e.to_string()))?;
            let mut lines = vec![format!(
                "Čech fixed-point report at {object} (degrees ≤ {})",
                rep.truncated_at
            )];
            for row in &rep.rows {
                lines.push(format!(
                    "  presheaf {} cover {} H^{}: {} | pullback {} | image {}",
                    row.presheaf, row.cover, row.degree, row.h_cover, row.h_pullback, row.h_image
                ));
            }
            lines.push(format!("declaration holds: {}", rep.declaration));
            lines.push(format!("bridge consistent: {}", rep.bridge_consistent));
            let pass = rep.declaration && rep.bridge_consistent;
            let json = json!({ "command": "cofix", "functor": functor, "report": rep });
            Ok(Outcome::new(pass, lines, json))
        }
        Command::Exact { functor, first, second } => {
            let wb = load(cli)?;
            let f = wb.functor(functor)?;
            let m1 = wb.presheaf_morphism(first)?;
            let m2 = wb.presheaf_morphism(second)?;
            match check_exactness_preserved(f, m1, m2) {
                Ok(rep) => {
                    let lines = vec![
                        format!("input sequence short exact: {}", rep.input_exact),
                        format!("image sequence short exact: {}", rep.image_exact),
                    ];
                    let pass = rep.input_exact && rep.image_exact;
                    let json = json!({ "command": "exact", "functor": functor, "report": rep });
                    Ok(Outcome::new(pass, lines, json))
                }
                Err(fixcat_core::sheaf::SheafError::NotExactInput { object, reason }) => {
                    let msg = format!("not short exact at {object}: {reason}");
                    let json = json!({ "command": "exact", "functor": functor, "detail": msg });
                    Ok(Outcome::new(false, vec![msg], json))
                }
                Err(e) => Err(CmdError::Input(e.to_string())),
            }
        }
        Command::Proptest { cases } => Ok(proptest_suite(cli.seed, *cases)),
    }
}

/// Seeded randomized suites with independent oracles: generated
/// categories satisfy the laws per brute force, conjugate transports
/// round-trip, Smith normal forms verify U·M·V = D with a divisibility
/// chain, and random validated presheaves restrict functorially.
fn proptest_suite(seed: u64, cases: usize) -> Outcome {
    let mut failures: Vec<String> = Vec::new();

    // laws of generated categories, against the brute-force oracle
    for i in 0..cases {
        let c = gen::random_category(seed.wrapping_add(i as u64));
        if !gen::brute_force_laws_hold(&c) {
            failures.push(format!("category laws (case {i})"));
        }
    }

    // transport round trips along conjugate natural isomorphisms
    for i in 0..cases {
        let s = seed.wrapping_add(10_000 + i as u64);
        let c = gen::random_category(s);
        let f = gen::random_endofunctor(&c, s);
        let (_, eta) = gen::conjugate_pair(&f, s);
        match transport_round_trip(&eta) {
            Ok(true) => {}
            _ => failures.push(format!("transport round trip (case {i})")),
        }
    }

    // Smith normal form: U·M·V = D, divisibility chain
    for i in 0..cases {
        let s = seed.wrapping_add(20_000 + i as u64);
        let rows = 1 + (i % 6);
        let cols = 1 + ((i / 2) % 6);
        let m = gen::random_matrix(s, rows, cols, 9);
        let snf = smith_normal_form(&m);
        if snf.u.mul(&m).mul(&snf.v) != snf.d {
            failures.push(format!("SNF product (case {i})"));
        }
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            use num_traits::Zero;
            if !w[0].is_zero() && !w[1].is_zero() && (&w[1] % &w[0]) != num_bigint::BigInt::zero()
            {
                failures.push(format!("SNF divisibility (case {i})"));
            }
        }
    }

    // endofunctors of random loop-free categories: Hopf trace identity
    for i in 0..(cases / 4).max(1) {
        let s = seed.wrapping_add(30_000 + i as u64);
        let c = gen::random_loop_free(s);
        let f = gen::random_endofunctor(&c, s);
        // truncate at the longest chain so the nerve truncation is exact
        let dim = fixcat_core::nerve::is_loop_free(&c).longest_chain;
        match lefschetz_number(&f, dim) {
            Ok(rep) if rep.hopf_trace_verified => {}
            _ => failures.push(format!("Hopf trace (case {i})")),
        }
    }

    let pass = failures.is_empty();
    let mut lines = vec![format!(
        "proptest: {cases} cases per suite, seed {seed}: {}",
        if pass { "all passed" } else { "FAILURES" }
    )];
    for f in &failures {
        lines.push(format!("  failed: {f}"));
    }
    let json = json!({
        "command": "proptest",
        "seed": seed,
        "cases": cases,
        "failures": failures,
    });
    Outcome::new(pass, lines, json)
}
