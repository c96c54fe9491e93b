//! Batch commands behind the `holomat` binary.
//!
//! Each command takes a [`RunConfig`], loads its input (a standard-form spec
//! file or a gallery name such as `embed-k2:3`), and produces a
//! self-contained JSON report that echoes the configuration and crate
//! version. Exit codes: 0 for a definitive result, 1 for usage, I/O or parse
//! errors, 2 when a hypothesis, tester or reconstruction fails.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{FormatError, StructureError};
use crate::format::{read_spec, to_text, SpecDoc};
use crate::gallery::{gallery_by_name, gallery_nilpotent_range, gallery_direct_sum, gallery_embed_k2, GalleryEntry};
use crate::holo::{default_nodes, extract_all, linearize, probe_set, ContourRadius, HoloFunction, DEFAULT_N_MAX};
use crate::ortho::{
    test_component_cross_orthogonality, test_orthogonal_additivity, test_orthogonal_multiplicativity,
    test_zero_product_preservation, DEFAULT_TRIALS,
};
use crate::random::RandomModel;
use crate::structure::{active_degrees, classify_holomorphic, ClassifyParams, Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Classify,
    Test,
    Extract,
    Gallery,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    /// Spec file path or gallery name (`all` runs every gallery entry).
    pub input: String,
    pub seed: u64,
    pub n_max: usize,
    pub nodes: Option<usize>,
    pub trials: usize,
    pub tolerances: Tolerances,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<String>) -> Self {
        Self {
            command,
            input: input.into(),
            seed: 0,
            n_max: DEFAULT_N_MAX,
            nodes: None,
            trials: DEFAULT_TRIALS,
            tolerances: Tolerances::default(),
            out: None,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.unwrap_or_else(|| default_nodes(self.n_max))
    }

    fn validate(&self) -> Result<(), String> {
        if self.trials == 0 {
            return Err("trials must be at least 1".into());
        }
        if self.n_max == 0 {
            return Err("nmax must be at least 1".into());
        }
        if self.nodes == Some(0) {
            return Err("nodes must be at least 1".into());
        }
        let t = &self.tolerances;
        for (name, v) in [("tol-construct", t.construct), ("tol-verify", t.verify), ("tol-decide", t.decide)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(format!("{name} must be a positive number, got {v}"));
            }
        }
        Ok(())
    }

    fn params(&self) -> ClassifyParams {
        ClassifyParams {
            n_max: self.n_max,
            nodes: self.nodes,
            tolerances: self.tolerances,
            trials: self.trials,
            seed: self.seed,
            anchor: None,
        }
    }
}

/// Exit status plus the report text.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub report: String,
}

enum Input {
    Spec(Box<SpecDoc>, HoloFunction),
    Gallery(GalleryEntry),
}

impl Input {
    fn holo(&self) -> HoloFunction {
        match self {
            Input::Spec(_, h) => h.clone(),
            Input::Gallery(g) => g.holo(),
        }
    }

    fn echo(&self) -> Value {
        match self {
            Input::Spec(doc, _) => json!({ "kind": "spec", "spec": doc }),
            Input::Gallery(g) => json!({ "kind": "gallery", "name": g.name, "k": g.k }),
        }
    }
}

fn load(input: &str) -> Result<Input, FormatError> {
    if let Some(entry) = gallery_by_name(input) {
        return Ok(Input::Gallery(entry));
    }
    let spec = read_spec(Path::new(input))?;
    let holo = spec.to_holo();
    Ok(Input::Spec(Box::new(SpecDoc::from(&spec)), holo))
}

fn report(config: &RunConfig, input: Value, status: &str, result: Value) -> String {
    to_text(&json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "input": input,
        "status": status,
        "result": result,
    }))
}

fn usage_error(config: &RunConfig, message: String) -> CommandOutput {
    CommandOutput {
        exit_code: EXIT_USAGE,
        report: report(config, Value::Null, "usage_error", json!({ "message": message })),
    }
}

fn format_error(config: &RunConfig, err: FormatError) -> CommandOutput {
    let detail = match &err {
        FormatError::Parse { path, offset, message } => {
            json!({ "kind": "parse", "field": path, "offset": offset, "message": message })
        }
        FormatError::Invalid { field, message } => json!({ "kind": "invalid", "field": field, "message": message }),
        FormatError::Io(e) => json!({ "kind": "io", "message": e.to_string() }),
    };
    CommandOutput {
        exit_code: EXIT_USAGE,
        report: report(config, Value::Null, "input_error", detail),
    }
}

fn structure_error(e: &StructureError) -> Value {
    let message = e.to_string();
    match e {
        StructureError::HypothesisFailed { which, verdict } => {
            json!({ "kind": "hypothesis_failed", "which": which, "verdict": verdict, "message": message })
        }
        StructureError::HypothesisViolated { p, q, residual } => {
            json!({ "kind": "hypothesis_violated", "p": p, "q": q, "residual": residual, "message": message })
        }
        StructureError::MixedForm { degrees, detail } => {
            json!({ "kind": "mixed_form", "degrees": degrees, "detail": detail, "message": message })
        }
        StructureError::DimensionMismatch { m, s, flags } => {
            json!({ "kind": "dimension_mismatch", "m": m, "s": s, "flags": flags, "message": message })
        }
        StructureError::ReconstructionFailed { stage, residual } => {
            json!({ "kind": "reconstruction_failed", "stage": stage, "residual": residual, "message": message })
        }
        StructureError::NonzeroConstantTerm { norm } => {
            json!({ "kind": "nonzero_constant_term", "norm": norm, "message": message })
        }
        StructureError::Holo(crate::error::HoloError::LinearizationMismatch { witness, residual }) => {
            json!({ "kind": "linearization_mismatch", "witness": witness, "residual": residual, "message": message })
        }
        _ => json!({ "kind": "numerical", "message": message }),
    }
}

fn prepare(config: &RunConfig) -> Result<Input, CommandOutput> {
    config.validate().map_err(|m| usage_error(config, m))?;
    load(&config.input).map_err(|e| format_error(config, e))
}

pub fn cmd_classify(config: &RunConfig) -> CommandOutput {
    let input = match prepare(config) {
        Ok(i) => i,
        Err(out) => return out,
    };
    match classify_holomorphic(&input.holo(), &config.params()) {
        Ok(c) => CommandOutput {
            exit_code: EXIT_OK,
            report: report(config, input.echo(), "ok", json!(c)),
        },
        Err(e) => CommandOutput {
            exit_code: EXIT_FAILED,
            report: report(config, input.echo(), "failed", structure_error(&e)),
        },
    }
}

pub fn cmd_test(config: &RunConfig) -> CommandOutput {
    let input = match prepare(config) {
        Ok(i) => i,
        Err(out) => return out,
    };
    let h = input.holo();
    let (tol, trials) = (config.tolerances.verify, config.trials);
    let root = RandomModel::new(config.seed);
    let run = || -> Result<Value, crate::error::HoloError> {
        let additivity = test_orthogonal_additivity(&h, &mut root.fork(1), trials, tol)?;
        let multiplicativity = test_orthogonal_multiplicativity(&h, &mut root.fork(2), trials, tol)?;
        let zero_product = test_zero_product_preservation(&h, &mut root.fork(3), trials, tol)?;
        let components = extract_all(&h, config.n_max, config.node_count(), ContourRadius::Adaptive)?;
        let cross = test_component_cross_orthogonality(&components, &mut root.fork(4), trials, tol)?;
        let passed = additivity.passed && multiplicativity.passed && zero_product.passed && cross.passed;
        Ok(json!({
            "passed": passed,
            "evidence": "sampled",
            "classification_applicable": h.domain_dim() >= 2 && h.domain_dim() >= h.codomain_dim(),
            "orthogonal_additivity": additivity,
            "orthogonal_multiplicativity": multiplicativity,
            "zero_product_preservation": zero_product,
            "component_cross_orthogonality": cross,
        }))
    };
    match run() {
        Ok(result) => CommandOutput {
            exit_code: if result["passed"] == json!(true) { EXIT_OK } else { EXIT_FAILED },
            report: report(config, input.echo(), "ok", result),
        },
        Err(e) => CommandOutput {
            exit_code: EXIT_FAILED,
            report: report(config, input.echo(), "failed", structure_error(&StructureError::Holo(e))),
        },
    }
}

pub fn cmd_extract(config: &RunConfig) -> CommandOutput {
    let input = match prepare(config) {
        Ok(i) => i,
        Err(out) => return out,
    };
    let h = input.holo();
    let nodes = config.node_count();
    let run = || -> Result<(bool, Value), crate::error::HoloError> {
        let components = extract_all(&h, config.n_max, nodes, ContourRadius::Adaptive)?;
        let probes = probe_set(h.domain_dim());
        let mut norms = Vec::new();
        for p in &components {
            let mut sup = 0.0f64;
            for x in &probes {
                sup = sup.max(p.evaluate(x)?.frobenius_norm());
            }
            norms.push(sup);
        }
        let active = active_degrees(&norms);
        let warnings: Vec<_> = components.iter().flat_map(|p| p.warnings().to_vec()).collect();
        let root = RandomModel::new(config.seed);
        let mut ok = true;
        let mut linearizations = Vec::new();
        for &n in &active {
            match linearize(&components[n], &mut root.fork(100 + n as u64), config.tolerances.verify) {
                Ok(t) => linearizations.push(json!({ "degree": n, "images": t.images() })),
                Err(e) => {
                    ok = false;
                    linearizations.push(json!({ "degree": n, "error": structure_error(&StructureError::Holo(e)) }));
                }
            }
        }
        Ok((
            ok,
            json!({
                "contour": ContourRadius::Adaptive,
                "nodes": nodes,
                "active_degrees": active,
                "degree_norms": norms,
                "warnings": warnings,
                "linearizations": linearizations,
            }),
        ))
    };
    match run() {
        Ok((ok, result)) => CommandOutput {
            exit_code: if ok { EXIT_OK } else { EXIT_FAILED },
            report: report(config, input.echo(), if ok { "ok" } else { "failed" }, result),
        },
        Err(e) => CommandOutput {
            exit_code: EXIT_FAILED,
            report: report(config, input.echo(), "failed", structure_error(&StructureError::Holo(e))),
        },
    }
}

pub fn cmd_gallery(config: &RunConfig) -> CommandOutput {
    if let Err(m) = config.validate() {
        return usage_error(config, m);
    }
    let entries = if config.input == "all" {
        vec![gallery_nilpotent_range(), gallery_embed_k2(2), gallery_direct_sum(2)]
    } else {
        match gallery_by_name(&config.input) {
            Some(e) => vec![e],
            None => return usage_error(config, format!("unknown gallery entry `{}`", config.input)),
        }
    };
    let runs: Vec<_> = entries
        .iter()
        .map(|e| e.run(config.seed, config.trials, &config.tolerances))
        .collect();
    let passed = runs.iter().all(|r| r.passed);
    CommandOutput {
        exit_code: if passed { EXIT_OK } else { EXIT_FAILED },
        report: report(
            config,
            json!({ "kind": "gallery", "name": config.input }),
            if passed { "ok" } else { "failed" },
            json!({ "passed": passed, "entries": runs }),
        ),
    }
}

/// Dispatches on `config.command` and writes the report to `config.out`
/// when set. A failed write turns the exit code into 1.
pub fn run(config: &RunConfig) -> CommandOutput {
    let mut output = match config.command {
        Command::Classify => cmd_classify(config),
        Command::Test => cmd_test(config),
        Command::Extract => cmd_extract(config),
        Command::Gallery => cmd_gallery(config),
    };
    if let Some(path) = &config.out {
        if let Err(e) = std::fs::write(path, &output.report) {
            output = format_error(config, FormatError::Io(e));
        }
    }
    output
}
