//! Command dispatch and the report document.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Subalgebra;
use crate::coring::{canonical_map, Coring};
use crate::dual::{dual_vs_skew, frobenius_check_on, DualRing};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::instance::{Instance, InstanceDocument};
use crate::morita::{morita_context, mu_image_dim, tau_surjectivity, theorem_dashboard};
use crate::report::ValidationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Galois,
    Dual,
    Frobenius,
    Morita,
    Dashboard,
    Generate,
    Fixtures,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Validate,
        Command::Galois,
        Command::Dual,
        Command::Frobenius,
        Command::Morita,
        Command::Dashboard,
        Command::Generate,
        Command::Fixtures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Galois => "galois",
            Command::Dual => "dual",
            Command::Frobenius => "frobenius",
            Command::Morita => "morita",
            Command::Dashboard => "dashboard",
            Command::Generate => "generate",
            Command::Fixtures => "fixtures",
        }
    }

    /// Commands that analyse an instance and produce a report.
    pub fn is_report(self) -> bool {
        !matches!(self, Command::Generate | Command::Fixtures)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::UnknownCommand(s.to_string()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub verdicts: BTreeMap<String, bool>,
    pub witnesses: BTreeMap<String, Value>,
    pub dimensions: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<BTreeMap<String, f64>>,
}

impl ReportDocument {
    fn new(command: Command) -> Self {
        Self { command: command.name().to_string(), ..Self::default() }
    }

    fn verdict(&mut self, name: &str, value: bool) {
        self.verdicts.insert(name.to_string(), value);
    }

    fn dim(&mut self, name: &str, value: usize) {
        self.dimensions.insert(name.to_string(), value);
    }

    fn witness(&mut self, name: impl Into<String>, value: Value) {
        self.witnesses.insert(name.into(), value);
    }

    /// One witness per violated condition, keyed `<prefix>.<condition>`.
    fn violations(&mut self, prefix: &str, rep: &ValidationReport) {
        for v in &rep.violations {
            self.witness(format!("{prefix}.{}", v.condition), json!(v.witness));
        }
    }

    pub fn all_true(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    /// 0 when every verdict holds, 1 otherwise; an inconsistent dashboard is an error.
    pub fn exit_code(&self) -> i32 {
        if self.command == "dashboard" && self.verdicts.get("consistent") == Some(&false) {
            2
        } else if self.all_true() {
            0
        } else {
            1
        }
    }
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
pub fn emit_report(rep: &ReportDocument) -> Result<String> {
    if rep.verdicts.is_empty() {
        return Err(Error::EmptyReport);
    }
    let value = serde_json::to_value(rep).expect("reports always serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("values always serialize");
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides the subring of the instance document.
    pub subring: Option<Subalgebra>,
}

fn base_ring(inst: &Instance, opts: &RunOptions) -> Result<Subalgebra> {
    match opts.subring.as_ref().or(inst.subring.as_ref()) {
        Some(b) => Ok(b.clone()),
        None => inst.pa.invariants(),
    }
}

fn dimensions(rep: &mut ReportDocument, inst: &Instance) {
    rep.dim("algebra", inst.pa.algebra().dim());
    rep.dim("group", inst.pa.group().order());
}

fn require_valid(inst: &Instance) -> Result<()> {
    let report = inst.pa.validate();
    if report.is_ok() {
        Ok(())
    } else {
        Err(Error::Invalid { what: "partial action", report })
    }
}

/// Runs a report command on a built instance.
pub fn run(command: Command, inst: &Instance, opts: &RunOptions) -> Result<ReportDocument> {
    let pa = &inst.pa;
    let mut rep = ReportDocument::new(command);
    dimensions(&mut rep, inst);
    match command {
        Command::Validate => {
            let pa_report = pa.validate();
            rep.verdict("partial_action_valid", pa_report.is_ok());
            rep.violations("partial_action", &pa_report);
            let coring = Coring::new(pa.clone());
            let axioms = coring.check_axioms();
            rep.verdict("coring_axioms", axioms.is_ok());
            rep.violations("coring", &axioms);
            rep.dim("coring", coring.dim());
            if pa_report.is_ok() {
                let x = coring.grouplike()?;
                let delta = coring.comultiply(&x) == coring.tensor(&x, &x);
                rep.verdict("grouplike", delta && coring.counit(&x) == pa.algebra().unit());
            }
            for (k, (_, datum)) in inst.modules.iter().enumerate() {
                if let Some(dd) = datum {
                    let r = dd.validate(pa)?;
                    rep.verdict(&format!("descent_datum_{k}"), r.is_ok());
                    rep.violations(&format!("descent_datum_{k}"), &r);
                }
            }
        }
        Command::Galois => {
            require_valid(inst)?;
            let b = base_ring(inst, opts)?;
            let v = canonical_map(pa, &b)?;
            rep.verdict("can_bijective", v.bijective);
            rep.verdict("can_coring_morphism", v.coring_morphism_ok && v.well_defined);
            rep.dim("subring", b.dim());
            rep.dim("sweedler", v.dims.0);
            rep.dim("coring", v.dims.1);
            rep.witness("can_matrix", json!(v.can_matrix.to_rows()));
        }
        Command::Dual => {
            require_valid(inst)?;
            let dual = DualRing::new(pa)?;
            let check = dual.check();
            rep.verdict("dual_ring_valid", check.is_ok());
            rep.violations("dual", &check);
            rep.dim("dual", dual.dim());
            if pa.algebra().is_commutative() {
                let cmp = dual_vs_skew(pa)?;
                rep.verdict("skew_isomorphic", cmp.verified());
                rep.dim("skew_pairs_checked", cmp.pairs_checked);
            }
        }
        Command::Frobenius => {
            require_valid(inst)?;
            let dual = DualRing::new(pa)?;
            let f = frobenius_check_on(&dual);
            rep.verdict("casimir_central", f.casimir_central);
            rep.verdict("contractions_unit", f.contractions_unit);
            rep.verdict("nu_bimodule", f.nu_bimodule);
            rep.violations("frobenius", &f.report);
            rep.dim("generators", f.generators_checked);
        }
        Command::Morita => {
            require_valid(inst)?;
            let ctx = morita_context(pa)?;
            let check = ctx.check();
            rep.verdict("context_valid", check.is_ok());
            rep.violations("morita", &check);
            let witness = tau_surjectivity(pa);
            let mu_dim = mu_image_dim(&ctx);
            let mu_surjective = mu_dim == ctx.dual.dim();
            rep.verdict("tau_surjective", witness.is_some());
            rep.verdict("mu_surjective", mu_surjective);
            rep.verdict("strict", witness.is_some() && mu_surjective);
            if let Some(a) = witness {
                rep.witness("tau_witness", json!(a.coeffs()));
            }
            rep.dim("invariants", ctx.invariants.dim());
            rep.dim("dual", ctx.dual.dim());
            rep.dim("mu_image", mu_dim);
        }
        Command::Dashboard => {
            require_valid(inst)?;
            let b = base_ring(inst, opts)?;
            let d = theorem_dashboard(pa, &b)?;
            let value = serde_json::to_value(&d).expect("dashboard serializes");
            for (k, v) in value.as_object().expect("struct") {
                rep.verdict(k, v.as_bool().expect("boolean fields"));
            }
            rep.dim("subring", b.dim());
        }
        Command::Generate | Command::Fixtures => {
            return Err(Error::semantic("/", format!("{command} does not produce a report")));
        }
    }
    Ok(rep)
}

/// Restricts the global action of a document and returns the standalone
/// partial-action document, keeping its subring and modules.
pub fn generate(doc: &InstanceDocument) -> Result<InstanceDocument> {
    if doc.global_action.is_none() {
        return Err(Error::semantic("/global_action", "generate needs a global action"));
    }
    let inst = doc.build()?;
    let mut out = InstanceDocument::from_partial_action(&inst.pa, inst.subring.as_ref());
    out.modules = doc.modules.clone();
    Ok(out)
}

/// Writes `<name>.json` for each canonical fixture and returns the paths.
pub fn write_fixtures(dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for fx in fixtures::all() {
        let path = dir.join(format!("{}.json", fx.name));
        std::fs::write(&path, InstanceDocument::from_partial_action(&fx.pa, None).to_text())?;
        paths.push(path);
    }
    Ok(paths)
}
