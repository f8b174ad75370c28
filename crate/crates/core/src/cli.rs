//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::affine_weyl::{AffineWeylGroup, ExtAffineElement};
use crate::alcove::{alcove_diagnostics, levi_part, sigma_stable_subsets, sigma_support};
use crate::dl_reduction::{PivotOrder, ReductionTree};
use crate::error::{Error, Result};
use crate::literal::{element_to_value, format_element, parse_element};
use crate::newton_kottwitz::{Scope, SigmaClass, SigmaGroup};
use crate::verify::{parse_checks, parse_sigma, run_sweep, Engines, GroupSpec, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLES: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "alcove-newton", version, about = "Extended affine Weyl group computations: Newton points, alcove elements, B(G)_x and class polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct GroupArgs {
    /// Cartan type, e.g. A2, C2, G2, A1xA1
    #[arg(long = "type")]
    cartan_type: Option<String>,
    /// sc, ad, gl, or a JSON basis matrix in coweight coordinates [default: sc]
    #[arg(long)]
    lattice: Option<String>,
    /// Frobenius as a 1-based node permutation, e.g. 2,1 [default: identity]
    #[arg(long)]
    sigma: Option<String>,
}

impl GroupArgs {
    fn spec(&self) -> Result<GroupSpec> {
        let t = self.cartan_type.as_deref().ok_or_else(|| Error::Config("missing --type".into()))?;
        let sigma = match &self.sigma {
            Some(s) => parse_sigma(s)?,
            None => None,
        };
        Ok(GroupSpec::new(t, self.lattice.as_deref().unwrap_or("sc"), sigma))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Args, Debug, Clone)]
struct Selection {
    /// Element literal, e.g. '{"lambda":[-2],"u":[s]}'
    #[arg(long, conflicts_with = "max_length")]
    element: Option<String>,
    /// Process every element of length at most this bound instead
    #[arg(long)]
    max_length: Option<usize>,
    /// Window for free coordinates of Ω when it is infinite
    #[arg(long, default_value_t = 1)]
    omega_radius: i64,
}

impl Selection {
    fn elements(&self, g: &AffineWeylGroup) -> Result<Vec<ExtAffineElement>> {
        match (&self.element, self.max_length) {
            (Some(text), _) => {
                let x = parse_element(g, text)?;
                g.check(&x)?;
                Ok(vec![x])
            }
            (None, Some(l)) => Ok(g.elements_up_to_length(l, self.omega_radius)),
            (None, None) => Err(Error::Config("give --element or --max-length".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical form, length, Ω-word, Newton and Kottwitz points
    Element {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        select: Selection,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// B(G)_x with class polynomials and the generic class
    Bgx {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        select: Selection,
        /// Include the reduction tree (JSON only)
        #[arg(long)]
        tree: bool,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Normalized (J, w, σ)-alcove pairs with per-condition diagnostics
    Alcoves {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        select: Selection,
        /// Also list candidate pairs that fail
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Class polynomials and dimensions of X_x(b)
    Classpoly {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        select: Selection,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run verification sweeps; exits 1 if any counterexample is found
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        max_length: Option<usize>,
        /// Comma-separated subset of theorem1,corollary,lim,classpoly, or all
        #[arg(long)]
        checks: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        cache: Option<PathBuf>,
        /// key = value file with any of the settings above
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        omega_radius: Option<i64>,
        /// ascending or descending
        #[arg(long)]
        pivot_order: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NewtonCap(_) | Error::NonUniqueGeneric(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        // downstream reader closed early, e.g. `| head`
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if exit_code(&e) == EXIT_USAGE {
                let _ = writeln!(err, "run with --help for usage");
            }
            exit_code(&e)
        }
    }
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Element { group, select, format } => {
            let g = group.spec()?.build()?;
            let sg = SigmaGroup::new(g.clone(), Scope::Ambient);
            let xs = select.elements(&g)?;
            if format == Format::Tsv {
                writeln!(out, "element\tlength\tnu\tkappa\tomega\tword\tspherical")?;
            }
            let mut rows = Vec::new();
            for x in xs {
                let class = sg.class_of(&x)?;
                let (omega, word) = g.omega_word(&x);
                let support = sigma_support(&g, &x);
                match format {
                    Format::Json => rows.push(json!({
                        "element": element_to_value(g.datum(), &x),
                        "length": g.length(&x),
                        "nu": class.nu,
                        "kappa": class.kappa,
                        "omega": element_to_value(g.datum(), &omega),
                        "word": word,
                        "sigma_support": support,
                    })),
                    Format::Tsv => writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{:?}\t{}",
                        format_element(g.datum(), &x),
                        g.length(&x),
                        class.nu,
                        class.kappa,
                        format_element(g.datum(), &omega),
                        word,
                        support.spherical
                    )?,
                }
            }
            if format == Format::Json {
                emit(out, &single_or_list(rows))?;
            }
            Ok(EXIT_OK)
        }
        Command::Bgx { group, select, tree, cache, format } => classes_command(group, select, cache, format, tree, false, out),
        Command::Classpoly { group, select, cache, format } => classes_command(group, select, cache, format, false, true, out),
        Command::Alcoves { group, select, all, format } => {
            let g = group.spec()?.build()?;
            let datum = g.datum();
            if format == Format::Tsv {
                writeln!(out, "element\tJ\tw\talcove\tcondition_a\tcondition_b\tfailing_root\tx_tilde")?;
            }
            let mut rows = Vec::new();
            for x in select.elements(&g)? {
                let mut pairs = Vec::new();
                for subset in sigma_stable_subsets(datum, g.frobenius().delta()) {
                    let mut ws: Vec<_> = datum.weyl().elements().filter(|&w| datum.is_min_coset_representative(w, &subset)).collect();
                    ws.sort_by_key(|&w| (datum.weyl().length(w), datum.canonical_encoding(w)));
                    for w in ws {
                        let diag = alcove_diagnostics(&g, &x, &subset, w)?;
                        if !all && !diag.holds() {
                            continue;
                        }
                        let tilde = levi_part(&g, &x, w);
                        let j: Vec<usize> = subset.iter().map(|i| i + 1).collect();
                        let word: Vec<String> = datum.reduced_word(w).iter().map(|i| format!("s{}", i + 1)).collect();
                        match format {
                            Format::Json => pairs.push(json!({
                                "J": j, "w": word, "alcove": diag.holds(),
                                "trivial": subset.len() == datum.rank(),
                                "diagnostics": diag, "x_tilde": element_to_value(datum, &tilde),
                            })),
                            Format::Tsv => writeln!(
                                out,
                                "{}\t{:?}\t{}\t{}\t{}\t{}\t{}\t{}",
                                format_element(datum, &x),
                                j,
                                if word.is_empty() { "e".to_string() } else { word.concat() },
                                diag.holds(),
                                diag.condition_a,
                                diag.condition_b,
                                diag.failing_root.map_or("-".to_string(), |r| format!("{r:?}")),
                                format_element(datum, &tilde)
                            )?,
                        }
                    }
                }
                rows.push(json!({"element": element_to_value(datum, &x), "pairs": pairs}));
            }
            if format == Format::Json {
                emit(out, &single_or_list(rows))?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { group, max_length, checks, workers, cache, config, omega_radius, pivot_order, format } => {
            // usize::MAX marks "not given" until flags and config are merged
            let mut cfg = SweepConfig::new(GroupSpec::new("", "sc", None), usize::MAX, crate::verify::Check::ALL.to_vec());
            if let Some(path) = &config {
                cfg.apply_text(&std::fs::read_to_string(path)?)?;
            }
            if let Some(t) = &group.cartan_type {
                cfg.group.cartan_type = t.clone();
            }
            if let Some(l) = &group.lattice {
                cfg.group.lattice = l.clone();
            }
            if let Some(s) = &group.sigma {
                cfg.group.sigma = parse_sigma(s)?;
            }
            if cfg.group.cartan_type.is_empty() {
                return Err(Error::Config("missing --type".into()));
            }
            if let Some(l) = max_length {
                cfg.max_length = l;
            }
            if cfg.max_length == usize::MAX {
                return Err(Error::Config("missing --max-length".into()));
            }
            if let Some(c) = &checks {
                cfg.checks = parse_checks(c)?;
            }
            if let Some(w) = workers {
                cfg.workers = w;
            }
            if let Some(c) = cache {
                cfg.cache = Some(c);
            }
            if let Some(r) = omega_radius {
                cfg.set("omega_radius", &r.to_string())?;
            }
            if let Some(p) = &pivot_order {
                cfg.set("pivot_order", p)?;
            }
            let report = run_sweep(&cfg)?;
            match format {
                Format::Json => emit(out, &report.to_value())?,
                Format::Tsv => {
                    writeln!(out, "check\tpass\tcounterexamples\telements")?;
                    for c in &report.checks {
                        writeln!(out, "{}\t{}\t{}\t{}", c.name, c.pass, c.counterexamples.len(), report.elements_swept)?;
                    }
                    for e in &report.internal_errors {
                        writeln!(out, "internal\tfalse\t{e}\t-")?;
                    }
                }
            }
            Ok(if !report.internal_errors.is_empty() {
                EXIT_INTERNAL
            } else if report.passed() {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLES
            })
        }
    }
}

fn single_or_list(mut rows: Vec<Value>) -> Value {
    if rows.len() == 1 {
        rows.pop().expect("one row")
    } else {
        Value::Array(rows)
    }
}

fn class_value(c: &SigmaClass) -> Value {
    json!({"nu": c.nu, "kappa": c.kappa})
}

fn tree_value(g: &AffineWeylGroup, t: &ReductionTree) -> Value {
    let d = g.datum();
    match t {
        ReductionTree::Leaf { element, class, orbit_size } => json!({
            "leaf": element_to_value(d, element), "class": class_value(class), "orbit_size": orbit_size,
        }),
        ReductionTree::Split { element, step, conjugate, shortened } => json!({
            "element": element_to_value(d, element),
            "chain": step.chain.iter().map(|(l, e)| json!({"via": l, "element": element_to_value(d, e)})).collect::<Vec<_>>(),
            "pivot": step.pivot,
            "conjugate": tree_value(g, conjugate),
            "shortened": tree_value(g, shortened),
        }),
    }
}

fn classes_command(
    group: GroupArgs,
    select: Selection,
    cache: Option<PathBuf>,
    format: Format,
    tree: bool,
    dims: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let g: Arc<AffineWeylGroup> = group.spec()?.build()?;
    let engines = Engines::new(g.clone(), PivotOrder::Ascending)?;
    if let Some(path) = &cache {
        if path.exists() {
            engines.load_cache(path)?;
        }
    }
    let r = &engines.ambient;
    let d = g.datum();
    if format == Format::Tsv {
        writeln!(out, "element\tlength\tnu\tkappa\tpoly\tdim\tgeneric")?;
    }
    let mut rows = Vec::new();
    for x in select.elements(&g)? {
        let summary = r.summary(&x)?;
        let generic = r.generic_class(&x)?;
        match format {
            Format::Json => {
                let classes: Vec<Value> = summary
                    .polys
                    .iter()
                    .map(|(c, f)| {
                        let mut v = json!({"class": class_value(c), "poly": f.to_string(), "coefficients": f});
                        if dims {
                            v["dim"] = json!(summary.dims.get(c));
                        }
                        v
                    })
                    .collect();
                let mut row = json!({
                    "element": element_to_value(d, &x),
                    "length": summary.length,
                    "classes": classes,
                    "generic": class_value(&generic),
                });
                if tree {
                    row["tree"] = tree_value(&g, &r.reduce(&x)?);
                }
                rows.push(row);
            }
            Format::Tsv => {
                for (c, f) in &summary.polys {
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                        format_element(d, &x),
                        summary.length,
                        c.nu,
                        c.kappa,
                        f,
                        summary.dims.get(c).map_or("-".to_string(), |v| v.to_string()),
                        *c == generic
                    )?;
                }
            }
        }
    }
    if format == Format::Json {
        emit(out, &single_or_list(rows))?;
    }
    if let Some(path) = &cache {
        engines.save_cache(path)?;
    }
    Ok(EXIT_OK)
}
