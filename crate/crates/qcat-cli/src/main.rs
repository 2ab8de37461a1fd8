//! `qcat`: command-line front end.
//!
//! Exit codes: 0 pass, 1 fail or counterexample, 2 input error, 3 cap exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qcat::analysis::{
    has_rank, is_dense_functor, is_fully_faithful, is_well_behaved, left_adjoint_of, verify_cocompletion,
    verify_presheaf_object, CheckReport, Verdict,
};
use qcat::builders::{sheaf_violations, sheafify};
use qcat::completion::{cauchy_completion, cocompletion, enumerate_presheaves, PresheafObjectResult};
use qcat::enriched::{conjoint, validate_category, VFunctor};
use qcat::io::{self, BaseRef, CatRef, FileKind};
use qcat::propcheck::{default_instances, lemma_suite, parse_lemma_ids, SuiteOptions};
use qcat::quantaloid::validate_quantaloid;
use qcat::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "qcat", version, about = "Quantaloid-enriched categories: completions and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct Common {
    /// Bound on enumerations.
    #[arg(long, default_value_t = qcat::completion::DEFAULT_ENUM_CAP)]
    cap: usize,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate any supported file, detected by its keys.
    Validate {
        path: PathBuf,
        /// Site file, needed for presheaves of sets.
        #[arg(long)]
        site: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// List the presheaves on a category.
    Presheaves {
        category: PathBuf,
        /// Restrict to one extent (a base object name).
        #[arg(long)]
        extent: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Free cocompletion under a weight class, verified.
    Complete {
        category: PathBuf,
        /// `all`, `cauchy`, `representables` or a weight class file.
        #[arg(long, default_value = "all")]
        weights: String,
        /// Directory for base, carrier, psh, yoneda, pi and report files.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Cauchy completion, verified as a presheaf object.
    Cauchy {
        category: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check a property of a functor.
    Check {
        property: Property,
        /// A functor file, or `yoneda` for the embedding into a cocompletion.
        #[arg(long)]
        functor: String,
        /// The category to complete when the functor is `yoneda`.
        #[arg(long)]
        category: Option<PathBuf>,
        #[arg(long, default_value = "all")]
        weights: String,
        /// For `rank`: the functor along which rank is taken.
        #[arg(long)]
        along: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Replay the lemma suite on random instances.
    Lemmas {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random categories per base.
        #[arg(long, default_value_t = 50)]
        cases: usize,
        /// Comma-separated lemma ids.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_objects: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Associated sheaf of a presheaf of sets.
    Sheafify {
        site: PathBuf,
        presheaf: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Dual of a quantaloid or category file.
    Dualize {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Property {
    FullyFaithful,
    Dense,
    WellBehaved,
    Rank,
    Cocompletion,
    HasLeftAdjoint,
}

/// How a run ended, before mapping to an exit code.
enum Outcome {
    Verdict(Verdict),
    InputError(String),
    Cap(String),
}

fn code(o: Outcome) -> ExitCode {
    match o {
        Outcome::Verdict(Verdict::Pass) => ExitCode::SUCCESS,
        Outcome::Verdict(Verdict::Fail) => ExitCode::from(1),
        Outcome::Verdict(Verdict::Inconclusive) => ExitCode::from(3),
        Outcome::InputError(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Outcome::Cap(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    code(match run(cli.command) {
        Ok(v) => Outcome::Verdict(v),
        Err(e) if e.is_resource() => Outcome::Cap(e.to_string()),
        Err(e) => Outcome::InputError(e.to_string()),
    })
}

fn emit(common: &Common, value: &Value, human: impl FnOnce() -> String) {
    if common.json {
        println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
    } else {
        print!("{}", human());
    }
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn run(cmd: Command) -> Result<Verdict> {
    match cmd {
        Command::Validate { path, site, common } => validate(&path, site.as_deref(), &common),
        Command::Presheaves { category, extent, common } => presheaves(&category, extent.as_deref(), &common),
        Command::Complete { category, weights, out, common } => complete(&category, &weights, out.as_deref(), &common),
        Command::Cauchy { category, out, common } => cauchy(&category, out.as_deref(), &common),
        Command::Check { property, functor, category, weights, along, common } => {
            check(property, &functor, category.as_deref(), &weights, along.as_deref(), &common)
        }
        Command::Lemmas { seed, cases, only, max_objects, common } => {
            let which = parse_lemma_ids(only.as_deref())?;
            let instances = default_instances(seed, cases, max_objects);
            let opts = SuiteOptions { cap: common.cap, ..SuiteOptions::default() };
            let board = lemma_suite(&instances, &which, opts);
            let value = json!({"seed": seed, "cases": cases, "scoreboard": board});
            emit(&common, &value, || format!("seed {seed}, {cases} cases per base\n{board}"));
            Ok(board.verdict())
        }
        Command::Sheafify { site, presheaf, out, common } => sheafify_cmd(&site, &presheaf, out.as_deref(), &common),
        Command::Dualize { path, out } => dualize(&path, out.as_deref()),
    }
}

fn validate(path: &Path, site: Option<&Path>, common: &Common) -> Result<Verdict> {
    let value = io::read_json(path)?;
    let kind = FileKind::detect(&value).ok_or_else(|| Error::Input(format!("{}: unrecognised file", path.display())))?;
    let dir = dir_of(path);
    let problems: Vec<String> = match kind {
        FileKind::Quantaloid => {
            let f: io::QuantaloidFile = serde_json::from_value(value)?;
            validate_quantaloid(&io::quantaloid_data(&f)?).violations.iter().map(|v| format!("{:?}: {}", v.axiom, v.detail)).collect()
        }
        FileKind::Category => {
            let f: io::CategoryFile = serde_json::from_value(value)?;
            validate_category(&*io::category_from_file(&f, &dir)?)
        }
        FileKind::Functor => invalid_as_problem(io::load_functor(path).map(drop))?,
        FileKind::Distributor => invalid_as_problem(io::load_distributor(path).map(drop))?,
        FileKind::WeightClass => {
            let f: io::WeightClassFile = serde_json::from_value(value)?;
            invalid_as_problem(io::weight_class_from_file(&f, &dir).map(drop))?
        }
        FileKind::Site => invalid_as_problem(io::load_site(path).map(drop))?,
        FileKind::PresheafOfSets => {
            let site = site.ok_or_else(|| Error::Input("presheaves of sets need --site".into()))?;
            let site = io::load_site(site)?;
            invalid_as_problem(io::load_presheaf_of_sets(path, &site.category).map(drop))?
        }
    };
    let verdict = if problems.is_empty() { Verdict::Pass } else { Verdict::Fail };
    let value = json!({"kind": format!("{kind:?}"), "verdict": verdict, "problems": problems});
    emit(common, &value, || {
        let mut s = format!("{kind:?}: {verdict}\n");
        for p in &problems {
            s.push_str(&format!("  {p}\n"));
        }
        s
    });
    Ok(verdict)
}

/// Structural violations are findings; anything else is an input error.
fn invalid_as_problem(r: Result<()>) -> Result<Vec<String>> {
    match r {
        Ok(()) => Ok(vec![]),
        Err(e @ (Error::Invalid(_) | Error::InvalidQuantaloid(_) | Error::Topology(_))) => Ok(vec![e.to_string()]),
        Err(e) => Err(e),
    }
}

fn presheaves(path: &Path, extent: Option<&str>, common: &Common) -> Result<Verdict> {
    let a = io::load_category(path)?;
    let extent = extent.map(|e| a.base().find_object(e)).transpose()?;
    let ps = enumerate_presheaves(&a, extent, common.cap)?;
    let q = a.base();
    let rows: Vec<Value> = ps
        .iter()
        .map(|p| json!({"extent": q.object_name(p.extent), "values": p.names(&a)}))
        .collect();
    let value = json!({"objects": a.names(), "count": ps.len(), "presheaves": rows});
    emit(common, &value, || {
        let mut s = format!("{} presheaves on ({})\n", ps.len(), a.names().join(", "));
        for p in &ps {
            s.push_str(&format!("  {}: ({})\n", q.object_name(p.extent), p.names(&a).join(", ")));
        }
        s
    });
    Ok(Verdict::Pass)
}

fn object_rows(r: &PresheafObjectResult) -> Vec<Value> {
    let a = &r.carrier;
    let q = a.base();
    (0..r.psh.len())
        .map(|i| {
            json!({"name": r.psh.name(i), "extent": q.object_name(r.psh.extent(i)), "presheaf": r.members[i].names(a)})
        })
        .collect()
}

fn write_outputs(dir: &Path, r: &PresheafObjectResult, y: Option<&VFunctor>, report: &CheckReport) -> Result<()> {
    fs::create_dir_all(dir)?;
    io::write_json(&dir.join("base.json"), &io::quantaloid_to_file(r.carrier.base()))?;
    let base = BaseRef::Named("base.json".into());
    io::write_json(&dir.join("carrier.json"), &io::category_to_file(&r.carrier, base.clone()))?;
    io::write_json(&dir.join("psh.json"), &io::category_to_file(&r.psh, base))?;
    let (carrier, psh) = (CatRef::Path("carrier.json".into()), CatRef::Path("psh.json".into()));
    if let Some(y) = y {
        io::write_json(&dir.join("yoneda.json"), &io::functor_to_file(y, carrier.clone(), psh.clone()))?;
    }
    io::write_json(&dir.join("pi.json"), &io::distributor_to_file(&r.pi, psh, carrier))?;
    io::write_json(&dir.join("report.json"), report)
}

fn complete(path: &Path, weights: &str, out: Option<&Path>, common: &Common) -> Result<Verdict> {
    let a = io::load_category(path)?;
    let phi = io::parse_weights(weights, &std::env::current_dir()?)?;
    let (r, y) = cocompletion(&a, &phi, common.cap)?;
    let mut report = verify_cocompletion(&y, &phi.elaborate(&a, common.cap)?, common.cap)?;
    report.property = "verify_cocompletion".into();
    if let Some(dir) = out {
        write_outputs(dir, &r, Some(&y), &report)?;
    }
    let value = json!({
        "weights": weights,
        "count": r.psh.len(),
        "objects": object_rows(&r),
        "yoneda": (0..a.len()).map(|x| json!([a.name(x), r.psh.name(y.apply(x))])).collect::<Vec<_>>(),
        "verify_cocompletion": report,
    });
    emit(common, &value, || {
        let mut s = format!("{} objects\n", r.psh.len());
        for i in 0..r.psh.len() {
            s.push_str(&format!("  {}\n", r.psh.name(i)));
        }
        s.push_str(&report.to_string());
        s
    });
    Ok(report.verdict)
}

fn cauchy(path: &Path, out: Option<&Path>, common: &Common) -> Result<Verdict> {
    let a = io::load_category(path)?;
    let r = cauchy_completion(&a, common.cap)?;
    let mut report = verify_presheaf_object(&r, &r.members);
    report.property = "verify_presheaf_object".into();
    if let Some(dir) = out {
        write_outputs(dir, &r, r.yoneda.as_ref(), &report)?;
    }
    let value = json!({"count": r.psh.len(), "objects": object_rows(&r), "verify_presheaf_object": report});
    emit(common, &value, || {
        let mut s = format!("{} objects\n", r.psh.len());
        for i in 0..r.psh.len() {
            s.push_str(&format!("  {}\n", r.psh.name(i)));
        }
        s.push_str(&report.to_string());
        s
    });
    Ok(report.verdict)
}

fn check(
    property: Property,
    functor: &str,
    category: Option<&Path>,
    weights: &str,
    along: Option<&Path>,
    common: &Common,
) -> Result<Verdict> {
    let cwd = std::env::current_dir()?;
    let f = if functor == "yoneda" {
        let path = category.ok_or_else(|| Error::Input("`--functor yoneda` needs --category".into()))?;
        let a = io::load_category(path)?;
        cocompletion(&a, &io::parse_weights(weights, &cwd)?, common.cap)?.1
    } else {
        io::load_functor(Path::new(functor))?
    };
    let report = match property {
        Property::FullyFaithful => is_fully_faithful(&f),
        Property::Dense => is_dense_functor(&f),
        Property::WellBehaved => is_well_behaved(&f, common.cap)?,
        Property::Rank => {
            let j = io::load_functor(along.ok_or_else(|| Error::Input("rank needs --along".into()))?)?;
            has_rank(&conjoint(&f), &j)?
        }
        Property::Cocompletion => {
            let phi = io::parse_weights(weights, &cwd)?.elaborate(f.dom(), common.cap)?;
            verify_cocompletion(&f, &phi, common.cap)?
        }
        Property::HasLeftAdjoint => {
            let mut r = CheckReport::new("has left adjoint");
            match left_adjoint_of(&f) {
                Some(l) => {
                    r.clause("adjoint found", vec![]).note(map_string(&l));
                }
                None => {
                    r.clause(
                        "adjoint found",
                        vec![qcat::analysis::Witness {
                            clause: "adjoint found".into(),
                            objects: vec![],
                            expected: "a left adjoint".into(),
                            actual: "no candidate satisfies the hom isomorphism".into(),
                        }],
                    );
                }
            }
            r
        }
    };
    emit(common, &serde_json::to_value(&report)?, || report.to_string());
    Ok(report.verdict)
}

fn map_string(f: &VFunctor) -> String {
    (0..f.dom().len()).map(|x| format!("{} -> {}", f.dom().name(x), f.cod().name(f.apply(x)))).collect::<Vec<_>>().join(", ")
}

fn sheafify_cmd(site_path: &Path, presheaf: &Path, out: Option<&Path>, common: &Common) -> Result<Verdict> {
    let site = io::load_site(site_path)?;
    let f = io::load_presheaf_of_sets(presheaf, &site.category)?;
    let before = sheaf_violations(&site, &f);
    let sheaf = sheafify(&site, &f)?;
    let after = sheaf_violations(&site, &sheaf);
    let file = io::presheaf_of_sets_to_file(&sheaf);
    if let Some(p) = out {
        io::write_json(p, &file)?;
    }
    let verdict = if after.is_empty() { Verdict::Pass } else { Verdict::Fail };
    let value = json!({"input_violations": before, "sheaf": file, "sheaf_violations": after, "verdict": verdict});
    emit(common, &value, || {
        let mut s = format!("input violations: {}\n", before.len());
        for (c, sections) in &file.sections {
            s.push_str(&format!("  {c}: {{{}}}\n", sections.join(", ")));
        }
        s.push_str(&format!("sheaf condition: {verdict}\n"));
        s
    });
    Ok(verdict)
}

fn dualize(path: &Path, out: Option<&Path>) -> Result<Verdict> {
    let value = io::read_json(path)?;
    let dual = match FileKind::detect(&value) {
        Some(FileKind::Quantaloid) => serde_json::to_value(io::dualize_quantaloid(&serde_json::from_value(value)?)?)?,
        Some(FileKind::Category) => {
            let f: io::CategoryFile = serde_json::from_value(value)?;
            let d = io::dualize_category(&f);
            // fail early on a dual that does not load
            io::category_from_file(&d, &dir_of(path))?;
            serde_json::to_value(d)?
        }
        _ => return Err(Error::Input(format!("{}: only quantaloids and categories dualize", path.display()))),
    };
    let text = serde_json::to_string_pretty(&dual)? + "\n";
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(Verdict::Pass)
}
