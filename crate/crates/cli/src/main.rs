use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use ffp_core::conditions as cond;
use ffp_core::corpus::{check_entry, corpus_all, corpus_by_name, CorpusEntry};
use ffp_core::engine::{certify_orbit, detect_cluster, generate_orbit, CertificateKind, EngineError, DEFAULT_N_MAX};
use ffp_core::instance::PairInstance;
use ffp_core::oracle::{finite_oracle_search, OracleReport};
use ffp_core::profile::profile_by_name;
use ffp_core::psi::PsiFunction;
use ffp_core::scalar::Scalar;
use ffp_core::sequence::default_eps;
use ffp_core::space::TimeGrid;
use ffp_core::verify::{verify_theorem, VerifyOptions};

const EXIT_USAGE: u8 = 1;
const EXIT_FAILED_CHECK: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;
const EXIT_DRIFT: u8 = 5;

/// Common fixed points of pairs of self-maps on fuzzy metric spaces.
#[derive(Parser)]
#[command(name = "ffp", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Instance JSON file.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Built-in corpus entry, e.g. EX33.
    #[arg(long)]
    corpus: Option<String>,
}

#[derive(Args, Clone)]
struct Tuning {
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    n_max: usize,
    /// Convergence tolerance as a decimal, e.g. 0.000001.
    #[arg(long)]
    eps: Option<String>,
    /// Comma separated times, e.g. 1/2,1,2.
    #[arg(long)]
    time_grid: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Verb {
    /// Fuzzy metric axioms, non-Archimedean and monotonicity checks.
    CheckSpace {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Admissibility and contractive conditions of the pair.
    CheckPair {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Alternating orbit, certificate and cluster point.
    Iterate {
        #[command(flatten)]
        source: Source,
        /// Picks the certificate kind; RES3 by default.
        #[arg(long)]
        profile: Option<String>,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Check a theorem profile against an instance.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        profile: String,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Re-verify corpus goldens; all entries without --corpus.
    Corpus {
        #[arg(long)]
        corpus: Option<String>,
        /// Write each entry's instance JSON into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Exhaustive search over small finite spaces.
    Oracle {
        #[arg(long, default_value_t = 3)]
        max_points: usize,
        #[arg(long, default_value = "0,1/4,1/2,3/4,1")]
        lattice: String,
        /// Comma separated psi names.
        #[arg(long, default_value = "affine_half,sqrt")]
        psi: String,
        #[arg(long)]
        json: bool,
    },
}

struct Failure(u8, String);

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn load(source: &Source) -> Result<PairInstance, Failure> {
    match (&source.instance, &source.corpus) {
        (Some(p), None) => PairInstance::load(p).map_err(|e| usage(e.to_string())),
        (None, Some(id)) => Ok(corpus_by_name(id)?.instance),
        _ => Err(usage("give exactly one of --instance or --corpus")),
    }
}

fn parse_scalar(s: &str, what: &str) -> Result<Scalar, Failure> {
    s.parse().map_err(|_| usage(format!("cannot read {what} `{s}`")))
}

fn parse_list(s: &str, what: &str) -> Result<Vec<Scalar>, Failure> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(|p| parse_scalar(p, what)).collect()
}

impl Tuning {
    fn grid(&self) -> Result<Option<TimeGrid>, Failure> {
        self.time_grid
            .as_deref()
            .map(|s| TimeGrid::new(parse_list(s, "time")?).map_err(|e| usage(e.to_string())))
            .transpose()
    }

    fn eps(&self) -> Result<Option<Scalar>, Failure> {
        self.eps.as_deref().map(|s| parse_scalar(s, "eps")).transpose()
    }

    fn options(&self) -> Result<VerifyOptions, Failure> {
        Ok(VerifyOptions { n_max: self.n_max, eps: self.eps()?, grid: self.grid()? })
    }

    fn apply(&self, mut inst: PairInstance) -> Result<PairInstance, Failure> {
        if let Some(g) = self.grid()? {
            inst.grid = Some(g);
        }
        Ok(inst)
    }
}

fn emit(json: bool, value: Value, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("json output"));
    } else {
        print!("{text}");
    }
}

fn check_space(source: &Source, tuning: &Tuning) -> Result<u8, Failure> {
    let inst = tuning.apply(load(source)?)?;
    let (space, probes, grid) = (&inst.space, inst.probes(), inst.time_grid());
    let axioms = space.check_axioms(&probes, &grid).map_err(EngineError::from)?;
    let na = space.check_non_archimedean(&probes, &grid).map_err(EngineError::from)?;
    let mono = space.check_monotone_in_t(&probes, &grid).map_err(EngineError::from)?;
    let ok = axioms.all_passed();
    let text = format!(
        "{} space of {}: completeness declared {}, not verified\n{axioms}\n{na}\n{mono}\n",
        space.space_kind, inst.name, space.completeness
    );
    let value = json!({"instance": inst.name, "axioms": axioms, "non_archimedean": na, "monotone_in_t": mono});
    emit(tuning.json, value, text);
    Ok(if ok { 0 } else { EXIT_FAILED_CHECK })
}

fn check_pair(source: &Source, tuning: &Tuning) -> Result<u8, Failure> {
    let inst = tuning.apply(load(source)?)?;
    let probe = inst.probe();
    let (f, g, beta) = (&inst.f, &inst.g, &inst.beta);
    let err = |e: cond::CondError| Failure::from(EngineError::from(e));
    let mut verdicts = vec![
        ("symmetric pair beta-admissible", cond::check_symmetric_beta_admissible_pair(&probe, f, g, beta).map_err(err)?),
        ("M(x,fx,t), M(x,gx,t) > 0", cond::check_self_distance_positive(&probe, &[("f", f), ("g", g)]).map_err(err)?),
    ];
    if let Some(psi) = inst.main_psi() {
        verdicts.push(("beta-psi contractive pair", cond::check_pair_beta_psi_contractive(&probe, f, g, beta, &psi).map_err(err)?));
        verdicts.push(("gf/fg contractive condition", cond::check_gf_fg_contractive(&probe, f, g, beta, &psi).map_err(err)?));
    }
    if let Some(psis) = &inst.psis {
        let v = cond::check_additive_contractive(&probe, f, g, beta, psis).map_err(err)?;
        verdicts.push(("additive contractive condition", v.additive));
        verdicts.push(("reduced min-psi condition", v.reduced));
    }
    if let Some(cs) = &inst.coefficients {
        verdicts.push(("linear contractive condition", cond::check_linear_contractive(&probe, f, g, beta, cs).map_err(err)?));
    }
    let (b, m) = cond::check_uniqueness_preconditions(&probe, beta).map_err(err)?;
    verdicts.push(("uniqueness: beta <= 1", b));
    verdicts.push(("uniqueness: M(x,y,t) > 0 for x != y", m));

    let mut text = format!("pair conditions for {} on {} probe points\n", inst.name, probe.points.len());
    for (name, v) in &verdicts {
        text.push_str(&format!("{name}: {v}\n"));
    }
    let value = Value::Object(verdicts.iter().map(|(k, v)| (k.to_string(), json!(v))).collect());
    emit(tuning.json, value, text);
    Ok(0)
}

fn iterate(source: &Source, profile: Option<&str>, tuning: &Tuning) -> Result<u8, Failure> {
    let inst = tuning.apply(load(source)?)?;
    let kind = match profile {
        Some(p) => profile_by_name(p)?.certificate_kind(),
        None => CertificateKind::Res3,
    };
    let orbit = generate_orbit(&inst, tuning.n_max)?;
    let psi = inst.main_psi().ok_or_else(|| usage("instance has no psi"))?;
    let mut text = format!("orbit of {} from x0 = {}: {} points{}\n", inst.name, inst.x0, orbit.len(), if orbit.stopped_early { " (stopped early)" } else { "" });
    for (n, x) in orbit.points.iter().enumerate().take(20) {
        text.push_str(&format!("  x{n} = {x}\n"));
    }
    if orbit.len() > 20 {
        text.push_str(&format!("  ...\n  x{} = {}\n", orbit.len() - 1, orbit.last()));
    }
    let certificate = match certify_orbit(&orbit, &psi, kind) {
        Ok(c) => {
            let s = c.summary();
            text.push_str(&format!("certificate {kind:?}: {} over {} steps\n", if s.passed { "pass" } else { "FAIL" }, s.steps_checked));
            if let Some(step) = &s.first_failure {
                text.push_str(&format!("  first failure at n = {}, t = {}: {} < {}\n", step.n, step.t, step.actual, step.bound));
            }
            json!(s)
        }
        Err(e) => {
            text.push_str(&format!("certificate skipped: {e}\n"));
            json!({"error": e.to_string()})
        }
    };
    let eps = tuning.eps()?.unwrap_or_else(|| default_eps(orbit.points.iter().all(Scalar::is_exact)));
    let cluster = match detect_cluster(&inst.space, &orbit, &inst.time_grid(), &eps) {
        Ok(c) => {
            text.push_str(&format!("cluster point {} ({:?} indices), evidence {:?}\n", c.candidate, c.parity, c.evidence.evidence));
            json!(c)
        }
        Err(e) => {
            text.push_str(&format!("{e}\n"));
            json!({"error": e.to_string()})
        }
    };
    let value = json!({"instance": inst.name, "points": orbit.points, "stopped_early": orbit.stopped_early, "certificate": certificate, "cluster": cluster});
    emit(tuning.json, value, text);
    Ok(0)
}

fn verify(source: &Source, profile: &str, tuning: &Tuning) -> Result<u8, Failure> {
    let inst = load(source)?;
    let profile = profile_by_name(profile)?;
    let report = verify_theorem(&profile, &inst, &tuning.options()?)?;
    if tuning.json {
        println!("{}", report.to_json());
    } else {
        print!("{report}");
    }
    Ok(report.exit_code() as u8)
}

fn export(entries: &[CorpusEntry], dir: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    for e in entries {
        let path = dir.join(format!("{}.json", e.id));
        std::fs::write(&path, e.export()).map_err(|err| usage(format!("{}: {err}", path.display())))?;
    }
    Ok(())
}

fn corpus(id: Option<&str>, dir: Option<&Path>, tuning: &Tuning) -> Result<u8, Failure> {
    let entries = match id {
        Some(id) => vec![corpus_by_name(id)?],
        None => corpus_all(),
    };
    if let Some(dir) = dir {
        export(&entries, dir)?;
    }
    let opts = tuning.options()?;
    let results = entries.par_iter().map(|e| check_entry(e, &opts)).collect::<Result<Vec<_>, _>>()?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut drifted = false;
    for r in results.iter().flatten() {
        drifted |= !r.ok();
        let c = &r.report.conclusion;
        let points: Vec<String> = c.fixed_points.iter().map(Scalar::to_string).collect();
        text.push_str(&format!(
            "{:<20} {:<6} {:<14} fixed points {{{}}} unique {}  {}\n",
            r.id.as_str(),
            r.profile.as_str(),
            r.report.status.to_string(),
            points.join(", "),
            c.unique.map_or("n/a", |u| if u { "yes" } else { "no" }),
            if r.ok() { "ok".to_string() } else { format!("DRIFT: {}", r.drift.join("; ")) }
        ));
        rows.push(json!({"id": r.id, "profile": r.profile, "status": r.report.status, "drift": r.drift, "report": r.report}));
    }
    emit(tuning.json, Value::Array(rows), text);
    Ok(if drifted { EXIT_DRIFT } else { 0 })
}

fn oracle_text(r: &OracleReport) -> String {
    let mut text = format!("psi {}: up to {} points\n", r.psi, r.max_points);
    for s in &r.sizes {
        text.push_str(&format!(
            "  {} points, {}: {} of {} tables admissible, {} map pairs each, hypothesis holds {}, verified {}\n",
            s.points, s.tnorm, s.admissible_tables, s.tables, s.map_pairs, s.hypothesis_holds, s.verified
        ));
    }
    for c in &r.counterexamples {
        text.push_str(&format!("  COUNTEREXAMPLE {c:?}\n"));
    }
    text.push_str(&format!("  {} instances, {} holding, {} counterexamples\n", r.instances(), r.holding(), r.counterexamples.len()));
    text
}

fn oracle(max_points: usize, lattice: &str, psis: &str, json: bool) -> Result<u8, Failure> {
    let lattice = parse_list(lattice, "lattice value")?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut found = false;
    for name in psis.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let psi: PsiFunction = name.parse().map_err(|e: ffp_core::psi::PsiError| usage(e.to_string()))?;
        match finite_oracle_search(max_points, &lattice, &psi) {
            Ok(r) => {
                found |= !r.passed();
                text.push_str(&oracle_text(&r));
                rows.push(json!(r));
            }
            Err(EngineError::EmptySearchSpace(msg)) => {
                text.push_str(&format!("psi {psi}: empty search space: {msg}\n"));
                rows.push(json!({"psi": psi, "empty_search_space": msg}));
            }
            Err(e) => return Err(e.into()),
        }
    }
    emit(json, Value::Array(rows), text);
    Ok(if found { EXIT_COUNTEREXAMPLE } else { 0 })
}

fn set_workers() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("FFP_WORKERS") {
        let n: usize = v.trim().parse().map_err(|_| usage(format!("FFP_WORKERS must be a positive integer, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| usage(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    set_workers()?;
    match &cli.verb {
        Verb::CheckSpace { source, tuning } => check_space(source, tuning),
        Verb::CheckPair { source, tuning } => check_pair(source, tuning),
        Verb::Iterate { source, profile, tuning } => iterate(source, profile.as_deref(), tuning),
        Verb::Verify { source, profile, tuning } => verify(source, profile, tuning),
        Verb::Corpus { corpus: id, export, tuning } => corpus(id.as_deref(), export.as_deref(), tuning),
        Verb::Oracle { max_points, lattice, psi, json } => oracle(*max_points, lattice, psi, *json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
