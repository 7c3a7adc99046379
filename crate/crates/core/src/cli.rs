//! Command-line front end.
//!
//! Exit codes: 0 pass or complete, 1 axiom failure, 2 usage or parse error,
//! 3 truncated by resource limits. Human-readable text goes to stdout;
//! machine-readable documents go to the `--out` path.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::axioms::{parse_axiom_list, AxiomReport, Checker, Scope, TieClause, Witness};
use crate::profile::Profile;
use crate::rules::{self, SocialChoiceFunction, TabledFunction};
use crate::search::{
    enumerate_functions, verify_independence, verify_majority_characterization, Limits,
    SearchError, SearchSpec, SearchSummary,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TRUNCATED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "maycheck", version)]
#[command(about = "Exhaustive axiom checks and function-space search for choose-one voting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a rule on a profile file
    Eval {
        #[command(flatten)]
        rule: RuleArgs,
        /// Profile file: "m n" on line 1, n ballots on line 2
        #[arg(long)]
        profile: PathBuf,
    },
    /// Check a rule against axioms on every profile up to --n-max voters
    Check {
        #[command(flatten)]
        rule: RuleArgs,
        /// Candidate count (defaults to the table's when --table is given)
        #[arg(long)]
        m: Option<u8>,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Comma separated subset of A,N,DP,PO,RS,PR,TIE
        #[arg(long, default_value = "A,N,DP,PO,RS")]
        axioms: String,
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pr: PrArgs,
    },
    /// Enumerate every anonymous function satisfying the axioms
    Search {
        #[arg(long)]
        m: u8,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        /// Comma separated subset of N,DP,PO,RS,PR ("none" for raw enumeration)
        #[arg(long)]
        axioms: String,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pr: PrArgs,
    },
    /// Verify majority rule is the unique function satisfying N, DP, PO, RS
    VerifyTheorem {
        #[arg(long)]
        m: u8,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        /// Drop the duel property (redundant for m >= 4)
        #[arg(long)]
        no_dp: bool,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Replay the counterexamples showing N, PO and RS independent
    VerifyIndependence {
        #[arg(long)]
        m: u8,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Debug)]
struct RuleArgs {
    /// Registered rule: maj, uc, lex, zero
    #[arg(long, required_unless_present = "table", conflicts_with = "table")]
    rule: Option<String>,
    /// Tabled function file instead of a registered rule
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Output path for the report document (a directory for `search`)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for the exhaustive checkers
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args, Debug)]
struct PrArgs {
    /// Tie clause for positive responsiveness: leaders, any, off
    #[arg(long, default_value = "leaders", value_parser = parse_tie_clause)]
    pr_tie: TieClause,
    /// Shorthand for --pr-tie any: every tie must turn into a win
    #[arg(long, conflicts_with = "pr_tie")]
    pr_strict: bool,
}

impl PrArgs {
    fn tie_clause(&self) -> TieClause {
        if self.pr_strict {
            TieClause::Any
        } else {
            self.pr_tie
        }
    }
}

fn parse_tie_clause(s: &str) -> Result<TieClause, String> {
    s.parse()
}

#[derive(Args, Debug)]
struct LimitArgs {
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long)]
    max_solutions: Option<usize>,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_nodes: self.max_nodes,
            max_solutions: self.max_solutions,
            ..Limits::default()
        }
    }
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<'a, I, T>(args: I, out: &'a mut dyn Write, err: &'a mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval { rule, profile } => cmd_eval(&rule, &profile, out),
        Command::Check {
            rule,
            m,
            n_max,
            axioms,
            common,
            pr,
        } => cmd_check(&rule, m, n_max, &axioms, &common, pr.tie_clause(), out),
        Command::Search {
            m,
            n_max,
            axioms,
            limits,
            common,
            pr,
        } => cmd_search(
            m,
            n_max,
            &axioms,
            limits.limits(),
            &common,
            pr.tie_clause(),
            out,
        ),
        Command::VerifyTheorem {
            m,
            n_max,
            no_dp,
            limits,
            common,
        } => cmd_verify_theorem(m, n_max, !no_dp, limits.limits(), &common, out),
        Command::VerifyIndependence { m, n_max, common } => {
            cmd_verify_independence(m, n_max, &common, out)
        }
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

enum LoadedRule {
    Named(&'static rules::NamedRule),
    Table(TabledFunction),
}

impl LoadedRule {
    fn as_function(&self) -> &dyn SocialChoiceFunction {
        match self {
            LoadedRule::Named(r) => *r,
            LoadedRule::Table(t) => t,
        }
    }

    fn id(&self) -> String {
        match self {
            LoadedRule::Named(r) => r.id().to_string(),
            LoadedRule::Table(_) => "table".to_string(),
        }
    }
}

fn load_rule(args: &RuleArgs) -> Result<LoadedRule, Usage> {
    if let Some(path) = &args.table {
        let text = read(path)?;
        let table =
            TabledFunction::parse(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
        return Ok(LoadedRule::Table(table));
    }
    let id = args.rule.as_deref().unwrap_or_default();
    rules::lookup(id).map(LoadedRule::Named).ok_or_else(|| {
        let known: Vec<_> = rules::REGISTRY.iter().map(|r| r.id()).collect();
        Usage(format!("unknown rule {id:?} (known: {})", known.join(", ")))
    })
}

fn read(path: &Path) -> Result<String, Usage> {
    fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn write_document<T: Serialize>(path: &Path, doc: &T) -> Result<(), Usage> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn cmd_eval(args: &RuleArgs, path: &Path, out: &mut dyn Write) -> Result<i32, Usage> {
    let rule = load_rule(args)?;
    let text = read(path)?;
    let profile = Profile::parse(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    let outcome = rule.as_function().evaluate(&profile)?;
    writeln!(out, "{outcome}\t{}", outcome.label())?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CheckDocument {
    rule: String,
    scope: Scope,
    pass: bool,
    reports: Vec<AxiomReport>,
}

fn cmd_check(
    args: &RuleArgs,
    m: Option<u8>,
    n_max: usize,
    axioms: &str,
    common: &CommonArgs,
    tie_clause: TieClause,
    out: &mut dyn Write,
) -> Result<i32, Usage> {
    let rule = load_rule(args)?;
    let axioms = parse_axiom_list(axioms)?;
    if axioms.is_empty() {
        return Err(Usage("no axioms requested".into()));
    }
    let m = match (&rule, m) {
        (LoadedRule::Table(t), None) => t.m(),
        (_, Some(m)) => m,
        (_, None) => return Err(Usage("--m is required for registered rules".into())),
    };
    if m < 2 || n_max < 1 {
        return Err(Usage("need --m >= 2 and --n-max >= 1".into()));
    }
    let checker = Checker::with_workers(common.workers)?.with_tie_clause(tie_clause);
    let f = rule.as_function();
    let mut reports = Vec::new();
    for &axiom in &axioms {
        let report = checker.check(axiom, f, m, n_max)?;
        writeln!(out, "{}", describe_report(&report))?;
        reports.push(report);
    }
    let pass = reports.iter().all(|r| r.pass);
    writeln!(
        out,
        "{}: {} at m={m}, n_max={n_max}",
        rule.id(),
        if pass {
            "all axioms hold"
        } else {
            "axiom violated"
        }
    )?;
    if let Some(path) = &common.out {
        let doc = CheckDocument {
            rule: rule.id(),
            scope: Scope { m, n_max },
            pass,
            reports,
        };
        write_document(path, &doc)?;
    }
    Ok(if pass { EXIT_OK } else { EXIT_FAIL })
}

fn describe_report(r: &AxiomReport) -> String {
    let head = format!(
        "{:<4}{}",
        r.axiom.id(),
        if r.pass { "pass" } else { "FAIL" }
    );
    match &r.witness {
        None => head,
        Some(w) => format!("{head}  {}", describe_witness(w)),
    }
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Anonymity {
            profile,
            permuted_profile,
            outcome,
            permuted_outcome,
            ..
        } => format!("f{profile} = {outcome} but f{permuted_profile} = {permuted_outcome}"),
        Witness::Neutrality {
            profile,
            permutation,
            permuted_profile,
            permuted_outcome,
            expected,
            ..
        } => format!(
            "profile {profile}, permutation {permutation}: f{permuted_profile} = {permuted_outcome} but expected {expected}"
        ),
        Witness::Duel {
            profile,
            pair,
            outcome,
        } => format!("duel {profile} between {} and {} won by {outcome}", pair[0], pair[1]),
        Witness::Pareto {
            profile,
            candidate,
            outcome,
        } => format!("f{profile} = {outcome}, expected {candidate}"),
        Witness::Reducibility {
            profile,
            reduced,
            lhs,
            rhs,
        } => format!("f{profile} = {lhs} but reduced profile f{reduced} = {rhs}"),
        Witness::Responsiveness {
            profile,
            candidate,
            voter,
            changed,
            before,
            after,
        } => format!(
            "f{profile} = {before}; voter {voter} switching to {candidate} gives f{changed} = {after}"
        ),
        Witness::TiedWinner {
            profile,
            pair,
            outcome,
        } => format!(
            "f{profile} = {outcome} although candidates {} and {} are tied",
            pair[0], pair[1]
        ),
    }
}

#[derive(Serialize)]
struct SearchDocument {
    #[serde(flatten)]
    summary: SearchSummary,
    solution_files: Vec<String>,
    /// Every solution passes the requested axioms when replayed through the checkers.
    checker_replay: bool,
}

fn cmd_search(
    m: u8,
    n_max: usize,
    axioms: &str,
    limits: Limits,
    common: &CommonArgs,
    tie_clause: TieClause,
    out: &mut dyn Write,
) -> Result<i32, Usage> {
    let axioms = if axioms.trim().eq_ignore_ascii_case("none") {
        Vec::new()
    } else {
        let list = parse_axiom_list(axioms)?;
        if list.is_empty() {
            return Err(Usage(
                "no axioms requested (use \"none\" for raw enumeration)".into(),
            ));
        }
        list
    };
    let spec = SearchSpec::new(m, n_max, axioms)
        .with_limits(limits)
        .with_tie_clause(tie_clause);
    let result = match enumerate_functions(&spec) {
        Ok(r) => r,
        Err(e @ SearchError::Infeasible { .. }) => {
            writeln!(out, "refused: {e}")?;
            return Ok(EXIT_TRUNCATED);
        }
        Err(e) => return Err(e.into()),
    };

    let checker = Checker::with_workers(common.workers)?.with_tie_clause(tie_clause);
    let mut checker_replay = true;
    for table in &result.solutions {
        for &axiom in &spec.axioms {
            checker_replay &= checker.check(axiom, table, m, n_max)?.pass;
        }
    }

    let summary = result.summary(&spec);
    writeln!(
        out,
        "{} solution(s), {}, {} nodes",
        summary.solution_count,
        if summary.exhausted {
            "exhausted"
        } else {
            "truncated by limits"
        },
        summary.nodes_explored
    )?;
    let majority = TabledFunction::tabulate(&rules::MAJORITY, m, n_max)?;
    for (i, t) in result.solutions.iter().enumerate() {
        if *t == majority {
            writeln!(out, "solution {} is majority rule", i + 1)?;
        }
    }

    let width = result.solutions.len().to_string().len().max(4);
    let files: Vec<String> = (1..=result.solutions.len())
        .map(|i| format!("solution-{i:0width$}.tbl"))
        .collect();
    if let Some(dir) = &common.out {
        fs::create_dir_all(dir).map_err(|e| Usage(format!("{}: {e}", dir.display())))?;
        for (name, table) in files.iter().zip(&result.solutions) {
            let path = dir.join(name);
            fs::write(&path, table.to_text())
                .map_err(|e| Usage(format!("{}: {e}", path.display())))?;
        }
        let doc = SearchDocument {
            summary: summary.clone(),
            solution_files: files,
            checker_replay,
        };
        write_document(&dir.join("summary.json"), &doc)?;
    }
    if !checker_replay {
        writeln!(out, "error: a solution failed checker replay")?;
        return Ok(EXIT_FAIL);
    }
    Ok(if summary.exhausted {
        EXIT_OK
    } else {
        EXIT_TRUNCATED
    })
}

fn cmd_verify_theorem(
    m: u8,
    n_max: usize,
    include_dp: bool,
    limits: Limits,
    common: &CommonArgs,
    out: &mut dyn Write,
) -> Result<i32, Usage> {
    let verdict = match verify_majority_characterization(m, n_max, include_dp, limits) {
        Ok(v) => v,
        Err(e @ SearchError::Infeasible { .. }) => {
            writeln!(out, "refused: {e}")?;
            return Ok(EXIT_TRUNCATED);
        }
        Err(e) => return Err(e.into()),
    };
    let axioms: Vec<&str> = verdict.search.axioms.iter().map(|a| a.id()).collect();
    writeln!(
        out,
        "axioms {} at m={m}, n_max={n_max}: {} solution(s), {}",
        axioms.join(","),
        verdict.search.solution_count,
        if verdict.search.exhausted {
            "exhausted"
        } else {
            "truncated"
        }
    )?;
    writeln!(out, "unique majority rule: {}", verdict.unique_majority)?;
    writeln!(
        out,
        "cases: {} all-abstention, {} dominating tie, {} leader, {} unpartitioned",
        verdict.cases.all_abstention,
        verdict.cases.dominating_tie,
        verdict.cases.leader,
        verdict.cases.not_partitioned
    )?;
    writeln!(out, "induction step replay: {}", verdict.induction_ok)?;
    writeln!(out, "{}", if verdict.pass { "PASS" } else { "FAIL" })?;
    if let Some(path) = &common.out {
        write_document(path, &verdict)?;
    }
    Ok(if !verdict.search.exhausted {
        EXIT_TRUNCATED
    } else if verdict.pass {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}

fn cmd_verify_independence(
    m: u8,
    n_max: usize,
    common: &CommonArgs,
    out: &mut dyn Write,
) -> Result<i32, Usage> {
    let checker = Checker::with_workers(common.workers)?;
    let verdict = verify_independence(&checker, m, n_max)?;
    for e in &verdict.entries {
        let failing: Vec<&str> = e
            .reports
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.axiom.id())
            .collect();
        writeln!(
            out,
            "{:<5} fails {{{}}} (expected {}), witness {}",
            e.rule,
            failing.join(","),
            e.expected_failure,
            if e.witness_matches {
                "matches"
            } else {
                "differs"
            }
        )?;
        if let Some(w) = e
            .reports
            .iter()
            .find(|r| r.axiom == e.expected_failure)
            .and_then(|r| r.witness.as_ref())
        {
            writeln!(out, "      {}", describe_witness(w))?;
        }
    }
    writeln!(out, "{}", if verdict.pass { "PASS" } else { "FAIL" })?;
    if let Some(path) = &common.out {
        write_document(path, &verdict)?;
    }
    Ok(if verdict.pass { EXIT_OK } else { EXIT_FAIL })
}
