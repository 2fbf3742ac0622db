//! `acrw`: equality, normalization and rewriting modulo A, AC and units
//! from the command line.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use acrw_core::oracle::{default_bound, oracle_eq, oracle_match};
use acrw_core::rewrite::{bindings, UNIT_WARNING};
use acrw_core::{
    chain, eq_ac, list_instances, norm, parse_term, print_term, Direction, Equation, Error, Signature, StepOptions,
    StepRecord, Term,
};

#[derive(Parser)]
#[command(name = "acrw", version, about = "Equality, normalization and rewriting modulo associativity, commutativity and units")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two terms are equal modulo the axioms.
    Check {
        #[command(flatten)]
        common: Common,
        left: String,
        right: String,
    },
    /// Print the normal form of a term.
    Normalize {
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// List every occurrence and substitution at which a rule applies.
    Instances {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        rule: RuleArgs,
        term: String,
    },
    /// Rewrite a term once per rule, in order.
    Rewrite {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        rule: RuleArgs,
        /// Occurrence to rewrite, as numbered by `instances`.
        #[arg(long, default_value_t = 0)]
        occ: usize,
        /// Substitution within the occurrence.
        #[arg(long, default_value_t = 0)]
        subst: usize,
        /// Normalize the result.
        #[arg(long)]
        post_normalize: bool,
        term: String,
    },
}

#[derive(Args)]
struct Common {
    /// Signature file.
    #[arg(short, long)]
    signature: PathBuf,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// Also consult the brute-force oracles.
    #[arg(long, hide = true)]
    oracle: bool,
}

#[derive(Args)]
struct RuleArgs {
    /// Rule `p = q`. Repeat to rewrite in several steps.
    #[arg(short, long = "rule", required = true)]
    rules: Vec<String>,
    /// Use the rules from right to left.
    #[arg(long)]
    rtl: bool,
}

impl RuleArgs {
    fn direction(&self) -> Direction {
        if self.rtl {
            Direction::RtoL
        } else {
            Direction::LtoR
        }
    }

    fn parse(&self, sig: &Signature) -> Result<Vec<Equation>, Failure> {
        self.rules
            .iter()
            .map(|r| Equation::parse(sig, r).map_err(|e| Failure::input(format!("rule `{r}`: {e}"))))
            .collect()
    }
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    signature_hash: String,
    solutions: Vec<SolutionJson>,
    warning: bool,
    result: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    transcript: Vec<StepRecord>,
}

#[derive(Serialize)]
struct SolutionJson {
    occurrence: usize,
    substitution_index: usize,
    context: String,
    bindings: BTreeMap<String, String>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: String) -> Failure {
        Failure { code: 2, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let inner = match &e {
            Error::Step { source, .. } => source.as_ref(),
            other => other,
        };
        let code = match inner {
            Error::NoMatch { .. } => 1,
            Error::SelectionOutOfRange { .. } => 3,
            Error::Unverified(_) => 4,
            _ => 2,
        };
        let mut message = e.to_string();
        if matches!(inner, Error::NoMatch { warning: true }) {
            message = format!("{message}\n{UNIT_WARNING}");
        }
        Failure { code, message }
    }
}

struct Workspace {
    sig: Signature,
    hash: String,
}

impl Workspace {
    fn load(common: &Common) -> Result<Workspace, Failure> {
        let path = common.signature.display();
        let text = std::fs::read_to_string(&common.signature)
            .map_err(|e| Failure::input(format!("{path}: {e}")))?;
        let sig = Signature::parse(&text).map_err(|e| Failure::input(format!("{path}: {e}")))?;
        let hash = format!("{:x}", Sha256::digest(sig.to_string().as_bytes()));
        Ok(Workspace { sig, hash })
    }

    fn term(&self, text: &str) -> Result<Term, Failure> {
        parse_term(&self.sig, text).map_err(|e| Failure::input(format!("`{text}`: {e}")))
    }

    fn show(&self, t: &Term) -> String {
        print_term(&self.sig, t)
    }

    fn report(&self, command: &'static str) -> Report {
        Report {
            command,
            signature_hash: self.hash.clone(),
            solutions: Vec::new(),
            warning: false,
            result: None,
            transcript: Vec::new(),
        }
    }
}

/// What a command prints, and its exit status.
struct Output {
    text: String,
    report: Report,
    code: u8,
    diagnostic: Option<String>,
}

fn check(ws: &Workspace, common: &Common, left: &str, right: &str) -> Result<Output, Failure> {
    let (t, u) = (ws.term(left)?, ws.term(right)?);
    let equal = eq_ac(&ws.sig, &t, &u);
    let mut diagnostic = None;
    if common.oracle {
        let by_oracle = oracle_eq(&ws.sig, &t, &u, default_bound(&t, &u));
        diagnostic = Some(format!("oracle: {}", if by_oracle { "EQUAL" } else { "NOT EQUAL" }));
    }
    let verdict = if equal { "EQUAL" } else { "NOT EQUAL" };
    let mut text = format!("{verdict}\n");
    if !equal {
        text.push_str(&format!("{}\n{}\n", ws.show(&norm(&ws.sig, &t)), ws.show(&norm(&ws.sig, &u))));
    }
    let mut report = ws.report("check");
    report.result = Some(verdict.to_owned());
    Ok(Output { text, report, code: if equal { 0 } else { 1 }, diagnostic })
}

fn normalize(ws: &Workspace, term: &str) -> Result<Output, Failure> {
    let shown = ws.show(&norm(&ws.sig, &ws.term(term)?));
    let mut report = ws.report("normalize");
    report.result = Some(shown.clone());
    Ok(Output { text: format!("{shown}\n"), report, code: 0, diagnostic: None })
}

fn instances(ws: &Workspace, common: &Common, rule: &RuleArgs, term: &str) -> Result<Output, Failure> {
    let eqs = rule.parse(&ws.sig)?;
    let t = ws.term(term)?;
    let mut report = ws.report("instances");
    let mut text = String::new();
    let mut diagnostic = Vec::new();
    for eq in &eqs {
        let mut listing = list_instances(&ws.sig, eq, &t, rule.direction())?;
        report.warning |= std::mem::take(&mut listing.warning);
        if eqs.len() > 1 {
            text.push_str(&format!("rule {} = {}\n", ws.show(&eq.lhs), ws.show(&eq.rhs)));
        }
        text.push_str(&listing.render(&ws.sig));
        for (i, occ) in listing.occurrences.iter().enumerate() {
            for (j, sol) in occ.solutions.iter().enumerate() {
                report.solutions.push(SolutionJson {
                    occurrence: i,
                    substitution_index: j,
                    context: ws.show(sol.context.term()),
                    bindings: bindings(&ws.sig, &sol.subst),
                });
            }
        }
        if common.oracle {
            let oriented = eq.oriented(&ws.sig, rule.direction())?;
            let found = oracle_match(&ws.sig, &oriented.lhs, &t);
            diagnostic.push(format!(
                "oracle: {} solution class(es){}",
                found.solutions.len(),
                if found.unit_instances { ", unit instances" } else { "" }
            ));
        }
    }
    if report.warning {
        diagnostic.push(UNIT_WARNING.to_owned());
    }
    let code = if report.solutions.is_empty() { 1 } else { 0 };
    let diagnostic = (!diagnostic.is_empty()).then(|| diagnostic.join("\n"));
    Ok(Output { text, report, code, diagnostic })
}

fn rewrite(
    ws: &Workspace,
    rule: &RuleArgs,
    occ: usize,
    subst: usize,
    post_normalize: bool,
    term: &str,
) -> Result<Output, Failure> {
    let opts = StepOptions { occurrence: occ, substitution: subst, direction: rule.direction() };
    let steps: Vec<(Equation, StepOptions)> = rule.parse(&ws.sig)?.into_iter().map(|eq| (eq, opts)).collect();
    let t = ws.term(term)?;
    let run = chain(&ws.sig, &steps, &t)?;
    let result = if post_normalize { norm(&ws.sig, &run.result) } else { run.result.clone() };
    let shown = ws.show(&result);
    let mut report = ws.report("rewrite");
    for step in &run.transcript {
        report.solutions.push(SolutionJson {
            occurrence: occ,
            substitution_index: subst,
            context: ws.show(step.solution.context.term()),
            bindings: bindings(&ws.sig, &step.solution.subst),
        });
        report.transcript.push(step.record(&ws.sig));
    }
    report.result = Some(shown.clone());
    Ok(Output { text: format!("{shown}\n"), report, code: 0, diagnostic: None })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Check { common, left, right } => check(&Workspace::load(common)?, common, left, right),
        Command::Normalize { common, term } => normalize(&Workspace::load(common)?, term),
        Command::Instances { common, rule, term } => instances(&Workspace::load(common)?, common, rule, term),
        Command::Rewrite { common, rule, occ, subst, post_normalize, term } => {
            rewrite(&Workspace::load(common)?, rule, *occ, *subst, *post_normalize, term)
        }
    }
}

fn json_requested(cli: &Cli) -> bool {
    match &cli.command {
        Command::Check { common, .. }
        | Command::Normalize { common, .. }
        | Command::Instances { common, .. }
        | Command::Rewrite { common, .. } => common.json,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if json_requested(&cli) {
                println!("{}", serde_json::to_string_pretty(&out.report).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            if let Some(d) = out.diagnostic {
                eprintln!("{d}");
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("acrw: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
