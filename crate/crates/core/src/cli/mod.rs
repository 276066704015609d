//! The `consideration` command line: reads JSON documents, runs one
//! library operation and reports the outcome.
//!
//! Exit status is 0 when the property holds or the task succeeded, 1 when a
//! property fails (the report then carries a witness), 2 on bad input.

mod render;
pub mod wire;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::attention::{
    check_convex_cost, choose_filter, verify_costless_full_consideration, verify_remark1,
    verify_worthless_consideration, FilterSpace, FilterUtilityModel,
};
use crate::axioms::{
    check_condition_tau, check_constant_number, check_dio, check_dio_all, check_io, check_sens_alpha, check_sens_beta,
    verify_theorem1, BetaVariant, PropertyReport, DEFAULT_FACTORIAL_CAP,
};
use crate::dataset::{check_choice_membership, ChoiceDataset};
use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::ordered::OrderedFilter;
use crate::preference::Preference;
use crate::report::{Mode, TheoremReport};
use crate::representation::{
    check_warp, check_warp_co, check_warp_io, construct_threshold_representation, verify_theorem6, WarpReport,
};
use crate::sampling;
use crate::sequential::{
    check_commutative_n, compose_n, verify_theorem2, verify_theorem3, Direction, FilterSequence,
    DEFAULT_PERMUTATION_CAP,
};
use crate::universe::{Menu, Universe, DEFAULT_UNIVERSE_CAP, MAX_UNIVERSE_CAP};
use wire::{Document, Source};

pub use render::SCHEMA_VERSION;

const MAX_FACTORIAL_CAP: usize = 10;
const MAX_PERMUTATION_CAP: usize = 8;

#[derive(Parser, Debug)]
#[command(
    name = "consideration",
    version,
    about = "Finite-model toolkit for limited-consideration choice"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Largest universe accepted from input files.
    #[arg(long, global = true, default_value_t = DEFAULT_UNIVERSE_CAP)]
    pub universe_cap: usize,

    /// Largest menu whose orderings the DIO check enumerates.
    #[arg(long, global = true, default_value_t = DEFAULT_FACTORIAL_CAP)]
    pub factorial_cap: usize,

    /// Longest filter sequence whose orderings the commutativity check enumerates.
    #[arg(long, global = true, default_value_t = DEFAULT_PERMUTATION_CAP)]
    pub permutation_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check one property of a filter.
    Check {
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum)]
        property: PropertyArg,
        /// Target size for the constant-number property.
        #[arg(long)]
        n: Option<usize>,
        /// Restrict the DIO check to one menu (comma separated names).
        #[arg(long, value_delimiter = ',')]
        menu: Option<Vec<String>>,
    },
    /// Compose filters in the order given.
    Compose {
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether filters give the same result in every order.
    Commute {
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Pick the best filter from a space under a utility model.
    ChooseFilter {
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
        /// Evaluate one menu instead of all of them.
        #[arg(long, value_delimiter = ',')]
        menu: Option<Vec<String>>,
    },
    /// Build a threshold representation of an IO filter.
    Represent {
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Audit a choice dataset against WARP and its variants.
    Audit {
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = AuditArg::All)]
        property: AuditArg,
    },
    /// Run a claim verifier.
    Verify {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long, value_enum)]
        direction: Option<DirectionArg>,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tuple length for n-commutativity.
        #[arg(long)]
        n: Option<usize>,
        /// A universe document, or a utility model and filter space.
        #[arg(long = "in")]
        inputs: Vec<PathBuf>,
        /// Size of the numbered universe used when no universe is given.
        #[arg(long, default_value_t = 3)]
        size: usize,
    },
    /// Write a reproducible random input file.
    Generate {
        #[arg(long, value_enum)]
        kind: GenerateKind,
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PropertyArg {
    Alpha,
    BetaLiteral,
    BetaClassical,
    Tau,
    Io,
    Dio,
    Cn,
    Membership,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AuditArg {
    Warp,
    WarpCo,
    WarpIo,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    /// IO holds exactly when Sen's alpha and Condition tau hold.
    #[value(name = "io-characterization", alias = "1")]
    IoCharacterization,
    /// Two filters commute exactly when both are IO.
    #[value(name = "io-commutativity", alias = "2")]
    IoCommutativity,
    /// Any number of IO filters commute and collapse to one.
    #[value(name = "n-commutativity", alias = "3")]
    NCommutativity,
    /// Free consideration leads to considering everything.
    #[value(name = "costless-consideration", alias = "4")]
    CostlessConsideration,
    /// Worthless consideration leads to considering as little as possible.
    #[value(name = "worthless-consideration", alias = "5")]
    WorthlessConsideration,
    /// IO filters are exactly the threshold filters.
    #[value(name = "threshold-representation", alias = "6")]
    ThresholdRepresentation,
    /// Convex costs break preference for flexibility.
    #[value(name = "flexibility-reversal", alias = "remark-1")]
    FlexibilityReversal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    If,
    OnlyIf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    RandomFilterTable,
    RuleFilter,
    RationalChoiceDataset,
    IoChoiceDataset,
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Result of one command before formatting.
struct Report {
    passed: bool,
    human: String,
    machine: Value,
    /// Printed verbatim instead of the report (compose/generate without `--out`).
    raw: Option<String>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                Outcome {
                    status,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let name = command_name(&cli.command);
    match execute(cli) {
        Ok(report) => {
            let status = if report.passed { 0 } else { 1 };
            let stdout = match (report.raw, cli.format) {
                (Some(raw), _) => raw,
                (None, Format::Human) => report.human,
                (None, Format::Machine) => {
                    machine_envelope(name, if report.passed { "pass" } else { "fail" }, report.machine)
                }
            };
            Outcome {
                status,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stdout = match cli.format {
                Format::Human => String::new(),
                Format::Machine => {
                    let body = match &e {
                        Error::Parse { location, message } => json!({"location": location, "message": message}),
                        other => json!({"location": null, "message": other.to_string()}),
                    };
                    machine_envelope(name, "error", body)
                }
            };
            Outcome {
                status: 2,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn machine_envelope(command: &str, status: &str, result: Value) -> String {
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "status": status,
        "result": result,
    });
    let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
    s.push('\n');
    s
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Compose { .. } => "compose",
        Command::Commute { .. } => "commute",
        Command::ChooseFilter { .. } => "choose-filter",
        Command::Represent { .. } => "represent",
        Command::Audit { .. } => "audit",
        Command::Verify { .. } => "verify",
        Command::Generate { .. } => "generate",
    }
}

fn check_caps(cli: &Cli) -> Result<()> {
    let caps = [
        ("universe cap", cli.universe_cap, MAX_UNIVERSE_CAP),
        ("factorial cap", cli.factorial_cap, MAX_FACTORIAL_CAP),
        ("permutation cap", cli.permutation_cap, MAX_PERMUTATION_CAP),
    ];
    for (what, size, cap) in caps {
        if size > cap {
            return Err(Error::capacity(what, size, cap));
        }
    }
    Ok(())
}

/// Loaded input documents with their origin.
struct Inputs {
    docs: Vec<(Source, Document)>,
    cap: usize,
}

impl Inputs {
    fn load(paths: &[PathBuf], cap: usize) -> Result<Self> {
        let docs = paths
            .iter()
            .map(|p| Ok((Source::new(p.display().to_string()), wire::read_document(p)?)))
            .collect::<Result<_>>()?;
        Ok(Inputs { docs, cap })
    }

    fn expect_count(&self, range: std::ops::RangeInclusive<usize>, what: &str) -> Result<()> {
        if range.contains(&self.docs.len()) {
            Ok(())
        } else {
            Err(Error::validation(format!(
                "expected {what}, got {} input file(s)",
                self.docs.len()
            )))
        }
    }

    fn kind_error(source: &Source, doc: &Document, wanted: &str) -> Error {
        Error::Parse {
            location: source.location.clone(),
            message: format!("expected a {wanted} document, found `{}`", doc.kind()),
        }
    }

    fn filter(&self, i: usize) -> Result<Filter> {
        let (src, doc) = &self.docs[i];
        match doc {
            Document::Filter(d) => wire::decode_filter(d, self.cap, src),
            other => Err(Self::kind_error(src, other, "filter")),
        }
    }

    fn ordered_filter(&self, i: usize) -> Result<OrderedFilter> {
        let (src, doc) = &self.docs[i];
        match doc {
            Document::OrderedFilter(d) => wire::decode_ordered_filter(d, self.cap, src),
            Document::Filter(d) => Ok(OrderedFilter::lift(&wire::decode_filter(d, self.cap, src)?)),
            other => Err(Self::kind_error(src, other, "filter or ordered-filter")),
        }
    }

    fn find(&self, kind: &str) -> Option<usize> {
        self.docs.iter().position(|(_, d)| d.kind() == kind)
    }

    fn require(&self, kind: &str) -> Result<usize> {
        self.find(kind)
            .ok_or_else(|| Error::validation(format!("no {kind} document among the inputs")))
    }

    fn dataset(&self, i: usize) -> Result<ChoiceDataset> {
        let (src, doc) = &self.docs[i];
        match doc {
            Document::ChoiceDataset(d) => wire::decode_dataset(d, self.cap, src),
            other => Err(Self::kind_error(src, other, "choice-dataset")),
        }
    }

    fn model(&self, i: usize) -> Result<FilterUtilityModel> {
        let (src, doc) = &self.docs[i];
        match doc {
            Document::UtilityModel(d) => wire::decode_utility_model(d, self.cap, src),
            other => Err(Self::kind_error(src, other, "utility-model")),
        }
    }

    fn space(&self, i: usize) -> Result<FilterSpace> {
        let (src, doc) = &self.docs[i];
        match doc {
            Document::FilterSpace(d) => wire::decode_filter_space(d, self.cap, src),
            other => Err(Self::kind_error(src, other, "filter-space")),
        }
    }

    fn universe(&self, i: usize) -> Result<Universe> {
        let (src, doc) = &self.docs[i];
        match doc {
            Document::Universe(d) => wire::decode_universe(&d.alternatives, self.cap, src),
            other => Err(Self::kind_error(src, other, "universe")),
        }
    }
}

fn execute(cli: &Cli) -> Result<Report> {
    check_caps(cli)?;
    let load = |paths: &[PathBuf]| Inputs::load(paths, cli.universe_cap);
    match &cli.command {
        Command::Check {
            inputs,
            property,
            n,
            menu,
        } => check(cli, &load(inputs)?, *property, *n, menu.as_deref()),
        Command::Compose { inputs, out } => compose(&load(inputs)?, out.as_deref()),
        Command::Commute { inputs } => commute(cli, &load(inputs)?),
        Command::ChooseFilter { inputs, menu } => choose(&load(inputs)?, menu.as_deref()),
        Command::Represent { inputs } => represent(&load(inputs)?),
        Command::Audit { inputs, property } => audit(&load(inputs)?, *property),
        Command::Verify {
            theorem,
            direction,
            exhaustive: _,
            samples,
            seed,
            n,
            inputs,
            size,
        } => {
            let mode = match samples {
                Some(count) => Mode::Sampled {
                    count: *count,
                    seed: *seed,
                },
                None => Mode::Exhaustive,
            };
            verify(&load(inputs)?, *theorem, *direction, mode, *n, *size, cli.universe_cap)
        }
        Command::Generate { kind, size, seed, out } => generate(*kind, *size, *seed, out.as_deref(), cli.universe_cap),
    }
}

fn parse_menu(u: &Universe, names: &[String]) -> Result<Menu> {
    u.menu(names).map_err(|e| Error::Parse {
        location: "--menu".into(),
        message: e.to_string(),
    })
}

fn property_report(u: &Universe, r: &PropertyReport) -> Report {
    Report {
        passed: r.holds,
        human: format!("{}\n", r.describe(u)),
        machine: render::property(u, r),
        raw: None,
    }
}

fn check(
    cli: &Cli,
    inputs: &Inputs,
    property: PropertyArg,
    n: Option<usize>,
    menu: Option<&[String]>,
) -> Result<Report> {
    if property == PropertyArg::Membership {
        inputs.expect_count(2..=2, "a filter and a choice dataset")?;
        let f = inputs.filter(inputs.require("filter")?)?;
        let ds = inputs.dataset(inputs.require("choice-dataset")?)?;
        let u = f.universe().clone();
        let bad = check_choice_membership(&ds, &f)?;
        let lines: Vec<String> = bad
            .iter()
            .map(|&m| {
                let c = ds.choice(m).expect("violations have choices");
                format!(
                    "c({}) = {} but G({}) = {}",
                    u.show(m),
                    u.name(c),
                    u.show(m),
                    u.show(f.apply(m))
                )
            })
            .collect();
        let human = if bad.is_empty() {
            "membership: holds\n".to_owned()
        } else {
            format!("membership: fails, {}\n", lines.join("; "))
        };
        return Ok(Report {
            passed: bad.is_empty(),
            human,
            machine: json!({
                "property": "membership",
                "holds": bad.is_empty(),
                "violations": bad.iter().zip(&lines).map(|(&m, text)| json!({
                    "menu": wire::encode_menu(&u, m),
                    "choice": ds.choice(m).map(|c| u.name(c)),
                    "considered": wire::encode_menu(&u, f.apply(m)),
                    "explanation": text,
                })).collect::<Vec<_>>(),
            }),
            raw: None,
        });
    }

    inputs.expect_count(1..=1, "one filter")?;
    if property == PropertyArg::Dio {
        let of = inputs.ordered_filter(0)?;
        let u = of.universe().clone();
        let r = match menu {
            Some(names) => check_dio(&of, parse_menu(&u, names)?, cli.factorial_cap)?,
            None => check_dio_all(&of, cli.factorial_cap)?,
        };
        return Ok(property_report(&u, &r));
    }
    let f = inputs.filter(0)?;
    let r = match property {
        PropertyArg::Alpha => check_sens_alpha(&f),
        PropertyArg::BetaLiteral => check_sens_beta(&f, BetaVariant::Literal),
        PropertyArg::BetaClassical => check_sens_beta(&f, BetaVariant::Classical),
        PropertyArg::Tau => check_condition_tau(&f),
        PropertyArg::Io => check_io(&f),
        PropertyArg::Cn => {
            let n = n.ok_or_else(|| Error::validation("--property cn needs --n"))?;
            check_constant_number(&f, n)
        }
        PropertyArg::Dio | PropertyArg::Membership => unreachable!("handled above"),
    };
    Ok(property_report(f.universe(), &r))
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(Error::from)
}

fn compose(inputs: &Inputs, out: Option<&Path>) -> Result<Report> {
    let filters = (0..inputs.docs.len())
        .map(|i| inputs.filter(i))
        .collect::<Result<Vec<_>>>()?;
    let seq = FilterSequence::new(filters)?;
    let composite = compose_n(&seq);
    let text = wire::to_json(&Document::Filter(wire::encode_filter(&composite)));
    let raw = match out {
        Some(path) => {
            write_out(path, &text)?;
            None
        }
        None => Some(text),
    };
    Ok(Report {
        passed: true,
        human: format!(
            "composed {} filter(s) into {}\n",
            seq.len(),
            out.map(|p| p.display().to_string()).unwrap_or_default()
        ),
        machine: json!({
            "filters": seq.len(),
            "out": out.map(|p| p.display().to_string()),
            "composite": wire::encode_filter(&composite),
        }),
        raw,
    })
}

fn commute(cli: &Cli, inputs: &Inputs) -> Result<Report> {
    let filters = (0..inputs.docs.len())
        .map(|i| inputs.filter(i))
        .collect::<Result<Vec<_>>>()?;
    let seq = FilterSequence::new(filters)?;
    let u = seq.universe().clone();
    let r = check_commutative_n(&seq, cli.permutation_cap)?;
    let mut human = String::new();
    match &r.witness {
        None => writeln!(human, "commutative: yes ({} filters)", seq.len()).unwrap(),
        Some(w) => {
            let one_based = |o: &[usize]| o.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
            writeln!(
                human,
                "commutative: no, order ({}) gives {} but order ({}) gives {} on {}",
                one_based(&w.reference),
                u.show(w.reference_image),
                one_based(&w.other),
                u.show(w.other_image),
                u.show(w.menu)
            )
            .unwrap()
        }
    }
    let io: Vec<String> = r
        .io_status
        .iter()
        .enumerate()
        .map(|(i, io)| format!("{}:{}", i + 1, if *io { "IO" } else { "not IO" }))
        .collect();
    writeln!(human, "io: {}", io.join(" ")).unwrap();
    Ok(Report {
        passed: r.commutative,
        human,
        machine: json!({
            "commutative": r.commutative,
            "witness": r.witness.as_ref().map(|w| render::order_witness(&u, w)),
            "io_status": r.io_status,
        }),
        raw: None,
    })
}

fn choose(inputs: &Inputs, menu: Option<&[String]>) -> Result<Report> {
    inputs.expect_count(2..=2, "a utility model and a filter space")?;
    let model = inputs.model(inputs.require("utility-model")?)?;
    let space = inputs.space(inputs.require("filter-space")?)?;
    let u = space.universe().clone();
    let menus: Vec<Menu> = match menu {
        Some(names) => vec![parse_menu(&u, names)?],
        None => u.menus().collect(),
    };
    let convex = check_convex_cost(&model);
    let mut human = String::new();
    match convex.witness {
        None => writeln!(human, "cost: strictly convex").unwrap(),
        Some((k, why)) => writeln!(human, "cost: not strictly convex at {k} ({why:?})").unwrap(),
    }
    let mut rows = Vec::new();
    for m in menus {
        let c = choose_filter(&model, &space, m)?;
        let chosen = &space.filters()[c.index];
        writeln!(
            human,
            "{}: {} considers {} (utility {}){}",
            u.show(m),
            space.labels()[c.index],
            u.show(chosen.apply(m)),
            c.utilities[c.index],
            if c.mandate_vacuous {
                ", nothing considerable"
            } else {
                ""
            }
        )
        .unwrap();
        rows.push(json!({
            "menu": wire::encode_menu(&u, m),
            "chosen": c.index,
            "label": space.labels()[c.index],
            "considered": wire::encode_menu(&u, chosen.apply(m)),
            "utilities": c.utilities,
            "eligible": c.eligible,
            "mandate_vacuous": c.mandate_vacuous,
        }));
    }
    Ok(Report {
        passed: true,
        human,
        machine: json!({"convex_cost": convex.convex, "choices": rows}),
        raw: None,
    })
}

fn represent(inputs: &Inputs) -> Result<Report> {
    inputs.expect_count(1..=1, "one filter")?;
    let f = inputs.filter(0)?;
    let u = f.universe().clone();
    match construct_threshold_representation(&f) {
        Ok(rep) => {
            let scores: Vec<String> = u
                .alts()
                .map(|x| format!("{}={}", u.name(x), rep.scores[x.index()]))
                .collect();
            Ok(Report {
                passed: true,
                human: format!("threshold: {} cutoff {}\n", scores.join(" "), rep.cutoff),
                machine: json!({
                    "representable": true,
                    "scores": u.names().iter().zip(&rep.scores).map(|(n, s)| (n.clone(), json!(s))).collect::<serde_json::Map<_, _>>(),
                    "cutoff": rep.cutoff,
                }),
                raw: None,
            })
        }
        Err(Error::RepresentationImpossible(io)) => Ok(Report {
            passed: false,
            human: format!("no threshold representation; {}\n", io.describe(&u)),
            machine: json!({"representable": false, "io": render::property(&u, &io)}),
            raw: None,
        }),
        Err(e) => Err(e),
    }
}

fn audit(inputs: &Inputs, which: AuditArg) -> Result<Report> {
    inputs.expect_count(1..=1, "one choice dataset")?;
    let ds = inputs.dataset(0)?;
    let u = ds.universe().clone();
    let reports: Vec<WarpReport> = match which {
        AuditArg::Warp => vec![check_warp(&ds)],
        AuditArg::WarpCo => vec![check_warp_co(&ds)],
        AuditArg::WarpIo => vec![check_warp_io(&ds)],
        AuditArg::All => vec![check_warp(&ds), check_warp_co(&ds), check_warp_io(&ds)],
    };
    let mut human = String::new();
    for r in &reports {
        writeln!(
            human,
            "{}: {}",
            r.axiom.name(),
            if r.satisfied { "satisfied" } else { "violated" }
        )
        .unwrap();
        for v in &r.violations {
            writeln!(human, "  {}", render::describe_violation(&u, v)).unwrap();
        }
        if !r.coverage_gaps.is_empty() {
            let gaps: Vec<String> = r.coverage_gaps.iter().map(|m| u.show(*m)).collect();
            writeln!(human, "  unrecorded: {}", gaps.join(" ")).unwrap();
        }
        if let Some(p) = &r.rationalizing_preference {
            writeln!(human, "  rationalized by {}", p.names().join(">")).unwrap();
        }
        for n in &r.notes {
            writeln!(human, "  note: {n}").unwrap();
        }
    }
    Ok(Report {
        passed: reports.iter().all(|r| r.satisfied),
        human,
        machine: json!({
            "provenance": ds.provenance(),
            "audits": reports.iter().map(|r| render::warp(&u, r)).collect::<Vec<_>>(),
        }),
        raw: None,
    })
}

/// Zero cost, benefit falling with canonical rank.
fn costless_model(u: &Universe) -> Result<FilterUtilityModel> {
    let n = u.len();
    FilterUtilityModel::new(
        Preference::canonical(u),
        (0..n).map(|i| (n - i) as f64).collect(),
        vec![0.0; n + 1],
    )
}

/// Benefit 1 whatever is chosen, quadratic cost.
fn worthless_model(u: &Universe) -> Result<FilterUtilityModel> {
    let n = u.len();
    FilterUtilityModel::with_benefit_none(
        Preference::canonical(u),
        vec![1.0; n],
        (0..=n).map(|k| (k * k) as f64).collect(),
        1.0,
    )
}

/// Benefit 5 whatever is chosen, nothing worth 0, quadratic cost.
fn flexibility_model(u: &Universe) -> Result<FilterUtilityModel> {
    let n = u.len();
    FilterUtilityModel::new(
        Preference::canonical(u),
        vec![5.0; n],
        (0..=n).map(|k| (k * k) as f64).collect(),
    )
}

/// The identity filter followed by every fixed-set filter.
pub fn standard_space(u: &Universe) -> FilterSpace {
    let mut filters = vec![Filter::identity(u)];
    let mut labels = vec!["identity".to_owned()];
    for y in u.menus() {
        filters.push(Filter::fixed_set(u, y));
        labels.push(format!("fixed-set {}", u.show(y)));
    }
    FilterSpace::new(filters, labels).expect("one universe")
}

fn verify(
    inputs: &Inputs,
    theorem: TheoremArg,
    direction: Option<DirectionArg>,
    mode: Mode,
    n: Option<usize>,
    size: usize,
    cap: usize,
) -> Result<Report> {
    let universe = match inputs.find("universe") {
        Some(i) => inputs.universe(i)?,
        None => match inputs.find("filter-space") {
            Some(i) => inputs.space(i)?.universe().clone(),
            None => {
                if size > cap {
                    return Err(Error::capacity("universe size", size, cap));
                }
                Universe::numbered(size)?
            }
        },
    };
    let u = &universe;
    let menus = || -> Vec<Menu> {
        match mode {
            Mode::Exhaustive => u.menus().collect(),
            Mode::Sampled { count, seed } => {
                let mut rng = sampling::rng(seed);
                (0..count).map(|_| sampling::random_menu(u, &mut rng)).collect()
            }
        }
    };
    let attention_inputs =
        |default: fn(&Universe) -> Result<FilterUtilityModel>| -> Result<(FilterUtilityModel, FilterSpace)> {
            let model = match inputs.find("utility-model") {
                Some(i) => inputs.model(i)?,
                None => default(u)?,
            };
            let space = match inputs.find("filter-space") {
                Some(i) => inputs.space(i)?,
                None => standard_space(u),
            };
            Ok((model, space))
        };
    let (report, unit): (TheoremReport, &str) = match theorem {
        TheoremArg::IoCharacterization => (verify_theorem1(u, mode)?, "filters"),
        TheoremArg::IoCommutativity => {
            let d = match direction.unwrap_or(DirectionArg::If) {
                DirectionArg::If => Direction::If,
                DirectionArg::OnlyIf => Direction::OnlyIf,
            };
            (verify_theorem2(u, d, mode)?, "pairs")
        }
        TheoremArg::NCommutativity => (verify_theorem3(u, n.unwrap_or(3), mode)?, "tuples"),
        TheoremArg::CostlessConsideration => {
            let (model, space) = attention_inputs(costless_model)?;
            (verify_costless_full_consideration(&space, &model, &menus())?, "menus")
        }
        TheoremArg::WorthlessConsideration => {
            let (model, space) = attention_inputs(worthless_model)?;
            (verify_worthless_consideration(&space, &model, &menus())?, "menus")
        }
        TheoremArg::ThresholdRepresentation => (
            verify_theorem6(u, mode)?,
            match mode {
                Mode::Exhaustive => "filters",
                Mode::Sampled { .. } => "representations",
            },
        ),
        TheoremArg::FlexibilityReversal => {
            let (model, space) = attention_inputs(flexibility_model)?;
            (verify_remark1(&space, &model, &menus())?, "menus")
        }
    };
    if !report.preconditions_failed.is_empty() {
        return Err(Error::validation(format!(
            "preconditions not met: {}",
            report.preconditions_failed.join("; ")
        )));
    }
    let mut human = format!(
        "{} ({}, |X|={}): {} {}, {} counterexamples\n",
        report.claim,
        report.mode,
        report.universe_size,
        report.checked,
        unit,
        report.counterexamples.len()
    );
    const SHOWN: usize = 10;
    for c in report.counterexamples.iter().take(SHOWN) {
        let at = c.menu.map(|m| format!(" at {}", u.show(m))).unwrap_or_default();
        writeln!(human, "  {}{at}: {}", c.label, c.detail).unwrap();
        for f in &c.filters {
            writeln!(human, "    {}", describe_filter(f)).unwrap();
        }
    }
    if report.counterexamples.len() > SHOWN {
        writeln!(
            human,
            "  ... {} more (machine format lists all)",
            report.counterexamples.len() - SHOWN
        )
        .unwrap();
    }
    for note in &report.notes {
        writeln!(human, "  note: {note}").unwrap();
    }
    Ok(Report {
        passed: report.holds(),
        machine: render::theorem(u, &report, unit),
        human,
        raw: None,
    })
}

fn describe_filter(f: &Filter) -> String {
    let u = f.universe();
    let rows: Vec<String> = u
        .menus()
        .skip(1)
        .map(|m| format!("{}->{}", u.show(m), u.show(f.apply(m))))
        .collect();
    format!("{}: {}", f.provenance().kind(), rows.join(" "))
}

fn generate(kind: GenerateKind, size: usize, seed: u64, out: Option<&Path>, cap: usize) -> Result<Report> {
    if size > cap {
        return Err(Error::capacity("generated universe size", size, cap));
    }
    let u = Universe::numbered(size)?;
    let mut rng = sampling::rng(seed);
    let doc = match kind {
        GenerateKind::RandomFilterTable => {
            Document::Filter(wire::encode_filter(&sampling::random_table_filter(&u, &mut rng)))
        }
        GenerateKind::RuleFilter => Document::Filter(wire::encode_filter(&sampling::random_rule_filter(&u, &mut rng))),
        GenerateKind::RationalChoiceDataset => {
            Document::ChoiceDataset(wire::encode_dataset(&sampling::random_rational_dataset(&u, &mut rng)))
        }
        GenerateKind::IoChoiceDataset => {
            Document::ChoiceDataset(wire::encode_dataset(&sampling::random_io_dataset(&u, &mut rng, 1.0)))
        }
    };
    let text = wire::to_json(&doc);
    let raw = match out {
        Some(path) => {
            write_out(path, &text)?;
            None
        }
        None => Some(text),
    };
    let kind_name = kind
        .to_possible_value()
        .expect("no skipped values")
        .get_name()
        .to_owned();
    Ok(Report {
        passed: true,
        human: format!(
            "wrote {kind_name} ({} alternatives, seed {seed}) to {}\n",
            size,
            out.map(|p| p.display().to_string()).unwrap_or_default()
        ),
        machine: json!({
            "kind": kind_name,
            "size": size,
            "seed": seed,
            "out": out.map(|p| p.display().to_string()),
        }),
        raw,
    })
}
