use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dbase_core::gadgets::{generate, one_in_three_assignments, verify_reduction, ReductionReport};
use dbase_core::lattice::{classify, d_relation, delta_relation, meet_irreducibles};
use dbase_core::oracle::{self, Oracle};
use dbase_core::set::EMPTY_SET_TOKEN;
use dbase_core::{
    d_base_from_mi, dualize_distributive, parse_cnf_with, parse_ib_with, parse_set_family_with, serialize_ib,
    serialize_relation, serialize_set_family, ClosureContext, DBaseStream, ElementOrder, ElementSet,
    ImplicationalBase, ParseOptions, PositiveCnf, Reduction, SetFamily,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "dbase", version, about = "Closure systems, implicational bases and D-bases")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Largest accepted groundset.
    #[arg(long, global = true, default_value_t = dbase_core::set::DEFAULT_MAX_GROUND)]
    max_ground: usize,
    /// Linear order used by the Min procedure.
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::SizeLabel)]
    order: OrderArg,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Suppress summaries on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    /// Accept implications with an empty premise.
    #[arg(long, global = true)]
    allow_empty_premise: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Natural,
    SizeLabel,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    /// Implicational base file.
    Ib,
    /// Meet-irreducible set-family file.
    Mi,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReductionArg {
    /// Acyclic system with premises of size two.
    Acg,
    /// Lower bounded system with short D-paths.
    Lb,
}

impl From<ReductionArg> for Reduction {
    fn from(arg: ReductionArg) -> Self {
        match arg {
            ReductionArg::Acg => Reduction::Acyclic,
            ReductionArg::Lb => Reduction::LowerBounded,
        }
    }
}

#[derive(Args)]
struct SystemInput {
    /// Input file, `-` for stdin.
    file: PathBuf,
    /// Format of the input file.
    #[arg(long, value_enum, default_value_t = Source::Ib)]
    from: Source,
}

#[derive(Subcommand)]
enum Command {
    /// Closure `cl(A)` of a set.
    Close {
        #[command(flatten)]
        input: SystemInput,
        /// Whitespace-separated labels; `{}` for the empty set.
        #[arg(long)]
        set: String,
    },
    /// Binary closure `cl^b(A)`, the union of singleton closures.
    Closeb {
        #[command(flatten)]
        input: SystemInput,
        #[arg(long)]
        set: String,
    },
    /// All valid non-trivial binary implications.
    BinaryPart {
        #[command(flatten)]
        input: SystemInput,
    },
    /// Meet-irreducible closed sets of an implicational base.
    Mi {
        /// Implicational base file, `-` for stdin.
        file: PathBuf,
    },
    /// Canonical direct base, by exhaustive search.
    Cdb {
        #[command(flatten)]
        input: SystemInput,
    },
    /// Stream the D-base, one implication per line.
    Dbase {
        #[command(flatten)]
        input: SystemInput,
        /// Print the finished base in canonical order instead of streaming.
        #[arg(long)]
        canonical: bool,
        /// Abort when more than this many D-generators are stored.
        #[arg(long)]
        max_visited: Option<usize>,
    },
    /// Dual antichain of B⁺ in the lattice of a binary base.
    Dualize {
        /// Binary implicational base.
        ib_file: PathBuf,
        /// Antichain of closed sets.
        antichain_file: PathBuf,
    },
    /// δ- or D-relation as `c -> a` lines.
    Relations {
        /// Input file, `-` for stdin.
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Source::Mi)]
        from: Source,
        #[arg(long, conflicts_with = "d", required_unless_present = "d")]
        delta: bool,
        #[arg(long)]
        d: bool,
    },
    /// Report acyclicity, lower boundedness and implication-graph acyclicity.
    Classify {
        file: PathBuf,
    },
    /// Build a hardness gadget from a positive 3-CNF.
    GenSat {
        cnf_file: PathBuf,
        #[arg(long, value_enum)]
        reduction: ReductionArg,
        /// Where to write the implicational base, `-` for stdout.
        #[arg(long, short, default_value = "-")]
        output: PathBuf,
        /// JSON file naming the source and target elements; defaults to
        /// `<output>.json` when writing to a file.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Check a reduction's biconditional and structure by brute force.
    VerifySat {
        /// Positive 3-CNF file; omit with `--random`.
        cnf_file: Option<PathBuf>,
        /// Reduction to check; both when omitted.
        #[arg(long, value_enum)]
        reduction: Option<ReductionArg>,
        /// Check this many random formulas instead of a file.
        #[arg(long, conflicts_with = "cnf_file", required_unless_present = "cnf_file")]
        random: Option<usize>,
        #[arg(long, default_value_t = 8)]
        max_vars: usize,
        #[arg(long, default_value_t = 6)]
        max_clauses: usize,
    },
    /// Brute-force reference computations.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Non-trivial minimal generators of an element.
    Mingen {
        #[command(flatten)]
        input: SystemInput,
        #[arg(long)]
        element: String,
    },
    /// D-generators of an element.
    Dgen {
        #[command(flatten)]
        input: SystemInput,
        #[arg(long)]
        element: String,
    },
    /// Canonical direct base.
    Cdb {
        #[command(flatten)]
        input: SystemInput,
    },
    /// D-base.
    Dbase {
        #[command(flatten)]
        input: SystemInput,
    },
    /// D-relation (or δ with `--delta`).
    Relation {
        #[command(flatten)]
        input: SystemInput,
        #[arg(long)]
        delta: bool,
    },
    /// Dual antichain by scanning every closed set.
    Dual {
        ib_file: PathBuf,
        antichain_file: PathBuf,
    },
}

struct Ctx<'a> {
    opts: &'a GlobalOpts,
    out: BufWriter<io::StdoutLock<'static>>,
}

impl Ctx<'_> {
    fn parse_options(&self) -> ParseOptions {
        ParseOptions { max_ground: self.opts.max_ground, allow_empty_premise: self.opts.allow_empty_premise }
    }

    fn order(&self) -> ElementOrder {
        match self.opts.order {
            OrderArg::Natural => ElementOrder::Natural,
            OrderArg::SizeLabel => ElementOrder::SizeLabel,
        }
    }

    fn oracle_limit(&self) -> usize {
        self.opts.max_ground.min(oracle::ORACLE_CEILING)
    }

    fn note(&self, message: impl AsRef<str>) {
        if !self.opts.quiet {
            eprintln!("{}", message.as_ref());
        }
    }

    fn ib(&self, path: &Path) -> Result<ImplicationalBase> {
        let text = read_input(path)?;
        parse_ib_with(&text, &self.parse_options()).with_context(|| path.display().to_string())
    }

    fn family(&self, path: &Path) -> Result<SetFamily> {
        let text = read_input(path)?;
        parse_set_family_with(&text, &self.parse_options()).with_context(|| path.display().to_string())
    }

    fn cnf(&self, path: &Path) -> Result<PositiveCnf> {
        let text = read_input(path)?;
        parse_cnf_with(&text, &self.parse_options()).with_context(|| path.display().to_string())
    }

    fn closure(&self, input: &SystemInput) -> Result<ClosureContext> {
        Ok(match input.from {
            Source::Ib => ClosureContext::from_ib(&self.ib(&input.file)?),
            Source::Mi => ClosureContext::from_mi(&self.family(&input.file)?),
        })
    }

    fn print(&mut self, text: &str) -> Result<()> {
        self.out.write_all(text.as_bytes())?;
        Ok(())
    }

    fn line(&mut self, text: &str) -> Result<()> {
        writeln!(self.out, "{text}")?;
        Ok(())
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("reading stdin")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn parse_set_arg(ctx: &ClosureContext, text: &str) -> Result<ElementSet> {
    if text.trim() == EMPTY_SET_TOKEN {
        return Ok(ElementSet::empty());
    }
    Ok(ctx.ground().parse_set(text)?)
}

fn format_set(ctx: &ClosureContext, set: &ElementSet) -> String {
    if set.is_empty() {
        EMPTY_SET_TOKEN.to_string()
    } else {
        ctx.ground().format_set(set)
    }
}

fn element(ctx: &ClosureContext, label: &str) -> Result<usize> {
    match ctx.ground().index_of(label) {
        Some(c) => Ok(c),
        None => bail!("unknown element `{label}`"),
    }
}

fn sets_as_family(ctx: &ClosureContext, sets: Vec<ElementSet>) -> Result<String> {
    Ok(serialize_set_family(&SetFamily::new(ctx.ground().clone(), sets)?))
}

#[derive(Serialize)]
struct Sidecar<'a> {
    reduction: &'a str,
    source: &'a str,
    target: &'a str,
    variables: usize,
    clauses: usize,
}

fn report_line(name: &str, report: &ReductionReport) -> String {
    let verdict = if report.passed() { "ok" } else { "FAILED" };
    let mut line = format!(
        "{name}: {verdict} (target D source: {}, 1-in-3 assignment: {}, structure: {})",
        report.relation_holds, report.assignment_exists, report.structure_holds
    );
    for v in &report.violations {
        line.push_str("; ");
        line.push_str(v);
    }
    line
}

fn random_cnf(rng: &mut StdRng, max_vars: usize, max_clauses: usize) -> Result<PositiveCnf> {
    if max_vars < 3 || max_clauses == 0 {
        bail!("random formulas need at least 3 variables and 1 clause");
    }
    let n = rng.gen_range(3..=max_vars);
    let m = rng.gen_range(1..=max_clauses);
    let vars: Vec<usize> = (0..n).collect();
    let clauses = (0..m).map(|_| vars.choose_multiple(rng, 3).copied().collect()).collect();
    Ok(PositiveCnf::new(dbase_core::GroundSet::numbered(n), clauses)?)
}

fn run(cli: Cli) -> Result<()> {
    let mut ctx = Ctx { opts: &cli.global, out: BufWriter::new(io::stdout().lock()) };
    match cli.command {
        Command::Close { input, set } => {
            let cl = ctx.closure(&input)?;
            let a = parse_set_arg(&cl, &set)?;
            ctx.line(&format_set(&cl, &cl.close(&a)))?;
        }
        Command::Closeb { input, set } => {
            let cl = ctx.closure(&input)?;
            let a = parse_set_arg(&cl, &set)?;
            ctx.line(&format_set(&cl, &cl.close_binary(&a)))?;
        }
        Command::BinaryPart { input } => {
            let cl = ctx.closure(&input)?;
            ctx.print(&serialize_ib(&cl.binary_part()))?;
        }
        Command::Mi { file } => {
            let cl = ClosureContext::from_ib(&ctx.ib(&file)?);
            let mi = meet_irreducibles(&cl, ctx.opts.max_ground)?;
            ctx.note(format!("{} meet-irreducible sets", mi.len()));
            ctx.print(&serialize_set_family(&mi))?;
        }
        Command::Cdb { input } => {
            let cl = ctx.closure(&input)?;
            let cdb = Oracle::new(&cl, ctx.oracle_limit())?.canonical_direct_base();
            ctx.note(format!("{} implications", cdb.len()));
            ctx.print(&serialize_ib(&cdb))?;
        }
        Command::Dbase { input, canonical, max_visited } => {
            let base = match input.from {
                Source::Ib => {
                    let ib = ctx.ib(&input.file)?;
                    if canonical {
                        dbase_core::d_base(&ib, ctx.order())?
                    } else {
                        return stream_d_base(&mut ctx, &ib, max_visited);
                    }
                }
                Source::Mi => d_base_from_mi(&ctx.family(&input.file)?)?,
            };
            if canonical {
                ctx.print(&serialize_ib(&base))?;
            } else {
                let ground = base.ground().clone();
                ctx.line(&format!("ground: {}", ground.labels().join(" ")))?;
                for imp in base.iter() {
                    ctx.line(&imp.display(&ground))?;
                }
            }
            ctx.note(format!("{} implications", base.len()));
        }
        Command::Dualize { ib_file, antichain_file } => {
            let ib = ctx.ib(&ib_file)?;
            let b_plus = reground(ctx.family(&antichain_file)?, &ib)?;
            let dual = dualize_distributive(&ib, &b_plus)?;
            ctx.print(&serialize_set_family(&dual))?;
        }
        Command::Relations { file, from, delta, .. } => {
            let input = SystemInput { file, from };
            let (cl, mi) = match from {
                Source::Mi => {
                    let mi = ctx.family(&input.file)?;
                    (ClosureContext::from_mi(&mi), mi)
                }
                Source::Ib => {
                    let cl = ClosureContext::from_ib(&ctx.ib(&input.file)?);
                    let mi = meet_irreducibles(&cl, ctx.opts.max_ground)?;
                    (cl, mi)
                }
            };
            let relation = if delta { delta_relation(&mi) } else { d_relation(&mi, &cl) };
            ctx.print(&serialize_relation(&relation))?;
        }
        Command::Classify { file } => {
            let class = classify(&ctx.ib(&file)?, ctx.opts.max_ground)?;
            ctx.line(&format!("acyclic: {}", class.is_acyclic))?;
            ctx.line(&format!("lower_bounded: {}", class.is_lower_bounded))?;
            ctx.line(&format!("graph_acyclic: {}", class.graph_acyclic))?;
        }
        Command::GenSat { cnf_file, reduction, output, sidecar } => {
            let cnf = ctx.cnf(&cnf_file)?;
            let instance = generate(&cnf, reduction.into())?;
            let text = serialize_ib(&instance.ib);
            let to_stdout = output == Path::new("-");
            if to_stdout {
                ctx.print(&text)?;
            } else {
                fs::write(&output, &text).with_context(|| format!("writing {}", output.display()))?;
            }
            let sidecar = sidecar.or_else(|| (!to_stdout).then(|| output.with_extension("json")));
            if let Some(path) = sidecar {
                let ground = instance.ib.ground();
                let meta = Sidecar {
                    reduction: match reduction {
                        ReductionArg::Acg => "acg",
                        ReductionArg::Lb => "lb",
                    },
                    source: ground.label(instance.source),
                    target: ground.label(instance.target),
                    variables: cnf.vars().len(),
                    clauses: cnf.clauses().len(),
                };
                let json = serde_json::to_string_pretty(&meta)?;
                fs::write(&path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::VerifySat { cnf_file, reduction, random, max_vars, max_clauses } => {
            let reductions: Vec<ReductionArg> = match reduction {
                Some(r) => vec![r],
                None => vec![ReductionArg::Acg, ReductionArg::Lb],
            };
            let formulas: Vec<PositiveCnf> = match (cnf_file, random) {
                (Some(path), _) => vec![ctx.cnf(&path)?],
                (None, Some(count)) => {
                    let mut rng = StdRng::seed_from_u64(ctx.opts.seed);
                    (0..count).map(|_| random_cnf(&mut rng, max_vars, max_clauses)).collect::<Result<_>>()?
                }
                (None, None) => bail!("give a CNF file or --random"),
            };
            let mut failed = 0;
            for (i, cnf) in formulas.iter().enumerate() {
                if formulas.len() == 1 && !ctx.opts.quiet {
                    let count = one_in_three_assignments(cnf, ctx.opts.max_ground)?.len();
                    ctx.note(format!("{count} 1-in-3 assignments"));
                }
                for &r in &reductions {
                    let report = verify_reduction(cnf, r.into(), ctx.oracle_limit())?;
                    failed += usize::from(!report.passed());
                    let name = match r {
                        ReductionArg::Acg => "acg",
                        ReductionArg::Lb => "lb",
                    };
                    if formulas.len() == 1 {
                        ctx.line(&report_line(name, &report))?;
                    } else if !report.passed() {
                        ctx.line(&report_line(&format!("formula {i} {name}"), &report))?;
                    }
                }
            }
            if formulas.len() > 1 {
                ctx.line(&format!("{} formulas checked, {failed} failures", formulas.len()))?;
            }
            ctx.out.flush()?;
            if failed > 0 {
                bail!("{failed} reduction checks failed");
            }
        }
        Command::Oracle { command } => run_oracle(&mut ctx, command)?,
    }
    ctx.out.flush()?;
    Ok(())
}

/// Gives an antichain read from its own file the groundset of `ib`.
fn reground(family: SetFamily, ib: &ImplicationalBase) -> Result<SetFamily> {
    if family.ground() != ib.ground() {
        bail!("antichain file must declare the same ground line as the base");
    }
    Ok(family)
}

fn stream_d_base(ctx: &mut Ctx, ib: &ImplicationalBase, max_visited: Option<usize>) -> Result<()> {
    let ground = ib.ground().clone();
    let mut stream = DBaseStream::new(ib, ctx.order())?;
    if let Some(cap) = max_visited {
        stream = stream.with_max_visited(cap);
    }
    ctx.line(&format!("ground: {}", ground.labels().join(" ")))?;
    ctx.out.flush()?;
    let mut count = 0usize;
    for imp in stream {
        let imp = imp?;
        ctx.line(&imp.display(&ground))?;
        ctx.out.flush()?;
        count += 1;
    }
    ctx.note(format!("{count} implications"));
    Ok(())
}

fn run_oracle(ctx: &mut Ctx, command: OracleCommand) -> Result<()> {
    let limit = ctx.oracle_limit();
    match command {
        OracleCommand::Mingen { input, element: label } => {
            let cl = ctx.closure(&input)?;
            let c = element(&cl, &label)?;
            let sets = Oracle::new(&cl, limit)?.minimal_generators(c);
            ctx.print(&sets_as_family(&cl, sets)?)?;
        }
        OracleCommand::Dgen { input, element: label } => {
            let cl = ctx.closure(&input)?;
            let c = element(&cl, &label)?;
            let sets = Oracle::new(&cl, limit)?.d_generators(c);
            ctx.print(&sets_as_family(&cl, sets)?)?;
        }
        OracleCommand::Cdb { input } => {
            let cl = ctx.closure(&input)?;
            ctx.print(&serialize_ib(&Oracle::new(&cl, limit)?.canonical_direct_base()))?;
        }
        OracleCommand::Dbase { input } => {
            let cl = ctx.closure(&input)?;
            ctx.print(&serialize_ib(&Oracle::new(&cl, limit)?.d_base()))?;
        }
        OracleCommand::Relation { input, delta } => {
            let cl = ctx.closure(&input)?;
            let o = Oracle::new(&cl, limit)?;
            let relation = if delta { o.delta_relation() } else { o.d_relation() };
            ctx.print(&serialize_relation(&relation))?;
        }
        OracleCommand::Dual { ib_file, antichain_file } => {
            let ib = ctx.ib(&ib_file)?;
            let b_plus = reground(ctx.family(&antichain_file)?, &ib)?;
            ctx.print(&serialize_set_family(&oracle::brute_dual(&ib, &b_plus, limit)?))?;
        }
    }
    Ok(())
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain()
        .filter_map(|e| e.downcast_ref::<io::Error>())
        .any(|e| e.kind() == io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) if is_broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("dbase: {err:#}");
            ExitCode::from(1)
        }
    }
}
