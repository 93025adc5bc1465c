use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use indom::canon::enumerate_connected;
use indom::constructive::construct_ids;
use indom::exact::{exact_ids, SolverBudget};
use indom::families::{
    gen_figure1, gen_h, gen_special, gen_special_minus_leaf, parse_blocks, random_blocks, SplitMix64,
};
use indom::harness::{verify_corollary, verify_lemma_suite, verify_theorem_bounds, CampaignOptions, CampaignReport};
use indom::io::{parse_dimacs, parse_graph6, write_graph6};
use indom::special::{recognize_special, special_ids, Verdict};
use indom::Graph;

#[derive(Parser)]
#[command(
    name = "indom",
    version,
    about = "Independent domination workbench for bounded-degree graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Degree cap Δ.
    #[arg(long, global = true)]
    delta: Option<usize>,
    /// Largest order for built-in enumeration.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Graph stream (`-` for stdin).
    #[arg(long, global = true)]
    input: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Graph6)]
    format: Format,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 200_000_000)]
    budget_nodes: u64,
    #[arg(long, global = true, default_value_t = 120)]
    budget_secs: u64,
    /// Write JSON output to this file instead of stdout.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Also write a CSV summary to this file.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Treat graphs skipped for budget or input reasons as success.
    #[arg(long, global = true)]
    allow_skipped: bool,
    /// Record wall-clock time in campaign reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Dimacs,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum independent dominating set by branch and bound.
    Exact,
    /// Certified constructive set within the component bound.
    Construct,
    /// Recognize Δ-special graphs and build their optimal sets.
    Special,
    /// Emit members of a named family as graph6.
    Gen {
        /// `h:P,Q`, `figure1:K`, `special:BLOCKS`, `special-minus-leaf:BLOCKS`
        /// or `special-random` (BLOCKS is a comma list of clique-big,
        /// clique-small, odd-cycle:L, trivial).
        #[arg(long)]
        family: String,
        /// Number of graphs for `special-random`.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Emit all connected graphs up to isomorphism as graph6.
    Enumerate {
        #[arg(long, default_value_t = 1)]
        min_n: usize,
    },
    /// Check the connected-graph, special and constructive bounds.
    VerifyTheorems,
    /// Check the bound for graphs without isolated vertices and its equality cases.
    VerifyCorollary,
    /// Check the arithmetic inequality, the removal inequality and edge deletion.
    VerifyLemmas {
        #[arg(long, default_value_t = 200)]
        range: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

impl Common {
    fn delta(&self) -> Result<usize> {
        let d = self.delta.ok_or_else(|| anyhow!("--delta is required"))?;
        if d < 4 {
            bail!("--delta must be at least 4");
        }
        Ok(d)
    }

    fn budget(&self) -> Result<SolverBudget> {
        if self.budget_nodes == 0 || self.budget_secs == 0 {
            bail!("budgets must be positive");
        }
        Ok(SolverBudget::new(
            self.budget_nodes,
            Duration::from_secs(self.budget_secs),
        ))
    }

    fn read_input(&self) -> Result<Vec<Graph>> {
        let path = self.input.as_deref().unwrap_or("-");
        let text = if path == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            s
        } else {
            fs::read_to_string(path).with_context(|| format!("reading {path}"))?
        };
        match self.format {
            Format::Dimacs => Ok(vec![parse_dimacs(&text)?]),
            Format::Graph6 => text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
                .map(|(i, l)| parse_graph6(l.trim()).with_context(|| format!("line {}", i + 1)))
                .collect(),
        }
    }

    /// `--input` if given, else the enumeration up to `--max-n` with degree cap Δ.
    fn campaign_source(&self, delta: usize, min_n: usize) -> Result<(String, Vec<Graph>)> {
        if self.input.is_some() {
            return Ok((format!("input {}", self.input.as_deref().unwrap()), self.read_input()?));
        }
        let max_n = self.max_n.ok_or_else(|| anyhow!("give --input or --max-n"))?;
        let mut graphs = Vec::new();
        for n in min_n..=max_n {
            graphs.extend(enumerate_connected(n, delta)?);
        }
        Ok((format!("enumerate n={min_n}..={max_n}, max degree {delta}"), graphs))
    }

    fn emit_records<T: Serialize>(&self, records: &[T]) -> Result<()> {
        match &self.json {
            Some(path) => fs::write(path, serde_json::to_string_pretty(records)? + "\n")?,
            None => {
                let mut out = BufWriter::new(io::stdout().lock());
                for r in records {
                    writeln!(out, "{}", serde_json::to_string(r)?)?;
                }
            }
        }
        Ok(())
    }

    fn write_csv<T: Serialize>(&self, rows: &[T]) -> Result<()> {
        if let Some(path) = &self.csv {
            let mut w = csv::Writer::from_path(path)?;
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Ok(())
    }

    fn exit(&self, violations: bool, skipped: bool) -> u8 {
        if violations {
            1
        } else if skipped && !self.allow_skipped {
            2
        } else {
            0
        }
    }
}

#[derive(Serialize)]
struct ExactRecord {
    graph6: String,
    n: usize,
    m: usize,
    /// `None` when the budget ran out; `witness` is then only an upper bound.
    i: Option<usize>,
    witness: Vec<usize>,
    nodes: u64,
    ms: u64,
}

#[derive(Serialize)]
struct ExactCsv<'a> {
    graph6: &'a str,
    n: usize,
    m: usize,
    i: Option<usize>,
    nodes: u64,
    ms: u64,
}

#[derive(Serialize)]
struct ConstructRecord {
    graph6: String,
    delta: usize,
    size: usize,
    bound_num: i64,
    bound_den: i64,
    witness: Vec<usize>,
    trace: indom::constructive::ReductionTrace,
    discrepancy: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    discrepancies: Vec<String>,
}

#[derive(Serialize)]
struct ConstructCsv<'a> {
    graph6: &'a str,
    delta: usize,
    size: usize,
    bound_num: i64,
    bound_den: i64,
    steps: usize,
    discrepancy: bool,
}

#[derive(Serialize)]
struct SpecialRecord {
    graph6: String,
    delta: usize,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_size: Option<usize>,
}

#[derive(Serialize)]
struct ReportCsv<'a> {
    kind: &'static str,
    graph6: &'a str,
    claim: &'a str,
    lhs: String,
    rhs: String,
    detail: &'a str,
}

fn run(cli: Cli) -> Result<u8> {
    let c = cli.common;
    if let Some(j) = c.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .context("configuring worker threads")?;
    }
    match cli.command {
        Command::Exact => cmd_exact(&c),
        Command::Construct => cmd_construct(&c),
        Command::Special => cmd_special(&c),
        Command::Gen { family, count } => cmd_gen(&c, &family, count),
        Command::Enumerate { min_n } => cmd_enumerate(&c, min_n),
        Command::VerifyTheorems => {
            let delta = c.delta()?;
            let (source, graphs) = c.campaign_source(delta, 1)?;
            let report = verify_theorem_bounds(delta, &source, &graphs, options(&c)?);
            emit_report(&c, &report)
        }
        Command::VerifyCorollary => {
            let delta = c.delta()?;
            let (source, graphs) = c.campaign_source(delta, 2)?;
            let report = verify_corollary(delta, &source, &graphs, options(&c)?);
            emit_report(&c, &report)
        }
        Command::VerifyLemmas { range } => {
            if range < 5 {
                bail!("--range must be at least 5");
            }
            let report = verify_lemma_suite(range, c.max_n.unwrap_or(7), c.delta.unwrap_or(4), options(&c)?);
            emit_report(&c, &report)
        }
    }
}

fn options(c: &Common) -> Result<CampaignOptions> {
    Ok(CampaignOptions {
        budget: c.budget()?,
        wall_clock: c.timing,
    })
}

fn emit_report(c: &Common, report: &CampaignReport) -> Result<u8> {
    let json = report.to_json() + "\n";
    match &c.json {
        Some(path) => fs::write(path, &json)?,
        None => io::stdout().write_all(json.as_bytes())?,
    }
    let mut rows = Vec::new();
    for v in &report.violations {
        rows.push(ReportCsv {
            kind: "violation",
            graph6: &v.graph6,
            claim: &v.claim,
            lhs: format!("{}/{}", v.lhs.0, v.lhs.1),
            rhs: format!("{}/{}", v.rhs.0, v.rhs.1),
            detail: v.detail.as_deref().unwrap_or(""),
        });
    }
    for s in &report.skipped {
        rows.push(ReportCsv {
            kind: "skipped",
            graph6: &s.graph6,
            claim: "",
            lhs: String::new(),
            rhs: String::new(),
            detail: &s.reason,
        });
    }
    for e in &report.equality_cases {
        rows.push(ReportCsv {
            kind: "equality",
            graph6: &e.graph6,
            claim: &e.claim,
            lhs: String::new(),
            rhs: String::new(),
            detail: if e.tight { "tight" } else { "" },
        });
    }
    c.write_csv(&rows)?;
    eprintln!(
        "{}: {} checked, {} violations, {} skipped",
        report.campaign,
        report.checked,
        report.violations.len(),
        report.skipped.len()
    );
    Ok(c.exit(!report.violations.is_empty(), !report.skipped.is_empty()))
}

fn cmd_exact(c: &Common) -> Result<u8> {
    use rayon::prelude::*;
    let budget = c.budget()?;
    let graphs = c.read_input()?;
    let records: Vec<ExactRecord> = graphs
        .par_iter()
        .map(|g| {
            let start = Instant::now();
            let (i, witness, nodes) = match exact_ids(g, budget) {
                Ok(s) => (Some(s.size()), s.witness.set.to_vec(), s.nodes),
                Err(e) => (None, e.best_upper.set.to_vec(), e.nodes),
            };
            ExactRecord {
                graph6: write_graph6(g),
                n: g.n(),
                m: g.m(),
                i,
                witness,
                nodes,
                ms: start.elapsed().as_millis() as u64,
            }
        })
        .collect();
    c.emit_records(&records)?;
    let rows: Vec<ExactCsv> = records
        .iter()
        .map(|r| ExactCsv {
            graph6: &r.graph6,
            n: r.n,
            m: r.m,
            i: r.i,
            nodes: r.nodes,
            ms: r.ms,
        })
        .collect();
    c.write_csv(&rows)?;
    Ok(c.exit(false, records.iter().any(|r| r.i.is_none())))
}

fn cmd_construct(c: &Common) -> Result<u8> {
    use rayon::prelude::*;
    let delta = c.delta()?;
    let graphs = c.read_input()?;
    let results: Vec<Result<ConstructRecord, String>> = graphs
        .par_iter()
        .map(|g| {
            let g6 = write_graph6(g);
            let out = construct_ids(delta, g).map_err(|e| format!("{g6}: {e}"))?;
            Ok(ConstructRecord {
                graph6: g6,
                delta,
                size: out.size(),
                bound_num: *out.bound.numer(),
                bound_den: *out.bound.denom(),
                witness: out.witness.set.to_vec(),
                discrepancy: out.discrepancy(),
                discrepancies: out.discrepancies,
                trace: out.trace,
            })
        })
        .collect();
    let mut records = Vec::new();
    let mut skipped = false;
    for r in results {
        match r {
            Ok(rec) => records.push(rec),
            Err(msg) => {
                eprintln!("skipped {msg}");
                skipped = true;
            }
        }
    }
    c.emit_records(&records)?;
    let rows: Vec<ConstructCsv> = records
        .iter()
        .map(|r| ConstructCsv {
            graph6: &r.graph6,
            delta,
            size: r.size,
            bound_num: r.bound_num,
            bound_den: r.bound_den,
            steps: r.trace.steps.len(),
            discrepancy: r.discrepancy,
        })
        .collect();
    c.write_csv(&rows)?;
    Ok(c.exit(records.iter().any(|r| r.discrepancy), skipped))
}

fn cmd_special(c: &Common) -> Result<u8> {
    let delta = c.delta()?;
    let graphs = c.read_input()?;
    let mut records = Vec::new();
    let mut failed = false;
    for g in &graphs {
        let cert = recognize_special(delta, g);
        let (verdict, reason, witness_size) = match &cert.verdict {
            Verdict::Special => match special_ids(delta, g, &cert) {
                Ok(w) => ("special", None, Some(w.size())),
                Err(e) => {
                    eprintln!("{}: {e}", write_graph6(g));
                    failed = true;
                    ("special", None, None)
                }
            },
            Verdict::Rejected(r) => ("rejected", Some(r.code()), None),
        };
        records.push(SpecialRecord {
            graph6: write_graph6(g),
            delta,
            verdict,
            reason,
            witness_size,
        });
    }
    c.emit_records(&records)?;
    c.write_csv(&records)?;
    Ok(c.exit(failed, false))
}

fn cmd_gen(c: &Common, family: &str, count: usize) -> Result<u8> {
    let (kind, arg) = family.split_once(':').unwrap_or((family, ""));
    let nums = || -> Result<Vec<usize>> {
        arg.split(',')
            .map(|x| x.trim().parse::<usize>().with_context(|| format!("bad number `{x}`")))
            .collect()
    };
    let graphs = match kind {
        "h" => match nums()?[..] {
            [p, q] if p >= 1 => vec![gen_h(p, q)],
            _ => bail!("expected h:P,Q with P >= 1"),
        },
        "figure1" => match nums()?[..] {
            [k] if k >= 1 => vec![gen_figure1(k)],
            _ => bail!("expected figure1:K with K >= 1"),
        },
        "special" => vec![gen_special(c.delta()?, &parse_blocks(arg)?, c.seed)?],
        "special-minus-leaf" => {
            vec![gen_special_minus_leaf(&gen_special(
                c.delta()?,
                &parse_blocks(arg)?,
                c.seed,
            )?)?]
        }
        "special-random" => {
            let delta = c.delta()?;
            let max_n = c.max_n.unwrap_or(24);
            let mut rng = SplitMix64::new(c.seed);
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                let blocks = random_blocks(delta, &mut rng, max_n);
                out.push(gen_special(delta, &blocks, rng.next_u64())?);
            }
            out
        }
        _ => bail!("unknown family `{kind}`"),
    };
    write_graph6_lines(c, &graphs)?;
    Ok(0)
}

fn cmd_enumerate(c: &Common, min_n: usize) -> Result<u8> {
    let max_n = c.max_n.ok_or_else(|| anyhow!("--max-n is required"))?;
    let mut graphs = Vec::new();
    for n in min_n..=max_n {
        let cap = c.delta.unwrap_or(n.saturating_sub(1));
        graphs.extend(enumerate_connected(n, cap)?);
    }
    write_graph6_lines(c, &graphs)?;
    Ok(0)
}

fn write_graph6_lines(c: &Common, graphs: &[Graph]) -> Result<()> {
    let mut text = String::new();
    for g in graphs {
        text.push_str(&write_graph6(g));
        text.push('\n');
    }
    match &c.json {
        Some(path) => fs::write(
            path,
            serde_json::to_string_pretty(&text.lines().collect::<Vec<_>>())? + "\n",
        )?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
