//! Command-line front end. Actions and supports are printed 1-based.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bench::{run_smoothed_bench, BenchBase, BenchStats, PerturbSpec};
use crate::engine::{
    dominated_outcome_witness, find_sne, verify_k_strong, CoalitionVerdict, KStrongQuery,
    KStrongReport, KStrongVerdict, SneMode, SolveOutcome, SolveReport,
};
use crate::error::Error;
use crate::format::{parse_bimatrix, parse_game, parse_profile};
use crate::game::{BimatrixGame, Game, MixedProfile, NormalForm, PayoffVector, SupportProfile};
use crate::geometry::{classify_line, condition1, condition2, is_strictly_competitive, Condition2};
use crate::nash::{enumerate_pure_nash, nash_on_support, support_profiles, NashWitness};
use crate::pareto::{CertificateKind, EfficiencyVerdict, GridParams};
use crate::rational::{parse_rational, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNDETERMINED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;

#[derive(Debug, Parser)]
#[command(
    name = "sne",
    version,
    about = "Strong Nash equilibria of finite normal-form games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Strong,
    Super,
}

impl From<ModeArg> for SneMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strong => SneMode::Strong,
            ModeArg::Super => SneMode::Super,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search a two-player game for a (super) strong equilibrium.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "strong")]
        mode: ModeArg,
        /// Initial grid step of the fallback domination search.
        #[arg(long, default_value = "1/32")]
        grid: String,
        #[arg(long, default_value_t = 3)]
        max_refine: u32,
        #[arg(long)]
        json: bool,
    },
    /// Check whether a profile is a k-strong (or k-super strong) equilibrium.
    Check {
        file: PathBuf,
        /// Probabilities per player, e.g. "1/2,1/2;1,0".
        #[arg(long)]
        profile: String,
        /// Largest coalition size; defaults to the number of players.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "strong")]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
    },
    /// Outcome-line class, collinearity conditions and strict competitiveness.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Pure equilibria, and optionally one equilibrium per support profile.
    Nash {
        file: PathBuf,
        #[arg(long)]
        enumerate_supports: bool,
    },
    /// Smoothed benchmark over perturbed games.
    Bench {
        /// Square sizes `lo:hi`, or explicit `m1xm2` sizes separated by commas.
        #[arg(long, default_value = "2:8")]
        sizes: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value = "1/10")]
        sigma: String,
        #[arg(long, default_value_t = 1_000_000)]
        grain: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// `random`, `zero`, or a path to a two-player game file.
        #[arg(long, default_value = "random")]
        base: String,
        /// Leave the timing columns empty so the CSV is reproducible.
        #[arg(long)]
        no_timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidNumber(_) | Error::ZeroDenominator(_) => EXIT_PARSE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Solve {
            file,
            mode,
            grid,
            max_refine,
            json,
        } => {
            let game = load_bimatrix(&file)?;
            let resolution = parse_rational(&grid).map_err(Failure::from)?;
            let params = GridParams {
                resolution,
                max_refinements: max_refine,
                ..GridParams::default()
            };
            let report = find_sne(&game, mode.into(), &params)?;
            emit(out, json, &solve_json(&report), &solve_text(&report))?;
            Ok(match report.outcome {
                SolveOutcome::Sne { .. } => EXIT_OK,
                SolveOutcome::NonExistence => EXIT_NEGATIVE,
                SolveOutcome::Undetermined { .. } => EXIT_UNDETERMINED,
            })
        }
        Command::Check {
            file,
            profile,
            k,
            mode,
            json,
        } => {
            let game = load_game(&file)?;
            let profile = parse_profile(&profile).map_err(|e| Failure {
                code: EXIT_PARSE,
                message: e.to_string(),
            })?;
            profile.check_dims(game.dims())?;
            let k = k.unwrap_or(game.num_players());
            let mode: SneMode = mode.into();
            let query = KStrongQuery {
                game: &game,
                profile: &profile,
                k,
                mode: mode.pareto(),
                grid: GridParams::default(),
            };
            let report = verify_k_strong(&query)?;
            let dominated = dominated_outcome_witness(&game, &profile)?;
            emit(
                out,
                json,
                &check_json(&report, k, &dominated),
                &check_text(&report, k, &dominated),
            )?;
            Ok(match report.overall {
                KStrongVerdict::Holds => EXIT_OK,
                KStrongVerdict::Fails => EXIT_NEGATIVE,
                KStrongVerdict::Undetermined => EXIT_UNDETERMINED,
            })
        }
        Command::Classify { file, json } => {
            let game = load_bimatrix(&file)?;
            emit(out, json, &classify_json(&game), &classify_text(&game))?;
            Ok(EXIT_OK)
        }
        Command::Nash {
            file,
            enumerate_supports,
        } => {
            let game = load_game(&file)?;
            nash_command(&game, enumerate_supports, out)
        }
        Command::Bench {
            sizes,
            trials,
            sigma,
            grain,
            seed,
            base,
            no_timing,
            out: path,
        } => {
            let sizes = parse_sizes(&sizes)?;
            let sigma = parse_rational(&sigma).map_err(Failure::from)?;
            let spec = PerturbSpec::new(sigma, grain, seed)?;
            let base = match base.as_str() {
                "random" => BenchBase::Random,
                "zero" => BenchBase::Zero,
                p => BenchBase::Game(load_bimatrix(Path::new(p))?),
            };
            let stats = run_smoothed_bench(&sizes, trials, &spec, &base)?;
            let csv = stats.to_csv(!no_timing);
            match path {
                Some(p) => {
                    std::fs::write(&p, csv).map_err(|e| usage(format!("{}: {e}", p.display())))?
                }
                None => write_all(out, &csv)?,
            }
            report_anomalies(&stats, err);
            Ok(EXIT_OK)
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_game(path: &Path) -> std::result::Result<Game, Failure> {
    Ok(parse_game(&read(path)?)?)
}

fn load_bimatrix(path: &Path) -> std::result::Result<BimatrixGame, Failure> {
    Ok(parse_bimatrix(&read(path)?)?)
}

fn parse_sizes(text: &str) -> std::result::Result<Vec<(usize, usize)>, Failure> {
    let bad = || {
        usage(format!(
            "invalid sizes '{text}': expected lo:hi or m1xm2,..."
        ))
    };
    if let Some((lo, hi)) = text.split_once(':') {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo == 0 || lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).map(|m| (m, m)).collect());
    }
    text.split(',')
        .map(|s| {
            let (a, b) = s.trim().split_once('x').ok_or_else(bad)?;
            let a: usize = a.parse().map_err(|_| bad())?;
            let b: usize = b.parse().map_err(|_| bad())?;
            if a == 0 || b == 0 {
                return Err(bad());
            }
            Ok((a, b))
        })
        .collect()
}

fn write_all(out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| usage(e.to_string()))
}

fn emit(
    out: &mut dyn Write,
    json: bool,
    value: &Value,
    text: &str,
) -> std::result::Result<(), Failure> {
    if json {
        let s = serde_json::to_string_pretty(value).map_err(|e| usage(e.to_string()))?;
        write_all(out, &(s + "\n"))
    } else {
        write_all(out, text)
    }
}

fn report_anomalies(stats: &BenchStats, err: &mut dyn Write) {
    for a in &stats.anomalies {
        let _ = writeln!(
            err,
            "anomaly: size {}x{} trial {} seed {} condition1={} condition2={} mixed_sne={}",
            a.m1, a.m2, a.trial, a.seed, a.condition1, a.condition2, a.mixed_sne
        );
    }
}

fn rationals(values: &[Rational]) -> Value {
    Value::from(values.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn payoff_json(v: &PayoffVector) -> Value {
    rationals(&v.0)
}

fn profile_json(p: &MixedProfile) -> Value {
    Value::from(
        p.strategies()
            .iter()
            .map(|s| rationals(s))
            .collect::<Vec<_>>(),
    )
}

fn support_json(s: &SupportProfile) -> Value {
    json!(s
        .sets()
        .iter()
        .map(|set| set.iter().map(|a| a + 1).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn support_text(s: &SupportProfile) -> String {
    s.sets()
        .iter()
        .map(|set| {
            set.iter()
                .map(|a| (a + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn cell_text(cell: &[usize]) -> String {
    let parts: Vec<String> = cell.iter().map(|a| (a + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

fn certificate_name(kind: CertificateKind) -> &'static str {
    match kind {
        CertificateKind::Hull => "hull",
        CertificateKind::CollinearSlope => "collinear-slope",
        CertificateKind::Exhaustive => "exhaustive",
    }
}

fn verdict_json(v: &EfficiencyVerdict) -> Value {
    match v {
        EfficiencyVerdict::Efficient(kind) => {
            json!({ "verdict": "Efficient", "certificate": certificate_name(*kind) })
        }
        EfficiencyVerdict::Dominated { witness, values } => json!({
            "verdict": "Dominated",
            "witness": profile_json(witness),
            "values": payoff_json(values),
        }),
        EfficiencyVerdict::Undetermined {
            best_margin,
            resolution,
        } => json!({
            "verdict": "Undetermined",
            "best_margin": best_margin.to_string(),
            "resolution": resolution.to_string(),
        }),
    }
}

fn verdict_text(v: &EfficiencyVerdict) -> String {
    match v {
        EfficiencyVerdict::Efficient(kind) => format!("Efficient ({})", certificate_name(*kind)),
        EfficiencyVerdict::Dominated { witness, values } => {
            format!("Dominated by {witness} with values {values}")
        }
        EfficiencyVerdict::Undetermined {
            best_margin,
            resolution,
        } => {
            format!("Undetermined (margin {best_margin} at resolution {resolution})")
        }
    }
}

fn coalitions_json(list: &[CoalitionVerdict]) -> Value {
    Value::from(
        list.iter()
            .map(|c| {
                let mut v = verdict_json(&c.verdict);
                v["coalition"] = json!(c
                    .coalition
                    .members()
                    .iter()
                    .map(|m| m + 1)
                    .collect::<Vec<_>>());
                v
            })
            .collect::<Vec<_>>(),
    )
}

fn witness_json(w: &NashWitness) -> Value {
    json!({
        "profile": profile_json(&w.profile),
        "values": payoff_json(&w.values),
        "support": support_json(&w.support),
    })
}

fn solve_json(r: &SolveReport) -> Value {
    let d = &r.diagnostics;
    let diagnostics = json!({
        "pure_profiles_scanned": d.pure_profiles_scanned,
        "pure_nash_found": d.pure_nash_found,
        "condition1_hit": d.condition1_hit(),
        "condition2_hit": d.condition2_hit(),
        "mixed_branch_run": d.mixed_branch_run,
        "supports_enumerated": d.supports_enumerated,
        "elapsed_us": d.elapsed.as_micros() as u64,
    });
    match &r.outcome {
        SolveOutcome::Sne {
            witness,
            efficiency,
        } => json!({
            "outcome": "Sne",
            "witness": witness_json(witness),
            "values": payoff_json(&witness.values),
            "coalitions": coalitions_json(efficiency),
            "diagnostics": diagnostics,
        }),
        SolveOutcome::NonExistence => {
            json!({ "outcome": "NonExistence", "diagnostics": diagnostics })
        }
        SolveOutcome::Undetermined { candidates } => json!({
            "outcome": "Undetermined",
            "candidates": candidates
                .iter()
                .map(|(w, v)| json!({ "witness": witness_json(w), "grand_coalition": verdict_json(v) }))
                .collect::<Vec<_>>(),
            "diagnostics": diagnostics,
        }),
    }
}

fn solve_text(r: &SolveReport) -> String {
    let mut s = String::new();
    match &r.outcome {
        SolveOutcome::Sne {
            witness,
            efficiency,
        } => {
            s += "Sne\n";
            s += &format!("profile: {}\n", witness.profile);
            s += &format!("values: {}\n", witness.values);
            s += &format!("support: {}\n", support_text(&witness.support));
            for c in efficiency {
                s += &format!("coalition {}: {}\n", c.coalition, verdict_text(&c.verdict));
            }
        }
        SolveOutcome::NonExistence => s += "NonExistence\n",
        SolveOutcome::Undetermined { candidates } => {
            s += "Undetermined\n";
            for (w, v) in candidates {
                s += &format!(
                    "candidate {} values {}: {}\n",
                    w.profile,
                    w.values,
                    verdict_text(v)
                );
            }
        }
    }
    let d = &r.diagnostics;
    s += &format!(
        "pure profiles scanned: {}, pure equilibria: {}, condition1: {}, condition2: {}, mixed branch: {}, supports enumerated: {}\n",
        d.pure_profiles_scanned,
        d.pure_nash_found,
        d.condition1_hit(),
        d.condition2_hit(),
        d.mixed_branch_run,
        d.supports_enumerated
    );
    s
}

fn overall_name(v: KStrongVerdict) -> &'static str {
    match v {
        KStrongVerdict::Holds => "Efficient",
        KStrongVerdict::Fails => "Fails",
        KStrongVerdict::Undetermined => "Undetermined",
    }
}

fn check_json(
    r: &KStrongReport,
    k: usize,
    dominated: &Option<(Vec<usize>, PayoffVector)>,
) -> Value {
    json!({
        "outcome": overall_name(r.overall),
        "k": k,
        "is_nash": r.is_nash,
        "values": payoff_json(&r.values),
        "coalitions": coalitions_json(&r.coalitions),
        "dominated_outcome": dominated.as_ref().map(|(cell, v)| json!({
            "actions": cell.iter().map(|a| a + 1).collect::<Vec<_>>(),
            "payoffs": payoff_json(v),
        })),
    })
}

fn check_text(
    r: &KStrongReport,
    k: usize,
    dominated: &Option<(Vec<usize>, PayoffVector)>,
) -> String {
    let mut s = format!("{} (k = {k})\n", overall_name(r.overall));
    s += &format!("nash: {}\nvalues: {}\n", r.is_nash, r.values);
    for c in &r.coalitions {
        s += &format!("coalition {}: {}\n", c.coalition, verdict_text(&c.verdict));
    }
    if let Some((cell, v)) = dominated {
        s += &format!(
            "dominated outcome in support: {} with payoffs {}\n",
            cell_text(cell),
            v
        );
    }
    s
}

fn condition2_json(c: &Option<Condition2>) -> Value {
    match c {
        None => Value::Null,
        Some(Condition2::Vertical { col, rows }) => {
            json!({ "kind": "vertical", "col": col + 1, "rows": [rows[0] + 1, rows[1] + 1] })
        }
        Some(Condition2::Horizontal { row, cols }) => {
            json!({ "kind": "horizontal", "row": row + 1, "cols": [cols[0] + 1, cols[1] + 1] })
        }
    }
}

fn classify_json(g: &BimatrixGame) -> Value {
    let line = classify_line(g);
    json!({
        "line": line.to_string(),
        "collinear": line.is_collinear(),
        "through_origin": line.through_origin,
        "condition1": condition1(g).map(|b| json!({
            "rows": [b.rows[0] + 1, b.rows[1] + 1],
            "cols": [b.cols[0] + 1, b.cols[1] + 1],
        })),
        "condition2": condition2_json(&condition2(g)),
        "strictly_competitive": is_strictly_competitive(g),
    })
}

fn classify_text(g: &BimatrixGame) -> String {
    let mut s = format!("line: {}\n", classify_line(g));
    s += &match condition1(g) {
        Some(b) => format!(
            "condition 1: rows {},{} cols {},{}\n",
            b.rows[0] + 1,
            b.rows[1] + 1,
            b.cols[0] + 1,
            b.cols[1] + 1
        ),
        None => "condition 1: none\n".to_string(),
    };
    s += &match condition2(g) {
        Some(Condition2::Vertical { col, rows }) => {
            format!(
                "condition 2: column {} rows {},{}\n",
                col + 1,
                rows[0] + 1,
                rows[1] + 1
            )
        }
        Some(Condition2::Horizontal { row, cols }) => {
            format!(
                "condition 2: row {} cols {},{}\n",
                row + 1,
                cols[0] + 1,
                cols[1] + 1
            )
        }
        None => "condition 2: none\n".to_string(),
    };
    s += &format!("strictly competitive: {}\n", is_strictly_competitive(g));
    s
}

fn nash_command(game: &Game, enumerate_supports: bool, out: &mut dyn Write) -> Outcome {
    let mut s = String::new();
    let pure = enumerate_pure_nash(game);
    s += &format!("pure equilibria: {}\n", pure.len());
    for cell in &pure {
        s += &format!("  {}\n", cell_text(cell));
    }
    if enumerate_supports {
        let Game::Bimatrix(g) = game else {
            return Err(usage("--enumerate-supports needs a two-player game"));
        };
        s += "supports:\n";
        for support in support_profiles(&[g.rows(), g.cols()]) {
            if let Some(w) = nash_on_support(g, &support)? {
                s += &format!(
                    "  {}: {} values {}\n",
                    support_text(&support),
                    w.profile,
                    w.values
                );
            }
        }
    }
    write_all(out, &s)?;
    Ok(EXIT_OK)
}
