//! Command-line front-end for the `nilq` library.

use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand};
use nilq::bqg::{DEFAULT_HOM_BUDGET, DEFAULT_SIMPLEX_BUDGET};
use nilq::colimit::DEFAULT_COSET_LIMIT;

pub mod commands;
pub mod render;
pub mod report;

pub use report::AnalysisReport;

/// Default number of placements for the symplectic search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Exit status when a run stops short of an answer.
pub const EXIT_INCONCLUSIVE: i32 = 2;
/// Exit status for bad input.
pub const EXIT_INPUT_ERROR: i32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "nilq",
    version,
    about = "Commutativity colimits, symplectic sequences and classifying-space invariants of finite groups"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, abelian flag, classes and D2 data.
    Info {
        /// Group spec, e.g. cyclic:12, sym:3, extraspecial:2:2, gl:4:2, product:(sym:3),(cyclic:2), perm:(1 2 3);(1 2), table:FILE.
        spec: String,
    },
    /// Certify or search for symplectic sequences.
    Symplectic {
        #[command(subcommand)]
        action: SymplecticAction,
    },
    /// Enumerate the colimit over subgroups of class < q.
    N2 {
        /// Group spec, e.g. cyclic:12, sym:3, extraspecial:2:2, gl:4:2, product:(sym:3),(cyclic:2), perm:(1 2 3);(1 2), table:FILE.
        spec: String,
        #[arg(long, default_value_t = 2)]
        q: usize,
        /// Most live cosets before the enumeration gives up.
        #[arg(long, default_value_t = DEFAULT_COSET_LIMIT)]
        limit: usize,
    },
    /// Decide whether B(2, G) is aspherical, with a certificate.
    Verdict {
        /// Group spec, e.g. cyclic:12, sym:3, extraspecial:2:2, gl:4:2, product:(sym:3),(cyclic:2), perm:(1 2 3);(1 2), table:FILE.
        spec: String,
        /// Placements allowed to the sequence search.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        /// Most live cosets before the enumeration gives up.
        #[arg(long, default_value_t = DEFAULT_COSET_LIMIT)]
        limit: usize,
        /// Seed for sampled lemma checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the transvection sequence of GL(4, 2) instead of searching.
        #[arg(long)]
        seed_gl: bool,
    },
    /// Integral homology of B(q, G) in degrees up to --dim (at most 2).
    Homology {
        /// Group spec, e.g. cyclic:12, sym:3, extraspecial:2:2, gl:4:2, product:(sym:3),(cyclic:2), perm:(1 2 3);(1 2), table:FILE.
        spec: String,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// Largest simplex count allowed in one degree.
        #[arg(long, default_value_t = DEFAULT_SIMPLEX_BUDGET)]
        budget: usize,
        /// Write each boundary matrix to this directory.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Count n-tuples generating subgroups of class < q.
    HomCount {
        /// Group spec, e.g. cyclic:12, sym:3, extraspecial:2:2, gl:4:2, product:(sym:3),(cyclic:2), perm:(1 2 3);(1 2), table:FILE.
        spec: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = DEFAULT_HOM_BUDGET)]
        budget: u64,
    },
    /// Compare the colimit at q with the group when the class is below q.
    Conjecture {
        /// Group spec, e.g. cyclic:12, sym:3, extraspecial:2:2, gl:4:2, product:(sym:3),(cyclic:2), perm:(1 2 3);(1 2), table:FILE.
        spec: String,
        #[arg(long, default_value_t = 3)]
        q: usize,
        /// Most live cosets before the enumeration gives up.
        #[arg(long, default_value_t = DEFAULT_COSET_LIMIT)]
        limit: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SymplecticAction {
    /// Check a given sequence.
    Check {
        /// Group spec, e.g. cyclic:12, sym:3, extraspecial:2:2, gl:4:2, product:(sym:3),(cyclic:2), perm:(1 2 3);(1 2), table:FILE.
        spec: String,
        /// Element ids, comma separated.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<usize>,
        /// Permutations in cycle notation, separated by semicolons.
        #[arg(long, value_delimiter = ';')]
        cycles: Vec<String>,
        #[arg(long)]
        seed_gl: bool,
    },
    /// Depth-first search for a nontrivial sequence.
    Find {
        /// Group spec, e.g. cyclic:12, sym:3, extraspecial:2:2, gl:4:2, product:(sym:3),(cyclic:2), perm:(1 2 3);(1 2), table:FILE.
        spec: String,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long)]
        seed_gl: bool,
    },
}

pub fn run(command: &Command) -> Result<AnalysisReport> {
    match command {
        Command::Info { spec } => commands::info(spec),
        Command::Symplectic { action } => match action {
            SymplecticAction::Check {
                spec,
                ids,
                cycles,
                seed_gl,
            } => commands::symplectic_check(spec, ids, cycles, *seed_gl),
            SymplecticAction::Find {
                spec,
                r,
                budget,
                seed_gl,
            } => commands::symplectic_find(spec, *r, *budget, *seed_gl),
        },
        Command::N2 { spec, q, limit } => commands::n2(spec, *q, *limit),
        Command::Verdict {
            spec,
            budget,
            limit,
            seed,
            seed_gl,
        } => commands::verdict(spec, *budget, *limit, *seed, *seed_gl),
        Command::Homology {
            spec,
            q,
            dim,
            budget,
            dump,
        } => commands::homology(spec, *q, *dim, *budget, dump.as_deref()),
        Command::HomCount { spec, n, q, budget } => commands::hom_count_cmd(spec, *n, *q, *budget),
        Command::Conjecture { spec, q, limit } => commands::conjecture(spec, *q, *limit),
    }
}

/// Formats the report and picks the exit status.
pub fn output(report: &AnalysisReport, json: bool) -> Result<(String, i32)> {
    let text = if json {
        let mut s = serde_json::to_string_pretty(report)?;
        s.push('\n');
        s
    } else {
        render::render(report)
    };
    let code = if report.is_inconclusive() { EXIT_INCONCLUSIVE } else { 0 };
    Ok((text, code))
}

pub fn parse_report(json: &str) -> Result<AnalysisReport> {
    let report: AnalysisReport = serde_json::from_str(json)?;
    anyhow::ensure!(
        report.schema == report::SCHEMA_VERSION,
        "unsupported report schema {}",
        report.schema
    );
    Ok(report)
}
