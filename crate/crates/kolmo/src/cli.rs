use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kolmo_core::weyl::Generator;
use kolmo_core::Rational;

#[derive(Debug, Parser)]
#[command(
    name = "kolmo",
    version,
    about = "Exact algebra of recursion operators and solutions of u_t + x u_y = u_xx"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Wall-clock budget for long-running subcommands.
    #[arg(long, global = true, value_name = "S")]
    pub budget_seconds: Option<f64>,
    /// Include elapsed time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    Ord,
    Deg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenArg {
    #[value(name = "P0")]
    P0,
    #[value(name = "P1")]
    P1,
    #[value(name = "P2")]
    P2,
    #[value(name = "P3")]
    P3,
}

impl From<GenArg> for Generator {
    fn from(g: GenArg) -> Self {
        match g {
            GenArg::P0 => Generator::P0,
            GenArg::P1 => Generator::P1,
            GenArg::P2 => Generator::P2,
            GenArg::P3 => Generator::P3,
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|_| format!("not a rational number: {s:?}"))
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    #[arg(long, default_value = "1", value_parser = parse_rational, allow_hyphen_values = true)]
    pub alpha: Rational,
    #[arg(long, default_value = "0", value_parser = parse_rational, allow_hyphen_values = true)]
    pub beta: Rational,
    #[arg(long, default_value = "1", value_parser = parse_rational, allow_hyphen_values = true)]
    pub sigma: Rational,
    #[arg(long, default_value = "0", value_parser = parse_rational, allow_hyphen_values = true)]
    pub l0: Rational,
    #[arg(long, default_value = "0", value_parser = parse_rational, allow_hyphen_values = true)]
    pub l1: Rational,
    #[arg(long, default_value = "0", value_parser = parse_rational, allow_hyphen_values = true)]
    pub l2: Rational,
    #[arg(long, default_value = "0", value_parser = parse_rational, allow_hyphen_values = true)]
    pub l3: Rational,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the presentation relations and the structure constants.
    Relations,
    /// Normal form of an operator expression.
    NormalForm { expr: String },
    /// Differential-operator realization of an operator expression.
    Realize { expr: String },
    /// Dimension table of the order filtration.
    Dims {
        #[arg(long)]
        max_n: u32,
    },
    /// List the order basis or the degree basis.
    Basis {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "ord")]
        kind: BasisKind,
    },
    /// Polynomial solutions (P3)^k (P2)^l 1 with k + l <= n.
    Polysols {
        #[arg(long)]
        n: u32,
    },
    /// Apply an operator to a solution.
    Apply { op: String, solution: String },
    /// Transform a solution by a point symmetry with gamma = 0.
    GroupAct {
        #[command(flatten)]
        params: Box<GroupArgs>,
        #[arg(allow_hyphen_values = true)]
        solution: String,
    },
    /// Residual of a candidate solution.
    Check {
        #[arg(allow_hyphen_values = true)]
        solution: String,
    },
    /// The Casimir element, its realization and its centrality.
    Casimir,
    /// Split an element by grading weight.
    Grading { expr: String },
    /// Check that two elements commute.
    CentralizerCheck { a: String, b: String },
    /// Check ker A^r = sum of B^i ker A on polynomial solutions.
    KernelDecomp {
        #[arg(long, value_enum)]
        a: GenArg,
        #[arg(long, value_enum)]
        b: GenArg,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
    },
    /// Solve the determining system for characteristics of order n.
    SolveDetermining {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree_cap: Option<u32>,
    },
    /// Lie closure of a set of elements under commutators.
    LieClosure {
        #[arg(long)]
        degree_cap: u32,
        #[arg(long)]
        iter_cap: usize,
        #[arg(long)]
        paper_generators: bool,
        /// Generators as operator expressions.
        exprs: Vec<String>,
    },
}
