use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use symres::betti::BettiLabel;
use symres::Limits;

#[derive(Parser, Debug)]
#[command(name = "symres", version, about = "Symmetric powers of finite free resolutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that the input is a complex and report minimality.
    Validate(Common),
    /// Evaluate the grade conditions under which S_jF resolves S_j(M).
    SwCheck(Common),
    /// Assemble S_jF, verify d^2 = 0 and minimality, optionally export it.
    Build(Common),
    /// Betti numbers of S_j from the closed formula.
    Betti(Common),
    /// Upper and lower bounds on the Betti numbers.
    Bounds(Common),
    /// Run validate, sw-check, build, betti and bounds in sequence.
    Report(Common),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::SwCheck(_) => "sw-check",
            Command::Build(_) => "build",
            Command::Betti(_) => "betti",
            Command::Bounds(_) => "bounds",
            Command::Report(_) => "report",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Validate(c)
            | Command::SwCheck(c)
            | Command::Build(c)
            | Command::Betti(c)
            | Command::Bounds(c)
            | Command::Report(c) => c,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Resolution file (JSON).
    pub input: Option<PathBuf>,
    /// Power j, or an inclusive range such as 2..4.
    #[arg(long = "j", value_name = "J")]
    pub j: Option<JRange>,
    /// Betti numbers β_0,...,β_p, used instead of an input file by betti and bounds.
    #[arg(long, value_name = "B0,B1,...", value_delimiter = ',')]
    pub beta: Option<Vec<usize>>,
    /// Label for Betti tables.
    #[arg(long = "as", value_enum, default_value_t = Label::Sym)]
    pub label: Label,
    /// Dimension of the ring used by the feasibility and lower-bound checks.
    #[arg(long, value_name = "N")]
    pub dim: Option<u32>,
    /// Assemble even when the characteristic does not exceed j·p.
    #[arg(long)]
    pub force: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the assembled complex as JSON (one file per j for ranges).
    #[arg(long, value_name = "PATH")]
    pub export: Option<PathBuf>,
    /// Largest number of minors generated for one determinantal ideal.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    pub max_minors: Option<u64>,
    /// Largest number of S-pair reductions in one Gröbner basis computation.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    pub spair_budget: Option<u64>,
    /// Largest total rank of an assembled complex.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    pub rank_cap: Option<u64>,
    /// Directory for cached Gröbner bases.
    #[arg(long, value_name = "DIR")]
    pub gb_cache: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Sym,
    Rees,
    Power,
}

impl From<Label> for BettiLabel {
    fn from(l: Label) -> Self {
        match l {
            Label::Sym => BettiLabel::Sym,
            Label::Rees => BettiLabel::Rees,
            Label::Power => BettiLabel::Power,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// `j` or an inclusive range `a..b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JRange {
    pub start: u32,
    pub end: u32,
}

impl JRange {
    pub fn iter(self) -> impl Iterator<Item = u32> {
        self.start..=self.end
    }
}

impl FromStr for JRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |x: &str| x.trim().parse::<u32>().map_err(|_| format!("invalid power {x:?}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let j = parse(s)?;
                (j, j)
            }
        };
        if start > end {
            return Err(format!("empty range {s}"));
        }
        Ok(JRange { start, end })
    }
}

impl fmt::Display for JRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}

impl Serialize for JRange {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Everything that determines a run, echoed at the top of every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub input: Option<String>,
    pub beta: Option<Vec<usize>>,
    pub j: Option<JRange>,
    #[serde(rename = "as")]
    pub label: Label,
    pub dim: Option<u32>,
    pub force: bool,
    pub format: Format,
    pub export: Option<String>,
    pub guards: Limits,
    pub gb_cache: Option<String>,
}

impl RunConfig {
    pub fn new(command: &Command) -> Self {
        let c = command.common();
        let defaults = Limits::default();
        RunConfig {
            command: command.name().to_string(),
            input: c.input.as_ref().map(|p| p.display().to_string()),
            beta: c.beta.clone(),
            j: c.j,
            label: c.label,
            dim: c.dim,
            force: c.force,
            format: c.format,
            export: c.export.as_ref().map(|p| p.display().to_string()),
            guards: Limits {
                max_minor_count: c.max_minors.unwrap_or(defaults.max_minor_count),
                spair_budget: c.spair_budget.unwrap_or(defaults.spair_budget),
                rank_cap: c.rank_cap.unwrap_or(defaults.rank_cap),
            },
            gb_cache: c.gb_cache.as_ref().map(|p| p.display().to_string()),
        }
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
        let beta = self.beta.as_ref().map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
        writeln!(
            f,
            "run: {} input={} beta={} j={} as={} dim={} force={}",
            self.command,
            opt(&self.input),
            opt(&beta),
            opt(&self.j.map(|j| j.to_string())),
            self.label.to_possible_value().expect("label has a name").get_name(),
            self.dim.map_or_else(|| "variables".into(), |d| d.to_string()),
            self.force,
        )?;
        write!(
            f,
            "guards: max-minors={} spair-budget={} rank-cap={} gb-cache={} export={}",
            self.guards.max_minor_count,
            self.guards.spair_budget,
            self.guards.rank_cap,
            opt(&self.gb_cache),
            opt(&self.export),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_ranges() {
        assert_eq!("3".parse::<JRange>().unwrap(), JRange { start: 3, end: 3 });
        assert_eq!("2..4".parse::<JRange>().unwrap(), JRange { start: 2, end: 4 });
        assert_eq!("2..=4".parse::<JRange>().unwrap(), JRange { start: 2, end: 4 });
        assert!("4..2".parse::<JRange>().is_err());
        assert!("-1".parse::<JRange>().is_err());
        assert_eq!("1..3".parse::<JRange>().unwrap().iter().collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn cli_parses() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
        let cli = Cli::try_parse_from(["symres", "betti", "--beta", "6,7,2", "--j", "2..3", "--as", "rees"]).unwrap();
        let c = cli.command.common();
        assert_eq!(c.beta.as_deref(), Some(&[6, 7, 2][..]));
        assert_eq!(c.label, Label::Rees);
        assert!(Cli::try_parse_from(["symres", "build", "x.json", "--rank-cap", "0"]).is_err());
    }
}
