use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};
use symres::betti::{beh_check, betti_table, bound_report, BettiLabel, BettiTable};
use symres::groebner::{GroebnerCache, GroebnerError};
use symres::matrix::MatrixError;
use symres::resolution::{FreeResolution, ResolutionError};
use symres::swcheck::{check_swj_cached, j_feasible_range, GradeCache, SwConfig, SwError};
use symres::sympow::{assemble_complex, expected_length, verify_dd_zero, verify_minimal, SymPowError, Witness};
use symres::Limits;

use crate::args::{Command, Common, JRange, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Guard,
}

/// One block of output: a rendered text body and the same content as structured data.
#[derive(Debug, Serialize)]
pub struct Section {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u32>,
    pub status: Status,
    #[serde(skip)]
    pub text: String,
    pub result: Value,
}

impl Section {
    fn new(command: &'static str, j: Option<u32>, status: Status, text: String, result: Value) -> Self {
        Section { command, j, status, text, result }
    }
}

/// An input problem that stops the run (exit code 2).
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

pub fn exit_code(sections: &[Section]) -> i32 {
    match sections.iter().map(|s| s.status).max() {
        Some(Status::Guard) => 3,
        Some(Status::Fail) => 1,
        _ => 0,
    }
}

enum Failure {
    Guard(String),
    Input(InputError),
}

fn is_guard_matrix(e: &MatrixError) -> bool {
    matches!(e, MatrixError::TooManyMinors { .. })
}

fn sw_failure(e: SwError) -> Failure {
    match &e {
        SwError::Matrix(m) if is_guard_matrix(m) => Failure::Guard(e.to_string()),
        SwError::Groebner(GroebnerError::BudgetExceeded { .. }) => Failure::Guard(e.to_string()),
        _ => Failure::Input(InputError(e.to_string())),
    }
}

fn sympow_failure(e: SymPowError) -> Failure {
    match &e {
        SymPowError::RankCap { .. } => Failure::Guard(e.to_string()),
        SymPowError::Matrix(m) if is_guard_matrix(m) => Failure::Guard(e.to_string()),
        _ => Failure::Input(InputError(e.to_string())),
    }
}

fn guard_section(command: &'static str, j: Option<u32>, message: String) -> Section {
    let text = format!("resource guard: {message}");
    Section::new(command, j, Status::Guard, text, json!({ "guard": message }))
}

fn tuple(values: impl IntoIterator<Item = impl ToString>) -> String {
    let parts: Vec<String> = values.into_iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn spaced(values: impl IntoIterator<Item = impl ToString>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn witness_lines(out: &mut String, witnesses: &[Witness]) {
    for w in witnesses {
        let _ = writeln!(
            out,
            "  degree {}: entry ({}, {}) [{} <- {}] = {}",
            w.t, w.row, w.col, w.row_block, w.col_block, w.value
        );
    }
}

/// State shared by the commands of one run.
pub struct Run {
    pub config: RunConfig,
    common: Common,
    limits: Limits,
    sw: SwConfig,
}

impl Run {
    pub fn new(command: &Command) -> Self {
        let config = RunConfig::new(command);
        let common = command.common().clone();
        let limits = config.guards;
        let sw = limits.sw_config(common.gb_cache.as_ref().map(GroebnerCache::new));
        Run { config, common, limits, sw }
    }

    fn j_range(&self) -> Result<JRange, InputError> {
        self.common.j.ok_or_else(|| InputError(format!("--j is required for {}", self.config.command)))
    }

    fn input_path(&self) -> Result<&Path, InputError> {
        self.common
            .input
            .as_deref()
            .ok_or_else(|| InputError(format!("{} needs a resolution file", self.config.command)))
    }

    /// Loads the input; a document that is not a complex, or falsely claims minimality, becomes
    /// a failed validation section instead of an input error.
    fn load(&self, sections: &mut Vec<Section>) -> Result<Option<FreeResolution>, InputError> {
        match FreeResolution::load(self.input_path()?) {
            Ok(res) => Ok(Some(res)),
            Err(e @ (ResolutionError::NotComplex { .. } | ResolutionError::NotMinimal { .. })) => {
                let kind = if matches!(e, ResolutionError::NotComplex { .. }) { "complex" } else { "minimal" };
                let text = format!("{kind}: FAIL\n  {e}");
                sections.push(Section::new(
                    "validate",
                    None,
                    Status::Fail,
                    text,
                    json!({ "valid": false, "error": e.to_string() }),
                ));
                Ok(None)
            }
            Err(e) => Err(e.into()),
        }
    }

    pub fn execute(&self, command: &Command) -> Result<Vec<Section>, InputError> {
        let mut sections = Vec::new();
        let needs_file = !matches!(command, Command::Betti(_) | Command::Bounds(_)) || self.common.beta.is_none();
        if matches!(command, Command::Betti(_) | Command::Bounds(_))
            && self.common.beta.is_some()
            && self.common.input.is_some()
        {
            return Err(InputError("give either a resolution file or --beta, not both".into()));
        }
        if !matches!(command, Command::Validate(_)) {
            self.j_range()?;
        }
        let res = if needs_file {
            match self.load(&mut sections)? {
                Some(res) => Some(res),
                None => return Ok(sections),
            }
        } else {
            None
        };
        match command {
            Command::Validate(_) => sections.push(validate(res.as_ref().expect("file loaded"))),
            Command::SwCheck(_) => self.sw_check(res.as_ref().expect("file loaded"), &mut sections)?,
            Command::Build(_) => self.build(res.as_ref().expect("file loaded"), &mut sections)?,
            Command::Betti(_) => sections.push(self.betti(res.as_ref())?),
            Command::Bounds(_) => self.bounds(res.as_ref(), &mut sections)?,
            Command::Report(_) => {
                let res = res.as_ref().expect("file loaded");
                sections.push(validate(res));
                self.sw_check(res, &mut sections)?;
                self.build(res, &mut sections)?;
                sections.push(self.betti(Some(res))?);
                self.bounds(Some(res), &mut sections)?;
            }
        }
        Ok(sections)
    }

    fn sw_check(&self, res: &FreeResolution, sections: &mut Vec<Section>) -> Result<(), InputError> {
        let mut cache = GradeCache::new(res, &self.sw);
        for j in self.j_range()?.iter() {
            match check_swj_cached(res, j, &mut cache) {
                Ok(report) => {
                    let status = if report.overall { Status::Ok } else { Status::Fail };
                    sections.push(Section::new("sw-check", Some(j), status, report.to_string(), json!(report)));
                }
                Err(e) => match sw_failure(e) {
                    Failure::Guard(m) => sections.push(guard_section("sw-check", Some(j), m)),
                    Failure::Input(e) => return Err(e),
                },
            }
        }
        let range = j_feasible_range(res, self.common.dim);
        sections.push(Section::new("feasibility", None, Status::Ok, range.to_string(), json!(range)));
        Ok(())
    }

    fn build(&self, res: &FreeResolution, sections: &mut Vec<Section>) -> Result<(), InputError> {
        let range = self.j_range()?;
        let mut cache = GradeCache::new(res, &self.sw);
        for j in range.iter() {
            let complex = match assemble_complex(res, j, &self.limits.assemble_options(self.common.force)) {
                Ok(c) => c,
                Err(e) => match sympow_failure(e) {
                    Failure::Guard(m) => {
                        sections.push(guard_section("build", Some(j), m));
                        continue;
                    }
                    Failure::Input(e) => return Err(e),
                },
            };
            let dd = verify_dd_zero(&complex);
            let minimal = verify_minimal(&complex);
            let predicted = expected_length(res, j);
            let mut status = Status::Ok;
            let mut text = String::new();
            let _ = writeln!(text, "ranks: {}", spaced(complex.ranks()));
            let _ = writeln!(text, "length: predicted {predicted}, realized {}", complex.length());
            let _ = writeln!(text, "d^2 = 0: {}", if dd.pass { "OK" } else { "FAIL" });
            witness_lines(&mut text, &dd.witnesses);
            let _ = writeln!(text, "minimal: {}", if minimal.pass { "OK" } else { "FAIL" });
            witness_lines(&mut text, &minimal.witnesses);
            if !dd.pass || (res.entries_in_maximal_ideal() && !minimal.pass) {
                status = Status::Fail;
            }
            for w in complex.warnings() {
                let _ = writeln!(text, "warning: {w}");
            }
            let sw = match check_swj_cached(res, j, &mut cache) {
                Ok(report) => {
                    if report.overall {
                        let _ = writeln!(text, "SW_{j} holds: the complex is a minimal resolution of S_{j}(M)");
                    } else {
                        let failed: Vec<String> = report
                            .failures()
                            .map(|v| format!("{} = {} < {}", v.describe(), v.computed, v.required))
                            .collect();
                        let _ =
                            writeln!(text, "warning: SW_{j} fails ({}); exactness is not claimed", failed.join(", "));
                    }
                    json!({ "holds": report.overall })
                }
                Err(e) => match sw_failure(e) {
                    Failure::Guard(m) => {
                        let _ = writeln!(text, "SW_{j} not evaluated: {m}");
                        status = status.max(Status::Guard);
                        json!({ "guard": m })
                    }
                    Failure::Input(e) => return Err(e),
                },
            };
            let exported = match &self.common.export {
                Some(path) => {
                    let target = export_path(path, j, range);
                    std::fs::write(&target, complex.to_json(res))
                        .map_err(|e| InputError(format!("cannot write {}: {e}", target.display())))?;
                    let _ = writeln!(text, "exported: {}", target.display());
                    Some(target.display().to_string())
                }
                None => None,
            };
            let result = json!({
                "ranks": complex.ranks(),
                "blocks": complex.components(),
                "predicted_length": predicted,
                "realized_length": complex.length(),
                "dd_zero": dd,
                "minimal": minimal,
                "warnings": complex.warnings(),
                "sw": sw,
                "export": exported,
            });
            sections.push(Section::new("build", Some(j), status, text.trim_end().to_string(), result));
        }
        Ok(())
    }

    fn beta_of(&self, res: Option<&FreeResolution>) -> Result<Vec<usize>, InputError> {
        match (res, &self.common.beta) {
            (Some(r), _) => Ok(r.betti().to_vec()),
            (None, Some(b)) => Ok(b.clone()),
            (None, None) => Err(InputError("give a resolution file or --beta".into())),
        }
    }

    fn tables(&self, beta: &[usize]) -> Result<Vec<BettiTable>, InputError> {
        let label: BettiLabel = self.common.label.into();
        self.j_range()?.iter().map(|j| betti_table(beta, j, label).map_err(InputError::from)).collect()
    }

    fn betti(&self, res: Option<&FreeResolution>) -> Result<Section, InputError> {
        let beta = self.beta_of(res)?;
        let tables = self.tables(&beta)?;
        let mut text = render_tables(&tables);
        let mut stamps = Vec::new();
        let mut cache = res.map(|r| GradeCache::new(r, &self.sw));
        for table in &tables {
            let j = table.j;
            let (stamp, minimal) = match (res, cache.as_mut()) {
                (Some(r), Some(cache)) => match check_swj_cached(r, j, cache) {
                    Ok(report) if report.overall => (format!("minimal (SW_{j} holds)"), true),
                    Ok(_) => (format!("complex ranks only (SW_{j} fails)"), false),
                    Err(e) => match sw_failure(e) {
                        Failure::Guard(m) => (format!("complex ranks only (SW_{j} not evaluated: {m})"), false),
                        Failure::Input(e) => return Err(e),
                    },
                },
                _ => ("complex ranks only (no resolution given)".to_string(), false),
            };
            let _ = writeln!(text, "{}: pd {}, {stamp}", table.label.heading(j), table.pd);
            let references: Vec<_> =
                res.map(|r| r.reference_betti()).unwrap_or_default().iter().filter(|rb| rb.j == j).collect();
            for rb in &references {
                let _ = write!(text, "  reference for j={j}: {}", spaced(&rb.values));
                match &rb.note {
                    Some(note) => {
                        let _ = writeln!(text, " ({note})");
                    }
                    None => text.push('\n'),
                }
            }
            stamps
                .push(json!({ "j": j, "table": table, "minimal": minimal, "stamp": stamp, "references": references }));
        }
        let result = json!({ "beta": beta, "tables": stamps });
        Ok(Section::new("betti", None, Status::Ok, text.trim_end().to_string(), result))
    }

    fn bounds(&self, res: Option<&FreeResolution>, sections: &mut Vec<Section>) -> Result<(), InputError> {
        let beta = self.beta_of(res)?;
        for table in self.tables(&beta)? {
            let report = bound_report(&beta, table.j, &table.values);
            let mut text = render_bounds(
                &report.rows.iter().map(|r| (r.t, &r.lower, &r.value, &r.upper, r.pass)).collect::<Vec<_>>(),
            );
            let _ = write!(text, "bounds: {}", if report.pass { "hold" } else { "VIOLATED" });
            let mut result = json!({ "report": report });
            if let Some(d) = self.common.dim {
                let beh = beh_check(&table.values, d, beta[1]);
                let _ = write!(
                    text,
                    "\nlength-module lower bounds with d = {d} (hypothesis β_1 >= d {}): {}, total {} vs 2^{d} = {}",
                    if beh.hypothesis_holds { "holds" } else { "does not hold" },
                    if beh.pass { "hold" } else { "do not hold" },
                    beh.total,
                    beh.total_bound
                );
                result["length_module"] = json!(beh);
            }
            let status = if report.pass { Status::Ok } else { Status::Fail };
            sections.push(Section::new("bounds", Some(table.j), status, text, result));
        }
        Ok(())
    }
}

fn validate(res: &FreeResolution) -> Section {
    let betti = res.betti();
    let witness = res.maps().iter().enumerate().find_map(|(k, m)| {
        m.entries()
            .iter()
            .position(|e| !e.constant_term().is_zero())
            .map(|pos| (k + 1, pos / m.cols() + 1, pos % m.cols() + 1, m.entries()[pos].to_string()))
    });
    let minimal = match &witness {
        None => "minimal".to_string(),
        Some((i, r, c, v)) => format!("not minimal (φ_{i} entry ({r}, {c}) = {v})"),
    };
    let mut text = String::new();
    if let Some(d) = res.description() {
        let _ = writeln!(text, "{d}");
    }
    let ranks = res.defect_ranks();
    let _ = writeln!(text, "β = {}, p = {}, {minimal}, complex: OK", tuple(betti), res.length());
    let _ = write!(text, "r = {} with generic rank r_0 = {}", tuple(&ranks.r), ranks.r0);
    let result = json!({
        "valid": true,
        "betti": betti,
        "p": res.length(),
        "minimal": witness.is_none(),
        "complex": true,
        "defect_ranks": ranks.r,
        "generic_rank": ranks.r0,
    });
    Section::new("validate", None, Status::Ok, text, result)
}

/// `out.json` for a single power; `out.j2.json`, `out.j3.json`, ... for a range.
fn export_path(path: &Path, j: u32, range: JRange) -> PathBuf {
    if range.start == range.end {
        return path.to_path_buf();
    }
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.j{j}.{}", ext.to_string_lossy()),
        None => format!("{stem}.j{j}"),
    };
    path.with_file_name(name)
}

/// Rows `t`, one column per power.
fn render_tables(tables: &[BettiTable]) -> String {
    let heads: Vec<String> = tables.iter().map(|t| t.label.heading(t.j)).collect();
    let depth = tables.iter().map(|t| t.values.len()).max().unwrap_or(0);
    let widths: Vec<usize> = tables
        .iter()
        .zip(&heads)
        .map(|(t, h)| t.values.iter().map(|v| v.to_string().len()).chain([h.chars().count()]).max().unwrap_or(1))
        .collect();
    let mut out = String::new();
    let head: Vec<String> = heads.iter().zip(&widths).map(|(h, w)| format!("{h:>w$}")).collect();
    let _ = writeln!(out, "  t | {}", head.join("  "));
    let _ = writeln!(out, "{}", "-".repeat(6 + widths.iter().sum::<usize>() + 2 * widths.len().saturating_sub(1)));
    for t in 0..depth {
        let cells: Vec<String> = tables
            .iter()
            .zip(&widths)
            .map(|(table, w)| format!("{:>w$}", table.values.get(t).map(ToString::to_string).unwrap_or_default()))
            .collect();
        let _ = writeln!(out, "{t:>3} | {}", cells.join("  ").trim_end());
    }
    out
}

fn render_bounds(rows: &[(u32, &Option<BigUint>, &BigUint, &BigUint, bool)]) -> String {
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|(t, lower, value, upper, pass)| {
            [
                t.to_string(),
                lower.as_ref().map_or_else(|| "n/a".into(), ToString::to_string),
                value.to_string(),
                upper.to_string(),
                if *pass { "ok" } else { "FAIL" }.into(),
            ]
        })
        .collect();
    let head = ["t", "lower", "value", "upper", "verdict"];
    let widths: Vec<usize> =
        (0..5).map(|c| cells.iter().map(|r| r[c].len()).chain([head[c].len()]).max().unwrap_or(0)).collect();
    let mut out = String::new();
    let line = |out: &mut String, row: [&str; 5]| {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  "));
    };
    line(&mut out, head);
    for r in &cells {
        line(&mut out, [&r[0], &r[1], &r[2], &r[3], &r[4]]);
    }
    out
}
