//! Grade conditions on determinantal ideals deciding exactness of `S_jF•`, and the resulting
//! bounds on feasible powers `j`.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::groebner::{grade, Grade, GroebnerConfig, GroebnerError};
use crate::matrix::{MatrixError, DEFAULT_MAX_MINOR_COUNT};
use crate::resolution::FreeResolution;

#[derive(Debug, Error)]
pub enum SwError {
    #[error("this criterion applies to resolutions of length 1, got length {0}")]
    NotLengthOne(usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

#[derive(Clone, Debug, Default)]
pub struct SwConfig {
    pub groebner: GroebnerConfig,
    /// `None` means [`DEFAULT_MAX_MINOR_COUNT`].
    pub max_minor_count: Option<u64>,
}

impl SwConfig {
    fn minor_cap(&self) -> u64 {
        self.max_minor_count.unwrap_or(DEFAULT_MAX_MINOR_COUNT)
    }
}

/// Grades of `I_t(φ_i)`, computed once per `(i, t)`.
pub struct GradeCache<'a> {
    res: &'a FreeResolution,
    config: &'a SwConfig,
    grades: HashMap<(usize, i64), Grade>,
}

impl<'a> GradeCache<'a> {
    pub fn new(res: &'a FreeResolution, config: &'a SwConfig) -> Self {
        GradeCache { res, config, grades: HashMap::new() }
    }

    pub fn grade(&mut self, i: usize, t: i64) -> Result<Grade, SwError> {
        if let Some(g) = self.grades.get(&(i, t)) {
            return Ok(*g);
        }
        let ideal = self.res.map(i).minors_ideal(t, self.config.minor_cap())?;
        let g = grade(&ideal, &self.config.groebner)?.grade;
        log::debug!("grade I_{t}(φ_{i}) = {g}");
        self.grades.insert((i, t), g);
        Ok(g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SwCondition {
    /// `grade I_{r_i}(φ_i) >= j·i` for even `i`.
    EvenGrade { i: usize, minors: i64 },
    /// `grade I_{r_i - t}(φ_i) >= j(i-1) + 1 + t` for odd `i`.
    OddGrade { i: usize, t: u32, minors: i64 },
    /// `j!` invertible: characteristic 0 or larger than `j`.
    Characteristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measured {
    Grade(Grade),
    Characteristic(u32),
}

impl Serialize for Measured {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Measured::Grade(g) => g.serialize(s),
            Measured::Characteristic(c) => s.serialize_u32(*c),
        }
    }
}

impl fmt::Display for Measured {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measured::Grade(g) => write!(f, "{g}"),
            Measured::Characteristic(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SwVerdict {
    pub condition: SwCondition,
    pub required: u64,
    pub computed: Measured,
    pub pass: bool,
}

impl SwVerdict {
    pub fn describe(&self) -> String {
        match self.condition {
            SwCondition::EvenGrade { i, minors } | SwCondition::OddGrade { i, minors, .. } => {
                format!("grade I_{minors}(φ_{i})")
            }
            SwCondition::Characteristic => "characteristic".to_string(),
        }
    }

    fn requirement(&self) -> String {
        match self.condition {
            SwCondition::Characteristic => format!("0 or > {}", self.required),
            _ => format!(">= {}", self.required),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SwReport {
    pub j: u32,
    pub verdicts: Vec<SwVerdict>,
    pub overall: bool,
}

impl SwReport {
    pub fn failures(&self) -> impl Iterator<Item = &SwVerdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }
}

impl fmt::Display for SwReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<[String; 4]> = self
            .verdicts
            .iter()
            .map(|v| {
                [v.describe(), v.requirement(), v.computed.to_string(), if v.pass { "pass" } else { "FAIL" }.into()]
            })
            .collect();
        let head = ["condition", "required", "computed", "verdict"];
        let widths: Vec<usize> = (0..4)
            .map(|c| rows.iter().map(|r| r[c].chars().count()).chain([head[c].len()]).max().unwrap_or(0))
            .collect();
        let line = |f: &mut fmt::Formatter<'_>, cells: [&str; 4]| -> fmt::Result {
            let padded: Vec<String> =
                cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
            writeln!(f, "{}", padded.join("  ").trim_end())
        };
        line(f, head)?;
        for r in &rows {
            line(f, [&r[0], &r[1], &r[2], &r[3]])?;
        }
        write!(f, "SW_{}: {}", self.j, if self.overall { "holds" } else { "fails" })
    }
}

/// Evaluates every grade and characteristic condition for the power `j`.
pub fn check_swj(res: &FreeResolution, j: u32, config: &SwConfig) -> Result<SwReport, SwError> {
    let mut cache = GradeCache::new(res, config);
    check_swj_cached(res, j, &mut cache)
}

/// As [`check_swj`], reusing grades across calls (e.g. over a range of `j`).
pub fn check_swj_cached(res: &FreeResolution, j: u32, cache: &mut GradeCache<'_>) -> Result<SwReport, SwError> {
    let r = res.defect_ranks();
    let ju = j as u64;
    let mut verdicts = Vec::new();
    for i in 1..=res.length() {
        let ri = r.get(i);
        if i % 2 == 0 {
            let g = cache.grade(i, ri)?;
            let required = ju * i as u64;
            verdicts.push(SwVerdict {
                condition: SwCondition::EvenGrade { i, minors: ri },
                required,
                computed: Measured::Grade(g),
                pass: g.at_least(required),
            });
        } else {
            for t in 0..j {
                let minors = ri - t as i64;
                let g = cache.grade(i, minors)?;
                let required = ju * (i as u64 - 1) + 1 + t as u64;
                verdicts.push(SwVerdict {
                    condition: SwCondition::OddGrade { i, t, minors },
                    required,
                    computed: Measured::Grade(g),
                    pass: g.at_least(required),
                });
            }
        }
    }
    let ch = res.ring().characteristic();
    verdicts.push(SwVerdict {
        condition: SwCondition::Characteristic,
        required: ju,
        computed: Measured::Characteristic(ch),
        pass: ch == 0 || ch as u64 > ju,
    });
    let overall = verdicts.iter().all(|v| v.pass);
    Ok(SwReport { j, verdicts, overall })
}

#[derive(Clone, Debug, Serialize)]
pub struct Pd1Row {
    pub j: u32,
    pub required: u64,
    pub computed: Grade,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Pd1Report {
    pub beta1: usize,
    pub rows: Vec<Pd1Row>,
    pub pass: bool,
}

/// `grade I_j(φ_1) >= β_1 - j + 1` for `j = 1..=min(up_to, β_1)`.
pub fn pd1_grade_criterion(res: &FreeResolution, up_to: u32, config: &SwConfig) -> Result<Pd1Report, SwError> {
    if res.length() != 1 {
        return Err(SwError::NotLengthOne(res.length()));
    }
    let beta1 = res.betti()[1];
    let mut cache = GradeCache::new(res, config);
    let mut rows = Vec::new();
    for j in 1..=up_to.min(beta1 as u32) {
        let computed = cache.grade(1, j as i64)?;
        let required = (beta1 as u64 + 1).saturating_sub(j as u64);
        rows.push(Pd1Row { j, required, computed, pass: computed.at_least(required) });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(Pd1Report { beta1, rows, pass })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibleCase {
    /// When the case applies, e.g. `j >= β_p`.
    pub applies: String,
    /// The implied inequality.
    pub condition: String,
    /// Largest `j` allowed by this case alone; `None` when unbounded, `Some(-1)` when no `j >= 0` qualifies.
    pub max_j: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub p: usize,
    pub dim: u32,
    pub dim_overridden: bool,
    pub cases: Vec<FeasibleCase>,
    /// Largest `j` whose predicted projective dimension fits in `dim`; `None` when every `j` fits.
    pub max_j: Option<u64>,
}

impl FeasibilityReport {
    pub fn allows(&self, j: u32) -> bool {
        self.max_j.is_none_or(|m| j as u64 <= m)
    }
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "p = {}, dim R = {}{}",
            self.p,
            self.dim,
            if self.dim_overridden { " (override)" } else { " (number of variables)" }
        )?;
        for c in &self.cases {
            writeln!(f, "  if {}: {}", c.applies, c.condition)?;
        }
        match self.max_j {
            Some(m) => write!(f, "minimal resolutions possible only for j <= {m}"),
            None => write!(f, "no bound on j"),
        }
    }
}

/// Necessary conditions on `j` for `S_jF•` to be a minimal resolution over a ring of dimension `dim`.
pub fn j_feasible_range_of(betti: &[usize], dim: u32) -> FeasibilityReport {
    let p = betti.len() - 1;
    let bp = betti[p] as i64;
    let d = dim as i64;
    let pi = p as i64;
    let mut cases = Vec::new();
    let max_j;
    if p.is_multiple_of(2) {
        cases.push(FeasibleCase { applies: "p even".into(), condition: format!("j <= {d}/{pi}"), max_j: Some(d / pi) });
        max_j = Some((d / pi) as u64);
    } else if p == 1 {
        cases.push(FeasibleCase {
            applies: "p = 1".into(),
            condition: format!("min(β_1, j) = min({bp}, j) <= {d}"),
            max_j: if bp <= d { None } else { Some(d) },
        });
        max_j = if bp <= d { None } else { Some(d as u64) };
    } else {
        let first = if d - bp < 0 { -1 } else { (d - bp) / (pi - 1) };
        cases.push(FeasibleCase {
            applies: format!("j >= β_p = {bp}"),
            condition: format!("j <= ({d} - {bp})/{}", pi - 1),
            max_j: Some(first),
        });
        cases.push(FeasibleCase {
            applies: format!("j <= β_p = {bp}"),
            condition: format!("j <= {d}/{pi}"),
            max_j: Some(d / pi),
        });
        // predicted pd j(p-1) + min(β_p, j) is increasing in j
        let mut j = 0i64;
        while (j + 1) * (pi - 1) + (j + 1).min(bp) <= d {
            j += 1;
        }
        max_j = Some(j as u64);
    }
    FeasibilityReport { p, dim, dim_overridden: false, cases, max_j }
}

/// As [`j_feasible_range_of`] with `dim` defaulting to the number of variables.
pub fn j_feasible_range(res: &FreeResolution, dim: Option<u32>) -> FeasibilityReport {
    let d = dim.unwrap_or(res.ring().nvars() as u32);
    let mut report = j_feasible_range_of(res.betti(), d);
    report.dim_overridden = dim.is_some();
    report
}
