//! Scenario files: TOML or JSON documents that map onto [`Scenario`].
//!
//! Parsing goes through a `serde_json::Value` so both formats share one
//! validator, and every problem is reported as a [`Diagnostic`] carrying the
//! dotted path of the offending field.

use std::fmt;
use std::path::Path;

use serde_json::{Map, Value};
use taskgrowth::{
    AutomationCost, ComputePath, Error as ModelError, Family, GrowthRates, ProductionSpec,
    Scenario, TaskPair,
};

use crate::error::CliError;

/// Token for an infinite automation cost.
pub const INFINITY_TOKEN: &str = "inf";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub reason: String,
}

impl Diagnostic {
    fn new(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Diagnostic {
            path: path.into(),
            reason: reason.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.reason)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationWindow {
    pub t_start: f64,
    pub t_end: f64,
    pub t_step: f64,
}

impl SimulationWindow {
    /// Checks the window; `prefix` names the source in diagnostics.
    pub fn validate(&self, prefix: &str) -> Vec<Diagnostic> {
        let mut d = Vec::new();
        if !(self.t_start >= 0.0) {
            d.push(Diagnostic::new(format!("{prefix}t_start"), "must be >= 0"));
        }
        if !(self.t_end >= self.t_start) {
            d.push(Diagnostic::new(
                format!("{prefix}t_end"),
                "must be >= t_start",
            ));
        }
        if !(self.t_step > 0.0) {
            d.push(Diagnostic::new(format!("{prefix}t_step"), "must be > 0"));
        }
        d
    }

    /// [`validate`](Self::validate) with diagnostics named after the
    /// command-line flags.
    pub fn check_flags(&self) -> Result<(), CliError> {
        let problems: Vec<Diagnostic> = self
            .validate("--")
            .into_iter()
            .map(|d| Diagnostic::new(d.path.replace('_', "-"), d.reason))
            .collect();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(CliError::Validation(problems))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Number,
    Cost,
}

/// Numeric fields that may be overridden by path, with whether they are
/// magnitudes (swept on a log scale).
pub const NUMERIC_FIELDS: &[(&str, bool)] = &[
    ("production.beta", false),
    ("production.rho", false),
    ("production.A0", true),
    ("production.AL0", true),
    ("production.g_A", false),
    ("production.g_AL", false),
    ("tasks.alpha_c", true),
    ("tasks.alpha_p", true),
    ("labor.L0", true),
    ("labor.g_L", false),
    ("compute.Q0", true),
    ("compute.g", false),
    ("compute.Qmax", true),
    ("compute.rate", false),
    ("simulation.t_start", false),
    ("simulation.t_end", false),
    ("simulation.t_step", false),
];

const SECTIONS: &[(&str, &[&str])] = &[
    (
        "production",
        &["family", "beta", "rho", "A0", "AL0", "g_A", "g_AL"],
    ),
    ("tasks", &["alpha_c", "alpha_p"]),
    ("labor", &["L0", "g_L"]),
    ("compute", &["kind", "Q0", "g", "Qmax", "rate"]),
    ("simulation", &["t_start", "t_end", "t_step"]),
];

#[derive(Debug, Clone)]
pub struct ScenarioFile {
    pub scenario: Scenario,
    pub simulation: SimulationWindow,
    document: Value,
}

impl ScenarioFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Validation(vec![Diagnostic::new(
                path.display().to_string(),
                format!("cannot read: {e}"),
            )])
        })?;
        let is_json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        Self::parse(&text, is_json).map_err(CliError::Validation)
    }

    pub fn parse(text: &str, json: bool) -> Result<Self, Vec<Diagnostic>> {
        let document: Value = if json {
            serde_json::from_str(text)
                .map_err(|e| vec![Diagnostic::new("<document>", format!("invalid JSON: {e}"))])?
        } else {
            toml::from_str(text)
                .map_err(|e| vec![Diagnostic::new("<document>", format!("invalid TOML: {e}"))])?
        };
        Self::from_document(document)
    }

    pub fn from_document(document: Value) -> Result<Self, Vec<Diagnostic>> {
        let mut reader = Reader::default();
        let built = reader.build(&document);
        match built {
            Some((scenario, simulation)) if reader.diagnostics.is_empty() => Ok(ScenarioFile {
                scenario,
                simulation,
                document,
            }),
            _ => Err(reader.diagnostics),
        }
    }

    /// The scenario with one numeric field replaced.
    pub fn with_field(&self, path: &str, value: f64) -> Result<Self, Vec<Diagnostic>> {
        if !NUMERIC_FIELDS.iter().any(|(p, _)| *p == path) {
            return Err(vec![Diagnostic::new(path, "not a numeric scenario field")]);
        }
        let (section, key) = path.split_once('.').expect("paths are dotted");
        let mut document = self.document.clone();
        let root = document
            .as_object_mut()
            .expect("validated documents are tables");
        let table = root
            .entry(section)
            .or_insert_with(|| Value::Object(Map::new()));
        let number = serde_json::Number::from_f64(value)
            .ok_or_else(|| vec![Diagnostic::new(path, "value must be finite")])?;
        table
            .as_object_mut()
            .ok_or_else(|| vec![Diagnostic::new(section, "expected a table")])?
            .insert(key.to_string(), Value::Number(number));
        Self::from_document(document)
    }

    /// Whether a sweep over `path` should be log-spaced.
    pub fn is_magnitude(path: &str) -> bool {
        NUMERIC_FIELDS.iter().any(|&(p, m)| p == path && m)
    }
}

#[derive(Default)]
struct Reader {
    diagnostics: Vec<Diagnostic>,
}

impl Reader {
    fn fail(&mut self, path: impl Into<String>, reason: impl Into<String>) {
        self.diagnostics.push(Diagnostic::new(path, reason));
    }

    fn build(&mut self, doc: &Value) -> Option<(Scenario, SimulationWindow)> {
        let Some(root) = doc.as_object() else {
            self.fail("<document>", "expected a table at the top level");
            return None;
        };
        for key in root.keys() {
            if !SECTIONS.iter().any(|(s, _)| s == key) {
                self.fail(key.as_str(), "unknown section");
            }
        }
        let empty = Map::new();
        let mut tables = Vec::with_capacity(SECTIONS.len());
        for &(name, keys) in SECTIONS {
            let table = match root.get(name) {
                None => {
                    self.fail(name, "missing section");
                    &empty
                }
                Some(Value::Object(m)) => m,
                Some(_) => {
                    self.fail(name, "expected a table");
                    &empty
                }
            };
            for key in table.keys() {
                if !keys.contains(&key.as_str()) {
                    self.fail(format!("{name}.{key}"), "unknown field");
                }
            }
            tables.push(table);
        }
        let [production, tasks, labor, compute, simulation] = tables[..] else {
            unreachable!("one table per section")
        };

        let production = self.production(production);
        let tasks = self.tasks(tasks);
        let labor_supply = self.number(labor, "labor", "L0", None);
        let g_l = self.number(labor, "labor", "g_L", Some(0.0));
        let compute_path = self.compute(compute);
        let window = self.window(simulation);

        let (production, growth_a, growth_al) = production?;
        let scenario = Scenario {
            tasks: tasks?,
            production,
            labor_supply: labor_supply?,
            compute_path: compute_path?,
            growth: GrowthRates {
                hicks_neutral: growth_a,
                labor_augmenting: growth_al,
                labor: g_l?,
            },
        };
        if let Err(e) = scenario.validate() {
            self.model_error("", e);
            return None;
        }
        Some((scenario, window?))
    }

    fn production(&mut self, t: &Map<String, Value>) -> Option<(ProductionSpec, f64, f64)> {
        let family = match t.get("family") {
            None => {
                self.fail("production.family", "missing");
                None
            }
            Some(Value::String(s)) if s == "cobb-douglas" || s == "ces" => Some(s.as_str()),
            Some(_) => {
                self.fail("production.family", "expected \"cobb-douglas\" or \"ces\"");
                None
            }
        };
        let beta = self.number(t, "production", "beta", None);
        let rho = match family {
            Some("ces") => self.number(t, "production", "rho", None),
            _ => {
                if t.contains_key("rho") {
                    self.fail("production.rho", "only allowed when family = \"ces\"");
                }
                Some(0.0)
            }
        };
        let a0 = self.number(t, "production", "A0", Some(1.0));
        let al0 = self.number(t, "production", "AL0", Some(1.0));
        let g_a = self.number(t, "production", "g_A", Some(0.0));
        let g_al = self.number(t, "production", "g_AL", Some(0.0));
        let (family, beta, rho, a0, al0) = (family?, beta?, rho?, a0?, al0?);
        let family = match family {
            "ces" => Family::Ces { beta, rho },
            _ => Family::CobbDouglas { beta },
        };
        match ProductionSpec::new(family, a0, al0) {
            Ok(spec) => Some((spec, g_a?, g_al?)),
            Err(e) => {
                self.model_error("production.", e);
                None
            }
        }
    }

    fn tasks(&mut self, t: &Map<String, Value>) -> Option<TaskPair> {
        let alpha_c = self.cost(t, "alpha_c");
        let alpha_p = self.cost(t, "alpha_p");
        Some(TaskPair::from_costs(alpha_c?, alpha_p?))
    }

    fn cost(&mut self, t: &Map<String, Value>, key: &str) -> Option<AutomationCost> {
        let value = self.field(t, "tasks", key, Kind::Cost, None)?;
        if value == f64::INFINITY {
            return Some(AutomationCost::INFINITE);
        }
        match AutomationCost::finite(value) {
            Ok(c) => Some(c),
            Err(_) => {
                self.fail(
                    format!("tasks.{key}"),
                    format!("must be > 0 or \"{INFINITY_TOKEN}\""),
                );
                None
            }
        }
    }

    fn compute(&mut self, t: &Map<String, Value>) -> Option<ComputePath> {
        let kind = match t.get("kind") {
            None => {
                self.fail("compute.kind", "missing");
                return None;
            }
            Some(Value::String(s)) if s == "exponential" || s == "bounded" => s.as_str(),
            Some(_) => {
                self.fail("compute.kind", "expected \"exponential\" or \"bounded\"");
                return None;
            }
        };
        let (used, unused): (&[&str], &[&str]) = match kind {
            "exponential" => (&["g"], &["Qmax", "rate"]),
            _ => (&["Qmax", "rate"], &["g"]),
        };
        for key in unused {
            if t.contains_key(*key) {
                self.fail(
                    format!("compute.{key}"),
                    format!("not used by kind \"{kind}\""),
                );
            }
        }
        let q0 = self.number(t, "compute", "Q0", None);
        let path = if kind == "exponential" {
            let g = self.number(t, "compute", used[0], None);
            ComputePath::Exponential {
                q0: q0?,
                growth: g?,
            }
        } else {
            let q_max = self.number(t, "compute", "Qmax", None);
            let rate = self.number(t, "compute", "rate", None);
            ComputePath::BoundedSaturating {
                q0: q0?,
                q_max: q_max?,
                rate: rate?,
            }
        };
        match path.validate() {
            Ok(()) => Some(path),
            Err(e) => {
                self.model_error("compute.", e);
                None
            }
        }
    }

    fn window(&mut self, t: &Map<String, Value>) -> Option<SimulationWindow> {
        let t_start = self.number(t, "simulation", "t_start", Some(0.0));
        let t_end = self.number(t, "simulation", "t_end", None);
        let t_step = self.number(t, "simulation", "t_step", None);
        let w = SimulationWindow {
            t_start: t_start?,
            t_end: t_end?,
            t_step: t_step?,
        };
        let problems = w.validate("simulation.");
        let ok = problems.is_empty();
        self.diagnostics.extend(problems);
        ok.then_some(w)
    }

    fn number(
        &mut self,
        t: &Map<String, Value>,
        section: &str,
        key: &str,
        default: Option<f64>,
    ) -> Option<f64> {
        self.field(t, section, key, Kind::Number, default)
    }

    fn field(
        &mut self,
        t: &Map<String, Value>,
        section: &str,
        key: &str,
        kind: Kind,
        default: Option<f64>,
    ) -> Option<f64> {
        let path = format!("{section}.{key}");
        let value = match (t.get(key), default) {
            (None, Some(d)) => return Some(d),
            (None, None) => {
                self.fail(path, "missing");
                return None;
            }
            (Some(v), _) => v,
        };
        let parsed = match value {
            Value::Number(n) => n.as_f64(),
            Value::String(s) if kind == Kind::Cost && s == INFINITY_TOKEN => Some(f64::INFINITY),
            _ => None,
        };
        match parsed {
            Some(x) if x.is_finite() || (kind == Kind::Cost && x == f64::INFINITY) => Some(x),
            _ => {
                let expected = match kind {
                    Kind::Number => "expected a finite number".to_string(),
                    Kind::Cost => format!("expected a positive number or \"{INFINITY_TOKEN}\""),
                };
                self.fail(path, expected);
                None
            }
        }
    }

    fn model_error(&mut self, prefix: &str, e: ModelError) {
        match e {
            ModelError::InvalidParameter { name, reason } => {
                let field = match name {
                    "hicks_neutral" => "production.A0",
                    "labor_augmenting" => "production.AL0",
                    "q0" => "compute.Q0",
                    "growth" => "compute.g",
                    "q_max" => "compute.Qmax",
                    "rate" => "compute.rate",
                    "labor_supply" => "labor.L0",
                    "alpha_c" => "tasks.alpha_c",
                    "alpha_p" => "tasks.alpha_p",
                    other => {
                        self.fail(format!("{prefix}{other}"), reason);
                        return;
                    }
                };
                self.fail(field, reason);
            }
            other => self.fail("<scenario>", other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUNDLED: &str = include_str!("../scenarios/paper.toml");

    fn paths(e: Vec<Diagnostic>) -> Vec<String> {
        e.into_iter().map(|d| d.path).collect()
    }

    #[test]
    fn bundled_file_is_the_reference_calibration() {
        let f = ScenarioFile::parse(BUNDLED, false).unwrap();
        assert_eq!(f.scenario, Scenario::reference());
        assert_eq!(
            f.simulation,
            SimulationWindow {
                t_start: 0.0,
                t_end: 100.0,
                t_step: 0.1
            }
        );
    }

    #[test]
    fn json_is_accepted() {
        let doc: Value = toml::from_str(BUNDLED).unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        let f = ScenarioFile::parse(&text, true).unwrap();
        assert_eq!(f.scenario, Scenario::reference());
    }

    #[test]
    fn infinity_token() {
        let text = BUNDLED.replace("alpha_p = 1e21", "alpha_p = \"inf\"");
        let f = ScenarioFile::parse(&text, false).unwrap();
        assert!(f.scenario.tasks.physical().cost.is_infinite());
        let text = BUNDLED.replace("alpha_p = 1e21", "alpha_p = \"infinite\"");
        assert_eq!(
            paths(ScenarioFile::parse(&text, false).unwrap_err()),
            ["tasks.alpha_p"]
        );
    }

    #[test]
    fn missing_and_unknown_fields() {
        let text = BUNDLED.replace("L0 = 1e9", "");
        assert_eq!(
            paths(ScenarioFile::parse(&text, false).unwrap_err()),
            ["labor.L0"]
        );
        let text = BUNDLED.replace("L0 = 1e9", "L0 = \"\"");
        assert_eq!(
            paths(ScenarioFile::parse(&text, false).unwrap_err()),
            ["labor.L0"]
        );
        let text = BUNDLED.replace("g_L = 0.0", "g_l = 0.0");
        assert_eq!(
            paths(ScenarioFile::parse(&text, false).unwrap_err()),
            ["labor.g_l"]
        );
        let text = format!("{BUNDLED}\n[extra]\nx = 1\n");
        assert_eq!(
            paths(ScenarioFile::parse(&text, false).unwrap_err()),
            ["extra"]
        );
    }

    #[test]
    fn range_errors_name_the_field() {
        for (from, to, path) in [
            ("beta = 0.5", "beta = 1.5", "production.beta"),
            ("t_step = 0.1", "t_step = 0.0", "simulation.t_step"),
            ("Q0 = 1e22", "Q0 = -1.0", "compute.Q0"),
            ("alpha_c = 1e14", "alpha_c = 1e22", "tasks.alpha_p"),
            ("L0 = 1e9", "L0 = 0", "labor.L0"),
            (
                "family = \"cobb-douglas\"",
                "family = \"ces\"",
                "production.rho",
            ),
        ] {
            let text = BUNDLED.replace(from, to);
            assert_eq!(
                paths(ScenarioFile::parse(&text, false).unwrap_err()),
                [path],
                "{to}"
            );
        }
    }

    #[test]
    fn several_problems_are_reported_together() {
        let text = BUNDLED
            .replace("beta = 0.5", "beta = \"x\"")
            .replace("L0 = 1e9", "");
        let mut p = paths(ScenarioFile::parse(&text, false).unwrap_err());
        p.sort();
        assert_eq!(p, ["labor.L0", "production.beta"]);
    }

    #[test]
    fn field_override() {
        let f = ScenarioFile::parse(BUNDLED, false).unwrap();
        let g = f.with_field("production.beta", 0.3).unwrap();
        assert_eq!(g.scenario.production.beta(), 0.3);
        assert!(f.with_field("production.gamma", 0.3).is_err());
        assert!(ScenarioFile::is_magnitude("tasks.alpha_p"));
        assert!(!ScenarioFile::is_magnitude("production.beta"));
    }
}
