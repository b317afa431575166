use std::path::Path;

use serde::Deserialize;

use sasaki_core::algebra::{parse_rat, rat};
use sasaki_core::cone::EhfKind;
use sasaki_core::extremal::ObstructionKind;
use sasaki_core::model::{Admissible, AdmissibleSetup};
use sasaki_core::Rat;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Validate,
    Integrals,
    Affine,
    Futaki,
    ExtremalPoly,
    Cone,
    Ehf,
    CscFind,
    DiscriminantScan,
}

impl Task {
    pub fn key(self) -> &'static str {
        match self {
            Task::Validate => "validate",
            Task::Integrals => "integrals",
            Task::Affine => "affine",
            Task::Futaki => "futaki",
            Task::ExtremalPoly => "extremal-poly",
            Task::Cone => "cone",
            Task::Ehf => "ehf",
            Task::CscFind => "csc-find",
            Task::DiscriminantScan => "discriminant-scan",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    /// Index of the base factor whose `x` varies.
    pub factor: usize,
    pub range: (String, String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub csv: bool,
    #[serde(default)]
    pub svg: bool,
    /// Number of `c` rows in `cone.csv`.
    #[serde(default = "default_rows")]
    pub csv_rows: usize,
    /// Heatmap resolution per side.
    #[serde(default = "default_grid")]
    pub grid: usize,
}

fn default_rows() -> usize {
    199
}

fn default_grid() -> usize {
    400
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec { csv: false, svg: false, csv_rows: default_rows(), grid: default_grid() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    #[serde(default)]
    pub name: Option<String>,
    pub setup: AdmissibleSetup,
    #[serde(default = "default_weight_text")]
    pub p: String,
    #[serde(default)]
    pub obstruction: Option<ObstructionKind>,
    #[serde(default)]
    pub ehf: Option<EhfKind>,
    pub tasks: Vec<Task>,
    /// Cone parameters for the pointwise tasks.
    #[serde(default = "default_samples")]
    pub samples: Vec<String>,
    #[serde(default)]
    pub family: Option<FamilySpec>,
    #[serde(default)]
    pub output: OutputSpec,
}

fn default_weight_text() -> String {
    "m+2".into()
}

fn default_samples() -> Vec<String> {
    vec!["0".into()]
}

/// A parsed and validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub raw_setup: AdmissibleSetup,
    pub setup: Admissible,
    pub p: Rat,
    pub obstruction: ObstructionKind,
    pub ehf: EhfKind,
    pub tasks: Vec<Task>,
    pub samples: Vec<Rat>,
    pub family: Option<(usize, Rat, Rat)>,
    pub output: OutputSpec,
}

/// `"m+k"`, `"m-k"`, `"m"` or a rational.
fn parse_weight(text: &str, m: u32) -> Option<Rat> {
    let t: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    if let Some(rest) = t.strip_prefix('m') {
        if rest.is_empty() {
            return Some(rat(m as i64));
        }
        let (sign, digits) = rest.split_at(1);
        let k: i64 = digits.parse().ok()?;
        return match sign {
            "+" => Some(rat(m as i64 + k)),
            "-" => Some(rat(m as i64 - k)),
            _ => None,
        };
    }
    parse_rat(&t).ok()
}

pub fn parse_scenario(text: &str, origin: &str) -> CliResult<Scenario> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawScenario = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::invalid(if path == "." { origin.to_string() } else { format!("{origin} at {path}") }, e.inner().to_string())
    })?;
    let setup = raw.setup.validate().map_err(|e| CliError::invalid(format!("{origin} at setup"), e.to_string()))?;
    let p = parse_weight(&raw.p, setup.m())
        .ok_or_else(|| CliError::invalid(format!("{origin} at p"), format!("expected \"m+k\" or \"p/q\", got {:?}", raw.p)))?;
    let samples = raw
        .samples
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let c = parse_rat(s).map_err(|e| CliError::invalid(format!("{origin} at samples[{i}]"), e.to_string()))?;
            if c <= rat(-1) || c >= rat(1) {
                return Err(CliError::invalid(format!("{origin} at samples[{i}]"), "c must lie in (-1, 1)"));
            }
            Ok(c)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let family = match &raw.family {
        None => None,
        Some(f) => {
            let lo = parse_rat(&f.range.0).map_err(|e| CliError::invalid(format!("{origin} at family.range[0]"), e.to_string()))?;
            let hi = parse_rat(&f.range.1).map_err(|e| CliError::invalid(format!("{origin} at family.range[1]"), e.to_string()))?;
            if f.factor >= raw.setup.factors.len() {
                return Err(CliError::invalid(format!("{origin} at family.factor"), "no such base factor"));
            }
            if lo >= hi {
                return Err(CliError::invalid(format!("{origin} at family.range"), "empty range"));
            }
            Some((f.factor, lo, hi))
        }
    };
    if raw.tasks.contains(&Task::DiscriminantScan) && family.is_none() {
        return Err(CliError::invalid(format!("{origin} at family"), "discriminant-scan needs a family"));
    }
    let mut tasks = raw.tasks.clone();
    tasks.sort();
    tasks.dedup();
    let obstruction = raw.obstruction.unwrap_or_else(|| ObstructionKind::default_for(&setup, &p));
    let ehf = raw.ehf.unwrap_or(if p == setup.default_weight() { EhfKind::Sasaki } else { EhfKind::Weighted });
    Ok(Scenario {
        name: raw.name.clone().unwrap_or_else(|| origin.to_string()),
        raw_setup: raw.setup.clone(),
        setup,
        p,
        obstruction,
        ehf,
        tasks,
        samples,
        family,
        output: raw.output.clone(),
    })
}

pub fn load_scenario(path: &Path) -> CliResult<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io("read", path, e))?;
    let origin = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "scenario".into());
    parse_scenario(&text, &origin)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"{"setup": {"factors": [{"d": 1, "s": "-2", "x": "4/5"}, {"d": 1, "s": "2", "x": "-4/5"}]},
        "tasks": ["affine", "validate"], "samples": ["0", "1/3"]}"#;

    #[test]
    fn parses_and_defaults() {
        let s = parse_scenario(GOOD, "t").unwrap();
        assert_eq!(s.p, rat(5));
        assert_eq!(s.obstruction, ObstructionKind::Sasaki);
        assert_eq!(s.tasks, vec![Task::Validate, Task::Affine]);
        assert_eq!(s.samples.len(), 2);
    }

    #[test]
    fn weight_forms() {
        assert_eq!(parse_weight("m+2", 3), Some(rat(5)));
        assert_eq!(parse_weight("m - 1", 3), Some(rat(2)));
        assert_eq!(parse_weight("7/2", 3), Some(Rat::new(7.into(), 2.into())));
        assert_eq!(parse_weight("q", 3), None);
    }

    #[test]
    fn bad_rational_names_its_field() {
        let bad = GOOD.replace("4/5\"}, {", "4/0\"}, {");
        match parse_scenario(&bad, "t") {
            Err(CliError::InvalidScenario { path, .. }) => assert!(path.contains("setup.factors[0].x"), "{path}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = GOOD.replace("\"tasks\"", "\"colour\": 1, \"tasks\"");
        assert!(matches!(parse_scenario(&bad, "t"), Err(CliError::InvalidScenario { .. })));
    }
}
