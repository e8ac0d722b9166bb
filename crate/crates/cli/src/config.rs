//! Run configuration: a single TOML file describing fields, curves, group
//! tables, and scan parameters. Numeric values are integers; exact
//! rationals are written as "a/b" strings where a rational is accepted.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use reduction_core::density::{ConjugacyClass, GroupClassTable};
use reduction_core::numfield::NumberField;

use crate::CliError;

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub bound: Option<u64>,
    pub workers: Option<usize>,
    /// Accepted for forward compatibility with randomized workflows; the
    /// factorization core seeds itself from its input, so every current
    /// subcommand is deterministic with or without this key.
    #[allow(dead_code)]
    pub seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    #[serde(default, rename = "field")]
    pub fields: Vec<FieldConfig>,
    #[serde(default, rename = "curve")]
    pub curves: Vec<CurveConfig>,
    #[serde(default, rename = "group")]
    pub groups: Vec<GroupConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub label: String,
    /// Integer coefficients, constant term first, monic.
    pub poly: Vec<i64>,
    pub k0_poly: Option<Vec<i64>>,
    #[serde(default)]
    pub galois: bool,
    /// Opt-in rule table: galois fields with all residue degrees equal in
    /// an `Other` pattern classify as non-Hodge-Witt.
    #[serde(default)]
    pub galois_non_hodge_witt_rule: bool,
    /// Name of a built-in table or of an inline [[group]] entry.
    pub group: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub label: String,
    /// Long Weierstrass coefficients a1, a2, a3, a4, a6.
    pub coeffs: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    pub name: String,
    pub degree: u32,
    pub order: u64,
    pub classes: Vec<GroupClassConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupClassConfig {
    pub size: u64,
    pub cycle_type: Vec<u32>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let config: RunConfig = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("malformed config {}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(bound) = self.bound {
            if bound < 2 {
                return Err(CliError::Config(format!("bound {bound} must be >= 2")));
            }
        }
        if self.workers == Some(0) {
            return Err(CliError::Config("worker count must be >= 1".into()));
        }
        for field in &self.fields {
            field.to_scan_field()?;
            if let Some(group) = &field.group {
                if GroupClassTable::builtin(group).is_none()
                    && !self.groups.iter().any(|g| &g.name == group)
                {
                    return Err(CliError::Config(format!(
                        "field {:?} references unknown group {group:?}",
                        field.label
                    )));
                }
            }
        }
        for curve in &self.curves {
            curve.to_curve()?;
        }
        for group in &self.groups {
            group.to_table()?.validate().map_err(CliError::Core)?;
        }
        Ok(())
    }

    pub fn field(&self, label: &str) -> Result<&FieldConfig, CliError> {
        self.fields
            .iter()
            .find(|f| f.label == label)
            .ok_or_else(|| CliError::Config(format!("no field labelled {label:?} in config")))
    }

    pub fn curve(&self, label: &str) -> Result<&CurveConfig, CliError> {
        self.curves
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| CliError::Config(format!("no curve labelled {label:?} in config")))
    }

    /// Resolves a group by name against the inline tables, then built-ins.
    pub fn group(&self, name: &str) -> Result<GroupClassTable, CliError> {
        if let Some(inline) = self.groups.iter().find(|g| g.name == name) {
            return inline.to_table();
        }
        GroupClassTable::builtin(name)
            .ok_or_else(|| CliError::Config(format!("unknown group {name:?}")))
    }
}

/// A field descriptor resolved into core types.
#[derive(Debug, Clone)]
pub struct ScanField {
    pub label: String,
    pub field: NumberField,
    pub k0: Option<NumberField>,
    pub galois: bool,
    pub galois_non_hodge_witt_rule: bool,
}

impl FieldConfig {
    pub fn to_scan_field(&self) -> Result<ScanField, CliError> {
        let field =
            NumberField::with_label(&self.label, &self.poly).map_err(CliError::Core)?;
        let k0 = match &self.k0_poly {
            Some(coeffs) => {
                let k0 = NumberField::new(coeffs).map_err(CliError::Core)?;
                if 2 * k0.degree() != field.degree() {
                    return Err(CliError::Config(format!(
                        "field {:?}: k0 degree {} is not half of {}",
                        self.label,
                        k0.degree(),
                        field.degree()
                    )));
                }
                Some(k0)
            }
            None => None,
        };
        Ok(ScanField {
            label: self.label.clone(),
            field,
            k0,
            galois: self.galois,
            galois_non_hodge_witt_rule: self.galois_non_hodge_witt_rule,
        })
    }
}

impl CurveConfig {
    pub fn to_curve(&self) -> Result<reduction_core::EllipticCurveQ, CliError> {
        if self.coeffs.len() != 5 {
            return Err(CliError::Config(format!(
                "curve {:?}: expected 5 Weierstrass coefficients, got {}",
                self.label,
                self.coeffs.len()
            )));
        }
        let coeffs: [i64; 5] = self.coeffs.clone().try_into().unwrap();
        Ok(reduction_core::EllipticCurveQ::from_coeffs(coeffs)
            .map_err(CliError::Core)?
            .with_label(&self.label))
    }
}

impl GroupConfig {
    pub fn to_table(&self) -> Result<GroupClassTable, CliError> {
        let table = GroupClassTable {
            name: Some(self.name.clone()),
            degree_n: self.degree,
            order: self.order,
            classes: self
                .classes
                .iter()
                .map(|c| ConjugacyClass {
                    size: c.size,
                    cycle_type: c.cycle_type.clone(),
                })
                .collect(),
        };
        table.validate().map_err(CliError::Core)?;
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let text = r#"
bound = 10000
workers = 4
seed = 7

[[field]]
label = "zeta5"
poly = [1, 1, 1, 1, 1]
galois = true
group = "C4"
galois_non_hodge_witt_rule = true

[[field]]
label = "d4"
poly = [89, 0, 134, 0, 1]
k0_poly = [-11, 0, 1]
group = "D4"

[[curve]]
label = "E"
coeffs = [0, 0, 0, -1, 0]

[[group]]
name = "C3"
degree = 3
order = 3
classes = [
  { size = 1, cycle_type = [1, 1, 1] },
  { size = 1, cycle_type = [3] },
  { size = 1, cycle_type = [3] },
]
"#;
        let config: RunConfig = toml::from_str(text).unwrap();
        config.validate().unwrap();
        assert_eq!(config.bound, Some(10_000));
        let d4 = config.field("d4").unwrap().to_scan_field().unwrap();
        assert_eq!(d4.field.degree(), 4);
        assert_eq!(d4.k0.as_ref().unwrap().degree(), 2);
        let c3 = config.group("C3").unwrap();
        assert_eq!(c3.order, 3);
        // built-ins resolve when not shadowed inline
        assert_eq!(config.group("D4").unwrap().order, 8);
        assert!(config.field("missing").is_err());
    }

    #[test]
    fn rejects_bad_configs() {
        let bad_bound: RunConfig = toml::from_str("bound = 1").unwrap();
        assert!(bad_bound.validate().is_err());

        let bad_field: RunConfig = toml::from_str(
            r#"
[[field]]
label = "x"
poly = [1, 0, 2]
"#,
        )
        .unwrap();
        assert!(bad_field.validate().is_err());

        let bad_group_ref: RunConfig = toml::from_str(
            r#"
[[field]]
label = "x"
poly = [1, 0, 1]
group = "nope"
"#,
        )
        .unwrap();
        assert!(bad_group_ref.validate().is_err());

        assert!(toml::from_str::<RunConfig>("unknown_key = 3").is_err());
    }
}
