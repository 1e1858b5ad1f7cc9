//! Job description for `vh matrix`, loadable from and dumpable to JSON.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use anyhow::{bail, Result};
use serde::{Deserialize, Serialize};
use vh_core::operator::{Basis, Colors};
use vh_core::VariableSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColorSpec {
    Distinct,
    Unicolor,
    /// Explicit color per strand, e.g. `s1,s1,s2`.
    Explicit(Vec<String>),
}

impl ColorSpec {
    /// Variable set and per-strand colors for `n` strands.
    pub fn resolve(&self, n: usize) -> Result<(Arc<VariableSet>, Colors)> {
        Ok(match self {
            ColorSpec::Distinct => {
                let vars = VariableSet::colored(n);
                let colors = Colors::distinct(&vars, n)?;
                (vars, colors)
            }
            ColorSpec::Unicolor => {
                let vars = VariableSet::unicolor();
                let colors = Colors::uniform(&vars, n)?;
                (vars, colors)
            }
            ColorSpec::Explicit(names) => {
                if names.len() != n {
                    bail!("{} colors given for {n} strands", names.len());
                }
                let vars = VariableSet::colored(n);
                let colors = Colors::from_names(&vars, names)?;
                (vars, colors)
            }
        })
    }
}

impl fmt::Display for ColorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorSpec::Distinct => f.write_str("distinct"),
            ColorSpec::Unicolor => f.write_str("unicolor"),
            ColorSpec::Explicit(names) => f.write_str(&names.join(",")),
        }
    }
}

impl FromStr for ColorSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "distinct" => Ok(ColorSpec::Distinct),
            "unicolor" => Ok(ColorSpec::Unicolor),
            "" => Err("empty color specification".into()),
            list => Ok(ColorSpec::Explicit(list.split(',').map(|c| c.trim().to_string()).collect())),
        }
    }
}

impl Serialize for ColorSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ColorSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub n: usize,
    pub r: u32,
    pub word: String,
    pub basis: Basis,
    pub colors: ColorSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subst: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eval: Option<String>,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub endomorphism: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> JobConfig {
        JobConfig {
            n: 3,
            r: 2,
            word: "s1 s2^-1".into(),
            basis: Basis::Aprime,
            colors: ColorSpec::Explicit(vec!["s1".into(), "s1".into(), "s2".into()]),
            subst: Some("tt=q^-2".into()),
            eval: None,
            format: Format::Csv,
            out: Some("m.csv".into()),
            endomorphism: true,
        }
    }

    #[test]
    fn round_trip() {
        let c = sample();
        let text = serde_json::to_string(&c).unwrap();
        let back: JobConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn color_specs() {
        assert_eq!("distinct".parse::<ColorSpec>().unwrap(), ColorSpec::Distinct);
        assert_eq!("unicolor".parse::<ColorSpec>().unwrap(), ColorSpec::Unicolor);
        let (_, colors) = "s2, s1".parse::<ColorSpec>().unwrap().resolve(2).unwrap();
        assert_eq!(colors.indices().len(), 2);
        assert!("s1".parse::<ColorSpec>().unwrap().resolve(2).is_err());
        assert!("s9,s1".parse::<ColorSpec>().unwrap().resolve(2).is_err());
    }

    #[test]
    fn rejects_unknown_fields() {
        assert!(serde_json::from_str::<JobConfig>(r#"{"n":2,"r":1,"word":"s1","basis":"A","colors":"distinct","bogus":1}"#).is_err());
    }
}
