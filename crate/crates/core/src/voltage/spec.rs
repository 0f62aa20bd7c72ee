use serde::{Deserialize, Serialize};

use super::{GenVoltageGraph, VoltageError};
use crate::dartgraph::{parse_text, to_text};
use crate::permgrp::{Group, Perm};

pub const SPEC_SCHEMA: u32 = 1;

/// On-disk form of a voltage graph. Generator lists are kept exactly as
/// written so that parsing and printing round-trip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub schema: u32,
    pub group: GroupSpec,
    /// Base graph in the dart text format.
    pub base: String,
    pub weights: WeightsSpec,
    /// One cycle string per dart.
    pub voltages: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsSpec {
    pub vertices: Vec<Vec<String>>,
    pub darts: Vec<Vec<String>>,
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self, VoltageError> {
        let spec: SpecFile = serde_json::from_str(text)
            .map_err(|e| VoltageError::Spec(format!("line {} column {}: {e}", e.line(), e.column())))?;
        if spec.schema != SPEC_SCHEMA {
            return Err(VoltageError::Spec(format!(
                "unsupported schema {} (expected {SPEC_SCHEMA})",
                spec.schema
            )));
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec serialises");
        s.push('\n');
        s
    }

    pub fn from_gvg(gvg: &GenVoltageGraph) -> Self {
        let gens = |g: &Group| g.generators().iter().map(Perm::to_string).collect();
        SpecFile {
            schema: SPEC_SCHEMA,
            group: GroupSpec {
                degree: gvg.group().degree(),
                generators: gens(gvg.group()),
            },
            base: to_text(gvg.base()),
            weights: WeightsSpec {
                vertices: gvg.vertex_weights().iter().map(gens).collect(),
                darts: gvg.dart_weights().iter().map(gens).collect(),
            },
            voltages: gvg.voltages().iter().map(Perm::to_string).collect(),
        }
    }

    /// Builds and validates the voltage graph. Errors name the offending field.
    pub fn to_gvg(&self) -> Result<GenVoltageGraph, VoltageError> {
        let degree = self.group.degree;
        let parse_gens = |gens: &[String], at: &str| -> Result<Vec<Perm>, VoltageError> {
            gens.iter()
                .enumerate()
                .map(|(i, s)| {
                    Perm::parse(s, degree)
                        .map_err(|e| VoltageError::Spec(format!("{at}[{i}]: {e}")))
                })
                .collect()
        };
        let group_of = |gens: &[String], at: &str| -> Result<Group, VoltageError> {
            Group::generate(degree, parse_gens(gens, at)?)
                .map_err(|e| VoltageError::Spec(format!("{at}: {e}")))
        };
        let group = group_of(&self.group.generators, "group.generators")?;
        let base = parse_text(&self.base).map_err(|e| VoltageError::Spec(format!("base: {e}")))?;
        let vertex_weights = self
            .weights
            .vertices
            .iter()
            .enumerate()
            .map(|(v, g)| group_of(g, &format!("weights.vertices[{v}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let dart_weights = self
            .weights
            .darts
            .iter()
            .enumerate()
            .map(|(x, g)| group_of(g, &format!("weights.darts[{x}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let volt = self
            .voltages
            .iter()
            .enumerate()
            .map(|(x, s)| {
                Perm::parse(s, degree).map_err(|e| VoltageError::Spec(format!("voltages[{x}]: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        GenVoltageGraph::new(base, group, vertex_weights, dart_weights, volt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voltage::fixtures::twisted;

    #[test]
    fn round_trip() {
        let f = twisted();
        let spec = SpecFile::from_gvg(&f);
        let json = spec.to_json();
        let back = SpecFile::from_json(&json).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.to_gvg().unwrap(), f);
        assert_eq!(SpecFile::from_gvg(&back.to_gvg().unwrap()).to_json(), json);
    }

    #[test]
    fn errors_name_the_field() {
        let mut spec = SpecFile::from_gvg(&twisted());
        spec.voltages[1] = "(1 9)".into();
        match spec.to_gvg() {
            Err(VoltageError::Spec(m)) => assert!(m.starts_with("voltages[1]"), "{m}"),
            other => panic!("{other:?}"),
        }
        spec.voltages[1] = "(1 2 3)(4 6 5)".into();
        assert_eq!(spec.to_gvg(), Err(VoltageError::Eq3Violation { dart: 0 }));
        assert!(matches!(SpecFile::from_json("{\"schema\": 1"), Err(VoltageError::Spec(_))));
        let bad_schema = SpecFile::from_gvg(&twisted()).to_json().replace("\"schema\": 1", "\"schema\": 2");
        assert!(SpecFile::from_json(&bad_schema).is_err());
    }
}
