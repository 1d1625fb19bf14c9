//! JSON form of a diagram:
//! `{order, walls:[{normal, cone:{form:"hyperplane"|"signs", data}, f}]}`,
//! with `data` a list of `{vector, sign}` and `f` the canonical series string.

use serde::{Deserialize, Serialize};

use super::{Cone, ScatteringDiagram, Wall};
use crate::quiver::{DimVector, SkewForm};
use crate::tseries::TruncSeries;
use crate::{Error, Result};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DiagramJson {
    pub order: u32,
    pub walls: Vec<WallJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct WallJson {
    pub normal: Vec<i64>,
    pub cone: ConeJson,
    pub f: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ConeJson {
    pub form: String,
    #[serde(default)]
    pub data: Vec<SignJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SignJson {
    pub vector: Vec<i64>,
    pub sign: i32,
}

impl ScatteringDiagram {
    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            order: self.order,
            walls: self
                .walls
                .iter()
                .map(|w| WallJson {
                    normal: w.normal().coords().to_vec(),
                    cone: match w.cone() {
                        Cone::Hyperplane => ConeJson { form: "hyperplane".into(), data: Vec::new() },
                        Cone::Signs(s) => ConeJson {
                            form: "signs".into(),
                            data: s.iter().map(|(p, sg)| SignJson { vector: p.coords().to_vec(), sign: *sg }).collect(),
                        },
                    },
                    f: w.function().to_canonical_string(),
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("diagram JSON is serializable")
    }

    pub fn from_json(form: &SkewForm, json: &DiagramJson) -> Result<Self> {
        let r = form.rank();
        let mut walls = Vec::with_capacity(json.walls.len());
        for w in &json.walls {
            let cone = match w.cone.form.as_str() {
                "hyperplane" => Cone::Hyperplane,
                "signs" => Cone::Signs(w.cone.data.iter().map(|s| (DimVector::new(s.vector.clone()), s.sign)).collect()),
                other => return Err(Error::Parse(format!("unknown cone form {other:?}"))),
            };
            let f = TruncSeries::parse(&w.f, r, json.order)?;
            walls.push(Wall::new(DimVector::new(w.normal.clone()), cone, f)?);
        }
        ScatteringDiagram::new(form, json.order, walls)
    }

    pub fn from_json_str(form: &SkewForm, text: &str) -> Result<Self> {
        let json: DiagramJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(form, &json)
    }
}

#[cfg(test)]
mod tests {
    use crate::quiver::Quiver;
    use crate::scattering::{cluster_initial, ks_complete, ScatteringDiagram};

    #[test]
    fn json_roundtrip() {
        let q = Quiver::kronecker(2);
        let d = ks_complete(&q.skew_form(), &cluster_initial(&q, 5), 5).unwrap();
        let text = d.to_json_string();
        assert!(text.contains("\"form\": \"hyperplane\""));
        let back = ScatteringDiagram::from_json_str(&q.skew_form(), &text).unwrap();
        assert_eq!(back, d);
    }
}
