use serde::{Deserialize, Serialize};

use super::{AnnularDiagram, Basepoint, Crossing, CrossingKind, PointedDiagram, SeamEntry, Strand};
use crate::error::{Error, Result};

/// Seam entry on the wire: `[arc, sign]` or `{"loop": i, "sign": s}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum SeamJson {
    Arc(u32, i8),
    Loop {
        #[serde(rename = "loop")]
        index: usize,
        sign: i8,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum BasepointJson {
    Arc(u32),
    Loop {
        #[serde(rename = "loop")]
        index: usize,
    },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub crossings: Vec<[u32; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientations: Option<Vec<i8>>,
    #[serde(default)]
    pub seam: Vec<SeamJson>,
    #[serde(default)]
    pub free_loops: Vec<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<BasepointJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kinds: Option<Vec<u8>>,
}

impl DiagramJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn to_diagram(&self) -> Result<AnnularDiagram> {
        let over = self.over.clone().unwrap_or_else(|| vec![1; self.crossings.len()]);
        if over.len() != self.crossings.len() {
            return Err(Error::Malformed(format!(
                "{} over markers for {} crossings",
                over.len(),
                self.crossings.len()
            )));
        }
        let crossings = self.crossings.iter().zip(&over).map(|(&arcs, &o)| Crossing::new(arcs, o)).collect();
        let seam = self
            .seam
            .iter()
            .map(|e| match *e {
                SeamJson::Arc(a, s) => SeamEntry::arc(a, s),
                SeamJson::Loop { index, sign } => SeamEntry::free_loop(index, sign),
            })
            .collect();
        AnnularDiagram::new(crossings, self.orientations.clone().unwrap_or_default(), seam, self.free_loops.clone())
    }

    /// Reads the pointed-diagram fields; both `basepoint` and `kinds` must be present.
    pub fn to_pointed(&self) -> Result<PointedDiagram> {
        let diagram = self.to_diagram()?;
        let basepoint = match self.basepoint {
            Some(BasepointJson::Arc(a)) => Basepoint::Arc(a),
            Some(BasepointJson::Loop { index }) => Basepoint::Loop(index),
            None => return Err(Error::FlavorMismatch("a basepoint")),
        };
        let kinds = self.kinds.as_ref().ok_or(Error::PartitionMissing)?;
        if kinds.len() != diagram.n() {
            return Err(Error::LengthMismatch { expected: diagram.n(), got: kinds.len() });
        }
        let kinds = kinds
            .iter()
            .map(|&k| match k {
                1 => Ok(CrossingKind::Augmenting),
                2 => Ok(CrossingKind::Original),
                _ => Err(Error::Malformed(format!("crossing kind {k} is not 1 or 2"))),
            })
            .collect::<Result<Vec<_>>>()?;
        PointedDiagram::new(diagram, basepoint, kinds)
    }
}

impl From<&AnnularDiagram> for DiagramJson {
    fn from(d: &AnnularDiagram) -> Self {
        let seam = d
            .seam()
            .iter()
            .map(|e| match e.strand {
                Strand::Arc(a) => SeamJson::Arc(a, e.sign),
                Strand::Loop(i) => SeamJson::Loop { index: i, sign: e.sign },
            })
            .collect();
        DiagramJson {
            crossings: d.crossings().iter().map(|x| x.arcs).collect(),
            over: Some(d.crossings().iter().map(|x| x.over).collect()),
            orientations: Some(d.orientations().to_vec()),
            seam,
            free_loops: d.free_loops().to_vec(),
            basepoint: None,
            kinds: None,
        }
    }
}

impl From<&PointedDiagram> for DiagramJson {
    fn from(p: &PointedDiagram) -> Self {
        let mut out = DiagramJson::from(&p.diagram);
        out.basepoint = Some(match p.basepoint {
            Basepoint::Arc(a) => BasepointJson::Arc(a),
            Basepoint::Loop(i) => BasepointJson::Loop { index: i },
        });
        out.kinds = Some(
            p.kinds
                .iter()
                .map(|k| match k {
                    CrossingKind::Augmenting => 1,
                    CrossingKind::Original => 2,
                })
                .collect(),
        );
        out
    }
}

impl AnnularDiagram {
    pub fn from_json(text: &str) -> Result<Self> {
        DiagramJson::parse(text)?.to_diagram()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DiagramJson::from(self)).expect("diagram serializes")
    }
}
