//! Wire formats shared by the CLI and the HTTP service.

use std::collections::BTreeMap;

use braidquiver_core::ginzburg::K0Report;
use braidquiver_core::presentation::Presentation;
use braidquiver_core::qp::{Arrow, Potential, Qp};
use braidquiver_core::surface::{Tag, TaggedArc, Triangulation};
use braidquiver_core::{DynkinType, GarsideNF, GarsideSolver, GroupHom, Quiver, RelatorKind, Word};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::api::ApiError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverJson {
    pub vertices: Vec<u32>,
    pub arrows: Vec<[u32; 2]>,
}

impl From<&Quiver> for QuiverJson {
    fn from(q: &Quiver) -> Self {
        QuiverJson { vertices: q.vertices().to_vec(), arrows: q.arrows().iter().map(|&(s, t)| [s, t]).collect() }
    }
}

impl QuiverJson {
    pub fn to_quiver(&self) -> Result<Quiver, ApiError> {
        Quiver::new(self.vertices.iter().copied(), self.arrows.iter().map(|a| (a[0], a[1]))).map_err(ApiError::domain)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorJson {
    pub word: Vec<i32>,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rotation: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: Vec<u32>,
    pub relators: Vec<RelatorJson>,
}

impl From<&Presentation> for PresentationJson {
    fn from(p: &Presentation) -> Self {
        let relators = p
            .relators
            .iter()
            .map(|r| {
                let (kind, rotation) = match r.kind {
                    RelatorKind::Commuting => ("commuting", None),
                    RelatorKind::Braid => ("braid", None),
                    RelatorKind::Cycle { rotation } => ("cycle", Some(rotation)),
                    RelatorKind::Square => ("square", None),
                };
                RelatorJson { word: r.word.letters().to_vec(), kind: kind.into(), rotation }
            })
            .collect();
        PresentationJson { generators: p.generators.clone(), relators }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub images: BTreeMap<u32, Vec<i32>>,
}

impl From<&GroupHom> for HomJson {
    fn from(h: &GroupHom) -> Self {
        HomJson { images: h.images().iter().map(|(&k, w)| (k, w.letters().to_vec())).collect() }
    }
}

/// A word given either as text ("s1 s2^-1") or as an array of signed integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordJson {
    Text(String),
    Letters(Vec<i32>),
}

impl WordJson {
    pub fn to_word(&self) -> Result<Word, ApiError> {
        match self {
            WordJson::Text(s) => s.parse().map_err(ApiError::bad),
            WordJson::Letters(l) => Word::new(l.iter().copied()).map_err(ApiError::bad),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormJson {
    pub delta_power: i64,
    pub factors: Vec<Vec<Vec<i32>>>,
    /// A reduced word for each factor.
    pub words: Vec<String>,
}

impl NormalFormJson {
    pub fn new(g: &GarsideSolver, nf: &GarsideNF) -> Self {
        NormalFormJson {
            delta_power: nf.delta_power,
            factors: nf.factors.iter().map(|f| f.rows()).collect(),
            words: nf.factors.iter().map(|f| g.group().reduced_word(f).to_string()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TagJson {
    Plain,
    Notched,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ArcJson {
    Peripheral([u32; 2]),
    Radius((u32, TagJson)),
}

impl From<TaggedArc> for ArcJson {
    fn from(a: TaggedArc) -> Self {
        match a {
            TaggedArc::Peripheral(i, j) => ArcJson::Peripheral([i, j]),
            TaggedArc::Radius(x, Tag::Plain) => ArcJson::Radius((x, TagJson::Plain)),
            TaggedArc::Radius(x, Tag::Notched) => ArcJson::Radius((x, TagJson::Notched)),
        }
    }
}

impl From<ArcJson> for TaggedArc {
    fn from(a: ArcJson) -> Self {
        match a {
            ArcJson::Peripheral([i, j]) => TaggedArc::Peripheral(i, j),
            ArcJson::Radius((x, TagJson::Plain)) => TaggedArc::Radius(x, Tag::Plain),
            ArcJson::Radius((x, TagJson::Notched)) => TaggedArc::Radius(x, Tag::Notched),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub arcs: Vec<ArcJson>,
}

impl From<&Triangulation> for TriangulationJson {
    fn from(t: &Triangulation) -> Self {
        TriangulationJson { ty: t.dynkin_type().to_string(), arcs: t.arcs().iter().map(|&a| a.into()).collect() }
    }
}

impl TriangulationJson {
    pub fn to_triangulation(&self) -> Result<Triangulation, ApiError> {
        let ty = parse_type(&self.ty)?;
        Triangulation::new(ty, self.arcs.iter().map(|&a| a.into()).collect()).map_err(ApiError::domain)
    }
}

pub fn parse_type(s: &str) -> Result<DynkinType, ApiError> {
    s.parse().map_err(ApiError::bad)
}

pub fn format_rational(r: &Rational64) -> String {
    r.to_string()
}

/// Accepts "1", "-1", "−1" (U+2212) and "p/q".
pub fn parse_rational(s: &str) -> Result<Rational64, ApiError> {
    let t = s.trim().replace('\u{2212}', "-");
    let r: Rational64 = t.parse().map_err(|_| ApiError::bad(format!("bad coefficient {s:?}")))?;
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub cycle: Vec<(String, u32, u32)>,
    pub coeff: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QpJson {
    pub vertices: Vec<u32>,
    pub arrows: Vec<(String, u32, u32)>,
    #[serde(default)]
    pub potential: PotentialJson,
}

impl From<&Qp> for QpJson {
    fn from(qp: &Qp) -> Self {
        let arrow = |id: u32| {
            let a = qp.arrow(id).expect("arrow of the potential");
            (a.name.clone(), a.source, a.target)
        };
        QpJson {
            vertices: qp.vertices().to_vec(),
            arrows: qp.arrows().map(|a| (a.name.clone(), a.source, a.target)).collect(),
            potential: PotentialJson {
                terms: qp.potential().terms().iter().map(|(p, c)| TermJson { cycle: p.iter().map(|&id| arrow(id)).collect(), coeff: format_rational(c) }).collect(),
            },
        }
    }
}

impl QpJson {
    pub fn to_qp(&self) -> Result<Qp, ApiError> {
        let mut ids = BTreeMap::new();
        let mut arrows = Vec::new();
        for (k, (name, s, t)) in self.arrows.iter().enumerate() {
            let id = k as u32 + 1;
            if ids.insert(name.clone(), (id, *s, *t)).is_some() {
                return Err(ApiError::domain(format!("arrow name {name} used twice")));
            }
            arrows.push(Arrow { id, name: name.clone(), source: *s, target: *t });
        }
        let mut w = Potential::new();
        for term in &self.potential.terms {
            let mut path = Vec::new();
            for (name, s, t) in &term.cycle {
                match ids.get(name) {
                    Some(&(id, s0, t0)) if (s0, t0) == (*s, *t) => path.push(id),
                    Some(_) => return Err(ApiError::domain(format!("arrow {name} has different endpoints in the potential"))),
                    None => return Err(ApiError::domain(format!("unknown arrow {name}"))),
                }
            }
            w.add(&path, parse_rational(&term.coeff)?);
        }
        Qp::new(self.vertices.clone(), arrows, w).map_err(ApiError::domain)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0ReportJson {
    pub relators_checked: usize,
    pub failures: Vec<Vec<i32>>,
}

impl From<&K0Report> for K0ReportJson {
    fn from(r: &K0Report) -> Self {
        K0ReportJson { relators_checked: r.relators_checked, failures: r.failures.iter().map(|w| w.letters().to_vec()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arc_format() {
        let a: ArcJson = serde_json::from_str(r#"{"radius":[3,"notched"]}"#).unwrap();
        assert_eq!(TaggedArc::from(a), TaggedArc::Radius(3, Tag::Notched));
        assert_eq!(serde_json::to_string(&ArcJson::from(TaggedArc::Peripheral(1, 4))).unwrap(), r#"{"peripheral":[1,4]}"#);
    }

    #[test]
    fn coefficients() {
        assert_eq!(parse_rational("\u{2212}1").unwrap(), Rational64::from_integer(-1));
        assert_eq!(parse_rational("1/2").unwrap(), Rational64::new(1, 2));
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&Rational64::new(-3, 6)), "-1/2");
    }

    #[test]
    fn qp_round_trip() {
        let s = r#"{"vertices":[1,2,3],"arrows":[["a",1,2],["b",2,3],["c",3,1]],"potential":{"terms":[{"cycle":[["b",2,3],["c",3,1],["a",1,2]],"coeff":"-1"}]}}"#;
        let j: QpJson = serde_json::from_str(s).unwrap();
        let qp = j.to_qp().unwrap();
        let back = QpJson::from(&qp);
        assert_eq!(back.potential.terms[0].cycle[0].0, "a");
        assert_eq!(back.potential.terms[0].coeff, "-1");
        assert_eq!(back.to_qp().unwrap(), qp);
    }
}
