//! Request handlers. The CLI and the HTTP service both go through
//! [`handle`], so identical requests give byte-identical JSON.

use std::fmt::Display;

use braidquiver_core::ginzburg::{ginzburg_presentation, twist_matrix, verify_pullback_k0, verify_relations_k0};
use braidquiver_core::mutation_iso::{phi, phi_inverse, standardize, Standardization};
use braidquiver_core::presentation::{coxeter_presentation_of, presentation_of};
use braidquiver_core::qp::{is_canonical_form, Qp};
use braidquiver_core::surface::{enumerate_triangulations, flip, initial_triangulation, quiver_of, TaggedArc, Triangulation};
use braidquiver_core::{mutation_class, ClassOptions, GarsideSolver, Quiver, Word};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::json::*;

pub const BUDGET_VAR: &str = "BQM_MAX_CLASS";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ApiError {
    #[error("{0}")]
    BadRequest(String),
    #[error("{0}")]
    Unprocessable(String),
}

impl ApiError {
    pub fn bad(e: impl Display) -> ApiError {
        ApiError::BadRequest(e.to_string())
    }

    pub fn domain(e: impl Display) -> ApiError {
        ApiError::Unprocessable(e.to_string())
    }
}

/// Class budget from the environment, or the default.
pub fn class_options() -> ClassOptions {
    match std::env::var(BUDGET_VAR).ok().and_then(|v| v.parse().ok()) {
        Some(budget) => ClassOptions { budget },
        None => ClassOptions::default(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Mutate,
    Presentation,
    WordEq,
    Phi,
    Class,
    SurfaceFlip,
    SurfaceQuiver,
    SurfaceEnumerate,
    QpMutate,
    QpCheck,
    K0Verify,
}

impl Route {
    pub const HTTP: [(&'static str, Route); 9] = [
        ("/api/mutate", Route::Mutate),
        ("/api/presentation", Route::Presentation),
        ("/api/wordeq", Route::WordEq),
        ("/api/phi", Route::Phi),
        ("/api/class", Route::Class),
        ("/api/surface/flip", Route::SurfaceFlip),
        ("/api/surface/quiver", Route::SurfaceQuiver),
        ("/api/qp/mutate", Route::QpMutate),
        ("/api/k0/verify", Route::K0Verify),
    ];
}

/// A handler's JSON answer, plus whether a check it ran failed.
#[derive(Clone, Debug, PartialEq)]
pub struct Reply {
    pub body: Value,
    pub verification_failed: bool,
}

impl Reply {
    fn ok(v: impl Serialize) -> Result<Reply, ApiError> {
        Ok(Reply { body: serde_json::to_value(v).expect("serializable"), verification_failed: false })
    }

    fn checked(v: impl Serialize, failed: bool) -> Result<Reply, ApiError> {
        Ok(Reply { body: serde_json::to_value(v).expect("serializable"), verification_failed: failed })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.body).expect("serializable")
    }
}

fn parse<T: DeserializeOwned>(body: &str) -> Result<T, ApiError> {
    serde_json::from_str(body).map_err(ApiError::bad)
}

pub fn handle(route: Route, body: &str) -> Result<Reply, ApiError> {
    match route {
        Route::Mutate => mutate(parse(body)?),
        Route::Presentation => present(parse(body)?),
        Route::WordEq => wordeq(parse(body)?),
        Route::Phi => phi_route(parse(body)?),
        Route::Class => class(parse(body)?),
        Route::SurfaceFlip => surface_flip(parse(body)?),
        Route::SurfaceQuiver => surface_quiver(parse(body)?),
        Route::SurfaceEnumerate => surface_enumerate(parse(body)?),
        Route::QpMutate => qp_mutate(parse(body)?),
        Route::QpCheck => qp_check(parse(body)?),
        Route::K0Verify => k0_verify(parse(body)?),
    }
}

/// A quiver given explicitly or as a Dynkin type string.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSource {
    #[serde(default)]
    pub quiver: Option<QuiverJson>,
    #[serde(default, rename = "type")]
    pub ty: Option<String>,
}

impl QuiverSource {
    fn get(&self) -> Result<Quiver, ApiError> {
        match (&self.quiver, &self.ty) {
            (Some(q), None) => q.to_quiver(),
            (None, Some(t)) => Ok(Quiver::dynkin(parse_type(t)?)),
            _ => Err(ApiError::bad("give exactly one of \"quiver\" or \"type\"")),
        }
    }
}

fn steps(vertex: Option<u32>, path: Option<Vec<u32>>) -> Result<Vec<u32>, ApiError> {
    match (vertex, path) {
        (Some(v), None) => Ok(vec![v]),
        (None, Some(p)) => Ok(p),
        _ => Err(ApiError::bad("give exactly one of \"vertex\" or \"path\"")),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MutateReq {
    quiver: Option<QuiverJson>,
    #[serde(rename = "type")]
    ty: Option<String>,
    vertex: Option<u32>,
    path: Option<Vec<u32>>,
}

fn mutate(r: MutateReq) -> Result<Reply, ApiError> {
    let q = QuiverSource { quiver: r.quiver, ty: r.ty }.get()?;
    let q = q.mutate_path(&steps(r.vertex, r.path)?).map_err(ApiError::domain)?;
    Reply::ok(QuiverJson::from(&q))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentReq {
    quiver: Option<QuiverJson>,
    #[serde(rename = "type")]
    ty: Option<String>,
    #[serde(default)]
    coxeter: bool,
}

fn present(r: PresentReq) -> Result<Reply, ApiError> {
    let q = QuiverSource { quiver: r.quiver, ty: r.ty }.get()?;
    let p = if r.coxeter { coxeter_presentation_of(&q) } else { presentation_of(&q) }.map_err(ApiError::domain)?;
    Reply::ok(PresentationJson::from(&p))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WordEqReq {
    quiver: Option<QuiverJson>,
    #[serde(rename = "type")]
    ty: Option<String>,
    w1: WordJson,
    w2: WordJson,
    #[serde(default)]
    verbose: bool,
}

#[derive(Serialize)]
struct WordEqReply {
    equal: bool,
    normal_form_trivial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    normal_forms: Option<[NormalFormJson; 2]>,
}

fn wordeq(r: WordEqReq) -> Result<Reply, ApiError> {
    let (w1, w2) = (r.w1.to_word()?, r.w2.to_word()?);
    // words in B_Q go to B_Δ through a standardization
    let (ty, w1, w2) = match (&r.quiver, &r.ty) {
        (None, Some(t)) => (parse_type(t)?, w1, w2),
        (Some(q), None) => {
            let q = q.to_quiver()?;
            let s: Standardization = standardize(&q, class_options()).map_err(ApiError::domain)?;
            let map = |w: &Word| s.hom.apply(w).map_err(ApiError::domain);
            (s.ty, map(&w1)?, map(&w2)?)
        }
        _ => return Err(ApiError::bad("give exactly one of \"quiver\" or \"type\"")),
    };
    let g = GarsideSolver::new(ty);
    let nf = g.normal_form(&w1.concat(&w2.inverse())).map_err(ApiError::domain)?;
    let (n1, n2) = (g.normal_form(&w1).map_err(ApiError::domain)?, g.normal_form(&w2).map_err(ApiError::domain)?);
    let normal_forms = r.verbose.then(|| [NormalFormJson::new(&g, &n1), NormalFormJson::new(&g, &n2)]);
    Reply::ok(WordEqReply { equal: n1 == n2, normal_form_trivial: nf.is_trivial(), normal_forms })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PhiReq {
    quiver: Option<QuiverJson>,
    #[serde(rename = "type")]
    ty: Option<String>,
    vertex: u32,
    #[serde(default)]
    inverse: bool,
}

#[derive(Serialize)]
struct PhiReply {
    images: std::collections::BTreeMap<u32, Vec<i32>>,
    source: QuiverJson,
    target: QuiverJson,
}

fn phi_route(r: PhiReq) -> Result<Reply, ApiError> {
    let q = QuiverSource { quiver: r.quiver, ty: r.ty }.get()?;
    let h = if r.inverse { phi_inverse(&q, r.vertex) } else { phi(&q, r.vertex) }.map_err(ApiError::domain)?;
    let mq = q.mutate(r.vertex).map_err(ApiError::domain)?;
    let (source, target) = if r.inverse { (&mq, &q) } else { (&q, &mq) };
    Reply::ok(PhiReply { images: HomJson::from(&h).images, source: source.into(), target: target.into() })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassReq {
    quiver: Option<QuiverJson>,
    #[serde(rename = "type")]
    ty: Option<String>,
    #[serde(default = "yes")]
    members: bool,
}

fn yes() -> bool {
    true
}

#[derive(Serialize)]
struct MemberJson {
    quiver: QuiverJson,
    path: Vec<u32>,
}

#[derive(Serialize)]
struct ClassReply {
    #[serde(rename = "type")]
    ty: Option<String>,
    size: usize,
    generated: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    members: Option<Vec<MemberJson>>,
}

fn class(r: ClassReq) -> Result<Reply, ApiError> {
    let q = QuiverSource { quiver: r.quiver, ty: r.ty }.get()?;
    let c = mutation_class(&q, class_options()).map_err(ApiError::domain)?;
    let members = r.members.then(|| c.members().iter().map(|m| MemberJson { quiver: (&m.quiver).into(), path: m.path.clone() }).collect());
    Reply::ok(ClassReply { ty: c.dynkin_type().map(|t| t.to_string()), size: c.len(), generated: c.generated(), members })
}

/// A triangulation given explicitly, or the initial one of a type.
#[derive(Deserialize)]
#[serde(untagged)]
enum TriangulationSource {
    Bare(TriangulationJson),
    Wrapped {
        #[serde(default)]
        triangulation: Option<TriangulationJson>,
        #[serde(default, rename = "type")]
        ty: Option<String>,
    },
}

impl TriangulationSource {
    fn get(&self) -> Result<Triangulation, ApiError> {
        match self {
            TriangulationSource::Bare(t) | TriangulationSource::Wrapped { triangulation: Some(t), ty: None } => t.to_triangulation(),
            TriangulationSource::Wrapped { triangulation: None, ty: Some(t) } => initial_triangulation(parse_type(t)?).map_err(ApiError::domain),
            _ => Err(ApiError::bad("give a triangulation or a type")),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlipReq {
    triangulation: Option<TriangulationJson>,
    #[serde(rename = "type")]
    ty: Option<String>,
    /// 1-based position of the arc, equal to its quiver vertex
    vertex: Option<u32>,
    arc: Option<ArcJson>,
}

fn surface_flip(r: FlipReq) -> Result<Reply, ApiError> {
    let t = TriangulationSource::Wrapped { triangulation: r.triangulation, ty: r.ty }.get()?;
    let k = match (r.vertex, r.arc) {
        (Some(v), None) if v >= 1 => v as usize - 1,
        (None, Some(a)) => t.index_of(TaggedArc::from(a)).ok_or_else(|| ApiError::domain("arc is not in the triangulation"))?,
        _ => return Err(ApiError::bad("give exactly one of \"vertex\" (1-based) or \"arc\"")),
    };
    let f = flip(&t, k).map_err(ApiError::domain)?;
    Reply::ok(TriangulationJson::from(&f))
}

fn surface_quiver(r: TriangulationSource) -> Result<Reply, ApiError> {
    let t = r.get()?;
    Reply::ok(QuiverJson::from(&quiver_of(&t)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EnumerateReq {
    #[serde(rename = "type")]
    ty: String,
    #[serde(default)]
    list: bool,
}

#[derive(Serialize)]
struct EnumerateReply {
    #[serde(rename = "type")]
    ty: String,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    triangulations: Option<Vec<Vec<ArcJson>>>,
}

fn surface_enumerate(r: EnumerateReq) -> Result<Reply, ApiError> {
    let ty = parse_type(&r.ty)?;
    let all = enumerate_triangulations(ty, class_options().budget).map_err(ApiError::domain)?;
    let triangulations = r.list.then(|| all.iter().map(|s| s.iter().map(|&a| a.into()).collect()).collect());
    Reply::ok(EnumerateReply { ty: ty.to_string(), count: all.len(), triangulations })
}

/// A QP given explicitly, or a quiver with the sum of its chordless cycles.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QpSource {
    qp: Option<QpJson>,
    quiver: Option<QuiverJson>,
    #[serde(rename = "type")]
    ty: Option<String>,
}

impl QpSource {
    fn get(self) -> Result<Qp, ApiError> {
        match (self.qp, self.quiver, self.ty) {
            (Some(qp), None, None) => qp.to_qp(),
            (None, quiver, ty) => Qp::sum_of_chordless_cycles(&QuiverSource { quiver, ty }.get()?).map_err(ApiError::domain),
            _ => Err(ApiError::bad("give exactly one of \"qp\", \"quiver\" or \"type\"")),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QpMutateReq {
    qp: Option<QpJson>,
    quiver: Option<QuiverJson>,
    #[serde(rename = "type")]
    ty: Option<String>,
    vertex: Option<u32>,
    path: Option<Vec<u32>>,
}

fn qp_mutate(r: QpMutateReq) -> Result<Reply, ApiError> {
    let path = steps(r.vertex, r.path)?;
    let mut qp = QpSource { qp: r.qp, quiver: r.quiver, ty: r.ty }.get()?;
    for k in path {
        qp = qp.mutate(k).map_err(ApiError::domain)?;
    }
    Reply::ok(QpJson::from(&qp))
}

#[derive(Serialize)]
struct QpCheckReply {
    canonical: bool,
    support_ok: bool,
    missing: Vec<Vec<String>>,
    extra: Vec<Vec<String>>,
    scalars: Option<std::collections::BTreeMap<String, String>>,
    error: Option<String>,
    commutator_zero: bool,
    d_squared_zero: Option<bool>,
}

fn qp_check(r: QpSource) -> Result<Reply, ApiError> {
    let qp = r.get()?;
    let rep = is_canonical_form(&qp);
    let d2 = ginzburg_presentation(&qp).ok().map(|g| g.d_squared_failures().is_empty());
    let reply = QpCheckReply {
        canonical: rep.is_canonical(),
        support_ok: rep.support_ok(),
        missing: rep.missing.clone(),
        extra: rep.extra.clone(),
        scalars: rep.scalars.as_ref().map(|m| m.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect()),
        error: rep.error.clone(),
        commutator_zero: qp.commutator_sum().is_empty(),
        d_squared_zero: d2,
    };
    let failed = !(reply.canonical && reply.commutator_zero && reply.d_squared_zero != Some(false));
    Reply::checked(reply, failed)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct K0Req {
    quiver: Option<QuiverJson>,
    #[serde(rename = "type")]
    ty: Option<String>,
    /// also pull back the transvections of the mutation at this vertex
    pullback: Option<u32>,
    #[serde(default)]
    matrices: bool,
}

#[derive(Serialize)]
struct K0Reply {
    relators_checked: usize,
    failures: Vec<Vec<i32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pullback: Option<K0ReportJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrices: Option<std::collections::BTreeMap<String, Vec<Vec<i64>>>>,
}

fn k0_verify(r: K0Req) -> Result<Reply, ApiError> {
    let q = QuiverSource { quiver: r.quiver, ty: r.ty }.get()?;
    let rep = verify_relations_k0(&q).map_err(ApiError::domain)?;
    let pullback = match r.pullback {
        Some(k) => Some(K0ReportJson::from(&verify_pullback_k0(&q, k).map_err(ApiError::domain)?)),
        None => None,
    };
    let matrices = r.matrices.then(|| q.vertices().iter().map(|&i| (i.to_string(), twist_matrix(&q, i).expect("own vertex"))).collect());
    let failed = !rep.ok() || pullback.as_ref().is_some_and(|p| !p.failures.is_empty());
    let base = K0ReportJson::from(&rep);
    Reply::checked(K0Reply { relators_checked: base.relators_checked, failures: base.failures, pullback, matrices }, failed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutate_example() {
        let r = handle(Route::Mutate, r#"{"quiver":{"vertices":[1,2,3],"arrows":[[1,2],[2,3]]},"vertex":2}"#).unwrap();
        assert_eq!(r.to_json(), r#"{"vertices":[1,2,3],"arrows":[[1,3],[2,1],[3,2]]}"#);
    }

    #[test]
    fn error_kinds() {
        assert!(matches!(handle(Route::Mutate, "{"), Err(ApiError::BadRequest(_))));
        assert!(matches!(handle(Route::Mutate, r#"{"type":"A3","vertex":9}"#), Err(ApiError::Unprocessable(_))));
        assert!(matches!(handle(Route::Mutate, r#"{"type":"A3"}"#), Err(ApiError::BadRequest(_))));
        assert!(matches!(handle(Route::Class, r#"{"quiver":{"vertices":[1,2,3],"arrows":[[1,2],[1,2],[1,2],[2,3]]}}"#), Err(ApiError::Unprocessable(_))));
    }
}
