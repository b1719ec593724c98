//! One-shot constructions with derived attributes, as JSON documents.
//!
//! A [`ReportRequest`] fully determines its report, so FAIL witnesses carry
//! the request that reproduces them.

use std::sync::Arc;

use rankmetric::basis::{
    dual_basis, find_almost_self_dual_basis, find_self_dual_basis, gram_matrix, is_almost_self_dual, is_self_dual,
    trace_pairing, ExtensionBasis, SearchReport, SelfDualSearch,
};
use rankmetric::delsarte::{
    ambient_restriction, is_mrd_delsarte, is_optimal_anticode, lcd_anticode_criterion, scalar_from_json,
    singleton_like_bound, MatrixCode, MatrixCodeJson, Subspace, DEFAULT_ENUM_CAP,
};
use rankmetric::gabidulin::{
    cartesian_power, dual_code, expand_code, gabidulin_code, gram_product, hull, hull_dimension, is_lcd_massey,
    rank_profile, singleton_bound, VectorCode, VectorCodeJson,
};
use rankmetric::linalg;
use rankmetric::{make_tower, BaseField, Elem, FieldOps, FieldTower};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::checks::check_field;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    #[default]
    Field,
    SelfDualBasis,
    AlmostSelfDualBasis,
    Gabidulin,
    Expand,
    Anticode,
}

/// A named basis family or explicit elements as nested coordinate arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasisSpec {
    Named(String),
    Elements(Vec<Vec<Vec<u32>>>),
}

impl BasisSpec {
    /// Parses a command-line value: a family name or a JSON array.
    pub fn parse(s: &str) -> CliResult<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            Ok(Self::Elements(serde_json::from_str(s)?))
        } else {
            Ok(Self::Named(s.to_owned()))
        }
    }
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportRequest {
    pub kind: Kind,
    pub p: u32,
    #[serde(default = "one")]
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    /// Basis of the code (gabidulin, expand). Defaults to self-dual when one
    /// exists, almost self-dual otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisSpec>,
    /// Basis used for expansion (expand). Defaults to `basis`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expand_basis: Option<BasisSpec>,
    /// Spanning vectors of `U` (anticode); entries as in matrix-code JSON.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_enum: Option<u64>,
}

impl ReportRequest {
    pub fn new(kind: Kind, p: u32, e: u32) -> Self {
        Self { kind, p, e, ..Self::default() }
    }

    fn cap(&self) -> u64 {
        self.max_enum.unwrap_or(DEFAULT_ENUM_CAP)
    }

    fn need(&self, v: Option<usize>, name: &str) -> CliResult<usize> {
        v.ok_or_else(|| CliError::Usage(format!("--{name} is required for {:?} reports", self.kind)))
    }

    fn tower(&self) -> CliResult<Arc<FieldTower>> {
        let m = self.need(self.m, "m")?;
        Ok(make_tower(self.p, self.e, m as u32)?)
    }
}

pub fn construct_and_report(req: &ReportRequest) -> CliResult<Value> {
    let mut doc = match req.kind {
        Kind::Field => field_report(req)?,
        Kind::SelfDualBasis => self_dual_report(req)?,
        Kind::AlmostSelfDualBasis => almost_report(req)?,
        Kind::Gabidulin => gabidulin_report(req)?,
        Kind::Expand => expand_report(req)?,
        Kind::Anticode => anticode_report(req)?,
    };
    doc["request"] = serde_json::to_value(req)?;
    Ok(doc)
}

fn field_report(req: &ReportRequest) -> CliResult<Value> {
    let t = req.tower()?;
    let x = if t.m() > 1 { Elem(t.q()) } else { t.one() };
    Ok(json!({
        "kind": "field",
        "tower": t.descriptor(),
        "order": t.order(),
        "q": t.q(),
        "frobenius_matrix": t.frobenius_matrix().iter()
            .map(|r| r.iter().map(|&s| t.base().digits(s)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "generator_trace": t.base().digits(t.trace(x)),
        "checks": check_field(&t),
    }))
}

fn basis_json(b: &ExtensionBasis, label: &str) -> Value {
    let t = b.tower();
    json!({
        "label": label,
        "elements": b.to_json(),
        "display": b.elements().iter().map(|&a| t.format(a)).collect::<Vec<_>>(),
        "gram": gram_matrix(b).to_json(),
        "self_dual": is_self_dual(b),
        "almost_self_dual_a": is_almost_self_dual(b).map(|a| t.base().digits(a)),
    })
}

fn self_dual_report(req: &ReportRequest) -> CliResult<Value> {
    let t = req.tower()?;
    let s = find_self_dual_basis(&t, req.seed)?;
    let mut doc = serde_json::to_value(SearchReport::from_self_dual(&t, &s, req.seed))?;
    doc["tower"] = serde_json::to_value(t.descriptor())?;
    if let SelfDualSearch::Found { basis, random_attempts, .. } = &s {
        doc["random_attempts"] = json!(random_attempts);
        doc["gram"] = json!(gram_matrix(basis).to_json());
    }
    Ok(doc)
}

fn almost_report(req: &ReportRequest) -> CliResult<Value> {
    let t = req.tower()?;
    let s = find_almost_self_dual_basis(&t, req.seed)?;
    let mut doc = serde_json::to_value(SearchReport::from_almost(&t, &s))?;
    doc["tower"] = serde_json::to_value(t.descriptor())?;
    doc["gram"] = json!(gram_matrix(&s.basis).to_json());
    Ok(doc)
}

/// Resolves a basis specification against a tower.
pub fn resolve_basis(t: &Arc<FieldTower>, spec: Option<&BasisSpec>, seed: u64) -> CliResult<(ExtensionBasis, String)> {
    let name = match spec {
        Some(BasisSpec::Elements(els)) => return Ok((ExtensionBasis::from_json(t, els)?, "explicit".into())),
        Some(BasisSpec::Named(n)) => n.as_str(),
        None if t.p() == 2 || t.m() % 2 == 1 => "self-dual",
        None => "almost-self-dual",
    };
    match name {
        "self-dual" => match find_self_dual_basis(t, seed)? {
            SelfDualSearch::Found { basis, .. } => Ok((basis, "self-dual".into())),
            SelfDualSearch::NotExists => Err(CliError::Usage(format!(
                "GF({}^{}) has no self-dual basis over GF({})",
                t.q(),
                t.m(),
                t.q()
            ))),
        },
        "almost-self-dual" | "almost" => Ok((find_almost_self_dual_basis(t, seed)?.basis, "almost-self-dual".into())),
        "standard" => Ok((ExtensionBasis::standard(t), "standard".into())),
        other => Err(CliError::Usage(format!(
            "unknown basis '{other}' (expected self-dual, almost-self-dual, standard or a JSON array)"
        ))),
    }
}

/// Gabidulin code on the first `n` basis elements, raised to the `s`-th
/// cartesian power.
fn build_code(req: &ReportRequest, t: &Arc<FieldTower>) -> CliResult<(VectorCode, ExtensionBasis, String)> {
    let (basis, label) = resolve_basis(t, req.basis.as_ref(), req.seed)?;
    let n = req.n.unwrap_or(t.m());
    let k = req.need(req.k, "k")?;
    if n == 0 || n > t.m() {
        return Err(CliError::Usage(format!("need 1 <= n <= m = {}, got n = {n}", t.m())));
    }
    let code = gabidulin_code(t, &basis.elements()[..n], k)?;
    let s = req.s.unwrap_or(1);
    let code = if s == 1 { code } else { cartesian_power(&code, s)? };
    Ok((code, basis, label))
}

fn elem_rows(t: &FieldTower, rows: &[Vec<Elem>]) -> Value {
    json!(rows.iter().map(|r| r.iter().map(|&a| t.elem_to_json(a)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Derived attributes of a vector code.
pub fn vector_code_report(c: &VectorCode, cap: u64) -> Value {
    let t = c.tower();
    let gram = gram_product(c);
    let h = hull(c);
    let massey = is_lcd_massey(c);
    let (n, k) = (c.length(), c.dimension());
    let profile = rank_profile(c, cap).ok();
    let d_r = profile.as_ref().map(|p| p.min_rank);
    json!({
        "tower": t.descriptor(),
        "n": n,
        "k": k,
        "generator": c.to_json().generator,
        "gram_product": elem_rows(t, &gram),
        "gram_identity": linalg::is_identity(&**t, &gram),
        "hull_dimension": hull_dimension(c),
        "hull_generator": elem_rows(t, h.generator()),
        "hull_equals_code": h.same_code(c),
        "lcd": {
            "value": massey,
            "criterion": "massey: det(G G^T) != 0",
            "hull_agrees": massey == h.is_zero(),
        },
        "d_r": d_r,
        "rank_profile": profile,
        "singleton_bound": singleton_bound(n, k),
        "mrd": {
            "value": d_r.map(|d| d == singleton_bound(n, k)),
            "criterion": "d_r = n - k + 1 by full enumeration",
        },
    })
}

/// Derived attributes of a matrix code.
pub fn matrix_code_report(c: &MatrixCode, cap: u64) -> Value {
    let (n, m) = c.shape();
    let range = c.rank_range(cap).ok();
    let mrd = if c.is_zero() { None } else { is_mrd_delsarte(c, cap).ok() };
    let optimal = is_optimal_anticode(c, cap).ok();
    let criterion = if c.is_zero() { None } else { lcd_anticode_criterion(c, cap).ok() };
    json!({
        "code": c.to_json(),
        "n": n,
        "m": m,
        "dim": c.dim(),
        "dual_dim": c.dual().dim(),
        "min_rank": range.map(|r| r.min_rank),
        "max_rank": range.map(|r| r.max_rank),
        "lcd": {
            "value": c.is_lcd(),
            "criterion": "C intersect dual(C) = 0",
            "hull_dim": c.hull().dim(),
        },
        "mrd": {
            "value": mrd,
            "criterion": "dim = max(n,m) * (min(n,m) - minrk + 1)",
            "bound": range.filter(|r| r.has_nonzero).map(|r| singleton_like_bound(n, m, r.min_rank)),
        },
        "optimal_anticode": optimal,
        "anticode_criterion": criterion,
    })
}

fn gabidulin_report(req: &ReportRequest) -> CliResult<Value> {
    let t = req.tower()?;
    let (code, basis, label) = build_code(req, &t)?;
    let mut doc = vector_code_report(&code, req.cap());
    doc["kind"] = json!("gabidulin");
    doc["basis"] = basis_json(&basis, &label);
    doc["s"] = json!(req.s.unwrap_or(1));
    Ok(doc)
}

fn expand_report(req: &ReportRequest) -> CliResult<Value> {
    let t = req.tower()?;
    let (code, basis, label) = build_code(req, &t)?;
    let (eb, elabel) = match &req.expand_basis {
        Some(spec) => resolve_basis(&t, Some(spec), req.seed)?,
        None => (basis.clone(), label.clone()),
    };
    let mc = expand_code(&code, &eb)?;
    let dual_side = expand_code(&dual_code(&code), &dual_basis(&eb))?;
    let mut doc = matrix_code_report(&mc, req.cap());
    doc["kind"] = json!("expand");
    doc["basis"] = basis_json(&basis, &label);
    doc["expand_basis"] = basis_json(&eb, &elabel);
    doc["vector"] = vector_code_report(&code, req.cap());
    doc["dim_is_m_times_k"] = json!(mc.dim() == t.m() * code.dimension());
    doc["dual_commutes"] = json!(dual_side == mc.dual());
    Ok(doc)
}

fn anticode_report(req: &ReportRequest) -> CliResult<Value> {
    let field = Arc::new(BaseField::new(req.p, req.e)?);
    let n = req.need(req.n, "n")?;
    let m = req.need(req.m, "m")?;
    let rows = req
        .subspace
        .as_ref()
        .ok_or_else(|| CliError::Usage("--subspace is required for anticode reports".into()))?
        .iter()
        .map(|r| r.iter().map(|v| scalar_from_json(&field, v)).collect::<rankmetric::Result<Vec<_>>>())
        .collect::<rankmetric::Result<Vec<_>>>()?;
    let u = Subspace::new(&field, n, rows)?;
    let c = ambient_restriction(&u, m);
    let cap = req.cap();
    let body = matrix_code_report(&c, cap);
    let mut doc = Map::new();
    doc.insert("kind".into(), json!("anticode"));
    doc.insert("subspace".into(), serde_json::to_value(u.to_json())?);
    doc.insert("subspace_lcd".into(), json!(u.is_lcd()));
    doc.insert("dim".into(), body["dim"].clone());
    doc.insert("optimal".into(), body["optimal_anticode"].clone());
    doc.insert("criterion".into(), body["anticode_criterion"].clone());
    doc.insert("lcd".into(), body["lcd"]["value"].clone());
    doc.insert("dual_optimal".into(), json!(is_optimal_anticode(&c.dual(), cap).ok()));
    doc.insert("dual_is_restriction_of_dual".into(), json!(c.dual() == ambient_restriction(&u.dual(), m)));
    doc.insert("code".into(), body);
    Ok(Value::Object(doc))
}

/// Dual basis report for the `basis dual` command.
pub fn dual_basis_report(t: &Arc<FieldTower>, spec: Option<&BasisSpec>, seed: u64) -> CliResult<Value> {
    let spec = spec.cloned().unwrap_or(BasisSpec::Named("standard".into()));
    let (b, label) = resolve_basis(t, Some(&spec), seed)?;
    let d = dual_basis(&b);
    let pairing = trace_pairing(t, b.elements(), d.elements());
    Ok(json!({
        "kind": "dual-basis",
        "tower": t.descriptor(),
        "basis": basis_json(&b, &label),
        "dual": basis_json(&d, "dual"),
        "pairing_identity": linalg::is_identity(&**t.base(), &pairing),
    }))
}

/// Report for a serialized vector code (`gabidulin check`).
pub fn check_vector_code(j: &VectorCodeJson, cap: u64) -> CliResult<Value> {
    let c = VectorCode::from_json(j, None)?;
    let mut doc = vector_code_report(&c, cap);
    doc["kind"] = json!("vector-code");
    Ok(doc)
}

/// Report for a serialized matrix code (`delsarte check`).
pub fn check_matrix_code(j: &MatrixCodeJson, cap: u64) -> CliResult<Value> {
    let c = MatrixCode::from_json(j)?;
    let mut doc = matrix_code_report(&c, cap);
    doc["kind"] = json!("matrix-code");
    doc["double_dual_is_code"] = json!(c.dual().dual() == c);
    Ok(doc)
}

/// Flattens the top level of a report into `key,value` CSV rows.
pub fn to_csv(doc: &Value) -> String {
    let mut out = String::from("key,value\n");
    if let Value::Object(map) = doc {
        for (k, v) in map {
            let cell = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let cell = if cell.contains([',', '"', '\n']) { format!("\"{}\"", cell.replace('"', "\"\"")) } else { cell };
            out.push_str(&format!("{k},{cell}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_self_dual_gabidulin_report() {
        let mut req = ReportRequest::new(Kind::Gabidulin, 2, 1);
        req.m = Some(2);
        req.k = Some(1);
        req.basis = Some(BasisSpec::Named("self-dual".into()));
        let doc = construct_and_report(&req).unwrap();
        assert_eq!(doc["d_r"], json!(2));
        assert_eq!(doc["lcd"]["value"], json!(true));
        assert_eq!(doc["mrd"]["value"], json!(true));
        assert_eq!(doc["rank_profile"]["counts"], json!({"0": 1, "2": 3}));
    }

    #[test]
    fn gf9_almost_basis_reproduces_the_counterexample() {
        let mut req = ReportRequest::new(Kind::Gabidulin, 3, 1);
        req.m = Some(2);
        req.k = Some(1);
        req.basis = Some(BasisSpec::Elements(vec![vec![vec![0], vec![1]], vec![vec![1], vec![0]]]));
        let doc = construct_and_report(&req).unwrap();
        assert_eq!(doc["gram_product"], json!([[[[0], [0]]]]));
        assert_eq!(doc["lcd"]["value"], json!(false));
        assert_eq!(doc["hull_equals_code"], json!(true));
        assert_eq!(doc["basis"]["almost_self_dual_a"], json!([2]));
    }

    #[test]
    fn anticode_example_is_criterion_false_but_lcd() {
        let mut req = ReportRequest::new(Kind::Anticode, 2, 1);
        req.n = Some(2);
        req.m = Some(2);
        req.subspace = Some(vec![vec![json!(1), json!(0)]]);
        let doc = construct_and_report(&req).unwrap();
        assert_eq!(doc["dim"], json!(2));
        assert_eq!(doc["optimal"], json!(true));
        assert_eq!(doc["criterion"], json!(false));
        assert_eq!(doc["lcd"], json!(true));
    }

    #[test]
    fn composite_characteristic_is_rejected() {
        let mut req = ReportRequest::new(Kind::Field, 4, 1);
        req.m = Some(2);
        let err = construct_and_report(&req).unwrap_err();
        assert!(matches!(err, CliError::Library(rankmetric::Error::NonPrime(4))));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn expand_report_preserves_dimension_and_duality() {
        let mut req = ReportRequest::new(Kind::Expand, 2, 1);
        req.m = Some(3);
        req.k = Some(2);
        let doc = construct_and_report(&req).unwrap();
        assert_eq!(doc["dim"], json!(6));
        assert_eq!(doc["dim_is_m_times_k"], json!(true));
        assert_eq!(doc["dual_commutes"], json!(true));
        assert_eq!(doc["min_rank"], doc["vector"]["d_r"]);
        assert_eq!(doc["mrd"]["value"], json!(true));
    }

    #[test]
    fn request_round_trips_through_json() {
        let mut req = ReportRequest::new(Kind::Expand, 3, 1);
        req.m = Some(2);
        req.k = Some(1);
        req.basis = Some(BasisSpec::parse("almost").unwrap());
        req.expand_basis = Some(BasisSpec::parse("[[[1],[0]],[[0],[1]]]").unwrap());
        let text = serde_json::to_string(&req).unwrap();
        assert_eq!(serde_json::from_str::<ReportRequest>(&text).unwrap(), req);
    }

    #[test]
    fn csv_quotes_structured_values() {
        let csv = to_csv(&json!({"a": 1, "b": [1, 2]}));
        assert_eq!(csv, "key,value\na,1\nb,\"[1,2]\"\n");
    }
}
