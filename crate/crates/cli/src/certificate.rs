//! Audit certificates and their NDJSON / CSV encodings.

use std::fmt;

use rankmetric::FieldTower;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
            Self::NotApplicable => "NOT_APPLICABLE",
        })
    }
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }
}

/// Parameter point of a certificate. Field order is the sort order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Which construction or basis family the point refers to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
}

impl Params {
    pub fn tower(t: &FieldTower) -> Self {
        Self { p: Some(t.p()), e: Some(t.e()), q: Some(t.q()), m: Some(t.m()), ..Self::default() }
    }

    pub fn field(p: u32, e: u32) -> Self {
        Self { p: Some(p), e: Some(e), q: Some(p.pow(e)), ..Self::default() }
    }

    pub fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_s(mut self, s: usize) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_variant(mut self, v: impl Into<String>) -> Self {
        self.variant = Some(v.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim_id: String,
    pub params: Params,
    pub verdict: Verdict,
    pub details: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Certificate {
    pub fn new(claim_id: &str, params: Params, verdict: Verdict, details: Value) -> Self {
        Self { claim_id: claim_id.to_owned(), params, verdict, details, witness: None }
    }

    pub fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }
}

/// Orders certificates by claim id, then parameters.
pub fn sort(certs: &mut [Certificate]) {
    certs.sort_by(|a, b| (&a.claim_id, &a.params).cmp(&(&b.claim_id, &b.params)));
}

pub fn to_ndjson(certs: &[Certificate]) -> String {
    let mut out = String::new();
    for c in certs {
        out.push_str(&serde_json::to_string(c).expect("certificates serialize"));
        out.push('\n');
    }
    out
}

pub fn from_ndjson(text: &str) -> serde_json::Result<Vec<Certificate>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}

const CSV_HEADER: &str = "claim_id,p,e,q,m,n,k,s,seed,variant,verdict";

pub fn to_csv(certs: &[Certificate]) -> String {
    fn cell<T: ToString>(v: &Option<T>) -> String {
        v.as_ref().map(ToString::to_string).unwrap_or_default()
    }
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for c in certs {
        let p = &c.params;
        let row = [
            c.claim_id.clone(),
            cell(&p.p),
            cell(&p.e),
            cell(&p.q),
            cell(&p.m),
            cell(&p.n),
            cell(&p.k),
            cell(&p.s),
            cell(&p.seed),
            cell(&p.variant),
            c.verdict.to_string(),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Worst verdict wins: any FAIL gives exit status 1.
pub fn exit_status(certs: &[Certificate]) -> i32 {
    i32::from(certs.iter().any(|c| c.verdict == Verdict::Fail))
}
