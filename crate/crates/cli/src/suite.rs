//! The theorem-audit suite: one certificate per (claim, parameter point).

use std::path::PathBuf;
use std::sync::Arc;

use rankmetric::basis::{
    dual_basis, find_almost_self_dual_basis, find_self_dual_basis, for_each_ordered_basis, is_self_dual,
    ordered_basis_count, self_dual_admissible, ExtensionBasis, SearchReport, SelfDualSearch,
};
use rankmetric::delsarte::{
    all_matrix_codes, all_subspaces, ambient_restriction, enumeration_size, is_mrd_delsarte, is_optimal_anticode,
    lcd_anticode_criterion, scalar_json, singleton_like_bound, MatrixCode, Subspace, DEFAULT_ENUM_CAP,
};
use rankmetric::gabidulin::{
    cartesian_power, dual_code, expand_code, gabidulin_code, gram_product, hull, hull_dimension, is_lcd_massey,
    is_mrd, rank_profile, singleton_bound, RankProfile, VectorCode,
};
use rankmetric::linalg::{self, Matrix};
use rankmetric::{make_tower, BaseField, Elem, FieldOps, FieldTower, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::certificate::{sort, Certificate, Params, Verdict};
use crate::checks::{check_dual_bases, check_field};
use crate::error::{CliError, CliResult};
use crate::report::{BasisSpec, Kind, ReportRequest};

/// Bases checked per tower by the dual-basis claim; larger towers are strided.
const DUAL_BASIS_LIMIT: u64 = 200_000;
/// Largest basis count enumerated to confirm that no self-dual basis exists.
const EXHAUSTIVE_BASIS_LIMIT: u128 = 500_000;
/// Largest field (q^m) whose codes go through the cartesian-power claims.
const CARTESIAN_MAX_ORDER: u32 = 16;
/// Largest matrix space (q^{nm}) whose every subcode is enumerated.
const ALL_CODES_MAX_SPACE: u64 = 81;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub e: u32,
    pub m: u32,
}

/// An anticode grid point: subspaces of GF(p^e)^n, restricted to `n × m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnticodePoint {
    pub p: u32,
    #[serde(default = "one")]
    pub e: u32,
    pub n: usize,
    pub m: usize,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default = "default_towers")]
    pub towers: Vec<TowerSpec>,
    #[serde(default = "default_anticode_grid")]
    pub anticode_grid: Vec<AnticodePoint>,
    #[serde(default = "default_cap")]
    pub max_enum: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

fn default_cap() -> u64 {
    DEFAULT_ENUM_CAP
}

/// q ∈ {2, 3, 4, 5}, m ∈ {2, 3}.
pub fn default_towers() -> Vec<TowerSpec> {
    [(2, 1, 2), (2, 1, 3), (3, 1, 2), (3, 1, 3), (2, 2, 2), (2, 2, 3), (5, 1, 2), (5, 1, 3)]
        .into_iter()
        .map(|(p, e, m)| TowerSpec { p, e, m })
        .collect()
}

/// Subspaces of GF(2)^2, GF(2)^3 and GF(3)^2 with m ∈ {2, 3}.
pub fn default_anticode_grid() -> Vec<AnticodePoint> {
    let mut out = Vec::new();
    for (p, n) in [(2, 2), (2, 3), (3, 2)] {
        for m in [2, 3] {
            out.push(AnticodePoint { p, e: 1, n, m });
        }
    }
    out
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            towers: default_towers(),
            anticode_grid: default_anticode_grid(),
            max_enum: DEFAULT_ENUM_CAP,
            seed: 0,
            out: None,
        }
    }
}

impl SuiteConfig {
    pub fn empty() -> Self {
        Self { towers: Vec::new(), anticode_grid: Vec::new(), ..Self::default() }
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.max_enum == 0 {
            return Err(CliError::Config("max_enum must be positive".into()));
        }
        for t in &self.towers {
            if t.e == 0 || t.m == 0 {
                return Err(CliError::Config(format!("tower {t:?} needs e, m >= 1")));
            }
            let order = (t.p as u128).checked_pow(t.e * t.m).unwrap_or(u128::MAX);
            if order > self.max_enum as u128 {
                return Err(CliError::Config(format!("tower {t:?} has {order} elements, above max_enum")));
            }
            make_tower(t.p, t.e, t.m)?;
        }
        for a in &self.anticode_grid {
            if a.e == 0 || a.n == 0 || a.m == 0 {
                return Err(CliError::Config(format!("anticode point {a:?} needs e, n, m >= 1")));
            }
            BaseField::new(a.p, a.e)?;
            enumeration_size(a.p.pow(a.e), a.n * a.m, self.max_enum)
                .map_err(|_| CliError::Config(format!("anticode point {a:?} exceeds max_enum")))?;
        }
        Ok(())
    }
}

/// Runs every claim on every configured point. Output is sorted by claim id
/// and parameters.
pub fn run_suite(cfg: &SuiteConfig) -> CliResult<Vec<Certificate>> {
    cfg.validate()?;
    let mut certs = Vec::new();
    for spec in &cfg.towers {
        let t = make_tower(spec.p, spec.e, spec.m)?;
        TowerAudit::new(&t, cfg, &mut certs).run()?;
    }
    for point in &cfg.anticode_grid {
        anticode_point(point, cfg, &mut certs)?;
    }
    sort(&mut certs);
    Ok(certs)
}

/// Dimension and double-dual checks on every matrix code the suite builds.
#[derive(Default)]
struct DualityTally {
    checked: u64,
    failures: Vec<Value>,
}

impl DualityTally {
    fn observe(&mut self, c: &MatrixCode) {
        let (n, m) = c.shape();
        let d = c.dual();
        self.checked += 1;
        if (c.dim() + d.dim() != n * m || d.dual() != *c)
            && self.failures.len() < 3 {
                self.failures.push(json!(c.to_json()));
            }
    }

    fn certificate(self, params: Params) -> Certificate {
        let ok = self.failures.is_empty();
        let cert = Certificate::new(
            "delsarte_duality",
            params,
            Verdict::from_bool(ok),
            json!({"codes_checked": self.checked, "failures": self.failures.len()}),
        );
        if ok {
            cert
        } else {
            cert.with_witness(json!({"codes": self.failures}))
        }
    }
}

fn elem_rows(t: &FieldTower, rows: &[Vec<Elem>]) -> Value {
    json!(rows.iter().map(|r| r.iter().map(|&a| t.elem_to_json(a)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    SelfDual,
    AlmostSelfDual,
}

impl Family {
    fn label(self) -> &'static str {
        match self {
            Self::SelfDual => "self_dual",
            Self::AlmostSelfDual => "almost_self_dual",
        }
    }
}

/// A Moore-matrix code on a full basis with its computed attributes.
struct Case {
    family: Family,
    basis: ExtensionBasis,
    k: usize,
    code: VectorCode,
    gram: Matrix<Elem>,
    gram_identity: bool,
    massey: bool,
    hull_dim: usize,
    hull_is_zero: bool,
    hull_equals_code: bool,
    hull_generator: Matrix<Elem>,
    profile: Option<RankProfile>,
}

impl Case {
    fn build(t: &Arc<FieldTower>, family: Family, basis: &ExtensionBasis, k: usize, cap: u64) -> CliResult<Self> {
        let code = gabidulin_code(t, basis.elements(), k)?;
        let gram = gram_product(&code);
        let h = hull(&code);
        Ok(Self {
            family,
            basis: basis.clone(),
            k,
            gram_identity: linalg::is_identity(&**t, &gram),
            massey: is_lcd_massey(&code),
            hull_dim: hull_dimension(&code),
            hull_is_zero: h.is_zero(),
            hull_equals_code: h.same_code(&code),
            hull_generator: h.generator().clone(),
            profile: rank_profile(&code, cap).ok(),
            gram,
            code,
        })
    }

    fn d_r(&self) -> Option<usize> {
        self.profile.as_ref().map(|p| p.min_rank)
    }

    fn singleton(&self) -> usize {
        singleton_bound(self.code.length(), self.k)
    }

    fn request(&self, t: &FieldTower, seed: u64, cap: u64) -> ReportRequest {
        ReportRequest {
            m: Some(t.m()),
            k: Some(self.k),
            seed,
            basis: Some(BasisSpec::Elements(self.basis.to_json())),
            max_enum: Some(cap),
            ..ReportRequest::new(Kind::Gabidulin, t.p(), t.e())
        }
    }

    fn details(&self, t: &FieldTower) -> Value {
        json!({
            "basis": self.basis.to_json(),
            "gram_product": elem_rows(t, &self.gram),
            "gram_identity": self.gram_identity,
            "massey_lcd": self.massey,
            "hull_dimension": self.hull_dim,
            "hull_equals_code": self.hull_equals_code,
            "d_r": self.d_r(),
            "singleton_bound": self.singleton(),
        })
    }

    fn witness(&self, t: &FieldTower, seed: u64, cap: u64) -> CliResult<Value> {
        Ok(json!({
            "request": serde_json::to_value(self.request(t, seed, cap))?,
            "basis": self.basis.to_json(),
            "generator": elem_rows(t, self.code.generator()),
            "gram_product": elem_rows(t, &self.gram),
            "hull_generator": elem_rows(t, &self.hull_generator),
            "hull_equals_code": self.hull_equals_code,
            "d_r": self.d_r(),
        }))
    }
}

/// Matrix code with its rank range, for the bound claim.
struct Expanded {
    n: usize,
    m: usize,
    dim: usize,
    min_rank: usize,
    mrd: bool,
}

struct TowerAudit<'a> {
    t: Arc<FieldTower>,
    cap: u64,
    seed: u64,
    certs: &'a mut Vec<Certificate>,
    tally: DualityTally,
    expanded: Vec<Expanded>,
}

impl<'a> TowerAudit<'a> {
    fn new(t: &Arc<FieldTower>, cfg: &SuiteConfig, certs: &'a mut Vec<Certificate>) -> Self {
        Self {
            t: t.clone(),
            cap: cfg.max_enum,
            seed: cfg.seed,
            certs,
            tally: DualityTally::default(),
            expanded: Vec::new(),
        }
    }

    fn params(&self) -> Params {
        Params::tower(&self.t)
    }

    fn seeded(&self) -> Params {
        self.params().with_seed(self.seed)
    }

    fn fits(&self, codewords_log_q_m: usize) -> bool {
        enumeration_size(self.t.order(), codewords_log_q_m, self.cap).is_ok()
    }

    fn push(&mut self, c: Certificate) {
        self.certs.push(c);
    }

    fn run(mut self) -> CliResult<()> {
        self.field_axioms();
        self.dual_basis();
        let self_dual = self.self_dual_existence();
        let mut cases = self.self_dual_construction(self_dual.as_ref())?;
        if self.t.p() != 2 {
            cases.extend(self.almost_self_dual()?);
        }
        self.expansion(&cases, self_dual.as_ref())?;
        self.corollary(&cases)?;
        if self.t.order() <= CARTESIAN_MAX_ORDER {
            self.cartesian(&cases)?;
        }
        self.delsarte_bound();
        let params = self.params();
        let tally = std::mem::take(&mut self.tally);
        self.push(tally.certificate(params));
        Ok(())
    }

    fn field_axioms(&mut self) {
        let check = check_field(&self.t);
        let ok = check.ok();
        let mut cert = Certificate::new("field_axioms", self.params(), Verdict::from_bool(ok), json!(check));
        if !ok {
            let req = ReportRequest { m: Some(self.t.m()), ..ReportRequest::new(Kind::Field, self.t.p(), self.t.e()) };
            cert = cert.with_witness(json!({"request": req, "violations": check.violations}));
        }
        self.push(cert);
    }

    fn dual_basis(&mut self) {
        let check = check_dual_bases(&self.t, DUAL_BASIS_LIMIT);
        let ok = check.violation_count == 0;
        let mut cert = Certificate::new("dual_basis", self.params(), Verdict::from_bool(ok), json!(check));
        if !ok {
            cert = cert.with_witness(json!({"bases": check.violations}));
        }
        self.push(cert);
    }

    fn self_dual_existence(&mut self) -> Option<ExtensionBasis> {
        let t = self.t.clone();
        let admissible = self_dual_admissible(&t);
        let search = find_self_dual_basis(&t, self.seed);
        let (outcome, found, attempts) = match &search {
            Ok(s @ SelfDualSearch::Found { basis, random_attempts, .. }) => {
                (json!(SearchReport::from_self_dual(&t, s, self.seed)), Some(basis.clone()), Some(*random_attempts))
            }
            Ok(s @ SelfDualSearch::NotExists) => (json!(SearchReport::from_self_dual(&t, s, self.seed)), None, None),
            Err(e) => (json!({"error": e.to_string()}), None, None),
        };
        let mut ok = admissible == found.is_some() && found.as_ref().is_none_or(is_self_dual);
        let mut exhaustive = Value::Null;
        let mut unexpected = None;
        if found.is_none() && ordered_basis_count(&t) <= EXHAUSTIVE_BASIS_LIMIT {
            let (mut bases, mut hits) = (0u64, 0u64);
            for_each_ordered_basis(&t, |els| {
                bases += 1;
                let b = ExtensionBasis::new(&t, els.to_vec()).expect("enumerated tuples are bases");
                if is_self_dual(&b) {
                    hits += 1;
                    unexpected.get_or_insert(b);
                }
            });
            ok &= hits == 0;
            exhaustive = json!({"bases": bases, "self_dual": hits});
        }
        let details = json!({
            "admissible": admissible,
            "outcome": outcome,
            "random_attempts": attempts,
            "exhaustive_confirmation": exhaustive,
        });
        let mut cert = Certificate::new("selfdual_existence", self.seeded(), Verdict::from_bool(ok), details);
        if !ok {
            cert = cert.with_witness(json!({
                "admissible": admissible,
                "found": found.as_ref().map(ExtensionBasis::to_json),
                "unexpected_self_dual": unexpected.as_ref().map(ExtensionBasis::to_json),
            }));
        }
        self.push(cert);
        found
    }

    fn self_dual_construction(&mut self, basis: Option<&ExtensionBasis>) -> CliResult<Vec<Case>> {
        let Some(basis) = basis else {
            let details = json!({"reason": "no self-dual basis of this extension"});
            self.push(Certificate::new("selfdual_construction", self.seeded(), Verdict::NotApplicable, details));
            return Ok(Vec::new());
        };
        let mut cases = Vec::new();
        for k in 1..=self.t.m() {
            let case = Case::build(&self.t, Family::SelfDual, basis, k, self.cap)?;
            let algebra_ok = case.gram_identity && case.hull_dim == 0 && case.hull_is_zero;
            let verdict = match case.d_r() {
                _ if !algebra_ok => Verdict::Fail,
                Some(d) => Verdict::from_bool(d == case.singleton()),
                None => Verdict::NotApplicable,
            };
            let mut cert = Certificate::new(
                "selfdual_construction",
                self.seeded().with_n(self.t.m()).with_k(k).with_variant("self_dual"),
                verdict,
                case.details(&self.t),
            );
            if verdict == Verdict::Fail {
                cert = cert.with_witness(case.witness(&self.t, self.seed, self.cap)?);
            }
            self.push(cert);
            cases.push(case);
        }
        Ok(cases)
    }

    fn almost_self_dual(&mut self) -> CliResult<Vec<Case>> {
        let t = self.t.clone();
        let found = match find_almost_self_dual_basis(&t, self.seed) {
            Ok(f) => f,
            Err(e) => {
                let cert = Certificate::new(
                    "almost_selfdual_existence",
                    self.seeded(),
                    Verdict::Fail,
                    json!({"error": e.to_string()}),
                )
                .with_witness(json!({"error": e.to_string()}));
                self.push(cert);
                return Ok(Vec::new());
            }
        };
        let report = SearchReport::from_almost(&t, &found);
        self.push(Certificate::new(
            "almost_selfdual_existence",
            self.seeded(),
            Verdict::from_bool(found.a != Scalar(0)),
            json!(report),
        ));

        let mut cases = Vec::new();
        let mut failures = Vec::new();
        let mut consistent = true;
        for k in 1..=t.m() {
            let case = Case::build(&t, Family::AlmostSelfDual, &found.basis, k, self.cap)?;
            consistent &= case.massey == case.hull_is_zero && case.massey == (case.hull_dim == 0);
            if case.massey {
                consistent &= case.d_r().is_none_or(|d| d == case.singleton());
            }
            let verdict = match case.d_r() {
                _ if !case.hull_is_zero => Verdict::Fail,
                Some(d) => Verdict::from_bool(d == case.singleton()),
                None => Verdict::NotApplicable,
            };
            let mut details = case.details(&t);
            details["a"] = json!(t.base().digits(found.a));
            let mut cert = Certificate::new(
                "almost_selfdual_construction",
                self.seeded().with_n(t.m()).with_k(k).with_variant("almost_self_dual"),
                verdict,
                details,
            );
            if verdict == Verdict::Fail {
                failures.push(k);
                cert = cert.with_witness(case.witness(&t, self.seed, self.cap)?);
            }
            self.push(cert);
            cases.push(case);
        }

        // GF(9) ⊃ GF(3), basis {α, 1}, k = 1: GGᵀ = α² + 1 = 0.
        let documented = (t.p(), t.e(), t.m()) == (3, 1, 2);
        let reproduced = documented.then(|| {
            cases.iter().any(|c| {
                c.k == 1
                    && c.basis.elements() == [Elem(3), Elem(1)]
                    && c.gram == vec![vec![Elem(0)]]
                    && c.hull_equals_code
                    && !c.hull_is_zero
            })
        });
        let ok = consistent && reproduced.unwrap_or(true);
        self.push(Certificate::new(
            "almost_selfdual_audit",
            self.seeded(),
            Verdict::from_bool(ok),
            json!({
                "instances": cases.len(),
                "failing_k": failures,
                "massey_hull_consistent": consistent,
                "counterexample_reproduced": reproduced,
            }),
        ));
        Ok(cases)
    }

    fn expansion(&mut self, cases: &[Case], self_dual: Option<&ExtensionBasis>) -> CliResult<()> {
        let t = self.t.clone();
        let m = t.m();
        for case in cases {
            let (eb, elabel) = match self_dual {
                Some(b) => (b.clone(), Family::SelfDual.label()),
                None => (case.basis.clone(), case.family.label()),
            };
            let eb_self_dual = is_self_dual(&eb);
            let params = self
                .seeded()
                .with_n(m)
                .with_k(case.k)
                .with_variant(format!("{}:{}", case.family.label(), elabel));
            let request = ReportRequest {
                kind: Kind::Expand,
                expand_basis: Some(BasisSpec::Elements(eb.to_json())),
                ..case.request(&t, self.seed, self.cap)
            };
            let witness = json!({"request": request});
            let mc = expand_code(&case.code, &eb)?;
            let dual_side = expand_code(&dual_code(&case.code), &dual_basis(&eb))?;
            self.tally.observe(&mc);
            self.tally.observe(&dual_side);

            let dim_ok = mc.dim() == m * case.k;
            let mut cert = Certificate::new(
                "expansion_dimension",
                params.clone(),
                Verdict::from_bool(dim_ok),
                json!({"dim": mc.dim(), "m_times_k": m * case.k}),
            );
            if !dim_ok {
                cert = cert.with_witness(witness.clone());
            }
            self.push(cert);

            let range = case.profile.as_ref().and_then(|_| mc.rank_range(self.cap).ok());
            let (verdict, details) = match (&case.profile, range) {
                (Some(p), Some(r)) => {
                    let vmax = p.counts.keys().copied().max().unwrap_or(0);
                    (
                        Verdict::from_bool(r.min_rank == p.min_rank && r.max_rank == vmax),
                        json!({"vector_min": p.min_rank, "matrix_min": r.min_rank, "vector_max": vmax, "matrix_max": r.max_rank}),
                    )
                }
                _ => (Verdict::NotApplicable, json!({"reason": "enumeration exceeds cap"})),
            };
            let mut cert = Certificate::new("expansion_min_rank", params.clone(), verdict, details);
            if verdict == Verdict::Fail {
                cert = cert.with_witness(witness.clone());
            }
            self.push(cert);

            let dual_ok = dual_side == mc.dual();
            let mut cert = Certificate::new(
                "expansion_dual",
                params.clone(),
                Verdict::from_bool(dual_ok),
                json!({"basis_self_dual": eb_self_dual, "dual_dim": dual_side.dim()}),
            );
            if !dual_ok {
                cert = cert.with_witness(witness.clone());
            }
            self.push(cert);

            let vector_lcd = case.hull_is_zero;
            let matrix_lcd = mc.is_lcd();
            let lcd_details = json!({"vector_lcd": vector_lcd, "delsarte_lcd": matrix_lcd, "basis_self_dual": eb_self_dual});
            let verdict = if eb_self_dual { Verdict::from_bool(vector_lcd == matrix_lcd) } else { Verdict::NotApplicable };
            let mut cert = Certificate::new("expansion_lcd_equiv", params.clone(), verdict, lcd_details);
            if verdict == Verdict::Fail {
                cert = cert.with_witness(witness.clone());
            }
            self.push(cert);

            let (verdict, details) = match (case.d_r(), range) {
                (Some(d), Some(r)) => {
                    let vmrd = d == case.singleton();
                    let dmrd = is_mrd_delsarte(&mc, self.cap)?;
                    self.expanded.push(Expanded { n: m, m, dim: mc.dim(), min_rank: r.min_rank, mrd: dmrd });
                    (Verdict::from_bool(vmrd == dmrd), json!({"vector_mrd": vmrd, "delsarte_mrd": dmrd}))
                }
                _ => (Verdict::NotApplicable, json!({"reason": "enumeration exceeds cap"})),
            };
            let mut cert = Certificate::new("expansion_mrd_equiv", params, verdict, details);
            if verdict == Verdict::Fail {
                cert = cert.with_witness(witness);
            }
            self.push(cert);
        }
        Ok(())
    }

    /// Expansion of each construction in its own basis, with cartesian
    /// powers: Delsarte LCD and MRD.
    fn corollary(&mut self, cases: &[Case]) -> CliResult<()> {
        let t = self.t.clone();
        for case in cases {
            for s in 1..=2 {
                let params = self
                    .seeded()
                    .with_n(t.m())
                    .with_k(case.k)
                    .with_s(s)
                    .with_variant(case.family.label());
                if !self.fits(case.k * s) {
                    let details = json!({"reason": "enumeration exceeds cap"});
                    self.push(Certificate::new("expansion_corollary", params, Verdict::NotApplicable, details));
                    continue;
                }
                let mc = expand_code(&cartesian_power(&case.code, s)?, &case.basis)?;
                self.tally.observe(&mc);
                let lcd = mc.is_lcd();
                let r = mc.rank_range(self.cap)?;
                let mrd = is_mrd_delsarte(&mc, self.cap)?;
                let (n, m) = mc.shape();
                self.expanded.push(Expanded { n, m, dim: mc.dim(), min_rank: r.min_rank, mrd });
                let ok = lcd && mrd;
                let mut cert = Certificate::new(
                    "expansion_corollary",
                    params,
                    Verdict::from_bool(ok),
                    json!({"delsarte_lcd": lcd, "delsarte_mrd": mrd, "min_rank": r.min_rank, "dim": mc.dim()}),
                );
                if !ok {
                    let req = ReportRequest { kind: Kind::Expand, s: Some(s), ..case.request(&t, self.seed, self.cap) };
                    cert = cert.with_witness(json!({"request": req}));
                }
                self.push(cert);
            }
        }
        Ok(())
    }

    fn cartesian(&mut self, cases: &[Case]) -> CliResult<()> {
        let t = self.t.clone();
        let m = t.m();
        let mut bases: Vec<(String, VectorCode, Option<BasisSpec>)> = Vec::new();
        for case in cases.iter().filter(|c| c.k < m) {
            bases.push((case.family.label().into(), case.code.clone(), Some(BasisSpec::Elements(case.basis.to_json()))));
        }
        if let Some(first) = cases.first() {
            if m >= 3 {
                let code = gabidulin_code(&t, &first.basis.elements()[..m - 1], 1)?;
                bases.push((format!("{}_short", first.family.label()), code, None));
            }
        }
        let repetition = VectorCode::new(&t, vec![vec![t.one(), t.one()]])?;
        bases.push(("repetition".into(), repetition, None));

        for (label, c, _) in &bases {
            let (n, k) = (c.length(), c.dimension());
            let d = rank_profile(c, self.cap).ok().map(|p| p.min_rank);
            let c_lcd = hull(c).is_zero();
            let c_mrd = d.map(|d| d == singleton_bound(n, k));
            for s in 1..=3 {
                let params = self.seeded().with_n(n).with_k(k).with_s(s).with_variant(label.clone());
                let cs = cartesian_power(c, s)?;
                let generator_witness = json!({"generator": elem_rows(&t, c.generator()), "s": s});

                let dual_ok = dual_code(&cs).same_code(&cartesian_power(&dual_code(c), s)?);
                let mut cert = Certificate::new(
                    "cartesian_dual",
                    params.clone(),
                    Verdict::from_bool(dual_ok),
                    json!({"length": cs.length(), "dual_dim": dual_code(&cs).dimension()}),
                );
                if !dual_ok {
                    cert = cert.with_witness(generator_witness.clone());
                }
                self.push(cert);

                let cs_lcd = hull(&cs).is_zero();
                let lcd_ok = cs_lcd == c_lcd;
                let mut cert = Certificate::new(
                    "cartesian_lcd_iff",
                    params.clone(),
                    Verdict::from_bool(lcd_ok),
                    json!({"base_lcd": c_lcd, "power_lcd": cs_lcd, "power_massey": is_lcd_massey(&cs)}),
                );
                if !lcd_ok {
                    cert = cert.with_witness(generator_witness.clone());
                }
                self.push(cert);

                let ds = if self.fits(k * s) { rank_profile(&cs, self.cap).ok().map(|p| p.min_rank) } else { None };
                let (verdict, details) = match (d, ds) {
                    (Some(d), Some(ds)) => (Verdict::from_bool(d == ds), json!({"base_d_r": d, "power_d_r": ds})),
                    _ => (Verdict::NotApplicable, json!({"reason": "enumeration exceeds cap"})),
                };
                let mut cert = Certificate::new("cartesian_min_rank", params.clone(), verdict, details);
                if verdict == Verdict::Fail {
                    cert = cert.with_witness(generator_witness.clone());
                }
                self.push(cert);

                // Matrix-side reading, for MRD bases of positive redundancy.
                if s >= 2 && c_mrd == Some(true) && k < n {
                    let std = ExtensionBasis::standard(&t);
                    let (verdict, details) = if self.fits(k * s) {
                        let mc = expand_code(&cs, &std)?;
                        self.tally.observe(&mc);
                        let r = mc.rank_range(self.cap)?;
                        let dmrd = is_mrd_delsarte(&mc, self.cap)?;
                        let (rn, rm) = mc.shape();
                        self.expanded.push(Expanded { n: rn, m: rm, dim: mc.dim(), min_rank: r.min_rank, mrd: dmrd });
                        let vmrd = is_mrd(&cs, self.cap).ok();
                        (
                            Verdict::from_bool(dmrd == (n == m)),
                            json!({"delsarte_mrd": dmrd, "vector_mrd": vmrd, "n_equals_m": n == m}),
                        )
                    } else {
                        (Verdict::NotApplicable, json!({"reason": "enumeration exceeds cap"}))
                    };
                    let mut cert = Certificate::new("cartesian_mrd", params, verdict, details);
                    if verdict == Verdict::Fail {
                        cert = cert.with_witness(generator_witness);
                    }
                    self.push(cert);
                }
            }
        }
        Ok(())
    }

    /// `dim ≤ max{n,m}·(min{n,m} − d + 1)` on every enumerated expansion,
    /// with equality exactly for the codes judged MRD.
    fn delsarte_bound(&mut self) {
        let mut violations = Vec::new();
        let mut meeting = 0;
        let mut plus_attained = 0;
        for x in &self.expanded {
            let bound = singleton_like_bound(x.n, x.m, x.min_rank);
            if x.dim == bound {
                meeting += 1;
            }
            let big = x.n.max(x.m);
            if x.min_rank * big == x.n.min(x.m) * big + x.dim + big {
                plus_attained += 1;
            }
            if x.dim > bound || (x.dim == bound) != x.mrd {
                violations.push(json!({"n": x.n, "m": x.m, "dim": x.dim, "min_rank": x.min_rank}));
            }
        }
        let ok = violations.is_empty();
        let details = json!({
            "codes_checked": self.expanded.len(),
            "meeting_bound": meeting,
            "plus_form_attained": plus_attained,
        });
        let mut cert = Certificate::new("delsarte_bound", self.params(), Verdict::from_bool(ok), details);
        if !ok {
            cert = cert.with_witness(json!({"codes": violations}));
        }
        self.push(cert);
    }
}

/// Failure counter that keeps the first offending subspace.
struct Claim {
    id: &'static str,
    checked: u64,
    failures: u64,
    witness: Option<Value>,
}

impl Claim {
    fn new(id: &'static str) -> Self {
        Self { id, checked: 0, failures: 0, witness: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            self.witness.get_or_insert_with(witness);
        }
    }

    fn certificate(self, params: &Params, extra: Value) -> Certificate {
        let mut details = json!({"checked": self.checked, "failures": self.failures});
        if let (Value::Object(d), Value::Object(x)) = (&mut details, extra) {
            d.extend(x);
        }
        let cert = Certificate::new(self.id, params.clone(), Verdict::from_bool(self.failures == 0), details);
        match self.witness {
            Some(w) => cert.with_witness(w),
            None => cert,
        }
    }
}

fn subspace_request(u: &Subspace, point: &AnticodePoint, cap: u64) -> Value {
    let rows: Vec<Vec<Value>> = u.basis().iter().map(|r| r.iter().map(|&s| scalar_json(u.field(), s)).collect()).collect();
    let req = ReportRequest {
        n: Some(point.n),
        m: Some(point.m),
        subspace: Some(rows),
        max_enum: Some(cap),
        ..ReportRequest::new(Kind::Anticode, point.p, point.e)
    };
    json!({"request": req, "subspace": u.to_json()})
}

fn anticode_point(point: &AnticodePoint, cfg: &SuiteConfig, certs: &mut Vec<Certificate>) -> CliResult<()> {
    let cap = cfg.max_enum;
    let field = Arc::new(BaseField::new(point.p, point.e)?);
    let (n, m) = (point.n, point.m);
    let params = Params::field(point.p, point.e).with_n(n).with_m(m);
    let mut tally = DualityTally::default();

    let mut dimension = Claim::new("ambient_dimension");
    let mut dual = Claim::new("ambient_dual");
    let mut sum = Claim::new("ambient_sum");
    let mut intersection = Claim::new("ambient_intersection");
    let mut transfer = Claim::new("ambient_lcd_transfer");
    let mut bound = Claim::new("anticode_bound");
    let mut dual_optimal = Claim::new("dual_of_anticode");
    let mut sufficient = Claim::new("anticode_lcd_sufficient");
    let mut restrictions_optimal = 0u64;
    let mut criterion_true = 0u64;
    let mut only_sufficient: Vec<Value> = Vec::new();

    for u in all_subspaces(&field, n) {
        let ud = u.dual();
        let c = ambient_restriction(&u, m);
        let cd = ambient_restriction(&ud, m);
        tally.observe(&c);
        let w = || subspace_request(&u, point, cap);

        dimension.record(c.dim() == m * u.dim(), w);
        dual.record(c.dual() == cd, w);
        sum.record(c.sum(&cd)? == ambient_restriction(&u.sum(&ud)?, m), w);
        intersection.record(c.intersect(&cd)? == ambient_restriction(&u.intersection(&ud)?, m), w);
        transfer.record(u.is_lcd() == c.is_lcd(), w);

        let range = c.rank_range(cap)?;
        bound.record(c.dim() <= n.max(m) * range.max_rank, w);
        if is_optimal_anticode(&c, cap)? {
            restrictions_optimal += 1;
            dual_optimal.record(is_optimal_anticode(&c.dual(), cap)?, w);
            if !c.is_zero() {
                let crit = lcd_anticode_criterion(&c, cap)?;
                criterion_true += u64::from(crit);
                sufficient.record(!crit || c.is_lcd(), w);
                if !crit && c.is_lcd() {
                    only_sufficient.push(json!(u.to_json()));
                }
            }
        }
    }

    let mut all_codes = 0u64;
    let space = enumeration_size(field.q(), n * m, cap).unwrap_or(u64::MAX);
    if space <= ALL_CODES_MAX_SPACE {
        for c in all_matrix_codes(&field, n, m) {
            all_codes += 1;
            tally.observe(&c);
            let codes = || json!({"code": c.to_json()});
            let range = c.rank_range(cap)?;
            bound.record(c.dim() <= n.max(m) * range.max_rank, codes);
            if is_optimal_anticode(&c, cap)? {
                dual_optimal.record(is_optimal_anticode(&c.dual(), cap)?, codes);
                if !c.is_zero() {
                    let crit = lcd_anticode_criterion(&c, cap)?;
                    sufficient.record(!crit || c.is_lcd(), codes);
                }
            }
        }
    }

    certs.push(dimension.certificate(&params, json!({})));
    certs.push(dual.certificate(&params, json!({})));
    certs.push(sum.certificate(&params, json!({})));
    certs.push(intersection.certificate(&params, json!({})));
    certs.push(transfer.certificate(&params, json!({})));
    certs.push(bound.certificate(&params, json!({"restrictions_optimal": restrictions_optimal, "all_codes": all_codes})));
    certs.push(dual_optimal.certificate(&params, json!({"all_codes": all_codes})));
    certs.push(sufficient.certificate(&params, json!({"criterion_true": criterion_true, "all_codes": all_codes})));

    // span{(1, 0, …)} restricted to n × m: criterion false, yet LCD.
    let e1 = Subspace::new(&field, n, vec![(0..n).map(|i| Scalar(u32::from(i == 0))).collect()])?;
    let documented = only_sufficient.contains(&json!(e1.to_json()));
    let verdict = if only_sufficient.is_empty() { Verdict::NotApplicable } else { Verdict::Pass };
    certs.push(Certificate::new(
        "anticode_sufficient_only",
        params.clone(),
        verdict,
        json!({
            "examples": only_sufficient.len(),
            "first_example": only_sufficient.first(),
            "first_unit_vector_example": documented,
        }),
    ));
    certs.push(tally.certificate(params));
    Ok(())
}
