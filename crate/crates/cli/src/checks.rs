//! Self-contained checks on field towers and bases, shared by the suite and
//! the `field` report.

use std::collections::BTreeMap;

use rankmetric::basis::{dual_basis, for_each_ordered_basis, ordered_basis_count, trace_pairing, ExtensionBasis};
use rankmetric::linalg;
use rankmetric::{Elem, FieldOps, FieldTower, Scalar};
use serde::Serialize;
use std::sync::Arc;

/// Largest field checked on every pair and triple of elements.
pub const EXHAUSTIVE_FIELD_ORDER: u32 = 256;
const MAX_REPORTED: usize = 5;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FieldCheck {
    pub exhaustive: bool,
    pub pairs: u64,
    pub triples: u64,
    pub violation_count: u64,
    pub violations: Vec<String>,
}

impl FieldCheck {
    pub fn ok(&self) -> bool {
        self.violation_count == 0
    }

    fn fail(&mut self, msg: impl FnOnce() -> String) {
        self.violation_count += 1;
        if self.violations.len() < MAX_REPORTED {
            self.violations.push(msg());
        }
    }
}

fn sample(t: &FieldTower, size: u32) -> Vec<Elem> {
    let order = t.order();
    if order <= size {
        return t.elements().collect();
    }
    let step = order / size;
    let mut v: Vec<Elem> = (0..size).map(|i| Elem(i * step)).collect();
    v.push(Elem(order - 1));
    v.push(Elem(1));
    v.sort();
    v.dedup();
    v
}

/// Field axioms, Frobenius homomorphism and trace fibre sizes. Exhaustive up
/// to [`EXHAUSTIVE_FIELD_ORDER`] elements, on an evenly spaced sample above.
pub fn check_field(t: &FieldTower) -> FieldCheck {
    let order = t.order();
    let mut out = FieldCheck { exhaustive: order <= EXHAUSTIVE_FIELD_ORDER, ..FieldCheck::default() };
    let pair_set = sample(t, 4096);
    let triple_set = sample(t, EXHAUSTIVE_FIELD_ORDER);
    let (zero, one) = (t.zero(), t.one());
    let m = t.m() as i64;

    for &a in &pair_set {
        if t.add(a, zero) != a || t.mul(a, one) != a || t.add(a, t.neg(a)) != zero {
            out.fail(|| format!("identity or negation fails at {}", t.format(a)));
        }
        match t.inv(a) {
            Some(i) if a != zero && t.mul(a, i) == one => {}
            None if a == zero => {}
            _ => out.fail(|| format!("inverse fails at {}", t.format(a))),
        }
        if t.frobenius(a, m) != a {
            out.fail(|| format!("Frobenius^m moves {}", t.format(a)));
        }
        let fa = t.frobenius(a, 1);
        for &b in &pair_set {
            out.pairs += 1;
            if t.add(a, b) != t.add(b, a) || t.mul(a, b) != t.mul(b, a) {
                out.fail(|| format!("commutativity fails at ({}, {})", t.format(a), t.format(b)));
            }
            let fb = t.frobenius(b, 1);
            if t.frobenius(t.add(a, b), 1) != t.add(fa, fb) || t.frobenius(t.mul(a, b), 1) != t.mul(fa, fb) {
                out.fail(|| format!("Frobenius not a homomorphism at ({}, {})", t.format(a), t.format(b)));
            }
        }
    }
    for &a in &triple_set {
        for &b in &triple_set {
            let ab = t.mul(a, b);
            let a_plus_b = t.add(a, b);
            for &c in &triple_set {
                out.triples += 1;
                if t.mul(ab, c) != t.mul(a, t.mul(b, c))
                    || t.add(a_plus_b, c) != t.add(a, t.add(b, c))
                    || t.mul(a, t.add(b, c)) != t.add(ab, t.mul(a, c))
                {
                    out.fail(|| format!("associativity/distributivity fails at ({a:?}, {b:?}, {c:?})"));
                }
            }
        }
    }
    for c in 0..t.q() {
        let s = t.embed(Scalar(c));
        if t.frobenius(s, 1) != s {
            out.fail(|| format!("Frobenius moves base element {c}"));
        }
    }
    let mut fibres: BTreeMap<Scalar, u64> = BTreeMap::new();
    for a in t.elements() {
        *fibres.entry(t.trace(a)).or_default() += 1;
    }
    let expected = (t.q() as u64).pow(t.m() as u32 - 1);
    if fibres.len() as u32 != t.q() || fibres.values().any(|&c| c != expected) {
        out.fail(|| format!("trace fibres are not uniform: {fibres:?}"));
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DualBasisCheck {
    pub total: u128,
    pub checked: u64,
    pub stride: u64,
    pub violation_count: u64,
    pub violations: Vec<Vec<Vec<Vec<u32>>>>,
}

/// Pairs every ordered basis (or every `stride`-th one when there are more
/// than `limit`) with its dual and checks the pairing is the identity and
/// that dualizing twice returns the basis.
pub fn check_dual_bases(t: &Arc<FieldTower>, limit: u64) -> DualBasisCheck {
    let total = ordered_basis_count(t);
    let stride = total.div_ceil(limit.max(1) as u128).max(1) as u64;
    let mut out = DualBasisCheck { total, stride, ..DualBasisCheck::default() };
    let base = t.base().clone();
    let mut index = 0u64;
    for_each_ordered_basis(t, |els| {
        index += 1;
        if !(index - 1).is_multiple_of(stride) {
            return;
        }
        out.checked += 1;
        let b = ExtensionBasis::new(t, els.to_vec()).expect("enumerated tuples are bases");
        let d = dual_basis(&b);
        let ok = linalg::is_identity(&*base, &trace_pairing(t, els, d.elements())) && dual_basis(&d) == b;
        if !ok {
            out.violation_count += 1;
            if out.violations.len() < MAX_REPORTED {
                out.violations.push(b.to_json());
            }
        }
    });
    out
}
