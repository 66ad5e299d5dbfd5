//! Finite n-ary groupoids and the n-ary group axioms.

use std::sync::OnceLock;

use crate::binary::BinaryGroup;
use crate::budget::{scan_tuples, tuple_count, Budget, Tuples};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::retract_hg::HgData;
use crate::Element;

/// Lowest `(2n−1)`-tuple, with the lowest failing position, on which the
/// bracketings of a dense table disagree. Rows share the first `2n−2`
/// coordinates; only the last one varies inside a row.
fn associativity_witness(table: &[u32], m: usize, n: usize) -> Option<(usize, Vec<Element>)> {
    use rayon::prelude::*;
    let prefix_len = 2 * n - 2;
    let rows = m.pow(prefix_len as u32);
    let per_chunk = (4096 / m).max(1);
    let idx = |xs: &[Element]| xs.iter().fold(0, |acc, &x| acc * m + x);
    let chunks = rows.div_ceil(per_chunk);
    (0..chunks).into_par_iter().find_map_first(|c| {
        let start = c * per_chunk;
        let end = (start + per_chunk).min(rows);
        let mut p = vec![0; prefix_len];
        let mut r = start;
        for slot in p.iter_mut().rev() {
            *slot = r % m;
            r /= m;
        }
        let mut bases = vec![0usize; n - 1];
        let mut buf = Vec::with_capacity(n);
        for _ in start..end {
            // j < n−1: the inner bracket avoids the last coordinate
            for (j, base) in bases.iter_mut().enumerate() {
                let inner = table[idx(&p[j..j + n])] as usize;
                buf.clear();
                buf.extend_from_slice(&p[..j]);
                buf.push(inner);
                buf.extend_from_slice(&p[j + n..]);
                *base = idx(&buf) * m;
            }
            let head = idx(&p[..n - 1]) * m;
            let tail = idx(&p[n - 1..]) * m;
            for x in 0..m {
                let v0 = table[bases[0] + x];
                let last = table[head + table[tail + x] as usize];
                let bad = (1..n - 1)
                    .find(|&j| table[bases[j] + x] != v0)
                    .or_else(|| (last != v0).then_some(n - 1));
                if let Some(j) = bad {
                    let mut t = p.clone();
                    t.push(x);
                    return Some((j + 1, t));
                }
            }
            for slot in p.iter_mut().rev() {
                *slot += 1;
                if *slot < m {
                    break;
                }
                *slot = 0;
            }
        }
        None
    })
}

/// Upper bound on the number of entries of a dense table.
pub const DENSE_LIMIT: usize = 1 << 24;

#[derive(Debug, Clone)]
enum Backend {
    /// Row-major table, entry for `(x_1..x_n)` at `Σ x_k·m^(n−k)`.
    Dense(Vec<u32>),
    Hg(Box<HgForm>),
}

#[derive(Debug, Clone)]
struct HgForm {
    data: HgData,
    /// `phi_powers[k][x] = φ^k(x)` for `k < n`.
    phi_powers: Vec<Vec<Element>>,
}

/// A finite carrier `0..order` with an operation of arity `n ≥ 3`.
///
/// The operation is stored either as a dense table or as Hosszú–Gluskin data
/// `(B, φ, b)`, evaluated as `x₁·φ(x₂)·…·φ^(n−1)(x_n)·b`. Skew elements and the
/// outcome of [`NaryGroup::verify_nary_group`] are cached on first use.
#[derive(Debug, Clone)]
pub struct NaryGroup {
    order: usize,
    arity: usize,
    backend: Backend,
    budget: Budget,
    skew_cache: Vec<OnceLock<Result<Element>>>,
    verified: OnceLock<VerificationReport>,
}

impl NaryGroup {
    pub fn from_table(order: usize, arity: usize, table: Vec<Element>) -> Result<Self> {
        check_shape(order, arity)?;
        let expected = dense_len(order, arity)?;
        if table.len() != expected {
            return Err(Error::TableLength {
                expected,
                got: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= order) {
            return Err(Error::IndexOutOfRange { index: bad, order });
        }
        let table = table.into_iter().map(|v| v as u32).collect();
        Ok(Self::with_backend(order, arity, Backend::Dense(table)))
    }

    /// Tabulates `f` over all `order^arity` tuples.
    pub fn from_fn(order: usize, arity: usize, f: impl Fn(&[Element]) -> Element) -> Result<Self> {
        check_shape(order, arity)?;
        dense_len(order, arity)?;
        let table = Tuples::new(order, arity).map(|t| f(&t)).collect();
        Self::from_table(order, arity, table)
    }

    pub(crate) fn from_hg(data: HgData) -> Self {
        let n = data.arity();
        let m = data.group().order();
        let mut phi_powers = Vec::with_capacity(n);
        let mut current: Vec<Element> = (0..m).collect();
        for _ in 0..n {
            let next = current.iter().map(|&x| data.phi().apply(x)).collect();
            phi_powers.push(std::mem::replace(&mut current, next));
        }
        Self::with_backend(m, n, Backend::Hg(Box::new(HgForm { data, phi_powers })))
    }

    fn with_backend(order: usize, arity: usize, backend: Backend) -> Self {
        NaryGroup {
            order,
            arity,
            backend,
            budget: Budget::default(),
            skew_cache: (0..order).map(|_| OnceLock::new()).collect(),
            verified: OnceLock::new(),
        }
    }

    /// Replaces the exhaustiveness budget; cached verification is discarded.
    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self.verified = OnceLock::new();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.backend, Backend::Dense(_))
    }

    /// Hosszú–Gluskin data when the group is stored in that form.
    pub fn hg_data(&self) -> Option<&HgData> {
        match &self.backend {
            Backend::Hg(form) => Some(&form.data),
            Backend::Dense(_) => None,
        }
    }

    /// Table entries in row-major order (materialized for HG-backed groups).
    pub fn table(&self) -> Result<Vec<Element>> {
        match &self.backend {
            Backend::Dense(t) => Ok(t.iter().map(|&v| v as usize).collect()),
            Backend::Hg(_) => {
                dense_len(self.order, self.arity)?;
                Ok(Tuples::new(self.order, self.arity).map(|t| self.op(&t)).collect())
            }
        }
    }

    pub fn to_dense(&self) -> Result<NaryGroup> {
        Ok(NaryGroup::from_table(self.order, self.arity, self.table()?)?.with_budget(self.budget))
    }

    /// Copy of the group with the table entry at `tuple` replaced by `value`.
    pub fn with_entry(&self, tuple: &[Element], value: Element) -> Result<NaryGroup> {
        self.check_args(tuple)?;
        self.check_element(value)?;
        let mut table = self.table()?;
        table[self.table_index(tuple)] = value;
        Ok(NaryGroup::from_table(self.order, self.arity, table)?.with_budget(self.budget))
    }

    pub fn table_index(&self, tuple: &[Element]) -> usize {
        tuple.iter().fold(0, |acc, &x| acc * self.order + x)
    }

    /// Lowest tuple on which the two operations differ.
    pub fn first_difference(&self, other: &NaryGroup) -> Option<Vec<Element>> {
        if self.order != other.order || self.arity != other.arity {
            return Some(Vec::new());
        }
        Tuples::new(self.order, self.arity).find(|t| self.op(t) != other.op(t))
    }

    pub fn same_operation(&self, other: &NaryGroup) -> bool {
        self.first_difference(other).is_none()
    }

    pub(crate) fn check_element(&self, x: Element) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                order: self.order,
            })
        }
    }

    fn check_args(&self, xs: &[Element]) -> Result<()> {
        if xs.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: xs.len(),
            });
        }
        xs.iter().try_for_each(|&x| self.check_element(x))
    }

    pub fn eval(&self, xs: &[Element]) -> Result<Element> {
        self.check_args(xs)?;
        Ok(self.op(xs))
    }

    /// Unchecked evaluation; `xs` must have `arity` in-range entries.
    #[inline]
    pub(crate) fn op(&self, xs: &[Element]) -> Element {
        debug_assert_eq!(xs.len(), self.arity);
        match &self.backend {
            Backend::Dense(t) => t[self.table_index(xs)] as usize,
            Backend::Hg(form) => {
                let group = form.data.group();
                let acc = xs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .fold(xs[0], |acc, (k, &x)| group.mul(acc, form.phi_powers[k][x]));
                group.mul(acc, form.data.b())
            }
        }
    }

    /// Evaluates a sequence of length `k(n−1)+1`, `k ≥ 1`, by repeatedly
    /// replacing the first `n` entries with their image.
    pub fn eval_long(&self, xs: &[Element]) -> Result<Element> {
        if xs.len() < self.arity || !(xs.len() - 1).is_multiple_of(self.arity - 1) {
            return Err(Error::InvalidLength {
                len: xs.len(),
                arity: self.arity,
            });
        }
        xs.iter().try_for_each(|&x| self.check_element(x))?;
        Ok(self.fold(xs))
    }

    pub(crate) fn fold(&self, xs: &[Element]) -> Element {
        let n = self.arity;
        let mut buf = Vec::with_capacity(n);
        let mut acc = self.op(&xs[..n]);
        for chunk in xs[n..].chunks(n - 1) {
            buf.clear();
            buf.push(acc);
            buf.extend_from_slice(chunk);
            acc = self.op(&buf);
        }
        acc
    }

    /// Evaluates a run-length encoded argument list, e.g. `[(x, 1), (a, n−2), (y, 1)]`.
    pub fn eval_runs(&self, runs: &[(Element, usize)]) -> Result<Element> {
        self.eval_long(&expand(runs))
    }

    pub(crate) fn op_runs(&self, runs: &[(Element, usize)]) -> Element {
        self.fold(&expand(runs))
    }

    /// The unique `z` with `f(x, …, x, z) = x`.
    pub fn skew(&self, x: Element) -> Result<Element> {
        self.check_element(x)?;
        self.skew_cache[x]
            .get_or_init(|| match &self.backend {
                Backend::Hg(form) => Ok(hg_skew(form, self.arity, x)),
                Backend::Dense(_) => self.skew_by_scan(x),
            })
            .clone()
    }

    /// Skew element found by scanning all candidates, bypassing any closed form.
    pub fn skew_by_scan(&self, x: Element) -> Result<Element> {
        self.check_element(x)?;
        let mut args = vec![x; self.arity];
        let mut found = None;
        for z in 0..self.order {
            args[self.arity - 1] = z;
            if self.op(&args) == x {
                if found.is_some() {
                    return Err(Error::AmbiguousSkew(x));
                }
                found = Some(z);
            }
        }
        found.ok_or(Error::NoSkew(x))
    }

    pub fn skew_table(&self) -> Result<Vec<Element>> {
        (0..self.order).map(|x| self.skew(x)).collect()
    }

    /// Checks `f(x₁^(i−1), f(x_i^(n+i−1)), x_(n+i)^(2n−1))` against `i = 1` for every `i`.
    pub fn verify_associativity(&self) -> VerificationReport {
        let n = self.arity;
        if self.budget.covers(tuple_count(self.order, 2 * n - 1)) {
            let table = match &self.backend {
                Backend::Dense(t) => Some(std::borrow::Cow::Borrowed(t.as_slice())),
                Backend::Hg(_) => self
                    .table()
                    .ok()
                    .map(|t| std::borrow::Cow::Owned(t.into_iter().map(|v| v as u32).collect())),
            };
            if let Some(table) = table {
                let mut report = VerificationReport::pass();
                if let Some((j, witness)) = associativity_witness(&table, self.order, n) {
                    report.fail(format!("associativity(1,{j})"), witness);
                }
                return report;
            }
        }
        let out = scan_tuples(self.order, 2 * n - 1, self.budget, |t, buf| {
            let mut first = None;
            for i in 0..n {
                buf.clear();
                buf.extend_from_slice(&t[..i]);
                buf.push(self.op(&t[i..i + n]));
                buf.extend_from_slice(&t[i + n..]);
                let v = self.op(buf);
                match first {
                    None => first = Some(v),
                    Some(f) if f != v => return Some((i + 1, t.to_vec())),
                    Some(_) => {}
                }
            }
            None
        });
        let mut report = VerificationReport::pass();
        if out.sampled {
            report.mark_sampled();
        }
        if let Some((j, witness)) = out.first {
            report.fail(format!("associativity(1,{j})"), witness);
        }
        report
    }

    /// Unique solvability at every place: each translation `z ↦ f(…, z, …)` is a bijection.
    pub fn verify_quasigroup(&self) -> VerificationReport {
        let (m, n) = (self.order, self.arity);
        let mut report = VerificationReport::pass();
        for place in 0..n {
            let out = scan_tuples(m, n - 1, self.budget, |rest, buf| {
                let mut seen = vec![false; m];
                buf.clear();
                buf.extend_from_slice(&rest[..place]);
                buf.push(0);
                buf.extend_from_slice(&rest[place..]);
                for z in 0..m {
                    buf[place] = z;
                    let v = self.op(buf);
                    if std::mem::replace(&mut seen[v], true) {
                        return Some(buf.clone());
                    }
                }
                None
            });
            if out.sampled {
                report.mark_sampled();
            }
            if let Some(witness) = out.first {
                report.fail(format!("solvability({})", place + 1), witness);
            }
        }
        report
    }

    /// Dörnte identities: for all `x, y`, `2 ≤ i, j ≤ n`, `1 ≤ k ≤ n`,
    /// `f(x^(i−2), x̄, x^(n−i), y) = y = f(y, x^(n−j), x̄, x^(j−2))` and
    /// `f(x^(k−1), x̄, x^(n−k)) = x`.
    pub fn verify_dornte(&self) -> VerificationReport {
        let (m, n) = (self.order, self.arity);
        let mut report = VerificationReport::pass();
        let mut skews = Vec::with_capacity(m);
        for x in 0..m {
            match self.skew(x) {
                Ok(s) => skews.push(s),
                Err(_) => {
                    report.fail("skew", vec![x]);
                    return report;
                }
            }
        }
        let record = |report: &mut VerificationReport, name: String, witness: Vec<Element>| {
            if !report.has_failure(&name) {
                report.fail(name, witness);
            }
        };
        for x in 0..m {
            let xb = skews[x];
            for y in 0..m {
                for i in 2..=n {
                    let args = expand(&[(x, i - 2), (xb, 1), (x, n - i), (y, 1)]);
                    if self.op(&args) != y {
                        record(&mut report, format!("dornte-left({i})"), args);
                    }
                    let args = expand(&[(y, 1), (x, n - i), (xb, 1), (x, i - 2)]);
                    if self.op(&args) != y {
                        record(&mut report, format!("dornte-right({i})"), args);
                    }
                }
            }
            for k in 1..=n {
                let args = expand(&[(x, k - 1), (xb, 1), (x, n - k)]);
                if self.op(&args) != x {
                    record(&mut report, format!("dornte-skew({k})"), args);
                }
            }
        }
        report
    }

    /// Associativity, unique solvability, and (when skews exist) the Dörnte identities.
    pub fn verify_nary_group(&self) -> VerificationReport {
        self.verification().clone()
    }

    fn verification(&self) -> &VerificationReport {
        self.verified.get_or_init(|| {
            let mut report = self.verify_associativity();
            let quasi = self.verify_quasigroup();
            let solvable = quasi.passed();
            report.merge(quasi);
            if solvable {
                report.merge(self.verify_dornte());
            }
            report
        })
    }

    pub fn is_verified(&self) -> bool {
        self.verification().passed()
    }

    pub fn require_verified(&self) -> Result<()> {
        let report = self.verification();
        if report.passed() {
            Ok(())
        } else {
            Err(Error::Unverified(report.clone()))
        }
    }

    /// An element `e` with `f(e, …, e, x, e, …, e) = x` for every `x` and position.
    pub fn has_nary_identity(&self) -> Option<Element> {
        let (m, n) = (self.order, self.arity);
        (0..m).find(|&e| {
            let mut args = vec![e; n];
            (0..m).all(|x| {
                (0..n).all(|i| {
                    args[i] = x;
                    let ok = self.op(&args) == x;
                    args[i] = e;
                    ok
                })
            })
        })
    }

    /// Checks `f(x₁ⁿ) = f(x_n, x₂^(n−1), x₁)`.
    pub fn semiabelian_report(&self) -> VerificationReport {
        let n = self.arity;
        let out = scan_tuples(self.order, n, self.budget, |t, buf| {
            buf.clear();
            buf.extend_from_slice(t);
            buf.swap(0, n - 1);
            (self.op(t) != self.op(buf)).then(|| t.to_vec())
        });
        let mut report = VerificationReport::pass();
        if out.sampled {
            report.mark_sampled();
        }
        if let Some(w) = out.first {
            report.fail("semiabelian", w);
        }
        report
    }

    pub fn is_semiabelian(&self) -> bool {
        self.semiabelian_report().passed()
    }

    /// Checks the medial law over `n×n` argument matrices (row-major witness);
    /// when it holds, also checks that skew commutes with `f`.
    pub fn medial_report(&self) -> VerificationReport {
        let n = self.arity;
        let out = scan_tuples(self.order, n * n, self.budget, |t, buf| {
            let rows: Vec<Element> = t.chunks(n).map(|row| self.op(row)).collect();
            buf.clear();
            buf.extend((0..n).map(|c| {
                let col: Vec<Element> = (0..n).map(|r| t[r * n + c]).collect();
                self.op(&col)
            }));
            (self.op(&rows) != self.op(buf)).then(|| t.to_vec())
        });
        let mut report = VerificationReport::pass();
        if out.sampled {
            report.mark_sampled();
        }
        if let Some(w) = out.first {
            report.fail("medial", w);
            return report;
        }
        let skews = match self.skew_table() {
            Ok(s) => s,
            Err(_) => {
                report.fail("skew", vec![]);
                return report;
            }
        };
        let out = scan_tuples(self.order, n, self.budget, |t, buf| {
            buf.clear();
            buf.extend(t.iter().map(|&x| skews[x]));
            (skews[self.op(t)] != self.op(buf)).then(|| t.to_vec())
        });
        if out.sampled {
            report.mark_sampled();
        }
        if let Some(w) = out.first {
            report.fail("skew-homomorphism", w);
        }
        report
    }

    pub fn is_medial(&self) -> bool {
        !self.medial_report().has_failure("medial")
    }

    /// `p` can be moved to any argument position without changing the value.
    pub fn is_central(&self, p: Element) -> bool {
        if p >= self.order {
            return false;
        }
        let n = self.arity;
        let out = scan_tuples(self.order, n - 1, self.budget, |rest, buf| {
            buf.clear();
            buf.push(p);
            buf.extend_from_slice(rest);
            let reference = self.op(buf);
            for i in 1..n {
                buf.swap(i - 1, i);
                if self.op(buf) != reference {
                    return Some(());
                }
            }
            None
        });
        out.first.is_none()
    }

    pub fn central_elements(&self) -> Vec<Element> {
        (0..self.order).filter(|&p| self.is_central(p)).collect()
    }
}

fn hg_skew(form: &HgForm, n: usize, x: Element) -> Element {
    // f(x,…,x,z) = x·φ(x)·…·φ^(n−2)(x)·b·z
    let group: &BinaryGroup = form.data.group();
    let inner = (1..n - 1).fold(group.identity(), |acc, k| group.mul(acc, form.phi_powers[k][x]));
    group.inv(group.mul(inner, form.data.b()))
}

pub(crate) fn expand(runs: &[(Element, usize)]) -> Vec<Element> {
    runs.iter()
        .flat_map(|&(x, count)| std::iter::repeat_n(x, count))
        .collect()
}

fn check_shape(order: usize, arity: usize) -> Result<()> {
    if arity < 3 {
        return Err(Error::InvalidArity(arity));
    }
    if order == 0 {
        return Err(Error::Precondition("empty carrier".into()));
    }
    Ok(())
}

fn dense_len(order: usize, arity: usize) -> Result<usize> {
    let len = tuple_count(order, arity);
    if len > DENSE_LIMIT as u128 {
        return Err(Error::TableTooLarge { order, arity });
    }
    Ok(len as usize)
}
