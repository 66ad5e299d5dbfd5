//! n-ary subgroups, normality, cosets, quotients, and the simplicity classification.

use std::collections::HashSet;

use serde::Serialize;

use crate::budget::{scan_tuples, Tuples};
use crate::cmatrix::EPS;
use crate::error::{Error, Result};
use crate::nary::{expand, NaryGroup};
use crate::rep::{require_representation, verify_representation, Representation};
use crate::Element;

/// Largest carrier for which subgroup enumeration is attempted.
pub const SUBGROUP_ENUMERATION_LIMIT: usize = 24;

/// A non-empty subset closed under the operation and under skew, as sorted indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SubgroupRef {
    elements: Vec<Element>,
}

impl SubgroupRef {
    pub fn new(g: &NaryGroup, elements: impl IntoIterator<Item = Element>) -> Result<Self> {
        let mut elements: Vec<Element> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        subgroup_check(g, &elements)?;
        Ok(SubgroupRef { elements })
    }

    pub fn whole(g: &NaryGroup) -> Self {
        SubgroupRef {
            elements: (0..g.order()).collect(),
        }
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<Element>) -> Self {
        SubgroupRef { elements }
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

fn subgroup_check(g: &NaryGroup, elements: &[Element]) -> Result<()> {
    if elements.is_empty() {
        return Err(Error::NotSubgroup {
            reason: "empty",
            witness: vec![],
        });
    }
    elements.iter().try_for_each(|&x| g.check_element(x))?;
    let mut member = vec![false; g.order()];
    for &x in elements {
        member[x] = true;
    }
    for &x in elements {
        let s = g.skew(x)?;
        if !member[s] {
            return Err(Error::NotSubgroup {
                reason: "not closed under skew",
                witness: vec![x],
            });
        }
    }
    let out = scan_tuples(elements.len(), g.arity(), g.budget(), |t, buf| {
        buf.clear();
        buf.extend(t.iter().map(|&i| elements[i]));
        (!member[g.op(buf)]).then(|| buf.clone())
    });
    if let Some(witness) = out.first {
        return Err(Error::NotSubgroup {
            reason: "not closed under the operation",
            witness,
        });
    }
    Ok(())
}

/// Smallest n-ary subgroup containing `seeds`, as a sorted list.
pub fn closure(g: &NaryGroup, seeds: &[Element]) -> Result<Vec<Element>> {
    seeds.iter().try_for_each(|&x| g.check_element(x))?;
    let mut member = vec![false; g.order()];
    let mut list = Vec::new();
    for &x in seeds {
        if !std::mem::replace(&mut member[x], true) {
            list.push(x);
        }
    }
    loop {
        let mut fresh = Vec::new();
        for i in 0..list.len() {
            let s = g.skew(list[i])?;
            if !std::mem::replace(&mut member[s], true) {
                fresh.push(s);
            }
        }
        let mut buf = Vec::with_capacity(g.arity());
        for t in Tuples::new(list.len(), g.arity()) {
            buf.clear();
            buf.extend(t.iter().map(|&i| list[i]));
            let v = g.op(&buf);
            if !std::mem::replace(&mut member[v], true) {
                fresh.push(v);
            }
        }
        if fresh.is_empty() {
            break;
        }
        list.extend(fresh);
    }
    list.sort_unstable();
    Ok(list)
}

/// All n-ary subgroups, sorted lexicographically.
///
/// Starts from the subgroups generated by single elements and joins pairs
/// until nothing new appears. Every subgroup is the join of the cyclic
/// subgroups of its elements, so the fixpoint is the complete list.
pub fn subgroups(g: &NaryGroup) -> Result<Vec<SubgroupRef>> {
    g.require_verified()?;
    if g.order() > SUBGROUP_ENUMERATION_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "subgroup enumeration is limited to order {SUBGROUP_ENUMERATION_LIMIT}"
        )));
    }
    let mut known: HashSet<Vec<Element>> = HashSet::new();
    let mut list: Vec<Vec<Element>> = Vec::new();
    for x in 0..g.order() {
        let h = closure(g, &[x])?;
        if known.insert(h.clone()) {
            list.push(h);
        }
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            let mut seeds = list[i].clone();
            seeds.extend_from_slice(&list[j]);
            let h = closure(g, &seeds)?;
            if known.insert(h.clone()) {
                list.push(h);
            }
        }
        i += 1;
    }
    list.sort();
    Ok(list.into_iter().map(SubgroupRef::from_sorted_unchecked).collect())
}

/// First `(a, h)` with `f(a^(n−3), ā, h, a) ∉ H`.
pub fn normality_witness(g: &NaryGroup, h: &SubgroupRef) -> Result<Option<(Element, Element)>> {
    let n = g.arity();
    for a in 0..g.order() {
        let abar = g.skew(a)?;
        for &x in h.elements() {
            let v = g.op(&expand(&[(a, n - 3), (abar, 1), (x, 1), (a, 1)]));
            if !h.contains(v) {
                return Ok(Some((a, x)));
            }
        }
    }
    Ok(None)
}

pub fn is_normal(g: &NaryGroup, h: &SubgroupRef) -> Result<bool> {
    Ok(normality_witness(g, h)?.is_none())
}

pub fn normal_subgroups(g: &NaryGroup) -> Result<Vec<SubgroupRef>> {
    let mut out = Vec::new();
    for h in subgroups(g)? {
        if is_normal(g, &h)? {
            out.push(h);
        }
    }
    Ok(out)
}

/// Partition of the carrier into left cosets `aH`, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetPartition {
    blocks: Vec<Vec<Element>>,
    representatives: Vec<Element>,
    #[serde(skip)]
    block_of: Vec<usize>,
}

impl CosetPartition {
    pub fn blocks(&self) -> &[Vec<Element>] {
        &self.blocks
    }

    /// Smallest member of each block.
    pub fn representatives(&self) -> &[Element] {
        &self.representatives
    }

    pub fn block_of(&self, x: Element) -> usize {
        self.block_of[x]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// `aH = {f(a, h₂, …, h_n) : h_i ∈ H}`, checked against `{f(a, x^(n−2), y)}`,
/// to partition `G`, and to have all blocks of size `|H|`.
pub fn coset(g: &NaryGroup, h: &SubgroupRef, a: Element) -> Result<Vec<Element>> {
    g.check_element(a)?;
    let n = g.arity();
    let hs = h.elements();
    let mut member = vec![false; g.order()];
    let mut buf = Vec::with_capacity(n);
    for t in Tuples::new(hs.len(), n - 1) {
        buf.clear();
        buf.push(a);
        buf.extend(t.iter().map(|&i| hs[i]));
        member[g.op(&buf)] = true;
    }
    let mut short = vec![false; g.order()];
    for &x in hs {
        for &y in hs {
            short[g.op(&expand(&[(a, 1), (x, n - 2), (y, 1)]))] = true;
        }
    }
    if member != short {
        return Err(Error::ClaimFailed {
            claim: "coset described by f(a, x^(n-2), y)",
            witness: vec![a],
        });
    }
    Ok((0..g.order()).filter(|&x| member[x]).collect())
}

pub fn cosets(g: &NaryGroup, h: &SubgroupRef) -> Result<CosetPartition> {
    let m = g.order();
    let mut block_of = vec![usize::MAX; m];
    let mut blocks: Vec<Vec<Element>> = Vec::new();
    for a in 0..m {
        let c = coset(g, h, a)?;
        if c.len() != h.len() {
            return Err(Error::ClaimFailed {
                claim: "|aH| = |H|",
                witness: vec![a],
            });
        }
        if block_of[a] != usize::MAX {
            if blocks[block_of[a]] != c {
                return Err(Error::ClaimFailed {
                    claim: "cosets partition the carrier",
                    witness: vec![a],
                });
            }
            continue;
        }
        if c.iter().any(|&x| block_of[x] != usize::MAX) {
            return Err(Error::ClaimFailed {
                claim: "cosets partition the carrier",
                witness: vec![a],
            });
        }
        for &x in &c {
            block_of[x] = blocks.len();
        }
        blocks.push(c);
    }
    let representatives = blocks.iter().map(|b| b[0]).collect();
    Ok(CosetPartition {
        blocks,
        representatives,
        block_of,
    })
}

/// `G/H` with `f_H(a₁H, …, a_nH) = f(a₁ⁿ)H`.
#[derive(Debug, Clone)]
pub struct Quotient {
    subgroup: SubgroupRef,
    group: NaryGroup,
    cosets: CosetPartition,
    identity_block: usize,
}

impl Quotient {
    pub fn group(&self) -> &NaryGroup {
        &self.group
    }

    pub fn cosets(&self) -> &CosetPartition {
        &self.cosets
    }

    /// Index of the block `H`, an n-ary identity of the quotient.
    pub fn identity_block(&self) -> usize {
        self.identity_block
    }

    pub fn subgroup(&self) -> &SubgroupRef {
        &self.subgroup
    }

    /// `Ret_H(G/H)`.
    pub fn retract(&self) -> Result<crate::binary::BinaryGroup> {
        self.group.retract(self.identity_block)
    }

    /// `Λ̄(aH) = Λ(a)` for a representation of `G` with `H ⊆ ker Λ`.
    pub fn factor_rep(&self, g: &NaryGroup, rep: &Representation) -> Result<Representation> {
        require_representation(g, rep)?;
        let kernel = rep.kernel_elements();
        if self
            .subgroup
            .elements()
            .iter()
            .any(|x| kernel.binary_search(x).is_err())
        {
            return Err(Error::SubgroupNotInKernel);
        }
        for block in self.cosets.blocks() {
            if let Some(&x) = block
                .iter()
                .find(|&&x| !rep.image(x).approx_eq(rep.image(block[0]), EPS))
            {
                return Err(Error::ClaimFailed {
                    claim: "a representation is constant on cosets of a subgroup of its kernel",
                    witness: vec![block[0], x],
                });
            }
        }
        let images = self
            .cosets
            .representatives()
            .iter()
            .map(|&a| rep.image(a).clone())
            .collect();
        let factored = Representation::new(images)?;
        if let Some(f) = verify_representation(&self.group, &factored).first_failure() {
            return Err(Error::ClaimFailed {
                claim: "the factored representation is a representation of the quotient",
                witness: f.witness.clone(),
            });
        }
        Ok(factored)
    }

    /// `x ↦ Λ̄(xH)` for a representation of the quotient.
    pub fn pull_back(&self, rep: &Representation) -> Result<Representation> {
        require_representation(&self.group, rep)?;
        let images = self.cosets.block_of.iter().map(|&b| rep.image(b).clone()).collect();
        Representation::new(images)
    }
}

pub fn quotient(g: &NaryGroup, h: &SubgroupRef) -> Result<Quotient> {
    g.require_verified()?;
    if let Some((a, x)) = normality_witness(g, h)? {
        return Err(Error::NotNormal { witness: vec![a, x] });
    }
    let cosets = cosets(g, h)?;
    let reps = cosets.representatives().to_vec();
    let out = scan_tuples(g.order(), g.arity(), g.budget(), |t, buf| {
        buf.clear();
        buf.extend(t.iter().map(|&x| reps[cosets.block_of(x)]));
        (cosets.block_of(g.op(t)) != cosets.block_of(g.op(buf))).then(|| t.to_vec())
    });
    if let Some(witness) = out.first {
        return Err(Error::ClaimFailed {
            claim: "quotient operation is well defined",
            witness,
        });
    }
    let group = NaryGroup::from_fn(cosets.len(), g.arity(), |bt| {
        let args: Vec<Element> = bt.iter().map(|&b| reps[b]).collect();
        cosets.block_of(g.op(&args))
    })?
    .with_budget(g.budget());
    if let Some(fail) = group.verify_nary_group().first_failure() {
        return Err(Error::ClaimFailed {
            claim: "quotient is an n-ary group",
            witness: fail.witness.clone(),
        });
    }
    let identity_block = cosets.block_of(h.elements()[0]);
    let n = g.arity();
    for x in 0..group.order() {
        for i in 0..n {
            let mut args = vec![identity_block; n];
            args[i] = x;
            if group.op(&args) != x {
                return Err(Error::ClaimFailed {
                    claim: "H is an n-ary identity of G/H",
                    witness: args,
                });
            }
        }
    }
    Ok(Quotient {
        subgroup: h.clone(),
        group,
        cosets,
        identity_block,
    })
}

/// Outcome of the simplicity analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum Simplicity {
    /// Normal subgroups other than `G` with at least two elements exist.
    HasProperNormal { proper: Vec<SubgroupRef> },
    /// A singleton normal subgroup `{central}` exists and `G = der_b(B)` with `B` abelian.
    BDerivedAbelian { central: Element, b: Element },
    /// A singleton normal subgroup exists and `G` is derived from a non-abelian group.
    ReducibleNonabelian { central: Element },
    /// `G` is its only normal subgroup; the search found nothing else.
    StronglySimpleCandidate,
}

impl Simplicity {
    pub fn name(&self) -> &'static str {
        match self {
            Simplicity::HasProperNormal { .. } => "has-proper-normal",
            Simplicity::BDerivedAbelian { .. } => "b-derived-abelian",
            Simplicity::ReducibleNonabelian { .. } => "reducible-nonabelian",
            Simplicity::StronglySimpleCandidate => "strongly-simple-candidate",
        }
    }
}

pub fn classify_simplicity(g: &NaryGroup) -> Result<Simplicity> {
    let normal = normal_subgroups(g)?;
    let proper: Vec<SubgroupRef> = normal
        .iter()
        .filter(|h| h.len() >= 2 && h.len() < g.order())
        .cloned()
        .collect();
    if !proper.is_empty() {
        return Ok(Simplicity::HasProperNormal { proper });
    }
    let Some(p) = normal.iter().find(|h| h.len() == 1).map(|h| h.elements()[0]) else {
        return Ok(Simplicity::StronglySimpleCandidate);
    };
    if !g.is_central(p) {
        return Err(Error::ClaimFailed {
            claim: "a singleton normal subgroup consists of a central element",
            witness: vec![p],
        });
    }
    let data = g.hg_decompose(p)?;
    if !data.phi().is_identity() {
        return Err(Error::ClaimFailed {
            claim: "a central element yields a b-derived form",
            witness: vec![p],
        });
    }
    if data.group().is_abelian() {
        Ok(Simplicity::BDerivedAbelian {
            central: p,
            b: data.b(),
        })
    } else if data.b() == data.group().identity() {
        Ok(Simplicity::ReducibleNonabelian { central: p })
    } else {
        Err(Error::ClaimFailed {
            claim: "a simple non-abelian b-derived group is reducible",
            witness: vec![p, data.b()],
        })
    }
}
