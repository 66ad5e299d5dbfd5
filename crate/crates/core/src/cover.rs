//! The smallest covering group `G*_a = G × Z_{n−1}` and transfer of
//! representations from it.

use serde::Serialize;

use crate::binary::BinaryGroup;
use crate::budget::scan_tuples;
use crate::error::{Error, Result};
use crate::nary::{expand, NaryGroup};
use crate::rep::{verify_ordinary, verify_representation, Representation};
use crate::report::VerificationReport;
use crate::Element;

/// `⟨x, t⟩` with `t ∈ [0, n−1)`; its index in the cover is `x·(n−1) + t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoverElement {
    pub x: Element,
    pub t: usize,
}

#[derive(Debug, Clone)]
pub struct CoveringGroup {
    base: NaryGroup,
    anchor: Element,
    group: BinaryGroup,
}

impl CoveringGroup {
    pub fn base(&self) -> &NaryGroup {
        &self.base
    }

    pub fn anchor(&self) -> Element {
        self.anchor
    }

    pub fn group(&self) -> &BinaryGroup {
        &self.group
    }

    fn cycle(&self) -> usize {
        self.base.arity() - 1
    }

    pub fn index(&self, e: CoverElement) -> Element {
        e.x * self.cycle() + e.t
    }

    pub fn element(&self, i: Element) -> CoverElement {
        CoverElement {
            x: i / self.cycle(),
            t: i % self.cycle(),
        }
    }

    /// Index of `⟨x, 0⟩`.
    pub fn embed(&self, x: Element) -> Element {
        self.index(CoverElement { x, t: 0 })
    }

    pub fn embedding(&self) -> Vec<Element> {
        (0..self.base.order()).map(|x| self.embed(x)).collect()
    }
}

fn cover_product(g: &NaryGroup, a: Element, abar: Element, p: CoverElement, q: CoverElement) -> CoverElement {
    let n = g.arity();
    let t = (p.t + q.t + 1) % (n - 1);
    let seq = expand(&[(p.x, 1), (a, p.t), (q.x, 1), (a, q.t), (abar, 1), (a, n - 2 - t)]);
    CoverElement { x: g.fold(&seq), t }
}

/// `⟨x,t⟩⁻¹ = ⟨f_*(ā, a^(n−2−t), x̄, x^(n−3), ā, a^(n−2−k)), k⟩` with
/// `k = (n−3−t) mod (n−1)`.
///
/// The last run is `a^(t+1)` except for `t = n−2`, where `k = n−2` and the
/// run is empty.
pub fn cover_inverse_formula(g: &NaryGroup, a: Element, e: CoverElement) -> Result<CoverElement> {
    let n = g.arity();
    let abar = g.skew(a)?;
    let xbar = g.skew(e.x)?;
    let k = (2 * n - 4 - e.t) % (n - 1);
    let seq = expand(&[
        (abar, 1),
        (a, n - 2 - e.t),
        (xbar, 1),
        (e.x, n - 3),
        (abar, 1),
        (a, n - 2 - k),
    ]);
    Ok(CoverElement { x: g.fold(&seq), t: k })
}

pub fn covering_group(g: &NaryGroup, a: Element) -> Result<CoveringGroup> {
    g.require_verified()?;
    g.check_element(a)?;
    let k = g.arity() - 1;
    let abar = g.skew(a)?;
    let split = |i: Element| CoverElement { x: i / k, t: i % k };
    let group = BinaryGroup::from_fn(g.order() * k, |i, j| {
        let c = cover_product(g, a, abar, split(i), split(j));
        c.x * k + c.t
    })
    .map_err(|e| match e {
        Error::NotAGroup { witness, .. } => Error::ClaimFailed {
            claim: "the covering group is a group",
            witness,
        },
        other => other,
    })?;
    let cover = CoveringGroup {
        base: g.clone(),
        anchor: a,
        group,
    };
    let identity = cover.index(CoverElement { x: abar, t: k - 1 });
    if cover.group.identity() != identity {
        return Err(Error::ClaimFailed {
            claim: "<a-bar, n-2> is the identity of the cover",
            witness: vec![cover.group.identity()],
        });
    }
    for i in 0..cover.group.order() {
        let formula = cover.index(cover_inverse_formula(g, a, cover.element(i))?);
        if formula != cover.group.inv(i) {
            return Err(Error::ClaimFailed {
                claim: "cover inverse formula",
                witness: vec![i, formula, cover.group.inv(i)],
            });
        }
    }
    Ok(cover)
}

/// `H = {⟨x, n−2⟩}`, checked normal with cyclic quotient of order `n−1` and
/// isomorphic to the retract at the anchor.
pub fn cover_h(c: &CoveringGroup) -> Result<Vec<Element>> {
    let k = c.cycle();
    let h: Vec<Element> = (0..c.base.order())
        .map(|x| c.index(CoverElement { x, t: k - 1 }))
        .collect();
    let grp = &c.group;
    if !grp.is_normal_subgroup(&h) {
        return Err(Error::ClaimFailed {
            claim: "H is a normal subgroup of the cover",
            witness: h,
        });
    }
    let mut member = vec![false; grp.order()];
    for &x in &h {
        member[x] = true;
    }
    let quotient_order = |g: Element| {
        let mut p = g;
        let mut j = 1;
        while !member[p] {
            p = grp.mul(p, g);
            j += 1;
        }
        j
    };
    if !(0..grp.order()).any(|g| quotient_order(g) == k)
        || (0..grp.order()).any(|g| !k.is_multiple_of(quotient_order(g)))
    {
        return Err(Error::ClaimFailed {
            claim: "the cover modulo H is cyclic of order n-1",
            witness: h,
        });
    }
    let retract = c.base.retract(c.anchor)?;
    if !grp.restrict(&h)?.is_isomorphic(&retract)? {
        return Err(Error::ClaimFailed {
            claim: "H is isomorphic to the retract",
            witness: h,
        });
    }
    Ok(h)
}

/// `⟨x₁,0⟩·…·⟨x_n,0⟩ = ⟨f(x₁ⁿ), 0⟩` for all n-tuples.
pub fn verify_embedding(c: &CoveringGroup) -> VerificationReport {
    let g = &c.base;
    let mut report = VerificationReport::pass();
    let out = scan_tuples(g.order(), g.arity(), g.budget(), |t, _| {
        let prod = c.group.product(t.iter().map(|&x| c.embed(x)));
        (prod != c.embed(g.op(t))).then(|| t.to_vec())
    });
    if out.sampled {
        report.mark_sampled();
    }
    if let Some(w) = out.first {
        report.fail("embedding", w);
    }
    report
}

/// Restricts a representation of the cover to `G` when its kernel meets `G`.
pub fn lift_module_from_cover(c: &CoveringGroup, gamma: &Representation) -> Result<Option<Representation>> {
    let report = verify_ordinary(&c.group, gamma);
    if !report.passed() {
        return Err(Error::NotARepresentation(report));
    }
    let images = c.embedding().into_iter().map(|i| gamma.image(i).clone()).collect();
    let lam = Representation::new(images)?;
    if lam.kernel_elements().is_empty() {
        return Ok(None);
    }
    let report = verify_representation(&c.base, &lam);
    if let Some(f) = report.first_failure() {
        return Err(Error::ClaimFailed {
            claim: "a cover representation whose kernel meets G restricts to a representation",
            witness: f.witness.clone(),
        });
    }
    Ok(Some(lam))
}
