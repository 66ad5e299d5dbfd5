//! Binary retracts and the Hosszú–Gluskin form of an n-ary group.

use crate::binary::{Automorphism, BinaryGroup};
use crate::budget::scan_tuples;
use crate::error::{Error, Result};
use crate::nary::NaryGroup;
use crate::report::VerificationReport;
use crate::Element;

/// `(B, φ, b)` with `φ(b) = b` and `φ^(n−1)(x) = b·x·b⁻¹`, describing the
/// operation `x₁·φ(x₂)·…·φ^(n−1)(x_n)·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HgData {
    group: BinaryGroup,
    phi: Automorphism,
    b: Element,
    arity: usize,
}

impl HgData {
    pub fn new(group: BinaryGroup, phi: Automorphism, b: Element, arity: usize) -> Result<Self> {
        if arity < 3 {
            return Err(Error::InvalidArity(arity));
        }
        let m = group.order();
        if b >= m {
            return Err(Error::IndexOutOfRange { index: b, order: m });
        }
        let phi = Automorphism::new(&group, phi.as_slice().to_vec())?;
        if phi.apply(b) != b {
            return Err(Error::HgCondition {
                condition: "(2) phi(b) = b",
                witness: vec![b],
            });
        }
        let top = phi.pow(arity - 1);
        if let Some(x) = (0..m).find(|&x| top.apply(x) != group.conjugate(x, b)) {
            return Err(Error::HgCondition {
                condition: "(3) phi^(n-1)(x) = b x b^-1",
                witness: vec![x],
            });
        }
        Ok(HgData { group, phi, b, arity })
    }

    pub fn group(&self) -> &BinaryGroup {
        &self.group
    }

    pub fn phi(&self) -> &Automorphism {
        &self.phi
    }

    pub fn b(&self) -> Element {
        self.b
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Re-checks conditions (1)–(3) from scratch.
    pub fn check(&self) -> VerificationReport {
        let mut report = VerificationReport::pass();
        if let Err(e) = BinaryGroup::from_table(self.group.order(), self.group.table().to_vec()) {
            let witness = match e {
                Error::NotAGroup { witness, .. } => witness,
                _ => vec![],
            };
            report.fail("hg(1) group", witness);
        }
        if let Err(e) = Automorphism::new(&self.group, self.phi.as_slice().to_vec()) {
            let witness = match e {
                Error::NotAutomorphism { witness, .. } => witness,
                _ => vec![],
            };
            report.fail("hg(2) automorphism", witness);
        }
        if self.phi.apply(self.b) != self.b {
            report.fail("hg(2) phi(b)=b", vec![self.b]);
        }
        let top = self.phi.pow(self.arity - 1);
        if let Some(x) = (0..self.group.order()).find(|&x| top.apply(x) != self.group.conjugate(x, self.b)) {
            report.fail("hg(3) phi^(n-1)=conj(b)", vec![x]);
        }
        report
    }

    /// Condition (4): `g` agrees with `x₁·φ(x₂)·…·φ^(n−1)(x_n)·b` on every tuple.
    pub fn reproduces(&self, g: &NaryGroup) -> VerificationReport {
        let mut report = VerificationReport::pass();
        if g.order() != self.group.order() || g.arity() != self.arity {
            report.fail("hg(4) shape", vec![]);
            return report;
        }
        let phis: Vec<Automorphism> = (0..self.arity).map(|k| self.phi.pow(k)).collect();
        let out = scan_tuples(g.order(), self.arity, g.budget(), |t, _| {
            let value = t.iter().zip(&phis).fold(self.group.identity(), |acc, (&x, phi)| {
                self.group.mul(acc, phi.apply(x))
            });
            (self.group.mul(value, self.b) != g.op(t)).then(|| t.to_vec())
        });
        if out.sampled {
            report.mark_sampled();
        }
        if let Some(w) = out.first {
            report.fail("hg(4) operation", w);
        }
        report
    }

    /// The n-ary group `(φ, b)`-derived from the carried group.
    pub fn construct(self) -> NaryGroup {
        NaryGroup::from_hg(self)
    }
}

/// Builds the n-ary group of `data`; its invariants were checked on construction.
pub fn hg_construct(data: HgData) -> NaryGroup {
    data.construct()
}

impl BinaryGroup {
    /// `f(x₁ⁿ) = x₁·x₂·…·x_n`.
    pub fn derived(&self, arity: usize) -> Result<NaryGroup> {
        self.b_derived(self.identity(), arity)
    }

    /// `f(x₁ⁿ) = x₁·x₂·…·x_n·b` for central `b`.
    pub fn b_derived(&self, b: Element, arity: usize) -> Result<NaryGroup> {
        if b >= self.order() {
            return Err(Error::IndexOutOfRange {
                index: b,
                order: self.order(),
            });
        }
        if !self.is_central(b) {
            return Err(Error::NotCentral(b));
        }
        let data = HgData::new(self.clone(), Automorphism::identity(self.order()), b, arity)?;
        Ok(data.construct())
    }
}

impl NaryGroup {
    /// `Ret_a(G)`: `x∗y = f(x, a, …, a, y)`. The identity is checked to be `ā`
    /// and the closed-form inverse is checked against the table.
    pub fn retract(&self, a: Element) -> Result<BinaryGroup> {
        self.require_verified()?;
        self.check_element(a)?;
        let n = self.arity();
        let group = BinaryGroup::from_fn(self.order(), |x, y| self.op_runs(&[(x, 1), (a, n - 2), (y, 1)])).map_err(
            |e| match e {
                Error::NotAGroup { witness, .. } => Error::ClaimFailed {
                    claim: "retracts are groups",
                    witness,
                },
                other => other,
            },
        )?;
        let abar = self.skew(a)?;
        if group.identity() != abar {
            return Err(Error::ClaimFailed {
                claim: "identity of Ret_a is the skew of a",
                witness: vec![a, group.identity()],
            });
        }
        for x in 0..self.order() {
            if self.retract_inverse(a, x)? != group.inv(x) {
                return Err(Error::ClaimFailed {
                    claim: "retract inverse formula",
                    witness: vec![a, x],
                });
            }
        }
        Ok(group)
    }

    /// Inverse of `x` in `Ret_a(G)` by the closed form `f(ā, x^(n−3), x̄, ā)`.
    pub fn retract_inverse(&self, a: Element, x: Element) -> Result<Element> {
        let n = self.arity();
        let abar = self.skew(a)?;
        let xbar = self.skew(x)?;
        Ok(self.op_runs(&[(abar, 1), (x, n - 3), (xbar, 1), (abar, 1)]))
    }

    /// `h(x) = f(e, …, e, x, p̄)`, checked to be an isomorphism `Ret_e(G) → Ret_p(G)`.
    pub fn retract_isomorphism(&self, e: Element, p: Element) -> Result<Vec<Element>> {
        let source = self.retract(e)?;
        let target = self.retract(p)?;
        let pbar = self.skew(p)?;
        let n = self.arity();
        let h: Vec<Element> = (0..self.order())
            .map(|x| self.op_runs(&[(e, n - 2), (x, 1), (pbar, 1)]))
            .collect();
        if !source.is_isomorphism_to(&target, &h) {
            return Err(Error::ClaimFailed {
                claim: "h(x) = f(e^(n-2), x, skew(p)) is an isomorphism of retracts",
                witness: vec![e, p],
            });
        }
        Ok(h)
    }

    /// Hosszú–Gluskin data over `Ret_a(G)` with `φ(x) = f(ā, x, a^(n−2))` and
    /// `b = f(ā, …, ā)`; every condition is verified before returning.
    pub fn hg_decompose(&self, a: Element) -> Result<HgData> {
        let group = self.retract(a)?;
        let n = self.arity();
        let abar = self.skew(a)?;
        let phi: Vec<Element> = (0..self.order())
            .map(|x| self.op_runs(&[(abar, 1), (x, 1), (a, n - 2)]))
            .collect();
        let b = self.op_runs(&[(abar, n)]);
        let phi = Automorphism::new(&group, phi)?;
        let data = HgData::new(group, phi, b, n)?;
        let report = data.reproduces(self);
        if let Some(fail) = report.first_failure() {
            return Err(Error::HgCondition {
                condition: "(4) operation",
                witness: fail.witness.clone(),
            });
        }
        Ok(data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn retract_of_z4m_is_z4() {
        let g = fixtures::z4m();
        let r = g.retract(0).unwrap();
        assert_eq!(r.identity(), 0);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(r.mul(x, y), (x + y) % 4);
            }
        }
    }

    #[test]
    fn retract_of_t2b_has_identity_skew() {
        let g = fixtures::t2b();
        let r = g.retract(0).unwrap();
        assert_eq!(r.order(), 2);
        assert_eq!(r.identity(), g.skew(0).unwrap());
        assert_eq!(r.identity(), 1);
    }

    #[test]
    fn retract_requires_verified_group() {
        let g = fixtures::t2().with_entry(&[0, 0, 0], 1).unwrap();
        assert!(matches!(g.retract(0), Err(Error::Unverified(_))));
    }

    #[test]
    fn decompose_derived_s3() {
        let g = fixtures::s3t();
        let s3 = BinaryGroup::symmetric(3);
        for a in 0..6 {
            let data = g.hg_decompose(a).unwrap();
            // the retract at a is x∗y = x a y with identity a⁻¹
            assert_eq!(data.group().identity(), s3.inv(a));
            // b = a⁻³ as an element of the carrier
            assert_eq!(data.b(), s3.pow(a, -3));
            // φ(x) = a⁻¹ x a
            for x in 0..6 {
                assert_eq!(data.phi().apply(x), s3.mul(s3.mul(s3.inv(a), x), a));
            }
        }
    }

    #[test]
    fn decompose_at_identity_of_derived_group_is_trivial() {
        let b = BinaryGroup::quaternion();
        let g = b.derived(4).unwrap();
        let data = g.hg_decompose(b.identity()).unwrap();
        assert!(data.phi().is_identity());
        assert_eq!(data.b(), b.identity());
    }

    #[test]
    fn construct_examples() {
        let z2 = BinaryGroup::cyclic(2);
        let t2b = HgData::new(z2.clone(), Automorphism::identity(2), 1, 3)
            .unwrap()
            .construct();
        assert!(t2b.same_operation(&fixtures::t2b()));

        let z4 = BinaryGroup::cyclic(4);
        let inv = Automorphism::inversion(&z4).unwrap();
        let z4m = HgData::new(z4, inv, 0, 3).unwrap().construct();
        assert!(z4m.same_operation(&fixtures::z4m()));

        assert!(z2.derived(3).unwrap().same_operation(&fixtures::t2()));
        assert!(z2.b_derived(1, 4).unwrap().same_operation(&fixtures::q4()));
    }

    #[test]
    fn b_derived_rejects_non_central() {
        let s3 = BinaryGroup::symmetric(3);
        assert!(matches!(s3.b_derived(2, 3), Err(Error::NotCentral(2))));
    }

    #[test]
    fn construct_rejects_bad_data() {
        let z4 = BinaryGroup::cyclic(4);
        let inv = Automorphism::inversion(&z4).unwrap();
        // φ(1) = 3 ≠ 1
        assert!(matches!(
            HgData::new(z4.clone(), inv.clone(), 1, 3),
            Err(Error::HgCondition { .. })
        ));
        // φ² = id is conjugation by 0, but φ³ = φ is not
        assert!(matches!(HgData::new(z4, inv, 0, 4), Err(Error::HgCondition { witness, .. }) if witness == vec![1]));
    }

    #[test]
    fn retract_isomorphism_examples() {
        let g = fixtures::z4m();
        let h = g.retract_isomorphism(0, 1).unwrap();
        let r0 = g.retract(0).unwrap();
        let r1 = g.retract(1).unwrap();
        assert!(r0.is_isomorphism_to(&r1, &h));
        let s3t = fixtures::s3t();
        for e in 0..6 {
            for p in 0..6 {
                s3t.retract_isomorphism(e, p).unwrap();
            }
        }
    }
}
