//! Matrix representations and characters of n-ary groups.

mod hat;
mod linear;
mod maschke;

pub use hat::{
    c_ter_holds, der_b_lift_criteria, equivalent, hat_char, hat_rep, lift_from_retract, p_cond_holds,
    similar_by_oracle, DerBCriteria,
};
pub use linear::{
    classify_ternary_minus, coset_example_group, linear_characters, minus_group, one_dim_exponents,
    one_dim_exponents_by_search, one_dim_reps, orthogonality_check, restrict_to_coset, root_of_unity, CosetExample,
    MinusCandidate, Orthogonality, RootTable,
};
pub use maschke::{invariance_witness, maschke_decompose, GModule, MaschkeSplit};

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::action::conjugacy_classes;
use crate::binary::BinaryGroup;
use crate::budget::scan_tuples;
use crate::cmatrix::{snap, CMatrix, EPS};
use crate::error::{Error, Result};
use crate::nary::NaryGroup;
use crate::report::VerificationReport;
use crate::structure::{is_normal, SubgroupRef};
use crate::Element;

/// One invertible matrix per carrier element, all of the same dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Representation {
    dim: usize,
    images: Vec<CMatrix>,
}

impl Representation {
    pub fn new(images: Vec<CMatrix>) -> Result<Self> {
        let dim = images
            .first()
            .map(CMatrix::dim)
            .ok_or(Error::ImageCount { expected: 1, got: 0 })?;
        if let Some(m) = images.iter().find(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: m.dim(),
            });
        }
        Ok(Representation { dim, images })
    }

    pub fn trivial(order: usize, dim: usize) -> Self {
        Representation {
            dim,
            images: vec![CMatrix::identity(dim); order],
        }
    }

    pub fn from_scalars(values: &[Complex64]) -> Result<Self> {
        Self::new(values.iter().map(|&z| CMatrix::scalar(z)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[CMatrix] {
        &self.images
    }

    pub fn image(&self, x: Element) -> &CMatrix {
        &self.images[x]
    }

    /// Elements whose image is the identity within [`EPS`].
    pub fn kernel_elements(&self) -> Vec<Element> {
        let id = CMatrix::identity(self.dim);
        (0..self.images.len())
            .filter(|&x| self.images[x].approx_eq(&id, EPS))
            .collect()
    }

    /// `x ↦ S·Λ(x)·S⁻¹`; `None` when `S` is singular or of the wrong size.
    pub fn conjugated(&self, s: &CMatrix) -> Option<Self> {
        if s.dim() != self.dim {
            return None;
        }
        let inv = s.inverse()?;
        Some(Representation {
            dim: self.dim,
            images: self.images.iter().map(|m| s.mul(m).mul(&inv)).collect(),
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Representation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::ImageCount {
                expected: self.len(),
                got: other.len(),
            });
        }
        let d = self.dim + other.dim;
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| {
                let mut m = CMatrix::zeros(d);
                for i in 0..a.dim() {
                    for j in 0..a.dim() {
                        m[(i, j)] = a[(i, j)];
                    }
                }
                for i in 0..b.dim() {
                    for j in 0..b.dim() {
                        m[(a.dim() + i, a.dim() + j)] = b[(i, j)];
                    }
                }
                m
            })
            .collect();
        Ok(Representation { dim: d, images })
    }

    pub fn traces(&self) -> Vec<Complex64> {
        self.images.iter().map(CMatrix::trace).collect()
    }

    /// The scalar values of a 1-dimensional representation.
    pub fn scalars(&self) -> Option<Vec<Complex64>> {
        (self.dim == 1).then(|| self.images.iter().map(|m| m[(0, 0)]).collect())
    }
}

fn product(images: &[CMatrix], xs: &[Element], dim: usize) -> CMatrix {
    xs.iter().fold(CMatrix::identity(dim), |acc, &x| acc.mul(&images[x]))
}

fn shape_failures(order: usize, rep: &Representation, report: &mut VerificationReport) -> bool {
    if rep.len() != order {
        report.fail("image count", vec![rep.len()]);
        return true;
    }
    if let Some(x) = (0..order).find(|&x| rep.image(x).det().norm() <= EPS) {
        report.fail("invertible", vec![x]);
        return true;
    }
    false
}

fn homomorphism_witness(g: &NaryGroup, rep: &Representation) -> (Option<Vec<Element>>, bool) {
    let out = scan_tuples(g.order(), g.arity(), g.budget(), |t, _| {
        let lhs = rep.image(g.op(t));
        (!lhs.approx_eq(&product(rep.images(), t, rep.dim()), EPS)).then(|| t.to_vec())
    });
    (out.first, out.sampled)
}

/// `Λ(f(x₁ⁿ)) = Λ(x₁)⋯Λ(x_n)` only, without the kernel condition.
pub fn is_hom_solution(g: &NaryGroup, rep: &Representation) -> bool {
    let mut report = VerificationReport::pass();
    !shape_failures(g.order(), rep, &mut report) && homomorphism_witness(g, rep).0.is_none()
}

/// Homomorphism identity, non-empty kernel, and then `Λ(ē) = Λ(e)^(2−n)`.
pub fn verify_representation(g: &NaryGroup, rep: &Representation) -> VerificationReport {
    let mut report = VerificationReport::pass();
    if shape_failures(g.order(), rep, &mut report) {
        return report;
    }
    let (witness, sampled) = homomorphism_witness(g, rep);
    if sampled {
        report.mark_sampled();
    }
    if let Some(w) = witness {
        report.fail("homomorphism", w);
    }
    if rep.kernel_elements().is_empty() {
        report.fail("kernel non-empty", vec![]);
    }
    if !report.passed() {
        return report;
    }
    let n = g.arity() as i64;
    for e in 0..g.order() {
        let Ok(ebar) = g.skew(e) else {
            report.fail("skew", vec![e]);
            continue;
        };
        let expected = rep.image(e).pow(2 - n).expect("images are invertible");
        if !rep.image(ebar).approx_eq(&expected, EPS) {
            report.fail("skew-power", vec![e]);
        }
    }
    report
}

/// An ordinary representation of a binary group: homomorphism and identity.
pub fn verify_ordinary(b: &BinaryGroup, rep: &Representation) -> VerificationReport {
    let mut report = VerificationReport::pass();
    if shape_failures(b.order(), rep, &mut report) {
        return report;
    }
    'outer: for x in 0..b.order() {
        for y in 0..b.order() {
            if !rep.image(b.mul(x, y)).approx_eq(&rep.image(x).mul(rep.image(y)), EPS) {
                report.fail("homomorphism", vec![x, y]);
                break 'outer;
            }
        }
    }
    if !rep.image(b.identity()).approx_eq(&CMatrix::identity(rep.dim()), EPS) {
        report.fail("identity", vec![b.identity()]);
    }
    report
}

pub(crate) fn require_representation(g: &NaryGroup, rep: &Representation) -> Result<()> {
    let report = verify_representation(g, rep);
    if report.passed() {
        Ok(())
    } else {
        Err(Error::NotARepresentation(report))
    }
}

/// Traces of a representation.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    dim: usize,
    values: Vec<Complex64>,
}

impl Character {
    pub fn new(dim: usize, values: Vec<Complex64>) -> Self {
        Character { dim, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, x: Element) -> Complex64 {
        self.values[x]
    }

    pub fn approx_eq(&self, other: &Character, eps: f64) -> bool {
        self.dim == other.dim
            && self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| (a - b).norm() <= eps)
    }
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let values: Vec<[f64; 2]> = self.values.iter().map(|z| [snap(z.re), snap(z.im)]).collect();
        let mut st = s.serialize_struct("Character", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("values", &values)?;
        st.end()
    }
}

/// Character of a verified representation, checked constant on conjugacy classes.
pub fn character(g: &NaryGroup, rep: &Representation) -> Result<Character> {
    require_representation(g, rep)?;
    let chi = Character::new(rep.dim(), rep.traces());
    for block in conjugacy_classes(g)?.blocks() {
        let v = chi.value(block[0]);
        if let Some(&x) = block.iter().find(|&&x| (chi.value(x) - v).norm() > EPS) {
            return Err(Error::ClaimFailed {
                claim: "a character is constant on conjugacy classes",
                witness: vec![block[0], x],
            });
        }
    }
    Ok(chi)
}

/// `{x : χ(x) = dim}`.
pub fn kernel_chi(g: &NaryGroup, chi: &Character) -> Result<SubgroupRef> {
    let d = Complex64::new(chi.dim() as f64, 0.0);
    let members: Vec<Element> = (0..chi.values().len())
        .filter(|&x| (chi.value(x) - d).norm() <= EPS * chi.dim().max(1) as f64)
        .collect();
    if members.is_empty() {
        return Err(Error::Precondition("the character has an empty kernel".into()));
    }
    SubgroupRef::new(g, members)
}

/// `{x : Λ(x) = I}`, checked equal to the character kernel and normal.
pub fn kernel(g: &NaryGroup, rep: &Representation) -> Result<SubgroupRef> {
    require_representation(g, rep)?;
    let by_matrix = rep.kernel_elements();
    let by_trace = kernel_chi(g, &Character::new(rep.dim(), rep.traces()))?;
    if by_trace.elements() != by_matrix {
        return Err(Error::ClaimFailed {
            claim: "ker chi = ker Lambda",
            witness: by_matrix,
        });
    }
    if !is_normal(g, &by_trace)? {
        return Err(Error::ClaimFailed {
            claim: "the kernel of a representation is normal",
            witness: by_matrix,
        });
    }
    Ok(by_trace)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fixtures;

    pub(crate) fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub(crate) fn sign_t2() -> Representation {
        Representation::from_scalars(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap()
    }

    #[test]
    fn trivial_reps_verify() {
        for name in fixtures::NAMES {
            let g = fixtures::by_name(name).unwrap();
            let r = Representation::trivial(g.order(), 2);
            assert!(verify_representation(&g, &r).passed(), "{name}");
            assert_eq!(kernel(&g, &r).unwrap().len(), g.order());
        }
    }

    #[test]
    fn t2_sign() {
        let g = fixtures::t2();
        let r = sign_t2();
        assert!(verify_representation(&g, &r).passed());
        let chi = character(&g, &r).unwrap();
        assert_eq!(chi.values(), &[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(kernel(&g, &r).unwrap().elements(), &[0]);
    }

    #[test]
    fn t2b_hom_solution_without_kernel() {
        let g = fixtures::t2b();
        let r = Representation::from_scalars(&[c(0.0, 1.0), c(0.0, -1.0)]).unwrap();
        let report = verify_representation(&g, &r);
        assert!(!report.passed());
        assert!(!report.has_failure("homomorphism"));
        assert!(report.has_failure("kernel non-empty"));
        assert!(is_hom_solution(&g, &r));
    }

    #[test]
    fn non_homomorphism_reports_witness() {
        let g = fixtures::t2();
        let r = Representation::from_scalars(&[c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let report = verify_representation(&g, &r);
        assert_eq!(report.first_failure().unwrap().axiom, "homomorphism");
        assert_eq!(report.first_failure().unwrap().witness, vec![0, 1, 1]);
    }

    #[test]
    fn singular_images_rejected() {
        let g = fixtures::t2();
        let r = Representation::from_scalars(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(verify_representation(&g, &r).has_failure("invertible"));
    }
}
