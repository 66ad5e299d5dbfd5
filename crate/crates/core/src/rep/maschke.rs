//! Complete reducibility of G-modules.

use num_complex::Complex64;
use serde::Serialize;

use super::{require_representation, Representation};
use crate::cmatrix::{nullspace, projector, row_reduce, CMatrix, EPS};
use crate::error::{Error, Result};
use crate::nary::NaryGroup;
use crate::Element;

/// A representation together with an element acting as the identity.
#[derive(Debug, Clone)]
pub struct GModule {
    rep: Representation,
    p: Element,
}

impl GModule {
    pub fn new(g: &NaryGroup, rep: Representation, p: Element) -> Result<Self> {
        require_representation(g, &rep)?;
        g.check_element(p)?;
        if !rep.image(p).approx_eq(&CMatrix::identity(rep.dim()), EPS) {
            return Err(Error::NotInKernel(p));
        }
        Ok(GModule { rep, p })
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn p(&self) -> Element {
        self.p
    }
}

/// The averaged projector and a basis of its kernel.
#[derive(Debug, Clone, Serialize)]
pub struct MaschkeSplit {
    pub theta: CMatrix,
    #[serde(skip)]
    pub complement: Vec<Vec<Complex64>>,
}

fn rank_of(vectors: &[Vec<Complex64>], d: usize) -> usize {
    row_reduce(vectors.to_vec(), d).1.len()
}

fn apply(m: &CMatrix, v: &[Complex64]) -> Vec<Complex64> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| m[(i, j)] * v[j]).sum())
        .collect()
}

/// First `x` with `Λ(x)·W ⊄ W`.
pub fn invariance_witness(rep: &Representation, basis: &[Vec<Complex64>]) -> Option<Element> {
    let d = rep.dim();
    let r = rank_of(basis, d);
    (0..rep.len()).find(|&x| {
        basis.iter().any(|w| {
            let mut ext = basis.to_vec();
            ext.push(apply(rep.image(x), w));
            rank_of(&ext, d) > r
        })
    })
}

/// Splits `V = W ⊕ ker θ` for an invariant subspace `W`.
///
/// `θ = (1/|G|)·Σ_x Λ(x⁻¹)·P·Λ(x)`, where `P` projects onto `W` along a
/// coordinate complement and `x⁻¹` is the inverse in `Ret_p(G)`. The images
/// of `Λ` form a homomorphic image of that retract since `Λ(p)` is the
/// identity. For ternary groups `x⁻¹` is the skew element of `x`.
pub fn maschke_decompose(g: &NaryGroup, module: &GModule, w: &[Vec<Complex64>]) -> Result<MaschkeSplit> {
    let rep = module.rep();
    let d = rep.dim();
    if let Some(v) = w.iter().find(|v| v.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: v.len(),
        });
    }
    if rank_of(w, d) != w.len() {
        return Err(Error::Precondition("the basis of W is linearly dependent".into()));
    }
    if let Some(x) = invariance_witness(rep, w) {
        return Err(Error::NotInvariant(x));
    }
    let mut basis = w.to_vec();
    let mut complement = Vec::new();
    for i in 0..d {
        let mut e = vec![Complex64::new(0.0, 0.0); d];
        e[i] = Complex64::new(1.0, 0.0);
        let mut ext = basis.clone();
        ext.push(e.clone());
        if rank_of(&ext, d) > basis.len() {
            basis.push(e.clone());
            complement.push(e);
        }
    }
    let p_w = projector(w, &complement).ok_or_else(|| Error::Precondition("W has no complement".into()))?;

    let p = module.p();
    let scale = Complex64::new(1.0 / g.order() as f64, 0.0);
    let mut theta = CMatrix::zeros(d);
    for x in 0..g.order() {
        let xinv = g.retract_inverse(p, x)?;
        let lx = rep.image(x);
        if let Some(inv) = lx.inverse() {
            if !rep.image(xinv).approx_eq(&inv, EPS) {
                return Err(Error::ClaimFailed {
                    claim: "Lambda maps retract inverses to matrix inverses",
                    witness: vec![p, x],
                });
            }
        }
        theta = theta.add(&rep.image(xinv).mul(&p_w).mul(lx));
    }
    let theta = theta.scale(scale);

    let claim = |claim: &'static str, witness: Vec<Element>| Err(Error::ClaimFailed { claim, witness });
    if !theta.mul(&theta).approx_eq(&theta, EPS) {
        return claim("theta is idempotent", vec![]);
    }
    if let Some(x) = (0..g.order()).find(|&x| !theta.mul(rep.image(x)).approx_eq(&rep.image(x).mul(&theta), EPS)) {
        return claim("theta is equivariant", vec![x]);
    }
    if w.iter()
        .any(|v| apply(&theta, v).iter().zip(v).any(|(a, b)| (a - b).norm() > EPS))
        || theta.rank() != w.len()
    {
        return claim("theta projects onto W", vec![]);
    }
    let kernel = nullspace(theta.rows(), d);
    if kernel.len() + w.len() != d {
        return claim("V = W + ker theta", vec![]);
    }
    let mut all = w.to_vec();
    all.extend(kernel.iter().cloned());
    if rank_of(&all, d) != d {
        return claim("V = W + ker theta", vec![]);
    }
    if let Some(x) = invariance_witness(rep, &kernel) {
        return claim("ker theta is invariant", vec![x]);
    }
    Ok(MaschkeSplit {
        theta,
        complement: kernel,
    })
}
