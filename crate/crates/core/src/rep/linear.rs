//! One-dimensional representations, orthogonality, and the coset and
//! `x − y + z` examples.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use super::{hat_char, verify_representation, Character, Representation};
use crate::binary::{Automorphism, BinaryGroup};
use crate::budget::Tuples;
use crate::cmatrix::SUM_EPS;
use crate::cover::{covering_group, lift_module_from_cover};
use crate::error::{Error, Result};
use crate::nary::NaryGroup;
use crate::retract_hg::HgData;
use crate::Element;

/// `e^(2πi·k/modulus)`
pub fn root_of_unity(k: u64, modulus: u64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * (k % modulus) as f64 / modulus as f64)
}

/// Linear characters of `b` as exponent vectors: `χ(x) = e^(2πi·k_x/modulus)`.
///
/// Generator images are enumerated over the admissible exponents and
/// propagated by right multiplication; the result is in lexicographic order.
/// `modulus` must be a multiple of every element order.
pub fn linear_characters(b: &BinaryGroup, modulus: u64) -> Vec<Vec<u64>> {
    let gens = b.generators();
    let options: Vec<Vec<u64>> = gens
        .iter()
        .map(|&g| {
            let ord = b.element_order(g) as u64;
            (0..modulus).filter(|k| (k * ord).is_multiple_of(modulus)).collect()
        })
        .collect();
    let mut out = Vec::new();
    let sizes: Vec<usize> = options.iter().map(Vec::len).collect();
    let mut idx = vec![0usize; gens.len()];
    loop {
        let ks: Vec<u64> = idx.iter().zip(&options).map(|(&i, o)| o[i]).collect();
        if let Some(values) = propagate(b, &gens, &ks, modulus) {
            out.push(values);
        }
        let mut pos = gens.len();
        loop {
            if pos == 0 {
                out.sort();
                out.dedup();
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < sizes[pos] {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn propagate(b: &BinaryGroup, gens: &[Element], ks: &[u64], modulus: u64) -> Option<Vec<u64>> {
    let mut val: Vec<Option<u64>> = vec![None; b.order()];
    val[b.identity()] = Some(0);
    let mut queue = vec![b.identity()];
    while let Some(y) = queue.pop() {
        let vy = val[y].expect("queued elements are assigned");
        for (&g, &k) in gens.iter().zip(ks) {
            let z = b.mul(y, g);
            let v = (vy + k) % modulus;
            match val[z] {
                None => {
                    val[z] = Some(v);
                    queue.push(z);
                }
                Some(w) if w != v => return None,
                Some(_) => {}
            }
        }
    }
    let val: Vec<u64> = val.into_iter().collect::<Option<_>>()?;
    let hom = (0..b.order()).all(|x| (0..b.order()).all(|y| val[b.mul(x, y)] == (val[x] + val[y]) % modulus));
    hom.then_some(val)
}

/// Exponent vectors of 1-dimensional representations, all over one modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootTable {
    pub modulus: u64,
    pub exponents: Vec<Vec<u64>>,
}

impl RootTable {
    pub fn representations(&self) -> Vec<Representation> {
        self.exponents
            .iter()
            .map(|ks| {
                let values: Vec<Complex64> = ks.iter().map(|&k| root_of_unity(k, self.modulus)).collect();
                Representation::from_scalars(&values).expect("non-empty carrier")
            })
            .collect()
    }
}

/// Characters of the covering group at anchor 0 whose kernel meets `G`,
/// restricted to `G`, with exponents modulo `|G*|`.
pub fn one_dim_exponents(g: &NaryGroup) -> Result<RootTable> {
    let cover = covering_group(g, 0)?;
    let modulus = cover.group().order() as u64;
    let embed = cover.embedding();
    let mut found = BTreeSet::new();
    for chi in linear_characters(cover.group(), modulus) {
        let values: Vec<Complex64> = chi.iter().map(|&k| root_of_unity(k, modulus)).collect();
        let gamma = Representation::from_scalars(&values)?;
        let restricted: Vec<u64> = embed.iter().map(|&i| chi[i]).collect();
        let lifted = lift_module_from_cover(&cover, &gamma)?;
        if lifted.is_some() != restricted.contains(&0) {
            return Err(Error::ClaimFailed {
                claim: "numerical and exact kernel tests agree",
                witness: embed,
            });
        }
        if lifted.is_some() {
            found.insert(restricted);
        }
    }
    Ok(RootTable {
        modulus,
        exponents: found.into_iter().collect(),
    })
}

/// All 1-dimensional representations via the covering group.
pub fn one_dim_reps(g: &NaryGroup) -> Result<Vec<Representation>> {
    Ok(one_dim_exponents(g)?.representations())
}

/// Direct search over maps `x ↦ k_x (mod modulus)` with
/// `k_{f(t)} = Σ k_{t_i}` for every tuple and some `k_x = 0`.
pub fn one_dim_exponents_by_search(g: &NaryGroup, modulus: u64) -> RootTable {
    let m = g.order();
    // constraints grouped by the largest element they mention
    let mut by_max: Vec<Vec<(Vec<Element>, Element)>> = vec![Vec::new(); m];
    for t in Tuples::new(m, g.arity()) {
        let v = g.op(&t);
        let top = t.iter().copied().chain([v]).max().expect("non-empty tuple");
        by_max[top].push((t, v));
    }
    let mut out = Vec::new();
    let mut ks = vec![0u64; m];
    search(0, &mut ks, modulus, &by_max, &mut out);
    out.retain(|ks: &Vec<u64>| ks.contains(&0));
    RootTable {
        modulus,
        exponents: out,
    }
}

fn search(
    pos: usize,
    ks: &mut Vec<u64>,
    modulus: u64,
    by_max: &[Vec<(Vec<Element>, Element)>],
    out: &mut Vec<Vec<u64>>,
) {
    if pos == ks.len() {
        out.push(ks.clone());
        return;
    }
    for k in 0..modulus {
        ks[pos] = k;
        let ok = by_max[pos]
            .iter()
            .all(|(t, v)| t.iter().map(|&x| ks[x]).sum::<u64>() % modulus == ks[*v]);
        if ok {
            search(pos + 1, ks, modulus, by_max, out);
        }
    }
}

/// `(1/|G|)·Σ_x χ₁(f(e^(n−2), x, p̄₁))·conj χ₂(f(e^(n−2), x, p̄₂))` and the
/// value expected for irreducible characters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Orthogonality {
    pub value: [f64; 2],
    pub expected: f64,
}

impl Orthogonality {
    pub fn holds(&self) -> bool {
        (Complex64::new(self.value[0], self.value[1]) - self.expected).norm() <= SUM_EPS
    }
}

pub fn orthogonality_check(
    g: &NaryGroup,
    chi1: &Character,
    p1: Element,
    chi2: &Character,
    p2: Element,
    e: Element,
) -> Result<Orthogonality> {
    let h1 = hat_char(g, chi1, e, p1)?;
    let h2 = hat_char(g, chi2, e, p2)?;
    let sum: Complex64 = h1.values().iter().zip(h2.values()).map(|(a, b)| a * b.conj()).sum();
    let value = sum / g.order() as f64;
    let same = h1.approx_eq(&h2, SUM_EPS);
    Ok(Orthogonality {
        value: [crate::cmatrix::snap(value.re), crate::cmatrix::snap(value.im)],
        expected: if same { 1.0 } else { 0.0 },
    })
}

/// A candidate `Λ(x) = A·Λ′(x)` for `(B, x − y + z)` in dimension 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinusCandidate {
    /// `A = Λ(0)`, an involution.
    pub sign: i8,
    /// `Λ′` as exponents modulo `|B|`.
    pub character: Vec<u64>,
    pub hom_solution: bool,
    pub representation: bool,
    /// `A·Λ′(y)·A = Λ′(y)⁻¹` for all `y`.
    pub compatible: bool,
}

impl MinusCandidate {
    pub fn values(&self) -> Vec<Complex64> {
        let modulus = self.character.len() as u64;
        self.character
            .iter()
            .map(|&k| root_of_unity(k, modulus) * self.sign as f64)
            .collect()
    }
}

/// `(B, x − y + z)` built from the inversion automorphism.
pub fn minus_group(b: &BinaryGroup) -> Result<NaryGroup> {
    if !b.is_abelian() {
        return Err(Error::Precondition("the carrier group must be abelian".into()));
    }
    Ok(HgData::new(b.clone(), Automorphism::inversion(b)?, b.identity(), 3)?.construct())
}

/// Every pair `(A, Λ′)` with `A = ±1` and `Λ′` a linear character of `B`,
/// marked by whether `A·Λ′` is a representation of `(B, x − y + z)`.
pub fn classify_ternary_minus(b: &BinaryGroup) -> Result<Vec<MinusCandidate>> {
    let g = minus_group(b)?;
    let modulus = b.order() as u64;
    let mut out = Vec::new();
    for sign in [1i8, -1] {
        for chi in linear_characters(b, modulus) {
            let mut cand = MinusCandidate {
                sign,
                compatible: chi.iter().all(|&k| (2 * k) % modulus == 0),
                character: chi,
                hom_solution: false,
                representation: false,
            };
            let rep = Representation::from_scalars(&cand.values())?;
            cand.hom_solution = super::is_hom_solution(&g, &rep);
            cand.representation = verify_representation(&g, &rep).passed();
            out.push(cand);
        }
    }
    Ok(out)
}

/// The two coset constructions of n-ary groups inside a binary group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetExample {
    /// `f(x, y, z) = xyz` on `aH`, `H` normal and `a ∉ H` an involution.
    Involution,
    /// `f(x₁, …, x_n) = a·x₁⋯x_n` on `aH`, `a ∉ H` central of order `n`.
    Central { arity: usize },
}

/// The n-ary group on the coset `aH`, its elements indexed in increasing
/// order of their index in `a_group`. Returns the group and that list.
pub fn coset_example_group(
    a_group: &BinaryGroup,
    h: &[Element],
    a: Element,
    kind: CosetExample,
) -> Result<(NaryGroup, Vec<Element>)> {
    let mut h = h.to_vec();
    h.sort_unstable();
    h.dedup();
    if a >= a_group.order() || h.iter().any(|&x| x >= a_group.order()) {
        return Err(Error::Precondition("element outside the group".into()));
    }
    if h.contains(&a) {
        return Err(Error::Precondition("a lies in H".into()));
    }
    let arity = match kind {
        CosetExample::Involution => {
            if !a_group.is_normal_subgroup(&h) {
                return Err(Error::Precondition("H is not a normal subgroup".into()));
            }
            if a_group.mul(a, a) != a_group.identity() {
                return Err(Error::Precondition("a is not an involution".into()));
            }
            3
        }
        CosetExample::Central { arity } => {
            if arity < 3 {
                return Err(Error::InvalidArity(arity));
            }
            if !a_group.is_subgroup(&h) {
                return Err(Error::Precondition("H is not a subgroup".into()));
            }
            if !a_group.is_central(a) || a_group.element_order(a) != arity {
                return Err(Error::Precondition("a is not central of order n".into()));
            }
            arity
        }
    };
    let mut coset: Vec<Element> = h.iter().map(|&x| a_group.mul(a, x)).collect();
    coset.sort_unstable();
    let pos = |x: Element| coset.binary_search(&x);
    let closed = std::sync::atomic::AtomicBool::new(true);
    let g = NaryGroup::from_fn(coset.len(), arity, |t| {
        let prod = a_group.product(t.iter().map(|&i| coset[i]));
        let v = match kind {
            CosetExample::Involution => prod,
            CosetExample::Central { .. } => a_group.mul(a, prod),
        };
        pos(v).unwrap_or_else(|_| {
            closed.store(false, std::sync::atomic::Ordering::Relaxed);
            0
        })
    })?;
    if !closed.load(std::sync::atomic::Ordering::Relaxed) {
        return Err(Error::ClaimFailed {
            claim: "the coset is closed under the operation",
            witness: coset,
        });
    }
    if let Some(f) = g.verify_nary_group().first_failure() {
        return Err(Error::ClaimFailed {
            claim: "the coset operation is an n-ary group",
            witness: f.witness.clone(),
        });
    }
    Ok((g, coset))
}

/// Restricts a representation of the ambient group to the coset carrier.
pub fn restrict_to_coset(rep: &Representation, coset: &[Element]) -> Result<Representation> {
    Representation::new(coset.iter().map(|&x| rep.image(x).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn linear_character_counts() {
        assert_eq!(linear_characters(&BinaryGroup::klein(), 4).len(), 4);
        assert_eq!(linear_characters(&BinaryGroup::cyclic(4), 4).len(), 4);
        assert_eq!(linear_characters(&BinaryGroup::symmetric(3), 6).len(), 2);
        assert_eq!(linear_characters(&BinaryGroup::quaternion(), 8).len(), 4);
        assert_eq!(linear_characters(&BinaryGroup::dihedral(4), 8).len(), 4);
    }

    #[test]
    fn one_dim_counts() {
        for (name, count) in [("T2", 3), ("T2b", 1), ("Z4M", 3)] {
            let g = fixtures::by_name(name).unwrap();
            let cover = one_dim_exponents(&g).unwrap();
            assert_eq!(cover.exponents.len(), count, "{name}");
            assert_eq!(one_dim_exponents_by_search(&g, cover.modulus), cover, "{name}");
            for r in one_dim_reps(&g).unwrap() {
                assert!(verify_representation(&g, &r).passed());
            }
        }
    }

    #[test]
    fn orthogonality_of_t2_characters() {
        let g = fixtures::t2();
        let reps = one_dim_reps(&g).unwrap();
        let chars: Vec<Character> = reps.iter().map(|r| Character::new(1, r.traces())).collect();
        // (1,−1) and (−1,1) share the hat character (1,−1).
        let hats: Vec<Vec<i64>> = reps
            .iter()
            .map(|r| {
                let s = r.scalars().unwrap();
                (0..2).map(|x| (s[0] * s[x]).re.round() as i64).collect()
            })
            .collect();
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let p1 = reps[i].kernel_elements()[0];
                let p2 = reps[j].kernel_elements()[0];
                let o = orthogonality_check(&g, a, p1, b, p2, 0).unwrap();
                assert!(o.holds());
                assert_eq!(o.expected, if hats[i] == hats[j] { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn ternary_minus_classification() {
        for (order, valid) in [(4, 3), (2, 3), (3, 1)] {
            let cands = classify_ternary_minus(&BinaryGroup::cyclic(order)).unwrap();
            assert_eq!(cands.iter().filter(|c| c.representation).count(), valid, "Z{order}");
            for c in &cands {
                assert_eq!(c.hom_solution, c.compatible);
            }
        }
    }

    #[test]
    fn coset_examples() {
        let klein = BinaryGroup::klein();
        let (g, coset) = coset_example_group(&klein, &[0, 1], 2, CosetExample::Involution).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(coset, vec![2, 3]);
        let z4 = BinaryGroup::cyclic(4);
        assert!(matches!(
            coset_example_group(&z4, &[0, 2], 1, CosetExample::Involution),
            Err(Error::Precondition(_))
        ));
        let (g, coset) = coset_example_group(&z4, &[0, 2], 1, CosetExample::Central { arity: 4 }).unwrap();
        assert_eq!(coset, vec![1, 3]);
        assert!(g.verify_nary_group().passed());
        // characters of Z4 with 1 in the kernel are trivial
        let rep = Representation::trivial(4, 1);
        assert!(verify_representation(&g, &restrict_to_coset(&rep, &coset).unwrap()).passed());
    }
}
