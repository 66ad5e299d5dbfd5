//! Standard small n-ary groups and a generator of random Hosszú–Gluskin data.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::binary::{cycle_notation, permutations, Automorphism, BinaryGroup};
use crate::nary::NaryGroup;
use crate::retract_hg::HgData;

/// `(Z₂, x+y+z)`
pub fn t2() -> NaryGroup {
    NaryGroup::from_fn(2, 3, |t| t.iter().sum::<usize>() % 2).expect("T2")
}

/// `(Z₂, x+y+z+1)`
pub fn t2b() -> NaryGroup {
    NaryGroup::from_fn(2, 3, |t| (t.iter().sum::<usize>() + 1) % 2).expect("T2b")
}

/// `(Z₄, x−y+z)`
pub fn z4m() -> NaryGroup {
    NaryGroup::from_fn(4, 3, |t| (t[0] + 4 - t[1] + t[2]) % 4).expect("Z4M")
}

/// `(Z₂, w+x+y+z+1)`, quaternary.
pub fn q4() -> NaryGroup {
    NaryGroup::from_fn(2, 4, |t| (t.iter().sum::<usize>() + 1) % 2).expect("Q4")
}

/// The ternary group derived from S3 (elements as in [`BinaryGroup::symmetric`]).
pub fn s3t() -> NaryGroup {
    BinaryGroup::symmetric(3).derived(3).expect("S3T")
}

/// Cycle-notation labels for the elements of [`BinaryGroup::symmetric`]`(k)`.
pub fn symmetric_labels(k: usize) -> Vec<String> {
    permutations(k).iter().map(|p| cycle_notation(p)).collect()
}

pub fn by_name(name: &str) -> Option<NaryGroup> {
    match name.to_ascii_lowercase().as_str() {
        "t2" => Some(t2()),
        "t2b" => Some(t2b()),
        "z4m" => Some(z4m()),
        "q4" => Some(q4()),
        "s3t" => Some(s3t()),
        _ => None,
    }
}

pub const NAMES: [&str; 5] = ["T2", "T2b", "Z4M", "S3T", "Q4"];

/// Small groups used as carriers for random Hosszú–Gluskin data.
pub fn small_groups(max_order: usize) -> Vec<BinaryGroup> {
    let c2 = BinaryGroup::cyclic(2);
    let mut groups: Vec<BinaryGroup> = (1..=max_order).map(BinaryGroup::cyclic).collect();
    let extra = [
        BinaryGroup::klein(),
        BinaryGroup::symmetric(3),
        BinaryGroup::dihedral(4),
        BinaryGroup::quaternion(),
        BinaryGroup::direct_product(&c2, &BinaryGroup::cyclic(4)),
        BinaryGroup::direct_product(&BinaryGroup::klein(), &c2),
    ];
    groups.extend(extra.into_iter().filter(|g| g.order() <= max_order));
    groups
}

/// Uniformly chosen valid `(B, φ, b)` over a random small group of order ≤ `max_order`.
pub fn random_hg_data<R: Rng + ?Sized>(rng: &mut R, max_order: usize, arity: usize) -> HgData {
    let groups = small_groups(max_order);
    let group = groups.choose(rng).expect("non-empty catalog").clone();
    let autos = group.automorphisms().expect("small group");
    let mut candidates: Vec<(Automorphism, usize)> = Vec::new();
    for phi in &autos {
        let top = phi.pow(arity - 1);
        for b in 0..group.order() {
            if phi.apply(b) == b && (0..group.order()).all(|x| top.apply(x) == group.conjugate(x, b)) {
                candidates.push((phi.clone(), b));
            }
        }
    }
    let (phi, b) = candidates.choose(rng).expect("identity data always qualifies").clone();
    HgData::new(group, phi, b, arity).expect("filtered candidates satisfy the conditions")
}
