//! Ordinary finite groups given by Cayley tables.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::Element;

/// Largest order accepted by the isomorphism search.
pub const ISOMORPHISM_LIMIT: usize = 64;

/// A finite group on `0..order`. Construction verifies the group axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryGroup {
    order: usize,
    table: Vec<Element>,
    identity: Element,
    inverse: Vec<Element>,
}

impl BinaryGroup {
    pub fn from_table(order: usize, table: Vec<Element>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Precondition("empty carrier".into()));
        }
        if table.len() != order * order {
            return Err(Error::TableLength {
                expected: order * order,
                got: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= order) {
            return Err(Error::IndexOutOfRange { index: bad, order });
        }
        let mul = |x: usize, y: usize| table[x * order + y];
        for x in 0..order {
            for y in 0..order {
                let xy = mul(x, y);
                for z in 0..order {
                    if mul(xy, z) != mul(x, mul(y, z)) {
                        return Err(Error::NotAGroup {
                            axiom: "associativity",
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or(Error::NotAGroup {
                axiom: "identity",
                witness: vec![],
            })?;
        let mut inverse = Vec::with_capacity(order);
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| mul(x, y) == identity && mul(y, x) == identity)
                .ok_or(Error::NotAGroup {
                    axiom: "inverse",
                    witness: vec![x],
                })?;
            inverse.push(inv);
        }
        Ok(BinaryGroup {
            order,
            table,
            identity,
            inverse,
        })
    }

    pub fn from_fn(order: usize, f: impl Fn(Element, Element) -> Element) -> Result<Self> {
        let table = (0..order * order).map(|i| f(i / order, i % order)).collect();
        Self::from_table(order, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn inverse_table(&self) -> &[Element] {
        &self.inverse
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.table[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: Element) -> Element {
        self.inverse[x]
    }

    pub fn product(&self, xs: impl IntoIterator<Item = Element>) -> Element {
        xs.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, x: Element, k: i64) -> Element {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, x: Element) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.identity {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    /// `g x g⁻¹`
    pub fn conjugate(&self, x: Element, g: Element) -> Element {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_central(&self, x: Element) -> bool {
        (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x))
    }

    pub fn center(&self) -> Vec<Element> {
        (0..self.order).filter(|&x| self.is_central(x)).collect()
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[Element]) -> Vec<Element> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// Greedy generating set: scan elements in index order, keep those not yet generated.
    pub fn generators(&self) -> Vec<Element> {
        let mut gens = Vec::new();
        let mut covered = vec![false; self.order];
        covered[self.identity] = true;
        for x in 0..self.order {
            if !covered[x] {
                gens.push(x);
                for y in self.generated_subgroup(&gens) {
                    covered[y] = true;
                }
            }
        }
        gens
    }

    pub fn is_subgroup(&self, set: &[Element]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            if x >= self.order {
                return false;
            }
            member[x] = true;
        }
        !set.is_empty()
            && set
                .iter()
                .all(|&x| member[self.inv(x)] && set.iter().all(|&y| member[self.mul(x, y)]))
    }

    pub fn is_normal_subgroup(&self, set: &[Element]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            if x < self.order {
                member[x] = true;
            }
        }
        self.is_subgroup(set)
            && set
                .iter()
                .all(|&h| (0..self.order).all(|g| member[self.conjugate(h, g)]))
    }

    /// The subgroup on `set` as a group of its own, with element `i` standing for `set[i]`.
    pub fn restrict(&self, set: &[Element]) -> Result<BinaryGroup> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if !self.is_subgroup(&sorted) {
            return Err(Error::Precondition("subset is not a subgroup".into()));
        }
        let pos = |x: Element| sorted.binary_search(&x).expect("closed subset");
        let k = sorted.len();
        BinaryGroup::from_fn(k, |i, j| pos(self.mul(sorted[i], sorted[j])))
    }

    pub fn is_homomorphism_to(&self, other: &BinaryGroup, map: &[Element]) -> bool {
        map.len() == self.order
            && map.iter().all(|&v| v < other.order)
            && (0..self.order).all(|x| (0..self.order).all(|y| map[self.mul(x, y)] == other.mul(map[x], map[y])))
    }

    pub fn is_isomorphism_to(&self, other: &BinaryGroup, map: &[Element]) -> bool {
        if self.order != other.order || !self.is_homomorphism_to(other, map) {
            return false;
        }
        let mut hit = vec![false; other.order];
        map.iter().all(|&v| !std::mem::replace(&mut hit[v], true))
    }

    /// First isomorphism found by backtracking on generator images (deterministic order).
    pub fn isomorphism_to(&self, other: &BinaryGroup) -> Result<Option<Vec<Element>>> {
        Ok(self.isomorphisms(other, Some(1))?.pop())
    }

    pub fn is_isomorphic(&self, other: &BinaryGroup) -> Result<bool> {
        Ok(self.isomorphism_to(other)?.is_some())
    }

    /// All automorphisms, in the order the backtracking search finds them.
    pub fn automorphisms(&self) -> Result<Vec<Automorphism>> {
        Ok(self
            .isomorphisms(self, None)?
            .into_iter()
            .map(|perm| Automorphism { perm })
            .collect())
    }

    fn isomorphisms(&self, other: &BinaryGroup, limit: Option<usize>) -> Result<Vec<Vec<Element>>> {
        if self.order > ISOMORPHISM_LIMIT || other.order > ISOMORPHISM_LIMIT {
            return Err(Error::BudgetExceeded(format!(
                "isomorphism search is limited to order {ISOMORPHISM_LIMIT}"
            )));
        }
        let mut found = Vec::new();
        if self.order != other.order {
            return Ok(found);
        }
        let gens = self.generators();
        let mut start = vec![None; self.order];
        start[self.identity] = Some(other.identity);
        let search = IsoSearch {
            source: self,
            target: other,
            gens: &gens,
            orders: (0..other.order).map(|y| other.element_order(y)).collect(),
            limit,
        };
        search.run(0, start, &mut Vec::new(), &mut found);
        Ok(found)
    }

    pub fn cyclic(order: usize) -> BinaryGroup {
        BinaryGroup::from_fn(order, |x, y| (x + y) % order).expect("cyclic group")
    }

    pub fn klein() -> BinaryGroup {
        BinaryGroup::from_fn(4, |x, y| x ^ y).expect("klein group")
    }

    /// Symmetric group on `k` points. Elements are permutations in lexicographic
    /// order of their one-line form; `x·y` applies `y` first.
    pub fn symmetric(k: usize) -> BinaryGroup {
        let perms = permutations(k);
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("permutation");
        BinaryGroup::from_fn(perms.len(), |x, y| {
            let composed: Vec<usize> = (0..k).map(|i| perms[x][perms[y][i]]).collect();
            index(&composed)
        })
        .expect("symmetric group")
    }

    /// Dihedral group of order `2k`; element `i + k·j` is `r^i s^j`.
    pub fn dihedral(k: usize) -> BinaryGroup {
        BinaryGroup::from_fn(2 * k, |x, y| {
            let (i1, j1) = (x % k, x / k);
            let (i2, j2) = (y % k, y / k);
            let i = if j1 == 0 { (i1 + i2) % k } else { (i1 + k - i2) % k };
            i + k * ((j1 + j2) % 2)
        })
        .expect("dihedral group")
    }

    /// Quaternion group; element `2u + s` is `(-1)^s · [1, i, j, k][u]`.
    pub fn quaternion() -> BinaryGroup {
        // unit products: (sign, unit)
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        BinaryGroup::from_fn(8, |x, y| {
            let (sign, unit) = UNIT[x / 2][y / 2];
            2 * unit + (sign + x % 2 + y % 2) % 2
        })
        .expect("quaternion group")
    }

    /// Element `i·|b| + j` is the pair `(i, j)`.
    pub fn direct_product(a: &BinaryGroup, b: &BinaryGroup) -> BinaryGroup {
        let nb = b.order;
        BinaryGroup::from_fn(a.order * nb, |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
            .expect("direct product")
    }

    /// A short isomorphism-class tag for small groups ("klein", "cyclic-4", ...).
    pub fn identify(&self) -> String {
        let m = self.order;
        if m == 1 {
            return "trivial".into();
        }
        if (0..m).any(|x| self.element_order(x) == m) {
            return format!("cyclic-{m}");
        }
        let iso = |g: BinaryGroup| self.is_isomorphic(&g).unwrap_or(false);
        if m == 4 {
            return "klein".into();
        }
        if self.is_abelian() {
            if m == 8 {
                let c2 = BinaryGroup::cyclic(2);
                if iso(BinaryGroup::direct_product(&c2, &BinaryGroup::cyclic(4))) {
                    return "z2xz4".into();
                }
                return "elementary-8".into();
            }
            return format!("abelian-{m}");
        }
        if m == 6 {
            return "symmetric-3".into();
        }
        if m == 8 && iso(BinaryGroup::quaternion()) {
            return "quaternion-8".into();
        }
        if m.is_multiple_of(2) && m <= ISOMORPHISM_LIMIT && iso(BinaryGroup::dihedral(m / 2)) {
            return format!("dihedral-{m}");
        }
        if m == 24 && iso(BinaryGroup::symmetric(4)) {
            return "symmetric-4".into();
        }
        format!("nonabelian-{m}")
    }
}

/// One-line forms of all permutations of `0..k`, lexicographically sorted.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Cycle notation (1-based points) for a permutation in one-line form.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(i + 1).to_string());
            first = false;
            i = perm[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

struct IsoSearch<'a> {
    source: &'a BinaryGroup,
    target: &'a BinaryGroup,
    gens: &'a [Element],
    orders: Vec<usize>,
    limit: Option<usize>,
}

impl IsoSearch<'_> {
    fn run(&self, level: usize, map: Vec<Option<Element>>, images: &mut Vec<Element>, found: &mut Vec<Vec<Element>>) {
        if self.limit.is_some_and(|l| found.len() >= l) {
            return;
        }
        if level == self.gens.len() {
            let full: Option<Vec<Element>> = map.into_iter().collect();
            if let Some(full) = full {
                if self.source.is_isomorphism_to(self.target, &full) {
                    found.push(full);
                }
            }
            return;
        }
        let g = self.gens[level];
        let want = self.source.element_order(g);
        for c in 0..self.target.order {
            if self.orders[c] != want {
                continue;
            }
            images.push(c);
            if let Some(next) = self.close(&map, images) {
                self.run(level + 1, next, images, found);
            }
            images.pop();
            if self.limit.is_some_and(|l| found.len() >= l) {
                return;
            }
        }
    }

    /// Extends `map` by right multiplication with the assigned generators.
    /// Returns `None` on an inconsistency or a collision of images.
    fn close(&self, map: &[Option<Element>], images: &[Element]) -> Option<Vec<Option<Element>>> {
        let mut map = map.to_vec();
        let mut used = vec![false; self.target.order];
        let mut queue = VecDeque::new();
        for (x, img) in map.iter().enumerate() {
            if let Some(v) = *img {
                used[v] = true;
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            let vx = map[x].expect("queued elements are mapped");
            for (i, &img) in images.iter().enumerate() {
                let y = self.source.mul(x, self.gens[i]);
                let vy = self.target.mul(vx, img);
                match map[y] {
                    Some(existing) if existing != vy => return None,
                    Some(_) => {}
                    None => {
                        if used[vy] {
                            return None;
                        }
                        used[vy] = true;
                        map[y] = Some(vy);
                        queue.push_back(y);
                    }
                }
            }
        }
        Some(map)
    }
}

/// A table-preserving permutation of a [`BinaryGroup`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    perm: Vec<Element>,
}

impl Automorphism {
    pub fn new(group: &BinaryGroup, perm: Vec<Element>) -> Result<Self> {
        let m = group.order();
        if perm.len() != m {
            return Err(Error::TableLength {
                expected: m,
                got: perm.len(),
            });
        }
        let mut hit = vec![false; m];
        for (x, &v) in perm.iter().enumerate() {
            if v >= m {
                return Err(Error::IndexOutOfRange { index: v, order: m });
            }
            if std::mem::replace(&mut hit[v], true) {
                return Err(Error::NotAutomorphism {
                    reason: "not injective",
                    witness: vec![x],
                });
            }
        }
        for x in 0..m {
            for y in 0..m {
                if perm[group.mul(x, y)] != group.mul(perm[x], perm[y]) {
                    return Err(Error::NotAutomorphism {
                        reason: "does not preserve the table",
                        witness: vec![x, y],
                    });
                }
            }
        }
        Ok(Automorphism { perm })
    }

    pub fn identity(order: usize) -> Self {
        Automorphism {
            perm: (0..order).collect(),
        }
    }

    /// `x ↦ x⁻¹`, an automorphism only for abelian groups.
    pub fn inversion(group: &BinaryGroup) -> Result<Self> {
        Automorphism::new(group, group.inverse_table().to_vec())
    }

    /// Inner automorphism `x ↦ g x g⁻¹`.
    pub fn inner(group: &BinaryGroup, g: Element) -> Self {
        Automorphism {
            perm: (0..group.order()).map(|x| group.conjugate(x, g)).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.perm[x]
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            perm: other.perm.iter().map(|&x| self.perm[x]).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Automorphism {
        let mut acc = Automorphism::identity(self.perm.len());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }
}
