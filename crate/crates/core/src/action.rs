//! Actions of n-ary groups on finite sets, orbits, stabilizers and centralizers.

use serde::Serialize;

use crate::budget::scan_tuples;
use crate::error::{Error, Result};
use crate::nary::{expand, NaryGroup};
use crate::report::VerificationReport;
use crate::structure::SubgroupRef;
use crate::Element;

/// An action materialized as an `m × |A|` table: `x.a = table[x·|A| + a]`.
#[derive(Debug, Clone)]
pub struct Action<'g> {
    group: &'g NaryGroup,
    points: usize,
    table: Vec<usize>,
}

impl<'g> Action<'g> {
    pub fn from_table(group: &'g NaryGroup, points: usize, table: Vec<usize>) -> Result<Self> {
        let expected = group.order() * points;
        if table.len() != expected {
            return Err(Error::TableLength {
                expected,
                got: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&p| p >= points) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                order: points,
            });
        }
        Ok(Action { group, points, table })
    }

    pub fn from_fn(group: &'g NaryGroup, points: usize, f: impl Fn(Element, usize) -> usize) -> Result<Self> {
        let table = (0..group.order())
            .flat_map(|x| (0..points).map(move |a| (x, a)))
            .map(|(x, a)| f(x, a))
            .collect();
        Self::from_table(group, points, table)
    }

    pub fn group(&self) -> &'g NaryGroup {
        self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// `x.a`
    pub fn act(&self, x: Element, a: usize) -> usize {
        self.table[x * self.points + a]
    }
}

/// Checks axioms (i)–(iii): compatibility with `f`, a fixing element for
/// every point, and bijectivity of every `a ↦ x.a`.
pub fn verify_action(act: &Action<'_>) -> VerificationReport {
    let g = act.group();
    let mut report = VerificationReport::pass();
    let out = scan_tuples(g.order(), g.arity(), g.budget(), |t, _| {
        let v = g.op(t);
        (0..act.points()).find_map(|a| {
            let nested = t.iter().rev().fold(a, |p, &x| act.act(x, p));
            (act.act(v, a) != nested).then(|| {
                let mut w = t.to_vec();
                w.push(a);
                w
            })
        })
    });
    if out.sampled {
        report.mark_sampled();
    }
    if let Some(w) = out.first {
        report.fail("action(i)", w);
    }
    if let Some(a) = (0..act.points()).find(|&a| (0..g.order()).all(|x| act.act(x, a) != a)) {
        report.fail("action(ii)", vec![a]);
    }
    for x in 0..g.order() {
        let mut seen = vec![false; act.points()];
        if (0..act.points()).any(|a| std::mem::replace(&mut seen[act.act(x, a)], true)) {
            report.fail("action(iii)", vec![x]);
            break;
        }
    }
    report
}

/// `x.a = f(x, a, x^(n−3), x̄)`.
pub fn canonical_action(g: &NaryGroup) -> Result<Action<'_>> {
    g.require_verified()?;
    let n = g.arity();
    let skews = g.skew_table()?;
    Action::from_fn(g, g.order(), |x, a| {
        g.op(&expand(&[(x, 1), (a, 1), (x, n - 3), (skews[x], 1)]))
    })
}

/// Disjoint sorted blocks covering `0..len`, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Block index of every point.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.blocks.iter().map(Vec::len).sum()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &a in b {
                labels[a] = i;
            }
        }
        labels
    }

    pub fn block_containing(&self, a: usize) -> Option<&[usize]> {
        self.blocks
            .iter()
            .find(|b| b.binary_search(&a).is_ok())
            .map(Vec::as_slice)
    }
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// Orbits via union-find over all pairs `(a, x.a)`.
pub fn orbits(act: &Action<'_>) -> Partition {
    let mut parent: Vec<usize> = (0..act.points()).collect();
    for x in 0..act.group().order() {
        for a in 0..act.points() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, act.act(x, a)));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; act.points()];
    for a in 0..act.points() {
        let r = find(&mut parent, a);
        if index[r] == usize::MAX {
            index[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index[r]].push(a);
    }
    Partition { blocks }
}

/// `{x : x.a = a}`, checked to be an n-ary subgroup.
pub fn stabilizer(act: &Action<'_>, a: usize) -> Result<SubgroupRef> {
    if a >= act.points() {
        return Err(Error::IndexOutOfRange {
            index: a,
            order: act.points(),
        });
    }
    let g = act.group();
    let members: Vec<Element> = (0..g.order()).filter(|&x| act.act(x, a) == a).collect();
    SubgroupRef::new(g, members.iter().copied()).map_err(|_| Error::ClaimFailed {
        claim: "a stabilizer is an n-ary subgroup",
        witness: members,
    })
}

pub fn conjugacy_classes(g: &NaryGroup) -> Result<Partition> {
    Ok(orbits(&canonical_action(g)?))
}

/// `f(x^i, a, x^j, x̄, x^k) = f(x^i, x̄, x^j, a, x^k) = a` for all `i+j+k = n−2`.
/// Returns the first failing `(i, j, k)`.
pub fn centralizer_identity_failure(g: &NaryGroup, a: Element, x: Element) -> Result<Option<(usize, usize, usize)>> {
    let n = g.arity();
    let xbar = g.skew(x)?;
    for i in 0..=n - 2 {
        for j in 0..=n - 2 - i {
            let k = n - 2 - i - j;
            let left = g.op(&expand(&[(x, i), (a, 1), (x, j), (xbar, 1), (x, k)]));
            let right = g.op(&expand(&[(x, i), (xbar, 1), (x, j), (a, 1), (x, k)]));
            if left != a || right != a {
                return Ok(Some((i, j, k)));
            }
        }
    }
    Ok(None)
}

/// Stabilizer of `a` under the canonical action, with the centralizer
/// identities checked for every member.
pub fn centralizer(g: &NaryGroup, a: Element) -> Result<SubgroupRef> {
    g.check_element(a)?;
    let c = stabilizer(&canonical_action(g)?, a)?;
    for &x in c.elements() {
        if let Some((i, j, k)) = centralizer_identity_failure(g, a, x)? {
            return Err(Error::ClaimFailed {
                claim: "centralizer identities",
                witness: vec![x, a, i, j, k],
            });
        }
    }
    Ok(c)
}

/// First `(tuple, i)` such that replacing `tuple[i]` by the smallest member of
/// its conjugacy class moves `f(tuple)` to another class. Conjugation is a
/// congruence exactly when there is none.
pub fn conjugation_congruence_witness(g: &NaryGroup) -> Result<Option<Vec<Element>>> {
    let classes = conjugacy_classes(g)?;
    let labels = classes.labels();
    let reps: Vec<Element> = labels.iter().map(|&l| classes.blocks()[l][0]).collect();
    let out = scan_tuples(g.order(), g.arity(), g.budget(), |t, buf| {
        let c = labels[g.op(t)];
        (0..t.len()).find_map(|i| {
            buf.clear();
            buf.extend_from_slice(t);
            buf[i] = reps[t[i]];
            (labels[g.op(buf)] != c).then(|| {
                let mut w = t.to_vec();
                w.push(i);
                w
            })
        })
    });
    Ok(out.first)
}

pub fn is_conjugation_congruence(g: &NaryGroup) -> Result<bool> {
    Ok(conjugation_congruence_witness(g)?.is_none())
}

/// All elements conjugate to some member of `h`; semiabelian groups only.
pub fn conjugate_subgroup_closure(g: &NaryGroup, h: &SubgroupRef) -> Result<SubgroupRef> {
    g.require_verified()?;
    if !g.is_semiabelian() {
        return Err(Error::NotSemiabelian);
    }
    let classes = conjugacy_classes(g)?;
    let labels = classes.labels();
    let mut members: Vec<Element> = h
        .elements()
        .iter()
        .flat_map(|&x| classes.blocks()[labels[x]].iter().copied())
        .collect();
    members.sort_unstable();
    members.dedup();
    SubgroupRef::new(g, members.iter().copied()).map_err(|_| Error::ClaimFailed {
        claim: "conjugates of a subgroup of a semiabelian group form a subgroup",
        witness: members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::BinaryGroup;
    use crate::fixtures;

    #[test]
    fn canonical_actions_verify() {
        for name in fixtures::NAMES {
            let g = fixtures::by_name(name).unwrap();
            let act = canonical_action(&g).unwrap();
            assert!(verify_action(&act).passed(), "{name}");
        }
    }

    #[test]
    fn constant_map_is_not_an_action() {
        let g = fixtures::t2();
        let act = Action::from_fn(&g, 2, |_, _| 0).unwrap();
        let r = verify_action(&act);
        assert!(r.has_failure("action(iii)"));
        assert_eq!(
            r.failures().iter().find(|f| f.axiom == "action(iii)").unwrap().witness,
            vec![0]
        );
    }

    #[test]
    fn s3t_action_is_conjugation() {
        let s3 = BinaryGroup::symmetric(3);
        let g = fixtures::s3t();
        let act = canonical_action(&g).unwrap();
        for x in 0..6 {
            for a in 0..6 {
                assert_eq!(act.act(x, a), s3.conjugate(a, x));
            }
        }
        let mut sizes = conjugacy_classes(&g).unwrap().sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn trivial_and_reflection_actions() {
        let t2b = fixtures::t2b();
        assert_eq!(conjugacy_classes(&t2b).unwrap().blocks(), &[vec![0], vec![1]]);
        let z = fixtures::z4m();
        let act = canonical_action(&z).unwrap();
        for x in 0..4 {
            for a in 0..4 {
                assert_eq!(act.act(x, a), (2 * x + 4 - a) % 4);
            }
        }
        assert_eq!(conjugacy_classes(&z).unwrap().blocks(), &[vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn stabilizers_and_centralizers() {
        let g = fixtures::s3t();
        let act = canonical_action(&g).unwrap();
        assert_eq!(stabilizer(&act, 2).unwrap().elements(), &[0, 2]);
        assert_eq!(stabilizer(&act, 0).unwrap().len(), 6);
        assert_eq!(centralizer(&g, 3).unwrap().elements(), &[0, 3, 4]);
        let t2b = fixtures::t2b();
        let act = canonical_action(&t2b).unwrap();
        assert_eq!(stabilizer(&act, 1).unwrap().len(), 2);
    }

    #[test]
    fn congruence_examples() {
        assert!(is_conjugation_congruence(&fixtures::z4m()).unwrap());
        assert!(is_conjugation_congruence(&fixtures::t2()).unwrap());
        // (12)(12)e = e while (12)(13)e is a 3-cycle
        let s3t = fixtures::s3t();
        assert!(!is_conjugation_congruence(&s3t).unwrap());
    }

    #[test]
    fn conjugate_closure() {
        let z = fixtures::z4m();
        let h = SubgroupRef::new(&z, [0, 2]).unwrap();
        assert_eq!(conjugate_subgroup_closure(&z, &h).unwrap().elements(), &[0, 2]);
        let h = SubgroupRef::new(&z, [0]).unwrap();
        assert_eq!(conjugate_subgroup_closure(&z, &h).unwrap().elements(), &[0, 2]);
        let g = fixtures::s3t();
        let h = SubgroupRef::new(&g, [0]).unwrap();
        assert!(matches!(conjugate_subgroup_closure(&g, &h), Err(Error::NotSemiabelian)));
    }
}
