//! Closed-set enumeration, meet-irreducibles, arrow relations and the δ / D
//! relations derived from them.

use crate::closure::ClosureContext;
use crate::error::{Error, Result};
use crate::model::{maximal_sets, ImplicationalBase, Relation, SetFamily};
use crate::set::ElementSet;

fn check_size(ctx: &ClosureContext, max_ground: usize) -> Result<()> {
    if ctx.len() > max_ground {
        Err(Error::GroundTooLarge { size: ctx.len(), limit: max_ground })
    } else {
        Ok(())
    }
}

/// Closed sets in lectic order, produced by NextClosure.
pub struct ClosedSets<'a> {
    ctx: &'a ClosureContext,
    next: Option<ElementSet>,
}

impl Iterator for ClosedSets<'_> {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let current = self.next?;
        self.next = self.successor(&current);
        Some(current)
    }
}

impl ClosedSets<'_> {
    fn successor(&self, current: &ElementSet) -> Option<ElementSet> {
        for i in (0..self.ctx.len()).rev() {
            if current.contains(i) {
                continue;
            }
            let prefix = current.below(i);
            let candidate = self.ctx.close(&prefix.with(i));
            if candidate.below(i) == prefix {
                return Some(candidate);
            }
        }
        None
    }
}

/// Every closed set exactly once, smallest (`cl(∅)`) first.
pub fn enumerate_closed_sets(ctx: &ClosureContext, max_ground: usize) -> Result<ClosedSets<'_>> {
    check_size(ctx, max_ground)?;
    Ok(ClosedSets { ctx, next: Some(ctx.close(&ElementSet::empty())) })
}

/// A closed `F ≠ U` is meet-irreducible iff the meet of all closed sets
/// strictly above it is not `F` itself, i.e. `F` has a single upper cover.
fn is_meet_irreducible(ctx: &ClosureContext, closed: &ElementSet) -> bool {
    let universe = ctx.universe();
    if *closed == universe {
        return false;
    }
    let meet = universe
        .difference(closed)
        .iter()
        .fold(universe, |acc, x| acc & ctx.close(&closed.with(x)));
    meet != *closed
}

/// `Mi(cs)` by scanning the whole lattice, in lectic order.
pub fn meet_irreducibles(ctx: &ClosureContext, max_ground: usize) -> Result<SetFamily> {
    let sets = enumerate_closed_sets(ctx, max_ground)?.filter(|f| is_meet_irreducible(ctx, f));
    SetFamily::new(ctx.ground().clone(), sets)
}

/// `Mi(cs) = {{c | a ∉ cl(c)} | a ∈ U}` for a distributive system.
pub fn meet_irreducibles_distributive(binary_ib: &ImplicationalBase) -> Result<SetFamily> {
    binary_ib.require_binary()?;
    let ctx = ClosureContext::from_ib(binary_ib);
    let mut sets: Vec<ElementSet> = Vec::with_capacity(ctx.len());
    for a in 0..ctx.len() {
        let m: ElementSet = (0..ctx.len()).filter(|&c| !ctx.singleton_closure(c).contains(a)).collect();
        if !sets.contains(&m) {
            sets.push(m);
        }
    }
    SetFamily::new(ctx.ground().clone(), sets)
}

/// `{M | a ↑ M}`: the maximal members omitting `a`.
pub fn up_arrow(mi: &SetFamily, a: usize) -> SetFamily {
    let omitting: Vec<ElementSet> = mi.iter().copied().filter(|m| !m.contains(a)).collect();
    SetFamily::new(mi.ground().clone(), maximal_sets(&omitting)).expect("subfamily of a valid family")
}

/// `{M | M ↓ a}`: members omitting `a` but containing `cl(a) \ {a}`.
pub fn down_arrow(mi: &SetFamily, a: usize, ctx: &ClosureContext) -> SetFamily {
    let lower = ctx.singleton_closure(a).without(a);
    let sets = mi.iter().copied().filter(|m| !m.contains(a) && lower.is_subset(m));
    SetFamily::new(mi.ground().clone(), sets).expect("subfamily of a valid family")
}

/// `c δ a` iff some `M` with `c ↑ M` omits `a`.
pub fn delta_relation(mi: &SetFamily) -> Relation {
    let mut relation = Relation::empty(mi.ground().clone());
    let universe = mi.ground().full();
    for c in 0..mi.ground().len() {
        for m in up_arrow(mi, c).iter() {
            for a in universe.difference(m).iter() {
                relation.insert(c, a);
            }
        }
    }
    relation
}

/// `c D a` iff `c ↑ M ↓ a` for some `M`.
pub fn d_relation(mi: &SetFamily, ctx: &ClosureContext) -> Relation {
    let mut relation = Relation::empty(mi.ground().clone());
    let universe = mi.ground().full();
    for c in 0..mi.ground().len() {
        for m in up_arrow(mi, c).iter() {
            for a in universe.difference(m).iter() {
                if ctx.singleton_closure(a).without(a).is_subset(m) {
                    relation.insert(c, a);
                }
            }
        }
    }
    relation
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    /// The δ-relation has no cycle.
    pub is_acyclic: bool,
    /// The D-relation has no cycle.
    pub is_lower_bounded: bool,
    /// The implication graph of the given base has no cycle.
    pub graph_acyclic: bool,
}

pub fn classify(ib: &ImplicationalBase, max_ground: usize) -> Result<Classification> {
    let ctx = ClosureContext::from_ib(ib);
    let mi = meet_irreducibles(&ctx, max_ground)?;
    Ok(Classification {
        is_acyclic: delta_relation(&mi).is_acyclic(),
        is_lower_bounded: d_relation(&mi, &ctx).is_acyclic(),
        graph_acyclic: ib.implication_graph().is_acyclic(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{EXAMPLE_1_MI, EXAMPLE_2, EXAMPLE_5, EXAMPLE_8_MI};
    use crate::format::{parse_ib, parse_set_family};
    use crate::set::{GroundSet, DEFAULT_MAX_GROUND};
    use std::collections::BTreeSet;

    fn sets(ground: &GroundSet, lines: &[&str]) -> BTreeSet<ElementSet> {
        lines.iter().map(|l| ground.parse_set(l).unwrap()).collect()
    }

    #[test]
    fn closed_sets_of_running_example() {
        let ctx = ClosureContext::from_ib(&parse_ib(EXAMPLE_2).unwrap());
        let listed: Vec<ElementSet> = enumerate_closed_sets(&ctx, DEFAULT_MAX_GROUND).unwrap().collect();
        let brute: BTreeSet<ElementSet> =
            (0u64..64).map(ElementSet::from_mask).filter(|a| ctx.is_closed(a)).collect();
        assert_eq!(listed.len(), 19);
        assert_eq!(listed.iter().copied().collect::<BTreeSet<_>>(), brute);
    }

    #[test]
    fn closed_sets_small_cases() {
        let free = ClosureContext::from_ib(&ImplicationalBase::empty(GroundSet::numbered(2)));
        assert_eq!(enumerate_closed_sets(&free, 64).unwrap().count(), 4);
        let one = ClosureContext::from_ib(&parse_ib("ground: 1 2\n1 -> 2").unwrap());
        let got: BTreeSet<ElementSet> = enumerate_closed_sets(&one, 64).unwrap().collect();
        assert_eq!(got, sets(one.ground(), &["", "2", "1 2"]));
        assert!(matches!(enumerate_closed_sets(&one, 1), Err(Error::GroundTooLarge { size: 2, limit: 1 })));
    }

    #[test]
    fn meet_irreducibles_of_examples() {
        let ctx = ClosureContext::from_ib(&parse_ib(EXAMPLE_2).unwrap());
        let mi = meet_irreducibles(&ctx, 64).unwrap();
        let expected = parse_set_family(EXAMPLE_1_MI).unwrap();
        assert_eq!(mi.to_btree(), expected.to_btree());

        let ex8 = parse_set_family(EXAMPLE_8_MI).unwrap();
        let ctx8 = ClosureContext::from_mi(&ex8);
        assert_eq!(meet_irreducibles(&ctx8, 64).unwrap().to_btree(), ex8.to_btree());

        let chain = ClosureContext::from_ib(&parse_ib("ground: 1 2\n2 -> 1").unwrap());
        let got = meet_irreducibles(&chain, 64).unwrap().to_btree();
        assert_eq!(got, sets(chain.ground(), &["", "1"]));
    }

    #[test]
    fn distributive_formula() {
        let ib = parse_ib(EXAMPLE_5).unwrap();
        let formula = meet_irreducibles_distributive(&ib).unwrap();
        assert_eq!(formula.len(), 5);
        let general = meet_irreducibles(&ClosureContext::from_ib(&ib), 64).unwrap();
        assert_eq!(formula.to_btree(), general.to_btree());

        let free = meet_irreducibles_distributive(&ImplicationalBase::empty(GroundSet::numbered(2))).unwrap();
        assert_eq!(free.to_btree(), sets(free.ground(), &["2", "1"]));

        let one = meet_irreducibles_distributive(&parse_ib("ground: 1 2\n1 -> 2").unwrap()).unwrap();
        assert_eq!(one.sets(), &[ElementSet::singleton(1), ElementSet::empty()]);

        let err = meet_irreducibles_distributive(&parse_ib(EXAMPLE_2).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NonBinaryImplication(_)));
    }

    #[test]
    fn arrows() {
        let ex8 = parse_set_family(EXAMPLE_8_MI).unwrap();
        let g = ex8.ground().clone();
        assert_eq!(up_arrow(&ex8, 4).to_btree(), sets(&g, &["1 2", "2 3", "2 4"]));

        let ex1 = parse_set_family(EXAMPLE_1_MI).unwrap();
        assert_eq!(up_arrow(&ex1, 4).to_btree(), sets(&g, &["1 3", "1 2 4"]));
        assert_eq!(up_arrow(&ex1, 5).to_btree(), sets(&g, &["1 3", "1 5", "1 2 4"]));

        let free = parse_set_family("ground: 1 2 3\n1 2\n1 3\n2 3\n").unwrap();
        let ctx = ClosureContext::from_mi(&free);
        assert_eq!(down_arrow(&free, 0, &ctx).to_btree(), sets(&g, &["2 3"]));
    }

    #[test]
    fn relations_of_running_example() {
        let mi = parse_set_family(EXAMPLE_1_MI).unwrap();
        let ctx = ClosureContext::from_mi(&mi);
        let delta = delta_relation(&mi);
        let d = d_relation(&mi, &ctx);
        assert!(d.is_subset(&delta));
        assert!(d.len() < delta.len());
        assert_eq!(d.successors(5), ElementSet::from_indices([2, 3, 4]));
        // 2 δ 4 and 4 δ 2: a two-cycle.
        assert!(delta.contains(1, 3) && delta.contains(3, 1));
    }

    #[test]
    fn distributive_has_empty_d_relation() {
        let ib = parse_ib(EXAMPLE_5).unwrap();
        let ctx = ClosureContext::from_ib(&ib);
        let mi = meet_irreducibles(&ctx, 64).unwrap();
        assert!(d_relation(&mi, &ctx).is_empty());
    }

    #[test]
    fn classification() {
        let ex = classify(&parse_ib(EXAMPLE_2).unwrap(), 64).unwrap();
        assert!(!ex.is_acyclic);
        assert!(ex.is_lower_bounded);
        assert!(!ex.graph_acyclic);
        let free = classify(&ImplicationalBase::empty(GroundSet::numbered(3)), 64).unwrap();
        assert_eq!(free, Classification { is_acyclic: true, is_lower_bounded: true, graph_acyclic: true });
    }
}
