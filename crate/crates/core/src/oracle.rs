//! Exhaustive reference implementations over all subsets of a small groundset.

use crate::closure::ClosureContext;
use crate::error::{Error, Result};
use crate::model::{minimal_sets, Implication, ImplicationalBase, Relation, SetFamily};
use crate::set::ElementSet;

/// Default groundset limit for exhaustive scans.
pub const DEFAULT_ORACLE_MAX: usize = 16;
/// Hard ceiling: the closure table has `2^n` entries.
pub const ORACLE_CEILING: usize = 22;

/// Closure table of every subset of the groundset, indexed by bitmask.
pub struct Oracle {
    ctx: ClosureContext,
    table: Vec<u64>,
}

impl Oracle {
    pub fn new(ctx: &ClosureContext, max_ground: usize) -> Result<Self> {
        let limit = max_ground.min(ORACLE_CEILING);
        let n = ctx.len();
        if n > limit {
            return Err(Error::GroundTooLarge { size: n, limit });
        }
        let table = (0u64..1 << n)
            .map(|mask| ctx.close(&ElementSet::from_mask(mask)).to_mask().expect("at most 64 elements"))
            .collect();
        Ok(Oracle { ctx: ctx.clone(), table })
    }

    pub fn context(&self) -> &ClosureContext {
        &self.ctx
    }

    pub fn close(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_mask(self.table[set.to_mask().expect("at most 64 elements") as usize])
    }

    /// `cs`, in increasing bitmask order.
    pub fn closed_sets(&self) -> Vec<ElementSet> {
        (0..self.table.len() as u64).filter(|&m| self.table[m as usize] == m).map(ElementSet::from_mask).collect()
    }

    /// Non-trivial minimal generators of `c`: `c ∈ cl(A)` but
    /// `c ∉ cl(A \ {a})` for every `a ∈ A`, with `c ∉ A`.
    pub fn minimal_generators(&self, c: usize) -> Vec<ElementSet> {
        let bit = 1u64 << c;
        let mut out = Vec::new();
        for mask in 0..self.table.len() as u64 {
            if mask & bit != 0 || self.table[mask as usize] & bit == 0 {
                continue;
            }
            let mut rest = mask;
            let mut minimal = true;
            while rest != 0 {
                let a = rest & rest.wrapping_neg();
                rest ^= a;
                if self.table[(mask ^ a) as usize] & bit != 0 {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                out.push(ElementSet::from_mask(mask));
            }
        }
        out.sort();
        out
    }

    /// `Σ_cd`, canonically ordered.
    pub fn canonical_direct_base(&self) -> ImplicationalBase {
        let implications =
            (0..self.ctx.len()).flat_map(|c| self.minimal_generators(c).into_iter().map(move |a| Implication { premise: a, conclusion: c }));
        canonical(&self.ctx, implications)
    }

    /// Minimal generators `A` of `c` with `c ∉ cl^b(A)` such that no other
    /// minimal generator of `c` lies inside `cl^b(A)`.
    pub fn d_generators(&self, c: usize) -> Vec<ElementSet> {
        let generators = self.minimal_generators(c);
        generators
            .iter()
            .filter(|a| {
                let span = self.ctx.close_binary(a);
                !span.contains(c) && generators.iter().all(|other| other == *a || !other.is_subset(&span))
            })
            .copied()
            .collect()
    }

    /// `Σ^b` together with every D-generator implication, canonically ordered.
    pub fn d_base(&self) -> ImplicationalBase {
        let binary = self.ctx.binary_part().implications().to_vec();
        let implications = (0..self.ctx.len())
            .flat_map(|c| self.d_generators(c).into_iter().map(move |a| Implication { premise: a, conclusion: c }));
        canonical(&self.ctx, binary.into_iter().chain(implications))
    }

    pub fn d_relation(&self) -> Relation {
        self.relation_from(|c| self.d_generators(c))
    }

    pub fn delta_relation(&self) -> Relation {
        self.relation_from(|c| self.minimal_generators(c))
    }

    fn relation_from(&self, generators: impl Fn(usize) -> Vec<ElementSet>) -> Relation {
        let mut relation = Relation::empty(self.ctx.ground().clone());
        for c in 0..self.ctx.len() {
            for a in generators(c) {
                for x in a.iter() {
                    relation.insert(c, x);
                }
            }
        }
        relation
    }
}

fn canonical(ctx: &ClosureContext, implications: impl IntoIterator<Item = Implication>) -> ImplicationalBase {
    ImplicationalBase::new(ctx.ground().clone(), implications).expect("indices come from the ground set").canonicalize()
}

pub fn brute_minimal_generators(ctx: &ClosureContext, c: usize, max_ground: usize) -> Result<Vec<ElementSet>> {
    Ok(Oracle::new(ctx, max_ground)?.minimal_generators(c))
}

pub fn brute_canonical_direct_base(ctx: &ClosureContext, max_ground: usize) -> Result<ImplicationalBase> {
    Ok(Oracle::new(ctx, max_ground)?.canonical_direct_base())
}

pub fn brute_d_generators(ctx: &ClosureContext, c: usize, max_ground: usize) -> Result<Vec<ElementSet>> {
    Ok(Oracle::new(ctx, max_ground)?.d_generators(c))
}

pub fn brute_d_base(ctx: &ClosureContext, max_ground: usize) -> Result<ImplicationalBase> {
    Ok(Oracle::new(ctx, max_ground)?.d_base())
}

pub fn brute_d_relation(ctx: &ClosureContext, max_ground: usize) -> Result<Relation> {
    Ok(Oracle::new(ctx, max_ground)?.d_relation())
}

pub fn brute_delta_relation(ctx: &ClosureContext, max_ground: usize) -> Result<Relation> {
    Ok(Oracle::new(ctx, max_ground)?.delta_relation())
}

/// Minimal closed sets of the base contained in no member of `b_plus`, by
/// scanning every closed set. The base may be arbitrary; for a binary base
/// this is the dual antichain.
pub fn brute_dual(ib: &ImplicationalBase, b_plus: &SetFamily, max_ground: usize) -> Result<SetFamily> {
    let oracle = Oracle::new(&ClosureContext::from_ib(ib), max_ground)?;
    let outside: Vec<ElementSet> =
        oracle.closed_sets().into_iter().filter(|f| b_plus.iter().all(|b| !f.is_subset(b))).collect();
    let mut dual = minimal_sets(&outside);
    dual.sort();
    SetFamily::new(ib.ground().clone(), dual)
}
