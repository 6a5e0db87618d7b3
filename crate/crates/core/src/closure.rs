//! Closure operators `cl` and `cl^b` over an implicational base or a family of
//! meet-irreducible sets.

use crate::error::{Error, Result};
use crate::model::{Implication, ImplicationalBase, SetFamily};
use crate::set::{ElementSet, GroundSet};

/// Linear-time forward chaining: every implication keeps a counter of premise
/// elements not yet derived and fires once when it reaches zero.
#[derive(Clone, Debug)]
struct ForwardChainer {
    premise_sizes: Vec<u32>,
    conclusions: Vec<usize>,
    /// Implications whose premise contains a given element.
    occurrences: Vec<Vec<u32>>,
    unconditional: ElementSet,
}

impl ForwardChainer {
    fn new(ib: &ImplicationalBase) -> Self {
        let n = ib.ground().len();
        let mut occurrences = vec![Vec::new(); n];
        let mut unconditional = ElementSet::empty();
        let mut premise_sizes = Vec::with_capacity(ib.len());
        let mut conclusions = Vec::with_capacity(ib.len());
        for (k, imp) in ib.iter().enumerate() {
            if imp.premise.is_empty() {
                unconditional.insert(imp.conclusion);
            }
            for a in imp.premise.iter() {
                occurrences[a].push(k as u32);
            }
            premise_sizes.push(imp.premise.len() as u32);
            conclusions.push(imp.conclusion);
        }
        ForwardChainer { premise_sizes, conclusions, occurrences, unconditional }
    }

    fn close(&self, start: ElementSet) -> ElementSet {
        let mut closed = start | self.unconditional;
        let mut stack: Vec<usize> = closed.iter().collect();
        let mut missing = self.premise_sizes.clone();
        while let Some(e) = stack.pop() {
            for &k in &self.occurrences[e] {
                let slot = &mut missing[k as usize];
                *slot -= 1;
                if *slot == 0 {
                    let c = self.conclusions[k as usize];
                    if closed.insert(c) {
                        stack.push(c);
                    }
                }
            }
        }
        closed
    }
}

#[derive(Clone, Debug)]
enum Engine {
    Implications(ForwardChainer),
    MeetIrreducibles(Vec<ElementSet>),
}

/// A closure operator with eagerly cached singleton closures.
#[derive(Clone, Debug)]
pub struct ClosureContext {
    ground: GroundSet,
    engine: Engine,
    singletons: Vec<ElementSet>,
}

impl ClosureContext {
    pub fn from_ib(ib: &ImplicationalBase) -> Self {
        let engine = Engine::Implications(ForwardChainer::new(ib));
        Self::with_engine(ib.ground().clone(), engine)
    }

    /// Closure `cl(A) = ⋂ {M | A ⊆ M}`, or `U` when no member contains `A`.
    pub fn from_mi(mi: &SetFamily) -> Self {
        let engine = Engine::MeetIrreducibles(mi.sets().to_vec());
        Self::with_engine(mi.ground().clone(), engine)
    }

    fn with_engine(ground: GroundSet, engine: Engine) -> Self {
        let mut ctx = ClosureContext { ground, engine, singletons: Vec::new() };
        ctx.singletons = (0..ctx.ground.len()).map(|a| ctx.close(&ElementSet::singleton(a))).collect();
        ctx
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn universe(&self) -> ElementSet {
        self.ground.full()
    }

    pub fn close(&self, set: &ElementSet) -> ElementSet {
        match &self.engine {
            Engine::Implications(chainer) => chainer.close(*set),
            Engine::MeetIrreducibles(mi) => mi
                .iter()
                .filter(|m| set.is_subset(m))
                .fold(self.universe(), |acc, m| acc & *m),
        }
    }

    pub fn is_closed(&self, set: &ElementSet) -> bool {
        self.close(set) == *set
    }

    /// Cached `cl(a)`.
    pub fn singleton_closure(&self, a: usize) -> ElementSet {
        self.singletons[a]
    }

    pub fn singleton_closures(&self) -> &[ElementSet] {
        &self.singletons
    }

    /// `cl^b(A) = ⋃_{a ∈ A} cl(a)`.
    pub fn close_binary(&self, set: &ElementSet) -> ElementSet {
        set.iter().fold(ElementSet::empty(), |acc, a| acc | self.singletons[a])
    }

    /// `Σ^b`: every valid non-trivial binary implication of the system.
    pub fn binary_part(&self) -> ImplicationalBase {
        let imps = (0..self.len())
            .flat_map(|a| self.singletons[a].iter().filter_map(move |c| Implication::binary(a, c)));
        ImplicationalBase::new(self.ground.clone(), imps).expect("indices come from the ground set")
    }

    /// Context for `cl^b`, backed by `Σ^b`.
    pub fn binary_context(&self) -> ClosureContext {
        ClosureContext::from_ib(&self.binary_part())
    }

    /// First element `a` whose `cl(a) \ {a}` is not closed, if any.
    pub fn standardness_witness(&self) -> Option<usize> {
        (0..self.len()).find(|&a| !self.is_closed(&self.singletons[a].without(a)))
    }

    pub fn is_standard(&self) -> bool {
        self.standardness_witness().is_none()
    }

    pub fn require_standard(&self) -> Result<()> {
        match self.standardness_witness() {
            Some(a) => Err(Error::NotStandard(self.ground.label(a).to_string())),
            None => Ok(()),
        }
    }

    /// `{a ∈ F | a ∉ cl(F \ {a})}`.
    pub fn extreme_elements(&self, set: &ElementSet) -> ElementSet {
        set.iter().filter(|&a| !self.close(&set.without(a)).contains(a)).collect()
    }

    /// The unique minimal spanning set `K_F` of `cl(F)`, assuming the operator
    /// is a convex geometry (always the case for `cl^b`).
    pub fn min_spanning_set(&self, set: &ElementSet) -> Result<ElementSet> {
        let closed = self.close(set);
        let spanning = self.extreme_elements(&closed);
        if self.close(&spanning) == closed {
            Ok(spanning)
        } else {
            Err(Error::NotSpanning)
        }
    }
}
