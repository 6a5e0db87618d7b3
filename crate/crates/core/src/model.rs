//! Implications, implicational bases, set families and binary relations.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::set::{ElementSet, GroundSet};

/// A unit implication `premise ⟹ conclusion` with `conclusion ∉ premise`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Implication {
    pub premise: ElementSet,
    pub conclusion: usize,
}

impl Implication {
    /// Returns `None` for a tautology (`conclusion ∈ premise`).
    pub fn new(premise: ElementSet, conclusion: usize) -> Option<Self> {
        if premise.contains(conclusion) {
            None
        } else {
            Some(Implication { premise, conclusion })
        }
    }

    pub fn binary(from: usize, to: usize) -> Option<Self> {
        Self::new(ElementSet::singleton(from), to)
    }

    pub fn is_binary(&self) -> bool {
        self.premise.len() == 1
    }

    /// Sort key of the canonical order: binary implications first, then by
    /// premise index list, then by conclusion.
    pub fn canonical_key(&self) -> (bool, ElementSet, usize) {
        (!self.is_binary(), self.premise, self.conclusion)
    }

    pub fn display(&self, ground: &GroundSet) -> String {
        format!("{} -> {}", ground.format_set(&self.premise), ground.label(self.conclusion))
    }
}

/// An implicational base `(U, Σ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicationalBase {
    ground: GroundSet,
    implications: Vec<Implication>,
}

impl ImplicationalBase {
    pub fn empty(ground: GroundSet) -> Self {
        ImplicationalBase { ground, implications: Vec::new() }
    }

    /// Builds a base, dropping tautologies and repeated implications while
    /// keeping the first occurrence order.
    pub fn new<I>(ground: GroundSet, implications: I) -> Result<Self>
    where
        I: IntoIterator<Item = Implication>,
    {
        let mut base = Self::empty(ground);
        let mut seen = HashSet::new();
        for imp in implications {
            base.check_members(&imp)?;
            if imp.premise.contains(imp.conclusion) {
                continue;
            }
            if seen.insert(imp) {
                base.implications.push(imp);
            }
        }
        Ok(base)
    }

    /// Convenience constructor from `(premise indices, conclusion)` pairs.
    pub fn from_pairs<P>(ground: GroundSet, pairs: &[(P, usize)]) -> Result<Self>
    where
        P: AsRef<[usize]>,
    {
        let imps = pairs
            .iter()
            .map(|(p, c)| Implication { premise: p.as_ref().iter().copied().collect(), conclusion: *c })
            .collect::<Vec<_>>();
        Self::new(ground, imps)
    }

    fn check_members(&self, imp: &Implication) -> Result<()> {
        let size = self.ground.len();
        match imp.premise.iter().chain([imp.conclusion]).find(|&i| i >= size) {
            Some(index) => Err(Error::ElementOutOfRange { index, size }),
            None => Ok(()),
        }
    }

    /// Appends an implication; returns false if it was a tautology or a repeat.
    pub fn push(&mut self, imp: Implication) -> Result<bool> {
        self.check_members(&imp)?;
        if imp.premise.contains(imp.conclusion) || self.implications.contains(&imp) {
            return Ok(false);
        }
        self.implications.push(imp);
        Ok(true)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn implications(&self) -> &[Implication] {
        &self.implications
    }

    pub fn len(&self) -> usize {
        self.implications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.implications.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Implication> {
        self.implications.iter()
    }

    pub fn is_binary_only(&self) -> bool {
        self.implications.iter().all(Implication::is_binary)
    }

    /// Errors with the first implication that is not binary.
    pub fn require_binary(&self) -> Result<()> {
        match self.implications.iter().find(|imp| !imp.is_binary()) {
            Some(imp) => Err(Error::NonBinaryImplication(imp.display(&self.ground))),
            None => Ok(()),
        }
    }

    /// Same implications, sorted in canonical order.
    pub fn canonicalize(&self) -> ImplicationalBase {
        let mut implications = self.implications.clone();
        implications.sort_by_key(Implication::canonical_key);
        ImplicationalBase { ground: self.ground.clone(), implications }
    }

    pub fn binary_implications(&self) -> impl Iterator<Item = &Implication> {
        self.implications.iter().filter(|imp| imp.is_binary())
    }

    pub fn non_binary_implications(&self) -> impl Iterator<Item = &Implication> {
        self.implications.iter().filter(|imp| !imp.is_binary())
    }

    /// Implication graph `G(Σ)`: arc `a → c` whenever `a` is in the premise
    /// of an implication concluding `c`.
    pub fn implication_graph(&self) -> Relation {
        let mut graph = Relation::empty(self.ground.clone());
        for imp in &self.implications {
            for a in imp.premise.iter() {
                graph.insert(a, imp.conclusion);
            }
        }
        graph
    }
}

impl<'a> IntoIterator for &'a ImplicationalBase {
    type Item = &'a Implication;
    type IntoIter = std::slice::Iter<'a, Implication>;

    fn into_iter(self) -> Self::IntoIter {
        self.implications.iter()
    }
}

/// An ordered family of subsets of a groundset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground: GroundSet,
    sets: Vec<ElementSet>,
}

impl SetFamily {
    pub fn new<I>(ground: GroundSet, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = ElementSet>,
    {
        let full = ground.full();
        let sets: Vec<ElementSet> = sets.into_iter().collect();
        for set in &sets {
            if let Some(index) = set.difference(&full).first() {
                return Err(Error::ElementOutOfRange { index, size: ground.len() });
            }
        }
        Ok(SetFamily { ground, sets })
    }

    pub fn empty(ground: GroundSet) -> Self {
        SetFamily { ground, sets: Vec::new() }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.sets.iter()
    }

    pub fn contains(&self, set: &ElementSet) -> bool {
        self.sets.contains(set)
    }

    /// Sorted by cardinality, then lexicographically; duplicates removed.
    pub fn canonicalize(&self) -> SetFamily {
        let unique: BTreeSet<(usize, ElementSet)> = self.sets.iter().map(|s| (s.len(), *s)).collect();
        SetFamily { ground: self.ground.clone(), sets: unique.into_iter().map(|(_, s)| s).collect() }
    }

    /// The members as a sorted set, for order-insensitive comparison.
    pub fn to_btree(&self) -> BTreeSet<ElementSet> {
        self.sets.iter().copied().collect()
    }

    pub fn is_antichain(&self) -> bool {
        is_antichain(&self.sets)
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a ElementSet;
    type IntoIter = std::slice::Iter<'a, ElementSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

/// Pairwise incomparable and free of repeats.
pub fn is_antichain(sets: &[ElementSet]) -> bool {
    sets.iter()
        .enumerate()
        .all(|(i, a)| sets[i + 1..].iter().all(|b| !a.is_subset(b) && !b.is_subset(a)))
}

/// Inclusion-maximal members, first-occurrence order, duplicates dropped.
pub fn maximal_sets(sets: &[ElementSet]) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = Vec::new();
    for s in sets {
        if !out.contains(s) && !sets.iter().any(|t| s.is_proper_subset(t)) {
            out.push(*s);
        }
    }
    out
}

/// Inclusion-minimal members, first-occurrence order, duplicates dropped.
pub fn minimal_sets(sets: &[ElementSet]) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = Vec::new();
    for s in sets {
        if !out.contains(s) && !sets.iter().any(|t| t.is_proper_subset(s)) {
            out.push(*s);
        }
    }
    out
}

/// An irreflexive binary relation over a groundset; the arc `(c, a)` reads
/// `c R a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    ground: GroundSet,
    arcs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn empty(ground: GroundSet) -> Self {
        Relation { ground, arcs: BTreeSet::new() }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Adds `(c, a)`; loops are ignored.
    pub fn insert(&mut self, c: usize, a: usize) -> bool {
        c != a && self.arcs.insert((c, a))
    }

    pub fn contains(&self, c: usize, a: usize) -> bool {
        self.arcs.contains(&(c, a))
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.arcs.is_subset(&other.arcs)
    }

    /// `{a | c R a}`.
    pub fn successors(&self, c: usize) -> ElementSet {
        self.arcs.range((c, 0)..(c + 1, 0)).map(|&(_, a)| a).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.ground.len();
        let mut indegree = vec![0usize; n];
        for &(_, a) in &self.arcs {
            indegree[a] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for a in self.successors(v).iter() {
                indegree[a] -= 1;
                if indegree[a] == 0 {
                    ready.push(a);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Number of arcs on a longest path, or `None` if the relation has a cycle.
    pub fn longest_path(&self) -> Option<usize> {
        let order = self.topological_order()?;
        let mut depth = vec![0usize; self.ground.len()];
        for &v in order.iter().rev() {
            depth[v] = self.successors(v).iter().map(|a| depth[a] + 1).max().unwrap_or(0);
        }
        Some(depth.into_iter().max().unwrap_or(0))
    }
}
