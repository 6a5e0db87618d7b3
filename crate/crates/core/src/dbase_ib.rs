//! D-generators and the D-base from an implicational base, by traversal of
//! solution graphs over D-minimal keys of reduced bases.

use std::collections::{HashSet, VecDeque};

use crate::closure::ClosureContext;
use crate::error::{Error, Result};
use crate::model::{Implication, ImplicationalBase};
use crate::set::ElementSet;

/// Checks `c ∈ cl(A)` and `c ∉ cl(cl^b(A) \ {a})` for every `a ∈ A`, using at
/// most `|A| + 1` closure calls.
pub fn is_d_generator(ctx: &ClosureContext, set: &ElementSet, c: usize) -> Result<bool> {
    if set.contains(c) {
        return Err(Error::TargetInSet);
    }
    if !ctx.close(set).contains(c) {
        return Ok(false);
    }
    let span = ctx.close_binary(set);
    Ok(set.iter().all(|a| !ctx.close(&span.without(a)).contains(c)))
}

/// `U_c = {a | c ∉ cl(a)}`.
pub fn non_generating_elements(ctx: &ClosureContext, c: usize) -> ElementSet {
    (0..ctx.len()).filter(|&a| !ctx.singleton_closure(a).contains(c)).collect()
}

/// `c` has a D-generator iff `U_c` is not closed.
pub fn has_d_generators(ctx: &ClosureContext, c: usize) -> bool {
    ctx.close(&non_generating_elements(ctx, c)).contains(c)
}

/// Linear order used to pick the first removable extreme element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ElementOrder {
    /// Declaration order of the groundset.
    Natural,
    /// By `|cl(a)|`, then label; a linear extension of the `cl^b` order.
    #[default]
    SizeLabel,
}

pub fn linear_order(ctx: &ClosureContext, order: ElementOrder) -> Vec<usize> {
    let mut elements: Vec<usize> = (0..ctx.len()).collect();
    if order == ElementOrder::SizeLabel {
        let ground = ctx.ground();
        elements.sort_by(|&a, &b| {
            let key = |x: usize| (ctx.singleton_closure(x).len(), ground.label(x));
            key(a).cmp(&key(b))
        });
    }
    elements
}

/// The base `(U_c, Σ_c)` whose D-minimal keys are the D-generators of `c`.
#[derive(Clone, Debug)]
pub struct ReducedBase {
    target: usize,
    u_c: ElementSet,
    sigma_c: ImplicationalBase,
    ctx_c: ClosureContext,
    binary_c: ClosureContext,
    order: Vec<usize>,
}

impl ReducedBase {
    /// `Σ_c = Σ_1 ∪ Σ_2` where `Σ_1` keeps the implications inside `U_c` and
    /// `Σ_2` replaces each `A ⟹ d` with `A ⊆ U_c`, `d ∉ U_c` by
    /// `A ⟹ b` for every `b ∈ U_c \ cl^b(A)`.
    pub fn build(ib: &ImplicationalBase, ctx: &ClosureContext, c: usize, order: ElementOrder) -> Result<Self> {
        if !has_d_generators(ctx, c) {
            return Err(Error::NoDGenerators(ctx.ground().label(c).to_string()));
        }
        let u_c = non_generating_elements(ctx, c);
        let mut implications = Vec::new();
        for imp in ib.iter() {
            if !imp.premise.is_subset(&u_c) {
                continue;
            }
            if u_c.contains(imp.conclusion) {
                implications.push(*imp);
            } else {
                let free = u_c.difference(&ctx.close_binary(&imp.premise));
                implications.extend(free.iter().filter_map(|b| Implication::new(imp.premise, b)));
            }
        }
        let sigma_c = ImplicationalBase::new(ib.ground().clone(), implications)?;
        let ctx_c = ClosureContext::from_ib(&sigma_c);
        let binary_c = ctx_c.binary_context();
        let order = linear_order(ctx, order).into_iter().filter(|&a| u_c.contains(a)).collect();
        Ok(ReducedBase { target: c, u_c, sigma_c, ctx_c, binary_c, order })
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn u_c(&self) -> ElementSet {
        self.u_c
    }

    pub fn sigma_c(&self) -> &ImplicationalBase {
        &self.sigma_c
    }

    pub fn context(&self) -> &ClosureContext {
        &self.ctx_c
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `S ⊆ U_c` is a key of `(U_c, Σ_c)`, i.e. generates `c` in the source.
    pub fn is_key(&self, set: &ElementSet) -> bool {
        set.is_subset(&self.u_c) && self.ctx_c.close(set) == self.u_c
    }

    /// `Min`: greedily drops the first removable extreme element of a
    /// `cl_c^b`-closed key, then returns the extreme elements of what is left.
    pub fn min_reduce(&self, set: &ElementSet) -> Result<ElementSet> {
        if self.binary_c.close_binary(set) != *set {
            return Err(Error::NotClosed);
        }
        if !self.is_key(set) {
            return Err(Error::NotSpanning);
        }
        let mut current = *set;
        // Once `F \ {x}` fails to be a key, so does every smaller `F' \ {x}`.
        let mut stuck = ElementSet::empty();
        'scan: loop {
            let extreme = self.binary_c.extreme_elements(&current);
            for &x in &self.order {
                if !extreme.contains(x) || stuck.contains(x) {
                    continue;
                }
                let smaller = current.without(x);
                if self.is_key(&smaller) {
                    current = smaller;
                    continue 'scan;
                }
                stuck.insert(x);
            }
            return Ok(extreme);
        }
    }

    /// Transition function `N(A)` of the solution graph of `c`.
    pub fn neighbors(&self, ctx: &ClosureContext, set: &ElementSet) -> Result<Vec<ElementSet>> {
        if !set.is_subset(&self.u_c) || !is_d_generator(ctx, set, self.target)? {
            return Err(Error::NotDGenerator(ctx.ground().label(self.target).to_string()));
        }
        Ok(self.transitions(set))
    }

    fn transitions(&self, set: &ElementSet) -> Vec<ElementSet> {
        let span = self.binary_c.close_binary(set);
        let mut out = Vec::new();
        for imp in self.sigma_c.non_binary_implications() {
            let lowered = span.difference(&self.binary_c.singleton_closure(imp.conclusion)) | imp.premise;
            let candidate = self.binary_c.close_binary(&lowered);
            if !self.is_key(&candidate) {
                continue;
            }
            let next = self.min_reduce(&candidate).expect("closed key");
            if !out.contains(&next) {
                out.push(next);
            }
        }
        out
    }

    /// First D-generator, `Min(U_c)`.
    pub fn first_generator(&self) -> ElementSet {
        self.min_reduce(&self.u_c).expect("U_c is a closed key")
    }
}

/// Breadth-first traversal of the solution graph of a single target.
pub struct DGeneratorStream {
    reduced: Option<ReducedBase>,
    visited: HashSet<ElementSet>,
    queue: VecDeque<ElementSet>,
}

impl DGeneratorStream {
    pub fn new(ib: &ImplicationalBase, c: usize, order: ElementOrder) -> Result<Self> {
        let ctx = ClosureContext::from_ib(ib);
        ctx.require_standard()?;
        if !has_d_generators(&ctx, c) {
            return Ok(DGeneratorStream { reduced: None, visited: HashSet::new(), queue: VecDeque::new() });
        }
        let reduced = ReducedBase::build(ib, &ctx, c, order)?;
        let seed = reduced.first_generator();
        Ok(Self::from_seed(reduced, seed))
    }

    /// Starts from an arbitrary member of `genD(c)`.
    pub fn from_seed(reduced: ReducedBase, seed: ElementSet) -> Self {
        DGeneratorStream { reduced: Some(reduced), visited: HashSet::from([seed]), queue: VecDeque::from([seed]) }
    }
}

impl Iterator for DGeneratorStream {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let reduced = self.reduced.as_ref()?;
        let current = self.queue.pop_front()?;
        for next in reduced.transitions(&current) {
            if self.visited.insert(next) {
                self.queue.push_back(next);
            }
        }
        Some(current)
    }
}

pub fn enumerate_d_generators(ib: &ImplicationalBase, c: usize, order: ElementOrder) -> Result<DGeneratorStream> {
    DGeneratorStream::new(ib, c, order)
}

/// Streams `Σ_D`: first `Σ^b`, then one implication per (D-generator, target)
/// pair while traversing the union of all solution graphs, one strongly
/// connected region after another.
pub struct DBaseStream {
    ctx: ClosureContext,
    reduced: Vec<Option<ReducedBase>>,
    covered: Vec<bool>,
    binary: std::vec::IntoIter<Implication>,
    pending: VecDeque<Implication>,
    queue: VecDeque<ElementSet>,
    visited: HashSet<ElementSet>,
    max_visited: Option<usize>,
    failed: bool,
}

impl DBaseStream {
    pub fn new(ib: &ImplicationalBase, order: ElementOrder) -> Result<Self> {
        let ctx = ClosureContext::from_ib(ib);
        ctx.require_standard()?;
        let reduced = (0..ctx.len())
            .map(|c| has_d_generators(&ctx, c).then(|| ReducedBase::build(ib, &ctx, c, order)).transpose())
            .collect::<Result<Vec<_>>>()?;
        let mut binary: Vec<Implication> = ctx.binary_part().implications().to_vec();
        binary.sort_by_key(Implication::canonical_key);
        Ok(DBaseStream {
            covered: vec![false; ctx.len()],
            ctx,
            reduced,
            binary: binary.into_iter(),
            pending: VecDeque::new(),
            queue: VecDeque::new(),
            visited: HashSet::new(),
            max_visited: None,
            failed: false,
        })
    }

    /// Fails with `MemoryCapExceeded` once more than `cap` generators are stored.
    pub fn with_max_visited(mut self, cap: usize) -> Self {
        self.max_visited = Some(cap);
        self
    }

    pub fn visited_count(&self) -> usize {
        self.visited.len()
    }

    fn enqueue(&mut self, set: ElementSet) -> Result<()> {
        if self.visited.insert(set) {
            if let Some(cap) = self.max_visited {
                if self.visited.len() > cap {
                    return Err(Error::MemoryCapExceeded(cap));
                }
            }
            self.queue.push_back(set);
        }
        Ok(())
    }

    fn expand(&mut self, set: ElementSet) -> Result<()> {
        let candidates = self.ctx.close(&set).difference(&set);
        let mut next = Vec::new();
        for c in candidates.iter() {
            let Some(reduced) = &self.reduced[c] else { continue };
            if !set.is_subset(&reduced.u_c) || !is_d_generator(&self.ctx, &set, c)? {
                continue;
            }
            self.covered[c] = true;
            self.pending.push_back(Implication { premise: set, conclusion: c });
            next.extend(reduced.transitions(&set));
        }
        next.into_iter().try_for_each(|n| self.enqueue(n))
    }

    fn restart(&mut self) -> Result<bool> {
        let uncovered = (0..self.ctx.len()).find(|&c| !self.covered[c] && self.reduced[c].is_some());
        match uncovered {
            Some(c) => {
                let seed = self.reduced[c].as_ref().expect("checked above").first_generator();
                self.enqueue(seed)?;
                Ok(true)
            }
            None => Ok(false),
        }
    }

    fn step(&mut self) -> Result<Option<Implication>> {
        if let Some(imp) = self.binary.next() {
            return Ok(Some(imp));
        }
        loop {
            if let Some(imp) = self.pending.pop_front() {
                return Ok(Some(imp));
            }
            if let Some(set) = self.queue.pop_front() {
                self.expand(set)?;
            } else if !self.restart()? {
                return Ok(None);
            }
        }
    }
}

impl Iterator for DBaseStream {
    type Item = Result<Implication>;

    fn next(&mut self) -> Option<Result<Implication>> {
        if self.failed {
            return None;
        }
        match self.step() {
            Ok(item) => item.map(Ok),
            Err(err) => {
                self.failed = true;
                Some(Err(err))
            }
        }
    }
}

/// Collects the D-base of a standard implicational base, in emission order.
pub fn d_base(ib: &ImplicationalBase, order: ElementOrder) -> Result<ImplicationalBase> {
    let implications = DBaseStream::new(ib, order)?.collect::<Result<Vec<_>>>()?;
    ImplicationalBase::new(ib.ground().clone(), implications)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{EXAMPLE_2, EXAMPLE_4_DBASE, EXAMPLE_5, EXAMPLE_9};
    use crate::format::{parse_ib, serialize_ib};
    use crate::set::GroundSet;
    use std::collections::BTreeSet;

    fn family(ground: &GroundSet, lines: &[&str]) -> BTreeSet<ElementSet> {
        lines.iter().map(|l| ground.parse_set(l).unwrap()).collect()
    }

    fn label(ground: &GroundSet, l: &str) -> usize {
        ground.index_of(l).unwrap()
    }

    #[test]
    fn d_generator_test() {
        let ib = parse_ib(EXAMPLE_2).unwrap();
        let ctx = ClosureContext::from_ib(&ib);
        let g = ctx.ground().clone();
        let six = label(&g, "6");
        assert!(is_d_generator(&ctx, &g.parse_set("4 5").unwrap(), six).unwrap());
        assert!(!is_d_generator(&ctx, &g.parse_set("2 5").unwrap(), six).unwrap());
        assert!(is_d_generator(&ctx, &g.parse_set("3 4").unwrap(), label(&g, "1")).unwrap());
        assert!(!is_d_generator(&ctx, &g.parse_set("1 2").unwrap(), six).unwrap());
        assert_eq!(is_d_generator(&ctx, &g.parse_set("5 6").unwrap(), six), Err(Error::TargetInSet));
    }

    #[test]
    fn elements_with_d_generators() {
        let ctx = ClosureContext::from_ib(&parse_ib(EXAMPLE_9).unwrap());
        let with: Vec<&str> = (0..8).filter(|&c| has_d_generators(&ctx, c)).map(|c| ctx.ground().label(c)).collect();
        assert_eq!(with, ["2", "3", "4"]);
        let dist = ClosureContext::from_ib(&parse_ib(EXAMPLE_5).unwrap());
        assert!((0..5).all(|c| !has_d_generators(&dist, c)));
        let ex2 = ClosureContext::from_ib(&parse_ib(EXAMPLE_2).unwrap());
        assert!(!has_d_generators(&ex2, 3));
    }

    fn reduced_9(c: &str, order: ElementOrder) -> (ImplicationalBase, ClosureContext, ReducedBase) {
        let ib = parse_ib(EXAMPLE_9).unwrap();
        let ctx = ClosureContext::from_ib(&ib);
        let c = label(ib.ground(), c);
        let rb = ReducedBase::build(&ib, &ctx, c, order).unwrap();
        (ib, ctx, rb)
    }

    #[test]
    fn reduced_base_for_four() {
        let (ib, _, rb) = reduced_9("4", ElementOrder::Natural);
        let expected = parse_ib(
            "ground: 1 2 3 4 5 6 7 8\n3 -> 2\n2 -> 1\n1 5 -> 2\n1 6 -> 2\n2 7 -> 3\n2 8 -> 3\n\
             3 6 -> 5 7 8\n3 7 -> 5 6 8\n",
        )
        .unwrap();
        assert_eq!(serialize_ib(rb.sigma_c()), serialize_ib(&expected));
        assert_eq!(rb.u_c(), ib.ground().full().without(3));
    }

    #[test]
    fn reduced_base_for_two() {
        let (ib, _, rb) = reduced_9("2", ElementOrder::Natural);
        let g = ib.ground();
        assert_eq!(rb.u_c(), g.parse_set("1 5 6 7 8").unwrap());
        let shown: Vec<String> = rb.sigma_c().iter().map(|i| i.display(g)).collect();
        assert_eq!(shown, ["1 5 -> 6", "1 5 -> 7", "1 5 -> 8", "1 6 -> 5", "1 6 -> 7", "1 6 -> 8"]);
    }

    #[test]
    fn no_d_generators_is_an_error() {
        let ib = parse_ib(EXAMPLE_9).unwrap();
        let ctx = ClosureContext::from_ib(&ib);
        assert!(matches!(ReducedBase::build(&ib, &ctx, 0, ElementOrder::Natural), Err(Error::NoDGenerators(l)) if l == "1"));
    }

    #[test]
    fn min_procedure() {
        let (ib, ctx, rb) = reduced_9("4", ElementOrder::Natural);
        let g = ib.ground();
        let start = g.parse_set("1 2 6 7 8").unwrap();
        assert_eq!(rb.min_reduce(&start).unwrap(), g.parse_set("1 6 8").unwrap());
        let closed_gen = g.parse_set("1 6 8").unwrap();
        assert_eq!(rb.min_reduce(&closed_gen).unwrap(), closed_gen);
        let first = rb.first_generator();
        assert!(is_d_generator(&ctx, &first, 3).unwrap());
        assert_eq!(rb.min_reduce(&g.parse_set("1 2").unwrap()), Err(Error::NotSpanning));
        assert_eq!(rb.min_reduce(&g.parse_set("2").unwrap()), Err(Error::NotClosed));
    }

    #[test]
    fn transition_from_167_to_168() {
        let (ib, ctx, rb) = reduced_9("4", ElementOrder::Natural);
        let g = ib.ground();
        let n = rb.neighbors(&ctx, &g.parse_set("1 6 7").unwrap()).unwrap();
        assert!(n.contains(&g.parse_set("1 6 8").unwrap()));
        assert!(matches!(rb.neighbors(&ctx, &g.parse_set("1 2").unwrap()), Err(Error::NotDGenerator(_))));
    }

    #[test]
    fn generators_of_example_9() {
        let ib = parse_ib(EXAMPLE_9).unwrap();
        let g = ib.ground().clone();
        let cases = [
            ("2", vec!["1 5", "1 6"]),
            ("3", vec!["1 5 7", "1 5 8", "1 6 7", "1 6 8", "2 7", "2 8"]),
            ("4", vec!["1 5 7", "1 6 7", "1 6 8", "2 7", "3 6"]),
        ];
        for order in [ElementOrder::Natural, ElementOrder::SizeLabel] {
            for (c, expected) in &cases {
                let listed: Vec<ElementSet> = enumerate_d_generators(&ib, label(&g, c), order).unwrap().collect();
                let unique: BTreeSet<ElementSet> = listed.iter().copied().collect();
                assert_eq!(unique.len(), listed.len());
                assert_eq!(unique, family(&g, expected), "genD({c})");
            }
            assert_eq!(enumerate_d_generators(&ib, 0, order).unwrap().count(), 0);
        }
    }

    #[test]
    fn d_base_of_running_example() {
        let ib = parse_ib(EXAMPLE_2).unwrap();
        for order in [ElementOrder::Natural, ElementOrder::SizeLabel] {
            let base = d_base(&ib, order).unwrap();
            assert_eq!(base.len(), 8);
            assert_eq!(serialize_ib(&base), serialize_ib(&parse_ib(EXAMPLE_4_DBASE).unwrap()));
        }
    }

    #[test]
    fn shared_generators_yield_every_target() {
        let ib = parse_ib(EXAMPLE_9).unwrap();
        let base = d_base(&ib, ElementOrder::SizeLabel).unwrap();
        let g = ib.ground();
        let p = g.parse_set("1 6 7").unwrap();
        let targets: Vec<&str> =
            base.iter().filter(|i| i.premise == p).map(|i| g.label(i.conclusion)).collect();
        assert_eq!(targets, ["3", "4"]);
        // Σ^b has 6 members; genD sizes 2 + 6 + 5.
        assert_eq!(base.len(), 6 + 13);
    }

    #[test]
    fn not_standard_rejected() {
        let ib = parse_ib("ground: a b\na -> b\nb -> a").unwrap();
        assert!(matches!(d_base(&ib, ElementOrder::SizeLabel), Err(Error::NotStandard(_))));
    }

    #[test]
    fn memory_cap() {
        let ib = parse_ib(EXAMPLE_9).unwrap();
        let results: Vec<Result<Implication>> =
            DBaseStream::new(&ib, ElementOrder::SizeLabel).unwrap().with_max_visited(1).collect();
        assert_eq!(results.last(), Some(&Err(Error::MemoryCapExceeded(1))));
    }
}
