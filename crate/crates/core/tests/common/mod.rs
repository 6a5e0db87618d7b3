#![allow(dead_code)]

use std::path::PathBuf;

use dbase_core::{ClosureContext, ElementSet, GroundSet, Implication, ImplicationalBase, PositiveCnf};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn sets(ground: &GroundSet, lines: &[&str]) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = lines.iter().map(|l| ground.parse_set(l).unwrap()).collect();
    out.sort();
    out
}

pub fn sorted(mut v: Vec<ElementSet>) -> Vec<ElementSet> {
    v.sort();
    v
}

/// A random base over `2..=max_n` elements with premises of size 1 to 3,
/// redrawn until the closure system is standard.
pub fn random_standard_ib(rng: &mut StdRng, max_n: usize, max_implications: usize) -> ImplicationalBase {
    loop {
        let n = rng.gen_range(2..=max_n);
        let count = rng.gen_range(0..=max_implications);
        let elements: Vec<usize> = (0..n).collect();
        let implications: Vec<Implication> = (0..count)
            .filter_map(|_| {
                let size = rng.gen_range(1..=3.min(n - 1));
                let picked: Vec<usize> = elements.choose_multiple(rng, size + 1).copied().collect();
                Implication::new(picked[1..].iter().copied().collect(), picked[0])
            })
            .collect();
        let ib = ImplicationalBase::new(GroundSet::numbered(n), implications).unwrap();
        if ClosureContext::from_ib(&ib).is_standard() {
            return ib;
        }
    }
}

pub fn random_cnf(rng: &mut StdRng, max_vars: usize, max_clauses: usize) -> PositiveCnf {
    let n = rng.gen_range(3..=max_vars);
    let m = rng.gen_range(1..=max_clauses);
    let vars: Vec<usize> = (0..n).collect();
    let clauses = (0..m).map(|_| vars.choose_multiple(rng, 3).copied().collect()).collect();
    PositiveCnf::new(GroundSet::numbered(n), clauses).unwrap()
}

/// Both bases induce the same closure on every subset.
pub fn same_closure(a: &ImplicationalBase, b: &ImplicationalBase) -> bool {
    let (ca, cb) = (ClosureContext::from_ib(a), ClosureContext::from_ib(b));
    let n = a.ground().len();
    (0u64..1 << n).map(ElementSet::from_mask).all(|s| ca.close(&s) == cb.close(&s))
}

/// `↑B⁻` and `↓B⁺` partition the `cl^b`-closed sets.
pub fn is_dual_pair(binary: &ClosureContext, b_plus: &[ElementSet], b_minus: &[ElementSet]) -> bool {
    (0u64..1 << binary.len()).map(ElementSet::from_mask).filter(|f| binary.close_binary(f) == *f).all(|f| {
        let above = b_minus.iter().any(|b| b.is_subset(&f));
        let below = b_plus.iter().any(|b| f.is_subset(b));
        above != below
    })
}
