//! Positive 3-CNFs, the two 1-in-3-SAT gadget constructions for the
//! D-relation identification problem, and brute-force checks of both.

use crate::closure::ClosureContext;
use crate::error::{Error, Result};
use crate::model::{Implication, ImplicationalBase};
use crate::oracle::Oracle;
use crate::set::{ElementSet, GroundSet};

/// Largest variable count accepted by the exhaustive assignment search.
pub const MAX_ASSIGNMENT_VARS: usize = 24;

/// A positive 3-CNF: every clause is a set of exactly three variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveCnf {
    vars: GroundSet,
    clauses: Vec<ElementSet>,
}

impl PositiveCnf {
    pub fn new(vars: GroundSet, clauses: Vec<ElementSet>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(Error::InvalidCnf("at least one clause is required".into()));
        }
        let full = vars.full();
        for clause in &clauses {
            if clause.len() != 3 {
                return Err(Error::InvalidCnf(format!("clause `{}` does not have 3 variables", vars.format_set(clause))));
            }
            if let Some(index) = clause.difference(&full).first() {
                return Err(Error::ElementOutOfRange { index, size: vars.len() });
            }
        }
        Ok(PositiveCnf { vars, clauses })
    }

    pub fn vars(&self) -> &GroundSet {
        &self.vars
    }

    pub fn clauses(&self) -> &[ElementSet] {
        &self.clauses
    }

    /// Pairs of distinct variables sharing a clause, each listed once.
    pub fn conflict_pairs(&self) -> Vec<ElementSet> {
        let mut pairs = Vec::new();
        for clause in &self.clauses {
            let v = clause.to_vec();
            for (i, &x) in v.iter().enumerate() {
                for &y in &v[i + 1..] {
                    let pair = ElementSet::from_indices([x, y]);
                    if !pairs.contains(&pair) {
                        pairs.push(pair);
                    }
                }
            }
        }
        pairs.sort();
        pairs
    }

    /// `|T ∩ C| = 1` for every clause `C`.
    pub fn is_one_in_three(&self, assignment: &ElementSet) -> bool {
        self.clauses.iter().all(|c| c.intersection(assignment).len() == 1)
    }

    fn check_labels(&self) -> Result<()> {
        match self.vars.labels().iter().find(|l| l.starts_with('_')) {
            Some(label) => Err(Error::ReservedLabel(label.clone())),
            None => Ok(()),
        }
    }
}

/// Every 1-in-3 assignment, by exhaustive search.
pub fn one_in_three_assignments(cnf: &PositiveCnf, max_vars: usize) -> Result<Vec<ElementSet>> {
    let n = cnf.vars().len();
    let limit = max_vars.min(MAX_ASSIGNMENT_VARS);
    if n > limit {
        return Err(Error::GroundTooLarge { size: n, limit });
    }
    let mut out: Vec<ElementSet> =
        (0u64..1 << n).map(ElementSet::from_mask).filter(|t| cnf.is_one_in_three(t)).collect();
    out.sort();
    Ok(out)
}

/// A generated instance together with the pair whose D-relation encodes
/// satisfiability: `target D source` iff a 1-in-3 assignment exists.
#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub ib: ImplicationalBase,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Acyclic system, premises of size at most two.
    Acyclic,
    /// Lower bounded system with D-paths of at most two arcs.
    LowerBounded,
}

fn gadget_ground(cnf: &PositiveCnf, extra: impl IntoIterator<Item = String>) -> Result<GroundSet> {
    cnf.check_labels()?;
    let labels: Vec<String> = cnf.vars().labels().iter().cloned().chain(extra).collect();
    GroundSet::with_limit(labels, crate::set::MAX_CAPACITY)
}

fn clause_labels(count: usize) -> impl Iterator<Item = String> {
    (1..=count).map(|i| format!("_c{i}"))
}

/// Clause chain `_c1 … _c{m+1}`: `c_i v ⟹ c_{i+1}` for `v ∈ C_i`, and
/// `v w ⟹ c_{m+1}` for conflicting pairs. Source `c_1`, target `c_{m+1}`.
pub fn gen_acyclic_instance(cnf: &PositiveCnf) -> Result<ReductionInstance> {
    let n = cnf.vars().len();
    let m = cnf.clauses().len();
    let ground = gadget_ground(cnf, clause_labels(m + 1))?;
    let chain = |i: usize| n + i;
    let target = chain(m);
    let mut implications = Vec::new();
    for (i, clause) in cnf.clauses().iter().enumerate() {
        for v in clause.iter() {
            implications.extend(Implication::new(ElementSet::from_indices([chain(i), v]), chain(i + 1)));
        }
    }
    for pair in cnf.conflict_pairs() {
        implications.extend(Implication::new(pair, target));
    }
    let ib = ImplicationalBase::new(ground, implications)?;
    Ok(ReductionInstance { ib, source: chain(0), target })
}

/// Clause elements `_c1 … _cm` plus `_a`, `_b`: `a v ⟹ c_j` for `v ∈ C_j`,
/// `c_1 … c_m ⟹ b`, conflicting pairs `⟹ b` and `c_j ⟹ a`. Source `a`,
/// target `b`.
pub fn gen_lower_bounded_instance(cnf: &PositiveCnf) -> Result<ReductionInstance> {
    let n = cnf.vars().len();
    let m = cnf.clauses().len();
    let extra = clause_labels(m).chain(["_a".to_string(), "_b".to_string()]);
    let ground = gadget_ground(cnf, extra)?;
    let (a, b) = (n + m, n + m + 1);
    let clause_elements: ElementSet = (n..n + m).collect();
    let mut implications = Vec::new();
    for (j, clause) in cnf.clauses().iter().enumerate() {
        for v in clause.iter() {
            implications.extend(Implication::new(ElementSet::from_indices([a, v]), n + j));
        }
    }
    implications.extend(Implication::new(clause_elements, b));
    for pair in cnf.conflict_pairs() {
        implications.extend(Implication::new(pair, b));
    }
    implications.extend(clause_elements.iter().filter_map(|c| Implication::binary(c, a)));
    let ib = ImplicationalBase::new(ground, implications)?;
    Ok(ReductionInstance { ib, source: a, target: b })
}

pub fn generate(cnf: &PositiveCnf, reduction: Reduction) -> Result<ReductionInstance> {
    match reduction {
        Reduction::Acyclic => gen_acyclic_instance(cnf),
        Reduction::LowerBounded => gen_lower_bounded_instance(cnf),
    }
}

/// Outcome of [`verify_reduction`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub reduction: Reduction,
    /// `target D source` according to the brute-force oracle.
    pub relation_holds: bool,
    pub assignment_exists: bool,
    /// Structural claims of the construction hold.
    pub structure_holds: bool,
    /// Human-readable reasons for any failed structural claim.
    pub violations: Vec<String>,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.relation_holds == self.assignment_exists && self.structure_holds
    }
}

/// Checks `target D source ⟺ φ has a 1-in-3 assignment` and the structural
/// claims of the chosen construction, everything by exhaustive search.
pub fn verify_reduction(cnf: &PositiveCnf, reduction: Reduction, max_ground: usize) -> Result<ReductionReport> {
    let instance = generate(cnf, reduction)?;
    let ctx = ClosureContext::from_ib(&instance.ib);
    let oracle = Oracle::new(&ctx, max_ground)?;
    let assignment_exists = !one_in_three_assignments(cnf, max_ground)?.is_empty();
    let mut violations = Vec::new();

    let relation_holds = match reduction {
        Reduction::Acyclic => {
            if instance.ib.iter().any(|i| i.premise.len() > 2) {
                violations.push("a premise has more than two elements".to_string());
            }
            if !instance.ib.implication_graph().is_acyclic() {
                violations.push("implication graph has a cycle".to_string());
            }
            oracle.d_generators(instance.target).iter().any(|g| g.contains(instance.source))
        }
        Reduction::LowerBounded => {
            if !ctx.is_standard() {
                violations.push("system is not standard".to_string());
            }
            let relation = oracle.d_relation();
            match relation.longest_path() {
                None => violations.push("D-relation has a cycle".to_string()),
                Some(len) if len > 2 => violations.push(format!("D-relation has a path of {len} arcs")),
                Some(_) => {}
            }
            relation.contains(instance.target, instance.source)
        }
    };
    Ok(ReductionReport {
        reduction,
        relation_holds,
        assignment_exists,
        structure_holds: violations.is_empty(),
        violations,
    })
}

/// `a_i ⟹ b_i` for `i ≤ n` and `b_1 … b_n ⟹ c`: its own D-base, while the
/// canonical direct base has `2^n + 1` implications.
pub fn gap_family(n: usize) -> Result<ImplicationalBase> {
    let labels: Vec<String> = (1..=n)
        .map(|i| format!("a{i}"))
        .chain((1..=n).map(|i| format!("b{i}")))
        .chain(["c".to_string()])
        .collect();
    let ground = GroundSet::with_limit(labels, crate::set::MAX_CAPACITY)?;
    let mut implications: Vec<Implication> = (0..n).filter_map(|i| Implication::binary(i, n + i)).collect();
    implications.extend(Implication::new((n..2 * n).collect(), 2 * n));
    ImplicationalBase::new(ground, implications)
}
