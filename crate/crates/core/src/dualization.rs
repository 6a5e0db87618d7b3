//! D-generators from meet-irreducibles through antichain dualization in the
//! distributive lattice of `cl^b`-closed sets, and the gadget that reduces
//! dualization back to D-base computation.

use crate::closure::ClosureContext;
use crate::error::{Error, Result};
use crate::lattice::{meet_irreducibles_distributive, up_arrow};
use crate::model::{minimal_sets, Implication, ImplicationalBase, SetFamily};
use crate::set::{ElementSet, GroundSet};

/// Label of the element added by [`embed_dualization`].
pub const GADGET_LABEL: &str = "_d";

/// Minimal transversals of a hypergraph by Berge multiplication.
pub fn minimal_transversals(edges: &[ElementSet]) -> Vec<ElementSet> {
    let mut transversals = vec![ElementSet::empty()];
    for edge in edges {
        let mut next = Vec::new();
        for t in &transversals {
            if !t.is_disjoint(edge) {
                next.push(*t);
            } else {
                next.extend(edge.iter().map(|e| t.with(e)));
            }
        }
        transversals = minimal_sets(&next);
    }
    transversals
}

fn validate_antichain(ctx: &ClosureContext, b_plus: &SetFamily) -> Result<()> {
    if b_plus.iter().any(|b| !ctx.is_closed(b)) {
        return Err(Error::NotClosed);
    }
    if !b_plus.is_antichain() {
        return Err(Error::NotAntichain);
    }
    Ok(())
}

/// Dual of `b_plus` in the closed sets of `ctx`, assumed distributive:
/// the minimal closed sets contained in no member of `b_plus`.
fn dualize_in(ctx: &ClosureContext, b_plus: &[ElementSet]) -> Vec<ElementSet> {
    let universe = ctx.universe();
    let edges: Vec<ElementSet> = b_plus.iter().map(|b| universe.difference(b)).collect();
    let closures: Vec<ElementSet> = minimal_transversals(&edges).iter().map(|t| ctx.close_binary(t)).collect();
    let mut dual = minimal_sets(&closures);
    dual.sort();
    dual
}

/// The antichain `B⁻` dual to `B⁺` in the lattice of a binary base.
pub fn dualize_distributive(binary_ib: &ImplicationalBase, b_plus: &SetFamily) -> Result<SetFamily> {
    binary_ib.require_binary()?;
    let ctx = ClosureContext::from_ib(binary_ib);
    validate_antichain(&ctx, b_plus)?;
    SetFamily::new(binary_ib.ground().clone(), dualize_in(&ctx, b_plus.sets()))
}

/// `{M ∈ Mi | c ↑ M}`.
pub fn up_antichain(mi: &SetFamily, c: usize) -> SetFamily {
    up_arrow(mi, c)
}

/// The dual pair for one target and the D-generators read off it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGenerators {
    pub b_plus: Vec<ElementSet>,
    pub b_minus: Vec<ElementSet>,
    pub generators: Vec<ElementSet>,
}

/// `genD(c)`: the minimal spanning sets of the members of the dual of
/// `{M | c ↑ M}` in `cs^b`, except `cl^b(c)`.
pub fn d_generators_from_mi(mi: &SetFamily, c: usize) -> DualGenerators {
    let ctx = ClosureContext::from_mi(mi);
    d_generators_in(&ctx, &ctx.binary_context(), mi, c)
}

fn d_generators_in(ctx: &ClosureContext, binary: &ClosureContext, mi: &SetFamily, c: usize) -> DualGenerators {
    let b_plus = up_antichain(mi, c).sets().to_vec();
    let b_minus = dualize_in(binary, &b_plus);
    let own = ctx.singleton_closure(c);
    let generators: Vec<ElementSet> = b_minus
        .iter()
        .filter(|&&b| b != own)
        .map(|b| binary.min_spanning_set(b).expect("cl^b is a convex geometry"))
        .collect();
    debug_assert_eq!(generators.len() + usize::from(b_minus.contains(&own)), b_minus.len());
    DualGenerators { b_plus, b_minus, generators }
}

/// `Σ^b` followed by every `A ⟹ c` with `A ∈ genD(c)`.
pub fn d_base_from_mi(mi: &SetFamily) -> Result<ImplicationalBase> {
    let ctx = ClosureContext::from_mi(mi);
    ctx.require_standard()?;
    let binary = ctx.binary_context();
    let mut implications: Vec<Implication> = ctx.binary_part().implications().to_vec();
    implications.sort_by_key(Implication::canonical_key);
    for c in 0..ctx.len() {
        let mut generators = d_generators_in(&ctx, &binary, mi, c).generators;
        generators.sort();
        implications.extend(generators.into_iter().filter_map(|a| Implication::new(a, c)));
    }
    ImplicationalBase::new(mi.ground().clone(), implications)
}

/// `Mi(cs') = B⁺ ∪ {M ∪ {d} | M ∈ Mi(cs)}` over `U ∪ {d}`, with `d` labelled
/// [`GADGET_LABEL`] and placed last.
pub fn embed_dualization(binary_ib: &ImplicationalBase, b_plus: &SetFamily) -> Result<SetFamily> {
    binary_ib.require_binary()?;
    if binary_ib.ground().index_of(GADGET_LABEL).is_some() {
        return Err(Error::ReservedLabel(GADGET_LABEL.to_string()));
    }
    let ctx = ClosureContext::from_ib(binary_ib);
    validate_antichain(&ctx, b_plus)?;
    if b_plus.is_empty() {
        return Err(Error::EmptyAntichain);
    }
    let (ground, d) = binary_ib.ground().extend(GADGET_LABEL)?;
    let mi = meet_irreducibles_distributive(binary_ib)?;
    let sets = b_plus.iter().copied().chain(mi.iter().map(|m| m.with(d)));
    SetFamily::new(ground, sets)
}

/// Reads `B⁻` back from the D-base of an embedded instance: closures of the
/// non-binary premises concluding `d`, plus the `cl'`-minimal closures `cl(a)`
/// of singletons implying `d` that contain none of those premises.
pub fn recover_dual_from_dbase(dbase_prime: &ImplicationalBase, mi_prime: &SetFamily) -> Result<SetFamily> {
    let ground = dbase_prime.ground();
    if ground != mi_prime.ground() {
        return Err(Error::MalformedGadget("base and family use different groundsets".into()));
    }
    let d = match ground.index_of(GADGET_LABEL) {
        Some(d) if d + 1 == ground.len() => d,
        Some(_) => return Err(Error::MalformedGadget(format!("`{GADGET_LABEL}` must be the last element"))),
        None => return Err(Error::MalformedGadget(format!("no `{GADGET_LABEL}` element"))),
    };
    let original = GroundSet::new(ground.labels()[..d].iter().cloned())?;
    let ctx = ClosureContext::from_mi(mi_prime);

    let premises: Vec<ElementSet> =
        dbase_prime.non_binary_implications().filter(|i| i.conclusion == d).map(|i| i.premise).collect();
    let mut dual: Vec<ElementSet> = premises.iter().map(|k| ctx.close(k).without(d)).collect();

    let singles: Vec<ElementSet> = (0..d)
        .map(|a| ctx.singleton_closure(a))
        .filter(|cl| cl.contains(d) && !premises.iter().any(|k| k.is_subset(cl)))
        .collect();
    dual.extend(minimal_sets(&singles).into_iter().map(|cl| cl.without(d)));

    let mut dual = minimal_sets(&dual);
    dual.sort();
    SetFamily::new(original, dual)
}
