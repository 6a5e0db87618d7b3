//! Closure systems given by implicational bases or meet-irreducible sets, and
//! the D-base, D-relation and related objects computed from them.

pub mod closure;
pub mod dbase_ib;
pub mod dualization;
pub mod error;
pub mod format;
pub mod gadgets;
pub mod lattice;
pub mod model;
pub mod oracle;
pub mod set;

#[cfg(test)]
mod fixtures;

pub use closure::ClosureContext;
pub use dbase_ib::{
    d_base, enumerate_d_generators, has_d_generators, is_d_generator, DBaseStream, DGeneratorStream, ElementOrder,
    ReducedBase,
};
pub use dualization::{
    d_base_from_mi, d_generators_from_mi, dualize_distributive, embed_dualization, recover_dual_from_dbase,
    up_antichain,
};
pub use error::{Error, Result};
pub use format::{
    parse_cnf, parse_cnf_with, parse_ib, parse_ib_with, parse_set_family, parse_set_family_with, serialize_cnf,
    serialize_ib, serialize_relation, serialize_set_family, ParseOptions,
};
pub use gadgets::{PositiveCnf, Reduction, ReductionInstance, ReductionReport};
pub use lattice::{classify, enumerate_closed_sets, meet_irreducibles, meet_irreducibles_distributive, Classification};
pub use model::{Implication, ImplicationalBase, Relation, SetFamily};
pub use oracle::Oracle;
pub use set::{ElementSet, GroundSet};
