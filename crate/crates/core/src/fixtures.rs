//! Worked examples shared by the unit tests.

pub const EXAMPLE_2: &str = include_str!("../tests/data/example2.ib");
pub const EXAMPLE_1_MI: &str = include_str!("../tests/data/example1.mi");
pub const EXAMPLE_3_CDB: &str = include_str!("../tests/data/example3.cdb");
pub const EXAMPLE_4_DBASE: &str = include_str!("../tests/data/example4.dbase");
pub const EXAMPLE_5: &str = include_str!("../tests/data/example5.ib");
pub const EXAMPLE_6_CNF: &str = include_str!("../tests/data/example6.cnf");
pub const EXAMPLE_8_MI: &str = include_str!("../tests/data/example8.mi");
pub const EXAMPLE_8_DBASE: &str = include_str!("../tests/data/example8.dbase");
pub const EXAMPLE_9: &str = include_str!("../tests/data/example9.ib");
