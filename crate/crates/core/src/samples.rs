//! Bundled quivers and modules used by the worked examples and tests.

use crate::quiver::{parse_quiver, BoundQuiver};

pub const N3: &str = include_str!("../data/n3.quiver");
pub const CT5: &str = include_str!("../data/ct5.quiver");
pub const A2: &str = include_str!("../data/a2.quiver");
pub const A3_REL: &str = include_str!("../data/a3rel.quiver");
pub const KRONECKER: &str = include_str!("../data/kronecker.quiver");

pub const N3_MODULE: &str = include_str!("../data/n3_m.module");
pub const N3_MODULE_MATRICES: &str = include_str!("../data/n3_m_matrices.module");
pub const CT5_MODULE: &str = include_str!("../data/ct5_m.module");
pub const CT5_MODULE_SUM: &str = include_str!("../data/ct5_m_sum.module");

fn load(text: &str) -> BoundQuiver {
    parse_quiver(text).expect("bundled quiver parses")
}

pub fn n3() -> BoundQuiver {
    load(N3)
}

pub fn ct5() -> BoundQuiver {
    load(CT5)
}

pub fn a2() -> BoundQuiver {
    load(A2)
}

pub fn a3_rel() -> BoundQuiver {
    load(A3_REL)
}

pub fn kronecker() -> BoundQuiver {
    load(KRONECKER)
}
