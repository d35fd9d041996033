//! Instance files shipped with the crate.

use crate::covering::Instance;
use crate::error::Result;

pub const TRIVIAL_H: &str = include_str!("../fixtures/trivial-h.toml");
pub const Z2_GAMMA: &str = include_str!("../fixtures/z2-gamma.toml");
pub const Z3_INVERSION: &str = include_str!("../fixtures/z3-inversion.toml");
pub const V4_CYCLIC: &str = include_str!("../fixtures/v4-cyclic.toml");
pub const S3_GAMMA: &str = include_str!("../fixtures/s3-gamma.toml");
pub const ELLIPTIC: &str = include_str!("../fixtures/elliptic-y2-x3-x.toml");

/// `(file stem, text)` of every shipped covering fixture with points.
pub const COVERINGS: [(&str, &str); 5] = [
    ("trivial-h", TRIVIAL_H),
    ("z2-gamma", Z2_GAMMA),
    ("z3-inversion", Z3_INVERSION),
    ("v4-cyclic", V4_CYCLIC),
    ("s3-gamma", S3_GAMMA),
];

pub fn by_name(name: &str) -> Option<&'static str> {
    COVERINGS
        .iter()
        .chain(std::iter::once(&("elliptic-y2-x3-x", ELLIPTIC)))
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
}

pub fn all() -> Result<Vec<Instance>> {
    COVERINGS.iter().map(|(_, t)| Instance::parse(t)).collect()
}
