//! Exact finite-level Iwasawa theory for schemes over finite fields.
//!
//! Coefficients live in finite rings `Omega = (Z/l^m)[x]/(f)`. A covering
//! with group `G = H x| Gamma` is described by its closed points and their
//! Frobenius elements; from that data the crate builds classical
//! L-functions (Euler product and trace formula), the K1 class `ncL` as
//! matrices over the crossed Laurent ring `Omega[H][gamma^+-1]`, its
//! evaluations at representations, Iwasawa cohomology modules with their
//! Fitting ideals, and the module-level connecting homomorphism.

#![allow(clippy::needless_range_loop)]

pub mod check;
pub mod coeff;
pub mod convention;
pub mod covering;
pub mod crossed;
pub mod error;
pub mod fixtures;
mod fp;
pub mod group;
pub mod ideal;
pub mod iwasawa;
pub mod lfun;
pub mod matrix;
pub mod ncl;
pub mod poly;
pub mod ratfunc;
pub mod relative_k;
pub mod rep;
pub mod ring;
pub mod series;
pub mod suite;
pub mod zmod;

pub use check::Check;
pub use coeff::{CoeffRing, Elem};
pub use convention::{theta_rho, theta_rho_matrix};
pub use covering::{subcover_points, CohomologySpec, CoveringSpec, Instance, Point, SheafSpec};
pub use crossed::{CrossedLaurent, CrossedRing};
pub use error::{Error, Result};
pub use group::{GElement, GroupData, OpenSubgroup};
pub use ideal::{eq_up_to_unit, unit_certificate, Completion, IdealClass};
pub use iwasawa::{
    char_element, coker_tower, fitting_ideal, kernel_chain_report, limit_module, mc_report,
    verify_mc_commutative, GammaModule, KernelReport, McReport, Tower,
};
pub use lfun::{derived_cohomology, euler_product, trace_formula_l};
pub use matrix::Matrix;
pub use ncl::{
    ncl_evaluate, ncl_from_cohomology, ncl_from_points, ncl_from_stalks, ncl_push_quotient,
    ncl_twist, verify_artin_induction, verify_interpolation, K1Class,
};
pub use poly::{is_in_p, is_in_s, Poly, PolyRing};
pub use ratfunc::{compare_series, RationalFunction};
pub use relative_k::{
    block_reduction_check, d_connecting, verify_d_exactness, verify_d_multiplicative,
    verify_limit_consistency, TorsionClass,
};
pub use rep::{induce_rep, Rep};
pub use ring::{CommRing, Ring};
pub use series::Series;
