//! The Leavitt path algebra `L_k(E)` in normal form, induced homomorphisms, kernels, and the
//! pullback verification.
//!
//! Normal form: for each regular vertex `v` let `γ_v` be the least edge id leaving `v`. A monomial
//! `αβ*` is NORMAL unless `α` and `β` both end in `γ_v` for the same `v`; such monomials are
//! rewritten by `α'γ_vγ_v*β'* -> α'β'* - Σ_{e ≠ γ_v} (α'e)(β'e)*`.

mod algebra;
mod hom;
mod kernel;
mod verify;

pub use algebra::{
    l_mul, monomial_product, normal_basis, normal_form, special_edge, window_basis, LElement, Letter, LMonomial,
};
pub use hom::{l_pullback, DescentReport, LeavittHom};
pub use kernel::{graded_ideal_generators, ker_generators, BreakingGenerator, KernelPresentation};
pub use verify::{verify_leavitt_pullback, LeavittPullbackReport, TruncatedCheck, Verdict, WindowCheck};
