//! Exact-arithmetic invariants of graph algebras and shifted matrix algebras.
//!
//! The crate computes, over arbitrary-precision integers:
//!
//! * structural classification of Leavitt path algebras of finite graphs
//!   (matricial, comet, or general) together with strongly-graded and
//!   crossed-product predicates;
//! * Grothendieck groups `K0` as cokernel presentations and their graded
//!   refinements `K0^gr` as group-ring modules or Krieger dimension triples,
//!   always paired with their order unit;
//! * the graded calculus of shifted matrix algebras `M_n(A)(d1,...,dn)` over
//!   graded division rings: homogeneous component dimensions, zero-component
//!   block decompositions, and the graded-isomorphism decision with explicit
//!   witnesses;
//! * Krieger dimension triples of nonnegative integer matrices with element
//!   arithmetic, positivity certificates, and verification, refutation, and
//!   bounded search for (strong) shift equivalence.
//!
//! Everything is deterministic and exact; no floating point enters any result.

#![forbid(unsafe_code)]

pub mod abelian;
pub mod dimension;
pub mod error;
pub mod graph;
pub mod graphk;
pub mod linalg;
pub mod shiftalg;
