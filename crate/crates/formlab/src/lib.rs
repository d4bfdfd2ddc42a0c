//! formlab: an exact symbolic engine for de Rham, Dolbeault, Bott-Chern and
//! Aeppli cohomology, harmonic spaces, ∂∂̄-lemma and geometric-formality
//! verdicts, and Dolbeault / Aeppli-Bott-Chern Massey triple products on
//! finite character-twisted invariant form complexes of complex
//! nilmanifolds and solvmanifolds.
//!
//! All arithmetic is over Gaussian rationals; there is no floating point
//! anywhere and every output is deterministic under the canonical monomial
//! order.
//!
//! The building blocks:
//!
//! * [`scalar`] — exact Gaussian-rational scalars;
//! * [`exterior`] — sector-twisted exterior algebra (monomials, forms,
//!   wedge, conjugation) and [`formexpr`] — the text expression language;
//! * [`calculus`] — models, differentials, the antilinear Hodge star and
//!   harmonicity tests;
//! * [`linalg`] — exact elimination, kernels, subspaces;
//! * [`cohomology`] — the four theories, harmonic spaces, dualities,
//!   Frölicher, ∂∂̄-lemma and formality checks;
//! * [`massey`] — Dolbeault and Aeppli-Bott-Chern Massey triple products;
//! * [`catalog`] — built-in models, deformations, group actions, lattice
//!   fixed-point enumeration;
//! * [`modelfile`], [`table`], [`verify`] — JSON model I/O, table reports,
//!   and the embedded verification suite behind `formlab verify`.

pub mod calculus;
pub mod catalog;
pub mod cohomology;
pub mod exterior;
pub mod formexpr;
pub mod linalg;
pub mod massey;
pub mod modelfile;
pub mod scalar;
pub mod table;
pub mod verify;

pub use calculus::{HarmonicFlavor, Model};
pub use cohomology::{Complex, Theory};
pub use exterior::{Form, Monomial, Sector};
pub use scalar::Scalar;
