//! Exact wall-and-chamber computations for moduli of holomorphic triples.
//!
//! A holomorphic triple `(E₁, E₂, φ: E₂ → E₁)` over a curve of genus `g ≥ 2`
//! is handled entirely through its type `(n₁, n₂, d₁, d₂)`. From the type the
//! crate derives stability thresholds, critical values of the parameter `α`,
//! chamber decompositions, Euler characteristics and moduli dimensions,
//! flip-locus codimensions, and large-`α` birational models. All arithmetic
//! is exact.

pub mod bounds;
pub mod error;
pub mod flips;
pub mod higgs;
pub mod homological;
mod lattice;
pub mod model;
pub mod rational;
pub mod report;
pub mod selfcheck;
pub mod walls;

pub use bounds::{AlphaBound, BoundKind};
pub use error::{Error, Result};
pub use flips::{CodimReport, FlipDecomposition, FlipOptions, Side, WallAnalysis};
pub use higgs::{HiggsInvariants, Vanishing};
pub use homological::{Consistency, ModelCase, ModelDescriptor};
pub use model::{AffineForm, FactorType, Genus, SubtripleType, TripleType};
pub use rational::{Extended, Rational};
pub use report::{Format, ReportOptions, TypeReport};
pub use walls::{Chamber, CriticalValue, Witness};
