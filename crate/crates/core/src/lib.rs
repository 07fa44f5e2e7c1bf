//! Exact symbolic kernel for the category of Weil algebras generated by
//! `W = k[x]/x²` under products and tensors.
//!
//! Objects are cographs ([`cograph::Cotree`]), morphisms are generator images
//! ([`morphism::Morphism`]), and every morphism decomposes into the tangent
//! generators `ε, η, +, l, c` ([`genexpr::decompose`]).

pub mod cograph;
pub mod genexpr;
pub mod morphism;
pub mod rig;
pub mod syntax;
pub mod verify;
pub mod weilalg;

pub use cograph::{Cotree, Graph, VertexSet};
pub use genexpr::{decompose, GenExpr};
pub use morphism::{Morphism, MorphismError};
pub use rig::{Coeff, Rig};
pub use verify::{enumerate_hom, AxiomReport, HomSet};
pub use weilalg::{Polynomial, WeilObject};
