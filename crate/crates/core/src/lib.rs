//! Monadic second-order logic of matroids.
//!
//! A set-system is a finite ground set together with a family of
//! "independent" subsets; matroids are the set-systems satisfying the
//! usual three axioms. This crate implements:
//!
//! - the MS₀/CMS₀ formula language over set-systems, with an s-expression
//!   DSL, a memoized evaluator, and a naive reference evaluator
//!   ([`logic`]);
//! - the standard library of named formulas (`Circuit`, `Basis`, `Flat`,
//!   `Separator`, ...) shipped as a DSL prelude ([`stdlib`]);
//! - transductions `(Domain, NewElement, NewIndep)` relating a set-system
//!   to derived set-systems, with a library of concrete instances — dual,
//!   simplification, components, minors, restrictions, relaxation
//!   ([`transduction`]);
//! - backwards translation: the compiler lifting a formula about
//!   transduction outputs into a formula about inputs ([`btt`]);
//! - generators for concrete matroid families — lattice-path matroids,
//!   spikes, graphic and lift matroids of biased graphs ([`families`]);
//! - sentence builders for definable classes, up to the sentences defining
//!   lattice-path matroids and the minor-closure of the class of spikes
//!   ([`classes`]);
//! - independent brute-force oracles and small-ground-set enumeration used
//!   to verify all of the above ([`oracle`]).

pub mod bits;
pub mod btt;
pub mod classes;
pub mod families;
pub mod logic;
pub mod oracle;
pub mod setsystem;
pub mod stdlib;
pub mod transduction;


pub use setsystem::{ElementSet, Matroid, SetSystem};
