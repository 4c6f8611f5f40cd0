//! Exact calculator for permutation characters of finite groups, the
//! representation-ring certificates behind Bernoulli-shift absorption,
//! character tables, supernatural numbers, and the closed-form K-theory
//! of the associated crossed products.
//!
//! Everything is integer-exact: class functions use arbitrary
//! precision, character tables are computed modularly and lifted to
//! root-of-unity multiplicity vectors, and the abelian-group calculus
//! works on canonical normal forms.

pub mod abgrp;
pub mod chartab;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod gset;
pub mod ktheory;
pub mod modular;
pub mod perm;
pub mod repring;
pub mod supernat;

pub use error::{Error, Result};
