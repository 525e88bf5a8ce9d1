//! fixcat-core: a workbench for finite categories and the fixed-point
//! theory of their endofunctors.
//!
//! The crate represents finite categories as explicit composition tables
//! and builds, from first principles: canonical pullbacks and pushouts,
//! slice categories and base change, the category of fixed points S(F) of
//! an endofunctor F, nerve truncations with integral homology and
//! Lefschetz numbers, pretopologies and site morphisms, abelian-group
//! valued presheaves with Čech cohomology, and additive enrichments —
//! each with exhaustively verified universal properties.

pub mod abgrp;
pub mod fincat;
pub mod fixpoint;
pub mod gen;
pub mod limits;
pub mod nerve;
pub mod par;
pub mod sheaf;
pub mod site;
pub mod stdcats;
