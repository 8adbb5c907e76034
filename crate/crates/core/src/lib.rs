//! Exact computations around parity sheaves on graded Lie algebras.
//!
//! The crate covers cocharacter gradings of `sl_n` and `sp_2n`, graded sl2-triples and the
//! parabolic attached to a nilpotent element, prime conditions on root data, nilpotent orbit
//! combinatorics, compactly supported cohomology of the small varieties that show up as fibers
//! of parabolic induction, and a brute-force point counter over prime fields that checks
//! every fiber description independently.

pub mod exactlin;
pub mod rootdata;
pub mod liegrade;
pub mod orbitlib;
pub mod cohom;
pub mod ffgeom;
pub mod cli;
