//! Finite involutive two-valued groups.
//!
//! A two-valued multiplication assigns to every ordered pair `(x, y)` an
//! unordered pair `x * y = [a, b]`. Tables are checked against associativity
//! (as 4-element multisets), the strong identity `x * e = e * x = [x, x]` and
//! involutivity (`e` lies in `x * y` exactly when `x = y`). On top of that the
//! crate computes power sequences and orders, builds coset tables from
//! ordinary groups, and enumerates every structure of a small order up to
//! isomorphism so that commutativity can be checked across all of them.

pub mod axioms;
pub mod construct;
pub mod enumerate;
pub mod group;
pub mod io;
pub mod multiset;
pub mod powers;
pub mod table;
pub mod theoremlab;

pub use axioms::{verify_all, AxiomReport, Verdict};
pub use group::GroupTable;
pub use multiset::Multiset;
pub use table::{Element, Pair, Table, TableError};
