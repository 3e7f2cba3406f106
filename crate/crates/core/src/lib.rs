//! Random Cayley graphs `Cay(F_q^n, S)` whose connection set is a union of
//! punctured lines avoiding the hyperplane `x_{n-1} = 0`, together with the
//! machinery to verify their chromatic number, automorphism group and
//! distinguishing chromatic number.
//!
//! Vertices are indexed by positional base-q encoding with coordinate 0 least
//! significant, so `(1, 2)` over F_3 is vertex `1 + 2*3 = 7`.

pub mod autsolver;
pub mod bounds;
pub mod cayley;
pub mod cli;
pub mod colorings;
pub mod distinguishing;
pub mod error;
pub mod field;
pub mod geometry;
pub mod groups;
pub mod io;

pub use cayley::{CayleyGraph, ConnectionSet};
pub use colorings::Coloring;
pub use error::{Error, Result};
pub use field::{FieldVector, Matrix, PrimeField, Scalar, Space, VertexId};
pub use geometry::{LineUniverse, PointSet, ProjPoint};
pub use groups::{AffineElement, PermGroup, Permutation};
