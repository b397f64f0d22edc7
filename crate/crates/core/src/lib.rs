//! Computer algebra for mod-2 cohomology rings of closed manifolds:
//! Gröbner normal forms over GF(2), Steenrod squares, Wu classes, exact
//! integral even-degree companions, and the obstruction-theoretic criteria
//! deciding whether a manifold (or a bundle over it) admits a stable
//! complex structure.

pub mod catalog;
pub mod error;
pub mod gf2;
pub mod integral;
pub mod model_file;
pub mod obstruction;
pub mod ring;
pub mod steenrod;
pub mod torsion;

pub use error::{Error, Result};
pub use gf2::{Bits, GroebnerBasis, Mat2, Monomial, MonomialOrder, OrderKind, PolyGF2, VarSet};
pub use integral::{IntegralClass, IntegralEvenRing};
pub use ring::model::{CharClassData, ManifoldModel, ValidationReport};
pub use ring::{Class, Label, PresentedRing, RingBackend, TableRing, TotalClass};
pub use steenrod::{SqTable, StarCertificate};
pub use torsion::{TorsionFacts, TorsionProfile};
