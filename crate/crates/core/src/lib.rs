//! Stable graphs of the limit points of equisymmetric strata.
//!
//! Given a finite group action on a surface, encoded as a surface-kernel
//! epimorphism from the orbifold fundamental group of the quotient, and a
//! combinatorial multicurve on the quotient orbifold, [`limit_graph`] builds
//! the weighted stable graph of the nodal surface obtained by pinching the
//! preimage of the multicurve. [`oracle`] re-checks every result along
//! independent paths, and [`pyramid`] generates the dihedral actions with
//! quotient signature `(0; 2, 2, 2, 2, n)` together with all their
//! one- and two-curve degenerations.
//!
//! # Not provided
//!
//! * No decision procedure for when two multicurves are equivalent under the
//!   action (same orbit under the mapping classes compatible with the
//!   epimorphism). Such a test needs mapping class group machinery.
//! * No computation of the stratum itself: its connectedness and the
//!   surjectivity of the multicurve-to-boundary map are proofs, not
//!   algorithms, and have no counterpart here.
//! * Geometric realizability of a hand-written multicurve spec is not
//!   checked; only its combinatorial consistency is.
//! * For non-separating closed curves the attachment rule used for arcs
//!   (first side trivial, second side carries the translation) is applied
//!   unchanged. This is an interpretation.

pub mod group;
pub mod io;
pub mod limit_graph;
pub mod multicurve;
pub mod oracle;
pub mod orbifold;
pub mod pyramid;
pub mod stable_graph;

pub use group::{CosetPartition, GroupElement, GroupError, GroupTable, Subgroup};
pub use limit_graph::{build_stratum_graph, BuildError, LabeledStratumGraph};
pub use multicurve::{validate_multicurve, CurveKind, CurveSpec, MulticurveSpec, PieceSpec, Side};
pub use orbifold::{OrbifoldSignature, Rational, SurfaceKernelAction, Word};
pub use stable_graph::{CanonicalForm, StableGraph};
