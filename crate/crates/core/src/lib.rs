pub mod census;
pub mod chain;
pub mod complex;
pub mod cycles;
pub mod decat;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod homology;
pub mod linalg;
pub mod matching;
pub mod poset;
pub mod subcomplexes;

pub use census::{MatchingCensus, SizeGuard};
pub use chain::BigradedChainComplex;
pub use complex::{Family, Label, Simplex, SimplicialComplex};
pub use decat::EulerPolynomial;
pub use decomposition::{verify_decomposition, ComplementVariant};
pub use cycles::{Classification, OrientedCycle, OrientedCycleCollection};
pub use error::{Error, Result};
pub use graph::Graph;
pub use homology::{Coefficients, HomologyTable};
pub use matching::Matching;
pub use poset::{FacePoset, PosetSubgraph};
