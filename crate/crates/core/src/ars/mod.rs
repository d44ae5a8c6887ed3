//! Almost-split-sequence machinery: endomorphism algebras with certified
//! local structure, the factor-through-the-cover subspace, the `φ`-search,
//! pullback middle terms, exact Krull–Schmidt splitting, and isomorphism
//! testing with exact witnesses.

pub mod end;
pub mod factor;
pub mod iso;
pub mod sequence;
pub mod split;

pub use end::{end_algebra, EndAlgebra, LocalCertificate};
pub use factor::{factor_through_cover, find_phi, FactorSpace, PhiOutcome, Threshold};
pub use iso::iso_test;
pub use sequence::{almost_split, AlmostSplitSeq};
pub use split::{split_lattice, SplitCertificate};
