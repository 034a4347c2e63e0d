//! Construction, decoding, and trapping-set analysis of hypergraph-product
//! and lifted-product CSS codes, with Monte Carlo logical-error-rate
//! estimation over the depolarizing channel.

pub mod alist;
pub mod channel;
pub mod classical;
pub mod code;
pub mod decoder;
pub mod error;
pub mod gf2;
pub mod qc;
pub mod sim;
pub mod tanner;
pub mod trapset;

pub use code::{hypergraph_product, lifted_product, CssCode, Provenance};
pub use error::{Error, Result};
pub use gf2::{BinaryMatrix, BitVec, RowSpace};
pub use qc::{QcMatrix, QcPolynomial};
pub use tanner::TannerGraph;
