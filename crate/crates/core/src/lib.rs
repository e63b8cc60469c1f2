//! Exact computation of splitting types of holomorphic vector bundles on the
//! Riemann sphere.
//!
//! A rank-`k` bundle is a `k x k` Laurent-polynomial transition matrix `T(z)`
//! with determinant `c·z^e`. [`splitter::grothendieck_split`] returns its
//! splitting type `d_1 >= ... >= d_k` together with a certificate
//! `W·T·U = diag(z^-d_i)`; [`cech`] computes `h0`, `h1` and twist profiles
//! independently of the splitter.
//!
//! ```
//! use bgsplit::{text, splitter};
//!
//! let e = text::parse_bundle("z^1, 1 ; 0, z^-1").unwrap();
//! let (ty, cert) = splitter::grothendieck_split(&e).unwrap();
//! assert_eq!(ty.degrees(), &[0, 0]);
//! assert!(splitter::verify_factorization(&e, &cert));
//! ```

pub mod bundle;
pub mod cech;
pub mod error;
pub mod exact;
pub mod laurent;
pub mod lmatrix;
pub mod splitter;
pub mod text;

pub use bundle::VectorBundle;
pub use error::{Error, Result};
pub use exact::{GaussianRational, Rational};
pub use laurent::{ChartRing, LaurentPoly};
pub use lmatrix::{LaurentMatrix, ScalarMatrix};
pub use splitter::{Factorization, SplittingType};
