//! Exact sparse polynomial arithmetic, parsing, chart changes and complex
//! root extraction.

pub mod cpoly;
pub mod homog;
pub mod parse;
pub mod poly;
pub mod roots;
pub mod unirat;

pub use cpoly::CPoly;
pub use homog::{homogenize, HomogeneousPolynomial};
pub use parse::parse_polynomial;
pub use poly::{rat, rat_to_f64, BivariatePolynomial, Rat};
pub use roots::{RootMultiset, UnivariateComplexPolynomial, DEFAULT_CLUSTER_RADIUS, DEFAULT_ROOT_TOL};
pub use unirat::{resultant_y, UniRat};
