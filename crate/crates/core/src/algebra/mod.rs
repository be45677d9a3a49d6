//! Exact arithmetic over ℚ.
//!
//! Zeros of polynomials are never approximated: a zero locus is always carried as a
//! list of monic irreducible factors with multiplicities, and the only irrational
//! scalars that ever appear live in a single quadratic extension ℚ(√c).

mod factor;
mod linalg;
mod modp;
mod poly;
mod quadratic;
pub(crate) mod rational;
mod section;
mod snf;
mod sqrt;

pub use factor::{is_irreducible, squarefree_decomposition, squarefree_parts, Factorization};
pub use linalg::{kernel_dim, rank, rank_over_residue_field};
pub use poly::Poly;
pub use quadratic::{ExtSection, Quad, QuadPoly};
pub use rational::{format_rational, parse_rational, rational_sqrt, Rational};
pub use section::Section;
pub use snf::{snf_over_dvr, Valuation};
pub use sqrt::{exact_sqrt, SquareRoot};
