//! Exact arithmetic for the special fiber of the modular curve X(Np^r).
//!
//! The crate computes, entirely over exact rationals and cyclotomic numbers:
//!
//! * the intersection matrix `M` of the irreducible components of the special
//!   fiber, its truncation `T` (the row/column of the component containing the
//!   cusp ∞ removed), and closed-form entries of `T^{-1}` ([`xcurve`]);
//! * circulant spectral inversion, minor-removed inverses, Woodbury updates
//!   and the rank-two block-ones update formula ([`linalg`]);
//! * p-adic and π-adic valuations (π = 1 − ζ_{p^r}), cyclotomic ring
//!   arithmetic, and the closed-form number-theoretic sums the entry formulas
//!   rest on ([`arith`]);
//! * degrees of the modular sheaf restricted to components, and the exponent
//!   e = 2kp^{r-1}(pr−r+1) annihilating the quotient of the two integral
//!   structures on weight-2k modular forms ([`invariants`]);
//! * Klein-form products certifying the lower bound, with q-expansions at ∞
//!   and the π-adic valuation of the expansion at 0 ([`klein`]).
//!
//! Everything is deterministic and allocation-only (no floating point); all
//! closed forms are cross-checked against independent oracles in [`verify`].

pub mod arith;
pub mod error;
pub mod invariants;
pub mod klein;
pub mod linalg;
pub mod verify;
pub mod xcurve;

pub use error::{Error, Result};
