//! Exact structured linear algebra: circulants with spectral inverses,
//! minor-removed inverses, Woodbury updates, the rank-two block-ones update,
//! and a dense Gauss–Jordan oracle.

pub mod circulant;
pub mod mat;

pub use circulant::{circ_eigen, circ_inverse, circ_inverse_entry, Circulant};
pub use mat::{block_ones_inverse, gauss_inverse, minor_removed_inverse, woodbury, Mat};
