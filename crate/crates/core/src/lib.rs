//! Combinatorics and exact algebra for the Catalan family of objects attached
//! to the Legendrian torus link λ(A_{n−1}): 312-avoiding permutations,
//! triangulations of the (n+2)-gon and the clip-sequence bijection between
//! them, edge flips and rotation geodesics in the flip graph, orbit structure
//! under the Kálmán loop, braid-matrix/continuant polynomial identities on the
//! augmentation variety, and the pinching-sequence augmentations with their
//! toric-chart monomial coordinates.
//!
//! Everything is exact: permutations and triangulations are small immutable
//! values, polynomials carry arbitrary-precision integer coefficients, and
//! point evaluations use exact rationals. All operations are pure functions.

pub mod aug;
pub mod braid;
mod error;
pub mod flip;
pub mod laurent;
pub mod orbit;
pub mod perm;
pub mod poly;
pub mod triangulation;

pub use aug::{
    augmentation, delta_for_diagonal, sample_variety_point, t_set, verify_basis,
    verify_fibonacci, Augmentation, BasisCheck, FibonacciCheck, PinchState,
};
pub use braid::{
    aug_polynomial, braid_matrix, continuant, delta, kalman_point_step, theta,
    verify_euler_display_form, verify_euler_identity, verify_euler_special,
    verify_theta_identity, BraidMat, IdentityCheck,
};
pub use error::{Error, Result};
pub use flip::{
    flip, flip_distance, flip_distance_bounded, flip_on_permutation, flip_word_at,
    rotation_geodesic, FlipSequence,
};
pub use laurent::LaurentPoly;
pub use orbit::{
    kalman_step, orbit_census, orbit_census_bounded, orbit_count, orbit_size, orbit_size_half,
    orbit_size_oracle, orbit_size_third, Orbit, OrbitReport, DEFAULT_CENSUS_BOUND,
};
pub use perm::{catalan, enumerate_312, is_312_avoiding, Permutation312};
pub use poly::PolyZ;
pub use triangulation::{Diagonal, Triangle, Triangulation};
