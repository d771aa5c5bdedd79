//! Majorana stellar representation of finite-dimensional quantum states.
//!
//! A nonzero vector `(a_0, ..., a_{d-1})` in `C^d` is identified with the
//! symmetric tensor `a_0 f_0 + ... + a_{d-1} f_{d-1}` in the fully symmetric
//! subspace of `(C^2)^(d-1)`. Every such tensor is decomposable,
//! `prefactor * v_1 . ... . v_{d-1}`, and the qubits `v_j` ("stars") are read
//! off from the roots of the Majorana polynomial. Inner products in star form
//! are permanents of Gram matrices.
//!
//! ```
//! use majorana::{state_to_stars, stars_to_state, StateVector};
//!
//! let a = StateVector::from_real(&[1.0, 3.0, 13.0 / 6f64.sqrt(), 6.0, 4.0]).unwrap();
//! let stars = state_to_stars(&a).unwrap().stars;
//! assert_eq!(stars.stars().len(), 4);
//! let back = stars_to_state(&stars).unwrap();
//! assert!((back.amplitudes()[1].re - 3.0).abs() < 1e-6);
//! ```

pub mod bloch;
pub mod eigen;
pub mod error;
pub mod matching;
pub mod mixed;
pub mod permanent;
pub mod poly;
pub mod representation;
pub mod types;

pub use num_complex::Complex64;

pub use bloch::{bloch_to_star, star_to_bloch};
pub use error::{Error, Result};
pub use mixed::{
    decompose_mixed, density_entry_from_stars, partial_trace_ancilla, pure_density_from_stars,
    purify, purify_and_represent, reconstruct_mixed, DensityMatrix, MixedStarModel, Purification,
};
pub use permanent::{
    decomposable_inner, decomposable_norm, gram_matrix, permanent, permanent_naive,
    permanent_ryser, SquareMatrix,
};
pub use poly::{
    build_polynomial, coefficients_from_roots, elementary_symmetric, find_roots,
    MajoranaPolynomial, RootMultiset,
};
pub use representation::{
    normalize_star_set, ray_distance, roundtrip_check, sort_stars, star_sets_match, stars_to_state,
    stars_to_state_symmetric, state_inner_via_stars, state_to_stars, CorrespondenceResult,
    MatchReport, DEFAULT_MATCH_TOL,
};
pub use types::{
    binomial, selector_matrix, BlochPoint, SelectorMatrix, Star, StarSet, StateVector, MAX_DIM,
};
