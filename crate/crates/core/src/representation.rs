//! The Majorana correspondence between `C^d` and multisets of `d-1` stars.
//!
//! Forward: the stars of `a` are `(0, 1)` repeated `r` times (`r` = index of
//! the first nonzero amplitude) followed by `(1, mu)` for every finite root
//! `mu` of the Majorana polynomial, with prefactor `a_r sqrt(C(d-1, r))`.
//!
//! Backward: `a_j = prefactor * sqrt(C(d-1, j)) * per(C_j^* V) / (d-1)!`.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::bloch::star_to_bloch;
use crate::error::{Error, Result};
use crate::matching::hungarian;
use crate::permanent::{decomposable_inner, decomposable_norm, permanent, SquareMatrix, RYSER_MAX};
use crate::poly::{build_polynomial, elementary_symmetric_all, find_roots};
use crate::types::{factorial, selector_matrix, sqrt_binomial, Star, StarSet, StateVector, ZERO};

/// Default Bloch-distance tolerance for [`star_sets_match`].
pub const DEFAULT_MATCH_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct CorrespondenceResult {
    pub stars: StarSet,
    pub source: StateVector,
    /// Ray-level reconstruction error `1 - |<s, s'>| / (|s| |s'|)`.
    pub residual: f64,
}

pub fn state_to_stars(s: &StateVector) -> Result<CorrespondenceResult> {
    let d = s.dim();
    let r = s.first_nonzero();
    let prefactor = s.amplitudes()[r] * sqrt_binomial(d - 1, r);
    let roots = find_roots(&build_polynomial(s))?;
    let mut stars: Vec<Star> = std::iter::repeat_n(Star::south(), roots.infinity_count)
        .chain(roots.finite_roots.iter().map(|&mu| Star::finite(mu)))
        .collect();
    sort_stars(&mut stars);
    let stars = StarSet::new(stars, prefactor)?;
    let rebuilt = stars_to_state_symmetric(&stars)?;
    let residual = ray_distance(s, &rebuilt)?;
    Ok(CorrespondenceResult {
        stars,
        source: s.clone(),
        residual,
    })
}

/// Deterministic order: `cz` descending, then azimuth ascending, then `cx`, `cy`.
pub fn sort_stars(stars: &mut [Star]) {
    stars.sort_by(compare_stars);
}

fn compare_stars(a: &Star, b: &Star) -> Ordering {
    let (p, q) = (star_to_bloch(a), star_to_bloch(b));
    q.cz.total_cmp(&p.cz)
        .then(p.azimuth().total_cmp(&q.azimuth()))
        .then(p.cx.total_cmp(&q.cx))
        .then(p.cy.total_cmp(&q.cy))
}

/// Amplitudes of the tensor a star set represents, by permanents of
/// `C_j^* V`. This is the reference reconstruction.
pub fn stars_to_state(a: &StarSet) -> Result<StateVector> {
    let n = a.stars().len();
    if n > RYSER_MAX {
        return Err(Error::Size {
            what: "permanent reconstruction",
            size: n,
            limit: RYSER_MAX,
        });
    }
    let a = a.unit_stars();
    let d = n + 1;
    let norm = factorial(n);
    let amplitudes = (0..d)
        .map(|j| {
            let c = selector_matrix(d, j)?;
            // (C_j^* V)_{ik} = component column_index(i) of star k
            let m = SquareMatrix::from_fn(n, |i, k| {
                let star = &a.stars()[k];
                if c.column_index(i) == 0 {
                    star.alpha
                } else {
                    star.beta
                }
            })?;
            Ok(a.prefactor() * sqrt_binomial(n, j) * permanent(&m)? / norm)
        })
        .collect::<Result<Vec<_>>>()?;
    StateVector::new(amplitudes)
}

/// Same result as [`stars_to_state`] through elementary symmetric functions:
/// with stars in canonical form, `r` of them `(0, 1)` and the rest `(1, mu)`,
/// `a_j = prefactor * E_{j-r}(mu) / sqrt(C(d-1, j))` for `j >= r` and zero below.
pub fn stars_to_state_symmetric(a: &StarSet) -> Result<StateVector> {
    let a = a.canonicalized();
    let n = a.stars().len();
    let r = a.stars().iter().filter(|s| s.alpha == ZERO).count();
    let mus: Vec<Complex64> = a
        .stars()
        .iter()
        .filter(|s| s.alpha != ZERO)
        .map(|s| s.beta)
        .collect();
    let e = elementary_symmetric_all(&mus);
    StateVector::new(
        (0..=n)
            .map(|j| {
                if j < r {
                    ZERO
                } else {
                    a.prefactor() * e[j - r] / sqrt_binomial(n, j)
                }
            })
            .collect(),
    )
}

/// `sum_j conj(b_j) c_j` computed entirely in star form.
pub fn state_inner_via_stars(a: &StarSet, b: &StarSet) -> Result<Complex64> {
    decomposable_inner(a, b)
}

/// Unit-norm stars and a prefactor that gives the tensor norm 1, keeping the
/// phase of the original prefactor.
pub fn normalize_star_set(a: &StarSet) -> Result<StarSet> {
    let unit = a.unit_stars();
    let phase = unit.prefactor() / unit.prefactor().norm();
    let gamma = decomposable_norm(&unit.with_prefactor(Complex64::new(1.0, 0.0))?)?;
    if gamma == 0.0 {
        return Err(Error::Numerical(
            "star set represents the zero tensor".into(),
        ));
    }
    unit.with_prefactor(phase / gamma)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchReport {
    pub matched: bool,
    /// `assignment[i]` is the star of the second set paired with star `i` of the first.
    pub assignment: Vec<usize>,
    /// Largest Bloch distance among matched pairs.
    pub max_distance: f64,
}

/// Ray-level multiset comparison: stars are compared as Bloch points under a
/// minimum-cost perfect matching. Prefactors are ignored.
pub fn star_sets_match(a: &StarSet, b: &StarSet, tol: f64) -> Result<MatchReport> {
    if a.stars().len() != b.stars().len() {
        return Err(Error::Argument(format!(
            "star count mismatch: {} vs {}",
            a.stars().len(),
            b.stars().len()
        )));
    }
    let pa: Vec<_> = a.stars().iter().map(star_to_bloch).collect();
    let pb: Vec<_> = b.stars().iter().map(star_to_bloch).collect();
    let cost: Vec<Vec<f64>> = pa
        .iter()
        .map(|p| pb.iter().map(|q| p.distance(q)).collect())
        .collect();
    let assignment = hungarian(&cost);
    let max_distance = assignment
        .iter()
        .enumerate()
        .map(|(i, &j)| cost[i][j])
        .fold(0.0, f64::max);
    Ok(MatchReport {
        matched: max_distance <= tol,
        assignment,
        max_distance,
    })
}

/// `1 - |<s, s'>| / (|s| |s'|)`, floored at zero.
pub fn ray_distance(s: &StateVector, t: &StateVector) -> Result<f64> {
    let overlap = s.inner(t)?.norm() / (s.norm() * t.norm());
    Ok((1.0 - overlap).max(0.0))
}

/// Reconstruction error of `s -> stars -> state` at the level of rays.
pub fn roundtrip_check(s: &StateVector) -> Result<f64> {
    let stars = state_to_stars(s)?.stars;
    ray_distance(s, &stars_to_state(&stars)?)
}
