//! Mixed states: density matrices in star form.
//!
//! Two constructions are provided. [`decompose_mixed`] writes `rho` as a
//! probability-weighted sum of pure states, each in star form.
//! [`purify_and_represent`] lifts `rho` of rank `r` to a pure state in
//! `C^(r d)` and takes the stars of that state.

use num_complex::Complex64;

use crate::eigen::hermitian_eigen;
use crate::error::{Error, Result};
use crate::permanent::{permanent, SquareMatrix, RYSER_MAX};
use crate::representation::{normalize_star_set, state_to_stars, CorrespondenceResult};
use crate::types::{
    factorial, selector_matrix, sqrt_binomial, StarSet, StateVector, MAX_DIM, ZERO,
};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues below this are treated as zero; more negative ones are rejected.
pub const EIGENVALUE_TOL: f64 = 1e-10;
pub const WEIGHT_SUM_TOL: f64 = 1e-10;
/// Largest `rank * d` accepted by [`purify_and_represent`].
pub const PURIFICATION_MAX_DIM: usize = RYSER_MAX + 1;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: Vec<Vec<Complex64>>,
}

impl DensityMatrix {
    /// Checks shape, Hermiticity and unit trace. Positivity is checked when
    /// the matrix is diagonalized.
    pub fn new(entries: Vec<Vec<Complex64>>) -> Result<Self> {
        let d = entries.len();
        let mut problems = vec![];
        if d < 2 {
            problems.push(format!("dimension {d} is below 2"));
        }
        if d > MAX_DIM {
            problems.push(format!("dimension {d} exceeds {MAX_DIM}"));
        }
        if entries.iter().any(|r| r.len() != d) {
            problems.push("matrix is not square".into());
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        if entries.iter().flatten().any(|z| !z.is_finite()) {
            problems.push("entries must be finite".into());
        }
        let asym = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| (entries[i][j] - entries[j][i].conj()).norm())
            .fold(0.0, f64::max);
        if asym > HERMITIAN_TOL {
            problems.push(format!("not Hermitian (max deviation {asym:e})"));
        }
        let trace: Complex64 = (0..d).map(|i| entries[i][i]).sum();
        if (trace - 1.0).norm() > TRACE_TOL {
            problems.push(format!("trace is {} + {}i, expected 1", trace.re, trace.im));
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        Ok(Self { entries })
    }

    pub(crate) fn new_unchecked(entries: Vec<Vec<Complex64>>) -> Self {
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Complex64>] {
        &self.entries
    }

    pub fn get(&self, r: usize, s: usize) -> Complex64 {
        self.entries[r][s]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.entries[i][i]).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `a a^* / |a|^2`.
    pub fn from_pure_state(a: &StateVector) -> Self {
        let n2 = a.norm().powi(2);
        let amps = a.amplitudes();
        Self::new_unchecked(
            amps.iter()
                .map(|x| amps.iter().map(|y| x * y.conj() / n2).collect())
                .collect(),
        )
    }
}

/// Probability vector paired with normalized star sets.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedStarModel {
    weights: Vec<f64>,
    components: Vec<StarSet>,
}

impl MixedStarModel {
    pub fn new(weights: Vec<f64>, components: Vec<StarSet>) -> Result<Self> {
        let mut problems = vec![];
        if weights.is_empty() {
            problems.push("model needs at least one component".into());
        }
        if weights.len() != components.len() {
            problems.push(format!(
                "{} weights for {} components",
                weights.len(),
                components.len()
            ));
        }
        if weights.iter().any(|w| w.is_nan() || *w < 0.0) {
            problems.push("weights must be non-negative".into());
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            problems.push(format!("weights sum to {sum}, expected 1"));
        }
        if let Some(first) = components.first() {
            if components.iter().any(|c| c.dim() != first.dim()) {
                problems.push("components have different dimensions".into());
            }
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        let components = components
            .iter()
            .map(normalize_star_set)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            weights,
            components,
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn components(&self) -> &[StarSet] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }
}

/// `per(C_j^* V)` for `j = 0..d`.
fn selector_permanents(a: &StarSet) -> Result<Vec<Complex64>> {
    let n = a.stars().len();
    if n > RYSER_MAX {
        return Err(Error::Size {
            what: "density reconstruction",
            size: n,
            limit: RYSER_MAX,
        });
    }
    (0..=n).map(|j| selector_permanent(a, j)).collect()
}

fn selector_permanent(a: &StarSet, j: usize) -> Result<Complex64> {
    let n = a.stars().len();
    let c = selector_matrix(n + 1, j)?;
    let m = SquareMatrix::from_fn(n, |i, k| {
        let s = &a.stars()[k];
        if c.column_index(i) == 0 {
            s.alpha
        } else {
            s.beta
        }
    })?;
    permanent(&m)
}

/// Entry `(r, s)` of `a a^*` where `a` is the vector `A` represents:
/// `|g|^2 sqrt(C(n,r) C(n,s)) per(C_r^* V) per(V^* C_s) / (n!)^2`.
pub fn density_entry_from_stars(a: &StarSet, r: usize, s: usize) -> Result<Complex64> {
    let d = a.dim();
    if r >= d || s >= d {
        return Err(Error::Argument(format!(
            "index ({r}, {s}) outside a {d}x{d} matrix"
        )));
    }
    let n = d - 1;
    let pr = selector_permanent(a, r)?;
    // per(V^* C_s) = conj(per(C_s^* V))
    let ps = selector_permanent(a, s)?.conj();
    let scale =
        a.prefactor().norm_sqr() * sqrt_binomial(n, r) * sqrt_binomial(n, s) / factorial(n).powi(2);
    Ok(pr * ps * scale)
}

/// Pure density matrix of the ray `A` represents. The star set is normalized first.
pub fn pure_density_from_stars(a: &StarSet) -> Result<DensityMatrix> {
    let a = normalize_star_set(a)?;
    let n = a.stars().len();
    let pers = selector_permanents(&a)?;
    let weight = a.prefactor().norm() / factorial(n);
    let b: Vec<Complex64> = pers
        .iter()
        .enumerate()
        .map(|(j, p)| p * sqrt_binomial(n, j) * weight)
        .collect();
    Ok(DensityMatrix::new_unchecked(
        b.iter()
            .map(|x| b.iter().map(|y| x * y.conj()).collect())
            .collect(),
    ))
}

/// Eigenvalues and eigenvectors of `rho` with eigenvalues at or below the
/// drop threshold removed. Fails if `rho` has a clearly negative eigenvalue.
fn spectral_support(rho: &DensityMatrix) -> Result<Vec<(f64, Vec<Complex64>)>> {
    let eig = hermitian_eigen(rho.entries());
    let min = eig.values.iter().cloned().fold(f64::INFINITY, f64::min);
    if min < -EIGENVALUE_TOL {
        return Err(Error::Validation(vec![format!(
            "not positive semi-definite (smallest eigenvalue {min:e})"
        )]));
    }
    Ok(eig
        .values
        .into_iter()
        .zip(eig.vectors)
        .filter(|(l, _)| *l > EIGENVALUE_TOL)
        .collect())
}

/// Spectral decomposition of `rho` into weighted pure star sets.
///
/// Degenerate eigenvalues make the result non-unique; two models are equal
/// when [`reconstruct_mixed`] gives the same matrix.
pub fn decompose_mixed(rho: &DensityMatrix) -> Result<MixedStarModel> {
    let support = spectral_support(rho)?;
    let total: f64 = support.iter().map(|(l, _)| l).sum();
    let mut weights = Vec::with_capacity(support.len());
    let mut components = Vec::with_capacity(support.len());
    for (lambda, vector) in support {
        let state = StateVector::new(vector)?;
        components.push(normalize_star_set(&state_to_stars(&state)?.stars)?);
        weights.push(lambda / total);
    }
    MixedStarModel::new(weights, components)
}

pub fn reconstruct_mixed(m: &MixedStarModel) -> Result<DensityMatrix> {
    let d = m.dim();
    let mut out = vec![vec![ZERO; d]; d];
    for (p, comp) in m.weights().iter().zip(m.components()) {
        let pure = pure_density_from_stars(comp)?;
        for (row, prow) in out.iter_mut().zip(pure.entries()) {
            for (x, y) in row.iter_mut().zip(prow) {
                *x += y * p;
            }
        }
    }
    Ok(DensityMatrix::new_unchecked(out))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Purification {
    /// Numerical rank `r` of the input.
    pub rank: usize,
    /// Stars of `psi`, whose source is the purified vector in `C^(r d)`.
    pub correspondence: CorrespondenceResult,
}

impl Purification {
    pub fn psi(&self) -> &StateVector {
        &self.correspondence.source
    }
}

/// `psi = sum_j sqrt(p_j) (v_j (x) e_j)` with the ancilla index slow:
/// `psi[j * d + i] = sqrt(p_j) v_j[i]`.
pub fn purify(rho: &DensityMatrix) -> Result<(usize, StateVector)> {
    let support = spectral_support(rho)?;
    let d = rho.dim();
    let rank = support.len();
    if rank * d > PURIFICATION_MAX_DIM {
        return Err(Error::Size {
            what: "purified dimension",
            size: rank * d,
            limit: PURIFICATION_MAX_DIM,
        });
    }
    let total: f64 = support.iter().map(|(l, _)| l).sum();
    let psi = support
        .iter()
        .flat_map(|(l, v)| {
            let w = (l / total).sqrt();
            v.iter().map(move |x| x * w)
        })
        .collect();
    Ok((rank, StateVector::new(psi)?))
}

pub fn purify_and_represent(rho: &DensityMatrix) -> Result<Purification> {
    let (rank, psi) = purify(rho)?;
    Ok(Purification {
        rank,
        correspondence: state_to_stars(&psi)?,
    })
}

/// Trace out the ancilla of a vector laid out as `psi[j * d + i]`.
pub fn partial_trace_ancilla(psi: &StateVector, d: usize) -> Result<DensityMatrix> {
    let amps = psi.amplitudes();
    if d == 0 || !amps.len().is_multiple_of(d) {
        return Err(Error::Argument(format!(
            "length {} is not a multiple of {d}",
            amps.len()
        )));
    }
    let rank = amps.len() / d;
    let n2 = psi.norm().powi(2);
    Ok(DensityMatrix::new_unchecked(
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|k| {
                        (0..rank)
                            .map(|j| amps[j * d + i] * amps[j * d + k].conj())
                            .sum::<Complex64>()
                            / n2
                    })
                    .collect()
            })
            .collect(),
    ))
}
