//! Domain values shared by every other module.
//!
//! Symmetric tensors in the fully symmetric class over `C^2` are never
//! materialized in the `2^(d-1)`-dimensional tensor space. A [`StateVector`]
//! holds coordinates in the orthonormal basis `f_0, ..., f_{d-1}`; a
//! [`StarSet`] holds the same tensor in decomposed form
//! `prefactor * v_1 . v_2 . ... . v_{d-1}`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported state dimension.
pub const MAX_DIM: usize = 64;

/// Tolerance for accepting externally supplied Bloch points.
pub const BLOCH_INPUT_TOL: f64 = 1e-9;

pub(crate) const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub(crate) const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// `C(n, k)` computed exactly.
pub fn binomial(n: usize, k: usize) -> Result<u64> {
    if n > MAX_DIM || k > n {
        return Err(Error::Argument(format!(
            "binomial({n}, {k}) requires 0 <= k <= n <= {MAX_DIM}"
        )));
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    Ok(acc as u64)
}

/// `sqrt(C(n, k))` as a double; arguments must already be in range.
pub(crate) fn sqrt_binomial(n: usize, k: usize) -> f64 {
    (binomial(n, k).expect("binomial arguments checked by caller") as f64).sqrt()
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Complex amplitudes `(a_0, ..., a_{d-1})` of a symmetric tensor in the
/// orthonormal basis `f_j`. Not required to have unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let d = amplitudes.len();
        if d < 2 {
            return Err(Error::Validation(vec![format!(
                "state dimension {d} is below the minimum of 2"
            )]));
        }
        if d > MAX_DIM {
            return Err(Error::Size {
                what: "state dimension",
                size: d,
                limit: MAX_DIM,
            });
        }
        if amplitudes
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::Validation(vec!["amplitudes must be finite".into()]));
        }
        if amplitudes.iter().all(|a| *a == ZERO) {
            return Err(Error::Validation(vec![
                "the zero vector is not a state".into()
            ]));
        }
        Ok(Self { amplitudes })
    }

    /// Convenience constructor from real amplitudes.
    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// Index `r` of the first nonzero amplitude.
    pub fn first_nonzero(&self) -> usize {
        self.amplitudes
            .iter()
            .position(|a| *a != ZERO)
            .expect("constructor rejects the zero vector")
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            amplitudes: self.amplitudes.iter().map(|a| a / n).collect(),
        }
    }

    /// Multiply every amplitude by `lambda`, which must be nonzero.
    pub fn scaled(&self, lambda: Complex64) -> Result<Self> {
        Self::new(self.amplitudes.iter().map(|a| a * lambda).collect())
    }

    /// Coordinate inner product `sum_j conj(self_j) * other_j`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::Argument(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// One qubit `(alpha, beta)`, identified up to a nonzero scalar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Star {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl Star {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        if alpha == ZERO && beta == ZERO {
            return Err(Error::Argument("a star cannot be (0, 0)".into()));
        }
        if ![alpha.re, alpha.im, beta.re, beta.im]
            .iter()
            .all(|x| x.is_finite())
        {
            return Err(Error::Argument("star components must be finite".into()));
        }
        Ok(Self { alpha, beta })
    }

    /// `(1, mu)`.
    pub fn finite(mu: Complex64) -> Self {
        Self {
            alpha: ONE,
            beta: mu,
        }
    }

    /// `(1, 0)`, the north pole.
    pub fn north() -> Self {
        Self {
            alpha: ONE,
            beta: ZERO,
        }
    }

    /// `(0, 1)`, the south pole and the star of a root at infinity.
    pub fn south() -> Self {
        Self {
            alpha: ZERO,
            beta: ONE,
        }
    }

    /// `(1, beta/alpha)` when `alpha != 0`, otherwise `(0, 1)`.
    pub fn canonical(&self) -> Self {
        if self.alpha == ZERO {
            Self::south()
        } else {
            Self::finite(self.beta / self.alpha)
        }
    }

    /// The scalar `s` with `self = s * self.canonical()`.
    pub fn canonical_scale(&self) -> Complex64 {
        if self.alpha == ZERO {
            self.beta
        } else {
            self.alpha
        }
    }

    pub fn norm(&self) -> f64 {
        (self.alpha.norm_sqr() + self.beta.norm_sqr()).sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            alpha: self.alpha / n,
            beta: self.beta / n,
        }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            alpha: self.alpha * s,
            beta: self.beta * s,
        }
    }

    /// `<self, other> = conj(self)^T other`.
    pub fn inner(&self, other: &Star) -> Complex64 {
        self.alpha.conj() * other.alpha + self.beta.conj() * other.beta
    }
}

/// A decomposable symmetric tensor `prefactor * v_1 . ... . v_{d-1}`.
///
/// The star list is a multiset: reordering it, or moving a nonzero scalar
/// between a star and the prefactor, leaves the tensor unchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct StarSet {
    stars: Vec<Star>,
    prefactor: Complex64,
}

impl StarSet {
    pub fn new(stars: Vec<Star>, prefactor: Complex64) -> Result<Self> {
        if stars.is_empty() {
            return Err(Error::Argument("a star set needs at least one star".into()));
        }
        if stars.len() + 1 > MAX_DIM {
            return Err(Error::Size {
                what: "state dimension",
                size: stars.len() + 1,
                limit: MAX_DIM,
            });
        }
        if prefactor == ZERO || !prefactor.re.is_finite() || !prefactor.im.is_finite() {
            return Err(Error::Argument(
                "prefactor must be finite and nonzero".into(),
            ));
        }
        Ok(Self { stars, prefactor })
    }

    /// Dimension `d` of the represented state (one more than the star count).
    pub fn dim(&self) -> usize {
        self.stars.len() + 1
    }

    pub fn stars(&self) -> &[Star] {
        &self.stars
    }

    pub fn prefactor(&self) -> Complex64 {
        self.prefactor
    }

    pub fn with_prefactor(&self, prefactor: Complex64) -> Result<Self> {
        Self::new(self.stars.clone(), prefactor)
    }

    /// Same tensor with every star in canonical form, scales folded into the prefactor.
    pub fn canonicalized(&self) -> Self {
        let mut prefactor = self.prefactor;
        let stars = self
            .stars
            .iter()
            .map(|s| {
                prefactor *= s.canonical_scale();
                s.canonical()
            })
            .collect();
        Self { stars, prefactor }
    }

    /// Same tensor with unit-norm stars, norms folded into the prefactor.
    pub(crate) fn unit_stars(&self) -> Self {
        let mut prefactor = self.prefactor;
        let stars = self
            .stars
            .iter()
            .map(|s| {
                let n = s.norm();
                prefactor *= n;
                s.normalized()
            })
            .collect();
        Self { stars, prefactor }
    }

    /// Reorder the stars; `order[i]` names the star placed at slot `i`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.stars.len()];
        if order.len() != self.stars.len() {
            return Err(Error::Argument("permutation has the wrong length".into()));
        }
        for &i in order {
            if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Argument("not a permutation".into()));
            }
        }
        Ok(Self {
            stars: order.iter().map(|&i| self.stars[i]).collect(),
            prefactor: self.prefactor,
        })
    }
}

/// A point `(cx, cy, cz)` on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint {
    pub cx: f64,
    pub cy: f64,
    pub cz: f64,
}

impl BlochPoint {
    /// Accepts points whose norm is within [`BLOCH_INPUT_TOL`] of 1.
    pub fn new(cx: f64, cy: f64, cz: f64) -> Result<Self> {
        let p = Self { cx, cy, cz };
        let n = p.norm();
        if !n.is_finite() || (n - 1.0).abs() > BLOCH_INPUT_TOL {
            return Err(Error::Argument(format!(
                "Bloch point ({cx}, {cy}, {cz}) has norm {n}, expected 1"
            )));
        }
        Ok(p)
    }

    pub(crate) fn new_unchecked(cx: f64, cy: f64, cz: f64) -> Self {
        Self { cx, cy, cz }
    }

    pub fn norm(&self) -> f64 {
        (self.cx * self.cx + self.cy * self.cy + self.cz * self.cz).sqrt()
    }

    pub fn distance(&self, other: &BlochPoint) -> f64 {
        let (dx, dy, dz) = (self.cx - other.cx, self.cy - other.cy, self.cz - other.cz);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    /// Azimuth `atan2(cy, cx)`.
    pub fn azimuth(&self) -> f64 {
        self.cy.atan2(self.cx)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.cx, self.cy, self.cz]
    }
}

/// `C_j`: a `2 x (d-1)` matrix whose first `d-1-j` columns are `e_0` and
/// remaining `j` columns are `e_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectorMatrix {
    j: usize,
    cols: usize,
}

impl SelectorMatrix {
    pub fn j(&self) -> usize {
        self.j
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row index (0 for `e_0`, 1 for `e_1`) of the unit entry in column `c`.
    pub fn column_index(&self, c: usize) -> usize {
        usize::from(c >= self.cols - self.j)
    }

    pub fn column(&self, c: usize) -> [Complex64; 2] {
        if self.column_index(c) == 0 {
            [ONE, ZERO]
        } else {
            [ZERO, ONE]
        }
    }
}

pub fn selector_matrix(d: usize, j: usize) -> Result<SelectorMatrix> {
    if !(2..=MAX_DIM).contains(&d) {
        return Err(Error::Argument(format!(
            "selector dimension {d} outside 2..={MAX_DIM}"
        )));
    }
    if j >= d {
        return Err(Error::Argument(format!(
            "selector index {j} outside 0..={}",
            d - 1
        )));
    }
    Ok(SelectorMatrix { j, cols: d - 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(10, 5).unwrap(), 252);
        for n in 0..=MAX_DIM {
            assert_eq!(binomial(n, 0).unwrap(), 1);
            assert_eq!(binomial(n, n).unwrap(), 1);
        }
        assert_eq!(binomial(64, 32).unwrap(), 1_832_624_140_942_590_534);
    }

    #[test]
    fn binomial_rejects_out_of_range() {
        assert!(matches!(binomial(3, 4), Err(Error::Argument(_))));
        assert!(matches!(binomial(65, 1), Err(Error::Argument(_))));
    }

    #[test]
    fn pascal_rule() {
        for n in 2..=20 {
            for k in 1..n {
                assert_eq!(
                    binomial(n, k).unwrap(),
                    binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn selector_columns() {
        let e0 = [ONE, ZERO];
        let e1 = [ZERO, ONE];
        let c = selector_matrix(5, 0).unwrap();
        assert!((0..4).all(|i| c.column(i) == e0));
        let c = selector_matrix(5, 4).unwrap();
        assert!((0..4).all(|i| c.column(i) == e1));
        let c = selector_matrix(5, 1).unwrap();
        assert_eq!(
            (0..4).map(|i| c.column(i)).collect::<Vec<_>>(),
            vec![e0, e0, e0, e1]
        );
        for d in 2..12 {
            for j in 0..d {
                let c = selector_matrix(d, j).unwrap();
                let ones = (0..d - 1).filter(|&i| c.column(i) == e1).count();
                assert_eq!(ones, j);
            }
        }
        assert!(selector_matrix(5, 5).is_err());
        assert!(selector_matrix(1, 0).is_err());
    }

    #[test]
    fn canonical_is_idempotent() {
        let stars = [
            Star::new(Complex64::new(2.0, 1.0), Complex64::new(-1.0, 3.0)).unwrap(),
            Star::new(ZERO, Complex64::new(0.0, 4.0)).unwrap(),
            Star::new(Complex64::new(0.5, 0.0), ZERO).unwrap(),
        ];
        for s in stars {
            let c = s.canonical();
            assert_eq!(c.canonical(), c);
            let back = c.scaled(s.canonical_scale());
            assert!((back.alpha - s.alpha).norm() < 1e-15);
            assert!((back.beta - s.beta).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_degenerate_values() {
        assert!(StateVector::from_real(&[0.0, 0.0, 0.0]).is_err());
        assert!(StateVector::from_real(&[1.0]).is_err());
        assert!(Star::new(ZERO, ZERO).is_err());
        assert!(StarSet::new(vec![], ONE).is_err());
        assert!(StarSet::new(vec![Star::north()], ZERO).is_err());
        assert!(BlochPoint::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn first_nonzero_index() {
        let s = StateVector::from_real(&[0.0, 0.0, 0.5, 1.0]).unwrap();
        assert_eq!(s.first_nonzero(), 2);
    }
}
