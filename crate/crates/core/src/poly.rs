//! The Majorana polynomial `g(z) = sum_j (-1)^j a_j sqrt(C(d-1, j)) z^(d-1-j)`,
//! its roots, and Vieta's relations `c_j / c_0 = (-1)^j E_j(mu)`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::types::{sqrt_binomial, StateVector, ONE, ZERO};

const MAX_ITERATIONS: usize = 200;
const STEP_TOL: f64 = 1e-13;
const ANGLE_OFFSET: f64 = 0.3;
/// Residual bound factor: `|g(mu)| <= RESIDUAL_TOL * max|c_j| * (1 + |mu|)^deg`.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Coefficients `c_0, ..., c_{d-1}` of `g(z) = sum_j c_j z^(d-1-j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaPolynomial {
    coefficients: Vec<Complex64>,
}

impl MajoranaPolynomial {
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::Argument(
                "polynomial needs d >= 2 coefficients".into(),
            ));
        }
        if coefficients.iter().all(|c| *c == ZERO) {
            return Err(Error::Argument("all coefficients are zero".into()));
        }
        Ok(Self { coefficients })
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Index of the first nonzero coefficient, i.e. the number of roots at infinity.
    pub fn leading_index(&self) -> usize {
        self.coefficients
            .iter()
            .position(|c| *c != ZERO)
            .expect("constructor rejects the zero polynomial")
    }

    pub fn max_coefficient(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coefficients, z)
    }

    /// Inverse of [`build_polynomial`]: `a_j = (-1)^j c_j / sqrt(C(d-1, j))`.
    pub fn to_state(&self) -> Result<StateVector> {
        let n = self.dim() - 1;
        StateVector::new(
            self.coefficients
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    let a = c / sqrt_binomial(n, j);
                    if j % 2 == 0 {
                        a
                    } else {
                        -a
                    }
                })
                .collect(),
        )
    }
}

/// Roots of `g` with multiplicity, plus the number of roots at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct RootMultiset {
    pub finite_roots: Vec<Complex64>,
    pub infinity_count: usize,
}

impl RootMultiset {
    pub fn degree(&self) -> usize {
        self.finite_roots.len() + self.infinity_count
    }
}

pub fn build_polynomial(s: &StateVector) -> MajoranaPolynomial {
    let n = s.dim() - 1;
    let coefficients = s
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let c = a * sqrt_binomial(n, j);
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    MajoranaPolynomial { coefficients }
}

/// Roots of the Majorana polynomial.
///
/// Leading zero coefficients become roots at infinity. The remaining
/// polynomial is made monic and solved by Aberth-Ehrlich iteration, followed
/// by one Newton polish per root. Multiple roots come back as close clusters.
pub fn find_roots(p: &MajoranaPolynomial) -> Result<RootMultiset> {
    let r = p.leading_index();
    let deflated = &p.coefficients[r..];
    let finite_roots = match deflated.len() - 1 {
        0 => vec![],
        1 => vec![-deflated[1] / deflated[0]],
        _ => aberth(deflated)?,
    };
    Ok(RootMultiset {
        finite_roots,
        infinity_count: r,
    })
}

/// `|g(mu)| / (max|c_j| (1 + |mu|)^deg)` for a root of the deflated polynomial.
pub fn scaled_residual(p: &MajoranaPolynomial, mu: Complex64) -> f64 {
    let deg = p.dim() - 1 - p.leading_index();
    p.eval(mu).norm() / (p.max_coefficient() * (1.0 + mu.norm()).powi(deg as i32))
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().fold(ZERO, |acc, c| acc * z + c)
}

/// Value and derivative by Horner's scheme.
fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let lead = coeffs[0];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let deg = monic.len() - 1;

    let radius = 1.0 + monic[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / deg as f64 + ANGLE_OFFSET))
        .collect();

    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut converged = true;
        for k in 0..deg {
            let (p, dp) = horner_with_derivative(&monic, z[k]);
            if p == ZERO {
                continue;
            }
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != k)
                .map(|j| ONE / (z[k] - z[j]))
                .sum();
            let denom = dp / p - repulsion;
            if denom == ZERO || !denom.is_finite() {
                continue;
            }
            let step = ONE / denom;
            z[k] -= step;
            if step.norm() >= STEP_TOL * (1.0 + z[k].norm()) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }

    for mu in z.iter_mut() {
        let (p, dp) = horner_with_derivative(&monic, *mu);
        if dp != ZERO {
            let candidate = *mu - p / dp;
            if candidate.is_finite() && horner(&monic, candidate).norm() < p.norm() {
                *mu = candidate;
            }
        }
    }

    refine_clusters(&monic, &mut z);

    // Multiple roots stall at the noise floor long before the step criterion
    // is met, so acceptance is decided by the residual bound, not by the
    // iteration count.
    let max_coeff = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let residuals: Vec<f64> = z
        .iter()
        .map(|mu| horner(coeffs, *mu).norm() / (max_coeff * (1.0 + mu.norm()).powi(deg as i32)))
        .collect();
    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    if z.iter().any(|mu| !mu.is_finite()) || worst.is_nan() || worst > RESIDUAL_TOL {
        return Err(Error::Convergence {
            iterations,
            roots: z,
            residuals,
            worst_residual: worst,
        });
    }
    Ok(z)
}

/// Relative distance under which two roots are treated as one cluster.
const CLUSTER_TOL: f64 = 1e-4;
const CENTER_NEWTON_STEPS: usize = 60;

/// Aberth iterates for a `k`-fold root wander inside a noise disk of radius
/// about `eps^(1/k)`, and the cluster centroid inherits that error. The centre
/// of an exact `k`-fold root is a simple root of `g^(k-1)`, so each cluster is
/// shifted (not merged) onto that root. A shift is kept only if it lowers the
/// coefficient backward error of the whole root set.
fn refine_clusters(monic: &[Complex64], z: &mut [Complex64]) {
    let n = z.len();
    let mut cluster_of: Vec<usize> = (0..n).collect();
    // single linkage by repeated relabelling; n is small
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                let close = (z[i] - z[j]).norm() <= CLUSTER_TOL * (1.0 + z[i].norm());
                if close && cluster_of[j] > cluster_of[i] {
                    cluster_of[j] = cluster_of[i];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut error = backward_error(monic, z);
    for label in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| cluster_of[i] == label).collect();
        let k = members.len();
        if k < 2 {
            continue;
        }
        let mean = members.iter().map(|&i| z[i]).sum::<Complex64>() / k as f64;
        let deriv = derivative(monic, k - 1);
        let mut center = mean;
        for _ in 0..CENTER_NEWTON_STEPS {
            let (p, dp) = horner_with_derivative(&deriv, center);
            if p == ZERO || dp == ZERO {
                break;
            }
            let step = p / dp;
            center -= step;
            if !center.is_finite() || step.norm() <= f64::EPSILON * (1.0 + center.norm()) {
                break;
            }
        }
        if !center.is_finite() {
            continue;
        }
        let shift = center - mean;
        let mut trial = z.to_vec();
        for &i in &members {
            trial[i] += shift;
        }
        let trial_error = backward_error(monic, &trial);
        if trial_error < error {
            z.copy_from_slice(&trial);
            error = trial_error;
        }
    }
}

/// Coefficients of the `order`-th derivative, highest power first.
fn derivative(coeffs: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    for _ in 0..order {
        let deg = c.len() - 1;
        c = c[..deg]
            .iter()
            .enumerate()
            .map(|(i, a)| a * (deg - i) as f64)
            .collect();
    }
    c
}

/// `max_j |c_j - (-1)^j E_j(z)|` for a monic polynomial.
fn backward_error(monic: &[Complex64], z: &[Complex64]) -> f64 {
    elementary_symmetric_all(z)
        .iter()
        .enumerate()
        .map(|(j, e)| {
            let signed = if j % 2 == 0 { *e } else { -e };
            (monic[j] - signed).norm()
        })
        .fold(0.0, f64::max)
}

/// All elementary symmetric functions `E_0, ..., E_n` of `values`, by
/// multiplying out `prod (1 + mu_i t)` one factor at a time.
pub fn elementary_symmetric_all(values: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![ZERO; values.len() + 1];
    e[0] = ONE;
    for (i, mu) in values.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let prev = e[k - 1];
            e[k] += mu * prev;
        }
    }
    e
}

/// `E_k(values)`; `E_0 = 1`.
pub fn elementary_symmetric(values: &[Complex64], k: usize) -> Result<Complex64> {
    if k > values.len() {
        return Err(Error::Argument(format!(
            "E_{k} undefined for {} values",
            values.len()
        )));
    }
    Ok(elementary_symmetric_all(values)[k])
}

/// `leading * prod (z - mu)`, preceded by `infinity_count` zero coefficients.
pub fn coefficients_from_roots(
    roots: &RootMultiset,
    leading: Complex64,
) -> Result<MajoranaPolynomial> {
    if leading == ZERO {
        return Err(Error::Argument(
            "leading coefficient must be nonzero".into(),
        ));
    }
    let e = elementary_symmetric_all(&roots.finite_roots);
    let coefficients = std::iter::repeat_n(ZERO, roots.infinity_count)
        .chain(e.iter().enumerate().map(|(j, ej)| {
            let c = leading * ej;
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        }))
        .collect();
    Ok(MajoranaPolynomial { coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: &[Complex64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    fn sorted_re(v: &[Complex64]) -> Vec<Complex64> {
        let mut v = v.to_vec();
        v.sort_by(|a, b| a.re.total_cmp(&b.re));
        v
    }

    fn example_i() -> StateVector {
        StateVector::from_real(&[1.0, 3.0, 13.0 / 6f64.sqrt(), 6.0, 4.0]).unwrap()
    }

    fn example_ii() -> StateVector {
        StateVector::from_real(&[0.0, 0.5, 6f64.sqrt(), 5.5, 6.0]).unwrap()
    }

    fn example_iii() -> StateVector {
        StateVector::from_real(&[0.0, 0.0, 1.0 / 6f64.sqrt(), 1.0, 1.0]).unwrap()
    }

    #[test]
    fn build_examples() {
        let p = build_polynomial(&example_i());
        assert!(close(
            p.coefficients(),
            &[1.0, -6.0, 13.0, -12.0, 4.0],
            1e-13
        ));
        // -(z^3 - 6z^2 + 11z - 6): the leading term is -a_1 sqrt(4)
        let p = build_polynomial(&example_ii());
        assert!(close(
            p.coefficients(),
            &[0.0, -1.0, 6.0, -11.0, 6.0],
            1e-13
        ));
        let s = StateVector::from_real(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(close(
            build_polynomial(&s).coefficients(),
            &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            0.0
        ));
    }

    #[test]
    fn polynomial_state_inverse() {
        let s = example_ii();
        let back = build_polynomial(&s).to_state().unwrap();
        for (a, b) in s.amplitudes().iter().zip(back.amplitudes()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn roots_of_examples() {
        let roots = find_roots(&build_polynomial(&example_i())).unwrap();
        assert_eq!(roots.infinity_count, 0);
        assert!(close(
            &sorted_re(&roots.finite_roots),
            &[1.0, 1.0, 2.0, 2.0],
            1e-6
        ));

        let roots = find_roots(&build_polynomial(&example_ii())).unwrap();
        assert_eq!(roots.infinity_count, 1);
        assert!(close(
            &sorted_re(&roots.finite_roots),
            &[1.0, 2.0, 3.0],
            1e-10
        ));

        let roots = find_roots(&build_polynomial(&example_iii())).unwrap();
        assert_eq!(roots.infinity_count, 2);
        assert!(close(&sorted_re(&roots.finite_roots), &[1.0, 1.0], 1e-6));
    }

    #[test]
    fn all_infinite_roots() {
        let s = StateVector::from_real(&[0.0, 0.0, 0.0, 2.0]).unwrap();
        let roots = find_roots(&build_polynomial(&s)).unwrap();
        assert!(roots.finite_roots.is_empty());
        assert_eq!(roots.infinity_count, 3);
    }

    #[test]
    fn trailing_zeros_give_zero_roots() {
        let s = StateVector::from_real(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let roots = find_roots(&build_polynomial(&s)).unwrap();
        assert!(roots.finite_roots.iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn elementary_symmetric_examples() {
        assert_eq!(
            elementary_symmetric(&[c(1.0), c(2.0), c(3.0)], 2).unwrap(),
            c(11.0)
        );
        assert_eq!(elementary_symmetric(&[c(7.0), c(-2.0)], 0).unwrap(), ONE);
        assert_eq!(elementary_symmetric(&[], 0).unwrap(), ONE);
        assert_eq!(
            elementary_symmetric(&[c(1.0), c(1.0), c(2.0), c(2.0)], 4).unwrap(),
            c(4.0)
        );
        assert!(elementary_symmetric(&[c(1.0)], 2).is_err());
    }

    fn brute_force_symmetric(values: &[Complex64], k: usize) -> Complex64 {
        (0u32..1 << values.len())
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| {
                (0..values.len())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| values[i])
                    .product::<Complex64>()
            })
            .sum()
    }

    #[test]
    fn elementary_symmetric_matches_subset_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for len in 0..=8 {
            let values: Vec<Complex64> = (0..len)
                .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect();
            for k in 0..=len {
                let fast = elementary_symmetric(&values, k).unwrap();
                let slow = brute_force_symmetric(&values, k);
                assert!((fast - slow).norm() <= 1e-12 * (1.0 + slow.norm()));
            }
        }
    }

    #[test]
    fn coefficients_from_roots_examples() {
        let roots = RootMultiset {
            finite_roots: vec![c(1.0), c(1.0), c(2.0), c(2.0)],
            infinity_count: 0,
        };
        let p = coefficients_from_roots(&roots, ONE).unwrap();
        assert!(close(p.coefficients(), &[1.0, -6.0, 13.0, -12.0, 4.0], 0.0));

        let empty = RootMultiset {
            finite_roots: vec![],
            infinity_count: 0,
        };
        assert_eq!(
            coefficients_from_roots(&empty, c(5.0))
                .unwrap()
                .coefficients(),
            &[c(5.0)]
        );
        assert!(coefficients_from_roots(&roots, ZERO).is_err());
    }

    #[test]
    fn random_degree_six_roots_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let input: Vec<Complex64> = (0..6)
                .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect();
            let roots = RootMultiset {
                finite_roots: input.clone(),
                infinity_count: 0,
            };
            let p = coefficients_from_roots(&roots, Complex64::new(0.5, 1.0)).unwrap();
            let found = find_roots(&p).unwrap().finite_roots;
            // greedy nearest matching is enough for well-separated random roots
            let mut remaining = found.clone();
            for mu in &input {
                let (idx, dist) = remaining
                    .iter()
                    .enumerate()
                    .map(|(i, z)| (i, (z - mu).norm()))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .unwrap();
                assert!(dist <= 1e-6);
                remaining.remove(idx);
            }
            for mu in &found {
                assert!(scaled_residual(&p, *mu) <= RESIDUAL_TOL);
            }
        }
    }

    #[test]
    fn vieta_round_trip_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let d = rng.gen_range(2..=12);
            let mut amps: Vec<Complex64> = (0..d)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            if rng.gen_bool(0.3) {
                let zeros = rng.gen_range(1..d);
                amps[..zeros].fill(ZERO);
            }
            let s = StateVector::new(amps).unwrap();
            let p = build_polynomial(&s);
            let roots = find_roots(&p).unwrap();
            assert_eq!(roots.infinity_count, s.first_nonzero());
            let lead = p.coefficients()[p.leading_index()];
            let q = coefficients_from_roots(&roots, lead).unwrap();
            let scale = p.max_coefficient();
            for (a, b) in p.coefficients().iter().zip(q.coefficients()) {
                assert!((a - b).norm() <= 1e-6 * scale, "d={d}");
            }
            for mu in &roots.finite_roots {
                assert!(scaled_residual(&p, *mu) <= RESIDUAL_TOL);
            }
        }
    }
}
