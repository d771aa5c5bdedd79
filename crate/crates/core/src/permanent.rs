//! Matrix permanents and the inner product they induce on decomposable
//! symmetric tensors:
//!
//! `<u_1 . ... . u_n, w_1 . ... . w_n> = per(<u_i, w_j>) / n!`

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::types::{factorial, Star, StarSet, ONE, ZERO};

/// Largest matrix accepted by [`permanent_naive`].
pub const NAIVE_MAX: usize = 9;
/// Largest matrix accepted by [`permanent_ryser`].
pub const RYSER_MAX: usize = 24;

/// Gray-code chunk length for Ryser; fixed so the summation tree does not
/// depend on the thread count.
const RYSER_CHUNK_BITS: u32 = 12;

const SELF_INNER_IMAG_TOL: f64 = 1e-10;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl SquareMatrix {
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Argument("matrix must be at least 1x1".into()));
        }
        if n > RYSER_MAX {
            return Err(Error::Size {
                what: "permanent matrix",
                size: n,
                limit: RYSER_MAX,
            });
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Argument("matrix is not square".into()));
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            rows.push((0..n).map(|j| f(i, j)).collect());
        }
        Self::from_rows(rows)
    }

    /// The 0x0 matrix. Its permanent is the empty product, 1.
    pub fn empty() -> Self {
        Self { n: 0, data: vec![] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

/// Sum over all `n!` permutations. Oracle for every other permanent path.
pub fn permanent_naive(m: &SquareMatrix) -> Result<Complex64> {
    let n = m.n();
    if n > NAIVE_MAX {
        return Err(Error::Size {
            what: "naive permanent",
            size: n,
            limit: NAIVE_MAX,
        });
    }
    if n == 0 {
        return Ok(ONE);
    }
    // Heap's algorithm over column permutations.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let term = |perm: &[usize]| -> Complex64 {
        perm.iter().enumerate().map(|(i, &j)| m.get(i, j)).product()
    };
    let mut total = term(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            total += term(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(total)
}

/// Ryser's inclusion-exclusion formula, subsets visited in Gray-code order:
///
/// `per(A) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} a_ij`
///
/// Runs in `O(2^n n)`. Large inputs are split into fixed-size chunks that may
/// run in parallel; partial sums are combined by a fixed pairwise tree, so
/// the result is bit-for-bit reproducible.
pub fn permanent_ryser(m: &SquareMatrix) -> Result<Complex64> {
    let n = m.n();
    if n > RYSER_MAX {
        return Err(Error::Size {
            what: "Ryser permanent",
            size: n,
            limit: RYSER_MAX,
        });
    }
    match n {
        0 => return Ok(ONE),
        1 => return Ok(m.get(0, 0)),
        _ => {}
    }
    // Columns stored contiguously for the delta updates.
    let cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| m.get(i, j)).collect())
        .collect();
    let total: u64 = 1 << n;
    let chunk: u64 = 1 << RYSER_CHUNK_BITS.min(n as u32);
    let n_chunks = total / chunk;

    let partials: Vec<Complex64> = if n_chunks > 1 {
        (0..n_chunks)
            .into_par_iter()
            .map(|c| ryser_chunk(&cols, c * chunk, (c + 1) * chunk))
            .collect()
    } else {
        vec![ryser_chunk(&cols, 0, total)]
    };
    let sum = pairwise_sum(&partials);
    Ok(if n.is_multiple_of(2) { sum } else { -sum })
}

/// Signed Ryser terms for Gray-code indices `start..end`.
fn ryser_chunk(cols: &[Vec<Complex64>], start: u64, end: u64) -> Complex64 {
    let n = cols.len();
    let mut subset = start ^ (start >> 1);
    let mut row_sums = vec![ZERO; n];
    for (j, col) in cols.iter().enumerate() {
        if subset >> j & 1 == 1 {
            for (s, a) in row_sums.iter_mut().zip(col) {
                *s += a;
            }
        }
    }
    let signed_term = |subset: u64, row_sums: &[Complex64]| -> Complex64 {
        if subset == 0 {
            return ZERO;
        }
        let p: Complex64 = row_sums.iter().product();
        if subset.count_ones().is_multiple_of(2) {
            p
        } else {
            -p
        }
    };
    let mut acc = signed_term(subset, &row_sums);
    for k in start + 1..end {
        let bit = k.trailing_zeros() as usize;
        subset ^= 1 << bit;
        let col = &cols[bit];
        if subset >> bit & 1 == 1 {
            for (s, a) in row_sums.iter_mut().zip(col) {
                *s += a;
            }
        } else {
            for (s, a) in row_sums.iter_mut().zip(col) {
                *s -= a;
            }
        }
        acc += signed_term(subset, &row_sums);
    }
    acc
}

fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => ZERO,
        1 => values[0],
        len => {
            let (a, b) = values.split_at(len / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Permanent by the fastest available kernel.
pub fn permanent(m: &SquareMatrix) -> Result<Complex64> {
    permanent_ryser(m)
}

/// `G_ij = <u_i, w_j> = conj(u_i)^T w_j` for the columns of `U` and `W`.
pub fn gram_matrix(u: &[Star], w: &[Star]) -> Result<SquareMatrix> {
    if u.len() != w.len() {
        return Err(Error::Argument(format!(
            "column count mismatch: {} vs {}",
            u.len(),
            w.len()
        )));
    }
    SquareMatrix::from_fn(u.len(), |i, j| u[i].inner(&w[j]))
}

/// Inner product of two decomposable tensors,
/// `conj(g_A) g_B per(<a_i, b_j>) / (d-1)!`.
///
/// Stars are rescaled to unit norm first (norms move into the prefactors),
/// which keeps the Gram entries bounded without changing the tensors.
pub fn decomposable_inner(a: &StarSet, b: &StarSet) -> Result<Complex64> {
    if a.stars().len() != b.stars().len() {
        return Err(Error::Argument(format!(
            "star count mismatch: {} vs {}",
            a.stars().len(),
            b.stars().len()
        )));
    }
    let n = a.stars().len();
    if n > RYSER_MAX {
        return Err(Error::Size {
            what: "decomposable inner product",
            size: n,
            limit: RYSER_MAX,
        });
    }
    let (a, b) = (a.unit_stars(), b.unit_stars());
    let gram = gram_matrix(a.stars(), b.stars())?;
    let per = permanent(&gram)?;
    Ok(a.prefactor().conj() * b.prefactor() * per / factorial(n))
}

/// Norm of the tensor a star set represents.
pub fn decomposable_norm(a: &StarSet) -> Result<f64> {
    let v = decomposable_inner(a, a)?;
    let scale = v.norm().max(1.0);
    if v.im.abs() > SELF_INNER_IMAG_TOL * scale {
        return Err(Error::Numerical(format!(
            "self inner product has imaginary part {:e}",
            v.im
        )));
    }
    if v.re < -SELF_INNER_IMAG_TOL * scale {
        return Err(Error::Numerical(format!(
            "self inner product is negative ({:e})",
            v.re
        )));
    }
    Ok(v.re.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::binomial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> SquareMatrix {
        SquareMatrix::from_fn(n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
        .unwrap()
    }

    fn block_ones(m: usize, l: usize) -> SquareMatrix {
        SquareMatrix::from_fn(m, |i, j| if (i < l) == (j < l) { ONE } else { ZERO }).unwrap()
    }

    #[test]
    fn naive_small_values() {
        let id = SquareMatrix::from_fn(3, |i, j| if i == j { ONE } else { ZERO }).unwrap();
        assert_eq!(permanent_naive(&id).unwrap(), ONE);
        let ones = SquareMatrix::from_fn(3, |_, _| ONE).unwrap();
        assert_eq!(permanent_naive(&ones).unwrap(), c(6.0));
        let j2 = SquareMatrix::from_fn(2, |_, _| ONE).unwrap();
        assert_eq!(permanent_naive(&j2).unwrap(), c(2.0));
        assert_eq!(permanent_naive(&SquareMatrix::empty()).unwrap(), ONE);
    }

    #[test]
    fn size_caps() {
        let big = SquareMatrix::from_fn(10, |_, _| ONE).unwrap();
        assert!(matches!(permanent_naive(&big), Err(Error::Size { .. })));
        assert!(matches!(
            SquareMatrix::from_fn(25, |_, _| ONE),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn ryser_single_entry() {
        let z = Complex64::new(0.3, -2.0);
        let m = SquareMatrix::from_rows(vec![vec![z]]).unwrap();
        assert_eq!(permanent_ryser(&m).unwrap(), z);
    }

    #[test]
    fn ryser_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=8 {
            for _ in 0..10 {
                let m = random_matrix(&mut rng, n);
                let a = permanent_naive(&m).unwrap();
                let b = permanent_ryser(&m).unwrap();
                assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()), "n={n}");
            }
        }
    }

    #[test]
    fn ryser_random_six_by_six() {
        let mut rng = ChaCha8Rng::seed_from_u64(66);
        let m = random_matrix(&mut rng, 6);
        let a = permanent_naive(&m).unwrap();
        let b = permanent_ryser(&m).unwrap();
        assert!((a - b).norm() <= 1e-10 * a.norm());
    }

    #[test]
    fn block_ones_permanent() {
        let m = block_ones(6, 2);
        assert_eq!(permanent_naive(&m).unwrap(), c(48.0));
        assert_eq!(permanent_ryser(&m).unwrap(), c(48.0));
        for m in 1..=10 {
            for l in 0..=m {
                let p = permanent_ryser(&block_ones(m, l)).unwrap().re / factorial(m);
                let expected = 1.0 / binomial(m, l).unwrap() as f64;
                assert!((p - expected).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn ryser_chunked_path_is_deterministic_and_correct() {
        // n = 14 crosses the chunking threshold; all-ones gives 14!.
        let ones = SquareMatrix::from_fn(14, |_, _| ONE).unwrap();
        let p = permanent_ryser(&ones).unwrap();
        assert!((p.re / factorial(14) - 1.0).abs() < 1e-10);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(&mut rng, 15);
        let first = permanent_ryser(&m).unwrap();
        for _ in 0..3 {
            let again = permanent_ryser(&m).unwrap();
            assert_eq!(first.re.to_bits(), again.re.to_bits());
            assert_eq!(first.im.to_bits(), again.im.to_bits());
        }
    }

    #[test]
    fn permanent_row_column_permutation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=7 {
            let m = random_matrix(&mut rng, n);
            let mut rows: Vec<usize> = (0..n).collect();
            let mut cols: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                rows.swap(i, rng.gen_range(0..=i));
                cols.swap(i, rng.gen_range(0..=i));
            }
            let p = SquareMatrix::from_fn(n, |i, j| m.get(rows[i], cols[j])).unwrap();
            let a = permanent_naive(&m).unwrap();
            let b = permanent_naive(&p).unwrap();
            assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn gram_examples() {
        let e0 = Star::north();
        let e1 = Star::south();
        let g = gram_matrix(&[e0, e1], &[e0, e1]).unwrap();
        assert_eq!(g.row(0), &[ONE, ZERO]);
        assert_eq!(g.row(1), &[ZERO, ONE]);
        let g = gram_matrix(&[e0, e0], &[e0, e0]).unwrap();
        assert!(g.row(0).iter().chain(g.row(1)).all(|&x| x == ONE));
        let w = Star::finite(ONE);
        let g = gram_matrix(&[e0, e1], &[w, w]).unwrap();
        assert!(g.row(0).iter().chain(g.row(1)).all(|&x| x == ONE));
        assert!(gram_matrix(&[e0], &[e0, e1]).is_err());
    }

    #[test]
    fn gram_is_conjugate_linear_in_first_argument() {
        let u = Star::new(Complex64::new(0.0, 1.0), ONE).unwrap();
        let w = Star::north();
        let g = gram_matrix(&[u], &[w]).unwrap();
        assert_eq!(g.get(0, 0), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn norm_examples() {
        for d in 2..8 {
            let a = StarSet::new(vec![Star::north(); d - 1], ONE).unwrap();
            assert!((decomposable_norm(&a).unwrap() - 1.0).abs() < 1e-14);
        }
        let a = StarSet::new(vec![Star::north(), Star::south()], ONE).unwrap();
        assert!((decomposable_norm(&a).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        let b = a.with_prefactor(c(2.0)).unwrap();
        assert!((decomposable_norm(&b).unwrap() - 2.0 * 0.5f64.sqrt()).abs() < 1e-15);
    }
}
