#![allow(dead_code)]

use majorana::{Complex64, DensityMatrix, Star, StarSet, StateVector};
use rand::Rng;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random state; about a quarter of them start with a run of zeros.
pub fn random_state<R: Rng>(rng: &mut R, d: usize) -> StateVector {
    let mut amps: Vec<Complex64> = (0..d).map(|_| random_complex(rng)).collect();
    if rng.gen_bool(0.25) {
        let zeros = rng.gen_range(1..d);
        amps[..zeros].fill(c(0.0));
    }
    StateVector::new(amps).unwrap()
}

pub fn random_unit_state<R: Rng>(rng: &mut R, d: usize) -> StateVector {
    random_state(rng, d).normalized()
}

pub fn random_star<R: Rng>(rng: &mut R) -> Star {
    Star::new(random_complex(rng), random_complex(rng)).unwrap()
}

pub fn random_star_set<R: Rng>(rng: &mut R, n: usize) -> StarSet {
    StarSet::new(
        (0..n).map(|_| random_star(rng)).collect(),
        random_complex(rng),
    )
    .unwrap()
}

pub fn shuffled<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    order
}

/// `G G^* / tr` for a random `d x rank` matrix `G`.
pub fn random_density<R: Rng>(rng: &mut R, d: usize, rank: usize) -> DensityMatrix {
    let g: Vec<Vec<Complex64>> = (0..d)
        .map(|_| (0..rank).map(|_| random_complex(rng)).collect())
        .collect();
    let mut m: Vec<Vec<Complex64>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..rank).map(|k| g[i][k] * g[j][k].conj()).sum())
                .collect()
        })
        .collect();
    let tr: f64 = (0..d).map(|i| m[i][i].re).sum();
    for (i, row) in m.iter_mut().enumerate() {
        for (j, z) in row.iter_mut().enumerate() {
            *z /= tr;
            if i == j {
                z.im = 0.0;
            }
        }
    }
    // exact Hermitian symmetry
    for i in 0..d {
        for j in i + 1..d {
            m[j][i] = m[i][j].conj();
        }
    }
    DensityMatrix::new(m).unwrap()
}

/// Amplitudes of the three worked examples.
pub fn example_a() -> StateVector {
    StateVector::from_real(&[1.0, 3.0, 13.0 / 6f64.sqrt(), 6.0, 4.0]).unwrap()
}

pub fn example_b() -> StateVector {
    StateVector::from_real(&[0.0, 0.5, 6f64.sqrt(), 5.5, 6.0]).unwrap()
}

pub fn example_c() -> StateVector {
    StateVector::from_real(&[0.0, 0.0, 1.0 / 6f64.sqrt(), 1.0, 1.0]).unwrap()
}

fn stars_from(infinite: usize, finite: &[f64]) -> StarSet {
    let stars = std::iter::repeat_n(Star::south(), infinite)
        .chain(finite.iter().map(|&m| Star::finite(c(m))))
        .collect();
    StarSet::new(stars, c(1.0)).unwrap()
}

/// `u = {(1,1), (1,1), (1,2), (1,2)}`
pub fn example_a_stars() -> StarSet {
    stars_from(0, &[1.0, 1.0, 2.0, 2.0])
}

/// `v = {(0,1), (1,1), (1,2), (1,3)}`
pub fn example_b_stars() -> StarSet {
    stars_from(1, &[1.0, 2.0, 3.0])
}

/// `w = {(0,1), (0,1), (1,1), (1,1)}`
pub fn example_c_stars() -> StarSet {
    stars_from(2, &[1.0, 1.0])
}
