//! JSON and CSV file formats. Complex numbers are `[re, im]` pairs.

use std::fs;
use std::io::{self, Read, Write};

use majorana::types::BLOCH_INPUT_TOL;
use majorana::{
    star_to_bloch, BlochPoint, Complex64, DensityMatrix, MixedStarModel, Star, StarSet, StateVector,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::failure::Failure;

pub type Pair = [f64; 2];

pub fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

pub fn complex(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dim: usize,
    pub amplitudes: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarEntry {
    pub alpha: Pair,
    pub beta: Pair,
    /// Always written; may be omitted on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bloch: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarFile {
    pub dim: usize,
    pub prefactor: Pair,
    pub stars: Vec<StarEntry>,
    /// Set on purification output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityFile {
    pub dim: usize,
    pub entries: Vec<Vec<Pair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub weights: Vec<f64>,
    pub components: Vec<StarFile>,
}

impl StateFile {
    pub fn from_state(s: &StateVector) -> Self {
        StateFile {
            dim: s.dim(),
            amplitudes: s.amplitudes().iter().copied().map(pair).collect(),
        }
    }

    pub fn to_state(&self) -> Result<StateVector, Failure> {
        if self.amplitudes.len() != self.dim {
            return Err(Failure::invalid(format!(
                "dim is {} but {} amplitudes are given",
                self.dim,
                self.amplitudes.len()
            )));
        }
        Ok(StateVector::new(
            self.amplitudes.iter().copied().map(complex).collect(),
        )?)
    }
}

impl StarFile {
    pub fn from_star_set(a: &StarSet, rank: Option<usize>) -> Self {
        StarFile {
            dim: a.dim(),
            prefactor: pair(a.prefactor()),
            stars: a
                .stars()
                .iter()
                .map(|s| StarEntry {
                    alpha: pair(s.alpha),
                    beta: pair(s.beta),
                    bloch: Some(star_to_bloch(s).as_array()),
                })
                .collect(),
            rank,
        }
    }

    pub fn to_star_set(&self) -> Result<StarSet, Failure> {
        if self.dim < 2 || self.stars.len() != self.dim - 1 {
            return Err(Failure::invalid(format!(
                "dim is {} but {} stars are given",
                self.dim,
                self.stars.len()
            )));
        }
        let mut stars = Vec::with_capacity(self.stars.len());
        for (i, entry) in self.stars.iter().enumerate() {
            let star = Star::new(complex(entry.alpha), complex(entry.beta))
                .map_err(|e| Failure::invalid(format!("star {i}: {e}")))?;
            if let Some([cx, cy, cz]) = entry.bloch {
                let given = BlochPoint::new(cx, cy, cz)
                    .map_err(|e| Failure::invalid(format!("star {i}: {e}")))?;
                let derived = star_to_bloch(&star);
                if given.distance(&derived) > BLOCH_INPUT_TOL {
                    return Err(Failure::invalid(format!(
                        "star {i}: bloch point disagrees with (alpha, beta) by {:e}",
                        given.distance(&derived)
                    )));
                }
            }
            stars.push(star);
        }
        Ok(StarSet::new(stars, complex(self.prefactor))?)
    }
}

impl DensityFile {
    pub fn to_density(&self) -> Result<DensityMatrix, Failure> {
        if self.entries.len() != self.dim || self.entries.iter().any(|r| r.len() != self.dim) {
            return Err(Failure::invalid(format!(
                "entries are not a {0} x {0} matrix",
                self.dim
            )));
        }
        Ok(DensityMatrix::new(
            self.entries
                .iter()
                .map(|row| row.iter().copied().map(complex).collect())
                .collect(),
        )?)
    }
}

impl DecompositionFile {
    pub fn from_model(m: &MixedStarModel) -> Self {
        DecompositionFile {
            weights: m.weights().to_vec(),
            components: m
                .components()
                .iter()
                .map(|c| StarFile::from_star_set(c, None))
                .collect(),
        }
    }
}

/// `cx,cy,cz` header followed by one row per star.
pub fn bloch_csv(a: &StarSet) -> String {
    let mut out = String::from("cx,cy,cz\n");
    for s in a.stars() {
        let [x, y, z] = star_to_bloch(s).as_array();
        out.push_str(&format!("{x},{y},{z}\n"));
    }
    out
}

/// Reads a file, or stdin for `-`.
pub fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::io("<stdin>", e))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::io(path, e))
    }
}

pub fn parse<T: DeserializeOwned>(path: &str, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &str) -> Result<T, Failure> {
    parse(path, &read_text(path)?)
}

/// Writes to a file, or stdout for `None` and `-`.
pub fn write_text(path: Option<&str>, text: &str) -> Result<(), Failure> {
    match path {
        None | Some("-") => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::io("<stdout>", e))
        }
        Some(p) => fs::write(p, text).map_err(|e| Failure::io(p, e)),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn write_json<T: Serialize>(path: Option<&str>, value: &T) -> Result<(), Failure> {
    write_text(path, &to_json(value))
}
