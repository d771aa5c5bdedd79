use std::fmt::Write as _;

use majorana::permanent::RYSER_MAX;
use majorana::poly::scaled_residual;
use majorana::{
    build_polynomial, decompose_mixed, find_roots, purify_and_represent, roundtrip_check,
    star_sets_match, stars_to_state, stars_to_state_symmetric, state_inner_via_stars,
    state_to_stars, Complex64, StarSet, StateVector,
};

use crate::failure::{self, Failure};
use crate::files::{
    bloch_csv, parse, read_json, read_text, write_json, write_text, DecompositionFile, DensityFile,
    StarFile, StateFile,
};
use crate::numfmt;

/// Largest round-trip residual `verify` accepts.
pub const VERIFY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Via {
    Coords,
    Stars,
    Both,
}

pub fn read_state(path: &str) -> Result<StateVector, Failure> {
    read_json::<StateFile>(path)?.to_state()
}

pub fn read_stars(path: &str) -> Result<StarSet, Failure> {
    read_json::<StarFile>(path)?.to_star_set()
}

/// Permanent route where the kernel allows it, elementary symmetric
/// functions for longer star lists.
pub fn reconstruct(a: &StarSet) -> Result<StateVector, Failure> {
    if a.stars().len() <= RYSER_MAX {
        Ok(stars_to_state(a)?)
    } else {
        Ok(stars_to_state_symmetric(a)?)
    }
}

pub fn to_stars(input: &str, output: Option<&str>, csv: Option<&str>) -> Result<(), Failure> {
    let state = read_state(input)?;
    let stars = state_to_stars(&state)?.stars;
    write_json(output, &StarFile::from_star_set(&stars, None))?;
    if let Some(csv) = csv {
        write_text(Some(csv), &bloch_csv(&stars))?;
    }
    Ok(())
}

pub fn to_state(input: &str, output: Option<&str>) -> Result<(), Failure> {
    let stars = read_stars(input)?;
    write_json(output, &StateFile::from_state(&reconstruct(&stars)?))
}

/// Either kind of input file; star files are recognised by their `stars` key.
enum Operand {
    State(StateVector),
    Stars(StarSet),
}

impl Operand {
    fn read(path: &str) -> Result<Self, Failure> {
        let text = read_text(path)?;
        let value: serde_json::Value = parse(path, &text)?;
        if value.get("stars").is_some() {
            Ok(Operand::Stars(
                parse::<StarFile>(path, &text)?.to_star_set()?,
            ))
        } else {
            Ok(Operand::State(parse::<StateFile>(path, &text)?.to_state()?))
        }
    }

    fn dim(&self) -> usize {
        match self {
            Operand::State(s) => s.dim(),
            Operand::Stars(a) => a.dim(),
        }
    }

    fn state(&self) -> Result<StateVector, Failure> {
        match self {
            Operand::State(s) => Ok(s.clone()),
            Operand::Stars(a) => reconstruct(a),
        }
    }

    fn stars(&self) -> Result<StarSet, Failure> {
        match self {
            Operand::State(s) => Ok(state_to_stars(s)?.stars),
            Operand::Stars(a) => Ok(a.clone()),
        }
    }
}

/// `<a|b>`, conjugate-linear in `a`.
pub fn inner(a: &str, b: &str, via: Via) -> Result<(), Failure> {
    let a = Operand::read(a)?;
    let b = Operand::read(b)?;
    if a.dim() != b.dim() {
        return Err(Failure::new(
            failure::DIMENSION,
            format!("dimensions differ: {} and {}", a.dim(), b.dim()),
        ));
    }
    let coords = || -> Result<Complex64, Failure> { Ok(a.state()?.inner(&b.state()?)?) };
    let stars =
        || -> Result<Complex64, Failure> { Ok(state_inner_via_stars(&a.stars()?, &b.stars()?)?) };
    let text = match via {
        Via::Coords => format!("{}\n", numfmt::complex(coords()?)),
        Via::Stars => format!("{}\n", numfmt::complex(stars()?)),
        Via::Both => {
            let (x, y) = (coords()?, stars()?);
            format!(
                "coords {}\nstars {}\ndifference {}\n",
                numfmt::complex(x),
                numfmt::complex(y),
                numfmt::format_g((x - y).norm(), 15)
            )
        }
    };
    write_text(None, &text)
}

pub fn decompose(input: &str, output: Option<&str>) -> Result<(), Failure> {
    let rho = read_json::<DensityFile>(input)?.to_density()?;
    let model = decompose_mixed(&rho)?;
    write_json(output, &DecompositionFile::from_model(&model))
}

pub fn purify(input: &str, output: Option<&str>) -> Result<(), Failure> {
    let rho = read_json::<DensityFile>(input)?.to_density()?;
    let p = purify_and_represent(&rho)?;
    write_json(
        output,
        &StarFile::from_star_set(&p.correspondence.stars, Some(p.rank)),
    )
}

/// Round-trip diagnostics. Exits with the residual code when the residual
/// exceeds [`VERIFY_TOL`]; `tol` only governs the star rematch line.
pub fn verify(input: &str, tol: f64) -> Result<(), Failure> {
    let state = read_state(input)?;
    let poly = build_polynomial(&state);
    let roots = find_roots(&poly)?;
    let residual = roundtrip_check(&state)?;

    let g = |x: f64| numfmt::format_g(x, 15);
    let mut out = String::new();
    let _ = writeln!(out, "residual {}", g(residual));
    let _ = writeln!(out, "coefficients {}", poly.coefficients().len());
    for (j, c) in poly.coefficients().iter().enumerate() {
        let _ = writeln!(out, "  {j} {}", numfmt::complex(*c));
    }
    let _ = writeln!(
        out,
        "roots {} infinity {}",
        roots.finite_roots.len(),
        roots.infinity_count
    );
    for mu in &roots.finite_roots {
        let _ = writeln!(
            out,
            "  {} residual {}",
            numfmt::complex(*mu),
            g(scaled_residual(&poly, *mu))
        );
    }
    let stars = state_to_stars(&state)?.stars;
    let again = state_to_stars(&reconstruct(&stars)?)?.stars;
    let report = star_sets_match(&stars, &again, tol)?;
    let _ = writeln!(
        out,
        "rematch {} max_distance {} tol {}",
        if report.matched { "ok" } else { "failed" },
        g(report.max_distance),
        g(tol)
    );
    write_text(None, &out)?;

    if residual > VERIFY_TOL {
        return Err(Failure::new(
            failure::RESIDUAL,
            format!(
                "round-trip residual {} exceeds {}",
                g(residual),
                g(VERIFY_TOL)
            ),
        ));
    }
    Ok(())
}
