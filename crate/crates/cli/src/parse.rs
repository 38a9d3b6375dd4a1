//! Parsers for command-line values.

use num_complex::Complex64;
use stasurf::cplane::ExtendedComplex;
use stasurf::ratfun::Contour;

use crate::{CliError, CliResult};

fn number(s: &str, whole: &str) -> CliResult<f64> {
    s.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| CliError::parse(format!("bad number `{whole}`")))
}

/// `inf`, `2`, `-1.5`, `i`, `-2i`, `1+2i`, `0.5-1e-3i`.
pub fn complex(text: &str) -> CliResult<ExtendedComplex> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(CliError::parse("empty complex number"));
    }
    if s == "inf" || s == "∞" {
        return Ok(ExtendedComplex::Infinity);
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(ExtendedComplex::real(number(&s, text)?));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (number(&body[..k], text)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => number(t, text)?,
    };
    Ok(ExtendedComplex::Finite(Complex64::new(re, im)))
}

/// Comma-separated points.
pub fn complex_list(text: &str) -> CliResult<Vec<ExtendedComplex>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(complex).collect()
}

/// `NxM`.
pub fn grid_counts(text: &str) -> CliResult<(usize, usize)> {
    let err = || CliError::parse(format!("grid `{text}` is not of the form NxM"));
    let (a, b) = text.split_once(['x', 'X']).ok_or_else(err)?;
    let a: usize = a.trim().parse().map_err(|_| err())?;
    let b: usize = b.trim().parse().map_err(|_| err())?;
    if a == 0 || b == 0 {
        return Err(err());
    }
    Ok((a, b))
}

/// `a,b,c,d`: the first and second coordinate ranges of the grid.
pub fn window(text: &str) -> CliResult<([f64; 2], [f64; 2])> {
    let v: Vec<f64> = text.split(',').map(|s| number(s.trim(), text)).collect::<CliResult<_>>()?;
    match v.as_slice() {
        [a, b, c, d] => Ok(([*a, *b], [*c, *d])),
        _ => Err(CliError::parse(format!("window `{text}` needs four numbers"))),
    }
}

/// Circles `x,y,r` separated by `;`.
pub fn loops(text: &str) -> CliResult<Vec<Contour>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|c| {
            let v: Vec<f64> = c.split(',').map(|s| number(s.trim(), c)).collect::<CliResult<_>>()?;
            match v.as_slice() {
                [x, y, r] if *r > 0.0 => Ok(Contour::circle(Complex64::new(*x, *y), *r)),
                _ => Err(CliError::parse(format!("loop `{c}` must be x,y,r with r > 0"))),
            }
        })
        .collect()
}
