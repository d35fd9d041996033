use std::fmt;

use ncimc_core::{fixtures, CoeffRing, Elem, Error, Instance, Matrix, Poly, Ring};
use serde_json::Value;

#[derive(Debug)]
pub enum InputError {
    Usage(String),
    Core(Error),
}

impl InputError {
    /// Unstable ideal comparisons are verification outcomes, not bad input.
    pub fn status(&self) -> u8 {
        match self {
            InputError::Core(Error::PrecisionUnstable { .. }) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Usage(s) => f.write_str(s),
            InputError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn one_point(ell: u64, m: u32) -> String {
    let q = if ell == 2 { 3 } else { 2 };
    format!(
        "name = \"one-point\"\nq = {q}\nell = {ell}\nm = {m}\n\n[[points]]\ndegree = 1\nfrobenius = [0, 1]\n"
    )
}

/// The instance text and its parse. Without `--fixture`, a single rational
/// point on the cyclotomic covering with `Omega = Z/ell^m`.
pub fn load_instance(fixture: Option<&str>, ell: Option<u64>, m: Option<u32>) -> Result<(String, Instance), InputError> {
    let text = match fixture {
        Some(f) => match std::fs::read_to_string(f) {
            Ok(t) => t,
            Err(e) => fixtures::by_name(f)
                .map(str::to_string)
                .ok_or_else(|| InputError::Usage(format!("cannot read {f}: {e}")))?,
        },
        None => one_point(ell.unwrap_or(3), m.unwrap_or(2)),
    };
    let inst = Instance::parse(&text).map_err(InputError::Core)?;
    let ring = &inst.covering.ring;
    if ell.is_some_and(|l| l != ring.ell()) || m.is_some_and(|x| x != ring.m()) {
        return Err(InputError::Usage("--ell/--m disagree with the instance".into()));
    }
    Ok((text, inst))
}

pub fn ring_from_flags(fixture: Option<&str>, ell: Option<u64>, m: Option<u32>) -> Result<CoeffRing, InputError> {
    match fixture {
        Some(_) => Ok(load_instance(fixture, ell, m)?.1.covering.ring),
        None => CoeffRing::integers(ell.unwrap_or(3), m.unwrap_or(2)).map_err(InputError::Core),
    }
}

fn bad(what: &str) -> InputError {
    InputError::Usage(format!("malformed {what}"))
}

fn elem(ring: &CoeffRing, v: &Value) -> Result<Elem, InputError> {
    match v {
        Value::Number(n) => n.as_i64().map(|x| ring.from_int(x)).ok_or_else(|| bad("integer")),
        Value::Array(cs) if cs.len() <= ring.degree() => {
            let coords = cs
                .iter()
                .map(|c| c.as_i64().ok_or_else(|| bad("coordinate")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ring.elem(&coords))
        }
        _ => Err(bad("ring element")),
    }
}

fn grid<T: Clone>(text: &str, mut cell: impl FnMut(&Value) -> Result<T, InputError>) -> Result<Matrix<T>, InputError> {
    let v: Value = serde_json::from_str(text).map_err(|e| InputError::Usage(format!("matrix: {e}")))?;
    let rows = v.as_array().ok_or_else(|| bad("matrix"))?;
    let rows = rows
        .iter()
        .map(|r| r.as_array().ok_or_else(|| bad("row"))?.iter().map(&mut cell).collect())
        .collect::<Result<Vec<Vec<T>>, _>>()?;
    let m = Matrix::from_rows(rows).map_err(InputError::Core)?;
    if !m.is_square() || m.rows() == 0 {
        return Err(InputError::Usage("expected a nonempty square matrix".into()));
    }
    Ok(m)
}

/// `[[4]]` or `[[[0, 1], 2], ..]`: rows of integers or coordinate lists.
pub fn parse_matrix(ring: &CoeffRing, text: &str) -> Result<Matrix<Elem>, InputError> {
    grid(text, |v| elem(ring, v))
}

/// Entries are coefficient lists `[c0, c1, ..]` in `T`, or integers.
pub fn parse_poly_matrix(ring: &CoeffRing, text: &str) -> Result<Matrix<Poly>, InputError> {
    grid(text, |v| match v {
        Value::Array(cs) => Ok(Poly::new(ring, cs.iter().map(|c| elem(ring, c)).collect::<Result<_, _>>()?)),
        other => Ok(Poly::constant(ring, elem(ring, other)?)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices() {
        let r = CoeffRing::integers(3, 2).unwrap();
        let m = parse_matrix(&r, "[[4, 0], [1, -1]]").unwrap();
        assert_eq!(m.get(1, 1), &r.from_int(8));
        let p = parse_poly_matrix(&r, "[[[0, 1]]]").unwrap();
        assert_eq!(p.get(0, 0).render(&r), "T");
        assert!(parse_matrix(&r, "[[1, 2]]").is_err());
        assert!(parse_matrix(&r, "[[[1, 2]]]").is_err());
    }

    #[test]
    fn default_instance() {
        let (_, inst) = load_instance(None, Some(5), Some(1)).unwrap();
        assert_eq!(inst.covering.points.len(), 1);
        assert!(load_instance(Some("s3-gamma"), Some(5), None).is_err());
    }
}
