//! Linear combinations of basis names: `coeff*name (+|-) …`, or `0`.
//!
//! Coefficients are integers or fractions (`3/2*d - g`); a bare name has
//! coefficient one and repeated names add up.

use hhx_core::{Field, Scalar};

use crate::error::CliError;

/// Coordinates of `expr` in the basis `names`.
pub fn parse_texpr(expr: &str, names: &[String], field: Field) -> Result<Vec<Scalar>, CliError> {
    let mut out = vec![field.zero(); names.len()];
    let bad = |offset: usize, message: &str| CliError::TExpression {
        expr: expr.to_string(),
        offset,
        message: message.to_string(),
    };
    if expr.trim() == "0" {
        return Ok(out);
    }
    let bytes = expr.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            if first {
                return Err(bad(pos, "empty expression"));
            }
            break;
        }
        let mut negative = false;
        match bytes[pos] {
            b'+' | b'-' => {
                negative = bytes[pos] == b'-';
                pos += 1;
                skip_ws(&mut pos);
            }
            _ if !first => return Err(bad(pos, "expected `+` or `-`")),
            _ => {}
        }
        let start = pos;
        while pos < bytes.len() && !matches!(bytes[pos], b'+' | b'-' | b'*') && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let first_token = &expr[start..pos];
        skip_ws(&mut pos);
        let (coeff, name, name_at) = if pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
            skip_ws(&mut pos);
            let name_start = pos;
            while pos < bytes.len() && !matches!(bytes[pos], b'+' | b'-' | b'*') && !bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            let coeff = field.parse_scalar(first_token).map_err(|_| bad(start, "coefficient is not a number"))?;
            (coeff, &expr[name_start..pos], name_start)
        } else {
            (field.one(), first_token, start)
        };
        if name.is_empty() {
            return Err(bad(name_at, "expected a basis name"));
        }
        let index = names.iter().position(|n| n == name).ok_or_else(|| CliError::UnknownBasisName {
            name: name.to_string(),
            available: names.to_vec(),
        })?;
        let coeff = if negative { -coeff } else { coeff };
        out[index] = &out[index] + &coeff;
        first = false;
    }
    Ok(out)
}
