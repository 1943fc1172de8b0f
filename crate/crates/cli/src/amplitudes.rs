//! Parsing of state and complex-number arguments.
//!
//! A state is a comma-separated list of amplitudes, each written `re`,
//! `imj` or `re±imj` (for example `0.6,0.8j` or `0.5+0.5j,0.5-0.5j`).

use qspecies::{StateVector, C64};

/// Norm deviation above which a parsed state triggers a warning.
pub const NORM_WARNING: f64 = 1e-6;

pub fn parse_complex(token: &str) -> Result<C64, String> {
    let t: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty amplitude".into());
    }
    let num = |s: &str| s.parse::<f64>().map_err(|_| format!("malformed amplitude `{token}`"));
    let Some(body) = t.strip_suffix('j') else {
        return finite(C64::new(num(&t)?, 0.0), token);
    };
    // split before the last sign that is not leading and not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |s: &str| match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => num(s),
    };
    let z = match split {
        Some(i) => C64::new(num(&body[..i])?, imag(&body[i..])?),
        None => C64::new(0.0, imag(body)?),
    };
    finite(z, token)
}

fn finite(z: C64, token: &str) -> Result<C64, String> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("non-finite amplitude `{token}`"))
    }
}

/// Parses and normalizes a state; the second value is a warning when the
/// supplied norm was off by more than [`NORM_WARNING`].
pub fn parse_state(spec: &str) -> Result<(StateVector, Option<String>), String> {
    let amps = spec
        .split(',')
        .map(parse_complex)
        .collect::<Result<Vec<_>, _>>()?;
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err("state has zero norm".into());
    }
    let warning = ((norm - 1.0).abs() > NORM_WARNING)
        .then(|| format!("state `{spec}` has norm {norm}; normalizing"));
    let state = StateVector::normalized(amps).map_err(|e| e.to_string())?;
    Ok((state, warning))
}
