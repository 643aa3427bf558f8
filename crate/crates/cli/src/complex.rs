//! Command-line syntax for complex numbers and lists.
//!
//! A single value is either a strict `re,im` pair or the `a+bi` form
//! (`1+1i`, `-i`, `0.5`). List elements are separated by commas, so inside a
//! list only the `a+bi` form is available.

use num_complex::Complex64;

fn parse_real(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| format!("cannot parse {s:?} as a real number"))
}

fn parse_algebraic(s: &str) -> Result<Complex64, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty complex number".into());
    }
    compact
        .parse::<Complex64>()
        .map_err(|_| format!("cannot parse {s:?} as a complex number (use re,im or a+bi)"))
}

/// Parses one complex number, `re,im` or `a+bi`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_real(re)?, parse_real(im)?)),
        None => parse_algebraic(s),
    }
}

/// Parses a comma-separated list of `a+bi` values; the empty string is the
/// empty list.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_algebraic).collect()
}

pub fn parse_real_list(s: &str) -> Result<Vec<f64>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_real).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pairs_and_algebraic() {
        assert_eq!(parse_complex("0.1,-2").unwrap(), c(0.1, -2.0));
        assert_eq!(parse_complex("-1.5, 0").unwrap(), c(-1.5, 0.0));
        assert_eq!(parse_complex("1+1i").unwrap(), c(1.0, 1.0));
        assert_eq!(parse_complex("1 + 1i").unwrap(), c(1.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("-1").unwrap(), c(-1.0, 0.0));
        assert_eq!(parse_complex("1e-3-2e-1i").unwrap(), c(1e-3, -0.2));
    }

    #[test]
    fn pairs_are_bit_exact() {
        let v = parse_complex("0.1,0.30000000000000004").unwrap();
        assert_eq!(v.re.to_bits(), 0.1f64.to_bits());
        assert_eq!(v.im.to_bits(), (0.1f64 + 0.2).to_bits());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_complex("").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("1,").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(parse_complex_list("2,3").unwrap(), vec![c(2.0, 0.0), c(3.0, 0.0)]);
        assert_eq!(parse_complex_list("").unwrap(), vec![]);
        assert_eq!(parse_complex_list("1+2i, 3").unwrap(), vec![c(1.0, 2.0), c(3.0, 0.0)]);
        assert_eq!(parse_real_list("0.5,0.9").unwrap(), vec![0.5, 0.9]);
        assert!(parse_real_list("0.5,x").is_err());
    }
}
