use std::collections::HashMap;
use std::fmt::Write;

use qchem_core::error::Error;
use qchem_core::fermion::{SecondQuantizedHamiltonian, SYMMETRY_TOL};
use qchem_core::state::MAX_QUBITS;

use crate::error::{CliError, ParseError};

/// Parses the integrals format:
///
/// ```text
/// # comment
/// M 4
/// const 0.7137
/// 1e p q value
/// 2e p q r s value
/// ```
///
/// Indices are 1-based. Entries not listed are zero, except that a listed
/// entry also sets its Hermitian partner (`h_qp`, or `h_srqp` for two-body
/// terms) when the partner is not listed itself. Listing both with
/// different values is a Hermiticity error; so is listing one entry twice
/// with different values.
pub fn parse_integrals(text: &str) -> Result<SecondQuantizedHamiltonian, CliError> {
    let src = "integrals";
    let perr = |line: usize, msg: String| CliError::parse(src, ParseError::new(line, msg));
    let mut ham: Option<SecondQuantizedHamiltonian> = None;
    let mut one: HashMap<(usize, usize), (f64, usize)> = HashMap::new();
    let mut two: HashMap<(usize, usize, usize, usize), (f64, usize)> = HashMap::new();
    let mut constant: Option<f64> = None;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some(h) = ham.as_ref() else {
            match fields.as_slice() {
                ["M", m] => {
                    let m: usize = m
                        .parse()
                        .map_err(|_| perr(lineno, format!("bad mode count {m:?}")))?;
                    if m == 0 || m > MAX_QUBITS {
                        return Err(Error::Domain(format!(
                            "line {lineno}: mode count {m} outside 1..={MAX_QUBITS}"
                        ))
                        .into());
                    }
                    ham = Some(SecondQuantizedHamiltonian::new(m));
                    continue;
                }
                _ => return Err(perr(lineno, "expected header \"M <count>\"".into())),
            }
        };
        let m = h.n_modes();
        let value = |s: &str| -> Result<f64, CliError> {
            let v: f64 = s
                .parse()
                .map_err(|_| perr(lineno, format!("bad value {s:?}")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(perr(lineno, format!("non-finite value {s:?}")))
            }
        };
        let index = |s: &str| -> Result<usize, CliError> {
            let k: usize = s
                .parse()
                .map_err(|_| perr(lineno, format!("bad index {s:?}")))?;
            if k == 0 || k > m {
                return Err(
                    Error::Domain(format!("line {lineno}: index {k} outside 1..={m}")).into(),
                );
            }
            Ok(k - 1)
        };
        match fields.as_slice() {
            ["const", v] => {
                if constant.is_some() {
                    return Err(perr(lineno, "constant given twice".into()));
                }
                constant = Some(value(v)?);
            }
            ["1e", p, q, v] => {
                let key = (index(p)?, index(q)?);
                record(&mut one, key, value(v)?, lineno)?;
            }
            ["2e", p, q, r, s, v] => {
                let key = (index(p)?, index(q)?, index(r)?, index(s)?);
                record(&mut two, key, value(v)?, lineno)?;
            }
            ["M", _] => return Err(perr(lineno, "header repeated".into())),
            _ => return Err(perr(lineno, format!("unrecognized line {line:?}"))),
        }
    }
    let mut h = ham.ok_or_else(|| {
        perr(
            text.lines().count().max(1),
            "missing header \"M <count>\"".into(),
        )
    })?;
    h.set_constant(constant.unwrap_or(0.0));

    for (&(p, q), &(v, line)) in &one {
        if let Some(&(w, other)) = one.get(&(q, p)) {
            if (v - w).abs() > SYMMETRY_TOL {
                return Err(Error::Domain(format!(
                    "lines {line} and {other}: h[{}][{}] = {v} but h[{}][{}] = {w} (not Hermitian)",
                    p + 1,
                    q + 1,
                    q + 1,
                    p + 1
                ))
                .into());
            }
        } else {
            h.set_one_body(q, p, v)?;
        }
        h.set_one_body(p, q, v)?;
    }
    for (&(p, q, r, s), &(v, line)) in &two {
        if let Some(&(w, other)) = two.get(&(s, r, q, p)) {
            if (v - w).abs() > SYMMETRY_TOL {
                return Err(Error::Domain(format!(
                    "lines {line} and {other}: two-body entries ({} {} {} {}) and its adjoint differ (not Hermitian)",
                    p + 1,
                    q + 1,
                    r + 1,
                    s + 1
                ))
                .into());
            }
        } else {
            h.set_two_body(s, r, q, p, v)?;
        }
        h.set_two_body(p, q, r, s, v)?;
    }
    h.check_hermitian()?;
    Ok(h)
}

fn record<K: std::hash::Hash + Eq>(
    map: &mut HashMap<K, (f64, usize)>,
    key: K,
    value: f64,
    line: usize,
) -> Result<(), CliError> {
    if let Some(&(old, first)) = map.get(&key) {
        if old != value {
            return Err(Error::Domain(format!(
                "line {line}: entry repeats line {first} with a different value"
            ))
            .into());
        }
        return Ok(());
    }
    map.insert(key, (value, line));
    Ok(())
}

/// Writes every non-zero entry, with values in shortest round-trip form.
pub fn format_integrals(h: &SecondQuantizedHamiltonian) -> String {
    let m = h.n_modes();
    let mut out = format!("M {m}\n");
    if h.constant() != 0.0 {
        writeln!(out, "const {:?}", h.constant()).unwrap();
    }
    for p in 0..m {
        for q in 0..m {
            let v = h.one_body(p, q);
            if v != 0.0 {
                writeln!(out, "1e {} {} {v:?}", p + 1, q + 1).unwrap();
            }
        }
    }
    for p in 0..m {
        for q in 0..m {
            for r in 0..m {
                for s in 0..m {
                    let v = h.two_body(p, q, r, s);
                    if v != 0.0 {
                        writeln!(out, "2e {} {} {} {} {v:?}", p + 1, q + 1, r + 1, s + 1).unwrap();
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_mode() {
        let h = parse_integrals("M 1\n1e 1 1 -0.5\n").unwrap();
        assert_eq!(h.n_modes(), 1);
        assert_eq!(h.one_body(0, 0), -0.5);
    }

    #[test]
    fn empty_body_is_zero() {
        let h = parse_integrals("# nothing\nM 3\n").unwrap();
        assert!(h.to_pauli_sum().unwrap().is_empty());
    }

    #[test]
    fn partners_and_conflicts() {
        let h = parse_integrals("M 2\n1e 1 2 0.25\n").unwrap();
        assert_eq!(h.one_body(1, 0), 0.25);
        assert!(parse_integrals("M 2\n1e 1 2 0.25\n1e 2 1 0.25\n").is_ok());
        let err = parse_integrals("M 2\n1e 1 2 0.25\n1e 2 1 0.3\n").unwrap_err();
        assert!(err.to_string().contains("Hermitian"), "{err}");
        let h = parse_integrals("M 2\n2e 1 2 2 2 0.1\n").unwrap();
        assert_eq!(h.two_body(1, 1, 1, 0), 0.1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_integrals("M 2\n\n1e 1 x 0.5\n").unwrap_err();
        assert!(
            matches!(err, CliError::Parse { ref error, .. } if error.line == 3),
            "{err}"
        );
        let err = parse_integrals("M 2\n1e 1 3 0.5\n").unwrap_err();
        assert!(matches!(err, CliError::Core(Error::Domain(_))), "{err}");
        assert!(parse_integrals("1e 1 1 0.5\n").is_err());
    }

    #[test]
    fn round_trip() {
        let text = "M 2\nconst 0.5\n1e 1 1 -1.25\n1e 1 2 0.125\n2e 1 2 2 1 0.375\n";
        let h = parse_integrals(text).unwrap();
        assert_eq!(parse_integrals(&format_integrals(&h)).unwrap(), h);
    }
}
