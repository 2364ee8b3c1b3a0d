use std::fmt::Write;

use qchem_core::fold::PuboProblem;

use crate::error::{CliError, ParseError};

/// Parses a binary polynomial:
///
/// ```text
/// vars 4
/// c 4.0          constant term
/// c 1 -3.0       -3 q1
/// c 1 2 -4.0     -4 q1 q2
/// ```
///
/// Variable indices are 1-based and strictly ascending within a line.
/// Repeated variable sets accumulate.
pub fn parse_pubo(text: &str) -> Result<PuboProblem, CliError> {
    let perr = |line: usize, msg: String| CliError::parse("polynomial", ParseError::new(line, msg));
    let mut problem: Option<PuboProblem> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some(p) = problem.as_mut() else {
            match fields.as_slice() {
                ["vars", n] => {
                    let n: usize = n
                        .parse()
                        .map_err(|_| perr(lineno, format!("bad variable count {n:?}")))?;
                    problem = Some(PuboProblem::new(n));
                    continue;
                }
                _ => return Err(perr(lineno, "expected header \"vars <count>\"".into())),
            }
        };
        match fields.as_slice() {
            ["c", rest @ .., coeff] => {
                let c: f64 = coeff
                    .parse()
                    .map_err(|_| perr(lineno, format!("bad coefficient {coeff:?}")))?;
                let mut vars = Vec::with_capacity(rest.len());
                for s in rest {
                    let k: usize = s
                        .parse()
                        .map_err(|_| perr(lineno, format!("bad index {s:?}")))?;
                    if k == 0 || k > p.n_vars() {
                        return Err(qchem_core::Error::Domain(format!(
                            "line {lineno}: index {k} outside 1..={}",
                            p.n_vars()
                        ))
                        .into());
                    }
                    if vars.last().is_some_and(|&last| last >= k - 1) {
                        return Err(perr(lineno, "indices must be strictly ascending".into()));
                    }
                    vars.push(k - 1);
                }
                p.add_term(&vars, c)?;
            }
            _ => return Err(perr(lineno, format!("unrecognized line {line:?}"))),
        }
    }
    problem.ok_or_else(|| perr(0, "missing header \"vars <count>\"".into()))
}

pub fn format_pubo(p: &PuboProblem) -> String {
    let mut out = format!("vars {}\n", p.n_vars());
    for (vars, c) in p.terms() {
        out.push('c');
        for v in vars {
            write!(out, " {}", v + 1).unwrap();
        }
        writeln!(out, " {c:?}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use qchem_core::fold::folding_pubo;

    #[test]
    fn folding_instance_round_trips() {
        let p = folding_pubo();
        let text = format_pubo(&p);
        assert!(text.starts_with("vars 4\nc 4.0\n"));
        assert_eq!(parse_pubo(&text).unwrap(), p);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse_pubo("c 1 2.0\n").is_err());
        assert!(parse_pubo("vars 2\nc 2 1 1.0\n").is_err());
        assert!(parse_pubo("vars 2\nc 3 1.0\n").is_err());
        assert!(parse_pubo("vars 2\nq 1 1.0\n").is_err());
        let p = parse_pubo("vars 2\nc 1 2 1.5\nc 1 2 0.5\n").unwrap();
        assert_eq!(p.terms().next().unwrap().1, 2.0);
    }
}
