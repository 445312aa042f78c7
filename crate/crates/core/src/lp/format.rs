use std::fmt::Write;

use super::{LinearProgram, Sense};
use crate::rational::{to_f64, Rational};

fn num(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}", to_f64(r))
    }
}

fn terms(out: &mut String, lp: &LinearProgram, coeffs: &[(usize, Rational)]) {
    if coeffs.is_empty() {
        out.push_str(" 0");
        return;
    }
    for (k, (j, a)) in coeffs.iter().enumerate() {
        let neg = *a < Rational::from_integer(0);
        let mag = if neg { -*a } else { *a };
        let sign = match (k, neg) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => "+ ",
            (_, true) => "- ",
        };
        let coef = if mag == Rational::from_integer(1) { String::new() } else { format!("{} ", num(&mag)) };
        let _ = write!(out, " {sign}{coef}{}", lp.var_names[*j]);
    }
}

/// CPLEX-style LP text. Fractional coefficients are written as decimals.
pub fn write_lp(lp: &LinearProgram) -> String {
    let mut out = String::from("Minimize\n obj:");
    terms(&mut out, lp, &lp.objective);
    out.push_str("\nSubject To\n");
    for c in &lp.constraints {
        let _ = write!(out, " {}:", c.name);
        terms(&mut out, lp, &c.coeffs);
        let op = match c.sense {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        };
        let _ = writeln!(out, " {op} {}", num(&c.rhs));
    }
    out.push_str("End\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::Constraint;
    use crate::rational::{int, ratio};

    #[test]
    fn writes_sections() {
        let lp = LinearProgram {
            var_names: vec!["f0".into(), "T1".into()],
            objective: vec![(1, int(1))],
            constraints: vec![Constraint {
                name: "time0".into(),
                coeffs: vec![(1, int(1)), (0, ratio(5, 2))],
                sense: Sense::Ge,
                rhs: int(5),
            }],
        };
        let s = write_lp(&lp);
        assert!(s.starts_with("Minimize\n obj: T1\nSubject To\n"));
        assert!(s.contains(" time0: T1 + 2.5 f0 >= 5\n"));
        assert!(s.ends_with("End\n"));
    }
}
