//! Plain-text and LaTeX renderings of contact symmetries in the real basis
//! `arctan u_x`, `log(1+u_x^2)`, powers of `1+u_x^2` and `u_y`.

use minsurf::exprcore::{rat, realify, ClosedForm, ExprError, GaussianRational as G, RealDisplayForm, RealTerm};
use minsurf::hierarchy::ContactPolynomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `(re, im)` with `c = re + i·im`, both conjugation-symmetric.
fn split(c: &ClosedForm) -> Result<(RealDisplayForm, RealDisplayForm), ExprError> {
    let conj = c.conj();
    let re = c.add(&conj).scale(&G::real(rat(1, 2)));
    let im = c.sub(&conj).scale(&G::new(rat(0, 1), rat(-1, 2)));
    Ok((realify(&re)?, realify(&im)?))
}

/// True when `s` is a single product, possibly with a leading minus.
fn single_term(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let mut depth = 0i32;
    let bytes = body.as_bytes();
    for (idx, &b) in bytes.iter().enumerate() {
        match b {
            b'(' | b'{' => depth += 1,
            b')' | b'}' => depth -= 1,
            b'+' | b'-' if depth == 0 && idx > 0 && bytes[idx - 1] == b' ' => return false,
            _ => {}
        }
    }
    true
}

fn join_signed(pieces: Vec<String>) -> String {
    let mut out = String::new();
    for (idx, p) in pieces.into_iter().enumerate() {
        match (idx, p.strip_prefix('-')) {
            (0, _) => out.push_str(&p),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(&p);
            }
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Text of a coefficient in `u_x`; a nonzero imaginary part is written as
/// `+ i*(…)`.
pub fn coefficient_text(c: &ClosedForm) -> Result<String, ExprError> {
    let (re, im) = split(c)?;
    let mut pieces = Vec::new();
    if !re.is_zero() || im.is_zero() {
        pieces.push(re.to_text("u_x"));
    }
    if !im.is_zero() {
        pieces.push(format!("i*({})", im.to_text("u_x")));
    }
    Ok(join_signed(pieces))
}

fn q_factor(j: u32, power: impl Fn(u32) -> String) -> String {
    match j {
        0 => String::new(),
        1 => "u_y".to_string(),
        _ => power(j),
    }
}

/// One-line text readable by [`crate::parse::parse_symmetry`].
pub fn symmetry_text(phi: &ContactPolynomial) -> Result<String, ExprError> {
    let mut pieces = Vec::new();
    for (j, c) in phi.coefficients().collect::<Vec<_>>().into_iter().rev() {
        let ct = coefficient_text(c)?;
        let q = q_factor(j, |j| format!("u_y^{j}"));
        pieces.push(match (q.is_empty(), ct.as_str()) {
            (true, _) => ct,
            (false, "1") => q,
            (false, "-1") => format!("-{q}"),
            (false, _) if single_term(&ct) => format!("{ct}*{q}"),
            (false, _) => format!("({ct})*{q}"),
        });
    }
    Ok(join_signed(pieces))
}

fn rat_latex(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// Numerator polynomial, with a lone negative coefficient's sign pulled out.
fn poly_latex(num: &[BigRational]) -> (bool, String, usize) {
    let nonzero: Vec<(usize, &BigRational)> = num.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let negate = nonzero.len() == 1 && nonzero[0].1.is_negative();
    let mut s = String::new();
    for (pos, (deg, c)) in nonzero.iter().rev().enumerate() {
        let c = if negate { -(*c).clone() } else { (*c).clone() };
        if pos > 0 {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        } else if c.is_negative() {
            s.push('-');
        }
        let mag = c.abs();
        let var = match deg {
            0 => String::new(),
            1 => "u_x".to_string(),
            _ => format!("u_x^{{{deg}}}"),
        };
        if var.is_empty() {
            s.push_str(&rat_latex(&mag));
        } else if mag.is_one() {
            s.push_str(&var);
        } else {
            s.push_str(&format!("{} {var}", rat_latex(&mag)));
        }
    }
    (negate, s, nonzero.len())
}

fn term_latex(t: &RealTerm) -> (bool, String) {
    let (neg, num, count) = poly_latex(&t.numerator);
    let mut s = if t.den_pow > 0 {
        let den = if t.den_pow == 1 { "1+u_x^2".to_string() } else { format!("(1+u_x^2)^{{{}}}", t.den_pow) };
        format!("\\frac{{{num}}}{{{den}}}")
    } else if count > 1 && (t.atan_pow > 0 || t.log_pow > 0) {
        format!("\\left({num}\\right)")
    } else if num == "1" && (t.atan_pow > 0 || t.log_pow > 0) {
        String::new()
    } else {
        num
    };
    let pw = |k: u32| if k == 1 { String::new() } else { format!("^{{{k}}}") };
    if t.atan_pow > 0 {
        if !s.is_empty() {
            s.push(' ');
        }
        s.push_str(&format!("\\arctan{} u_x", pw(t.atan_pow)));
    }
    if t.log_pow > 0 {
        if t.atan_pow > 0 {
            s.push_str("\\,");
        } else if !s.is_empty() {
            s.push(' ');
        }
        s.push_str(&format!("\\log{}(1+u_x^2)", pw(t.log_pow)));
    }
    (neg, s)
}

pub fn real_latex(r: &RealDisplayForm) -> String {
    let pieces = r
        .terms
        .iter()
        .map(|t| {
            let (neg, body) = term_latex(t);
            if neg {
                format!("-{body}")
            } else {
                body
            }
        })
        .collect();
    join_signed(pieces)
}

pub fn coefficient_latex(c: &ClosedForm) -> Result<String, ExprError> {
    let (re, im) = split(c)?;
    let mut pieces = Vec::new();
    if !re.is_zero() || im.is_zero() {
        pieces.push(real_latex(&re));
    }
    if !im.is_zero() {
        pieces.push(format!("i\\left({}\\right)", real_latex(&im)));
    }
    Ok(join_signed(pieces))
}

pub fn symmetry_latex(phi: &ContactPolynomial) -> Result<String, ExprError> {
    let mut pieces = Vec::new();
    for (j, c) in phi.coefficients().collect::<Vec<_>>().into_iter().rev() {
        let ct = coefficient_latex(c)?;
        let q = q_factor(j, |j| format!("u_y^{{{j}}}"));
        pieces.push(match (q.is_empty(), ct.as_str()) {
            (true, _) => ct,
            (false, "1") => q,
            (false, "-1") => format!("-{q}"),
            (false, _) if single_term(&ct) => format!("{ct}\\,{q}"),
            (false, _) => format!("\\left({ct}\\right) {q}"),
        });
    }
    Ok(join_signed(pieces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_symmetry;
    use minsurf::exprcore::QPoly;
    use minsurf::hierarchy::{generate_symmetry, phi6, phi8, phi9, Branch, ChainSpec, Parity};

    #[test]
    fn tabulated_texts() {
        assert_eq!(symmetry_text(&phi6()).unwrap(), "u_x/(1+u_x^2)*u_y^2 + arctan(u_x)");
        assert_eq!(symmetry_text(&phi9()).unwrap(), "(u_x^2 - 1)/(1+u_x^2)^2*u_y^3 - 3/(1+u_x^2)*u_y");
        assert_eq!(
            symmetry_latex(&phi6()).unwrap(),
            "\\frac{u_x}{1+u_x^2}\\,u_y^{2} + \\arctan u_x"
        );
        assert_eq!(symmetry_text(&ContactPolynomial::zero()).unwrap(), "0");
    }

    #[test]
    fn text_round_trips() {
        let mut list = vec![phi6(), phi8(), phi9()];
        for branch in [Branch::Re, Branch::Im, Branch::Plus, Branch::Minus] {
            for parity in [Parity::Even, Parity::Odd] {
                list.push(generate_symmetry(ChainSpec::new(parity, 2, branch)).unwrap());
            }
        }
        list.push(ContactPolynomial::new(QPoly::from_closed_form(
            ClosedForm::arctan().mul(&ClosedForm::log_one_plus_p2()).scale(&G::new(rat(1, 3), rat(-2, 1))),
        )));
        for phi in list {
            let s = symmetry_text(&phi).unwrap();
            assert_eq!(&parse_symmetry(&s).unwrap(), phi.poly(), "{s}");
        }
    }
}
