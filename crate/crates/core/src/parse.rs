//! Parsers for the textual forms used in scenario files: polynomials in
//! sparse `c*t^k` notation, rational functions, tower elements, Laurent
//! equations over x1..xN, and elliptic-block equations over X and Y.

use crate::error::{Error, Result};
use crate::field::poly::Poly;
use crate::field::ratfunc::RatFunc;
use crate::field::tower::{TowerElem, TowerField};
use crate::variety::{EcPoly, LaurentPoly};
use std::sync::Arc;

fn parse_err(what: &str, input: &str) -> Error {
    Error::Parse(format!("cannot parse {what}: {input:?}"))
}

/// Splits a sum into signed chunks at top-level + and - (never inside
/// parentheses or exponents).
fn split_signed_terms(input: &str) -> Result<Vec<(i64, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut sign = 1i64;
    let mut current = String::new();
    let mut prev_was_operand = false;
    for ch in input.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
                prev_was_operand = false;
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(parse_err("expression", input));
                }
                current.push(ch);
                prev_was_operand = true;
            }
            '+' | '-' if depth == 0 && prev_was_operand => {
                out.push((sign, current.trim().to_string()));
                sign = if ch == '-' { -1 } else { 1 };
                current = String::new();
                prev_was_operand = false;
            }
            '-' if depth == 0 && current.trim().is_empty() && !prev_was_operand => {
                sign = -sign;
                prev_was_operand = false;
            }
            '^' => {
                current.push(ch);
                // An exponent may start with '-'; mark so we do not split.
                prev_was_operand = false;
            }
            c if c.is_whitespace() => current.push(c),
            _ => {
                current.push(ch);
                prev_was_operand = true;
            }
        }
    }
    if depth != 0 {
        return Err(parse_err("expression", input));
    }
    if !current.trim().is_empty() {
        out.push((sign, current.trim().to_string()));
    }
    Ok(out)
}

/// One multiplicative atom: integer, or var^exp.
enum Atom {
    Int(i64),
    Var(String, i64),
}

fn parse_atom(input: &str) -> Result<Atom> {
    let s = input.trim();
    if s.is_empty() {
        return Err(parse_err("atom", input));
    }
    if let Ok(v) = s.parse::<i64>() {
        return Ok(Atom::Int(v));
    }
    let (var, exp) = match s.split_once('^') {
        None => (s, 1i64),
        Some((v, e)) => (
            v.trim(),
            e.trim()
                .parse::<i64>()
                .map_err(|_| parse_err("exponent", input))?,
        ),
    };
    if var.is_empty() || !var.chars().next().unwrap().is_alphabetic() {
        return Err(parse_err("variable", input));
    }
    Ok(Atom::Var(var.to_string(), exp))
}

fn split_factors(term: &str) -> Vec<&str> {
    term.split('*')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

/// Polynomial over F_p in the variable t, e.g. "t^3 + 2*t + 4".
pub fn parse_poly(input: &str, p: u64) -> Result<Poly> {
    let s = input.trim();
    if s == "0" {
        return Ok(Poly::zero(p));
    }
    let mut acc = Poly::zero(p);
    for (sign, term) in split_signed_terms(s)? {
        let mut coeff = sign;
        let mut exp = 0u128;
        for factor in split_factors(&term) {
            match parse_atom(factor)? {
                Atom::Int(v) => {
                    coeff = coeff
                        .checked_mul(v)
                        .ok_or_else(|| parse_err("coefficient", input))?;
                }
                Atom::Var(name, e) => {
                    if name != "t" {
                        return Err(parse_err("polynomial in t", input));
                    }
                    if e < 0 {
                        return Err(parse_err("nonnegative exponent", input));
                    }
                    exp += e as u128;
                }
            }
        }
        acc = acc.add(&Poly::monomial(coeff, exp, p));
    }
    Ok(acc)
}

/// Strips parentheses that wrap the entire string, repeatedly.
fn strip_outer_parens(input: &str) -> &str {
    let mut s = input.trim();
    'outer: loop {
        if !(s.starts_with('(') && s.ends_with(')')) {
            return s;
        }
        let inner = &s[1..s.len() - 1];
        let mut depth = 0i32;
        for ch in inner.chars() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth < 0 {
                        // The leading '(' closes before the end: not a wrap.
                        return s;
                    }
                }
                _ => {}
            }
        }
        if depth != 0 {
            return s;
        }
        s = inner.trim();
        continue 'outer;
    }
}

/// Rational function "num", "num/den" or "(num)/(den)".
pub fn parse_ratfunc(input: &str, p: u64) -> Result<RatFunc> {
    let s = strip_outer_parens(input);
    // Find a top-level '/'.
    let mut depth = 0;
    let mut slash = None;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                if slash.is_some() {
                    return Err(parse_err("rational function", input));
                }
                slash = Some(i);
            }
            _ => {}
        }
    }
    match slash {
        None => Ok(RatFunc::from_poly(parse_poly(s, p)?)),
        Some(i) => {
            let num = parse_poly(strip_outer_parens(&s[..i]), p)?;
            let den = parse_poly(strip_outer_parens(&s[i + 1..]), p)?;
            RatFunc::new(num, den)
        }
    }
}

/// Tower element "a", "(b)*s", or "a + (b)*s" with a, b rational functions.
pub fn parse_tower_elem(input: &str, field: &Arc<TowerField>) -> Result<TowerElem> {
    let p = field.prime();
    let s = input.trim();
    // Split at top level on the *last* "+" or "-" that is followed by an
    // s-part; simpler: split signed chunks and classify each.
    let mut rat = RatFunc::zero(p);
    let mut s_part = RatFunc::zero(p);
    for (sign, term) in split_signed_terms(s)? {
        let t = term.trim();
        if t == "s" {
            let c = RatFunc::constant(sign, p);
            s_part = s_part.add(&c);
        } else if let Some(prefix) = t.strip_suffix("*s") {
            let mut r = parse_ratfunc(prefix, p)?;
            if sign < 0 {
                r = r.neg();
            }
            s_part = s_part.add(&r);
        } else {
            let mut r = parse_ratfunc(t, p)?;
            if sign < 0 {
                r = r.neg();
            }
            rat = rat.add(&r);
        }
    }
    Ok(TowerElem::new(rat, s_part, field.clone()))
}

/// Laurent polynomial over x1..xN, e.g. "x2 - x1 - 1" or "3*x1^2*x2^-1 + 1".
pub fn parse_laurent(input: &str, n: usize, p: u64) -> Result<LaurentPoly> {
    let mut raw_terms = Vec::new();
    for (sign, term) in split_signed_terms(input.trim())? {
        let mut coeff = sign;
        let mut exps = vec![0i64; n];
        for factor in split_factors(&term) {
            match parse_atom(factor)? {
                Atom::Int(v) => {
                    coeff = coeff
                        .checked_mul(v)
                        .ok_or_else(|| parse_err("coefficient", input))?;
                }
                Atom::Var(name, e) => {
                    let idx = name
                        .strip_prefix('x')
                        .and_then(|d| d.parse::<usize>().ok())
                        .ok_or_else(|| parse_err("torus variable x<i>", input))?;
                    if idx == 0 || idx > n {
                        return Err(Error::Parse(format!(
                            "variable x{idx} out of range 1..={n}"
                        )));
                    }
                    exps[idx - 1] += e;
                }
            }
        }
        raw_terms.push((exps, coeff));
    }
    LaurentPoly::new(n, p, raw_terms)
}

/// Elliptic-block equation over X and Y with t-polynomial coefficients,
/// e.g. "Y^2 - X^3 - 1" or "X - t".
pub fn parse_ec_poly(input: &str, field: &Arc<TowerField>) -> Result<EcPoly> {
    let p = field.prime();
    let mut terms: Vec<(u32, u32, TowerElem)> = Vec::new();
    for (sign, term) in split_signed_terms(input.trim())? {
        let mut coeff = Poly::constant(sign, p);
        let mut dx = 0u32;
        let mut dy = 0u32;
        for factor in split_factors(&term) {
            match parse_atom(factor)? {
                Atom::Int(v) => coeff = coeff.scale(v),
                Atom::Var(name, e) => {
                    if e < 0 {
                        return Err(parse_err("nonnegative exponent", input));
                    }
                    match name.as_str() {
                        "X" => dx += e as u32,
                        "Y" => dy += e as u32,
                        "t" => coeff = coeff.mul(&Poly::monomial(1, 1, p).pow(e as u64)),
                        _ => return Err(parse_err("elliptic variable X, Y or t", input)),
                    }
                }
            }
        }
        let c = TowerElem::from_poly(coeff, field.clone());
        match terms.iter_mut().find(|(a, b, _)| (*a, *b) == (dx, dy)) {
            Some((_, _, existing)) => *existing = existing.add(&c),
            None => terms.push((dx, dy, c)),
        }
    }
    terms.retain(|(_, _, c)| !c.is_zero());
    Ok(EcPoly { terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_round_trip() {
        for s in ["t^3 + 2*t + 4", "0", "1", "4*t^7", "t"] {
            let p = parse_poly(s, 5).unwrap();
            assert_eq!(p.to_string(), s, "input {s}");
        }
        // Non-canonical inputs normalize.
        assert_eq!(parse_poly("t + t", 5).unwrap().to_string(), "2*t");
        assert_eq!(parse_poly("-t + 1", 5).unwrap().to_string(), "4*t + 1");
        assert_eq!(parse_poly("6*t", 5).unwrap().to_string(), "t");
    }

    #[test]
    fn ratfunc_round_trip() {
        for s in ["t^2 + 1", "(t + 1)/(t^2 + t + 2)", "(4)/(t)"] {
            let r = parse_ratfunc(s, 5).unwrap();
            let back = parse_ratfunc(&r.to_string(), 5).unwrap();
            assert_eq!(r, back, "input {s}");
        }
        // Reduction on parse: (t^2-1)/(t+1) = t-1 = t+4.
        let r = parse_ratfunc("(t^2 - 1)/(t + 1)", 5).unwrap();
        assert_eq!(r.to_string(), "t + 4");
    }

    #[test]
    fn tower_elem_round_trip() {
        let field = TowerField::new(Poly::from_dense(&[1, 0, 0, 1], 5)).unwrap();
        for s in ["t", "s", "t + (1)*s", "(t + 1)/(t) + ((2*t)/(t^3 + 4))*s"] {
            let e = parse_tower_elem(s, &field).unwrap();
            let back = parse_tower_elem(&e.to_string(), &field).unwrap();
            assert_eq!(e, back, "input {s}");
        }
        let minus_s = parse_tower_elem("-s", &field).unwrap();
        assert_eq!(minus_s, TowerElem::s(field.clone()).neg());
        let two_s = parse_tower_elem("2*s", &field).unwrap();
        assert_eq!(two_s, TowerElem::s(field.clone()).add(&TowerElem::s(field)));
    }

    #[test]
    fn laurent_parsing() {
        let eq = parse_laurent("x2 - x1 - 1", 2, 5).unwrap();
        assert_eq!(eq.terms().len(), 3);
        let inv = parse_laurent("x1^-1*x2 - 1", 2, 5).unwrap();
        assert_eq!(inv.terms().len(), 2);
        assert!(parse_laurent("x3 - 1", 2, 5).is_err());
        assert!(parse_laurent("y - 1", 2, 5).is_err());
    }

    #[test]
    fn ec_poly_parsing() {
        let field = TowerField::new(Poly::from_dense(&[1, 0, 0, 1], 5)).unwrap();
        let eq = parse_ec_poly("Y^2 - X^3 - 1", &field).unwrap();
        // The generic point satisfies its own curve equation.
        let x = TowerElem::t(field.clone());
        let y = TowerElem::s(field.clone());
        assert!(eq.vanishes_at(&x, &y));
        let pin = parse_ec_poly("X - t", &field).unwrap();
        assert!(pin.vanishes_at(&x, &y));
        let off = parse_ec_poly("X - t - 1", &field).unwrap();
        assert!(!off.vanishes_at(&x, &y));
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(parse_poly("t^", 5).is_err());
        assert!(parse_poly("q + 1", 5).is_err());
        assert!(parse_ratfunc("1/0", 5).is_err());
        assert!(parse_ratfunc("(t", 5).is_err());
    }
}
