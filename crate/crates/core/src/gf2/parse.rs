//! Parser for the polynomial text grammar shared by all file formats and
//! CLI flags:
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := '0' | '1' | factor ('*' factor)*
//! factor := ident ('^' uint)?
//! ident  := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is ignored everywhere. The integral variant additionally
//! allows an optional signed integer coefficient in front of each term,
//! as in `3*h^2 + -2*u`.

use crate::error::{Error, Result};

use super::monomial::{Monomial, VarSet};
use super::poly::PolyGF2;

/// One parsed term: an integer coefficient and ident-power factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTerm {
    pub coeff: i64,
    pub factors: Vec<(String, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Uint(u64),
    Plus,
    Star,
    Caret,
    Minus,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            tokens.push(Token::Ident(chars[start..i].iter().collect()));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let value = text
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("integer out of range: {text}")))?;
            tokens.push(Token::Uint(value));
        } else {
            match c {
                '+' => tokens.push(Token::Plus),
                '*' => tokens.push(Token::Star),
                '^' => tokens.push(Token::Caret),
                '-' => tokens.push(Token::Minus),
                _ => {
                    return Err(Error::Parse(format!(
                        "unexpected character '{c}' at position {i}"
                    )))
                }
            }
            i += 1;
        }
    }
    Ok(tokens)
}

/// Parse a polynomial into raw terms. `allow_coeffs` permits signed integer
/// coefficients (the integral grammar); without it only the bare terms `0`
/// and `1` may be numeric.
pub fn parse_terms(input: &str, allow_coeffs: bool) -> Result<Vec<RawTerm>> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let mut pos = 0;
    loop {
        let (term, next) = parse_term(&tokens, pos, allow_coeffs)?;
        terms.push(term);
        pos = next;
        if pos == tokens.len() {
            break;
        }
        if tokens[pos] != Token::Plus {
            return Err(Error::Parse(format!(
                "expected '+' between terms, found {:?}",
                tokens[pos]
            )));
        }
        pos += 1;
    }
    Ok(terms)
}

fn parse_term(tokens: &[Token], mut pos: usize, allow_coeffs: bool) -> Result<(RawTerm, usize)> {
    let mut coeff: i64 = 1;
    let mut saw_number = false;

    let mut negative = false;
    if allow_coeffs && tokens.get(pos) == Some(&Token::Minus) {
        negative = true;
        pos += 1;
    }
    if let Some(Token::Uint(v)) = tokens.get(pos) {
        let v = i64::try_from(*v)
            .map_err(|_| Error::Parse(format!("coefficient out of range: {v}")))?;
        if !allow_coeffs && v > 1 {
            return Err(Error::Parse(format!(
                "coefficient {v} not allowed in a mod-2 polynomial"
            )));
        }
        coeff = if negative { -v } else { v };
        saw_number = true;
        pos += 1;
    } else if negative {
        return Err(Error::Parse("'-' must be followed by an integer".into()));
    }

    let mut factors = Vec::new();
    if saw_number {
        // numeric term, optionally followed by '*' factors
        if tokens.get(pos) == Some(&Token::Star) {
            pos += 1;
            let next = parse_factors(tokens, pos, &mut factors)?;
            pos = next;
        }
    } else {
        let next = parse_factors(tokens, pos, &mut factors)?;
        pos = next;
    }
    Ok((RawTerm { coeff, factors }, pos))
}

fn parse_factors(
    tokens: &[Token],
    mut pos: usize,
    factors: &mut Vec<(String, u32)>,
) -> Result<usize> {
    loop {
        let Some(Token::Ident(name)) = tokens.get(pos) else {
            return Err(Error::Parse(format!(
                "expected identifier, found {:?}",
                tokens.get(pos)
            )));
        };
        pos += 1;
        let mut exp = 1u32;
        if tokens.get(pos) == Some(&Token::Caret) {
            pos += 1;
            let Some(Token::Uint(e)) = tokens.get(pos) else {
                return Err(Error::Parse("expected integer exponent after '^'".into()));
            };
            exp = u32::try_from(*e)
                .map_err(|_| Error::Parse(format!("exponent out of range: {e}")))?;
            pos += 1;
        }
        factors.push((name.clone(), exp));
        if tokens.get(pos) == Some(&Token::Star) {
            pos += 1;
        } else {
            return Ok(pos);
        }
    }
}

/// Evaluate the mod-2 grammar in a free polynomial ring on `vars`.
pub fn parse_gf2_poly(input: &str, vars: &VarSet) -> Result<PolyGF2> {
    let terms = parse_terms(input, false)?;
    let mut monomials = Vec::new();
    for term in terms {
        if term.coeff == 0 {
            continue;
        }
        let mut exps = vec![0u16; vars.len()];
        for (name, exp) in &term.factors {
            let Some(i) = vars.index_of(name) else {
                return Err(Error::Parse(format!("unknown generator '{name}'")));
            };
            let e = u16::try_from(*exp)
                .map_err(|_| Error::Parse(format!("exponent too large: {exp}")))?;
            exps[i] = exps[i]
                .checked_add(e)
                .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
        }
        monomials.push(Monomial::from_exps(vars, exps));
    }
    Ok(PolyGF2::from_monomials(monomials))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> VarSet {
        VarSet::new(vec![("w1".into(), 1), ("w2".into(), 2)])
    }

    #[test]
    fn parses_paper_style_polynomials() {
        let vs = vars();
        let p = parse_gf2_poly("w1^5*w2 + w2^3", &vs).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.degree(), 7);
        let q = parse_gf2_poly("  w1 ^5 * w2+w2^3 ", &vs).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn one_and_zero() {
        let vs = vars();
        assert_eq!(parse_gf2_poly("1", &vs).unwrap(), PolyGF2::one(&vs));
        assert!(parse_gf2_poly("0", &vs).unwrap().is_zero());
        let p = parse_gf2_poly("1 + w1", &vs).unwrap();
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn duplicate_terms_cancel() {
        let vs = vars();
        assert!(parse_gf2_poly("w1 + w1", &vs).unwrap().is_zero());
        // repeated factor accumulates
        let p = parse_gf2_poly("w1*w1", &vs).unwrap();
        assert_eq!(p, parse_gf2_poly("w1^2", &vs).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        let vs = vars();
        assert!(parse_gf2_poly("", &vs).is_err());
        assert!(parse_gf2_poly("w1 +", &vs).is_err());
        assert!(parse_gf2_poly("w9", &vs).is_err());
        assert!(parse_gf2_poly("2*w1", &vs).is_err());
        assert!(parse_gf2_poly("w1^", &vs).is_err());
        assert!(parse_gf2_poly("w1 & w2", &vs).is_err());
    }

    #[test]
    fn integral_terms() {
        let terms = parse_terms("3*h^2 + -2*u", true).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].coeff, 3);
        assert_eq!(terms[0].factors, vec![("h".to_string(), 2)]);
        assert_eq!(terms[1].coeff, -2);
        assert_eq!(terms[1].factors, vec![("u".to_string(), 1)]);
        let z = parse_terms("0", true).unwrap();
        assert_eq!(z[0].coeff, 0);
        let c = parse_terms("4", true).unwrap();
        assert_eq!(c[0].coeff, 4);
        assert!(c[0].factors.is_empty());
    }
}
