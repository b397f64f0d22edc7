//! The CLI expression grammar for catalog models:
//!
//! ```text
//! expr := 'sphere' '(' uint ')'
//!       | 'cp2'
//!       | 'grassmann' '(' uint ',' uint ')'
//!       | 'product' '(' expr ',' expr ')'
//!       | 'connsum' '(' expr ',' expr ')'
//! ```

use crate::error::{Error, Result};
use crate::ring::model::ManifoldModel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogExpr {
    Sphere(u32),
    Cp2,
    Grassmann(u32, u32),
    Product(Box<CatalogExpr>, Box<CatalogExpr>),
    Connsum(Box<CatalogExpr>, Box<CatalogExpr>),
}

impl CatalogExpr {
    /// Manifold dimension the expression will produce.
    pub fn dimension(&self) -> u32 {
        match self {
            CatalogExpr::Sphere(l) => *l,
            CatalogExpr::Cp2 => 4,
            CatalogExpr::Grassmann(k, n) => k * n,
            CatalogExpr::Product(a, b) => a.dimension() + b.dimension(),
            CatalogExpr::Connsum(a, _) => a.dimension(),
        }
    }

    pub fn build(&self) -> Result<ManifoldModel> {
        match self {
            CatalogExpr::Sphere(l) => super::sphere(*l),
            CatalogExpr::Cp2 => super::cp2(),
            CatalogExpr::Grassmann(k, n) => super::grassmann(*k, *n),
            CatalogExpr::Product(a, b) => super::product(&a.build()?, &b.build()?),
            CatalogExpr::Connsum(a, b) => super::connsum(&a.build()?, &b.build()?),
        }
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            chars: input.chars().collect(),
            pos: 0,
            input,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected '{c}' at position {} in '{}'",
                self.pos, self.input
            )))
        }
    }

    fn word(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!(
                "expected a constructor name at position {start} in '{}'",
                self.input
            )));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn uint(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!(
                "expected an integer at position {start} in '{}'",
                self.input
            )));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| Error::Parse(format!("integer out of range: {text}")))
    }

    fn expr(&mut self) -> Result<CatalogExpr> {
        let name = self.word()?;
        match name.as_str() {
            "sphere" => {
                self.expect('(')?;
                let l = self.uint()?;
                self.expect(')')?;
                Ok(CatalogExpr::Sphere(l))
            }
            "cp2" => Ok(CatalogExpr::Cp2),
            "grassmann" => {
                self.expect('(')?;
                let k = self.uint()?;
                self.expect(',')?;
                let n = self.uint()?;
                self.expect(')')?;
                Ok(CatalogExpr::Grassmann(k, n))
            }
            "product" | "connsum" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                if name == "product" {
                    Ok(CatalogExpr::Product(Box::new(a), Box::new(b)))
                } else {
                    Ok(CatalogExpr::Connsum(Box::new(a), Box::new(b)))
                }
            }
            other => Err(Error::Parse(format!("unknown constructor '{other}'"))),
        }
    }
}

pub fn parse_expr(input: &str) -> Result<CatalogExpr> {
    let mut p = Parser::new(input);
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!(
            "trailing input at position {} in '{}'",
            p.pos, input
        )));
    }
    Ok(e)
}
