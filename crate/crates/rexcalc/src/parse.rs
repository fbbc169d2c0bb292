//! Text input: polynomials, tensor elements and path specs.

use rexcalc_core::bsbimod::BsElement;
use rexcalc_core::poly::Polynomial;
use rexcalc_core::symgroup::Word;
use rexcalc_core::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected {found} at offset {offset} in `{input}`")]
    Unexpected { input: String, offset: usize, found: String },

    #[error("variable x{index} is out of range for rank {rank}")]
    Variable { index: u32, rank: u8 },

    #[error("bad number `{0}`")]
    Number(String),

    #[error("division by zero in `{0}`")]
    DivisionByZero(String),

    #[error("element has {got} slots, word {word} needs {expected}")]
    Slots { word: Word, expected: usize, got: usize },

    #[error(transparent)]
    Core(#[from] rexcalc_core::Error),
}

/// Parses expressions such as `x1^2 - 2*x1*x3 + 1/2` or `(x1 + x2)*x3`
/// over the variables `x1..x{rank}`.
pub fn parse_polynomial(input: &str, rank: u8) -> Result<Polynomial, ParseError> {
    let mut p = Parser { input, bytes: input.as_bytes(), pos: 0, rank };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.unexpected());
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
    rank: u8,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        let found = match self.input[self.pos..].chars().next() {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        };
        ParseError::Unexpected { input: self.input.to_string(), offset: self.pos, found }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let e = self.digits()?;
        let e: u32 = e.parse().map_err(|_| ParseError::Number(e.clone()))?;
        let mut out = Polynomial::one(self.rank);
        for _ in 0..e {
            out = &out * &base;
        }
        Ok(out)
    }

    fn digits(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        Ok(self.input[start..self.pos].to_string())
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let d = self.digits()?;
                let index: u32 = d.parse().map_err(|_| ParseError::Number(d.clone()))?;
                if index == 0 || index > u32::from(self.rank) {
                    return Err(ParseError::Variable { index, rank: self.rank });
                }
                Ok(Polynomial::var(self.rank, index as u8))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let mut value: Rational = num.parse().map_err(|_| ParseError::Number(num.clone()))?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.digits()?;
                    let d: Rational = den.parse().map_err(|_| ParseError::Number(den.clone()))?;
                    if d.is_zero() {
                        return Err(ParseError::DivisionByZero(self.input.to_string()));
                    }
                    value = &value / &d;
                }
                Ok(Polynomial::constant(self.rank, value))
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses `p0 | p1 | … | pk` into the tensor `p0 ⊗ p1 ⊗ … ⊗ pk` of `B_word`.
/// A lone `1` stands for the all-ones tensor.
pub fn parse_element(spec: &str, word: &Word, rank: u8) -> Result<BsElement, ParseError> {
    let parts: Vec<&str> = spec.split('|').collect();
    if parts.len() == 1 && parts[0].trim() == "1" {
        return Ok(BsElement::one_tensor(word.clone(), rank)?);
    }
    if parts.len() != word.len() + 1 {
        return Err(ParseError::Slots { word: word.clone(), expected: word.len() + 1, got: parts.len() });
    }
    let slots = parts.iter().map(|p| parse_polynomial(p, rank)).collect::<Result<Vec<_>, _>>()?;
    Ok(BsElement::from_tensor(word.clone(), rank, &slots)?)
}

/// Splits a path spec on commas, whitespace or arrows.
pub fn path_tokens(spec: &str) -> Vec<String> {
    spec.replace("->", ",")
        .replace('→', ",")
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}
