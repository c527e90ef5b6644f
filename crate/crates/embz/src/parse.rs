//! The text grammar: scalars, algebra elements, registers, morphism scripts.
//!
//! ```text
//! element   := term ("+" term)*
//! term      := scalar | scalar "*" factor+ | factor+
//! factor    := letter "@" address
//! letter    := "I" | "X" | "Y" | "Z"
//! address   := party ":" register rest
//! rest      := ":" site (":" lane)?     for catalyst registers
//!            | (":" lane)?              for ancilla slots
//! party     := "A" | "B"
//! register  := "q" "[" nat ";" ratio ("," ratio)* "]"
//!            | "qx" "[" nat ";" scalar ("," scalar)* "]"
//!            | slot
//! slot      := "t" nat                  (one token, e.g. t0)
//! ratio     := "-"? nat ("/" nat)?
//! site      := "-"? nat
//! scalar    := sterm (("+" | "-") sterm)*
//! sterm     := sfactor (("*" | "/") sfactor)*
//! sfactor   := "-" sfactor | imaginary | rational | "sqrt" "(" ratio ")"
//!            | "(" scalar ")"
//! imaginary := nat "i" | nat "/" nat "i"
//! morphism  := "" | step (";" step)*
//! step      := "embezzle" "(" register "," slot ")"
//!            | "shift" "(" register "," party "," offset ")"
//!            | "swap" "(" register "," party "," slot ")" ("@" site)?
//! offset    := ("+" | "-") nat
//! ```
//!
//! `Y` is accepted on input and rewritten as `i·XZ`, so parsed elements are
//! already in canonical form; canonical output never contains `Y`. The
//! `"@" site` suffix on `swap` is the diagnostic form for non-canonical
//! swap sites (negative controls); canonical swaps act at site 0 and carry
//! no suffix.
//!
//! Every public type with a canonical `Display` round-trips through its
//! parser, and [`ParseError`] carries the byte span, line/column, and the
//! token set that would have been accepted.

use num_bigint::BigInt;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::morphism::{Morphism, Step};
use crate::pauli::{AlgebraElement, PauliLetter, PauliWord, Party, QubitAddress, Sign};
use crate::registry::{RegisterKey, SchmidtVector};
use crate::scalar::{sqrt_of_rational, GaussianRational, RadicalScalar, Rational};

/// A half-open byte range within the parsed text, with 1-based line/column
/// of its start.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub column: u32,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

/// A parse failure: where, what went wrong, and what was expected there.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("parse error at {span}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    /// Tokens that would have been accepted at `span`, when known.
    pub expected: Vec<String>,
}

// --- tokens ----------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    /// An integer immediately followed by `i`, e.g. `1i`.
    ImagInt(BigInt),
    Ident(String),
    Sym(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::ImagInt(n) => format!("imaginary {n}i"),
            Tok::Ident(s) => format!("identifier {s}"),
            Tok::Sym(c) => format!("'{c}'"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

const SYMBOLS: &str = "+-*/()[];,:@";

fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let digits = &src[start..i];
            let value: BigInt = digits.parse().expect("digit run");
            // a trailing bare `i` marks an imaginary literal
            let imag = i < bytes.len()
                && bytes[i] == b'i'
                && !(i + 1 < bytes.len() && (bytes[i + 1] as char).is_ascii_alphanumeric());
            if imag {
                i += 1;
                toks.push(Token {
                    tok: Tok::ImagInt(value),
                    start,
                    end: i,
                });
            } else {
                toks.push(Token {
                    tok: Tok::Int(value),
                    start,
                    end: i,
                });
            }
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                i += 1;
            }
            toks.push(Token {
                tok: Tok::Ident(src[start..i].to_string()),
                start,
                end: i,
            });
        } else if SYMBOLS.contains(c) {
            i += 1;
            toks.push(Token {
                tok: Tok::Sym(c),
                start,
                end: i,
            });
        } else {
            return Err(error_at(src, start, start + c.len_utf8(),
                format!("unexpected character '{c}'"), vec![]));
        }
    }
    Ok(toks)
}

fn span_at(src: &str, start: usize, end: usize) -> SourceSpan {
    let mut line = 1;
    let mut column = 1;
    for b in src[..start.min(src.len())].bytes() {
        if b == b'\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    SourceSpan {
        start,
        end,
        line,
        column,
    }
}

fn error_at(
    src: &str,
    start: usize,
    end: usize,
    message: String,
    expected: Vec<String>,
) -> ParseError {
    ParseError {
        span: span_at(src, start, end),
        message,
        expected,
    }
}

// --- parser ----------------------------------------------------------------

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        Ok(Parser {
            src,
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|t| &t.tok)
    }

    fn peek_sym(&self) -> Option<char> {
        match self.peek() {
            Some(Tok::Sym(c)) => Some(*c),
            _ => None,
        }
    }

    fn bump(&mut self) -> &Token {
        let t = &self.toks[self.pos];
        self.pos += 1;
        t
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(t) => (t.start, t.end),
            None => (self.src.len(), self.src.len()),
        }
    }

    fn fail<T>(&self, message: impl Into<String>, expected: &[&str]) -> Result<T, ParseError> {
        let (start, end) = self.here();
        let found = match self.peek() {
            Some(t) => format!("{} (found {})", message.into(), t.describe()),
            None => format!("{} (found end of input)", message.into()),
        };
        Err(error_at(
            self.src,
            start,
            end,
            found,
            expected.iter().map(|s| s.to_string()).collect(),
        ))
    }

    /// Map a domain error onto the span of the construct that caused it.
    fn domain<T>(
        &self,
        start: usize,
        result: Result<T, crate::Error>,
    ) -> Result<T, ParseError> {
        result.map_err(|e| {
            let end = self
                .toks
                .get(self.pos.saturating_sub(1))
                .map(|t| t.end)
                .unwrap_or(self.src.len());
            error_at(self.src, start, end, e.to_string(), vec![])
        })
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek_sym() == Some(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(format!("expected '{c}'"), &[&c.to_string()])
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            self.fail("expected end of input", &["end of input"])
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let Tok::Int(n) = &self.bump().tok else { unreachable!() };
                Ok(n.clone())
            }
            _ => self.fail("expected an integer", &["integer"]),
        }
    }

    fn nat_usize(&mut self, what: &str) -> Result<usize, ParseError> {
        use num_traits::ToPrimitive;
        let (start, end) = self.here();
        let n = self.int()?;
        n.to_usize().ok_or_else(|| {
            error_at(self.src, start, end, format!("{what} out of range"), vec![])
        })
    }

    // --- scalar grammar ---

    fn scalar(&mut self) -> Result<RadicalScalar, ParseError> {
        let mut acc = self.sterm()?;
        loop {
            match self.peek_sym() {
                Some('+') => {
                    self.bump();
                    acc = acc + self.sterm()?;
                }
                Some('-') => {
                    self.bump();
                    acc = acc - self.sterm()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn sterm(&mut self) -> Result<RadicalScalar, ParseError> {
        let mut acc = self.sfactor()?;
        loop {
            match self.peek_sym() {
                Some('*') => {
                    self.bump();
                    acc = acc * self.sfactor()?;
                }
                Some('/') => {
                    let (start, _) = self.here();
                    self.bump();
                    let rhs = self.sfactor()?;
                    acc = acc * self.domain(start, rhs.recip())?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn sfactor(&mut self) -> Result<RadicalScalar, ParseError> {
        match self.peek() {
            Some(Tok::Sym('-')) => {
                self.bump();
                Ok(-self.sfactor()?)
            }
            Some(Tok::Sym('(')) => {
                self.bump();
                let inner = self.scalar()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Some(Tok::ImagInt(_)) => {
                let Tok::ImagInt(n) = &self.bump().tok else { unreachable!() };
                Ok(RadicalScalar::from_gaussian(GaussianRational::new(
                    Rational::from_integer(0.into()),
                    Rational::from_integer(n.clone()),
                )))
            }
            Some(Tok::Int(_)) => {
                // `n/di` is the rational-imaginary literal (n/d)·i, the form
                // the display writes; `n/(di)` spells division by `di`.
                if matches!(self.peek_at(1), Some(Tok::Sym('/')))
                    && matches!(self.peek_at(2), Some(Tok::ImagInt(_)))
                {
                    let numer = self.int()?;
                    let (start, _) = self.here();
                    self.bump();
                    let Tok::ImagInt(denom) = self.bump().tok.clone() else {
                        unreachable!()
                    };
                    if denom == BigInt::from(0) {
                        let (_, end) = self.here();
                        return Err(error_at(
                            self.src, start, end,
                            "division by zero".into(), vec![],
                        ));
                    }
                    return Ok(RadicalScalar::from_gaussian(GaussianRational::new(
                        Rational::from_integer(0.into()),
                        Rational::new(numer, denom),
                    )));
                }
                Ok(RadicalScalar::from_rational(self.rational()?))
            }
            Some(Tok::Ident(name)) if name == "sqrt" => {
                self.bump();
                self.expect_sym('(')?;
                let (start, _) = self.here();
                let arg = self.signed_rational()?;
                let root = self.domain(start, sqrt_of_rational(&arg))?;
                self.expect_sym(')')?;
                Ok(root)
            }
            _ => self.fail(
                "expected a scalar",
                &["integer", "imaginary", "sqrt", "'('", "'-'"],
            ),
        }
    }

    /// `nat ("/" nat)?` — the `/` is claimed only when an integer follows,
    /// so general quotients like `1/(1+1i)` stay with the `sterm` rule.
    fn rational(&mut self) -> Result<Rational, ParseError> {
        let numer = self.int()?;
        if self.peek_sym() == Some('/') && matches!(self.peek_at(1), Some(Tok::Int(_))) {
            let (start, _) = self.here();
            self.bump();
            let denom = self.int()?;
            if denom == BigInt::from(0) {
                let (_, end) = self.here();
                return Err(error_at(self.src, start, end, "division by zero".into(), vec![]));
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    /// `"-"? nat ("/" nat)?`
    fn signed_rational(&mut self) -> Result<Rational, ParseError> {
        if self.peek_sym() == Some('-') {
            self.bump();
            Ok(-self.rational()?)
        } else {
            self.rational()
        }
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        use num_traits::ToPrimitive;
        let negative = if self.peek_sym() == Some('-') {
            self.bump();
            true
        } else if self.peek_sym() == Some('+') {
            self.bump();
            false
        } else {
            false
        };
        let (start, end) = self.here();
        let n = self.int()?;
        let n = n
            .to_i64()
            .ok_or_else(|| error_at(self.src, start, end, "integer out of range".into(), vec![]))?;
        Ok(if negative { -n } else { n })
    }

    // --- element grammar ---

    /// Is the token at `offset` the start of a factor (`letter '@'`)?
    fn factor_starts_at(&self, offset: usize) -> bool {
        matches!(
            (self.peek_at(offset), self.peek_at(offset + 1)),
            (Some(Tok::Ident(name)), Some(Tok::Sym('@')))
                if matches!(name.as_str(), "I" | "X" | "Y" | "Z")
        )
    }

    fn element(&mut self) -> Result<AlgebraElement, ParseError> {
        let mut elem = AlgebraElement::zero();
        let (word, coeff) = self.term()?;
        elem.add_term(word, coeff);
        while self.peek_sym() == Some('+') {
            self.bump();
            let (word, coeff) = self.term()?;
            elem.add_term(word, coeff);
        }
        Ok(elem)
    }

    fn term(&mut self) -> Result<(PauliWord, RadicalScalar), ParseError> {
        let (mut coeff, expect_factors) = if self.factor_starts_at(0) {
            (RadicalScalar::one(), true)
        } else {
            self.coeff_prefix()?
        };
        let mut word = PauliWord::identity();
        let mut seen_factor = false;
        while self.factor_starts_at(0) {
            seen_factor = true;
            let (addr, letter, phase_i) = self.factor()?;
            if phase_i {
                coeff = coeff * RadicalScalar::i();
            }
            let product = &word * &PauliWord::single(addr, letter);
            if product.sign == Sign::Minus {
                coeff = -coeff;
            }
            word = product.word;
        }
        if expect_factors && !seen_factor {
            return self.fail("expected a factor", &["I@", "X@", "Y@", "Z@"]);
        }
        Ok((word, coeff))
    }

    /// The scalar prefix of a term. Consumes a trailing `*` when a factor
    /// follows it, and reports whether it did.
    fn coeff_prefix(&mut self) -> Result<(RadicalScalar, bool), ParseError> {
        let mut acc = self.sfactor()?;
        loop {
            match self.peek_sym() {
                Some('*') if self.factor_starts_at(1) => {
                    self.bump();
                    return Ok((acc, true));
                }
                Some('*') => {
                    self.bump();
                    acc = acc * self.sfactor()?;
                }
                Some('/') => {
                    let (start, _) = self.here();
                    self.bump();
                    let rhs = self.sfactor()?;
                    acc = acc * self.domain(start, rhs.recip())?;
                }
                _ => return Ok((acc, false)),
            }
        }
    }

    /// One `letter '@' address` factor; `Y` reports an extra phase `i` and
    /// the letter `XZ`.
    fn factor(&mut self) -> Result<(QubitAddress, PauliLetter, bool), ParseError> {
        let Some(Tok::Ident(name)) = self.peek() else {
            return self.fail("expected a Pauli letter", &["I", "X", "Y", "Z"]);
        };
        let (letter, phase_i) = match name.as_str() {
            "I" => (PauliLetter::I, false),
            "X" => (PauliLetter::X, false),
            "Z" => (PauliLetter::Z, false),
            "Y" => (PauliLetter::XZ, true),
            _ => return self.fail("expected a Pauli letter", &["I", "X", "Y", "Z"]),
        };
        self.bump();
        self.expect_sym('@')?;
        let addr = self.address()?;
        Ok((addr, letter, phase_i))
    }

    fn party(&mut self) -> Result<Party, ParseError> {
        match self.peek() {
            Some(Tok::Ident(name)) if name == "A" => {
                self.bump();
                Ok(Party::A)
            }
            Some(Tok::Ident(name)) if name == "B" => {
                self.bump();
                Ok(Party::B)
            }
            _ => self.fail("expected a party", &["A", "B"]),
        }
    }

    fn address(&mut self) -> Result<QubitAddress, ParseError> {
        let party = self.party()?;
        self.expect_sym(':')?;
        let register = self.register()?;
        match register {
            RegisterKey::Catalyst(vector) => {
                self.expect_sym(':')?;
                let site = self.signed_int()?;
                let (lane_start, lane) = self.optional_lane()?;
                self.domain(
                    lane_start,
                    QubitAddress::catalyst(&vector, party, site, lane),
                )
            }
            RegisterKey::Ancilla { slot } => {
                let (_, lane) = self.optional_lane()?;
                Ok(QubitAddress::ancilla(slot, party, lane))
            }
        }
    }

    /// `(":" lane)?` — returns the lane (default 0) and a span start for
    /// error attribution.
    fn optional_lane(&mut self) -> Result<(usize, u32), ParseError> {
        let (start, _) = self.here();
        if self.peek_sym() == Some(':') && matches!(self.peek_at(1), Some(Tok::Int(_))) {
            self.bump();
            let lane = self.nat_usize("lane")? as u32;
            Ok((start, lane))
        } else {
            Ok((start, 0))
        }
    }

    fn register(&mut self) -> Result<RegisterKey, ParseError> {
        let Some(Tok::Ident(name)) = self.peek() else {
            return self.fail("expected a register", &["q[", "qx[", "tN"]);
        };
        let name = name.clone();
        match name.as_str() {
            "q" => {
                let (start, _) = self.here();
                self.bump();
                self.expect_sym('[')?;
                let width = self.nat_usize("width")? as u32;
                self.expect_sym(';')?;
                let mut ratios = vec![self.signed_rational()?];
                while self.peek_sym() == Some(',') {
                    self.bump();
                    ratios.push(self.signed_rational()?);
                }
                self.expect_sym(']')?;
                let vector = self.domain(start, SchmidtVector::from_ratios(width, &ratios))?;
                Ok(RegisterKey::catalyst(vector))
            }
            "qx" => {
                let (start, _) = self.here();
                self.bump();
                self.expect_sym('[')?;
                let width = self.nat_usize("width")? as u32;
                self.expect_sym(';')?;
                let mut amps = vec![self.scalar()?];
                while self.peek_sym() == Some(',') {
                    self.bump();
                    amps.push(self.scalar()?);
                }
                self.expect_sym(']')?;
                let vector = self.domain(start, SchmidtVector::from_amplitudes(width, &amps))?;
                Ok(RegisterKey::catalyst(vector))
            }
            _ => {
                if let Some(digits) = name.strip_prefix('t') {
                    if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                        if let Ok(slot) = digits.parse::<u32>() {
                            self.bump();
                            return Ok(RegisterKey::ancilla(slot));
                        }
                    }
                }
                self.fail("expected a register", &["q[", "qx[", "tN"])
            }
        }
    }

    /// Slot reference `tN` outside an address, as in morphism scripts.
    fn slot_ref(&mut self) -> Result<u32, ParseError> {
        match self.register()? {
            RegisterKey::Ancilla { slot } => Ok(slot),
            RegisterKey::Catalyst(_) => self.fail("expected an ancilla slot", &["tN"]),
        }
    }

    /// A catalyst register reference, as in morphism scripts.
    fn catalyst_ref(&mut self) -> Result<Arc<SchmidtVector>, ParseError> {
        match self.register()? {
            RegisterKey::Catalyst(v) => Ok(v),
            RegisterKey::Ancilla { .. } => {
                self.fail("expected a catalyst register", &["q[", "qx["])
            }
        }
    }

    // --- morphism scripts ---

    fn morphism(&mut self) -> Result<Morphism, ParseError> {
        let mut steps = Vec::new();
        if self.pos == self.toks.len() {
            return Ok(Morphism::identity());
        }
        loop {
            self.step(&mut steps)?;
            if self.peek_sym() == Some(';') {
                self.bump();
            } else {
                return Ok(Morphism::from_steps(steps));
            }
        }
    }

    fn step(&mut self, steps: &mut Vec<Step>) -> Result<(), ParseError> {
        let Some(Tok::Ident(name)) = self.peek() else {
            return self.fail("expected a step", &["embezzle", "shift", "swap"]);
        };
        let name = name.clone();
        self.bump();
        self.expect_sym('(')?;
        match name.as_str() {
            "embezzle" => {
                let register = self.catalyst_ref()?;
                self.expect_sym(',')?;
                let slot = self.slot_ref()?;
                self.expect_sym(')')?;
                steps.extend(Morphism::embezzle(register, slot).steps().to_vec());
            }
            "shift" => {
                let register = self.catalyst_ref()?;
                self.expect_sym(',')?;
                let party = self.party()?;
                self.expect_sym(',')?;
                let (start, end) = self.here();
                let offset = self.signed_int()?;
                if offset != 1 && offset != -1 {
                    return Err(error_at(
                        self.src,
                        start,
                        end,
                        "shift offset must be +1 or -1".into(),
                        vec!["+1".into(), "-1".into()],
                    ));
                }
                self.expect_sym(')')?;
                steps.push(Step::Shift {
                    register,
                    party,
                    offset,
                });
            }
            "swap" => {
                let register = self.catalyst_ref()?;
                self.expect_sym(',')?;
                let party = self.party()?;
                self.expect_sym(',')?;
                let slot = self.slot_ref()?;
                self.expect_sym(')')?;
                // diagnostic suffix for non-canonical swap sites
                let site = if self.peek_sym() == Some('@') {
                    self.bump();
                    self.signed_int()?
                } else {
                    0
                };
                steps.push(Step::Swap {
                    register,
                    party,
                    slot,
                    site,
                });
            }
            _ => {
                return self.fail("expected a step", &["embezzle", "shift", "swap"]);
            }
        }
        Ok(())
    }
}

// --- public entry points ----------------------------------------------------

/// Parse a scalar in the `scalar` production.
pub fn parse_scalar(text: &str) -> Result<RadicalScalar, ParseError> {
    let mut p = Parser::new(text)?;
    let value = p.scalar()?;
    p.expect_end()?;
    Ok(value)
}

/// Parse an algebra element in the `element` production.
pub fn parse_element(text: &str) -> Result<AlgebraElement, ParseError> {
    let mut p = Parser::new(text)?;
    let value = p.element()?;
    p.expect_end()?;
    Ok(value)
}

/// Parse a bare word: an element with exactly one term and coefficient 1.
pub fn parse_word(text: &str) -> Result<PauliWord, ParseError> {
    let elem = parse_element(text)?;
    let mut terms = elem.terms();
    match (terms.next(), terms.next()) {
        (Some((word, coeff)), None) if coeff.is_one() => Ok(word.clone()),
        _ => Err(error_at(
            text,
            0,
            text.len(),
            "expected a bare word (single term, coefficient 1)".into(),
            vec![],
        )),
    }
}

/// Parse a register key (`q[...]`, `qx[...]`, or `tN`).
pub fn parse_register(text: &str) -> Result<RegisterKey, ParseError> {
    let mut p = Parser::new(text)?;
    let value = p.register()?;
    p.expect_end()?;
    Ok(value)
}

/// Parse a morphism script; the empty script is the identity.
pub fn parse_morphism(text: &str) -> Result<Morphism, ParseError> {
    let mut p = Parser::new(text)?;
    let value = p.morphism()?;
    p.expect_end()?;
    Ok(value)
}

impl FromStr for RadicalScalar {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

impl FromStr for AlgebraElement {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_element(s)
    }
}

impl FromStr for PauliWord {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

impl FromStr for RegisterKey {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_register(s)
    }
}

impl FromStr for Morphism {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_morphism(s)
    }
}
