//! Parser and printer for the `.opd` presentation language.
//!
//! ```text
//! presentation := "operad" NAME "{" generator relation* "}"
//! generator    := "generator" NAME "arity" INT "degree" INT ";"
//! relation     := "relation" sum "=" "0" ";"
//! sum          := ["-"] term (("+"|"-") term)*
//! term         := [RATIONAL "*"] monomial
//! RATIONAL     := INT ["/" INT]
//! monomial     := "(" atom+ ")"
//! atom         := "x" INT | monomial
//! ```
//!
//! Whitespace-insensitive. Leaf indices within one monomial must form a
//! permutation of 1..m, every parenthesized group must have exactly `arity`
//! children, and relations must be quadratic (two generator occurrences per
//! monomial). Each rejection carries a source span and a stable diagnostic
//! code.

use std::fmt;

use crate::error::Error;
use crate::presentation::QuadraticPresentation;
use crate::rational::{Int, Rat};
use crate::trees::{Element, GeneratorSpec, TreeMonomial, TreeShape};

/// Byte span with the line/column of its start (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub col: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticCode {
    UnexpectedCharacter,
    UnexpectedToken,
    UnexpectedEnd,
    TrailingInput,
    ArityOutOfRange,
    DegreeOutOfRange,
    WrongArity,
    LabelsNotPermutation,
    NonQuadraticRelation,
    NumberTooLarge,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::UnexpectedCharacter => "unexpected-character",
            DiagnosticCode::UnexpectedToken => "unexpected-token",
            DiagnosticCode::UnexpectedEnd => "unexpected-end",
            DiagnosticCode::TrailingInput => "trailing-input",
            DiagnosticCode::ArityOutOfRange => "arity-out-of-range",
            DiagnosticCode::DegreeOutOfRange => "degree-out-of-range",
            DiagnosticCode::WrongArity => "wrong-arity",
            DiagnosticCode::LabelsNotPermutation => "labels-not-permutation",
            DiagnosticCode::NonQuadraticRelation => "non-quadratic-relation",
            DiagnosticCode::NumberTooLarge => "number-too-large",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub code: DiagnosticCode,
    pub message: String,
    pub span: Span,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: {} [{}]",
            self.span.line,
            self.span.col,
            self.message,
            self.code.as_str()
        )
    }
}

impl std::error::Error for ParseError {}

fn err(code: DiagnosticCode, span: Span, message: impl Into<String>) -> ParseError {
    ParseError {
        code,
        message: message.into(),
        span,
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Int(u64),
    Punct(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: Span,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let start = i;
        let span_start = Span {
            start,
            end: start + 1,
            line,
            col,
        };
        if c.is_ascii_alphanumeric() || c == '_' {
            let mut j = i;
            while j < bytes.len() && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_')
            {
                j += 1;
            }
            let text = &src[i..j];
            let span = Span {
                start,
                end: j,
                line,
                col,
            };
            let tok = if text.bytes().all(|b| b.is_ascii_digit()) {
                match text.parse::<u64>() {
                    Ok(v) => Tok::Int(v),
                    Err(_) => {
                        return Err(err(
                            DiagnosticCode::NumberTooLarge,
                            span,
                            format!("integer literal `{text}` does not fit in 64 bits"),
                        ))
                    }
                }
            } else {
                Tok::Word(text.to_string())
            };
            out.push(Token { tok, span });
            col += (j - i) as u32;
            i = j;
        } else if "(){};+-*/=".contains(c) {
            out.push(Token {
                tok: Tok::Punct(c),
                span: span_start,
            });
            col += 1;
            i += 1;
        } else {
            return Err(err(
                DiagnosticCode::UnexpectedCharacter,
                span_start,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end_span: Span,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        let tokens = lex(src)?;
        let line = src.lines().count().max(1) as u32;
        let end_span = Span {
            start: src.len(),
            end: src.len(),
            line,
            col: src.lines().last().map_or(1, |l| l.len() as u32 + 1),
        };
        Ok(Parser {
            tokens,
            pos: 0,
            end_span,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Result<Token, ParseError> {
        let t = self.tokens.get(self.pos).cloned().ok_or_else(|| {
            err(
                DiagnosticCode::UnexpectedEnd,
                self.end_span,
                "unexpected end of input",
            )
        })?;
        self.pos += 1;
        Ok(t)
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<Span, ParseError> {
        let t = self.next()?;
        match &t.tok {
            Tok::Word(w) if w == kw => Ok(t.span),
            _ => Err(err(
                DiagnosticCode::UnexpectedToken,
                t.span,
                format!("expected `{kw}`"),
            )),
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<Span, ParseError> {
        let t = self.next()?;
        match t.tok {
            Tok::Punct(p) if p == c => Ok(t.span),
            _ => Err(err(
                DiagnosticCode::UnexpectedToken,
                t.span,
                format!("expected `{c}`"),
            )),
        }
    }

    fn expect_word(&mut self, what: &str) -> Result<(String, Span), ParseError> {
        let t = self.next()?;
        match t.tok {
            Tok::Word(w) => Ok((w, t.span)),
            _ => Err(err(
                DiagnosticCode::UnexpectedToken,
                t.span,
                format!("expected {what}"),
            )),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<(u64, Span), ParseError> {
        let t = self.next()?;
        match t.tok {
            Tok::Int(v) => Ok((v, t.span)),
            _ => Err(err(
                DiagnosticCode::UnexpectedToken,
                t.span,
                format!("expected {what}"),
            )),
        }
    }

    fn at_punct(&self, c: char) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Punct(p), .. }) if *p == c)
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Word(w), .. }) if w == kw)
    }
}

/// Parse a presentation from source text.
pub fn parse(src: &str) -> Result<QuadraticPresentation, ParseError> {
    let mut p = Parser::new(src)?;
    p.expect_keyword("operad")?;
    let (name, _) = p.expect_word("an operad name")?;
    p.expect_punct('{')?;
    p.expect_keyword("generator")?;
    let (gen_name, _) = p.expect_word("a generator name")?;
    p.expect_keyword("arity")?;
    let (arity, arity_span) = p.expect_int("an arity")?;
    if !(2..=64).contains(&arity) {
        return Err(err(
            DiagnosticCode::ArityOutOfRange,
            arity_span,
            format!("arity must be between 2 and 64, got {arity}"),
        ));
    }
    p.expect_keyword("degree")?;
    let (degree, degree_span) = p.expect_int("a degree")?;
    if degree > 1 {
        return Err(err(
            DiagnosticCode::DegreeOutOfRange,
            degree_span,
            format!("degree must be 0 or 1, got {degree}"),
        ));
    }
    p.expect_punct(';')?;
    let gen = GeneratorSpec::new(arity as u32, degree as u32)
        .expect("ranges were checked above");

    let mut relations = Vec::new();
    while p.at_keyword("relation") {
        relations.push(parse_relation(&mut p, &gen)?);
    }
    p.expect_punct('}')?;
    if let Some(tok) = p.peek() {
        return Err(err(
            DiagnosticCode::TrailingInput,
            tok.span,
            "unexpected input after the closing `}`",
        ));
    }

    QuadraticPresentation::new(name, gen, gen_name, relations).map_err(|e| {
        err(
            DiagnosticCode::WrongArity,
            p.end_span,
            format!("invalid presentation: {e}"),
        )
    })
}

fn parse_relation(p: &mut Parser, gen: &GeneratorSpec) -> Result<Element, ParseError> {
    p.expect_keyword("relation")?;
    let expected_arity = 2 * gen.arity() - 1;
    let mut element = Element::zero(expected_arity);
    let mut negative = if p.at_punct('-') {
        p.next()?;
        true
    } else {
        false
    };
    loop {
        let (mono, span) = parse_term(p, gen, &mut element, negative)?;
        let _ = (mono, span);
        if p.at_punct('+') {
            p.next()?;
            negative = false;
        } else if p.at_punct('-') {
            p.next()?;
            negative = true;
        } else {
            break;
        }
    }
    p.expect_punct('=')?;
    let (zero, zspan) = p.expect_int("`0`")?;
    if zero != 0 {
        return Err(err(
            DiagnosticCode::UnexpectedToken,
            zspan,
            "relations must be equated to 0",
        ));
    }
    p.expect_punct(';')?;
    Ok(element)
}

fn parse_term(
    p: &mut Parser,
    gen: &GeneratorSpec,
    element: &mut Element,
    negative: bool,
) -> Result<((), Span), ParseError> {
    let mut coeff = if matches!(p.peek(), Some(Token { tok: Tok::Int(_), .. })) {
        let (num, _) = p.expect_int("a coefficient")?;
        let den = if p.at_punct('/') {
            p.next()?;
            let (den, dspan) = p.expect_int("a denominator")?;
            if den == 0 {
                return Err(err(
                    DiagnosticCode::UnexpectedToken,
                    dspan,
                    "denominator must be nonzero",
                ));
            }
            den
        } else {
            1
        };
        p.expect_punct('*')?;
        Rat::new(Int::from(num), Int::from(den))
    } else {
        Rat::from_integer(1.into())
    };
    if negative {
        coeff = -coeff;
    }
    let (mono, span) = parse_monomial(p, gen)?;
    if mono.internal_count() != 2 {
        return Err(err(
            DiagnosticCode::NonQuadraticRelation,
            span,
            format!(
                "relation monomials must contain exactly 2 generator occurrences, found {}",
                mono.internal_count()
            ),
        ));
    }
    element.add_term(mono, coeff);
    Ok(((), span))
}

fn parse_monomial(p: &mut Parser, gen: &GeneratorSpec) -> Result<(TreeMonomial, Span), ParseError> {
    let mut labels = Vec::new();
    let (shape, span) = parse_group(p, gen, &mut labels)?;
    let m = shape.leaf_count();
    let mono = TreeMonomial::new(shape, labels).map_err(|_| {
        err(
            DiagnosticCode::LabelsNotPermutation,
            span,
            format!("leaf indices must form a permutation of 1..={m}"),
        )
    })?;
    Ok((mono, span))
}

fn parse_group(
    p: &mut Parser,
    gen: &GeneratorSpec,
    labels: &mut Vec<u32>,
) -> Result<(TreeShape, Span), ParseError> {
    let open = p.expect_punct('(')?;
    let mut children = Vec::new();
    loop {
        if p.at_punct(')') {
            break;
        }
        if p.at_punct('(') {
            let (child, _) = parse_group(p, gen, labels)?;
            children.push(child);
            continue;
        }
        let t = p.next()?;
        match &t.tok {
            Tok::Word(w) if w.starts_with('x') && w[1..].bytes().all(|b| b.is_ascii_digit()) && w.len() > 1 => {
                let label: u64 = w[1..].parse().map_err(|_| {
                    err(
                        DiagnosticCode::NumberTooLarge,
                        t.span,
                        format!("leaf index in `{w}` is too large"),
                    )
                })?;
                labels.push(label as u32);
                children.push(TreeShape::unit(gen.arity()));
            }
            _ => {
                return Err(err(
                    DiagnosticCode::UnexpectedToken,
                    t.span,
                    "expected a leaf like `x1` or a nested monomial",
                ))
            }
        }
    }
    let close = p.expect_punct(')')?;
    let span = Span {
        start: open.start,
        end: close.end,
        line: open.line,
        col: open.col,
    };
    if children.len() != gen.arity() as usize {
        return Err(err(
            DiagnosticCode::WrongArity,
            span,
            format!(
                "a monomial group must have exactly {} children, found {}",
                gen.arity(),
                children.len()
            ),
        ));
    }
    let shape = TreeShape::internal(gen.arity(), children).map_err(|e| {
        err(DiagnosticCode::WrongArity, span, format!("bad monomial: {e}"))
    })?;
    Ok((shape, span))
}

/// Canonical rendering; `parse(print(p))` structurally equals `p`.
pub fn print(p: &QuadraticPresentation) -> String {
    let mut out = String::new();
    out.push_str(&format!("operad {} {{\n", p.name()));
    out.push_str(&format!(
        "  generator {} arity {} degree {};\n",
        p.generator_name(),
        p.generator().arity(),
        p.generator().degree()
    ));
    for rel in p.relations() {
        out.push_str(&format!("  relation {rel} = 0;\n"));
    }
    out.push_str("}\n");
    out
}

/// Parse, promoting the diagnostic into the engine error type.
pub fn parse_presentation(src: &str) -> crate::error::Result<QuadraticPresentation> {
    parse(src).map_err(Error::from)
}
