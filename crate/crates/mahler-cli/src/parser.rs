//! Expression grammar for rational functions and matrices.
//!
//! Precedence, tightest first: `^` (integer-literal exponents), unary minus,
//! `*` and `/`, then `+` and `-`; the binary operators associate to the left.
//! Matrices are bracketed rows: `[[0, 1], [1, -z]]`. Whitespace is ignored.
//! Division by zero is an evaluation error, not a parse error.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExprAst {
    /// Integer literal, kept as text so it never overflows.
    Int(String),
    /// The variable `z`.
    Var,
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, i64),
    Paren(Box<ExprAst>),
    Matrix(Vec<Vec<ExprAst>>),
}

/// Parse failure with position and the token set that would have been legal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at line {}, column {}: found {}; expected one of {}",
            self.line,
            self.column,
            self.found,
            self.expected.join(", ")
        )
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(String),
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(s) => format!("integer `{s}`"),
            Tok::Z => "`z`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, column);
        let advance = |i: &mut usize, line: &mut usize, column: &mut usize| {
            if chars[*i] == '\n' {
                *line += 1;
                *column = 1;
            } else {
                *column += 1;
            }
            *i += 1;
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                advance(&mut i, &mut line, &mut column);
            }
            '0'..='9' => {
                let mut digits = String::new();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    digits.push(chars[i]);
                    advance(&mut i, &mut line, &mut column);
                }
                out.push(Lexed {
                    tok: Tok::Int(digits),
                    line: tline,
                    column: tcol,
                });
            }
            'z' => {
                advance(&mut i, &mut line, &mut column);
                out.push(Lexed {
                    tok: Tok::Z,
                    line: tline,
                    column: tcol,
                });
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' | '[' | ']' | ',' => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    _ => unreachable!(),
                };
                advance(&mut i, &mut line, &mut column);
                out.push(Lexed {
                    tok,
                    line: tline,
                    column: tcol,
                });
            }
            other => {
                return Err(SyntaxError {
                    line: tline,
                    column: tcol,
                    found: format!("`{other}`"),
                    expected: vec!["integer", "`z`", "operator", "`(`", "`[`"],
                });
            }
        }
    }
    out.push(Lexed {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: Vec<&'static str>) -> SyntaxError {
        let cur = &self.toks[self.pos];
        SyntaxError {
            line: cur.line,
            column: cur.column,
            found: cur.tok.describe(),
            expected,
        }
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.error(vec![name]))
        }
    }

    fn expr(&mut self) -> Result<ExprAst, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.advance();
                    let rhs = self.term()?;
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(rhs));
                }
                Tok::Minus => {
                    self.advance();
                    let rhs = self.term()?;
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.advance();
                    let rhs = self.unary()?;
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(rhs));
                }
                Tok::Slash => {
                    self.advance();
                    let rhs = self.unary()?;
                    lhs = ExprAst::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<ExprAst, SyntaxError> {
        if *self.peek() == Tok::Minus {
            self.advance();
            let inner = self.unary()?;
            return Ok(ExprAst::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprAst, SyntaxError> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.advance();
            let mut negative = false;
            if *self.peek() == Tok::Minus {
                negative = true;
                self.advance();
            }
            let Tok::Int(digits) = self.peek().clone() else {
                return Err(self.error(vec!["integer exponent"]));
            };
            self.advance();
            let mag: i64 = digits
                .parse()
                .map_err(|_| self.error(vec!["integer exponent within i64"]))?;
            base = ExprAst::Pow(Box::new(base), if negative { -mag } else { mag });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprAst, SyntaxError> {
        match self.peek().clone() {
            Tok::Int(digits) => {
                self.advance();
                Ok(ExprAst::Int(digits))
            }
            Tok::Z => {
                self.advance();
                Ok(ExprAst::Var)
            }
            Tok::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(ExprAst::Paren(Box::new(inner)))
            }
            Tok::LBracket => self.matrix(),
            _ => Err(self.error(vec!["integer", "`z`", "`(`", "`[`", "`-`"])),
        }
    }

    fn matrix(&mut self) -> Result<ExprAst, SyntaxError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut rows = Vec::new();
        loop {
            rows.push(self.row()?);
            match self.peek() {
                Tok::Comma => {
                    self.advance();
                }
                Tok::RBracket => {
                    self.advance();
                    return Ok(ExprAst::Matrix(rows));
                }
                _ => return Err(self.error(vec!["`,`", "`]`"])),
            }
        }
    }

    fn row(&mut self) -> Result<Vec<ExprAst>, SyntaxError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut entries = Vec::new();
        loop {
            entries.push(self.expr()?);
            match self.peek() {
                Tok::Comma => {
                    self.advance();
                }
                Tok::RBracket => {
                    self.advance();
                    return Ok(entries);
                }
                _ => return Err(self.error(vec!["`,`", "`]`"])),
            }
        }
    }
}

pub fn parse_expr(text: &str) -> Result<ExprAst, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let ast = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(vec!["operator", "end of input"]));
    }
    Ok(ast)
}
