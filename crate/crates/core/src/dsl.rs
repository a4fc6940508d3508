//! A small text language for user-defined systems (`.eds` files, UTF-8,
//! `#` line comments).
//!
//! ```text
//! coords x y z p q;
//! let omega = d(z) - p*d(x) - q*d(y);
//! let domega = d(omega);
//! generators omega, domega;
//! indep x y;
//! ```
//!
//! Grammar:
//!
//! ```text
//! file       := coords let* generators indep
//! coords     := "coords" IDENT+ ";"
//! let        := "let" IDENT "=" expr ";"
//! generators := "generators" [ IDENT ("," IDENT)* ] ";"
//! indep      := "indep" IDENT+ ";"
//! expr       := ["-"] term (("+" | "-") term)*
//! term       := atom ("^" atom)*                  (wedge, left-assoc)
//! atom       := RATIONAL | IDENT
//!             | IDENT "*" atom | RATIONAL "*" atom
//!             | "d" "(" expr ")" | "(" expr ")"
//! RATIONAL   := DIGITS [ "/" DIGITS ]
//! ```
//!
//! A bare IDENT in scalar position denotes the coordinate as a polynomial;
//! `*` binds tighter than `^`, which binds tighter than `+`/`-`. The leading
//! minus and an empty generator list are accepted so that every printable
//! system round-trips.

use crate::chart::Chart;
use crate::eds::EDSystem;
use crate::form::Form;
use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Parse failure with a position into the source text (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub token: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}{}",
            self.line,
            self.column,
            self.message,
            if self.token.is_empty() {
                String::new()
            } else {
                format!(" (at `{}`)", self.token)
            }
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Rational(Rat),
    KwCoords,
    KwLet,
    KwGenerators,
    KwIndep,
    KwD,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eq,
    Eof,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Ident(s) => s.clone(),
            Tok::Rational(r) => r.to_string(),
            Tok::KwCoords => "coords".into(),
            Tok::KwLet => "let".into(),
            Tok::KwGenerators => "generators".into(),
            Tok::KwIndep => "indep".into(),
            Tok::KwD => "d".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Comma => ",".into(),
            Tok::Semi => ";".into(),
            Tok::Eq => "=".into(),
            Tok::Eof => String::new(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = text.chars().peekable();
    macro_rules! bump {
        () => {{
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump!();
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    digits.push(bump!());
                } else {
                    break;
                }
            }
            let numer: Int = digits.parse().expect("digits");
            let mut denom = Int::one();
            if chars.peek() == Some(&'/') {
                bump!();
                let mut d = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        d.push(bump!());
                    } else {
                        break;
                    }
                }
                if d.is_empty() {
                    return Err(ParseError {
                        line,
                        column,
                        message: "expected digits after `/` in rational".into(),
                        token: "/".into(),
                    });
                }
                denom = d.parse().expect("digits");
                if denom.is_zero() {
                    return Err(ParseError {
                        line: pos.line,
                        column: pos.column,
                        message: "zero denominator".into(),
                        token: format!("{digits}/{d}"),
                    });
                }
            }
            out.push((Tok::Rational(Rat::new(numer, denom)), pos));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_alphanumeric() || c == '_' {
                    ident.push(bump!());
                } else {
                    break;
                }
            }
            let tok = match ident.as_str() {
                "coords" => Tok::KwCoords,
                "let" => Tok::KwLet,
                "generators" => Tok::KwGenerators,
                "indep" => Tok::KwIndep,
                "d" => Tok::KwD,
                _ => Tok::Ident(ident),
            };
            out.push((tok, pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '=' => Tok::Eq,
            other => {
                return Err(ParseError {
                    line,
                    column,
                    message: "unexpected character".into(),
                    token: other.to_string(),
                })
            }
        };
        bump!();
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, column }));
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, Pos)],
    at: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let (tok, pos) = &self.toks[self.at];
        ParseError {
            line: pos.line,
            column: pos.column,
            message: message.into(),
            token: tok.text(),
        }
    }

    fn err_at(&self, pos: Pos, token: &str, message: impl Into<String>) -> ParseError {
        ParseError {
            line: pos.line,
            column: pos.column,
            message: message.into(),
            token: token.to_string(),
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, pos))
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }
}

#[derive(Debug, Clone)]
enum Expr {
    Rational(Rat),
    Ident(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>, Pos),
    Sub(Box<Expr>, Box<Expr>, Pos),
    /// Both `*` (scalar multiplication) and `^` (wedge); identical semantics.
    Wedge(Box<Expr>, Box<Expr>, Pos),
    D(Box<Expr>),
}

fn parse_expr(p: &mut Parser) -> Result<Expr, ParseError> {
    let mut lhs = if *p.peek() == Tok::Minus {
        p.bump();
        Expr::Neg(Box::new(parse_term(p)?))
    } else {
        parse_term(p)?
    };
    loop {
        match p.peek() {
            Tok::Plus => {
                let pos = p.pos();
                p.bump();
                let rhs = parse_term(p)?;
                lhs = Expr::Add(Box::new(lhs), Box::new(rhs), pos);
            }
            Tok::Minus => {
                let pos = p.pos();
                p.bump();
                let rhs = parse_term(p)?;
                lhs = Expr::Sub(Box::new(lhs), Box::new(rhs), pos);
            }
            _ => return Ok(lhs),
        }
    }
}

fn parse_term(p: &mut Parser) -> Result<Expr, ParseError> {
    let mut lhs = parse_atom(p)?;
    while *p.peek() == Tok::Caret {
        let pos = p.pos();
        p.bump();
        let rhs = parse_atom(p)?;
        lhs = Expr::Wedge(Box::new(lhs), Box::new(rhs), pos);
    }
    Ok(lhs)
}

fn parse_atom(p: &mut Parser) -> Result<Expr, ParseError> {
    match p.peek().clone() {
        Tok::Rational(r) => {
            p.bump();
            if *p.peek() == Tok::Star {
                let pos = p.pos();
                p.bump();
                let rhs = parse_atom(p)?;
                Ok(Expr::Wedge(Box::new(Expr::Rational(r)), Box::new(rhs), pos))
            } else {
                Ok(Expr::Rational(r))
            }
        }
        Tok::Ident(name) => {
            let pos = p.pos();
            p.bump();
            if *p.peek() == Tok::Star {
                let star = p.pos();
                p.bump();
                let rhs = parse_atom(p)?;
                Ok(Expr::Wedge(
                    Box::new(Expr::Ident(name, pos)),
                    Box::new(rhs),
                    star,
                ))
            } else {
                Ok(Expr::Ident(name, pos))
            }
        }
        Tok::KwD => {
            p.bump();
            p.expect(&Tok::LParen, "`(` after d")?;
            let inner = parse_expr(p)?;
            p.expect(&Tok::RParen, "`)`")?;
            Ok(Expr::D(Box::new(inner)))
        }
        Tok::LParen => {
            p.bump();
            let inner = parse_expr(p)?;
            p.expect(&Tok::RParen, "`)`")?;
            Ok(inner)
        }
        _ => Err(p.err("expected a rational, identifier, `d(...)` or `(...)`")),
    }
}

struct Env {
    chart: Arc<Chart>,
    lets: HashMap<String, Form>,
}

fn eval_expr(expr: &Expr, env: &Env) -> Result<Form, ParseError> {
    match expr {
        Expr::Rational(r) => Ok(Form::constant(&env.chart, r.clone())),
        Expr::Ident(name, pos) => {
            if let Some(f) = env.lets.get(name) {
                return Ok(f.clone());
            }
            if let Some(i) = env.chart.index_of(name) {
                return Ok(Form::coordinate(&env.chart, i));
            }
            Err(ParseError {
                line: pos.line,
                column: pos.column,
                message: format!("`{name}` is not a coordinate or previously defined name"),
                token: name.clone(),
            })
        }
        Expr::Neg(inner) => Ok(-eval_expr(inner, env)?),
        Expr::Add(a, b, pos) | Expr::Sub(a, b, pos) => {
            let fa = eval_expr(a, env)?;
            let fb = eval_expr(b, env)?;
            if fa.degree() != fb.degree() {
                return Err(ParseError {
                    line: pos.line,
                    column: pos.column,
                    message: format!("mixed degrees {} and {} in sum", fa.degree(), fb.degree()),
                    token: if matches!(expr, Expr::Add(..)) {
                        "+"
                    } else {
                        "-"
                    }
                    .into(),
                });
            }
            Ok(match expr {
                Expr::Add(..) => fa + fb,
                _ => fa - fb,
            })
        }
        Expr::Wedge(a, b, pos) => {
            let fa = eval_expr(a, env)?;
            let fb = eval_expr(b, env)?;
            fa.wedge(&fb).map_err(|e| ParseError {
                line: pos.line,
                column: pos.column,
                message: e.to_string(),
                token: "^".into(),
            })
        }
        Expr::D(inner) => Ok(eval_expr(inner, env)?.exterior_derivative()),
    }
}

/// Parse `.eds` source into a system.
pub fn parse(text: &str) -> Result<EDSystem, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, at: 0 };

    // coords
    if *p.peek() != Tok::KwCoords {
        return Err(p.err("expected `coords` as the first statement"));
    }
    p.bump();
    let mut coords: Vec<(String, Pos)> = Vec::new();
    while matches!(p.peek(), Tok::Ident(_)) {
        coords.push(p.ident("coordinate name")?);
    }
    if coords.is_empty() {
        return Err(p.err("expected at least one coordinate"));
    }
    p.expect(&Tok::Semi, "`;` after coords")?;
    for (i, (name, pos)) in coords.iter().enumerate() {
        if coords[..i].iter().any(|(other, _)| other == name) {
            return Err(p.err_at(*pos, name, format!("duplicate coordinate `{name}`")));
        }
    }

    // let bindings (evaluated after the chart is known; exprs stored first)
    let mut lets: Vec<(String, Pos, Expr)> = Vec::new();
    while *p.peek() == Tok::KwLet {
        p.bump();
        let (name, pos) = p.ident("name after `let`")?;
        p.expect(&Tok::Eq, "`=`")?;
        let expr = parse_expr(&mut p)?;
        p.expect(&Tok::Semi, "`;` after let")?;
        lets.push((name, pos, expr));
    }

    // generators
    if *p.peek() != Tok::KwGenerators {
        return Err(p.err("expected `generators`"));
    }
    p.bump();
    let mut generator_names: Vec<(String, Pos)> = Vec::new();
    if matches!(p.peek(), Tok::Ident(_)) {
        generator_names.push(p.ident("generator name")?);
        while *p.peek() == Tok::Comma {
            p.bump();
            generator_names.push(p.ident("generator name")?);
        }
    }
    p.expect(&Tok::Semi, "`;` after generators")?;

    // indep
    if *p.peek() != Tok::KwIndep {
        return Err(p.err("expected `indep`"));
    }
    p.bump();
    let mut indep: Vec<(String, Pos)> = Vec::new();
    while matches!(p.peek(), Tok::Ident(_)) {
        indep.push(p.ident("independence coordinate")?);
    }
    if indep.is_empty() {
        return Err(p.err("expected at least one independence coordinate"));
    }
    p.expect(&Tok::Semi, "`;` after indep")?;
    if *p.peek() != Tok::Eof {
        return Err(p.err("expected end of file"));
    }

    // semantic pass
    let names: Vec<String> = coords.iter().map(|(n, _)| n.clone()).collect();
    let mut base = Vec::with_capacity(indep.len());
    for (name, pos) in &indep {
        let Some(i) = names.iter().position(|n| n == name) else {
            return Err(p.err_at(*pos, name, format!("`{name}` is not a coordinate")));
        };
        if base.contains(&i) {
            return Err(p.err_at(
                *pos,
                name,
                format!("duplicate independence coordinate `{name}`"),
            ));
        }
        base.push(i);
    }
    let chart = Chart::new(names, base.clone()).map_err(|e| ParseError {
        line: 1,
        column: 1,
        message: e.to_string(),
        token: String::new(),
    })?;

    let mut env = Env {
        chart: Arc::clone(&chart),
        lets: HashMap::new(),
    };
    for (name, pos, expr) in &lets {
        if env.lets.contains_key(name) || env.chart.index_of(name).is_some() {
            return Err(p.err_at(*pos, name, format!("`{name}` is already defined")));
        }
        let value = eval_expr(expr, &env)?;
        env.lets.insert(name.clone(), value);
    }

    let mut generators = Vec::with_capacity(generator_names.len());
    for (name, pos) in &generator_names {
        let Some(form) = env.lets.get(name) else {
            if env.chart.index_of(name).is_some() {
                return Err(p.err_at(
                    *pos,
                    name,
                    format!("generator `{name}` is a 0-form; degree >= 1 required"),
                ));
            }
            return Err(p.err_at(*pos, name, format!("generator `{name}` is not defined")));
        };
        if form.degree() == 0 {
            return Err(p.err_at(
                *pos,
                name,
                format!("generator `{name}` is a 0-form; degree >= 1 required"),
            ));
        }
        if generators.iter().any(|(n, _): &(String, Form)| n == name) {
            return Err(p.err_at(*pos, name, format!("duplicate generator `{name}`")));
        }
        generators.push((name.clone(), form.clone()));
    }

    EDSystem::new(chart, generators, base).map_err(|e| ParseError {
        line: 1,
        column: 1,
        message: e.to_string(),
        token: String::new(),
    })
}

/// Emit DSL text that parses back to a structurally equal system.
pub fn print(eds: &EDSystem) -> String {
    let chart = eds.chart();
    let mut out = String::new();
    out.push_str("coords ");
    out.push_str(&chart.names().join(" "));
    out.push_str(";\n");
    for (name, form) in eds.generators() {
        out.push_str(&format!("let {name} = {};\n", form_to_expr(form)));
    }
    out.push_str("generators ");
    out.push_str(
        &eds.generators()
            .iter()
            .map(|(n, _)| n.clone())
            .collect::<Vec<_>>()
            .join(", "),
    );
    out.push_str(";\n");
    out.push_str("indep ");
    out.push_str(
        &eds.independence()
            .iter()
            .map(|&i| chart.name(i).to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push_str(";\n");
    out
}

fn form_to_expr(form: &Form) -> String {
    let chart = form.chart();
    if form.is_zero() {
        // a zero k-form: 0 wedged with k basis forms keeps the degree
        let mut s = String::from("0");
        for i in 0..form.degree() {
            s.push_str(&format!("^d({})", chart.name(i)));
        }
        return s;
    }
    let mut pieces: Vec<(bool, String)> = Vec::new(); // (negative, magnitude text)
    for (tuple, poly) in form.terms() {
        for (mono, coeff) in poly.terms() {
            let negative = coeff.is_negative();
            let magnitude = coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() || (mono.is_empty() && tuple.is_empty()) {
                factors.push(magnitude.to_string());
            }
            for &v in mono {
                factors.push(chart.name(v as usize).to_string());
            }
            let scalar = factors.join("*");
            let wedge = tuple
                .iter()
                .map(|&i| format!("d({})", chart.name(i as usize)))
                .collect::<Vec<_>>()
                .join("^");
            let text = match (scalar.is_empty(), wedge.is_empty()) {
                (false, false) => format!("{scalar}*{wedge}"),
                (false, true) => scalar,
                (true, false) => wedge,
                (true, true) => "1".into(),
            };
            pieces.push((negative, text));
        }
    }
    let mut s = String::new();
    for (i, (negative, text)) in pieces.iter().enumerate() {
        if i == 0 {
            if *negative {
                s.push_str("- ");
            }
        } else if *negative {
            s.push_str(" - ");
        } else {
            s.push_str(" + ");
        }
        s.push_str(text);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn parses_the_contact_system() {
        let text = "coords x y z p q;\n\
                    let th = d(z) - p*d(x) - q*d(y);\n\
                    let dth = d(th);\n\
                    generators th, dth;\n\
                    indep x y;\n";
        let parsed = parse(text).unwrap();
        let built = models::build_contact_example();
        assert_eq!(parsed.chart(), built.chart());
        assert_eq!(parsed.generators()[0].1, built.generators()[0].1);
        assert_eq!(parsed.generators()[1].1, built.generators()[1].1);
        assert_eq!(parsed.independence(), built.independence());
    }

    #[test]
    fn zero_form_generator_is_rejected() {
        let err = parse("coords x; let g = x; generators g; indep x;").unwrap_err();
        assert!(err.message.contains("0-form"), "{err}");
    }

    #[test]
    fn mixed_degrees_are_a_semantic_error() {
        let err =
            parse("coords x y; let a = d(x) + d(x)^d(y); generators a; indep x;").unwrap_err();
        assert!(err.message.contains("mixed degrees 1 and 2"), "{err}");
    }

    #[test]
    fn unknown_identifier_is_reported_with_position() {
        let err = parse("coords x;\nlet a = d(w);\ngenerators a;\nindep x;").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("not a coordinate"));
    }

    #[test]
    fn comments_and_fractions() {
        let text = "# a half-weighted pair\n\
                    coords x y;\n\
                    let g = 1/2*d(x)^d(y);\n\
                    generators g;\n\
                    indep x y;\n";
        let eds = parse(text).unwrap();
        assert_eq!(eds.generators()[0].1.degree(), 2);
    }

    #[test]
    fn round_trips_structurally() {
        let built = models::build_contact_example();
        let reparsed = parse(&print(&built)).unwrap();
        assert_eq!(reparsed, built);
    }

    #[test]
    fn empty_generator_list_round_trips() {
        let chart = Chart::new(vec!["x".into(), "y".into()], vec![0]).unwrap();
        let eds = EDSystem::new(chart, Vec::new(), vec![0]).unwrap();
        let reparsed = parse(&print(&eds)).unwrap();
        assert_eq!(reparsed, eds);
    }
}
