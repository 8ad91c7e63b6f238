//! Parser for the expression text format.
//!
//! A source is a sequence of declarations followed by one expression:
//!
//! ```text
//! # comment
//! odd mu, nu;
//! even A, B;
//! sign eps;
//! var xi;
//! function w;
//! even u(x,y);
//! sample A = 1/2, B = -1;
//! (A*y + B*x)*(theta1 + mu)*theta2
//! ```
//!
//! `x`, `y`, `theta1`, `theta2`, `eta1`, `eta2` and `i` are predeclared.
//! Jets are written `D(x,theta1;u)` with the derivative list outermost
//! first. An equation `a = b` parses as `a - b`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use susyms_core::atom::{Atom, FieldDecl, FuncHead, Jet, OddVar, Parity};
use susyms_core::calculus::jet_from_list;
use susyms_core::funcs::func_expr;
use susyms_core::numeric::{eval, Env};
use susyms_core::{Exponent, GradedExpr, Rational};

use crate::error::{Error, Result};

/// What a declared identifier stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Var,
    OddVar,
    Const,
    OddConst,
    Sign,
    Field(Arc<FieldDecl>),
    Function,
}

pub const BUILTIN_VARS: [&str; 2] = ["x", "y"];
pub const BUILTIN_ODD_VARS: [&str; 4] = ["theta1", "theta2", "eta1", "eta2"];
const KEYWORDS: [&str; 6] = ["odd", "even", "sign", "var", "function", "sample"];
const RESERVED: [&str; 3] = ["i", "D", "sqrt"];

/// Identifier table.
#[derive(Clone, Debug)]
pub struct Scope {
    names: BTreeMap<String, Decl>,
}

impl Default for Scope {
    fn default() -> Self {
        let mut names = BTreeMap::new();
        for v in BUILTIN_VARS {
            names.insert(v.to_string(), Decl::Var);
        }
        for v in BUILTIN_ODD_VARS {
            names.insert(v.to_string(), Decl::OddVar);
        }
        Scope { names }
    }
}

impl Scope {
    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.names.get(name)
    }

    /// Declare a name; redeclaring with the same meaning is allowed.
    pub fn declare(&mut self, name: &str, d: Decl) -> std::result::Result<(), String> {
        if KEYWORDS.contains(&name) || RESERVED.contains(&name) || FuncHead::builtin(name).is_some() {
            return Err(format!("`{name}` is reserved"));
        }
        match self.names.get(name) {
            Some(old) if *old != d => Err(format!("`{name}` is already declared differently")),
            _ => {
                self.names.insert(name.to_string(), d);
                Ok(())
            }
        }
    }

    /// A scope with every symbol of `e` declared.
    pub fn for_expr(e: &GradedExpr) -> Scope {
        let mut s = Scope::default();
        for (name, d) in crate::serialize::declarations(e) {
            let _ = s.declare(&name, d);
        }
        s
    }
}

/// A parsed source: the expression together with its declarations and
/// optional numeric sample values for constants.
#[derive(Clone, Debug)]
pub struct Source {
    pub scope: Scope,
    pub expr: GradedExpr,
    pub samples: BTreeMap<Atom, Complex64>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            while i < chars.len() && chars[i] == '\'' {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Ident(s), line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Num(s), line: l0, col: c0 });
            continue;
        }
        if "+-*/^(),;=".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line: l0, col: c0 });
            i += 1;
            col += 1;
            continue;
        }
        return Err(Error::Syntax { line, column: col, message: format!("unexpected character `{c}`") });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

/// Exact value of a decimal literal.
fn decimal(s: &str) -> Rational {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = format!("{int}{frac}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().unwrap() };
    let d = num_traits::pow(BigInt::from(10), frac.len());
    Rational::new(n, d)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    scope: Scope,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Syntax { line, column, message: message.into() })
    }

    fn err_at<T>(&self, t: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { line: t.line, column: t.col, message: message.into() })
    }

    fn locate<T>(t: &Token, r: susyms_core::Result<T>) -> Result<T> {
        r.map_err(|source| Error::Located { line: t.line, column: t.col, source })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`, found {}", describe(self.peek())))
        }
    }

    fn ident(&mut self) -> Result<(Token, String)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((t, s))
            }
            other => self.err_at(&t, format!("expected identifier, found {}", describe(other))),
        }
    }

    fn is_declaration(&self) -> bool {
        matches!(self.peek(), Tok::Ident(k) if KEYWORDS.contains(&k.as_str())) && matches!(self.peek_at(1), Tok::Ident(_))
    }

    fn declaration(&mut self, samples: &mut BTreeMap<Atom, Complex64>) -> Result<()> {
        let (_, kw) = self.ident()?;
        loop {
            let (t, name) = self.ident()?;
            if kw == "sample" {
                self.expect('=')?;
                let vt = self.toks[self.pos].clone();
                let v = self.sum()?;
                let atom = match self.scope.get(&name) {
                    Some(Decl::Const) => Atom::konst(&name),
                    Some(Decl::Sign) => Atom::sign(&name),
                    _ => return self.err_at(&t, format!("`{name}` is not a declared even constant")),
                };
                let z = Self::locate(&vt, eval(&v, &Env::new(false)))?;
                samples.insert(atom, z);
            } else if *self.peek() == Tok::Sym('(') {
                let parity = match kw.as_str() {
                    "even" => Parity::Even,
                    "odd" => Parity::Odd,
                    _ => return self.err_at(&t, "only `even` and `odd` declare fields"),
                };
                self.next();
                let mut deps = Vec::new();
                loop {
                    let (dt, d) = self.ident()?;
                    match self.scope.get(&d) {
                        Some(Decl::Var | Decl::OddVar) => deps.push(d),
                        _ => return self.err_at(&dt, format!("`{d}` is not a coordinate")),
                    }
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(')')?;
                let dep_refs: Vec<&str> = deps.iter().map(|s| s.as_str()).collect();
                let decl = FieldDecl::new(&name, parity, &dep_refs);
                let d = Decl::Field(decl);
                if let Err(m) = self.scope.declare(&name, d) {
                    return self.err_at(&t, m);
                }
            } else {
                let d = match kw.as_str() {
                    "odd" => Decl::OddConst,
                    "even" => Decl::Const,
                    "sign" => Decl::Sign,
                    "var" => Decl::Var,
                    "function" => Decl::Function,
                    _ => unreachable!(),
                };
                if name.contains('\'') && d == Decl::Function {
                    return self.err_at(&t, "function names cannot carry primes");
                }
                if let Err(m) = self.scope.declare(&name, d) {
                    return self.err_at(&t, m);
                }
            }
            if !self.eat(',') {
                break;
            }
        }
        self.expect(';')
    }

    fn sum(&mut self) -> Result<GradedExpr> {
        self.eat('+');
        let mut acc = self.product()?;
        loop {
            if self.eat('+') {
                acc.add_assign(&self.product()?);
            } else if self.eat('-') {
                acc.add_assign(&self.product()?.gneg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<GradedExpr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.gmul(&self.unary()?);
            } else if *self.peek() == Tok::Sym('/') {
                let t = self.next();
                let d = self.unary()?;
                if d.is_zero() {
                    return self.err_at(&t, "division by zero");
                }
                let inv = match d.as_coeff() {
                    Some(c) => GradedExpr::constant(c.inv().unwrap()),
                    None => Self::locate(&t, d.inv())?,
                };
                acc = acc.gmul(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<GradedExpr> {
        if self.eat('-') {
            return Ok(self.unary()?.gneg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<GradedExpr> {
        let base = self.primary()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        let t = self.next();
        let e = self.exponent()?;
        if e.is_integer() && e >= Exponent::zero() {
            return Self::locate(&t, base.pow_int(e.to_integer()));
        }
        if base.is_zero() {
            return self.err_at(&t, "non-positive power of zero");
        }
        Self::locate(&t, base.powr(e))
    }

    fn exponent(&mut self) -> Result<Exponent> {
        let neg = self.eat('-');
        let t = self.toks[self.pos].clone();
        let v = match &t.tok {
            Tok::Num(s) => {
                let v = decimal(s);
                self.next();
                v
            }
            Tok::Sym('(') => {
                self.next();
                let e = self.sum()?;
                self.expect(')')?;
                match e.as_coeff() {
                    Some(c) if c.is_real() => c.re,
                    _ => return self.err_at(&t, format!("exponent must be a rational number, found {e}")),
                }
            }
            other => return self.err_at(&t, format!("expected exponent, found {}", describe(other))),
        };
        let v = if neg { -v } else { v };
        match (v.numer().to_i64(), v.denom().to_i64()) {
            (Some(n), Some(d)) => Ok(Exponent::new(n, d)),
            _ => self.err_at(&t, "exponent out of range"),
        }
    }

    fn primary(&mut self) -> Result<GradedExpr> {
        let t = self.next();
        match &t.tok {
            Tok::Num(s) => Ok(GradedExpr::rational(decimal(s))),
            Tok::Sym('(') => {
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let name = name.clone();
                if *self.peek() == Tok::Sym('(') {
                    self.call(&t, &name)
                } else {
                    self.symbol(&t, &name)
                }
            }
            other => self.err_at(&t, format!("unexpected {}", describe(other))),
        }
    }

    fn symbol(&mut self, t: &Token, name: &str) -> Result<GradedExpr> {
        if name == "i" {
            return Ok(GradedExpr::i());
        }
        Ok(GradedExpr::atom(match self.scope.get(name) {
            Some(Decl::Var) => Atom::var(name),
            Some(Decl::OddVar) => Atom::OddVar(OddVar::new(name)),
            Some(Decl::Const) => Atom::konst(name),
            Some(Decl::OddConst) => Atom::odd_const(name),
            Some(Decl::Sign) => Atom::sign(name),
            Some(Decl::Field(f)) => Atom::Jet(Jet::base(f)),
            Some(Decl::Function) => return self.err_at(t, format!("function `{name}` needs an argument")),
            None => return self.err_at(t, format!("unknown identifier `{name}`")),
        }))
    }

    fn args(&mut self) -> Result<Vec<GradedExpr>> {
        self.expect('(')?;
        let mut out = vec![self.sum()?];
        while self.eat(',') {
            out.push(self.sum()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn call(&mut self, t: &Token, name: &str) -> Result<GradedExpr> {
        if name == "D" {
            return self.jet(t);
        }
        if name == "sqrt" {
            let a = self.args()?;
            if a.len() != 1 {
                return self.err_at(t, "sqrt expects one argument");
            }
            if a[0].is_zero() {
                return Ok(GradedExpr::zero());
            }
            return Self::locate(t, a[0].powr(Exponent::new(1, 2)));
        }
        if let Some(head) = FuncHead::builtin(name) {
            let a = self.args()?;
            return Self::locate(t, func_expr(head, a));
        }
        let base = name.trim_end_matches('\'');
        let order = (name.len() - base.len()) as u32;
        match self.scope.get(base).cloned() {
            Some(Decl::Function) => {
                let a = self.args()?;
                Self::locate(t, func_expr(FuncHead::User { name: base.into(), order }, a))
            }
            Some(Decl::Field(f)) if order == 0 => {
                self.expect('(')?;
                let mut got = Vec::new();
                loop {
                    let (_, d) = self.ident()?;
                    got.push(d);
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(')')?;
                let want: Vec<String> =
                    f.even_deps.iter().map(|s| s.to_string()).chain(f.odd_deps.iter().map(|v| v.name.to_string())).collect();
                if got != want {
                    return self.err_at(t, format!("field `{name}` is declared over ({})", want.join(",")));
                }
                Ok(GradedExpr::atom(Atom::Jet(Jet::base(&f))))
            }
            Some(_) => self.err_at(t, format!("`{name}` is not a function")),
            None => self.err_at(t, format!("unknown function `{name}`")),
        }
    }

    fn jet(&mut self, t: &Token) -> Result<GradedExpr> {
        self.expect('(')?;
        let mut list = Vec::new();
        loop {
            let (vt, v) = self.ident()?;
            list.push(match self.scope.get(&v) {
                Some(Decl::Var) => Atom::var(&v),
                Some(Decl::OddVar) => Atom::OddVar(OddVar::new(&v)),
                _ => return self.err_at(&vt, format!("`{v}` is not a coordinate")),
            });
            if !self.eat(',') {
                break;
            }
        }
        self.expect(';')?;
        let (ft, f) = self.ident()?;
        let field = match self.scope.get(&f) {
            Some(Decl::Field(d)) => d.clone(),
            _ => return self.err_at(&ft, format!("`{f}` is not a declared field")),
        };
        self.expect(')')?;
        Self::locate(t, jet_from_list(&field, &list))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(s) => format!("number `{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Eof => "end of input".into(),
    }
}

/// Parse a complete source with declarations.
pub fn parse_source(src: &str) -> Result<Source> {
    parse_source_in(src, Scope::default())
}

/// Parse a source starting from an existing scope.
pub fn parse_source_in(src: &str, scope: Scope) -> Result<Source> {
    let mut p = Parser { toks: lex(src)?, pos: 0, scope };
    let mut samples = BTreeMap::new();
    while p.is_declaration() {
        p.declaration(&mut samples)?;
    }
    if *p.peek() == Tok::Eof {
        return p.err("expected an expression");
    }
    let mut e = p.sum()?;
    if p.eat('=') {
        let r = p.sum()?;
        e = e.gsub(&r);
    }
    p.eat(';');
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {} after expression", describe(p.peek())));
    }
    Ok(Source { scope: p.scope, expr: e, samples })
}

/// Parse an expression into canonical form.
pub fn parse_expression(src: &str) -> Result<GradedExpr> {
    Ok(parse_source(src)?.expr)
}

/// Parse a reduced ODE written in `xi`, `w`, `w'`, `w''`, ... .
pub fn parse_ode(src: &str) -> Result<GradedExpr> {
    let mut scope = Scope::default();
    for n in ["xi", "w", "w'", "w''", "w'''"] {
        scope.declare(n, Decl::Var).unwrap();
    }
    Ok(parse_source_in(src, scope)?.expr)
}
