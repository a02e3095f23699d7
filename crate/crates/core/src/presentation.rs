//! Operad presentations: a signature plus a relation subspace of the arity-3
//! component, together with the text language used to write them down.
//!
//! ```text
//! operad prelie {
//!   gens: m: nonsym;
//!   rel: m(m(x,y),z) - m(x,m(y,z)) - m(m(x,z),y) + m(x,m(z,y));
//! }
//! ```
//!
//! A relator stands for all of its relabelings under permutations of
//! `x, y, z`, so the relation space is the span of that orbit.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_operad::{
    accumulate, display3, symmetric_orbit, Element3, Monomial3, Shape, Signature, Symmetry, Var,
};
use crate::linalg::Subspace;
use crate::Q;

pub type RelationSpace = Subspace<Monomial3, Q>;

#[derive(Debug, Clone)]
pub struct OperadPresentation {
    pub name: String,
    pub signature: Signature,
    /// Relators as supplied, used for display.
    pub relators: Vec<Element3>,
    /// Canonical form used for every comparison.
    pub relations: RelationSpace,
}

impl OperadPresentation {
    /// Builds a presentation whose relations are generated by `relators`
    /// together with their relabelings.
    pub fn new(
        name: impl Into<String>,
        signature: Signature,
        relators: Vec<Element3>,
    ) -> Result<Self> {
        let orbit = symmetric_orbit(&relators, &signature)?;
        let relations = Subspace::span(orbit, signature.basis3())?;
        Ok(OperadPresentation {
            name: name.into(),
            signature,
            relators,
            relations,
        })
    }

    /// Wraps an already computed relation space; the relators are its basis.
    pub fn from_relations(
        name: impl Into<String>,
        signature: Signature,
        relations: RelationSpace,
    ) -> Self {
        let relators = relations.basis().cloned().collect();
        OperadPresentation {
            name: name.into(),
            signature,
            relators,
            relations,
        }
    }

    /// The free operad on `p` non-symmetric, `q` symmetric and `r`
    /// anti-symmetric generators, named `m1.., s1.., a1..`.
    pub fn mag(p: usize, q: usize, r: usize) -> Self {
        let mut gens = Vec::new();
        gens.extend((1..=p).map(|i| (format!("m{i}"), Symmetry::NonSym)));
        gens.extend((1..=q).map(|i| (format!("s{i}"), Symmetry::Sym)));
        gens.extend((1..=r).map(|i| (format!("a{i}"), Symmetry::AntiSym)));
        let signature = Signature::new(gens).expect("generated names are valid");
        let relations = Subspace::zero(signature.basis3());
        OperadPresentation::from_relations(mag_key(p, q, r), signature, relations)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn pqr(&self) -> (usize, usize, usize) {
        self.signature.pqr()
    }

    pub fn dim3(&self) -> usize {
        self.signature.dim3()
    }

    pub fn relation_dim(&self) -> usize {
        self.relations.dim()
    }

    /// Same generator symmetries in the same order and the same relation space.
    pub fn same_relations(&self, other: &Self) -> bool {
        self.signature.shape() == other.signature.shape()
            && self
                .relations
                .equal(&other.relations)
                .expect("equal shapes give equal ambients")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => render_text(self),
            Format::Json => serde_json::to_string_pretty(&self.to_json()).expect("serializable"),
            Format::Latex => render_latex(self),
        }
    }

    pub fn to_json(&self) -> JsonPresentation {
        let sig = &self.signature;
        JsonPresentation {
            name: self.name.clone(),
            generators: sig
                .generators()
                .iter()
                .map(|g| JsonGenerator {
                    name: g.name.clone(),
                    symmetry: g.symmetry,
                })
                .collect(),
            dim3: self.dim3(),
            relation_dim: self.relation_dim(),
            relation_basis: self
                .relations
                .basis()
                .map(|v| {
                    v.iter()
                        .map(|(m, c)| JsonTerm {
                            shape: m.shape,
                            outer: sig.name(m.outer).to_string(),
                            inner: sig.name(m.inner).to_string(),
                            leaves: m.leaves,
                            coeff: c.to_string(),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

pub fn mag_key(p: usize, q: usize, r: usize) -> String {
    format!("mag_{p}_{q}_{r}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            other => Err(Error::Structural(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JsonGenerator {
    pub name: String,
    pub symmetry: Symmetry,
}

#[derive(Debug, Clone, Serialize)]
pub struct JsonTerm {
    pub shape: Shape,
    pub outer: String,
    pub inner: String,
    pub leaves: [Var; 3],
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct JsonPresentation {
    pub name: String,
    pub generators: Vec<JsonGenerator>,
    pub dim3: usize,
    pub relation_dim: usize,
    pub relation_basis: Vec<Vec<JsonTerm>>,
}

/// Makes an arbitrary string usable as the name token of the text format.
fn name_token(name: &str) -> String {
    let cleaned: String = name
        .chars()
        .map(|c| if c.is_whitespace() || c == '{' || c == '}' { '_' } else { c })
        .collect();
    if cleaned.is_empty() {
        "unnamed".into()
    } else {
        cleaned
    }
}

fn render_text(o: &OperadPresentation) -> String {
    let sig = &o.signature;
    let mut out = format!("operad {} {{\n  gens:", name_token(&o.name));
    let decls: Vec<String> = sig
        .generators()
        .iter()
        .map(|g| format!(" {}: {}", g.name, g.symmetry.keyword()))
        .collect();
    out.push_str(&decls.join(","));
    out.push_str(";\n");
    for r in o.relators.iter().filter(|r| !r.is_zero()) {
        let _ = writeln!(out, "  rel: {};", display3(r, sig));
    }
    out.push_str("}\n");
    out
}

fn latex_name(name: &str) -> String {
    format!("\\mathrm{{{}}}", name.replace('_', "\\_"))
}

fn render_latex(o: &OperadPresentation) -> String {
    let sig = &o.signature;
    let mut out = format!("% {}\n", o.name);
    for r in o.relators.iter().filter(|r| !r.is_zero()) {
        out.push_str("\\begin{aligned}\n0 &= ");
        for (i, (m, c)) in r.iter().enumerate() {
            let [a, b, cc] = m.leaves;
            let (on, inn) = (latex_name(sig.name(m.outer)), latex_name(sig.name(m.inner)));
            let body = match m.shape {
                Shape::Left => format!("{on}({inn}({a},{b}),{cc})"),
                Shape::Right => format!("{on}({a},{inn}({b},{cc}))"),
            };
            if i > 0 && i % 3 == 0 {
                out.push_str(" \\\\\n  &\\quad ");
            }
            out.push_str(&crate::free_operad::signed_term(c, &body, i == 0));
        }
        out.push_str("\n\\end{aligned}\n");
    }
    out
}

/// Parses the text format.
pub fn parse(source: &str) -> Result<OperadPresentation> {
    Parser::new(source).file()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

/// A parsed binary tree whose leaves are variables.
enum Tree {
    Leaf(Var),
    Node(String, Box<Tree>, Box<Tree>),
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, expected: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(expected) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, expected: char) -> Result<()> {
        if self.eat(expected) {
            Ok(())
        } else {
            match self.peek() {
                Some(c) => self.syntax(format!("expected `{expected}`, found `{c}`")),
                None => self.syntax(format!("expected `{expected}`, found end of input")),
            }
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if s.is_empty() || s.starts_with(|c: char| c.is_ascii_digit()) {
            return match self.peek() {
                Some(c) => self.syntax(format!("expected a name, found `{c}`")),
                None => self.syntax("expected a name, found end of input"),
            };
        }
        Ok(s)
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        let got = self.ident().or_else(|_| self.syntax(format!("expected `{word}`")))?;
        if got != word {
            return Err(Error::Syntax {
                line,
                column,
                message: format!("expected `{word}`, found `{got}`"),
            });
        }
        Ok(())
    }

    fn operad_name(&mut self) -> Result<String> {
        self.skip_ws();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '{' {
                break;
            }
            s.push(c);
            self.bump();
        }
        if s.is_empty() {
            return self.syntax("expected an operad name");
        }
        Ok(s)
    }

    fn file(mut self) -> Result<OperadPresentation> {
        self.keyword("operad")?;
        let name = self.operad_name()?;
        self.expect('{')?;
        let signature = self.gens()?;
        let mut relators = Vec::new();
        loop {
            if self.eat('}') {
                break;
            }
            self.keyword("rel")?;
            self.expect(':')?;
            relators.push(self.expr(&signature)?);
            self.expect(';')?;
        }
        self.skip_ws();
        if let Some(c) = self.peek() {
            return self.syntax(format!("unexpected `{c}` after closing brace"));
        }
        OperadPresentation::new(name, signature, relators)
    }

    fn gens(&mut self) -> Result<Signature> {
        self.keyword("gens")?;
        self.expect(':')?;
        let mut decls: Vec<(String, Symmetry)> = Vec::new();
        if self.eat(';') {
            return Ok(Signature::empty());
        }
        loop {
            self.skip_ws();
            let (line, column) = (self.line, self.column);
            let name = self.ident()?;
            if matches!(name.as_str(), "x" | "y" | "z") {
                return Err(Error::Syntax {
                    line,
                    column,
                    message: format!("`{name}` is reserved for variables"),
                });
            }
            if decls.iter().any(|(n, _)| *n == name) {
                return Err(Error::Syntax {
                    line,
                    column,
                    message: format!("generator `{name}` declared twice"),
                });
            }
            self.expect(':')?;
            self.skip_ws();
            let (line, column) = (self.line, self.column);
            let word = self.ident()?;
            let symmetry = Symmetry::from_keyword(&word).ok_or_else(|| Error::Syntax {
                line,
                column,
                message: format!("unknown symmetry `{word}`; use nonsym, sym or antisym"),
            })?;
            decls.push((name, symmetry));
            if self.eat(';') {
                break;
            }
            self.expect(',')?;
        }
        Signature::new(decls)
    }

    fn expr(&mut self, sig: &Signature) -> Result<Element3> {
        let mut out = Element3::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = if self.eat('+') {
                Q::one()
            } else if self.eat('-') {
                -Q::one()
            } else if first {
                Q::one()
            } else {
                break;
            };
            first = false;
            let coeff = self.coefficient()?;
            let (line, column) = (self.line, self.column);
            let tree = self.app(sig)?;
            let raw = flatten(&tree, sig).map_err(|message| Error::Arity {
                line,
                column,
                message,
            })?;
            accumulate(&mut out, sig, raw, sign * coeff)?;
        }
        Ok(out)
    }

    /// An optional `RATIONAL "*"` prefix.
    fn coefficient(&mut self) -> Result<Q> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(Q::one());
        }
        let num = self.integer()?;
        let den = if self.eat('/') {
            self.skip_ws();
            let d = self.integer()?;
            if d.is_zero() {
                return self.syntax("zero denominator");
            }
            d
        } else {
            BigInt::one()
        };
        self.expect('*')?;
        Ok(Q::new(num, den))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            digits.push(c);
            self.bump();
        }
        if digits.is_empty() {
            return self.syntax("expected an integer");
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn app(&mut self, sig: &Signature) -> Result<Tree> {
        self.skip_ws();
        let at = (self.line, self.column);
        let name = self.ident()?;
        if let Some(v) = var_of(&name) {
            return Ok(Tree::Leaf(v));
        }
        if sig.find(&name).is_none() {
            return Err(Error::UnknownGenerator(format!("{name} at {}:{}", at.0, at.1)));
        }
        self.expect('(')?;
        let left = self.app(sig)?;
        self.expect(',')?;
        let right = self.app(sig)?;
        self.expect(')')?;
        Ok(Tree::Node(name, Box::new(left), Box::new(right)))
    }
}

fn var_of(name: &str) -> Option<Var> {
    match name {
        "x" => Some(Var::X),
        "y" => Some(Var::Y),
        "z" => Some(Var::Z),
        _ => None,
    }
}

fn flatten(tree: &Tree, sig: &Signature) -> std::result::Result<Monomial3, String> {
    let mut leaves = Vec::new();
    collect_leaves(tree, &mut leaves);
    if leaves.len() != 3 {
        return Err(format!("term has {} inputs, expected 3", leaves.len()));
    }
    for v in Var::ALL {
        if leaves.iter().filter(|&&l| l == v).count() > 1 {
            return Err(format!("variable `{v}` used twice"));
        }
    }
    let leaves = [leaves[0], leaves[1], leaves[2]];
    let id = |n: &str| sig.find(n).expect("checked while parsing");
    match tree {
        Tree::Node(outer, l, r) => match (&**l, &**r) {
            (Tree::Node(inner, ..), Tree::Leaf(_)) => {
                Ok(Monomial3::new(Shape::Left, id(outer), id(inner), leaves))
            }
            (Tree::Leaf(_), Tree::Node(inner, ..)) => {
                Ok(Monomial3::new(Shape::Right, id(outer), id(inner), leaves))
            }
            _ => Err("term must be a binary tree with exactly two operations".into()),
        },
        Tree::Leaf(_) => Err("a bare variable is not a relation term".into()),
    }
}

fn collect_leaves(tree: &Tree, out: &mut Vec<Var>) {
    match tree {
        Tree::Leaf(v) => out.push(*v),
        Tree::Node(_, l, r) => {
            collect_leaves(l, out);
            collect_leaves(r, out);
        }
    }
}
