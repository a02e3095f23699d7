//! Operad expressions given on the command line.
//!
//! An expression is a catalog key, a free operad literal such as
//! `mag_{1,0,0}`, a path to a presentation file, or a parenthesized
//! application such as `(black ass (dual postcom))`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use maninkit::cochain::Family;
use maninkit::functors::{adm, black, opposite_operad, prod, sum, white, WhiteMethod};
use maninkit::koszul::dual;
use maninkit::presentation::{parse, OperadPresentation};
use maninkit::{zoo, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Atom(String),
    Black(Family, Box<Expr>),
    White(Family, Box<Expr>),
    Dual(Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Prod(Box<Expr>, Box<Expr>),
    Adm(Box<Expr>),
    Opp(Box<Expr>),
}

pub fn black_family(word: &str) -> Option<Family> {
    match word {
        "ass" => Some(Family::AssBlack),
        "com" => Some(Family::ComBlack),
        "prelie" => Some(Family::PreLieRBlack),
        "prelie-left" => Some(Family::PreLieLBlack),
        _ => None,
    }
}

pub fn white_family(word: &str) -> Option<Family> {
    match word {
        "ass" => Some(Family::AssWhite),
        "lie" => Some(Family::LieWhite),
        "perm" => Some(Family::PermWhite),
        _ => None,
    }
}

fn usage(message: impl Into<String>) -> Error {
    Error::Syntax {
        line: 1,
        column: 1,
        message: message.into(),
    }
}

fn tokenize(words: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for word in words {
        let mut current = String::new();
        for c in word.chars() {
            if c == '(' || c == ')' {
                if !current.is_empty() {
                    out.push(std::mem::take(&mut current));
                }
                out.push(c.to_string());
            } else if c.is_whitespace() {
                if !current.is_empty() {
                    out.push(std::mem::take(&mut current));
                }
            } else {
                current.push(c);
            }
        }
        if !current.is_empty() {
            out.push(current);
        }
    }
    out
}

struct Parser {
    tokens: Vec<String>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Result<String> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| usage("expression ends too early"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expr(&mut self) -> Result<Expr> {
        let t = self.next()?;
        match t.as_str() {
            "(" => {
                let verb = self.next()?;
                let e = self.application(&verb)?;
                match self.next()?.as_str() {
                    ")" => Ok(e),
                    other => Err(usage(format!("expected `)`, found `{other}`"))),
                }
            }
            ")" => Err(usage("unexpected `)`")),
            _ => Ok(Expr::Atom(t)),
        }
    }

    fn application(&mut self, verb: &str) -> Result<Expr> {
        let boxed = |p: &mut Parser| p.expr().map(Box::new);
        Ok(match verb {
            "black" => {
                let word = self.next()?;
                let f = black_family(&word).ok_or_else(|| usage(format!("unknown black family `{word}`")))?;
                Expr::Black(f, boxed(self)?)
            }
            "white" => {
                let word = self.next()?;
                let f = white_family(&word).ok_or_else(|| usage(format!("unknown white family `{word}`")))?;
                Expr::White(f, boxed(self)?)
            }
            "dual" => Expr::Dual(boxed(self)?),
            "adm" => Expr::Adm(boxed(self)?),
            "opp" => Expr::Opp(boxed(self)?),
            "sum" => Expr::Sum(boxed(self)?, boxed(self)?),
            "prod" => Expr::Prod(boxed(self)?, boxed(self)?),
            other => return Err(usage(format!("unknown operation `{other}`"))),
        })
    }
}

/// Parses exactly `count` expressions from command-line words.
pub fn parse_exprs(words: &[String], count: usize) -> Result<Vec<Expr>> {
    let mut p = Parser {
        tokens: tokenize(words),
        pos: 0,
    };
    let exprs = (0..count).map(|_| p.expr()).collect::<Result<Vec<_>>>()?;
    if p.pos != p.tokens.len() {
        return Err(usage(format!("unexpected `{}` after the expression", p.tokens[p.pos])));
    }
    Ok(exprs)
}

/// Where atoms are looked up: presentation files from `--zoo-dir` first,
/// then the built-in catalog, then the file system.
#[derive(Debug, Default)]
pub struct Catalog {
    extra: BTreeMap<String, OperadPresentation>,
}

impl Catalog {
    pub fn with_dir(dir: Option<&Path>) -> Result<Self> {
        let mut extra = BTreeMap::new();
        if let Some(dir) = dir {
            let entries = fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
            let mut paths: Vec<_> = entries.filter_map(|e| e.ok()).map(|e| e.path()).collect();
            paths.sort();
            for path in paths.into_iter().filter(|p| p.extension().is_some_and(|x| x == "op")) {
                let o = read_file(&path)?;
                if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                    extra.insert(stem.to_string(), o.clone());
                }
                extra.insert(o.name.clone(), o);
            }
        }
        Ok(Catalog { extra })
    }

    pub fn resolve(&self, atom: &str) -> Result<OperadPresentation> {
        if let Some(o) = self.extra.get(atom) {
            return Ok(o.clone());
        }
        match zoo::get(atom) {
            Ok(o) => Ok(o),
            Err(err) if Path::new(atom).is_file() => read_file(Path::new(atom)).map_err(|e| match e {
                Error::Io(_) => err,
                other => other,
            }),
            Err(Error::UnknownOperad { key, mut valid }) => {
                valid.extend(self.extra.keys().cloned());
                Err(Error::UnknownOperad { key, valid })
            }
            Err(e) => Err(e),
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<OperadPresentation> {
        match e {
            Expr::Atom(a) => self.resolve(a),
            Expr::Black(f, x) => black(*f, &self.eval(x)?),
            Expr::White(f, x) => white(*f, &self.eval(x)?, WhiteMethod::Direct),
            Expr::Dual(x) => dual(&self.eval(x)?),
            Expr::Sum(a, b) => sum(&self.eval(a)?, &self.eval(b)?),
            Expr::Prod(a, b) => prod(&self.eval(a)?, &self.eval(b)?),
            Expr::Adm(x) => adm(&self.eval(x)?),
            Expr::Opp(x) => opposite_operad(&self.eval(x)?),
        }
    }
}

pub fn read_file(path: &Path) -> Result<OperadPresentation> {
    let source = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&source)
}
