//! Symbolic cochains on the 1-simplex with coefficients in a generic algebra.
//!
//! A cochain atom is a vector placed at the left vertex (`L0`), at the right
//! vertex (`R0`) or on the edge (`E1`). The differential sends `R0(x)` to
//! `E1(x)` and `L0(x)` to `-E1(x)`. A [`CochainTable`] says how each binary
//! operation multiplies two atoms; evaluating a relator on atoms then yields
//! a relator among the operations appearing in the payload.
//!
//! Two kinds of tables are shipped. Black tables evaluate the generators of an
//! operad and record the products in new non-symmetric operations (`_prec`,
//! `_succ`, `_circ`, `_ast`). Cup tables evaluate tensor products of the cup
//! product with the generators of an operad and record the products in that
//! operad.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_operad::{
    accumulate, Element2, Element3, GenId, Monomial3, Orientation, Shape, Signature, Symmetry,
    Var,
};
use crate::{q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Position {
    L0,
    R0,
    E1,
}

impl Position {
    pub const ALL: [Position; 3] = [Position::L0, Position::R0, Position::E1];

    pub fn degree(self) -> u8 {
        match self {
            Position::E1 => 1,
            _ => 0,
        }
    }

    /// The differential of an atom: `(sign, E1)` for vertex atoms.
    pub fn differential(self) -> Option<i64> {
        match self {
            Position::L0 => Some(-1),
            Position::R0 => Some(1),
            Position::E1 => None,
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Position::L0 => "L0",
            Position::R0 => "R0",
            Position::E1 => "E1",
        })
    }
}

/// Full cochains, or cochains relative to the left or the right vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Complex {
    Full,
    /// Vanishing on the left vertex: atoms `R0` and `E1`.
    RelLeft,
    /// Vanishing on the right vertex: atoms `L0` and `E1`.
    RelRight,
}

impl Complex {
    pub fn allows(self, p: Position) -> bool {
        !matches!(
            (self, p),
            (Complex::RelLeft, Position::L0) | (Complex::RelRight, Position::R0)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Configuration {
    /// Positions of `x`, `y`, `z`.
    pub assignment: [Position; 3],
    pub complex: Complex,
}

impl Configuration {
    pub fn new(assignment: [Position; 3], complex: Complex) -> Result<Self> {
        if let Some(p) = assignment.iter().find(|p| !complex.allows(**p)) {
            return Err(Error::Structural(format!(
                "atom {p} is not available in the {complex:?} complex"
            )));
        }
        Ok(Configuration {
            assignment,
            complex,
        })
    }

    pub fn position(&self, v: Var) -> Position {
        self.assignment[v.index()]
    }

    pub fn degree(&self) -> u8 {
        self.assignment.iter().map(|p| p.degree()).sum()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.assignment;
        write!(f, "(x:{a}, y:{b}, z:{c})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    AssBlack,
    ComBlack,
    PreLieRBlack,
    PreLieLBlack,
    AssWhite,
    LieWhite,
    PermWhite,
}

impl Family {
    pub fn complex(self) -> Complex {
        match self {
            Family::PreLieRBlack | Family::PermWhite => Complex::RelLeft,
            Family::PreLieLBlack => Complex::RelRight,
            _ => Complex::Full,
        }
    }

    pub fn is_black(self) -> bool {
        matches!(
            self,
            Family::AssBlack | Family::ComBlack | Family::PreLieRBlack | Family::PreLieLBlack
        )
    }
}

/// The configurations on which relators are evaluated for a family.
pub fn configs_for(family: Family) -> Vec<Configuration> {
    use Position::*;
    let complex = family.complex();
    let atoms = match complex {
        Complex::Full => [E1, L0, R0],
        Complex::RelLeft => [E1, R0, R0],
        Complex::RelRight => [E1, L0, L0],
    };
    let mut out: Vec<Configuration> = Vec::new();
    for perm in [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ] {
        let c = Configuration {
            assignment: [atoms[perm[0]], atoms[perm[1]], atoms[perm[2]]],
            complex,
        };
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Which product of cochains a tensor-product generator uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CupKind {
    /// `∪ ⊗ g`.
    Cup,
    /// `∪^op ⊗ g`, i.e. `(a, b) ↦ (b ∪ a) ⊗ g(a, b)`.
    CupOp,
    /// `(∪ - ∪^op) ⊗ g`.
    Bracket,
}

/// How one generator multiplies atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenRule {
    /// A generator of the evaluated operad; products are recorded in the
    /// derived operations `prec`/`succ` (non-symmetric) or `prec` alone.
    Black {
        symmetry: Symmetry,
        prec: GenId,
        succ: Option<GenId>,
    },
    /// A tensor product of a cup product with the payload generator `source`.
    White { kind: CupKind, source: GenId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TableKind {
    BlackAss,
    BlackPreLieR,
    BlackPreLieL,
    WhiteCup,
    WhiteCupBracket,
}

/// One summand of a product of two atoms: `coeff * op(first, second)` placed
/// at `position`, with the arguments swapped when `swap` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleTerm {
    pub coeff: i64,
    pub position: Position,
    pub op: GenId,
    pub swap: bool,
}

#[derive(Debug, Clone)]
pub struct CochainTable {
    pub kind: TableKind,
    pub complex: Complex,
    /// Generators that act on cochains.
    pub eval_sig: Signature,
    /// Operations appearing in payloads.
    pub payload_sig: Signature,
    pub rules: Vec<GenRule>,
}

fn cup(a: Position, b: Position) -> Option<Position> {
    use Position::*;
    match (a, b) {
        (R0, R0) => Some(R0),
        (L0, L0) => Some(L0),
        (L0, E1) | (E1, R0) => Some(E1),
        _ => None,
    }
}

fn term(coeff: i64, position: Position, op: GenId, swap: bool) -> RuleTerm {
    RuleTerm {
        coeff,
        position,
        op,
        swap,
    }
}

impl CochainTable {
    /// The table evaluating `sig`'s generators for a black-product family;
    /// the payload signature is the derived one.
    pub fn black(kind: TableKind, sig: &Signature) -> Result<Self> {
        let complex = match kind {
            TableKind::BlackAss => Complex::Full,
            TableKind::BlackPreLieR => Complex::RelLeft,
            TableKind::BlackPreLieL => Complex::RelRight,
            _ => return Err(Error::Structural(format!("{kind:?} is not a black table"))),
        };
        let mut names = Vec::new();
        let mut rules = Vec::new();
        for g in sig.generators() {
            let base = names.len();
            match g.symmetry {
                Symmetry::NonSym => {
                    names.push(format!("{}_prec", g.name));
                    names.push(format!("{}_succ", g.name));
                    rules.push(GenRule::Black {
                        symmetry: g.symmetry,
                        prec: base,
                        succ: Some(base + 1),
                    });
                }
                Symmetry::Sym | Symmetry::AntiSym => {
                    let suffix = if g.symmetry == Symmetry::Sym { "circ" } else { "ast" };
                    names.push(format!("{}_{suffix}", g.name));
                    rules.push(GenRule::Black {
                        symmetry: g.symmetry,
                        prec: base,
                        succ: None,
                    });
                }
            }
        }
        let payload_sig = Signature::new(names.into_iter().map(|n| (n, Symmetry::NonSym)))?;
        Ok(CochainTable {
            kind,
            complex,
            eval_sig: sig.clone(),
            payload_sig,
            rules,
        })
    }

    /// The cup table for a white-product family over the operad `sig`; the
    /// evaluated signature is the derived one.
    pub fn white(family: Family, sig: &Signature) -> Result<Self> {
        let (kind, complex) = match family {
            Family::AssWhite => (TableKind::WhiteCup, Complex::Full),
            Family::PermWhite => (TableKind::WhiteCup, Complex::RelLeft),
            Family::LieWhite => (TableKind::WhiteCupBracket, Complex::Full),
            _ => return Err(Error::Structural(format!("{family:?} is not a white family"))),
        };
        let mut decls = Vec::new();
        let mut rules = Vec::new();
        for g in sig.generators() {
            let mut push = |suffix: &str, symmetry: Symmetry, kind: CupKind| {
                decls.push((format!("{}_{suffix}", g.name), symmetry));
                rules.push(GenRule::White { kind, source: g.id });
            };
            match (kind, g.symmetry) {
                (TableKind::WhiteCup, Symmetry::NonSym) => {
                    push("prec", Symmetry::NonSym, CupKind::Cup);
                    push("succ", Symmetry::NonSym, CupKind::CupOp);
                }
                (TableKind::WhiteCup, Symmetry::Sym) => push("circ", Symmetry::NonSym, CupKind::Cup),
                (TableKind::WhiteCup, Symmetry::AntiSym) => {
                    push("ast", Symmetry::NonSym, CupKind::Cup)
                }
                (_, Symmetry::NonSym) => push("star", Symmetry::NonSym, CupKind::Bracket),
                (_, Symmetry::Sym) => push("brace", Symmetry::AntiSym, CupKind::Bracket),
                (_, Symmetry::AntiSym) => push("cast", Symmetry::Sym, CupKind::Bracket),
            }
        }
        Ok(CochainTable {
            kind,
            complex,
            eval_sig: Signature::new(decls)?,
            payload_sig: sig.clone(),
            rules,
        })
    }

    /// The product `g(a, b)` of two atoms, as a list of summands.
    pub fn rule(&self, g: GenId, a: Position, b: Position) -> Vec<RuleTerm> {
        use Position::*;
        match self.rules[g] {
            GenRule::Black {
                symmetry,
                prec,
                succ,
            } => {
                let succ = succ.unwrap_or(prec);
                // sign carried by the "reversed" entries
                let rev = match symmetry {
                    Symmetry::NonSym | Symmetry::AntiSym => -1,
                    Symmetry::Sym => 1,
                };
                match (a, b) {
                    (L0, E1) | (E1, R0) => vec![term(1, E1, prec, false)],
                    (R0, E1) | (E1, L0) => vec![term(rev, E1, succ, true)],
                    (R0, R0) | (L0, L0) => {
                        vec![term(1, a, prec, false), term(rev, a, succ, true)]
                    }
                    _ => vec![],
                }
            }
            GenRule::White { kind, source } => {
                let mut out = Vec::new();
                if matches!(kind, CupKind::Cup | CupKind::Bracket) {
                    if let Some(p) = cup(a, b) {
                        out.push(term(1, p, source, false));
                    }
                }
                if matches!(kind, CupKind::CupOp | CupKind::Bracket) {
                    if let Some(p) = cup(b, a) {
                        let c = if kind == CupKind::Bracket { -1 } else { 1 };
                        out.push(term(c, p, source, false));
                    }
                }
                out
            }
        }
    }

    /// Evaluates an element of the evaluated signature on a configuration.
    ///
    /// Returns the value at each position with a nonzero payload.
    pub fn evaluate(
        &self,
        e: &Element3,
        config: &Configuration,
    ) -> Result<BTreeMap<Position, Element3>> {
        if config.complex != self.complex {
            return Err(Error::Structural(format!(
                "configuration lives in {:?}, table in {:?}",
                config.complex, self.complex
            )));
        }
        let mut out: BTreeMap<Position, Element3> = BTreeMap::new();
        for (m, c) in e.iter() {
            self.evaluate_monomial(m, c, config, &mut out)?;
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// The edge component of [`CochainTable::evaluate`].
    pub fn eval_relator(&self, e: &Element3, config: &Configuration) -> Result<Element3> {
        Ok(self
            .evaluate(e, config)?
            .remove(&Position::E1)
            .unwrap_or_default())
    }

    fn evaluate_monomial(
        &self,
        m: &Monomial3,
        coeff: &Q,
        config: &Configuration,
        out: &mut BTreeMap<Position, Element3>,
    ) -> Result<()> {
        let pos = |v: Var| config.position(v);
        let [a, b, c] = m.leaves;
        // inner product first, then the outer one
        let (inner_args, lone, lone_first) = match m.shape {
            Shape::Left => ((a, b), c, false),
            Shape::Right => ((b, c), a, true),
        };
        for t_in in self.rule(m.inner, pos(inner_args.0), pos(inner_args.1)) {
            let (u, v) = if t_in.swap {
                (inner_args.1, inner_args.0)
            } else {
                inner_args
            };
            let (pa, pb) = if lone_first {
                (pos(lone), t_in.position)
            } else {
                (t_in.position, pos(lone))
            };
            for t_out in self.rule(m.outer, pa, pb) {
                // the packed inner product is first unless the lone leaf comes
                // first, and the outer rule may swap the two
                let inner_first = lone_first == t_out.swap;
                let raw = if inner_first {
                    Monomial3::new(Shape::Left, t_out.op, t_in.op, [u, v, lone])
                } else {
                    Monomial3::new(Shape::Right, t_out.op, t_in.op, [lone, u, v])
                };
                let k = coeff.clone() * q(t_in.coeff * t_out.coeff);
                accumulate(out.entry(t_out.position).or_default(), &self.payload_sig, raw, k)?;
            }
        }
        Ok(())
    }

    /// The product of two atoms as a normalized binary payload
    /// `(op, first, second) ↦ coeff`, with the output position.
    fn binary(
        &self,
        g: GenId,
        a: (Position, Var),
        b: (Position, Var),
    ) -> BTreeMap<(Position, GenId, Var, Var), Q> {
        let mut out = BTreeMap::new();
        for t in self.rule(g, a.0, b.0) {
            let (mut u, mut v) = if t.swap { (b.1, a.1) } else { (a.1, b.1) };
            let mut c = q(t.coeff);
            match self.payload_sig.symmetry(t.op) {
                Symmetry::NonSym => {}
                s => {
                    if u > v {
                        std::mem::swap(&mut u, &mut v);
                        if s == Symmetry::AntiSym {
                            c = -c;
                        }
                    }
                }
            }
            let slot: &mut Q = out.entry((t.position, t.op, u, v)).or_insert_with(Q::zero);
            *slot += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// The product of two atoms `a(x)` and `b(y)` under a binary combination
    /// of evaluated operations, as binary payloads in `x, y` by position.
    pub fn product(
        &self,
        e: &Element2,
        a: Position,
        b: Position,
    ) -> Result<BTreeMap<Position, Element2>> {
        let (x, y) = (Var::X, Var::Y);
        let mut terms: BTreeMap<Position, Vec<(Q, GenId, Orientation)>> = BTreeMap::new();
        for (c, g, o) in e.terms() {
            if g >= self.eval_sig.len() {
                return Err(Error::Structural(format!("generator index {g} out of range")));
            }
            let products = match o {
                Orientation::Id => self.binary(g, (a, x), (b, y)),
                Orientation::Op => self.binary(g, (b, y), (a, x)),
            };
            for ((p, op, u, _), k) in products {
                let orientation = if u == x { Orientation::Id } else { Orientation::Op };
                terms.entry(p).or_default().push((c.clone() * k, op, orientation));
            }
        }
        let mut out = BTreeMap::new();
        for (p, t) in terms {
            let v = Element2::from_terms(&self.payload_sig, t)?;
            if !v.is_zero() {
                out.insert(p, v);
            }
        }
        Ok(out)
    }

    /// Checks `d(g(a, b)) = g(da, b) + g(a, db)` for every generator and every
    /// pair of vertex atoms allowed in the complex.
    pub fn leibniz_selfcheck(&self) -> bool {
        let (x, y) = (Var::X, Var::Y);
        let vertices: Vec<Position> = [Position::L0, Position::R0]
            .into_iter()
            .filter(|p| self.complex.allows(*p))
            .collect();
        for g in 0..self.eval_sig.len() {
            for &pa in &vertices {
                for &pb in &vertices {
                    let mut lhs: BTreeMap<(Position, GenId, Var, Var), Q> = BTreeMap::new();
                    for ((p, op, u, v), c) in self.binary(g, (pa, x), (pb, y)) {
                        match p.differential() {
                            Some(s) => add(&mut lhs, (Position::E1, op, u, v), c * q(s)),
                            None => return false,
                        }
                    }
                    let mut rhs = BTreeMap::new();
                    let da = pa.differential().expect("vertex atom");
                    for (k, c) in self.binary(g, (Position::E1, x), (pb, y)) {
                        add(&mut rhs, k, c * q(da));
                    }
                    let db = pb.differential().expect("vertex atom");
                    for (k, c) in self.binary(g, (pa, x), (Position::E1, y)) {
                        add(&mut rhs, k, c * q(db));
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// A (anti-)symmetric generator multiplies `(a, b)` and `(b, a)` to the
    /// same value, up to its sign, for every pair of atoms.
    pub fn symmetry_coherence(&self) -> bool {
        let (x, y) = (Var::X, Var::Y);
        for g in 0..self.eval_sig.len() {
            let sign = match self.eval_sig.symmetry(g) {
                Symmetry::NonSym => continue,
                Symmetry::Sym => Q::one(),
                Symmetry::AntiSym => -Q::one(),
            };
            for pa in Position::ALL {
                for pb in Position::ALL {
                    let ab = self.binary(g, (pa, x), (pb, y));
                    let ba: BTreeMap<_, _> = self
                        .binary(g, (pb, y), (pa, x))
                        .into_iter()
                        .map(|(k, c)| (k, c * sign.clone()))
                        .collect();
                    if ab != ba {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every product of two edge atoms vanishes.
    pub fn degree_safe(&self) -> bool {
        (0..self.eval_sig.len()).all(|g| self.rule(g, Position::E1, Position::E1).is_empty())
    }

    /// Every product of atoms at different vertices vanishes.
    pub fn local(&self) -> bool {
        (0..self.eval_sig.len()).all(|g| {
            self.rule(g, Position::L0, Position::R0).is_empty()
                && self.rule(g, Position::R0, Position::L0).is_empty()
        })
    }

    /// Human-readable multiplication table.
    pub fn dump(&self) -> String {
        let mut out = format!("table {:?} on {:?}\n", self.kind, self.complex);
        let (x, y) = (Var::X, Var::Y);
        for g in 0..self.eval_sig.len() {
            let _ = writeln!(
                out,
                "{} ({}):",
                self.eval_sig.name(g),
                self.eval_sig.symmetry(g).keyword()
            );
            for pa in Position::ALL {
                for pb in Position::ALL {
                    if !(self.complex.allows(pa) && self.complex.allows(pb)) {
                        continue;
                    }
                    let terms = self.binary(g, (pa, x), (pb, y));
                    let shown = if terms.is_empty() {
                        "0".to_string()
                    } else {
                        terms
                            .iter()
                            .enumerate()
                            .map(|(i, ((p, op, u, v), c))| {
                                let body = format!("{p}[{}({u},{v})]", self.payload_sig.name(*op));
                                crate::free_operad::signed_term(c, &body, i == 0)
                            })
                            .collect()
                    };
                    let _ = writeln!(out, "  {pa}(x) * {pb}(y) = {shown}");
                }
            }
        }
        out
    }
}

fn add<K: Ord>(map: &mut BTreeMap<K, Q>, k: K, c: Q) {
    let slot = map.entry(k).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        map.retain(|_, v| !v.is_zero());
    }
}
