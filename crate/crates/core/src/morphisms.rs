//! Morphisms between presentations and the adjunctions between black and
//! white products.
//!
//! The derived operations of a black product are read off from products of
//! cochain atoms, so the maps making up the adjunction data are computed the
//! same way. A generator of `O` goes, under the unit, to the unique
//! combination of cup products that multiplies atoms exactly as the
//! generator does; a derived operation of a black product of a white product
//! goes, under the counit, to the payload its cup product leaves on the edge.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::cochain::{CochainTable, CupKind, Family, GenRule, Position, TableKind};
use crate::error::{Error, Result};
use crate::free_operad::{substitute, Element2, GenId, Orientation, Signature, Symmetry};
use crate::functors::{black, com_identification, white_direct};
use crate::linalg::{Ambient, SparseVector, Subspace};
use crate::presentation::OperadPresentation;
use crate::Q;

#[derive(Debug, Clone)]
pub struct OperadMorphism {
    pub source: OperadPresentation,
    pub target: OperadPresentation,
    /// Image of each source generator, over the target signature.
    pub images: Vec<Element2>,
}

impl OperadMorphism {
    /// Checks that there is one image per generator and that images of
    /// symmetric and anti-symmetric generators have the same symmetry.
    pub fn new(
        source: OperadPresentation,
        target: OperadPresentation,
        images: Vec<Element2>,
    ) -> Result<Self> {
        if images.len() != source.signature.len() {
            return Err(Error::MorphismMismatch(format!(
                "{} images for {} generators",
                images.len(),
                source.signature.len()
            )));
        }
        for (g, image) in source.signature.generators().iter().zip(&images) {
            let sign = match g.symmetry {
                Symmetry::NonSym => continue,
                Symmetry::Sym => 1,
                Symmetry::AntiSym => -1,
            };
            if !image.has_swap_sign(&target.signature, sign)? {
                return Err(Error::MorphismMismatch(format!(
                    "image of {} is not {}",
                    g.name,
                    g.symmetry.keyword()
                )));
            }
        }
        Ok(OperadMorphism {
            source,
            target,
            images,
        })
    }

    pub fn identity(o: &OperadPresentation) -> Self {
        OperadMorphism {
            source: o.clone(),
            target: o.clone(),
            images: crate::free_operad::identity_images(&o.signature),
        }
    }

    /// Builds a morphism from `name = expression` pairs, e.g.
    /// `("b", "m - m^op + b")`. Unlisted generators go to zero.
    pub fn from_text(
        source: &OperadPresentation,
        target: &OperadPresentation,
        images: &[(&str, &str)],
    ) -> Result<Self> {
        let mut out = vec![Element2::zero(); source.signature.len()];
        for (name, text) in images {
            let g = source
                .signature
                .find(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            out[g] = parse_element2(&target.signature, text)?;
        }
        OperadMorphism::new(source.clone(), target.clone(), out)
    }

    /// Every relation of the source is sent into the relations of the target.
    pub fn is_morphism(&self) -> Result<bool> {
        for r in self.source.relations.basis() {
            let image = substitute(r, &self.images, &self.target.signature)?;
            if !self.target.relations.contains(&image)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `g ∘ f`, defined when `f`'s target is `g`'s source.
    pub fn compose(g: &OperadMorphism, f: &OperadMorphism) -> Result<OperadMorphism> {
        let same = f.target.signature == g.source.signature
            && f.target.relations.equal(&g.source.relations).unwrap_or(false);
        if !same {
            return Err(Error::MorphismMismatch(format!(
                "cannot compose: {} is not {}",
                f.target.name, g.source.name
            )));
        }
        let images = f
            .images
            .iter()
            .map(|e| map_element2(e, &g.images, &g.target.signature))
            .collect::<Result<_>>()?;
        Ok(OperadMorphism {
            source: f.source.clone(),
            target: g.target.clone(),
            images,
        })
    }

    pub fn same_images(&self, other: &OperadMorphism) -> bool {
        self.images == other.images
    }

    pub fn is_identity(&self) -> bool {
        self.source.signature == self.target.signature
            && self.images == crate::free_operad::identity_images(&self.source.signature)
    }

    pub fn display(&self) -> String {
        let mut out = format!("{} -> {}\n", self.source.name, self.target.name);
        for (g, image) in self.source.signature.generators().iter().zip(&self.images) {
            out.push_str(&format!("  {} |-> {}\n", g.name, image.display(&self.target.signature)));
        }
        out
    }
}

/// Replaces each generator of `e` by its image; `g^op` goes to the
/// opposite of the image of `g`.
pub fn map_element2(e: &Element2, images: &[Element2], target: &Signature) -> Result<Element2> {
    let mut out = Element2::zero();
    for (c, g, o) in e.terms() {
        let image = images
            .get(g)
            .ok_or_else(|| Error::Structural(format!("generator {g} is not mapped")))?;
        let image = match o {
            Orientation::Id => image.clone(),
            Orientation::Op => image.op(target)?,
        };
        out = out.plus(&image.scaled(c));
    }
    Ok(out)
}

/// Parses `[COEFF*]NAME[^op]` summands joined by `+` and `-`.
pub fn parse_element2(sig: &Signature, text: &str) -> Result<Element2> {
    let mut terms = Vec::new();
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(Element2::zero());
    }
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let negative = rest.starts_with('-');
        if rest.starts_with('-') || rest.starts_with('+') {
            rest = &rest[1..];
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        rest = tail;
        let (coeff, body) = match term.split_once('*') {
            Some((c, b)) => (
                c.parse::<Q>()
                    .map_err(|_| Error::Structural(format!("bad coefficient `{c}`")))?,
                b,
            ),
            None => (Q::one(), term),
        };
        let (name, orientation) = match body.strip_suffix("^op") {
            Some(n) => (n, Orientation::Op),
            None => (body, Orientation::Id),
        };
        let g = sig
            .find(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        terms.push((if negative { -coeff } else { coeff }, g, orientation));
    }
    Element2::from_terms(sig, terms)
}

/// The three adjunctions between black and white products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Adjunction {
    Ass,
    ComLie,
    PreLiePerm,
}

impl Adjunction {
    pub const ALL: [Adjunction; 3] = [Adjunction::Ass, Adjunction::ComLie, Adjunction::PreLiePerm];

    pub fn black_family(self) -> Family {
        match self {
            Adjunction::Ass => Family::AssBlack,
            Adjunction::ComLie => Family::ComBlack,
            Adjunction::PreLiePerm => Family::PreLieRBlack,
        }
    }

    pub fn white_family(self) -> Family {
        match self {
            Adjunction::Ass => Family::AssWhite,
            Adjunction::ComLie => Family::LieWhite,
            Adjunction::PreLiePerm => Family::PermWhite,
        }
    }

    fn ass_kind(self) -> TableKind {
        match self {
            Adjunction::PreLiePerm => TableKind::BlackPreLieR,
            _ => TableKind::BlackAss,
        }
    }

    pub fn black(self, o: &OperadPresentation) -> Result<OperadPresentation> {
        black(self.black_family(), o)
    }

    pub fn white(self, o: &OperadPresentation) -> Result<OperadPresentation> {
        white_direct(self.white_family(), o)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Prec,
    Succ,
    Single,
}

/// Source generator and role of each derived operation of a black table.
fn roles(table: &CochainTable) -> Vec<(GenId, Role)> {
    let mut out = vec![(0, Role::Single); table.payload_sig.len()];
    for (g, rule) in table.rules.iter().enumerate() {
        if let GenRule::Black { prec, succ, .. } = *rule {
            match succ {
                Some(s) => {
                    out[prec] = (g, Role::Prec);
                    out[s] = (g, Role::Succ);
                }
                None => out[prec] = (g, Role::Single),
            }
        }
    }
    out
}

/// Reads a derived operation off the products of `e` with the edge.
///
/// `e(E1 x, R0 y)` is `prec(x, y)` on the edge and `e(R0 x, E1 y)` is
/// `-succ(y, x)`; these hold in every table, relative or not.
fn probe(table: &CochainTable, e: &Element2, role: Role) -> Result<Element2> {
    let edge = |a, b| -> Result<Element2> {
        Ok(table
            .product(e, a, b)?
            .remove(&Position::E1)
            .unwrap_or_else(Element2::zero))
    };
    match role {
        Role::Prec | Role::Single => edge(Position::E1, Position::R0),
        Role::Succ => Ok(edge(Position::R0, Position::E1)?
            .op(&table.payload_sig)?
            .scaled(&-Q::one())),
    }
}

/// The action of the black product on a morphism `f: O -> P`.
pub fn black_on_morphism(adj: Adjunction, f: &OperadMorphism) -> Result<OperadMorphism> {
    let source = adj.black(&f.source)?;
    let target = adj.black(&f.target)?;
    let table_o = CochainTable::black(adj.ass_kind(), &f.source.signature)?;
    let table_p = CochainTable::black(adj.ass_kind(), &f.target.signature)?;
    let images = match adj {
        Adjunction::ComLie => {
            let (sig, ident) = com_identification(&table_p.payload_sig, &f.target.signature)?;
            f.images
                .iter()
                .map(|e| map_element2(&probe(&table_p, e, Role::Prec)?, &ident, &sig))
                .collect::<Result<Vec<_>>>()?
        }
        _ => roles(&table_o)
            .into_iter()
            .map(|(g, role)| probe(&table_p, &f.images[g], role))
            .collect::<Result<Vec<_>>>()?,
    };
    OperadMorphism::new(source, target, images)
}

/// The generator of a white table realizing `kind ⊗ h`, taken opposite or not.
fn cup_image(table: &CochainTable, kind: CupKind, h: GenId, o: Orientation) -> Result<Element2> {
    let sig = &table.eval_sig;
    let base = |kind: CupKind| -> Result<Element2> {
        let found = table
            .rules
            .iter()
            .position(|r| *r == GenRule::White { kind, source: h });
        if let Some(i) = found {
            return Element2::generator(sig, i);
        }
        // a cup product with a (anti-)symmetric operation is only stored once
        let sign = match table.payload_sig.symmetry(h) {
            Symmetry::NonSym => None,
            Symmetry::Sym => Some(Q::one()),
            Symmetry::AntiSym => Some(-Q::one()),
        };
        let other = match kind {
            CupKind::Cup => CupKind::CupOp,
            CupKind::CupOp => CupKind::Cup,
            CupKind::Bracket => CupKind::Bracket,
        };
        match (sign, table.rules.iter().position(|r| *r == GenRule::White { kind: other, source: h })) {
            (Some(s), Some(i)) if other != kind => Ok(Element2::generator(sig, i)?.op(sig)?.scaled(&s)),
            _ => Err(Error::Structural(format!(
                "{kind:?} of {} is not an operation of this white product",
                table.payload_sig.name(h)
            ))),
        }
    };
    match (o, kind) {
        (Orientation::Id, k) => base(k),
        (Orientation::Op, CupKind::Cup) => base(CupKind::CupOp)?.op(sig),
        (Orientation::Op, CupKind::CupOp) => base(CupKind::Cup)?.op(sig),
        (Orientation::Op, CupKind::Bracket) => Ok(base(CupKind::Bracket)?.op(sig)?.scaled(&-Q::one())),
    }
}

/// `kind ⊗ e` for a binary combination `e` of the white table's payload.
fn cup_of(table: &CochainTable, kind: CupKind, e: &Element2) -> Result<Element2> {
    let mut out = Element2::zero();
    for (c, h, o) in e.terms() {
        out = out.plus(&cup_image(table, kind, h, o)?.scaled(c));
    }
    Ok(out)
}

/// The action of the white product on a morphism `f: O -> P`.
pub fn white_on_morphism(adj: Adjunction, f: &OperadMorphism) -> Result<OperadMorphism> {
    let source = adj.white(&f.source)?;
    let target = adj.white(&f.target)?;
    let table_o = CochainTable::white(adj.white_family(), &f.source.signature)?;
    let table_p = CochainTable::white(adj.white_family(), &f.target.signature)?;
    let images = table_o
        .rules
        .iter()
        .map(|rule| match *rule {
            GenRule::White { kind, source } => cup_of(&table_p, kind, &f.images[source]),
            GenRule::Black { .. } => Err(Error::Structural("not a white table".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    OperadMorphism::new(source, target, images)
}

/// The counit `black(white(O)) -> O`.
pub fn counit(adj: Adjunction, o: &OperadPresentation) -> Result<OperadMorphism> {
    let w = adj.white(o)?;
    let source = adj.black(&w)?;
    let cup = CochainTable::white(adj.white_family(), &o.signature)?;
    let images = match adj {
        Adjunction::ComLie => (0..w.signature.len())
            .map(|g| probe(&cup, &Element2::generator(&w.signature, g)?, Role::Prec))
            .collect::<Result<Vec<_>>>()?,
        _ => {
            let table = CochainTable::black(adj.ass_kind(), &w.signature)?;
            roles(&table)
                .into_iter()
                .map(|(g, role)| probe(&cup, &Element2::generator(&w.signature, g)?, role))
                .collect::<Result<Vec<_>>>()?
        }
    };
    OperadMorphism::new(source, o.clone(), images)
}

/// The unit `O -> white(black(O))`: each generator goes to the combination
/// of cup products that multiplies atoms as the generator does.
pub fn unit(adj: Adjunction, o: &OperadPresentation) -> Result<OperadMorphism> {
    let b = adj.black(o)?;
    let target = adj.white(&b)?;
    let cup = CochainTable::white(adj.white_family(), &b.signature)?;
    let table = CochainTable::black(adj.ass_kind(), &o.signature)?;
    let ident = identification(adj, &table, o)?;
    let images = (0..o.signature.len())
        .map(|g| realize(&cup, &table, ident.as_ref(), g))
        .collect::<Result<Vec<_>>>()?;
    OperadMorphism::new(o.clone(), target, images)
}

/// For Com, the derived operations of the Ass table rewritten in the
/// operations of the black product with Com.
fn identification(
    adj: Adjunction,
    table: &CochainTable,
    o: &OperadPresentation,
) -> Result<Option<(Signature, Vec<Element2>)>> {
    match adj {
        Adjunction::ComLie => Ok(Some(com_identification(&table.payload_sig, &o.signature)?)),
        _ => Ok(None),
    }
}

/// Products of atoms with payloads rewritten through `ident` when given.
fn products(
    table: &CochainTable,
    e: &Element2,
    a: Position,
    b: Position,
    ident: Option<&(Signature, Vec<Element2>)>,
) -> Result<BTreeMap<Position, Element2>> {
    let raw = table.product(e, a, b)?;
    match ident {
        None => Ok(raw),
        Some((sig, images)) => raw
            .into_iter()
            .map(|(p, v)| Ok((p, map_element2(&v, images, sig)?)))
            .collect(),
    }
}

/// Solves for the combination of `cup`'s operations that multiplies atoms
/// like generator `g` of `table`.
fn realize(
    cup: &CochainTable,
    table: &CochainTable,
    ident: Option<&(Signature, Vec<Element2>)>,
    g: GenId,
) -> Result<Element2> {
    let sig = &cup.eval_sig;
    let mut unknowns: Vec<(GenId, Orientation)> = Vec::new();
    for w in 0..sig.len() {
        unknowns.push((w, Orientation::Id));
        if sig.symmetry(w) == Symmetry::NonSym {
            unknowns.push((w, Orientation::Op));
        }
    }
    let atoms: Vec<Position> = Position::ALL
        .into_iter()
        .filter(|p| cup.complex.allows(*p))
        .collect();
    type Key = (Position, Position, Position, GenId, Orientation);
    let column = |e: &Element2,
                  t: &CochainTable,
                  ident: Option<&(Signature, Vec<Element2>)>,
                  scale: &Q|
     -> Result<SparseVector<Key, Q>> {
        let mut v = SparseVector::zero();
        for &a in &atoms {
            for &b in &atoms {
                for (p, payload) in products(t, e, a, b, ident)? {
                    for (c, h, o) in payload.terms() {
                        v.add_term((a, b, p, h, o), c.clone() * scale.clone());
                    }
                }
            }
        }
        Ok(v)
    };
    let mut columns: BTreeMap<usize, SparseVector<Key, Q>> = BTreeMap::new();
    for (j, (w, o)) in unknowns.iter().enumerate() {
        let e = Element2::from_terms(sig, [(Q::one(), *w, *o)])?;
        columns.insert(j, column(&e, cup, None, &Q::one())?);
    }
    let n = unknowns.len();
    columns.insert(n, column(&Element2::generator(&table.eval_sig, g)?, table, ident, &-Q::one())?);
    let kernel = Subspace::kernel(Ambient::new((0..=n).collect()), |j| columns[j].clone())?;
    let solution = kernel
        .basis()
        .find(|v| !v.get(&n).is_zero())
        .ok_or_else(|| {
            Error::Structural(format!(
                "{} is not realized by cup products",
                table.eval_sig.name(g)
            ))
        })?;
    let scale = Q::one() / solution.get(&n);
    Element2::from_terms(
        sig,
        solution
            .iter()
            .filter(|(j, _)| **j < n)
            .map(|(j, c)| (c.clone() * scale.clone(), unknowns[*j].0, unknowns[*j].1)),
    )
}

/// Outcome of the triangle identities for one presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleReport {
    /// `counit(black O) ∘ black(unit O)` is the identity of `black O`.
    pub black_side: bool,
    /// `white(counit O) ∘ unit(white O)` is the identity of `white O`.
    pub white_side: bool,
}

impl TriangleReport {
    pub fn holds(&self) -> bool {
        self.black_side && self.white_side
    }
}

pub fn triangle_check(adj: Adjunction, o: &OperadPresentation) -> Result<TriangleReport> {
    let b = adj.black(o)?;
    let first = OperadMorphism::compose(&counit(adj, &b)?, &black_on_morphism(adj, &unit(adj, o)?)?)?;
    let w = adj.white(o)?;
    let second = OperadMorphism::compose(&white_on_morphism(adj, &counit(adj, o)?)?, &unit(adj, &w)?)?;
    Ok(TriangleReport {
        black_side: first.is_identity(),
        white_side: second.is_identity(),
    })
}

/// `O -> black(O)` sending each operation to its associated operation, the
/// product of two vertex cochains.
pub fn associated(adj: Adjunction, o: &OperadPresentation) -> Result<OperadMorphism> {
    let target = adj.black(o)?;
    let table = CochainTable::black(adj.ass_kind(), &o.signature)?;
    let ident = identification(adj, &table, o)?;
    let images = (0..o.signature.len())
        .map(|g| {
            let e = Element2::generator(&o.signature, g)?;
            Ok(products(&table, &e, Position::R0, Position::R0, ident.as_ref())?
                .remove(&Position::R0)
                .unwrap_or_else(Element2::zero))
        })
        .collect::<Result<Vec<_>>>()?;
    OperadMorphism::new(o.clone(), target, images)
}
