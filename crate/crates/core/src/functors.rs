//! Operad-level constructions built on the cochain model: black and white
//! products with the three fixed operads on each side, sums, products,
//! polarization and the opposite operad.

use std::collections::BTreeSet;

use num_traits::One;

use crate::cochain::{configs_for, CochainTable, Family, TableKind};
use crate::error::{Error, Result};
use crate::free_operad::{
    accumulate, opposite, substitute, Element2, Element3, Orientation, Signature, Symmetry,
};
use crate::koszul::dual;
use crate::linalg::{SparseVector, Subspace};
use crate::presentation::OperadPresentation;
use crate::recognize::GenTransform;
use crate::Q;

/// Which of the two white-product algorithms to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhiteMethod {
    Direct,
    ViaDual,
}

fn with_relators(
    name: String,
    signature: Signature,
    relators: Vec<Element3>,
) -> Result<OperadPresentation> {
    let mut seen = BTreeSet::new();
    let relators: Vec<Element3> = relators
        .into_iter()
        .filter(|r| !r.is_zero() && seen.insert(r.normalized()))
        .collect();
    let relations = Subspace::span(relators.iter().cloned(), signature.basis3())?;
    Ok(OperadPresentation {
        name,
        signature,
        relators,
        relations,
    })
}

fn black_kind(family: Family) -> Result<TableKind> {
    match family {
        Family::AssBlack => Ok(TableKind::BlackAss),
        Family::PreLieRBlack => Ok(TableKind::BlackPreLieR),
        Family::PreLieLBlack => Ok(TableKind::BlackPreLieL),
        other => Err(Error::Structural(format!(
            "{other:?} is not computed by a black table"
        ))),
    }
}

fn family_label(family: Family) -> &'static str {
    match family {
        Family::AssBlack | Family::AssWhite => "ass",
        Family::ComBlack => "com",
        Family::PreLieRBlack => "prelie",
        Family::PreLieLBlack => "prelie_left",
        Family::LieWhite => "lie",
        Family::PermWhite => "perm",
    }
}

/// The black product of `o` with Ass, right preLie or left preLie.
///
/// Every relation of `o` is evaluated on each configuration of the family;
/// the evaluations span the relations of the product.
pub fn black(family: Family, o: &OperadPresentation) -> Result<OperadPresentation> {
    if family == Family::ComBlack {
        return black_com(o);
    }
    let table = CochainTable::black(black_kind(family)?, &o.signature)?;
    let mut relators = Vec::new();
    for r in o.relations.basis() {
        for c in configs_for(family) {
            relators.push(table.eval_relator(r, &c)?);
        }
    }
    with_relators(
        format!("black_{}({})", family_label(family), o.name),
        table.payload_sig,
        relators,
    )
}

/// Signature of the black product with Com, with the images of the
/// derived Ass operations in it.
pub(crate) fn com_identification(ass_sig: &Signature, source: &Signature) -> Result<(Signature, Vec<Element2>)> {
    let mut decls = Vec::new();
    for g in source.generators() {
        decls.push(match g.symmetry {
            Symmetry::NonSym => (format!("{}_star", g.name), Symmetry::NonSym),
            Symmetry::Sym => (format!("{}_brace", g.name), Symmetry::AntiSym),
            Symmetry::AntiSym => (format!("{}_cast", g.name), Symmetry::Sym),
        });
    }
    let sig = Signature::new(decls)?;
    let mut images = Vec::with_capacity(ass_sig.len());
    for (target, g) in source.generators().iter().enumerate() {
        images.push(Element2::generator(&sig, target)?);
        if g.symmetry == Symmetry::NonSym {
            images.push(Element2::opposite_of(&sig, target)?);
        }
    }
    debug_assert_eq!(images.len(), ass_sig.len());
    Ok((sig, images))
}

/// The black product with Com: the black product with Ass with each `succ`
/// identified with the opposite of its `prec`.
pub fn black_com(o: &OperadPresentation) -> Result<OperadPresentation> {
    let ass = black(Family::AssBlack, o)?;
    let (sig, images) = com_identification(&ass.signature, &o.signature)?;
    let relators = ass
        .relations
        .basis()
        .map(|r| substitute(r, &images, &sig))
        .collect::<Result<Vec<_>>>()?;
    with_relators(format!("black_com({})", o.name), sig, relators)
}

/// The white product computed as the largest space of relations that the
/// cup-product operations satisfy on cochains with values in an `o`-algebra.
pub fn white_direct(family: Family, o: &OperadPresentation) -> Result<OperadPresentation> {
    let table = CochainTable::white(family, &o.signature)?;
    let configs = configs_for(family);
    let mut failure = None;
    let relations = Subspace::kernel(table.eval_sig.basis3(), |m| {
        let mut image = SparseVector::zero();
        for (i, c) in configs.iter().enumerate() {
            let unit = Element3::unit(*m);
            match table.eval_relator(&unit, c) {
                Ok(v) => {
                    for (k, coeff) in o.relations.reduce(&v).iter() {
                        image.add_term((i, *k), coeff.clone());
                    }
                }
                Err(e) => failure = Some(e),
            }
        }
        image
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(OperadPresentation::from_relations(
        format!("white_{}({})", family_label(family), o.name),
        table.eval_sig,
        relations,
    ))
}

/// The black family whose products are Koszul dual to a white family.
pub fn dual_family(family: Family) -> Result<Family> {
    match family {
        Family::AssWhite => Ok(Family::AssBlack),
        Family::LieWhite => Ok(Family::ComBlack),
        Family::PermWhite => Ok(Family::PreLieRBlack),
        other => Err(Error::Structural(format!("{other:?} is not a white family"))),
    }
}

/// Change of generators carrying the dual of a black product onto the
/// naming used by [`white_direct`].
///
/// Generators correspond by position. The cup product `∪^op ⊗ g` is taken
/// with its arguments in the order of the cochains, while the black `succ`
/// records them reversed, so each `succ` slot is sent to `succ^op`.
pub fn via_dual_alignment(family: Family, o: &Signature) -> GenTransform {
    let mut t = GenTransform::identity(family_width(family, o));
    if matches!(family, Family::AssWhite | Family::PermWhite) {
        let mut slot = 0;
        for g in o.generators() {
            if g.symmetry == Symmetry::NonSym {
                t.orientations[slot + 1] = Orientation::Op;
                slot += 2;
            } else {
                slot += 1;
            }
        }
    }
    t
}

/// Identification of the left preLie black product with the opposite of the
/// right one.
///
/// Swapping the two vertices and negating edge cochains carries the right
/// relative complex onto the left one. Under this isomorphism `prec` and
/// `succ` trade places and `circ` changes sign, so
/// `mirror.apply_space(opposite(right))` equals the left product.
pub fn left_right_mirror(source: &Signature) -> GenTransform {
    let mut t = GenTransform::identity(family_width(Family::AssBlack, source));
    let mut slot = 0;
    for g in source.generators() {
        match g.symmetry {
            Symmetry::NonSym => {
                t.targets.swap(slot, slot + 1);
                slot += 2;
            }
            Symmetry::Sym => {
                t.signs[slot] = -1;
                slot += 1;
            }
            Symmetry::AntiSym => slot += 1,
        }
    }
    t
}

fn family_width(family: Family, o: &Signature) -> usize {
    let (p, q, r) = o.pqr();
    match family {
        Family::LieWhite | Family::ComBlack => p + q + r,
        _ => 2 * p + q + r,
    }
}

/// The white product computed as the Koszul dual of a black product of duals.
pub fn white_via_dual(family: Family, o: &OperadPresentation) -> Result<OperadPresentation> {
    let black_side = black(dual_family(family)?, &dual(o)?)?;
    let computed = dual(&black_side)?;
    let direct_sig = CochainTable::white(family, &o.signature)?.eval_sig;
    if direct_sig.shape() != computed.signature.shape() {
        return Err(Error::Structural(
            "dual side produced a signature of a different shape".into(),
        ));
    }
    let t = via_dual_alignment(family, &o.signature);
    let relations = t.apply_space(&computed.relations, &direct_sig)?;
    Ok(OperadPresentation::from_relations(
        format!("white_{}({})", family_label(family), o.name),
        direct_sig,
        relations,
    ))
}

pub fn white(family: Family, o: &OperadPresentation, method: WhiteMethod) -> Result<OperadPresentation> {
    match method {
        WhiteMethod::Direct => white_direct(family, o),
        WhiteMethod::ViaDual => white_via_dual(family, o),
    }
}

fn joint_signature(o: &Signature, p: &Signature) -> Result<Signature> {
    let names: BTreeSet<&str> = o.generators().iter().map(|g| g.name.as_str()).collect();
    let clash = p.generators().iter().any(|g| names.contains(g.name.as_str()));
    let decl = |prefix: &str, s: &Signature| -> Vec<(String, Symmetry)> {
        s.generators()
            .iter()
            .map(|g| {
                let name = if clash { format!("{prefix}{}", g.name) } else { g.name.clone() };
                (name, g.symmetry)
            })
            .collect()
    };
    let mut all = decl("l_", o);
    all.extend(decl("r_", p));
    Signature::new(all)
}

fn shifted(e: &Element3, offset: usize, sig: &Signature) -> Result<Element3> {
    let mut out = Element3::zero();
    for (m, c) in e.iter() {
        let mut raw = *m;
        raw.outer += offset;
        raw.inner += offset;
        accumulate(&mut out, sig, raw, c.clone())?;
    }
    Ok(out)
}

fn embedded_relators(o: &OperadPresentation, p: &OperadPresentation, sig: &Signature) -> Result<Vec<Element3>> {
    let mut out: Vec<Element3> = o.relations.basis().cloned().collect();
    for r in p.relations.basis() {
        out.push(shifted(r, o.signature.len(), sig)?);
    }
    Ok(out)
}

/// The free product: both sets of operations, no relations between them.
pub fn sum(o: &OperadPresentation, p: &OperadPresentation) -> Result<OperadPresentation> {
    let sig = joint_signature(&o.signature, &p.signature)?;
    let relators = embedded_relators(o, p, &sig)?;
    with_relators(format!("sum({},{})", o.name, p.name), sig, relators)
}

/// Like [`sum`], but every composite mixing the two operads vanishes.
pub fn prod(o: &OperadPresentation, p: &OperadPresentation) -> Result<OperadPresentation> {
    let sig = joint_signature(&o.signature, &p.signature)?;
    let split = o.signature.len();
    let mut relators = embedded_relators(o, p, &sig)?;
    for m in sig.basis3().keys() {
        if (m.outer < split) != (m.inner < split) {
            relators.push(Element3::unit(*m));
        }
    }
    with_relators(format!("prod({},{})", o.name, p.name), sig, relators)
}

/// The signature `g_prec, g_succ` / `g_circ` / `g_ast` shared by the black
/// products with Ass and preLie, and the polarizing images of the
/// generators of `source` in it.
pub fn polarization(source: &Signature) -> Result<(Signature, Vec<Element2>)> {
    let table = CochainTable::black(TableKind::BlackAss, source)?;
    let sig = table.payload_sig;
    let one = Q::one();
    let mut images = Vec::new();
    let mut slot = 0;
    for g in source.generators() {
        let image = match g.symmetry {
            Symmetry::NonSym => {
                slot += 2;
                Element2::from_terms(
                    &sig,
                    [(one.clone(), slot - 2, Orientation::Id), (one.clone(), slot - 1, Orientation::Id)],
                )?
            }
            Symmetry::Sym | Symmetry::AntiSym => {
                let sign = if g.symmetry == Symmetry::Sym { one.clone() } else { -one.clone() };
                slot += 1;
                Element2::from_terms(
                    &sig,
                    [(one.clone(), slot - 1, Orientation::Id), (sign, slot - 1, Orientation::Op)],
                )?
            }
        };
        images.push(image);
    }
    Ok((sig, images))
}

/// The admissible operad: splittings of the operations whose polarizations
/// satisfy the relations of `o`.
pub fn adm(o: &OperadPresentation) -> Result<OperadPresentation> {
    let (sig, images) = polarization(&o.signature)?;
    let relators = o
        .relations
        .basis()
        .map(|r| substitute(r, &images, &sig))
        .collect::<Result<Vec<_>>>()?;
    with_relators(format!("adm({})", o.name), sig, relators)
}

pub fn opposite_operad(o: &OperadPresentation) -> Result<OperadPresentation> {
    let relators = o
        .relators
        .iter()
        .map(|r| opposite(r, &o.signature))
        .collect::<Result<Vec<_>>>()?;
    let mut out = with_relators(format!("opp({})", o.name), o.signature.clone(), relators)?;
    // relators may not span the orbit; recompute from the relation basis
    let basis = o
        .relations
        .basis()
        .map(|r| opposite(r, &o.signature))
        .collect::<Result<Vec<_>>>()?;
    out.relations = Subspace::span(basis, o.signature.basis3())?;
    Ok(out)
}
