//! The acceptance checks, numbered 1 to 20, as library functions.
//!
//! Each criterion runs a list of named checks. A check that cannot be
//! computed at all counts as a failure and carries the error in its detail.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cochain::{configs_for, CochainTable, Family, TableKind};
use crate::error::Result;
use crate::free_operad::{basis3, canonicalize, permutations, Element3, Monomial3, Shape, Signature};
use crate::functors::{
    adm, black, black_com, dual_family, left_right_mirror, opposite_operad, prod, sum, via_dual_alignment,
    white_direct, white_via_dual,
};
use crate::koszul::{dual, pairing_determinant, pairing_matrix};
use crate::linalg::{rank, SparseVector, Subspace};
use crate::morphisms::{associated, counit, triangle_check, unit, Adjunction, OperadMorphism};
use crate::presentation::{parse, Format, OperadPresentation as P};
use crate::recognize::{find_transform, GenTransform};
use crate::zoo;
use crate::Q;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One line, `PASS 07 title (n checks)` or `FAIL ...` with the first
    /// failing check.
    pub fn summary(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {:02} {} ({} checks)", self.id, self.title, self.checks.len());
        if let Some(c) = self.failures().next() {
            line.push_str(&format!(": {} [{}]", c.label, c.detail));
        }
        line
    }
}

/// Groups of criteria selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Black and white product computations and the structural identities.
    Paper,
    Duality,
    Adjunction,
    All,
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Suite::Paper),
            "duality" => Ok(Suite::Duality),
            "adjunction" => Ok(Suite::Adjunction),
            "all" => Ok(Suite::All),
            other => Err(crate::Error::Structural(format!("unknown suite `{other}`"))),
        }
    }
}

pub const TITLES: [&str; 20] = [
    "black products of Lie",
    "black products of Ass",
    "black products of Com",
    "black products of preLie",
    "black products of Leib",
    "black products of Pois",
    "black products of Perm",
    "black products of LieAdm",
    "post-Lie and post-commutative",
    "free operad laws",
    "Koszul duals",
    "pairing nondegeneracy",
    "white products",
    "white methods agree",
    "complementarity",
    "left and right preLie",
    "named morphisms",
    "adjunctions",
    "square of operads",
    "property suites",
];

pub fn criteria(suite: Suite) -> Vec<u8> {
    match suite {
        Suite::Paper => vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 13, 16, 19],
        Suite::Duality => vec![11, 12, 14, 15],
        Suite::Adjunction => vec![17, 18],
        Suite::All => (1..=20).collect(),
    }
}

pub fn run(suite: Suite) -> Vec<CriterionReport> {
    criteria(suite).into_iter().map(run_criterion).collect()
}

pub fn run_criterion(id: u8) -> CriterionReport {
    let checks = match id {
        1 => c01(),
        2 => c02(),
        3 => c03(),
        4 => c04(),
        5 => c05(),
        6 => c06(),
        7 => c07(),
        8 => c08(),
        9 => c09(),
        10 => c10(),
        11 => c11(),
        12 => c12(),
        13 => c13(),
        14 => c14(),
        15 => c15(),
        16 => c16(),
        17 => c17(),
        18 => c18(),
        19 => c19(),
        20 => c20(),
        _ => vec![fail(format!("criterion {id}"), "no such criterion".into())],
    };
    CriterionReport {
        id,
        title: (id as usize).checked_sub(1).and_then(|i| TITLES.get(i)).copied().unwrap_or("unknown"),
        checks,
    }
}

fn fail(label: String, detail: String) -> Check {
    Check {
        label,
        passed: false,
        detail,
    }
}

/// Runs a fallible boolean check.
fn check(label: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let label = label.into();
    match f() {
        Ok((passed, detail)) => Check { label, passed, detail },
        Err(e) => fail(label, format!("error: {e}")),
    }
}

fn z(key: &str) -> Result<P> {
    zoo::get(key)
}

/// `computed` is `expected` up to a change of generators.
fn iso(label: impl Into<String>, expected: impl FnOnce() -> Result<P>, computed: impl FnOnce() -> Result<P>) -> Check {
    check(label, || {
        let (e, c) = (expected()?, computed()?);
        if e.same_relations(&c) {
            return Ok((true, "equal".into()));
        }
        Ok(match find_transform(&e, &c)? {
            Some(t) => (true, format!("via [{}]", t.display(&e.signature, &c.signature))),
            None => (
                false,
                format!(
                    "no identification: dim {}/{} against {}/{}",
                    c.relation_dim(),
                    c.dim3(),
                    e.relation_dim(),
                    e.dim3()
                ),
            ),
        })
    })
}

/// Literal equality of relation spaces in the same generator order.
fn same(label: impl Into<String>, expected: impl FnOnce() -> Result<P>, computed: impl FnOnce() -> Result<P>) -> Check {
    check(label, || {
        let (e, c) = (expected()?, computed()?);
        let ok = e.same_relations(&c);
        Ok((ok, format!("dim {}/{} against {}/{}", c.relation_dim(), c.dim3(), e.relation_dim(), e.dim3())))
    })
}

fn ass_b(k: &str) -> Result<P> {
    black(Family::AssBlack, &z(k)?)
}

fn com_b(k: &str) -> Result<P> {
    black_com(&z(k)?)
}

fn prelie_b(k: &str) -> Result<P> {
    black(Family::PreLieRBlack, &z(k)?)
}

fn white_of(family: Family, k: &str) -> Result<P> {
    white_direct(family, &z(k)?)
}

fn c01() -> Vec<Check> {
    vec![
        iso("Ass_black(Lie) = Ass", || z("ass"), || ass_b("lie")),
        iso("preLie_black(Lie) = preLie", || z("prelie"), || prelie_b("lie")),
        iso("Com_black(Lie) = Com", || z("com"), || com_b("lie")),
    ]
}

fn c02() -> Vec<Check> {
    vec![
        iso("Ass_black(Ass) = Ass x Ass", || prod(&z("ass")?, &z("ass")?), || ass_b("ass")),
        iso("Com_black(Ass) = nilAss", || z("nilass"), || com_b("ass")),
        iso("preLie_black(Ass) = Dend", || z("dend"), || prelie_b("ass")),
    ]
}

fn c03() -> Vec<Check> {
    vec![
        iso("Com_black(Com) = nilLie", || z("nillie"), || com_b("com")),
        iso("preLie_black(Com) = Zinb", || z("zinb"), || prelie_b("com")),
        iso(
            "Ass_black(Com) = dual of Ass_white(Lie)",
            || dual(&white_of(Family::AssWhite, "lie")?),
            || ass_b("com"),
        ),
        iso("Ass_black(Com) = nilAss", || z("nilass"), || ass_b("com")),
    ]
}

fn c04() -> Vec<Check> {
    vec![
        iso("Ass_black(preLie) = Dend", || z("dend"), || ass_b("prelie")),
        iso("Com_black(preLie) = Zinb", || z("zinb"), || com_b("prelie")),
        iso("preLie_black(preLie) = LDend", || z("ldend"), || prelie_b("prelie")),
    ]
}

fn c05() -> Vec<Check> {
    vec![
        iso("Ass_black(Leib) = diAss", || z("diass"), || ass_b("leib")),
        iso("Com_black(Leib) = Perm", || z("perm"), || com_b("leib")),
        iso("preLie_black(Leib) = preLieBulletLeib", || z("preLieBulletLeib"), || prelie_b("leib")),
    ]
}

fn c06() -> Vec<Check> {
    vec![
        iso("Ass_black(Pois) = assBulletPois", || z("assBulletPois"), || ass_b("pois")),
        iso("Com_black(Pois) = nilLie x Com", || prod(&z("nillie")?, &z("com")?), || com_b("pois")),
        iso("preLie_black(Pois) = prePois", || z("prepois"), || prelie_b("pois")),
    ]
}

fn c07() -> Vec<Check> {
    vec![
        iso("Ass_black(Perm) = nilAss x nilAss", || prod(&z("nilass")?, &z("nilass")?), || ass_b("perm")),
        iso("Com_black(Perm) = nilAss", || z("nilass"), || com_b("perm")),
        iso("preLie_black(Perm) = preLieBulletPerm", || z("preLieBulletPerm"), || prelie_b("perm")),
    ]
}

fn c08() -> Vec<Check> {
    vec![
        iso("Ass_black(LieAdm) = adm(Ass)", || adm(&z("ass")?), || ass_b("lieadm")),
        iso("Com_black(LieAdm) = adm(Com)", || adm(&z("com")?), || com_b("lieadm")),
        iso("preLie_black(LieAdm) = adm(preLie)", || adm(&z("prelie")?), || prelie_b("lieadm")),
    ]
}

fn c09() -> Vec<Check> {
    let postcom_dual = || dual(&z("postcom")?);
    vec![
        iso("Ass_black(postLie) = Tridend", || z("tridend"), || ass_b("postlie")),
        iso("Com_black(postLie) = postCom", || z("postcom"), || com_b("postlie")),
        iso("Ass_black(dual postCom) = Triass", || z("triass"), || black(Family::AssBlack, &postcom_dual()?)),
        iso("Com_black(dual postCom) = ComTrias", || z("comtrias"), || black_com(&postcom_dual()?)),
    ]
}

fn c10() -> Vec<Check> {
    let mut out = Vec::new();
    for p in 0..3 {
        for q in 0..3 {
            for r in 0..3 {
                if p + q + r > 3 {
                    continue;
                }
                out.push(same(
                    format!("Ass_black(Mag_{p}{q}{r}) = Mag_{}00", 2 * p + q + r),
                    || Ok(P::mag(2 * p + q + r, 0, 0)),
                    || black(Family::AssBlack, &P::mag(p, q, r)),
                ));
                out.push(iso(
                    format!("Com_black(Mag_{p}{q}{r}) = Mag_{p}{r}{q}"),
                    || Ok(P::mag(p, r, q)),
                    || black_com(&P::mag(p, q, r)),
                ));
            }
        }
    }
    out
}

const DUAL_PAIRS: [(&str, &str); 8] = [
    ("ass", "ass"),
    ("com", "lie"),
    ("prelie", "perm"),
    ("leib", "zinb"),
    ("diass", "dend"),
    ("tridend", "triass"),
    ("postcom", "postcomdual"),
    ("pois", "pois"),
];

const SUM_PAIRS: [(&str, &str); 5] = [
    ("ass", "com"),
    ("lie", "prelie"),
    ("leib", "perm"),
    ("dend", "com"),
    ("pois", "lie"),
];

fn c11() -> Vec<Check> {
    let mut out = Vec::new();
    for (a, b) in DUAL_PAIRS {
        // Pois is self-dual only after exchanging the roles of its operations.
        if a == b && a == "pois" {
            out.push(iso("dual(pois) = pois", || z(b), || dual(&z(a)?)));
        } else {
            out.push(same(format!("dual({a}) = {b}"), || z(b), || dual(&z(a)?)));
            out.push(same(format!("dual({b}) = {a}"), || z(a), || dual(&z(b)?)));
        }
    }
    for key in zoo::keys() {
        out.push(same(format!("dual(dual({key})) = {key}"), || z(key), || dual(&dual(&z(key)?)?)));
    }
    for (a, b) in SUM_PAIRS {
        out.push(same(
            format!("dual(sum({a},{b})) = prod of duals"),
            || prod(&dual(&z(a)?)?, &dual(&z(b)?)?),
            || dual(&sum(&z(a)?, &z(b)?)?),
        ));
    }
    out
}

fn c12() -> Vec<Check> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for o in zoo::all() {
        let shape = o.signature.shape();
        if !seen.insert(shape.clone()) {
            continue;
        }
        out.push(check(format!("pairing on the signature of {}", o.name), || {
            let det = pairing_determinant(&o.signature)?;
            Ok((det != Q::from_integer(0.into()), format!("determinant {det}")))
        }));
    }
    out
}

fn c13() -> Vec<Check> {
    use Family::{AssWhite as A, LieWhite as L, PermWhite as W};
    let mag = |p, q, r| move || Ok(P::mag(p, q, r));
    vec![
        iso("Ass_white(Com) = Ass", || z("ass"), || white_of(A, "com")),
        iso("Ass_white(Lie) = Mag_100", mag(1, 0, 0), || white_of(A, "lie")),
        iso("Ass_white(Zinb) = Dend", || z("dend"), || white_of(A, "zinb")),
        iso("Ass_white(Leib) = assCircLeib", || z("assCircLeib"), || white_of(A, "leib")),
        iso("Perm_white(Lie) = Leib", || z("leib"), || white_of(W, "lie")),
        iso("Perm_white(Ass) = diAss", || z("diass"), || white_of(W, "ass")),
        iso("Perm_white(Pois) = dual prePois", || z("dualprepois"), || white_of(W, "pois")),
        iso("Perm_white(preLie) = permCircPreLie", || z("permCircPreLie"), || white_of(W, "prelie")),
        iso("Lie_white(Ass) = Mag_100", mag(1, 0, 0), || white_of(L, "ass")),
        iso("Lie_white(preLie) = Mag_100", mag(1, 0, 0), || white_of(L, "prelie")),
        iso("Lie_white(Lie) = Mag_010", mag(0, 1, 0), || white_of(L, "lie")),
        iso("Lie_white(Pois) = Lie + Mag_010", || sum(&z("lie")?, &P::mag(0, 1, 0)), || white_of(L, "pois")),
        iso("Lie_white(Perm) = Leib", || z("leib"), || white_of(L, "perm")),
        iso("Lie_white(Zinb) = preLie", || z("prelie"), || white_of(L, "zinb")),
    ]
}

const WHITE: [Family; 3] = [Family::AssWhite, Family::LieWhite, Family::PermWhite];

fn c14() -> Vec<Check> {
    let mut out = Vec::new();
    for family in WHITE {
        for (key, o) in zoo::keys().into_iter().zip(zoo::all()) {
            out.push(same(
                format!("{family:?} on {key}"),
                || white_direct(family, o),
                || white_via_dual(family, o),
            ));
        }
    }
    out
}

/// `black_F(O)` and `white_{F!}(O!)` have complementary dimensions and
/// annihilate each other under the pairing.
pub fn complementarity(white_family: Family, o: &P) -> Result<(bool, String)> {
    let b = black(dual_family(white_family)?, o)?;
    let o_dual = dual(o)?;
    let w = white_direct(white_family, &o_dual)?;
    let dims = b.relation_dim() + w.relation_dim() == b.dim3();
    // bring the white relations to the dual generators of the black product
    let t: GenTransform = via_dual_alignment(white_family, &o_dual.signature);
    let dual_sig = crate::koszul::dual_signature(&b.signature)?;
    if dual_sig.shape() != w.signature.shape() {
        return Ok((false, "signatures of different shapes".into()));
    }
    let w_aligned = t.apply_space(&w.relations, &dual_sig)?;
    let form = pairing_matrix(&b.signature)?;
    let mut orthogonal = true;
    for v in b.relations.basis() {
        let mut paired: SparseVector<Monomial3, Q> = SparseVector::zero();
        for (m, c) in v.iter() {
            paired.add_scaled(&form[m], c);
        }
        for u in w_aligned.basis() {
            let s: Q = u.iter().map(|(k, c)| paired.get(k) * c.clone()).sum();
            if s != Q::from_integer(0.into()) {
                orthogonal = false;
            }
        }
    }
    Ok((
        dims && orthogonal,
        format!("{} + {} of {}, orthogonal: {orthogonal}", b.relation_dim(), w.relation_dim(), b.dim3()),
    ))
}

fn c15() -> Vec<Check> {
    let mut out = Vec::new();
    for family in WHITE {
        for (key, o) in zoo::keys().into_iter().zip(zoo::all()) {
            out.push(check(format!("{family:?} on {key}"), || complementarity(family, o)));
        }
    }
    out
}

/// The left preLie black product against the mirrored opposite of the right one.
pub fn left_right_agree(o: &P) -> Result<bool> {
    let left = black(Family::PreLieLBlack, o)?;
    let right = black(Family::PreLieRBlack, o)?;
    let mirrored = left_right_mirror(&o.signature).apply_space(&opposite_operad(&right)?.relations, &left.signature)?;
    mirrored.equal(&left.relations)
}

fn c16() -> Vec<Check> {
    zoo::keys()
        .into_iter()
        .zip(zoo::all())
        .map(|(key, o)| check(format!("preLie_left({key})"), || Ok((left_right_agree(o)?, String::new()))))
        .collect()
}

/// The morphisms checked by criterion 17, as `(label, source, target, images)`.
pub const NAMED_MORPHISMS: [(&str, &str, &str, &[(&str, &str)]); 6] = [
    ("Lie -> postLie", "lie", "postlie", &[("b", "m - m^op + b")]),
    ("Ass -> Tridend", "ass", "tridend", &[("m", "l + r + d")]),
    ("Com -> postCom", "com", "postcom", &[("c", "s + s^op + c")]),
    ("preLie -> LDend (l - r^op)", "prelie", "ldend", &[("m", "l - r^op")]),
    ("preLie -> LDend (l + r)", "prelie", "ldend", &[("m", "l + r")]),
    ("Lie -> preLie", "lie", "prelie", &[("b", "m - m^op")]),
];

pub fn named_morphism(source: &str, target: &str, images: &[(&str, &str)]) -> Result<OperadMorphism> {
    OperadMorphism::from_text(&z(source)?, &z(target)?, images)
}

fn c17() -> Vec<Check> {
    let mut out: Vec<Check> = NAMED_MORPHISMS
        .iter()
        .map(|(label, s, t, images)| {
            check(*label, || {
                let f = named_morphism(s, t, images)?;
                Ok((f.is_morphism()?, f.display().trim_end().replace('\n', ";")))
            })
        })
        .collect();
    out.push(check("Lie -> preLie -> LDend", || {
        let f = named_morphism("lie", "prelie", &[("b", "m - m^op")])?;
        let g = named_morphism("prelie", "ldend", &[("m", "l - r^op")])?;
        let h = OperadMorphism::compose(&g, &f)?;
        Ok((h.is_morphism()?, h.display().trim_end().replace('\n', ";")))
    }));
    out
}

/// Unit, counit, triangle identities and the associated-operation map for
/// one adjunction on one presentation.
pub fn adjunction_checks(adj: Adjunction, o: &P) -> Result<(bool, String)> {
    let u = unit(adj, o)?.is_morphism()?;
    let c = counit(adj, o)?.is_morphism()?;
    let t = triangle_check(adj, o)?;
    let a = associated(adj, o)?.is_morphism()?;
    Ok((
        u && c && t.holds() && a,
        format!(
            "unit {u}, counit {c}, triangles {}/{}, associated {a}",
            t.black_side, t.white_side
        ),
    ))
}

fn c18() -> Vec<Check> {
    let mut out = Vec::new();
    for adj in Adjunction::ALL {
        for (key, o) in zoo::keys().into_iter().zip(zoo::all()) {
            out.push(check(format!("{adj:?} on {key}"), || adjunction_checks(adj, o)));
        }
    }
    out
}

fn c19() -> Vec<Check> {
    use Family::{AssWhite as A, LieWhite as L, PermWhite as W};
    vec![
        iso("top row: preLie_black(Lie) = preLie", || z("prelie"), || prelie_b("lie")),
        iso("top row: preLie_black(Ass) = Dend", || z("dend"), || prelie_b("ass")),
        iso("top row: preLie_black(Com) = Zinb", || z("zinb"), || prelie_b("com")),
        iso("top row: Lie_white(Zinb) = preLie", || z("prelie"), || white_of(L, "zinb")),
        iso("top row: Ass_white(Zinb) = Dend", || z("dend"), || white_of(A, "zinb")),
        iso("bottom row: Perm_white(Lie) = Leib", || z("leib"), || white_of(W, "lie")),
        iso("bottom row: Perm_white(Ass) = diAss", || z("diass"), || white_of(W, "ass")),
        iso("bottom row: Perm_white(Com) = Perm", || z("perm"), || white_of(W, "com")),
        iso("bottom row: Com_black(Leib) = Perm", || z("perm"), || com_b("leib")),
        iso("bottom row: Ass_black(Leib) = diAss", || z("diass"), || ass_b("leib")),
        iso("middle row: Com_black(Lie) = Com", || z("com"), || com_b("lie")),
        iso("middle row: Com_black(Ass) = nilAss", || z("nilass"), || com_b("ass")),
        iso("middle row: Com_black(Com) = nilLie", || z("nillie"), || com_b("com")),
    ]
}

fn small_signatures() -> Vec<Signature> {
    let mut out = Vec::new();
    for p in 0..=3 {
        for q in 0..=3 - p {
            for r in 0..=3 - p - q {
                out.push(P::mag(p, q, r).signature);
            }
        }
    }
    out
}

/// Distinct canonical monomials reached from every raw tree.
fn brute_force_count(sig: &Signature) -> Result<usize> {
    let mut seen = BTreeSet::new();
    for outer in 0..sig.len() {
        for inner in 0..sig.len() {
            for shape in [Shape::Left, Shape::Right] {
                for leaves in permutations() {
                    seen.insert(canonicalize(sig, Monomial3::new(shape, outer, inner, leaves))?.1);
                }
            }
        }
    }
    Ok(seen.len())
}

/// Rank plus nullity of the map computing a white product.
fn rank_nullity(family: Family, o: &P) -> Result<bool> {
    let table = CochainTable::white(family, &o.signature)?;
    let configs = configs_for(family);
    let ambient = table.eval_sig.basis3();
    let mut images = std::collections::BTreeMap::new();
    for m in ambient.keys() {
        let mut image = SparseVector::zero();
        for (i, c) in configs.iter().enumerate() {
            for (k, coeff) in o.relations.reduce(&table.eval_relator(&Element3::unit(*m), c)?).iter() {
                image.add_term((i, *k), coeff.clone());
            }
        }
        images.insert(*m, image);
    }
    let kernel = Subspace::kernel(ambient.clone(), |m| images[m].clone())?;
    Ok(kernel.dim() + rank(images.into_values()) == ambient.dim())
}

fn shipped_tables(sig: &Signature) -> Result<Vec<CochainTable>> {
    let mut out = Vec::new();
    for kind in [TableKind::BlackAss, TableKind::BlackPreLieR, TableKind::BlackPreLieL] {
        out.push(CochainTable::black(kind, sig)?);
    }
    for family in WHITE {
        out.push(CochainTable::white(family, sig)?);
    }
    Ok(out)
}

fn c20() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("basis counts", || {
        for sig in small_signatures() {
            let (p, q, r) = sig.pqr();
            let expected = 3 * (2 * p + q + r).pow(2);
            if basis3(&sig).len() != expected || brute_force_count(&sig)? != expected || sig.dim3() != expected {
                return Ok((false, format!("mag_{p}{q}{r}")));
            }
        }
        Ok((true, "all signatures with p+q+r <= 3".into()))
    }));
    out.push(check("canonical form is idempotent", || {
        for sig in small_signatures() {
            for m in basis3(&sig) {
                if canonicalize(&sig, m)? != (1, m) {
                    return Ok((false, format!("{m:?}")));
                }
            }
        }
        Ok((true, String::new()))
    }));
    out.push(check("echelon form is idempotent", || {
        for o in zoo::all() {
            let again = Subspace::span(o.relations.basis().cloned(), o.signature.basis3())?;
            if again != o.relations {
                return Ok((false, o.name.clone()));
            }
        }
        Ok((true, String::new()))
    }));
    out.push(check("rank-nullity", || {
        for family in WHITE {
            for o in zoo::all() {
                if !rank_nullity(family, o)? {
                    return Ok((false, format!("{family:?} on {}", o.name)));
                }
            }
        }
        Ok((true, String::new()))
    }));
    out.push(check("shipped tables pass their self-checks", || {
        let mut sigs: Vec<Signature> = small_signatures();
        sigs.extend(zoo::all().iter().map(|o| o.signature.clone()));
        for sig in sigs {
            for t in shipped_tables(&sig)? {
                if !(t.leibniz_selfcheck() && t.symmetry_coherence() && t.degree_safe() && t.local()) {
                    return Ok((false, format!("{:?} over {:?}", t.kind, sig.names())));
                }
            }
        }
        Ok((true, String::new()))
    }));
    out.push(check("parse and render round-trip", || {
        for o in zoo::all() {
            let back = parse(&o.render(Format::Text))?;
            if !back.same_relations(o) || back.signature.names() != o.signature.names() {
                return Ok((false, o.name.clone()));
            }
        }
        Ok((true, String::new()))
    }));
    out
}
