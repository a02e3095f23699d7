//! Arity-2 and arity-3 components of the free operad on binary generators.
//!
//! A generator is non-symmetric, symmetric (`g(a,b) = g(b,a)`) or
//! anti-symmetric (`g(a,b) = -g(b,a)`). Arity-3 tree monomials are brought to a
//! canonical form so that an arity-3 element is simply a sparse vector over
//! canonical monomials:
//!
//! * leaves of a (anti-)symmetric inner generator are sorted in the order
//!   `x < y < z`, with a sign per swap in the anti-symmetric case;
//! * a (anti-)symmetric outer generator always sits in the left-comb shape.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Ambient, SparseVector};
use crate::Q;

pub type GenId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    NonSym,
    Sym,
    AntiSym,
}

impl Symmetry {
    /// Symmetry of the Koszul-dual generator.
    pub fn transposed(self) -> Symmetry {
        match self {
            Symmetry::NonSym => Symmetry::NonSym,
            Symmetry::Sym => Symmetry::AntiSym,
            Symmetry::AntiSym => Symmetry::Sym,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Symmetry::NonSym => "nonsym",
            Symmetry::Sym => "sym",
            Symmetry::AntiSym => "antisym",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Symmetry> {
        match word {
            "nonsym" => Some(Symmetry::NonSym),
            "sym" => Some(Symmetry::Sym),
            "antisym" => Some(Symmetry::AntiSym),
            _ => None,
        }
    }

    /// Sign picked up by swapping the two arguments, if the swap is a symmetry.
    fn swap_sign(self) -> Option<i64> {
        match self {
            Symmetry::NonSym => None,
            Symmetry::Sym => Some(1),
            Symmetry::AntiSym => Some(-1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub id: GenId,
    pub name: String,
    pub symmetry: Symmetry,
}

/// An ordered list of binary generators. The order fixes the monomial order.
#[derive(Clone)]
pub struct Signature {
    generators: Vec<Generator>,
    basis: OnceLock<Arc<Ambient<Monomial3>>>,
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.generators.iter().map(|g| (&g.name, g.symmetry)))
            .finish()
    }
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for Signature {}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, Symmetry)>) -> Result<Self> {
        let mut generators: Vec<Generator> = Vec::new();
        for (id, (name, symmetry)) in gens.into_iter().enumerate() {
            let name = name.into();
            if !is_identifier(&name) || matches!(name.as_str(), "x" | "y" | "z") {
                return Err(Error::Structural(format!("invalid generator name `{name}`")));
            }
            if generators.iter().any(|g| g.name == name) {
                return Err(Error::Structural(format!("duplicate generator `{name}`")));
            }
            generators.push(Generator { id, name, symmetry });
        }
        Ok(Signature {
            generators,
            basis: OnceLock::new(),
        })
    }

    pub fn empty() -> Self {
        Signature {
            generators: Vec::new(),
            basis: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.generators[id]
    }

    pub fn symmetry(&self, id: GenId) -> Symmetry {
        self.generators[id].symmetry
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.generators[id].name
    }

    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn find(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn count(&self, symmetry: Symmetry) -> usize {
        self.generators.iter().filter(|g| g.symmetry == symmetry).count()
    }

    /// `(p, q, r)`: non-symmetric, symmetric and anti-symmetric counts.
    pub fn pqr(&self) -> (usize, usize, usize) {
        (
            self.count(Symmetry::NonSym),
            self.count(Symmetry::Sym),
            self.count(Symmetry::AntiSym),
        )
    }

    /// Symmetry types in generator order.
    pub fn shape(&self) -> Vec<Symmetry> {
        self.generators.iter().map(|g| g.symmetry).collect()
    }

    /// The canonical monomial basis of the arity-3 component.
    pub fn basis3(&self) -> Arc<Ambient<Monomial3>> {
        self.basis.get_or_init(|| Ambient::new(basis3(self))).clone()
    }

    pub fn dim3(&self) -> usize {
        self.basis3().dim()
    }

    /// Same generators with new names.
    pub fn renamed(&self, mut rename: impl FnMut(&Generator) -> String) -> Result<Signature> {
        Signature::new(self.generators.iter().map(|g| (rename(g), g.symmetry)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `Left` is `outer(inner(a,b),c)`, `Right` is `outer(a,inner(b,c))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Left,
    Right,
}

/// An arity-3 tree monomial; leaves are listed in planar order.
///
/// The derived order (shape, outer, inner, leaves) is the global monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial3 {
    pub shape: Shape,
    pub outer: GenId,
    pub inner: GenId,
    pub leaves: [Var; 3],
}

impl Monomial3 {
    pub fn new(shape: Shape, outer: GenId, inner: GenId, leaves: [Var; 3]) -> Self {
        Monomial3 {
            shape,
            outer,
            inner,
            leaves,
        }
    }

    /// Positions of the inner generator's two arguments within `leaves`.
    fn inner_slots(&self) -> (usize, usize) {
        match self.shape {
            Shape::Left => (0, 1),
            Shape::Right => (1, 2),
        }
    }

    /// Swaps the two arguments of the inner node.
    pub fn swap_inner(mut self) -> Self {
        let (i, j) = self.inner_slots();
        self.leaves.swap(i, j);
        self
    }

    /// Swaps the two arguments of the outer node, which flips the shape.
    pub fn swap_outer(mut self) -> Self {
        let [a, b, c] = self.leaves;
        match self.shape {
            Shape::Left => {
                self.shape = Shape::Right;
                self.leaves = [c, a, b];
            }
            Shape::Right => {
                self.shape = Shape::Left;
                self.leaves = [b, c, a];
            }
        }
        self
    }

    pub fn relabel(mut self, sigma: &[Var; 3]) -> Self {
        for v in self.leaves.iter_mut() {
            *v = sigma[v.index()];
        }
        self
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = [false; 3];
        for v in self.leaves {
            seen[v.index()] = true;
        }
        seen.iter().all(|&s| s)
    }

    /// `+1` or `-1` according to the parity of the leaf permutation.
    pub fn leaf_sign(&self) -> i64 {
        permutation_sign(&self.leaves)
    }

    pub fn display(&self, sig: &Signature) -> String {
        let [a, b, c] = self.leaves;
        let (o, i) = (sig.name(self.outer), sig.name(self.inner));
        match self.shape {
            Shape::Left => format!("{o}({i}({a},{b}),{c})"),
            Shape::Right => format!("{o}({a},{i}({b},{c}))"),
        }
    }
}

pub fn permutation_sign(leaves: &[Var; 3]) -> i64 {
    let mut inversions = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            if leaves[i] > leaves[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All six orderings of `x, y, z`, lexicographically.
pub fn permutations() -> [[Var; 3]; 6] {
    use Var::*;
    [
        [X, Y, Z],
        [X, Z, Y],
        [Y, X, Z],
        [Y, Z, X],
        [Z, X, Y],
        [Z, Y, X],
    ]
}

/// Brings a raw monomial to canonical form, returning the accumulated sign.
pub fn canonicalize(sig: &Signature, raw: Monomial3) -> Result<(i64, Monomial3)> {
    if raw.outer >= sig.len() || raw.inner >= sig.len() {
        return Err(Error::Structural(format!(
            "generator index out of range in {raw:?}"
        )));
    }
    if !raw.is_permutation() {
        return Err(Error::Structural(format!(
            "leaves {:?} are not a permutation of x, y, z",
            raw.leaves
        )));
    }
    let mut sign = 1;
    let mut m = raw;
    if let Some(s) = sig.symmetry(m.inner).swap_sign() {
        let (i, j) = m.inner_slots();
        if m.leaves[i] > m.leaves[j] {
            m = m.swap_inner();
            sign *= s;
        }
    }
    if let Some(s) = sig.symmetry(m.outer).swap_sign() {
        if m.shape == Shape::Right {
            m = m.swap_outer();
            sign *= s;
        }
    }
    Ok((sign, m))
}

/// Canonical arity-3 monomials in the global order.
pub fn basis3(sig: &Signature) -> Vec<Monomial3> {
    let mut out = Vec::new();
    for outer in 0..sig.len() {
        for inner in 0..sig.len() {
            let shapes: &[Shape] = match sig.symmetry(outer) {
                Symmetry::NonSym => &[Shape::Left, Shape::Right],
                _ => &[Shape::Left],
            };
            for &shape in shapes {
                for leaves in permutations() {
                    let m = Monomial3::new(shape, outer, inner, leaves);
                    let (i, j) = m.inner_slots();
                    if sig.symmetry(inner) != Symmetry::NonSym && leaves[i] > leaves[j] {
                        continue;
                    }
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    out
}

/// A rational combination of canonical arity-3 monomials.
pub type Element3 = SparseVector<Monomial3, Q>;

/// Adds `coeff * raw` to `acc`, canonicalizing `raw` first.
pub fn accumulate(acc: &mut Element3, sig: &Signature, raw: Monomial3, coeff: Q) -> Result<()> {
    let (sign, m) = canonicalize(sig, raw)?;
    acc.add_term(m, if sign < 0 { -coeff } else { coeff });
    Ok(())
}

pub fn monomial(sig: &Signature, raw: Monomial3) -> Result<Element3> {
    let mut e = Element3::zero();
    accumulate(&mut e, sig, raw, Q::one())?;
    Ok(e)
}

/// Relabels variables by `sigma` (x ↦ sigma[0], ...).
pub fn relabel(e: &Element3, sig: &Signature, sigma: &[Var; 3]) -> Result<Element3> {
    let mut out = Element3::zero();
    for (m, c) in e.iter() {
        accumulate(&mut out, sig, m.relabel(sigma), c.clone())?;
    }
    Ok(out)
}

/// All relabelings of each element under the six permutations of `x, y, z`.
pub fn symmetric_orbit(elements: &[Element3], sig: &Signature) -> Result<Vec<Element3>> {
    let mut out = Vec::with_capacity(elements.len() * 6);
    for e in elements {
        for sigma in permutations() {
            out.push(relabel(e, sig, &sigma)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Id,
    Op,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Id => Orientation::Op,
            Orientation::Op => Orientation::Id,
        }
    }

    pub fn compose(self, other: Orientation) -> Orientation {
        if self == other {
            Orientation::Id
        } else {
            Orientation::Op
        }
    }
}

/// A rational combination of binary operations `g` and `g^op` over a signature.
///
/// Normalized against the signature: `g^op` is rewritten to `g` (symmetric) or
/// `-g` (anti-symmetric).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element2 {
    terms: SparseVector<(GenId, Orientation), Q>,
}

impl Element2 {
    pub fn zero() -> Self {
        Element2 {
            terms: SparseVector::zero(),
        }
    }

    pub fn from_terms(
        sig: &Signature,
        terms: impl IntoIterator<Item = (Q, GenId, Orientation)>,
    ) -> Result<Self> {
        let mut out = SparseVector::zero();
        for (c, g, o) in terms {
            if g >= sig.len() {
                return Err(Error::Structural(format!("generator index {g} out of range")));
            }
            match (sig.symmetry(g), o) {
                (Symmetry::Sym, Orientation::Op) => out.add_term((g, Orientation::Id), c),
                (Symmetry::AntiSym, Orientation::Op) => out.add_term((g, Orientation::Id), -c),
                _ => out.add_term((g, o), c),
            }
        }
        Ok(Element2 { terms: out })
    }

    pub fn generator(sig: &Signature, g: GenId) -> Result<Self> {
        Self::from_terms(sig, [(Q::one(), g, Orientation::Id)])
    }

    pub fn opposite_of(sig: &Signature, g: GenId) -> Result<Self> {
        Self::from_terms(sig, [(Q::one(), g, Orientation::Op)])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Q, GenId, Orientation)> {
        self.terms.iter().map(|((g, o), c)| (c, *g, *o))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn plus(&self, other: &Self) -> Self {
        Element2 {
            terms: self.terms.plus(&other.terms),
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        Element2 {
            terms: self.terms.minus(&other.terms),
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        Element2 {
            terms: self.terms.scaled(c),
        }
    }

    /// `e^op(a, b) = e(b, a)`.
    pub fn op(&self, sig: &Signature) -> Result<Self> {
        Self::from_terms(
            sig,
            self.terms().map(|(c, g, o)| (c.clone(), g, o.flip())),
        )
    }

    /// True iff invariant (sign `+1`) or anti-invariant (`-1`) under swapping arguments.
    pub fn has_swap_sign(&self, sig: &Signature, sign: i64) -> Result<bool> {
        let flipped = self.op(sig)?;
        let target = if sign < 0 { self.scaled(&-Q::one()) } else { self.clone() };
        Ok(flipped == target)
    }

    pub fn display(&self, sig: &Signature) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (c, g, o)) in self.terms().enumerate() {
            let name = match o {
                Orientation::Id => sig.name(g).to_string(),
                Orientation::Op => format!("{}^op", sig.name(g)),
            };
            s.push_str(&signed_term(c, &name, i == 0));
        }
        s
    }
}

/// Formats `c * body` as a summand, with a leading sign unless it is the first.
pub(crate) fn signed_term(c: &Q, body: &str, first: bool) -> String {
    let neg = c < &Q::zero();
    let abs = if neg { -c.clone() } else { c.clone() };
    let sign = match (first, neg) {
        (true, false) => "",
        (true, true) => "-",
        (false, false) => " + ",
        (false, true) => " - ",
    };
    if abs.is_one() {
        format!("{sign}{body}")
    } else {
        format!("{sign}{abs}*{body}")
    }
}

/// Replaces every generator by a combination of target operations and expands.
pub fn substitute(
    e: &Element3,
    images: &[Element2],
    target: &Signature,
) -> Result<Element3> {
    let mut out = Element3::zero();
    for (m, c) in e.iter() {
        let outer = images
            .get(m.outer)
            .ok_or_else(|| Error::Structural(format!("generator {} is not mapped", m.outer)))?;
        let inner = images
            .get(m.inner)
            .ok_or_else(|| Error::Structural(format!("generator {} is not mapped", m.inner)))?;
        for (ci, gi, oi) in inner.terms() {
            let base = match oi {
                Orientation::Id => *m,
                Orientation::Op => m.swap_inner(),
            };
            for (co, go, oo) in outer.terms() {
                let mut raw = match oo {
                    Orientation::Id => base,
                    Orientation::Op => base.swap_outer(),
                };
                raw.outer = go;
                raw.inner = gi;
                accumulate(&mut out, target, raw, c.clone() * ci.clone() * co.clone())?;
            }
        }
    }
    Ok(out)
}

/// Images `g ↦ g` for every generator.
pub fn identity_images(sig: &Signature) -> Vec<Element2> {
    (0..sig.len())
        .map(|g| Element2::generator(sig, g).expect("in range"))
        .collect()
}

/// The opposite element: every generator `g` replaced by `g^op`.
pub fn opposite(e: &Element3, sig: &Signature) -> Result<Element3> {
    let images: Vec<Element2> = (0..sig.len())
        .map(|g| Element2::opposite_of(sig, g))
        .collect::<Result<_>>()?;
    substitute(e, &images, sig)
}

/// Formats an arity-3 element as a relator in the presentation language.
pub fn display3(e: &Element3, sig: &Signature) -> String {
    if e.is_zero() {
        return "0".into();
    }
    e.iter()
        .enumerate()
        .map(|(i, (m, c))| signed_term(c, &m.display(sig), i == 0))
        .collect()
}

/// Groups the terms of an element by the set of generators it uses.
pub fn generator_support(e: &Element3) -> BTreeMap<(GenId, GenId), usize> {
    let mut out = BTreeMap::new();
    for (m, _) in e.iter() {
        *out.entry((m.outer, m.inner)).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;
    use std::collections::BTreeSet;
    use Symmetry::*;
    use Var::*;

    fn sig(gens: &[(&str, Symmetry)]) -> Signature {
        Signature::new(gens.iter().map(|(n, s)| (n.to_string(), *s))).unwrap()
    }

    fn mag(p: usize, q: usize, r: usize) -> Signature {
        let mut gens = Vec::new();
        gens.extend((1..=p).map(|i| (format!("m{i}"), NonSym)));
        gens.extend((1..=q).map(|i| (format!("s{i}"), Sym)));
        gens.extend((1..=r).map(|i| (format!("a{i}"), AntiSym)));
        Signature::new(gens).unwrap()
    }

    #[test]
    fn antisymmetric_inner_is_sorted() {
        let lie = sig(&[("a", AntiSym)]);
        let raw = Monomial3::new(Shape::Left, 0, 0, [Y, X, Z]);
        assert_eq!(
            canonicalize(&lie, raw).unwrap(),
            (-1, Monomial3::new(Shape::Left, 0, 0, [X, Y, Z]))
        );
    }

    #[test]
    fn symmetric_outer_is_left_normalized() {
        let com = sig(&[("s", Sym)]);
        let raw = Monomial3::new(Shape::Right, 0, 0, [X, Y, Z]);
        assert_eq!(
            canonicalize(&com, raw).unwrap(),
            (1, Monomial3::new(Shape::Left, 0, 0, [Y, Z, X]))
        );
    }

    #[test]
    fn nonsymmetric_monomials_are_untouched() {
        let s = sig(&[("a", NonSym), ("b", NonSym)]);
        let raw = Monomial3::new(Shape::Left, 0, 1, [X, Y, Z]);
        assert_eq!(canonicalize(&s, raw).unwrap(), (1, raw));
    }

    #[test]
    fn bad_leaves_are_rejected() {
        let s = sig(&[("a", NonSym)]);
        let raw = Monomial3::new(Shape::Left, 0, 0, [X, Y, Y]);
        assert!(matches!(canonicalize(&s, raw), Err(Error::Structural(_))));
    }

    #[test]
    fn basis_counts() {
        assert_eq!(basis3(&mag(1, 0, 0)).len(), 12);
        assert_eq!(basis3(&mag(1, 0, 1)).len(), 27);
        let lie = basis3(&mag(0, 0, 1));
        let shown: Vec<_> = lie.iter().map(|m| m.display(&mag(0, 0, 1))).collect();
        assert_eq!(shown, ["a1(a1(x,y),z)", "a1(a1(x,z),y)", "a1(a1(y,z),x)"]);
    }

    /// Enumerates every planar labelled tree and canonicalizes it.
    fn brute_force_basis(s: &Signature) -> BTreeMap<Monomial3, usize> {
        let mut seen = BTreeMap::new();
        for shape in [Shape::Left, Shape::Right] {
            for outer in 0..s.len() {
                for inner in 0..s.len() {
                    for leaves in permutations() {
                        let (_, m) = canonicalize(s, Monomial3::new(shape, outer, inner, leaves)).unwrap();
                        *seen.entry(m).or_insert(0) += 1;
                    }
                }
            }
        }
        seen
    }

    #[test]
    fn basis_matches_enumeration() {
        for p in 0..=3 {
            for q_ in 0..=3 - p {
                for r in 0..=3 - p - q_ {
                    let s = mag(p, q_, r);
                    let oracle = brute_force_basis(&s);
                    let basis: BTreeSet<_> = basis3(&s).into_iter().collect();
                    assert_eq!(basis, oracle.keys().copied().collect::<BTreeSet<_>>());
                    let w = 2 * p + q_ + r;
                    assert_eq!(basis.len(), 3 * w * w);
                    for (m, mult) in oracle {
                        let orbit = match (s.symmetry(m.outer), s.symmetry(m.inner)) {
                            (NonSym, NonSym) => 1,
                            (NonSym, _) | (_, NonSym) => 2,
                            _ => 4,
                        };
                        assert_eq!(mult, orbit, "{m:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let s = mag(1, 1, 1);
        for m in basis3(&s) {
            assert_eq!(canonicalize(&s, m).unwrap(), (1, m));
        }
    }

    fn leib_relator(s: &Signature) -> Element3 {
        let mut e = Element3::zero();
        accumulate(&mut e, s, Monomial3::new(Shape::Left, 0, 0, [X, Y, Z]), q(1)).unwrap();
        accumulate(&mut e, s, Monomial3::new(Shape::Right, 0, 0, [X, Y, Z]), q(-1)).unwrap();
        accumulate(&mut e, s, Monomial3::new(Shape::Left, 0, 0, [X, Z, Y]), q(-1)).unwrap();
        e
    }

    #[test]
    fn opposite_of_right_leibniz_is_left_leibniz() {
        let s = mag(1, 0, 0);
        let r = leib_relator(&s);
        // x(yz) = (xy)z + y(xz), written as a relator
        let mut left = Element3::zero();
        accumulate(&mut left, &s, Monomial3::new(Shape::Right, 0, 0, [Z, Y, X]), q(1)).unwrap();
        accumulate(&mut left, &s, Monomial3::new(Shape::Left, 0, 0, [Z, Y, X]), q(-1)).unwrap();
        accumulate(&mut left, &s, Monomial3::new(Shape::Right, 0, 0, [Y, Z, X]), q(-1)).unwrap();
        assert_eq!(opposite(&r, &s).unwrap(), left);
        assert_eq!(opposite(&opposite(&r, &s).unwrap(), &s).unwrap(), r);
    }

    #[test]
    fn opposite_fixes_symmetric_monomials() {
        let s = mag(0, 1, 0);
        for m in basis3(&s) {
            let e = monomial(&s, m).unwrap();
            assert_eq!(opposite(&e, &s).unwrap(), e);
        }
    }

    #[test]
    fn identity_substitution() {
        let s = mag(1, 1, 1);
        let e = leib_relator(&s);
        assert_eq!(substitute(&e, &identity_images(&s), &s).unwrap(), e);
    }

    #[test]
    fn unmapped_generator_is_structural() {
        let s = mag(1, 0, 0);
        assert!(matches!(
            substitute(&leib_relator(&s), &[], &s),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn element2_normalization() {
        let s = mag(1, 1, 1);
        let e = Element2::from_terms(
            &s,
            [(q(1), 1, Orientation::Op), (q(1), 2, Orientation::Op), (q(1), 0, Orientation::Op)],
        )
        .unwrap();
        let shown = e.display(&s);
        assert_eq!(shown, "m1^op + s1 - a1");
    }

    /// Direct expansion of `(xy)z - x(yz)` under `· ↦ ≺ + ≻`.
    #[test]
    fn polarized_associator_expands_over_all_generator_pairs() {
        let src = mag(1, 0, 0);
        let tgt = sig(&[("l", NonSym), ("r", NonSym)]);
        let mut assoc = Element3::zero();
        accumulate(&mut assoc, &src, Monomial3::new(Shape::Left, 0, 0, [X, Y, Z]), q(1)).unwrap();
        accumulate(&mut assoc, &src, Monomial3::new(Shape::Right, 0, 0, [X, Y, Z]), q(-1)).unwrap();
        let plus = Element2::from_terms(&tgt, [(q(1), 0, Orientation::Id), (q(1), 1, Orientation::Id)]).unwrap();
        let out = substitute(&assoc, &[plus], &tgt).unwrap();
        assert_eq!(out.len(), 8);
        let mut oracle = Element3::zero();
        for o in 0..2 {
            for i in 0..2 {
                oracle.add_term(Monomial3::new(Shape::Left, o, i, [X, Y, Z]), q(1));
                oracle.add_term(Monomial3::new(Shape::Right, o, i, [X, Y, Z]), q(-1));
            }
        }
        assert_eq!(out, oracle);
    }

    #[test]
    fn substitution_is_functorial() {
        let a = mag(1, 0, 1);
        let b = sig(&[("u", NonSym), ("v", AntiSym)]);
        let c = sig(&[("p", NonSym), ("t", Sym)]);
        // g: a -> b, f: b -> c
        let g = vec![
            Element2::from_terms(&b, [(q(1), 0, Orientation::Op), (q(2), 1, Orientation::Id)]).unwrap(),
            Element2::from_terms(&b, [(q(1), 1, Orientation::Id)]).unwrap(),
        ];
        let f = vec![
            Element2::from_terms(&c, [(q(1), 0, Orientation::Id), (q(-1), 1, Orientation::Id)]).unwrap(),
            Element2::from_terms(&c, [(q(1), 0, Orientation::Id), (q(-1), 0, Orientation::Op)]).unwrap(),
        ];
        // f ∘ g on generators
        let fg: Vec<Element2> = g
            .iter()
            .map(|img| {
                let mut acc = Element2::zero();
                for (coef, h, o) in img.terms() {
                    let mut part = f[h].clone();
                    if o == Orientation::Op {
                        part = part.op(&c).unwrap();
                    }
                    acc = acc.plus(&part.scaled(coef));
                }
                acc
            })
            .collect();
        for m in basis3(&a) {
            let e = monomial(&a, m).unwrap();
            let two_step = substitute(&substitute(&e, &g, &b).unwrap(), &f, &c).unwrap();
            assert_eq!(substitute(&e, &fg, &c).unwrap(), two_step);
        }
    }
}
