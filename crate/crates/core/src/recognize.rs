//! Identifying computed presentations with named ones.
//!
//! Two presentations are identified when a [`GenTransform`] maps one relation
//! space onto the other. The transforms permute generators within each
//! symmetry class, change signs, and replace non-symmetric operations by
//! their opposites.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::free_operad::{substitute, Element2, Element3, GenId, Orientation, Signature, Symmetry};
use crate::linalg::Subspace;
use crate::presentation::{mag_key, OperadPresentation, RelationSpace};
use crate::zoo;
use crate::Q;

/// Search is abandoned for a candidate whose transform group is larger.
pub const MAX_GROUP: u128 = 1_000_000;

/// Generator `i` of the source goes to `signs[i] * targets[i]`, taken
/// opposite when `orientations[i]` is `Op`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenTransform {
    pub targets: Vec<GenId>,
    pub signs: Vec<i64>,
    pub orientations: Vec<Orientation>,
}

impl GenTransform {
    pub fn identity(n: usize) -> Self {
        GenTransform {
            targets: (0..n).collect(),
            signs: vec![1; n],
            orientations: vec![Orientation::Id; n],
        }
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        *self == GenTransform::identity(self.len())
    }

    pub fn images(&self, target: &Signature) -> Result<Vec<Element2>> {
        (0..self.len())
            .map(|i| {
                Element2::from_terms(
                    target,
                    [(Q::from_integer(self.signs[i].into()), self.targets[i], self.orientations[i])],
                )
            })
            .collect()
    }

    pub fn apply(&self, e: &Element3, target: &Signature) -> Result<Element3> {
        substitute(e, &self.images(target)?, target)
    }

    /// The image of a relation space; the transform is invertible, so the
    /// dimension is preserved.
    pub fn apply_space(&self, space: &RelationSpace, target: &Signature) -> Result<RelationSpace> {
        let images = self.images(target)?;
        let vectors = space
            .basis()
            .map(|r| substitute(r, &images, target))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(vectors, target.basis3())
    }

    /// Readable form, e.g. `l -> m_prec, r -> -m_succ^op`.
    pub fn display(&self, source: &Signature, target: &Signature) -> String {
        let mut out = String::new();
        for i in 0..self.len() {
            if i > 0 {
                out.push_str(", ");
            }
            let sign = if self.signs[i] < 0 { "-" } else { "" };
            let op = if self.orientations[i] == Orientation::Op { "^op" } else { "" };
            let _ = write!(
                out,
                "{} -> {sign}{}{op}",
                source.name(i),
                target.name(self.targets[i])
            );
        }
        out
    }
}

/// Same generator symmetries in the same order and equal relation spaces.
pub fn equal_presentations(o: &OperadPresentation, p: &OperadPresentation) -> bool {
    o.signature.shape() == p.signature.shape()
        && o.relations.equal(&p.relations).unwrap_or(false)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Number of transforms between signatures of the given shape.
pub fn group_size(sig: &Signature) -> u128 {
    let (p, q, r) = sig.pqr();
    factorial(p) * factorial(q) * factorial(r) * (1u128 << (p + q + r)) * (1u128 << p)
}

fn permutations_of(items: &[GenId]) -> Vec<Vec<GenId>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Every class-preserving assignment of source generators to target ones.
fn bijections(source: &Signature, target: &Signature) -> Vec<Vec<GenId>> {
    let mut partial: Vec<Vec<GenId>> = vec![vec![usize::MAX; source.len()]];
    for class in [Symmetry::NonSym, Symmetry::Sym, Symmetry::AntiSym] {
        let from: Vec<GenId> = (0..source.len()).filter(|&g| source.symmetry(g) == class).collect();
        let to: Vec<GenId> = (0..target.len()).filter(|&g| target.symmetry(g) == class).collect();
        let mut next = Vec::new();
        for base in &partial {
            for perm in permutations_of(&to) {
                let mut t = base.clone();
                for (s, d) in from.iter().zip(perm) {
                    t[*s] = d;
                }
                next.push(t);
            }
        }
        partial = next;
    }
    partial
}

/// All transforms carrying `from`'s relations onto `to`'s, in a fixed order.
///
/// Fails when the signatures have different shapes up to order or the group
/// exceeds [`MAX_GROUP`].
pub fn transforms_between(
    from: &OperadPresentation,
    to: &OperadPresentation,
    first_only: bool,
) -> Result<Vec<GenTransform>> {
    if from.pqr() != to.pqr() || from.relation_dim() != to.relation_dim() {
        return Ok(vec![]);
    }
    let size = group_size(&from.signature);
    if size > MAX_GROUP {
        return Err(Error::Structural(format!(
            "{} transforms exceed the search bound",
            size
        )));
    }
    let n = from.signature.len();
    let nonsym: Vec<GenId> = (0..n)
        .filter(|&g| from.signature.symmetry(g) == Symmetry::NonSym)
        .collect();
    let mut found = Vec::new();
    for targets in bijections(&from.signature, &to.signature) {
        for sign_bits in 0..(1u32 << n) {
            for orient_bits in 0..(1u32 << nonsym.len()) {
                let signs = (0..n).map(|i| if sign_bits >> i & 1 == 1 { -1 } else { 1 }).collect();
                let mut orientations = vec![Orientation::Id; n];
                for (k, &g) in nonsym.iter().enumerate() {
                    if orient_bits >> k & 1 == 1 {
                        orientations[g] = Orientation::Op;
                    }
                }
                let t = GenTransform {
                    targets: targets.clone(),
                    signs,
                    orientations,
                };
                if maps_onto(&t, from, to)? {
                    found.push(t);
                    if first_only {
                        return Ok(found);
                    }
                }
            }
        }
    }
    Ok(found)
}

fn maps_onto(t: &GenTransform, from: &OperadPresentation, to: &OperadPresentation) -> Result<bool> {
    let images = t.images(&to.signature)?;
    for r in from.relations.basis() {
        if !to.relations.contains(&substitute(r, &images, &to.signature)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Some transform identifying the two presentations, if any.
pub fn find_transform(from: &OperadPresentation, to: &OperadPresentation) -> Result<Option<GenTransform>> {
    Ok(transforms_between(from, to, true)?.into_iter().next())
}

pub fn equivalent(from: &OperadPresentation, to: &OperadPresentation) -> bool {
    matches!(find_transform(from, to), Ok(Some(_)))
}

#[derive(Debug, Clone)]
pub struct ZooMatch {
    pub key: String,
    /// From the zoo entry's generators to the recognized presentation's.
    pub transforms: Vec<GenTransform>,
    pub candidate: OperadPresentation,
}

impl ZooMatch {
    pub fn describe(&self, target: &Signature) -> String {
        let first = &self.transforms[0];
        let shown = if first.is_identity() && self.candidate.signature.names() == target.names() {
            "identity".to_string()
        } else {
            first.display(&self.candidate.signature, target)
        };
        format!("{} via [{}] ({} transforms)", self.key, shown, self.transforms.len())
    }
}

/// Candidates of the catalog, plus the free operad of the same shape.
pub fn candidates(o: &OperadPresentation, keys: Option<&[String]>) -> Result<Vec<(String, OperadPresentation)>> {
    let mut out = Vec::new();
    match keys {
        Some(keys) => {
            for k in keys {
                out.push((k.clone(), zoo::get(k)?));
            }
        }
        None => {
            for (k, p) in zoo::keys().into_iter().zip(zoo::all()) {
                out.push((k.to_string(), p.clone()));
            }
            let (p, q, r) = o.pqr();
            out.push((mag_key(p, q, r), OperadPresentation::mag(p, q, r)));
        }
    }
    Ok(out)
}

/// Catalog entries isomorphic to `o` with the transforms realizing it.
///
/// Candidates whose transform group is too large are skipped and reported in
/// the second list.
pub fn match_zoo(
    o: &OperadPresentation,
    keys: Option<&[String]>,
) -> Result<(Vec<ZooMatch>, Vec<String>)> {
    let mut found = Vec::new();
    let mut skipped = Vec::new();
    for (key, cand) in candidates(o, keys)? {
        if cand.pqr() != o.pqr() || cand.relation_dim() != o.relation_dim() {
            continue;
        }
        match transforms_between(&cand, o, false) {
            Ok(ts) if !ts.is_empty() => found.push(ZooMatch {
                key,
                transforms: ts,
                candidate: cand,
            }),
            Ok(_) => {}
            Err(_) => skipped.push(key),
        }
    }
    Ok((found, skipped))
}

/// Renames generators of `o` to those of `names`, which must have the same
/// shape.
pub fn renamed_like(o: &OperadPresentation, like: &Signature) -> Result<OperadPresentation> {
    if o.signature.shape() != like.shape() {
        return Err(Error::Structural("signatures have different shapes".into()));
    }
    let mut out = o.clone();
    out.signature = like.clone();
    out.relations = Subspace::span(o.relations.basis().cloned(), like.basis3())?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{black, opposite_operad};
    use crate::cochain::Family;

    #[test]
    fn group_sizes() {
        assert_eq!(group_size(&OperadPresentation::mag(1, 0, 0).signature), 4);
        assert_eq!(group_size(&OperadPresentation::mag(3, 0, 0).signature), 6 * 8 * 8);
        assert_eq!(group_size(&OperadPresentation::mag(0, 1, 1).signature), 4);
    }

    #[test]
    fn zoo_entries_recognize_themselves() {
        for key in ["ass", "prelie", "dend", "pois"] {
            let o = zoo::get(key).unwrap();
            let (found, _) = match_zoo(&o, None).unwrap();
            let m = found.iter().find(|m| m.key == key).expect(key);
            assert!(m.transforms.iter().any(|t| t.is_identity()));
        }
    }

    #[test]
    fn left_and_right_prelie_are_opposite() {
        let o = zoo::get("prelie").unwrap();
        let left = opposite_operad(&o).unwrap();
        assert!(!equal_presentations(&o, &left));
        let t = find_transform(&o, &left).unwrap().unwrap();
        assert_eq!(t.orientations, vec![Orientation::Op]);
    }

    #[test]
    fn reported_transforms_round_trip() {
        let b = black(Family::AssBlack, &zoo::get("lie").unwrap()).unwrap();
        let (found, _) = match_zoo(&b, None).unwrap();
        let m = found.iter().find(|m| m.key == "ass").unwrap();
        for t in &m.transforms {
            let image = t.apply_space(&m.candidate.relations, &b.signature).unwrap();
            assert!(image.equal(&b.relations).unwrap());
        }
    }

    #[test]
    fn shapes_must_agree() {
        let ass = zoo::get("ass").unwrap();
        let lie = zoo::get("lie").unwrap();
        assert!(!equal_presentations(&ass, &lie));
        assert!(transforms_between(&ass, &lie, false).unwrap().is_empty());
    }
}
