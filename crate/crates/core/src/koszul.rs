//! Koszul duality for binary quadratic presentations.
//!
//! Monomials of a signature and of its dual are paired by lifting both to
//! the free operad on non-symmetric operations: a symmetric generator `b`
//! becomes `b + b^op`, an anti-symmetric `c` becomes `c - c^op`. Two lifted
//! monomials pair to `sgn(σ)` on left combs and `-sgn(σ)` on right combs when
//! they have the same shape, the same generators and the same leaf order σ.
//! A lift has one term per choice of orientation at each symmetric node, so
//! the raw value is divided by the size of the lift: every canonical
//! monomial then pairs to `±1` with its partner, whatever its generators.
//! The dual relations are the annihilator of the original ones.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::free_operad::{permutation_sign, Monomial3, Shape, Signature, Symmetry};
use crate::linalg::{SparseVector, Subspace};
use crate::presentation::OperadPresentation;
use crate::{q, Q};

/// Name of the dual generator: `g_dual`, or `g` when `g` is itself a dual.
pub fn dual_name(name: &str) -> String {
    match name.strip_suffix("_dual") {
        Some(base) if !base.is_empty() => base.to_string(),
        _ => format!("{name}_dual"),
    }
}

/// Same generators with transposed symmetries and dual names.
pub fn dual_signature(sig: &Signature) -> Result<Signature> {
    Signature::new(
        sig.generators()
            .iter()
            .map(|g| (dual_name(&g.name), g.symmetry.transposed())),
    )
}

fn lift_sign(symmetry: Symmetry) -> Option<i64> {
    match symmetry {
        Symmetry::NonSym => None,
        Symmetry::Sym => Some(1),
        Symmetry::AntiSym => Some(-1),
    }
}

/// The lift of a canonical monomial to raw non-symmetric monomials.
fn lift(m: &Monomial3, sig: &Signature) -> Vec<(i64, Monomial3)> {
    let mut out = vec![(1, *m)];
    if let Some(s) = lift_sign(sig.symmetry(m.inner)) {
        out = out
            .into_iter()
            .flat_map(|(c, t)| [(c, t), (c * s, t.swap_inner())])
            .collect();
    }
    if let Some(s) = lift_sign(sig.symmetry(m.outer)) {
        out = out
            .into_iter()
            .flat_map(|(c, t)| [(c, t), (c * s, t.swap_outer())])
            .collect();
    }
    out
}

fn raw_value(m: &Monomial3) -> i64 {
    let s = permutation_sign(&m.leaves);
    match m.shape {
        Shape::Left => s,
        Shape::Right => -s,
    }
}

/// The pairing between the arity-3 bases of `sig` and its dual, one row per
/// basis monomial of `sig`.
pub fn pairing_matrix(sig: &Signature) -> Result<BTreeMap<Monomial3, SparseVector<Monomial3, Q>>> {
    let dual_sig = dual_signature(sig)?;
    let mut by_raw: BTreeMap<Monomial3, Vec<(i64, Monomial3)>> = BTreeMap::new();
    for m in dual_sig.basis3().keys() {
        for (c, raw) in lift(m, &dual_sig) {
            by_raw.entry(raw).or_default().push((c, *m));
        }
    }
    let mut rows = BTreeMap::new();
    for m in sig.basis3().keys() {
        let lifted = lift(m, sig);
        let weight = Q::new(1.into(), (lifted.len() as i64).into());
        let mut row = SparseVector::zero();
        for (c, raw) in lifted {
            for (d, m2) in by_raw.get(&raw).into_iter().flatten() {
                row.add_term(*m2, q(c * d * raw_value(&raw)) * weight.clone());
            }
        }
        rows.insert(*m, row);
    }
    Ok(rows)
}

/// Exact determinant of a square matrix given as dense rows.
pub fn determinant(mut rows: Vec<Vec<Q>>) -> Q {
    let n = rows.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            rows.swap(p, col);
            det = -det;
        }
        let pivot = rows[col][col].clone();
        det *= pivot.clone();
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone() / pivot.clone();
            for k in col..n {
                let v = rows[col][k].clone() * f.clone();
                rows[r][k] -= v;
            }
        }
    }
    det
}

/// Determinant of the pairing in the basis orders of `sig` and its dual.
pub fn pairing_determinant(sig: &Signature) -> Result<Q> {
    let form = pairing_matrix(sig)?;
    let cols = dual_signature(sig)?.basis3();
    let rows = form
        .values()
        .map(|row| cols.keys().iter().map(|k| row.get(k)).collect())
        .collect();
    Ok(determinant(rows))
}

/// The Koszul dual presentation.
pub fn dual(o: &OperadPresentation) -> Result<OperadPresentation> {
    let sig = dual_signature(&o.signature)?;
    let form = pairing_matrix(&o.signature)?;
    let relations: Subspace<Monomial3, Q> = o.relations.annihilator(&form, sig.basis3())?;
    let name = match o.name.strip_prefix("dual(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("dual({})", o.name),
    };
    Ok(OperadPresentation::from_relations(name, sig, relations))
}
