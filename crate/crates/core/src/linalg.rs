//! Exact linear algebra on sparse vectors indexed by an ordered abstract basis.
//!
//! Everything here is generic over the coefficient [`Field`]; the rest of the
//! crate instantiates it with arbitrary-precision rationals (see [`crate::Q`]).
//! Subspaces are kept in reduced row-echelon form with respect to the key
//! order, so two subspaces are equal exactly when their bases are identical.

use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::ops::{Bound, Neg};
use std::sync::Arc;

use num_traits::Num;

use crate::error::{Error, Result};

/// An exact field of coefficients.
pub trait Field: Num + Clone + Debug + Neg<Output = Self> {}

impl<T> Field for T where T: Num + Clone + Debug + Neg<Output = T> {}

/// A finitely supported vector with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVector<K: Ord, F> {
    entries: BTreeMap<K, F>,
}

impl<K: Ord, F> Default for SparseVector<K, F> {
    fn default() -> Self {
        SparseVector {
            entries: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Debug, F: Debug> Debug for SparseVector<K, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

impl<K: Ord + Clone, F: Field> SparseVector<K, F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(key: K) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(key, F::one());
        SparseVector { entries }
    }

    pub fn from_terms<I: IntoIterator<Item = (K, F)>>(terms: I) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, key: K, coeff: F) {
        if coeff.is_zero() {
            return;
        }
        match self.entries.get_mut(&key) {
            Some(c) => {
                let sum = c.clone() + coeff;
                if sum.is_zero() {
                    self.entries.remove(&key);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.entries.insert(key, coeff);
            }
        }
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &Self, scale: &F) {
        if scale.is_zero() {
            return;
        }
        for (k, c) in &other.entries {
            self.add_term(k.clone(), c.clone() * scale.clone());
        }
    }

    pub fn scaled(&self, scale: &F) -> Self {
        if scale.is_zero() {
            return Self::zero();
        }
        SparseVector {
            entries: self
                .entries
                .iter()
                .map(|(k, c)| (k.clone(), c.clone() * scale.clone()))
                .collect(),
        }
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-F::one())
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &F::one());
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-F::one());
        out
    }

    pub fn get(&self, key: &K) -> F {
        self.entries.get(key).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(&K, &F)> {
        self.entries.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &F)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    /// Rescales so that the leading coefficient is one.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => {
                let inv = F::one() / c.clone();
                self.scaled(&inv)
            }
        }
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<K2: Ord + Clone>(
        &self,
        mut image: impl FnMut(&K) -> SparseVector<K2, F>,
    ) -> SparseVector<K2, F> {
        let mut out = SparseVector::zero();
        for (k, c) in &self.entries {
            out.add_scaled(&image(k), c);
        }
        out
    }

    /// Eliminates every key that is a pivot of `rows`, sweeping keys in
    /// increasing order. Each row must have its pivot as its leading key with
    /// coefficient one, so elimination only introduces larger keys.
    fn sweep(&mut self, rows: &BTreeMap<K, SparseVector<K, F>>) {
        self.sweep_with_tag::<K>(rows, None);
    }

    fn sweep_with_tag<T: Ord + Clone>(
        &mut self,
        rows: &BTreeMap<K, SparseVector<K, F>>,
        mut tag: Option<&mut (SparseVector<T, F>, &BTreeMap<K, SparseVector<T, F>>)>,
    ) {
        if rows.is_empty() {
            return;
        }
        let mut cursor: Option<K> = None;
        loop {
            let lower = match &cursor {
                None => Bound::Unbounded,
                Some(k) => Bound::Excluded(k.clone()),
            };
            let hit = self
                .entries
                .range((lower, Bound::Unbounded))
                .find(|(k, _)| rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((key, coeff)) = hit else { break };
            let factor = -coeff;
            self.add_scaled(&rows[&key], &factor);
            if let Some((tag_vec, tag_rows)) = tag.as_mut() {
                tag_vec.add_scaled(&tag_rows[&key], &factor);
            }
            cursor = Some(key);
        }
    }
}

/// An ordered ambient basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Ambient<K> {
    keys: Vec<K>,
}

impl<K: Debug> Debug for Ambient<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ambient(dim {})", self.keys.len())
    }
}

impl<K: Ord + Clone + Debug> Ambient<K> {
    /// Builds an ambient basis; keys are sorted and deduplicated.
    pub fn new(mut keys: Vec<K>) -> Arc<Self> {
        keys.sort();
        keys.dedup();
        Arc::new(Ambient { keys })
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }

    pub fn contains(&self, key: &K) -> bool {
        self.keys.binary_search(key).is_ok()
    }

    pub fn check<F>(&self, v: &SparseVector<K, F>) -> Result<()> {
        match v.entries.keys().find(|k| !self.contains(k)) {
            Some(k) => Err(Error::UnknownKey(format!("{k:?}"))),
            None => Ok(()),
        }
    }
}

fn same_ambient<K: PartialEq>(a: &Arc<Ambient<K>>, b: &Arc<Ambient<K>>) -> bool {
    Arc::ptr_eq(a, b) || a.keys == b.keys
}

/// Incremental row-echelon form; rows are keyed by their pivot.
struct Echelon<K: Ord, F> {
    rows: BTreeMap<K, SparseVector<K, F>>,
}

impl<K: Ord + Clone, F: Field> Echelon<K, F> {
    fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }

    fn insert(&mut self, mut v: SparseVector<K, F>) -> bool {
        v.sweep(&self.rows);
        match v.leading() {
            None => false,
            Some((k, _)) => {
                let k = k.clone();
                self.rows.insert(k, v.normalized());
                true
            }
        }
    }

    fn into_rref(self) -> Vec<SparseVector<K, F>> {
        let mut done: BTreeMap<K, SparseVector<K, F>> = BTreeMap::new();
        for (pivot, row) in self.rows.into_iter().rev() {
            let (lead_key, lead) = row.leading().map(|(k, c)| (k.clone(), c.clone())).unwrap();
            let mut rest = row;
            rest.entries.remove(&lead_key);
            rest.sweep(&done);
            rest.add_term(lead_key, lead);
            done.insert(pivot, rest);
        }
        done.into_values().collect()
    }
}

/// A subspace held in reduced row-echelon form over its ambient key order.
#[derive(Clone)]
pub struct Subspace<K: Ord, F> {
    ambient: Arc<Ambient<K>>,
    rows: BTreeMap<K, SparseVector<K, F>>,
}

impl<K: Ord + Debug, F: Debug> Debug for Subspace<K, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("ambient_dim", &self.ambient.keys.len())
            .field("basis", &self.rows.values().collect::<Vec<_>>())
            .finish()
    }
}

impl<K: Ord + Clone + Debug, F: Field> Subspace<K, F> {
    pub fn zero(ambient: Arc<Ambient<K>>) -> Self {
        Subspace {
            ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn full(ambient: Arc<Ambient<K>>) -> Self {
        let rows = ambient
            .keys
            .iter()
            .map(|k| (k.clone(), SparseVector::unit(k.clone())))
            .collect();
        Subspace { ambient, rows }
    }

    /// The linear span of `vectors`, in canonical form.
    pub fn span<I>(vectors: I, ambient: Arc<Ambient<K>>) -> Result<Self>
    where
        I: IntoIterator<Item = SparseVector<K, F>>,
    {
        let mut ech = Echelon::new();
        for v in vectors {
            ambient.check(&v)?;
            ech.insert(v);
        }
        let rows = ech
            .into_rref()
            .into_iter()
            .map(|r| (r.leading().unwrap().0.clone(), r))
            .collect();
        Ok(Subspace { ambient, rows })
    }

    pub fn ambient(&self) -> &Arc<Ambient<K>> {
        &self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVector<K, F>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Normal form of `v` modulo the subspace: all pivot coordinates removed.
    /// This is a linear map whose kernel is the subspace.
    pub fn reduce(&self, v: &SparseVector<K, F>) -> SparseVector<K, F> {
        let mut out = v.clone();
        out.sweep(&self.rows);
        out
    }

    pub fn contains(&self, v: &SparseVector<K, F>) -> Result<bool> {
        self.ambient.check(v)?;
        Ok(self.reduce(v).is_zero())
    }

    pub fn equal(&self, other: &Self) -> Result<bool> {
        if !same_ambient(&self.ambient, &other.ambient) {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.rows == other.rows)
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        if !same_ambient(&self.ambient, &other.ambient) {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.rows.values().all(|r| other.reduce(r).is_zero()))
    }

    /// The sum of two subspaces of the same ambient.
    pub fn join(&self, other: &Self) -> Result<Self> {
        if !same_ambient(&self.ambient, &other.ambient) {
            return Err(Error::AmbientMismatch);
        }
        Self::span(
            self.rows.values().chain(other.rows.values()).cloned(),
            self.ambient.clone(),
        )
    }

    /// Null space of the linear map sending each input key to `image(key)`.
    pub fn kernel<K2, M>(inputs: Arc<Ambient<K>>, mut image: M) -> Result<Self>
    where
        K2: Ord + Clone,
        M: FnMut(&K) -> SparseVector<K2, F>,
    {
        let mut rows: BTreeMap<K2, SparseVector<K2, F>> = BTreeMap::new();
        let mut tags: BTreeMap<K2, SparseVector<K, F>> = BTreeMap::new();
        let mut null = Vec::new();
        for key in inputs.keys.iter() {
            let mut v = image(key);
            let mut tag = (SparseVector::unit(key.clone()), &tags);
            v.sweep_with_tag(&rows, Some(&mut tag));
            let tag = tag.0;
            match v.leading().map(|(k, c)| (k.clone(), c.clone())) {
                None => null.push(tag),
                Some((pivot, lead)) => {
                    let inv = F::one() / lead;
                    rows.insert(pivot.clone(), v.scaled(&inv));
                    tags.insert(pivot, tag.scaled(&inv));
                }
            }
        }
        Self::span(null, inputs)
    }

    /// `{ b : <s, b> = 0 for all s }`, where `form[a]` is the row of the
    /// pairing against the basis of `target`.
    pub fn annihilator<K2>(
        &self,
        form: &BTreeMap<K, SparseVector<K2, F>>,
        target: Arc<Ambient<K2>>,
    ) -> Result<Subspace<K2, F>>
    where
        K2: Ord + Clone + Debug,
    {
        let mut columns: BTreeMap<K2, SparseVector<usize, F>> = BTreeMap::new();
        for (j, s) in self.rows.values().enumerate() {
            let mut w: SparseVector<K2, F> = SparseVector::zero();
            for (a, c) in s.iter() {
                let row = form
                    .get(a)
                    .ok_or_else(|| Error::UnknownKey(format!("{a:?}")))?;
                w.add_scaled(row, c);
            }
            for (b, c) in w.iter() {
                columns
                    .entry(b.clone())
                    .or_default()
                    .add_term(j, c.clone());
            }
        }
        Subspace::kernel(target, |b| columns.get(b).cloned().unwrap_or_default())
    }
}

impl<K: Ord, F: PartialEq> PartialEq for Subspace<K, F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

/// Rank of a finite list of vectors.
pub fn rank<K, F, I>(vectors: I) -> usize
where
    K: Ord + Clone,
    F: Field,
    I: IntoIterator<Item = SparseVector<K, F>>,
{
    let mut ech = Echelon::new();
    vectors.into_iter().filter(|v| ech.insert(v.clone())).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn vec(terms: &[(u32, i64)]) -> SparseVector<u32, Q> {
        SparseVector::from_terms(terms.iter().map(|&(k, c)| (k, q(c))))
    }

    fn amb(n: u32) -> Arc<Ambient<u32>> {
        Ambient::new((1..=n).collect())
    }

    #[test]
    fn empty_span_is_zero() {
        let s = Subspace::<u32, Q>::span(vec![], amb(3)).unwrap();
        assert_eq!(s.dim(), 0);
        assert!(s.contains(&SparseVector::zero()).unwrap());
    }

    #[test]
    fn span_row_reduces() {
        let s = Subspace::span(vec![vec(&[(1, 1), (2, 1)]), vec(&[(2, 1)])], amb(3)).unwrap();
        assert_eq!(s.dim(), 2);
        let basis: Vec<_> = s.basis().cloned().collect();
        assert_eq!(basis, vec![vec(&[(1, 1)]), vec(&[(2, 1)])]);
    }

    #[test]
    fn unknown_key_is_reported() {
        let err = Subspace::span(vec![vec(&[(7, 1)])], amb(3)).unwrap_err();
        assert_eq!(err, Error::UnknownKey("7".into()));
    }

    #[test]
    fn membership() {
        let s = Subspace::span(vec![vec(&[(1, 1)])], amb(3)).unwrap();
        assert!(!s.contains(&vec(&[(2, 1)])).unwrap());
        assert!(s.contains(&vec(&[(1, -5)])).unwrap());
    }

    #[test]
    fn equality_is_scale_invariant() {
        let a = Subspace::span(vec![vec(&[(1, 1), (2, 1)])], amb(3)).unwrap();
        let b = Subspace::span(vec![vec(&[(1, 2), (2, 2)])], amb(3)).unwrap();
        assert!(a.equal(&b).unwrap());
        assert!(a.equal(&a).unwrap());
        let c = Subspace::<u32, Q>::zero(amb(4));
        assert_eq!(a.equal(&c), Err(Error::AmbientMismatch));
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let id = Subspace::<u32, Q>::kernel(amb(3), |k| SparseVector::unit(*k)).unwrap();
        assert_eq!(id.dim(), 0);
        let zero = Subspace::<u32, Q>::kernel(amb(3), |_| SparseVector::<u32, Q>::zero()).unwrap();
        assert_eq!(zero.dim(), 3);
    }

    #[test]
    fn annihilator_extremes() {
        let a = amb(3);
        let form: BTreeMap<u32, SparseVector<u32, Q>> =
            a.keys().iter().map(|k| (*k, SparseVector::unit(*k))).collect();
        let zero = Subspace::<u32, Q>::zero(a.clone());
        assert_eq!(zero.annihilator(&form, a.clone()).unwrap().dim(), 3);
        let full = Subspace::<u32, Q>::full(a.clone());
        assert_eq!(full.annihilator(&form, a.clone()).unwrap().dim(), 0);
    }

    /// Dense fraction-free elimination over i128, used as an oracle for rank.
    fn oracle_rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, p);
            for i in 0..m.len() {
                if i != rank && m[i][c] != 0 {
                    let (a, b) = (m[rank][c], m[i][c]);
                    for j in 0..cols {
                        m[i][j] = m[i][j] * a - m[rank][j] * b;
                    }
                    let g = m[i].iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
                    if g > 1 {
                        m[i].iter_mut().for_each(|x| *x /= g);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn dense_to_sparse(rows: &[Vec<i64>]) -> Vec<SparseVector<u32, Q>> {
        rows.iter()
            .map(|r| {
                SparseVector::from_terms(r.iter().enumerate().map(|(j, &x)| (j as u32 + 1, q(x))))
            })
            .collect()
    }

    proptest! {
        #[test]
        fn span_matches_oracle_rank(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..7)) {
            let s = Subspace::span(dense_to_sparse(&rows), amb(5)).unwrap();
            prop_assert_eq!(s.dim(), oracle_rank(&rows));
            // RREF idempotence.
            let again = Subspace::span(s.basis().cloned(), amb(5)).unwrap();
            prop_assert!(again.equal(&s).unwrap());
            for r in dense_to_sparse(&rows) {
                prop_assert!(s.contains(&r).unwrap());
            }
        }

        #[test]
        fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..6)) {
            // map: input key j -> column j of the matrix
            let ncols = 4u32;
            let ker = Subspace::<u32, Q>::kernel(amb(ncols), |j| {
                SparseVector::from_terms(rows.iter().enumerate().map(|(i, r)| (i as u32, q(r[*j as usize - 1]))))
            }).unwrap();
            prop_assert_eq!(ker.dim() + oracle_rank(&rows), ncols as usize);
            for v in ker.basis() {
                for r in &rows {
                    let dot: Q = v.iter().fold(q(0), |acc, (k, c)| acc + c.clone() * q(r[*k as usize - 1]));
                    prop_assert!(dot.is_zero());
                }
            }
        }

        #[test]
        fn double_annihilator(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 0..5)) {
            let a = amb(4);
            // A nondegenerate, non-diagonal pairing (determinant -1).
            let form: BTreeMap<u32, SparseVector<u32, Q>> = [
                (1, vec(&[(1, 1), (2, 1)])),
                (2, vec(&[(2, 1), (3, 1)])),
                (3, vec(&[(3, 1), (4, 1)])),
                (4, vec(&[(1, 2), (4, 1)])),
            ].into_iter().collect();
            let transposed: BTreeMap<u32, SparseVector<u32, Q>> = a.keys().iter().map(|&b| {
                (b, SparseVector::from_terms(form.iter().map(|(k, row)| (*k, row.get(&b)))))
            }).collect();
            let s = Subspace::span(dense_to_sparse(&rows), a.clone()).unwrap();
            let ann = s.annihilator(&form, a.clone()).unwrap();
            prop_assert_eq!(ann.dim() + s.dim(), 4);
            let back = ann.annihilator(&transposed, a.clone()).unwrap();
            prop_assert!(back.equal(&s).unwrap());
        }

        #[test]
        fn small_rationals_agree_with_bigrationals(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..5)) {
            use num_rational::Ratio;
            let small: Vec<SparseVector<u32, Ratio<i64>>> = rows.iter().map(|r| {
                SparseVector::from_terms(r.iter().enumerate().map(|(j, &x)| (j as u32 + 1, Ratio::from_integer(x))))
            }).collect();
            let s_small = Subspace::span(small, amb(4)).unwrap();
            let s_big = Subspace::span(dense_to_sparse(&rows), amb(4)).unwrap();
            prop_assert_eq!(s_small.dim(), s_big.dim());
            for (a, b) in s_small.basis().zip(s_big.basis()) {
                let a: Vec<_> = a.iter().map(|(k, c)| (*k, c.to_string())).collect();
                let b: Vec<_> = b.iter().map(|(k, c)| (*k, c.to_string())).collect();
                prop_assert_eq!(a, b);
            }
        }
    }
}
