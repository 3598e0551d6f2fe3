//! Sparse row reduction over labeled bases, and linear quotients.
//!
//! The relation sets that cut out balanced tensor products are huge but very
//! sparse (each relation moves one base-algebra factor across one tensor
//! gap), so quotient spaces are built by sparse elimination keyed on the
//! lexicographic label order rather than by dense matrices.
//!
//! `Reducer` keeps a fully inter-reduced row basis: each stored row has a
//! pivot label (its smallest label), the pivot coefficient is 1, and no row
//! mentions another row's pivot. Reducing a vector therefore needs one pass
//! per pivot it touches, and two reduced vectors are equal iff they are
//! equal termwise.

use crate::freevec::FreeVector;
use std::collections::BTreeMap;

#[derive(Clone)]
pub struct Reducer<L: Ord + Clone> {
    rows: BTreeMap<L, FreeVector<L>>,
}

impl<L: Ord + Clone> Default for Reducer<L> {
    fn default() -> Self {
        Self::new()
    }
}

impl<L: Ord + Clone> Reducer<L> {
    pub fn new() -> Self {
        Reducer { rows: BTreeMap::new() }
    }

    pub fn from_rows<I: IntoIterator<Item = FreeVector<L>>>(rows: I) -> Self {
        let mut r = Self::new();
        for row in rows {
            r.insert(row);
        }
        r
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &L> {
        self.rows.keys()
    }

    pub fn is_pivot(&self, l: &L) -> bool {
        self.rows.contains_key(l)
    }

    /// Eliminates all pivot labels from `v`. The result is the canonical
    /// representative of `v` modulo the row span; it is zero iff `v` lies in
    /// the span.
    pub fn reduce(&self, v: &FreeVector<L>) -> FreeVector<L> {
        let mut out = v.clone();
        loop {
            let hit = out
                .iter()
                .find(|(l, _)| self.rows.contains_key(l))
                .map(|(l, c)| (l.clone(), c.clone()));
            match hit {
                None => return out,
                Some((l, c)) => {
                    out.add_scaled(&-&c, &self.rows[&l]);
                    debug_assert!(out.coeff(&l).is_zero());
                }
            }
        }
    }

    /// Adds a row to the span; returns false when it was already dependent.
    pub fn insert(&mut self, row: FreeVector<L>) -> bool {
        let red = self.reduce(&row);
        let Some((pivot, lead)) = red.leading().map(|(l, c)| (l.clone(), c.clone())) else {
            return false;
        };
        let norm = red.scaled(&lead.inv());
        // Keep stored rows clear of the new pivot.
        let dirty: Vec<L> = self
            .rows
            .iter()
            .filter(|(_, r)| !r.coeff(&pivot).is_zero())
            .map(|(p, _)| p.clone())
            .collect();
        for p in dirty {
            let c = self.rows[&p].coeff(&pivot);
            let fixed = {
                let mut r = self.rows[&p].clone();
                r.add_scaled(&-&c, &norm);
                r
            };
            self.rows.insert(p, fixed);
        }
        self.rows.insert(pivot, norm);
        true
    }

    pub fn contains(&self, v: &FreeVector<L>) -> bool {
        self.reduce(v).is_zero()
    }
}

/// Normal form of `v` against a family of relation vectors.
///
/// The relations are inter-reduced first (in lexicographic pivot order);
/// callers that reuse a relation set should build a `Reducer` once instead.
pub fn quotient_reduce<L: Ord + Clone>(
    relations: &[FreeVector<L>],
    v: &FreeVector<L>,
) -> FreeVector<L> {
    Reducer::from_rows(relations.iter().cloned()).reduce(v)
}

/// A finite-dimensional quotient of a free module, presented by relations.
///
/// The quotient basis is the set of non-pivot labels among `ambient`, in
/// label order; `reduce` rewrites any vector over `ambient` as a combination
/// of those.
pub struct Quotient<L: Ord + Clone> {
    reducer: Reducer<L>,
    basis: Vec<L>,
    index: BTreeMap<L, usize>,
}

impl<L: Ord + Clone> Quotient<L> {
    pub fn new<I, R>(ambient: I, relations: R) -> Self
    where
        I: IntoIterator<Item = L>,
        R: IntoIterator<Item = FreeVector<L>>,
    {
        let reducer = Reducer::from_rows(relations);
        let basis: Vec<L> = ambient.into_iter().filter(|l| !reducer.is_pivot(l)).collect();
        let index = basis.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Quotient { reducer, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[L] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &L {
        &self.basis[i]
    }

    pub fn index_of(&self, l: &L) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn reduce(&self, v: &FreeVector<L>) -> FreeVector<L> {
        self.reducer.reduce(v)
    }

    /// Coordinates of the normal form w.r.t. the quotient basis.
    pub fn coords(&self, v: &FreeVector<L>) -> FreeVector<usize> {
        self.reduce(v).map_labels(|l| {
            *self
                .index
                .get(l)
                .expect("normal form mentions a label outside the declared ambient basis")
        })
    }
}

/// Incremental span with membership queries, for boundary-space solves.
pub struct Span<L: Ord + Clone> {
    reducer: Reducer<L>,
}

impl<L: Ord + Clone> Default for Span<L> {
    fn default() -> Self {
        Self::new()
    }
}

impl<L: Ord + Clone> Span<L> {
    pub fn new() -> Self {
        Span { reducer: Reducer::new() }
    }

    pub fn from_vectors<I: IntoIterator<Item = FreeVector<L>>>(vs: I) -> Self {
        Span { reducer: Reducer::from_rows(vs) }
    }

    pub fn add(&mut self, v: FreeVector<L>) -> bool {
        self.reducer.insert(v)
    }

    pub fn rank(&self) -> usize {
        self.reducer.rank()
    }

    pub fn contains(&self, v: &FreeVector<L>) -> bool {
        self.reducer.contains(v)
    }

    pub fn reduce(&self, v: &FreeVector<L>) -> FreeVector<L> {
        self.reducer.reduce(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn fv(pairs: &[(u32, i64)]) -> FreeVector<u32> {
        FreeVector::from_terms(pairs.iter().map(|&(l, c)| (l, Scalar::from_int(c))))
    }

    #[test]
    fn reduce_is_idempotent_and_linear() {
        let rels = vec![fv(&[(0, 1), (2, -1)]), fv(&[(1, 2), (3, 1)])];
        let r = Reducer::from_rows(rels.clone());
        let v = fv(&[(0, 5), (1, 1), (4, 2)]);
        let nf = r.reduce(&v);
        assert_eq!(r.reduce(&nf), nf);
        let w = fv(&[(2, 3), (3, 7)]);
        let lhs = r.reduce(&v.add(&w));
        let rhs = r.reduce(&v).add(&r.reduce(&w));
        assert_eq!(lhs, rhs);
        // relations themselves die
        for rel in &rels {
            assert!(r.reduce(rel).is_zero());
        }
    }

    #[test]
    fn quotient_dimension_counts_free_labels() {
        // span{e0 - e1, e1 - e2} inside Q^4: quotient has dim 2
        let q = Quotient::new(0u32..4, vec![fv(&[(0, 1), (1, -1)]), fv(&[(1, 1), (2, -1)])]);
        assert_eq!(q.dim(), 2);
        // e0, e1, e2 all reduce to the same class
        let a = q.reduce(&fv(&[(0, 1)]));
        let b = q.reduce(&fv(&[(2, 1)]));
        assert_eq!(a, b);
        assert!(q.index_of(&3).is_some());
    }

    #[test]
    fn span_membership() {
        let mut s = Span::new();
        assert!(s.add(fv(&[(0, 1), (1, 1)])));
        assert!(s.add(fv(&[(1, 1), (2, 1)])));
        assert!(!s.add(fv(&[(0, 1), (2, 1), (1, 2)])));
        assert!(s.contains(&fv(&[(0, 2), (1, 2)])));
        assert!(!s.contains(&fv(&[(0, 1)])));
    }

    #[test]
    fn dependent_relations_do_not_inflate_rank() {
        let rels = vec![fv(&[(0, 1), (1, 1)]), fv(&[(0, 2), (1, 2)]), fv(&[(0, -1), (1, -1)])];
        assert_eq!(Reducer::from_rows(rels).rank(), 1);
    }
}
