//! Sparse vectors in a free module over the rationals.
//!
//! Labels are arbitrary ordered keys (basis indices, tuples of indices, PBW
//! monomials). The map never stores a zero coefficient, so `==` is equality
//! of vectors and iteration order is the lexicographic label order.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct FreeVector<L: Ord + Clone> {
    terms: BTreeMap<L, Scalar>,
}

impl<L: Ord + Clone> Default for FreeVector<L> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<L: Ord + Clone> FreeVector<L> {
    pub fn zero() -> Self {
        FreeVector { terms: BTreeMap::new() }
    }

    pub fn basis(label: L) -> Self {
        Self::term(label, Scalar::one())
    }

    pub fn term(label: L, c: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(label, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, label: &L) -> Scalar {
        self.terms.get(label).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, label: L, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(label) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (l, c) in other.iter() {
            self.add_term(l.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (l, c) in other.iter() {
            self.add_term(l.clone(), -c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (l, x) in self.iter() {
            out.terms.insert(l.clone(), x * c);
        }
        out
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (l, x) in other.iter() {
            self.add_term(l.clone(), x * c);
        }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-Scalar::one())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, &Scalar)> {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> {
        self.terms.keys()
    }

    /// Leading term in label order, if any.
    pub fn leading(&self) -> Option<(&L, &Scalar)> {
        self.terms.iter().next()
    }

    pub fn into_terms(self) -> BTreeMap<L, Scalar> {
        self.terms
    }

    pub fn from_terms<I: IntoIterator<Item = (L, Scalar)>>(it: I) -> Self {
        let mut v = Self::zero();
        for (l, c) in it {
            v.add_term(l, c);
        }
        v
    }

    /// Pushes every term through `f`, summing the images; `f` need not be
    /// injective on labels.
    pub fn map_labels<M: Ord + Clone>(&self, mut f: impl FnMut(&L) -> M) -> FreeVector<M> {
        let mut out = FreeVector::zero();
        for (l, c) in self.iter() {
            out.add_term(f(l), c.clone());
        }
        out
    }

    /// Linear extension of a label-wise map into another free module.
    pub fn bind<M: Ord + Clone>(&self, mut f: impl FnMut(&L) -> FreeVector<M>) -> FreeVector<M> {
        let mut out = FreeVector::zero();
        for (l, c) in self.iter() {
            out.add_scaled(c, &f(l));
        }
        out
    }
}

impl<L: Ord + Clone + fmt::Debug> fmt::Debug for FreeVector<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}*{:?}", c, l)?;
            first = false;
        }
        Ok(())
    }
}

/// Product label of two vectors, with labels combined by `f`.
pub fn tensor<A, B, M>(
    a: &FreeVector<A>,
    b: &FreeVector<B>,
    mut f: impl FnMut(&A, &B) -> M,
) -> FreeVector<M>
where
    A: Ord + Clone,
    B: Ord + Clone,
    M: Ord + Clone,
{
    let mut out = FreeVector::zero();
    for (la, ca) in a.iter() {
        for (lb, cb) in b.iter() {
            out.add_term(f(la, lb), ca * cb);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_are_never_stored() {
        let mut v: FreeVector<u32> = FreeVector::zero();
        v.add_term(3, Scalar::one());
        v.add_term(3, -Scalar::one());
        assert!(v.is_zero());
        assert_eq!(v.len(), 0);
        v.add_term(1, Scalar::ratio(1, 2));
        v.add_term(2, Scalar::zero());
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn arithmetic_and_order() {
        let a = FreeVector::from_terms([(2u32, Scalar::one()), (1, Scalar::from_int(3))]);
        let b = FreeVector::from_terms([(2u32, -Scalar::one()), (5, Scalar::one())]);
        let s = a.add(&b);
        let labels: Vec<u32> = s.labels().cloned().collect();
        assert_eq!(labels, vec![1, 5]);
        assert_eq!(s.coeff(&1), Scalar::from_int(3));
        assert_eq!(a.sub(&a), FreeVector::zero());
    }

    #[test]
    fn bind_merges_images() {
        let v = FreeVector::from_terms([(0u32, Scalar::one()), (1, Scalar::one())]);
        let w = v.bind(|_| FreeVector::basis(7u32));
        assert_eq!(w.coeff(&7), Scalar::from_int(2));
    }

    #[test]
    fn tensor_products() {
        let a = FreeVector::from_terms([(0u32, Scalar::from_int(2))]);
        let b = FreeVector::from_terms([(1u32, Scalar::ratio(1, 2)), (2, Scalar::one())]);
        let t = tensor(&a, &b, |x, y| (*x, *y));
        assert_eq!(t.coeff(&(0, 1)), Scalar::one());
        assert_eq!(t.coeff(&(0, 2)), Scalar::from_int(2));
    }
}
