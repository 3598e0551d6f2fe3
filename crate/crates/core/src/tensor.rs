//! Balanced tensor products of finite-dimensional module slots.
//!
//! A `BalancedSpace` is a tensor product of slots quotiented by one
//! "gap relation" family per adjacent pair: for operators L_a on the left
//! slot and R_a on the right slot (one pair per relation generator a),
//! L_a(x) (x) y ~ x (x) R_a(y).
//!
//! Different choices of L/R realize the module tensor products that show up
//! around bialgebroids: coproduct targets, chain-side gaps over the opposite
//! algebra, and coefficient-module gaps at either end.
//!
//! The quotient is built one slot at a time. Writing Q_k for the balanced
//! product of the first k+1 slots, Q_{k+1} is the pair space Q_k (x) slot
//! quotiented by the last gap's relations, with L_a applied to the last slot
//! of each normal-form tuple and re-reduced. Every quotient basis element is
//! the class of a single raw tuple, so elements convert both ways: raw
//! tuples reduce to coordinates, basis indices lift to tuples.
//!
//! Well-definedness of maps defined by raw-tuple formulas is a property of
//! the formula, not of this container; callers verify it by checking that
//! their formulas annihilate `all_relations_raw`.

use crate::freevec::FreeVector;
use crate::rowred::Quotient;
use std::collections::HashMap;

pub type Tuple = Vec<u32>;
/// Linear combination of raw (unreduced) tuples.
pub type RawVec = FreeVector<Tuple>;
/// Coordinates in a space's quotient basis.
pub type Coords = FreeVector<usize>;

/// One gap's relation generators: images of each slot basis element under
/// the left and right operators, indexed `[generator][slot label]`.
#[derive(Clone)]
pub struct GapOps {
    pub lop: Vec<Vec<FreeVector<u32>>>,
    pub rop: Vec<Vec<FreeVector<u32>>>,
}

#[derive(Debug, thiserror::Error)]
pub enum TensorError {
    #[error("need one gap per adjacent slot pair: {slots} slots, {gaps} gaps")]
    GapCount { slots: usize, gaps: usize },
    #[error("gap {0}: operator table shape mismatch")]
    OpShape(usize),
    #[error("intermediate space at slot {slot} has {size} pair labels, over the cap {cap} (set HOPFALGD_MAX_DIM to raise)")]
    TooLarge { slot: usize, size: usize, cap: usize },
}

/// Pair-space size cap, overridable through HOPFALGD_MAX_DIM.
pub fn dim_cap() -> usize {
    std::env::var("HOPFALGD_MAX_DIM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(400_000)
}

struct Level {
    quot: Quotient<(usize, u32)>,
    /// Raw tuple behind each quotient basis index.
    tuples: Vec<Tuple>,
    /// coords of the class of (prev basis q, slot label j), dense by [q][j].
    pair_coords: Vec<Vec<Coords>>,
}

pub struct BalancedSpace {
    slot_dims: Vec<usize>,
    gaps: Vec<GapOps>,
    levels: Vec<Level>,
}

impl BalancedSpace {
    pub fn build(slot_dims: &[usize], gaps: &[GapOps]) -> Result<Self, TensorError> {
        Self::build_capped(slot_dims, gaps, dim_cap())
    }

    pub fn build_capped(
        slot_dims: &[usize],
        gaps: &[GapOps],
        cap: usize,
    ) -> Result<Self, TensorError> {
        if slot_dims.is_empty() || gaps.len() + 1 != slot_dims.len() {
            return Err(TensorError::GapCount { slots: slot_dims.len(), gaps: gaps.len() });
        }
        for (g, ops) in gaps.iter().enumerate() {
            if ops.lop.len() != ops.rop.len()
                || ops.lop.iter().any(|t| t.len() != slot_dims[g])
                || ops.rop.iter().any(|t| t.len() != slot_dims[g + 1])
            {
                return Err(TensorError::OpShape(g));
            }
        }
        let mut space = BalancedSpace {
            slot_dims: slot_dims.to_vec(),
            gaps: gaps.to_vec(),
            levels: vec![],
        };
        for k in 1..slot_dims.len() {
            let prev_dim = space.level_dim(k - 1);
            let here = slot_dims[k];
            let size = prev_dim * here;
            if size > cap {
                return Err(TensorError::TooLarge { slot: k, size, cap });
            }
            let ops = &space.gaps[k - 1];
            let mut relations: Vec<FreeVector<(usize, u32)>> = vec![];
            for q in 0..prev_dim {
                let t = space.tuple_at(k - 1, q);
                for a in 0..ops.lop.len() {
                    // L_a on the last slot of the class of t, re-reduced.
                    let last = *t.last().unwrap();
                    let mut moved: Coords = FreeVector::zero();
                    for (j2, c) in ops.lop[a][last as usize].iter() {
                        let mut t2 = t.clone();
                        *t2.last_mut().unwrap() = *j2;
                        moved.add_scaled(c, &space.coords_prefix(k - 1, &t2));
                    }
                    for j in 0..here {
                        let mut rel: FreeVector<(usize, u32)> = FreeVector::zero();
                        for (q2, c) in moved.iter() {
                            rel.add_term((*q2, j as u32), c.clone());
                        }
                        for (j2, c) in ops.rop[a][j].iter() {
                            rel.add_term((q, *j2), -c);
                        }
                        if !rel.is_zero() {
                            relations.push(rel);
                        }
                    }
                }
            }
            let ambient =
                (0..prev_dim).flat_map(|q| (0..here).map(move |j| (q, j as u32)));
            let quot = Quotient::new(ambient, relations);
            let tuples: Vec<Tuple> = quot
                .basis()
                .iter()
                .map(|&(q, j)| {
                    let mut t = space.tuple_at(k - 1, q);
                    t.push(j);
                    t
                })
                .collect();
            let mut pair_coords = vec![Vec::with_capacity(here); prev_dim];
            for q in 0..prev_dim {
                for j in 0..here {
                    let v = quot.coords(&FreeVector::basis((q, j as u32)));
                    pair_coords[q].push(v);
                }
            }
            space.levels.push(Level { quot, tuples, pair_coords });
        }
        Ok(space)
    }

    pub fn slots(&self) -> usize {
        self.slot_dims.len()
    }

    pub fn slot_dims(&self) -> &[usize] {
        &self.slot_dims
    }

    pub fn dim(&self) -> usize {
        self.level_dim(self.slots() - 1)
    }

    fn level_dim(&self, k: usize) -> usize {
        if k == 0 {
            self.slot_dims[0]
        } else {
            self.levels[k - 1].quot.dim()
        }
    }

    fn tuple_at(&self, k: usize, q: usize) -> Tuple {
        if k == 0 {
            vec![q as u32]
        } else {
            self.levels[k - 1].tuples[q].clone()
        }
    }

    /// Basis tuple behind quotient index `i` of the full space.
    pub fn basis_tuple(&self, i: usize) -> Tuple {
        self.tuple_at(self.slots() - 1, i)
    }

    pub fn basis_tuples(&self) -> Vec<Tuple> {
        (0..self.dim()).map(|i| self.basis_tuple(i)).collect()
    }

    /// Coordinates of the class of a raw tuple covering slots 0..=k.
    fn coords_prefix(&self, k: usize, t: &[u32]) -> Coords {
        debug_assert_eq!(t.len(), k + 1);
        if k == 0 {
            return FreeVector::basis(t[0] as usize);
        }
        let prev = self.coords_prefix(k - 1, &t[..k]);
        let level = &self.levels[k - 1];
        let mut out = FreeVector::zero();
        for (q, c) in prev.iter() {
            out.add_scaled(c, &level.pair_coords[*q][t[k] as usize]);
        }
        out
    }

    pub fn coords_tuple(&self, t: &[u32]) -> Coords {
        assert_eq!(t.len(), self.slots(), "tuple arity mismatch");
        self.coords_prefix(self.slots() - 1, t)
    }

    pub fn coords(&self, raw: &RawVec) -> Coords {
        let mut out = FreeVector::zero();
        for (t, c) in raw.iter() {
            out.add_scaled(c, &self.coords_tuple(t));
        }
        out
    }

    /// Expands coordinates as a combination of normal-form raw tuples.
    pub fn raw_of_coords(&self, v: &Coords) -> RawVec {
        v.map_labels(|i| self.basis_tuple(*i))
    }

    /// Generators of the full relation submodule, as raw-tuple vectors.
    ///
    /// One family per gap, built from the construction's per-level
    /// generators tensored with every suffix label combination. Intended
    /// for well-definedness tests on small instances; the count grows like
    /// the raw tuple space.
    pub fn all_relations_raw(&self) -> Vec<RawVec> {
        let n = self.slots();
        let mut out = vec![];
        for k in 1..n {
            let prev_dim = self.level_dim(k - 1);
            let ops = &self.gaps[k - 1];
            let mut level_rels: Vec<RawVec> = vec![];
            for q in 0..prev_dim {
                let t = self.tuple_at(k - 1, q);
                for a in 0..ops.lop.len() {
                    for j in 0..self.slot_dims[k] {
                        let mut rel: RawVec = FreeVector::zero();
                        let last = *t.last().unwrap();
                        for (j2, c) in ops.lop[a][last as usize].iter() {
                            let mut t2 = t.clone();
                            *t2.last_mut().unwrap() = *j2;
                            t2.push(j as u32);
                            rel.add_term(t2, c.clone());
                        }
                        for (j2, c) in ops.rop[a][j].iter() {
                            let mut t2 = t.clone();
                            t2.push(*j2);
                            rel.add_term(t2, -c);
                        }
                        if !rel.is_zero() {
                            level_rels.push(rel);
                        }
                    }
                }
            }
            // suffix over slots k+1..n
            let mut suffixes: Vec<Tuple> = vec![vec![]];
            for s in k + 1..n {
                let mut grown = Vec::with_capacity(suffixes.len() * self.slot_dims[s]);
                for suf in &suffixes {
                    for j in 0..self.slot_dims[s] {
                        let mut s2 = suf.clone();
                        s2.push(j as u32);
                        grown.push(s2);
                    }
                }
                suffixes = grown;
            }
            for rel in level_rels {
                for suf in &suffixes {
                    out.push(rel.map_labels(|t| {
                        let mut t2 = t.clone();
                        t2.extend_from_slice(suf);
                        t2
                    }));
                }
            }
        }
        out
    }
}

/// Applies a label-linear map to slot `i` of every tuple.
pub fn map_slot(v: &RawVec, i: usize, f: impl Fn(u32) -> FreeVector<u32>) -> RawVec {
    let mut out = FreeVector::zero();
    for (t, c) in v.iter() {
        for (j, d) in f(t[i]).iter() {
            let mut t2 = t.clone();
            t2[i] = *j;
            out.add_term(t2, c * d);
        }
    }
    out
}

/// Replaces slot `i` by a chunk of slots (possibly empty or longer),
/// splicing the chunk tuples into place.
pub fn splice_slot(v: &RawVec, i: usize, f: impl Fn(u32) -> RawVec) -> RawVec {
    let mut out = FreeVector::zero();
    for (t, c) in v.iter() {
        for (chunk, d) in f(t[i]).iter() {
            let mut t2 = Vec::with_capacity(t.len() + chunk.len() - 1);
            t2.extend_from_slice(&t[..i]);
            t2.extend_from_slice(chunk);
            t2.extend_from_slice(&t[i + 1..]);
            out.add_term(t2, c * d);
        }
    }
    out
}

/// Fuses slots `i` and `i+1` through a bilinear label map.
pub fn merge_slots(v: &RawVec, i: usize, f: impl Fn(u32, u32) -> FreeVector<u32>) -> RawVec {
    let mut out = FreeVector::zero();
    for (t, c) in v.iter() {
        for (j, d) in f(t[i], t[i + 1]).iter() {
            let mut t2 = Vec::with_capacity(t.len() - 1);
            t2.extend_from_slice(&t[..i]);
            t2.push(*j);
            t2.extend_from_slice(&t[i + 2..]);
            out.add_term(t2, c * d);
        }
    }
    out
}

/// Inserts a (possibly non-basis) element as a new slot at `pos`.
pub fn insert_slot(v: &RawVec, pos: usize, unit: &FreeVector<u32>) -> RawVec {
    let mut out = FreeVector::zero();
    for (t, c) in v.iter() {
        for (j, d) in unit.iter() {
            let mut t2 = Vec::with_capacity(t.len() + 1);
            t2.extend_from_slice(&t[..pos]);
            t2.push(*j);
            t2.extend_from_slice(&t[pos..]);
            out.add_term(t2, c * d);
        }
    }
    out
}

/// Applies a raw-tuple formula to every basis tuple of `src`, lands in
/// `dst` coordinates, and returns the columns. Column i is the image of
/// basis vector i.
pub fn operator_columns(
    src: &BalancedSpace,
    dst: &BalancedSpace,
    f: impl Fn(&[u32]) -> RawVec,
) -> Vec<Coords> {
    (0..src.dim())
        .map(|i| dst.coords(&f(&src.basis_tuple(i))))
        .collect()
}

/// Checks that a raw-tuple formula kills every relation generator of `src`
/// after landing in `dst`. Returns the first offending generator.
pub fn check_descends(
    src: &BalancedSpace,
    dst: &BalancedSpace,
    f: impl Fn(&[u32]) -> RawVec,
) -> Result<(), RawVec> {
    for rel in src.all_relations_raw() {
        let mut img: Coords = FreeVector::zero();
        for (t, c) in rel.iter() {
            img.add_scaled(c, &dst.coords(&f(t)));
        }
        if !img.is_zero() {
            return Err(rel);
        }
    }
    Ok(())
}

/// Memoizing wrapper for families of balanced spaces keyed by degree.
pub struct SpaceCache<K: std::hash::Hash + Eq + Clone> {
    builder: Box<dyn Fn(&K) -> Result<BalancedSpace, TensorError> + Send + Sync>,
    map: std::sync::Mutex<HashMap<K, std::sync::Arc<BalancedSpace>>>,
}

impl<K: std::hash::Hash + Eq + Clone> SpaceCache<K> {
    pub fn new(
        builder: impl Fn(&K) -> Result<BalancedSpace, TensorError> + Send + Sync + 'static,
    ) -> Self {
        SpaceCache { builder: Box::new(builder), map: Default::default() }
    }

    pub fn get(&self, k: &K) -> Result<std::sync::Arc<BalancedSpace>, TensorError> {
        let mut map = self.map.lock().unwrap();
        if let Some(s) = map.get(k) {
            return Ok(s.clone());
        }
        let built = std::sync::Arc::new((self.builder)(k)?);
        map.insert(k.clone(), built.clone());
        Ok(built)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    // A = Q[x]/(x^2) acting on U = A (x) A (dim 4, basis 1(x)1, x(x)1,
    // 1(x)x, x(x)x with label j = j1 + 2*j2 encoding x^j1 (x) x^j2).
    fn mul_x_left(j: u32) -> FreeVector<u32> {
        // s(x): multiply first factor by x
        let (j1, j2) = (j & 1, j >> 1);
        if j1 == 1 {
            FreeVector::zero()
        } else {
            FreeVector::basis(1 + 2 * j2)
        }
    }

    fn mul_x_right(j: u32) -> FreeVector<u32> {
        // t(x): multiply second factor by x
        let (j1, j2) = (j & 1, j >> 1);
        if j2 == 1 {
            FreeVector::zero()
        } else {
            FreeVector::basis(j1 + 2)
        }
    }

    fn coprod_gap() -> GapOps {
        // t(x) u (x) v ~ u (x) s(x) v, single generator a = x
        let lop = vec![(0..4).map(mul_x_right).collect()];
        let rop = vec![(0..4).map(mul_x_left).collect()];
        GapOps { lop, rop }
    }

    #[test]
    fn two_slot_dimension_drops_to_eight() {
        let sp = BalancedSpace::build(&[4, 4], &[coprod_gap()]).unwrap();
        // A^e (x)_A A^e = A (x) A (x) A has dim 2^3
        assert_eq!(sp.dim(), 8);
        for rel in sp.all_relations_raw() {
            assert!(sp.coords(&rel).is_zero(), "relation survives: {rel:?}");
        }
    }

    #[test]
    fn three_slot_dimension() {
        let sp = BalancedSpace::build(&[4, 4, 4], &[coprod_gap(), coprod_gap()]).unwrap();
        assert_eq!(sp.dim(), 16);
        for rel in sp.all_relations_raw() {
            assert!(sp.coords(&rel).is_zero());
        }
    }

    #[test]
    fn coords_of_basis_tuple_is_unit_vector() {
        let sp = BalancedSpace::build(&[4, 4], &[coprod_gap()]).unwrap();
        for i in 0..sp.dim() {
            let t = sp.basis_tuple(i);
            let c = sp.coords_tuple(&t);
            assert_eq!(c, FreeVector::basis(i));
        }
    }

    #[test]
    fn balanced_move_is_invisible() {
        let sp = BalancedSpace::build(&[4, 4], &[coprod_gap()]).unwrap();
        // t(x)(1(x)1) (x) (1(x)1)  vs  (1(x)1) (x) s(x)(1(x)1)
        let lhs = sp.coords_tuple(&[2, 0]);
        let rhs = sp.coords_tuple(&[0, 1]);
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn multiplication_descends_on_chain_gap() {
        // chain gap: u t(x) (x) v ~ u (x) t(x) v. Right mult by t(x) on
        // label j multiplies the second factor (commutative base).
        let lop = vec![(0..4).map(mul_x_right).collect::<Vec<_>>()];
        let rop = vec![(0..4).map(mul_x_right).collect::<Vec<_>>()];
        let gap = GapOps { lop, rop };
        let sp = BalancedSpace::build(&[4, 4], &[gap]).unwrap();
        let u = BalancedSpace::build(&[4], &[]).unwrap();
        let mul = |t: &[u32]| -> RawVec {
            // (a (x) b) * (c (x) d) = ac (x) db in A^e of a commutative A
            let (a, b) = (t[0] & 1, t[0] >> 1);
            let (c, d) = (t[1] & 1, t[1] >> 1);
            if a + c > 1 || b + d > 1 {
                FreeVector::zero()
            } else {
                FreeVector::basis(vec![(a + c) + 2 * (b + d)])
            }
        };
        check_descends(&sp, &u, mul).unwrap();
    }

    #[test]
    fn cap_is_enforced() {
        let err = BalancedSpace::build_capped(&[4, 4], &[coprod_gap()], 10);
        assert!(matches!(err, Err(TensorError::TooLarge { .. })));
    }

    #[test]
    fn coords_are_linear() {
        let sp = BalancedSpace::build(&[4, 4], &[coprod_gap()]).unwrap();
        let mut v: RawVec = FreeVector::zero();
        v.add_term(vec![2, 3], Scalar::from_int(3));
        v.add_term(vec![1, 1], Scalar::ratio(1, 2));
        let w: RawVec = FreeVector::basis(vec![3, 2]);
        let lhs = sp.coords(&v.add(&w));
        let rhs = sp.coords(&v).add(&sp.coords(&w));
        assert_eq!(lhs, rhs);
    }
}
