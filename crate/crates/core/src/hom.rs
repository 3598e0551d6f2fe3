//! Cochains on the bar-type complex of a bialgebroid with values in a left
//! module N: degree p cochains are maps out of the p-fold balanced tensor
//! power of U (chain gaps between the slots) that are linear for the right
//! base action t(a)u on the first slot against the action of t(a) on N.
//!
//! A cochain is stored as its value vector on the basis of the balanced
//! domain, so evaluation reduces arbitrary representatives through the
//! quotient first. The solved bases, the cosimplicial operators, and the
//! differential are all certified by `validate`: linearity is re-checked on
//! images, and every raw formula is applied to the full relation submodule
//! of its domain to confirm it descends.

use crate::bialgebroid::{push, Bialgebroid, LawCheck, UGap};
use crate::coefficients::{CoefficientModule, MElem};
use crate::freevec::FreeVector;
use crate::matrix::{kernel_basis, solve, Matrix};
use crate::scalar::{sign_pow, Scalar};
use crate::tensor::{insert_slot, map_slot, merge_slots, RawVec, SpaceCache, TensorError};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// A degree p cochain: one value in N per basis class of the p-slot domain.
/// Degree 0 cochains hold a single value and evaluate on the empty tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCochain {
    pub arity: usize,
    pub values: Vec<MElem>,
}

impl HomCochain {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        HomCochain { arity: self.arity, values: self.values.iter().map(|v| v.scaled(c)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-Scalar::one())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.arity, o.arity, "cochain arity mismatch");
        assert_eq!(self.values.len(), o.values.len());
        HomCochain {
            arity: self.arity,
            values: self.values.iter().zip(&o.values).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn add_scaled(&self, c: &Scalar, o: &Self) -> Self {
        self.add(&o.scaled(c))
    }
}

pub struct HomComplex {
    pub b: Arc<Bialgebroid>,
    pub n: Arc<CoefficientModule>,
    domains: SpaceCache<usize>,
    bases: Mutex<HashMap<usize, Arc<Vec<HomCochain>>>>,
}

impl HomComplex {
    pub fn new(b: Arc<Bialgebroid>, n: Arc<CoefficientModule>) -> Self {
        assert!(n.has_left_action(), "hom cochains need a left action on {}", n.name);
        let b2 = b.clone();
        HomComplex {
            b,
            n,
            domains: SpaceCache::new(Box::new(move |p: &usize| {
                b2.u_space(&vec![UGap::Chain; *p - 1])
            })),
            bases: Mutex::new(HashMap::new()),
        }
    }

    /// The balanced tensor power the degree p cochains are defined on, p >= 1.
    pub fn try_domain(&self, p: usize) -> Result<Arc<crate::tensor::BalancedSpace>, TensorError> {
        assert!(p >= 1, "degree 0 cochains have no tensor domain");
        self.domains.get(&p)
    }

    pub fn domain(&self, p: usize) -> Arc<crate::tensor::BalancedSpace> {
        self.try_domain(p).expect("domain space construction failed")
    }

    fn domain_dim(&self, p: usize) -> usize {
        if p == 0 {
            1
        } else {
            self.domain(p).dim()
        }
    }

    pub fn zero(&self, p: usize) -> HomCochain {
        HomCochain { arity: p, values: vec![FreeVector::zero(); self.domain_dim(p)] }
    }

    pub fn dim(&self, p: usize) -> usize {
        self.basis(p).len()
    }

    /// Basis of the solved cochain space in degree p, cached. Degree 0 is all
    /// of N; higher degrees are the kernel of the linearity constraints.
    pub fn basis(&self, p: usize) -> Arc<Vec<HomCochain>> {
        if let Some(cached) = self.bases.lock().unwrap().get(&p) {
            return cached.clone();
        }
        let built = Arc::new(self.build_basis(p));
        self.bases.lock().unwrap().insert(p, built.clone());
        built
    }

    fn build_basis(&self, p: usize) -> Vec<HomCochain> {
        let dn = self.n.dim();
        if p == 0 {
            return (0..dn)
                .map(|m| HomCochain { arity: 0, values: vec![FreeVector::basis(m as u32)] })
                .collect();
        }
        let dom = self.domain(p);
        let dp = dom.dim();
        let da = self.b.dim_a();

        // Unknowns phi(x_i) = sum_m phi_{i,m} e_m, flattened as column i*dn + m.
        // For every basis class x_i and base generator a, the constraint
        // phi(t(a) x_i) = t(a) phi(x_i) gives dn rows.
        let mut rows = vec![];
        for a in 0..da as u32 {
            let ta = self.b.t(&FreeVector::basis(a));
            let act: Vec<MElem> =
                (0..dn as u32).map(|m| self.n.l_act(&ta, &FreeVector::basis(m))).collect();
            for i in 0..dp {
                let x = dom.basis_tuple(i);
                let moved = map_slot(&FreeVector::basis(x), 0, |u| {
                    self.b.mul(&ta, &FreeVector::basis(u))
                });
                let lc = dom.coords(&moved);
                for mp in 0..dn as u32 {
                    let mut row = vec![Scalar::zero(); dp * dn];
                    for (j, c) in lc.iter() {
                        row[j * dn + mp as usize] += c;
                    }
                    for (m, item) in act.iter().enumerate() {
                        row[i * dn + m] -= &item.coeff(&mp);
                    }
                    rows.push(row);
                }
            }
        }
        kernel_basis(&Matrix::from_rows(rows))
            .into_iter()
            .map(|k| {
                let mut values = vec![FreeVector::zero(); dp];
                for (col, c) in k.iter() {
                    values[col / dn].add_term((col % dn) as u32, c.clone());
                }
                HomCochain { arity: p, values }
            })
            .collect()
    }

    /// Evaluates a cochain on a raw tuple vector of matching length.
    pub fn eval(&self, f: &HomCochain, v: &RawVec) -> MElem {
        let mut out = FreeVector::zero();
        if f.arity == 0 {
            for (t, c) in v.iter() {
                assert!(t.is_empty(), "degree 0 cochain applied to a tuple");
                out.add_scaled(c, &f.values[0]);
            }
            return out;
        }
        for (i, c) in self.domain(f.arity).coords(v).iter() {
            out.add_scaled(c, &f.values[*i]);
        }
        out
    }

    /// One coface term on one raw tuple of length p+1: index 0 pushes the
    /// first slot into N, index p+1 absorbs the last slot through t of the
    /// counit, the rest multiply adjacent slots.
    fn coface_eval(&self, f: &HomCochain, i: usize, t: &[u32]) -> MElem {
        let p = f.arity;
        debug_assert_eq!(t.len(), p + 1);
        if i == 0 {
            let tail = self.eval(f, &FreeVector::basis(t[1..].to_vec()));
            return self.n.l_act(&FreeVector::basis(t[0]), &tail);
        }
        if i == p + 1 {
            if p == 0 {
                let te = self.b.t(&self.b.eps(&FreeVector::basis(t[0])));
                return self.n.l_act(&te, &f.values[0]);
            }
            let merged = merge_slots(&FreeVector::basis(t.to_vec()), p - 1, |x, y| {
                self.b.mul(
                    &FreeVector::basis(x),
                    &self.b.t(&self.b.eps(&FreeVector::basis(y))),
                )
            });
            return self.eval(f, &merged);
        }
        let merged = merge_slots(&FreeVector::basis(t.to_vec()), i - 1, |x, y| {
            self.b.mul(&FreeVector::basis(x), &FreeVector::basis(y))
        });
        self.eval(f, &merged)
    }

    fn coface_raw(&self, f: &HomCochain, i: usize, v: &RawVec) -> MElem {
        let mut out = FreeVector::zero();
        for (t, c) in v.iter() {
            out.add_scaled(c, &self.coface_eval(f, i, t));
        }
        out
    }

    pub fn coface(&self, f: &HomCochain, i: usize) -> HomCochain {
        let p = f.arity;
        assert!(i <= p + 1);
        let dom = self.domain(p + 1);
        let values =
            (0..dom.dim()).map(|k| self.coface_eval(f, i, &dom.basis_tuple(k))).collect();
        HomCochain { arity: p + 1, values }
    }

    /// The differential, the alternating sum of the cofaces.
    pub fn delta(&self, f: &HomCochain) -> HomCochain {
        let p = f.arity;
        let dom = self.domain(p + 1);
        let values = (0..dom.dim())
            .map(|k| {
                let t = dom.basis_tuple(k);
                let mut out = FreeVector::zero();
                for i in 0..=p + 1 {
                    out.add_scaled(&sign_pow(i as i64), &self.coface_eval(f, i, &t));
                }
                out
            })
            .collect();
        HomCochain { arity: p + 1, values }
    }

    /// Codegeneracy j on a degree p cochain inserts the unit of U as
    /// argument j+1, for 0 <= j <= p-1.
    pub fn codegeneracy(&self, f: &HomCochain, j: usize) -> HomCochain {
        let p = f.arity;
        assert!(p >= 1 && j < p);
        let one = self.b.one_u();
        let values = if p == 1 {
            vec![self.eval(f, &insert_slot(&FreeVector::basis(vec![]), 0, &one))]
        } else {
            let dom = self.domain(p - 1);
            (0..dom.dim())
                .map(|k| self.eval(f, &insert_slot(&FreeVector::basis(dom.basis_tuple(k)), j, &one)))
                .collect()
        };
        HomCochain { arity: p - 1, values }
    }

    /// Basis of the cochains killed by every codegeneracy in degree p.
    pub fn normalized_basis(&self, p: usize) -> Vec<HomCochain> {
        let basis = self.basis(p);
        if p == 0 {
            return basis.to_vec();
        }
        let prev = self.domain_dim(p - 1);
        let dn = self.n.dim();
        let mut rows = vec![vec![Scalar::zero(); basis.len()]; p * prev * dn];
        for (col, f) in basis.iter().enumerate() {
            for j in 0..p {
                let sf = self.codegeneracy(f, j);
                for (slot, val) in sf.values.iter().enumerate() {
                    for (m, c) in val.iter() {
                        rows[(j * prev + slot) * dn + *m as usize][col] = c.clone();
                    }
                }
            }
        }
        kernel_basis(&Matrix::from_rows(rows))
            .into_iter()
            .map(|k| {
                let mut f = self.zero(p);
                for (i, c) in k.iter() {
                    f = f.add_scaled(c, &basis[*i]);
                }
                f
            })
            .collect()
    }

    /// Matrix of the differential out of arity p, columns indexed by the
    /// solved basis cochains of arity p.
    pub fn delta_matrix(&self, p: usize) -> Matrix {
        let basis = self.basis(p);
        let rows = self.domain_dim(p + 1) * self.n.dim();
        let mut m = Matrix::zero(rows, basis.len());
        for (col, f) in basis.iter().enumerate() {
            for (row, c) in self.flat(&self.delta(f)).into_iter().enumerate() {
                *m.at_mut(row, col) = c;
            }
        }
        m
    }

    /// Basis of the cocycles in arity p.
    pub fn cocycle_basis(&self, p: usize) -> Vec<HomCochain> {
        let basis = self.basis(p);
        kernel_basis(&self.delta_matrix(p))
            .into_iter()
            .map(|combo| {
                let mut f = self.zero(p);
                for (j, c) in combo.iter() {
                    f = f.add_scaled(c, &basis[*j]);
                }
                f
            })
            .collect()
    }

    /// Basis of the normalized cocycles in arity p: killed by every
    /// codegeneracy and by the differential.
    pub fn normalized_cocycle_basis(&self, p: usize) -> Vec<HomCochain> {
        let nb = self.normalized_basis(p);
        let rows = self.domain_dim(p + 1) * self.n.dim();
        let mut m = Matrix::zero(rows, nb.len());
        for (col, f) in nb.iter().enumerate() {
            for (row, c) in self.flat(&self.delta(f)).into_iter().enumerate() {
                *m.at_mut(row, col) = c;
            }
        }
        kernel_basis(&m)
            .into_iter()
            .map(|combo| {
                let mut f = self.zero(p);
                for (j, c) in combo.iter() {
                    f = f.add_scaled(c, &nb[*j]);
                }
                f
            })
            .collect()
    }

    /// Preimage of f under the differential, if f is a coboundary.
    pub fn coboundary_witness(&self, f: &HomCochain) -> Option<HomCochain> {
        assert!(f.arity >= 1);
        let p = f.arity - 1;
        let sol = solve(&self.delta_matrix(p), &self.flat(f))?;
        let basis = self.basis(p);
        let mut out = self.zero(p);
        for (j, c) in sol.into_iter().enumerate() {
            out = out.add_scaled(&c, &basis[j]);
        }
        Some(out)
    }

    /// Flattens a cochain into scalar coordinates (domain basis x N basis),
    /// the column format used by rank computations downstream.
    pub fn flat(&self, f: &HomCochain) -> Vec<Scalar> {
        let dn = self.n.dim();
        let mut out = vec![Scalar::zero(); f.values.len() * dn];
        for (i, v) in f.values.iter().enumerate() {
            for (m, c) in v.iter() {
                out[i * dn + *m as usize] = c.clone();
            }
        }
        out
    }

    fn show_tuple(&self, t: &[u32]) -> String {
        let parts: Vec<String> =
            t.iter().map(|l| self.b.total.basis_name(*l).to_string()).collect();
        format!("({})", parts.join("; "))
    }

    pub fn show(&self, f: &HomCochain) -> String {
        if f.arity == 0 {
            return self.n.show(&f.values[0]);
        }
        let dom = self.domain(f.arity);
        let parts: Vec<String> = f
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| format!("{} -> {}", self.show_tuple(&dom.basis_tuple(i)), self.n.show(v)))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(", ")
        }
    }

    /// None if f is linear for t(a) on the first slot against t(a) acting
    /// on N, otherwise a witness.
    pub(crate) fn linearity_defect(&self, f: &HomCochain) -> Option<String> {
        if f.arity == 0 {
            return None;
        }
        let dom = self.domain(f.arity);
        for a in 0..self.b.dim_a() as u32 {
            let ta = self.b.t(&FreeVector::basis(a));
            for i in 0..dom.dim() {
                let x = dom.basis_tuple(i);
                let moved = map_slot(&FreeVector::basis(x.clone()), 0, |u| {
                    self.b.mul(&ta, &FreeVector::basis(u))
                });
                let lhs = self.eval(f, &moved);
                let rhs = self.n.l_act(&ta, &self.eval(f, &FreeVector::basis(x)));
                if lhs != rhs {
                    return Some(format!(
                        "a = {}, on {}",
                        self.b.show_a(&FreeVector::basis(a)),
                        self.show_tuple(&dom.basis_tuple(i))
                    ));
                }
            }
        }
        None
    }

    /// Cosimplicial identities, descent of the raw formulas, stability of
    /// linearity, and the square of the differential, on every basis
    /// cochain of arity <= max_p.
    pub fn validate(&self, max_p: usize) -> Vec<LawCheck> {
        let mut out = vec![];

        let mut ok = true;
        let mut wit = String::new();
        for p in 1..=max_p {
            for (k, f) in self.basis(p).iter().enumerate() {
                if let Some(w) = self.linearity_defect(f) {
                    if ok {
                        ok = false;
                        wit = format!("p = {p}, basis cochain {k}: {w}");
                    }
                }
            }
        }
        push(&mut out, "solved cochain bases are right-linear", ok, || wit.clone());

        let mut ok = true;
        let mut wit = String::new();
        for p in 0..=max_p {
            for (k, f) in self.basis(p).iter().enumerate() {
                for i in 0..=p + 1 {
                    if let Some(w) = self.linearity_defect(&self.coface(f, i)) {
                        if ok {
                            ok = false;
                            wit = format!("p = {p}, coface {i} of basis cochain {k}: {w}");
                        }
                    }
                }
                for j in 0..p {
                    if let Some(w) = self.linearity_defect(&self.codegeneracy(f, j)) {
                        if ok {
                            ok = false;
                            wit = format!("p = {p}, codegeneracy {j} of basis cochain {k}: {w}");
                        }
                    }
                }
            }
        }
        push(&mut out, "cofaces and codegeneracies preserve right-linearity", ok, || wit.clone());

        let mut ok = true;
        let mut wit = String::new();
        for p in 0..=max_p {
            let rels = self.domain(p + 1).all_relations_raw();
            for (k, f) in self.basis(p).iter().enumerate() {
                for i in 0..=p + 1 {
                    if let Some(r) = rels.iter().find(|r| !self.coface_raw(f, i, r).is_zero()) {
                        if ok {
                            ok = false;
                            wit = format!(
                                "p = {p}, coface {i} of basis cochain {k} on relation {}",
                                self.b.show_raw(r)
                            );
                        }
                    }
                }
            }
        }
        push(&mut out, "coface formulas descend to the balanced powers", ok, || wit.clone());

        let mut ok = true;
        let mut wit = String::new();
        let one = self.b.one_u();
        for p in 2..=max_p {
            let rels = self.domain(p - 1).all_relations_raw();
            for (k, f) in self.basis(p).iter().enumerate() {
                for j in 0..p {
                    if let Some(r) =
                        rels.iter().find(|r| !self.eval(f, &insert_slot(r, j, &one)).is_zero())
                    {
                        if ok {
                            ok = false;
                            wit = format!(
                                "p = {p}, codegeneracy {j} of basis cochain {k} on relation {}",
                                self.b.show_raw(r)
                            );
                        }
                    }
                }
            }
        }
        push(&mut out, "codegeneracy formulas descend to the balanced powers", ok, || {
            wit.clone()
        });

        let mut ok = true;
        let mut wit = String::new();
        for p in 0..=max_p {
            for (k, f) in self.basis(p).iter().enumerate() {
                for j in 1..=p + 2 {
                    for i in 0..j {
                        let lhs = self.coface(&self.coface(f, i), j);
                        let rhs = self.coface(&self.coface(f, j - 1), i);
                        if lhs != rhs && ok {
                            ok = false;
                            wit = format!("p = {p}, i = {i}, j = {j}, basis cochain {k}");
                        }
                    }
                }
            }
        }
        push(&mut out, "cofaces satisfy d_j d_i = d_i d_(j-1) for i < j", ok, || wit.clone());

        let mut ok = true;
        let mut wit = String::new();
        for p in 2..=max_p {
            for (k, f) in self.basis(p).iter().enumerate() {
                for j in 0..p - 1 {
                    for i in 0..=j {
                        let lhs = self.codegeneracy(&self.codegeneracy(f, j + 1), i);
                        let rhs = self.codegeneracy(&self.codegeneracy(f, i), j);
                        if lhs != rhs && ok {
                            ok = false;
                            wit = format!("p = {p}, i = {i}, j = {j}, basis cochain {k}");
                        }
                    }
                }
            }
        }
        push(&mut out, "codegeneracies satisfy s_i s_(j+1) = s_j s_i for i <= j", ok, || {
            wit.clone()
        });

        let mut ok = true;
        let mut wit = String::new();
        for p in 0..=max_p {
            for (k, f) in self.basis(p).iter().enumerate() {
                for j in 0..=p {
                    for i in 0..=p + 1 {
                        let lhs = self.codegeneracy(&self.coface(f, i), j);
                        let rhs = if i < j {
                            self.coface(&self.codegeneracy(f, j - 1), i)
                        } else if i == j || i == j + 1 {
                            f.clone()
                        } else {
                            self.coface(&self.codegeneracy(f, j), i - 1)
                        };
                        if lhs != rhs && ok {
                            ok = false;
                            wit = format!("p = {p}, i = {i}, j = {j}, basis cochain {k}");
                        }
                    }
                }
            }
        }
        push(&mut out, "mixed coface-codegeneracy relations hold", ok, || wit.clone());

        let mut ok = true;
        let mut wit = String::new();
        for p in 0..=max_p {
            for (k, f) in self.basis(p).iter().enumerate() {
                let dd = self.delta(&self.delta(f));
                if !dd.is_zero() && ok {
                    ok = false;
                    wit = format!("p = {p}, basis cochain {k}");
                }
            }
        }
        push(&mut out, "the differential squares to zero", ok, || wit.clone());

        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebroid::tests::{c2_group_algebra, dual_numbers, upper_triangular};
    use crate::bialgebroid::{build_ae, failures};
    use crate::coefficients::base_module;

    fn ae_dual() -> HomComplex {
        let b = Arc::new(build_ae(dual_numbers()).unwrap());
        let n = Arc::new(base_module(&b));
        HomComplex::new(b, n)
    }

    #[test]
    fn cochain_dimensions_double_over_the_dual_number_envelope() {
        let h = ae_dual();
        for p in 0..=3 {
            assert_eq!(h.dim(p), 1 << (p + 1), "degree {p}");
        }
        // One reduced slot per tensor factor survives normalization.
        for p in 0..=3 {
            assert_eq!(h.normalized_basis(p).len(), 2, "normalized degree {p}");
        }
    }

    #[test]
    fn cochain_laws_over_the_dual_number_envelope() {
        let h = ae_dual();
        let checks = h.validate(2);
        assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
    }

    #[test]
    fn cochain_laws_over_a_noncommutative_envelope() {
        let b = Arc::new(build_ae(upper_triangular()).unwrap());
        let n = Arc::new(base_module(&b));
        let h = HomComplex::new(b, n);
        assert_eq!(h.dim(0), 3);
        assert_eq!(h.dim(1), 9);
        assert_eq!(h.dim(2), 27);
        let checks = h.validate(1);
        assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
    }

    #[test]
    fn cochain_laws_over_a_group_algebra() {
        let b = Arc::new(c2_group_algebra());
        let n = Arc::new(base_module(&b));
        let h = HomComplex::new(b, n);
        assert_eq!((h.dim(0), h.dim(1), h.dim(2)), (1, 2, 4));
        for p in 0..=2 {
            assert_eq!(h.normalized_basis(p).len(), 1, "normalized degree {p}");
        }
        let checks = h.validate(2);
        assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
    }

    #[test]
    fn degree_zero_differential_measures_the_two_base_actions() {
        let h = ae_dual();
        let b = &h.b;
        for f in h.basis(0).iter() {
            let df = h.delta(f);
            for u in 0..b.dim_u() as u32 {
                let eu = FreeVector::basis(u);
                let lhs = h.eval(&df, &FreeVector::basis(vec![u]));
                let rhs = h
                    .n
                    .l_act(&eu, &f.values[0])
                    .sub(&h.n.l_act(&b.t(&b.eps(&eu)), &f.values[0]));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
