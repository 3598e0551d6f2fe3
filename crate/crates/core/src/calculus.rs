//! Contractions and Lie derivatives of cochains acting on chains.
//!
//! An arity p cochain acts on the chain complex in two ways: by contraction,
//! a cap product lowering the degree by p, and by a Lie derivative lowering
//! it by p - 1. Together with the boundary and the cyclic operator these
//! satisfy the commutator identities of a differential calculus. The
//! validators check them on basis chains, exactly where the identity is a
//! chain-level one and up to boundaries where it only holds on homology.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bialgebroid::{push, Bialgebroid, LawCheck};
use crate::coefficients::{base_module, CoefficientModule};
use crate::complexes::ChainComplex;
use crate::freevec::FreeVector;
use crate::hom::{HomCochain, HomComplex};
use crate::operad::{self, base_algebra, distribute, HomOperad, Operad};
use crate::rowred::Quotient;
use crate::scalar::{sign_pow, Scalar};
use crate::tensor::RawVec;

fn mb(i: u32) -> FreeVector<u32> {
    FreeVector::basis(i)
}

/// Sign exponents of the two sums making up the Lie derivative.
pub struct SignTable;

impl SignTable {
    /// Exponent of the term replacing p slots at position i in degree n.
    pub fn theta(n: i64, p: i64, i: i64) -> i64 {
        (p - 1) * (n - i + 1)
    }

    /// Exponent of the i-th cyclically twisted term.
    pub fn xi(n: i64, p: i64, i: i64) -> i64 {
        n * (i - 1) + p - 1
    }
}

/// Tuples of translation legs, one pair per slot, with the product of the
/// branch coefficients.
fn pairs(v: &RawVec) -> Vec<((u32, u32), Scalar)> {
    v.iter().map(|(t, c)| ((t[0], t[1]), c.clone())).collect()
}

fn cartesian(opts: &[Vec<((u32, u32), Scalar)>]) -> Vec<(Vec<(u32, u32)>, Scalar)> {
    let mut acc = vec![(Vec::with_capacity(opts.len()), Scalar::one())];
    for o in opts {
        let mut next = Vec::with_capacity(acc.len() * o.len());
        for (pref, c) in &acc {
            for (pr, d) in o {
                let mut p2 = pref.clone();
                p2.push(*pr);
                next.push((p2, c * d));
            }
        }
        acc = next;
    }
    acc
}

/// A chain complex together with the cochain operad acting on it.
///
/// The coefficients of the chain side may be any stable anti Yetter-Drinfeld
/// module; the cochains always take values in the base algebra.
pub struct Calculus {
    pub chain: Arc<ChainComplex>,
    pub op: HomOperad,
}

impl Calculus {
    pub fn try_new(b: &Arc<Bialgebroid>, m: &Arc<CoefficientModule>) -> Result<Calculus, String> {
        if !b.is_hopf() {
            return Err(format!("{}: the calculus needs the translation map", b.name));
        }
        if !m.has_right_action() || !m.has_coaction() {
            return Err(format!("{}: chains need a right action and a coaction", m.name));
        }
        if !m.is_sayd(b) {
            return Err(format!("{}: coefficients are not stable anti Yetter-Drinfeld", m.name));
        }
        let chain = Arc::new(ChainComplex::new(b.clone(), m.clone()));
        let base = Arc::new(base_module(b));
        let h = Arc::new(HomComplex::new(b.clone(), base.clone()));
        let alg = Arc::new(base_algebra(b, &base));
        let op = HomOperad::try_new(h, alg)?;
        Ok(Calculus { chain, op })
    }

    fn phi(&self, f: &HomCochain, args: &[u32]) -> FreeVector<u32> {
        debug_assert_eq!(args.len(), f.arity);
        if f.arity == 0 {
            f.values[0].clone()
        } else {
            self.op.h.eval(f, &FreeVector::basis(args.to_vec()))
        }
    }

    /// Value of a cochain as a single chain slot: the coaction leg of the
    /// value multiplies the product of the coproduct second legs, and the
    /// residual base leg is absorbed through the target map.
    fn d_chain(&self, f: &HomCochain, args: &[u32]) -> FreeVector<u32> {
        let b = &self.chain.b;
        let mut out = FreeVector::zero();
        for (wm, c) in self.op.d_op(f, args).iter() {
            out.add_scaled(c, &b.act_tgt(&mb(wm[1]), &mb(wm[0])));
        }
        out
    }

    /// Contraction of a degree n chain along an arity p cochain.
    ///
    /// The cochain eats the last p slots; its value acts through the target
    /// map on the slot before them, or on the coefficient when p = n. Zero
    /// when the arity exceeds the degree.
    pub fn cap(&self, f: &HomCochain, n: usize, v: &RawVec) -> RawVec {
        let p = f.arity;
        let mut out: RawVec = FreeVector::zero();
        if p > n {
            return out;
        }
        let b = &self.chain.b;
        for (t, c) in v.iter() {
            let val = self.phi(f, &t[n + 1 - p..]);
            let mut slots: Vec<FreeVector<u32>> = Vec::with_capacity(n + 1 - p);
            if p == n {
                slots.push(self.chain.coeff.r_act(&mb(t[0]), &b.t(&val)));
            } else {
                slots.push(mb(t[0]));
                for k in 1..n - p {
                    slots.push(mb(t[k]));
                }
                slots.push(b.ract_tgt(&mb(t[n - p]), &val));
            }
            out.add_assign(&distribute(&slots, c));
        }
        out
    }

    /// Lie derivative along an arity p cochain, degree n to n - p + 1.
    ///
    /// For p <= n this is the signed sum of slot replacements plus the
    /// cyclically twisted terms; for p = n + 1 it is the contraction of the
    /// cyclic operator, with the sign of the degree shift; above that it
    /// vanishes.
    pub fn lie(&self, f: &HomCochain, n: usize, v: &RawVec) -> RawVec {
        let p = f.arity;
        if p > n + 1 {
            return FreeVector::zero();
        }
        if p == n + 1 {
            return self.cap(f, n + 1, &self.edge_cyclic(n, v)).scaled(&sign_pow(p as i64 - 1));
        }
        let mut out = self.lie_untwisted(f, n, v);
        out.add_assign(&self.lie_twisted(f, n, v));
        out
    }

    /// Cyclic coboundary entering the degree edge of the Lie derivative:
    /// the normalized-complex form, extra degeneracy after the norm. The
    /// commutator identities fail at the edge with the full-complex form.
    fn edge_cyclic(&self, n: usize, v: &RawVec) -> RawVec {
        self.chain.extra_degeneracy(n, &self.chain.norm(n, v))
    }

    fn lie_untwisted(&self, f: &HomCochain, n: usize, v: &RawVec) -> RawVec {
        let p = f.arity;
        let mut out: RawVec = FreeVector::zero();
        for (t, c) in v.iter() {
            for i in 1..=(n + 1 - p) {
                let sg = sign_pow(SignTable::theta(n as i64, p as i64, i as i64));
                let mut slots: Vec<FreeVector<u32>> = Vec::with_capacity(n + 2 - p);
                for k in 0..i {
                    slots.push(mb(t[k]));
                }
                slots.push(self.d_chain(f, &t[i..i + p]));
                for k in i + p..=n {
                    slots.push(mb(t[k]));
                }
                out.add_assign(&distribute(&slots, &(c * &sg)));
            }
        }
        out
    }

    fn lie_twisted(&self, f: &HomCochain, n: usize, v: &RawVec) -> RawVec {
        let p = f.arity;
        let mut out: RawVec = FreeVector::zero();
        if p == 0 {
            return out;
        }
        let b = &self.chain.b;
        let m = &self.chain.coeff;
        for (t, c) in v.iter() {
            let opts: Vec<_> = (1..=n).map(|k| pairs(&b.trans(&mb(t[k])))).collect();
            for (tch, ctr) in cartesian(&opts) {
                for (wm, c0) in m.coact(&mb(t[0])).iter() {
                    // the loop element: minus legs in descending order onto
                    // the coaction leg of the coefficient
                    let mut omega = mb(wm[0]);
                    for pr in &tch {
                        omega = b.mul(&mb(pr.1), &omega);
                    }
                    for i in 0..p {
                        let sopts: Vec<_> =
                            (0..i).map(|k| pairs(&b.delta(&mb(tch[k].0)))).collect();
                        for (sp, csp) in cartesian(&sopts) {
                            let mut args: RawVec = FreeVector::zero();
                            for (w, cw) in omega.iter() {
                                let mut a: Vec<u32> =
                                    (n - p + 1 + i..n).map(|j| tch[j].0).collect();
                                a.push(*w);
                                a.extend(sp.iter().map(|q| q.0));
                                args.add_term(a, cw.clone());
                            }
                            let val = self.op.h.eval(f, &args);
                            let mut prod = b.one_u();
                            for q in &sp {
                                prod = b.mul(&prod, &mb(q.1));
                            }
                            let mut slots: Vec<FreeVector<u32>> =
                                Vec::with_capacity(n - p + 2);
                            slots.push(m.r_act(&mb(wm[1]), &prod));
                            for j in i..n - p + i {
                                slots.push(mb(tch[j].0));
                            }
                            slots.push(b.ract_tgt(&mb(tch[n - p + i].0), &val));
                            let sg = sign_pow((n * i) as i64 + p as i64 - 1);
                            let scale = &(&(&(c * &ctr) * c0) * &csp) * &sg;
                            out.add_assign(&distribute(&slots, &scale));
                        }
                    }
                }
            }
        }
        out
    }

    /// Shortcut form of the Lie derivative over a commutative total algebra
    /// with base coefficients: after moving the coefficient into the first
    /// slot through the target map, the twisted terms take whole translation
    /// plus legs, with no coproduct splitting and no extra coefficients.
    pub fn lie_commutative(&self, f: &HomCochain, n: usize, v: &RawVec) -> RawVec {
        assert!(self.chain.b.total.is_commutative(), "shortcut needs a commutative total algebra");
        assert!(self.chain_coefficients_are_base(), "shortcut is stated for base coefficients");
        let p = f.arity;
        if p > n + 1 {
            return FreeVector::zero();
        }
        if p == n + 1 {
            return self.cap(f, n + 1, &self.edge_cyclic(n, v)).scaled(&sign_pow(p as i64 - 1));
        }
        let w = if n == 0 { v.clone() } else { self.unit_coefficient(n, v) };
        let mut out = self.lie_untwisted(f, n, &w);
        out.add_assign(&self.lie_twisted_commutative(f, n, &w));
        out
    }

    /// Rewrites every tuple so the coefficient slot holds the unit, pushing
    /// the old coefficient through the target map into the first slot.
    fn unit_coefficient(&self, n: usize, v: &RawVec) -> RawVec {
        let b = &self.chain.b;
        let one_m = b.base.one().clone();
        let mut out: RawVec = FreeVector::zero();
        for (t, c) in v.iter() {
            let mut slots = Vec::with_capacity(n + 1);
            slots.push(one_m.clone());
            slots.push(b.act_tgt(&mb(t[0]), &mb(t[1])));
            for k in 2..=n {
                slots.push(mb(t[k]));
            }
            out.add_assign(&distribute(&slots, c));
        }
        out
    }

    fn lie_twisted_commutative(&self, f: &HomCochain, n: usize, v: &RawVec) -> RawVec {
        let p = f.arity;
        let mut out: RawVec = FreeVector::zero();
        if p == 0 {
            return out;
        }
        let b = &self.chain.b;
        for (t, c) in v.iter() {
            let opts: Vec<_> = (1..=n).map(|k| pairs(&b.trans(&mb(t[k])))).collect();
            for (tch, ctr) in cartesian(&opts) {
                let mut omega = b.one_u();
                for pr in &tch {
                    omega = b.mul(&mb(pr.1), &omega);
                }
                for i in 0..p {
                    let mut args: RawVec = FreeVector::zero();
                    for (w, cw) in omega.iter() {
                        let mut a: Vec<u32> = (n - p + 1 + i..n).map(|j| tch[j].0).collect();
                        a.push(*w);
                        a.extend((0..i).map(|j| tch[j].0));
                        args.add_term(a, cw.clone());
                    }
                    let val = self.op.h.eval(f, &args);
                    let mut slots: Vec<FreeVector<u32>> = Vec::with_capacity(n - p + 2);
                    slots.push(mb(t[0]));
                    for j in i..n - p + i {
                        slots.push(mb(tch[j].0));
                    }
                    slots.push(b.ract_tgt(&mb(tch[n - p + i].0), &val));
                    let sg = sign_pow((n * i) as i64 + p as i64 - 1);
                    out.add_assign(&distribute(&slots, &(&(c * &ctr) * &sg)));
                }
            }
        }
        out
    }

    /// Whether the chain coefficients are the base algebra with its counit
    /// action structure, slot for slot.
    pub fn chain_coefficients_are_base(&self) -> bool {
        let b = &self.chain.b;
        let m = &self.chain.coeff;
        if m.dim() != b.dim_a() {
            return false;
        }
        let probe = base_module(b);
        (0..m.dim() as u32).all(|x| {
            m.coact(&mb(x)) == probe.coact(&mb(x))
                && (0..b.dim_u() as u32)
                    .all(|u| m.r_act(&mb(x), &mb(u)) == probe.r_act(&mb(x), &mb(u)))
        })
    }

    /// Equality of two raw chains of the given degree, in the balanced
    /// quotient. Degree may be negative only when both sides vanish.
    fn same(&self, deg: isize, a: &RawVec, b: &RawVec) -> bool {
        if a.is_zero() && b.is_zero() {
            return true;
        }
        if deg < 0 {
            return false;
        }
        let sp = self.chain.space(deg as usize);
        sp.coords(a) == sp.coords(b)
    }

    /// Chain-level identities between contractions, Lie derivatives, the
    /// boundary and the cyclic operator, on basis chains up to the given
    /// degree and basis cochains up to the given arity.
    pub fn validate_instance(&self, max_arity: usize, max_degree: usize) -> Vec<LawCheck> {
        let h = self.op.h.clone();
        let mut out = Vec::new();

        let mut ok = true;
        let mut wit = String::new();
        for p in 0..=max_arity {
            let fb = h.basis(p);
            for q in 0..=max_arity {
                let gb = h.basis(q);
                for (fi, f) in fb.iter().enumerate() {
                    for (gi, g) in gb.iter().enumerate() {
                        let fg = operad::cup(&self.op, f, g);
                        for n in 0..=max_degree {
                            let sp = self.chain.space(n);
                            for k in 0..sp.dim() {
                                let x = FreeVector::basis(sp.basis_tuple(k));
                                let inner = self.cap(g, n, &x);
                                let lhs = if inner.is_zero() {
                                    FreeVector::zero()
                                } else {
                                    self.cap(f, n - q, &inner)
                                };
                                let rhs = self.cap(&fg, n, &x);
                                if !self.same(n as isize - (p + q) as isize, &lhs, &rhs) && ok {
                                    ok = false;
                                    wit = format!(
                                        "p = {p}, q = {q}, f = {fi}, g = {gi}, on {}",
                                        self.chain.show_tuple(&sp.basis_tuple(k))
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        push(&mut out, "iterated contractions compose through the cup product", ok, || wit.clone());

        let mut ok = true;
        let mut wit = String::new();
        for p in 0..=max_arity {
            let fb = h.basis(p);
            for (fi, f) in fb.iter().enumerate() {
                let df = h.delta(f);
                for n in 0..=max_degree {
                    let sp = self.chain.space(n);
                    for k in 0..sp.dim() {
                        let x = FreeVector::basis(sp.basis_tuple(k));
                        let cx = self.cap(f, n, &x);
                        let t1 = if cx.is_zero() {
                            FreeVector::zero()
                        } else {
                            self.chain.boundary(n - p, &cx)
                        };
                        let bx = self.chain.boundary(n, &x);
                        let t2 = if bx.is_zero() {
                            FreeVector::zero()
                        } else {
                            self.cap(f, n - 1, &bx)
                        };
                        let lhs = t1.add(&t2.scaled(&sign_pow(p as i64 + 1)));
                        let rhs = self.cap(&df, n, &x);
                        if !self.same(n as isize - p as isize - 1, &lhs, &rhs) && ok {
                            ok = false;
                            wit = format!(
                                "p = {p}, f = {fi}, n = {n}, on {}",
                                self.chain.show_tuple(&sp.basis_tuple(k))
                            );
                        }
                    }
                }
            }
        }
        push(
            &mut out,
            "the boundary commutator of a contraction contracts the coboundary",
            ok,
            || wit.clone(),
        );

        let mut ok = true;
        let mut wit = String::new();
        for p in 0..=max_arity {
            let fb = h.basis(p);
            for q in 0..=max_arity {
                let gb = h.basis(q);
                for (fi, f) in fb.iter().enumerate() {
                    for (gi, g) in gb.iter().enumerate() {
                        let br = operad::bracket(&self.op, f, g);
                        for n in 0..=max_degree {
                            let sp = self.chain.space(n);
                            for k in 0..sp.dim() {
                                let x = FreeVector::basis(sp.basis_tuple(k));
                                let ly = self.lie(g, n, &x);
                                let t1 = if ly.is_zero() {
                                    FreeVector::zero()
                                } else {
                                    self.lie(f, n + 1 - q, &ly)
                                };
                                let lx = self.lie(f, n, &x);
                                let t2 = if lx.is_zero() {
                                    FreeVector::zero()
                                } else {
                                    self.lie(g, n + 1 - p, &lx)
                                };
                                let sg = sign_pow((p as i64 - 1) * (q as i64 - 1) + 1);
                                let lhs = t1.add(&t2.scaled(&sg));
                                let rhs = self.lie(&br, n, &x);
                                if !self.same(n as isize + 2 - (p + q) as isize, &lhs, &rhs) && ok
                                {
                                    ok = false;
                                    wit = format!(
                                        "p = {p}, q = {q}, f = {fi}, g = {gi}, n = {n}, on {}",
                                        self.chain.show_tuple(&sp.basis_tuple(k))
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        push(
            &mut out,
            "the commutator of Lie derivatives is the Lie derivative of the bracket",
            ok,
            || wit.clone(),
        );

        let mut ok = true;
        let mut wit = String::new();
        for p in 0..=max_arity {
            let fb = h.basis(p);
            for (fi, f) in fb.iter().enumerate() {
                let df = h.delta(f);
                for n in 0..=max_degree {
                    let sp = self.chain.space(n);
                    for k in 0..sp.dim() {
                        let x = FreeVector::basis(sp.basis_tuple(k));
                        let lx = self.lie(f, n, &x);
                        let t1 = if lx.is_zero() {
                            FreeVector::zero()
                        } else {
                            self.chain.boundary(n + 1 - p, &lx)
                        };
                        let bx = self.chain.boundary(n, &x);
                        let t2 = if bx.is_zero() {
                            FreeVector::zero()
                        } else {
                            self.lie(f, n - 1, &bx)
                        };
                        let sum = t1.add(&t2.scaled(&sign_pow(p as i64))).add(&self.lie(&df, n, &x));
                        if !self.same(n as isize - p as isize, &sum, &FreeVector::zero()) && ok {
                            ok = false;
                            wit = format!(
                                "p = {p}, f = {fi}, n = {n}, on {}",
                                self.chain.show_tuple(&sp.basis_tuple(k))
                            );
                        }
                    }
                }
            }
        }
        push(
            &mut out,
            "the boundary commutator of a Lie derivative cancels the coboundary term",
            ok,
            || wit.clone(),
        );

        let mut ok = true;
        let mut wit = String::new();
        let mu = self.op.mult();
        for n in 0..=max_degree {
            let sp = self.chain.space(n);
            for k in 0..sp.dim() {
                let x = FreeVector::basis(sp.basis_tuple(k));
                let lhs = self.lie(&mu, n, &x);
                let rhs = self.chain.boundary(n, &x).scaled(&-Scalar::one());
                if !self.same(n as isize - 1, &lhs, &rhs) && ok {
                    ok = false;
                    wit = format!("n = {n}, on {}", self.chain.show_tuple(&sp.basis_tuple(k)));
                }
            }
        }
        push(
            &mut out,
            "the Lie derivative along the multiplication cochain is minus the boundary",
            ok,
            || wit.clone(),
        );

        let mut ok = true;
        let mut wit = String::new();
        let e = self.op.unit();
        for n in 1..=max_degree {
            let sp = self.chain.space(n);
            for k in 0..sp.dim() {
                let x = FreeVector::basis(sp.basis_tuple(k));
                let lhs = self.cap(&e, n, &x);
                let rhs = self.chain.face(n, 0, &x);
                if !self.same(n as isize - 1, &lhs, &rhs) && ok {
                    ok = false;
                    wit = format!("n = {n}, on {}", self.chain.show_tuple(&sp.basis_tuple(k)));
                }
            }
        }
        push(&mut out, "contraction along the counit cochain is the zeroth face", ok, || {
            wit.clone()
        });

        let mut ok = true;
        let mut wit = String::new();
        let mut quot: HashMap<usize, Quotient<usize>> = HashMap::new();
        for p in 0..=max_arity {
            // the cyclic commutator is only claimed for normalized cochains
            let fb = h.normalized_basis(p);
            for (fi, f) in fb.iter().enumerate() {
                for n in 0..=max_degree {
                    let sp = self.chain.space(n);
                    for k in 0..sp.dim() {
                        let x = FreeVector::basis(sp.basis_tuple(k));
                        let bx = self.chain.connes(n, &x);
                        let t1 = if bx.is_zero() {
                            FreeVector::zero()
                        } else {
                            self.lie(f, n + 1, &bx)
                        };
                        let lx = self.lie(f, n, &x);
                        let t2 = if lx.is_zero() {
                            FreeVector::zero()
                        } else {
                            self.chain.connes(n + 1 - p, &lx)
                        };
                        let defect = t1.add(&t2.scaled(&sign_pow(p as i64)));
                        if defect.is_zero() {
                            continue;
                        }
                        let deg = n as isize + 2 - p as isize;
                        let dead = if deg < 0 {
                            true
                        } else {
                            let dsp = self.chain.space(deg as usize);
                            let q = quot
                                .entry(deg as usize)
                                .or_insert_with(|| self.chain.degenerate_quotient(deg as usize));
                            !q.reduce(&dsp.coords(&defect)).is_zero()
                        };
                        if dead && ok {
                            ok = false;
                            wit = format!(
                                "p = {p}, f = {fi}, n = {n}, on {}",
                                self.chain.show_tuple(&sp.basis_tuple(k))
                            );
                        }
                    }
                }
            }
        }
        push(
            &mut out,
            "Lie derivatives commute with the cyclic operator on normalized chains",
            ok,
            || wit.clone(),
        );

        if self.chain.b.total.is_commutative() && self.chain_coefficients_are_base() {
            let mut ok = true;
            let mut wit = String::new();
            for p in 0..=max_arity {
                let fb = h.basis(p);
                for (fi, f) in fb.iter().enumerate() {
                    for n in 0..=max_degree {
                        let sp = self.chain.space(n);
                        for k in 0..sp.dim() {
                            let x = FreeVector::basis(sp.basis_tuple(k));
                            let lhs = self.lie(f, n, &x);
                            let rhs = self.lie_commutative(f, n, &x);
                            if !self.same(n as isize + 1 - p as isize, &lhs, &rhs) && ok {
                                ok = false;
                                wit = format!(
                                    "p = {p}, f = {fi}, n = {n}, on {}",
                                    self.chain.show_tuple(&sp.basis_tuple(k))
                                );
                            }
                        }
                    }
                }
            }
            push(&mut out, "the commutative shortcut matches the general Lie derivative", ok, || {
                wit.clone()
            });
        }

        out
    }

    /// Identities that only hold on homology: swept over cocycle bases and
    /// cycle bases, with an explicit boundary certificate for each defect.
    pub fn validate_homotopies(&self, max_arity: usize, max_degree: usize) -> Vec<LawCheck> {
        let h = self.op.h.clone();
        let mut out = Vec::new();
        let cycles: Vec<_> = (0..=max_degree).map(|n| self.chain.cycle_basis(n)).collect();

        let mut ok = true;
        let mut wit = String::new();
        for p in 0..=max_arity {
            let fc = h.cocycle_basis(p);
            for q in 0..=max_arity {
                let gc = h.cocycle_basis(q);
                for (fi, f) in fc.iter().enumerate() {
                    for (gi, g) in gc.iter().enumerate() {
                        let br = operad::bracket(&self.op, g, f);
                        for n in 0..=max_degree {
                            let sp = self.chain.space(n);
                            for (ki, xc) in cycles[n].iter().enumerate() {
                                let x = sp.raw_of_coords(xc);
                                let lx = self.lie(f, n, &x);
                                let t1 = if lx.is_zero() {
                                    FreeVector::zero()
                                } else {
                                    self.cap(g, n + 1 - p, &lx)
                                };
                                let cx = self.cap(g, n, &x);
                                let t2 = if cx.is_zero() {
                                    FreeVector::zero()
                                } else {
                                    self.lie(f, n - q, &cx)
                                };
                                let sg = sign_pow(q as i64 * (p as i64 - 1) + 1);
                                let defect =
                                    t1.add(&t2.scaled(&sg)).sub(&self.cap(&br, n, &x));
                                if defect.is_zero() {
                                    continue;
                                }
                                let deg = n as isize + 1 - (p + q) as isize;
                                let good = deg >= 0
                                    && self
                                        .chain
                                        .boundary_witness(deg as usize, &defect)
                                        .is_some();
                                if !good && ok {
                                    ok = false;
                                    wit = format!(
                                        "p = {p}, q = {q}, f = {fi}, g = {gi}, n = {n}, cycle {ki}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        push(
            &mut out,
            "the contraction commutator with a Lie derivative contracts the bracket up to boundaries",
            ok,
            || wit.clone(),
        );

        let mut ok = true;
        let mut wit = String::new();
        for p in 0..=max_arity {
            let nc = h.normalized_cocycle_basis(p);
            for (fi, f) in nc.iter().enumerate() {
                for n in 0..=max_degree {
                    let sp = self.chain.space(n);
                    for (ki, xc) in cycles[n].iter().enumerate() {
                        let x = sp.raw_of_coords(xc);
                        let lx = self.lie(f, n, &x);
                        let cx = self.cap(f, n, &x);
                        let t1 = if cx.is_zero() {
                            FreeVector::zero()
                        } else {
                            self.chain.connes(n - p, &cx)
                        };
                        let bx = self.chain.connes(n, &x);
                        let t2 = if bx.is_zero() {
                            FreeVector::zero()
                        } else {
                            self.cap(f, n + 1, &bx)
                        };
                        let defect = lx.sub(&t1).add(&t2.scaled(&sign_pow(p as i64)));
                        if defect.is_zero() {
                            continue;
                        }
                        let deg = n as isize + 1 - p as isize;
                        let good = deg >= 0
                            && self.chain.is_boundary_normalized(deg as usize, &defect);
                        if !good && ok {
                            ok = false;
                            wit = format!("p = {p}, f = {fi}, n = {n}, cycle {ki}");
                        }
                    }
                }
            }
        }
        push(
            &mut out,
            "the cyclic commutator with a normalized cocycle contraction is its Lie derivative up to boundaries",
            ok,
            || wit.clone(),
        );

        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebroid::failures;
    use crate::coefficients::tests::sign_twisted;
    use crate::instances::{c2_group_algebra, dual_numbers, envelope, upper_triangular};

    fn over_base(b: Arc<Bialgebroid>) -> Calculus {
        let m = Arc::new(base_module(&b));
        Calculus::try_new(&b, &m).expect("base coefficients carry the calculus")
    }

    #[test]
    fn sign_exponents_match_hand_computed_values() {
        assert_eq!(SignTable::theta(3, 2, 1), 3);
        assert_eq!(SignTable::theta(3, 2, 3), 1);
        assert_eq!(SignTable::xi(3, 2, 1), 1);
        assert_eq!(SignTable::xi(3, 2, 2), 4);
    }

    #[test]
    fn contraction_above_the_degree_vanishes() {
        let cal = over_base(envelope(dual_numbers()));
        let fb = cal.op.h.basis(2);
        let sp = cal.chain.space(1);
        for k in 0..sp.dim() {
            let x = FreeVector::basis(sp.basis_tuple(k));
            assert!(cal.cap(&fb[0], 1, &x).is_zero());
        }
    }

    #[test]
    fn chain_level_identities_on_the_dual_number_envelope() {
        let cal = over_base(envelope(dual_numbers()));
        let checks = cal.validate_instance(2, 3);
        assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
    }

    #[test]
    fn homotopy_identities_on_the_dual_number_envelope() {
        let cal = over_base(envelope(dual_numbers()));
        let checks = cal.validate_homotopies(2, 3);
        assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
    }

    #[test]
    fn chain_level_identities_on_the_group_algebra() {
        let cal = over_base(Arc::new(c2_group_algebra()));
        let checks = cal.validate_instance(2, 3);
        assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
    }

    #[test]
    fn homotopy_identities_on_the_group_algebra() {
        let cal = over_base(Arc::new(c2_group_algebra()));
        let checks = cal.validate_homotopies(2, 3);
        assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
    }

    #[test]
    fn chain_level_identities_on_the_triangular_envelope() {
        let cal = over_base(envelope(upper_triangular()));
        let checks = cal.validate_instance(2, 2);
        assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
    }

    #[test]
    fn homotopy_identities_on_the_triangular_envelope() {
        let cal = over_base(envelope(upper_triangular()));
        let checks = cal.validate_homotopies(1, 2);
        assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
    }

    #[test]
    fn unstable_coefficients_are_rejected() {
        let b = envelope(dual_numbers());
        let m = Arc::new(sign_twisted(&b));
        assert!(Calculus::try_new(&b, &m).is_err());
    }
}

#[cfg(test)]
mod probe {
    use super::*;
    use crate::instances::c2_group_algebra;

    #[test]
    fn branch_probe() {
        let b = Arc::new(c2_group_algebra());
        let m = Arc::new(base_module(&b));
        let cal = Calculus::try_new(&b, &m).unwrap();
        let mu = cal.op.mult();
        for n in [1usize, 2, 3] {
            let sp = cal.chain.space(n);
            let dst = cal.chain.space(n - 1);
            for k in 0..sp.dim() {
                let x: RawVec = FreeVector::basis(sp.basis_tuple(k));
                let lhs = cal.lie(&mu, n, &x);
                let rhs = cal.chain.boundary(n, &x).scaled(&-Scalar::one());
                let branch = cal.cap(&mu, n + 1, &cal.chain.connes(n, &x));
                println!(
                    "n={} k={} lie={:?} -b={:?} iacapB={:?}",
                    n,
                    k,
                    dst.coords(&lhs),
                    dst.coords(&rhs),
                    dst.coords(&branch)
                );
            }
        }
    }
}
