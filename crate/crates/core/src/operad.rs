//! Partial-composition operads of cochains over a left bialgebroid, with
//! values in a braided commutative Yetter-Drinfeld algebra N.
//!
//! Two realizations share one generic layer: cochains on the balanced
//! tensor powers of U (the hom side), and elements of the cotensor-type
//! spaces U tensor ... tensor U tensor N (the cotor side). Both carry a
//! distinguished multiplication, unit, and augmentation whose laws are
//! verified at construction; the cotor side also carries the cyclic
//! rotation when the coefficients are anti-Yetter-Drinfeld and stable.
//!
//! All signs run through the shifted degree |n| = n - 1, implemented once
//! in `circ_sum` and `bracket`.

use crate::bialgebroid::{failures, push, Bialgebroid, LawCheck, UElem};
use crate::coefficients::{CoefficientModule, MElem};
use crate::complexes::CotorComplex;
use crate::freevec::FreeVector;
use crate::hom::{HomCochain, HomComplex};
use crate::scalar::{sign_pow, Scalar};
use crate::tensor::{splice_slot, Coords, RawVec};
use std::sync::Arc;

fn mb(l: u32) -> FreeVector<u32> {
    FreeVector::basis(l)
}

/// Cartesian expansion of per-slot elements into a raw vector of tuples.
pub(crate) fn distribute(slots: &[FreeVector<u32>], scale: &Scalar) -> RawVec {
    let mut partial: Vec<(Vec<u32>, Scalar)> = vec![(Vec::with_capacity(slots.len()), scale.clone())];
    for se in slots {
        let mut next = Vec::with_capacity(partial.len() * se.len());
        for (t, c) in &partial {
            for (l, d) in se.iter() {
                let mut t2 = t.clone();
                t2.push(*l);
                next.push((t2, c * d));
            }
        }
        partial = next;
    }
    let mut out: RawVec = FreeVector::zero();
    for (t, c) in partial {
        out.add_term(t, c);
    }
    out
}

/// Iterated coaction of a coefficient element: k U-legs in front of the
/// remaining coefficient leg, outermost leg first.
fn coact_iter(coeff: &CoefficientModule, m: &MElem, k: usize) -> RawVec {
    let mut acc: RawVec = FreeVector::zero();
    for (l, c) in m.iter() {
        acc.add_term(vec![*l], c.clone());
    }
    for j in 0..k {
        acc = splice_slot(&acc, j, |x| coeff.coact(&mb(x)));
    }
    acc
}

/// A coefficient module with a compatible associative product: a comodule
/// algebra whose product is braided commutative against the coaction and
/// the left action. This is the hypothesis under which the cochain
/// compositions below close up into operads.
pub struct YdAlgebra {
    pub b: Arc<Bialgebroid>,
    pub coeff: Arc<CoefficientModule>,
    pub one: MElem,
    table: Vec<Vec<MElem>>,
}

impl YdAlgebra {
    pub fn new(
        b: Arc<Bialgebroid>,
        coeff: Arc<CoefficientModule>,
        one: MElem,
        mul: impl Fn(u32, u32) -> MElem,
    ) -> Self {
        assert!(coeff.has_left_action() && coeff.has_coaction());
        let dm = coeff.dim() as u32;
        let table = (0..dm).map(|i| (0..dm).map(|j| mul(i, j)).collect()).collect();
        YdAlgebra { b, coeff, one, table }
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, x: &MElem, y: &MElem) -> MElem {
        let mut out = FreeVector::zero();
        for (i, c) in x.iter() {
            for (j, d) in y.iter() {
                out.add_scaled(&(c * d), &self.table[*i as usize][*j as usize]);
            }
        }
        out
    }

    pub fn validate(&self) -> Vec<LawCheck> {
        let mut checks = Vec::new();
        let b = &self.b;
        let n = &self.coeff;
        let dm = n.dim() as u32;
        let du = b.dim_u() as u32;
        let sp = n.cotor_space(b, 1).expect("coaction codomain");

        let mut bad = None;
        for i in 0..dm {
            let e = mb(i);
            if self.mul(&self.one, &e) != e || self.mul(&e, &self.one) != e {
                bad = Some(format!("fails on {}", n.basis_name(i)));
                break;
            }
        }
        push(&mut checks, "the unit is two-sided for the product", bad.is_none(), || bad.clone().unwrap());

        let mut bad = None;
        'assoc: for i in 0..dm {
            for j in 0..dm {
                for k in 0..dm {
                    let lhs = self.mul(&self.mul(&mb(i), &mb(j)), &mb(k));
                    let rhs = self.mul(&mb(i), &self.mul(&mb(j), &mb(k)));
                    if lhs != rhs {
                        bad = Some(format!(
                            "({} {}) {} gives {} vs {}",
                            n.basis_name(i),
                            n.basis_name(j),
                            n.basis_name(k),
                            n.show(&lhs),
                            n.show(&rhs)
                        ));
                        break 'assoc;
                    }
                }
            }
        }
        push(&mut checks, "the product is associative", bad.is_none(), || bad.clone().unwrap());

        let mut bad = None;
        'diag: for u in 0..du {
            let legs = b.delta(&mb(u));
            for i in 0..dm {
                for j in 0..dm {
                    let lhs = n.l_act(&mb(u), &self.mul(&mb(i), &mb(j)));
                    let mut rhs = FreeVector::zero();
                    for (l, c) in legs.iter() {
                        rhs.add_scaled(
                            c,
                            &self.mul(&n.l_act(&mb(l[0]), &mb(i)), &n.l_act(&mb(l[1]), &mb(j))),
                        );
                    }
                    if lhs != rhs {
                        bad = Some(format!(
                            "{} on {} {}: {} vs {}",
                            b.show_u(&mb(u)),
                            n.basis_name(i),
                            n.basis_name(j),
                            n.show(&lhs),
                            n.show(&rhs)
                        ));
                        break 'diag;
                    }
                }
            }
        }
        push(
            &mut checks,
            "the product intertwines the diagonal module structure",
            bad.is_none(),
            || bad.clone().unwrap(),
        );

        let mut bad = None;
        for u in 0..du {
            let lhs = n.l_act(&mb(u), &self.one);
            let rhs = n.l_act(&b.s(&b.eps(&mb(u))), &self.one);
            if lhs != rhs {
                bad = Some(format!("fails on {}", b.show_u(&mb(u))));
                break;
            }
        }
        push(&mut checks, "acting on the unit factors through the counit", bad.is_none(), || {
            bad.clone().unwrap()
        });

        let mut bad = None;
        'coalg: for i in 0..dm {
            for j in 0..dm {
                let lhs = sp.coords(&n.coact(&self.mul(&mb(i), &mb(j))));
                let mut rhs_raw: RawVec = FreeVector::zero();
                for (wm1, c) in n.coact(&mb(i)).iter() {
                    for (wm2, d) in n.coact(&mb(j)).iter() {
                        let slots =
                            [b.mul(&mb(wm1[0]), &mb(wm2[0])), self.mul(&mb(wm1[1]), &mb(wm2[1]))];
                        rhs_raw.add_assign(&distribute(&slots, &(c * d)));
                    }
                }
                if lhs != sp.coords(&rhs_raw) {
                    bad = Some(format!("fails on {} {}", n.basis_name(i), n.basis_name(j)));
                    break 'coalg;
                }
            }
        }
        push(&mut checks, "the coaction is multiplicative on products", bad.is_none(), || {
            bad.clone().unwrap()
        });

        let unit_lhs = sp.coords(&n.coact(&self.one));
        let unit_rhs = sp.coords(&distribute(&[b.one_u(), self.one.clone()], &Scalar::one()));
        push(&mut checks, "the coaction sends the unit to the unit", unit_lhs == unit_rhs, || {
            format!("coaction of {} is off the unit line", n.show(&self.one))
        });

        let mut bad = None;
        'braid: for i in 0..dm {
            for j in 0..dm {
                let lhs = self.mul(&mb(i), &mb(j));
                let mut rhs = FreeVector::zero();
                for (wm, c) in n.coact(&mb(i)).iter() {
                    rhs.add_scaled(c, &self.mul(&n.l_act(&mb(wm[0]), &mb(j)), &mb(wm[1])));
                }
                if lhs != rhs {
                    bad = Some(format!(
                        "{} {} gives {} vs {}",
                        n.basis_name(i),
                        n.basis_name(j),
                        n.show(&lhs),
                        n.show(&rhs)
                    ));
                    break 'braid;
                }
            }
        }
        push(&mut checks, "the product is braided commutative", bad.is_none(), || {
            bad.clone().unwrap()
        });

        checks
    }

    /// Whether N qualifies as coefficients for the cochain operads: all
    /// algebra laws above plus the Yetter-Drinfeld condition.
    pub fn is_admissible(&self) -> bool {
        failures(&self.validate()).is_empty() && self.coeff.is_yd(&self.b)
    }
}

/// The base algebra with its canonical module structure as coefficients.
pub fn base_algebra(b: &Arc<Bialgebroid>, m: &Arc<CoefficientModule>) -> YdAlgebra {
    assert_eq!(m.dim(), b.dim_a(), "expects the base coefficient module");
    let base = b.base.clone();
    YdAlgebra::new(b.clone(), m.clone(), base.one(), move |i, j| base.mul(&mb(i), &mb(j)))
}

/// A non-symmetric operad with multiplication: graded pieces spanned by
/// `basis_els`, partial compositions `comp`, and distinguished elements
/// mu (arity 2), the operad unit (arity 1), and the augmentation (arity 0).
pub trait Operad {
    type El: Clone + PartialEq;

    fn arity(&self, x: &Self::El) -> usize;
    fn basis_els(&self, p: usize) -> Vec<Self::El>;
    fn zero_el(&self, p: usize) -> Self::El;
    fn add_el(&self, x: &Self::El, y: &Self::El) -> Self::El;
    fn scale_el(&self, c: &Scalar, x: &Self::El) -> Self::El;
    /// Partial composition at slot i, 1-based; requires 1 <= i <= arity(x).
    fn comp(&self, x: &Self::El, i: usize, y: &Self::El) -> Self::El;
    fn mult(&self) -> Self::El;
    fn unit(&self) -> Self::El;
    fn aug(&self) -> Self::El;
    fn show_el(&self, x: &Self::El) -> String;

    /// Composition extended by the zero rule for i > arity(x) or arity 0.
    fn comp_or_zero(&self, x: &Self::El, i: usize, y: &Self::El) -> Self::El {
        let p = self.arity(x);
        if p == 0 || i > p {
            self.zero_el((p + self.arity(y)).max(1) - 1)
        } else {
            self.comp(x, i, y)
        }
    }

    fn sub_el(&self, x: &Self::El, y: &Self::El) -> Self::El {
        self.add_el(x, &self.scale_el(&-Scalar::one(), y))
    }
}

/// Signed sum of all partial compositions of x with y.
pub fn circ_sum<O: Operad>(o: &O, x: &O::El, y: &O::El) -> O::El {
    let p = o.arity(x);
    let q = o.arity(y) as i64;
    let mut out = o.zero_el((p + q as usize).max(1) - 1);
    let outer = (p as i64 - 1) * (q - 1);
    for i in 1..=p {
        let c = sign_pow(outer + (q - 1) * (i as i64 - 1));
        out = o.add_el(&out, &o.scale_el(&c, &o.comp(x, i, y)));
    }
    out
}

/// Gerstenhaber bracket: the graded antisymmetrization of `circ_sum`.
pub fn bracket<O: Operad>(o: &O, x: &O::El, y: &O::El) -> O::El {
    let s = sign_pow((o.arity(x) as i64 - 1) * (o.arity(y) as i64 - 1) + 1);
    o.add_el(&circ_sum(o, x, y), &o.scale_el(&s, &circ_sum(o, y, x)))
}

/// Cup product through the multiplication: (mu o_1 x) o_{p+1} y.
pub fn cup<O: Operad>(o: &O, x: &O::El, y: &O::El) -> O::El {
    let p = o.arity(x);
    o.comp(&o.comp(&o.mult(), 1, x), p + 1, y)
}

/// The differential induced by bracketing with the multiplication.
pub fn delta_op<O: Operad>(o: &O, x: &O::El) -> O::El {
    bracket(o, &o.mult(), x)
}

/// Checks that the multiplication composes consistently with itself and
/// absorbs the augmentation into the operad unit.
pub fn multiplication_witness<O: Operad>(o: &O) -> Option<String> {
    let mu = o.mult();
    let lhs = o.comp(&mu, 1, &mu);
    let rhs = o.comp(&mu, 2, &mu);
    if lhs != rhs {
        return Some(format!(
            "composing the multiplication with itself at slots 1 and 2 gives {} vs {}",
            o.show_el(&lhs),
            o.show_el(&rhs)
        ));
    }
    let e = o.aug();
    let unit = o.unit();
    for i in [1, 2] {
        let got = o.comp(&mu, i, &e);
        if got != unit {
            return Some(format!(
                "the multiplication absorbs the augmentation at slot {} into {} instead of the unit {}",
                i,
                o.show_el(&got),
                o.show_el(&unit)
            ));
        }
    }
    None
}

/// Exhaustive law battery on basis elements of arity <= max_arity: the
/// three interchange relations for iterated compositions, neutrality of
/// the operad unit, the multiplication laws, agreement of the two cup
/// expressions, and graded antisymmetry of the bracket.
pub fn validate_operad_laws<O: Operad>(o: &O, max_arity: usize) -> Vec<LawCheck> {
    let mut checks = Vec::new();
    let bases: Vec<Vec<O::El>> = (0..=max_arity).map(|p| o.basis_els(p)).collect();

    let mut bad: Option<String> = None;
    'rel: for p in 1..=max_arity {
        for q in 0..=max_arity {
            for x in &bases[p] {
                for y in &bases[q] {
                    for i in 1..=p {
                        let xy = o.comp(x, i, y);
                        for r in 0..=max_arity {
                            for z in &bases[r] {
                                for j in 1..=(p + q - 1).max(1).min(p + q - 1) {
                                    let lhs = o.comp(&xy, j, z);
                                    let rhs = if j < i {
                                        o.comp(&o.comp(x, j, z), i + r - 1, y)
                                    } else if j < q + i {
                                        o.comp(x, i, &o.comp(y, j - i + 1, z))
                                    } else {
                                        o.comp(&o.comp(x, j - q + 1, z), i, y)
                                    };
                                    if lhs != rhs {
                                        bad = Some(format!(
                                            "arities ({},{},{}), slots ({},{}): {} vs {}",
                                            p,
                                            q,
                                            r,
                                            i,
                                            j,
                                            o.show_el(&lhs),
                                            o.show_el(&rhs)
                                        ));
                                        break 'rel;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    push(
        &mut checks,
        "iterated compositions satisfy the three interchange relations",
        bad.is_none(),
        || bad.clone().unwrap(),
    );

    let unit = o.unit();
    let mut bad: Option<String> = None;
    'unit: for p in 0..=max_arity {
        for x in &bases[p] {
            if o.comp(&unit, 1, x) != *x {
                bad = Some(format!("unit o1 {} moved", o.show_el(x)));
                break 'unit;
            }
            for i in 1..=p {
                if o.comp(x, i, &unit) != *x {
                    bad = Some(format!("{} o{} unit moved", o.show_el(x), i));
                    break 'unit;
                }
            }
        }
    }
    push(&mut checks, "the operad unit is neutral for composition", bad.is_none(), || {
        bad.clone().unwrap()
    });

    let mw = multiplication_witness(o);
    push(
        &mut checks,
        "the multiplication composes consistently and absorbs the augmentation",
        mw.is_none(),
        || mw.clone().unwrap(),
    );

    let mut bad: Option<String> = None;
    'cup: for p in 0..=max_arity {
        for q in 0..=max_arity {
            for x in &bases[p] {
                for y in &bases[q] {
                    let lhs = cup(o, x, y);
                    let rhs = o.comp(&o.comp(&o.mult(), 2, y), 1, x);
                    if lhs != rhs {
                        bad = Some(format!(
                            "{} cup {}: {} vs {}",
                            o.show_el(x),
                            o.show_el(y),
                            o.show_el(&lhs),
                            o.show_el(&rhs)
                        ));
                        break 'cup;
                    }
                }
            }
        }
    }
    push(&mut checks, "the two cup product expressions agree", bad.is_none(), || {
        bad.clone().unwrap()
    });

    let mut bad: Option<String> = None;
    'anti: for p in 0..=max_arity {
        for q in 0..=max_arity {
            for x in &bases[p] {
                for y in &bases[q] {
                    let s = sign_pow((p as i64 - 1) * (q as i64 - 1));
                    let defect =
                        o.add_el(&bracket(o, x, y), &o.scale_el(&s, &bracket(o, y, x)));
                    if defect != o.zero_el((p + q).max(1) - 1) {
                        bad = Some(format!(
                            "bracket of {} and {} leaves {}",
                            o.show_el(x),
                            o.show_el(y),
                            o.show_el(&defect)
                        ));
                        break 'anti;
                    }
                }
            }
        }
    }
    push(&mut checks, "the bracket is graded antisymmetric", bad.is_none(), || {
        bad.clone().unwrap()
    });

    checks
}

/// A cyclic structure: rotations tau_n compatible with composition and
/// fixing the multiplication.
pub trait CyclicOperad: Operad {
    fn tau(&self, x: &Self::El) -> Self::El;
}

/// Law battery for the cyclic structure on basis elements: the two
/// rotation-composition relations, the order of each rotation, and the
/// fixed points.
pub fn validate_cyclic_laws<O: CyclicOperad>(
    o: &O,
    max_arity: usize,
    max_power: usize,
) -> Vec<LawCheck> {
    let mut checks = Vec::new();
    let bases: Vec<Vec<O::El>> = (0..=max_arity.max(max_power)).map(|p| o.basis_els(p)).collect();

    let mut bad: Option<String> = None;
    'first: for p in 1..=max_arity {
        for q in 1..=max_arity {
            for x in &bases[p] {
                for y in &bases[q] {
                    let lhs = o.tau(&o.comp(x, 1, y));
                    let rhs = o.comp(&o.tau(y), q, &o.tau(x));
                    if lhs != rhs {
                        bad = Some(format!(
                            "arities ({},{}): {} vs {}",
                            p,
                            q,
                            o.show_el(&lhs),
                            o.show_el(&rhs)
                        ));
                        break 'first;
                    }
                }
            }
        }
    }
    push(&mut checks, "the rotation braids compositions at the first slot", bad.is_none(), || {
        bad.clone().unwrap()
    });

    let mut bad: Option<String> = None;
    'later: for p in 2..=max_arity {
        for q in 0..=max_arity {
            for x in &bases[p] {
                for y in &bases[q] {
                    for i in 2..=p {
                        let lhs = o.tau(&o.comp(x, i, y));
                        let rhs = o.comp(&o.tau(x), i - 1, y);
                        if lhs != rhs {
                            bad = Some(format!(
                                "arities ({},{}), slot {}: {} vs {}",
                                p,
                                q,
                                i,
                                o.show_el(&lhs),
                                o.show_el(&rhs)
                            ));
                            break 'later;
                        }
                    }
                }
            }
        }
    }
    push(&mut checks, "the rotation shifts later compositions down a slot", bad.is_none(), || {
        bad.clone().unwrap()
    });

    let mut bad: Option<String> = None;
    'order: for n in 0..=max_power {
        for x in &bases[n] {
            let mut y = x.clone();
            for _ in 0..=n {
                y = o.tau(&y);
            }
            if y != *x {
                bad = Some(format!("arity {}: {} returns as {}", n, o.show_el(x), o.show_el(&y)));
                break 'order;
            }
        }
    }
    push(&mut checks, "each rotation has order one more than its arity", bad.is_none(), || {
        bad.clone().unwrap()
    });

    let unit = o.unit();
    let tu = o.tau(&unit);
    push(&mut checks, "the rotation fixes the operad unit", tu == unit, || {
        format!("unit rotates to {}", o.show_el(&tu))
    });

    let mu = o.mult();
    let tm = o.tau(&mu);
    push(&mut checks, "the rotation fixes the multiplication", tm == mu, || {
        format!("multiplication rotates to {}", o.show_el(&tm))
    });

    checks
}

/// The operad of cochains on the balanced powers of U with values in N.
/// Compositions graft through the coaction-twisted extension `d_op`.
pub struct HomOperad {
    pub h: Arc<HomComplex>,
    pub alg: Arc<YdAlgebra>,
}

impl HomOperad {
    pub fn try_new(h: Arc<HomComplex>, alg: Arc<YdAlgebra>) -> Result<Self, String> {
        assert!(Arc::ptr_eq(&h.n, &alg.coeff), "operad and complex must share coefficients");
        if !alg.is_admissible() {
            return Err(format!(
                "{} is not a braided commutative Yetter-Drinfeld algebra over {}",
                alg.coeff.name, h.b.name
            ));
        }
        let me = HomOperad { h, alg };
        match multiplication_witness(&me) {
            Some(w) => Err(w),
            None => Ok(me),
        }
    }

    pub fn new(h: Arc<HomComplex>, alg: Arc<YdAlgebra>) -> Self {
        Self::try_new(h, alg).expect("hom operad laws")
    }

    /// Coproduct legs of a run of slots: the tuples of first legs together
    /// with the ordered product of the second legs.
    fn coprod_legs(&self, args: &[u32]) -> Vec<(Vec<u32>, UElem, Scalar)> {
        let b = &self.h.b;
        let mut acc = vec![(Vec::with_capacity(args.len()), b.one_u(), Scalar::one())];
        for &a in args {
            let legs = b.delta(&mb(a));
            let mut next = Vec::with_capacity(acc.len() * legs.len());
            for (first, second, c) in &acc {
                for (l, d) in legs.iter() {
                    let mut f2 = first.clone();
                    f2.push(l[0]);
                    next.push((f2, b.mul(second, &mb(l[1])), c * d));
                }
            }
            acc = next;
        }
        acc
    }

    /// The extension of a cochain to a map into U tensor N: coproduct
    /// first legs feed the cochain, whose coaction leg multiplies from the
    /// left onto the product of the second legs. Arity 0 is the coaction.
    pub fn d_op(&self, f: &HomCochain, args: &[u32]) -> RawVec {
        assert_eq!(args.len(), f.arity);
        if f.arity == 0 {
            return self.h.n.coact(&f.values[0]);
        }
        let b = &self.h.b;
        let mut out: RawVec = FreeVector::zero();
        for (first, second, c) in self.coprod_legs(args) {
            let val = self.h.eval(f, &FreeVector::basis(first));
            for (wm, d) in self.h.n.coact(&val).iter() {
                for (ul, e) in b.mul(&mb(wm[0]), &second).iter() {
                    out.add_term(vec![*ul, wm[1]], &(&c * d) * e);
                }
            }
        }
        out
    }

    fn comp_eval(&self, f: &HomCochain, i: usize, g: &HomCochain, t: &[u32]) -> MElem {
        let (p, q) = (f.arity, g.arity);
        debug_assert!(1 <= i && i <= p);
        debug_assert_eq!(t.len(), p + q - 1);
        let d = self.d_op(g, &t[i - 1..i - 1 + q]);
        let mut out: MElem = FreeVector::zero();
        for (first, second, c) in self.coprod_legs(&t[..i - 1]) {
            for (wm, cd) in d.iter() {
                let mut arg = first.clone();
                arg.push(wm[0]);
                arg.extend_from_slice(&t[i - 1 + q..]);
                let val = self.h.eval(f, &FreeVector::basis(arg));
                let mult = self.h.n.l_act(&second, &mb(wm[1]));
                out.add_scaled(&(&c * cd), &self.alg.mul(&val, &mult));
            }
        }
        out
    }

    /// Linear extension of the composition formula over a raw vector,
    /// used to certify descent to the balanced powers.
    fn comp_raw(&self, f: &HomCochain, i: usize, g: &HomCochain, v: &RawVec) -> MElem {
        let mut out: MElem = FreeVector::zero();
        for (t, c) in v.iter() {
            out.add_scaled(c, &self.comp_eval(f, i, g, t));
        }
        out
    }

    /// Direct cup product formula: the first p slots feed f through their
    /// first legs, and the second legs act on the value of g on the rest.
    pub fn cup_explicit(&self, f: &HomCochain, g: &HomCochain) -> HomCochain {
        let (p, q) = (f.arity, g.arity);
        let r = p + q;
        let eval_on = |t: &[u32]| {
            let mut out: MElem = FreeVector::zero();
            let tail: Vec<u32> = t[p..].to_vec();
            for (first, second, c) in self.coprod_legs(&t[..p]) {
                let vf = self.h.eval(f, &FreeVector::basis(first));
                let vg = self.h.eval(g, &FreeVector::basis(tail.clone()));
                out.add_scaled(&c, &self.alg.mul(&vf, &self.h.n.l_act(&second, &vg)));
            }
            out
        };
        let values = if r == 0 {
            vec![eval_on(&[])]
        } else {
            let dom = self.h.domain(r);
            (0..dom.dim()).map(|k| eval_on(&dom.basis_tuple(k))).collect()
        };
        HomCochain { arity: r, values }
    }

    /// Instance-specific laws: descent and linearity of the distinguished
    /// cochains and of compositions, the direct cup formula, and the
    /// differential as bracketing with the multiplication.
    pub fn validate_instance(&self, max_pair: usize, max_delta: usize) -> Vec<LawCheck> {
        let mut checks = Vec::new();
        let h = &self.h;

        let mu_formula = |t: &[u32]| {
            h.n.l_act(&h.b.s(&h.b.eps(&h.b.mul(&mb(t[0]), &mb(t[1])))), &self.alg.one)
        };
        let unit_formula = |t: &[u32]| h.n.l_act(&h.b.s(&h.b.eps(&mb(t[0]))), &self.alg.one);
        let mut bad: Option<String> = None;
        for r in h.domain(2).all_relations_raw() {
            let mut acc: MElem = FreeVector::zero();
            for (t, c) in r.iter() {
                acc.add_scaled(c, &mu_formula(t));
            }
            if !acc.is_zero() {
                bad = Some("the multiplication formula misses a relation".into());
                break;
            }
        }
        if bad.is_none() {
            for r in h.domain(1).all_relations_raw() {
                let mut acc: MElem = FreeVector::zero();
                for (t, c) in r.iter() {
                    acc.add_scaled(c, &unit_formula(t));
                }
                if !acc.is_zero() {
                    bad = Some("the unit formula misses a relation".into());
                    break;
                }
            }
        }
        if bad.is_none() {
            for f in [self.mult(), self.unit()] {
                if let Some(w) = h.linearity_defect(&f) {
                    bad = Some(w);
                    break;
                }
            }
        }
        push(
            &mut checks,
            "the distinguished cochains descend and are right-linear",
            bad.is_none(),
            || bad.clone().unwrap(),
        );

        let mut bad: Option<String> = None;
        let mut lin_bad: Option<String> = None;
        'desc: for p in 1..=max_pair {
            for q in 0..=max_pair {
                let relations = if p + q >= 2 {
                    h.domain(p + q - 1).all_relations_raw()
                } else {
                    Vec::new()
                };
                for f in h.basis(p).iter() {
                    for g in h.basis(q).iter() {
                        for i in 1..=p {
                            for r in &relations {
                                if !self.comp_raw(f, i, g, r).is_zero() {
                                    bad = Some(format!(
                                        "arities ({},{}), slot {}",
                                        p, q, i
                                    ));
                                    break 'desc;
                                }
                            }
                            if lin_bad.is_none() {
                                lin_bad = h.linearity_defect(&self.comp(f, i, g));
                            }
                        }
                    }
                }
            }
        }
        push(
            &mut checks,
            "composition formulas descend to the balanced powers",
            bad.is_none(),
            || bad.clone().unwrap(),
        );
        push(&mut checks, "compositions preserve right-linearity", lin_bad.is_none(), || {
            lin_bad.clone().unwrap()
        });

        let mut bad: Option<String> = None;
        'cupx: for p in 0..=max_pair {
            for q in 0..=max_pair {
                for f in h.basis(p).iter() {
                    for g in h.basis(q).iter() {
                        let direct = self.cup_explicit(f, g);
                        let operadic = cup(self, f, g);
                        if direct != operadic {
                            bad = Some(format!(
                                "{} cup {}: {} vs {}",
                                h.show(f),
                                h.show(g),
                                h.show(&direct),
                                h.show(&operadic)
                            ));
                            break 'cupx;
                        }
                    }
                }
            }
        }
        push(&mut checks, "the direct cup formula matches the operadic one", bad.is_none(), || {
            bad.clone().unwrap()
        });

        let mut bad: Option<String> = None;
        'delta: for p in 0..=max_delta {
            for f in h.basis(p).iter() {
                let lhs = delta_op(self, f);
                let rhs = h.delta(f);
                if lhs != rhs {
                    bad = Some(format!(
                        "arity {}: bracket gives {} but the differential is {}",
                        p,
                        h.show(&lhs),
                        h.show(&rhs)
                    ));
                    break 'delta;
                }
            }
        }
        push(
            &mut checks,
            "bracketing with the multiplication is the cochain differential",
            bad.is_none(),
            || bad.clone().unwrap(),
        );

        checks
    }
}

impl Operad for HomOperad {
    type El = HomCochain;

    fn arity(&self, x: &HomCochain) -> usize {
        x.arity
    }

    fn basis_els(&self, p: usize) -> Vec<HomCochain> {
        (*self.h.basis(p)).clone()
    }

    fn zero_el(&self, p: usize) -> HomCochain {
        self.h.zero(p)
    }

    fn add_el(&self, x: &HomCochain, y: &HomCochain) -> HomCochain {
        x.add(y)
    }

    fn scale_el(&self, c: &Scalar, x: &HomCochain) -> HomCochain {
        x.scaled(c)
    }

    fn comp(&self, x: &HomCochain, i: usize, y: &HomCochain) -> HomCochain {
        let (p, q) = (x.arity, y.arity);
        assert!(p >= 1 && 1 <= i && i <= p, "slot {} out of range for arity {}", i, p);
        let r = p + q - 1;
        let values = if r == 0 {
            vec![self.comp_eval(x, i, y, &[])]
        } else {
            let dom = self.h.domain(r);
            (0..dom.dim()).map(|k| self.comp_eval(x, i, y, &dom.basis_tuple(k))).collect()
        };
        HomCochain { arity: r, values }
    }

    fn mult(&self) -> HomCochain {
        let h = &self.h;
        let dom = h.domain(2);
        let values = (0..dom.dim())
            .map(|k| {
                let t = dom.basis_tuple(k);
                h.n.l_act(&h.b.s(&h.b.eps(&h.b.mul(&mb(t[0]), &mb(t[1])))), &self.alg.one)
            })
            .collect();
        HomCochain { arity: 2, values }
    }

    fn unit(&self) -> HomCochain {
        let h = &self.h;
        let dom = h.domain(1);
        let values = (0..dom.dim())
            .map(|k| {
                let t = dom.basis_tuple(k);
                h.n.l_act(&h.b.s(&h.b.eps(&mb(t[0]))), &self.alg.one)
            })
            .collect();
        HomCochain { arity: 1, values }
    }

    fn aug(&self) -> HomCochain {
        HomCochain { arity: 0, values: vec![self.alg.one.clone()] }
    }

    fn show_el(&self, x: &HomCochain) -> String {
        self.h.show(x)
    }
}

/// An element of the cotor-type operad: coordinates in the balanced
/// space with n slots of U followed by one coefficient slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotorEl {
    pub arity: usize,
    pub coords: Coords,
}

/// The operad on the cotensor-type spaces: compositions split a slot by
/// the iterated coproduct, push its last leg into the grafted element, and
/// spread the resulting coaction legs over the remaining slots.
pub struct CotorOperad {
    pub c: Arc<CotorComplex>,
    pub alg: Arc<YdAlgebra>,
    cyclic: bool,
}

impl CotorOperad {
    pub fn try_new(c: Arc<CotorComplex>, alg: Arc<YdAlgebra>) -> Result<Self, String> {
        assert!(Arc::ptr_eq(&c.coeff, &alg.coeff), "operad and complex must share coefficients");
        if !alg.is_admissible() {
            return Err(format!(
                "{} is not a braided commutative Yetter-Drinfeld algebra over {}",
                alg.coeff.name, c.b.name
            ));
        }
        let cyclic = c.b.is_hopf()
            && c.coeff.has_right_action()
            && c.coeff.is_ayd(&c.b)
            && c.coeff.is_stable(&c.b);
        let me = CotorOperad { c, alg, cyclic };
        if let Some(w) = multiplication_witness(&me) {
            return Err(w);
        }
        if me.cyclic {
            let bad: Vec<String> = failures(&validate_cyclic_laws(&me, 1, 2))
                .iter()
                .map(|ch| ch.law.clone())
                .collect();
            if !bad.is_empty() {
                return Err(format!("cyclic structure fails: {}", bad.join(", ")));
            }
        }
        Ok(me)
    }

    pub fn new(c: Arc<CotorComplex>, alg: Arc<YdAlgebra>) -> Self {
        Self::try_new(c, alg).expect("cotor operad laws")
    }

    /// Skips the admissibility gate and the construction-time law checks;
    /// only for negative-control experiments.
    pub fn new_unchecked(c: Arc<CotorComplex>, alg: Arc<YdAlgebra>) -> Self {
        CotorOperad { c, alg, cyclic: false }
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn el_of_raw(&self, n: usize, v: &RawVec) -> CotorEl {
        CotorEl { arity: n, coords: self.c.space(n).coords(v) }
    }

    pub fn raw_of(&self, x: &CotorEl) -> RawVec {
        self.c.space(x.arity).raw_of_coords(&x.coords)
    }

    fn comp_raw_tuples(&self, z: &[u32], i: usize, w: &[u32]) -> RawVec {
        let b = &self.c.b;
        let p = z.len() - 1;
        let q = w.len() - 1;
        debug_assert!(1 <= i && i <= p);
        let mut out: RawVec = FreeVector::zero();
        for (legs, cl) in self.c.delta_legs(z[i - 1], q + 1).iter() {
            let mut vslots: Vec<FreeVector<u32>> = Vec::with_capacity(q);
            for k in 0..q {
                vslots.push(b.mul(&mb(legs[k]), &mb(w[k])));
            }
            let m1 = self.c.coeff.l_act(&mb(legs[q]), &mb(w[q]));
            for (ct, cc) in coact_iter(&self.c.coeff, &m1, p - i).iter() {
                let mut slots: Vec<FreeVector<u32>> = Vec::with_capacity(p + q);
                for &zk in &z[..i - 1] {
                    slots.push(mb(zk));
                }
                slots.extend(vslots.iter().cloned());
                for k in 0..p - i {
                    slots.push(b.mul(&mb(ct[k]), &mb(z[i + k])));
                }
                slots.push(self.alg.mul(&mb(ct[p - i]), &mb(z[p])));
                out.add_assign(&distribute(&slots, &(cl * cc)));
            }
        }
        out
    }

    fn comp_raw_vecs(&self, xr: &RawVec, i: usize, yr: &RawVec) -> RawVec {
        let mut out: RawVec = FreeVector::zero();
        for (zt, c1) in xr.iter() {
            for (wt, c2) in yr.iter() {
                out.add_scaled(&(c1 * c2), &self.comp_raw_tuples(zt, i, wt));
            }
        }
        out
    }

    /// Direct cup product: the coaction legs of the first factor's
    /// coefficient multiply onto the slots of the second factor.
    pub fn cup_explicit(&self, x: &CotorEl, y: &CotorEl) -> CotorEl {
        let (p, q) = (x.arity, y.arity);
        let b = &self.c.b;
        let mut out: RawVec = FreeVector::zero();
        for (zt, c1) in self.raw_of(x).iter() {
            for (wt, c2) in self.raw_of(y).iter() {
                for (ct, cc) in coact_iter(&self.c.coeff, &mb(zt[p]), q).iter() {
                    let mut slots: Vec<FreeVector<u32>> = Vec::with_capacity(p + q + 1);
                    for &zk in &zt[..p] {
                        slots.push(mb(zk));
                    }
                    for k in 0..q {
                        slots.push(b.mul(&mb(ct[k]), &mb(wt[k])));
                    }
                    slots.push(self.alg.mul(&mb(ct[q]), &mb(wt[q])));
                    out.add_assign(&distribute(&slots, &(&(c1 * c2) * cc)));
                }
            }
        }
        self.el_of_raw(p + q, &out)
    }

    /// The cyclic differential transported to operad elements; zero in
    /// arity 0.
    pub fn cyclic_b(&self, x: &CotorEl) -> CotorEl {
        if x.arity == 0 {
            return self.zero_el(0);
        }
        self.el_of_raw(x.arity - 1, &self.c.connes(x.arity, &self.raw_of(x)))
    }

    /// Instance-specific laws: descent of the composition formula to the
    /// balanced quotients, the differential as bracketing with the
    /// multiplication, the direct cup formula, and the right action being
    /// induced by the translation.
    pub fn validate_instance(&self, max_pair: usize, max_delta: usize) -> Vec<LawCheck> {
        let mut checks = Vec::new();
        let c = &self.c;
        let b = &c.b;

        let mut bad: Option<String> = None;
        'desc: for p in 1..=max_pair {
            for q in 0..=max_pair {
                let target = c.space(p + q - 1);
                let x_rels = c.space(p).all_relations_raw();
                let y_rels = c.space(q).all_relations_raw();
                let x_basis = c.space(p).basis_tuples();
                let y_basis = c.space(q).basis_tuples();
                for i in 1..=p {
                    for r in &x_rels {
                        for wt in &y_basis {
                            let img = self.comp_raw_vecs(r, i, &FreeVector::basis(wt.clone()));
                            if !target.coords(&img).is_zero() {
                                bad = Some(format!("left slot, arities ({},{}), slot {}", p, q, i));
                                break 'desc;
                            }
                        }
                    }
                    for zt in &x_basis {
                        for r in &y_rels {
                            let img = self.comp_raw_vecs(&FreeVector::basis(zt.clone()), i, r);
                            if !target.coords(&img).is_zero() {
                                bad =
                                    Some(format!("right slot, arities ({},{}), slot {}", p, q, i));
                                break 'desc;
                            }
                        }
                    }
                }
            }
        }
        push(
            &mut checks,
            "composition formulas descend to the balanced quotients",
            bad.is_none(),
            || bad.clone().unwrap(),
        );

        let mut bad: Option<String> = None;
        'delta: for p in 0..=max_delta {
            for x in self.basis_els(p) {
                let lhs = delta_op(self, &x);
                let rhs = self.el_of_raw(p + 1, &c.cobar(p, &self.raw_of(&x)));
                if lhs != rhs {
                    bad = Some(format!(
                        "arity {}: bracket gives {} but the differential is {}",
                        p,
                        self.show_el(&lhs),
                        self.show_el(&rhs)
                    ));
                    break 'delta;
                }
            }
        }
        push(
            &mut checks,
            "bracketing with the multiplication is the cobar differential",
            bad.is_none(),
            || bad.clone().unwrap(),
        );

        let mut bad: Option<String> = None;
        'cupx: for p in 0..=max_pair {
            for q in 0..=max_pair {
                for x in self.basis_els(p) {
                    for y in self.basis_els(q) {
                        let direct = self.cup_explicit(&x, &y);
                        let operadic = cup(self, &x, &y);
                        if direct != operadic {
                            bad = Some(format!(
                                "{} cup {}: {} vs {}",
                                self.show_el(&x),
                                self.show_el(&y),
                                self.show_el(&direct),
                                self.show_el(&operadic)
                            ));
                            break 'cupx;
                        }
                    }
                }
            }
        }
        push(&mut checks, "the direct cup formula matches the operadic one", bad.is_none(), || {
            bad.clone().unwrap()
        });

        if c.coeff.has_right_action() && b.is_hopf() {
            let mut bad: Option<String> = None;
            'act: for m in 0..c.coeff.dim() as u32 {
                for u in 0..b.dim_u() as u32 {
                    let declared = c.coeff.r_act(&mb(m), &mb(u));
                    let mut induced: MElem = FreeVector::zero();
                    for (pq, cc) in b.trans(&mb(u)).iter() {
                        let moved = c.coeff.l_act(&mb(pq[1]), &mb(m));
                        let a = b.right_character(&mb(pq[0]));
                        induced.add_scaled(cc, &c.coeff.l_act(&b.t(&a), &moved));
                    }
                    if declared != induced {
                        bad = Some(format!(
                            "{} . {}: declared {} vs induced {}",
                            c.coeff.basis_name(m),
                            b.show_u(&mb(u)),
                            c.coeff.show(&declared),
                            c.coeff.show(&induced)
                        ));
                        break 'act;
                    }
                }
            }
            push(
                &mut checks,
                "the right action is induced by the translation and the character",
                bad.is_none(),
                || bad.clone().unwrap(),
            );
        }

        checks
    }
}

impl Operad for CotorOperad {
    type El = CotorEl;

    fn arity(&self, x: &CotorEl) -> usize {
        x.arity
    }

    fn basis_els(&self, p: usize) -> Vec<CotorEl> {
        (0..self.c.dim(p)).map(|k| CotorEl { arity: p, coords: FreeVector::basis(k) }).collect()
    }

    fn zero_el(&self, p: usize) -> CotorEl {
        CotorEl { arity: p, coords: FreeVector::zero() }
    }

    fn add_el(&self, x: &CotorEl, y: &CotorEl) -> CotorEl {
        assert_eq!(x.arity, y.arity);
        CotorEl { arity: x.arity, coords: x.coords.add(&y.coords) }
    }

    fn scale_el(&self, c: &Scalar, x: &CotorEl) -> CotorEl {
        CotorEl { arity: x.arity, coords: x.coords.scaled(c) }
    }

    fn comp(&self, x: &CotorEl, i: usize, y: &CotorEl) -> CotorEl {
        let (p, q) = (x.arity, y.arity);
        assert!(p >= 1 && 1 <= i && i <= p, "slot {} out of range for arity {}", i, p);
        let out = self.comp_raw_vecs(&self.raw_of(x), i, &self.raw_of(y));
        self.el_of_raw(p + q - 1, &out)
    }

    fn mult(&self) -> CotorEl {
        let slots = [self.c.b.one_u(), self.c.b.one_u(), self.alg.one.clone()];
        self.el_of_raw(2, &distribute(&slots, &Scalar::one()))
    }

    fn unit(&self) -> CotorEl {
        let slots = [self.c.b.one_u(), self.alg.one.clone()];
        self.el_of_raw(1, &distribute(&slots, &Scalar::one()))
    }

    fn aug(&self) -> CotorEl {
        let slots = [self.alg.one.clone()];
        self.el_of_raw(0, &distribute(&slots, &Scalar::one()))
    }

    fn show_el(&self, x: &CotorEl) -> String {
        let raw = self.raw_of(x);
        if raw.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = raw
            .iter()
            .map(|(t, c)| {
                let n = t.len() - 1;
                let mut names: Vec<String> =
                    t[..n].iter().map(|l| self.c.b.total.basis_name(*l).to_string()).collect();
                names.push(self.c.coeff.basis_name(t[n]).to_string());
                format!("{} ({})", c, names.join("; "))
            })
            .collect();
        parts.join(" + ")
    }
}

impl CyclicOperad for CotorOperad {
    fn tau(&self, x: &CotorEl) -> CotorEl {
        assert!(self.cyclic, "no cyclic structure on {}", self.c.coeff.name);
        self.el_of_raw(x.arity, &self.c.cocyclic(x.arity, &self.raw_of(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebroid::build_ae;
    use crate::bialgebroid::tests::{c2_group_algebra, dual_numbers, upper_triangular};
    use crate::coefficients::base_module;
    use crate::freevec::tensor;

    fn ae_dual() -> Arc<Bialgebroid> {
        Arc::new(build_ae(dual_numbers()).unwrap())
    }

    fn ae_t2() -> Arc<Bialgebroid> {
        Arc::new(build_ae(upper_triangular()).unwrap())
    }

    fn c2() -> Arc<Bialgebroid> {
        Arc::new(c2_group_algebra())
    }

    fn hom_op(b: &Arc<Bialgebroid>) -> HomOperad {
        let m = Arc::new(base_module(b));
        let h = Arc::new(HomComplex::new(b.clone(), m.clone()));
        let alg = Arc::new(base_algebra(b, &m));
        HomOperad::new(h, alg)
    }

    fn cotor_op(b: &Arc<Bialgebroid>) -> CotorOperad {
        let m = Arc::new(base_module(b));
        let c = Arc::new(CotorComplex::new(b.clone(), m.clone()));
        let alg = Arc::new(base_algebra(b, &m));
        CotorOperad::new(c, alg)
    }

    fn assert_ok(checks: &[LawCheck]) {
        let bad = failures(checks);
        assert!(
            bad.is_empty(),
            "{}",
            bad.iter()
                .map(|c| format!("{}: {}", c.law, c.witness.as_deref().unwrap_or("")))
                .collect::<Vec<_>>()
                .join("\n")
        );
    }

    #[test]
    fn base_coefficients_form_an_admissible_algebra() {
        for b in [ae_dual(), c2(), ae_t2()] {
            let m = Arc::new(base_module(&b));
            let alg = base_algebra(&b, &m);
            assert_ok(&alg.validate());
            assert!(alg.is_admissible(), "{}", b.name);
        }
    }

    #[test]
    fn hom_operad_laws_over_the_dual_number_envelope() {
        let o = hom_op(&ae_dual());
        assert_ok(&validate_operad_laws(&o, 2));
        assert_ok(&o.validate_instance(2, 3));
    }

    #[test]
    fn hom_operad_laws_over_a_group_algebra() {
        let o = hom_op(&c2());
        assert_ok(&validate_operad_laws(&o, 2));
        assert_ok(&o.validate_instance(2, 3));
    }

    #[test]
    fn hom_operad_laws_over_a_noncommutative_envelope() {
        let o = hom_op(&ae_t2());
        assert_ok(&validate_operad_laws(&o, 1));
        assert_ok(&o.validate_instance(1, 1));
    }

    #[test]
    fn cotor_operad_laws_over_the_dual_number_envelope() {
        let o = cotor_op(&ae_dual());
        assert!(o.is_cyclic());
        assert_ok(&validate_operad_laws(&o, 2));
        assert_ok(&o.validate_instance(2, 3));
        assert_ok(&validate_cyclic_laws(&o, 2, 3));
    }

    #[test]
    fn cotor_operad_laws_over_a_group_algebra() {
        let o = cotor_op(&c2());
        assert!(o.is_cyclic());
        assert_ok(&validate_operad_laws(&o, 2));
        assert_ok(&o.validate_instance(2, 3));
        assert_ok(&validate_cyclic_laws(&o, 2, 3));
    }

    #[test]
    fn cotor_operad_laws_over_a_noncommutative_envelope() {
        let o = cotor_op(&ae_t2());
        assert!(o.is_cyclic());
        assert_ok(&validate_operad_laws(&o, 1));
        assert_ok(&o.validate_instance(1, 1));
        assert_ok(&validate_cyclic_laws(&o, 1, 2));
    }

    #[test]
    fn cotor_cup_with_base_coefficients_concatenates_tuples() {
        let b = ae_dual();
        let o = cotor_op(&b);
        for p in 0..=2usize {
            for q in 0..=2usize {
                let xs = o.c.space(p).basis_tuples();
                let ys = o.c.space(q).basis_tuples();
                for zt in &xs {
                    for wt in &ys {
                        let x = o.el_of_raw(p, &FreeVector::basis(zt.clone()));
                        let y = o.el_of_raw(q, &FreeVector::basis(wt.clone()));
                        let got = cup(&o, &x, &y);
                        // concatenation with the source of the first
                        // coefficient absorbed into the next slot
                        let mut slots: Vec<FreeVector<u32>> = Vec::new();
                        for &zk in &zt[..p] {
                            slots.push(mb(zk));
                        }
                        if q == 0 {
                            slots.push(o.alg.mul(&mb(zt[p]), &mb(wt[0])));
                        } else {
                            slots.push(b.mul(&b.s(&mb(zt[p])), &mb(wt[0])));
                            for &wk in &wt[1..q] {
                                slots.push(mb(wk));
                            }
                            slots.push(mb(wt[q]));
                        }
                        let expected = o.el_of_raw(p + q, &distribute(&slots, &Scalar::one()));
                        assert_eq!(got, expected);
                    }
                }
            }
        }
    }

    fn hom_cocycles(o: &HomOperad, p: usize) -> Vec<HomCochain> {
        o.h.cocycle_basis(p)
    }

    #[test]
    fn cup_commutativity_and_jacobi_defects_are_coboundaries() {
        for b in [ae_dual(), c2()] {
            let o = hom_op(&b);
            let cocycles: Vec<Vec<HomCochain>> = (0..=2).map(|p| hom_cocycles(&o, p)).collect();
            for p in 0..=2usize {
                for q in 0..=2usize {
                    for x in &cocycles[p] {
                        for y in &cocycles[q] {
                            let s = sign_pow((p * q) as i64);
                            let defect = cup(&o, x, y).sub(&cup(&o, y, x).scaled(&s));
                            if p + q == 0 {
                                assert!(defect.is_zero(), "degree zero cup must commute");
                            } else {
                                assert!(
                                    o.h.coboundary_witness(&defect).is_some(),
                                    "cup defect in degrees ({},{}) is not a coboundary",
                                    p,
                                    q
                                );
                            }
                        }
                    }
                }
            }
            // graded Jacobi in Leibniz form on cocycle triples of low arity
            for p in 1..=2usize {
                for q in 1..=2usize {
                    for r in 1..=2usize {
                        if p + q + r > 5 {
                            continue;
                        }
                        for x in &cocycles[p] {
                            for y in &cocycles[q] {
                                for z in &cocycles[r] {
                                    let lhs = bracket(&o, x, &bracket(&o, y, z));
                                    let mid = bracket(&o, &bracket(&o, x, y), z);
                                    let s = sign_pow(((p - 1) * (q - 1)) as i64);
                                    let rhs = bracket(&o, y, &bracket(&o, x, z)).scaled(&s);
                                    let defect = lhs.sub(&mid).sub(&rhs);
                                    let d = p + q + r - 2;
                                    if defect.is_zero() {
                                        continue;
                                    }
                                    assert!(d >= 1);
                                    assert!(
                                        o.h.coboundary_witness(&defect).is_some(),
                                        "jacobi defect in degrees ({},{},{})",
                                        p,
                                        q,
                                        r
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cotor_cup_commutativity_defects_are_coboundaries() {
        let o = cotor_op(&ae_dual());
        let cocycles: Vec<Vec<CotorEl>> = (0..=2)
            .map(|n| {
                o.c.cocycle_basis(n)
                    .into_iter()
                    .map(|coords| CotorEl { arity: n, coords })
                    .collect()
            })
            .collect();
        for p in 0..=2usize {
            for q in 0..=2usize {
                for x in &cocycles[p] {
                    for y in &cocycles[q] {
                        let s = sign_pow((p * q) as i64);
                        let defect = o.sub_el(&cup(&o, x, y), &o.scale_el(&s, &cup(&o, y, x)));
                        if p + q == 0 {
                            assert!(defect.coords.is_zero());
                        } else {
                            assert!(
                                o.c.coboundary_witness(p + q, &defect.coords).is_some(),
                                "cup defect in degrees ({},{})",
                                p,
                                q
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bv_defects_on_cotor_cocycles_are_coboundaries() {
        for b in [ae_dual(), c2()] {
            let o = cotor_op(&b);
            let cocycles: Vec<Vec<CotorEl>> = (0..=2)
                .map(|n| {
                    o.c.normalized_cocycle_basis(n)
                        .into_iter()
                        .map(|coords| CotorEl { arity: n, coords })
                        .collect()
                })
                .collect();
            for p in 0..=2usize {
                for q in 0..=2usize {
                    if p + q == 0 {
                        continue;
                    }
                    for x in &cocycles[p] {
                        for y in &cocycles[q] {
                            let sp = sign_pow(p as i64);
                            // terms with the cyclic differential applied to
                            // an arity 0 factor land in arity -1 and vanish
                            let mut gen = o.cyclic_b(&cup(&o, x, y));
                            if p >= 1 {
                                gen = o.sub_el(&gen, &cup(&o, &o.cyclic_b(x), y));
                            }
                            if q >= 1 {
                                let t = cup(&o, x, &o.cyclic_b(y));
                                gen = o.sub_el(&gen, &o.scale_el(&sp, &t));
                            }
                            let defect =
                                o.sub_el(&bracket(&o, x, y), &o.scale_el(&sp, &gen));
                            let n = p + q - 1;
                            if n == 0 {
                                assert!(
                                    defect.coords.is_zero(),
                                    "degree zero defect must vanish, got {}",
                                    o.show_el(&defect)
                                );
                            } else {
                                assert!(
                                    o.c.coboundary_witness(n, &defect.coords).is_some(),
                                    "defect in degrees ({},{}) is not a coboundary",
                                    p,
                                    q
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    /// Base coefficients with the coaction twisted by a grouplike: the
    /// composition laws must break unless the grouplike is trivial.
    fn twisted_base_module(b: &Bialgebroid, sigma: u32) -> CoefficientModule {
        let da = b.dim_a() as u32;
        let du = b.dim_u() as u32;
        let names = (0..da).map(|i| b.base.basis_name(i).to_string()).collect();
        let right = (0..da)
            .map(|m| (0..du).map(|u| b.right_base_action(&mb(m), &mb(u))).collect())
            .collect();
        let left = (0..du)
            .map(|u| (0..da).map(|m| b.counit_action(&mb(u), &mb(m))).collect())
            .collect();
        let one_m = b.base.one();
        let coact = (0..da)
            .map(|m| {
                tensor(&b.mul(&b.s(&mb(m)), &mb(sigma)), &one_m, |i, j| vec![*i, *j])
            })
            .collect();
        CoefficientModule::new(
            b,
            format!("{} twisted", b.base.name),
            names,
            Some(right),
            Some(left),
            Some(coact),
            None,
        )
    }

    #[test]
    fn twisted_coactions_fail_the_operad_laws() {
        let b = c2();
        let g = b.total.index_of("g").expect("group generator");
        let tw = Arc::new(twisted_base_module(&b, g));
        let base = b.base.clone();
        let alg =
            Arc::new(YdAlgebra::new(b.clone(), tw.clone(), base.one(), |i, j| {
                base.mul(&mb(i), &mb(j))
            }));
        let gate = alg.validate();
        let broken: Vec<&str> = failures(&gate).iter().map(|c| c.law.as_str()).collect();
        assert!(broken.contains(&"the coaction sends the unit to the unit"), "{:?}", broken);
        assert!(!alg.is_admissible());

        let c = Arc::new(CotorComplex::new(b.clone(), tw.clone()));
        assert!(CotorOperad::try_new(c.clone(), alg.clone()).is_err());

        let o = CotorOperad::new_unchecked(c, alg);
        let mu = o.mult();
        assert_ne!(o.comp(&mu, 1, &mu), o.comp(&mu, 2, &mu));
        assert_ne!(o.comp(&mu, 1, &o.aug()), o.unit());
    }
}
