//! Associative algebras by structure constants, and PBW-presented
//! enveloping carriers of Lie-Rinehart pairs.
//!
//! A `StructureConstantAlgebra` is a finite-dimensional unital algebra whose
//! multiplication table is validated exhaustively at construction time:
//! unit laws and full associativity over all basis triples. Failures are
//! reported with the offending triple, never panicked over.
//!
//! A `PbwCarrier` is the universal enveloping algebra of a Lie-Rinehart pair
//! (A, L) in its ordered-monomial presentation: elements are A-linear
//! combinations of monomials X_1^{k_1} ... X_r^{k_r} with the base
//! coefficient written on the left. Multiplication straightens products
//! via X Y = Y X + [X, Y] and X a = a X + X(a).

use crate::freevec::FreeVector;
use std::fmt;
use std::sync::Arc;

/// Element of the base algebra: coefficients on base basis indices.
pub type BaseElem = FreeVector<u32>;

#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("basis must be nonempty and tables square (got {0})")]
    Shape(String),
    #[error("unit fails on basis element {0}: {1}")]
    Unit(String, String),
    #[error("associativity fails on ({0}, {1}, {2})")]
    Associativity(String, String, String),
    #[error("dimension {0} exceeds the validation bound {1}")]
    TooLarge(usize, usize),
    #[error("lie bracket table must be antisymmetric: ({0}, {1})")]
    BracketShape(String, String),
    #[error("jacobi identity fails on generators ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error("anchor is not a homomorphism to derivations: {0}")]
    Anchor(String),
    #[error("leibniz compatibility fails on ({0}, {1}, {2})")]
    Leibniz(String, String, String),
}

/// Default cap on the dimension of exhaustively validated product tables.
pub const DEFAULT_VALIDATION_DIM: usize = 32;

#[derive(Clone)]
pub struct StructureConstantAlgebra {
    pub name: String,
    basis_names: Vec<String>,
    unit: BaseElem,
    /// table[i][j] = e_i * e_j
    table: Vec<Vec<BaseElem>>,
    commutative: bool,
}

impl StructureConstantAlgebra {
    /// Builds and validates the algebra. `O(dim^3)` products are checked;
    /// dimensions above `max_dim` are rejected so pathological inputs fail
    /// fast instead of thrashing.
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        unit: BaseElem,
        table: Vec<Vec<BaseElem>>,
        max_dim: usize,
    ) -> Result<Self, AlgebraError> {
        let d = basis_names.len();
        if d == 0 || table.len() != d || table.iter().any(|r| r.len() != d) {
            return Err(AlgebraError::Shape(format!(
                "{} basis elements, {} table rows",
                d,
                table.len()
            )));
        }
        if d > max_dim {
            return Err(AlgebraError::TooLarge(d, max_dim));
        }
        let alg = StructureConstantAlgebra {
            name: name.into(),
            basis_names,
            unit,
            table,
            commutative: false,
        };
        let mul = |x: &BaseElem, y: &BaseElem| alg.mul(x, y);
        for i in 0..d {
            let e = FreeVector::basis(i as u32);
            if mul(&alg.unit, &e) != e {
                return Err(AlgebraError::Unit(
                    alg.basis_names[i].clone(),
                    "left unit".into(),
                ));
            }
            if mul(&e, &alg.unit) != e {
                return Err(AlgebraError::Unit(
                    alg.basis_names[i].clone(),
                    "right unit".into(),
                ));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let eij = &alg.table[i][j];
                for k in 0..d {
                    let ek = FreeVector::basis(k as u32);
                    let lhs = mul(eij, &ek);
                    let rhs = mul(&FreeVector::basis(i as u32), &alg.table[j][k]);
                    if lhs != rhs {
                        return Err(AlgebraError::Associativity(
                            alg.basis_names[i].clone(),
                            alg.basis_names[j].clone(),
                            alg.basis_names[k].clone(),
                        ));
                    }
                }
            }
        }
        let commutative =
            (0..d).all(|i| (0..d).all(|j| alg.table[i][j] == alg.table[j][i]));
        Ok(StructureConstantAlgebra { commutative, ..alg })
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_name(&self, i: u32) -> &str {
        &self.basis_names[i as usize]
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.basis_names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn one(&self) -> BaseElem {
        self.unit.clone()
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn mul_basis(&self, i: u32, j: u32) -> &BaseElem {
        &self.table[i as usize][j as usize]
    }

    pub fn mul(&self, x: &BaseElem, y: &BaseElem) -> BaseElem {
        let mut out = FreeVector::zero();
        for (i, ci) in x.iter() {
            for (j, cj) in y.iter() {
                out.add_scaled(&(ci * cj), self.mul_basis(*i, *j));
            }
        }
        out
    }

    pub fn show(&self, x: &BaseElem) -> String {
        show_named(x, |i| self.basis_names[*i as usize].clone())
    }
}

pub fn show_named<L: Ord + Clone>(
    x: &FreeVector<L>,
    mut name: impl FnMut(&L) -> String,
) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.iter()
        .map(|(l, c)| {
            if c.is_one() {
                name(l)
            } else {
                format!("{}*{}", c, name(l))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Ordered PBW monomial: base coefficient index on the left, exponent
/// vector over the generator list. Degree-lexicographic order on exponents
/// keeps straightening confluent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct PbwLabel {
    pub coeff: u32,
    pub exps: Vec<u16>,
}

impl PbwLabel {
    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }
}

pub type PbwElem = FreeVector<PbwLabel>;

/// Lie-Rinehart data over a commutative base: bracket and anchor tables on
/// generators, with elements of L presented as A-combinations of generators.
pub struct PbwCarrier {
    pub name: String,
    pub base: Arc<StructureConstantAlgebra>,
    gen_names: Vec<String>,
    /// bracket[i][j] = [X_i, X_j] as an L-element: per generator k an
    /// A-coefficient.
    bracket: Vec<Vec<Vec<BaseElem>>>,
    /// anchor[i][a] = X_i(a) in A, for a a base basis element.
    anchor: Vec<Vec<BaseElem>>,
}

impl PbwCarrier {
    pub fn new(
        name: impl Into<String>,
        base: Arc<StructureConstantAlgebra>,
        gen_names: Vec<String>,
        bracket: Vec<Vec<Vec<BaseElem>>>,
        anchor: Vec<Vec<BaseElem>>,
    ) -> Result<Self, AlgebraError> {
        if !base.is_commutative() {
            return Err(AlgebraError::Shape("base of a Lie-Rinehart pair must be commutative".into()));
        }
        let r = gen_names.len();
        let d = base.dim();
        if bracket.len() != r
            || bracket.iter().any(|row| row.len() != r || row.iter().any(|e| e.len() != r))
        {
            return Err(AlgebraError::Shape("bracket table shape".into()));
        }
        if anchor.len() != r || anchor.iter().any(|row| row.len() != d) {
            return Err(AlgebraError::Shape("anchor table shape".into()));
        }
        let car = PbwCarrier { name: name.into(), base, gen_names, bracket, anchor };

        // Antisymmetry on generators.
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let lhs = &car.bracket[i][j][k];
                    let rhs = car.bracket[j][i][k].neg();
                    if *lhs != rhs {
                        return Err(AlgebraError::BracketShape(
                            car.gen_names[i].clone(),
                            car.gen_names[j].clone(),
                        ));
                    }
                }
            }
        }
        // Anchor must be a derivation in each argument: X(ab) = X(a)b + aX(b).
        for i in 0..r {
            for a in 0..d {
                for b in 0..d {
                    let ab = car.base.mul_basis(a as u32, b as u32).clone();
                    let lhs = car.anchor_apply_gen(i, &ab);
                    let xa = car.anchor[i][a].clone();
                    let xb = car.anchor[i][b].clone();
                    let rhs = car
                        .base
                        .mul(&xa, &FreeVector::basis(b as u32))
                        .add(&car.base.mul(&FreeVector::basis(a as u32), &xb));
                    if lhs != rhs {
                        return Err(AlgebraError::Anchor(format!(
                            "{}({} * {})",
                            car.gen_names[i],
                            car.base.basis_name(a as u32),
                            car.base.basis_name(b as u32)
                        )));
                    }
                }
            }
        }
        // Jacobi on generator triples, and anchor of brackets = commutator
        // of anchors (both on base basis elements).
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let t1 = car.l_bracket(&car.l_gen(i), &car.l_bracket(&car.l_gen(j), &car.l_gen(k)));
                    let t2 = car.l_bracket(&car.l_gen(j), &car.l_bracket(&car.l_gen(k), &car.l_gen(i)));
                    let t3 = car.l_bracket(&car.l_gen(k), &car.l_bracket(&car.l_gen(i), &car.l_gen(j)));
                    let acc: Vec<BaseElem> =
                        (0..r).map(|m| t1[m].add(&t2[m]).add(&t3[m])).collect();
                    if acc.iter().any(|c| !c.is_zero()) {
                        return Err(AlgebraError::Jacobi(
                            car.gen_names[i].clone(),
                            car.gen_names[j].clone(),
                            car.gen_names[k].clone(),
                        ));
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for a in 0..d {
                    let ea = FreeVector::basis(a as u32);
                    let lhs = car.anchor_l(&car.l_bracket(&car.l_gen(i), &car.l_gen(j)), &ea);
                    let rhs = car
                        .anchor_apply_gen(i, &car.anchor[j][a])
                        .sub(&car.anchor_apply_gen(j, &car.anchor[i][a]));
                    if lhs != rhs {
                        return Err(AlgebraError::Leibniz(
                            car.gen_names[i].clone(),
                            car.gen_names[j].clone(),
                            car.base.basis_name(a as u32).to_string(),
                        ));
                    }
                }
            }
        }
        Ok(car)
    }

    pub fn rank(&self) -> usize {
        self.gen_names.len()
    }

    pub fn gen_name(&self, i: usize) -> &str {
        &self.gen_names[i]
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    /// L-elements: per generator an A-coefficient.
    fn l_gen(&self, i: usize) -> Vec<BaseElem> {
        let mut v = vec![FreeVector::zero(); self.rank()];
        v[i] = self.base.one();
        v
    }

    fn anchor_apply_gen(&self, i: usize, a: &BaseElem) -> BaseElem {
        a.bind(|idx| self.anchor[i][*idx as usize].clone())
    }

    /// Action of an L-element on a base element through the anchor.
    pub fn anchor_l(&self, x: &[BaseElem], a: &BaseElem) -> BaseElem {
        let mut out = FreeVector::zero();
        for (i, ci) in x.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            out = out.add(&self.base.mul(ci, &self.anchor_apply_gen(i, a)));
        }
        out
    }

    /// Lie-Rinehart bracket of two L-elements:
    /// [aX, bY] = ab[X,Y] + a X(b) Y - b Y(a) X.
    pub fn l_bracket(&self, x: &[BaseElem], y: &[BaseElem]) -> Vec<BaseElem> {
        let r = self.rank();
        let mut out = vec![FreeVector::<u32>::zero(); r];
        for i in 0..r {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..r {
                if y[j].is_zero() {
                    continue;
                }
                let ab = self.base.mul(&x[i], &y[j]);
                for k in 0..r {
                    let c = self.base.mul(&ab, &self.bracket[i][j][k]);
                    out[k] = out[k].add(&c);
                }
                // a X_i(b) on Y_j minus b X_j... anchor terms:
                let xb = self.base.mul(&x[i], &self.anchor_apply_gen(i, &y[j]));
                out[j] = out[j].add(&xb);
                let ya = self.base.mul(&y[j], &self.anchor_apply_gen(j, &x[i]));
                out[i] = out[i].sub(&ya);
            }
        }
        out
    }

    pub fn one(&self) -> PbwElem {
        FreeVector::basis(self.unit_label())
    }

    pub fn unit_label(&self) -> PbwLabel {
        let one_idx = self
            .base
            .one()
            .leading()
            .map(|(l, _)| *l)
            .expect("base unit is nonzero");
        // base unit must be a basis element for labels to stay canonical
        debug_assert!(self.base.one().len() == 1);
        PbwLabel { coeff: one_idx, exps: vec![0; self.rank()] }
    }

    pub fn embed_base(&self, a: &BaseElem) -> PbwElem {
        a.map_labels(|i| PbwLabel { coeff: *i, exps: vec![0; self.rank()] })
    }

    pub fn gen(&self, i: usize) -> PbwElem {
        let one_idx = self.base.one().leading().map(|(l, _)| *l).unwrap();
        let mut exps = vec![0; self.rank()];
        exps[i] = 1;
        FreeVector::basis(PbwLabel { coeff: one_idx, exps })
    }

    /// Left multiplication by a base element just multiplies the left
    /// coefficient; ordered monomials stay ordered.
    pub fn base_mul_left(&self, a: &BaseElem, x: &PbwElem) -> PbwElem {
        let mut out = FreeVector::zero();
        for (l, c) in x.iter() {
            let prod = self.base.mul(a, &FreeVector::basis(l.coeff));
            for (bi, bc) in prod.iter() {
                out.add_term(PbwLabel { coeff: *bi, exps: l.exps.clone() }, bc * c);
            }
        }
        out
    }

    /// Right multiplication of a monomial by generator `g`, in normal form.
    ///
    /// m * X_g straightens the trailing generators of m past X_g. Recursion
    /// is on the monomial part right of position g.
    fn mono_mul_gen(&self, l: &PbwLabel, g: usize) -> PbwElem {
        // Find the last generator position with nonzero exponent after g.
        let tail = (g + 1..self.rank()).rev().find(|&k| l.exps[k] > 0);
        match tail {
            None => {
                let mut exps = l.exps.clone();
                exps[g] += 1;
                FreeVector::basis(PbwLabel { coeff: l.coeff, exps })
            }
            Some(k) => {
                // l = m' X_k, so l X_g = m' X_g X_k + m' [X_k, X_g].
                let mut head = l.clone();
                head.exps[k] -= 1;
                let head_elem = FreeVector::basis(head.clone());
                let mut out = self.mul(
                    &self.mono_mul_gen(&head, g),
                    &self.gen_basis_elem(k),
                );
                for (j, c) in self.bracket[k][g].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let term = self.mul(&head_elem, &self.base_mul_left(c, &self.gen_basis_elem(j)));
                    out = out.add(&term);
                }
                out
            }
        }
    }

    fn gen_basis_elem(&self, i: usize) -> PbwElem {
        self.gen(i)
    }

    /// Right multiplication by a base element: m a = (straightened) with
    /// X a = a X + X(a) applied from the right end of the monomial.
    pub fn mono_mul_base(&self, l: &PbwLabel, a: &BaseElem) -> PbwElem {
        let last = (0..self.rank()).rev().find(|&k| l.exps[k] > 0);
        match last {
            None => {
                let ca = self.base.mul(&FreeVector::basis(l.coeff), a);
                self.embed_base(&ca)
            }
            Some(k) => {
                // l = m' X_k: l a = m' (a X_k) + m' X_k(a)
                let mut head = l.clone();
                head.exps[k] -= 1;
                let xa = self.anchor_apply_gen(k, a);
                let mut out = self.mono_mul_base_then_gen(&head, a, k);
                out = out.add(&self.mono_mul_base(&head, &xa));
                out
            }
        }
    }

    fn mono_mul_base_then_gen(&self, head: &PbwLabel, a: &BaseElem, k: usize) -> PbwElem {
        // (head * a) * X_k
        let ha = self.mono_mul_base(head, a);
        self.mul(&ha, &self.gen_basis_elem(k))
    }

    /// Full product with straightening; confluence is exercised by tests.
    pub fn mul(&self, x: &PbwElem, y: &PbwElem) -> PbwElem {
        let mut out = FreeVector::zero();
        for (lx, cx) in x.iter() {
            for (ly, cy) in y.iter() {
                out.add_scaled(&(cx * cy), &self.mono_mul_mono(lx, ly));
            }
        }
        out
    }

    fn mono_mul_mono(&self, lx: &PbwLabel, ly: &PbwLabel) -> PbwElem {
        // lx * (b X^e) = ((lx * b) * generators of e in order)
        let b = FreeVector::basis(ly.coeff);
        let mut acc = self.mono_mul_base(lx, &b);
        for g in 0..self.rank() {
            for _ in 0..ly.exps[g] {
                let mut next = FreeVector::zero();
                for (l, c) in acc.iter() {
                    next.add_scaled(c, &self.mono_mul_gen(l, g));
                }
                acc = next;
            }
        }
        acc
    }

    /// Projection to the exponent-zero part: the coefficient of the empty
    /// monomial, as a base element.
    pub fn constant_term(&self, x: &PbwElem) -> BaseElem {
        let mut out = FreeVector::zero();
        for (l, c) in x.iter() {
            if l.exps.iter().all(|&e| e == 0) {
                out.add_term(l.coeff, c.clone());
            }
        }
        out
    }

    pub fn show(&self, x: &PbwElem) -> String {
        show_named(x, |l| {
            let mut s = String::new();
            let coeff_name = self.base.basis_name(l.coeff);
            if coeff_name != "1" {
                s.push_str(coeff_name);
            }
            for (i, &e) in l.exps.iter().enumerate() {
                for _ in 0..e {
                    if !s.is_empty() {
                        s.push('.');
                    }
                    s.push_str(&self.gen_names[i]);
                }
            }
            if s.is_empty() {
                s.push('1');
            }
            s
        })
    }

    /// All normal-form monomial labels with unit coefficient up to `deg`.
    pub fn monomials_up_to(&self, deg: usize) -> Vec<PbwLabel> {
        let one_idx = self.base.one().leading().map(|(l, _)| *l).unwrap();
        let mut out = vec![];
        let mut stack = vec![(vec![], deg)];
        while let Some((prefix, budget)) = stack.pop() {
            if prefix.len() == self.rank() {
                out.push(PbwLabel { coeff: one_idx, exps: prefix });
                continue;
            }
            for e in 0..=budget {
                let mut p = prefix.clone();
                p.push(e as u16);
                stack.push((p, budget - e));
            }
        }
        out.sort();
        out
    }
}

impl fmt::Debug for StructureConstantAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StructureConstantAlgebra({}, dim {})", self.name, self.dim())
    }
}

impl fmt::Debug for PbwCarrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PbwCarrier({}, rank {})", self.name, self.rank())
    }
}

/// Either kind of carrier algebra an algebroid can live on.
#[derive(Clone, Debug)]
pub enum Carrier {
    Fin(Arc<StructureConstantAlgebra>),
    Pbw(Arc<PbwCarrier>),
}

impl Carrier {
    pub fn name(&self) -> &str {
        match self {
            Carrier::Fin(a) => &a.name,
            Carrier::Pbw(p) => &p.name,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Carrier::Fin(_))
    }

    pub fn fin(&self) -> Option<&Arc<StructureConstantAlgebra>> {
        match self {
            Carrier::Fin(a) => Some(a),
            _ => None,
        }
    }

    pub fn pbw(&self) -> Option<&Arc<PbwCarrier>> {
        match self {
            Carrier::Pbw(p) => Some(p),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn rationals() -> Arc<StructureConstantAlgebra> {
        Arc::new(
            StructureConstantAlgebra::new(
                "Q",
                vec!["1".into()],
                FreeVector::basis(0),
                vec![vec![FreeVector::basis(0)]],
                DEFAULT_VALIDATION_DIM,
            )
            .unwrap(),
        )
    }

    fn dual_numbers() -> StructureConstantAlgebra {
        // Q[x]/(x^2)
        let z = FreeVector::zero;
        StructureConstantAlgebra::new(
            "Q[x]/(x^2)",
            vec!["1".into(), "x".into()],
            FreeVector::basis(0),
            vec![
                vec![FreeVector::basis(0), FreeVector::basis(1)],
                vec![FreeVector::basis(1), z()],
            ],
            DEFAULT_VALIDATION_DIM,
        )
        .unwrap()
    }

    #[test]
    fn dual_numbers_validate_and_multiply() {
        let a = dual_numbers();
        assert!(a.is_commutative());
        let x = FreeVector::basis(1u32);
        assert!(a.mul(&x, &x).is_zero());
        let e = a.mul(&a.one(), &x);
        assert_eq!(e, x);
    }

    #[test]
    fn broken_associativity_is_reported() {
        // u*u = v, u*v = 0, v*u = u: (u u) u = u but u (u u) = 0.
        // Dimension 2 would not do, every unital table there associates.
        let z = FreeVector::zero;
        let err = StructureConstantAlgebra::new(
            "broken",
            vec!["1".into(), "u".into(), "v".into()],
            FreeVector::basis(0),
            vec![
                vec![FreeVector::basis(0), FreeVector::basis(1), FreeVector::basis(2)],
                vec![FreeVector::basis(1), FreeVector::basis(2), z()],
                vec![FreeVector::basis(2), FreeVector::basis(1), z()],
            ],
            DEFAULT_VALIDATION_DIM,
        );
        match err {
            Err(AlgebraError::Associativity(_, _, _)) => {}
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn unit_laws_are_checked() {
        let z = FreeVector::zero;
        let err = StructureConstantAlgebra::new(
            "no-unit",
            vec!["1".into(), "u".into()],
            FreeVector::basis(1),
            vec![
                vec![FreeVector::basis(0), FreeVector::basis(1)],
                vec![FreeVector::basis(1), z()],
            ],
            DEFAULT_VALIDATION_DIM,
        );
        assert!(matches!(err, Err(AlgebraError::Unit(_, _))));
    }

    pub fn heisenberg() -> PbwCarrier {
        // rank 3 over Q: [e1,e2]=e3 central, zero anchor.
        let base = rationals();
        let z = || FreeVector::<u32>::zero();
        let one = || FreeVector::basis(0u32);
        let mut bracket = vec![vec![vec![z(); 3]; 3]; 3];
        bracket[0][1][2] = one();
        bracket[1][0][2] = one().neg();
        let anchor = vec![vec![z()]; 3];
        PbwCarrier::new("V(heis3)", base, vec!["e1".into(), "e2".into(), "e3".into()], bracket, anchor)
            .unwrap()
    }

    #[test]
    fn heisenberg_straightening() {
        let h = heisenberg();
        let e1 = h.gen(0);
        let e2 = h.gen(1);
        let e3 = h.gen(2);
        // e2 e1 = e1 e2 - e3
        let prod = h.mul(&e2, &e1);
        let expect = h.mul(&e1, &e2).sub(&e3);
        assert_eq!(prod, expect);
        // central: e3 commutes
        assert_eq!(h.mul(&e3, &e1), h.mul(&e1, &e3));
    }

    #[test]
    fn pbw_multiplication_is_associative_on_samples() {
        let h = heisenberg();
        let gens: Vec<PbwElem> = (0..3).map(|i| h.gen(i)).collect();
        let samples = vec![
            gens[0].clone(),
            gens[1].clone(),
            h.mul(&gens[1], &gens[0]),
            h.mul(&gens[2], &h.mul(&gens[1], &gens[1])),
            gens[0].add(&gens[2]),
        ];
        for x in &samples {
            for y in &samples {
                for z in &samples {
                    let lhs = h.mul(&h.mul(x, y), z);
                    let rhs = h.mul(x, &h.mul(y, z));
                    assert_eq!(lhs, rhs, "associativity failed");
                }
            }
        }
    }

    #[test]
    fn anchor_straightening_moves_coefficients() {
        // rank 1 over dual numbers with X = x d/dx, so X(x) = x and
        // X x = x X + x. X(x) = 1 would not kill x^2.
        let base = Arc::new(dual_numbers());
        let bracket = vec![vec![vec![FreeVector::zero(); 1]; 1]];
        let anchor = vec![vec![FreeVector::zero(), FreeVector::basis(1)]];
        let c = PbwCarrier::new("V(xdx)", base.clone(), vec!["X".into()], bracket, anchor).unwrap();
        let x_elem = c.embed_base(&FreeVector::basis(1));
        let big_x = c.gen(0);
        let lhs = c.mul(&big_x, &x_elem);
        let rhs = c.mul(&x_elem, &big_x).add(&x_elem);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn monomial_enumeration_is_exhaustive() {
        let h = heisenberg();
        let ms = h.monomials_up_to(3);
        // #(k1,k2,k3) with sum <= 3 = C(6,3) = 20
        assert_eq!(ms.len(), 20);
        let mut sorted = ms.clone();
        sorted.sort();
        assert_eq!(ms, sorted);
    }

    #[test]
    fn jacobi_violation_is_rejected() {
        // [e1,e2]=e3, [e1,e3]=e1, [e2,e3]=0:
        // J(e1,e2,e3) = [e1,0] + [e2,-e1] + [e3,e3] = e3, nonzero.
        let base = rationals();
        let z = || FreeVector::<u32>::zero();
        let one = || FreeVector::basis(0u32);
        let mut bracket = vec![vec![vec![z(); 3]; 3]; 3];
        bracket[0][1][2] = one();
        bracket[1][0][2] = one().neg();
        bracket[0][2][0] = one();
        bracket[2][0][0] = one().neg();
        let anchor = vec![vec![z()]; 3];
        let res = PbwCarrier::new("bad", base, vec!["e1".into(), "e2".into(), "e3".into()], bracket, anchor);
        assert!(matches!(res, Err(AlgebraError::Jacobi(_, _, _))), "got {res:?}");
    }
}
