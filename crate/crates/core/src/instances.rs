//! Concrete finite-dimensional instances: base algebras, enveloping and
//! group-algebra constructions, and distinguished cochains on them. Shared
//! by the library tests, the acceptance suite, and the bundled CLI fixtures.

use crate::algebra::{BaseElem, StructureConstantAlgebra, DEFAULT_VALIDATION_DIM};
use crate::bialgebroid::{build_ae, build_hopf, Bialgebroid};
use crate::freevec::FreeVector;
use crate::hom::{HomCochain, HomComplex};
use crate::scalar::Scalar;
use std::sync::Arc;

/// Q[x]/(x^2), basis 1, x.
pub fn dual_numbers() -> Arc<StructureConstantAlgebra> {
    Arc::new(
        StructureConstantAlgebra::new(
            "Q[x]/(x^2)",
            vec!["1".into(), "x".into()],
            FreeVector::basis(0),
            vec![
                vec![FreeVector::basis(0), FreeVector::basis(1)],
                vec![FreeVector::basis(1), FreeVector::zero()],
            ],
            DEFAULT_VALIDATION_DIM,
        )
        .unwrap(),
    )
}

/// Upper triangular 2x2 matrices: span{e11, e22, e12}, noncommutative,
/// unit e11 + e22.
pub fn upper_triangular() -> Arc<StructureConstantAlgebra> {
    let z = FreeVector::<u32>::zero;
    let e = FreeVector::<u32>::basis;
    Arc::new(
        StructureConstantAlgebra::new(
            "T2",
            vec!["e11".into(), "e22".into(), "e12".into()],
            e(0).add(&e(1)),
            vec![
                vec![e(0), z(), e(2)],
                vec![z(), e(1), z()],
                vec![z(), e(2), z()],
            ],
            DEFAULT_VALIDATION_DIM,
        )
        .unwrap(),
    )
}

/// Q[x,y]/(x^2,y^2), basis 1, x, y, xy.
pub fn two_variable_nilpotent() -> Arc<StructureConstantAlgebra> {
    let z = FreeVector::<u32>::zero;
    let e = FreeVector::<u32>::basis;
    Arc::new(
        StructureConstantAlgebra::new(
            "Q[x,y]/(x^2,y^2)",
            vec!["1".into(), "x".into(), "y".into(), "xy".into()],
            e(0),
            vec![
                vec![e(0), e(1), e(2), e(3)],
                vec![e(1), z(), e(3), z()],
                vec![e(2), e(3), z(), z()],
                vec![e(3), z(), z(), z()],
            ],
            DEFAULT_VALIDATION_DIM,
        )
        .unwrap(),
    )
}

/// Q[C2]: basis 1, g with g^2 = 1; grouplike coproduct, the inverse map as
/// antipode, viewed as a left Hopf algebroid over the rationals.
pub fn c2_group_algebra() -> Bialgebroid {
    let e = FreeVector::<u32>::basis;
    let alg = Arc::new(
        StructureConstantAlgebra::new(
            "Q[C2]",
            vec!["1".into(), "g".into()],
            e(0),
            vec![vec![e(0), e(1)], vec![e(1), e(0)]],
            DEFAULT_VALIDATION_DIM,
        )
        .unwrap(),
    );
    let coproduct = vec![
        FreeVector::basis(vec![0u32, 0u32]),
        FreeVector::basis(vec![1u32, 1u32]),
    ];
    let counit = vec![Scalar::one(), Scalar::one()];
    let antipode = vec![e(0), e(1)];
    build_hopf(alg, coproduct, counit, antipode).unwrap()
}

/// The enveloping left Hopf algebroid of a base algebra.
pub fn envelope(base: Arc<StructureConstantAlgebra>) -> Arc<Bialgebroid> {
    Arc::new(build_ae(base).expect("enveloping construction"))
}

/// The Euler-type derivations x d/dx and y d/dy of two_variable_nilpotent,
/// as value tables on the basis 1, x, y, xy.
pub fn euler_derivations() -> (Vec<BaseElem>, Vec<BaseElem>) {
    let z = FreeVector::<u32>::zero;
    let e = FreeVector::<u32>::basis;
    (vec![z(), e(1), z(), e(3)], vec![z(), z(), e(2), e(3)])
}

/// The arity 2 cochain with base values induced on an enveloping algebroid
/// by a pair of derivations of a commutative base: on basis tensors it is
/// (a1 (x) b1, a2 (x) b2) |-> (d1(a1) d2(a2) - d2(a1) d1(a2)) b1 b2.
///
/// The two derivation tables must be derivations of the base product; that
/// makes the formula balanced over the cochain domain, which is re-checked
/// after construction.
pub fn bivector_cochain(h: &HomComplex, d1: &[BaseElem], d2: &[BaseElem]) -> HomCochain {
    let b = &h.b;
    let base = &b.base;
    let d = b.dim_a();
    assert!(base.is_commutative(), "bivector cochains live over a commutative base");
    assert_eq!(b.dim_u(), d * d, "the total algebra is not an envelope");
    for i in 0..d as u32 {
        for j in 0..d as u32 {
            let st = b.mul(&b.s(&FreeVector::basis(i)), &b.t(&FreeVector::basis(j)));
            assert_eq!(
                st,
                FreeVector::basis(i * d as u32 + j),
                "unexpected envelope basis layout"
            );
        }
    }
    let apply = |tbl: &[BaseElem], x: &BaseElem| {
        let mut out: BaseElem = FreeVector::zero();
        for (i, c) in x.iter() {
            out.add_scaled(c, &tbl[*i as usize]);
        }
        out
    };
    for i in 0..d as u32 {
        for j in 0..d as u32 {
            let prod = base.mul_basis(i, j);
            for tbl in [d1, d2] {
                let lhs = apply(tbl, prod);
                let rhs = base
                    .mul(&tbl[i as usize], &FreeVector::basis(j))
                    .add(&base.mul(&FreeVector::basis(i), &tbl[j as usize]));
                assert_eq!(lhs, rhs, "table {} is not a derivation", i);
            }
        }
    }
    let wedge = |a1: u32, a2: u32| {
        let (a1, a2) = (a1 as usize, a2 as usize);
        base.mul(&d1[a1], &d2[a2]).sub(&base.mul(&d2[a1], &d1[a2]))
    };
    let dom = h.domain(2);
    let values = (0..dom.dim())
        .map(|k| {
            let t = dom.basis_tuple(k);
            let (a1, b1) = (t[0] / d as u32, t[0] % d as u32);
            let (a2, b2) = (t[1] / d as u32, t[1] % d as u32);
            let tails = base.mul(&FreeVector::basis(b1), &FreeVector::basis(b2));
            base.mul(&wedge(a1, a2), &tails)
        })
        .collect();
    let f = HomCochain { arity: 2, values };
    if let Some(w) = h.linearity_defect(&f) {
        panic!("bivector cochain is not balanced: {}", w);
    }
    f
}
