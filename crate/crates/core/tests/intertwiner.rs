mod common;

use common::*;
use cuntz_core::constants::{u_cp, v_cp, w_cp};
use cuntz_core::endo::{gauge, left_inverse};
use cuntz_core::intertwiner::*;
use cuntz_core::linalg::{null_space, row_reduce, SparseMatrix};
use cuntz_core::{Element, Target};
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

#[test]
fn sparse_kernel_matches_dense_elimination() {
    let mut r = rng(0x5eed_0101);
    for _ in 0..30 {
        let (rows, cols) = (r.gen_range(1..8), r.gen_range(1..8));
        let mut sparse = SparseMatrix::new(cols);
        let mut dense = Vec::new();
        for _ in 0..rows {
            let row: Vec<BigRational> = (0..cols)
                .map(|_| {
                    if r.gen_bool(0.4) {
                        BigRational::new(
                            r.gen_range(-4i64..=4).into(),
                            r.gen_range(1i64..=3).into(),
                        )
                    } else {
                        BigRational::zero()
                    }
                })
                .collect();
            sparse.push_row(row.iter().cloned().enumerate());
            dense.push(row);
        }
        let ns = null_space(&sparse);
        assert_eq!(ns.len(), cols - dense_rank(dense.clone()));
        assert_eq!(row_reduce(&sparse).rank(), dense_rank(dense));
        for x in &ns {
            assert!(sparse.mul_vec(x).iter().all(Zero::is_zero));
        }
    }
}

#[test]
fn intertwiner_space_of_u_cp_contains_v_cp() {
    let u = u_cp();
    let report = intertwiner_space(&u, 3).unwrap();
    assert_eq!(report.ambient_dimension, 176);
    assert!(report.dimension >= 2);
    assert_eq!(report.dimension, dense_kernel_dimension(&u, 3));
    assert!(report.contains(&v_cp()));
    assert!(report.contains(&Element::identity(u.context())));
    for b in &report.basis {
        assert!(is_self_intertwiner(&u, b).unwrap());
    }
}

#[test]
fn identity_has_only_scalar_intertwiners() {
    let i = Element::identity(ctx(2));
    for level in 0..=3 {
        let r = intertwiner_space(&i, level).unwrap();
        assert_eq!(r.dimension, 1);
        assert_eq!(dense_kernel_dimension(&i, level), 1);
    }
}

#[test]
fn random_permutation_intertwiners_give_agreeing_perturbations() {
    let mut r = rng(0x5eed_0102);
    let mut perturbed = 0;
    for _ in 0..8 {
        let k = r.gen_range(1..=2);
        let u = random_permutation_unitary(&mut r, ctx(2), k);
        let report = intertwiner_space(&u, 2).unwrap();
        assert_eq!(report.dimension, dense_kernel_dimension(&u, 2));
        for b in &report.basis {
            assert!(is_self_intertwiner(&u, b).unwrap());
            let image = ad_shift(&u, b);
            assert!(report.contains(&image));
            if cuntz_core::endo::is_unitary(b) {
                let w = perturb(&u, b, Order::ShiftRight).unwrap();
                assert!(agree_on_f(&u, &w, 3).unwrap().agree);
                perturbed += 1;
            }
        }
    }
    assert!(perturbed > 0);
}

#[test]
fn agreement_on_f_makes_w_u_star_an_intertwiner() {
    let u = u_cp();
    let w = w_cp();
    assert!(agree_on_f(&u, &w, 4).unwrap().agree);
    for k in 1..=2 {
        for x in matrix_units(u.context(), k) {
            let a = cuntz_core::endo::lambda_apply(&u, &x).unwrap();
            let b = cuntz_core::endo::lambda_apply(&w, &x).unwrap();
            assert_eq!(a, b);
        }
    }
    let v = &w * &u.adjoint();
    assert!(is_self_intertwiner(&u, &v).unwrap());
}

#[test]
fn coboundary_identity_holds_for_w_cp() {
    let w = w_cp();
    let c = coboundary_witness(&w).unwrap();
    assert!(c.u.is_in(Target::F));
    let lhs = left_inverse(&(&w.adjoint() * &gauge(&w, 1)));
    let rhs = &c.z * &gauge(&c.z.adjoint(), 1);
    assert_eq!(lhs, rhs);
    assert_eq!(cuntz_core::endo::shift(&c.z), &w.adjoint() * &c.u);
}
