use pacs_core::lie::json::{export_json, import_json};
use pacs_core::lie::{
    certify_contact, construct_sl, construct_so, construct_so_star, construct_split, construct_su,
    special_subalgebra, Family, LieError, Metadata,
};
use pacs_core::linalg::scalar::int;
use pacs_core::linalg::{Matrix, SparseVec};

#[test]
fn sl_split_is_isotropic() {
    let g = construct_sl(2).unwrap();
    let c = certify_contact(&g).unwrap();
    assert_eq!(c.component_dims, [1, 4, 5, 4, 1]);
    let Metadata::Split { e, f } = g.metadata() else { panic!() };
    assert_eq!((e.len(), f.len()), (2, 2));
    let b = g.bracket_form();
    for &x in e {
        for &y in e {
            assert_eq!(b.get(x, y), int(0));
        }
    }
    for &x in f {
        for &y in f {
            assert_eq!(b.get(x, y), int(0));
        }
    }
    // codimension one in g_0
    assert_eq!(special_subalgebra(&g).unwrap().dim(), 4);
}

#[test]
fn su_complex_structure() {
    let g = construct_su(1, 1).unwrap();
    let c = certify_contact(&g).unwrap();
    assert_eq!(c.component_dims[1], 4);
    let Metadata::Complex { j } = g.metadata() else { panic!() };
    let b = g.bracket_form();
    // [JX, JY] = [X, Y]  <=>  Jᵀ b J = b
    assert_eq!(j.transpose().mul(&b).unwrap().mul(j).unwrap(), b);
    assert_eq!(j.mul(j).unwrap(), Matrix::identity(4).scale(&int(-1)));
    for a in g.range(0) {
        let m = g.ad_block(&SparseVec::unit(a), -1, -1);
        assert_eq!(m.mul(j).unwrap(), j.mul(&m).unwrap());
    }
    let g00 = special_subalgebra(&g).unwrap();
    assert_eq!(g00.dim(), 4);
    for v in g00.basis() {
        let k = v.leading().unwrap().0;
        assert!(g.range(0).contains(&k));
    }
    // λ_A = 0 on g_0^0
    for v in g00.basis() {
        assert!(g.bracket_vec(v, &SparseVec::unit(0)).is_zero());
    }
}

#[test]
fn so_tensor_structure() {
    let g = construct_so(3, 0).unwrap();
    let c = certify_contact(&g).unwrap();
    assert_eq!(c.component_dims, [1, 6, 7, 6, 1]);
    let Metadata::Tensor { n, signs } = g.metadata() else { panic!() };
    assert_eq!(*n, 3);
    // b(e^a ⊗ f_c, e^a' ⊗ f_c') = ε(a, a') g(c, c'): skew in (a, a') and symmetric in (c, c')
    let b = g.bracket_form();
    let mut gform = vec![vec![int(0); 3]; 3];
    for c1 in 0..3 {
        for c2 in 0..3 {
            assert_eq!(b.get(c1, c2), int(0));
            assert_eq!(b.get(3 + c1, 3 + c2), int(0));
            assert_eq!(b.get(c1, 3 + c2), b.get(c2, 3 + c1));
            gform[c1][c2] = b.get(c1, 3 + c2);
        }
    }
    let gm = Matrix::from_dense(&gform);
    assert!(gm.is_positive_definite() || gm.scale(&int(-1)).is_positive_definite());
    assert_eq!(signs.iter().filter(|&&s| s > 0).count(), 3);
    let h = construct_so(2, 1).unwrap();
    let b = h.bracket_form();
    let gform: Vec<Vec<_>> = (0..3).map(|c1| (0..3).map(|c2| b.get(c1, 3 + c2)).collect()).collect();
    let gm = Matrix::from_dense(&gform);
    assert!(!gm.is_positive_definite() && !gm.scale(&int(-1)).is_positive_definite());
    assert_ne!(gm.det().unwrap(), int(0));
}

#[test]
fn so_star_quaternionic() {
    let g = construct_so_star(2).unwrap();
    let c = certify_contact(&g).unwrap();
    assert_eq!(c.component_dims, [1, 8, 10, 8, 1]);
    assert_eq!(g.dim(), 28);
    let Metadata::Quaternionic { i, j, k } = g.metadata() else { panic!() };
    let minus_one = Matrix::identity(8).scale(&int(-1));
    let b = g.bracket_form();
    for q in [i, j, k] {
        assert_eq!(q.mul(q).unwrap(), minus_one);
        assert_eq!(q.transpose().mul(&b).unwrap().mul(q).unwrap(), b);
    }
    assert_eq!(i.mul(j).unwrap().add(&j.mul(i).unwrap()).unwrap(), Matrix::zeros(8, 8));
    assert_eq!(i.mul(j).unwrap(), k.scale(&int(-1)));
    assert_eq!(special_subalgebra(&g).unwrap().dim(), 9);
}

#[test]
fn split_table() {
    for (f, minus1, total) in [(Family::SplitG2, 4, 14), (Family::SplitF4, 14, 52), (Family::SplitE6, 20, 78)] {
        let g = construct_split(f).unwrap();
        let c = certify_contact(&g).unwrap();
        assert_eq!(c.component_dims[1], minus1);
        assert_eq!(g.dim(), total);
        assert!(c.integral);
    }
    let f4 = construct_split(Family::SplitF4).unwrap();
    assert_eq!(f4.component_dims()[2], 22);
    assert_eq!(special_subalgebra(&f4).unwrap().dim(), 21);
}

#[test]
fn corrupted_jacobi_has_witness() {
    let g = construct_split(Family::SplitG2).unwrap();
    let (i, j) = (1, 2);
    let k = 0;
    let v = g.bracket(i, j).get(k) + int(1);
    match certify_contact(&g.with_constant(i, j, k, v)) {
        Err(LieError::Certification { witness, .. }) => assert!(!witness.is_empty()),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn json_roundtrip_all_small() {
    for g in [construct_sl(2).unwrap(), construct_so_star(2).unwrap(), construct_split(Family::SplitF4).unwrap()] {
        let s = export_json(&g);
        let h = import_json(&s).unwrap();
        assert_eq!(g, h);
        assert_eq!(export_json(&h), s);
    }
}

#[test]
fn rescaled_contact_line_still_certifies() {
    let g = construct_split(Family::SplitG2).unwrap();
    let h = g.rescale_contact_line(&int(2));
    certify_contact(&h).unwrap();
    assert_eq!(h.bracket_form().scale(&int(2)), g.bracket_form());
}
