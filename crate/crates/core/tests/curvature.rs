use pacs_core::curvature::{
    bianchi_matrix, curvature_from_element, curvature_value, formal_curvature_space, ricci_contraction, verify_lemma47,
    CurvatureFormula, SpecialPart,
};
use pacs_core::error::Error;
use pacs_core::lie::{construct_sl, construct_so, construct_so_star, construct_split, construct_su, Family};
use pacs_core::linalg::SparseVec;
use pacs_core::sampling::Lcg;

#[test]
fn formal_curvature_dimensions() {
    for (g, k) in [
        (construct_su(1, 1).unwrap(), 9),
        (construct_sl(2).unwrap(), 9),
        (construct_split(Family::SplitG2).unwrap(), 3),
        (construct_so(3, 0).unwrap(), 6),
    ] {
        assert_eq!(formal_curvature_space(&g).unwrap().dim(), k, "{}", g.label());
    }
}

#[test]
fn bianchi_on_random_triples() {
    // evaluate R(X,Y)Z + R(Z,X)Y + R(Y,Z)X on random vectors through the brackets of g
    let g = construct_su(1, 1).unwrap();
    let sp = SpecialPart::new(&g).unwrap();
    let k = formal_curvature_space(&g).unwrap();
    let n = sp.n;
    let start = g.range(-1).start;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (v + 1..n).map(move |w| (v, w))).collect();
    let mut rng = Lcg::new(5);
    for r in k.basis() {
        let values: Vec<SparseVec> = (0..pairs.len()).map(|p| curvature_value(&sp, r, p)).collect();
        let eval = |x: &SparseVec, y: &SparseVec| {
            let mut out = SparseVec::new();
            for (p, &(v, w)) in pairs.iter().enumerate() {
                let c = x.get(start + v) * y.get(start + w) - x.get(start + w) * y.get(start + v);
                out = out.axpy(&c, &values[p]);
            }
            out
        };
        for _ in 0..5 {
            let [x, y, z] = [0, 1, 2].map(|_| rng.vector(n, 3).shifted(start));
            let s = g
                .bracket_vec(&eval(&x, &y), &z)
                .add(&g.bracket_vec(&eval(&z, &x), &y))
                .add(&g.bracket_vec(&eval(&y, &z), &x));
            assert!(s.is_zero());
        }
    }
}

#[test]
fn curvature_of_element_lies_in_kernel() {
    let g = construct_so_star(2).unwrap();
    let sp = SpecialPart::new(&g).unwrap();
    let b = bianchi_matrix(&sp);
    for a in &sp.basis {
        let r = curvature_from_element(&g, a).unwrap();
        assert!(!r.is_zero());
        assert!(b.apply(&r).is_zero());
    }
    // the grading element is in g_0 but not in g_0^0
    let e = g.grading_element().unwrap();
    assert!(matches!(curvature_from_element(&g, &e), Err(Error::Precondition(_))));
}

#[test]
fn ricci_is_injective_on_curvatures() {
    let g = construct_split(Family::SplitG2).unwrap();
    let sp = SpecialPart::new(&g).unwrap();
    let r = curvature_from_element(&g, &sp.basis[0]).unwrap();
    for c in 0..2 {
        assert!(!ricci_contraction(&g, &sp, &r, c).unwrap().is_zero());
    }
    assert!(ricci_contraction(&g, &sp, &r, 2).is_err());
}

#[test]
fn curvature_spaces_small_families() {
    for (g, dims) in [
        (construct_split(Family::SplitG2).unwrap(), (3, 3, 3, 0)),
        (construct_so(3, 0).unwrap(), (6, 6, 6, 0)),
        (construct_so_star(2).unwrap(), (9, 9, 9, 0)),
        (construct_su(1, 1).unwrap(), (4, 9, 4, 5)),
        (construct_sl(2).unwrap(), (4, 9, 4, 5)),
    ] {
        let r = verify_lemma47(&g).unwrap();
        assert_eq!((r.dim_g00, r.dim_k, r.dim_r, r.dim_w), dims, "{}", r.algebra_label);
        assert_eq!(r.dim_k_oracle, r.dim_k);
        assert!(r.r_in_k && r.r_invariant && r.psi_scale_invariant && r.ricci_ok() && r.w_complements_r);
        assert_eq!(r.k_equals_r, dims.3 == 0);
        assert_eq!(r.w_invariant, (dims.3 > 0).then_some(true));
        assert_eq!(r.formula, CurvatureFormula::Corrected);
        // the uncorrected two-term expression fails Bianchi
        assert!(!r.two_term_in_k);
    }
}

#[test]
fn curvature_spaces_f4() {
    let r = verify_lemma47(&construct_split(Family::SplitF4).unwrap()).unwrap();
    assert_eq!((r.dim_g00, r.dim_k, r.dim_k_oracle, r.dim_r, r.dim_w), (21, 21, 21, 21, 0));
    assert!(r.k_equals_r && r.ricci_ok());
}
