use pacs_core::chains::{action_block, build_chain};
use pacs_core::lie::{construct_sl, construct_so, construct_so_star, construct_split, construct_su, Family};
use pacs_core::linalg::subspace::kernel;
use pacs_core::linalg::SparseVec;
use pacs_core::spencer::{
    csp_baseline, csp_spencer, pacs_prolongation, pacs_spencer, spencer_block_of_kostant, symmetric_cubic_image,
};

#[test]
fn csp_baseline_dimensions() {
    let r2 = csp_baseline(2).unwrap();
    assert_eq!((r2.dim_kernel, r2.dim_cokernel), (20, 0));
    assert_eq!(r2.dim_image, 24);
    let r3 = csp_baseline(3).unwrap();
    assert_eq!(r3.dim_kernel, 56);
    assert_eq!(r3.dim_cokernel, 14);
    assert!(csp_baseline(1).is_err());
}

#[test]
fn csp_prolongation_is_symmetric_cubics() {
    let (d, _) = csp_spencer(2).unwrap();
    assert_eq!(kernel(&d), symmetric_cubic_image(2).unwrap());
}

#[test]
fn pacs_prolongations_vanish() {
    let g2 = pacs_prolongation(&construct_split(Family::SplitG2).unwrap()).unwrap();
    assert_eq!((g2.dim_kernel, g2.dim_image, g2.dim_cokernel), (0, 16, 8));
    for g in [
        construct_sl(2).unwrap(),
        construct_su(1, 1).unwrap(),
        construct_so(3, 0).unwrap(),
        construct_so_star(2).unwrap(),
    ] {
        assert_eq!(pacs_prolongation(&g).unwrap().dim_kernel, 0, "{}", g.label());
    }
}

#[test]
fn spencer_is_a_block_of_kostant() {
    for g in [construct_split(Family::SplitG2).unwrap(), construct_su(1, 1).unwrap()] {
        assert_eq!(spencer_block_of_kostant(&g).unwrap(), pacs_spencer(&g).unwrap());
    }
}

#[test]
fn spencer_is_equivariant() {
    let g = construct_so(3, 0).unwrap();
    let n = g.range(-1).len();
    let d = pacs_spencer(&g).unwrap();
    let (c1, c2) = (build_chain(&g, 1).unwrap(), build_chain(&g, 2).unwrap());
    let (s1, s2) = (c1.slice(1), c2.slice(1));
    let dom: Vec<usize> = (n..s1.dim()).collect();
    let cod: Vec<usize> = (n..s2.dim()).collect();
    for a in g.range(0) {
        let x = SparseVec::unit(a);
        let r1 = action_block(&g, &c1, &s1, &x).submatrix(&dom, &dom);
        let r2 = action_block(&g, &c2, &s2, &x).submatrix(&cod, &cod);
        assert_eq!(d.mul(&r1).unwrap(), r2.mul(&d).unwrap());
    }
}
