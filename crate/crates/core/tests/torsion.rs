use pacs_core::lie::{construct_sl, construct_so, construct_so_star, construct_split, construct_su, Family};
use pacs_core::sampling::Lcg;
use pacs_core::torsion::{harmonic_type_check, verify_theorem43, Normalizer, TorsionContext};

#[test]
fn theorem43_small_families() {
    let r = verify_theorem43(&construct_split(Family::SplitG2).unwrap()).unwrap();
    assert_eq!((r.dim_spencer_image, r.dim_harmonic, r.dim_lambda3_0, r.dim_total), (16, 8, 0, 24));
    let r = verify_theorem43(&construct_su(1, 1).unwrap()).unwrap();
    assert_eq!((r.dim_total, r.dim_lambda3_0), (24, 0));
    for (g, dims) in [
        (construct_sl(2).unwrap(), (20, 4, 0, 24)),
        (construct_so(3, 0).unwrap(), (42, 34, 14, 90)),
        (construct_so_star(2).unwrap(), (80, 96, 48, 224)),
    ] {
        let r = verify_theorem43(&g).unwrap();
        assert_eq!((r.dim_spencer_image, r.dim_harmonic, r.dim_lambda3_0, r.dim_total), dims, "{}", g.label());
    }
}

#[test]
fn normalize_round_trips() {
    let g = construct_so(3, 0).unwrap();
    let nz = Normalizer::new(TorsionContext::new(&g).unwrap());
    let ctx = nz.context().clone();
    let mut rng = Lcg::new(11);
    for _ in 0..20 {
        let psi = rng.vector(ctx.lam_dim(), 4);
        let d = nz.normalize(&psi).unwrap();
        // idempotence on the reassembled pieces
        let again = nz.normalize(&ctx.spencer.apply(&d.phi).add(&d.psi2).add(&d.psi3)).unwrap();
        assert_eq!(again, d);
    }
    // harmonic input is already normal
    for h in ctx.harmonic.basis() {
        let d = nz.normalize(h).unwrap();
        assert!(d.phi.is_zero() && d.psi3.is_zero());
        assert_eq!(&d.psi2, h);
    }
    let phi0 = rng.vector(ctx.spencer.ncols(), 3);
    let d = nz.normalize(&ctx.spencer.apply(&phi0)).unwrap();
    assert_eq!(d.phi, phi0);
    assert!(d.psi2.is_zero() && d.psi3.is_zero());
}

#[test]
fn type_structures() {
    for g in [construct_su(1, 1).unwrap(), construct_sl(2).unwrap(), construct_so(3, 0).unwrap()] {
        let r = harmonic_type_check(&g).unwrap();
        assert!(r.verdict, "{r:?}");
    }
    let so = harmonic_type_check(&construct_so(3, 0).unwrap()).unwrap();
    let dims: Vec<usize> = so.components.iter().map(|c| c.dim_in_harmonic).collect();
    assert_eq!(dims, vec![14, 20]);
    assert!(harmonic_type_check(&construct_split(Family::SplitG2).unwrap()).is_err());
}
