use num_traits::Zero;
use rayon::prelude::*;

use super::algebra::GradedLieAlgebra;
use super::LieError;
use crate::linalg::subspace::kernel;
use crate::linalg::vector::linear_combination;
use crate::linalg::{Matrix, Scalar, SparseVec, Subspace};

/// Outcome of checking the contact grading axioms.
#[derive(Clone, Debug)]
pub struct ContactCertificate {
    pub component_dims: [usize; 5],
    /// Bracket form `b` on `g_{-1}`: `[X, Y] = b(X, Y) e_0`.
    pub bracket_form: Matrix,
    pub bracket_form_det: Scalar,
    /// Every `ad_A`, `A ∈ g_0`, satisfies `b(AX, Y) + b(X, AY) = λ_A b(X, Y)`.
    pub csp_check: bool,
    /// `λ_A` for the basis of `g_0`, equal to the eigenvalue of `ad_A` on `g_{-2}`.
    pub lambdas: Vec<Scalar>,
    pub faithful: bool,
    /// All structure constants are integers.
    pub integral: bool,
    /// The stored involution is an involutive automorphism with positive definite form.
    pub cartan_involution: bool,
}

fn fail(axiom: &str, witness: Vec<usize>) -> LieError {
    LieError::Certification { axiom: axiom.to_string(), witness }
}

/// Flattened `Mᵀ b + b M` for `M = ad_A` on `g_{-1}`.
fn sp_defect(g: &GradedLieAlgebra, b: &Matrix, a: usize) -> Result<Matrix, LieError> {
    let m = g.ad_block(&SparseVec::unit(a), -1, -1);
    Ok(m.transpose().mul(b)?.add(&b.mul(&m)?)?)
}

/// Verifies antisymmetry, grading, the Jacobi identity, the contact axioms,
/// the conformally symplectic action of `g_0`, faithfulness, and the Cartan
/// involution. The first failing axiom is reported with witness indices.
pub fn certify_contact(g: &GradedLieAlgebra) -> Result<ContactCertificate, LieError> {
    let dim = g.dim();
    for i in 0..dim {
        if !g.bracket(i, i).is_zero() {
            return Err(fail("antisymmetry", vec![i, i]));
        }
        for j in i + 1..dim {
            if *g.bracket(i, j) != g.bracket(j, i).neg() {
                return Err(fail("antisymmetry", vec![i, j]));
            }
            let d = g.degree(i) + g.degree(j);
            for (k, _) in g.bracket(i, j).iter() {
                if k >= dim || g.degree(k) != d {
                    return Err(fail("grading", vec![i, j, k]));
                }
            }
        }
    }
    let jacobi = (0..dim).into_par_iter().find_map_first(|i| {
        for j in i + 1..dim {
            let ij = g.bracket(i, j);
            for k in j + 1..dim {
                if (g.degree(i) + g.degree(j) + g.degree(k)).abs() > 2 {
                    continue;
                }
                let t1 = linear_combination(ij.iter().map(|(l, c)| (c, g.bracket(l, k))));
                let t2 = linear_combination(g.bracket(j, k).iter().map(|(l, c)| (c, g.bracket(l, i))));
                let t3 = linear_combination(g.bracket(k, i).iter().map(|(l, c)| (c, g.bracket(l, j))));
                if !t1.add(&t2).add(&t3).is_zero() {
                    return Some(vec![i, j, k]);
                }
            }
        }
        None
    });
    if let Some(w) = jacobi {
        return Err(fail("jacobi", w));
    }
    let dims = g.component_dims();
    if dims.iter().sum::<usize>() != dim {
        return Err(fail("grading", vec![]));
    }
    if dims[0] != 1 || dims[4] != 1 {
        return Err(fail("one-dimensional g_-2 and g_2", vec![]));
    }
    if dims[1] != dims[3] || dims[1] == 0 || !dims[1].is_multiple_of(2) {
        return Err(fail("dim g_1 = dim g_-1", vec![]));
    }
    let b = g.bracket_form();
    if b.transpose() != b.scale(&-Scalar::from_integer(1.into())) {
        return Err(fail("bracket form skew", vec![]));
    }
    let det = b.det()?;
    if det.is_zero() {
        return Err(fail("bracket form nondegenerate", vec![]));
    }
    let mut lambdas = Vec::new();
    for a in g.range(0) {
        let lambda = g.bracket(a, 0).get(0);
        let defect = sp_defect(g, &b, a)?;
        if defect != b.scale(&lambda) {
            return Err(fail("g_0 acts conformally symplectically", vec![a]));
        }
        lambdas.push(lambda);
    }
    let actions: Vec<SparseVec> = g
        .range(0)
        .map(|a| g.ad_block(&SparseVec::unit(a), -1, -1).flatten())
        .collect();
    let faithful = Matrix::from_rows(dims[1] * dims[1], actions).rank() == dims[2];
    if !faithful {
        return Err(fail("faithful action of g_0 on g_-1", vec![]));
    }
    let integral = g.table().iter().all(|v| v.iter().all(|(_, x)| x.is_integer()));
    let theta = g.theta();
    if theta.mul(theta)? != Matrix::identity(dim) {
        return Err(fail("involution squares to one", vec![]));
    }
    let tcols = theta.columns();
    let auto = (0..dim).into_par_iter().find_map_first(|i| {
        for j in i + 1..dim {
            let lhs = theta.apply(g.bracket(i, j));
            if lhs != g.bracket_vec(&tcols[i], &tcols[j]) {
                return Some(vec![i, j]);
            }
        }
        None
    });
    if let Some(w) = auto {
        return Err(fail("involution is an automorphism", w));
    }
    if !g.gram().is_positive_definite() {
        return Err(fail("positive definite admissible form", vec![]));
    }
    Ok(ContactCertificate {
        component_dims: dims,
        bracket_form: b,
        bracket_form_det: det,
        csp_check: true,
        lambdas,
        faithful,
        integral,
        cartan_involution: true,
    })
}

/// `g_0^0 = g_0 ∩ sp(g_{-1}, b)`, computed both as the elements acting
/// trivially on `g_{±2}` and as the kernel of `A ↦ Aᵀb + bA`. The two must agree.
/// Returned as a subspace of the whole algebra.
pub fn special_subalgebra(g: &GradedLieAlgebra) -> Result<Subspace, LieError> {
    let r0 = g.range(0);
    let top = g.psi_index();
    let embed = |s: &Subspace| -> Result<Subspace, LieError> {
        let v: Vec<SparseVec> = s.basis().iter().map(|x| x.shifted(r0.start)).collect();
        Ok(Subspace::span(g.dim(), &v)?)
    };
    // acting trivially on g_{-2} and g_2
    let cols: Vec<SparseVec> = r0
        .clone()
        .map(|a| {
            SparseVec::from_pairs(vec![(0, g.bracket(a, 0).get(0)), (1, g.bracket(a, top).get(top))])
        })
        .collect();
    let trivial = embed(&kernel(&Matrix::from_columns(2, &cols)))?;
    let b = g.bracket_form();
    let n = b.nrows();
    let cols: Vec<SparseVec> = r0.clone().map(|a| sp_defect(g, &b, a).map(|d| d.flatten())).collect::<Result<_, _>>()?;
    let symplectic = embed(&kernel(&Matrix::from_columns(n * n, &cols)))?;
    if trivial != symplectic {
        return Err(LieError::Consistency("the two descriptions of g_0^0 disagree".into()));
    }
    Ok(trivial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{construct_sl, construct_split, Family};
    use crate::linalg::scalar::int;

    #[test]
    fn corrupted_constant_is_caught() {
        let g = construct_sl(2).unwrap();
        certify_contact(&g).unwrap();
        // perturb a nonzero constant inside g_0
        let r = g.range(0);
        let (i, j, k, v) = r
            .clone()
            .flat_map(|a| r.clone().map(move |b| (a, b)))
            .find_map(|(a, b)| g.bracket(a, b).leading().map(|(k, v)| (a, b, k, v.clone())))
            .unwrap();
        let bad = g.with_constant(i, j, k, v + int(1));
        match certify_contact(&bad) {
            Err(LieError::Certification { axiom, witness }) => {
                assert!(axiom == "jacobi" || axiom == "grading", "{axiom}");
                assert!(!witness.is_empty());
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn g2_certifies() {
        let g = construct_split(Family::SplitG2).unwrap();
        let c = certify_contact(&g).unwrap();
        assert_eq!(c.bracket_form.nrows(), 4);
        assert!(!c.bracket_form_det.is_zero());
        assert_eq!(special_subalgebra(&g).unwrap().dim(), 3);
    }
}
