//! JSON documents for algebras. Rationals are written as strings `p` or `p/q`.

use serde::{Deserialize, Serialize};

use super::algebra::{GradedLieAlgebra, Metadata};
use super::{Family, LieError};
use crate::linalg::scalar::{parse, to_string};
use crate::linalg::{Matrix, SparseVec};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl SparseMatrixDoc {
    pub fn from_matrix(m: &Matrix) -> Self {
        let entries = m
            .rows()
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, x)| (r, c, to_string(x))))
            .collect();
        Self { rows: m.nrows(), cols: m.ncols(), entries }
    }

    pub fn to_matrix(&self) -> Result<Matrix, LieError> {
        let mut rows: Vec<Vec<(usize, crate::linalg::Scalar)>> = vec![Vec::new(); self.rows];
        for (r, c, s) in &self.entries {
            if *r >= self.rows || *c >= self.cols {
                return Err(LieError::Document(format!("matrix entry ({r}, {c}) out of range")));
            }
            rows[*r].push((*c, parse(s)?));
        }
        Ok(Matrix::from_rows(self.cols, rows.into_iter().map(SparseVec::from_pairs).collect()))
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MetadataDoc {
    None,
    Split { e: Vec<usize>, f: Vec<usize> },
    Complex { j: SparseMatrixDoc },
    Tensor { n: usize, signs: Vec<i64> },
    Quaternionic { i: SparseMatrixDoc, j: SparseMatrixDoc, k: SparseMatrixDoc },
    Chevalley { cartan: Vec<Vec<i64>>, roots: Vec<Vec<i64>> },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDoc {
    pub family: Family,
    pub params: Vec<usize>,
    pub dim: usize,
    pub degrees: Vec<i8>,
    /// `(i, j, k, c)` with `i < j`: the coefficient of `e_k` in `[e_i, e_j]`.
    pub structure_constants: Vec<(usize, usize, usize, String)>,
    pub cartan_involution: SparseMatrixDoc,
    pub metadata: MetadataDoc,
}

pub fn to_doc(g: &GradedLieAlgebra) -> AlgebraDoc {
    let dim = g.dim();
    let mut sc = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for (k, x) in g.bracket(i, j).iter() {
                sc.push((i, j, k, to_string(x)));
            }
        }
    }
    let metadata = match g.metadata() {
        Metadata::None => MetadataDoc::None,
        Metadata::Split { e, f } => MetadataDoc::Split { e: e.clone(), f: f.clone() },
        Metadata::Complex { j } => MetadataDoc::Complex { j: SparseMatrixDoc::from_matrix(j) },
        Metadata::Tensor { n, signs } => MetadataDoc::Tensor { n: *n, signs: signs.clone() },
        Metadata::Quaternionic { i, j, k } => MetadataDoc::Quaternionic {
            i: SparseMatrixDoc::from_matrix(i),
            j: SparseMatrixDoc::from_matrix(j),
            k: SparseMatrixDoc::from_matrix(k),
        },
        Metadata::Chevalley { cartan, roots } => {
            MetadataDoc::Chevalley { cartan: cartan.clone(), roots: roots.clone() }
        }
    };
    AlgebraDoc {
        family: g.family(),
        params: g.params().to_vec(),
        dim,
        degrees: g.degrees().to_vec(),
        structure_constants: sc,
        cartan_involution: SparseMatrixDoc::from_matrix(g.theta()),
        metadata,
    }
}

pub fn from_doc(d: &AlgebraDoc) -> Result<GradedLieAlgebra, LieError> {
    let dim = d.dim;
    if d.degrees.len() != dim {
        return Err(LieError::Document("degrees length differs from dim".into()));
    }
    let mut pairs: Vec<Vec<(usize, crate::linalg::Scalar)>> = vec![Vec::new(); dim * dim];
    for (i, j, k, s) in &d.structure_constants {
        if *i >= *j || *j >= dim || *k >= dim {
            return Err(LieError::Document(format!("bad structure constant index ({i}, {j}, {k})")));
        }
        let x = parse(s)?;
        pairs[j * dim + i].push((*k, -x.clone()));
        pairs[i * dim + j].push((*k, x));
    }
    let table = pairs.into_iter().map(SparseVec::from_pairs).collect();
    let theta = d.cartan_involution.to_matrix()?;
    if theta.nrows() != dim || theta.ncols() != dim {
        return Err(LieError::Document("involution has the wrong size".into()));
    }
    let metadata = match &d.metadata {
        MetadataDoc::None => Metadata::None,
        MetadataDoc::Split { e, f } => Metadata::Split { e: e.clone(), f: f.clone() },
        MetadataDoc::Complex { j } => Metadata::Complex { j: j.to_matrix()? },
        MetadataDoc::Tensor { n, signs } => Metadata::Tensor { n: *n, signs: signs.clone() },
        MetadataDoc::Quaternionic { i, j, k } => {
            Metadata::Quaternionic { i: i.to_matrix()?, j: j.to_matrix()?, k: k.to_matrix()? }
        }
        MetadataDoc::Chevalley { cartan, roots } => {
            Metadata::Chevalley { cartan: cartan.clone(), roots: roots.clone() }
        }
    };
    Ok(GradedLieAlgebra::from_table(d.family, d.params.clone(), d.degrees.clone(), table, theta, metadata))
}

pub fn export_json(g: &GradedLieAlgebra) -> String {
    serde_json::to_string_pretty(&to_doc(g)).expect("documents serialize")
}

pub fn import_json(s: &str) -> Result<GradedLieAlgebra, LieError> {
    let d: AlgebraDoc = serde_json::from_str(s).map_err(|e| LieError::Document(e.to_string()))?;
    from_doc(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::construct_su;

    #[test]
    fn roundtrip_is_bit_exact() {
        let g = construct_su(1, 1).unwrap();
        let s = export_json(&g);
        let h = import_json(&s).unwrap();
        assert_eq!(g, h);
        assert_eq!(export_json(&h), s);
    }
}
