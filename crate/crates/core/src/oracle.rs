//! Independent brute-force oracles. Nothing here shares reduction code with
//! the main kernel engines: kernel dimensions come from exhaustive vector
//! enumeration over small prime-field pieces, or from a separately written
//! column elimination.

use crate::error::{Error, Result};
use crate::linalg::DMat;
use crate::modules::HomMatrix;
use crate::ring::GradedRing;
use crate::scalar::{FieldSpec, Scalar};

/// Default bound on the degree-piece dimension admissible for exhaustive
/// enumeration.
pub const DEFAULT_ENUM_BOUND: usize = 12;

/// Kernel dimension of the degree-d piece of `matrix`, computed without the
/// main engines. Over `F_p` with source dimension within `bound`, counts the
/// kernel exhaustively; otherwise falls back to an independently coded
/// column elimination.
pub fn kernel_dims_bruteforce(
    ring: &GradedRing,
    matrix: &HomMatrix,
    d: i64,
    bound: usize,
) -> Result<usize> {
    let columns = image_columns(ring, matrix, d);
    match ring.field() {
        FieldSpec::Fp { p } => {
            if columns.len() > bound {
                return Err(Error::EnumBound {
                    dim: columns.len(),
                    bound,
                });
            }
            Ok(exhaustive_kernel_dim(ring.field(), p, &columns))
        }
        FieldSpec::Q => Ok(columns.len() - column_elimination_rank(ring.field(), &columns)),
    }
}

/// Same computation but falling back to the elimination path instead of
/// erroring when the piece is too large to enumerate.
pub fn kernel_dims_elimination(ring: &GradedRing, matrix: &HomMatrix, d: i64) -> usize {
    let columns = image_columns(ring, matrix, d);
    columns.len() - column_elimination_rank(ring.field(), &columns)
}

/// Sparse image of every degree-d source basis element, computed by direct
/// symbolic multiplication (entry by entry, reduced in the ring).
fn image_columns(ring: &GradedRing, matrix: &HomMatrix, d: i64) -> Vec<Vec<(usize, Scalar)>> {
    let src = matrix.source();
    let tgt = matrix.target();
    let mut tgt_index = std::collections::HashMap::new();
    let mut offset = 0usize;
    for (r, &a) in tgt.shifts().iter().enumerate() {
        let e = d - a;
        if e < 0 {
            continue;
        }
        for m in ring.standard_basis(e as u32) {
            tgt_index.insert((r, m), offset);
            offset += 1;
        }
    }
    let mut out = Vec::new();
    for (c, &a) in src.shifts().iter().enumerate() {
        let e = d - a;
        if e < 0 {
            continue;
        }
        for m in ring.standard_basis(e as u32) {
            let mut col: Vec<(usize, Scalar)> = Vec::new();
            for r in 0..tgt.rank() {
                for (w, coef) in matrix.entry(r, c).terms() {
                    let p = m.mul(w);
                    if ring.is_standard(&p) {
                        col.push((tgt_index[&(r, p)], coef.clone()));
                    }
                }
            }
            col.sort_by_key(|&(i, _)| i);
            out.push(col);
        }
    }
    out
}

/// Counts kernel vectors by enumerating all p^n coefficient vectors; the
/// count must be a power of p and the exponent is the kernel dimension.
fn exhaustive_kernel_dim(field: FieldSpec, p: u64, columns: &[Vec<(usize, Scalar)>]) -> usize {
    let n = columns.len();
    let ambient = columns
        .iter()
        .flat_map(|c| c.iter().map(|&(i, _)| i + 1))
        .max()
        .unwrap_or(0);
    let mut digits = vec![0u64; n];
    let mut acc: Vec<Scalar> = vec![field.zero(); ambient];
    let mut zeros = 0u64;
    'outer: loop {
        for slot in acc.iter_mut() {
            *slot = field.zero();
        }
        for (i, &dig) in digits.iter().enumerate() {
            if dig == 0 {
                continue;
            }
            let coef = Scalar::Fp(dig);
            for (row, val) in &columns[i] {
                acc[*row] = field.add(&acc[*row], &field.mul(val, &coef));
            }
        }
        if acc.iter().all(|x| field.is_zero(x)) {
            zeros += 1;
        }
        // odometer
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                continue 'outer;
            }
            *d = 0;
        }
        break;
    }
    let mut dim = 0usize;
    let mut v = zeros;
    while v > 1 {
        assert_eq!(v % p, 0, "kernel count must be a power of p");
        v /= p;
        dim += 1;
    }
    dim
}

/// Column-oriented Gaussian elimination: reduces each column against the
/// established pivots, counting the independent ones. Written separately
/// from the row-reduction in `linalg`.
fn column_elimination_rank(field: FieldSpec, columns: &[Vec<(usize, Scalar)>]) -> usize {
    // pivots: (pivot row, normalized sparse column)
    let mut pivots: Vec<(usize, Vec<(usize, Scalar)>)> = Vec::new();
    for col in columns {
        let mut work = col.clone();
        loop {
            let Some(&(lead, ref lv)) = work.first() else {
                break;
            };
            match pivots.iter().find(|(r, _)| *r == lead) {
                Some((_, pcol)) => {
                    let factor = lv.clone();
                    work = sparse_axpy(field, &work, pcol, &field.neg(&factor));
                }
                None => {
                    let inv = field.inv(lv);
                    let normalized: Vec<(usize, Scalar)> = work
                        .iter()
                        .map(|(i, v)| (*i, field.mul(v, &inv)))
                        .collect();
                    pivots.push((lead, normalized));
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn sparse_axpy(
    field: FieldSpec,
    a: &[(usize, Scalar)],
    b: &[(usize, Scalar)],
    factor: &Scalar,
) -> Vec<(usize, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(ra, ref va)), Some(&(rb, ref vb))) if ra == rb => {
                let v = field.add(va, &field.mul(vb, factor));
                if !field.is_zero(&v) {
                    out.push((ra, v));
                }
                i += 1;
                j += 1;
            }
            (Some(&(ra, ref va)), Some(&(rb, _))) if ra < rb => {
                out.push((ra, va.clone()));
                i += 1;
            }
            (Some(_), Some(&(rb, ref vb))) => {
                let v = field.mul(vb, factor);
                if !field.is_zero(&v) {
                    out.push((rb, v));
                }
                j += 1;
            }
            (Some(&(ra, ref va)), None) => {
                out.push((ra, va.clone()));
                i += 1;
            }
            (None, Some(&(rb, ref vb))) => {
                let v = field.mul(vb, factor);
                if !field.is_zero(&v) {
                    out.push((rb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Homology dimension `dim ker(b) - rank(a)` of a two-step complex of plain
/// linear maps, with both numbers obtained through the oracle elimination
/// (not the main row reduction). `a` maps into the middle space, `b` out of
/// it; either may be `None` at the ends of a complex.
pub fn homology_dim_oracle(field: FieldSpec, a: Option<&DMat>, b: Option<&DMat>, middle_dim: usize) -> usize {
    let rank_a = a.map(|m| column_elimination_rank(field, &dmat_columns(field, m))).unwrap_or(0);
    let ker_b = match b {
        Some(m) => middle_dim - column_elimination_rank(field, &dmat_columns(field, m)),
        None => middle_dim,
    };
    ker_b - rank_a
}

fn dmat_columns(field: FieldSpec, m: &DMat) -> Vec<Vec<(usize, Scalar)>> {
    (0..m.cols)
        .map(|c| {
            (0..m.rows)
                .filter(|&r| !field.is_zero(m.at(r, c)))
                .map(|r| (r, m.at(r, c).clone()))
                .collect()
        })
        .collect()
}

/// A second enumeration-based route for small prime-field matrices, used to
/// cross-check the elimination in tests.
pub fn dmat_kernel_dim_enumeration(field: FieldSpec, m: &DMat, bound: usize) -> Result<usize> {
    let FieldSpec::Fp { p } = field else {
        return Err(Error::Config("enumeration requires a prime field".into()));
    };
    if m.cols > bound {
        return Err(Error::EnumBound {
            dim: m.cols,
            bound,
        });
    }
    Ok(exhaustive_kernel_dim(field, p, &dmat_columns(field, m)))
}
