//! Dense exact linear algebra over a [`FieldSpec`]: reduced row echelon
//! form, kernel bases with deterministic representatives, and an
//! incremental-span structure used for graded Nakayama quotients.

use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug)]
pub struct DMat {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl DMat {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        DMat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        DMat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        DMat::from_fn(field, n, n, |r, c| {
            if r == c {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        let f = self.field;
        let cur = self.at(r, c).clone();
        self.set(r, c, f.add(&cur, v));
    }

    pub fn transpose(&self) -> DMat {
        DMat::from_fn(self.field, self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn mul(&self, other: &DMat) -> DMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = self.field;
        DMat::from_fn(self.field, self.rows, other.cols, |r, c| {
            let mut acc = f.zero();
            for k in 0..self.cols {
                let p = f.mul(self.at(r, k), other.at(k, c));
                acc = f.add(&acc, &p);
            }
            acc
        })
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for c in 0..self.cols {
                    if !f.is_zero(&v[c]) {
                        acc = f.add(&acc, &f.mul(self.at(r, c), &v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns in
    /// ascending order. Pivot selection is deterministic (first nonzero row
    /// scanning top to bottom, columns left to right).
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for pc in 0..self.cols {
            let Some(row) = (pr..self.rows).find(|&r| !f.is_zero(self.at(r, pc))) else {
                continue;
            };
            if row != pr {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, pr * self.cols + c);
                }
            }
            let inv = f.inv(self.at(pr, pc));
            for c in pc..self.cols {
                let v = f.mul(self.at(pr, c), &inv);
                self.set(pr, c, v);
            }
            for r in 0..self.rows {
                if r != pr && !f.is_zero(self.at(r, pc)) {
                    let factor = self.at(r, pc).clone();
                    for c in pc..self.cols {
                        let delta = f.mul(&factor, self.at(pr, c));
                        let v = f.sub(self.at(r, c), &delta);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
            if pr == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel, one vector per free column in ascending
    /// column order: deterministic representatives from the RREF.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in 0..self.cols {
            if pivot_set.contains_key(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (&pc, &pr) in &pivot_set {
                v[pc] = f.neg(m.at(pr, free));
            }
            basis.push(v);
        }
        basis
    }
}

/// Incremental row-echelon span with exact arithmetic. Rows are kept
/// forward-reduced with normalized pivots, ordered by pivot column.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: FieldSpec,
    pub ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut Vec<Scalar>) -> Option<usize> {
        let f = self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[p]) {
                let factor = v[p].clone();
                for c in p..self.ambient {
                    if !f.is_zero(&row[c]) {
                        let delta = f.mul(&factor, &row[c]);
                        v[c] = f.sub(&v[c], &delta);
                    }
                }
            }
        }
        v.iter().position(|x| !f.is_zero(x))
    }

    /// Adds a vector to the span. Returns true when it was independent.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.field;
        let Some(p) = self.reduce(&mut v) else {
            return false;
        };
        let inv = f.inv(&v[p]);
        for c in p..self.ambient {
            v[c] = f.mul(&v[c], &inv);
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, v);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::fp(2).unwrap()
    }

    fn mat(field: FieldSpec, rows: &[&[i64]]) -> DMat {
        DMat::from_fn(field, rows.len(), rows[0].len(), |r, c| {
            field.from_int(rows[r][c])
        })
    }

    #[test]
    fn rref_and_rank() {
        let m = mat(f2(), &[&[1, 1, 0], &[1, 1, 1], &[0, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let q = FieldSpec::Q;
        let m = mat(q, &[&[2, 4], &[1, 2]]);
        assert_eq!(m.rank(), 1);
        let m = mat(q, &[&[1, 2], &[3, 4]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_vectors_are_in_kernel() {
        let q = FieldSpec::Q;
        let m = mat(q, &[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(|x| q.is_zero(x)));
        }
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        let f = f2();
        let z = DMat::zero(f, 0, 3);
        assert_eq!(z.kernel_basis().len(), 3);
        let i = DMat::identity(f, 3);
        assert!(i.kernel_basis().is_empty());
    }

    #[test]
    fn subspace_insert_and_membership() {
        let q = FieldSpec::Q;
        let mut s = Subspace::new(q, 3);
        let v = |a: i64, b: i64, c: i64| vec![q.from_int(a), q.from_int(b), q.from_int(c)];
        assert!(s.insert(v(1, 2, 3)));
        assert!(s.insert(v(0, 1, 1)));
        assert!(!s.insert(v(1, 3, 4)));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(2, 5, 7)));
        assert!(!s.contains(&v(0, 0, 1)));
    }

    #[test]
    fn rank_nullity() {
        let f = f2();
        let m = mat(f, &[&[1, 0, 1, 1], &[0, 1, 1, 0], &[1, 1, 0, 1]]);
        assert_eq!(m.rank() + m.kernel_basis().len(), m.cols);
    }
}
