//! Graded free modules, degree-preserving matrices between them, and
//! finitely presented modules (cokernels of homogeneous matrices).

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::DMat;
use crate::monomial::Monomial;
use crate::poly::RingElem;
use crate::ring::GradedRing;
use crate::scalar::Scalar;

/// Dense exponent vector used as a multidegree.
pub type ExpVec = Vec<u8>;

pub(crate) fn expvec_sub(a: &[u8], b: &[u8], out: &mut Vec<u8>) -> bool {
    out.clear();
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        out.push(x - y);
    }
    true
}

/// `⊕_i R(-a_i)`: the degree-d piece of the i-th summand is `R_{d - a_i}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedFreeModule {
    shifts: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(shifts: Vec<i64>) -> Self {
        GradedFreeModule { shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn dim_at(&self, ring: &GradedRing, d: i64) -> usize {
        self.shifts.iter().map(|&a| ring.dim(d - a)).sum()
    }

    /// Degree-d basis, summand-major, monomials in descending canonical
    /// order within each summand.
    pub fn basis_at(&self, ring: &GradedRing, d: i64) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (i, &a) in self.shifts.iter().enumerate() {
            let e = d - a;
            if e < 0 {
                continue;
            }
            for m in ring.standard_basis(e as u32) {
                out.push((i, m));
            }
        }
        out
    }
}

/// Multigraded shift metadata: one exponent vector per summand. Present on
/// matrices whose entries are multihomogeneous, which unlocks the
/// class-decomposed kernel engine.
#[derive(Clone, Debug)]
pub struct MultiShifts {
    pub source: Vec<ExpVec>,
    pub target: Vec<ExpVec>,
}

/// A degree-preserving map of graded free modules. `entries[r][c]` is
/// homogeneous of degree `shift_src[c] - shift_tgt[r]` (or zero); columns
/// describe the images of the source generators.
#[derive(Clone, Debug)]
pub struct HomMatrix {
    source: GradedFreeModule,
    target: GradedFreeModule,
    entries: Vec<Vec<RingElem>>,
    multi: Option<MultiShifts>,
}

impl HomMatrix {
    pub fn new(
        ring: &GradedRing,
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<RingElem>>,
    ) -> Result<Self> {
        if entries.len() != target.rank() || entries.iter().any(|row| row.len() != source.rank()) {
            return Err(Error::Shape(format!(
                "entry array must be {} x {}",
                target.rank(),
                source.rank()
            )));
        }
        // re-normalize so every entry is supported on standard monomials
        let entries: Vec<Vec<RingElem>> = entries
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| RingElem::from_terms(ring, e.terms().to_vec()))
                    .collect()
            })
            .collect();
        for (r, row) in entries.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let expected = source.shifts()[c] - target.shifts()[r];
                match e.homogeneous_degree() {
                    Some(d) if d == expected => {}
                    _ => {
                        return Err(Error::NonHomogeneous {
                            row: r,
                            col: c,
                            expected,
                        })
                    }
                }
            }
        }
        Ok(HomMatrix {
            source,
            target,
            entries,
            multi: None,
        })
    }

    /// Attaches multigraded shifts; every nonzero entry must be a single
    /// term whose monomial exponent vector equals the shift difference.
    pub fn with_multishifts(
        ring: &GradedRing,
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<RingElem>>,
        multi: MultiShifts,
    ) -> Result<Self> {
        let mut m = HomMatrix::new(ring, source, target, entries)?;
        let n = ring.num_vars();
        if multi.source.len() != m.source.rank()
            || multi.target.len() != m.target.rank()
            || multi.source.iter().any(|v| v.len() != n)
            || multi.target.iter().any(|v| v.len() != n)
        {
            return Err(Error::Shape("multishift arity mismatch".into()));
        }
        let mut diff = Vec::new();
        for (c, ms) in multi.source.iter().enumerate() {
            let deg: i64 = ms.iter().map(|&e| e as i64).sum();
            if deg != m.source.shifts()[c] {
                return Err(Error::Shape("multishift degree mismatch".into()));
            }
            for (r, mt) in multi.target.iter().enumerate() {
                let e = &m.entries[r][c];
                if e.is_zero() {
                    continue;
                }
                if e.terms().len() != 1 || !expvec_sub(ms, mt, &mut diff) {
                    return Err(Error::Shape("entry not multihomogeneous".into()));
                }
                if e.terms()[0].0.to_dense(n) != diff {
                    return Err(Error::Shape("entry not multihomogeneous".into()));
                }
            }
        }
        for (r, mt) in multi.target.iter().enumerate() {
            let deg: i64 = mt.iter().map(|&e| e as i64).sum();
            if deg != m.target.shifts()[r] {
                return Err(Error::Shape("multishift degree mismatch".into()));
            }
        }
        m.multi = Some(multi);
        Ok(m)
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn entries(&self) -> &Vec<Vec<RingElem>> {
        &self.entries
    }

    pub fn entry(&self, r: usize, c: usize) -> &RingElem {
        &self.entries[r][c]
    }

    pub fn multishifts(&self) -> Option<&MultiShifts> {
        self.multi.as_ref()
    }

    pub fn is_multigraded(&self) -> bool {
        self.multi.is_some()
    }

    /// Image of a source element (one [`RingElem`] per source summand).
    pub fn apply_elem(&self, ring: &GradedRing, v: &[Scalar], d: i64) -> Vec<RingElem> {
        // v is a coordinate vector over basis_at(source, d)
        let basis = self.source.basis_at(ring, d);
        assert_eq!(v.len(), basis.len());
        let field = ring.field();
        let mut out = vec![RingElem::zero(); self.target.rank()];
        for (coord, (c, m)) in v.iter().zip(&basis) {
            if field.is_zero(coord) {
                continue;
            }
            for r in 0..self.target.rank() {
                let e = &self.entries[r][*c];
                if e.is_zero() {
                    continue;
                }
                let img = e.mul_mono(ring, m).scale(ring, coord);
                out[r] = out[r].add(ring, &img);
            }
        }
        out
    }

    /// Applies the matrix to a column vector of ring elements (symbolic).
    pub fn apply_columns(&self, ring: &GradedRing, v: &[RingElem]) -> Vec<RingElem> {
        assert_eq!(v.len(), self.source.rank());
        (0..self.target.rank())
            .map(|r| {
                let mut acc = RingElem::zero();
                for (c, coef) in v.iter().enumerate() {
                    if !coef.is_zero() && !self.entries[r][c].is_zero() {
                        acc = acc.add(ring, &self.entries[r][c].mul(ring, coef));
                    }
                }
                acc
            })
            .collect()
    }

    /// The degree-d piece as a dense matrix over the field, rows and columns
    /// indexed by the canonical degree-d bases.
    pub fn matrix_at(&self, ring: &GradedRing, d: i64) -> DMat {
        let src_basis = self.source.basis_at(ring, d);
        let tgt_basis = self.target.basis_at(ring, d);
        let tgt_index: HashMap<(usize, &Monomial), usize> = tgt_basis
            .iter()
            .enumerate()
            .map(|(i, (s, m))| ((*s, m), i))
            .collect();
        let field = ring.field();
        let mut out = DMat::zero(field, tgt_basis.len(), src_basis.len());
        for (col, (c, m)) in src_basis.iter().enumerate() {
            for r in 0..self.target.rank() {
                let e = &self.entries[r][*c];
                for (w, coef) in e.terms() {
                    let p = m.mul(w);
                    if ring.is_standard(&p) {
                        let row = tgt_index[&(r, &p)];
                        out.add_to(row, col, coef);
                    }
                }
            }
        }
        out
    }

    /// Kernel dimension of the degree-d piece (dense path).
    pub fn kernel_dim_at(&self, ring: &GradedRing, d: i64) -> usize {
        let m = self.matrix_at(ring, d);
        m.cols - m.rank()
    }

    /// Rank of the degree-d piece (dense path).
    pub fn rank_at(&self, ring: &GradedRing, d: i64) -> usize {
        self.matrix_at(ring, d).rank()
    }
}

/// How a finitely presented module was constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// The ideal `(u) ≅ R(-deg u)/Ann(u)`.
    Ideal(Monomial),
    /// The cyclic quotient `R/(u)`.
    Quotient(Monomial),
    /// Explicit presentation matrix.
    Explicit,
    /// Syzygy module of another module.
    SyzygyOf(String),
    /// Block direct sum.
    DirectSum,
}

/// A finitely presented graded module: the cokernel of `∂₁: F₁ → F₀`.
#[derive(Clone, Debug)]
pub struct FPModule {
    ring: Arc<GradedRing>,
    presentation: HomMatrix,
    provenance: Provenance,
}

impl FPModule {
    pub fn new(ring: Arc<GradedRing>, presentation: HomMatrix, provenance: Provenance) -> Self {
        FPModule {
            ring,
            presentation,
            provenance,
        }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn presentation(&self) -> &HomMatrix {
        &self.presentation
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Dimension of the degree-d piece of the cokernel.
    pub fn dim_at(&self, d: i64) -> usize {
        let f0 = self.presentation.target().dim_at(&self.ring, d);
        f0 - self.presentation.rank_at(&self.ring, d)
    }

    /// Dimensions of degrees `0..=cap`.
    pub fn graded_dims(&self, cap: i64) -> Vec<usize> {
        (0..=cap).map(|d| self.dim_at(d)).collect()
    }

    /// Block direct sum of two modules over the same ring.
    pub fn direct_sum(a: &FPModule, b: &FPModule) -> Result<FPModule> {
        if !Arc::ptr_eq(&a.ring, &b.ring) {
            return Err(Error::ModuleMismatch(
                "direct sum requires a shared ring".into(),
            ));
        }
        let ring = &a.ring;
        let pa = &a.presentation;
        let pb = &b.presentation;
        let source = GradedFreeModule::new(
            pa.source()
                .shifts()
                .iter()
                .chain(pb.source().shifts())
                .copied()
                .collect(),
        );
        let target = GradedFreeModule::new(
            pa.target()
                .shifts()
                .iter()
                .chain(pb.target().shifts())
                .copied()
                .collect(),
        );
        let (ra, ca) = (pa.target().rank(), pa.source().rank());
        let (rb, cb) = (pb.target().rank(), pb.source().rank());
        let mut entries = vec![vec![RingElem::zero(); ca + cb]; ra + rb];
        for r in 0..ra {
            for c in 0..ca {
                entries[r][c] = pa.entry(r, c).clone();
            }
        }
        for r in 0..rb {
            for c in 0..cb {
                entries[ra + r][ca + c] = pb.entry(r, c).clone();
            }
        }
        let matrix = match (pa.multishifts(), pb.multishifts()) {
            (Some(ma), Some(mb)) => HomMatrix::with_multishifts(
                ring,
                source,
                target,
                entries,
                MultiShifts {
                    source: ma.source.iter().chain(&mb.source).cloned().collect(),
                    target: ma.target.iter().chain(&mb.target).cloned().collect(),
                },
            )?,
            _ => HomMatrix::new(ring, source, target, entries)?,
        };
        Ok(FPModule::new(ring.clone(), matrix, Provenance::DirectSum))
    }
}

/// Divisibility-minimal monomial generators of `Ann_R(u) = { v : uv ∈ I }`,
/// computed exactly as the minimalized set `{ r / gcd(r, u) }` over the
/// relations `r`, discarding non-standard candidates.
pub fn ann_gens(ring: &GradedRing, u: &Monomial) -> Result<Vec<Monomial>> {
    if !ring.is_standard(u) {
        return Err(Error::NonStandard(ring.fmt_monomial(u)));
    }
    let candidates: Vec<Monomial> = ring
        .relations()
        .iter()
        .map(|r| r.div(&r.gcd(u)).expect("gcd divides"))
        .filter(|v| ring.is_standard(v))
        .collect();
    Ok(crate::ring::minimalize(candidates))
}

/// Construction recipes for [`make_module`].
#[derive(Clone, Debug)]
pub enum ModuleSpec {
    Ideal(Monomial),
    Quotient(Monomial),
    Matrix(HomMatrix),
}

/// Builds the presentation of an ideal `(u)`, a cyclic quotient `R/(u)`, or
/// an explicit cokernel.
pub fn make_module(ring: Arc<GradedRing>, spec: ModuleSpec) -> Result<FPModule> {
    let n = ring.num_vars();
    match spec {
        ModuleSpec::Ideal(u) => {
            let anns = ann_gens(&ring, &u)?;
            let du = u.degree() as i64;
            let target = GradedFreeModule::new(vec![du]);
            let source =
                GradedFreeModule::new(anns.iter().map(|a| du + a.degree() as i64).collect());
            let entries = vec![anns
                .iter()
                .map(|a| RingElem::monomial(&ring, a.clone()))
                .collect()];
            let multi = MultiShifts {
                source: anns.iter().map(|a| u.mul(a).to_dense(n)).collect(),
                target: vec![u.to_dense(n)],
            };
            let m = HomMatrix::with_multishifts(&ring, source, target, entries, multi)?;
            Ok(FPModule::new(ring, m, Provenance::Ideal(u)))
        }
        ModuleSpec::Quotient(u) => {
            if !ring.is_standard(&u) {
                return Err(Error::NonStandard(ring.fmt_monomial(&u)));
            }
            let target = GradedFreeModule::new(vec![0]);
            let source = GradedFreeModule::new(vec![u.degree() as i64]);
            let entries = vec![vec![RingElem::monomial(&ring, u.clone())]];
            let multi = MultiShifts {
                source: vec![u.to_dense(n)],
                target: vec![vec![0u8; n]],
            };
            let m = HomMatrix::with_multishifts(&ring, source, target, entries, multi)?;
            Ok(FPModule::new(ring, m, Provenance::Quotient(u)))
        }
        ModuleSpec::Matrix(m) => Ok(FPModule::new(ring, m, Provenance::Explicit)),
    }
}

/// A rank-r free module `⊕ R(-a_i)` presented with no relations.
pub fn free_module(ring: Arc<GradedRing>, shifts: Vec<i64>) -> FPModule {
    let n = ring.num_vars();
    let rank = shifts.len();
    let target = GradedFreeModule::new(shifts.clone());
    let source = GradedFreeModule::new(vec![]);
    let entries = vec![vec![]; rank];
    let taggable = n > 0 && shifts.iter().all(|&a| (0..=u8::MAX as i64).contains(&a));
    let m = if taggable {
        let multi = MultiShifts {
            source: vec![],
            target: shifts
                .iter()
                .map(|&a| {
                    let mut v = vec![0u8; n];
                    v[0] = a as u8; // grading tag only; never used as a ring element
                    v
                })
                .collect(),
        };
        HomMatrix::with_multishifts(&ring, source, target, entries, multi)
            .expect("free module presentation is always valid")
    } else {
        HomMatrix::new(&ring, source, target, entries)
            .expect("free module presentation is always valid")
    };
    FPModule::new(ring, m, Provenance::Explicit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::RingPattern;
    use crate::scalar::FieldSpec;

    fn sq(level: u32) -> Arc<GradedRing> {
        Arc::new(
            RingPattern::square_zero(FieldSpec::fp(2).unwrap())
                .truncate(level)
                .unwrap(),
        )
    }

    fn chain(level: u32) -> Arc<GradedRing> {
        Arc::new(
            RingPattern::chain(FieldSpec::fp(2).unwrap())
                .truncate(level)
                .unwrap(),
        )
    }

    fn mono(ring: &GradedRing, s: &str) -> Monomial {
        ring.parse_monomial(s).unwrap()
    }

    fn names(ring: &GradedRing, ms: &[Monomial]) -> Vec<String> {
        ms.iter().map(|m| ring.fmt_monomial(m)).collect()
    }

    #[test]
    fn ann_gens_square_zero() {
        let r = sq(3);
        let a = ann_gens(&r, &mono(&r, "x1")).unwrap();
        assert_eq!(names(&r, &a), vec!["x1", "x2", "x3"]);
    }

    #[test]
    fn ann_gens_chain() {
        let r = chain(3);
        let a = ann_gens(&r, &mono(&r, "x1")).unwrap();
        assert_eq!(names(&r, &a), vec!["x2", "y1"]);
        let a = ann_gens(&r, &mono(&r, "y1")).unwrap();
        assert_eq!(names(&r, &a), vec!["x1", "y1", "y2", "y3"]);
        let a = ann_gens(&r, &mono(&r, "x2")).unwrap();
        assert_eq!(names(&r, &a), vec!["x1", "x3"]);
    }

    #[test]
    fn ann_of_unit_is_empty() {
        let r = sq(3);
        assert!(ann_gens(&r, &Monomial::one()).unwrap().is_empty());
    }

    #[test]
    fn ann_rejects_nonstandard() {
        let r = sq(3);
        let m = mono(&r, "x1").mul(&mono(&r, "x2"));
        assert!(matches!(ann_gens(&r, &m), Err(Error::NonStandard(_))));
    }

    #[test]
    fn ann_gens_generate_the_annihilator() {
        // v in Ann(u) iff v is a multiple of some generator, checked
        // exhaustively for standard v of degree <= 3
        for ring in [sq(2), chain(2)] {
            for u in [mono(&ring, "x1"), mono(&ring, "x2"), Monomial::one()] {
                if !ring.is_standard(&u) {
                    continue;
                }
                let gens = ann_gens(&ring, &u).unwrap();
                for d in 1..=3u32 {
                    for v in ring.standard_basis(d) {
                        let in_ann = !ring.is_standard(&u.mul(&v));
                        let covered = gens.iter().any(|g| g.divides(&v));
                        assert_eq!(in_ann, covered, "u={:?} v={:?}", u, v);
                    }
                }
            }
        }
    }

    #[test]
    fn ideal_module_presentation() {
        let r = sq(3);
        let m = make_module(r.clone(), ModuleSpec::Ideal(mono(&r, "x1"))).unwrap();
        assert_eq!(m.presentation().target().shifts(), &[1]);
        assert_eq!(m.presentation().source().shifts(), &[2, 2, 2]);
        assert!(m.presentation().is_multigraded());
        // (x1) has dims [0, 1, 0, ...]
        assert_eq!(m.graded_dims(3), vec![0, 1, 0, 0]);
    }

    #[test]
    fn quotient_module_dims() {
        let r = sq(3);
        let m = make_module(r.clone(), ModuleSpec::Quotient(mono(&r, "x1"))).unwrap();
        assert_eq!(m.graded_dims(3), vec![1, 2, 0, 0]);
    }

    #[test]
    fn ideal_of_unit_is_free() {
        let r = sq(3);
        let m = make_module(r.clone(), ModuleSpec::Ideal(Monomial::one())).unwrap();
        assert_eq!(m.presentation().source().rank(), 0);
        assert_eq!(m.graded_dims(2), vec![1, 3, 0]);
    }

    #[test]
    fn ideal_y1_dims_chain() {
        let r = chain(3);
        let m = make_module(r.clone(), ModuleSpec::Ideal(mono(&r, "y1"))).unwrap();
        // y1*R_1 = {x2*y1, x3*y1}; y1*R_2 = {x2^2, x3^2}-multiples
        assert_eq!(m.graded_dims(3), vec![0, 1, 2, 2]);
    }

    #[test]
    fn free_module_dims() {
        let r = sq(3);
        let f = free_module(r.clone(), vec![0]);
        assert_eq!(f.graded_dims(1), vec![1, 3]);
        assert_eq!(f.dim_at(0), 1);
    }

    #[test]
    fn hom_matrix_rejects_inhomogeneous_entries() {
        let r = sq(3);
        let src = GradedFreeModule::new(vec![1]);
        let tgt = GradedFreeModule::new(vec![0]);
        let bad = RingElem::parse(&r, "x1+1").unwrap();
        assert!(matches!(
            HomMatrix::new(&r, src, tgt, vec![vec![bad]]),
            Err(Error::NonHomogeneous { .. })
        ));
    }

    #[test]
    fn direct_sum_dims_add() {
        let r = sq(3);
        let a = make_module(r.clone(), ModuleSpec::Ideal(mono(&r, "x1"))).unwrap();
        let b = make_module(r.clone(), ModuleSpec::Quotient(mono(&r, "x2"))).unwrap();
        let s = FPModule::direct_sum(&a, &b).unwrap();
        for d in 0..=3 {
            assert_eq!(s.dim_at(d), a.dim_at(d) + b.dim_at(d));
        }
        assert!(s.presentation().is_multigraded());
    }

    #[test]
    fn rank_nullity_per_degree() {
        let r = chain(3);
        let m = make_module(r.clone(), ModuleSpec::Ideal(mono(&r, "x1"))).unwrap();
        let phi = m.presentation();
        for d in 0..=5 {
            let mat = phi.matrix_at(&r, d);
            assert_eq!(mat.rank() + mat.kernel_basis().len(), mat.cols);
            assert_eq!(mat.cols, phi.source().dim_at(&r, d));
            assert_eq!(mat.rows, phi.target().dim_at(&r, d));
        }
    }
}
