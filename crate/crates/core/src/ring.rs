//! Monomial quotient rings `R = k[vars] / I` with `I` generated by monomials
//! of degree >= 2. Standard monomials (those divisible by no relation) form a
//! field basis of `R`; every degreewise computation in the crate rests on
//! that fact.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, VarRef};
use crate::scalar::FieldSpec;

pub struct GradedRing {
    field: FieldSpec,
    vars: Vec<VarRef>,
    var_ids: HashMap<VarRef, u32>,
    relations: Vec<Monomial>,
    /// support mask (bit per variable, vars 0..64 only) and the relation's
    /// factors, for fast standardness tests on dense exponent vectors
    rel_dense: Vec<(u64, Vec<(u32, u32)>)>,
    dim_cache: Mutex<Vec<Option<usize>>>,
}

impl std::fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedRing")
            .field("field", &self.field)
            .field("vars", &self.vars.len())
            .field("relations", &self.relations.len())
            .finish()
    }
}

impl GradedRing {
    /// Builds a ring from named variables and relation monomials given in
    /// named form. Variables are put in canonical (family, index) order;
    /// relations are minimalized under divisibility and canonically sorted.
    pub fn new(
        field: FieldSpec,
        mut vars: Vec<VarRef>,
        relations: Vec<Vec<(VarRef, u32)>>,
    ) -> Result<Self> {
        field.validate()?;
        for v in &vars {
            if v.index < 1 {
                return Err(Error::BadIndex(v.index as u64));
            }
        }
        vars.sort();
        vars.dedup();
        let var_ids: HashMap<VarRef, u32> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();
        let mut rels = Vec::with_capacity(relations.len());
        for (i, r) in relations.into_iter().enumerate() {
            let mut factors = Vec::with_capacity(r.len());
            for (v, e) in r {
                let id = *var_ids
                    .get(&v)
                    .ok_or_else(|| Error::UnknownVariable { var: v.to_string() })?;
                factors.push((id, e));
            }
            let m = Monomial::from_factors(factors);
            if m.degree() < 2 {
                return Err(Error::RelationDegree {
                    schema: i,
                    degree: m.degree(),
                });
            }
            rels.push(m);
        }
        Ok(Self::from_parts(field, vars, var_ids, rels))
    }

    /// Internal constructor from already-resolved relation monomials.
    pub(crate) fn from_parts(
        field: FieldSpec,
        vars: Vec<VarRef>,
        var_ids: HashMap<VarRef, u32>,
        relations: Vec<Monomial>,
    ) -> Self {
        let relations = minimalize(relations);
        let rel_dense = relations
            .iter()
            .map(|r| {
                let mut mask = 0u64;
                for &(v, _) in r.factors() {
                    if (v as usize) < 64 {
                        mask |= 1 << v;
                    }
                }
                (mask, r.factors().to_vec())
            })
            .collect();
        GradedRing {
            field,
            vars,
            var_ids,
            relations,
            rel_dense,
            dim_cache: Mutex::new(Vec::new()),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[VarRef] {
        &self.vars
    }

    pub fn var_ref(&self, id: u32) -> &VarRef {
        &self.vars[id as usize]
    }

    pub fn var_id(&self, v: &VarRef) -> Result<u32> {
        self.var_ids
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnknownVariable { var: v.to_string() })
    }

    /// Divisibility-minimal monomial generators of the defining ideal,
    /// canonically sorted.
    pub fn relations(&self) -> &[Monomial] {
        &self.relations
    }

    pub fn max_relation_degree(&self) -> u32 {
        self.relations.iter().map(|r| r.degree()).max().unwrap_or(2)
    }

    /// True when no relation divides `m` (so `m` is nonzero in `R`).
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.relations.iter().any(|r| r.divides(m))
    }

    /// Standardness test on a dense exponent vector, with the caller passing
    /// the support mask of `exp` (bits for variables 0..64).
    #[inline]
    pub fn is_standard_dense(&self, exp: &[u8], mask: u64) -> bool {
        'rel: for (rmask, factors) in &self.rel_dense {
            if rmask & mask != *rmask {
                continue;
            }
            for &(v, e) in factors {
                if (exp[v as usize] as u32) < e {
                    continue 'rel;
                }
            }
            return false;
        }
        true
    }

    #[inline]
    pub fn support_mask(exp: &[u8]) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in exp.iter().enumerate() {
            if e > 0 && i < 64 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Product of two standard monomials reduced in `R`: `None` when the
    /// product hits the ideal.
    pub fn mul_mono(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        let p = a.mul(b);
        if self.is_standard(&p) {
            Some(p)
        } else {
            None
        }
    }

    /// All standard monomials of the given total degree, in descending
    /// canonical (graded-lex) order. Degree 0 yields the unit monomial.
    pub fn standard_basis(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let n = self.num_vars();
        let mut exp = vec![0u8; n];
        self.enumerate_standard(degree, 0, &mut exp, 0, &mut |e| {
            out.push(Monomial::from_dense(e))
        });
        out
    }

    /// Dimension of the degree-`d` piece of `R`.
    pub fn dim(&self, degree: i64) -> usize {
        if degree < 0 {
            return 0;
        }
        let d = degree as usize;
        {
            let cache = self.dim_cache.lock().unwrap();
            if let Some(Some(v)) = cache.get(d) {
                return *v;
            }
        }
        let mut count = 0usize;
        let n = self.num_vars();
        let mut exp = vec![0u8; n];
        self.enumerate_standard(degree as u32, 0, &mut exp, 0, &mut |_| count += 1);
        let mut cache = self.dim_cache.lock().unwrap();
        if cache.len() <= d {
            cache.resize(d + 1, None);
        }
        cache[d] = Some(count);
        count
    }

    /// Streams the dense exponent vectors of all standard monomials of the
    /// given degree, in descending graded-lex order. The callback must not
    /// hold on to the slice.
    pub fn for_each_standard(&self, degree: u32, f: &mut dyn FnMut(&[u8])) {
        let n = self.num_vars();
        let mut exp = vec![0u8; n];
        self.enumerate_standard(degree, 0, &mut exp, 0, &mut |e| f(e));
    }

    fn enumerate_standard(
        &self,
        remaining: u32,
        var: usize,
        exp: &mut Vec<u8>,
        mask: u64,
        f: &mut impl FnMut(&[u8]),
    ) {
        if remaining == 0 {
            f(exp);
            return;
        }
        if var >= self.num_vars() {
            return;
        }
        // highest exponent first gives descending graded-lex output
        let mut e = remaining.min(u8::MAX as u32);
        loop {
            exp[var] = e as u8;
            let m2 = if e > 0 && var < 64 { mask | 1 << var } else { mask };
            // prune: only relations newly made divisible can involve `var`
            if e == 0 || self.divisible_check_through(exp, m2, var) {
                self.enumerate_standard(remaining - e, var + 1, exp, m2, f);
            }
            exp[var] = 0;
            if e == 0 {
                break;
            }
            e -= 1;
        }
    }

    /// True when no relation supported on variables `<= through` divides the
    /// partial exponent vector.
    fn divisible_check_through(&self, exp: &[u8], mask: u64, through: usize) -> bool {
        'rel: for (rmask, factors) in &self.rel_dense {
            if rmask & mask != *rmask {
                continue;
            }
            let max_var = factors.last().map(|&(v, _)| v as usize).unwrap_or(0);
            if max_var > through {
                continue;
            }
            for &(v, e) in factors {
                if (exp[v as usize] as u32) < e {
                    continue 'rel;
                }
            }
            return false;
        }
        true
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut s = String::new();
        for (i, &(v, e)) in m.factors().iter().enumerate() {
            if i > 0 {
                s.push('*');
            }
            let _ = write!(s, "{}", self.var_ref(v));
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }

    /// Parses a monomial in named form, e.g. `x3^2*y1`. `1` is the unit.
    pub fn parse_monomial(&self, s: &str) -> Result<Monomial> {
        let t = s.trim();
        if t == "1" {
            return Ok(Monomial::one());
        }
        let mut factors = Vec::new();
        for part in t.split('*') {
            let part = part.trim();
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => {
                    let exp: u32 = e.trim().parse().map_err(|_| Error::Parse {
                        msg: format!("invalid exponent in `{part}`"),
                        at: 0,
                    })?;
                    (b.trim(), exp)
                }
                None => (part, 1),
            };
            let split = base
                .char_indices()
                .find(|(_, c)| c.is_ascii_digit())
                .map(|(i, _)| i)
                .ok_or_else(|| Error::Parse {
                    msg: format!("variable `{base}` has no index"),
                    at: 0,
                })?;
            let (family, idx) = base.split_at(split);
            let index: u32 = idx.parse().map_err(|_| Error::Parse {
                msg: format!("invalid index in `{base}`"),
                at: 0,
            })?;
            let id = self.var_id(&VarRef::new(family, index))?;
            factors.push((id, exp));
        }
        Ok(Monomial::from_factors(factors))
    }
}

/// Removes monomials divisible by another member of the set; sorts the
/// survivors in descending canonical order.
pub(crate) fn minimalize(mut rels: Vec<Monomial>) -> Vec<Monomial> {
    rels.sort_by(|a, b| a.cmp_grlex(b));
    rels.dedup();
    let mut keep: Vec<Monomial> = Vec::with_capacity(rels.len());
    // ascending degree order guarantees divisors are seen first
    for r in rels {
        if !keep.iter().any(|k| k.divides(&r)) {
            keep.push(r);
        }
    }
    keep.sort_by(|a, b| b.cmp_grlex(a));
    keep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::RingPattern;

    fn sq_zero(level: u32) -> GradedRing {
        RingPattern::square_zero(FieldSpec::fp(2).unwrap())
            .truncate(level)
            .unwrap()
    }

    fn chain(level: u32) -> GradedRing {
        RingPattern::chain(FieldSpec::fp(2).unwrap())
            .truncate(level)
            .unwrap()
    }

    #[test]
    fn square_zero_standard_basis() {
        let r = sq_zero(3);
        let d1: Vec<String> = r.standard_basis(1).iter().map(|m| r.fmt_monomial(m)).collect();
        assert_eq!(d1, vec!["x1", "x2", "x3"]);
        assert!(r.standard_basis(2).is_empty());
        assert_eq!(r.dim(0), 1);
        assert_eq!(r.dim(1), 3);
        assert_eq!(r.dim(2), 0);
        assert_eq!(r.dim(-1), 0);
    }

    #[test]
    fn chain_level2_degree2_basis() {
        let r = chain(2);
        let d2: Vec<String> = r.standard_basis(2).iter().map(|m| r.fmt_monomial(m)).collect();
        // brute-force check: of the 10 degree-2 monomials in x1,x2,y1,y2 the
        // relations {x2*x1, x1*y1, y1^2, y1*y2} kill four
        let expect: std::collections::BTreeSet<&str> =
            ["x1^2", "x1*y2", "x2^2", "x2*y1", "x2*y2", "y2^2"].into();
        let got: std::collections::BTreeSet<&str> = d2.iter().map(|s| s.as_str()).collect();
        assert_eq!(got, expect);
        assert_eq!(d2.len(), 6);
    }

    #[test]
    fn basis_counts_match_inclusion_exclusion() {
        // |standard_d| = all degree-d monomials minus those divisible by some
        // relation, via direct enumeration over the free monoid
        let r = chain(3);
        for d in 0..=5u32 {
            let n = r.num_vars();
            let mut all = 0usize;
            let mut divisible = 0usize;
            fn walk(
                n: usize,
                var: usize,
                rem: u32,
                exp: &mut Vec<u8>,
                r: &GradedRing,
                all: &mut usize,
                div: &mut usize,
            ) {
                if rem == 0 {
                    *all += 1;
                    let m = Monomial::from_dense(exp);
                    if !r.is_standard(&m) {
                        *div += 1;
                    }
                    return;
                }
                if var >= n {
                    return;
                }
                for e in 0..=rem {
                    exp[var] = e as u8;
                    walk(n, var + 1, rem - e, exp, r, all, div);
                    exp[var] = 0;
                }
            }
            walk(n, 0, d, &mut vec![0u8; n], &r, &mut all, &mut divisible);
            assert_eq!(r.dim(d as i64), all - divisible, "degree {d}");
        }
    }

    #[test]
    fn standard_basis_descending_and_deterministic() {
        let r = chain(2);
        let b = r.standard_basis(2);
        for w in b.windows(2) {
            assert_eq!(w[0].cmp_grlex(&w[1]), std::cmp::Ordering::Greater);
        }
        assert_eq!(b, r.standard_basis(2));
    }

    #[test]
    fn relation_minimality() {
        let f = FieldSpec::fp(2).unwrap();
        let x = |i| VarRef::new("x", i);
        let r = GradedRing::new(
            f,
            vec![x(1), x(2)],
            vec![
                vec![(x(1), 2)],
                vec![(x(1), 2), (x(2), 1)], // divisible by x1^2, dropped
                vec![(x(1), 1), (x(2), 1)],
            ],
        )
        .unwrap();
        assert_eq!(r.relations().len(), 2);
    }

    #[test]
    fn rejects_low_degree_relations() {
        let f = FieldSpec::fp(2).unwrap();
        let x = |i| VarRef::new("x", i);
        let err = GradedRing::new(f, vec![x(1)], vec![vec![(x(1), 1)]]);
        assert!(matches!(err, Err(Error::RelationDegree { .. })));
    }

    #[test]
    fn parse_and_format_monomials() {
        let r = chain(3);
        let m = r.parse_monomial("x3^2*y1").unwrap();
        assert_eq!(r.fmt_monomial(&m), "x3^2*y1");
        assert_eq!(r.parse_monomial("1").unwrap(), Monomial::one());
        assert!(r.parse_monomial("z1").is_err());
    }
}
