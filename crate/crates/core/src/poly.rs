//! Ring elements: formal scalar combinations of monomials, kept in reduced
//! normal form (supported on standard monomials, terms in descending
//! canonical order, no zero coefficients).

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::GradedRing;
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RingElem {
    terms: Vec<(Monomial, Scalar)>,
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem { terms: vec![] }
    }

    pub fn one(ring: &GradedRing) -> Self {
        RingElem {
            terms: vec![(Monomial::one(), ring.field().one())],
        }
    }

    pub fn monomial(ring: &GradedRing, m: Monomial) -> Self {
        RingElem::from_terms(ring, vec![(m, ring.field().one())])
    }

    pub fn term(ring: &GradedRing, m: Monomial, c: Scalar) -> Self {
        RingElem::from_terms(ring, vec![(m, c)])
    }

    /// Normalizes arbitrary terms: merges duplicates, drops zero
    /// coefficients, drops non-standard monomials, sorts descending.
    pub fn from_terms(ring: &GradedRing, terms: Vec<(Monomial, Scalar)>) -> Self {
        let field = ring.field();
        let mut ts: Vec<(Monomial, Scalar)> = terms
            .into_iter()
            .filter(|(m, c)| !field.is_zero(c) && ring.is_standard(m))
            .collect();
        ts.sort_by(|a, b| b.0.cmp_grlex(&a.0));
        let mut merged: Vec<(Monomial, Scalar)> = Vec::with_capacity(ts.len());
        for (m, c) in ts {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !field.is_zero(c));
        RingElem { terms: merged }
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(d)` when every term has total degree `d` (zero is homogeneous
    /// of every degree and returns `None`).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let d = self.terms.first()?.0.degree() as i64;
        if self.terms.iter().all(|(m, _)| m.degree() as i64 == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn add(&self, ring: &GradedRing, other: &RingElem) -> RingElem {
        let mut ts = self.terms.clone();
        ts.extend(other.terms.iter().cloned());
        RingElem::from_terms(ring, ts)
    }

    pub fn neg(&self, ring: &GradedRing) -> RingElem {
        let f = ring.field();
        RingElem {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &GradedRing, other: &RingElem) -> RingElem {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale(&self, ring: &GradedRing, c: &Scalar) -> RingElem {
        let f = ring.field();
        if f.is_zero(c) {
            return RingElem::zero();
        }
        RingElem {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), f.mul(a, c)))
                .collect(),
        }
    }

    /// Product in `R`: termwise monomial products, reduced (non-standard
    /// products vanish).
    pub fn mul(&self, ring: &GradedRing, other: &RingElem) -> RingElem {
        let f = ring.field();
        let mut ts = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                let p = m.mul(n);
                if ring.is_standard(&p) {
                    ts.push((p, f.mul(a, b)));
                }
            }
        }
        RingElem::from_terms(ring, ts)
    }

    pub fn mul_mono(&self, ring: &GradedRing, m: &Monomial) -> RingElem {
        let mut ts = Vec::with_capacity(self.terms.len());
        for (n, c) in &self.terms {
            let p = n.mul(m);
            if ring.is_standard(&p) {
                ts.push((p, c.clone()));
            }
        }
        RingElem { terms: ts }
    }

    /// Canonical display: terms in descending order, `+`/`-` joiners, unit
    /// coefficients omitted.
    pub fn display(&self, ring: &GradedRing) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = ring.field();
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = f.is_negative_display(c);
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            let abs = if neg { f.neg(c) } else { c.clone() };
            if m.is_one() {
                s.push_str(&f.show(&abs));
            } else if f.is_one(&abs) {
                s.push_str(&ring.fmt_monomial(m));
            } else {
                s.push_str(&f.show(&abs));
                s.push('*');
                s.push_str(&ring.fmt_monomial(m));
            }
        }
        s
    }

    /// Parses the polynomial grammar: terms like `c*x3^2*y1` joined by `+`
    /// and `-`. Whitespace is ignored.
    pub fn parse(ring: &GradedRing, input: &str) -> Result<RingElem> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "0" {
            return Ok(RingElem::zero());
        }
        let f = ring.field();
        let mut terms = Vec::new();
        let mut rest = s.as_str();
        let mut sign_negative = false;
        if let Some(r) = rest.strip_prefix('-') {
            sign_negative = true;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        loop {
            let end = rest
                .char_indices()
                .skip(1)
                .find(|&(i, ch)| (ch == '+' || ch == '-') && !matches!(rest.as_bytes()[i - 1], b'/'))
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let (term_str, tail) = rest.split_at(end);
            let (coef, mono) = parse_term(ring, &f, term_str)?;
            let coef = if sign_negative { f.neg(&coef) } else { coef };
            terms.push((mono, coef));
            if tail.is_empty() {
                break;
            }
            sign_negative = tail.starts_with('-');
            rest = &tail[1..];
        }
        Ok(RingElem::from_terms(ring, terms))
    }
}

fn parse_term(
    ring: &GradedRing,
    field: &FieldSpec,
    term: &str,
) -> Result<(Scalar, Monomial)> {
    if term.is_empty() {
        return Err(Error::Parse {
            msg: "empty term".into(),
            at: 0,
        });
    }
    let mut coef = field.one();
    let mut mono = Monomial::one();
    let mut saw_coef = false;
    for piece in term.split('*') {
        let piece = piece.trim();
        let first = piece.chars().next().ok_or_else(|| Error::Parse {
            msg: "empty factor".into(),
            at: 0,
        })?;
        if first.is_ascii_digit() {
            if saw_coef {
                coef = field.mul(&coef, &field.parse_scalar(piece)?);
            } else {
                coef = field.parse_scalar(piece)?;
                saw_coef = true;
            }
        } else {
            let m = ring.parse_monomial(piece)?;
            mono = mono.mul(&m);
        }
    }
    Ok((coef, mono))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::RingPattern;

    fn sq3() -> GradedRing {
        RingPattern::square_zero(FieldSpec::fp(2).unwrap())
            .truncate(3)
            .unwrap()
    }

    fn chain3() -> GradedRing {
        RingPattern::chain(FieldSpec::fp(2).unwrap())
            .truncate(3)
            .unwrap()
    }

    #[test]
    fn reduce_kills_relation_multiples() {
        let r = sq3();
        let x1 = RingElem::parse(&r, "x1").unwrap();
        let x2 = RingElem::parse(&r, "x2").unwrap();
        assert!(x1.mul(&r, &x2).is_zero());
        assert_eq!(RingElem::one(&r).mul(&r, &RingElem::one(&r)), RingElem::one(&r));
    }

    #[test]
    fn reduce_keeps_standard_support() {
        let r = chain3();
        let e = RingElem::parse(&r, "x1^2 + x1*x3").unwrap();
        assert_eq!(e.display(&r), "x1^2+x1*x3");
        assert_eq!(e.homogeneous_degree(), Some(2));
        // parsing a killed monomial normalizes it away
        let z = RingElem::parse(&r, "x1*x2").unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn reduce_is_multiplicative_on_random_triples() {
        // reduce((a*b)*c) == reduce(a*(b*c)) on a deterministic small sweep
        let r = chain3();
        let basis1 = r.standard_basis(1);
        let elems: Vec<RingElem> = basis1
            .iter()
            .map(|m| RingElem::monomial(&r, m.clone()))
            .collect();
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    let ab_c = a.mul(&r, b).mul(&r, c);
                    let a_bc = a.mul(&r, &b.mul(&r, c));
                    assert_eq!(ab_c, a_bc);
                }
            }
        }
    }

    #[test]
    fn parse_display_round_trip_rational() {
        let p = RingPattern::free(FieldSpec::Q, &["x"]);
        let r = p.truncate(2).unwrap();
        let e = RingElem::parse(&r, "2/3*x1^2 - x1*x2 + 4").unwrap();
        assert_eq!(e.display(&r), "2/3*x1^2-x1*x2+4");
        let back = RingElem::parse(&r, &e.display(&r)).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn linearity_of_reduction() {
        let r = sq3();
        let a = RingElem::parse(&r, "x1+x2").unwrap();
        let b = RingElem::parse(&r, "x2+x3").unwrap();
        let sum = a.add(&r, &b);
        assert_eq!(sum.display(&r), "x1+x3"); // F2: x2+x2 = 0
        assert!(a.sub(&r, &a).is_zero());
    }
}
