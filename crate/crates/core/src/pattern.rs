//! Ring patterns: finitely described families of monomial quotient rings
//! with a truncation at every level N >= 1. A pattern lists variable
//! families (possibly unbounded) and relation schemas whose factor indices
//! are either constants or `v + c` for a bound index variable `v`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, VarRef};
use crate::ring::GradedRing;
use crate::scalar::FieldSpec;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FamilyRange {
    Unbounded,
    Bounded(u32, u32),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FamilyDecl {
    pub name: String,
    #[serde(
        serialize_with = "serialize_range",
        deserialize_with = "deserialize_range"
    )]
    pub range: FamilyRange,
}

/// Factor index: a constant, or `var + offset`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IndexExpr {
    Const(u32),
    Shifted { var: String, offset: u32 },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FactorSchema {
    pub family: String,
    #[serde(
        serialize_with = "serialize_index",
        deserialize_with = "deserialize_index"
    )]
    pub index: IndexExpr,
    pub exp: u32,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IndexBound {
    pub var: String,
    pub min: u32,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RelationSchema {
    pub factors: Vec<FactorSchema>,
    #[serde(default)]
    pub bounds: Vec<IndexBound>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingPattern {
    pub field: FieldSpec,
    pub families: Vec<FamilyDecl>,
    #[serde(default)]
    pub relations: Vec<RelationSchema>,
}

fn serialize_range<S: Serializer>(r: &FamilyRange, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        FamilyRange::Unbounded => s.serialize_str("unbounded"),
        FamilyRange::Bounded(lo, hi) => [*lo, *hi].serialize(s),
    }
}

fn deserialize_range<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<FamilyRange, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        S(String),
        Pair([u32; 2]),
    }
    match Raw::deserialize(d)? {
        Raw::S(s) if s == "unbounded" => Ok(FamilyRange::Unbounded),
        Raw::S(s) => Err(D::Error::custom(format!("invalid range `{s}`"))),
        Raw::Pair([lo, hi]) => Ok(FamilyRange::Bounded(lo, hi)),
    }
}

fn serialize_index<S: Serializer>(i: &IndexExpr, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    match i {
        IndexExpr::Const(c) => {
            let mut m = s.serialize_map(Some(1))?;
            m.serialize_entry("offset", c)?;
            m.end()
        }
        IndexExpr::Shifted { var, offset } => {
            let mut m = s.serialize_map(Some(2))?;
            m.serialize_entry("var", var)?;
            m.serialize_entry("offset", offset)?;
            m.end()
        }
    }
}

fn deserialize_index<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<IndexExpr, D::Error> {
    #[derive(Deserialize)]
    struct Raw {
        #[serde(default)]
        var: Option<String>,
        offset: u32,
    }
    let raw = Raw::deserialize(d)?;
    Ok(match raw.var {
        Some(var) => IndexExpr::Shifted {
            var,
            offset: raw.offset,
        },
        None => IndexExpr::Const(raw.offset),
    })
}

impl RingPattern {
    /// The ring family where every degree-2 product of variables vanishes:
    /// `k[x1,x2,...] / (x_i x_j)_{i,j>=1}` (squares included).
    pub fn square_zero(field: FieldSpec) -> Self {
        RingPattern {
            field,
            families: vec![FamilyDecl {
                name: "x".into(),
                range: FamilyRange::Unbounded,
            }],
            relations: vec![RelationSchema {
                factors: vec![
                    FactorSchema {
                        family: "x".into(),
                        index: IndexExpr::Shifted {
                            var: "i".into(),
                            offset: 0,
                        },
                        exp: 1,
                    },
                    FactorSchema {
                        family: "x".into(),
                        index: IndexExpr::Shifted {
                            var: "j".into(),
                            offset: 0,
                        },
                        exp: 1,
                    },
                ],
                bounds: vec![
                    IndexBound {
                        var: "i".into(),
                        min: 1,
                    },
                    IndexBound {
                        var: "j".into(),
                        min: 1,
                    },
                ],
            }],
        }
    }

    /// The two-family chain ring
    /// `k[...,x2,x1,y1,y2,...] / (x_{j+1} x_j, x1 y1, y1 y_i)_{i,j>=1}`.
    pub fn chain(field: FieldSpec) -> Self {
        let xf = |index: IndexExpr| FactorSchema {
            family: "x".into(),
            index,
            exp: 1,
        };
        let yf = |index: IndexExpr| FactorSchema {
            family: "y".into(),
            index,
            exp: 1,
        };
        RingPattern {
            field,
            families: vec![
                FamilyDecl {
                    name: "x".into(),
                    range: FamilyRange::Unbounded,
                },
                FamilyDecl {
                    name: "y".into(),
                    range: FamilyRange::Unbounded,
                },
            ],
            relations: vec![
                RelationSchema {
                    factors: vec![
                        xf(IndexExpr::Shifted {
                            var: "j".into(),
                            offset: 1,
                        }),
                        xf(IndexExpr::Shifted {
                            var: "j".into(),
                            offset: 0,
                        }),
                    ],
                    bounds: vec![IndexBound {
                        var: "j".into(),
                        min: 1,
                    }],
                },
                RelationSchema {
                    factors: vec![xf(IndexExpr::Const(1)), yf(IndexExpr::Const(1))],
                    bounds: vec![],
                },
                RelationSchema {
                    factors: vec![
                        yf(IndexExpr::Const(1)),
                        yf(IndexExpr::Shifted {
                            var: "i".into(),
                            offset: 0,
                        }),
                    ],
                    bounds: vec![IndexBound {
                        var: "i".into(),
                        min: 1,
                    }],
                },
            ],
        }
    }

    /// A free polynomial pattern on the given families (no relations).
    pub fn free(field: FieldSpec, families: &[&str]) -> Self {
        RingPattern {
            field,
            families: families
                .iter()
                .map(|n| FamilyDecl {
                    name: (*n).into(),
                    range: FamilyRange::Unbounded,
                })
                .collect(),
            relations: vec![],
        }
    }

    /// Validates structural invariants: known families, bound index
    /// variables, schema degree >= 2.
    pub fn validate(&self) -> Result<()> {
        self.field.validate()?;
        let fam_names: BTreeSet<&str> = self.families.iter().map(|f| f.name.as_str()).collect();
        if fam_names.len() != self.families.len() {
            return Err(Error::Shape("duplicate family name".into()));
        }
        for (si, schema) in self.relations.iter().enumerate() {
            let bound_vars: BTreeMap<&str, u32> = schema
                .bounds
                .iter()
                .map(|b| (b.var.as_str(), b.min))
                .collect();
            let mut degree = 0u32;
            for f in &schema.factors {
                if !fam_names.contains(f.family.as_str()) {
                    return Err(Error::UnknownFamily {
                        family: f.family.clone(),
                    });
                }
                if let IndexExpr::Shifted { var, .. } = &f.index {
                    match bound_vars.get(var.as_str()) {
                        Some(min) if *min >= 1 => {}
                        _ => {
                            return Err(Error::UnboundIndexVar {
                                var: var.clone(),
                                schema: si,
                            })
                        }
                    }
                }
                if let IndexExpr::Const(c) = f.index {
                    if c < 1 {
                        return Err(Error::BadIndex(c as u64));
                    }
                }
                degree += f.exp;
            }
            if degree < 2 {
                return Err(Error::RelationDegree { schema: si, degree });
            }
        }
        Ok(())
    }

    /// Instantiates the pattern at a finite level: every unbounded family is
    /// cut to indices `1..=level`; relations are all schema instantiations
    /// whose variable indices stay within the cut, minimalized under
    /// divisibility.
    pub fn truncate(&self, level: u32) -> Result<GradedRing> {
        if level < 1 {
            return Err(Error::BadLevel(level as u64));
        }
        self.validate()?;

        let mut vars: Vec<VarRef> = Vec::new();
        for fam in &self.families {
            let (lo, hi) = match fam.range {
                FamilyRange::Unbounded => (1, level),
                FamilyRange::Bounded(a, b) => (a.max(1), b.min(level)),
            };
            for i in lo..=hi {
                vars.push(VarRef::new(fam.name.clone(), i));
            }
        }
        vars.sort();
        let var_ids: HashMap<VarRef, u32> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();

        let mut rels: BTreeSet<Vec<(u32, u32)>> = BTreeSet::new();
        for schema in &self.relations {
            let mut bound_vars: Vec<(&str, u32)> = schema
                .bounds
                .iter()
                .map(|b| (b.var.as_str(), b.min.max(1)))
                .collect();
            bound_vars.sort();
            bound_vars.dedup();
            let k = bound_vars.len();
            let mut assign = vec![0u32; k];
            instantiate(
                &bound_vars,
                0,
                level,
                &mut assign,
                &mut |assignment: &[u32]| {
                    let mut factors: Vec<(u32, u32)> = Vec::with_capacity(schema.factors.len());
                    for f in &schema.factors {
                        let idx = match &f.index {
                            IndexExpr::Const(c) => *c,
                            IndexExpr::Shifted { var, offset } => {
                                let pos = bound_vars
                                    .iter()
                                    .position(|(v, _)| v == var)
                                    .expect("validated");
                                assignment[pos] + offset
                            }
                        };
                        let vr = VarRef::new(f.family.clone(), idx);
                        match var_ids.get(&vr) {
                            Some(id) => factors.push((*id, f.exp)),
                            None => return, // index beyond the cut
                        }
                    }
                    let m = Monomial::from_factors(factors);
                    rels.insert(m.factors().to_vec());
                },
            );
        }

        let rel_monos: Vec<Monomial> = rels
            .into_iter()
            .map(|fs| Monomial::from_factors(fs))
            .collect();
        for m in &rel_monos {
            debug_assert!(m.degree() >= 2, "schema degree validated");
        }
        Ok(GradedRing::from_parts(self.field, vars, var_ids, rel_monos))
    }
}

fn instantiate(
    bound_vars: &[(&str, u32)],
    pos: usize,
    level: u32,
    assign: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
    if pos == bound_vars.len() {
        f(assign);
        return;
    }
    let (_, min) = bound_vars[pos];
    for v in min..=level {
        assign[pos] = v;
        instantiate(bound_vars, pos + 1, level, assign, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::fp(2).unwrap()
    }

    fn rel_strings(r: &GradedRing) -> BTreeSet<String> {
        r.relations().iter().map(|m| r.fmt_monomial(m)).collect()
    }

    #[test]
    fn square_zero_level3() {
        let r = RingPattern::square_zero(f2()).truncate(3).unwrap();
        assert_eq!(
            rel_strings(&r),
            ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]
                .into_iter()
                .map(String::from)
                .collect()
        );
    }

    #[test]
    fn chain_level3() {
        let r = RingPattern::chain(f2()).truncate(3).unwrap();
        assert_eq!(
            rel_strings(&r),
            ["x1*x2", "x2*x3", "x1*y1", "y1^2", "y1*y2", "y1*y3"]
                .into_iter()
                .map(String::from)
                .collect()
        );
        assert_eq!(r.num_vars(), 6);
    }

    #[test]
    fn empty_schemas_give_free_ring() {
        let r = RingPattern::free(f2(), &["x", "y"]).truncate(2).unwrap();
        assert_eq!(r.num_vars(), 4);
        assert!(r.relations().is_empty());
        assert_eq!(r.dim(2), 10);
    }

    #[test]
    fn truncations_are_nested() {
        for pattern in [RingPattern::square_zero(f2()), RingPattern::chain(f2())] {
            for n in 1..=5u32 {
                let rn = pattern.truncate(n).unwrap();
                let rn1 = pattern.truncate(n + 1).unwrap();
                // every relation of truncate(N), re-read by name, is a
                // relation of truncate(N+1)
                let small: BTreeSet<String> =
                    rn.relations().iter().map(|m| rn.fmt_monomial(m)).collect();
                let big: BTreeSet<String> =
                    rn1.relations().iter().map(|m| rn1.fmt_monomial(m)).collect();
                assert!(small.is_subset(&big), "level {n}");
            }
        }
    }

    #[test]
    fn rejects_bad_level_and_degree() {
        assert!(matches!(
            RingPattern::square_zero(f2()).truncate(0),
            Err(Error::BadLevel(0))
        ));
        let mut p = RingPattern::square_zero(f2());
        p.relations[0].factors.truncate(1); // single linear factor
        assert!(matches!(p.truncate(3), Err(Error::RelationDegree { .. })));
    }

    #[test]
    fn rejects_unbound_index_variable() {
        let mut p = RingPattern::square_zero(f2());
        p.relations[0].bounds.pop();
        assert!(matches!(
            p.truncate(2),
            Err(Error::UnboundIndexVar { .. })
        ));
    }

    #[test]
    fn json_round_trip_matches_builtins() {
        let p = RingPattern::chain(f2());
        let js = serde_json::to_string_pretty(&p).unwrap();
        let q: RingPattern = serde_json::from_str(&js).unwrap();
        let rp = p.truncate(4).unwrap();
        let rq = q.truncate(4).unwrap();
        assert_eq!(rel_strings(&rp), rel_strings(&rq));
        // constant indices serialize without "var"
        assert!(js.contains(r#""offset": 1"#));
    }

    #[test]
    fn truncation_standard_monomials_nest() {
        // standard monomials of truncate(N) on indices <= N coincide with
        // those of truncate(N+1) supported on indices <= N
        let p = RingPattern::chain(f2());
        let r3 = p.truncate(3).unwrap();
        let r4 = p.truncate(4).unwrap();
        for d in 0..=4u32 {
            let b3: BTreeSet<String> = r3
                .standard_basis(d)
                .iter()
                .map(|m| r3.fmt_monomial(m))
                .collect();
            let b4: BTreeSet<String> = r4
                .standard_basis(d)
                .iter()
                .filter(|m| {
                    m.factors()
                        .iter()
                        .all(|&(v, _)| r4.var_ref(v).index <= 3)
                })
                .map(|m| r4.fmt_monomial(m))
                .collect();
            assert_eq!(b3, b4, "degree {d}");
        }
    }
}
