//! JSON encodings of polynomials, family tables and seed files. Rationals are
//! always strings (`"p/q"` or an integer), never floats.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::appell::AppellSeed;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::index::MultiIndex;
use crate::poly::{FFPoly, Step};
use crate::rational::{parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    #[default]
    Ff,
    Monomial,
}

/// A polynomial with an explicit basis tag. `omega` is the falling-factorial
/// step; it is kept for monomial output too so the step survives a round trip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub basis: Basis,
    pub omega: String,
    pub coeffs: Vec<String>,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn parse_all(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

impl PolyJson {
    pub fn encode(p: &FFPoly, basis: Basis) -> Self {
        let coeffs = match basis {
            Basis::Ff => strings(p.coeffs()),
            Basis::Monomial => strings(&p.to_monomial()),
        };
        PolyJson {
            basis,
            omega: p.omega().to_string(),
            coeffs,
        }
    }

    pub fn decode(&self) -> Result<FFPoly> {
        let step = Step::new(parse_rational(&self.omega)?)?;
        let coeffs = parse_all(&self.coeffs)?;
        Ok(match self.basis {
            Basis::Ff => FFPoly::from_coeffs(coeffs, &step),
            Basis::Monomial => FFPoly::from_monomial(&coeffs, &step),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberJson {
    pub n: Vec<usize>,
    #[serde(flatten)]
    pub poly: PolyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub omega: String,
    pub arity: usize,
    pub order: usize,
    pub members: Vec<MemberJson>,
}

impl FamilyJson {
    pub fn encode(f: &Family, basis: Basis) -> Self {
        FamilyJson {
            omega: f.step().to_string(),
            arity: f.arity(),
            order: f.order(),
            members: f
                .members()
                .map(|(n, p)| MemberJson {
                    n: n.components().to_vec(),
                    poly: PolyJson::encode(p, basis),
                })
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<Family> {
        let step = Step::new(parse_rational(&self.omega)?)?;
        let mut members = BTreeMap::new();
        for m in &self.members {
            let n = MultiIndex::new(m.n.clone());
            if members.insert(n.clone(), m.poly.decode()?).is_some() {
                return Err(Error::Parse(format!("duplicate family member {n}")));
            }
        }
        Family::new(step, self.arity, self.order, members)
    }
}

pub fn family_to_json(f: &Family, basis: Basis) -> String {
    serde_json::to_string(&FamilyJson::encode(f, basis)).expect("serializable")
}

pub fn family_from_json(text: &str) -> Result<Family> {
    let parsed: FamilyJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("family file: {e}")))?;
    parsed.decode()
}

/// Seed file: `{"omega", "arity", "order", "coeffs"}` where `coeffs` is a
/// nested array of depth `arity` indexed by the multi-index. Rows may stop
/// at the simplex boundary; entries beyond it must be zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedFile {
    pub omega: String,
    pub arity: usize,
    pub order: usize,
    pub coeffs: Value,
}

impl SeedFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("seed file: {e}")))
    }

    pub fn to_seed(&self, cap: usize) -> Result<AppellSeed> {
        let step = Step::new(parse_rational(&self.omega)?)?;
        if self.arity == 0 {
            return Err(Error::InvalidSeed("arity must be at least 1".into()));
        }
        let mut coeffs = BTreeMap::new();
        let mut prefix = Vec::with_capacity(self.arity);
        collect(
            &self.coeffs,
            self.arity,
            self.order,
            &mut prefix,
            &mut coeffs,
        )?;
        AppellSeed::with_cap(step, self.arity, self.order, coeffs, cap)
    }

    pub fn from_seed(seed: &AppellSeed) -> Self {
        fn build(seed: &AppellSeed, prefix: &mut Vec<usize>) -> Value {
            let used: usize = prefix.iter().sum();
            let remaining = seed.order() - used;
            if prefix.len() + 1 == seed.arity() {
                Value::Array(
                    (0..=remaining)
                        .map(|c| {
                            prefix.push(c);
                            let v = seed.coeff(&MultiIndex::new(prefix.clone()));
                            prefix.pop();
                            Value::String(v.to_string())
                        })
                        .collect(),
                )
            } else {
                Value::Array(
                    (0..=remaining)
                        .map(|c| {
                            prefix.push(c);
                            let v = build(seed, prefix);
                            prefix.pop();
                            v
                        })
                        .collect(),
                )
            }
        }
        SeedFile {
            omega: seed.step().to_string(),
            arity: seed.arity(),
            order: seed.order(),
            coeffs: build(seed, &mut Vec::new()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

fn collect(
    value: &Value,
    depth: usize,
    order: usize,
    prefix: &mut Vec<usize>,
    out: &mut BTreeMap<MultiIndex, Rational>,
) -> Result<()> {
    if depth == 0 {
        let text = match value {
            Value::String(s) => s.clone(),
            Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
            other => {
                return Err(Error::Parse(format!(
                    "seed coefficient at {:?} must be a rational string, found {other}",
                    prefix
                )))
            }
        };
        let c = parse_rational(&text)?;
        let k = MultiIndex::new(prefix.clone());
        if k.total() > order {
            if !num_traits::Zero::is_zero(&c) {
                return Err(Error::OutOfOrder { index: k, order });
            }
        } else {
            out.insert(k, c);
        }
        return Ok(());
    }
    let Value::Array(items) = value else {
        return Err(Error::Parse(format!(
            "seed coefficients nest {} levels short at {:?}",
            depth, prefix
        )));
    };
    if items.len() > order + 1 {
        return Err(Error::Parse(format!(
            "seed coefficient row at {:?} has {} entries, order allows {}",
            prefix,
            items.len(),
            order + 1
        )));
    }
    for (i, item) in items.iter().enumerate() {
        prefix.push(i);
        collect(item, depth - 1, order, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appell::build_via_c;
    use crate::rational::{int, ratio};

    #[test]
    fn family_round_trip() {
        let seed = AppellSeed::from_fn(&Step::new(ratio(-2, 3)).unwrap(), 2, 3, |k| {
            ratio(k.get(0) as i64 + 1, k.get(1) as i64 + 2)
        })
        .unwrap();
        let fam = build_via_c(&seed).into_family();
        for basis in [Basis::Ff, Basis::Monomial] {
            let text = family_to_json(&fam, basis);
            assert_eq!(family_from_json(&text).unwrap(), fam);
        }
    }

    #[test]
    fn seed_file_round_trip() {
        let text = r#"{"omega":"1/2","arity":2,"order":2,
            "coeffs":[["1","-1/3","2"],["4","0"],["5"]]}"#;
        let file = SeedFile::parse(text).unwrap();
        let seed = file.to_seed(64).unwrap();
        assert_eq!(seed.coeff(&MultiIndex::from([0, 1])), ratio(-1, 3));
        assert_eq!(seed.coeff(&MultiIndex::from([2, 0])), int(5));
        let again = SeedFile::parse(&SeedFile::from_seed(&seed).to_json()).unwrap();
        assert_eq!(again.to_seed(64).unwrap(), seed);
    }

    #[test]
    fn square_seed_arrays_need_zero_corners() {
        let ok = r#"{"omega":"1","arity":2,"order":1,"coeffs":[["1","2"],["3","0"]]}"#;
        assert!(SeedFile::parse(ok).unwrap().to_seed(64).is_ok());
        let bad = r#"{"omega":"1","arity":2,"order":1,"coeffs":[["1","2"],["3","7"]]}"#;
        assert!(matches!(
            SeedFile::parse(bad).unwrap().to_seed(64),
            Err(Error::OutOfOrder { .. })
        ));
    }

    #[test]
    fn seed_file_errors() {
        let zero = r#"{"omega":"1","arity":1,"order":1,"coeffs":["0","1"]}"#;
        assert_eq!(
            SeedFile::parse(zero).unwrap().to_seed(64),
            Err(Error::DegenerateSeed)
        );
        let shallow = r#"{"omega":"1","arity":2,"order":1,"coeffs":["1","1"]}"#;
        assert!(matches!(
            SeedFile::parse(shallow).unwrap().to_seed(64),
            Err(Error::Parse(_))
        ));
        assert!(SeedFile::parse("{").is_err());
        let bad_step = r#"{"omega":"0","arity":1,"order":0,"coeffs":["1"]}"#;
        assert_eq!(
            SeedFile::parse(bad_step).unwrap().to_seed(64),
            Err(Error::InvalidStep)
        );
    }
}
