//! JSON interchange.
//!
//! Rationals travel as strings `"p/q"` or `"p"`; integers as JSON numbers
//! (strings are accepted for values beyond 64 bits). Output is pretty JSON
//! with sorted keys and a trailing newline, so parsing a canonical file and
//! writing it back reproduces it byte for byte.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::arc::{CoordinateArc, TruncatedArc, TruncatedSeries};
use crate::error::{Error, Result};
use crate::lattice::{Cone, DualVector, LatticeVector, SemigroupBasis};
use crate::poly::{default_names, LaurentPolynomial, Rational};
use crate::tower::{tower_build, DivisorialValuation, GeneratingConditions, TowerStep};

/// Parses `"p/q"`, `"p"`, with an optional sign on `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = |why: &str| Error::parse("rational", format!("{s:?}: {why}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix(['+', '-']).unwrap_or(num);
    if !digits(unsigned) {
        return Err(bad("numerator must be an integer"));
    }
    let n = BigInt::from_str(num).map_err(|e| bad(&e.to_string()))?;
    let d = match den {
        None => BigInt::from(1),
        Some(d) if digits(d) => BigInt::from_str(d).map_err(|e| bad(&e.to_string()))?,
        Some(_) => return Err(bad("denominator must be a positive integer")),
    };
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Comma-separated integers, e.g. `2,3` or `-1, 4`.
pub fn parse_int_list(field: &str, s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            BigInt::from_str(t).map_err(|_| Error::parse(field, format!("{t:?} is not an integer")))
        })
        .collect()
}

pub fn parse_i64_list(field: &str, s: &str) -> Result<Vec<i64>> {
    parse_int_list(field, s)?
        .into_iter()
        .map(|b| {
            b.to_i64()
                .ok_or_else(|| Error::parse(field, "value beyond 64 bits"))
        })
        .collect()
}

/// Integer that serializes as a JSON number when it fits in 64 bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Int, E> {
                Err(E::custom(format!("{v} is not an integer")))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Int, E> {
                BigInt::from_str(v.trim())
                    .map(Int)
                    .map_err(|_| E::custom(format!("{v:?} is not an integer")))
            }
        }
        d.deserialize_any(V)
    }
}

/// Exact rational carried as a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational \"p/q\" or an integer")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rat, E> {
                Ok(Rat(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rat, E> {
                Ok(Rat(Rational::from_integer(v.into())))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Rat, E> {
                Err(E::custom(format!(
                    "{v}: write rationals as \"p/q\" strings"
                )))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rat, E> {
                parse_rational(v).map(Rat).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

fn big(v: Vec<Int>) -> Vec<BigInt> {
    v.into_iter().map(|i| i.0).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeJson {
    pub rank: usize,
    pub rays: Vec<Vec<Int>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisJson {
    pub elements: Vec<Vec<Int>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coef: Rat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub rank: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepJson {
    pub center: Vec<Rat>,
    /// 1-based coordinate index.
    pub chart: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerJson {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub steps: Vec<StepJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Int>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricArcJson {
    pub rank: usize,
    pub shift: Vec<Int>,
    pub units: Vec<Vec<Rat>>,
    pub truncation: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordinateArcJson {
    pub rank: usize,
    pub coords: Vec<Vec<Rat>>,
    pub truncation: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionJson {
    pub terms: Vec<TermJson>,
    pub value: Int,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionsJson {
    pub rank: usize,
    pub conditions: Vec<ConditionJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyListJson {
    pub rank: usize,
    pub polys: Vec<Vec<TermJson>>,
}

fn from_json<T: for<'de> Deserialize<'de>>(what: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(what, e))
}

fn check_len(field: String, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::parse(
            field,
            format!("expected {expected} entries, found {found}"),
        ));
    }
    Ok(())
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn parse_cone(text: &str) -> Result<Cone> {
    let j: ConeJson = from_json("cone", text)?;
    for (i, r) in j.rays.iter().enumerate() {
        check_len(format!("rays[{i}]"), j.rank, r.len())?;
    }
    Cone::new(
        j.rays
            .into_iter()
            .map(|r| LatticeVector::new(big(r)))
            .collect(),
    )
}

pub fn cone_json(c: &Cone) -> ConeJson {
    ConeJson {
        rank: c.rank(),
        rays: c.rays().iter().map(|r| ints(r.coords())).collect(),
    }
}

pub fn basis_json(b: &SemigroupBasis) -> BasisJson {
    BasisJson {
        elements: b.iter().map(|u| ints(u.coords())).collect(),
    }
}

pub fn parse_basis(text: &str) -> Result<Vec<DualVector>> {
    let j: BasisJson = from_json("basis", text)?;
    Ok(j.elements
        .into_iter()
        .map(|e| DualVector::new(big(e)))
        .collect())
}

fn poly_from_terms(rank: usize, field: &str, terms: Vec<TermJson>) -> Result<LaurentPolynomial> {
    for (i, t) in terms.iter().enumerate() {
        check_len(format!("{field}[{i}].exp"), rank, t.exp.len())?;
    }
    LaurentPolynomial::from_terms(rank, terms.into_iter().map(|t| (t.exp, t.coef.0)))
}

fn terms_json(f: &LaurentPolynomial) -> Vec<TermJson> {
    f.terms()
        .map(|(e, c)| TermJson {
            exp: e.clone(),
            coef: Rat(c.clone()),
        })
        .collect()
}

pub fn parse_poly(text: &str) -> Result<LaurentPolynomial> {
    let j: PolyJson = from_json("poly", text)?;
    poly_from_terms(j.rank, "terms", j.terms)
}

pub fn parse_poly_list(text: &str) -> Result<Vec<LaurentPolynomial>> {
    let j: PolyListJson = from_json("polys", text)?;
    j.polys
        .into_iter()
        .enumerate()
        .map(|(i, t)| poly_from_terms(j.rank, &format!("polys[{i}]"), t))
        .collect()
}

pub fn poly_list_json(rank: usize, polys: &[LaurentPolynomial]) -> PolyListJson {
    PolyListJson {
        rank,
        polys: polys.iter().map(terms_json).collect(),
    }
}

pub fn poly_json(f: &LaurentPolynomial) -> PolyJson {
    PolyJson {
        rank: f.rank(),
        terms: terms_json(f),
    }
}

pub fn parse_tower(text: &str) -> Result<DivisorialValuation> {
    let j: TowerJson = from_json("tower", text)?;
    let names = match j.names {
        Some(n) => {
            check_len("names".into(), j.rank, n.len())?;
            n
        }
        None => default_names(j.rank),
    };
    let mut steps = Vec::with_capacity(j.steps.len());
    for (k, s) in j.steps.into_iter().enumerate() {
        check_len(format!("steps[{k}].center"), j.rank, s.center.len())?;
        if s.chart == 0 || s.chart > j.rank {
            return Err(Error::parse(
                format!("steps[{k}].chart"),
                format!("chart {} outside 1..={}", s.chart, j.rank),
            ));
        }
        steps.push(TowerStep::new(
            s.center.into_iter().map(|r| r.0).collect(),
            s.chart - 1,
        ));
    }
    let tower = tower_build(j.rank, names, steps)?;
    let q = j.q.map_or_else(|| BigInt::from(1), |q| q.0);
    DivisorialValuation::new(tower, q)
}

pub fn tower_json(v: &DivisorialValuation) -> TowerJson {
    let t = &v.tower;
    TowerJson {
        rank: t.rank(),
        names: Some(t.names().to_vec()),
        steps: t
            .steps()
            .iter()
            .map(|s| StepJson {
                center: s.center.iter().cloned().map(Rat).collect(),
                chart: s.chart + 1,
            })
            .collect(),
        q: Some(Int(v.q.clone())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcInput {
    Toric(TruncatedArc),
    Coordinate(CoordinateArc),
}

fn series(field: String, coeffs: Vec<Rat>, truncation: usize) -> Result<TruncatedSeries> {
    if coeffs.len() > truncation + 1 {
        return Err(Error::parse(
            field,
            format!(
                "{} coefficients exceed truncation {truncation}",
                coeffs.len()
            ),
        ));
    }
    Ok(TruncatedSeries::new(
        coeffs.into_iter().map(|r| r.0).collect(),
        truncation,
    ))
}

pub fn parse_arc(text: &str) -> Result<ArcInput> {
    let v: Value = from_json("arc", text)?;
    let is_coordinate = v.get("coords").is_some();
    if is_coordinate {
        let j: CoordinateArcJson = serde_json::from_value(v).map_err(|e| Error::parse("arc", e))?;
        check_len("coords".into(), j.rank, j.coords.len())?;
        let coords = j
            .coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| series(format!("coords[{i}]"), c, j.truncation))
            .collect::<Result<_>>()?;
        Ok(ArcInput::Coordinate(CoordinateArc::new(coords)?))
    } else {
        let j: ToricArcJson = serde_json::from_value(v).map_err(|e| Error::parse("arc", e))?;
        check_len("shift".into(), j.rank, j.shift.len())?;
        check_len("units".into(), j.rank, j.units.len())?;
        let units = j
            .units
            .into_iter()
            .enumerate()
            .map(|(i, c)| series(format!("units[{i}]"), c, j.truncation))
            .collect::<Result<_>>()?;
        Ok(ArcInput::Toric(TruncatedArc::new(
            LatticeVector::new(big(j.shift)),
            units,
        )?))
    }
}

fn series_json(s: &TruncatedSeries) -> Vec<Rat> {
    s.coeffs().iter().cloned().map(Rat).collect()
}

pub fn arc_json(a: &ArcInput) -> Value {
    match a {
        ArcInput::Toric(g) => serde_json::to_value(ToricArcJson {
            rank: g.rank(),
            shift: ints(g.shift().coords()),
            units: g.units().iter().map(series_json).collect(),
            truncation: g.truncation(),
        }),
        ArcInput::Coordinate(g) => serde_json::to_value(CoordinateArcJson {
            rank: g.rank(),
            coords: g.coords().iter().map(series_json).collect(),
            truncation: g.truncation(),
        }),
    }
    .expect("serializable")
}

pub fn parse_conditions(text: &str) -> Result<GeneratingConditions> {
    let j: ConditionsJson = from_json("conditions", text)?;
    let mut out = GeneratingConditions::new(j.rank);
    for (i, c) in j.conditions.into_iter().enumerate() {
        let f = poly_from_terms(j.rank, &format!("conditions[{i}].terms"), c.terms)?;
        out.push(f, c.value.0)?;
    }
    Ok(out)
}

pub fn conditions_json(c: &GeneratingConditions) -> ConditionsJson {
    ConditionsJson {
        rank: c.rank,
        conditions: c
            .conditions
            .iter()
            .map(|(f, v)| ConditionJson {
                terms: terms_json(f),
                value: Int(v.clone()),
            })
            .collect(),
    }
}
