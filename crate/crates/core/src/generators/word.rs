use serde_json::{json, Value};

use super::{cubic_jcirc, linear_map, quadratic_jcirc, sigma0, sigma1_intro, sigma1_jcirc, standard_quintic, GenKind, Generator, Tag};
use crate::birmap::{compose_all, BirMap};
use crate::error::{Error, Result};
use crate::exactalg::parse::parse_map;
use crate::exactalg::scalar::{fmt_rational, parse_rational};
use crate::exactalg::{HomPoly3, Matrix, Rational};
use crate::plane::ProjPoint;

#[derive(Clone, Debug, PartialEq)]
pub struct Letter {
    pub gen: Generator,
    /// `1` or `-1`.
    pub exponent: i8,
}

impl Letter {
    pub fn new(gen: Generator) -> Self {
        Letter { gen, exponent: 1 }
    }

    pub fn inverse(&self) -> Self {
        Letter { gen: self.gen.clone(), exponent: -self.exponent }
    }

    pub fn map(&self) -> Result<BirMap> {
        if self.exponent < 0 {
            self.gen.map().inverse()
        } else {
            Ok(self.gen.map().clone())
        }
    }

    /// The generator itself, inverted when the exponent is negative.
    pub fn resolved(&self) -> Result<Generator> {
        if self.exponent < 0 {
            self.gen.inverse()
        } else {
            Ok(self.gen.clone())
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, params) = match self.gen.kind() {
            GenKind::Sigma0 => ("sigma0", json!({})),
            GenKind::Sigma1Intro => ("sigma1_intro", json!({})),
            GenKind::Sigma1Jcirc => ("sigma1_jcirc", json!({})),
            GenKind::Linear(m) => ("linear", json!({ "matrix": matrix_strings(m) })),
            GenKind::Quadratic { i, q } => ("quadratic", json!({ "i": i, "q": q.to_string() })),
            GenKind::Cubic { r } => ("cubic", json!({ "r": r.to_string() })),
            GenKind::Quintic { q } => ("quintic", json!({ "q": q.iter().map(ToString::to_string).collect::<Vec<_>>() })),
            GenKind::Map => {
                let m = self.gen.map();
                let text = |c: &[HomPoly3<Rational>; 3]| c.iter().map(HomPoly3::to_text).collect::<Vec<_>>().join(" : ");
                (
                    "map",
                    json!({
                        "forward": text(m.forward()),
                        "inverse": m.inverse_components().map(text),
                        "tag": self.gen.tag(),
                    }),
                )
            }
        };
        json!({ "kind": kind, "params": params, "exponent": self.exponent })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| parse_err("letter without kind"))?;
        let empty = json!({});
        let params = v.get("params").unwrap_or(&empty);
        let exponent = match v.get("exponent").and_then(Value::as_i64).unwrap_or(1) {
            1 => 1,
            -1 => -1,
            e => return Err(parse_err(&format!("exponent {e} is not 1 or -1"))),
        };
        let point = |key: &str| -> Result<ProjPoint> {
            ProjPoint::parse(params.get(key).and_then(Value::as_str).ok_or_else(|| parse_err(&format!("missing {key}")))?)
        };
        let gen = match kind {
            "sigma0" => sigma0(),
            "sigma1_intro" => sigma1_intro(),
            "sigma1_jcirc" => sigma1_jcirc(),
            "linear" => linear_map(&parse_matrix(params.get("matrix").ok_or_else(|| parse_err("missing matrix"))?)?)?,
            "quadratic" => {
                let i = params.get("i").and_then(Value::as_u64).ok_or_else(|| parse_err("missing i"))?;
                quadratic_jcirc(u8::try_from(i).map_err(|_| parse_err("bad i"))?, &point("q")?)?
            }
            "cubic" => cubic_jcirc(&point("r")?)?,
            "quintic" => {
                let qs = params.get("q").and_then(Value::as_array).ok_or_else(|| parse_err("missing q"))?;
                let pts = qs
                    .iter()
                    .map(|s| ProjPoint::parse(s.as_str().ok_or_else(|| parse_err("points are strings"))?))
                    .collect::<Result<Vec<_>>>()?;
                let pts: [ProjPoint; 3] = pts.try_into().map_err(|_| parse_err("a quintic needs three points"))?;
                standard_quintic(&pts)?
            }
            "map" => {
                let fwd = params.get("forward").and_then(Value::as_str).ok_or_else(|| parse_err("missing forward"))?;
                let inv = params.get("inverse").and_then(Value::as_str).map(parse_map).transpose()?;
                let tag: Tag = match params.get("tag") {
                    Some(t) => serde_json::from_value(t.clone()).map_err(|e| parse_err(&e.to_string()))?,
                    None => Tag::Untagged,
                };
                Generator::from_map(BirMap::new(parse_map(fwd)?, inv, Vec::new())?, tag)?
            }
            other => return Err(parse_err(&format!("unknown letter kind {other}"))),
        };
        Ok(Letter { gen, exponent })
    }
}

fn parse_err(msg: &str) -> Error {
    Error::Parse(msg.into())
}

fn matrix_strings(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(fmt_rational).collect()).collect()
}

fn parse_matrix(v: &Value) -> Result<Matrix<Rational>> {
    let rows = v.as_array().filter(|r| r.len() == 3).ok_or_else(|| parse_err("a matrix has three rows"))?;
    let mut out = Vec::new();
    for r in rows {
        let r = r.as_array().filter(|r| r.len() == 3).ok_or_else(|| parse_err("a row has three entries"))?;
        let parsed = r
            .iter()
            .map(|e| match e {
                Value::String(s) => parse_rational(s).ok_or_else(|| parse_err(&format!("bad entry {s}"))),
                Value::Number(n) => n.as_i64().map(crate::exactalg::scalar::int).ok_or_else(|| parse_err("bad entry")),
                _ => Err(parse_err("bad entry")),
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    Ok(Matrix::from_rows(out))
}

/// A word in generators, read left to right as composition: `[a, b]` is `a o b`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn of(gens: impl IntoIterator<Item = Generator>) -> Self {
        Word(gens.into_iter().map(Letter::new).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn evaluate(&self) -> Result<BirMap> {
        let maps = self.0.iter().map(Letter::map).collect::<Result<Vec<_>>>()?;
        Ok(compose_all(&maps))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(Letter::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| parse_err("a word is a JSON array"))?;
        Ok(Word(arr.iter().map(Letter::from_json).collect::<Result<_>>()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::birmap::maps_equal;
    use crate::generators::linear::swap_matrix;

    #[test]
    fn empty_word_is_identity() {
        assert!(Word::default().evaluate().unwrap().is_identity());
    }

    #[test]
    fn word_times_inverse_is_identity() {
        let w = Word::of([sigma0(), linear_map(&swap_matrix()).unwrap(), sigma1_jcirc()]);
        assert!(w.concat(&w.inverse()).evaluate().unwrap().is_identity());
    }

    #[test]
    fn json_round_trip() {
        let w = Word::new(vec![
            Letter::new(sigma0()),
            Letter::new(linear_map(&swap_matrix()).unwrap()).inverse(),
            Letter::new(quadratic_jcirc(1, &ProjPoint::real([0, 0, 1])).unwrap()),
            Letter::new(Generator::from_map(sigma1_jcirc().map().clone(), Tag::Jcirc).unwrap()),
        ]);
        let back = Word::from_json(&w.to_json()).unwrap();
        assert_eq!(back.len(), 4);
        assert!(maps_equal(&back.evaluate().unwrap(), &w.evaluate().unwrap()));
    }
}
