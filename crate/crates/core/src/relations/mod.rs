//! Instances of the relations presenting the real plane Cremona group,
//! and exact checks of auxiliary identities used alongside them.

mod corpus;
mod identities;
mod quadric;

pub use corpus::{
    build_corpus, corpus_from_json, corpus_to_json, perturbed, quintic_points, rel1_conjugation, rel1_reassignment, rel2_linear_quotient,
    rel2_to_jstar, rel3, shipped_corpus, CORPUS_JSON,
};
pub use identities::{f0_conjugate, f0_phi, rational_grid, reassignment_ratio, verify_q_positivity, F0Generator, QReport};
pub use quadric::{stereographic, stereographic_inverse, verify_stereographic, Poly4, StereoReport, PLANE_VARS, QUADRIC_VARS};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::abelianisation::phi_word;
use crate::birmap::maps_equal;
use crate::error::{Error, Result};
use crate::generators::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelKind {
    /// Linear maps around a quintic of the conic-pencil group.
    Rel1,
    /// `tau1 alpha1 = alpha2 tau2` for quadratic or cubic `tau`.
    Rel2,
    /// `tau2 alpha1 tau1 = alpha3 tau3 alpha2` in the line-pencil group.
    Rel3,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationInstance {
    pub kind: RelKind,
    pub label: String,
    pub lhs: Word,
    pub rhs: Word,
}

impl RelationInstance {
    pub fn to_json(&self) -> Value {
        json!({ "kind": self.kind, "label": self.label, "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = serde_json::from_value(v.get("kind").cloned().unwrap_or(Value::Null)).map_err(|e| Error::Parse(e.to_string()))?;
        let label = v.get("label").and_then(Value::as_str).unwrap_or_default().to_string();
        let word = |k: &str| Word::from_json(v.get(k).ok_or_else(|| Error::Parse(format!("missing {k}")))?);
        Ok(RelationInstance { kind, label, lhs: word("lhs")?, rhs: word("rhs")? })
    }
}

pub fn holds_in_group(r: &RelationInstance) -> Result<bool> {
    Ok(maps_equal(&r.lhs.evaluate()?, &r.rhs.evaluate()?))
}

pub fn phi_respects(r: &RelationInstance) -> Result<bool> {
    Ok(phi_word(&r.lhs)? == phi_word(&r.rhs)?)
}
