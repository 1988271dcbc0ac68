//! Serializable reports: one JSON document per discriminant, one CSV row
//! per class.

use serde::{Deserialize, Serialize};

use crate::classify::{enumerate_classes, ClassList, OrbitClass};
use crate::error::Result;
use crate::form::{classify_discriminant, Form};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub representative: Form,
    pub kind: String,
    pub cycle_or_chain: Vec<Form>,
    /// Itinerary letters in application order.
    pub word: String,
    #[serde(rename = "tA")]
    pub t_a: usize,
    #[serde(rename = "tB")]
    pub t_b: usize,
    pub n_upper: usize,
    pub n_lower: usize,
    pub symmetry: String,
}

impl From<&OrbitClass> for ClassReport {
    fn from(c: &OrbitClass) -> Self {
        let (t_a, t_b) = c.t_ab();
        ClassReport {
            representative: c.representative,
            kind: c.kind_name().to_string(),
            cycle_or_chain: c.h0_points().to_vec(),
            word: c.steps().to_string(),
            t_a,
            t_b,
            n_upper: c.n_upper(),
            n_lower: c.n_lower(),
            symmetry: c.symmetry.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantReport {
    pub discriminant: i64,
    pub kind: String,
    pub classes: Vec<ClassReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub const NO_FORMS_NOTE: &str = "no forms";
pub const PARABOLIC_NOTE: &str =
    "infinitely many classes, one for each a in Z, represented by a x^2";

impl DiscriminantReport {
    pub fn build(delta: i64) -> Result<Self> {
        let d = classify_discriminant(delta);
        let list = enumerate_classes(d)?;
        let note = match list {
            ClassList::NoForms => Some(NO_FORMS_NOTE.to_string()),
            ClassList::ParabolicRule => Some(PARABOLIC_NOTE.to_string()),
            ClassList::Finite(_) => None,
        };
        Ok(DiscriminantReport {
            discriminant: delta,
            kind: d.kind_name().to_string(),
            classes: list.classes().iter().map(ClassReport::from).collect(),
            note,
        })
    }

    pub fn rows(&self) -> Vec<SweepRow> {
        self.classes
            .iter()
            .enumerate()
            .map(|(i, c)| SweepRow {
                delta: self.discriminant,
                kind: self.kind.clone(),
                num_classes: self.classes.len(),
                class_index: i,
                rep_m: c.representative.m,
                rep_n: c.representative.n,
                rep_k: c.representative.k,
                len: c.cycle_or_chain.len(),
                t_a: c.t_a,
                t_b: c.t_b,
                symmetry: c.symmetry.clone(),
            })
            .collect()
    }
}

/// Column order is the CSV header order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub delta: i64,
    pub kind: String,
    pub num_classes: usize,
    pub class_index: usize,
    pub rep_m: i64,
    pub rep_n: i64,
    pub rep_k: i64,
    pub len: usize,
    #[serde(rename = "tA")]
    pub t_a: usize,
    #[serde(rename = "tB")]
    pub t_b: usize,
    pub symmetry: String,
}

pub const SWEEP_HEADER: [&str; 11] = [
    "delta",
    "kind",
    "num_classes",
    "class_index",
    "rep_m",
    "rep_n",
    "rep_k",
    "len",
    "tA",
    "tB",
    "symmetry",
];
