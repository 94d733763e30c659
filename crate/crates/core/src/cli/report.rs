//! JSON and plain-text rendering of analysis results.

use serde::Serialize;

use crate::analysis::Report;
use crate::ideal::{Ideal, Length};
use crate::poly::PolyRing;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingJson {
    pub p: u32,
    pub vars: Vec<String>,
}

impl RingJson {
    pub fn of(ring: &PolyRing) -> Self {
        RingJson {
            p: ring.field().modulus(),
            vars: ring.names().to_vec(),
        }
    }
}

/// A length as JSON: a number, or the string `"infinite"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum LengthJson {
    Finite(u64),
    Infinite(&'static str),
}

impl From<Length> for LengthJson {
    fn from(l: Length) -> Self {
        match l {
            Length::Finite(v) => LengthJson::Finite(v),
            Length::Infinite => LengthJson::Infinite("infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisJson {
    pub ring: RingJson,
    pub generators: Vec<String>,
    pub mu: u64,
    pub t_sequence: Option<Vec<u64>>,
    #[serde(rename = "B")]
    pub b: Option<u64>,
    #[serde(rename = "type")]
    pub ty: LengthJson,
    pub height: usize,
    pub dim: usize,
    pub regularity: Option<u32>,
    pub gin: Option<Vec<String>>,
    pub gin_stable: Option<bool>,
    pub m_full: Option<bool>,
    pub completely_m_full_recursive: Option<bool>,
    #[serde(rename = "completely_m_full_B")]
    pub completely_m_full_b: Option<bool>,
    pub componentwise_linear: Option<bool>,
    pub nagel_romer: Option<bool>,
    pub consistent: bool,
    pub seed: u64,
    pub betti: Vec<[u64; 3]>,
}

impl AnalysisJson {
    pub fn new(ideal: &Ideal, r: &Report) -> Self {
        let ring = ideal.ring();
        AnalysisJson {
            ring: RingJson::of(ring),
            generators: ideal.format_generators(),
            mu: r.mu,
            t_sequence: r.t_sequence.as_ref().map(|t| t.values.clone()),
            b: r.b(),
            ty: r.ty.into(),
            height: r.height,
            dim: r.dim,
            regularity: r.regularity,
            gin: r
                .gin
                .as_ref()
                .map(|g| g.gin.generators().iter().map(|m| ring.format_monomial(m)).collect()),
            gin_stable: r.gin_stable(),
            m_full: r.m_full,
            completely_m_full_recursive: r.cmf_recursive.as_ref().map(|c| c.holds),
            completely_m_full_b: r.cmf_b,
            componentwise_linear: r.componentwise_linear,
            nagel_romer: r.nagel_romer,
            consistent: r.consistent(),
            seed: r.seed,
            betti: r
                .betti
                .as_ref()
                .map(|b| b.triples().into_iter().map(|(i, j, v)| [i as u64, j as u64, v]).collect())
                .unwrap_or_default(),
        }
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "n/a".to_string(), T::to_string)
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

/// Aligned `key: value` lines.
pub fn format_rows(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{:<width$}  {}\n", format!("{k}:"), v, width = width + 1));
    }
    out
}

pub fn analysis_text(ideal: &Ideal, r: &Report) -> String {
    let j = AnalysisJson::new(ideal, r);
    let ty = match j.ty {
        LengthJson::Finite(v) => v.to_string(),
        LengthJson::Infinite(s) => s.to_string(),
    };
    let mut rows = vec![
        ("ring", format!("F{} [{}]", j.ring.p, j.ring.vars.join(", "))),
        ("generators", list(&j.generators)),
        ("mu", j.mu.to_string()),
        ("t-sequence", j.t_sequence.as_ref().map_or("n/a".into(), |t| list(t))),
        ("B", opt(&j.b)),
        ("type", ty),
        ("height", j.height.to_string()),
        ("dim", j.dim.to_string()),
        ("regularity", opt(&j.regularity)),
        ("gin", j.gin.as_ref().map_or("n/a".into(), |g| list(g))),
        ("gin stable", opt(&j.gin_stable)),
        ("m-full", opt(&j.m_full)),
        ("completely m-full (recursive)", opt(&j.completely_m_full_recursive)),
        ("completely m-full (mu = B)", opt(&j.completely_m_full_b)),
        ("componentwise linear", opt(&j.componentwise_linear)),
        ("Nagel-Romer", opt(&j.nagel_romer)),
        ("consistent", j.consistent.to_string()),
        ("seed", j.seed.to_string()),
    ];
    if let Some(p) = &r.profile {
        rows.push(("projective dimension", p.projective_dimension.to_string()));
        rows.push(("depth", p.depth.to_string()));
        rows.push(("Cohen-Macaulay", p.cohen_macaulay.to_string()));
        rows.push(("Gorenstein", p.gorenstein.to_string()));
    }
    let mut out = format_rows(&rows);
    if let Some(b) = &r.betti {
        out.push_str("betti (R/I):\n");
        out.push_str(&b.to_string());
    }
    for (name, e) in &r.errors {
        out.push_str(&format!("error in {name}: {e}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_aligned() {
        let s = format_rows(&[("a", "1".into()), ("long key", "2".into())]);
        assert_eq!(s, "a:         1\nlong key:  2\n");
    }

    #[test]
    fn lengths_serialize_as_number_or_string() {
        assert_eq!(serde_json::to_string(&LengthJson::from(Length::Finite(3))).unwrap(), "3");
        assert_eq!(
            serde_json::to_string(&LengthJson::from(Length::Infinite)).unwrap(),
            "\"infinite\""
        );
    }
}
