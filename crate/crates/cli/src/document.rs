//! JSON interchange format for stratified complexes.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use torsionlab::linalg::Q;
use torsionlab::simplicial::{boundary_subcomplex, cone_with_apex, suspension, OrientedComplex, Simplex};
use torsionlab::stratified::StratifiedComplex;
use torsionlab::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// A complex given by its maximal simplices over labelled vertices.
///
/// `stratification[j]` lists simplices generating `X_j` for `j < n`; without
/// it the complex has a single stratum. `boundary`, when present, must agree
/// with the computed boundary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub format_version: u32,
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stratification: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<Vec<String>>>,
    /// cone scale `l` as a rational string
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
    /// Betti numbers of the section, overriding the computed ones
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<usize>>,
}

fn labelled(c: &OrientedComplex, s: &[usize]) -> Vec<String> {
    s.iter().map(|&v| c.labels()[v].clone()).collect()
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "format_version {} is not supported (expected {FORMAT_VERSION})",
                doc.format_version
            )));
        }
        doc.complex()?;
        Ok(doc)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    /// One stratum, maximal simplices of `c`.
    pub fn from_complex(c: &OrientedComplex) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            vertices: c.labels().to_vec(),
            simplices: c.maximal_simplices().iter().map(|s| labelled(c, s)).collect(),
            stratification: None,
            boundary: None,
            scale: None,
            betti: None,
        }
    }

    /// Cone over `w` with the apex as the singular stratum.
    pub fn cone(w: &OrientedComplex, apex: &str) -> Self {
        let c = cone_with_apex(w, apex);
        let a = c.labels()[c.apices()[0]].clone();
        let n = c.top_dim();
        let mut doc = Self::from_complex(&c);
        doc.stratification = Some(vec![vec![vec![a]]; n]);
        doc
    }

    /// Suspension of `w` with both suspension points singular.
    pub fn suspension(w: &OrientedComplex) -> Self {
        let s = suspension(w);
        let n = s.top_dim();
        let points: Vec<Vec<String>> = s.apices().iter().map(|&a| vec![s.labels()[a].clone()]).collect();
        let mut doc = Self::from_complex(&s);
        doc.stratification = Some(vec![points; n]);
        doc
    }

    fn index(&self) -> Result<HashMap<&str, usize>> {
        let mut index = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(Error::Parse(format!("vertex label {v:?} repeated")));
            }
        }
        Ok(index)
    }

    fn resolve(&self, index: &HashMap<&str, usize>, s: &[String]) -> Result<Simplex> {
        s.iter()
            .map(|v| index.get(v.as_str()).copied().ok_or_else(|| Error::Parse(format!("unknown vertex {v:?}"))))
            .collect()
    }

    pub fn complex(&self) -> Result<OrientedComplex> {
        let index = self.index()?;
        if self.simplices.is_empty() {
            return Err(Error::Parse("no simplices".into()));
        }
        let maximal = self.simplices.iter().map(|s| self.resolve(&index, s)).collect::<Result<Vec<_>>>()?;
        OrientedComplex::from_maximal(self.vertices.clone(), &maximal).map_err(|e| match e {
            Error::InvalidArgument(m) => Error::Parse(m),
            other => other,
        })
    }

    /// The stratified complex, checking the declared boundary if any.
    pub fn stratified(&self) -> Result<StratifiedComplex> {
        let complex = self.complex()?;
        if let Some(b) = &self.boundary {
            let computed = boundary_subcomplex(&complex)?.labelled_simplices();
            let index = self.index()?;
            let generators = b.iter().map(|s| self.resolve(&index, s)).collect::<Result<Vec<_>>>()?;
            let declared = if generators.is_empty() {
                BTreeSet::new()
            } else {
                complex.subcomplex(&generators)?.labelled_simplices()
            };
            if declared != computed {
                return Err(Error::Invariant("declared boundary differs from the boundary of the complex".into()));
            }
        }
        match &self.stratification {
            None => StratifiedComplex::manifold(complex),
            Some(levels) => {
                let index = self.index()?;
                let levels = levels
                    .iter()
                    .map(|lv| lv.iter().map(|s| self.resolve(&index, s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                StratifiedComplex::from_filtration(complex, &levels)
            }
        }
    }

    pub fn scale(&self) -> Result<Option<Q>> {
        self.scale
            .as_deref()
            .map(|s| s.trim().parse::<Q>().map_err(|e| Error::Parse(format!("scale {s:?}: {e}"))))
            .transpose()
    }

    /// Apex label and section when the document is a cone over a closed complex
    /// whose singular stratum is the apex alone.
    pub fn cone_section(&self) -> Result<Option<(String, OrientedComplex)>> {
        let Some(levels) = &self.stratification else { return Ok(None) };
        let singular: BTreeSet<&Vec<String>> = levels.iter().flatten().collect();
        if singular.len() != 1 {
            return Ok(None);
        }
        let only = singular.into_iter().next().expect("one element");
        if only.len() != 1 {
            return Ok(None);
        }
        let apex = &only[0];
        if !self.simplices.iter().all(|s| s.contains(apex)) {
            return Ok(None);
        }
        let labels: Vec<String> = self.vertices.iter().filter(|v| *v != apex).cloned().collect();
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let link = self
            .simplices
            .iter()
            .map(|s| self.resolve(&index, &s.iter().filter(|v| *v != apex).cloned().collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        let w = OrientedComplex::from_maximal(labels, &link)?;
        if !boundary_subcomplex(&w)?.labelled_simplices().is_empty() {
            return Ok(None);
        }
        Ok(Some((apex.clone(), w)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use torsionlab::simplicial::standard;

    #[test]
    fn round_trip_is_byte_identical() {
        for doc in [
            ComplexDocument::cone(&standard::torus(), "c"),
            ComplexDocument::suspension(&standard::polygon(5)),
            ComplexDocument::from_complex(&standard::disc()),
        ] {
            let text = doc.to_json();
            let back = ComplexDocument::parse(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn recovers_cone_section() {
        let doc = ComplexDocument::cone(&standard::polygon(6), "c");
        let (apex, w) = doc.cone_section().unwrap().unwrap();
        assert_eq!(apex, "c");
        assert_eq!(w.homology_ranks()[..2], [1, 1]);
        assert!(ComplexDocument::suspension(&standard::polygon(6)).cone_section().unwrap().is_none());
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(ComplexDocument::parse("{"), Err(Error::Parse(_))));
        let bad = r#"{"format_version":1,"vertices":["a","b"],"simplices":[["a","z"]]}"#;
        assert!(matches!(ComplexDocument::parse(bad), Err(Error::Parse(_))));
        let version = r#"{"format_version":7,"vertices":["a"],"simplices":[["a"]]}"#;
        assert!(matches!(ComplexDocument::parse(version), Err(Error::Parse(_))));
    }
}
