use serde::{Deserialize, Serialize};

use super::run::analyze_specs;
use super::spec::{parse_field, AlgebraSpec};
use crate::error::{Error, Result};
use crate::tor::MorphismAnalysis;

/// A map `H(Z) → H(Y)` given on generators, for standalone analysis.
/// A target with nonzero differential is replaced by its cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub field: String,
    #[serde(default)]
    pub bound: Option<usize>,
    pub source: AlgebraSpec,
    pub target: AlgebraSpec,
    pub images: Vec<(String, String)>,
}

const DEFAULT_BOUND: usize = 8;

impl MorphismFile {
    pub fn parse(text: &str) -> Result<Self> {
        let m: MorphismFile = toml::from_str(text).map_err(|e| Error::Parse {
            line: e.span().map_or(0, |s| text.get(..s.start).unwrap_or(text).lines().count().max(1)),
            msg: e.message().to_string(),
        })?;
        parse_field(&m.field)?;
        if m.bound.is_some_and(|b| b > 40) {
            return Err(Error::Bounds("analysis bounds above 40 are not supported".into()));
        }
        Ok(m)
    }

    pub fn analyze(&self, bound: Option<usize>) -> Result<MorphismAnalysis> {
        let bound = bound.or(self.bound).unwrap_or(DEFAULT_BOUND);
        if bound > 40 {
            return Err(Error::Bounds("analysis bounds above 40 are not supported".into()));
        }
        analyze_specs(&self.source, &self.target, &self.images, parse_field(&self.field)?, bound)
    }
}

/// Parses a morphism file and analyzes it, `bound` overriding the file.
pub fn analyze_file(text: &str, bound: Option<usize>) -> Result<MorphismAnalysis> {
    MorphismFile::parse(text)?.analyze(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tor::{LsVerdict, INCONCLUSIVE};

    const HOPF: &str = r#"
field = "q"
bound = 8
source = { kind = "polynomial", generators = [["c", 2]] }
target = { kind = "polynomial", generators = [["s", 2]], relations = ["s^2"] }
images = [["c", "s"]]
"#;

    #[test]
    fn hopf_map() {
        let a = analyze_file(HOPF, None).unwrap();
        assert!(matches!(a.ls, LsVerdict::Predicted { page: 3, .. }));
        assert_eq!(a.bound, 8);
    }

    #[test]
    fn nonformal_target_goes_through_cohomology() {
        let text = r#"
field = "q"
source = { kind = "polynomial", generators = [["a'", 2], ["b'", 2]] }
target = { kind = "free-cdga", generators = [["a", 2], ["b", 2], ["u", 3], ["v", 3], ["t", 3]], differentials = [["u", "a^2"], ["v", "b^2"], ["t", "a*b"]] }
images = [["a'", "a"], ["b'", "b"]]
"#;
        let a = analyze_file(text, Some(7)).unwrap();
        assert!(a.summary().starts_with(INCONCLUSIVE));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(MorphismFile::parse("field = 3").is_err());
        assert!(analyze_file(&HOPF.replace("\"s\"]]", "\"w\"]]"), None).is_err());
        assert!(analyze_file(HOPF, Some(1000)).is_err());
    }
}
