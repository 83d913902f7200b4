use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioBounds {
    /// `N_max`, the largest total degree kept.
    pub max_degree: usize,
    /// `W_max`, the largest word length kept.
    pub max_word: usize,
    /// `r_max`, the last page computed.
    pub pages: usize,
}

/// A graded algebra model of `Z` or `Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AlgebraSpec {
    /// Free graded-commutative on `generators`, modulo `relations`, zero
    /// differential.
    Polynomial {
        generators: Vec<(String, usize)>,
        #[serde(default)]
        relations: Vec<String>,
    },
    /// Free graded-commutative with `d(x) = expr` on generators.
    FreeCdga { generators: Vec<(String, usize)>, differentials: Vec<(String, String)> },
    /// Normalized cochains of `BZ/ℓ` over `F_ℓ`.
    GroupCochains { order: u32 },
}

/// How `Z` acts on the model of `Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum YSpec {
    /// `Y` a point: the ground field through the augmentation.
    Point,
    /// `Y = Z`, the regular module.
    Regular,
    /// An algebra with a map from `Z` given on generators.
    Algebra { algebra: AlgebraSpec, images: Vec<(String, String)> },
    /// Cellular cochains of `cells`, with the generators of a polynomial
    /// `Z` acting as listed: `(generator, cell, [(cell, coefficient)])`.
    Cellular { action: Vec<(String, String, Vec<(String, i64)>)> },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellFiltration {
    /// Weight of a basis element is its degree, as for cochains of a CW
    /// complex with one basis element per cell.
    Degree,
    /// No filtration of `Y`; `F` is the one-step filtration.
    #[default]
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub model: YSpec,
    /// CW structure the module stands for, e.g. `sphere(2)`.
    #[serde(default)]
    pub cells: Option<String>,
    #[serde(default)]
    pub filtration: CellFiltration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sequence {
    Em,
    Ls,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prelude {
    PreludeEm,
    PreludeLs,
}

/// One named expectation evaluated against a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CheckSpec {
    Degeneration { ss: Sequence, page: usize },
    InfinityTotals { ss: Sequence, totals: Vec<usize> },
    /// Some certified `d_r` is nonzero, optionally out of a given `(p, n)`
    /// or into a given `(p, n)`.
    NonzeroD {
        ss: Sequence,
        r: usize,
        #[serde(default)]
        from: Option<(i64, i64)>,
        #[serde(default)]
        to: Option<(i64, i64)>,
    },
    PreludePage { ss: Prelude, page: usize },
    PreludeNonzeroD { ss: Prelude, r: usize },
    DecalageRelation { holds: bool },
    /// The trigraded page has dimension one exactly at `s ∈ s_values`,
    /// `t ≤ 0`, `u = -2t`.
    TriSupport { s_values: Vec<i64> },
    /// `index_transform` sends the nonzero EM `d_{em_r}` onto the nonzero
    /// LS `d_{ls_r}`.
    IndexTransform { em_r: usize, ls_r: usize },
    /// `dim H^degree` of the `Y` model.
    CohomologyDim { degree: usize, dim: usize },
    /// `Tor^A(K, K)` has the dimensions of the tensor algebra on the
    /// desuspended augmentation ideal.
    TorTensor { max_degree: usize },
    /// EM `E_2` totals agree with `koszul_tor` over the generators of `Z`.
    KoszulMatchesEm,
    Minimal { expect: bool },
    AnalysisLsPage { page: usize },
    AnalysisEmDegenerates { expect: bool },
    AnalysisInconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSpec {
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub name: String,
    pub description: String,
    pub field: String,
    /// Whether `Z` and `Y` are modelled by their cohomology.
    pub formal_model: bool,
    pub bounds: ScenarioBounds,
    pub z: AlgebraSpec,
    pub y: ModuleSpec,
    #[serde(default)]
    pub analysis: Option<AnalysisSpec>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

/// `q`, `f2`, `f3`, … or `Q`, `F2`, ….
pub fn parse_field(text: &str) -> Result<FieldSpec> {
    let t = text.trim().to_ascii_lowercase();
    if t == "q" {
        return Ok(FieldSpec::Rationals);
    }
    let p = t.strip_prefix('f').and_then(|n| n.parse::<u64>().ok()).ok_or_else(|| Error::Invalid(format!("unknown field `{text}`")))?;
    FieldSpec::prime(p)
}

pub fn field_name(f: FieldSpec) -> String {
    match f {
        FieldSpec::Rationals => "q".into(),
        FieldSpec::Prime(p) => format!("f{p}"),
    }
}

impl ScenarioSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: ScenarioSpec = toml::from_str(text).map_err(|e| Error::Parse {
            line: e.span().map_or(0, |s| text.get(..s.start).unwrap_or(text).lines().count().max(1)),
            msg: e.message().to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn field(&self) -> Result<FieldSpec> {
        parse_field(&self.field)
    }

    /// Checks everything that does not need a computation.
    pub fn validate(&self) -> Result<()> {
        self.field()?;
        if self.name.is_empty() {
            return Err(Error::Invalid("scenario without a name".into()));
        }
        if self.bounds.pages == 0 {
            return Err(Error::Invalid("pages must be at least 1".into()));
        }
        if self.bounds.max_degree > 64 || self.bounds.max_word > 64 || self.bounds.pages > 64 {
            return Err(Error::Bounds("bounds above 64 are not supported".into()));
        }
        if let Some(c) = &self.y.cells {
            super::cw::CwModel::parse(c)?;
        }
        if matches!(self.y.model, YSpec::Cellular { .. }) && self.y.cells.is_none() {
            return Err(Error::Invalid("a cellular Y needs `cells`".into()));
        }
        let gens = |a: &AlgebraSpec| -> Vec<(String, usize)> {
            match a {
                AlgebraSpec::Polynomial { generators, .. } | AlgebraSpec::FreeCdga { generators, .. } => generators.clone(),
                AlgebraSpec::GroupCochains { .. } => Vec::new(),
            }
        };
        for a in std::iter::once(&self.z).chain(match &self.y.model {
            YSpec::Algebra { algebra, .. } => Some(algebra),
            _ => None,
        }) {
            let g = gens(a);
            if g.iter().any(|(_, d)| *d == 0 || *d > 64) {
                return Err(Error::Invalid("generator degrees must lie in 1..=64".into()));
            }
            if let AlgebraSpec::GroupCochains { order } = a {
                if *order < 2 || *order > 7 {
                    return Err(Error::Invalid(format!("group cochains of Z/{order} are not supported")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields() {
        assert_eq!(parse_field("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(parse_field("F3").unwrap(), FieldSpec::Prime(3));
        assert!(parse_field("f4").is_err());
        assert!(parse_field("r").is_err());
        assert_eq!(field_name(FieldSpec::Prime(5)), "f5");
    }

    #[test]
    fn minimal_spec() {
        let text = r#"
name = "t"
description = "x"
field = "q"
formal_model = true
bounds = { max_degree = 4, max_word = 4, pages = 4 }
z = { kind = "polynomial", generators = [["c", 2]] }
y = { model = { kind = "point" } }
checks = [{ check = "degeneration", ss = "em", page = 2 }]
"#;
        let s = ScenarioSpec::parse(text).unwrap();
        assert_eq!(s.checks.len(), 1);
        assert_eq!(s.y.filtration, CellFiltration::None);
        assert!(ScenarioSpec::parse(&text.replace("\"q\"", "\"f4\"")).is_err());
        assert!(ScenarioSpec::parse(&text.replace("pages = 4", "pages = 4, extra = 1")).is_err());
    }
}
