use std::collections::BTreeSet;

use super::build::{build_algebra, build_models, Models};
use super::cw::is_k_minimal;
use super::report::{CheckRecord, Report, SequenceRecord, Status, TriRecord};
use super::spec::{field_name, AlgebraSpec, CheckSpec, Prelude, ScenarioBounds, ScenarioSpec, Sequence, YSpec};
use crate::algebra::{cohomology_algebra, morphism_to_cohomology, AlgebraMorphism, DGModule};
use crate::bar::{build_bar, BarBounds};
use crate::engine::{check_decalage_relation, compare_e1, em_to_ls, zassenhaus_quartet_sum, DecalageRelation, Quartet, SpectralSequence};
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;
use crate::tor::{analyze_morphism, generator_sequence, koszul_tor, tor_via_bar, EmVerdict, LsVerdict, MorphismAnalysis, INCONCLUSIVE};

/// Command-line style overrides of a registry entry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub field: Option<FieldSpec>,
    pub max_degree: Option<usize>,
    pub max_word: Option<usize>,
    pub pages: Option<usize>,
}

impl Overrides {
    pub fn apply(&self, spec: &ScenarioSpec) -> ScenarioSpec {
        let mut s = spec.clone();
        if let Some(f) = self.field {
            s.field = field_name(f);
        }
        s.bounds = ScenarioBounds {
            max_degree: self.max_degree.unwrap_or(s.bounds.max_degree),
            max_word: self.max_word.unwrap_or(s.bounds.max_word),
            pages: self.pages.unwrap_or(s.bounds.pages),
        };
        s
    }
}

/// Everything a run computes; the report is its serializable summary.
#[derive(Clone, Debug)]
pub struct ScenarioRun {
    pub spec: ScenarioSpec,
    pub field: FieldSpec,
    pub models: Models,
    pub quartet: Quartet,
    pub analysis: Option<MorphismAnalysis>,
    pub report: Report,
}

pub fn run_scenario(spec: &ScenarioSpec) -> Result<Report> {
    execute(spec).map(|r| r.report)
}

/// `H(Z) → H(Y)` in a window of its own, for the degeneracy criteria.
fn analysis(spec: &ScenarioSpec, field: FieldSpec, bound: usize) -> Result<MorphismAnalysis> {
    let YSpec::Algebra { algebra, images } = &spec.y.model else {
        return Err(Error::Invalid("the criteria need Y given as an algebra with a map from Z".into()));
    };
    analyze_specs(&spec.z, algebra, images, field, bound)
}

/// Builds both algebras with room for `bound` and runs the criteria on the
/// induced map in cohomology.
pub(crate) fn analyze_specs(z: &AlgebraSpec, y: &AlgebraSpec, images: &[(String, String)], field: FieldSpec, bound: usize) -> Result<MorphismAnalysis> {
    let z = build_algebra(z, field, bound + 1)?;
    if !z.has_zero_differential() {
        return Err(Error::Invalid("the criteria need Z modelled by its cohomology".into()));
    }
    let y = build_algebra(y, field, bound + 2)?;
    let imgs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let phi = AlgebraMorphism::from_generators(&z, &y, &imgs)?;
    if y.has_zero_differential() {
        analyze_morphism(&z, &y, &phi, bound)
    } else {
        let h = cohomology_algebra(&y)?;
        let hphi = morphism_to_cohomology(&phi, &z, &h)?;
        analyze_morphism(&z, &h.algebra, &hphi, bound)
    }
}

pub fn execute(spec: &ScenarioSpec) -> Result<ScenarioRun> {
    spec.validate()?;
    let field = spec.field()?;
    let b = spec.bounds;
    let models = build_models(&spec.z, &spec.y, field, b.max_degree)?;
    let bar = build_bar(&models.z, &DGModule::trivial(&models.z), &models.n, BarBounds { max_degree: b.max_degree, max_word: b.max_word }, models.weights.as_deref())?;
    let quartet = zassenhaus_quartet_sum(&bar.parts, b.pages);
    let analysis = spec.analysis.as_ref().map(|a| analysis(spec, field, a.bound)).transpose()?;

    let mut sequences = vec![SequenceRecord::from_sequence("em", &quartet.em), SequenceRecord::from_sequence("ls", &quartet.ls)];
    sequences.extend(quartet.prelude_em.iter().map(|(t, ss)| SequenceRecord::from_sequence(format!("prelude-em t={t}"), ss)));
    sequences.extend(quartet.prelude_ls.iter().map(|(s, ss)| SequenceRecord::from_sequence(format!("prelude-ls s={s}"), ss)));
    let tri = quartet.tri.nonzero().map(|e| TriRecord { s: e.s, t: e.t, u: e.u, dim: e.dim }).collect();
    let mut run = ScenarioRun {
        spec: spec.clone(),
        field,
        models,
        quartet,
        analysis,
        report: Report {
            scenario: spec.name.clone(),
            field: field_name(field),
            bounds: b,
            formal_model: spec.formal_model,
            y_minimal: None,
            tri,
            sequences,
            criteria: serde_json::Value::Null,
            checks: Vec::new(),
        },
    };
    run.report.y_minimal = run.models.cw.as_ref().map(|cw| is_k_minimal(cw, field));
    if let Some(a) = &run.analysis {
        let mut v = serde_json::to_value(a).expect("analysis serializes");
        v["summary"] = serde_json::Value::String(a.summary());
        run.report.criteria = v;
    }
    run.report.checks = spec.checks.iter().map(|c| evaluate(&run, c)).collect();
    Ok(run)
}

fn record(name: String, status: Status, detail: impl Into<String>) -> CheckRecord {
    CheckRecord { name, status, detail: detail.into() }
}

fn sequence(run: &ScenarioRun, ss: Sequence) -> &SpectralSequence {
    match ss {
        Sequence::Em => &run.quartet.em,
        Sequence::Ls => &run.quartet.ls,
    }
}

fn ss_name(ss: Sequence) -> &'static str {
    match ss {
        Sequence::Em => "em",
        Sequence::Ls => "ls",
    }
}

fn prelude_name(ss: Prelude) -> &'static str {
    match ss {
        Prelude::PreludeEm => "prelude-em",
        Prelude::PreludeLs => "prelude-ls",
    }
}

fn preludes(run: &ScenarioRun, ss: Prelude) -> &[(i64, SpectralSequence)] {
    match ss {
        Prelude::PreludeEm => &run.quartet.prelude_em,
        Prelude::PreludeLs => &run.quartet.prelude_ls,
    }
}

/// Whether every `E_∞` entry of total degree `n` is certified.
fn infinity_certified(ss: &SpectralSequence, n: i64) -> bool {
    ss.infinity.entries.iter().filter(|e| e.n() == n).all(|e| e.certified)
}

/// Nonzero `d_r` matching the optional endpoints, split into certified and
/// uncertified ones.
fn matching_d(ss: &SpectralSequence, r: usize, from: Option<(i64, i64)>, to: Option<(i64, i64)>) -> (usize, usize) {
    let Some(page) = ss.pages.get(r) else { return (0, 0) };
    let hits: Vec<_> = page.nonzero_differentials().filter(|d| from.is_none_or(|f| d.from == f) && to.is_none_or(|t| d.to == t)).collect();
    let certified = hits.iter().filter(|d| d.certified).count();
    (certified, hits.len() - certified)
}

fn fmt_list<T: std::fmt::Debug>(v: &[T]) -> String {
    format!("{v:?}").replace(' ', "")
}

fn evaluate(run: &ScenarioRun, check: &CheckSpec) -> CheckRecord {
    let b = run.spec.bounds;
    match check {
        CheckSpec::Degeneration { ss, page } => {
            let name = format!("{} degeneration page {page}", ss_name(*ss));
            let d = sequence(run, *ss).degeneration;
            let detail = format!("page {:?}, certified {}", d.page, d.certified);
            match (d.page == Some(*page), d.certified) {
                (true, true) => record(name, Status::Pass, detail),
                (_, false) => record(name, Status::Inconclusive, format!("{detail}; inconclusive, raise bounds")),
                (false, true) => record(name, Status::Fail, detail),
            }
        }
        CheckSpec::InfinityTotals { ss, totals } => {
            let name = format!("{} infinity totals {}", ss_name(*ss), fmt_list(totals));
            let seq = sequence(run, *ss);
            let got = seq.infinity_totals();
            let n = totals.len().min(got.len());
            if n < totals.len() {
                return record(name, Status::Inconclusive, format!("only {n} degrees computed; raise bounds"));
            }
            let uncertified: Vec<usize> = (0..n).filter(|&k| !infinity_certified(seq, k as i64)).collect();
            let wrong: Vec<usize> = (0..n).filter(|&k| got[k] != totals[k] && !uncertified.contains(&k)).collect();
            let detail = format!("got {}", fmt_list(&got[..n]));
            if !wrong.is_empty() {
                record(name, Status::Fail, format!("{detail}; differs in certified degrees {}", fmt_list(&wrong)))
            } else if !uncertified.is_empty() {
                record(name, Status::Inconclusive, format!("{detail}; degrees {} uncertified, raise bounds", fmt_list(&uncertified)))
            } else {
                record(name, Status::Pass, detail)
            }
        }
        CheckSpec::NonzeroD { ss, r, from, to } => {
            let mut name = format!("{} nonzero d{r}", ss_name(*ss));
            if let Some(f) = from {
                name += &format!(" from {f:?}");
            }
            if let Some(t) = to {
                name += &format!(" to {t:?}");
            }
            match matching_d(sequence(run, *ss), *r, *from, *to) {
                (c, _) if c > 0 => record(name, Status::Pass, format!("{c} certified")),
                (0, u) if u > 0 => record(name, Status::Inconclusive, format!("{u} uncertified; raise bounds")),
                _ => record(name, Status::Fail, "none"),
            }
        }
        CheckSpec::PreludePage { ss, page } => {
            let name = format!("{} page {page}", prelude_name(*ss));
            let parts = preludes(run, *ss);
            let got = match ss {
                Prelude::PreludeEm => run.quartet.prelude_em_page(),
                Prelude::PreludeLs => run.quartet.prelude_ls_page(),
            };
            let certified = parts.iter().all(|(_, s)| s.degeneration.certified || s.degeneration.page == Some(1));
            let detail = format!("page {got:?}");
            match (got == Some(*page), certified) {
                (true, true) => record(name, Status::Pass, detail),
                (_, false) => record(name, Status::Inconclusive, format!("{detail}; some pieces uncertified, raise bounds")),
                (false, true) => record(name, Status::Fail, detail),
            }
        }
        CheckSpec::PreludeNonzeroD { ss, r } => {
            let name = format!("{} nonzero d{r}", prelude_name(*ss));
            let hits: Vec<(i64, usize, usize)> =
                preludes(run, *ss).iter().map(|(k, s)| (*k, matching_d(s, *r, None, None).0, matching_d(s, *r, None, None).1)).collect();
            if let Some((k, c, _)) = hits.iter().find(|(_, c, _)| *c > 0) {
                record(name, Status::Pass, format!("{c} certified at index {k}"))
            } else if hits.iter().any(|(_, _, u)| *u > 0) {
                record(name, Status::Inconclusive, "only uncertified ones; raise bounds")
            } else {
                record(name, Status::Fail, "none")
            }
        }
        CheckSpec::DecalageRelation { holds } => {
            let name = format!("decalage relation {}", if *holds { "holds" } else { "fails" });
            let rel = check_decalage_relation(&run.quartet);
            let mismatches = compare_e1(&run.quartet.em, &run.quartet.ls).len();
            let detail = match &rel {
                DecalageRelation::HypothesisNotMet { prelude } => format!("{prelude} does not degenerate at E1; {mismatches} E1 mismatches"),
                DecalageRelation::Checked { failures, .. } => format!("{} E1 mismatches", failures.len()),
            };
            let status = if rel.holds() == *holds { Status::Pass } else { Status::Fail };
            record(name, status, detail)
        }
        CheckSpec::TriSupport { s_values } => {
            let name = format!("tri support s in {}", fmt_list(s_values));
            let expected = |s: i64, t: i64, u: i64| s_values.contains(&s) && t <= 0 && u == -2 * t;
            let mut bad = Vec::new();
            let mut unsure = 0;
            for e in &run.quartet.tri.entries {
                let want = usize::from(expected(e.s, e.t, e.u));
                if e.dim != want {
                    if e.certified {
                        bad.push((e.s, e.t, e.u, e.dim));
                    } else {
                        unsure += 1;
                    }
                }
            }
            // every predicted triple inside the window must be present
            for &s in s_values {
                for t in -(b.max_word as i64)..=0 {
                    let n = s - t;
                    if n < 0 || n > b.max_degree as i64 {
                        continue;
                    }
                    let present = run.quartet.tri.entries.iter().any(|e| (e.s, e.t, e.u) == (s, t, -2 * t));
                    if !present {
                        bad.push((s, t, -2 * t, 0));
                    }
                }
            }
            if !bad.is_empty() {
                record(name, Status::Fail, format!("unexpected (s,t,u,dim): {}", fmt_list(&bad)))
            } else if unsure > 0 {
                record(name, Status::Pass, format!("{unsure} uncertified entries off the pattern ignored"))
            } else {
                record(name, Status::Pass, "")
            }
        }
        CheckSpec::IndexTransform { em_r, ls_r } => {
            let name = format!("index transform em d{em_r} onto ls d{ls_r}");
            let em: BTreeSet<((i64, i64), (i64, i64))> =
                run.quartet.em.nonzero_d(*em_r).iter().map(|d| (em_to_ls(d.from.0, d.from.1), em_to_ls(d.to.0, d.to.1))).collect();
            let ls: BTreeSet<((i64, i64), (i64, i64))> = run.quartet.ls.nonzero_d(*ls_r).iter().map(|d| (d.from, d.to)).collect();
            let detail = format!("em {} vs ls {}", fmt_list(&em.iter().collect::<Vec<_>>()), fmt_list(&ls.iter().collect::<Vec<_>>()));
            if em.is_empty() || ls.is_empty() {
                record(name, Status::Fail, detail)
            } else if em == ls {
                record(name, Status::Pass, detail)
            } else if em.is_subset(&ls) || ls.is_subset(&em) {
                record(name, Status::Inconclusive, format!("{detail}; supports differ only at the window edge, raise bounds"))
            } else {
                record(name, Status::Fail, detail)
            }
        }
        CheckSpec::CohomologyDim { degree, dim } => {
            let name = format!("H^{degree} of the Y model has dim {dim}");
            match &run.models.y {
                Some((y, _)) if *degree < y.top() => {
                    let got = y.cohomology_dims()[*degree];
                    record(name, if got == *dim { Status::Pass } else { Status::Fail }, format!("got {got}"))
                }
                Some(_) => record(name, Status::Inconclusive, "degree outside the window; raise bounds"),
                None => record(name, Status::Fail, "Y is not given as an algebra"),
            }
        }
        CheckSpec::TorTensor { max_degree } => {
            let name = format!("Tor(K,K) has tensor algebra dims to degree {max_degree}");
            let z = match build_algebra(&run.spec.z, run.field, max_degree + 2) {
                Ok(z) => z,
                Err(e) => return record(name, Status::Fail, e.to_string()),
            };
            let tor = match tor_via_bar(&z, &DGModule::trivial(&z), BarBounds { max_degree: max_degree + 1, max_word: b.max_word.max(max_degree + 2) }) {
                Ok(t) => t,
                Err(e) => return record(name, Status::Fail, e.to_string()),
            };
            if z.dim(1) > 0 {
                return record(name, Status::Fail, "degree-one classes make the tensor algebra infinite in each degree");
            }
            // 1 / (1 - Σ dim A^n t^{n-1})
            let mut tensor = vec![0usize; max_degree + 1];
            tensor[0] = 1;
            for n in 1..=*max_degree {
                tensor[n] = (1..=n).map(|j| z.dim(j + 1) * tensor[n - j]).sum();
            }
            let got = tor.totals();
            let got = &got[..=*max_degree];
            let uncertified: Vec<usize> = (0..=*max_degree).filter(|&n| !tor.total_certified(n)).collect();
            let detail = format!("Tor {} vs tensor {}", fmt_list(got), fmt_list(&tensor));
            if (0..=*max_degree).any(|n| got[n] != tensor[n] && !uncertified.contains(&n)) {
                record(name, Status::Fail, detail)
            } else if !uncertified.is_empty() {
                record(name, Status::Inconclusive, format!("{detail}; raise bounds"))
            } else {
                record(name, Status::Pass, detail)
            }
        }
        CheckSpec::KoszulMatchesEm => {
            let name = "koszul Tor totals equal EM E2 totals".to_string();
            let gens = match generator_sequence(&run.models.z) {
                Ok(g) => g,
                Err(e) => return record(name, Status::Fail, e.to_string()),
            };
            let h: Vec<_> = gens.into_iter().map(|(_, h)| h).collect();
            let tor = match koszul_tor(&run.models.z, &h, &run.models.n, b.max_degree) {
                Ok(t) => t,
                Err(e) => return record(name, Status::Fail, e.to_string()),
            };
            let Ok(e2) = run.quartet.em.page(2) else {
                return record(name, Status::Inconclusive, "EM page 2 not computed");
            };
            let mut wrong = Vec::new();
            let mut unsure = Vec::new();
            let kt = tor.totals();
            for n in 0..=b.max_degree {
                let certified = e2.entries.iter().filter(|e| e.n() == n as i64).all(|e| e.certified);
                let em = e2.total(n as i64);
                if !certified {
                    unsure.push(n);
                } else if em != kt[n] {
                    wrong.push((n, kt[n], em));
                }
            }
            let detail = format!("koszul {}", fmt_list(&kt));
            if !wrong.is_empty() {
                record(name, Status::Fail, format!("{detail}; (n, koszul, em) {}", fmt_list(&wrong)))
            } else if unsure.len() == b.max_degree + 1 {
                record(name, Status::Inconclusive, format!("{detail}; nothing certified, raise bounds"))
            } else {
                record(name, Status::Pass, detail)
            }
        }
        CheckSpec::Minimal { expect } => {
            let name = format!("Y cells minimal: {expect}");
            match (&run.models.cw, run.report.y_minimal) {
                (Some(cw), Some(got)) => record(name, if got == *expect { Status::Pass } else { Status::Fail }, format!("{} over {}", cw.name, run.field)),
                _ => record(name, Status::Fail, "no CW structure given"),
            }
        }
        CheckSpec::AnalysisLsPage { page } => {
            let name = format!("criteria predict LS page {page}");
            match run.analysis.as_ref().map(|a| &a.ls) {
                Some(LsVerdict::Predicted { page: p, model_page, route, .. }) => {
                    let ok = *p == *page && *model_page == Some(*page);
                    record(name, if ok { Status::Pass } else { Status::Fail }, format!("page {p}, model page {model_page:?}, via {route}"))
                }
                Some(LsVerdict::Inconclusive { reason }) => record(name, Status::Fail, reason.clone()),
                None => record(name, Status::Fail, "no analysis"),
            }
        }
        CheckSpec::AnalysisEmDegenerates { expect } => {
            let name = format!("criteria EM collapse: {expect}");
            match run.analysis.as_ref().map(|a| &a.em) {
                Some(v) => {
                    let got = matches!(v, EmVerdict::Degenerates { .. });
                    record(name, if got == *expect { Status::Pass } else { Status::Fail }, format!("{v:?}"))
                }
                None => record(name, Status::Fail, "no analysis"),
            }
        }
        CheckSpec::AnalysisInconclusive => {
            let name = INCONCLUSIVE.to_string();
            match &run.analysis {
                Some(a) => {
                    let s = a.summary();
                    record(name, if s.starts_with(INCONCLUSIVE) { Status::Pass } else { Status::Fail }, s)
                }
                None => record(name, Status::Fail, "no analysis"),
            }
        }
    }
}
