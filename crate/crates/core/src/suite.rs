//! The randomized property suite behind `specseq fuzz`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{group_cochain_dga, polynomial_dga, restrict_module, AlgebraMorphism, DGAlgebra, DGModule};
use crate::bar::{build_bar, degree_weights, BarBounds, BarComplex};
use crate::complex::random::{random_bifiltered_complex, random_filtered_complex, RandomBounds};
use crate::engine::{check_abutment, check_deligne, check_euler, check_next_page, compute_spectral_sequence, compute_spectral_sequence_sum, zassenhaus_dims};
use crate::error::Result;
use crate::linalg::FieldSpec;

pub const PROPERTIES: [&str; 5] = ["bar d^2 = 0", "E_inf totals = H dims", "Euler characteristic constant", "Deligne r=1,2,3", "Zassenhaus dims"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyFailure {
    pub seed: u64,
    pub property: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub cases: usize,
    /// How many instances of each property were checked.
    pub checked: BTreeMap<String, usize>,
    pub failures: Vec<PropertyFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const FIELDS: [FieldSpec; 4] = [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5)];

fn random_coefficient(field: FieldSpec, rng: &mut ChaCha8Rng) -> i64 {
    match field {
        FieldSpec::Rationals => rng.gen_range(-2..=2),
        FieldSpec::Prime(p) => rng.gen_range(0..p as i64),
    }
}

fn monomial_text(labels: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = labels
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(l, &e)| if e == 1 { l.clone() } else { format!("{l}^{e}") })
        .collect();
    if parts.is_empty() { "1".into() } else { parts.join("*") }
}

/// A random homogeneous polynomial of degree `n` in `y`, as text.
fn random_element(y: &DGAlgebra, n: usize, rng: &mut ChaCha8Rng) -> String {
    let f = y.field();
    let mono = y.monomials().expect("polynomial algebra");
    let labels: Vec<String> = mono.gens.iter().map(|g| g.label.clone()).collect();
    let terms: Vec<String> = mono
        .by_degree
        .get(n)
        .map_or(&[][..], |v| v.as_slice())
        .iter()
        .filter_map(|e| {
            let c = random_coefficient(f, rng);
            (c != 0).then(|| format!("({c})*{}", monomial_text(&labels, e)))
        })
        .collect();
    if terms.is_empty() { "0".into() } else { terms.join(" + ") }
}

fn borrow(g: &[(String, usize)]) -> Vec<(&str, usize)> {
    g.iter().map(|(l, d)| (l.as_str(), *d)).collect()
}

/// A random `Z → Y` between polynomial algebras, or group cochains acting
/// on a point, turned into a bar complex.
fn random_bar(seed: u64) -> Result<BarComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = BarBounds { max_degree: rng.gen_range(2..=4), max_word: rng.gen_range(1..=3) };
    let top = bounds.max_degree + 1;
    if rng.gen_bool(0.15) {
        let l = if rng.gen_bool(0.5) { 2 } else { 3 };
        let bounds = BarBounds { max_degree: bounds.max_degree.min(3), max_word: bounds.max_word.min(2) };
        let z = group_cochain_dga(l, bounds.max_degree + 1)?;
        let n = if rng.gen_bool(0.5) { DGModule::trivial(&z) } else { DGModule::regular(&z) };
        let w = degree_weights(&n);
        return build_bar(&z, &DGModule::trivial(&z), &n, bounds, Some(&w));
    }
    let field = FIELDS[rng.gen_range(0..FIELDS.len())];
    let char2 = field.characteristic() == 2;
    let degree = |rng: &mut ChaCha8Rng| if char2 { rng.gen_range(1..=3) } else { 2 * rng.gen_range(1..=2) };
    let zg: Vec<(String, usize)> = (0..rng.gen_range(1..=2)).map(|i| (format!("z{i}"), degree(&mut rng))).collect();
    let yg: Vec<(String, usize)> = (0..rng.gen_range(1..=2)).map(|i| (format!("y{i}"), degree(&mut rng))).collect();
    let z = polynomial_dga(field, &borrow(&zg), top)?;
    let y = polynomial_dga(field, &borrow(&yg), top)?;
    let images: Vec<(String, String)> = zg.iter().map(|(l, d)| (l.clone(), random_element(&y, *d, &mut rng))).collect();
    let imgs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let phi = AlgebraMorphism::from_generators(&z, &y, &imgs)?;
    let n = restrict_module(&phi, &z, &y)?;
    let w = degree_weights(&n);
    build_bar(&z, &DGModule::trivial(&z), &n, bounds, Some(&w))
}

/// Runs every property on `cases` consecutive seeds starting at `seed`.
pub fn run_property_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut checked: BTreeMap<String, usize> = PROPERTIES.iter().map(|p| (p.to_string(), 0)).collect();
    let mut failures = Vec::new();
    let mut tally = |property: &str, seed: u64, outcome: std::result::Result<(), String>| {
        *checked.get_mut(property).expect("known property") += 1;
        if let Err(detail) = outcome {
            failures.push(PropertyFailure { seed, property: property.into(), detail });
        }
    };
    for s in seed..seed + cases as u64 {
        // bar complexes
        match random_bar(s) {
            Ok(bar) => {
                let squares = bar.parts.iter().enumerate().try_for_each(|(i, p)| {
                    let c = p.complex();
                    (0..c.len().saturating_sub(2)).try_for_each(|n| {
                        let dd = c.d(n + 1).mul(&c.d(n)).map_err(|e| e.to_string())?;
                        if dd.is_zero() { Ok(()) } else { Err(format!("part {i}, degree {n}")) }
                    })
                });
                tally(PROPERTIES[0], s, squares);
                for parts in [bar.w_parts(), bar.f_parts()] {
                    let ss = compute_spectral_sequence_sum(&parts, 4);
                    tally(PROPERTIES[1], s, check_abutment(&ss));
                    tally(PROPERTIES[2], s, check_euler(&ss));
                }
            }
            Err(e) => tally(PROPERTIES[0], s, Err(format!("construction failed: {e}"))),
        }
        // random filtered and bifiltered complexes
        let field = FIELDS[(s % 4) as usize];
        let bounds = RandomBounds { max_degree: 3, max_dim: 4, steps: 4 };
        let fc = random_filtered_complex(field, s, bounds);
        let ss = compute_spectral_sequence(&fc, 5);
        tally(PROPERTIES[1], s, check_abutment(&ss).and(check_next_page(&ss)));
        tally(PROPERTIES[2], s, check_euler(&ss));
        tally(PROPERTIES[3], s, check_deligne(&fc, &[1, 2, 3]));
        let bc = random_bifiltered_complex(field, s, bounds);
        let bad = zassenhaus_dims(&bc);
        tally(PROPERTIES[4], s, if bad.is_empty() { Ok(()) } else { Err(format!("(s,t,n) {bad:?}")) });
    }
    SuiteReport { seed, cases, checked, failures }
}
