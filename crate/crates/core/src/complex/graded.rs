use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A graded vector space in degrees `0..=top`, given by labelled bases.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSpace {
    labels: Vec<Vec<String>>,
}

impl GradedSpace {
    pub fn new(labels: Vec<Vec<String>>) -> Result<Self> {
        for (n, ls) in labels.iter().enumerate() {
            let mut sorted: Vec<&String> = ls.iter().collect();
            sorted.sort();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Invalid(format!("duplicate label `{}` in degree {n}", w[0])));
            }
        }
        Ok(GradedSpace { labels })
    }

    /// Generic labels `e{n}_{i}`.
    pub fn from_dims(dims: &[usize]) -> Self {
        let labels = dims
            .iter()
            .enumerate()
            .map(|(n, &k)| (0..k).map(|i| format!("e{n}_{i}")).collect())
            .collect();
        GradedSpace { labels }
    }

    /// Number of stored degrees; the top degree is `len() - 1`.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.labels.get(n).map_or(0, |l| l.len())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(|l| l.len()).collect()
    }

    pub fn labels(&self, n: usize) -> &[String] {
        self.labels.get(n).map_or(&[], |l| l.as_slice())
    }

    pub fn labels_table(&self) -> Vec<Vec<String>> {
        self.labels.clone()
    }

    pub fn total_dim(&self) -> usize {
        self.labels.iter().map(|l| l.len()).sum()
    }
}
