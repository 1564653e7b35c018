use crate::error::{Error, Result};

/// A finite partial order on the indices `0..len()`.
pub trait Poset {
    fn len(&self) -> usize;

    fn leq(&self, i: usize, j: usize) -> bool;

    fn label(&self, i: usize) -> String;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Least element of `candidates`, if there is one.
    fn least_of(&self, candidates: &[usize]) -> Option<usize> {
        candidates
            .iter()
            .copied()
            .find(|&c| candidates.iter().all(|&o| self.leq(c, o)))
    }

    fn bottom(&self) -> Option<usize> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.least_of(&all)
    }

    /// Covering pairs `(i, j)`: `i < j` with nothing strictly between.
    fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// Exhaustive check of reflexivity, antisymmetry and transitivity.
    fn verify_order(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::input(format!("order is not reflexive at {}", self.label(i))));
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::input(format!(
                        "order is not antisymmetric: {} and {}",
                        self.label(i),
                        self.label(j)
                    )));
                }
                if !self.leq(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.leq(j, k) && !self.leq(i, k) {
                        return Err(Error::input(format!(
                            "order is not transitive: {} <= {} <= {}",
                            self.label(i),
                            self.label(j),
                            self.label(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A poset given by an explicit relation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Takes the reflexive-transitive closure of `relations` and checks antisymmetry.
    pub fn from_relations<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        relations: &[(usize, usize)],
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::input(format!("relation ({a}, {b}) out of range")));
            }
            leq[a * n + b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let p = FinitePoset { labels, leq };
        p.verify_order()?;
        Ok(p)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::from_relations((0..n).map(|i| i.to_string()), &rel).expect("chains are posets")
    }

    /// Copies any poset into explicit form.
    pub fn from_poset<P: Poset + ?Sized>(p: &P) -> Self {
        let n = p.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = p.leq(i, j);
            }
        }
        FinitePoset { labels: (0..n).map(|i| p.label(i)).collect(), leq }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

impl Poset for FinitePoset {
    fn len(&self) -> usize {
        self.labels.len()
    }

    fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.labels.len() + j]
    }

    fn label(&self, i: usize) -> String {
        self.labels[i].clone()
    }
}
