//! Preorders given by generating relations, and their equivalence classes.

use serde::{Deserialize, Serialize};

/// The reflexive-transitive closure of a relation on `0..n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Preorder {
    /// `below[u]` has bit `v` set iff `v ⪯ u`.
    below: Vec<Vec<u64>>,
}

impl Preorder {
    /// Each edge `(u, v)` declares `v ⪯ u`.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            adj[u].push(v);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        let words = n.div_ceil(64).max(1);
        let below = (0..n)
            .map(|start| {
                let mut seen = vec![0u64; words];
                let mut stack = vec![start];
                seen[start / 64] |= 1 << (start % 64);
                while let Some(u) = stack.pop() {
                    for &v in &adj[u] {
                        if seen[v / 64] >> (v % 64) & 1 == 0 {
                            seen[v / 64] |= 1 << (v % 64);
                            stack.push(v);
                        }
                    }
                }
                seen
            })
            .collect();
        Preorder { below }
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    /// `v ⪯ u`.
    pub fn leq(&self, v: usize, u: usize) -> bool {
        self.below[u][v / 64] >> (v % 64) & 1 == 1
    }

    pub fn equiv(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    pub fn partition(&self) -> Partition {
        let n = self.len();
        let mut label = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if label[a] != usize::MAX {
                continue;
            }
            let class: Vec<usize> = (a..n).filter(|&b| self.equiv(a, b)).collect();
            for &b in &class {
                label[b] = classes.len();
            }
            classes.push(class);
        }
        Partition { classes, label }
    }
}

/// A partition of `0..n` into classes, each sorted, ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
    label: Vec<usize>,
}

impl Partition {
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut order: Vec<usize> = Vec::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut label = vec![0; labels.len()];
        for (i, &l) in labels.iter().enumerate() {
            let k = match order.iter().position(|&x| x == l) {
                Some(k) => k,
                None => {
                    order.push(l);
                    classes.push(Vec::new());
                    classes.len() - 1
                }
            };
            classes[k].push(i);
            label[i] = k;
        }
        Partition { classes, label }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.label[i]
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.classes[class]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.label[a] == self.label[b]
    }
}
