use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::spec::OrbitSpec;
use crate::coxeter::{Elem, Parabolic, WeylGroup};

/// A triple `(row, g, col)`: orbit labels and a double coset `W_row g W_col`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct XiIndex {
    pub row: usize,
    pub col: usize,
    /// Minimal double coset representative.
    pub min_rep: Elem,
    /// Longest element of the double coset.
    pub max_rep: Elem,
    pub max_len: u32,
}

/// The basis index set of the q-Schur algebra, ordered by block `(row, col)`
/// and then by minimal representative.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct XiSet {
    spec: OrbitSpec,
    items: Vec<XiIndex>,
    transpose: Vec<usize>,
    /// `blocks[row][col]` lists the indices with that row and column.
    blocks: Vec<Vec<Vec<usize>>>,
    /// Longest element and length of each `W_gamma`.
    longest: Vec<Elem>,
    longest_len: Vec<u32>,
    /// Poincaré polynomial of each `W_gamma`.
    poincare: Vec<crate::exact::LaurentInt>,
    /// Coset members per index, needed for the bilinear form.
    members: Vec<Vec<Elem>>,
    #[serde(skip)]
    by_max: BTreeMap<(usize, usize, Elem), usize>,
}

impl XiSet {
    pub fn build(g: &WeylGroup, spec: &OrbitSpec) -> Self {
        let orbits = spec.orbits();
        let k = orbits.len();
        let mut items = Vec::new();
        let mut members = Vec::new();
        let mut blocks = vec![vec![Vec::new(); k]; k];
        for (row, &j) in orbits.iter().enumerate() {
            for (col, &kk) in orbits.iter().enumerate() {
                for dc in g.double_cosets(j, kk) {
                    blocks[row][col].push(items.len());
                    items.push(XiIndex {
                        row,
                        col,
                        min_rep: dc.min_rep,
                        max_rep: dc.max_rep,
                        max_len: g.length(dc.max_rep),
                    });
                    members.push(dc.members);
                }
            }
        }
        let longest: Vec<Elem> = orbits.iter().map(|&j| g.longest_in(j)).collect();
        let longest_len = longest.iter().map(|&w| g.length(w)).collect();
        let poincare = orbits.iter().map(|&j| g.poincare(g.parabolic_elements(j))).collect();
        let mut set = XiSet {
            spec: spec.clone(),
            items,
            transpose: Vec::new(),
            blocks,
            longest,
            longest_len,
            poincare,
            members,
            by_max: BTreeMap::new(),
        };
        set.reindex();
        set.transpose = (0..set.len())
            .map(|i| {
                let c = set.items[i];
                set.find(c.col, c.row, g.inverse(c.max_rep)).expect("transpose of a double coset is a double coset")
            })
            .collect();
        set
    }

    /// Restores lookup tables skipped during serialization.
    pub fn reindex(&mut self) {
        self.by_max = self.items.iter().enumerate().map(|(i, c)| ((c.row, c.col, c.max_rep), i)).collect();
    }

    pub fn spec(&self) -> &OrbitSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, i: usize) -> &XiIndex {
        &self.items[i]
    }

    pub fn items(&self) -> &[XiIndex] {
        &self.items
    }

    pub fn transpose(&self, i: usize) -> usize {
        self.transpose[i]
    }

    pub fn block(&self, row: usize, col: usize) -> &[usize] {
        &self.blocks[row][col]
    }

    pub fn n_orbits(&self) -> usize {
        self.spec.len()
    }

    pub fn orbit(&self, gamma: usize) -> Parabolic {
        self.spec.orbits()[gamma]
    }

    pub fn orbit_longest(&self, gamma: usize) -> Elem {
        self.longest[gamma]
    }

    pub fn orbit_longest_len(&self, gamma: usize) -> u32 {
        self.longest_len[gamma]
    }

    pub fn orbit_poincare(&self, gamma: usize) -> &crate::exact::LaurentInt {
        &self.poincare[gamma]
    }

    pub fn members(&self, i: usize) -> &[Elem] {
        &self.members[i]
    }

    /// The index with given row, column and longest element.
    pub fn find(&self, row: usize, col: usize, max_rep: Elem) -> Option<usize> {
        self.by_max.get(&(row, col, max_rep)).copied()
    }

    /// The identity index `(gamma, e, gamma)` of a diagonal block.
    pub fn unit(&self, gamma: usize) -> usize {
        self.blocks[gamma][gamma][0]
    }

    /// Label such as `(γ0,12,γ1)`.
    pub fn label(&self, g: &WeylGroup, i: usize) -> String {
        let c = &self.items[i];
        format!("(γ{},{},γ{})", c.row, g.word_string(c.min_rep), c.col)
    }
}
