//! Comparison of each two-sided block of `J` with the asymptotic Hecke ring
//! of the Weyl group, via `t_C ↦ t_{w_C+} ⊗ e_{row,col}`.

use serde::{Deserialize, Serialize};

use crate::hecke::HeckeData;
use crate::schur::SchurAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeftCellCount {
    pub family: usize,
    /// Index of the Weyl group left cell.
    pub group_cell: usize,
    pub representative: String,
    /// Orbits whose generators all lie in the right descent set of the cell.
    pub expected: usize,
    /// Left cells of the q-Schur algebra whose longest representatives land in the cell.
    pub found: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub products_checked: usize,
    pub mismatches: Vec<String>,
    pub left_cell_counts: Vec<LeftCellCount>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.left_cell_counts.iter().all(|c| c.expected == c.found)
    }
}

pub fn check_embedding(hd: &HeckeData, alg: &SchurAlgebra) -> EmbeddingReport {
    let xi = alg.xi();
    let g = &hd.group;
    let plus = |c: usize| xi.get(c).max_rep;
    let mut report = EmbeddingReport::default();
    for (family, members) in alg.two_sided_cells().classes().iter().enumerate() {
        let group_family = hd.cells.two_sided.class_of(plus(members[0]));
        for &c in members {
            if hd.cells.two_sided.class_of(plus(c)) != group_family {
                report.mismatches.push(format!("{} leaves the two-sided cell of {}", xi.label(g, c), xi.label(g, members[0])));
            }
        }
        for &a in members {
            for &b in members {
                if alg.col(a) != alg.row(b) {
                    continue;
                }
                report.products_checked += 1;
                let block = xi.block(alg.row(a), alg.col(b));
                let mut expected: Vec<(usize, i64)> =
                    block.iter().map(|&c| (plus(c), alg.j_coeff(a, b, c))).filter(|(_, v)| *v != 0).collect();
                expected.sort();
                let mut actual: Vec<(usize, i64)> = hd.asym.product(plus(a), plus(b)).to_vec();
                actual.sort();
                if expected != actual {
                    report.mismatches.push(format!(
                        "t_{} t_{}: q-Schur side {expected:?}, group side {actual:?}",
                        xi.label(g, a),
                        xi.label(g, b)
                    ));
                }
            }
        }

        let schur_cells: Vec<usize> = (0..alg.left_cells().len())
            .filter(|&l| alg.two_sided_cells().class_of(alg.left_cells().members(l)[0]) == family)
            .collect();
        for &w in hd.cells.two_sided.members(group_family) {
            let cell = hd.cells.left.class_of(w);
            if hd.cells.left.members(cell)[0] != w {
                continue;
            }
            let descents = g.right_descents(w);
            let expected = (0..xi.n_orbits()).filter(|&o| xi.orbit(o).is_subset(&descents)).count();
            let found = schur_cells
                .iter()
                .filter(|&&l| hd.cells.left.class_of(plus(alg.left_cells().members(l)[0])) == cell)
                .count();
            report.left_cell_counts.push(LeftCellCount {
                family,
                group_cell: cell,
                representative: g.word_string(w),
                expected,
                found,
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CartanDatum, CartanType, WeylGroup};
    use crate::schur::OrbitSpec;

    #[test]
    fn blocks_embed_and_left_cells_are_counted_by_descents() {
        for (kind, rank, spec) in [(CartanType::A, 1, "1;-"), (CartanType::B, 2, "1,2;1;2;-"), (CartanType::A, 3, "1,2;2,3;-")] {
            let g = WeylGroup::new(CartanDatum::new(kind, rank).unwrap()).unwrap();
            let hd = HeckeData::build(g).unwrap();
            let alg = SchurAlgebra::build(&hd, &OrbitSpec::parse(spec, rank).unwrap()).unwrap();
            let r = check_embedding(&hd, &alg);
            assert!(r.passed(), "{spec}: {r:?}");
            let total: usize = r.left_cell_counts.iter().map(|c| c.found).sum();
            assert_eq!(total, alg.left_cells().len());
        }
    }
}
