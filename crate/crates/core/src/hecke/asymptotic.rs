use num_traits::ToPrimitive;

use super::cells::WCells;
use super::table::StructureConstants;
use crate::coxeter::Elem;

/// The asymptotic Hecke ring on the basis `t_w`.
///
/// `coeff(x, y, z)` is the constant term of `q^{a(z)} h_{x,y}^z`, so that
/// `t_x t_y = sum_z coeff(x, y, z) t_z`. In Lusztig's three-index notation
/// this is `gamma_{x,y,z^-1}`.
#[derive(Clone, Debug)]
pub struct AsymptoticHecke {
    rows: Vec<Vec<Vec<(Elem, i64)>>>,
}

impl AsymptoticHecke {
    pub fn build(h: &StructureConstants, cells: &WCells) -> Self {
        let n = h.order();
        let rows = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        h.product(x, y)
                            .iter()
                            .filter_map(|(z, c)| {
                                let v = c.coeff(-(cells.a(*z) as i64)).to_i64().expect("small constant");
                                (v != 0).then_some((*z, v))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        AsymptoticHecke { rows }
    }

    pub fn product(&self, x: Elem, y: Elem) -> &[(Elem, i64)] {
        &self.rows[x][y]
    }

    pub fn coeff(&self, x: Elem, y: Elem, z: Elem) -> i64 {
        self.rows[x][y].iter().find(|(w, _)| *w == z).map_or(0, |(_, c)| *c)
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }
}
