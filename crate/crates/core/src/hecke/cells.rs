use num_traits::ToPrimitive;

use super::table::StructureConstants;
use crate::coxeter::{Elem, WeylGroup};
use crate::preorder::{Partition, Preorder};

/// Left, right and two-sided cells of `W` together with Lusztig's a-function.
#[derive(Clone, Debug)]
pub struct WCells {
    pub left: Partition,
    pub right: Partition,
    pub two_sided: Partition,
    pub left_order: Preorder,
    pub right_order: Preorder,
    pub two_sided_order: Preorder,
    a: Vec<u32>,
}

impl WCells {
    /// Cells are the classes of the preorders generated by
    /// "`C_z` occurs in `C_x C_y`"; the a-value of `z` is the largest pole
    /// order of any `h_{x,y}^z`.
    pub fn build(g: &WeylGroup, h: &StructureConstants) -> Self {
        let n = g.order();
        let mut left_edges = Vec::new();
        let mut right_edges = Vec::new();
        let mut a = vec![0u32; n];
        for x in 0..n {
            for y in 0..n {
                for (z, c) in h.product(x, y) {
                    left_edges.push((y, *z));
                    right_edges.push((x, *z));
                    let pole = (-c.valuation().unwrap()).max(0).to_u32().unwrap();
                    a[*z] = a[*z].max(pole);
                }
            }
        }
        let left_order = Preorder::from_edges(n, left_edges.iter().copied());
        let right_order = Preorder::from_edges(n, right_edges.iter().copied());
        let two_sided_order = Preorder::from_edges(n, left_edges.into_iter().chain(right_edges));
        WCells {
            left: left_order.partition(),
            right: right_order.partition(),
            two_sided: two_sided_order.partition(),
            left_order,
            right_order,
            two_sided_order,
            a,
        }
    }

    pub fn a(&self, w: Elem) -> u32 {
        self.a[w]
    }

    pub fn a_values(&self) -> &[u32] {
        &self.a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CartanDatum, CartanType};
    use crate::hecke::KlTable;

    #[test]
    fn a2_cells() {
        let g = WeylGroup::new(CartanDatum::new(CartanType::A, 2).unwrap()).unwrap();
        let kl = KlTable::build(&g).unwrap();
        let h = StructureConstants::build(&g, &kl).unwrap();
        let c = WCells::build(&g, &h);
        assert_eq!(c.two_sided.len(), 3);
        assert_eq!(c.left.len(), 4);
        assert_eq!((c.a(0), c.a(g.from_word(&[0])), c.a(g.longest())), (0, 1, 3));
        assert_eq!(c.two_sided.members(c.two_sided.class_of(1)).len(), 4);
    }
}
