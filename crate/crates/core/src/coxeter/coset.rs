use serde::{Deserialize, Serialize};

use super::group::{Elem, Parabolic, WeylGroup};
use crate::exact::LaurentInt;

/// A double coset `W_J g W_K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCoset {
    /// The unique element of minimal length.
    pub min_rep: Elem,
    /// The unique element of maximal length.
    pub max_rep: Elem,
    /// All members, ascending.
    pub members: Vec<Elem>,
}

impl WeylGroup {
    /// The partition of `W` into double cosets `W_J g W_K`, ordered by minimal representative.
    pub fn double_cosets(&self, j: Parabolic, k: Parabolic) -> Vec<DoubleCoset> {
        let mut assigned = vec![false; self.order()];
        let mut out = Vec::new();
        // elements are stored in length order, so the first unassigned one is minimal
        for g in self.elements() {
            if assigned[g] {
                continue;
            }
            assigned[g] = true;
            let mut members = vec![g];
            let mut i = 0;
            while i < members.len() {
                let w = members[i];
                let next = j.generators().map(|s| self.mul_left(s, w)).chain(k.generators().map(|s| self.mul_right(w, s)));
                for v in next.collect::<Vec<_>>() {
                    if !assigned[v] {
                        assigned[v] = true;
                        members.push(v);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            let max_rep = *members.iter().max_by_key(|&&w| self.length(w)).unwrap();
            out.push(DoubleCoset { min_rep: g, max_rep, members });
        }
        out
    }

    /// Left cosets `w W_K`, as double cosets with trivial left factor.
    pub fn left_cosets(&self, k: Parabolic) -> Vec<DoubleCoset> {
        self.double_cosets(Parabolic::empty(), k)
    }

    /// Elements of `W_J ∩ g W_K g^-1`.
    pub fn parabolic_intersection(&self, j: Parabolic, g: Elem, k: Parabolic) -> Vec<Elem> {
        let wk = self.parabolic_elements(k);
        let mut in_k = vec![false; self.order()];
        wk.iter().for_each(|&w| in_k[w] = true);
        let gi = self.inverse(g);
        self.parabolic_elements(j)
            .into_iter()
            .filter(|&x| in_k[self.mul(self.mul(gi, x), g)])
            .collect()
    }

    /// Poincaré polynomial of `W_J ∩ g W_K g^-1`.
    pub fn intersection_poincare(&self, j: Parabolic, g: Elem, k: Parabolic) -> LaurentInt {
        self.poincare(self.parabolic_intersection(j, g, k))
    }
}

#[cfg(test)]
mod tests {
    use crate::coxeter::{CartanDatum, CartanType, Parabolic, WeylGroup};

    #[test]
    fn a1_cosets() {
        let g = WeylGroup::new(CartanDatum::new(CartanType::A, 1).unwrap()).unwrap();
        let j = Parabolic::from_generators([0]);
        let dc = g.double_cosets(j, Parabolic::empty());
        assert_eq!(dc.len(), 1);
        assert_eq!((dc[0].min_rep, dc[0].max_rep), (0, 1));
        assert_eq!(g.double_cosets(Parabolic::empty(), Parabolic::empty()).len(), 2);
    }

    #[test]
    fn a2_mixed_cosets() {
        let g = WeylGroup::new(CartanDatum::new(CartanType::A, 2).unwrap()).unwrap();
        let j = Parabolic::from_generators([0]);
        let k = Parabolic::from_generators([1]);
        let dc = g.double_cosets(j, k);
        let reps: Vec<_> = dc.iter().map(|c| c.min_rep).collect();
        // s1s2 lies in the coset of e, so the second minimal representative is s2s1
        assert_eq!(reps, vec![0, g.from_word(&[1, 0])]);
        for c in &dc {
            let stab = g.parabolic_intersection(j, c.min_rep, k).len();
            assert_eq!(c.members.len() * stab, 4);
        }
    }
}
