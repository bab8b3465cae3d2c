//! The Hecke algebra of a finite Weyl group: standard and Kazhdan–Lusztig
//! bases, structure constants, cells, the a-function and the asymptotic ring.

mod asymptotic;
mod cells;
mod elt;
mod kl;
mod table;

pub use asymptotic::AsymptoticHecke;
pub use cells::WCells;
pub use elt::HeckeElt;
pub use kl::KlTable;
pub use table::StructureConstants;

use crate::coxeter::WeylGroup;
use crate::error::Result;

/// Everything computed at the level of `W`.
#[derive(Clone, Debug)]
pub struct HeckeData {
    pub group: WeylGroup,
    pub kl: KlTable,
    pub h: StructureConstants,
    pub cells: WCells,
    pub asym: AsymptoticHecke,
}

impl HeckeData {
    pub fn build(group: WeylGroup) -> Result<Self> {
        let kl = KlTable::build(&group)?;
        let h = StructureConstants::build(&group, &kl)?;
        let cells = WCells::build(&group, &h);
        let asym = AsymptoticHecke::build(&h, &cells);
        Ok(HeckeData { group, kl, h, cells, asym })
    }
}
