use std::fmt;

use crate::cohomology::{induced_cohomology_map, CohomologyKind, Slot};
use crate::exactlin::rank;

use super::{Bidegree, Morphism};

/// The induced Dolbeault map at one bidegree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct E1Witness {
    pub at: Bidegree,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl E1Witness {
    pub fn is_bijective(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.source_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Report {
    pub witnesses: Vec<E1Witness>,
}

impl E1Report {
    pub fn is_isomorphism(&self) -> bool {
        self.witnesses.iter().all(E1Witness::is_bijective)
    }

    pub fn first_failure(&self) -> Option<&E1Witness> {
        self.witnesses.iter().find(|w| !w.is_bijective())
    }
}

impl fmt::Display for E1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>4} {:>4} {:>6} {:>6} {:>6}  ok", "p", "q", "src", "tgt", "rank")?;
        for w in &self.witnesses {
            writeln!(
                f,
                "{:>4} {:>4} {:>6} {:>6} {:>6}  {}",
                w.at.0,
                w.at.1,
                w.source_dim,
                w.target_dim,
                w.rank,
                if w.is_bijective() { "yes" } else { "no" }
            )?;
        }
        Ok(())
    }
}

/// Whether `f` induces an isomorphism on Dolbeault (column) cohomology,
/// with the induced rank at every bidegree where either side is nonzero.
pub fn is_e1_isomorphism(f: &Morphism) -> (bool, E1Report) {
    let witnesses: Vec<E1Witness> = induced_cohomology_map(f, CohomologyKind::Dolbeault)
        .into_iter()
        .map(|(slot, m)| {
            let Slot::Bidegree(p, q) = slot else {
                unreachable!("Dolbeault cohomology is bigraded")
            };
            E1Witness {
                at: (p, q),
                source_dim: m.cols(),
                target_dim: m.rows(),
                rank: rank(&m),
            }
        })
        .collect();
    let report = E1Report { witnesses };
    (report.is_isomorphism(), report)
}
