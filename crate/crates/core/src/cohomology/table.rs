use std::collections::BTreeMap;
use std::fmt;

use crate::bicomplex::{Bidegree, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CohomologyKind {
    Dolbeault,
    ConjugateDolbeault,
    DeRham,
    BottChern,
    Aeppli,
}

impl CohomologyKind {
    pub const ALL: [CohomologyKind; 5] = [
        CohomologyKind::Dolbeault,
        CohomologyKind::ConjugateDolbeault,
        CohomologyKind::DeRham,
        CohomologyKind::BottChern,
        CohomologyKind::Aeppli,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CohomologyKind::Dolbeault => "dolbeault",
            CohomologyKind::ConjugateDolbeault => "conjugate_dolbeault",
            CohomologyKind::DeRham => "de_rham",
            CohomologyKind::BottChern => "bott_chern",
            CohomologyKind::Aeppli => "aeppli",
        }
    }

    pub fn is_graded(self) -> bool {
        self == CohomologyKind::DeRham
    }
}

/// Which filtration of the total complex a spectral sequence comes from:
/// `Column` filters by `p` and starts at Dolbeault cohomology, `Row` filters
/// by `q` and starts at conjugate Dolbeault cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Column,
    Row,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableKind {
    Cohomology(CohomologyKind),
    Page { direction: Direction, r: usize },
    Infinity(Direction),
}

impl TableKind {
    pub fn is_graded(self) -> bool {
        matches!(self, TableKind::Cohomology(k) if k.is_graded())
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = |d: &Direction| if *d == Direction::Row { "_row" } else { "" };
        match self {
            TableKind::Cohomology(k) => f.write_str(k.name()),
            TableKind::Page { direction, r } => write!(f, "e{r}{}", suffix(direction)),
            TableKind::Infinity(direction) => write!(f, "einf{}", suffix(direction)),
        }
    }
}

/// Position of an entry: a bidegree, or a total degree for de Rham tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Bidegree(i32, i32),
    Degree(i32),
}

impl Slot {
    pub fn degree(self) -> i32 {
        match self {
            Slot::Bidegree(p, q) => p + q,
            Slot::Degree(k) => k,
        }
    }
}

/// Dimensions of a cohomology (or spectral-sequence page) indexed by
/// bidegree, or by total degree for de Rham. Only nonzero entries are
/// stored; equality ignores the window.
#[derive(Clone, Debug)]
pub struct CohomologyTable {
    kind: TableKind,
    window: Window,
    entries: BTreeMap<Slot, usize>,
}

impl PartialEq for CohomologyTable {
    fn eq(&self, other: &Self) -> bool {
        self.kind.is_graded() == other.kind.is_graded() && self.entries == other.entries
    }
}

impl Eq for CohomologyTable {}

impl CohomologyTable {
    pub fn bigraded(kind: TableKind, window: Window, entries: impl IntoIterator<Item = (Bidegree, usize)>) -> Self {
        assert!(!kind.is_graded(), "{kind} is indexed by total degree");
        Self {
            kind,
            window,
            entries: entries
                .into_iter()
                .filter(|&(_, n)| n > 0)
                .map(|((p, q), n)| (Slot::Bidegree(p, q), n))
                .collect(),
        }
    }

    pub fn graded(window: Window, entries: impl IntoIterator<Item = (i32, usize)>) -> Self {
        Self {
            kind: TableKind::Cohomology(CohomologyKind::DeRham),
            window,
            entries: entries
                .into_iter()
                .filter(|&(_, n)| n > 0)
                .map(|(k, n)| (Slot::Degree(k), n))
                .collect(),
        }
    }

    pub fn zero(kind: TableKind, window: Window) -> Self {
        Self {
            kind,
            window,
            entries: BTreeMap::new(),
        }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn is_graded(&self) -> bool {
        self.kind.is_graded()
    }

    pub fn with_kind(mut self, kind: TableKind) -> Self {
        assert_eq!(kind.is_graded(), self.kind.is_graded());
        self.kind = kind;
        self
    }

    /// Entry at `(p, q)`; zero for graded tables.
    pub fn get(&self, p: i32, q: i32) -> usize {
        self.entries.get(&Slot::Bidegree(p, q)).copied().unwrap_or(0)
    }

    /// Total dimension in degree `k` (the antidiagonal sum for bigraded tables).
    pub fn degree(&self, k: i32) -> usize {
        self.entries.iter().filter(|(s, _)| s.degree() == k).map(|(_, &n)| n).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Slot, usize)> + '_ {
        self.entries.iter().map(|(&s, &n)| (s, n))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .map(|(s, &n)| if s.degree() % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Degrees covered by the window, widened to any stored entry.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let stored = self.entries.keys().map(|s| s.degree());
        let (lo, hi) = stored.fold(self.window.degree_range().unwrap_or((i32::MAX, i32::MIN)), |(lo, hi), k| {
            (lo.min(k), hi.max(k))
        });
        (lo <= hi).then_some((lo, hi))
    }

    /// Per-degree totals over [`Self::degree_range`].
    pub fn betti(&self) -> Vec<usize> {
        match self.degree_range() {
            Some((lo, hi)) => (lo..=hi).map(|k| self.degree(k)).collect(),
            None => vec![],
        }
    }

    /// For each degree, the sorted entries of every window bidegree on that
    /// antidiagonal (zeros included).
    pub fn degree_multisets(&self) -> Vec<(i32, Vec<usize>)> {
        let Some((lo, hi)) = self.degree_range() else {
            return vec![];
        };
        let w = self.window;
        (lo..=hi)
            .map(|k| {
                let mut row: Vec<usize> = (w.p_min..=w.p_max)
                    .filter(|&p| w.contains((p, k - p)))
                    .map(|p| self.get(p, k - p))
                    .collect();
                row.sort_unstable();
                (k, row)
            })
            .collect()
    }

    /// Entrywise sum; windows are united.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.is_graded(), other.is_graded());
        let mut entries = self.entries.clone();
        for (&s, &n) in &other.entries {
            *entries.entry(s).or_insert(0) += n;
        }
        Self {
            kind: self.kind,
            window: self.window.union(&other.window),
            entries,
        }
    }

    /// The table of the shifted complex `A[i]`.
    pub fn shifted(&self, i: i32) -> Self {
        Self {
            kind: self.kind,
            window: self.window.translate(i, i),
            entries: self
                .entries
                .iter()
                .map(|(&s, &n)| {
                    let s = match s {
                        Slot::Bidegree(p, q) => Slot::Bidegree(p + i, q + i),
                        Slot::Degree(k) => Slot::Degree(k + 2 * i),
                    };
                    (s, n)
                })
                .collect(),
        }
    }

    /// Reflects bidegrees `(p, q) ↦ (q, p)`.
    pub fn transposed(&self) -> Self {
        Self {
            kind: self.kind,
            window: self.window.transpose(),
            entries: self
                .entries
                .iter()
                .map(|(&s, &n)| {
                    let s = match s {
                        Slot::Bidegree(p, q) => Slot::Bidegree(q, p),
                        other => other,
                    };
                    (s, n)
                })
                .collect(),
        }
    }
}
