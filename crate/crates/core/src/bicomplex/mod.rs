//! Bounded double complexes with an optional real structure, their
//! morphisms, and the constructions performed on them.
//!
//! A complex stores, for each bidegree `(p, q)` inside its window, the
//! dimension of `A^{p,q}` and the matrices of `∂₁: A^{p,q} → A^{p+1,q}`,
//! `∂₂: A^{p,q} → A^{p,q+1}` and, when present, of the antilinear real
//! structure `σ: A^{p,q} → A^{q,p}`, acting as `v ↦ S·conj(v)`.

mod constructions;
mod e1;
mod serial;
mod shapes;

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use crate::exactlin::Matrix;

pub use constructions::{direct_sum, direct_sum_many, dual, quotient, shift, tensor, transpose, DirectSum};
pub use e1::{is_e1_isomorphism, E1Report, E1Witness};
pub use serial::{from_text, to_text, SerialError};
pub use shapes::{change_basis, dot, random_complex, square, zero_complex, zigzag, Shape};

pub type Bidegree = (i32, i32);

/// The bidegree rectangle `[p_min, p_max] × [q_min, q_max]`; empty when
/// either range is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub p_min: i32,
    pub p_max: i32,
    pub q_min: i32,
    pub q_max: i32,
}

impl Window {
    pub const EMPTY: Window = Window {
        p_min: 0,
        p_max: -1,
        q_min: 0,
        q_max: -1,
    };

    pub fn new(p_min: i32, p_max: i32, q_min: i32, q_max: i32) -> Self {
        Self {
            p_min,
            p_max,
            q_min,
            q_max,
        }
    }

    pub fn square(lo: i32, hi: i32) -> Self {
        Self::new(lo, hi, lo, hi)
    }

    pub fn point(p: i32, q: i32) -> Self {
        Self::new(p, p, q, q)
    }

    pub fn is_empty(&self) -> bool {
        self.p_min > self.p_max || self.q_min > self.q_max
    }

    pub fn contains(&self, (p, q): Bidegree) -> bool {
        !self.is_empty() && (self.p_min..=self.p_max).contains(&p) && (self.q_min..=self.q_max).contains(&q)
    }

    pub fn width(&self) -> i32 {
        if self.is_empty() {
            0
        } else {
            self.p_max - self.p_min
        }
    }

    pub fn height(&self) -> i32 {
        if self.is_empty() {
            0
        } else {
            self.q_max - self.q_min
        }
    }

    pub fn union(&self, other: &Window) -> Window {
        if self.is_empty() {
            return *other;
        }
        if other.is_empty() {
            return *self;
        }
        Window::new(
            self.p_min.min(other.p_min),
            self.p_max.max(other.p_max),
            self.q_min.min(other.q_min),
            self.q_max.max(other.q_max),
        )
    }

    pub fn translate(&self, dp: i32, dq: i32) -> Window {
        if self.is_empty() {
            return *self;
        }
        Window::new(self.p_min + dp, self.p_max + dp, self.q_min + dq, self.q_max + dq)
    }

    pub fn transpose(&self) -> Window {
        if self.is_empty() {
            return *self;
        }
        Window::new(self.q_min, self.q_max, self.p_min, self.p_max)
    }

    /// `{a + b : a ∈ self, b ∈ other}`
    pub fn minkowski(&self, other: &Window) -> Window {
        if self.is_empty() || other.is_empty() {
            return Window::EMPTY;
        }
        Window::new(
            self.p_min + other.p_min,
            self.p_max + other.p_max,
            self.q_min + other.q_min,
            self.q_max + other.q_max,
        )
    }

    /// Bidegrees in lexicographic `(p, q)` order.
    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> {
        let w = *self;
        let ps = if w.is_empty() { 1..=0 } else { w.p_min..=w.p_max };
        ps.flat_map(move |p| (w.q_min..=w.q_max).map(move |q| (p, q)))
    }

    /// Smallest and largest total degree `p + q`.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        (!self.is_empty()).then(|| (self.p_min + self.q_min, self.p_max + self.q_max))
    }

    pub fn is_symmetric(&self) -> bool {
        self.p_min == self.q_min && self.p_max == self.q_max
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("[]")
        } else {
            write!(f, "[{}..{}]x[{}..{}]", self.p_min, self.p_max, self.q_min, self.q_max)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BicomplexError {
    #[error("bidegree {0:?} lies outside the window")]
    OutsideWindow(Bidegree),
    #[error("{what} block at {at:?} has shape {got:?}, expected {expected:?}")]
    Shape {
        what: &'static str,
        at: Bidegree,
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("real structure has no block at {0:?}")]
    MissingSigma(Bidegree),
    #[error("label list at {0:?} does not match the dimension")]
    Labels(Bidegree),
    #[error("morphism does not commute with {differential} at {at:?}")]
    NotAMorphism { differential: &'static str, at: Bidegree },
    #[error("morphism is not injective at {0:?}")]
    NotInjective(Bidegree),
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("window {0} is too small for any shape")]
    WindowTooSmall(Window),
}

/// Bounded double complex with optional real structure. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    window: Window,
    dims: BTreeMap<Bidegree, usize>,
    d1: BTreeMap<Bidegree, Matrix>,
    d2: BTreeMap<Bidegree, Matrix>,
    sigma: Option<BTreeMap<Bidegree, Matrix>>,
    labels: Option<BTreeMap<Bidegree, Vec<String>>>,
}

/// Collects blocks and checks their shapes on [`ComplexBuilder::build`].
#[derive(Clone, Debug)]
pub struct ComplexBuilder {
    window: Window,
    dims: BTreeMap<Bidegree, usize>,
    d1: BTreeMap<Bidegree, Matrix>,
    d2: BTreeMap<Bidegree, Matrix>,
    sigma: Option<BTreeMap<Bidegree, Matrix>>,
    labels: Option<BTreeMap<Bidegree, Vec<String>>>,
}

impl ComplexBuilder {
    pub fn new(window: Window) -> Self {
        Self {
            window,
            dims: BTreeMap::new(),
            d1: BTreeMap::new(),
            d2: BTreeMap::new(),
            sigma: None,
            labels: None,
        }
    }

    pub fn dim(mut self, at: Bidegree, n: usize) -> Self {
        self.set_dim(at, n);
        self
    }

    pub fn set_dim(&mut self, at: Bidegree, n: usize) {
        if n == 0 {
            self.dims.remove(&at);
        } else {
            self.dims.insert(at, n);
        }
    }

    pub fn d1(mut self, at: Bidegree, m: Matrix) -> Self {
        self.set_d1(at, m);
        self
    }

    pub fn set_d1(&mut self, at: Bidegree, m: Matrix) {
        self.d1.insert(at, m);
    }

    pub fn d2(mut self, at: Bidegree, m: Matrix) -> Self {
        self.set_d2(at, m);
        self
    }

    pub fn set_d2(&mut self, at: Bidegree, m: Matrix) {
        self.d2.insert(at, m);
    }

    /// Enables the real structure; every nonzero bidegree then needs a block.
    pub fn with_sigma(mut self) -> Self {
        self.sigma.get_or_insert_with(BTreeMap::new);
        self
    }

    pub fn sigma(mut self, at: Bidegree, m: Matrix) -> Self {
        self.set_sigma(at, m);
        self
    }

    pub fn set_sigma(&mut self, at: Bidegree, m: Matrix) {
        self.sigma.get_or_insert_with(BTreeMap::new).insert(at, m);
    }

    pub fn labels(mut self, at: Bidegree, names: Vec<String>) -> Self {
        self.set_labels(at, names);
        self
    }

    pub fn set_labels(&mut self, at: Bidegree, names: Vec<String>) {
        self.labels.get_or_insert_with(BTreeMap::new).insert(at, names);
    }

    fn dim_of(&self, at: Bidegree) -> usize {
        self.dims.get(&at).copied().unwrap_or(0)
    }

    pub fn build(self) -> Result<DoubleComplex, BicomplexError> {
        for &at in self.dims.keys() {
            if !self.window.contains(at) {
                return Err(BicomplexError::OutsideWindow(at));
            }
        }
        let check = |what: &'static str, at: Bidegree, m: &Matrix, target: Bidegree| {
            let expected = (self.dim_of(target), self.dim_of(at));
            if (m.rows(), m.cols()) != expected {
                return Err(BicomplexError::Shape {
                    what,
                    at,
                    got: (m.rows(), m.cols()),
                    expected,
                });
            }
            Ok(())
        };
        for (&(p, q), m) in &self.d1 {
            check("d1", (p, q), m, (p + 1, q))?;
        }
        for (&(p, q), m) in &self.d2 {
            check("d2", (p, q), m, (p, q + 1))?;
        }
        if let Some(sigma) = &self.sigma {
            for (&(p, q), m) in sigma {
                check("sigma", (p, q), m, (q, p))?;
            }
            for &at in self.dims.keys() {
                if !sigma.contains_key(&at) {
                    return Err(BicomplexError::MissingSigma(at));
                }
            }
        }
        if let Some(labels) = &self.labels {
            for (&at, names) in labels {
                if names.len() != self.dim_of(at) {
                    return Err(BicomplexError::Labels(at));
                }
            }
        }
        let prune = |m: BTreeMap<Bidegree, Matrix>| -> BTreeMap<Bidegree, Matrix> {
            m.into_iter().filter(|(_, b)| !b.is_zero()).collect()
        };
        let sigma = self.sigma.map(|s| {
            s.into_iter()
                .filter(|(_, b)| b.rows() > 0 || b.cols() > 0)
                .collect()
        });
        let labels = self.labels.map(|l| l.into_iter().filter(|(_, v)| !v.is_empty()).collect());
        Ok(DoubleComplex {
            window: self.window,
            dims: self.dims,
            d1: prune(self.d1),
            d2: prune(self.d2),
            sigma,
            labels,
        })
    }
}

impl DoubleComplex {
    pub fn builder(window: Window) -> ComplexBuilder {
        ComplexBuilder::new(window)
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn dim(&self, at: Bidegree) -> usize {
        self.dims.get(&at).copied().unwrap_or(0)
    }

    /// Nonzero pieces in `(p, q)` order.
    pub fn support(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.dims.iter().map(|(&b, &n)| (b, n))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn d1(&self, (p, q): Bidegree) -> Cow<'_, Matrix> {
        match self.d1.get(&(p, q)) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(self.dim((p + 1, q)), self.dim((p, q)))),
        }
    }

    pub fn d2(&self, (p, q): Bidegree) -> Cow<'_, Matrix> {
        match self.d2.get(&(p, q)) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(self.dim((p, q + 1)), self.dim((p, q)))),
        }
    }

    pub fn has_sigma(&self) -> bool {
        self.sigma.is_some()
    }

    pub fn sigma(&self, (p, q): Bidegree) -> Option<Cow<'_, Matrix>> {
        let s = self.sigma.as_ref()?;
        Some(match s.get(&(p, q)) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(self.dim((q, p)), self.dim((p, q)))),
        })
    }

    pub fn labels(&self, at: Bidegree) -> Option<&[String]> {
        self.labels.as_ref()?.get(&at).map(|v| v.as_slice())
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    /// Same complex without the real structure.
    pub fn without_sigma(&self) -> DoubleComplex {
        DoubleComplex {
            sigma: None,
            ..self.clone()
        }
    }

    /// Same complex without basis labels.
    pub fn without_labels(&self) -> DoubleComplex {
        DoubleComplex {
            labels: None,
            ..self.clone()
        }
    }

    /// `Σ (-1)^{p+q} dim A^{p,q}`
    pub fn euler_characteristic(&self) -> i64 {
        self.support()
            .map(|((p, q), n)| if (p + q).rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    D1Squared,
    D2Squared,
    Anticommutation,
    SigmaInvolution,
    SigmaIntertwining,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub at: Bidegree,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ViolationKind::D1Squared => "d1∘d1 ≠ 0",
            ViolationKind::D2Squared => "d2∘d2 ≠ 0",
            ViolationKind::Anticommutation => "d1∘d2 + d2∘d1 ≠ 0",
            ViolationKind::SigmaInvolution => "σ∘σ ≠ id",
            ViolationKind::SigmaIntertwining => "σ∘d1 ≠ d2∘σ",
        };
        write!(f, "({}, {}): {}", self.at.0, self.at.1, what)
    }
}

/// Every failed double-complex identity, keyed by the source bidegree.
/// Empty iff the complex is valid.
pub fn validate(a: &DoubleComplex) -> Vec<Violation> {
    let mut out = Vec::new();
    for ((p, q), _) in a.support() {
        let d1 = a.d1((p, q));
        let d2 = a.d2((p, q));
        if !a.d1((p + 1, q)).mul(&d1).is_zero() {
            out.push(Violation {
                at: (p, q),
                kind: ViolationKind::D1Squared,
            });
        }
        if !a.d2((p, q + 1)).mul(&d2).is_zero() {
            out.push(Violation {
                at: (p, q),
                kind: ViolationKind::D2Squared,
            });
        }
        let anti = a.d1((p, q + 1)).mul(&d2).add(&a.d2((p + 1, q)).mul(&d1));
        if !anti.is_zero() {
            out.push(Violation {
                at: (p, q),
                kind: ViolationKind::Anticommutation,
            });
        }
        if let Some(s) = a.sigma((p, q)) {
            let back = a.sigma((q, p)).expect("sigma present");
            if !back.conj().mul(&s).is_identity() {
                out.push(Violation {
                    at: (p, q),
                    kind: ViolationKind::SigmaInvolution,
                });
            }
            // ∂₂σ = σ∂₁ on A^{p,q}, both landing in A^{q,p+1}
            let lhs = a.d2((q, p)).mul(&s);
            let rhs = a.sigma((p + 1, q)).expect("sigma present").mul(&d1.conj());
            if lhs != rhs {
                out.push(Violation {
                    at: (p, q),
                    kind: ViolationKind::SigmaIntertwining,
                });
            }
        }
    }
    out
}

/// Bidegree-preserving linear map commuting with both differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: DoubleComplex,
    target: DoubleComplex,
    blocks: BTreeMap<Bidegree, Matrix>,
}

impl Morphism {
    /// Checks block shapes and compatibility with `∂₁`, `∂₂`.
    pub fn new(
        source: DoubleComplex,
        target: DoubleComplex,
        blocks: BTreeMap<Bidegree, Matrix>,
    ) -> Result<Self, BicomplexError> {
        for (&at, m) in &blocks {
            let expected = (target.dim(at), source.dim(at));
            if (m.rows(), m.cols()) != expected {
                return Err(BicomplexError::Shape {
                    what: "morphism",
                    at,
                    got: (m.rows(), m.cols()),
                    expected,
                });
            }
        }
        let blocks: BTreeMap<_, _> = blocks.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        let f = Self {
            source,
            target,
            blocks,
        };
        for ((p, q), _) in f.source.support() {
            let lhs = f.target.d1((p, q)).mul(&f.block((p, q)));
            let rhs = f.block((p + 1, q)).mul(&f.source.d1((p, q)));
            if lhs != rhs {
                return Err(BicomplexError::NotAMorphism {
                    differential: "d1",
                    at: (p, q),
                });
            }
            let lhs = f.target.d2((p, q)).mul(&f.block((p, q)));
            let rhs = f.block((p, q + 1)).mul(&f.source.d2((p, q)));
            if lhs != rhs {
                return Err(BicomplexError::NotAMorphism {
                    differential: "d2",
                    at: (p, q),
                });
            }
        }
        Ok(f)
    }

    pub fn identity(a: &DoubleComplex) -> Self {
        let blocks = a.support().map(|(b, n)| (b, Matrix::identity(n))).collect();
        Self {
            source: a.clone(),
            target: a.clone(),
            blocks,
        }
    }

    pub fn zero(source: &DoubleComplex, target: &DoubleComplex) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            blocks: BTreeMap::new(),
        }
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &Morphism) -> Result<Morphism, BicomplexError> {
        if first.target != self.source {
            return Err(BicomplexError::NotComposable);
        }
        let blocks = first
            .source
            .support()
            .map(|(b, _)| (b, self.block(b).mul(&first.block(b))))
            .collect();
        Morphism::new(first.source.clone(), self.target.clone(), blocks)
    }

    pub fn source(&self) -> &DoubleComplex {
        &self.source
    }

    pub fn target(&self) -> &DoubleComplex {
        &self.target
    }

    pub fn block(&self, at: Bidegree) -> Cow<'_, Matrix> {
        match self.blocks.get(&at) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(self.target.dim(at), self.source.dim(at))),
        }
    }

    pub fn blocks(&self) -> impl Iterator<Item = (Bidegree, &Matrix)> {
        self.blocks.iter().map(|(&b, m)| (b, m))
    }

    /// True when some block is nonzero.
    pub fn is_nonzero(&self) -> bool {
        self.blocks.values().any(|m| !m.is_zero())
    }
}
