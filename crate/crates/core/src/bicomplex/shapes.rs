//! The indecomposable building blocks (dots, squares, zigzags) and the
//! seeded random-complex generator built from them.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{Basis, Coordinates, ExactScalar, Matrix};

use super::{Bidegree, BicomplexError, ComplexBuilder, DoubleComplex, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Edge {
    D1,
    D2,
}

/// A finite diagram of one-dimensional nodes joined by `∂₁` / `∂₂` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    nodes: Vec<Bidegree>,
    edges: Vec<(usize, usize, Edge, ExactScalar)>,
}

impl Shape {
    pub fn dot(p: i32, q: i32) -> Self {
        Self {
            nodes: vec![(p, q)],
            edges: vec![],
        }
    }

    /// Corners `(p,q)`, `(p+1,q)`, `(p,q+1)`, `(p+1,q+1)`; `∂₂` edges are the
    /// identity, the bottom `∂₁` edge is `+1` and the top one `-1`.
    pub fn square(p: i32, q: i32) -> Self {
        let one = ExactScalar::from_int(1);
        Self {
            nodes: vec![(p, q), (p + 1, q), (p, q + 1), (p + 1, q + 1)],
            edges: vec![
                (0, 1, Edge::D1, one.clone()),
                (0, 2, Edge::D2, one.clone()),
                (1, 3, Edge::D2, one.clone()),
                (2, 3, Edge::D1, -one),
            ],
        }
    }

    /// Zigzag cut out of the staircase `s₀ → t₀ ← s₁ → t₁ ← …` anchored at
    /// `(p, q)`, where `sⱼ = (p+j, q-j)` maps by `∂₁` to `tⱼ = (p+j+1, q-j)`
    /// and `sⱼ₊₁` maps by `∂₂` to `tⱼ`. Nodes `first .. first + len` are kept.
    pub fn zigzag(p: i32, q: i32, first: usize, len: usize) -> Self {
        let node = |k: usize| {
            let j = (k / 2) as i32;
            if k % 2 == 0 {
                (p + j, q - j)
            } else {
                (p + j + 1, q - j)
            }
        };
        let nodes: Vec<_> = (first..first + len).map(node).collect();
        let mut edges = Vec::new();
        for k in first..first + len {
            let local = k - first;
            if k % 2 == 0 {
                // source s_j: ∂₁ to t_j (k+1)
                if k + 1 < first + len {
                    edges.push((local, local + 1, Edge::D1, ExactScalar::from_int(1)));
                }
                // ∂₂ to t_{j-1} (k-1)
                if k >= 1 && k - 1 >= first {
                    edges.push((local, local - 1, Edge::D2, ExactScalar::from_int(1)));
                }
            }
        }
        Self { nodes, edges }
    }

    /// Mirror image: bidegrees swapped, `∂₁` ↔ `∂₂`, coefficients conjugated.
    pub fn transpose(&self) -> Self {
        Self {
            nodes: self.nodes.iter().map(|&(p, q)| (q, p)).collect(),
            edges: self
                .edges
                .iter()
                .map(|(s, t, e, c)| {
                    let e = match e {
                        Edge::D1 => Edge::D2,
                        Edge::D2 => Edge::D1,
                    };
                    (*s, *t, e, c.conj())
                })
                .collect(),
        }
    }

    pub fn nodes(&self) -> &[Bidegree] {
        &self.nodes
    }

    pub fn fits(&self, w: &Window) -> bool {
        self.nodes.iter().all(|&b| w.contains(b))
    }
}

/// Direct sum of shapes. `mirror[i] = j` pairs shape `i` with its transpose
/// `j` (possibly itself) and switches on the real structure exchanging them.
pub(crate) fn assemble(window: Window, shapes: &[Shape], mirror: Option<&[usize]>) -> DoubleComplex {
    let mut dims: BTreeMap<Bidegree, usize> = BTreeMap::new();
    let mut index: Vec<Vec<usize>> = Vec::with_capacity(shapes.len());
    for s in shapes {
        index.push(
            s.nodes
                .iter()
                .map(|b| {
                    let n = dims.entry(*b).or_insert(0);
                    *n += 1;
                    *n - 1
                })
                .collect(),
        );
    }
    let dim = |b: Bidegree| dims.get(&b).copied().unwrap_or(0);
    let mut d1: BTreeMap<Bidegree, Matrix> = BTreeMap::new();
    let mut d2: BTreeMap<Bidegree, Matrix> = BTreeMap::new();
    for (si, s) in shapes.iter().enumerate() {
        for (from, to, e, c) in &s.edges {
            let b = s.nodes[*from];
            let (store, tb) = match e {
                Edge::D1 => (&mut d1, (b.0 + 1, b.1)),
                Edge::D2 => (&mut d2, (b.0, b.1 + 1)),
            };
            debug_assert_eq!(s.nodes[*to], tb);
            let m = store.entry(b).or_insert_with(|| Matrix::zeros(dim(tb), dim(b)));
            m.set(index[si][*to], index[si][*from], c.clone());
        }
    }
    let mut builder = ComplexBuilder::new(window);
    for (&b, &n) in &dims {
        builder.set_dim(b, n);
    }
    for (b, m) in d1 {
        builder.set_d1(b, m);
    }
    for (b, m) in d2 {
        builder.set_d2(b, m);
    }
    if let Some(mirror) = mirror {
        let mut sigma: BTreeMap<Bidegree, Matrix> = BTreeMap::new();
        for (si, s) in shapes.iter().enumerate() {
            let mi = mirror[si];
            for (k, &(p, q)) in s.nodes.iter().enumerate() {
                debug_assert_eq!(shapes[mi].nodes[k], (q, p));
                let m = sigma
                    .entry((p, q))
                    .or_insert_with(|| Matrix::zeros(dim((q, p)), dim((p, q))));
                m.set(index[mi][k], index[si][k], ExactScalar::from_int(1));
            }
        }
        builder = builder.with_sigma();
        for (b, m) in sigma {
            builder.set_sigma(b, m);
        }
    }
    builder.build().expect("shape assembly is consistent")
}

pub fn zero_complex() -> DoubleComplex {
    ComplexBuilder::new(Window::EMPTY).with_sigma().build().expect("empty complex")
}

/// One dimension at `(p, q)`, zero differentials; real (σ = 1) when `p = q`.
pub fn dot(p: i32, q: i32) -> DoubleComplex {
    let shapes = [Shape::dot(p, q)];
    let mirror = (p == q).then_some(&[0usize][..]);
    assemble(Window::point(p, q), &shapes, mirror)
}

pub fn square(p: i32, q: i32) -> DoubleComplex {
    assemble(Window::new(p, p + 1, q, q + 1), &[Shape::square(p, q)], None)
}

pub fn zigzag(p: i32, q: i32, first: usize, len: usize) -> DoubleComplex {
    let s = Shape::zigzag(p, q, first, len);
    let w = s
        .nodes
        .iter()
        .fold(Window::EMPTY, |w, &(a, b)| w.union(&Window::point(a, b)));
    assemble(w, &[s], None)
}

/// Conjugates every block by the invertible matrices `g`: differentials
/// become `g·D·g⁻¹` and σ becomes `g·S·conj(g⁻¹)`. Bidegrees without an
/// entry keep their basis. Labels are dropped.
pub fn change_basis(a: &DoubleComplex, g: &BTreeMap<Bidegree, Matrix>) -> DoubleComplex {
    let mut inv: BTreeMap<Bidegree, Matrix> = BTreeMap::new();
    for (&b, m) in g {
        let n = m.rows();
        let solver = Coordinates::new(&Basis::new(n, m.columns()).expect("change of basis is invertible"));
        let cols: Vec<_> = Basis::standard(n)
            .vectors()
            .iter()
            .map(|e| solver.coords(e).expect("full rank"))
            .collect();
        inv.insert(b, Matrix::from_columns(n, &cols));
    }
    let fwd = |b: Bidegree| g.get(&b).cloned().unwrap_or_else(|| Matrix::identity(a.dim(b)));
    let bwd = |b: Bidegree| inv.get(&b).cloned().unwrap_or_else(|| Matrix::identity(a.dim(b)));
    let mut builder = ComplexBuilder::new(a.window());
    if a.has_sigma() {
        builder = builder.with_sigma();
    }
    for (b, n) in a.support() {
        let (p, q) = b;
        builder.set_dim(b, n);
        builder.set_d1(b, fwd((p + 1, q)).mul(&a.d1(b)).mul(&bwd(b)));
        builder.set_d2(b, fwd((p, q + 1)).mul(&a.d2(b)).mul(&bwd(b)));
        if let Some(s) = a.sigma(b) {
            builder.set_sigma(b, fwd((q, p)).mul(&s).mul(&bwd(b).conj()));
        }
    }
    builder.build().expect("change of basis preserves shapes")
}

fn random_unit_scalar(rng: &mut ChaCha8Rng) -> ExactScalar {
    match rng.gen_range(0..6) {
        0 => ExactScalar::gaussian(0, 1),
        1 => ExactScalar::gaussian(-1, 1),
        2 => ExactScalar::from_int(2),
        3 => ExactScalar::from_ratio(-1, 2),
        4 => ExactScalar::from_int(-1),
        _ => ExactScalar::from_int(1),
    }
}

/// `L·U` with unit diagonals and sparse small Gaussian-integer entries.
fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            if rng.gen_bool(0.35) {
                l.set(i, j, ExactScalar::gaussian(rng.gen_range(-2..=2), rng.gen_range(-1..=1)));
            }
            if rng.gen_bool(0.35) {
                u.set(j, i, ExactScalar::gaussian(rng.gen_range(-2..=2), rng.gen_range(-1..=1)));
            }
        }
    }
    l.mul(&u)
}

fn random_shape(rng: &mut ChaCha8Rng, w: &Window) -> Shape {
    for _ in 0..32 {
        let p = rng.gen_range(w.p_min..=w.p_max);
        let q = rng.gen_range(w.q_min..=w.q_max);
        let mut s = match rng.gen_range(0..10) {
            0..=2 => Shape::dot(p, q),
            3..=5 => Shape::square(p, q),
            _ => {
                let len = rng.gen_range(2..=5);
                Shape::zigzag(p, q, rng.gen_range(0..2), len)
            }
        };
        // random nonzero edge scalars keep the shape indecomposable
        for e in s.edges.iter_mut() {
            let c = random_unit_scalar(rng);
            e.3 = &e.3 * &c;
        }
        // squares need the two paths to still anticommute
        if s.nodes.len() == 4 && s.edges.len() == 4 {
            s = Shape::square(p, q);
        }
        if s.fits(w) {
            return s;
        }
    }
    let p = rng.gen_range(w.p_min..=w.p_max);
    let q = rng.gen_range(w.q_min..=w.q_max);
    Shape::dot(p, q)
}

/// Seeded random complex: `size` shapes placed inside `window`, followed by a
/// random change of basis in every bidegree. A symmetric window yields a
/// complex with real structure (shapes come in mirror pairs).
pub fn random_complex(seed: u64, window: Window, size: usize) -> Result<DoubleComplex, BicomplexError> {
    if window.is_empty() {
        return Err(BicomplexError::WindowTooSmall(window));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shapes = Vec::with_capacity(size);
    let with_sigma = window.is_symmetric();
    let complex = if with_sigma {
        let mut mirror = Vec::with_capacity(size);
        for _ in 0..size / 2 {
            let s = random_shape(&mut rng, &window);
            let t = s.transpose();
            let i = shapes.len();
            mirror.push(i + 1);
            mirror.push(i);
            shapes.push(s);
            shapes.push(t);
        }
        if size % 2 == 1 {
            let p = rng.gen_range(window.p_min..=window.p_max);
            mirror.push(shapes.len());
            shapes.push(Shape::dot(p, p));
        }
        assemble(window, &shapes, Some(&mirror))
    } else {
        for _ in 0..size {
            shapes.push(random_shape(&mut rng, &window));
        }
        assemble(window, &shapes, None)
    };
    let g: BTreeMap<Bidegree, Matrix> = complex
        .support()
        .map(|(b, n)| (b, random_invertible(&mut rng, n)))
        .collect();
    Ok(change_basis(&complex, &g))
}

#[cfg(test)]
mod tests {
    use super::super::validate;
    use super::*;

    #[test]
    fn shapes_are_valid() {
        assert!(validate(&square(1, 2)).is_empty());
        for first in 0..2 {
            for len in 1..6 {
                assert!(validate(&zigzag(0, 3, first, len)).is_empty());
            }
        }
        let z = zigzag(0, 0, 0, 2);
        assert_eq!(z.dim((0, 0)), 1);
        assert_eq!(z.dim((1, 0)), 1);
        assert!(!z.d1((0, 0)).is_zero());
    }

    #[test]
    fn random_complexes_are_valid_and_deterministic() {
        for seed in 0..40 {
            let w = if seed % 2 == 0 { Window::square(0, 3) } else { Window::new(-1, 2, 0, 4) };
            let a = random_complex(seed, w, 10).unwrap();
            assert!(validate(&a).is_empty(), "seed {seed}: {:?}", validate(&a));
            assert_eq!(a.has_sigma(), w.is_symmetric());
            assert_eq!(a, random_complex(seed, w, 10).unwrap());
        }
    }

    #[test]
    fn empty_window_is_rejected() {
        assert!(matches!(
            random_complex(1, Window::EMPTY, 3),
            Err(BicomplexError::WindowTooSmall(_))
        ));
        // a single bidegree still admits dots
        assert_eq!(random_complex(1, Window::point(0, 0), 3).unwrap().dim((0, 0)), 3);
    }
}
