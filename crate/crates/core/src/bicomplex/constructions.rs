use std::collections::BTreeMap;

use crate::exactlin::{rank, rref, Basis, Coordinates, ExactScalar, Matrix};

use super::{Bidegree, BicomplexError, ComplexBuilder, DoubleComplex, Morphism, Window};

/// `A[i]` with `(A[i])^{p,q} = A^{p-i,q-i}`; differentials and σ unchanged.
pub fn shift(a: &DoubleComplex, i: i32) -> DoubleComplex {
    let mv = |(p, q): Bidegree| (p + i, q + i);
    DoubleComplex {
        window: a.window.translate(i, i),
        dims: a.dims.iter().map(|(&b, &n)| (mv(b), n)).collect(),
        d1: a.d1.iter().map(|(&b, m)| (mv(b), m.clone())).collect(),
        d2: a.d2.iter().map(|(&b, m)| (mv(b), m.clone())).collect(),
        sigma: a
            .sigma
            .as_ref()
            .map(|s| s.iter().map(|(&b, m)| (mv(b), m.clone())).collect()),
        labels: a
            .labels
            .as_ref()
            .map(|l| l.iter().map(|(&b, v)| (mv(b), v.clone())).collect()),
    }
}

/// Swaps the roles of `p` and `q` (and of `∂₁`, `∂₂`). The real structure
/// carries over with the same blocks.
pub fn transpose(a: &DoubleComplex) -> DoubleComplex {
    let sw = |(p, q): Bidegree| (q, p);
    DoubleComplex {
        window: a.window.transpose(),
        dims: a.dims.iter().map(|(&b, &n)| (sw(b), n)).collect(),
        d1: a.d2.iter().map(|(&b, m)| (sw(b), m.clone())).collect(),
        d2: a.d1.iter().map(|(&b, m)| (sw(b), m.clone())).collect(),
        sigma: a
            .sigma
            .as_ref()
            .map(|s| s.iter().map(|(&b, m)| (sw(b), m.clone())).collect()),
        labels: a
            .labels
            .as_ref()
            .map(|l| l.iter().map(|(&b, v)| (sw(b), v.clone())).collect()),
    }
}

/// A direct sum together with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub complex: DoubleComplex,
    pub inclusions: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

/// Blockwise direct sum of any number of summands, in order. σ survives
/// only if every summand carries one; labels likewise.
pub fn direct_sum_many(parts: &[&DoubleComplex]) -> DirectSum {
    let window = parts.iter().fold(Window::EMPTY, |w, a| w.union(&a.window));
    let mut offsets: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
    let mut totals: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for a in parts {
        for (b, _) in a.support() {
            totals.entry(b).or_insert(0);
        }
    }
    for (&b, total) in totals.iter_mut() {
        let mut offs = Vec::with_capacity(parts.len());
        for a in parts {
            offs.push(*total);
            *total += a.dim(b);
        }
        offsets.insert(b, offs);
    }
    let off = |b: Bidegree, k: usize| offsets.get(&b).map_or(0, |o| o[k]);
    let total = |b: Bidegree| totals.get(&b).copied().unwrap_or(0);

    let with_sigma = !parts.is_empty() && parts.iter().all(|a| a.has_sigma());
    let with_labels = !parts.is_empty() && parts.iter().all(|a| a.has_labels());
    let mut builder = ComplexBuilder::new(window);
    if with_sigma {
        builder = builder.with_sigma();
    }
    for (&b, &n) in &totals {
        builder.set_dim(b, n);
        let (p, q) = b;
        let mut d1 = Matrix::zeros(total((p + 1, q)), n);
        let mut d2 = Matrix::zeros(total((p, q + 1)), n);
        let mut sigma = Matrix::zeros(total((q, p)), n);
        let mut labels = Vec::new();
        for (k, a) in parts.iter().enumerate() {
            if a.dim(b) == 0 {
                continue;
            }
            d1.put_block(off((p + 1, q), k), off(b, k), &a.d1(b));
            d2.put_block(off((p, q + 1), k), off(b, k), &a.d2(b));
            if with_sigma {
                sigma.put_block(off((q, p), k), off(b, k), &a.sigma(b).expect("summand has sigma"));
            }
            if with_labels {
                labels.extend(a.labels(b).unwrap_or_default().iter().cloned());
            }
        }
        builder.set_d1(b, d1);
        builder.set_d2(b, d2);
        if with_sigma {
            builder.set_sigma(b, sigma);
        }
        if with_labels {
            builder.set_labels(b, labels);
        }
    }
    let complex = builder.build().expect("direct sum blocks are consistent");

    let mut inclusions = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    for (k, a) in parts.iter().enumerate() {
        let mut inc = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for (b, n) in a.support() {
            let mut i = Matrix::zeros(total(b), n);
            i.put_block(off(b, k), 0, &Matrix::identity(n));
            proj.insert(b, i.transpose());
            inc.insert(b, i);
        }
        inclusions.push(Morphism {
            source: (*a).clone(),
            target: complex.clone(),
            blocks: inc,
        });
        projections.push(Morphism {
            source: complex.clone(),
            target: (*a).clone(),
            blocks: proj,
        });
    }
    DirectSum {
        complex,
        inclusions,
        projections,
    }
}

/// `a ⊕ b` with both summand inclusions.
pub fn direct_sum(a: &DoubleComplex, b: &DoubleComplex) -> (DoubleComplex, Morphism, Morphism) {
    let DirectSum {
        complex,
        mut inclusions,
        ..
    } = direct_sum_many(&[a, b]);
    let inc_b = inclusions.pop().expect("two summands");
    let inc_a = inclusions.pop().expect("two summands");
    (complex, inc_a, inc_b)
}

/// Tensor product with `∂(x⊗y) = ∂x⊗y + (-1)^{p₁+q₁} x⊗∂y` for both
/// differentials and `σ(x⊗y) = σx⊗σy`.
pub fn tensor(a: &DoubleComplex, b: &DoubleComplex) -> DoubleComplex {
    let window = a.window.minkowski(&b.window);
    // summands of each bidegree, ordered by the bidegree of the left factor
    let mut layout: BTreeMap<Bidegree, Vec<(Bidegree, Bidegree, usize)>> = BTreeMap::new();
    for (ba, _) in a.support() {
        for (bb, _) in b.support() {
            let at = (ba.0 + bb.0, ba.1 + bb.1);
            layout.entry(at).or_default().push((ba, bb, 0));
        }
    }
    let mut totals: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for (&at, parts) in layout.iter_mut() {
        parts.sort();
        let mut o = 0;
        for part in parts.iter_mut() {
            part.2 = o;
            o += a.dim(part.0) * b.dim(part.1);
        }
        totals.insert(at, o);
    }
    let total = |at: Bidegree| totals.get(&at).copied().unwrap_or(0);

    let with_sigma = a.has_sigma() && b.has_sigma();
    let with_labels = a.has_labels() && b.has_labels();
    let mut builder = ComplexBuilder::new(window);
    if with_sigma {
        builder = builder.with_sigma();
    }
    for (&at, parts) in &layout {
        let (p, q) = at;
        let n = total(at);
        builder.set_dim(at, n);
        let mut d1 = Matrix::zeros(total((p + 1, q)), n);
        let mut d2 = Matrix::zeros(total((p, q + 1)), n);
        let mut sigma = Matrix::zeros(total((q, p)), n);
        let mut labels = Vec::new();
        for &(ba, bb, o) in parts {
            let (na, nb) = (a.dim(ba), b.dim(bb));
            let sign = if (ba.0 + ba.1).rem_euclid(2) == 0 {
                ExactScalar::from_int(1)
            } else {
                ExactScalar::from_int(-1)
            };
            // ∂x ⊗ y
            for (diff, step) in [(0usize, (1, 0)), (1usize, (0, 1))] {
                let target_at = (p + step.0, q + step.1);
                let ma = if diff == 0 { a.d1(ba) } else { a.d2(ba) };
                let dest_a = (ba.0 + step.0, ba.1 + step.1);
                if a.dim(dest_a) > 0 && !ma.is_zero() {
                    let blk = ma.kron(&Matrix::identity(nb));
                    let row0 = offset_in(&layout, target_at, dest_a, bb);
                    let m = if diff == 0 { &mut d1 } else { &mut d2 };
                    add_block(m, row0, o, &blk);
                }
                let mb = if diff == 0 { b.d1(bb) } else { b.d2(bb) };
                let dest_b = (bb.0 + step.0, bb.1 + step.1);
                if b.dim(dest_b) > 0 && !mb.is_zero() {
                    let blk = Matrix::identity(na).kron(&mb).scale(&sign);
                    let row0 = offset_in(&layout, target_at, ba, dest_b);
                    let m = if diff == 0 { &mut d1 } else { &mut d2 };
                    add_block(m, row0, o, &blk);
                }
            }
            if with_sigma {
                let sa = a.sigma(ba).expect("sigma");
                let sb = b.sigma(bb).expect("sigma");
                let row0 = offset_in(&layout, (q, p), (ba.1, ba.0), (bb.1, bb.0));
                sigma.put_block(row0, o, &sa.kron(&sb));
            }
            if with_labels {
                let la = a.labels(ba).unwrap_or_default();
                let lb = b.labels(bb).unwrap_or_default();
                for x in la {
                    for y in lb {
                        labels.push(format!("{x}⊗{y}"));
                    }
                }
            }
        }
        builder.set_d1(at, d1);
        builder.set_d2(at, d2);
        if with_sigma {
            builder.set_sigma(at, sigma);
        }
        if with_labels {
            builder.set_labels(at, labels);
        }
    }
    builder.build().expect("tensor blocks are consistent")
}

fn offset_in(
    layout: &BTreeMap<Bidegree, Vec<(Bidegree, Bidegree, usize)>>,
    at: Bidegree,
    ba: Bidegree,
    bb: Bidegree,
) -> usize {
    layout[&at]
        .iter()
        .find(|(x, y, _)| *x == ba && *y == bb)
        .map(|&(_, _, o)| o)
        .expect("summand exists")
}

fn add_block(m: &mut Matrix, r0: usize, c0: usize, blk: &Matrix) {
    for (r, c, v) in blk.iter() {
        m.add_to(r0 + r, c0 + c, v);
    }
}

/// Finite-dimensional analogue of the currents complex: degree `(p, q)` is
/// the dual of `A^{n-p,n-q}` and both differentials are the transposes
/// twisted by `(-1)^{p+q+1}`. σ dualizes to `conj(Sᵀ)`.
pub fn dual(a: &DoubleComplex, n: i32) -> DoubleComplex {
    let fl = |(p, q): Bidegree| (n - p, n - q);
    let w = a.window;
    let window = if w.is_empty() {
        w
    } else {
        Window::new(n - w.p_max, n - w.p_min, n - w.q_max, n - w.q_min)
    };
    let sign = |(p, q): Bidegree| {
        if (p + q + 1).rem_euclid(2) == 0 {
            ExactScalar::from_int(1)
        } else {
            ExactScalar::from_int(-1)
        }
    };
    let mut builder = ComplexBuilder::new(window);
    if a.has_sigma() {
        builder = builder.with_sigma();
    }
    for (b, dim) in a.support() {
        let at = fl(b);
        let (p, q) = at;
        builder.set_dim(at, dim);
        builder.set_d1(at, a.d1((n - p - 1, n - q)).transpose().scale(&sign(at)));
        builder.set_d2(at, a.d2((n - p, n - q - 1)).transpose().scale(&sign(at)));
        if let Some(s) = a.sigma((n - q, n - p)) {
            builder.set_sigma(at, s.transpose().conj());
        }
        if let Some(l) = a.labels(b) {
            builder.set_labels(at, l.iter().map(|x| format!("{x}*")).collect());
        }
    }
    builder.build().expect("dual blocks are consistent")
}

/// Cokernel of a blockwise injective morphism, with the projection from
/// the target. σ is kept when `f` has a σ-stable image.
pub fn quotient(f: &Morphism) -> Result<(DoubleComplex, Morphism), BicomplexError> {
    let src = f.source();
    let tgt = f.target();
    for (b, n) in src.support() {
        if rank(&f.block(b)) != n {
            return Err(BicomplexError::NotInjective(b));
        }
    }
    // Per bidegree: section (chosen standard vectors completing im f) and projection.
    let mut sections: BTreeMap<Bidegree, Matrix> = BTreeMap::new();
    let mut projections: BTreeMap<Bidegree, Matrix> = BTreeMap::new();
    let mut chosen: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
    for (b, nt) in tgt.support() {
        let fb = f.block(b).into_owned();
        let ns = fb.cols();
        let (_, pivots) = rref(&fb.hstack(&Matrix::identity(nt)));
        let picks: Vec<usize> = pivots[ns..].iter().map(|&c| c - ns).collect();
        let mut section = Matrix::zeros(nt, picks.len());
        for (j, &e) in picks.iter().enumerate() {
            section.set(e, j, ExactScalar::from_int(1));
        }
        let cols: Vec<_> = fb.columns().into_iter().chain(section.columns()).collect();
        let solver = Coordinates::new(&Basis::new(nt, cols).expect("complement completes a basis"));
        let mut proj = Matrix::zeros(picks.len(), nt);
        for e in 0..nt {
            let mut unit = vec![ExactScalar::from_int(0); nt];
            unit[e] = ExactScalar::from_int(1);
            let c = solver.coords(&unit).expect("full basis");
            for (j, v) in c.into_iter().skip(ns).enumerate() {
                proj.set(j, e, v);
            }
        }
        sections.insert(b, section);
        projections.insert(b, proj);
        chosen.insert(b, picks);
    }
    let qdim = |b: Bidegree| chosen.get(&b).map_or(0, |v| v.len());
    let proj_at = |b: Bidegree| projections.get(&b).cloned().unwrap_or_else(|| Matrix::zeros(qdim(b), tgt.dim(b)));
    let sect_at = |b: Bidegree| sections.get(&b).cloned().unwrap_or_else(|| Matrix::zeros(tgt.dim(b), qdim(b)));

    let sigma_stable = tgt.has_sigma()
        && src.support().all(|((p, q), _)| {
            let image = tgt.sigma((p, q)).expect("sigma").mul(&f.block((p, q)).conj());
            proj_at((q, p)).mul(&image).is_zero()
        });

    let mut builder = ComplexBuilder::new(tgt.window());
    if sigma_stable {
        builder = builder.with_sigma();
    }
    for (&b, picks) in &chosen {
        if picks.is_empty() {
            continue;
        }
        let (p, q) = b;
        builder.set_dim(b, picks.len());
        let s = sect_at(b);
        builder.set_d1(b, proj_at((p + 1, q)).mul(&tgt.d1(b)).mul(&s));
        builder.set_d2(b, proj_at((p, q + 1)).mul(&tgt.d2(b)).mul(&s));
        if sigma_stable {
            builder.set_sigma(b, proj_at((q, p)).mul(&tgt.sigma(b).expect("sigma")).mul(&s));
        }
        if let Some(l) = tgt.labels(b) {
            builder.set_labels(b, picks.iter().map(|&e| l[e].clone()).collect());
        }
    }
    let q = builder.build()?;
    let blocks = tgt.support().map(|(b, _)| (b, proj_at(b))).collect();
    let projection = Morphism::new(tgt.clone(), q.clone(), blocks)?;
    Ok((q, projection))
}
