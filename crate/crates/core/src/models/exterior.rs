use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::bicomplex::{validate, Bidegree, ComplexBuilder, Window};
use crate::exactlin::{ExactScalar, Matrix};

use super::{AlgebraModel, ModelError, ModelKind, ModelSpec, Structure};

/// Exterior monomials are bitmasks over `2n` letters: `0..n` are the
/// generators, `n..2n` their conjugates.
pub(crate) type Mono = u32;

/// `a ∧ b` as `(sign, mask)`, or `None` when they share a letter.
pub(crate) fn wedge(a: Mono, b: Mono) -> Option<(bool, Mono)> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        inversions += (a >> (y + 1)).count_ones();
        rest &= rest - 1;
    }
    Some((inversions % 2 == 1, a | b))
}

/// Sparse element of the exterior algebra.
type Element = BTreeMap<Mono, ExactScalar>;

fn add_term(e: &mut Element, m: Mono, c: ExactScalar) {
    if c.is_zero() {
        return;
    }
    let slot = e.entry(m).or_insert_with(ExactScalar::zero);
    *slot += &c;
    if slot.is_zero() {
        e.remove(&m);
    }
}

/// Increasing lists of `k` elements of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Basis of `A^{p,q}`: unbarred part outer, barred part inner, both
/// lexicographic.
pub(crate) fn monomial_basis(n: usize) -> BTreeMap<Bidegree, Vec<Mono>> {
    let mut out = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let mut v = Vec::new();
            for u in combinations(n, p) {
                for b in combinations(n, q) {
                    let mask = u.iter().map(|&i| 1u32 << i).sum::<u32>() | b.iter().map(|&j| 1u32 << (n + j)).sum::<u32>();
                    v.push(mask);
                }
            }
            out.insert((p as i32, q as i32), v);
        }
    }
    out
}

pub(crate) fn monomial_name(m: Mono, names: &[String]) -> String {
    let n = names.len();
    if m == 0 {
        return "1".into();
    }
    (0..2 * n)
        .filter(|&l| m >> l & 1 == 1)
        .map(|l| if l < n { names[l].clone() } else { format!("conj({})", names[l - n]) })
        .collect::<Vec<_>>()
        .join("^")
}

/// Applies a derivation given on letters to a monomial.
fn derive(m: Mono, on_letters: &[Element]) -> Element {
    let mut out = Element::new();
    let mut rest = m;
    let mut position = 0;
    while rest != 0 {
        let l = rest.trailing_zeros();
        rest &= rest - 1;
        let below = m & ((1u32 << l) - 1);
        let above = m & !((1u32 << (l + 1)) - 1);
        for (&t, c) in &on_letters[l as usize] {
            let Some((s1, left)) = wedge(below, t) else { continue };
            let Some((s2, full)) = wedge(left, above) else { continue };
            let negative = (position % 2 == 1) ^ s1 ^ s2;
            add_term(&mut out, full, c.clone().signed(negative));
        }
        position += 1;
    }
    out
}

/// `σ` on a monomial: swap each letter with its conjugate, then reorder.
fn conjugate_monomial(m: Mono, n: usize) -> (bool, Mono) {
    let low = (1u32 << n) - 1;
    let unbarred = m & low;
    let barred = m >> n;
    // the reordered word is barred(unbarred letters) followed by unbarred(barred letters)
    let negative = (unbarred.count_ones() * barred.count_ones()) % 2 == 1;
    (negative, barred | (unbarred << n))
}

fn conjugate_element(e: &Element, n: usize) -> Element {
    let mut out = Element::new();
    for (&m, c) in e {
        let (neg, cm) = conjugate_monomial(m, n);
        add_term(&mut out, cm, c.conj().signed(neg));
    }
    out
}

/// Builds the exterior-algebra model of a nilpotent Lie algebra from its
/// structure equations: `∂₁ = ∂` and `∂₂ = ∂̄` are extended from the
/// generators as graded derivations, and `σ` conjugates monomials.
pub fn lie_algebra_model(spec: &ModelSpec) -> Result<AlgebraModel, ModelError> {
    if spec.kind != ModelKind::LieAlgebra {
        return Err(ModelError::WrongKind);
    }
    let n = spec.complex_dimension;
    if n == 0 || n > 15 || spec.generators.len() != n {
        return Err(ModelError::InvalidDimension(n as i64));
    }
    let mut del = vec![Element::new(); 2 * n];
    let mut delbar = vec![Element::new(); 2 * n];
    for (&g, terms) in &spec.equations {
        for t in terms {
            let letter = |f: &super::Factor| f.generator + if f.conj { n } else { 0 };
            let Some((neg, m)) = wedge(1 << letter(&t.factors[0]), 1 << letter(&t.factors[1])) else {
                continue;
            };
            let c = t.coef.clone().signed(neg);
            match t.factors.iter().filter(|f| f.conj).count() {
                0 => add_term(&mut del[g], m, c),
                1 => add_term(&mut delbar[g], m, c),
                _ => return Err(ModelError::NonIntegrable(spec.generators[g].clone())),
            }
        }
    }
    for g in 0..n {
        del[g + n] = conjugate_element(&delbar[g], n);
        delbar[g + n] = conjugate_element(&del[g], n);
    }

    for l in 0..2 * n {
        let name = || monomial_name(1 << l, &spec.generators);
        let dd = del[l].iter().fold(Element::new(), |mut acc, (&m, c)| {
            for (mm, cc) in derive(m, &del) {
                add_term(&mut acc, mm, c * &cc);
            }
            acc
        });
        let bb = delbar[l].iter().fold(Element::new(), |mut acc, (&m, c)| {
            for (mm, cc) in derive(m, &delbar) {
                add_term(&mut acc, mm, c * &cc);
            }
            acc
        });
        let mut anti = Element::new();
        for (&m, c) in &del[l] {
            for (mm, cc) in derive(m, &delbar) {
                add_term(&mut anti, mm, c * &cc);
            }
        }
        for (&m, c) in &delbar[l] {
            for (mm, cc) in derive(m, &del) {
                add_term(&mut anti, mm, c * &cc);
            }
        }
        if !dd.is_empty() || !bb.is_empty() || !anti.is_empty() {
            return Err(ModelError::NotADifferential(name()));
        }
    }

    let basis = monomial_basis(n);
    let index: HashMap<Mono, usize> = basis
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(i, &m)| (m, i)))
        .collect();
    let ni = n as i32;
    let mut builder = ComplexBuilder::new(Window::square(0, ni)).with_sigma();
    for (&(p, q), monos) in &basis {
        builder.set_dim((p, q), monos.len());
        let fill = |target: Bidegree, image: &dyn Fn(Mono) -> Element| {
            let rows = basis.get(&target).map_or(0, Vec::len);
            let mut m = Matrix::zeros(rows, monos.len());
            for (c, &mono) in monos.iter().enumerate() {
                for (t, v) in image(mono) {
                    m.set(index[&t], c, v);
                }
            }
            m
        };
        builder.set_d1((p, q), fill((p + 1, q), &|m| derive(m, &del)));
        builder.set_d2((p, q), fill((p, q + 1), &|m| derive(m, &delbar)));
        builder.set_sigma(
            (p, q),
            fill((q, p), &|m| {
                let (neg, cm) = conjugate_monomial(m, n);
                Element::from([(cm, ExactScalar::from_int(1).signed(neg))])
            }),
        );
        builder.set_labels((p, q), monos.iter().map(|&m| monomial_name(m, &spec.generators)).collect());
    }
    let complex = builder.build().expect("exterior model blocks are consistent");
    debug_assert!(validate(&complex).is_empty());
    Ok(AlgebraModel {
        name: spec.name.clone(),
        complex,
        top: (ni, ni),
        structure: Structure::Exterior { n, basis, index },
    })
}

/// Coordinates of the product of two exterior basis elements.
pub(crate) fn exterior_product(
    basis: &BTreeMap<Bidegree, Vec<Mono>>,
    index: &HashMap<Mono, usize>,
    (a, i): (Bidegree, usize),
    (b, j): (Bidegree, usize),
) -> Vec<ExactScalar> {
    let target = (a.0 + b.0, a.1 + b.1);
    let len = basis.get(&target).map_or(0, Vec::len);
    let mut out = vec![ExactScalar::zero(); len];
    if let Some((neg, m)) = wedge(basis[&a][i], basis[&b][j]) {
        out[index[&m]] = ExactScalar::from_int(1).signed(neg);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge(0b01, 0b10), Some((false, 0b11)));
        assert_eq!(wedge(0b10, 0b01), Some((true, 0b11)));
        assert_eq!(wedge(0b11, 0b01), None);
        assert_eq!(wedge(0b101, 0b010), Some((true, 0b111)));
    }

    #[test]
    fn basis_sizes() {
        let b = monomial_basis(3);
        assert_eq!(b[&(1, 2)].len(), 9);
        assert_eq!(b.values().map(Vec::len).sum::<usize>(), 64);
        // lexicographic: phi1^conj(phi1) first, phi1^conj(phi2) next
        assert_eq!(b[&(1, 1)][0], 0b001_001);
        assert_eq!(b[&(1, 1)][1], 0b010_001);
    }

    #[test]
    fn sigma_squares_to_identity_on_monomials() {
        for m in 0u32..64 {
            let (s1, c) = conjugate_monomial(m, 3);
            let (s2, back) = conjugate_monomial(c, 3);
            assert_eq!(back, m);
            assert!(!(s1 ^ s2));
        }
    }
}
