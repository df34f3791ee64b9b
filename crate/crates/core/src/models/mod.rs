//! Finite models of compact complex manifolds: exterior algebras of
//! nilpotent Lie algebras given by structure equations (tori, the Iwasawa
//! manifold), truncated polynomial models of projective spaces, and the
//! Serre pairing into the dual complex.

mod exterior;
mod parse;

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::bicomplex::{dual, Bidegree, ComplexBuilder, DoubleComplex, Morphism, Window};
use crate::exactlin::{ExactScalar, Matrix};

pub use exterior::lie_algebra_model;
pub use parse::{parse_model_file, to_text};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    LieAlgebra,
    TruncatedPolynomial,
}

/// A generator (bidegree `(1, 0)`) or its conjugate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub generator: usize,
    pub conj: bool,
}

/// `coef · factors[0] ∧ factors[1]`, as written in the model file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coef: ExactScalar,
    pub factors: [Factor; 2],
}

impl Term {
    pub fn bidegree(&self) -> Bidegree {
        let q = self.factors.iter().filter(|f| f.conj).count() as i32;
        (2 - q, q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub name: String,
    pub complex_dimension: usize,
    pub kind: ModelKind,
    pub generators: Vec<String>,
    /// `d(generator)` for every generator with an equation line.
    pub equations: BTreeMap<usize, Vec<Term>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("line {line}, column {col}: expected {expected}")]
    Syntax { line: usize, col: usize, expected: String },
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("line {line}: every term must be a wedge of exactly two generators")]
    NonQuadraticTerm { line: usize },
    #[error("'{0}' is declared twice")]
    Duplicate(String),
    #[error("d does not square to zero on {0}")]
    NotADifferential(String),
    #[error("d {0} has a (0,2) component, so the structure is not integrable")]
    NonIntegrable(String),
    #[error("invalid dimension {0}")]
    InvalidDimension(i64),
    #[error("the top bidegree is not one-dimensional")]
    NoTopClass,
    #[error("model kind does not match the builder")]
    WrongKind,
}

#[derive(Clone, Debug)]
pub(crate) enum Structure {
    Exterior {
        n: usize,
        basis: BTreeMap<Bidegree, Vec<exterior::Mono>>,
        index: HashMap<exterior::Mono, usize>,
    },
    Truncated {
        m: usize,
    },
}

/// A double complex with a graded-commutative product on its basis and a
/// distinguished top bidegree.
#[derive(Clone, Debug)]
pub struct AlgebraModel {
    name: String,
    complex: DoubleComplex,
    top: Bidegree,
    structure: Structure,
}

impl AlgebraModel {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn complex(&self) -> &DoubleComplex {
        &self.complex
    }

    pub fn into_complex(self) -> DoubleComplex {
        self.complex
    }

    /// The bidegree `(n, n)`.
    pub fn top(&self) -> Bidegree {
        self.top
    }

    /// Product of basis element `i` of `A^a` with basis element `j` of
    /// `A^b`, as coordinates in `A^{a+b}`.
    pub fn product(&self, a: (Bidegree, usize), b: (Bidegree, usize)) -> Vec<ExactScalar> {
        let target = (a.0 .0 + b.0 .0, a.0 .1 + b.0 .1);
        match &self.structure {
            Structure::Exterior { basis, index, .. } => exterior::exterior_product(basis, index, a, b),
            Structure::Truncated { .. } => {
                let len = self.complex.dim(target);
                let mut out = vec![ExactScalar::zero(); len];
                if len > 0 {
                    out[0] = ExactScalar::from_int(1);
                }
                out
            }
        }
    }

    /// Multiplies two vectors of `A^a` and `A^b`.
    pub fn multiply(&self, a: Bidegree, x: &[ExactScalar], b: Bidegree, y: &[ExactScalar]) -> Vec<ExactScalar> {
        let target = (a.0 + b.0, a.1 + b.1);
        let mut out = vec![ExactScalar::zero(); self.complex.dim(target)];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = xi * yj;
                for (k, v) in self.product((a, i), (b, j)).into_iter().enumerate() {
                    if !v.is_zero() {
                        out[k] += &(&c * &v);
                    }
                }
            }
        }
        out
    }

    pub fn complex_dimension(&self) -> usize {
        match &self.structure {
            Structure::Exterior { n, .. } => *n,
            Structure::Truncated { m } => *m,
        }
    }
}

fn generator_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("phi{i}")).collect()
}

/// The complex torus of dimension `n`: all structure equations vanish.
pub fn torus(n: i64) -> Result<AlgebraModel, ModelError> {
    if !(1..=15).contains(&n) {
        return Err(ModelError::InvalidDimension(n));
    }
    let n = n as usize;
    lie_algebra_model(&ModelSpec {
        name: format!("torus{n}"),
        complex_dimension: n,
        kind: ModelKind::LieAlgebra,
        generators: generator_names(n),
        equations: BTreeMap::new(),
    })
}

pub const IWASAWA_SPEC: &str = "\
name = iwasawa
complex_dimension = 3
kind = lie_algebra
generators = phi1, phi2, phi3
d phi3 = -1 * phi1 ^ phi2
";

/// The Iwasawa manifold: `dφ₁ = dφ₂ = 0`, `∂φ₃ = −φ₁∧φ₂`.
pub fn iwasawa() -> AlgebraModel {
    let spec = parse_model_file(IWASAWA_SPEC).expect("built-in spec parses");
    lie_algebra_model(&spec).expect("built-in spec is a differential")
}

/// `ℂ[t]/(t^{m+1})` with `t` in bidegree `(1, 1)` and zero differentials.
pub fn projective_space(m: i64) -> Result<AlgebraModel, ModelError> {
    if !(0..=64).contains(&m) {
        return Err(ModelError::InvalidDimension(m));
    }
    let mi = m as i32;
    let mut builder = ComplexBuilder::new(Window::square(0, mi)).with_sigma();
    for p in 0..=mi {
        builder.set_dim((p, p), 1);
        builder.set_sigma((p, p), Matrix::identity(1));
        let name = match p {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{p}"),
        };
        builder.set_labels((p, p), vec![name]);
    }
    Ok(AlgebraModel {
        name: format!("p{m}"),
        complex: builder.build().expect("diagonal complex is consistent"),
        top: (mi, mi),
        structure: Structure::Truncated { m: m as usize },
    })
}

/// Builds the model a spec describes, whatever its kind.
pub fn build_model(spec: &ModelSpec) -> Result<AlgebraModel, ModelError> {
    let mut model = match spec.kind {
        ModelKind::LieAlgebra => lie_algebra_model(spec)?,
        ModelKind::TruncatedPolynomial => projective_space(spec.complex_dimension as i64)?,
    };
    if !spec.name.is_empty() {
        model.name = spec.name.clone();
    }
    Ok(model)
}

pub const PRESETS: [&str; 8] = ["iwasawa", "torus1", "torus2", "torus3", "p1", "p2", "p3", "point"];

pub fn preset(name: &str) -> Option<AlgebraModel> {
    let mut m = match name {
        "iwasawa" => iwasawa(),
        "torus1" => torus(1).ok()?,
        "torus2" => torus(2).ok()?,
        "torus3" => torus(3).ok()?,
        "p1" => projective_space(1).ok()?,
        "p2" => projective_space(2).ok()?,
        "p3" => projective_space(3).ok()?,
        "point" => projective_space(0).ok()?,
        _ => return None,
    };
    m.name = name.to_string();
    Some(m)
}

/// `Φ: A → dual(A, n)`, `ω ↦ (η ↦ top coefficient of ω ∧ η)`.
pub fn serre_pairing_morphism(a: &AlgebraModel) -> Result<Morphism, ModelError> {
    let (n, n2) = a.top;
    if n != n2 || a.complex.dim(a.top) != 1 {
        return Err(ModelError::NoTopClass);
    }
    let source = a.complex.clone();
    let target = dual(&source, n);
    let mut blocks = BTreeMap::new();
    for ((p, q), dim) in source.support() {
        let partner = (n - p, n - q);
        let rows = source.dim(partner);
        let mut m = Matrix::zeros(rows, dim);
        for i in 0..dim {
            for j in 0..rows {
                let v = a.product(((p, q), i), (partner, j));
                m.set(j, i, v[0].clone());
            }
        }
        blocks.insert((p, q), m);
    }
    Ok(Morphism::new(source, target, blocks).expect("the Serre pairing commutes with the differentials"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::validate;

    #[test]
    fn parse_iwasawa() {
        let spec = parse_model_file(IWASAWA_SPEC).unwrap();
        assert_eq!(spec.generators.len(), 3);
        assert_eq!(spec.equations.len(), 1);
        assert_eq!(spec.equations[&2][0].coef, ExactScalar::from_int(-1));
        assert_eq!(parse_model_file(&to_text(&spec)).unwrap(), spec);
    }

    #[test]
    fn parse_errors() {
        let bad = IWASAWA_SPEC.replace("phi1 ^ phi2", "phi1 ^ phi9");
        assert_eq!(parse_model_file(&bad), Err(ModelError::UnknownGenerator("phi9".into())));
        let cubic = IWASAWA_SPEC.replace("phi1 ^ phi2", "phi1 ^ phi2 ^ phi3");
        assert!(matches!(parse_model_file(&cubic), Err(ModelError::NonQuadraticTerm { line: 5 })));
        let junk = IWASAWA_SPEC.replace("-1 *", "-1 @");
        assert!(matches!(parse_model_file(&junk), Err(ModelError::Syntax { line: 5, .. })));
        let dup = IWASAWA_SPEC.replace("phi3\n", "phi1\n");
        assert!(matches!(parse_model_file(&dup), Err(ModelError::Duplicate(_))));
    }

    #[test]
    fn coefficient_forms() {
        let text = "complex_dimension = 2\nkind = lie_algebra\ngenerators = a, b\n\
                    d b = (1/2+1/3i) * a ^ conj(a) - 2i * a^conj(a) + 1/2 i * a ^ conj(a)\nd a = 0\n";
        let spec = parse_model_file(text).unwrap();
        let coefs: Vec<_> = spec.equations[&1].iter().map(|t| t.coef.to_string()).collect();
        assert_eq!(coefs, ["1/2+1/3*i", "-2*i", "1/2*i"]);
        assert!(spec.equations[&0].is_empty());
        assert_eq!(parse_model_file(&to_text(&spec)).unwrap(), spec);
    }

    #[test]
    fn models_are_valid() {
        for name in PRESETS {
            let m = preset(name).unwrap();
            assert!(validate(m.complex()).is_empty(), "{name}");
        }
        let i = iwasawa();
        assert_eq!(i.complex().total_dim(), 64);
        assert_eq!(i.complex().dim((1, 2)), 9);
    }

    #[test]
    fn non_differential_is_rejected() {
        let text = "complex_dimension = 2\nkind = lie_algebra\ngenerators = phi1, phi2\n\
                    d phi2 = phi1 ^ conj(phi1)\nd phi1 = phi2 ^ conj(phi2)\n";
        let spec = parse_model_file(text).unwrap();
        assert!(matches!(lie_algebra_model(&spec), Err(ModelError::NotADifferential(_))));
    }

    #[test]
    fn two_conjugates_are_not_integrable() {
        let text = "complex_dimension = 2\nkind = lie_algebra\ngenerators = phi1, phi2\n\
                    d phi2 = conj(phi1) ^ conj(phi1) + conj(phi1) ^ conj(phi2)\n";
        let spec = parse_model_file(text).unwrap();
        assert_eq!(lie_algebra_model(&spec).unwrap_err(), ModelError::NonIntegrable("phi2".into()));
    }

    #[test]
    fn dimensions_are_checked() {
        assert_eq!(torus(0).unwrap_err(), ModelError::InvalidDimension(0));
        assert_eq!(projective_space(-1).unwrap_err(), ModelError::InvalidDimension(-1));
    }

    #[test]
    fn serre_pairing_on_projective_plane() {
        let p2 = projective_space(2).unwrap();
        let phi = serre_pairing_morphism(&p2).unwrap();
        assert_eq!(phi.block((1, 1)).into_owned(), Matrix::identity(1));
    }
}
