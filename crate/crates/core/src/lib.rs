//! Bounded double complexes with real structure over the Gaussian
//! rationals, their cohomologies (de Rham, Dolbeault, conjugate Dolbeault,
//! Bott-Chern, Aeppli, every Frölicher page) and complex-level models of
//! projective bundles and blow-ups.

pub mod bicomplex;
pub mod cohomology;
pub mod exactlin;
pub mod geometry;
pub mod models;
pub mod render;
