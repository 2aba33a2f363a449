//! Random tangent triangles of the unit circle.
//!
//! Three tangent lines with random contact points determine a triangle; when
//! no semicircle contains all three contact points the circle is its
//! incircle. This crate implements:
//!
//! * [`geometry`] — triangle construction from contact angles, incircle vs
//!   excircle classification, sides, angles, perimeter, area;
//! * [`analytic`] — the exact side-length densities (single tangent, naive
//!   convolution, incircle conditioned), their CDFs, quantiles and constants
//!   such as the acute probability 1/4;
//! * [`numerics`] — adaptive Gauss-Kronrod quadrature, root finding and
//!   golden-section minimization shared by the other modules;
//! * [`sampling`] — bit-reproducible seeded Monte Carlo with disjoint shard
//!   substreams, histograms, and Kolmogorov-Smirnov checks;
//! * [`optimize`] — extremal constants: minimum perimeter `6 sqrt 3`, side
//!   infimum 2, and the minimum sum of two sides `sqrt(22 + 10 sqrt 5)`.
//!
//! The crate is `no_std` (with `alloc`); all float transcendentals come from
//! `libm`, so results do not depend on the platform's libm.

#![no_std]
// domain guards are written !(x > bound) so NaN arguments are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analytic;
pub mod geometry;
mod math;
pub mod numerics;
pub mod optimize;
pub mod sampling;
