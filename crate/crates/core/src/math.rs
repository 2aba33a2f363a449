//! Float math shim. The crate is `no_std`, so transcendental functions are
//! routed through `libm` as free functions; calling them explicitly keeps
//! test builds (where `std` sneaks into the extern prelude) on the same code
//! path as production builds. `abs`, `max`, `min` and `clamp` come from
//! `core` and need no shim.

pub(crate) use libm::{acos, acosh, atan, cos, floor, pow, sin, sqrt, tan};

pub(crate) use libm::log as ln;
