//! Norm balls of homogeneous cubics on the circle and the 2-sphere.
//!
//! The norm of a cubic is its maximum over the unit sphere.  This crate
//! computes the norm on S^1 and S^2, tests membership in the distinguished
//! faces of the unit ball, constructs the parametrized families of extremal
//! cubics, recovers cubics from prescribed quadruples of maxima through
//! their Gramian, and classifies boundary cubics into canonical forms.

pub mod circle;
pub mod classify;
pub mod error;
pub mod families;
pub mod gramian;
pub mod jsonio;
pub mod poly;
pub mod sphere;
pub mod trig;

pub use error::{Error, Result};
pub use poly::{Cubic2, Cubic3, OrthogonalMap2, OrthogonalMap3, SpherePoint2, SpherePoint3};
