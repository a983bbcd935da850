//! Exact decision procedures for K-polystability of toric pairs.
//!
//! The polytope and linear-algebra kernels are generic over any exact ordered
//! [`Field`](exactlin::Field); the toric layers above them are fixed to
//! arbitrary-precision rationals through the aliases below.

pub mod error;
pub mod exactlin;
pub mod fan;
pub mod kstability;
pub mod logcox;
pub mod polytope;
pub mod toricdiv;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Int = BigInt;
pub type IntVec = Vec<BigInt>;
pub type Rat = BigRational;
pub type RatVec = Vec<BigRational>;
pub type RatMat = exactlin::Matrix<BigRational>;
pub type IntMat = exactlin::IntMat;
pub type VPolytope = polytope::VPolytope<BigRational>;
pub type HPolytope = polytope::HPolytope<BigRational>;

pub use fan::{check_fan_map, Fan, FanReport};
pub use kstability::{construct_standard_boundary, is_k_polystable, BoundaryConstruction, KpsReport};
pub use logcox::{rank1_report, LogClassGroup, Rank1Report};
pub use toricdiv::{StandardBoundary, ToricDivisor};
