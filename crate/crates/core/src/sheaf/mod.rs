//! Finite-dimensional model of the sheaf-theoretic construction on the
//! nodal and cuspidal Weierstraß cubics: matrix triples, the solution
//! space `Sol ⊂ sl_n[z]`, the residue and evaluation maps, and the
//! resulting geometric r-matrix.

mod pipeline;
mod qfrac;
mod sol;

pub use pipeline::{ev_map, geometric_r, res_map, rsharp};
pub use qfrac::QFrac;
pub use sol::{block_parametrization, sol_space, sol_space_for, span_agrees_at, SolBasis, SolElement};

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::linalg::Matrix;
use crate::scalars::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SheafError {
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("matrix triple has inconsistent sizes")]
    BadShape,
    #[error("the residue map is singular")]
    Singular,
    #[error("result leaves the designated rational-function class")]
    OutsideClass,
    #[error("unknown curve kind {0:?}")]
    UnknownCurve(String),
}

/// The singular cubic: nodal (`ω = dz/z`) or cuspidal (`ω = dz`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveKind {
    Nodal,
    Cuspidal,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveKind::Nodal => "nodal",
            CurveKind::Cuspidal => "cuspidal",
        })
    }
}

impl FromStr for CurveKind {
    type Err = SheafError;

    fn from_str(s: &str) -> Result<Self, SheafError> {
        match s {
            "nodal" => Ok(CurveKind::Nodal),
            "cuspidal" => Ok(CurveKind::Cuspidal),
            _ => Err(SheafError::UnknownCurve(s.to_string())),
        }
    }
}

/// Gluing data of a torsion-free sheaf: two `n × m` matrices, `(Θ₀, Θ∞)`
/// for the nodal curve and `(Θ∘, Θε)` for the cuspidal one.
#[derive(Debug, Clone, PartialEq)]
pub struct MatTriple {
    pub n: usize,
    pub m: usize,
    pub curve: CurveKind,
    pub first: Matrix<Rational>,
    pub second: Matrix<Rational>,
}

impl MatTriple {
    pub fn new(curve: CurveKind, first: Matrix<Rational>, second: Matrix<Rational>) -> Result<Self, SheafError> {
        let n = first.len();
        let m = first.first().map_or(0, Vec::len);
        let shaped = |a: &Matrix<Rational>| a.len() == n && a.iter().all(|r| r.len() == m);
        if n < 2 || m == 0 || !shaped(&first) || !shaped(&second) {
            return Err(SheafError::BadShape);
        }
        Ok(MatTriple { n, m, curve, first, second })
    }
}

/// `[I_n | 0]` when `shift = 0`, `[0 | I_n]` when `shift = 1`.
fn block_identity(n: usize, shift: usize) -> Matrix<Rational> {
    (0..n)
        .map(|i| (0..=n).map(|j| if j == i + shift { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

/// The canonical simple triple of rank `n` with `m = n + 1`.
pub fn canonical_triple(n: usize, curve: CurveKind) -> Result<MatTriple, SheafError> {
    if n < 2 {
        return Err(SheafError::RankTooSmall(n));
    }
    let (first, second) = match curve {
        CurveKind::Nodal => (block_identity(n, 1), block_identity(n, 0)),
        CurveKind::Cuspidal => (block_identity(n, 0), block_identity(n, 1)),
    };
    MatTriple::new(curve, first, second)
}

/// `χ = deg + (m − n)`.
pub fn euler_characteristic(deg: i64, n: i64, m: i64) -> i64 {
    deg + (m - n)
}
