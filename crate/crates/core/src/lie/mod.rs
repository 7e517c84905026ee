//! The Lie algebra sl_n: basis conventions, structure constants, the trace
//! form, the Casimir element and the two Cartan bases `h_k` and `g_j`.
//!
//! The invariant form is the trace form `tr(ab)`. The Killing form equals
//! `2n·tr(ab)`; all statements checked here are invariant under that
//! constant rescaling.

mod algebra;
mod elem;
mod tensor;

pub use algebra::{sl, SlAlgebra};
pub use elem::LieElem;
pub use tensor::{casimir, map_to_tensor, tensor_to_map, Tensor2, Tensor2Const, Tensor3, Tensor3Const};

use std::fmt;
use std::str::FromStr;

use crate::linalg::Matrix;
use crate::scalars::{zeta, Cyclotomic};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("rank mismatch: sl_{0} vs sl_{1}")]
    RankMismatch(usize, usize),
    #[error("basis index {0} is not valid for sl_{1}")]
    InvalidIndex(BasisIndex, usize),
    #[error("matrix is not traceless")]
    NotTraceless,
    #[error("unknown basis name {0:?}")]
    UnknownName(String),
}

/// A basis element of sl_n: the matrix unit `e_{i,j}` (`i ≠ j`) or the
/// Cartan element `h_k = e_{k,k} − e_{k+1,k+1}`. Indices are 1-based.
///
/// The derived ordering is the fixed basis ordering used for every matrix
/// in the crate: all `E(i, j)` lexicographically, then `H(1..n−1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisIndex {
    E(u16, u16),
    H(u16),
}

impl BasisIndex {
    pub fn is_valid(self, n: usize) -> bool {
        let n = n as u16;
        match self {
            BasisIndex::E(i, j) => i != j && (1..=n).contains(&i) && (1..=n).contains(&j),
            BasisIndex::H(k) => k >= 1 && k < n,
        }
    }

    /// Position in the fixed basis ordering of sl_n.
    pub fn position(self, n: usize) -> usize {
        match self {
            BasisIndex::E(i, j) => {
                let (i, j) = (i as usize, j as usize);
                (i - 1) * (n - 1) + (j - 1) - usize::from(j > i)
            }
            BasisIndex::H(k) => n * (n - 1) + k as usize - 1,
        }
    }

    /// Sparse matrix-unit expansion `[((i, j), c)]`.
    pub fn matrix_units(self) -> Vec<((usize, usize), i64)> {
        match self {
            BasisIndex::E(i, j) => vec![((i as usize, j as usize), 1)],
            BasisIndex::H(k) => {
                let k = k as usize;
                vec![((k, k), 1), ((k + 1, k + 1), -1)]
            }
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::E(i, j) => write!(f, "e_{i}_{j}"),
            BasisIndex::H(k) => write!(f, "h_{k}"),
        }
    }
}

impl FromStr for BasisIndex {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, LieError> {
        let bad = || LieError::UnknownName(s.to_string());
        let num = |t: &str| -> Result<u16, LieError> {
            if t.is_empty() || t.starts_with('0') {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        if let Some(rest) = s.strip_prefix("e_") {
            let (i, j) = rest.split_once('_').ok_or_else(bad)?;
            Ok(BasisIndex::E(num(i)?, num(j)?))
        } else if let Some(k) = s.strip_prefix("h_") {
            Ok(BasisIndex::H(num(k)?))
        } else {
            Err(bad())
        }
    }
}

/// The Cartan basis `g_j = diag(1, ζ_j, …, ζ_j^{n−1})`, `1 ≤ j ≤ n−1`, with
/// `ζ_j = ξ^j` for the primitive root ξ of Q(ζ_n). Entry `j − 1` holds `g_j`.
pub fn g_basis(n: usize) -> Vec<LieElem<Cyclotomic>> {
    (1..n)
        .map(|j| {
            let diag: Vec<Cyclotomic> = (0..n).map(|k| zeta(n as u32, (j * k) as i64)).collect();
            LieElem::from_diagonal(&diag).expect("Σ_k ζ_j^k = 0")
        })
        .collect()
}

/// The trace-form dual of [`g_basis`] inside the Cartan subalgebra.
pub fn g_dual(n: usize) -> Vec<LieElem<Cyclotomic>> {
    cartan_dual(&g_basis(n))
}

/// The basis `h_1, …, h_{n−1}` of the Cartan subalgebra.
pub fn h_basis(n: usize) -> Vec<LieElem<Cyclotomic>> {
    (1..n).map(|k| LieElem::basis(n, BasisIndex::H(k as u16))).collect()
}

/// The trace-form dual `h_k^*` of the Cartan basis `h_k`.
pub fn h_dual(n: usize) -> Vec<LieElem<Cyclotomic>> {
    cartan_dual(&h_basis(n))
}

/// Dual basis of a basis of the Cartan subalgebra with respect to the trace
/// form, by inverting its Gram matrix.
pub fn cartan_dual(basis: &[LieElem<Cyclotomic>]) -> Vec<LieElem<Cyclotomic>> {
    let gram: Matrix<Cyclotomic> =
        basis.iter().map(|a| basis.iter().map(|b| a.trace_form(b).unwrap()).collect()).collect();
    let inv = crate::linalg::inverse(&gram).expect("trace form is nondegenerate on the Cartan");
    (0..basis.len())
        .map(|i| {
            basis.iter().enumerate().fold(LieElem::zero(basis[0].n()), |acc, (j, b)| acc.plus(&b.scaled(&inv[i][j])))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Ring;
    use crate::scalars::rat;

    #[test]
    fn basis_names_round_trip() {
        for n in 2..=4 {
            for b in sl(n).basis() {
                assert_eq!(b.to_string().parse::<BasisIndex>().unwrap(), *b);
            }
        }
        assert!("e_1".parse::<BasisIndex>().is_err());
        assert!("h_01".parse::<BasisIndex>().is_err());
        assert!("x_1".parse::<BasisIndex>().is_err());
    }

    #[test]
    fn ordering_matches_positions() {
        for n in 2..=5 {
            let alg = sl(n);
            let mut sorted = alg.basis().to_vec();
            sorted.sort();
            assert_eq!(sorted, alg.basis());
            for (p, b) in alg.basis().iter().enumerate() {
                assert_eq!(b.position(n), p);
            }
        }
    }

    #[test]
    fn g_basis_sl2_is_h() {
        let g = g_basis(2);
        assert_eq!(g[0], LieElem::basis(2, BasisIndex::H(1)));
        assert_eq!(g_dual(2)[0], LieElem::basis(2, BasisIndex::H(1)).scaled(&Cyclotomic::from(rat(1, 2))));
    }

    #[test]
    fn g_dual_is_scaled_reverse() {
        for n in 2..=5 {
            let g = g_basis(n);
            let d = g_dual(n);
            let inv_n = Cyclotomic::from(rat(1, n as i64));
            for j in 1..n {
                assert_eq!(d[j - 1], g[n - j - 1].scaled(&inv_n), "n={n} j={j}");
            }
        }
        let (g, d) = (g_basis(3), g_dual(3));
        assert!(d[0].trace_form(&g[1]).unwrap().is_zero());
    }

    #[test]
    fn h_dual_sl2() {
        assert_eq!(h_dual(2)[0], LieElem::basis(2, BasisIndex::H(1)).scaled(&Cyclotomic::from(rat(1, 2))));
    }
}
