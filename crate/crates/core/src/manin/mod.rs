//! Series expansions of r-matrices, the residue pairing on `𝔤((z))`, the
//! subspace `W` spanned by the expansion coefficients, and the checks that
//! tie a solution to a Lagrangian complement of `𝔤⟦z⟧`.
//!
//! The expansion is taken in the region `|x| < |y|`:
//!
//! ```text
//! r(x, y) = Σ_{k ≥ 0} Σ_a f_{k,a}(y) ⊗ x^k·x_a,
//! ```
//!
//! so that `f_{k,a}(z) = z^{−k−1}·x^a + p_{k,a}(z)` for solutions with the
//! standard shape `γ/(y − x) + polynomial`. Dual pairs `(x_a, x^a)` for the
//! trace form replace the orthonormal bases of the classical treatment.

mod loops;
mod residue;

pub use loops::LaurentLoop;
pub use residue::{residue_at_singularity, LocalData, MatLaurent};

use std::collections::BTreeMap;

use crate::lie::{sl, BasisIndex, LieElem, Tensor2};
use crate::linalg::{inverse, rank, Matrix};
use crate::poly::{Factor, PolyError, RatFun, Var};
use crate::scalars::{Cyclotomic, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ManinError {
    #[error("pole of order {0} along y = x; at most a simple pole is expandable")]
    HigherOrderPole(u32),
    #[error("coefficient outside the expandable class: {0}")]
    OutsideShape(String),
    #[error("the pairing against z^r·x_b is degenerate; duality violated")]
    DualityViolated,
    #[error("the residue is not determined by the given truncation")]
    InsufficientTruncation,
    #[error("principal parts differ from z^(-k-1)·x^a")]
    NonStandardShape,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Truncated expansion data: `f_{k,a}` for `0 ≤ k ≤ order` and every basis
/// index `a`. Each `f_{k,a}` is exact (a finite Laurent polynomial in `z`);
/// only the range of `k` is truncated.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTensor {
    pub n: usize,
    pub order: usize,
    pub coeffs: BTreeMap<(usize, BasisIndex), LaurentLoop>,
}

impl SeriesTensor {
    pub fn coeff(&self, k: usize, a: BasisIndex) -> LaurentLoop {
        self.coeffs.get(&(k, a)).cloned().unwrap_or_else(|| LaurentLoop::zero(self.n))
    }

    /// The polynomial part `p_{k,a}`.
    pub fn regular_part(&self, k: usize, a: BasisIndex) -> LaurentLoop {
        self.coeff(k, a).regular_part()
    }

    /// Whether every principal part is exactly `z^{−k−1}·x^a`.
    pub fn has_standard_shape(&self) -> bool {
        let alg = sl(self.n);
        (0..=self.order).all(|k| {
            alg.basis().iter().all(|&a| self.coeff(k, a).principal_part() == LaurentLoop::dual_monomial(self.n, a, -(k as i32) - 1))
        })
    }
}

/// Expands `r` in `|x| < |y|` up to `x^order`.
pub fn expand(r: &Tensor2<RatFun>, order: usize) -> Result<SeriesTensor, ManinError> {
    let n = r.n();
    let mut coeffs: BTreeMap<(usize, BasisIndex), LaurentLoop> = BTreeMap::new();
    for (&(a, b), c) in r.entries() {
        let mut sign = Cyclotomic::one();
        let mut pole = false;
        for (f, m) in c.den_factors() {
            match f {
                Factor::Diff(Var::X, Var::Y) if m == 1 => {
                    // 1/(x − y) = −1/(y − x)
                    sign = sign.negated();
                    pole = true;
                }
                Factor::Diff(Var::X, Var::Y) => return Err(ManinError::HigherOrderPole(m)),
                f => return Err(ManinError::OutsideShape(format!("denominator factor {f:?}"))),
            }
        }
        if let Some(v) = c.num().vars().into_iter().find(|v| !matches!(v, Var::X | Var::Y)) {
            return Err(ManinError::OutsideShape(format!("variable {v}")));
        }
        if c.num().min_exp(Var::X).is_some_and(|e| e < 0) {
            return Err(ManinError::OutsideShape("negative power of x".into()));
        }
        // num = Σ_i x^i · n_i(y)
        let mut by_x: BTreeMap<usize, BTreeMap<i32, Cyclotomic>> = BTreeMap::new();
        for (m, v) in c.num().terms() {
            by_x.entry(m.exp(Var::X) as usize).or_default().insert(m.exp(Var::Y), v.times(&sign));
        }
        for k in 0..=order {
            let mut series: BTreeMap<i32, Cyclotomic> = BTreeMap::new();
            for (&i, ni) in by_x.range(..=k) {
                // 1/(y − x) = Σ_j x^j y^{−j−1}
                let shift = if pole { -((k - i) as i32) - 1 } else if i == k { 0 } else { continue };
                for (&e, v) in ni {
                    let slot = series.entry(e + shift).or_insert_with(Cyclotomic::zero);
                    *slot = slot.plus(v);
                }
            }
            let term = LaurentLoop::from_scalar_series(n, a, &series);
            if !term.is_zero() {
                let entry = coeffs.entry((k, b)).or_insert_with(|| LaurentLoop::zero(n));
                *entry = entry.plus(&term);
            }
        }
    }
    coeffs.retain(|_, v| !v.is_zero());
    Ok(SeriesTensor { n, order, coeffs })
}

/// `res₀ tr(f·g) dz`: the sum of `tr(f_l g_k)` over `l + k = −1`.
pub fn residue_pairing(f: &LaurentLoop, g: &LaurentLoop) -> Cyclotomic {
    f.terms().fold(Cyclotomic::zero(), |acc, (&l, fl)| match g.get(-1 - l) {
        Some(gk) => acc.plus(&fl.trace_form(gk).expect("same rank")),
        None => acc,
    })
}

/// The elements `f_{k,a}`, `0 ≤ k ≤ order`, spanning the truncation of `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct WBasis {
    pub n: usize,
    pub order: usize,
    pub elements: BTreeMap<(usize, BasisIndex), LaurentLoop>,
}

impl WBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn keys(&self) -> Vec<(usize, BasisIndex)> {
        let alg = sl(self.n);
        (0..=self.order).flat_map(|k| alg.basis().iter().map(move |&a| (k, a))).collect()
    }

    pub fn get(&self, k: usize, a: BasisIndex) -> LaurentLoop {
        self.elements.get(&(k, a)).cloned().unwrap_or_else(|| LaurentLoop::zero(self.n))
    }
}

/// Reads off `f_{k,a}` from the expansion (zero coefficients included).
pub fn w_basis(s: &SeriesTensor) -> WBasis {
    let alg = sl(s.n);
    let elements = (0..=s.order)
        .flat_map(|k| alg.basis().iter().map(move |&a| (k, a)))
        .map(|(k, a)| ((k, a), s.coeff(k, a)))
        .collect();
    WBasis { n: s.n, order: s.order, elements }
}

/// The pairing vanishes on all pairs `f_{k,a}`, `f_{r,b}` with
/// `k + r ≤ order − 1`.
pub fn coisotropy_check(w: &WBasis) -> bool {
    coisotropy_witness(w).is_none()
}

/// The first pair violating coisotropy, if any.
pub fn coisotropy_witness(w: &WBasis) -> Option<((usize, BasisIndex), (usize, BasisIndex), Cyclotomic)> {
    let keys = w.keys();
    for &(k, a) in &keys {
        for &(r, b) in &keys {
            if k + r + 1 > w.order {
                continue;
            }
            let v = residue_pairing(&w.get(k, a), &w.get(r, b));
            if !v.is_zero() {
                return Some(((k, a), (r, b), v));
            }
        }
    }
    None
}

/// Pairing matrix `M[(k,a), (r,b)] = ⟨f_{k,a}, z^r x_b⟩`.
fn duality_matrix(w: &WBasis) -> Matrix<Cyclotomic> {
    let keys = w.keys();
    keys.iter()
        .map(|&(k, a)| {
            let f = w.get(k, a);
            keys.iter().map(|&(r, b)| residue_pairing(&f, &LaurentLoop::monomial(w.n, b, r as i32))).collect()
        })
        .collect()
}

/// `W ∩ 𝔤⟦z⟧ = 0` on the truncation (independent principal parts) and the
/// duality `⟨f_{k,a}, z^r x_b⟩ = δ_{kr}δ_{ab}` for `k, r ≤ order`.
pub fn lagrangian_complement_check(w: &WBasis) -> bool {
    let keys = w.keys();
    let mut exps: Vec<i32> = w.elements.values().flat_map(|f| f.terms().map(|(e, _)| *e).filter(|e| *e < 0)).collect();
    exps.sort_unstable();
    exps.dedup();
    let principal: Matrix<Cyclotomic> = keys
        .iter()
        .map(|&(k, a)| {
            let f = w.get(k, a);
            exps.iter().flat_map(|&e| f.get(e).map_or_else(|| LieElem::zero(w.n), |x| x.clone()).to_vector()).collect()
        })
        .collect();
    let independent = !exps.is_empty() && rank(&principal) == keys.len();
    let m = duality_matrix(w);
    let dual = m.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, v)| if i == j { *v == Cyclotomic::one() } else { v.is_zero() })
    });
    independent && dual
}

/// Rebuilds the expansion from `W` alone: the elements `g_{r,b} ∈ W` dual to
/// `z^r x_b` give `Σ g_{r,b} ⊗ x^r x_b`.
pub fn dual_basis_reconstruct(w: &WBasis) -> Result<SeriesTensor, ManinError> {
    let keys = w.keys();
    let inv = inverse(&duality_matrix(w)).ok_or(ManinError::DualityViolated)?;
    let mut coeffs = BTreeMap::new();
    for (i, &(r, b)) in keys.iter().enumerate() {
        let mut g = LaurentLoop::zero(w.n);
        for (j, &(k, a)) in keys.iter().enumerate() {
            let c = &inv[j][i];
            if !c.is_zero() {
                g = g.plus(&w.get(k, a).scaled(c));
            }
        }
        if !g.is_zero() {
            coeffs.insert((r, b), g);
        }
    }
    Ok(SeriesTensor { n: w.n, order: w.order, coeffs })
}

/// `z^{−2}W ⊆ W` and `z^{−3}W ⊆ W` on the truncation: every `z^{−j} f_{k,a}`
/// with `k ≤ order − 3` equals the combination of the `f`'s selected by its
/// principal part.
pub fn s_stability(w: &WBasis) -> Result<bool, ManinError> {
    let n = w.n;
    let alg = sl(n);
    if !(0..=w.order).all(|k| {
        alg.basis().iter().all(|&a| w.get(k, a).principal_part() == LaurentLoop::dual_monomial(n, a, -(k as i32) - 1))
    }) {
        return Err(ManinError::NonStandardShape);
    }
    if w.order < 3 {
        return Ok(true);
    }
    for k in 0..=w.order - 3 {
        for &a in alg.basis() {
            for j in [2, 3] {
                let g = w.get(k, a).shift(-j);
                let mut candidate = LaurentLoop::zero(n);
                for (&e, coeff) in g.principal_part().terms() {
                    let kk = (-e - 1) as usize;
                    for &b in alg.basis() {
                        let lam = coeff.trace_form(&LieElem::basis(n, b)).expect("same rank");
                        if !lam.is_zero() {
                            candidate = candidate.plus(&w.get(kk, b).scaled(&lam));
                        }
                    }
                }
                if g != candidate {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cuspidal_closed_form, gcybe_only, stolin_sl2, yang};
    use crate::lie::LieElem;

    fn h() -> BasisIndex {
        BasisIndex::H(1)
    }

    #[test]
    fn pairing_examples() {
        let n = 2;
        let hz = LaurentLoop::monomial(n, h(), -1);
        assert_eq!(residue_pairing(&hz, &LaurentLoop::monomial(n, h(), 0)), Cyclotomic::int(2));
        let e2 = LaurentLoop::monomial(n, BasisIndex::E(1, 2), 2);
        let f1 = LaurentLoop::monomial(n, BasisIndex::E(2, 1), -1);
        assert!(residue_pairing(&e2, &f1).is_zero());
        let e1 = LaurentLoop::monomial(n, BasisIndex::E(1, 2), -1);
        assert_eq!(residue_pairing(&e1, &LaurentLoop::monomial(n, BasisIndex::E(2, 1), 0)), Cyclotomic::one());
    }

    #[test]
    fn yang_expansion_is_pure_principal() {
        let s = expand(&yang(2).tensor, 3).unwrap();
        assert!(s.has_standard_shape());
        for k in 0..=3 {
            for &a in sl(2).basis() {
                assert!(s.regular_part(k, a).is_zero());
                assert_eq!(s.coeff(k, a), LaurentLoop::dual_monomial(2, a, -(k as i32) - 1));
            }
        }
        let w = w_basis(&s);
        assert_eq!(w_basis(&expand(&yang(2).tensor, 2).unwrap()).len(), 9);
        assert!(coisotropy_check(&w) && lagrangian_complement_check(&w));
        assert_eq!(s_stability(&w), Ok(true));
    }

    #[test]
    fn cuspidal_constant_term() {
        // r = γ/(y−x) + ½(h⊗f − f⊗h): p_{0,f} = ½h, p_{0,h} = −½f
        let s = expand(&cuspidal_closed_form(2).tensor, 2).unwrap();
        let half = Cyclotomic::from_rational(crate::scalars::rat(1, 2));
        assert_eq!(s.regular_part(0, BasisIndex::E(2, 1)), LaurentLoop::term(0, LieElem::term(2, h(), half.clone())));
        assert_eq!(s.regular_part(0, h()), LaurentLoop::term(0, LieElem::term(2, BasisIndex::E(2, 1), half.negated())));
        assert!(s.regular_part(1, h()).is_zero());
    }

    #[test]
    fn gcybe_only_has_shifted_principal_part() {
        let s = expand(&gcybe_only(2).tensor, 3).unwrap();
        assert!(!s.has_standard_shape());
        for &a in sl(2).basis() {
            assert!(s.coeff(0, a).is_zero());
            assert_eq!(s.coeff(2, a), LaurentLoop::dual_monomial(2, a, -2));
        }
        let w = w_basis(&s);
        assert!(!lagrangian_complement_check(&w));
        assert_eq!(s_stability(&w), Err(ManinError::NonStandardShape));
    }

    #[test]
    fn higher_pole_rejected() {
        let r = yang(2).tensor.times(&RatFun::inv_diff(Var::Y, Var::X));
        assert_eq!(expand(&r, 2), Err(ManinError::HigherOrderPole(2)));
    }

    #[test]
    fn round_trips() {
        for (r, order) in [(yang(2).tensor, 5), (cuspidal_closed_form(2).tensor, 5), (stolin_sl2().tensor, 5)] {
            let s = expand(&r, order).unwrap();
            let w = w_basis(&s);
            assert!(coisotropy_check(&w));
            assert!(lagrangian_complement_check(&w));
            assert_eq!(dual_basis_reconstruct(&w).unwrap(), s);
        }
    }

    #[test]
    fn principal_perturbation_breaks_duality() {
        let s = expand(&cuspidal_closed_form(2).tensor, 4).unwrap();
        let mut w = w_basis(&s);
        let e = BasisIndex::E(1, 2);
        w.elements.insert((1, e), w.get(1, e).plus(&LaurentLoop::monomial(2, BasisIndex::E(2, 1), -1)));
        assert!(!lagrangian_complement_check(&w));
    }

    #[test]
    fn regular_perturbation_breaks_coisotropy() {
        // the expansion of γ/(y−x) + e⊗e
        let s = expand(&cuspidal_closed_form(2).tensor, 4).unwrap();
        let mut w = w_basis(&s);
        let e = BasisIndex::E(1, 2);
        w.elements.insert((0, e), w.get(0, e).plus(&LaurentLoop::monomial(2, e, 0)));
        assert!(lagrangian_complement_check(&w));
        let (p, q, v) = coisotropy_witness(&w).unwrap();
        assert_eq!((p, q, v), ((0, e), (0, e), Cyclotomic::int(2)));
    }

    #[test]
    fn cuspidal_w_is_s_stable() {
        let w = w_basis(&expand(&cuspidal_closed_form(2).tensor, 6).unwrap());
        assert_eq!(s_stability(&w), Ok(true));
    }
}
