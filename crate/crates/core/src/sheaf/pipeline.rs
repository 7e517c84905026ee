use super::{sol_space, CurveKind, QFrac, SheafError, SolElement};
use crate::lie::{map_to_tensor, LieElem, Tensor2};
use crate::linalg::{inverse, mat_mul, Matrix};
use crate::poly::{RatFun, Var};
use crate::scalars::Ring;

/// `res_x(Φ)`: `(A + xB)/x` on the nodal curve, `A + xB` on the cuspidal one.
pub fn res_map(phi: &SolElement, curve: CurveKind) -> LieElem<RatFun> {
    let s = phi.a.plus(&phi.b.times(&RatFun::var(Var::X)));
    match curve {
        CurveKind::Nodal => s.map_coeffs(|c| c.times(&x_inverse())),
        CurveKind::Cuspidal => s,
    }
}

fn x_inverse() -> RatFun {
    RatFun::new(crate::poly::MLaurent::one(), [(crate::poly::Factor::Var(Var::X), 1)]).expect("valid factor")
}

/// `ev_y(Φ) = (A + yB)/(y − x)`.
pub fn ev_map(phi: &SolElement, y: Var) -> LieElem<RatFun> {
    let pole = RatFun::inv_diff(y, Var::X);
    phi.a.plus(&phi.b.times(&RatFun::var(y))).map_coeffs(|c| c.times(&pole))
}

/// The matrix of `ρ♯(x, y) = ev_y ∘ res_x⁻¹` on sl_n, in the fixed basis
/// ordering (columns are images of basis vectors).
pub fn rsharp(n: usize, curve: CurveKind) -> Result<Matrix<RatFun>, SheafError> {
    let sol = sol_space(n, curve)?;
    let d = n * n - 1;
    let mut res: Matrix<QFrac> = vec![Vec::with_capacity(d); d];
    let mut pa: Matrix<QFrac> = vec![Vec::with_capacity(d); d];
    let mut pb: Matrix<QFrac> = vec![Vec::with_capacity(d); d];
    let x = QFrac::x();
    let x_inv = x.inverse_nonzero();
    for e in &sol.elements {
        let (a, b) = e.coords().ok_or(SheafError::OutsideClass)?;
        for i in 0..d {
            let r = a[i].plus(&b[i].times(&x));
            res[i].push(match curve {
                CurveKind::Nodal => r.times(&x_inv),
                CurveKind::Cuspidal => r,
            });
            pa[i].push(a[i].clone());
            pb[i].push(b[i].clone());
        }
    }
    let inv = inverse(&res).ok_or(SheafError::Singular)?;
    let (ma, mb) = (mat_mul(&pa, &inv), mat_mul(&pb, &inv));
    let pole = RatFun::inv_diff(Var::Y, Var::X);
    let y = RatFun::var(Var::Y);
    let mut out = vec![vec![RatFun::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let a = ma[i][j].to_ratfun(Var::X).ok_or(SheafError::OutsideClass)?;
            let b = mb[i][j].to_ratfun(Var::X).ok_or(SheafError::OutsideClass)?;
            out[i][j] = a.plus(&b.times(&y)).times(&pole);
        }
    }
    Ok(out)
}

/// The geometric r-matrix `r(x, y) = Σ_a x^a ⊗ ρ♯(x, y)(x_a)`.
pub fn geometric_r(n: usize, curve: CurveKind) -> Result<Tensor2<RatFun>, SheafError> {
    Ok(map_to_tensor(n, &rsharp(n, curve)?))
}

impl QFrac {
    fn inverse_nonzero(&self) -> QFrac {
        crate::linalg::Field::inverse(self).expect("nonzero")
    }
}
