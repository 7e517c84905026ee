//! Co-Jacobi identity for the cobracket. The identity is stated ambiguously
//! in the source literature, so both common readings are implemented and the
//! check only runs when explicitly enabled.

use super::{cobracket, LoopElem, VerifyError};
use crate::lie::{LieElem, Tensor2, Tensor3};
use crate::poly::{PolyError, RatFun, Var};
use crate::scalars::Ring;

/// Which composite is fed to the cyclic sum `τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoJacobiReading {
    /// `τ ∘ (θ ⊗ id) ∘ θ`
    LeftThenCycle,
    /// `τ ∘ (id ⊗ θ) ∘ θ`
    RightThenCycle,
}

/// `θ(a z^k)` with its variables renamed `x ↦ u`, `y ↦ v`.
fn theta_monomial(a: &LieElem<crate::scalars::Cyclotomic>, k: i32, r: &Tensor2<RatFun>, u: Var, v: Var) -> Result<Tensor2<RatFun>, VerifyError> {
    if k < 0 {
        return Err(PolyError::OutsideClass("negative power of the loop variable".into()).into());
    }
    let mut f: LoopElem = vec![LieElem::zero(a.n()); k as usize];
    f.push(a.clone());
    let t = cobracket(&f, r)?;
    let rename = |w: Var| match w {
        Var::X => u,
        Var::Y => v,
        o => o,
    };
    let mut out = Tensor2::zero(t.n());
    for (&(p, q), c) in t.entries() {
        out.add_term(p, q, c.rename(rename)?);
    }
    Ok(out)
}

fn cyclic_sum(t: &Tensor3<RatFun>) -> Result<Tensor3<RatFun>, VerifyError> {
    let sigma = |t: &Tensor3<RatFun>| -> Result<Tensor3<RatFun>, VerifyError> {
        let rename = |w: Var| match w {
            Var::X1 => Var::X2,
            Var::X2 => Var::X3,
            Var::X3 => Var::X1,
            o => o,
        };
        let mut out = Tensor3::zero(t.n());
        for (k, c) in t.entries() {
            out.add_term([k[2], k[0], k[1]], c.rename(rename)?);
        }
        Ok(out)
    };
    let s1 = sigma(t)?;
    let s2 = sigma(&s1)?;
    Ok(t.plus(&s1).plus(&s2))
}

/// Evaluates the chosen reading of the co-Jacobi expression on `f`.
/// Returns [`VerifyError::CoJacobiDisabled`] unless `enabled` is set.
pub fn co_jacobi(f: &LoopElem, r: &Tensor2<RatFun>, reading: CoJacobiReading, enabled: bool) -> Result<Tensor3<RatFun>, VerifyError> {
    if !enabled {
        return Err(VerifyError::CoJacobiDisabled);
    }
    let n = r.n();
    let theta = cobracket(f, r)?;
    let mut out = Tensor3::zero(n);
    for (&(a, b), c) in theta.entries() {
        for (m, coeff) in c.num().terms() {
            let (kx, ky) = (m.exp(Var::X), m.exp(Var::Y));
            let scalar = RatFun::constant(coeff.clone());
            match reading {
                CoJacobiReading::LeftThenCycle => {
                    let inner = theta_monomial(&LieElem::basis(n, a), kx, r, Var::X1, Var::X2)?;
                    let outer = power(Var::X3, ky)?.times(&scalar);
                    for (&(p, q), cc) in inner.entries() {
                        out.add_term([p, q, b], cc.times(&outer));
                    }
                }
                CoJacobiReading::RightThenCycle => {
                    let inner = theta_monomial(&LieElem::basis(n, b), ky, r, Var::X2, Var::X3)?;
                    let outer = power(Var::X1, kx)?.times(&scalar);
                    for (&(p, q), cc) in inner.entries() {
                        out.add_term([a, p, q], cc.times(&outer));
                    }
                }
            }
        }
    }
    cyclic_sum(&out)
}

fn power(v: Var, k: i32) -> Result<RatFun, VerifyError> {
    if k < 0 {
        return Err(PolyError::OutsideClass("negative power".into()).into());
    }
    Ok((0..k).fold(RatFun::one(), |acc, _| acc.times(&RatFun::var(v))))
}
