//! Exact checks of the classical Yang–Baxter equations, skew-symmetry and
//! non-degeneracy, the equivalence transformations, and the Lie bialgebra
//! cobracket `θ(f) = [f ⊗ 1 + 1 ⊗ f, r]`.

mod cojacobi;

pub use cojacobi::{co_jacobi, CoJacobiReading};

use std::collections::BTreeMap;

use crate::lie::{tensor_to_map, BasisIndex, LieElem, LieError, Tensor2, Tensor3};
use crate::linalg::{determinant, inverse, mat_mul, Matrix};
use crate::poly::{bracket_slots, embed, flip, MLaurent, PolyError, RatFun, SlotPair, Var};
use crate::scalars::{Cyclotomic, Rational, Ring};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("r may only depend on x and y, found {0}")]
    ForeignVariable(Var),
    #[error("gauge matrix is singular or has the wrong size")]
    SingularGauge,
    #[error("rescaling by zero")]
    ZeroScale,
    #[error("the (y − x) pole does not cancel in the cobracket")]
    NonRegular,
    #[error("the co-Jacobi check is disabled; its formulation is ambiguous")]
    CoJacobiDisabled,
}

fn check_vars(r: &Tensor2<RatFun>) -> Result<(), VerifyError> {
    for (_, c) in r.entries() {
        if let Some(v) = c.num().vars().into_iter().find(|v| !matches!(v, Var::X | Var::Y)) {
            return Err(VerifyError::ForeignVariable(v));
        }
    }
    Ok(())
}

/// `r^{ij}(x_a, x_b)`: factors in slots `i`, `j`, spectral variables
/// `x ↦ x_a`, `y ↦ x_b`.
fn place(r: &Tensor2<RatFun>, slots: SlotPair, a: Var, b: Var) -> Result<crate::poly::SlotTensor, VerifyError> {
    Ok(embed(r, slots, &[(Var::X, a), (Var::Y, b)])?)
}

/// `[r¹²(x₁,x₂), r¹³(x₁,x₃)] + [r¹³(x₁,x₃), r²³(x₂,x₃)] + [r¹²(x₁,x₂), r²³(x₂,x₃)]`.
pub fn cybe_lhs(r: &Tensor2<RatFun>) -> Result<Tensor3<RatFun>, VerifyError> {
    check_vars(r)?;
    let r12 = place(r, SlotPair::S12, Var::X1, Var::X2)?;
    let r13 = place(r, SlotPair::S13, Var::X1, Var::X3)?;
    let r23 = place(r, SlotPair::S23, Var::X2, Var::X3)?;
    Ok(bracket_slots(&r12, &r13)?.plus(&bracket_slots(&r13, &r23)?).plus(&bracket_slots(&r12, &r23)?))
}

/// The generalized equation
/// `[r¹²(x₁,x₂), r¹³(x₁,x₃)] + [r¹²(x₁,x₂), r²³(x₂,x₃)] + [r³²(x₃,x₂), r¹³(x₁,x₃)]`.
///
/// For skew-symmetric `r` this is the left-hand side of the CYBE; it is
/// unchanged by the rescalings `r ↦ u(x₂)·r`.
pub fn gcybe_lhs(r: &Tensor2<RatFun>) -> Result<Tensor3<RatFun>, VerifyError> {
    check_vars(r)?;
    let r12 = place(r, SlotPair::S12, Var::X1, Var::X2)?;
    let r13 = place(r, SlotPair::S13, Var::X1, Var::X3)?;
    let r23 = place(r, SlotPair::S23, Var::X2, Var::X3)?;
    let r32 = place(r, SlotPair::S32, Var::X3, Var::X2)?;
    Ok(bracket_slots(&r12, &r13)?.plus(&bracket_slots(&r12, &r23)?).plus(&bracket_slots(&r32, &r13)?))
}

/// `flip(r) + r = 0`.
pub fn skew_check(r: &Tensor2<RatFun>) -> bool {
    flip(r).plus(r).is_zero()
}

/// Evaluates every coefficient at `x = p`, `y = q`.
pub fn evaluate(r: &Tensor2<RatFun>, p: &Cyclotomic, q: &Cyclotomic) -> Result<Tensor2<Cyclotomic>, VerifyError> {
    let point: BTreeMap<Var, Cyclotomic> = [(Var::X, p.clone()), (Var::Y, q.clone())].into();
    let mut out = Tensor2::zero(r.n());
    for (&(a, b), c) in r.entries() {
        out.add_term(a, b, c.eval(&point)?);
    }
    Ok(out)
}

/// Whether `r(p, q)`, viewed as a map `sl_n → sl_n`, is invertible.
pub fn nondegenerate_at(r: &Tensor2<RatFun>, p: &Rational, q: &Rational) -> Result<bool, VerifyError> {
    let t = evaluate(r, &Cyclotomic::from_rational(p.clone()), &Cyclotomic::from_rational(q.clone()))?;
    Ok(!determinant(&tensor_to_map(&t)).is_zero())
}

/// The equivalence transformations with constant data.
#[derive(Debug, Clone, PartialEq)]
pub enum Transform {
    /// `(Ad_G ⊗ Ad_G) r` for an invertible constant matrix `G`.
    Gauge(Matrix<Cyclotomic>),
    /// `c · r`, `c ≠ 0`.
    Rescale(Cyclotomic),
    /// `x ↦ x + a`, `y ↦ y + a`.
    Shift(Cyclotomic),
}

pub fn transform(r: &Tensor2<RatFun>, kind: &Transform) -> Result<Tensor2<RatFun>, VerifyError> {
    let n = r.n();
    match kind {
        Transform::Gauge(g) => {
            if g.len() != n || g.iter().any(|row| row.len() != n) {
                return Err(VerifyError::SingularGauge);
            }
            let gi = inverse(g).ok_or(VerifyError::SingularGauge)?;
            let ad: BTreeMap<BasisIndex, LieElem<RatFun>> = crate::lie::sl(n)
                .basis()
                .iter()
                .map(|&b| {
                    let m = mat_mul(&mat_mul(g, &LieElem::<Cyclotomic>::basis(n, b).to_matrix()), &gi);
                    let e = LieElem::from_matrix(&m).expect("conjugation preserves the trace");
                    (b, e.map_coeffs(|c| RatFun::constant(c.clone())))
                })
                .collect();
            Ok(r.apply_maps(|b| ad[&b].clone(), |b| ad[&b].clone()))
        }
        Transform::Rescale(c) => {
            if c.is_zero() {
                return Err(VerifyError::ZeroScale);
            }
            Ok(r.scaled(c))
        }
        Transform::Shift(a) => {
            let a = MLaurent::constant(a.clone());
            let subs: BTreeMap<Var, MLaurent> =
                [(Var::X, MLaurent::var(Var::X).plus(&a)), (Var::Y, MLaurent::var(Var::Y).plus(&a))].into();
            let mut out = Tensor2::zero(n);
            for (&(p, q), c) in r.entries() {
                out.add_term(p, q, c.compose(&subs)?);
            }
            Ok(out)
        }
    }
}

/// A `𝔤[z]`-valued polynomial `f(z) = Σ_k f_k z^k`.
pub type LoopElem = Vec<LieElem<Cyclotomic>>;

fn eval_loop(f: &LoopElem, v: Var) -> LieElem<RatFun> {
    let n = f.first().map_or(2, LieElem::n);
    f.iter().enumerate().fold(LieElem::zero(n), |acc, (k, fk)| {
        let zk = RatFun::from_laurent(MLaurent::term(crate::poly::Monomial::var(v, k as i32), Cyclotomic::one()));
        acc.plus(&fk.map_coeffs(|c| RatFun::constant(c.clone())).times(&zk))
    })
}

/// `[f(x) ⊗ 1 + 1 ⊗ f(y), r(x, y)]` with the pole along `y = x` cancelled.
pub fn cobracket(f: &LoopElem, r: &Tensor2<RatFun>) -> Result<Tensor2<RatFun>, VerifyError> {
    let n = r.n();
    let (fx, fy) = (eval_loop(f, Var::X), eval_loop(f, Var::Y));
    let mut out = Tensor2::zero(n);
    for (&(a, b), c) in r.entries() {
        let (ea, eb) = (LieElem::basis(n, a), LieElem::basis(n, b));
        for (p, cp) in fx.bracket(&ea)?.terms() {
            out.add_term(*p, b, cp.times(c));
        }
        for (q, cq) in fy.bracket(&eb)?.terms() {
            out.add_term(a, *q, cq.times(c));
        }
    }
    if out.entries().any(|(_, c)| !c.is_laurent()) {
        return Err(VerifyError::NonRegular);
    }
    Ok(out)
}

/// Outcome of one check, with the first offending entry when it fails.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub identity: String,
    pub pass: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub indices: Vec<BasisIndex>,
    pub value: String,
}

impl Verdict {
    fn from_tensor3(identity: &str, t: &Tensor3<RatFun>) -> Self {
        let witness = t.entries().next().map(|(k, c)| Witness { indices: k.to_vec(), value: c.to_string() });
        Verdict { identity: identity.into(), pass: witness.is_none(), witness }
    }

    fn from_tensor2(identity: &str, t: &Tensor2<RatFun>) -> Self {
        let witness = t.entries().next().map(|(&(a, b), c)| Witness { indices: vec![a, b], value: c.to_string() });
        Verdict { identity: identity.into(), pass: witness.is_none(), witness }
    }
}

/// The checks exposed as verdicts.
#[derive(Debug, Clone, PartialEq)]
pub enum Check {
    Cybe,
    Gcybe,
    Skew,
    Nondegenerate(Rational, Rational),
}

pub fn run_check(r: &Tensor2<RatFun>, check: &Check) -> Result<Verdict, VerifyError> {
    Ok(match check {
        Check::Cybe => Verdict::from_tensor3("cybe", &cybe_lhs(r)?),
        Check::Gcybe => Verdict::from_tensor3("gcybe", &gcybe_lhs(r)?),
        Check::Skew => Verdict::from_tensor2("skew", &flip(r).plus(r)),
        Check::Nondegenerate(p, q) => {
            let pass = nondegenerate_at(r, p, q)?;
            Verdict {
                identity: "nondegenerate".into(),
                pass,
                witness: (!pass).then(|| Witness { indices: vec![], value: format!("det r({p}, {q}) = 0") }),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cuspidal_closed_form, gcybe_only, nodal_closed_form, stolin_sl2, yang};
    use crate::scalars::rat;

    fn q(p: i64) -> Rational {
        rat(p, 1)
    }

    #[test]
    fn cybe_examples() {
        assert!(cybe_lhs(&yang(2).tensor).unwrap().is_zero());
        assert!(cybe_lhs(&cuspidal_closed_form(2).tensor).unwrap().is_zero());
        assert!(cybe_lhs(&nodal_closed_form(3).tensor).unwrap().is_zero());
        assert!(cybe_lhs(&stolin_sl2().tensor).unwrap().is_zero());
        assert!(!cybe_lhs(&gcybe_only(2).tensor).unwrap().is_zero());
    }

    #[test]
    fn gcybe_examples() {
        assert!(gcybe_lhs(&yang(2).tensor).unwrap().is_zero());
        assert!(gcybe_lhs(&gcybe_only(2).tensor).unwrap().is_zero());
        assert!(gcybe_lhs(&Tensor2::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn gcybe_invariant_under_spectral_rescaling() {
        // u(x₂) = x₂² + 1 multiplying r(x₁, x₂)
        let u = RatFun::var(Var::Y).times(&RatFun::var(Var::Y)).plus(&RatFun::one());
        let r = cuspidal_closed_form(2).tensor.times(&u);
        assert!(gcybe_lhs(&r).unwrap().is_zero());
        assert!(!cybe_lhs(&r).unwrap().is_zero());
    }

    #[test]
    fn skew_examples() {
        assert!(skew_check(&yang(3).tensor));
        assert!(!skew_check(&gcybe_only(2).tensor));
        assert!(skew_check(&cuspidal_closed_form(2).tensor));
        assert!(skew_check(&stolin_sl2().tensor));
    }

    #[test]
    fn nondegeneracy() {
        assert!(nondegenerate_at(&yang(2).tensor, &q(1), &q(2)).unwrap());
        assert!(nondegenerate_at(&nodal_closed_form(2).tensor, &q(1), &q(2)).unwrap());
        assert!(nondegenerate_at(&nodal_closed_form(2).tensor, &q(2), &q(1)).unwrap());
        let mut ee = Tensor2::zero(2);
        ee.add_term(BasisIndex::E(1, 2), BasisIndex::E(1, 2), RatFun::one());
        assert!(!nondegenerate_at(&ee, &q(1), &q(2)).unwrap());
        assert_eq!(nondegenerate_at(&yang(2).tensor, &q(1), &q(1)), Err(VerifyError::Poly(PolyError::PoleAtPoint)));
    }

    #[test]
    fn transforms() {
        let y = yang(2).tensor;
        let id = vec![vec![Cyclotomic::one(), Cyclotomic::zero()], vec![Cyclotomic::zero(), Cyclotomic::one()]];
        assert_eq!(transform(&y, &Transform::Gauge(id)).unwrap(), y);
        let two = transform(&y, &Transform::Rescale(Cyclotomic::int(2))).unwrap();
        assert!(cybe_lhs(&two).unwrap().is_zero());
        assert_eq!(transform(&y, &Transform::Shift(Cyclotomic::int(3))).unwrap(), y);
        assert_eq!(transform(&y, &Transform::Rescale(Cyclotomic::zero())), Err(VerifyError::ZeroScale));
        let sing = vec![vec![Cyclotomic::one(); 2]; 2];
        assert_eq!(transform(&y, &Transform::Gauge(sing)), Err(VerifyError::SingularGauge));
    }

    #[test]
    fn gauge_preserves_gcybe() {
        let perm = vec![vec![Cyclotomic::zero(), Cyclotomic::one()], vec![Cyclotomic::one(), Cyclotomic::zero()]];
        let diag = vec![vec![Cyclotomic::int(2), Cyclotomic::zero()], vec![Cyclotomic::zero(), Cyclotomic::from_rational(rat(1, 2))]];
        for r in [yang(2), gcybe_only(2), nodal_closed_form(2), cuspidal_closed_form(2), stolin_sl2()] {
            for g in [&perm, &diag] {
                let t = transform(&r.tensor, &Transform::Gauge(g.clone())).unwrap();
                assert!(gcybe_lhs(&t).unwrap().is_zero(), "{}", r.name);
            }
        }
    }

    #[test]
    fn cobracket_examples() {
        let h = LieElem::basis(2, BasisIndex::H(1));
        let e = LieElem::basis(2, BasisIndex::E(1, 2));
        assert!(cobracket(&vec![h.clone()], &yang(2).tensor).unwrap().is_zero());
        let ze = vec![LieElem::zero(2), e];
        let t = cobracket(&ze, &yang(2).tensor).unwrap();
        assert!(!t.is_zero() && t.entries().all(|(_, c)| c.is_laurent()));
        cobracket(&vec![h], &cuspidal_closed_form(2).tensor).unwrap();
        // a tensor that is not ad-invariant on the diagonal
        let mut bad = Tensor2::zero(2);
        bad.add_term(BasisIndex::E(1, 2), BasisIndex::E(1, 2), RatFun::inv_diff(Var::Y, Var::X));
        let f = vec![LieElem::basis(2, BasisIndex::E(2, 1))];
        assert_eq!(cobracket(&f, &bad), Err(VerifyError::NonRegular));
    }

    #[test]
    fn verdicts_carry_witnesses() {
        let v = run_check(&gcybe_only(2).tensor, &Check::Cybe).unwrap();
        assert!(!v.pass && v.witness.is_some());
        let v = run_check(&yang(2).tensor, &Check::Skew).unwrap();
        assert!(v.pass && v.witness.is_none());
    }
}
