use num_traits::Zero;

use super::{canonical_triple, CurveKind, MatTriple, QFrac, SheafError};
use crate::lie::{sl, LieElem};
use crate::linalg::{kernel, rank, rref, Matrix};
use crate::poly::{RatFun, Var};
use crate::scalars::{Cyclotomic, Rational, Ring, UPoly};

/// An element `Φ = A + zB` of `Sol`, with `A`, `B` in sl_n over Q(x).
#[derive(Debug, Clone, PartialEq)]
pub struct SolElement {
    pub a: LieElem<RatFun>,
    pub b: LieElem<RatFun>,
}

impl SolElement {
    /// Coordinates `(A, B)` over Q(x), or `None` when an entry is not a
    /// rational Laurent polynomial in `x`.
    pub(crate) fn coords(&self) -> Option<(Vec<QFrac>, Vec<QFrac>)> {
        let conv = |e: &LieElem<RatFun>| -> Option<Vec<QFrac>> {
            e.to_vector().iter().map(|c| QFrac::from_ratfun(c, Var::X)).collect()
        };
        Some((conv(&self.a)?, conv(&self.b)?))
    }

    fn from_coords(n: usize, v: &[QFrac]) -> Self {
        let d = v.len() / 2;
        let conv = |s: &[QFrac]| -> Vec<RatFun> {
            s.iter().map(|c| c.to_ratfun(Var::X).expect("polynomial entries")).collect()
        };
        SolElement { a: LieElem::from_vector(n, &conv(&v[..d])), b: LieElem::from_vector(n, &conv(&v[d..])) }
    }
}

/// A basis of `Sol` over Q(x).
#[derive(Debug, Clone, PartialEq)]
pub struct SolBasis {
    pub n: usize,
    pub curve: CurveKind,
    pub elements: Vec<SolElement>,
}

impl SolBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn lin(a: &Rational, b: &Rational) -> QFrac {
    QFrac::poly(UPoly::new(vec![a.clone(), b.clone()]))
}

fn sl_matrices(n: usize) -> Vec<Matrix<Rational>> {
    sl(n)
        .basis()
        .iter()
        .map(|b| {
            let mut m = vec![vec![Rational::zero(); n]; n];
            for ((i, j), v) in b.matrix_units() {
                m[i - 1][j - 1] += Rational::from_integer(v.into());
            }
            m
        })
        .collect()
}

fn rmul(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let cols = b[0].len();
    a.iter()
        .map(|row| (0..cols).map(|j| row.iter().zip(b).map(|(x, r)| x * &r[j]).sum()).collect())
        .collect()
}

/// The linear system in the unknowns (C or D first, then A, then B, both in
/// sl_n coordinates) whose kernel projects onto `Sol`.
fn sol_system(t: &MatTriple) -> Matrix<QFrac> {
    let (n, m) = (t.n, t.m);
    let d = n * n - 1;
    let xs = sl_matrices(n);
    let cols = m * m + 2 * d;
    let zero = Rational::zero();
    let mut rows = Vec::new();
    // Contribution of the gl_m unknown E_kl to entry (i, j) of ΘE_kl.
    let gl = |th: &Matrix<Rational>, i: usize, j: usize, k: usize, l: usize| {
        if l == j {
            th[i][k].clone()
        } else {
            Rational::zero()
        }
    };
    for eq in 0..2 {
        let products: Vec<(Matrix<Rational>, Matrix<Rational>)> =
            xs.iter().map(|x| (rmul(x, &t.first), rmul(x, &t.second))).collect();
        for i in 0..n {
            for j in 0..m {
                let mut row = vec![QFrac::zero(); cols];
                for k in 0..m {
                    for l in 0..m {
                        let (f, s) = (gl(&t.first, i, j, k, l), gl(&t.second, i, j, k, l));
                        row[k * m + l] = match (t.curve, eq) {
                            // AΘ₀ + xΘ₀C
                            (CurveKind::Nodal, 0) => lin(&zero, &f),
                            // BΘ∞ − Θ∞C
                            (CurveKind::Nodal, _) => lin(&-s, &zero),
                            // BΘ∘ − Θ∘D
                            (CurveKind::Cuspidal, 0) => lin(&-f, &zero),
                            // AΘ∘ + BΘε − (Θε − xΘ∘)D
                            (CurveKind::Cuspidal, _) => lin(&-s, &f),
                        };
                    }
                }
                for (p, (pf, ps)) in products.iter().enumerate() {
                    let (ca, cb) = match (t.curve, eq) {
                        (CurveKind::Nodal, 0) => (pf[i][j].clone(), zero.clone()),
                        (CurveKind::Nodal, _) => (zero.clone(), ps[i][j].clone()),
                        (CurveKind::Cuspidal, 0) => (zero.clone(), pf[i][j].clone()),
                        (CurveKind::Cuspidal, _) => (pf[i][j].clone(), ps[i][j].clone()),
                    };
                    row[m * m + p] = lin(&ca, &zero);
                    row[m * m + d + p] = lin(&cb, &zero);
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// Canonical basis of the row space: reduced echelon rows, each cleared of
/// denominators so that every entry is a polynomial in `x`.
fn canonical_span(vectors: Vec<Vec<QFrac>>) -> Vec<Vec<QFrac>> {
    let mut m = vectors;
    let pivots = rref(&mut m);
    m.truncate(pivots.len());
    m.into_iter()
        .map(|row| {
            let l = row.iter().fold(UPoly::one(), |acc, c| {
                let g = acc.gcd(c.den());
                acc.mul(&c.den().exact_div(&g).expect("gcd divides"))
            });
            let l = QFrac::poly(l);
            row.iter().map(|c| c.times(&l)).collect()
        })
        .collect()
}

/// `Sol` for an arbitrary triple (no simplicity validation).
pub fn sol_space_for(t: &MatTriple) -> SolBasis {
    let d = t.n * t.n - 1;
    let sys = sol_system(t);
    let cols = t.m * t.m + 2 * d;
    let projected: Vec<Vec<QFrac>> = kernel(&sys, cols).into_iter().map(|v| v[t.m * t.m..].to_vec()).collect();
    let span = canonical_span(projected);
    SolBasis { n: t.n, curve: t.curve, elements: span.iter().map(|v| SolElement::from_coords(t.n, v)).collect() }
}

/// `Sol` for the canonical simple triple of rank `n`.
pub fn sol_space(n: usize, curve: CurveKind) -> Result<SolBasis, SheafError> {
    Ok(sol_space_for(&canonical_triple(n, curve)?))
}

/// The explicit nodal parametrization `−x(D 0; a β) + z(β b; 0 D)`,
/// `β = −tr D`, as `(A, B)` coordinate vectors.
pub fn block_parametrization(n: usize) -> Vec<SolElement> {
    let mut out = Vec::new();
    let x = || RatFun::var(Var::X);
    let push = |out: &mut Vec<SolElement>, am: Matrix<RatFun>, bm: Matrix<RatFun>| {
        out.push(SolElement {
            a: LieElem::from_matrix(&am).expect("traceless by construction"),
            b: LieElem::from_matrix(&bm).expect("traceless by construction"),
        });
    };
    let zero = || vec![vec![RatFun::zero(); n]; n];
    for k in 0..n - 1 {
        for l in 0..n - 1 {
            let beta = if k == l { RatFun::one().negated() } else { RatFun::zero() };
            let (mut am, mut bm) = (zero(), zero());
            am[k][l] = x().negated();
            am[n - 1][n - 1] = x().negated().times(&beta);
            bm[0][0] = beta;
            bm[k + 1][l + 1] = RatFun::one();
            push(&mut out, am, bm);
        }
    }
    for k in 0..n - 1 {
        let mut am = zero();
        am[n - 1][k] = x().negated();
        push(&mut out, am, zero());
        let mut bm = zero();
        bm[0][k + 1] = RatFun::one();
        push(&mut out, zero(), bm);
    }
    out
}

/// Whether two families span the same subspace after specializing `x`.
pub fn span_agrees_at(u: &[SolElement], v: &[SolElement], x: &Rational) -> bool {
    let eval = |e: &SolElement| -> Option<Vec<Cyclotomic>> {
        let (a, b) = e.coords()?;
        a.iter().chain(&b).map(|c| c.eval(x).map(Cyclotomic::from_rational)).collect()
    };
    let (Some(mu), Some(mv)) = (u.iter().map(eval).collect::<Option<Vec<_>>>(), v.iter().map(eval).collect::<Option<Vec<_>>>())
    else {
        return false;
    };
    let both: Vec<Vec<Cyclotomic>> = mu.iter().chain(&mv).cloned().collect();
    let r = rank(&both);
    rank(&mu) == r && rank(&mv) == r
}
