//! Closed-form r-matrices: Yang's solution, the GCYBE-only example, the
//! nodal and cuspidal solutions attached to simple torsion-free sheaves of
//! rank `n`, and Stolin's rational sl₂ solution.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::lie::{casimir, g_basis, h_basis, h_dual, BasisIndex, LieElem, Tensor2, Tensor2Const};
use crate::poly::{RatFun, Var};
use crate::scalars::{rat, zeta, Cyclotomic, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("entry {name} requires n = {required}, got {got}")]
    FixedRank { name: String, required: usize, got: usize },
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
}

/// Properties an entry is expected to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    Cybe,
    GcybeOnly,
    Skew,
    Nondegenerate,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::Cybe => "CYBE",
            Flag::GcybeOnly => "GCYBE-only",
            Flag::Skew => "skew",
            Flag::Nondegenerate => "nondegenerate",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub n: usize,
    pub tensor: Tensor2<RatFun>,
    pub flags: BTreeSet<Flag>,
}

impl CatalogEntry {
    fn new(name: &str, n: usize, tensor: Tensor2<RatFun>, flags: &[Flag]) -> Self {
        CatalogEntry { name: name.to_string(), n, tensor, flags: flags.iter().copied().collect() }
    }

    pub fn has(&self, f: Flag) -> bool {
        self.flags.contains(&f)
    }
}

/// Names accepted by [`entry`], with a one-line description.
pub const NAMES: &[(&str, &str)] = &[
    ("yang", "γ/(y−x)"),
    ("gcybe_only", "x/(y−x)·γ; generalized CYBE only"),
    ("nodal", "geometric r-matrix of the nodal cubic, rank n"),
    ("cuspidal", "geometric r-matrix of the cuspidal cubic, rank n"),
    ("stolin_sl2", "Stolin's rational sl₂ solution with z = y−x (n = 2)"),
    ("rational_sl2", "γ/z + ½(h⊗f − f⊗h) written in h, e, f with z = y−x (n = 2)"),
];

/// Looks up an entry by name.
pub fn entry(name: &str, n: usize) -> Result<CatalogEntry, CatalogError> {
    if n < 2 {
        return Err(CatalogError::RankTooSmall(n));
    }
    match name {
        "yang" => Ok(yang(n)),
        "gcybe_only" => Ok(gcybe_only(n)),
        "nodal" => Ok(nodal_closed_form(n)),
        "cuspidal" => Ok(cuspidal_closed_form(n)),
        "stolin_sl2" if n == 2 => Ok(stolin_sl2()),
        "rational_sl2" if n == 2 => Ok(rational_sl2()),
        "stolin_sl2" | "rational_sl2" => Err(CatalogError::FixedRank { name: name.into(), required: 2, got: n }),
        _ => Err(CatalogError::UnknownName(name.into())),
    }
}

fn constant(t: &Tensor2Const) -> Tensor2<RatFun> {
    t.lift(|c| RatFun::constant(c.clone()))
}

/// `1/(y − x)`
fn pole() -> RatFun {
    RatFun::inv_diff(Var::Y, Var::X)
}

fn simple(a: &LieElem<Cyclotomic>, b: &LieElem<Cyclotomic>) -> Tensor2Const {
    Tensor2::simple(a, b)
}

fn e(n: usize, i: usize, j: usize) -> LieElem<Cyclotomic> {
    LieElem::basis(n, BasisIndex::E(i as u16, j as u16))
}

/// Yang's r-matrix `γ/(y − x)`.
pub fn yang(n: usize) -> CatalogEntry {
    let t = constant(&casimir(n)).times(&pole());
    CatalogEntry::new("yang", n, t, &[Flag::Cybe, Flag::Skew, Flag::Nondegenerate])
}

/// `x/(y − x)·γ`, which solves the generalized CYBE but not the CYBE.
pub fn gcybe_only(n: usize) -> CatalogEntry {
    let t = constant(&casimir(n)).times(&RatFun::var(Var::X).times(&pole()));
    CatalogEntry::new("gcybe_only", n, t, &[Flag::GcybeOnly, Flag::Nondegenerate])
}

/// The pieces of the nodal solution `r_st + r_𝔥 + r_sp`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodalParts {
    /// Constant part of `r_st`: `½ Σ g_j^*⊗g_j + Σ_{α>0} e_{−α}⊗e_α`.
    pub st_constant: Tensor2Const,
    pub r_h: Tensor2Const,
    pub r_sp: Tensor2Const,
}

impl NodalParts {
    /// The full constant part `r_st − x/(y−x)γ + r_𝔥 + r_sp`.
    pub fn constant_part(&self) -> Tensor2Const {
        self.st_constant.plus(&self.r_h).plus(&self.r_sp)
    }
}

/// The coefficient `(1/2n)(1 + ζ_j)/(1 − ζ_j)` of `g_{n−j}⊗g_j` in `r_𝔥`.
pub fn r_h_coefficient(n: usize, j: usize) -> Cyclotomic {
    let z = zeta(n as u32, j as i64);
    let one = Cyclotomic::one();
    let ratio = one.plus(&z).times(&one.minus(&z).inv().expect("ζ_j ≠ 1"));
    ratio.times(&Cyclotomic::from_rational(rat(1, 2 * n as i64)))
}

pub fn nodal_parts(n: usize) -> NodalParts {
    let mut st = Tensor2::zero(n);
    for (hd, h) in h_dual(n).iter().zip(h_basis(n)) {
        st = st.plus(&simple(hd, &h).scaled(&Cyclotomic::from_rational(rat(1, 2))));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            st = st.plus(&simple(&e(n, j, i), &e(n, i, j)));
        }
    }
    let g = g_basis(n);
    let mut r_h = Tensor2::zero(n);
    for j in 1..n {
        r_h = r_h.plus(&simple(&g[n - j - 1], &g[j - 1]).scaled(&r_h_coefficient(n, j)));
    }
    let mut r_sp = Tensor2::zero(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let mut s = LieElem::zero(n);
            for k in 1..i {
                s = s.plus(&e(n, i - k, j - k));
            }
            r_sp = r_sp.plus(&Tensor2::wedge(&e(n, j, i), &s));
        }
    }
    NodalParts { st_constant: st, r_h, r_sp }
}

/// The geometric r-matrix of the nodal cubic: `r_st + r_𝔥 + r_sp`.
pub fn nodal_closed_form(n: usize) -> CatalogEntry {
    let pole_part = constant(&casimir(n)).times(&RatFun::var(Var::X).times(&pole()));
    let t = pole_part.plus(&constant(&nodal_parts(n).constant_part()));
    CatalogEntry::new("nodal", n, t, &[Flag::Cybe, Flag::Skew, Flag::Nondegenerate])
}

/// Constant part of the cuspidal solution:
/// `Σ_k h_k^*∧e_{k+1,k} + Σ_{k≥l+2} (Σ_{j<l} e_{l−j,k−j−1})∧e_{k,l}`.
pub fn cuspidal_constant_part(n: usize) -> Tensor2Const {
    let mut t = Tensor2::zero(n);
    for (k, hd) in h_dual(n).iter().enumerate() {
        t = t.plus(&Tensor2::wedge(hd, &e(n, k + 2, k + 1)));
    }
    for k in 1..=n {
        for l in 1..=n {
            if k < l + 2 {
                continue;
            }
            let mut s = LieElem::zero(n);
            for j in 0..l {
                s = s.plus(&e(n, l - j, k - j - 1));
            }
            t = t.plus(&Tensor2::wedge(&s, &e(n, k, l)));
        }
    }
    t
}

/// The geometric r-matrix of the cuspidal cubic.
pub fn cuspidal_closed_form(n: usize) -> CatalogEntry {
    let t = constant(&casimir(n)).times(&pole()).plus(&constant(&cuspidal_constant_part(n)));
    CatalogEntry::new("cuspidal", n, t, &[Flag::Cybe, Flag::Skew, Flag::Nondegenerate])
}

/// Stolin's solution `γ/z + z(f⊗h + h⊗f) − z³ f⊗f` with `z = y − x`.
pub fn stolin_sl2() -> CatalogEntry {
    let (h, f) = (LieElem::basis(2, BasisIndex::H(1)), e(2, 2, 1));
    let z = RatFun::var(Var::Y).minus(&RatFun::var(Var::X));
    let z3 = z.times(&z).times(&z);
    let t = constant(&casimir(2))
        .times(&pole())
        .plus(&constant(&simple(&f, &h).plus(&simple(&h, &f))).times(&z))
        .minus(&constant(&simple(&f, &f)).times(&z3));
    CatalogEntry::new("stolin_sl2", 2, t, &[Flag::Cybe, Flag::Skew, Flag::Nondegenerate])
}

/// `(1/z)(½h⊗h + e⊗f + f⊗e) + ½(h⊗f − f⊗h)` with `z = y − x`, assembled
/// directly from the matrices `h`, `e`, `f` rather than from the Casimir.
pub fn rational_sl2() -> CatalogEntry {
    let (h, ee, f) = (LieElem::basis(2, BasisIndex::H(1)), e(2, 1, 2), e(2, 2, 1));
    let half = Cyclotomic::from_rational(rat(1, 2));
    let polar = simple(&h, &h).scaled(&half).plus(&simple(&ee, &f)).plus(&simple(&f, &ee));
    let t = constant(&polar).times(&pole()).plus(&constant(&simple(&h, &f).minus(&simple(&f, &h)).scaled(&half)));
    CatalogEntry::new("rational_sl2", 2, t, &[Flag::Cybe, Flag::Skew, Flag::Nondegenerate])
}

impl FromStr for Flag {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, CatalogError> {
        match s {
            "CYBE" => Ok(Flag::Cybe),
            "GCYBE-only" => Ok(Flag::GcybeOnly),
            "skew" => Ok(Flag::Skew),
            "nondegenerate" => Ok(Flag::Nondegenerate),
            _ => Err(CatalogError::UnknownName(s.into())),
        }
    }
}
