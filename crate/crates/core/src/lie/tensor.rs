use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::{sl, BasisIndex, LieElem};
use crate::linalg::Matrix;
use crate::poly::RatFun;
use crate::scalars::{Cyclotomic, Ring};

/// A 2-tensor in sl_n ⊗ sl_n with coefficients in `C` (by default the
/// restricted rational functions of the spectral variables).
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor2<C = RatFun> {
    n: usize,
    entries: BTreeMap<(BasisIndex, BasisIndex), C>,
}

/// A 3-tensor in sl_n ⊗ sl_n ⊗ sl_n.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3<C = RatFun> {
    n: usize,
    entries: BTreeMap<[BasisIndex; 3], C>,
}

pub type Tensor2Const = Tensor2<Cyclotomic>;
pub type Tensor3Const = Tensor3<Cyclotomic>;

fn accumulate<K: Ord, C: Ring>(map: &mut BTreeMap<K, C>, k: K, c: C) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().plus(&c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl<C: Ring> Tensor2<C> {
    pub fn zero(n: usize) -> Self {
        Tensor2 { n, entries: BTreeMap::new() }
    }

    /// `a ⊗ b`
    pub fn simple(a: &LieElem<C>, b: &LieElem<C>) -> Self {
        assert_eq!(a.n(), b.n(), "rank mismatch");
        let mut t = Self::zero(a.n());
        for (i, ci) in a.terms() {
            for (j, cj) in b.terms() {
                t.add_term(*i, *j, ci.times(cj));
            }
        }
        t
    }

    /// `a ∧ b = a ⊗ b − b ⊗ a`
    pub fn wedge(a: &LieElem<C>, b: &LieElem<C>) -> Self {
        Self::simple(a, b).minus(&Self::simple(b, a))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every entry is exactly zero. Zero coefficients are never stored, so
    /// this is emptiness of the entry map.
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(BasisIndex, BasisIndex), &C)> {
        self.entries.iter()
    }

    pub fn get(&self, a: BasisIndex, b: BasisIndex) -> C {
        self.entries.get(&(a, b)).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, a: BasisIndex, b: BasisIndex, c: C) {
        assert!(a.is_valid(self.n) && b.is_valid(self.n), "invalid basis index for sl_{}", self.n);
        accumulate(&mut self.entries, (a, b), c);
    }

    pub fn plus(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "rank mismatch");
        let mut out = self.clone();
        for (k, c) in &o.entries {
            accumulate(&mut out.entries, *k, c.clone());
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }

    pub fn negated(&self) -> Self {
        self.map_coeffs(|c| c.negated())
    }

    pub fn times(&self, c: &C) -> Self {
        self.map_coeffs(|v| v.times(c))
    }

    pub fn scaled(&self, c: &Cyclotomic) -> Self {
        self.map_coeffs(|v| v.scaled(c))
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Tensor2<D> {
        let entries = self.entries.iter().map(|(k, c)| (*k, f(c))).filter(|(_, c)| !c.is_zero()).collect();
        Tensor2 { n: self.n, entries }
    }

    /// `σ(a ⊗ b) = b ⊗ a`, coefficients untouched.
    pub fn swap_factors(&self) -> Self {
        let entries = self.entries.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect();
        Tensor2 { n: self.n, entries }
    }

    /// Lifts constant coefficients into another coefficient ring.
    pub fn lift<D: Ring>(&self, f: impl Fn(&C) -> D) -> Tensor2<D> {
        self.map_coeffs(f)
    }

    /// Applies `φ ⊗ ψ` for linear maps on sl_n given on basis elements.
    pub fn apply_maps(&self, left: impl Fn(BasisIndex) -> LieElem<C>, right: impl Fn(BasisIndex) -> LieElem<C>) -> Self {
        let mut out = Self::zero(self.n);
        for (&(a, b), c) in &self.entries {
            let la = left(a);
            let rb = right(b);
            for (i, ci) in la.terms() {
                for (j, cj) in rb.terms() {
                    out.add_term(*i, *j, c.times(ci).times(cj));
                }
            }
        }
        out
    }
}

impl<C: Ring> Tensor3<C> {
    pub fn zero(n: usize) -> Self {
        Tensor3 { n, entries: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[BasisIndex; 3], &C)> {
        self.entries.iter()
    }

    pub fn get(&self, k: [BasisIndex; 3]) -> C {
        self.entries.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, k: [BasisIndex; 3], c: C) {
        assert!(k.iter().all(|b| b.is_valid(self.n)), "invalid basis index for sl_{}", self.n);
        accumulate(&mut self.entries, k, c);
    }

    pub fn plus(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "rank mismatch");
        let mut out = self.clone();
        for (k, c) in &o.entries {
            accumulate(&mut out.entries, *k, c.clone());
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }

    pub fn negated(&self) -> Self {
        self.map_coeffs(|c| c.negated())
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Tensor3<D> {
        let entries = self.entries.iter().map(|(k, c)| (*k, f(c))).filter(|(_, c)| !c.is_zero()).collect();
        Tensor3 { n: self.n, entries }
    }

    /// Builds a tensor from raw entries, summing duplicates.
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = ([BasisIndex; 3], C)>) -> Self {
        let mut t = Self::zero(n);
        for (k, c) in entries {
            t.add_term(k, c);
        }
        t
    }
}

/// The Casimir element `γ = Σ_a x^a ⊗ x_a` for the trace form.
pub fn casimir(n: usize) -> Tensor2Const {
    let alg = sl(n);
    let mut t = Tensor2::zero(n);
    for a in 0..alg.dim() {
        for (p, q) in alg.dual(a) {
            t.add_term(alg.index(*p), alg.index(a), Cyclotomic::from_rational(q.clone()));
        }
    }
    t
}

/// Matrix (in the fixed basis ordering, acting on column vectors) of the
/// map `c ↦ Σ tr(a·c)·b` attached to `t = Σ a ⊗ b`.
pub fn tensor_to_map<C: Ring>(t: &Tensor2<C>) -> Matrix<C> {
    let n = t.n();
    let alg = sl(n);
    let d = alg.dim();
    let mut m = vec![vec![C::zero(); d]; d];
    for (&(a, b), coeff) in t.entries() {
        let (pa, pb) = (a.position(n), b.position(n));
        for c in 0..d {
            let tr = alg.trace(pa, c);
            if tr != 0 {
                m[pb][c] = m[pb][c].plus(&coeff.times(&C::from_int(tr)));
            }
        }
    }
    m
}

/// Inverse of [`tensor_to_map`]: the tensor `Σ_c x^c ⊗ M(x_c)`.
pub fn map_to_tensor<C: Ring>(n: usize, m: &Matrix<C>) -> Tensor2<C> {
    let alg = sl(n);
    let d = alg.dim();
    let mut t = Tensor2::zero(n);
    for c in 0..d {
        for (p, q) in alg.dual(c) {
            let q = C::from_rational(q);
            for (b, row) in m.iter().enumerate() {
                if !row[c].is_zero() {
                    t.add_term(alg.index(*p), alg.index(b), q.times(&row[c]));
                }
            }
        }
    }
    t
}
