use std::collections::BTreeMap;

use super::{sl, BasisIndex, LieError};
use crate::linalg::Matrix;
use crate::scalars::{Cyclotomic, Ring};

/// An element of sl_n with coefficients in a ring `C`; zero coefficients
/// are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct LieElem<C> {
    n: usize,
    coeffs: BTreeMap<BasisIndex, C>,
}

impl<C: Ring> LieElem<C> {
    pub fn zero(n: usize) -> Self {
        LieElem { n, coeffs: BTreeMap::new() }
    }

    pub fn basis(n: usize, b: BasisIndex) -> Self {
        Self::term(n, b, C::one())
    }

    pub fn term(n: usize, b: BasisIndex, c: C) -> Self {
        assert!(b.is_valid(n), "{b} is not a basis element of sl_{n}");
        let mut e = Self::zero(n);
        e.add_term(b, c);
        e
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (BasisIndex, C)>) -> Self {
        let mut e = Self::zero(n);
        for (b, c) in terms {
            e.add_term(b, c);
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, b: BasisIndex) -> C {
        self.coeffs.get(&b).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &C)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, b: BasisIndex, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().plus(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "rank mismatch");
        let mut out = self.clone();
        for (b, c) in &o.coeffs {
            out.add_term(*b, c.clone());
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

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> LieElem<D> {
        let coeffs = self.coeffs.iter().map(|(b, c)| (*b, f(c))).filter(|(_, c)| !c.is_zero()).collect();
        LieElem { n: self.n, coeffs }
    }

    fn check_rank(&self, o: &Self) -> Result<(), LieError> {
        if self.n != o.n {
            return Err(LieError::RankMismatch(self.n, o.n));
        }
        Ok(())
    }

    /// The commutator `[self, o]`.
    pub fn bracket(&self, o: &Self) -> Result<Self, LieError> {
        self.check_rank(o)?;
        let alg = sl(self.n);
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &o.coeffs {
                let pa = a.position(self.n);
                let pb = b.position(self.n);
                let cab = ca.times(cb);
                for &(k, v) in alg.bracket(pa, pb) {
                    out.add_term(alg.index(k), cab.times(&C::from_int(v)));
                }
            }
        }
        Ok(out)
    }

    /// `tr(self · o)` of the represented matrices.
    pub fn trace_form(&self, o: &Self) -> Result<C, LieError> {
        self.check_rank(o)?;
        let alg = sl(self.n);
        let mut acc = C::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &o.coeffs {
                let t = alg.trace(a.position(self.n), b.position(self.n));
                if t != 0 {
                    acc = acc.plus(&ca.times(cb).times(&C::from_int(t)));
                }
            }
        }
        Ok(acc)
    }

    /// The represented n×n matrix.
    pub fn to_matrix(&self) -> Matrix<C> {
        let mut m = vec![vec![C::zero(); self.n]; self.n];
        for (b, c) in &self.coeffs {
            for ((i, j), v) in b.matrix_units() {
                m[i - 1][j - 1] = m[i - 1][j - 1].plus(&c.times(&C::from_int(v)));
            }
        }
        m
    }

    /// Coordinates of a traceless square matrix.
    pub fn from_matrix(m: &Matrix<C>) -> Result<Self, LieError> {
        let n = m.len();
        let mut e = Self::zero(n);
        for (i, row) in m.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if i != j {
                    e.add_term(BasisIndex::E(i as u16 + 1, j as u16 + 1), c.clone());
                }
            }
        }
        let diag: Vec<C> = (0..n).map(|i| m[i][i].clone()).collect();
        let h = Self::from_diagonal(&diag)?;
        Ok(e.plus(&h))
    }

    /// `diag(d_1, …, d_n)` in the `h_k` basis: coefficient of `h_k` is the
    /// partial sum `d_1 + … + d_k`.
    pub fn from_diagonal(d: &[C]) -> Result<Self, LieError> {
        let n = d.len();
        let mut e = Self::zero(n);
        let mut acc = C::zero();
        for (k, dk) in d.iter().enumerate().take(n - 1) {
            acc = acc.plus(dk);
            e.add_term(BasisIndex::H(k as u16 + 1), acc.clone());
        }
        if !acc.plus(&d[n - 1]).is_zero() {
            return Err(LieError::NotTraceless);
        }
        Ok(e)
    }

    /// Coordinate vector in the fixed basis ordering.
    pub fn to_vector(&self) -> Vec<C> {
        let mut v = vec![C::zero(); sl(self.n).dim()];
        for (b, c) in &self.coeffs {
            v[b.position(self.n)] = c.clone();
        }
        v
    }

    pub fn from_vector(n: usize, v: &[C]) -> Self {
        let alg = sl(n);
        Self::from_terms(n, v.iter().enumerate().map(|(p, c)| (alg.index(p), c.clone())))
    }
}
