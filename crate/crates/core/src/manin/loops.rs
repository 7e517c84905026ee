use std::collections::BTreeMap;
use std::fmt;

use crate::lie::{sl, BasisIndex, LieElem};
use crate::scalars::{Cyclotomic, Ring};

/// A finite Laurent polynomial `Σ_e z^e·X_e` with `X_e ∈ sl_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentLoop {
    n: usize,
    terms: BTreeMap<i32, LieElem<Cyclotomic>>,
}

impl LaurentLoop {
    pub fn zero(n: usize) -> Self {
        LaurentLoop { n, terms: BTreeMap::new() }
    }

    pub fn term(e: i32, x: LieElem<Cyclotomic>) -> Self {
        let mut out = Self::zero(x.n());
        out.add_term(e, x);
        out
    }

    /// `z^e·x_b`
    pub fn monomial(n: usize, b: BasisIndex, e: i32) -> Self {
        Self::term(e, LieElem::basis(n, b))
    }

    /// `z^e·x^a`, with `x^a` the trace-form dual of `x_a`.
    pub fn dual_monomial(n: usize, a: BasisIndex, e: i32) -> Self {
        let alg = sl(n);
        let dual = LieElem::from_terms(
            n,
            alg.dual(a.position(n)).iter().map(|(p, q)| (alg.index(*p), Cyclotomic::from_rational(q.clone()))),
        );
        Self::term(e, dual)
    }

    /// `Σ_e s_e z^e · x_a`.
    pub fn from_scalar_series(n: usize, a: BasisIndex, series: &BTreeMap<i32, Cyclotomic>) -> Self {
        let mut out = Self::zero(n);
        for (&e, c) in series {
            out.add_term(e, LieElem::term(n, a, c.clone()));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i32, &LieElem<Cyclotomic>)> {
        self.terms.iter()
    }

    pub fn get(&self, e: i32) -> Option<&LieElem<Cyclotomic>> {
        self.terms.get(&e)
    }

    pub fn add_term(&mut self, e: i32, x: LieElem<Cyclotomic>) {
        let s = match self.terms.remove(&e) {
            Some(old) => old.plus(&x),
            None => x,
        };
        if !s.is_zero() {
            self.terms.insert(e, s);
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&e, x) in &o.terms {
            out.add_term(e, x.clone());
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.scaled(&Cyclotomic::one().negated()))
    }

    pub fn scaled(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(self.n);
        for (&e, x) in &self.terms {
            out.add_term(e, x.scaled(c));
        }
        out
    }

    /// Multiplication by `z^j`.
    pub fn shift(&self, j: i32) -> Self {
        LaurentLoop { n: self.n, terms: self.terms.iter().map(|(&e, x)| (e + j, x.clone())).collect() }
    }

    /// Terms with negative exponent.
    pub fn principal_part(&self) -> Self {
        LaurentLoop { n: self.n, terms: self.terms.range(..0).map(|(&e, x)| (e, x.clone())).collect() }
    }

    /// Terms with non-negative exponent.
    pub fn regular_part(&self) -> Self {
        LaurentLoop { n: self.n, terms: self.terms.range(0..).map(|(&e, x)| (e, x.clone())).collect() }
    }
}

impl fmt::Display for LaurentLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, x)| {
                let inner: Vec<String> = x.terms().map(|(b, c)| format!("{c}*{b}")).collect();
                format!("z^{e}*({})", inner.join(" + "))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
