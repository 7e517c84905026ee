use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::PolyError;
use crate::scalars::{format_rational, ring_ops, Cyclotomic, Rational, Ring};

pub const NVARS: usize = 6;

/// The fixed set of variable names. `x, y` carry the two spectral
/// parameters of an r-matrix, `x1, x2, x3` those of a triple tensor and `z`
/// the loop variable of 𝔤[z, z⁻¹].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
    X1,
    X2,
    X3,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::Z, Var::X1, Var::X2, Var::X3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::X1 => "x1",
            Var::X2 => "x2",
            Var::X3 => "x3",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        Var::ALL.into_iter().find(|v| v.name() == s).ok_or_else(|| PolyError::UnknownVariable(s.to_string()))
    }
}

/// Exponent vector over [`Var::ALL`]; negative exponents allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: i32) -> Self {
        let mut m = Self::one();
        m.0[v.index()] = e;
        m
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = *self;
        for i in 0..NVARS {
            m.0[i] += o.0[i];
        }
        m
    }

    pub fn with(&self, v: Var, e: i32) -> Self {
        let mut m = *self;
        m.0[v.index()] = e;
        m
    }
}

/// A Laurent polynomial over the cyclotomic numbers in the variables
/// [`Var::ALL`]. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Default)]
pub struct MLaurent {
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl MLaurent {
    pub fn constant(c: Cyclotomic) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Cyclotomic) -> Self {
        let mut p = MLaurent::default();
        p.add_term(m, c);
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), Cyclotomic::one())
    }

    /// `x_a − x_b`
    pub fn diff(a: Var, b: Var) -> Self {
        Self::var(a).minus(&Self::var(b))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Cyclotomic {
        self.terms.get(m).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            for v in Var::ALL {
                if m.exp(v) != 0 {
                    s.insert(v);
                }
            }
        }
        s
    }

    pub fn min_exp(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(v)).min()
    }

    pub fn max_exp(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    /// Is this a polynomial (no negative exponents)?
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e >= 0))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MLaurent { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    /// Groups the terms by the exponent of `v`; the grouped coefficients no
    /// longer involve `v`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<i32, MLaurent> {
        let mut out: BTreeMap<i32, MLaurent> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(v)).or_default().add_term(m.with(v, 0), c.clone());
        }
        out
    }

    /// Renames variables; `map` must be injective on the variables in use.
    pub fn rename(&self, map: impl Fn(Var) -> Var) -> Self {
        let mut out = MLaurent::default();
        for (m, c) in &self.terms {
            let mut e = Monomial::one();
            for v in Var::ALL {
                e.0[map(v).index()] += m.exp(v);
            }
            out.add_term(e, c.clone());
        }
        out
    }

    /// Substitutes polynomials for variables. Variables substituted by a
    /// non-monomial must occur with non-negative exponents only.
    pub fn compose(&self, subs: &BTreeMap<Var, MLaurent>) -> Result<Self, PolyError> {
        let mut out = MLaurent::default();
        for (m, c) in &self.terms {
            let mut acc = MLaurent::constant(c.clone());
            let mut rest = *m;
            for (v, p) in subs {
                let e = m.exp(*v);
                rest = rest.with(*v, 0);
                if e == 0 {
                    continue;
                }
                let base = if e < 0 {
                    if p.num_terms() != 1 {
                        return Err(PolyError::OutsideClass(format!("negative power of {v} under substitution")));
                    }
                    let (mm, cc) = p.terms.iter().next().unwrap();
                    let inv = cc.inv().map_err(|_| PolyError::OutsideClass("zero substitution".into()))?;
                    let mut neg = Monomial::one();
                    for i in 0..NVARS {
                        neg.0[i] = -mm.0[i];
                    }
                    MLaurent::term(neg, inv)
                } else {
                    p.clone()
                };
                for _ in 0..e.unsigned_abs() {
                    acc = acc.times(&base);
                }
            }
            out = out.plus(&acc.mul_monomial(&rest));
        }
        Ok(out)
    }

    /// Evaluates at a point assigning every variable in use.
    pub fn eval(&self, point: &BTreeMap<Var, Cyclotomic>) -> Result<Cyclotomic, PolyError> {
        if let Some(v) = self.vars().into_iter().find(|v| !point.contains_key(v)) {
            return Err(PolyError::Unassigned(v));
        }
        let mut acc = Cyclotomic::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let val = point.get(&v).ok_or(PolyError::Unassigned(v))?;
                let base = if e < 0 { val.inv().map_err(|_| PolyError::PoleAtPoint)? } else { val.clone() };
                for _ in 0..e.unsigned_abs() {
                    t = t.times(&base);
                }
            }
            acc = acc.plus(&t);
        }
        Ok(acc)
    }

    /// Exact quotient by `x_a − x_b`, or `None` when it does not divide.
    pub fn div_diff(&self, a: Var, b: Var) -> Option<Self> {
        if self.is_zero() {
            return Some(MLaurent::default());
        }
        // Treat as a polynomial in x_a over the Laurent ring of the others.
        let groups = self.coefficients_in(a);
        let lo = *groups.keys().next().unwrap();
        let hi = *groups.keys().next_back().unwrap();
        if hi == lo {
            return None;
        }
        let xb = MLaurent::var(b);
        let deg = (hi - lo) as usize;
        let c = |k: usize| groups.get(&(k as i32 + lo)).cloned().unwrap_or_default();
        let mut q = vec![MLaurent::default(); deg];
        q[deg - 1] = c(deg);
        for j in (1..deg).rev() {
            q[j - 1] = c(j).plus(&xb.times(&q[j]));
        }
        let rem = c(0).plus(&xb.times(&q[0]));
        if !rem.is_zero() {
            return None;
        }
        let mut out = MLaurent::default();
        for (j, qj) in q.into_iter().enumerate() {
            for (m, cc) in qj.terms {
                out.add_term(m.with(a, j as i32 + lo), cc);
            }
        }
        Some(out)
    }
}

impl Ring for MLaurent {
    fn zero() -> Self {
        MLaurent::default()
    }
    fn one() -> Self {
        Self::constant(Cyclotomic::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let (mut big, small) = if self.terms.len() >= o.terms.len() { (self.clone(), o) } else { (o.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(*m, c.clone());
        }
        big
    }
    fn times(&self, o: &Self) -> Self {
        let mut out = MLaurent::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca.times(cb));
            }
        }
        out
    }
    fn negated(&self) -> Self {
        MLaurent { terms: self.terms.iter().map(|(m, c)| (*m, c.negated())).collect() }
    }
    fn from_scalar(c: &Cyclotomic) -> Self {
        Self::constant(c.clone())
    }
}

ring_ops!(MLaurent);

fn fmt_monomial(m: &Monomial) -> String {
    Var::ALL
        .iter()
        .filter(|v| m.exp(**v) != 0)
        .map(|v| match m.exp(*v) {
            1 => v.name().to_string(),
            e => format!("{}^{e}", v.name()),
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for MLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono = fmt_monomial(m);
                match (mono.is_empty(), c.as_rational()) {
                    (true, _) => c.to_string(),
                    (false, Some(q)) if q == &Rational::from_integer(1.into()) => mono,
                    (false, Some(q)) if q == &Rational::from_integer((-1).into()) => format!("-{mono}"),
                    (false, Some(q)) => format!("{}*{mono}", format_rational(q)),
                    (false, None) => format!("{c}*{mono}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for MLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MLaurent {
        MLaurent::var(Var::X)
    }
    fn y() -> MLaurent {
        MLaurent::var(Var::Y)
    }

    #[test]
    fn divide_by_difference() {
        // x² − y² = (x − y)(x + y)
        let p = x().times(&x()).minus(&y().times(&y()));
        assert_eq!(p.div_diff(Var::X, Var::Y).unwrap(), x().plus(&y()));
        assert!(x().plus(&y()).div_diff(Var::X, Var::Y).is_none());
        // x⁻¹ − y⁻¹ = (y − x)/(xy)
        let inv = |v: Var| MLaurent::term(Monomial::var(v, -1), Cyclotomic::one());
        let q = inv(Var::X).minus(&inv(Var::Y)).div_diff(Var::X, Var::Y).unwrap();
        assert_eq!(q, MLaurent::term(Monomial::var(Var::X, -1).mul(&Monomial::var(Var::Y, -1)), Cyclotomic::int(-1)));
        assert!(MLaurent::one().div_diff(Var::X, Var::Y).is_none());
    }

    #[test]
    fn rename_and_eval() {
        let p = x().times(&x()).plus(&y());
        let r = p.rename(|v| if v == Var::X { Var::X2 } else if v == Var::Y { Var::X3 } else { v });
        assert_eq!(r.vars(), [Var::X2, Var::X3].into_iter().collect());
        let pt: BTreeMap<Var, Cyclotomic> = [(Var::X2, Cyclotomic::int(3)), (Var::X3, Cyclotomic::int(-1))].into();
        assert_eq!(r.eval(&pt).unwrap(), Cyclotomic::int(8));
        assert_eq!(r.eval(&BTreeMap::new()), Err(PolyError::Unassigned(Var::X2)));
    }

    #[test]
    fn compose_shift() {
        let p = x().times(&y());
        let subs: BTreeMap<Var, MLaurent> =
            [(Var::X, x().plus(&MLaurent::one())), (Var::Y, y().plus(&MLaurent::one()))].into();
        let expect = x().plus(&MLaurent::one()).times(&y().plus(&MLaurent::one()));
        assert_eq!(p.compose(&subs).unwrap(), expect);
    }
}
