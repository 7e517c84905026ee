use std::collections::BTreeMap;
use std::fmt;

use super::{MLaurent, Monomial, Var};
use crate::scalars::{ring_ops, Cyclotomic, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("variable {0} has no value at the evaluation point")]
    Unassigned(Var),
    #[error("evaluation point lies on a pole")]
    PoleAtPoint,
    #[error("zero denominator factor")]
    ZeroDenominator,
    #[error("outside the designated rational-function class: {0}")]
    OutsideClass(String),
    #[error("unknown slot specification {0:?}")]
    UnknownSlot(String),
    #[error("incompatible slot patterns {0} and {1}")]
    IncompatibleSlots(String, String),
}

/// A designated denominator factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    /// `x_a − x_b`
    Diff(Var, Var),
    /// a single variable
    Var(Var),
}

/// A rational function `num / Π (x_a − x_b)^k` with a Laurent numerator.
///
/// Single-variable denominators are absorbed into negative exponents of the
/// numerator, difference factors are stored as `(a, b)` with `a < b`, and
/// every difference factor dividing the numerator is cancelled. The
/// representation is therefore canonical and equality is structural.
#[derive(Clone, PartialEq)]
pub struct RatFun {
    num: MLaurent,
    den: BTreeMap<(Var, Var), u32>,
}

impl RatFun {
    pub fn new(num: MLaurent, factors: impl IntoIterator<Item = (Factor, u32)>) -> Result<Self, PolyError> {
        let mut num = num;
        let mut den: BTreeMap<(Var, Var), u32> = BTreeMap::new();
        for (f, k) in factors {
            if k == 0 {
                continue;
            }
            match f {
                Factor::Var(v) => num = num.mul_monomial(&Monomial::var(v, -(k as i32))),
                Factor::Diff(a, b) if a == b => return Err(PolyError::ZeroDenominator),
                Factor::Diff(a, b) => {
                    let key = if a < b { (a, b) } else { (b, a) };
                    if a > b && k % 2 == 1 {
                        num = num.negated();
                    }
                    *den.entry(key).or_default() += k;
                }
            }
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_laurent(num: MLaurent) -> Self {
        RatFun { num, den: BTreeMap::new() }
    }

    pub fn var(v: Var) -> Self {
        Self::from_laurent(MLaurent::var(v))
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::from_laurent(MLaurent::constant(c))
    }

    /// `1 / (x_a − x_b)`
    pub fn inv_diff(a: Var, b: Var) -> Self {
        Self::new(MLaurent::one(), [(Factor::Diff(a, b), 1)]).expect("distinct variables")
    }

    pub fn num(&self) -> &MLaurent {
        &self.num
    }

    /// Denominator factors `(x_a − x_b)^k`, `a < b`.
    pub fn den_factors(&self) -> impl Iterator<Item = (Factor, u32)> + '_ {
        self.den.iter().map(|(&(a, b), &k)| (Factor::Diff(a, b), k))
    }

    pub fn den_multiplicity(&self, a: Var, b: Var) -> u32 {
        let key = if a < b { (a, b) } else { (b, a) };
        self.den.get(&key).copied().unwrap_or(0)
    }

    /// A Laurent polynomial (no difference factor in the denominator)?
    pub fn is_laurent(&self) -> bool {
        self.den.is_empty()
    }

    /// Splits `self = c · s` with `s` canonical (its leading numerator
    /// coefficient is 1); zero splits as `0 · 0`.
    pub fn split_content(&self) -> (Cyclotomic, RatFun) {
        match self.num.terms().next() {
            None => (Cyclotomic::zero(), Self::zero()),
            Some((_, c)) => {
                let inv = c.inv().expect("stored coefficients are nonzero");
                (c.clone(), RatFun { num: self.num.scaled(&inv), den: self.den.clone() })
            }
        }
    }

    pub fn den_poly(&self) -> MLaurent {
        self.den.iter().fold(MLaurent::one(), |acc, (&(a, b), &k)| {
            (0..k).fold(acc, |acc, _| acc.times(&MLaurent::diff(a, b)))
        })
    }

    fn normalized(mut num: MLaurent, mut den: BTreeMap<(Var, Var), u32>) -> Self {
        if num.is_zero() {
            return RatFun { num, den: BTreeMap::new() };
        }
        for (&(a, b), k) in den.iter_mut() {
            while *k > 0 {
                match num.div_diff(a, b) {
                    Some(q) => {
                        num = q;
                        *k -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|_, k| *k > 0);
        RatFun { num, den }
    }

    /// Renames variables; fails if two variables of a denominator factor are
    /// identified.
    pub fn rename(&self, map: impl Fn(Var) -> Var) -> Result<Self, PolyError> {
        let num = self.num.rename(&map);
        Self::new(num, self.den.iter().map(|(&(a, b), &k)| (Factor::Diff(map(a), map(b)), k)))
    }

    /// Substitutes polynomials for variables; difference factors must be
    /// carried to difference factors by `subs` (e.g. a common shift).
    pub fn compose(&self, subs: &BTreeMap<Var, MLaurent>) -> Result<Self, PolyError> {
        let num = self.num.compose(subs)?;
        let mut factors = Vec::new();
        for (&(a, b), &k) in &self.den {
            let image = |v: Var| subs.get(&v).cloned().unwrap_or_else(|| MLaurent::var(v));
            let d = image(a).minus(&image(b));
            if d != MLaurent::diff(a, b) {
                return Err(PolyError::OutsideClass(format!("substitution moves the pole ({a} - {b})")));
            }
            factors.push((Factor::Diff(a, b), k));
        }
        Self::new(num, factors)
    }

    pub fn eval(&self, point: &BTreeMap<Var, Cyclotomic>) -> Result<Cyclotomic, PolyError> {
        let num = self.num.eval(point)?;
        let den = self.den_poly().eval(point)?;
        if den.is_zero() {
            return Err(PolyError::PoleAtPoint);
        }
        Ok(num.times(&den.inv().expect("nonzero")))
    }

    /// Divides by `(x_a − x_b)^k`.
    pub fn div_diff(&self, a: Var, b: Var, k: u32) -> Result<Self, PolyError> {
        let mut den = self.den.clone();
        let mut num = self.num.clone();
        if a == b {
            return Err(PolyError::ZeroDenominator);
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if a > b && k % 2 == 1 {
            num = num.negated();
        }
        *den.entry(key).or_default() += k;
        Ok(Self::normalized(num, den))
    }
}

impl Ring for RatFun {
    fn zero() -> Self {
        Self::from_laurent(MLaurent::zero())
    }
    fn one() -> Self {
        Self::from_laurent(MLaurent::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            return Self::normalized(self.num.plus(&o.num), self.den.clone());
        }
        let mut lcm = self.den.clone();
        for (f, &k) in &o.den {
            let e = lcm.entry(*f).or_default();
            *e = (*e).max(k);
        }
        let lift = |r: &RatFun| {
            lcm.iter().fold(r.num.clone(), |acc, (&(a, b), &k)| {
                let have = r.den.get(&(a, b)).copied().unwrap_or(0);
                (have..k).fold(acc, |acc, _| acc.times(&MLaurent::diff(a, b)))
            })
        };
        Self::normalized(lift(self).plus(&lift(o)), lcm)
    }
    fn times(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (f, &k) in &o.den {
            *den.entry(*f).or_default() += k;
        }
        let num = self.num.times(&o.num);
        if self.den.is_empty() || o.den.is_empty() {
            // Cancellation can only involve the factors of one side.
            return Self::normalized(num, den);
        }
        Self::normalized(num, den)
    }
    fn negated(&self) -> Self {
        RatFun { num: self.num.negated(), den: self.den.clone() }
    }
    fn from_scalar(c: &Cyclotomic) -> Self {
        Self::constant(c.clone())
    }
}

ring_ops!(RatFun);

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(&(a, b), &k)| if k == 1 { format!("({a} - {b})") } else { format!("({a} - {b})^{k}") })
            .collect();
        write!(f, "({})/{}", self.num, den.join("*"))
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> RatFun {
        RatFun::var(x)
    }

    #[test]
    fn cancellation() {
        // (x − y)/(x − y) · c − c = 0
        let r = RatFun::new(MLaurent::diff(Var::X, Var::Y), [(Factor::Diff(Var::X, Var::Y), 1)]).unwrap();
        assert_eq!(r, RatFun::one());
        let sum = RatFun::inv_diff(Var::Y, Var::X).plus(&RatFun::inv_diff(Var::X, Var::Y));
        assert!(sum.is_zero());
    }

    #[test]
    fn partial_fractions_identity() {
        // 1/((x2−x1)(x3−x1)) + 1/((x3−x1)(x3−x2)) − 1/((x2−x1)(x3−x2)) = 0
        let d = |a, b| RatFun::inv_diff(a, b);
        let t = d(Var::X2, Var::X1)
            .times(&d(Var::X3, Var::X1))
            .plus(&d(Var::X3, Var::X1).times(&d(Var::X3, Var::X2)))
            .minus(&d(Var::X2, Var::X1).times(&d(Var::X3, Var::X2)));
        assert!(t.is_zero(), "{t}");
    }

    #[test]
    fn flip_rule() {
        // x/(y − x) with x ↔ y is y/(x − y)
        let r = v(Var::X).times(&RatFun::inv_diff(Var::Y, Var::X));
        let s = r.rename(|w| match w {
            Var::X => Var::Y,
            Var::Y => Var::X,
            o => o,
        });
        assert_eq!(s.unwrap(), v(Var::Y).times(&RatFun::inv_diff(Var::X, Var::Y)));
    }

    #[test]
    fn var_denominators_absorbed() {
        let r = RatFun::new(MLaurent::one(), [(Factor::Var(Var::X), 2)]).unwrap();
        assert!(r.is_laurent());
        assert_eq!(r.times(&v(Var::X)).times(&v(Var::X)), RatFun::one());
    }

    #[test]
    fn evaluation_and_poles() {
        let r = v(Var::X).times(&RatFun::inv_diff(Var::Y, Var::X));
        let pt = |x: i64, y: i64| -> BTreeMap<Var, Cyclotomic> { [(Var::X, Cyclotomic::int(x)), (Var::Y, Cyclotomic::int(y))].into() };
        assert_eq!(r.eval(&pt(1, 2)).unwrap(), Cyclotomic::int(1));
        assert_eq!(r.eval(&pt(2, 2)), Err(PolyError::PoleAtPoint));
        assert_eq!(RatFun::new(MLaurent::one(), [(Factor::Diff(Var::X, Var::X), 1)]), Err(PolyError::ZeroDenominator));
    }

    #[test]
    fn shift_preserves_difference_pole() {
        let r = v(Var::X).times(&RatFun::inv_diff(Var::Y, Var::X));
        let a = MLaurent::constant(Cyclotomic::int(5));
        let subs: BTreeMap<Var, MLaurent> =
            [(Var::X, MLaurent::var(Var::X).plus(&a)), (Var::Y, MLaurent::var(Var::Y).plus(&a))].into();
        let s = r.compose(&subs).unwrap();
        assert_eq!(s, v(Var::X).plus(&RatFun::constant(Cyclotomic::int(5))).times(&RatFun::inv_diff(Var::Y, Var::X)));
        let bad: BTreeMap<Var, MLaurent> = [(Var::X, MLaurent::var(Var::X).plus(&a))].into();
        assert!(r.compose(&bad).is_err());
    }
}
