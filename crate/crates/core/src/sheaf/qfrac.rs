use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::Field;
use crate::poly::{MLaurent, Monomial, RatFun, Var};
use crate::scalars::{ring_ops, Cyclotomic, Rational, Ring, UPoly};

/// An element of Q(x): `num/den` with coprime parts and monic `den`.
#[derive(Clone, PartialEq)]
pub struct QFrac {
    num: UPoly,
    den: UPoly,
}

impl QFrac {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"));
        let l = den.lead().recip();
        QFrac { num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn poly(p: UPoly) -> Self {
        QFrac { num: p, den: UPoly::one() }
    }

    pub fn rational(q: Rational) -> Self {
        Self::poly(UPoly::constant(q))
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::poly(UPoly::var())
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    /// Value at a rational point, `None` on a pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.den.eval(t);
        (!d.is_zero()).then(|| self.num.eval(t) / d)
    }

    /// As a Laurent polynomial in `v`, when the denominator is a power of `x`.
    pub fn to_ratfun(&self, v: Var) -> Option<RatFun> {
        let k = self.den.degree()?;
        if self.den != UPoly::monomial(Rational::one(), k) {
            return None;
        }
        let mut out = MLaurent::zero();
        for (e, c) in self.num.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.add_term(Monomial::var(v, e as i32 - k as i32), Cyclotomic::from_rational(c.clone()));
            }
        }
        Some(RatFun::from_laurent(out))
    }

    /// Inverse of [`QFrac::to_ratfun`]: accepts Laurent polynomials in `v`
    /// with rational coefficients.
    pub fn from_ratfun(r: &RatFun, v: Var) -> Option<Self> {
        if !r.is_laurent() || r.num().vars().iter().any(|w| *w != v) {
            return None;
        }
        let shift = r.num().min_exp(v).unwrap_or(0).min(0);
        let mut coeffs = Vec::new();
        for (m, c) in r.num().terms() {
            let e = (m.exp(v) - shift) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] = c.as_rational()?.clone();
        }
        Some(QFrac::new(UPoly::new(coeffs), UPoly::monomial(Rational::one(), (-shift) as usize)))
    }
}

impl Ring for QFrac {
    fn zero() -> Self {
        QFrac { num: UPoly::zero(), den: UPoly::one() }
    }
    fn one() -> Self {
        QFrac { num: UPoly::one(), den: UPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den == o.den {
            return QFrac::new(self.num.add(&o.num), self.den.clone());
        }
        QFrac::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn times(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        QFrac::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn negated(&self) -> Self {
        QFrac { num: self.num.neg(), den: self.den.clone() }
    }
    /// # Panics
    /// Panics on irrational cyclotomic scalars: Q(x) has rational constants.
    fn from_scalar(c: &Cyclotomic) -> Self {
        Self::rational(c.as_rational().expect("rational scalar").clone())
    }
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }
}

impl Field for QFrac {
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| QFrac::new(self.den.clone(), self.num.clone()))
    }
}

ring_ops!(QFrac);

impl fmt::Debug for QFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}
