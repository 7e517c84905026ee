use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use super::{format_rational, ring_ops, Rational, Ring, ScalarError, UPoly};

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count()
}

/// The n-th cyclotomic polynomial, obtained by exactly dividing `tⁿ − 1` by
/// the cyclotomic polynomials of the proper divisors of `n`.
///
/// # Panics
/// Panics when `n == 0`.
pub fn cyclotomic_poly(n: u32) -> UPoly {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    static CACHE: OnceLock<Mutex<HashMap<u32, UPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = UPoly::monomial(Rational::one(), n as usize).sub(&UPoly::one());
    for d in (1..n).filter(|d| n % d == 0) {
        p = p.exact_div(&cyclotomic_poly(d)).expect("Φ_d divides tⁿ − 1");
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// An element of Q(ζ_n), stored as the coefficient vector (length φ(n)) of
/// its canonical representative modulo the n-th cyclotomic polynomial.
///
/// Order 1 is the rational field and coerces silently into every other
/// order; any other pair of distinct orders is incompatible. The arithmetic
/// operators panic on incompatible orders, the `checked_*` methods report
/// [`ScalarError::OrderMismatch`] instead.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

/// ζ_n^j, reduced. `zeta(n, 0) == 1`.
pub fn zeta(n: u32, j: i64) -> Cyclotomic {
    let e = j.rem_euclid(n as i64) as usize;
    Cyclotomic::from_poly(n, &UPoly::monomial(Rational::one(), e))
}

impl Cyclotomic {
    /// Builds an element from an arbitrary representative polynomial.
    pub fn from_poly(order: u32, p: &UPoly) -> Self {
        assert!(order >= 1, "cyclotomic order 0");
        let phi = cyclotomic_poly(order);
        let r = p.div_rem(&phi).expect("Φ_n nonzero").1;
        let len = euler_phi(order);
        let coeffs = (0..len).map(|k| r.coeff(k)).collect();
        Cyclotomic { order, coeffs }
    }

    /// Validating constructor from a coefficient vector of length φ(order).
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Result<Self, ScalarError> {
        if order == 0 {
            return Err(ScalarError::Malformed("cyclotomic order 0".into()));
        }
        if coeffs.len() != euler_phi(order) {
            return Err(ScalarError::Malformed(format!(
                "order {order} needs {} coefficients, got {}",
                euler_phi(order),
                coeffs.len()
            )));
        }
        Ok(Cyclotomic { order, coeffs })
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![q] }
    }

    pub fn int(i: i64) -> Self {
        Self::from_rational(Rational::from_integer(i.into()))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn poly(&self) -> UPoly {
        UPoly::new(self.coeffs.clone())
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    fn promoted(&self, order: u32) -> Cyclotomic {
        let mut coeffs = vec![Rational::zero(); euler_phi(order)];
        coeffs[0] = self.coeffs[0].clone();
        Cyclotomic { order, coeffs }
    }

    fn common_order(&self, o: &Self) -> Result<u32, ScalarError> {
        match (self.order, o.order) {
            (a, b) if a == b => Ok(a),
            (1, b) => Ok(b),
            (a, 1) => Ok(a),
            (a, b) => Err(ScalarError::OrderMismatch(a, b)),
        }
    }

    fn aligned(&self, o: &Self) -> Result<(Cyclotomic, Cyclotomic), ScalarError> {
        let n = self.common_order(o)?;
        let lift = |c: &Cyclotomic| if c.order == n { c.clone() } else { c.promoted(n) };
        Ok((lift(self), lift(o)))
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, ScalarError> {
        let (a, b) = self.aligned(o)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(Cyclotomic { order: a.order, coeffs })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, ScalarError> {
        if self.order == 1 || o.order == 1 {
            let (s, v) = if self.order == 1 { (&self.coeffs[0], o) } else { (&o.coeffs[0], self) };
            let coeffs = v.coeffs.iter().map(|c| c * s).collect();
            return Ok(Cyclotomic { order: v.order, coeffs });
        }
        let (a, b) = self.aligned(o)?;
        Ok(Self::from_poly(a.order, &a.poly().mul(&b.poly())))
    }

    /// Multiplicative inverse via the extended gcd with Φ_n.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if Ring::is_zero(self) {
            return Err(ScalarError::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        let (g, s, _) = self.poly().ext_gcd(&cyclotomic_poly(self.order));
        debug_assert!(g.is_constant(), "Φ_n is irreducible");
        Ok(Self::from_poly(self.order, &s.scale(&g.coeff(0).recip())))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ScalarError> {
        self.checked_mul(&o.inv()?)
    }
}

impl Ring for Cyclotomic {
    fn zero() -> Self {
        Self::int(0)
    }
    fn one() -> Self {
        Self::int(1)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn plus(&self, o: &Self) -> Self {
        self.checked_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
    fn times(&self, o: &Self) -> Self {
        self.checked_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
    fn negated(&self) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn from_scalar(c: &Cyclotomic) -> Self {
        c.clone()
    }
}

ring_ops!(Cyclotomic);

impl PartialEq for Cyclotomic {
    fn eq(&self, o: &Self) -> bool {
        if self.order == o.order {
            return self.coeffs == o.coeffs;
        }
        match (self.as_rational(), o.as_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", format_rational(q));
        }
        let n = self.order;
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format_rational(c),
                1 => format!("{}*z{n}", format_rational(c)),
                _ => format!("{}*z{n}^{k}", format_rational(c)),
            })
            .collect();
        write!(f, "({})", parts.join(" + "))
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}
