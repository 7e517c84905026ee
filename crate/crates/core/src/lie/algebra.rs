use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::BasisIndex;
use crate::linalg::{inverse, Matrix};
use crate::scalars::{Cyclotomic, Rational};

/// Structure tables of sl_n in the fixed basis ordering.
#[derive(Debug)]
pub struct SlAlgebra {
    n: usize,
    basis: Vec<BasisIndex>,
    brackets: Vec<Vec<(usize, i64)>>,
    gram: Vec<i64>,
    dual: Vec<Vec<(usize, Rational)>>,
}

/// Shared, lazily built tables for sl_n.
///
/// # Panics
/// Panics when `n < 2`.
pub fn sl(n: usize) -> Arc<SlAlgebra> {
    assert!(n >= 2, "sl_n needs n >= 2");
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SlAlgebra>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(a) = cache.lock().unwrap().get(&n) {
        return a.clone();
    }
    let a = Arc::new(SlAlgebra::build(n));
    cache.lock().unwrap().insert(n, a.clone());
    a
}

type Units = BTreeMap<(usize, usize), i64>;

fn mat_product(a: &Units, b: &Units) -> Units {
    let mut out = Units::new();
    for (&(i, j), &x) in a {
        for (&(k, l), &y) in b {
            if j == k {
                *out.entry((i, l)).or_default() += x * y;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

impl SlAlgebra {
    fn build(n: usize) -> Self {
        let mut basis: Vec<BasisIndex> = Vec::new();
        for i in 1..=n as u16 {
            for j in 1..=n as u16 {
                if i != j {
                    basis.push(BasisIndex::E(i, j));
                }
            }
        }
        basis.extend((1..n as u16).map(BasisIndex::H));
        let dim = basis.len();
        let units: Vec<Units> = basis.iter().map(|b| b.matrix_units().into_iter().collect()).collect();

        let mut brackets = Vec::with_capacity(dim * dim);
        let mut gram = Vec::with_capacity(dim * dim);
        for a in &units {
            for b in &units {
                let ab = mat_product(a, b);
                let ba = mat_product(b, a);
                let mut comm = ab.clone();
                for (k, v) in &ba {
                    *comm.entry(*k).or_default() -= v;
                }
                comm.retain(|_, v| *v != 0);
                brackets.push(Self::units_to_coords(n, &comm));
                gram.push(ab.iter().filter(|((i, j), _)| i == j).map(|(_, v)| v).sum());
            }
        }

        let gram_m: Matrix<Cyclotomic> =
            (0..dim).map(|a| (0..dim).map(|b| Cyclotomic::int(gram[a * dim + b])).collect()).collect();
        let inv = inverse(&gram_m).expect("trace form is nondegenerate");
        // x^a = Σ_b (G⁻¹)_{ab} x_b, G symmetric.
        let dual = (0..dim)
            .map(|a| {
                (0..dim)
                    .filter_map(|b| inv[a][b].as_rational().filter(|q| !num_traits::Zero::is_zero(*q)).map(|q| (b, q.clone())))
                    .collect()
            })
            .collect();
        SlAlgebra { n, basis, brackets, gram, dual }
    }

    /// Coordinates of a traceless integer matrix given by matrix units.
    fn units_to_coords(n: usize, m: &Units) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        let mut diag = vec![0i64; n + 1];
        for (&(i, j), &v) in m {
            if i == j {
                diag[i] = v;
            } else {
                out.push((BasisIndex::E(i as u16, j as u16).position(n), v));
            }
        }
        let mut acc = 0;
        for k in 1..n {
            acc += diag[k];
            if acc != 0 {
                out.push((BasisIndex::H(k as u16).position(n), acc));
            }
        }
        debug_assert_eq!(acc + diag[n], 0, "commutators are traceless");
        out.sort_unstable();
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisIndex] {
        &self.basis
    }

    pub fn index(&self, p: usize) -> BasisIndex {
        self.basis[p]
    }

    /// `[x_a, x_b]` as `(position, integer coefficient)` pairs.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.brackets[a * self.dim() + b]
    }

    /// `tr(x_a x_b)`.
    pub fn trace(&self, a: usize, b: usize) -> i64 {
        self.gram[a * self.dim() + b]
    }

    /// The trace-form dual `x^a` in coordinates of the basis.
    pub fn dual(&self, a: usize) -> &[(usize, Rational)] {
        &self.dual[a]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(n: usize, b: BasisIndex) -> usize {
        b.position(n)
    }

    #[test]
    fn sl2_relations() {
        let a = sl(2);
        let (e, f, h) = (pos(2, BasisIndex::E(1, 2)), pos(2, BasisIndex::E(2, 1)), pos(2, BasisIndex::H(1)));
        assert_eq!(a.bracket(e, f), &[(h, 1)]);
        assert_eq!(a.bracket(h, e), &[(e, 2)]);
        assert_eq!(a.bracket(h, f), &[(f, -2)]);
        assert_eq!(a.trace(h, h), 2);
        assert_eq!(a.trace(e, f), 1);
        assert_eq!(a.trace(e, e), 0);
    }

    #[test]
    fn sl3_bracket() {
        let a = sl(3);
        let r = a.bracket(pos(3, BasisIndex::E(1, 2)), pos(3, BasisIndex::E(2, 3)));
        assert_eq!(r, &[(pos(3, BasisIndex::E(1, 3)), 1)]);
    }

    #[test]
    fn jacobi_exhaustive() {
        for n in 2..=4 {
            let alg = sl(n);
            let d = alg.dim();
            let br = |u: &[i64], b: usize| {
                let mut out = vec![0i64; d];
                for (a, &c) in u.iter().enumerate() {
                    if c != 0 {
                        for &(k, v) in alg.bracket(a, b) {
                            out[k] += c * v;
                        }
                    }
                }
                out
            };
            let unit = |a: usize| {
                let mut v = vec![0i64; d];
                v[a] = 1;
                v
            };
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        // [[a,b],c] + [[b,c],a] + [[c,a],b]
                        let t1 = br(&br(&unit(a), b), c);
                        let t2 = br(&br(&unit(b), c), a);
                        let t3 = br(&br(&unit(c), a), b);
                        assert!((0..d).all(|k| t1[k] + t2[k] + t3[k] == 0), "n={n} ({a},{b},{c})");
                    }
                }
            }
        }
    }

    #[test]
    fn trace_form_invariant_and_nondegenerate() {
        for n in 2..=4 {
            let alg = sl(n);
            let d = alg.dim();
            // tr([a,b] c) + tr(b [a,c]) = 0
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        let l: i64 = alg.bracket(a, b).iter().map(|&(k, v)| v * alg.trace(k, c)).sum();
                        let r: i64 = alg.bracket(a, c).iter().map(|&(k, v)| v * alg.trace(b, k)).sum();
                        assert_eq!(l + r, 0);
                    }
                }
            }
            let g: Matrix<Cyclotomic> = (0..d).map(|a| (0..d).map(|b| Cyclotomic::int(alg.trace(a, b))).collect()).collect();
            assert!(!num_traits::Zero::is_zero(crate::linalg::determinant(&g).as_rational().unwrap()));
        }
    }
}
