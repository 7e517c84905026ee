use std::collections::BTreeMap;

use super::ManinError;
use crate::linalg::{mat_mul, Matrix};
use crate::scalars::{Cyclotomic, Ring};
use crate::sheaf::CurveKind;

/// A matrix-valued Laurent polynomial in a local coordinate, known exactly
/// for exponents below the truncation order passed alongside it.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MatLaurent {
    pub terms: BTreeMap<i32, Matrix<Cyclotomic>>,
}

impl MatLaurent {
    pub fn term(e: i32, m: Matrix<Cyclotomic>) -> Self {
        MatLaurent { terms: [(e, m)].into() }
    }

    fn valuation(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// `[t^e] tr(f·g)` when it is determined by data below order `trunc`.
    fn trace_coefficient(&self, o: &Self, e: i32, trunc: i32) -> Result<Cyclotomic, ManinError> {
        // f·g is known modulo t^(trunc + min(v_f, v_g)), an unknown tail
        // of either factor being O(t^trunc).
        let vf = self.valuation().unwrap_or(trunc).min(trunc);
        let vg = o.valuation().unwrap_or(trunc).min(trunc);
        if e >= trunc + vf.min(vg) {
            return Err(ManinError::InsufficientTruncation);
        }
        let mut acc = Cyclotomic::zero();
        for (&i, a) in &self.terms {
            if let Some(b) = o.terms.get(&(e - i)) {
                let p = mat_mul(a, b);
                for (k, row) in p.iter().enumerate() {
                    acc = acc.plus(&row[k]);
                }
            }
        }
        Ok(acc)
    }
}

/// Germs of a section at the preimages of the singular point: `at_zero` in
/// the coordinate `z`, `at_infinity` in `w = 1/z`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LocalData {
    pub at_zero: Option<MatLaurent>,
    pub at_infinity: Option<MatLaurent>,
}

/// `res_s^ω tr(f·g)`, summed over the preimages of the singular point, with
/// `ω = dz/z` on the nodal curve (preimages `0`, `∞`) and `ω = dz` on the
/// cuspidal one (preimage `∞`). Coefficients of exponent `≥ trunc` are
/// unknown; an undetermined residue is an error.
pub fn residue_at_singularity(f: &LocalData, g: &LocalData, curve: CurveKind, trunc: i32) -> Result<Cyclotomic, ManinError> {
    let need = |d: &Option<MatLaurent>| d.clone().ok_or(ManinError::InsufficientTruncation);
    match curve {
        CurveKind::Nodal => {
            // dz/z at 0; dz/z = −dw/w at ∞
            let r0 = need(&f.at_zero)?.trace_coefficient(&need(&g.at_zero)?, 0, trunc)?;
            let rinf = need(&f.at_infinity)?.trace_coefficient(&need(&g.at_infinity)?, 0, trunc)?;
            Ok(r0.minus(&rinf))
        }
        CurveKind::Cuspidal => {
            // dz = −dw/w² at ∞
            let c = need(&f.at_infinity)?.trace_coefficient(&need(&g.at_infinity)?, 1, trunc)?;
            Ok(c.negated())
        }
    }
}
