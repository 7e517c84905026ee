use cybe_core::catalog::{cuspidal_closed_form, nodal_closed_form};
use cybe_core::sheaf::{geometric_r, CurveKind};

#[test]
fn pipeline_matches_closed_forms() {
    for n in 2..=4 {
        let nodal = geometric_r(n, CurveKind::Nodal).unwrap();
        assert!(nodal.minus(&nodal_closed_form(n).tensor).is_zero(), "nodal n = {n}");
        let cusp = geometric_r(n, CurveKind::Cuspidal).unwrap();
        assert!(cusp.minus(&cuspidal_closed_form(n).tensor).is_zero(), "cuspidal n = {n}");
    }
}
