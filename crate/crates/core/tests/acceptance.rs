//! End-to-end acceptance suite. Runs without the libtest harness so that
//! every criterion reports exactly one line; the process fails if any
//! criterion fails unexpectedly.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cybe_core::catalog::{self, cuspidal_closed_form, gcybe_only, nodal_closed_form, nodal_parts, stolin_sl2, yang, Flag};
use cybe_core::io::{parse, serialize, Document};
use cybe_core::lie::{casimir, g_basis, sl, BasisIndex, LieElem, Tensor2, Tensor2Const};
use cybe_core::manin::{coisotropy_check, dual_basis_reconstruct, expand, lagrangian_complement_check, w_basis};
use cybe_core::poly::{Factor, MLaurent, Monomial, RatFun, Var};
use cybe_core::scalars::{rat, Cyclotomic};
use cybe_core::sheaf::{block_parametrization, geometric_r, sol_space, CurveKind};
use cybe_core::verify::{cobracket, cybe_lhs, gcybe_lhs, nondegenerate_at, skew_check, transform, Transform};
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestRunner};

enum Outcome {
    Pass,
    Fail(String),
    /// The criterion cannot hold as stated; the reason says why.
    ExpectedFail(String),
}

type Criterion = fn() -> Outcome;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn outcome(r: Result<(), String>) -> Outcome {
    match r {
        Ok(()) => Outcome::Pass,
        Err(e) => Outcome::Fail(e),
    }
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let v = f();
    let took = start.elapsed();
    ensure(took <= limit, || format!("{what} took {took:?}, limit {limit:?}"))?;
    Ok(v)
}

fn lift(t: &Tensor2Const) -> Tensor2<RatFun> {
    t.map_coeffs(|c| RatFun::constant(c.clone()))
}

fn curves() -> [CurveKind; 2] {
    [CurveKind::Nodal, CurveKind::Cuspidal]
}

fn oracle_equivalence() -> Outcome {
    outcome((|| {
        for n in 2..=4 {
            for curve in curves() {
                let closed = match curve {
                    CurveKind::Nodal => nodal_closed_form(n),
                    CurveKind::Cuspidal => cuspidal_closed_form(n),
                };
                let r = timed(Duration::from_secs(30), &format!("{curve} n={n}"), || geometric_r(n, curve))?
                    .map_err(|e| e.to_string())?;
                ensure(r.minus(&closed.tensor).is_zero(), || format!("{curve} n={n} differs from the closed form"))?;
            }
        }
        Ok(())
    })())
}

fn cybe_suite() -> Outcome {
    outcome((|| {
        let mut entries = vec![stolin_sl2(), catalog::rational_sl2()];
        for n in 2..=3 {
            entries.extend([yang(n), nodal_closed_form(n), cuspidal_closed_form(n)]);
        }
        for e in entries {
            let lhs = cybe_lhs(&e.tensor).map_err(|err| err.to_string())?;
            ensure(lhs.is_zero(), || format!("{} n={}: CYBE residual has {} entries", e.name, e.n, lhs.len()))?;
            ensure(skew_check(&e.tensor), || format!("{} n={} is not skew", e.name, e.n))?;
        }
        Ok(())
    })())
}

fn gcybe_not_cybe() -> Outcome {
    outcome((|| {
        for n in 2..=3 {
            let r = gcybe_only(n).tensor;
            ensure(gcybe_lhs(&r).map_err(|e| e.to_string())?.is_zero(), || format!("n={n}: GCYBE fails"))?;
            ensure(!cybe_lhs(&r).map_err(|e| e.to_string())?.is_zero(), || format!("n={n}: CYBE holds"))?;
            ensure(!skew_check(&r), || format!("n={n}: skew"))?;
        }
        Ok(())
    })())
}

fn unitarity_constraint() -> Outcome {
    let mut literal = true;
    let interpreted = (|| {
        for n in 2..=5 {
            let parts = nodal_parts(n);
            let sym = |t: &Tensor2Const| t.plus(&t.swap_factors());
            literal &= sym(&parts.r_sp) == casimir(n);
            ensure(sym(&parts.r_sp).is_zero(), || format!("n={n}: r_sp is not antisymmetric"))?;
            let r0 = parts.constant_part();
            ensure(sym(&r0) == casimir(n), || format!("n={n}: r0 + σ(r0) ≠ γ"))?;
            let lhs = cybe_lhs(&lift(&r0)).map_err(|e| e.to_string())?;
            ensure(lhs.is_zero(), || format!("n={n}: r0 does not solve the constant CYBE"))?;
        }
        Ok(())
    })();
    match (literal, interpreted) {
        (true, Ok(())) => Outcome::Pass,
        (false, Ok(())) => Outcome::ExpectedFail(
            "r_sp is a sum of wedges, so r_sp + σ(r_sp) = 0 ≠ γ for every n; \
             the full constant part r0 satisfies r0 + σ(r0) = γ and the constant CYBE for n = 2..5"
                .into(),
        ),
        (_, Err(e)) => Outcome::Fail(e),
    }
}

fn nondegeneracy() -> Outcome {
    outcome((|| {
        for n in 2..=3 {
            for (name, _) in catalog::NAMES {
                let Ok(e) = catalog::entry(name, n) else { continue };
                if !e.has(Flag::Nondegenerate) {
                    continue;
                }
                let ok = nondegenerate_at(&e.tensor, &rat(1, 1), &rat(2, 1)).map_err(|err| err.to_string())?;
                ensure(ok, || format!("{name} n={n} is degenerate at (1, 2)"))?;
            }
        }
        Ok(())
    })())
}

fn sol_structure() -> Outcome {
    outcome((|| {
        for n in 2..=5 {
            for curve in curves() {
                let s = sol_space(n, curve).map_err(|e| e.to_string())?;
                ensure(s.len() == n * n - 1, || format!("{curve} n={n}: dim Sol = {}", s.len()))?;
                if curve == CurveKind::Nodal {
                    let p = block_parametrization(n);
                    for x in [1, 2, -3] {
                        ensure(cybe_core::sheaf::span_agrees_at(&s.elements, &p, &rat(x, 1)), || {
                            format!("n={n}: spans differ at x={x}")
                        })?;
                    }
                }
            }
        }
        Ok(())
    })())
}

fn manin_round_trip() -> Outcome {
    outcome((|| {
        for e in [cuspidal_closed_form(2), cuspidal_closed_form(3), yang(2)] {
            let label = format!("{} n={}", e.name, e.n);
            timed(Duration::from_secs(10), &label, || -> Result<(), String> {
                let s = expand(&e.tensor, 6).map_err(|err| err.to_string())?;
                let w = w_basis(&s);
                ensure(coisotropy_check(&w), || format!("{label}: not coisotropic"))?;
                ensure(lagrangian_complement_check(&w), || format!("{label}: not a Lagrangian complement"))?;
                let back = dual_basis_reconstruct(&w).map_err(|err| err.to_string())?;
                ensure(back == s, || format!("{label}: reconstruction differs"))
            })??;
        }
        Ok(())
    })())
}

fn coisotropy_vs_skew() -> Outcome {
    outcome((|| {
        let e = LieElem::basis(2, BasisIndex::E(1, 2));
        let perturbed = yang(2).tensor.plus(&lift(&Tensor2::simple(&e, &e)));
        let mut cases = vec![("yang+e⊗e".to_string(), perturbed)];
        for n in 2..=3 {
            for (name, _) in catalog::NAMES {
                if let Ok(entry) = catalog::entry(name, n) {
                    cases.push((format!("{name} n={n}"), entry.tensor));
                }
            }
        }
        let mut compared = 0;
        for (label, r) in cases {
            let s = expand(&r, 4).map_err(|err| err.to_string())?;
            if !s.has_standard_shape() {
                continue;
            }
            let (iso, skew) = (coisotropy_check(&w_basis(&s)), skew_check(&r));
            ensure(iso == skew, || format!("{label}: coisotropic={iso}, skew={skew}"))?;
            compared += 1;
        }
        ensure(compared == 7, || format!("expected 7 entries with the expansion shape, found {compared}"))
    })())
}

fn cobracket_regularity() -> Outcome {
    outcome((|| {
        for r in [yang(2), cuspidal_closed_form(2), nodal_closed_form(2)] {
            for k in 0..=3 {
                for b in g_basis(2) {
                    let mut f = vec![LieElem::zero(2); k + 1];
                    f[k] = b.clone();
                    cobracket(&f, &r.tensor).map_err(|err| format!("{} degree {k}: {err}", r.name))?;
                }
            }
        }
        for n in 2..=3 {
            let gamma = lift(&casimir(n));
            for b in g_basis(n) {
                let c = cobracket(&vec![b], &gamma).map_err(|err| err.to_string())?;
                ensure(c.is_zero(), || format!("n={n}: γ is not invariant"))?;
            }
        }
        Ok(())
    })())
}

fn transform_stability() -> Outcome {
    outcome((|| {
        let c = Cyclotomic::int;
        let mut gauges = Vec::new();
        for (s, t) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            gauges.push(vec![vec![c(s), c(0)], vec![c(0), c(t)]]);
            gauges.push(vec![vec![c(0), c(s)], vec![c(t), c(0)]]);
        }
        let mut kinds: Vec<Transform> = gauges.into_iter().map(Transform::Gauge).collect();
        kinds.push(Transform::Rescale(c(2)));
        for e in [yang(2), cuspidal_closed_form(2)] {
            for kind in &kinds {
                let t = transform(&e.tensor, kind).map_err(|err| err.to_string())?;
                let lhs = cybe_lhs(&t).map_err(|err| err.to_string())?;
                ensure(lhs.is_zero(), || format!("{}: CYBE broken by {kind:?}", e.name))?;
            }
        }
        Ok(())
    })())
}

fn small_tensor() -> impl Strategy<Value = Tensor2<RatFun>> {
    let basis = sl(2).basis().to_vec();
    let term = (0..basis.len(), 0..basis.len(), -2i32..=2, -2i32..=2, -5i64..=5, 1i64..=3, 0u32..=1);
    proptest::collection::vec(term, 0..6).prop_map(move |terms| {
        let mut t = Tensor2::zero(2);
        for (a, b, ex, ey, p, q, m) in terms {
            let mono = Monomial::var(Var::X, ex).mul(&Monomial::var(Var::Y, ey));
            let num = MLaurent::term(mono, Cyclotomic::from_rational(rat(p, q)));
            t.add_term(basis[a], basis[b], RatFun::new(num, [(Factor::Diff(Var::X, Var::Y), m)]).unwrap());
        }
        t
    })
}

fn cli(args: &[&str]) -> Option<i32> {
    Command::new(env!("CARGO_BIN_EXE_cybe")).args(args).output().ok()?.status.code()
}

fn serialization_and_cli() -> Outcome {
    outcome((|| {
        let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
        runner
            .run(&small_tensor(), |t| {
                let text = serialize(&Document::Tensor2(t.clone()));
                let back = parse(&text).map_err(|e| proptest::test_runner::TestCaseError::fail(e.to_string()))?;
                proptest::prop_assert_eq!(&back, &Document::Tensor2(t));
                proptest::prop_assert_eq!(serialize(&back), text);
                Ok(())
            })
            .map_err(|e| e.to_string())?;

        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let file = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
        let (cusp, gonly) = (file("cusp.json"), file("gcybe_only.json"));
        ensure(cli(&["compute", "--curve", "cuspidal", "--n", "2", "--out", &cusp]) == Some(0), || "compute".into())?;
        ensure(cli(&["verify", "--in", &cusp, "--identity", "cybe"]) == Some(0), || "cuspidal cybe exit".into())?;
        ensure(cli(&["catalog", "emit", "gcybe_only", "--n", "2", "--out", &gonly]) == Some(0), || "emit".into())?;
        ensure(cli(&["verify", "--in", &gonly, "--identity", "cybe"]) == Some(1), || "gcybe_only cybe exit".into())?;
        let missing = file("missing.json");
        ensure(cli(&["verify", "--in", &missing, "--identity", "cybe"]) == Some(2), || "missing file exit".into())
    })())
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 11] = [
        ("oracle equivalence of the sheaf pipeline", oracle_equivalence),
        ("CYBE suite", cybe_suite),
        ("GCYBE but not CYBE", gcybe_not_cybe),
        ("unitarity constraint r_sp + σ(r_sp) = γ", unitarity_constraint),
        ("non-degeneracy of flagged entries", nondegeneracy),
        ("solution-space structure", sol_structure),
        ("Manin round trip", manin_round_trip),
        ("coisotropy vs skew-symmetry", coisotropy_vs_skew),
        ("cobracket regularity", cobracket_regularity),
        ("transform stability", transform_stability),
        ("serialization and CLI contract", serialization_and_cli),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let line = match &result {
            Outcome::Pass => "PASS".to_string(),
            Outcome::Fail(why) => {
                unexpected += 1;
                format!("FAIL ({why})")
            }
            Outcome::ExpectedFail(why) => format!("FAIL, expected ({why})"),
        };
        println!("criterion {:>2}: {name}: {line} [{:.2}s]", i + 1, took.as_secs_f64());
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
