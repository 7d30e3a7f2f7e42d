//! Acceptance suite: every criterion is checked exactly and reported on its own line.
//!
//! Run with `cargo test -p milnor-cli --test acceptance -- --nocapture` to see the report.

use std::path::PathBuf;
use std::process::Command;

use milnor_core::bundle_calc::{chern_cotangent, chern_line, chern_sum};
use milnor_core::class_engine::{compute_report, expansion_sign_exponent, expansion_terms, Factor, Route};
use milnor_core::identity_lab::sweep;
use milnor_core::variety_model::csm_linear_subspace;
use milnor_core::{validate, ChowClass, ClassReport, CompleteIntersectionSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type SignRule = fn(i64, [i64; 3]) -> i64;
type Criterion = (&'static str, fn() -> Check);

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn load_report(name: &str) -> ClassReport {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    let spec: CompleteIntersectionSpec = serde_json::from_str(&text).unwrap();
    compute_report(&validate(spec).unwrap(), &Route::ALL).unwrap()
}

fn class(n: usize, c: &[i64]) -> ChowClass {
    ChowClass::from_ints(n, c).unwrap()
}

fn expect(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn expect_eq<T: PartialEq + std::fmt::Display>(got: &T, want: &T, label: &str) -> Check {
    expect(got == want, || format!("{label}: got {got}, want {want}"))
}

fn criterion_1() -> Check {
    let r = load_report("p4-example.json");
    let z1 = r.variety("Z1").ok_or("Z1 missing")?;
    let csm = &z1.csm.as_ref().ok_or("c^SM(Z1) missing")?.class;
    expect_eq(&z1.cfj, &class(4, &[0, 2, 6, 8, 4]), "c^FJ(Z1)")?;
    expect_eq(csm, &class(4, &[0, 2, 7, 9, 5]), "c^SM(Z1)")?;
    expect_eq(
        &z1.cfj.to_string(),
        &"2H + 6H^2 + 8H^3 + 4H^4".to_string(),
        "c^FJ(Z1) text",
    )?;
    expect_eq(
        &csm.to_string(),
        &"2H + 7H^2 + 9H^3 + 5H^4".to_string(),
        "c^SM(Z1) text",
    )
}

fn criterion_2() -> Check {
    let r = load_report("p4-example.json");
    let z1 = r.variety("Z1").ok_or("Z1 missing")?;
    let want = class(4, &[0, 0, 1, 1, 1]);
    for route in [Route::Definition, Route::Aluffi, Route::Pp] {
        let got = z1.route(route).ok_or_else(|| format!("{route} route missing"))?;
        expect_eq(got, &want, &format!("M(Z1) via {route}"))?;
    }
    Ok(())
}

fn criterion_3() -> Check {
    let r = load_report("p4-example.json");
    let x = r.variety("Z1∩Z2").ok_or("Z1∩Z2 missing")?;
    let want = class(4, &[0, 0, 0, -1]);
    for route in [
        Route::Definition,
        Route::Thm1,
        Route::Expansion,
        Route::Cor11,
        Route::Pp,
    ] {
        let got = x.route(route).ok_or_else(|| format!("{route} route missing"))?;
        expect_eq(got, &want, &format!("M(Z1∩Z2) via {route}"))?;
    }
    expect(x.route(Route::Aluffi).is_none(), || {
        "aluffi should not apply to an intersection".into()
    })?;
    expect(!r.has_disagreement(), || "unexpected disagreement".into())
}

fn criterion_4() -> Check {
    let r = load_report("quadric-tangent-plane.json");
    let x = r.variety("Q∩T").ok_or("Q∩T missing")?;
    expect_eq(
        x.route(Route::Definition).ok_or("definition missing")?,
        &class(3, &[0, 0, 0, 1]),
        "definition",
    )?;
    expect_eq(
        x.route(Route::Thm1).ok_or("thm1 missing")?,
        &ChowClass::zero(3),
        "thm1",
    )?;

    let path = fixture("quadric-tangent-plane.json");
    let out = Command::new(env!("CARGO_BIN_EXE_milnor"))
        .args(["crosscheck", path.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    expect_eq(&out.status.code().unwrap_or(-1), &3, "crosscheck exit code")?;
    expect(text.contains("WARNING: transversality is NOT asserted"), || {
        "missing transversality warning".into()
    })?;
    expect(
        text.lines()
            .any(|l| l.starts_with("Q∩T") && l.contains("thm1") && l.contains("DISAGREE")),
        || "missing DISAGREE row for thm1".into(),
    )
}

fn criterion_5() -> Check {
    let reports = sweep(2..=8, 4, 100, 20_240_601).map_err(|e| e.to_string())?;
    let expected_rows: usize = (2..=8usize).map(|n| 2 * n.min(4)).sum();
    expect_eq(&reports.len(), &expected_rows, "sweep rows")?;
    if let Some(bad) = reports.iter().find(|r| !r.passed()) {
        return Err(bad.to_string());
    }

    // the seven three-factor terms with their signs written out by hand
    use Factor::{Csm as S, Milnor as M};
    let written: [([Factor; 3], SignRule); 7] = [
        ([M, M, M], |_, _| 0),
        ([S, S, M], |_, d| d[0] + d[1]),
        ([S, M, S], |_, d| d[0] + d[2]),
        ([M, S, S], |_, d| d[1] + d[2]),
        ([S, M, M], |n, d| n - d[0]),
        ([M, S, M], |n, d| n - d[1]),
        ([M, M, S], |n, d| n - d[2]),
    ];
    let terms = expansion_terms(3);
    expect_eq(&terms.len(), &7, "three-factor term count")?;
    for n in 3..=8usize {
        for d in [[1, 1, 1], [1, 2, 3], [2, 2, 2], [3, 1, 2], [1, 1, 2]] {
            for (pattern, exponent) in &written {
                expect(terms.iter().any(|t| t.as_slice() == pattern), || {
                    format!("term {pattern:?} missing")
                })?;
                let ours = expansion_sign_exponent(pattern, &d, n);
                let theirs = exponent(n as i64, d);
                expect((ours - theirs).rem_euclid(2) == 0, || {
                    format!("sign of {pattern:?} at n={n} d={d:?}")
                })?;
            }
        }
    }
    Ok(())
}

fn random_class(rng: &mut ChaCha8Rng, n: usize) -> ChowClass {
    let coeffs: Vec<i64> = (0..=n).map(|_| rng.gen_range(-9..=9)).collect();
    class(n, &coeffs)
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> ChowClass {
    let mut coeffs: Vec<i64> = (0..=n).map(|_| rng.gen_range(-9..=9)).collect();
    coeffs[0] = if rng.gen_bool(0.5) { 1 } else { -1 };
    class(n, &coeffs)
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 2..=8usize {
        let one = ChowClass::one(n);
        let h = |d: i64| class(n, &[0, d]);
        for _ in 0..50 {
            let (a, b, c) = (
                random_class(&mut rng, n),
                random_class(&mut rng, n),
                random_class(&mut rng, n),
            );
            expect(&a + &b == &b + &a && &a * &b == &b * &a, || {
                format!("commutativity n={n}")
            })?;
            expect(&(&a * &b) * &c == &a * &(&b * &c), || {
                format!("associativity n={n}")
            })?;
            expect(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || {
                format!("distributivity n={n}")
            })?;
            expect(&a * &one == a && (&a + &(-&a)).is_zero(), || {
                format!("identities n={n}")
            })?;

            let u = random_unit(&mut rng, n);
            expect(&u * &u.invert().map_err(|e| e.to_string())? == one, || {
                format!("inverse n={n}")
            })?;

            expect(a.dual().dual() == a, || format!("dual involution n={n}"))?;
            expect((&a * &b).dual() == &a.dual() * &b.dual(), || {
                format!("dual product n={n}")
            })?;

            let (p, q) = (rng.gen_range(-6..=6i64), rng.gen_range(-6..=6i64));
            let once = a.tensor_line(&h(p + q)).map_err(|e| e.to_string())?;
            let twice = a
                .tensor_line(&h(p))
                .and_then(|x| x.tensor_line(&h(q)))
                .map_err(|e| e.to_string())?;
            expect(once == twice, || format!("tensor composition n={n} u={p} v={q}"))?;
            let left = a.tensor_line(&h(p)).map_err(|e| e.to_string())?.dual();
            let right = a.dual().tensor_line(&h(-p)).map_err(|e| e.to_string())?;
            expect(left == right, || format!("dual/tensor n={n} d={p}"))?;

            let degrees: Vec<i64> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(-5..=5)).collect();
            let lines: Vec<_> = degrees.iter().map(|&d| chern_line(n, d)).collect();
            let whitney = chern_sum(&lines).map_err(|e| e.to_string())?;
            let product = degrees
                .iter()
                .fold(one.clone(), |acc, &d| &acc * &class(n, &[1, d]));
            expect(whitney.total() == &product, || {
                format!("whitney n={n} degrees={degrees:?}")
            })?;
        }
        for d in 1..=6i64 {
            let by_roots = chern_cotangent(n)
                .and_then(|t| t.twist(&h(d)))
                .map_err(|e| e.to_string())?;
            let by_euler = &class(n, &[1, d - 1])
                .pow(n as i64 + 1)
                .map_err(|e| e.to_string())?
                * &class(n, &[1, d]).invert().map_err(|e| e.to_string())?;
            expect(by_roots.total() == &by_euler, || format!("c(T*P^{n} ⊗ O({d}))"))?;
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    let smooth = load_report("smooth-suite.json");
    for v in &smooth.varieties {
        for o in &v.milnor {
            if let Some(c) = &o.class {
                expect(c.is_zero(), || format!("{} via {} is {c}", v.name, o.route))?;
            }
        }
    }

    // Euler characteristics known independently of any class computation
    let known: &[(&str, &[(&str, i64)])] = &[
        ("p4-example.json", &[("Z1", 5), ("Z2", 4), ("Z1∩Z2", 4)]),
        ("quadric-tangent-plane.json", &[("Q", 4), ("T", 3), ("Q∩T", 3)]),
        ("nodal-cubic.json", &[("C", 1)]),
        ("smooth-suite.json", &[("A", 5), ("B", 5), ("Q", 6), ("A∩B∩Q", 4)]),
        ("plane-pair-p3.json", &[("Y", 4)]),
        ("two-plane-pairs-p4.json", &[("A", 5), ("B", 5), ("A∩B", 5)]),
    ];
    for (file, entries) in known {
        let r = load_report(file);
        for (name, chi) in *entries {
            let v = r.variety(name).ok_or_else(|| format!("{file}: {name} missing"))?;
            let got = v.euler_characteristic.clone().unwrap_or_default();
            expect_eq(&got, &chi.to_string(), &format!("{file}: chi({name})"))?;
        }
    }
    for n in 1..=8usize {
        for k in 0..=n as i64 {
            let c = csm_linear_subspace(n, k).map_err(|e| e.to_string())?;
            expect_eq(
                &c.integral().to_string(),
                &(k + 1).to_string(),
                &format!("chi(P^{k}) in P^{n}"),
            )?;
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("c^FJ and c^SM of Z1", criterion_1),
        ("M(Z1) by definition, aluffi and pp", criterion_2),
        ("M(Z1∩Z2) = -H^3 by every applicable route", criterion_3),
        ("non-transversal quadric and tangent plane", criterion_4),
        ("identity sweep n=2..8, r=1..min(4,n)", criterion_5),
        ("ring and bundle properties", criterion_6),
        ("smooth suite and Euler characteristics", criterion_7),
    ];
    let mut failed = Vec::new();
    for (i, (label, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {}: PASS  {label}", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {label}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
