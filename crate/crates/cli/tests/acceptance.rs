//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines are always printed; exits non-zero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use effect_algebra::laws::{expected_counterexamples, unexpected_passes};
use effect_algebra::rational::ratio;
use effect_algebra::{
    basic_decomposition, boolean_algebra, build_effect_algebra, direct_product, extreme_states,
    mv_chain, paper_fixture, parse_eaf, parse_rational, parse_state, run_law_suite, serialize_eaf,
    serialize_state, sharp_subalgebra, smear_state, EffectAlgebra, FixtureName, LawId, LawStatus,
    Mode, Rational, State,
};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data(name: &str) -> PathBuf {
    root().join("data").join(name)
}

fn eaf(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_eaf"))
        .args(args)
        .output()
        .expect("eaf runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

/// Coefficients and right-hand side of a printed certificate row.
fn row_terms(row: &str) -> (BTreeMap<String, i64>, i64) {
    let mut coeffs = BTreeMap::new();
    let tokens: Vec<&str> = row.split_whitespace().collect();
    match tokens.as_slice() {
        [x, "⊕", y, "=", z] => {
            *coeffs.entry(z.to_string()).or_insert(0) += 1;
            *coeffs.entry(x.to_string()).or_insert(0) -= 1;
            *coeffs.entry(y.to_string()).or_insert(0) -= 1;
            (coeffs, 0)
        }
        [x, "=", rhs] => {
            coeffs.insert(x.to_string(), 1);
            (coeffs, rhs.parse().expect("integer right-hand side"))
        }
        _ => panic!("unexpected row `{row}`"),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let path = data("example-4.4.eaf");
    let (code, stdout) = eaf(&["--json", "states", path.to_str().unwrap(), "--certify-none"]);
    let took = within(start, Duration::from_secs(1))?;
    ensure(code == 0, || format!("exit code {code}"))?;
    let report: Value = serde_json::from_str(&stdout).map_err(|e| e.to_string())?;
    let cert = &report["certificate"];
    ensure(report["status"] == "none", || "status is not `none`".into())?;
    ensure(
        cert["bounds"].as_array().is_some_and(|b| b.is_empty()),
        || "certificate uses bound multipliers".into(),
    )?;

    // Recombine the printed rows with exact arithmetic.
    let zero = ratio(0, 1);
    let mut coeffs: BTreeMap<String, Rational> = BTreeMap::new();
    let mut constant = zero.clone();
    let mut rows = Vec::new();
    for entry in cert["rows"].as_array().ok_or("rows missing")? {
        let y = parse_rational(entry["multiplier"].as_str().ok_or("multiplier")?)
            .map_err(|e| e.to_string())?;
        let (terms, rhs) = row_terms(entry["row"].as_str().ok_or("row")?);
        for (name, c) in &terms {
            *coeffs.entry(name.clone()).or_insert_with(|| zero.clone()) += ratio(*c, 1) * &y;
        }
        constant += ratio(rhs, 1) * &y;
        rows.push((terms, rhs, y));
    }
    ensure(coeffs.values().all(|c| *c == zero), || {
        format!("rows do not cancel every variable: {coeffs:?}")
    })?;
    ensure(constant < zero, || {
        format!("constant {constant} is not negative")
    })?;

    // The chain relations force these values; only the mixed rows fail there.
    let forced: BTreeMap<&str, Rational> = [
        ("0", (0, 1)),
        ("a", (1, 3)),
        ("b", (1, 4)),
        ("c", (1, 3)),
        ("2a", (2, 3)),
        ("2b", (1, 2)),
        ("2c", (2, 3)),
        ("3b", (3, 4)),
        ("1", (1, 1)),
    ]
    .into_iter()
    .map(|(n, (p, q))| (n, ratio(p, q)))
    .collect();
    let abc = &forced["a"] + &forced["b"] + &forced["c"];
    ensure(abc == ratio(11, 12), || format!("a + b + c = {abc}"))?;
    let mut weighted = zero.clone();
    for (terms, rhs, y) in &rows {
        let value: Rational = terms
            .iter()
            .map(|(n, c)| ratio(*c, 1) * &forced[n.as_str()])
            .sum();
        let residual = value - ratio(*rhs, 1);
        if residual != zero {
            ensure(residual == ratio(1, 12), || {
                format!("unexpected residual {residual}")
            })?;
        }
        weighted += residual * y;
    }
    ensure(constant == -weighted.clone(), || {
        format!("constant {constant} differs from the forced residue {weighted}")
    })?;
    let cli_constant = cert["constant"].as_str().unwrap_or_default();
    ensure(
        cli_constant == effect_algebra::format_rational(&constant),
        || format!("printed constant {cli_constant}"),
    )?;
    Ok(format!(
        "certificate verified, constant {constant} = −Σ y·(1/12) from 1/3 + 1/4 + 1/3 = 11/12, {took:?}"
    ))
}

fn criterion_2() -> Outcome {
    let e = paper_fixture(FixtureName::Example25);
    let p = e.profile();
    let (a, b) = (e.id("a"), e.id("b"));
    ensure(p.ord(a) == 2 && p.ord(b) == 3, || {
        "ord(a), ord(b) ≠ 2, 3".into()
    })?;
    ensure(p.sharp == [e.zero(), e.one()], || "S(E) ≠ {0, 1}".into())?;
    ensure(e.order().join(a, b).is_none(), || "a ∨ b exists".into())?;
    ensure(!p.is_sharp(e.id("2a")), || "2a is sharp".into())?;
    ensure(paper_fixture(FixtureName::Example37) == e, || {
        "3.7 table differs".into()
    })?;

    let e = paper_fixture(FixtureName::Example44);
    let p = e.profile();
    for (name, n) in [("a", 3), ("b", 4), ("c", 3)] {
        ensure(p.ord(e.id(name)) == n, || format!("ord({name}) ≠ {n}"))?;
    }
    ensure(p.sharp == [e.zero(), e.one()], || "S(E) ≠ {0, 1}".into())?;
    ensure(!e.is_lattice(), || "Example 4.4 is a lattice".into())?;

    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for f in ["example-2.5", "example-4.4"] {
        let path = data(&format!("{f}.eaf"));
        let golden = fs::read_to_string(golden_dir.join(format!("analyze-{f}.txt")))
            .map_err(|e| e.to_string())?;
        for _ in 0..2 {
            let (code, out) = eaf(&["analyze", path.to_str().unwrap()]);
            ensure(code == 0 && out == golden, || {
                format!("analyze {f} differs from golden")
            })?;
        }
    }
    Ok("ord, S(E), join and lattice facts exact; analyze goldens byte-stable".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let corpus = common::corpus();
    let mut checks = 0;
    for entry in &corpus {
        let report = run_law_suite(&entry.algebra, &[], Mode::Standard);
        for r in &report.records {
            ensure(r.status == LawStatus::Pass, || {
                format!("{} on {}: {:?}", r.law, entry.label, r.status)
            })?;
            checks += 1;
        }
    }
    let took = within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{checks} law checks pass on {} algebras, {took:?}",
        corpus.len()
    ))
}

fn criterion_4() -> Outcome {
    for fixture in [FixtureName::Example25, FixtureName::Example37] {
        let e = paper_fixture(fixture);
        let report = run_law_suite(&e, &[], Mode::Counterexample);
        let Some(LawStatus::Fail { witnesses, .. }) = report.status(LawId::L2_3_ii) else {
            return Err(format!("L2.3.ii does not fail on {fixture}"));
        };
        ensure(
            witnesses.first() == Some(&e.id("a")) && witnesses.contains(&e.id("2a")),
            || format!("L2.3.ii witnesses {witnesses:?}"),
        )?;
        let Some(LawStatus::Fail { witnesses, .. }) = report.status(LawId::T2_6) else {
            return Err(format!("T2.6 does not fail on {fixture}"));
        };
        let expected = [e.id("2a"), e.id("a"), e.id("b")];
        ensure(expected.iter().all(|w| witnesses.contains(w)), || {
            format!("T2.6 witnesses {witnesses:?}")
        })?;
        ensure(e.multiple(e.id("a"), 2) == e.multiple(e.id("b"), 2), || {
            "2a ≠ 2b".into()
        })?;
    }
    for fixture in FixtureName::ALL {
        let report = run_law_suite(&paper_fixture(fixture), &[], Mode::Counterexample);
        let missing = unexpected_passes(&report, expected_counterexamples(fixture));
        ensure(missing.is_empty(), || {
            format!("unexpected passes on {fixture}: {missing:?}")
        })?;
    }
    let (code, out) = eaf(&[
        "props",
        data("example-2.5.eaf").to_str().unwrap(),
        "--counterexample-mode",
        "--laws",
        "L2.3.ii,T2.6",
    ]);
    ensure(code == 1, || format!("props exit code {code}"))?;
    ensure(
        out.contains("L2.3.ii fail [a 2a]") && out.contains("T2.6 fail [2a b a]"),
        || format!("props output:\n{out}"),
    )?;
    Ok("L2.3.ii fails at a (2a ∉ S(E)); T2.6 fails at 2a = 2b; no unexpected passes".into())
}

fn criterion_5() -> Outcome {
    let mut smeared = 0;
    for entry in common::corpus() {
        let e = &entry.algebra;
        if !e.is_lattice() {
            continue;
        }
        let sub = sharp_subalgebra(e).map_err(|err| format!("{}: {err}", entry.label))?;
        for omega in extreme_states(&sub.algebra) {
            let s =
                smear_state(e, &sub, &omega).map_err(|err| format!("{}: {err}", entry.label))?;
            ensure(common::is_state(e, s.values()), || {
                format!("{}: not a state", entry.label)
            })?;
            for local in sub.algebra.elements() {
                ensure(s.value(sub.to_parent(local)) == omega.value(local), || {
                    format!(
                        "{}: restriction differs at {}",
                        entry.label,
                        sub.algebra.name(local)
                    )
                })?;
            }
            smeared += 1;
        }
    }

    let text = eaf(&[
        "smear",
        data("hsum-c2-c3.eaf").to_str().unwrap(),
        "--state",
        data("trivial.state").to_str().unwrap(),
    ]);
    let expected = "state v1\nvalue 0 0/1\nvalue a 1/2\nvalue b 1/3\nvalue 2b 2/3\nvalue 1 1/1\n";
    ensure(text == (0, expected.to_string()), || {
        format!("smear output {text:?}")
    })?;

    let e = direct_product(
        &boolean_algebra(1).unwrap(),
        &effect_algebra::mv_chain_with_generator(2, "c").unwrap(),
    )
    .map_err(|err| err.to_string())?;
    let sub = sharp_subalgebra(&e).map_err(|err| err.to_string())?;
    let omega_text = fs::read_to_string(data("product-b1-c2.state")).map_err(|e| e.to_string())?;
    let values = parse_state(&omega_text, &sub.algebra).map_err(|e| e.to_string())?;
    ensure(
        values[sub.from_parent(e.id("(1,0)")).unwrap().index()] == ratio(1, 2),
        || "ω((1,0)) ≠ 1/2".into(),
    )?;
    let omega = State::new(&sub.algebra, values).map_err(|_| "ω is not a state".to_string())?;
    let s = smear_state(&e, &sub, &omega).map_err(|err| err.to_string())?;
    ensure(*s.value(e.id("(1,c)")) == ratio(3, 4), || {
        "ω̂((1,c)) ≠ 3/4".into()
    })?;
    Ok(format!(
        "{smeared} smeared states exact with pointwise restriction; C_2 ⊞ C_3 gives 1/2, 1/3, 2/3; ω̂((1,c)) = 3/4"
    ))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut compared = 0;
    for entry in common::corpus()
        .into_iter()
        .filter(|c| c.algebra.size() <= 12)
    {
        let e = &entry.algebra;
        for x in e.elements() {
            let all = common::all_basic_decompositions(e, x);
            ensure(all.len() == 1, || {
                format!(
                    "{}: {} has {} decompositions",
                    entry.label,
                    e.name(x),
                    all.len()
                )
            })?;
            let d = basic_decomposition(e, x).map_err(|err| err.to_string())?;
            let parts: Vec<_> = d
                .meager_parts
                .parts
                .iter()
                .map(|p| (p.atom, p.multiplicity))
                .collect();
            ensure((d.sharp_part, parts) == all[0], || {
                format!("{}: {} differs from the oracle", entry.label, e.name(x))
            })?;
            compared += 1;
        }
    }
    let took = within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{compared} elements match the unique brute-force decomposition, {took:?}"
    ))
}

fn criterion_7() -> Outcome {
    // State files and the algebra whose elements (or sharp elements) they cover.
    let domains: BTreeMap<&str, (&str, bool)> = [
        ("trivial.state", ("hsum-c2-c3.eaf", true)),
        ("product-b1-c2.state", ("product-b1-c2.eaf", true)),
        ("c3-b.state", ("c3-b.eaf", false)),
    ]
    .into_iter()
    .collect();
    let load = |name: &str| -> Result<(String, EffectAlgebra), String> {
        let text = fs::read_to_string(data(name)).map_err(|e| e.to_string())?;
        let doc = parse_eaf(&text).map_err(|e| format!("{name}: {e}"))?;
        let e = build_effect_algebra(&doc).map_err(|e| format!("{name}: {e}"))?;
        Ok((text, e))
    };
    let mut files: Vec<String> = fs::read_dir(root().join("data"))
        .map_err(|e| e.to_string())?
        .map(|entry| entry.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    files.sort();
    let (mut eafs, mut states) = (0, 0);
    for name in &files {
        if name.ends_with(".eaf") {
            let (text, e) = load(name)?;
            let canonical = serialize_eaf(&e);
            ensure(
                effect_algebra::eaf::strip_comments(&text) == canonical,
                || format!("{name} is not in canonical form"),
            )?;
            let again = build_effect_algebra(&parse_eaf(&canonical).unwrap()).unwrap();
            ensure(serialize_eaf(&again) == canonical && again == e, || {
                format!("{name} does not round-trip")
            })?;
            eafs += 1;
        } else if name.ends_with(".state") {
            let &(domain, over_sharp) = domains
                .get(name.as_str())
                .ok_or_else(|| format!("{name} has no registered domain"))?;
            let (_, e) = load(domain)?;
            let e = if over_sharp {
                sharp_subalgebra(&e).map_err(|err| err.to_string())?.algebra
            } else {
                e
            };
            let text = fs::read_to_string(data(name)).map_err(|e| e.to_string())?;
            let values = parse_state(&text, &e).map_err(|err| format!("{name}: {err}"))?;
            let canonical = serialize_state(&e, &values);
            ensure(
                effect_algebra::eaf::strip_comments(&text) == canonical,
                || format!("{name} is not in canonical form"),
            )?;
            ensure(parse_state(&canonical, &e).as_ref() == Ok(&values), || {
                format!("{name} does not round-trip")
            })?;
            states += 1;
        } else {
            return Err(format!("unexpected file {name} in the fixture directory"));
        }
    }
    Ok(format!(
        "{eafs} EAF and {states} STATE files round-trip byte-exact"
    ))
}

fn criterion_8() -> Outcome {
    let fresh = |e: &EffectAlgebra| -> EffectAlgebra {
        build_effect_algebra(&parse_eaf(&serialize_eaf(e)).unwrap()).unwrap()
    };
    let base: Vec<common::Entry> = common::corpus()
        .into_iter()
        .filter(|c| {
            let f = c.algebra.profile().flags;
            c.algebra.is_lattice() && f.atomic && f.sharply_dominating
        })
        .collect();
    let mut factors: Vec<(String, EffectAlgebra)> = vec![
        ("2^1".into(), boolean_algebra(1).unwrap()),
        ("C_2".into(), mv_chain(2).unwrap()),
    ];
    factors.extend(base.iter().map(|c| (c.label.clone(), c.algebra.clone())));
    let mut checked = 0;
    let mut oracle_checked = 0;
    for left in &base {
        for (label, right) in &factors {
            if left.algebra.size() * right.size() > 32 {
                continue;
            }
            let p = fresh(&direct_product(&left.algebra, right).map_err(|e| e.to_string())?);
            let f = p.profile().flags;
            ensure(p.is_lattice() && f.atomic && f.sharply_dominating, || {
                format!("{} × {label} loses a flag", left.label)
            })?;
            if p.size() <= 16 {
                ensure(
                    common::is_lattice(&p)
                        && common::is_atomic(&p)
                        && common::is_sharply_dominating(&p),
                    || format!("oracle rejects {} × {label}", left.label),
                )?;
                oracle_checked += 1;
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} products keep lattice, atomic and sharply dominating on recomputation ({oracle_checked} also by brute force)"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Example 4.4 has no state, certified exactly", criterion_1),
        ("reference fixture facts and analyze goldens", criterion_2),
        ("law suite green on the generated corpus", criterion_3),
        ("counterexample mode on Examples 2.5 and 3.7", criterion_4),
        ("smearing end to end", criterion_5),
        (
            "basic decomposition matches the brute-force oracle",
            criterion_6,
        ),
        ("EAF and STATE round-trip", criterion_7),
        ("product closure", criterion_8),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} PASS {title}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {} FAIL {title}: {reason}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
