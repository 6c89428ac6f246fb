use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use effect_algebra::lp::Certificate;
use effect_algebra::state::NoState;
use effect_algebra::{
    atomic_decomposition, basic_decomposition, boolean_algebra, build_effect_algebra, classify,
    direct_product, find_state, format_rational, horizontal_sum, mv_chain_with_generator,
    paper_fixture, parse_eaf, parse_state, run_law_suite, serialize_eaf, serialize_state,
    sharp_subalgebra, smear_state, AlgebraError, EffectAlgebra, ElementId, LawId, LawStatus, Mode,
    Rational, State, StateSearch,
};
use serde_json::{json, Value};

use crate::output::{CliError, Outcome};
use crate::Generator;

type CommandResult = Result<Outcome, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|err| CliError::usage(format!("{}: {err}", path.display())))
}

/// Replace `#i` element references in a library message by names.
fn with_names(message: &str, names: &[String]) -> String {
    let mut out = String::with_capacity(message.len());
    let mut rest = message;
    while let Some(pos) = rest.find('#') {
        out.push_str(&rest[..pos]);
        let digits: String = rest[pos + 1..]
            .chars()
            .take_while(char::is_ascii_digit)
            .collect();
        match digits.parse::<usize>().ok().and_then(|i| names.get(i)) {
            Some(name) => out.push_str(name),
            None => {
                out.push('#');
                out.push_str(&digits);
            }
        }
        rest = &rest[pos + 1 + digits.len()..];
    }
    out.push_str(rest);
    out
}

fn load(path: &Path) -> Result<EffectAlgebra, CliError> {
    let text = read(path)?;
    let doc =
        parse_eaf(&text).map_err(|err| CliError::usage(format!("{}: {err}", path.display())))?;
    build_effect_algebra(&doc).map_err(|err| {
        let message = format!(
            "{}: {}",
            path.display(),
            with_names(&err.to_string(), &doc.names)
        );
        match err {
            AlgebraError::AxiomViolation(_) | AlgebraError::DuplicateSum { .. } => {
                CliError::failed(message)
            }
            _ => CliError::usage(message),
        }
    })
}

fn names_of(e: &EffectAlgebra, xs: &[ElementId]) -> Vec<String> {
    xs.iter().map(|&x| e.name(x).to_string()).collect()
}

fn rationals(e: &EffectAlgebra, values: &[Rational]) -> Value {
    e.elements()
        .zip(values)
        .map(|(x, v)| json!({ "element": e.name(x), "value": format_rational(v) }))
        .collect()
}

pub fn verify(path: &Path) -> CommandResult {
    let text = read(path)?;
    let doc =
        parse_eaf(&text).map_err(|err| CliError::usage(format!("{}: {err}", path.display())))?;
    let named = |ids: &[ElementId]| -> Vec<String> {
        ids.iter().map(|x| doc.names[x.index()].clone()).collect()
    };
    let violations: Vec<(String, Vec<String>, String)> = match build_effect_algebra(&doc) {
        Ok(e) => {
            let text = format!(
                "ok {} elements, {} defined sums\n",
                e.size(),
                e.table().defined_count()
            );
            let json = json!({ "status": "pass", "elements": e.size(), "violations": [] });
            return Ok(Outcome::new(text, json, 0));
        }
        Err(AlgebraError::AxiomViolation(report)) => report
            .violations
            .iter()
            .map(|v| {
                (
                    v.axiom.to_string(),
                    named(&v.witnesses),
                    with_names(&v.detail, &doc.names),
                )
            })
            .collect(),
        Err(err @ AlgebraError::DuplicateSum { x, y, .. }) => vec![(
            "table".to_string(),
            named(&[x, y]),
            with_names(&err.to_string(), &doc.names),
        )],
        Err(err) => return Err(CliError::usage(format!("{}: {err}", path.display()))),
    };
    let mut text = String::new();
    for (axiom, witnesses, detail) in &violations {
        let _ = writeln!(text, "violation {axiom} [{}] {detail}", witnesses.join(" "));
    }
    let json = json!({
        "status": "fail",
        "violations": violations
            .iter()
            .map(|(axiom, witnesses, detail)| json!({
                "axiom": axiom,
                "witnesses": witnesses,
                "detail": detail,
            }))
            .collect::<Vec<_>>(),
    });
    Ok(Outcome::new(text, json, 1))
}

pub fn analyze(path: &Path) -> CommandResult {
    let e = load(path)?;
    let order = e.order();
    let profile = e.profile();
    let class = classify(&e);
    let flags = profile.flags;
    let mut missing_joins = Vec::new();
    let mut missing_meets = Vec::new();
    for x in e.elements() {
        for y in e.elements().filter(|&y| y > x) {
            if order.join(x, y).is_none() {
                missing_joins.push([e.name(x), e.name(y)]);
            }
            if order.meet(x, y).is_none() {
                missing_meets.push([e.name(x), e.name(y)]);
            }
        }
    }
    let ords: Vec<(&str, Option<u32>)> = e
        .elements()
        .filter(|&x| x != e.zero())
        .map(|x| (e.name(x), profile.ord[x.index()]))
        .collect();

    let mut text = String::new();
    let _ = writeln!(text, "elements {}", e.size());
    let _ = writeln!(text, "names {}", e.names().join(" "));
    let _ = writeln!(text, "lattice {}", class.is_lattice);
    let _ = writeln!(text, "mv {}", class.is_mv);
    let _ = writeln!(text, "orthomodular {}", class.is_orthomodular_image);
    let _ = writeln!(text, "atomic {}", flags.atomic);
    let _ = writeln!(text, "archimedean {}", flags.archimedean);
    let _ = writeln!(text, "sharply-dominating {}", flags.sharply_dominating);
    let _ = writeln!(text, "s-dominating {}", flags.s_dominating);
    let _ = writeln!(text, "atoms {}", names_of(&e, &profile.atoms).join(" "));
    let _ = writeln!(text, "sharp {}", names_of(&e, &profile.sharp).join(" "));
    let _ = writeln!(text, "meager {}", names_of(&e, &profile.meager).join(" "));
    for (name, ord) in &ords {
        match ord {
            Some(n) => writeln!(text, "ord {name} {n}"),
            None => writeln!(text, "ord {name} unbounded"),
        }
        .expect("writing to a String");
    }
    for [x, y] in &missing_joins {
        let _ = writeln!(text, "no-join {x} {y}");
    }
    for [x, y] in &missing_meets {
        let _ = writeln!(text, "no-meet {x} {y}");
    }

    let json = json!({
        "elements": e.size(),
        "names": e.names(),
        "lattice": class.is_lattice,
        "mv": class.is_mv,
        "orthomodular": class.is_orthomodular_image,
        "atomic": flags.atomic,
        "archimedean": flags.archimedean,
        "sharply_dominating": flags.sharply_dominating,
        "s_dominating": flags.s_dominating,
        "atoms": names_of(&e, &profile.atoms),
        "sharp": names_of(&e, &profile.sharp),
        "meager": names_of(&e, &profile.meager),
        "ord": ords
            .iter()
            .map(|(name, ord)| json!({ "element": name, "ord": ord }))
            .collect::<Vec<_>>(),
        "missing_joins": missing_joins,
        "missing_meets": missing_meets,
    });
    Ok(Outcome::new(text, json, 0))
}

pub fn decompose(path: &Path, element: &str) -> CommandResult {
    let e = load(path)?;
    let x = e
        .find(element)
        .ok_or_else(|| CliError::usage(format!("unknown element `{element}`")))?;
    let atomic = atomic_decomposition(&e, x)
        .map_err(|err| CliError::failed(with_names(&err.to_string(), e.names())))?;
    let mut text = format!("element {}\nlattice {}\n", e.name(x), e.is_lattice());
    let mut json = json!({
        "element": e.name(x),
        "lattice": e.is_lattice(),
        "atomic": atomic.display(&e).to_string(),
        "unique": atomic.unique,
    });
    if e.is_lattice() {
        let basic = basic_decomposition(&e, x)
            .map_err(|err| CliError::failed(with_names(&err.to_string(), e.names())))?;
        let _ = writeln!(text, "sharp-part {}", e.name(basic.sharp_part));
        let _ = writeln!(text, "meager-part {}", basic.meager_parts.display(&e));
        json["sharp_part"] = json!(e.name(basic.sharp_part));
        json["meager_part"] = json!(basic.meager_parts.display(&e).to_string());
    }
    let _ = writeln!(text, "atomic {}", atomic.display(&e));
    let _ = writeln!(text, "unique {}", atomic.unique);
    Ok(Outcome::new(text, json, 0))
}

fn certificate_report(e: &EffectAlgebra, none: &NoState) -> Result<(String, Value), CliError> {
    let Certificate {
        row_multipliers,
        upper_multipliers,
    } = &none.certificate;
    let combination = none
        .certificate
        .check(&none.system.system)
        .map_err(|err| CliError::failed(format!("certificate failed its check: {err:?}")))?;
    let rows: Vec<(String, String)> = none
        .system
        .origins
        .iter()
        .zip(row_multipliers)
        .filter(|(_, y)| !num_is_zero(y))
        .map(|(origin, y)| (origin.describe(e), format_rational(y)))
        .collect();
    let nonzero = |values: &[Rational]| -> Vec<(String, String)> {
        e.elements()
            .zip(values)
            .filter(|(_, v)| !num_is_zero(v))
            .map(|(x, v)| (e.name(x).to_string(), format_rational(v)))
            .collect()
    };
    let bounds = nonzero(upper_multipliers);
    let coeffs = nonzero(&combination.var_coeffs);
    let constant = format_rational(&combination.constant);
    let equational = none.certificate.is_equational();

    let mut text = String::from("no state\ncertificate verified\n");
    let _ = writeln!(text, "equational {equational}");
    for (row, y) in &rows {
        let _ = writeln!(text, "row {y} {row}");
    }
    for (x, w) in &bounds {
        let _ = writeln!(text, "bound {x} {w}");
    }
    for (x, c) in &coeffs {
        let _ = writeln!(text, "combination {x} {c}");
    }
    let _ = writeln!(text, "constant {constant}");
    let pairs = |items: &[(String, String)], key: &str, value: &str| -> Vec<Value> {
        items
            .iter()
            .map(|(k, v)| json!({ key: k, value: v }))
            .collect()
    };
    let json = json!({
        "status": "none",
        "certificate": {
            "verified": true,
            "equational": equational,
            "rows": pairs(&rows, "row", "multiplier"),
            "bounds": pairs(&bounds, "element", "multiplier"),
            "combination": pairs(&coeffs, "element", "coefficient"),
            "constant": constant,
        },
    });
    Ok((text, json))
}

fn num_is_zero(r: &Rational) -> bool {
    r.numer() == &0.into()
}

pub fn states(path: &Path, certify_none: bool) -> CommandResult {
    let e = load(path)?;
    match find_state(&e) {
        StateSearch::Found(state) => {
            let mut text = String::from("state found\n");
            for x in e.elements() {
                let _ = writeln!(
                    text,
                    "value {} {}",
                    e.name(x),
                    format_rational(state.value(x))
                );
            }
            let json = json!({ "status": "found", "values": rationals(&e, state.values()) });
            Ok(Outcome::new(text, json, u8::from(certify_none)))
        }
        StateSearch::None(none) => {
            let (text, json) = certificate_report(&e, &none)?;
            Ok(Outcome::new(text, json, u8::from(!certify_none)))
        }
    }
}

pub fn smear(path: &Path, state_path: &Path) -> CommandResult {
    let e = load(path)?;
    let sub = sharp_subalgebra(&e)
        .map_err(|err| CliError::failed(format!("S(E) is not a sub-effect algebra: {err}")))?;
    let text = read(state_path)?;
    let values = parse_state(&text, &sub.algebra)
        .map_err(|err| CliError::usage(format!("{}: {err}", state_path.display())))?;
    let omega = State::new(&sub.algebra, values.clone()).map_err(|report| {
        let first = report
            .violations
            .first()
            .map(|v| v.describe(&sub.algebra, &values))
            .unwrap_or_default();
        CliError::failed(format!(
            "{}: not a state on S(E): {first}",
            state_path.display()
        ))
    })?;
    let smeared = smear_state(&e, &sub, &omega).map_err(|err| CliError::failed(err.to_string()))?;
    let text = serialize_state(&e, smeared.values());
    let json = json!({ "status": "found", "values": rationals(&e, smeared.values()) });
    Ok(Outcome::new(text, json, 0))
}

pub fn generate(what: &Generator, out: Option<&Path>) -> CommandResult {
    let built = match what {
        Generator::MvChain { n, generator } => mv_chain_with_generator(*n, generator),
        Generator::Boolean { k } => boolean_algebra(*k),
        Generator::Hsum { files } => {
            let parts = files
                .iter()
                .map(|f| load(f))
                .collect::<Result<Vec<_>, _>>()?;
            horizontal_sum(&parts)
        }
        Generator::Product { left, right } => direct_product(&load(left)?, &load(right)?),
        Generator::Fixture { name } => Ok(paper_fixture(*name)),
    };
    let e = built.map_err(|err| CliError::usage(err.to_string()))?;
    let eaf = serialize_eaf(&e);
    match out {
        Some(path) => {
            fs::write(path, &eaf)
                .map_err(|err| CliError::usage(format!("{}: {err}", path.display())))?;
            let json = json!({ "written": path.display().to_string(), "elements": e.size() });
            Ok(Outcome::new(String::new(), json, 0))
        }
        None => {
            let json = json!({ "eaf": eaf, "elements": e.size() });
            Ok(Outcome::new(eaf, json, 0))
        }
    }
}

pub fn props(
    files: &[std::path::PathBuf],
    counterexample_mode: bool,
    laws: &[LawId],
) -> CommandResult {
    let mode = if counterexample_mode {
        Mode::Counterexample
    } else {
        Mode::Standard
    };
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut failed = false;
    for path in files {
        let e = load(path)?;
        let report = run_law_suite(&e, laws, mode);
        if files.len() > 1 {
            let _ = writeln!(text, "file {}", path.display());
        }
        let mut records = Vec::new();
        for r in &report.records {
            let record = match &r.status {
                LawStatus::Pass => {
                    let _ = writeln!(text, "{} pass", r.law);
                    json!({ "law": r.law.as_str(), "status": "pass", "witnesses": [] })
                }
                LawStatus::Fail { witnesses, detail } => {
                    failed = true;
                    let names = names_of(&e, witnesses);
                    let _ = writeln!(text, "{} fail [{}] {detail}", r.law, names.join(" "));
                    json!({
                        "law": r.law.as_str(),
                        "status": "fail",
                        "witnesses": names,
                        "detail": detail,
                    })
                }
                LawStatus::Skipped(reason) => {
                    let _ = writeln!(text, "{} skipped {reason}", r.law);
                    json!({
                        "law": r.law.as_str(),
                        "status": "skipped",
                        "witnesses": [],
                        "detail": reason,
                    })
                }
            };
            records.push(record);
        }
        reports.push(json!({ "file": path.display().to_string(), "laws": records }));
    }
    let json = json!({ "mode": if counterexample_mode { "counterexample" } else { "standard" }, "reports": reports });
    Ok(Outcome::new(text, json, u8::from(failed)))
}
