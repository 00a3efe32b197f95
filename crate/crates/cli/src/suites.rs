//! Verification suites run by `cremona verify`.

use clap::ValueEnum;
use serde_json::{json, Value};

use cremona::birmap::{characteristic, compose, noether_witness, Characteristic, LinearSystem, Subgroup};
use cremona::generators::{cubic_jcirc, is_in_jcirc, is_in_jstar, quadratic_jcirc, sigma0, sigma1_intro, sigma1_jcirc, standard_quintic, GenKind, Generator};
use cremona::plane::{nu_key, p1, p2, pi_circ, ProjPoint};
use cremona::relations::{
    f0_conjugate, f0_phi, holds_in_group, perturbed, phi_respects, quintic_points, reassignment_ratio, shipped_corpus, verify_stereographic,
    F0Generator,
};
use cremona::exactalg::{Matrix, Rational};
use cremona::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Char,
    Relations,
    Reassignment,
    F0,
    Stereo,
    Noether,
    All,
}

struct Check {
    label: String,
    passed: bool,
    detail: Value,
}

fn check(label: impl Into<String>, r: Result<(bool, Value)>) -> Check {
    match r {
        Ok((passed, detail)) => Check { label: label.into(), passed, detail },
        Err(e) => Check { label: label.into(), passed: false, detail: json!({ "error": { "code": e.code(), "message": e.to_string() } }) },
    }
}

fn sample_generators() -> Vec<(String, Result<Generator>)> {
    let mut out: Vec<(String, Result<Generator>)> = vec![
        ("sigma0".into(), Ok(sigma0())),
        ("sigma1_intro".into(), Ok(sigma1_intro())),
        ("sigma1".into(), Ok(sigma1_jcirc())),
    ];
    for (i, q) in [(1, [1, 2, 3]), (1, [2, 1, 1]), (2, [1, 3, 2])] {
        out.push((format!("quadratic{i} {q:?}"), quadratic_jcirc(i, &ProjPoint::real(q))));
    }
    for r in [[1, 1, 1], [2, 3, 1], [1, -2, 3]] {
        out.push((format!("cubic {r:?}"), cubic_jcirc(&ProjPoint::real(r))));
    }
    out.push(("quintic [1:1:i]".into(), standard_quintic(&[p1(), p2(), quintic_points()[0].clone()])));
    out
}

fn expected_characteristic(g: &Generator) -> Characteristic {
    let mults = match g.degree() {
        2 => vec![1, 1, 1],
        3 => vec![2, 1, 1, 1, 1],
        5 => vec![2; 6],
        _ => vec![],
    };
    Characteristic { degree: g.degree(), mults }
}

fn char_suite() -> Vec<Check> {
    sample_generators()
        .into_iter()
        .map(|(label, g)| {
            check(
                label,
                g.and_then(|g| {
                    let c = characteristic(g.map())?;
                    let mut ok = c == expected_characteristic(&g) && c.satisfies_noether();
                    if matches!(g.kind(), GenKind::Sigma0 | GenKind::Sigma1Intro | GenKind::Sigma1Jcirc) {
                        ok &= compose(g.map(), g.map()).is_identity();
                    }
                    Ok((ok, json!({ "characteristic": c.to_string() })))
                }),
            )
        })
        .collect()
}

fn relations_suite() -> Vec<Check> {
    let corpus = match shipped_corpus() {
        Ok(c) => c,
        Err(e) => return vec![check("corpus", Err(e))],
    };
    let mut out: Vec<Check> = corpus
        .iter()
        .map(|r| {
            check(
                r.label.clone(),
                (|| {
                    let holds = holds_in_group(r)?;
                    let phi = phi_respects(r)?;
                    Ok((holds && phi, json!({ "kind": r.kind, "holds": holds, "phi_respects": phi })))
                })(),
            )
        })
        .collect();
    out.push(check(
        "perturbed control",
        (|| {
            let bad = perturbed(&corpus[corpus.len() / 2])?;
            let holds = holds_in_group(&bad)?;
            Ok((!holds, json!({ "holds": holds })))
        })(),
    ));
    out
}

fn reassignment_suite() -> Vec<Check> {
    quintic_points()
        .into_iter()
        .map(|q| {
            check(
                format!("{q}"),
                (|| {
                    let l = reassignment_ratio(&q)?;
                    let alpha = cremona::generators::alpha_fixing_p1_sending(&q)?;
                    let image = cremona::birmap::apply(alpha.map(), &p2())?;
                    let same_key = nu_key(&pi_circ(&image)?)? == nu_key(&pi_circ(&q)?)?;
                    let sign = if l > Rational::from_integer(0.into()) { "positive" } else { "negative" };
                    Ok((same_key, json!({ "ratio": cremona::exactalg::scalar::fmt_rational(&l), "sign": sign, "same_key": same_key })))
                })(),
            )
        })
        .collect()
}

fn f0_suite() -> Vec<Check> {
    let m = |r: [[i64; 2]; 2]| -> Matrix<Rational> {
        Matrix::from_rows(r.iter().map(|row| row.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect())
    };
    let gens = [
        ("tau", F0Generator::Tau),
        ("swap", F0Generator::Swap),
        ("factors", F0Generator::Factors(m([[1, 1], [0, 1]]), m([[2, 0], [1, 1]]))),
        ("identity", F0Generator::Identity),
    ];
    gens.into_iter()
        .map(|(label, g)| {
            check(
                label,
                (|| {
                    let f = f0_conjugate(&g);
                    let phi = f0_phi(&f)?;
                    let ok = f.degree() <= 3 && phi.is_zero() && (g != F0Generator::Identity || f.is_identity());
                    Ok((ok, json!({ "degree": f.degree(), "phi": phi.to_json() })))
                })(),
            )
        })
        .collect()
}

fn stereo_suite() -> Vec<Check> {
    let r = verify_stereographic();
    vec![Check { label: "stereographic".into(), passed: r.passed(), detail: serde_json::to_value(&r).expect("serializable") }]
}

fn noether_suite() -> Vec<Check> {
    let mut out = Vec::new();
    for (label, g) in sample_generators() {
        let g = match g {
            Ok(g) => g,
            Err(e) => {
                out.push(check(label, Err(e)));
                continue;
            }
        };
        let groups: Vec<Subgroup> = [(is_in_jstar(g.map()).is_some(), Subgroup::JStar), (is_in_jcirc(g.map()).is_some(), Subgroup::JCirc)]
            .into_iter()
            .filter_map(|(member, s)| member.then_some(s))
            .collect();
        for s in groups {
            out.push(check(
                format!("{label} {s:?}"),
                (|| {
                    let l = LinearSystem::of_map(g.map())?;
                    let w = noether_witness(g.map(), s, &l)?;
                    Ok((w.holds(), json!({ "sum": w.sum, "bound": w.bound, "strict": w.strict, "tag": w.tag })))
                })(),
            ));
        }
    }
    out
}

fn suite_json(name: &str, checks: Vec<Check>) -> Value {
    let passed = checks.iter().all(|c| c.passed);
    let list: Vec<Value> = checks.into_iter().map(|c| json!({ "label": c.label, "passed": c.passed, "detail": c.detail })).collect();
    json!({ "name": name, "passed": passed, "checks": list })
}

pub fn run(suite: Suite) -> Value {
    let all = [Suite::Char, Suite::Relations, Suite::Reassignment, Suite::F0, Suite::Stereo, Suite::Noether];
    let chosen: Vec<Suite> = if suite == Suite::All { all.to_vec() } else { vec![suite] };
    let suites: Vec<Value> = chosen
        .into_iter()
        .map(|s| match s {
            Suite::Char => suite_json("char", char_suite()),
            Suite::Relations => suite_json("relations", relations_suite()),
            Suite::Reassignment => suite_json("reassignment", reassignment_suite()),
            Suite::F0 => suite_json("f0", f0_suite()),
            Suite::Stereo => suite_json("stereo", stereo_suite()),
            Suite::Noether => suite_json("noether", noether_suite()),
            Suite::All => unreachable!(),
        })
        .collect();
    let passed = suites.iter().all(|s| s["passed"] == json!(true));
    json!({ "passed": passed, "suites": suites })
}
