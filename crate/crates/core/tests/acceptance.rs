//! Acceptance run: one PASS/FAIL line per criterion, with the failing
//! checks listed underneath.

use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cremona::abelianisation::{decompose_jcirc, phi_circ, phi_word};
use cremona::birmap::{apply, characteristic, compose, maps_equal, noether_witness, Characteristic, LinearSystem, Subgroup};
use cremona::exactalg::parse::parse_uni;
use cremona::exactalg::scalar::{fmt_rational, gi, rat};
use cremona::exactalg::{GaussRational, HomPoly3, Matrix, RatFunc, UniPoly};
use cremona::generators::linear::{int_matrix, swap_matrix};
use cremona::generators::{
    cubic_jcirc, decompose_cubic, is_in_jcirc, is_in_jstar, is_permutation_up_to_scalar, linear_map, quadratic_jcirc, sigma0,
    sigma1_intro, sigma1_jcirc, standard_quintic, Generator, Letter, Tag, Word,
};
use cremona::plane::{line_poly, line_through, nu_key, p1, p2, pencil_a, pencil_b, pencil_member, pencil_value_of_conic, pi_circ, P1Point, ProjPoint};
use cremona::relations::{
    f0_conjugate, f0_phi, holds_in_group, phi_respects, quintic_points, rational_grid, reassignment_ratio, shipped_corpus,
    verify_q_positivity, verify_stereographic, F0Generator, RelKind,
};
use cremona::spinor::{pgl2_to_so, reflection_norm_in, theta_bar, Form, RtEntry, RtVector, SpinorClass};
use cremona::{Rational, Result};
use num_traits::{One, Zero};

/// Collects failed checks for one criterion.
#[derive(Default)]
struct Report(Vec<String>);

impl Report {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.0.push(what.into());
        }
    }

    fn run(&mut self, what: &str, r: Result<bool>) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => self.0.push(format!("{what}: {e}")),
        }
    }
}

fn quintic_example() -> Generator {
    standard_quintic(&[p1(), p2(), ProjPoint::from_gauss([(1, 0), (1, 0), (0, 1)])]).unwrap()
}

fn quadratic_samples() -> Vec<Generator> {
    let qs = [[1, 2, 3], [2, -1, 1], [0, 1, 1], [3, 1, 2], [1, 1, 5], [2, 5, -3], [4, 1, 1], [1, -3, 2], [5, 2, 1], [1, 4, -1]];
    qs.iter().map(|&q| quadratic_jcirc(1, &ProjPoint::real(q)).unwrap()).collect()
}

fn cubic_samples() -> Vec<Generator> {
    [[1, 1, 1], [2, 3, 1], [1, -2, 3]].iter().map(|&r| cubic_jcirc(&ProjPoint::real(r)).unwrap()).collect()
}

fn random_gauss(rng: &mut ChaCha8Rng) -> (i64, i64) {
    (rng.gen_range(-3..=3), rng.gen_range(-3..=3))
}

/// Standard quintics through `p1`, `p2` and a random non-real third point.
fn random_quintics(rng: &mut ChaCha8Rng, n: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    while out.len() < n {
        let q = [random_gauss(rng), random_gauss(rng), random_gauss(rng)];
        if q.iter().all(|&(a, b)| a == 0 && b == 0) {
            continue;
        }
        let q = ProjPoint::from_gauss(q);
        if q.is_real() {
            continue;
        }
        if let Ok(t) = standard_quintic(&[p1(), p2(), q]) {
            out.push(t);
        }
    }
    out
}

fn criterion_1() -> Report {
    let mut r = Report::default();
    for g in [sigma0(), sigma1_intro(), sigma1_jcirc()] {
        r.check(compose(g.map(), g.map()).is_identity(), format!("{:?} is not an involution", g.kind()));
        r.run(&format!("{:?} characteristic", g.kind()), characteristic(g.map()).map(|c| c == Characteristic { degree: 2, mults: vec![1, 1, 1] }));
    }
    for c in cubic_samples() {
        r.run("cubic characteristic", characteristic(c.map()).map(|c| c == Characteristic { degree: 3, mults: vec![2, 1, 1, 1, 1] }));
    }
    r.run("quintic characteristic", characteristic(quintic_example().map()).map(|c| c == Characteristic { degree: 5, mults: vec![2; 6] }));
    r
}

fn criterion_2() -> Report {
    let mut r = Report::default();
    r.check(pi_circ(&ProjPoint::real([1, 0, -1])).ok() == Some(P1Point::real(0, 1)), "pi_circ([1:0:-1])");
    r.check(pi_circ(&ProjPoint::real([1, 0, 1])).ok() == Some(P1Point::real(1, 0)), "pi_circ([1:0:1])");
    for v in [P1Point::real(0, 1), P1Point::real(1, 0), P1Point::real(1, 1)] {
        let c = pencil_member(&v);
        r.check(c.is_reducible(), format!("member {v:?} is irreducible"));
        r.check(pencil_value_of_conic(&c).ok() == Some(v.clone()), format!("value of member {v:?}"));
    }
    r.check(!pencil_member(&P1Point::new(gi(1, 1), gi(1, 0)).unwrap()).is_reducible(), "non-real member reducible");
    let pair = |a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint| -> HomPoly3<GaussRational> {
        (line_poly(&line_through(a, b)) * line_poly(&line_through(c, d))).normalized()
    };
    let (q1, q2) = (p1(), p2());
    let a = pair(&q1, &q2.conj(), &q1.conj(), &q2);
    let b = pair(&q1, &q2, &q1.conj(), &q2.conj());
    r.check(pencil_a().to_gauss().normalized() == a, "member [0:1] line pair");
    r.check(pencil_b().to_gauss().normalized() == b, "member [1:0] line pair");
    let xz = HomPoly3::var(0) * HomPoly3::var(2);
    r.check(pencil_member(&P1Point::real(1, 1)).poly().normalized() == xz, "member [1:1] is xz");
    r
}

fn criterion_3() -> Report {
    let mut r = Report::default();
    let mut low: Vec<Generator> = vec![sigma0(), sigma1_intro(), sigma1_jcirc(), linear_map(&swap_matrix()).unwrap()];
    low.extend(quadratic_samples());
    low.extend(cubic_samples());
    let q = quadratic_samples();
    let quartic = Generator::from_map(compose(q[0].map(), q[1].map()), Tag::Jcirc).unwrap();
    r.check(quartic.degree() <= 4, "quartic sample degree");
    low.push(quartic);
    for g in &low {
        r.run(&format!("phi of degree {} element", g.degree()), phi_word(&Word::of([g.clone()])).map(|v| v.is_zero()));
    }
    r.run("phi of [1:1:i] quintic", phi_circ(&quintic_example()).map(|v| v.to_json() == serde_json::json!(["9/25"])));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let quintics = random_quintics(&mut rng, 10);
    for t in &quintics {
        r.run("phi of a quintic and its inverse", (|| Ok(phi_circ(t)? == phi_circ(&t.inverse()?)?))());
    }
    let mut alphabet = vec![sigma0(), sigma1_jcirc(), linear_map(&int_matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]])).unwrap()];
    alphabet.extend(q.into_iter().take(3));
    alphabet.extend(quintics.into_iter().take(3));
    for i in 0..50 {
        let len = rng.gen_range(1..=6);
        let letters: Vec<Letter> = (0..len)
            .map(|_| {
                let l = Letter::new(alphabet[rng.gen_range(0..alphabet.len())].clone());
                if rng.gen_bool(0.5) { l.inverse() } else { l }
            })
            .collect();
        let w = Word::new(letters);
        r.run(&format!("phi(w w^-1) word {i}"), phi_word(&w.concat(&w.inverse())).map(|v| v.is_zero()));
    }
    r
}

fn criterion_4() -> Report {
    let mut r = Report::default();
    match shipped_corpus() {
        Ok(corpus) => {
            r.check(corpus.len() >= 20, format!("corpus has {} instances", corpus.len()));
            for kind in [RelKind::Rel1, RelKind::Rel2, RelKind::Rel3] {
                r.check(corpus.iter().any(|c| c.kind == kind), format!("no {kind:?} instance"));
            }
            for c in &corpus {
                r.run(&format!("{} holds", c.label), holds_in_group(c));
                r.run(&format!("{} respects phi", c.label), phi_respects(c));
            }
        }
        Err(e) => r.0.push(format!("corpus: {e}")),
    }
    let samples = quintic_points();
    r.check(samples.len() >= 10, "fewer than 10 re-assignment samples");
    for q in samples {
        r.run(&format!("key kept for {q}"), (|| {
            let alpha = cremona::generators::alpha_fixing_p1_sending(&q)?;
            let image = apply(alpha.map(), &p2())?;
            Ok(nu_key(&pi_circ(&image)?)? == nu_key(&pi_circ(&q)?)?)
        })());
        match reassignment_ratio(&q) {
            Ok(l) => r.check(l < rat(0, 1), format!("ratio for {q} is {l}, not negative")),
            Err(e) => r.0.push(format!("ratio for {q}: {e}")),
        }
    }
    r
}

fn criterion_5() -> Report {
    let mut r = Report::default();
    let t = quintic_example();
    let mut targets = Vec::new();
    for q in quadratic_samples().into_iter().take(3) {
        targets.push(Generator::from_map(compose(t.map(), q.map()), Tag::Jcirc).unwrap());
    }
    targets.extend(cubic_samples());
    for f in &targets {
        r.run(&format!("decomposition of degree {}", f.degree()), (|| {
            let w = decompose_jcirc(f)?;
            let recomposes = maps_equal(&w.evaluate()?, f.map());
            let degrees = w.0.iter().all(|l| [1, 2, 5].contains(&l.gen.degree()));
            Ok(recomposes && degrees && phi_word(&w)? == phi_circ(f)?)
        })());
    }
    for c in cubic_samples() {
        r.run("cubic splits into quadratics", decompose_cubic(&c).map(|(h, g)| {
            h.degree() == 2 && g.degree() == 2 && maps_equal(&compose(h.map(), g.map()), c.map())
        }));
    }
    r
}

fn criterion_6() -> Report {
    let mut r = Report::default();
    let zero = Rational::from_integer(0.into());
    for f in quadratic_samples() {
        let Some(m) = f.jcirc_action() else {
            r.0.push("quadratic without induced action".into());
            continue;
        };
        let diagonal = m[(0, 1)] == zero && m[(1, 0)] == zero;
        let positive = m[(0, 0)].clone() * m[(1, 1)].clone() > zero;
        r.check(diagonal && positive, format!("quadratic action {m:?} is not a positive scaling"));
        r.run("action matches the inverse's real base point", (|| {
            let s = f.inverse_base_points()?.iter().find(|a| a.point.is_real()).map(|a| a.point.proper().clone());
            let Some(s) = s else { return Ok(false) };
            Ok(P1Point::real(1, 1).apply(m)? == pi_circ(&s)?)
        })());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut perms: Vec<Generator> = cubic_samples();
    perms.push(quintic_example());
    perms.extend(random_quintics(&mut rng, 3));
    for f in perms {
        let ok = f.jcirc_action().is_some_and(|m| {
            let nonzero: Vec<Rational> = m.to_rows().into_iter().flatten().filter(|e| *e != zero).collect();
            is_permutation_up_to_scalar(m) && nonzero.iter().all(|e| e.clone() * nonzero[0].clone() > zero)
        });
        r.check(ok, format!("degree {} action is not a positive permutation", f.degree()));
    }
    r
}

fn poly(s: &str) -> UniPoly<Rational> {
    parse_uni(s, "t").unwrap()
}

fn entry(s: &str) -> RtEntry {
    RatFunc::from_poly(parse_uni(s, "t").unwrap())
}

fn criterion_7() -> Report {
    let mut r = Report::default();
    for p in ["1", "t+1", "t^2+1"] {
        let tp = poly("t") * poly(p);
        let v = RtVector::new(UniPoly::zero(), -tp.clone(), UniPoly::one());
        r.run(&format!("reflection norm for p = {p}"), reflection_norm_in(Form::Split, &v).map(|c| c == SpinorClass::of(&tp).unwrap()));
    }

    let tp = entry("t^3 + t");
    let (z, one) = (RtEntry::zero(), RtEntry::one());
    let m = Matrix::from_rows(vec![vec![z.clone(), entry("t^2 + 1")], vec![one.clone(), z.clone()]]);
    let expected = Matrix::from_rows(vec![
        vec![-one.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), -tp.clone()],
        vec![z.clone(), -(one.clone() / tp.clone()), z.clone()],
    ]);
    match pgl2_to_so(&m) {
        Ok(a) => {
            r.check(a == expected, "alpha(P) differs from the expected matrix");
            let fixed = vec![z, -tp, one];
            r.check(a.mul_vec(&fixed) == fixed, "alpha(P) does not fix (0,-tp,1)");
        }
        Err(e) => r.0.push(format!("alpha(P): {e}")),
    }

    let kappa = |s: &str| -> Result<Vec<Rational>> {
        Ok(theta_bar(&SpinorClass::of(&poly(s))?)?.iter().map(|k| k.kappa.clone()).collect())
    };
    r.run("kappa of t^2+1", kappa("t^2+1").map(|k| k == vec![rat(0, 1)]));
    r.run("kappa of t^2-t+1", kappa("t^2-t+1").map(|k| k == vec![rat(1, 4)]));

    // factors with roots a + bi in Q(i): t^2 - 2at + a^2 + b^2
    for (a, b) in [(0, 1), (1, 1), (-2, 3), (3, 1), (1, 2), (-1, 5)] {
        let text = format!("t^2 - {}*t + {}", 2 * a, a * a + b * b);
        r.run(&format!("spinor key matches nu_key for root {a}+{b}i"), (|| {
            let keys = theta_bar(&SpinorClass::of(&poly(&text))?)?;
            let geometric = nu_key(&P1Point::new(gi(a, b), gi(1, 0))?)?;
            Ok(keys.len() == 1 && keys[0].key() == geometric)
        })());
    }
    r
}

fn criterion_8() -> Report {
    let mut r = Report::default();
    let s = verify_stereographic();
    r.check(s.plane_round_trip, "stereographic round trip");
    r.check(s.image_on_quadric, "image off the quadric");
    let m = |rows: [[i64; 2]; 2]| -> Matrix<Rational> { Matrix::from_rows(rows.iter().map(|row| row.iter().map(|&v| rat(v, 1)).collect()).collect()) };
    for g in [F0Generator::Tau, F0Generator::Swap, F0Generator::Factors(m([[1, 1], [0, 1]]), m([[2, 0], [1, 1]]))] {
        let f = f0_conjugate(&g);
        r.check(f.degree() <= 3, format!("{g:?} conjugate has degree {}", f.degree()));
        r.run(&format!("{g:?} conjugate under phi"), f0_phi(&f).map(|v| v.is_zero()));
    }
    r
}

fn criterion_9() -> Report {
    let mut r = Report::default();
    let mut sample: Vec<Generator> = vec![sigma0(), sigma1_intro(), sigma1_jcirc()];
    sample.extend(quadratic_samples().into_iter().take(4));
    sample.push(quadratic_jcirc(2, &ProjPoint::real([1, 3, 2])).unwrap());
    sample.extend(cubic_samples());
    sample.push(quintic_example());
    for g in &sample {
        let groups = [(is_in_jstar(g.map()).is_some(), Subgroup::JStar), (is_in_jcirc(g.map()).is_some(), Subgroup::JCirc)];
        r.check(groups.iter().any(|(m, _)| *m), format!("{:?} in neither group", g.kind()));
        for (_, s) in groups.into_iter().filter(|(m, _)| *m) {
            r.run(&format!("{:?} witness in {s:?}", g.kind()), (|| {
                let l = LinearSystem::of_map(g.map())?;
                let w = noether_witness(g.map(), s, &l)?;
                let after = cremona::birmap::degree_after(g.map(), &l)?;
                Ok(w.holds() && w.strict == (after < l.degree as i64))
            })());
        }
    }
    r
}

fn criterion_10() -> Report {
    let mut r = Report::default();
    let grid = rational_grid(&rat(-2, 1), &rat(2, 1), 9);
    r.check(grid.len() == 81, "grid is not 9x9");
    for (rho, nu) in [(rat(0, 1), rat(1, 1)), (rat(-3, 5), rat(4, 5)), (rat(1, 2), rat(1, 3)), (rat(2, 1), rat(-1, 1)), (rat(-1, 3), rat(5, 2))] {
        match verify_q_positivity(&rho, &nu, &grid) {
            Ok(q) => r.check(q.passed(), format!("Q({rho}, {nu}) not strictly positive; zero at ({}, {})", fmt_rational(&q.vanishing_point.0), fmt_rational(&q.vanishing_point.1))),
            Err(e) => r.0.push(format!("Q({rho}, {nu}): {e}")),
        }
    }
    r
}

type Criterion = (&'static str, fn() -> Report);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("generator sanity", criterion_1),
        ("fibration constants", criterion_2),
        ("phi behaviour", criterion_3),
        ("relation corpus", criterion_4),
        ("conic-pencil group structure", criterion_5),
        ("induced P1 actions", criterion_6),
        ("spinor suite", criterion_7),
        ("cross-model identities", criterion_8),
        ("Noether witnesses", criterion_9),
        ("Q positivity", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let report = f();
        if report.0.is_empty() {
            println!("PASS {} {name}", i + 1);
        } else {
            failed += 1;
            println!("FAIL {} {name}", i + 1);
            for line in &report.0 {
                println!("    {line}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
