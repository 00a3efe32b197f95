use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cremona::abelianisation::{decompose_jcirc, phi_word};
use cremona::birmap::{base_points, characteristic, compose, invert, BirMap, Components};
use cremona::exactalg::parse::{parse_map, parse_uni};
use cremona::exactalg::HomPoly3;
use cremona::generators::{cubic_jcirc, is_in_jcirc, is_in_jstar, quadratic_jcirc, standard_quintic, Generator, Letter, Tag, Word};
use cremona::plane::ProjPoint;
use cremona::spinor::{product_norm_in, spinor_to_abel, theta_bar, Form, RtVector};
use cremona::{Error, Rational};

mod suites;

#[derive(Parser)]
#[command(name = "cremona", version, about = "Exact computations in the real plane Cremona group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output is always JSON; accepted for compatibility.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Degree of a map.
    Degree {
        #[arg(long)]
        map: String,
    },
    /// `f o g`.
    Compose {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Inverse of a map, or of the word in a file.
    Inverse {
        #[arg(long, conflicts_with = "word", required_unless_present = "word")]
        map: Option<String>,
        #[arg(long)]
        word: Option<PathBuf>,
    },
    Basepoints {
        #[arg(long)]
        map: String,
    },
    Characteristic {
        #[arg(long)]
        map: String,
    },
    /// Membership in one of the fibration groups, with the induced action.
    Member {
        #[arg(value_enum)]
        group: Group,
        #[arg(long)]
        map: String,
    },
    /// The abelianisation of a word read from a JSON file.
    Phi {
        #[arg(long)]
        word: PathBuf,
    },
    /// Factor a map of the conic-pencil group into generators.
    Decompose {
        #[arg(long)]
        map: String,
    },
    Quadratic {
        #[arg(long, default_value_t = 1)]
        i: u8,
        #[arg(long)]
        q: String,
    },
    Cubic {
        #[arg(long)]
        r: String,
    },
    Quintic {
        /// Three points; pass the flag three times.
        #[arg(long, num_args = 1)]
        q: Vec<String>,
    },
    /// Spinor norm of a product of reflections given as a JSON list of
    /// `[a, b, c]` polynomial triples in `t`.
    Spinor {
        #[arg(long)]
        vectors: String,
        #[arg(long, value_enum, default_value_t = FormArg::SumOfSquares)]
        form: FormArg,
    },
    Verify {
        #[arg(long, value_enum, default_value_t = suites::Suite::All)]
        suite: suites::Suite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    Jstar,
    Jcirc,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    SumOfSquares,
    Split,
}

/// Failure modes, mapped onto exit codes.
enum Failure {
    Parse(String),
    Domain(Error),
    Unverified(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Parse(m),
            e => Failure::Domain(e),
        }
    }
}

type Outcome = Result<Value, Failure>;

pub(crate) fn map_text(c: &Components) -> String {
    c.iter().map(HomPoly3::to_text).collect::<Vec<_>>().join(" : ")
}

fn map_json(f: &BirMap) -> Value {
    json!({ "map": map_text(f.forward()), "degree": f.degree(), "inverse": f.inverse_components().map(map_text) })
}

fn read_map(src: &str) -> Result<BirMap, Failure> {
    let c = parse_map(src).map_err(|e| Failure::Parse(e.0))?;
    Ok(BirMap::new(c, None, Vec::new())?)
}

fn read_point(src: &str) -> Result<ProjPoint, Failure> {
    Ok(ProjPoint::parse(src)?)
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn matrix_json(m: &cremona::exactalg::Matrix<Rational>) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(cremona::exactalg::scalar::fmt_rational).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn generator_json(g: &Generator) -> Value {
    let mut v = map_json(g.map());
    v["tag"] = json!(g.tag());
    v["letter"] = Letter::new(g.clone()).to_json();
    v
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Degree { map } => Ok(json!({ "degree": read_map(&map)?.degree() })),
        Command::Compose { f, g } => Ok(map_json(&compose(&read_map(&f)?, &read_map(&g)?))),
        Command::Inverse { map: Some(m), .. } => Ok(map_json(&invert(&read_map(&m)?)?.inverse()?)),
        Command::Inverse { word: Some(path), .. } => Ok(map_json(&Word::from_json(&read_json(&path)?)?.inverse().evaluate()?)),
        Command::Inverse { .. } => Err(Failure::Parse("pass --map or --word".into())),
        Command::Basepoints { map } => {
            let pts = base_points(&read_map(&map)?)?;
            let list: Vec<Value> = pts.iter().map(|a| json!({ "point": a.point.to_string(), "mult": a.mult })).collect();
            Ok(json!({ "base_points": list }))
        }
        Command::Characteristic { map } => {
            let c = characteristic(&read_map(&map)?)?;
            Ok(json!({ "degree": c.degree, "mults": c.mults, "text": c.to_string(), "noether": c.satisfies_noether() }))
        }
        Command::Member { group, map } => {
            let f = read_map(&map)?;
            let action = match group {
                Group::Jstar => is_in_jstar(&f),
                Group::Jcirc => is_in_jcirc(&f),
            };
            Ok(json!({ "member": action.is_some(), "action": action.as_ref().map(matrix_json) }))
        }
        Command::Phi { word } => {
            let w = Word::from_json(&read_json(&word)?)?;
            Ok(json!({ "support": phi_word(&w)?.to_json() }))
        }
        Command::Decompose { map } => {
            let f = Generator::from_map(invert(&read_map(&map)?)?, Tag::Jcirc)?;
            let w = decompose_jcirc(&f)?;
            let degrees: Vec<u32> = w.0.iter().map(|l| l.gen.degree()).collect();
            Ok(json!({ "word": w.to_json(), "degrees": degrees }))
        }
        Command::Quadratic { i, q } => Ok(generator_json(&quadratic_jcirc(i, &read_point(&q)?)?)),
        Command::Cubic { r } => Ok(generator_json(&cubic_jcirc(&read_point(&r)?)?)),
        Command::Quintic { q } => {
            let pts = q.iter().map(|s| read_point(s)).collect::<Result<Vec<_>, _>>()?;
            let pts: [ProjPoint; 3] = pts.try_into().map_err(|_| Failure::Parse("a quintic needs exactly three --q points".into()))?;
            Ok(generator_json(&standard_quintic(&pts)?))
        }
        Command::Spinor { vectors, form } => spinor(&vectors, form),
        Command::Verify { suite } => {
            let report = suites::run(suite);
            if report["passed"] == json!(true) {
                Ok(report)
            } else {
                Err(Failure::Unverified(report))
            }
        }
    }
}

fn spinor(src: &str, form: FormArg) -> Outcome {
    let parsed: Vec<Vec<String>> = serde_json::from_str(src).map_err(|e| Failure::Parse(format!("vectors: {e}")))?;
    let poly = |s: &String| parse_uni(s, "t").map_err(|e| Failure::Parse(e.0));
    let vs = parsed
        .iter()
        .map(|v| match v.as_slice() {
            [a, b, c] => Ok(RtVector::new(poly(a)?, poly(b)?, poly(c)?)),
            _ => Err(Failure::Parse("each vector has three entries".into())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let form = match form {
        FormArg::SumOfSquares => Form::SumOfSquares,
        FormArg::Split => Form::Split,
    };
    let class = product_norm_in(form, &vs)?;
    let keys = theta_bar(&class)?;
    let list: Vec<Value> = keys.iter().map(|k| json!({ "factor": k.factor.to_text("t"), "kappa": k.key().to_string() })).collect();
    Ok(json!({ "class": class.to_json(), "keys": list, "support": spinor_to_abel(&keys).to_json() }))
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(v) => {
            print(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Parse(m)) => {
            print(&json!({ "error": { "code": "Parse", "message": m } }));
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            print(&json!({ "error": { "code": e.code(), "message": e.to_string() } }));
            ExitCode::from(2)
        }
        Err(Failure::Unverified(report)) => {
            print(&report);
            ExitCode::from(3)
        }
    }
}
