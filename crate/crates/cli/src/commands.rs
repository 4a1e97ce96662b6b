use std::fmt::Write;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use vgit_core::git::DEFAULT_ENUMERATION_CAP;
use vgit_core::{
    ne_cone, witness_negative, Character, KleimanVerifier, TestSetPolicy, ToricGit,
    VerificationReport,
};

use crate::problem::ProblemFile;
use crate::report::{self, cone_plain};
use crate::{Cli, CliError, Command, EXIT_FALSE, EXIT_VERIFY_FAILED};

/// What the process prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    pub fn stdout(text: String, code: i32) -> Self {
        Outcome {
            stdout: text,
            stderr: String::new(),
            code,
        }
    }

    pub fn stderr(text: String, code: i32) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: text,
            code,
        }
    }

    pub fn error(e: &CliError) -> Self {
        Outcome::stderr(format!("error: {e}\n"), e.exit_code())
    }
}

struct Done {
    result: Value,
    plain: String,
    code: i32,
    message: String,
}

impl Done {
    fn ok(result: Value, plain: String) -> Self {
        Done {
            result,
            plain,
            code: 0,
            message: "ok".into(),
        }
    }
}

fn command_echo(cmd: &Command) -> (&'static str, Vec<String>) {
    match cmd {
        Command::Fan { svg, highlight } => {
            let mut args = Vec::new();
            if let Some(p) = svg {
                args.push(format!("--svg={}", p.display()));
            }
            if let Some(h) = highlight {
                args.push(format!("--highlight={h}"));
            }
            ("fan", args)
        }
        Command::Ss { name } => ("ss", vec![name.clone()]),
        Command::Chamber { name } => ("chamber", vec![name.clone()]),
        Command::Equiv { a, b } => ("equiv", vec![a.clone(), b.clone()]),
        Command::Stack { name } => ("stack", vec![name.clone()]),
        Command::Ne { name } => ("ne", vec![name.clone()]),
        Command::Witness { theta, kappa } => ("witness", vec![theta.clone(), kappa.clone()]),
        Command::Verify { name, samples } => (
            "verify",
            name.iter()
                .cloned()
                .chain([format!("--samples={samples}")])
                .collect(),
        ),
        Command::Lift { degree, out } => {
            let mut args = vec![format!("--degree={degree}")];
            if let Some(p) = out {
                args.push(format!("--out={}", p.display()));
            }
            ("lift", args)
        }
    }
}

/// Runs a parsed command against a validated problem. `raw` is the input
/// as read, for the digest.
pub fn run(cli: &Cli, problem: &ProblemFile, raw: &[u8]) -> Outcome {
    let cap = cli
        .cap
        .or(problem.options.cap)
        .unwrap_or(DEFAULT_ENUMERATION_CAP);
    let seed = cli.seed.or(problem.options.seed);
    let git = ToricGit::with_cap(problem.charge(), cap);

    let done = match dispatch(&cli.command, problem, &git, seed) {
        Ok(d) => d,
        Err(e) => return Outcome::error(&e),
    };
    if cli.plain {
        return Outcome::stdout(done.plain, done.code);
    }
    let (name, args) = command_echo(&cli.command);
    let doc = json!({
        "command": { "name": name, "args": args, "cap": cap, "seed": seed },
        "input_sha256": hex::encode(Sha256::digest(raw)),
        "result": done.result,
        "status": { "exit_code": done.code, "message": done.message },
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    text.push('\n');
    Outcome::stdout(text, done.code)
}

fn dispatch(
    cmd: &Command,
    problem: &ProblemFile,
    git: &ToricGit,
    seed: Option<u64>,
) -> Result<Done, CliError> {
    match cmd {
        Command::Fan { svg, highlight } => fan(problem, git, svg.as_deref(), highlight.as_deref()),
        Command::Ss { name } => {
            let theta = problem.character(name)?;
            let effective = git.is_effective(&theta)?;
            let fam = git.semistable_supports(&theta)?;
            let plain = if effective {
                format!("{name} {theta}: minimal semistable supports {fam}\n")
            } else {
                format!("{name} {theta}: not effective, no semistable points\n")
            };
            Ok(Done::ok(
                json!({
                    "character": report::character(&theta),
                    "effective": effective,
                    "minimal_semistable_supports": report::family(&fam),
                }),
                plain,
            ))
        }
        Command::Chamber { name } => {
            let theta = problem.character(name)?;
            let c = git.c_cone(&theta)?;
            let class = if c.is_origin() {
                "origin"
            } else if c.dimension() == git.effective_cone().dimension() {
                "chamber"
            } else {
                "wall"
            };
            Ok(Done::ok(
                json!({ "character": report::character(&theta), "class": class, "c_cone": report::cone(&c) }),
                format!("{name} {theta}: {class}\nC_V: {}\n", cone_plain(&c)),
            ))
        }
        Command::Equiv { a, b } => {
            let (ta, tb) = (problem.character(a)?, problem.character(b)?);
            let eq = git.git_equivalent(&ta, &tb)?;
            let verdict = if eq { "equivalent" } else { "not equivalent" };
            Ok(Done {
                result: json!({ "a": report::character(&ta), "b": report::character(&tb), "equivalent": eq }),
                plain: format!("{verdict}\n"),
                code: if eq { 0 } else { EXIT_FALSE },
                message: verdict.into(),
            })
        }
        Command::Stack { name } => {
            let theta = problem.character(name)?;
            let census = git.stack_census(&theta)?;
            let mut plain = format!(
                "quotient dimension {}\nsupport\tcodim\tstabilizer\n",
                census.quotient_dim
            );
            let strata: Vec<Value> = census
                .strata
                .iter()
                .map(|s| {
                    let _ = writeln!(plain, "{}\t{}\t{}", s.support, s.codim, s.stabilizer);
                    json!({
                        "support": report::support(s.support),
                        "codim": s.codim,
                        "stabilizer": report::stabilizer(&s.stabilizer),
                    })
                })
                .collect();
            Ok(Done::ok(
                json!({
                    "character": report::character(&theta),
                    "quotient_dim": census.quotient_dim,
                    "strata": strata,
                    "nontrivial_strata": census.nontrivial().count(),
                }),
                plain,
            ))
        }
        Command::Ne { name } => {
            let theta = problem.character(name)?;
            let ne = ne_cone(git, &theta)?;
            Ok(Done::ok(
                json!({
                    "character": report::character(&theta),
                    "ne_cone": report::cone(&ne),
                    "dual": report::cone(&ne.dual()),
                }),
                format!(
                    "NE: {}\ndual: {}\n",
                    cone_plain(&ne),
                    cone_plain(&ne.dual())
                ),
            ))
        }
        Command::Witness { theta, kappa } => {
            let (t, k) = (problem.character(theta)?, problem.character(kappa)?);
            let w = witness_negative(git, &t, &k)?;
            let plain = match &w {
                Some(qm) => format!(
                    "lambda {} on support {}: degree {}\n",
                    qm.lambda,
                    qm.support,
                    qm.degree(&k)
                ),
                None => format!("no witness: {kappa} lies in C_V({theta})\n"),
            };
            Ok(Done::ok(
                json!({
                    "theta": report::character(&t),
                    "kappa": report::character(&k),
                    "witness": w.as_ref().map_or(Value::Null, |qm| report::datum(qm, &k)),
                }),
                plain,
            ))
        }
        Command::Verify { name, samples } => {
            let policy = seed.map_or_else(TestSetPolicy::default, |s| {
                TestSetPolicy::with_random(s, *samples)
            });
            verify(problem, git, name.as_deref(), policy)
        }
        Command::Lift { degree, out } => {
            let lifted = problem.lifted(*degree);
            let text = lifted.to_toml();
            if let Some(path) = out {
                std::fs::write(path, &text)
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(Done::ok(
                json!({
                    "degree": degree,
                    "charge_matrix": lifted.charge_matrix,
                    "characters": lifted.characters,
                    "problem": text,
                }),
                text,
            ))
        }
    }
}

fn fan(
    problem: &ProblemFile,
    git: &ToricGit,
    svg: Option<&std::path::Path>,
    highlight: Option<&str>,
) -> Result<Done, CliError> {
    let fan = git.git_fan()?;
    if let Some(path) = svg {
        let mark = highlight.map(|h| problem.character(h)).transpose()?;
        let doc = crate::render_fan_svg(&fan, mark.as_ref())?;
        std::fs::write(path, doc)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut plain = String::new();
    let _ = writeln!(
        plain,
        "effective cone: {}",
        cone_plain(git.effective_cone())
    );
    for (i, c) in fan.chambers.iter().enumerate() {
        let _ = writeln!(
            plain,
            "chamber {}: {} | ss {}",
            i + 1,
            cone_plain(&c.cone),
            c.supports
        );
    }
    for (i, w) in fan.walls.iter().enumerate() {
        let _ = writeln!(
            plain,
            "wall {}: {} | ss {}",
            i + 1,
            cone_plain(&w.cone),
            w.supports
        );
    }
    let adjacent: Vec<[usize; 2]> = fan
        .adjacent_chambers()?
        .into_iter()
        .map(|(a, b)| [a + 1, b + 1])
        .collect();
    Ok(Done::ok(
        json!({
            "effective_cone": report::cone(git.effective_cone()),
            "chambers": fan.chambers.iter().map(report::fan_cone).collect::<Vec<_>>(),
            "walls": fan.walls.iter().map(report::fan_cone).collect::<Vec<_>>(),
            "origin": report::fan_cone(&fan.origin),
            "adjacent_chambers": adjacent,
        }),
        plain,
    ))
}

fn verify(
    problem: &ProblemFile,
    git: &ToricGit,
    name: Option<&str>,
    policy: TestSetPolicy,
) -> Result<Done, CliError> {
    let targets: Vec<(String, Character)> = match name {
        Some(n) => {
            let theta = problem.character(n)?;
            git.is_effective(&theta)?
                .then_some(())
                .ok_or_else(|| vgit_core::Error::NotEffective(theta.to_string()))?;
            vec![(n.to_string(), theta)]
        }
        None => Vec::new(),
    };
    let verifier = KleimanVerifier::new(git)?;
    let targets = if name.is_some() {
        targets
    } else {
        let fan = verifier.fan();
        let mut t: Vec<(String, Character)> = Vec::new();
        t.extend(
            fan.chambers
                .iter()
                .enumerate()
                .map(|(i, c)| (format!("chamber {}", i + 1), c.representative.clone())),
        );
        t.extend(
            fan.walls
                .iter()
                .enumerate()
                .map(|(i, c)| (format!("wall {}", i + 1), c.representative.clone())),
        );
        if !fan.chambers.iter().any(|c| c.cone.is_origin()) {
            t.push(("origin".into(), fan.origin.representative.clone()));
        }
        t
    };

    let mut reports = Vec::new();
    let mut plain = String::new();
    let mut all_passed = true;
    for (label, theta) in &targets {
        let r = verifier.verify(theta, policy)?;
        all_passed &= r.passed();
        let _ = writeln!(
            plain,
            "{} {label} {theta}: C_V = {} ; NE^dual = {} ; {} test characters, {} failures",
            if r.passed() { "PASS" } else { "FAIL" },
            cone_plain(&r.c_cone),
            cone_plain(&r.ne_dual),
            r.points.len(),
            r.failures().count()
        );
        reports.push(verification_json(label, &r));
    }
    Ok(Done {
        result: json!({ "passed": all_passed, "reports": reports }),
        plain,
        code: if all_passed { 0 } else { EXIT_VERIFY_FAILED },
        message: if all_passed {
            "PASS".into()
        } else {
            "FAIL".into()
        },
    })
}

fn verification_json(label: &str, r: &VerificationReport) -> Value {
    let points: Vec<Value> = r
        .points
        .iter()
        .map(|p| {
            json!({
                "character": report::character(&p.character),
                "git_equivalent": p.git_equivalent,
                "in_relint_ne_dual": p.in_relint_ne_dual,
                "in_c_cone": p.in_c_cone,
                "witness": p.witness.as_ref().map_or(Value::Null, |qm| report::datum(qm, &p.character)),
                "passed": p.passed(),
            })
        })
        .collect();
    json!({
        "label": label,
        "theta": report::character(&r.theta),
        "c_cone": report::cone(&r.c_cone),
        "ne_cone": report::cone(&r.ne_cone),
        "ne_dual": report::cone(&r.ne_dual),
        "duality_holds": r.duality_holds,
        "passed": r.passed(),
        "failures": r.failures().count(),
        "points": points,
    })
}
