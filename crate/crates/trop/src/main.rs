//! `trop` — command-line front door for the supertropical matrix library.
//!
//! Matrix arguments accept four forms, tried in this order:
//!
//! * `-` reads the matrix from stdin;
//! * an existing file path reads the file;
//! * text starting with `{` parses as the JSON object
//!   `{"n": …, "rows": [[token, …], …]}`;
//! * anything else parses as inline text, with `;` accepted as a row
//!   separator (e.g. `"0 1;2 0v"`).
//!
//! Scalar tokens: `_` or `-inf` for `𝟘`, a rational literal (`3`, `-1`,
//! `5/2`) for a tangible value, a trailing `v` (`5v`) for a ghost.
//!
//! Exit codes: `0` success; `1` mathematical/domain/parse errors; `2`
//! internal verification failures and failed property runs. The JSON
//! emitted under `--json` is documented in `docs/cli-json.md`.

use std::fs;
use std::io::Read;
use std::path::Path;
use std::process::exit;

use clap::{Parser, Subcommand};
use serde_json::json;

use supertropical::classify::class_report;
use supertropical::determinant::{bid, per, per_assignment, ENUMERATION_BOUND};
use supertropical::elementary::{
    bridge, ed_factor, sns_witness_with_part, steinberg_normal_form, word_product, ElemWord,
};
use supertropical::matrix::MatrixRepr;
use supertropical::monoid::{conjugate, semigroup_membership};
use supertropical::nabla::{adj, nabla, nabla_allow_ghost, quasi_pack};
use supertropical::oracle::{property_run, registry, PropertyReport};
use supertropical::{Error, Matrix, TropElem};

#[derive(Parser)]
#[command(
    name = "trop",
    version,
    about = "Exact supertropical (max-plus with ghosts) matrix algebra",
    long_about = "Exact supertropical (max-plus with ghosts) matrix algebra.\n\n\
        Matrices are given as '-' (stdin), a file path, inline text with ';' row\n\
        separators, or a JSON object {\"n\": …, \"rows\": [[token, …], …]}.\n\
        Scalar tokens: '_' or '-inf' (zero), '3', '-1', '5/2' (tangible), '5v' (ghost)."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the permanent (the tropical determinant) of a matrix.
    Per {
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the bideterminant: the even/odd split of the permanent.
    Bid {
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the adjoint matrix (transposed minors).
    Adj {
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the quasi-inverse A^∇ = per(A)⁻¹·adj(A).
    Nabla {
        matrix: String,
        /// Apply ∇ twice (the ∇∇-closure).
        #[arg(long)]
        twice: bool,
        /// Accept a ghost permanent via the ν-inverse extension.
        #[arg(long)]
        allow_ghost: bool,
        #[arg(long)]
        json: bool,
    },
    /// Emit the full classification report for a matrix (always JSON).
    Classify {
        matrix: String,
        /// Compact single-line JSON instead of pretty-printed.
        #[arg(long)]
        json: bool,
    },
    /// Print the quasi-identities I^l, I^r, both cores, and reversibility.
    Quasi {
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Test membership of a candidate in the semigroups attached to a unit.
    Member {
        /// The matrix A whose quasi-identities define the semigroups.
        #[arg(long)]
        unit: String,
        /// The matrix B tested for membership.
        #[arg(long)]
        candidate: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the conjugate A^∇·B·A.
    Conj {
        a: String,
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Find a Gaussian generator that singularizes the definite part of a
    /// unit-permanent matrix.
    Sns {
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the Gaussian word carrying a matrix onto its ∇∇-closure.
    Ed {
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the four-piece identity E1·A·E2 = E3·B·E4 for two matrices.
    Bridge {
        a: String,
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Rewrite a word of Gaussian generators into lower·upper form when the
    /// rewriting relations allow it.
    Steinberg {
        /// Word input: '-' (stdin), a file path, or inline text with ';'
        /// separating generators (`T i j`, `D i a`, `G i j a`, 1-based).
        word: String,
        /// Matrix dimension; defaults to the smallest that fits the word.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Run registered properties from the seeded verification registry.
    Check {
        /// Run a single property by id.
        #[arg(long, conflicts_with = "all")]
        property: Option<String>,
        /// Run every registered property.
        #[arg(long)]
        all: bool,
        /// List registered property ids and exit.
        #[arg(long, conflicts_with_all = ["property", "all"])]
        list: bool,
        #[arg(long, default_value_t = 256)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    // Die quietly when the reader closes the pipe (`trop … | head`), the
    // way other line-oriented tools do, instead of panicking in println!.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            exit(match e {
                Error::Internal(_) => 2,
                _ => 1,
            });
        }
    }
}

/// Read a matrix argument: stdin, file, inline JSON, or inline text.
fn load_matrix(arg: &str) -> Result<Matrix, Error> {
    let text = load_text(arg)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let repr: MatrixRepr = serde_json::from_str(trimmed).map_err(|e| Error::Parse {
            line: e.line(),
            col: e.column().max(1),
            msg: format!("invalid matrix JSON: {e}"),
        })?;
        Matrix::try_from(repr).map_err(|msg| Error::Parse { line: 1, col: 1, msg })
    } else {
        Matrix::parse_text(&text)
    }
}

fn load_text(arg: &str) -> Result<String, Error> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Domain(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else if Path::new(arg).is_file() {
        fs::read_to_string(arg).map_err(|e| Error::Domain(format!("cannot read {arg}: {e}")))
    } else {
        Ok(arg.replace(';', "\n"))
    }
}

fn matrix_json(m: &Matrix) -> serde_json::Value {
    serde_json::to_value(MatrixRepr::from(m.clone())).expect("matrix serialization")
}

fn word_lines(w: &ElemWord) -> Vec<String> {
    w.gens().iter().map(|g| g.to_string()).collect()
}

fn print_word(w: &ElemWord) {
    if w.is_empty() {
        println!("(empty word)");
    } else {
        println!("{w}");
    }
}

/// The permanent by whichever exact method the size admits.
fn per_sized(m: &Matrix) -> Result<TropElem, Error> {
    if m.n() <= ENUMERATION_BOUND {
        per(m)
    } else {
        per_assignment(m)
    }
}

fn run(cmd: Cmd) -> Result<i32, Error> {
    match cmd {
        Cmd::Per { matrix, json } => {
            let m = load_matrix(&matrix)?;
            let p = per_sized(&m)?;
            if json {
                println!("{}", json!({ "per": p }));
            } else {
                println!("{p}");
            }
        }
        Cmd::Bid { matrix, json } => {
            let m = load_matrix(&matrix)?;
            let b = bid(&m)?;
            if json {
                println!("{}", serde_json::to_string(&b).expect("report serialization"));
            } else {
                println!("per_plus: {}", b.per_plus);
                println!("per_minus: {}", b.per_minus);
                println!("per: {}", b.per);
            }
        }
        Cmd::Adj { matrix, json } => {
            let m = load_matrix(&matrix)?;
            let a = adj(&m)?;
            if json {
                println!("{}", matrix_json(&a));
            } else {
                println!("{a}");
            }
        }
        Cmd::Nabla { matrix, twice, allow_ghost, json } => {
            let m = load_matrix(&matrix)?;
            let apply = |x: &Matrix| if allow_ghost { nabla_allow_ghost(x) } else { nabla(x) };
            let mut out = apply(&m)?;
            if twice {
                out = apply(&out)?;
            }
            if json {
                println!("{}", matrix_json(&out));
            } else {
                println!("{out}");
            }
        }
        Cmd::Classify { matrix, json } => {
            let m = load_matrix(&matrix)?;
            let report = class_report(&m)?;
            let out = if json {
                serde_json::to_string(&report)
            } else {
                serde_json::to_string_pretty(&report)
            };
            println!("{}", out.expect("report serialization"));
        }
        Cmd::Quasi { matrix, json } => {
            let m = load_matrix(&matrix)?;
            let pack = quasi_pack(&m)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "left": matrix_json(&pack.left),
                        "right": matrix_json(&pack.right),
                        "core": matrix_json(&pack.core),
                        "core_tilde": matrix_json(&pack.core_tilde),
                        "reversible": pack.reversible,
                    })
                );
            } else {
                println!("left:\n{}\n", pack.left);
                println!("right:\n{}\n", pack.right);
                println!("core:\n{}\n", pack.core);
                println!("core_tilde:\n{}\n", pack.core_tilde);
                println!("reversible: {}", pack.reversible);
            }
        }
        Cmd::Member { unit, candidate, json } => {
            let a = load_matrix(&unit)?;
            let b = load_matrix(&candidate)?;
            let (left, right, both) = semigroup_membership(&a, &b)?;
            if json {
                println!("{}", json!({ "left": left, "right": right, "both": both }));
            } else {
                println!("left: {left}");
                println!("right: {right}");
                println!("both: {both}");
            }
        }
        Cmd::Conj { a, b, json } => {
            let a = load_matrix(&a)?;
            let b = load_matrix(&b)?;
            let c = conjugate(&a, &b)?;
            if json {
                println!("{}", matrix_json(&c));
            } else {
                println!("{c}");
            }
        }
        Cmd::Sns { matrix, json } => {
            let m = load_matrix(&matrix)?;
            let (gen, _, part) = sns_witness_with_part(&m)?;
            let flipped = gen.to_matrix(m.n())?.try_mul(&part)?;
            let p = per(&flipped)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "witness": gen.to_string(),
                        "definite_part": matrix_json(&part),
                        "flipped_per": p,
                    })
                );
            } else {
                println!("witness: {gen}");
                println!("definite part:\n{part}");
                println!("flipped per: {p}");
            }
        }
        Cmd::Ed { matrix, json } => {
            let m = load_matrix(&matrix)?;
            let word = ed_factor(&m)?;
            if json {
                println!("{}", json!({ "word": word_lines(&word) }));
            } else {
                print_word(&word);
            }
        }
        Cmd::Bridge { a, b, json } => {
            let a = load_matrix(&a)?;
            let b = load_matrix(&b)?;
            let br = bridge(&a, &b)?;
            if json {
                let side = |s: &supertropical::elementary::BridgeSide| {
                    json!({
                        "matrix": matrix_json(&s.matrix),
                        "word": s.word.as_ref().map(word_lines),
                        "fully_elementary": s.fully_elementary,
                    })
                };
                println!(
                    "{}",
                    json!({
                        "e1": word_lines(&br.e1),
                        "e2": side(&br.e2),
                        "e3": side(&br.e3),
                        "e4": word_lines(&br.e4),
                        "common": matrix_json(&br.common),
                    })
                );
            } else {
                println!("e1:");
                print_word(&br.e1);
                for (name, side) in [("e2", &br.e2), ("e3", &br.e3)] {
                    println!("\n{name}:\n{}", side.matrix);
                    match &side.word {
                        Some(w) => {
                            println!("{name} word:");
                            print_word(w);
                        }
                        None => println!("{name} word: (none)"),
                    }
                }
                println!("\ne4:");
                print_word(&br.e4);
                println!("\ncommon:\n{}", br.common);
            }
        }
        Cmd::Steinberg { word, n, json } => {
            let text = load_text(&word)?;
            let w = ElemWord::parse_text(&text)?;
            let dim = match n {
                Some(n) if n >= w.min_dimension() => n,
                Some(n) => {
                    return Err(Error::Shape(format!(
                        "--n {n} is smaller than the word's minimum dimension {}",
                        w.min_dimension()
                    )))
                }
                None => w.min_dimension(),
            };
            match steinberg_normal_form(&w, dim)? {
                Some((lower, upper)) => {
                    if json {
                        println!(
                            "{}",
                            json!({
                                "reducible": true,
                                "n": dim,
                                "lower": word_lines(&lower),
                                "upper": word_lines(&upper),
                            })
                        );
                    } else {
                        println!("reducible: true");
                        println!("lower:");
                        print_word(&lower);
                        println!("upper:");
                        print_word(&upper);
                    }
                    // The split is re-verified here so the CLI never reports
                    // an unchecked rewriting.
                    let recomposed = word_product(&lower, dim)?.try_mul(&word_product(&upper, dim)?)?;
                    if recomposed != word_product(&w, dim)? {
                        return Err(Error::Internal(
                            "lower·upper split changed the word's product".to_string(),
                        ));
                    }
                }
                None => {
                    if json {
                        println!("{}", json!({ "reducible": false, "n": dim }));
                    } else {
                        println!("reducible: false");
                    }
                }
            }
        }
        Cmd::Check { property, all, list, trials, seed, json } => {
            if list {
                for spec in registry() {
                    println!("{:28} [{}] {}", spec.id, spec.module, spec.summary);
                }
                return Ok(0);
            }
            let reports: Vec<PropertyReport> = if all {
                registry()
                    .iter()
                    .map(|spec| property_run(spec.id, trials, seed))
                    .collect::<Result<_, _>>()?
            } else if let Some(id) = property {
                vec![property_run(&id, trials, seed)?]
            } else {
                return Err(Error::Domain(
                    "check needs --property <id>, --all, or --list".to_string(),
                ));
            };
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if json {
                println!("{}", serde_json::to_string(&reports).expect("report serialization"));
            } else {
                for r in &reports {
                    if r.passed() {
                        println!("ok   {} ({} trials)", r.id, r.trials);
                    } else {
                        let f = &r.failures[0];
                        println!(
                            "FAIL {} ({}/{} trials failed; first at trial {}, replay seed {}):\n     {}",
                            r.id,
                            r.failures.len(),
                            r.trials,
                            f.trial,
                            f.seed,
                            f.detail.replace('\n', "\n     ")
                        );
                    }
                }
                if failed > 0 {
                    println!("{failed} propert{} failed", if failed == 1 { "y" } else { "ies" });
                }
            }
            if failed > 0 {
                return Ok(2);
            }
        }
    }
    Ok(0)
}
