//! Command-line front end. Every command prints one JSON object to
//! standard output by default (`--tsv` switches table commands to rows);
//! output is byte-identical across runs of the same invocation.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 hypothesis violation
//! (HypothesisFailed or a non-restricted weight), 3 Unknown outcome under
//! `--strict`, 4 self-test failure.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;

use ree_f4::characters::{
    filtration_sections, gamma_set, tensor, weyl_character, weyl_dim, Character, CharacterError,
    GAMMA_COUNT,
};
use ree_f4::engine::{Engine, EngineError, Outcome, Verdict};
use ree_f4::isogeny::{restricted_count, Isogeny, IsogenyError, TauDigits};
use ree_f4::lattice::{RootDatum, Weight};
use ree_f4::selftest;

fn parse_weight(s: &str) -> Result<Weight, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_digits(s: &str) -> Result<TauDigits, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Parser)]
#[command(name = "ree-f4", version, about = "Exact weight-lattice combinatorics for F4 under the characteristic-2 special isogeny, with certified extension verdicts")]
struct Cli {
    /// Emit JSON (the default output form).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// The truncation set Gamma in its canonical dominance-refining order.
    Gamma {
        /// Print only the cardinality.
        #[arg(long)]
        count: bool,
        /// One weight per row instead of JSON.
        #[arg(long)]
        tsv: bool,
    },
    /// The sigma-restricted box X_sigma at level r.
    Restricted {
        #[arg(long)]
        r: u32,
        /// Print only the cardinality 4^r.
        #[arg(long)]
        count: bool,
        /// List the members (subject to --cap).
        #[arg(long)]
        list: bool,
        /// Enumeration cap for --list.
        #[arg(long, default_value_t = 1 << 20)]
        cap: u64,
    },
    /// The tau-adic digit expansion of a restricted weight.
    Digits {
        #[arg(long)]
        r: u32,
        #[arg(long, value_parser = parse_weight)]
        weight: Weight,
    },
    /// Reassemble a weight from a digit string d0;d1;...;d(r-1).
    Assemble {
        #[arg(long, value_parser = parse_digits)]
        digits: TauDigits,
    },
    /// The digit-rotation operator lambda -> lambda-tilde(n).
    Tilde {
        #[arg(long)]
        r: u32,
        #[arg(long, value_parser = parse_weight)]
        weight: Weight,
        #[arg(long)]
        n: i64,
    },
    /// Steinberg splitting lambda = lambda0 + 2^t lambda1.
    Split {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, value_parser = parse_weight)]
        weight: Weight,
    },
    /// Weyl character: dominant weight multiplicities and dimension.
    Character {
        #[arg(long, value_parser = parse_weight)]
        weight: Weight,
        /// Rows "c1,c2,c3,c4 TAB multiplicity" in lexicographic order.
        #[arg(long)]
        tsv: bool,
    },
    /// Weyl dimension by the product formula.
    Dim {
        #[arg(long, value_parser = parse_weight)]
        weight: Weight,
    },
    /// Product of two Weyl characters as a character table.
    Tensor {
        #[arg(long, value_parser = parse_weight)]
        lambda: Weight,
        #[arg(long, value_parser = parse_weight)]
        mu: Weight,
        #[arg(long)]
        tsv: bool,
    },
    /// The filtration sections of the truncated induction module.
    Sections {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        tsv: bool,
    },
    /// Trivial-structure certificate for the fixed-point Hom space.
    CheckLemma33 {
        #[arg(long)]
        r: u32,
        #[arg(long, value_parser = parse_weight)]
        lambda: Weight,
        #[arg(long, value_parser = parse_weight)]
        mu: Weight,
        #[arg(long, value_parser = parse_weight)]
        nu: Weight,
    },
    /// Audit the inequality chain behind the remainder-term bound.
    AuditProp34 {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        t: u32,
    },
    /// Self-extension verdict for a restricted weight.
    VerdictSelfext {
        #[arg(long)]
        r: u32,
        #[arg(long, value_parser = parse_weight)]
        weight: Weight,
        /// Exit 3 instead of 0 on an Unknown outcome.
        #[arg(long)]
        strict: bool,
    },
    /// Rotation reduction for a pair of restricted weights.
    VerdictPair {
        #[arg(long)]
        r: u32,
        #[arg(long, value_parser = parse_weight)]
        lambda: Weight,
        #[arg(long, value_parser = parse_weight)]
        mu: Weight,
        #[arg(long)]
        strict: bool,
    },
    /// Finite-to-algebraic comparison verdict at split level t.
    VerdictCor35 {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, value_parser = parse_weight)]
        lambda: Weight,
        #[arg(long, value_parser = parse_weight)]
        mu: Weight,
        #[arg(long)]
        strict: bool,
    },
    /// The remainder-term summands and their vanishing status.
    Summands {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, value_parser = parse_weight)]
        lambda: Weight,
        #[arg(long, value_parser = parse_weight)]
        mu: Weight,
    },
    /// Linkage-principle vanishing certificate for a pair of weights.
    Linkage {
        #[arg(long, value_parser = parse_weight)]
        lambda: Weight,
        #[arg(long, value_parser = parse_weight)]
        mu: Weight,
    },
    /// Run the startup invariant battery.
    Selftest {
        /// Negative-control hook: run against a wrong-orientation isogeny.
        #[arg(long, hide = true)]
        corrupt_tau: bool,
    },
}

/// All stdout goes through here: a closed pipe (`ree-f4 gamma | head`) is a
/// normal way to stop reading, so it ends the process quietly instead of
/// panicking.
fn emit(text: impl std::fmt::Display) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(err) = writeln!(out, "{text}") {
        if err.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("stdout write failed: {err}");
    }
}

fn print_out<T: serde::Serialize>(t: &T) {
    emit(serde_json::to_string_pretty(t).expect("serializable output"));
}

fn inputs_map(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Uniform error envelope: same shape as a verdict, exit code 2.
fn fail_envelope(op: &str, pairs: &[(&str, String)], outcome: &str, reason: &str, detail: String) -> u8 {
    print_out(&json!({
        "op": op,
        "inputs": inputs_map(pairs),
        "outcome": outcome,
        "reason": reason,
        "trace": [{"cite": op, "detail": detail}],
    }));
    2
}

fn engine_fail(op: &str, pairs: &[(&str, String)], err: EngineError) -> u8 {
    let (outcome, reason) = match &err {
        EngineError::NotRestricted { .. } => ("NotRestricted", "weight restricted at level r".to_string()),
        EngineError::Hypothesis { name, .. } => ("HypothesisFailed", name.clone()),
    };
    fail_envelope(op, pairs, outcome, &reason, err.to_string())
}

fn isogeny_fail(op: &str, pairs: &[(&str, String)], err: IsogenyError) -> u8 {
    let (outcome, reason) = match &err {
        IsogenyError::NotRestricted { .. } => ("NotRestricted", "weight restricted at level r"),
        IsogenyError::EvenLevel(_) => ("HypothesisFailed", "r odd"),
        IsogenyError::ZeroLevel(_) => ("HypothesisFailed", "r positive"),
        IsogenyError::SplitRange { .. } => ("HypothesisFailed", "t range"),
        _ => ("HypothesisFailed", "malformed input"),
    };
    fail_envelope(op, pairs, outcome, &reason.to_string(), err.to_string())
}

fn character_fail(op: &str, pairs: &[(&str, String)], err: CharacterError) -> u8 {
    let reason = match &err {
        CharacterError::NotDominant(_) => "weight dominant",
        CharacterError::EvenLevel(_) => "r odd",
        CharacterError::ZeroLevel(_) => "r positive",
    };
    fail_envelope(op, pairs, "HypothesisFailed", reason, err.to_string())
}

fn finish_verdict(verdict: Verdict, strict: bool) -> u8 {
    let code = match &verdict.outcome {
        Outcome::HypothesisFailed { .. } => 2,
        Outcome::Unknown if strict => 3,
        _ => 0,
    };
    print_out(&verdict);
    code
}

fn character_rows(ch: &Character) -> Vec<String> {
    ch.dominant_multiplicities()
        .iter()
        .map(|(w, m)| format!("{w}\t{m}"))
        .collect()
}

fn character_json(op: &str, extra: &[(&str, String)], ch: &Character) -> serde_json::Value {
    let mults: BTreeMap<String, String> = ch
        .dominant_multiplicities()
        .iter()
        .map(|(w, m)| (w.to_string(), m.to_string()))
        .collect();
    let mut v = json!({
        "op": op,
        "highest": ch.highest().to_string(),
        "dim": ch.dim().to_string(),
        "multiplicities": mults,
    });
    for (k, val) in extra {
        v[*k] = json!(val);
    }
    v
}

fn run(cli: Cli) -> u8 {
    let datum = RootDatum::f4();
    let engine = Engine::f4_char2();
    let iso = engine.isogeny();

    match cli.cmd {
        Cmd::Gamma { count, tsv } => {
            let gamma = gamma_set(datum);
            if count {
                emit(GAMMA_COUNT);
            } else if tsv {
                for w in &gamma {
                    emit(w);
                }
            } else {
                let weights: Vec<String> = gamma.iter().map(|w| w.to_string()).collect();
                print_out(&json!({"op": "gamma", "count": gamma.len(), "weights": weights}));
            }
            0
        }
        Cmd::Restricted { r, count, list, cap } => {
            if count {
                emit(restricted_count(r));
                return 0;
            }
            if list {
                let pairs = [("r", r.to_string()), ("cap", cap.to_string())];
                return match iso.enumerate_restricted(r, cap) {
                    Ok(all) => {
                        let weights: Vec<String> = all.iter().map(|w| w.to_string()).collect();
                        print_out(&json!({
                            "op": "restricted",
                            "r": r,
                            "count": all.len(),
                            "weights": weights,
                        }));
                        0
                    }
                    Err(err @ IsogenyError::CapExceeded { .. }) => {
                        eprintln!("{err}");
                        1
                    }
                    Err(err) => isogeny_fail("restricted", &pairs, err),
                };
            }
            print_out(&json!({
                "op": "restricted",
                "r": r,
                "count": restricted_count(r).to_string(),
            }));
            0
        }
        Cmd::Digits { r, weight } => {
            let pairs = [("r", r.to_string()), ("weight", weight.to_string())];
            match iso.digits(r, &weight) {
                Ok(d) => {
                    print_out(&json!({
                        "op": "digits",
                        "r": r,
                        "weight": weight.to_string(),
                        "digits": d.to_string(),
                    }));
                    0
                }
                Err(err) => isogeny_fail("digits", &pairs, err),
            }
        }
        Cmd::Assemble { digits } => {
            let lam = iso.assemble(&digits);
            print_out(&json!({
                "op": "assemble",
                "digits": digits.to_string(),
                "r": digits.len(),
                "weight": lam.to_string(),
            }));
            0
        }
        Cmd::Tilde { r, weight, n } => {
            let pairs = [("r", r.to_string()), ("weight", weight.to_string()), ("n", n.to_string())];
            match iso.tilde(r, &weight, n) {
                Ok(res) => {
                    print_out(&json!({
                        "op": "tilde",
                        "r": r,
                        "weight": weight.to_string(),
                        "n": n,
                        "result": res.to_string(),
                    }));
                    0
                }
                Err(err) => isogeny_fail("tilde", &pairs, err),
            }
        }
        Cmd::Split { r, t, weight } => {
            let pairs = [("r", r.to_string()), ("t", t.to_string()), ("weight", weight.to_string())];
            match iso.steinberg_split(r, t, &weight) {
                Ok((lo, hi)) => {
                    print_out(&json!({
                        "op": "split",
                        "r": r,
                        "t": t,
                        "weight": weight.to_string(),
                        "lambda0": lo.to_string(),
                        "lambda1": hi.to_string(),
                    }));
                    0
                }
                Err(err) => isogeny_fail("split", &pairs, err),
            }
        }
        Cmd::Character { weight, tsv } => {
            let pairs = [("weight", weight.to_string())];
            match weyl_character(datum, &weight) {
                Ok(ch) => {
                    if tsv {
                        for row in character_rows(&ch) {
                            emit(row);
                        }
                    } else {
                        print_out(&character_json("character", &[], &ch));
                    }
                    0
                }
                Err(err) => character_fail("character", &pairs, err),
            }
        }
        Cmd::Dim { weight } => {
            let pairs = [("weight", weight.to_string())];
            match weyl_dim(datum, &weight) {
                Ok(d) => {
                    print_out(&json!({
                        "op": "dim",
                        "weight": weight.to_string(),
                        "dim": d.to_string(),
                    }));
                    0
                }
                Err(err) => character_fail("dim", &pairs, err),
            }
        }
        Cmd::Tensor { lambda, mu, tsv } => {
            let pairs = [("lambda", lambda.to_string()), ("mu", mu.to_string())];
            let a = match weyl_character(datum, &lambda) {
                Ok(c) => c,
                Err(err) => return character_fail("tensor", &pairs, err),
            };
            let b = match weyl_character(datum, &mu) {
                Ok(c) => c,
                Err(err) => return character_fail("tensor", &pairs, err),
            };
            let product = tensor(datum, &a, &b);
            if tsv {
                for row in character_rows(&product) {
                    emit(row);
                }
            } else {
                let extra = [("lambda", lambda.to_string()), ("mu", mu.to_string())];
                print_out(&character_json("tensor", &extra, &product));
            }
            0
        }
        Cmd::Sections { r, tsv } => {
            let pairs = [("r", r.to_string())];
            match filtration_sections(datum, r) {
                Ok(sections) => {
                    if tsv {
                        for s in &sections {
                            emit(format!("{}\t{}\t{}", s.lam, s.twist_level, s.dimension));
                        }
                    } else {
                        print_out(&json!({
                            "op": "sections",
                            "r": r,
                            "count": sections.len(),
                            "sections": sections,
                        }));
                    }
                    0
                }
                Err(err) => character_fail("sections", &pairs, err),
            }
        }
        Cmd::CheckLemma33 { r, lambda, mu, nu } => {
            finish_verdict(engine.lemma33_check(r, &lambda, &mu, &nu), false)
        }
        Cmd::AuditProp34 { r, t } => {
            let report = engine.prop34_audit(r, t);
            let pass = report.pass;
            print_out(&report);
            if pass {
                0
            } else {
                2
            }
        }
        Cmd::VerdictSelfext { r, weight, strict } => {
            let pairs = [("r", r.to_string()), ("lambda", weight.to_string())];
            match engine.selfext_verdict(r, &weight) {
                Ok(v) => finish_verdict(v, strict),
                Err(err) => engine_fail("selfext_verdict", &pairs, err),
            }
        }
        Cmd::VerdictPair { r, lambda, mu, strict } => {
            let pairs = [
                ("r", r.to_string()),
                ("lambda", lambda.to_string()),
                ("mu", mu.to_string()),
            ];
            match engine.thm37_reduce(r, &lambda, &mu) {
                Ok(v) => finish_verdict(v, strict),
                Err(err) => engine_fail("thm37_reduce", &pairs, err),
            }
        }
        Cmd::VerdictCor35 { r, t, lambda, mu, strict } => {
            let pairs = [
                ("r", r.to_string()),
                ("t", t.to_string()),
                ("lambda", lambda.to_string()),
                ("mu", mu.to_string()),
            ];
            match engine.corollary35_check(r, t, &lambda, &mu) {
                Ok(v) => finish_verdict(v, strict),
                Err(err) => engine_fail("corollary35_check", &pairs, err),
            }
        }
        Cmd::Summands { r, t, lambda, mu } => {
            let pairs = [
                ("r", r.to_string()),
                ("t", t.to_string()),
                ("lambda", lambda.to_string()),
                ("mu", mu.to_string()),
            ];
            match engine.r_summands(r, t, &lambda, &mu) {
                Ok(report) => {
                    print_out(&report);
                    0
                }
                Err(err) => engine_fail("r_summands", &pairs, err),
            }
        }
        Cmd::Linkage { lambda, mu } => {
            let cert = engine.ext_linkage_certificate(&lambda, &mu);
            let inputs = inputs_map(&[("lambda", lambda.to_string()), ("mu", mu.to_string())]);
            let verdict = cert.into_verdict("linkage", inputs);
            finish_verdict(verdict, false)
        }
        Cmd::Selftest { corrupt_tau } => {
            let test_iso = if corrupt_tau {
                Isogeny::corrupted_orientation()
            } else {
                Isogeny::f4_char2()
            };
            let items = selftest::run(&test_iso);
            let pass = selftest::all_pass(&items);
            let rows: Vec<serde_json::Value> = items
                .iter()
                .map(|i| json!({"name": i.name, "pass": i.pass, "detail": i.detail}))
                .collect();
            print_out(&json!({"op": "selftest", "pass": pass, "items": rows}));
            if pass {
                0
            } else {
                4
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(run(cli))
}
