use std::process::ExitCode;

use clap::{Parser, Subcommand};

use simsun::census::{self, Method};
use simsun::error::Error;
use simsun::pattern::parse_pattern_set;
use simsun::perm::Permutation;
use simsun::sequences::{seq_prefix, SequenceId};
use simsun::tree;
use simsun::{bijections, verify, AdmissibleSequence, KrarKind, LatticePath};

/// Simsun permutations: enumeration, counting, bijections, and verification.
#[derive(Parser)]
#[command(name = "simsun", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print sequence values, e.g. `seq euler 0..10`.
    Seq {
        /// catalan | motzkin | secondary | fibonacci | euler
        id: String,
        /// Inclusive index range `n0..n1`, or a single index.
        range: String,
    },
    /// Count simsun permutations avoiding a pattern set.
    Count {
        #[arg(long)]
        n: usize,
        /// Comma-separated patterns in dash syntax, e.g. "1-3-2,2-1-3".
        #[arg(long, default_value = "")]
        avoid: String,
        /// brute | tree
        #[arg(long, default_value = "tree")]
        method: String,
    },
    /// List the class members, one per line or as JSON.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        avoid: String,
        /// lines | json
        #[arg(long, default_value = "lines")]
        format: String,
    },
    /// Apply a named bijection to a permutation, path, or sequence.
    Map {
        /// krar132 | krar231 | krar312 | krar213 | phi | theta | adm |
        /// callan | rs213-motzkin | psi
        bijection: String,
        /// The object, in its text form ("4 1 3 2", "UUDD", "1,2,0", "e").
        object: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Run a named invariant suite; exits nonzero on any violation.
    Verify {
        /// succession | round-trips | statistic-transport | lemma4 |
        /// inclusion-chain | callan-criterion | characterizations | all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
    },
    /// Reproduce the closed-form count table and the all-six-patterns
    /// inclusion-exclusion identity.
    Tables {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// text | json
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Print the fertility gaps of a permutation.
    Fertility {
        /// One-line notation, e.g. "2 1 3".
        perm: String,
        #[arg(long, default_value = "")]
        avoid: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Seq { id, range } => {
            let id = SequenceId::parse(&id)?;
            let (lo, hi) = parse_range(&range)?;
            let values = seq_prefix(id, hi);
            let strs: Vec<String> = values[lo..=hi].iter().map(|v| v.to_string()).collect();
            println!("{}", strs.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        Command::Count { n, avoid, method } => {
            let pats = parse_pattern_set(&avoid)?;
            let method = Method::parse(&method)?;
            println!("{}", census::count_class(n, &pats, method));
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { n, avoid, format } => {
            let pats = parse_pattern_set(&avoid)?;
            let members = census::enumerate_class(n, &pats);
            match format.as_str() {
                "lines" => {
                    for p in members {
                        println!("{p}");
                    }
                }
                "json" => {
                    let strs: Vec<String> = members.iter().map(|p| p.to_string()).collect();
                    let doc = serde_json::json!({
                        "n": n,
                        "avoid": avoid.split(',').filter(|s| !s.is_empty()).collect::<Vec<_>>(),
                        "count": strs.len(),
                        "permutations": strs,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                other => {
                    return Err(Error::ParseError(format!("unknown format `{other}`")));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Map {
            bijection,
            object,
            inverse,
        } => {
            let output = apply_map(&bijection, &object, inverse)?;
            println!("{output}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, n_max } => {
            let mut violations = verify::run_suite(&suite, n_max)?;
            violations.sort();
            if violations.is_empty() {
                println!("suite {suite}: ok up to n = {n_max}");
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &violations {
                    println!("violation: {v}");
                }
                println!("suite {suite}: {} violations", violations.len());
                Ok(ExitCode::from(1))
            }
        }
        Command::Tables { n_max, format } => {
            let report = census::reproduce_tables(n_max);
            let mut all_six = Vec::new();
            for n in 5..=n_max {
                let (observed, formula) = census::contain_all_six(n)?;
                all_six.push((n, observed, formula));
            }
            match format.as_str() {
                "json" => {
                    let six: Vec<serde_json::Value> = all_six
                        .iter()
                        .map(|(n, o, f)| {
                            serde_json::json!({
                                "n": n,
                                "observed": o.to_string(),
                                "formula": f.to_string(),
                                "ok": o == f,
                            })
                        })
                        .collect();
                    let doc = serde_json::json!({
                        "n_max": report.n_max,
                        "records": serde_json::to_value(&report.records).unwrap(),
                        "contain_all_six": six,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                "text" => {
                    println!(
                        "{:<28}{:>4}  {:>12}  {:>12}  {:>12}  ok",
                        "class", "n", "brute", "tree", "expected"
                    );
                    for r in &report.records {
                        println!(
                            "{:<28}{:>4}  {:>12}  {:>12}  {:>12}  {}",
                            r.class,
                            r.n,
                            r.brute,
                            r.tree,
                            r.expected.as_deref().unwrap_or("-"),
                            if r.ok { "yes" } else { "NO" }
                        );
                    }
                    for (n, observed, formula) in &all_six {
                        println!(
                            "contain-all-six{:>13}  {:>12}  {:>12}  {}",
                            n,
                            observed,
                            formula,
                            if observed == formula { "yes" } else { "NO" }
                        );
                    }
                }
                other => {
                    return Err(Error::ParseError(format!("unknown format `{other}`")));
                }
            }
            let ok = report.ok() && all_six.iter().all(|(_, o, f)| o == f);
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Fertility { perm, avoid } => {
            let p: Permutation = perm.parse()?;
            let pats = parse_pattern_set(&avoid)?;
            let gaps = tree::fertility_gaps(&p, &pats)?;
            let strs: Vec<String> = gaps.iter().map(|g| g.to_string()).collect();
            println!("{}", strs.join(" "));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), Error> {
    let parse_num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| Error::ParseError(format!("bad index `{t}`")))
    };
    if let Some((lo, hi)) = s.split_once("..") {
        let lo = parse_num(lo)?;
        let hi = parse_num(hi)?;
        if lo > hi {
            return Err(Error::ParseError(format!("empty range `{s}`")));
        }
        Ok((lo, hi))
    } else {
        let n = parse_num(s)?;
        Ok((n, n))
    }
}

fn apply_map(bijection: &str, object: &str, inverse: bool) -> Result<String, Error> {
    let perm = |s: &str| s.parse::<Permutation>();
    let path = |s: &str| s.parse::<LatticePath>();
    let adm = |s: &str| s.parse::<AdmissibleSequence>();
    match bijection {
        "krar132" | "krar231" | "krar312" | "krar213" => {
            let kind = KrarKind::parse(bijection)?;
            if inverse {
                Ok(bijections::krar_inverse(&path(object)?, kind)?.to_string())
            } else {
                Ok(bijections::krar(&perm(object)?, kind)?.to_string())
            }
        }
        "phi" => {
            if inverse {
                Ok(bijections::phi_inverse(&path(object)?)?.to_string())
            } else {
                Ok(bijections::phi(&perm(object)?)?.to_string())
            }
        }
        "theta" => {
            if inverse {
                Ok(bijections::theta_inverse(&path(object)?)?.to_string())
            } else {
                Ok(bijections::theta(&perm(object)?)?.to_string())
            }
        }
        "adm" => {
            if inverse {
                Ok(bijections::adm_to_motzkin(&adm(object)?)?.to_string())
            } else {
                Ok(bijections::motzkin_to_adm(&path(object)?)?.to_string())
            }
        }
        "callan" => {
            if inverse {
                Ok(bijections::callan_inverse(&path(object)?)?.to_string())
            } else {
                Ok(bijections::callan(&path(object)?)?.to_string())
            }
        }
        "rs213-motzkin" => {
            if inverse {
                Ok(bijections::rs213_from_motzkin(&path(object)?)?.to_string())
            } else {
                Ok(bijections::rs213_to_motzkin(&perm(object)?)?.to_string())
            }
        }
        "psi" => {
            if inverse {
                Ok(bijections::psi_inverse(&path(object)?)?.to_string())
            } else {
                Ok(bijections::psi(&perm(object)?)?.to_string())
            }
        }
        other => Err(Error::ParseError(format!("unknown bijection `{other}`"))),
    }
}
