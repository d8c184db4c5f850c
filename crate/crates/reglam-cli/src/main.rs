use std::fmt::Display;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use reglam::compiler::{sem_to_syn, syn_to_sem, CompileOptions, DEFAULT_MAX_WIDTH};
use reglam::encodings::{
    church_type, decode_scoped, decode_word, encode_scoped, encode_word, run_dfa, Dfa,
};
use reglam::enumerate::enumerate_normal_terms;
use reglam::finsem::{eval_elem, Card, FinDomain, DEFAULT_MAX_DOMAIN};
use reglam::logrel::DEFAULT_MAX_PAIRS;
use reglam::normalize::normalize;
use reglam::parse::{parse_term_with_defs, parse_type_with_defs, parse_untyped, print_untyped};
use reglam::print::{print_term, print_type};
use reglam::recognizers::{
    bool_type, load_descriptor, surface_term_defs, surface_type_defs, Recognizer,
    RecognizerDescriptor, SynRecognizer,
};
use reglam::syntax::{SimpleType, Tm, Ty};
use reglam::typecheck::{synthesize, typecheck};
use reglam::verify::{suite, suite_names, VerifyOptions};

/// The library's error values hold `Rc` internals, so they cannot ride
/// `anyhow` directly; carry their message instead.
trait Lift<T> {
    fn lift(self) -> Result<T>;
}

impl<T, E: Display> Lift<T> for std::result::Result<T, E> {
    fn lift(self) -> Result<T> {
        self.map_err(|e| anyhow!("{e}"))
    }
}

/// Recognizers for regular languages of simply typed λ-terms: evaluate,
/// encode, recognize, and translate between the finite-model and
/// decider presentations.
///
/// Exit codes: 0 = success/accept, 1 = reject, 2 = error.
#[derive(Parser)]
#[command(name = "reglam", version)]
struct Cli {
    /// Cap on materialized finite-model domains.
    #[arg(long, global = true, value_name = "N")]
    max_domain: Option<Card>,
    /// Cap on candidate pairs when lifting relations.
    #[arg(long, global = true, value_name = "N")]
    max_pairs: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Typecheck a term and print its type.
    Check {
        #[arg(long)]
        term: String,
        /// Check against this type instead of inferring one.
        #[arg(long = "type")]
        ty: Option<String>,
    },
    /// Print the βη-normal η-long form of a term.
    Norm {
        #[arg(long)]
        term: String,
        #[arg(long = "type")]
        ty: Option<String>,
    },
    /// Evaluate a closed term in the finite model over a cardinal base.
    Eval {
        #[arg(long)]
        term: String,
        /// Number of points in the base domain.
        #[arg(long)]
        base: Card,
    },
    /// Encode a word or an untyped term as a typed λ-term.
    Encode {
        #[command(subcommand)]
        what: EncodeCmd,
    },
    /// Decode a typed λ-term back into a word or an untyped term.
    Decode {
        #[command(subcommand)]
        what: DecodeCmd,
    },
    /// Run a recognizer on a term; exit 0 = accept, 1 = reject.
    Rec {
        #[command(subcommand)]
        kind: RecCmd,
    },
    /// Translate between the two recognizer presentations.
    Compile {
        #[command(subcommand)]
        direction: CompileCmd,
    },
    /// Work with automata directly.
    Dfa {
        #[command(subcommand)]
        what: DfaCmd,
    },
    /// List the closed βη-normal η-long inhabitants of a type.
    Enum {
        #[arg(long = "type")]
        ty: String,
        /// Maximum term size in constructors.
        #[arg(long)]
        size: usize,
    },
    /// Run a verification suite (default: all).
    Verify { suite: Option<String> },
}

#[derive(Subcommand)]
enum EncodeCmd {
    /// A word, as a digit string over 1..9.
    Word {
        word: String,
        /// Alphabet size; defaults to the largest digit in the word.
        #[arg(long)]
        alphabet: Option<usize>,
    },
    /// An untyped λ-term, e.g. "\x. x x".
    Untyped {
        term: String,
        /// Number of free variables in scope.
        #[arg(long, default_value_t = 0)]
        scope: usize,
    },
}

#[derive(Subcommand)]
enum DecodeCmd {
    Word {
        #[arg(long)]
        term: String,
        #[arg(long)]
        alphabet: Option<usize>,
    },
    Untyped {
        #[arg(long)]
        term: String,
        #[arg(long, default_value_t = 0)]
        scope: usize,
    },
}

#[derive(Subcommand)]
enum RecCmd {
    /// A finite-model recognizer, from a descriptor file.
    Sem {
        #[arg(long)]
        desc: PathBuf,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        term: Option<String>,
    },
    /// A decider recognizer, from a descriptor or a bare decider term.
    Syn {
        #[arg(long, conflicts_with = "decider")]
        desc: Option<PathBuf>,
        /// File holding the decider term itself.
        #[arg(long)]
        decider: Option<PathBuf>,
        /// Subject type; defaults to the word type matching --word.
        #[arg(long)]
        subject: Option<String>,
        /// Base-type substitution; inferred from the decider if omitted.
        #[arg(long)]
        subst: Option<String>,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        term: Option<String>,
    },
}

#[derive(Subcommand)]
enum CompileCmd {
    /// Tabulate a finite-model recognizer into a decider term.
    Sem2syn {
        #[arg(long)]
        desc: PathBuf,
        /// `.json` writes a descriptor; anything else the bare decider.
        #[arg(long)]
        out: PathBuf,
    },
    /// Read a decider as a finite-model recognizer.
    Syn2sem {
        #[arg(long)]
        desc: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum DfaCmd {
    /// Run an automaton on a word; exit 0 = accept, 1 = reject.
    Run {
        #[arg(long)]
        dfa: PathBuf,
        #[arg(long)]
        word: String,
    },
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn parse_ty(src: &str) -> Result<Ty> {
    parse_type_with_defs(src, &surface_type_defs()).lift()
}

fn parse_tm(src: &str) -> Result<Tm> {
    parse_term_with_defs(src, &surface_type_defs(), &surface_term_defs()).lift()
}

fn word_digits(w: &str) -> Result<Vec<usize>> {
    w.chars()
        .map(|c| match c.to_digit(10) {
            Some(d) if (1..=9).contains(&d) => Ok(d as usize),
            _ => Err(anyhow!("words are digit strings over 1..9, found {c:?}")),
        })
        .collect()
}

/// The alphabet size whose word type this is, if any.
fn church_alphabet(ty: &Ty) -> Option<usize> {
    (1..=9).find(|&k| church_type(k) == *ty)
}

/// The subject term a recognizer should judge: an encoded word, or a
/// parsed and checked term.
fn subject_term(subject: &Ty, word: Option<&str>, term: Option<&str>) -> Result<Tm> {
    match (word, term) {
        (Some(w), None) => {
            let k = church_alphabet(subject).ok_or_else(|| {
                anyhow!(
                    "--word needs a word-type subject, this recognizer is at {}",
                    print_type(subject)
                )
            })?;
            encode_word(&word_digits(w)?, k).lift()
        }
        (None, Some(src)) => {
            let t = parse_tm(src)?;
            typecheck(&t, &Vec::new(), subject).lift()?;
            Ok(t)
        }
        _ => bail!("give exactly one of --word or --term"),
    }
}

fn read_descriptor(path: &Path, max_domain: Card) -> Result<Recognizer> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let d: RecognizerDescriptor = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    load_descriptor(&d, dir, max_domain).lift()
}

/// The unique `B` with `subject{o:=B}` equal to `inner`, if one exists.
fn infer_subst(subject: &Ty, inner: &Ty) -> Option<Ty> {
    fn go(s: &SimpleType, t: &Ty, found: &mut Option<Ty>) -> bool {
        match (s, &**t) {
            (SimpleType::Base, _) => match found {
                Some(b) => b == t,
                None => {
                    *found = Some(t.clone());
                    true
                }
            },
            (SimpleType::Unit, SimpleType::Unit) => true,
            (SimpleType::Prod(a, b), SimpleType::Prod(c, d)) => {
                go(a, c, found) && go(b, d, found)
            }
            (SimpleType::Arrow(a, b), SimpleType::Arrow(c, d)) => {
                go(a, c, found) && go(b, d, found)
            }
            _ => false,
        }
    }
    let mut found = None;
    if go(subject, inner, &mut found) {
        found
    } else {
        None
    }
}

fn verdict(accepted: bool) -> i32 {
    println!("{}", if accepted { "accept" } else { "reject" });
    if accepted {
        0
    } else {
        1
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    let max_domain = cli.max_domain.unwrap_or(DEFAULT_MAX_DOMAIN);
    let max_pairs = cli.max_pairs.unwrap_or(DEFAULT_MAX_PAIRS);
    match cli.cmd {
        Cmd::Check { term, ty } => {
            let t = parse_tm(&term)?;
            let ty = match ty {
                Some(src) => {
                    let ty = parse_ty(&src)?;
                    typecheck(&t, &Vec::new(), &ty).lift()?;
                    ty
                }
                None => synthesize(&t, &Vec::new()).lift()?,
            };
            println!("{}", print_type(&ty));
            Ok(0)
        }
        Cmd::Norm { term, ty } => {
            let t = parse_tm(&term)?;
            if let Some(src) = ty {
                typecheck(&t, &Vec::new(), &parse_ty(&src)?).lift()?;
            }
            let nf = normalize(&t, &Vec::new()).lift()?;
            println!("{}", print_term(&nf));
            Ok(0)
        }
        Cmd::Eval { term, base } => {
            let t = parse_tm(&term)?;
            let ty = synthesize(&t, &Vec::new()).lift()?;
            let dom = FinDomain::base(base, max_domain).lift()?;
            let e = eval_elem(&t, &Vec::new(), &dom, &[], max_domain).lift()?;
            println!(
                "element {} of {} : {}",
                e.index(),
                e.domain().size(),
                print_type(&ty)
            );
            Ok(0)
        }
        Cmd::Encode { what } => {
            match what {
                EncodeCmd::Word { word, alphabet } => {
                    let w = word_digits(&word)?;
                    let k = match alphabet {
                        Some(k) => k,
                        None => *w
                            .iter()
                            .max()
                            .ok_or_else(|| anyhow!("the empty word needs --alphabet"))?,
                    };
                    let t = encode_word(&w, k).lift()?;
                    println!("{}", print_term(&t));
                }
                EncodeCmd::Untyped { term, scope } => {
                    let u = parse_untyped(&term).lift()?;
                    let t = encode_scoped(scope, &u).lift()?;
                    println!("{}", print_term(&t));
                }
            }
            Ok(0)
        }
        Cmd::Decode { what } => {
            match what {
                DecodeCmd::Word { term, alphabet } => {
                    let t = parse_tm(&term)?;
                    let k = match alphabet {
                        Some(k) => k,
                        None => {
                            let ty = synthesize(&t, &Vec::new()).lift()?;
                            church_alphabet(&ty).ok_or_else(|| {
                                anyhow!("{} is not a word type", print_type(&ty))
                            })?
                        }
                    };
                    let w = decode_word(&t, k).lift()?;
                    println!(
                        "{}",
                        w.iter().map(usize::to_string).collect::<String>()
                    );
                }
                DecodeCmd::Untyped { term, scope } => {
                    let t = parse_tm(&term)?;
                    println!("{}", print_untyped(&decode_scoped(&t).lift()?, scope));
                }
            }
            Ok(0)
        }
        Cmd::Rec { kind } => match kind {
            RecCmd::Sem { desc, word, term } => {
                let r = read_descriptor(&desc, max_domain)?;
                let Recognizer::Sem(sem) = r else {
                    bail!("{} describes a decider; use `rec syn`", desc.display());
                };
                let t = subject_term(sem.subject(), word.as_deref(), term.as_deref())?;
                Ok(verdict(sem.accepts(&t).lift()?))
            }
            RecCmd::Syn {
                desc,
                decider,
                subject,
                subst,
                word,
                term,
            } => {
                let syn = match (desc, decider) {
                    (Some(path), None) => {
                        let Recognizer::Syn(syn) = read_descriptor(&path, max_domain)? else {
                            bail!(
                                "{} describes a finite-model recognizer; use `rec sem`",
                                path.display()
                            );
                        };
                        syn
                    }
                    (None, Some(path)) => {
                        let text = std::fs::read_to_string(&path)
                            .with_context(|| format!("reading {}", path.display()))?;
                        let d = parse_tm(text.trim())?;
                        let dty = synthesize(&d, &Vec::new()).lift()?;
                        let SimpleType::Arrow(inner, out) = &*dty else {
                            bail!("a decider is a function, found {}", print_type(&dty));
                        };
                        if *out != bool_type() {
                            bail!("a decider lands in Bool, found {}", print_type(out));
                        }
                        let subject = match (&subject, &word) {
                            (Some(src), _) => parse_ty(src)?,
                            (None, Some(w)) => {
                                let k = word_digits(w)?.into_iter().max().unwrap_or(1);
                                church_type(k)
                            }
                            (None, None) => bail!("give --subject (or --word to imply it)"),
                        };
                        let subst = match &subst {
                            Some(src) => parse_ty(src)?,
                            None => infer_subst(&subject, inner).ok_or_else(|| {
                                anyhow!(
                                    "cannot infer the substitution: {} does not match {}",
                                    print_type(&subject),
                                    print_type(inner)
                                )
                            })?,
                        };
                        SynRecognizer::new(subject, subst, d).lift()?
                    }
                    _ => bail!("give exactly one of --desc or --decider"),
                };
                let t = subject_term(syn.subject(), word.as_deref(), term.as_deref())?;
                Ok(verdict(syn.accepts(&t).lift()?))
            }
        },
        Cmd::Compile { direction } => match direction {
            CompileCmd::Sem2syn { desc, out } => {
                let Recognizer::Sem(sem) = read_descriptor(&desc, max_domain)? else {
                    bail!("{} already describes a decider", desc.display());
                };
                let opts = CompileOptions {
                    max_width: DEFAULT_MAX_WIDTH,
                    max_domain,
                };
                let syn = sem_to_syn(&sem, &opts).lift()?;
                let text = if out.extension().is_some_and(|e| e == "json") {
                    serde_json::to_string_pretty(&RecognizerDescriptor::for_syn(&syn))?
                } else {
                    print_term(syn.decider())
                };
                std::fs::write(&out, text + "\n")
                    .with_context(|| format!("writing {}", out.display()))?;
                println!("wrote {}", out.display());
                Ok(0)
            }
            CompileCmd::Syn2sem { desc, out } => {
                let Recognizer::Syn(syn) = read_descriptor(&desc, max_domain)? else {
                    bail!(
                        "{} already describes a finite-model recognizer",
                        desc.display()
                    );
                };
                syn_to_sem(&syn, max_domain).lift()?;
                let d = RecognizerDescriptor::for_sem_of_decider(&syn);
                std::fs::write(&out, serde_json::to_string_pretty(&d)? + "\n")
                    .with_context(|| format!("writing {}", out.display()))?;
                println!("wrote {}", out.display());
                Ok(0)
            }
        },
        Cmd::Dfa { what } => match what {
            DfaCmd::Run { dfa, word } => {
                let text = std::fs::read_to_string(&dfa)
                    .with_context(|| format!("reading {}", dfa.display()))?;
                let d: Dfa = serde_json::from_str(&text)?;
                d.validate().lift()?;
                Ok(verdict(run_dfa(&d, &word_digits(&word)?)))
            }
        },
        Cmd::Enum { ty, size } => {
            let ty = parse_ty(&ty)?;
            for t in enumerate_normal_terms(&ty, size) {
                println!("{}", print_term(&t));
            }
            Ok(0)
        }
        Cmd::Verify { suite: name } => {
            let name = name.unwrap_or_else(|| "all".into());
            let opts = VerifyOptions {
                max_domain,
                max_pairs,
            };
            let Some(checks) = suite(&name, &opts) else {
                bail!("unknown suite `{name}`; try one of {}", suite_names().join(", "));
            };
            let mut failed = 0;
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                if !c.passed {
                    failed += 1;
                }
            }
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}
