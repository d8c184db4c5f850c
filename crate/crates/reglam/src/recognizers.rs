//! Recognizers of languages of closed λ-terms, in two presentations.
//!
//! A [`SemRecognizer`] fixes a finite base domain and an accepting
//! predicate on denotations: a closed term of the subject type belongs to
//! the language when its evaluation satisfies the predicate. Boolean
//! combinations keep one verdict per constituent base and combine them,
//! which realizes intersection and union across *different* bases (the
//! product-model reading), not just complements over a single one.
//!
//! A [`SynRecognizer`] fixes a substitution type `B` and a closed decider
//! `r : A{o:=B} → Bool`: a term `t` belongs when `r t{o:=B}` βη-normalizes
//! to `true`. The decider calculus — `Bool`, `true`, `false`, `not`,
//! `and`, `or` — lives here too, since deciders are ordinary terms.
//!
//! The two presentations name the same class of languages; the
//! translations live in [`crate::compiler`].

use crate::encodings::{church_type, dfa_to_recognizer, untyped_terms_type, Dfa, EncodingError};
use crate::finsem::{
    denote_type, enumerate, eval_value, materialize, reflect, Card, FinDomain, FinsemError,
    SemValue,
};
use crate::normalize::normalize;
use crate::parse::{parse_term_with_defs, parse_type_with_defs, ParseError};
use crate::print::{print_term, print_type};
use crate::syntax::{app, arrow, base, fst, lam, pair, prod, snd, var, Term, Tm, Ty};
use crate::typecheck::{synthesize, typecheck, TypeError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::Path;
use std::rc::Rc;

#[derive(Debug, thiserror::Error)]
pub enum RecognizerError {
    #[error("subject types differ: {left} vs {right}")]
    SubjectMismatch { left: String, right: String },
    #[error("substitution types differ: {left} vs {right}")]
    SubstMismatch { left: String, right: String },
    #[error("decider must be closed of type {expected}, found {actual}")]
    BadDecider { expected: String, actual: String },
    #[error("boolean application normalized to neither `true` nor `false`")]
    NotBoolean,
    #[error("descriptor: {0}")]
    Descriptor(String),
    #[error("compile: {0}")]
    Compile(String),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Finsem(#[from] FinsemError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("reading {path}: {err}")]
    Io { path: String, err: String },
    #[error("descriptor syntax: {0}")]
    Json(#[from] serde_json::Error),
}

// ---------------------------------------------------------------------
// The decider calculus
// ---------------------------------------------------------------------

/// `Bool = o² → o`; its two closed inhabitants are the projections.
pub fn bool_type() -> Ty {
    arrow(prod(base(), base()), base())
}

pub fn true_term() -> Tm {
    lam(prod(base(), base()), fst(var(0)))
}

pub fn false_term() -> Tm {
    lam(prod(base(), base()), snd(var(0)))
}

/// `λ(b: Bool). λ(x: o²). b ⟨x.2, x.1⟩`
pub fn not_term() -> Tm {
    lam(
        bool_type(),
        lam(
            prod(base(), base()),
            app(var(1), pair(snd(var(0)), fst(var(0)))),
        ),
    )
}

/// `λ(p: Bool × Bool). λ(x: o²). p.1 ⟨p.2 x, x.2⟩`
pub fn and_term() -> Tm {
    lam(
        prod(bool_type(), bool_type()),
        lam(
            prod(base(), base()),
            app(
                fst(var(1)),
                pair(app(snd(var(1)), var(0)), snd(var(0))),
            ),
        ),
    )
}

/// `λ(p: Bool × Bool). λ(x: o²). p.1 ⟨x.1, p.2 x⟩`
pub fn or_term() -> Tm {
    lam(
        prod(bool_type(), bool_type()),
        lam(
            prod(base(), base()),
            app(
                fst(var(1)),
                pair(fst(var(0)), app(snd(var(1)), var(0))),
            ),
        ),
    )
}

/// The identity at `Bool`, used as a no-op letter action.
pub fn bool_id_term() -> Tm {
    lam(bool_type(), var(0))
}

/// Type names resolvable in surface syntax (descriptors, CLI input).
pub fn surface_type_defs() -> Vec<(&'static str, Ty)> {
    vec![("Bool", bool_type())]
}

/// Closed term names resolvable in surface syntax.
pub fn surface_term_defs() -> Vec<(&'static str, Tm)> {
    vec![
        ("true", true_term()),
        ("false", false_term()),
        ("not", not_term()),
        ("and", and_term()),
        ("or", or_term()),
        ("id", bool_id_term()),
    ]
}

// ---------------------------------------------------------------------
// Semantic recognizers
// ---------------------------------------------------------------------

pub type ValuePredicate = Rc<dyn Fn(&SemValue) -> Result<bool, FinsemError>>;

#[derive(Clone)]
enum SemNode {
    Atom {
        base: FinDomain,
        label: String,
        pred: ValuePredicate,
    },
    Not(Box<SemNode>),
    And(Box<SemNode>, Box<SemNode>),
    Or(Box<SemNode>, Box<SemNode>),
}

/// A language of closed terms of `subject`, cut out by accepting
/// predicates on finite-model denotations. Leaves may sit over different
/// bases; a term is evaluated once and each leaf judges that value over
/// its own base.
#[derive(Clone)]
pub struct SemRecognizer {
    subject: Ty,
    node: SemNode,
}

impl SemRecognizer {
    pub fn from_value_predicate(
        subject: Ty,
        base: FinDomain,
        label: &str,
        pred: ValuePredicate,
    ) -> SemRecognizer {
        SemRecognizer {
            subject,
            node: SemNode::Atom {
                base,
                label: label.to_string(),
                pred,
            },
        }
    }

    /// Accepting set given extensionally, as canonical indices into the
    /// denotation of the subject type (which must fit `max_domain`).
    pub fn from_accepting_indices(
        subject: Ty,
        base: FinDomain,
        label: &str,
        accepting: BTreeSet<Card>,
        max_domain: Card,
    ) -> Result<SemRecognizer, RecognizerError> {
        let dom = denote_type(&subject, &base, max_domain)?;
        if let Some(&bad) = accepting.iter().find(|i| **i == 0 || **i > dom.size()) {
            return Err(RecognizerError::Descriptor(format!(
                "accepting index {bad} outside 1..={}",
                dom.size()
            )));
        }
        let pred = {
            let dom = dom.clone();
            let accepting = accepting.clone();
            move |v: &SemValue| Ok(accepting.contains(&materialize(v, &dom)?.index()))
        };
        Ok(SemRecognizer::from_value_predicate(
            subject,
            base,
            label,
            Rc::new(pred),
        ))
    }

    pub fn accept_all(subject: Ty, base: FinDomain) -> SemRecognizer {
        SemRecognizer::from_value_predicate(subject, base, "accept-all", Rc::new(|_| Ok(true)))
    }

    pub fn reject_all(subject: Ty, base: FinDomain) -> SemRecognizer {
        SemRecognizer::from_value_predicate(subject, base, "reject-all", Rc::new(|_| Ok(false)))
    }

    pub fn subject(&self) -> &Ty {
        &self.subject
    }

    /// The distinct bases of the leaves, in tree order.
    pub fn bases(&self) -> Vec<FinDomain> {
        fn walk(n: &SemNode, out: &mut Vec<FinDomain>) {
            match n {
                SemNode::Atom { base, .. } => {
                    if !out.contains(base) {
                        out.push(base.clone());
                    }
                }
                SemNode::Not(a) => walk(a, out),
                SemNode::And(a, b) | SemNode::Or(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.node, &mut out);
        out
    }

    pub fn describe(&self) -> String {
        fn walk(n: &SemNode) -> String {
            match n {
                SemNode::Atom { label, base, .. } => format!("{label}@{base}"),
                SemNode::Not(a) => format!("not({})", walk(a)),
                SemNode::And(a, b) => format!("and({}, {})", walk(a), walk(b)),
                SemNode::Or(a, b) => format!("or({}, {})", walk(a), walk(b)),
            }
        }
        walk(&self.node)
    }

    /// Verdict on an already-evaluated denotation. The value must make
    /// sense at every leaf's base; evaluations of closed terms do.
    pub fn verdict_on_value(&self, v: &SemValue) -> Result<bool, FinsemError> {
        fn walk(n: &SemNode, v: &SemValue) -> Result<bool, FinsemError> {
            match n {
                SemNode::Atom { pred, .. } => pred(v),
                SemNode::Not(a) => Ok(!walk(a, v)?),
                SemNode::And(a, b) => Ok(walk(a, v)? && walk(b, v)?),
                SemNode::Or(a, b) => Ok(walk(a, v)? || walk(b, v)?),
            }
        }
        walk(&self.node, v)
    }

    pub fn accepts(&self, t: &Term) -> Result<bool, RecognizerError> {
        typecheck(t, &Vec::new(), &self.subject)?;
        Ok(self.verdict_on_value(&eval_value(t, &[]))?)
    }

    pub fn complement(&self) -> SemRecognizer {
        SemRecognizer {
            subject: self.subject.clone(),
            node: SemNode::Not(Box::new(self.node.clone())),
        }
    }

    pub fn intersect(&self, other: &SemRecognizer) -> Result<SemRecognizer, RecognizerError> {
        self.combine(other, SemNode::And)
    }

    pub fn union(&self, other: &SemRecognizer) -> Result<SemRecognizer, RecognizerError> {
        self.combine(other, SemNode::Or)
    }

    fn combine(
        &self,
        other: &SemRecognizer,
        join: fn(Box<SemNode>, Box<SemNode>) -> SemNode,
    ) -> Result<SemRecognizer, RecognizerError> {
        if self.subject != other.subject {
            return Err(RecognizerError::SubjectMismatch {
                left: print_type(&self.subject),
                right: print_type(&other.subject),
            });
        }
        Ok(SemRecognizer {
            subject: self.subject.clone(),
            node: join(Box::new(self.node.clone()), Box::new(other.node.clone())),
        })
    }

    /// Enumerate the accepting set when the recognizer sits over a single
    /// base and the denotation has at most `max_size` points; `None` when
    /// it does not qualify.
    pub fn materialized_accepting(
        &self,
        max_size: Card,
        max_domain: Card,
    ) -> Result<Option<(FinDomain, BTreeSet<Card>)>, RecognizerError> {
        let bases = self.bases();
        if bases.len() != 1 {
            return Ok(None);
        }
        let dom = match denote_type(&self.subject, &bases[0], max_domain) {
            Ok(d) if d.size() <= max_size => d,
            _ => return Ok(None),
        };
        let mut set = BTreeSet::new();
        for e in enumerate(&dom) {
            if self.verdict_on_value(&reflect(&e))? {
                set.insert(e.index());
            }
        }
        Ok(Some((dom, set)))
    }
}

pub fn sem_accepts(r: &SemRecognizer, t: &Term) -> Result<bool, RecognizerError> {
    r.accepts(t)
}

// ---------------------------------------------------------------------
// Syntactic recognizers
// ---------------------------------------------------------------------

/// A language decided inside the calculus: substitute `subst` for the
/// base type and apply a closed boolean decider.
#[derive(Clone, Debug)]
pub struct SynRecognizer {
    subject: Ty,
    subst: Ty,
    decider: Tm,
}

impl SynRecognizer {
    pub fn new(subject: Ty, subst: Ty, decider: Tm) -> Result<SynRecognizer, RecognizerError> {
        let expected = arrow(subject.subst_base(&subst), bool_type());
        let actual = synthesize(&decider, &Vec::new())?;
        if actual != expected {
            return Err(RecognizerError::BadDecider {
                expected: print_type(&expected),
                actual: print_type(&actual),
            });
        }
        Ok(SynRecognizer {
            subject,
            subst,
            decider,
        })
    }

    pub fn subject(&self) -> &Ty {
        &self.subject
    }

    pub fn subst(&self) -> &Ty {
        &self.subst
    }

    pub fn decider(&self) -> &Tm {
        &self.decider
    }

    pub fn accepts(&self, t: &Term) -> Result<bool, RecognizerError> {
        typecheck(t, &Vec::new(), &self.subject)?;
        let nf = normalize(&app(self.decider.clone(), t.cast(&self.subst)), &Vec::new())?;
        if nf == true_term() {
            Ok(true)
        } else if nf == false_term() {
            Ok(false)
        } else {
            // Unreachable for well-typed input: the only η-long normal
            // inhabitants of Bool are the two projections.
            Err(RecognizerError::NotBoolean)
        }
    }

    pub fn complement(&self) -> SynRecognizer {
        let dom = self.subject.subst_base(&self.subst);
        let decider = lam(dom, app(not_term(), app(self.decider.clone(), var(0))));
        SynRecognizer {
            subject: self.subject.clone(),
            subst: self.subst.clone(),
            decider,
        }
    }

    pub fn intersect(&self, other: &SynRecognizer) -> Result<SynRecognizer, RecognizerError> {
        self.combine(other, and_term())
    }

    pub fn union(&self, other: &SynRecognizer) -> Result<SynRecognizer, RecognizerError> {
        self.combine(other, or_term())
    }

    /// Verdict-level combination; a single decider exists only when both
    /// sides share the substitution type.
    fn combine(&self, other: &SynRecognizer, op: Tm) -> Result<SynRecognizer, RecognizerError> {
        if self.subject != other.subject {
            return Err(RecognizerError::SubjectMismatch {
                left: print_type(&self.subject),
                right: print_type(&other.subject),
            });
        }
        if self.subst != other.subst {
            return Err(RecognizerError::SubstMismatch {
                left: print_type(&self.subst),
                right: print_type(&other.subst),
            });
        }
        let dom = self.subject.subst_base(&self.subst);
        let decider = lam(
            dom,
            app(
                op,
                pair(
                    app(self.decider.clone(), var(0)),
                    app(other.decider.clone(), var(0)),
                ),
            ),
        );
        Ok(SynRecognizer {
            subject: self.subject.clone(),
            subst: self.subst.clone(),
            decider,
        })
    }
}

pub fn syn_accepts(r: &SynRecognizer, t: &Term) -> Result<bool, RecognizerError> {
    r.accepts(t)
}

/// The worked two-letter decider: substitute `Bool`, run the word with
/// letter 1 ↦ `not` from `true` (even number of 1s) and letter 2 ↦ `not`
/// from `false` (odd number of 2s), and conjoin.
pub fn even1s_odd2s_decider() -> SynRecognizer {
    let subject = church_type(2);
    let b = bool_type();
    let w_ty = subject.subst_base(&b);
    let decider = lam(
        w_ty,
        app(
            and_term(),
            pair(
                app(
                    app(var(0), pair(not_term(), bool_id_term())),
                    true_term(),
                ),
                app(
                    app(var(0), pair(bool_id_term(), not_term())),
                    false_term(),
                ),
            ),
        ),
    );
    SynRecognizer::new(subject, b, decider).expect("well-typed by construction")
}

// ---------------------------------------------------------------------
// Either kind, and pointwise comparison
// ---------------------------------------------------------------------

#[derive(Clone)]
pub enum Recognizer {
    Sem(SemRecognizer),
    Syn(SynRecognizer),
}

impl Recognizer {
    pub fn subject(&self) -> &Ty {
        match self {
            Recognizer::Sem(r) => r.subject(),
            Recognizer::Syn(r) => r.subject(),
        }
    }

    pub fn accepts(&self, t: &Term) -> Result<bool, RecognizerError> {
        match self {
            Recognizer::Sem(r) => r.accepts(t),
            Recognizer::Syn(r) => r.accepts(t),
        }
    }
}

/// First term on which the two recognizers disagree, if any.
pub fn equivalence_on<I>(
    r1: &Recognizer,
    r2: &Recognizer,
    terms: I,
) -> Result<Option<Tm>, RecognizerError>
where
    I: IntoIterator<Item = Tm>,
{
    if r1.subject() != r2.subject() {
        return Err(RecognizerError::SubjectMismatch {
            left: print_type(r1.subject()),
            right: print_type(r2.subject()),
        });
    }
    for t in terms {
        if r1.accepts(&t)? != r2.accepts(&t)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------
// Descriptor files
// ---------------------------------------------------------------------

/// On-disk recognizer description. `kind` is `"sem"` or `"syn"`. A
/// semantic recognizer names a builtin `predicate` over a cardinal `base`
/// (`"dfa:<path>"`, `"affine"`, `"accept-all"`, `"reject-all"`), or — the
/// compiled form — carries `subst` and a `decider` whose induced
/// evaluation predicate over the two-point base is meant. A syntactic
/// recognizer always carries `subst` and `decider`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecognizerDescriptor {
    pub kind: String,
    #[serde(rename = "type")]
    pub subject: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subst: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decider: Option<String>,
}

impl RecognizerDescriptor {
    pub fn for_syn(r: &SynRecognizer) -> RecognizerDescriptor {
        RecognizerDescriptor {
            kind: "syn".into(),
            subject: print_type(r.subject()),
            base: None,
            subst: Some(print_type(r.subst())),
            predicate: None,
            decider: Some(print_term(r.decider())),
        }
    }

    /// The semantic reading of a decider (what `compile syn2sem` emits):
    /// same data, interpreted through evaluation over the two-point base.
    pub fn for_sem_of_decider(r: &SynRecognizer) -> RecognizerDescriptor {
        RecognizerDescriptor {
            kind: "sem".into(),
            ..RecognizerDescriptor::for_syn(r)
        }
    }
}

fn parse_subject(text: &str) -> Result<Ty, RecognizerError> {
    Ok(parse_type_with_defs(text, &surface_type_defs())?)
}

fn parse_syn_parts(d: &RecognizerDescriptor) -> Result<SynRecognizer, RecognizerError> {
    let subject = parse_subject(&d.subject)?;
    let subst = match &d.subst {
        Some(s) => parse_subject(s)?,
        None => {
            return Err(RecognizerError::Descriptor(
                "a decider needs a `subst` type".into(),
            ))
        }
    };
    let decider_text = d
        .decider
        .as_ref()
        .ok_or_else(|| RecognizerError::Descriptor("missing `decider`".into()))?;
    let tydefs = surface_type_defs();
    let tmdefs = surface_term_defs();
    let decider = parse_term_with_defs(decider_text, &tydefs, &tmdefs)?;
    SynRecognizer::new(subject, subst, decider)
}

/// Instantiate a descriptor. Relative `dfa:` paths resolve against `dir`.
pub fn load_descriptor(
    d: &RecognizerDescriptor,
    dir: &Path,
    max_domain: Card,
) -> Result<Recognizer, RecognizerError> {
    match d.kind.as_str() {
        "syn" => {
            if d.predicate.is_some() || d.base.is_some() {
                return Err(RecognizerError::Descriptor(
                    "a syntactic recognizer has a decider, not a predicate or base".into(),
                ));
            }
            Ok(Recognizer::Syn(parse_syn_parts(d)?))
        }
        "sem" => {
            if d.decider.is_some() {
                let syn = parse_syn_parts(d)?;
                let sem = crate::compiler::syn_to_sem(&syn, max_domain)
                    .map_err(|e| RecognizerError::Compile(e.to_string()))?;
                return Ok(Recognizer::Sem(sem));
            }
            let subject = parse_subject(&d.subject)?;
            let predicate = d
                .predicate
                .as_ref()
                .ok_or_else(|| RecognizerError::Descriptor("missing `predicate`".into()))?;
            let sem = if let Some(path) = predicate.strip_prefix("dfa:") {
                let full = dir.join(path);
                let text = std::fs::read_to_string(&full).map_err(|e| RecognizerError::Io {
                    path: full.display().to_string(),
                    err: e.to_string(),
                })?;
                let dfa: Dfa = serde_json::from_str(&text)?;
                dfa.validate()?;
                if subject != church_type(dfa.alphabet) {
                    return Err(RecognizerError::Descriptor(format!(
                        "subject {} does not match the word type of a {}-letter automaton",
                        d.subject, dfa.alphabet
                    )));
                }
                if let Some(b) = d.base {
                    if b != dfa.states as u64 {
                        return Err(RecognizerError::Descriptor(format!(
                            "base {b} does not match the automaton's {} states",
                            dfa.states
                        )));
                    }
                }
                dfa_to_recognizer(&dfa)?
            } else if predicate == "affine" {
                if subject != untyped_terms_type() {
                    return Err(RecognizerError::Descriptor(
                        "the affine predicate lives at the untyped-encoding type".into(),
                    ));
                }
                crate::encodings::affine_recognizer()
            } else if predicate == "accept-all" || predicate == "reject-all" {
                let n = d.base.ok_or_else(|| {
                    RecognizerError::Descriptor("a constant predicate needs a `base`".into())
                })?;
                let dom = FinDomain::base(n, max_domain)?;
                if predicate == "accept-all" {
                    SemRecognizer::accept_all(subject, dom)
                } else {
                    SemRecognizer::reject_all(subject, dom)
                }
            } else {
                return Err(RecognizerError::Descriptor(format!(
                    "unknown predicate `{predicate}`"
                )));
            };
            Ok(Recognizer::Sem(sem))
        }
        other => Err(RecognizerError::Descriptor(format!(
            "unknown kind `{other}`"
        ))),
    }
}
