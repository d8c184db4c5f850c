//! Simply typed λ-calculus over finite-set semantics, and two interchangeable
//! ways of carving out "regular" languages of λ-terms:
//!
//! * **semantic recognizers** — evaluate a closed term in the finite-set
//!   model over a chosen finite base and ask whether its denotation lies in
//!   an accepting set of points;
//! * **syntactic recognizers** — substitute a type `B` for the base type,
//!   apply a closed decider term of type `A{o:=B} -> Bool`, and βη-normalize
//!   to `true` or `false`.
//!
//! The [`compiler`] module translates each presentation into the other, via
//! λ-definable finite-index combinators; [`logrel`] provides the logical
//! relations toolkit that justifies those translations, in executable form.
//! [`encodings`] supplies the standard test subjects: words as Church-style
//! terms, automata over them, and untyped λ-terms together with an
//! affineness recognizer.

pub mod syntax;
pub mod parse;
pub mod print;
pub mod typecheck;
pub mod normalize;
pub mod enumerate;
pub mod finsem;
pub mod encodings;
pub mod recognizers;
pub mod compiler;
pub mod logrel;
pub mod sample;
pub mod verify;

pub use compiler::{build_kit, sem_to_syn, syn_to_sem, CompileError, CompileOptions, FinKit};
pub use encodings::{
    decode_scoped, decode_word, encode_scoped, encode_word, run_dfa, Dfa, EncodingError, Word,
};
pub use enumerate::{enumerate_normal_terms, enumerate_scoped_terms};
pub use finsem::{denote_type, eval_elem, eval_value, FinDomain, FinElem, FinsemError, SemValue};
pub use logrel::{
    fundamental_lemma_check, lift_relation, point_relation, FinRelation, LogrelError,
};
pub use normalize::{beta_eta_equal, is_eta_long_normal, normalize};
pub use parse::{
    parse_term, parse_term_with, parse_term_with_defs, parse_type, parse_type_with_defs,
    parse_untyped, print_untyped, ParseError,
};
pub use print::{print_term, print_term_open, print_type};
pub use recognizers::{
    load_descriptor, Recognizer, RecognizerDescriptor, RecognizerError, SemRecognizer,
    SynRecognizer,
};
pub use syntax::{SimpleType, Term, Ty, Tm, UTerm, UTm};
pub use typecheck::{synthesize, typecheck, TypeError};
pub use verify::{all_checks, suite, suite_names, Check, VerifyOptions};
