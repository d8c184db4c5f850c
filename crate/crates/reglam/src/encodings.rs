//! Test subjects for recognizers.
//!
//! Three encodings connect ordinary combinatorial objects to closed
//! λ-terms:
//!
//! * **words** over an alphabet `{1..n}` correspond bijectively to closed
//!   terms of `(o → o)^n → o → o` ([`encode_word`] / [`decode_word`]);
//! * **finite automata** over the same alphabet turn into semantic
//!   recognizers whose base is the state set ([`dfa_to_recognizer`]);
//! * **untyped λ-terms** with `n` variables in scope embed into the fixed
//!   type `((o → o) → o) → (o → o → o) → o` ([`encode_scoped`] /
//!   [`decode_scoped`]), and a six-point base with an occurrence-counting
//!   interpretation recognizes exactly the affine ones
//!   ([`affine_recognizer`]).
//!
//! The counting model works over `Q = {0, 1, many} × {⊤, ⊥}`: the first
//! coordinate tracks how often the most recently bound variable occurs
//! (truncated at two), the second whether every abstraction seen so far
//! was affine. `Q` is flattened to a 6-element base with the fixed index
//! map (0,⊤)=1, (1,⊤)=2, (many,⊤)=3, (0,⊥)=4, (1,⊥)=5, (many,⊥)=6; the
//! acceptance point is index 1.

use crate::finsem::{
    apply_value, elem_at, eval_value, materialize, Card, FinDomain, FinsemError, SemValue,
    DEFAULT_MAX_DOMAIN,
};
use crate::normalize::normalize;
use crate::recognizers::SemRecognizer;
use crate::syntax::{
    app, arrow, base, lam, pow, select, uabs, uapp, uvar, var, Term, Tm, Ty, UTerm, UTm,
};
use crate::typecheck::typecheck;
use serde::{Deserialize, Serialize};
use std::rc::Rc;

/// A word over `{1..alphabet}`, letters 1-based.
pub type Word = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EncodingError {
    #[error("letter {letter} outside the alphabet 1..={alphabet}")]
    LetterRange { letter: usize, alphabet: usize },
    #[error("alphabet must have at least one letter")]
    EmptyAlphabet,
    #[error("invalid automaton: {0}")]
    BadDfa(String),
    #[error("not a word encoding: {0}")]
    NotAWord(String),
    #[error("not an untyped-term encoding: {0}")]
    NotAnEncoding(String),
    #[error("variable {index} out of scope {scope}")]
    OutOfScope { index: usize, scope: usize },
    #[error(transparent)]
    Type(#[from] crate::typecheck::TypeError),
    #[error(transparent)]
    Finsem(#[from] FinsemError),
}

// ---------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------

/// The type whose closed terms are exactly the words over an
/// `alphabet`-letter alphabet: `(o → o)^alphabet → o → o`.
pub fn church_type(alphabet: usize) -> Ty {
    assert!(alphabet >= 1, "alphabet must have at least one letter");
    arrow(pow(&arrow(base(), base()), alphabet), arrow(base(), base()))
}

/// The canonical term of a word: `λa. λe. a_{w_k} (… (a_{w_1} e))` — the
/// first letter is applied innermost.
pub fn encode_word(w: &[usize], alphabet: usize) -> Result<Tm, EncodingError> {
    if alphabet == 0 {
        return Err(EncodingError::EmptyAlphabet);
    }
    let mut acc = var(0);
    for &letter in w {
        if letter == 0 || letter > alphabet {
            return Err(EncodingError::LetterRange { letter, alphabet });
        }
        acc = app(select(var(1), letter, alphabet), acc);
    }
    Ok(lam(
        pow(&arrow(base(), base()), alphabet),
        lam(base(), acc),
    ))
}

/// Recover the word from any closed term of the word type, by normalizing
/// and reading the application chain back off. Total on well-typed input.
pub fn decode_word(t: &Term, alphabet: usize) -> Result<Word, EncodingError> {
    if alphabet == 0 {
        return Err(EncodingError::EmptyAlphabet);
    }
    typecheck(t, &Vec::new(), &church_type(alphabet))?;
    let nf = normalize(t, &Vec::new())?;
    let chain = match &*nf {
        Term::Lam(_, b) => match &**b {
            Term::Lam(_, c) => c.clone(),
            _ => return Err(EncodingError::NotAWord("missing inner binder".into())),
        },
        _ => return Err(EncodingError::NotAWord("missing outer binder".into())),
    };
    let mut rev = Vec::new();
    let mut cur = chain;
    loop {
        match &*cur {
            Term::Var(0) => break,
            Term::App(head, rest) => {
                let letter = letter_of_head(head, alphabet).ok_or_else(|| {
                    EncodingError::NotAWord("application head is not a letter".into())
                })?;
                rev.push(letter);
                cur = rest.clone();
            }
            _ => return Err(EncodingError::NotAWord("unexpected chain shape".into())),
        }
    }
    rev.reverse();
    Ok(rev)
}

/// Match a normal-form head against the i-th component projection of the
/// letter tuple (bound at index 1) and return i.
fn letter_of_head(head: &Term, alphabet: usize) -> Option<usize> {
    if alphabet == 1 {
        return matches!(head, Term::Var(1)).then_some(1);
    }
    let mut h = head;
    let took_fst = if let Term::Fst(inner) = h {
        h = inner;
        true
    } else {
        false
    };
    let mut snds = 0;
    while let Term::Snd(inner) = h {
        snds += 1;
        h = inner;
    }
    if !matches!(h, Term::Var(1)) {
        return None;
    }
    if took_fst {
        (snds + 1 < alphabet).then_some(snds + 1)
    } else {
        (snds == alphabet - 1).then_some(alphabet)
    }
}

// ---------------------------------------------------------------------
// Automata
// ---------------------------------------------------------------------

/// A complete deterministic finite automaton; states and letters are
/// 1-based, and `delta[letter - 1][state - 1]` is the successor state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dfa {
    pub alphabet: usize,
    pub states: usize,
    pub initial: usize,
    pub accepting: Vec<usize>,
    pub delta: Vec<Vec<usize>>,
}

impl Dfa {
    pub fn validate(&self) -> Result<(), EncodingError> {
        let bad = |msg: String| Err(EncodingError::BadDfa(msg));
        if self.states == 0 {
            return bad("no states".into());
        }
        if self.alphabet == 0 {
            return bad("empty alphabet".into());
        }
        let in_range = |q: usize| q >= 1 && q <= self.states;
        if !in_range(self.initial) {
            return bad(format!("initial state {} out of range", self.initial));
        }
        if let Some(q) = self.accepting.iter().find(|q| !in_range(**q)) {
            return bad(format!("accepting state {q} out of range"));
        }
        if self.delta.len() != self.alphabet {
            return bad(format!(
                "delta has {} rows, expected one per letter ({})",
                self.delta.len(),
                self.alphabet
            ));
        }
        for (l, row) in self.delta.iter().enumerate() {
            if row.len() != self.states {
                return bad(format!("delta row for letter {} has wrong width", l + 1));
            }
            if let Some(q) = row.iter().find(|q| !in_range(**q)) {
                return bad(format!("transition to {q} out of range"));
            }
        }
        Ok(())
    }

    pub fn step(&self, state: usize, letter: usize) -> usize {
        self.delta[letter - 1][state - 1]
    }
}

/// Run the automaton from its initial state. The automaton must be valid
/// and the letters within its alphabet.
pub fn run_dfa(d: &Dfa, w: &[usize]) -> bool {
    let mut q = d.initial;
    for &letter in w {
        assert!(
            letter >= 1 && letter <= d.alphabet,
            "letter {letter} outside alphabet 1..={}",
            d.alphabet
        );
        q = d.step(q, letter);
    }
    d.accepting.contains(&q)
}

/// Two-state automaton tracking the parity of occurrences of one letter:
/// state 1 = seen an even number so far, state 2 = odd.
pub fn parity_dfa(letter: usize, alphabet: usize, accept_odd: bool) -> Dfa {
    assert!(letter >= 1 && letter <= alphabet);
    Dfa {
        alphabet,
        states: 2,
        initial: 1,
        accepting: vec![if accept_odd { 2 } else { 1 }],
        delta: (1..=alphabet)
            .map(|l| if l == letter { vec![2, 1] } else { vec![1, 2] })
            .collect(),
    }
}

/// The semantic recognizer of a DFA's language: base = the state set, and
/// a word-typed value is accepted when applying it to the transition
/// functions and the initial state lands in an accepting state.
pub fn dfa_to_recognizer(d: &Dfa) -> Result<SemRecognizer, EncodingError> {
    d.validate()?;
    let states = FinDomain::base(d.states as Card, DEFAULT_MAX_DOMAIN)?;
    let subject = church_type(d.alphabet);
    let dfa = d.clone();
    let dom = states.clone();
    let pred = move |v: &SemValue| -> Result<bool, FinsemError> {
        let letters: Vec<SemValue> = (1..=dfa.alphabet)
            .map(|l| {
                let dom = dom.clone();
                let dfa = dfa.clone();
                SemValue::Fun(Rc::new(move |q: &SemValue| {
                    let q = materialize(q, &dom).expect("state atom");
                    let next = dfa.step(q.index() as usize, l);
                    SemValue::Atom(elem_at(&dom, next as Card).expect("state in range"))
                }))
            })
            .collect();
        let bundle = letters
            .into_iter()
            .rev()
            .reduce(|rest, first| SemValue::Pair(Rc::new(first), Rc::new(rest)))
            .expect("non-empty alphabet");
        let start = SemValue::Atom(elem_at(&dom, dfa.initial as Card)?);
        let out = apply_value(&apply_value(v, &bundle), &start);
        let q = materialize(&out, &dom)?;
        Ok(dfa.accepting.contains(&(q.index() as usize)))
    };
    Ok(SemRecognizer::from_value_predicate(
        subject,
        states,
        "dfa",
        Rc::new(pred),
    ))
}

// ---------------------------------------------------------------------
// Untyped terms
// ---------------------------------------------------------------------

/// The type that hosts encoded untyped terms:
/// `((o → o) → o) → (o → o → o) → o`. The first parameter interprets
/// abstraction, the second application.
pub fn untyped_terms_type() -> Ty {
    let o = base();
    arrow(
        arrow(arrow(o.clone(), o.clone()), o.clone()),
        arrow(arrow(o.clone(), arrow(o.clone(), o.clone())), o),
    )
}

fn check_scope(scope: usize, u: &UTerm) -> Result<(), EncodingError> {
    match u {
        UTerm::Var(i) => {
            if *i >= 1 && *i <= scope {
                Ok(())
            } else {
                Err(EncodingError::OutOfScope { index: *i, scope })
            }
        }
        UTerm::Abs(b) => check_scope(scope + 1, b),
        UTerm::App(f, a) => {
            check_scope(scope, f)?;
            check_scope(scope, a)
        }
    }
}

/// Encode an untyped term with `scope` variables in scope as a closed
/// typed term: `λl. λa. λx₁ … λx_scope. body`, where variables become the
/// matching binders, `Abs` becomes `l` applied to a fresh `o`-abstraction,
/// and `App` becomes `a` applied to both encodings.
pub fn encode_scoped(scope: usize, u: &UTerm) -> Result<Tm, EncodingError> {
    check_scope(scope, u)?;
    fn enc(depth: usize, u: &UTerm) -> Tm {
        match u {
            UTerm::Var(i) => var(i - 1),
            UTerm::Abs(b) => app(var(depth + 1), lam(base(), enc(depth + 1, b))),
            UTerm::App(f, a) => app(app(var(depth), enc(depth, f)), enc(depth, a)),
        }
    }
    let o = base();
    let mut t = enc(scope, u);
    for _ in 0..scope {
        t = lam(o.clone(), t);
    }
    t = lam(arrow(o.clone(), arrow(o.clone(), o.clone())), t);
    Ok(lam(arrow(arrow(o.clone(), o.clone()), o), t))
}

/// Recover the untyped term from any closed term of the encoding type.
pub fn decode_scoped(t: &Term) -> Result<UTm, EncodingError> {
    typecheck(t, &Vec::new(), &untyped_terms_type())?;
    let nf = normalize(t, &Vec::new())?;
    let body = match &*nf {
        Term::Lam(_, b) => match &**b {
            Term::Lam(_, c) => c.clone(),
            _ => return Err(EncodingError::NotAnEncoding("missing second binder".into())),
        },
        _ => return Err(EncodingError::NotAnEncoding("missing first binder".into())),
    };
    // Inside `depth` generated binders the abstraction parameter sits at
    // index depth + 1 and the application parameter at depth.
    fn dec(t: &Term, depth: usize) -> Result<UTm, EncodingError> {
        match t {
            Term::Var(k) if *k < depth => Ok(uvar(k + 1)),
            Term::App(f, arg) => match &**f {
                Term::Var(l) if *l == depth + 1 => match &**arg {
                    Term::Lam(_, b) => Ok(uabs(dec(b, depth + 1)?)),
                    _ => Err(EncodingError::NotAnEncoding(
                        "abstraction parameter applied to a non-binder".into(),
                    )),
                },
                Term::App(a, u) => match &**a {
                    Term::Var(l) if *l == depth => Ok(uapp(dec(u, depth)?, dec(arg, depth)?)),
                    _ => Err(EncodingError::NotAnEncoding("unexpected head".into())),
                },
                _ => Err(EncodingError::NotAnEncoding("unexpected application".into())),
            },
            _ => Err(EncodingError::NotAnEncoding("unexpected term shape".into())),
        }
    }
    dec(&body, 0)
}

/// Occurrences of de Bruijn variable `i` (1 = innermost binder).
pub fn occ(i: usize, u: &UTerm) -> usize {
    assert!(i >= 1, "variables are 1-based");
    match u {
        UTerm::Var(j) => (*j == i) as usize,
        UTerm::Abs(b) => occ(i + 1, b),
        UTerm::App(f, a) => occ(i, f) + occ(i, a),
    }
}

/// Affine in its bound variables: every binder's variable occurs at most
/// once in its body.
pub fn is_affine(u: &UTerm) -> bool {
    match u {
        UTerm::Var(_) => true,
        UTerm::Abs(b) => occ(1, b) <= 1 && is_affine(b),
        UTerm::App(f, a) => is_affine(f) && is_affine(a),
    }
}

// ---------------------------------------------------------------------
// The counting model
// ---------------------------------------------------------------------

/// Occurrence counts truncated at two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    Zero,
    One,
    Many,
}

impl Count {
    pub fn add(self, other: Count) -> Count {
        match (self, other) {
            (Count::Zero, x) | (x, Count::Zero) => x,
            _ => Count::Many,
        }
    }

    pub fn of(n: usize) -> Count {
        match n {
            0 => Count::Zero,
            1 => Count::One,
            _ => Count::Many,
        }
    }

    /// `n` copies of `self` added up (truncated multiplication).
    pub fn times(self, n: usize) -> Count {
        match (n, self) {
            (0, _) | (_, Count::Zero) => Count::Zero,
            (1, k) => k,
            _ => Count::Many,
        }
    }
}

/// A point of the counting model: occurrence count of the most recently
/// bound variable, and whether all abstractions so far were affine.
pub type QPoint = (Count, bool);

/// The 6-element base housing the counting model.
pub fn affine_base() -> FinDomain {
    FinDomain::base(6, DEFAULT_MAX_DOMAIN).expect("6 is within any sane bound")
}

/// Fixed flattening of `{0,1,many} × {⊤,⊥}` into indices 1..=6.
pub fn q_index(q: QPoint) -> Card {
    let c = match q.0 {
        Count::Zero => 1,
        Count::One => 2,
        Count::Many => 3,
    };
    if q.1 {
        c
    } else {
        c + 3
    }
}

pub fn q_unindex(i: Card) -> QPoint {
    let flag = i <= 3;
    let c = match (i - 1) % 3 {
        0 => Count::Zero,
        1 => Count::One,
        _ => Count::Many,
    };
    (c, flag)
}

fn q_atom(dom: &FinDomain, q: QPoint) -> SemValue {
    SemValue::Atom(elem_at(dom, q_index(q)).expect("index within 6"))
}

fn q_of(dom: &FinDomain, v: &SemValue) -> QPoint {
    q_unindex(materialize(v, dom).expect("counting-model atom").index())
}

/// The application interpretation: counts add (truncated), affineness
/// flags conjoin.
pub fn fapp_value(dom: &FinDomain) -> SemValue {
    let dom = dom.clone();
    SemValue::Fun(Rc::new(move |x: &SemValue| {
        let (kx, bx) = q_of(&dom, x);
        let dom = dom.clone();
        SemValue::Fun(Rc::new(move |y: &SemValue| {
            let (ky, by) = q_of(&dom, y);
            q_atom(&dom, (kx.add(ky), bx && by))
        }))
    }))
}

/// The abstraction interpretation: probe the body with count 0 for the
/// outer variables, and additionally with count 1 to see whether the
/// fresh variable is used more than once.
pub fn fabs_value(dom: &FinDomain) -> SemValue {
    let dom = dom.clone();
    SemValue::Fun(Rc::new(move |g: &SemValue| {
        let at_zero = q_of(&dom, &apply_value(g, &q_atom(&dom, (Count::Zero, true))));
        let at_one = q_of(&dom, &apply_value(g, &q_atom(&dom, (Count::One, true))));
        q_atom(&dom, (at_zero.0, at_zero.1 && at_one.0 != Count::Many))
    }))
}

/// Direct inductive semantics of a scoped term in the counting model;
/// `env[i - 1]` is the point assigned to de Bruijn variable `i`
/// (innermost first).
pub fn scoped_semantics(u: &UTerm, env: &[QPoint]) -> QPoint {
    match u {
        UTerm::Var(i) => env[*i - 1],
        UTerm::App(f, a) => {
            let (kf, bf) = scoped_semantics(f, env);
            let (ka, ba) = scoped_semantics(a, env);
            (kf.add(ka), bf && ba)
        }
        UTerm::Abs(b) => {
            let probe = |q: QPoint| {
                let mut inner = Vec::with_capacity(env.len() + 1);
                inner.push(q);
                inner.extend_from_slice(env);
                scoped_semantics(b, &inner)
            };
            let at_zero = probe((Count::Zero, true));
            let at_one = probe((Count::One, true));
            (at_zero.0, at_zero.1 && at_one.0 != Count::Many)
        }
    }
}

/// The factored evaluation: encode the scoped term, evaluate it in the
/// finite model, then apply the two constructor interpretations and the
/// scope points outermost-first. Agrees with [`scoped_semantics`].
pub fn encoded_semantics(
    scope: usize,
    u: &UTerm,
    env: &[QPoint],
) -> Result<QPoint, EncodingError> {
    assert_eq!(env.len(), scope);
    let t = encode_scoped(scope, u)?;
    let dom = affine_base();
    let mut v = eval_value(&t, &[]);
    v = apply_value(&v, &fabs_value(&dom));
    v = apply_value(&v, &fapp_value(&dom));
    for q in env.iter().rev() {
        v = apply_value(&v, &q_atom(&dom, *q));
    }
    Ok(q_of(&dom, &v))
}

/// The recognizer of affine untyped terms: base = the 6-point counting
/// model; an encoded term is accepted when its evaluation, applied to the
/// abstraction and application interpretations, is exactly (0, ⊤).
pub fn affine_recognizer() -> SemRecognizer {
    let dom = affine_base();
    let pred = {
        let dom = dom.clone();
        move |v: &SemValue| -> Result<bool, FinsemError> {
            let out = apply_value(&apply_value(v, &fabs_value(&dom)), &fapp_value(&dom));
            Ok(materialize(&out, &dom)?.index() == q_index((Count::Zero, true)))
        }
    };
    SemRecognizer::from_value_predicate(untyped_terms_type(), dom, "affine", Rc::new(pred))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_scoped_terms;
    use crate::parse::{parse_term, parse_untyped};
    use crate::print::print_term;

    #[test]
    fn word_encoding_matches_the_expected_display() {
        let t = encode_word(&[1, 2, 2, 1, 2], 2).unwrap();
        assert_eq!(
            print_term(&t),
            "\\(x0: (o -> o)^2). \\(x1: o). x0.2 (x0.1 (x0.2 (x0.2 (x0.1 x1))))"
        );
        let empty = encode_word(&[], 2).unwrap();
        assert_eq!(print_term(&empty), "\\(x0: (o -> o)^2). \\(x1: o). x1");
    }

    #[test]
    fn words_round_trip_exhaustively() {
        for alphabet in 1..=3usize {
            let mut words: Vec<Word> = vec![vec![]];
            for len in 1..=4 {
                let mut next = Vec::new();
                for w in words.iter().filter(|w| w.len() == len - 1) {
                    for l in 1..=alphabet {
                        let mut w = w.clone();
                        w.push(l);
                        next.push(w);
                    }
                }
                words.extend(next);
            }
            for w in &words {
                let t = encode_word(w, alphabet).unwrap();
                assert_eq!(&decode_word(&t, alphabet).unwrap(), w);
            }
        }
    }

    #[test]
    fn decoding_normalizes_first() {
        // βη-equal to the word 21 but written as a redex.
        let t = parse_term(
            "(\\(w: (o -> o)^2 -> o -> o). \\(a: (o -> o)^2). \\(e: o). a.1 (w a e)) \
             (\\(a: (o -> o)^2). \\(e: o). a.2 e)",
        )
        .unwrap();
        assert_eq!(decode_word(&t, 2).unwrap(), vec![2, 1]);
    }

    #[test]
    fn rejects_letters_outside_the_alphabet() {
        assert!(matches!(
            encode_word(&[1, 3], 2),
            Err(EncodingError::LetterRange { letter: 3, alphabet: 2 })
        ));
        assert!(matches!(encode_word(&[1], 0), Err(EncodingError::EmptyAlphabet)));
    }

    #[test]
    fn parity_automata_count_letters() {
        let even_ones = parity_dfa(1, 2, false);
        let odd_twos = parity_dfa(2, 2, true);
        even_ones.validate().unwrap();
        odd_twos.validate().unwrap();
        let w = vec![1, 2, 2, 1, 2];
        assert!(run_dfa(&even_ones, &w)); // two 1s
        assert!(run_dfa(&odd_twos, &w)); // three 2s
        assert!(run_dfa(&even_ones, &[])); // zero is even
        assert!(!run_dfa(&odd_twos, &[]));
    }

    #[test]
    fn dfa_json_round_trips_and_validates() {
        let d = parity_dfa(1, 2, false);
        let text = serde_json::to_string(&d).unwrap();
        let back: Dfa = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
        let broken = Dfa {
            delta: vec![vec![3, 1], vec![1, 2]],
            ..d
        };
        assert!(matches!(broken.validate(), Err(EncodingError::BadDfa(_))));
    }

    #[test]
    fn scoped_encoding_matches_the_expected_displays() {
        // λx. x x
        let self_app = parse_untyped("\\x. x x").unwrap();
        let t = encode_scoped(0, &self_app).unwrap();
        assert_eq!(
            print_term(&t),
            "\\(x0: (o -> o) -> o). \\(x1: o -> o -> o). x0 (\\(x2: o). x1 x2 x2)"
        );
        // (λx. x x) (λx. x x)
        let omega = parse_untyped("(\\x. x x) (\\x. x x)").unwrap();
        let t = encode_scoped(0, &omega).unwrap();
        assert_eq!(
            print_term(&t),
            "\\(x0: (o -> o) -> o). \\(x1: o -> o -> o). \
             x1 (x0 (\\(x2: o). x1 x2 x2)) (x0 (\\(x2: o). x1 x2 x2))"
        );
    }

    #[test]
    fn scoped_terms_round_trip() {
        for size in 1..=5 {
            for u in enumerate_scoped_terms(0, size) {
                let t = encode_scoped(0, &u).unwrap();
                assert_eq!(decode_scoped(&t).unwrap(), u, "{u}");
            }
        }
    }

    #[test]
    fn scope_violations_are_reported() {
        let u = uabs(uvar(2)); // refers one binder past the abstraction
        assert!(matches!(
            encode_scoped(0, &u),
            Err(EncodingError::OutOfScope { index: 2, scope: 1 })
        ));
    }

    #[test]
    fn occurrence_counting_follows_the_binders() {
        let u = parse_untyped("\\x. x x").unwrap();
        if let UTerm::Abs(b) = &*u {
            assert_eq!(occ(1, b), 2);
        } else {
            unreachable!()
        }
        // occ across an inner abstraction: in λy. x, the outer x is index 2.
        let v = parse_untyped("\\x. \\y. x").unwrap();
        if let UTerm::Abs(b) = &*v {
            assert_eq!(occ(1, b), 1); // inside λy. x the x is one binder out
        } else {
            unreachable!()
        }
    }

    #[test]
    fn affineness_matches_occurrence_counts() {
        for (src, expect) in [
            ("\\x. x", true),
            ("\\x. x x", false),
            ("\\f. (\\x. x x) (\\x. f (x x))", false),
            ("\\f. \\x. f x", true),
            ("\\f. \\x. f (f x)", false),
        ] {
            assert_eq!(is_affine(&parse_untyped(src).unwrap()), expect, "{src}");
        }
    }

    /// Oracle for the counting model's first coordinate: the truncated sum
    /// of occurrence counts weighted by the assigned counts.
    #[test]
    fn first_coordinate_is_the_weighted_occurrence_sum() {
        let counts = [Count::Zero, Count::One, Count::Many];
        for scope in 0..=2usize {
            for size in 1..=4 {
                for u in enumerate_scoped_terms(scope, size) {
                    let mut assignments = vec![Vec::new()];
                    for _ in 0..scope {
                        assignments = assignments
                            .into_iter()
                            .flat_map(|a: Vec<Count>| {
                                counts.iter().map(move |k| {
                                    let mut a = a.clone();
                                    a.push(*k);
                                    a
                                })
                            })
                            .collect();
                    }
                    for ks in assignments {
                        let env: Vec<QPoint> = ks.iter().map(|k| (*k, true)).collect();
                        let got = scoped_semantics(&u, &env).0;
                        let expected = (1..=scope)
                            .map(|i| ks[i - 1].times(occ(i, &u)))
                            .fold(Count::Zero, Count::add);
                        assert_eq!(got, expected, "{u} with {ks:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn second_coordinate_detects_affineness() {
        for size in 1..=6 {
            for u in enumerate_scoped_terms(0, size) {
                let (_, flag) = scoped_semantics(&u, &[]);
                assert_eq!(flag, is_affine(&u), "{u}");
            }
        }
    }

    #[test]
    fn encoded_evaluation_factors_through_the_direct_semantics() {
        let counts = [Count::Zero, Count::One, Count::Many];
        for scope in 0..=2usize {
            for size in 1..=3 {
                for u in enumerate_scoped_terms(scope, size) {
                    // A couple of representative assignments per scope.
                    let picks: Vec<Vec<QPoint>> = if scope == 0 {
                        vec![vec![]]
                    } else {
                        counts
                            .iter()
                            .map(|k| (0..scope).map(|i| (counts[(i + 1) % 3].add(*k), i % 2 == 0)).collect())
                            .collect()
                    };
                    for env in picks {
                        assert_eq!(
                            encoded_semantics(scope, &u, &env).unwrap(),
                            scoped_semantics(&u, &env),
                            "{u}"
                        );
                    }
                }
            }
        }
    }
}
