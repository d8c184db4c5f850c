//! The acceptance batteries: each check ties one of the library's
//! headline guarantees to a bounded-exhaustive or seeded-random
//! experiment and reports a structured verdict instead of panicking,
//! so the same battery backs both the `acceptance` test target and
//! `reglam verify`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compiler::{
    fin_map_term, fin_type, fun_collapse, fun_expand, index_width, pi_term, prod_collapse,
    prod_expand, sem_to_syn, syn_to_sem, CompileError, CompileOptions, DEFAULT_MAX_WIDTH,
};
use crate::encodings::{
    affine_recognizer, church_type, dfa_to_recognizer, encode_scoped, encode_word, is_affine, occ,
    parity_dfa, run_dfa, scoped_semantics, Count, QPoint,
};
use crate::enumerate::{enumerate_normal_terms, enumerate_scoped_terms};
use crate::finsem::{Card, FinDomain, DEFAULT_MAX_DOMAIN};
use crate::logrel::{
    fundamental_lemma_check, membership_transfer_check, partial_surjection_closure_check,
    FinRelation, LogrelError, DEFAULT_MAX_PAIRS,
};
use crate::normalize::beta_eta_equal;
use crate::recognizers::{
    bool_id_term, bool_type, equivalence_on, even1s_odd2s_decider, false_term, not_term,
    true_term, Recognizer, SemRecognizer, SynRecognizer,
};
use crate::sample::{random_partial_surjection, sample_term, sample_terms};
use crate::syntax::{app, arrow, base, lam, pair, prod, unit_ty, var, Tm, Ty};

/// One named verdict with a human-readable account of what ran.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Size-guard overrides threaded into the batteries.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub max_domain: Card,
    pub max_pairs: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_domain: DEFAULT_MAX_DOMAIN,
            max_pairs: DEFAULT_MAX_PAIRS,
        }
    }
}

fn run(name: &'static str, body: impl FnOnce() -> Result<String, String>) -> Check {
    match body() {
        Ok(detail) => Check {
            name,
            passed: true,
            detail,
        },
        Err(detail) => Check {
            name,
            passed: false,
            detail,
        },
    }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// All words over `{1..alphabet}` of length at most `max_len`, shortest
/// first.
fn words_up_to(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 1..=alphabet {
                let mut w2 = w.clone();
                w2.push(a);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn encoded_words(alphabet: usize, max_len: usize) -> Result<Vec<(Vec<usize>, Tm)>, String> {
    words_up_to(alphabet, max_len)
        .into_iter()
        .map(|w| encode_word(&w, alphabet).map(|t| (w, t)).map_err(s))
        .collect()
}

// ---------------------------------------------------------------------
// 1. The two-automaton product language, recognized semantically
// ---------------------------------------------------------------------

/// The intersection of the two parity recognizers ("even number of 1s"
/// and "odd number of 2s") agrees with running both automata, on every
/// word of length at most 8.
pub fn dfa_product_language(_opts: &VerifyOptions) -> Check {
    run("dfa-product recognizer", || {
        let even_ones = parity_dfa(1, 2, false);
        let odd_twos = parity_dfa(2, 2, true);
        let r = dfa_to_recognizer(&even_ones)
            .map_err(s)?
            .intersect(&dfa_to_recognizer(&odd_twos).map_err(s)?)
            .map_err(s)?;
        let words = encoded_words(2, 8)?;
        for (w, t) in &words {
            let want = run_dfa(&even_ones, w) && run_dfa(&odd_twos, w);
            let got = r.accepts(t).map_err(s)?;
            if got != want {
                return Err(format!(
                    "word {w:?}: recognizer said {got}, the automata say {want}"
                ));
            }
        }
        Ok(format!(
            "{} words of length ≤ 8 agree with the product automaton",
            words.len()
        ))
    })
}

// ---------------------------------------------------------------------
// 2. The worked two-letter decider
// ---------------------------------------------------------------------

/// The hand-written decider (run the word over `Bool` with letter 1 ↦
/// `not` from `true` and letter 2 ↦ `not` from `false`, conjoined)
/// decides the same language, on every word of length at most 6.
pub fn worked_decider_language(_opts: &VerifyOptions) -> Check {
    run("worked decider", || {
        let r = even1s_odd2s_decider();
        let even_ones = parity_dfa(1, 2, false);
        let odd_twos = parity_dfa(2, 2, true);
        let words = encoded_words(2, 6)?;
        for (w, t) in &words {
            let want = run_dfa(&even_ones, w) && run_dfa(&odd_twos, w);
            let got = r.accepts(t).map_err(s)?;
            if got != want {
                return Err(format!(
                    "word {w:?}: decider said {got}, the automata say {want}"
                ));
            }
        }
        Ok(format!(
            "{} words of length ≤ 6 agree with the product automaton",
            words.len()
        ))
    })
}

// ---------------------------------------------------------------------
// 3. The affine-term recognizer over the counting model
// ---------------------------------------------------------------------

fn count_assignments(scope: usize) -> Vec<Vec<Count>> {
    let counts = [Count::Zero, Count::One, Count::Many];
    let mut out = vec![Vec::new()];
    for _ in 0..scope {
        out = out
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
    out
}

/// Over every scoped term with at most 7 constructors (scopes 0–2): the
/// first coordinate of the counting semantics is the truncated weighted
/// occurrence sum under every `{0,1,∞}` assignment, the second
/// coordinate at the all-zero assignment is exactly affineness, and for
/// closed terms the recognizer verdict on the typed encoding matches.
pub fn affine_counting_model(_opts: &VerifyOptions) -> Check {
    run("affine counting model", || {
        let rec = affine_recognizer();
        let mut terms = 0usize;
        let mut identities = 0usize;
        let mut closed = 0usize;
        for scope in 0..=2usize {
            let assignments = count_assignments(scope);
            for u in enumerate_scoped_terms(scope, 7) {
                terms += 1;
                for ks in &assignments {
                    let env: Vec<QPoint> = ks.iter().map(|k| (*k, true)).collect();
                    let got = scoped_semantics(&u, &env).0;
                    let expected = (1..=scope)
                        .map(|i| ks[i - 1].times(occ(i, &u)))
                        .fold(Count::Zero, Count::add);
                    if got != expected {
                        return Err(format!(
                            "{u} under {ks:?}: counted {got:?}, occurrences say {expected:?}"
                        ));
                    }
                    identities += 1;
                }
                let zero_env: Vec<QPoint> = vec![(Count::Zero, true); scope];
                let flag = scoped_semantics(&u, &zero_env).1;
                if flag != is_affine(&u) {
                    return Err(format!(
                        "{u}: flag coordinate {flag} but affineness {}",
                        is_affine(&u)
                    ));
                }
                if scope == 0 {
                    let t = encode_scoped(0, &u).map_err(s)?;
                    let verdict = rec.accepts(&t).map_err(s)?;
                    if verdict != is_affine(&u) {
                        return Err(format!(
                            "{u}: recognizer said {verdict}, affineness {}",
                            is_affine(&u)
                        ));
                    }
                    closed += 1;
                }
            }
        }
        Ok(format!(
            "{terms} scoped terms, {identities} weighted-sum identities, {closed} closed verdicts"
        ))
    })
}

// ---------------------------------------------------------------------
// 4. Reading deciders as finite-model recognizers
// ---------------------------------------------------------------------

fn agree_on<I>(syn: SynRecognizer, terms: I, what: &str, opts: &VerifyOptions) -> Result<(), String>
where
    I: IntoIterator<Item = Tm>,
{
    let sem = syn_to_sem(&syn, opts.max_domain).map_err(s)?;
    match equivalence_on(&Recognizer::Syn(syn), &Recognizer::Sem(sem), terms).map_err(s)? {
        None => Ok(()),
        Some(t) => Err(format!(
            "{what}: translated recognizer disagrees at {}",
            crate::print::print_term(&t)
        )),
    }
}

/// `syn_to_sem` preserves the language: checked for the worked decider
/// and for five seeded random deciders, against bounded-exhaustive term
/// streams.
pub fn decider_to_model_translation(opts: &VerifyOptions) -> Check {
    run("decider-to-model translation", || {
        let words6: Vec<Tm> = encoded_words(2, 6)?.into_iter().map(|(_, t)| t).collect();
        agree_on(
            even1s_odd2s_decider(),
            words6.iter().cloned(),
            "worked decider",
            opts,
        )?;
        let mut rng = ChaCha8Rng::seed_from_u64(2026);
        let b = bool_type();
        for i in 0..3 {
            let subject = church_type(2);
            let decider_ty = arrow(subject.subst_base(&b), b.clone());
            let decider = sample_term(&decider_ty, 8, &mut rng);
            let syn = SynRecognizer::new(subject, b.clone(), decider).map_err(s)?;
            agree_on(
                syn,
                words6.iter().cloned(),
                &format!("random two-letter decider #{i}"),
                opts,
            )?;
        }
        for (name, subject) in [
            ("unary words", church_type(1)),
            ("boolean pairs", prod(b.clone(), b.clone())),
        ] {
            let decider_ty = arrow(subject.subst_base(&b), b.clone());
            let decider = sample_term(&decider_ty, 8, &mut rng);
            let syn = SynRecognizer::new(subject.clone(), b.clone(), decider).map_err(s)?;
            let stream = enumerate_normal_terms(&subject, 12);
            if stream.is_empty() {
                return Err(format!("{name}: empty term stream"));
            }
            agree_on(syn, stream, &format!("random decider at {name}"), opts)?;
        }
        Ok("worked decider on 127 words; 5 random deciders on their streams".into())
    })
}

// ---------------------------------------------------------------------
// 5. Compiling finite-model recognizers to deciders
// ---------------------------------------------------------------------

/// `sem_to_syn` preserves the language: checked for the unary
/// even-length automaton at the word type (index width 256) and for
/// accept-all / reject-all / even-index predicates at two small types.
pub fn model_to_decider_translation(opts: &VerifyOptions) -> Check {
    run("model-to-decider translation", || {
        let copts = CompileOptions {
            max_width: DEFAULT_MAX_WIDTH,
            max_domain: opts.max_domain,
        };
        let even_len = parity_dfa(1, 1, false);
        let sem = dfa_to_recognizer(&even_len).map_err(s)?;
        let width = index_width(&church_type(1), 2, DEFAULT_MAX_WIDTH).map_err(s)?;
        let syn = sem_to_syn(&sem, &copts).map_err(s)?;
        for len in 0..=8usize {
            let t = encode_word(&vec![1; len], 1).map_err(s)?;
            let want = run_dfa(&even_len, &vec![1; len]);
            if syn.accepts(&t).map_err(s)? != want || sem.accepts(&t).map_err(s)? != want {
                return Err(format!("unary word of length {len}: verdicts split"));
            }
        }
        let two = FinDomain::base(2, opts.max_domain).map_err(s)?;
        let mut small = 0usize;
        for subject in [bool_type(), arrow(base(), base())] {
            let w = index_width(&subject, 2, DEFAULT_MAX_WIDTH).map_err(s)?;
            let evens: BTreeSet<Card> = (1..=w).filter(|i| i % 2 == 0).collect();
            let preds = [
                SemRecognizer::accept_all(subject.clone(), two.clone()),
                SemRecognizer::reject_all(subject.clone(), two.clone()),
                SemRecognizer::from_accepting_indices(
                    subject.clone(),
                    two.clone(),
                    "even-index",
                    evens,
                    opts.max_domain,
                )
                .map_err(s)?,
            ];
            let mut stream = enumerate_normal_terms(&subject, 12);
            stream.extend(sample_terms(&subject, 10, 6, 5));
            for r in preds {
                let compiled = sem_to_syn(&r, &copts).map_err(s)?;
                if let Some(t) = equivalence_on(
                    &Recognizer::Sem(r),
                    &Recognizer::Syn(compiled),
                    stream.iter().cloned(),
                )
                .map_err(s)?
                {
                    return Err(format!(
                        "predicate at {}: compiled decider disagrees at {}",
                        crate::print::print_type(&subject),
                        crate::print::print_term(&t)
                    ));
                }
                small += 1;
            }
        }
        Ok(format!(
            "even-length automaton at width {width}; {small} predicates at two small types"
        ))
    })
}

// ---------------------------------------------------------------------
// 6. The index combinators
// ---------------------------------------------------------------------

fn all_maps(k: u64, k_prime: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|f: Vec<u64>| {
                (1..=k_prime).map(move |j| {
                    let mut f = f.clone();
                    f.push(j);
                    f
                })
            })
            .collect();
    }
    out
}

fn expect_eq(a: &Tm, b: &Tm, what: String) -> Result<(), String> {
    if beta_eta_equal(a, b, &Vec::new()).map_err(s)? {
        Ok(())
    } else {
        Err(what)
    }
}

/// The pairing/tabulation combinators compute the canonical indices and
/// the index maps compose functorially, exhaustively for sides ≤ 3.
pub fn index_combinators(_opts: &VerifyOptions) -> Check {
    run("index combinators", || {
        const MAX: u64 = DEFAULT_MAX_WIDTH;
        let mut identities = 0usize;
        for k in 1..=3u64 {
            for k_prime in 1..=3u64 {
                let m = k * k_prime;
                let collapse = prod_collapse(k, k_prime, MAX).map_err(s)?;
                let expand = prod_expand(k, k_prime, MAX).map_err(s)?;
                for i in 1..=k {
                    for j in 1..=k_prime {
                        let idx = (i - 1) * k_prime + j;
                        expect_eq(
                            &app(collapse.clone(), pair(pi_term(i, k), pi_term(j, k_prime))),
                            &pi_term(idx, m),
                            format!("pair ({i},{j}) of [{k}]×[{k_prime}] collapses wrong"),
                        )?;
                        expect_eq(
                            &app(expand.clone(), pi_term(idx, m)),
                            &pair(pi_term(i, k), pi_term(j, k_prime)),
                            format!("index {idx} of [{m}] expands wrong"),
                        )?;
                        identities += 2;
                    }
                }
                let mw = k_prime.pow(k as u32);
                let fcollapse = fun_collapse(k, k_prime, MAX).map_err(s)?;
                let fexpand = fun_expand(k, k_prime, MAX).map_err(s)?;
                for f in all_maps(k, k_prime) {
                    let idx = 1 + f
                        .iter()
                        .enumerate()
                        .map(|(j, &v)| (v - 1) * k_prime.pow((k - 1 - j as u64) as u32))
                        .sum::<u64>();
                    expect_eq(
                        &app(fcollapse.clone(), fin_map_term(&f, k_prime)),
                        &pi_term(idx, mw),
                        format!("table {f:?} collapses wrong"),
                    )?;
                    identities += 1;
                    for j in 1..=k {
                        expect_eq(
                            &app(app(fexpand.clone(), pi_term(idx, mw)), pi_term(j, k)),
                            &pi_term(f[(j - 1) as usize], k_prime),
                            format!("index {idx} expanded at {j} is not {f:?}"),
                        )?;
                        identities += 1;
                    }
                }
            }
            expect_eq(
                &fin_map_term(&(1..=k).collect::<Vec<_>>(), k),
                &lam(fin_type(k), var(0)),
                format!("the identity table on [{k}] is not the identity"),
            )?;
            identities += 1;
        }
        let mut compositions = 0usize;
        for k in 1..=3u64 {
            for k1 in 1..=3u64 {
                for k2 in 1..=3u64 {
                    for f in all_maps(k, k1) {
                        for g in all_maps(k1, k2) {
                            let gf: Vec<u64> =
                                f.iter().map(|&i| g[(i - 1) as usize]).collect();
                            let composed = lam(
                                fin_type(k),
                                app(
                                    fin_map_term(&g, k2),
                                    app(fin_map_term(&f, k1), var(0)),
                                ),
                            );
                            expect_eq(
                                &composed,
                                &fin_map_term(&gf, k2),
                                format!("{g:?} ∘ {f:?} is not the composite table"),
                            )?;
                            compositions += 1;
                        }
                    }
                }
            }
        }
        Ok(format!(
            "{identities} index identities, {compositions} functoriality composites"
        ))
    })
}

// ---------------------------------------------------------------------
// 7. Logical relations: fundamental lemma, closure, verdict transfer
// ---------------------------------------------------------------------

fn all_partial_surjections(max_side: u64) -> Vec<FinRelation> {
    let mut out = Vec::new();
    for l in 1..=max_side {
        for r in 1..=l {
            let total = (r + 1).pow(l as u32);
            for code in 0..total {
                let mut c = code;
                let mut pairs = BTreeSet::new();
                let mut hit = vec![false; r as usize];
                for i in 1..=l {
                    let v = c % (r + 1);
                    c /= r + 1;
                    if v > 0 {
                        pairs.insert((i, v));
                        hit[(v - 1) as usize] = true;
                    }
                }
                if hit.iter().all(|&h| h) {
                    out.push(
                        FinRelation::on_cardinals(l, r, pairs)
                            .expect("pairs lie within the stated sizes"),
                    );
                }
            }
        }
    }
    out
}

fn types_to_depth(depth: usize) -> Vec<Ty> {
    let mut all: Vec<Ty> = vec![base(), unit_ty()];
    for _ in 0..depth {
        let prev = all.clone();
        for a in &prev {
            for b in &prev {
                for t in [arrow(a.clone(), b.clone()), prod(a.clone(), b.clone())] {
                    if !all.contains(&t) {
                        all.push(t);
                    }
                }
            }
        }
    }
    all
}

/// Every sampled closed term is related to itself over random
/// partial-surjection bases; lifting preserves partial surjections for
/// every base relation with sides ≤ 3 at every type of depth ≤ 2 (the
/// size guard may skip an instance, never fail one); and recognizer
/// verdicts transfer along the lifted point relation.
pub fn logical_relations(opts: &VerifyOptions) -> Check {
    run("logical relations", || {
        let pool = [
            bool_type(),
            arrow(base(), base()),
            arrow(base(), arrow(base(), base())),
            church_type(1),
            church_type(2),
            prod(arrow(base(), base()), unit_ty()),
            arrow(prod(base(), unit_ty()), base()),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let bases: Vec<FinRelation> = (0..10)
            .map(|_| {
                let l = rng.gen_range(1..=3u64);
                let r = rng.gen_range(1..=l);
                random_partial_surjection(l, r, &mut rng)
            })
            .collect();
        let mut self_related = 0usize;
        for i in 0..200 {
            let t = sample_term(&pool[i % pool.len()], 6, &mut rng);
            for b in &bases {
                if !fundamental_lemma_check(&t, b, opts.max_pairs).map_err(s)? {
                    return Err(format!(
                        "{} is not self-related over {:?}",
                        crate::print::print_term(&t),
                        b.pairs()
                    ));
                }
                self_related += 1;
            }
        }

        let rels = all_partial_surjections(3);
        if rels.len() != 31 {
            return Err(format!(
                "expected 31 partial surjections with sides ≤ 3, enumerated {}",
                rels.len()
            ));
        }
        let tys = types_to_depth(2);
        let mut closed = 0usize;
        let mut skipped = 0usize;
        for rel in &rels {
            for ty in &tys {
                match partial_surjection_closure_check(ty, rel, opts.max_pairs) {
                    Ok(true) => closed += 1,
                    Ok(false) => {
                        return Err(format!(
                            "lifting {:?} through {} is not a partial surjection",
                            rel.pairs(),
                            crate::print::print_type(ty)
                        ))
                    }
                    Err(LogrelError::TooManyPairs { .. }) | Err(LogrelError::Overflow) => {
                        skipped += 1
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
        }
        if closed < 2000 {
            return Err(format!(
                "only {closed} closure instances fit the guards; the battery is too thin"
            ));
        }

        let two = FinDomain::base(2, opts.max_domain).map_err(s)?;
        let evens: BTreeSet<Card> = (1..=16).filter(|i| i % 2 == 0).collect();
        let mut transfers = 0usize;
        let mut battery: Vec<(SemRecognizer, Vec<Tm>)> = Vec::new();
        let mut bool_terms = enumerate_normal_terms(&bool_type(), 12);
        bool_terms.extend(sample_terms(&bool_type(), 5, 6, 17));
        battery.push((
            SemRecognizer::from_accepting_indices(
                bool_type(),
                two.clone(),
                "even-index",
                evens,
                opts.max_domain,
            )
            .map_err(s)?,
            bool_terms,
        ));
        battery.push((
            SemRecognizer::accept_all(arrow(base(), base()), two.clone()),
            enumerate_normal_terms(&arrow(base(), base()), 12),
        ));
        let unary: Vec<Tm> = (0..=4)
            .map(|len| encode_word(&vec![1; len], 1).map_err(s))
            .collect::<Result<_, _>>()?;
        battery.push((
            dfa_to_recognizer(&parity_dfa(1, 1, false)).map_err(s)?,
            unary,
        ));
        for (r, terms) in &battery {
            for t in terms {
                if !membership_transfer_check(r, t, opts.max_pairs).map_err(s)? {
                    return Err(format!(
                        "verdict does not transfer for {}",
                        crate::print::print_term(t)
                    ));
                }
                transfers += 1;
            }
        }
        Ok(format!(
            "{self_related} self-relation checks; {closed} closure instances \
             ({skipped} guard-skipped); {transfers} verdict transfers"
        ))
    })
}

// ---------------------------------------------------------------------
// 8. The boolean algebra of recognizers
// ---------------------------------------------------------------------

/// Complement/intersection/union satisfy the boolean-algebra laws
/// pointwise on every word of length ≤ 6, for both recognizer kinds.
pub fn recognizer_boolean_algebra(opts: &VerifyOptions) -> Check {
    run("boolean algebra", || {
        let words: Vec<Tm> = encoded_words(2, 6)?.into_iter().map(|(_, t)| t).collect();
        let a = dfa_to_recognizer(&parity_dfa(1, 2, false)).map_err(s)?;
        let b = dfa_to_recognizer(&parity_dfa(2, 2, true)).map_err(s)?;
        let c = dfa_to_recognizer(&parity_dfa(2, 2, false)).map_err(s)?;
        let one = FinDomain::base(1, opts.max_domain).map_err(s)?;
        let top = SemRecognizer::accept_all(church_type(2), one.clone());
        let bot = SemRecognizer::reject_all(church_type(2), one);
        let ix = |x: &SemRecognizer, y: &SemRecognizer| x.intersect(y).map_err(s);
        let un = |x: &SemRecognizer, y: &SemRecognizer| x.union(y).map_err(s);
        let laws: Vec<(&str, SemRecognizer, SemRecognizer)> = vec![
            ("double complement", a.complement().complement(), a.clone()),
            (
                "de morgan ∩",
                ix(&a, &b)?.complement(),
                un(&a.complement(), &b.complement())?,
            ),
            (
                "de morgan ∪",
                un(&a, &b)?.complement(),
                ix(&a.complement(), &b.complement())?,
            ),
            ("idempotent ∩", ix(&a, &a)?, a.clone()),
            ("idempotent ∪", un(&a, &a)?, a.clone()),
            ("commutative ∩", ix(&a, &b)?, ix(&b, &a)?),
            ("commutative ∪", un(&a, &b)?, un(&b, &a)?),
            ("associative ∩", ix(&ix(&a, &b)?, &c)?, ix(&a, &ix(&b, &c)?)?),
            ("associative ∪", un(&un(&a, &b)?, &c)?, un(&a, &un(&b, &c)?)?),
            ("absorption ∩", ix(&a, &un(&a, &b)?)?, a.clone()),
            ("absorption ∪", un(&a, &ix(&a, &b)?)?, a.clone()),
            (
                "distributive ∩/∪",
                ix(&a, &un(&b, &c)?)?,
                un(&ix(&a, &b)?, &ix(&a, &c)?)?,
            ),
            (
                "distributive ∪/∩",
                un(&a, &ix(&b, &c)?)?,
                ix(&un(&a, &b)?, &un(&a, &c)?)?,
            ),
            ("excluded middle", un(&a, &a.complement())?, top.clone()),
            ("contradiction", ix(&a, &a.complement())?, bot.clone()),
            ("unit ∩", ix(&a, &top)?, a.clone()),
            ("unit ∪", un(&a, &bot)?, a.clone()),
        ];
        let total = laws.len();
        for (name, lhs, rhs) in laws {
            if let Some(t) = equivalence_on(
                &Recognizer::Sem(lhs),
                &Recognizer::Sem(rhs),
                words.iter().cloned(),
            )
            .map_err(s)?
            {
                return Err(format!(
                    "{name} fails at {}",
                    crate::print::print_term(&t)
                ));
            }
        }

        // The same laws hold on the decider side; spot-check the
        // distinctive ones, plus the fact that the worked decider *is*
        // the intersection of its two parity halves.
        let half = |flip_first: bool| -> SynRecognizer {
            let subject = church_type(2);
            let bty = bool_type();
            let w_ty = subject.subst_base(&bty);
            let (l1, l2, start) = if flip_first {
                (not_term(), bool_id_term(), true_term())
            } else {
                (bool_id_term(), not_term(), false_term())
            };
            let decider = lam(w_ty, app(app(var(0), pair(l1, l2)), start));
            SynRecognizer::new(subject, bty, decider).expect("well-typed by construction")
        };
        let d1 = half(true);
        let d2 = half(false);
        let syn_laws: Vec<(&str, SynRecognizer, SynRecognizer)> = vec![
            (
                "syn double complement",
                d1.complement().complement(),
                d1.clone(),
            ),
            (
                "syn de morgan ∩",
                d1.intersect(&d2).map_err(s)?.complement(),
                d1.complement().union(&d2.complement()).map_err(s)?,
            ),
            (
                "syn worked intersection",
                d1.intersect(&d2).map_err(s)?,
                even1s_odd2s_decider(),
            ),
        ];
        let syn_total = syn_laws.len();
        for (name, lhs, rhs) in syn_laws {
            if let Some(t) = equivalence_on(
                &Recognizer::Syn(lhs),
                &Recognizer::Syn(rhs),
                words.iter().cloned(),
            )
            .map_err(s)?
            {
                return Err(format!(
                    "{name} fails at {}",
                    crate::print::print_term(&t)
                ));
            }
        }
        Ok(format!(
            "{total} model-side laws and {syn_total} decider-side laws on {} words",
            words.len()
        ))
    })
}

// ---------------------------------------------------------------------
// 9. The width guard on compilation
// ---------------------------------------------------------------------

/// Compiling the two-letter word type over a two-point base would need
/// 4^16 verdict entries; the guard must refuse with the offending width
/// rather than attempt it.
pub fn oversized_compilation_is_refused(_opts: &VerifyOptions) -> Check {
    run("width guard", || {
        let sem = dfa_to_recognizer(&parity_dfa(1, 2, false)).map_err(s)?;
        match sem_to_syn(&sem, &CompileOptions::default()) {
            Err(CompileError::TooWide { width, max, at }) => Ok(format!(
                "two-letter word subject needs width {width} > {max} at {at}; refused"
            )),
            Ok(_) => Err("compiled an instance that exceeds the width guard".into()),
            Err(e) => Err(format!("refused, but for the wrong reason: {e}")),
        }
    })
}

// ---------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------

type CheckFn = fn(&VerifyOptions) -> Check;

const SUITES: &[(&str, CheckFn)] = &[
    ("dfa", dfa_product_language),
    ("decider", worked_decider_language),
    ("affine", affine_counting_model),
    ("syn2sem", decider_to_model_translation),
    ("sem2syn", model_to_decider_translation),
    ("combinators", index_combinators),
    ("logrel", logical_relations),
    ("boolean", recognizer_boolean_algebra),
    ("guards", oversized_compilation_is_refused),
];

pub fn suite_names() -> Vec<&'static str> {
    let mut names = vec!["all"];
    names.extend(SUITES.iter().map(|(n, _)| *n));
    names
}

/// Run one named suite (or `"all"`). `None` for an unknown name.
pub fn suite(name: &str, opts: &VerifyOptions) -> Option<Vec<Check>> {
    if name == "all" {
        return Some(all_checks(opts));
    }
    SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| vec![f(opts)])
}

/// Every acceptance battery, in order.
pub fn all_checks(opts: &VerifyOptions) -> Vec<Check> {
    SUITES.iter().map(|(_, f)| f(opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_quick_batteries_pass() {
        let opts = VerifyOptions::default();
        for check in [
            dfa_product_language(&opts),
            worked_decider_language(&opts),
            index_combinators(&opts),
            oversized_compilation_is_refused(&opts),
        ] {
            assert!(check.passed, "{}: {}", check.name, check.detail);
        }
    }

    #[test]
    fn suites_are_addressable_by_name() {
        let opts = VerifyOptions::default();
        assert!(suite("guards", &opts).is_some());
        assert!(suite("no-such-suite", &opts).is_none());
        assert_eq!(suite_names().len(), 10);
    }

    #[test]
    fn partial_surjection_enumeration_is_complete() {
        let rels = all_partial_surjections(3);
        assert_eq!(rels.len(), 31);
        assert!(rels
            .iter()
            .all(crate::logrel::is_partial_surjection));
        assert_eq!(types_to_depth(2).len(), 202);
    }
}
