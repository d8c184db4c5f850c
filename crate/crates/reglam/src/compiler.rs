//! Translations between the two recognizer presentations.
//!
//! The working representation is `Fin k = oᵏ → o`, whose closed η-long
//! inhabitants are exactly the `k` projections — a type-level alphabet of
//! `k` symbols. Any function between such index sets is definable by a
//! term ([`fin_map_term`]), tuples of indices collapse to a single index
//! in mixed-radix style ([`prod_collapse`]/[`prod_expand`]), and function
//! spaces over them collapse by currying out one argument at a time
//! ([`fun_collapse`]/[`fun_expand`]). Stacking these along the type
//! structure yields, for every subject type `A` and cardinality `n`, a
//! pair of terms converting between `A{o:=Fin n}` and `Fin |⟦A⟧ₙ|`
//! ([`build_kit`]).
//!
//! [`sem_to_syn`] tabulates a semantic recognizer's verdicts over the
//! finitely many indices and composes that table, as a `fin_map_term`
//! into `Fin 2 = Bool`, with the kit's collapse direction. [`syn_to_sem`]
//! evaluates the decider itself over the two-point base and reads
//! acceptance off the resulting element. All index widths are computed
//! arithmetically before any term is built, so oversized instances fail
//! with the offending width instead of an exhausted allocator.

use crate::finsem::{
    apply_elem, denote_type, elem_at, eval_value, flatten_value, materialize, reflect,
    transport_value, Card, FinDomain, FinsemError, SemValue,
};
use crate::recognizers::{
    bool_type, true_term, RecognizerError, SemRecognizer, SynRecognizer,
};
use crate::syntax::{
    app, arrow, base, fst, lam, pair, pow, prod, select, snd, tuple, unit_tm, unit_ty, var,
    SimpleType, Tm, Ty,
};
use std::rc::Rc;

/// Widths are bounded by default at 2¹⁶ indices: collapse terms carry a
/// tuple entry per index, so anything larger is unusable as a term.
pub const DEFAULT_MAX_WIDTH: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompileError {
    #[error("index width {width} exceeds the bound {max} while sizing {at}")]
    TooWide { width: u64, max: u64, at: String },
    #[error("index width overflows u64 while sizing {at}")]
    Overflow { at: String },
    #[error("the recognizer spans distinct bases ({bases}); translate each leaf separately")]
    MultiBase { bases: String },
    #[error("recognizer: {0}")]
    Recognizer(String),
    #[error(transparent)]
    Finsem(#[from] FinsemError),
}

#[derive(Debug, Clone, Copy)]
pub struct CompileOptions {
    /// Bound on every index width appearing in generated terms.
    pub max_width: u64,
    /// Bound handed to the model side when tabulating verdicts.
    pub max_domain: Card,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            max_width: DEFAULT_MAX_WIDTH,
            max_domain: crate::finsem::DEFAULT_MAX_DOMAIN,
        }
    }
}

// ---------------------------------------------------------------------
// The index calculus
// ---------------------------------------------------------------------

/// `Fin k = oᵏ → o`. Requires `k ≥ 1`.
pub fn fin_type(k: u64) -> Ty {
    assert!(k >= 1, "no empty index type");
    arrow(pow(&base(), k as usize), base())
}

/// The `i`-th projection, the canonical inhabitant `i` of `Fin k`.
pub fn pi_term(i: u64, k: u64) -> Tm {
    assert!(1 <= i && i <= k, "projection {i} out of 1..={k}");
    lam(pow(&base(), k as usize), select(var(0), i as usize, k as usize))
}

/// The term `Fin k → Fin k'` computing `i ↦ f[i-1]`:
/// `λ(p: Fin k). λ(x: o^k'). p ⟨x_{f(1)}, …, x_{f(k)}⟩`.
pub fn fin_map_term(f: &[u64], k_prime: u64) -> Tm {
    let k = f.len() as u64;
    assert!(k >= 1 && k_prime >= 1, "index sets are non-empty");
    assert!(
        f.iter().all(|&j| 1 <= j && j <= k_prime),
        "map lands in 1..={k_prime}"
    );
    let entries: Vec<Tm> = f
        .iter()
        .map(|&j| select(var(0), j as usize, k_prime as usize))
        .collect();
    lam(
        fin_type(k),
        lam(pow(&base(), k_prime as usize), app(var(1), tuple(entries))),
    )
}

fn checked_mul(a: u64, b: u64, max: u64, at: &str) -> Result<u64, CompileError> {
    match a.checked_mul(b) {
        Some(w) if w <= max => Ok(w),
        Some(w) => Err(CompileError::TooWide {
            width: w,
            max,
            at: at.to_string(),
        }),
        None => Err(CompileError::Overflow { at: at.to_string() }),
    }
}

fn checked_pow(base: u64, exp: u64, max: u64, at: &str) -> Result<u64, CompileError> {
    let mut w: u64 = 1;
    for _ in 0..exp {
        w = checked_mul(w, base, max, at)?;
    }
    Ok(w)
}

/// `Fin k × Fin k' → Fin k·k'`, pairing big-endian:
/// `⟨π_i, π_j⟩ ↦ π_{(i−1)k' + j}`.
pub fn prod_collapse(k: u64, k_prime: u64, max_width: u64) -> Result<Tm, CompileError> {
    let m = checked_mul(k, k_prime, max_width, "a product of index sets")?;
    let entries: Vec<Tm> = (1..=k)
        .map(|i| {
            let block: Vec<u64> = (1..=k_prime).map(|j| (i - 1) * k_prime + j).collect();
            app(app(fin_map_term(&block, m), snd(var(1))), var(0))
        })
        .collect();
    Ok(lam(
        prod(fin_type(k), fin_type(k_prime)),
        lam(
            pow(&base(), m as usize),
            app(fst(var(1)), tuple(entries)),
        ),
    ))
}

/// Inverse of [`prod_collapse`]: `π_m ↦ ⟨π_{(m−1) div k' + 1}, π_{(m−1) mod k' + 1}⟩`.
pub fn prod_expand(k: u64, k_prime: u64, max_width: u64) -> Result<Tm, CompileError> {
    let m = checked_mul(k, k_prime, max_width, "a product of index sets")?;
    let left: Vec<u64> = (1..=m).map(|i| (i - 1) / k_prime + 1).collect();
    let right: Vec<u64> = (1..=m).map(|i| (i - 1) % k_prime + 1).collect();
    Ok(lam(
        fin_type(m),
        pair(
            app(fin_map_term(&left, k), var(0)),
            app(fin_map_term(&right, k_prime), var(0)),
        ),
    ))
}

/// `(Fin k → Fin k') → Fin k'^k`, tabulating with the value at 1 as the
/// most significant digit — the same order [`crate::finsem`] enumerates
/// function domains. Peels the table one entry at a time:
/// `F ↦ ⟨F π₁, table of F∘succ⟩`, collapsed as a `k' × k'^(k−1)` pair.
pub fn fun_collapse(k: u64, k_prime: u64, max_width: u64) -> Result<Tm, CompileError> {
    checked_pow(k_prime, k, max_width, "a function space of index sets")?;
    if k == 1 {
        return Ok(lam(
            arrow(fin_type(1), fin_type(k_prime)),
            app(var(0), pi_term(1, 1)),
        ));
    }
    let rest_width = checked_pow(k_prime, k - 1, max_width, "a function space of index sets")?;
    let rest = fun_collapse(k - 1, k_prime, max_width)?;
    let succ: Vec<u64> = (2..=k).collect();
    Ok(lam(
        arrow(fin_type(k), fin_type(k_prime)),
        app(
            prod_collapse(k_prime, rest_width, max_width)?,
            pair(
                app(var(0), pi_term(1, k)),
                app(
                    rest,
                    lam(
                        fin_type(k - 1),
                        app(var(1), app(fin_map_term(&succ, k), var(0))),
                    ),
                ),
            ),
        ),
    ))
}

/// Inverse of [`fun_collapse`]: decode a table index back into an applied
/// function, by one big `Fin k'^k × Fin k → Fin k'` lookup map.
pub fn fun_expand(k: u64, k_prime: u64, max_width: u64) -> Result<Tm, CompileError> {
    let m = checked_pow(k_prime, k, max_width, "a function space of index sets")?;
    checked_mul(m, k, max_width, "a table-lookup domain")?;
    let dom = FinDomain::base(k, Card::MAX)?;
    let cod = FinDomain::base(k_prime, Card::MAX)?;
    let fun_dom = FinDomain::fun(dom.clone(), cod.clone(), Card::MAX)?;
    let mut lookup = Vec::with_capacity((m * k) as usize);
    for i in 1..=m {
        let f = elem_at(&fun_dom, i)?;
        for j in 1..=k {
            lookup.push(apply_elem(&f, &elem_at(&dom, j)?)?.index());
        }
    }
    Ok(lam(
        fin_type(m),
        lam(
            fin_type(k),
            app(
                fin_map_term(&lookup, k_prime),
                app(
                    prod_collapse(m, k, max_width)?,
                    pair(var(1), var(0)),
                ),
            ),
        ),
    ))
}

// ---------------------------------------------------------------------
// Collapsing a whole type
// ---------------------------------------------------------------------

/// `|⟦A⟧ₙ|`, computed arithmetically and checked against `max`.
pub fn index_width(a: &SimpleType, n: u64, max: u64) -> Result<u64, CompileError> {
    match a {
        SimpleType::Base => Ok(n),
        SimpleType::Unit => Ok(1),
        SimpleType::Prod(l, r) => {
            let wl = index_width(l, n, max)?;
            let wr = index_width(r, n, max)?;
            checked_mul(wl, wr, max, "a product type")
        }
        SimpleType::Arrow(d, c) => {
            let wd = index_width(d, n, max)?;
            let wc = index_width(c, n, max)?;
            checked_pow(wc, wd, max, "a function type")
        }
    }
}

/// A two-way bridge between `A{o:=Fin n}` and `Fin width`:
/// `project : A{o:=Fin n} → Fin width` and `embed` its inverse, with
/// `project` computing exactly the canonical index of [`denote_type`].
pub struct FinKit {
    pub subject: Ty,
    pub base_size: u64,
    pub width: u64,
    pub embed: Tm,
    pub project: Tm,
}

fn kit_parts(a: &Ty, n: u64, max: u64) -> Result<(u64, Tm, Tm), CompileError> {
    match a.as_ref() {
        SimpleType::Base => {
            let idty = fin_type(n);
            Ok((n, lam(idty.clone(), var(0)), lam(idty, var(0))))
        }
        SimpleType::Unit => Ok((
            1,
            lam(fin_type(1), unit_tm()),
            lam(unit_ty(), lam(base(), var(0))),
        )),
        SimpleType::Prod(l, r) => {
            let (wl, el, pl) = kit_parts(l, n, max)?;
            let (wr, er, pr) = kit_parts(r, n, max)?;
            let w = checked_mul(wl, wr, max, "a product type")?;
            let sl = l.subst_base(&fin_type(n));
            let sr = r.subst_base(&fin_type(n));
            let project = lam(
                prod(sl.clone(), sr.clone()),
                app(
                    prod_collapse(wl, wr, max)?,
                    pair(app(pl, fst(var(0))), app(pr, snd(var(0)))),
                ),
            );
            let embed = lam(
                fin_type(w),
                pair(
                    app(el, fst(app(prod_expand(wl, wr, max)?, var(0)))),
                    app(er, snd(app(prod_expand(wl, wr, max)?, var(0)))),
                ),
            );
            Ok((w, embed, project))
        }
        SimpleType::Arrow(d, c) => {
            let (wd, ed, pd) = kit_parts(d, n, max)?;
            let (wc, ec, pc) = kit_parts(c, n, max)?;
            let w = checked_pow(wc, wd, max, "a function type")?;
            let sd = d.subst_base(&fin_type(n));
            let project = lam(
                arrow(sd.clone(), c.subst_base(&fin_type(n))),
                app(
                    fun_collapse(wd, wc, max)?,
                    lam(fin_type(wd), app(pc, app(var(1), app(ed, var(0))))),
                ),
            );
            let embed = lam(
                fin_type(w),
                lam(
                    sd,
                    app(
                        ec,
                        app(app(fun_expand(wd, wc, max)?, var(1)), app(pd, var(0))),
                    ),
                ),
            );
            Ok((w, embed, project))
        }
    }
}

pub fn build_kit(subject: &Ty, n: u64, opts: &CompileOptions) -> Result<FinKit, CompileError> {
    assert!(n >= 1, "the base needs at least one point");
    index_width(subject, n, opts.max_width)?;
    let (width, embed, project) = kit_parts(subject, n, opts.max_width)?;
    Ok(FinKit {
        subject: subject.clone(),
        base_size: n,
        width,
        embed,
        project,
    })
}

// ---------------------------------------------------------------------
// The two translations
// ---------------------------------------------------------------------

/// Tabulate a semantic recognizer into a decider over `Fin n`, where `n`
/// is the size of its (single) base: the decider is
/// `λy. fin_map(verdicts) (project y)` with one tabulated verdict per
/// index of `⟦A⟧ₙ`. Structured bases are first re-read along the
/// canonical enumeration of an equal-sized cardinal base.
pub fn sem_to_syn(r: &SemRecognizer, opts: &CompileOptions) -> Result<SynRecognizer, CompileError> {
    let bases = r.bases();
    if bases.len() != 1 {
        return Err(CompileError::MultiBase {
            bases: bases
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(", "),
        });
    }
    let given = &bases[0];
    let n = given.size();
    let subject = r.subject().clone();
    let m = index_width(&subject, n, opts.max_width)?;
    let cardinal = FinDomain::base(n, opts.max_domain)?;
    let dom = denote_type(&subject, &cardinal, opts.max_domain)?;
    let transporting = given != &cardinal;
    let mut verdicts = Vec::with_capacity(m as usize);
    for i in 1..=m {
        let v = reflect(&elem_at(&dom, i)?);
        let v = if transporting {
            transport_value(&subject, &v, &cardinal, given)
        } else {
            v
        };
        verdicts.push(if r.verdict_on_value(&v)? { 1 } else { 2 });
    }
    let kit = build_kit(&subject, n, opts)?;
    let decider = lam(
        subject.subst_base(&fin_type(n)),
        app(fin_map_term(&verdicts, 2), app(kit.project, var(0))),
    );
    SynRecognizer::new(subject, fin_type(n), decider)
        .map_err(|e| CompileError::Recognizer(e.to_string()))
}

/// Read a decider as a semantic recognizer: evaluate it once over the
/// two-point base and accept exactly the terms whose substituted
/// evaluation it maps to `⟦true⟧`.
pub fn syn_to_sem(r: &SynRecognizer, max_domain: Card) -> Result<SemRecognizer, CompileError> {
    let two = FinDomain::base(2, max_domain)?;
    let inner = denote_type(r.subst(), &two, max_domain)?;
    let bool_dom = denote_type(&bool_type(), &two, max_domain)?;
    let decider_val = eval_value(r.decider(), &[]);
    let accepting = materialize(&eval_value(&true_term(), &[]), &bool_dom)?;
    let subject = r.subject().clone();
    let pred = {
        let subject = subject.clone();
        let inner = inner.clone();
        move |v: &SemValue| {
            let flat = flatten_value(&subject, v, &inner);
            let out = crate::finsem::apply_value(&decider_val, &flat);
            Ok(materialize(&out, &bool_dom)? == accepting)
        }
    };
    Ok(SemRecognizer::from_value_predicate(
        subject,
        inner,
        "decider",
        Rc::new(pred),
    ))
}

impl From<RecognizerError> for CompileError {
    fn from(e: RecognizerError) -> Self {
        CompileError::Recognizer(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::{dfa_to_recognizer, encode_word, parity_dfa, run_dfa};
    use crate::finsem::{eval_elem, fun_elem_from_table, index_of, DEFAULT_MAX_DOMAIN};
    use crate::normalize::{beta_eta_equal, normalize};
    use crate::recognizers::{even1s_odd2s_decider, false_term};
    use crate::typecheck::synthesize;

    const MAX: u64 = DEFAULT_MAX_WIDTH;

    fn nf(t: &Tm) -> Tm {
        normalize(t, &Vec::new()).unwrap()
    }

    fn all_maps(k: u64, k_prime: u64) -> Vec<Vec<u64>> {
        let mut maps = vec![vec![]];
        for _ in 0..k {
            maps = maps
                .into_iter()
                .flat_map(|m| {
                    (1..=k_prime).map(move |j| {
                        let mut m = m.clone();
                        m.push(j);
                        m
                    })
                })
                .collect();
        }
        maps
    }

    #[test]
    fn projections_are_the_boolean_literals_at_width_two() {
        assert_eq!(nf(&pi_term(1, 2)), nf(&true_term()));
        assert_eq!(nf(&pi_term(2, 2)), nf(&false_term()));
    }

    #[test]
    fn fin_maps_send_projections_where_the_table_says() {
        for k in 1..=3u64 {
            for k_prime in 1..=3u64 {
                for f in all_maps(k, k_prime) {
                    let t = fin_map_term(&f, k_prime);
                    for i in 1..=k {
                        assert_eq!(
                            nf(&app(t.clone(), pi_term(i, k))),
                            nf(&pi_term(f[(i - 1) as usize], k_prime)),
                            "f={f:?} i={i}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fin_maps_are_functorial() {
        for k in 1..=3u64 {
            let identity: Vec<u64> = (1..=k).collect();
            assert!(beta_eta_equal(
                &fin_map_term(&identity, k),
                &lam(fin_type(k), var(0)),
                &Vec::new()
            )
            .unwrap());
        }
        // Composition agrees with composing the tables, as whole terms.
        let f = vec![2, 3, 3]; // 3 → 3
        let g = vec![1, 1, 2]; // 3 → 3
        let gf: Vec<u64> = f.iter().map(|&i| g[(i - 1) as usize]).collect();
        let composed = lam(
            fin_type(3),
            app(fin_map_term(&g, 3), app(fin_map_term(&f, 3), var(0))),
        );
        assert!(beta_eta_equal(&composed, &fin_map_term(&gf, 3), &Vec::new()).unwrap());
    }

    #[test]
    fn product_collapse_computes_the_mixed_radix_index() {
        for k in 1..=3u64 {
            for k_prime in 1..=3u64 {
                let c = prod_collapse(k, k_prime, MAX).unwrap();
                let e = prod_expand(k, k_prime, MAX).unwrap();
                for i in 1..=k {
                    for j in 1..=k_prime {
                        let m = (i - 1) * k_prime + j;
                        let collapsed =
                            nf(&app(c.clone(), pair(pi_term(i, k), pi_term(j, k_prime))));
                        assert_eq!(collapsed, nf(&pi_term(m, k * k_prime)));
                        let expanded = nf(&app(e.clone(), pi_term(m, k * k_prime)));
                        assert_eq!(
                            expanded,
                            nf(&pair(pi_term(i, k), pi_term(j, k_prime)))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn function_collapse_matches_the_model_enumeration() {
        for k in 1..=3u64 {
            for k_prime in 1..=2u64 {
                let dom = FinDomain::base(k, DEFAULT_MAX_DOMAIN).unwrap();
                let cod = FinDomain::base(k_prime, DEFAULT_MAX_DOMAIN).unwrap();
                let m = k_prime.pow(k as u32);
                let c = fun_collapse(k, k_prime, MAX).unwrap();
                let x = fun_expand(k, k_prime, MAX).unwrap();
                for f in all_maps(k, k_prime) {
                    // The model's index of the same table is the oracle.
                    let fe =
                        fun_elem_from_table(&dom, &cod, &f, DEFAULT_MAX_DOMAIN).unwrap();
                    let idx = index_of(&fe);
                    let collapsed = nf(&app(c.clone(), fin_map_term(&f, k_prime)));
                    assert_eq!(collapsed, nf(&pi_term(idx, m)), "collapse {f:?}");
                    for j in 1..=k {
                        let applied =
                            nf(&app(app(x.clone(), pi_term(idx, m)), pi_term(j, k)));
                        assert_eq!(
                            applied,
                            nf(&pi_term(f[(j - 1) as usize], k_prime)),
                            "expand {f:?} at {j}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn widths_agree_with_the_model_sizes() {
        let tys = [
            base(),
            unit_ty(),
            bool_type(),
            crate::encodings::church_type(1),
            crate::encodings::church_type(2),
            prod(arrow(base(), base()), unit_ty()),
        ];
        for ty in tys {
            for n in 1..=2u64 {
                let dom = FinDomain::base(n, DEFAULT_MAX_DOMAIN).unwrap();
                match (
                    index_width(&ty, n, MAX),
                    denote_type(&ty, &dom, MAX),
                ) {
                    (Ok(w), Ok(d)) => assert_eq!(w, d.size(), "{ty:?} at {n}"),
                    (Err(_), Err(_)) => {}
                    (w, d) => panic!("guards disagree on {ty:?} at {n}: {w:?} vs {d:?}"),
                }
            }
        }
    }

    #[test]
    fn kits_project_to_the_canonical_index_and_back() {
        let opts = CompileOptions::default();
        for (ty, n) in [
            (base(), 3u64),
            (unit_ty(), 2),
            (prod(base(), base()), 2),
            (arrow(base(), base()), 2),
            (bool_type(), 2),
            (prod(arrow(base(), base()), unit_ty()), 3),
        ] {
            let kit = build_kit(&ty, n, &opts).unwrap();
            let expected = arrow(ty.subst_base(&fin_type(n)), fin_type(kit.width));
            assert_eq!(synthesize(&kit.project, &Vec::new()).unwrap(), expected);
            for i in 1..=kit.width {
                let embedded = app(kit.embed.clone(), pi_term(i, kit.width));
                let back = nf(&app(kit.project.clone(), embedded));
                assert_eq!(back, nf(&pi_term(i, kit.width)), "{ty:?} index {i}");
            }
        }
    }

    #[test]
    fn kit_projection_computes_the_evaluation_index() {
        // For closed words, projecting the Fin-substituted term equals
        // evaluating the original term in the model — index for index.
        let opts = CompileOptions::default();
        let ty = crate::encodings::church_type(1);
        let n = 2u64;
        let kit = build_kit(&ty, n, &opts).unwrap();
        let dom = FinDomain::base(n, DEFAULT_MAX_DOMAIN).unwrap();
        for len in 0..=4usize {
            let w: Vec<usize> = vec![1; len];
            let t = encode_word(&w, 1).unwrap();
            let model_idx = eval_elem(&t, &Vec::new(), &dom, &[], DEFAULT_MAX_DOMAIN)
                .unwrap()
                .index();
            let projected = nf(&app(kit.project.clone(), t.cast(&fin_type(n))));
            assert_eq!(projected, nf(&pi_term(model_idx, kit.width)), "length {len}");
        }
    }

    #[test]
    fn tabulated_deciders_match_the_semantic_recognizer() {
        let opts = CompileOptions::default();
        let even = dfa_to_recognizer(&parity_dfa(1, 1, true)).unwrap();
        let syn = sem_to_syn(&even, &opts).unwrap();
        let dfa = parity_dfa(1, 1, true);
        for len in 0..=5usize {
            let w: Vec<usize> = vec![1; len];
            let t = encode_word(&w, 1).unwrap();
            assert_eq!(syn.accepts(&t).unwrap(), run_dfa(&dfa, &w), "length {len}");
            assert_eq!(syn.accepts(&t).unwrap(), even.accepts(&t).unwrap());
        }
    }

    #[test]
    fn evaluated_deciders_match_the_syntactic_recognizer() {
        let syn = even1s_odd2s_decider();
        let sem = syn_to_sem(&syn, DEFAULT_MAX_DOMAIN).unwrap();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..4 {
            words = words
                .iter()
                .flat_map(|w| {
                    [1, 2].iter().map(move |&l| {
                        let mut w = w.clone();
                        w.push(l);
                        w
                    })
                })
                .collect::<Vec<_>>();
            for w in &words {
                let t = encode_word(w, 2).unwrap();
                assert_eq!(
                    sem.accepts(&t).unwrap(),
                    syn.accepts(&t).unwrap(),
                    "{w:?}"
                );
            }
        }
    }

    #[test]
    fn round_trip_through_both_translations_preserves_verdicts() {
        // Keep the subject small: Bool over B = o stays within bounds in
        // both directions.
        let opts = CompileOptions::default();
        let id = lam(bool_type(), var(0));
        let syn = SynRecognizer::new(bool_type(), base(), id).unwrap();
        let sem = syn_to_sem(&syn, DEFAULT_MAX_DOMAIN).unwrap();
        let back = sem_to_syn(&sem, &opts).unwrap();
        for t in [true_term(), false_term()] {
            let direct = syn.accepts(&t).unwrap();
            assert_eq!(sem.accepts(&t).unwrap(), direct);
            assert_eq!(back.accepts(&t).unwrap(), direct);
        }
    }

    #[test]
    fn oversized_instances_fail_with_the_offending_width() {
        let opts = CompileOptions::default();
        let two_letter = dfa_to_recognizer(&parity_dfa(1, 2, false)).unwrap();
        match sem_to_syn(&two_letter, &opts) {
            Err(CompileError::TooWide { width, max, .. }) => {
                assert!(width > max, "{width} vs {max}");
            }
            other => panic!("expected a width failure, got {other:?}"),
        }
        // And the width alone says why: |⟦(o→o)² → o → o⟧₂| = 4¹⁶·2².
        assert!(index_width(&crate::encodings::church_type(2), 2, u64::MAX).unwrap() > 1 << 16);
    }

    #[test]
    fn multi_base_recognizers_are_rejected() {
        let e1 = dfa_to_recognizer(&parity_dfa(1, 2, false)).unwrap();
        let o2 = dfa_to_recognizer(&parity_dfa(2, 2, true)).unwrap();
        // Same state count but distinct predicate leaves still share one
        // base domain, so intersection over equal bases compiles.
        let both = e1.intersect(&o2).unwrap();
        assert_eq!(both.bases().len(), 1);
        // A genuinely mixed tree (2-state and 3-state leaves) does not.
        let three = dfa_to_recognizer(&Dfa3::make()).unwrap();
        let mixed = e1.intersect(&three).unwrap();
        match sem_to_syn(&mixed, &CompileOptions::default()) {
            Err(CompileError::MultiBase { .. }) => {}
            other => panic!("expected a multi-base failure, got {other:?}"),
        }
    }

    // A 3-state automaton over the two-letter alphabet: length mod 3 == 0.
    struct Dfa3;
    impl Dfa3 {
        fn make() -> crate::encodings::Dfa {
            crate::encodings::Dfa {
                alphabet: 2,
                states: 3,
                initial: 1,
                accepting: vec![1],
                delta: vec![vec![2, 3, 1], vec![2, 3, 1]],
            }
        }
    }
}
