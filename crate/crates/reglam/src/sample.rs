//! Seeded random generation for the randomized property batteries:
//! well-typed closed terms (β-redexes included, so normalization is
//! actually exercised) and partial-surjection relation bases.

use crate::logrel::FinRelation;
use crate::recognizers::bool_type;
use crate::syntax::{
    app, arrow, base, fst, lam, pair, prod, snd, unit_tm, unit_ty, var, Ctx, SimpleType, Tm, Ty,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Inhabitation decisions, memoized per search. Reaching the base type
/// from a hypothesis can circle back to the same question (e.g. using
/// `f : o → o` asks for an `o` again), so queries are keyed by the
/// context-as-set and a repeated identical query counts as false: a
/// shortest derivation never asks the same question twice.
#[derive(Default)]
struct Inhabitation {
    memo: std::collections::BTreeMap<std::collections::BTreeSet<String>, bool>,
    in_progress: std::collections::BTreeSet<std::collections::BTreeSet<String>>,
}

impl Inhabitation {
    fn inhabitable(&mut self, t: &SimpleType, ctx: &Ctx) -> bool {
        match t {
            SimpleType::Base => self.base_reachable(ctx),
            SimpleType::Unit => true,
            SimpleType::Prod(a, b) => self.inhabitable(a, ctx) && self.inhabitable(b, ctx),
            SimpleType::Arrow(a, b) => {
                let mut inner = ctx.clone();
                inner.push(a.clone());
                self.inhabitable(b, &inner)
            }
        }
    }

    fn base_reachable(&mut self, ctx: &Ctx) -> bool {
        let key: std::collections::BTreeSet<String> =
            ctx.iter().map(|c| crate::print::print_type(c)).collect();
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        if !self.in_progress.insert(key.clone()) {
            return false;
        }
        let result = ctx.to_vec().iter().any(|c| self.yields_base(c, ctx));
        self.in_progress.remove(&key);
        self.memo.insert(key, result);
        result
    }

    /// Whether eliminating a variable of type `c` can reach the base
    /// type, with the needed arguments available in `ctx`.
    fn yields_base(&mut self, c: &SimpleType, ctx: &Ctx) -> bool {
        match c {
            SimpleType::Base => true,
            SimpleType::Unit => false,
            SimpleType::Prod(a, b) => self.yields_base(a, ctx) || self.yields_base(b, ctx),
            SimpleType::Arrow(a, b) => self.yields_base(b, ctx) && self.inhabitable(a, ctx),
        }
    }

    /// A canonical inhabitant, mirroring the decision above step for
    /// step; `Some` exactly when [`Inhabitation::inhabitable`] answers
    /// true. Used to cap the random generator: unlike a recursive
    /// random spine, this search is bounded, because the context-sets
    /// along any path grow strictly within the finite vocabulary of
    /// subterm types.
    fn witness(&mut self, t: &SimpleType, ctx: &Ctx) -> Option<Tm> {
        match t {
            SimpleType::Base => self.base_witness(ctx),
            SimpleType::Unit => Some(unit_tm()),
            SimpleType::Prod(a, b) => Some(pair(self.witness(a, ctx)?, self.witness(b, ctx)?)),
            SimpleType::Arrow(a, b) => {
                let mut inner = ctx.clone();
                inner.push(a.clone());
                Some(lam(a.clone(), self.witness(b, &inner)?))
            }
        }
    }

    fn base_witness(&mut self, ctx: &Ctx) -> Option<Tm> {
        let key: std::collections::BTreeSet<String> =
            ctx.iter().map(|c| crate::print::print_type(c)).collect();
        if !self.in_progress.insert(key.clone()) {
            return None;
        }
        let mut found = None;
        for i in 0..ctx.len() {
            let c = ctx[ctx.len() - 1 - i].clone();
            if let Some(t) = self.eliminate(var(i), &c, ctx) {
                found = Some(t);
                break;
            }
        }
        self.in_progress.remove(&key);
        found
    }

    fn eliminate(&mut self, head: Tm, c: &SimpleType, ctx: &Ctx) -> Option<Tm> {
        match c {
            SimpleType::Base => Some(head),
            SimpleType::Unit => None,
            SimpleType::Prod(a, b) => self
                .eliminate(fst(head.clone()), a, ctx)
                .or_else(|| self.eliminate(snd(head), b, ctx)),
            SimpleType::Arrow(a, b) => {
                let arg = self.witness(a, ctx)?;
                self.eliminate(app(head, arg), b, ctx)
            }
        }
    }
}

/// Whether a term of type `t` can be built in `ctx`; a `true` answer
/// always has a witness. The base type itself is empty, so every chain
/// must bottom out in a variable.
pub fn inhabitable(t: &SimpleType, ctx: &Ctx) -> bool {
    Inhabitation::default().inhabitable(t, ctx)
}

struct Gen<'a, R: Rng> {
    rng: &'a mut R,
    inhab: Inhabitation,
}

impl<R: Rng> Gen<'_, R> {
    fn term(&mut self, ty: &Ty, ctx: &Ctx, fuel: usize) -> Tm {
        if fuel > 0 && self.rng.gen_bool(0.2) {
            // Wrap in a β-redex: bind a throwaway value and build the
            // goal under the extended context.
            let aux: Ty = match self.rng.gen_range(0..3u8) {
                0 => unit_ty(),
                1 => arrow(base(), base()),
                _ => bool_type(),
            };
            let arg = self.term(&aux, ctx, fuel / 2);
            let mut inner = ctx.clone();
            inner.push(aux.clone());
            let body = self.term(ty, &inner, fuel / 2);
            return app(lam(aux, body), arg);
        }
        match ty.as_ref() {
            SimpleType::Unit => unit_tm(),
            SimpleType::Prod(a, b) => pair(
                self.term(a, ctx, fuel.saturating_sub(1)),
                self.term(b, ctx, fuel.saturating_sub(1)),
            ),
            SimpleType::Arrow(a, b) => {
                let mut inner = ctx.clone();
                inner.push(a.clone());
                lam(a.clone(), self.term(b, &inner, fuel.saturating_sub(1)))
            }
            SimpleType::Base => self.spine(ctx, fuel),
        }
    }

    /// Eliminate some context variable down to the base type.
    fn spine(&mut self, ctx: &Ctx, fuel: usize) -> Tm {
        let candidates: Vec<usize> = (0..ctx.len())
            .filter(|&i| self.inhab.yields_base(&ctx[ctx.len() - 1 - i].clone(), ctx))
            .collect();
        let &i = candidates
            .choose(self.rng)
            .expect("generation invariant: the base type is reachable");
        let mut t = var(i);
        let mut c: Ty = ctx[ctx.len() - 1 - i].clone();
        loop {
            match c.as_ref() {
                SimpleType::Base => return t,
                SimpleType::Arrow(a, b) => {
                    // Out of fuel, fall back to the deterministic
                    // witness: recursing through `term` here has no
                    // decreasing measure and can spiral.
                    let arg = if fuel >= 2 {
                        self.term(a, ctx, fuel - 2)
                    } else {
                        self.inhab
                            .witness(a, ctx)
                            .expect("spine candidates have inhabitable argument types")
                    };
                    t = app(t, arg);
                    c = b.clone();
                }
                SimpleType::Prod(a, b) => {
                    let la = self.inhab.yields_base(a, ctx);
                    let lb = self.inhab.yields_base(b, ctx);
                    if la && (!lb || self.rng.gen_bool(0.5)) {
                        t = fst(t);
                        c = a.clone();
                    } else {
                        t = snd(t);
                        c = b.clone();
                    }
                }
                SimpleType::Unit => unreachable!("unit never yields the base type"),
            }
        }
    }
}

/// A random closed term of the given type. Panics if the type has no
/// closed inhabitants; check with [`inhabitable`] first for unknown input.
pub fn sample_term(ty: &Ty, fuel: usize, rng: &mut impl Rng) -> Tm {
    assert!(
        inhabitable(ty, &Vec::new()),
        "the requested type has no closed inhabitants"
    );
    Gen {
        rng,
        inhab: Inhabitation::default(),
    }
    .term(ty, &Vec::new(), fuel)
}

/// A deterministic batch: `count` terms from a ChaCha8 stream.
pub fn sample_terms(ty: &Ty, count: usize, fuel: usize, seed: u64) -> Vec<Tm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_term(ty, fuel, &mut rng)).collect()
}

/// A random type of the given connective depth (not necessarily
/// inhabited).
pub fn sample_type(depth: usize, rng: &mut impl Rng) -> Ty {
    if depth == 0 {
        return if rng.gen_bool(0.8) { base() } else { unit_ty() };
    }
    let a = sample_type(depth - 1, rng);
    let b = sample_type(depth - 1, rng);
    if rng.gen_bool(0.6) {
        arrow(a, b)
    } else {
        prod(a, b)
    }
}

/// A random partial surjection between cardinal bases of the given sizes
/// (`right ≤ left`): an injection back from the right side fixes
/// surjectivity, and the leftovers are either unmapped or sent anywhere.
pub fn random_partial_surjection(left: u64, right: u64, rng: &mut impl Rng) -> FinRelation {
    assert!(1 <= right && right <= left, "need 1 ≤ right ≤ left");
    let mut preimages: Vec<u64> = (1..=left).collect();
    preimages.shuffle(rng);
    let mut pairs = std::collections::BTreeSet::new();
    for (j, &p) in preimages.iter().take(right as usize).enumerate() {
        pairs.insert((p, j as u64 + 1));
    }
    for &p in preimages.iter().skip(right as usize) {
        if rng.gen_bool(0.5) {
            pairs.insert((p, rng.gen_range(1..=right)));
        }
    }
    FinRelation::on_cardinals(left, right, pairs).expect("pairs lie within the stated sizes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::church_type;
    use crate::enumerate::enumerate_normal_terms;
    use crate::logrel::is_partial_surjection;
    use crate::normalize::normalize;
    use crate::print::print_term;
    use crate::typecheck::typecheck;

    fn pool() -> Vec<Ty> {
        vec![
            bool_type(),
            arrow(base(), base()),
            arrow(base(), arrow(base(), base())),
            church_type(1),
            church_type(2),
            prod(arrow(base(), base()), unit_ty()),
            arrow(prod(base(), unit_ty()), base()),
        ]
    }

    #[test]
    fn sampled_terms_are_well_typed() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ty in pool() {
            for _ in 0..40 {
                let t = sample_term(&ty, 8, &mut rng);
                typecheck(&t, &Vec::new(), &ty).unwrap_or_else(|e| {
                    panic!("{} is not of type {:?}: {e}", print_term(&t), ty)
                });
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let a = sample_terms(&church_type(2), 10, 8, 99);
        let b = sample_terms(&church_type(2), 10, 8, 99);
        let c = sample_terms(&church_type(2), 10, 8, 100);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn the_stream_contains_genuine_redexes() {
        let terms = sample_terms(&bool_type(), 60, 8, 3);
        let reduced = terms
            .iter()
            .filter(|t| normalize(t, &Vec::new()).unwrap() != **t)
            .count();
        assert!(reduced > 0, "no β-redex in 60 samples");
    }

    #[test]
    fn inhabitation_agrees_with_exhaustive_enumeration() {
        let mut cases = pool();
        cases.extend([
            base(),
            unit_ty(),
            arrow(arrow(base(), base()), base()),
            prod(base(), base()),
        ]);
        for ty in cases {
            let enumerated = !enumerate_normal_terms(&ty, 12).is_empty();
            assert_eq!(
                inhabitable(&ty, &Vec::new()),
                enumerated,
                "disagreement at {ty:?}"
            );
        }
    }

    #[test]
    fn random_relations_are_partial_surjections() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let l = rng.gen_range(1..=4u64);
            let r = rng.gen_range(1..=l);
            let rel = random_partial_surjection(l, r, &mut rng);
            assert!(is_partial_surjection(&rel));
        }
    }
}
