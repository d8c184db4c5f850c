//! Parsers for the surface syntax.
//!
//! Types:  `o`, `1`, `A -> B` (right associative), `A * B` (left
//! associative, binds tighter than `->`), the power macro `A^n`
//! (right-nested), and parentheses.
//!
//! Typed terms: `\(x: A). t`, application by juxtaposition (left
//! associative), tuples `<t, u, ...>` (right-nested pairs), component
//! projection `t.i`, the unit value `()`, and identifiers
//! `[a-zA-Z_][a-zA-Z0-9_']*`.
//!
//! Untyped terms (the encoding subject language): `\x. t`, juxtaposition,
//! identifiers, parentheses.
//!
//! Binders resolve to de Bruijn indices during parsing. Because `t.i`
//! addresses the i-th component of the maximal right-spine product
//! unfolding of the type of `t`, the typed-term parser synthesizes types
//! as it elaborates, and can therefore also report type errors (as
//! [`ParseError::Elaborate`]) besides syntax and unbound-variable errors.

use crate::syntax::{
    app, arrow, base, components, lam, pair, prod, select, uabs, uapp, unit_tm,
    unit_ty, uvar, var, SimpleType, Tm, Ty, UTm,
};
use std::rc::Rc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound variable `{name}` at byte {pos}")]
    Unbound { name: String, pos: usize },
    #[error("type error at byte {pos}: {msg}")]
    Elaborate { pos: usize, msg: String },
}

fn syntax_err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax {
        pos,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(usize),
    Backslash,
    LParen,
    RParen,
    LAngle,
    RAngle,
    Comma,
    Dot,
    Colon,
    Star,
    Caret,
    Arrow,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '\\' => {
                toks.push((Tok::Backslash, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '<' => {
                toks.push((Tok::LAngle, i));
                i += 1;
            }
            '>' => {
                toks.push((Tok::RAngle, i));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            '.' => {
                toks.push((Tok::Dot, i));
                i += 1;
            }
            ':' => {
                toks.push((Tok::Colon, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, i));
                    i += 2;
                } else {
                    return syntax_err(i, "expected `->`");
                }
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                match text.parse::<usize>() {
                    Ok(n) => toks.push((Tok::Nat(n), start)),
                    Err(_) => return syntax_err(start, format!("number `{text}` out of range")),
                }
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                i += 1;
                while i < bytes.len() {
                    let b = bytes[i] as char;
                    if b.is_ascii_alphanumeric() || b == '_' || b == '\'' {
                        i += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(src[start..i].to_string()), start));
            }
            other => return syntax_err(i, format!("unexpected character `{other}`")),
        }
    }
    Ok(toks)
}

struct P {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    tydefs: Vec<(String, Ty)>,
    tmdefs: Vec<(String, Tm, Ty)>,
}

impl P {
    fn new(src: &str) -> Result<P, ParseError> {
        P::with_defs(src, &[], &[])
    }

    /// `tmdefs` must be closed; their types are synthesized here so that
    /// occurrences elaborate like any other atom.
    fn with_defs(src: &str, tydefs: &[(&str, Ty)], tmdefs: &[(&str, Tm)]) -> Result<P, ParseError> {
        let tmdefs = tmdefs
            .iter()
            .map(|(n, t)| match crate::typecheck::synthesize(t, &Vec::new()) {
                Ok(ty) => Ok((n.to_string(), t.clone(), ty)),
                Err(e) => Err(ParseError::Elaborate {
                    pos: 0,
                    msg: format!("definition `{n}`: {e}"),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(P {
            toks: lex(src)?,
            pos: 0,
            end: src.len(),
            tydefs: tydefs.iter().map(|(n, t)| (n.to_string(), t.clone())).collect(),
            tmdefs,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            syntax_err(self.here(), format!("expected {what}"))
        }
    }

    fn expect_done(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            syntax_err(self.here(), "unexpected trailing input")
        }
    }

    // ---- types ----

    fn ty(&mut self) -> Result<Ty, ParseError> {
        let lhs = self.ty_prod()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.ty()?;
            Ok(arrow(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn ty_prod(&mut self) -> Result<Ty, ParseError> {
        let mut t = self.ty_pow()?;
        while self.eat(&Tok::Star) {
            let rhs = self.ty_pow()?;
            t = prod(t, rhs);
        }
        Ok(t)
    }

    fn ty_pow(&mut self) -> Result<Ty, ParseError> {
        let t = self.ty_atom()?;
        if self.eat(&Tok::Caret) {
            let pos = self.here();
            match self.next() {
                Some(Tok::Nat(n)) if n >= 1 => Ok(crate::syntax::pow(&t, n)),
                Some(Tok::Nat(_)) => syntax_err(pos, "power must be at least 1"),
                _ => syntax_err(pos, "expected a number after `^`"),
            }
        } else {
            Ok(t)
        }
    }

    fn ty_atom(&mut self) -> Result<Ty, ParseError> {
        let pos = self.here();
        match self.next() {
            Some(Tok::Ident(s)) if s == "o" => Ok(base()),
            Some(Tok::Ident(s)) => match self.tydefs.iter().find(|(n, _)| *n == s) {
                Some((_, t)) => Ok(t.clone()),
                None => syntax_err(pos, format!("unknown type name `{s}`")),
            },
            Some(Tok::Nat(1)) => Ok(unit_ty()),
            Some(Tok::LParen) => {
                let t = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => syntax_err(pos, "expected a type (`o`, `1`, or `(`)"),
        }
    }

    // ---- typed terms (parse + scope resolution + type synthesis) ----

    fn term(&mut self, sc: &mut Scope) -> Result<(Tm, Ty), ParseError> {
        if self.peek() == Some(&Tok::Backslash) {
            self.lambda(sc)
        } else {
            self.apply(sc)
        }
    }

    fn lambda(&mut self, sc: &mut Scope) -> Result<(Tm, Ty), ParseError> {
        self.expect(Tok::Backslash, "`\\`")?;
        self.expect(Tok::LParen, "`(` after `\\`")?;
        let pos = self.here();
        let name = match self.next() {
            Some(Tok::Ident(s)) => s,
            _ => return syntax_err(pos, "expected a binder name"),
        };
        self.expect(Tok::Colon, "`:` after the binder name")?;
        let ann = self.ty()?;
        self.expect(Tok::RParen, "`)` after the binder annotation")?;
        self.expect(Tok::Dot, "`.` after the binder")?;
        sc.names.push(name);
        sc.tys.push(ann.clone());
        let body = self.term(sc);
        sc.names.pop();
        sc.tys.pop();
        let (body, body_ty) = body?;
        Ok((lam(ann.clone(), body), arrow(ann, body_ty)))
    }

    fn apply(&mut self, sc: &mut Scope) -> Result<(Tm, Ty), ParseError> {
        let mut pos = self.here();
        let (mut f, mut fty) = self.postfix(sc)?;
        while self.starts_atom() {
            let arg_pos = self.here();
            let (a, aty) = self.postfix(sc)?;
            let (dom, cod) = match &*fty {
                SimpleType::Arrow(dom, cod) => (dom.clone(), cod.clone()),
                other => {
                    return Err(ParseError::Elaborate {
                        pos,
                        msg: format!("applied a term of non-function type {other}"),
                    })
                }
            };
            if aty != dom {
                return Err(ParseError::Elaborate {
                    pos: arg_pos,
                    msg: format!("argument has type {aty}, expected {dom}"),
                });
            }
            f = app(f, a);
            fty = cod;
            pos = arg_pos;
        }
        Ok((f, fty))
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::LAngle)
        )
    }

    fn postfix(&mut self, sc: &mut Scope) -> Result<(Tm, Ty), ParseError> {
        let (mut t, mut ty) = self.atom(sc)?;
        while self.eat(&Tok::Dot) {
            let pos = self.here();
            let i = match self.next() {
                Some(Tok::Nat(i)) if i >= 1 => i,
                Some(Tok::Nat(_)) => return syntax_err(pos, "components are numbered from 1"),
                _ => return syntax_err(pos, "expected a component number after `.`"),
            };
            let comps = components(&ty);
            let n = comps.len();
            if i > n {
                return Err(ParseError::Elaborate {
                    pos,
                    msg: format!("type {ty} has {n} component(s), no component {i}"),
                });
            }
            t = select(t, i, n);
            ty = comps[i - 1].clone();
        }
        Ok((t, ty))
    }

    fn atom(&mut self, sc: &mut Scope) -> Result<(Tm, Ty), ParseError> {
        let pos = self.here();
        match self.next() {
            Some(Tok::Ident(name)) => match sc.lookup(&name) {
                Some((i, ty)) => Ok((var(i), ty)),
                // Binders shadow definitions; defined terms are closed, so
                // splicing them under binders needs no index adjustment.
                None => match self.tmdefs.iter().find(|(n, _, _)| *n == name) {
                    Some((_, t, ty)) => Ok((t.clone(), ty.clone())),
                    None => Err(ParseError::Unbound { name, pos }),
                },
            },
            Some(Tok::LParen) => {
                if self.eat(&Tok::RParen) {
                    return Ok((unit_tm(), unit_ty()));
                }
                let t = self.term(sc)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::LAngle) => {
                let mut items = vec![self.term(sc)?];
                while self.eat(&Tok::Comma) {
                    items.push(self.term(sc)?);
                }
                self.expect(Tok::RAngle, "`>` closing the tuple")?;
                if items.len() < 2 {
                    return syntax_err(pos, "a tuple needs at least two components");
                }
                let (mut t, mut ty) = items.pop().unwrap();
                while let Some((a, aty)) = items.pop() {
                    t = pair(a, t);
                    ty = prod(aty, ty);
                }
                Ok((t, ty))
            }
            _ => syntax_err(pos, "expected a term"),
        }
    }

    // ---- untyped terms ----

    fn uterm(&mut self, names: &mut Vec<String>) -> Result<UTm, ParseError> {
        if self.peek() == Some(&Tok::Backslash) {
            self.pos += 1;
            let pos = self.here();
            let name = match self.next() {
                Some(Tok::Ident(s)) => s,
                _ => return syntax_err(pos, "expected a binder name after `\\`"),
            };
            self.expect(Tok::Dot, "`.` after the binder")?;
            names.push(name);
            let body = self.uterm(names);
            names.pop();
            Ok(uabs(body?))
        } else {
            let mut f = self.uatom(names)?;
            while matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::LParen)) {
                let a = self.uatom(names)?;
                f = uapp(f, a);
            }
            Ok(f)
        }
    }

    fn uatom(&mut self, names: &mut Vec<String>) -> Result<UTm, ParseError> {
        let pos = self.here();
        match self.next() {
            Some(Tok::Ident(name)) => {
                match names.iter().rev().position(|n| *n == name) {
                    Some(k) => Ok(uvar(k + 1)), // 1-based, innermost first
                    None => Err(ParseError::Unbound { name, pos }),
                }
            }
            Some(Tok::LParen) => {
                let t = self.uterm(names)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => syntax_err(pos, "expected a term"),
        }
    }
}

struct Scope {
    names: Vec<String>,
    tys: Vec<Ty>,
}

impl Scope {
    fn lookup(&self, name: &str) -> Option<(usize, Ty)> {
        self.names
            .iter()
            .rev()
            .position(|n| n == name)
            .map(|i| (i, self.tys[self.tys.len() - 1 - i].clone()))
    }
}

pub fn parse_type(src: &str) -> Result<Ty, ParseError> {
    parse_type_with_defs(src, &[])
}

/// Parse a type, resolving the given names as abbreviations.
pub fn parse_type_with_defs(src: &str, tydefs: &[(&str, Ty)]) -> Result<Ty, ParseError> {
    let mut p = P::with_defs(src, tydefs, &[])?;
    let t = p.ty()?;
    p.expect_done()?;
    Ok(t)
}

/// Parse a closed typed term.
pub fn parse_term(src: &str) -> Result<Tm, ParseError> {
    parse_term_with(src, &[])
}

/// Parse a typed term whose free variables are bound by `free`
/// (outermost first).
pub fn parse_term_with(src: &str, free: &[(&str, Ty)]) -> Result<Tm, ParseError> {
    let mut p = P::new(src)?;
    let mut sc = Scope {
        names: free.iter().map(|(n, _)| n.to_string()).collect(),
        tys: free.iter().map(|(_, t)| t.clone()).collect(),
    };
    let (t, _) = p.term(&mut sc)?;
    p.expect_done()?;
    Ok(t)
}

/// Parse a closed typed term, resolving type abbreviations and closed
/// term definitions by name.
pub fn parse_term_with_defs(
    src: &str,
    tydefs: &[(&str, Ty)],
    tmdefs: &[(&str, Tm)],
) -> Result<Tm, ParseError> {
    let mut p = P::with_defs(src, tydefs, tmdefs)?;
    let mut sc = Scope {
        names: Vec::new(),
        tys: Vec::new(),
    };
    let (t, _) = p.term(&mut sc)?;
    p.expect_done()?;
    Ok(t)
}

/// Parse a closed untyped term.
pub fn parse_untyped(src: &str) -> Result<UTm, ParseError> {
    let mut p = P::new(src)?;
    let t = p.uterm(&mut Vec::new())?;
    p.expect_done()?;
    Ok(t)
}

/// Render an untyped term with machine-chosen binder names; free variables
/// under an ambient scope of `n` are named `f1..fn`, outermost first.
pub fn print_untyped(t: &UTm, scope: usize) -> String {
    fn go(t: &UTm, depth: usize, scope: usize, min: u8, out: &mut String) {
        match &**t {
            crate::syntax::UTerm::Var(i) => {
                if *i <= depth {
                    out.push_str(&format!("v{}", depth - i + 1));
                } else {
                    // Free variable; index past the binders into the scope.
                    out.push_str(&format!("f{}", scope + depth - i + 1));
                }
            }
            crate::syntax::UTerm::Abs(b) => {
                if min > 0 {
                    out.push('(');
                }
                out.push_str(&format!("\\v{}. ", depth + 1));
                go(b, depth + 1, scope, 0, out);
                if min > 0 {
                    out.push(')');
                }
            }
            crate::syntax::UTerm::App(f, a) => {
                if min > 1 {
                    out.push('(');
                }
                go(f, depth, scope, 1, out);
                out.push(' ');
                go(a, depth, scope, 2, out);
                if min > 1 {
                    out.push(')');
                }
            }
        }
    }
    let mut s = String::new();
    go(t, 0, scope, 0, &mut s);
    s
}

impl std::fmt::Display for crate::syntax::UTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_untyped(&Rc::new(self.clone()), 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::print::{print_term, print_type};
    use crate::syntax::*;

    #[test]
    fn parses_types_with_all_connectives() {
        let o = base();
        let oo = arrow(o.clone(), o.clone());
        assert_eq!(parse_type("o").unwrap(), o);
        assert_eq!(parse_type("1").unwrap(), unit_ty());
        assert_eq!(parse_type("o -> o -> o").unwrap(), arrow(o.clone(), oo.clone()));
        assert_eq!(
            parse_type("o * o -> o").unwrap(),
            arrow(prod(o.clone(), o.clone()), o.clone())
        );
        // `*` binds tighter than `->`, `^` tighter than `*`, `^` right-nests.
        assert_eq!(parse_type("o^2 -> o").unwrap(), parse_type("o * o -> o").unwrap());
        assert_eq!(
            parse_type("(o -> o)^2 -> o -> o").unwrap(),
            arrow(pow(&oo, 2), oo.clone())
        );
        assert_eq!(parse_type("o^3").unwrap(), prod(o.clone(), prod(o.clone(), o.clone())));
        // `*` is left-associative, unlike the power macro.
        assert_eq!(
            parse_type("o * o * o").unwrap(),
            prod(prod(o.clone(), o.clone()), o.clone())
        );
    }

    #[test]
    fn parses_terms_and_resolves_binders() {
        let o = base();
        let tru = parse_term("\\(x: o*o). x.1").unwrap();
        assert_eq!(tru, lam(prod(o.clone(), o.clone()), fst(var(0))));
        let t = parse_term("(\\(b: o*o -> o). b) (\\(x: o*o). x.1)").unwrap();
        assert_eq!(
            t,
            app(
                lam(arrow(prod(o.clone(), o.clone()), o.clone()), var(0)),
                tru.clone()
            )
        );
    }

    #[test]
    fn shadowing_picks_the_innermost_binder() {
        let t = parse_term("\\(x: o). \\(x: o -> o). x").unwrap();
        assert_eq!(
            t,
            lam(base(), lam(arrow(base(), base()), var(0)))
        );
    }

    #[test]
    fn projections_address_the_unfolded_product() {
        // On o^3, `.2` selects the middle component: Fst (Snd x).
        let t = parse_term("\\(x: o^3). x.2").unwrap();
        assert_eq!(t, lam(pow(&base(), 3), fst(snd(var(0)))));
        let t = parse_term("\\(x: o^3). x.3").unwrap();
        assert_eq!(t, lam(pow(&base(), 3), snd(snd(var(0)))));
        // On a binary product whose components are functions, `.2` is Snd.
        let t = parse_term("\\(a: (o -> o)^2). a.2").unwrap();
        assert_eq!(t, lam(pow(&arrow(base(), base()), 2), snd(var(0))));
    }

    #[test]
    fn tuples_right_nest() {
        let t = parse_term("\\(x: o). <x, x, ()>").unwrap();
        assert_eq!(
            t,
            lam(base(), pair(var(0), pair(var(0), unit_tm())))
        );
    }

    #[test]
    fn reports_unbound_variables() {
        assert!(matches!(
            parse_term("\\(x: o). y").unwrap_err(),
            ParseError::Unbound { name, .. } if name == "y"
        ));
    }

    #[test]
    fn reports_elaboration_errors() {
        assert!(matches!(
            parse_term("\\(x: o). x.2").unwrap_err(),
            ParseError::Elaborate { .. }
        ));
        assert!(matches!(
            parse_term("\\(x: o). x x").unwrap_err(),
            ParseError::Elaborate { .. }
        ));
    }

    #[test]
    fn types_round_trip_through_print() {
        for src in [
            "o",
            "1",
            "o -> o",
            "(o -> o)^2 -> o -> o",
            "o * o * o",
            "o * (o * o)",
            "(o * o) * (o * o)",
            "o^2 -> o",
            "(o -> o) * (o * o -> o) -> 1 * o",
        ] {
            let t = parse_type(src).unwrap();
            let printed = print_type(&t);
            assert_eq!(parse_type(&printed).unwrap(), t, "{src} -> {printed}");
        }
    }

    #[test]
    fn terms_round_trip_through_print() {
        for src in [
            "\\(x: o*o). x.1",
            "\\(a: (o -> o)^2). \\(e: o). a.2 (a.1 (a.2 (a.2 (a.1 e))))",
            "\\(x: o^3). <x.3, x.2, x.1>",
            "\\(f: o -> 1 * o). \\(y: o). (f y).2",
            "\\(u: 1). ()",
            "\\(p: (o*o*o) * o). p.1.2",
        ] {
            let t = parse_term(src).unwrap();
            let printed = print_term(&t);
            assert_eq!(parse_term(&printed).unwrap(), t, "{src} -> {printed}");
        }
    }

    #[test]
    fn parses_untyped_terms() {
        let t = parse_untyped("\\x. \\y. x (\\z. z y)").unwrap();
        assert_eq!(
            t,
            uabs(uabs(uapp(uvar(2), uabs(uapp(uvar(1), uvar(2))))))
        );
        assert!(t.scoped_in(0));
        let printed = print_untyped(&t, 0);
        assert_eq!(parse_untyped(&printed).unwrap(), t);
        assert!(matches!(
            parse_untyped("\\x. y").unwrap_err(),
            ParseError::Unbound { .. }
        ));
    }
}
