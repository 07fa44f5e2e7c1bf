//! Text forms for objects, morphisms and generator expressions.
//!
//! ```text
//! object    := term ('@' term)*            tensor, right-nested
//! term      := factor ('*' factor)*        product, right-nested
//! factor    := 'k' | 'W' ['^' INT] | INT 'W' | '(' object ')'
//!
//! morphism  := NAME ':' object '->' object (';' clause)* [';']
//! clause    := x[INT] '|->' poly
//! poly      := '0' | term ('+' term)*
//! term      := [INT] y[INT]*               juxtaposition is product; any
//!                                          single letter may name targets
//!
//! expr      := 'id(' object ')' | 'eps' | 'eta' | 'plus' | 'l' | 'c'
//!            | 'ghat(' INT ')' | 'proj(' object ',' ('1'|'2') ')'
//!            | 'tensor(' expr ',' expr ')' | 'comp(' expr ',' expr ')'
//!            | 'pair(' object ',' expr ',' expr ')'
//!
//! graph     := INT ':' (INT '-' INT)*      vertex count, then 1-based edges
//! ```
//!
//! `⊗` and `×` are accepted for `@` and `*`. Generators without an index
//! (`x`, `y`) are allowed when the object has exactly one. `#` starts a
//! comment running to the end of the line.

use std::fmt;

use thiserror::Error;

use crate::cograph::{Cotree, Graph, MAX_SET_VERTICES};
use crate::genexpr::GenExpr;
use crate::morphism::{Morphism, MorphismError};
use crate::rig::Rig;
use crate::weilalg::{Polynomial, WeilObject};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: expected {expected}, found {found}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Invalid(#[from] MorphismError),
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        loop {
            let rest = &self.src[self.pos..];
            let trimmed = rest.trim_start();
            self.pos += rest.len() - trimmed.len();
            if trimmed.starts_with('#') {
                self.pos += trimmed.find('\n').unwrap_or(trimmed.len());
            } else {
                break;
            }
        }
    }

    fn rest(&mut self) -> &'a str {
        self.skip_ws();
        &self.src[self.pos..]
    }

    fn error(&mut self, expected: &str) -> SyntaxError {
        self.skip_ws();
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        let found = match self.src[self.pos..].chars().next() {
            None => "end of input".to_string(),
            Some(_) => {
                let tok: String = self.src[self.pos..]
                    .chars()
                    .take_while(|c| !c.is_whitespace())
                    .take(12)
                    .collect();
                format!("`{tok}`")
            }
        };
        SyntaxError {
            line,
            col,
            expected: expected.to_string(),
            found,
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), SyntaxError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("`{tok}`")))
        }
    }

    fn int(&mut self) -> Option<u64> {
        let rest = self.rest();
        let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return None;
        }
        let v = rest[..digits].parse().ok()?;
        self.pos += digits;
        Some(v)
    }

    fn expect_int(&mut self) -> Result<u64, SyntaxError> {
        self.int().ok_or_else(|| self.error("an integer"))
    }

    fn ident(&mut self) -> Option<&'a str> {
        let rest = self.rest();
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_alphabetic() || c == '_' || (i > 0 && c.is_ascii_digit()))
            .count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    /// Letters only, leaving any trailing index for [`Cursor::int`].
    fn word(&mut self) -> Option<&'a str> {
        let rest = self.rest();
        let len = rest.bytes().take_while(u8::is_ascii_alphabetic).count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    fn at_end(&mut self) -> bool {
        self.rest().is_empty()
    }

    fn finish(&mut self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }
}

pub fn parse_object(text: &str) -> Result<Cotree, SyntaxError> {
    let mut c = Cursor::new(text);
    let t = object(&mut c)?;
    c.finish()?;
    Ok(t)
}

/// Inverse of the [`Graph`] display form, e.g. `4: 1-2 2-3 3-4`.
pub fn parse_graph(text: &str) -> Result<Graph, SyntaxError> {
    let mut c = Cursor::new(text);
    let n = c.expect_int()? as usize;
    if n > MAX_SET_VERTICES {
        return Err(c.error(&format!("at most {MAX_SET_VERTICES} vertices")));
    }
    c.expect(":")?;
    let mut g = Graph::empty(n);
    while !c.at_end() {
        let u = vertex(&mut c, n)?;
        c.expect("-")?;
        let save = c.pos;
        let v = vertex(&mut c, n)?;
        if u == v {
            c.pos = save;
            return Err(c.error("a vertex other than the first endpoint"));
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

fn vertex(c: &mut Cursor, n: usize) -> Result<usize, SyntaxError> {
    let save = c.pos;
    match c.int() {
        Some(v) if (1..=n as u64).contains(&v) => Ok(v as usize - 1),
        _ => {
            c.pos = save;
            Err(c.error(&format!("a vertex 1..{n}")))
        }
    }
}

fn object(c: &mut Cursor) -> Result<Cotree, SyntaxError> {
    let first = term(c)?;
    if c.eat("@") || c.eat("⊗") {
        Ok(Cotree::union(first, object(c)?))
    } else {
        Ok(first)
    }
}

fn term(c: &mut Cursor) -> Result<Cotree, SyntaxError> {
    let first = factor(c)?;
    if c.eat("*") || c.eat("×") {
        Ok(Cotree::join(first, term(c)?))
    } else {
        Ok(first)
    }
}

fn factor(c: &mut Cursor) -> Result<Cotree, SyntaxError> {
    if c.eat("(") {
        let t = object(c)?;
        c.expect(")")?;
        return Ok(t);
    }
    if let Some(n) = c.int() {
        c.expect("W")?;
        return Ok(Cotree::n_w(n as usize));
    }
    if c.eat("W") {
        if c.eat("^") {
            return Ok(Cotree::w_pow(c.expect_int()? as usize));
        }
        return Ok(Cotree::W);
    }
    if c.eat("k") {
        return Ok(Cotree::K);
    }
    Err(c.error("an object (`k`, `W`, `nW`, `W^n` or `(`)"))
}

fn chain_len(t: &Cotree, union: bool) -> Option<usize> {
    match (t, union) {
        (Cotree::W, _) => Some(1),
        (Cotree::Union(a, b), true) | (Cotree::Join(a, b), false) if **a == Cotree::W => {
            chain_len(b, union).map(|n| n + 1)
        }
        _ => None,
    }
}

/// Printed form and its binding strength: 3 atom, 2 product, 1 tensor.
fn show(t: &Cotree) -> (String, u8) {
    if let Some(n) = chain_len(t, true).filter(|&n| n > 1) {
        return (format!("{n}W"), 3);
    }
    if let Some(n) = chain_len(t, false).filter(|&n| n > 1) {
        return (format!("W^{n}"), 3);
    }
    let wrap = |t: &Cotree, min: u8| {
        let (s, p) = show(t);
        if p < min {
            format!("({s})")
        } else {
            s
        }
    };
    match t {
        Cotree::K => ("k".into(), 3),
        Cotree::W => ("W".into(), 3),
        Cotree::Union(a, b) => (format!("{} @ {}", wrap(a, 2), wrap(b, 1)), 1),
        Cotree::Join(a, b) => (format!("{} * {}", wrap(a, 3), wrap(b, 2)), 2),
    }
}

impl fmt::Display for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&show(self).0)
    }
}

/// `letter` restricts the generator name; `None` accepts any single letter.
fn generator_index(c: &mut Cursor, letter: Option<&str>, n: usize) -> Result<usize, SyntaxError> {
    let shown = letter.unwrap_or("y");
    let what = if n == 1 {
        format!("`{shown}` or `{shown}1`")
    } else {
        format!("a generator {shown}1..{shown}{n}")
    };
    let save = c.pos;
    match c.word() {
        Some(w) if letter.map_or(w.len() == 1, |l| w == l) => {}
        _ => {
            c.pos = save;
            return Err(c.error(&what));
        }
    }
    let digits_follow = c.src[c.pos..].starts_with(|ch: char| ch.is_ascii_digit());
    let idx = if digits_follow { c.int() } else { None };
    match idx {
        None if n == 1 => Ok(0),
        Some(i) if (1..=n as u64).contains(&i) => Ok(i as usize - 1),
        _ => {
            c.pos = save;
            Err(c.error(&what))
        }
    }
}

fn starts_generator(c: &mut Cursor) -> bool {
    let mut chars = c.rest().chars();
    chars.next().is_some_and(|ch| ch.is_ascii_lowercase()) && !chars.next().is_some_and(|ch| ch.is_ascii_alphabetic())
}

fn polynomial(c: &mut Cursor, target: &WeilObject, rig: Rig) -> Result<Polynomial, SyntaxError> {
    let mut p = Polynomial::zero(rig);
    loop {
        let coeff = c.int();
        let mut mono = Polynomial::one(rig);
        let mut any = false;
        while starts_generator(c) {
            let v = generator_index(c, None, target.n())?;
            mono = target.mul(&mono, &Polynomial::generator(rig, v));
            any = true;
        }
        match (coeff, any) {
            (Some(0), false) => {}
            (None, false) => return Err(c.error("a term")),
            (Some(_), false) => return Err(c.error("a generator (images have no constant term)")),
            (k, true) => p = p.add(&mono.scale(rig.from_integer(k.unwrap_or(1)))),
        }
        if !c.eat("+") {
            return Ok(p);
        }
    }
}

/// Parses `NAME : SRC -> TGT ; x1 |-> … ; …` and validates the result.
pub fn parse_morphism(text: &str, rig: Rig) -> Result<(String, Morphism), ParseError> {
    let mut c = Cursor::new(text);
    let name = c.ident().ok_or_else(|| c.error("a morphism name"))?.to_string();
    c.expect(":")?;
    let source = WeilObject::new(object(&mut c)?);
    c.expect("->")?;
    let target = WeilObject::new(object(&mut c)?);
    let mut images: Vec<Option<Polynomial>> = vec![None; source.n()];
    while c.eat(";") {
        if c.at_end() {
            break;
        }
        if source.n() == 0 {
            return Err(c.error("end of input (the source has no generators)").into());
        }
        let save = c.pos;
        let i = generator_index(&mut c, Some("x"), source.n())?;
        if images[i].is_some() {
            c.pos = save;
            return Err(c.error("a generator without an earlier clause").into());
        }
        c.expect("|->")?;
        images[i] = Some(polynomial(&mut c, &target, rig)?);
    }
    c.finish()?;
    let images = images
        .into_iter()
        .map(|p| p.unwrap_or_else(|| Polynomial::zero(rig)))
        .collect();
    Ok((name, Morphism::new(source, target, rig, images)?))
}

/// Inverse of [`parse_morphism`]; every generator gets a clause.
pub fn format_morphism(name: &str, f: &Morphism) -> String {
    let mut s = format!("{name} : {} -> {}", f.source.cotree(), f.target.cotree());
    let single_src = f.source.n() == 1;
    let single_tgt = f.target.n() == 1;
    for (i, p) in f.images().iter().enumerate() {
        let x = if single_src {
            "x".to_string()
        } else {
            format!("x{}", i + 1)
        };
        s.push_str(&format!(" ; {x} |-> {}", p.display("y", single_tgt)));
    }
    s
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_morphism("f", self))
    }
}

pub fn parse_genexpr(text: &str) -> Result<GenExpr, SyntaxError> {
    let mut c = Cursor::new(text);
    let e = genexpr(&mut c)?;
    c.finish()?;
    Ok(e)
}

fn genexpr(c: &mut Cursor) -> Result<GenExpr, SyntaxError> {
    let save = c.pos;
    let Some(head) = c.ident() else {
        return Err(c.error("an expression"));
    };
    let e = match head {
        "eps" => GenExpr::Eps,
        "eta" => GenExpr::Eta,
        "plus" => GenExpr::Plus,
        "l" => GenExpr::L,
        "c" => GenExpr::C,
        "id" => {
            c.expect("(")?;
            let t = object(c)?;
            c.expect(")")?;
            GenExpr::Id(t)
        }
        "ghat" => {
            c.expect("(")?;
            let r = c.expect_int()?;
            c.expect(")")?;
            GenExpr::Ghat(r)
        }
        "proj" => {
            c.expect("(")?;
            let t = object(c)?;
            c.expect(",")?;
            let side = match c.int() {
                Some(s @ (1 | 2)) => s as u8,
                _ => return Err(c.error("projection side `1` or `2`")),
            };
            c.expect(")")?;
            GenExpr::Proj(t, side)
        }
        "tensor" | "comp" => {
            c.expect("(")?;
            let a = genexpr(c)?;
            c.expect(",")?;
            let b = genexpr(c)?;
            c.expect(")")?;
            if head == "tensor" {
                GenExpr::tensor(a, b)
            } else {
                GenExpr::comp(a, b)
            }
        }
        "pair" => {
            c.expect("(")?;
            let t = object(c)?;
            c.expect(",")?;
            let a = genexpr(c)?;
            c.expect(",")?;
            let b = genexpr(c)?;
            c.expect(")")?;
            GenExpr::pair(t, a, b)
        }
        _ => {
            c.pos = save;
            return Err(c.error("one of id, eps, eta, plus, l, c, ghat, proj, tensor, comp, pair"));
        }
    };
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cograph::VertexSet;
    use crate::morphism::generators;

    #[test]
    fn graph_round_trip() {
        let g = parse_graph("4: 1-2 2-3 3-4").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(parse_graph(&g.to_string()).unwrap(), g);
        assert_eq!(parse_graph("0:").unwrap(), Graph::empty(0));
        assert!(parse_graph("3: 1-4").is_err());
        assert!(parse_graph("3: 2-2").is_err());
    }

    #[test]
    fn object_examples() {
        assert_eq!(
            parse_object("W^2 @ W").unwrap(),
            Cotree::union(Cotree::w_pow(2), Cotree::W)
        );
        assert_eq!(parse_object("k").unwrap(), Cotree::K);
        assert_eq!(parse_object("W * 2W").unwrap(), Cotree::join(Cotree::W, Cotree::n_w(2)));
        assert_eq!(
            parse_object("W ⊗ W × W").unwrap(),
            Cotree::union(Cotree::W, Cotree::w_pow(2))
        );
        assert_eq!(parse_object("3W").unwrap(), Cotree::n_w(3));
    }

    #[test]
    fn object_errors_have_positions() {
        let e = parse_object("W @\n  (W * )").unwrap_err();
        assert_eq!((e.line, e.col), (2, 8));
        assert!(parse_object("W W").is_err());
        assert!(parse_object("2").is_err());
    }

    #[test]
    fn object_printing() {
        let cases = [
            (Cotree::union(Cotree::n_w(2), Cotree::W), "2W @ W"),
            (Cotree::join(Cotree::w_pow(2), Cotree::W), "W^2 * W"),
            (Cotree::join(Cotree::W, Cotree::n_w(2)), "W * 2W"),
            (Cotree::join(Cotree::n_w(2), Cotree::W), "2W * W"),
            (Cotree::union(Cotree::W, Cotree::w_pow(2)), "W @ W^2"),
            (
                Cotree::join(Cotree::union(Cotree::W, Cotree::w_pow(2)), Cotree::W),
                "(W @ W^2) * W",
            ),
            (Cotree::union(Cotree::K, Cotree::W), "k @ W"),
        ];
        for (t, s) in cases {
            assert_eq!(t.to_string(), s);
            assert_eq!(parse_object(s).unwrap(), t);
        }
    }

    #[test]
    fn morphism_examples() {
        let (name, f) = parse_morphism("f : 2W -> 3W ; x1 |-> y1 y2 + y2 y3 ; x2 |-> y1 + y1 y3", Rig::Bool2).unwrap();
        assert_eq!(name, "f");
        assert_eq!(f.image(0).display("y", false), "y1 y2 + y2 y3");
        assert_eq!(
            format_morphism("f", &f),
            "f : 2W -> 3W ; x1 |-> y1 y2 + y2 y3 ; x2 |-> y1 + y1 y3"
        );

        let (_, z) = parse_morphism("z : W -> k", Rig::Bool2).unwrap();
        assert!(z.is_zero());
        assert_eq!(format_morphism("z", &z), "z : W -> k ; x |-> 0");

        let (_, g) = parse_morphism("g : W -> W ; x |-> 2 x", Rig::Nat).unwrap();
        assert_eq!(g, generators::ghat(2, Rig::Nat));
    }

    #[test]
    fn nat_coefficients_and_juxtaposition() {
        let (_, g) = parse_morphism("g : W -> W ; x |-> 2 y", Rig::Nat).unwrap();
        assert_eq!(g, generators::ghat(2, Rig::Nat));
        let (_, h) = parse_morphism("h : W -> 2W ; x |-> y1y2", Rig::Bool2).unwrap();
        assert_eq!(h, generators::l(Rig::Bool2));
        let (_, b) = parse_morphism("b : W -> W ; x |-> 3 y", Rig::Bool2).unwrap();
        assert_eq!(b.image(0).coeff(VertexSet(1)), 1);
    }

    #[test]
    fn morphism_errors() {
        let bad = parse_morphism("f : W -> 2W ; x |-> y1 + y2", Rig::Bool2).unwrap_err();
        assert!(matches!(
            bad,
            ParseError::Invalid(MorphismError::RelationViolation { .. })
        ));
        let dup = parse_morphism("f : 2W -> W ; x1 |-> y ; x1 |-> 0", Rig::Bool2).unwrap_err();
        assert!(matches!(dup, ParseError::Syntax(SyntaxError { col: 26, .. })), "{dup}");
        assert!(parse_morphism("f : W -> W ; x |-> 2", Rig::Nat).is_err());
        assert!(parse_morphism("f : W -> 2W ; x |-> y3", Rig::Nat).is_err());
        assert!(parse_morphism("f W -> W", Rig::Nat).is_err());
    }

    #[test]
    fn genexpr_round_trip() {
        for s in [
            "comp(tensor(id(W), eta), l)",
            "pair(W^2, proj(W^2, 1), comp(ghat(3), proj(W^2, 2)))",
            "tensor(id(2W @ W), c)",
            "comp(plus, pair(W^2, id(W), id(W)))",
        ] {
            let e = parse_genexpr(s).unwrap();
            assert_eq!(e.to_string(), s);
        }
        assert!(parse_genexpr("comp(l)").is_err());
        assert!(parse_genexpr("proj(W^2, 3)").is_err());
    }
}
