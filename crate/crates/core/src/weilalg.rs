//! Presented algebras `k[G]` and square-free polynomial arithmetic.
//!
//! A monomial is a non-empty independent set of `G`; the relations `x_u x_v = 0`
//! for `u = v` or `uv` an edge are enforced by [`WeilObject::mono_mul`], so no
//! exponents are ever stored.

use std::fmt;

use smallvec::SmallVec;

use crate::cograph::{Cotree, Graph, VertexSet};
use crate::rig::{Coeff, Rig};

/// An object of the category: a cotree together with its realized graph.
///
/// Two objects are equal when their labelled graphs coincide; the cotree is
/// one presentation of that graph.
#[derive(Clone, Debug)]
pub struct WeilObject {
    cotree: Cotree,
    graph: Graph,
}

impl PartialEq for WeilObject {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
    }
}

impl Eq for WeilObject {}

impl std::hash::Hash for WeilObject {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.graph.hash(state);
    }
}

impl WeilObject {
    pub fn new(cotree: Cotree) -> Self {
        let graph = cotree.realize();
        WeilObject { cotree, graph }
    }

    pub fn k() -> Self {
        Self::new(Cotree::K)
    }

    pub fn w() -> Self {
        Self::new(Cotree::W)
    }

    pub fn cotree(&self) -> &Cotree {
        &self.cotree
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `A × B`.
    pub fn product(&self, other: &WeilObject) -> WeilObject {
        Self::new(Cotree::join(self.cotree.clone(), other.cotree.clone()))
    }

    /// `A ⊗ B`.
    pub fn coproduct(&self, other: &WeilObject) -> WeilObject {
        WeilObject {
            cotree: Cotree::union(self.cotree.clone(), other.cotree.clone()),
            graph: crate::cograph::disjoint_union(&self.graph, &other.graph),
        }
    }

    pub fn is_monomial(&self, u: VertexSet) -> bool {
        !u.is_empty() && u.0 >> self.n() == 0 && self.graph.is_independent(u)
    }

    /// Product of two monomials, `None` when it vanishes.
    pub fn mono_mul(&self, u: VertexSet, v: VertexSet) -> Option<VertexSet> {
        if u.intersects(v) || self.graph.adjacent_sets(u, v) {
            None
        } else {
            Some(u.union(v))
        }
    }

    pub fn mul(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        assert_eq!(p.rig, q.rig, "rig mismatch");
        let r = p.rig;
        let mut out = Polynomial::zero(r);
        out.constant = r.mul(p.constant, q.constant);
        if p.constant != 0 {
            for &(m, c) in &q.terms {
                out.add_term(m, r.mul(p.constant, c));
            }
        }
        if q.constant != 0 {
            for &(m, c) in &p.terms {
                out.add_term(m, r.mul(q.constant, c));
            }
        }
        for &(a, ca) in &p.terms {
            for &(b, cb) in &q.terms {
                if let Some(m) = self.mono_mul(a, b) {
                    out.add_term(m, r.mul(ca, cb));
                }
            }
        }
        out
    }

    /// Product of the generators in `u` after substituting `images` for them.
    pub fn mul_all<'a>(&self, rig: Rig, it: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
        it.into_iter().fold(Polynomial::one(rig), |acc, p| self.mul(&acc, p))
    }

    /// `k[x1,x2]/x1^2,x2^2,x1x2`.
    pub fn presentation(&self) -> String {
        let n = self.n();
        if n == 0 {
            return "k".into();
        }
        let name = |i: usize| if n == 1 { "x".to_string() } else { format!("x{}", i + 1) };
        let gens: Vec<String> = (0..n).map(name).collect();
        let mut rels: Vec<String> = (0..n).map(|i| format!("{}^2", name(i))).collect();
        rels.extend(
            self.graph
                .edges()
                .into_iter()
                .map(|(u, v)| format!("{}{}", name(u), name(v))),
        );
        format!("k[{}]/{}", gens.join(","), rels.join(","))
    }
}

/// `constant + Σ c_U · x_U` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    pub rig: Rig,
    pub constant: Coeff,
    /// Sorted by monomial.
    terms: SmallVec<[(VertexSet, Coeff); 4]>,
}

impl Polynomial {
    pub fn zero(rig: Rig) -> Self {
        Polynomial {
            rig,
            constant: 0,
            terms: SmallVec::new(),
        }
    }

    pub fn one(rig: Rig) -> Self {
        Polynomial {
            rig,
            constant: 1,
            terms: SmallVec::new(),
        }
    }

    pub fn monomial(rig: Rig, u: VertexSet, c: Coeff) -> Self {
        let mut p = Self::zero(rig);
        p.add_term(u, c);
        p
    }

    pub fn generator(rig: Rig, v: usize) -> Self {
        Self::monomial(rig, VertexSet::singleton(v), 1)
    }

    pub fn from_terms(rig: Rig, terms: impl IntoIterator<Item = (VertexSet, Coeff)>) -> Self {
        let mut p = Self::zero(rig);
        for (u, c) in terms {
            p.add_term(u, c);
        }
        p
    }

    /// Adds `c · x_u`; `u` must be non-empty.
    pub fn add_term(&mut self, u: VertexSet, c: Coeff) {
        debug_assert!(!u.is_empty());
        debug_assert!(self.rig.is_valid(c));
        if c == 0 {
            return;
        }
        match self.terms.binary_search_by_key(&u, |t| t.0) {
            Ok(k) => self.terms[k].1 = self.rig.add(self.terms[k].1, c),
            Err(k) => self.terms.insert(k, (u, c)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (VertexSet, Coeff)> + '_ {
        self.terms.iter().copied()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, u: VertexSet) -> Coeff {
        self.terms
            .binary_search_by_key(&u, |t| t.0)
            .map_or(0, |k| self.terms[k].1)
    }

    /// Union of all supports.
    pub fn support(&self) -> VertexSet {
        self.terms.iter().fold(VertexSet::EMPTY, |a, &(u, _)| a.union(u))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.rig, other.rig, "rig mismatch");
        let mut out = self.clone();
        out.constant = self.rig.add(self.constant, other.constant);
        for (u, c) in other.terms() {
            out.add_term(u, c);
        }
        out
    }

    /// `c · self`.
    pub fn scale(&self, c: Coeff) -> Polynomial {
        let mut out = Polynomial::zero(self.rig);
        out.constant = self.rig.mul(c, self.constant);
        for (u, d) in self.terms() {
            out.add_term(u, self.rig.mul(c, d));
        }
        out
    }

    /// Relabels generators; terms whose image is `None` are dropped.
    pub fn remap(&self, f: impl Fn(usize) -> Option<usize>) -> Polynomial {
        let mut out = Polynomial::zero(self.rig);
        out.constant = self.constant;
        'terms: for (u, c) in self.terms() {
            let mut m = VertexSet::EMPTY;
            for v in u.iter() {
                match f(v) {
                    Some(w) => m = m.union(VertexSet::singleton(w)),
                    None => continue 'terms,
                }
            }
            out.add_term(m, c);
        }
        out
    }

    /// Same coefficients read in another rig.
    pub fn with_rig(&self, rig: Rig) -> Polynomial {
        let mut out = Polynomial::zero(rig);
        out.constant = rig.from_integer(self.constant);
        for (u, c) in self.terms() {
            out.add_term(u, rig.from_integer(c));
        }
        out
    }

    /// Text form with generators named `{var}{i}`, or plain `var` when `single`.
    pub fn display(&self, var: &str, single: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        if self.constant != 0 {
            parts.push(self.constant.to_string());
        }
        for (u, c) in self.terms() {
            let mut s = if c == 1 { String::new() } else { format!("{c} ") };
            let names: Vec<String> = u
                .iter()
                .map(|v| {
                    if single {
                        var.to_string()
                    } else {
                        format!("{var}{}", v + 1)
                    }
                })
                .collect();
            s.push_str(&names.join(" "));
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("y", false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cograph::{disjoint_union, join};

    fn vs(s: &[usize]) -> VertexSet {
        VertexSet::from_indices(s.iter().map(|x| x - 1))
    }

    fn poly(r: Rig, terms: &[(&[usize], Coeff)]) -> Polynomial {
        Polynomial::from_terms(r, terms.iter().map(|(s, c)| (vs(s), *c)))
    }

    #[test]
    fn presentations() {
        let two = WeilObject::new(Cotree::n_w(2));
        assert_eq!(two.presentation(), "k[x1,x2]/x1^2,x2^2");
        assert_eq!(
            WeilObject::new(Cotree::w_pow(2)).presentation(),
            "k[x1,x2]/x1^2,x2^2,x1x2"
        );
        assert_eq!(WeilObject::k().n(), 0);
        assert_eq!(WeilObject::k().presentation(), "k");
        assert_eq!(WeilObject::w().presentation(), "k[x]/x^2");
    }

    #[test]
    fn product_and_coproduct() {
        let w = WeilObject::w();
        assert_eq!(w.product(&w), WeilObject::new(Cotree::w_pow(2)));
        assert_eq!(WeilObject::k().product(&w), w);
        let star = w.product(&WeilObject::new(Cotree::n_w(2)));
        assert_eq!(star.graph().edges(), vec![(0, 1), (0, 2)]);
        assert_eq!(w.coproduct(&w), WeilObject::new(Cotree::n_w(2)));
        assert_eq!(WeilObject::k().coproduct(&star), star);
        let w2w = WeilObject::new(Cotree::w_pow(2)).coproduct(&w);
        assert_eq!(w2w.presentation(), "k[x1,x2,x3]/x1^2,x2^2,x3^2,x1x2");
    }

    fn small_cotrees() -> Vec<Cotree> {
        let mut by_leaves = vec![vec![Cotree::K], vec![Cotree::W]];
        for n in 2..=3 {
            let mut out = Vec::new();
            for a in 1..n {
                for l in &by_leaves[a] {
                    for r in &by_leaves[n - a] {
                        out.push(Cotree::join(l.clone(), r.clone()));
                        out.push(Cotree::union(l.clone(), r.clone()));
                    }
                }
            }
            by_leaves.push(out);
        }
        by_leaves.concat()
    }

    #[test]
    fn tensor_and_product_realize_graph_operations() {
        for a in small_cotrees() {
            for b in small_cotrees() {
                if a.n_vertices() + b.n_vertices() > 3 {
                    continue;
                }
                let (oa, ob) = (WeilObject::new(a.clone()), WeilObject::new(b.clone()));
                assert_eq!(oa.coproduct(&ob).graph(), &disjoint_union(&a.realize(), &b.realize()));
                assert_eq!(oa.product(&ob).graph(), &join(&a.realize(), &b.realize()));
            }
        }
    }

    #[test]
    fn mono_mul_examples() {
        let two = WeilObject::new(Cotree::n_w(2));
        let sq = WeilObject::new(Cotree::w_pow(2));
        assert_eq!(two.mono_mul(vs(&[1]), vs(&[2])), Some(vs(&[1, 2])));
        assert_eq!(sq.mono_mul(vs(&[1]), vs(&[2])), None);
        assert_eq!(two.mono_mul(vs(&[1]), vs(&[1])), None);
    }

    #[test]
    fn poly_examples() {
        let two = WeilObject::new(Cotree::n_w(2));
        let b = Rig::Bool2;
        let p = poly(b, &[(&[1], 1), (&[1, 2], 1)]);
        assert_eq!(p.add(&poly(b, &[(&[1], 1)])), p);
        let s = poly(b, &[(&[1], 1), (&[2], 1)]);
        assert_eq!(two.mul(&s, &s), poly(b, &[(&[1, 2], 1)]));
        let s = poly(Rig::Nat, &[(&[1], 1), (&[2], 1)]);
        assert_eq!(two.mul(&s, &s), poly(Rig::Nat, &[(&[1, 2], 2)]));
        assert_eq!(s.display("y", false), "y1 + y2");
        assert_eq!(two.mul(&s, &s).to_string(), "2 y1 y2");
    }

    #[test]
    fn augmentation_ideal_is_nilpotent() {
        for t in small_cotrees() {
            let a = WeilObject::new(t);
            let n = a.n();
            let monos: Vec<VertexSet> = (1u64..1 << n).map(VertexSet).filter(|&u| a.is_monomial(u)).collect();
            let all: Vec<Polynomial> = (1u64..1 << monos.len())
                .map(|m| {
                    Polynomial::from_terms(
                        Rig::Bool2,
                        monos
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| m >> i & 1 == 1)
                            .map(|(_, &u)| (u, 1)),
                    )
                })
                .collect();
            // Products of n+1 factors, built by repeated multiplication with every element.
            let mut layer = all.clone();
            for _ in 0..n {
                let mut next: Vec<Polynomial> = Vec::new();
                for p in &layer {
                    for q in &all {
                        let r = a.mul(p, q);
                        if !r.is_zero() && !next.contains(&r) {
                            next.push(r);
                        }
                    }
                }
                layer = next;
            }
            assert!(
                layer.is_empty(),
                "non-zero product of {} factors in {}",
                n + 1,
                a.presentation()
            );
        }
    }
}
