//! Morphisms `A → B`: one constant-free polynomial over `B` per generator of `A`.
//!
//! A list of images is a morphism exactly when `f(a_i)² = 0` for every
//! generator and `f(a_i) f(a_j) = 0` for every edge `a_i a_j` of `G_A`.
//!
//! Products `B₁ × B₂` may sit inside a tensor context, `L ⊗ (B₁ × B₂) ⊗ R`;
//! [`Morphism::projection`] and [`Morphism::pair`] act at the leftmost such
//! factor (see [`Focus`]). Pairing never fails validity: every monomial of
//! the product survives one of the two projections, each projection is
//! injective on the monomials it keeps, and rig addition has no
//! cancellation, so a non-zero product would stay non-zero under one of them.

use std::fmt;

use thiserror::Error;

use crate::cograph::{Cotree, SetFamily, VertexSet};
use crate::rig::{Coeff, Rig};
use crate::weilalg::{Polynomial, WeilObject};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    /// `f(a_i) f(a_j) ≠ 0` for a relation `a_i a_j` (0-based; `i = j` for squares).
    #[error("relation x{}·x{} violated: image product is {witness}", .i + 1, .j + 1)]
    RelationViolation { i: usize, j: usize, witness: Polynomial },
    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: String, found: String },
    #[error("rig mismatch: {0} vs {1}")]
    RigMismatch(Rig, Rig),
    #[error("expected {expected} generator images, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("image of x{} has a non-zero constant term", .0 + 1)]
    NonZeroConstant(usize),
    #[error("image of x{} uses {mono}, which is not a non-zero monomial of the target", .gen + 1)]
    BadMonomial { gen: usize, mono: VertexSet },
    #[error("coefficient {1} is not valid in {0}")]
    BadCoefficient(Rig, Coeff),
    #[error("object {0:?} has no product factor")]
    NoProduct(Cotree),
    #[error("paired maps disagree on the shared factor at x{}", .0 + 1)]
    PairMismatch(usize),
    #[error("coefficient {0} > 1 has no graph counterpart")]
    NotBoolean(Coeff),
}

type Result<T> = std::result::Result<T, MorphismError>;

fn mismatch(expected: &WeilObject, found: &WeilObject) -> MorphismError {
    MorphismError::TypeMismatch {
        expected: expected.graph().to_string(),
        found: found.graph().to_string(),
    }
}

/// One coloured circle: a term `coeff · x_support` in the image of generator `gen`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circle {
    pub gen: usize,
    pub support: VertexSet,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub source: WeilObject,
    pub target: WeilObject,
    pub rig: Rig,
    images: Vec<Polynomial>,
}

/// The leftmost product reachable from the root through tensors only.
///
/// The object is `L ⊗ (left × right) ⊗ R` where `L` has `offset` vertices.
#[derive(Clone, Debug)]
pub struct Focus {
    pub offset: usize,
    pub left: Cotree,
    pub right: Cotree,
    /// `L ⊗ left ⊗ R` and `L ⊗ right ⊗ R`, keeping the original tree shape.
    pub sides: [Cotree; 2],
    /// Vertex counts of `left` and `right`.
    pub widths: (usize, usize),
}

impl Focus {
    pub fn of(t: &Cotree) -> Option<Focus> {
        match t {
            Cotree::K | Cotree::W => None,
            Cotree::Join(a, b) => Some(Focus {
                offset: 0,
                left: (**a).clone(),
                right: (**b).clone(),
                sides: [(**a).clone(), (**b).clone()],
                widths: (a.n_vertices(), b.n_vertices()),
            }),
            Cotree::Union(a, b) => {
                if let Some(mut f) = Focus::of(a) {
                    f.sides = f.sides.map(|s| Cotree::union(s, (**b).clone()));
                    Some(f)
                } else {
                    let mut f = Focus::of(b)?;
                    f.offset += a.n_vertices();
                    f.sides = f.sides.map(|s| Cotree::union((**a).clone(), s));
                    Some(f)
                }
            }
        }
    }

    fn widths(&self) -> (usize, usize, usize) {
        (self.offset, self.widths.0, self.widths.1)
    }

    /// Where generator `i` of the whole object goes in side `side` (1 or 2).
    pub fn project(&self, side: u8, i: usize) -> Option<usize> {
        let (o, nl, nr) = self.widths();
        match (side, i) {
            (_, i) if i < o => Some(i),
            (1, i) if i < o + nl => Some(i),
            (2, i) if i < o + nl => None,
            (1, i) if i < o + nl + nr => None,
            (2, i) if i < o + nl + nr => Some(i - nl),
            (1, i) => Some(i - nr),
            (_, i) => Some(i - nl),
        }
    }

    /// Where generator `i` of side `side` sits in the whole object.
    pub fn embed(&self, side: u8, i: usize) -> usize {
        let (o, nl, nr) = self.widths();
        match side {
            1 if i < o + nl => i,
            1 => i + nr,
            _ if i < o => i,
            _ => i + nl,
        }
    }

    /// Generators of the whole object lying in `left × right`.
    pub fn hole(&self) -> VertexSet {
        let (o, nl, nr) = self.widths();
        VertexSet(((1u64 << (nl + nr)) - 1) << o)
    }
}

impl Morphism {
    /// Validates raw generator images.
    pub fn new(source: WeilObject, target: WeilObject, rig: Rig, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.n() {
            return Err(MorphismError::ImageCount {
                expected: source.n(),
                found: images.len(),
            });
        }
        for (i, p) in images.iter().enumerate() {
            if p.rig != rig {
                return Err(MorphismError::RigMismatch(rig, p.rig));
            }
            if p.constant != 0 {
                return Err(MorphismError::NonZeroConstant(i));
            }
            for (u, c) in p.terms() {
                if !target.is_monomial(u) {
                    return Err(MorphismError::BadMonomial { gen: i, mono: u });
                }
                if !rig.is_valid(c) {
                    return Err(MorphismError::BadCoefficient(rig, c));
                }
            }
        }
        let f = Morphism {
            source,
            target,
            rig,
            images,
        };
        f.check_relations()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: WeilObject, target: WeilObject, rig: Rig, images: Vec<Polynomial>) -> Self {
        Morphism {
            source,
            target,
            rig,
            images,
        }
    }

    fn check_relations(&self) -> Result<()> {
        let t = &self.target;
        for (i, p) in self.images.iter().enumerate() {
            let sq = t.mul(p, p);
            if !sq.is_zero() {
                return Err(MorphismError::RelationViolation { i, j: i, witness: sq });
            }
        }
        for (i, j) in self.source.graph().edges() {
            let pr = t.mul(&self.images[i], &self.images[j]);
            if !pr.is_zero() {
                return Err(MorphismError::RelationViolation { i, j, witness: pr });
            }
        }
        Ok(())
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Polynomial::is_zero)
    }

    pub fn circles(&self) -> Vec<Circle> {
        self.images
            .iter()
            .enumerate()
            .flat_map(|(gen, p)| p.terms().map(move |(support, coeff)| Circle { gen, support, coeff }))
            .collect()
    }

    /// Circle picture as Graphviz text: the target graph on `y1..`, and for each
    /// source generator a coloured cluster with one node per circle, joined to
    /// the generators it covers.
    pub fn circles_dot(&self) -> String {
        const PALETTE: [&str; 8] = [
            "red",
            "blue",
            "darkgreen",
            "orange",
            "purple",
            "brown",
            "teal",
            "magenta",
        ];
        let mut s = String::from("graph {\n  node [shape=circle];\n");
        for v in 0..self.target.n() {
            s.push_str(&format!("  y{0} [label=\"y{0}\"];\n", v + 1));
        }
        for (u, v) in self.target.graph().edges() {
            s.push_str(&format!("  y{} -- y{};\n", u + 1, v + 1));
        }
        let circles = self.circles();
        for gen in 0..self.source.n() {
            let colour = PALETTE[gen % PALETTE.len()];
            s.push_str(&format!(
                "  subgraph cluster_x{0} {{\n    label=\"x{0}\";\n    color={colour};\n",
                gen + 1
            ));
            for (k, c) in circles.iter().filter(|c| c.gen == gen).enumerate() {
                let label = if c.coeff == 1 {
                    String::new()
                } else {
                    c.coeff.to_string()
                };
                s.push_str(&format!(
                    "    x{}_{} [shape=ellipse, style=dashed, color={colour}, label=\"{label}\"];\n",
                    gen + 1,
                    k + 1
                ));
            }
            s.push_str("  }\n");
            for (k, c) in circles.iter().filter(|c| c.gen == gen).enumerate() {
                for v in c.support.iter() {
                    s.push_str(&format!(
                        "  x{}_{} -- y{} [color={colour}, style=dashed];\n",
                        gen + 1,
                        k + 1,
                        v + 1
                    ));
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn identity(a: &WeilObject, rig: Rig) -> Self {
        let images = (0..a.n()).map(|i| Polynomial::generator(rig, i)).collect();
        Self::new_unchecked(a.clone(), a.clone(), rig, images)
    }

    pub fn zero(a: &WeilObject, b: &WeilObject, rig: Rig) -> Self {
        Self::new_unchecked(a.clone(), b.clone(), rig, vec![Polynomial::zero(rig); a.n()])
    }

    /// The augmentation `A → k`.
    pub fn eps(a: &WeilObject, rig: Rig) -> Self {
        Self::zero(a, &WeilObject::k(), rig)
    }

    /// The unit `k → B`.
    pub fn unit(b: &WeilObject, rig: Rig) -> Self {
        Self::zero(&WeilObject::k(), b, rig)
    }

    /// Image of an arbitrary polynomial over the source.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.rig);
        out.constant = p.constant;
        for (u, c) in p.terms() {
            let mut gens = u.iter().map(|v| &self.images[v]);
            let first = gens.next().expect("monomials are non-empty").clone();
            let prod = gens.fold(first, |acc, q| self.target.mul(&acc, q));
            for (v, d) in prod.terms() {
                out.add_term(v, self.rig.mul(c, d));
            }
        }
        out
    }

    /// `g ∘ f` for `self = g`.
    pub fn compose(&self, f: &Morphism) -> Result<Morphism> {
        if f.target != self.source {
            return Err(mismatch(&self.source, &f.target));
        }
        if f.rig != self.rig {
            return Err(MorphismError::RigMismatch(self.rig, f.rig));
        }
        let images = f.images.iter().map(|p| self.apply(p)).collect();
        Ok(Self::new_unchecked(
            f.source.clone(),
            self.target.clone(),
            self.rig,
            images,
        ))
    }

    /// `f ⊗ g`.
    pub fn tensor(&self, g: &Morphism) -> Result<Morphism> {
        if g.rig != self.rig {
            return Err(MorphismError::RigMismatch(self.rig, g.rig));
        }
        let shift = self.target.n();
        let mut images = self.images.clone();
        images.extend(g.images.iter().map(|p| p.remap(|v| Some(v + shift))));
        Ok(Self::new_unchecked(
            self.source.coproduct(&g.source),
            self.target.coproduct(&g.target),
            self.rig,
            images,
        ))
    }

    /// Projection of `L ⊗ (B₁ × B₂) ⊗ R` onto `L ⊗ B_side ⊗ R`.
    pub fn projection(b: &Cotree, side: u8, rig: Rig) -> Result<Morphism> {
        let f = Focus::of(b).ok_or_else(|| MorphismError::NoProduct(b.clone()))?;
        let target = WeilObject::new(f.sides[side as usize - 1].clone());
        let images = (0..b.n_vertices())
            .map(|i| match f.project(side, i) {
                Some(j) => Polynomial::generator(rig, j),
                None => Polynomial::zero(rig),
            })
            .collect();
        Ok(Self::new_unchecked(WeilObject::new(b.clone()), target, rig, images))
    }

    /// The map into `L ⊗ (B₁ × B₂) ⊗ R` induced by maps into both sides.
    pub fn pair(b: &Cotree, f1: &Morphism, f2: &Morphism) -> Result<Morphism> {
        let focus = Focus::of(b).ok_or_else(|| MorphismError::NoProduct(b.clone()))?;
        let s1 = WeilObject::new(focus.sides[0].clone());
        let s2 = WeilObject::new(focus.sides[1].clone());
        if f1.target != s1 {
            return Err(mismatch(&s1, &f1.target));
        }
        if f2.target != s2 {
            return Err(mismatch(&s2, &f2.target));
        }
        if f1.source != f2.source {
            return Err(mismatch(&f1.source, &f2.source));
        }
        if f1.rig != f2.rig {
            return Err(MorphismError::RigMismatch(f1.rig, f2.rig));
        }
        let hole = focus.hole();
        let mut images = Vec::with_capacity(f1.images.len());
        for (i, (p1, p2)) in f1.images.iter().zip(&f2.images).enumerate() {
            let q1 = p1.remap(|v| Some(focus.embed(1, v)));
            let q2 = p2.remap(|v| Some(focus.embed(2, v)));
            let ctx = |q: &Polynomial| -> Vec<(VertexSet, Coeff)> {
                q.terms().filter(|(u, _)| !u.intersects(hole)).collect()
            };
            if ctx(&q1) != ctx(&q2) {
                return Err(MorphismError::PairMismatch(i));
            }
            let mut p = q1;
            for (u, c) in q2.terms().filter(|(u, _)| u.intersects(hole)) {
                p.add_term(u, c);
            }
            images.push(p);
        }
        Ok(Self::new_unchecked(
            f1.source.clone(),
            WeilObject::new(b.clone()),
            f1.rig,
            images,
        ))
    }

    /// Reads the same coefficients in another rig, then validates.
    pub fn with_rig(&self, rig: Rig) -> Result<Morphism> {
        let images = self.images.iter().map(|p| p.with_rig(rig)).collect();
        Morphism::new(self.source.clone(), self.target.clone(), rig, images)
    }

    pub fn to_kleisli(&self) -> Result<KleisliMap> {
        let mut assignment = Vec::with_capacity(self.images.len());
        for p in &self.images {
            if let Some((_, c)) = p.terms().find(|&(_, c)| c > 1) {
                return Err(MorphismError::NotBoolean(c));
            }
            assignment.push(SetFamily(p.terms().map(|(u, _)| u).collect()));
        }
        Ok(KleisliMap { assignment })
    }

    pub fn from_kleisli(m: &KleisliMap, a: &WeilObject, b: &WeilObject) -> Result<Morphism> {
        let rig = Rig::Bool2;
        let images = m
            .assignment
            .iter()
            .map(|fam| Polynomial::from_terms(rig, fam.0.iter().map(|&u| (u, 1))))
            .collect();
        Morphism::new(a.clone(), b.clone(), rig, images)
    }
}

/// A vertex map `G_A → κ(G_B)`: each generator goes to a family of independent sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KleisliMap {
    pub assignment: Vec<SetFamily>,
}

impl fmt::Display for KleisliMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, fam) in self.assignment.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} -> {fam}", i + 1)?;
        }
        Ok(())
    }
}

/// The five generating maps of the tangent structure, over a given rig.
pub mod generators {
    use super::*;

    fn w() -> WeilObject {
        WeilObject::w()
    }

    fn y(rig: Rig, i: usize) -> Polynomial {
        Polynomial::generator(rig, i)
    }

    /// `ε: W → k`.
    pub fn eps(rig: Rig) -> Morphism {
        Morphism::eps(&w(), rig)
    }

    /// `η: k → W`.
    pub fn eta(rig: Rig) -> Morphism {
        Morphism::unit(&w(), rig)
    }

    /// `+: W² → W`, `x1, x2 ↦ x`.
    pub fn plus(rig: Rig) -> Morphism {
        Morphism::new_unchecked(WeilObject::new(Cotree::w_pow(2)), w(), rig, vec![y(rig, 0), y(rig, 0)])
    }

    /// `l: W → 2W`, `x ↦ x1 x2`.
    pub fn l(rig: Rig) -> Morphism {
        let img = Polynomial::monomial(rig, VertexSet(0b11), 1);
        Morphism::new_unchecked(w(), WeilObject::new(Cotree::n_w(2)), rig, vec![img])
    }

    /// `c: 2W → 2W`, the swap.
    pub fn c(rig: Rig) -> Morphism {
        let two = WeilObject::new(Cotree::n_w(2));
        Morphism::new_unchecked(two.clone(), two, rig, vec![y(rig, 1), y(rig, 0)])
    }

    /// `ĝ_r: W → W`, `x ↦ r x`.
    pub fn ghat(r: u64, rig: Rig) -> Morphism {
        let img = Polynomial::monomial(rig, VertexSet(1), rig.from_integer(r));
        Morphism::new_unchecked(w(), w(), rig, vec![img])
    }
}

#[cfg(test)]
mod tests {
    use super::generators::*;
    use super::*;

    fn vs(s: &[usize]) -> VertexSet {
        VertexSet::from_indices(s.iter().map(|x| x - 1))
    }

    fn poly(r: Rig, terms: &[&[usize]]) -> Polynomial {
        Polynomial::from_terms(r, terms.iter().map(|s| (vs(s), 1)))
    }

    fn obj(t: Cotree) -> WeilObject {
        WeilObject::new(t)
    }

    fn example_2w_3w() -> Morphism {
        let r = Rig::Bool2;
        Morphism::new(
            obj(Cotree::n_w(2)),
            obj(Cotree::n_w(3)),
            r,
            vec![poly(r, &[&[1, 2], &[2, 3]]), poly(r, &[&[1], &[1, 3]])],
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        example_2w_3w();
        for r in [Rig::Bool2, Rig::Nat] {
            let bad = Morphism::new(obj(Cotree::W), obj(Cotree::n_w(2)), r, vec![poly(r, &[&[1], &[2]])]);
            let witness = Polynomial::monomial(r, vs(&[1, 2]), if r == Rig::Nat { 2 } else { 1 });
            assert_eq!(bad, Err(MorphismError::RelationViolation { i: 0, j: 0, witness }));
        }
        Morphism::new(
            obj(Cotree::W),
            obj(Cotree::K),
            Rig::Bool2,
            vec![Polynomial::zero(Rig::Bool2)],
        )
        .unwrap();
    }

    #[test]
    fn validate_catches_edge_relations() {
        let r = Rig::Bool2;
        let e = Morphism::new(
            obj(Cotree::w_pow(2)),
            obj(Cotree::W),
            r,
            vec![poly(r, &[&[1]]), poly(r, &[&[1]])],
        );
        assert!(e.is_ok());
        let e = Morphism::new(
            obj(Cotree::w_pow(2)),
            obj(Cotree::n_w(2)),
            r,
            vec![poly(r, &[&[1]]), poly(r, &[&[2]])],
        );
        assert!(matches!(e, Err(MorphismError::RelationViolation { i: 0, j: 1, .. })));
    }

    #[test]
    fn compose_examples() {
        let r = Rig::Bool2;
        let tl = Morphism::identity(&obj(Cotree::W), r).tensor(&l(r)).unwrap();
        let f = tl.compose(&l(r)).unwrap();
        assert_eq!(f.target, obj(Cotree::n_w(3)));
        assert_eq!(f.image(0), &poly(r, &[&[1, 2, 3]]));

        let e = example_2w_3w();
        assert_eq!(Morphism::identity(&e.target, r).compose(&e).unwrap(), e);
        assert_eq!(e.compose(&Morphism::identity(&e.source, r)).unwrap(), e);

        let degenerate = plus(r).compose(&l(r));
        assert!(degenerate.is_err(), "l lands in 2W, + starts at W^2");
        let two_to_one = Morphism::new(
            obj(Cotree::n_w(2)),
            obj(Cotree::W),
            r,
            vec![poly(r, &[&[1]]), poly(r, &[&[1]])],
        )
        .unwrap();
        assert!(two_to_one.compose(&l(r)).unwrap().is_zero());
    }

    #[test]
    fn structural_combinators() {
        let r = Rig::Nat;
        let p1 = Morphism::projection(&Cotree::w_pow(2), 1, r).unwrap();
        assert_eq!(p1.images(), &[poly(r, &[&[1]]), Polynomial::zero(r)]);
        let id = Morphism::identity(&obj(Cotree::W), r);
        let delta = Morphism::pair(&Cotree::w_pow(2), &id, &id).unwrap();
        assert_eq!(delta.image(0), &poly(r, &[&[1], &[2]]));
        let t = Morphism::eps(&obj(Cotree::W), r).tensor(&id).unwrap();
        assert_eq!(t.images(), &[Polynomial::zero(r), poly(r, &[&[1]])]);
        assert_eq!(t.target, obj(Cotree::W));
    }

    #[test]
    fn focus_inside_context() {
        // W ⊗ (W × 2W) ⊗ W
        let b = Cotree::union(
            Cotree::W,
            Cotree::union(Cotree::join(Cotree::W, Cotree::n_w(2)), Cotree::W),
        );
        let r = Rig::Bool2;
        let p1 = Morphism::projection(&b, 1, r).unwrap();
        let p2 = Morphism::projection(&b, 2, r).unwrap();
        assert_eq!(p1.target, obj(Cotree::n_w(3)));
        assert_eq!(p2.target, obj(Cotree::n_w(4)));
        let back = Morphism::pair(&b, &p1, &p2).unwrap();
        assert_eq!(back, Morphism::identity(&obj(b), r));
    }

    #[test]
    fn pair_rejects_disagreeing_context() {
        let r = Rig::Bool2;
        let b = Cotree::union(Cotree::W, Cotree::w_pow(2));
        let side = obj(Cotree::n_w(2));
        let f1 = Morphism::new(obj(Cotree::W), side.clone(), r, vec![poly(r, &[&[1]])]).unwrap();
        let f2 = Morphism::new(obj(Cotree::W), side, r, vec![poly(r, &[&[2]])]).unwrap();
        assert_eq!(Morphism::pair(&b, &f1, &f2), Err(MorphismError::PairMismatch(0)));
    }

    #[test]
    fn generator_images() {
        let r = Rig::Bool2;
        assert_eq!(plus(r).images(), &[poly(r, &[&[1]]), poly(r, &[&[1]])]);
        assert_eq!(l(r).images(), &[poly(r, &[&[1, 2]])]);
        assert_eq!(
            c(r).compose(&c(r)).unwrap(),
            Morphism::identity(&obj(Cotree::n_w(2)), r)
        );
        assert!(eta(r).images().is_empty());
        assert_eq!(eps(r).images(), &[Polynomial::zero(r)]);
    }

    #[test]
    fn ghat_values() {
        let r = Rig::Nat;
        assert_eq!(ghat(2, r).image(0), &Polynomial::monomial(r, vs(&[1]), 2));
        assert!(ghat(0, r).is_zero());
        assert_eq!(ghat(1, r), Morphism::identity(&obj(Cotree::W), r));
        assert_eq!(ghat(3, Rig::Bool2), Morphism::identity(&obj(Cotree::W), Rig::Bool2));
    }

    #[test]
    fn kleisli_examples() {
        let r = Rig::Bool2;
        let f = Morphism::new(
            obj(Cotree::W),
            obj(Cotree::n_w(3)),
            r,
            vec![poly(r, &[&[1, 2], &[1, 3]])],
        )
        .unwrap();
        let k = f.to_kleisli().unwrap();
        assert_eq!(k.to_string(), "1 -> {{1,2},{1,3}}");
        assert_eq!(Morphism::from_kleisli(&k, &f.source, &f.target).unwrap(), f);

        let z = Morphism::zero(&obj(Cotree::W), &obj(Cotree::n_w(2)), r);
        assert_eq!(z.to_kleisli().unwrap().assignment, vec![SetFamily(vec![])]);

        let two = Morphism::new(
            obj(Cotree::W),
            obj(Cotree::W),
            Rig::Nat,
            vec![Polynomial::monomial(Rig::Nat, vs(&[1]), 2)],
        )
        .unwrap();
        assert_eq!(two.to_kleisli(), Err(MorphismError::NotBoolean(2)));
    }
}
