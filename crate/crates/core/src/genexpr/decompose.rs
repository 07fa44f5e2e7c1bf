//! Canonical decomposition of a morphism into generator expressions.
//!
//! The recursion, on `f: A → B` with cotrees normalized:
//!
//! * `B = k`, `A = k` or `f = 0`: towers of `ε` and `η`.
//! * `B` has an edge: split through the leftmost product of `B` and pair the
//!   decompositions of both projections of `f`.
//! * `B = nW`, no two circles overlap: one circle becomes a ladder of `l`s
//!   after projecting onto its generator (and `ĝ_r` for a coefficient `r`);
//!   a product source factors through a projection; a tensor source splits
//!   as `σ ∘ (f₁ ⊗ f₂)` with `σ` a network of flips.
//! * `B = nW`, `A = W`, circles overlap: the largest shared generator `z_j` is
//!   doubled into `W²`, one circle moves to the copy, and `+` merges them.
//! * `B = nW`, general `A`, circles overlap: [`choice_rule`] gives every
//!   circle its own slot, `f` factors as `(⊗ +_{m_j}) ∘ f′` and `f′` lands in
//!   a product of slots.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use thiserror::Error;

use super::GenExpr;
use crate::cograph::{Cotree, VertexSet};
use crate::morphism::{Circle, Morphism};
use crate::weilalg::{Polynomial, WeilObject};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepTag {
    OneCircle,
    SplitCircles,
    Projection,
    NoIntersect,
    SplitGeneral,
    PullbackTarget,
    Coefficient,
    /// `k` on either side, or the zero map.
    Degenerate,
}

impl fmt::Display for StepTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub tag: StepTag,
    pub depth: usize,
    pub morphism: Morphism,
    pub expr: GenExpr,
}

/// Steps in completion order; the last step is the whole decomposition.
#[derive(Clone, Debug, Default)]
pub struct DecompositionTrace {
    pub steps: Vec<TraceStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("trace step {index} ({tag}) does not evaluate to its morphism")]
    Replay { index: usize, tag: StepTag },
}

impl DecompositionTrace {
    pub fn max_depth(&self) -> usize {
        self.steps.iter().map(|s| s.depth).max().unwrap_or(0)
    }

    /// Re-evaluates every step and returns the final expression.
    pub fn replay(&self) -> Result<GenExpr, DecomposeError> {
        for (index, s) in self.steps.iter().enumerate() {
            let got = s.expr.evaluate(s.morphism.rig).ok();
            if got.as_ref() != Some(&s.morphism) {
                return Err(DecomposeError::Replay { index, tag: s.tag });
            }
        }
        self.steps
            .last()
            .map(|s| s.expr.clone())
            .ok_or_else(|| DecomposeError::Precondition("empty trace".into()))
    }
}

pub fn decompose(f: &Morphism) -> GenExpr {
    let e = Decomposer {
        trace: None,
        memo: FxHashMap::default(),
    }
    .go(f, 0);
    Arc::unwrap_or_clone(e)
}

pub fn decompose_traced(f: &Morphism) -> (GenExpr, DecompositionTrace) {
    let mut d = Decomposer {
        trace: Some(DecompositionTrace::default()),
        memo: FxHashMap::default(),
    };
    let e = d.go(f, 0);
    (Arc::unwrap_or_clone(e), d.trace.unwrap())
}

/// `W → nW` with a single coefficient-1 term: `embed ∘ ladder`.
pub fn decompose_one_circle(f: &Morphism) -> Result<GenExpr, DecomposeError> {
    let pre = |m: &str| Err(DecomposeError::Precondition(m.into()));
    if f.source.n() != 1 {
        return pre("source must be W");
    }
    if f.target.graph().edge_count() != 0 {
        return pre("target must be nW");
    }
    match f.circles().as_slice() {
        [c] if c.coeff == 1 => Ok(one_circle(&Cotree::W, c, f.target.n())),
        _ => pre("image must be a single monomial with coefficient 1"),
    }
}

struct Decomposer {
    trace: Option<DecompositionTrace>,
    /// Finished subproblems, shared between branches. Unused while tracing.
    memo: FxHashMap<Morphism, Arc<GenExpr>>,
}

impl Decomposer {
    fn record(&mut self, tag: StepTag, depth: usize, morphism: &Morphism, expr: &GenExpr) {
        if let Some(t) = &mut self.trace {
            t.steps.push(TraceStep {
                tag,
                depth,
                morphism: morphism.clone(),
                expr: expr.clone(),
            });
        }
    }

    fn go(&mut self, f: &Morphism, depth: usize) -> Arc<GenExpr> {
        if self.trace.is_some() {
            return Arc::new(self.step(f, depth));
        }
        if let Some(e) = self.memo.get(f) {
            return e.clone();
        }
        let e = Arc::new(self.step(f, depth));
        self.memo.insert(f.clone(), e.clone());
        e
    }

    fn step(&mut self, f: &Morphism, depth: usize) -> GenExpr {
        let a = f.source.cotree().normalized();
        let b = f.target.cotree().normalized();
        let rig = f.rig;
        let (tag, e) = if b.n_vertices() == 0 {
            (StepTag::Degenerate, eps_tower(&a))
        } else if a.n_vertices() == 0 {
            (StepTag::Degenerate, eta_tower(&b))
        } else if f.is_zero() {
            (StepTag::Degenerate, GenExpr::comp(eta_tower(&b), eps_tower(&a)))
        } else if f.target.graph().edge_count() > 0 {
            let halves = [1, 2].map(|side| {
                let p = Morphism::projection(&b, side, rig).expect("target has a product factor");
                let g = p.compose(f).expect("projection composes");
                self.go(&g, depth + 1)
            });
            let [e1, e2] = halves;
            (StepTag::PullbackTarget, GenExpr::Pair(b, e1, e2))
        } else {
            let circles = f.circles();
            if !overlapping(&circles) {
                self.no_intersect(f, &a, &circles, depth)
            } else if a == Cotree::W {
                (StepTag::SplitCircles, self.split_circles(f, depth))
            } else {
                let split = slot_split(f);
                let inner = self.go(&split.lifted, depth + 1);
                (
                    StepTag::SplitGeneral,
                    GenExpr::Compose(Arc::new(split.recombine), inner),
                )
            }
        };
        self.record(tag, depth, f, &e);
        e
    }

    fn no_intersect(&mut self, f: &Morphism, a: &Cotree, circles: &[Circle], depth: usize) -> (StepTag, GenExpr) {
        let n = f.target.n();
        if let [c] = circles {
            if c.coeff > 1 {
                let g = crate::morphism::generators::ghat(c.coeff, f.rig);
                self.record(StepTag::Coefficient, depth + 1, &g, &GenExpr::Ghat(c.coeff));
            }
            return (StepTag::OneCircle, one_circle(a, c, n));
        }
        match a {
            Cotree::Join(l, r) => {
                let nl = l.n_vertices();
                let side: u8 = if circles.iter().all(|c| c.gen < nl) { 1 } else { 2 };
                debug_assert!(circles.iter().all(|c| (c.gen < nl) == (side == 1)));
                let (part, range) = if side == 1 { (l, 0..nl) } else { (r, nl..a.n_vertices()) };
                let g = Morphism::new(
                    WeilObject::new((**part).clone()),
                    f.target.clone(),
                    f.rig,
                    f.images()[range].to_vec(),
                )
                .expect("restriction of a valid map");
                let inner = self.go(&g, depth + 1);
                (
                    StepTag::Projection,
                    GenExpr::Compose(inner, Arc::new(GenExpr::proj(a.clone(), side))),
                )
            }
            Cotree::Union(l, r) => {
                let nl = l.n_vertices();
                let used_left = f.images()[..nl]
                    .iter()
                    .fold(VertexSet::EMPTY, |s, p| s.union(p.support()));
                let v1: Vec<usize> = used_left.iter().collect();
                let v2: Vec<usize> = (0..n).filter(|&z| !used_left.contains(z)).collect();
                let restrict = |src: &Cotree, range: std::ops::Range<usize>, keep: &[usize]| {
                    let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(k, &z)| (z, k)).collect();
                    let images = f.images()[range]
                        .iter()
                        .map(|p| p.remap(|z| pos.get(&z).copied()))
                        .collect();
                    Morphism::new(
                        WeilObject::new(src.clone()),
                        WeilObject::new(Cotree::n_w(keep.len())),
                        f.rig,
                        images,
                    )
                    .expect("circles stay disjoint")
                };
                let f1 = restrict(l, 0..nl, &v1);
                let f2 = restrict(r, nl..a.n_vertices(), &v2);
                let inner = GenExpr::Tensor(self.go(&f1, depth + 1), self.go(&f2, depth + 1));
                let perm: Vec<usize> = v1.iter().chain(&v2).copied().collect();
                let e = match flip_network(&perm) {
                    Some(sigma) => GenExpr::comp(sigma, inner),
                    None => inner,
                };
                (StepTag::NoIntersect, e)
            }
            _ => unreachable!("W has at most one circle when none overlap"),
        }
    }

    fn split_circles(&mut self, f: &Morphism, depth: usize) -> GenExpr {
        let n = f.target.n();
        let p = f.image(0);
        let shared = |z: usize| p.terms().filter(|(u, _)| u.contains(z)).count();
        let j = (0..n).rev().find(|&z| shared(z) >= 2).expect("circles overlap");
        let moved = p.terms().find(|(u, _)| u.contains(j)).map(|(u, _)| u).unwrap();
        let shift = |z: usize| if z > j { z + 1 } else { z };
        let image = Polynomial::from_terms(
            f.rig,
            p.terms().map(|(u, c)| {
                let v = u.map(shift);
                let v = if u == moved {
                    VertexSet((v.0 & !(1 << j)) | 1 << (j + 1))
                } else {
                    v
                };
                (v, c)
            }),
        );
        let target = Cotree::union_all(vec![Cotree::n_w(j), Cotree::w_pow(2), Cotree::n_w(n - j - 1)]).normalized();
        let lifted = Morphism::new(f.source.clone(), WeilObject::new(target), f.rig, vec![image])
            .expect("the moved circle meets the others in the doubled generator");
        let recombine = GenExpr::tensor_all(vec![
            GenExpr::Id(Cotree::n_w(j)),
            GenExpr::Plus,
            GenExpr::Id(Cotree::n_w(n - j - 1)),
        ]);
        GenExpr::Compose(Arc::new(recombine), self.go(&lifted, depth + 1))
    }
}

fn overlapping(circles: &[Circle]) -> bool {
    circles
        .iter()
        .enumerate()
        .any(|(i, c)| circles[i + 1..].iter().any(|d| c.support.intersects(d.support)))
}

/// `A → k`.
fn eps_tower(a: &Cotree) -> GenExpr {
    match a {
        Cotree::K => GenExpr::Id(Cotree::K),
        Cotree::W => GenExpr::Eps,
        Cotree::Union(l, r) => GenExpr::tensor(eps_tower(l), eps_tower(r)),
        Cotree::Join(l, _) => GenExpr::comp(eps_tower(l), GenExpr::proj(a.clone(), 1)),
    }
}

/// `k → B`.
fn eta_tower(b: &Cotree) -> GenExpr {
    match b {
        Cotree::K => GenExpr::Id(Cotree::K),
        Cotree::W => GenExpr::Eta,
        Cotree::Union(l, r) => GenExpr::tensor(eta_tower(l), eta_tower(r)),
        Cotree::Join(l, r) => GenExpr::pair(b.clone(), eta_tower(l), eta_tower(r)),
    }
}

/// `A → W` sending generator `i` to `x` and the rest to 0.
fn proj_gen(a: &Cotree, i: usize) -> GenExpr {
    match a {
        Cotree::W => GenExpr::Id(Cotree::W),
        Cotree::Union(l, r) => {
            let nl = l.n_vertices();
            if i < nl {
                GenExpr::tensor(proj_gen(l, i), eps_tower(r))
            } else {
                GenExpr::tensor(eps_tower(l), proj_gen(r, i - nl))
            }
        }
        Cotree::Join(l, r) => {
            let nl = l.n_vertices();
            if i < nl {
                GenExpr::comp(proj_gen(l, i), GenExpr::proj(a.clone(), 1))
            } else {
                GenExpr::comp(proj_gen(r, i - nl), GenExpr::proj(a.clone(), 2))
            }
        }
        Cotree::K => unreachable!("k has no generators"),
    }
}

/// `W → sW`, `x ↦ x1 ⋯ xs`.
fn ladder(s: usize) -> GenExpr {
    match s {
        1 => GenExpr::Id(Cotree::W),
        2 => GenExpr::L,
        _ => GenExpr::comp(
            GenExpr::tensor_all(vec![GenExpr::Id(Cotree::n_w(s - 2)), GenExpr::L]),
            ladder(s - 1),
        ),
    }
}

fn one_circle(a: &Cotree, c: &Circle, n: usize) -> GenExpr {
    let mut parts = Vec::new();
    if c.support.len() < n {
        parts.push(GenExpr::tensor_all(
            (0..n)
                .map(|z| {
                    if c.support.contains(z) {
                        GenExpr::Id(Cotree::W)
                    } else {
                        GenExpr::Eta
                    }
                })
                .collect(),
        ));
    }
    parts.push(ladder(c.support.len()));
    if c.coeff > 1 {
        parts.push(GenExpr::Ghat(c.coeff));
    }
    if *a != Cotree::W {
        parts.push(proj_gen(a, c.gen));
    }
    GenExpr::comp_all(parts)
}

/// `nW → nW`, `y_j ↦ y_{perm[j]}`, as flips of neighbours; `None` for the identity.
fn flip_network(perm: &[usize]) -> Option<GenExpr> {
    let n = perm.len();
    let mut arr = perm.to_vec();
    let mut swaps = Vec::new();
    for i in 1..n {
        let mut k = i;
        while k > 0 && arr[k - 1] > arr[k] {
            arr.swap(k - 1, k);
            swaps.push(k - 1);
            k -= 1;
        }
    }
    let flip = |p: usize| {
        GenExpr::tensor_all(vec![
            GenExpr::Id(Cotree::n_w(p)),
            GenExpr::C,
            GenExpr::Id(Cotree::n_w(n - p - 2)),
        ])
    };
    // Sorting `perm` by the swaps t1, …, tk means perm = tk ∘ ⋯ ∘ t1.
    let parts: Vec<GenExpr> = swaps.iter().rev().map(|&p| flip(p)).collect();
    (!parts.is_empty()).then(|| GenExpr::comp_all(parts))
}

/// Slot of each circle at each target generator it touches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotAssignment {
    /// `m_j`: number of circles through `z_j`.
    pub counts: Vec<usize>,
    /// Per circle, in [`Morphism::circles`] order: `(z_j, slot)` pairs, slots 0-based.
    pub slots: Vec<(Circle, Vec<(usize, usize)>)>,
}

impl SlotAssignment {
    /// First generator of each block `W^{m_j}` in the slot tensor.
    pub fn offsets(&self) -> Vec<usize> {
        self.counts
            .iter()
            .scan(0, |acc, &m| {
                let o = *acc;
                *acc += m;
                Some(o)
            })
            .collect()
    }

    /// `W^{m_1} ⊗ ⋯ ⊗ W^{m_n}`.
    pub fn slot_object(&self) -> Cotree {
        Cotree::union_all(self.counts.iter().map(|&m| Cotree::w_pow(m)).collect()).normalized()
    }

    /// Generator of the slot tensor for slot `s` at `z_j`.
    pub fn slot_generator(&self, j: usize, s: usize) -> usize {
        self.offsets()[j] + s
    }
}

/// Deterministic slot choice for a map into `nW`: circles through `z_j` take
/// the slots of `W^{m_j}` in (source generator, monomial) order.
pub fn choice_rule(f: &Morphism) -> Result<SlotAssignment, DecomposeError> {
    if f.target.graph().edge_count() != 0 {
        return Err(DecomposeError::Precondition("target must be nW".into()));
    }
    let mut counts = vec![0; f.target.n()];
    let slots = f
        .circles()
        .into_iter()
        .map(|c| {
            let at = c
                .support
                .iter()
                .map(|z| {
                    counts[z] += 1;
                    (z, counts[z] - 1)
                })
                .collect();
            (c, at)
        })
        .collect();
    Ok(SlotAssignment { counts, slots })
}

/// `f = recombine ∘ lifted` with every slot of `lifted` used by one circle.
#[derive(Clone, Debug)]
pub struct SlotSplit {
    pub assignment: SlotAssignment,
    pub lifted: Morphism,
    pub recombine: GenExpr,
}

pub fn slot_split(f: &Morphism) -> SlotSplit {
    let assignment = choice_rule(f).expect("target is nW");
    let target = WeilObject::new(assignment.slot_object());
    let mut images = vec![Polynomial::zero(f.rig); f.source.n()];
    for (c, at) in &assignment.slots {
        let u = VertexSet::from_indices(at.iter().map(|&(z, s)| assignment.slot_generator(z, s)));
        images[c.gen].add_term(u, c.coeff);
    }
    let lifted =
        Morphism::new(f.source.clone(), target, f.rig, images).expect("circles sharing a generator use adjacent slots");
    let recombine = GenExpr::tensor_all(assignment.counts.iter().map(|&m| plus_tower(m)).collect());
    SlotSplit {
        assignment,
        lifted,
        recombine,
    }
}

/// `W^m → W` sending every generator to `x`.
pub fn plus_tower(m: usize) -> GenExpr {
    match m {
        0 => GenExpr::Eta,
        1 => GenExpr::Id(Cotree::W),
        2 => GenExpr::Plus,
        _ => {
            let wm = Cotree::w_pow(m);
            GenExpr::comp(
                GenExpr::Plus,
                GenExpr::pair(
                    Cotree::w_pow(2),
                    GenExpr::proj(wm.clone(), 1),
                    GenExpr::comp(plus_tower(m - 1), GenExpr::proj(wm, 2)),
                ),
            )
        }
    }
}

/// Whether `decompose(f)` evaluates back to `f`.
pub fn roundtrips(f: &Morphism) -> bool {
    decompose(f).evaluate(f.rig).ok().as_ref() == Some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::generators;
    use crate::rig::Rig;

    fn vs(s: &[usize]) -> VertexSet {
        VertexSet::from_indices(s.iter().map(|x| x - 1))
    }

    fn map(rig: Rig, src: Cotree, tgt: Cotree, images: &[&[(&[usize], u64)]]) -> Morphism {
        let images = images
            .iter()
            .map(|terms| Polynomial::from_terms(rig, terms.iter().map(|(s, c)| (vs(s), *c))))
            .collect();
        Morphism::new(WeilObject::new(src), WeilObject::new(tgt), rig, images).unwrap()
    }

    #[test]
    fn one_circle_example() {
        let f = map(Rig::Bool2, Cotree::W, Cotree::n_w(5), &[&[(&[1, 3, 4], 1)]]);
        let e = decompose_one_circle(&f).unwrap();
        assert_eq!(
            e.to_string(),
            "comp(tensor(id(W), tensor(eta, tensor(id(W), tensor(id(W), eta)))), comp(tensor(id(W), l), l))"
        );
        assert_eq!(e.evaluate(Rig::Bool2).unwrap(), f);

        let l = generators::l(Rig::Bool2);
        assert_eq!(decompose_one_circle(&l).unwrap(), GenExpr::L);

        let f = map(Rig::Bool2, Cotree::W, Cotree::n_w(2), &[&[(&[2], 1)]]);
        let e = decompose_one_circle(&f).unwrap();
        assert_eq!(e.to_string(), "comp(tensor(eta, id(W)), id(W))");
        assert_eq!(e.evaluate(Rig::Bool2).unwrap(), f);

        let two = map(Rig::Bool2, Cotree::W, Cotree::n_w(2), &[&[(&[1], 1), (&[1, 2], 1)]]);
        assert!(decompose_one_circle(&two).is_err());
    }

    #[test]
    fn split_circles_example() {
        let f = map(
            Rig::Bool2,
            Cotree::W,
            Cotree::n_w(3),
            &[&[(&[1, 2], 1), (&[2, 3], 1), (&[1, 3], 1)]],
        );
        let (e, trace) = decompose_traced(&f);
        assert_eq!(e.evaluate(Rig::Bool2).unwrap(), f);
        let GenExpr::Compose(outer, _) = &e else {
            panic!("expected a composite, got {e}")
        };
        assert_eq!(outer.to_string(), "tensor(id(2W), plus)");
        let first = trace
            .steps
            .iter()
            .find(|s| s.tag == StepTag::SplitCircles && s.depth > 0);
        assert!(first.is_some(), "second split happens one level down");
        // The lifted map is x ↦ x1x2 + x2x3 + x1x4 into 2W ⊗ W².
        let lifted = &trace
            .steps
            .iter()
            .rev()
            .find(|s| s.tag == StepTag::PullbackTarget && s.depth == 1)
            .unwrap()
            .morphism;
        assert_eq!(
            lifted.target,
            WeilObject::new(Cotree::union(Cotree::n_w(2), Cotree::w_pow(2)))
        );
        assert_eq!(lifted.image(0).display("x", false), "x1 x2 + x1 x4 + x2 x3");
        assert_eq!(trace.replay().unwrap(), e);
    }

    #[test]
    fn choice_rule_example() {
        let f = map(
            Rig::Bool2,
            Cotree::n_w(2),
            Cotree::n_w(3),
            &[&[(&[1, 2], 1), (&[1, 3], 1)], &[(&[2, 3], 1)]],
        );
        let split = slot_split(&f);
        assert_eq!(split.assignment.counts, vec![2, 2, 2]);
        // Slots: y1 y1' | y2 y2' | y3 y3'  →  generators 1..6.
        assert_eq!(split.lifted.image(0).display("y", false), "y1 y3 + y2 y5");
        assert_eq!(split.lifted.image(1).display("y", false), "y4 y6");
        assert_eq!(
            split
                .recombine
                .evaluate(Rig::Bool2)
                .unwrap()
                .compose(&split.lifted)
                .unwrap(),
            f
        );
        assert!(roundtrips(&f));

        let one = map(Rig::Bool2, Cotree::W, Cotree::n_w(3), &[&[(&[1, 3], 1)]]);
        assert_eq!(slot_split(&one).lifted.image(0).display("y", false), "y1 y2");
        let zero = Morphism::zero(&WeilObject::w(), &WeilObject::new(Cotree::n_w(2)), Rig::Bool2);
        assert_eq!(choice_rule(&zero).unwrap().counts, vec![0, 0]);
        assert_eq!(slot_split(&zero).lifted.target.n(), 0);
    }

    #[test]
    fn degenerate_shapes() {
        let r = Rig::Bool2;
        let z = Morphism::zero(&WeilObject::w(), &WeilObject::new(Cotree::n_w(3)), r);
        let e = decompose(&z);
        assert_eq!(e.to_string(), "comp(tensor(eta, tensor(eta, eta)), eps)");
        assert_eq!(e.evaluate(r).unwrap(), z);

        let to_k = Morphism::eps(&WeilObject::new(Cotree::union(Cotree::w_pow(2), Cotree::W)), r);
        assert_eq!(decompose(&to_k).to_string(), "tensor(comp(eps, proj(W^2, 1)), eps)");
    }

    #[test]
    fn identity_on_square_pairs_projections() {
        let r = Rig::Bool2;
        let id = Morphism::identity(&WeilObject::new(Cotree::w_pow(2)), r);
        let e = decompose(&id);
        assert!(matches!(e, GenExpr::Pair(..)), "{e}");
        assert_eq!(e.evaluate(r).unwrap(), id);
    }

    #[test]
    fn union_source_needs_flips() {
        let r = Rig::Bool2;
        // x1 ↦ y3, x2 ↦ y1 y2: f = σ ∘ (f1 ⊗ f2).
        let f = map(r, Cotree::n_w(2), Cotree::n_w(3), &[&[(&[3], 1)], &[(&[1, 2], 1)]]);
        let e = decompose(&f);
        assert!(e.to_string().contains('c'));
        assert_eq!(e.evaluate(r).unwrap(), f);
    }

    #[test]
    fn flip_network_realizes_permutation() {
        let perms = [vec![2, 0, 1], vec![1, 2, 0], vec![3, 1, 0, 2], vec![0, 2, 1]];
        for p in perms {
            let e = flip_network(&p).unwrap();
            let m = e.evaluate(Rig::Bool2).unwrap();
            for (j, &pj) in p.iter().enumerate() {
                assert_eq!(m.image(j), &Polynomial::generator(Rig::Bool2, pj));
            }
        }
        assert!(flip_network(&[0, 1, 2]).is_none());
    }

    #[test]
    fn nat_coefficients_use_ghat() {
        let r = Rig::Nat;
        let f = map(r, Cotree::n_w(2), Cotree::n_w(2), &[&[(&[1], 3)], &[(&[2], 2)]]);
        let (e, trace) = decompose_traced(&f);
        assert!(e.contains_ghat());
        assert!(trace.steps.iter().any(|s| s.tag == StepTag::Coefficient));
        assert_eq!(e.evaluate(r).unwrap(), f);
        assert_eq!(e.expand_ghat().evaluate(r).unwrap(), f);

        let g = map(r, Cotree::W, Cotree::n_w(2), &[&[(&[1], 2), (&[1, 2], 3)]]);
        assert!(roundtrips(&g));
    }

    #[test]
    fn plus_towers() {
        for m in 0..=5 {
            let e = plus_tower(m).evaluate(Rig::Nat).unwrap();
            assert_eq!(e.source.n(), m);
            assert!(e.images().iter().all(|p| *p == Polynomial::generator(Rig::Nat, 0)));
        }
    }
}
