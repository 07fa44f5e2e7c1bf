//! The slot-tensor maps Ω and Γ and randomized checks of their squares.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{enumerate_hom, test_objects, AxiomResult, VerifyError};
use crate::cograph::{Cotree, VertexSet};
use crate::genexpr::{slot_split, SlotSplit};
use crate::morphism::Morphism;
use crate::rig::Rig;
use crate::weilalg::{Polynomial, WeilObject};

fn require_nw(f: &Morphism, what: &str) -> Result<(), VerifyError> {
    if f.target.graph().edge_count() != 0 {
        return Err(VerifyError::Precondition(format!("{what} must land in nW")));
    }
    Ok(())
}

fn recombine(s: &SlotSplit) -> Morphism {
    s.recombine.evaluate(Rig::Bool2).expect("plus towers are well typed")
}

/// `Ω : W^{α₁}⊗⋯⊗W^{αn} → W^{β₁}⊗⋯⊗W^{βn}` for `h = g ∘ f`.
#[derive(Clone, Debug)]
pub struct OmegaWitness {
    pub f: Morphism,
    pub g: Morphism,
    pub h: Morphism,
    pub h_split: SlotSplit,
    pub g_split: SlotSplit,
    pub omega: Morphism,
}

/// Traces each slot of `h′` to the circle of `g` its monomial factors
/// through. Fails with `ChoiceAmbiguous` unless every circle of `h` has
/// exactly one factorization.
pub fn omega_witness(f: &Morphism, g: &Morphism) -> Result<OmegaWitness, VerifyError> {
    require_nw(g, "g")?;
    if f.rig != Rig::Bool2 || g.rig != Rig::Bool2 {
        return Err(VerifyError::Precondition("Ω is built over bool2".into()));
    }
    let h = g.compose(f)?;
    let h_split = slot_split(&h);
    let g_split = slot_split(g);
    let by_gen: Vec<Vec<usize>> = (0..g.source.n())
        .map(|b| {
            (0..g_split.assignment.slots.len())
                .filter(|&k| g_split.assignment.slots[k].0.gen == b)
                .collect()
        })
        .collect();

    let slot_obj = WeilObject::new(h_split.assignment.slot_object());
    let mut images = vec![Polynomial::zero(Rig::Bool2); slot_obj.n()];
    for (circle, at) in &h_split.assignment.slots {
        let u = circle.support;
        let mut found: Vec<Vec<usize>> = Vec::new();
        for (v, _) in f.image(circle.gen).terms() {
            let factors: Vec<usize> = v.iter().collect();
            let mut choice = Vec::new();
            factorizations(
                &g_split,
                &by_gen,
                &factors,
                u,
                VertexSet::EMPTY,
                &mut choice,
                &mut found,
            );
        }
        if found.len() != 1 {
            return Err(VerifyError::ChoiceAmbiguous {
                gen: circle.gen,
                monomial: u,
                count: found.len(),
            });
        }
        for &(z, s) in at {
            let q = found[0]
                .iter()
                .find(|&&k| g_split.assignment.slots[k].0.support.contains(z))
                .expect("the factors cover the circle");
            let &(_, sv) = g_split.assignment.slots[*q]
                .1
                .iter()
                .find(|&&(zz, _)| zz == z)
                .expect("slot at z");
            images[h_split.assignment.slot_generator(z, s)] =
                Polynomial::generator(Rig::Bool2, g_split.assignment.slot_generator(z, sv));
        }
    }
    let omega = Morphism::new(slot_obj, g_split.lifted.target.clone(), Rig::Bool2, images)?;
    Ok(OmegaWitness {
        f: f.clone(),
        g: g.clone(),
        h,
        h_split,
        g_split,
        omega,
    })
}

/// Choices of one circle of `g(b)` per factor `b`, pairwise disjoint, with
/// union `u`.
fn factorizations(
    g_split: &SlotSplit,
    by_gen: &[Vec<usize>],
    factors: &[usize],
    u: VertexSet,
    covered: VertexSet,
    choice: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let Some((&b, rest)) = factors.split_first() else {
        if covered == u {
            out.push(choice.clone());
        }
        return;
    };
    for &k in &by_gen[b] {
        let q = g_split.assignment.slots[k].0.support;
        if q.intersects(covered) || q.union(u) != u {
            continue;
        }
        choice.push(k);
        factorizations(g_split, by_gen, rest, u, covered.union(q), choice, out);
        choice.pop();
    }
}

impl OmegaWitness {
    /// `+_β ∘ Ω = +_α`, `Ω ∘ h′ = g′ ∘ f`, and `Ω = Ω₁ ⊗ ⋯ ⊗ Ωn`.
    pub fn check(&self) -> Result<(), String> {
        let show = |m: &Morphism| format!("{{{m}}}");
        let lower = recombine(&self.g_split)
            .compose(&self.omega)
            .map_err(|e| e.to_string())?;
        if lower != recombine(&self.h_split) {
            return Err(format!("+β∘Ω = {} differs from +α", show(&lower)));
        }
        let left = self.omega.compose(&self.h_split.lifted).map_err(|e| e.to_string())?;
        let right = self.g_split.lifted.compose(&self.f).map_err(|e| e.to_string())?;
        if left != right {
            return Err(format!("Ω∘h' = {} but g'∘f = {}", show(&left), show(&right)));
        }
        let (ha, ga) = (&self.h_split.assignment, &self.g_split.assignment);
        let (ho, go) = (ha.offsets(), ga.offsets());
        let mut product = Morphism::identity(&WeilObject::k(), Rig::Bool2);
        for j in 0..ha.counts.len() {
            let mut block = Vec::new();
            for y in ho[j]..ho[j] + ha.counts[j] {
                let img = self.omega.image(y);
                let shifted = img.remap(|v| (go[j] <= v && v < go[j] + ga.counts[j]).then(|| v - go[j]));
                if shifted.n_terms() != img.n_terms() {
                    return Err(format!("slot {} leaves its block", y + 1));
                }
                block.push(shifted);
            }
            let part = Morphism::new(
                WeilObject::new(Cotree::w_pow(ha.counts[j])),
                WeilObject::new(Cotree::w_pow(ga.counts[j])),
                Rig::Bool2,
                block,
            )
            .map_err(|e| e.to_string())?;
            product = product.tensor(&part).map_err(|e| e.to_string())?;
        }
        if product != self.omega {
            return Err("Ω is not the tensor of its blocks".into());
        }
        Ok(())
    }
}

/// `Γ : W^{γ₁}⊗⋯⊗W^{γm} → W^{α₁}⊗⋯⊗W^{αn}` for `h = g ∘ f` with `f : A → mW`
/// and `g : mW → nW` sending each generator to one monomial, supports
/// pairwise disjoint.
#[derive(Clone, Debug)]
pub struct GammaWitness {
    pub f: Morphism,
    pub g: Morphism,
    pub h: Morphism,
    pub f_split: SlotSplit,
    pub h_split: SlotSplit,
    /// `ψ(z)`: the generator of `mW` whose circle contains `z`.
    pub psi: Vec<Option<usize>>,
    pub gamma: Morphism,
}

fn gamma_admissible(g: &Morphism) -> Result<(), VerifyError> {
    if g.source.graph().edge_count() != 0 {
        return Err(VerifyError::Precondition("g must start at mW".into()));
    }
    require_nw(g, "g")?;
    let mut seen = VertexSet::EMPTY;
    for (y, p) in g.images().iter().enumerate() {
        let mut terms = p.terms();
        match (terms.next(), terms.next()) {
            (Some((u, 1)), None) if !u.intersects(seen) => seen = seen.union(u),
            _ => {
                return Err(VerifyError::Precondition(format!(
                    "g(y{}) must be one coefficient-1 monomial disjoint from the others",
                    y + 1
                )))
            }
        }
    }
    Ok(())
}

/// Sends slot `(V, y)` of `f′` to the product of the slots of `h′` at
/// `z ∈ g(y)` on the circle `g(V)`.
pub fn gamma_witness(f: &Morphism, g: &Morphism) -> Result<GammaWitness, VerifyError> {
    gamma_admissible(g)?;
    let h = g.compose(f)?;
    let f_split = slot_split(f);
    let h_split = slot_split(&h);
    let support = |y: usize| g.image(y).support();
    let mut psi = vec![None; g.target.n()];
    for y in 0..g.source.n() {
        for z in support(y).iter() {
            psi[z] = Some(y);
        }
    }
    let slot_obj = WeilObject::new(f_split.assignment.slot_object());
    let mut images = vec![Polynomial::zero(f.rig); slot_obj.n()];
    for (circle, at) in &f_split.assignment.slots {
        let gv = circle
            .support
            .iter()
            .fold(VertexSet::EMPTY, |acc, y| acc.union(support(y)));
        let (_, h_at) = h_split
            .assignment
            .slots
            .iter()
            .find(|(c, _)| c.gen == circle.gen && c.support == gv)
            .ok_or_else(|| VerifyError::Precondition(format!("no circle {gv} of h for x{}", circle.gen + 1)))?;
        let slot_of: HashMap<usize, usize> = h_at.iter().copied().collect();
        for &(y, s) in at {
            let u = VertexSet::from_indices(
                support(y)
                    .iter()
                    .map(|z| h_split.assignment.slot_generator(z, slot_of[&z])),
            );
            images[f_split.assignment.slot_generator(y, s)] = Polynomial::monomial(f.rig, u, 1);
        }
    }
    let gamma = Morphism::new(slot_obj, h_split.lifted.target.clone(), f.rig, images)?;
    Ok(GammaWitness {
        f: f.clone(),
        g: g.clone(),
        h,
        f_split,
        h_split,
        psi,
        gamma,
    })
}

impl GammaWitness {
    /// `+_α ∘ Γ = g ∘ +_γ`, `Γ ∘ f′ = h′`, and `α_i = γ_{ψ(z_i)}`.
    pub fn check(&self) -> Result<(), String> {
        let rig = self.f.rig;
        let plus = |s: &SlotSplit| s.recombine.evaluate(rig).map_err(|e| e.to_string());
        let lhs = plus(&self.h_split)?.compose(&self.gamma).map_err(|e| e.to_string())?;
        let rhs = self.g.compose(&plus(&self.f_split)?).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("+α∘Γ = {{{lhs}}} but g∘+γ = {{{rhs}}}"));
        }
        let lifted = self.gamma.compose(&self.f_split.lifted).map_err(|e| e.to_string())?;
        if lifted != self.h_split.lifted {
            return Err(format!("Γ∘f' = {{{lifted}}} differs from h'"));
        }
        for (z, y) in self.psi.iter().enumerate() {
            let alpha = self.h_split.assignment.counts[z];
            let gamma = y.map_or(0, |y| self.f_split.assignment.counts[y]);
            if alpha != gamma {
                return Err(format!("α{} = {alpha} but γ = {gamma}", z + 1));
            }
        }
        Ok(())
    }
}

/// Seeded source of random instances drawn uniformly from enumerated Hom sets.
pub struct Sampler {
    rng: ChaCha8Rng,
    objects: Vec<Cotree>,
    max_vertices: usize,
    homs: HashMap<(Cotree, Cotree), Vec<Morphism>>,
    admissible: HashMap<(Cotree, Cotree), Vec<Morphism>>,
}

impl Sampler {
    pub fn new(max_vertices: usize, seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            objects: test_objects(max_vertices),
            max_vertices: max_vertices.max(1),
            homs: HashMap::new(),
            admissible: HashMap::new(),
        }
    }

    fn hom(&mut self, a: &Cotree, b: &Cotree) -> Result<&[Morphism], VerifyError> {
        let key = (a.clone(), b.clone());
        if !self.homs.contains_key(&key) {
            let hs = enumerate_hom(a, b)?.morphisms;
            self.homs.insert(key.clone(), hs);
        }
        Ok(&self.homs[&key])
    }

    fn pick(&mut self, a: &Cotree, b: &Cotree) -> Result<Morphism, VerifyError> {
        let n = self.hom(a, b)?.len();
        let i = self.rng.gen_range(0..n);
        Ok(self.homs[&(a.clone(), b.clone())][i].clone())
    }

    fn object(&mut self) -> Cotree {
        self.objects[self.rng.gen_range(0..self.objects.len())].clone()
    }

    fn nw(&mut self) -> Cotree {
        Cotree::n_w(self.rng.gen_range(1..=self.max_vertices))
    }

    /// `(f : A → B, g : B → nW)`.
    pub fn omega_instance(&mut self) -> Result<(Morphism, Morphism), VerifyError> {
        let (a, b, n) = (self.object(), self.object(), self.nw());
        Ok((self.pick(&a, &b)?, self.pick(&b, &n)?))
    }

    /// `(f : A → mW, g : mW → nW)` with `g` admissible for Γ.
    pub fn gamma_instance(&mut self) -> Result<(Morphism, Morphism), VerifyError> {
        let (a, m, n) = (self.object(), self.nw(), self.nw());
        let key = (m.clone(), n.clone());
        if !self.admissible.contains_key(&key) {
            let mut hs = enumerate_hom(&m, &n)?.morphisms;
            hs.retain(|g| gamma_admissible(g).is_ok());
            self.admissible.insert(key.clone(), hs);
        }
        let admissible = &self.admissible[&key];
        if admissible.is_empty() {
            return self.gamma_instance();
        }
        let g = admissible[self.rng.gen_range(0..admissible.len())].clone();
        Ok((self.pick(&a, &m)?, g))
    }
}

/// Ω on `samples` random admissible instances; ambiguous draws are skipped
/// and counted.
pub fn check_omega_sample(max_vertices: usize, samples: usize, seed: u64) -> Result<AxiomResult, VerifyError> {
    let mut sampler = Sampler::new(max_vertices, seed);
    let (mut done, mut ambiguous) = (0usize, 0usize);
    while done < samples {
        let (f, g) = sampler.omega_instance()?;
        match omega_witness(&f, &g) {
            Ok(w) => {
                if let Err(e) = w.check() {
                    return Ok(AxiomResult::fail(
                        "coherence.omega",
                        "",
                        format!("f {{{f}}} g {{{g}}}: {e}"),
                    ));
                }
                done += 1;
            }
            Err(VerifyError::ChoiceAmbiguous { .. }) => ambiguous += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(AxiomResult::pass(
        "coherence.omega",
        format!("{done} instances, {ambiguous} ambiguous draws skipped"),
    ))
}

/// Γ on `samples` random admissible instances.
pub fn check_gamma_sample(max_vertices: usize, samples: usize, seed: u64) -> Result<AxiomResult, VerifyError> {
    let mut sampler = Sampler::new(max_vertices, seed);
    for _ in 0..samples {
        let (f, g) = sampler.gamma_instance()?;
        let w = gamma_witness(&f, &g)?;
        if let Err(e) = w.check() {
            return Ok(AxiomResult::fail(
                "coherence.gamma",
                "",
                format!("f {{{f}}} g {{{g}}}: {e}"),
            ));
        }
    }
    Ok(AxiomResult::pass("coherence.gamma", format!("{samples} instances")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::generators;
    use crate::syntax::parse_morphism;

    fn m(s: &str) -> Morphism {
        parse_morphism(s, Rig::Bool2).unwrap().1
    }

    #[test]
    fn omega_identity_for_identity_f() {
        let g = m("g : 2W -> 3W ; x1 |-> y1 y2 + y1 y3 ; x2 |-> y2");
        let f = Morphism::identity(&g.source, Rig::Bool2);
        let w = omega_witness(&f, &g).unwrap();
        assert_eq!(w.omega, Morphism::identity(&w.omega.source, Rig::Bool2));
        w.check().unwrap();
    }

    #[test]
    fn omega_zero_composite() {
        let f = generators::l(Rig::Bool2);
        let g = m("g : 2W -> W ; x1 |-> y ; x2 |-> y");
        let w = omega_witness(&f, &g).unwrap();
        assert!(w.h.is_zero());
        assert_eq!(w.omega.source.n(), 0);
        assert_eq!(w.g_split.assignment.counts, vec![2]);
        w.check().unwrap();
    }

    #[test]
    fn omega_ambiguous_collapse() {
        let f = m("f : W -> W^2 ; x |-> y1 + y2");
        let g = m("g : W^2 -> W ; x1 |-> y ; x2 |-> y");
        let err = omega_witness(&f, &g).unwrap_err();
        assert!(matches!(err, VerifyError::ChoiceAmbiguous { count: 2, .. }));
    }

    #[test]
    fn gamma_identity() {
        let f = m("f : W^2 -> 2W ; x1 |-> y1 y2 ; x2 |-> y1");
        let g = Morphism::identity(&f.target, Rig::Bool2);
        let w = gamma_witness(&f, &g).unwrap();
        assert_eq!(w.gamma, Morphism::identity(&w.gamma.source, Rig::Bool2));
        w.check().unwrap();
    }

    #[test]
    fn gamma_duplicates_slots_along_l() {
        let f = m("f : W -> W ; x |-> y");
        let g = generators::l(Rig::Bool2);
        let w = gamma_witness(&f, &g).unwrap();
        assert_eq!(w.psi, vec![Some(0), Some(0)]);
        assert_eq!(w.f_split.assignment.counts, vec![1]);
        assert_eq!(w.h_split.assignment.counts, vec![1, 1]);
        w.check().unwrap();
    }

    #[test]
    fn gamma_circle_spanning_generators() {
        let f = m("f : 2W -> 2W ; x1 |-> y1 y2 ; x2 |-> y1");
        let g = m("g : 2W -> 3W ; x1 |-> y1 ; x2 |-> y2 y3");
        gamma_witness(&f, &g).unwrap().check().unwrap();
    }

    #[test]
    fn gamma_rejects_overlapping_g() {
        let f = m("f : W -> W ; x |-> y");
        let g = m("g : W -> 2W ; x |-> y1 + y1 y2");
        assert!(matches!(gamma_witness(&f, &g), Err(VerifyError::Precondition(_))));
    }

    #[test]
    fn samples_pass() {
        assert!(check_omega_sample(3, 60, 7).unwrap().pass);
        assert!(check_gamma_sample(3, 60, 7).unwrap().pass);
    }
}
