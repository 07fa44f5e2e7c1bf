//! Finite sweeps over `𝟚`: Hom enumeration, the tangent axioms of `T = W ⊗ −`,
//! limit checks, and the coherence maps Ω and Γ.

mod axioms;
mod coherence;
mod limits;

pub use axioms::{check_naturality, check_tangent_axioms};
pub use coherence::{
    check_gamma_sample, check_omega_sample, gamma_witness, omega_witness, GammaWitness, OmegaWitness, Sampler,
};
pub use limits::{
    check_equalizer, check_foundational_pullback, check_foundational_pullbacks, vertical_lift, ApexSweep,
    PullbackReport, SweepMode,
};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::cograph::{independent_sets, Cotree, Graph, VertexSet};
use crate::morphism::{Morphism, MorphismError};
use crate::rig::Rig;
use crate::weilalg::{Polynomial, WeilObject};

/// Largest `|ind₊(G_B)|` accepted by [`enumerate_hom`].
pub const HOM_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{what}: {size} exceeds the limit {limit}")]
    TooLarge { what: String, size: usize, limit: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("circle {monomial} of x{} has {count} factorizations", .gen + 1)]
    ChoiceAmbiguous {
        gen: usize,
        monomial: VertexSet,
        count: usize,
    },
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

/// All `𝟚`-morphisms `A → B` in enumeration order.
#[derive(Clone, Debug)]
pub struct HomSet {
    pub source: Cotree,
    pub target: Cotree,
    pub morphisms: Vec<Morphism>,
}

impl HomSet {
    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }
}

/// Monomials of a target with their pairwise zero products as bitmasks.
#[derive(Clone, Debug)]
pub(crate) struct MonoTable {
    pub mons: Vec<VertexSet>,
    zero_with: Vec<u64>,
    index: HashMap<VertexSet, usize>,
}

impl MonoTable {
    pub fn new(b: &WeilObject, limit: usize) -> Result<Self, VerifyError> {
        let limit = limit.min(64);
        let too_large = |size| VerifyError::TooLarge {
            what: format!("|ind+({})|", b.cotree()),
            size,
            limit,
        };
        if b.n() > limit {
            return Err(too_large(b.n()));
        }
        let mons = independent_sets(b.graph(), false).map_err(|_| too_large(b.n()))?;
        if mons.len() > limit {
            return Err(too_large(mons.len()));
        }
        let zero_with = mons
            .iter()
            .map(|&u| {
                mons.iter()
                    .enumerate()
                    .filter(|&(_, &v)| b.mono_mul(u, v).is_none())
                    .fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        let index = mons.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        Ok(MonoTable { mons, zero_with, index })
    }

    pub fn len(&self) -> usize {
        self.mons.len()
    }

    pub fn index(&self, u: VertexSet) -> Option<usize> {
        self.index.get(&u).copied()
    }

    /// Every set of monomials whose sum squares to zero, the empty set first.
    pub fn square_zero(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let all = if self.mons.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.mons.len()) - 1
        };
        self.grow(0, 0, all, &mut out);
        out
    }

    fn grow(&self, start: usize, cur: u64, allowed: u64, out: &mut Vec<u64>) {
        out.push(cur);
        for i in start..self.mons.len() {
            if allowed >> i & 1 == 1 {
                self.grow(i + 1, cur | 1 << i, allowed & self.zero_with[i], out);
            }
        }
    }

    pub fn product_is_zero(&self, p: u64, q: u64) -> bool {
        bits(p).all(|i| q & !self.zero_with[i] == 0)
    }

    pub fn poly(&self, mask: u64) -> Polynomial {
        Polynomial::from_terms(Rig::Bool2, bits(mask).map(|i| (self.mons[i], 1)))
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

/// Visits every valid assignment of candidate masks to the generators of `a`.
/// The visitor returns `false` to stop early.
pub(crate) fn hom_masks(a: &Graph, t: &MonoTable, cands: &[u64], visit: &mut dyn FnMut(&[u64]) -> bool) {
    let earlier: Vec<Vec<usize>> = (0..a.n())
        .map(|i| (0..i).filter(|&j| a.has_edge(i, j)).collect())
        .collect();
    let mut assign = vec![0u64; a.n()];
    fn rec(
        i: usize,
        assign: &mut Vec<u64>,
        earlier: &[Vec<usize>],
        t: &MonoTable,
        cands: &[u64],
        visit: &mut dyn FnMut(&[u64]) -> bool,
    ) -> bool {
        if i == assign.len() {
            return visit(assign);
        }
        for &c in cands {
            if earlier[i].iter().all(|&j| t.product_is_zero(assign[j], c)) {
                assign[i] = c;
                if !rec(i + 1, assign, earlier, t, cands, visit) {
                    return false;
                }
            }
        }
        true
    }
    rec(0, &mut assign, &earlier, t, cands, visit);
}

/// Enumerates `Hom_𝟚(A, B)` by assigning square-zero polynomials to the
/// generators of `A` and keeping the assignments that validate.
pub fn enumerate_hom(a: &Cotree, b: &Cotree) -> Result<HomSet, VerifyError> {
    let source = WeilObject::new(a.clone());
    let target = WeilObject::new(b.clone());
    let table = MonoTable::new(&target, HOM_LIMIT)?;
    let cands = table.square_zero();
    let mut morphisms = Vec::new();
    let mut err = None;
    hom_masks(source.graph(), &table, &cands, &mut |assign| {
        let images = assign.iter().map(|&m| table.poly(m)).collect();
        match Morphism::new(source.clone(), target.clone(), Rig::Bool2, images) {
            Ok(f) => {
                morphisms.push(f);
                true
            }
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    Ok(HomSet {
        source: a.clone(),
        target: b.clone(),
        morphisms,
    })
}

/// `|Hom_𝟚(A, B)|` without building the morphisms.
pub fn hom_count(a: &Cotree, b: &Cotree) -> Result<u64, VerifyError> {
    let table = MonoTable::new(&WeilObject::new(b.clone()), HOM_LIMIT)?;
    let cands = table.square_zero();
    let mut n = 0u64;
    hom_masks(&a.realize(), &table, &cands, &mut |_| {
        n += 1;
        true
    });
    Ok(n)
}

/// Cotrees with at most `max_vertices` leaves, one per labelled graph, in
/// order of size. The first cotree found for a graph represents it.
pub fn test_objects(max_vertices: usize) -> Vec<Cotree> {
    let mut by_size: Vec<Vec<Cotree>> = vec![vec![Cotree::K]];
    if max_vertices >= 1 {
        by_size.push(vec![Cotree::W]);
    }
    for n in 2..=max_vertices {
        let mut seen: Vec<Graph> = Vec::new();
        let mut level = Vec::new();
        for a in 1..n {
            for l in &by_size[a] {
                for r in &by_size[n - a] {
                    for t in [Cotree::join(l.clone(), r.clone()), Cotree::union(l.clone(), r.clone())] {
                        let g = t.realize();
                        if !seen.contains(&g) {
                            seen.push(g);
                            level.push(t);
                        }
                    }
                }
            }
        }
        by_size.push(level);
    }
    by_size.into_iter().flatten().collect()
}

/// Lifts a `𝟚`-morphism to `ℕ` with the same coefficients, validates, and
/// pushes it back along `ψ`.
pub fn check_nat_fullness(f: &Morphism) -> bool {
    f.rig == Rig::Bool2
        && f.with_rig(Rig::Nat)
            .and_then(|g| g.with_rig(Rig::Bool2))
            .is_ok_and(|g| &g == f)
}

/// One checked statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub id: String,
    pub pass: bool,
    pub detail: String,
    pub witness: Option<String>,
}

impl AxiomResult {
    pub fn pass(id: impl Into<String>, detail: impl Into<String>) -> Self {
        AxiomResult {
            id: id.into(),
            pass: true,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(id: impl Into<String>, detail: impl Into<String>, witness: impl Into<String>) -> Self {
        AxiomResult {
            id: id.into(),
            pass: false,
            detail: detail.into(),
            witness: Some(witness.into()),
        }
    }

    /// `AXIOM <id> PASS|FAIL [witness]`.
    pub fn line(&self) -> String {
        match (&self.witness, self.pass) {
            (_, true) => format!("AXIOM {} PASS", self.id),
            (Some(w), false) => format!("AXIOM {} FAIL {}", self.id, w),
            (None, false) => format!("AXIOM {} FAIL", self.id),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn push(&mut self, r: AxiomResult) {
        self.results.push(r);
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.results.extend(other.results);
    }

    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.results.iter().filter(|r| !r.pass)
    }

    pub fn get(&self, id: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.id == id)
    }

    pub fn lines(&self) -> String {
        self.results.iter().map(|r| r.line() + "\n").collect()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(f, "{:<32} {}  {}", r.id, if r.pass { "pass" } else { "FAIL" }, r.detail)?;
            if let Some(w) = &r.witness {
                writeln!(f, "    {w}")?;
            }
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.results.len(), failed)
    }
}

/// Everything: axioms, naturality, the equaliser, foundational pullbacks,
/// Ω/Γ samples and `ℕ → 𝟚` fullness.
pub fn verify_all(max_vertices: usize, samples: usize, seed: u64) -> Result<AxiomReport, VerifyError> {
    let mut report = check_tangent_axioms();
    report.extend(check_naturality(max_vertices.min(2))?);
    report.extend(check_equalizer(max_vertices)?);
    report.extend(check_foundational_pullbacks(max_vertices.min(2))?);
    report.push(check_omega_sample(max_vertices, samples, seed)?);
    report.push(check_gamma_sample(max_vertices, samples, seed)?);
    report.push(check_nat_fullness_sweep(max_vertices)?);
    Ok(report)
}

/// [`check_nat_fullness`] on every enumerated morphism between test objects.
pub fn check_nat_fullness_sweep(max_vertices: usize) -> Result<AxiomResult, VerifyError> {
    let objs = test_objects(max_vertices);
    let mut n = 0usize;
    for a in &objs {
        for b in &objs {
            for f in enumerate_hom(a, b)?.morphisms {
                if !check_nat_fullness(&f) {
                    return Ok(AxiomResult::fail(
                        "nat.fullness",
                        format!("after {n} morphisms"),
                        f.to_string(),
                    ));
                }
                n += 1;
            }
        }
    }
    Ok(AxiomResult::pass(
        "nat.fullness",
        format!("{n} morphisms lift and push back"),
    ))
}
