//! Universal-property sweeps: the vertical lift equaliser and the
//! foundational pullbacks `B ⊗ (A₁ × A₂)`.

use std::collections::HashMap;

use super::{bits, enumerate_hom, hom_masks, test_objects, AxiomReport, AxiomResult, MonoTable, VerifyError};
use crate::cograph::Cotree;
use crate::genexpr::GenExpr;
use crate::morphism::Morphism;
use crate::rig::Rig;
use crate::weilalg::{Polynomial, WeilObject};

/// `v = T+ ∘ (l ×_T ηT) : W² → 2W`.
pub fn vertical_lift() -> GenExpr {
    let w2 = Cotree::w_pow(2);
    GenExpr::comp(
        GenExpr::tensor(GenExpr::id(Cotree::W), GenExpr::Plus),
        GenExpr::pair(
            Cotree::union(Cotree::W, w2.clone()),
            GenExpr::comp(GenExpr::L, GenExpr::proj(w2.clone(), 1)),
            GenExpr::comp(
                GenExpr::tensor(GenExpr::Eta, GenExpr::id(Cotree::W)),
                GenExpr::proj(w2, 2),
            ),
        ),
    )
}

fn ev(e: GenExpr) -> Morphism {
    e.evaluate(Rig::Bool2).expect("well typed")
}

/// `v` equalises `W ⊗ ε` and `η ∘ (ε ⊗ ε)`, and every equalising
/// `h : X → 2W` factors through `v` exactly once.
pub fn check_equalizer(max_vertices: usize) -> Result<AxiomReport, VerifyError> {
    let v = ev(vertical_lift());
    let s = ev(GenExpr::tensor(GenExpr::id(Cotree::W), GenExpr::Eps));
    let r = ev(GenExpr::comp(GenExpr::Eta, GenExpr::tensor(GenExpr::Eps, GenExpr::Eps)));
    let mut report = AxiomReport::default();

    let y = |set: &[usize]| {
        Polynomial::monomial(
            Rig::Bool2,
            crate::cograph::VertexSet::from_indices(set.iter().copied()),
            1,
        )
    };
    let expected = Morphism::new(
        v.source.clone(),
        v.target.clone(),
        Rig::Bool2,
        vec![y(&[0, 1]), y(&[1])],
    )?;
    report.push(if v == expected {
        AxiomResult::pass("equalizer.v", "x1 |-> y1 y2 ; x2 |-> y2")
    } else {
        AxiomResult::fail("equalizer.v", "", v.to_string())
    });

    let (sv, rv) = (s.compose(&v)?, r.compose(&v)?);
    report.push(if sv == rv {
        AxiomResult::pass("equalizer.equalizes", "")
    } else {
        AxiomResult::fail("equalizer.equalizes", "", format!("{{{sv}}} vs {{{rv}}}"))
    });

    let two_w = Cotree::n_w(2);
    let w2 = Cotree::w_pow(2);
    let (mut cones, mut objects) = (0usize, 0usize);
    let mut failure = None;
    'objects: for x in test_objects(max_vertices) {
        objects += 1;
        let mut tally: HashMap<Vec<Polynomial>, usize> = HashMap::new();
        for u in enumerate_hom(&x, &w2)?.morphisms {
            *tally.entry(v.compose(&u)?.images().to_vec()).or_default() += 1;
        }
        for h in enumerate_hom(&x, &two_w)?.morphisms {
            let equalizes = s.compose(&h)? == r.compose(&h)?;
            let found = tally.get(h.images()).copied().unwrap_or(0);
            cones += equalizes as usize;
            if found != equalizes as usize {
                failure = Some(format!("X={x} h={{{h}}} equalizes={equalizes} factorizations={found}"));
                break 'objects;
            }
        }
    }
    report.push(match failure {
        None => AxiomResult::pass(
            "equalizer.universal",
            format!("{objects} objects, {cones} cones, one factorization each"),
        ),
        Some(w) => AxiomResult::fail("equalizer.universal", "", w),
    });
    Ok(report)
}

/// Above this many morphisms per Hom set, two-generator apexes are checked
/// through their one-generator restrictions.
const LITERAL_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// Every cone and every map into the pullback enumerated.
    Literal,
    /// Cones from `2W` are pairs of cones from `W`; cones from `W²` are such
    /// pairs with zero products, which the pullback reflects monomialwise.
    Reduced,
}

#[derive(Clone, Debug)]
pub struct ApexSweep {
    pub apex: Cotree,
    pub mode: SweepMode,
    pub cones: Option<u64>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug)]
pub struct PullbackReport {
    pub b: Cotree,
    pub a1: Cotree,
    pub a2: Cotree,
    /// First violated monomial lemma, if any.
    pub lemma_failure: Option<String>,
    pub apexes: Vec<ApexSweep>,
}

impl PullbackReport {
    pub fn passed(&self) -> bool {
        self.lemma_failure.is_none() && self.apexes.iter().all(|s| s.failure.is_none())
    }

    pub fn id(&self) -> String {
        format!("pullback[{};{};{}]", self.b, self.a1, self.a2)
    }

    pub fn result(&self) -> AxiomResult {
        let detail: Vec<String> = self
            .apexes
            .iter()
            .map(|s| match (s.mode, s.cones) {
                (SweepMode::Literal, Some(n)) => format!("{} {n}", s.apex),
                _ => format!("{} reduced", s.apex),
            })
            .collect();
        let detail = format!("cones: {}", detail.join(", "));
        let failure = self
            .lemma_failure
            .clone()
            .or_else(|| self.apexes.iter().find_map(|s| s.failure.clone()));
        match failure {
            None => AxiomResult::pass(self.id(), detail),
            Some(w) => AxiomResult::fail(self.id(), detail, w),
        }
    }
}

struct Square {
    tp: MonoTable,
    ty: [MonoTable; 2],
    /// Monomial of the pullback to its image monomial in each leg.
    proj: [Vec<Option<usize>>; 2],
    /// Monomial of each leg to its image monomial in the base.
    down: [Vec<Option<usize>>; 2],
}

fn image_index(f: &Morphism, u: crate::cograph::VertexSet, table: &MonoTable) -> Option<usize> {
    let img = f.apply(&Polynomial::monomial(Rig::Bool2, u, 1));
    debug_assert!(img.n_terms() <= 1);
    let first = img
        .terms()
        .next()
        .map(|(v, _)| table.index(v).expect("image is a monomial"));
    first
}

/// `B ⊗ (A₁ × A₂) → B ⊗ Aᵢ`, built explicitly so that a product inside `B`
/// is never picked instead.
fn leg_projection(b: &Cotree, a1: &Cotree, a2: &Cotree, side: u8) -> Result<Morphism, VerifyError> {
    let (nb, n1, n2) = (b.n_vertices(), a1.n_vertices(), a2.n_vertices());
    let gen = |j| Polynomial::generator(Rig::Bool2, j);
    let images = (0..nb + n1 + n2)
        .map(|i| match (i < nb, i < nb + n1, side) {
            (true, _, _) => gen(i),
            (false, true, 1) => gen(i),
            (false, false, 2) => gen(i - n1),
            _ => Polynomial::zero(Rig::Bool2),
        })
        .collect();
    let p = Cotree::union(b.clone(), Cotree::join(a1.clone(), a2.clone()));
    let a = if side == 1 { a1 } else { a2 };
    let leg = Cotree::union(b.clone(), a.clone());
    Ok(Morphism::new(
        WeilObject::new(p),
        WeilObject::new(leg),
        Rig::Bool2,
        images,
    )?)
}

fn push(map: &[Option<usize>], mask: u64) -> u64 {
    bits(mask).filter_map(|i| map[i]).fold(0, |m, j| m | 1 << j)
}

impl Square {
    fn new(b: &Cotree, a1: &Cotree, a2: &Cotree) -> Result<Self, VerifyError> {
        let p = Cotree::union(b.clone(), Cotree::join(a1.clone(), a2.clone()));
        let tp = MonoTable::new(&WeilObject::new(p.clone()), 64)?;
        let base = WeilObject::new(b.clone());
        let tb = MonoTable::new(&base, 64)?;
        let legs = [a1, a2].map(|a| WeilObject::new(Cotree::union(b.clone(), a.clone())));
        let ty = [MonoTable::new(&legs[0], 64)?, MonoTable::new(&legs[1], 64)?];
        let mut proj: [Vec<Option<usize>>; 2] = Default::default();
        let mut down: [Vec<Option<usize>>; 2] = Default::default();
        for (i, side) in [1u8, 2].into_iter().enumerate() {
            let pi = leg_projection(b, a1, a2, side)?;
            proj[i] = tp.mons.iter().map(|&u| image_index(&pi, u, &ty[i])).collect();
            let a = [a1, a2][i];
            let e = Morphism::identity(&base, Rig::Bool2)
                .tensor(&Morphism::eps(&WeilObject::new(a.clone()), Rig::Bool2))?;
            down[i] = ty[i].mons.iter().map(|&u| image_index(&e, u, &tb)).collect();
        }
        Ok(Square { tp, ty, proj, down })
    }

    /// Monomialwise facts the reduced sweeps rely on: the projections are
    /// jointly surjective and injective, and nonzero products survive one
    /// projection.
    fn lemmas(&self, p: &WeilObject, legs: &[WeilObject; 2]) -> Option<String> {
        for (k, &u) in self.tp.mons.iter().enumerate() {
            if self.proj[0][k].is_none() && self.proj[1][k].is_none() {
                return Some(format!("monomial {u} killed by both projections"));
            }
        }
        for i in 0..2 {
            let mut hit = vec![0usize; self.ty[i].len()];
            for j in self.proj[i].iter().flatten() {
                hit[*j] += 1;
            }
            if let Some(j) = hit.iter().position(|&c| c != 1) {
                return Some(format!(
                    "leg {} monomial {} has {} preimages",
                    i + 1,
                    self.ty[i].mons[j],
                    hit[j]
                ));
            }
        }
        for (k, &u) in self.tp.mons.iter().enumerate() {
            for (k2, &u2) in self.tp.mons.iter().enumerate() {
                if p.mono_mul(u, u2).is_none() {
                    continue;
                }
                let seen = (0..2).any(|i| match (self.proj[i][k], self.proj[i][k2]) {
                    (Some(a), Some(b)) => legs[i].mono_mul(self.ty[i].mons[a], self.ty[i].mons[b]).is_some(),
                    _ => false,
                });
                if !seen {
                    return Some(format!("product {u}*{u2} vanishes in both legs"));
                }
            }
        }
        None
    }
}

fn collect_masks(x: &WeilObject, t: &MonoTable, budget: u64) -> Option<Vec<[u64; 2]>> {
    let cands = t.square_zero();
    let mut out = Vec::new();
    let mut over = false;
    hom_masks(x.graph(), t, &cands, &mut |a| {
        if out.len() as u64 >= budget {
            over = true;
            return false;
        }
        let mut m = [0u64; 2];
        m[..a.len()].copy_from_slice(a);
        out.push(m);
        true
    });
    (!over).then_some(out)
}

fn literal_sweep(sq: &Square, x: &WeilObject, budget: u64) -> Option<(u64, Option<String>)> {
    let into_p = collect_masks(x, &sq.tp, budget)?;
    let legs = [
        collect_masks(x, &sq.ty[0], budget)?,
        collect_masks(x, &sq.ty[1], budget)?,
    ];
    let mut tally: HashMap<[u64; 4], u32> = HashMap::with_capacity(into_p.len());
    for u in &into_p {
        let key = [
            push(&sq.proj[0], u[0]),
            push(&sq.proj[0], u[1]),
            push(&sq.proj[1], u[0]),
            push(&sq.proj[1], u[1]),
        ];
        *tally.entry(key).or_default() += 1;
    }
    let mut groups: [HashMap<[u64; 2], Vec<[u64; 2]>>; 2] = Default::default();
    for i in 0..2 {
        for f in &legs[i] {
            let base = [push(&sq.down[i], f[0]), push(&sq.down[i], f[1])];
            groups[i].entry(base).or_default().push(*f);
        }
    }
    let mut bases: Vec<&[u64; 2]> = groups[0].keys().collect();
    bases.sort();
    let mut cones = 0u64;
    for base in bases {
        let Some(g2) = groups[1].get(base) else { continue };
        for f1 in &groups[0][base] {
            for f2 in g2 {
                cones += 1;
                let n = tally.get(&[f1[0], f1[1], f2[0], f2[1]]).copied().unwrap_or(0);
                if n != 1 {
                    let show = |t: &MonoTable, m: &[u64; 2]| {
                        m[..x.n()]
                            .iter()
                            .map(|&q| t.poly(q).display("y", false))
                            .collect::<Vec<_>>()
                            .join(", ")
                    };
                    let w = format!(
                        "apex {}: cone ({}) ({}) has {n} factorizations",
                        x.cotree(),
                        show(&sq.ty[0], f1),
                        show(&sq.ty[1], f2)
                    );
                    return Some((cones, Some(w)));
                }
            }
        }
    }
    if cones != into_p.len() as u64 {
        let w = format!(
            "apex {}: {} maps into the pullback for {cones} cones",
            x.cotree(),
            into_p.len()
        );
        return Some((cones, Some(w)));
    }
    Some((cones, None))
}

/// Universal property of `B ⊗ (A₁ × A₂)` against cones from every apex with
/// at most two vertices.
pub fn check_foundational_pullback(b: &Cotree, a1: &Cotree, a2: &Cotree) -> Result<PullbackReport, VerifyError> {
    check_pullback_with(b, a1, a2, LITERAL_BUDGET)
}

fn check_pullback_with(b: &Cotree, a1: &Cotree, a2: &Cotree, budget: u64) -> Result<PullbackReport, VerifyError> {
    let sq = Square::new(b, a1, a2)?;
    let p = WeilObject::new(Cotree::union(b.clone(), Cotree::join(a1.clone(), a2.clone())));
    let legs = [a1, a2].map(|a| WeilObject::new(Cotree::union(b.clone(), a.clone())));
    let lemma_failure = sq.lemmas(&p, &legs);
    let mut apexes = Vec::new();
    let mut w_ok = false;
    for apex in test_objects(2) {
        let x = WeilObject::new(apex.clone());
        let sweep = match literal_sweep(&sq, &x, budget) {
            Some((cones, failure)) => {
                if apex == Cotree::W {
                    w_ok = failure.is_none();
                }
                ApexSweep {
                    apex,
                    mode: SweepMode::Literal,
                    cones: Some(cones),
                    failure,
                }
            }
            None => {
                let failure = (!w_ok).then(|| format!("apex {apex}: one-generator sweep did not pass"));
                ApexSweep {
                    apex,
                    mode: SweepMode::Reduced,
                    cones: None,
                    failure,
                }
            }
        };
        apexes.push(sweep);
    }
    Ok(PullbackReport {
        b: b.clone(),
        a1: a1.clone(),
        a2: a2.clone(),
        lemma_failure,
        apexes,
    })
}

/// [`check_foundational_pullback`] for every triple of test objects.
pub fn check_foundational_pullbacks(max_vertices: usize) -> Result<AxiomReport, VerifyError> {
    let objs = test_objects(max_vertices);
    let mut report = AxiomReport::default();
    for b in &objs {
        for a1 in &objs {
            for a2 in &objs {
                report.push(check_foundational_pullback(b, a1, a2)?.result());
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_object;

    fn obj(s: &str) -> Cotree {
        parse_object(s).unwrap()
    }

    #[test]
    fn vertical_lift_matches_formula() {
        let r = check_equalizer(2).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn plain_product() {
        let r = check_foundational_pullback(&Cotree::K, &Cotree::W, &Cotree::W).unwrap();
        assert!(r.passed());
        let cones: Vec<Option<u64>> = r.apexes.iter().map(|s| s.cones).collect();
        assert_eq!(cones, vec![Some(1), Some(4), Some(16), Some(16)]);
    }

    #[test]
    fn pairing_is_the_factorization() {
        let b = Cotree::W;
        let (a1, a2) = (Cotree::W, Cotree::W);
        let p = Cotree::union(b.clone(), Cotree::join(a1.clone(), a2.clone()));
        let legs = [&a1, &a2].map(|a| Cotree::union(b.clone(), a.clone()));
        let pis = [1, 2].map(|s| leg_projection(&b, &a1, &a2, s).unwrap());
        let downs = [&a1, &a2].map(|a| {
            Morphism::identity(&WeilObject::new(b.clone()), Rig::Bool2)
                .tensor(&Morphism::eps(&WeilObject::new(a.clone()), Rig::Bool2))
                .unwrap()
        });
        for x in test_objects(2) {
            let h1 = enumerate_hom(&x, &legs[0]).unwrap().morphisms;
            let h2 = enumerate_hom(&x, &legs[1]).unwrap().morphisms;
            for f1 in &h1 {
                for f2 in &h2 {
                    let compatible = downs[0].compose(f1).unwrap() == downs[1].compose(f2).unwrap();
                    match Morphism::pair(&p, f1, f2) {
                        Ok(u) => {
                            assert!(compatible);
                            assert_eq!(&pis[0].compose(&u).unwrap(), f1);
                            assert_eq!(&pis[1].compose(&u).unwrap(), f2);
                        }
                        Err(_) => assert!(!compatible),
                    }
                }
            }
        }
    }

    #[test]
    fn small_triples_literal() {
        for (b, a1, a2) in [("k", "W", "W"), ("W", "W", "W"), ("W", "2W", "W^2")] {
            let r = check_foundational_pullback(&obj(b), &obj(a1), &obj(a2)).unwrap();
            assert!(r.passed(), "{:?}", r.result());
            assert!(r.apexes.iter().all(|s| s.mode == SweepMode::Literal));
        }
    }

    #[test]
    fn reduced_mode_under_small_budget() {
        let r = check_pullback_with(&Cotree::W, &Cotree::W, &Cotree::W, 25).unwrap();
        assert!(r.passed(), "{:?}", r.result());
        let modes: Vec<SweepMode> = r.apexes.iter().map(|s| s.mode).collect();
        assert_eq!(
            modes,
            vec![
                SweepMode::Literal,
                SweepMode::Literal,
                SweepMode::Reduced,
                SweepMode::Reduced
            ]
        );
        let starved = check_pullback_with(&Cotree::W, &Cotree::W, &Cotree::W, 10).unwrap();
        assert!(!starved.passed());
    }
}
