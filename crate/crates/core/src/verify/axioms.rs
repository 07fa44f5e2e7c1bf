//! Tangent structure axioms for `T = W ⊗ −`, with components at `A` given by
//! tensoring the generators with `id_A`.

use super::{enumerate_hom, test_objects, AxiomReport, AxiomResult, VerifyError};
use crate::cograph::Cotree;
use crate::genexpr::GenExpr;
use crate::morphism::Morphism;
use crate::rig::Rig;
use crate::weilalg::WeilObject;

fn id(a: &Cotree) -> GenExpr {
    GenExpr::id(a.clone())
}

fn at(g: GenExpr, a: &Cotree) -> GenExpr {
    GenExpr::tensor(g, id(a))
}

/// `T A = W ⊗ A`.
fn t(a: &Cotree) -> Cotree {
    Cotree::union(Cotree::W, a.clone())
}

/// `T₂ A = W² ⊗ A`.
fn t2(a: &Cotree) -> Cotree {
    Cotree::union(Cotree::w_pow(2), a.clone())
}

fn p(a: &Cotree) -> GenExpr {
    at(GenExpr::Eps, a)
}

fn zero(a: &Cotree) -> GenExpr {
    at(GenExpr::Eta, a)
}

fn plus(a: &Cotree) -> GenExpr {
    at(GenExpr::Plus, a)
}

fn l(a: &Cotree) -> GenExpr {
    at(GenExpr::L, a)
}

fn c(a: &Cotree) -> GenExpr {
    at(GenExpr::C, a)
}

/// `T e = W ⊗ e`.
fn tm(e: GenExpr) -> GenExpr {
    GenExpr::tensor(id(&Cotree::W), e)
}

fn comp(parts: Vec<GenExpr>) -> GenExpr {
    GenExpr::comp_all(parts)
}

fn pi(t: Cotree, side: u8) -> GenExpr {
    GenExpr::proj(t, side)
}

type Equation = fn(&Cotree) -> (GenExpr, GenExpr);

const AXIOMS: &[(&str, Equation)] = &[
    ("bundle.p_plus_pi1", |a| {
        (comp(vec![p(a), plus(a)]), comp(vec![p(a), pi(t2(a), 1)]))
    }),
    ("bundle.p_plus_pi2", |a| {
        (comp(vec![p(a), plus(a)]), comp(vec![p(a), pi(t2(a), 2)]))
    }),
    ("bundle.p_eta", |a| (comp(vec![p(a), zero(a)]), id(a))),
    ("bundle.plus_assoc", |a| {
        let left = Cotree::union(Cotree::join(Cotree::w_pow(2), Cotree::W), a.clone());
        let right = Cotree::union(Cotree::join(Cotree::W, Cotree::w_pow(2)), a.clone());
        (
            comp(vec![
                plus(a),
                GenExpr::pair(t2(a), comp(vec![plus(a), pi(left.clone(), 1)]), pi(left, 2)),
            ]),
            comp(vec![
                plus(a),
                GenExpr::pair(t2(a), pi(right.clone(), 1), comp(vec![plus(a), pi(right, 2)])),
            ]),
        )
    }),
    ("bundle.plus_comm", |a| {
        (
            comp(vec![plus(a), GenExpr::pair(t2(a), pi(t2(a), 2), pi(t2(a), 1))]),
            plus(a),
        )
    }),
    ("bundle.plus_unit_left", |a| {
        (
            comp(vec![
                plus(a),
                GenExpr::pair(t2(a), comp(vec![zero(a), p(a)]), id(&t(a))),
            ]),
            id(&t(a)),
        )
    }),
    ("bundle.plus_unit_right", |a| {
        (
            comp(vec![
                plus(a),
                GenExpr::pair(t2(a), id(&t(a)), comp(vec![zero(a), p(a)])),
            ]),
            id(&t(a)),
        )
    }),
    ("lift.p", |a| (comp(vec![tm(p(a)), l(a)]), comp(vec![zero(a), p(a)]))),
    ("lift.eta", |a| {
        (comp(vec![l(a), zero(a)]), comp(vec![tm(zero(a)), zero(a)]))
    }),
    ("lift.plus", |a| {
        let pair = GenExpr::pair(
            Cotree::union(Cotree::W, t2(a)),
            comp(vec![l(a), pi(t2(a), 1)]),
            comp(vec![l(a), pi(t2(a), 2)]),
        );
        (comp(vec![l(a), plus(a)]), comp(vec![tm(plus(a)), pair]))
    }),
    ("flip.p", |a| (comp(vec![p(&t(a)), c(a)]), tm(p(a)))),
    ("flip.eta", |a| (comp(vec![c(a), tm(zero(a))]), zero(&t(a)))),
    ("flip.plus", |a| {
        let pair = GenExpr::pair(
            Cotree::union(Cotree::w_pow(2), t(a)),
            comp(vec![c(a), tm(pi(t2(a), 1))]),
            comp(vec![c(a), tm(pi(t2(a), 2))]),
        );
        (comp(vec![c(a), tm(plus(a))]), comp(vec![plus(&t(a)), pair]))
    }),
    ("coh.c_involution", |a| (comp(vec![c(a), c(a)]), id(&t(&t(a))))),
    ("coh.c_l", |a| (comp(vec![c(a), l(a)]), l(a))),
    ("coh.lift_square", |a| {
        (comp(vec![tm(l(a)), l(a)]), comp(vec![l(&t(a)), l(a)]))
    }),
    ("coh.braid", |a| {
        (
            comp(vec![c(&t(a)), tm(c(a)), c(&t(a))]),
            comp(vec![tm(c(a)), c(&t(a)), tm(c(a))]),
        )
    }),
    ("coh.lift_flip", |a| {
        (comp(vec![c(&t(a)), tm(c(a)), l(&t(a))]), comp(vec![tm(l(a)), c(a)]))
    }),
];

fn check_equation(id: &str, eq: Equation, bases: &[Cotree]) -> AxiomResult {
    let mut checked = 0;
    for rig in [Rig::Bool2, Rig::Nat] {
        for a in bases {
            let (lhs, rhs) = eq(a);
            let (fl, fr) = match (lhs.evaluate(rig), rhs.evaluate(rig)) {
                (Ok(fl), Ok(fr)) => (fl, fr),
                (Err(e), _) | (_, Err(e)) => return AxiomResult::fail(id, "", format!("A={a} rig={rig}: {e}")),
            };
            if fl != fr {
                return AxiomResult::fail(id, "", format!("A={a} rig={rig}: lhs {{{fl}}} rhs {{{fr}}}"));
            }
            checked += 1;
        }
    }
    AxiomResult::pass(id, format!("{checked} components"))
}

/// Every listed equation at each object with at most two vertices, over `𝟚`
/// and `ℕ`.
pub fn check_tangent_axioms() -> AxiomReport {
    let bases = test_objects(2);
    AxiomReport {
        results: AXIOMS.iter().map(|&(id, eq)| check_equation(id, eq, &bases)).collect(),
    }
}

struct Components {
    p: Morphism,
    zero: Morphism,
    plus: Morphism,
    l: Morphism,
    c: Morphism,
}

impl Components {
    fn at(a: &Cotree) -> Self {
        let ev = |e: GenExpr| e.evaluate(Rig::Bool2).expect("component is well typed");
        Components {
            p: ev(p(a)),
            zero: ev(zero(a)),
            plus: ev(plus(a)),
            l: ev(l(a)),
            c: ev(c(a)),
        }
    }
}

fn lift(obj: Cotree, f: &Morphism) -> Morphism {
    Morphism::identity(&WeilObject::new(obj), Rig::Bool2)
        .tensor(f)
        .expect("same rig")
}

/// Naturality of `p, η, +, l, c` on every morphism between objects with at
/// most `max_vertices` vertices.
pub fn check_naturality(max_vertices: usize) -> Result<AxiomReport, VerifyError> {
    let objs = test_objects(max_vertices);
    let comps: Vec<Components> = objs.iter().map(Components::at).collect();
    let names = ["natural.p", "natural.eta", "natural.plus", "natural.l", "natural.c"];
    let mut witness: [Option<String>; 5] = Default::default();
    let mut count = 0usize;
    for (ia, a) in objs.iter().enumerate() {
        for (ib, b) in objs.iter().enumerate() {
            let (ca, cb) = (&comps[ia], &comps[ib]);
            for f in enumerate_hom(a, b)?.morphisms {
                count += 1;
                let tf = lift(Cotree::W, &f);
                let ttf = lift(Cotree::n_w(2), &f);
                let t2f = lift(Cotree::w_pow(2), &f);
                let sq = |x: Result<Morphism, _>, y: Result<Morphism, _>| x.is_ok() && x == y;
                let holds = [
                    sq(f.compose(&ca.p), cb.p.compose(&tf)),
                    sq(tf.compose(&ca.zero), cb.zero.compose(&f)),
                    sq(tf.compose(&ca.plus), cb.plus.compose(&t2f)),
                    sq(ttf.compose(&ca.l), cb.l.compose(&tf)),
                    sq(ttf.compose(&ca.c), cb.c.compose(&ttf)),
                ];
                for (k, ok) in holds.into_iter().enumerate() {
                    if !ok && witness[k].is_none() {
                        witness[k] = Some(format!("{{{f}}}"));
                    }
                }
            }
        }
    }
    let results = names
        .iter()
        .zip(witness)
        .map(|(id, w)| match w {
            None => AxiomResult::pass(*id, format!("{count} morphisms")),
            Some(w) => AxiomResult::fail(*id, format!("{count} morphisms"), w),
        })
        .collect();
    Ok(AxiomReport { results })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_axioms_hold() {
        let r = check_tangent_axioms();
        assert!(r.passed(), "{r}");
        assert_eq!(r.results.len(), AXIOMS.len());
    }

    #[test]
    fn naturality_holds() {
        let r = check_naturality(2).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn broken_equation_reports_witness() {
        let bad: Equation = |a| (c(a), id(&t(&t(a))));
        let r = check_equation("bad", bad, &[Cotree::K]);
        assert!(!r.pass);
        assert!(r.line().starts_with("AXIOM bad FAIL A=k rig=bool2"));
    }
}
