//! Expressions over the generating maps and their evaluation to morphisms.

mod decompose;

pub use decompose::{
    choice_rule, decompose, decompose_one_circle, decompose_traced, plus_tower, roundtrips, slot_split, DecomposeError,
    DecompositionTrace, SlotAssignment, SlotSplit, StepTag, TraceStep,
};

use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::cograph::Cotree;
use crate::morphism::{generators, Focus, Morphism};
use crate::rig::Rig;
use crate::weilalg::WeilObject;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GenExpr {
    Id(Cotree),
    Eps,
    Eta,
    Plus,
    L,
    C,
    /// `x ↦ r x` on `W`.
    Ghat(u64),
    /// Projection of the leftmost product factor of the object onto one side.
    Proj(Cotree, u8),
    Tensor(Arc<GenExpr>, Arc<GenExpr>),
    /// `Compose(outer, inner)` is `outer ∘ inner`.
    Compose(Arc<GenExpr>, Arc<GenExpr>),
    /// Induced map into the object from maps into its two projections.
    Pair(Cotree, Arc<GenExpr>, Arc<GenExpr>),
}

/// Child indices from the root to the offending node.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExprPath(pub Vec<usize>);

impl fmt::Display for ExprPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("/")?;
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("/"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ill-typed expression at {path}: {reason}")]
pub struct IllTyped {
    pub path: ExprPath,
    pub reason: String,
}

impl GenExpr {
    pub fn id(t: Cotree) -> Self {
        GenExpr::Id(t)
    }

    pub fn proj(t: Cotree, side: u8) -> Self {
        GenExpr::Proj(t, side)
    }

    pub fn tensor(a: GenExpr, b: GenExpr) -> Self {
        GenExpr::Tensor(Arc::new(a), Arc::new(b))
    }

    pub fn comp(outer: GenExpr, inner: GenExpr) -> Self {
        GenExpr::Compose(Arc::new(outer), Arc::new(inner))
    }

    pub fn pair(t: Cotree, a: GenExpr, b: GenExpr) -> Self {
        GenExpr::Pair(t, Arc::new(a), Arc::new(b))
    }

    /// Right-nested tensor of the parts, skipping identities on `k`.
    pub fn tensor_all(parts: Vec<GenExpr>) -> Self {
        let mut parts: Vec<GenExpr> = parts.into_iter().filter(|p| *p != GenExpr::Id(Cotree::K)).collect();
        let Some(mut acc) = parts.pop() else {
            return GenExpr::Id(Cotree::K);
        };
        while let Some(p) = parts.pop() {
            acc = GenExpr::tensor(p, acc);
        }
        acc
    }

    /// `parts[0] ∘ parts[1] ∘ …`.
    pub fn comp_all(parts: Vec<GenExpr>) -> Self {
        let mut it = parts.into_iter().rev();
        let mut acc = it.next().expect("empty composite");
        for p in it {
            acc = GenExpr::comp(p, acc);
        }
        acc
    }

    pub fn children(&self) -> Vec<&GenExpr> {
        match self {
            GenExpr::Tensor(a, b) | GenExpr::Compose(a, b) | GenExpr::Pair(_, a, b) => vec![a, b],
            _ => vec![],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn contains_ghat(&self) -> bool {
        matches!(self, GenExpr::Ghat(_)) || self.children().iter().any(|c| c.contains_ghat())
    }

    /// `ĝ_r` as a generator expression: `ĝ_0 = η∘ε`, `ĝ_1 = id`, `ĝ_{r+1} = +∘⟨id, ĝ_r⟩`.
    pub fn ghat_expansion(r: u64) -> GenExpr {
        match r {
            0 => GenExpr::comp(GenExpr::Eta, GenExpr::Eps),
            1 => GenExpr::Id(Cotree::W),
            _ => GenExpr::comp(
                GenExpr::Plus,
                GenExpr::pair(Cotree::w_pow(2), GenExpr::Id(Cotree::W), Self::ghat_expansion(r - 1)),
            ),
        }
    }

    /// Replaces every `Ghat(r)` by its expansion.
    pub fn expand_ghat(&self) -> GenExpr {
        match self {
            GenExpr::Ghat(r) => Self::ghat_expansion(*r),
            GenExpr::Tensor(a, b) => GenExpr::tensor(a.expand_ghat(), b.expand_ghat()),
            GenExpr::Compose(a, b) => GenExpr::comp(a.expand_ghat(), b.expand_ghat()),
            GenExpr::Pair(t, a, b) => GenExpr::pair(t.clone(), a.expand_ghat(), b.expand_ghat()),
            leaf => leaf.clone(),
        }
    }

    /// Source and target objects.
    pub fn infer(&self) -> Result<(WeilObject, WeilObject), IllTyped> {
        self.infer_at(&mut Vec::new())
    }

    fn infer_at(&self, path: &mut Vec<usize>) -> Result<(WeilObject, WeilObject), IllTyped> {
        let obj = WeilObject::new;
        let fail = |path: &Vec<usize>, reason: String| IllTyped {
            path: ExprPath(path.clone()),
            reason,
        };
        Ok(match self {
            GenExpr::Id(t) => (obj(t.clone()), obj(t.clone())),
            GenExpr::Eps => (obj(Cotree::W), obj(Cotree::K)),
            GenExpr::Eta => (obj(Cotree::K), obj(Cotree::W)),
            GenExpr::Plus => (obj(Cotree::w_pow(2)), obj(Cotree::W)),
            GenExpr::L => (obj(Cotree::W), obj(Cotree::n_w(2))),
            GenExpr::C => (obj(Cotree::n_w(2)), obj(Cotree::n_w(2))),
            GenExpr::Ghat(_) => (obj(Cotree::W), obj(Cotree::W)),
            GenExpr::Proj(t, side) => {
                let f = Focus::of(t).ok_or_else(|| fail(path, format!("{t} has no product factor")))?;
                if !matches!(side, 1 | 2) {
                    return Err(fail(path, format!("projection side {side} is not 1 or 2")));
                }
                (obj(t.clone()), obj(f.sides[*side as usize - 1].clone()))
            }
            GenExpr::Tensor(a, b) => {
                let (sa, ta) = child(a, 0, path)?;
                let (sb, tb) = child(b, 1, path)?;
                (sa.coproduct(&sb), ta.coproduct(&tb))
            }
            GenExpr::Compose(outer, inner) => {
                let (so, to) = child(outer, 0, path)?;
                let (si, ti) = child(inner, 1, path)?;
                if ti != so {
                    return Err(fail(
                        path,
                        format!(
                            "inner target {} does not match outer source {}",
                            ti.cotree(),
                            so.cotree()
                        ),
                    ));
                }
                (si, to)
            }
            GenExpr::Pair(t, a, b) => {
                let f = Focus::of(t).ok_or_else(|| fail(path, format!("{t} has no product factor")))?;
                let (sa, ta) = child(a, 0, path)?;
                let (sb, tb) = child(b, 1, path)?;
                if sa != sb {
                    return Err(fail(
                        path,
                        format!("branch sources differ: {} vs {}", sa.cotree(), sb.cotree()),
                    ));
                }
                for (k, tk) in [ta, tb].iter().enumerate() {
                    let want = obj(f.sides[k].clone());
                    if *tk != want {
                        return Err(fail(
                            path,
                            format!("branch {} lands in {}, expected {}", k + 1, tk.cotree(), want.cotree()),
                        ));
                    }
                }
                (sa, obj(t.clone()))
            }
        })
    }

    /// The morphism this expression denotes.
    pub fn evaluate(&self, rig: Rig) -> Result<Morphism, IllTyped> {
        match self.eval_checked(rig, &mut Memo::default()) {
            Some(f) => Ok(f),
            None => Err(self.infer().err().unwrap_or_else(|| IllTyped {
                path: ExprPath(Vec::new()),
                reason: "evaluation failed".into(),
            })),
        }
    }

    /// Evaluates bottom-up, relying on the morphism operations to reject
    /// mismatched types. Errors are located afterwards by `infer`. Shared
    /// subexpressions are evaluated once.
    fn eval_checked(&self, rig: Rig, memo: &mut Memo) -> Option<Morphism> {
        Some(match self {
            GenExpr::Id(t) => Morphism::identity(&WeilObject::new(t.clone()), rig),
            GenExpr::Eps => generators::eps(rig),
            GenExpr::Eta => generators::eta(rig),
            GenExpr::Plus => generators::plus(rig),
            GenExpr::L => generators::l(rig),
            GenExpr::C => generators::c(rig),
            GenExpr::Ghat(r) => generators::ghat(*r, rig),
            GenExpr::Proj(t, side) if matches!(side, 1 | 2) => Morphism::projection(t, *side, rig).ok()?,
            GenExpr::Proj(..) => return None,
            GenExpr::Tensor(a, b) => eval_child(a, rig, memo)?.tensor(&eval_child(b, rig, memo)?).ok()?,
            GenExpr::Compose(o, i) => eval_child(o, rig, memo)?.compose(&eval_child(i, rig, memo)?).ok()?,
            GenExpr::Pair(t, a, b) => Morphism::pair(t, &eval_child(a, rig, memo)?, &eval_child(b, rig, memo)?).ok()?,
        })
    }
}

type Memo = FxHashMap<*const GenExpr, Morphism>;

fn eval_child(e: &Arc<GenExpr>, rig: Rig, memo: &mut Memo) -> Option<Morphism> {
    if Arc::strong_count(e) == 1 {
        return e.eval_checked(rig, memo);
    }
    let key = Arc::as_ptr(e);
    if let Some(f) = memo.get(&key) {
        return Some(f.clone());
    }
    let f = e.eval_checked(rig, memo)?;
    memo.insert(key, f.clone());
    Some(f)
}

fn child(e: &GenExpr, k: usize, path: &mut Vec<usize>) -> Result<(WeilObject, WeilObject), IllTyped> {
    path.push(k);
    let r = e.infer_at(path);
    path.pop();
    r
}

impl fmt::Display for GenExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenExpr::Id(t) => write!(f, "id({t})"),
            GenExpr::Eps => f.write_str("eps"),
            GenExpr::Eta => f.write_str("eta"),
            GenExpr::Plus => f.write_str("plus"),
            GenExpr::L => f.write_str("l"),
            GenExpr::C => f.write_str("c"),
            GenExpr::Ghat(r) => write!(f, "ghat({r})"),
            GenExpr::Proj(t, s) => write!(f, "proj({t}, {s})"),
            GenExpr::Tensor(a, b) => write!(f, "tensor({a}, {b})"),
            GenExpr::Compose(a, b) => write!(f, "comp({a}, {b})"),
            GenExpr::Pair(t, a, b) => write!(f, "pair({t}, {a}, {b})"),
        }
    }
}
