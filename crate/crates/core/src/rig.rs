//! Coefficient rigs.
//!
//! Two rigs are supported: the boolean rig `{0, 1}` where addition is `max`
//! (so `1 + 1 = 1`), and the natural numbers. Both share the `u64`
//! representation; the [`Rig`] tag selects the addition law, which makes the
//! comparison map `Nat -> Bool2` a pure reinterpretation of values.

use std::fmt;
use std::str::FromStr;

/// Coefficient value. Under [`Rig::Bool2`] only `0` and `1` occur.
pub type Coeff = u64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rig {
    /// `{0, 1}` with `max` as addition.
    #[default]
    Bool2,
    /// The natural numbers.
    Nat,
}

impl Rig {
    pub fn add(self, a: Coeff, b: Coeff) -> Coeff {
        match self {
            Rig::Bool2 => a.max(b),
            Rig::Nat => a.checked_add(b).expect("coefficient overflow"),
        }
    }

    pub fn mul(self, a: Coeff, b: Coeff) -> Coeff {
        match self {
            Rig::Bool2 => a * b,
            Rig::Nat => a.checked_mul(b).expect("coefficient overflow"),
        }
    }

    pub fn is_valid(self, c: Coeff) -> bool {
        match self {
            Rig::Bool2 => c <= 1,
            Rig::Nat => true,
        }
    }

    /// Image of an integer literal in this rig: `n = 1 + ... + 1`.
    pub fn from_integer(self, n: u64) -> Coeff {
        match self {
            Rig::Bool2 => psi(n),
            Rig::Nat => n,
        }
    }
}

/// The rig morphism `Nat -> Bool2`: `0 -> 0`, `n > 0 -> 1`.
pub fn psi(n: Coeff) -> Coeff {
    u64::from(n > 0)
}

impl fmt::Display for Rig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rig::Bool2 => "bool2",
            Rig::Nat => "nat",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rig `{0}` (expected `bool2` or `nat`)")]
pub struct UnknownRig(pub String);

impl FromStr for Rig {
    type Err = UnknownRig;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bool2" | "2" => Ok(Rig::Bool2),
            "nat" | "N" => Ok(Rig::Nat),
            other => Err(UnknownRig(other.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RIGS: [Rig; 2] = [Rig::Bool2, Rig::Nat];

    fn values(r: Rig) -> Vec<Coeff> {
        match r {
            Rig::Bool2 => vec![0, 1],
            Rig::Nat => (0..=4).collect(),
        }
    }

    #[test]
    fn worked_values() {
        assert_eq!(Rig::Bool2.add(1, 1), 1);
        assert_eq!(Rig::Nat.add(0, 7), 7);
        assert_eq!(Rig::Nat.add(2, 3), 5);
        assert_eq!(Rig::Bool2.mul(1, 1), 1);
        assert_eq!(Rig::Bool2.mul(1, 0), 0);
        assert_eq!(Rig::Nat.mul(2, 3), 6);
    }

    #[test]
    fn rig_laws_exhaustive() {
        for r in RIGS {
            let vs = values(r);
            for &a in &vs {
                assert_eq!(r.mul(a, 0), 0);
                assert_eq!(r.add(a, 0), a);
                assert_eq!(r.mul(a, 1), a);
                for &b in &vs {
                    assert_eq!(r.add(a, b), r.add(b, a));
                    assert_eq!(r.mul(a, b), r.mul(b, a));
                    for &c in &vs {
                        assert_eq!(r.add(r.add(a, b), c), r.add(a, r.add(b, c)));
                        assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
                        assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn bool2_addition_is_idempotent() {
        for a in [0, 1] {
            assert_eq!(Rig::Bool2.add(a, a), a);
        }
    }

    #[test]
    fn psi_is_a_rig_morphism() {
        for a in 0..=4 {
            for b in 0..=4 {
                assert_eq!(psi(Rig::Nat.add(a, b)), Rig::Bool2.add(psi(a), psi(b)));
                assert_eq!(psi(Rig::Nat.mul(a, b)), Rig::Bool2.mul(psi(a), psi(b)));
            }
        }
    }

    #[test]
    fn parse_and_print() {
        for r in RIGS {
            assert_eq!(r.to_string().parse::<Rig>().unwrap(), r);
        }
        assert!("z".parse::<Rig>().is_err());
    }
}
