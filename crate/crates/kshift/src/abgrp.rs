//! Symbolic calculus of the abelian groups showing up in the K-theory
//! formulas: finite direct sums of ℤ, ℤ/p^k, ℚ_n and ℚ_n/ℤ for
//! infinite-type supernatural n, with ⊕, ⊗, Tor₁ and localization.
//!
//! Values are kept in a canonical normal form, so equality of values is
//! isomorphism within this class of groups.

use crate::error::{Error, Result};
use crate::supernat::{Exponent, Supernatural};
use std::fmt;

/// One indecomposable summand.
///
/// `Qn`/`QnModZ` always carry an infinite-type supernatural ≠ 1; the
/// constructors normalize ℚ₁ to ℤ and ℚ₁/ℤ away, and reject finite
/// type (the distinction between ℤ[1/n] and ℚ_n matters exactly there,
/// so silently saturating would change the group).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    Z,
    Cyclic { p: u64, k: u32 },
    Qn(Supernatural),
    QnModZ(Supernatural),
}

impl Atom {
    fn is_torsion_free(&self) -> bool {
        matches!(self, Atom::Z | Atom::Qn(_))
    }
}

fn divides_supernatural(p: u64, n: &Supernatural) -> bool {
    n.exponent_of(p) != Exponent::Finite(0)
}

/// A finite direct sum of atoms in canonical order (ℤ first, then
/// cyclics by (p, k), then ℚ_n, then ℚ_n/ℤ). The empty sum is 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbGroup {
    summands: Vec<Atom>,
}

impl AbGroup {
    pub fn zero() -> Self {
        AbGroup::default()
    }

    pub fn z() -> Self {
        AbGroup { summands: vec![Atom::Z] }
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summands(&self) -> &[Atom] {
        &self.summands
    }

    /// ℤ/p^k. Requires p prime, k ≥ 1.
    pub fn cyclic(p: u64, k: u32) -> Result<Self> {
        Supernatural::prime_power(p, Exponent::Finite(1))?;
        if k == 0 {
            return Err(Error::Parse("cyclic exponent must be positive".into()));
        }
        Ok(AbGroup { summands: vec![Atom::Cyclic { p, k }] })
    }

    /// ℚ_n for infinite-type n; ℚ₁ = ℤ.
    pub fn qn(n: &Supernatural) -> Result<Self> {
        if n.is_one() {
            return Ok(AbGroup::z());
        }
        if !n.is_infinite_type() {
            return Err(Error::NotInfiniteType(n.to_string()));
        }
        Ok(AbGroup { summands: vec![Atom::Qn(n.clone())] })
    }

    /// ℚ_n/ℤ for infinite-type n; ℚ₁/ℤ = 0.
    pub fn qn_mod_z(n: &Supernatural) -> Result<Self> {
        if n.is_one() {
            return Ok(AbGroup::zero());
        }
        if !n.is_infinite_type() {
            return Err(Error::NotInfiniteType(n.to_string()));
        }
        Ok(AbGroup { summands: vec![Atom::QnModZ(n.clone())] })
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> Self {
        let mut summands = atoms;
        summands.sort();
        AbGroup { summands }
    }

    /// n copies of this group.
    pub fn power(&self, n: usize) -> Self {
        let mut summands = vec![];
        for _ in 0..n {
            summands.extend(self.summands.iter().cloned());
        }
        AbGroup::from_atoms(summands)
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        AbGroup::from_atoms(summands)
    }

    /// Tensor product over ℤ, bilinear over the summands.
    pub fn tensor(&self, other: &AbGroup) -> AbGroup {
        let mut summands = vec![];
        for a in &self.summands {
            for b in &other.summands {
                summands.extend(atom_tensor(a, b).summands);
            }
        }
        AbGroup::from_atoms(summands)
    }

    /// Tor₁ over ℤ, bilinear over the summands.
    pub fn tor(&self, other: &AbGroup) -> AbGroup {
        let mut summands = vec![];
        for a in &self.summands {
            for b in &other.summands {
                summands.extend(atom_tor(a, b).summands);
            }
        }
        AbGroup::from_atoms(summands)
    }

    /// A[1/n] = A ⊗ ℚ_n, using ℤ[1/n] = ℚ_n for infinite-type n. In
    /// strict mode a finite-type n (≠ 1) is rejected.
    pub fn localize(&self, n: &Supernatural, mode: Saturation) -> Result<AbGroup> {
        let n = match mode {
            Saturation::Strict => {
                if !n.is_infinite_type() {
                    return Err(Error::NotInfiniteType(n.to_string()));
                }
                n.clone()
            }
            Saturation::Saturate => n.saturate(),
        };
        Ok(self.tensor(&AbGroup::qn(&n)?))
    }

    /// Parses the display grammar: atoms `0`, `Z`, `Z/m`, `Z/p^k`,
    /// `Q[n]`, `Q[n]/Z` joined by `+`. Composite cyclic moduli split
    /// into their primary parts.
    pub fn parse(text: &str) -> Result<AbGroup> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty abelian group literal".into()));
        }
        let mut atoms = vec![];
        for part in text.split('+') {
            let part = part.trim();
            match part {
                "0" => {}
                "Z" => atoms.push(Atom::Z),
                _ if part.starts_with("Z/") => {
                    let modulus = Supernatural::parse(&part[2..])?;
                    if modulus.is_one() {
                        continue;
                    }
                    for (p, e) in modulus.factors() {
                        match e {
                            Exponent::Finite(k) => atoms.push(Atom::Cyclic { p, k }),
                            Exponent::Infinite => {
                                return Err(Error::Parse(format!(
                                    "{part:?} is not cyclic; write Q[{p}^inf]/Z"
                                )))
                            }
                        }
                    }
                }
                _ if part.starts_with("Q[") => {
                    let close = part
                        .find(']')
                        .ok_or_else(|| Error::Parse(format!("missing ']' in {part:?}")))?;
                    let n = Supernatural::parse(&part[2..close])?;
                    let tail = part[close + 1..].trim();
                    let group = match tail {
                        "" => AbGroup::qn(&n)?,
                        "/Z" => AbGroup::qn_mod_z(&n)?,
                        _ => {
                            return Err(Error::Parse(format!(
                                "unexpected {tail:?} after Q[..]"
                            )))
                        }
                    };
                    atoms.extend(group.summands);
                }
                _ => return Err(Error::Parse(format!("cannot parse summand {part:?}"))),
            }
        }
        Ok(AbGroup::from_atoms(atoms))
    }
}

/// Whether localization-style operations saturate finite-type input or
/// reject it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Saturation {
    Strict,
    Saturate,
}

fn atom_tensor(a: &Atom, b: &Atom) -> AbGroup {
    use Atom::*;
    match (a, b) {
        (Z, x) | (x, Z) => AbGroup { summands: vec![x.clone()] },
        (Cyclic { p, k }, Cyclic { p: q, k: j }) => {
            if p == q {
                AbGroup { summands: vec![Cyclic { p: *p, k: *k.min(j) }] }
            } else {
                AbGroup::zero()
            }
        }
        (Cyclic { p, k }, Qn(n)) | (Qn(n), Cyclic { p, k }) => {
            if divides_supernatural(*p, n) {
                AbGroup::zero()
            } else {
                AbGroup { summands: vec![Cyclic { p: *p, k: *k }] }
            }
        }
        (Cyclic { .. }, QnModZ(_)) | (QnModZ(_), Cyclic { .. }) => AbGroup::zero(),
        (Qn(m), Qn(n)) => AbGroup::qn(&m.lcm(n)).expect("lcm of infinite type"),
        (Qn(m), QnModZ(n)) | (QnModZ(n), Qn(m)) => {
            AbGroup::qn_mod_z(&n.without_primes_of(m)).expect("infinite type preserved")
        }
        (QnModZ(_), QnModZ(_)) => AbGroup::zero(),
    }
}

fn atom_tor(a: &Atom, b: &Atom) -> AbGroup {
    use Atom::*;
    if a.is_torsion_free() || b.is_torsion_free() {
        return AbGroup::zero();
    }
    match (a, b) {
        (Cyclic { p, k }, Cyclic { p: q, k: j }) => {
            if p == q {
                AbGroup { summands: vec![Cyclic { p: *p, k: *k.min(j) }] }
            } else {
                AbGroup::zero()
            }
        }
        (Cyclic { p, k }, QnModZ(n)) | (QnModZ(n), Cyclic { p, k }) => {
            if divides_supernatural(*p, n) {
                AbGroup { summands: vec![Cyclic { p: *p, k: *k }] }
            } else {
                AbGroup::zero()
            }
        }
        (QnModZ(m), QnModZ(n)) => {
            AbGroup::qn_mod_z(&m.gcd(n)).expect("gcd of infinite type")
        }
        _ => unreachable!("torsion-free atoms handled above"),
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|a| match a {
                Atom::Z => "Z".to_string(),
                Atom::Cyclic { p, k } => {
                    if *k == 1 {
                        format!("Z/{p}")
                    } else {
                        format!("Z/{p}^{k}")
                    }
                }
                Atom::Qn(n) => format!("Q[{n}]"),
                Atom::QnModZ(n) => format!("Q[{n}]/Z"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
