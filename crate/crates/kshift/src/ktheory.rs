//! Closed-form K-theory of the crossed products in scope, as
//! executable formulas over ℤ/2-graded pairs of abelian groups: the
//! Bernoulli-shift crossed product, the two flip families, the Künneth
//! operation, localization, and the rank-comparison obstruction to the
//! Rokhlin property.

use crate::abgrp::{AbGroup, Saturation};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::gset::GSet;
use crate::supernat::Supernatural;
use std::fmt;

/// A ℤ/2-graded pair (K₀, K₁) with a free-form provenance label.
/// Equality ignores the label.
#[derive(Debug, Clone)]
pub struct KPair {
    pub k0: AbGroup,
    pub k1: AbGroup,
    pub label: String,
}

impl KPair {
    pub fn new(k0: AbGroup, k1: AbGroup, label: impl Into<String>) -> Self {
        KPair { k0, k1, label: label.into() }
    }
}

impl PartialEq for KPair {
    fn eq(&self, other: &Self) -> bool {
        self.k0 == other.k0 && self.k1 == other.k1
    }
}

impl Eq for KPair {}

impl fmt::Display for KPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K0 = {}, K1 = {}", self.k0, self.k1)
    }
}

/// Which kind of G-set underlies a Bernoulli shift: an explicit finite
/// one, or the formal infinitely-repeated case.
#[derive(Debug, Clone, Copy)]
pub enum ZMode<'a> {
    Finite(&'a GSet),
    Infinite,
}

/// K-theory of the Bernoulli crossed product: ℚ_sat(n)^⊕c in degree 0
/// (c the number of conjugacy classes) and 0 in degree 1. For n = 1
/// the pair is (ℤ^⊕c, 0). A finite-type n ≠ 1 needs an infinite Z:
/// with a finite Z no closed form is asserted.
pub fn bernoulli_k(group: &PermGroup, n: &Supernatural, mode: ZMode) -> Result<KPair> {
    let c = group.class_count();
    let k0_atom = if n.is_one() {
        AbGroup::z()
    } else {
        match mode {
            ZMode::Finite(z) => {
                if z.size() == 0 {
                    return Err(Error::EmptyGSet);
                }
                if !n.is_infinite_type() {
                    return Err(Error::FiniteTypeFiniteZ(n.to_string()));
                }
                AbGroup::qn(n)?
            }
            ZMode::Infinite => AbGroup::qn(&n.saturate())?,
        }
    };
    Ok(KPair::new(
        k0_atom.power(c),
        AbGroup::zero(),
        format!("bernoulli(|G| = {}, c = {c}, n = {n})", group.order()),
    ))
}

/// Graded Künneth formula with the (unnaturally split) torsion term:
/// K₀ = A₀⊗B₀ ⊕ A₁⊗B₁ ⊕ Tor(A₀,B₁) ⊕ Tor(A₁,B₀) and
/// K₁ = A₀⊗B₁ ⊕ A₁⊗B₀ ⊕ Tor(A₀,B₀) ⊕ Tor(A₁,B₁).
pub fn kunneth(a: &KPair, b: &KPair) -> KPair {
    let k0 = a
        .k0
        .tensor(&b.k0)
        .direct_sum(&a.k1.tensor(&b.k1))
        .direct_sum(&a.k0.tor(&b.k1))
        .direct_sum(&a.k1.tor(&b.k0));
    let k1 = a
        .k0
        .tensor(&b.k1)
        .direct_sum(&a.k1.tensor(&b.k0))
        .direct_sum(&a.k0.tor(&b.k0))
        .direct_sum(&a.k1.tor(&b.k1));
    KPair::new(k0, k1, format!("kunneth({}; {})", a.label, b.label))
}

/// K-theory of the flip crossed product of the Kirchberg algebra with
/// K₀ = ℚ_m/ℤ, K₁ = ℚ_n/ℤ: in degree 0 one gets ℚ_m/ℤ ⊕ ℚ_r/ℤ with
/// r = gcd(m, n), in degree 1 two copies of ℚ_n/ℤ.
pub fn flip_f(m: &Supernatural, n: &Supernatural) -> Result<KPair> {
    let k0 = AbGroup::qn_mod_z(m)?.direct_sum(&AbGroup::qn_mod_z(&m.gcd(n))?);
    let k1 = AbGroup::qn_mod_z(n)?.power(2);
    Ok(KPair::new(k0, k1, format!("flip-F(m = {m}, n = {n})")))
}

/// Result of the flip computation for the quasidiagonal family: the
/// divisibility hypothesis m | n is reported, not enforced, since the
/// formula is stated for all infinite-type pairs.
#[derive(Debug, Clone)]
pub struct FlipE {
    pub pair: KPair,
    pub divides_hypothesis: bool,
}

/// K₀ = ℚ_n ⊕ ℚ_n and K₁ = ℚ_(n∖-complement of m) /ℤ ⊕ ℚ_m/ℤ ⊕ ℚ_m/ℤ,
/// the first K₁ term being the normal form of ℚ_mn/ℚ_n.
pub fn flip_e(n: &Supernatural, m: &Supernatural) -> Result<FlipE> {
    let qn = AbGroup::qn(n)?;
    let quotient = AbGroup::qn_mod_z(&m.without_primes_of(n))?;
    let k1 = quotient.direct_sum(&AbGroup::qn_mod_z(m)?.power(2));
    Ok(FlipE {
        pair: KPair::new(qn.power(2), k1, format!("flip-E(n = {n}, m = {m})")),
        divides_hypothesis: m.divides(n),
    })
}

/// The rank comparison that rules out the Rokhlin property: under the
/// Rokhlin hypothesis K₀ would be ℚ_n, but the crossed product has
/// K₀ = ℚ_n^⊕c; these disagree exactly when G is nontrivial.
#[derive(Debug, Clone)]
pub struct RokhlinReport {
    pub excluded: bool,
    pub lhs: AbGroup,
    pub rhs: AbGroup,
}

pub fn rokhlin_excluded(group: &PermGroup, n: &Supernatural) -> Result<RokhlinReport> {
    if n.is_one() {
        return Err(Error::TrivialSupernatural);
    }
    if !n.is_infinite_type() {
        return Err(Error::NotInfiniteType(n.to_string()));
    }
    let c = group.class_count();
    let lhs = AbGroup::qn(n)?;
    let rhs = lhs.power(c);
    Ok(RokhlinReport { excluded: c > 1, lhs, rhs })
}

/// Componentwise localization of a K-pair; the result is a module over
/// the localized integers.
pub fn localize_k(pair: &KPair, n: &Supernatural, mode: Saturation) -> Result<KPair> {
    Ok(KPair::new(
        pair.k0.localize(n, mode)?,
        pair.k1.localize(n, mode)?,
        format!("localize({}, n = {n})", pair.label),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};
    use crate::gset::{build_gset, GSetSpec};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn group(text: &str) -> Arc<PermGroup> {
        Arc::new(build_group(&GroupSpec::parse(text).unwrap()).unwrap())
    }

    fn s(text: &str) -> Supernatural {
        Supernatural::parse(text).unwrap()
    }

    fn g(text: &str) -> AbGroup {
        AbGroup::parse(text).unwrap()
    }

    fn pair(k0: &str, k1: &str) -> KPair {
        KPair::new(g(k0), g(k1), "test")
    }

    #[test]
    fn bernoulli_examples() {
        let c2 = group("cyclic 2");
        let out = bernoulli_k(&c2, &s("2^inf"), ZMode::Infinite).unwrap();
        assert_eq!(out, pair("Q[2^inf] + Q[2^inf]", "0"));

        let trivial = group("cyclic 1");
        assert_eq!(
            bernoulli_k(&trivial, &s("2^inf"), ZMode::Infinite).unwrap(),
            pair("Q[2^inf]", "0")
        );

        let s3 = group("symmetric 3");
        let out = bernoulli_k(&s3, &s("6"), ZMode::Infinite).unwrap();
        assert_eq!(
            out,
            pair("Q[2^inf*3^inf] + Q[2^inf*3^inf] + Q[2^inf*3^inf]", "0")
        );

        // n = 1 gives the integral pair
        assert_eq!(bernoulli_k(&c2, &s("1"), ZMode::Infinite).unwrap(), pair("Z + Z", "0"));
    }

    #[test]
    fn bernoulli_finite_z_modes() {
        let c2 = group("cyclic 2");
        let z = build_gset(&c2, &GSetSpec::Regular).unwrap();
        let out = bernoulli_k(&c2, &s("2^inf"), ZMode::Finite(&z)).unwrap();
        assert_eq!(out, pair("Q[2^inf] + Q[2^inf]", "0"));

        assert!(matches!(
            bernoulli_k(&c2, &s("2"), ZMode::Finite(&z)),
            Err(Error::FiniteTypeFiniteZ(_))
        ));
        let empty = build_gset(&c2, &GSetSpec::Trivial(0)).unwrap();
        assert!(matches!(
            bernoulli_k(&c2, &s("2^inf"), ZMode::Finite(&empty)),
            Err(Error::EmptyGSet)
        ));
    }

    #[test]
    fn kunneth_paper_values() {
        let a = pair("Q[6^inf]/Z", "0");
        assert_eq!(kunneth(&a, &a), pair("0", "Q[6^inf]/Z"));

        let unit = pair("Z", "0");
        let b = pair("Q[2^inf]", "Z/8 + Q[3^inf]/Z");
        assert_eq!(kunneth(&unit, &b), b);

        // degree-1 torsion quotient picks up only the new primes
        let qn = pair("Q[2^inf]", "0");
        let torsion = pair("0", "Q[6^inf]/Z");
        assert_eq!(kunneth(&qn, &torsion), pair("0", "Q[3^inf]/Z"));
    }

    #[test]
    fn flip_f_values() {
        let m = s("2^inf");
        assert_eq!(
            flip_f(&m, &Supernatural::one()).unwrap(),
            pair("Q[2^inf]/Z", "0")
        );
        assert_eq!(
            flip_f(&Supernatural::one(), &m).unwrap(),
            pair("0", "Q[2^inf]/Z + Q[2^inf]/Z")
        );
        assert_eq!(
            flip_f(&s("2^inf"), &s("3^inf")).unwrap(),
            pair("Q[2^inf]/Z", "Q[3^inf]/Z + Q[3^inf]/Z")
        );
        assert_eq!(
            flip_f(&s("2^inf"), &s("2^inf")).unwrap(),
            pair("Q[2^inf]/Z + Q[2^inf]/Z", "Q[2^inf]/Z + Q[2^inf]/Z")
        );
        assert!(flip_f(&s("12"), &m).is_err());
    }

    #[test]
    fn flip_e_values() {
        // m | n: the quotient term vanishes
        let out = flip_e(&s("6^inf"), &s("2^inf")).unwrap();
        assert!(out.divides_hypothesis);
        assert_eq!(
            out.pair,
            pair(
                "Q[2^inf*3^inf] + Q[2^inf*3^inf]",
                "Q[2^inf]/Z + Q[2^inf]/Z"
            )
        );

        let out = flip_e(&s("2^inf"), &s("2^inf")).unwrap();
        assert_eq!(
            out.pair,
            pair("Q[2^inf] + Q[2^inf]", "Q[2^inf]/Z + Q[2^inf]/Z")
        );

        // m does not divide n: warned, and the extra 3-primary part appears
        let out = flip_e(&s("2^inf"), &s("6^inf")).unwrap();
        assert!(!out.divides_hypothesis);
        assert_eq!(
            out.pair,
            pair(
                "Q[2^inf] + Q[2^inf]",
                "Q[3^inf]/Z + Q[2^inf*3^inf]/Z + Q[2^inf*3^inf]/Z"
            )
        );
    }

    #[test]
    fn rokhlin_reports() {
        let c2 = group("cyclic 2");
        let rep = rokhlin_excluded(&c2, &s("2^inf")).unwrap();
        assert!(rep.excluded);
        assert_eq!(rep.lhs, g("Q[2^inf]"));
        assert_eq!(rep.rhs, g("Q[2^inf] + Q[2^inf]"));

        let trivial = group("cyclic 1");
        assert!(!rokhlin_excluded(&trivial, &s("2^inf")).unwrap().excluded);

        assert!(matches!(
            rokhlin_excluded(&c2, &Supernatural::one()),
            Err(Error::TrivialSupernatural)
        ));
        assert!(matches!(
            rokhlin_excluded(&c2, &s("12")),
            Err(Error::NotInfiniteType(_))
        ));
    }

    #[test]
    fn localize_k_examples() {
        let p = pair("Z", "Z/2^3");
        assert_eq!(
            localize_k(&p, &s("2^inf"), Saturation::Strict).unwrap(),
            pair("Q[2^inf]", "0")
        );
        assert_eq!(localize_k(&p, &Supernatural::one(), Saturation::Strict).unwrap(), p);
        let torsion = pair("Q[2^inf]/Z", "0");
        assert_eq!(
            localize_k(&torsion, &s("2^inf"), Saturation::Strict).unwrap(),
            pair("0", "0")
        );
    }

    fn arb_pair() -> impl Strategy<Value = KPair> {
        let grp = prop::sample::select(vec![
            g("0"),
            g("Z"),
            g("Z + Z/4"),
            g("Q[2^inf]"),
            g("Q[2^inf]/Z"),
            g("Q[2^inf*3^inf]/Z + Z/3"),
        ]);
        (grp.clone(), grp).prop_map(|(k0, k1)| KPair::new(k0, k1, "arb"))
    }

    proptest! {
        #[test]
        fn kunneth_commutative_with_unit(a in arb_pair(), b in arb_pair()) {
            prop_assert_eq!(kunneth(&a, &b), kunneth(&b, &a));
            let unit = KPair::new(AbGroup::z(), AbGroup::zero(), "unit");
            prop_assert_eq!(kunneth(&a, &unit), a.clone());
        }

        #[test]
        fn bernoulli_invariants(
            gname in prop::sample::select(vec!["cyclic 2", "cyclic 6", "symmetric 3", "dihedral 4"]),
            n in prop::sample::select(vec![s("2^inf"), s("6^inf"), s("1"), s("10")]),
        ) {
            let grp = group(gname);
            let out = bernoulli_k(&grp, &n, ZMode::Infinite).unwrap();
            prop_assert!(out.k1.is_zero());
            prop_assert_eq!(out.k0.summands().len(), grp.class_count());
        }
    }
}
