//! Integer class-function arithmetic, the permutation character of a
//! finite group acting on functions Z → {1,…,k}, its annihilating
//! polynomial, and the two divisibility certificates extracted from it.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::gset::GSet;
use crate::perm::Perm;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

/// An integer-valued class function, one value per conjugacy class in
/// the group's class order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    group: Arc<PermGroup>,
    values: Vec<BigInt>,
}

impl ClassFunction {
    pub fn new(group: &Arc<PermGroup>, values: Vec<BigInt>) -> Self {
        assert_eq!(values.len(), group.class_count(), "one value per class");
        ClassFunction { group: Arc::clone(group), values }
    }

    pub fn constant(group: &Arc<PermGroup>, value: BigInt) -> Self {
        let values = vec![value; group.class_count()];
        ClassFunction { group: Arc::clone(group), values }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn value_at_identity(&self) -> &BigInt {
        &self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(BigInt::is_zero)
    }

    pub fn pointwise_mul(&self, other: &ClassFunction) -> ClassFunction {
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        ClassFunction { group: Arc::clone(&self.group), values }
    }

    pub fn pow(&self, r: usize) -> ClassFunction {
        let values = self.values.iter().map(|v| v.pow(r as u32)).collect();
        ClassFunction { group: Arc::clone(&self.group), values }
    }

    pub fn scale(&self, c: &BigInt) -> ClassFunction {
        let values = self.values.iter().map(|v| v * c).collect();
        ClassFunction { group: Arc::clone(&self.group), values }
    }
}

impl fmt::Display for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(BigInt::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Polynomial over ℤ, constant coefficient first, trailing zeros
/// trimmed; the zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(BigInt::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// ∏ (t − root) over the given roots.
    pub fn from_roots(roots: &[BigInt]) -> Self {
        let mut coeffs = vec![BigInt::one()];
        for root in roots {
            let mut next = vec![BigInt::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * root;
            }
            coeffs = next;
        }
        IntPolynomial::new(coeffs)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluates pointwise on a class function.
    pub fn eval_class_function(&self, chi: &ClassFunction) -> ClassFunction {
        let values = chi.values().iter().map(|v| self.eval(v)).collect();
        ClassFunction::new(chi.group(), values)
    }
}

impl fmt::Display for IntPolynomial {
    /// Terms in descending degree, except that a polynomial with a
    /// negative leading term but positive trailing term prints in
    /// ascending order (`6 - t` rather than `-t + 6`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(usize, &BigInt)> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let descending: Vec<(usize, &BigInt)> = terms.iter().rev().copied().collect();
        let order = if descending[0].1.is_negative() && terms[0].1.is_positive() {
            terms
        } else {
            descending
        };
        let mut out = String::new();
        for (pos, (deg, c)) in order.iter().enumerate() {
            let mag = c.abs();
            if pos == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = !mag.is_one() || *deg == 0;
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            match deg {
                0 => {}
                1 => out.push('t'),
                _ => out.push_str(&format!("t^{deg}")),
            }
        }
        write!(f, "{out}")
    }
}

/// Character of the action on functions Z → {1,…,k}: the value at g is
/// k^(number of ⟨g⟩-orbits on Z).
pub fn perm_character(z: &GSet, k: u64) -> ClassFunction {
    assert!(k >= 1, "k must be positive");
    let group = z.group();
    let values = group
        .classes()
        .iter()
        .map(|class| {
            let orbits = z.cyclic_orbit_count(class.representative).expect("class rep in group");
            BigInt::from(k).pow(orbits as u32)
        })
        .collect();
    ClassFunction::new(group, values)
}

/// Independent oracle for [`perm_character`]: counts the fixed
/// functions of each class representative by explicit enumeration of
/// all k^|Z| functions.
pub fn perm_character_bruteforce(z: &GSet, k: u64) -> Result<ClassFunction> {
    perm_character_bruteforce_with_budget(z, k, DEFAULT_ENUM_BUDGET)
}

pub fn perm_character_bruteforce_with_budget(
    z: &GSet,
    k: u64,
    budget: u64,
) -> Result<ClassFunction> {
    assert!(k >= 1, "k must be positive");
    let group = z.group();
    let total = BigInt::from(k).pow(z.size() as u32);
    if total > BigInt::from(budget) {
        return Err(Error::BudgetExceeded(format!(
            "enumeration of {k}^{} functions exceeds budget {budget}",
            z.size()
        )));
    }
    let total = u64::try_from(&total).expect("within budget");
    let actions: Vec<&Perm> =
        group.classes().iter().map(|c| z.action(c.representative)).collect();

    #[cfg(feature = "parallel")]
    let counts = bruteforce::count_fixed_par(&actions, k, total);
    #[cfg(not(feature = "parallel"))]
    let counts = bruteforce::count_fixed_seq(&actions, k, total);

    let values = counts.into_iter().map(BigInt::from).collect();
    Ok(ClassFunction::new(group, values))
}

/// Enumeration kernels behind the brute-force oracle. The sequential
/// and data-parallel versions are both public so they can be compared
/// directly in benchmarks.
pub mod bruteforce {
    use crate::perm::Perm;
    #[cfg(feature = "parallel")]
    use rayon::prelude::*;

    fn decode(mut index: u64, k: u64, size: usize) -> Vec<u32> {
        let mut digits = vec![0u32; size];
        for d in digits.iter_mut() {
            *d = (index % k) as u32;
            index /= k;
        }
        digits
    }

    fn increment(digits: &mut [u32], k: u64) {
        for d in digits.iter_mut() {
            *d += 1;
            if (*d as u64) < k {
                return;
            }
            *d = 0;
        }
    }

    fn is_fixed(digits: &[u32], action: &Perm) -> bool {
        digits
            .iter()
            .enumerate()
            .all(|(z, &v)| digits[action.apply(z as u32) as usize] == v)
    }

    fn count_range(actions: &[&Perm], k: u64, start: u64, len: u64) -> Vec<u64> {
        let size = actions.first().map_or(0, |p| p.degree());
        let mut digits = decode(start, k, size);
        let mut counts = vec![0u64; actions.len()];
        for step in 0..len {
            if step > 0 {
                increment(&mut digits, k);
            }
            for (c, action) in counts.iter_mut().zip(actions) {
                if is_fixed(&digits, action) {
                    *c += 1;
                }
            }
        }
        counts
    }

    /// Counts, for each action, the functions it fixes among all
    /// `total` = k^|Z| functions. Single threaded.
    pub fn count_fixed_seq(actions: &[&Perm], k: u64, total: u64) -> Vec<u64> {
        count_range(actions, k, 0, total)
    }

    /// Same counts, splitting the function index range over a rayon
    /// pool and summing the per-chunk tallies.
    #[cfg(feature = "parallel")]
    pub fn count_fixed_par(actions: &[&Perm], k: u64, total: u64) -> Vec<u64> {
        let chunk: u64 = 1 << 14;
        let chunks = total.div_ceil(chunk.max(1));
        (0..chunks)
            .into_par_iter()
            .map(|i| {
                let start = i * chunk;
                let len = chunk.min(total - start);
                count_range(actions, k, start, len)
            })
            .reduce(
                || vec![0u64; actions.len()],
                |mut acc, part| {
                    for (a, p) in acc.iter_mut().zip(part) {
                        *a += p;
                    }
                    acc
                },
            )
    }
}

/// The monic polynomial ∏ (t − v) over the distinct values v of the
/// class function; evaluating it on the class function gives zero.
pub fn annihilating_polynomial(chi: &ClassFunction) -> IntPolynomial {
    let mut distinct: Vec<BigInt> = chi.values().to_vec();
    distinct.sort();
    distinct.dedup();
    let m = IntPolynomial::from_roots(&distinct);
    debug_assert!(m.eval_class_function(chi).is_zero());
    m
}

/// Witness for χ^r = k·p(χ): the power of the permutation character
/// that becomes divisible by k inside the representation ring.
#[derive(Debug, Clone)]
pub struct AlphaCertificate {
    pub r: usize,
    pub p: IntPolynomial,
    pub k: u64,
    /// Set for k = 1, where the identity is vacuous.
    pub degenerate: bool,
}

/// Witness for χ·q(χ) = k^l: the multiplicative inverse of the
/// permutation character up to a power of k.
#[derive(Debug, Clone)]
pub struct BetaCertificate {
    pub q: IntPolynomial,
    pub l: u64,
    pub k: u64,
    pub degenerate: bool,
}

pub fn alpha_certificate(z: &GSet, k: u64) -> Result<AlphaCertificate> {
    if k == 1 {
        return Ok(AlphaCertificate { r: 1, p: IntPolynomial::one(), k, degenerate: true });
    }
    if z.size() == 0 {
        return Err(Error::EmptyGSet);
    }
    let chi = perm_character(z, k);
    let m = annihilating_polynomial(&chi);
    let r = m.degree();
    // m(t) = t^r − (c_{r−1} t^{r−1} + … + c_0); every cᵢ is a sum of
    // products of distinct values, each a positive power of k, so k
    // divides all of them and p = (c_{r−1} t^{r−1} + … + c_0)/k.
    let kk = BigInt::from(k);
    let mut p_coeffs = Vec::with_capacity(r);
    for i in 0..r {
        let c = -m.coeff(i);
        let (quot, rem) = num_integer::Integer::div_rem(&c, &kk);
        if !rem.is_zero() {
            return Err(Error::Internal(format!(
                "coefficient {c} of the annihilating polynomial not divisible by {k}"
            )));
        }
        p_coeffs.push(quot);
    }
    let cert =
        AlphaCertificate { r, p: IntPolynomial::new(p_coeffs), k, degenerate: false };
    if !verify_alpha(z, &cert) {
        return Err(Error::Internal("alpha certificate failed verification".into()));
    }
    Ok(cert)
}

pub fn beta_certificate(z: &GSet, k: u64) -> Result<BetaCertificate> {
    if k == 1 {
        return Ok(BetaCertificate { q: IntPolynomial::one(), l: 0, k, degenerate: true });
    }
    if z.size() == 0 {
        return Err(Error::EmptyGSet);
    }
    let chi = perm_character(z, k);
    let m = annihilating_polynomial(&chi);
    let r = m.degree();
    // m(t) = t·s(t) + m(0) with m(0) = (−1)^r ∏v, so χ·(−1)^(r+1)s(χ)
    // equals the product of the distinct values, a pure power of k.
    let sign = if r.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let mut value_product = &sign * m.coeff(0);
    let q_coeffs: Vec<BigInt> = (0..r).map(|i| -&sign * m.coeff(i + 1)).collect();
    let kk = BigInt::from(k);
    let mut l = 0u64;
    while value_product > BigInt::one() {
        let (quot, rem) = num_integer::Integer::div_rem(&value_product, &kk);
        if !rem.is_zero() {
            return Err(Error::Internal(format!(
                "product of distinct character values is not a power of {k}"
            )));
        }
        value_product = quot;
        l += 1;
    }
    if !value_product.is_one() {
        return Err(Error::Internal("character value product vanished".into()));
    }
    let cert = BetaCertificate { q: IntPolynomial::new(q_coeffs), l, k, degenerate: false };
    if !verify_beta(z, &cert) {
        return Err(Error::Internal("beta certificate failed verification".into()));
    }
    Ok(cert)
}

/// Pointwise check of χ^r = k·p(χ) in exact arithmetic.
pub fn verify_alpha(z: &GSet, cert: &AlphaCertificate) -> bool {
    let chi = perm_character(z, cert.k);
    let lhs = chi.pow(cert.r);
    let rhs = cert.p.eval_class_function(&chi).scale(&BigInt::from(cert.k));
    lhs == rhs
}

/// Pointwise check of χ·q(χ) = k^l in exact arithmetic.
pub fn verify_beta(z: &GSet, cert: &BetaCertificate) -> bool {
    let chi = perm_character(z, cert.k);
    let lhs = chi.pointwise_mul(&cert.q.eval_class_function(&chi));
    let rhs = ClassFunction::constant(chi.group(), BigInt::from(cert.k).pow(cert.l as u32));
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec, PermGroup};
    use crate::gset::{build_gset, GSetSpec};
    use proptest::prelude::*;

    fn group(text: &str) -> Arc<PermGroup> {
        Arc::new(build_group(&GroupSpec::parse(text).unwrap()).unwrap())
    }

    fn gset(g: &Arc<PermGroup>, text: &str) -> GSet {
        build_gset(g, &GSetSpec::parse(text).unwrap()).unwrap()
    }

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn character_values_c2_regular() {
        let g = group("cyclic 2");
        let z = gset(&g, "regular");
        assert_eq!(perm_character(&z, 2).values(), &ints(&[4, 2])[..]);
        assert_eq!(perm_character(&z, 3).values(), &ints(&[9, 3])[..]);
        assert_eq!(perm_character(&z, 1).values(), &ints(&[1, 1])[..]);
    }

    #[test]
    fn bruteforce_matches_examples() {
        let g = group("cyclic 2");
        let z = gset(&g, "regular");
        assert_eq!(perm_character_bruteforce(&z, 2).unwrap().values(), &ints(&[4, 2])[..]);
        assert_eq!(perm_character_bruteforce(&z, 1).unwrap().values(), &ints(&[1, 1])[..]);

        // transposition acting on the 3 cosets of S3/⟨(01)⟩ fixes one
        // coset and swaps two: 2·2 fixed functions for k = 2
        let s3 = group("symmetric 3");
        let cosets = gset(&s3, "coset {(0 1)}");
        let chi = perm_character_bruteforce(&cosets, 2).unwrap();
        let transposition_class = s3
            .classes()
            .iter()
            .position(|c| s3.element_order(c.representative) == 2)
            .unwrap();
        assert_eq!(chi.values()[transposition_class], BigInt::from(4));
    }

    #[test]
    fn bruteforce_budget() {
        let g = group("cyclic 2");
        let z = gset(&g, "regular");
        assert!(matches!(
            perm_character_bruteforce_with_budget(&z, 100, 10),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn annihilating_polynomials() {
        let g = group("cyclic 2");
        let z = gset(&g, "regular");
        let m2 = annihilating_polynomial(&perm_character(&z, 2));
        assert_eq!(m2.coeffs(), &ints(&[8, -6, 1])[..]);
        let m3 = annihilating_polynomial(&perm_character(&z, 3));
        assert_eq!(m3.coeffs(), &ints(&[27, -12, 1])[..]);
        let const_one = ClassFunction::constant(&g, BigInt::one());
        assert_eq!(annihilating_polynomial(&const_one).coeffs(), &ints(&[-1, 1])[..]);
    }

    #[test]
    fn alpha_certificates() {
        let g = group("cyclic 2");
        let z = gset(&g, "regular");

        let a2 = alpha_certificate(&z, 2).unwrap();
        assert_eq!(a2.r, 2);
        assert_eq!(a2.p.coeffs(), &ints(&[-4, 3])[..]);
        assert!(!a2.degenerate);

        let a3 = alpha_certificate(&z, 3).unwrap();
        assert_eq!(a3.r, 2);
        assert_eq!(a3.p.coeffs(), &ints(&[-9, 4])[..]);

        let a1 = alpha_certificate(&z, 1).unwrap();
        assert!(a1.degenerate);
        assert_eq!(a1.r, 1);
        assert_eq!(a1.p, IntPolynomial::one());
    }

    #[test]
    fn beta_certificates() {
        let g = group("cyclic 2");
        let z = gset(&g, "regular");

        let b2 = beta_certificate(&z, 2).unwrap();
        assert_eq!(b2.q.coeffs(), &ints(&[6, -1])[..]);
        assert_eq!(b2.l, 3);

        let b3 = beta_certificate(&z, 3).unwrap();
        assert_eq!(b3.q.coeffs(), &ints(&[12, -1])[..]);
        assert_eq!(b3.l, 3);

        let b1 = beta_certificate(&z, 1).unwrap();
        assert!(b1.degenerate);
        assert_eq!(b1.l, 0);
    }

    #[test]
    fn empty_gset_rejected() {
        let g = group("cyclic 2");
        let z = gset(&g, "trivial 0");
        assert!(matches!(alpha_certificate(&z, 2), Err(Error::EmptyGSet)));
        assert!(matches!(beta_certificate(&z, 2), Err(Error::EmptyGSet)));
    }

    #[test]
    fn polynomial_display() {
        let p = IntPolynomial::new(ints(&[-4, 3]));
        assert_eq!(p.to_string(), "3t - 4");
        let q = IntPolynomial::new(ints(&[6, -1]));
        assert_eq!(q.to_string(), "6 - t");
        assert_eq!(IntPolynomial::one().to_string(), "1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(IntPolynomial::new(ints(&[8, -6, 1])).to_string(), "t^2 - 6t + 8");
        assert_eq!(IntPolynomial::new(ints(&[-1, -1])).to_string(), "-t - 1");
    }

    fn arb_case() -> impl Strategy<Value = (Arc<PermGroup>, &'static str, u64)> {
        (
            prop::sample::select(vec!["cyclic 2", "cyclic 3", "cyclic 4", "symmetric 3"]),
            prop::sample::select(vec!["regular", "trivial 2", "union (trivial 1) (trivial 2)"]),
            2u64..=4,
        )
            .prop_map(|(gs, zs, k)| (group(gs), zs, k))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn oracle_agreement((g, zs, k) in arb_case()) {
            let z = gset(&g, zs);
            let fast = perm_character(&z, k);
            let slow = perm_character_bruteforce(&z, k).unwrap();
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn dimension_at_identity((g, zs, k) in arb_case()) {
            let z = gset(&g, zs);
            let chi = perm_character(&z, k);
            prop_assert_eq!(chi.value_at_identity().clone(), BigInt::from(k).pow(z.size() as u32));
        }

        #[test]
        fn character_multiplicative_on_unions((g, zs, k) in arb_case()) {
            let za = gset(&g, zs);
            let zb = gset(&g, "regular");
            let zu = build_gset(&g, &GSetSpec::Union(
                Box::new(GSetSpec::parse(zs).unwrap()),
                Box::new(GSetSpec::Regular),
            )).unwrap();
            prop_assert_eq!(
                perm_character(&zu, k),
                perm_character(&za, k).pointwise_mul(&perm_character(&zb, k))
            );
        }

        #[test]
        fn annihilation_property((g, zs, k) in arb_case()) {
            let z = gset(&g, zs);
            let chi = perm_character(&z, k);
            let m = annihilating_polynomial(&chi);
            prop_assert!(m.eval_class_function(&chi).is_zero());
        }

        #[test]
        fn certificates_sound((g, zs, k) in arb_case()) {
            // re-verify the defining identities without going through
            // the constructor's own check
            let z = gset(&g, zs);
            let chi = perm_character(&z, k);
            let alpha = alpha_certificate(&z, k).unwrap();
            for v in chi.values() {
                prop_assert_eq!(v.pow(alpha.r as u32), BigInt::from(k) * alpha.p.eval(v));
            }
            let beta = beta_certificate(&z, k).unwrap();
            let target = BigInt::from(k).pow(beta.l as u32);
            for v in chi.values() {
                prop_assert_eq!(v * beta.q.eval(v), target.clone());
            }
        }
    }
}
