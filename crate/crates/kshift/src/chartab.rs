//! Exact character tables of finite permutation groups.
//!
//! The table is found modularly: for a prime ℓ ≡ 1 (mod e), ℓ > 2√|G|
//! (e the group exponent), the class algebra over F_ℓ splits
//! completely, so the common eigenvectors of the class-multiplication
//! matrices are exactly the central characters mod ℓ. Eigenspaces are
//! separated by random linear combinations of the class matrices (with
//! a fixed seed), falling back to a sweep over the individual matrices,
//! and the character values are lifted to root-of-unity multiplicity
//! vectors through the discrete Fourier formula over the power map.
//! Everything is re-verified exactly (orthogonality, degree sums)
//! before a table is returned.
//!
//! Decomposition of integer class functions into irreducibles runs
//! modulo several admissible primes with a CRT lift against the a
//! priori bound max_g |χ(g)|, then re-checks the reconstruction
//! exactly.

use crate::cyclotomic::{cyclotomic_polynomial, Cyc};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::gset::GSet;
use crate::modular::{self, FpMat, Subspace};
use crate::repring::{alpha_certificate, perm_character, ClassFunction};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const SPLIT_SEED: u64 = 0x00c1a55e5;
const RANDOM_ROUNDS: usize = 16;
const PRIME_ATTEMPTS: usize = 8;
const CLASS_TABLE_LIMIT: usize = 20_000_000;

/// One irreducible character: its degree and one cyclotomic value per
/// conjugacy class.
#[derive(Debug, Clone)]
pub struct Irrep {
    pub degree: u64,
    pub values: Vec<Cyc>,
}

/// The exact character table. Rows are sorted by degree, then by the
/// value vectors (reversed-coefficient lexicographic order), which puts
/// the trivial character first.
#[derive(Debug)]
pub struct CharTable {
    group: Arc<PermGroup>,
    exponent: u64,
    phi: Vec<BigInt>,
    rows: Vec<Irrep>,
}

struct ClassData {
    n: usize,
    c: usize,
    sizes: Vec<u64>,
    inv_class: Vec<usize>,
    /// `t[k][x]` = class of x⁻¹·(representative of class k); the class
    /// matrix for weights w has entry [j][k] = Σ_x w[class(x)]·[t[k][x]=j].
    t: Vec<Vec<u32>>,
}

impl ClassData {
    fn build(group: &PermGroup) -> Result<ClassData> {
        let n = group.order();
        let c = group.class_count();
        if n.checked_mul(c).is_none_or(|prod| prod > CLASS_TABLE_LIMIT) {
            return Err(Error::BudgetExceeded(format!(
                "character table for |G| = {n} with {c} classes"
            )));
        }
        let sizes: Vec<u64> = group.classes().iter().map(|cl| cl.size() as u64).collect();
        let inv_class = (0..c).map(|j| group.inverse_class(j as u32) as usize).collect();
        let t = (0..c)
            .map(|k| {
                let rep = group.classes()[k].representative;
                (0..n as u32)
                    .map(|x| group.class_of(group.multiply(group.inverse_index(x), rep)))
                    .collect()
            })
            .collect();
        Ok(ClassData { n, c, sizes, inv_class, t })
    }

    /// Σ_i w_i·M_i over F_ℓ, where M_i is multiplication by the i-th
    /// class sum in the class algebra.
    fn class_matrix(&self, group: &PermGroup, weights: &[u64], l: u64) -> FpMat {
        let mut m = FpMat::zeros(self.c, l);
        for k in 0..self.c {
            let tk = &self.t[k];
            for x in 0..self.n {
                let w = weights[group.class_of(x as u32) as usize] % l;
                if w != 0 {
                    m.add_at(tk[x] as usize, k, w);
                }
            }
        }
        m
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Computes and verifies the character table.
pub fn character_table(group: &Arc<PermGroup>) -> Result<CharTable> {
    let data = ClassData::build(group)?;
    let e = group.exponent();
    let n = data.n as u64;
    let mut attempts = 0;
    let mut last_prime = 0;
    for l in modular::admissible_primes(e, n) {
        attempts += 1;
        last_prime = l;
        if attempts > PRIME_ATTEMPTS {
            break;
        }
        let Some(omegas) = split_class_algebra(group, &data, l) else { continue };
        let Some(rows) = lift_rows(group, &data, l, &omegas) else { continue };
        let mut rows = rows;
        rows.sort_by_key(|row| {
            let key: Vec<Vec<BigInt>> = row
                .values
                .iter()
                .map(|v| v.coeffs().iter().rev().cloned().collect())
                .collect();
            (row.degree, key)
        });
        let table = CharTable {
            group: Arc::clone(group),
            exponent: e,
            phi: cyclotomic_polynomial(e as usize),
            rows,
        };
        if !table.verify_degree_sum()
            || !table.verify_row_orthogonality()
            || !table.verify_column_orthogonality()
        {
            return Err(Error::Internal(
                "character table failed exact orthogonality verification".into(),
            ));
        }
        return Ok(table);
    }
    Err(Error::EigenspaceSeparation(last_prime))
}

/// Finds the c one-dimensional common eigenspaces of the class algebra
/// over F_ℓ and returns the eigenvectors normalized at the identity
/// class. `None` means this prime should be retried.
fn split_class_algebra(group: &PermGroup, data: &ClassData, l: u64) -> Option<Vec<Vec<u64>>> {
    let c = data.c;
    let mut spaces = vec![Subspace::full(c, l)];
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);

    let fully_split = |spaces: &[Subspace]| spaces.iter().all(|s| s.dim() == 1);

    for _ in 0..RANDOM_ROUNDS {
        if fully_split(&spaces) {
            break;
        }
        let weights: Vec<u64> = (0..c).map(|_| rng.gen_range(0..l)).collect();
        let m = data.class_matrix(group, &weights, l);
        spaces = split_all(spaces, &m)?;
    }
    // The individual class matrices always separate the eigenspaces
    // completely, so this sweep terminates the job if the random
    // combinations have not.
    for i in 1..c {
        if fully_split(&spaces) {
            break;
        }
        let mut weights = vec![0u64; c];
        weights[i] = 1;
        let m = data.class_matrix(group, &weights, l);
        spaces = split_all(spaces, &m)?;
    }
    if !fully_split(&spaces) {
        return None;
    }

    let mut omegas = Vec::with_capacity(c);
    for s in &spaces {
        let v = &s.basis()[0];
        if v[0] == 0 {
            return None;
        }
        let inv = modular::inv_mod(v[0], l);
        omegas.push(v.iter().map(|&x| modular::mul_mod(x, inv, l)).collect());
    }
    Some(omegas)
}

fn split_all(spaces: Vec<Subspace>, m: &FpMat) -> Option<Vec<Subspace>> {
    let mut next = vec![];
    for s in spaces {
        if s.dim() == 1 {
            next.push(s);
        } else {
            next.extend(s.split_by(m)?);
        }
    }
    Some(next)
}

/// Turns the normalized eigenvectors (central characters mod ℓ) into
/// exact character rows via degrees, modular values and the discrete
/// Fourier lift over the power map.
fn lift_rows(
    group: &PermGroup,
    data: &ClassData,
    l: u64,
    omegas: &[Vec<u64>],
) -> Option<Vec<Irrep>> {
    let c = data.c;
    let n = data.n as u64;
    let e = group.exponent();
    debug_assert!(!n.is_multiple_of(l));
    let n_mod = n % l;
    let h_inv: Vec<u64> = data.sizes.iter().map(|&h| modular::inv_mod(h % l, l)).collect();

    // power map: class of (rep of class j)^s for s in 0..e
    let mut power_map = Vec::with_capacity(c);
    for j in 0..c {
        let rep = group.classes()[j].representative;
        let powers = group.cyclic_subgroup(rep).ok()?;
        let ord = powers.len();
        let row: Vec<usize> = (0..e as usize)
            .map(|s| group.class_of(powers[s % ord]) as usize)
            .collect();
        power_map.push(row);
    }

    let z = modular::primitive_root_of_unity(e, l);
    let e_usize = e as usize;
    let zpow: Vec<u64> = {
        let mut v = Vec::with_capacity(e_usize);
        let mut acc = 1u64;
        for _ in 0..e_usize {
            v.push(acc);
            acc = modular::mul_mod(acc, z, l);
        }
        v
    };
    let e_inv = modular::inv_mod(e % l, l);
    let sqrt_n = isqrt(n);

    let mut rows = Vec::with_capacity(c);
    for omega in omegas {
        // 1/d² = (1/n)·Σ_j ω_j ω_j' / h_j
        let mut s = 0u64;
        for j in 0..c {
            let term = modular::mul_mod(
                modular::mul_mod(omega[j], omega[data.inv_class[j]], l),
                h_inv[j],
                l,
            );
            s = (s + term) % l;
        }
        if s == 0 {
            return None;
        }
        let d2 = modular::mul_mod(n_mod, modular::inv_mod(s, l), l);
        let degree = (1..=sqrt_n).find(|&d| modular::mul_mod(d, d, l) == d2)?;

        let chibar: Vec<u64> = (0..c)
            .map(|j| modular::mul_mod(modular::mul_mod(degree % l, omega[j], l), h_inv[j], l))
            .collect();

        let mut values = Vec::with_capacity(c);
        for j in 0..c {
            let mut mults = Vec::with_capacity(e_usize);
            let mut total = 0u64;
            for t in 0..e_usize {
                let mut acc = 0u64;
                for (s_pow, &cls) in power_map[j].iter().enumerate() {
                    let idx = (t * s_pow) % e_usize;
                    let zneg = zpow[(e_usize - idx) % e_usize];
                    acc = (acc + modular::mul_mod(chibar[cls], zneg, l)) % l;
                }
                let m = modular::mul_mod(e_inv, acc, l);
                // multiplicities are honest eigenvalue counts ≤ degree
                if m > degree {
                    return None;
                }
                total += m;
                mults.push(BigInt::from(m));
            }
            if total != degree {
                return None;
            }
            values.push(Cyc::from_coeffs(mults));
        }
        rows.push(Irrep { degree, values });
    }
    Some(rows)
}

impl CharTable {
    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Φ_e, for equality tests on values in ℤ[ζ_e].
    pub fn phi(&self) -> &[BigInt] {
        &self.phi
    }

    pub fn rows(&self) -> &[Irrep] {
        &self.rows
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.degree).collect()
    }

    pub fn class_count(&self) -> usize {
        self.rows.len()
    }

    pub fn verify_degree_sum(&self) -> bool {
        let sum: u64 = self.rows.iter().map(|r| r.degree * r.degree).sum();
        sum == self.group.order() as u64
    }

    /// (1/|G|)·Σ_C |C| χ_a(C) χ_b(C⁻¹) = δ_ab, checked exactly in ℤ[ζ_e].
    pub fn verify_row_orthogonality(&self) -> bool {
        let e = self.exponent as usize;
        let n = BigInt::from(self.group.order());
        let c = self.rows.len();
        for a in 0..c {
            for b in a..c {
                let mut acc = Cyc::zero(e);
                for (j, class) in self.group.classes().iter().enumerate() {
                    let jinv = self.group.inverse_class(j as u32) as usize;
                    let term = self.rows[a].values[j]
                        .mul(&self.rows[b].values[jinv])
                        .scale(&BigInt::from(class.size()));
                    acc = acc.add(&term);
                }
                let expected = if a == b { n.clone() } else { BigInt::zero() };
                if !acc.eq_mod(&Cyc::from_int(e, expected), &self.phi) {
                    return false;
                }
            }
        }
        true
    }

    /// Σ_χ χ(C_i) χ(C_j⁻¹) = δ_ij·|G|/|C_i|, checked exactly.
    pub fn verify_column_orthogonality(&self) -> bool {
        let e = self.exponent as usize;
        let n = self.group.order();
        let c = self.rows.len();
        for i in 0..c {
            for j in i..c {
                let jinv = self.group.inverse_class(j as u32) as usize;
                let mut acc = Cyc::zero(e);
                for row in &self.rows {
                    acc = acc.add(&row.values[i].mul(&row.values[jinv]));
                }
                let expected = if i == j {
                    BigInt::from(n / self.group.classes()[i].size())
                } else {
                    BigInt::zero()
                };
                if !acc.eq_mod(&Cyc::from_int(e, expected), &self.phi) {
                    return false;
                }
            }
        }
        true
    }
}

/// An element of the representation ring: integer multiplicities over
/// the rows of a character table.
#[derive(Debug, Clone)]
pub struct VirtualCharacter {
    table: Arc<CharTable>,
    multiplicities: Vec<BigInt>,
}

impl VirtualCharacter {
    pub fn new(table: &Arc<CharTable>, multiplicities: Vec<BigInt>) -> Self {
        assert_eq!(multiplicities.len(), table.rows().len());
        VirtualCharacter { table: Arc::clone(table), multiplicities }
    }

    pub fn table(&self) -> &Arc<CharTable> {
        &self.table
    }

    pub fn multiplicities(&self) -> &[BigInt] {
        &self.multiplicities
    }

    /// Σ mᵢ·deg(χᵢ).
    pub fn dimension(&self) -> BigInt {
        self.multiplicities
            .iter()
            .zip(self.table.rows())
            .map(|(m, row)| m * BigInt::from(row.degree))
            .sum()
    }

    pub fn is_genuine(&self) -> bool {
        self.multiplicities.iter().all(|m| !m.is_negative())
    }

    /// Pointwise character values Σ mᵢ·χᵢ(C).
    pub fn reconstruct(&self) -> Vec<Cyc> {
        let e = self.table.exponent() as usize;
        let c = self.table.rows().len();
        (0..c)
            .map(|j| {
                let mut acc = Cyc::zero(e);
                for (m, row) in self.multiplicities.iter().zip(self.table.rows()) {
                    acc = acc.add(&row.values[j].scale(m));
                }
                acc
            })
            .collect()
    }
}

/// Exact inner products ⟨χ, χᵢ⟩ for an integer class function, done
/// modulo several admissible primes and CRT-lifted against the bound
/// max|χ|; the reconstruction Σ mᵢχᵢ = χ is then re-checked exactly,
/// so a non-virtual input is always detected.
pub fn decompose(table: &Arc<CharTable>, chi: &ClassFunction) -> Result<VirtualCharacter> {
    if chi.group().as_ref() != table.group().as_ref() {
        return Err(Error::Internal("class function over a different group".into()));
    }
    let group = table.group();
    let n = group.order() as u64;
    let e = table.exponent();
    let c = table.rows().len();
    let bound: BigInt = chi
        .values()
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(BigInt::zero)
        .max(BigInt::one());

    let mut primes = vec![];
    let mut product = BigInt::one();
    for l in modular::admissible_primes(e, n) {
        primes.push(l);
        product *= BigInt::from(l);
        if product > 2 * &bound {
            break;
        }
    }

    let residues_for = |l: &u64| -> Vec<u64> {
        let l = *l;
        let z = modular::primitive_root_of_unity(e, l);
        let lb = BigInt::from(l);
        let chibar: Vec<u64> = chi
            .values()
            .iter()
            .map(|v| u64::try_from(((v % &lb) + &lb) % &lb).expect("residue fits"))
            .collect();
        let n_inv = modular::inv_mod(n % l, l);
        (0..c)
            .map(|row| {
                let mut acc = 0u64;
                for (j, class) in group.classes().iter().enumerate() {
                    let jinv = group.inverse_class(j as u32) as usize;
                    let rowval = table.rows()[row].values[jinv].reduce_mod(z, l);
                    let term = modular::mul_mod(
                        modular::mul_mod(class.size() as u64 % l, chibar[j], l),
                        rowval,
                        l,
                    );
                    acc = (acc + term) % l;
                }
                modular::mul_mod(n_inv, acc, l)
            })
            .collect()
    };

    // one residue vector per prime; order-independent by construction
    #[cfg(feature = "parallel")]
    let per_prime: Vec<Vec<u64>> = primes.par_iter().map(residues_for).collect();
    #[cfg(not(feature = "parallel"))]
    let per_prime: Vec<Vec<u64>> = primes.iter().map(residues_for).collect();

    let multiplicities: Vec<BigInt> = (0..c)
        .map(|row| {
            let residues: Vec<(u64, u64)> =
                per_prime.iter().zip(&primes).map(|(v, &l)| (v[row], l)).collect();
            modular::crt_signed(&residues)
        })
        .collect();

    let vc = VirtualCharacter::new(table, multiplicities);
    let recon = vc.reconstruct();
    for (j, value) in recon.iter().enumerate() {
        let target = Cyc::from_int(e as usize, chi.values()[j].clone());
        if !value.eq_mod(&target, table.phi()) {
            return Err(Error::NonIntegralMultiplicity);
        }
    }
    Ok(vc)
}

/// Witness that χ^r = p·χ_W for an honest representation W: the
/// decomposition of the certificate polynomial applied to the
/// permutation character, with all multiplicities nonnegative.
#[derive(Debug, Clone)]
pub struct AbsorptionCertificate {
    pub r: usize,
    pub w_alpha: VirtualCharacter,
    pub prime: u64,
}

pub fn absorption_certificate(z: &GSet, p: u64) -> Result<AbsorptionCertificate> {
    if !modular::is_prime(p) {
        return Err(Error::Parse(format!("{p} is not prime")));
    }
    let alpha = alpha_certificate(z, p)?;
    let chi = perm_character(z, p);
    let alpha_values = alpha.p.eval_class_function(&chi);
    let table = Arc::new(character_table(z.group())?);
    let w_alpha = decompose(&table, &alpha_values)?;
    if !w_alpha.is_genuine() {
        // cannot happen: χ^r/p is a difference made of permutation
        // characters that the certificate construction keeps effective
        return Err(Error::NegativeMultiplicity(format!(
            "decomposition of the certificate class function: {:?}",
            w_alpha.multiplicities()
        )));
    }
    let cert = AbsorptionCertificate { r: alpha.r, w_alpha, prime: p };
    if !verify_absorption(z, &cert) {
        return Err(Error::Internal("absorption certificate failed verification".into()));
    }
    Ok(cert)
}

/// Checks p·χ_W = χ^r pointwise, exactly.
pub fn verify_absorption_values(z: &GSet, cert: &AbsorptionCertificate) -> bool {
    let table = cert.w_alpha.table();
    let e = table.exponent() as usize;
    let chi_r = perm_character(z, cert.prime).pow(cert.r);
    let recon = cert.w_alpha.reconstruct();
    let p = BigInt::from(cert.prime);
    recon.iter().enumerate().all(|(j, value)| {
        value.scale(&p).eq_mod(&Cyc::from_int(e, chi_r.values()[j].clone()), table.phi())
    })
}

/// Checks the dimension identity p·dim W = p^(r·|Z|), exactly.
pub fn verify_absorption_dimension(z: &GSet, cert: &AbsorptionCertificate) -> bool {
    let p = BigInt::from(cert.prime);
    &p * cert.w_alpha.dimension() == p.pow((cert.r * z.size()) as u32)
}

pub fn verify_absorption(z: &GSet, cert: &AbsorptionCertificate) -> bool {
    verify_absorption_values(z, cert) && verify_absorption_dimension(z, cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};
    use crate::gset::{build_gset, GSetSpec};
    use proptest::prelude::*;

    fn group(text: &str) -> Arc<PermGroup> {
        Arc::new(build_group(&GroupSpec::parse(text).unwrap()).unwrap())
    }

    fn table(text: &str) -> Arc<CharTable> {
        Arc::new(character_table(&group(text)).unwrap())
    }

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn cyclic_two_table() {
        let t = table("cyclic 2");
        assert_eq!(t.degrees(), vec![1, 1]);
        // trivial row first, then the sign character (1, −1)
        let phi = t.phi();
        let one = Cyc::from_int(2, BigInt::one());
        let minus_one = Cyc::from_int(2, BigInt::from(-1));
        assert!(t.rows()[0].values[0].eq_mod(&one, phi));
        assert!(t.rows()[0].values[1].eq_mod(&one, phi));
        assert!(t.rows()[1].values[0].eq_mod(&one, phi));
        assert!(t.rows()[1].values[1].eq_mod(&minus_one, phi));
    }

    #[test]
    fn cyclic_three_table() {
        let t = table("cyclic 3");
        assert_eq!(t.degrees(), vec![1, 1, 1]);
        // the three homomorphisms into the cube roots of unity
        let phi = t.phi();
        for value in &t.rows()[0].values {
            assert!(value.eq_mod(&Cyc::from_int(3, BigInt::one()), phi));
        }
        // nontrivial rows take the two primitive roots at the generator class
        let zeta = Cyc::root(3, 1, BigInt::one());
        let zeta2 = Cyc::root(3, 2, BigInt::one());
        assert!(t.rows()[1].values[1].eq_mod(&zeta, phi));
        assert!(t.rows()[2].values[1].eq_mod(&zeta2, phi));
        // and each row is multiplicative: value at g² is the square
        for row in &t.rows()[1..] {
            let sq = row.values[1].mul(&row.values[1]);
            assert!(sq.eq_mod(&row.values[2], phi));
        }
    }

    #[test]
    fn symmetric_three_degrees() {
        let t = table("symmetric 3");
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        assert!(t.verify_row_orthogonality());
        assert!(t.verify_column_orthogonality());
    }

    #[test]
    fn quaternion_degrees() {
        // Q8 as the left-regular permutation representation
        let t = table("perm 8 {(0 2 1 3)(4 6 5 7), (0 4 1 5)(2 7 3 6)}");
        assert_eq!(t.group().order(), 8);
        assert_eq!(t.degrees(), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn trivial_group_table() {
        let t = table("cyclic 1");
        assert_eq!(t.degrees(), vec![1]);
    }

    #[test]
    fn known_degree_lists() {
        assert_eq!(table("symmetric 4").degrees(), vec![1, 1, 2, 3, 3]);
        assert_eq!(table("perm 4 {(0 1 2), (0 1)(2 3)}").degrees(), vec![1, 1, 1, 3]);
        assert_eq!(table("dihedral 4").degrees(), vec![1, 1, 1, 1, 2]);
        assert_eq!(table("dihedral 5").degrees(), vec![1, 1, 2, 2]);
        assert_eq!(table("cyclic 12").degrees(), vec![1; 12]);
    }

    #[test]
    fn decompose_huge_values_through_crt() {
        // χ^16 over S4 regular: values around 24^16 ≈ 10^22, far past
        // one modular word, so several CRT primes are in play
        let g = group("symmetric 4");
        let z = build_gset(&g, &GSetSpec::Regular).unwrap();
        let t = Arc::new(character_table(&g).unwrap());
        let chi = perm_character(&z, 2).pow(16);
        let vc = decompose(&t, &chi).unwrap();
        assert!(vc.is_genuine());
        let recon: Vec<BigInt> =
            vc.reconstruct().iter().map(|v| v.as_integer(t.phi()).unwrap()).collect();
        assert_eq!(recon, chi.values());
    }

    #[test]
    fn decompose_examples() {
        let t = table("cyclic 2");
        let g = t.group().clone();
        let chi = ClassFunction::new(&g, ints(&[4, 2]));
        let vc = decompose(&t, &chi).unwrap();
        assert_eq!(vc.multiplicities(), &ints(&[3, 1])[..]);

        let one = ClassFunction::new(&g, ints(&[1, 1]));
        assert_eq!(decompose(&t, &one).unwrap().multiplicities(), &ints(&[1, 0])[..]);

        let chi_sq = ClassFunction::new(&g, ints(&[16, 4]));
        assert_eq!(decompose(&t, &chi_sq).unwrap().multiplicities(), &ints(&[10, 6])[..]);
    }

    #[test]
    fn decompose_rejects_non_virtual() {
        let t = table("cyclic 2");
        let g = t.group().clone();
        let not_virtual = ClassFunction::new(&g, ints(&[1, 0]));
        assert!(matches!(
            decompose(&t, &not_virtual),
            Err(Error::NonIntegralMultiplicity)
        ));
    }

    #[test]
    fn absorption_examples() {
        let g = group("cyclic 2");
        let z = build_gset(&g, &GSetSpec::Regular).unwrap();

        let cert2 = absorption_certificate(&z, 2).unwrap();
        assert_eq!(cert2.r, 2);
        assert_eq!(cert2.w_alpha.multiplicities(), &ints(&[5, 3])[..]);
        assert_eq!(cert2.w_alpha.dimension(), BigInt::from(8));

        let cert3 = absorption_certificate(&z, 3).unwrap();
        assert_eq!(cert3.r, 2);
        assert_eq!(cert3.w_alpha.multiplicities(), &ints(&[15, 12])[..]);

        // trivial group, one-point set
        let trivial = group("cyclic 1");
        let z1 = build_gset(&trivial, &GSetSpec::Trivial(1)).unwrap();
        let cert = absorption_certificate(&z1, 2).unwrap();
        assert_eq!(cert.r, 1);
        assert_eq!(cert.w_alpha.dimension(), BigInt::one());

        assert!(matches!(absorption_certificate(&z, 4), Err(Error::Parse(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn decompose_round_trip(
            gname in prop::sample::select(vec!["cyclic 2", "symmetric 3", "dihedral 4"]),
            mults in prop::collection::vec(-4i64..=4, 8),
        ) {
            // these groups have rational tables, so reconstructed
            // virtual characters are integer class functions
            let t = table(gname);
            let m: Vec<BigInt> = (0..t.rows().len()).map(|i| BigInt::from(mults[i])).collect();
            let vc = VirtualCharacter::new(&t, m.clone());
            let values: Vec<BigInt> = vc
                .reconstruct()
                .iter()
                .map(|v| v.as_integer(t.phi()).expect("rational table"))
                .collect();
            let chi = ClassFunction::new(t.group(), values);
            let back = decompose(&t, &chi).unwrap();
            prop_assert_eq!(back.multiplicities(), &m[..]);
        }

        #[test]
        fn decompose_is_multiplicative(
            gname in prop::sample::select(vec!["cyclic 2", "symmetric 3"]),
            ma in prop::collection::vec(-2i64..=2, 3),
            mb in prop::collection::vec(-2i64..=2, 3),
        ) {
            let t = table(gname);
            let c = t.rows().len();
            let build = |m: &[i64]| {
                let vc = VirtualCharacter::new(&t, m.iter().map(|&x| BigInt::from(x)).collect());
                let values: Vec<BigInt> = vc
                    .reconstruct()
                    .iter()
                    .map(|v| v.as_integer(t.phi()).expect("rational table"))
                    .collect();
                ClassFunction::new(t.group(), values)
            };
            let chi = build(&ma[..c]);
            let psi = build(&mb[..c]);
            // the product of two virtual characters decomposes integrally,
            // and reconstruction recovers the pointwise product
            let product = chi.pointwise_mul(&psi);
            let vc = decompose(&t, &product).unwrap();
            let recon: Vec<BigInt> = vc
                .reconstruct()
                .iter()
                .map(|v| v.as_integer(t.phi()).unwrap())
                .collect();
            prop_assert_eq!(recon, product.values().to_vec());
        }
    }
}
