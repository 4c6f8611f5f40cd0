//! Cyclotomic integers encoded as multiplicity vectors over all e-th
//! roots of unity: coefficient j is the multiplicity of ζ_e^j. This is
//! the natural encoding for character values, which are sums of
//! eigenvalue roots; products are cyclic convolutions, and equality in
//! ℤ[ζ_e] is tested after reduction modulo the e-th cyclotomic
//! polynomial.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Element of ℤ[x]/(x^e − 1); `coeffs.len() == e ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cyc {
    coeffs: Vec<BigInt>,
}

impl Cyc {
    pub fn zero(e: usize) -> Self {
        assert!(e >= 1);
        Cyc { coeffs: vec![BigInt::zero(); e] }
    }

    pub fn from_int(e: usize, value: BigInt) -> Self {
        let mut c = Cyc::zero(e);
        c.coeffs[0] = value;
        c
    }

    /// ζ_e^j with multiplicity `m`.
    pub fn root(e: usize, j: usize, m: BigInt) -> Self {
        let mut c = Cyc::zero(e);
        c.coeffs[j % e] = m;
        c
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty());
        Cyc { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        assert_eq!(self.order(), other.order());
        Cyc {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        assert_eq!(self.order(), other.order());
        Cyc {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    /// Cyclic convolution (multiplication with x^e = 1).
    pub fn mul(&self, other: &Cyc) -> Cyc {
        let e = self.order();
        assert_eq!(e, other.order());
        let mut out = vec![BigInt::zero(); e];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[(i + j) % e] += a * b;
            }
        }
        Cyc { coeffs: out }
    }

    pub fn scale(&self, c: &BigInt) -> Cyc {
        Cyc { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Complex conjugation ζ ↦ ζ^(−1): permutes the multiplicities.
    pub fn conj(&self) -> Cyc {
        let e = self.order();
        let mut out = vec![BigInt::zero(); e];
        for (j, a) in self.coeffs.iter().enumerate() {
            out[(e - j) % e] = a.clone();
        }
        Cyc { coeffs: out }
    }

    /// Value in F_ℓ under ζ_e ↦ z (z an e-th root of unity mod ℓ).
    pub fn reduce_mod(&self, z: u64, l: u64) -> u64 {
        let e = self.order() as u64;
        let mut acc: u64 = 0;
        let mut zj = 1u64;
        for a in &self.coeffs {
            let mb = BigInt::from(l);
            let r = u64::try_from(((a % &mb) + &mb) % &mb).expect("residue fits");
            acc = (acc + crate::modular::mul_mod(r, zj, l)) % l;
            zj = crate::modular::mul_mod(zj, z % l, l);
        }
        debug_assert_eq!(crate::modular::pow_mod(z, e, l), 1);
        acc
    }

    /// Remainder modulo Φ (monic, ascending coefficients), i.e. the
    /// canonical residue in ℤ[ζ_e].
    pub fn residue_mod(&self, phi: &[BigInt]) -> Vec<BigInt> {
        let mut rem = self.coeffs.clone();
        let d = phi.len() - 1;
        debug_assert!(phi[d].is_one(), "cyclotomic polynomial is monic");
        for i in (d..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let f = rem[i].clone();
            for (j, c) in phi.iter().enumerate() {
                let t = &f * c;
                rem[i - d + j] -= t;
            }
        }
        rem.truncate(d);
        rem
    }

    pub fn is_zero_mod(&self, phi: &[BigInt]) -> bool {
        self.residue_mod(phi).iter().all(BigInt::is_zero)
    }

    pub fn eq_mod(&self, other: &Cyc, phi: &[BigInt]) -> bool {
        self.sub(other).is_zero_mod(phi)
    }

    /// The rational integer this value equals, if it equals one.
    pub fn as_integer(&self, phi: &[BigInt]) -> Option<BigInt> {
        let r = self.residue_mod(phi);
        r[1..].iter().all(BigInt::is_zero).then(|| r[0].clone())
    }
}

impl fmt::Display for Cyc {
    /// Constants print as integers, other values as sums `m·w^j` where
    /// `w` stands for the primitive e-th root of unity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero: Vec<(usize, &BigInt)> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if nonzero.is_empty() {
            return write!(f, "0");
        }
        if nonzero.len() == 1 && nonzero[0].0 == 0 {
            return write!(f, "{}", nonzero[0].1);
        }
        let mut parts = vec![];
        for (j, c) in nonzero {
            let base = if j == 0 {
                c.to_string()
            } else if c.is_one() {
                format!("w^{j}")
            } else {
                format!("{c}*w^{j}")
            };
            parts.push(base);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// The e-th cyclotomic polynomial, monic, coefficients ascending:
/// Φ_e = (x^e − 1) / ∏_{d|e, d<e} Φ_d.
pub fn cyclotomic_polynomial(e: usize) -> Vec<BigInt> {
    assert!(e >= 1);
    if e == 1 {
        return vec![-BigInt::one(), BigInt::one()];
    }
    let mut num = vec![BigInt::zero(); e + 1];
    num[0] = -BigInt::one();
    num[e] = BigInt::one();
    let mut quotient = num;
    for d in 1..e {
        if e.is_multiple_of(d) {
            quotient = poly_div_exact(&quotient, &cyclotomic_polynomial(d));
        }
    }
    quotient
}

/// Exact division of polynomials over ℤ with monic divisor.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    assert!(rem.len() > dd);
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let f = rem[i].clone();
        if f.is_zero() {
            continue;
        }
        quot[i - dd] = f.clone();
        for (j, c) in den.iter().enumerate() {
            let t = &f * c;
            rem[i - dd + j] -= t;
        }
    }
    assert!(rem.iter().all(BigInt::is_zero), "division not exact");
    quot
}
