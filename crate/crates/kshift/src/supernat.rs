//! Supernatural numbers: formal products ∏ p^(n_p) with exponents in
//! {0, 1, …, ∞} and finite support.

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent of one prime; `Infinite` absorbs under addition and is the
/// maximum of the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    fn plus(self, other: Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
            _ => Exponent::Infinite,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(k) => write!(f, "{k}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

/// A supernatural number. Only primes with nonzero exponent are stored,
/// keyed in ascending order, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Supernatural {
    factors: BTreeMap<u64, Exponent>,
}

impl Supernatural {
    /// The supernatural number 1 (empty product).
    pub fn one() -> Self {
        Supernatural::default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn prime_power(p: u64, e: Exponent) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        let mut factors = BTreeMap::new();
        if e != Exponent::Finite(0) {
            factors.insert(p, e);
        }
        Ok(Supernatural { factors })
    }

    /// Factors an ordinary positive integer.
    pub fn from_u64(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("0 is not a supernatural number".into()));
        }
        let mut factors = BTreeMap::new();
        for (p, k) in factorize(n)? {
            factors.insert(p, Exponent::Finite(k));
        }
        Ok(Supernatural { factors })
    }

    /// Grammar: `INT('^'(INT|'inf'))?('*' …)*`, e.g. `2^inf*3^2`,
    /// `6^inf`, `12`, `1`. Composite bases are factored.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty supernatural literal".into()));
        }
        let mut result = Supernatural::one();
        for part in text.split('*') {
            let part = part.trim();
            let (base_str, exp) = match part.split_once('^') {
                None => (part, Exponent::Finite(1)),
                Some((b, e)) => {
                    let e = e.trim();
                    if e == "inf" {
                        (b.trim(), Exponent::Infinite)
                    } else {
                        let k: u32 = e
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
                        (b.trim(), Exponent::Finite(k))
                    }
                }
            };
            let base: u64 = base_str
                .parse()
                .map_err(|_| Error::Parse(format!("bad base {base_str:?}")))?;
            if base == 0 {
                return Err(Error::Parse("base 0 is not allowed".into()));
            }
            if exp == Exponent::Finite(0) || base == 1 {
                continue;
            }
            for (p, k) in factorize(base)? {
                let contribution = match exp {
                    Exponent::Finite(e) => Exponent::Finite(k * e),
                    Exponent::Infinite => Exponent::Infinite,
                };
                result = result.product(&Supernatural {
                    factors: BTreeMap::from([(p, contribution)]),
                });
            }
        }
        Ok(result)
    }

    pub fn exponent_of(&self, p: u64) -> Exponent {
        self.factors.get(&p).copied().unwrap_or(Exponent::Finite(0))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn factors(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn divides(&self, other: &Supernatural) -> bool {
        self.factors.iter().all(|(p, e)| *e <= other.exponent_of(*p))
    }

    /// Pointwise minimum of exponents.
    pub fn gcd(&self, other: &Supernatural) -> Supernatural {
        let mut factors = BTreeMap::new();
        for (&p, &e) in &self.factors {
            let m = e.min(other.exponent_of(p));
            if m != Exponent::Finite(0) {
                factors.insert(p, m);
            }
        }
        Supernatural { factors }
    }

    /// Pointwise maximum of exponents.
    pub fn lcm(&self, other: &Supernatural) -> Supernatural {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            let cur = factors.get(&p).copied().unwrap_or(Exponent::Finite(0));
            factors.insert(p, cur.max(e));
        }
        Supernatural { factors }
    }

    /// Pointwise sum of exponents, with ∞ absorbing.
    pub fn product(&self, other: &Supernatural) -> Supernatural {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            let cur = factors.get(&p).copied().unwrap_or(Exponent::Finite(0));
            factors.insert(p, cur.plus(e));
        }
        Supernatural { factors }
    }

    /// True when every stored exponent is ∞ (vacuously true for 1).
    pub fn is_infinite_type(&self) -> bool {
        self.factors.values().all(|&e| e == Exponent::Infinite)
    }

    /// Sends every stored exponent to ∞.
    pub fn saturate(&self) -> Supernatural {
        Supernatural {
            factors: self.factors.keys().map(|&p| (p, Exponent::Infinite)).collect(),
        }
    }

    /// Keeps the primes of `self` that do not divide `other`. For
    /// infinite-type inputs this is the exponent pattern of the
    /// quotient ℚ_(self·other)/ℚ_other in normal form.
    pub fn without_primes_of(&self, other: &Supernatural) -> Supernatural {
        Supernatural {
            factors: self
                .factors
                .iter()
                .filter(|(p, _)| other.exponent_of(**p) == Exponent::Finite(0))
                .map(|(&p, &e)| (p, e))
                .collect(),
        }
    }
}

impl fmt::Display for Supernatural {
    /// Canonical form `p1^e1*p2^e2*…` with primes ascending, `inf` for
    /// ∞; the empty product prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.factors.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn factorize(mut n: u64) -> Result<Vec<(u64, u32)>> {
    if n > (1 << 40) {
        return Err(Error::Parse(format!("base {n} too large to factor")));
    }
    let mut out = vec![];
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}
