//! Permutations of {0, …, n−1} stored as image arrays.

use crate::error::{Error, Result};
use std::fmt;

/// A permutation given by its image array: `p[x]` is where `x` goes.
/// The derived `Ord` is lexicographic on images, which makes the
/// identity the minimum among permutations of a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// Validates that `images` is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if (x as usize) >= n || seen[x as usize] {
                return Err(Error::Parse(format!(
                    "not a permutation of 0..{}: image list {:?}",
                    n, images
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Function composition: `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn order(&self) -> u64 {
        let mut ord = 1u64;
        let mut seen = vec![false; self.0.len()];
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let mut count = 0;
        let mut seen = vec![false; self.0.len()];
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
            }
        }
        count
    }

    pub fn fixed_point_count(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &x)| i as u32 == x).count()
    }

    /// Extends this permutation by the identity on `extra` new points.
    pub fn extend(&self, extra: usize) -> Perm {
        let n = self.0.len() as u32;
        let mut v = self.0.clone();
        v.extend(n..n + extra as u32);
        Perm(v)
    }

    /// Shifts all points up by `offset` inside a larger degree `total`,
    /// acting as the identity below the offset.
    pub fn shift(&self, offset: usize, total: usize) -> Perm {
        let mut v: Vec<u32> = (0..total as u32).collect();
        for (i, &x) in self.0.iter().enumerate() {
            v[i + offset] = x + offset as u32;
        }
        Perm(v)
    }

    /// Parses products of cycles like `(0 1 2)(3 4)` on 0-based points.
    /// An empty string denotes the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut chars = text.chars().peekable();
        let mut any = false;
        loop {
            while chars.peek().is_some_and(|c| c.is_whitespace()) {
                chars.next();
            }
            match chars.peek() {
                None => break,
                Some('(') => {
                    chars.next();
                }
                Some(c) => {
                    return Err(Error::Parse(format!("expected '(' in cycle notation, found '{c}'")))
                }
            }
            any = true;
            let mut cycle: Vec<u32> = vec![];
            loop {
                while chars.peek().is_some_and(|c| c.is_whitespace()) {
                    chars.next();
                }
                match chars.peek() {
                    Some(')') => {
                        chars.next();
                        break;
                    }
                    Some(c) if c.is_ascii_digit() => {
                        let mut n = 0u64;
                        while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                            n = n * 10 + chars.next().unwrap().to_digit(10).unwrap() as u64;
                            if n >= degree as u64 {
                                return Err(Error::Parse(format!(
                                    "point {n} out of range for degree {degree}"
                                )));
                            }
                        }
                        cycle.push(n as u32);
                    }
                    Some(c) => {
                        return Err(Error::Parse(format!("unexpected '{c}' inside cycle")));
                    }
                    None => return Err(Error::Parse("unterminated cycle".into())),
                }
            }
            if cycle.is_empty() {
                continue;
            }
            let mut in_cycle = std::collections::HashSet::new();
            for &p in &cycle {
                if !in_cycle.insert(p) {
                    return Err(Error::Parse(format!("point {p} repeated within a cycle")));
                }
            }
            // Apply the cycle on the left of what we have so far.
            let mut cycle_perm: Vec<u32> = (0..degree as u32).collect();
            for w in 0..cycle.len() {
                cycle_perm[cycle[w] as usize] = cycle[(w + 1) % cycle.len()];
            }
            images = images.iter().map(|&x| cycle_perm[x as usize]).collect();
        }
        if !any && !text.trim().is_empty() {
            return Err(Error::Parse(format!("cannot parse cycles from {text:?}")));
        }
        Perm::from_images(images)
    }
}

impl fmt::Display for Perm {
    /// Cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut wrote = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}
