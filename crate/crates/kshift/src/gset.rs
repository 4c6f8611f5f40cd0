//! Finite G-sets: trivial sets, the regular action, coset spaces and
//! disjoint unions, with the per-element action table verified to be a
//! homomorphism at construction.

use crate::error::{Error, Result};
use crate::group::{PermGroup, Tokens};
use crate::perm::Perm;
use std::sync::Arc;

/// G-set described by the spec grammar:
///
/// ```text
/// spec := "trivial" INT | "regular"
///       | "coset" "{" cycles ("," cycles)* "}" | "union" spec spec
/// ```
///
/// Coset generators are cycle words in the degree of the acting group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GSetSpec {
    Trivial(usize),
    Regular,
    Coset(Vec<String>),
    Union(Box<GSetSpec>, Box<GSetSpec>),
}

impl GSetSpec {
    pub fn parse(text: &str) -> Result<GSetSpec> {
        let mut toks = Tokens::new(text);
        let spec = parse_gset_spec(&mut toks)?;
        toks.expect_end()?;
        Ok(spec)
    }
}

fn parse_gset_spec(toks: &mut Tokens) -> Result<GSetSpec> {
    if toks.eat('(') {
        let inner = parse_gset_spec(toks)?;
        toks.expect(')')?;
        return Ok(inner);
    }
    let word = toks.word()?;
    match word {
        "trivial" => Ok(GSetSpec::Trivial(toks.integer()?)),
        "regular" => Ok(GSetSpec::Regular),
        "coset" => {
            let raw = toks.raw_braces()?;
            Ok(GSetSpec::Coset(raw.split(',').map(|s| s.trim().to_string()).collect()))
        }
        "union" => {
            let a = parse_gset_spec(toks)?;
            let b = parse_gset_spec(toks)?;
            Ok(GSetSpec::Union(Box::new(a), Box::new(b)))
        }
        other => Err(Error::Parse(format!("unknown G-set kind {other:?}"))),
    }
}

/// A finite set with a G-action. `action[g]` is the permutation of the
/// set induced by the group element with index `g`; the full table is
/// computed and checked at construction, after which the value is
/// immutable.
#[derive(Debug)]
pub struct GSet {
    group: Arc<PermGroup>,
    size: usize,
    action: Vec<Perm>,
}

pub fn build_gset(group: &Arc<PermGroup>, spec: &GSetSpec) -> Result<GSet> {
    let generator_action: Vec<Perm> = match spec {
        GSetSpec::Trivial(n) => {
            group.generators().iter().map(|_| Perm::identity(*n)).collect()
        }
        GSetSpec::Regular => {
            let n = group.order();
            group
                .generators()
                .iter()
                .map(|g| {
                    let gi = group.element_index(g).expect("generator not indexed");
                    let images: Vec<u32> =
                        (0..n as u32).map(|x| group.multiply(gi, x)).collect();
                    Perm::from_images(images)
                })
                .collect::<Result<_>>()?
        }
        GSetSpec::Coset(gen_words) => {
            let sub_gens: Vec<u32> = gen_words
                .iter()
                .map(|w| {
                    let p = Perm::parse_cycles(group.degree(), w)?;
                    group
                        .element_index(&p)
                        .ok_or_else(|| Error::NotInGroup(format!("subgroup generator {p}")))
                })
                .collect::<Result<_>>()?;
            let subgroup = group.subgroup_closure(&sub_gens);
            return coset_gset(group, &subgroup);
        }
        GSetSpec::Union(a, b) => {
            let za = build_gset(group, a)?;
            let zb = build_gset(group, b)?;
            return Ok(union_gset(&za, &zb));
        }
    };
    GSet::from_generator_action(group, generator_action)
}

fn coset_gset(group: &Arc<PermGroup>, subgroup: &[u32]) -> Result<GSet> {
    let n = group.order();
    // Left cosets xH, represented by their minimal member; scanning
    // elements in ascending index order makes representatives canonical.
    let mut coset_of = vec![u32::MAX; n];
    let mut count = 0u32;
    for x in 0..n as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        for &h in subgroup {
            coset_of[group.multiply(x, h) as usize] = count;
        }
        count += 1;
    }
    let generator_action = group
        .generators()
        .iter()
        .map(|g| {
            let gi = group.element_index(g).expect("generator not indexed");
            let mut images = vec![u32::MAX; count as usize];
            for x in 0..n as u32 {
                let src = coset_of[x as usize];
                let dst = coset_of[group.multiply(gi, x) as usize];
                if images[src as usize] == u32::MAX {
                    images[src as usize] = dst;
                } else if images[src as usize] != dst {
                    return Err(Error::Internal("coset action ill-defined".into()));
                }
            }
            Perm::from_images(images)
        })
        .collect::<Result<_>>()?;
    GSet::from_generator_action(group, generator_action)
}

fn union_gset(a: &GSet, b: &GSet) -> GSet {
    let total = a.size + b.size;
    let action = a
        .action
        .iter()
        .zip(&b.action)
        .map(|(pa, pb)| {
            let mut images: Vec<u32> = pa.images().to_vec();
            images.extend(pb.images().iter().map(|&x| x + a.size as u32));
            Perm::from_images(images).expect("union of bijections")
        })
        .collect();
    GSet { group: Arc::clone(&a.group), size: total, action }
}

impl GSet {
    /// Builds the full action table from per-generator permutations and
    /// verifies that the assignment extends to a homomorphism by
    /// checking every defining product over the element list.
    pub fn from_generator_action(
        group: &Arc<PermGroup>,
        generator_action: Vec<Perm>,
    ) -> Result<GSet> {
        if generator_action.len() != group.generators().len() {
            return Err(Error::Internal("one action permutation per generator required".into()));
        }
        let size = generator_action.first().map_or(0, Perm::degree);
        if generator_action.iter().any(|p| p.degree() != size) {
            return Err(Error::Internal("generator actions of unequal size".into()));
        }
        let gen_indices: Vec<u32> = group
            .generators()
            .iter()
            .map(|g| group.element_index(g).expect("generator not indexed"))
            .collect();

        let n = group.order();
        let mut action: Vec<Option<Perm>> = vec![None; n];
        action[0] = Some(Perm::identity(size));
        let mut queue = vec![0u32];
        while let Some(x) = queue.pop() {
            let phi_x = action[x as usize].clone().expect("visited");
            for (g, phi_g) in gen_indices.iter().zip(&generator_action) {
                let y = group.multiply(*g, x);
                let phi_y = phi_g.compose(&phi_x);
                match &action[y as usize] {
                    None => {
                        action[y as usize] = Some(phi_y);
                        queue.push(y);
                    }
                    Some(existing) => {
                        if *existing != phi_y {
                            return Err(Error::Internal(
                                "generator assignment is not a homomorphism".into(),
                            ));
                        }
                    }
                }
            }
        }
        // Re-check all products now that every φ(g) is known: catches
        // relations not on the breadth-first tree.
        let action: Vec<Perm> = action.into_iter().map(|p| p.expect("group connected")).collect();
        for (g, phi_g) in gen_indices.iter().zip(&generator_action) {
            for x in 0..n as u32 {
                let y = group.multiply(*g, x);
                if action[y as usize] != phi_g.compose(&action[x as usize]) {
                    return Err(Error::Internal(
                        "generator assignment is not a homomorphism".into(),
                    ));
                }
            }
        }
        Ok(GSet { group: Arc::clone(group), size, action })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The permutation of the set induced by group element `g`.
    pub fn action(&self, g: u32) -> &Perm {
        &self.action[g as usize]
    }

    /// Number of orbits of the cyclic subgroup ⟨g⟩ on this set, i.e.
    /// the number of cycles of the acting permutation.
    pub fn cyclic_orbit_count(&self, g: u32) -> Result<usize> {
        if (g as usize) >= self.group.order() {
            return Err(Error::NotInGroup(format!("element index {g} out of range")));
        }
        Ok(self.action[g as usize].cycle_count())
    }

    pub fn fixed_point_count(&self, g: u32) -> usize {
        self.action[g as usize].fixed_point_count()
    }

    /// Number of G-orbits of the whole group on this set.
    pub fn orbit_count(&self) -> usize {
        let mut seen = vec![false; self.size];
        let mut orbits = 0;
        for start in 0..self.size as u32 {
            if seen[start as usize] {
                continue;
            }
            orbits += 1;
            let mut queue = vec![start];
            seen[start as usize] = true;
            while let Some(x) = queue.pop() {
                for p in &self.action {
                    let y = p.apply(x);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        queue.push(y);
                    }
                }
            }
        }
        orbits
    }
}
