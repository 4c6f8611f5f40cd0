//! Finite permutation groups: construction from a small spec grammar,
//! element enumeration by closure, conjugacy classes.

use crate::error::{Error, Result};
use crate::perm::Perm;
use std::collections::HashMap;
use std::fmt;

pub const DEFAULT_ELEMENT_BUDGET: usize = 1_000_000;

/// Group described by the spec grammar:
///
/// ```text
/// spec := "cyclic" INT | "symmetric" INT | "dihedral" INT
///       | "product" spec spec | "perm" INT "{" cycles ("," cycles)* "}"
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    Dihedral(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Explicit { degree: usize, generators: Vec<Perm> },
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let mut toks = Tokens::new(text);
        let spec = parse_spec(&mut toks)?;
        toks.expect_end()?;
        Ok(spec)
    }

    /// Degree of the permutation representation this spec compiles to.
    pub fn degree(&self) -> usize {
        match self {
            GroupSpec::Cyclic(k) | GroupSpec::Symmetric(k) | GroupSpec::Dihedral(k) => *k,
            GroupSpec::Product(a, b) => a.degree() + b.degree(),
            GroupSpec::Explicit { degree, .. } => *degree,
        }
    }

    /// Compiles named families down to explicit generators.
    pub fn generators(&self) -> Result<Vec<Perm>> {
        match self {
            GroupSpec::Cyclic(k) => {
                if *k == 0 {
                    return Err(Error::Parse("cyclic needs a positive order".into()));
                }
                let cycle: Vec<u32> = (0..*k as u32).map(|x| (x + 1) % *k as u32).collect();
                Ok(vec![Perm::from_images(cycle)?])
            }
            GroupSpec::Symmetric(k) => {
                if *k == 0 {
                    return Err(Error::Parse("symmetric needs a positive degree".into()));
                }
                if *k == 1 {
                    return Ok(vec![Perm::identity(1)]);
                }
                let cycle: Vec<u32> = (0..*k as u32).map(|x| (x + 1) % *k as u32).collect();
                let mut swap: Vec<u32> = (0..*k as u32).collect();
                swap.swap(0, 1);
                Ok(vec![Perm::from_images(swap)?, Perm::from_images(cycle)?])
            }
            GroupSpec::Dihedral(k) => {
                if *k < 3 {
                    return Err(Error::Parse(
                        "dihedral needs at least 3 points (use cyclic 2 for order 2)".into(),
                    ));
                }
                let rot: Vec<u32> = (0..*k as u32).map(|x| (x + 1) % *k as u32).collect();
                let refl: Vec<u32> = (0..*k as u32).map(|x| (*k as u32 - x) % *k as u32).collect();
                Ok(vec![Perm::from_images(rot)?, Perm::from_images(refl)?])
            }
            GroupSpec::Product(a, b) => {
                let da = a.degree();
                let db = b.degree();
                let mut gens: Vec<Perm> =
                    a.generators()?.iter().map(|g| g.extend(db)).collect();
                gens.extend(b.generators()?.iter().map(|g| g.shift(da, da + db)));
                Ok(gens)
            }
            GroupSpec::Explicit { generators, .. } => Ok(generators.clone()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "cyclic {k}"),
            GroupSpec::Symmetric(k) => write!(f, "symmetric {k}"),
            GroupSpec::Dihedral(k) => write!(f, "dihedral {k}"),
            GroupSpec::Product(a, b) => write!(f, "product ({a}) ({b})"),
            GroupSpec::Explicit { degree, generators } => {
                let gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
                write!(f, "perm {degree} {{{}}}", gens.join(", "))
            }
        }
    }
}

/// One conjugacy class: the representative is the member minimal in the
/// lexicographic order on image arrays.
#[derive(Debug, Clone)]
pub struct ConjClass {
    pub representative: u32,
    pub members: Vec<u32>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A finite permutation group with its full element list (sorted
/// lexicographically, so index 0 is the identity) and conjugacy
/// classes (identity class first, then by representative order).
/// Immutable after construction.
#[derive(Debug)]
pub struct PermGroup {
    spec: GroupSpec,
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    inverses: Vec<u32>,
    orders: Vec<u64>,
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
    exponent: u64,
}

impl PartialEq for PermGroup {
    /// Same underlying permutation group: degree and element set agree.
    /// All derived data (classes, orders) is determined by these.
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

pub fn build_group(spec: &GroupSpec) -> Result<PermGroup> {
    build_group_with_budget(spec, DEFAULT_ELEMENT_BUDGET)
}

pub fn build_group_with_budget(spec: &GroupSpec, budget: usize) -> Result<PermGroup> {
    let degree = spec.degree();
    if degree == 0 {
        return Err(Error::Parse("group must act on at least one point".into()));
    }
    let mut generators = spec.generators()?;
    for g in &generators {
        if g.degree() != degree {
            return Err(Error::Internal("generator degree mismatch".into()));
        }
    }
    generators.dedup();

    // Breadth-first closure under left multiplication by generators.
    let mut elements: Vec<Perm> = vec![Perm::identity(degree)];
    let mut seen: HashMap<Perm, ()> = HashMap::new();
    seen.insert(elements[0].clone(), ());
    let mut frontier = 0;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        frontier += 1;
        for g in &generators {
            let next = g.compose(&current);
            if !seen.contains_key(&next) {
                if elements.len() >= budget {
                    return Err(Error::BudgetExceeded(format!(
                        "group element budget {budget} exceeded"
                    )));
                }
                seen.insert(next.clone(), ());
                elements.push(next);
            }
        }
    }
    elements.sort();

    let index: HashMap<Perm, u32> =
        elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
    let inverses: Vec<u32> = elements.iter().map(|p| index[&p.inverse()]).collect();
    let orders: Vec<u64> = elements.iter().map(Perm::order).collect();
    let exponent = orders.iter().fold(1u64, |acc, &o| num_integer::lcm(acc, o));

    // Conjugation orbits under the generators.
    let gen_indices: Vec<u32> = generators.iter().map(|g| index[g]).collect();
    let mut class_of = vec![u32::MAX; elements.len()];
    let mut classes: Vec<ConjClass> = vec![];
    for start in 0..elements.len() as u32 {
        if class_of[start as usize] != u32::MAX {
            continue;
        }
        let cid = classes.len() as u32;
        let mut members = vec![start];
        class_of[start as usize] = cid;
        let mut queue = vec![start];
        while let Some(x) = queue.pop() {
            for &g in &gen_indices {
                let gx = elements[g as usize].compose(&elements[x as usize]);
                let conj = gx.compose(&elements[inverses[g as usize] as usize]);
                let y = index[&conj];
                if class_of[y as usize] == u32::MAX {
                    class_of[y as usize] = cid;
                    members.push(y);
                    queue.push(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(ConjClass { representative: members[0], members });
    }
    // Element 0 is the identity, so its class is first already; classes
    // are discovered in ascending representative order by construction.
    debug_assert_eq!(classes[0].representative, 0);

    Ok(PermGroup {
        spec: spec.clone(),
        degree,
        generators,
        elements,
        index,
        inverses,
        orders,
        classes,
        class_of,
        exponent,
    })
}

impl PermGroup {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn element_index(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Index of the product of two elements by index.
    pub fn multiply(&self, a: u32, b: u32) -> u32 {
        self.index[&self.elements[a as usize].compose(&self.elements[b as usize])]
    }

    pub fn inverse_index(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn element_order(&self, a: u32) -> u64 {
        self.orders[a as usize]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, elem: u32) -> u32 {
        self.class_of[elem as usize]
    }

    /// Class index containing the inverses of class `c`.
    pub fn inverse_class(&self, c: u32) -> u32 {
        let rep = self.classes[c as usize].representative;
        self.class_of[self.inverses[rep as usize] as usize]
    }

    /// {g⁰, g¹, …, g^(ord−1)} for an element of the group, by index.
    pub fn cyclic_subgroup(&self, g: u32) -> Result<Vec<u32>> {
        if (g as usize) >= self.elements.len() {
            return Err(Error::NotInGroup(format!("element index {g} out of range")));
        }
        let mut powers = vec![0u32];
        let mut x = g;
        while x != 0 {
            powers.push(x);
            x = self.multiply(x, g);
        }
        debug_assert_eq!(powers.len() as u64, self.orders[g as usize]);
        Ok(powers)
    }

    /// Like [`cyclic_subgroup`](Self::cyclic_subgroup) for a permutation
    /// not already resolved to an index.
    pub fn cyclic_subgroup_of(&self, p: &Perm) -> Result<Vec<u32>> {
        let g = self
            .element_index(p)
            .ok_or_else(|| Error::NotInGroup(format!("{p} is not in the group")))?;
        self.cyclic_subgroup(g)
    }

    /// Closure of a generating set inside this group, as sorted indices.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut members = vec![0u32];
        let mut queue = vec![0u32];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.multiply(g, x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                    queue.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }
}

// --- spec grammar ---

pub(crate) struct Tokens<'a> {
    rest: &'a str,
}

impl<'a> Tokens<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Tokens { rest: text.trim_start() }
    }

    fn peek_char(&self) -> Option<char> {
        self.rest.chars().next()
    }

    pub(crate) fn at_end(&self) -> bool {
        self.rest.is_empty()
    }

    pub(crate) fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(Error::Parse(format!("unexpected trailing input: {:?}", self.rest)))
        }
    }

    fn advance(&mut self, n: usize) {
        self.rest = self.rest[n..].trim_start();
    }

    pub(crate) fn word(&mut self) -> Result<&'a str> {
        let end = self
            .rest
            .find(|c: char| !c.is_ascii_alphanumeric())
            .unwrap_or(self.rest.len());
        if end == 0 {
            return Err(Error::Parse(format!("expected a word at {:?}", self.rest)));
        }
        let w = &self.rest[..end];
        self.advance(end);
        Ok(w)
    }

    pub(crate) fn integer(&mut self) -> Result<usize> {
        let end = self.rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest.len());
        if end == 0 {
            return Err(Error::Parse(format!("expected an integer at {:?}", self.rest)));
        }
        let n = self.rest[..end]
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("integer out of range: {}", &self.rest[..end])))?;
        self.advance(end);
        Ok(n)
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek_char() == Some(c) {
            self.advance(c.len_utf8());
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{c}' at {:?}", self.rest)))
        }
    }

    /// Returns the raw interior of a brace-delimited block.
    pub(crate) fn raw_braces(&mut self) -> Result<&'a str> {
        self.expect('{')?;
        let rest: &'a str = self.rest;
        let close = rest
            .find('}')
            .ok_or_else(|| Error::Parse("missing '}' after cycle list".into()))?;
        self.advance(close + 1);
        Ok(&rest[..close])
    }

    /// Reads a brace-delimited, comma-separated list of cycle words.
    pub(crate) fn cycles_list(&mut self, degree: usize) -> Result<Vec<Perm>> {
        let body = self.raw_braces()?;
        body.split(',')
            .map(|part| Perm::parse_cycles(degree, part.trim()))
            .collect()
    }
}

fn parse_spec(toks: &mut Tokens) -> Result<GroupSpec> {
    if toks.eat('(') {
        let inner = parse_spec(toks)?;
        toks.expect(')')?;
        return Ok(inner);
    }
    let word = toks.word()?;
    match word {
        "cyclic" => Ok(GroupSpec::Cyclic(toks.integer()?)),
        "symmetric" => Ok(GroupSpec::Symmetric(toks.integer()?)),
        "dihedral" => Ok(GroupSpec::Dihedral(toks.integer()?)),
        "product" => {
            let a = parse_spec(toks)?;
            let b = parse_spec(toks)?;
            Ok(GroupSpec::Product(Box::new(a), Box::new(b)))
        }
        "perm" => {
            let degree = toks.integer()?;
            if degree == 0 {
                return Err(Error::Parse("perm degree must be positive".into()));
            }
            let generators = toks.cycles_list(degree)?;
            Ok(GroupSpec::Explicit { degree, generators })
        }
        other => Err(Error::Parse(format!("unknown group family {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn group(text: &str) -> PermGroup {
        build_group(&GroupSpec::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_two() {
        let g = group("cyclic 2");
        assert_eq!(g.order(), 2);
        assert_eq!(g.class_count(), 2);
    }

    #[test]
    fn symmetric_three_classes() {
        let g = group("symmetric 3");
        assert_eq!(g.order(), 6);
        let sizes: Vec<usize> = g.classes().iter().map(ConjClass::size).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn klein_four() {
        let g = group("product (cyclic 2) (cyclic 2)");
        assert_eq!(g.order(), 4);
        assert_eq!(g.class_count(), 4);
    }

    #[test]
    fn cyclic_four_classes() {
        let g = group("cyclic 4");
        let sizes: Vec<usize> = g.classes().iter().map(ConjClass::size).collect();
        assert_eq!(sizes, vec![1, 1, 1, 1]);
    }

    #[test]
    fn dihedral_four() {
        let g = group("dihedral 4");
        assert_eq!(g.order(), 8);
        let mut sizes: Vec<usize> = g.classes().iter().map(ConjClass::size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn explicit_alternating_four() {
        let g = group("perm 4 {(0 1 2), (0 1)(2 3)}");
        assert_eq!(g.order(), 12);
        assert_eq!(g.class_count(), 4);
    }

    #[test]
    fn budget_enforced() {
        let spec = GroupSpec::parse("symmetric 6").unwrap();
        match build_group_with_budget(&spec, 100) {
            Err(Error::BudgetExceeded(_)) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_specs() {
        assert!(GroupSpec::parse("dihedral 2").map(|s| build_group(&s)).unwrap().is_err());
        assert!(GroupSpec::parse("frob 3").is_err());
        assert!(GroupSpec::parse("cyclic").is_err());
        assert!(GroupSpec::parse("cyclic 3 junk").is_err());
    }

    #[test]
    fn cyclic_subgroups() {
        let g = group("symmetric 3");
        assert_eq!(g.cyclic_subgroup(0).unwrap(), vec![0]);
        let three_cycle = g.element_index(&Perm::parse_cycles(3, "(0 1 2)").unwrap()).unwrap();
        assert_eq!(g.cyclic_subgroup(three_cycle).unwrap().len(), 3);
        let swap = g.element_index(&Perm::parse_cycles(3, "(0 1)").unwrap()).unwrap();
        assert_eq!(g.cyclic_subgroup(swap).unwrap().len(), 2);
    }

    #[test]
    fn determinism() {
        let a = group("dihedral 5");
        let b = group("dihedral 5");
        assert_eq!(a.elements(), b.elements());
        let reps_a: Vec<u32> = a.classes().iter().map(|c| c.representative).collect();
        let reps_b: Vec<u32> = b.classes().iter().map(|c| c.representative).collect();
        assert_eq!(reps_a, reps_b);
    }

    fn arb_spec() -> impl Strategy<Value = GroupSpec> {
        prop_oneof![
            (1usize..=8).prop_map(GroupSpec::Cyclic),
            (1usize..=4).prop_map(GroupSpec::Symmetric),
            (3usize..=6).prop_map(GroupSpec::Dihedral),
            ((1usize..=4), (1usize..=4)).prop_map(|(a, b)| GroupSpec::Product(
                Box::new(GroupSpec::Cyclic(a)),
                Box::new(GroupSpec::Cyclic(b))
            )),
        ]
    }

    proptest! {
        #[test]
        fn lagrange_and_class_equation(spec in arb_spec()) {
            let g = build_group(&spec).unwrap();
            let n = g.order() as u64;
            for i in 0..g.order() as u32 {
                prop_assert_eq!(n % g.element_order(i), 0);
            }
            let total: usize = g.classes().iter().map(ConjClass::size).sum();
            prop_assert_eq!(total, g.order());
            // classes closed under conjugation by every generator
            for class in g.classes() {
                for &m in &class.members {
                    for gen in g.generators() {
                        let gi = g.element_index(gen).unwrap();
                        let conj = g.multiply(g.multiply(gi, m), g.inverse_index(gi));
                        prop_assert_eq!(g.class_of(conj), g.class_of(m));
                    }
                }
            }
        }
    }
}
