//! Truncation oracle: realizes the symbolic abelian-group atoms as
//! directed systems of finitely generated groups between two stages
//! and computes tensor / Tor honestly at the matrix level, so the
//! symbolic rewrite rules can be compared against Smith-normal-form
//! computations.
//!
//! Realization at stage t (t = stage_a at the source, stage_b at the
//! target, with the transition maps composed across the window):
//!   ℤ         ↦ ℤ, identity transition
//!   ℤ/p^k     ↦ ℤ/p^k, identity transition
//!   ℚ_n       ↦ (1/d_t)ℤ ≅ ℤ, transition = multiplication by the
//!               radical of n per stage
//!   ℚ_n/ℤ     ↦ ⊕_{p|n} ℤ/p^t, transition = multiplication by p
//!
//! The comparison object is the stable image im(stage_a → stage_b).
//! With the window used here (stage_a = 3, stage_b = 6) and cyclic
//! exponents capped at 3, that image agrees on the nose with the
//! stable image of the realized rule output for every atom rule.

use fgab::{cyclic_generated_order, cyclic_torsion, subgroup_from_generators, FgGroup, Mat};
use kshift::abgrp::{AbGroup, Atom};
use num_bigint::BigInt;

pub const STAGE_A: u32 = 3;
pub const STAGE_B: u32 = 6;
pub const CYCLIC_CAP: u32 = 3;

/// A diagonal directed system between the two stages: one generator
/// per entry, `orders_*[i] = 0` meaning a free ℤ summand, and the
/// composed transition acting by `trans[i]` on generator i.
#[derive(Debug, Clone, Default)]
pub struct DiagSystem {
    pub orders_a: Vec<u64>,
    pub orders_b: Vec<u64>,
    pub trans: Vec<u64>,
}

impl DiagSystem {
    fn push(&mut self, order_a: u64, order_b: u64, trans: u64) {
        self.orders_a.push(order_a);
        self.orders_b.push(order_b);
        self.trans.push(trans);
    }

    pub fn len(&self) -> usize {
        self.orders_a.len()
    }
}

pub fn realize(g: &AbGroup) -> DiagSystem {
    let mut sys = DiagSystem::default();
    let window = STAGE_B - STAGE_A;
    for atom in g.summands() {
        match atom {
            Atom::Z => sys.push(0, 0, 1),
            Atom::Cyclic { p, k } => {
                assert!(*k <= CYCLIC_CAP, "cyclic exponent outside the sound window");
                sys.push(p.pow(*k), p.pow(*k), 1)
            }
            Atom::Qn(n) => {
                let radical: u64 = n.primes().product();
                sys.push(0, 0, radical.pow(window));
            }
            Atom::QnModZ(n) => {
                for p in n.primes() {
                    sys.push(p.pow(STAGE_A), p.pow(STAGE_B), p.pow(window));
                }
            }
        }
    }
    sys
}

/// Stable image of a diagonal system, read off generator by generator.
pub fn diag_stable_image(sys: &DiagSystem) -> FgGroup {
    let mut orders = vec![];
    for i in 0..sys.len() {
        if sys.orders_b[i] == 0 {
            assert!(sys.trans[i] != 0);
            orders.push(BigInt::from(0));
        } else {
            let o = cyclic_generated_order(sys.orders_b[i], sys.trans[i] % sys.orders_b[i]);
            if o > 1 {
                orders.push(BigInt::from(o));
            }
        }
    }
    FgGroup::from_cyclic_orders(&orders)
}

fn diag_mat(orders: &[u64]) -> Mat {
    let entries: Vec<BigInt> = orders.iter().map(|&o| BigInt::from(o)).collect();
    Mat::diagonal(&entries)
}

/// Honest tensor of the two realized systems: the stage-b group is
/// presented by the Kronecker relation matrix
/// [K_x ⊗ I | I ⊗ K_y], the a→b transition is the Kronecker product of
/// the transitions, and the image is extracted by Smith normal form.
pub fn tensor_stable_image(x: &DiagSystem, y: &DiagSystem) -> FgGroup {
    let rx = x.len();
    let ry = y.len();
    if rx == 0 || ry == 0 {
        return FgGroup::trivial();
    }
    let kx = diag_mat(&x.orders_b);
    let ky = diag_mat(&y.orders_b);
    let relations = kx.kronecker(&Mat::identity(ry)).hstack(&Mat::identity(rx).kronecker(&ky));
    let w = diag_mat(&x.trans).kronecker(&diag_mat(&y.trans));
    subgroup_from_generators(&relations, &w)
}

/// Honest Tor of the two realized systems, from the standard length-1
/// free resolution of each cyclic piece of `x`: Tor(ℤ/a, B) = B[a],
/// with the induced transition x ↦ w·v·x where w lifts the a-side map
/// through the resolutions. Torsion subgroups and image orders are
/// found by enumeration, not by formula.
pub fn tor_stable_image(x: &DiagSystem, y: &DiagSystem) -> FgGroup {
    let mut orders = vec![];
    for i in 0..x.len() {
        let (xa, xb, xu) = (x.orders_a[i], x.orders_b[i], x.trans[i]);
        if xa == 0 {
            continue; // free summand: Tor vanishes
        }
        // chain-level lift of multiplication by xu: resolution square
        // demands xb·w = xu·xa
        let prod = xu as u128 * xa as u128;
        assert_eq!(prod % xb as u128, 0, "transition does not lift through the resolution");
        let w = (prod / xb as u128) as u64;
        for j in 0..y.len() {
            let (ya, yb, yv) = (y.orders_a[j], y.orders_b[j], y.trans[j]);
            if ya == 0 {
                continue;
            }
            let (src_order, src_gen) = cyclic_torsion(ya, xa % ya);
            if src_order <= 1 {
                continue;
            }
            let scalar = (w as u128 * yv as u128 % yb as u128) as u64;
            let image_gen = (scalar as u128 * src_gen as u128 % yb as u128) as u64;
            let o = cyclic_generated_order(yb, image_gen);
            if o > 1 {
                orders.push(BigInt::from(o));
            }
        }
    }
    FgGroup::from_cyclic_orders(&orders)
}

/// One tensor instance: the SNF computation on the realized systems
/// must equal the stable image of the realized symbolic result.
pub fn tensor_rule_agrees(a: &AbGroup, b: &AbGroup) -> Result<(), String> {
    let actual = tensor_stable_image(&realize(a), &realize(b));
    let expected = diag_stable_image(&realize(&a.tensor(b)));
    if actual == expected {
        Ok(())
    } else {
        Err(format!("tensor({a}, {b}): SNF gives {actual}, rule gives {expected}"))
    }
}

/// One Tor instance, same contract.
pub fn tor_rule_agrees(a: &AbGroup, b: &AbGroup) -> Result<(), String> {
    let actual = tor_stable_image(&realize(a), &realize(b));
    let expected = diag_stable_image(&realize(&a.tor(b)));
    if actual == expected {
        Ok(())
    } else {
        Err(format!("tor({a}, {b}): enumeration gives {actual}, rule gives {expected}"))
    }
}
