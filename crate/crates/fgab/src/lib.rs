//! Finitely generated abelian groups presented by integer matrices.
//!
//! A group is given as the cokernel of a relation matrix, brought into
//! Smith normal form to read off invariant factors. This crate is used
//! as an independent cross-check for symbolic group calculus elsewhere,
//! so it deliberately sticks to plain integer matrix algebra.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense matrix over the integers, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Mat::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Kronecker product, blocks ordered row major.
    pub fn kronecker(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        out[(i * other.rows + p, j * other.cols + q)] = a * &other[(p, q)];
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "row mismatch");
        let mut out = Mat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Keep the first `n` rows.
    pub fn take_rows(&self, n: usize) -> Mat {
        assert!(n <= self.rows);
        let mut out = Mat::zeros(n, self.cols);
        for i in 0..n {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row a += q * row b
    fn add_row(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = &self[(b, j)] * q;
            self[(a, j)] += t;
        }
    }

    /// col a += q * col b
    fn add_col(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = &self[(i, b)] * q;
            self[(i, a)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -self[(a, j)].clone();
            self[(a, j)] = t;
        }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        let c = self.cols;
        &mut self.data[i * c + j]
    }
}

/// Result of a Smith normal form computation: `u * a * v = d` with
/// `u`, `v` unimodular and `d` diagonal, each diagonal entry dividing
/// the next.
pub struct Snf {
    pub u: Mat,
    pub d: Mat,
    pub v: Mat,
}

pub fn smith_normal_form(a: &Mat) -> Snf {
    let mut d = a.clone();
    let mut u = Mat::identity(a.rows);
    let mut v = Mat::identity(a.cols);
    let n = a.rows.min(a.cols);

    let mut t = 0;
    while t < n {
        // Find a pivot of minimal absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..d.rows {
            for j in t..d.cols {
                if !d[(i, j)].is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => d[(i, j)].abs() < d[(pi, pj)].abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // Clear row and column t; restarts when a reduction leaves a
        // smaller remainder somewhere.
        loop {
            let mut clean = true;
            for i in (t + 1)..d.rows {
                if !d[(i, t)].is_zero() {
                    let q = -(&d[(i, t)] / &d[(t, t)]);
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    if !d[(i, t)].is_zero() {
                        // Remainder strictly smaller than the pivot: promote it.
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                        clean = false;
                    }
                }
            }
            for j in (t + 1)..d.cols {
                if !d[(t, j)].is_zero() {
                    let q = -(&d[(t, j)] / &d[(t, t)]);
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    if !d[(t, j)].is_zero() {
                        d.swap_cols(t, j);
                        v.swap_cols(t, j);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }

        // Divisibility: pivot must divide every remaining entry.
        let mut retry = false;
        'scan: for i in (t + 1)..d.rows {
            for j in (t + 1)..d.cols {
                if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                    retry = true;
                    break 'scan;
                }
            }
        }
        if retry {
            continue;
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { u, d, v }
}

/// Basis (as columns) for the integer kernel lattice of `a`.
pub fn kernel_basis(a: &Mat) -> Mat {
    let snf = smith_normal_form(a);
    let rank = (0..a.rows.min(a.cols)).filter(|&i| !snf.d[(i, i)].is_zero()).count();
    // Columns rank.. of V span the kernel.
    let mut out = Mat::zeros(a.cols, a.cols - rank);
    for j in rank..a.cols {
        for i in 0..a.cols {
            out[(i, j - rank)] = snf.v[(i, j)].clone();
        }
    }
    out
}

/// Isomorphism class of a finitely generated abelian group: invariant
/// factors (each at least 2, each dividing the next) plus free rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgGroup {
    pub torsion: Vec<BigInt>,
    pub rank: usize,
}

impl FgGroup {
    pub fn trivial() -> Self {
        FgGroup { torsion: vec![], rank: 0 }
    }

    pub fn free(rank: usize) -> Self {
        FgGroup { torsion: vec![], rank }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.rank == 0
    }

    /// ⊕ᵢ ℤ/orders[i] (an order of 0 meaning ℤ), renormalized to
    /// invariant factors via the Smith form of the diagonal matrix.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        cokernel(&Mat::diagonal(orders))
    }

    pub fn direct_sum(&self, other: &FgGroup) -> FgGroup {
        let mut orders: Vec<BigInt> = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        orders.extend(std::iter::repeat_n(BigInt::zero(), self.rank + other.rank));
        FgGroup::from_cyclic_orders(&orders)
    }
}

impl fmt::Display for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{}", d)).collect();
        if self.rank == 1 {
            parts.push("Z".to_string());
        } else if self.rank > 1 {
            parts.push(format!("Z^{}", self.rank));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// The group ℤ^rows / (column span of `a`).
pub fn cokernel(a: &Mat) -> FgGroup {
    if a.cols == 0 {
        return FgGroup::free(a.rows);
    }
    let snf = smith_normal_form(a);
    let mut torsion = vec![];
    let mut nonzero = 0;
    for i in 0..a.rows.min(a.cols) {
        let d = &snf.d[(i, i)];
        if d.is_zero() {
            continue;
        }
        nonzero += 1;
        if !d.is_one() {
            torsion.push(d.clone());
        }
    }
    FgGroup { torsion, rank: a.rows - nonzero }
}

/// Structure of the subgroup of coker(`relations`) generated by the
/// columns of `gens`: computed as ℤ^w modulo the lattice of coefficient
/// vectors x with gens·x in the column span of `relations`.
pub fn subgroup_from_generators(relations: &Mat, gens: &Mat) -> FgGroup {
    assert_eq!(relations.rows, gens.rows, "ambient rank mismatch");
    let stacked = gens.hstack(relations);
    let ker = kernel_basis(&stacked);
    let coeff_lattice = ker.take_rows(gens.cols);
    cokernel(&coeff_lattice)
}

/// Order of the subgroup of ℤ/modulus generated by `g`, found by
/// repeated addition.
pub fn cyclic_generated_order(modulus: u64, g: u64) -> u64 {
    assert!(modulus > 0);
    let g = g % modulus;
    if g == 0 {
        return 1;
    }
    let mut x = g;
    let mut n = 1;
    while x != 0 {
        x = (x + g) % modulus;
        n += 1;
    }
    n
}

/// The d-torsion subgroup {x : d·x ≡ 0} of ℤ/modulus: returns
/// (order, minimal positive generator), found by scanning.
pub fn cyclic_torsion(modulus: u64, d: u64) -> (u64, u64) {
    assert!(modulus > 0);
    let mut count = 0u64;
    let mut min_gen = 0u64;
    for x in 0..modulus {
        if (x as u128 * d as u128).is_multiple_of(modulus as u128) {
            count += 1;
            if x > 0 && min_gen == 0 {
                min_gen = x;
            }
        }
    }
    (count, min_gen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn check_snf(a: &Mat) {
        let snf = smith_normal_form(a);
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.d, "U·A·V != D");
        let n = a.rows.min(a.cols);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero());
                }
            }
            if i + 1 < n && !snf.d[(i + 1, i + 1)].is_zero() {
                assert!(
                    !snf.d[(i, i)].is_zero() && (&snf.d[(i + 1, i + 1)] % &snf.d[(i, i)]).is_zero(),
                    "divisibility chain broken"
                );
            }
        }
    }

    #[test]
    fn snf_small_known() {
        let a = Mat::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let snf = smith_normal_form(&a);
        check_snf(&a);
        let diag: Vec<i64> = (0..3).map(|i| i64::try_from(&snf.d[(i, i)]).unwrap()).collect();
        assert_eq!(diag, vec![2, 2, 156]);
    }

    #[test]
    fn snf_random_consistency() {
        // Fixed small pseudo-random matrices; checks transform identity only.
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 21) as i64 - 10
        };
        for rows in 1..5usize {
            for cols in 1..5usize {
                for _ in 0..8 {
                    let data: Vec<Vec<BigInt>> =
                        (0..rows).map(|_| (0..cols).map(|_| BigInt::from(next())).collect()).collect();
                    check_snf(&Mat::from_rows(data));
                }
            }
        }
    }

    #[test]
    fn cokernel_invariants() {
        // Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6
        let a = Mat::from_i64(&[&[2, 0], &[0, 3]]);
        let g = cokernel(&a);
        assert_eq!(g, FgGroup { torsion: vec![BigInt::from(6)], rank: 0 });

        // Z^2 / <(2,0)> = Z/2 + Z
        let a = Mat::from_i64(&[&[2], &[0]]);
        let g = cokernel(&a);
        assert_eq!(g, FgGroup { torsion: vec![BigInt::from(2)], rank: 1 });

        // no relations
        let a = Mat::zeros(3, 0);
        assert_eq!(cokernel(&a), FgGroup::free(3));
    }

    #[test]
    fn kernel_of_projection() {
        let a = Mat::from_i64(&[&[1, 0, 2], &[0, 1, 3]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols, 1);
        // kernel spanned by (±2, ±3, ∓1)
        let prod = a.mul(&k);
        for i in 0..prod.rows {
            assert!(prod[(i, 0)].is_zero());
        }
    }

    #[test]
    fn subgroup_structure() {
        // In Z/4 + Z/4 the diagonal element (1,1) generates Z/4.
        let rel = Mat::from_i64(&[&[4, 0], &[0, 4]]);
        let gens = Mat::from_i64(&[&[1], &[1]]);
        assert_eq!(
            subgroup_from_generators(&rel, &gens),
            FgGroup { torsion: vec![BigInt::from(4)], rank: 0 }
        );
        // (2,0) and (0,2) generate Z/2 + Z/2.
        let gens = Mat::from_i64(&[&[2, 0], &[0, 2]]);
        assert_eq!(
            subgroup_from_generators(&rel, &gens),
            FgGroup { torsion: vec![BigInt::from(2), BigInt::from(2)], rank: 0 }
        );
        // Inside Z (no relations), 6 and 10 generate 2Z ≅ Z.
        let rel = Mat::zeros(1, 0);
        let gens = Mat::from_i64(&[&[6, 10]]);
        assert_eq!(subgroup_from_generators(&rel, &gens), FgGroup::free(1));
    }

    #[test]
    fn cyclic_helpers() {
        assert_eq!(cyclic_generated_order(12, 8), 3);
        assert_eq!(cyclic_generated_order(12, 0), 1);
        assert_eq!(cyclic_torsion(8, 2), (2, 4));
        assert_eq!(cyclic_torsion(9, 3), (3, 3));
        assert_eq!(cyclic_torsion(7, 5), (1, 0));
    }
}
