//! Arithmetic and linear algebra over prime fields, plus CRT lifting.
//! Supports the modular character-table computation: all matrices here
//! are small (one row/column per conjugacy class).

use num_bigint::BigInt;
use num_traits::One;

pub fn is_prime(n: u64) -> bool {
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

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverting zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Primes ℓ ≡ 1 (mod e) with ℓ > 2√n, ascending. These are the moduli
/// for which the class algebra of a group of order n and exponent e
/// splits completely and character values lift uniquely.
pub fn admissible_primes(e: u64, n: u64) -> impl Iterator<Item = u64> {
    let floor = 2.0 * (n as f64).sqrt();
    (1u64..).map(move |t| e * t + 1).filter(move |&l| (l as f64) > floor && is_prime(l))
}

/// Smallest element of multiplicative order exactly e in F_ℓ^×.
/// Requires e | ℓ−1.
pub fn primitive_root_of_unity(e: u64, l: u64) -> u64 {
    assert_eq!((l - 1) % e, 0, "no {e}-th roots of unity mod {l}");
    if e == 1 {
        return 1;
    }
    let prime_divisors: Vec<u64> = {
        let mut out = vec![];
        let mut m = e;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                out.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            out.push(m);
        }
        out
    };
    for w in 2..l {
        let z = pow_mod(w, (l - 1) / e, l);
        if z != 1 && prime_divisors.iter().all(|&p| pow_mod(z, e / p, l) != 1) {
            return z;
        }
    }
    unreachable!("F_{l} has a generator");
}

/// Signed CRT: reconstructs the integer in (−L/2, L/2] with the given
/// residues, L the product of the (pairwise coprime) moduli.
pub fn crt_signed(residues: &[(u64, u64)]) -> BigInt {
    assert!(!residues.is_empty());
    let mut value = BigInt::from(residues[0].0 % residues[0].1);
    let mut modulus = BigInt::from(residues[0].1);
    for &(r, m) in &residues[1..] {
        // value + modulus·t ≡ r (mod m)
        let mb = BigInt::from(m);
        let cur = ((&value) % &mb + &mb) % &mb;
        let diff = ((BigInt::from(r) - cur) % &mb + &mb) % &mb;
        let inv = BigInt::from(inv_mod(
            u64::try_from(((&modulus % &mb) + &mb) % &mb).expect("fits in u64"),
            m,
        ));
        let t = (diff * inv) % &mb;
        value += &modulus * t;
        modulus *= mb;
    }
    let half = &modulus >> 1;
    if value > half {
        value -= &modulus;
    }
    debug_assert!(value <= half && value > -(half + BigInt::one()));
    value
}

/// Dense square matrix over F_p, row major.
#[derive(Debug, Clone)]
pub struct FpMat {
    pub n: usize,
    pub p: u64,
    data: Vec<u64>,
}

impl FpMat {
    pub fn zeros(n: usize, p: u64) -> Self {
        FpMat { n, p, data: vec![0; n * n] }
    }

    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.n + j] = v % self.p;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: u64) {
        let cur = self.data[i * self.n + j];
        self.data[i * self.n + j] = (cur + v) % self.p;
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        for i in 0..self.n {
            let mut acc = 0u128;
            for j in 0..self.n {
                acc += self.at(i, j) as u128 * v[j] as u128;
            }
            out[i] = (acc % self.p as u128) as u64;
        }
        out
    }
}

/// Characteristic polynomial, monic, coefficients ascending, via
/// Hessenberg reduction. O(n³) field operations.
pub fn charpoly(mat: &FpMat) -> Vec<u64> {
    let n = mat.n;
    let p = mat.p;
    let mut h = mat.clone();
    // similarity reduction to upper Hessenberg
    for j in 0..n.saturating_sub(2) {
        let pivot = (j + 1..n).find(|&i| h.at(i, j) != 0);
        let Some(pi) = pivot else { continue };
        if pi != j + 1 {
            for col in 0..n {
                let (a, b) = (h.at(pi, col), h.at(j + 1, col));
                h.set(pi, col, b);
                h.set(j + 1, col, a);
            }
            for row in 0..n {
                let (a, b) = (h.at(row, pi), h.at(row, j + 1));
                h.set(row, pi, b);
                h.set(row, j + 1, a);
            }
        }
        let inv = inv_mod(h.at(j + 1, j), p);
        for i in j + 2..n {
            let f = mul_mod(h.at(i, j), inv, p);
            if f == 0 {
                continue;
            }
            for col in 0..n {
                let v = (h.at(i, col) + p - mul_mod(f, h.at(j + 1, col), p)) % p;
                h.set(i, col, v);
            }
            for row in 0..n {
                let v = (h.at(row, j + 1) + mul_mod(f, h.at(row, i), p)) % p;
                h.set(row, j + 1, v);
            }
        }
    }
    // p_m(x) = (x − h[m][m]) p_{m−1}(x)
    //          − Σ_i h[i][m] (∏_{j=i+1..=m} h[j][j−1]) p_{i−1}(x)
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let mut poly = vec![0u64; m + 2];
        let diag = h.at(m, m);
        for (d, &c) in polys[m].iter().enumerate() {
            poly[d + 1] = (poly[d + 1] + c) % p;
            poly[d] = (poly[d] + p - mul_mod(diag, c, p)) % p;
        }
        let mut subprod = 1u64;
        for i in (0..m).rev() {
            subprod = mul_mod(subprod, h.at(i + 1, i), p);
            if subprod == 0 {
                break;
            }
            let f = mul_mod(h.at(i, m), subprod, p);
            if f == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                poly[d] = (poly[d] + p - mul_mod(f, c, p)) % p;
            }
        }
        polys.push(poly);
    }
    polys.pop().expect("n+1 polys built")
}

pub fn eval_poly(coeffs: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in coeffs.iter().rev() {
        acc = (mul_mod(acc, x, p) + c) % p;
    }
    acc
}

/// Basis of the kernel of `mat` (as vectors), via Gaussian elimination.
pub fn kernel_basis(mat: &FpMat) -> Vec<Vec<u64>> {
    let n = mat.n;
    let p = mat.p;
    let mut a = mat.clone();
    let mut pivot_col_of_row = vec![];
    let mut row = 0;
    for col in 0..n {
        let pr = (row..n).find(|&r| a.at(r, col) != 0);
        let Some(pr) = pr else { continue };
        for c in 0..n {
            let (x, y) = (a.at(pr, c), a.at(row, c));
            a.set(pr, c, y);
            a.set(row, c, x);
        }
        let inv = inv_mod(a.at(row, col), p);
        for c in 0..n {
            a.set(row, c, mul_mod(a.at(row, c), inv, p));
        }
        for r in 0..n {
            if r != row && a.at(r, col) != 0 {
                let f = a.at(r, col);
                for c in 0..n {
                    let v = (a.at(r, c) + p - mul_mod(f, a.at(row, c), p)) % p;
                    a.set(r, c, v);
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: std::collections::HashSet<usize> =
        pivot_col_of_row.iter().copied().collect();
    let mut basis = vec![];
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = (p - a.at(r, free)) % p;
        }
        basis.push(v);
    }
    basis
}

/// A subspace of F_p^n kept as a reduced-row-echelon basis, so that
/// membership coordinates can be read off the pivot positions.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub p: u64,
    pub ambient: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn full(ambient: usize, p: u64) -> Self {
        let basis: Vec<Vec<u64>> = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { p, ambient, pivots: (0..ambient).collect(), basis }
    }

    pub fn from_vectors(ambient: usize, p: u64, vectors: Vec<Vec<u64>>) -> Self {
        let mut sub = Subspace { p, ambient, basis: vec![], pivots: vec![] };
        for v in vectors {
            sub.insert(v);
        }
        sub
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    fn insert(&mut self, mut v: Vec<u64>) {
        let p = self.p;
        for (row, &pc) in self.pivots.iter().enumerate() {
            if v[pc] != 0 {
                let f = v[pc];
                for c in 0..self.ambient {
                    v[c] = (v[c] + p - mul_mod(f, self.basis[row][c], p)) % p;
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[pc], p);
            for c in 0..self.ambient {
                v[c] = mul_mod(v[c], inv, p);
            }
            // clear the new pivot column in existing rows
            for b in self.basis.iter_mut() {
                if b[pc] != 0 {
                    let f = b[pc];
                    for c in 0..self.ambient {
                        b[c] = (b[c] + p - mul_mod(f, v[c], p)) % p;
                    }
                }
            }
            self.basis.push(v);
            self.pivots.push(pc);
        }
    }

    /// Coordinates of `v` in this basis; `None` if v is outside.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let mut rem = v.to_vec();
        let mut coords = vec![0u64; self.dim()];
        for (row, &pc) in self.pivots.iter().enumerate() {
            let f = rem[pc];
            coords[row] = f;
            if f != 0 {
                for c in 0..self.ambient {
                    rem[c] = (rem[c] + p - mul_mod(f, self.basis[row][c], p)) % p;
                }
            }
        }
        rem.iter().all(|&x| x == 0).then_some(coords)
    }

    /// Splits this subspace into the eigenspaces of a matrix that maps
    /// it into itself. Returns `None` if the subspace is not invariant
    /// or the restriction is not diagonalizable over F_p.
    pub fn split_by(&self, mat: &FpMat) -> Option<Vec<Subspace>> {
        let p = self.p;
        let m = self.dim();
        if m <= 1 {
            return Some(vec![self.clone()]);
        }
        // restriction matrix: column i = coordinates of mat·basis[i]
        let mut restricted = FpMat::zeros(m, p);
        for (i, b) in self.basis.iter().enumerate() {
            let coords = self.coordinates(&mat.apply(b))?;
            for (j, &c) in coords.iter().enumerate() {
                restricted.set(j, i, c);
            }
        }
        let cp = charpoly(&restricted);
        let mut pieces = vec![];
        let mut total = 0;
        for lambda in 0..p {
            if eval_poly(&cp, lambda, p) != 0 {
                continue;
            }
            let mut shifted = restricted.clone();
            for i in 0..m {
                let v = (shifted.at(i, i) + p - lambda) % p;
                shifted.set(i, i, v);
            }
            let kernel = kernel_basis(&shifted);
            if kernel.is_empty() {
                continue;
            }
            total += kernel.len();
            let vectors: Vec<Vec<u64>> = kernel
                .iter()
                .map(|coords| {
                    let mut v = vec![0u64; self.ambient];
                    for (i, &c) in coords.iter().enumerate() {
                        for (x, &b) in v.iter_mut().zip(&self.basis[i]) {
                            *x = (*x + mul_mod(c, b, p)) % p;
                        }
                    }
                    v
                })
                .collect();
            pieces.push(Subspace::from_vectors(self.ambient, p, vectors));
        }
        (total == m).then_some(pieces)
    }
}
