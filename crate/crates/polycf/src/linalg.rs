//! Exact linear algebra over the rationals.
//!
//! Everything here works on `BigRational` so rank, nullspace and matrix
//! power computations never lose precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A dense rational row vector.
pub type QRow = Vec<BigRational>;

/// Reduced row echelon form of `rows` (each of length `ncols`).
///
/// Returns the nonzero reduced rows together with their pivot columns.
pub fn rref(rows: &[QRow], ncols: usize) -> (Vec<QRow>, Vec<usize>) {
    let mut m: Vec<QRow> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..ncols {
        if r >= m.len() {
            break;
        }
        let Some(sel) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, sel);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Rank over Q of a list of rows.
pub fn rank(rows: &[QRow], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Greedily selects indices of rows that form a basis of their span,
/// scanning in input order.
pub fn independent_subset(rows: &[QRow], ncols: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<QRow> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        basis.push(row.clone());
        if rank(&basis, ncols) == basis.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
    }
    chosen
}

/// Basis of `{x : row·x = 0 for every row}` inside Q^ncols.
///
/// Each returned vector is scaled to a primitive integer vector whose first
/// nonzero entry is positive, which makes the output canonical for a fixed
/// echelon form.
pub fn nullspace(rows: &[QRow], ncols: usize) -> Vec<QRow> {
    let (red, pivots) = rref(rows, ncols);
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row, &pc) in red.iter().zip(pivots.iter()) {
            v[pc] = -row[free].clone();
        }
        out.push(primitive(&v));
    }
    out
}

/// Scales a nonzero rational vector to a primitive integer vector with a
/// positive leading entry. The zero vector is returned unchanged.
pub fn primitive(v: &[BigRational]) -> QRow {
    let Some(first) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if first.is_negative() {
        g = -g;
    }
    ints.into_iter().map(|x| BigRational::from_integer(x / &g)).collect()
}

/// Exact dot product.
pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// A square rational matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zero(n: usize) -> Self {
        QMatrix { n, data: vec![BigRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry in row `i`, column `j` (both 0-based).
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.data[i * self.n + j] = value;
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> QRow {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        let n = self.n;
        let mut out = QMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> QRow {
        (0..self.n).map(|i| (0..self.n).fold(BigRational::zero(), |acc, j| acc + self.get(i, j) * &v[j])).collect()
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> QMatrix {
        let mut base = self.clone();
        let mut acc = QMatrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Inverse via Gauss-Jordan elimination, or `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        let n = self.n;
        let rows: Vec<QRow> = (0..n)
            .map(|i| {
                let mut row: QRow = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        let (red, pivots) = rref(&rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = QMatrix::zero(n);
        for (i, row) in red.iter().take(n).enumerate() {
            for j in 0..n {
                out.set(i, j, row[n + j].clone());
            }
        }
        Some(out)
    }
}

fn scale_down(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        v.iter_mut().for_each(|x| *x /= &g);
    }
}

/// Extreme rays of the pointed cone `{x ≥ 0 : rows·x = 0}` as primitive
/// integer vectors, computed with the double description method.
pub fn nonnegative_kernel_rays(rows: &[QRow], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut lineality: Vec<Vec<BigInt>> =
        nullspace(rows, ncols).into_iter().map(|v| v.into_iter().map(|x| x.to_integer()).collect()).collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..ncols {
        if let Some(idx) = lineality.iter().position(|l| !l[j].is_zero()) {
            let mut pivot = lineality.remove(idx);
            if pivot[j].is_negative() {
                pivot.iter_mut().for_each(|x| *x = -&*x);
            }
            for v in lineality.iter_mut().chain(rays.iter_mut()) {
                if v[j].is_zero() {
                    continue;
                }
                let f = v[j].clone();
                for (x, p) in v.iter_mut().zip(&pivot) {
                    *x = &*x * &pivot[j] - &f * p;
                }
                scale_down(v);
            }
            lineality.retain(|l| l.iter().any(|x| !x.is_zero()));
            rays.push(pivot);
            continue;
        }
        let zeros = |v: &[BigInt]| -> Vec<bool> { (0..j).map(|i| v[i].is_zero()).collect() };
        let (pos, rest): (Vec<_>, Vec<_>) = rays.into_iter().partition(|r| r[j].is_positive());
        let (neg, zero): (Vec<_>, Vec<_>) = rest.into_iter().partition(|r| r[j].is_negative());
        let all: Vec<&Vec<BigInt>> = pos.iter().chain(&neg).chain(&zero).collect();
        let zero_sets: Vec<Vec<bool>> = all.iter().map(|r| zeros(r)).collect();
        let mut next: Vec<Vec<BigInt>> = pos.iter().chain(&zero).cloned().collect();
        for (a, p) in pos.iter().enumerate() {
            for (b, q) in neg.iter().enumerate() {
                let bi = pos.len() + b;
                let common: Vec<bool> = zero_sets[a].iter().zip(&zero_sets[bi]).map(|(x, y)| *x && *y).collect();
                let blocked = zero_sets
                    .iter()
                    .enumerate()
                    .any(|(c, z)| c != a && c != bi && common.iter().zip(z).all(|(need, has)| !need || *has));
                if blocked {
                    continue;
                }
                let mut w: Vec<BigInt> = p.iter().zip(q).map(|(x, y)| &p[j] * y - &q[j] * x).collect();
                scale_down(&mut w);
                next.push(w);
            }
        }
        rays = next;
    }
    rays
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), q(1)]];
        assert_eq!(rank(&rows, 2), 2);
        assert_eq!(independent_subset(&rows, 2), vec![0, 2]);
    }

    #[test]
    fn nullspace_is_primitive_and_orthogonal() {
        let rows = vec![vec![q(2), q(1)]];
        let ns = nullspace(&rows, 2);
        assert_eq!(ns, vec![vec![q(1), q(-2)]]);
        assert!(dot(&ns[0], &rows[0]).is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let mut m = QMatrix::zero(2);
        m.set(0, 1, qr(1, 2));
        m.set(1, 0, q(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(2));
        assert!(QMatrix::zero(2).inverse().is_none());
    }

    #[test]
    fn power_matches_repeated_product() {
        let mut m = QMatrix::zero(2);
        m.set(0, 1, qr(1, 2));
        m.set(1, 0, q(1));
        m.set(1, 1, q(3));
        let mut slow = QMatrix::identity(2);
        for _ in 0..7 {
            slow = slow.mul(&m);
        }
        assert_eq!(m.pow(7), slow);
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_rays() {
        // x - y = 0 together with z free: rays (1,1,0) and (0,0,1)
        let mut rays = nonnegative_kernel_rays(&[vec![q(1), q(-1), q(0)]], 3);
        rays.sort();
        assert_eq!(rays, vec![ints(&[0, 0, 1]), ints(&[1, 1, 0])]);
        // 2x + 3y = 5z: rays (5,0,2) and (0,5,3)
        let mut rays = nonnegative_kernel_rays(&[vec![q(2), q(3), q(-5)]], 3);
        rays.sort();
        assert_eq!(rays, vec![ints(&[0, 5, 3]), ints(&[5, 0, 2])]);
        // x + y = 0 forces zero
        assert!(nonnegative_kernel_rays(&[vec![q(1), q(1)]], 2).is_empty());
        // the four-variable cone x + y = z + w has four extreme rays
        assert_eq!(nonnegative_kernel_rays(&[vec![q(1), q(1), q(-1), q(-1)]], 4).len(), 4);
    }
}
