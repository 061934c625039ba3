//! Exact linear algebra over the prime fields F_p, p in {2, 3, 5, 7}.
//!
//! Subspaces are kept in reduced row echelon form, so equal subspaces have
//! identical representations.

pub fn inv_mod(a: u8, p: u8) -> u8 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    // p is tiny; scan.
    for x in 1..p {
        if (a as u16 * x as u16) % p as u16 == 1 {
            return x;
        }
    }
    unreachable!()
}

pub fn neg_mod(a: u8, p: u8) -> u8 {
    (p - a % p) % p
}

pub fn reduce_i64(a: i64, p: u8) -> u8 {
    (a.rem_euclid(p as i64)) as u8
}

/// Dense matrix over F_p, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    pub p: u8,
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<u8>,
}

impl FpMat {
    pub fn zeros(p: u8, rows: usize, cols: usize) -> FpMat {
        FpMat { p, rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(p: u8, n: usize) -> FpMat {
        let mut m = FpMat::zeros(p, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(p: u8, rows: &[Vec<u8>]) -> FpMat {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut a = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            a.extend(r.iter().map(|&x| x % p));
        }
        FpMat { p, rows: rows.len(), cols, a }
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let p = self.p as u16;
        let mut out = FpMat::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self[(i, k)];
                if v == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let t = (out[(i, j)] as u16 + v as u16 * other[(k, j)] as u16) % p;
                    out[(i, j)] = t as u8;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u16;
        (0..self.rows)
            .map(|i| {
                let mut s = 0u16;
                for j in 0..self.cols {
                    s = (s + self[(i, j)] as u16 * v[j] as u16) % p;
                }
                s as u8
            })
            .collect()
    }

    pub fn add(&self, other: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x = (*x + *y) % self.p;
        }
        out
    }

    pub fn pow(&self, e: u32) -> FpMat {
        assert_eq!(self.rows, self.cols);
        let mut out = FpMat::identity(self.p, self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = inv_mod(self[(r, c)], p);
            for j in 0..self.cols {
                self[(r, j)] = ((self[(r, j)] as u16 * inv as u16) % p as u16) as u8;
            }
            for i in 0..self.rows {
                if i != r && self[(i, c)] != 0 {
                    let f = self[(i, c)];
                    for j in 0..self.cols {
                        let t = (self[(i, j)] as i16
                            - f as i16 * self[(r, j)] as i16).rem_euclid(p as i16);
                        self[(i, j)] = t as u8;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel {x : Ax = 0}.
    pub fn kernel(&self) -> Vec<Vec<u8>> {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![0u8; self.cols];
            v[f] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = neg_mod(m[(ri, f)], p);
            }
            basis.push(v);
        }
        basis
    }

    /// One solution x of Ax = b, if consistent.
    pub fn solve(&self, b: &[u8]) -> Option<Vec<u8>> {
        assert_eq!(b.len(), self.rows);
        let p = self.p;
        let mut aug = FpMat::zeros(p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i] % p;
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u8; self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(ri, self.cols)];
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for FpMat {
    type Output = u8;
    fn index(&self, (i, j): (usize, usize)) -> &u8 {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FpMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u8 {
        &mut self.a[i * self.cols + j]
    }
}

/// A subspace of F_p^n, stored as a reduced row echelon basis. Two equal
/// subspaces compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub p: u8,
    pub ambient: usize,
    mat: FpMat,
}

impl Subspace {
    pub fn zero(p: u8, ambient: usize) -> Subspace {
        Subspace { p, ambient, mat: FpMat::zeros(p, 0, ambient) }
    }

    pub fn full(p: u8, ambient: usize) -> Subspace {
        Subspace::from_vectors(p, ambient, (0..ambient).map(|i| {
            let mut v = vec![0; ambient];
            v[i] = 1;
            v
        }))
    }

    pub fn from_vectors<I>(p: u8, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = Vec<u8>>,
    {
        let rows: Vec<Vec<u8>> = vectors.into_iter().collect();
        for r in &rows {
            assert_eq!(r.len(), ambient, "ambient dimension");
        }
        let mut m = FpMat::from_rows(p, &rows);
        m.cols = ambient;
        if rows.is_empty() {
            m = FpMat::zeros(p, 0, ambient);
        }
        let npiv = m.rref().len();
        let mat = FpMat {
            p,
            rows: npiv,
            cols: ambient,
            a: m.a[..npiv * ambient].to_vec(),
        };
        Subspace { p, ambient, mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows
    }

    pub fn basis(&self) -> Vec<Vec<u8>> {
        (0..self.mat.rows).map(|i| self.mat.row(i).to_vec()).collect()
    }

    pub fn basis_matrix(&self) -> &FpMat {
        &self.mat
    }

    pub fn contains_vec(&self, v: &[u8]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // reduce v against the echelon basis
        let p = self.p;
        let mut v: Vec<u8> = v.iter().map(|&x| x % p).collect();
        for i in 0..self.mat.rows {
            let pc = (0..self.ambient).find(|&c| self.mat[(i, c)] != 0).unwrap();
            if v[pc] != 0 {
                let f = v[pc];
                for c in 0..self.ambient {
                    let t = (v[c] as i16 - f as i16 * self.mat[(i, c)] as i16)
                        .rem_euclid(p as i16);
                    v[c] = t as u8;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains_vec(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis();
        vs.extend(other.basis());
        Subspace::from_vectors(self.p, self.ambient, vs)
    }

    /// Intersection via the kernel of the stacked coefficient matrix.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let a = self.basis();
        let b = other.basis();
        if a.is_empty() || b.is_empty() {
            return Subspace::zero(self.p, self.ambient);
        }
        // columns: coefficients on a-basis then b-basis; rows: ambient coords
        let mut m = FpMat::zeros(self.p, self.ambient, a.len() + b.len());
        for (k, v) in a.iter().enumerate() {
            for i in 0..self.ambient {
                m[(i, k)] = v[i];
            }
        }
        for (k, v) in b.iter().enumerate() {
            for i in 0..self.ambient {
                m[(i, a.len() + k)] = neg_mod(v[i], self.p);
            }
        }
        let ker = m.kernel();
        let vs = ker.into_iter().map(|coef| {
            let mut v = vec![0u8; self.ambient];
            for (k, basis_vec) in a.iter().enumerate() {
                for i in 0..self.ambient {
                    v[i] = ((v[i] as u16 + coef[k] as u16 * basis_vec[i] as u16)
                        % self.p as u16) as u8;
                }
            }
            v
        });
        Subspace::from_vectors(self.p, self.ambient, vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_canonical() {
        let a = Subspace::from_vectors(5, 3, vec![vec![1, 2, 3], vec![0, 1, 4]]);
        let b = Subspace::from_vectors(5, 3, vec![vec![2, 4, 6], vec![1, 3, 2]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn kernel_and_solve() {
        let m = FpMat::from_rows(7, &[vec![1, 2, 3], vec![2, 4, 6]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        let sol = m.solve(&[3, 6]).unwrap();
        assert_eq!(m.mul_vec(&sol), vec![3, 6]);
        assert!(m.solve(&[1, 0]).is_none());
    }

    #[test]
    fn subspace_ops() {
        let p = 2;
        let u = Subspace::from_vectors(p, 4, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let v = Subspace::from_vectors(p, 4, vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
        let s = u.sum(&v);
        assert_eq!(s.dim(), 3);
        let i = u.intersect(&v);
        assert_eq!(i.dim(), 1);
        assert!(i.contains_vec(&[0, 1, 0, 0]));
        assert!(u.contains(&i));
        assert!(v.contains(&i));
    }

    #[test]
    fn inverse_table() {
        for p in [2u8, 3, 5, 7] {
            for a in 1..p {
                assert_eq!((a as u16 * inv_mod(a, p) as u16) % p as u16, 1);
            }
        }
    }
}
