//! Brute-force exact verifiers: restricted closures, normalizers, centers,
//! submodule generation, the exotic-subalgebra enumeration, and the
//! incidence checks for diagonalizable group scheme actions over truncated
//! rings.


use std::collections::BTreeSet;

use crate::chevalley::ModularLieAlgebra;
use crate::error::{Error, Result};
use crate::fp::{neg_mod, FpMat, Subspace};
use crate::parabolic::ParabolicSpec;

// ---------------------------------------------------------------------------
// Generic bracket access

pub type SparseVec = Vec<(usize, u8)>;

/// Anything with a bilinear bracket given on a fixed basis.
pub trait BracketAlgebra {
    fn dim(&self) -> usize;
    fn p(&self) -> u8;
    fn bracket_basis(&self, i: usize, j: usize) -> SparseVec;

    fn bracket_vec(&self, x: &[u8], y: &[u8]) -> Vec<u8> {
        let p = self.p() as u16;
        let mut out = vec![0u8; self.dim()];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = (xi as u16 * yj as u16) % p;
                for (k, v) in self.bracket_basis(i, j) {
                    out[k] = ((out[k] as u16 + c * v as u16) % p) as u8;
                }
            }
        }
        out
    }
}

impl BracketAlgebra for ModularLieAlgebra {
    fn dim(&self) -> usize {
        self.dim
    }
    fn p(&self) -> u8 {
        self.p
    }
    fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        ModularLieAlgebra::bracket_basis(self, i, j).clone()
    }
}

/// Matrix describing reduction against an echelon subspace: w lies in the
/// subspace exactly when the matrix kills it.
fn reduction_matrix(s: &Subspace) -> FpMat {
    let n = s.ambient;
    let mut m = FpMat::zeros(s.p, n, n);
    for j in 0..n {
        let mut unit = vec![0u8; n];
        unit[j] = 1;
        let red = reduce_against(s, &unit);
        for i in 0..n {
            m[(i, j)] = red[i];
        }
    }
    m
}

fn reduce_against(s: &Subspace, v: &[u8]) -> Vec<u8> {
    let p = s.p;
    let mut v: Vec<u8> = v.to_vec();
    for row in s.basis() {
        let pc = row.iter().position(|&c| c != 0).unwrap();
        if v[pc] != 0 {
            let f = v[pc];
            for c in 0..v.len() {
                let t = (v[c] as i16 - f as i16 * row[c] as i16).rem_euclid(p as i16);
                v[c] = t as u8;
            }
        }
    }
    v
}

/// {x : [x, S] contained in S}, by the kernel of a stacked linear map.
pub fn normalizer<A: BracketAlgebra>(alg: &A, s: &Subspace) -> Subspace {
    let n = alg.dim();
    let basis = s.basis();
    if basis.is_empty() {
        return Subspace::full(alg.p(), n);
    }
    let proj = reduction_matrix(s);
    let mut stacked = FpMat::zeros(alg.p(), n * basis.len(), n);
    for (bi, sv) in basis.iter().enumerate() {
        for i in 0..n {
            let mut unit = vec![0u8; n];
            unit[i] = 1;
            let br = alg.bracket_vec(&unit, sv);
            let red = proj.mul_vec(&br);
            for r in 0..n {
                stacked[(bi * n + r, i)] = red[r];
            }
        }
    }
    Subspace::from_vectors(alg.p(), n, stacked.kernel())
}

/// {x : [x, everything] = 0}.
pub fn center<A: BracketAlgebra>(alg: &A) -> Subspace {
    let n = alg.dim();
    let mut stacked = FpMat::zeros(alg.p(), n * n, n);
    for j in 0..n {
        for i in 0..n {
            let mut unit = vec![0u8; n];
            unit[i] = 1;
            let mut ej = vec![0u8; n];
            ej[j] = 1;
            let br = alg.bracket_vec(&unit, &ej);
            for r in 0..n {
                stacked[(j * n + r, i)] = br[r];
            }
        }
    }
    Subspace::from_vectors(alg.p(), n, stacked.kernel())
}

/// Least subspace containing S closed under brackets and the p-operation.
pub fn p_closure(l: &ModularLieAlgebra, s: &Subspace) -> Subspace {
    let mut cur = s.clone();
    loop {
        let basis = cur.basis();
        let mut vs = basis.clone();
        for (i, a) in basis.iter().enumerate() {
            for b in basis.iter().skip(i + 1) {
                vs.push(l.bracket(a, b).unwrap());
            }
            vs.push(l.p_power(a).unwrap());
        }
        let next = Subspace::from_vectors(l.p, l.dim, vs);
        if next.dim() == cur.dim() {
            return next;
        }
        cur = next;
    }
}

/// A subspace spanned by basis vectors is a restricted subalgebra exactly
/// when basis brackets and basis p-th powers stay inside.
fn is_restricted_subalgebra(l: &ModularLieAlgebra, s: &Subspace) -> bool {
    let basis = s.basis();
    for (i, a) in basis.iter().enumerate() {
        if !s.contains_vec(&l.p_power(a).unwrap()) {
            return false;
        }
        for b in basis.iter().skip(i + 1) {
            if !s.contains_vec(&l.bracket(a, b).unwrap()) {
                return false;
            }
        }
    }
    true
}

/// Result of the torus-stable enumeration above the reduced parabolic at
/// the short simple root of G2 in characteristic two.
pub struct ExoticEnumeration {
    /// Proper restricted subalgebras strictly above the parabolic, as
    /// subsets of the five remaining negative root lines.
    pub found: Vec<(Vec<crate::rootsys::Root>, Subspace)>,
    pub candidates_checked: usize,
}

/// Enumerate all torus-stable subspaces strictly between Lie P^{a1} and
/// the full algebra of G2 at p = 2, keeping the restricted subalgebras.
/// Full subspace enumeration is out of reach; torus stability means spans
/// of root lines, a 2^5 sweep.
pub fn enumerate_exotic_subalgebras() -> Result<ExoticEnumeration> {
    let ty = crate::dynkin::DynkinType::parse("G2")?;
    let l = crate::chevalley::build_lie_algebra(ty, 2)?;
    let parab = l.parabolic_subalgebra(&ParabolicSpec::reduced(ty, 2, &[0])?)?;
    let lines: Vec<crate::rootsys::Root> = l
        .rs
        .positive_supported_at(0)
        .into_iter()
        .map(|r| r.neg())
        .collect();
    assert_eq!(lines.len(), 5);

    let mut found = Vec::new();
    let mut checked = 0;
    for mask in 1u32..(1 << lines.len()) {
        if mask == (1 << lines.len()) - 1 {
            continue; // the full algebra is not a proper candidate
        }
        checked += 1;
        let mut vs = parab.basis();
        let mut subset = Vec::new();
        for (i, root) in lines.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let mut v = vec![0u8; l.dim];
                v[l.basis_index(root).unwrap()] = 1;
                vs.push(v);
                subset.push(root.clone());
            }
        }
        let cand = Subspace::from_vectors(2, l.dim, vs);
        if is_restricted_subalgebra(&l, &cand) {
            found.push((subset, cand));
        }
    }
    Ok(ExoticEnumeration { found, candidates_checked: checked })
}

// ---------------------------------------------------------------------------
// Matrix Lie algebras and linear actions

/// A family of matrices closed under commutators, with the bracket table
/// expressed over the family itself.
pub struct MatrixLieAlgebra {
    pub p: u8,
    pub n: usize,
    pub mats: Vec<FpMat>,
    table: Vec<Vec<SparseVec>>,
}

impl MatrixLieAlgebra {
    pub fn new(p: u8, mats: Vec<FpMat>) -> MatrixLieAlgebra {
        let n = mats.first().map_or(0, |m| m.rows);
        let k = mats.len();
        // columns: flattened basis matrices
        let mut basis = FpMat::zeros(p, n * n, k);
        for (c, m) in mats.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    basis[(i * n + j, c)] = m[(i, j)];
                }
            }
        }
        assert_eq!(basis.rank(), k, "independent basis");
        let mut table = vec![vec![Vec::new(); k]; k];
        for a in 0..k {
            for b in 0..k {
                if a == b {
                    continue;
                }
                let ab = mats[a].mul(&mats[b]);
                let ba = mats[b].mul(&mats[a]);
                let mut comm = vec![0u8; n * n];
                for i in 0..n {
                    for j in 0..n {
                        comm[i * n + j] =
                            ((ab[(i, j)] as i16 - ba[(i, j)] as i16).rem_euclid(p as i16)) as u8;
                    }
                }
                let coords = basis.solve(&comm).expect("family closed under commutators");
                table[a][b] = coords
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, c)| c != 0)
                    .collect();
            }
        }
        MatrixLieAlgebra { p, n, mats, table }
    }
}

impl BracketAlgebra for MatrixLieAlgebra {
    fn dim(&self) -> usize {
        self.mats.len()
    }
    fn p(&self) -> u8 {
        self.p
    }
    fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        self.table[i][j].clone()
    }
}

/// Matrices acting on a module, each one per algebra basis element.
pub struct LinearAction {
    pub p: u8,
    pub module_dim: usize,
    pub mats: Vec<FpMat>,
}

impl LinearAction {
    pub fn new(p: u8, mats: Vec<FpMat>) -> LinearAction {
        let module_dim = mats.first().map_or(0, |m| m.rows);
        for m in &mats {
            assert_eq!((m.rows, m.cols), (module_dim, module_dim));
        }
        LinearAction { p, module_dim, mats }
    }

    /// Least subspace containing v stable under every action matrix;
    /// worklist sweep with an early exit once the whole module is reached.
    pub fn submodule_generated(&self, v: &[u8]) -> Subspace {
        let mut cur = Subspace::from_vectors(self.p, self.module_dim, vec![v.to_vec()]);
        let mut frontier = cur.basis();
        while !frontier.is_empty() && cur.dim() < self.module_dim {
            let mut fresh = Vec::new();
            for b in &frontier {
                for m in &self.mats {
                    let w = m.mul_vec(b);
                    if !cur.contains_vec(&w) {
                        fresh.push(w);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            let mut vs = cur.basis();
            vs.extend(fresh.iter().cloned());
            let next = Subspace::from_vectors(self.p, self.module_dim, vs);
            // new echelon rows outside the old space feed the next round
            frontier = next
                .basis()
                .into_iter()
                .filter(|r| !cur.contains_vec(r))
                .collect();
            cur = next;
        }
        cur
    }
}

/// Signed wedge normalization: e_a ^ e_b for a != b.
fn wedge_sign(a: usize, b: usize) -> Option<(usize, usize, i8)> {
    match a.cmp(&b) {
        std::cmp::Ordering::Less => Some((a, b, 1)),
        std::cmp::Ordering::Greater => Some((b, a, -1)),
        std::cmp::Ordering::Equal => None,
    }
}

pub fn wedge_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    // position of (a,b) in the lexicographic listing of pairs
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

pub fn wedge_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            v.push((a, b));
        }
    }
    v
}

/// Induced action on the second wedge power; checks the derivation
/// identity against matrix commutators on all basis pairs.
pub fn wedge_square_action(action: &LinearAction) -> LinearAction {
    let n = action.module_dim;
    let p = action.p;
    let pairs = wedge_pairs(n);
    let wn = pairs.len();
    let lift = |m: &FpMat| -> FpMat {
        let mut out = FpMat::zeros(p, wn, wn);
        for (col, &(i, j)) in pairs.iter().enumerate() {
            // A(e_i ^ e_j) = (A e_i) ^ e_j + e_i ^ (A e_j)
            for r in 0..n {
                let c1 = m[(r, i)];
                if c1 != 0 {
                    if let Some((a, b, s)) = wedge_sign(r, j) {
                        let idx = wedge_index(n, a, b);
                        let val = if s > 0 { c1 } else { neg_mod(c1, p) };
                        out[(idx, col)] = (out[(idx, col)] + val) % p;
                    }
                }
                let c2 = m[(r, j)];
                if c2 != 0 {
                    if let Some((a, b, s)) = wedge_sign(i, r) {
                        let idx = wedge_index(n, a, b);
                        let val = if s > 0 { c2 } else { neg_mod(c2, p) };
                        out[(idx, col)] = (out[(idx, col)] + val) % p;
                    }
                }
            }
        }
        out
    };
    let mats: Vec<FpMat> = action.mats.iter().map(lift).collect();
    // derivation identity: lift of a commutator is the commutator of lifts
    for (a, ma) in action.mats.iter().enumerate() {
        for (b, mb) in action.mats.iter().enumerate().skip(a + 1) {
            let mut comm = FpMat::zeros(p, n, n);
            let ab = ma.mul(mb);
            let ba = mb.mul(ma);
            for i in 0..n {
                for j in 0..n {
                    comm[(i, j)] =
                        ((ab[(i, j)] as i16 - ba[(i, j)] as i16).rem_euclid(p as i16)) as u8;
                }
            }
            let lhs = lift(&comm);
            let wab = mats[a].mul(&mats[b]);
            let wba = mats[b].mul(&mats[a]);
            let mut rhs = FpMat::zeros(p, wn, wn);
            for i in 0..wn {
                for j in 0..wn {
                    rhs[(i, j)] =
                        ((wab[(i, j)] as i16 - wba[(i, j)] as i16).rem_euclid(p as i16)) as u8;
                }
            }
            assert_eq!(lhs, rhs, "wedge action respects brackets");
        }
    }
    LinearAction::new(p, mats)
}

/// Basis of {A : b(x, Ax) = 0 for all x}, the Lie algebra of the
/// orthogonal group of a (possibly degenerate) symmetric bilinear form.
pub fn orthogonal_matrix_basis(p: u8, gram: &FpMat) -> Vec<FpMat> {
    let n = gram.rows;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            // b(e_i, A e_j) + b(e_j, A e_i) = 0, and the diagonal alone for i = j
            let mut row = vec![0u8; n * n];
            for k in 0..n {
                row[k * n + j] = (row[k * n + j] + gram[(i, k)]) % p;
                if i != j {
                    row[k * n + i] = (row[k * n + i] + gram[(j, k)]) % p;
                }
            }
            rows.push(row);
        }
    }
    let m = FpMat::from_rows(p, &rows);
    m.kernel()
        .into_iter()
        .map(|flat| unflatten(p, n, &flat))
        .collect()
}

/// Basis of {A : b(Ax, y) + b(x, Ay) = 0} for an alternating form.
pub fn symplectic_matrix_basis(p: u8, gram: &FpMat) -> Vec<FpMat> {
    let n = gram.rows;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut row = vec![0i16; n * n];
            for k in 0..n {
                row[k * n + i] += gram[(k, j)] as i16;
                row[k * n + j] += gram[(i, k)] as i16;
            }
            rows.push(row.into_iter().map(|v| (v.rem_euclid(p as i16)) as u8).collect());
        }
    }
    let m = FpMat::from_rows(p, &rows);
    m.kernel()
        .into_iter()
        .map(|flat| unflatten(p, n, &flat))
        .collect()
}

fn unflatten(p: u8, n: usize, flat: &[u8]) -> FpMat {
    let mut m = FpMat::zeros(p, n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = flat[i * n + j];
        }
    }
    m
}

// ---------------------------------------------------------------------------
// The second-wedge orthogonal model and its adjoint quotient

/// Lie algebra structure on the second wedge power of a space with a
/// symmetric bilinear form:
/// [u^v, x^y] = b(v,x) u^y - b(u,x) v^y - b(v,y) u^x + b(u,y) v^x.
pub struct Lambda2Algebra {
    pub p: u8,
    pub n: usize,
    pub gram: FpMat,
    pub pairs: Vec<(usize, usize)>,
    table: Vec<Vec<SparseVec>>,
}

impl Lambda2Algebra {
    pub fn new(p: u8, gram: FpMat) -> Lambda2Algebra {
        let n = gram.rows;
        let pairs = wedge_pairs(n);
        let wn = pairs.len();
        let mut table = vec![vec![Vec::new(); wn]; wn];
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(k, l)) in pairs.iter().enumerate() {
                if a == b {
                    continue;
                }
                let mut acc = vec![0i16; wn];
                let mut add = |u: usize, v: usize, coef: i16| {
                    if let Some((x, y, s)) = wedge_sign(u, v) {
                        acc[wedge_index(n, x, y)] += coef * s as i16;
                    }
                };
                add(i, l, gram[(j, k)] as i16);
                add(j, l, -(gram[(i, k)] as i16));
                add(i, k, -(gram[(j, l)] as i16));
                add(j, k, gram[(i, l)] as i16);
                table[a][b] = acc
                    .into_iter()
                    .enumerate()
                    .filter_map(|(idx, c)| {
                        let c = c.rem_euclid(p as i16) as u8;
                        if c == 0 { None } else { Some((idx, c)) }
                    })
                    .collect();
            }
        }
        let alg = Lambda2Algebra { p, n, gram, pairs, table };
        alg.verify_jacobi();
        alg
    }

    pub fn wedge(&self, a: usize, b: usize) -> Vec<u8> {
        let mut v = vec![0u8; self.pairs.len()];
        let (x, y, s) = wedge_sign(a, b).expect("distinct indices");
        v[wedge_index(self.n, x, y)] = if s > 0 { 1 } else { neg_mod(1, self.p) };
        v
    }

    fn verify_jacobi(&self) {
        let wn = self.pairs.len();
        let p = self.p as i32;
        for a in 0..wn {
            for b in a + 1..wn {
                for c in b + 1..wn {
                    let mut acc = vec![0i32; wn];
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for &(m, v) in &self.table[x][y] {
                            for &(k, w) in &self.table[m][z] {
                                acc[k] += v as i32 * w as i32;
                            }
                        }
                    }
                    assert!(
                        acc.iter().all(|&v| v.rem_euclid(p) == 0),
                        "wedge bracket satisfies Jacobi"
                    );
                }
            }
        }
    }
}

impl BracketAlgebra for Lambda2Algebra {
    fn dim(&self) -> usize {
        self.pairs.len()
    }
    fn p(&self) -> u8 {
        self.p
    }
    fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        self.table[i][j].clone()
    }
}

/// Gram matrix of the split symmetric form pairing coordinate i with
/// coordinate n-1-i.
pub fn split_gram(p: u8, n: usize) -> FpMat {
    let mut g = FpMat::zeros(p, n, n);
    for i in 0..n {
        g[(i, n - 1 - i)] = 1;
    }
    g
}

/// The adjoint orthogonal model at p = 2: the second wedge extended by the
/// half-pairs similitude element, modulo the central dual form. Dimension
/// matches the second wedge itself.
pub struct AdjointOrthogonalAlgebra {
    pub lambda2: Lambda2Algebra,
    /// Ambient dimension of the underlying space (2m).
    pub n: usize,
    /// Basis: all wedges except the dropped pair representative, then the
    /// similitude element.
    pub basis_wedges: Vec<usize>,
    dropped: usize,
    omega: Vec<u8>,
    table: Vec<Vec<SparseVec>>,
}

impl AdjointOrthogonalAlgebra {
    /// Split form on k^n, n = 2m, p = 2.
    pub fn new(n: usize) -> AdjointOrthogonalAlgebra {
        assert!(n % 2 == 0 && n >= 6);
        let p = 2u8;
        let lambda2 = Lambda2Algebra::new(p, split_gram(p, n));
        let wn = lambda2.pairs.len();
        let m = n / 2;
        // the invariant bivector dual to the form
        let mut omega = vec![0u8; wn];
        for i in 0..m {
            omega[wedge_index(n, i, n - 1 - i)] = 1;
        }
        // it is central, so the quotient bracket is well defined
        for j in 0..wn {
            let mut ej = vec![0u8; wn];
            ej[j] = 1;
            assert!(
                lambda2.bracket_vec(&omega, &ej).iter().all(|&c| c == 0),
                "dual bivector is central"
            );
        }
        let dropped = wedge_index(n, m - 1, m);
        let basis_wedges: Vec<usize> = (0..wn).filter(|&w| w != dropped).collect();
        let dim = basis_wedges.len() + 1;

        // delta acts as the identity on the first half of the coordinates
        let delta_on = |i: usize| -> bool { i < m };
        let delta_bracket_wedge = |(a, b): (usize, usize)| -> Vec<u8> {
            // p = 2: [delta, e_a^e_b] = (d_a + d_b + 1) e_a^e_b
            let coef = (delta_on(a) as u8 + delta_on(b) as u8 + 1) % 2;
            let mut v = vec![0u8; wn];
            if coef != 0 {
                v[wedge_index(n, a, b)] = 1;
            }
            v
        };

        let reduce = |mut v: Vec<u8>| -> Vec<u8> {
            if v[dropped] != 0 {
                for (k, &c) in omega.iter().enumerate() {
                    if c != 0 {
                        v[k] ^= 1;
                    }
                }
            }
            debug_assert_eq!(v[dropped], 0);
            v
        };
        let project = |v: &[u8]| -> Vec<u8> {
            let mut out = vec![0u8; dim];
            for (idx, &w) in basis_wedges.iter().enumerate() {
                out[idx] = v[w];
            }
            out
        };

        let mut table = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                if a == b {
                    continue;
                }
                let raw = if a < basis_wedges.len() && b < basis_wedges.len() {
                    lambda2
                        .bracket_basis(basis_wedges[a], basis_wedges[b])
                        .iter()
                        .fold(vec![0u8; wn], |mut acc, &(k, v)| {
                            acc[k] = (acc[k] + v) % 2;
                            acc
                        })
                } else if a < basis_wedges.len() {
                    // [w, delta] = [delta, w] at p = 2
                    delta_bracket_wedge(lambda2.pairs[basis_wedges[a]])
                } else if b < basis_wedges.len() {
                    delta_bracket_wedge(lambda2.pairs[basis_wedges[b]])
                } else {
                    vec![0u8; wn]
                };
                let v = project(&reduce(raw));
                table[a][b] = v
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, c)| c != 0)
                    .collect();
            }
        }
        let alg = AdjointOrthogonalAlgebra { lambda2, n, basis_wedges, dropped, omega, table };
        alg.verify_jacobi();
        alg
    }

    /// Image of a wedge vector (coordinates over all pairs) in the
    /// quotient basis.
    pub fn project_wedge(&self, v: &[u8]) -> Vec<u8> {
        let mut v = v.to_vec();
        if v[self.dropped] != 0 {
            for (k, &c) in self.omega.iter().enumerate() {
                if c != 0 {
                    v[k] ^= 1;
                }
            }
        }
        let mut out = vec![0u8; self.dim()];
        for (idx, &w) in self.basis_wedges.iter().enumerate() {
            out[idx] = v[w];
        }
        out
    }

    fn verify_jacobi(&self) {
        let dim = self.dim();
        for a in 0..dim {
            for b in a + 1..dim {
                for c in b + 1..dim {
                    let mut acc = vec![0u8; dim];
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for &(m, v) in &self.table[x][y] {
                            for &(k, w) in &self.table[m][z] {
                                acc[k] = (acc[k] + v * w) % 2;
                            }
                        }
                    }
                    assert!(acc.iter().all(|&v| v == 0), "adjoint model satisfies Jacobi");
                }
            }
        }
    }
}

impl BracketAlgebra for AdjointOrthogonalAlgebra {
    fn dim(&self) -> usize {
        self.basis_wedges.len() + 1
    }
    fn p(&self) -> u8 {
        2
    }
    fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        self.table[i][j].clone()
    }
}

/// Dimensions in the rank-four adjoint orthogonal model: the span of
/// v0 ^ e_j has the lifted subgroup's Lie algebra as its normalizer.
pub struct OrthogonalNormalizerReport {
    pub ambient_dim: usize,
    pub lie_n_dim: usize,
    pub normalizer_dim: usize,
}

/// Normalizer of the height-one kernel inside the adjoint model of the
/// even orthogonal algebra on k^{2n+2}; the stabilized vector is
/// v0 = e_0 + e_{2n+1} and the kernel is v0 ^ (middle coordinates).
pub fn orthogonal_normalizer_report(n: usize) -> OrthogonalNormalizerReport {
    let amb = 2 * n + 2;
    let alg = AdjointOrthogonalAlgebra::new(amb);
    let wn = alg.lambda2.pairs.len();
    let mut gens = Vec::new();
    for j in 1..=2 * n {
        // v0 ^ e_j = e_0 ^ e_j + e_j ^ e_{2n+1}
        let mut v = vec![0u8; wn];
        v[wedge_index(amb, 0, j)] ^= 1;
        v[wedge_index(amb, j, amb - 1)] ^= 1;
        gens.push(alg.project_wedge(&v));
    }
    let lie_n = Subspace::from_vectors(2, alg.dim(), gens);
    let norm = normalizer(&alg, &lie_n);
    OrthogonalNormalizerReport {
        ambient_dim: alg.dim(),
        lie_n_dim: lie_n.dim(),
        normalizer_dim: norm.dim(),
    }
}

// ---------------------------------------------------------------------------
// Truncated rings k[t]/(t^{2^{m+1}} - 1) at p = 2 and incidence scenarios

/// Element of `F_2[u]/(u^e)` with u = t - 1; t^e = 1 forces e a power of two
/// here. Units are exactly the elements with constant term one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct REl {
    pub e: usize,
    pub c: Vec<u8>,
}

impl REl {
    pub fn zero(e: usize) -> REl {
        REl { e, c: vec![0; e] }
    }
    pub fn one(e: usize) -> REl {
        let mut c = vec![0; e];
        c[0] = 1;
        REl { e, c }
    }
    pub fn u_pow(e: usize, k: usize) -> REl {
        let mut c = vec![0; e];
        if k < e {
            c[k] = 1;
        }
        REl { e, c }
    }
    /// t = 1 + u.
    pub fn t(e: usize) -> REl {
        let mut c = vec![0; e];
        c[0] = 1;
        if e > 1 {
            c[1] = 1;
        }
        REl { e, c }
    }
    /// s = t^{2^m} = 1 + u^{2^m}, the order-two element.
    pub fn s(e: usize, m: u32) -> REl {
        let mut c = vec![0; e];
        c[0] = 1;
        let k = 1usize << m;
        if k < e {
            c[k] = 1;
        }
        REl { e, c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    pub fn val(&self) -> usize {
        self.c.iter().position(|&x| x != 0).unwrap_or(self.e)
    }
    pub fn is_unit(&self) -> bool {
        self.c[0] == 1
    }

    pub fn add(&self, other: &REl) -> REl {
        REl {
            e: self.e,
            c: self.c.iter().zip(&other.c).map(|(a, b)| a ^ b).collect(),
        }
    }

    pub fn mul(&self, other: &REl) -> REl {
        let mut c = vec![0u8; self.e];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                if b != 0 && i + j < self.e {
                    c[i + j] ^= 1;
                }
            }
        }
        REl { e: self.e, c }
    }

    /// Ring Frobenius iterated m times: x -> x^{2^m}.
    pub fn frobenius(&self, m: u32) -> REl {
        let mut out = self.clone();
        for _ in 0..m {
            out = out.mul(&out);
        }
        out
    }

    pub fn inv(&self) -> REl {
        assert!(self.is_unit(), "inverse of a non-unit");
        // 1 + n with n nilpotent: geometric series
        let mut n = self.clone();
        n.c[0] = 0;
        let mut acc = REl::one(self.e);
        let mut term = n.clone();
        while !term.is_zero() {
            acc = acc.add(&term);
            term = term.mul(&n);
        }
        acc
    }

    /// a / b when val(a) >= val(b); b nonzero.
    pub fn div_exact(&self, b: &REl) -> Option<REl> {
        if self.is_zero() {
            return Some(REl::zero(self.e));
        }
        let v = b.val();
        if v == self.e || self.val() < v {
            return None;
        }
        let shift = |x: &REl| -> REl {
            let mut c = vec![0u8; x.e];
            for i in v..x.e {
                c[i - v] = x.c[i];
            }
            REl { e: x.e, c }
        };
        let bu = shift(b);
        Some(shift(self).mul(&bu.inv()))
    }
}

/// Matrix over the truncated ring.
#[derive(Debug, Clone)]
pub struct RMat {
    pub e: usize,
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<REl>,
}

impl RMat {
    pub fn zeros(e: usize, rows: usize, cols: usize) -> RMat {
        RMat { e, rows, cols, a: vec![REl::zero(e); rows * cols] }
    }
    pub fn identity(e: usize, n: usize) -> RMat {
        let mut m = RMat::zeros(e, n, n);
        for i in 0..n {
            m.a[i * n + i] = REl::one(e);
        }
        m
    }
    pub fn get(&self, i: usize, j: usize) -> &REl {
        &self.a[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: REl) {
        self.a[i * self.cols + j] = v;
    }
    pub fn from_columns(e: usize, n: usize, cols: &[Vec<REl>]) -> RMat {
        let mut m = RMat::zeros(e, n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n);
            for i in 0..n {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[REl]) -> Vec<REl> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = REl::zero(self.e);
                for j in 0..self.cols {
                    s = s.add(&self.get(i, j).mul(&v[j]));
                }
                s
            })
            .collect()
    }

    /// Smith-style diagonalization over the chain ring, with transforms:
    /// returns (u, v, d) with u * self * v = d diagonal.
    pub fn smith(&self) -> (RMat, RMat, RMat) {
        let e = self.e;
        let mut d = self.clone();
        let mut u = RMat::identity(e, self.rows);
        let mut v = RMat::identity(e, self.cols);
        let steps = self.rows.min(self.cols);
        for k in 0..steps {
            // global minimal valuation pivot in the remaining block
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..self.rows {
                for j in k..self.cols {
                    let val = d.get(i, j).val();
                    if val < e && best.map_or(true, |(_, _, bv)| val < bv) {
                        best = Some((i, j, val));
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            // clear row and column k; entries are divisible by the pivot
            loop {
                let mut dirty = false;
                for i in 0..self.rows {
                    if i != k && !d.get(i, k).is_zero() {
                        let q = d.get(i, k).div_exact(d.get(k, k)).expect("pivot divides");
                        d.row_op(i, k, &q);
                        u.row_op(i, k, &q);
                        dirty = true;
                    }
                }
                for j in 0..self.cols {
                    if j != k && !d.get(k, j).is_zero() {
                        let q = d.get(k, j).div_exact(d.get(k, k)).expect("pivot divides");
                        d.col_op(j, k, &q);
                        v.col_op(j, k, &q);
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }
        }
        (u, v, d)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
    }
    /// row_i += q * row_k (char 2: same as subtraction)
    fn row_op(&mut self, i: usize, k: usize, q: &REl) {
        for c in 0..self.cols {
            let t = self.get(i, c).add(&q.mul(self.get(k, c)));
            self.set(i, c, t);
        }
    }
    fn col_op(&mut self, j: usize, k: usize, q: &REl) {
        for r in 0..self.rows {
            let t = self.get(r, j).add(&q.mul(self.get(r, k)));
            self.set(r, j, t);
        }
    }

    /// One solution of self * x = b over the chain ring, if any.
    pub fn solve(&self, b: &[REl]) -> Option<Vec<REl>> {
        assert_eq!(b.len(), self.rows);
        let (u, v, d) = self.smith();
        let c = u.mul_vec(b);
        let mut y = vec![REl::zero(self.e); self.cols];
        for i in 0..self.rows {
            let di = if i < self.cols { d.get(i, i).clone() } else { REl::zero(self.e) };
            if di.is_zero() {
                if !c[i].is_zero() {
                    return None;
                }
            } else {
                y[i] = c[i].div_exact(&di)?;
            }
        }
        Some(v.mul_vec(&y))
    }

    /// Generators of the kernel submodule {x : self * x = 0}.
    pub fn kernel(&self) -> Vec<Vec<REl>> {
        let e = self.e;
        let (_, v, d) = self.smith();
        let mut gens = Vec::new();
        for j in 0..self.cols {
            let dj = if j < self.rows { d.get(j, j).clone() } else { REl::zero(e) };
            let scale = if dj.is_zero() {
                REl::one(e)
            } else if dj.val() > 0 {
                REl::u_pow(e, e - dj.val())
            } else {
                continue; // unit pivot: no kernel contribution
            };
            let mut y = vec![REl::zero(e); self.cols];
            y[j] = scale;
            gens.push(v.mul_vec(&y));
        }
        gens
    }
}

/// Does x lie in the module generated by the columns?
pub fn in_span(e: usize, n: usize, gens: &[Vec<REl>], x: &[REl]) -> bool {
    RMat::from_columns(e, n, gens).solve(x).is_some()
}

/// Generators of {v in span(gens) : constraint(v) = 0} for one linear
/// functional given by coefficient vector `f`.
pub fn constrain_span(e: usize, n: usize, gens: &[Vec<REl>], f: &[REl]) -> Vec<Vec<REl>> {
    let g = RMat::from_columns(e, n, gens);
    // row vector f * G as a 1 x k matrix
    let mut fg = RMat::zeros(e, 1, gens.len());
    for (j, col) in gens.iter().enumerate() {
        let mut s = REl::zero(e);
        for i in 0..n {
            s = s.add(&f[i].mul(&col[i]));
        }
        fg.set(0, j, s);
    }
    fg.kernel().into_iter().map(|coef| g.mul_vec(&coef)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessScenario {
    /// Frobenius-twisted incidence between isotropic subspaces in the odd
    /// orthogonal space.
    BnFrobenius { n: usize, m: u32 },
    /// The seven-dimensional orthogonal model with the line against the
    /// two-plane of null octonions.
    G2So7 { m: u32 },
    /// The very special twist in the even orthogonal ambient.
    BnVerySpecial { n: usize, m: u32 },
}

/// Whether the diagonalizable action at the given order preserves the
/// incidence at the base point; `at_identity` evaluates at t = 1 instead
/// of the generator.
pub fn mu_incidence_check(w: WitnessScenario, at_identity: bool) -> Result<bool> {
    match w {
        WitnessScenario::BnFrobenius { n, m } => {
            if n < 2 || m < 1 {
                return Err(Error::BadScenario(format!("need n >= 2, m >= 1; got n={n}, m={m}")));
            }
            let e = 1usize << (m + 1);
            let amb = 2 * n + 1;
            let t = if at_identity { REl::one(e) } else { REl::t(e) };
            // W0: the isotropic n-space x0 = x1 = x_{2n}, x_{n+1}.. = 0
            let mut w1 = vec![REl::zero(e); amb];
            w1[0] = t; // the action scales the radical coordinate
            w1[1] = REl::one(e);
            w1[2 * n] = REl::one(e);
            let mut gens = vec![frob_vec(&w1, m)];
            for j in 2..=n {
                gens.push(frob_vec(&unit(e, amb, j), m));
            }
            // E0 basis vector with equal 0, 1, 2n coordinates
            let mut e0 = vec![REl::zero(e); amb];
            e0[0] = REl::one(e);
            e0[1] = REl::one(e);
            e0[2 * n] = REl::one(e);
            Ok(in_span(e, amb, &gens, &e0))
        }
        WitnessScenario::G2So7 { m } => {
            if m < 1 {
                return Err(Error::BadScenario(format!("need m >= 1; got m={m}")));
            }
            let e = 1usize << (m + 1);
            let amb = 7;
            let line = g2_twisted_line(m, at_identity);
            // E0 = <e2+e3+e4, e0+e1+e5+e6>
            let mut g1 = vec![REl::zero(e); amb];
            for i in [2, 3, 4] {
                g1[i] = REl::one(e);
            }
            let mut g2 = vec![REl::zero(e); amb];
            for i in [0, 1, 5, 6] {
                g2[i] = REl::one(e);
            }
            Ok(in_span(e, amb, &[g1, g2], &line))
        }
        WitnessScenario::BnVerySpecial { n, m } => {
            if n < 2 || m < 1 {
                return Err(Error::BadScenario(format!("need n >= 2, m >= 1; got n={n}, m={m}")));
            }
            let e = 1usize << (m + 1);
            let amb = 2 * n + 2;
            let t = if at_identity { REl::one(e) } else { REl::t(e) };
            // isotropic (n+1)-space <e0+e1, e2..en, e_{2n}+e_{2n+1}> moved
            // by the action scaling coordinate 0 by t and 2n+1 by 1/t
            let mut g1 = vec![REl::zero(e); amb];
            g1[0] = t.clone();
            g1[1] = REl::one(e);
            let mut g2 = vec![REl::zero(e); amb];
            g2[2 * n] = REl::one(e);
            g2[2 * n + 1] = t.inv();
            let mut gens = vec![frob_vec(&g1, m), frob_vec(&g2, m)];
            for j in 2..=n {
                gens.push(frob_vec(&unit(e, amb, j), m));
            }
            // restrict to the perp of v0 = e0 + e_{2n+1}: x0 = x_{2n+1}
            let mut f = vec![REl::zero(e); amb];
            f[0] = REl::one(e);
            f[2 * n + 1] = REl::one(e);
            let constrained = constrain_span(e, amb, &gens, &f);
            // E0 basis vector v0 + e1 + e_{2n}
            let mut e0 = vec![REl::zero(e); amb];
            for i in [0, 1, 2 * n, 2 * n + 1] {
                e0[i] = REl::one(e);
            }
            Ok(in_span(e, amb, &constrained, &e0))
        }
    }
}

/// Coordinates of the moved, Frobenius-twisted line generator in the
/// seven-dimensional model: (0, 0, s, 1, s, 0, 0) at the group generator.
pub fn g2_twisted_line(m: u32, at_identity: bool) -> Vec<REl> {
    let e = 1usize << (m + 1);
    let t = if at_identity { REl::one(e) } else { REl::t(e) };
    let mut l = vec![REl::zero(e); 7];
    l[2] = t.clone();
    l[3] = REl::one(e);
    l[4] = t.inv();
    frob_vec(&l, m)
}

fn unit(e: usize, n: usize, i: usize) -> Vec<REl> {
    let mut v = vec![REl::zero(e); n];
    v[i] = REl::one(e);
    v
}

fn frob_vec(v: &[REl], m: u32) -> Vec<REl> {
    v.iter().map(|x| x.frobenius(m)).collect()
}

// ---------------------------------------------------------------------------

/// The quotient of the full matrix algebra by the symplectic similitude
/// algebra, as a module over the symplectic matrices: the Lie-level
/// comparison module between the automorphism groups of projective space
/// and of the symplectic flag variety. Returns the action together with
/// the images of the elementary matrices (the weight vectors of the
/// quotient).
pub fn gl_mod_gsp_action(p: u8, n: usize) -> (LinearAction, Vec<Vec<u8>>) {
    let dim = 2 * n;
    let gram = split_gram(p, dim);
    // gsp = {A : A^T J + J A = lambda J}: solve with lambda as an extra
    // unknown, then drop it.
    let unknowns = dim * dim + 1;
    let mut rows = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            // (A^T J + J A)_{ij} - lambda J_{ij} = 0
            let mut row = vec![0i16; unknowns];
            for k in 0..dim {
                row[k * dim + i] += gram[(k, j)] as i16;
                row[k * dim + j] += gram[(i, k)] as i16;
            }
            row[dim * dim] -= gram[(i, j)] as i16;
            rows.push(row.into_iter().map(|v| v.rem_euclid(p as i16) as u8).collect());
        }
    }
    let m = FpMat::from_rows(p, &rows);
    let gsp = Subspace::from_vectors(
        p,
        dim * dim,
        m.kernel().into_iter().map(|mut v| {
            v.truncate(dim * dim);
            v
        }),
    );
    // coordinates of the quotient: reduction against gsp leaves exactly
    // the non-pivot coordinates free
    let pivot_cols: BTreeSet<usize> = gsp
        .basis()
        .iter()
        .map(|r| r.iter().position(|&c| c != 0).unwrap())
        .collect();
    let free: Vec<usize> = (0..dim * dim).filter(|c| !pivot_cols.contains(c)).collect();
    let w_dim = free.len();
    let project = |v: &[u8]| -> Vec<u8> {
        let red = reduce_against(&gsp, v);
        free.iter().map(|&c| red[c]).collect()
    };

    let sp = symplectic_matrix_basis(p, &gram);
    let mut mats = Vec::new();
    for x in &sp {
        let mut rho = FpMat::zeros(p, w_dim, w_dim);
        for (col, &fc) in free.iter().enumerate() {
            // representative elementary matrix for the col-th coordinate
            let (r, c) = (fc / dim, fc % dim);
            let mut rep = FpMat::zeros(p, dim, dim);
            rep[(r, c)] = 1;
            let xa = x.mul(&rep);
            let ax = rep.mul(x);
            let mut comm = vec![0u8; dim * dim];
            for i in 0..dim {
                for j in 0..dim {
                    comm[i * dim + j] =
                        ((xa[(i, j)] as i16 - ax[(i, j)] as i16).rem_euclid(p as i16)) as u8;
                }
            }
            let out = project(&comm);
            for rr in 0..w_dim {
                rho[(rr, col)] = out[rr];
            }
        }
        mats.push(rho);
    }
    let weight_vectors: Vec<Vec<u8>> = (0..dim * dim)
        .map(|fc| {
            let mut v = vec![0u8; dim * dim];
            v[fc] = 1;
            project(&v)
        })
        .filter(|v| v.iter().any(|&c| c != 0))
        .collect();
    (LinearAction::new(p, mats), weight_vectors)
}

/// Gram matrix of the odd orthogonal form y0^2 + sum y_i y_{2n+1-i} on
/// k^{2n+1}: coordinate 0 is the radical of the polarization.
pub fn odd_orthogonal_gram(p: u8, n: usize) -> FpMat {
    let amb = 2 * n + 1;
    let mut g = FpMat::zeros(p, amb, amb);
    for i in 1..=n {
        g[(i, amb - i)] = 1;
        g[(amb - i, i)] = 1;
    }
    g
}

/// Gram matrix of the seven-dimensional form x3^2 + x2 x4 + x1 x5 + x0 x6.
pub fn so7_gram(p: u8) -> FpMat {
    let mut g = FpMat::zeros(p, 7, 7);
    for (a, b) in [(0, 6), (1, 5), (2, 4)] {
        g[(a, b)] = 1;
        g[(b, a)] = 1;
    }
    g
}
