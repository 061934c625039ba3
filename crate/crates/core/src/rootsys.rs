//! Root systems in simple-root coordinates: roots, lengths, supports,
//! dominance, and the Weyl dimension formula.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::dynkin::DynkinType;
use crate::error::{Error, Result};

/// A root as its integer coefficient vector over the simple roots.
/// `Ord` is the lexicographic order on coordinates, which is the total
/// order fixed for basis labelling and structure-constant signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Indices of simple roots appearing with nonzero coefficient.
    pub fn support(&self) -> BTreeSet<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Length {
    Short,
    Long,
}

/// A weight in fundamental-weight coordinates (integral).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Weight {
        let mut c = vec![0; rank];
        c[i] = 1;
        Weight(c)
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

/// Which Borel subgroup dominance is measured against. `BMinus` flips the
/// sign of every pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BorelSide {
    B,
    BMinus,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub ty: DynkinType,
    pub cartan: Vec<Vec<i64>>,
    /// Half squared lengths of the simple roots.
    pub d: Vec<i64>,
    pub simple_roots: Vec<Root>,
    /// All positive roots in lexicographic order.
    pub positive_roots: Vec<Root>,
    root_set: BTreeSet<Root>,
    lengths: BTreeMap<Root, Length>,
}

impl RootSystem {
    /// Shared instance per type; construction is pure, so callers on hot
    /// paths reuse one copy.
    pub fn shared(ty: DynkinType) -> Arc<RootSystem> {
        static CACHE: OnceLock<Mutex<HashMap<DynkinType, Arc<RootSystem>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry(ty)
            .or_insert_with(|| Arc::new(RootSystem::new(ty)))
            .clone()
    }

    pub fn new(ty: DynkinType) -> RootSystem {
        let n = ty.rank;
        let cartan = ty.cartan_matrix();
        let d = ty.simple_root_d();
        let simple_roots: Vec<Root> = (0..n)
            .map(|i| {
                let mut c = vec![0; n];
                c[i] = 1;
                Root(c)
            })
            .collect();

        // Close the simple roots under the simple reflections.
        let mut set: BTreeSet<Root> = simple_roots.iter().cloned().collect();
        let mut queue: Vec<Root> = simple_roots.clone();
        while let Some(r) = queue.pop() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| r.0[j] * cartan[i][j]).sum();
                let mut c = r.0.clone();
                c[i] -= pairing;
                let refl = Root(c);
                if set.insert(refl.clone()) {
                    queue.push(refl);
                }
            }
        }

        let mut positive_roots: Vec<Root> =
            set.iter().filter(|r| r.is_positive()).cloned().collect();
        positive_roots.sort();
        assert_eq!(set.len(), 2 * positive_roots.len(), "pure sign closure");
        assert_eq!(positive_roots.len(), ty.positive_root_count());

        let max_normsq = 2 * ty.multiple_edge().unwrap_or(1) as i64;
        let mut lengths = BTreeMap::new();
        for r in &set {
            let nsq = normsq(&cartan, &d, r);
            // Simply laced systems mark every root long by convention.
            let len = if nsq == max_normsq { Length::Long } else { Length::Short };
            lengths.insert(r.clone(), len);
        }

        RootSystem {
            ty,
            cartan,
            d,
            simple_roots,
            positive_roots,
            root_set: set,
            lengths,
        }
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.root_set.contains(r)
    }

    pub fn roots(&self) -> impl Iterator<Item = &Root> {
        self.root_set.iter()
    }

    pub fn length(&self, r: &Root) -> Length {
        self.lengths[r]
    }

    pub fn is_short(&self, r: &Root) -> bool {
        self.length(r) == Length::Short
    }

    pub fn normsq(&self, r: &Root) -> i64 {
        normsq(&self.cartan, &self.d, r)
    }

    /// Pairing of a root against the i-th simple coroot.
    pub fn pairing_simple_coroot(&self, r: &Root, i: usize) -> i64 {
        (0..self.rank()).map(|j| r.0[j] * self.cartan[i][j]).sum()
    }

    /// Coefficients of the coroot of `r` over the simple coroots.
    pub fn coroot_coords(&self, r: &Root) -> Vec<i64> {
        let nsq = self.normsq(r);
        r.0.iter()
            .zip(&self.d)
            .map(|(c, d)| {
                let num = c * 2 * d;
                assert_eq!(num % nsq, 0, "coroot integrality");
                num / nsq
            })
            .collect()
    }

    /// Express a root in fundamental-weight coordinates.
    pub fn root_as_weight(&self, r: &Root) -> Weight {
        Weight((0..self.rank()).map(|i| self.pairing_simple_coroot(r, i)).collect())
    }

    /// Positive roots whose support contains the given simple root.
    pub fn positive_supported_at(&self, alpha: usize) -> Vec<Root> {
        self.positive_roots
            .iter()
            .filter(|r| r.0[alpha] != 0)
            .cloned()
            .collect()
    }

    /// Index of a positive root in the lexicographic listing.
    pub fn positive_index(&self, r: &Root) -> Option<usize> {
        self.positive_roots.binary_search(r).ok()
    }
}

fn normsq(cartan: &[Vec<i64>], d: &[i64], r: &Root) -> i64 {
    let n = d.len();
    let mut s = 0;
    for i in 0..n {
        for j in 0..n {
            s += r.0[i] * r.0[j] * d[i] * cartan[i][j];
        }
    }
    s
}

/// Set of simple roots appearing in `r`; errors when `r` is not a root of
/// the system.
pub fn support(rs: &RootSystem, r: &Root) -> Result<BTreeSet<usize>> {
    if !rs.is_root(r) {
        return Err(Error::NotARoot(format!("{:?}", r.0)));
    }
    Ok(r.support())
}

pub fn is_dominant(ty: DynkinType, lambda: &Weight, side: BorelSide) -> bool {
    assert_eq!(lambda.0.len(), ty.rank, "weight rank");
    match side {
        BorelSide::B => lambda.0.iter().all(|&c| c >= 0),
        BorelSide::BMinus => lambda.0.iter().all(|&c| c <= 0),
    }
}

/// Dimension of the characteristic-zero Weyl module of highest weight
/// `lambda` (dominant with respect to B).
pub fn weyl_dim(ty: DynkinType, lambda: &Weight) -> Result<u128> {
    if !is_dominant(ty, lambda, BorelSide::B) {
        return Err(Error::NotDominant);
    }
    let rs = RootSystem::new(ty);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for gamma in &rs.positive_roots {
        let mut a = 0i64;
        let mut b = 0i64;
        for j in 0..ty.rank {
            a += (lambda.0[j] + 1) * gamma.0[j] * rs.d[j];
            b += gamma.0[j] * rs.d[j];
        }
        num *= BigInt::from(a);
        den *= BigInt::from(b);
    }
    let (q, r) = num_integer_div_rem(&num, &den);
    assert!(r == BigInt::from(0), "Weyl product divides exactly");
    let (_, digits) = q.to_u64_digits();
    let mut val: u128 = 0;
    for d in digits.iter().rev() {
        val = (val << 64) | *d as u128;
    }
    Ok(val)
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}
