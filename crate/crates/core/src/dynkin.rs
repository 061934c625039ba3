//! Simple Dynkin types A-G with the classical rank bounds.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok || rank > MAX_RANK {
            return Err(Error::UnsupportedType(format!(
                "{}{}",
                family.letter(),
                rank
            )));
        }
        Ok(DynkinType { family, rank })
    }

    /// A type used only as a descriptor (display and dimension counts),
    /// exempt from the working rank cap. Automorphism groups of large
    /// classical flag varieties land here.
    pub fn descriptor(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::UnsupportedType(format!(
                "{}{}",
                family.letter(),
                rank
            )));
        }
        Ok(DynkinType { family, rank })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let fam = match chars.next() {
            Some('A') | Some('a') => Family::A,
            Some('B') | Some('b') => Family::B,
            Some('C') | Some('c') => Family::C,
            Some('D') | Some('d') => Family::D,
            Some('E') | Some('e') => Family::E,
            Some('F') | Some('f') => Family::F,
            Some('G') | Some('g') => Family::G,
            _ => return Err(Error::UnsupportedType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnsupportedType(s.to_string()))?;
        DynkinType::new(fam, rank)
    }

    /// Simply laced: one root length.
    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Multiplicity of the multiple edge of the diagram, when present.
    pub fn multiple_edge(self) -> Option<u8> {
        match self.family {
            Family::B | Family::C | Family::F => Some(2),
            Family::G => Some(3),
            _ => None,
        }
    }

    /// The very special isogeny exists exactly when the diagram has an edge
    /// of multiplicity equal to the characteristic.
    pub fn has_very_special_isogeny(self, p: u8) -> bool {
        self.multiple_edge() == Some(p)
    }

    /// Type of the target of the very special isogeny (the dual diagram).
    pub fn dual_type(self) -> Option<DynkinType> {
        match self.family {
            Family::B => Some(DynkinType { family: Family::C, rank: self.rank }),
            Family::C => Some(DynkinType { family: Family::B, rank: self.rank }),
            Family::F | Family::G => Some(self),
            _ => None,
        }
    }

    /// Cartan matrix, entry (i, j) = pairing of alpha_j against the i-th
    /// simple coroot. Bourbaki numbering throughout.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            c[i][i] = 2;
        }
        let chain_edge = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            Family::A => {
                for i in 0..n - 1 {
                    chain_edge(&mut c, i, i + 1);
                }
            }
            Family::B => {
                for i in 0..n - 1 {
                    chain_edge(&mut c, i, i + 1);
                }
                // alpha_n short: its coroot pairs to -2 against alpha_{n-1}
                c[n - 1][n - 2] = -2;
            }
            Family::C => {
                for i in 0..n - 1 {
                    chain_edge(&mut c, i, i + 1);
                }
                // alpha_n long: alpha_{n-1}'s coroot pairs to -2 against it
                c[n - 2][n - 1] = -2;
            }
            Family::D => {
                for i in 0..n - 2 {
                    chain_edge(&mut c, i, i + 1);
                }
                chain_edge(&mut c, n - 3, n - 1);
            }
            Family::E => {
                // chain 1-3-4-5-6(-7-8), branch node 2 attached to 4
                let chain: &[usize] = match n {
                    6 => &[0, 2, 3, 4, 5],
                    7 => &[0, 2, 3, 4, 5, 6],
                    _ => &[0, 2, 3, 4, 5, 6, 7],
                };
                for w in chain.windows(2) {
                    chain_edge(&mut c, w[0], w[1]);
                }
                chain_edge(&mut c, 1, 3);
            }
            Family::F => {
                chain_edge(&mut c, 0, 1);
                chain_edge(&mut c, 1, 2);
                chain_edge(&mut c, 2, 3);
                c[2][1] = -2; // alpha_3 short
            }
            Family::G => {
                c[0][1] = -3; // alpha_1 short, alpha_2 long
                c[1][0] = -1;
            }
        }
        c
    }

    /// Half the squared length of each simple root, normalized so short
    /// roots have d = 1 and long roots d = multiple edge (1 in the simply
    /// laced case).
    pub fn simple_root_d(self) -> Vec<i64> {
        let n = self.rank;
        match self.family {
            Family::A | Family::D | Family::E => vec![1; n],
            Family::B => {
                let mut d = vec![2; n];
                d[n - 1] = 1;
                d
            }
            Family::C => {
                let mut d = vec![1; n];
                d[n - 1] = 2;
                d
            }
            Family::F => vec![2, 2, 1, 1],
            Family::G => vec![1, 3],
        }
    }

    /// dim of the adjoint group: |Phi| + rank.
    pub fn adjoint_dim(self) -> u64 {
        (2 * self.positive_root_count() + self.rank) as u64
    }

    /// |Phi^+| by the classical count.
    pub fn positive_root_count(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_bounds() {
        assert!(DynkinType::new(Family::A, 1).is_ok());
        assert!(DynkinType::new(Family::B, 1).is_err());
        assert!(DynkinType::new(Family::D, 2).is_err());
        assert!(DynkinType::new(Family::D, 3).is_ok());
        assert!(DynkinType::new(Family::E, 5).is_err());
        assert!(DynkinType::new(Family::G, 3).is_err());
        assert!(DynkinType::new(Family::A, 9).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["A1", "B4", "C3", "D5", "E7", "F4", "G2"] {
            let t = DynkinType::parse(s).unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert!(DynkinType::parse("H3").is_err());
        assert!(DynkinType::parse("B").is_err());
    }

    #[test]
    fn gram_symmetry() {
        for s in ["A3", "B4", "C4", "D4", "E6", "F4", "G2"] {
            let t = DynkinType::parse(s).unwrap();
            let c = t.cartan_matrix();
            let d = t.simple_root_d();
            for i in 0..t.rank {
                for j in 0..t.rank {
                    assert_eq!(d[i] * c[i][j], d[j] * c[j][i], "{s} at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn very_special_existence() {
        let g2 = DynkinType::parse("G2").unwrap();
        let b3 = DynkinType::parse("B3").unwrap();
        let a3 = DynkinType::parse("A3").unwrap();
        assert!(g2.has_very_special_isogeny(3));
        assert!(!g2.has_very_special_isogeny(2));
        assert!(b3.has_very_special_isogeny(2));
        assert!(!a3.has_very_special_isogeny(2));
        assert_eq!(b3.dual_type().unwrap().to_string(), "C3");
    }
}
