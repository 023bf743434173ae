use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite group given by its multiplication table on `0 .. order`, with
/// `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, identity `0`, inverses and associativity.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::invalid("a group needs at least one element"));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(Error::shape(
                "multiplication table must be square with entries below the order",
            ));
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::invalid("element 0 is not the identity"));
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == 0 && table[b][a] == 0)
                .ok_or_else(|| Error::invalid(format!("element {} has no inverse", a)))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::invalid(format!(
                            "table is not associative at ({}, {}, {})",
                            a, b, c
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.to_string(),
            table,
            inverses,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cyclic group of order 0"));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(&format!("Z/{}", n), table)
    }

    /// Permutations of three letters, listed in lexicographic order.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("closed");
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Self::from_table("S3", table).expect("S3 is a group")
    }

    /// `G × H` with `(g, h)` stored as `g * |H| + h`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (n, m) = (g.order(), h.order());
        let table = (0..n * m)
            .map(|a| {
                (0..n * m)
                    .map(|b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m))
                    .collect()
            })
            .collect();
        Self::from_table(&format!("{}x{}", g.name, h.name), table).expect("products of groups are groups")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// Parses products of `Z/n` and `S3` factors joined by `x`, e.g. `Z/2xZ/3`.
impl FromStr for FiniteGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out: Option<FiniteGroup> = None;
        for part in s.split(['x', '×']).map(str::trim) {
            let factor = if part.eq_ignore_ascii_case("S3") {
                FiniteGroup::symmetric3()
            } else if let Some(n) = part.strip_prefix("Z/") {
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad cyclic order in {:?}", part)))?;
                FiniteGroup::cyclic(n)?
            } else {
                return Err(Error::invalid(format!("unknown group factor {:?}", part)));
            };
            out = Some(match out {
                None => factor,
                Some(g) => FiniteGroup::product(&g, &factor),
            });
        }
        out.ok_or_else(|| Error::invalid("empty group description"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructions() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.mul(3, 2), 1);
        assert_eq!(z4.inv(1), 3);
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let p: FiniteGroup = "Z/2xZ/3".parse().unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.is_abelian());
        assert!("Q8".parse::<FiniteGroup>().is_err());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table("bad", vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table("bad", vec![vec![1, 0], vec![0, 1]]).is_err());
    }
}
