use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use super::hermite::hermite_column_form;
use super::matrix::{IntMatrix, JsonInt};
use super::smith::{smith_normal_form, unimodular_inverse};
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^r + Z/d1 + ... + Z/dt` in invariant
/// factor form: every `d_i > 1` and `d_i | d_{i+1}`.
///
/// Canonical generators are ordered torsion first (in chain order) and free
/// last. Elements are coordinate vectors on those generators with torsion
/// coordinates reduced into `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(&[order.into()])
    }

    /// Canonical form of `Z/n1 + Z/n2 + ...`, where an order of 0 stands for
    /// a copy of `Z` and orders of ±1 vanish.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let snf = smith_normal_form(&IntMatrix::diagonal(orders));
        Self::from_smith_diagonal(orders.len(), &snf.diagonal)
    }

    /// Builds a group from a free rank and torsion list that is assumed to be
    /// canonical already; fails otherwise.
    pub fn try_new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let g = FgAbGroup { free_rank, torsion };
        g.check_canonical()?;
        Ok(g)
    }

    fn check_canonical(&self) -> Result<()> {
        for d in &self.torsion {
            if *d <= BigInt::one() {
                return Err(Error::invalid(format!("torsion coefficient {} must exceed 1", d)));
            }
        }
        for w in self.torsion.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::invalid(format!(
                    "torsion coefficients {} and {} break the divisibility chain",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    /// Cokernel of a map `Z^m -> Z^rows` whose Smith diagonal is `diagonal`.
    fn from_smith_diagonal(rows: usize, diagonal: &[BigInt]) -> Self {
        let torsion: Vec<BigInt> = diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect();
        let nonzero = diagonal.iter().filter(|d| !d.is_zero()).count();
        FgAbGroup {
            free_rank: rows - nonzero,
            torsion,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn torsion_subgroup(&self) -> FgAbGroup {
        FgAbGroup {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    /// Number of canonical generators.
    pub fn generator_count(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of canonical generator `i`, 0 for free generators.
    pub fn generator_order(&self, i: usize) -> BigInt {
        self.torsion.get(i).cloned().unwrap_or_default()
    }

    pub fn generator_orders(&self) -> Vec<BigInt> {
        (0..self.generator_count()).map(|i| self.generator_order(i)).collect()
    }

    /// Diagonal relation matrix on the canonical generators.
    pub fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.generator_orders())
    }

    /// Reduces a coordinate vector to its normal form.
    pub fn reduce(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.generator_count() {
            return Err(Error::shape(format!(
                "element has {} coordinates, group has {} generators",
                v.len(),
                self.generator_count()
            )));
        }
        Ok(v.iter()
            .enumerate()
            .map(|(i, x)| match self.torsion.get(i) {
                Some(d) => x.mod_floor(d),
                None => x.clone(),
            })
            .collect())
    }

    pub fn identity_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.generator_count()]
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Result<Vec<BigInt>> {
        let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if a.len() != b.len() {
            return Err(Error::shape("adding elements of different length"));
        }
        self.reduce(&s)
    }

    pub fn neg(&self, a: &[BigInt]) -> Result<Vec<BigInt>> {
        let s: Vec<BigInt> = a.iter().map(|x| -x).collect();
        self.reduce(&s)
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Result<Vec<BigInt>> {
        self.add(a, &self.neg(b)?)
    }

    pub fn scale(&self, a: &[BigInt], k: &BigInt) -> Result<Vec<BigInt>> {
        let s: Vec<BigInt> = a.iter().map(|x| x * k).collect();
        self.reduce(&s)
    }

    /// Canonical form of `self + other`.
    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let orders: Vec<BigInt> = self
            .generator_orders()
            .into_iter()
            .chain(other.generator_orders())
            .collect();
        Self::from_cyclic_orders(&orders)
    }
}

/// Cokernel of `M : Z^cols -> Z^rows`, i.e. `Z^rows / im M`.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    let snf = smith_normal_form(m);
    FgAbGroup::from_smith_diagonal(m.rows(), &snf.diagonal)
}

/// A cokernel together with coordinates: `projection` sends `Z^rows` onto the
/// canonical generators (reduce afterwards) and the columns of `lifts` are
/// representatives of those generators.
#[derive(Clone, Debug)]
pub struct CokernelPresentation {
    pub group: FgAbGroup,
    pub projection: IntMatrix,
    pub lifts: IntMatrix,
}

impl CokernelPresentation {
    pub fn new(m: &IntMatrix) -> Self {
        let rows = m.rows();
        let snf = smith_normal_form(m);
        let u_inv = unimodular_inverse(&snf.u).expect("Smith transform is unimodular");
        let d = |i: usize| snf.diagonal.get(i).cloned().unwrap_or_default();
        let torsion_idx: Vec<usize> = (0..rows).filter(|&i| d(i) > BigInt::one()).collect();
        let free_idx: Vec<usize> = (0..rows).filter(|&i| d(i).is_zero()).collect();
        let idx: Vec<usize> = torsion_idx.iter().chain(&free_idx).copied().collect();
        let all_rows: Vec<usize> = (0..rows).collect();
        CokernelPresentation {
            group: FgAbGroup::from_smith_diagonal(rows, &snf.diagonal),
            projection: snf.u.select(&idx, &all_rows),
            lifts: u_inv.select(&all_rows, &idx),
        }
    }

    /// Canonical coordinates of the class of `v`.
    pub fn project(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let c = self.projection.mul_vec(v)?;
        self.group.reduce(&c)
    }
}

/// Basis (as columns) of the integer kernel lattice of `M`, in column Hermite
/// form so the answer is canonical.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let cols = m.cols();
    let all_rows: Vec<usize> = (0..cols).collect();
    let kernel_cols: Vec<usize> = (rank..cols).collect();
    let raw = snf.v.select(&all_rows, &kernel_cols);
    hermite_column_form(&raw).lattice_basis()
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{}", d)));
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for FgAbGroup {
    type Err = Error;

    /// Parses the printed form, e.g. `"Z^2 + Z/2 + Z/4"` or `"0"`. Summands
    /// may come in any order and need not be canonical.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(FgAbGroup::zero());
        }
        let mut orders = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let bad = || Error::invalid(format!("cannot parse group summand {:?}", part));
            if part == "Z" {
                orders.push(BigInt::zero());
            } else if let Some(r) = part.strip_prefix("Z^") {
                let r: usize = r.trim().parse().map_err(|_| bad())?;
                orders.extend(std::iter::repeat_n(BigInt::zero(), r));
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() || d.is_negative() {
                    return Err(bad());
                }
                orders.push(d);
            } else if part == "0" {
                continue;
            } else {
                return Err(bad());
            }
        }
        Ok(FgAbGroup::from_cyclic_orders(&orders))
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    free: usize,
    torsion: Vec<TorsionEntry>,
}

/// Torsion coefficients serialize as JSON numbers when they fit in `u64` and
/// as decimal strings otherwise.
struct TorsionEntry(BigInt);

impl Serialize for TorsionEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => serializer.serialize_u64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for TorsionEntry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        JsonInt::deserialize(deserializer).map(|j| TorsionEntry(j.0))
    }
}

impl Serialize for FgAbGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GroupJson {
            free: self.free_rank,
            torsion: self.torsion.iter().cloned().map(TorsionEntry).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FgAbGroup {
    /// Accepts `{"free": r, "torsion": [...]}` or the printed string form.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Object(GroupJson),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(de::Error::custom),
            Repr::Object(g) => {
                let mut orders: Vec<BigInt> = g.torsion.into_iter().map(|t| t.0).collect();
                if orders.iter().any(|d| d.is_zero() || d.is_negative()) {
                    return Err(de::Error::custom("torsion coefficients must be positive"));
                }
                orders.extend(std::iter::repeat_n(BigInt::zero(), g.free));
                Ok(FgAbGroup::from_cyclic_orders(&orders))
            }
        }
    }
}
