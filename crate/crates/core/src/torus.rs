//! Covering maps of the torus `T^k = R^k / Z^k` given by integer matrices.
//!
//! `H^n(T^k) = Λ^n Z^k` and the map induced by `R` is `Λ^n R`, so every row of
//! the groupoid table comes from `I - Λ^n R`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::abelian::{cokernel, exterior_power, kernel_basis, AbHom, FgAbGroup, IntMatrix};
use crate::cochain::{groupoid_cohomology, GammaCohomology};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusEndo {
    k: usize,
    r: IntMatrix,
    /// `|det R|`, the number of sheets.
    degree: BigInt,
}

impl TorusEndo {
    /// Rejects singular and non-square matrices; `|det R| = 1` is accepted
    /// with a warning since the map is then a homeomorphism.
    pub fn new(r: IntMatrix) -> Result<Self> {
        if !r.is_square() || r.rows() == 0 {
            return Err(Error::shape(format!(
                "torus map needs a nonempty square matrix, got {}x{}",
                r.rows(),
                r.cols()
            )));
        }
        let det = r.determinant()?;
        if det.is_zero() {
            return Err(Error::invalid("det R = 0: the matrix does not define a covering map"));
        }
        let degree = det.abs();
        if degree < BigInt::from(2) {
            log::warn!("|det R| = 1: the map is a homeomorphism, not a proper covering");
        }
        Ok(TorusEndo { k: r.rows(), r, degree })
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.r
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    /// `(H^n(T^k), σ*_n)` for `n = 0..=k`.
    pub fn cohomology_data(&self) -> Vec<TorusDegree> {
        (0..=self.k)
            .map(|n| {
                let sigma_star = exterior_power(&self.r, n).expect("degree within range");
                TorusDegree {
                    n,
                    group: FgAbGroup::free(sigma_star.rows()),
                    sigma_star,
                }
            })
            .collect()
    }

    pub fn sigma_star(&self) -> Vec<AbHom> {
        self.cohomology_data()
            .into_iter()
            .map(|d| AbHom::new(d.group.clone(), d.group, d.sigma_star).expect("free groups"))
            .collect()
    }

    /// `H^n(Γ)` for `n = 0..=k+1` and `Br(Γ) = H^3(Γ)`.
    ///
    /// Each row is computed twice, from the matrices `I - Λ^n R` directly and
    /// through [`groupoid_cohomology`]; a disagreement is an internal error.
    pub fn groupoid_cohomology(&self) -> Result<TorusTable> {
        let data = self.cohomology_data();
        let sigma = self.sigma_star();
        let one_minus: Vec<IntMatrix> = data.iter().map(|d| d.sigma_star.one_minus()).collect::<Result<_>>()?;
        let direct = |n: usize| -> GammaCohomology {
            let ker = one_minus
                .get(n)
                .map(|m| FgAbGroup::free(kernel_basis(m).cols()))
                .unwrap_or_default();
            let coker = n
                .checked_sub(1)
                .and_then(|p| one_minus.get(p))
                .map(cokernel)
                .unwrap_or_default();
            GammaCohomology::from_ends(n, ker, coker)
        };
        let mut rows = Vec::with_capacity(self.k + 2);
        for n in 0..=self.k + 1 {
            let generic = groupoid_cohomology(&sigma, n)?;
            let d = direct(n);
            if generic != d {
                return Err(Error::internal(format!(
                    "degree {}: generic path gives {}, matrix path gives {}",
                    n,
                    generic.describe(),
                    d.describe()
                )));
            }
            if !generic.split_certified {
                return Err(Error::internal(format!("degree {} kernel part has torsion", n)));
            }
            rows.push(generic);
        }
        let brauer = match rows.get(3) {
            Some(b) => b.clone(),
            None => groupoid_cohomology(&sigma, 3)?,
        };
        Ok(TorusTable { rows, brauer })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusDegree {
    pub n: usize,
    /// `Z^{C(k,n)}`.
    pub group: FgAbGroup,
    /// `Λ^n R` on lexicographically ordered wedge basis vectors.
    pub sigma_star: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusTable {
    pub rows: Vec<GammaCohomology>,
    pub brauer: GammaCohomology,
}

impl TorusTable {
    /// `H^n(Γ)` as a group; every torus row splits.
    pub fn group(&self, n: usize) -> FgAbGroup {
        self.rows.get(n).and_then(|r| r.split_sum.clone()).unwrap_or_default()
    }

    pub fn brauer_group(&self) -> FgAbGroup {
        self.brauer.split_sum.clone().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    fn table(rows: &[Vec<i64>]) -> TorusTable {
        TorusEndo::new(IntMatrix::from_rows(rows))
            .unwrap()
            .groupoid_cohomology()
            .unwrap()
    }

    #[test]
    fn circle_doubling() {
        let t = table(&[vec![2]]);
        assert_eq!(t.group(0), g("Z"));
        assert_eq!(t.group(1), g("Z"));
        assert_eq!(t.group(2), g("0"));
        assert_eq!(t.brauer_group(), g("0"));
    }

    #[test]
    fn circle_degree_d() {
        for d in [-9i64, -4, -2, 2, 3, 7, 9] {
            let t = table(&[vec![d]]);
            assert_eq!(t.group(1), g("Z"));
            assert_eq!(t.group(2), FgAbGroup::cyclic((d - 1).abs()), "d = {}", d);
        }
    }

    #[test]
    fn two_dimensional_brauer() {
        let t = table(&[vec![2, 1], vec![0, 2]]);
        assert_eq!(t.rows.len(), 4);
        assert_eq!(t.brauer_group(), g("Z/3"));
    }

    #[test]
    fn scalar_three_dimensional() {
        let e = TorusEndo::new(IntMatrix::scalar(3, 2)).unwrap();
        let data = e.cohomology_data();
        assert_eq!(data[0].sigma_star, IntMatrix::identity(1));
        assert_eq!(data[1].sigma_star, IntMatrix::scalar(3, 2));
        assert_eq!(data[2].sigma_star, IntMatrix::scalar(3, 4));
        assert_eq!(data[3].sigma_star, IntMatrix::scalar(1, 8));
        let t = e.groupoid_cohomology().unwrap();
        assert_eq!(t.brauer_group(), g("Z/3 + Z/3 + Z/3"));
        assert_eq!(t.group(4), g("Z/7"));
    }

    #[test]
    fn infinite_brauer_group() {
        let t = table(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 2]]);
        assert!(t.brauer.kernel_part.free_rank() >= 1);
        assert!(t.brauer_group().free_rank() >= 1);
    }

    #[test]
    fn homeomorphisms_are_accepted() {
        let t = table(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(t.group(0), g("Z"));
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(TorusEndo::new(IntMatrix::from_rows(&[[1, 2], [2, 4]])).is_err());
        assert!(TorusEndo::new(IntMatrix::zeros(2, 3)).is_err());
        assert!(TorusEndo::new(IntMatrix::zeros(0, 0)).is_err());
    }
}
