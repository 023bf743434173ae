use num_bigint::BigInt;

use super::group::{cokernel, kernel_basis, FgAbGroup};
use super::hermite::{hermite_column_form, solve_with, HermiteForm};
use super::hom::AbHom;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// The subgroup of `ambient` generated by the columns of `generators`
/// (coordinates on the canonical generators of `ambient`).
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: FgAbGroup,
    generators: IntMatrix,
}

impl Subgroup {
    pub fn new(ambient: FgAbGroup, generators: IntMatrix) -> Result<Self> {
        let generators = if generators.cols() == 0 {
            IntMatrix::zeros(ambient.generator_count(), 0)
        } else {
            generators
        };
        if generators.rows() != ambient.generator_count() {
            return Err(Error::shape(format!(
                "subgroup generators have {} coordinates, {} has {} generators",
                generators.rows(),
                ambient,
                ambient.generator_count()
            )));
        }
        Ok(Subgroup { ambient, generators })
    }

    pub fn whole(ambient: &FgAbGroup) -> Self {
        Subgroup {
            ambient: ambient.clone(),
            generators: IntMatrix::identity(ambient.generator_count()),
        }
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    /// Generators together with the ambient relations, as one lattice.
    fn lattice(&self) -> HermiteForm {
        let m = self
            .generators
            .hcat(&self.ambient.relation_matrix())
            .expect("row counts agree");
        hermite_column_form(&m)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        solve_with(&self.lattice(), v).is_some()
    }

    pub fn is_contained_in(&self, other: &Subgroup) -> bool {
        let lattice = other.lattice();
        (0..self.generators.cols()).all(|j| solve_with(&lattice, &self.generators.column(j)).is_some())
    }

    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && self.is_contained_in(other) && other.is_contained_in(self)
    }

    /// Isomorphism type of the subgroup.
    pub fn structure(&self) -> FgAbGroup {
        let s = self.generators.cols();
        let stacked = self
            .generators
            .hcat(&self.ambient.relation_matrix())
            .expect("row counts agree");
        let k = kernel_basis(&stacked);
        let top: Vec<usize> = (0..s).collect();
        let all: Vec<usize> = (0..k.cols()).collect();
        cokernel(&k.select(&top, &all))
    }

    /// Index in `ambient` when finite.
    pub fn index(&self) -> Option<BigInt> {
        let quotient = cokernel(
            &self
                .generators
                .hcat(&self.ambient.relation_matrix())
                .expect("row counts agree"),
        );
        quotient.order()
    }

    pub fn image_under(&self, f: &AbHom) -> Result<Subgroup> {
        if f.source() != &self.ambient {
            return Err(Error::shape(format!(
                "map from {} applied to a subgroup of {}",
                f.source(),
                self.ambient
            )));
        }
        Subgroup::new(f.target().clone(), f.matrix().mul_checked(&self.generators)?)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Subgroup {}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn subgroup_structure_and_equality() {
        let z = g("Z");
        let two = Subgroup::new(z.clone(), IntMatrix::from_rows(&[[2]])).unwrap();
        let four_six = Subgroup::new(z.clone(), IntMatrix::from_rows(&[[4, 6]])).unwrap();
        assert!(two.same_as(&four_six));
        assert_eq!(two.structure(), g("Z"));
        assert_eq!(two.index(), Some(BigInt::from(2)));

        let z4 = g("Z/4");
        let sub = Subgroup::new(z4.clone(), IntMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(sub.structure(), g("Z/2"));
        let zero = Subgroup::new(z4.clone(), IntMatrix::from_rows(&[[4]])).unwrap();
        assert_eq!(zero.structure(), FgAbGroup::zero());
        assert!(zero.is_contained_in(&sub));
        assert!(!sub.is_contained_in(&zero));
    }

    #[test]
    fn image_under_hom() {
        let f = AbHom::scalar(&g("Z"), 3);
        let img = Subgroup::whole(&g("Z")).image_under(&f).unwrap();
        assert_eq!(img.index(), Some(BigInt::from(3)));
        assert!(img.contains(&[BigInt::from(-9)]));
        assert!(!img.contains(&[BigInt::from(4)]));
    }
}
