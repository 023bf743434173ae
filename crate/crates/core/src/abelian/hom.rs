use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::group::{cokernel, kernel_basis, FgAbGroup};
use super::hermite::{hermite_column_form, solve_columns, solve_with};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A homomorphism between finitely generated abelian groups, written as an
/// integer matrix on canonical generators (`target.generator_count()` rows,
/// `source.generator_count()` columns).
///
/// Rows belonging to torsion generators of the target are kept reduced, so
/// two homomorphisms are equal iff their fields are.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AbHomJson")]
pub struct AbHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

#[derive(Deserialize)]
struct AbHomJson {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl TryFrom<AbHomJson> for AbHom {
    type Error = Error;

    fn try_from(raw: AbHomJson) -> Result<Self> {
        let shape = (raw.target.generator_count(), raw.source.generator_count());
        let matrix = raw.matrix.with_shape(shape.0, shape.1)?;
        AbHom::new(raw.source, raw.target, matrix)
    }
}

impl AbHom {
    /// Checks that the matrix sends relations of the source into relations of
    /// the target.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        let (m, n) = (source.generator_count(), target.generator_count());
        if matrix.shape() != (n, m) {
            return Err(Error::shape(format!(
                "homomorphism {} -> {} needs a {}x{} matrix, got {}x{}",
                source,
                target,
                n,
                m,
                matrix.rows(),
                matrix.cols()
            )));
        }
        let mut matrix = matrix;
        for j in 0..n {
            let e = target.generator_order(j);
            for i in 0..m {
                let d = source.generator_order(i);
                if d.is_zero() {
                    continue;
                }
                let image_of_relation = &d * &matrix[(j, i)];
                let ok = if e.is_zero() {
                    image_of_relation.is_zero()
                } else {
                    (&image_of_relation % &e).is_zero()
                };
                if !ok {
                    return Err(Error::invalid(format!(
                        "matrix is not well defined on {}: generator {} of order {} maps to a non-torsion-compatible coordinate {}",
                        source, i, d, matrix[(j, i)]
                    )));
                }
            }
            if !e.is_zero() {
                for i in 0..m {
                    matrix[(j, i)] = matrix[(j, i)].mod_floor(&e);
                }
            }
        }
        Ok(AbHom { source, target, matrix })
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        AbHom::new(g.clone(), g.clone(), IntMatrix::identity(g.generator_count())).expect("identity is well defined")
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        AbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.generator_count(), source.generator_count()),
        }
    }

    /// Multiplication by an integer on `g`.
    pub fn scalar(g: &FgAbGroup, c: impl Into<BigInt>) -> Self {
        AbHom::new(g.clone(), g.clone(), IntMatrix::scalar(g.generator_count(), c))
            .expect("scalar maps are well defined")
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let w = self.matrix.mul_vec(v)?;
        self.target.reduce(&w)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AbHom) -> Result<AbHom> {
        if first.target != self.source {
            return Err(Error::shape(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, first.source, first.target
            )));
        }
        AbHom::new(
            first.source.clone(),
            self.target.clone(),
            self.matrix.mul_checked(&first.matrix)?,
        )
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::shape("adding homomorphisms with different ends"));
        }
        AbHom::new(
            self.source.clone(),
            self.target.clone(),
            self.matrix.add_checked(&other.matrix)?,
        )
    }

    pub fn neg(&self) -> AbHom {
        AbHom::new(self.source.clone(), self.target.clone(), self.matrix.neg())
            .expect("negation preserves well-definedness")
    }

    /// `1 - self` for an endomorphism.
    pub fn one_minus(&self) -> Result<AbHom> {
        if !self.is_endomorphism() {
            return Err(Error::shape(format!(
                "1 - f needs an endomorphism, got {} -> {}",
                self.source, self.target
            )));
        }
        AbHom::identity(&self.source).add(&self.neg())
    }

    pub fn cokernel(&self) -> FgAbGroup {
        let presentation = self
            .matrix
            .hcat(&self.target.relation_matrix())
            .expect("row counts agree");
        cokernel(&presentation)
    }

    /// Generators (columns, source coordinates) of the preimage lattice
    /// `{x in Z^m : f(x) = 0 in the target}`, which contains the source
    /// relations.
    pub fn kernel_lattice(&self) -> IntMatrix {
        let m = self.source.generator_count();
        let stacked = self
            .matrix
            .hcat(&self.target.relation_matrix())
            .expect("row counts agree");
        let k = kernel_basis(&stacked);
        let top: Vec<usize> = (0..m).collect();
        let all: Vec<usize> = (0..k.cols()).collect();
        hermite_column_form(&k.select(&top, &all)).lattice_basis()
    }

    pub fn kernel(&self) -> Result<FgAbGroup> {
        let basis = self.kernel_lattice();
        let rel = self.source.relation_matrix();
        let coords = solve_columns(&basis, &rel)?
            .ok_or_else(|| Error::internal("source relations are not in the kernel lattice"))?;
        Ok(cokernel(&coords))
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()?.is_trivial())
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<AbHom> {
        if !self.is_surjective() || !self.is_injective()? {
            return Err(Error::invalid(format!(
                "homomorphism {} -> {} is not invertible",
                self.source, self.target
            )));
        }
        let m = self.source.generator_count();
        let n = self.target.generator_count();
        let stacked = self.matrix.hcat(&self.target.relation_matrix())?;
        let hf = hermite_column_form(&stacked);
        let mut inv = IntMatrix::zeros(m, n);
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            let x = solve_with(&hf, &e).ok_or_else(|| Error::internal("surjective map failed to hit a generator"))?;
            for i in 0..m {
                inv[(i, j)] = x[i].clone();
            }
        }
        AbHom::new(self.target.clone(), self.source.clone(), inv)
    }
}
