//! Free integer cochain complexes, their cohomology with induced maps, and
//! the assembly of `H^n(Γ)` from the long exact sequence
//!
//! ```text
//! ... -> H^{n-1}(X) --(1-σ*)--> H^{n-1}(X) -> H^n(Γ) -> H^n(X) --(1-σ*)--> H^n(X) -> ...
//! ```
//!
//! Each `H^n(Γ)` is an extension of `ker(1 - σ*_n)` by `coker(1 - σ*_{n-1})`.
//! Both ends are always reported; the direct sum is only asserted when the
//! extension is forced to split.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abelian::{
    hermite_column_form, kernel_basis, solve_columns, solve_with, AbHom, CokernelPresentation, FgAbGroup, HermiteForm,
    IntMatrix,
};
use crate::error::{Error, Result};

/// `0 -> C^0 -> C^1 -> ... -> C^N -> 0` with `C^n = Z^{ranks[n]}`.
///
/// `differentials[n]` is `d^n : C^n -> C^{n+1}`, a `ranks[n+1] x ranks[n]`
/// matrix; the top differential is zero and not stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexJson")]
pub struct CochainComplex {
    ranks: Vec<usize>,
    differentials: Vec<IntMatrix>,
}

#[derive(Deserialize)]
struct ComplexJson {
    ranks: Vec<usize>,
    differentials: Vec<IntMatrix>,
}

impl TryFrom<ComplexJson> for CochainComplex {
    type Error = Error;

    fn try_from(raw: ComplexJson) -> Result<Self> {
        if raw.differentials.len() + 1 != raw.ranks.len() {
            return Err(Error::shape(format!(
                "{} ranks need {} differentials, got {}",
                raw.ranks.len(),
                raw.ranks.len().saturating_sub(1),
                raw.differentials.len()
            )));
        }
        let differentials = raw
            .differentials
            .into_iter()
            .enumerate()
            .map(|(n, d)| d.with_shape(raw.ranks[n + 1], raw.ranks[n]))
            .collect::<Result<Vec<_>>>()?;
        CochainComplex::new(raw.ranks, differentials)
    }
}

impl CochainComplex {
    /// Validates shapes and `d^{n+1} d^n = 0`.
    pub fn new(ranks: Vec<usize>, differentials: Vec<IntMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::invalid("a cochain complex needs at least degree 0"));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(Error::shape(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                differentials.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.shape() != (ranks[n + 1], ranks[n]) {
                return Err(Error::shape(format!(
                    "d^{} must be {}x{}, got {}x{}",
                    n,
                    ranks[n + 1],
                    ranks[n],
                    d.rows(),
                    d.cols()
                )));
            }
        }
        for n in 0..differentials.len().saturating_sub(1) {
            if !differentials[n + 1].mul_checked(&differentials[n])?.is_zero() {
                return Err(Error::invalid(format!("d^{} d^{} is not zero", n + 1, n)));
            }
        }
        Ok(CochainComplex { ranks, differentials })
    }

    /// The complex with `C^n = 0` for `n = 0..=top`.
    pub fn zero(top: usize) -> Self {
        let ranks = vec![0; top + 1];
        let differentials = (0..top).map(|_| IntMatrix::zeros(0, 0)).collect();
        CochainComplex { ranks, differentials }
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `d^n`, with the zero map above the top degree.
    pub fn differential(&self, n: usize) -> IntMatrix {
        self.differentials
            .get(n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.rank(n + 1), self.rank(n)))
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.differentials
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.top_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: n,
                max: self.top_degree(),
            });
        }
        Ok(())
    }

    pub fn cohomology(&self, n: usize) -> Result<CohomologyGroup> {
        self.check_degree(n)?;
        let cocycles = kernel_basis(&self.differential(n));
        let solver = hermite_column_form(&cocycles);
        let coboundaries = if n == 0 {
            IntMatrix::zeros(self.rank(0), 0)
        } else {
            self.differentials[n - 1].clone()
        };
        let relations = solve_columns(&cocycles, &coboundaries)?
            .ok_or_else(|| Error::internal(format!("coboundaries in degree {} are not cocycles", n)))?;
        let presentation = CokernelPresentation::new(&relations);
        Ok(CohomologyGroup {
            degree: n,
            cocycles,
            solver,
            presentation,
        })
    }

    /// All cohomology groups `H^0 .. H^N`.
    pub fn cohomology_groups(&self) -> Result<Vec<FgAbGroup>> {
        (0..=self.top_degree())
            .map(|n| self.cohomology(n).map(|h| h.group().clone()))
            .collect()
    }
}

/// `H^n` of a complex with the data needed to push classes around: a basis
/// of the cocycles and coordinates on the canonical generators.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    cocycles: IntMatrix,
    solver: HermiteForm,
    presentation: CokernelPresentation,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.presentation.group
    }

    /// Columns are cocycles representing the canonical generators.
    pub fn generator_cocycles(&self) -> IntMatrix {
        self.cocycles
            .mul_checked(&self.presentation.lifts)
            .expect("shapes agree")
    }

    /// Canonical coordinates of the class of a cocycle.
    pub fn class_of(&self, cocycle: &[BigInt]) -> Result<Vec<BigInt>> {
        let y = solve_with(&self.solver, cocycle)
            .ok_or_else(|| Error::invalid(format!("vector is not a cocycle in degree {}", self.degree)))?;
        self.presentation.project(&y)
    }
}

/// Degreewise maps `f^n : source^n -> target^n` commuting with differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainMap {
    source: CochainComplex,
    target: CochainComplex,
    components: Vec<IntMatrix>,
}

impl CochainMap {
    pub fn new(source: CochainComplex, target: CochainComplex, components: Vec<IntMatrix>) -> Result<Self> {
        if source.top_degree() != target.top_degree() {
            return Err(Error::shape(format!(
                "complexes stop in different degrees ({} and {})",
                source.top_degree(),
                target.top_degree()
            )));
        }
        if components.len() != source.ranks.len() {
            return Err(Error::shape(format!(
                "{} components supplied for {} degrees",
                components.len(),
                source.ranks.len()
            )));
        }
        for (n, f) in components.iter().enumerate() {
            if f.shape() != (target.rank(n), source.rank(n)) {
                return Err(Error::shape(format!(
                    "f^{} must be {}x{}, got {}x{}",
                    n,
                    target.rank(n),
                    source.rank(n),
                    f.rows(),
                    f.cols()
                )));
            }
        }
        for n in 0..source.top_degree() {
            let left = target.differential(n).mul_checked(&components[n])?;
            let right = components[n + 1].mul_checked(&source.differential(n))?;
            if left != right {
                return Err(Error::invalid(format!(
                    "map does not commute with the differentials in degree {}",
                    n
                )));
            }
        }
        Ok(CochainMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let components = c.ranks.iter().map(|&r| IntMatrix::identity(r)).collect();
        CochainMap {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex) -> Result<Self> {
        let components = (0..source.ranks.len())
            .map(|n| IntMatrix::zeros(target.rank(n), source.rank(n)))
            .collect();
        CochainMap::new(source.clone(), target.clone(), components)
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn components(&self) -> &[IntMatrix] {
        &self.components
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &CochainMap) -> Result<CochainMap> {
        if first.target != self.source {
            return Err(Error::shape("cochain maps are not composable"));
        }
        let components = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(g, f)| g.mul_checked(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(CochainMap {
            source: first.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// Map on `H^n`.
    pub fn induced_map(&self, n: usize) -> Result<AbHom> {
        let src = self.source.cohomology(n)?;
        let tgt = self.target.cohomology(n)?;
        self.induced_map_with(&src, &tgt)
    }

    /// Map on cohomology given precomputed groups of source and target.
    pub fn induced_map_with(&self, src: &CohomologyGroup, tgt: &CohomologyGroup) -> Result<AbHom> {
        let n = src.degree();
        if tgt.degree() != n {
            return Err(Error::shape("cohomology groups of different degrees"));
        }
        let images = self.components[n].mul_checked(&src.generator_cocycles())?;
        let mut cols = Vec::with_capacity(images.cols());
        for j in 0..images.cols() {
            let c = tgt
                .class_of(&images.column(j))
                .map_err(|e| Error::internal(format!("image of a cocycle failed to lift in degree {}: {}", n, e)))?;
            cols.push(c);
        }
        let matrix = IntMatrix::from_columns(tgt.group().generator_count(), &cols)?;
        AbHom::new(src.group().clone(), tgt.group().clone(), matrix)
            .map_err(|e| Error::internal(format!("induced map is not well defined: {}", e)))
    }

    /// `σ*` in every degree of an endomorphism.
    pub fn induced_maps(&self) -> Result<Vec<AbHom>> {
        (0..=self.source.top_degree()).map(|n| self.induced_map(n)).collect()
    }
}

/// One degree of the groupoid cohomology computed from `1 - σ*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaCohomology {
    #[serde(rename = "n")]
    pub degree: usize,
    /// `ker(1 - σ*)` on `H^n(X)`.
    #[serde(rename = "ker")]
    pub kernel_part: FgAbGroup,
    /// `coker(1 - σ*)` on `H^{n-1}(X)`; zero in degree 0.
    #[serde(rename = "coker")]
    pub cokernel_part: FgAbGroup,
    #[serde(rename = "split")]
    pub split_certified: bool,
    #[serde(rename = "group", skip_serializing_if = "Option::is_none", default)]
    pub split_sum: Option<FgAbGroup>,
}

impl GammaCohomology {
    /// Packages the two ends, certifying the split when the kernel part is
    /// free or the cokernel part vanishes.
    pub fn from_ends(degree: usize, kernel_part: FgAbGroup, cokernel_part: FgAbGroup) -> Self {
        let split_certified = kernel_part.is_free() || cokernel_part.is_trivial();
        let split_sum = split_certified.then(|| kernel_part.direct_sum(&cokernel_part));
        GammaCohomology {
            degree,
            kernel_part,
            cokernel_part,
            split_certified,
            split_sum,
        }
    }

    /// Marks the extension as split when a splitting is known from outside
    /// the long exact sequence.
    pub fn with_known_split(mut self) -> Self {
        self.split_sum = Some(self.kernel_part.direct_sum(&self.cokernel_part));
        self.split_certified = true;
        self
    }

    /// The group when determined, or a description of the two ends.
    pub fn describe(&self) -> String {
        match &self.split_sum {
            Some(g) => g.to_string(),
            None => format!("ext({}, {})", self.kernel_part, self.cokernel_part),
        }
    }
}

fn check_sigma_star(sigma_star: &[AbHom]) -> Result<()> {
    if sigma_star.is_empty() {
        return Err(Error::invalid("σ* must be supplied at least in degree 0"));
    }
    for (m, f) in sigma_star.iter().enumerate() {
        if !f.is_endomorphism() {
            return Err(Error::shape(format!(
                "σ* in degree {} is {} -> {}, not an endomorphism",
                m,
                f.source(),
                f.target()
            )));
        }
    }
    Ok(())
}

/// `H^n(Γ)` from `σ*` on `H^m(X)`; `sigma_star[m]` is the endomorphism of
/// `H^m(X)` and degrees past the end of the slice are zero groups.
pub fn groupoid_cohomology(sigma_star: &[AbHom], n: usize) -> Result<GammaCohomology> {
    check_sigma_star(sigma_star)?;
    let kernel_part = match sigma_star.get(n) {
        Some(f) => f.one_minus()?.kernel()?,
        None => FgAbGroup::zero(),
    };
    let cokernel_part = match n.checked_sub(1).and_then(|m| sigma_star.get(m)) {
        Some(f) => f.one_minus()?.cokernel(),
        None => FgAbGroup::zero(),
    };
    Ok(GammaCohomology::from_ends(n, kernel_part, cokernel_part))
}

/// The two ends of `H²(X) -> H²(X) -> Br(Γ) -> H³(X) -> H³(X)` and the
/// Brauer group itself, `Br(Γ) = H³(Γ, Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrauerEnds {
    /// `coker(1 - σ*)` on `H²(X)`.
    pub coker_h2: FgAbGroup,
    /// `ker(1 - σ*)` on `H³(X)`.
    pub ker_h3: FgAbGroup,
    pub brauer: GammaCohomology,
}

pub fn brauer_ends(sigma_star: &[AbHom]) -> Result<BrauerEnds> {
    let brauer = groupoid_cohomology(sigma_star, 3)?;
    Ok(BrauerEnds {
        coker_h2: brauer.cokernel_part.clone(),
        ker_h3: brauer.kernel_part.clone(),
        brauer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    /// Boundary of a triangle: vertices 0,1,2, edges 01,02,12.
    fn circle() -> CochainComplex {
        let d0 = IntMatrix::from_rows(&[[-1, 1, 0], [-1, 0, 1], [0, -1, 1]]);
        CochainComplex::new(vec![3, 3], vec![d0]).unwrap()
    }

    #[test]
    fn circle_cohomology() {
        assert_eq!(circle().cohomology_groups().unwrap(), vec![g("Z"), g("Z")]);
    }

    #[test]
    fn zero_complex() {
        let c = CochainComplex::zero(3);
        assert!(c.cohomology_groups().unwrap().iter().all(FgAbGroup::is_trivial));
    }

    #[test]
    fn torsion_in_degree_one() {
        let c = CochainComplex::new(vec![1, 1], vec![IntMatrix::from_rows(&[[2]])]).unwrap();
        assert_eq!(c.cohomology_groups().unwrap(), vec![FgAbGroup::zero(), g("Z/2")]);
    }

    #[test]
    fn degree_out_of_range() {
        assert!(matches!(
            circle().cohomology(2),
            Err(Error::DegreeOutOfRange { degree: 2, max: 1 })
        ));
    }

    #[test]
    fn rejects_non_complex() {
        let d0 = IntMatrix::from_rows(&[[1]]);
        let d1 = IntMatrix::from_rows(&[[1]]);
        assert!(CochainComplex::new(vec![1, 1, 1], vec![d0, d1]).is_err());
        assert!(CochainComplex::new(vec![1, 2], vec![IntMatrix::from_rows(&[[1]])]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = circle();
        let s = serde_json::to_string(&c).unwrap();
        let back: CochainComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let empty: CochainComplex = serde_json::from_str(r#"{"ranks":[0,2],"differentials":[[]]}"#).unwrap();
        assert_eq!(empty.cohomology_groups().unwrap(), vec![FgAbGroup::zero(), g("Z^2")]);
    }

    #[test]
    fn identity_and_zero_maps() {
        let c = circle();
        let id = CochainMap::identity(&c);
        for n in 0..=1 {
            let h = id.induced_map(n).unwrap();
            assert_eq!(h, AbHom::identity(h.source()));
        }
        let z = CochainMap::zero(&c, &c).unwrap();
        assert_eq!(z.induced_map(1).unwrap(), AbHom::zero(&g("Z"), &g("Z")));
    }

    #[test]
    fn map_must_commute() {
        let c = circle();
        let mut comps = vec![IntMatrix::identity(3), IntMatrix::zeros(3, 3)];
        assert!(CochainMap::new(c.clone(), c.clone(), comps.clone()).is_err());
        comps[1] = IntMatrix::identity(3);
        assert!(CochainMap::new(c.clone(), c, comps).is_ok());
    }

    #[test]
    fn sigma_identity_doubles_up() {
        let sigma = vec![
            AbHom::identity(&g("Z")),
            AbHom::identity(&g("Z^2")),
            AbHom::identity(&g("Z/2")),
        ];
        assert_eq!(groupoid_cohomology(&sigma, 0).unwrap().split_sum, Some(g("Z")));
        assert_eq!(groupoid_cohomology(&sigma, 1).unwrap().split_sum, Some(g("Z^3")));
        // Z^2 by Z/2 need not split
        let h2 = groupoid_cohomology(&sigma, 2).unwrap();
        assert_eq!((h2.kernel_part.clone(), h2.cokernel_part.clone()), (g("Z/2"), g("Z^2")));
        assert_eq!(h2.split_sum, None);
        assert_eq!(groupoid_cohomology(&sigma, 3).unwrap().split_sum, Some(g("Z/2")));
        assert_eq!(
            groupoid_cohomology(&sigma, 4).unwrap().split_sum,
            Some(FgAbGroup::zero())
        );
    }

    #[test]
    fn circle_doubling_row() {
        let sigma = vec![AbHom::identity(&g("Z")), AbHom::scalar(&g("Z"), 2)];
        let h0 = groupoid_cohomology(&sigma, 0).unwrap();
        assert_eq!(h0.kernel_part, g("Z"));
        assert!(h0.cokernel_part.is_trivial());
        let h1 = groupoid_cohomology(&sigma, 1).unwrap();
        assert_eq!(h1.kernel_part, FgAbGroup::zero());
        assert_eq!(h1.cokernel_part, g("Z"));
        assert_eq!(h1.split_sum, Some(g("Z")));
        let h2 = groupoid_cohomology(&sigma, 2).unwrap();
        assert_eq!(h2.split_sum, Some(FgAbGroup::zero()));
    }

    #[test]
    fn nonsplit_case_reports_ends() {
        // kernel part with torsion and a nontrivial cokernel part
        let sigma = vec![AbHom::identity(&g("Z")), AbHom::identity(&g("Z/2"))];
        let h1 = groupoid_cohomology(&sigma, 1).unwrap();
        assert_eq!(h1.kernel_part, g("Z/2"));
        assert_eq!(h1.cokernel_part, g("Z"));
        assert!(!h1.split_certified);
        assert_eq!(h1.split_sum, None);
        assert_eq!(h1.describe(), "ext(Z/2, Z)");
        let json = serde_json::to_value(&h1).unwrap();
        assert_eq!(json["split"], false);
        assert!(json.get("group").is_none());
    }

    #[test]
    fn brauer_ends_of_low_dimensional_data() {
        let sigma = vec![AbHom::identity(&g("Z")), AbHom::scalar(&g("Z"), 3)];
        let b = brauer_ends(&sigma).unwrap();
        assert!(b.coker_h2.is_trivial() && b.ker_h3.is_trivial());
        assert_eq!(b.brauer.split_sum, Some(FgAbGroup::zero()));
        assert!(brauer_ends(&[]).is_err());
    }

    #[test]
    fn rejects_non_endomorphism() {
        let f = AbHom::zero(&g("Z"), &g("Z^2"));
        assert!(matches!(groupoid_cohomology(&[f], 0), Err(Error::Shape(_))));
    }
}
