//! Extension of a function `g : X -> A` to the unique continuous cocycle
//! `f : Γ(X, σ) -> A` with `f(x, 1, σ(x)) = g(x)`:
//!
//! ```text
//! f(x, k - l, y) = Σ_{i<k} g(σ^i x) - Σ_{j<l} g(σ^j y)
//! ```

use num_bigint::BigInt;
use num_traits::One;

use super::report::{ensure, LawCheck, VerificationReport};
use super::system::{enumerate, FiniteSystem, GroupoidElement};
use crate::abelian::FgAbGroup;
use crate::error::{Error, Result};

/// A cocycle given by its values on `j(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedCocycle {
    coefficient: FgAbGroup,
    generator: Vec<Vec<BigInt>>,
}

impl ExtendedCocycle {
    /// `g[x]` are coordinates in `coefficient`.
    pub fn new(sys: &FiniteSystem, coefficient: FgAbGroup, g: Vec<Vec<BigInt>>) -> Result<Self> {
        if g.len() != sys.len() {
            return Err(Error::shape(format!("{} values for {} points", g.len(), sys.len())));
        }
        let generator = g.iter().map(|v| coefficient.reduce(v)).collect::<Result<Vec<_>>>()?;
        Ok(ExtendedCocycle { coefficient, generator })
    }

    pub fn coefficient(&self) -> &FgAbGroup {
        &self.coefficient
    }

    pub fn generator(&self) -> &[Vec<BigInt>] {
        &self.generator
    }

    fn sum_along(&self, sys: &FiniteSystem, x: usize, k: usize) -> Vec<BigInt> {
        let mut acc = self.coefficient.identity_element();
        for p in sys.orbit(x, k) {
            acc = self
                .coefficient
                .add(&acc, &self.generator[p])
                .expect("coordinates match");
        }
        acc
    }

    /// The formula evaluated with a given witness `(k, l)`.
    pub fn value_with(&self, sys: &FiniteSystem, x: usize, y: usize, k: usize, l: usize) -> Vec<BigInt> {
        let a = self.sum_along(sys, x, k);
        let b = self.sum_along(sys, y, l);
        self.coefficient.sub(&a, &b).expect("coordinates match")
    }

    pub fn value(&self, sys: &FiniteSystem, g: &GroupoidElement) -> Vec<BigInt> {
        self.value_with(sys, g.x, g.y, g.k, g.l)
    }
}

/// Verifies witness independence, the cocycle identity, restriction along
/// `j`, and uniqueness of the extension on a truncation.
///
/// Uniqueness is checked by perturbing the value at each element `γ` by each
/// generator of `A` and exhibiting a broken relation: the unit identity when
/// `γ` is a unit, restriction when `γ = j(x)`, the factorization
/// `γ = j(x) (σx, m-1, y)` when `k >= 1`, and `γ j(y) = (x, m+1, σy)`
/// otherwise.
pub fn verify_cocycle(
    sys: &FiniteSystem,
    f: &ExtendedCocycle,
    max_abs_m: usize,
    max_witness: usize,
) -> VerificationReport {
    let t = enumerate(sys, max_abs_m, max_witness);
    let a = f.coefficient();
    let mut laws = Vec::new();

    laws.push(LawCheck::run("witness independence", t.elements(), |g| {
        let v = f.value(sys, g);
        for (k, l) in sys.witnesses(g, max_witness.max(g.k.max(g.l)) + sys.len()) {
            let w = f.value_with(sys, g.x, g.y, k, l);
            ensure(w == v, || {
                format!(
                    "{} with witness ({}, {}) gives {:?}, minimal gives {:?}",
                    sys.show(g),
                    k,
                    l,
                    w,
                    v
                )
            })?;
        }
        Ok(())
    }));

    laws.push(LawCheck::run("cocycle identity", t.composable_pairs(), |(g, h)| {
        let gh = sys.compose(g, h).map_err(|e| e.to_string())?;
        let lhs = f.value(sys, &gh);
        let rhs = a.add(&f.value(sys, g), &f.value(sys, h)).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || {
            format!(
                "f({} {}) != f({}) + f({})",
                sys.show(g),
                sys.show(h),
                sys.show(g),
                sys.show(h)
            )
        })
    }));

    laws.push(LawCheck::run("restriction along j", sys.points(), |x| {
        let v = f.value(sys, &sys.j(x));
        ensure(v == f.generator()[x], || {
            format!(
                "f(j({})) = {:?} but g({}) = {:?}",
                sys.label(x),
                v,
                sys.label(x),
                f.generator()[x]
            )
        })
    }));

    let bumps: Vec<Vec<BigInt>> = (0..a.generator_count())
        .map(|i| {
            let mut e = a.identity_element();
            e[i] = BigInt::one();
            e
        })
        .collect();
    let instances = t.elements().iter().flat_map(|g| bumps.iter().map(move |b| (g, b)));
    laws.push(LawCheck::run("uniqueness", instances, |(gamma, bump)| {
        // f' = f + bump at gamma only
        let perturbed = |h: &GroupoidElement| {
            let v = f.value(sys, h);
            if h == gamma {
                a.add(&v, bump).expect("coordinates match")
            } else {
                v
            }
        };
        let holds = |p: &GroupoidElement, q: &GroupoidElement| -> std::result::Result<bool, String> {
            let pq = sys.compose(p, q).map_err(|e| e.to_string())?;
            Ok(perturbed(&pq) == a.add(&perturbed(p), &perturbed(q)).expect("coordinates match"))
        };
        let broken = if gamma.is_unit() {
            !holds(gamma, gamma)?
        } else if *gamma == sys.j(gamma.x) {
            perturbed(gamma) != f.generator()[gamma.x]
        } else if gamma.k >= 1 {
            let xi = sys.j(gamma.x);
            let rho = sys
                .element(sys.sigma(gamma.x), gamma.m - 1, gamma.y)
                .ok_or_else(|| format!("no factorization of {}", sys.show(gamma)))?;
            !holds(&xi, &rho)?
        } else {
            !holds(gamma, &sys.j(gamma.y))?
        };
        ensure(broken, || {
            format!("perturbing {} by {:?} breaks no relation", sys.show(gamma), bump)
        })
    }));

    VerificationReport::new("cocycle extension", max_abs_m, max_witness, t.len(), laws)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Vec<BigInt>> {
        v.iter().map(|&x| vec![BigInt::from(x)]).collect()
    }

    #[test]
    fn swap_hand_computation() {
        let sys = FiniteSystem::from_map(vec![1, 0]).unwrap();
        let f = ExtendedCocycle::new(&sys, FgAbGroup::free(1), ints(&[1, 0])).unwrap();
        let g = sys.element(0, 2, 0).unwrap();
        assert_eq!(f.value(&sys, &g), vec![BigInt::from(1)]);
        assert_eq!(f.value_with(&sys, 0, 0, 3, 1), vec![BigInt::from(1)]);
        let r = verify_cocycle(&sys, &f, 3, 3);
        assert!(r.passed, "{:?}", r.failures());
    }

    #[test]
    fn one_point_homomorphism() {
        let sys = FiniteSystem::from_map(vec![0]).unwrap();
        let f = ExtendedCocycle::new(&sys, FgAbGroup::free(1), ints(&[5])).unwrap();
        for m in -3i64..=3 {
            let g = sys.element(0, m, 0).unwrap();
            assert_eq!(f.value(&sys, &g), vec![BigInt::from(5 * m)]);
        }
    }

    #[test]
    fn zero_function() {
        let sys = FiniteSystem::from_map(vec![2, 2, 2]).unwrap();
        let f = ExtendedCocycle::new(&sys, FgAbGroup::free(1), ints(&[0, 0, 0])).unwrap();
        let t = enumerate(&sys, 2, 2);
        assert!(t.elements().iter().all(|g| f.value(&sys, g) == vec![BigInt::from(0)]));
    }

    #[test]
    fn torsion_coefficients() {
        let sys = FiniteSystem::from_map(vec![1, 2, 0, 0]).unwrap();
        let a: FgAbGroup = "Z + Z/2".parse().unwrap();
        let g = vec![
            vec![BigInt::from(1), BigInt::from(3)],
            vec![BigInt::from(0), BigInt::from(-1)],
            vec![BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(1), BigInt::from(2)],
        ];
        let f = ExtendedCocycle::new(&sys, a, g).unwrap();
        let r = verify_cocycle(&sys, &f, 3, 3);
        assert!(r.passed, "{:?}", r.failures());
    }

    #[test]
    fn wrong_formula_is_caught() {
        // a "cocycle" that ignores the y-orbit fails the identity
        let sys = FiniteSystem::from_map(vec![1, 0]).unwrap();
        let f = ExtendedCocycle::new(&sys, FgAbGroup::free(1), ints(&[1, 0])).unwrap();
        let t = enumerate(&sys, 2, 2);
        let bad = |g: &GroupoidElement| f.value_with(&sys, g.x, g.x, g.k, 0);
        let failing = t.composable_pairs().any(|(g, h)| {
            let gh = sys.compose(g, h).unwrap();
            bad(&gh)[0].clone() != &bad(g)[0] + &bad(h)[0]
        });
        assert!(failing);
    }
}
