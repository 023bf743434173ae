//! Skew products: `τ(x, g) = (σ(x), g c(x))` on `X × G`, the cocycle
//!
//! ```text
//! c̃(x, k - l, y) = c(x) c(σx) ... c(σ^{k-1}x) c(σ^{l-1}y)^{-1} ... c(y)^{-1}
//! ```
//!
//! and the isomorphism `Γ(X × G, τ) -> Γ(X, σ) ×_c̃ G`,
//! `((x, g), m, (y, h)) ↦ ((x, m, y), g)`, defined exactly when
//! `h = g c̃(x, m, y)`.

use std::collections::HashSet;

use super::finite_group::FiniteGroup;
use super::report::{ensure, LawCheck, VerificationReport};
use super::system::{enumerate, FiniteSystem, GroupoidElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SkewProduct {
    base: FiniteSystem,
    group: FiniteGroup,
    c: Vec<usize>,
    total: FiniteSystem,
}

impl SkewProduct {
    pub fn new(base: &FiniteSystem, group: &FiniteGroup, c: Vec<usize>) -> Result<Self> {
        if c.len() != base.len() {
            return Err(Error::shape(format!(
                "c has {} values for {} points",
                c.len(),
                base.len()
            )));
        }
        if c.iter().any(|&g| g >= group.order()) {
            return Err(Error::invalid(format!("c takes a value outside {}", group)));
        }
        let n = group.order();
        let mut labels = Vec::with_capacity(base.len() * n);
        let mut tau = Vec::with_capacity(base.len() * n);
        for x in base.points() {
            for g in 0..n {
                labels.push(format!("{}|{}", base.label(x), g));
                tau.push(base.sigma(x) * n + group.mul(g, c[x]));
            }
        }
        Ok(SkewProduct {
            base: base.clone(),
            group: group.clone(),
            c,
            total: FiniteSystem::new(labels, tau)?,
        })
    }

    /// `(X × G, τ)`.
    pub fn system(&self) -> &FiniteSystem {
        &self.total
    }

    pub fn base(&self) -> &FiniteSystem {
        &self.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn encode(&self, x: usize, g: usize) -> usize {
        x * self.group.order() + g
    }

    pub fn decode(&self, p: usize) -> (usize, usize) {
        (p / self.group.order(), p % self.group.order())
    }

    /// `c(x) c(σx) ... c(σ^{k-1}x)`.
    pub fn path_product(&self, x: usize, k: usize) -> usize {
        self.base
            .orbit(x, k)
            .into_iter()
            .fold(self.group.identity(), |acc, p| self.group.mul(acc, self.c[p]))
    }

    pub fn c_tilde_with(&self, x: usize, y: usize, k: usize, l: usize) -> usize {
        let a = self.path_product(x, k);
        let b = self.path_product(y, l);
        self.group.mul(a, self.group.inv(b))
    }

    pub fn c_tilde(&self, g: &GroupoidElement) -> usize {
        self.c_tilde_with(g.x, g.y, g.k, g.l)
    }

    /// `((x, g), m, (y, h)) ↦ ((x, m, y), g)`.
    pub fn forward(&self, e: &GroupoidElement) -> Result<(GroupoidElement, usize)> {
        let ((x, g), (y, _)) = (self.decode(e.x), self.decode(e.y));
        let gamma = self
            .base
            .element(x, e.m, y)
            .ok_or_else(|| Error::internal("τ-element over a non-element of Γ(X, σ)"))?;
        Ok((gamma, g))
    }

    /// `(γ, g) ↦ ((x, g), m, (y, g c̃(γ)))`.
    pub fn backward(&self, gamma: &GroupoidElement, g: usize) -> Option<GroupoidElement> {
        let h = self.group.mul(g, self.c_tilde(gamma));
        self.total
            .element(self.encode(gamma.x, g), gamma.m, self.encode(gamma.y, h))
    }

    pub fn verify(&self, max_abs_m: usize, max_witness: usize) -> VerificationReport {
        let base_t = enumerate(&self.base, max_abs_m, max_witness);
        let total_t = enumerate(&self.total, max_abs_m, max_witness);
        let gr = &self.group;
        let show = |g: &GroupoidElement| self.base.show(g);
        let mut laws = Vec::new();

        laws.push(LawCheck::run("c̃ witness independence", base_t.elements(), |g| {
            let v = self.c_tilde(g);
            for (k, l) in self.base.witnesses(g, max_witness + self.base.len()) {
                ensure(self.c_tilde_with(g.x, g.y, k, l) == v, || {
                    format!("c̃{} depends on the witness ({}, {})", show(g), k, l)
                })?;
            }
            Ok(())
        }));

        laws.push(LawCheck::run(
            "c̃ cocycle identity",
            base_t.composable_pairs(),
            |(g, h)| {
                let gh = self.base.compose(g, h).map_err(|e| e.to_string())?;
                ensure(self.c_tilde(&gh) == gr.mul(self.c_tilde(g), self.c_tilde(h)), || {
                    format!("c̃({} {}) != c̃({}) c̃({})", show(g), show(h), show(g), show(h))
                })
            },
        ));

        let states = self.total.points().flat_map(|p| (0..=max_witness).map(move |k| (p, k)));
        laws.push(LawCheck::run("τ-orbits carry path products", states, |(p, k)| {
            let (x, g) = self.decode(p);
            let expected = self.encode(self.base.iterate(x, k), gr.mul(g, self.path_product(x, k)));
            ensure(self.total.iterate(p, k) == expected, || {
                format!("τ^{}({}) disagrees with the path product", k, self.total.label(p))
            })
        }));

        let mut image = HashSet::new();
        laws.push(LawCheck::run(
            "forward map into Γ(X,σ) ×_c̃ G",
            total_t.elements(),
            |e| {
                let (gamma, g) = self.forward(e).map_err(|err| err.to_string())?;
                let (_, h) = self.decode(e.y);
                ensure(h == gr.mul(g, self.c_tilde(&gamma)), || {
                    format!(
                        "{} has fiber {} but g c̃ = {}",
                        self.total.show(e),
                        h,
                        gr.mul(g, self.c_tilde(&gamma))
                    )
                })?;
                ensure(gamma.witness() == e.witness() && base_t.contains(&gamma), || {
                    format!(
                        "minimal witnesses of {} and {} differ",
                        self.total.show(e),
                        show(&gamma)
                    )
                })?;
                ensure(image.insert((gamma.key(), g)), || {
                    format!("{} is hit twice", show(&gamma))
                })
            },
        ));

        let pairs = base_t
            .elements()
            .iter()
            .flat_map(|gamma| (0..gr.order()).map(move |g| (gamma, g)));
        laws.push(LawCheck::run(
            "backward map onto the τ-truncation",
            pairs,
            |(gamma, g)| {
                let e = self
                    .backward(gamma, g)
                    .ok_or_else(|| format!("({}, {}) has no preimage", show(gamma), g))?;
                ensure(total_t.contains(&e), || {
                    format!("preimage of ({}, {}) leaves the bounds", show(gamma), g)
                })?;
                let (back, g2) = self.forward(&e).map_err(|err| err.to_string())?;
                ensure(back == *gamma && g2 == g, || {
                    format!("round trip fails at ({}, {})", show(gamma), g)
                })
            },
        ));

        laws.push(LawCheck::run(
            "isomorphism respects products",
            total_t.composable_pairs(),
            |(a, b)| {
                let ab = self.total.compose(a, b).map_err(|e| e.to_string())?;
                let (ga, fa) = self.forward(a).map_err(|e| e.to_string())?;
                let (gb, fb) = self.forward(b).map_err(|e| e.to_string())?;
                let (gab, fab) = self.forward(&ab).map_err(|e| e.to_string())?;
                // (γ1, g)(γ2, g c̃(γ1)) = (γ1 γ2, g)
                ensure(fb == gr.mul(fa, self.c_tilde(&ga)), || {
                    format!(
                        "images of {} and {} are not composable",
                        self.total.show(a),
                        self.total.show(b)
                    )
                })?;
                let prod = self.base.compose(&ga, &gb).map_err(|e| e.to_string())?;
                ensure(prod == gab && fab == fa, || {
                    format!(
                        "product of {} and {} is not preserved",
                        self.total.show(a),
                        self.total.show(b)
                    )
                })
            },
        ));

        VerificationReport::new("skew product", max_abs_m, max_witness, total_t.len(), laws)
    }
}

/// Words of length `1 ..= max_len` over `0 .. alphabet`, with `σ` deleting
/// the first letter and fixing one-letter words: a finite stand-in for the
/// one-sided shift.
pub fn word_shift(alphabet: usize, max_len: usize) -> Result<FiniteSystem> {
    if alphabet == 0 || max_len == 0 {
        return Err(Error::invalid("word shift needs a letter and a positive length"));
    }
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut level: Vec<Vec<usize>> = (0..alphabet).map(|a| vec![a]).collect();
    for _ in 0..max_len {
        words.extend(level.iter().cloned());
        level = level
            .iter()
            .flat_map(|w| {
                (0..alphabet).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    let label = |w: &[usize]| w.iter().map(|a| (a + 1).to_string()).collect::<Vec<_>>().join("");
    let labels: Vec<String> = words.iter().map(|w| label(w)).collect();
    let sigma = words
        .iter()
        .map(|w| {
            let target = if w.len() == 1 { w.clone() } else { w[1..].to_vec() };
            words.iter().position(|v| *v == target).expect("suffix present")
        })
        .collect();
    FiniteSystem::new(labels, sigma)
}

/// The first letter of each word of [`word_shift`].
pub fn first_letters(sys: &FiniteSystem) -> Vec<usize> {
    sys.labels()
        .iter()
        .map(|l| {
            l.chars()
                .next()
                .and_then(|c| c.to_digit(10))
                .map(|d| d as usize - 1)
                .unwrap_or(0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_powers() {
        let sys = FiniteSystem::from_map(vec![0]).unwrap();
        let g = FiniteGroup::cyclic(5).unwrap();
        let sp = SkewProduct::new(&sys, &g, vec![2]).unwrap();
        for m in -3i64..=3 {
            let e = sys.element(0, m, 0).unwrap();
            assert_eq!(sp.c_tilde(&e), (2 * m).rem_euclid(5) as usize);
        }
        assert!(sp.verify(3, 3).passed);
    }

    #[test]
    fn trivial_cocycle_is_product() {
        let sys = FiniteSystem::from_map(vec![1, 2, 0, 0]).unwrap();
        let g = FiniteGroup::symmetric3();
        let sp = SkewProduct::new(&sys, &g, vec![0; 4]).unwrap();
        for p in sp.system().points() {
            let (x, h) = sp.decode(p);
            assert_eq!(sp.decode(sp.system().sigma(p)), (sys.sigma(x), h));
        }
        let r = sp.verify(2, 2);
        assert!(r.passed, "{:?}", r.failures());
    }

    #[test]
    fn shift_model() {
        let sys = word_shift(2, 3).unwrap();
        assert_eq!(sys.len(), 14);
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let lambda = [1usize, 3];
        let c = first_letters(&sys).into_iter().map(|a| lambda[a]).collect();
        let r = SkewProduct::new(&sys, &z4, c).unwrap().verify(2, 3);
        assert!(r.passed, "{:?}", r.failures());
    }

    #[test]
    fn nonabelian_cocycle() {
        let sys = FiniteSystem::from_map(vec![1, 0, 0]).unwrap();
        let r = SkewProduct::new(&sys, &FiniteGroup::symmetric3(), vec![1, 3, 5])
            .unwrap()
            .verify(3, 3);
        assert!(r.passed, "{:?}", r.failures());
    }
}
