//! The correspondence `ℓ²(σ)` over functions on a finite system, with
//!
//! ```text
//! ⟨ξ, η⟩(x) = Σ_{σ(y) = x} conj(ξ(y)) η(y)
//! (ξ · f)(x) = ξ(x) f(σ(x))
//! (f · ξ)(x) = f(x) ξ(x)
//! ```
//!
//! Compact operators are kernels on `R(σ) = {(x, y) : σ(x) = σ(y)}`; the
//! rank-one operator `θ_{ξ,η} ζ = ξ · ⟨η, ζ⟩` has kernel
//! `ξ(x) conj(η(y))`. Scalars are exact Gaussian rationals.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::report::{ensure, LawCheck, VerificationReport};
use super::system::FiniteSystem;

pub type Scalar = Complex<BigRational>;

/// A function `X -> Q[i]`, indexed by point.
pub type Function = Vec<Scalar>;

/// A kernel `k(x, y)` on `X × X`, stored densely.
pub type Kernel = Vec<Vec<Scalar>>;

pub fn scalar(re: i64, im: i64) -> Scalar {
    Complex::new(
        BigRational::from_integer(re.into()),
        BigRational::from_integer(im.into()),
    )
}

/// The indicator of `x`.
pub fn delta(len: usize, x: usize) -> Function {
    (0..len)
        .map(|p| if p == x { Scalar::one() } else { Scalar::zero() })
        .collect()
}

/// Gaussian rationals with small numerators and denominators.
pub fn random_function<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Function {
    let part = |rng: &mut R| {
        BigRational::new(
            BigInt::from(rng.gen_range(-4i64..=4)),
            BigInt::from(rng.gen_range(1i64..=3)),
        )
    };
    (0..len)
        .map(|_| {
            let re = part(rng);
            let im = part(rng);
            Complex::new(re, im)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Correspondence {
    sys: FiniteSystem,
}

impl Correspondence {
    pub fn new(sys: &FiniteSystem) -> Self {
        Correspondence { sys: sys.clone() }
    }

    pub fn system(&self) -> &FiniteSystem {
        &self.sys
    }

    pub fn inner(&self, xi: &[Scalar], eta: &[Scalar]) -> Function {
        let mut out = vec![Scalar::zero(); self.sys.len()];
        for y in self.sys.points() {
            out[self.sys.sigma(y)] += xi[y].conj() * &eta[y];
        }
        out
    }

    pub fn right(&self, xi: &[Scalar], f: &[Scalar]) -> Function {
        self.sys.points().map(|x| &xi[x] * &f[self.sys.sigma(x)]).collect()
    }

    pub fn left(&self, f: &[Scalar], xi: &[Scalar]) -> Function {
        f.iter().zip(xi).map(|(a, b)| a * b).collect()
    }

    /// `R(σ)` in lexicographic order.
    pub fn relation(&self) -> Vec<(usize, usize)> {
        let s = &self.sys;
        s.points()
            .flat_map(|x| {
                s.points()
                    .filter(move |&y| s.sigma(x) == s.sigma(y))
                    .map(move |y| (x, y))
            })
            .collect()
    }

    pub fn in_relation(&self, x: usize, y: usize) -> bool {
        self.sys.sigma(x) == self.sys.sigma(y)
    }

    /// `k(x, y) = ξ(x) conj(η(y))` on `R(σ)`, zero elsewhere.
    pub fn rank_one_kernel(&self, xi: &[Scalar], eta: &[Scalar]) -> Kernel {
        self.sys
            .points()
            .map(|x| {
                self.sys
                    .points()
                    .map(|y| {
                        if self.in_relation(x, y) {
                            &xi[x] * eta[y].conj()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `θ_{ξ,η} ζ = ξ · ⟨η, ζ⟩`.
    pub fn theta(&self, xi: &[Scalar], eta: &[Scalar], zeta: &[Scalar]) -> Function {
        self.right(xi, &self.inner(eta, zeta))
    }

    /// The kernel of `φ(f) = Σ_x θ_{f(x) δ_x, δ_x}`.
    pub fn left_kernel(&self, f: &[Scalar]) -> Kernel {
        let n = self.sys.len();
        let mut k = vec![vec![Scalar::zero(); n]; n];
        for x in self.sys.points() {
            let fx: Function = delta(n, x).into_iter().map(|d| d * &f[x]).collect();
            add_into(&mut k, &self.rank_one_kernel(&fx, &delta(n, x)));
        }
        k
    }

    /// The operator `h ↦ ξ · h` on `ℓ²(X)`: `V(ξ)[x][u] = ξ(x) [σ(x) = u]`.
    pub fn creation(&self, xi: &[Scalar]) -> Kernel {
        self.sys
            .points()
            .map(|x| {
                self.sys
                    .points()
                    .map(|u| {
                        if self.sys.sigma(x) == u {
                            xi[x].clone()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn apply(k: &Kernel, v: &[Scalar]) -> Function {
    k.iter()
        .map(|row| row.iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn diagonal(f: &[Scalar]) -> Kernel {
    let n = f.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { f[i].clone() } else { Scalar::zero() })
                .collect()
        })
        .collect()
}

fn matmul(a: &Kernel, b: &Kernel) -> Kernel {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(Scalar::zero(), |acc, (x, r)| acc + x * &r[j]))
                .collect()
        })
        .collect()
}

fn adjoint(a: &Kernel) -> Kernel {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|row| row[j].conj()).collect()).collect()
}

fn add_into(acc: &mut Kernel, k: &Kernel) {
    for (r, s) in acc.iter_mut().zip(k) {
        for (a, b) in r.iter_mut().zip(s) {
            *a += b;
        }
    }
}

fn conj_all(f: &[Scalar]) -> Function {
    f.iter().map(Complex::conj).collect()
}

fn mul_all(f: &[Scalar], g: &[Scalar]) -> Function {
    f.iter().zip(g).map(|(a, b)| a * b).collect()
}

fn add_all(f: &[Scalar], g: &[Scalar]) -> Function {
    f.iter().zip(g).map(|(a, b)| a + b).collect()
}

fn fmt_fn(f: &[Scalar]) -> String {
    let parts: Vec<String> = f.iter().map(|c| format!("{}+{}i", c.re, c.im)).collect();
    format!("[{}]", parts.join(", "))
}

/// Checks the module identities, positivity, rank-one kernels on `R(σ)`,
/// containment of the left action in their span, and the covariance
/// conditions of the creation operators on `ℓ²(X)`, over the indicators of
/// points together with `samples`.
pub fn correspondence_check(sys: &FiniteSystem, samples: &[Function]) -> VerificationReport {
    let c = Correspondence::new(sys);
    let n = sys.len();
    let mut span: Vec<Function> = sys.points().map(|x| delta(n, x)).collect();
    span.extend(samples.iter().filter(|s| s.len() == n).cloned());
    let one = vec![Scalar::one(); n];
    let pairs = || span.iter().flat_map(|a| span.iter().map(move |b| (a, b)));
    let triples = || pairs().flat_map(|(a, b)| span.iter().map(move |f| (a, b, f)));
    let mut laws = Vec::new();

    laws.push(LawCheck::run("right module", triples(), |(xi, eta, f)| {
        ensure(c.right(xi, &one) == *xi, || format!("ξ·1 != ξ for ξ = {}", fmt_fn(xi)))?;
        let lhs = c.right(&c.right(xi, f), eta);
        let rhs = c.right(xi, &mul_all(f, eta));
        ensure(lhs == rhs, || format!("(ξ·f)·g != ξ·(fg) for ξ = {}", fmt_fn(xi)))?;
        let sum = c.right(&add_all(xi, eta), f);
        ensure(sum == add_all(&c.right(xi, f), &c.right(eta, f)), || {
            format!("right action is not additive at {}", fmt_fn(xi))
        })
    }));

    laws.push(LawCheck::run("inner product", triples(), |(xi, eta, f)| {
        let ip = c.inner(xi, eta);
        ensure(c.inner(xi, &c.right(eta, f)) == mul_all(&ip, f), || {
            format!("⟨ξ, η·f⟩ != ⟨ξ, η⟩f for ξ = {}", fmt_fn(xi))
        })?;
        ensure(c.inner(&c.right(xi, f), eta) == mul_all(&conj_all(f), &ip), || {
            format!("⟨ξ·f, η⟩ != conj(f)⟨ξ, η⟩ for ξ = {}", fmt_fn(xi))
        })?;
        ensure(conj_all(&c.inner(eta, xi)) == ip, || {
            format!("⟨η, ξ⟩ != conj⟨ξ, η⟩ for ξ = {}", fmt_fn(xi))
        })?;
        ensure(c.inner(xi, &add_all(eta, f)) == add_all(&ip, &c.inner(xi, f)), || {
            format!("⟨ξ, ·⟩ is not additive at {}", fmt_fn(xi))
        })
    }));

    laws.push(LawCheck::run("positivity", span.iter(), |xi| {
        let ip = c.inner(xi, xi);
        for x in sys.points() {
            let v = &ip[x];
            ensure(v.im.is_zero() && !v.re.is_negative(), || {
                format!("⟨ξ, ξ⟩({}) = {} for ξ = {}", sys.label(x), v, fmt_fn(xi))
            })?;
            let vanishes = sys.preimages(x).all(|y| xi[y].is_zero());
            ensure(v.re.is_zero() == vanishes, || {
                format!("⟨ξ, ξ⟩({}) = 0 without ξ vanishing on the fiber", sys.label(x))
            })?;
        }
        Ok(())
    }));

    laws.push(LawCheck::run("left action adjointable", triples(), |(xi, eta, f)| {
        let lhs = c.inner(&c.left(f, xi), eta);
        let rhs = c.inner(xi, &c.left(&conj_all(f), eta));
        ensure(lhs == rhs, || format!("⟨f·ξ, η⟩ != ⟨ξ, f*·η⟩ for ξ = {}", fmt_fn(xi)))?;
        ensure(c.right(&c.left(f, xi), eta) == c.left(f, &c.right(xi, eta)), || {
            format!("(f·ξ)·g != f·(ξ·g) for ξ = {}", fmt_fn(xi))
        })
    }));

    laws.push(LawCheck::run(
        "rank-one kernels on R(σ)",
        triples(),
        |(xi, eta, zeta)| {
            let k = c.rank_one_kernel(xi, eta);
            ensure(apply(&k, zeta) == c.theta(xi, eta, zeta), || {
                format!("kernel of θ disagrees with ξ·⟨η, ζ⟩ for ξ = {}", fmt_fn(xi))
            })?;
            for x in sys.points() {
                for y in sys.points() {
                    ensure(c.in_relation(x, y) || k[x][y].is_zero(), || {
                        format!("θ has support at ({}, {}) outside R(σ)", sys.label(x), sys.label(y))
                    })?;
                }
            }
            Ok(())
        },
    ));

    laws.push(LawCheck::run("left action in rank-one span", pairs(), |(f, zeta)| {
        let k = c.left_kernel(f);
        ensure(k == diagonal(f), || {
            format!("kernel of φ(f) is not diagonal for f = {}", fmt_fn(f))
        })?;
        ensure(apply(&k, zeta) == c.left(f, zeta), || {
            format!("φ(f)ζ != f·ζ for f = {}", fmt_fn(f))
        })
    }));

    laws.push(LawCheck::run("covariant representation", triples(), |(xi, eta, f)| {
        let v = c.creation(xi);
        let bimod = c.creation(&c.right(&c.left(f, xi), eta));
        ensure(bimod == matmul(&matmul(&diagonal(f), &v), &diagonal(eta)), || {
            format!("V(f·ξ·g) != π(f)V(ξ)π(g) for ξ = {}", fmt_fn(xi))
        })?;
        ensure(
            matmul(&adjoint(&v), &c.creation(eta)) == diagonal(&c.inner(xi, eta)),
            || format!("V(ξ)*V(η) != π(⟨ξ, η⟩) for ξ = {}", fmt_fn(xi)),
        )?;
        ensure(apply(&v, f) == c.right(xi, f), || {
            format!("V(ξ)h != ξ·h for ξ = {}", fmt_fn(xi))
        })
    }));

    laws.push(LawCheck::run("Cuntz-Pimsner covariance", span.iter(), |f| {
        let mut sum = vec![vec![Scalar::zero(); n]; n];
        for x in sys.points() {
            let fx: Function = delta(n, x).into_iter().map(|d| d * &f[x]).collect();
            add_into(&mut sum, &matmul(&c.creation(&fx), &adjoint(&c.creation(&delta(n, x)))));
        }
        ensure(sum == diagonal(f), || {
            format!("Σ V(f(x)δ_x)V(δ_x)* != π(f) for f = {}", fmt_fn(f))
        })
    }));

    VerificationReport::new("correspondence", 0, 0, span.len(), laws)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn merge() -> FiniteSystem {
        FiniteSystem::from_labels(&["a", "b", "c"], &[("a", "c"), ("b", "c"), ("c", "c")]).unwrap()
    }

    #[test]
    fn indicator_inner_product() {
        let c = Correspondence::new(&merge());
        let xi = delta(3, 0);
        assert_eq!(c.inner(&xi, &xi), delta(3, 2));
    }

    #[test]
    fn unit_acts_trivially() {
        let c = Correspondence::new(&merge());
        let xi = vec![scalar(1, 2), scalar(0, -1), scalar(3, 0)];
        assert_eq!(c.right(&xi, &vec![Scalar::one(); 3]), xi);
    }

    #[test]
    fn swap_relation_is_diagonal() {
        let c = Correspondence::new(&FiniteSystem::from_map(vec![1, 0]).unwrap());
        assert_eq!(c.relation(), vec![(0, 0), (1, 1)]);
        let f = vec![scalar(2, 0), scalar(0, 1)];
        assert_eq!(c.left_kernel(&f), diagonal(&f));
    }

    #[test]
    fn merge_relation() {
        let c = Correspondence::new(&merge());
        assert_eq!(c.relation().len(), 9);
        let k = c.rank_one_kernel(&delta(3, 0), &delta(3, 1));
        assert_eq!(k[0][1], Scalar::one());
    }

    #[test]
    fn full_check_with_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for sigma in [vec![1, 0], vec![2, 2, 2], vec![1, 2, 0, 0]] {
            let sys = FiniteSystem::from_map(sigma).unwrap();
            let samples: Vec<Function> = (0..2).map(|_| random_function(sys.len(), &mut rng)).collect();
            let r = correspondence_check(&sys, &samples);
            assert!(r.passed, "{:?}", r.failures());
        }
    }

    #[test]
    fn wrong_inner_product_fails_positivity() {
        // summing over σ(x) instead of σ^{-1}(x) is caught by the module law
        let sys = merge();
        let c = Correspondence::new(&sys);
        let xi = vec![scalar(1, 0), scalar(0, 0), scalar(0, 0)];
        let f = vec![scalar(0, 0), scalar(0, 0), scalar(2, 0)];
        let wrong: Function = sys
            .points()
            .map(|x| xi[sys.sigma(x)].conj() * &xi[sys.sigma(x)])
            .collect();
        assert_ne!(wrong, c.inner(&xi, &xi));
        assert_eq!(c.inner(&xi, &c.right(&xi, &f)), mul_all(&c.inner(&xi, &xi), &f));
    }
}
