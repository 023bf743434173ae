//! Twists of `Γ(X, σ)` pulled back from a `Z/n`-bundle `T` over `X`.
//!
//! Over `X_{k,l} = {(x, k-l, y) : σ^k x = σ^l y}` the fiber is the quotient
//! of `T_x × ... × T_{σ^{k-1}x} × T̄_y × ... × T̄_{σ^{l-1}y}` by the
//! diagonal moves `(z t, v) ~ (t, z v)`. A presentation stores the labels
//! `t_1 .. t_k`, `v_1 .. v_l` and a scalar `s ∈ Z/n` acting on the class.
//!
//! The bundle is given by trivializations `ψ_x : T_x -> Z/n`, permutations of
//! the labels `0 .. n-1`, with `z · t = ψ_x^{-1}(ψ_x(t) + z)`. Two
//! presentations over the same base element are equivalent exactly when
//! their class invariants `Φ = s + Σ ψ(t_i) - Σ ψ(v_j)` agree.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::report::{ensure, LawCheck, VerificationReport};
use super::system::{enumerate, FiniteSystem, GroupoidElement};
use crate::error::{Error, Result};

/// Trivializations `ψ_x` of a `Z/n`-bundle over a finite set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleData {
    n: usize,
    psi: Vec<Vec<usize>>,
    psi_inv: Vec<Vec<usize>>,
}

impl BundleData {
    /// `psi[x][t] = ψ_x(t)`; each row must be a permutation of `0 .. n-1`.
    pub fn new(n: usize, psi: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("fiber order n must be >= 1"));
        }
        let mut psi_inv = Vec::with_capacity(psi.len());
        for (x, row) in psi.iter().enumerate() {
            if row.len() != n {
                return Err(Error::shape(format!(
                    "ψ at point {} has {} values, expected {}",
                    x,
                    row.len(),
                    n
                )));
            }
            let mut inv = vec![usize::MAX; n];
            for (t, &z) in row.iter().enumerate() {
                if z >= n || inv[z] != usize::MAX {
                    return Err(Error::invalid(format!(
                        "ψ at point {} is not a permutation of 0..{}",
                        x, n
                    )));
                }
                inv[z] = t;
            }
            psi_inv.push(inv);
        }
        Ok(BundleData { n, psi, psi_inv })
    }

    /// `ψ_x = id` at every point.
    pub fn trivial(points: usize, n: usize) -> Result<Self> {
        Self::new(n, vec![(0..n).collect(); points])
    }

    pub fn random<R: Rng + ?Sized>(points: usize, n: usize, rng: &mut R) -> Result<Self> {
        let psi = (0..points)
            .map(|_| {
                let mut row: Vec<usize> = (0..n).collect();
                row.shuffle(rng);
                row
            })
            .collect();
        Self::new(n, psi)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> usize {
        self.psi.len()
    }

    pub fn psi(&self, x: usize, t: usize) -> usize {
        self.psi[x][t]
    }

    pub fn psi_inv(&self, x: usize, z: usize) -> usize {
        self.psi_inv[x][z % self.n]
    }

    /// `z · t` in `T_x`.
    pub fn act(&self, x: usize, z: usize, t: usize) -> usize {
        self.psi_inv(x, self.psi(x, t) + z)
    }

    pub fn is_trivial(&self) -> bool {
        self.psi.iter().all(|row| row.iter().enumerate().all(|(t, &z)| t == z))
    }

    pub fn from_json(sys: &FiniteSystem, json: &BundleJson) -> Result<Self> {
        match &json.psi {
            None => Self::trivial(sys.len(), json.n),
            Some(map) => {
                let mut psi = Vec::with_capacity(sys.len());
                for x in sys.points() {
                    let row = map
                        .get(sys.label(x))
                        .ok_or_else(|| Error::invalid(format!("ψ is missing at point {:?}", sys.label(x))))?;
                    psi.push(row.clone());
                }
                if map.len() != sys.len() {
                    return Err(Error::invalid("ψ is given at labels that are not points"));
                }
                Self::new(json.n, psi)
            }
        }
    }

    pub fn to_json(&self, sys: &FiniteSystem) -> BundleJson {
        BundleJson {
            n: self.n,
            psi: Some(
                sys.points()
                    .map(|x| (sys.label(x).to_string(), self.psi[x].clone()))
                    .collect(),
            ),
        }
    }
}

/// `{"n": 4, "psi": {"a": [2, 0, 3, 1], ...}}`; a missing `psi` means the
/// identity trivialization everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<BTreeMap<String, Vec<usize>>>,
}

/// A presentation `s · (t_1, .., t_k, v̄_l, .., v̄_1)` over `base` at level
/// `(k, l)`; the level need not be the minimal witness of `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistElement {
    pub base: GroupoidElement,
    pub scalar: usize,
    /// `t[i] ∈ T_{σ^i x}`.
    pub t: Vec<usize>,
    /// `v[j] ∈ T_{σ^j y}`.
    pub v: Vec<usize>,
}

impl TwistElement {
    pub fn level(&self) -> (usize, usize) {
        (self.t.len(), self.v.len())
    }
}

#[derive(Clone, Debug)]
pub struct Twist {
    sys: FiniteSystem,
    data: BundleData,
}

impl Twist {
    pub fn new(sys: &FiniteSystem, data: BundleData) -> Result<Self> {
        if data.points() != sys.len() {
            return Err(Error::shape(format!(
                "bundle data covers {} points, system has {}",
                data.points(),
                sys.len()
            )));
        }
        Ok(Twist { sys: sys.clone(), data })
    }

    pub fn system(&self) -> &FiniteSystem {
        &self.sys
    }

    pub fn data(&self) -> &BundleData {
        &self.data
    }

    fn n(&self) -> usize {
        self.data.order()
    }

    fn add(&self, a: usize, b: usize) -> usize {
        (a + b) % self.n()
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        (a + self.n() - b % self.n()) % self.n()
    }

    /// `ψ` applied along the orbit: `Σ ψ_{σ^i p}(labels[i])`.
    fn psi_sum(&self, p: usize, labels: &[usize]) -> usize {
        self.sys
            .orbit(p, labels.len())
            .into_iter()
            .zip(labels)
            .fold(0, |acc, (q, &t)| self.add(acc, self.data.psi(q, t)))
    }

    /// The class invariant `Φ = s + Σ ψ(t_i) - Σ ψ(v_j)`.
    pub fn class(&self, e: &TwistElement) -> usize {
        let plus = self.add(e.scalar, self.psi_sum(e.base.x, &e.t));
        self.sub(plus, self.psi_sum(e.base.y, &e.v))
    }

    pub fn equivalent(&self, a: &TwistElement, b: &TwistElement) -> bool {
        a.base == b.base && self.class(a) == self.class(b)
    }

    /// Checks that the labels sit in the right fibers and the level is a
    /// witness of the base.
    pub fn element(&self, base: GroupoidElement, scalar: usize, t: Vec<usize>, v: Vec<usize>) -> Result<TwistElement> {
        let (k, l) = (t.len(), v.len());
        if k as i64 - l as i64 != base.m || self.sys.iterate(base.x, k) != self.sys.iterate(base.y, l) {
            return Err(Error::invalid(format!(
                "level ({}, {}) is not a witness of {}",
                k,
                l,
                self.sys.show(&base)
            )));
        }
        if scalar >= self.n() || t.iter().chain(&v).any(|&a| a >= self.n()) {
            return Err(Error::invalid(format!("labels must lie in 0..{}", self.n())));
        }
        Ok(TwistElement { base, scalar, t, v })
    }

    /// Level `(k, l) -> (k+1, l+1)`, inserting the label `r` in both new
    /// slots. The slots lie over the same point, so the class is unchanged.
    pub fn lift(&self, e: &TwistElement, r: usize) -> TwistElement {
        let mut out = e.clone();
        out.t.push(r);
        out.v.push(r);
        out
    }

    pub fn lift_to(&self, e: &TwistElement, k: usize) -> TwistElement {
        let mut out = e.clone();
        while out.t.len() < k {
            out = self.lift(&out, 0);
        }
        out
    }

    /// Level `(k+1, l+1) -> (k, l)` on elements of `X_{k,l}`, absorbing the
    /// last pair as the scalar `u_{k+1} v̄_{l+1}`.
    pub fn restrict(&self, e: &TwistElement) -> Result<TwistElement> {
        let (k, l) = e.level();
        if k == 0 || l == 0 {
            return Err(Error::invalid("restriction needs k, l >= 1"));
        }
        let p = self.sys.iterate(e.base.x, k - 1);
        let q = self.sys.iterate(e.base.y, l - 1);
        if p != q {
            return Err(Error::invalid(format!(
                "{} is not in X_{{{},{}}}",
                self.sys.show(&e.base),
                k - 1,
                l - 1
            )));
        }
        let mut out = e.clone();
        let a = out.t.pop().expect("k >= 1");
        let b = out.v.pop().expect("l >= 1");
        out.scalar = self.add(out.scalar, self.sub(self.data.psi(p, a), self.data.psi(p, b)));
        Ok(out)
    }

    /// Restricts as far as the minimal witness of the base.
    pub fn normalize(&self, e: &TwistElement) -> TwistElement {
        let mut out = e.clone();
        while out.t.len() > e.base.k {
            out = self.restrict(&out).expect("above the minimal witness");
        }
        out
    }

    /// `λμ = (Π v_i ū_i)(t_1, .., t_j, w̄_l, .., w̄_1)` for `λ` at `(j, k)` and
    /// `μ` at `(k, l)`; other levels are lifted to a common middle first.
    pub fn mul(&self, lambda: &TwistElement, mu: &TwistElement) -> Result<TwistElement> {
        let base = self.sys.compose(&lambda.base, &mu.base)?;
        let middle = lambda.v.len().max(mu.t.len());
        let a = self.lift_to(lambda, lambda.t.len() + middle - lambda.v.len());
        let b = self.lift_to(mu, middle);
        let y = lambda.base.y;
        let mut scalar = self.add(a.scalar, b.scalar);
        for (i, q) in self.sys.orbit(y, middle).into_iter().enumerate() {
            scalar = self.add(scalar, self.sub(self.data.psi(q, b.t[i]), self.data.psi(q, a.v[i])));
        }
        Ok(TwistElement {
            base,
            scalar,
            t: a.t,
            v: b.v,
        })
    }

    /// `(u, v̄)^{-1} = (v, ū)` with the scalar negated.
    pub fn inverse(&self, e: &TwistElement) -> TwistElement {
        TwistElement {
            base: self.sys.inverse(&e.base),
            scalar: self.sub(0, e.scalar),
            t: e.v.clone(),
            v: e.t.clone(),
        }
    }

    pub fn unit(&self, x: usize) -> TwistElement {
        TwistElement {
            base: self.sys.unit(x),
            scalar: 0,
            t: Vec::new(),
            v: Vec::new(),
        }
    }

    /// `z · e`.
    pub fn act(&self, z: usize, e: &TwistElement) -> TwistElement {
        let mut out = e.clone();
        out.scalar = self.add(out.scalar, z);
        out
    }

    /// The section `γ ↦ (ψ^{-1}(0), ..)` at the minimal witness; it has
    /// `Φ = 0` everywhere.
    pub fn section(&self, g: &GroupoidElement) -> TwistElement {
        let zero = |p: usize| self.data.psi_inv(p, 0);
        TwistElement {
            base: *g,
            scalar: 0,
            t: self.sys.orbit(g.x, g.k).into_iter().map(zero).collect(),
            v: self.sys.orbit(g.y, g.l).into_iter().map(zero).collect(),
        }
    }

    /// A presentation at the minimal witness with labels drawn from `seed`.
    pub fn sample(&self, g: &GroupoidElement, seed: usize) -> TwistElement {
        let n = self.n();
        let mix = |slot: usize| {
            (seed
                .wrapping_mul(7)
                .wrapping_add(slot.wrapping_mul(3))
                .wrapping_add(slot * slot))
                % n
        };
        TwistElement {
            base: *g,
            scalar: seed % n,
            t: (0..g.k).map(mix).collect(),
            v: (0..g.l).map(|j| mix(j + g.k + 1)).collect(),
        }
    }

    /// Presentations of the same class reached by one diagonal move each:
    /// shift one label by `1` and compensate with the scalar.
    pub fn moves(&self, e: &TwistElement) -> Vec<TwistElement> {
        let mut out = Vec::new();
        for (i, p) in self.sys.orbit(e.base.x, e.t.len()).into_iter().enumerate() {
            let mut m = e.clone();
            m.t[i] = self.data.act(p, 1, m.t[i]);
            m.scalar = self.sub(m.scalar, 1);
            out.push(m);
        }
        for (j, p) in self.sys.orbit(e.base.y, e.v.len()).into_iter().enumerate() {
            let mut m = e.clone();
            m.v[j] = self.data.act(p, 1, m.v[j]);
            m.scalar = self.add(m.scalar, 1);
            out.push(m);
        }
        out
    }

    pub fn show(&self, e: &TwistElement) -> String {
        format!("{}·({:?} | {:?}) over {}", e.scalar, e.t, e.v, self.sys.show(&e.base))
    }

    /// Checks (i) well-definedness of the product on classes, (ii)
    /// associativity, (iii) inverses and units, (iv) compatibility of the
    /// restriction `(k+1, l+1) -> (k, l)`, (v) `j*` recovering the bundle, and
    /// that the section of [`Twist::section`] is multiplicative.
    pub fn verify(&self, max_abs_m: usize, max_witness: usize) -> VerificationReport {
        let sys = &self.sys;
        let n = self.n();
        let trunc = enumerate(sys, max_abs_m, max_witness);
        let index: BTreeMap<(usize, i64, usize), usize> =
            trunc.elements().iter().enumerate().map(|(i, g)| (g.key(), i)).collect();
        let rep = |g: &GroupoidElement| self.sample(g, index[&g.key()]);
        let show = |e: &TwistElement| self.show(e);
        let mut laws = Vec::new();

        laws.push(LawCheck::run(
            "multiplication well-defined",
            trunc.composable_pairs(),
            |(g, h)| {
                let (a, b) = (rep(g), rep(h));
                let ab = self.mul(&a, &b).map_err(|e| e.to_string())?;
                ensure(ab.base.key() == (g.x, g.m + h.m, h.y), || {
                    format!("{} has the wrong base", show(&ab))
                })?;
                ensure(self.class(&ab) == self.add(self.class(&a), self.class(&b)), || {
                    format!("class of {} {} is not additive", show(&a), show(&b))
                })?;
                let lifted = (self.lift(&a, (g.x + 1) % n), self.lift(&b, g.y % n));
                let alternatives = self
                    .moves(&a)
                    .into_iter()
                    .map(|a2| (a2, b.clone()))
                    .chain(self.moves(&b).into_iter().map(|b2| (a.clone(), b2)))
                    .chain(std::iter::once(lifted));
                for (a2, b2) in alternatives {
                    ensure(self.equivalent(&a2, &a) && self.equivalent(&b2, &b), || {
                        format!("diagonal move changed the class of {}", show(&a2))
                    })?;
                    let p = self.mul(&a2, &b2).map_err(|e| e.to_string())?;
                    ensure(self.equivalent(&p, &ab), || {
                        format!(
                            "{} {} and {} {} have different products",
                            show(&a),
                            show(&b),
                            show(&a2),
                            show(&b2)
                        )
                    })?;
                }
                Ok(())
            },
        ));

        laws.push(LawCheck::run(
            "associativity",
            trunc.composable_triples(),
            |(g, h, k)| {
                let (a, b, c) = (rep(g), rep(h), rep(k));
                let mul = |p: &TwistElement, q: &TwistElement| self.mul(p, q).map_err(|e| e.to_string());
                let left = mul(&mul(&a, &b)?, &c)?;
                let right = mul(&a, &mul(&b, &c)?)?;
                ensure(self.equivalent(&left, &right), || {
                    format!(
                        "({} {}) {} != {} ({} {})",
                        show(&a),
                        show(&b),
                        show(&c),
                        show(&a),
                        show(&b),
                        show(&c)
                    )
                })
            },
        ));

        laws.push(LawCheck::run("inverses", trunc.elements(), |g| {
            let a = rep(g);
            let ai = self.inverse(&a);
            let mul = |p: &TwistElement, q: &TwistElement| self.mul(p, q).map_err(|e| e.to_string());
            let (x, y) = (self.unit(g.x), self.unit(g.y));
            ensure(
                self.equivalent(&mul(&a, &ai)?, &x) && self.equivalent(&mul(&ai, &a)?, &y),
                || format!("{} times its inverse is not a unit", show(&a)),
            )?;
            ensure(
                self.equivalent(&mul(&x, &a)?, &a) && self.equivalent(&mul(&a, &y)?, &a),
                || format!("units fail at {}", show(&a)),
            )?;
            ensure(self.inverse(&ai) == a, || {
                format!("inverse is not an involution at {}", show(&a))
            })
        }));

        let lifts = trunc
            .elements()
            .iter()
            .flat_map(|g| (0..n).flat_map(move |r| (0..n).map(move |s| (g, r, s))));
        laws.push(LawCheck::run("restriction compatibility", lifts, |(g, r, s)| {
            let a = rep(g);
            let p = sys.iterate(g.x, g.k);
            ensure(self.restrict(&self.lift(&a, r)).ok() == Some(a.clone()), || {
                format!("restricting the lift of {} by {} does not return it", show(&a), r)
            })?;
            // arbitrary labels in the new slots
            let mut b = self.lift(&a, r);
            *b.v.last_mut().expect("lifted") = s;
            let rb = self.restrict(&b).map_err(|e| e.to_string())?;
            let shift = self.sub(self.data.psi(p, r), self.data.psi(p, s));
            ensure(
                rb.t == a.t && rb.v == a.v && rb.scalar == self.add(a.scalar, shift),
                || format!("restriction of {} is {}", show(&b), show(&rb)),
            )?;
            ensure(self.equivalent(&rb, &b), || {
                format!("restriction changed the class of {}", show(&b))
            })?;
            let z = (r + 1) % n;
            ensure(self.restrict(&self.act(z, &b)).ok() == Some(self.act(z, &rb)), || {
                format!("restriction of {} is not Z/{}-equivariant", show(&b), n)
            })
        }));

        laws.push(LawCheck::run("j* round trip", sys.points(), |x| {
            let jx = sys.j(x);
            let mut seen = HashSet::new();
            for t in 0..n {
                let e = self.element(jx, 0, vec![t], Vec::new()).map_err(|e| e.to_string())?;
                ensure(self.class(&e) == self.data.psi(x, t), || {
                    format!("class of {} does not match ψ at {}", show(&e), sys.label(x))
                })?;
                seen.insert(self.class(&e));
                for z in 0..n {
                    let moved = self
                        .element(jx, 0, vec![self.data.act(x, z, t)], Vec::new())
                        .map_err(|e| e.to_string())?;
                    ensure(self.equivalent(&moved, &self.act(z, &e)), || {
                        format!("j* is not equivariant at {} with z = {}", show(&e), z)
                    })?;
                }
            }
            ensure(seen.len() == n, || {
                format!("j* is not a bijection onto the fiber at {}", sys.label(x))
            })
        }));

        laws.push(LawCheck::run(
            "section is a homomorphism",
            trunc.composable_pairs(),
            |(g, h)| {
                let gh = sys.compose(g, h).map_err(|e| e.to_string())?;
                let prod = self
                    .mul(&self.section(g), &self.section(h))
                    .map_err(|e| e.to_string())?;
                ensure(self.equivalent(&prod, &self.section(&gh)), || {
                    format!("section fails on {} {}", sys.show(g), sys.show(h))
                })
            },
        ));

        VerificationReport::new("twist", max_abs_m, max_witness, trunc.len(), laws)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn swap() -> FiniteSystem {
        FiniteSystem::from_map(vec![1, 0]).unwrap()
    }

    #[test]
    fn trivial_fiber() {
        let sys = FiniteSystem::from_map(vec![1, 2, 0, 0]).unwrap();
        let tw = Twist::new(&sys, BundleData::trivial(4, 1).unwrap()).unwrap();
        let r = tw.verify(2, 2);
        assert!(r.passed, "{:?}", r.failures());
    }

    #[test]
    fn random_swap_bundle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let data = BundleData::random(2, 4, &mut rng).unwrap();
        let r = Twist::new(&swap(), data).unwrap().verify(3, 3);
        assert!(r.passed, "{:?}", r.failures());
        assert!(r.law("associativity").unwrap().checked > 0);
    }

    #[test]
    fn product_formula_by_hand() {
        let sys = swap();
        let data = BundleData::new(3, vec![vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        let tw = Twist::new(&sys, data).unwrap();
        // λ over (a, 1, b) and μ over (b, 1, a), both at level (1, 0)
        let l = tw.element(sys.j(0), 2, vec![0], vec![]).unwrap();
        let m = tw.element(sys.j(1), 1, vec![2], vec![]).unwrap();
        // λ lifts to (2, 1) to meet μ
        let p = tw.mul(&l, &m).unwrap();
        assert_eq!(p.level(), (2, 0));
        assert_eq!(p.base.key(), (0, 2, 0));
        assert_eq!(tw.class(&p), (tw.class(&l) + tw.class(&m)) % 3);
        assert_eq!(tw.class(&l), (2 + 1) % 3);
    }

    #[test]
    fn inverse_swaps_tuples() {
        let sys = FiniteSystem::from_map(vec![2, 2, 2]).unwrap();
        let tw = Twist::new(&sys, BundleData::trivial(3, 4).unwrap()).unwrap();
        let g = sys.element(0, 0, 1).unwrap();
        let e = tw.element(g, 3, vec![1], vec![2]).unwrap();
        let i = tw.inverse(&e);
        assert_eq!((i.t.clone(), i.v.clone(), i.scalar), (vec![2], vec![1], 1));
        assert!(tw.equivalent(&tw.mul(&e, &i).unwrap(), &tw.unit(0)));
    }

    #[test]
    fn bad_bundle_data() {
        assert!(BundleData::new(3, vec![vec![0, 0, 1]]).is_err());
        assert!(BundleData::new(0, vec![]).is_err());
        assert!(Twist::new(&swap(), BundleData::trivial(3, 2).unwrap()).is_err());
        let tw = Twist::new(&swap(), BundleData::trivial(2, 2).unwrap()).unwrap();
        assert!(tw.element(swap().j(0), 0, vec![], vec![]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let sys = FiniteSystem::from_labels(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        let j: BundleJson = serde_json::from_str(r#"{"n":3,"psi":{"a":[2,0,1],"b":[0,1,2]}}"#).unwrap();
        let d = BundleData::from_json(&sys, &j).unwrap();
        assert_eq!(d.psi(0, 0), 2);
        assert_eq!(d.to_json(&sys), j);
        let t: BundleJson = serde_json::from_str(r#"{"n":2}"#).unwrap();
        assert!(BundleData::from_json(&sys, &t).unwrap().is_trivial());
    }

    #[test]
    fn broken_product_is_caught() {
        // dropping the Π v_i ū_i factor breaks well-definedness
        let sys = swap();
        let tw = Twist::new(&sys, BundleData::trivial(2, 3).unwrap()).unwrap();
        let a = tw.element(sys.j(0), 0, vec![1], vec![]).unwrap();
        let b = tw.element(sys.j(1), 0, vec![0], vec![]).unwrap();
        let naive = |p: &TwistElement, q: &TwistElement| {
            let lifted = tw.lift(p, 0);
            let scalar = (lifted.scalar + q.scalar) % 3;
            let base = sys.compose(&p.base, &q.base).unwrap();
            TwistElement {
                base,
                scalar,
                t: lifted.t,
                v: q.v.clone(),
            }
        };
        let b2 = tw.moves(&b).remove(0);
        assert!(tw.equivalent(&b, &b2));
        assert!(!tw.equivalent(&naive(&a, &b), &naive(&a, &b2)));
    }
}
