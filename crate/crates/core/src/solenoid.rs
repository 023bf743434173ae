//! The (p,q)-solenoid: `H^0(X) = Z`, `H^1(X) = Z[1/p]` with `σ* = q/p`, and
//! nothing above degree one.
//!
//! Rank-one localizations `Z[1/P]` are handled exactly: an endomorphism is
//! multiplication by a rational `a/b` with `b` a unit, and the cokernel of
//! multiplication by `c/b` is `Z/n` where `n` is `|c|` with every inverted
//! prime removed.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::abelian::FgAbGroup;
use crate::cochain::GammaCohomology;
use crate::error::{Error, Result};

/// Prime factors of `|n|` by trial division.
pub fn prime_factors(n: &BigInt) -> BTreeSet<BigInt> {
    let mut n = n.abs();
    let mut out = BTreeSet::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            while (&n % &p).is_zero() {
                n /= &p;
            }
            out.insert(p.clone());
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.insert(n);
    }
    out
}

/// The subring of `Q` with denominators supported on `inverted_primes`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LocalizedModule {
    inverted_primes: BTreeSet<BigInt>,
}

impl LocalizedModule {
    pub fn integers() -> Self {
        Self::default()
    }

    /// `Z[1/n]`.
    pub fn inverting(n: &BigInt) -> Self {
        LocalizedModule {
            inverted_primes: prime_factors(n),
        }
    }

    pub fn from_primes(primes: impl IntoIterator<Item = BigInt>) -> Result<Self> {
        let inverted_primes: BTreeSet<BigInt> = primes.into_iter().collect();
        for p in &inverted_primes {
            if *p < BigInt::from(2) || prime_factors(p).len() != 1 || prime_factors(p).first() != Some(p) {
                return Err(Error::invalid(format!("{} is not a prime", p)));
            }
        }
        Ok(LocalizedModule { inverted_primes })
    }

    pub fn inverted_primes(&self) -> &BTreeSet<BigInt> {
        &self.inverted_primes
    }

    pub fn is_integers(&self) -> bool {
        self.inverted_primes.is_empty()
    }

    pub fn is_unit(&self, n: &BigInt) -> bool {
        !n.is_zero() && prime_factors(n).is_subset(&self.inverted_primes)
    }

    /// `|n|` with all inverted primes divided out.
    pub fn strip(&self, n: &BigInt) -> BigInt {
        let mut n = n.abs();
        for p in &self.inverted_primes {
            while !n.is_zero() && (&n % p).is_zero() {
                n /= p;
            }
        }
        n
    }
}

impl fmt::Display for LocalizedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integers() {
            return write!(f, "Z");
        }
        let prod: BigInt = self.inverted_primes.iter().product();
        write!(f, "Z[1/{}]", prod)
    }
}

impl Serialize for LocalizedModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Multiplication by `numerator / denominator` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalHom {
    numerator: BigInt,
    denominator: BigInt,
}

impl RationalHom {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let (mut a, mut b) = (numerator.into(), denominator.into());
        if b.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        if b.is_negative() {
            a = -a;
            b = -b;
        }
        let g = a.gcd(&b);
        Ok(RationalHom {
            numerator: a / &g,
            denominator: b / g,
        })
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        RationalHom {
            numerator: n.into(),
            denominator: BigInt::one(),
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn is_one(&self) -> bool {
        self.numerator == self.denominator
    }

    pub fn check_on(&self, m: &LocalizedModule) -> Result<()> {
        if !m.is_unit(&self.denominator) {
            return Err(Error::invalid(format!(
                "{} is not an endomorphism of {}: the denominator is not invertible",
                self, m
            )));
        }
        Ok(())
    }
}

impl fmt::Display for RationalHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

/// `ker(1 - r)`: zero unless `r = 1`, when it is the whole module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalizedKernel {
    Zero,
    Whole(LocalizedModule),
}

impl fmt::Display for LocalizedKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalizedKernel::Zero => write!(f, "0"),
            LocalizedKernel::Whole(m) => write!(f, "{}", m),
        }
    }
}

pub fn localized_kernel(m: &LocalizedModule, r: &RationalHom) -> Result<LocalizedKernel> {
    r.check_on(m)?;
    Ok(if r.is_one() {
        LocalizedKernel::Whole(m.clone())
    } else {
        LocalizedKernel::Zero
    })
}

/// `coker(1 - r)` for `r != 1`.
pub fn localized_cokernel(m: &LocalizedModule, r: &RationalHom) -> Result<FgAbGroup> {
    r.check_on(m)?;
    if r.is_one() {
        return Err(Error::Degenerate(format!(
            "1 - r = 0 on {}; the cokernel is {} itself",
            m, m
        )));
    }
    // 1 - a/b = (b - a)/b and b is a unit
    let c = &r.denominator - &r.numerator;
    Ok(FgAbGroup::cyclic(m.strip(&c)))
}

/// `(p, q)` with `|p|, |q| >= 2` and `gcd(p, q) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolenoidInput {
    p: BigInt,
    q: BigInt,
}

impl SolenoidInput {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        let two = BigInt::from(2);
        if p.abs() < two {
            return Err(Error::invalid(format!("|p| >= 2 violated: p = {}", p)));
        }
        if q.abs() < two {
            return Err(Error::invalid(format!("|q| >= 2 violated: q = {}", q)));
        }
        if !p.gcd(&q).is_one() {
            return Err(Error::invalid(format!(
                "gcd(p, q) = 1 violated: gcd({}, {}) = {}",
                p,
                q,
                p.gcd(&q)
            )));
        }
        Ok(SolenoidInput { p, q })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }
}

/// One degree of the cohomology of the solenoid itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolenoidXDegree {
    pub n: usize,
    pub group: String,
    #[serde(rename = "sigmaStar")]
    pub sigma_star: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolenoidTable {
    pub input: SolenoidInput,
    /// `H^0, H^1` of `X`; higher groups vanish.
    pub hx: Vec<SolenoidXDegree>,
    /// `H^0 .. H^3` of `Γ`; higher groups vanish.
    pub h_gamma: Vec<GammaCohomology>,
    pub brauer: GammaCohomology,
}

impl SolenoidTable {
    pub fn group(&self, n: usize) -> FgAbGroup {
        self.h_gamma
            .get(n)
            .and_then(|h| h.split_sum.clone())
            .unwrap_or_default()
    }
}

pub fn solenoid_table(s: &SolenoidInput) -> Result<SolenoidTable> {
    let module = LocalizedModule::inverting(&s.p);
    let r = RationalHom::new(s.q.clone(), s.p.clone())?;
    let h0_x = FgAbGroup::free(1);

    // row for H^0(X) = Z with σ* = id
    let ker0 = h0_x.clone();
    let coker0 = h0_x.clone();
    // row for H^1(X) = Z[1/p] with σ* = q/p
    let ker1 = match localized_kernel(&module, &r)? {
        LocalizedKernel::Zero => FgAbGroup::zero(),
        LocalizedKernel::Whole(m) => {
            return Err(Error::internal(format!("1 - q/p vanished on {}", m)));
        }
    };
    let coker1 = localized_cokernel(&module, &r)?;

    let h_gamma = vec![
        GammaCohomology::from_ends(0, ker0, FgAbGroup::zero()),
        GammaCohomology::from_ends(1, ker1, coker0),
        GammaCohomology::from_ends(2, FgAbGroup::zero(), coker1),
        GammaCohomology::from_ends(3, FgAbGroup::zero(), FgAbGroup::zero()),
    ];
    if h_gamma.iter().any(|h| !h.split_certified) {
        return Err(Error::internal("solenoid row failed to split"));
    }
    let hx = vec![
        SolenoidXDegree {
            n: 0,
            group: h0_x.to_string(),
            sigma_star: "1".into(),
        },
        SolenoidXDegree {
            n: 1,
            group: module.to_string(),
            sigma_star: r.to_string(),
        },
    ];
    Ok(SolenoidTable {
        input: s.clone(),
        hx,
        brauer: h_gamma[3].clone(),
        h_gamma,
    })
}
