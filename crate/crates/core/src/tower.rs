//! Towers `G_0 <- G_1 <- G_2 <- ...` of finitely generated abelian groups,
//! their inverse limits, and lim¹ through the Mittag-Leffler condition.
//!
//! A tower is given by finitely many stages plus a tail policy. With a
//! stabilized tail the last stage `G_N` and the last map `T : G_N -> G_N`
//! repeat forever; with a truncated tail nothing beyond the data is known and
//! the answers are correspondingly weaker.
//!
//! Everything reduces to the image chain `T^m(G_N)`:
//!
//! * it stabilizes iff the chain `T_f^m(Z^r)` of the free quotient does;
//! * past `m = r` the free chain has constant rank `s` and `T_f` acts on each
//!   `T_f^m(Z^r)` by a matrix of one fixed determinant `δ`, so the chain
//!   stabilizes iff `|δ| = 1` (or `s = 0`), and otherwise shrinks by index
//!   `|δ|` at every step.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::{hermite_column_form, smith_normal_form, solve_columns, AbHom, FgAbGroup, IntMatrix, Subgroup};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailPolicy {
    /// `G_N` and the endomorphism `f_{N-1}` repeat forever.
    Stabilized,
    /// Nothing is known past `G_N`.
    Truncated,
}

/// `maps[k] : stages[k+1] -> stages[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TowerJson", into = "TowerJson")]
pub struct Tower {
    stages: Vec<FgAbGroup>,
    maps: Vec<AbHom>,
    tail: TailPolicy,
}

#[derive(Clone, Serialize, Deserialize)]
struct TowerJson {
    stages: Vec<FgAbGroup>,
    maps: Vec<IntMatrix>,
    tail: TailPolicy,
}

impl TryFrom<TowerJson> for Tower {
    type Error = Error;

    fn try_from(raw: TowerJson) -> Result<Self> {
        if raw.maps.len() + 1 != raw.stages.len() {
            return Err(Error::shape(format!(
                "{} stages need {} maps, got {}",
                raw.stages.len(),
                raw.stages.len().saturating_sub(1),
                raw.maps.len()
            )));
        }
        let maps = raw
            .maps
            .into_iter()
            .enumerate()
            .map(|(k, m)| {
                let (s, t) = (&raw.stages[k + 1], &raw.stages[k]);
                let m = m.with_shape(t.generator_count(), s.generator_count())?;
                AbHom::new(s.clone(), t.clone(), m)
                    .map_err(|e| Error::invalid(format!("map {} -> {}: {}", k + 1, k, e)))
            })
            .collect::<Result<Vec<_>>>()?;
        Tower::new(raw.stages, maps, raw.tail)
    }
}

impl From<Tower> for TowerJson {
    fn from(t: Tower) -> Self {
        TowerJson {
            maps: t.maps.iter().map(|m| m.matrix().clone()).collect(),
            stages: t.stages,
            tail: t.tail,
        }
    }
}

impl Tower {
    pub fn new(stages: Vec<FgAbGroup>, maps: Vec<AbHom>, tail: TailPolicy) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::invalid("a tower needs at least one stage"));
        }
        if maps.len() + 1 != stages.len() {
            return Err(Error::shape(format!(
                "{} stages need {} maps, got {}",
                stages.len(),
                stages.len() - 1,
                maps.len()
            )));
        }
        for (k, f) in maps.iter().enumerate() {
            if f.source() != &stages[k + 1] || f.target() != &stages[k] {
                return Err(Error::shape(format!(
                    "map {} must go {} -> {}, got {} -> {}",
                    k,
                    stages[k + 1],
                    stages[k],
                    f.source(),
                    f.target()
                )));
            }
        }
        if tail == TailPolicy::Stabilized {
            match maps.last() {
                None => return Err(Error::invalid("a stabilized tail needs a last map to repeat")),
                Some(f) if !f.is_endomorphism() => {
                    return Err(Error::invalid(format!(
                        "a stabilized tail repeats the last map, which must be an endomorphism; got {} -> {}",
                        f.source(),
                        f.target()
                    )))
                }
                _ => {}
            }
        }
        Ok(Tower { stages, maps, tail })
    }

    /// `(G, f)` repeated forever.
    pub fn constant(g: &FgAbGroup, f: &AbHom) -> Result<Self> {
        Tower::new(vec![g.clone(), g.clone()], vec![f.clone()], TailPolicy::Stabilized)
    }

    pub fn stages(&self) -> &[FgAbGroup] {
        &self.stages
    }

    pub fn maps(&self) -> &[AbHom] {
        &self.maps
    }

    pub fn tail(&self) -> TailPolicy {
        self.tail
    }

    /// Index of the last given stage.
    pub fn top(&self) -> usize {
        self.stages.len() - 1
    }

    /// Appends one more copy of the repeating block of a stabilized tower.
    pub fn extended(&self) -> Result<Tower> {
        if self.tail != TailPolicy::Stabilized {
            return Err(Error::invalid("only stabilized towers can be extended"));
        }
        let mut t = self.clone();
        t.stages.push(self.stages[self.top()].clone());
        t.maps.push(self.maps[self.maps.len() - 1].clone());
        Ok(t)
    }

    /// The composite `G_N -> G_k`.
    fn to_stage(&self, k: usize) -> AbHom {
        let mut f = AbHom::identity(&self.stages[self.top()]);
        for j in (k..self.top()).rev() {
            f = self.maps[j].compose(&f).expect("composable chain");
        }
        f
    }

    fn all_maps_surjective(&self) -> bool {
        self.maps.iter().all(AbHom::is_surjective)
    }
}

/// Proof that the image chains stabilize: the chain at the repeating stage
/// is constant from `stable_step` on, so the chain at stage `k` is constant
/// from `stable_step + (N - k)` on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MittagLeffler {
    #[serde(rename = "stableStep")]
    pub stable_step: usize,
    pub stages: Vec<StageStabilization>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageStabilization {
    pub stage: usize,
    /// `Im(G_{stage+m} -> G_stage)` is the same for all `m >= step`.
    pub step: usize,
    pub image: FgAbGroup,
}

/// A stage whose image chain provably never stabilizes: from `from_step`
/// on, every further step shrinks the image by `index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonStabilization {
    pub stage: usize,
    #[serde(rename = "fromStep")]
    pub from_step: usize,
    #[serde(serialize_with = "as_decimal")]
    pub index: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum LimOne {
    Zero {
        certificate: MittagLeffler,
    },
    Unknown {
        reason: String,
        witness: Option<NonStabilization>,
    },
}

impl LimOne {
    pub fn is_zero(&self) -> bool {
        matches!(self, LimOne::Zero { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum InverseLimit {
    Group {
        group: FgAbGroup,
        /// Image of the limit in `G_0`.
        #[serde(rename = "imageInBase")]
        image_in_base: FgAbGroup,
        #[serde(skip)]
        base_subgroup: Box<Subgroup>,
        reason: String,
    },
    Inconclusive {
        reason: String,
        /// `Im(G_N -> G_k)` for each given stage.
        #[serde(rename = "stageImages")]
        stage_images: Vec<FgAbGroup>,
        /// Every stage finite and every map onto: the limit is a profinite
        /// group the data does not pin down.
        profinite: bool,
    },
}

impl InverseLimit {
    pub fn group(&self) -> Option<&FgAbGroup> {
        match self {
            InverseLimit::Group { group, .. } => Some(group),
            InverseLimit::Inconclusive { .. } => None,
        }
    }

    pub fn image_in_base(&self) -> Option<&Subgroup> {
        match self {
            InverseLimit::Group { base_subgroup, .. } => Some(base_subgroup),
            InverseLimit::Inconclusive { .. } => None,
        }
    }
}

/// Analysis of the repeating stage `(G, T)`.
struct StableChain {
    /// `T^m(G)` for `m = 0..=last`; the last entry equals its successor when
    /// the chain stabilizes.
    images: Vec<Subgroup>,
    outcome: ChainOutcome,
}

enum ChainOutcome {
    Stable {
        step: usize,
    },
    Shrinking {
        from_step: usize,
        index: BigInt,
        lattice: IntMatrix,
        rank: usize,
    },
}

/// Generous bound on the stabilization step; reaching it is a bug since
/// termination is guaranteed once the free determinant is a unit.
const STEP_LIMIT: usize = 100_000;

fn free_block(f: &AbHom) -> IntMatrix {
    let (ts, tt) = (f.source().torsion().len(), f.target().torsion().len());
    let rows: Vec<usize> = (tt..f.target().generator_count()).collect();
    let cols: Vec<usize> = (ts..f.source().generator_count()).collect();
    f.matrix().select(&rows, &cols)
}

fn analyze(g: &FgAbGroup, t: &AbHom) -> Result<StableChain> {
    let tf = free_block(t);
    let r = tf.rows();
    let mut power = IntMatrix::identity(r);
    for _ in 0..r {
        power = tf.mul_checked(&power)?;
    }
    let lattice = hermite_column_form(&power).lattice_basis();
    let s = lattice.cols();
    if s > 0 {
        let image = tf.mul_checked(&lattice)?;
        let a =
            solve_columns(&lattice, &image)?.ok_or_else(|| Error::internal("free image lattice is not invariant"))?;
        let delta = a.determinant()?.abs();
        if delta.is_zero() {
            return Err(Error::internal("free map lost rank past the Fitting index"));
        }
        if !delta.is_one() {
            return Ok(StableChain {
                images: vec![Subgroup::whole(g)],
                outcome: ChainOutcome::Shrinking {
                    from_step: r,
                    index: delta,
                    lattice,
                    rank: s,
                },
            });
        }
    }
    let mut images = vec![Subgroup::whole(g)];
    for m in 0..STEP_LIMIT {
        let next = images[m].image_under(t)?;
        if next.same_as(&images[m]) {
            return Ok(StableChain {
                images,
                outcome: ChainOutcome::Stable { step: m },
            });
        }
        images.push(next);
    }
    Err(Error::internal(
        "image chain failed to stabilize despite a unit determinant",
    ))
}

fn stage_image_groups(t: &Tower) -> Result<Vec<FgAbGroup>> {
    let top = Subgroup::whole(&t.stages[t.top()]);
    (0..=t.top())
        .map(|k| Ok(top.image_under(&t.to_stage(k))?.structure()))
        .collect()
}

pub fn inverse_limit(t: &Tower) -> Result<InverseLimit> {
    if t.tail == TailPolicy::Truncated {
        let stage_images = stage_image_groups(t)?;
        let profinite = t.stages.iter().all(FgAbGroup::is_finite) && t.all_maps_surjective();
        return Ok(InverseLimit::Inconclusive {
            reason: "truncated tail: the limit depends on stages beyond the data".into(),
            stage_images,
            profinite,
        });
    }
    let n = t.top();
    let g = &t.stages[n];
    let tmap = &t.maps[n - 1];
    let chain = analyze(g, tmap)?;
    let to_base = t.to_stage(0);
    match chain.outcome {
        ChainOutcome::Stable { step } => {
            let stable = &chain.images[step];
            let base = stable.image_under(&to_base)?;
            Ok(InverseLimit::Group {
                group: stable.structure(),
                image_in_base: base.structure(),
                base_subgroup: Box::new(base),
                reason: format!("image chain at stage {} is constant from step {}", n, step),
            })
        }
        ChainOutcome::Shrinking { index, rank: 1, .. } => {
            // the free quotient has zero limit, so the limit is that of the
            // torsion subgroup, where the finite chain stabilizes
            let t_count = g.torsion().len();
            let gens = IntMatrix::identity(g.generator_count()).select(
                &(0..g.generator_count()).collect::<Vec<_>>(),
                &(0..t_count).collect::<Vec<_>>(),
            );
            let mut cur = Subgroup::new(g.clone(), gens)?;
            loop {
                let next = cur.image_under(tmap)?;
                if next.same_as(&cur) {
                    break;
                }
                cur = next;
            }
            let base = cur.image_under(&to_base)?;
            Ok(InverseLimit::Group {
                group: cur.structure(),
                image_in_base: base.structure(),
                base_subgroup: Box::new(base),
                reason: format!(
                    "free part has rank one with determinant of absolute value {}, so only torsion survives",
                    index
                ),
            })
        }
        ChainOutcome::Shrinking { index, rank, .. } => Ok(InverseLimit::Inconclusive {
            reason: format!(
                "free part of rank {} shrinks by index {} per step; its limit needs the unit part of the characteristic polynomial",
                rank, index
            ),
            stage_images: stage_image_groups(t)?,
            profinite: false,
        }),
    }
}

fn as_decimal<S: serde::Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

fn rank_of(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

pub fn lim_one(t: &Tower) -> Result<LimOne> {
    if t.tail == TailPolicy::Truncated {
        return Ok(LimOne::Unknown {
            reason: "truncated tail: image chains past the data are unknown".into(),
            witness: None,
        });
    }
    let n = t.top();
    let chain = analyze(&t.stages[n], &t.maps[n - 1])?;
    match chain.outcome {
        ChainOutcome::Stable { step } => {
            let stable = &chain.images[step];
            let mut stages = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let f = t.to_stage(k);
                let image = stable.image_under(&f)?;
                // double-check one step further along the chain
                let further = stable.image_under(&t.maps[n - 1])?.image_under(&f)?;
                if !further.same_as(&image) {
                    return Err(Error::internal(format!("stage {} image moved after stabilization", k)));
                }
                stages.push(StageStabilization {
                    stage: k,
                    step: step + (n - k),
                    image: image.structure(),
                });
            }
            Ok(LimOne::Zero {
                certificate: MittagLeffler {
                    stable_step: step,
                    stages,
                },
            })
        }
        ChainOutcome::Shrinking {
            from_step,
            index,
            lattice,
            rank,
        } => {
            // stage k inherits the shrinking whenever G_N -> G_k is injective
            // on the eventual free image
            let witness_stage = (0..=n)
                .find(|&k| {
                    let fk = free_block(&t.to_stage(k));
                    fk.mul_checked(&lattice).map(|m| rank_of(&m) == rank).unwrap_or(false)
                })
                .unwrap_or(n);
            Ok(LimOne::Unknown {
                reason: "Mittag-Leffler fails: an image chain decreases forever".into(),
                witness: Some(NonStabilization {
                    stage: witness_stage,
                    from_step: from_step + (n - witness_stage),
                    index,
                }),
            })
        }
    }
}

/// `0 -> lim¹ H^{n-1} -> H^n(Γ) -> lim H^n -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerSes {
    pub n: usize,
    pub sub: LimOne,
    pub quotient: InverseLimit,
    #[serde(rename = "groupDetermined")]
    pub group_determined: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<FgAbGroup>,
}

/// `towers[m]` is the tower of `H^m(X_k)`; degrees `n - 1` and `n` are needed.
pub fn tower_groupoid_cohomology(towers: &[Tower], n: usize) -> Result<TowerSes> {
    if n >= towers.len() {
        return Err(Error::DegreeOutOfRange {
            degree: n,
            max: towers.len().saturating_sub(1),
        });
    }
    let sub = match n.checked_sub(1) {
        Some(m) => lim_one(&towers[m])?,
        None => {
            let zero = FgAbGroup::zero();
            lim_one(&Tower::constant(&zero, &AbHom::identity(&zero))?)?
        }
    };
    let quotient = inverse_limit(&towers[n])?;
    let group = match (&sub, quotient.group()) {
        (LimOne::Zero { .. }, Some(g)) => Some(g.clone()),
        _ => None,
    };
    Ok(TowerSes {
        n,
        group_determined: group.is_some(),
        group,
        sub,
        quotient,
    })
}
