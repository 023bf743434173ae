//! Job descriptions, shared by the subcommands and batch manifests, and
//! their evaluation into JSON results.

use std::collections::BTreeMap;

use gcoh_core::abelian::{AbHom, FgAbGroup, IntMatrix, JsonInt};
use gcoh_core::cochain::{groupoid_cohomology, GammaCohomology};
use gcoh_core::groupoid::correspondence::random_function;
use gcoh_core::groupoid::{
    correspondence_check, enumerate, verify_cocycle, verify_groupoid, BundleData, BundleJson, ExtendedCocycle,
    FiniteGroup, FiniteSystem, SkewProduct, Twist, VerificationReport,
};
use gcoh_core::simplicial::{SimplicialComplex, SimplicialMap};
use gcoh_core::solenoid::{solenoid_table, SolenoidInput};
use gcoh_core::torus::TorusEndo;
use gcoh_core::tower::{inverse_limit, lim_one, tower_groupoid_cohomology, Tower};
use gcoh_core::Error;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const DEFAULT_MAX_M: usize = 2;
pub const DEFAULT_MAX_WITNESS: usize = 3;
pub const DEFAULT_SAMPLES: usize = 2;

fn default_max_m() -> usize {
    DEFAULT_MAX_M
}

fn default_max_witness() -> usize {
    DEFAULT_MAX_WITNESS
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

/// One unit of work. The serialized form is the canonical input embedded in
/// reports and hashed for the cache.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Job {
    Torus {
        matrix: IntMatrix,
    },
    Solenoid {
        p: JsonInt,
        q: JsonInt,
    },
    Simplicial {
        complex: SimplicialComplex,
        map: BTreeMap<String, String>,
    },
    Tower {
        /// `towers[m]` is the tower of degree-`m` groups.
        towers: Vec<Tower>,
    },
    #[serde(rename_all = "camelCase")]
    GroupoidVerify {
        system: FiniteSystem,
        #[serde(default = "default_max_m")]
        max_m: usize,
        #[serde(default = "default_max_witness")]
        max_witness: usize,
        #[serde(default)]
        seed: u64,
    },
    #[serde(rename_all = "camelCase")]
    Skew {
        system: FiniteSystem,
        group: String,
        /// Element indices of the group; drawn from the seed when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c: Option<BTreeMap<String, usize>>,
        #[serde(default = "default_max_m")]
        max_m: usize,
        #[serde(default = "default_max_witness")]
        max_witness: usize,
        #[serde(default)]
        seed: u64,
    },
    #[serde(rename_all = "camelCase")]
    Twist {
        system: FiniteSystem,
        fiber_n: usize,
        /// `ψ_x` per point; drawn from the seed when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bundle: Option<BTreeMap<String, Vec<usize>>>,
        #[serde(default = "default_max_m")]
        max_m: usize,
        #[serde(default = "default_max_witness")]
        max_witness: usize,
        #[serde(default)]
        seed: u64,
    },
    #[serde(rename_all = "camelCase")]
    Correspondence {
        system: FiniteSystem,
        #[serde(default = "default_samples")]
        samples: usize,
        #[serde(default)]
        seed: u64,
    },
}

/// Outcome classes, with their process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Internal = 1,
    Invalid = 2,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug)]
pub struct JobError {
    pub status: Status,
    pub message: String,
}

impl JobError {
    pub fn invalid(message: impl Into<String>) -> Self {
        JobError {
            status: Status::Invalid,
            message: message.into(),
        }
    }
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        JobError {
            status: if e.is_internal() {
                Status::Internal
            } else {
                Status::Invalid
            },
            message: e.to_string(),
        }
    }
}

/// A computed result together with whether every verified law held.
pub struct Evaluation {
    pub result: Value,
    pub pass: bool,
}

impl Job {
    pub fn name(&self) -> &'static str {
        match self {
            Job::Torus { .. } => "torus",
            Job::Solenoid { .. } => "solenoid",
            Job::Simplicial { .. } => "simplicial",
            Job::Tower { .. } => "tower",
            Job::GroupoidVerify { .. } => "groupoid-verify",
            Job::Skew { .. } => "skew",
            Job::Twist { .. } => "twist",
            Job::Correspondence { .. } => "correspondence",
        }
    }

    pub fn canonical(&self) -> Value {
        serde_json::to_value(self).expect("jobs serialize")
    }

    pub fn evaluate(&self) -> Result<Evaluation, JobError> {
        let computed = |result: Value| Evaluation { result, pass: true };
        match self {
            Job::Torus { matrix } => torus(matrix).map(computed),
            Job::Solenoid { p, q } => solenoid(&p.0, &q.0).map(computed),
            Job::Simplicial { complex, map } => simplicial(complex, map).map(computed),
            Job::Tower { towers } => tower(towers).map(computed),
            Job::GroupoidVerify {
                system,
                max_m,
                max_witness,
                seed,
            } => groupoid_verify(system, *max_m, *max_witness, *seed),
            Job::Skew {
                system,
                group,
                c,
                max_m,
                max_witness,
                seed,
            } => skew(system, group, c.as_ref(), *max_m, *max_witness, *seed),
            Job::Twist {
                system,
                fiber_n,
                bundle,
                max_m,
                max_witness,
                seed,
            } => twist(system, *fiber_n, bundle.as_ref(), *max_m, *max_witness, *seed),
            Job::Correspondence { system, samples, seed } => correspondence(system, *samples, *seed),
        }
    }
}

fn degree_map<T: Serialize>(items: impl IntoIterator<Item = (usize, T)>) -> Value {
    let map: serde_json::Map<String, Value> = items
        .into_iter()
        .map(|(n, v)| (format!("H{}", n), serde_json::to_value(v).expect("serializable")))
        .collect();
    Value::Object(map)
}

fn describe_rows(rows: &[GammaCohomology]) -> Value {
    degree_map(rows.iter().map(|r| (r.degree, r.describe())))
}

fn torus(matrix: &IntMatrix) -> Result<Value, JobError> {
    let endo = TorusEndo::new(matrix.clone())?;
    let table = endo.groupoid_cohomology()?;
    let hx: Vec<Value> = endo
        .cohomology_data()
        .into_iter()
        .map(|d| json!({"n": d.n, "group": d.group.to_string(), "sigmaStar": d.sigma_star}))
        .collect();
    Ok(json!({
        "dimension": endo.dimension(),
        "degree": endo.degree().to_string(),
        "HX": hx,
        "table": table.rows,
        "groups": describe_rows(&table.rows),
        "brauer": table.brauer.describe(),
    }))
}

fn solenoid(p: &BigInt, q: &BigInt) -> Result<Value, JobError> {
    let input = SolenoidInput::new(p.clone(), q.clone())?;
    let table = solenoid_table(&input)?;
    Ok(json!({
        "HX": degree_map(table.hx.iter().map(|d| (d.n, d.group.clone()))),
        "sigmaStar": degree_map(table.hx.iter().map(|d| (d.n, d.sigma_star.clone()))),
        "table": table.h_gamma,
        "HGamma": describe_rows(&table.h_gamma),
        "brauer": table.brauer.describe(),
    }))
}

fn simplicial(complex: &SimplicialComplex, map: &BTreeMap<String, String>) -> Result<Value, JobError> {
    let f = SimplicialMap::self_map(complex, map)?;
    let sigma: Vec<AbHom> = f.sigma_star()?;
    let rows = f.groupoid_cohomology()?;
    let brauer = match rows.get(3) {
        Some(r) => r.clone(),
        None => groupoid_cohomology(&sigma, 3)?,
    };
    Ok(json!({
        "dimension": complex.dimension(),
        "HX": degree_map(sigma.iter().enumerate().map(|(n, s)| (n, s.source().to_string()))),
        "sigmaStar": degree_map(sigma.iter().enumerate().map(|(n, s)| (n, s.matrix().clone()))),
        "table": rows,
        "HGamma": describe_rows(&rows),
        "brauer": brauer.describe(),
    }))
}

fn tower(towers: &[Tower]) -> Result<Value, JobError> {
    if towers.is_empty() {
        return Err(JobError::invalid("at least one tower is required"));
    }
    let mut per_degree = Vec::with_capacity(towers.len());
    for (m, t) in towers.iter().enumerate() {
        per_degree.push(json!({
            "degree": m,
            "limit": inverse_limit(t)?,
            "limOne": lim_one(t)?,
        }));
    }
    let ses = (0..towers.len())
        .map(|n| tower_groupoid_cohomology(towers, n))
        .collect::<gcoh_core::Result<Vec<_>>>()?;
    Ok(json!({ "towers": per_degree, "HGamma": ses }))
}

fn report_value(r: &VerificationReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn groupoid_verify(sys: &FiniteSystem, max_m: usize, max_witness: usize, seed: u64) -> Result<Evaluation, JobError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<Vec<BigInt>> = sys
        .points()
        .map(|_| vec![BigInt::from(rng.gen_range(-3i64..=3))])
        .collect();
    let g = ExtendedCocycle::new(sys, FgAbGroup::free(1), values)?;
    let laws = verify_groupoid(sys, max_m, max_witness);
    let cocycle = verify_cocycle(sys, &g, max_m, max_witness);
    let elements: Vec<String> = enumerate(sys, max_m, max_witness)
        .elements()
        .iter()
        .map(|e| sys.show(e))
        .collect();
    let generator: BTreeMap<&str, String> = sys
        .points()
        .map(|x| (sys.label(x), g.generator()[x][0].to_string()))
        .collect();
    Ok(Evaluation {
        pass: laws.passed && cocycle.passed,
        result: json!({
            "elements": elements.len(),
            "truncation": elements,
            "cocycleGenerator": generator,
            "reports": [report_value(&laws), report_value(&cocycle)],
        }),
    })
}

fn skew(
    sys: &FiniteSystem,
    group: &str,
    c: Option<&BTreeMap<String, usize>>,
    max_m: usize,
    max_witness: usize,
    seed: u64,
) -> Result<Evaluation, JobError> {
    let g: FiniteGroup = group.parse()?;
    let values: Vec<usize> = match c {
        Some(map) => {
            if map.len() != sys.len() {
                return Err(JobError::invalid("c must be given at every point and nowhere else"));
            }
            sys.points()
                .map(|x| {
                    map.get(sys.label(x))
                        .copied()
                        .ok_or_else(|| JobError::invalid(format!("c is missing at point {:?}", sys.label(x))))
                })
                .collect::<Result<_, _>>()?
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            sys.points().map(|_| rng.gen_range(0..g.order())).collect()
        }
    };
    let sp = SkewProduct::new(sys, &g, values.clone())?;
    let report = sp.verify(max_m, max_witness);
    let c_out: BTreeMap<&str, usize> = sys.points().map(|x| (sys.label(x), values[x])).collect();
    Ok(Evaluation {
        pass: report.passed,
        result: json!({
            "group": g.name(),
            "order": g.order(),
            "c": c_out,
            "points": sp.system().len(),
            "report": report_value(&report),
        }),
    })
}

fn twist(
    sys: &FiniteSystem,
    n: usize,
    bundle: Option<&BTreeMap<String, Vec<usize>>>,
    max_m: usize,
    max_witness: usize,
    seed: u64,
) -> Result<Evaluation, JobError> {
    let data = match bundle {
        Some(psi) => BundleData::from_json(
            sys,
            &BundleJson {
                n,
                psi: Some(psi.clone()),
            },
        )?,
        None => BundleData::random(sys.len(), n, &mut ChaCha8Rng::seed_from_u64(seed))?,
    };
    let tw = Twist::new(sys, data)?;
    let report = tw.verify(max_m, max_witness);
    Ok(Evaluation {
        pass: report.passed,
        result: json!({
            "fiberN": n,
            "bundle": tw.data().to_json(sys).psi,
            "report": report_value(&report),
        }),
    })
}

fn correspondence(sys: &FiniteSystem, samples: usize, seed: u64) -> Result<Evaluation, JobError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let functions: Vec<_> = (0..samples).map(|_| random_function(sys.len(), &mut rng)).collect();
    let report = correspondence_check(sys, &functions);
    let relation: Vec<(String, String)> = gcoh_core::groupoid::Correspondence::new(sys)
        .relation()
        .into_iter()
        .map(|(x, y)| (sys.label(x).to_string(), sys.label(y).to_string()))
        .collect();
    Ok(Evaluation {
        pass: report.passed,
        result: json!({
            "relation": relation,
            "samples": samples,
            "report": report_value(&report),
        }),
    })
}
