//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any
//! failure. Timings are wall clock on the test profile.

use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use gcoh_core::abelian::{cokernel, exterior_power, AbHom, FgAbGroup, IntMatrix};
use gcoh_core::groupoid::{
    correspondence_check, enumerate, random_function, verify_cocycle, verify_groupoid, BundleData, ExtendedCocycle,
    FiniteGroup, FiniteSystem, SkewProduct, Twist,
};
use gcoh_core::simplicial::{minimal_torus, CircleDegreeModel, SimplicialComplex, SimplicialMap};
use gcoh_core::torus::TorusEndo;
use gcoh_core::tower::{inverse_limit, lim_one, LimOne, TailPolicy, Tower};
use gcoh_oracles as oracle;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {:.3}s, limit {:.1}s", elapsed.as_secs_f64(), limit.as_secs_f64())
    })
}

fn gcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcoh"))
        .args(args)
        .env_remove("GCOH_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn group(s: &str) -> FgAbGroup {
    s.parse().expect("group literal")
}

fn json_group(v: &Value) -> Result<FgAbGroup, String> {
    match v {
        Value::String(s) => s.parse().map_err(|e| format!("{}: {}", s, e)),
        other => serde_json::from_value(other.clone()).map_err(|e| e.to_string()),
    }
}

fn random_system(rng: &mut ChaCha8Rng, max_points: usize) -> FiniteSystem {
    let n = rng.gen_range(1..=max_points);
    FiniteSystem::from_map((0..n).map(|_| rng.gen_range(0..n)).collect()).expect("valid map")
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

fn solenoid_goldens() -> Outcome {
    let start = Instant::now();
    for (p, q) in [(2i64, 3i64), (2, 5), (3, 5), (5, 2), (2, 7)] {
        let out = gcoh(&["solenoid", "--p", &p.to_string(), "--q", &q.to_string()]);
        ensure(out.status.success(), || {
            format!("({}, {}): exit {:?}", p, q, out.status.code())
        })?;
        let r: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        let h = &r["result"]["HGamma"];
        let expected = [
            FgAbGroup::free(1),
            FgAbGroup::free(1),
            FgAbGroup::cyclic((p - q).abs()),
            FgAbGroup::zero(),
        ];
        for (n, want) in expected.iter().enumerate() {
            let got = json_group(&h[format!("H{}", n)])?;
            ensure(&got == want, || {
                format!("({}, {}): H^{} = {}, expected {}", p, q, n, got, want)
            })?;
        }
        // H^k for k >= 4 is not listed because it vanishes
        ensure(h.as_object().is_some_and(|o| o.len() == 4), || {
            format!("({}, {}): extra degrees", p, q)
        })?;
        let br = json_group(&r["result"]["brauer"])?;
        ensure(br.is_trivial(), || format!("({}, {}): Br = {}", p, q, br))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("5 solenoids via the CLI in {:.3}s", elapsed.as_secs_f64()))
}

fn torus_engine() -> Outcome {
    let limit = Duration::from_secs(1);
    let mut slowest = Duration::ZERO;
    let mut timed = |m: IntMatrix| -> Result<gcoh_core::torus::TorusTable, String> {
        let start = Instant::now();
        let t = TorusEndo::new(m)
            .and_then(|e| e.groupoid_cohomology())
            .map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        within(elapsed, limit)?;
        slowest = slowest.max(elapsed);
        Ok(t)
    };
    for d in (-9i64..=9).filter(|d| d.abs() >= 2) {
        let t = timed(IntMatrix::from_rows(&[[d]]))?;
        ensure(t.group(1) == FgAbGroup::free(1), || {
            format!("d = {}: H^1 = {}", d, t.group(1))
        })?;
        let h2 = FgAbGroup::cyclic((d - 1).abs());
        ensure(t.group(2) == h2, || {
            format!("d = {}: H^2 = {}, expected {}", d, t.group(2), h2)
        })?;
    }
    let t = timed(IntMatrix::from_rows(&[[2, 1], [0, 2]]))?;
    ensure(t.brauer_group() == group("Z/3"), || {
        format!("k = 2: Br = {}", t.brauer_group())
    })?;
    let t = timed(IntMatrix::scalar(3, 2))?;
    ensure(t.brauer_group() == group("Z/3 + Z/3 + Z/3"), || {
        format!("k = 3: Br = {}", t.brauer_group())
    })?;
    let t = timed(IntMatrix::diagonal(&[1, 1, 1, 2]))?;
    ensure(t.brauer_group().free_rank() >= 1, || {
        format!("k = 4: Br = {}", t.brauer_group())
    })?;
    Ok(format!(
        "k = 1 for 16 values of d, k = 2, 3, 4 goldens; k = 4 Br = {}; slowest {:.3}s",
        t.brauer_group(),
        slowest.as_secs_f64()
    ))
}

fn exterior_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..100 {
        let m = random_matrix(&mut rng, 4, 4, 3);
        for n in [2, 3] {
            let engine = exterior_power(&IntMatrix::from_rows(&m), n).map_err(|e| e.to_string())?;
            let expansion = IntMatrix::from_rows(&oracle::exterior_power(&m, n));
            ensure(engine == expansion, || {
                format!("sample {}: Λ^{} of {:?} differs", i, n, m)
            })?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("100 matrices, n = 2, 3 in {:.3}s", elapsed.as_secs_f64()))
}

fn cokernel_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut torsion_seen = 0;
    for i in 0..500 {
        let (rows, cols) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let m = random_matrix(&mut rng, rows, cols, 2);
        let g = cokernel(&IntMatrix::from_rows(&m));
        let (free, torsion) = oracle::quotient_by_minors(&oracle::to_big(&m));
        let orders: Vec<u64> = torsion.iter().map(|d| u64::try_from(d).expect("small")).collect();
        // Z^rows / L mod D, for D a multiple of the exponent of the torsion
        let modulus = orders.iter().product::<u64>().max(2);
        let ks = oracle::divisors(modulus);
        let counts = oracle::kill_counts(&m, modulus, &ks, 1 << 20)
            .ok_or_else(|| format!("sample {}: quotient too large to enumerate", i))?;
        let engine_orders: Vec<u64> = g.torsion().iter().map(|d| u64::try_from(d).expect("small")).collect();
        for (k, c) in ks.iter().zip(&counts) {
            let want = k.pow(g.free_rank() as u32) * oracle::kill_count_of(&engine_orders, *k);
            ensure(*c == want, || {
                format!(
                    "sample {}: {:?} has {} elements killed by {}, engine predicts {}",
                    i, m, c, k, want
                )
            })?;
        }
        ensure(g.free_rank() == free && g.torsion() == torsion.as_slice(), || {
            format!(
                "sample {}: {:?} gives {}, minors give rank {} torsion {:?}",
                i, m, g, free, torsion
            )
        })?;
        torsion_seen += usize::from(!orders.is_empty());
    }
    Ok(format!("500 matrices up to 3x3, {} with torsion", torsion_seen))
}

fn random_complex(rng: &mut ChaCha8Rng, with_torsion: bool) -> (usize, Vec<Vec<usize>>) {
    let mut facets: Vec<Vec<usize>> = Vec::new();
    let mut v = 0;
    if with_torsion {
        // a 6-vertex projective plane
        let rp2 = [
            [0, 1, 3],
            [1, 2, 3],
            [0, 2, 4],
            [1, 2, 4],
            [0, 3, 4],
            [2, 3, 5],
            [0, 2, 5],
            [0, 1, 5],
            [1, 4, 5],
            [3, 4, 5],
        ];
        facets.extend(rp2.iter().map(|f| f.to_vec()));
        v = 6;
    }
    let extra = rng.gen_range(3..=6);
    let pool: Vec<usize> = (v..v + extra).collect();
    for _ in 0..rng.gen_range(1..=7) {
        let mut f = pool.clone();
        f.shuffle(rng);
        f.truncate(rng.gen_range(1..=4.min(extra)));
        facets.push(f);
    }
    (v + extra, facets)
}

fn identity_degeneration() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut torsion_rows = 0;
    for i in 0..20 {
        let (v, facets) = random_complex(&mut rng, i % 4 == 0);
        let labels: Vec<String> = (0..v).map(|x| format!("v{}", x)).collect();
        let named: Vec<Vec<String>> = facets
            .iter()
            .map(|f| f.iter().map(|&x| labels[x].clone()).collect())
            .collect();
        let k = SimplicialComplex::from_simplices(&labels, &named).map_err(|e| e.to_string())?;
        let h = k.cochain_complex().cohomology_groups().map_err(|e| e.to_string())?;

        // H^n(X) itself against ranks over Q and F_p
        let betti = oracle::betti(v, &facets);
        let ranks: Vec<usize> = h.iter().map(FgAbGroup::free_rank).collect();
        ensure(ranks == betti, || {
            format!("complex {}: ranks {:?}, oracle {:?}", i, ranks, betti)
        })?;
        for p in [2i64, 3] {
            let t = |n: usize| {
                h.get(n).map_or(0, |g| {
                    g.torsion().iter().filter(|d| (*d % p) == BigInt::from(0)).count()
                })
            };
            let want: Vec<usize> = (0..betti.len()).map(|n| betti[n] + t(n) + t(n + 1)).collect();
            let got = oracle::mod_p_dims(v, &facets, p);
            ensure(got == want, || {
                format!("complex {}: F_{} dims {:?}, engine implies {:?}", i, p, got, want)
            })?;
        }

        let rows = SimplicialMap::identity(&k)
            .groupoid_cohomology()
            .map_err(|e| e.to_string())?;
        ensure(rows.len() == h.len() + 1, || {
            format!("complex {}: {} rows", i, rows.len())
        })?;
        for r in &rows {
            let here = h.get(r.degree).cloned().unwrap_or_default();
            let below = r
                .degree
                .checked_sub(1)
                .and_then(|m| h.get(m))
                .cloned()
                .unwrap_or_default();
            let want = here.direct_sum(&below);
            ensure(r.split_sum.as_ref() == Some(&want), || {
                format!("complex {}: H^{}(Γ) = {}, expected {}", i, r.degree, r.describe(), want)
            })?;
            torsion_rows += usize::from(!want.torsion().is_empty());
        }
    }
    Ok(format!("20 complexes, {} degrees with torsion", torsion_rows))
}

fn simplicial_goldens() -> Outcome {
    let h = minimal_torus()
        .cochain_complex()
        .cohomology_groups()
        .map_err(|e| e.to_string())?;
    let want = [group("Z"), group("Z^2"), group("Z")];
    ensure(h == want, || {
        format!(
            "7-vertex torus: {:?}",
            h.iter().map(|g| g.to_string()).collect::<Vec<_>>()
        )
    })?;
    for d in [2i64, 3, -2, -3] {
        let model = CircleDegreeModel::new(d, 3).map_err(|e| e.to_string())?;
        let s = model.sigma_star().map_err(|e| e.to_string())?;
        let c = FgAbGroup::free(1);
        ensure(s[1] == AbHom::scalar(&c, d), || {
            format!("degree {}: σ* on H^1 is {}", d, s[1].matrix())
        })?;
        ensure(s[0] == AbHom::identity(&c), || {
            format!("degree {}: σ* on H^0 is {}", d, s[0].matrix())
        })?;
    }
    Ok("torus (Z, Z^2, Z); circle degree ±2, ±3 give ×d on H^1".into())
}

fn groupoid_laws() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut elements = 0;
    for i in 0..200 {
        let sys = random_system(&mut rng, 6);
        let (m, w) = if i % 4 == 0 {
            (3, 3)
        } else {
            (rng.gen_range(0..=3), rng.gen_range(0..=3))
        };
        let t = enumerate(&sys, m, w);
        let found: Vec<_> = t.elements().iter().map(|g| (g.x, g.m, g.y, g.k, g.l)).collect();
        ensure(found == oracle::groupoid_elements(sys.sigma_map(), m, w), || {
            format!("system {}: truncation differs from exhaustive search", i)
        })?;
        elements += t.len();
        let r = verify_groupoid(&sys, m, w);
        ensure(r.passed, || format!("system {}: {:?}", i, r.failures()))?;
        let coefficient = if i % 2 == 0 {
            FgAbGroup::free(1)
        } else {
            group("Z + Z/4")
        };
        let g = sys
            .points()
            .map(|_| {
                (0..coefficient.generator_count())
                    .map(|_| BigInt::from(rng.gen_range(-3..=3)))
                    .collect()
            })
            .collect();
        let f = ExtendedCocycle::new(&sys, coefficient, g).map_err(|e| e.to_string())?;
        let r = verify_cocycle(&sys, &f, m, w);
        ensure(r.passed, || format!("system {}: {:?}", i, r.failures()))?;
        for law in ["witness independence", "restriction along j", "uniqueness"] {
            ensure(r.law(law).is_some_and(|l| l.passed), || {
                format!("system {}: {} missing", i, law)
            })?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "200 systems, {} elements, {:.2}s",
        elements,
        elapsed.as_secs_f64()
    ))
}

fn twist_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    for i in 0..200 {
        let sys = random_system(&mut rng, 5);
        let n = *[2usize, 3, 4, 6].choose(&mut rng).expect("nonempty");
        let data = BundleData::random(sys.len(), n, &mut rng).map_err(|e| e.to_string())?;
        let (m, w) = (rng.gen_range(0..=2), rng.gen_range(0..=3));
        let t = Twist::new(&sys, data).map_err(|e| e.to_string())?;
        let r = t.verify(m, w);
        ensure(r.passed, || format!("sample {} (n = {}): {:?}", i, n, r.failures()))?;
        for law in [
            "multiplication well-defined",
            "associativity",
            "inverses",
            "restriction compatibility",
            "j* round trip",
        ] {
            ensure(r.law(law).is_some_and(|l| l.passed), || {
                format!("sample {}: {} missing", i, law)
            })?;
        }
        checked += r.laws.iter().map(|l| l.checked).sum::<usize>();
    }
    Ok(format!(
        "200 twists, {} instances checked, {:.2}s",
        checked,
        start.elapsed().as_secs_f64()
    ))
}

fn skew_suite() -> Outcome {
    let groups = ["Z/1", "Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "S3", "Z/2xZ/2", "Z/2xZ/3"];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut nonabelian = 0;
    for i in 0..50 {
        let sys = random_system(&mut rng, 4);
        let g: FiniteGroup = groups
            .choose(&mut rng)
            .expect("nonempty")
            .parse()
            .map_err(|e: gcoh_core::Error| e.to_string())?;
        let c = sys.points().map(|_| rng.gen_range(0..g.order())).collect();
        let s = SkewProduct::new(&sys, &g, c).map_err(|e| e.to_string())?;
        let (m, w) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let r = s.verify(m, w);
        ensure(r.passed, || format!("sample {} ({}): {:?}", i, g, r.failures()))?;
        for law in [
            "c̃ cocycle identity",
            "backward map onto the τ-truncation",
            "isomorphism respects products",
        ] {
            ensure(r.law(law).is_some_and(|l| l.passed), || {
                format!("sample {}: {} missing", i, law)
            })?;
        }
        nonabelian += usize::from(!g.is_abelian());
    }
    Ok(format!("50 skew products, {} over S3", nonabelian))
}

fn correspondence_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..50 {
        let sys = random_system(&mut rng, 5);
        let samples: Vec<_> = (0..2).map(|_| random_function(sys.len(), &mut rng)).collect();
        let r = correspondence_check(&sys, &samples);
        ensure(r.passed, || format!("system {}: {:?}", i, r.failures()))?;
    }
    Ok("50 systems, Gaussian-rational arithmetic".into())
}

fn tower_suite() -> Outcome {
    let err = |e: gcoh_core::Error| e.to_string();
    for g in ["Z", "Z^2 + Z/4", "Z/6", "0"] {
        let g = group(g);
        let t = Tower::constant(&g, &AbHom::identity(&g)).map_err(err)?;
        let lim = inverse_limit(&t).map_err(err)?;
        ensure(lim.group() == Some(&g), || format!("constant {}: lim = {:?}", g, lim))?;
        ensure(lim_one(&t).map_err(err)?.is_zero(), || {
            format!("constant {}: lim¹ not zero", g)
        })?;
    }
    for p in [2i64, 3, 5] {
        let z = group("Z");
        let t = Tower::constant(&z, &AbHom::scalar(&z, p)).map_err(err)?;
        let lim = inverse_limit(&t).map_err(err)?;
        ensure(lim.group().is_some_and(FgAbGroup::is_trivial), || {
            format!("(Z, ×{}): lim = {:?}", p, lim)
        })?;
        match lim_one(&t).map_err(err)? {
            LimOne::Unknown { witness: Some(w), .. } => ensure(w.index == BigInt::from(p), || {
                format!("(Z, ×{}): witness index {}", p, w.index)
            })?,
            other => return Err(format!("(Z, ×{}): lim¹ = {:?}", p, other)),
        }
    }
    // surjective towers with stabilized tails
    let hom =
        |s: &str, t: &str, rows: &[Vec<i64>]| AbHom::new(group(s), group(t), IntMatrix::from_rows(rows)).map_err(err);
    let surjective = [
        Tower::new(
            vec![group("Z/2"), group("Z/4"), group("Z/4")],
            vec![hom("Z/4", "Z/2", &[vec![1]])?, hom("Z/4", "Z/4", &[vec![3]])?],
            TailPolicy::Stabilized,
        ),
        Tower::new(
            vec![group("Z"), group("Z^2"), group("Z^2")],
            vec![
                hom("Z^2", "Z", &[vec![1, 0]])?,
                hom("Z^2", "Z^2", &[vec![1, 1], vec![0, 1]])?,
            ],
            TailPolicy::Stabilized,
        ),
        Tower::new(
            vec![group("Z/3"), group("Z"), group("Z")],
            vec![hom("Z", "Z/3", &[vec![1]])?, hom("Z", "Z", &[vec![-1]])?],
            TailPolicy::Stabilized,
        ),
    ];
    for (i, t) in surjective.into_iter().enumerate() {
        let t = t.map_err(err)?;
        ensure(lim_one(&t).map_err(err)?.is_zero(), || {
            format!("surjective tower {}: lim¹ not zero", i)
        })?;
    }
    Ok("4 constant, 3 (Z, ×p), 3 surjective towers".into())
}

fn determinism() -> Outcome {
    let sys = r#"{"points": ["a", "b", "c", "d"], "sigma": {"a": "b", "b": "c", "c": "c", "d": "a"}}"#;
    let manifest = format!(
        r#"[{{"command": "twist", "system": {s}, "fiberN": 4, "seed": 3}},
            {{"command": "skew", "system": {s}, "group": "S3", "seed": 3, "maxM": 1}},
            {{"command": "solenoid", "p": 3, "q": 8}}]"#,
        s = sys
    );
    let jobs: Vec<Vec<&str>> = vec![
        vec!["--seed", "5", "groupoid-verify", "--system", sys],
        vec!["--seed", "5", "twist", "--system", sys, "--fiber-n", "6"],
        vec!["--seed", "5", "skew", "--system", sys, "--group", "Z/2xZ/3"],
        vec!["--seed", "5", "correspondence", "--system", sys, "--samples", "3"],
        vec!["torus", "--matrix", "[[2,1,0],[0,2,1],[1,0,2]]"],
        vec![
            "--format",
            "table",
            "--seed",
            "5",
            "twist",
            "--system",
            sys,
            "--fiber-n",
            "3",
        ],
        vec!["batch", "--manifest", &manifest, "--workers", "3"],
    ];
    for args in &jobs {
        let a = gcoh(args);
        let b = gcoh(args);
        ensure(a.status.success(), || format!("{:?}: exit {:?}", args, a.status.code()))?;
        ensure(a.stdout == b.stdout && a.status.code() == b.status.code(), || {
            format!("{:?}: outputs differ", args)
        })?;
    }
    let one = gcoh(&["batch", "--manifest", &manifest, "--workers", "1"]);
    let many = gcoh(&["batch", "--manifest", &manifest, "--workers", "3"]);
    ensure(one.stdout == many.stdout, || {
        "batch output depends on the worker count".to_string()
    })?;
    Ok(format!("{} jobs repeated byte-identically", jobs.len() + 1))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("solenoid golden table", solenoid_goldens),
        ("torus engine", torus_engine),
        ("exterior powers vs multilinear expansion", exterior_oracle),
        ("cokernels vs quotient enumeration", cokernel_oracle),
        ("σ = id degeneration", identity_degeneration),
        ("simplicial goldens", simplicial_goldens),
        ("groupoid and cocycle laws", groupoid_laws),
        ("twist suite", twist_suite),
        ("skew-product suite", skew_suite),
        ("correspondence suite", correspondence_suite),
        ("tower suite", tower_suite),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {} ({}; {:.3}s)", i + 1, name, detail, secs),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {}: {} ({:.3}s)", i + 1, name, why, secs);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
