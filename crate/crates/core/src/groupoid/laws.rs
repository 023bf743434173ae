use super::report::{ensure, LawCheck, VerificationReport};
use super::system::{enumerate, FiniteSystem, GroupoidElement};

/// Checks the groupoid axioms of `Γ(X, σ)` on a truncation. Products are
/// recomputed from scratch, so they may leave the truncation.
pub fn verify_groupoid(sys: &FiniteSystem, max_abs_m: usize, max_witness: usize) -> VerificationReport {
    let t = enumerate(sys, max_abs_m, max_witness);
    let show = |g: &GroupoidElement| sys.show(g);
    let mut laws = Vec::new();

    laws.push(LawCheck::run("minimal witness", t.elements(), |g| {
        let (k, l) = g.witness();
        ensure(
            k as i64 - l as i64 == g.m && sys.iterate(g.x, k) == sys.iterate(g.y, l),
            || format!("{} has invalid witness ({}, {})", show(g), k, l),
        )?;
        ensure(
            k == 0 || l == 0 || sys.iterate(g.x, k - 1) != sys.iterate(g.y, l - 1),
            || format!("{} has a smaller witness than ({}, {})", show(g), k, l),
        )
    }));

    laws.push(LawCheck::run("closure", t.composable_pairs(), |(g, h)| {
        let gh = sys.compose(g, h).map_err(|e| e.to_string())?;
        ensure(gh.key() == (g.x, g.m + h.m, h.y), || {
            format!("{} * {} = {}", show(g), show(h), show(&gh))
        })
    }));

    laws.push(LawCheck::run("associativity", t.composable_triples(), |(a, b, c)| {
        let left = sys
            .compose(&sys.compose(a, b).map_err(|e| e.to_string())?, c)
            .map_err(|e| e.to_string())?;
        let right = sys
            .compose(a, &sys.compose(b, c).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(left == right && left.witness() == right.witness(), || {
            format!(
                "({} {}) {} != {} ({} {})",
                show(a),
                show(b),
                show(c),
                show(a),
                show(b),
                show(c)
            )
        })
    }));

    laws.push(LawCheck::run("units", t.elements(), |g| {
        let left = sys.compose(&sys.unit(g.x), g).map_err(|e| e.to_string())?;
        let right = sys.compose(g, &sys.unit(g.y)).map_err(|e| e.to_string())?;
        ensure(left == *g && right == *g, || format!("units fail at {}", show(g)))
    }));

    laws.push(LawCheck::run("inverses", t.elements(), |g| {
        let gi = sys.inverse(g);
        let a = sys.compose(g, &gi).map_err(|e| e.to_string())?;
        let b = sys.compose(&gi, g).map_err(|e| e.to_string())?;
        ensure(
            a == sys.unit(g.x) && b == sys.unit(g.y) && sys.inverse(&gi) == *g && t.contains(&gi),
            || format!("inverse law fails at {}", show(g)),
        )
    }));

    VerificationReport::new("groupoid", max_abs_m, max_witness, t.len(), laws)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_systems_pass() {
        for sigma in [vec![0], vec![1, 0], vec![2, 2, 2], vec![1, 2, 0, 0], vec![1, 1, 3, 2]] {
            let sys = FiniteSystem::from_map(sigma).unwrap();
            let r = verify_groupoid(&sys, 2, 3);
            assert!(r.passed, "{:?}", r.failures());
        }
    }
}
