//! Slow, direct reference computations. Nothing here shares code with the
//! engines: exterior powers are expanded multilinearly, quotient groups are
//! read off determinantal divisors or enumerated element by element, and
//! groupoid elements are found by exhaustive witness search.

#![allow(clippy::needless_range_loop)]

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// All `n`-subsets of `0..k`, each increasing, in lexicographic order.
pub fn subsets(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(i + 1, k, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, n, &mut Vec::new(), &mut out);
    out
}

/// Sorts a list of basis indices, returning the sign of the permutation, or
/// `None` when an index repeats (the wedge vanishes).
fn wedge_normal(indices: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// `Λ^n m` by expanding `m e_{i_1} ∧ ... ∧ m e_{i_n}` over every choice of
/// row per factor.
pub fn exterior_power(m: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let k = m.len();
    let basis = subsets(k, n);
    let mut out = vec![vec![0i64; basis.len()]; basis.len()];
    for (col, cols) in basis.iter().enumerate() {
        let mut choice = vec![0usize; n];
        loop {
            let coeff: i64 = (0..n).map(|t| m[choice[t]][cols[t]]).product();
            if coeff != 0 {
                if let Some((sorted, sign)) = wedge_normal(&choice) {
                    let row = basis.iter().position(|b| *b == sorted).expect("subset");
                    out[row][col] += sign * coeff;
                }
            }
            // odometer over choices of rows
            let mut t = 0;
            while t < n {
                choice[t] += 1;
                if choice[t] < k {
                    break;
                }
                choice[t] = 0;
                t += 1;
            }
            if t == n {
                break;
            }
        }
    }
    out
}

/// Determinant by cofactor expansion.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * determinant(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Rank over `Q` by exact fraction-free elimination.
pub fn rank(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let (f, g) = (a[r][c].clone(), a[i][c].clone());
                for j in 0..cols {
                    a[i][j] = &a[i][j] * &f - &a[r][j] * &g;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// The quotient `Z^rows / (column span)` as `(free rank, invariant factors
/// > 1)`, from determinantal divisors: `d_k` is the gcd of all `k x k`
/// minors and the invariant factors are `d_k / d_{k-1}`.
pub fn quotient_by_minors(m: &[Vec<BigInt>]) -> (usize, Vec<BigInt>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let r = rank(m);
    let mut divisors = vec![BigInt::from(1)];
    for k in 1..=r {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect())
                    .collect();
                g = g.gcd(&determinant(&minor));
            }
        }
        divisors.push(g);
    }
    let torsion = (1..=r)
        .map(|k| &divisors[k] / &divisors[k - 1])
        .filter(|d| *d > BigInt::from(1))
        .collect();
    (rows - r, torsion)
}

/// For a finite quotient `Z^rows / L` of order dividing `modulus`, counts
/// the elements killed by each `k` in `ks`, enumerating `(Z/modulus)^rows`
/// and the image of `L` in it. Returns `None` above `limit` elements.
pub fn kill_counts(m: &[Vec<i64>], modulus: u64, ks: &[u64], limit: u64) -> Option<Vec<u64>> {
    let rows = m.len();
    let size = modulus.checked_pow(rows as u32)?;
    if size > limit {
        return None;
    }
    let d = modulus as i64;
    let encode = |v: &[i64]| v.iter().fold(0u64, |acc, &x| acc * modulus + x.rem_euclid(d) as u64);
    let decode = |mut c: u64| {
        let mut v = vec![0i64; rows];
        for i in (0..rows).rev() {
            v[i] = (c % modulus) as i64;
            c /= modulus;
        }
        v
    };
    let gens: Vec<Vec<i64>> = (0..m.first().map_or(0, Vec::len))
        .map(|j| m.iter().map(|r| r[j]).collect())
        .collect();
    // the subgroup generated by the columns, by breadth-first closure
    let mut lattice = HashSet::new();
    let mut queue = VecDeque::new();
    lattice.insert(0u64);
    queue.push_back(0u64);
    while let Some(c) = queue.pop_front() {
        let v = decode(c);
        for g in &gens {
            let w: Vec<i64> = v.iter().zip(g).map(|(a, b)| a + b).collect();
            let e = encode(&w);
            if lattice.insert(e) {
                queue.push_back(e);
            }
        }
    }
    let l = lattice.len() as u64;
    Some(
        ks.iter()
            .map(|&k| {
                let killed = (0..size)
                    .filter(|&c| {
                        let v: Vec<i64> = decode(c).iter().map(|x| x * k as i64).collect();
                        lattice.contains(&encode(&v))
                    })
                    .count() as u64;
                killed / l
            })
            .collect(),
    )
}

/// Elements of `⊕ Z/d_i` killed by `k`: `Π gcd(k, d_i)`.
pub fn kill_count_of(torsion: &[u64], k: u64) -> u64 {
    torsion.iter().map(|&d| k.gcd(&d)).product()
}

/// Divisors of `n`.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|&k| n.is_multiple_of(k)).collect()
}

/// Order of the cokernel of `1 - q/p` on `Z[1/p]`, computed as the
/// stable size of `p^K · Z/N`, `N = |p - q|`, over `K = 1..=depth`: the
/// direct limit of `Z/N --×p--> Z/N --×p--> ...`.
pub fn solenoid_h2_order(p: i64, q: i64, depth: u32) -> (u64, Vec<u64>) {
    let n = (p - q).unsigned_abs();
    let sizes: Vec<u64> = (1..=depth)
        .map(|k| {
            let scale = (p.rem_euclid(n as i64) as u64).pow(k) % n.max(1);
            let image: HashSet<u64> = (0..n).map(|x| (x * scale) % n).collect();
            image.len() as u64
        })
        .collect();
    (*sizes.last().expect("depth >= 1"), sizes)
}

/// `σ^k(x)`.
pub fn iterate(sigma: &[usize], mut x: usize, k: usize) -> usize {
    for _ in 0..k {
        x = sigma[x];
    }
    x
}

/// All `(x, m, y, k, l)` with `|m| <= max_abs_m` whose minimal witness has
/// `k, l <= max_witness`, by trying every pair `(k, l)`.
pub fn groupoid_elements(
    sigma: &[usize],
    max_abs_m: usize,
    max_witness: usize,
) -> Vec<(usize, i64, usize, usize, usize)> {
    let n = sigma.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for m in -(max_abs_m as i64)..=max_abs_m as i64 {
                // the smallest k with k - m >= 0 and σ^k x = σ^{k-m} y, searching far enough
                let bound = max_witness + max_abs_m + 2 * n + 2;
                let found = (0..=bound)
                    .filter(|&k| k as i64 - m >= 0)
                    .map(|k| (k, (k as i64 - m) as usize))
                    .find(|&(k, l)| iterate(sigma, x, k) == iterate(sigma, y, l));
                if let Some((k, l)) = found {
                    if k <= max_witness && l <= max_witness {
                        out.push((x, m, y, k, l));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Every face of every facet, grouped by dimension, each level sorted.
pub fn closure(vertices: usize, facets: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let mut levels: Vec<HashSet<Vec<usize>>> = vec![(0..vertices).map(|v| vec![v]).collect()];
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        for mask in 1u32..(1 << f.len()) {
            let face: Vec<usize> = (0..f.len()).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
            let d = face.len() - 1;
            while levels.len() <= d {
                levels.push(HashSet::new());
            }
            levels[d].insert(face);
        }
    }
    levels
        .into_iter()
        .map(|l| {
            let mut v: Vec<Vec<usize>> = l.into_iter().collect();
            v.sort();
            v
        })
        .collect()
}

/// `δ^n`, rows indexed by `(n+1)`-simplices and columns by `n`-simplices,
/// with the alternating face signs.
pub fn coboundary(levels: &[Vec<Vec<usize>>], n: usize) -> Vec<Vec<i64>> {
    let empty = Vec::new();
    let lower = levels.get(n).unwrap_or(&empty);
    let upper = levels.get(n + 1).unwrap_or(&empty);
    upper
        .iter()
        .map(|s| {
            let mut row = vec![0i64; lower.len()];
            for i in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                let col = lower.binary_search(&face).expect("face present");
                row[col] += if i % 2 == 0 { 1 } else { -1 };
            }
            row
        })
        .collect()
}

/// Rank over `F_p`.
pub fn rank_mod_p(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = (1..p).find(|x| x * a[r][c] % p == 1).expect("p prime");
        for j in 0..cols {
            a[r][j] = a[r][j] * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[r][j]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim H^n(X; F)` for `n = 0..=dim`, with `rank` the rank function of `F`.
fn cohomology_dims(vertices: usize, facets: &[Vec<usize>], rank: impl Fn(&[Vec<i64>]) -> usize) -> Vec<usize> {
    let levels = closure(vertices, facets);
    let ranks: Vec<usize> = (0..levels.len()).map(|n| rank(&coboundary(&levels, n))).collect();
    (0..levels.len())
        .map(|n| levels[n].len() - ranks[n] - n.checked_sub(1).map_or(0, |m| ranks[m]))
        .collect()
}

/// Betti numbers.
pub fn betti(vertices: usize, facets: &[Vec<usize>]) -> Vec<usize> {
    cohomology_dims(vertices, facets, |m| rank(&to_big(m)))
}

/// `dim H^n(X; F_p)`. By universal coefficients this is
/// `b_n + t_n(p) + t_{n+1}(p)`, with `t_n(p)` the number of cyclic
/// summands of `H^n(X; Z)` of order divisible by `p`.
pub fn mod_p_dims(vertices: usize, facets: &[Vec<usize>], p: i64) -> Vec<usize> {
    cohomology_dims(vertices, facets, |m| rank_mod_p(m, p))
}

pub fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_of_2x2_is_det() {
        let m = vec![vec![2, 1], vec![0, 3]];
        assert_eq!(exterior_power(&m, 2), vec![vec![6]]);
        assert_eq!(exterior_power(&m, 1), m);
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(
            quotient_by_minors(&to_big(&[vec![2, 0], vec![0, 3]])),
            (0, vec![BigInt::from(6)])
        );
        assert_eq!(
            quotient_by_minors(&to_big(&[vec![2], vec![4]])),
            (1, vec![BigInt::from(2)])
        );
        assert_eq!(
            kill_counts(&[vec![2, 0], vec![0, 4]], 8, &[2, 4], 1000),
            Some(vec![4, 8])
        );
    }

    #[test]
    fn swap_system_elements() {
        assert_eq!(groupoid_elements(&[1, 0], 1, 2).len(), 6);
    }

    #[test]
    fn projective_plane_mod_two() {
        let facets = [
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
        let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
        assert_eq!(betti(6, &facets), vec![1, 0, 0]);
        assert_eq!(mod_p_dims(6, &facets, 2), vec![1, 1, 1]);
    }

    #[test]
    fn solenoid_orders() {
        assert_eq!(solenoid_h2_order(2, 5, 8).0, 3);
    }
}
