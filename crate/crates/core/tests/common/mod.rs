//! Independent reference computations used by the integration tests.

#![allow(dead_code)]

use std::collections::HashMap;

use fracbound_core::counting::Graph;
use fracbound_core::entropy::JointDistribution;
use fracbound_core::rational::{self, Rational};
use fracbound_core::Subset;
use num_traits::{One, Signed, Zero};

/// `H(X_s)` by summing over the full product alphabet, no shared marginal code.
pub fn brute_entropy(p: &JointDistribution, s: Subset) -> f64 {
    let mut acc: HashMap<Vec<u32>, f64> = HashMap::new();
    for (x, px) in p.pmf() {
        let key: Vec<u32> = (0..p.n()).filter(|&i| s.contains(i)).map(|i| x[i]).collect();
        *acc.entry(key).or_default() += rational::to_f64(px);
    }
    acc.values().filter(|&&q| q > 0.0).map(|&q| -q * q.ln()).sum()
}

/// `D(P ‖ P_1 × ... × P_n)` from dense marginals.
pub fn brute_total_correlation(p: &JointDistribution) -> f64 {
    let marg: Vec<Vec<f64>> = (0..p.n())
        .map(|i| {
            let mut m = vec![0.0; p.alphabet_sizes()[i] as usize];
            for (x, px) in p.pmf() {
                m[x[i] as usize] += rational::to_f64(px);
            }
            m
        })
        .collect();
    p.pmf()
        .iter()
        .map(|(x, px)| {
            let px = rational::to_f64(px);
            let q: f64 = x.iter().enumerate().map(|(i, &v)| marg[i][v as usize]).product();
            px * (px / q).ln()
        })
        .sum()
}

/// Leibniz expansion over all permutations.
pub fn leibniz_det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0.0;
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * (0..n).map(|i| m[i][p[i]]).product::<f64>();
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

pub fn submatrix(m: &[Vec<f64>], s: Subset) -> Vec<Vec<f64>> {
    let idx: Vec<usize> = s.iter().collect();
    idx.iter().map(|&i| idx.iter().map(|&j| m[i][j]).collect()).collect()
}

/// `|Hom(G, F)|` by trying every map `V(G) → V(F)`.
pub fn brute_homs(g: &Graph, f: &Graph) -> u128 {
    let (n, m) = (g.n(), f.n());
    let edges = g.edges();
    let adjacent = |a: usize, b: usize| if a == b { f.has_loop(a) } else { f.neighbours(a) >> b & 1 == 1 };
    let mut count = 0;
    let mut map = vec![0usize; n];
    loop {
        if edges.iter().all(|&(u, v)| adjacent(map[u - 1], map[v - 1])) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return count;
            }
            map[k] += 1;
            if map[k] < m {
                break;
            }
            map[k] = 0;
            k += 1;
        }
    }
}

/// Independent sets by checking every vertex subset.
pub fn brute_independent_sets(g: &Graph) -> u128 {
    (0u64..1 << g.n()).filter(|&s| (0..g.n()).all(|v| s >> v & 1 == 0 || g.neighbours(v) & s == 0)).count() as u128
}

/// Proper `r`-colourings of `C_n`: `(r-1)^n + (-1)^n (r-1)`.
pub fn cycle_chromatic(n: u32, r: i128) -> i128 {
    (r - 1).pow(n) + if n % 2 == 0 { r - 1 } else { -(r - 1) }
}

/// Solve a square rational system by Gauss-Jordan; `None` if singular.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, piv);
        b.swap(c, piv);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let factor = &a[r][c] / &a[c][c];
                for k in c..n {
                    let sub = &factor * &a[c][k];
                    a[r][k] -= sub;
                }
                let sub = &factor * &b[c];
                b[r] -= sub;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Minimum of `Σ α` over the covering polytope `{α >= 0, A α >= 1}`,
/// found by enumerating every basic solution.
pub fn covering_by_vertex_enumeration(n: usize, edges: &[Subset]) -> Rational {
    let m = edges.len();
    // rows: n incidence rows (>= 1) then m nonnegativity rows (>= 0)
    let mut rows: Vec<(Vec<Rational>, Rational)> = (0..n)
        .map(|i| (edges.iter().map(|e| if e.contains(i) { Rational::one() } else { Rational::zero() }).collect(), Rational::one()))
        .collect();
    for j in 0..m {
        rows.push(((0..m).map(|k| if k == j { Rational::one() } else { Rational::zero() }).collect(), Rational::zero()));
    }
    let mut best: Option<Rational> = None;
    let mut pick: Vec<usize> = (0..m).collect();
    loop {
        let a = pick.iter().map(|&r| rows[r].0.clone()).collect();
        let b = pick.iter().map(|&r| rows[r].1.clone()).collect();
        if let Some(x) = solve(a, b) {
            let feasible = rows.iter().all(|(row, rhs)| {
                let lhs: Rational = row.iter().zip(&x).map(|(c, v)| c * v).sum();
                lhs >= *rhs
            }) && x.iter().all(|v| !v.is_negative());
            if feasible {
                let value: Rational = x.iter().sum();
                if best.as_ref().is_none_or(|b| value < *b) {
                    best = Some(value);
                }
            }
        }
        // next combination of m rows out of n + m
        let total = rows.len();
        let Some(i) = (0..m).rev().find(|&i| pick[i] != i + total - m) else {
            return best.expect("covering polytope has a vertex");
        };
        pick[i] += 1;
        for j in i + 1..m {
            pick[j] = pick[j - 1] + 1;
        }
    }
}
