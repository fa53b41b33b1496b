//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use num_rational::Rational64;

/// Torsion coefficients `t_0..=t_{p/2}` by direct search over odd vectors.
///
/// Coordinates sharing a value of `σ` are interchangeable, so each such block is
/// enumerated as a multiset of odd values. The norm radius grows in steps of 8
/// until every target residue has been hit.
pub fn brute_torsion(sigma: &[i64], p: i64) -> Vec<i64> {
    let mut groups: Vec<(i64, usize)> = Vec::new();
    for &s in sigma {
        match groups.last_mut() {
            Some((v, k)) if *v == s => *k += 1,
            _ => groups.push((s, 1)),
        }
    }
    let dim = sigma.len() as i64;
    let bound = 2 * p + 1;
    let m = 2 * p;
    let targets: Vec<i64> = (0..=p / 2).map(|i| (2 * i - p).rem_euclid(m)).collect();
    let mut radius = dim;
    loop {
        let mut best: HashMap<i64, i64> = HashMap::new();
        walk(&groups, 0, 0, 0, radius, bound, m, &mut best);
        if targets.iter().all(|r| best.contains_key(r)) {
            return targets.iter().map(|r| (best[r] - dim) / 8).collect();
        }
        radius += 8;
    }
}

#[allow(clippy::too_many_arguments)]
fn walk(groups: &[(i64, usize)], g: usize, pairing: i64, cost: i64, radius: i64, bound: i64, m: i64, best: &mut HashMap<i64, i64>) {
    let Some(&(s, k)) = groups.get(g) else {
        let r = pairing.rem_euclid(m);
        let e = best.entry(r).or_insert(cost);
        *e = (*e).min(cost);
        return;
    };
    // remaining coordinates each cost at least 1
    let rest: i64 = groups[g..].iter().map(|&(_, k)| k as i64).sum();
    multisets(k, -bound, 0, cost, radius - (rest - k as i64), bound, &mut |sum, c| {
        walk(groups, g + 1, pairing + s * sum, c, radius, bound, m, best)
    });
}

/// Nondecreasing sequences of `left` odd values `>= lo` within `[-bound, bound]`.
#[allow(clippy::too_many_arguments)]
fn multisets(left: usize, lo: i64, sum: i64, cost: i64, cap: i64, bound: i64, f: &mut dyn FnMut(i64, i64)) {
    if left == 0 {
        f(sum, cost);
        return;
    }
    let mut c = if lo.rem_euclid(2) == 1 { lo } else { lo + 1 };
    while c <= bound {
        // every remaining value has square at least min(c^2, 1)
        let floor = if c < 0 { 1 } else { c * c };
        if cost + c * c + floor * (left as i64 - 1) <= cap {
            multisets(left - 1, c, sum + c, cost + c * c, cap, bound, f);
        } else if c > 0 {
            break;
        }
        c += 2;
    }
}

/// Whether `x` is an integer combination of the rows of `basis`, via the
/// rational solution `y = G⁻¹ B x` of the normal equations.
pub fn in_integer_span(basis: &[Vec<i64>], x: &[i64]) -> bool {
    let n = basis.len();
    let gram: Vec<Vec<Rational64>> = (0..n)
        .map(|i| (0..n).map(|j| Rational64::from_integer(dot(&basis[i], &basis[j]))).collect())
        .collect();
    let rhs: Vec<Rational64> = basis.iter().map(|b| Rational64::from_integer(dot(b, x))).collect();
    let Some(y) = solve(gram, rhs) else { return false };
    if y.iter().any(|v| !v.is_integer()) {
        return false;
    }
    let y: Vec<i64> = y.iter().map(|v| v.to_integer()).collect();
    (0..x.len()).all(|k| (0..n).map(|i| y[i] * basis[i][k]).sum::<i64>() == x[k])
}

fn solve(mut a: Vec<Vec<Rational64>>, mut b: Vec<Rational64>) -> Option<Vec<Rational64>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != Rational64::from_integer(0))?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
                let v = b[col];
                b[r] -= f * v;
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact determinant by cofactor expansion; fine for the small ranks used here.
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * det(&minor)
        })
        .sum()
}

/// `U G Uᵀ`.
pub fn transform(g: &[Vec<i64>], u: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = g.len();
    let ug: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| (0..n).map(|j| u[i][j] * g[j][k]).sum()).collect()).collect();
    (0..n).map(|i| (0..n).map(|k| (0..n).map(|j| ug[i][j] * u[k][j]).sum()).collect()).collect()
}
