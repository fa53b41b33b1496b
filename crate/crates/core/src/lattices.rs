//! Changemaker vectors, orthogonal complements in `Z^{n+1}`, linear plumbing
//! lattices, short-vector enumeration and integral lattice isomorphism.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type IntVector = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_sorted_nonnegative(sigma: &[i64]) -> Result<()> {
    let sorted = sigma.windows(2).all(|w| w[0] <= w[1]);
    if !sorted || sigma.first().is_some_and(|&s| s < 0) {
        return Err(Error::NotSortedNonnegative(sigma.to_vec()));
    }
    Ok(())
}

/// Checks every `0 <= k <= Σσ_i` for being a subset sum with a reachability sweep.
pub fn is_changemaker_bruteforce(sigma: &[i64]) -> Result<bool> {
    check_sorted_nonnegative(sigma)?;
    let total: i64 = sigma.iter().sum();
    let mut reachable = vec![false; total as usize + 1];
    reachable[0] = true;
    for &s in sigma {
        let s = s as usize;
        if s == 0 {
            continue;
        }
        for k in (s..reachable.len()).rev() {
            if reachable[k - s] {
                reachable[k] = true;
            }
        }
    }
    Ok(reachable.into_iter().all(|r| r))
}

/// Complete-sequence criterion: `σ_i <= 1 + Σ_{j<i} σ_j` for every `i`.
pub fn is_changemaker_fast(sigma: &[i64]) -> Result<bool> {
    check_sorted_nonnegative(sigma)?;
    let mut prefix = 0i64;
    for &s in sigma {
        if s > prefix + 1 {
            return Ok(false);
        }
        prefix += s;
    }
    Ok(true)
}

/// A nondecreasing nonnegative vector whose subset sums cover `0..=Σσ_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChangemakerVector(Vec<i64>);

impl ChangemakerVector {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if !is_changemaker_fast(&coords)? {
            return Err(Error::NotChangemaker(coords));
        }
        Ok(Self(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> i64 {
        dot(&self.0, &self.0)
    }

    pub fn l1(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).sum()
    }
}

impl std::fmt::Display for ChangemakerVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Depth-first search state for changemaker enumeration.
struct CmSearch {
    dim: usize,
    out: Vec<ChangemakerVector>,
}

impl CmSearch {
    fn run(&mut self, prefix: &mut Vec<i64>, sum: i64, norm_left: i64) {
        let i = prefix.len();
        if i == self.dim {
            if norm_left == 0 {
                self.out.push(ChangemakerVector(prefix.clone()));
            }
            return;
        }
        let remaining = (self.dim - i) as i64;
        let lo = prefix.last().copied().unwrap_or(0);
        let hi = sum + 1;
        let mut v = lo;
        // later coordinates are at least v, so remaining·v² must fit the budget
        while v <= hi && remaining * v * v <= norm_left {
            if i + 1 == self.dim && v * v != norm_left {
                v += 1;
                continue;
            }
            prefix.push(v);
            self.run(prefix, sum + v, norm_left - v * v);
            prefix.pop();
            v += 1;
        }
    }
}

/// All changemaker vectors of length `dim` with `Σσ_i² = p`, in lexicographic order.
pub fn enumerate_changemakers(p: i64, dim: usize) -> Vec<ChangemakerVector> {
    if p < 0 || dim == 0 {
        return Vec::new();
    }
    let mut search = CmSearch { dim, out: Vec::new() };
    search.run(&mut Vec::with_capacity(dim), 0, p);
    search.out
}

/// Same output as [`enumerate_changemakers`]; the search tree is split on its
/// first `split_depth` coordinates and subtrees are explored in parallel.
pub fn enumerate_changemakers_par(p: i64, dim: usize, split_depth: usize) -> Vec<ChangemakerVector> {
    if p < 0 || dim == 0 {
        return Vec::new();
    }
    let depth = split_depth.min(dim);
    // prefixes of length `depth` satisfying the same pruning rules, in lex order
    let mut prefixes: Vec<(Vec<i64>, i64, i64)> = vec![(Vec::new(), 0, p)];
    for i in 0..depth {
        let remaining = (dim - i) as i64;
        let mut next = Vec::new();
        for (prefix, sum, left) in prefixes {
            let lo = prefix.last().copied().unwrap_or(0);
            let mut v = lo;
            while v <= sum + 1 && remaining * v * v <= left {
                if i + 1 == dim && v * v != left {
                    v += 1;
                    continue;
                }
                let mut pre = prefix.clone();
                pre.push(v);
                next.push((pre, sum + v, left - v * v));
                v += 1;
            }
        }
        prefixes = next;
    }
    prefixes
        .into_par_iter()
        .map(|(mut prefix, sum, left)| {
            let mut search = CmSearch { dim, out: Vec::new() };
            search.run(&mut prefix, sum, left);
            search.out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Positive definite integral lattice, given by its Gram matrix and optionally by
/// an embedding basis in some `Z^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramLattice {
    gram: Vec<Vec<i64>>,
    basis: Option<Vec<IntVector>>,
}

impl GramLattice {
    /// Validates shape and symmetry. Positive definiteness is checked by the
    /// operations that need it.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedGram);
        }
        for i in 0..n {
            if gram[i][i] < 1 {
                return Err(Error::NotPositiveDefinite);
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::MalformedGram);
                }
            }
        }
        Ok(Self { gram, basis: None })
    }

    /// Gram matrix of pairwise dot products of `basis`.
    pub fn from_basis(basis: Vec<IntVector>) -> Result<Self> {
        let gram = basis.iter().map(|u| basis.iter().map(|v| dot(u, v)).collect()).collect();
        let mut lattice = Self::new(gram)?;
        lattice.basis = Some(basis);
        Ok(lattice)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn basis(&self) -> Option<&[IntVector]> {
        self.basis.as_deref()
    }

    /// `xᵀ G y` for coordinate vectors `x`, `y`.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let gy = self.apply(y);
        dot(x, &gy)
    }

    fn apply(&self, y: &[i64]) -> Vec<i64> {
        self.gram.iter().map(|row| dot(row, y)).collect()
    }

    /// Maps basis coordinates to the ambient embedding, if one is present.
    pub fn to_ambient(&self, coords: &[i64]) -> Option<IntVector> {
        let basis = self.basis.as_ref()?;
        let dim = basis.first().map_or(0, Vec::len);
        let mut v = vec![0; dim];
        for (c, b) in coords.iter().zip(basis) {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += c * bi;
            }
        }
        Some(v)
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.gram)
    }

    /// Exact test via Sylvester's criterion on leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        leading_minors_positive(&self.gram)
    }

    fn max_diagonal(&self) -> i64 {
        (0..self.rank()).map(|i| self.gram[i][i]).max().unwrap_or(0)
    }
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Fraction-free elimination without pivoting; every pivot is a leading minor.
fn leading_minors_positive(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let mut a = to_big(m);
    let mut prev = BigInt::one();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    true
}

/// Exact determinant by Bareiss elimination with row pivoting.
pub(crate) fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_big(m);
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    // returns (g, x, y) with a·x + b·y = g >= 0
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// Integral basis of `{v ∈ Z^{m} : ⟨v, σ⟩ = 0}` together with its Gram matrix.
///
/// For a nondecreasing nonnegative `σ` with a unit coordinate the basis is
/// triangular: one vector `e_j − Σ_{i∈A_j} e_i − c·e_{k}` per `j ≠ k`, where `k` is
/// the unit coordinate and `A_j ⊂ {0..j−1}` is a greedy subset sum for `σ_j`.
/// Otherwise a unimodular column reduction of `σ` is used.
pub fn complement_basis(sigma: &[i64]) -> Result<GramLattice> {
    if sigma.iter().all(|&s| s == 0) {
        return Err(Error::ZeroVector);
    }
    let m = sigma.len();
    let sorted = check_sorted_nonnegative(sigma).is_ok();
    let basis = match sigma.iter().position(|&s| s == 1) {
        Some(unit) if sorted => {
            let mut basis = Vec::with_capacity(m - 1);
            for j in 0..m {
                if j == unit {
                    continue;
                }
                let mut v = vec![0i64; m];
                v[j] = 1;
                let mut rest = sigma[j];
                for i in (0..j).rev() {
                    if sigma[i] > 0 && sigma[i] <= rest {
                        v[i] -= 1;
                        rest -= sigma[i];
                    }
                }
                v[unit] -= rest;
                basis.push(v);
            }
            basis
        }
        _ => unimodular_kernel(sigma),
    };
    debug_assert!(basis.iter().all(|b| dot(b, sigma) == 0));
    GramLattice::from_basis(basis)
}

fn unimodular_kernel(sigma: &[i64]) -> Vec<IntVector> {
    let m = sigma.len();
    let pivot = sigma.iter().position(|&s| s != 0).expect("nonzero vector");
    // columns of u
    let mut cols: Vec<Vec<i64>> = (0..m)
        .map(|j| {
            let mut c = vec![0; m];
            c[j] = 1;
            c
        })
        .collect();
    let mut a = sigma.to_vec();
    for j in 0..m {
        if j == pivot || a[j] == 0 {
            continue;
        }
        let (g, x, y) = ext_gcd(a[pivot], a[j]);
        let (s, t) = (a[j] / g, a[pivot] / g);
        let new_pivot: Vec<i64> = cols[pivot].iter().zip(&cols[j]).map(|(c, d)| x * c + y * d).collect();
        let new_j: Vec<i64> = cols[pivot].iter().zip(&cols[j]).map(|(c, d)| s * c - t * d).collect();
        cols[pivot] = new_pivot;
        cols[j] = new_j;
        a[pivot] = g;
        a[j] = 0;
    }
    cols.into_iter().enumerate().filter(|&(j, _)| j != pivot).map(|(_, c)| c).collect()
}

/// Tridiagonal Gram matrix of a linear chain with the given (positive) weights.
pub fn linear_plumbing_gram(weights: &[i64]) -> Result<GramLattice> {
    if weights.iter().any(|&w| w < 2) {
        return Err(Error::InvalidPlumbingWeight(weights.to_vec()));
    }
    let n = weights.len();
    let mut gram = vec![vec![0; n]; n];
    for (i, &w) in weights.iter().enumerate() {
        gram[i][i] = w;
        if i + 1 < n {
            gram[i][i + 1] = -1;
            gram[i + 1][i] = -1;
        }
    }
    GramLattice::new(gram)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector {
    pub norm: i64,
    pub coords: Vec<i64>,
}

/// Every nonzero lattice vector of norm at most `bound`, one per `±v` pair (first
/// nonzero coordinate positive), sorted by norm and then coordinates.
///
/// Fincke–Pohst enumeration: floating-point bounds are widened slightly and each
/// candidate is re-checked with the exact integer norm.
pub fn short_vectors(lattice: &GramLattice, bound: i64) -> Result<Vec<LatticeVector>> {
    if !lattice.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let n = lattice.rank();
    let mut out = Vec::new();
    if n == 0 || bound < 1 {
        return Ok(out);
    }
    let g = lattice.gram();
    // xᵀGx = Σ_i d_i (x_i + Σ_{j>i} mu_ij x_j)²
    let mut d = vec![0.0f64; n];
    let mut mu = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        let mut dii = g[i][i] as f64;
        for l in 0..i {
            dii -= d[l] * mu[l][i] * mu[l][i];
        }
        d[i] = dii;
        for j in i + 1..n {
            let mut v = g[i][j] as f64;
            for l in 0..i {
                v -= d[l] * mu[l][i] * mu[l][j];
            }
            mu[i][j] = v / dii;
        }
    }

    let mut x = vec![0i64; n];
    let eps = 1e-7 * (1.0 + bound as f64);
    let mut enumerate = Enumerator { gram: lattice, d: &d, mu: &mu, bound, eps, out: &mut out };
    enumerate.level(n - 1, bound as f64, true, &mut x);

    for v in out.iter_mut() {
        if let Some(&first) = v.coords.iter().find(|&&c| c != 0) {
            if first < 0 {
                v.coords.iter_mut().for_each(|c| *c = -*c);
            }
        }
    }
    out.sort();
    Ok(out)
}

struct Enumerator<'a> {
    gram: &'a GramLattice,
    d: &'a [f64],
    mu: &'a [Vec<f64>],
    bound: i64,
    eps: f64,
    out: &'a mut Vec<LatticeVector>,
}

impl Enumerator<'_> {
    fn level(&mut self, i: usize, budget: f64, upper_zero: bool, x: &mut Vec<i64>) {
        let n = x.len();
        let center: f64 = -(i + 1..n).map(|j| self.mu[i][j] * x[j] as f64).sum::<f64>();
        let radius = ((budget + self.eps).max(0.0) / self.d[i]).sqrt();
        let mut lo = (center - radius - self.eps).ceil() as i64;
        let hi = (center + radius + self.eps).floor() as i64;
        // with all higher coordinates zero, take only the sign class with x_i >= 0
        if upper_zero {
            lo = lo.max(0);
        }
        for v in lo..=hi {
            x[i] = v;
            let t = v as f64 - center;
            let rest = budget - self.d[i] * t * t;
            if rest < -self.eps {
                continue;
            }
            let still_zero = upper_zero && v == 0;
            if i == 0 {
                if still_zero {
                    continue;
                }
                let norm = self.gram.inner(x, x);
                if norm <= self.bound {
                    self.out.push(LatticeVector { norm, coords: x.clone() });
                }
            } else {
                self.level(i - 1, rest, still_zero, x);
            }
        }
        x[i] = 0;
    }
}

/// Isomorphism-search data for a fixed target lattice, reusable across sources.
pub struct IsoTarget {
    target: GramLattice,
    det: BigInt,
    norm_bound: i64,
    histogram: BTreeMap<i64, usize>,
    order: Vec<usize>,
}

fn histogram(vs: &[LatticeVector]) -> BTreeMap<i64, usize> {
    let mut h = BTreeMap::new();
    for v in vs {
        *h.entry(v.norm).or_insert(0) += 1;
    }
    h
}

impl IsoTarget {
    pub fn new(target: &GramLattice) -> Result<Self> {
        if !target.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let norm_bound = target.max_diagonal();
        let histogram = histogram(&short_vectors(target, norm_bound)?);
        let n = target.rank();
        let g = target.gram();
        // rarest norms first, then keep each new basis vector adjacent to chosen ones
        let norm_count = |i: usize| histogram.get(&g[i][i]).copied().unwrap_or(0);
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut left: Vec<usize> = (0..n).collect();
        while !left.is_empty() {
            let (pos, _) = left
                .iter()
                .enumerate()
                .map(|(pos, &i)| {
                    let links = order.iter().filter(|&&j| g[i][j] != 0).count();
                    (pos, (std::cmp::Reverse(links), norm_count(i), i))
                })
                .min_by_key(|(_, key)| *key)
                .expect("nonempty");
            order.push(left.remove(pos));
        }
        Ok(Self { target: target.clone(), det: target.determinant(), norm_bound, histogram, order })
    }

    /// Searches for an integral basis of `source` with the target's Gram matrix.
    /// Returns the images of the target basis in source coordinates.
    pub fn find_isomorphism(&self, source: &GramLattice) -> Result<Option<Vec<IntVector>>> {
        if source.rank() != self.target.rank() {
            return Err(Error::RankMismatch(source.rank(), self.target.rank()));
        }
        if !source.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let n = self.target.rank();
        if n == 0 {
            return Ok(Some(Vec::new()));
        }
        if source.determinant() != self.det {
            return Ok(None);
        }
        // compare short-vector counts at increasing norm bounds; most mismatches
        // already show among the shortest vectors, which are cheap to enumerate
        let top = self.norm_bound;
        let mut short = Vec::new();
        for bound in (1..=top).filter(|&b| b <= 2 || b + 1 >= top) {
            short = short_vectors(source, bound)?;
            let want: BTreeMap<i64, usize> = self.histogram.range(..=bound).map(|(&k, &v)| (k, v)).collect();
            if histogram(&short) != want {
                return Ok(None);
            }
        }
        // both signs of every short vector, with Gv cached for inner products
        let mut by_norm: BTreeMap<i64, Vec<Candidate>> = BTreeMap::new();
        for v in &short {
            let neg: Vec<i64> = v.coords.iter().map(|c| -c).collect();
            for coords in [v.coords.clone(), neg] {
                let image = source.apply(&coords);
                by_norm.entry(v.norm).or_default().push(Candidate { coords, image });
            }
        }
        let g = self.target.gram();
        let pools: Vec<&[Candidate]> = self
            .order
            .iter()
            .map(|&i| by_norm.get(&g[i][i]).map_or(&[][..], Vec::as_slice))
            .collect();
        let mut chosen: Vec<usize> = Vec::with_capacity(n);
        if self.backtrack(&pools, &mut chosen) {
            let mut images = vec![Vec::new(); n];
            for (slot, &c) in chosen.iter().enumerate() {
                images[self.order[slot]] = pools[slot][c].coords.clone();
            }
            return Ok(Some(images));
        }
        Ok(None)
    }

    fn backtrack(&self, pools: &[&[Candidate]], chosen: &mut Vec<usize>) -> bool {
        let slot = chosen.len();
        let g = self.target.gram();
        if slot == pools.len() {
            let mut m = vec![Vec::new(); slot];
            for (s, &c) in chosen.iter().enumerate() {
                m[self.order[s]] = pools[s][c].coords.clone();
            }
            return determinant(&m).abs().is_one();
        }
        let i = self.order[slot];
        for (c, cand) in pools[slot].iter().enumerate() {
            let fits = chosen.iter().enumerate().all(|(s, &prev)| {
                dot(&cand.coords, &pools[s][prev].image) == g[i][self.order[s]]
            });
            if !fits {
                continue;
            }
            chosen.push(c);
            if self.backtrack(pools, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

struct Candidate {
    coords: Vec<i64>,
    image: Vec<i64>,
}

/// Whether some integral change of basis carries `a`'s Gram matrix to `b`'s.
pub fn lattice_isomorphic(a: &GramLattice, b: &GramLattice) -> Result<bool> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch(a.rank(), b.rank()));
    }
    Ok(IsoTarget::new(b)?.find_isomorphism(a)?.is_some())
}
