//! Affine `SU(N)` data at integer level `k`.
//!
//! Labels are the level-`k` integrable highest weights, stored in shifted
//! form: the components are `lambda_i = dynkin_i + 1 >= 1` with
//! `sum lambda_i < h = N + k`.  The vacuum is `(1, ..., 1)`.
//!
//! The S matrix comes from the Weyl-group character sum
//! `S[a,b] = c * sum_{w in S_N} sign(w) exp(-2 pi i <w(t_a), t_b> / h)`
//! where `t_a` is the traceless N-vector of partial sums of the shifted
//! components.  The scalar `c` is fixed by unitarity together with
//! `S[0,0] > 0`.  Twists are `exp(2 pi i Delta)` with the conformal weight
//! `Delta = <lam, lam + 2 rho> / (2h)` computed in exact rational
//! arithmetic (long roots normalized to squared length 2).

use crate::error::Error;
use crate::modular::{CMatrix, ModularData};
use crate::Complex;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest supported rank.  The Weyl sum is O(N!) per matrix entry and the
/// cross-family checks never need more than SU(5).
pub const MAX_RANK: usize = 6;

/// Hard cap on the number of integrable weights of one theory.
pub const MAX_LABELS: usize = 500;

/// An integrable highest weight in shifted components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeight(pub Vec<u32>);

impl AffineWeight {
    /// The vacuum weight `(1, ..., 1)` of `SU(n)`.
    pub fn vacuum(n: usize) -> Self {
        AffineWeight(vec![1; n - 1])
    }

    /// The vector weight `(2, 1, ..., 1)`.
    pub fn vector(n: usize) -> Self {
        let mut c = vec![1; n - 1];
        c[0] = 2;
        AffineWeight(c)
    }

    /// Rank of the underlying algebra (number of components plus one).
    pub fn rank(&self) -> usize {
        self.0.len() + 1
    }

    /// Validity at level `k`: all components at least 1 and their sum
    /// strictly below `n + k`.
    pub fn is_valid(&self, n: usize, k: u32) -> bool {
        self.0.len() == n - 1
            && self.0.iter().all(|&c| c >= 1)
            && self.0.iter().sum::<u32>() < n as u32 + k
    }

    /// n-ality `sum_i (lambda_i - 1) * i mod n`, the charge under the
    /// center Z_n.
    pub fn nality(&self, n: usize) -> u32 {
        let total: u64 = self
            .0
            .iter()
            .enumerate()
            .map(|(idx, &c)| (idx as u64 + 1) * (c as u64 - 1))
            .sum();
        (total % n as u64) as u32
    }

    /// Conjugate weight (components reversed).
    pub fn conjugate(&self) -> Self {
        let mut c = self.0.clone();
        c.reverse();
        AffineWeight(c)
    }

    /// Quadratic Casimir `<lam, lam + 2 rho>` with long roots of squared
    /// length 2, as an exact rational (denominator divides n).
    pub fn casimir(&self, n: usize) -> Rational64 {
        let r = n - 1;
        let a: Vec<i64> = self.0.iter().map(|&c| c as i64 - 1).collect();
        let mut num = 0i64;
        for i in 1..=r {
            for j in 1..=r {
                // n * G[i][j] = n * min(i,j) - i*j
                let g = (n as i64) * (i.min(j) as i64) - (i * j) as i64;
                num += a[i - 1] * g * (a[j - 1] + 2);
            }
        }
        Rational64::new(num, n as i64)
    }

    /// Conformal weight `Delta = casimir / (2(n + k))`.
    pub fn conformal_weight(&self, k: u32) -> Rational64 {
        let n = self.rank();
        self.casimir(n) / Rational64::from_integer(2 * (n as i64 + k as i64))
    }

    /// Ribbon twist `omega = exp(2 pi i Delta)`.
    pub fn twist(&self, k: u32) -> Complex {
        let delta = self.conformal_weight(k).to_f64().unwrap();
        Complex::from_polar(1.0, 2.0 * PI * delta)
    }

    /// The generating simple current `sigma`: rotate the extended components,
    /// `(lambda_1, ..., lambda_{n-1}) -> (n + k - sum, lambda_1, ..., lambda_{n-2})`.
    /// Shifts n-ality by `k` and has order `n` on valid weights.
    pub fn simple_current(&self, k: u32) -> Self {
        let n = self.rank();
        let sum: u32 = self.0.iter().sum();
        let mut c = Vec::with_capacity(n - 1);
        c.push(n as u32 + k - sum);
        c.extend_from_slice(&self.0[..n - 2]);
        AffineWeight(c)
    }

    /// `sigma^p` for any integer power (reduced mod n).
    pub fn simple_current_pow(&self, p: i64, k: u32) -> Self {
        let n = self.rank() as i64;
        let reps = p.rem_euclid(n);
        let mut w = self.clone();
        for _ in 0..reps {
            w = w.simple_current(k);
        }
        w
    }

    /// Fusion with the vector weight: add one box in each admissible
    /// position of the Young diagram.  In shifted components the candidates
    /// are `lambda_1 + 1`, then `lambda_j - 1, lambda_{j+1} + 1` for each
    /// inner position, then `lambda_{n-1} - 1`; invalid results are dropped.
    /// All multiplicities are 0 or 1.
    pub fn vector_fusion(&self, k: u32) -> Vec<AffineWeight> {
        let n = self.rank();
        let r = n - 1;
        let mut out = Vec::new();
        let mut push = |c: Vec<u32>| {
            let w = AffineWeight(c);
            if w.is_valid(n, k) {
                out.push(w);
            }
        };
        let mut first = self.0.clone();
        first[0] += 1;
        push(first);
        for p in 0..r.saturating_sub(1) {
            if self.0[p] >= 2 {
                let mut c = self.0.clone();
                c[p] -= 1;
                c[p + 1] += 1;
                push(c);
            }
        }
        if self.0[r - 1] >= 2 {
            let mut c = self.0.clone();
            c[r - 1] -= 1;
            push(c);
        }
        out
    }

    /// Traceless N-vector of partial sums used by the Weyl character sum.
    fn orthogonal_coords(&self) -> Vec<f64> {
        let n = self.rank();
        let mut t = vec![0.0f64; n];
        for i in (0..n - 1).rev() {
            t[i] = t[i + 1] + self.0[i] as f64;
        }
        let mean: f64 = t.iter().sum::<f64>() / n as f64;
        for x in t.iter_mut() {
            *x -= mean;
        }
        t
    }
}

impl std::fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All integrable weights of `SU(n)` at level `k`, lexicographically sorted
/// so the vacuum comes first.
pub fn enumerate_weights(n: usize, k: u32) -> Result<Vec<AffineWeight>, Error> {
    if !(2..=MAX_RANK).contains(&n) {
        return Err(Error::Domain(format!("rank N = {n} outside supported range 2..={MAX_RANK}")));
    }
    if k < 1 {
        return Err(Error::Domain("level k must be at least 1".into()));
    }
    let r = n - 1;
    let h = n as u32 + k;
    let mut out = Vec::new();
    let mut cur = vec![1u32; r];
    loop {
        if cur.iter().sum::<u32>() < h {
            if out.len() == MAX_LABELS {
                return Err(Error::CapacityExceeded(format!(
                    "SU({n}) level {k} has more than {MAX_LABELS} weights"
                )));
            }
            out.push(AffineWeight(cur.clone()));
        }
        // Advance odometer in lexicographic order; components never need to
        // exceed k + 1.
        let mut pos = r;
        loop {
            if pos == 0 {
                out.sort();
                return Ok(out);
            }
            pos -= 1;
            if cur[pos] < k + 1 {
                cur[pos] += 1;
                for c in cur[pos + 1..].iter_mut() {
                    *c = 1;
                }
                break;
            }
        }
    }
}

/// All permutations of `0..n` with their signs.
fn signed_permutations(n: usize) -> Vec<(Vec<usize>, f64)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, sign: &mut f64, out: &mut Vec<(Vec<usize>, f64)>) {
        if k == 1 {
            out.push((perm.clone(), *sign));
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, perm, sign, out);
            if k % 2 == 0 {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
            *sign = -*sign;
        }
        heap(k - 1, perm, sign, out);
    }
    let mut sign = 1.0;
    heap(n, &mut perm, &mut sign, &mut out);
    out
}

/// Kac-Peterson S matrix for the given weight list, rows and columns in the
/// order of `weights`.  Normalization: unitary with `S[0,0] > 0` (the first
/// weight must be the vacuum).
pub fn kac_peterson_s(n: usize, k: u32, weights: &[AffineWeight]) -> CMatrix {
    let h = (n as u32 + k) as f64;
    let coords: Vec<Vec<f64>> = weights.iter().map(|w| w.orthogonal_coords()).collect();
    let perms = signed_permutations(n);
    let m = weights.len();
    let mut raw = CMatrix::zeros(m);
    for a in 0..m {
        for b in a..m {
            let mut acc = Complex::new(0.0, 0.0);
            for (perm, sign) in &perms {
                let mut dot = 0.0;
                for (i, &p) in perm.iter().enumerate() {
                    dot += coords[a][p] * coords[b][i];
                }
                acc += *sign * Complex::from_polar(1.0, -2.0 * PI * dot / h);
            }
            raw[(a, b)] = acc;
            raw[(b, a)] = acc;
        }
    }
    // The raw matrix is a scalar multiple of a unitary matrix; fix the
    // scalar so rows are orthonormal and the vacuum-vacuum entry is a
    // positive real.
    let row_norm: f64 = (0..m).map(|b| raw[(0, b)].norm_sqr()).sum::<f64>().sqrt();
    let phase = raw[(0, 0)].conj() / raw[(0, 0)].norm();
    let scale = phase / row_norm;
    raw.scale(scale)
}

/// Central charge `c = k (n^2 - 1) / (n + k)`.
pub fn central_charge(n: usize, k: u32) -> f64 {
    let n = n as f64;
    let k = k as f64;
    k * (n * n - 1.0) / (n + k)
}

/// A fully built affine theory: its weights (index-aligned with the modular
/// data labels) and the modular data itself.
#[derive(Debug)]
pub struct AffineTheory {
    /// Rank of the algebra.
    pub n: usize,
    /// Level.
    pub k: u32,
    /// Integrable weights, index-aligned with `md.labels`.
    pub weights: Vec<AffineWeight>,
    /// The modular data.
    pub md: ModularData,
    index: HashMap<AffineWeight, usize>,
}

impl AffineTheory {
    /// Label index of a weight; panics if the weight is not integrable at
    /// this level (callers construct weights via the module's own maps).
    pub fn index_of(&self, w: &AffineWeight) -> usize {
        *self.index.get(w).unwrap_or_else(|| panic!("{w} is not a weight of SU({}) level {}", self.n, self.k))
    }
}

fn build_uncached(n: usize, k: u32) -> Result<AffineTheory, Error> {
    let weights = enumerate_weights(n, k)?;
    debug_assert_eq!(weights[0], AffineWeight::vacuum(n));
    let s = kac_peterson_s(n, k, &weights);
    let twists: Vec<Complex> = weights.iter().map(|w| w.twist(k)).collect();
    let labels: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
    let md = ModularData::from_s_and_twists(
        format!("su:N={n},k={k}"),
        labels,
        s,
        twists,
        central_charge(n, k),
    )?;
    let index = weights.iter().cloned().zip(0..).collect();
    Ok(AffineTheory { n, k, weights, md, index })
}

/// Build (or fetch from the process-wide cache) the affine `SU(n)` theory
/// at level `k`.
pub fn theory(n: usize, k: u32) -> Result<Arc<AffineTheory>, Error> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<AffineTheory>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&(n, k)) {
        return Ok(t.clone());
    }
    let built = Arc::new(build_uncached(n, k)?);
    cache.lock().unwrap().insert((n, k), built.clone());
    Ok(built)
}

/// The rank/level transpose of a weight: a level-`level` weight of
/// `SU(rank)` maps to a level-`rank` weight of `SU(level)`.
///
/// Writing `k_0 = rank + level - sum(lambda)` and `k_i = lambda_i`, the
/// strictly decreasing sequence `r_j = k_j + ... + k_{rank-1} + k_0` sits
/// inside `{1, ..., rank+level}`; its complement, read off appropriately,
/// is the `r`-sequence of the transposed weight.
pub fn level_rank_transpose(w: &AffineWeight, level: u32) -> AffineWeight {
    let m = w.rank();
    let n = level as usize;
    let total = (m + n) as u32;
    let sum: u32 = w.0.iter().sum();
    let k0 = total - sum;
    // r[j] = k_j + k_{j+1} + ... + k_{m-1} + k_0 for j = 1..m (descending).
    let mut r = Vec::with_capacity(m);
    let mut acc = k0;
    for j in (1..m).rev() {
        acc += w.0[j - 1];
        r.push(acc); // r_j accumulated from the tail
    }
    r.push(k0); // r_m = k_0
    r.sort_unstable_by(|a, b| b.cmp(a));
    let in_r: std::collections::HashSet<u32> = r.iter().copied().collect();
    let mut rbar: Vec<u32> = (1..=total).filter(|x| !in_r.contains(x)).collect();
    rbar.sort_unstable_by(|a, b| b.cmp(a)); // descending, length n
    let smallest = rbar[n - 1];
    // s_j = m + n + min(rbar) - rbar[n - j] (1-indexed), strictly decreasing.
    let s: Vec<u32> = (1..=n).map(|j| total + smallest - rbar[n - j]).collect();
    let comps: Vec<u32> = (0..n - 1).map(|j| s[j] - s[j + 1]).collect();
    AffineWeight(comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::TOL_IDENTITY;

    #[test]
    fn weight_enumeration_counts() {
        // SU(2) level k: k+1 weights; SU(3) level 2: 6 weights.
        assert_eq!(enumerate_weights(2, 4).unwrap().len(), 5);
        let su32 = enumerate_weights(3, 2).unwrap();
        assert_eq!(su32.len(), 6);
        assert_eq!(su32[0], AffineWeight::vacuum(3));
        // SU(4) level 1: one weight per n-ality class.
        assert_eq!(enumerate_weights(4, 1).unwrap().len(), 4);
    }

    #[test]
    fn conformal_weights_match_known_values() {
        // Spin 1/2 at level 1: Delta = 1/4.
        let spin_half = AffineWeight(vec![2]);
        assert_eq!(spin_half.conformal_weight(1), Rational64::new(1, 4));
        // Spin 1 at level 2: Delta = 1/2.
        let spin_one = AffineWeight(vec![3]);
        assert_eq!(spin_one.conformal_weight(2), Rational64::new(1, 2));
        // Vector of SU(N) at level k: (N^2 - 1) / (2 N (N + k)).
        for n in 2..=5usize {
            for k in 1..=4u32 {
                let v = AffineWeight::vector(n);
                let expect = Rational64::new(
                    (n * n - 1) as i64,
                    2 * n as i64 * (n as i64 + k as i64),
                );
                assert_eq!(v.conformal_weight(k), expect, "vector weight SU({n}) level {k}");
            }
        }
    }

    #[test]
    fn central_charges_match_known_values() {
        assert!((central_charge(2, 1) - 1.0).abs() < 1e-12);
        assert!((central_charge(2, 2) - 1.5).abs() < 1e-12);
        assert!((central_charge(3, 2) - 3.2).abs() < 1e-12);
    }

    #[test]
    fn su2_s_matrix_is_sine_formula() {
        for k in 1..=6u32 {
            let weights = enumerate_weights(2, k).unwrap();
            let s = kac_peterson_s(2, k, &weights);
            let h = (k + 2) as f64;
            let norm = (2.0 / h).sqrt();
            for a in 0..weights.len() {
                for b in 0..weights.len() {
                    let expect = norm
                        * ((weights[a].0[0] as f64) * (weights[b].0[0] as f64) * PI / h).sin();
                    assert!(
                        (s[(a, b)] - Complex::new(expect, 0.0)).norm() < TOL_IDENTITY,
                        "SU(2) level {k} entry ({a},{b})"
                    );
                }
            }
        }
    }

    #[test]
    fn affine_axioms_hold_for_small_theories() {
        for (n, k) in [(2, 1), (2, 4), (3, 2), (4, 2)] {
            let t = theory(n, k).unwrap();
            for c in t.md.axiom_checks() {
                assert!(c.pass(), "SU({n}) level {k}: {} deviates {:.3e}", c.name, c.deviation);
            }
            assert_eq!(t.md.associativity_deviation(20), 0);
        }
    }

    #[test]
    fn simple_current_shifts_nality_by_level() {
        for (n, k) in [(2, 3), (3, 2), (4, 3)] {
            for w in enumerate_weights(n, k).unwrap() {
                let sw = w.simple_current(k);
                assert!(sw.is_valid(n, k), "sigma({w}) invalid");
                assert_eq!(sw.nality(n), (w.nality(n) + k) % n as u32, "nality shift at {w}");
                // sigma has order n.
                assert_eq!(w.simple_current_pow(n as i64, k), w);
            }
        }
    }

    #[test]
    fn vector_fusion_matches_verlinde() {
        for (n, k) in [(3, 2), (4, 2), (2, 5)] {
            let t = theory(n, k).unwrap();
            let v = t.index_of(&AffineWeight::vector(n));
            for (a, w) in t.weights.iter().enumerate() {
                let pieri = w.vector_fusion(k);
                for (b, target) in t.weights.iter().enumerate() {
                    let mult = t.md.fusion.get(v, a, b);
                    let expect = pieri.iter().filter(|x| *x == target).count() as u32;
                    assert_eq!(mult, expect, "SU({n}) level {k}: v x {w} -> {target}");
                }
            }
        }
    }

    #[test]
    fn fundamental_weights_appear_once_in_vector_powers() {
        // The i-th fundamental weight shows up exactly once in the i-th
        // fusion power of the vector weight.
        for (n, k) in [(3, 2), (4, 2)] {
            let t = theory(n, k).unwrap();
            let len = t.weights.len();
            let v = t.index_of(&AffineWeight::vector(n));
            let mut power = vec![0u64; len];
            power[0] = 1; // vacuum
            for step in 1..n {
                let mut next = vec![0u64; len];
                for (a, &mult) in power.iter().enumerate() {
                    if mult == 0 {
                        continue;
                    }
                    for b in 0..len {
                        next[b] += mult * t.md.fusion.get(v, a, b) as u64;
                    }
                }
                power = next;
                let mut comps = vec![1u32; n - 1];
                comps[step - 1] = 2;
                let fundamental = t.index_of(&AffineWeight(comps));
                assert_eq!(power[fundamental], 1, "SU({n}) level {k} power {step}");
            }
        }
    }

    #[test]
    fn conjugation_matches_reversed_components() {
        let t = theory(3, 2).unwrap();
        for (a, w) in t.weights.iter().enumerate() {
            assert_eq!(t.md.conj[a], t.index_of(&w.conjugate()));
        }
    }

    #[test]
    fn level_rank_transpose_of_vacuum() {
        // SU(2) level 3 vacuum -> SU(3) level 2 vacuum, via r = (5,4) and
        // complement (3,2,1).
        let vac = AffineWeight::vacuum(2);
        assert_eq!(level_rank_transpose(&vac, 3), AffineWeight::vacuum(3));
        // Transpose lands on valid weights of the swapped theory.
        for (m, n) in [(2u32, 3u32), (3, 2), (2, 5)] {
            for w in enumerate_weights(m as usize, n).unwrap() {
                let tw = level_rank_transpose(&w, n);
                assert!(tw.is_valid(n as usize, m), "transpose of {w} invalid");
            }
        }
    }
}
