//! Surgery invariants of closed oriented 3-manifolds.
//!
//! Every family follows the same template: for a surgery presentation with
//! `n` components, linking matrix `L` and signature counts `(b+, b-)`,
//!
//! `tau(M) = kappa^{3(b- - b+)} D^{-n} sum over colorings of W(coloring)`,
//!
//! where `W` is the product over components of the quantum dimension times
//! the colored framed link invariant.  The sphere (empty presentation) gives
//! `tau = 1` and adding a split +/-1-framed unknot leaves `tau` unchanged,
//! which pins the normalization.
//!
//! Coset and extension sums run over the orbit catalogs of [`crate::coset`];
//! the per-orbit weight is the dimension of a single simple piece times the
//! number of pieces, which collapses to the ambient dimension at the orbit
//! representative.

use crate::affine;
use crate::coset;
use crate::error::Error;
use crate::modular::ModularData;
use crate::skein::colored_invariant_su2;
use crate::surgery::{chain_colored_invariant, FramedLink, SurgeryPresentation};
use crate::{u1, Complex};
use std::collections::HashMap;

/// Cap on the number of link components in a coloring sum.
pub const MAX_COLORED_COMPONENTS: usize = 6;

/// Cap on the total number of coloring terms of one evaluation.
pub const MAX_COLORING_TERMS: u64 = 50_000_000;

/// Which theory to evaluate the invariant in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheorySpec {
    /// The affine theory `SU(n)` at level `k`.
    Su { n: usize, k: u32 },
    /// The rank-one lattice theory at level `2k`.
    U1 { k: u32 },
    /// The parafermion coset at level `k`.
    Parafermion { k: u32 },
    /// The diagonal coset of `SU(n)` at levels `(m1, m2)`.
    Diagonal { n: usize, m1: u32, m2: u32 },
    /// `SU(n)` at level `k` extended by `Z_m`.
    Extension { n: usize, k: u32, m: u32 },
    /// The restricted (center-quotient) invariant of `SU(m)` at level `n`.
    Psu { m: usize, n: u32 },
}

impl std::fmt::Display for TheorySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TheorySpec::Su { n, k } => write!(f, "su:N={n},k={k}"),
            TheorySpec::U1 { k } => write!(f, "u1:k={k}"),
            TheorySpec::Parafermion { k } => write!(f, "parafermion:k={k}"),
            TheorySpec::Diagonal { n, m1, m2 } => write!(f, "diagonal:N={n},m1={m1},m2={m2}"),
            TheorySpec::Extension { n, k, m } => write!(f, "extension:N={n},k={k},m={m}"),
            TheorySpec::Psu { m, n } => write!(f, "psu:m={m},n={n}"),
        }
    }
}

/// Result of one invariant evaluation.
#[derive(Debug, Clone)]
pub struct TauResult {
    /// The invariant.
    pub value: Complex,
    /// Positive eigenvalue count of the linking matrix.
    pub b_plus: usize,
    /// Negative eigenvalue count.
    pub b_minus: usize,
    /// Number of coloring terms summed.
    pub colorings: u64,
}

/// Evaluate the invariant of the given presentation in the given theory.
pub fn tau(spec: &TheorySpec, m: &SurgeryPresentation) -> Result<TauResult, Error> {
    match *spec {
        TheorySpec::Su { n, k } => tau_su(n, k, m),
        TheorySpec::U1 { k } => tau_u1(k, m),
        TheorySpec::Parafermion { k } => tau_parafermion(k, m),
        TheorySpec::Diagonal { n, m1, m2 } => tau_diagonal(n, m1, m2, m),
        TheorySpec::Extension { n, k, m: mz } => tau_extension(n, k, mz, m),
        TheorySpec::Psu { m: rank, n: level } => tau_psu_restricted(rank, level, m),
    }
}

/// Iterate a mixed-radix odometer, summing `term` over all colorings.
fn sum_over_colorings<F: FnMut(&[usize]) -> Result<Complex, Error>>(
    radices: &[usize],
    mut term: F,
) -> Result<(Complex, u64), Error> {
    let n = radices.len();
    if n > MAX_COLORED_COMPONENTS {
        return Err(Error::CapacityExceeded(format!(
            "{n} components exceeds the coloring cap of {MAX_COLORED_COMPONENTS}"
        )));
    }
    let mut total_terms = 1u64;
    for &r in radices {
        if r == 0 {
            return Err(Error::Degenerate("empty color set".into()));
        }
        total_terms = total_terms.saturating_mul(r as u64);
        if total_terms > MAX_COLORING_TERMS {
            return Err(Error::CapacityExceeded(format!(
                "coloring sum of more than {MAX_COLORING_TERMS} terms"
            )));
        }
    }
    let mut colors = vec![0usize; n];
    let mut total = Complex::new(0.0, 0.0);
    let mut count = 0u64;
    loop {
        total += term(&colors)?;
        count += 1;
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok((total, count));
            }
            pos -= 1;
            colors[pos] += 1;
            if colors[pos] < radices[pos] {
                break;
            }
            colors[pos] = 0;
        }
    }
}

/// Anomaly correction `kappa^{3(b- - b+)}`, with `kappa^3` passed in.
fn framing_anomaly(anomaly: Complex, b_plus: usize, b_minus: usize) -> Complex {
    anomaly.powi(b_minus as i32 - b_plus as i32)
}

/// Invariant of a chain presentation for any modular theory, by summing the
/// closed-form chain evaluations over all colorings.
pub fn tau_modular_chains(md: &ModularData, chains: &[Vec<i64>]) -> Result<TauResult, Error> {
    let m = SurgeryPresentation::Chains(chains.to_vec());
    let n = m.n_components();
    let (b_plus, b_minus) = m.signature_counts()?;
    let hopf = md.hopf_matrix();
    let rank = md.len();
    let (sum, colorings) = sum_over_colorings(&vec![rank; n], |colors| {
        let mut w = Complex::new(1.0, 0.0);
        let mut base = 0usize;
        for chain in chains {
            w *= chain_colored_invariant(md, &hopf, chain, &colors[base..base + chain.len()]);
            base += chain.len();
        }
        Ok(w)
    })?;
    let value = framing_anomaly(md.anomaly, b_plus, b_minus) * md.rank.powi(-(n as i32)) * sum;
    Ok(TauResult { value, b_plus, b_minus, colorings })
}

/// Invariant in `SU(2)` at level `k` of a braid-closure link, via the cabled
/// diagram calculus.
pub fn tau_su2_link(k: u32, link: &FramedLink) -> Result<TauResult, Error> {
    let md = affine::theory(2, k)?;
    let n = link.n_components();
    let (b_plus, b_minus) = crate::surgery::signature_counts(&link.linking_matrix());
    let (sum, colorings) = sum_over_colorings(&vec![k as usize + 1; n], |colors| {
        let m_colors: Vec<u32> = colors.iter().map(|&c| c as u32).collect();
        let dims: f64 = colors.iter().map(|&c| md.md.dims[c]).product();
        Ok(dims * colored_invariant_su2(link, &m_colors, k)?)
    })?;
    let value =
        framing_anomaly(md.md.anomaly, b_plus, b_minus) * md.md.rank.powi(-(n as i32)) * sum;
    Ok(TauResult { value, b_plus, b_minus, colorings })
}

/// Invariant in the affine theory `SU(n)` at level `k`.
pub fn tau_su(n: usize, k: u32, m: &SurgeryPresentation) -> Result<TauResult, Error> {
    match m {
        SurgeryPresentation::Chains(chains) => {
            let t = affine::theory(n, k)?;
            tau_modular_chains(&t.md, chains)
        }
        SurgeryPresentation::Link(link) => {
            if n == 2 {
                tau_su2_link(k, link)
            } else {
                Err(Error::Unsupported(format!(
                    "braid-closure surgery is only evaluated for SU(2); SU({n}) needs a chain presentation"
                )))
            }
        }
    }
}

/// Invariant in the lattice theory at level `2k`.  Only the linking matrix
/// enters, so every presentation is supported:
///
/// `tau = kappa^{3(b- - b+)} (2k)^{-n/2} sum_{a in Z_2k^n} exp((2 pi i / 4k) a^T L a)`.
pub fn tau_u1(k: u32, m: &SurgeryPresentation) -> Result<TauResult, Error> {
    if k < 1 {
        return Err(Error::Domain("u1 requires k >= 1".into()));
    }
    let linking = m.linking_matrix()?;
    let n = linking.len();
    let (b_plus, b_minus) = m.signature_counts()?;
    let (sum, colorings) = sum_over_colorings(&vec![2 * k as usize; n], |colors| {
        let alphas: Vec<i64> = colors.iter().map(|&c| c as i64).collect();
        Ok(u1::link_invariant(k, &linking, &alphas))
    })?;
    let anomaly = Complex::from_polar(1.0, std::f64::consts::PI / 4.0);
    let value = framing_anomaly(anomaly, b_plus, b_minus)
        * (2.0 * k as f64).powi(n as i32).sqrt().recip()
        * sum;
    Ok(TauResult { value, b_plus, b_minus, colorings })
}

/// Invariant in the parafermion coset at level `k`.  Components are colored
/// by pairs `(m, alpha)` with `m = alpha mod 2`; the numerator part is the
/// `SU(2)` colored invariant and the denominator part the conjugated lattice
/// invariant.  Summing over all pairs double-counts each sector class, which
/// the prefactor `(D_G D_H)^{-n} = (2 D_{G/H})^{-n}` absorbs.
pub fn tau_parafermion(k: u32, m: &SurgeryPresentation) -> Result<TauResult, Error> {
    let table = coset::parafermion_sectors(k)?;
    let g = affine::theory(2, k)?;
    let h = u1::theory(k)?;
    let n = m.n_components();
    let (b_plus, b_minus) = m.signature_counts()?;
    // All admissible pairs (m, alpha); (k+1)k of them.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for mm in 0..=k as usize {
        for alpha in 0..2 * k as usize {
            if (mm + alpha) % 2 == 0 {
                pairs.push((mm, alpha));
            }
        }
    }
    let prefactor = (g.md.rank * h.rank).powi(-(n as i32));
    let value_sum = match m {
        SurgeryPresentation::Chains(chains) => {
            let hopf_g = g.md.hopf_matrix();
            let hopf_h = h.hopf_matrix();
            sum_over_colorings(&vec![pairs.len(); n], |colors| {
                let mut w = Complex::new(1.0, 0.0);
                let mut base = 0usize;
                for chain in chains {
                    let gc: Vec<usize> =
                        (0..chain.len()).map(|i| pairs[colors[base + i]].0).collect();
                    let hc: Vec<usize> =
                        (0..chain.len()).map(|i| pairs[colors[base + i]].1).collect();
                    w *= chain_colored_invariant(&g.md, &hopf_g, chain, &gc)
                        * chain_colored_invariant(&h, &hopf_h, chain, &hc).conj();
                    base += chain.len();
                }
                Ok(w)
            })?
        }
        SurgeryPresentation::Link(link) => {
            let linking = link.linking_matrix();
            let mut cache: HashMap<Vec<u32>, Complex> = HashMap::new();
            sum_over_colorings(&vec![pairs.len(); n], |colors| {
                let gc: Vec<u32> = colors.iter().map(|&c| pairs[c].0 as u32).collect();
                let alphas: Vec<i64> = colors.iter().map(|&c| pairs[c].1 as i64).collect();
                let dims: f64 = gc.iter().map(|&mm| g.md.dims[mm as usize]).product();
                let wg = match cache.get(&gc) {
                    Some(&v) => v,
                    None => {
                        let v = colored_invariant_su2(link, &gc, k)?;
                        cache.insert(gc.clone(), v);
                        v
                    }
                };
                Ok(dims * wg * u1::link_invariant(k, &linking, &alphas).conj())
            })?
        }
    };
    let value = framing_anomaly(table.anomaly, b_plus, b_minus) * prefactor * value_sum.0;
    Ok(TauResult { value, b_plus, b_minus, colorings: value_sum.1 })
}

/// Invariant in the diagonal coset.  Components are colored by the orbits of
/// the sector catalog; summing the sector weight over the pieces of an orbit
/// of length `f` gives `(f / N)` times the ambient triple weight at the
/// representative, where the ambient weight is the product of the two factor
/// weights and the conjugated denominator weight.  That product is constant
/// along an orbit because the center phases cancel by the n-ality selection
/// rule.
pub fn tau_diagonal(
    n: usize,
    m1: u32,
    m2: u32,
    m: &SurgeryPresentation,
) -> Result<TauResult, Error> {
    let table = coset::diagonal_sectors(n, m1, m2)?;
    let reps: Vec<[usize; 3]> = table
        .orbits
        .iter()
        .map(|o| {
            [
                table.factor1.index_of(&o.rep[0]),
                table.factor2.index_of(&o.rep[1]),
                table.denominator.index_of(&o.rep[2]),
            ]
        })
        .collect();
    let nc = m.n_components();
    let (b_plus, b_minus) = m.signature_counts()?;
    let (sum, colorings) = match m {
        SurgeryPresentation::Chains(chains) => {
            let h1 = table.factor1.md.hopf_matrix();
            let h2 = table.factor2.md.hopf_matrix();
            let h3 = table.denominator.md.hopf_matrix();
            sum_over_colorings(&vec![reps.len(); nc], |colors| {
                let mut w = Complex::new(1.0, 0.0);
                for &c in colors {
                    w *= table.orbits[c].orbit_length as f64 / n as f64;
                }
                let mut base = 0usize;
                for chain in chains {
                    let pick = |slot: usize| -> Vec<usize> {
                        (0..chain.len()).map(|i| reps[colors[base + i]][slot]).collect()
                    };
                    w *= chain_colored_invariant(&table.factor1.md, &h1, chain, &pick(0))
                        * chain_colored_invariant(&table.factor2.md, &h2, chain, &pick(1))
                        * chain_colored_invariant(&table.denominator.md, &h3, chain, &pick(2))
                            .conj();
                    base += chain.len();
                }
                Ok(w)
            })?
        }
        SurgeryPresentation::Link(link) => {
            if n != 2 {
                return Err(Error::Unsupported(
                    "braid-closure surgery in diagonal cosets is only evaluated for SU(2)".into(),
                ));
            }
            // m-color of an SU(2) weight is its shifted component minus 1.
            let m_of = |o: &coset::DiagonalOrbit, slot: usize| o.rep[slot].0[0] - 1;
            let mut caches: [HashMap<Vec<u32>, Complex>; 3] = Default::default();
            let levels = [m1, m2, m1 + m2];
            let tables = [&table.factor1, &table.factor2, &table.denominator];
            sum_over_colorings(&vec![reps.len(); nc], |colors| {
                let mut w = Complex::new(1.0, 0.0);
                for &c in colors {
                    w *= table.orbits[c].orbit_length as f64 / n as f64;
                }
                for slot in 0..3 {
                    let mc: Vec<u32> =
                        colors.iter().map(|&c| m_of(&table.orbits[c], slot)).collect();
                    let dims: f64 = colors
                        .iter()
                        .map(|&c| tables[slot].md.dims[reps[c][slot]])
                        .product();
                    let v = match caches[slot].get(&mc) {
                        Some(&v) => v,
                        None => {
                            let v = colored_invariant_su2(link, &mc, levels[slot])?;
                            caches[slot].insert(mc.clone(), v);
                            v
                        }
                    };
                    w *= dims * if slot == 2 { v.conj() } else { v };
                }
                Ok(w)
            })?
        }
    };
    let value = framing_anomaly(table.anomaly, b_plus, b_minus)
        * table.rank.powi(-(nc as i32))
        * sum;
    Ok(TauResult { value, b_plus, b_minus, colorings })
}

/// Direct-formula evaluation of the diagonal coset invariant, bypassing the
/// sector catalog: sum over all weight triples obeying the selection rule
/// with plain ambient weights and prefactor `(D(m1) D(m2) D(m1+m2))^{-n}`.
/// Agrees with [`tau_diagonal`] and serves as an independent code path.
pub fn tau_diagonal_direct(
    n: usize,
    m1: u32,
    m2: u32,
    m: &SurgeryPresentation,
) -> Result<TauResult, Error> {
    let t1 = affine::theory(n, m1)?;
    let t2 = affine::theory(n, m2)?;
    let t3 = affine::theory(n, m1 + m2)?;
    let nn = n as u32;
    let mut triples: Vec<[usize; 3]> = Vec::new();
    for (i1, w1) in t1.weights.iter().enumerate() {
        for (i2, w2) in t2.weights.iter().enumerate() {
            for (i3, w) in t3.weights.iter().enumerate() {
                if (w1.nality(n) + w2.nality(n) + nn - w.nality(n)) % nn == 0 {
                    triples.push([i1, i2, i3]);
                }
            }
        }
    }
    let nc = m.n_components();
    let (b_plus, b_minus) = m.signature_counts()?;
    let (sum, colorings) = match m {
        SurgeryPresentation::Chains(chains) => {
            let h1 = t1.md.hopf_matrix();
            let h2 = t2.md.hopf_matrix();
            let h3 = t3.md.hopf_matrix();
            sum_over_colorings(&vec![triples.len(); nc], |colors| {
                let mut w = Complex::new(1.0, 0.0);
                let mut base = 0usize;
                for chain in chains {
                    let pick = |slot: usize| -> Vec<usize> {
                        (0..chain.len()).map(|i| triples[colors[base + i]][slot]).collect()
                    };
                    w *= chain_colored_invariant(&t1.md, &h1, chain, &pick(0))
                        * chain_colored_invariant(&t2.md, &h2, chain, &pick(1))
                        * chain_colored_invariant(&t3.md, &h3, chain, &pick(2)).conj();
                    base += chain.len();
                }
                Ok(w)
            })?
        }
        SurgeryPresentation::Link(link) => {
            if n != 2 {
                return Err(Error::Unsupported(
                    "braid-closure surgery in diagonal cosets is only evaluated for SU(2)".into(),
                ));
            }
            let tables = [&t1, &t2, &t3];
            let levels = [m1, m2, m1 + m2];
            let mut caches: [HashMap<Vec<u32>, Complex>; 3] = Default::default();
            sum_over_colorings(&vec![triples.len(); nc], |colors| {
                let mut w = Complex::new(1.0, 0.0);
                for slot in 0..3 {
                    let mc: Vec<u32> = colors
                        .iter()
                        .map(|&c| tables[slot].weights[triples[c][slot]].0[0] - 1)
                        .collect();
                    let dims: f64 = colors
                        .iter()
                        .map(|&c| tables[slot].md.dims[triples[c][slot]])
                        .product();
                    let v = match caches[slot].get(&mc) {
                        Some(&v) => v,
                        None => {
                            let v = colored_invariant_su2(link, &mc, levels[slot])?;
                            caches[slot].insert(mc.clone(), v);
                            v
                        }
                    };
                    w *= dims * if slot == 2 { v.conj() } else { v };
                }
                Ok(w)
            })?
        }
    };
    let rank = t1.md.rank * t2.md.rank * t3.md.rank;
    let anomaly = Complex::from_polar(
        1.0,
        std::f64::consts::PI
            * (t1.md.central_charge + t2.md.central_charge - t3.md.central_charge)
            / 4.0,
    );
    let value = framing_anomaly(anomaly, b_plus, b_minus) * rank.powi(-(nc as i32)) * sum;
    Ok(TauResult { value, b_plus, b_minus, colorings })
}

/// Invariant in the `Z_m` extension of `SU(n)` at level `k`, evaluated from
/// the orbit catalog: components are colored by orbits, each weighted by
/// `(f / m)` times the ambient weight at the representative (the aggregate
/// of the sector weights of its pieces), with prefactor `(D_G / m)^{-n}` and
/// the ambient anomaly.
pub fn tau_extension(
    n: usize,
    k: u32,
    mz: u32,
    m: &SurgeryPresentation,
) -> Result<TauResult, Error> {
    let table = coset::extension_orbits(n, k, mz)?;
    let reps: Vec<usize> =
        table.orbits.iter().map(|o| table.ambient.index_of(&o.rep)).collect();
    let nc = m.n_components();
    let (b_plus, b_minus) = m.signature_counts()?;
    let (sum, colorings) = match m {
        SurgeryPresentation::Chains(chains) => {
            let hopf = table.ambient.md.hopf_matrix();
            sum_over_colorings(&vec![reps.len(); nc], |colors| {
                let mut w = Complex::new(1.0, 0.0);
                for &c in colors {
                    w *= table.orbits[c].orbit_length as f64 / mz as f64;
                }
                let mut base = 0usize;
                for chain in chains {
                    let cc: Vec<usize> =
                        (0..chain.len()).map(|i| reps[colors[base + i]]).collect();
                    w *= chain_colored_invariant(&table.ambient.md, &hopf, chain, &cc);
                    base += chain.len();
                }
                Ok(w)
            })?
        }
        SurgeryPresentation::Link(link) => {
            if n != 2 {
                return Err(Error::Unsupported(
                    "braid-closure surgery in extensions is only evaluated for SU(2)".into(),
                ));
            }
            let mut cache: HashMap<Vec<u32>, Complex> = HashMap::new();
            sum_over_colorings(&vec![reps.len(); nc], |colors| {
                let mc: Vec<u32> =
                    colors.iter().map(|&c| table.orbits[c].rep.0[0] - 1).collect();
                let mut dims = 1.0f64;
                for &c in colors {
                    dims *= table.ambient.md.dims[reps[c]] * table.orbits[c].orbit_length as f64
                        / mz as f64;
                }
                let v = match cache.get(&mc) {
                    Some(&v) => v,
                    None => {
                        let v = colored_invariant_su2(link, &mc, k)?;
                        cache.insert(mc, v);
                        v
                    }
                };
                Ok(dims * v)
            })?
        }
    };
    let value =
        framing_anomaly(table.anomaly, b_plus, b_minus) * table.rank.powi(-(nc as i32)) * sum;
    Ok(TauResult { value, b_plus, b_minus, colorings })
}

/// Direct-formula evaluation of the extension invariant: the plain ambient
/// sum restricted to labels of n-ality `0 mod m`, with the ambient rank
/// prefactor `D_G^{-n}`.  Agrees with [`tau_extension`] and serves as an
/// independent code path.
pub fn tau_extension_direct(
    n: usize,
    k: u32,
    mz: u32,
    m: &SurgeryPresentation,
) -> Result<TauResult, Error> {
    if mz < 2 || n as u32 % mz != 0 {
        return Err(Error::Domain(format!("extension needs 2 <= m | N, got N = {n}, m = {mz}")));
    }
    let q = n as u32 / mz;
    let modulus = if n % 2 == 0 { 2 * mz } else { mz };
    if (k * q) % modulus != 0 {
        return Err(Error::Domain(format!(
            "level mismatch: Z_{mz} extension of SU({n}) level {k} needs kq = 0 mod {modulus}"
        )));
    }
    let ambient = affine::theory(n, k)?;
    let colors_pool: Vec<usize> = ambient
        .weights
        .iter()
        .enumerate()
        .filter(|(_, w)| w.nality(n) % mz == 0)
        .map(|(i, _)| i)
        .collect();
    let nc = m.n_components();
    let (b_plus, b_minus) = m.signature_counts()?;
    let (sum, colorings) = match m {
        SurgeryPresentation::Chains(chains) => {
            let hopf = ambient.md.hopf_matrix();
            sum_over_colorings(&vec![colors_pool.len(); nc], |colors| {
                let mut w = Complex::new(1.0, 0.0);
                let mut base = 0usize;
                for chain in chains {
                    let cc: Vec<usize> =
                        (0..chain.len()).map(|i| colors_pool[colors[base + i]]).collect();
                    w *= chain_colored_invariant(&ambient.md, &hopf, chain, &cc);
                    base += chain.len();
                }
                Ok(w)
            })?
        }
        SurgeryPresentation::Link(link) => {
            if n != 2 {
                return Err(Error::Unsupported(
                    "braid-closure surgery in extensions is only evaluated for SU(2)".into(),
                ));
            }
            sum_over_colorings(&vec![colors_pool.len(); nc], |colors| {
                let mc: Vec<u32> = colors
                    .iter()
                    .map(|&c| ambient.weights[colors_pool[c]].0[0] - 1)
                    .collect();
                let dims: f64 =
                    colors.iter().map(|&c| ambient.md.dims[colors_pool[c]]).product();
                Ok(dims * colored_invariant_su2(link, &mc, k)?)
            })?
        }
    };
    let value = framing_anomaly(ambient.md.anomaly, b_plus, b_minus)
        * ambient.md.rank.powi(-(nc as i32))
        * sum;
    Ok(TauResult { value, b_plus, b_minus, colorings })
}

/// The restricted center-quotient invariant of `SU(m)` at level `n` (with
/// `gcd(m, n) = 1`): the ambient sum cut down to labels of n-ality `0 mod m`,
/// with rank `D / sqrt m`.  For `m = 2` this is the integer-spin (SO(3))
/// invariant, defined at every level even when no extended theory exists.
///
/// The framing anomaly is intrinsic to the restricted label set,
/// `kappa^3 = (sum over restricted labels of d^2 omega) / (D / sqrt m)`,
/// which is what makes the result invariant under stabilization; the
/// restricted Gauss sum has the required modulus exactly when the quotient
/// data is nondegenerate.
pub fn tau_psu_restricted(
    rank_m: usize,
    level: u32,
    m: &SurgeryPresentation,
) -> Result<TauResult, Error> {
    if gcd(rank_m as u64, level as u64) != 1 {
        return Err(Error::Domain(format!(
            "restricted invariant needs gcd(m, n) = 1, got m = {rank_m}, n = {level}"
        )));
    }
    let ambient = affine::theory(rank_m, level)?;
    let restricted: Vec<usize> = ambient
        .weights
        .iter()
        .enumerate()
        .filter(|(_, w)| w.nality(rank_m) % rank_m as u32 == 0)
        .map(|(i, _)| i)
        .collect();
    let nc = m.n_components();
    let (b_plus, b_minus) = m.signature_counts()?;
    let (sum, colorings) = match m {
        SurgeryPresentation::Chains(chains) => {
            let hopf = ambient.md.hopf_matrix();
            sum_over_colorings(&vec![restricted.len(); nc], |colors| {
                let mut w = Complex::new(1.0, 0.0);
                let mut base = 0usize;
                for chain in chains {
                    let cc: Vec<usize> =
                        (0..chain.len()).map(|i| restricted[colors[base + i]]).collect();
                    w *= chain_colored_invariant(&ambient.md, &hopf, chain, &cc);
                    base += chain.len();
                }
                Ok(w)
            })?
        }
        SurgeryPresentation::Link(link) => {
            if rank_m != 2 {
                return Err(Error::Unsupported(
                    "restricted braid-closure surgery is only evaluated for SU(2)".into(),
                ));
            }
            sum_over_colorings(&vec![restricted.len(); nc], |colors| {
                let mc: Vec<u32> = colors
                    .iter()
                    .map(|&c| ambient.weights[restricted[c]].0[0] - 1)
                    .collect();
                let dims: f64 =
                    colors.iter().map(|&c| ambient.md.dims[restricted[c]]).product();
                Ok(dims * colored_invariant_su2(link, &mc, level)?)
            })?
        }
    };
    let rank = ambient.md.rank / (rank_m as f64).sqrt();
    let mut gauss = Complex::new(0.0, 0.0);
    for &i in &restricted {
        gauss += ambient.md.dims[i] * ambient.md.dims[i] * ambient.md.twists[i];
    }
    let anomaly = gauss / rank;
    if (anomaly.norm() - 1.0).abs() > crate::modular::TOL_INTEGRALITY {
        return Err(Error::Degenerate(format!(
            "restricted Gauss sum has modulus {} instead of D / sqrt m",
            gauss.norm()
        )));
    }
    let value = framing_anomaly(anomaly, b_plus, b_minus) * rank.powi(-(nc as i32)) * sum;
    Ok(TauResult { value, b_plus, b_minus, colorings })
}

/// Greatest common divisor.
fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::BraidWord;

    fn lens(p: i64, q: i64) -> SurgeryPresentation {
        SurgeryPresentation::lens(p, q).unwrap()
    }

    #[test]
    fn sphere_is_one_everywhere() {
        let s3 = SurgeryPresentation::sphere();
        for spec in [
            TheorySpec::Su { n: 2, k: 3 },
            TheorySpec::U1 { k: 2 },
            TheorySpec::Parafermion { k: 2 },
            TheorySpec::Diagonal { n: 2, m1: 1, m2: 1 },
            TheorySpec::Extension { n: 2, k: 4, m: 2 },
            TheorySpec::Psu { m: 2, n: 3 },
        ] {
            let r = tau(&spec, &s3).unwrap();
            assert!((r.value - Complex::new(1.0, 0.0)).norm() < 1e-9, "{spec}");
        }
    }

    #[test]
    fn stabilization_by_split_unknots() {
        let base = SurgeryPresentation::chains(vec![vec![3, -2], vec![5]]);
        for spec in [
            TheorySpec::Su { n: 2, k: 2 },
            TheorySpec::Su { n: 3, k: 2 },
            TheorySpec::U1 { k: 3 },
            TheorySpec::Parafermion { k: 3 },
            TheorySpec::Diagonal { n: 2, m1: 1, m2: 1 },
            TheorySpec::Diagonal { n: 2, m1: 2, m2: 2 },
            TheorySpec::Extension { n: 2, k: 4, m: 2 },
            TheorySpec::Psu { m: 2, n: 3 },
        ] {
            let r0 = tau(&spec, &base).unwrap();
            for f in [1i64, -1] {
                let r1 = tau(&spec, &base.with_split_unknot(f)).unwrap();
                assert!(
                    (r0.value - r1.value).norm() < 1e-8,
                    "{spec} framing {f}: {} vs {}",
                    r0.value,
                    r1.value
                );
            }
        }
    }

    #[test]
    fn su2_level_one_kills_lens_two_one() {
        let r = tau(&TheorySpec::Su { n: 2, k: 1 }, &lens(2, 1)).unwrap();
        assert!(r.value.norm() < 1e-9);
    }

    #[test]
    fn lens_space_from_chain_and_braid_agree() {
        // L(3, 1) as a chain [3] and as the closure of an unknot braid with
        // framing 3 (trivial 1-strand braid).
        let chain = tau(&TheorySpec::Su { n: 2, k: 3 }, &lens(3, 1)).unwrap();
        let link = FramedLink::new(BraidWord::new(1, vec![]).unwrap(), vec![0], vec![3]).unwrap();
        let braid = tau(
            &TheorySpec::Su { n: 2, k: 3 },
            &SurgeryPresentation::Link(link),
        )
        .unwrap();
        assert!((chain.value - braid.value).norm() < 1e-9);
    }

    #[test]
    fn extension_two_paths_agree() {
        for chains in [vec![vec![2]], vec![vec![3, -2]], vec![vec![2], vec![-3]]] {
            let m = SurgeryPresentation::Chains(chains);
            let a = tau_extension(2, 4, 2, &m).unwrap();
            let b = tau_extension_direct(2, 4, 2, &m).unwrap();
            assert!((a.value - b.value).norm() < 1e-9, "{m:?}");
        }
    }

    #[test]
    fn diagonal_two_paths_agree() {
        for chains in [vec![vec![2]], vec![vec![3, 2]], vec![vec![-2], vec![4]]] {
            let m = SurgeryPresentation::Chains(chains);
            let a = tau_diagonal(2, 1, 1, &m).unwrap();
            let b = tau_diagonal_direct(2, 1, 1, &m).unwrap();
            assert!((a.value - b.value).norm() < 1e-9, "{m:?}");
        }
    }

    #[test]
    fn parafermion_level_two_matches_diagonal_ising() {
        for m in [lens(2, 1), lens(5, 1), SurgeryPresentation::chains(vec![vec![2, 3]])] {
            let a = tau(&TheorySpec::Parafermion { k: 2 }, &m).unwrap();
            let b = tau(&TheorySpec::Diagonal { n: 2, m1: 1, m2: 1 }, &m).unwrap();
            assert!((a.value - b.value).norm() < 1e-8, "{:?}", m.n_components());
        }
    }

    #[test]
    fn odd_level_parafermion_factorizes() {
        // tau_{G/H} = tau_restricted * conj(tau_even_sublattice) at odd level.
        let k = 3u32;
        for m in [lens(3, 1), lens(5, 2), SurgeryPresentation::chains(vec![vec![2], vec![3]])] {
            let whole = tau(&TheorySpec::Parafermion { k }, &m).unwrap();
            let so3 = tau(&TheorySpec::Psu { m: 2, n: k }, &m).unwrap();
            let lattice = u1::tau_even_sublattice(k, &m).unwrap();
            let product = so3.value * lattice.conj();
            assert!(
                (whole.value - product).norm() < 1e-8,
                "{} vs {}",
                whole.value,
                product
            );
        }
    }

    #[test]
    fn restricted_invariants_conjugate_under_level_rank() {
        for p in 1..=6i64 {
            let m = lens(p, 1);
            let a = tau(&TheorySpec::Psu { m: 3, n: 2 }, &m).unwrap();
            let b = tau(&TheorySpec::Psu { m: 2, n: 3 }, &m).unwrap();
            assert!(
                (a.value - b.value.conj()).norm() < 1e-9,
                "p = {p}: {} vs conj {}",
                a.value,
                b.value
            );
        }
    }

    #[test]
    fn u1_matches_generic_chain_sum() {
        let md = u1::theory(2).unwrap();
        for chains in [vec![vec![3]], vec![vec![2, -3]]] {
            let generic = tau_modular_chains(&md, &chains).unwrap();
            let closed = tau_u1(2, &SurgeryPresentation::Chains(chains.clone())).unwrap();
            assert!((generic.value - closed.value).norm() < 1e-9);
        }
    }
}
