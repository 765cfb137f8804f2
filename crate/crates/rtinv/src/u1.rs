//! Rank-one lattice theories: `U(1)` at even level `2k`.
//!
//! Labels are residues `alpha = 0, ..., 2k-1` with group-like fusion
//! (addition mod `2k`), unit quantum dimensions and twists
//! `omega(alpha) = exp(2 pi i alpha^2 / 4k)`.
//!
//! The S matrix is not postulated: it is derived from the genus-0 data as
//! `S = Y / |D_-|` with `Y[a,b] = omega(a) omega(b) / omega(a+b)`, and the
//! builder then checks that the result is unitary (the theory would be
//! degenerate otherwise).  This keeps the lattice family on the same
//! footing as the others: only dimensions, twists and fusion go in.

use crate::error::Error;
use crate::modular::{CMatrix, ModularData};
use crate::surgery::SurgeryPresentation;
use crate::Complex;
use std::f64::consts::PI;

/// Twist of label `alpha`: `exp(2 pi i alpha^2 / 4k)`.
pub fn twist(k: u32, alpha: i64) -> Complex {
    let m = 4 * k as i64;
    let e = (alpha * alpha).rem_euclid(m);
    Complex::from_polar(1.0, 2.0 * PI * e as f64 / m as f64)
}

/// Build the `U(1)` theory at level `2k` (so `2k` labels).
pub fn theory(k: u32) -> Result<ModularData, Error> {
    if k < 1 {
        return Err(Error::Domain("u1 requires k >= 1".into()));
    }
    if k > 512 {
        return Err(Error::CapacityExceeded("u1 level cap is 2k = 1024".into()));
    }
    let n = (2 * k) as usize;
    let twists: Vec<Complex> = (0..n as i64).map(|a| twist(k, a)).collect();
    // Y[a,b] = omega(a) omega(b) / omega(a+b) = exp(-pi i a b / k), and
    // |D_-| = sqrt(2k), so S[a,b] = exp(-pi i a b / k) / sqrt(2k).
    let mut d_minus = Complex::new(0.0, 0.0);
    for w in &twists {
        d_minus += Complex::new(1.0, 0.0) / w;
    }
    let scale = 1.0 / d_minus.norm();
    let mut s = CMatrix::zeros(n);
    for a in 0..n {
        for b in 0..n {
            let y = twists[a] * twists[b] / twists[(a + b) % n];
            s[(a, b)] = y * scale;
        }
    }
    let labels: Vec<String> = (0..n).map(|a| a.to_string()).collect();
    ModularData::from_s_and_twists(format!("u1:k={k}"), labels, s, twists, 1.0)
}

/// Colored link invariant in the lattice theory.  It only depends on the
/// linking matrix: `L(alpha_1, ..., alpha_n) = exp((2 pi i / 4k) a^T L a)`.
pub fn link_invariant(k: u32, linking: &[Vec<i64>], alphas: &[i64]) -> Complex {
    let n = alphas.len();
    assert_eq!(linking.len(), n);
    let mut quad = 0i64;
    for i in 0..n {
        for j in 0..n {
            quad += alphas[i] * linking[i][j] * alphas[j];
        }
    }
    let m = 4 * k as i64;
    Complex::from_polar(1.0, 2.0 * PI * quad.rem_euclid(m) as f64 / m as f64)
}

/// Quadratic Gauss sum `G(n1, m) = sum_{a=0}^{m-1} exp(2 pi i n1 a^2 / m)`
/// by direct summation.
pub fn gauss_sum(n1: i64, m: u32) -> Complex {
    let mut acc = Complex::new(0.0, 0.0);
    let m64 = m as i64;
    for a in 0..m64 {
        let e = (n1 * a * a).rem_euclid(m64);
        acc += Complex::from_polar(1.0, 2.0 * PI * e as f64 / m64 as f64);
    }
    acc
}

/// The even-sublattice invariant `tau_{U(1)/Z2}` at level `2k`:
///
/// `2^{n/2} kappa^{3(b- - b+)} (2k)^{-n/2} sum_{alpha even} exp((2 pi i / 4k) a^T L a)`
///
/// with `kappa^3 = G(1, k) / sqrt k` the normalized even-residue Gauss sum,
/// the framing anomaly intrinsic to the even sublattice.  For odd `k` the
/// Gauss sum has modulus `sqrt k` and this is a genuine invariant; for even
/// `k` it does not and the evaluation is refused.  Note the positive
/// exponent in the sum; the combination that factors the odd parafermion
/// invariant is the complex conjugate of this.
pub fn tau_even_sublattice(k: u32, m: &SurgeryPresentation) -> Result<Complex, Error> {
    let linking = m.linking_matrix()?;
    let n = linking.len();
    let (b_plus, b_minus) = m.signature_counts()?;
    let gauss = gauss_sum(1, k);
    if (gauss.norm() - (k as f64).sqrt()).abs() > 1e-6 {
        return Err(Error::Degenerate(format!(
            "even-sublattice Gauss sum degenerates at level 2k = {}",
            2 * k
        )));
    }
    let anomaly = gauss / gauss.norm();
    let prefactor = (2.0f64).powi(n as i32 / 2) * (2.0f64).sqrt().powi((n % 2) as i32)
        / (2.0 * k as f64).powi(n as i32).sqrt()
        * anomaly.powi(b_minus as i32 - b_plus as i32);
    let mut total = Complex::new(0.0, 0.0);
    let mut alphas = vec![0i64; n];
    loop {
        total += link_invariant(k, &linking, &alphas);
        // Odometer over even residues 0, 2, ..., 2k-2 per component.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(prefactor * total);
            }
            pos -= 1;
            alphas[pos] += 2;
            if alphas[pos] < 2 * k as i64 {
                break;
            }
            alphas[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_hold() {
        for k in [1u32, 2, 3, 4, 8] {
            let md = theory(k).unwrap();
            assert_eq!(md.len(), 2 * k as usize);
            assert!((md.rank - (2.0 * k as f64).sqrt()).abs() < 1e-9);
            for c in md.axiom_checks() {
                assert!(c.pass(), "u1 k={k}: {} deviates {:.3e}", c.name, c.deviation);
            }
            // Fusion is addition mod 2k.
            let n = md.len();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let expect = if (a + b) % n == c { 1 } else { 0 };
                        assert_eq!(md.fusion.get(a, b, c), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn anomaly_is_eighth_root() {
        // c = 1 for every lattice theory, so kappa^3 = exp(pi i / 4).
        let md = theory(3).unwrap();
        assert!((md.anomaly - Complex::from_polar(1.0, PI / 4.0)).norm() < 1e-12);
        let (plus, _) = md.d_plus_minus();
        assert!((plus / md.rank - md.anomaly).norm() < 1e-9);
    }

    #[test]
    fn known_gauss_sums() {
        // G(1, 4) = 2 + 2i.
        let g = gauss_sum(1, 4);
        assert!((g - Complex::new(2.0, 2.0)).norm() < 1e-9);
        // G(1, m) for m = 0 mod 4 is (1 + i) sqrt(m).
        for m in [4u32, 8, 12, 20] {
            let expect = Complex::new(1.0, 1.0) * (m as f64).sqrt();
            assert!((gauss_sum(1, m) - expect).norm() < 1e-9, "m = {m}");
        }
    }

    #[test]
    fn hopf_link_value() {
        // Zero-framed Hopf link, k = 1, colors (1, 1): exp(2 pi i * 2 / 4) = -1.
        let linking = vec![vec![0, 1], vec![1, 0]];
        let v = link_invariant(1, &linking, &[1, 1]);
        assert!((v - Complex::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn even_sublattice_unknot() {
        // Zero-framed unknot at k = 3: sum over alpha in {0, 2, 4} of 1,
        // times sqrt(2)/sqrt(6), gives sqrt(3).
        let m = SurgeryPresentation::chains(vec![vec![0]]);
        let v = tau_even_sublattice(3, &m).unwrap();
        assert!((v - Complex::new(3f64.sqrt(), 0.0)).norm() < 1e-9);
    }
}
