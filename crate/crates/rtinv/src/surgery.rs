//! Surgery presentations of closed oriented 3-manifolds.
//!
//! Two presentation styles are supported: framed links given as braid
//! closures, and disjoint unions of "chains" (linear strings of unknots in
//! which consecutive components form positive Hopf links, the shape produced
//! by continued-fraction expansions of lens spaces).
//!
//! The signature counts `(b+, b-)` of the linking matrix are computed with
//! exact rational arithmetic: symmetric Gaussian elimination with 1x1 pivots
//! where a nonzero diagonal entry exists and hyperbolic 2x2 pivots when the
//! active diagonal vanishes.  No floating-point eigenvalues anywhere.

use crate::error::Error;
use crate::modular::{CMatrix, ModularData};
use crate::Complex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Maximum number of braid strands accepted by the parsers and engines.
pub const MAX_STRANDS: usize = 32;

/// A braid word on `strands` strands.  Letter `+i` (1-based) is the positive
/// crossing of strands at positions `i-1` and `i`; `-i` is its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    /// Number of strands, at least 1.
    pub strands: usize,
    /// Letters, each in `1..strands` up to sign.
    pub letters: Vec<i32>,
}

impl BraidWord {
    /// Validate strand count and letter range.
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, Error> {
        if strands == 0 || strands > MAX_STRANDS {
            return Err(Error::Domain(format!(
                "braid must have between 1 and {MAX_STRANDS} strands"
            )));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::Domain(format!(
                    "braid letter {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Cycles of the closure, each a sorted list of top strand positions.
    /// Cycles are ordered by their smallest position; each closure cycle is
    /// one component of the closed link.
    pub fn closure_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.strands;
        // strand_at[p] = index of the strand currently at position p.
        let mut strand_at: Vec<usize> = (0..n).collect();
        for &l in &self.letters {
            let t = l.unsigned_abs() as usize - 1;
            strand_at.swap(t, t + 1);
        }
        // Strand starting at top position p ends at the bottom position q
        // with strand_at[q] = p; closure joins bottom q to top q.
        let mut end_pos = vec![0usize; n];
        for (q, &p) in strand_at.iter().enumerate() {
            end_pos[p] = q;
        }
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = end_pos[p];
            }
            cycle.sort_unstable();
            cycles.push(cycle);
        }
        cycles
    }
}

/// A framed link presented as a braid closure with a labeling of the closure
/// cycles by component ids and one framing integer per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLink {
    /// The braid whose closure is the link.
    pub braid: BraidWord,
    /// `components[c]` is the component id of the c-th closure cycle (cycles
    /// in canonical order).  Must be a bijection onto `0..n`.
    pub components: Vec<usize>,
    /// Framing of each component, indexed by component id.
    pub framings: Vec<i64>,
}

impl FramedLink {
    /// Validate the cycle labeling against the braid.
    pub fn new(braid: BraidWord, components: Vec<usize>, framings: Vec<i64>) -> Result<Self, Error> {
        let cycles = braid.closure_cycles();
        if components.len() != cycles.len() {
            return Err(Error::Domain(format!(
                "braid closure has {} cycles but {} component labels were given",
                cycles.len(),
                components.len()
            )));
        }
        let n = components.len();
        let mut seen = vec![false; n];
        for &c in &components {
            if c >= n || seen[c] {
                return Err(Error::Domain(
                    "component labels must be a bijection onto 0..n".into(),
                ));
            }
            seen[c] = true;
        }
        if framings.len() != n {
            return Err(Error::Domain(format!(
                "expected {n} framings, got {}",
                framings.len()
            )));
        }
        Ok(FramedLink { braid, components, framings })
    }

    /// Link with blackboard conventions: one strand, no letters.
    pub fn unknot(framing: i64) -> Self {
        FramedLink {
            braid: BraidWord { strands: 1, letters: vec![] },
            components: vec![0],
            framings: vec![framing],
        }
    }

    /// Number of components.
    pub fn n_components(&self) -> usize {
        self.framings.len()
    }

    /// Component id of each top strand position.
    pub fn strand_component(&self) -> Vec<usize> {
        let cycles = self.braid.closure_cycles();
        let mut out = vec![0usize; self.braid.strands];
        for (c, cycle) in cycles.iter().enumerate() {
            for &p in cycle {
                out[p] = self.components[c];
            }
        }
        out
    }

    /// Signed crossing tallies: `(writhe, cross)` where `writhe[a]` is the
    /// signed number of self-crossings of component `a` in the braid diagram
    /// and `cross[a][b]` the signed number of crossings between distinct
    /// components (symmetrized).
    pub fn crossing_counts(&self) -> (Vec<i64>, Vec<Vec<i64>>) {
        let n = self.n_components();
        let comp_of_strand = self.strand_component();
        let mut strand_at: Vec<usize> = (0..self.braid.strands).collect();
        let mut writhe = vec![0i64; n];
        let mut cross = vec![vec![0i64; n]; n];
        for &l in &self.braid.letters {
            let t = l.unsigned_abs() as usize - 1;
            let sign = l.signum() as i64;
            let a = comp_of_strand[strand_at[t]];
            let b = comp_of_strand[strand_at[t + 1]];
            if a == b {
                writhe[a] += sign;
            } else {
                cross[a][b] += sign;
                cross[b][a] += sign;
            }
            strand_at.swap(t, t + 1);
        }
        (writhe, cross)
    }

    /// Self-writhe of each component in the braid diagram (the blackboard
    /// framing of the closure).
    pub fn self_writhe(&self) -> Vec<i64> {
        self.crossing_counts().0
    }

    /// Linking matrix: framings on the diagonal, linking numbers (half the
    /// signed inter-component crossing count) off the diagonal.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n_components();
        let (_, cross) = self.crossing_counts();
        let mut lk = vec![vec![0i64; n]; n];
        for a in 0..n {
            lk[a][a] = self.framings[a];
            for b in 0..n {
                if a != b {
                    debug_assert_eq!(cross[a][b] % 2, 0, "odd crossing tally between closed components");
                    lk[a][b] = cross[a][b] / 2;
                }
            }
        }
        lk
    }

    /// Mirror image with reversed framings; surgery on it yields the
    /// orientation-reversed manifold.
    pub fn mirror(&self) -> FramedLink {
        FramedLink {
            braid: BraidWord {
                strands: self.braid.strands,
                letters: self.braid.letters.iter().map(|l| -l).collect(),
            },
            components: self.components.clone(),
            framings: self.framings.iter().map(|f| -f).collect(),
        }
    }

    /// The same link with an extra split unknot of the given framing (a new
    /// straight strand on the right).
    pub fn with_split_unknot(&self, framing: i64) -> FramedLink {
        let mut components = self.components.clone();
        components.push(self.n_components());
        let mut framings = self.framings.clone();
        framings.push(framing);
        FramedLink {
            braid: BraidWord {
                strands: self.braid.strands + 1,
                letters: self.braid.letters.clone(),
            },
            components,
            framings,
        }
    }
}

/// A surgery presentation: either a braid-closure framed link or a disjoint
/// union of chains of unknots.  The empty union presents the 3-sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurgeryPresentation {
    /// Braid closure link.
    Link(FramedLink),
    /// Disjoint chains; each inner vector lists the framings along one
    /// chain, consecutive members of a chain are positively Hopf-linked.
    Chains(Vec<Vec<i64>>),
}

impl SurgeryPresentation {
    /// Convenience constructor for chain unions.
    pub fn chains(chains: Vec<Vec<i64>>) -> Self {
        SurgeryPresentation::Chains(chains)
    }

    /// The 3-sphere as the empty surgery.
    pub fn sphere() -> Self {
        SurgeryPresentation::Chains(vec![])
    }

    /// The lens space `L(p, q)` as a single chain, via the negative
    /// continued fraction of `p/q` with all coefficients at least 2.
    /// `L(1, q)` is the 3-sphere (empty chain).
    pub fn lens(p: i64, q: i64) -> Result<Self, Error> {
        Ok(SurgeryPresentation::Chains(match lens_to_chain(p, q)? {
            chain if chain.is_empty() => vec![],
            chain => vec![chain],
        }))
    }

    /// Number of link components.
    pub fn n_components(&self) -> usize {
        match self {
            SurgeryPresentation::Link(l) => l.n_components(),
            SurgeryPresentation::Chains(cs) => cs.iter().map(|c| c.len()).sum(),
        }
    }

    /// Linking matrix of the presentation.
    pub fn linking_matrix(&self) -> Result<Vec<Vec<i64>>, Error> {
        match self {
            SurgeryPresentation::Link(l) => Ok(l.linking_matrix()),
            SurgeryPresentation::Chains(cs) => {
                let n = self.n_components();
                let mut lk = vec![vec![0i64; n]; n];
                let mut base = 0usize;
                for chain in cs {
                    for (i, &f) in chain.iter().enumerate() {
                        lk[base + i][base + i] = f;
                        if i + 1 < chain.len() {
                            lk[base + i][base + i + 1] = 1;
                            lk[base + i + 1][base + i] = 1;
                        }
                    }
                    base += chain.len();
                }
                Ok(lk)
            }
        }
    }

    /// Signature counts `(b+, b-)` of the linking matrix.
    pub fn signature_counts(&self) -> Result<(usize, usize), Error> {
        Ok(signature_counts(&self.linking_matrix()?))
    }

    /// Append a split unknot with the given framing (used by stabilization
    /// checks: surgery on it is a connected sum with S^3).
    pub fn with_split_unknot(&self, framing: i64) -> SurgeryPresentation {
        match self {
            SurgeryPresentation::Link(l) => SurgeryPresentation::Link(l.with_split_unknot(framing)),
            SurgeryPresentation::Chains(cs) => {
                let mut cs = cs.clone();
                cs.push(vec![framing]);
                SurgeryPresentation::Chains(cs)
            }
        }
    }
}

/// Signature counts of a symmetric integer matrix by exact congruence
/// reduction (Sylvester's law of inertia).
pub fn signature_counts(mat: &[Vec<i64>]) -> (usize, usize) {
    let n = mat.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from(BigInt::from(mat[i][j]))).collect())
        .collect();
    for i in 0..n {
        for j in 0..n {
            assert_eq!(mat[i][j], mat[j][i], "linking matrix must be symmetric");
        }
    }
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0usize, 0usize);
    while !active.is_empty() {
        if let Some(idx) = active.iter().position(|&i| !m[i][i].is_zero()) {
            let p = active.remove(idx);
            let d = m[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &r in &active {
                if m[r][p].is_zero() {
                    continue;
                }
                let f = &m[r][p] / &d;
                for &c in &active {
                    let delta = &f * &m[p][c];
                    m[r][c] = &m[r][c] - delta;
                }
            }
        } else {
            // Zero diagonal on the active block: find an off-diagonal entry;
            // if none, the rest of the form is zero.
            let mut pair = None;
            'outer: for (ai, &p) in active.iter().enumerate() {
                for &q in &active[ai + 1..] {
                    if !m[p][q].is_zero() {
                        pair = Some((p, q));
                        break 'outer;
                    }
                }
            }
            let Some((p, q)) = pair else { break };
            // Hyperbolic block [[0, a], [a, 0]] contributes one of each sign.
            pos += 1;
            neg += 1;
            active.retain(|&i| i != p && i != q);
            let a = m[p][q].clone();
            for &r in &active {
                let u = m[r][p].clone();
                let v = m[r][q].clone();
                if u.is_zero() && v.is_zero() {
                    continue;
                }
                for &c in &active {
                    let delta = (&u * &m[q][c] + &v * &m[p][c]) / &a;
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
    }
    (pos, neg)
}

/// Negative continued fraction expansion of `L(p, q)`:
/// `p/q = a_1 - 1/(a_2 - 1/(... - 1/a_t))` with every `a_i >= 2`.
/// Requires `p >= 1` and `1 <= q < p` coprime to `p`, except `L(1, q)` which
/// yields the empty chain (the 3-sphere).
pub fn lens_to_chain(p: i64, q: i64) -> Result<Vec<i64>, Error> {
    if p < 1 {
        return Err(Error::Domain(format!("lens space needs p >= 1, got {p}")));
    }
    if p == 1 {
        return Ok(vec![]);
    }
    if q < 1 || q >= p {
        return Err(Error::Domain(format!("lens space needs 1 <= q < p, got q = {q}")));
    }
    if gcd(p, q) != 1 {
        return Err(Error::Domain(format!("lens space needs gcd(p, q) = 1, got ({p}, {q})")));
    }
    let (mut p, mut q) = (p, q);
    let mut chain = Vec::new();
    loop {
        // a = ceil(p / q) >= 2 because q < p.
        let a = (p + q - 1) / q;
        chain.push(a);
        let next_q = a * q - p;
        if next_q == 0 {
            return Ok(chain);
        }
        p = q;
        q = next_q;
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Closed-form surgery weight of one colored chain: the product of the
/// quantum dimensions with the colored bracket of the chain,
///
/// `prod_i d(c_i) * [ prod_i omega(c_i)^{a_i} * prod_i H[c_i, c_{i+1}]
///   * prod_{interior} d(c_i)^{-1} ]`,
///
/// where the bracket of an adjacent pair is the Hopf entry and interior
/// closures are divided out.  The dimensions and interior divisions cancel
/// except at the two ends, so only the end dimensions are multiplied in.
///
/// `hopf` must be the matrix from `ModularData::hopf_matrix`, passed in so
/// callers can compute it once per coloring sum.
pub fn chain_colored_invariant(
    md: &ModularData,
    hopf: &CMatrix,
    framings: &[i64],
    colors: &[usize],
) -> Complex {
    assert_eq!(framings.len(), colors.len());
    let n = colors.len();
    let mut value = Complex::new(1.0, 0.0);
    for (i, &c) in colors.iter().enumerate() {
        value *= md.twists[c].powi(framings[i] as i32);
        if i + 1 < n {
            value *= hopf[(c, colors[i + 1])];
        }
        if i == 0 {
            value *= md.dims[c];
        }
        if i + 1 == n {
            value *= md.dims[c];
        }
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_cycles_of_simple_braids() {
        // Identity braid on 3 strands: three cycles.
        let b = BraidWord::new(3, vec![]).unwrap();
        assert_eq!(b.closure_cycles(), vec![vec![0], vec![1], vec![2]]);
        // Trefoil braid: single component.
        let b = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        assert_eq!(b.closure_cycles(), vec![vec![0, 1]]);
        // Hopf braid: two components.
        let b = BraidWord::new(2, vec![1, 1]).unwrap();
        assert_eq!(b.closure_cycles().len(), 2);
        // Figure-eight braid: single component.
        let b = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap();
        assert_eq!(b.closure_cycles().len(), 1);
    }

    #[test]
    fn hopf_linking_matrix() {
        let link = FramedLink::new(
            BraidWord::new(2, vec![1, 1]).unwrap(),
            vec![0, 1],
            vec![3, -2],
        )
        .unwrap();
        assert_eq!(link.linking_matrix(), vec![vec![3, 1], vec![1, -2]]);
        assert_eq!(link.self_writhe(), vec![0, 0]);
        // Trefoil: all three crossings are self-crossings.
        let tre = FramedLink::new(BraidWord::new(2, vec![1, 1, 1]).unwrap(), vec![0], vec![0]).unwrap();
        assert_eq!(tre.self_writhe(), vec![3]);
        assert_eq!(tre.linking_matrix(), vec![vec![0]]);
    }

    #[test]
    fn signature_count_examples() {
        // [[1, 1], [1, 0]] has eigenvalues of both signs.
        assert_eq!(signature_counts(&[vec![1, 1], vec![1, 0]]), (1, 1));
        // Zero-diagonal hyperbolic pair.
        assert_eq!(signature_counts(&[vec![0, 5], vec![5, 0]]), (1, 1));
        assert_eq!(signature_counts(&[vec![2]]), (1, 0));
        assert_eq!(signature_counts(&[vec![0]]), (0, 0));
        // Chain of length 3 with framings (2, 2, 2) is positive definite.
        assert_eq!(
            signature_counts(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]),
            (3, 0)
        );
    }

    #[test]
    fn lens_space_chains() {
        assert_eq!(lens_to_chain(1, 1).unwrap(), Vec::<i64>::new());
        assert_eq!(lens_to_chain(5, 1).unwrap(), vec![5]);
        assert_eq!(lens_to_chain(5, 3).unwrap(), vec![2, 3]);
        assert_eq!(lens_to_chain(7, 2).unwrap(), vec![4, 2]);
        assert!(lens_to_chain(4, 2).is_err());
        // The chain's tridiagonal matrix has determinant +- p.
        for (p, q) in [(5i64, 2i64), (7, 3), (8, 3), (9, 4), (11, 5)] {
            let chain = lens_to_chain(p, q).unwrap();
            let (bp, bm) = SurgeryPresentation::chains(vec![chain.clone()])
                .signature_counts()
                .unwrap();
            assert_eq!(bp + bm, chain.len(), "L({p},{q}) linking form degenerate");
            // All coefficients at least 2.
            assert!(chain.iter().all(|&a| a >= 2));
        }
    }

    #[test]
    fn split_unknot_extends_linking_matrix() {
        let m = SurgeryPresentation::lens(5, 2).unwrap().with_split_unknot(1);
        let lk = m.linking_matrix().unwrap();
        assert_eq!(lk.len(), 3);
        assert_eq!(lk[2], vec![0, 0, 1]);
        assert_eq!(lk[0][1], 1);
        assert_eq!(lk[0][2], 0);
    }
}
