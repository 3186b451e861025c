//! Block elimination of the non-boundary subsets of a four-block
//! partition, and the closed-form coefficient for graphs whose
//! inter-block connections are complete bipartite.
//!
//! Eliminating the interior blocks via
//! `V22~ = V22 - V12^T V11^{-1} V12` and `V33~ = V33 - V34 V44^{-1} V34^T`
//! leaves a two-block system `[[V22~, V23], [V23^T, V33~]]` with the same
//! Schmidt coefficients and entropy as the full matrix; the eliminated
//! coordinates factor into orthogonal Gaussians.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{four_block_of, Bipartition, FourBlockPartition, PotentialMatrix};
use crate::reduction::{
    schmidt_coefficients_of_blocks, submatrix, EntropyResult, LogBase, Method, SchmidtSpectrum,
};

/// The two-block system left after eliminating the interior blocks.
#[derive(Debug, Clone)]
pub struct ReducedSystem {
    v22_tilde: DMatrix<f64>,
    v33_tilde: DMatrix<f64>,
    v23: DMatrix<f64>,
    sizes: (usize, usize, usize, usize),
    g: f64,
}

impl ReducedSystem {
    pub fn v22_tilde(&self) -> &DMatrix<f64> {
        &self.v22_tilde
    }

    pub fn v33_tilde(&self) -> &DMatrix<f64> {
        &self.v33_tilde
    }

    pub fn v23(&self) -> &DMatrix<f64> {
        &self.v23
    }

    /// Block sizes `(m1, m2, n2, n1)` of the partition this came from.
    pub fn sizes(&self) -> (usize, usize, usize, usize) {
        self.sizes
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// Assemble `[[V22~, V23], [V23^T, V33~]]`.
    pub fn two_block_matrix(&self) -> DMatrix<f64> {
        let m2 = self.v22_tilde.nrows();
        let n2 = self.v33_tilde.nrows();
        let mut m = DMatrix::zeros(m2 + n2, m2 + n2);
        m.view_mut((0, 0), (m2, m2)).copy_from(&self.v22_tilde);
        m.view_mut((m2, m2), (n2, n2)).copy_from(&self.v33_tilde);
        m.view_mut((0, m2), (m2, n2)).copy_from(&self.v23);
        m.view_mut((m2, 0), (n2, m2))
            .copy_from(&self.v23.transpose());
        m
    }
}

/// Complement `big - cross^T inv(corner) cross` computed via a Cholesky
/// solve rather than an explicit inverse. An empty corner block leaves
/// `big` untouched.
fn eliminate(
    big: &DMatrix<f64>,
    corner: &DMatrix<f64>,
    cross: &DMatrix<f64>,
    context: &str,
) -> Result<DMatrix<f64>> {
    if corner.nrows() == 0 {
        return Ok(big.clone());
    }
    let chol = corner.clone().cholesky().ok_or_else(|| {
        Error::NotPositiveDefinite(format!("{context}: interior block has no Cholesky factor"))
    })?;
    let solved = chol.solve(cross);
    Ok(big - cross.transpose() * solved)
}

/// Eliminate the interior blocks `b1` and `b4` of a four-block partition.
pub fn schur_reduce(v: &PotentialMatrix, fb: &FourBlockPartition) -> Result<ReducedSystem> {
    let [b1, b2, b3, b4] = fb.blocks();
    let m = v.matrix();
    let v11 = submatrix(m, b1, b1);
    let v12 = submatrix(m, b1, b2);
    let v22 = submatrix(m, b2, b2);
    let v23 = submatrix(m, b2, b3);
    let v33 = submatrix(m, b3, b3);
    let v34t = submatrix(m, b4, b3);
    let v44 = submatrix(m, b4, b4);
    let v22_tilde = eliminate(&v22, &v11, &v12, "b1 elimination")?;
    let v33_tilde = eliminate(&v33, &v44, &v34t, "b4 elimination")?;
    Ok(ReducedSystem {
        v22_tilde,
        v33_tilde,
        v23,
        sizes: fb.sizes(),
        g: v.g(),
    })
}

/// Entropy via the reduced two-block system. Equals the direct pipeline;
/// the spectrum is padded with zeros up to `min(|A|, |B|)` modes.
pub fn entropy_via_schur(
    v: &PotentialMatrix,
    p: &Bipartition,
    base: LogBase,
) -> Result<EntropyResult> {
    if p.n() != v.n() {
        return Err(Error::InvalidPartition(format!(
            "partition is over {} nodes but the potential matrix has {}",
            p.n(),
            v.n()
        )));
    }
    let fb = four_block_of(v.graph(), p);
    let (m1, m2, n2, n1) = fb.sizes();
    let modes = (m1 + m2).min(n2 + n1);
    // No cut edges: the parts are uncoupled and the entropy vanishes.
    if m2 == 0 || n2 == 0 {
        let spectrum = SchmidtSpectrum::from_coefficients(vec![0.0; modes], base)?;
        return Ok(EntropyResult::new(spectrum, base, Method::Schur));
    }
    let reduced = schur_reduce(v, &fb)?;
    let (mut d, warnings) =
        schmidt_coefficients_of_blocks(reduced.v22_tilde(), reduced.v33_tilde(), reduced.v23())?;
    d.resize(modes, 0.0);
    let spectrum = SchmidtSpectrum::from_coefficients(d, base)?.with_warnings(warnings);
    Ok(EntropyResult::new(spectrum, base, Method::Schur))
}

/// Closed-form coefficient for a four-block graph whose three inter-block
/// connections are complete bipartite:
///
/// `d = 2g sqrt(m2 n2) / sqrt(f(m1, m2, n2) f(n1, n2, m2))` with
/// `f(k1, k2, j2) = 1 + 2g(k1 + j2) - 4g^2 k1 k2 / (1 + 2g k2)`.
///
/// Any intra-block edges leave the value unchanged: the interior blocks
/// have constant row sums, so the uniform vector stays an eigenvector and
/// the rank-one cut couples only the uniform directions.
pub fn theorem1_d(m1: usize, m2: usize, n2: usize, n1: usize, g: f64) -> Result<f64> {
    if m2 == 0 || n2 == 0 {
        return Err(Error::Domain(
            "boundary blocks m2 and n2 must be nonempty".into(),
        ));
    }
    if !g.is_finite() || g < 0.0 {
        return Err(Error::NegativeCoupling(g));
    }
    let (m1, m2, n2, n1) = (m1 as f64, m2 as f64, n2 as f64, n1 as f64);
    let left = 1.0 + 2.0 * g * (m1 + n2) - 4.0 * g * g * m1 * m2 / (1.0 + 2.0 * g * m2);
    let right = 1.0 + 2.0 * g * (m2 + n1) - 4.0 * g * g * n1 * n2 / (1.0 + 2.0 * g * n2);
    Ok(2.0 * g * (m2 * n2).sqrt() / (left.sqrt() * right.sqrt()))
}

/// Two-subset specialization (`m1 = n1 = 0`):
/// `d = 2g sqrt(mn) / sqrt((1+2gm)(1+2gn))`.
pub fn corollary1_d(m: usize, n: usize, g: f64) -> Result<f64> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("both parts must be nonempty".into()));
    }
    if !g.is_finite() || g < 0.0 {
        return Err(Error::NegativeCoupling(g));
    }
    let (m, n) = (m as f64, n as f64);
    Ok(2.0 * g * (m * n).sqrt() / ((1.0 + 2.0 * g * m) * (1.0 + 2.0 * g * n)).sqrt())
}
