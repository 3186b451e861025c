//! Schmidt coefficients and bipartite entanglement entropy of the
//! network ground state.
//!
//! The direct pipeline whitens the two diagonal blocks of the potential
//! matrix and reads the coefficients `d_i` off a singular value
//! decomposition of the rescaled cross block. Each coefficient maps to a
//! single-mode spectral parameter `nu = 1/sqrt(1 - d^2)` whose entropy is
//! `S(nu) = ((nu+1)/2) log((nu+1)/2) - ((nu-1)/2) log((nu-1)/2)`.
//!
//! An independent oracle computes the same entropy from the state's
//! covariance blocks `gamma_x = V^{-1}/2`, `gamma_p = V/2` and the
//! symplectic eigenvalues of their restriction to one part (`nu = 2 mu`).

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Bipartition, PotentialMatrix};

/// Coefficients below this are treated as exactly zero (their modes are in
/// a product state and contribute no entropy).
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// Singular values in `[1, 1 + CLAMP_BAND]` are attributed to roundoff and
/// clamped just below 1; anything larger is a hard numerical error.
const CLAMP_BAND: f64 = 1e-9;
const CLAMP_TARGET: f64 = 1.0 - 1e-12;

/// Eigenvalues of a nominally positive definite matrix below this floor
/// are rejected.
const PD_FLOOR: f64 = 1e-12;

/// Logarithm base for entropies. Natural log is the default; every
/// ordering in the library is base-independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    #[serde(rename = "e")]
    Natural,
    #[serde(rename = "2")]
    Two,
}

impl LogBase {
    pub fn log(&self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Two => x.log2(),
        }
    }
}

impl std::fmt::Display for LogBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LogBase::Natural => write!(f, "e"),
            LogBase::Two => write!(f, "2"),
        }
    }
}

/// Which route produced an [`EntropyResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Schur,
    ClosedForm,
    Oracle,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Direct => write!(f, "direct"),
            Method::Schur => write!(f, "schur"),
            Method::ClosedForm => write!(f, "closed_form"),
            Method::Oracle => write!(f, "oracle"),
        }
    }
}

/// Per-mode Schmidt data: coefficients `d_i` sorted descending, derived
/// `nu_i`, and single-mode entropies in a fixed log base.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchmidtSpectrum {
    d: Vec<f64>,
    nu: Vec<f64>,
    mode_entropy: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    warnings: Vec<String>,
}

impl SchmidtSpectrum {
    /// Build a spectrum from clamped coefficients. Values below
    /// [`ZERO_THRESHOLD`] are flushed to exactly zero; the rest must lie
    /// in `[0, 1)`.
    pub fn from_coefficients(mut d: Vec<f64>, base: LogBase) -> Result<Self> {
        d.sort_by(|a, b| b.total_cmp(a));
        let mut nu = Vec::with_capacity(d.len());
        let mut mode_entropy = Vec::with_capacity(d.len());
        for di in &mut d {
            if *di < ZERO_THRESHOLD {
                *di = 0.0;
            }
            nu.push(nu_from_d(*di)?);
            mode_entropy.push(entropy_from_d(*di, base)?);
        }
        Ok(SchmidtSpectrum {
            d,
            nu,
            mode_entropy,
            warnings: Vec::new(),
        })
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    pub fn nu(&self) -> &[f64] {
        &self.nu
    }

    pub fn mode_entropy(&self) -> &[f64] {
        &self.mode_entropy
    }

    /// Number of nonzero coefficients (the Schmidt rank of the cut).
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|&&x| x > 0.0).count()
    }

    pub fn total(&self) -> f64 {
        self.mode_entropy.iter().sum()
    }

    /// Largest coefficient, 0 for an empty spectrum.
    pub fn d_max(&self) -> f64 {
        self.d.first().copied().unwrap_or(0.0)
    }

    pub fn nu_max(&self) -> f64 {
        self.nu.first().copied().unwrap_or(1.0)
    }

    /// Messages produced by roundoff clamping, if any.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub(crate) fn with_warnings(mut self, warnings: Vec<String>) -> Self {
        self.warnings = warnings;
        self
    }
}

/// Total bipartite entanglement entropy together with its per-mode
/// spectrum, log base, and producing method.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntropyResult {
    pub total: f64,
    pub spectrum: SchmidtSpectrum,
    pub log_base: LogBase,
    pub method: Method,
}

impl EntropyResult {
    pub fn new(spectrum: SchmidtSpectrum, log_base: LogBase, method: Method) -> Self {
        EntropyResult {
            total: spectrum.total(),
            spectrum,
            log_base,
            method,
        }
    }

    /// Result with a single nonzero coefficient, zero-padded to `modes`
    /// entries so it lines up with pipeline spectra.
    pub fn from_single_coefficient(
        d: f64,
        modes: usize,
        log_base: LogBase,
        method: Method,
    ) -> Result<Self> {
        let mut coeffs = vec![0.0; modes.max(1)];
        coeffs[0] = d;
        let (coeffs, warnings) = clamp_coefficients(coeffs)?;
        let spectrum =
            SchmidtSpectrum::from_coefficients(coeffs, log_base)?.with_warnings(warnings);
        Ok(EntropyResult::new(spectrum, log_base, method))
    }
}

/// `nu = (1/(1 - d^2))^(1/2)` for `0 <= d < 1`.
pub fn nu_from_d(d: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&d) {
        return Err(Error::Domain(format!(
            "Schmidt coefficient must lie in [0, 1), got {d}"
        )));
    }
    Ok((1.0 / (1.0 - d * d)).sqrt())
}

/// Single-mode entropy as a function of `nu >= 1`:
/// `((nu+1)/2) log((nu+1)/2) - ((nu-1)/2) log((nu-1)/2)`,
/// with the continuous limit 0 at `nu = 1`.
pub fn entropy_from_nu(nu: f64, base: LogBase) -> f64 {
    let plus = (nu + 1.0) / 2.0;
    let minus = (nu - 1.0) / 2.0;
    let lo = if minus > 0.0 {
        minus * base.log(minus)
    } else {
        0.0
    };
    plus * base.log(plus) - lo
}

/// Single-mode entropy as a function of the Schmidt coefficient `d`.
/// Errors for `d` outside `[0, 1)` (the entropy diverges as `d -> 1`).
pub fn entropy_from_d(d: f64, base: LogBase) -> Result<f64> {
    if d == 0.0 {
        return Ok(0.0);
    }
    Ok(entropy_from_nu(nu_from_d(d)?, base))
}

/// Occupation probabilities of one mode's reduced state:
/// `p_k = (2/(nu+1)) ((nu-1)/(nu+1))^k` for `k = 0..=n_max`.
pub fn schmidt_probabilities(d: f64, n_max: usize) -> Result<Vec<f64>> {
    let nu = nu_from_d(d)?;
    let head = 2.0 / (nu + 1.0);
    let ratio = (nu - 1.0) / (nu + 1.0);
    let mut p = Vec::with_capacity(n_max + 1);
    let mut term = head;
    for _ in 0..=n_max {
        p.push(term);
        term *= ratio;
    }
    Ok(p)
}

/// Symmetric eigendecomposition; returns `(eigenvalues, eigenvectors)`
/// with eigenvectors as columns.
pub(crate) fn sym_eigen(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let se = m.clone().symmetric_eigen();
    (se.eigenvalues, se.eigenvectors)
}

/// Eigendecompose a nominally positive definite matrix, rejecting
/// eigenvalues at or below the floor.
fn pd_eigen(m: &DMatrix<f64>, context: &str) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let (vals, vecs) = sym_eigen(m);
    if let Some(bad) = vals.iter().find(|&&l| l <= PD_FLOOR) {
        return Err(Error::NotPositiveDefinite(format!(
            "{context}: eigenvalue {bad} at or below {PD_FLOOR}"
        )));
    }
    Ok((vals, vecs))
}

/// `f(M)` for symmetric positive definite `M` via eigendecomposition.
fn pd_matrix_function(
    m: &DMatrix<f64>,
    context: &str,
    f: impl Fn(f64) -> f64,
) -> Result<DMatrix<f64>> {
    let (vals, vecs) = pd_eigen(m, context)?;
    let scaled = DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| vecs[(i, j)] * f(vals[j]));
    Ok(scaled * vecs.transpose())
}

pub(crate) fn submatrix(m: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

/// Clamp raw singular values per the roundoff policy: values in
/// `[1, 1 + CLAMP_BAND]` are pulled to just below 1 (with a warning),
/// larger ones are hard errors.
pub(crate) fn clamp_coefficients(raw: Vec<f64>) -> Result<(Vec<f64>, Vec<String>)> {
    let mut warnings = Vec::new();
    let mut out = Vec::with_capacity(raw.len());
    for s in raw {
        if s >= 1.0 {
            if s <= 1.0 + CLAMP_BAND {
                warnings.push(format!(
                    "singular value {s} clamped to {CLAMP_TARGET} (roundoff above 1)"
                ));
                out.push(CLAMP_TARGET);
            } else {
                return Err(Error::Numerical(format!(
                    "singular value {s} exceeds 1 beyond the roundoff band; \
                     potential matrix is not positive definite or the \
                     decomposition broke down"
                )));
            }
        } else {
            out.push(s);
        }
    }
    Ok((out, warnings))
}

/// Schmidt coefficients of a two-block quadratic form
/// `[[a, b], [b^T, c]]`: whiten `a` and `c`, then take the singular
/// values of the rescaled cross block, sorted descending.
///
/// Whitening is done against the Cholesky factors,
/// `b_tilde = L_A^{-1} B L_C^{-T}`, which differs from the
/// eigendecomposition-based `D_A^{-1/2} O_A^T B O_C D_C^{-1/2}` only by
/// orthogonal factors on each side and so has identical singular values,
/// at better accuracy.
pub(crate) fn schmidt_coefficients_of_blocks(
    a: &DMatrix<f64>,
    c: &DMatrix<f64>,
    b: &DMatrix<f64>,
) -> Result<(Vec<f64>, Vec<String>)> {
    let chol_a = a
        .clone()
        .cholesky()
        .ok_or_else(|| Error::NotPositiveDefinite("block A has no Cholesky factor".into()))?;
    let chol_c = c
        .clone()
        .cholesky()
        .ok_or_else(|| Error::NotPositiveDefinite("block C has no Cholesky factor".into()))?;
    let x = chol_a
        .l()
        .solve_lower_triangular(b)
        .ok_or_else(|| Error::Numerical("singular Cholesky factor of block A".into()))?;
    let y = chol_c
        .l()
        .solve_lower_triangular(&x.transpose())
        .ok_or_else(|| Error::Numerical("singular Cholesky factor of block C".into()))?;
    let bt = y.transpose();
    let svd = bt
        .try_svd(false, false, f64::EPSILON, 100_000)
        .ok_or_else(|| Error::Numerical("SVD of the whitened cross block did not converge".into()))?;
    let mut svals: Vec<f64> = svd.singular_values.iter().copied().collect();
    svals.sort_by(|x, y| y.total_cmp(x));
    clamp_coefficients(svals)
}

/// Stage 1-3 reduction on the full potential matrix: partition into
/// blocks over `(part_a, part_b)`, whiten, and read the Schmidt
/// coefficients off the cross block. Mode entropies are in natural log.
pub fn schmidt_spectrum_direct(v: &PotentialMatrix, p: &Bipartition) -> Result<SchmidtSpectrum> {
    schmidt_spectrum_direct_in(v, p, LogBase::Natural)
}

/// [`schmidt_spectrum_direct`] with an explicit log base for the
/// per-mode entropies.
pub fn schmidt_spectrum_direct_in(
    v: &PotentialMatrix,
    p: &Bipartition,
    base: LogBase,
) -> Result<SchmidtSpectrum> {
    if p.n() != v.n() {
        return Err(Error::InvalidPartition(format!(
            "partition is over {} nodes but the potential matrix has {}",
            p.n(),
            v.n()
        )));
    }
    let rows = p.part_a();
    let cols = p.part_b();
    let a = submatrix(v.matrix(), rows, rows);
    let c = submatrix(v.matrix(), &cols, &cols);
    let b = submatrix(v.matrix(), rows, &cols);
    let (d, warnings) = schmidt_coefficients_of_blocks(&a, &c, &b)?;
    Ok(SchmidtSpectrum::from_coefficients(d, base)?.with_warnings(warnings))
}

/// Total entanglement entropy via the direct pipeline.
pub fn entropy(v: &PotentialMatrix, p: &Bipartition, base: LogBase) -> Result<EntropyResult> {
    let spectrum = schmidt_spectrum_direct_in(v, p, base)?;
    Ok(EntropyResult::new(spectrum, base, Method::Direct))
}

/// Independent covariance-matrix oracle.
///
/// The network state is the Gaussian `psi(x) ~ exp(-x^T V x / 2)`, whose
/// covariances are `gamma_x = V^{-1}/2` and `gamma_p = V/2`. Restricting
/// both to part A and taking the symplectic eigenvalues
/// `mu_k = sqrt(eig(gamma_x^A gamma_p^A))` gives the entropy
/// `sum_k (mu+1/2)log(mu+1/2) - (mu-1/2)log(mu-1/2)`, identical to
/// `S(nu)` under `nu = 2 mu`. This path shares no code with the SVD
/// pipeline beyond the eigensolver.
pub fn entropy_oracle(
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
    let mus = symplectic_eigenvalues(v.matrix(), p.part_a())?;
    // nu = 2 mu; mu is clamped to >= 1/2 so the d map stays in range.
    let mut d = Vec::with_capacity(mus.len());
    for mu in &mus {
        let nu = 2.0 * mu;
        d.push((1.0 - 1.0 / (nu * nu)).max(0.0).sqrt());
    }
    // One symplectic mode per part-A node; only min(|A|, |B|) of them
    // can be correlated, the rest sit at the vacuum floor. Trim so the
    // spectrum length matches the pipeline's.
    d.truncate(p.part_a().len().min(p.n() - p.part_a().len()));
    let (d, warnings) = clamp_coefficients(d)?;
    let spectrum = SchmidtSpectrum::from_coefficients(d, base)?.with_warnings(warnings);
    Ok(EntropyResult::new(spectrum, base, Method::Oracle))
}

/// Symplectic eigenvalues of the part-A restriction of the state's
/// covariance, clamped to the vacuum floor 1/2.
pub(crate) fn symplectic_eigenvalues(v: &DMatrix<f64>, part: &[usize]) -> Result<Vec<f64>> {
    let gx = pd_matrix_function(v, "potential matrix", |l| 0.5 / l)?;
    let gp = v * 0.5;
    let gx_a = submatrix(&gx, part, part);
    let gp_a = submatrix(&gp, part, part);
    // mu^2 = eig(gx_a gp_a); symmetrize as X^{1/2} P X^{1/2} to keep the
    // eigenproblem self-adjoint.
    let x_half = pd_matrix_function(&gx_a, "position covariance block", |l| l.sqrt())?;
    let k = &x_half * gp_a * &x_half;
    let (vals, _) = sym_eigen(&k);
    // Eigensolver noise delta at the vacuum floor mu = 1/2 would surface
    // as a spurious coefficient d ~ 2 sqrt(delta); flush a narrow band
    // above the floor (entropy impact < 1e-9).
    let mut mus: Vec<f64> = vals
        .iter()
        .map(|&l| {
            let mu = l.max(0.0).sqrt().max(0.5);
            if mu - 0.5 <= 1e-11 {
                0.5
            } else {
                mu
            }
        })
        .collect();
    mus.sort_by(|a, b| b.total_cmp(a));
    Ok(mus)
}

/// Marginal entropy of a single node from the closed form
/// `mu^2 = V_ii (V^{-1})_ii / 4`, with `nu = 2 mu`.
pub fn single_node_entropy(
    v: &PotentialMatrix,
    node: usize,
    base: LogBase,
) -> Result<EntropyResult> {
    if node >= v.n() {
        return Err(Error::InvalidPartition(format!(
            "node {node} out of range for n={}",
            v.n()
        )));
    }
    let nu = single_node_nu(v, node)?;
    let d = (1.0 - 1.0 / (nu * nu)).max(0.0).sqrt();
    let (d, warnings) = clamp_coefficients(vec![d])?;
    let spectrum = SchmidtSpectrum::from_coefficients(d, base)?.with_warnings(warnings);
    Ok(EntropyResult::new(spectrum, base, Method::ClosedForm))
}

/// `nu = 2 mu = sqrt(V_ii (V^{-1})_ii)` for one node.
pub fn single_node_nu(v: &PotentialMatrix, node: usize) -> Result<f64> {
    let n = v.n();
    let chol = v.matrix().clone().cholesky().ok_or_else(|| {
        Error::NotPositiveDefinite("potential matrix has no Cholesky factor".into())
    })?;
    let mut e = DVector::zeros(n);
    e[node] = 1.0;
    let col = chol.solve(&e);
    let nu_sq = v.matrix()[(node, node)] * col[node];
    Ok(nu_sq.max(1.0).sqrt())
}
