//! Analytic Schmidt coefficients for named families (even paths cut at
//! the midpoint, lollipops cut at the bridge, star partitions, complete
//! graphs via [`corollary1_d`]) and the large-coupling asymptotics.
//!
//! The continued-fraction forms are authoritative; the polynomial-ratio
//! forms are cross-checks. The recurrence `q0 = 1, q1 = x - 1,
//! q_k = x q_{k-1} - q_{k-2}` differs from the plain second-kind
//! Chebyshev sequence precisely in the `x - 1` boundary term, which
//! encodes the open chain end (diagonal `1 + 2g` instead of `1 + 4g`);
//! in terms of the standard polynomials, `q_k(x) = U_k(x/2) - U_{k-1}(x/2)`.

use crate::error::{Error, Result};
use crate::graph::{four_block_of, Bipartition, Graph, PotentialMatrix};
use crate::reduction::{EntropyResult, LogBase, Method};
use crate::schur::theorem1_d;

/// Forward evaluation of the boundary-corrected recurrence
/// `q0 = 1, q1 = x - 1, q_k = x q_{k-1} - q_{k-2}` up to degree `n`.
///
/// For `x >= 2` the sequence is the dominant solution of the recurrence,
/// so forward evaluation in double precision is stable.
#[derive(Debug, Clone)]
pub struct ChebyshevEval {
    x: f64,
    q: Vec<f64>,
}

impl ChebyshevEval {
    pub fn new(x: f64, n: usize) -> Self {
        let mut q = Vec::with_capacity(n + 1);
        q.push(1.0);
        if n >= 1 {
            q.push(x - 1.0);
        }
        for k in 2..=n {
            let next = x * q[k - 1] - q[k - 2];
            q.push(next);
        }
        ChebyshevEval { x, q }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }
}

/// Standard second-kind Chebyshev values `U_0(y) .. U_n(y)` by forward
/// recurrence.
pub fn chebyshev_u(y: f64, n: usize) -> Vec<f64> {
    let mut u = Vec::with_capacity(n + 1);
    u.push(1.0);
    if n >= 1 {
        u.push(2.0 * y);
    }
    for k in 2..=n {
        let next = 2.0 * y * u[k - 1] - u[k - 2];
        u.push(next);
    }
    u
}

/// Effective diagonal of an open chain of `k` oscillators reduced to its
/// last vertex: `c(1) = 1 + 2g`, `c(k) = 1 + 4g - 4g^2/c(k-1)`.
pub fn chain_term(k: usize, g: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("chain length must be positive".into()));
    }
    let mut c = 1.0 + 2.0 * g;
    for _ in 1..k {
        c = 1.0 + 4.0 * g - 4.0 * g * g / c;
    }
    Ok(c)
}

/// Single Schmidt coefficient of the even path `P_{2n}` cut at its
/// midpoint, by the continued fraction `d = 2g / c(n)`.
pub fn path_d(n: usize, g: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("half-path length must be positive".into()));
    }
    if !g.is_finite() || g < 0.0 {
        return Err(Error::NegativeCoupling(g));
    }
    Ok(2.0 * g / chain_term(n, g)?)
}

/// Polynomial-ratio form of [`path_d`]: `q_{n-1}(x)/q_n(x)` at
/// `x = 2 + 1/(2g)`, with `q` the boundary-corrected sequence of
/// [`ChebyshevEval`]. The plain ratio `U_{n-1}/U_n` does not reproduce
/// the continued fraction; see [`chain_term_polynomial`].
pub fn path_d_polynomial(n: usize, g: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("half-path length must be positive".into()));
    }
    if !g.is_finite() || g <= 0.0 {
        return Err(Error::Domain(
            "polynomial form needs strictly positive coupling".into(),
        ));
    }
    let x = 2.0 + 1.0 / (2.0 * g);
    let eval = ChebyshevEval::new(x, n);
    Ok(eval.q()[n - 1] / eval.q()[n])
}

/// Polynomial form of [`chain_term`]: `c(k) = 2g q_k(x)/q_{k-1}(x)`.
pub fn chain_term_polynomial(k: usize, g: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("chain length must be positive".into()));
    }
    if !g.is_finite() || g <= 0.0 {
        return Err(Error::Domain(
            "polynomial form needs strictly positive coupling".into(),
        ));
    }
    let x = 2.0 + 1.0 / (2.0 * g);
    let eval = ChebyshevEval::new(x, k);
    Ok(2.0 * g * eval.q()[k] / eval.q()[k - 1])
}

/// Schmidt coefficient of `lollipop(m, n)` cut at the bridge between the
/// clique and the path: `d = 2g / sqrt(v22~ c(n))`, where the reduced
/// clique block is
/// `v22~ = 1 + 2gm - 4g^2(1+2g)(m-1)/((1+2mg)(1+2g)) - 4g^2(2g)(m-1)^2/((1+2mg)(1+2g))`.
pub fn lollipop_d(m: usize, n: usize, g: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain("lollipop clique needs m >= 2".into()));
    }
    if n == 0 {
        return Err(Error::Domain("lollipop path needs n >= 1".into()));
    }
    if !g.is_finite() || g < 0.0 {
        return Err(Error::NegativeCoupling(g));
    }
    let v22 = lollipop_v22(m, g);
    Ok(2.0 * g / (v22 * chain_term(n, g)?).sqrt())
}

/// Reduced 1x1 clique-side block of the lollipop after eliminating the
/// `m - 1` clique vertices behind the bridge vertex.
pub fn lollipop_v22(m: usize, g: f64) -> f64 {
    let mf = m as f64;
    let denom = (1.0 + 2.0 * mf * g) * (1.0 + 2.0 * g);
    1.0 + 2.0 * g * mf
        - 4.0 * g * g * (1.0 + 2.0 * g) * (mf - 1.0) / denom
        - 4.0 * g * g * (2.0 * g) * (mf - 1.0) * (mf - 1.0) / denom
}

/// Schmidt coefficient of the star on `n_total` nodes split as `i` leaves
/// against the hub plus the remaining leaves:
/// `d = 2g sqrt(i) / sqrt((1+2g)(1+2g(N-1)) - 4g^2(N-i-1))`.
pub fn star_partition_d(n_total: usize, i: usize, g: f64) -> Result<f64> {
    if n_total < 3 {
        return Err(Error::Domain("star needs at least 3 nodes".into()));
    }
    if i < 1 || i > n_total - 1 {
        return Err(Error::Domain(format!(
            "leaf count i={i} out of range 1..={}",
            n_total - 1
        )));
    }
    if !g.is_finite() || g < 0.0 {
        return Err(Error::NegativeCoupling(g));
    }
    let nf = n_total as f64;
    let i_f = i as f64;
    let denom = (1.0 + 2.0 * g) * (1.0 + 2.0 * g * (nf - 1.0)) - 4.0 * g * g * (nf - i_f - 1.0);
    Ok(2.0 * g * i_f.sqrt() / denom.sqrt())
}

/// Large-coupling entropy estimate, natural log:
/// `S ~ log(upsilon/2) + 1` with `upsilon = 1/sqrt(eps)` and the
/// explicit two-term sum
/// `eps = (1 + n1/n2)/(2g m2) + (1 + m1/m2)/(2g n2)`.
pub fn large_coupling_entropy(m1: usize, m2: usize, n2: usize, n1: usize, g: f64) -> Result<f64> {
    let eps = epsilon_sum(m1, m2, n2, n1, g)?;
    Ok(entropy_of_epsilon(eps))
}

/// Variant of [`large_coupling_entropy`] using the collapsed ratio
/// `eps = N/(4g m2 n2)`. The two differ by a factor of 2 in `eps`
/// for all sizes (the explicit sum equals `N/(2g m2 n2)`), hence by
/// `log(sqrt 2)` in the entropy; comparisons against exact values decide
/// which to trust.
pub fn large_coupling_entropy_collapsed(
    m1: usize,
    m2: usize,
    n2: usize,
    n1: usize,
    g: f64,
) -> Result<f64> {
    if m2 == 0 || n2 == 0 {
        return Err(Error::Domain(
            "boundary blocks m2 and n2 must be nonempty".into(),
        ));
    }
    if !g.is_finite() || g <= 0.0 {
        return Err(Error::Domain("asymptotics need g > 0".into()));
    }
    let n_total = (m1 + m2 + n2 + n1) as f64;
    let eps = n_total / (4.0 * g * (m2 as f64) * (n2 as f64));
    Ok(entropy_of_epsilon(eps))
}

fn epsilon_sum(m1: usize, m2: usize, n2: usize, n1: usize, g: f64) -> Result<f64> {
    if m2 == 0 || n2 == 0 {
        return Err(Error::Domain(
            "boundary blocks m2 and n2 must be nonempty".into(),
        ));
    }
    if !g.is_finite() || g <= 0.0 {
        return Err(Error::Domain("asymptotics need g > 0".into()));
    }
    let (m1, m2, n2, n1) = (m1 as f64, m2 as f64, n2 as f64, n1 as f64);
    Ok((1.0 + n1 / n2) / (2.0 * g * m2) + (1.0 + m1 / m2) / (2.0 * g * n2))
}

fn entropy_of_epsilon(eps: f64) -> f64 {
    let upsilon = 1.0 / eps.sqrt();
    (upsilon / 2.0).ln() + 1.0
}

/// Exact-vs-asymptotic comparison for a complete-connection four-block
/// family at one coupling value, reporting both epsilon variants.
#[derive(Debug, Clone)]
pub struct AsymptoticComparison {
    pub g: f64,
    pub exact: f64,
    pub sum_estimate: f64,
    pub collapsed_estimate: f64,
    pub sum_rel_error: f64,
    pub collapsed_rel_error: f64,
}

pub fn asymptotic_comparison(
    m1: usize,
    m2: usize,
    n2: usize,
    n1: usize,
    g: f64,
) -> Result<AsymptoticComparison> {
    let d = theorem1_d(m1, m2, n2, n1, g)?;
    let exact = crate::reduction::entropy_from_d(d, LogBase::Natural)?;
    let sum_estimate = large_coupling_entropy(m1, m2, n2, n1, g)?;
    let collapsed_estimate = large_coupling_entropy_collapsed(m1, m2, n2, n1, g)?;
    Ok(AsymptoticComparison {
        g,
        exact,
        sum_estimate,
        collapsed_estimate,
        sum_rel_error: ((sum_estimate - exact) / exact).abs(),
        collapsed_rel_error: ((collapsed_estimate - exact) / exact).abs(),
    })
}

/// Block sizes `(m1, m2, n2, n1)` if the partition's three inter-block
/// connections are complete bipartite (so the single-coefficient closed
/// form applies), `None` otherwise.
pub fn theorem1_shape(graph: &Graph, p: &Bipartition) -> Option<(usize, usize, usize, usize)> {
    let fb = four_block_of(graph, p);
    let (m1, m2, n2, n1) = fb.sizes();
    if m2 == 0 || n2 == 0 {
        return None;
    }
    let [b1, b2, b3, b4] = fb.blocks();
    let complete =
        |xs: &[usize], ys: &[usize]| xs.iter().all(|&i| ys.iter().all(|&j| graph.has_edge(i, j)));
    (complete(b1, b2) && complete(b2, b3) && complete(b3, b4)).then_some((m1, m2, n2, n1))
}

/// Closed-form entropy for a complete-connection four-block partition.
/// Errors when the shape does not apply.
pub fn closed_form_entropy(
    v: &PotentialMatrix,
    p: &Bipartition,
    base: LogBase,
) -> Result<EntropyResult> {
    let (m1, m2, n2, n1) = theorem1_shape(v.graph(), p).ok_or_else(|| {
        Error::Domain(
            "no closed form applies: inter-block connections are not complete bipartite".into(),
        )
    })?;
    let d = theorem1_d(m1, m2, n2, n1, v.g())?;
    let modes = (m1 + m2).min(n2 + n1);
    EntropyResult::from_single_coefficient(d, modes, base, Method::ClosedForm)
}
