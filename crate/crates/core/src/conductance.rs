//! Graph conductance by exhaustive bipartition enumeration, optionally
//! annotated with per-partition entanglement entropy.
//!
//! The conductance is `alpha(G) = min |E(A,B)| / min(|A|, |B|)` over all
//! proper bipartitions. Every unordered bipartition is enumerated exactly
//! once by keeping node 0 out of part A, giving `2^(N-1) - 1` records.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, PotentialMatrix};
use crate::reduction::{entropy, LogBase};

/// Hard cap on exhaustive enumeration (about half a million partitions).
pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

/// An exact nonnegative rational, kept reduced. Cut counts and part sizes
/// are integers, so conductance values stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Cross-multiplication keeps the comparison exact.
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// One enumerated bipartition. `part_a` is the canonical side (the one
/// not containing node 0); `ratio` divides the cut count by the smaller
/// side's size.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionRecord {
    pub part_a: Vec<usize>,
    pub cut_edges: usize,
    pub min_size: usize,
    pub ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schmidt_rank: Option<usize>,
}

impl PartitionRecord {
    pub fn exact_ratio(&self) -> Ratio {
        Ratio::new(self.cut_edges as u64, self.min_size as u64)
    }
}

/// Full enumeration report: the conductance, every partition achieving
/// it, and all records in canonical order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConductanceReport {
    pub n: usize,
    pub alpha: Ratio,
    pub argmin: Vec<Vec<usize>>,
    pub records: Vec<PartitionRecord>,
}

impl ConductanceReport {
    pub fn alpha_value(&self) -> f64 {
        self.alpha.value()
    }

    /// Records sorted by exact ratio (stable within equal ratios).
    pub fn sorted_by_ratio(&self) -> Vec<&PartitionRecord> {
        let mut v: Vec<&PartitionRecord> = self.records.iter().collect();
        v.sort_by_key(|a| a.exact_ratio());
        v
    }

    /// Records sorted by descending entropy; unannotated records sink to
    /// the end.
    pub fn sorted_by_entropy(&self) -> Vec<&PartitionRecord> {
        let mut v: Vec<&PartitionRecord> = self.records.iter().collect();
        v.sort_by(|a, b| {
            b.entropy
                .unwrap_or(f64::NEG_INFINITY)
                .total_cmp(&a.entropy.unwrap_or(f64::NEG_INFINITY))
        });
        v
    }
}

fn enumerate(graph: &Graph, limit: usize) -> Result<Vec<PartitionRecord>> {
    let n = graph.n();
    if n < 2 {
        return Err(Error::InvalidGraph(
            "conductance needs at least 2 nodes".into(),
        ));
    }
    if n > limit {
        return Err(Error::EnumerationLimit(format!(
            "exhaustive enumeration of 2^{} partitions refused for n={n} \
             (limit {limit}); consider sampling partitions instead",
            n - 1
        )));
    }
    // Node 0 stays in part B, so each unordered bipartition appears once:
    // part A ranges over the nonempty subsets of {1, .., n-1}.
    let mut records = Vec::with_capacity((1usize << (n - 1)) - 1);
    for mask in 1u64..(1u64 << (n - 1)) {
        let part_a: Vec<usize> = (1..n).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
        let cut = graph
            .edges()
            .iter()
            .filter(|&&(i, j)| {
                let ia = i > 0 && mask >> (i - 1) & 1 == 1;
                let ja = j > 0 && mask >> (j - 1) & 1 == 1;
                ia != ja
            })
            .count();
        let min_size = part_a.len().min(n - part_a.len());
        records.push(PartitionRecord {
            ratio: cut as f64 / min_size as f64,
            part_a,
            cut_edges: cut,
            min_size,
            entropy: None,
            schmidt_rank: None,
        });
    }
    Ok(records)
}

fn report_from_records(n: usize, records: Vec<PartitionRecord>) -> ConductanceReport {
    let alpha = records
        .iter()
        .map(|r| r.exact_ratio())
        .min()
        .expect("at least one partition");
    let argmin = records
        .iter()
        .filter(|r| r.exact_ratio() == alpha)
        .map(|r| r.part_a.clone())
        .collect();
    ConductanceReport {
        n,
        alpha,
        argmin,
        records,
    }
}

/// Conductance by exhaustive enumeration with the default size cap.
pub fn conductance(graph: &Graph) -> Result<ConductanceReport> {
    conductance_with_limit(graph, DEFAULT_ENUMERATION_LIMIT)
}

pub fn conductance_with_limit(graph: &Graph, limit: usize) -> Result<ConductanceReport> {
    Ok(report_from_records(graph.n(), enumerate(graph, limit)?))
}

/// Conductance report with every record annotated by its entanglement
/// entropy and Schmidt rank at coupling `g`.
pub fn entropy_conductance_table(
    graph: &Graph,
    g: f64,
    base: LogBase,
) -> Result<ConductanceReport> {
    let mut records = enumerate(graph, DEFAULT_ENUMERATION_LIMIT)?;
    let v = PotentialMatrix::new(graph, g)?;
    for record in &mut records {
        let p = Bipartition::new(graph.n(), record.part_a.clone())?;
        let result = entropy(&v, &p, base)?;
        record.entropy = Some(result.total);
        record.schmidt_rank = Some(result.spectrum.rank());
    }
    Ok(report_from_records(graph.n(), records))
}
