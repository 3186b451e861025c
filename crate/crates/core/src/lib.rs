//! Ground-state bipartite entanglement entropy of harmonic-oscillator
//! networks on simple graphs.
//!
//! A network of identical unit oscillators coupled along the edges of a
//! graph has the quadratic Hamiltonian `H = (p^T p + x^T V x)/2` with
//! potential matrix `V = I + 2gL`, `L` the graph Laplacian and `g` the
//! coupling strength. For any node bipartition the ground state's
//! Schmidt coefficients, and from them the entanglement entropy, follow
//! from a whitened singular value decomposition of the cross block of
//! `V` ([`reduction`]). Equivalent routes: block elimination of the
//! partition's interior nodes ([`schur`]), closed forms for families
//! whose inter-block connections are complete bipartite
//! ([`closed_form`]), and an independent covariance-matrix oracle
//! ([`reduction::entropy_oracle`]).
//!
//! [`conductance`] enumerates bipartitions exhaustively to compare the
//! graph conductance against the entropy landscape, and [`verify`] runs
//! the seeded cross-validation suite behind the `oscnet verify` command.
//!
//! ```
//! use oscnet::{entropy, make_family, Bipartition, LogBase, PotentialMatrix};
//!
//! // A 5-clique joined to a 4-vertex path, cut at the bridge.
//! let graph = make_family("lollipop", &[5, 4])?;
//! let v = PotentialMatrix::new(&graph, 1.0)?;
//! let split = Bipartition::new(graph.n(), (0..5).collect())?;
//! let result = entropy(&v, &split, LogBase::Natural)?;
//! assert_eq!(result.spectrum.rank(), 1);
//! assert!(result.total > 0.0);
//! # Ok::<(), oscnet::Error>(())
//! ```

pub mod closed_form;
pub mod conductance;
pub mod error;
pub mod graph;
pub mod reduction;
pub mod schur;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{
    four_block_of, laplacian, make_family, potential_matrix, Bipartition, Family,
    FourBlockPartition, Graph, PotentialMatrix,
};
pub use reduction::{
    entropy, entropy_from_d, entropy_from_nu, entropy_oracle, nu_from_d, schmidt_probabilities,
    schmidt_spectrum_direct, single_node_entropy, single_node_nu, EntropyResult, LogBase, Method,
    SchmidtSpectrum,
};
pub use schur::{corollary1_d, entropy_via_schur, schur_reduce, theorem1_d, ReducedSystem};
