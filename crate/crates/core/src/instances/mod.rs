//! Instance generators, corpus files and brute-force oracles.

mod coords;
mod corpus;
mod generate;
mod oracle;

pub use coords::embedding_from_coordinates;
pub use corpus::{
    parse_index_line, read_corpus, standard_corpus, standard_specs, write_corpus, CorpusEntry,
    CorpusError,
};
pub use generate::{generate, Family, GeneratorSpec, InstanceError};
pub use oracle::{
    brute_force_packing, brute_force_tau, PACKING_ORACLE_MAX_CYCLES, TAU_ORACLE_MAX_N,
};
