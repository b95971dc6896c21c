//! Feedback sets, dicycle packings and region accounting on embedded planar
//! digraphs.

pub mod embed;
pub mod frac;
pub mod instances;
pub mod machinery;
pub mod pipeline;
pub mod report;
pub mod solvers;

#[cfg(test)]
mod test_graphs;
