pub mod distribution;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod metrics;
pub mod properties;
pub mod samplers;
pub mod scalar;

pub use distribution::{Distribution, DistributionKind};
pub use error::{Error, Result};
pub use graph::{induced_subgraph, Graph, NodeId, NodeSet};
pub use properties::{compute_report, Property, PropertyOptions, PropertyReport};
pub use samplers::{sample, FinalizeMode, Method, Sample, SamplerConfig};
pub use scalar::Scalar;

pub type Distribution64 = Distribution<f64>;
pub type Distribution32 = Distribution<f32>;
pub type PropertyReport64 = PropertyReport<f64>;
pub type PropertyReport32 = PropertyReport<f32>;
