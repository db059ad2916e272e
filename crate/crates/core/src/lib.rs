//! IS-A sentence to description logic knowledge base compiler.

pub mod characterize;
pub mod dl;
pub mod evaluate;
pub mod lexicon;
pub mod pipeline;
pub mod preprocess;
pub mod reason;
pub mod revise;
pub mod transform;
