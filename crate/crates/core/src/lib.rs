pub mod agents;
pub mod cli;
pub mod config;
pub mod corpus;
pub mod evaluator;
pub mod extraction;
pub mod llm;
pub mod pipeline;
pub mod text_metrics;
