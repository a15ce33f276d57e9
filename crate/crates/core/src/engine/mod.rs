//! Certificate-producing versions of the nilpotency arguments: the Q-ideal
//! inclusion, the normalizer chain, the corollaries, the supersymmetrized
//! product and the special Jordan pipeline.

mod chain;
mod corollaries;
mod pipeline;
mod plus;
mod qideal;
mod search;

pub use chain::{engel_chain, engel_chain_with, ChainCertificate, ChainOutcome, ChainStep, FailureWitness, StepCase};
pub use corollaries::{corollary_associative_gradednil, corollary_oddnil2, odd_square_zero, CorollaryReport};
pub use pipeline::{special_jordan_pipeline, PipelineCertificate, PipelineOutcome, Stage};
pub use plus::{plus_functor, plus_product};
pub use qideal::{verify_qideal, QIdealCheck, QIdealFailure};
pub use search::{counterexample_search, SearchHit, SearchReport, SearchTemplate};
