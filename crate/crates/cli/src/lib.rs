//! Command-line front end for `sl2betti-core`: polynomial and resolution
//! files, the catalog of built-in cases and the `sl2betti` subcommands.

pub mod app;
pub mod catalog;
pub mod dump;
pub mod grammar;
pub mod output;
pub mod pipeline;

use sl2betti_core::groebner::GroebnerError;
use sl2betti_core::invariants::InvariantError;
use sl2betti_core::presentation::PresentationError;
use sl2betti_core::resolution::ResolutionError;

pub use app::run;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Grammar(#[from] grammar::GrammarError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}
