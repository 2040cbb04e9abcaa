//! Weisfeiler-Leman refinement of configurations built from Schreier and
//! Cayley graphs of finite group actions, with checks of the known bounds on
//! the number of refining iterations.

pub mod algebra;
pub mod analysis;
pub mod config;
pub mod error;
pub mod experiment;
pub mod schreier;
pub mod theorems;
pub mod wl;

pub use config::{ColorInfo, ColorTable, ConfigDocument, Configuration};
pub use error::{Error, Result};
pub use wl::{color_at, partition_equal, wl_run, wl_step, WlOptions, WlTrace};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/configurations.md")]
    mod configurations {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/refinement.md")]
    mod refinement {}
    #[doc = include_str!("../../../book/src/coherence.md")]
    mod coherence {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
