//! Run analysis for two-way word transducers.
//!
//! A two-way transducer reads `⊢u⊣` moving left or right and emits a word on
//! every transition. This crate enumerates normalized successful runs and
//! analyses them: crossing sequences, flows and effects of intervals,
//! factorization forests, idempotent loops and their components, pumping,
//! inversions and the periodicity of the output they delimit, and
//! decompositions of runs into diagonals and blocks.
//!
//! On top of the analysis sit bounded definability checks. A refutation
//! comes with a text certificate that [`verify_certificate`] replays
//! independently; a clean scan only covers inputs up to the searched length.
//!
//! ```
//! use untwist::{decide_oneway_bounded, fixtures, verify_certificate, DecideOptions, VerdictKind};
//!
//! let t = fixtures::load("T_COPY_AB");
//! let v = decide_oneway_bounded(&t, &DecideOptions::new(4)).unwrap();
//! assert_eq!(v.kind, VerdictKind::Refuted);
//! assert!(verify_certificate(&t, &v.certificate.unwrap().text));
//! ```
//!
//! Transducers are written in a small text format:
//!
//! ```text
//! # Identity over {a,b}, one pass.
//! transducer T_ID
//! input a b
//! output a b
//! states q0 q1
//! initial q0
//! final q1
//! t q0 |- R q0 ""
//! t q0 a R q0 "a"
//! t q0 b R q0 "b"
//! t q0 -| R q1 ""
//! ```

pub mod certificate;
pub mod constants;
pub mod decide;
pub mod decomposition;
pub mod effect;
pub mod error;
pub mod fixtures;
pub mod forest;
pub mod functional;
pub mod inversion;
pub mod loops;
pub mod oneway;
pub mod period;
pub mod run;
pub mod transducer;
pub mod word;

pub use certificate::{verify_certificate, Certificate};
pub use decide::{
    decide_oneway_bounded, decide_sweeping_bounded, DecideOptions, PassBound, Verdict, VerdictKind,
};
pub use decomposition::{build_decomposition, Decomposition, Outcome};
pub use effect::{effect_of_interval, Effect, Flow};
pub use error::{Error, ParseError, Result};
pub use inversion::{Inversion, InversionKind, RunAnalysis};
pub use loops::{components_of, enumerate_loops, pump, Component, Loop};
pub use oneway::{simulate_oneway, Simulation};
pub use period::PeriodBound;
pub use run::{enumerate_runs, Caps, Location, Run};
pub use transducer::{parse_transducer, serialize_transducer, validate, Transducer};
pub use word::Word;
