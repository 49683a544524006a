pub mod arith;
pub mod bits;
pub mod density;
pub mod error;
pub mod generators;
pub mod kneser;
pub mod oracle;
pub mod periodic;
pub mod rational;
pub mod suites;
pub mod zmod;

pub use density::{ChainKind, DensityEstimate, EstimateKind, ModulusChain, WindowDensities};
pub use error::{Error, Result};
pub use generators::{Family, SetDescription};
pub use kneser::{AnalyzeOptions, KneserReport};
pub use periodic::{EventuallyPeriodicSet, ModularProfile};
pub use rational::Rational;
pub use suites::{Suite, SuiteConfig, SuiteReport};
pub use zmod::{Convention, ResidueSet, StructureClass};
