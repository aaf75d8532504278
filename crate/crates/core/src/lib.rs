pub mod claw;
pub mod dp;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod interval;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod pipeline;
pub mod stage1;
pub mod stage2;

pub use error::{Error, Result};
pub use interval::{Interval, Span, Vertex, Weight, WeightedIntervalGraph};
