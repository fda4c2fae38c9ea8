pub mod cli;
pub mod dirlimit;
pub mod error;
pub mod fdlat;
pub mod latmaps;
pub mod ordercont;
pub mod ratcore;
pub mod report;
pub mod sampling;
pub mod seqlat;
pub mod verdict;

pub use error::{Error, Result};
