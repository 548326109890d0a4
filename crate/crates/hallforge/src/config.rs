use hallforge_core::ring::Ring;
use hallforge_core::DESK_SCALE;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RingChoice {
    Z,
    Q,
}

impl RingChoice {
    pub fn ring(self) -> Ring {
        match self {
            RingChoice::Z => Ring::Integers,
            RingChoice::Q => Ring::Rationals,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub rank: usize,
    pub class: usize,
    pub ring: RingChoice,
    pub seed: u64,
    pub samples: usize,
    pub format: Format,
}

impl Config {
    pub fn new(rank: usize, class: usize) -> Self {
        Config {
            rank,
            class,
            ring: RingChoice::Z,
            seed: 0,
            samples: 100,
            format: Format::Text,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.rank < 2 {
            return Err(CliError::Contract(format!("rank {} is below 2", self.rank)));
        }
        if self.class < 2 {
            return Err(CliError::Contract(format!("class {} is below 2", self.class)));
        }
        if self.rank + self.class > DESK_SCALE {
            return Err(CliError::Contract(format!(
                "rank + class = {} exceeds the scale limit {}",
                self.rank + self.class,
                DESK_SCALE
            )));
        }
        Ok(())
    }
}
