//! Concrete symmetric monoidal closed categories: finite commutative quantales
//! viewed as posetal categories, and a workspace of finite sets.

mod finset;
pub mod generators;
mod quantale;

pub use finset::{FinSet, FinSetWorkspace, Function, RawFinSet, SetObj, Value};
pub use quantale::{El, Le, Quantale, RawQuantale};

use crate::error::{Error, Result};

/// Upper bounds on instance sizes; every check is exhaustive, so these keep it tractable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeCaps {
    pub quantale: usize,
    pub exponential: usize,
}

impl Default for SizeCaps {
    fn default() -> Self {
        SizeCaps { quantale: 32, exponential: 4096 }
    }
}

impl SizeCaps {
    pub const ENV_VAR: &'static str = "CATEND_SIZE_CAPS";

    /// Parses `quantale=N,exponential=M`; unspecified keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut caps = SizeCaps::default();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("size cap `{part}` is not key=value")))?;
            let n: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("size cap `{part}` is not a number")))?;
            match key.trim() {
                "quantale" => caps.quantale = n,
                "exponential" => caps.exponential = n,
                other => return Err(Error::InvalidInput(format!("unknown size cap `{other}`"))),
            }
        }
        Ok(caps)
    }

    /// Defaults overridden by the environment variable, if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV_VAR) {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_parse() {
        let c = SizeCaps::parse("quantale=8, exponential=100").unwrap();
        assert_eq!(c, SizeCaps { quantale: 8, exponential: 100 });
        assert_eq!(SizeCaps::parse("").unwrap(), SizeCaps::default());
        assert!(SizeCaps::parse("colour=3").is_err());
        assert!(SizeCaps::parse("quantale").is_err());
    }
}
