use serde::Deserialize;

use crate::error::{Error, Result};

/// Limits for the stabilizing chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Hard cap on the chain index.
    pub max_e: usize,
    /// Consecutive equal terms required before a chain counts as stable.
    pub confirmations: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_e: 6,
            confirmations: 2,
        }
    }
}

impl Budget {
    /// Reads `key = value` lines (a TOML table); `#` starts a comment.
    /// Unknown keys are rejected so typos do not pass silently.
    pub fn parse(text: &str) -> Result<Budget> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct File {
            max_e: Option<usize>,
            confirmations: Option<usize>,
        }
        let file: File = toml::from_str(text).map_err(|e| {
            let offset = e.span().map_or(0, |s| s.start);
            Error::parse(offset, e.message())
        })?;
        let mut budget = Budget::default();
        if let Some(m) = file.max_e {
            budget.max_e = m;
        }
        if let Some(c) = file.confirmations {
            budget.confirmations = c;
        }
        budget.validate()?;
        Ok(budget)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_e == 0 || self.confirmations == 0 {
            return Err(Error::precondition("max_e and confirmations must be at least 1"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_files() {
        let b = Budget::parse("# limits\nmax_e = 8\n\nconfirmations=3 # strict\n").unwrap();
        assert_eq!(b, Budget { max_e: 8, confirmations: 3 });
        assert_eq!(Budget::parse("").unwrap(), Budget::default());
        assert!(matches!(Budget::parse("max_e 3"), Err(Error::Parse { .. })));
        assert!(matches!(Budget::parse("max_e=1\nfoo=2"), Err(Error::Parse { offset: 8, .. })));
        assert!(Budget::parse("max_e=0").is_err());
        assert!(matches!(Budget::parse("max_e = -1"), Err(Error::Parse { .. })));
    }
}
