use crate::error::{Error, Result};

pub const DEFAULT_MAX_GENERATORS: usize = 4;
pub const DEFAULT_MAX_ORDER: usize = 6;

/// Enumeration ceilings. Tree counts and tensor dimensions grow
/// exponentially, so requests beyond these are refused up front.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_generators: usize,
    pub max_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_generators: DEFAULT_MAX_GENERATORS,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl Limits {
    /// Defaults, with `WHITCALC_MAX_ORDER` and `WHITCALC_MAX_GENERATORS`
    /// overriding when set to an integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = read_env("WHITCALC_MAX_ORDER") {
            limits.max_order = v;
        }
        if let Some(v) = read_env("WHITCALC_MAX_GENERATORS") {
            limits.max_generators = v;
        }
        limits
    }

    pub fn check(&self, m: usize, order: usize) -> Result<()> {
        self.check_order(order)?;
        if m > self.max_generators {
            return Err(Error::LimitExceeded {
                what: "generator count",
                value: m,
                max: self.max_generators,
            });
        }
        Ok(())
    }

    pub fn check_order(&self, order: usize) -> Result<()> {
        if order > self.max_order {
            return Err(Error::LimitExceeded {
                what: "order",
                value: order,
                max: self.max_order,
            });
        }
        Ok(())
    }
}

fn read_env(name: &str) -> Option<usize> {
    std::env::var(name).ok()?.trim().parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_ceilings() {
        let l = Limits::default();
        assert!(l.check(4, 6).is_ok());
        assert!(matches!(l.check(5, 1), Err(Error::LimitExceeded { .. })));
        assert!(matches!(l.check(2, 7), Err(Error::LimitExceeded { .. })));
    }
}
