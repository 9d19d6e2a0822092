use std::fmt;
use std::str::FromStr;

/// An expression language handled by this crate.
///
/// `Root` and `Numexpr` can be both parsed and emitted; `Python` is an
/// emit-only target (there is no grammar for it here, expressions are
/// rendered in plain array-expression style).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dialect {
    Root,
    Numexpr,
    Python,
}

impl Dialect {
    /// True for dialects that have a parser (`root` and `numexpr`).
    pub fn is_parse_source(self) -> bool {
        matches!(self, Dialect::Root | Dialect::Numexpr)
    }

    pub fn name(self) -> &'static str {
        match self {
            Dialect::Root => "root",
            Dialect::Numexpr => "numexpr",
            Dialect::Python => "python",
        }
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Error returned when a dialect name is not one of `root`, `numexpr`, `python`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownDialect(pub String);

impl fmt::Display for UnknownDialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown dialect '{}' (expected root, numexpr or python)",
            self.0
        )
    }
}

impl std::error::Error for UnknownDialect {}

impl FromStr for Dialect {
    type Err = UnknownDialect;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "root" => Ok(Dialect::Root),
            "numexpr" => Ok(Dialect::Numexpr),
            "python" => Ok(Dialect::Python),
            other => Err(UnknownDialect(other.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_sources() {
        assert!(Dialect::Root.is_parse_source());
        assert!(Dialect::Numexpr.is_parse_source());
        assert!(!Dialect::Python.is_parse_source());
    }

    #[test]
    fn from_str_round_trip() {
        for d in [Dialect::Root, Dialect::Numexpr, Dialect::Python] {
            assert_eq!(d.name().parse::<Dialect>().unwrap(), d);
        }
        assert!("ROOT".parse::<Dialect>().is_err());
        assert!("".parse::<Dialect>().is_err());
    }
}
