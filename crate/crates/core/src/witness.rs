use std::fmt;

/// Shared `Display` body for failure types carrying an axiom code and a
/// witness: renders `<code> witness=(..)`, exactly the way the CLI
/// prints failure lines. Expand inside an `impl fmt::Display` block.
macro_rules! fmt_code_witness {
    () => {
        fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            write!(f, "{} witness={}", self.code(), self.witness())
        }
    };
}
pub(crate) use fmt_code_witness;

/// Smallest offending element tuple attached to a failed axiom check.
///
/// Checks scan in lexicographic order, so the reported tuple is always
/// the first one in index order that violates the axiom; this keeps
/// failure output deterministic and easy to pin in tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Witness {
    One(usize),
    Two(usize, usize),
    Three(usize, usize, usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Witness::One(a) => write!(f, "({a})"),
            Witness::Two(a, b) => write!(f, "({a},{b})"),
            Witness::Three(a, b, c) => write!(f, "({a},{b},{c})"),
        }
    }
}

impl From<usize> for Witness {
    fn from(a: usize) -> Self {
        Witness::One(a)
    }
}

impl From<(usize, usize)> for Witness {
    fn from((a, b): (usize, usize)) -> Self {
        Witness::Two(a, b)
    }
}

impl From<(usize, usize, usize)> for Witness {
    fn from((a, b, c): (usize, usize, usize)) -> Self {
        Witness::Three(a, b, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_cli_format() {
        assert_eq!(Witness::One(3).to_string(), "(3)");
        assert_eq!(Witness::Two(0, 2).to_string(), "(0,2)");
        assert_eq!(Witness::Three(1, 0, 4).to_string(), "(1,0,4)");
    }
}
