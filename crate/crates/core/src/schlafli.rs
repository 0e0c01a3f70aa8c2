use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;

/// `{n,l}` for a single vertex valency, `{n,l1-l2}` with `l1 < l2` for two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Schlafli {
    Equivar { n: u32, lambda: u32 },
    TwoValency { n: u32, lambda1: u32, lambda2: u32 },
}

impl Schlafli {
    /// Normalizes the valency pair: equal valencies give the equivar form.
    pub fn new(n: u32, a: u32, b: u32) -> Self {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => Schlafli::Equivar { n, lambda: a },
            std::cmp::Ordering::Less => Schlafli::TwoValency { n, lambda1: a, lambda2: b },
            std::cmp::Ordering::Greater => Schlafli::TwoValency { n, lambda1: b, lambda2: a },
        }
    }

    pub fn n(&self) -> u32 {
        match *self {
            Schlafli::Equivar { n, .. } | Schlafli::TwoValency { n, .. } => n,
        }
    }

    /// `(lambda1, lambda2)` with `lambda1 <= lambda2`.
    pub fn valencies(&self) -> (u32, u32) {
        match *self {
            Schlafli::Equivar { lambda, .. } => (lambda, lambda),
            Schlafli::TwoValency { lambda1, lambda2, .. } => (lambda1, lambda2),
        }
    }

    pub fn is_equivar(&self) -> bool {
        matches!(self, Schlafli::Equivar { .. })
    }
}

impl fmt::Display for Schlafli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Schlafli::Equivar { n, lambda } => write!(f, "{{{n},{lambda}}}"),
            Schlafli::TwoValency { n, lambda1, lambda2 } => write!(f, "{{{n},{lambda1}-{lambda2}}}"),
        }
    }
}

impl FromStr for Schlafli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad Schlafli symbol {s:?}"));
        let inner = s.trim().strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
        let (n, vals) = inner.split_once(',').ok_or_else(bad)?;
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        let (a, b) = match vals.split_once('-') {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => {
                let l = vals.trim().parse().map_err(|_| bad())?;
                (l, l)
            }
        };
        Ok(Schlafli::new(n, a, b))
    }
}

impl Serialize for Schlafli {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        for text in ["{3,2}", "{4,2-3}", "{10,5}", "{4,3-6}"] {
            let s: Schlafli = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
        }
        assert_eq!("{4,2-2}".parse::<Schlafli>().unwrap(), Schlafli::Equivar { n: 4, lambda: 2 });
        assert_eq!(Schlafli::new(4, 5, 3).to_string(), "{4,3-5}");
        assert!("{4}".parse::<Schlafli>().is_err());
        assert!("4,3".parse::<Schlafli>().is_err());
    }
}
