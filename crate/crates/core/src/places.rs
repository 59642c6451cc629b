use std::collections::BTreeSet;
use std::fmt;

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};

/// A finite set of rational primes. The archimedean place is always
/// implicitly included.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PlaceSet {
    primes: BTreeSet<u64>,
}

impl PlaceSet {
    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in primes {
            if !is_prime_u64(p) {
                return Err(Error::NotPrime(p.to_string()));
            }
            if !set.insert(p) {
                return Err(Error::Parse(format!("duplicate prime {p}")));
            }
        }
        Ok(PlaceSet { primes: set })
    }

    /// Only the archimedean place.
    pub fn archimedean() -> Self {
        PlaceSet::default()
    }

    /// Parses a comma-separated prime list such as `"2,3"`; the empty string
    /// is the archimedean-only set.
    pub fn parse_list(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PlaceSet::default());
        }
        let mut primes = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let p: u64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("not a prime: {tok:?}")))?;
            primes.push(p);
        }
        PlaceSet::new(primes)
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

impl fmt::Display for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
