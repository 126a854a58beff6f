//! Benchmark fixtures.

use borelpos::orbits::BorelVariety;
use borelpos::Word;

/// `(n, q, word)` configurations benchmarked for tuple enumeration.
pub const TUPLE_CASES: [(usize, u64, &str); 4] = [(3, 2, "1,2"), (3, 2, "1,2,1"), (3, 3, "1,2"), (4, 2, "1,2,3")];

pub fn variety(n: usize, q: u64) -> BorelVariety {
    BorelVariety::over(n, q).expect("valid fixture")
}

pub fn word(s: &str) -> Word {
    s.parse().expect("valid fixture")
}
