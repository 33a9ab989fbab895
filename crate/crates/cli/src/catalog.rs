//! Built-in cases with their known generator weights and Betti diagrams.

use sl2betti_core::resolution::BettiTable;

/// One built-in case.
#[derive(Clone, Debug)]
pub struct CaseRecord {
    pub label: &'static str,
    pub degrees: &'static [u32],
    /// Degree bound for the generator search.
    pub bound: u32,
    /// Generator weights, nondecreasing.
    pub weights: &'static [u32],
    /// `beta_{i,j}` without the `(0,0)` entry.
    betti: &'static [(usize, u32, u64)],
    /// Excluded from `verify all` unless asked for.
    pub stretch: bool,
}

impl CaseRecord {
    pub fn betti(&self) -> BettiTable {
        BettiTable::new(
            core::iter::once(((0, 0), 1)).chain(self.betti.iter().map(|&(i, j, b)| ((i, j), b))),
        )
    }

    pub fn length(&self) -> usize {
        self.betti().length()
    }

    pub fn j_star(&self) -> u32 {
        self.betti().j_star()
    }
}

macro_rules! case {
    ($label:expr, $d:expr, $bound:expr, $w:expr, $b:expr) => {
        case!($label, $d, $bound, $w, $b, false)
    };
    ($label:expr, $d:expr, $bound:expr, $w:expr, $b:expr, $stretch:expr) => {
        CaseRecord {
            label: $label,
            degrees: &$d,
            bound: $bound,
            weights: &$w,
            betti: &$b,
            stretch: $stretch,
        }
    };
}

pub static CATALOG: &[CaseRecord] = &[
    // free
    case!("V1", [1], 2, [], []),
    case!("V2", [2], 2, [2], []),
    case!("V3", [3], 4, [4], []),
    case!("V4", [4], 3, [2, 3], []),
    case!("2V1", [1, 1], 2, [2], []),
    case!("V1+V2", [1, 2], 3, [2, 3], []),
    case!("2V2", [2, 2], 2, [2, 2, 2], []),
    case!("3V1", [1, 1, 1], 2, [2, 2, 2], []),
    // hypersurfaces
    case!("V5", [5], 18, [4, 8, 12, 18], [(1, 36, 1)]),
    case!("V6", [6], 15, [2, 4, 6, 10, 15], [(1, 30, 1)]),
    case!("V1+V3", [1, 3], 6, [4, 4, 4, 6], [(1, 12, 1)]),
    case!("V1+V4", [1, 4], 9, [2, 3, 5, 6, 9], [(1, 18, 1)]),
    case!("V2+V3", [2, 3], 7, [2, 3, 4, 5, 7], [(1, 14, 1)]),
    case!("V2+V4", [2, 4], 6, [2, 2, 3, 3, 4, 6], [(1, 12, 1)]),
    case!("V4+V4", [4, 4], 4, [2, 2, 2, 3, 3, 3, 3, 4], [(1, 12, 1)]),
    case!("2V1+V2", [1, 1, 2], 3, [2, 2, 3, 3, 3], [(1, 6, 1)]),
    case!("V1+2V2", [1, 2, 2], 4, [2, 2, 2, 3, 3, 4], [(1, 8, 1)]),
    case!("3V2", [2, 2, 2], 3, [2, 2, 2, 2, 2, 2, 3], [(1, 6, 1)]),
    case!("4V1", [1, 1, 1, 1], 2, [2, 2, 2, 2, 2, 2], [(1, 4, 1)]),
    // length 2
    case!("V3+V3", [3, 3], 6, [2, 4, 4, 4, 4, 4, 6], [(1, 8, 1), (1, 12, 1), (2, 20, 1)]),
    // length 3
    case!(
        "V8",
        [8],
        10,
        [2, 3, 4, 5, 6, 7, 8, 9, 10],
        [
            (1, 16, 1), (1, 17, 1), (1, 18, 1), (1, 19, 1), (1, 20, 1),
            (2, 25, 1), (2, 26, 1), (2, 27, 1), (2, 28, 1), (2, 29, 1),
            (3, 45, 1),
        ],
        true
    ),
    case!("5V1", [1, 1, 1, 1, 1], 2, [2; 10], [(1, 4, 5), (2, 6, 5), (3, 10, 1)]),
    // length 4
    case!(
        "3V1+V2",
        [1, 1, 1, 2],
        3,
        [2, 2, 2, 2, 3, 3, 3, 3, 3, 3],
        [(1, 5, 3), (1, 6, 6), (2, 8, 8), (2, 9, 8), (3, 11, 6), (3, 12, 3), (4, 17, 1)]
    ),
    // length 5
    case!(
        "V1+3V2",
        [1, 2, 2, 2],
        4,
        [2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4],
        [
            (1, 6, 4), (1, 7, 4), (1, 8, 6),
            (2, 9, 3), (2, 10, 12), (2, 11, 12), (2, 12, 8),
            (3, 13, 8), (3, 14, 12), (3, 15, 12), (3, 16, 3),
            (4, 17, 6), (4, 18, 4), (4, 19, 4),
            (5, 25, 1),
        ]
    ),
    case!(
        "4V2",
        [2, 2, 2, 2],
        3,
        [2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3],
        [
            (1, 5, 4), (1, 6, 10),
            (2, 8, 15), (2, 9, 20),
            (3, 11, 20), (3, 12, 15),
            (4, 14, 10), (4, 15, 4),
            (5, 20, 1),
        ]
    ),
    // length 6
    case!(
        "2V1+2V2",
        [1, 1, 2, 2],
        4,
        [2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 4, 4, 4],
        [
            (1, 6, 6), (1, 7, 8), (1, 8, 6),
            (2, 9, 8), (2, 10, 24), (2, 11, 24), (2, 12, 8),
            (3, 12, 3), (3, 13, 24), (3, 14, 36), (3, 15, 24), (3, 16, 3),
            (4, 16, 8), (4, 17, 24), (4, 18, 24), (4, 19, 8),
            (5, 20, 6), (5, 21, 8), (5, 22, 6),
            (6, 28, 1),
        ],
        true
    ),
    case!(
        "6V1",
        [1, 1, 1, 1, 1, 1],
        2,
        [2; 15],
        [(1, 4, 15), (2, 6, 35), (3, 8, 21), (3, 10, 21), (4, 12, 35), (5, 14, 15), (6, 18, 1)],
        true
    ),
    // length 8
    case!(
        "2V1+V3",
        [1, 1, 3],
        6,
        [2, 4, 4, 4, 4, 4, 4, 4, 4, 6, 6, 6, 6],
        [
            (1, 8, 10), (1, 10, 15), (1, 12, 10),
            (2, 12, 20), (2, 14, 60), (2, 16, 60), (2, 18, 20),
            (3, 16, 15), (3, 18, 90), (3, 20, 140), (3, 22, 90), (3, 24, 15),
            (4, 20, 4), (4, 22, 60), (4, 24, 160), (4, 26, 160), (4, 28, 60), (4, 30, 4),
            (5, 26, 15), (5, 28, 90), (5, 30, 140), (5, 32, 90), (5, 34, 15),
            (6, 32, 20), (6, 34, 60), (6, 36, 60), (6, 38, 20),
            (7, 38, 10), (7, 40, 15), (7, 42, 10),
            (8, 50, 1),
        ],
        true
    ),
];

/// Case lookup by label, ignoring case, spaces and `⊕`/`+` spelling.
pub fn find(label: &str) -> Option<&'static CaseRecord> {
    let key = normalize(label);
    CATALOG.iter().find(|c| normalize(c.label) == key)
}

/// The case whose degree list is a permutation of `degrees`.
pub fn by_degrees(degrees: &[u32]) -> Option<&'static CaseRecord> {
    let mut d = degrees.to_vec();
    d.sort_unstable();
    CATALOG.iter().find(|c| {
        let mut e = c.degrees.to_vec();
        e.sort_unstable();
        e == d
    })
}

fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '⊕' { '+' } else { c.to_ascii_uppercase() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use sl2betti_core::invariants::ProblemSpec;
    use sl2betti_core::report::{check_palindromy, expected_hd, poincare_from_betti};

    #[test]
    fn records_are_consistent() {
        for c in CATALOG {
            let t = c.betti();
            assert_eq!(t.get(0, 0), 1, "{}", c.label);
            assert!(c.weights.windows(2).all(|w| w[0] <= w[1]), "{}", c.label);
            assert_eq!(c.bound, c.weights.iter().copied().max().unwrap_or(2).max(2), "{}", c.label);
            let spec = ProblemSpec::new(c.degrees.to_vec(), c.bound).unwrap();
            assert_eq!(expected_hd(&spec, c.weights.len()).unwrap(), c.length(), "{}", c.label);
            assert!(check_palindromy(&t).holds, "{}", c.label);
            // alternating ranks add up to the rank of R/I, zero for I != 0
            let num = poincare_from_betti(&t, c.weights);
            if c.length() > 0 {
                assert_eq!(num.numerator().iter().sum::<i128>(), 0, "{}", c.label);
            }
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(find("3v1 + v2").unwrap().degrees, &[1, 1, 1, 2]);
        assert_eq!(find("V1⊕3V2").unwrap().label, "V1+3V2");
        assert!(find("V7").is_none());
        assert_eq!(by_degrees(&[2, 1, 1, 1]).unwrap().label, "3V1+V2");
        let labels: Vec<&str> = CATALOG.iter().map(|c| c.label).collect();
        let mut dedup = labels.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), labels.len());
    }
}
