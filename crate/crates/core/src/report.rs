//! Betti diagrams: text layout, Hilbert–Poincaré numerators, the
//! palindromy check and the expected homological dimension.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::groebner::RationalSeries;
use crate::invariants::ProblemSpec;
use crate::resolution::BettiTable;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("expected homological dimension is negative ({0}); the generating set looks incomplete")]
    NegativeDimension(i64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Numerator `sum_i (-1)^i sum_j beta_{i,j} z^j` over `prod (1 - z^w)`.
pub fn poincare_from_betti(t: &BettiTable, weights: &[u32]) -> RationalSeries {
    let mut num = alloc::vec![0i128; t.j_star() as usize + 1];
    for (&(i, j), &b) in t.entries() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        num[j as usize] += sign * b as i128;
    }
    RationalSeries::new(num, weights.to_vec())
}

const CORNER: &str = "-j\\i";

/// The diagram as text: one column per homological index, one row per
/// occurring shift, `-` for absent entries.
///
/// ```text
/// -j\i | 0  1  2  3
/// -----+-----------
///    0 | 1  -  -  -
///    4 | -  5  -  -
///    6 | -  -  5  -
///   10 | -  -  -  1
/// ```
pub fn render_betti(t: &BettiTable) -> String {
    let l = t.length();
    let mut shifts = t.shifts();
    if shifts.is_empty() {
        shifts.push(0);
    }
    let cell = |i: usize, j: u32| match t.get(i, j) {
        0 => String::from("-"),
        b => format!("{b}"),
    };
    let widths: Vec<usize> = (0..=l)
        .map(|i| {
            shifts
                .iter()
                .map(|&j| cell(i, j).len())
                .chain([format!("{i}").len()])
                .max()
                .unwrap_or(1)
        })
        .collect();
    let label = shifts
        .iter()
        .map(|j| format!("{j}").len())
        .chain([CORNER.len()])
        .max()
        .unwrap_or(0);
    let row = |first: String, cells: Vec<String>| {
        let body: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        format!("{first:>label$} | {}", body.join("  "))
    };
    let header = row(String::from(CORNER), (0..=l).map(|i| format!("{i}")).collect());
    let mut out = String::new();
    out.push_str(&header);
    out.push('\n');
    out.push_str(&"-".repeat(label + 1));
    out.push('+');
    out.push_str(&"-".repeat(header.len() - label - 2));
    out.push('\n');
    for &j in &shifts {
        out.push_str(&row(format!("{j}"), (0..=l).map(|i| cell(i, j)).collect()));
        out.push('\n');
    }
    out
}

/// Reads the output of [`render_betti`] back.
pub fn parse_betti(text: &str) -> Result<BettiTable, ReportError> {
    let err = |line: usize, message: &str| ReportError::Parse {
        line: line + 1,
        message: String::from(message),
    };
    let mut entries = Vec::new();
    let mut header = false;
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with("--") {
            continue;
        }
        let Some((left, right)) = line.split_once('|') else {
            return Err(err(n, "missing '|'"));
        };
        if left.trim() == CORNER {
            header = true;
            continue;
        }
        let j: u32 = left.trim().parse().map_err(|_| err(n, "bad shift"))?;
        for (i, tok) in right.split_whitespace().enumerate() {
            if tok == "-" {
                continue;
            }
            let b: u64 = tok.parse().map_err(|_| err(n, "bad entry"))?;
            entries.push(((i, j), b));
        }
    }
    if !header {
        return Err(err(0, "missing header"));
    }
    Ok(BettiTable::new(entries))
}

/// Outcome of the palindromy check `beta_{l-i, j*-j} = beta_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PalindromyVerdict {
    pub holds: bool,
    pub length: usize,
    pub j_star: u32,
    /// First `(i, j)` in lexicographic order where the symmetry fails.
    pub witness: Option<(usize, u32)>,
}

pub fn check_palindromy(t: &BettiTable) -> PalindromyVerdict {
    let l = t.length();
    let js = t.j_star();
    let mut candidates: Vec<(usize, u32)> = t
        .entries()
        .keys()
        .flat_map(|&(i, j)| [(i, j), (l - i, js - j)])
        .collect();
    candidates.sort_unstable();
    let witness = candidates
        .into_iter()
        .find(|&(i, j)| t.get(l - i, js - j) != t.get(i, j));
    PalindromyVerdict {
        holds: witness.is_none(),
        length: l,
        j_star: js,
        witness,
    }
}

/// Krull dimension of the invariant ring of the forms: `sum (d_i + 1) - 3`,
/// except for a single linear or quadratic form, whose generic stabilizers
/// are positive dimensional (dimensions 0 and 1).
pub fn invariant_dimension(spec: &ProblemSpec) -> i64 {
    match spec.degrees() {
        [1] => 0,
        [2] => 1,
        _ => spec.dimension() as i64 - 3,
    }
}

/// Length of the minimal resolution of a Cohen–Macaulay invariant ring
/// with `m` minimal generators: `m` minus its Krull dimension.
pub fn expected_hd(spec: &ProblemSpec, m: usize) -> Result<usize, ReportError> {
    let l = m as i64 - invariant_dimension(spec);
    usize::try_from(l).map_err(|_| ReportError::NegativeDimension(l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn table(e: &[((usize, u32), u64)]) -> BettiTable {
        BettiTable::new(e.iter().copied())
    }

    fn j_table() -> BettiTable {
        table(&[
            ((0, 0), 1),
            ((1, 5), 3),
            ((1, 6), 6),
            ((2, 8), 8),
            ((2, 9), 8),
            ((3, 11), 6),
            ((3, 12), 3),
            ((4, 17), 1),
        ])
    }

    #[test]
    fn complete_intersection_numerator() {
        let t = table(&[((0, 0), 1), ((1, 8), 1), ((1, 12), 1), ((2, 20), 1)]);
        let s = poincare_from_betti(&t, &[2, 4, 4, 4, 4, 4, 6]);
        // (1 - z^8)(1 - z^12)
        let mut expected = vec![0i128; 21];
        expected[0] = 1;
        expected[8] = -1;
        expected[12] = -1;
        expected[20] = 1;
        assert_eq!(s.numerator(), expected.as_slice());
        assert_eq!(poincare_from_betti(&table(&[((0, 0), 1)]), &[2]).numerator(), &[1]);
    }

    #[test]
    fn worked_example_numerator() {
        let s = poincare_from_betti(&j_table(), &[3, 3, 2, 3, 2, 3, 3, 2, 2, 3]);
        let mut expected = vec![0i128; 18];
        for (k, c) in [(0, 1), (5, -3), (6, -6), (8, 8), (9, 8), (11, -6), (12, -3), (17, 1)] {
            expected[k] = c;
        }
        assert_eq!(s.numerator(), expected.as_slice());
    }

    #[test]
    fn worked_example_layout() {
        let text = render_betti(&j_table());
        let expected = "\
-j\\i | 0  1  2  3  4
-----+--------------
   0 | 1  -  -  -  -
   5 | -  3  -  -  -
   6 | -  6  -  -  -
   8 | -  -  8  -  -
   9 | -  -  8  -  -
  11 | -  -  -  6  -
  12 | -  -  -  3  -
  17 | -  -  -  -  1
";
        assert_eq!(text, expected);
        assert_eq!(parse_betti(&text).unwrap(), j_table());
    }

    #[test]
    fn free_layout() {
        let text = render_betti(&table(&[((0, 0), 1)]));
        assert_eq!(text.lines().nth(2).unwrap().trim(), "0 | 1");
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn wide_entries_line_up() {
        let t = table(&[((0, 0), 1), ((1, 8), 10), ((2, 12), 140), ((3, 50), 1)]);
        let text = render_betti(&t);
        let widths: Vec<usize> = text.lines().map(|l| l.len()).collect();
        assert!(widths.iter().all(|&w| w == widths[0]));
        assert_eq!(parse_betti(&text).unwrap(), t);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_betti("0 | 1").is_err());
        assert!(parse_betti("-j\\i | 0\nx | 1").is_err());
        assert!(parse_betti("-j\\i | 0\n0 | y").is_err());
    }

    #[test]
    fn palindromy() {
        let v = check_palindromy(&j_table());
        assert!(v.holds);
        assert_eq!((v.length, v.j_star, v.witness), (4, 17, None));
        assert!(check_palindromy(&table(&[((0, 0), 1)])).holds);
        let v = check_palindromy(&table(&[((0, 0), 1), ((1, 2), 2), ((2, 5), 1)]));
        assert!(!v.holds);
        assert_eq!(v.witness, Some((1, 2)));
    }

    #[test]
    fn expected_lengths() {
        let spec = |d: &[u32]| ProblemSpec::new(d.to_vec(), 2).unwrap();
        assert_eq!(expected_hd(&spec(&[1, 1, 1, 2]), 10), Ok(4));
        assert_eq!(expected_hd(&spec(&[1, 1, 1, 1, 1]), 10), Ok(3));
        assert_eq!(expected_hd(&spec(&[3, 3]), 7), Ok(2));
        assert_eq!(expected_hd(&spec(&[2]), 1), Ok(0));
        assert_eq!(expected_hd(&spec(&[4]), 2), Ok(0));
        assert_eq!(expected_hd(&spec(&[1]), 0), Ok(0));
        assert_eq!(expected_hd(&spec(&[3, 3]), 2), Err(ReportError::NegativeDimension(-3)));
    }

    fn tables() -> impl Strategy<Value = BettiTable> {
        prop::collection::vec(((1usize..6, 1u32..40), 1u64..200), 0..12)
            .prop_map(|e| BettiTable::new(e.into_iter().chain([((0, 0), 1)])))
    }

    proptest! {
        #[test]
        fn render_roundtrip(t in tables()) {
            prop_assert_eq!(parse_betti(&render_betti(&t)).unwrap(), t);
        }

        #[test]
        fn mirrored_tables_are_palindromic(t in tables()) {
            let l = t.length();
            let js = t.j_star();
            let sym = BettiTable::new(
                t.entries().iter().flat_map(|(&(i, j), &b)| [((i, j), b), ((l - i, js - j), b)]),
            );
            // overlapping pairs double up symmetrically, so the sum stays symmetric
            prop_assert!(check_palindromy(&sym).holds);
        }
    }
}
