//! Polynomial files.
//!
//! ```text
//! ring x1 x2 x3; weights 2 2 3; order wdegrevlex;
//! # one polynomial per line
//! -x1*x2 + 1/2*x3^2
//! x1^3 - 2 x2 x1^2
//! ```
//!
//! The header statements may span several lines and come in any order.
//! Without a `ring` statement the variables are `x1..xm`, `m` being the
//! number of weights supplied by the caller. Everything after `#` on a line
//! is a comment. Terms are `[+|-] coeff [* var[^exp] ...]`, with optional
//! `*` after the coefficient and arbitrary whitespace.

use sl2betti_core::poly::{GradedRing, Monomial, MonomialOrder, OrderKind, PolyError, Polynomial};
use sl2betti_core::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrammarError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("no `ring` header and no weights given")]
    MissingRing,
    #[error("file weights {file:?} disagree with given weights {given:?}")]
    InconsistentWeights { file: Vec<u32>, given: Vec<u32> },
    #[error(transparent)]
    Ring(#[from] PolyError),
}

/// A parsed polynomial file.
#[derive(Clone, Debug)]
pub struct PolyFile {
    pub ring: GradedRing,
    pub order: OrderKind,
    pub polys: Vec<Polynomial>,
}

impl PolyFile {
    pub fn monomial_order(&self) -> MonomialOrder {
        self.ring.order(self.order)
    }
}

fn syntax(line: usize, message: impl Into<String>) -> GrammarError {
    GrammarError::Syntax {
        line,
        message: message.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

pub fn order_name(kind: OrderKind) -> String {
    match kind {
        OrderKind::WeightedRevLex => "wdegrevlex".into(),
        OrderKind::Lex => "lex".into(),
        OrderKind::Elimination { front } => format!("elim {front}"),
    }
}

fn parse_order(words: &[&str], line: usize) -> Result<OrderKind, GrammarError> {
    match words {
        ["wdegrevlex"] | ["degrevlex"] => Ok(OrderKind::WeightedRevLex),
        ["lex"] => Ok(OrderKind::Lex),
        ["elim", k] => k
            .parse()
            .map(|front| OrderKind::Elimination { front })
            .map_err(|_| syntax(line, "bad elimination block size")),
        _ => Err(syntax(line, format!("unknown order `{}`", words.join(" ")))),
    }
}

/// Reads a polynomial file. `weights`, when given, must agree with a
/// `weights` statement in the file and otherwise supplies the weights.
pub fn parse_poly_file(text: &str, weights: Option<&[u32]>) -> Result<PolyFile, GrammarError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, strip_comment(l).trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut names: Option<Vec<String>> = None;
    let mut file_weights: Option<Vec<u32>> = None;
    let mut order = OrderKind::WeightedRevLex;
    // header statements, terminated by ';'
    let mut k = 0;
    let mut pending = String::new();
    let mut start = 0;
    while k < lines.len() {
        let (n, l) = lines[k];
        let is_header = !pending.is_empty() || ["ring", "weights", "order"].iter().any(|kw| l.split_whitespace().next() == Some(kw));
        if !is_header {
            break;
        }
        if pending.is_empty() {
            start = n;
        }
        pending.push(' ');
        pending.push_str(l);
        k += 1;
        while let Some((stmt, rest)) = pending.split_once(';') {
            let words: Vec<&str> = stmt.split_whitespace().collect();
            match words.split_first() {
                Some((&"ring", vars)) => names = Some(vars.iter().map(|s| s.to_string()).collect()),
                Some((&"weights", ws)) => {
                    let parsed: Result<Vec<u32>, _> = ws.iter().map(|w| w.trim_matches(',').parse()).collect();
                    file_weights = Some(parsed.map_err(|_| syntax(start, "bad weight"))?);
                }
                Some((&"order", kind)) => order = parse_order(kind, start)?,
                None => {}
                Some((w, _)) => return Err(syntax(start, format!("unknown statement `{w}`"))),
            }
            pending = rest.trim().to_string();
            start = n;
        }
    }
    if !pending.trim().is_empty() {
        return Err(syntax(start, "unterminated header statement"));
    }
    let weights = match (file_weights, weights) {
        (Some(f), Some(g)) if f != g => {
            return Err(GrammarError::InconsistentWeights {
                file: f,
                given: g.to_vec(),
            })
        }
        (Some(f), _) => Some(f),
        (None, g) => g.map(|g| g.to_vec()),
    };
    let ring = match (names, weights) {
        (Some(names), Some(w)) => GradedRing::new(names, w)?,
        (Some(names), None) => {
            let n = names.len();
            GradedRing::new(names, vec![1; n])?
        }
        (None, Some(w)) => GradedRing::with_prefix("x", w)?,
        (None, None) => return Err(GrammarError::MissingRing),
    };
    if let OrderKind::Elimination { front } = order {
        if front > ring.nvars() {
            return Err(syntax(start, "elimination block larger than the ring"));
        }
    }
    let ord = ring.order(order);
    let polys = lines[k..]
        .iter()
        .map(|&(n, l)| parse_polynomial(l, &ring, &ord).map_err(|m| syntax(n, m)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyFile { ring, order, polys })
}

/// Parses one polynomial in the variables of `ring`.
pub fn parse_polynomial(text: &str, ring: &GradedRing, ord: &MonomialOrder) -> Result<Polynomial, String> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let n = ring.nvars();
    let mut p = 0;
    let mut terms = Vec::new();
    if chars.is_empty() {
        return Err("empty polynomial".into());
    }
    let number = |p: &mut usize| -> Option<u64> {
        let s = *p;
        while *p < chars.len() && chars[*p].is_ascii_digit() {
            *p += 1;
        }
        (s < *p).then(|| chars[s..*p].iter().collect::<String>().parse().ok()).flatten()
    };
    while p < chars.len() {
        let mut neg = false;
        let mut signed = false;
        while p < chars.len() && (chars[p] == '+' || chars[p] == '-') {
            if signed && !terms.is_empty() {
                return Err(format!("doubled sign at column {}", p + 1));
            }
            neg ^= chars[p] == '-';
            signed = true;
            p += 1;
        }
        if !signed && !terms.is_empty() {
            return Err(format!("expected '+' or '-' at column {}", p + 1));
        }
        let mut c = Rational::one();
        let mut m = Monomial::one(n);
        let mut factors = 0;
        loop {
            if p >= chars.len() {
                break;
            }
            if chars[p].is_ascii_digit() {
                let a = number(&mut p).ok_or("bad integer")?;
                let mut q = Rational::from_bigint(a.into());
                if p < chars.len() && chars[p] == '/' {
                    p += 1;
                    let b = number(&mut p).ok_or("bad denominator")?;
                    if b == 0 {
                        return Err("zero denominator".into());
                    }
                    q = &q / &Rational::from_bigint(b.into());
                }
                c = &c * &q;
            } else if chars[p].is_alphabetic() || chars[p] == '_' {
                let s = p;
                while p < chars.len() && (chars[p].is_alphanumeric() || chars[p] == '_') {
                    p += 1;
                }
                let name: String = chars[s..p].iter().collect();
                let v = ring.var_index(&name).ok_or_else(|| format!("unknown variable `{name}`"))?;
                let mut e = 1u64;
                if p < chars.len() && chars[p] == '^' {
                    p += 1;
                    e = number(&mut p).ok_or("bad exponent")?;
                }
                let slot = &mut m.exponents_mut()[v];
                *slot = u16::try_from(*slot as u64 + e).map_err(|_| "exponent too large")?;
            } else {
                return Err(format!("unexpected `{}` at column {}", chars[p], p + 1));
            }
            factors += 1;
            // factors are joined by '*' or juxtaposed after a coefficient
            if p < chars.len() && chars[p] == '*' {
                p += 1;
                if p >= chars.len() || chars[p] == '+' || chars[p] == '-' {
                    return Err("dangling '*'".into());
                }
                continue;
            }
            if p < chars.len() && (chars[p].is_alphabetic() || chars[p] == '_') {
                continue;
            }
            break;
        }
        if factors == 0 {
            return Err("missing term".into());
        }
        if neg {
            c = -c;
        }
        terms.push((m, c));
    }
    Ok(Polynomial::from_terms(n, terms, ord))
}

pub fn header(ring: &GradedRing, order: OrderKind) -> String {
    let w: Vec<String> = ring.weights().iter().map(|w| w.to_string()).collect();
    format!(
        "ring {}; weights {}; order {};",
        ring.names().join(" "),
        w.join(" "),
        order_name(order)
    )
}

/// Writes a file that [`parse_poly_file`] reads back.
pub fn write_poly_file(ring: &GradedRing, order: OrderKind, polys: &[Polynomial]) -> String {
    let mut out = header(ring, order);
    out.push('\n');
    for p in polys {
        out.push_str(&p.to_text(ring.names()));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> GradedRing {
        GradedRing::new(vec!["x".into(), "y".into(), "z1".into()], vec![1, 2, 3]).unwrap()
    }

    #[test]
    fn terms() {
        let r = ring();
        let ord = r.default_order();
        let p = parse_polynomial("-1/2 x*y^2 + 3z1 - 4", &r, &ord).unwrap();
        assert_eq!(p.to_text(r.names()), "-1/2*x*y^2 + 3*z1 - 4");
        let q = parse_polynomial("x*x*y - x^2y", &r, &ord).unwrap();
        assert!(q.is_zero());
        for bad in ["", "x +", "x ++ y", "2 w", "x^", "1/0", "x y + * z1", "x $ y", "x*"] {
            assert!(parse_polynomial(bad, &r, &ord).is_err(), "{bad}");
        }
    }

    #[test]
    fn header_forms() {
        let f = parse_poly_file("ring a b;\n weights 2 3;\norder lex;\na^3 - b^2 # cusp\n", None).unwrap();
        assert_eq!(f.ring.weights(), &[2, 3]);
        assert_eq!(f.order, OrderKind::Lex);
        assert_eq!(f.polys.len(), 1);
        let g = parse_poly_file("x1^3 - x2^2\n", Some(&[2, 3])).unwrap();
        assert_eq!(g.ring.names(), &["x1".to_string(), "x2".to_string()]);
        let h = parse_poly_file("ring a b; order elim 1;\na - b\n", None).unwrap();
        assert_eq!(h.ring.weights(), &[1, 1]);
        assert_eq!(h.order, OrderKind::Elimination { front: 1 });
    }

    #[test]
    fn header_errors() {
        assert_eq!(parse_poly_file("x1\n", None).unwrap_err(), GrammarError::MissingRing);
        assert!(matches!(
            parse_poly_file("ring a; weights 2;\na\n", Some(&[3])),
            Err(GrammarError::InconsistentWeights { .. })
        ));
        assert!(parse_poly_file("ring a b; weights 1;\n", None).is_err());
        assert!(parse_poly_file("ring a; order fancy;\n", None).is_err());
        assert!(parse_poly_file("ring a\n", None).is_err());
        assert!(parse_poly_file("ring a a;\n", None).is_err());
        let e = parse_poly_file("ring a;\na\nb\n", None).unwrap_err();
        assert_eq!(
            e,
            GrammarError::Syntax {
                line: 3,
                message: "unknown variable `b`".into()
            }
        );
    }

    #[test]
    fn roundtrip() {
        let r = ring();
        let ord = r.default_order();
        let polys = vec![
            parse_polynomial("x^6 - 7/3 y^3 + z1^2", &r, &ord).unwrap(),
            parse_polynomial("x*z1 - y^2", &r, &ord).unwrap(),
        ];
        let text = write_poly_file(&r, OrderKind::WeightedRevLex, &polys);
        let back = parse_poly_file(&text, None).unwrap();
        assert_eq!(back.ring, r);
        assert_eq!(back.polys, polys);
    }
}
