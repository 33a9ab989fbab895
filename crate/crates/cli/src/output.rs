//! Text and JSON rendering of results.

use serde_json::{json, Value};
use sl2betti_core::report::{check_palindromy, poincare_from_betti, render_betti};
use sl2betti_core::resolution::BettiTable;

/// `2 2 3` as `2^2 3`; the input is sorted first.
pub fn exponent_list(values: &[u32]) -> String {
    let mut v = values.to_vec();
    v.sort_unstable();
    let mut parts = Vec::new();
    let mut k = 0;
    while k < v.len() {
        let run = v[k..].iter().take_while(|&&x| x == v[k]).count();
        parts.push(if run == 1 {
            v[k].to_string()
        } else {
            format!("{}^{run}", v[k])
        });
        k += run;
    }
    parts.join(" ")
}

/// `0 -> R(-17) -> R(-11)^6 + R(-12)^3 -> ... -> R`.
pub fn shape(t: &BettiTable) -> String {
    let mut parts = vec![String::from("0")];
    for i in (1..=t.length()).rev() {
        let terms: Vec<String> = t
            .entries()
            .iter()
            .filter(|(k, _)| k.0 == i)
            .map(|(&(_, j), &b)| if b == 1 { format!("R(-{j})") } else { format!("R(-{j})^{b}") })
            .collect();
        parts.push(if terms.is_empty() { String::from("0") } else { terms.join(" + ") });
    }
    parts.push(String::from("R"));
    parts.join(" -> ")
}

/// `1 - 3z^5 + z^17`.
pub fn series_text(coeffs: &[i128]) -> String {
    let mut s = String::new();
    for (j, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let a = c.unsigned_abs();
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        let mono = match j {
            0 => String::new(),
            1 => String::from("z"),
            j => format!("z^{j}"),
        };
        if a != 1 || j == 0 {
            s.push_str(&a.to_string());
        }
        s.push_str(&mono);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// `(1 - z^2)^4 (1 - z^3)^6`.
pub fn denominator_text(weights: &[u32]) -> String {
    let mut w = weights.to_vec();
    w.sort_unstable();
    let mut parts = Vec::new();
    let mut k = 0;
    while k < w.len() {
        let run = w[k..].iter().take_while(|&&x| x == w[k]).count();
        let base = if w[k] == 1 { String::from("(1 - z)") } else { format!("(1 - z^{})", w[k]) };
        parts.push(if run == 1 { base } else { format!("{base}^{run}") });
        k += run;
    }
    if parts.is_empty() {
        String::from("1")
    } else {
        parts.join(" ")
    }
}

/// Diagram, numerator and palindromy verdict as printed by `resolve` and
/// `betti`.
pub fn betti_report(t: &BettiTable, weights: &[u32]) -> String {
    let p = check_palindromy(t);
    let num = poincare_from_betti(t, weights);
    let mut out = String::new();
    out.push_str(&format!("resolution: {}\n", shape(t)));
    out.push_str(&format!("length: {}\n", t.length()));
    out.push_str(&format!("j*: {}\n\n", t.j_star()));
    out.push_str(&render_betti(t));
    out.push('\n');
    out.push_str(&format!(
        "Hilbert-Poincare numerator, sum_i (-1)^i sum_j b_ij z^j: {}\n",
        series_text(num.numerator())
    ));
    out.push_str(&format!("denominator: {}\n", denominator_text(weights)));
    match p.witness {
        None => out.push_str("palindromic: true\n"),
        Some((i, j)) => out.push_str(&format!(
            "palindromic: false (b_{i},{j} = {} but b_{},{} = {})\n",
            t.get(i, j),
            p.length - i,
            p.j_star - j,
            t.get(p.length - i, p.j_star - j)
        )),
    }
    out
}

/// The machine-readable result document.
pub fn betti_json(degrees: Option<&[u32]>, weights: &[u32], t: &BettiTable) -> Value {
    let betti: Vec<Value> = t.entries().iter().map(|(&(i, j), &b)| json!([i, j, b])).collect();
    let num: Vec<Value> = poincare_from_betti(t, weights)
        .numerator()
        .iter()
        .map(|&c| json!(i64::try_from(c).expect("numerator fits in i64")))
        .collect();
    json!({
        "degrees": degrees,
        "generator_weights": weights,
        "length": t.length(),
        "betti": betti,
        "j_star": t.j_star(),
        "palindromic": check_palindromy(t).holds,
        "poincare_numerator": num,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j() -> BettiTable {
        BettiTable::new([
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
    fn texts() {
        assert_eq!(exponent_list(&[3, 2, 2, 3, 4]), "2^2 3^2 4");
        assert_eq!(exponent_list(&[]), "");
        assert_eq!(
            shape(&j()),
            "0 -> R(-17) -> R(-11)^6 + R(-12)^3 -> R(-8)^8 + R(-9)^8 -> R(-5)^3 + R(-6)^6 -> R"
        );
        assert_eq!(shape(&BettiTable::new([((0, 0), 1)])), "0 -> R");
        assert_eq!(series_text(&[1, 0, -2, 1]), "1 - 2z^2 + z^3");
        assert_eq!(series_text(&[0, -1]), "-z");
        assert_eq!(series_text(&[]), "0");
        assert_eq!(denominator_text(&[3, 1, 3]), "(1 - z) (1 - z^3)^2");
    }

    #[test]
    fn json_document() {
        let v = betti_json(None, &[3, 3, 2, 3, 2, 3, 3, 2, 2, 3], &j());
        assert_eq!(v["length"], 4);
        assert_eq!(v["j_star"], 17);
        assert_eq!(v["palindromic"], true);
        assert_eq!(v["degrees"], Value::Null);
        assert_eq!(v["betti"][1], json!([1, 5, 3]));
        let num = v["poincare_numerator"].as_array().unwrap();
        assert_eq!(num.len(), 18);
        assert_eq!(num[5], -3);
        assert_eq!(num[17], 1);
    }

    #[test]
    fn report_mentions_verdict() {
        let r = betti_report(&j(), &[3, 3, 2, 3, 2, 3, 3, 2, 2, 3]);
        assert!(r.ends_with("palindromic: true\n"));
        let bad = BettiTable::new([((0, 0), 1), ((1, 2), 2), ((2, 5), 1)]);
        let r = betti_report(&bad, &[1, 1]);
        assert!(r.contains("palindromic: false (b_1,2 = 2 but b_1,3 = 0)"));
    }
}
