/// Numeric tokens of `text` in order of appearance.
///
/// A token is an optionally signed integer or decimal (thousands separators
/// allowed) that is not glued to a letter or digit on either side.
fn numerals(text: &str) -> Vec<f64> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].is_ascii_digit() || (i > 0 && (chars[i - 1].is_alphanumeric() || chars[i - 1] == '.')) {
            i += 1;
            continue;
        }
        let negative = i > 0 && chars[i - 1] == '-' && (i < 2 || !chars[i - 2].is_alphanumeric());
        let start = i;
        while i < chars.len() && (chars[i].is_ascii_digit() || is_group_sep(&chars, i)) {
            i += 1;
        }
        if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
        }
        if i < chars.len() && chars[i].is_alphanumeric() {
            while i < chars.len() && chars[i].is_alphanumeric() {
                i += 1;
            }
            continue;
        }
        let token: String = chars[start..i].iter().filter(|c| **c != ',').collect();
        if let Ok(v) = token.parse::<f64>() {
            out.push(if negative { -v } else { v });
        }
    }
    out
}

/// `,` followed by exactly three digits continues a number.
fn is_group_sep(chars: &[char], i: usize) -> bool {
    chars[i] == ','
        && i > 0
        && chars[i - 1].is_ascii_digit()
        && chars.len() >= i + 4
        && chars[i + 1..i + 4].iter().all(char::is_ascii_digit)
        && chars.get(i + 4).is_none_or(|c| !c.is_ascii_digit())
}

/// Extract a direct-assessment score from a model's reply.
///
/// Returns the first numeral in [0, 100] and `true`, or `(0.0, false)` when
/// there is none.
pub fn parse_gemba(raw_output: &str) -> (f64, bool) {
    numerals(raw_output)
        .into_iter()
        .find(|v| (0.0..=100.0).contains(v))
        .map_or((0.0, false), |v| (v, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contract_examples() {
        assert_eq!(parse_gemba("Score: 85"), (85.0, true));
        assert_eq!(parse_gemba("The translation preserves meaning well."), (0.0, false));
        assert_eq!(parse_gemba("95.5\nExplanation: fluent"), (95.5, true));
    }

    #[test]
    fn tokens() {
        assert_eq!(numerals("a 1,000 b 2.5 c -3 d x4 5th 7."), vec![1000.0, 2.5, -3.0, 7.0]);
        assert_eq!(numerals("12-15"), vec![12.0, 15.0]);
        assert_eq!(numerals("1,00"), vec![1.0, 0.0]);
    }

    #[test]
    fn out_of_range_is_skipped() {
        assert_eq!(parse_gemba("-5"), (0.0, false));
        assert_eq!(parse_gemba("150 then 70"), (70.0, true));
        assert_eq!(parse_gemba("1,000"), (0.0, false));
        assert_eq!(parse_gemba("100.5"), (0.0, false));
        assert_eq!(parse_gemba("0"), (0.0, true));
        assert_eq!(parse_gemba("WMT24 says 60"), (60.0, true));
    }
}
