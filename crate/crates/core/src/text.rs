//! Small helpers shared by the literal and file-format parsers.

/// Splits `s` into signed summands at `+`/`-` signs that sit outside
/// parentheses. A sign directly after `^` belongs to an exponent and does not
/// split. Returns `(negative, term)` pairs; an empty input yields no terms.
pub(crate) fn split_top_level<'a>(s: &'a str, signs: &[char]) -> Vec<(bool, &'a str)> {
    let s = s.trim();
    let mut out = Vec::new();
    if s.is_empty() {
        return out;
    }
    let mut depth = 0i32;
    let mut negative = false;
    let mut start = 0usize;
    let mut prev: Option<char> = None;
    let mut seen_content = false;
    for (idx, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let is_sign = depth == 0 && signs.contains(&c) && prev != Some('^');
        if is_sign {
            if seen_content {
                out.push((negative, s[start..idx].trim()));
            } else if !out.is_empty() || start != 0 {
                // two signs in a row: keep the empty term so callers reject it
                out.push((negative, ""));
            }
            negative = c == '-';
            start = idx + c.len_utf8();
            seen_content = false;
        } else if !c.is_whitespace() {
            seen_content = true;
        }
        if !c.is_whitespace() {
            prev = Some(c);
        }
    }
    out.push((negative, s[start..].trim()));
    out
}

/// Splits on `*` outside parentheses.
pub(crate) fn split_factors(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (idx, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(s[start..idx].trim());
                start = idx + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// Strips a trailing `# comment` and surrounding whitespace.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(p) => line[..p].trim(),
        None => line.trim(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_signed_terms() {
        let t = split_top_level("1/2+3i - (1-i)", &['+', '-']);
        assert_eq!(t, vec![(false, "1/2"), (false, "3i"), (true, "(1-i)")]);
        let t = split_top_level("-e2 - e3", &['+', '-']);
        assert_eq!(t, vec![(true, "e2"), (true, "e3")]);
        let t = split_top_level("t^-1*e1+e2", &['+', '-']);
        assert_eq!(t, vec![(false, "t^-1*e1"), (false, "e2")]);
    }

    #[test]
    fn dangling_sign_leaves_empty_term() {
        let t = split_top_level("1+", &['+', '-']);
        assert_eq!(t, vec![(false, "1"), (false, "")]);
    }

    #[test]
    fn factors_respect_parentheses() {
        assert_eq!(split_factors("(1*2)*i*e3"), vec!["(1*2)", "i", "e3"]);
    }
}
