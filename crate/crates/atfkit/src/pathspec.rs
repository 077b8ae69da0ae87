/// Parses a mutation path like `"1,2,1"`: comma-separated 1-based vertex
/// indices, whitespace tolerated. Returns 0-based indices. Never panics.
pub fn parse_path(s: &str) -> Result<Vec<usize>, String> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err("empty path; expected comma-separated vertex indices like \"1,2,1\"".into());
    }
    trimmed
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            match tok.parse::<usize>() {
                Ok(i @ 1..=3) => Ok(i - 1),
                Ok(i) => Err(format!("vertex index {i} out of range; expected 1, 2 or 3")),
                Err(_) => Err(format!("bad path segment {tok:?}; expected 1, 2 or 3")),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_one_based_paths() {
        assert_eq!(parse_path("1,2,1").unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_path(" 3 , 1 ").unwrap(), vec![2, 0]);
        assert_eq!(parse_path("2").unwrap(), vec![1]);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "0", "4", "1,,2", "1;2", "a", "1, -2", "-1", "1,2,"] {
            assert!(parse_path(bad).is_err(), "accepted {bad:?}");
        }
    }
}
