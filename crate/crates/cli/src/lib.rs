//! Library side of the command-line harness, so the subcommand logic is
//! callable from tests and from the binary alike.

pub mod bench;
pub mod count;
pub mod duel;
pub mod registry;
pub mod verify;

/// Parses `--n-range`: either an inclusive range `A..B` or a comma list
/// `16,64,256`.
pub fn parse_n_range(spec: &str) -> Result<Vec<usize>, String> {
    let spec = spec.trim();
    if let Some((a, b)) = spec.split_once("..") {
        let a: usize = a
            .trim()
            .parse()
            .map_err(|_| format!("bad range start in {spec:?}"))?;
        let b: usize = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| format!("bad range end in {spec:?}"))?;
        if a > b {
            return Err(format!("empty range {spec:?}"));
        }
        Ok((a..=b).collect())
    } else {
        spec.split(',')
            .map(|part| {
                part.trim()
                    .parse()
                    .map_err(|_| format!("bad dimension {part:?} in {spec:?}"))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::parse_n_range;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_n_range("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_n_range("2..=5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_n_range("16,64,256").unwrap(), vec![16, 64, 256]);
        assert_eq!(parse_n_range("8").unwrap(), vec![8]);
        assert!(parse_n_range("5..2").is_err());
        assert!(parse_n_range("a..b").is_err());
    }
}
