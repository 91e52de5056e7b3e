//! Gram matrix text format: the rank on the first line, then one row per line.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub fn write_gram(gram: &[Vec<BigInt>]) -> String {
    let mut out = format!("{}\n", gram.len());
    for row in gram {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_gram(text: &str) -> Result<Matrix<BigInt>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty Gram file".into()))?;
    let rank: usize = header
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rank line {header:?}")))?;
    let mut gram = Vec::with_capacity(rank);
    for (i, line) in lines.enumerate() {
        let row: Vec<BigInt> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad entry {t:?} on row {}", i + 1)))
            })
            .collect::<Result<_>>()?;
        if row.len() != rank {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {rank}",
                i + 1,
                row.len()
            )));
        }
        gram.push(row);
    }
    if gram.len() != rank {
        return Err(Error::Parse(format!(
            "expected {rank} rows, found {}",
            gram.len()
        )));
    }
    Ok(gram)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = vec![
            vec![BigInt::from(2), BigInt::from(-1)],
            vec![BigInt::from(-1), BigInt::from(2)],
        ];
        let text = write_gram(&g);
        assert_eq!(text, "2\n2 -1\n-1 2\n");
        assert_eq!(parse_gram(&text).unwrap(), g);
    }

    #[test]
    fn malformed() {
        assert!(parse_gram("").is_err());
        assert!(parse_gram("x\n").is_err());
        assert!(parse_gram("2\n1 0\n").is_err());
        assert!(parse_gram("2\n1 0\n0\n").is_err());
        assert!(parse_gram("1\nq\n").is_err());
    }
}
