use crate::error::{Error, Result};
use std::collections::HashMap;
use std::path::Path;

/// User-supplied defining polynomials, one field per line: `p R c0 c1 ... cR`.
///
/// Blank lines and lines starting with `#` are ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PolyTable {
    entries: HashMap<(u32, u32), Vec<u32>>,
}

impl PolyTable {
    pub fn parse(text: &str) -> Result<PolyTable> {
        let mut entries = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            if nums.len() < 3 {
                return Err(Error::Parse(format!("line {}: too few fields", lineno + 1)));
            }
            let (p, r) = (nums[0], nums[1]);
            let coeffs = nums[2..].to_vec();
            if coeffs.len() != r as usize + 1 {
                return Err(Error::Parse(format!(
                    "line {}: expected {} coefficients for degree {r}, got {}",
                    lineno + 1,
                    r + 1,
                    coeffs.len()
                )));
            }
            entries.insert((p, r), coeffs);
        }
        Ok(PolyTable { entries })
    }

    pub fn load(path: &Path) -> Result<PolyTable> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn get(&self, p: u32, degree: u32) -> Option<&[u32]> {
        self.entries.get(&(p, degree)).map(Vec::as_slice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;

    #[test]
    fn parse_and_use() {
        let table = PolyTable::parse("# comment\n3 2 2 1 1\n\n2 2 1 1 1\n").unwrap();
        assert_eq!(table.get(3, 2), Some(&[2, 1, 1][..]));
        let f = FieldCtx::from_spec("3^2", Some(&table)).unwrap();
        assert_eq!(f.modulus(), &[2, 1, 1]);
        assert!(table.get(5, 1).is_none());
    }

    #[test]
    fn rejects_wrong_arity() {
        assert!(PolyTable::parse("2 2 1 1").is_err());
        assert!(PolyTable::parse("2 x 1").is_err());
    }
}
