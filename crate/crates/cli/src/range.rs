//! Parsing of `--N` values: a single `N`, or an inclusive range `a..b[:step]`.

use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NRange {
    pub start: u32,
    pub end: u32,
    pub step: u32,
    /// Whether the value was given as a range (affects JSON shape).
    pub is_range: bool,
}

impl NRange {
    pub fn values(&self) -> Vec<u32> {
        (self.start..=self.end).step_by(self.step as usize).collect()
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |v: &str| v.trim().parse::<u32>().map_err(|e| format!("`{v}`: {e}"));
        let Some((a, rest)) = s.split_once("..") else {
            let n = parse(s)?;
            return Ok(NRange { start: n, end: n, step: 1, is_range: false });
        };
        let (b, step) = match rest.split_once(':') {
            Some((b, st)) => (b, parse(st)?),
            None => (rest, 1),
        };
        let (start, end) = (parse(a)?, parse(b)?);
        if step == 0 {
            return Err("range step must be positive".into());
        }
        if start > end {
            return Err(format!("empty range {start}..{end}"));
        }
        Ok(NRange { start, end, step, is_range: true })
    }
}
