use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A curve on the surface whose operator can be built.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveDesc {
    /// The small curve around a spine edge.
    Edge(String),
    /// The curve enclosing the consecutive points x_i..x_j (genus 0).
    Band { i: usize, j: usize },
    /// The curve cabled by the color-c Jones-Wenzl idempotent.
    Cable { curve: Box<CurveDesc>, color: u32 },
}

impl CurveDesc {
    pub fn band(i: usize, j: usize) -> Self {
        CurveDesc::Band { i, j }
    }

    pub fn edge(name: &str) -> Self {
        CurveDesc::Edge(name.to_string())
    }

    pub fn cable(curve: CurveDesc, color: u32) -> Self {
        CurveDesc::Cable { curve: Box::new(curve), color }
    }
}

impl fmt::Display for CurveDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveDesc::Edge(name) => write!(f, "edge:{name}"),
            CurveDesc::Band { i, j } => write!(f, "band:{i}..{j}"),
            CurveDesc::Cable { curve, color } => write!(f, "cable:{curve}:{color}"),
        }
    }
}

impl FromStr for CurveDesc {
    type Err = Error;

    /// `edge:NAME`, `band:i..j`, or `cable:CURVE:c`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse curve `{s}`"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "edge" if !rest.is_empty() => Ok(CurveDesc::Edge(rest.to_string())),
            "band" => {
                let (i, j) = rest.split_once("..").ok_or_else(bad)?;
                let i = i.trim().parse().map_err(|_| bad())?;
                let j = j.trim().parse().map_err(|_| bad())?;
                Ok(CurveDesc::Band { i, j })
            }
            "cable" => {
                let (inner, c) = rest.rsplit_once(':').ok_or_else(bad)?;
                let color = c.trim().parse().map_err(|_| bad())?;
                Ok(CurveDesc::cable(inner.parse()?, color))
            }
            _ => Err(bad()),
        }
    }
}

/// The point-pushing generator delta_j (2 <= j <= n-1): x_1 travels once
/// around the points x_2..x_j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LoopDesc {
    pub j: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for s in ["edge:e1", "band:2..4", "cable:band:1..3:2", "cable:edge:x2:1", "cable:cable:band:1..2:1:3"] {
            let c: CurveDesc = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert_eq!("band:2..3".parse::<CurveDesc>().unwrap(), CurveDesc::band(2, 3));
        for s in ["band:2", "edge:", "loop:1..2", "cable:band:1..2", "band:a..b"] {
            assert!(s.parse::<CurveDesc>().is_err(), "{s}");
        }
    }
}
