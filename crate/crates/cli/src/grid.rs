//! Grid syntax: a single value `2.5`, a list `1,2,4`, or a range
//! `start:stop:count` with an optional `:lin` or `:log` suffix.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Upper bound on points in one grid.
pub const MAX_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("empty grid")]
    Empty,
    #[error("not a number: `{0}`")]
    BadNumber(String),
    #[error("non-finite value in grid")]
    NonFinite,
    #[error("range count must be a positive integer, got `{0}`")]
    BadCount(String),
    #[error("range needs start:stop:count[:lin|log], got `{0}`")]
    BadShape(String),
    #[error("unknown spacing `{0}` (expected lin or log)")]
    BadSpacing(String),
    #[error("log spacing needs positive endpoints")]
    LogNonPositive,
    #[error("grid has more than {MAX_POINTS} points")]
    TooMany,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Values(Vec<f64>),
    Range {
        start: f64,
        stop: f64,
        count: usize,
        spacing: Spacing,
    },
}

fn number(s: &str) -> Result<f64, GridError> {
    let s = s.trim();
    let v: f64 = s.parse().map_err(|_| GridError::BadNumber(s.to_string()))?;
    if !v.is_finite() {
        return Err(GridError::NonFinite);
    }
    Ok(v)
}

/// Parses the grid syntax described in the module docs.
pub fn parse_grid(text: &str) -> Result<Grid, GridError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(GridError::Empty);
    }
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 && parts.len() != 4 {
            return Err(GridError::BadShape(text.to_string()));
        }
        let start = number(parts[0])?;
        let stop = number(parts[1])?;
        let raw = parts[2].trim();
        let count: usize = raw.parse().map_err(|_| GridError::BadCount(raw.to_string()))?;
        if count == 0 {
            return Err(GridError::BadCount(raw.to_string()));
        }
        if count > MAX_POINTS {
            return Err(GridError::TooMany);
        }
        let spacing = match parts.get(3).map(|s| s.trim()) {
            None | Some("lin") => Spacing::Linear,
            Some("log") => Spacing::Log,
            Some(other) => return Err(GridError::BadSpacing(other.to_string())),
        };
        if spacing == Spacing::Log && !(start > 0.0 && stop > 0.0) {
            return Err(GridError::LogNonPositive);
        }
        return Ok(Grid::Range {
            start,
            stop,
            count,
            spacing,
        });
    }
    let values = text.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
    if values.len() > MAX_POINTS {
        return Err(GridError::TooMany);
    }
    Ok(Grid::Values(values))
}

impl FromStr for Grid {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_grid(s)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grid::Values(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                f.write_str(&parts.join(","))
            }
            Grid::Range {
                start,
                stop,
                count,
                spacing,
            } => {
                let tag = match spacing {
                    Spacing::Linear => "lin",
                    Spacing::Log => "log",
                };
                write!(f, "{start}:{stop}:{count}:{tag}")
            }
        }
    }
}

impl Grid {
    pub fn len(&self) -> usize {
        match self {
            Grid::Values(v) => v.len(),
            Grid::Range { count, .. } => *count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The grid points in order; range endpoints are reproduced exactly.
    pub fn points(&self) -> Vec<f64> {
        match *self {
            Grid::Values(ref v) => v.clone(),
            Grid::Range { start, count: 1, .. } => vec![start],
            Grid::Range {
                start,
                stop,
                count,
                spacing,
            } => {
                let last = (count - 1) as f64;
                (0..count)
                    .map(|i| {
                        if i == 0 {
                            return start;
                        }
                        if i == count - 1 {
                            return stop;
                        }
                        let t = i as f64 / last;
                        match spacing {
                            Spacing::Linear => start + (stop - start) * t,
                            Spacing::Log => (start.ln() + (stop.ln() - start.ln()) * t).exp(),
                        }
                    })
                    .collect()
            }
        }
    }
}
