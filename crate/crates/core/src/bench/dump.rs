//! Plain-text route dumps for external plotting.
//!
//! ```text
//! vehicle 1
//! 1 565 575
//! 22 ...
//! vehicle 2
//! ...
//! ```
//! Vehicle and vertex ids are 1-based as in TSPLIB. Coordinates are omitted
//! for instances built from a bare cost matrix.

use std::fmt::Write as _;

use crate::error::{ParseError, Result};
use crate::instance::Instance;
use crate::objective::{Route, Solution};

pub fn dump_routes(solution: &Solution, inst: &Instance) -> String {
    let mut out = String::new();
    for (k, route) in solution.routes().iter().enumerate() {
        let _ = writeln!(out, "vehicle {}", k + 1);
        for &v in route.vertices() {
            match inst.coords().get(v) {
                Some(&(x, y)) => {
                    let _ = writeln!(out, "{} {} {}", v + 1, x, y);
                }
                None => {
                    let _ = writeln!(out, "{}", v + 1);
                }
            }
        }
    }
    out
}

/// Reads a dump back into a validated solution for `inst`. Coordinates are
/// ignored.
pub fn parse_routes(text: &str, inst: &Instance) -> Result<Solution> {
    let malformed = |line: usize, text: &str| ParseError::Malformed {
        line,
        field: "route dump",
        text: text.to_string(),
    };
    let mut routes: Vec<Vec<usize>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(id) = line.strip_prefix("vehicle") {
            let id: usize = id.trim().parse().map_err(|_| malformed(i + 1, line))?;
            if id != routes.len() + 1 {
                return Err(malformed(i + 1, line).into());
            }
            routes.push(Vec::new());
            continue;
        }
        let first = line.split_whitespace().next().unwrap_or_default();
        let id: usize = first.parse().map_err(|_| malformed(i + 1, line))?;
        if id == 0 || id > inst.n() {
            return Err(ParseError::NodeOutOfRange {
                line: i + 1,
                id,
                n: inst.n(),
            }
            .into());
        }
        routes
            .last_mut()
            .ok_or_else(|| malformed(i + 1, line))?
            .push(id - 1);
    }
    let routes = routes.into_iter().map(Route::new).collect();
    Ok(Solution::new(routes, inst)?)
}
