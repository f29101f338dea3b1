//! Problem instances: TSPLIB parsing, the rounded Euclidean cost matrix and
//! per-vertex search probabilities.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{ParseError, ValidationError};

pub type Point = (f64, f64);

/// Which of the two problem variants an instance encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every vertex weighs 1; the objective is total latency.
    Mtdp,
    /// Vertex weights are probabilities summing to 1.
    Mgsp,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Mtdp => "mtdp",
            Mode::Mgsp => "mgsp",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mtdp" => Ok(Mode::Mtdp),
            "mgsp" => Ok(Mode::Mgsp),
            other => Err(format!("unknown mode {other:?} (expected mtdp or mgsp)")),
        }
    }
}

/// Read-only view of a weighted latency problem. Implemented by full
/// instances and by the per-cluster subproblems the route optimizer uses.
pub trait LatencyModel {
    fn size(&self) -> usize;
    fn cost(&self, from: usize, to: usize) -> f64;
    fn weight(&self, vertex: usize) -> f64;
}

/// Dense symmetric travel-time matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    n: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = f(i, j);
            }
        }
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| rows[i][j])
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Symmetric, zero diagonal, non-negative.
    pub fn check(&self) -> Result<(), ValidationError> {
        for i in 0..self.n {
            if self.get(i, i) != 0.0 {
                return Err(ValidationError::CostMatrix(i, i));
            }
            for j in i + 1..self.n {
                let a = self.get(i, j);
                if a.is_nan() || a < 0.0 || a != self.get(j, i) {
                    return Err(ValidationError::CostMatrix(i, j));
                }
            }
        }
        Ok(())
    }
}

/// Name and coordinates read from a TSPLIB file.
#[derive(Debug, Clone, PartialEq)]
pub struct Tsplib {
    pub name: String,
    pub coords: Vec<Point>,
}

impl Tsplib {
    pub fn n(&self) -> usize {
        self.coords.len()
    }
}

fn split_key(line: &str) -> Option<(&str, &str)> {
    let (key, value) = line.split_once(':')?;
    Some((key.trim(), value.trim()))
}

/// Parses a TSPLIB `EUC_2D` file. Node ids are 1-based in the file and
/// become 0-based vertex indices.
pub fn parse_tsplib(text: &str) -> Result<Tsplib, ParseError> {
    let mut name = None;
    let mut dimension = None;
    let mut weight_type_seen = false;
    let mut coords: Vec<Option<Point>> = Vec::new();
    let mut section_line = None;
    let mut last_line = 0;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));

    while let Some((lineno, line)) = lines.next() {
        last_line = lineno;
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        if line.starts_with("NODE_COORD_SECTION") {
            section_line = Some(lineno);
            let n = dimension.ok_or(ParseError::MissingKey {
                line: lineno,
                key: "DIMENSION",
            })?;
            if !weight_type_seen {
                return Err(ParseError::MissingKey {
                    line: lineno,
                    key: "EDGE_WEIGHT_TYPE",
                });
            }
            coords = vec![None; n];
            let mut read = 0usize;
            for (lineno, line) in lines.by_ref() {
                last_line = lineno;
                if line.is_empty() {
                    continue;
                }
                if line == "EOF" || line.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
                    break;
                }
                let mut fields = line.split_whitespace();
                let mut field = |what: &'static str| {
                    fields.next().ok_or_else(|| ParseError::Malformed {
                        line: lineno,
                        field: what,
                        text: line.to_string(),
                    })
                };
                let id_text = field("node id")?;
                let x_text = field("x coordinate")?;
                let y_text = field("y coordinate")?;
                let id: usize = id_text.parse().map_err(|_| ParseError::Malformed {
                    line: lineno,
                    field: "node id",
                    text: id_text.to_string(),
                })?;
                let x: f64 = x_text.parse().map_err(|_| ParseError::Malformed {
                    line: lineno,
                    field: "x coordinate",
                    text: x_text.to_string(),
                })?;
                let y: f64 = y_text.parse().map_err(|_| ParseError::Malformed {
                    line: lineno,
                    field: "y coordinate",
                    text: y_text.to_string(),
                })?;
                read += 1;
                if read > n {
                    return Err(ParseError::DimensionMismatch {
                        line: lineno,
                        expected: n,
                        found: read,
                    });
                }
                if id == 0 || id > n {
                    return Err(ParseError::NodeOutOfRange {
                        line: lineno,
                        id,
                        n,
                    });
                }
                if coords[id - 1].replace((x, y)).is_some() {
                    return Err(ParseError::DuplicateNode { line: lineno, id });
                }
            }
            if read != n {
                return Err(ParseError::DimensionMismatch {
                    line: lineno,
                    expected: n,
                    found: read,
                });
            }
            break;
        }
        let Some((key, value)) = split_key(line) else {
            return Err(ParseError::Malformed {
                line: lineno,
                field: "header line",
                text: line.to_string(),
            });
        };
        match key {
            "NAME" => name = Some(value.to_string()),
            "DIMENSION" => {
                let n: usize = value.parse().map_err(|_| ParseError::Malformed {
                    line: lineno,
                    field: "DIMENSION",
                    text: value.to_string(),
                })?;
                if n == 0 {
                    return Err(ParseError::Malformed {
                        line: lineno,
                        field: "DIMENSION",
                        text: value.to_string(),
                    });
                }
                dimension = Some(n);
            }
            "EDGE_WEIGHT_TYPE" => {
                if value != "EUC_2D" {
                    return Err(ParseError::UnsupportedEdgeWeight {
                        line: lineno,
                        found: value.to_string(),
                    });
                }
                weight_type_seen = true;
            }
            _ => {}
        }
    }

    let name = name.ok_or(ParseError::MissingKey {
        line: last_line,
        key: "NAME",
    })?;
    if section_line.is_none() {
        return Err(ParseError::MissingKey {
            line: last_line,
            key: "NODE_COORD_SECTION",
        });
    }
    // every slot is filled: read == n and ids are unique and in range
    let coords = coords.into_iter().map(|c| c.unwrap()).collect();
    Ok(Tsplib { name, coords })
}

/// TSPLIB `nint` of the Euclidean distance.
pub fn euc_2d(a: Point, b: Point) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    ((dx * dx + dy * dy).sqrt() + 0.5).floor()
}

pub fn build_costs(coords: &[Point]) -> CostMatrix {
    let n = coords.len();
    let mut m = CostMatrix::from_fn(n, |_, _| 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let d = euc_2d(coords[i], coords[j]);
            m.data[i * n + j] = d;
            m.data[j * n + i] = d;
        }
    }
    m
}

const PROB_MEAN: f64 = 5.5;
const PROB_STD_DEV: f64 = 1.5;
const PROB_LOW: f64 = 1.0;
const PROB_HIGH: f64 = 10.0;

/// FNV-1a, used to turn a textual seed into an RNG seed.
pub fn seed_from_str(seed: &str) -> u64 {
    seed.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Unnormalized draws from N(5.5, 1.5) restricted to [1, 10] by resampling.
pub fn raw_probability_draws(n: usize, seed: &str) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_from_str(seed));
    let normal = Normal::new(PROB_MEAN, PROB_STD_DEV).expect("valid normal parameters");
    (0..n)
        .map(|_| loop {
            let x = normal.sample(&mut rng);
            if (PROB_LOW..=PROB_HIGH).contains(&x) {
                break x;
            }
        })
        .collect()
}

pub fn gen_probabilities(n: usize, seed: &str) -> Vec<f64> {
    normalize(raw_probability_draws(n, seed))
}

fn normalize(mut values: Vec<f64>) -> Vec<f64> {
    let sum: f64 = values.iter().sum();
    for v in &mut values {
        *v /= sum;
    }
    values
}

/// Reads one non-negative number per line and normalizes them to sum 1.
/// Blank lines and lines starting with `#` are skipped.
pub fn load_probabilities(text: &str, n: usize) -> Result<Vec<f64>, ParseError> {
    let mut values = Vec::with_capacity(n);
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: f64 = line.parse().map_err(|_| ParseError::Malformed {
            line: i + 1,
            field: "probability",
            text: line.to_string(),
        })?;
        if !value.is_finite() {
            return Err(ParseError::Malformed {
                line: i + 1,
                field: "probability",
                text: line.to_string(),
            });
        }
        if value < 0.0 {
            return Err(ParseError::NegativeProbability { line: i + 1, value });
        }
        values.push(value);
    }
    if values.len() != n {
        return Err(ParseError::CountMismatch {
            expected: n,
            found: values.len(),
        });
    }
    if values.iter().sum::<f64>() <= 0.0 {
        return Err(ParseError::ZeroMass);
    }
    Ok(normalize(values))
}

/// A complete weighted graph with vehicles and their start vertices.
/// Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    name: String,
    mode: Mode,
    /// Empty when the instance was built from an explicit matrix.
    coords: Vec<Point>,
    cost: CostMatrix,
    prob: Vec<f64>,
    starts: Vec<usize>,
}

const MASS_TOLERANCE: f64 = 1e-9;

impl Instance {
    /// mTDP instance with every vehicle starting at the first vertex.
    pub fn mtdp(data: &Tsplib, vehicles: usize) -> Result<Self, ValidationError> {
        Self::new(
            data.name.clone(),
            Mode::Mtdp,
            data.coords.clone(),
            build_costs(&data.coords),
            vec![1.0; data.n()],
            vec![0; vehicles],
        )
    }

    /// mGSP instance with every vehicle starting at the first vertex.
    pub fn mgsp(data: &Tsplib, vehicles: usize, prob: Vec<f64>) -> Result<Self, ValidationError> {
        Self::new(
            data.name.clone(),
            Mode::Mgsp,
            data.coords.clone(),
            build_costs(&data.coords),
            prob,
            vec![0; vehicles],
        )
    }

    pub fn new(
        name: String,
        mode: Mode,
        coords: Vec<Point>,
        cost: CostMatrix,
        prob: Vec<f64>,
        starts: Vec<usize>,
    ) -> Result<Self, ValidationError> {
        let n = cost.len();
        if n == 0 {
            return Err(ValidationError::Empty);
        }
        if !coords.is_empty() && coords.len() != n {
            return Err(ValidationError::VertexOutOfRange {
                vertex: coords.len(),
                n,
            });
        }
        cost.check()?;
        if prob.len() != n {
            return Err(ValidationError::ProbabilityLength {
                expected: n,
                found: prob.len(),
            });
        }
        for (v, &p) in prob.iter().enumerate() {
            let ok = match mode {
                Mode::Mtdp => p == 1.0,
                Mode::Mgsp => (0.0..=1.0).contains(&p),
            };
            if !ok {
                return Err(ValidationError::ProbabilityRange {
                    vertex: v,
                    value: p,
                });
            }
        }
        if mode == Mode::Mgsp {
            let mass: f64 = prob.iter().sum();
            if (mass - 1.0).abs() > MASS_TOLERANCE {
                return Err(ValidationError::ProbabilityMass(mass));
            }
        }
        if starts.is_empty() {
            return Err(ValidationError::NoVehicles);
        }
        if let Some(&s) = starts.iter().find(|&&s| s >= n) {
            return Err(ValidationError::VertexOutOfRange { vertex: s, n });
        }
        Ok(Self {
            name,
            mode,
            coords,
            cost,
            prob,
            starts,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.cost.len()
    }

    pub fn vehicles(&self) -> usize {
        self.starts.len()
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    pub fn costs(&self) -> &CostMatrix {
        &self.cost
    }

    pub fn prob(&self) -> &[f64] {
        &self.prob
    }

    /// Same graph and probabilities with a different fleet.
    pub fn with_starts(&self, starts: Vec<usize>) -> Result<Self, ValidationError> {
        Self::new(
            self.name.clone(),
            self.mode,
            self.coords.clone(),
            self.cost.clone(),
            self.prob.clone(),
            starts,
        )
    }

    pub fn is_start(&self, v: usize) -> bool {
        self.starts.contains(&v)
    }
}

impl LatencyModel for Instance {
    fn size(&self) -> usize {
        self.n()
    }

    #[inline]
    fn cost(&self, from: usize, to: usize) -> f64 {
        self.cost.get(from, to)
    }

    #[inline]
    fn weight(&self, vertex: usize) -> f64 {
        self.prob[vertex]
    }
}
