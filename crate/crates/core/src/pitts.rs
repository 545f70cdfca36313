//! Excitation matrix of a simple circuit of `n` synapses.
//!
//! Row `r` of the matrix is synapse `r`, column `p` the interval `(p, p+1)`.
//! Column 1 is the seed. Each later column follows from its predecessor:
//! the entry in row `i` feeds row `i+1` (row 1 after row `n`) of the next
//! column, contributing `σ_{i+1} + a_i·e_i` when `e_i` is positive and just
//! `σ_{i+1}` otherwise.
//!
//! Because every entry feeds exactly one entry of the next column, the
//! wrap-around diagonals evolve independently of each other. Rows and
//! columns are 1-based throughout this module's public API.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("a circuit needs at least two synapses, got {0}")]
    TooFewSynapses(usize),
    #[error("intrinsic excitations and activity parameters differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("circuit values must be finite")]
    NonFinite,
    #[error("seed column has length {found}, expected {expected}")]
    SeedLength { expected: usize, found: usize },
    #[error("row {0} is out of range")]
    Row(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimpleCircuit {
    /// Intrinsic excitation placed at each synapse every interval.
    sigma: Vec<f64>,
    /// Signed activity parameter of each fiber; negative for inhibitory.
    activity: Vec<f64>,
}

impl SimpleCircuit {
    pub fn new(sigma: Vec<f64>, activity: Vec<f64>) -> Result<Self, CircuitError> {
        if sigma.len() != activity.len() {
            return Err(CircuitError::LengthMismatch(sigma.len(), activity.len()));
        }
        if sigma.len() < 2 {
            return Err(CircuitError::TooFewSynapses(sigma.len()));
        }
        if sigma.iter().chain(&activity).any(|v| !v.is_finite()) {
            return Err(CircuitError::NonFinite);
        }
        Ok(Self { sigma, activity })
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn activity(&self) -> &[f64] {
        &self.activity
    }

    /// The value row `row`'s entry `value` contributes to the next row.
    fn transfer(&self, row: usize, value: f64) -> f64 {
        let next = (row + 1) % self.len();
        if value <= 0.0 {
            self.sigma[next]
        } else {
            self.sigma[next] + self.activity[row] * value
        }
    }
}

/// Columns computed so far; `columns[0]` is the seed.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcitationMatrix {
    rows: usize,
    columns: Vec<Vec<f64>>,
}

impl ExcitationMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    /// Column `p`, 1-based.
    pub fn column(&self, p: usize) -> &[f64] {
        &self.columns[p - 1]
    }

    /// Entry at 1-based `(row, column)`.
    pub fn get(&self, row: usize, column: usize) -> f64 {
        self.columns[column - 1][row - 1]
    }
}

pub fn next_column(c: &SimpleCircuit, column: &[f64]) -> Vec<f64> {
    let n = c.len();
    let mut next = vec![0.0; n];
    for (i, &value) in column.iter().enumerate() {
        next[(i + 1) % n] = c.transfer(i, value);
    }
    next
}

/// Iterates the recursion from `seed` until `max_columns` columns exist.
pub fn run_excitation(c: &SimpleCircuit, seed: &[f64], max_columns: usize) -> Result<ExcitationMatrix, CircuitError> {
    if seed.len() != c.len() {
        return Err(CircuitError::SeedLength { expected: c.len(), found: seed.len() });
    }
    if seed.iter().any(|v| !v.is_finite()) {
        return Err(CircuitError::NonFinite);
    }
    let mut columns = Vec::with_capacity(max_columns.max(1));
    columns.push(seed.to_vec());
    while columns.len() < max_columns {
        let next = next_column(c, columns.last().expect("seeded"));
        columns.push(next);
    }
    Ok(ExcitationMatrix { rows: c.len(), columns })
}

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

fn agree(x: f64, y: f64, tol: f64) -> bool {
    x == y || (x - y).abs() <= tol * x.abs().max(y.abs())
}

/// The first interval `s` from which columns `p` and `p + n` agree (within
/// relative tolerance `tol`) for every `p` in `s .. s + n`. `None` if no
/// such window fits in the computed columns.
pub fn detect_steady_state(e: &ExcitationMatrix, tol: f64) -> Option<usize> {
    let n = e.rows();
    let cols = e.column_count();
    let periodic = |p: usize| e.column(p).iter().zip(e.column(p + n)).all(|(x, y)| agree(*x, *y, tol));
    // Run length of consecutive periodic columns ending at p.
    let mut run = 0;
    for p in 1..=cols.saturating_sub(n) {
        run = if periodic(p) { run + 1 } else { 0 };
        if run == n {
            return Some(p + 1 - n);
        }
    }
    None
}

/// Values along the diagonal that starts at `start_row` of column 1,
/// wrapping to row 1 of the next column after the last row.
pub fn extract_diagonal(e: &ExcitationMatrix, start_row: usize) -> Result<Vec<f64>, CircuitError> {
    if start_row == 0 || start_row > e.rows() {
        return Err(CircuitError::Row(start_row));
    }
    let n = e.rows();
    Ok((0..e.column_count()).map(|p| e.columns[p][(start_row - 1 + p) % n]).collect())
}

/// The same diagonal computed from its seed alone.
pub fn diagonal_from_seed(c: &SimpleCircuit, start_row: usize, seed: f64, len: usize) -> Result<Vec<f64>, CircuitError> {
    if start_row == 0 || start_row > c.len() {
        return Err(CircuitError::Row(start_row));
    }
    let mut out = Vec::with_capacity(len);
    let mut row = start_row - 1;
    let mut value = seed;
    for _ in 0..len {
        out.push(value);
        value = c.transfer(row, value);
        row = (row + 1) % c.len();
    }
    Ok(out)
}

/// Limit of the entries in row `phase` when every entry stays positive: the
/// fixed point of the affine map taking a row-`phase` value once around the
/// circuit. Requires `|∏ a_i| < 1`.
pub fn diagonal_fixed_point(c: &SimpleCircuit, phase: usize) -> Option<f64> {
    if phase == 0 || phase > c.len() {
        return None;
    }
    let n = c.len();
    let (mut slope, mut intercept) = (1.0, 0.0);
    for k in 0..n {
        let row = (phase - 1 + k) % n;
        let next = (row + 1) % n;
        slope *= c.activity[row];
        intercept = c.sigma[next] + c.activity[row] * intercept;
    }
    (slope.abs() < 1.0).then(|| intercept / (1.0 - slope))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> SimpleCircuit {
        SimpleCircuit::new(vec![1.0, 1.0], vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn next_column_hand_trace() {
        let c = example();
        assert_eq!(next_column(&c, &[1.0, 0.0]), vec![1.0, 1.5]);
        assert_eq!(next_column(&c, &[1.0, 1.5]), vec![1.75, 1.5]);
        assert_eq!(next_column(&c, &[-2.0, 0.0]), vec![1.0, 1.0]);
    }

    #[test]
    fn run_from_seeds() {
        let c = example();
        let e = run_excitation(&c, &[1.0, 0.0], 3).unwrap();
        assert_eq!(e.columns(), &[vec![1.0, 0.0], vec![1.0, 1.5], vec![1.75, 1.5]]);
        let e = run_excitation(&c, &[0.0, 0.0], 4).unwrap();
        assert_eq!(e.columns(), &[vec![0.0, 0.0], vec![1.0, 1.0], vec![1.5, 1.5], vec![1.75, 1.75]]);
        let flat = SimpleCircuit::new(vec![0.3, 0.7, 1.1], vec![0.0; 3]).unwrap();
        let e = run_excitation(&flat, &[5.0, -1.0, 2.0], 6).unwrap();
        for p in 2..=6 {
            assert_eq!(e.column(p), flat.sigma());
        }
        assert!(run_excitation(&c, &[1.0], 3).is_err());
    }

    #[test]
    fn steady_state_with_zero_activity_starts_at_two() {
        let c = SimpleCircuit::new(vec![1.0, 2.0], vec![0.0, 0.0]).unwrap();
        let e = run_excitation(&c, &[3.0, 4.0], 8).unwrap();
        assert_eq!(detect_steady_state(&e, 0.0), Some(2));
        let seeded_at_rest = run_excitation(&c, &[1.0, 2.0], 8).unwrap();
        assert_eq!(detect_steady_state(&seeded_at_rest, 0.0), Some(1));
    }

    #[test]
    fn diverging_circuit_has_no_steady_state() {
        let c = SimpleCircuit::new(vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        let e = run_excitation(&c, &[1.0, 1.0], 200).unwrap();
        assert_eq!(detect_steady_state(&e, DEFAULT_TOLERANCE), None);
        assert_eq!(diagonal_fixed_point(&c, 1), None);
    }

    #[test]
    fn converging_circuit_reaches_its_fixed_points() {
        let c = example();
        let e = run_excitation(&c, &[1.0, 0.0], 200).unwrap();
        let s = detect_steady_state(&e, DEFAULT_TOLERANCE).expect("converges");
        let fixed = diagonal_fixed_point(&c, 1).unwrap();
        assert!((fixed - 2.0).abs() < 1e-15);
        for p in s..s + 2 {
            for row in 1..=2 {
                assert!((e.get(row, p) - diagonal_fixed_point(&c, row).unwrap()).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn fixed_points_of_an_asymmetric_circuit() {
        let c = SimpleCircuit::new(vec![1.0, 2.0], vec![0.5, 0.25]).unwrap();
        // Row 1: v -> 1 + 0.25·(2 + 0.5·v) = 1.5 + v/8, so v = 12/7.
        assert!((diagonal_fixed_point(&c, 1).unwrap() - 12.0 / 7.0).abs() < 1e-15);
        // Row 2: w -> 2 + 0.5·(1 + 0.25·w) = 2.5 + w/8, so w = 20/7.
        assert!((diagonal_fixed_point(&c, 2).unwrap() - 20.0 / 7.0).abs() < 1e-15);
        assert_eq!(diagonal_fixed_point(&c, 3), None);
    }

    #[test]
    fn diagonals() {
        let c = example();
        let e = run_excitation(&c, &[1.0, 0.0], 4).unwrap();
        assert_eq!(extract_diagonal(&e, 1).unwrap(), vec![1.0, 1.5, 1.75, 1.875]);
        assert_eq!(extract_diagonal(&e, 2).unwrap(), vec![0.0, 1.0, 1.5, 1.75]);
        assert_eq!(diagonal_from_seed(&c, 2, 0.0, 4).unwrap(), vec![0.0, 1.0, 1.5, 1.75]);
        assert!(extract_diagonal(&e, 3).is_err());
        let zero = SimpleCircuit::new(vec![0.0; 3], vec![0.0; 3]).unwrap();
        let e = run_excitation(&zero, &[0.0; 3], 5).unwrap();
        assert!(extract_diagonal(&e, 2).unwrap().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn circuit_checks() {
        assert_eq!(SimpleCircuit::new(vec![1.0], vec![1.0]), Err(CircuitError::TooFewSynapses(1)));
        assert_eq!(SimpleCircuit::new(vec![1.0, 1.0], vec![1.0]), Err(CircuitError::LengthMismatch(2, 1)));
        assert_eq!(SimpleCircuit::new(vec![1.0, f64::NAN], vec![1.0, 1.0]), Err(CircuitError::NonFinite));
    }
}
