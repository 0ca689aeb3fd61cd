//! Elevation grids: loading, saving, random generation, and 2×2 aggregation.
//!
//! A [`HeightGrid`] holds one elevation per fine cell (one sensor footprint)
//! plus an obstacle mask. [`aggregate`] averages each 2×2 block into a
//! [`MegaGrid`] cell; mega cells are the nodes of the coverage graph.
//!
//! # File format
//!
//! ```text
//! N M spacing
//! h h h ...        (N lines of M heights)
//! MASK             (optional)
//! .#..             (N lines of M chars, '#' = obstacle)
//! ```

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::scalar::{format_significant, Scalar};

/// Significant digits used when serializing heights and spacing.
pub const SERIALIZED_DIGITS: usize = 9;

/// Largest grid [`generate_terrain`] will allocate, in fine cells.
pub const MAX_GENERATED_CELLS: usize = 1 << 26;

const PATCH_ATTEMPTS: usize = 32;

#[derive(Debug, Error)]
pub enum TerrainError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("value error at row {row}, col {col}: height is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("invalid spacing {0}: must be finite and positive")]
    Spacing(String),
    #[error("invalid terrain generation spec: {0}")]
    InvalidSpec(String),
    #[error("generation failed: {0}")]
    Generation(String),
}

/// Raw N×M elevation matrix with obstacle mask.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightGrid<T> {
    rows: usize,
    cols: usize,
    heights: Vec<T>,
    obstacle: Vec<bool>,
    spacing: T,
}

impl<T: Scalar> HeightGrid<T> {
    /// Validates every grid invariant: even positive dimensions, matching
    /// buffer lengths, finite heights, positive spacing.
    pub fn new(
        rows: usize,
        cols: usize,
        heights: Vec<T>,
        obstacle: Vec<bool>,
        spacing: T,
    ) -> Result<Self, TerrainError> {
        check_dimensions(rows, cols)?;
        let cells = rows * cols;
        if heights.len() != cells {
            return Err(TerrainError::Dimension(format!(
                "expected {cells} heights for a {rows}x{cols} grid, got {}",
                heights.len()
            )));
        }
        if obstacle.len() != cells {
            return Err(TerrainError::Dimension(format!(
                "expected {cells} mask entries for a {rows}x{cols} grid, got {}",
                obstacle.len()
            )));
        }
        if let Some(i) = heights.iter().position(|h| !h.is_finite()) {
            return Err(TerrainError::NonFinite {
                row: i / cols,
                col: i % cols,
            });
        }
        if !(spacing.is_finite() && spacing > T::zero()) {
            return Err(TerrainError::Spacing(spacing.to_string()));
        }
        Ok(Self {
            rows,
            cols,
            heights,
            obstacle,
            spacing,
        })
    }

    /// Obstacle-free grid with constant height.
    pub fn flat(rows: usize, cols: usize, height: T, spacing: T) -> Result<Self, TerrainError> {
        Self::new(
            rows,
            cols,
            vec![height; rows * cols],
            vec![false; rows * cols],
            spacing,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    /// Row-major heights.
    pub fn heights(&self) -> &[T] {
        &self.heights
    }

    /// Row-major obstacle mask.
    pub fn obstacles(&self) -> &[bool] {
        &self.obstacle
    }

    pub fn height(&self, row: usize, col: usize) -> T {
        self.heights[row * self.cols + col]
    }

    pub fn is_obstacle(&self, row: usize, col: usize) -> bool {
        self.obstacle[row * self.cols + col]
    }

    pub fn obstacle_count(&self) -> usize {
        self.obstacle.iter().filter(|&&o| o).count()
    }

    /// Parses the plain-text terrain format.
    pub fn parse(text: &str) -> Result<Self, TerrainError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (header_no, header) = lines.next().ok_or(TerrainError::Parse {
            line: 1,
            message: "missing header `N M spacing`".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(TerrainError::Parse {
                line: header_no,
                message: format!("header must be `N M spacing`, got {header:?}"),
            });
        }
        let dim = |s: &str| {
            s.parse::<usize>().map_err(|_| TerrainError::Parse {
                line: header_no,
                message: format!("invalid dimension {s:?}"),
            })
        };
        let rows = dim(fields[0])?;
        let cols = dim(fields[1])?;
        check_dimensions(rows, cols)?;
        let spacing: T = parse_real(fields[2], header_no)?;

        let mut heights = Vec::with_capacity(rows * cols);
        for row in 0..rows {
            let (line_no, line) = lines.next().ok_or_else(|| {
                TerrainError::Dimension(format!("expected {rows} height rows, found {row}"))
            })?;
            let before = heights.len();
            for token in line.split_whitespace() {
                heights.push(parse_real::<T>(token, line_no)?);
            }
            let found = heights.len() - before;
            if found != cols {
                return Err(TerrainError::Dimension(format!(
                    "line {line_no}: expected {cols} heights, found {found}"
                )));
            }
        }

        let mut obstacle = vec![false; rows * cols];
        match lines.next() {
            None => {}
            Some((_, "MASK")) => {
                for row in 0..rows {
                    let (line_no, line) = lines.next().ok_or_else(|| {
                        TerrainError::Dimension(format!("expected {rows} mask rows, found {row}"))
                    })?;
                    let chars: Vec<char> = line.chars().collect();
                    if chars.len() != cols {
                        return Err(TerrainError::Dimension(format!(
                            "line {line_no}: expected {cols} mask characters, found {}",
                            chars.len()
                        )));
                    }
                    for (col, ch) in chars.into_iter().enumerate() {
                        obstacle[row * cols + col] = match ch {
                            '.' => false,
                            '#' => true,
                            other => {
                                return Err(TerrainError::Parse {
                                    line: line_no,
                                    message: format!("invalid mask character {other:?}"),
                                })
                            }
                        };
                    }
                }
            }
            Some((line_no, other)) => {
                return Err(TerrainError::Parse {
                    line: line_no,
                    message: format!("unexpected content after heights: {other:?}"),
                })
            }
        }
        if let Some((line_no, other)) = lines.next() {
            return Err(TerrainError::Parse {
                line: line_no,
                message: format!("trailing content: {other:?}"),
            });
        }

        Self::new(rows, cols, heights, obstacle, spacing)
    }

    /// Serializes to the plain-text format, values rounded to
    /// [`SERIALIZED_DIGITS`] significant digits. The mask section is written
    /// only when the grid has obstacles.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.rows * self.cols * 12);
        let _ = writeln!(
            out,
            "{} {} {}",
            self.rows,
            self.cols,
            format_significant(self.spacing.as_f64(), SERIALIZED_DIGITS)
        );
        for row in self.heights.chunks(self.cols) {
            for (i, h) in row.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&format_significant(h.as_f64(), SERIALIZED_DIGITS));
            }
            out.push('\n');
        }
        if self.obstacle.iter().any(|&o| o) {
            out.push_str("MASK\n");
            for row in self.obstacle.chunks(self.cols) {
                out.extend(row.iter().map(|&o| if o { '#' } else { '.' }));
                out.push('\n');
            }
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), TerrainError> {
        let path = path.as_ref();
        fs::write(path, self.to_text()).map_err(|source| TerrainError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

/// Reads and validates a terrain file.
pub fn load_height_grid<T: Scalar>(path: impl AsRef<Path>) -> Result<HeightGrid<T>, TerrainError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| TerrainError::Io {
        path: path.display().to_string(),
        source,
    })?;
    HeightGrid::parse(&text)
}

fn check_dimensions(rows: usize, cols: usize) -> Result<(), TerrainError> {
    if rows == 0 || cols == 0 {
        return Err(TerrainError::Dimension(format!(
            "grid must be non-empty, got {rows}x{cols}"
        )));
    }
    if !rows.is_multiple_of(2) || !cols.is_multiple_of(2) {
        return Err(TerrainError::Dimension(format!(
            "rows and cols must be even for 2x2 aggregation, got {rows}x{cols}"
        )));
    }
    Ok(())
}

fn parse_real<T: Scalar>(token: &str, line: usize) -> Result<T, TerrainError> {
    token.parse::<T>().map_err(|_| TerrainError::Parse {
        line,
        message: format!("invalid number {token:?}"),
    })
}

/// (N/2)×(M/2) grid of mean heights; each cell is one graph node candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct MegaGrid<T> {
    rows: usize,
    cols: usize,
    heights: Vec<T>,
    blocked: Vec<bool>,
    spacing: T,
    sacrificed: usize,
}

impl<T: Scalar> MegaGrid<T> {
    /// Builds a mega grid directly; `spacing` is the distance between
    /// adjacent mega-cell centers.
    pub fn new(
        rows: usize,
        cols: usize,
        heights: Vec<T>,
        blocked: Vec<bool>,
        spacing: T,
    ) -> Result<Self, TerrainError> {
        if rows == 0 || cols == 0 {
            return Err(TerrainError::Dimension(format!(
                "mega grid must be non-empty, got {rows}x{cols}"
            )));
        }
        if heights.len() != rows * cols || blocked.len() != rows * cols {
            return Err(TerrainError::Dimension(format!(
                "mega grid {rows}x{cols} needs {} heights and mask entries",
                rows * cols
            )));
        }
        if let Some(i) = heights.iter().position(|h| !h.is_finite()) {
            return Err(TerrainError::NonFinite {
                row: i / cols,
                col: i % cols,
            });
        }
        if !(spacing.is_finite() && spacing > T::zero()) {
            return Err(TerrainError::Spacing(spacing.to_string()));
        }
        Ok(Self {
            rows,
            cols,
            heights,
            blocked,
            spacing,
            sacrificed: 0,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Distance `d` between adjacent mega-cell centers.
    pub fn spacing(&self) -> T {
        self.spacing
    }

    pub fn heights(&self) -> &[T] {
        &self.heights
    }

    pub fn blocked(&self) -> &[bool] {
        &self.blocked
    }

    pub fn height(&self, row: usize, col: usize) -> T {
        self.heights[row * self.cols + col]
    }

    pub fn is_blocked(&self, row: usize, col: usize) -> bool {
        self.blocked[row * self.cols + col]
    }

    pub fn free_count(&self) -> usize {
        self.blocked.iter().filter(|&&b| !b).count()
    }

    /// Free fine cells that lie inside blocked mega cells and therefore
    /// cannot be covered.
    pub fn sacrificed_cells(&self) -> usize {
        self.sacrificed
    }

    /// Number of 4-connected components formed by free cells.
    pub fn free_components(&self) -> usize {
        count_free_components(self.rows, self.cols, &self.blocked)
    }
}

/// Averages every 2×2 block. A mega cell is blocked when any of its four
/// fine cells is an obstacle.
pub fn aggregate<T: Scalar>(grid: &HeightGrid<T>) -> MegaGrid<T> {
    let rows = grid.rows / 2;
    let cols = grid.cols / 2;
    let four = T::of(4.0);
    let mut heights = Vec::with_capacity(rows * cols);
    let mut blocked = Vec::with_capacity(rows * cols);
    let mut sacrificed = 0;
    for r in 0..rows {
        for c in 0..cols {
            let (r0, c0) = (2 * r, 2 * c);
            let h = |dr, dc| grid.height(r0 + dr, c0 + dc);
            // pairwise sum keeps the mean of four equal values exact
            heights.push(((h(0, 0) + h(0, 1)) + (h(1, 0) + h(1, 1))) / four);
            let obstacles = [(0, 0), (0, 1), (1, 0), (1, 1)]
                .iter()
                .filter(|&&(dr, dc)| grid.is_obstacle(r0 + dr, c0 + dc))
                .count();
            blocked.push(obstacles > 0);
            if obstacles > 0 {
                sacrificed += 4 - obstacles;
            }
        }
    }
    MegaGrid {
        rows,
        cols,
        heights,
        blocked,
        spacing: grid.spacing + grid.spacing,
        sacrificed,
    }
}

fn count_free_components(rows: usize, cols: usize, blocked: &[bool]) -> usize {
    let mut seen = vec![false; rows * cols];
    let mut queue = VecDeque::new();
    let mut components = 0;
    for start in 0..rows * cols {
        if blocked[start] || seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            let (r, c) = (i / cols, i % cols);
            let mut visit = |j: usize| {
                if !blocked[j] && !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            };
            if r > 0 {
                visit(i - cols);
            }
            if r + 1 < rows {
                visit(i + cols);
            }
            if c > 0 {
                visit(i - 1);
            }
            if c + 1 < cols {
                visit(i + 1);
            }
        }
    }
    components
}

/// Parameters for [`generate_terrain`].
#[derive(Debug, Clone, PartialEq)]
pub struct TerrainGenSpec {
    pub rows: usize,
    pub cols: usize,
    pub seed: u64,
    /// Upper bound on the number of rectangular obstacle patches.
    pub max_obstacles: usize,
    /// Target average mega-cell slope, in `[0, 1]`.
    pub roughness: f64,
    pub spacing: f64,
}

impl TerrainGenSpec {
    pub fn validate(&self) -> Result<(), TerrainError> {
        check_dimensions(self.rows, self.cols)
            .map_err(|e| TerrainError::InvalidSpec(e.to_string()))?;
        if !(0.0..=1.0).contains(&self.roughness) {
            return Err(TerrainError::InvalidSpec(format!(
                "roughness must lie in [0, 1], got {}",
                self.roughness
            )));
        }
        if !(self.spacing.is_finite() && self.spacing > 0.0) {
            return Err(TerrainError::InvalidSpec(format!(
                "spacing must be positive, got {}",
                self.spacing
            )));
        }
        Ok(())
    }
}

/// Generates a seeded random terrain.
///
/// Heights are multi-octave value noise, rescaled so the obstacle-free mega
/// grid has average slope equal to `roughness`. Rectangular obstacle patches
/// are then placed one at a time; a patch that would disconnect the free
/// mega cells is rejected and redrawn, up to a fixed number of attempts.
/// The same spec always yields the same grid.
pub fn generate_terrain<T: Scalar>(spec: &TerrainGenSpec) -> Result<HeightGrid<T>, TerrainError> {
    spec.validate()?;
    let cells = spec
        .rows
        .checked_mul(spec.cols)
        .filter(|&n| n <= MAX_GENERATED_CELLS)
        .ok_or_else(|| {
            TerrainError::Generation(format!(
                "{}x{} exceeds the {MAX_GENERATED_CELLS}-cell generation limit",
                spec.rows, spec.cols
            ))
        })?;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut field = value_noise(spec.rows, spec.cols, &mut rng);

    let base_slope = mean_block_slope(spec.rows, spec.cols, &field, 2.0 * spec.spacing);
    let scale = if spec.roughness == 0.0 || base_slope == 0.0 {
        0.0
    } else {
        spec.roughness / base_slope
    };
    for h in &mut field {
        *h *= scale;
    }

    let obstacle = place_obstacles(spec, &mut rng);
    let mega_free = count_free_components(
        spec.rows / 2,
        spec.cols / 2,
        &block_mask(spec.rows, spec.cols, &obstacle),
    );
    if mega_free != 1 {
        return Err(TerrainError::Generation(format!(
            "free mega cells form {mega_free} components"
        )));
    }
    debug_assert_eq!(obstacle.len(), cells);

    HeightGrid::new(
        spec.rows,
        spec.cols,
        field.into_iter().map(T::of).collect(),
        obstacle,
        T::of(spec.spacing),
    )
}

fn value_noise(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut field = vec![0.0; rows * cols];
    let mut period = (rows.max(cols) / 4).max(2);
    let mut amplitude = 1.0;
    for _octave in 0..5 {
        let lat_rows = rows / period + 2;
        let lat_cols = cols / period + 2;
        let lattice: Vec<f64> = (0..lat_rows * lat_cols)
            .map(|_| rng.gen_range(-1.0..=1.0))
            .collect();
        let at = |r: usize, c: usize| lattice[r * lat_cols + c];
        for r in 0..rows {
            let (r0, tr) = (r / period, smoothstep((r % period) as f64 / period as f64));
            for c in 0..cols {
                let (c0, tc) = (c / period, smoothstep((c % period) as f64 / period as f64));
                let top = at(r0, c0) + (at(r0, c0 + 1) - at(r0, c0)) * tc;
                let bottom = at(r0 + 1, c0) + (at(r0 + 1, c0 + 1) - at(r0 + 1, c0)) * tc;
                field[r * cols + c] += amplitude * (top + (bottom - top) * tr);
            }
        }
        if period < 4 {
            break;
        }
        period /= 2;
        amplitude *= 0.5;
    }
    field
}

fn smoothstep(t: f64) -> f64 {
    t * t * (3.0 - 2.0 * t)
}

/// Average |Δh|/d over 4-adjacent 2×2 block means, ignoring obstacles.
fn mean_block_slope(rows: usize, cols: usize, field: &[f64], mega_spacing: f64) -> f64 {
    let (mr, mc) = (rows / 2, cols / 2);
    let mean = |r: usize, c: usize| {
        let i = 2 * r * cols + 2 * c;
        ((field[i] + field[i + 1]) + (field[i + cols] + field[i + cols + 1])) / 4.0
    };
    let mut total = 0.0;
    let mut edges = 0usize;
    for r in 0..mr {
        for c in 0..mc {
            if c + 1 < mc {
                total += (mean(r, c) - mean(r, c + 1)).abs();
                edges += 1;
            }
            if r + 1 < mr {
                total += (mean(r, c) - mean(r + 1, c)).abs();
                edges += 1;
            }
        }
    }
    if edges == 0 {
        0.0
    } else {
        total / mega_spacing / edges as f64
    }
}

fn block_mask(rows: usize, cols: usize, obstacle: &[bool]) -> Vec<bool> {
    let (mr, mc) = (rows / 2, cols / 2);
    let mut blocked = vec![false; mr * mc];
    for (i, _) in obstacle.iter().enumerate().filter(|(_, &o)| o) {
        let (r, c) = (i / cols, i % cols);
        blocked[(r / 2) * mc + c / 2] = true;
    }
    blocked
}

fn place_obstacles(spec: &TerrainGenSpec, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let (rows, cols) = (spec.rows, spec.cols);
    let (mr, mc) = (rows / 2, cols / 2);
    let mut obstacle = vec![false; rows * cols];
    let mut blocked = vec![false; mr * mc];
    let max_side = (rows.min(cols) / 10).max(2);

    for _ in 0..spec.max_obstacles {
        for _attempt in 0..PATCH_ATTEMPTS {
            let height = rng.gen_range(1..=max_side.min(rows));
            let width = rng.gen_range(1..=max_side.min(cols));
            let top = rng.gen_range(0..=rows - height);
            let left = rng.gen_range(0..=cols - width);

            let mut candidate = blocked.clone();
            for r in top..top + height {
                for c in left..left + width {
                    candidate[(r / 2) * mc + c / 2] = true;
                }
            }
            let free = candidate.iter().any(|&b| !b);
            if free && count_free_components(mr, mc, &candidate) == 1 {
                for r in top..top + height {
                    for c in left..left + width {
                        obstacle[r * cols + c] = true;
                    }
                }
                blocked = candidate;
                break;
            }
        }
    }
    obstacle
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_minimal_file() {
        let grid: HeightGrid<f64> = HeightGrid::parse("2 2 1.0\n1 2\n3 4\n").unwrap();
        assert_eq!(grid.rows(), 2);
        assert_eq!(grid.cols(), 2);
        assert_eq!(grid.heights(), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(grid.obstacles(), &[false; 4]);
        assert_eq!(grid.spacing(), 1.0);
    }

    #[test]
    fn parse_with_mask() {
        let grid: HeightGrid<f64> =
            HeightGrid::parse("2 4 0.5\n1 2 3 4\n5 6 7 8\nMASK\n.#..\n....\n").unwrap();
        assert!(grid.is_obstacle(0, 1));
        assert_eq!(grid.obstacle_count(), 1);
    }

    #[test]
    fn rejects_odd_dimensions() {
        let err = HeightGrid::<f64>::parse("3 2 1.0\n1 2\n3 4\n5 6\n").unwrap_err();
        assert!(matches!(err, TerrainError::Dimension(_)), "{err}");
    }

    #[test]
    fn rejects_nan() {
        let err = HeightGrid::<f64>::parse("2 2 1.0\n1 nan\n3 4\n").unwrap_err();
        assert!(
            matches!(err, TerrainError::NonFinite { row: 0, col: 1 }),
            "{err}"
        );
        let err = HeightGrid::<f64>::parse("2 2 1.0\n1 2\ninf 4\n").unwrap_err();
        assert!(
            matches!(err, TerrainError::NonFinite { row: 1, col: 0 }),
            "{err}"
        );
    }

    #[test]
    fn rejects_malformed_input() {
        for text in [
            "",
            "2 2\n1 2\n3 4\n",
            "2 x 1\n1 2\n3 4\n",
            "2 2 1\n1 two\n3 4\n",
            "2 2 1\n1 2\n3 4\nMASK\n.?\n..\n",
            "2 2 1\n1 2\n3 4\nextra\n",
        ] {
            let err = HeightGrid::<f64>::parse(text).unwrap_err();
            assert!(matches!(err, TerrainError::Parse { .. }), "{text:?}: {err}");
        }
        for text in [
            "2 2 1\n1 2 3\n3 4\n",
            "2 2 1\n1 2\n",
            "2 2 1\n1 2\n3 4\nMASK\n...\n..\n",
        ] {
            let err = HeightGrid::<f64>::parse(text).unwrap_err();
            assert!(matches!(err, TerrainError::Dimension(_)), "{text:?}: {err}");
        }
        let err = HeightGrid::<f64>::parse("2 2 0\n1 2\n3 4\n").unwrap_err();
        assert!(matches!(err, TerrainError::Spacing(_)));
    }

    #[test]
    fn aggregate_means_and_blocking() {
        let grid = HeightGrid::new(2, 2, vec![1.0, 2.0, 3.0, 4.0], vec![false; 4], 1.0).unwrap();
        let mega = aggregate(&grid);
        assert_eq!((mega.rows(), mega.cols()), (1, 1));
        assert_eq!(mega.height(0, 0), 2.5);
        assert_eq!(mega.spacing(), 2.0);
        assert!(!mega.is_blocked(0, 0));

        let grid = HeightGrid::new(
            2,
            4,
            vec![7.0; 8],
            {
                let mut m = vec![false; 8];
                m[7] = true;
                m
            },
            1.5,
        )
        .unwrap();
        let mega = aggregate(&grid);
        assert_eq!(mega.heights(), &[7.0, 7.0]);
        assert_eq!(mega.blocked(), &[false, true]);
        assert_eq!(mega.sacrificed_cells(), 3);
        assert_eq!(mega.spacing(), 3.0);
    }

    #[test]
    fn flat_generation() {
        let spec = TerrainGenSpec {
            rows: 4,
            cols: 4,
            seed: 7,
            max_obstacles: 0,
            roughness: 0.0,
            spacing: 1.0,
        };
        let grid: HeightGrid<f64> = generate_terrain(&spec).unwrap();
        let first = grid.height(0, 0);
        assert!(grid.heights().iter().all(|&h| h == first));
        assert_eq!(grid.obstacle_count(), 0);
    }

    #[test]
    fn generation_rejects_bad_specs() {
        let base = TerrainGenSpec {
            rows: 8,
            cols: 8,
            seed: 0,
            max_obstacles: 0,
            roughness: 0.2,
            spacing: 1.0,
        };
        for spec in [
            TerrainGenSpec {
                rows: 3,
                ..base.clone()
            },
            TerrainGenSpec {
                cols: 0,
                ..base.clone()
            },
            TerrainGenSpec {
                roughness: 1.5,
                ..base.clone()
            },
            TerrainGenSpec {
                spacing: -1.0,
                ..base.clone()
            },
        ] {
            assert!(matches!(
                generate_terrain::<f64>(&spec),
                Err(TerrainError::InvalidSpec(_))
            ));
        }
        let huge = TerrainGenSpec {
            rows: 1 << 14,
            cols: 1 << 14,
            ..base
        };
        assert!(matches!(
            generate_terrain::<f64>(&huge),
            Err(TerrainError::Generation(_))
        ));
    }

    #[test]
    fn generated_slope_tracks_roughness() {
        for roughness in [0.05, 0.2, 0.5] {
            let spec = TerrainGenSpec {
                rows: 40,
                cols: 40,
                seed: 11,
                max_obstacles: 0,
                roughness,
                spacing: 1.0,
            };
            let grid: HeightGrid<f64> = generate_terrain(&spec).unwrap();
            let field = grid.heights();
            let slope = mean_block_slope(40, 40, field, 2.0);
            assert!((slope - roughness).abs() < 1e-9, "{slope} vs {roughness}");
        }
    }

    #[test]
    fn generic_over_f32() {
        let grid: HeightGrid<f32> = HeightGrid::parse("2 2 0.5\n1 2\n3 4\n").unwrap();
        assert_eq!(aggregate(&grid).height(0, 0), 2.5f32);
    }
}
