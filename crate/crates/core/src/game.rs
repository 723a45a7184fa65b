//! The per-frame scheduling game among cells.
//!
//! Each cell is a player with actions {uplink, downlink}. Its payoff for a
//! mode profile is its weighted sum-rate under the decoupled power rule,
//! tabulated for all `2^N` profiles. A mixed strategy assigns every cell a
//! downlink probability `q_n`; the equilibrium is found by a semismooth
//! Newton method on the box-constrained indifference system
//!
//! ```text
//! F_n(q) = E[W_n | z_n = 1] - E[W_n | z_n = 0]
//! q_n in (0, 1) => F_n = 0,   q_n = 1 => F_n >= 0,   q_n = 0 => F_n <= 0
//! ```
//!
//! `F_n` does not depend on `q_n` and is affine in each other `q_m`, so the
//! Jacobian column for `q_m` is exactly `F(q | q_m = 1) - F(q | q_m = 0)`.
//! When no start converges, strictly dominated modes are eliminated and the
//! supports of the remaining cells are enumerated.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inputs::FrameInputs;
use crate::interference::ModeVector;
use crate::power::allocate_power;
use crate::rate::{wsr_cell, PayoffFlavor};

/// Largest cell count for which the payoff table is enumerated.
pub const DEFAULT_MAX_ENUMERABLE: usize = 16;

/// Payoff `W_n(z)` of every cell for every mode profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PayoffTable {
    num_cells: usize,
    flavor: PayoffFlavor,
    /// `values[profile * N + n]`, profile index as in [`ModeVector::index`].
    values: Vec<f64>,
}

impl PayoffTable {
    pub fn from_values(num_cells: usize, flavor: PayoffFlavor, values: Vec<f64>) -> Result<Self> {
        if num_cells == 0 || num_cells > usize::BITS as usize - 2 {
            return Err(Error::InvalidConfig(format!("bad cell count {num_cells}")));
        }
        if values.len() != num_cells << num_cells {
            return Err(Error::InvalidConfig(format!(
                "payoff table for {num_cells} cells needs {} entries, got {}",
                num_cells << num_cells,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("payoffs must be finite".into()));
        }
        Ok(Self {
            num_cells,
            flavor,
            values,
        })
    }

    pub fn from_fn(
        num_cells: usize,
        flavor: PayoffFlavor,
        mut payoff: impl FnMut(usize, &ModeVector) -> f64,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(num_cells << num_cells);
        for idx in 0..1usize << num_cells {
            let z = ModeVector::from_index(idx, num_cells);
            values.extend((0..num_cells).map(|n| payoff(n, &z)));
        }
        Self::from_values(num_cells, flavor, values)
    }

    pub fn num_cells(&self) -> usize {
        self.num_cells
    }

    pub fn num_profiles(&self) -> usize {
        1 << self.num_cells
    }

    pub fn flavor(&self) -> PayoffFlavor {
        self.flavor
    }

    #[inline]
    pub fn get(&self, n: usize, profile: usize) -> f64 {
        self.values[profile * self.num_cells + n]
    }

    pub fn payoff(&self, n: usize, z: &ModeVector) -> f64 {
        self.get(n, z.index())
    }

    /// All cells' payoffs for one profile.
    pub fn profile(&self, profile: usize) -> &[f64] {
        &self.values[profile * self.num_cells..(profile + 1) * self.num_cells]
    }

    /// Network value `sum_n W_n(z)` of a profile.
    pub fn network_value(&self, profile: usize) -> f64 {
        self.profile(profile).iter().sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Copy with every payoff of cell `n` replaced by `scale * W + shift`.
    pub fn affine_player(&self, n: usize, scale: f64, shift: f64) -> Self {
        let mut out = self.clone();
        for profile in 0..self.num_profiles() {
            out.values[profile * self.num_cells + n] = scale * self.get(n, profile) + shift;
        }
        out
    }
}

/// Tabulates the payoff of every cell for all `2^N` profiles: allocate power
/// for the profile, then score each cell with the chosen flavor.
pub fn build_payoff_table(
    flavor: PayoffFlavor,
    inputs: &FrameInputs<'_>,
    max_enumerable: usize,
) -> Result<PayoffTable> {
    let n = inputs.num_cells();
    if n > max_enumerable {
        return Err(Error::EnumerationInfeasible {
            cells: n,
            max: max_enumerable,
        });
    }
    let values: Vec<f64> = (0..1usize << n)
        .into_par_iter()
        .flat_map_iter(|idx| {
            let z = ModeVector::from_index(idx, n);
            let p = allocate_power(&z, inputs);
            (0..n)
                .map(|cell| wsr_cell(cell, &z, &p, inputs, flavor))
                .collect::<Vec<_>>()
        })
        .collect();
    PayoffTable::from_values(n, flavor, values)
}

/// Downlink probability of every cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MixedStrategy(pub Vec<f64>);

impl MixedStrategy {
    pub fn new(q: Vec<f64>) -> Result<Self> {
        if q.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidConfig("mixed strategy entries must lie in [0, 1]".into()));
        }
        Ok(Self(q))
    }

    pub fn uniform(n: usize, value: f64) -> Self {
        Self(vec![value; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[inline]
fn mode_prob(q: f64, downlink: bool) -> f64 {
    if downlink {
        q
    } else {
        1.0 - q
    }
}

/// `E[W_n | z_n = a]` with the opponents drawing their modes from `q`.
pub fn expected_payoff(n: usize, downlink: bool, q: &[f64], table: &PayoffTable) -> f64 {
    let cells = table.num_cells();
    let own = usize::from(downlink) << n;
    (0..table.num_profiles())
        .filter(|idx| idx & (1 << n) == own)
        .map(|idx| {
            let prob: f64 = (0..cells)
                .filter(|&m| m != n)
                .map(|m| mode_prob(q[m], idx >> m & 1 == 1))
                .product();
            table.get(n, idx) * prob
        })
        .sum()
}

/// Indifference gap `F_n(q) = E[W_n | DL] - E[W_n | UL]`.
pub fn indifference_residual(n: usize, q: &[f64], table: &PayoffTable) -> f64 {
    expected_payoff(n, true, q, table) - expected_payoff(n, false, q, table)
}

/// All `F_n(q)` in one pass over the table.
pub fn residuals(table: &PayoffTable, q: &[f64]) -> Vec<f64> {
    let cells = table.num_cells();
    let mut out = vec![0.0; cells];
    let mut factors = vec![0.0; cells];
    let mut suffix = vec![1.0; cells + 1];
    for idx in 0..table.num_profiles() {
        for m in 0..cells {
            factors[m] = mode_prob(q[m], idx >> m & 1 == 1);
        }
        for m in (0..cells).rev() {
            suffix[m] = suffix[m + 1] * factors[m];
        }
        let row = table.profile(idx);
        let mut prefix = 1.0;
        for n in 0..cells {
            let others = prefix * suffix[n + 1];
            if idx >> n & 1 == 1 {
                out[n] += row[n] * others;
            } else {
                out[n] -= row[n] * others;
            }
            prefix *= factors[n];
        }
    }
    out
}

/// `J[n][m] = dF_n / dq_m`, exact by multilinearity.
pub fn jacobian(table: &PayoffTable, q: &[f64]) -> Vec<Vec<f64>> {
    let cells = table.num_cells();
    let mut jac = vec![vec![0.0; cells]; cells];
    let mut probe = q.to_vec();
    for m in 0..cells {
        probe[m] = 1.0;
        let hi = residuals(table, &probe);
        probe[m] = 0.0;
        let lo = residuals(table, &probe);
        probe[m] = q[m];
        for n in 0..cells {
            jac[n][m] = if n == m { 0.0 } else { hi[n] - lo[n] };
        }
    }
    jac
}

/// Expected network payoff `E_q[sum_n W_n(z)]`.
pub fn social_welfare(table: &PayoffTable, q: &[f64]) -> f64 {
    let cells = table.num_cells();
    (0..table.num_profiles())
        .map(|idx| {
            let prob: f64 = (0..cells)
                .map(|m| mode_prob(q[m], idx >> m & 1 == 1))
                .product();
            prob * table.network_value(idx)
        })
        .sum()
}

/// Gain each player could obtain by switching to its best pure action.
pub fn best_response_gaps(table: &PayoffTable, q: &[f64]) -> Vec<f64> {
    (0..table.num_cells())
        .map(|n| {
            let dl = expected_payoff(n, true, q, table);
            let ul = expected_payoff(n, false, q, table);
            dl.max(ul) - (q[n] * dl + (1.0 - q[n]) * ul)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverOptions {
    /// Starting points: the uniform point, low-index pure corners, then
    /// uniform random points.
    pub starts: usize,
    /// Bound on the indifference gaps of an accepted point.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Solutions closer than this in max-norm are merged.
    pub distinct_threshold: f64,
    /// Additional random starts tried only when the regular ones find nothing.
    pub fallback_starts: usize,
    pub seed: u64,
    /// Overrides the generated start list when non-empty.
    pub initial_points: Vec<Vec<f64>>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            starts: 32,
            tolerance: 1e-7,
            max_iterations: 100,
            distinct_threshold: 1e-4,
            fallback_starts: 256,
            seed: 0x5eed,
            initial_points: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub q: MixedStrategy,
    /// `F_n(q)` of every cell.
    pub residuals: Vec<f64>,
    /// Cells playing a pure strategy.
    pub boundary_flags: Vec<bool>,
    pub social_welfare: f64,
    pub solver_starts_used: usize,
    pub distinct_solutions: usize,
}

/// Checks the boundary-aware equilibrium conditions.
pub fn satisfies_equilibrium(q: &[f64], f: &[f64], tol: f64) -> bool {
    q.iter().zip(f).all(|(&qn, &fn_)| {
        if qn >= 1.0 {
            fn_ >= -tol
        } else if qn <= 0.0 {
            fn_ <= tol
        } else {
            fn_.abs() <= tol
        }
    })
}

const SNAP: f64 = 1e-9;

fn snap(q: &mut [f64]) {
    for v in q.iter_mut() {
        if *v <= SNAP {
            *v = 0.0;
        } else if *v >= 1.0 - SNAP {
            *v = 1.0;
        }
    }
}

/// Natural map `G(q) = q - clamp(q + F(q) / scale)`; zero exactly at equilibria.
fn natural_map(q: &[f64], f: &[f64], scale: f64) -> Vec<f64> {
    q.iter()
        .zip(f)
        .map(|(&qn, &fn_)| qn - (qn + fn_ / scale).clamp(0.0, 1.0))
        .collect()
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            if factor != 0.0 {
                for k in col..n {
                    a[row][k] -= factor * a[col][k];
                }
                b[row] -= factor * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = ((row + 1)..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Some(x)
}

/// Semismooth Newton on the natural map with Armijo backtracking.
fn newton(table: &PayoffTable, start: &[f64], opts: &SolverOptions, scale: f64) -> Vec<f64> {
    let cells = table.num_cells();
    let mut q: Vec<f64> = start.iter().map(|v| v.clamp(0.0, 1.0)).collect();
    for _ in 0..opts.max_iterations {
        let f = residuals(table, &q);
        let mut snapped = q.clone();
        snap(&mut snapped);
        if satisfies_equilibrium(&snapped, &residuals(table, &snapped), opts.tolerance) {
            return snapped;
        }
        let g = natural_map(&q, &f, scale);
        let merit = norm2(&g);

        // rows whose projection is clamped move straight to the bound
        let free: Vec<usize> = (0..cells)
            .filter(|&n| {
                let t = q[n] + f[n] / scale;
                t > 0.0 && t < 1.0
            })
            .collect();
        let mut step = vec![0.0; cells];
        for n in 0..cells {
            step[n] = -g[n];
        }
        if !free.is_empty() {
            let jac = jacobian(table, &q);
            let a: Vec<Vec<f64>> = free
                .iter()
                .map(|&r| free.iter().map(|&c| jac[r][c]).collect())
                .collect();
            let rhs: Vec<f64> = free
                .iter()
                .map(|&r| {
                    let pinned: f64 = (0..cells)
                        .filter(|c| !free.contains(c))
                        .map(|c| jac[r][c] * step[c])
                        .sum();
                    -f[r] - pinned
                })
                .collect();
            if let Some(dx) = solve_linear(a, rhs) {
                for (&r, d) in free.iter().zip(dx) {
                    step[r] = d;
                }
            }
        }

        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial: Vec<f64> = q
                .iter()
                .zip(&step)
                .map(|(qn, d)| (qn + t * d).clamp(0.0, 1.0))
                .collect();
            let trial_merit = norm2(&natural_map(&trial, &residuals(table, &trial), scale));
            if trial_merit <= (1.0 - 1e-4 * t) * merit {
                q = trial;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            // projected fixed-point step as a last resort
            let trial: Vec<f64> = q.iter().zip(&g).map(|(qn, gn)| qn - gn).collect();
            if norm2(&natural_map(&trial, &residuals(table, &trial), scale)) < merit {
                q = trial;
            } else {
                break;
            }
        }
    }
    snap(&mut q);
    q
}

/// Gauss-Seidel best-response sweeps starting from `q`.
fn best_response_polish(table: &PayoffTable, q: &[f64], tol: f64) -> Vec<f64> {
    let mut q = q.to_vec();
    for _ in 0..4 * table.num_cells() + 4 {
        let mut changed = false;
        for n in 0..table.num_cells() {
            let f = indifference_residual(n, &q, table);
            let target = if f > tol {
                1.0
            } else if f < -tol {
                0.0
            } else {
                q[n]
            };
            if target != q[n] {
                q[n] = target;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    q
}

/// Modes fixed by iterated elimination of strictly dominated actions;
/// `None` for cells where neither action dominates.
pub fn eliminate_dominated(table: &PayoffTable) -> Vec<Option<bool>> {
    let cells = table.num_cells();
    let mut fixed: Vec<Option<bool>> = vec![None; cells];
    let consistent = |idx: usize, fixed: &[Option<bool>]| {
        fixed
            .iter()
            .enumerate()
            .all(|(m, f)| f.is_none_or(|dl| (idx >> m & 1 == 1) == dl))
    };
    loop {
        let mut changed = false;
        for n in 0..cells {
            if fixed[n].is_some() {
                continue;
            }
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for idx in (0..table.num_profiles()).filter(|idx| idx & (1 << n) == 0) {
                if !consistent(idx, &fixed) {
                    continue;
                }
                let d = table.get(n, idx | 1 << n) - table.get(n, idx);
                lo = lo.min(d);
                hi = hi.max(d);
            }
            if lo > 0.0 {
                fixed[n] = Some(true);
                changed = true;
            } else if hi < 0.0 {
                fixed[n] = Some(false);
                changed = true;
            }
        }
        if !changed {
            return fixed;
        }
    }
}

/// Largest number of undominated cells handled by support enumeration.
const SUPPORT_ENUMERATION_LIMIT: usize = 10;

/// Plain Newton on `F(q) = 0` for a game where every player mixes.
fn solve_interior(table: &PayoffTable, start: &[f64], opts: &SolverOptions) -> Option<Vec<f64>> {
    let mut q = start.to_vec();
    let mut f = residuals(table, &q);
    for _ in 0..opts.max_iterations {
        let merit = norm2(&f);
        if f.iter().all(|v| v.abs() <= 0.1 * opts.tolerance) {
            break;
        }
        let dx = solve_linear(jacobian(table, &q), f.iter().map(|v| -v).collect())?;
        let mut t = 1.0;
        loop {
            let trial: Vec<f64> = q.iter().zip(&dx).map(|(a, d)| a + t * d).collect();
            let ft = residuals(table, &trial);
            if norm2(&ft) <= (1.0 - 1e-4 * t) * merit {
                q = trial;
                f = ft;
                break;
            }
            t *= 0.5;
            if t < 1e-10 {
                return None;
            }
        }
    }
    q.iter().all(|v| (0.0..=1.0).contains(v)).then_some(q)
}

/// Equilibria with the smallest mixing support, after removing strictly
/// dominated actions. Empty when too many cells remain undecided.
fn support_enumeration(table: &PayoffTable, opts: &SolverOptions) -> Vec<Vec<f64>> {
    let cells = table.num_cells();
    let fixed = eliminate_dominated(table);
    let free: Vec<usize> = (0..cells).filter(|&n| fixed[n].is_none()).collect();
    if free.len() > SUPPORT_ENUMERATION_LIMIT {
        return Vec::new();
    }
    let base: Vec<f64> = fixed.iter().map(|f| f.map_or(0.0, |dl| f64::from(u8::from(dl)))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut found = Vec::new();
    // a single mixing cell needs an exactly flat payoff gap, which the
    // pure profiles already cover
    for size in (0..=free.len()).filter(|&s| s != 1) {
        for mask in (0usize..1 << free.len()).filter(|m| m.count_ones() as usize == size) {
            let mixed: Vec<usize> = (0..free.len()).filter(|i| mask >> i & 1 == 1).map(|i| free[i]).collect();
            let pure: Vec<usize> = (0..free.len()).filter(|i| mask >> i & 1 == 0).map(|i| free[i]).collect();
            for background in 0usize..1 << pure.len() {
                let mut q = base.clone();
                for (b, &n) in pure.iter().enumerate() {
                    q[n] = (background >> b & 1) as f64;
                }
                let fixed_idx: usize = (0..cells).filter(|&m| q[m] == 1.0 && !mixed.contains(&m)).map(|m| 1 << m).sum();
                let candidates = if mixed.is_empty() {
                    vec![q.clone()]
                } else {
                    let sub = PayoffTable::from_fn(mixed.len(), table.flavor(), |i, z| {
                        let idx = mixed
                            .iter()
                            .enumerate()
                            .filter(|&(j, _)| z.is_downlink(j))
                            .fold(fixed_idx, |acc, (_, &m)| acc | 1 << m);
                        table.get(mixed[i], idx)
                    })
                    .expect("subgame has at least one player");
                    let mut starts = vec![vec![0.5; mixed.len()]];
                    starts.extend((0..4).map(|_| (0..mixed.len()).map(|_| rng.gen::<f64>()).collect()));
                    starts
                        .iter()
                        .filter_map(|s| solve_interior(&sub, s, opts))
                        .map(|qs| {
                            let mut full = q.clone();
                            for (&m, v) in mixed.iter().zip(qs) {
                                full[m] = v;
                            }
                            snap(&mut full);
                            full
                        })
                        .collect()
                };
                for cand in candidates {
                    if satisfies_equilibrium(&cand, &residuals(table, &cand), opts.tolerance) {
                        found.push(cand);
                    }
                }
            }
        }
        if !found.is_empty() {
            break;
        }
    }
    found
}

fn start_points(cells: usize, opts: &SolverOptions) -> Vec<Vec<f64>> {
    if !opts.initial_points.is_empty() {
        return opts.initial_points.clone();
    }
    let mut points = vec![vec![0.5; cells]];
    let corners = (1usize << cells).min(8).min(opts.starts.saturating_sub(1));
    for idx in 0..corners {
        points.push((0..cells).map(|m| (idx >> m & 1) as f64).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    while points.len() < opts.starts.max(1) {
        points.push((0..cells).map(|_| rng.gen::<f64>()).collect());
    }
    points
}

/// Finds a mixed-strategy Nash equilibrium, selecting the one with the
/// largest expected network payoff among the distinct solutions found.
pub fn solve_msne(table: &PayoffTable, opts: &SolverOptions) -> Result<EquilibriumReport> {
    let cells = table.num_cells();
    let scale = table.max_abs().max(f64::MIN_POSITIVE);
    let tol = opts.tolerance;
    let mut solutions: Vec<Vec<f64>> = Vec::new();
    let mut used = 0;

    let consider = |q: Vec<f64>, solutions: &mut Vec<Vec<f64>>| -> bool {
        let f = residuals(table, &q);
        let ok = satisfies_equilibrium(&q, &f, tol);
        if ok
            && solutions.iter().all(|s| {
                s.iter().zip(&q).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
                    > opts.distinct_threshold
            })
        {
            solutions.push(q);
        }
        ok
    };

    let run_start = |start: &[f64], solutions: &mut Vec<Vec<f64>>| {
        let q = newton(table, start, opts, scale);
        if !consider(q.clone(), solutions) {
            let polished = best_response_polish(table, &q, tol);
            if !consider(polished.clone(), solutions) {
                let again = newton(table, &polished, opts, scale);
                consider(again, solutions);
            }
        }
    };

    for start in start_points(cells, opts) {
        run_start(&start, &mut solutions);
        used += 1;
    }
    if solutions.is_empty() {
        for q in support_enumeration(table, opts) {
            consider(q, &mut solutions);
        }
    }
    if solutions.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e37_79b9_7f4a_7c15);
        for _ in 0..opts.fallback_starts {
            let start: Vec<f64> = (0..cells).map(|_| rng.gen::<f64>()).collect();
            run_start(&start, &mut solutions);
            used += 1;
            if !solutions.is_empty() {
                break;
            }
        }
    }

    let interior = |q: &[f64]| q.iter().filter(|&&v| v > 0.0 && v < 1.0).count();
    let mut best: Option<(f64, &Vec<f64>)> = None;
    for q in &solutions {
        let w = social_welfare(table, q);
        let better = match best {
            None => true,
            Some((bw, bq)) => {
                let tie = 1e-12 * bw.abs().max(1.0);
                w > bw + tie || ((w - bw).abs() <= tie && interior(q) < interior(bq))
            }
        };
        if better {
            best = Some((w, q));
        }
    }
    let (welfare, q) = best.ok_or(Error::EquilibriumNotFound)?;
    Ok(EquilibriumReport {
        q: MixedStrategy(q.clone()),
        residuals: residuals(table, q),
        boundary_flags: q.iter().map(|&v| v == 0.0 || v == 1.0).collect(),
        social_welfare: welfare,
        solver_starts_used: used,
        distinct_solutions: solutions.len(),
    })
}

/// Draws `num_slots` independent mode profiles from `q`.
pub fn sample_modes<R: Rng + ?Sized>(q: &[f64], num_slots: usize, rng: &mut R) -> Vec<ModeVector> {
    (0..num_slots)
        .map(|_| ModeVector::new(q.iter().map(|&qn| rng.gen::<f64>() < qn).collect()))
        .collect()
}

/// Scalars exchanged between cells to evaluate the game payoffs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverheadReport {
    pub flavor: PayoffFlavor,
    pub scalars_per_frame_sip: u64,
    pub scalars_per_frame_app_fast: u64,
    pub scalars_per_window_app_slow: u64,
}

impl OverheadReport {
    /// Per-frame count of the requested flavor.
    pub fn per_frame(&self) -> u64 {
        match self.flavor {
            PayoffFlavor::Sip => self.scalars_per_frame_sip,
            PayoffFlavor::App => self.scalars_per_frame_app_fast,
        }
    }
}

/// Counts the shared scalars: SIP needs `B`, `H`, `U`, both weights and the
/// powers every frame; APP needs only the direct gains, weights and powers,
/// plus four reference-interference values per ordered cell pair at the
/// slow rate.
pub fn signaling_overhead(flavor: PayoffFlavor, cells: u64, users_per_cell: u64) -> OverheadReport {
    let users = cells * users_per_cell;
    let weights_and_powers = 2 * users + users;
    let b = cells * cells.saturating_sub(1) / 2;
    let h = cells * users;
    let u = users * users.saturating_sub(1) / 2;
    OverheadReport {
        flavor,
        scalars_per_frame_sip: b + h + u + weights_and_powers,
        scalars_per_frame_app_fast: users + weights_and_powers,
        scalars_per_window_app_slow: 4 * cells * cells.saturating_sub(1),
    }
}
