//! Wrap-around hexagonal deployment, user drops and path-loss channel gains.
//!
//! Base stations sit on a hexagonal lattice with inter-site distance
//! `sqrt(3) * cell_side`. When the number of cells is a valid hexagonal
//! cluster size (`i^2 + i*j + j^2`: 1, 3, 4, 7, 12, 13, ...), the cluster is
//! wrapped onto a torus by its six translated images, so that every cell in
//! the seven-cell layout sees a full ring of six interferers at equal
//! distance. Other cell counts fall back to the plain plane.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Reference distance of the path-loss law, in meters.
pub const REFERENCE_DISTANCE: f64 = 1.0;

/// Path-loss exponent (line of sight).
pub const PATH_LOSS_EXPONENT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Same direction, given length.
    pub fn scale_to(self, len: f64) -> Point {
        let n = self.norm();
        Point::new(self.x * len / n, self.y * len / n)
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point::new(x, y)
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TopologyConfig {
    pub num_cells: usize,
    pub users_per_cell: usize,
    /// Hexagon side (circumradius) in meters.
    pub cell_side: f64,
    /// Gains are clamped at this distance, and users are never dropped closer
    /// than this to their serving base station.
    pub min_link_distance: f64,
    pub rng_seed: u64,
    pub wrap_around: bool,
}

impl Default for TopologyConfig {
    fn default() -> Self {
        Self {
            num_cells: 7,
            users_per_cell: 15,
            cell_side: 333.0,
            min_link_distance: 10.0,
            rng_seed: 0,
            wrap_around: true,
        }
    }
}

impl TopologyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_cells == 0 {
            return Err(Error::InvalidConfig("num_cells must be >= 1".into()));
        }
        if self.users_per_cell == 0 {
            return Err(Error::InvalidConfig("users_per_cell must be >= 1".into()));
        }
        if !(self.cell_side > 0.0) {
            return Err(Error::InvalidConfig("cell_side must be > 0".into()));
        }
        if !(self.min_link_distance > 0.0) {
            return Err(Error::InvalidConfig("min_link_distance must be > 0".into()));
        }
        // the exclusion disc must leave room inside the hexagon's incircle
        if self.min_link_distance >= self.inter_site_distance() / 2.0 {
            return Err(Error::InvalidConfig(
                "min_link_distance must be smaller than the hexagon inradius".into(),
            ));
        }
        Ok(())
    }

    pub fn inter_site_distance(&self) -> f64 {
        3f64.sqrt() * self.cell_side
    }
}

/// Base-station centers and wrap translations of a hexagonal layout.
#[derive(Debug, Clone, PartialEq)]
pub struct HexLayout {
    pub centers: Vec<Point>,
    /// Cluster images used for wrap-around; empty when the plane is not wrapped.
    pub translations: Vec<Point>,
}

/// Finds `(i, j)` with `i >= 1`, `j <= i` and `i^2 + i*j + j^2 == n`.
fn cluster_shape(n: usize) -> Option<(i64, i64)> {
    let n = n as i64;
    (1..=n).find_map(|i| (0..=i).find(|&j| i * i + i * j + j * j == n).map(|j| (i, j)))
}

/// Axial lattice coordinates to the plane (neighbors at 0°, 60°, ...).
fn lattice_point(a: i64, b: i64, spacing: f64) -> Point {
    Point::new(
        spacing * (a as f64 + b as f64 / 2.0),
        spacing * (b as f64 * 3f64.sqrt() / 2.0),
    )
}

impl HexLayout {
    pub fn new(cfg: &TopologyConfig) -> Self {
        let n = cfg.num_cells;
        let spacing = cfg.inter_site_distance();
        let shape = if cfg.wrap_around { cluster_shape(n) } else { None };

        // spiral order: by lattice norm, then by angle
        let radius = (n as f64).sqrt().ceil() as i64 + 2;
        let mut candidates: Vec<(i64, i64)> = (-radius..=radius)
            .flat_map(|a| (-radius..=radius).map(move |b| (a, b)))
            .collect();
        let angle = |&(a, b): &(i64, i64)| {
            let p = lattice_point(a, b, 1.0);
            let t = p.y.atan2(p.x);
            if t < -1e-12 {
                t + std::f64::consts::TAU
            } else {
                t
            }
        };
        candidates.sort_by(|l, r| {
            let nl = l.0 * l.0 + l.0 * l.1 + l.1 * l.1;
            let nr = r.0 * r.0 + r.0 * r.1 + r.1 * r.1;
            nl.cmp(&nr).then(angle(l).total_cmp(&angle(r)))
        });

        let mut chosen: Vec<(i64, i64)> = Vec::with_capacity(n);
        match shape {
            Some((i, j)) => {
                let nn = n as i64;
                // (a, b) lies in the sublattice spanned by (i, j) and its 60° rotation
                let in_sublattice =
                    |a: i64, b: i64| ((i + j) * a + j * b) % nn == 0 && (i * b - j * a) % nn == 0;
                for &(a, b) in &candidates {
                    if chosen.len() == n {
                        break;
                    }
                    if chosen.iter().all(|&(ca, cb)| !in_sublattice(a - ca, b - cb)) {
                        chosen.push((a, b));
                    }
                }
            }
            None => chosen.extend(candidates.iter().take(n)),
        }

        let centers = chosen.iter().map(|&(a, b)| lattice_point(a, b, spacing)).collect();
        let translations = match shape {
            Some((i, j)) => {
                let mut v = (i, j);
                let mut out = Vec::with_capacity(6);
                for _ in 0..6 {
                    out.push(lattice_point(v.0, v.1, spacing));
                    v = (-v.1, v.0 + v.1);
                }
                out
            }
            None => Vec::new(),
        };
        Self {
            centers,
            translations,
        }
    }

    /// Distance under the wrap: the minimum over the cluster images.
    pub fn distance(&self, a: Point, b: Point) -> f64 {
        wrapped(&self.translations, a, b)
    }
}

fn wrapped(translations: &[Point], a: Point, b: Point) -> f64 {
    let d = a - b;
    translations
        .iter()
        .map(|&t| (d + t).norm())
        .fold(d.norm(), f64::min)
}

/// Distance between two points of the wrapped layout described by `cfg`.
pub fn wrapped_distance(a: Point, b: Point, cfg: &TopologyConfig) -> f64 {
    HexLayout::new(cfg).distance(a, b)
}

/// Whether `p` lies in the hexagon of side `side` centered at `center`
/// (vertices at 30° + k·60°).
pub fn in_hexagon(p: Point, center: Point, side: f64) -> bool {
    let d = p - center;
    let half = 3f64.sqrt() * side / 2.0 * (1.0 + 1e-12);
    let s = 3f64.sqrt() / 2.0;
    d.x.abs() <= half && (0.5 * d.x + s * d.y).abs() <= half && (0.5 * d.x - s * d.y).abs() <= half
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DeploymentRepr", into = "DeploymentRepr")]
pub struct Deployment {
    pub bs_positions: Vec<Point>,
    pub user_positions: Vec<Point>,
    pub serving_cell: Vec<usize>,
    /// Zero-based user block of every user.
    pub block_of_user: Vec<usize>,
    pub translations: Vec<Point>,
    users_per_cell: usize,
    cell_users: Vec<Vec<usize>>,
    /// `block_user[m * K + b]`: the user of cell `m` on block `b`.
    block_user: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct DeploymentRepr {
    bs_positions: Vec<Point>,
    user_positions: Vec<Point>,
    serving_cell: Vec<usize>,
    block_of_user: Vec<usize>,
    #[serde(default)]
    translations: Vec<Point>,
}

impl TryFrom<DeploymentRepr> for Deployment {
    type Error = Error;

    fn try_from(r: DeploymentRepr) -> Result<Self> {
        Deployment::new(
            r.bs_positions,
            r.user_positions,
            r.serving_cell,
            r.block_of_user,
            r.translations,
        )
    }
}

impl From<Deployment> for DeploymentRepr {
    fn from(d: Deployment) -> Self {
        Self {
            bs_positions: d.bs_positions,
            user_positions: d.user_positions,
            serving_cell: d.serving_cell,
            block_of_user: d.block_of_user,
            translations: d.translations,
        }
    }
}

impl Deployment {
    /// Assembles a deployment and checks that every cell serves the same
    /// number of users with one user per block.
    pub fn new(
        bs_positions: Vec<Point>,
        user_positions: Vec<Point>,
        serving_cell: Vec<usize>,
        block_of_user: Vec<usize>,
        translations: Vec<Point>,
    ) -> Result<Self> {
        let n = bs_positions.len();
        let total = user_positions.len();
        if n == 0 || total == 0 || !total.is_multiple_of(n) {
            return Err(Error::InvalidConfig(format!(
                "{total} users cannot be split evenly over {n} cells"
            )));
        }
        if serving_cell.len() != total || block_of_user.len() != total {
            return Err(Error::InvalidConfig("user maps have wrong length".into()));
        }
        let k = total / n;
        let mut cell_users = vec![Vec::with_capacity(k); n];
        let mut block_user = vec![usize::MAX; n * k];
        for (user, (&cell, &block)) in serving_cell.iter().zip(&block_of_user).enumerate() {
            if cell >= n || block >= k {
                return Err(Error::InvalidConfig(format!("user {user}: bad cell or block")));
            }
            if block_user[cell * k + block] != usize::MAX {
                return Err(Error::InvalidConfig(format!(
                    "cell {cell} has two users on block {block}"
                )));
            }
            block_user[cell * k + block] = user;
            cell_users[cell].push(user);
        }
        if cell_users.iter().any(|u| u.len() != k) {
            return Err(Error::InvalidConfig("cells serve unequal user counts".into()));
        }
        Ok(Self {
            bs_positions,
            user_positions,
            serving_cell,
            block_of_user,
            translations,
            users_per_cell: k,
            cell_users,
            block_user,
        })
    }

    pub fn num_cells(&self) -> usize {
        self.bs_positions.len()
    }

    pub fn users_per_cell(&self) -> usize {
        self.users_per_cell
    }

    pub fn num_users(&self) -> usize {
        self.user_positions.len()
    }

    /// Users served by `cell`.
    pub fn cell_users(&self, cell: usize) -> &[usize] {
        &self.cell_users[cell]
    }

    /// The user of `cell` sharing the block of `user`.
    pub fn co_block_user(&self, cell: usize, user: usize) -> usize {
        self.block_user[cell * self.users_per_cell + self.block_of_user[user]]
    }

    pub fn distance(&self, a: Point, b: Point) -> f64 {
        wrapped(&self.translations, a, b)
    }
}

pub fn generate_deployment(cfg: &TopologyConfig) -> Deployment {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    generate_deployment_with_rng(cfg, &mut rng)
}

/// Drops `K` users uniformly in every hexagon, outside the exclusion disc of
/// the serving base station. User `n*K + i` is the `i`-th user of cell `n`
/// and occupies block `i`.
pub fn generate_deployment_with_rng<R: Rng + ?Sized>(
    cfg: &TopologyConfig,
    rng: &mut R,
) -> Deployment {
    let layout = HexLayout::new(cfg);
    let k = cfg.users_per_cell;
    let half_w = cfg.inter_site_distance() / 2.0;
    let mut users = Vec::with_capacity(cfg.num_cells * k);
    let mut serving = Vec::with_capacity(cfg.num_cells * k);
    let mut blocks = Vec::with_capacity(cfg.num_cells * k);
    for (cell, &center) in layout.centers.iter().enumerate() {
        for block in 0..k {
            let p = loop {
                let offset = Point::new(
                    rng.gen_range(-half_w..=half_w),
                    rng.gen_range(-cfg.cell_side..=cfg.cell_side),
                );
                if offset.norm() >= cfg.min_link_distance
                    && in_hexagon(offset, Point::default(), cfg.cell_side)
                {
                    break center + offset;
                }
            };
            users.push(p);
            serving.push(cell);
            blocks.push(block);
        }
    }
    Deployment::new(layout.centers, users, serving, blocks, layout.translations)
        .expect("generated deployment is consistent")
}

/// Inverse-square path loss relative to 1 m, clamped at `min_distance`.
pub fn path_gain(distance: f64, min_distance: f64) -> f64 {
    (REFERENCE_DISTANCE / distance.max(min_distance)).powi(PATH_LOSS_EXPONENT)
}

/// Linear power gains: `h` is cell × user, `u` user × user, `b` cell × cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSet {
    #[serde(rename = "H")]
    pub h: Matrix,
    #[serde(rename = "U")]
    pub u: Matrix,
    #[serde(rename = "B")]
    pub b: Matrix,
}

impl ChannelSet {
    pub fn num_cells(&self) -> usize {
        self.h.rows()
    }

    pub fn num_users(&self) -> usize {
        self.h.cols()
    }
}

/// Self-gains on the diagonals of `u` and `b` are left at zero.
pub fn generate_channels(dep: &Deployment, cfg: &TopologyConfig) -> ChannelSet {
    let gain = |a: Point, b: Point| path_gain(dep.distance(a, b), cfg.min_link_distance);
    let n = dep.num_cells();
    let nk = dep.num_users();
    let h = Matrix::from_fn(n, nk, |c, k| gain(dep.bs_positions[c], dep.user_positions[k]));
    let mut u = Matrix::zeros(nk, nk);
    for i in 0..nk {
        for j in (i + 1)..nk {
            let g = gain(dep.user_positions[i], dep.user_positions[j]);
            u[(i, j)] = g;
            u[(j, i)] = g;
        }
    }
    let mut b = Matrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let g = gain(dep.bs_positions[i], dep.bs_positions[j]);
            b[(i, j)] = g;
            b[(j, i)] = g;
        }
    }
    ChannelSet { h, u, b }
}

/// Long-term per-cell-pair channel means.
///
/// `mean_h[(a, b)]` is the mean gain from base station `a` to the users of
/// cell `b`; `mean_u[(a, b)]` the mean gain between co-block users of cells
/// `a` and `b`; `mean_b` the base-to-base gains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelStats {
    pub mean_h: Matrix,
    pub mean_u: Matrix,
    pub mean_b: Matrix,
    pub window_frames: usize,
}

/// Streaming form of [`estimate_channel_stats`].
#[derive(Debug, Clone)]
pub struct ChannelStatsAccumulator {
    sum_h: Matrix,
    sum_u: Matrix,
    sum_b: Matrix,
    samples: usize,
}

impl ChannelStatsAccumulator {
    pub fn new(num_cells: usize) -> Self {
        Self {
            sum_h: Matrix::zeros(num_cells, num_cells),
            sum_u: Matrix::zeros(num_cells, num_cells),
            sum_b: Matrix::zeros(num_cells, num_cells),
            samples: 0,
        }
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn add(&mut self, ch: &ChannelSet, dep: &Deployment) -> Result<()> {
        let n = dep.num_cells();
        if self.sum_h.rows() != n || ch.h.shape() != (n, dep.num_users()) {
            return Err(Error::SampleShapeMismatch);
        }
        let k = dep.users_per_cell() as f64;
        for a in 0..n {
            for b in 0..n {
                let users = dep.cell_users(b);
                self.sum_h[(a, b)] += users.iter().map(|&u| ch.h[(a, u)]).sum::<f64>() / k;
                if a != b {
                    self.sum_u[(a, b)] += users
                        .iter()
                        .map(|&u| ch.u[(dep.co_block_user(a, u), u)])
                        .sum::<f64>()
                        / k;
                    self.sum_b[(a, b)] += ch.b[(a, b)];
                }
            }
        }
        self.samples += 1;
        Ok(())
    }

    pub fn finish(&self) -> Result<ChannelStats> {
        if self.samples == 0 {
            return Err(Error::NoChannelSamples);
        }
        let s = self.samples as f64;
        Ok(ChannelStats {
            mean_h: self.sum_h.map(|v| v / s),
            mean_u: self.sum_u.map(|v| v / s),
            mean_b: self.sum_b.map(|v| v / s),
            window_frames: self.samples,
        })
    }
}

pub fn estimate_channel_stats(samples: &[ChannelSet], dep: &Deployment) -> Result<ChannelStats> {
    let mut acc = ChannelStatsAccumulator::new(dep.num_cells());
    for ch in samples {
        acc.add(ch, dep)?;
    }
    acc.finish()
}
