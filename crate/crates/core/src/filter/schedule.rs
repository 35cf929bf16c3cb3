use std::fmt;
use std::ops::RangeInclusive;

use num_rational::Ratio;
use serde::Serialize;

use crate::graph::Vertex;
use crate::{Error, Result};

/// Binary iterated logarithm: 0 for `x <= 1`, else `1 + log_star(log2 x)`.
pub fn log_star(x: f64) -> u32 {
    let mut x = x;
    let mut count = 0;
    while x > 1.0 {
        x = x.log2();
        count += 1;
    }
    count
}

/// The vertex blocks `N_t = (n_t, n_{t-1}]` for `1 <= t <= log2(n0)`,
/// where `n0` is the smallest power of two that is at least `n / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DyadicBlocks {
    n: usize,
    n0: usize,
}

impl DyadicBlocks {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("dyadic blocks need n >= 2, got {n}")));
        }
        Ok(Self { n, n0: n.div_ceil(2).next_power_of_two() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    /// Number of non-empty blocks, `log2(n0)`.
    pub fn levels(&self) -> u32 {
        self.n0.trailing_zeros()
    }

    /// `n_t = n0 / 2^t`.
    pub fn n_t(&self, t: u32) -> usize {
        self.n0 >> t
    }

    /// `N_t` as an inclusive vertex range. Requires `1 <= t <= levels()`.
    pub fn block(&self, t: u32) -> RangeInclusive<Vertex> {
        debug_assert!(t >= 1 && t <= self.levels());
        self.n_t(t) + 1..=self.n_t(t - 1)
    }

    /// `v in N_t`; false for `t` outside `1..=levels()`.
    pub fn contains(&self, t: u32, v: Vertex) -> bool {
        t >= 1 && t <= self.levels() && self.n_t(t) < v && v <= self.n_t(t - 1)
    }
}

/// Why a `(n, k)` point cannot run the filtering schedule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScheduleGuard {
    /// The derived round count reaches `log2(n0)`, so `N_T` would be empty.
    RoundsNotBelowLevels { rounds: u32, levels: u32 },
    /// `k / 2^(T+3) < 1`: the filtered set is not expected to keep a single
    /// clique vertex.
    FilteringFloorBelowOne { k: usize, rounds: u32 },
    /// An explicit round count outside `1..=levels`.
    RoundsOutOfRange { rounds: u32, levels: u32 },
}

impl fmt::Display for ScheduleGuard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleGuard::RoundsNotBelowLevels { rounds, levels } => {
                write!(f, "T = {rounds} is not below log2(n0) = {levels}")
            }
            ScheduleGuard::FilteringFloorBelowOne { k, rounds } => {
                write!(f, "k / 2^(T+3) = {k} / 2^{} < 1", rounds + 3)
            }
            ScheduleGuard::RoundsOutOfRange { rounds, levels } => {
                write!(f, "round count {rounds} outside 1..={levels}")
            }
        }
    }
}

/// Parameters of the filter for one `(n, k)` point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FilterSchedule {
    blocks: DyadicBlocks,
    k: usize,
    rounds: u32,
    derived: bool,
}

fn check_nk(n: usize, k: usize, min_n: usize) -> Result<()> {
    if n < min_n {
        return Err(Error::InvalidParameter(format!("schedule needs n >= {min_n}, got {n}")));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("clique size k = {k} must satisfy 1 <= k <= n = {n}")));
    }
    Ok(())
}

impl FilterSchedule {
    /// Derives `T = 2 (log* n - log* (k / sqrt n)) + 3` and checks that the
    /// point is large enough to run it.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_nk(n, k, 4)?;
        let blocks = DyadicBlocks::new(n)?;
        let ratio = k as f64 / (n as f64).sqrt();
        let rounds = 2 * (log_star(n as f64) - log_star(ratio)) + 3;
        if rounds >= blocks.levels() {
            return Err(Error::ScheduleInfeasible(ScheduleGuard::RoundsNotBelowLevels {
                rounds,
                levels: blocks.levels(),
            }));
        }
        if rounds + 3 >= usize::BITS || k < (1usize << (rounds + 3)) {
            return Err(Error::ScheduleInfeasible(ScheduleGuard::FilteringFloorBelowOne { k, rounds }));
        }
        Ok(Self { blocks, k, rounds, derived: true })
    }

    /// A schedule with an explicit round count `1 <= rounds <= log2(n0)`.
    /// Used to exercise the filter at sizes where the derived schedule is
    /// infeasible.
    pub fn with_rounds(n: usize, k: usize, rounds: u32) -> Result<Self> {
        check_nk(n, k, 2)?;
        let blocks = DyadicBlocks::new(n)?;
        if rounds == 0 || rounds > blocks.levels() {
            return Err(Error::ScheduleInfeasible(ScheduleGuard::RoundsOutOfRange { rounds, levels: blocks.levels() }));
        }
        Ok(Self { blocks, k, rounds, derived: false })
    }

    /// The derived schedule when feasible, otherwise the deepest explicit one.
    pub fn derived_or_deepest(n: usize, k: usize) -> Result<Self> {
        match Self::new(n, k) {
            Err(Error::ScheduleInfeasible(_)) => {
                let levels = DyadicBlocks::new(n)?.levels();
                Self::with_rounds(n, k, levels)
            }
            other => other,
        }
    }

    pub fn n(&self) -> usize {
        self.blocks.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n0(&self) -> usize {
        self.blocks.n0()
    }

    /// Round count `T`.
    pub fn rounds(&self) -> u32 {
        self.rounds
    }

    /// Whether `T` came from the `(n, k)` formula rather than
    /// [`with_rounds`](Self::with_rounds).
    pub fn is_derived(&self) -> bool {
        self.derived
    }

    pub fn blocks(&self) -> &DyadicBlocks {
        &self.blocks
    }

    pub fn n_t(&self, t: u32) -> usize {
        self.blocks.n_t(t)
    }

    /// `k_t = k n0 / (n 2^t)`, exact.
    pub fn k_t(&self, t: u32) -> Ratio<u128> {
        Ratio::new(self.k as u128 * self.n0() as u128, (self.n() as u128) << t)
    }

    pub fn block(&self, t: u32) -> RangeInclusive<Vertex> {
        self.blocks.block(t)
    }

    /// `v in N_t` for `1 <= t <= T`.
    pub fn in_block(&self, t: u32, v: Vertex) -> bool {
        t <= self.rounds && self.blocks.contains(t, v)
    }

    /// `k / 2^(T+3)`, the guaranteed size of `V_T` in the asymptotic regime.
    pub fn filtering_floor(&self) -> f64 {
        self.k as f64 / 2f64.powi(self.rounds as i32 + 3)
    }
}

/// `degree >= size/2 + shift - 2 sqrt(size)`, evaluated in double precision.
/// An empty previous set never clears the bar.
pub fn clears_threshold(degree: usize, size: usize, shift: Ratio<u128>) -> bool {
    if size == 0 {
        return false;
    }
    let s = size as f64;
    let shift = *shift.numer() as f64 / *shift.denom() as f64;
    degree as f64 >= s / 2.0 + shift - 2.0 * s.sqrt()
}
