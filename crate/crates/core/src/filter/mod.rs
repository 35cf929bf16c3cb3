//! Iterated degree filtering over dyadic vertex blocks.
//!
//! The vertex range `[n0]` is cut into blocks `N_t = (n_t, n_{t-1}]` with
//! `n_t = n0 / 2^t`. The filtered sets are `V_1 = N_1` and, for `t >= 2`,
//! the vertices of `N_t` whose degree into `V_{t-1}` clears
//! `|V_{t-1}|/2 + k_{t+2} - 2 sqrt(|V_{t-1}|)`.
//!
//! [`vt_membership`] answers `v in V_t` by recursion, holding only a constant
//! number of counters per level. [`reference_filter_trace`] materialises
//! every `V_t` directly and serves as its test oracle and as the fast path
//! of the tabulated pipeline.

pub(crate) mod membership;
mod reference;
mod schedule;

pub use membership::{membership_frame, membership_peak_bits, vt_membership};
pub use reference::{check_against_reference, reference_filter_trace, EquivalenceReport, FilterSetTrace};
pub use schedule::{clears_threshold, log_star, DyadicBlocks, FilterSchedule, ScheduleGuard};
