use super::schedule::{clears_threshold, FilterSchedule};
use crate::graph::{Graph, Vertex};
use crate::ledger::{counter_bits, Register, WorkspaceLedger};
use crate::{Error, Result};

/// Registers held by one `V_t`-membership call. Every call keeps its level
/// and query vertex; levels `t >= 2` add the loop vertex over `N_{t-1}`, the
/// running `|V_{t-1}|` and degree counters, and a double-width scratch
/// register for the fixed-point threshold comparison.
pub fn membership_frame(n: usize, t: u32) -> Vec<Register> {
    let w = counter_bits(n);
    let mut regs = vec![Register::new("level", w), Register::new("v", w)];
    if t >= 2 {
        regs.extend([
            Register::new("u", w),
            Register::new("size_prev", w),
            Register::new("deg_prev", w),
            Register::new("threshold", 2 * w),
        ]);
    }
    regs
}

/// Peak working bits of a depth-`t` membership query: one frame per level.
pub fn membership_peak_bits(n: usize, t: u32) -> u64 {
    let mut ledger = WorkspaceLedger::new();
    let handles: Vec<_> = (1..=t).rev().map(|level| ledger.open_frame(&membership_frame(n, level))).collect();
    for h in handles.into_iter().rev() {
        ledger.close_frame(h).expect("replay frames are nested");
    }
    ledger.peak()
}

/// Decides `v in V_t` for `v in N_t` by recursion on `t`.
///
/// Level 1 accepts every vertex of `N_1`. Level `t >= 2` scans
/// `u in N_{t-1}`, asks level `t - 1` whether `u in V_{t-1}`, and counts both
/// the members and those adjacent to `v`. Nothing is cached: each query
/// recomputes the lower levels from the graph.
pub fn vt_membership(
    g: &Graph,
    schedule: &FilterSchedule,
    t: u32,
    v: Vertex,
    ledger: &mut WorkspaceLedger,
) -> Result<bool> {
    if g.n() != schedule.n() {
        return Err(Error::InvalidParameter(format!(
            "graph has {} vertices but the schedule was built for {}",
            g.n(),
            schedule.n()
        )));
    }
    if t == 0 || t > schedule.rounds() {
        return Err(Error::Precondition(format!("level {t} outside 1..={}", schedule.rounds())));
    }
    if !schedule.in_block(t, v) {
        return Err(Error::Precondition(format!("vertex {v} is not in N_{t}")));
    }
    Ok(member(g, schedule, t, v, ledger))
}

pub(crate) fn member(g: &Graph, schedule: &FilterSchedule, t: u32, v: Vertex, ledger: &mut WorkspaceLedger) -> bool {
    let frame = ledger.open_frame(&membership_frame(g.n(), t));
    let inside = if t == 1 {
        true
    } else {
        let mut size_prev = 0usize;
        let mut deg_prev = 0usize;
        for u in schedule.block(t - 1) {
            if member(g, schedule, t - 1, u, ledger) {
                size_prev += 1;
                deg_prev += g.is_adjacent(u, v) as usize;
            }
        }
        clears_threshold(deg_prev, size_prev, schedule.k_t(t + 2))
    };
    ledger.close_frame(frame).expect("membership frames are nested");
    inside
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{sample_planted, Seed};

    #[test]
    fn level_one_accepts_block() {
        let inst = sample_planted(64, 16, Seed(1)).unwrap();
        let s = FilterSchedule::with_rounds(64, 16, 3).unwrap();
        let mut ledger = WorkspaceLedger::new();
        for v in s.block(1) {
            assert!(vt_membership(inst.graph(), &s, 1, v, &mut ledger).unwrap());
        }
        assert_eq!(ledger.current_bits(), 0);
        assert_eq!(ledger.peak(), membership_peak_bits(64, 1));
    }

    #[test]
    fn complete_graph_passes_level_two() {
        let n = 64;
        let g = Graph::complete(n);
        let s = FilterSchedule::with_rounds(n, n, 2).unwrap();
        let mut ledger = WorkspaceLedger::new();
        for v in s.block(2) {
            assert!(vt_membership(&g, &s, 2, v, &mut ledger).unwrap());
        }
    }

    #[test]
    fn preconditions() {
        let g = Graph::empty(64);
        let s = FilterSchedule::with_rounds(64, 8, 3).unwrap();
        let mut ledger = WorkspaceLedger::new();
        assert!(matches!(vt_membership(&g, &s, 1, 8, &mut ledger), Err(Error::Precondition(_))));
        assert!(matches!(vt_membership(&g, &s, 0, 20, &mut ledger), Err(Error::Precondition(_))));
        assert!(matches!(vt_membership(&g, &s, 4, 2, &mut ledger), Err(Error::Precondition(_))));
        assert!(matches!(vt_membership(&Graph::empty(65), &s, 1, 20, &mut ledger), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn measured_peak_matches_frame_layout() {
        let n = 128;
        let inst = sample_planted(n, 64, Seed(4)).unwrap();
        let s = FilterSchedule::with_rounds(n, 64, 6).unwrap();
        for t in 1..=6 {
            let mut ledger = WorkspaceLedger::new();
            let v = *s.block(t).start();
            vt_membership(inst.graph(), &s, t, v, &mut ledger).unwrap();
            assert_eq!(ledger.peak(), membership_peak_bits(n, t), "t = {t}");
            let w = counter_bits(n);
            assert_eq!(ledger.peak(), 2 * w + u64::from(t - 1) * 7 * w);
        }
    }
}
