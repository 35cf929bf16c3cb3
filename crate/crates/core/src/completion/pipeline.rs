use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::oracle::FilterOracle;
use super::sscc::{sscc, sscc_frame, sscc_tabulated};
use super::{RecoveredSet, VertexSink};
use crate::filter::{membership_frame, reference_filter_trace, FilterSchedule};
use crate::graph::{Graph, VertexBits};
use crate::ledger::{ceil_log2, counter_bits, Register, WorkspaceLedger};
use crate::{Error, Result};

pub const DEFAULT_CONSTANT_C: f64 = 8.0;

/// Intercept `a` of the working-space bound `a + b T ceil(log2 n)`.
pub const SPACE_INTERCEPT_BITS: u64 = 16;
/// Slope `b` of the working-space bound `a + b T ceil(log2 n)`.
pub const SPACE_SLOPE_BITS: u64 = 9;

/// `a + b T ceil(log2 n)` with the pinned constants.
pub fn space_bound(n: usize, rounds: u32) -> u64 {
    SPACE_INTERCEPT_BITS + SPACE_SLOPE_BITS * u64::from(rounds) * ceil_log2(n)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Execution {
    /// Runs the recursive oracle inside the completion loop and measures the
    /// ledger directly. Cost grows like `n^3` times the recursion fan-out.
    Metered,
    /// Builds `V_T` with the reference filter and completes with set
    /// operations. The reported peak is [`pipeline_peak_bits`], the frame
    /// layout the metered run goes through.
    #[default]
    Tabulated,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub constant_c: f64,
    pub execution: Execution,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self { constant_c: DEFAULT_CONSTANT_C, execution: Execution::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineRun {
    pub recovered: RecoveredSet,
    pub rounds: u32,
    pub execution: Execution,
    pub peak_working_bits: u64,
    pub wall_time_ms: f64,
}

/// The pipeline's own register: the round count it hands to the oracle.
pub fn pipeline_frame(n: usize) -> [Register; 1] {
    [Register::new("rounds", counter_bits(n))]
}

/// Peak bits of a pipeline run whose completion loop reaches a depth-`rounds`
/// membership query: pipeline, completion, oracle and one membership frame per
/// level, all nested.
pub fn pipeline_peak_bits(n: usize, rounds: u32) -> u64 {
    let mut ledger = WorkspaceLedger::new();
    let mut handles = vec![
        ledger.open_frame(&pipeline_frame(n)),
        ledger.open_frame(&sscc_frame(n)),
        ledger.open_frame(&FilterOracle::frame(n)),
    ];
    handles.extend((1..=rounds).rev().map(|t| ledger.open_frame(&membership_frame(n, t))));
    for h in handles.into_iter().rev() {
        ledger.close_frame(h).expect("replay frames are nested");
    }
    ledger.peak()
}

/// Recovers the planted clique for `k >= C sqrt(n)` with the derived schedule.
pub fn recover_large_clique<S>(g: &Graph, k: usize, config: &PipelineConfig, sink: &mut S) -> Result<PipelineRun>
where
    S: VertexSink + ?Sized,
{
    let n = g.n();
    if !(config.constant_c.is_finite() && config.constant_c >= 0.0) {
        return Err(Error::InvalidParameter(format!("constant C = {} must be finite and >= 0", config.constant_c)));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("clique size k = {k} must satisfy 1 <= k <= n = {n}")));
    }
    let floor = config.constant_c * (n as f64).sqrt();
    if (k as f64) < floor {
        return Err(Error::InfeasibleScale(format!("k = {k} is below C sqrt(n) = {floor:.2}")));
    }
    let schedule = FilterSchedule::new(n, k)?;
    recover_with_schedule(g, k, &schedule, config.execution, sink)
}

/// Filter with `schedule`, then complete from `V_T`.
pub fn recover_with_schedule<S>(
    g: &Graph,
    k: usize,
    schedule: &FilterSchedule,
    execution: Execution,
    sink: &mut S,
) -> Result<PipelineRun>
where
    S: VertexSink + ?Sized,
{
    let n = g.n();
    if n != schedule.n() {
        return Err(Error::InvalidParameter(format!(
            "graph has {n} vertices but the schedule was built for {}",
            schedule.n()
        )));
    }
    let start = Instant::now();
    let (recovered, peak_working_bits) = match execution {
        Execution::Metered => {
            let mut ledger = WorkspaceLedger::new();
            let frame = ledger.open_frame(&pipeline_frame(n));
            let oracle = FilterOracle::new(g, *schedule);
            let recovered = sscc(g, k, &oracle, &mut ledger, sink)?;
            ledger.close_frame(frame)?;
            (recovered, ledger.peak())
        }
        Execution::Tabulated => {
            let trace = reference_filter_trace(g, schedule)?;
            let members = VertexBits::from_vertices(n, trace.last().iter().copied());
            let recovered = sscc_tabulated(g, k, &members, sink)?;
            (recovered, pipeline_peak_bits(n, schedule.rounds()))
        }
    };
    Ok(PipelineRun {
        recovered,
        rounds: schedule.rounds(),
        execution,
        peak_working_bits,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::membership_peak_bits;
    use crate::graph::{sample_planted, Seed};
    use proptest::prelude::*;

    #[test]
    fn peak_layout() {
        for n in [64usize, 100, 4096, 65536] {
            let w = counter_bits(n);
            for t in 1..=8 {
                assert_eq!(pipeline_peak_bits(n, t), w * (7 * u64::from(t) + 2) + 1);
            }
        }
        assert_eq!(pipeline_peak_bits(4096, 5), 482);
        assert_eq!(space_bound(4096, 5), 16 + 9 * 5 * 12);
    }

    #[test]
    fn composition_of_parts() {
        for (n, t) in [(64usize, 3u32), (4096, 5), (65536, 5)] {
            let sscc_bits: u64 = sscc_frame(n).iter().map(Register::bits).sum();
            let constant: u64 = pipeline_frame(n).iter().chain(&FilterOracle::frame(n)).map(Register::bits).sum();
            assert_eq!(pipeline_peak_bits(n, t), sscc_bits + membership_peak_bits(n, t) + constant);
        }
    }

    #[test]
    fn metered_and_tabulated_agree() {
        for seed in 0..4 {
            for (n, k, t) in [(64usize, 32usize, 2u32), (64, 40, 3), (96, 48, 3)] {
                let inst = sample_planted(n, k, Seed(seed)).unwrap();
                let s = FilterSchedule::with_rounds(n, k, t).unwrap();
                let mut streamed = Vec::new();
                let metered = recover_with_schedule(inst.graph(), k, &s, Execution::Metered, &mut streamed).unwrap();
                let tab = recover_with_schedule(inst.graph(), k, &s, Execution::Tabulated, &mut Vec::new()).unwrap();
                assert_eq!(metered.recovered, tab.recovered, "n={n} k={k} t={t} seed={seed}");
                assert_eq!(metered.peak_working_bits, tab.peak_working_bits);
                assert_eq!(streamed, metered.recovered.as_slice());
            }
        }
    }

    #[test]
    fn small_instance_is_rejected_before_output() {
        let inst = sample_planted(16, 4, Seed(0)).unwrap();
        let mut sink = Vec::new();
        let lenient = PipelineConfig { constant_c: 0.0, ..PipelineConfig::default() };
        let err = recover_large_clique(inst.graph(), 4, &lenient, &mut sink).unwrap_err();
        assert!(matches!(err, Error::ScheduleInfeasible(_)), "{err}");
        let err = recover_large_clique(inst.graph(), 4, &PipelineConfig::default(), &mut sink).unwrap_err();
        assert!(err.is_infeasible());
        assert!(sink.is_empty());
    }

    #[test]
    fn mismatched_schedule() {
        let s = FilterSchedule::with_rounds(64, 8, 2).unwrap();
        let err = recover_with_schedule(&Graph::empty(65), 8, &s, Execution::Tabulated, &mut Vec::new());
        assert!(matches!(err, Err(Error::InvalidParameter(_))));
    }

    proptest! {
        #[test]
        fn replayed_peak_within_pinned_bound(n in 4usize..(1 << 40), pick in 0u32..64) {
            let levels = (n.div_ceil(2).next_power_of_two()).trailing_zeros();
            prop_assume!(levels >= 1);
            let t = 1 + pick % levels;
            prop_assert!(pipeline_peak_bits(n, t) <= space_bound(n, t));
            prop_assert!(membership_peak_bits(n, t) <= space_bound(n, t));
        }
    }
}
