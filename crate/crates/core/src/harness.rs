//! Seeded Monte Carlo trials and parameter sweeps.
//!
//! Trial `i` of a sweep point uses seed `seed_base + i`. Trials may run on
//! the rayon pool; results are merged by seed index, so output does not
//! depend on scheduling. Wall-clock timing is the only non-deterministic
//! field and can be switched off.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{
    alon_reduction_recover, degree_count_recover, edge_count_detect, exhaustive_detect, exhaustive_subset_size,
    CliqueSizeDetector, DetectionVerdict, Hypothesis, MAX_CLIQUE_VERTICES,
};
use crate::completion::{recover_large_clique, Execution, NullSink, PipelineConfig, RecoveredSet, DEFAULT_CONSTANT_C};
use crate::filter::FilterSchedule;
use crate::graph::{sample_er, sample_planted, Graph, Seed, Vertex};
use crate::ledger::WorkspaceLedger;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Pipeline,
    Degree,
    Reduction,
    EdgeCount,
    Exhaustive,
}

impl Algo {
    pub const ALL: [Algo; 5] = [Algo::Pipeline, Algo::Degree, Algo::Reduction, Algo::EdgeCount, Algo::Exhaustive];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Pipeline => "pipeline",
            Algo::Degree => "degree",
            Algo::Reduction => "reduction",
            Algo::EdgeCount => "edge-count",
            Algo::Exhaustive => "exhaustive",
        }
    }

    /// Detection algorithms answer `H0`/`H1`; the rest recover a vertex set.
    pub fn is_detection(self) -> bool {
        matches!(self, Algo::EdgeCount | Algo::Exhaustive)
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm {s:?}")))
    }
}

/// How `k` is chosen at a sweep point. Scaled rules round up.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KRule {
    Absolute(usize),
    /// `c sqrt(n)`
    SqrtN(f64),
    /// `c sqrt(n log2 n)`
    SqrtNLogN(f64),
}

impl KRule {
    pub fn resolve(&self, n: usize) -> usize {
        let x = match *self {
            KRule::Absolute(k) => return k,
            KRule::SqrtN(c) => c * (n as f64).sqrt(),
            KRule::SqrtNLogN(c) => c * (n as f64 * (n as f64).log2()).sqrt(),
        };
        // 8 sqrt(4096) must give 512, not 513
        let r = x.round();
        if (x - r).abs() < 1e-9 {
            r as usize
        } else {
            x.ceil() as usize
        }
    }
}

impl fmt::Display for KRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KRule::Absolute(k) => write!(f, "{k}"),
            KRule::SqrtN(c) => write!(f, "{c}sqrtn"),
            KRule::SqrtNLogN(c) => write!(f, "{c}sqrtnlogn"),
        }
    }
}

/// `512`, `8sqrtn` or `4sqrtnlogn`.
impl FromStr for KRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse k rule {s:?}"));
        let coef = |c: &str| -> Result<f64> {
            let c = if c.is_empty() { 1.0 } else { c.parse::<f64>().map_err(|_| bad())? };
            if c.is_finite() && c > 0.0 {
                Ok(c)
            } else {
                Err(bad())
            }
        };
        if let Some(c) = s.strip_suffix("sqrtnlogn") {
            Ok(KRule::SqrtNLogN(coef(c)?))
        } else if let Some(c) = s.strip_suffix("sqrtn") {
            Ok(KRule::SqrtN(coef(c)?))
        } else {
            s.parse().map(KRule::Absolute).map_err(|_| bad())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub n: usize,
    pub k: KRule,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub points: Vec<SweepPoint>,
    pub algos: Vec<Algo>,
    pub trials: u32,
    pub seed_base: u64,
    pub constant_c: f64,
    pub epsilon: f64,
    pub cap: usize,
    pub execution: Execution,
    /// When false every `wall_time_ms` is reported as 0.
    pub timing: bool,
}

impl SweepConfig {
    pub fn new(points: Vec<SweepPoint>, algos: Vec<Algo>, trials: u32) -> Self {
        Self {
            points,
            algos,
            trials,
            seed_base: 0,
            constant_c: DEFAULT_CONSTANT_C,
            epsilon: 0.1,
            cap: 12,
            execution: Execution::Tabulated,
            timing: true,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if !(self.constant_c.is_finite() && self.constant_c >= 0.0) {
            return Err(Error::InvalidParameter(format!("constant C = {} must be finite and >= 0", self.constant_c)));
        }
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::InvalidParameter(format!("epsilon = {} must be finite and >= 0", self.epsilon)));
        }
        Ok(())
    }
}

/// One run of one algorithm on one sampled graph.
///
/// Detection trials carry the sampled `hypothesis` and the `verdict`; a
/// wrong `H1` counts as one false positive, a wrong `H0` as one false
/// negative. Recovery trials carry the recovered set's size and digest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub algo: Algo,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub hypothesis: Option<Hypothesis>,
    pub verdict: Option<Hypothesis>,
    pub recovered_size: Option<usize>,
    pub digest: Option<String>,
    pub exact_recovery: bool,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub peak_working_bits: u64,
    pub wall_time_ms: f64,
}

/// FNV-1a over the little-endian ids.
pub fn set_digest(vertices: &[Vertex]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &v in vertices {
        for b in (v as u64).to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    format!("{h:016x}")
}

/// Checks that `(algo, n, k)` is inside the algorithm's range without
/// sampling anything.
pub fn check_point(algo: Algo, n: usize, k: usize, config: &SweepConfig) -> Result<()> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    match algo {
        Algo::Pipeline => {
            let floor = config.constant_c * (n as f64).sqrt();
            if (k as f64) < floor {
                return Err(Error::InfeasibleScale(format!("k = {k} is below C sqrt(n) = {floor:.2}")));
            }
            FilterSchedule::new(n, k).map(drop)
        }
        Algo::Reduction if n - 1 > MAX_CLIQUE_VERTICES => Err(Error::InfeasibleScale(format!(
            "reduction subgraphs may reach {} vertices; the exact detector handles {MAX_CLIQUE_VERTICES}",
            n - 1
        ))),
        Algo::Exhaustive => {
            let s = exhaustive_subset_size(n, config.epsilon)?;
            if s > config.cap {
                return Err(Error::InfeasibleScale(format!(
                    "exhaustive search over {s}-subsets exceeds the cap of {}",
                    config.cap
                )));
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

/// Runs `algo` on the instance(s) for `seed`: one planted graph for
/// recovery, an `H0`/`H1` pair sharing the seed for detection.
pub fn run_trial(algo: Algo, n: usize, k: usize, seed: u64, config: &SweepConfig) -> Result<Vec<TrialReport>> {
    let blank = |hypothesis| TrialReport {
        algo,
        n,
        k,
        seed,
        hypothesis,
        verdict: None,
        recovered_size: None,
        digest: None,
        exact_recovery: false,
        false_positives: 0,
        false_negatives: 0,
        peak_working_bits: 0,
        wall_time_ms: 0.0,
    };
    let elapsed = |start: Instant| if config.timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };

    if algo.is_detection() {
        let mut reports = Vec::with_capacity(2);
        for hypothesis in [Hypothesis::H0, Hypothesis::H1] {
            let g = match hypothesis {
                Hypothesis::H0 => sample_er(n, Seed(seed))?,
                Hypothesis::H1 => sample_planted(n, k, Seed(seed))?.into_parts().0,
            };
            let mut ledger = WorkspaceLedger::new();
            let start = Instant::now();
            let v = detect(algo, &g, k, config, &mut ledger)?;
            let mut r = blank(Some(hypothesis));
            r.wall_time_ms = elapsed(start);
            r.verdict = Some(v.verdict);
            r.exact_recovery = v.verdict == hypothesis;
            r.false_positives = (hypothesis == Hypothesis::H0 && !r.exact_recovery) as usize;
            r.false_negatives = (hypothesis == Hypothesis::H1 && !r.exact_recovery) as usize;
            r.peak_working_bits = ledger.peak();
            reports.push(r);
        }
        return Ok(reports);
    }

    let inst = sample_planted(n, k, Seed(seed))?;
    let mut ledger = WorkspaceLedger::new();
    let start = Instant::now();
    let (recovered, peak) = recover(algo, inst.graph(), k, config, &mut ledger)?;
    let mut r = blank(None);
    r.wall_time_ms = elapsed(start);
    let (fp, fneg) = recovered.errors_against(inst.clique());
    r.recovered_size = Some(recovered.len());
    r.digest = Some(set_digest(recovered.as_slice()));
    r.exact_recovery = fp == 0 && fneg == 0;
    r.false_positives = fp;
    r.false_negatives = fneg;
    r.peak_working_bits = peak;
    Ok(vec![r])
}

fn detect(
    algo: Algo,
    g: &Graph,
    k: usize,
    config: &SweepConfig,
    ledger: &mut WorkspaceLedger,
) -> Result<DetectionVerdict> {
    match algo {
        Algo::EdgeCount => edge_count_detect(g, k, ledger),
        Algo::Exhaustive => exhaustive_detect(g, config.epsilon, config.cap, ledger),
        _ => unreachable!("{algo} is not a detection algorithm"),
    }
}

fn recover(
    algo: Algo,
    g: &Graph,
    k: usize,
    config: &SweepConfig,
    ledger: &mut WorkspaceLedger,
) -> Result<(RecoveredSet, u64)> {
    let set = match algo {
        Algo::Pipeline => {
            let pc = PipelineConfig { constant_c: config.constant_c, execution: config.execution };
            let run = recover_large_clique(g, k, &pc, &mut NullSink)?;
            return Ok((run.recovered, run.peak_working_bits));
        }
        Algo::Degree => degree_count_recover(g, k, ledger, &mut NullSink)?,
        Algo::Reduction => alon_reduction_recover(g, &CliqueSizeDetector::for_vertices(g.n()), ledger, &mut NullSink)?,
        _ => unreachable!("{algo} is not a recovery algorithm"),
    };
    Ok((set, ledger.peak()))
}

/// Per-point summary; field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub algo: Algo,
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub success_rate: f64,
    pub mean_peak_bits: f64,
    pub max_peak_bits: u64,
    pub mean_ms: f64,
}

pub const CSV_HEADER: &str = "algo,n,k,trials,success_rate,mean_peak_bits,max_peak_bits,mean_ms";

/// Summarises the reports of one point. `trials` counts reports, so a
/// detection point has two per seed.
pub fn aggregate(algo: Algo, n: usize, k: usize, reports: &[TrialReport]) -> AggregateRow {
    let m = reports.len().max(1) as f64;
    AggregateRow {
        algo,
        n,
        k,
        trials: reports.len(),
        success_rate: reports.iter().filter(|r| r.exact_recovery).count() as f64 / m,
        mean_peak_bits: reports.iter().map(|r| r.peak_working_bits as f64).sum::<f64>() / m,
        max_peak_bits: reports.iter().map(|r| r.peak_working_bits).max().unwrap_or(0),
        mean_ms: reports.iter().map(|r| r.wall_time_ms).sum::<f64>() / m,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedPoint {
    pub algo: Algo,
    pub n: usize,
    pub k: usize,
    pub status: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub rows: Vec<AggregateRow>,
    pub skipped: Vec<SkippedPoint>,
    pub trials: Vec<TrialReport>,
}

impl SweepOutcome {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        w.write_record(CSV_HEADER.split(','))?;
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out: Vec<String> =
            self.skipped.iter().map(|s| format!("skipped {} at n={} k={}: {}", s.algo, s.n, s.k, s.reason)).collect();
        if self.rows.is_empty() {
            out.push("no feasible points; no data rows written".into());
        }
        out
    }
}

/// Runs every `(point, algo)` pair. Points an algorithm cannot handle are
/// listed in `skipped` and do not abort the sweep.
pub fn run_trials(config: &SweepConfig) -> Result<SweepOutcome> {
    config.validate()?;
    let mut outcome = SweepOutcome::default();
    for point in &config.points {
        let k = point.k.resolve(point.n);
        for &algo in &config.algos {
            let skip = |reason: String| SkippedPoint { algo, n: point.n, k, status: "skipped".into(), reason };
            if let Err(e) = check_point(algo, point.n, k, config) {
                outcome.skipped.push(skip(e.to_string()));
                continue;
            }
            let results: Vec<Result<Vec<TrialReport>>> = (0..config.trials)
                .into_par_iter()
                .map(|i| run_trial(algo, point.n, k, config.seed_base.wrapping_add(u64::from(i)), config))
                .collect();
            match results.into_iter().collect::<Result<Vec<_>>>() {
                Ok(per_seed) => {
                    let reports: Vec<TrialReport> = per_seed.into_iter().flatten().collect();
                    outcome.rows.push(aggregate(algo, point.n, k, &reports));
                    outcome.trials.extend(reports);
                }
                Err(e) if e.is_infeasible() => outcome.skipped.push(skip(e.to_string())),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> SweepConfig {
        let mut c = SweepConfig::new(
            vec![SweepPoint { n: 40, k: KRule::Absolute(20) }, SweepPoint { n: 64, k: KRule::SqrtN(4.0) }],
            vec![Algo::Degree, Algo::EdgeCount, Algo::Reduction, Algo::Pipeline],
            3,
        );
        c.timing = false;
        c.seed_base = 11;
        c
    }

    #[test]
    fn k_rules() {
        assert_eq!(KRule::SqrtN(8.0).resolve(4096), 512);
        assert_eq!(KRule::SqrtNLogN(4.0).resolve(4096), 887);
        assert_eq!(KRule::Absolute(7).resolve(100), 7);
        assert_eq!("8sqrtn".parse::<KRule>().unwrap(), KRule::SqrtN(8.0));
        assert_eq!("4sqrtnlogn".parse::<KRule>().unwrap(), KRule::SqrtNLogN(4.0));
        assert_eq!("sqrtn".parse::<KRule>().unwrap(), KRule::SqrtN(1.0));
        assert_eq!("512".parse::<KRule>().unwrap(), KRule::Absolute(512));
        assert!("-1sqrtn".parse::<KRule>().is_err());
        assert!("x".parse::<KRule>().is_err());
        for r in [KRule::SqrtN(2.5), KRule::SqrtNLogN(4.0), KRule::Absolute(3)] {
            assert_eq!(r.to_string().parse::<KRule>().unwrap(), r);
        }
    }

    #[test]
    fn algo_names_round_trip() {
        for a in Algo::ALL {
            assert_eq!(a.name().parse::<Algo>().unwrap(), a);
            assert_eq!(serde_json::to_string(&a).unwrap(), format!("\"{}\"", a.name()));
        }
    }

    #[test]
    fn csv_is_deterministic_and_headed() {
        let c = small_config();
        let render = || {
            let mut buf = Vec::new();
            run_trials(&c).unwrap().write_csv(&mut buf).unwrap();
            String::from_utf8(buf).unwrap()
        };
        let a = render();
        assert_eq!(a.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(a, render());
    }

    #[test]
    fn aggregates_recompute_from_trials() {
        let out = run_trials(&small_config()).unwrap();
        assert_eq!(out.rows.len(), 6);
        assert_eq!(out.skipped.len(), 2);
        assert!(out.skipped.iter().all(|s| s.algo == Algo::Pipeline && s.status == "skipped"));
        for row in &out.rows {
            let mine: Vec<TrialReport> =
                out.trials.iter().filter(|r| (r.algo, r.n, r.k) == (row.algo, row.n, row.k)).cloned().collect();
            assert_eq!(&aggregate(row.algo, row.n, row.k, &mine), row);
            let per_seed = if row.algo.is_detection() { 2 } else { 1 };
            assert_eq!(row.trials, 3 * per_seed);
        }
        for r in &out.trials {
            assert_eq!(r.exact_recovery, r.false_positives == 0 && r.false_negatives == 0);
            assert_eq!(r.wall_time_ms, 0.0);
        }
        let seeds: Vec<u64> =
            out.trials.iter().filter(|r| r.algo == Algo::Degree && r.n == 40).map(|r| r.seed).collect();
        assert_eq!(seeds, vec![11, 12, 13]);
    }

    #[test]
    fn no_feasible_points() {
        let mut c = SweepConfig::new(vec![SweepPoint { n: 16, k: KRule::Absolute(4) }], vec![Algo::Pipeline], 2);
        c.timing = false;
        let out = run_trials(&c).unwrap();
        assert!(out.rows.is_empty());
        assert_eq!(out.skipped.len(), 1);
        assert!(out.warnings().iter().any(|w| w.contains("no feasible points")));
        let mut buf = Vec::new();
        out.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn invalid_config() {
        let c = SweepConfig::new(vec![], vec![Algo::Degree], 0);
        assert!(matches!(run_trials(&c), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn detection_pairs_share_seed() {
        let c = small_config();
        let r = run_trial(Algo::EdgeCount, 64, 32, 5, &c).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!((r[0].hypothesis, r[1].hypothesis), (Some(Hypothesis::H0), Some(Hypothesis::H1)));
        assert!(r.iter().all(|x| x.seed == 5 && x.verdict.is_some()));
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(set_digest(&[]), "cbf29ce484222325");
        assert_ne!(set_digest(&[1, 2]), set_digest(&[2, 1]));
    }
}
