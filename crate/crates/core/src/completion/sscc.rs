use super::{MembershipOracle, RecoveredSet, Tee, VertexSink};
use crate::graph::{Graph, VertexBits};
use crate::ledger::{counter_bits, Register, WorkspaceLedger};
use crate::Result;

/// `2k/3 + 3 log2 k`.
pub fn completion_threshold(k: usize) -> f64 {
    let k = k as f64;
    2.0 * k / 3.0 + 3.0 * k.log2()
}

/// Registers of the completion loop: three vertex counters, the
/// common-neighbour degree and the common-neighbour flag.
pub fn sscc_frame(n: usize) -> [Register; 5] {
    let w = counter_bits(n);
    [
        Register::new("v", w),
        Register::new("u", w),
        Register::new("w", w),
        Register::new("deg_common", w),
        Register::new("in_common", 1),
    ]
}

/// Small-space clique completion.
///
/// A vertex `u` is a common neighbour when every other `w` with
/// `oracle(w) = 1` is adjacent to it, so the oracle set itself counts when it
/// is a clique. Each `v` is emitted
/// when its number of common-neighbour neighbours reaches
/// [`completion_threshold`]. Nothing but the registers of [`sscc_frame`] and
/// the oracle's own space is held.
pub fn sscc<O, S>(g: &Graph, k: usize, oracle: &O, ledger: &mut WorkspaceLedger, sink: &mut S) -> Result<RecoveredSet>
where
    O: MembershipOracle + ?Sized,
    S: VertexSink + ?Sized,
{
    let n = g.n();
    let threshold = completion_threshold(k);
    let mut out = Tee::new(sink);
    let frame = ledger.open_frame(&sscc_frame(n));
    let reservation =
        (!oracle.meters_itself()).then(|| ledger.open_frame(&[Register::new("oracle", oracle.declared_bits())]));

    for v in 1..=n {
        let mut deg_common = 0usize;
        // u runs over 1..=n, but only neighbours of v can contribute
        for u in g.neighbours(v) {
            let mut in_common = true;
            // likewise only non-neighbours w of u can fail the test, so the
            // scan skips straight to them; the oracle may be expensive
            for w in g.non_neighbours(u) {
                if oracle.query(w, ledger) {
                    in_common = false;
                    break;
                }
            }
            deg_common += in_common as usize;
        }
        if deg_common as f64 >= threshold {
            out.emit(v)?;
        }
    }

    if let Some(h) = reservation {
        ledger.close_frame(h)?;
    }
    ledger.close_frame(frame)?;
    Ok(out.finish())
}

/// Same output as [`sscc`] for an oracle whose set is `members`, computed
/// with word-parallel set operations and an explicit common-neighbour set.
/// Not space-bounded.
pub fn sscc_tabulated<S>(g: &Graph, k: usize, members: &VertexBits, sink: &mut S) -> Result<RecoveredSet>
where
    S: VertexSink + ?Sized,
{
    let n = g.n();
    let threshold = completion_threshold(k);
    let common = VertexBits::from_vertices(
        n,
        (1..=n).filter(|&u| match members.missing_from_row(g.row(u)) {
            0 => true,
            1 => members.contains(u),
            _ => false,
        }),
    );
    let mut out = Tee::new(sink);
    for v in 1..=n {
        if g.degree_into(v, &common) as f64 >= threshold {
            out.emit(v)?;
        }
    }
    Ok(out.finish())
}
