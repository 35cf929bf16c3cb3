//! Working-space accounting.
//!
//! Algorithms declare every mutable scalar they hold as a [`Register`] inside
//! a frame. Frames nest strictly, like call frames: opening one adds its
//! registers' widths to the current total, closing it removes them. The peak
//! of that running total is the algorithm's measured working space. The
//! read-only input graph and the write-only output stream are never declared.

use std::fmt;

use thiserror::Error;

/// A named, fixed-width register.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Register {
    name: &'static str,
    bits: u64,
}

impl Register {
    /// Panics if `bits == 0`.
    pub const fn new(name: &'static str, bits: u64) -> Self {
        assert!(bits >= 1, "register width must be at least one bit");
        Self { name, bits }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }
}

/// Width of a counter ranging over `0..=max`.
pub fn counter_bits(max: usize) -> u64 {
    (usize::BITS - max.leading_zeros()).max(1) as u64
}

/// `ceil(log2 n)`, with `ceil_log2(1) == 0`.
pub fn ceil_log2(n: usize) -> u64 {
    assert!(n >= 1);
    (usize::BITS - (n - 1).leading_zeros()) as u64
}

/// Identifies an open frame. Handles are plain values; closing a frame that
/// is not on top of the stack is reported as misuse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameHandle {
    id: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LedgerError {
    #[error("frame {handle} is not on top of the stack (top is {top:?})")]
    NotTop { handle: u64, top: Option<u64> },
    #[error("frame {0} is not open")]
    Stale(u64),
}

#[derive(Debug)]
struct Frame {
    id: u64,
    first_register: usize,
    bits: u64,
}

#[derive(Debug, Default)]
pub struct WorkspaceLedger {
    frames: Vec<Frame>,
    registers: Vec<Register>,
    current: u64,
    peak: u64,
    next_id: u64,
}

impl WorkspaceLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn open_frame(&mut self, registers: &[Register]) -> FrameHandle {
        let bits: u64 = registers.iter().map(|r| r.bits).sum();
        let id = self.next_id;
        self.next_id += 1;
        self.frames.push(Frame { id, first_register: self.registers.len(), bits });
        self.registers.extend_from_slice(registers);
        self.current += bits;
        self.peak = self.peak.max(self.current);
        FrameHandle { id }
    }

    pub fn close_frame(&mut self, handle: FrameHandle) -> Result<(), LedgerError> {
        match self.frames.last() {
            Some(top) if top.id == handle.id => {
                let frame = self.frames.pop().expect("non-empty");
                self.registers.truncate(frame.first_register);
                self.current -= frame.bits;
                Ok(())
            }
            top => {
                if self.frames.iter().any(|f| f.id == handle.id) {
                    Err(LedgerError::NotTop { handle: handle.id, top: top.map(|f| f.id) })
                } else {
                    Err(LedgerError::Stale(handle.id))
                }
            }
        }
    }

    /// Runs `body` inside a frame holding `registers`.
    pub fn scoped<R>(&mut self, registers: &[Register], body: impl FnOnce(&mut Self) -> R) -> R {
        let handle = self.open_frame(registers);
        let out = body(self);
        self.close_frame(handle).expect("scoped frame closed out of order");
        out
    }

    pub fn peak(&self) -> u64 {
        self.peak
    }

    pub fn current_bits(&self) -> u64 {
        self.current
    }

    pub fn depth(&self) -> usize {
        self.frames.len()
    }

    /// Registers of the currently open frames, outermost first.
    pub fn live_registers(&self) -> &[Register] {
        &self.registers
    }
}

impl fmt::Display for WorkspaceLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} frames, {} bits live, peak {} bits", self.frames.len(), self.current, self.peak)
    }
}
