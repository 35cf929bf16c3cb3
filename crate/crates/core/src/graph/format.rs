//! The `PCG1` graph file format.
//!
//! ```text
//! magic   b"PCG1"
//! n       u64 little-endian
//! flags   u8, bit 0 = ground truth present, other bits zero
//! [k      u64 little-endian                 ] if bit 0
//! [ids    k x u64 little-endian, sorted, 1-based] if bit 0
//! edges   ceil(C(n,2) / 8) bytes
//! ```
//!
//! Edge bits follow lexicographic pair order `(u, v)`, `u < v`; pair `p` is
//! bit `p % 8` of byte `p / 8`, least significant bit first. Padding bits in
//! the final byte are zero.

use std::io::{Read, Write};

use super::bits::{BitPacker, SliceBits};
use super::{pair_count, validate_truth, Graph, Vertex};
use crate::{Error, Result};

pub const MAGIC: &[u8; 4] = b"PCG1";
const FLAG_TRUTH: u8 = 0b1;

/// Serialises `g`, with an optional ground-truth clique.
pub fn write_graph<W: Write>(mut out: W, g: &Graph, truth: Option<&[Vertex]>) -> Result<()> {
    if let Some(clique) = truth {
        validate_truth(g, clique).map_err(Error::InvalidParameter)?;
    }
    out.write_all(MAGIC)?;
    out.write_all(&(g.n() as u64).to_le_bytes())?;
    out.write_all(&[if truth.is_some() { FLAG_TRUTH } else { 0 }])?;
    if let Some(clique) = truth {
        out.write_all(&(clique.len() as u64).to_le_bytes())?;
        for &v in clique {
            out.write_all(&(v as u64).to_le_bytes())?;
        }
    }
    let mut packer = BitPacker::with_capacity(pair_count(g.n()) as usize);
    g.pack_upper(&mut packer);
    out.write_all(&packer.into_bytes())?;
    Ok(())
}

fn read_u64<R: Read>(input: &mut R, what: &str) -> Result<u64> {
    let mut buf = [0u8; 8];
    read_exact(input, &mut buf, what)?;
    Ok(u64::from_le_bytes(buf))
}

fn read_exact<R: Read>(input: &mut R, buf: &mut [u8], what: &str) -> Result<()> {
    input.read_exact(buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => Error::Format(format!("truncated {what}")),
        _ => Error::Io(e),
    })
}

/// Parses a `PCG1` stream. The stream must end right after the edge bits.
pub fn read_graph<R: Read>(mut input: R) -> Result<(Graph, Option<Vec<Vertex>>)> {
    let mut magic = [0u8; 4];
    read_exact(&mut input, &mut magic, "magic")?;
    if &magic != MAGIC {
        return Err(Error::Format(format!("bad magic {magic:?}")));
    }
    let n = usize::try_from(read_u64(&mut input, "header")?)
        .map_err(|_| Error::Format("vertex count does not fit in memory".into()))?;
    let mut flags = [0u8; 1];
    read_exact(&mut input, &mut flags, "header")?;
    if flags[0] & !FLAG_TRUTH != 0 {
        return Err(Error::Format(format!("unknown flag bits {:#04x}", flags[0])));
    }

    let truth = if flags[0] & FLAG_TRUTH != 0 {
        let k = read_u64(&mut input, "clique header")?;
        if k == 0 || k > n as u64 {
            return Err(Error::Format(format!("clique size {k} inconsistent with n = {n}")));
        }
        let mut ids = Vec::with_capacity(k as usize);
        for _ in 0..k {
            ids.push(read_u64(&mut input, "clique ids")? as Vertex);
        }
        Some(ids)
    } else {
        None
    };

    let nbits = pair_count(n);
    let nbytes = nbits.div_ceil(8);
    let mut payload = Vec::new();
    input.by_ref().take(nbytes).read_to_end(&mut payload)?;
    if (payload.len() as u64) < nbytes {
        return Err(Error::Format(format!("truncated edge payload: {} of {nbytes} bytes", payload.len())));
    }
    let mut trailing = [0u8; 1];
    if input.read(&mut trailing)? != 0 {
        return Err(Error::Format("trailing bytes after edge payload".into()));
    }
    let used = (nbits % 8) as u32;
    if used != 0 && payload[payload.len() - 1] >> used != 0 {
        return Err(Error::Format("non-zero padding bits".into()));
    }

    let mut words = vec![0u64; payload.len().div_ceil(8)];
    for (chunk, word) in payload.chunks(8).zip(words.iter_mut()) {
        let mut buf = [0u8; 8];
        buf[..chunk.len()].copy_from_slice(chunk);
        *word = u64::from_le_bytes(buf);
    }
    let graph = Graph::from_upper_bits(n, &mut SliceBits::new(&words));

    if let Some(clique) = &truth {
        validate_truth(&graph, clique).map_err(|e| Error::Format(format!("ground truth: {e}")))?;
    }
    Ok((graph, truth))
}
