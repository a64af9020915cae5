//! Deterministic random substreams.
//!
//! Every random draw in the crate comes from a ChaCha8 generator keyed by
//! `(master seed, stream id, time t, replicate b)`. The four 64-bit words
//! are laid out little-endian as the 256-bit ChaCha key, so distinct tuples
//! give distinct keys and the streams are independent up to the strength of
//! the cipher. Time `t = 0` is reserved for data generation; the bootstrap
//! engine uses `t ≥ 1`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubstreamKey {
    pub master: u64,
    pub stream: u64,
    pub t: u64,
    pub replicate: u64,
}

impl SubstreamKey {
    pub fn new(master: u64, stream: u64, t: u64, replicate: u64) -> Self {
        Self {
            master,
            stream,
            t,
            replicate,
        }
    }

    /// Key for generating the observations of data stream `stream`.
    pub fn data(master: u64, stream: u64) -> Self {
        Self::new(master, stream, 0, 0)
    }

    pub fn rng(&self) -> StreamRng {
        let mut seed = [0u8; 32];
        for (chunk, word) in seed
            .chunks_exact_mut(8)
            .zip([self.master, self.stream, self.t, self.replicate])
        {
            chunk.copy_from_slice(&word.to_le_bytes());
        }
        ChaCha8Rng::from_seed(seed)
    }
}

/// Packs two small indices into one stream id (e.g. player and replication).
pub fn stream_id(major: u32, minor: u32) -> u64 {
    (u64::from(major) << 32) | u64::from(minor)
}
