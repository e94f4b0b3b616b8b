//! SplitMix64, the generator behind every seeded sample in this crate.
//!
//! The algorithm is fixed so that sampling campaigns reproduce bit-for-bit on
//! any platform and in any language: state advances by the golden-ratio
//! increment `0x9E3779B97F4A7C15` and each output is the state passed through
//! the `mix64` finalizer below. Seed 0 yields `0xE220A8397B1DCDAF`,
//! `0x6E789E6AA1B965F4`, `0x06C45D188009454F`.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub const fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// The `index`-th output (0-based) of the stream seeded with `seed`,
    /// without generating the preceding ones.
    pub fn output_at(seed: u64, index: u64) -> u64 {
        mix64(seed.wrapping_add(GAMMA.wrapping_mul(index.wrapping_add(1))))
    }

    /// Uniform draw from `0..bound` by rejection of the biased tail.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % bound;
            }
        }
    }
}
