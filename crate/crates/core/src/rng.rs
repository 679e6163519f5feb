//! Deterministic random streams.
//!
//! Reproducibility is a contract here: rebuilding a model from the same
//! master seed must give bit-identical timelines regardless of iteration
//! order, thread schedule, or platform. Relying on an external generator
//! crate would tie that contract to its version, so the streams are owned:
//! splitmix64 for key mixing and xoshiro256** for the sample stream.

/// One splitmix64 step; used both as a mixer and as the seed expander.
#[inline]
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    mix64(*state)
}

/// The splitmix64 finalizer: a stateless full-avalanche bijection.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// xoshiro256** stream seeded through splitmix64.
#[derive(Debug, Clone)]
pub struct Stream {
    s: [u64; 4],
}

impl Stream {
    pub fn seed_from(key: u64) -> Self {
        let mut sm = key;
        let mut s = [0u64; 4];
        for slot in &mut s {
            *slot = splitmix64(&mut sm);
        }
        // The all-zero state is the one invalid state; splitmix64 of any key
        // cannot produce four zero words in practice, but guard anyway.
        if s == [0, 0, 0, 0] {
            s[0] = 0x9e3779b97f4a7c15;
        }
        Stream { s }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform on the open interval (0, 1): never returns 0 or 1, so inverse
    /// CDF transforms stay finite and positive.
    #[inline]
    pub fn uniform_open(&mut self) -> f64 {
        ((self.next_u64() >> 12) as f64 + 0.5) * (1.0 / 4503599627370496.0)
    }

    /// Uniform on the half-open interval [0, 1).
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Standard normal draw via Box-Muller on interior uniforms.
    pub fn standard_normal(&mut self) -> f64 {
        let u = self.uniform_open();
        let v = self.uniform_open();
        (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
    }
}

/// Stable key for a per-face stream: the master seed mixed with the face's
/// dimension and vertex tuple. Each absorption step runs the full avalanche,
/// so the chain is order-sensitive and collision-resistant. Independent of
/// any hasher internals.
pub fn face_stream_key(master_seed: u64, dimension: usize, vertices: &[u32]) -> u64 {
    let mut h = mix64(master_seed ^ 0x6a09e667f3bcc908);
    h = mix64(h ^ dimension as u64);
    for &v in vertices {
        h = mix64(h.rotate_left(23) ^ (v as u64).wrapping_add(0x9e3779b97f4a7c15));
    }
    h
}

/// Seed for replication `r` of a run: `seed xor r`. The per-face key
/// derivation mixes this further, so nearby replications do not share
/// stream prefixes.
pub fn replication_seed(master_seed: u64, replication: u64) -> u64 {
    master_seed ^ replication
}
