//! Counter-based seed derivation shared by the simulator and harness.
//!
//! Sub-seeds come from the splitmix64 finalizer applied to
//! `master XOR (index + 1) * 0x9E3779B97F4A7C15`, so any (master, index)
//! pair maps to a reproducible stream without sequential state. The
//! derivation is part of the reproducibility contract: external reruns
//! of a published configuration can regenerate every stream from the
//! master seed alone.

/// splitmix64 finalizer.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Derives the `index`-th sub-seed of `master`.
#[inline]
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ index.wrapping_add(1).wrapping_mul(0x9E3779B97F4A7C15))
}
