//! Seeded random points. Each `(seed, stream, index)` triple owns an
//! independent generator, so samples can be drawn in any order.

use num_complex::Complex64 as C64;
use plie_core::decoupling::{SPoint, SpinTuple};
use plie_core::factorization::SpinPoint;
use plie_core::tensor_kit::CMat;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use sha2::{Digest, Sha256};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub struct Sampler(Xoshiro256PlusPlus);

impl Sampler {
    pub fn new(seed: u64, stream: &str, index: usize) -> Self {
        let tag = Sha256::digest(stream.as_bytes());
        let salt = u64::from_le_bytes(tag[..8].try_into().expect("8 bytes"));
        let mixed = seed.wrapping_add((index as u64).wrapping_mul(GOLDEN)) ^ salt;
        Sampler(Xoshiro256PlusPlus::seed_from_u64(mixed))
    }

    /// Uniform in the closed disk `|z| <= radius`.
    pub fn disk(&mut self, radius: f64) -> C64 {
        let rho = radius * self.0.random::<f64>().sqrt();
        let phi = std::f64::consts::TAU * self.0.random::<f64>();
        C64::from_polar(rho, phi)
    }

    pub fn coords(&mut self, dim: usize, radius: f64) -> Vec<C64> {
        (0..dim).map(|_| self.disk(radius)).collect()
    }

    pub fn spin(&mut self, n: usize, radius: f64) -> SpinPoint {
        SpinPoint::from_coords(n, &self.coords(2 * n, radius)).expect("shape")
    }

    pub fn s_point(&mut self, n: usize, d: usize, radius: f64) -> SPoint {
        SPoint::from_coords(n, d, &self.coords(2 * n * d, radius)).expect("shape")
    }

    pub fn tuple(&mut self, n: usize, d: usize, radius: f64) -> SpinTuple {
        SpinTuple::from_coords(n, d, &self.coords(2 * n * d, radius)).expect("shape")
    }

    /// `1 + X` with the entries of `X` in the disk.
    pub fn near_identity(&mut self, l: usize, radius: f64) -> CMat {
        &CMat::new(l, l, self.coords(l * l, radius)).expect("shape") + &CMat::identity(l)
    }

    /// Free dual-group coordinates of a pair near `(1, 1)`.
    pub fn dual_near_identity(&mut self, l: usize, radius: f64) -> Vec<C64> {
        let mut x = self.coords(l * l, radius);
        let diag = l * (l - 1) / 2;
        for v in &mut x[diag..diag + l] {
            *v += 1.0;
        }
        x
    }
}

/// Hex SHA-256 prefix of the coordinates' bit patterns.
pub fn digest(coords: &[C64]) -> String {
    let mut h = Sha256::new();
    for z in coords {
        h.update(z.re.to_le_bytes());
        h.update(z.im.to_le_bytes());
    }
    hex::encode(&h.finalize()[..8])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = Sampler::new(42, "jacobi/S", 3).coords(6, 1.0);
        assert_eq!(a, Sampler::new(42, "jacobi/S", 3).coords(6, 1.0));
        assert_ne!(a, Sampler::new(42, "jacobi/S", 4).coords(6, 1.0));
        assert_ne!(a, Sampler::new(42, "jacobi/AO+", 3).coords(6, 1.0));
        assert_ne!(a, Sampler::new(43, "jacobi/S", 3).coords(6, 1.0));
    }

    #[test]
    fn disk_bound() {
        let mut s = Sampler::new(1, "disk", 0);
        assert!(s.coords(1000, 0.3).iter().all(|z| z.norm() <= 0.3));
    }

    #[test]
    fn digest_is_stable() {
        let x = [C64::new(1.0, -0.5)];
        assert_eq!(digest(&x), digest(&x));
        assert_eq!(digest(&x).len(), 16);
        assert_ne!(digest(&x), digest(&[C64::new(1.0, 0.5)]));
    }
}
