use crate::error::{bail_arg, Result};

/// Coefficient field Z/pZ for a prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u32,
}

impl Default for FieldSpec {
    fn default() -> Self {
        Self { characteristic: 2 }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl FieldSpec {
    /// Largest supported characteristic; keeps products inside `u64`.
    pub const MAX_CHARACTERISTIC: u32 = 1 << 31;

    pub fn new(characteristic: u32) -> Result<Self> {
        if !is_prime(characteristic) || characteristic > Self::MAX_CHARACTERISTIC {
            bail_arg!("field characteristic must be a prime below 2^31, got {characteristic}");
        }
        Ok(Self { characteristic })
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.characteristic as u64) as u32
    }

    #[inline]
    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.characteristic as u64) as u32
    }

    #[inline]
    pub(crate) fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.characteristic - a
        }
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub(crate) fn inv(&self, a: u32) -> u32 {
        debug_assert!(a % self.characteristic != 0);
        let p = self.characteristic as u64;
        let (mut base, mut exp, mut acc) = (a as u64 % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u32
    }

    /// The coefficient (-1)^i of the i-th face in a boundary.
    #[inline]
    pub(crate) fn sign(&self, i: usize) -> u32 {
        if i % 2 == 0 {
            1
        } else {
            self.neg(1)
        }
    }
}
