use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CliffordError, Result};

/// Largest supported `n = p + q`.
pub const MAX_DIM: usize = 12;

/// Metric signature of `Cl(p,q)`.
///
/// Generators `e1..ep` square to `+1` and `e(p+1)..en` square to `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Signature {
    p: u8,
    q: u8,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let n = p + q;
        if n > MAX_DIM {
            return Err(CliffordError::DimensionTooLarge(n));
        }
        Ok(Self {
            p: p as u8,
            q: q as u8,
        })
    }

    /// The spacetime algebra `Cl(1,3)`: `e1` is timelike.
    pub fn spacetime() -> Self {
        Self { p: 1, q: 3 }
    }

    pub fn p(&self) -> usize {
        self.p as usize
    }

    pub fn q(&self) -> usize {
        self.q as usize
    }

    pub fn n(&self) -> usize {
        self.p() + self.q()
    }

    /// Number of basis blades, `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    /// Square of generator `i` (0-based).
    pub fn square(&self, i: usize) -> f64 {
        debug_assert!(i < self.n());
        if i < self.p() {
            1.0
        } else {
            -1.0
        }
    }

    /// Mask with every generator set (the pseudoscalar blade).
    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.n()) - 1) as u32
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}

impl TryFrom<[usize; 2]> for Signature {
    type Error = CliffordError;

    fn try_from(value: [usize; 2]) -> Result<Self> {
        Signature::new(value[0], value[1])
    }
}

impl From<Signature> for [usize; 2] {
    fn from(sig: Signature) -> Self {
        [sig.p(), sig.q()]
    }
}
