use std::fmt;

use crate::signature::Signature;

/// A canonical basis blade `e_{a1} e_{a2} ... e_{ak}` with `a1 < a2 < ... < ak`.
///
/// Bit `i` of the mask stands for generator `e_{i+1}`. The empty mask is the
/// scalar unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Blade for a single generator (0-based index).
    pub fn generator(i: usize) -> Self {
        Blade(1 << i)
    }

    /// Builds a blade from 0-based generator indices, returning the sign
    /// picked up while sorting them into canonical order. Repeated indices
    /// are rejected.
    pub fn from_indices(indices: &[usize]) -> Option<(f64, Blade)> {
        let mut mask = 0u32;
        let mut sign = 1.0;
        for &i in indices {
            if i >= 32 || mask & (1 << i) != 0 {
                return None;
            }
            // generators already present with a larger index must be swapped past
            let higher = mask >> (i + 1);
            if higher.count_ones() % 2 == 1 {
                sign = -sign;
            }
            mask |= 1 << i;
        }
        Some((sign, Blade(mask)))
    }

    /// 0-based generator indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |i| mask & (1 << i) != 0)
    }

    pub fn is_valid_for(self, sig: Signature) -> bool {
        self.0 & !sig.full_mask() == 0
    }

    /// Sign of `(-1)^{k(k-1)/2}` applied by reversion.
    pub fn reversion_sign(self) -> f64 {
        let k = self.grade();
        if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// Sign `(-1)^k` applied by the grade involution.
    pub fn involution_sign(self) -> f64 {
        if self.grade().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// Product of the squares of the generators in this blade.
    pub fn metric_square(self, sig: Signature) -> f64 {
        self.indices().map(|i| sig.square(i)).product()
    }
}

/// Sign from reordering the concatenated factor list `a b` into ascending order.
pub fn reorder_sign(a: u32, b: u32) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Geometric product of two basis blades: `e_a e_b = sign * e_{a xor b}`.
pub fn blade_product(sig: Signature, a: Blade, b: Blade) -> (f64, Blade) {
    let common = Blade(a.0 & b.0);
    let sign = reorder_sign(a.0, b.0) * common.metric_square(sig);
    (sign, Blade(a.0 ^ b.0))
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for i in self.indices() {
            if !first {
                write!(f, "^")?;
            }
            write!(f, "e{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}
