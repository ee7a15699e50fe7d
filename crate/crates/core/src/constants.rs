//! Derived size constants of a transducer, kept exact with big integers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::transducer::Transducer;

/// Default size limit, in bits of the power `2^(3·e_max)`, for materializing `B`.
pub const DEFAULT_BIT_CAP: u64 = 1 << 20;

/// `B = c_max · h_max · (2^exponent + 4)` without expanding the power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredBound {
    pub c_max: u64,
    pub h_max: u64,
    pub exponent: BigUint,
}

impl FactoredBound {
    /// Expands the bound when the exponent is at most `bit_cap`.
    pub fn materialize(&self, bit_cap: u64) -> Option<BigUint> {
        let e = self.exponent.to_u64().filter(|&e| e <= bit_cap)?;
        let pow = BigUint::one() << e;
        Some(BigUint::from(self.c_max) * BigUint::from(self.h_max) * (pow + 4u32))
    }

    /// Whether `n ≤ B`, decided without expanding the power.
    pub fn admits(&self, n: &BigUint) -> bool {
        let ch = BigUint::from(self.c_max) * BigUint::from(self.h_max);
        if ch.is_zero() {
            return n.is_zero();
        }
        if BigUint::from(n.bits()) <= self.exponent {
            return true;
        }
        // Here the exponent is below the bit length of `n`, so it fits in u64.
        let e = self.exponent.to_u64().expect("exponent below a bit length");
        if e <= DEFAULT_BIT_CAP {
            return n <= &self.materialize(e).expect("exponent fits");
        }
        // 4·c_max·h_max < 2^e here, so comparing quotient and remainder is exact.
        let q = n >> e;
        let r = n - (&q << e);
        q < ch || (q == ch && r <= ch * 4u32)
    }
}

impl std::fmt::Display for FactoredBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}·{}·(2^{}+4)", self.c_max, self.h_max, self.exponent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constants {
    pub h_max: u64,
    pub c_max: u64,
    pub e_max: BigUint,
    pub b_factored: FactoredBound,
    /// `B` itself, present when requested and small enough.
    pub b: Option<BigUint>,
}

/// `e_max = (2·states)^(2·h_max)` with `h_max = 2·states − 1`.
pub fn e_max_for(states: u64) -> BigUint {
    let h = 2 * states - 1;
    BigUint::from(2 * states).pow((2 * h) as u32)
}

/// Constants of `t`; `B` is expanded only if `materialize` holds and
/// `3·e_max ≤ bit_cap`.
pub fn constants(t: &Transducer, materialize: bool, bit_cap: u64) -> Constants {
    constants_for(
        t.num_states() as u64,
        t.c_max() as u64,
        materialize,
        bit_cap,
    )
}

pub fn constants_for(states: u64, c_max: u64, materialize: bool, bit_cap: u64) -> Constants {
    let h_max = 2 * states - 1;
    let e_max = e_max_for(states);
    let b_factored = FactoredBound {
        c_max,
        h_max,
        exponent: &e_max * 3u32,
    };
    let b = if materialize {
        b_factored.materialize(bit_cap)
    } else {
        None
    };
    Constants {
        h_max,
        c_max,
        e_max,
        b_factored,
        b,
    }
}

/// The pass bound `2·h_max·(2^(3·e_max)+1)` for unbounded sweeping, kept factored
/// as `(2·h_max, 3·e_max)`.
pub fn sweeping_pass_bound(states: u64) -> (u64, BigUint) {
    (2 * (2 * states - 1), e_max_for(states) * 3u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_state() {
        let c = constants_for(1, 1, true, DEFAULT_BIT_CAP);
        assert_eq!(c.h_max, 1);
        assert_eq!(c.e_max, BigUint::from(4u32));
        assert_eq!(c.b, Some(BigUint::from(4100u32)));
    }

    #[test]
    fn cap_blocks_materialization() {
        let c = constants_for(3, 1, true, DEFAULT_BIT_CAP);
        assert_eq!(c.b, None);
        assert!(c.b_factored.admits(&BigUint::from(10u32).pow(100)));
        let small = constants_for(1, 1, true, DEFAULT_BIT_CAP).b_factored;
        assert!(small.admits(&BigUint::from(4100u32)));
        assert!(!small.admits(&BigUint::from(4101u32)));
    }
}
