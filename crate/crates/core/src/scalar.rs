//! Scalar traits for the exact coefficient domains, plus a run-time prime
//! field for modular rank checks.
//!
//! [`Ring`] and [`Field`] are blanket-implemented bounds assembled from
//! `num_traits`, so `BigRational` (the crate-wide [`crate::Rat`]) and [`Fp`]
//! both qualify without glue code.

use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact commutative ring scalar.
pub trait Ring:
    Clone + fmt::Debug + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + fmt::Debug + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

/// Exact field scalar: a ring with division.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = Self> {}

/// Element of a prime field with the modulus carried at run time.
///
/// The additive and multiplicative identities produced by `Zero::zero()` and
/// `One::one()` carry modulus 0 and adopt the modulus of the other operand
/// when combined; mixing two distinct nonzero moduli panics. All elements of
/// one matrix share a modulus, so elimination never mixes primes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus > 1, "modulus must exceed 1");
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn join(a: u64, b: u64) -> u64 {
        match (a, b) {
            (0, m) | (m, 0) => m,
            (m, k) => {
                assert_eq!(m, k, "mixed moduli {m} and {k}");
                m
            }
        }
    }

    pub fn pow(self, mut exp: u64) -> Self {
        assert!(self.modulus != 0, "pow needs a bound modulus");
        let m = self.modulus as u128;
        let mut base = self.value as u128;
        let mut acc = 1u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Fp {
            value: acc as u64,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        assert!(self.modulus != 0, "inverse needs a bound modulus");
        self.pow(self.modulus - 2)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.modulus, rhs.modulus);
        let v = self.value as u128 + rhs.value as u128;
        Fp {
            value: if m == 0 {
                v as u64
            } else {
                (v % m as u128) as u64
            },
            modulus: m,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.modulus, rhs.modulus);
        if m == 0 {
            return Fp {
                value: self
                    .value
                    .checked_sub(rhs.value)
                    .expect("modulus-free subtraction underflow"),
                modulus: 0,
            };
        }
        Fp {
            value: (self.value + m - rhs.value % m) % m,
            modulus: m,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.modulus == 0 {
            assert!(self.value == 0, "cannot negate a modulus-free nonzero");
            return self;
        }
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.modulus, rhs.modulus);
        let v = self.value as u128 * rhs.value as u128;
        Fp {
            value: if m == 0 {
                v as u64
            } else {
                (v % m as u128) as u64
            },
            modulus: m,
        }
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inv()
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp {
            value: 0,
            modulus: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp {
            value: 1,
            modulus: 0,
        }
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic_mod_7() {
        let a = Fp::new(3, 7);
        let b = Fp::new(5, 7);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!((a / b).value(), 2); // 3 * 5^{-1} = 3 * 3 = 9 = 2
        assert_eq!((-a).value(), 4);
    }

    #[test]
    fn identities_adopt_modulus() {
        let a = Fp::new(4, 11);
        assert_eq!((Fp::zero() + a).modulus(), 11);
        assert_eq!((Fp::one() * a).value(), 4);
        assert!((a - a).is_zero());
    }

    #[test]
    fn inverse_round_trips() {
        for v in 1..23 {
            let x = Fp::new(v, 23);
            assert!((x * x.inv()).is_one());
        }
    }
}
