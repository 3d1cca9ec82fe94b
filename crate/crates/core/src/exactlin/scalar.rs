use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact integer ring the linear algebra runs over.
///
/// Machine integers are accepted for speed on inputs known to stay small;
/// they panic on overflow instead of wrapping. `BigInt` never overflows and is
/// what the rest of the crate uses.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + 'static
    + Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + FromStr
{
    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self);

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self);

    fn from_i64_lossless(v: i64) -> Self {
        Self::from_i64(v).expect("scalar type cannot hold an i64 value")
    }
}

macro_rules! impl_scalar_prim {
    ($t:ty) => {
        impl Scalar for $t {
            #[inline]
            fn sub_mul(&mut self, a: &Self, b: &Self) {
                *self = a
                    .checked_mul(*b)
                    .and_then(|p| self.checked_sub(p))
                    .expect(concat!(stringify!($t), " overflow in exact arithmetic"));
            }

            #[inline]
            fn add_mul(&mut self, a: &Self, b: &Self) {
                *self = a
                    .checked_mul(*b)
                    .and_then(|p| self.checked_add(p))
                    .expect(concat!(stringify!($t), " overflow in exact arithmetic"));
            }
        }
    };
}

impl_scalar_prim!(i64);
impl_scalar_prim!(i128);

impl Scalar for BigInt {
    #[inline]
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }

    #[inline]
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd<T: Scalar>(a: &T, b: &T) -> (T, T, T) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = old_r.clone() - q.clone() * r.clone();
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s.clone() - q.clone() * s.clone();
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = old_t.clone() - q * t.clone();
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}
