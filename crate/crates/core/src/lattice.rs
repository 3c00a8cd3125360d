//! Integer solutions of one-variable affine inequalities with rational
//! coefficients.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::rational::Rational;

/// The integers `x` with `lo ≤ x ≤ hi`; a missing end is unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntRange {
    lo: Option<BigInt>,
    hi: Option<BigInt>,
}

impl IntRange {
    pub(crate) fn all() -> Self {
        IntRange { lo: None, hi: None }
    }

    fn raise_lo(&mut self, v: BigInt) {
        if self.lo.as_ref().map_or(true, |l| v > *l) {
            self.lo = Some(v);
        }
    }

    fn lower_hi(&mut self, v: BigInt) {
        if self.hi.as_ref().map_or(true, |h| v < *h) {
            self.hi = Some(v);
        }
    }

    /// Intersect with `{x : a·x + b ≥ 0}`.
    pub(crate) fn ge_zero(mut self, a: &Rational, b: &Rational) -> Self {
        if a.is_zero() {
            if b.is_negative() {
                self.lo = Some(BigInt::from(1));
                self.hi = Some(BigInt::from(0));
            }
            return self;
        }
        let root = -b / a;
        if a.is_positive() {
            self.raise_lo(root.ceil());
        } else {
            self.lower_hi(root.floor());
        }
        self
    }

    /// Intersect with `{x : a·x + b ≤ 0}`.
    pub(crate) fn le_zero(self, a: &Rational, b: &Rational) -> Self {
        self.ge_zero(&-a, &-b)
    }

    /// Members in ascending order. `None` if a side is unbounded or the
    /// range does not fit in `i64`.
    pub(crate) fn iter(&self) -> Option<std::ops::RangeInclusive<i64>> {
        let lo = self.lo.as_ref()?.to_i64()?;
        let hi = self.hi.as_ref()?.to_i64()?;
        Some(lo..=hi)
    }
}
