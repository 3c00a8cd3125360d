//! Discrete invariants of triples and the slope algebra on them.
//!
//! A triple `E₂ → E₁` is represented only by its type `(n₁, n₂, d₁, d₂)`:
//! ranks and degrees of the two bundles. Everything else in the crate is a
//! function of the type, the genus and the stability parameter `α`.

use std::fmt;
use std::num::NonZeroU32;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::rational::Rational;

/// Genus of the base curve, always at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Genus(i64);

impl Genus {
    pub fn new(g: i64) -> Result<Self> {
        if g < 2 {
            return Err(domain(format!("genus must be at least 2, got {g}")));
        }
        Ok(Genus(g))
    }

    pub fn get(self) -> i64 {
        self.0
    }

    /// `2g − 2`, the degree of the canonical bundle.
    pub fn canonical_degree(self) -> i64 {
        2 * self.0 - 2
    }
}

impl TryFrom<i64> for Genus {
    type Error = crate::error::Error;
    fn try_from(g: i64) -> Result<Self> {
        Genus::new(g)
    }
}

impl From<Genus> for i64 {
    fn from(g: Genus) -> i64 {
        g.0
    }
}

/// `d/n` in lowest terms.
pub fn slope(n: NonZeroU32, d: i64) -> Rational {
    Rational::new(d, i64::from(n.get()))
}

#[derive(Deserialize)]
struct RawType {
    n1: i64,
    n2: i64,
    d1: i64,
    d2: i64,
}

/// Type `(n₁, n₂, d₁, d₂)` of a triple with both bundles nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawType")]
pub struct TripleType {
    n1: i64,
    n2: i64,
    d1: i64,
    d2: i64,
}

impl TryFrom<RawType> for TripleType {
    type Error = crate::error::Error;
    fn try_from(r: RawType) -> Result<Self> {
        TripleType::new(r.n1, r.n2, r.d1, r.d2)
    }
}

impl TripleType {
    pub fn new(n1: i64, n2: i64, d1: i64, d2: i64) -> Result<Self> {
        if n1 < 1 || n2 < 1 {
            return Err(domain(format!(
                "triple type needs positive ranks, got ({n1},{n2},{d1},{d2})"
            )));
        }
        Ok(TripleType { n1, n2, d1, d2 })
    }

    pub fn n1(&self) -> i64 {
        self.n1
    }
    pub fn n2(&self) -> i64 {
        self.n2
    }
    pub fn d1(&self) -> i64 {
        self.d1
    }
    pub fn d2(&self) -> i64 {
        self.d2
    }

    pub fn total_rank(&self) -> i64 {
        self.n1 + self.n2
    }

    pub fn total_degree(&self) -> i64 {
        self.d1 + self.d2
    }

    pub fn mu1(&self) -> Rational {
        Rational::new(self.d1, self.n1)
    }

    pub fn mu2(&self) -> Rational {
        Rational::new(self.d2, self.n2)
    }

    /// Slope of `E₁ ⊕ E₂`.
    pub fn mu(&self) -> Rational {
        Rational::new(self.total_degree(), self.total_rank())
    }

    pub fn equal_ranks(&self) -> bool {
        self.n1 == self.n2
    }

    pub fn as_factor(&self) -> FactorType {
        FactorType {
            n1: self.n1,
            n2: self.n2,
            d1: self.d1,
            d2: self.d2,
        }
    }
}

impl fmt::Display for TripleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n1, self.n2, self.d1, self.d2)
    }
}

/// Type of a subtriple or quotient triple: one of the two ranks may vanish,
/// in which case the matching degree is 0 (the zero sheaf).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawType")]
pub struct FactorType {
    n1: i64,
    n2: i64,
    d1: i64,
    d2: i64,
}

impl TryFrom<RawType> for FactorType {
    type Error = crate::error::Error;
    fn try_from(r: RawType) -> Result<Self> {
        FactorType::new(r.n1, r.n2, r.d1, r.d2)
    }
}

impl FactorType {
    pub fn new(n1: i64, n2: i64, d1: i64, d2: i64) -> Result<Self> {
        if n1 < 0 || n2 < 0 || (n1 == 0 && n2 == 0) {
            return Err(domain(format!(
                "factor ranks must be nonnegative and not both zero, got ({n1},{n2})"
            )));
        }
        if (n1 == 0 && d1 != 0) || (n2 == 0 && d2 != 0) {
            return Err(domain(format!(
                "zero-rank component must have degree 0, got ({n1},{n2},{d1},{d2})"
            )));
        }
        Ok(FactorType { n1, n2, d1, d2 })
    }

    pub fn n1(&self) -> i64 {
        self.n1
    }
    pub fn n2(&self) -> i64 {
        self.n2
    }
    pub fn d1(&self) -> i64 {
        self.d1
    }
    pub fn d2(&self) -> i64 {
        self.d2
    }

    pub fn total_rank(&self) -> i64 {
        self.n1 + self.n2
    }

    pub fn total_degree(&self) -> i64 {
        self.d1 + self.d2
    }

    /// The strict triple type, when both ranks are positive.
    pub fn as_triple(&self) -> Option<TripleType> {
        TripleType::new(self.n1, self.n2, self.d1, self.d2).ok()
    }

    /// `n₂ / (n₁ + n₂)`, the coefficient of `α` in the α-slope.
    pub fn alpha_weight(&self) -> Rational {
        Rational::new(self.n2, self.total_rank())
    }

    pub fn alpha_slope(&self, alpha: &Rational) -> Rational {
        (alpha * self.n2 + self.total_degree()) / self.total_rank()
    }

    pub fn dual(&self) -> FactorType {
        FactorType {
            n1: self.n2,
            n2: self.n1,
            d1: -self.d2,
            d2: -self.d1,
        }
    }

    pub fn checked_sub(&self, other: &FactorType) -> Option<FactorType> {
        FactorType::new(
            self.n1 - other.n1,
            self.n2 - other.n2,
            self.d1 - other.d1,
            self.d2 - other.d2,
        )
        .ok()
    }
}

impl From<TripleType> for FactorType {
    fn from(t: TripleType) -> Self {
        t.as_factor()
    }
}

impl fmt::Display for FactorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n1, self.n2, self.d1, self.d2)
    }
}

/// Candidate invariants `(n₁′, n₂′, d₁′, d₂′)` of a subtriple, tied to the
/// ambient type they are compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubtripleType {
    n1p: i64,
    n2p: i64,
    d1p: i64,
    d2p: i64,
    ambient: TripleType,
}

impl SubtripleType {
    pub fn new(ambient: TripleType, n1p: i64, n2p: i64, d1p: i64, d2p: i64) -> Result<Self> {
        if !(0..=ambient.n1).contains(&n1p) || !(0..=ambient.n2).contains(&n2p) {
            return Err(domain(format!(
                "subtriple ranks ({n1p},{n2p}) exceed ambient {ambient}"
            )));
        }
        if n1p == 0 && n2p == 0 {
            return Err(domain("subtriple ranks cannot both vanish"));
        }
        if (n1p == 0 && d1p != 0) || (n2p == 0 && d2p != 0) {
            return Err(domain("zero-rank subtriple component must have degree 0"));
        }
        Ok(SubtripleType {
            n1p,
            n2p,
            d1p,
            d2p,
            ambient,
        })
    }

    pub fn n1p(&self) -> i64 {
        self.n1p
    }
    pub fn n2p(&self) -> i64 {
        self.n2p
    }
    pub fn d1p(&self) -> i64 {
        self.d1p
    }
    pub fn d2p(&self) -> i64 {
        self.d2p
    }
    pub fn ambient(&self) -> &TripleType {
        &self.ambient
    }

    pub fn as_factor(&self) -> FactorType {
        FactorType {
            n1: self.n1p,
            n2: self.n2p,
            d1: self.d1p,
            d2: self.d2p,
        }
    }
}

/// `slope·α + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineForm {
    pub slope: Rational,
    pub constant: Rational,
}

impl AffineForm {
    pub fn eval(&self, alpha: &Rational) -> Rational {
        &self.slope * alpha + &self.constant
    }

    /// The unique root, if the form is not constant.
    pub fn root(&self) -> Option<Rational> {
        if self.slope.is_zero() {
            None
        } else {
            Some(-&self.constant / &self.slope)
        }
    }
}

/// `μ_α(T) = (d₁ + d₂ + α·n₂) / (n₁ + n₂)`.
pub fn alpha_slope(t: &TripleType, alpha: &Rational) -> Rational {
    t.as_factor().alpha_slope(alpha)
}

/// `Δ_α(T′) = μ_α(T′) − μ_α(T)`.
pub fn delta_alpha(sub: &SubtripleType, alpha: &Rational) -> Rational {
    sub.as_factor().alpha_slope(alpha) - alpha_slope(&sub.ambient, alpha)
}

/// `Δ_α(T′)` as an affine function of `α`.
pub fn delta_alpha_form(sub: &SubtripleType) -> AffineForm {
    let s = sub.as_factor();
    let t = sub.ambient;
    AffineForm {
        slope: s.alpha_weight() - Rational::new(t.n2, t.total_rank()),
        constant: Rational::new(s.total_degree(), s.total_rank()) - t.mu(),
    }
}

/// `(n₁, n₂, d₁, d₂) ↦ (n₂, n₁, −d₂, −d₁)`.
pub fn dualize(t: &TripleType) -> TripleType {
    TripleType {
        n1: t.n2,
        n2: t.n1,
        d1: -t.d2,
        d2: -t.d1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tt(n1: i64, n2: i64, d1: i64, d2: i64) -> TripleType {
        TripleType::new(n1, n2, d1, d2).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn slope_examples() {
        let nz = |n| NonZeroU32::new(n).unwrap();
        assert_eq!(slope(nz(2), 1), r(1, 2));
        assert_eq!(slope(nz(5), 0), Rational::zero());
        assert_eq!(slope(nz(3), -6), Rational::from(-2));
    }

    #[test]
    fn alpha_slope_examples() {
        assert_eq!(alpha_slope(&tt(2, 1, 1, 0), &r(3, 1)), r(4, 3));
        assert_eq!(alpha_slope(&tt(2, 1, 3, 0), &r(3, 1)), r(2, 1));
        assert_eq!(alpha_slope(&tt(3, 3, 5, 5), &Rational::zero()), r(5, 3));
    }

    #[test]
    fn delta_examples() {
        let t = tt(2, 1, 3, 0);
        let sub = SubtripleType::new(t, 1, 0, 2, 0).unwrap();
        assert_eq!(delta_alpha(&sub, &r(3, 1)), Rational::zero());
        let form = delta_alpha_form(&sub);
        assert_eq!(form.slope, r(-1, 3));
        assert_eq!(form.constant, r(1, 1));
        assert_eq!(form.root(), Some(r(3, 1)));

        let full = SubtripleType::new(t, 2, 1, 3, 0).unwrap();
        assert_eq!(delta_alpha(&full, &r(17, 5)), Rational::zero());

        let t = tt(2, 1, 1, 0);
        let sub = SubtripleType::new(t, 0, 1, 0, 0).unwrap();
        assert_eq!(delta_alpha(&sub, &r(1, 2)), Rational::zero());
        let form = delta_alpha_form(&sub);
        assert_eq!(form.slope, r(2, 3));
        assert_eq!(form.constant, r(-1, 3));
    }

    #[test]
    fn alpha_independent_form_has_zero_slope() {
        let t = tt(2, 2, 4, 0);
        let sub = SubtripleType::new(t, 1, 1, 2, 0).unwrap();
        let form = delta_alpha_form(&sub);
        assert!(form.slope.is_zero());
        assert_eq!(form.root(), None);
    }

    #[test]
    fn dualize_examples() {
        assert_eq!(dualize(&tt(2, 1, 1, 0)), tt(1, 2, 0, -1));
        assert_eq!(dualize(&tt(3, 3, 2, -2)), tt(3, 3, 2, -2));
    }

    #[test]
    fn invalid_inputs() {
        assert!(Genus::new(1).is_err());
        assert!(TripleType::new(0, 1, 0, 0).is_err());
        let t = tt(2, 1, 3, 0);
        assert!(SubtripleType::new(t, 0, 0, 0, 0).is_err());
        assert!(SubtripleType::new(t, 3, 0, 0, 0).is_err());
        assert!(SubtripleType::new(t, 0, 1, 1, 0).is_err());
        assert!(FactorType::new(1, 0, 2, 1).is_err());
    }

    #[test]
    fn serde_rejects_invalid_type() {
        assert!(serde_json::from_str::<TripleType>(r#"{"n1":0,"n2":1,"d1":0,"d2":0}"#).is_err());
        assert!(serde_json::from_str::<Genus>("1").is_err());
    }

    fn any_type() -> impl Strategy<Value = TripleType> {
        (1i64..8, 1i64..8, -20i64..20, -20i64..20).prop_map(|(a, b, c, d)| tt(a, b, c, d))
    }

    fn any_sub() -> impl Strategy<Value = SubtripleType> {
        any_type()
            .prop_flat_map(|t| (Just(t), 0..=t.n1(), 0..=t.n2(), -20i64..20, -20i64..20))
            .prop_filter_map("valid subtriple", |(t, a, b, c, d)| {
                let c = if a == 0 { 0 } else { c };
                let d = if b == 0 { 0 } else { d };
                SubtripleType::new(t, a, b, c, d).ok()
            })
    }

    proptest! {
        #[test]
        fn dualize_is_involution(t in any_type()) {
            prop_assert_eq!(dualize(&dualize(&t)), t);
        }

        #[test]
        fn affine_form_matches_delta(sub in any_sub(), pts in proptest::collection::vec((-200i64..200, 1i64..50), 100)) {
            let form = delta_alpha_form(&sub);
            for (p, q) in pts {
                let a = r(p, q);
                prop_assert_eq!(form.eval(&a), delta_alpha(&sub, &a));
            }
        }

        #[test]
        fn alpha_slope_two_routes(t in any_type(), p in -100i64..100, q in 1i64..30) {
            let a = r(p, q);
            let expanded = t.mu() + &a * Rational::new(t.n2(), t.total_rank());
            prop_assert_eq!(alpha_slope(&t, &a), expanded);
        }

        #[test]
        fn results_in_lowest_terms(t in any_type(), p in -100i64..100, q in 1i64..30) {
            let v = alpha_slope(&t, &r(p, q));
            prop_assert!(v.denom() > &num_bigint::BigInt::from(0));
            let g = num_integer::Integer::gcd(v.numer(), v.denom());
            prop_assert_eq!(g, num_bigint::BigInt::from(1));
        }
    }
}
