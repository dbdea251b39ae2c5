//! Coefficient rings used throughout the crate.
//!
//! All algebra is generic over a [`Ring`] context object (the element type
//! alone does not know how to multiply itself; the ring does). This keeps
//! exact rationals, quadratic extensions, truncated series and big-float
//! complex numbers behind one interface.

use std::fmt::Debug;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;
pub type Int = BigInt;

/// Exact rational from a numerator/denominator pair.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Exact rational from an integer.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Parse "p/q" or "p" into an exact rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().ok()?;
            let q: Int = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => {
            let p: Int = s.parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

/// Render a rational as "p/q" (or "p" when the denominator is 1).
pub fn show_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Commutative ring context. Elements are plain data; the context performs
/// the arithmetic.
pub trait Ring: Clone + Debug + Send + Sync {
    type El: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    /// Multiplicative inverse, when `a` is a unit.
    fn try_inv(&self, a: &Self::El) -> Option<Self::El>;
    fn from_i64(&self, n: i64) -> Self::El;
    fn from_rat(&self, r: &Rat) -> Self::El;
    fn show(&self, a: &Self::El) -> String;

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.add(a, &self.neg(b))
    }

    fn add_assign(&self, a: &mut Self::El, b: &Self::El) {
        *a = self.add(a, b);
    }

    /// `a / b`, panicking when `b` is not a unit.
    fn div(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let inv = self
            .try_inv(b)
            .unwrap_or_else(|| panic!("division by non-unit {}", self.show(b)));
        self.mul(a, &inv)
    }

    /// Integer power; negative exponents require a unit base.
    fn pow_i64(&self, a: &Self::El, n: i64) -> Self::El {
        if n < 0 {
            let inv = self
                .try_inv(a)
                .unwrap_or_else(|| panic!("negative power of non-unit {}", self.show(a)));
            return self.pow_i64(&inv, -n);
        }
        let mut acc = self.one();
        let mut base = a.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn sum(&self, it: impl IntoIterator<Item = Self::El>) -> Self::El {
        let mut acc = self.zero();
        for x in it {
            self.add_assign(&mut acc, &x);
        }
        acc
    }
}

/// The field of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QQ;

impl Ring for QQ {
    type El = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a.clone()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn try_inv(&self, a: &Rat) -> Option<Rat> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> Rat {
        rat_i(n)
    }
    fn from_rat(&self, r: &Rat) -> Rat {
        r.clone()
    }
    fn show(&self, a: &Rat) -> String {
        show_rat(a)
    }
}

/// Element of a quadratic extension Q(sqrt(d)): `a + b*sqrt(d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadEl {
    pub a: Rat,
    pub b: Rat,
}

/// The field Q(sqrt(d)) for a fixed non-square rational d.
///
/// Covers every splitting field the engine needs in practice: Q(i),
/// Q(sqrt(-3)) (hence all cube and sixth roots of unity), and real
/// quadratic fields arising from canonical-coordinate splittings.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadField {
    pub d: Rat,
}

impl QuadField {
    pub fn new(d: Rat) -> Self {
        QuadField { d }
    }

    pub fn sqrt_d(&self) -> QuadEl {
        QuadEl {
            a: Rat::zero(),
            b: Rat::one(),
        }
    }

    pub fn from_parts(&self, a: Rat, b: Rat) -> QuadEl {
        QuadEl { a, b }
    }

    /// Primitive cube root of unity; only meaningful when d = -3.
    pub fn zeta3(&self) -> QuadEl {
        assert_eq!(self.d, rat_i(-3), "zeta3 lives in Q(sqrt(-3))");
        QuadEl {
            a: rat(-1, 2),
            b: rat(1, 2),
        }
    }

    /// The rational part, if the element is rational.
    pub fn as_rat(&self, x: &QuadEl) -> Option<Rat> {
        if x.b.is_zero() {
            Some(x.a.clone())
        } else {
            None
        }
    }
}

impl Ring for QuadField {
    type El = QuadEl;

    fn zero(&self) -> QuadEl {
        QuadEl {
            a: Rat::zero(),
            b: Rat::zero(),
        }
    }
    fn one(&self) -> QuadEl {
        QuadEl {
            a: Rat::one(),
            b: Rat::zero(),
        }
    }
    fn is_zero(&self, x: &QuadEl) -> bool {
        x.a.is_zero() && x.b.is_zero()
    }
    fn neg(&self, x: &QuadEl) -> QuadEl {
        QuadEl {
            a: -x.a.clone(),
            b: -x.b.clone(),
        }
    }
    fn add(&self, x: &QuadEl, y: &QuadEl) -> QuadEl {
        QuadEl {
            a: &x.a + &y.a,
            b: &x.b + &y.b,
        }
    }
    fn mul(&self, x: &QuadEl, y: &QuadEl) -> QuadEl {
        QuadEl {
            a: &x.a * &y.a + &self.d * &x.b * &y.b,
            b: &x.a * &y.b + &x.b * &y.a,
        }
    }
    fn try_inv(&self, x: &QuadEl) -> Option<QuadEl> {
        // norm = a^2 - d b^2; nonzero for nonzero x since d is a non-square
        let norm = &x.a * &x.a - &self.d * &x.b * &x.b;
        if norm.is_zero() {
            return None;
        }
        Some(QuadEl {
            a: &x.a / &norm,
            b: -(&x.b / &norm),
        })
    }
    fn from_i64(&self, n: i64) -> QuadEl {
        QuadEl {
            a: rat_i(n),
            b: Rat::zero(),
        }
    }
    fn from_rat(&self, r: &Rat) -> QuadEl {
        QuadEl {
            a: r.clone(),
            b: Rat::zero(),
        }
    }
    fn show(&self, x: &QuadEl) -> String {
        if x.b.is_zero() {
            show_rat(&x.a)
        } else if x.a.is_zero() {
            format!("{}*sqrt({})", show_rat(&x.b), show_rat(&self.d))
        } else {
            format!(
                "{}+{}*sqrt({})",
                show_rat(&x.a),
                show_rat(&x.b),
                show_rat(&self.d)
            )
        }
    }
}

/// Euler-graded elements over a base ring: a single homogeneous piece
/// `val * X^pow` in a formal grading variable X.
///
/// Additions require matching grades (a mismatch is a logic error in a
/// homogeneity argument, so it panics); multiplication adds grades. Zero
/// carries the canonical grade 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Graded<T> {
    pub pow: i64,
    pub val: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedRing<R: Ring> {
    pub base: R,
}

impl<R: Ring> GradedRing<R> {
    pub fn new(base: R) -> Self {
        GradedRing { base }
    }

    pub fn el(&self, pow: i64, val: R::El) -> Graded<R::El> {
        if self.base.is_zero(&val) {
            Graded { pow: 0, val }
        } else {
            Graded { pow, val }
        }
    }
}

impl<R: Ring> Ring for GradedRing<R> {
    type El = Graded<R::El>;

    fn zero(&self) -> Self::El {
        Graded {
            pow: 0,
            val: self.base.zero(),
        }
    }
    fn one(&self) -> Self::El {
        Graded {
            pow: 0,
            val: self.base.one(),
        }
    }
    fn is_zero(&self, a: &Self::El) -> bool {
        self.base.is_zero(&a.val)
    }
    fn neg(&self, a: &Self::El) -> Self::El {
        Graded {
            pow: a.pow,
            val: self.base.neg(&a.val),
        }
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        if self.base.is_zero(&a.val) {
            return b.clone();
        }
        if self.base.is_zero(&b.val) {
            return a.clone();
        }
        assert_eq!(
            a.pow, b.pow,
            "graded addition of inhomogeneous terms: {} vs {}",
            a.pow, b.pow
        );
        self.el(a.pow, self.base.add(&a.val, &b.val))
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.el(a.pow + b.pow, self.base.mul(&a.val, &b.val))
    }
    fn try_inv(&self, a: &Self::El) -> Option<Self::El> {
        Some(Graded {
            pow: -a.pow,
            val: self.base.try_inv(&a.val)?,
        })
    }
    fn from_i64(&self, n: i64) -> Self::El {
        self.el(0, self.base.from_i64(n))
    }
    fn from_rat(&self, r: &Rat) -> Self::El {
        self.el(0, self.base.from_rat(r))
    }
    fn show(&self, a: &Self::El) -> String {
        if a.pow == 0 {
            self.base.show(&a.val)
        } else {
            format!("({})*X^{}", self.base.show(&a.val), a.pow)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_roundtrip() {
        let r = parse_rat("-22/7").unwrap();
        assert_eq!(show_rat(&r), "-22/7");
        assert_eq!(parse_rat("5").unwrap(), rat_i(5));
        assert!(parse_rat("1/0").is_none());
    }

    #[test]
    fn quad_field_inverse_and_zeta3() {
        let f = QuadField::new(rat_i(-3));
        let z = f.zeta3();
        // zeta3^3 = 1, 1 + zeta3 + zeta3^2 = 0
        let z3 = f.pow_i64(&z, 3);
        assert_eq!(z3, f.one());
        let s = f.add(&f.add(&f.one(), &z), &f.mul(&z, &z));
        assert!(f.is_zero(&s));
        let inv = f.try_inv(&z).unwrap();
        assert_eq!(f.mul(&z, &inv), f.one());
    }

    #[test]
    fn graded_arithmetic() {
        let g = GradedRing::new(QQ);
        let a = g.el(2, rat_i(3));
        let b = g.el(-1, rat(1, 2));
        let p = g.mul(&a, &b);
        assert_eq!(p.pow, 1);
        assert_eq!(p.val, rat(3, 2));
        let inv = g.try_inv(&a).unwrap();
        assert_eq!(inv.pow, -2);
        assert_eq!(g.mul(&a, &inv), g.one());
    }

    #[test]
    #[should_panic(expected = "inhomogeneous")]
    fn graded_add_mismatch_panics() {
        let g = GradedRing::new(QQ);
        let a = g.el(1, rat_i(1));
        let b = g.el(2, rat_i(1));
        let _ = g.add(&a, &b);
    }
}
