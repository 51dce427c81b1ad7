//! Exact arithmetic on real quadratic irrationals (a + b·√d)/c.
//!
//! Values are kept in a canonical form: c > 0, d squarefree and
//! non-negative, gcd(a, b, c) = 1, and b = 0 forces d = 0. Comparisons
//! reduce to integer sign determinations by case analysis and squaring;
//! no floating point is ever consulted. Projective directions of the
//! rank-2 cone geometry are slopes of this shape plus a point at
//! infinity.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// n = s²·f with f squarefree; returns (s, f). Trial division, adequate
/// for the discriminant sizes the chamber geometry produces.
fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(!n.is_negative());
    if n.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    let mut rem = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rem {
        if (&rem % &p).is_zero() {
            let mut mult = 0u32;
            while (&rem % &p).is_zero() {
                rem /= &p;
                mult += 1;
            }
            for _ in 0..mult / 2 {
                square *= &p;
            }
            if mult % 2 == 1 {
                free *= &p;
            }
        }
        p += 1;
    }
    free *= rem;
    (square, free)
}

/// A real quadratic irrational (a + b·√d)/c in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadExt {
    /// Canonicalizing constructor. Panics on c = 0 or d < 0; both are
    /// internal contract violations, not user input.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        assert!(!c.is_zero(), "denominator must be nonzero");
        assert!(!d.is_negative(), "radicand must be non-negative");
        let (mut a, mut b, mut c, mut d) = (a, b, c, d);
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        if b.is_zero() || d.is_zero() {
            b = BigInt::zero();
            d = BigInt::zero();
        } else {
            let (s, f) = squarefree_decompose(&d);
            b *= s;
            d = f;
            if d.is_one() {
                a += &b;
                b = BigInt::zero();
                d = BigInt::zero();
            }
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        QuadExt { a, b, c, d }
    }

    pub fn from_rational(num: BigInt, den: BigInt) -> Self {
        QuadExt::new(num, BigInt::zero(), den, BigInt::zero())
    }

    pub fn from_integer(n: BigInt) -> Self {
        QuadExt::from_rational(n, BigInt::one())
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Rational part a/c as an exact rational.
    pub fn rational_part(&self) -> BigRational {
        BigRational::new(self.a.clone(), self.c.clone())
    }

    /// Surd coefficient b/c as an exact rational.
    pub fn surd_coefficient(&self) -> BigRational {
        BigRational::new(self.b.clone(), self.c.clone())
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    /// Exact sign of the value.
    pub fn sign(&self) -> Ordering {
        sign_two_term(&self.a, &self.b, &self.d)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            if self.c.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            }
        } else if self.c.is_one() {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        } else {
            write!(f, "({} + {}*sqrt({}))/{}", self.a, self.b, self.d, self.c)
        }
    }
}

/// Sign of A + B·√d for d >= 0.
fn sign_two_term(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    if b.is_zero() || d.is_zero() {
        return a.cmp(&BigInt::zero());
    }
    match (a.sign(), b.sign()) {
        (num_bigint::Sign::NoSign, _) => b.cmp(&BigInt::zero()),
        (num_bigint::Sign::Plus, num_bigint::Sign::Plus) => Ordering::Greater,
        (num_bigint::Sign::Minus, num_bigint::Sign::Minus) => Ordering::Less,
        _ => {
            // opposite signs: compare squares, oriented by the surd term
            let lhs = b * b * d;
            let rhs = a * a;
            match b.sign() {
                num_bigint::Sign::Plus => lhs.cmp(&rhs),
                _ => rhs.cmp(&lhs),
            }
        }
    }
}

/// Sign of A + B·√d1 + C·√d2 for squarefree d1, d2 >= 0.
fn sign_three_term(a: &BigInt, b: &BigInt, d1: &BigInt, c: &BigInt, d2: &BigInt) -> Ordering {
    if b.is_zero() || d1.is_zero() {
        return sign_two_term(a, c, d2);
    }
    if c.is_zero() || d2.is_zero() {
        return sign_two_term(a, b, d1);
    }
    if d1 == d2 {
        return sign_two_term(a, &(b + c), d1);
    }
    // sign of S = B√d1 + C√d2
    let surd_sign = match (b.sign(), c.sign()) {
        (num_bigint::Sign::Plus, num_bigint::Sign::Plus) => Ordering::Greater,
        (num_bigint::Sign::Minus, num_bigint::Sign::Minus) => Ordering::Less,
        _ => {
            let cmp = (b * b * d1).cmp(&(c * c * d2));
            if b.is_positive() {
                cmp
            } else {
                cmp.reverse()
            }
        }
    };
    if a.is_zero() {
        return surd_sign;
    }
    if surd_sign == Ordering::Equal {
        return a.cmp(&BigInt::zero());
    }
    let a_sign = a.cmp(&BigInt::zero());
    if a_sign == surd_sign {
        return a_sign;
    }
    // A and S have opposite signs: the answer is the sign of |S| - |A|
    // oriented by S, and S² - A² = (B²d1 + C²d2 - A²) + 2BC·√(d1·d2)
    // with the square part of d1·d2 folded into the coefficient.
    let prod = d1 * d2;
    let (square, f) = squarefree_decompose(&prod);
    let constant = b * b * d1 + c * c * d2 - a * a;
    let coeff = BigInt::from(2) * b * c * square;
    let square_cmp = sign_two_term(&constant, &coeff, &f);
    match surd_sign {
        Ordering::Greater => square_cmp,
        Ordering::Less => square_cmp.reverse(),
        Ordering::Equal => unreachable!(),
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        // sign of (a1 + b1√d1)/c1 - (a2 + b2√d2)/c2 with c1, c2 > 0
        let a = &self.a * &other.c - &other.a * &self.c;
        let b = &self.b * &other.c;
        let c = -(&other.b * &self.c);
        sign_three_term(&a, &b, &self.d, &c, &other.d)
    }
}

/// A projective direction of the plane: a slope, or the vertical
/// direction at infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SurdRay {
    Infinite,
    Slope(QuadExt),
}

impl SurdRay {
    pub fn infinite() -> Self {
        SurdRay::Infinite
    }

    pub fn slope(q: QuadExt) -> Self {
        SurdRay::Slope(q)
    }

    /// Direction of the integer vector (x, y): slope y/x, or the point at
    /// infinity when x = 0. The zero vector is not a direction.
    pub fn from_direction(x: &BigInt, y: &BigInt) -> Self {
        if x.is_zero() {
            assert!(!y.is_zero(), "zero vector has no direction");
            SurdRay::Infinite
        } else {
            SurdRay::Slope(QuadExt::from_rational(y.clone(), x.clone()))
        }
    }

    pub fn is_rational(&self) -> bool {
        match self {
            SurdRay::Infinite => true,
            SurdRay::Slope(q) => q.is_rational(),
        }
    }
}

impl fmt::Display for SurdRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurdRay::Infinite => write!(f, "inf"),
            SurdRay::Slope(q) => write!(f, "{q}"),
        }
    }
}
