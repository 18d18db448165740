//! Dense polynomials with arbitrary-precision integer coefficients.
//!
//! Everything the set classifiers need reduces to a handful of exact
//! operations on these: ring arithmetic, exact division, primitive gcd,
//! cyclotomic trial division and an exact count of the roots lying on the
//! complex unit circle.

mod circle;
mod cyclotomic;
mod roots;
mod sturm;

pub use circle::{count_unit_circle_roots, trace_polynomial, unit_circle_roots, UnitCircleRoots};
pub use cyclotomic::{cyclotomic, cyclotomic_divisors, euler_phi, is_prime_power};
pub(crate) use cyclotomic::divisors;
pub use roots::{numeric_roots, ApproxRoot, CLUSTER_FACTOR, DEFAULT_ROOT_TOL};
pub use sturm::{sturm_count, sturm_sequence};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomial has a repeated root inside the counting interval")]
    NotSquarefree,
    #[error("empty interval: lower bound must be below upper bound")]
    EmptyInterval,
    #[error("root iteration did not converge within {0} steps")]
    NonConvergence(usize),
    #[error("cyclotomic index must be positive")]
    BadIndex,
    #[error("polynomial is not self-reciprocal of even degree")]
    NotSelfReciprocal,
}

/// Integer polynomial, coefficients in ascending degree order.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// The monomial `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        IntPoly { coeffs }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut p = IntPoly::monomial(n);
        p.coeffs[0] -= 1;
        p.trim();
        p
    }

    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Sum of `x^e` over the given exponents. Repeated exponents accumulate.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for e in exps {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += 1;
        }
        IntPoly::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Coefficient reversal `x^deg · P(1/x)`.
    pub fn reciprocal(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::new(coeffs)
    }

    /// `P(−x)`
    pub fn negate_variable(&self) -> IntPoly {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Largest `v` with `x^v | P`, together with `P / x^v`.
    pub fn split_x_power(&self) -> (usize, IntPoly) {
        let v = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (
            v,
            IntPoly {
                coeffs: self.coeffs[v..].to_vec(),
            },
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `P(q)` for a rational point, computed exactly.
    pub fn sign_at(&self, q: &BigRational) -> i8 {
        if self.is_zero() {
            return 0;
        }
        // den^deg · P(num/den) has the sign of P(q) because den > 0.
        let num = q.numer();
        let den = q.denom();
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        sign_of(&acc)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| {
                acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
            })
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Exact quotient `P / D`, or `NotDivisible` when the remainder is
    /// nonzero or the quotient would leave ℤ[x].
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly, PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let Some(pd) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if pd < dd {
            return Err(PolyError::NotDivisible);
        }
        let lead = d.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); pd - dd + 1];
        for shift in (0..=pd - dd).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * dc;
            }
            quot[shift] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::NotDivisible);
        }
        Ok(IntPoly::new(quot))
    }

    pub fn divides(&self, p: &IntPoly) -> bool {
        p.div_exact(self).is_ok()
    }

    /// Pseudo-remainder `lc(B)^(deg A - deg B + 1) · A mod B`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> Result<IntPoly, PolyError> {
        let db = b.degree().ok_or(PolyError::DivisionByZero)?;
        let Some(da) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if da < db {
            return Ok(self.clone());
        }
        let lead = b.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        for top in (db..=da).rev() {
            let t = std::mem::take(&mut rem[top]);
            for c in rem.iter_mut().take(top) {
                *c *= lead;
            }
            if !t.is_zero() {
                for (j, bc) in b.coeffs.iter().enumerate().take(db) {
                    rem[top - db + j] -= &t * bc;
                }
            }
        }
        rem.truncate(db);
        Ok(IntPoly::new(rem))
    }

    /// Primitive gcd with positive leading coefficient, via the subresultant
    /// remainder sequence. `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.pseudo_rem(&b).expect("b nonzero");
            if r.is_zero() {
                break;
            }
            if r.is_constant() {
                return IntPoly::one();
            }
            let divisor = &g * pow(&h, delta);
            a = b;
            b = IntPoly {
                coeffs: r.coeffs.iter().map(|c| c / &divisor).collect(),
            };
            g = a.leading().unwrap().clone();
            // h <- g^delta / h^(delta - 1)
            h = if delta == 0 {
                h
            } else {
                pow(&g, delta) / pow(&h, delta - 1)
            };
        }
        b.primitive_part()
    }

    /// Product of the distinct irreducible factors (primitive, positive lead).
    pub fn squarefree_part(&self) -> IntPoly {
        if self.is_constant() {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .div_exact(&g)
            .expect("gcd with derivative divides the primitive part")
            .primitive_part()
    }

    /// Yun's squarefree decomposition: `(f_i, i)` with `pp(P) = Π f_i^i`,
    /// each `f_i` squarefree and pairwise coprime. Constant factors omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let a0 = self.primitive_part();
        let da = a0.derivative();
        let b = a0.gcd(&da);
        let mut c = a0.div_exact(&b).expect("gcd divides");
        let mut d = &da.div_exact(&b).expect("gcd divides derivative") - &c.derivative();
        let mut i = 1;
        while !c.is_constant() {
            let a = c.gcd(&d);
            c = c.div_exact(&a).expect("gcd divides");
            d = &d.div_exact(&a).expect("gcd divides") - &c.derivative();
            if !a.is_constant() {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }
}

pub(crate) fn pow(base: &BigInt, e: usize) -> BigInt {
    num_traits::pow(base.clone(), e)
}

pub(crate) fn sign_of(v: &BigInt) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

// JSON form: an integer array in ascending degree order. Coefficients that do
// not fit in i64 are written as decimal strings.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Int(i64),
            Str(String),
        }
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = IntPoly;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an array of integer coefficients")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<IntPoly, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(c) = seq.next_element::<Coeff>()? {
                    coeffs.push(match c {
                        Coeff::Int(v) => BigInt::from(v),
                        Coeff::Str(s) => s.parse().map_err(de::Error::custom)?,
                    });
                }
                Ok(IntPoly::new(coeffs))
            }
        }
        d.deserialize_seq(V)
    }
}
