//! Exact arithmetic used throughout the crate.
//!
//! - [`Rational`]: arbitrary precision fractions (re-export of `BigRational`)
//! - [`UniPoly`]: univariate polynomials in the ray parameter `t`
//! - [`AffineExponent`]: exponents of the form `c + s*t`
//! - [`binomial_series`]: truncated expansion of `(1+u)^E`
//! - [`PiecewisePolynomial`]: polynomial pieces covering the nonnegative integers

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use num_rational::BigRational as Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("no piece covers t = {0}")]
    Uncovered(u64),
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("malformed piecewise polynomial: {0}")]
    Malformed(String),
}

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the fraction `n/d`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `"a"` or `"a/b"`.
pub fn rat_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"a"` or `"a/b"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::BadRational(s.to_string());
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Ceiling of a rational as an integer.
pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Floor of a rational as an integer.
pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Polynomial in one variable `t` with rational coefficients.
///
/// `coeffs[k]` is the coefficient of `t^k`; the highest stored coefficient is
/// never zero, so the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `c + s*t`.
    pub fn linear(c: Rational, s: Rational) -> Self {
        Self::from_coeffs(vec![c, s])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_int(&self, t: &BigInt) -> Rational {
        self.eval(&Rational::from_integer(t.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Substitutes `t -> a + b*t`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let lin = UniPoly::linear(a.clone(), b.clone());
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UniPoly::constant(c.clone());
        }
        acc
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl AddAssign<&UniPoly> for UniPoly {
    fn add_assign(&mut self, rhs: &UniPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                write!(f, "{}", rat_to_string(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else if a.is_integer() {
                write!(f, "{}*{mono}", a.numer())?;
            } else if a.numer().is_one() {
                write!(f, "{mono}/{}", a.denom())?;
            } else {
                write!(f, "{}*{mono}/{}", a.numer(), a.denom())?;
            }
        }
        Ok(())
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&rat_to_string(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| parse_rational(s).map_err(de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UniPoly::from_coeffs(coeffs))
    }
}

/// Integer exponent depending affinely on `t`: `constant + slope*t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct AffineExponent {
    pub constant: i64,
    pub slope: i64,
}

impl AffineExponent {
    pub fn new(constant: i64, slope: i64) -> Self {
        AffineExponent { constant, slope }
    }

    pub fn constant(c: i64) -> Self {
        AffineExponent { constant: c, slope: 0 }
    }

    pub fn at(&self, t: i64) -> i64 {
        self.constant + self.slope * t
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::linear(rat(self.constant), rat(self.slope))
    }
}

impl Add for AffineExponent {
    type Output = AffineExponent;
    fn add(self, o: AffineExponent) -> AffineExponent {
        AffineExponent::new(self.constant + o.constant, self.slope + o.slope)
    }
}

/// `binomial(E - shift, k)` as a polynomial in `t`.
pub fn binomial_poly(e: &AffineExponent, shift: i64, k: usize) -> UniPoly {
    let mut acc = UniPoly::one();
    for i in 0..k as i64 {
        let f = UniPoly::linear(rat(e.constant - shift - i), rat(e.slope));
        acc = &acc * &f;
    }
    acc.scale(&Rational::new(BigInt::one(), factorial(k)))
}

/// Coefficients of `u^0..=u^order` in `(1+u)^E`, each a polynomial in `t`.
pub fn binomial_series(e: &AffineExponent, order: usize) -> Vec<UniPoly> {
    let mut out = Vec::with_capacity(order + 1);
    let mut acc = UniPoly::one();
    out.push(acc.clone());
    for k in 1..=order {
        let f = UniPoly::linear(rat(e.constant - (k as i64 - 1)), rat(e.slope));
        acc = (&acc * &f).scale(&frac(1, k as i64));
        out.push(acc.clone());
    }
    out
}

/// Generalized integer binomial `n(n-1)...(n-k+1)/k!` for any integer `n`.
pub fn binomial_int(n: &BigInt, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// One polynomial piece valid on the integers of `[lo, hi]` (`hi = None` means infinity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub poly: UniPoly,
    pub lo: u64,
    pub hi: Option<u64>,
}

impl Piece {
    pub fn new(poly: UniPoly, lo: u64, hi: Option<u64>) -> Self {
        Piece { poly, lo, hi }
    }

    pub fn contains(&self, t: u64) -> bool {
        t >= self.lo && self.hi.is_none_or(|h| t <= h)
    }
}

/// Polynomial pieces covering the nonnegative integers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    pub pieces: Vec<Piece>,
}

impl PiecewisePolynomial {
    pub fn new(pieces: Vec<Piece>) -> Self {
        PiecewisePolynomial { pieces }
    }

    /// Checks the covering invariants.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let bad = |m: &str| Err(AlgebraError::Malformed(m.to_string()));
        let Some(first) = self.pieces.first() else {
            return bad("no pieces");
        };
        if first.lo != 0 {
            return bad("first piece does not start at 0");
        }
        for w in self.pieces.windows(2) {
            let Some(h) = w[0].hi else {
                return bad("infinite piece before the last one");
            };
            if h < w[0].lo {
                return bad("empty piece");
            }
            if w[1].lo != h && w[1].lo != h + 1 {
                return bad("gap or overlap between pieces");
            }
            if w[1].lo == h {
                let x = BigInt::from(h);
                if w[0].poly.eval_int(&x) != w[1].poly.eval_int(&x) {
                    return bad("pieces disagree at a shared endpoint");
                }
            }
        }
        if self.pieces.last().unwrap().hi.is_some() {
            return bad("last piece is finite");
        }
        Ok(())
    }

    pub fn piece_at(&self, t: u64) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.contains(t))
    }

    pub fn eval(&self, t: u64) -> Result<Rational, AlgebraError> {
        self.piece_at(t)
            .map(|p| p.poly.eval_int(&BigInt::from(t)))
            .ok_or(AlgebraError::Uncovered(t))
    }

    /// Largest finite endpoint (0 if there is none).
    pub fn max_finite_endpoint(&self) -> u64 {
        self.pieces.iter().filter_map(|p| p.hi).max().unwrap_or(0).max(
            self.pieces.iter().map(|p| p.lo).max().unwrap_or(0),
        )
    }

    pub fn last_poly(&self) -> Option<&UniPoly> {
        self.pieces.last().map(|p| &p.poly)
    }

    /// Merges adjacent pieces whose polynomials agree on the neighbour's integers.
    pub fn streamline(&self) -> PiecewisePolynomial {
        let mut ps = self.pieces.clone();
        loop {
            let mut merged = false;
            for i in 0..ps.len().saturating_sub(1) {
                let (a, b) = (&ps[i], &ps[i + 1]);
                if !agrees_on(&b.poly, &a.poly, a) {
                    continue;
                }
                let poly = b.poly.clone();
                let m = Piece::new(poly, a.lo, b.hi);
                ps.splice(i..i + 2, [m]);
                merged = true;
                break;
            }
            if !merged {
                break;
            }
        }
        // a shared endpoint goes to the later piece
        let mut out: Vec<Piece> = Vec::with_capacity(ps.len());
        for p in ps {
            while let Some(prev) = out.last_mut() {
                let ph = prev.hi.expect("only the last piece is infinite");
                if p.lo > ph {
                    break;
                }
                if p.lo > prev.lo {
                    prev.hi = Some(p.lo - 1);
                    break;
                }
                out.pop();
            }
            out.push(p);
        }
        PiecewisePolynomial { pieces: out }
    }
}

/// True when `p` equals `q` at every integer of `piece`'s interval.
fn agrees_on(p: &UniPoly, q: &UniPoly, piece: &Piece) -> bool {
    let d = p.degree().unwrap_or(0).max(q.degree().unwrap_or(0)) as u64;
    let end = match piece.hi {
        Some(h) => h.min(piece.lo + d),
        None => piece.lo + d,
    };
    (piece.lo..=end).all(|t| {
        let x = BigInt::from(t);
        p.eval_int(&x) == q.eval_int(&x)
    })
}

impl fmt::Display for PiecewisePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.pieces.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let hi = p.hi.map_or("inf".to_string(), |h| h.to_string());
            write!(f, "[{}, [{}, {}]]", p.poly, p.lo, hi)?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum End {
    Finite(u64),
    Inf(String),
}

#[derive(Serialize, Deserialize)]
struct RawPiece {
    coeffs: UniPoly,
    interval: (u64, End),
}

impl Serialize for PiecewisePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.pieces.len()))?;
        for p in &self.pieces {
            let hi = p.hi.map_or(End::Inf("inf".into()), End::Finite);
            seq.serialize_element(&RawPiece { coeffs: p.poly.clone(), interval: (p.lo, hi) })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for PiecewisePolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<RawPiece>::deserialize(d)?;
        let mut pieces = Vec::with_capacity(raw.len());
        for r in raw {
            let hi = match r.interval.1 {
                End::Finite(h) => Some(h),
                End::Inf(s) if s == "inf" => None,
                End::Inf(s) => return Err(de::Error::custom(format!("bad endpoint {s:?}"))),
            };
            pieces.push(Piece::new(r.coeffs, r.interval.0, hi));
        }
        Ok(PiecewisePolynomial { pieces })
    }
}

/// Converts an integral rational to `i64`, if it is one and fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}
