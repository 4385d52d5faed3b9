//! Recurrence bases attached to a `{p,q}` tiling and the greedy numeration
//! system they induce.
//!
//! For even `q = 2h` the level sizes of the spanning tree satisfy a
//! second-order recurrence, for odd `q = 2h + 1` a third-order one. `q = 3`
//! reuses the basis of `{p-2, 4}` since both tilings are spanned by the same
//! tree.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{parse_err, Error, Result};

/// `1/p + 1/q < 1/2`, written without division.
pub fn is_hyperbolic(p: u32, q: u32) -> bool {
    p >= 3 && q >= 3 && (p as u64 - 2) * (q as u64 - 2) > 4
}

pub(crate) fn check_hyperbolic(p: u32, q: u32) -> Result<()> {
    if p < 3 || q < 3 {
        return Err(Error::DegeneratePolygon { p, q });
    }
    if !is_hyperbolic(p, q) {
        return Err(Error::NotHyperbolic { p, q });
    }
    Ok(())
}

/// Integer coefficients of the characteristic polynomial, leading term omitted.
///
/// Even: `X^2 - a X - c`, odd: `X^3 - a X^2 - b X - c`, matching the
/// recurrences `u(n+2) = a u(n+1) + c u(n)` and
/// `u(n+3) = a u(n+2) + b u(n+1) + c u(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Recurrence {
    Even { a: i64, c: i64 },
    Odd { a: i64, b: i64, c: i64 },
}

impl Recurrence {
    /// Parameters actually used for the recurrence: `q = 3` folds onto `{p-2, 4}`.
    fn effective(p: u32, q: u32) -> (i64, i64, bool) {
        if q == 3 {
            (p as i64 - 2, 2, true)
        } else if q.is_multiple_of(2) {
            (p as i64, q as i64 / 2, true)
        } else {
            (p as i64, (q as i64 - 1) / 2, false)
        }
    }

    fn for_tiling(p: u32, q: u32) -> Self {
        let (p, h, even) = Self::effective(p, q);
        if even {
            Recurrence::Even {
                a: (p - 3) * (h - 1) + 1,
                c: h - 3,
            }
        } else {
            Recurrence::Odd {
                a: (p - 3) * (h - 1) + 1,
                b: (p - 2) * (h - 1) - 2,
                c: h - 3,
            }
        }
    }

    fn seeds(p: u32, q: u32) -> Vec<BigUint> {
        let (p, h, even) = Self::effective(p, q);
        let x = (p - 3) * (h - 1);
        let raw: Vec<i64> = if even {
            vec![1, x + 1]
        } else {
            vec![1, x + 2, x * x + (4 * p - 11) * (h - 1)]
        };
        raw.into_iter().map(|v| BigUint::from(v as u64)).collect()
    }

    fn next(&self, terms: &[BigUint]) -> BigUint {
        let at = |back: usize| BigInt::from(terms[terms.len() - back].clone());
        let value = match *self {
            Recurrence::Even { a, c } => at(1) * a + at(2) * c,
            Recurrence::Odd { a, b, c } => at(1) * a + at(2) * b + at(3) * c,
        };
        value
            .to_biguint()
            .expect("recurrence terms stay positive for hyperbolic parameters")
    }

    /// Coefficients of `P(X)`, highest degree first.
    fn polynomial(&self) -> Vec<f64> {
        match *self {
            Recurrence::Even { a, c } => vec![1.0, -(a as f64), -(c as f64)],
            Recurrence::Odd { a, b, c } => vec![1.0, -(a as f64), -(b as f64), -(c as f64)],
        }
    }
}

/// The sequence `u_0, u_1, ...` for a hyperbolic `{p,q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    p: u32,
    q: u32,
    h: u32,
    terms: Vec<BigUint>,
}

impl Basis {
    /// Builds the first `count` terms.
    ///
    /// `{3,7}` is rejected: its recurrence is stationary (`1, 2, 2, 2, ...`),
    /// so no greedy numeration exists.
    pub fn new(p: u32, q: u32, count: usize) -> Result<Self> {
        check_hyperbolic(p, q)?;
        if count < 3 {
            return Err(Error::BasisTooShort(count));
        }
        if (p, q) == (3, 7) {
            return Err(Error::StationaryBasis { p, q });
        }
        let h = if q.is_multiple_of(2) {
            q / 2
        } else {
            (q - 1) / 2
        };
        let mut basis = Basis {
            p,
            q,
            h,
            terms: Recurrence::seeds(p, q),
        };
        basis.extend_to(count);
        basis.terms.truncate(count);
        Ok(basis)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Grows the sequence until it has at least `len` terms.
    pub fn extend_to(&mut self, len: usize) {
        let rec = Recurrence::for_tiling(self.p, self.q);
        while self.terms.len() < len {
            let next = rec.next(&self.terms);
            self.terms.push(next);
        }
    }

    /// Grows the sequence until its last term exceeds `n`.
    fn extend_past(&mut self, n: &BigUint) {
        let rec = Recurrence::for_tiling(self.p, self.q);
        while self.terms.last().is_some_and(|t| t <= n) {
            let next = rec.next(&self.terms);
            self.terms.push(next);
        }
    }

    /// Greedy digits of `n`, most significant first.
    pub fn encode(&self, n: &BigUint) -> DigitString {
        if n.is_zero() {
            return DigitString(vec![0]);
        }
        let basis: Cow<'_, Basis> = if self.terms.last().is_some_and(|t| t <= n) {
            let mut grown = self.clone();
            grown.extend_past(n);
            Cow::Owned(grown)
        } else {
            Cow::Borrowed(self)
        };
        let terms = basis.terms();
        let top = terms.iter().rposition(|t| t <= n).unwrap_or(0);
        let mut rem = n.clone();
        let mut digits = Vec::with_capacity(top + 1);
        for term in terms[..=top].iter().rev() {
            let digit = &rem / term;
            rem -= &digit * term;
            digits.push(
                digit
                    .to_u32()
                    .expect("greedy digits are bounded by the base"),
            );
        }
        debug_assert!(rem.is_zero());
        DigitString(digits)
    }

    pub fn encode_u64(&self, n: u64) -> DigitString {
        self.encode(&BigUint::from(n))
    }

    /// `sum a_i u_i`; the basis is extended, never truncated, for long inputs.
    pub fn decode(&self, digits: &DigitString) -> BigUint {
        let len = digits.0.len();
        let basis: Cow<'_, Basis> = if len > self.terms.len() {
            let mut grown = self.clone();
            grown.extend_to(len);
            Cow::Owned(grown)
        } else {
            Cow::Borrowed(self)
        };
        digits
            .0
            .iter()
            .rev()
            .zip(basis.terms())
            .fold(BigUint::zero(), |acc, (&d, u)| acc + u * d)
    }
}

/// Digits of a representation, most significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitString(pub Vec<u32>);

impl DigitString {
    pub fn digits(&self) -> &[u32] {
        &self.0
    }

    /// Drops leading zeros, keeping a lone `0` for the empty value.
    pub fn normalized(mut self) -> Self {
        let first = self.0.iter().position(|&d| d != 0).unwrap_or(self.0.len());
        self.0.drain(..first);
        if self.0.is_empty() {
            self.0.push(0);
        }
        self
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&d| d <= 9) {
            for d in &self.0 {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for DigitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(DigitString(Vec::new()));
        }
        let digits = if s.contains(',') {
            s.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u32>()
                        .map_err(|_| parse_err(s, format!("bad digit {part:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| parse_err(s, format!("bad digit {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(DigitString(digits))
    }
}

fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, c| acc * x + c)
}

/// Greatest real root of the characteristic polynomial of `{p,q}`.
///
/// The root is bracketed between `1` and the Cauchy bound, located by a
/// downward scan, then refined by bisection until the bracket is below `tol`.
pub fn beta(p: u32, q: u32, tol: f64) -> Result<f64> {
    check_hyperbolic(p, q)?;
    let coeffs = Recurrence::for_tiling(p, q).polynomial();
    let mut hi = 1.0 + coeffs[1..].iter().map(|c| c.abs()).sum::<f64>();
    const SCAN: usize = 4096;
    let step = (hi - 1.0) / SCAN as f64;
    let mut lo = hi;
    while lo > 1.0 && eval(&coeffs, lo) > 0.0 {
        hi = lo;
        lo = (lo - step).max(1.0);
    }
    if eval(&coeffs, lo) > 0.0 {
        // no sign change above 1: the dominant root is 1 itself
        return Ok(1.0);
    }
    let tol = tol.max(f64::EPSILON);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if eval(&coeffs, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Whether the greedy representations form a regular language, i.e. whether
/// the characteristic polynomial is Pisot. Only `{4,5}` fails.
pub fn is_regular_language_case(p: u32, q: u32) -> Result<bool> {
    check_hyperbolic(p, q)?;
    Ok((p, q) != (4, 5))
}
