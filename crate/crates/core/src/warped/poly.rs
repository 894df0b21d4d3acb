//! Polynomials and rational functions in one variable `r` over ℚ.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::Coeff;
use crate::rational::{self, Rational};

/// Dense polynomial, coefficients from degree 0 upwards, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The variable `r`.
    pub fn r() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    /// `c r^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rational::int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut rem = self.0.clone();
        let mut quot = vec![Rational::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().expect("nonempty") / &lead;
            for (i, c) in d.0.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &q * c;
            }
            quot[k] = q;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly(Vec::new())
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly(vec![Rational::one()])
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let zero = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + o.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] = &v[i + j] + a * b;
            }
        }
        Poly::new(v)
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(Poly);
owned_ops!(RFun);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{k}"),
            };
            if k == 0 {
                write!(f, "{}", rational::to_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}*{var}", rational::to_string(&abs))?;
            }
        }
        Ok(())
    }
}

/// Accepts `+ - * ^`, parentheses, integers, `p/q` literals and the variable
/// `r`, with juxtaposition as multiplication (`2r^2 - 1/2`).
impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly> {
        let mut p = Parser {
            s: s.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("polynomial: {msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'r' | b'(' | b'0'..=b'9') => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.unary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.uint()?;
            let k = u32::try_from(k).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'r') => {
                self.pos += 1;
                Ok(Poly::r())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'0'..=b'9') => {
                let num = self.uint()?;
                let mut q = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    q /= Rational::from_integer(den);
                }
                Ok(Poly::constant(q))
            }
            _ => Err(self.err("expected a number, `r` or `(`")),
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }
}

/// Reduced fraction of polynomials with monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RFun {
    num: Poly,
    den: Poly,
}

impl RFun {
    /// `num / den`, or `None` if `den = 0`.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RFun::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading();
        let inv = Rational::one() / &lead;
        Some(RFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn poly(p: Poly) -> Self {
        RFun {
            num: p,
            den: Poly::one(),
        }
    }

    /// The variable `r`.
    pub fn r() -> Self {
        RFun::poly(Poly::r())
    }

    pub fn constant(c: Rational) -> Self {
        RFun::poly(Poly::constant(c))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value, if any.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.leading())
    }

    pub fn recip(&self) -> Option<Self> {
        RFun::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RFun::new(num, &self.den * &self.den).expect("nonzero denominator")
    }

    /// Value at `x`, `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }
}

impl From<Poly> for RFun {
    fn from(p: Poly) -> Self {
        RFun::poly(p)
    }
}

impl Zero for RFun {
    fn zero() -> Self {
        RFun::poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RFun {
    fn one() -> Self {
        RFun::poly(Poly::one())
    }
}

impl Add<&RFun> for &RFun {
    type Output = RFun;
    fn add(self, o: &RFun) -> RFun {
        if self.den == o.den {
            return RFun::new(&self.num + &o.num, self.den.clone()).expect("nonzero");
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RFun::new(num, &self.den * &o.den).expect("nonzero")
    }
}

impl Neg for &RFun {
    type Output = RFun;
    fn neg(self) -> RFun {
        RFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub<&RFun> for &RFun {
    type Output = RFun;
    fn sub(self, o: &RFun) -> RFun {
        self + &(-o)
    }
}

impl Mul<&RFun> for &RFun {
    type Output = RFun;
    fn mul(self, o: &RFun) -> RFun {
        RFun::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }
}

/// Panics on division by zero.
impl Div<&RFun> for &RFun {
    type Output = RFun;
    fn div(self, o: &RFun) -> RFun {
        let inv = o.recip().expect("division by zero rational function");
        RFun::new(&self.num * &inv.num, &self.den * &inv.den).expect("nonzero")
    }
}

impl Coeff for RFun {
    fn from_rational(q: &Rational) -> Self {
        RFun::constant(q.clone())
    }
}

impl fmt::Display for RFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let num = self.num.to_string();
        if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            write!(f, "({num})/({})", self.den)
        } else {
            write!(f, "{num}/({})", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("r^2 + 1"), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(p("2r - 1/2"), Poly::new(vec![frac(-1, 2), int(2)]));
        assert_eq!(p("(1+r)^2"), Poly::from_ints(&[1, 2, 1]));
        assert_eq!(p("-r*r"), Poly::from_ints(&[0, 0, -1]));
        assert_eq!(p("3/2 r^3 - r").to_string(), "3/2*r^3 - r");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p(" 1 ").to_string(), "1");
        assert!("r +".parse::<Poly>().is_err());
        assert!("x".parse::<Poly>().is_err());
        assert!("1/0".parse::<Poly>().is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = p("r^3 - 1");
        let b = p("r - 1");
        let (q, rem) = a.div_rem(&b);
        assert_eq!(q, p("r^2 + r + 1"));
        assert!(rem.is_zero());
        assert_eq!(Poly::gcd(&p("2r^2 - 2"), &p("3r + 3")), p("r + 1"));
    }

    #[test]
    fn rfun_is_canonical() {
        let f = RFun::new(p("2r^2 - 2"), p("4r + 4")).unwrap();
        assert_eq!(f, RFun::poly(p("1/2 r - 1/2")));
        let g = RFun::new(p("1"), p("2r")).unwrap();
        assert_eq!(g.denom(), &p("r"));
        assert_eq!(g.numer(), &p("1/2"));
        assert_eq!(&g * &RFun::poly(p("2r")), RFun::one());
        assert_eq!(RFun::new(p("1"), Poly::zero()), None);
    }

    #[test]
    fn quotient_rule() {
        let inv = RFun::r().recip().unwrap();
        let d = inv.derivative();
        assert_eq!(d, RFun::new(p("-1"), p("r^2")).unwrap());
        assert_eq!(d.to_string(), "-1/(r^2)");
        assert_eq!(RFun::poly(p("r^3")).derivative(), RFun::poly(p("3r^2")));
    }

    #[test]
    fn evaluation() {
        let f = RFun::new(p("r + 1"), p("r - 1")).unwrap();
        assert_eq!(f.eval(&int(3)), Some(int(2)));
        assert_eq!(f.eval(&int(1)), None);
    }
}
