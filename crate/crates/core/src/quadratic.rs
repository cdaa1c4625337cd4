//! Real quadratic irrationals `p + q√m` with rational `p`, `q` and
//! square-free `m`.

use crate::abelian::Q;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadIrr {
    pub p: Q,
    pub q: Q,
    pub m: i64,
}

/// Split `k` as `s² · m` with `m` square-free.
pub fn squarefree_part(k: i64) -> (i64, i64) {
    assert!(k > 0);
    let (mut s, mut m) = (1i64, 1i64);
    let mut rest = k;
    let mut f = 2i64;
    while f * f <= rest {
        let mut e = 0;
        while rest % f == 0 {
            rest /= f;
            e += 1;
        }
        s *= f.pow(e / 2);
        if e % 2 == 1 {
            m *= f;
        }
        f += 1;
    }
    (s, m * rest)
}

impl QuadIrr {
    pub fn rational(p: Q) -> Self {
        QuadIrr {
            p,
            q: Q::from_integer(0),
            m: 1,
        }
        .normalize()
    }

    pub fn int(p: i64) -> Self {
        Self::rational(Q::from_integer(p))
    }

    /// `p + q√k` for any positive `k`; the radicand is reduced.
    pub fn new(p: Q, q: Q, k: i64) -> Self {
        let (s, m) = squarefree_part(k);
        QuadIrr { p, q: q * s, m }.normalize()
    }

    /// `m + √n`, the χ notation.
    pub fn chi(n: i64, m: i64) -> Self {
        Self::new(Q::from_integer(m), Q::from_integer(1), n)
    }

    /// `(n + √(n² + 4n)) / 2`.
    pub fn neargroup_dim(n: i64) -> Self {
        Self::new(Q::new(n, 2), Q::new(1, 2), n * n + 4 * n)
    }

    fn normalize(mut self) -> Self {
        if self.m == 1 {
            self.p += self.q;
            self.q = Q::from_integer(0);
        }
        if self.q == Q::from_integer(0) {
            self.m = 1;
        }
        self
    }

    pub fn to_f64(&self) -> f64 {
        let p = *self.p.numer() as f64 / *self.p.denom() as f64;
        let q = *self.q.numer() as f64 / *self.q.denom() as f64;
        p + q * (self.m as f64).sqrt()
    }

    fn common_m(a: &Self, b: &Self) -> Result<i64> {
        match (a.m, b.m) {
            (1, m) | (m, 1) => Ok(m),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(Error::Unsupported(format!(
                "mixing quadratic fields sqrt({x}) and sqrt({y})"
            ))),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        let m = Self::common_m(self, o)?;
        Ok(QuadIrr {
            p: self.p + o.p,
            q: self.q + o.q,
            m,
        }
        .normalize())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let m = Self::common_m(self, o)?;
        Ok(QuadIrr {
            p: self.p * o.p + self.q * o.q * m,
            q: self.p * o.q + self.q * o.p,
            m,
        }
        .normalize())
    }

    pub fn scale(&self, k: Q) -> Self {
        QuadIrr {
            p: self.p * k,
            q: self.q * k,
            m: self.m,
        }
        .normalize()
    }

    /// Parse `p`, `p+q*sqrt(m)` or `p-q*sqrt(m)` with rational `p`, `q`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("cannot parse quadratic irrational {s:?}"));
        let s = s.replace(' ', "");
        let pq = |t: &str| -> Result<Q> {
            let mut it = t.split('/');
            let n: i64 = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let d: i64 = match it.next() {
                Some(d) => d.parse().map_err(|_| bad())?,
                None => 1,
            };
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        };
        let Some(pos) = s.find("*sqrt(") else {
            return Ok(Self::rational(pq(&s)?));
        };
        let head = &s[..pos];
        let m: i64 = s[pos + 6..]
            .strip_suffix(')')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        let split = head
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (p, q) = match split {
            Some(i) => (pq(&head[..i])?, pq(head[i..].trim_start_matches('+'))?),
            None => (Q::from_integer(0), pq(head)?),
        };
        if m <= 0 {
            return Err(bad());
        }
        Ok(Self::new(p, q, m))
    }
}

impl fmt::Display for QuadIrr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == Q::from_integer(0) {
            return write!(f, "{}", self.p);
        }
        let sign = if self.q < Q::from_integer(0) {
            '-'
        } else {
            '+'
        };
        write!(
            f,
            "{}{}{}*sqrt({})",
            self.p,
            sign,
            if self.q < Q::from_integer(0) {
                -self.q
            } else {
                self.q
            },
            self.m
        )
    }
}

impl Serialize for QuadIrr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadIrr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        QuadIrr::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Add for QuadIrr {
    type Output = QuadIrr;
    fn add(self, o: Self) -> Self {
        self.checked_add(&o).expect("incompatible quadratic fields")
    }
}

impl Sub for QuadIrr {
    type Output = QuadIrr;
    fn sub(self, o: Self) -> Self {
        self + o.scale(Q::from_integer(-1))
    }
}

impl Mul for QuadIrr {
    type Output = QuadIrr;
    fn mul(self, o: Self) -> Self {
        self.checked_mul(&o).expect("incompatible quadratic fields")
    }
}
