//! Truncated coefficient sequences: bivariate Taylor and Chebyshev.

mod cheb;
mod taylor;

pub use cheb::ChebSeq;
pub use taylor::{lt_divisor, powers, Taylor2Seq};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::interval::{ComplexInterval, Interval};
use crate::scalar::Scalar;

/// Three components of one sequence kind.
pub type VecSeq3<T> = [T; 3];

/// Product-space norm of a Taylor triple.
pub fn norm3_taylor<S: Scalar>(u: &VecSeq3<Taylor2Seq<S>>, nu: Interval) -> Interval {
    u.iter().fold(Interval::ZERO, |acc, c| acc + c.norm(nu))
}

/// Product-space norm of a Chebyshev triple.
pub fn norm3_cheb<S: Scalar>(u: &VecSeq3<ChebSeq<S>>, mu: Interval) -> Interval {
    u.iter().fold(Interval::ZERO, |acc, c| acc + c.norm(mu))
}

/// Coefficient encodings used by the JSON format.
pub trait CoeffCodec: Scalar {
    const SCALAR_KIND: &'static str;
    fn encode(self) -> [f64; 4];
    fn decode(c: [f64; 4]) -> Result<Self, String>;
}

impl CoeffCodec for Interval {
    const SCALAR_KIND: &'static str = "interval";
    fn encode(self) -> [f64; 4] {
        [self.lo(), self.hi(), 0.0, 0.0]
    }
    fn decode(c: [f64; 4]) -> Result<Self, String> {
        if c[2] != 0.0 || c[3] != 0.0 {
            return Err("real interval with nonzero imaginary part".into());
        }
        Interval::new(c[0], c[1]).map_err(|e| e.to_string())
    }
}

impl CoeffCodec for ComplexInterval {
    const SCALAR_KIND: &'static str = "complex_interval";
    fn encode(self) -> [f64; 4] {
        [self.re.lo(), self.re.hi(), self.im.lo(), self.im.hi()]
    }
    fn decode(c: [f64; 4]) -> Result<Self, String> {
        Ok(ComplexInterval::new(
            Interval::new(c[0], c[1]).map_err(|e| e.to_string())?,
            Interval::new(c[2], c[3]).map_err(|e| e.to_string())?,
        ))
    }
}

impl CoeffCodec for f64 {
    const SCALAR_KIND: &'static str = "f64";
    fn encode(self) -> [f64; 4] {
        [self, self, 0.0, 0.0]
    }
    fn decode(c: [f64; 4]) -> Result<Self, String> {
        if c[0] != c[1] || c[2] != 0.0 || c[3] != 0.0 {
            return Err("f64 coefficient must be a degenerate real".into());
        }
        Ok(c[0])
    }
}

impl CoeffCodec for Complex64 {
    const SCALAR_KIND: &'static str = "complex_f64";
    fn encode(self) -> [f64; 4] {
        [self.re, self.re, self.im, self.im]
    }
    fn decode(c: [f64; 4]) -> Result<Self, String> {
        if c[0] != c[1] || c[2] != c[3] {
            return Err("complex f64 coefficient must be degenerate".into());
        }
        Ok(Complex64::new(c[0], c[2]))
    }
}

/// Serialized sequence: `{kind, orders, scalar_kind, coeffs}` in row-major order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeqJson {
    pub kind: String,
    pub orders: Vec<usize>,
    pub scalar_kind: String,
    pub coeffs: Vec<[f64; 4]>,
}

impl<S: CoeffCodec> From<&Taylor2Seq<S>> for SeqJson {
    fn from(u: &Taylor2Seq<S>) -> Self {
        let (k1, k2) = u.orders();
        SeqJson {
            kind: "taylor2".into(),
            orders: vec![k1, k2],
            scalar_kind: S::SCALAR_KIND.into(),
            coeffs: u.coeffs().iter().map(|c| c.encode()).collect(),
        }
    }
}

impl<S: CoeffCodec> From<&ChebSeq<S>> for SeqJson {
    fn from(u: &ChebSeq<S>) -> Self {
        SeqJson {
            kind: "chebyshev".into(),
            orders: vec![u.order()],
            scalar_kind: S::SCALAR_KIND.into(),
            coeffs: u.coeffs().iter().map(|c| c.encode()).collect(),
        }
    }
}

impl SeqJson {
    fn check(&self, kind: &str, scalar_kind: &str, n_orders: usize) -> Result<(), String> {
        if self.kind != kind {
            return Err(format!("expected kind {kind}, found {}", self.kind));
        }
        if self.scalar_kind != scalar_kind {
            return Err(format!(
                "expected scalar kind {scalar_kind}, found {}",
                self.scalar_kind
            ));
        }
        if self.orders.len() != n_orders {
            return Err(format!("expected {n_orders} orders, found {}", self.orders.len()));
        }
        Ok(())
    }

    pub fn to_taylor<S: CoeffCodec>(&self) -> Result<Taylor2Seq<S>, String> {
        self.check("taylor2", S::SCALAR_KIND, 2)?;
        let (k1, k2) = (self.orders[0], self.orders[1]);
        if self.coeffs.len() != (k1 + 1) * (k2 + 1) {
            return Err("coefficient count does not match orders".into());
        }
        let c = self
            .coeffs
            .iter()
            .map(|&c| S::decode(c))
            .collect::<Result<Vec<S>, String>>()?;
        Ok(Taylor2Seq::from_coeffs(k1, k2, c))
    }

    pub fn to_cheb<S: CoeffCodec>(&self) -> Result<ChebSeq<S>, String> {
        self.check("chebyshev", S::SCALAR_KIND, 1)?;
        if self.coeffs.len() != self.orders[0] + 1 {
            return Err("coefficient count does not match order".into());
        }
        let c = self
            .coeffs
            .iter()
            .map(|&c| S::decode(c))
            .collect::<Result<Vec<S>, String>>()?;
        Ok(ChebSeq::from_coeffs(c))
    }
}

impl<S: CoeffCodec> Serialize for Taylor2Seq<S> {
    fn serialize<Ser: serde::Serializer>(&self, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        SeqJson::from(self).serialize(ser)
    }
}

impl<'de, S: CoeffCodec> Deserialize<'de> for Taylor2Seq<S> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        SeqJson::deserialize(de)?.to_taylor().map_err(serde::de::Error::custom)
    }
}

impl<S: CoeffCodec> Serialize for ChebSeq<S> {
    fn serialize<Ser: serde::Serializer>(&self, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        SeqJson::from(self).serialize(ser)
    }
}

impl<'de, S: CoeffCodec> Deserialize<'de> for ChebSeq<S> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        SeqJson::deserialize(de)?.to_cheb().map_err(serde::de::Error::custom)
    }
}
