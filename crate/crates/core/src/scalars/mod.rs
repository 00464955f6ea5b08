//! Exact arithmetic in towers of fields.
//!
//! A [`Field`] is one of ℚ, a prime field 𝔽_p, or a simple extension
//! `K[t]/(f)` of an already-built field. Elements are plain [`Elem`] values;
//! every operation goes through the field object, which keeps elements cheap
//! to clone and hash.
//!
//! Finite extensions are stored as indices into discrete-log tables, so
//! multiplication in 𝔽_q is a table lookup. Extensions of ℚ keep coefficient
//! vectors and invert by extended Euclid; a reducible modulus surfaces as
//! [`Error::ReducibleModulus`] the first time a nonzero element fails to
//! invert.

mod finite;
pub mod poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};
use finite::FiniteData;

/// An element of some [`Field`]. The variant is fixed by the field:
/// `Rat` for ℚ, `Fin` for every finite field, `Alg` for extensions of ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(BigRational),
    Fin(u32),
    Alg(Vec<Elem>),
}

/// Description accepted by [`build_field`].
#[derive(Clone, Debug)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    /// `base[t]/(modulus)`, modulus given low-degree-first and monic.
    Extension {
        base: Field,
        modulus: Vec<Elem>,
    },
}

#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    name: String,
    kind: Kind,
}

enum Kind {
    Rationals,
    Prime(u64),
    FiniteExt(FiniteData),
    Algebraic { base: Field, modulus: Vec<Elem> },
}

/// Outcome of [`Field::dth_root`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Root {
    Witness(Elem),
    NoSolution,
    Unknown,
}

pub fn build_field(spec: FieldSpec) -> Result<Field> {
    match spec {
        FieldSpec::Rationals => Ok(Field::rationals()),
        FieldSpec::Prime(p) => Field::prime(p),
        FieldSpec::Extension { base, modulus } => Field::extension(&base, modulus),
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(Inner {
            name: "Q".into(),
            kind: Kind::Rationals,
        }))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > u32::MAX as u64 {
            return Err(Error::FieldTooLarge(p as u128));
        }
        Ok(Field(Arc::new(Inner {
            name: format!("F{p}"),
            kind: Kind::Prime(p),
        })))
    }

    /// Builds `base[t]/(modulus)`; `modulus` is low-degree-first.
    pub fn extension(base: &Field, mut modulus: Vec<Elem>) -> Result<Field> {
        poly::trim(base, &mut modulus);
        let degree = modulus.len().saturating_sub(1);
        if modulus.is_empty() || degree < 2 {
            return Err(Error::ModulusDegree(degree));
        }
        if !base.is_one(modulus.last().unwrap()) {
            return Err(Error::NonMonicModulus);
        }
        let name = format!("{}[t]/({})", base.name(), poly::format(base, &modulus, "t"));
        let kind = if base.is_finite() {
            Kind::FiniteExt(FiniteData::build(base, &modulus, &name)?)
        } else {
            Kind::Algebraic {
                base: base.clone(),
                modulus,
            }
        };
        Ok(Field(Arc::new(Inner { name, kind })))
    }

    /// 𝔽_q for a prime power `q`, using the first monic irreducible modulus
    /// over the prime field in canonical order.
    pub fn finite(q: u64) -> Result<Field> {
        let ps = prime_factors(q);
        if ps.len() != 1 {
            return Err(Error::NotPrime(q));
        }
        let p = ps[0];
        let mut m = 0u32;
        let mut t = q;
        while t > 1 {
            t /= p;
            m += 1;
        }
        let fp = Field::prime(p)?;
        if m == 1 {
            return Ok(fp);
        }
        let modulus = poly::first_irreducible(&fp, m as usize)?;
        Field::extension(&fp, modulus)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn characteristic(&self) -> u64 {
        match &self.0.kind {
            Kind::Rationals | Kind::Algebraic { .. } => 0,
            Kind::Prime(p) => *p,
            Kind::FiniteExt(d) => d.p as u64,
        }
    }

    pub fn cardinality(&self) -> Option<u64> {
        match &self.0.kind {
            Kind::Rationals | Kind::Algebraic { .. } => None,
            Kind::Prime(p) => Some(*p),
            Kind::FiniteExt(d) => Some(d.q as u64),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.cardinality().is_some()
    }

    /// The field this one was built over, if it is an extension.
    pub fn base(&self) -> Option<&Field> {
        match &self.0.kind {
            Kind::FiniteExt(d) => Some(&d.base),
            Kind::Algebraic { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Degree over the immediate base (1 for ℚ and 𝔽_p).
    pub fn degree(&self) -> usize {
        match &self.0.kind {
            Kind::FiniteExt(d) => d.modulus.len() - 1,
            Kind::Algebraic { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    pub fn modulus(&self) -> Option<&[Elem]> {
        match &self.0.kind {
            Kind::FiniteExt(d) => Some(&d.modulus),
            Kind::Algebraic { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match &self.0.kind {
            Kind::Rationals => Elem::Rat(BigRational::zero()),
            Kind::Prime(_) | Kind::FiniteExt(_) => Elem::Fin(0),
            Kind::Algebraic { base, modulus } => Elem::Alg(vec![base.zero(); modulus.len() - 1]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match &self.0.kind {
            Kind::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            Kind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Elem::Fin(r.to_u32().unwrap())
            }
            Kind::FiniteExt(d) => {
                let b = d.base.from_bigint(n);
                self.from_coeffs(vec![b])
            }
            Kind::Algebraic { base, .. } => {
                let b = base.from_bigint(n);
                self.from_coeffs(vec![b])
            }
        }
    }

    /// Image of a rational number; fails when the denominator vanishes in
    /// positive characteristic.
    pub fn from_rational(&self, r: &BigRational) -> Result<Elem> {
        let n = self.from_bigint(r.numer());
        let d = self.from_bigint(r.denom());
        self.div(&n, &d)
    }

    /// Element with the given coefficients over the immediate base
    /// (shorter vectors are zero-padded).
    pub fn from_coeffs(&self, mut c: Vec<Elem>) -> Elem {
        match &self.0.kind {
            Kind::Rationals | Kind::Prime(_) => {
                assert!(c.len() <= 1, "prime fields have one coordinate");
                c.pop().unwrap_or_else(|| self.zero())
            }
            Kind::FiniteExt(d) => {
                let deg = d.modulus.len() - 1;
                assert!(c.len() <= deg);
                c.resize(deg, d.base.zero());
                Elem::Fin(d.index_of(&c))
            }
            Kind::Algebraic { base, modulus } => {
                let deg = modulus.len() - 1;
                assert!(c.len() <= deg);
                c.resize(deg, base.zero());
                Elem::Alg(c)
            }
        }
    }

    /// Coefficients over the immediate base, low degree first.
    pub fn coeffs(&self, a: &Elem) -> Vec<Elem> {
        match (&self.0.kind, a) {
            (Kind::FiniteExt(d), Elem::Fin(i)) => d.coeffs_of(*i),
            (Kind::Algebraic { .. }, Elem::Alg(v)) => v.clone(),
            _ => vec![a.clone()],
        }
    }

    /// Maps `a ∈ sub` into this field along the tower of bases.
    pub fn embed(&self, sub: &Field, a: &Elem) -> Option<Elem> {
        if self == sub {
            return Some(a.clone());
        }
        let base = self.base()?;
        let b = base.embed(sub, a)?;
        Some(self.from_coeffs(vec![b]))
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(r) => r.is_zero(),
            Elem::Fin(i) => *i == 0,
            Elem::Alg(v) => {
                let base = self.base().unwrap();
                v.iter().all(|c| base.is_zero(c))
            }
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (Kind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Kind::Prime(p), Elem::Fin(x), Elem::Fin(y)) => {
                Elem::Fin(((*x as u64 + *y as u64) % p) as u32)
            }
            (Kind::FiniteExt(d), Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(d.add(*x, *y)),
            (Kind::Algebraic { base, .. }, Elem::Alg(x), Elem::Alg(y)) => {
                Elem::Alg(x.iter().zip(y).map(|(u, v)| base.add(u, v)).collect())
            }
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&self.0.kind, a) {
            (Kind::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (Kind::Prime(p), Elem::Fin(x)) => Elem::Fin(((p - *x as u64) % p) as u32),
            (Kind::FiniteExt(d), Elem::Fin(x)) => Elem::Fin(d.neg(*x)),
            (Kind::Algebraic { base, .. }, Elem::Alg(x)) => {
                Elem::Alg(x.iter().map(|u| base.neg(u)).collect())
            }
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (Kind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Kind::Prime(p), Elem::Fin(x), Elem::Fin(y)) => {
                Elem::Fin(((*x as u64 * *y as u64) % p) as u32)
            }
            (Kind::FiniteExt(d), Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(d.mul(*x, *y)),
            (Kind::Algebraic { base, modulus }, Elem::Alg(x), Elem::Alg(y)) => {
                let prod = poly::mul(base, x, y);
                let (_, mut r) = poly::divrem(base, &prod, modulus).expect("monic modulus");
                r.resize(modulus.len() - 1, base.zero());
                Elem::Alg(r)
            }
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (&self.0.kind, a) {
            (Kind::Rationals, Elem::Rat(x)) => Ok(Elem::Rat(x.recip())),
            (Kind::Prime(p), Elem::Fin(x)) => {
                let e = BigInt::from(*x).extended_gcd(&BigInt::from(*p));
                let r = e.x.mod_floor(&BigInt::from(*p));
                Ok(Elem::Fin(r.to_u32().unwrap()))
            }
            (Kind::FiniteExt(d), Elem::Fin(x)) => Ok(Elem::Fin(d.inv(*x))),
            (Kind::Algebraic { base, modulus }, Elem::Alg(x)) => {
                let mut xa = x.clone();
                poly::trim(base, &mut xa);
                let (g, s, _) = poly::ext_gcd(base, &xa, modulus)?;
                if g.len() != 1 {
                    return Err(Error::ReducibleModulus(format!(
                        "{} has factor {}",
                        self.name(),
                        poly::format(base, &g, "t")
                    )));
                }
                let mut s = s;
                s.resize(modulus.len() - 1, base.zero());
                Ok(Elem::Alg(s))
            }
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer power with a possibly negative exponent.
    pub fn pow_int(&self, a: &Elem, e: &BigInt) -> Result<Elem> {
        let (b, mag) = if e.is_negative() {
            (self.inv(a)?, -e)
        } else {
            (a.clone(), e.clone())
        };
        let mut acc = self.one();
        let mut sq = b;
        let bits = mag.bits();
        for i in 0..bits {
            if mag.bit(i) {
                acc = self.mul(&acc, &sq);
            }
            if i + 1 < bits {
                sq = self.mul(&sq, &sq);
            }
        }
        Ok(acc)
    }

    /// All elements in canonical order (finite fields only).
    pub fn elements(&self) -> Option<Vec<Elem>> {
        let q = self.cardinality()?;
        Some((0..q as u32).map(Elem::Fin).collect())
    }

    /// Least `n ≥ 1` with `xⁿ = 1`.
    pub fn unit_order(&self, x: &Elem) -> Result<u64> {
        let q = self.cardinality().ok_or(Error::InfiniteField)?;
        if self.is_zero(x) {
            return Err(Error::DivisionByZero);
        }
        if let (Kind::FiniteExt(d), Elem::Fin(i)) = (&self.0.kind, x) {
            return Ok(d.unit_order(*i));
        }
        let mut order = q - 1;
        for r in prime_factors(q - 1) {
            while order % r == 0 && self.is_one(&self.pow(x, order / r)) {
                order /= r;
            }
        }
        Ok(order)
    }

    /// Decides `x^d = c`. Over ℚ and finite fields the answer is always
    /// definite; over extensions of ℚ only roots lying in ℚ are found.
    pub fn dth_root(&self, c: &Elem, d: u64) -> Result<Root> {
        if self.is_zero(c) {
            return Err(Error::DivisionByZero);
        }
        assert!(d >= 1, "root degree must be positive");
        if d == 1 {
            return Ok(Root::Witness(c.clone()));
        }
        match (&self.0.kind, c) {
            (Kind::Rationals, Elem::Rat(r)) => Ok(rational_root(r, d)),
            (Kind::Prime(_), _) | (Kind::FiniteExt(_), _) => {
                let q = self.cardinality().unwrap();
                let g = d.gcd(&(q - 1));
                if !self.is_one(&self.pow(c, (q - 1) / g)) {
                    return Ok(Root::NoSolution);
                }
                let w = (1..q as u32)
                    .map(Elem::Fin)
                    .find(|x| self.pow(x, d) == *c)
                    .ok_or_else(|| Error::Identity("root criterion passed but no root".into()))?;
                Ok(Root::Witness(w))
            }
            (Kind::Algebraic { base, .. }, Elem::Alg(v)) => {
                if v[1..].iter().all(|x| base.is_zero(x)) {
                    if let Root::Witness(w) = base.dth_root(&v[0], d)? {
                        return Ok(Root::Witness(self.from_coeffs(vec![w])));
                    }
                }
                Ok(Root::Unknown)
            }
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    /// Canonical text: `a/b` over ℚ, a residue over 𝔽_p, and a coefficient
    /// vector `[c0,c1,...]` over an extension.
    pub fn format(&self, a: &Elem) -> String {
        match (&self.0.kind, a) {
            (Kind::Rationals, Elem::Rat(r)) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            (Kind::Prime(_), Elem::Fin(x)) => x.to_string(),
            (Kind::FiniteExt(_) | Kind::Algebraic { .. }, _) => {
                let base = self.base().unwrap();
                let parts: Vec<String> = self.coeffs(a).iter().map(|c| base.format(c)).collect();
                format!("[{}]", parts.join(","))
            }
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Elem> {
        let t = text.trim();
        let bad = || Error::Literal {
            text: t.to_string(),
            field: self.name().to_string(),
        };
        if let Some(inner) = t.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(bad)?;
            let base = self.base().ok_or_else(bad)?;
            let parts = split_top_level(inner);
            if parts.len() > self.degree() {
                return Err(bad());
            }
            let coeffs = parts
                .iter()
                .map(|p| base.parse(p))
                .collect::<Result<Vec<_>>>()?;
            return Ok(self.from_coeffs(coeffs));
        }
        let r = parse_rational(t).ok_or_else(bad)?;
        self.from_rational(&r).map_err(|_| bad())
    }
}

fn rational_root(r: &BigRational, d: u64) -> Root {
    let d32 = d as u32;
    let root_int = |n: &BigInt| -> Option<BigInt> {
        let neg = n.is_negative();
        if neg && d % 2 == 0 {
            return None;
        }
        let m = n.abs().nth_root(d32);
        if num_traits::pow(m.clone(), d as usize) == n.abs() {
            Some(if neg { -m } else { m })
        } else {
            None
        }
    };
    match (root_int(r.numer()), root_int(r.denom())) {
        (Some(a), Some(b)) => Root::Witness(Elem::Rat(BigRational::new(a, b))),
        _ => Root::NoSolution,
    }
}

pub(crate) fn parse_rational(t: &str) -> Option<BigRational> {
    let t = t.trim();
    if let Some((a, b)) = t.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(BigRational::new(a, b))
    } else {
        let a: BigInt = t.parse().ok()?;
        Some(BigRational::from_integer(a))
    }
}

/// Splits on commas that are not nested inside brackets or parentheses.
pub(crate) fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' | '(' => {
                depth += 1;
                cur.push(ch);
            }
            ']' | ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.name == other.0.name
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.0.name)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Elem {
        Elem::Rat(BigRational::new(a.into(), b.into()))
    }

    fn f9() -> Field {
        let f3 = Field::prime(3).unwrap();
        Field::extension(&f3, vec![f3.one(), f3.zero(), f3.one()]).unwrap()
    }

    #[test]
    fn build_prime_and_extension() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.characteristic(), 3);
        assert_eq!(f3.cardinality(), Some(3));
        let f9 = f9();
        assert_eq!(f9.cardinality(), Some(9));
        assert_eq!(f9.characteristic(), 3);
        assert_eq!(Field::prime(4).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn modulus_validation() {
        let f3 = Field::prime(3).unwrap();
        let err = Field::extension(&f3, vec![f3.one(), f3.one()]).unwrap_err();
        assert_eq!(err, Error::ModulusDegree(1));
        let err = Field::extension(&f3, vec![f3.one(), f3.zero(), f3.from_i64(2)]).unwrap_err();
        assert_eq!(err, Error::NonMonicModulus);
        // t^2 - 1 = (t-1)(t+1) over F3
        let err = Field::extension(&f3, vec![f3.from_i64(-1), f3.zero(), f3.one()]).unwrap_err();
        assert!(matches!(err, Error::ReducibleModulus(_)));
    }

    #[test]
    fn reducible_rational_modulus_is_lazy() {
        let qf = Field::rationals();
        // t^2 - 1 over Q: construction succeeds, inverting t - 1 fails
        let k = Field::extension(&qf, vec![q(-1, 1), q(0, 1), q(1, 1)]).unwrap();
        let x = k.from_coeffs(vec![q(-1, 1), q(1, 1)]);
        assert!(matches!(k.inv(&x), Err(Error::ReducibleModulus(_))));
        let y = k.from_coeffs(vec![q(2, 1), q(1, 1)]);
        let yi = k.inv(&y).unwrap();
        assert!(k.is_one(&k.mul(&y, &yi)));
    }

    #[test]
    fn inverses() {
        let qf = Field::rationals();
        assert_eq!(qf.inv(&q(3, 2)).unwrap(), q(2, 3));
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.inv(&Elem::Fin(3)).unwrap(), Elem::Fin(5));
        let f9 = f9();
        let t = f9.parse("[0,1]").unwrap();
        assert_eq!(f9.format(&f9.inv(&t).unwrap()), "[0,2]");
        assert_eq!(f7.inv(&Elem::Fin(0)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn unit_orders() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.unit_order(&Elem::Fin(6)).unwrap(), 2);
        assert_eq!(f7.unit_order(&Elem::Fin(3)).unwrap(), 6);
        assert_eq!(f7.unit_order(&f7.one()).unwrap(), 1);
        assert_eq!(f9().unit_order(&f9().one()).unwrap(), 1);
        assert_eq!(
            Field::rationals().unit_order(&q(1, 1)).unwrap_err(),
            Error::InfiniteField
        );
    }

    #[test]
    fn roots() {
        let qf = Field::rationals();
        assert_eq!(qf.dth_root(&q(8, 1), 3).unwrap(), Root::Witness(q(2, 1)));
        assert_eq!(qf.dth_root(&q(1, 2), 3).unwrap(), Root::NoSolution);
        assert_eq!(qf.dth_root(&q(-8, 27), 3).unwrap(), Root::Witness(q(-2, 3)));
        assert_eq!(qf.dth_root(&q(-4, 1), 2).unwrap(), Root::NoSolution);
        let f7 = Field::prime(7).unwrap();
        assert_eq!(
            f7.dth_root(&Elem::Fin(6), 3).unwrap(),
            Root::Witness(Elem::Fin(3))
        );
        assert_eq!(f7.dth_root(&Elem::Fin(4), 3).unwrap(), Root::NoSolution);
        assert_eq!(
            f7.dth_root(&Elem::Fin(0), 3).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn literals_round_trip() {
        let qf = Field::rationals();
        assert_eq!(qf.format(&qf.parse("-6/4").unwrap()), "-3/2");
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.format(&f7.parse("-1").unwrap()), "6");
        assert_eq!(f7.format(&f7.parse("1/2").unwrap()), "4");
        let f9 = f9();
        assert_eq!(f9.format(&f9.parse("[2,1]").unwrap()), "[2,1]");
        assert_eq!(f9.format(&f9.parse("2").unwrap()), "[2,0]");
        assert!(f9.parse("[1,2,0]").is_err());
        assert!(f7.parse("1/7").is_err());
    }

    #[test]
    fn finite_by_order() {
        let f4 = Field::finite(4).unwrap();
        assert_eq!(f4.cardinality(), Some(4));
        assert_eq!(f4.characteristic(), 2);
        let f343 = Field::finite(343).unwrap();
        assert_eq!(f343.cardinality(), Some(343));
        assert!(Field::finite(12).is_err());
    }

    #[test]
    fn embedding_along_tower() {
        let f3 = Field::prime(3).unwrap();
        let f9 = f9();
        let e = f9.embed(&f3, &Elem::Fin(2)).unwrap();
        assert_eq!(f9.format(&e), "[2,0]");
        assert!(f3.embed(&f9, &e).is_none());
    }
}
