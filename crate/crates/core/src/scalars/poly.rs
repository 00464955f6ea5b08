//! Dense univariate polynomials over a [`Field`], stored low-degree-first
//! with no trailing zeros (the zero polynomial is the empty vector).

use num_bigint::BigInt;

use super::{Elem, Field};
use crate::{Error, Result};

pub type Poly = Vec<Elem>;

pub fn trim(f: &Field, p: &mut Poly) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

pub fn degree(p: &[Elem]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn from_ints(f: &Field, coeffs: &[i64]) -> Poly {
    let mut p: Poly = coeffs.iter().map(|&c| f.from_i64(c)).collect();
    trim(f, &mut p);
    p
}

pub fn monomial(f: &Field, c: Elem, deg: usize) -> Poly {
    let mut p = vec![f.zero(); deg + 1];
    p[deg] = c;
    trim(f, &mut p);
    p
}

pub fn add(f: &Field, a: &[Elem], b: &[Elem]) -> Poly {
    let n = a.len().max(b.len());
    let z = f.zero();
    let mut out: Poly = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, &mut out);
    out
}

pub fn neg(f: &Field, a: &[Elem]) -> Poly {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn sub(f: &Field, a: &[Elem], b: &[Elem]) -> Poly {
    add(f, a, &neg(f, b))
}

pub fn scale(f: &Field, a: &[Elem], c: &Elem) -> Poly {
    let mut out: Poly = a.iter().map(|x| f.mul(x, c)).collect();
    trim(f, &mut out);
    out
}

pub fn mul(f: &Field, a: &[Elem], b: &[Elem]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, &mut out);
    out
}

pub fn divrem(f: &Field, a: &[Elem], b: &[Elem]) -> Result<(Poly, Poly)> {
    let mut b = b.to_vec();
    trim(f, &mut b);
    let lead = b.last().ok_or(Error::DivisionByZero)?;
    let lead_inv = f.inv(lead)?;
    let mut r = a.to_vec();
    trim(f, &mut r);
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![f.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(r.last().unwrap(), &lead_inv);
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] = f.sub(&r[i + shift], &f.mul(&c, bi));
        }
        q[shift] = c;
        r.pop();
        trim(f, &mut r);
    }
    trim(f, &mut q);
    Ok((q, r))
}

pub fn rem(f: &Field, a: &[Elem], b: &[Elem]) -> Result<Poly> {
    Ok(divrem(f, a, b)?.1)
}

pub fn monic(f: &Field, a: &[Elem]) -> Result<Poly> {
    match a.last() {
        None => Ok(Vec::new()),
        Some(l) => {
            let li = f.inv(l)?;
            Ok(scale(f, a, &li))
        }
    }
}

/// Monic gcd, `s`, `t` with `s·a + t·b = gcd`.
pub fn ext_gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Result<(Poly, Poly, Poly)> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(f, &mut r0);
    trim(f, &mut r1);
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1)?;
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => Ok((Vec::new(), Vec::new(), Vec::new())),
        Some(l) => {
            let li = f.inv(l)?;
            Ok((scale(f, &r0, &li), scale(f, &s0, &li), scale(f, &t0, &li)))
        }
    }
}

pub fn gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Result<Poly> {
    Ok(ext_gcd(f, a, b)?.0)
}

pub fn derivative(f: &Field, a: &[Elem]) -> Poly {
    let mut out: Poly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
        .collect();
    trim(f, &mut out);
    out
}

pub fn eval(f: &Field, a: &[Elem], x: &Elem) -> Elem {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn pow_mod(f: &Field, a: &[Elem], e: &BigInt, m: &[Elem]) -> Result<Poly> {
    let mut acc = rem(f, &[f.one()], m)?;
    let mut sq = rem(f, a, m)?;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = rem(f, &mul(f, &acc, &sq), m)?;
        }
        if i + 1 < bits {
            sq = rem(f, &mul(f, &sq, &sq), m)?;
        }
    }
    Ok(acc)
}

/// Irreducibility over a finite field: `gcd(f, t^(q^i) − t) = 1` for
/// `1 ≤ i ≤ deg/2`.
pub fn is_irreducible_finite(f: &Field, a: &[Elem]) -> Result<bool> {
    let q = f.cardinality().ok_or(Error::InfiniteField)?;
    let n = degree(a).unwrap_or(0);
    if n == 0 {
        return Ok(false);
    }
    let t = vec![f.zero(), f.one()];
    let mut x = t.clone();
    for _ in 1..=n / 2 {
        x = pow_mod(f, &x, &BigInt::from(q), a)?;
        let g = gcd(f, a, &sub(f, &x, &t))?;
        if g.len() > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First monic irreducible polynomial of degree `m` over a finite field,
/// scanning lower coefficients in canonical order.
pub fn first_irreducible(f: &Field, m: usize) -> Result<Poly> {
    let q = f.cardinality().ok_or(Error::InfiniteField)?;
    let total = (q as u128).pow(m as u32);
    for k in 0..total {
        let mut p = Vec::with_capacity(m + 1);
        let mut t = k;
        for _ in 0..m {
            p.push(Elem::Fin((t % q as u128) as u32));
            t /= q as u128;
        }
        p.push(f.one());
        if is_irreducible_finite(f, &p)? {
            return Ok(p);
        }
    }
    Err(Error::Identity(format!("no irreducible of degree {m}")))
}

/// The n-th cyclotomic polynomial, computed by exact division of `tⁿ − 1`.
pub fn cyclotomic(f: &Field, n: usize) -> Poly {
    let mut p = monomial(f, f.one(), n);
    p[0] = f.sub(&p[0], &f.one());
    for d in 1..n {
        if n % d == 0 {
            let (q, _) = divrem(f, &p, &cyclotomic(f, d)).expect("monic divisor");
            p = q;
        }
    }
    p
}

pub fn format(f: &Field, a: &[Elem], var: &str) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in a.iter().enumerate().rev() {
        if f.is_zero(c) {
            continue;
        }
        let mut cs = f.format(c);
        let neg = cs.starts_with('-');
        if neg {
            cs.remove(0);
        }
        if !out.is_empty() || neg {
            out.push(if neg { '-' } else { '+' });
        }
        let unit = cs == "1";
        match i {
            0 => out.push_str(&cs),
            _ => {
                if !unit {
                    out.push_str(&cs);
                }
                out.push_str(var);
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let q = Field::rationals();
        let a = from_ints(&q, &[-1, 0, 0, 0, 0, 0, 1]);
        let b = from_ints(&q, &[-1, 0, 1]);
        let (_, r) = divrem(&q, &a, &b).unwrap();
        assert!(r.is_empty());
        let g = gcd(&q, &a, &from_ints(&q, &[-1, 0, 0, 1])).unwrap();
        assert_eq!(g, from_ints(&q, &[-1, 0, 0, 1]));
    }

    #[test]
    fn cyclotomics_multiply_back() {
        let q = Field::rationals();
        let mut prod = vec![q.one()];
        for d in [1, 2, 3, 6] {
            prod = mul(&q, &prod, &cyclotomic(&q, d));
        }
        assert_eq!(prod, from_ints(&q, &[-1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(&q, 6), from_ints(&q, &[1, -1, 1]));
    }

    #[test]
    fn irreducibility_over_finite_fields() {
        let f3 = Field::prime(3).unwrap();
        assert!(is_irreducible_finite(&f3, &from_ints(&f3, &[1, 0, 1])).unwrap());
        assert!(!is_irreducible_finite(&f3, &from_ints(&f3, &[-1, 0, 1])).unwrap());
        let f7 = Field::prime(7).unwrap();
        assert_eq!(
            first_irreducible(&f7, 3).unwrap(),
            from_ints(&f7, &[2, 0, 0, 1])
        );
        let f2 = Field::prime(2).unwrap();
        assert_eq!(
            first_irreducible(&f2, 2).unwrap(),
            from_ints(&f2, &[1, 1, 1])
        );
    }

    #[test]
    fn formatting() {
        let q = Field::rationals();
        assert_eq!(format(&q, &from_ints(&q, &[1, 0, 1]), "t"), "t^2+1");
        assert_eq!(format(&q, &from_ints(&q, &[-2, 3, 0, 1]), "x"), "x^3+3x-2");
    }
}
