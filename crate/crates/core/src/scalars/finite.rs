//! Table-driven arithmetic for finite extension fields.
//!
//! An element of `K = base[t]/(f)` is the index `Σ cᵢ·|base|ⁱ` of its
//! coefficient vector. Because every finite field in a tower has prime-power
//! order, the index read in base `p` lists the coordinates over the prime
//! field, so addition is digitwise. Multiplication goes through discrete-log
//! tables built from a primitive element found at construction.

use super::{poly, prime_factors, Elem, Field};
use crate::{Error, Result};

const MAX_ORDER: u64 = 1 << 16;

pub(super) struct FiniteData {
    pub p: u32,
    pub q: u32,
    pub base: Field,
    pub modulus: Vec<Elem>,
    base_q: u32,
    digits: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FiniteData {
    pub fn build(base: &Field, modulus: &[Elem], name: &str) -> Result<FiniteData> {
        let base_q = base.cardinality().expect("finite base") as u32;
        let d = modulus.len() - 1;
        let q = (base_q as u128).pow(d as u32);
        if q > MAX_ORDER as u128 {
            return Err(Error::FieldTooLarge(q));
        }
        let q = q as u32;
        let p = base.characteristic() as u32;
        let mut digits = 0;
        let mut t = q;
        while t > 1 {
            t /= p;
            digits += 1;
        }
        let mut data = FiniteData {
            p,
            q,
            base: base.clone(),
            modulus: modulus.to_vec(),
            base_q,
            digits,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let one = data.index_of(&[base.one()]);
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let mut generator = None;
        for cand in 1..q {
            if data.slow_pow(cand, order) != one {
                continue;
            }
            if factors
                .iter()
                .all(|r| data.slow_pow(cand, order / r) != one)
            {
                generator = Some(cand);
                break;
            }
        }
        let g = generator
            .ok_or_else(|| Error::ReducibleModulus(format!("{name} has no primitive element")))?;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = one;
        for k in 0..order as u32 {
            exp.push(x);
            log[x as usize] = k;
            x = data.slow_mul(x, g);
        }
        data.exp = exp;
        data.log = log;
        Ok(data)
    }

    pub fn index_of(&self, coeffs: &[Elem]) -> u32 {
        let mut idx = 0u32;
        for c in coeffs.iter().rev() {
            let Elem::Fin(ci) = c else {
                panic!("finite coefficient expected")
            };
            idx = idx * self.base_q + ci;
        }
        idx
    }

    pub fn coeffs_of(&self, mut i: u32) -> Vec<Elem> {
        let d = self.modulus.len() - 1;
        let mut out = Vec::with_capacity(d);
        for _ in 0..d {
            out.push(Elem::Fin(i % self.base_q));
            i /= self.base_q;
        }
        out
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let x = self.coeffs_of(a);
        let y = self.coeffs_of(b);
        let prod = poly::mul(&self.base, &x, &y);
        let (_, r) = poly::divrem(&self.base, &prod, &self.modulus).expect("monic");
        self.index_of(&r)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = self.index_of(&[self.base.one()]);
        let mut sq = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.slow_mul(sq, sq);
            }
        }
        acc
    }

    pub fn add(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let mut r = 0;
        let mut m = 1;
        for _ in 0..self.digits {
            r += ((a % p + b % p) % p) * m;
            a /= p;
            b /= p;
            m *= p;
        }
        r
    }

    pub fn neg(&self, mut a: u32) -> u32 {
        let p = self.p;
        let mut r = 0;
        let mut m = 1;
        for _ in 0..self.digits {
            r += ((p - a % p) % p) * m;
            a /= p;
            m *= p;
        }
        r
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n as u64;
        self.exp[s as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn unit_order(&self, a: u32) -> u64 {
        let n = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64;
        n / num_integer::gcd(l, n)
    }
}
