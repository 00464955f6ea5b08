//! Index tables for small finite rings, and unit groups.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{CommRing, RingElem, TestRing};
use crate::scalars::{Elem, Field};
use crate::{Error, Result};

/// Largest `|R|` for which [`Tabled`] builds its tables.
pub const TABLE_LIMIT: u128 = 1024;

const NO_INVERSE: u16 = u16::MAX;

/// A finite [`TestRing`] with elements replaced by their canonical indices
/// and all arithmetic read from precomputed tables.
pub struct Tabled {
    ring: TestRing,
    size: usize,
    elems: Vec<RingElem>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    smul: Vec<u16>,
    one: u16,
}

impl Tabled {
    pub fn new(r: &TestRing) -> Result<Tabled> {
        let f = r.field();
        let q = f.cardinality().ok_or(Error::InfiniteField)? as usize;
        let size = r.cardinality().unwrap_or(u128::MAX);
        if size > TABLE_LIMIT {
            return Err(Error::CapExceeded {
                needed: size,
                cap: TABLE_LIMIT,
            });
        }
        let size = size as usize;
        let n = r.dim();
        let fidx = |e: &Elem| match e {
            Elem::Fin(i) => *i as usize,
            _ => unreachable!("finite field element"),
        };
        let fadd: Vec<usize> = (0..q * q)
            .map(|k| fidx(&f.add(&Elem::Fin((k / q) as u32), &Elem::Fin((k % q) as u32))))
            .collect();
        let fmul: Vec<usize> = (0..q * q)
            .map(|k| fidx(&f.mul(&Elem::Fin((k / q) as u32), &Elem::Fin((k % q) as u32))))
            .collect();
        let fneg: Vec<usize> = (0..q).map(|a| fidx(&f.neg(&Elem::Fin(a as u32)))).collect();
        let digits: Vec<Vec<usize>> = (0..size)
            .map(|x| {
                let mut t = x;
                (0..n)
                    .map(|_| {
                        let d = t % q;
                        t /= q;
                        d
                    })
                    .collect()
            })
            .collect();
        let from_digits = |d: &mut dyn Iterator<Item = usize>| -> u16 {
            let v: Vec<usize> = d.collect();
            v.iter().rev().fold(0usize, |acc, &c| acc * q + c) as u16
        };
        let mut add = vec![0u16; size * size];
        for x in 0..size {
            for y in 0..size {
                add[x * size + y] =
                    from_digits(&mut (0..n).map(|i| fadd[digits[x][i] * q + digits[y][i]]));
            }
        }
        let neg: Vec<u16> = (0..size)
            .map(|x| from_digits(&mut (0..n).map(|i| fneg[digits[x][i]])))
            .collect();
        let mut smul = vec![0u16; q * size];
        for c in 0..q {
            for z in 0..size {
                smul[c * size + z] = from_digits(&mut (0..n).map(|i| fmul[c * q + digits[z][i]]));
            }
        }
        let elems: Vec<RingElem> = (0..size).map(|k| r.element_at(k as u128)).collect();
        let bmul: Vec<Vec<u16>> = (0..n)
            .map(|k| {
                let b = r.basis(k);
                (0..size)
                    .map(|y| r.index_of(&r.mul(&b, &elems[y])) as u16)
                    .collect()
            })
            .collect();
        let mut mul = vec![0u16; size * size];
        for x in 1..size {
            let k = (0..n).rev().find(|&i| digits[x][i] != 0).unwrap();
            let c = digits[x][k];
            let lower = x - c * q.pow(k as u32);
            for y in 0..size {
                let part = smul[c * size + bmul[k][y] as usize];
                mul[x * size + y] = add[mul[lower * size + y] as usize * size + part as usize];
            }
        }
        let one = r.index_of(&r.one()) as u16;
        let mut inv = vec![NO_INVERSE; size];
        for x in 0..size {
            if inv[x] != NO_INVERSE {
                continue;
            }
            if let Some(y) = (0..size).find(|&y| mul[x * size + y] == one) {
                inv[x] = y as u16;
                inv[y] = x as u16;
            }
        }
        Ok(Tabled {
            ring: r.clone(),
            size,
            elems,
            add,
            mul,
            neg,
            inv,
            smul,
            one,
        })
    }

    pub fn ring(&self) -> &TestRing {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elem(&self, i: u16) -> &RingElem {
        &self.elems[i as usize]
    }

    pub fn index(&self, x: &RingElem) -> u16 {
        self.ring.index_of(x) as u16
    }

    pub fn unit_indices(&self) -> impl Iterator<Item = u16> + '_ {
        (0..self.size as u16).filter(|&i| self.inv[i as usize] != NO_INVERSE)
    }
}

impl CommRing for Tabled {
    type E = u16;

    fn field(&self) -> &Field {
        self.ring.field()
    }
    fn zero(&self) -> u16 {
        0
    }
    fn one(&self) -> u16 {
        self.one
    }
    #[inline]
    fn add(&self, a: &u16, b: &u16) -> u16 {
        self.add[*a as usize * self.size + *b as usize]
    }
    #[inline]
    fn neg(&self, a: &u16) -> u16 {
        self.neg[*a as usize]
    }
    #[inline]
    fn mul(&self, a: &u16, b: &u16) -> u16 {
        self.mul[*a as usize * self.size + *b as usize]
    }
    fn is_unit(&self, a: &u16) -> bool {
        self.inv[*a as usize] != NO_INVERSE
    }
    fn inv(&self, a: &u16) -> Option<u16> {
        let i = self.inv[*a as usize];
        (i != NO_INVERSE).then_some(i)
    }
    fn scalar(&self, c: &Elem) -> u16 {
        match c {
            Elem::Fin(i) => self.smul[*i as usize * self.size + self.one as usize],
            _ => unreachable!("finite field element"),
        }
    }
    fn idempotents(&self) -> Result<Vec<u16>> {
        Ok(self
            .ring
            .idempotents()?
            .iter()
            .map(|e| self.index(e))
            .collect())
    }
    fn format(&self, a: &u16) -> String {
        self.ring.format(self.elem(*a))
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> u16 {
        rng.gen_range(0..self.size as u16)
    }
    fn elements(&self) -> Option<Vec<u16>> {
        Some((0..self.size as u16).collect())
    }
    fn is_zero(&self, a: &u16) -> bool {
        *a == 0
    }
    fn size(&self) -> Option<u128> {
        Some(self.size as u128)
    }
    fn basis_elements(&self) -> Vec<u16> {
        (0..self.ring.dim())
            .map(|i| self.index(&self.ring.basis(i)))
            .collect()
    }
    fn nilradical_basis(&self) -> Vec<u16> {
        self.ring
            .nilradical()
            .iter()
            .map(|x| self.index(x))
            .collect()
    }
}

/// A finite unit group, listed in canonical order, with a generating set
/// chosen greedily by decreasing element order.
#[derive(Clone, Debug)]
pub struct UnitGroup<E> {
    pub elements: Vec<E>,
    pub generators: Vec<(E, u64)>,
}

impl<E: Clone + Ord> UnitGroup<E> {
    pub fn from_elements<R: CommRing<E = E>>(r: &R, mut units: Vec<E>) -> UnitGroup<E> {
        units.sort();
        let mut span: BTreeSet<E> = BTreeSet::from([r.one()]);
        let mut generators = Vec::new();
        let mut by_order: Vec<(u64, &E)> = units.iter().map(|u| (element_order(r, u), u)).collect();
        by_order.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));
        for (order, u) in by_order {
            if span.contains(u) {
                continue;
            }
            let mut grown = span.clone();
            let mut power = u.clone();
            for _ in 1..order {
                for s in &span {
                    grown.insert(r.mul(s, &power));
                }
                power = r.mul(&power, u);
            }
            span = grown;
            generators.push((u.clone(), order));
        }
        UnitGroup {
            elements: units,
            generators,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Units with `x^d = 1`.
    pub fn torsion<R: CommRing<E = E>>(&self, r: &R, d: u64) -> Vec<E> {
        self.elements
            .iter()
            .filter(|x| r.is_one(&r.pow(x, d)))
            .cloned()
            .collect()
    }
}

/// Multiplicative order of a unit of a finite ring.
pub fn element_order<R: CommRing>(r: &R, u: &R::E) -> u64 {
    let mut k = 1;
    let mut p = u.clone();
    while !r.is_one(&p) {
        p = r.mul(&p, u);
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroups::FGAbelianGroup;

    #[test]
    fn tables_agree_with_structure_constants() {
        let f = Field::finite(9).unwrap();
        let r = TestRing::group_algebra_finite(&f, &FGAbelianGroup::cyclic(2)).unwrap();
        let t = Tabled::new(&r).unwrap();
        let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
        for _ in 0..200 {
            let a = CommRing::random(&t, &mut rng);
            let b = CommRing::random(&t, &mut rng);
            assert_eq!(t.elem(t.mul(&a, &b)), &r.mul(t.elem(a), t.elem(b)));
            assert_eq!(t.elem(t.add(&a, &b)), &r.add(t.elem(a), t.elem(b)));
            assert_eq!(t.is_unit(&a), r.is_unit(t.elem(a)));
        }
    }

    #[test]
    fn prime_field_units() {
        let f = Field::prime(7).unwrap();
        let r = TestRing::base_field(&f);
        let u = r.enumerate_units(1000).unwrap();
        assert_eq!(u.order(), 6);
        let three = r.parse("3").unwrap();
        assert_eq!(element_order(&r, &three), 6);
        assert_eq!(u.generators, vec![(three, 6)]);
        assert_eq!(u.torsion(&r, 3).len(), 3);
    }
}
