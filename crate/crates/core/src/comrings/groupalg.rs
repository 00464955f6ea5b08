//! Sparse elements of a group algebra `RG` for a finitely generated abelian
//! group `G`.

use std::collections::BTreeMap;

use super::CommRing;
use crate::abgroups::{FGAbelianGroup, GroupElem};

/// `Σ r_g·g` with finitely many nonzero `r_g`; zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GAElem<E> {
    terms: BTreeMap<GroupElem, E>,
}

impl<E> GAElem<E> {
    pub fn terms(&self) -> &BTreeMap<GroupElem, E> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

pub struct GroupAlgebra<'a, R: CommRing> {
    pub ring: &'a R,
    pub group: FGAbelianGroup,
}

impl<'a, R: CommRing> GroupAlgebra<'a, R> {
    pub fn new(ring: &'a R, group: &FGAbelianGroup) -> Self {
        GroupAlgebra {
            ring,
            group: group.clone(),
        }
    }

    pub fn zero(&self) -> GAElem<R::E> {
        GAElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> GAElem<R::E> {
        self.monomial(self.ring.one(), &self.group.zero())
    }

    /// `r·g`.
    pub fn monomial(&self, r: R::E, g: &[i64]) -> GAElem<R::E> {
        let mut terms = BTreeMap::new();
        if !self.ring.is_zero(&r) {
            terms.insert(self.group.normalize(g), r);
        }
        GAElem { terms }
    }

    /// `r·e`, the image of `R` in `RG`.
    pub fn constant(&self, r: R::E) -> GAElem<R::E> {
        self.monomial(r, &self.group.zero())
    }

    fn accumulate(&self, terms: &mut BTreeMap<GroupElem, R::E>, g: GroupElem, r: R::E) {
        let entry = terms.remove(&g);
        let v = match entry {
            Some(old) => self.ring.add(&old, &r),
            None => r,
        };
        if !self.ring.is_zero(&v) {
            terms.insert(g, v);
        }
    }

    pub fn add(&self, a: &GAElem<R::E>, b: &GAElem<R::E>) -> GAElem<R::E> {
        let mut terms = a.terms.clone();
        for (g, r) in &b.terms {
            self.accumulate(&mut terms, g.clone(), r.clone());
        }
        GAElem { terms }
    }

    pub fn neg(&self, a: &GAElem<R::E>) -> GAElem<R::E> {
        GAElem {
            terms: a
                .terms
                .iter()
                .map(|(g, r)| (g.clone(), self.ring.neg(r)))
                .collect(),
        }
    }

    pub fn sub(&self, a: &GAElem<R::E>, b: &GAElem<R::E>) -> GAElem<R::E> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &GAElem<R::E>, b: &GAElem<R::E>) -> GAElem<R::E> {
        let mut terms = BTreeMap::new();
        for (g, r) in &a.terms {
            for (h, s) in &b.terms {
                let c = self.ring.mul(r, s);
                if !self.ring.is_zero(&c) {
                    self.accumulate(&mut terms, self.group.add(g, h), c);
                }
            }
        }
        GAElem { terms }
    }

    /// `r·x` for `r ∈ R`.
    pub fn scale(&self, r: &R::E, a: &GAElem<R::E>) -> GAElem<R::E> {
        let mut terms = BTreeMap::new();
        for (g, s) in &a.terms {
            let c = self.ring.mul(r, s);
            if !self.ring.is_zero(&c) {
                terms.insert(g.clone(), c);
            }
        }
        GAElem { terms }
    }

    pub fn pow(&self, a: &GAElem<R::E>, e: u64) -> GAElem<R::E> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// The augmentation `Σ r_g·g ↦ Σ r_g`.
    pub fn counit(&self, a: &GAElem<R::E>) -> R::E {
        a.terms
            .values()
            .fold(self.ring.zero(), |acc, r| self.ring.add(&acc, r))
    }

    pub fn is_zero(&self, a: &GAElem<R::E>) -> bool {
        a.terms.is_empty()
    }

    /// `(r, h)` when `a = r·h` is a single term.
    pub fn as_monomial<'b>(&self, a: &'b GAElem<R::E>) -> Option<(&'b R::E, &'b GroupElem)> {
        match a.terms.len() {
            1 => a.terms.iter().next().map(|(g, r)| (r, g)),
            _ => None,
        }
    }

    /// A single term `r·h` is a unit of `RG` exactly when `r` is a unit of
    /// `R`; the inverse is `r⁻¹·h⁻¹`.
    pub fn monomial_inverse(&self, a: &GAElem<R::E>) -> Option<GAElem<R::E>> {
        let (r, h) = self.as_monomial(a)?;
        let ri = self.ring.inv(r)?;
        Some(self.monomial(ri, &self.group.neg(h)))
    }

    /// Coefficientwise product with an idempotent `e` of `R`: the component
    /// of `a` in the block `Re·G`.
    pub fn restrict(&self, a: &GAElem<R::E>, e: &R::E) -> GAElem<R::E> {
        self.scale(e, a)
    }

    /// Text such as `g^3`, `2*g^(1,0)` or `1 + [0,1]*g^2`; the neutral element
    /// is omitted from its terms.
    pub fn format(&self, a: &GAElem<R::E>) -> String {
        if a.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = a
            .terms
            .iter()
            .map(|(g, r)| {
                let coef = self.ring.format(r);
                if self.group.is_zero(g) {
                    return coef;
                }
                let elem = if g.len() == 1 {
                    g[0].to_string()
                } else {
                    self.group.format_elem(g)
                };
                if self.ring.is_one(r) {
                    format!("g^{elem}")
                } else {
                    format!("{coef}*g^{elem}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comrings::TestRing;
    use crate::scalars::Field;

    #[test]
    fn counit_and_inverses() {
        let f = Field::prime(3).unwrap();
        let r = TestRing::dual_numbers(&f, 2).unwrap();
        let g = FGAbelianGroup::free(1);
        let ga = GroupAlgebra::new(&r, &g);
        let r1 = r.parse("[1,1]").unwrap();
        let r2 = r.parse("[0,2]").unwrap();
        let x = ga.add(
            &ga.monomial(r1.clone(), &[2]),
            &ga.monomial(r2.clone(), &[5]),
        );
        assert_eq!(ga.counit(&x), r.add(&r1, &r2));

        let gen = ga.monomial(r.one(), &[1]);
        let ginv = ga.monomial(r.one(), &[-1]);
        assert_eq!(ga.mul(&gen, &ginv), ga.one());

        let m = ga.monomial(r1.clone(), &[1]);
        let mi = ga.monomial_inverse(&m).unwrap();
        assert_eq!(mi, ga.monomial(r.parse("[1,2]").unwrap(), &[-1]));
        assert_eq!(ga.mul(&m, &mi), ga.one());
        assert!(ga
            .monomial_inverse(&ga.monomial(r.basis(1), &[1]))
            .is_none());
    }

    #[test]
    fn formatting() {
        let q = Field::rationals();
        let r = TestRing::base_field(&q);
        let g = FGAbelianGroup::cyclic(6);
        let ga = GroupAlgebra::new(&r, &g);
        let x = ga.add(
            &ga.one(),
            &ga.monomial(r.from_scalar(&q.from_i64(-2)), &[3]),
        );
        assert_eq!(ga.format(&x), "1 + -2*g^3");
    }
}
