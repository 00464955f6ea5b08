//! Nilradical and primitive idempotents.
//!
//! Over a finite field `F_q` the elements with `x^q = x` form a subalgebra
//! isomorphic to `F_q^m`, one factor per connected component, so its
//! primitive idempotents are found by Lagrange interpolation over `F_q`.
//! In characteristic zero, blocks are split with CRT idempotents taken from
//! coprime factorizations of minimal polynomials, and a block is accepted as
//! connected once its reduction is seen to be a field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{RingElem, TestRing};
use crate::linalg::{self, Mat};
use crate::scalars::poly::{self, Poly};
use crate::scalars::{Elem, Field};
use crate::{Error, Result};

pub(super) fn nilradical(r: &TestRing) -> Vec<RingElem> {
    let f = r.field();
    let n = r.dim();
    let m: Mat = match f.cardinality() {
        Some(q) => {
            let mut e = q;
            while e < n as u64 {
                e *= q;
            }
            let cols: Vec<RingElem> = (0..n).map(|j| r.pow(&r.basis(j), e)).collect();
            linalg::transpose(&cols)
        }
        None => (0..n)
            .map(|i| (0..n).map(|j| trace(r, &r.table()[i][j])).collect())
            .collect(),
    };
    linalg::span_basis(f, &linalg::nullspace(f, &m, n))
}

fn trace(r: &TestRing, a: &RingElem) -> Elem {
    let f = r.field();
    let m = r.mul_matrix(a);
    (0..r.dim()).fold(f.zero(), |acc, i| f.add(&acc, &m[i][i]))
}

pub(super) fn primitive_idempotents(r: &TestRing) -> Result<Vec<RingElem>> {
    let mut out = if r.field().is_finite() {
        finite_split(r)
    } else {
        char0_split(r)?
    };
    out.sort();
    check_family(r, &out)?;
    Ok(out)
}

fn check_family(r: &TestRing, es: &[RingElem]) -> Result<()> {
    let mut sum = r.zero();
    for (i, e) in es.iter().enumerate() {
        if r.is_zero(e) || r.mul(e, e) != *e {
            return Err(Error::Identity(format!(
                "{} is not a nonzero idempotent",
                r.format(e)
            )));
        }
        for f in &es[i + 1..] {
            if !r.is_zero(&r.mul(e, f)) {
                return Err(Error::Identity("idempotents are not orthogonal".into()));
            }
        }
        sum = r.add(&sum, e);
    }
    if sum != r.one() {
        return Err(Error::Identity("idempotents do not sum to 1".into()));
    }
    Ok(())
}

fn finite_split(r: &TestRing) -> Vec<RingElem> {
    let f = r.field();
    let q = f.cardinality().expect("finite");
    let n = r.dim();
    let cols: Vec<RingElem> = (0..n)
        .map(|j| {
            let b = r.basis(j);
            r.sub(&r.pow(&b, q), &b)
        })
        .collect();
    let fixed = linalg::nullspace(f, &linalg::transpose(&cols), n);
    let scalars = f.elements().expect("finite");
    let mut blocks = vec![r.one()];
    for b in &fixed {
        let mut next = Vec::new();
        for e in &blocks {
            let x = r.mul(b, e);
            let mut covered = r.zero();
            for a in &scalars {
                let shifted = r.sub(&x, &r.scale(a, e));
                let fa = r.sub(e, &r.mul(e, &r.pow(&shifted, q - 1)));
                if !r.is_zero(&fa) {
                    covered = r.add(&covered, &fa);
                    next.push(fa);
                    if covered == *e {
                        break;
                    }
                }
            }
        }
        blocks = next;
    }
    blocks
}

struct Piece {
    poly: Poly,
    irreducible: bool,
}

fn char0_split(r: &TestRing) -> Result<Vec<RingElem>> {
    let f = r.field();
    let n = r.dim();
    let nil = r.nilradical().to_vec();
    let mut candidates: Vec<RingElem> = (0..n).map(|i| r.basis(i)).collect();
    for c in [1i64, 2, -1, 3] {
        for i in 0..n {
            for j in i + 1..n {
                let v = r.add(&r.basis(i), &r.scale(&f.from_i64(c), &r.basis(j)));
                candidates.push(v);
            }
        }
    }
    let mut done = Vec::new();
    let mut work = vec![r.one()];
    while let Some(e) = work.pop() {
        let rdim = residue_dim(r, &e, &nil);
        if rdim == 1 {
            done.push(e);
            continue;
        }
        let mut resolved = false;
        for c in &candidates {
            let x = r.mul(c, &e);
            let m = min_poly(r, &x, &e);
            let pieces = coprime_pieces(f, &m)?;
            if pieces.len() >= 2 {
                for ep in crt_idempotents(f, &m, &pieces)? {
                    work.push(eval_at(r, &ep, &x, &e));
                }
                resolved = true;
                break;
            }
            if pieces.len() == 1
                && pieces[0].irreducible
                && poly::degree(&pieces[0].poly) == Some(rdim)
            {
                done.push(e.clone());
                resolved = true;
                break;
            }
        }
        if !resolved {
            return Err(Error::FactorizationIncomplete(format!(
                "cannot split or certify the block {} of {}",
                r.format(&e),
                r.name()
            )));
        }
    }
    Ok(done)
}

/// `dim Re − dim (N ∩ Re)`.
fn residue_dim(r: &TestRing, e: &RingElem, nil: &[RingElem]) -> usize {
    let f = r.field();
    let block: Vec<RingElem> = (0..r.dim()).map(|i| r.mul(e, &r.basis(i))).collect();
    let nblock: Vec<RingElem> = nil.iter().map(|x| r.mul(e, x)).collect();
    let a = linalg::span_basis(f, &block).len();
    let b = linalg::span_basis(f, &nblock).len();
    a - b
}

/// Minimal polynomial of `x` in the block ring `Re`, whose unit is `e`.
fn min_poly(r: &TestRing, x: &RingElem, e: &RingElem) -> Poly {
    let f = r.field();
    let mut powers = vec![e.clone()];
    loop {
        let next = r.mul(powers.last().unwrap(), x);
        let m = linalg::transpose(&powers);
        if let Some(c) = linalg::solve(f, &m, &next) {
            let mut p: Poly = c.iter().map(|v| f.neg(v)).collect();
            p.push(f.one());
            return p;
        }
        powers.push(next);
    }
}

fn eval_at(r: &TestRing, p: &[Elem], x: &RingElem, e: &RingElem) -> RingElem {
    p.iter()
        .rev()
        .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), &r.scale(c, e)))
}

fn euler_phi(n: u64) -> u64 {
    crate::scalars::prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

fn coprime_pieces(f: &Field, m: &[Elem]) -> Result<Vec<Piece>> {
    let g = poly::gcd(f, m, &poly::derivative(f, m))?;
    let (s, _) = poly::divrem(f, m, &g)?;
    let mut rest = poly::monic(f, &s)?;
    let mut pieces = Vec::new();
    let over_q = f.base().is_none();
    let d = poly::degree(&rest).unwrap_or(0) as u64;
    let bound = (2 * d * d).max(2);
    for k in 1..=bound {
        if poly::degree(&rest).unwrap_or(0) == 0 {
            break;
        }
        if euler_phi(k) > poly::degree(&rest).unwrap() as u64 {
            continue;
        }
        let c = poly::cyclotomic(f, k as usize);
        let g = poly::gcd(f, &rest, &c)?;
        if poly::degree(&g).unwrap_or(0) >= 1 {
            let irreducible = (over_q && g == c) || g.len() == 2;
            rest = poly::divrem(f, &rest, &g)?.0;
            pieces.push(Piece {
                poly: g,
                irreducible,
            });
        }
    }
    if over_q {
        for root in rational_roots(f, &rest) {
            let lin = vec![f.neg(&root), f.one()];
            rest = poly::divrem(f, &rest, &lin)?.0;
            pieces.push(Piece {
                poly: lin,
                irreducible: true,
            });
        }
    }
    if poly::degree(&rest).unwrap_or(0) >= 1 {
        // Over ℚ a cubic or quadratic without rational roots is irreducible.
        let irreducible = rest.len() == 2 || (over_q && rest.len() <= 4);
        pieces.push(Piece {
            poly: rest,
            irreducible,
        });
    }
    Ok(pieces)
}

/// Rational roots of a polynomial over ℚ by the rational root theorem.
fn rational_roots(f: &Field, p: &[Elem]) -> Vec<Elem> {
    if poly::degree(p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let rats: Vec<BigRational> = p
        .iter()
        .map(|c| match c {
            Elem::Rat(x) => x.clone(),
            _ => unreachable!("rational coefficients"),
        })
        .collect();
    let lcm = rats
        .iter()
        .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(f.zero());
    }
    let a0 = ints[low].abs();
    let ad = ints.last().unwrap().abs();
    let (Some(a0), Some(ad)) = (a0.to_u64(), ad.to_u64()) else {
        return roots;
    };
    if a0 > 1_000_000_000 || ad > 1_000_000_000 {
        return roots;
    }
    let divisors = |n: u64| -> Vec<u64> {
        let mut out = Vec::new();
        let mut i = 1;
        while i * i <= n {
            if n % i == 0 {
                out.push(i);
                if i != n / i {
                    out.push(n / i);
                }
            }
            i += 1;
        }
        out
    };
    let mut cands: Vec<BigRational> = Vec::new();
    for a in divisors(a0) {
        for b in divisors(ad) {
            let x = BigRational::new(BigInt::from(a), BigInt::from(b));
            cands.push(x.clone());
            cands.push(-x);
        }
    }
    cands.sort();
    cands.dedup();
    for c in cands {
        let e = Elem::Rat(c);
        if f.is_zero(&poly::eval(f, p, &e)) {
            roots.push(e);
        }
    }
    roots
}

fn crt_idempotents(f: &Field, m: &[Elem], pieces: &[Piece]) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for piece in pieces {
        let mut part = vec![f.one()];
        let mut t = m.to_vec();
        loop {
            let (qt, rt) = poly::divrem(f, &t, &piece.poly)?;
            if !rt.is_empty() {
                break;
            }
            part = poly::mul(f, &part, &piece.poly);
            t = qt;
        }
        let (g, _, c) = poly::ext_gcd(f, &part, &t)?;
        if g != vec![f.one()] {
            return Err(Error::Identity("pieces are not coprime".into()));
        }
        out.push(poly::rem(f, &poly::mul(f, &c, &t), m)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroups::FGAbelianGroup;

    #[test]
    fn rational_group_algebra_of_c6() {
        let q = Field::rationals();
        let r = TestRing::group_algebra_finite(&q, &FGAbelianGroup::cyclic(6)).unwrap();
        assert_eq!(r.idempotents().unwrap().len(), 4);
    }

    #[test]
    fn split_group_algebra_mod_7() {
        let f = Field::prime(7).unwrap();
        let r = TestRing::group_algebra_finite(&f, &FGAbelianGroup::cyclic(6)).unwrap();
        assert_eq!(r.idempotents().unwrap().len(), 6);
    }

    #[test]
    fn local_rings_have_one_block() {
        let f = Field::prime(3).unwrap();
        let r = TestRing::dual_numbers(&f, 2).unwrap();
        assert_eq!(r.idempotents().unwrap(), vec![r.one()]);
        let r = TestRing::group_algebra_finite(&f, &FGAbelianGroup::cyclic(3)).unwrap();
        assert_eq!(r.idempotents().unwrap().len(), 1);
        let q = Field::rationals();
        let r = TestRing::dual_numbers(&q, 3).unwrap();
        assert_eq!(r.idempotents().unwrap().len(), 1);
    }

    #[test]
    fn nilradical_of_dual_numbers() {
        for f in [Field::prime(2).unwrap(), Field::rationals()] {
            let r = TestRing::dual_numbers(&f, 3).unwrap();
            assert_eq!(r.nilradical().len(), 2);
        }
        let q = Field::rationals();
        let r = TestRing::group_algebra_finite(&q, &FGAbelianGroup::cyclic(4)).unwrap();
        assert!(r.nilradical().is_empty());
        let f2 = Field::prime(2).unwrap();
        let r = TestRing::group_algebra_finite(&f2, &FGAbelianGroup::cyclic(4)).unwrap();
        assert_eq!(r.nilradical().len(), 3);
    }

    #[test]
    fn rational_certification() {
        let q = Field::rationals();
        let r = TestRing::group_algebra_finite(&q, &FGAbelianGroup::cyclic(5)).unwrap();
        assert_eq!(r.idempotents().unwrap().len(), 2);
        let r = TestRing::truncated_poly(&q, &poly::from_ints(&q, &[-2, 0, 0, 1])).unwrap();
        assert_eq!(r.idempotents().unwrap().len(), 1);
        // t^4 + 4 = (t^2 + 2t + 2)(t^2 - 2t + 2) has no rational root.
        let r = TestRing::truncated_poly(&q, &poly::from_ints(&q, &[4, 0, 0, 0, 1])).unwrap();
        match r.idempotents() {
            Ok(es) => assert_eq!(es.len(), 2),
            Err(e) => assert!(matches!(e, Error::FactorizationIncomplete(_))),
        }
    }
}
