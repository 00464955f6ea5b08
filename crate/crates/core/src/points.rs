//! Points of `Aut(A)`, `Stab(Γ)`, `Diag(Γ)` and `Aut(Γ)` with values in a
//! commutative test ring `R`.
//!
//! A point is an `R`-linear map `φ` of `A ⊗ R`, stored as a matrix whose
//! entry `[i][j]` is the coefficient of `bᵢ` in `φ(bⱼ)`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::abgroups::{enumerate_characters, group_from_presentation, subgroup_generated};
use crate::abgroups::{FGAbelianGroup, GroupElem, Presentation, UnitSource};
use crate::comrings::{CommRing, GAElem, GroupAlgebra};
use crate::galg::Grading;
use crate::{Error, Result};

pub type Matrix<E> = Vec<Vec<E>>;

/// Default bound on `|R|^(n·b)`, `b` the number of columns the enumeration
/// has to guess.
pub const DEFAULT_CAP: u128 = 100_000_000;

/// Which subfunctor of `Aut(A)` a point is tested against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Functor {
    AutA,
    Stab,
    Diag,
    AutGamma,
}

impl Functor {
    pub fn name(self) -> &'static str {
        match self {
            Functor::AutA => "Aut(A)",
            Functor::Stab => "Stab",
            Functor::Diag => "Diag",
            Functor::AutGamma => "Aut(Gamma)",
        }
    }
}

/// Where a point fails to permute the components inside one block `Re`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFailure {
    pub block: usize,
    pub row: usize,
    pub col: usize,
}

/// Outcome of the test against the normalizer of `D(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DGroupVerdict {
    Member,
    /// The forced values `ξ(s)` violate the relation `Σ aₛ·s = 0`.
    NonMember {
        relation: Vec<i64>,
        forced: Vec<String>,
        product: String,
    },
    /// The point does not permute the components.
    NotGraded,
    /// The support does not generate the grading group.
    Indeterminate(String),
}

/// A grading paired with a test ring, with the structure constants carried
/// into `R`.
pub struct Stage<'a, R: CommRing> {
    grading: &'a Grading,
    ring: &'a R,
    n: usize,
    products: Vec<Vec<Vec<(usize, R::E)>>>,
    idempotents: Vec<R::E>,
}

impl<'a, R: CommRing> Stage<'a, R> {
    pub fn new(grading: &'a Grading, ring: &'a R) -> Result<Stage<'a, R>> {
        if grading.field() != ring.field() {
            return Err(Error::FieldMismatch(
                grading.field().name().into(),
                ring.field().name().into(),
            ));
        }
        let a = grading.algebra();
        let f = grading.field();
        let n = a.dim();
        let products = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        a.product(i, j)
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !f.is_zero(c))
                            .map(|(k, c)| (k, ring.scalar(c)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Stage {
            grading,
            ring,
            n,
            products,
            idempotents: ring.idempotents()?,
        })
    }

    pub fn grading(&self) -> &Grading {
        self.grading
    }

    pub fn ring(&self) -> &R {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn idempotents(&self) -> &[R::E] {
        &self.idempotents
    }

    pub fn identity(&self) -> Matrix<R::E> {
        let r = self.ring;
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if i == j { r.one() } else { r.zero() })
                    .collect()
            })
            .collect()
    }

    /// The diagonal map scaling basis vector `i` by `d[i]`.
    pub fn diagonal(&self, d: &[R::E]) -> Matrix<R::E> {
        let r = self.ring;
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if i == j { d[i].clone() } else { r.zero() })
                    .collect()
            })
            .collect()
    }

    pub fn column(&self, phi: &Matrix<R::E>, j: usize) -> Vec<R::E> {
        phi.iter().map(|row| row[j].clone()).collect()
    }

    /// Product in `A ⊗ R`.
    pub fn mul_vec(&self, x: &[R::E], y: &[R::E]) -> Vec<R::E> {
        let r = self.ring;
        let mut out = vec![r.zero(); self.n];
        for (i, xi) in x.iter().enumerate() {
            if r.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if r.is_zero(yj) || self.products[i][j].is_empty() {
                    continue;
                }
                let xy = r.mul(xi, yj);
                for (k, c) in &self.products[i][j] {
                    out[*k] = r.add(&out[*k], &r.mul(&xy, c));
                }
            }
        }
        out
    }

    pub fn compose(&self, a: &Matrix<R::E>, b: &Matrix<R::E>) -> Matrix<R::E> {
        let r = self.ring;
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(r.zero(), |acc, k| r.add(&acc, &r.mul(&a[i][k], &b[k][j])))
                    })
                    .collect()
            })
            .collect()
    }

    fn pair_holds(&self, cols: &[Vec<R::E>], i: usize, j: usize) -> bool {
        let r = self.ring;
        let lhs = self.mul_vec(&cols[i], &cols[j]);
        let mut rhs = vec![r.zero(); self.n];
        for (k, c) in &self.products[i][j] {
            for (t, x) in cols[*k].iter().enumerate() {
                rhs[t] = r.add(&rhs[t], &r.mul(c, x));
            }
        }
        lhs == rhs
    }

    fn columns(&self, phi: &Matrix<R::E>) -> Vec<Vec<R::E>> {
        (0..self.n).map(|j| self.column(phi, j)).collect()
    }

    /// First pair `(i, j)` with `φ(bᵢ)φ(bⱼ) ≠ φ(bᵢbⱼ)`.
    pub fn multiplicative_failure(&self, phi: &Matrix<R::E>) -> Option<(usize, usize)> {
        let cols = self.columns(phi);
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| !self.pair_holds(&cols, i, j))
    }

    /// Inverse over `R`, computed block by block: in each local block `Re`
    /// Gaussian elimination succeeds exactly when the block is invertible.
    pub fn inverse(&self, phi: &Matrix<R::E>) -> Option<Matrix<R::E>> {
        let r = self.ring;
        let n = self.n;
        let mut total = vec![vec![r.zero(); n]; n];
        for e in &self.idempotents {
            let mut m: Vec<Vec<R::E>> = phi
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let mut v: Vec<R::E> = row.iter().map(|x| r.mul(x, e)).collect();
                    v.extend((0..n).map(|j| if i == j { e.clone() } else { r.zero() }));
                    v
                })
                .collect();
            for c in 0..n {
                let p = (c..n).find(|&i| r.is_unit_in_block(&m[i][c], e))?;
                m.swap(c, p);
                let pinv = r.inv_in_block(&m[c][c], e)?;
                for x in m[c].iter_mut() {
                    *x = r.mul(x, &pinv);
                }
                for i in 0..n {
                    if i == c || r.is_zero(&m[i][c]) {
                        continue;
                    }
                    let factor = m[i][c].clone();
                    for k in 0..2 * n {
                        let t = r.mul(&factor, &m[c][k]);
                        m[i][k] = r.sub(&m[i][k], &t);
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    total[i][j] = r.add(&total[i][j], &m[i][n + j]);
                }
            }
        }
        (self.compose(phi, &total) == self.identity()).then_some(total)
    }

    pub fn is_automorphism(&self, phi: &Matrix<R::E>) -> bool {
        self.multiplicative_failure(phi).is_none() && self.inverse(phi).is_some()
    }

    /// Automorphism mapping every component into itself.
    pub fn is_stab(&self, phi: &Matrix<R::E>) -> bool {
        let g = self.grading;
        let r = self.ring;
        let block_diagonal = (0..self.n).all(|i| {
            (0..self.n).all(|j| g.component_of(i) == g.component_of(j) || r.is_zero(&phi[i][j]))
        });
        block_diagonal && self.is_automorphism(phi)
    }

    /// Automorphism acting on each component by a unit scalar.
    pub fn is_diag(&self, phi: &Matrix<R::E>) -> bool {
        let g = self.grading;
        let r = self.ring;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && !r.is_zero(&phi[i][j]) {
                    return false;
                }
            }
            let lead = g.component(g.component_of(i))[0];
            if phi[i][i] != phi[lead][lead] || !r.is_unit(&phi[i][i]) {
                return false;
            }
        }
        self.is_automorphism(phi)
    }

    /// For each primitive idempotent `e`, the permutation `σ` of the support
    /// with `e·φ(A_s) ⊆ A_{σ(s)} ⊗ Re`.
    pub fn block_permutations(
        &self,
        phi: &Matrix<R::E>,
    ) -> std::result::Result<Vec<Vec<usize>>, BlockFailure> {
        let g = self.grading;
        let r = self.ring;
        let m = g.support().len();
        let mut out = Vec::with_capacity(self.idempotents.len());
        for (b, e) in self.idempotents.iter().enumerate() {
            let mut sigma = vec![usize::MAX; m];
            for (s, slot) in sigma.iter_mut().enumerate() {
                let mut target = None;
                for &j in g.component(s) {
                    for i in 0..self.n {
                        if r.is_zero(&r.mul(&phi[i][j], e)) {
                            continue;
                        }
                        let t = g.component_of(i);
                        match target {
                            None => target = Some(t),
                            Some(t0) if t0 != t => {
                                return Err(BlockFailure {
                                    block: b,
                                    row: i,
                                    col: j,
                                })
                            }
                            _ => {}
                        }
                    }
                }
                let lead = g.component(s)[0];
                *slot = target.ok_or(BlockFailure {
                    block: b,
                    row: 0,
                    col: lead,
                })?;
            }
            let distinct: BTreeSet<usize> = sigma.iter().copied().collect();
            if distinct.len() != m {
                let s = (0..m)
                    .find(|&s| sigma[..s].contains(&sigma[s]))
                    .unwrap_or(0);
                return Err(BlockFailure {
                    block: b,
                    row: g.component(sigma[s])[0],
                    col: g.component(s)[0],
                });
            }
            out.push(sigma);
        }
        Ok(out)
    }

    /// Automorphism permuting the components inside every block.
    pub fn is_autgamma(&self, phi: &Matrix<R::E>) -> bool {
        self.block_permutations(phi).is_ok() && self.is_automorphism(phi)
    }

    fn psi_algebra(&self) -> GroupAlgebra<'_, R> {
        GroupAlgebra::new(self.ring, self.grading.group())
    }

    /// `ψφ = φψ` over `RG` for the generic operator `ψ(bᵢ) = bᵢ ⊗ deg(i)`.
    pub fn cent_generic(&self, phi: &Matrix<R::E>) -> bool {
        let ga = self.psi_algebra();
        let labels = self.grading.labels();
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let psi_phi = ga.monomial(phi[i][j].clone(), &labels[i]);
                let phi_psi = ga.monomial(phi[i][j].clone(), &labels[j]);
                psi_phi == phi_psi
            })
        }) && self.is_automorphism(phi)
    }

    /// `φ⁻¹ψφ` as a matrix over `RG`.
    pub fn conjugate_psi(&self, phi: &Matrix<R::E>, inv: &Matrix<R::E>) -> Matrix<GAElem<R::E>> {
        self.twisted_product(inv, phi)
    }

    /// `Σ_k a[i][k]·deg(k)·b[k][j]`.
    fn twisted_product(&self, a: &Matrix<R::E>, b: &Matrix<R::E>) -> Matrix<GAElem<R::E>> {
        let ga = self.psi_algebra();
        let r = self.ring;
        let labels = self.grading.labels();
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        (0..self.n).fold(ga.zero(), |acc, k| {
                            let c = r.mul(&a[i][k], &b[k][j]);
                            ga.add(&acc, &ga.monomial(c, &labels[k]))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Whether a matrix over `RG` acts on every component by one scalar.
    fn component_scalar(&self, m: &Matrix<GAElem<R::E>>) -> bool {
        let g = self.grading;
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                if i == j {
                    let lead = g.component(g.component_of(i))[0];
                    m[i][i] == m[lead][lead]
                } else {
                    m[i][j].is_empty()
                }
            })
        })
    }

    /// The generic normalizer test: `φ⁻¹ψφ ∈ Diag(Γ)(RG)`. On success the
    /// per-block shifts `s ↦ t` with `e·φ⁻¹ψφ = e·t` on `A_s` are returned.
    pub fn norm_generic(&self, phi: &Matrix<R::E>) -> Result<Option<Vec<Vec<usize>>>> {
        if self.multiplicative_failure(phi).is_some() {
            return Ok(None);
        }
        let Some(inv) = self.inverse(phi) else {
            return Ok(None);
        };
        let m = self.conjugate_psi(phi, &inv);
        if !self.component_scalar(&m) {
            return Ok(None);
        }
        let g = self.grading;
        let ga = self.psi_algebra();
        let r = self.ring;
        let mut shifts = Vec::new();
        for e in &self.idempotents {
            let mut shift = Vec::new();
            for s in 0..g.support().len() {
                let lead = g.component(s)[0];
                let part = ga.restrict(&m[lead][lead], e);
                let (c, h) = ga.as_monomial(&part).ok_or_else(|| {
                    Error::Identity(format!(
                        "conjugated operator has {} terms on a component",
                        part.len()
                    ))
                })?;
                if !r.is_unit_in_block(c, e) {
                    return Err(Error::Identity("shift coefficient is not a unit".into()));
                }
                let t = g.support_index(h).ok_or_else(|| {
                    Error::Identity(format!(
                        "shift {} lies outside the support",
                        g.group().format_elem(h)
                    ))
                })?;
                shift.push(t);
            }
            shifts.push(shift);
        }
        Ok(Some(shifts))
    }

    /// The test against the normalizer of `D(G)`: `φψφ⁻¹` must be `ψ_ξ` for
    /// a character `ξ: G → (RG)^×`. On `A_{σ(s)}` it acts by `s`, which
    /// forces `ξ` on the support; the forced values must satisfy every
    /// relation among the support elements.
    pub fn dgroup_norm(&self, phi: &Matrix<R::E>) -> Result<DGroupVerdict> {
        let g = self.grading;
        let group = g.group();
        let sub = subgroup_generated(group, g.support())?;
        if !sub.is_whole() {
            return Ok(DGroupVerdict::Indeterminate(format!(
                "the support generates a proper subgroup of {group}"
            )));
        }
        if !self.is_autgamma(phi) {
            return Ok(DGroupVerdict::NotGraded);
        }
        let inv = self.inverse(phi).expect("automorphism");
        let n_mat = self.twisted_product(phi, &inv);
        if !self.component_scalar(&n_mat) {
            return Ok(DGroupVerdict::NotGraded);
        }
        let ga = self.psi_algebra();
        let xi: Vec<GAElem<R::E>> = (0..g.support().len())
            .map(|s| {
                let lead = g.component(s)[0];
                n_mat[lead][lead].clone()
            })
            .collect();
        let xi_inv: Vec<GAElem<R::E>> = xi
            .iter()
            .map(|x| self.blockwise_inverse(&ga, x))
            .collect::<Result<_>>()?;
        for rel in &sub.relations {
            let mut prod = ga.one();
            for (s, &a) in rel.iter().enumerate() {
                let base = if a >= 0 { &xi[s] } else { &xi_inv[s] };
                prod = ga.mul(&prod, &ga.pow(base, a.unsigned_abs()));
            }
            if prod != ga.one() {
                return Ok(DGroupVerdict::NonMember {
                    relation: rel.clone(),
                    forced: xi.iter().map(|x| ga.format(x)).collect(),
                    product: ga.format(&prod),
                });
            }
        }
        Ok(DGroupVerdict::Member)
    }

    /// Inverse of `Σ_e e·rₑ·hₑ` with each `rₑ` a unit of `Re`.
    fn blockwise_inverse(
        &self,
        ga: &GroupAlgebra<'_, R>,
        x: &GAElem<R::E>,
    ) -> Result<GAElem<R::E>> {
        let r = self.ring;
        let mut out = ga.zero();
        for e in &self.idempotents {
            let part = ga.restrict(x, e);
            let (c, h) = ga
                .as_monomial(&part)
                .ok_or_else(|| Error::Identity("forced value is not a monomial".into()))?;
            let ci = r
                .inv_in_block(c, e)
                .ok_or_else(|| Error::Identity("forced value is not a unit".into()))?;
            out = ga.add(&out, &ga.monomial(ci, &ga.group.neg(h)));
        }
        Ok(out)
    }

    pub fn member(&self, functor: Functor, phi: &Matrix<R::E>) -> bool {
        match functor {
            Functor::AutA => self.is_automorphism(phi),
            Functor::Stab => self.is_stab(phi),
            Functor::Diag => self.is_diag(phi),
            Functor::AutGamma => self.is_autgamma(phi),
        }
    }

    pub fn format_matrix(&self, phi: &Matrix<R::E>) -> String {
        let rows: Vec<String> = phi
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|x| self.ring.format(x)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }

    /// The image of each basis vector, as text.
    pub fn format_images(&self, phi: &Matrix<R::E>) -> Vec<String> {
        let a = self.grading.algebra();
        (0..self.n)
            .map(|j| {
                let terms: Vec<String> = (0..self.n)
                    .filter(|&i| !self.ring.is_zero(&phi[i][j]))
                    .map(|i| {
                        let c = &phi[i][j];
                        if self.ring.is_one(c) {
                            a.name(i).to_string()
                        } else {
                            format!("{}*{}", self.ring.format(c), a.name(i))
                        }
                    })
                    .collect();
                let image = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ")
                };
                format!("{} -> {}", a.name(j), image)
            })
            .collect()
    }
}

/// Units of `R` as a [`UnitSource`]: exhaustive for finite rings, and for
/// infinite ones the torsion units found blockwise from powers of basis
/// elements.
pub struct RingUnits<'r, R: CommRing> {
    ring: &'r R,
    all: Option<Vec<R::E>>,
    pool: Vec<R::E>,
}

/// Largest order searched for torsion units of an infinite block.
const TORSION_SEARCH: u64 = 24;

impl<'r, R: CommRing> RingUnits<'r, R> {
    pub fn new(ring: &'r R, idempotents: &[R::E]) -> RingUnits<'r, R> {
        match ring.elements() {
            Some(elems) => RingUnits {
                ring,
                all: Some(elems.into_iter().filter(|x| ring.is_unit(x)).collect()),
                pool: Vec::new(),
            },
            None => RingUnits {
                ring,
                all: None,
                pool: torsion_pool(ring, idempotents),
            },
        }
    }

    /// Known units: all of them, or the torsion pool.
    pub fn known(&self) -> &[R::E] {
        self.all.as_deref().unwrap_or(&self.pool)
    }
}

fn torsion_pool<R: CommRing>(ring: &R, idempotents: &[R::E]) -> Vec<R::E> {
    let mut per_block: Vec<Vec<R::E>> = Vec::new();
    for e in idempotents {
        let mut found: BTreeSet<R::E> = BTreeSet::new();
        found.insert(e.clone());
        found.insert(ring.neg(e));
        for b in ring.basis_elements() {
            let x = ring.mul(&b, e);
            let mut p = x.clone();
            for _ in 1..TORSION_SEARCH {
                if p == *e {
                    break;
                }
                p = ring.mul(&p, &x);
            }
            if p == *e {
                let mut q = x.clone();
                while q != *e {
                    found.insert(q.clone());
                    found.insert(ring.neg(&q));
                    q = ring.mul(&q, &x);
                }
            }
        }
        let mut closed = found.clone();
        loop {
            let mut grown = closed.clone();
            for a in &closed {
                for b in &found {
                    grown.insert(ring.mul(a, b));
                }
            }
            if grown.len() == closed.len() || grown.len() > 4 * TORSION_SEARCH as usize {
                break;
            }
            closed = grown;
        }
        per_block.push(closed.into_iter().collect());
    }
    let mut out = vec![ring.zero()];
    for block in &per_block {
        out = out
            .iter()
            .flat_map(|acc| block.iter().map(move |x| ring.add(acc, x)))
            .collect();
    }
    out.sort();
    out
}

impl<R: CommRing> UnitSource for RingUnits<'_, R> {
    type Elem = R::E;

    fn torsion(&self, d: u64) -> Result<Vec<R::E>> {
        let r = self.ring;
        Ok(self
            .known()
            .iter()
            .filter(|x| r.is_one(&r.pow(x, d)))
            .cloned()
            .collect())
    }

    fn all(&self) -> Result<Vec<R::E>> {
        self.all.clone().ok_or(Error::InfiniteUnits)
    }
}

/// `x^k` for a unit `x` and any integer `k`.
fn pow_signed<R: CommRing>(r: &R, x: &R::E, k: i64) -> R::E {
    if k >= 0 {
        r.pow(x, k as u64)
    } else {
        r.pow(&r.inv(x).expect("unit"), k.unsigned_abs())
    }
}

/// Scalars `λ_s = χ(deg_U s)` for a character given on the canonical
/// generators of the universal group.
fn character_scalars<R: CommRing>(r: &R, degrees: &[GroupElem], chi: &[R::E]) -> Vec<R::E> {
    degrees
        .iter()
        .map(|d| {
            d.iter()
                .zip(chi)
                .fold(r.one(), |acc, (&k, x)| r.mul(&acc, &pow_signed(r, x, k)))
        })
        .collect()
}

/// `Diag(Γ)(R)` through `Hom(U, R^×)`. Over an infinite field only a
/// finite universal group is supported.
pub fn diag_points<R: CommRing>(stage: &Stage<'_, R>, cap: u128) -> Result<Vec<Matrix<R::E>>> {
    let g = stage.grading();
    let u = g.universal_group()?;
    let units = RingUnits::new(stage.ring(), stage.idempotents());
    let mut count: u128 = 1;
    for &d in u.group.torsion() {
        count = count.saturating_mul(units.torsion(d)?.len() as u128);
    }
    if u.group.free_rank() > 0 {
        let all = units.all()?;
        count =
            count.saturating_mul((all.len() as u128).saturating_pow(u.group.free_rank() as u32));
    }
    if count > cap {
        return Err(Error::CapExceeded { needed: count, cap });
    }
    let chars = enumerate_characters(&u.group, &units)?;
    let mut out = Vec::with_capacity(chars.len());
    for chi in chars {
        let lambda = character_scalars(stage.ring(), &u.degrees, &chi);
        let d: Vec<R::E> = (0..stage.dim())
            .map(|i| lambda[g.component_of(i)].clone())
            .collect();
        let phi = stage.diagonal(&d);
        if !stage.is_diag(&phi) {
            return Err(Error::Identity(format!(
                "character {} does not give a diagonal automorphism",
                chi.iter()
                    .map(|x| stage.ring().format(x))
                    .collect::<Vec<_>>()
                    .join(",")
            )));
        }
        out.push(phi);
    }
    out.sort();
    Ok(out)
}

/// `|Diag(Γ)(R)|` by exhaustive search over unit tuples, one per support
/// element, pruned as soon as a product of two assigned components fails.
pub fn diag_count_exhaustive<R: CommRing>(stage: &Stage<'_, R>) -> Result<usize> {
    let r = stage.ring();
    let g = stage.grading();
    let elems = r.elements().ok_or(Error::InfiniteUnits)?;
    let units: Vec<R::E> = elems.into_iter().filter(|x| r.is_unit(x)).collect();
    let m = g.support().len();
    let mut lambda: Vec<R::E> = vec![r.zero(); m];
    let mut count = 0usize;
    fn rec<R: CommRing>(
        stage: &Stage<'_, R>,
        units: &[R::E],
        lambda: &mut Vec<R::E>,
        s: usize,
        count: &mut usize,
    ) {
        let g = stage.grading();
        let m = g.support().len();
        let r = stage.ring();
        let assigned = |lambda: &Vec<R::E>, upto: usize| {
            let d: Vec<R::E> = (0..stage.dim())
                .map(|i| {
                    let c = g.component_of(i);
                    if c < upto {
                        lambda[c].clone()
                    } else {
                        r.zero()
                    }
                })
                .collect();
            stage.diagonal(&d)
        };
        if s == m {
            if stage.is_diag(&assigned(lambda, m)) {
                *count += 1;
            }
            return;
        }
        for u in units {
            lambda[s] = u.clone();
            let phi = assigned(lambda, s + 1);
            let cols = stage.columns(&phi);
            let ok = g.pattern().iter().all(|&(a, b)| {
                let sum = g.group().add(&g.support()[a], &g.support()[b]);
                let c = g.support_index(&sum).unwrap_or(m);
                if a > s || b > s || c > s {
                    return true;
                }
                g.component(a).iter().all(|&i| {
                    g.component(b)
                        .iter()
                        .all(|&j| stage.pair_holds(&cols, i, j))
                })
            });
            if ok {
                rec(stage, units, lambda, s + 1, count);
            }
        }
    }
    rec(stage, &units, &mut lambda, 0, &mut count);
    Ok(count)
}

#[derive(Clone, Debug)]
enum Step<E> {
    Fixed(usize, Vec<E>),
    Free(usize),
    /// `φ(b_k) = c⁻¹·φ(bᵢ)φ(bⱼ)` where `bᵢbⱼ = c·b_k`.
    Forced {
        k: usize,
        i: usize,
        j: usize,
        cinv: E,
    },
}

impl<E> Step<E> {
    fn column(&self) -> usize {
        match self {
            Step::Fixed(k, _) | Step::Free(k) | Step::Forced { k, .. } => *k,
        }
    }
}

struct Plan<E> {
    steps: Vec<Step<E>>,
    /// Pairs that become checkable once step `t` is done.
    checks: Vec<Vec<(usize, usize)>>,
}

fn plan<R: CommRing>(stage: &Stage<'_, R>) -> Plan<R::E> {
    let a = stage.grading().algebra();
    let r = stage.ring();
    let f = a.field();
    let n = stage.dim();
    let mut steps: Vec<Step<R::E>> = Vec::new();
    let mut done = vec![false; n];
    let unit = (0..n).find(|&u| {
        (0..n).all(|j| {
            let mut bj = vec![f.zero(); n];
            bj[j] = f.one();
            a.product(u, j) == &bj && a.product(j, u) == &bj
        })
    });
    if let Some(u) = unit {
        let mut col = vec![r.zero(); n];
        col[u] = r.one();
        steps.push(Step::Fixed(u, col));
        done[u] = true;
    }
    loop {
        // Propagate forced columns.
        let mut progress = true;
        while progress {
            progress = false;
            'outer: for i in 0..n {
                for j in 0..n {
                    if !done[i] || !done[j] {
                        continue;
                    }
                    if let Some(Some((k, c))) = a.monomial_product(i, j) {
                        if !done[k] {
                            let cinv = r.scalar(&f.inv(&c).expect("nonzero"));
                            steps.push(Step::Forced { k, i, j, cinv });
                            done[k] = true;
                            progress = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
        match (0..n).find(|&k| !done[k]) {
            Some(k) => {
                steps.push(Step::Free(k));
                done[k] = true;
            }
            None => break,
        }
    }
    let mut position = vec![0usize; n];
    for (t, s) in steps.iter().enumerate() {
        position[s.column()] = t;
    }
    let mut checks = vec![Vec::new(); steps.len()];
    for i in 0..n {
        for j in 0..n {
            let mut t = position[i].max(position[j]);
            for (k, c) in a.product(i, j).iter().enumerate() {
                if !f.is_zero(c) {
                    t = t.max(position[k]);
                }
            }
            checks[t].push((i, j));
        }
    }
    Plan { steps, checks }
}

/// Number of columns the enumeration has to guess.
pub fn branching_columns<R: CommRing>(stage: &Stage<'_, R>) -> usize {
    plan(stage)
        .steps
        .iter()
        .filter(|s| matches!(s, Step::Free(_)))
        .count()
}

/// `|R|^(n·b)`, the size of the search space of [`enumerate_points`].
pub fn enumeration_cost<R: CommRing>(stage: &Stage<'_, R>) -> Option<u128> {
    let size = stage.ring().size()?;
    let exp = (stage.dim() * branching_columns(stage)) as u32;
    Some(size.checked_pow(exp).unwrap_or(u128::MAX))
}

fn decode<E: Clone>(elems: &[E], mut k: u128, n: usize) -> Vec<E> {
    let q = elems.len() as u128;
    (0..n)
        .map(|_| {
            let d = (k % q) as usize;
            k /= q;
            elems[d].clone()
        })
        .collect()
}

struct Search<'s, 'a, R: CommRing> {
    stage: &'s Stage<'a, R>,
    plan: &'s Plan<R::E>,
    elems: &'s [R::E],
    functor: Functor,
}

impl<R: CommRing> Search<'_, '_, R> {
    fn holds(&self, cols: &[Vec<R::E>], t: usize) -> bool {
        self.plan.checks[t]
            .iter()
            .all(|&(i, j)| self.stage.pair_holds(cols, i, j))
    }

    fn set(&self, cols: &mut [Vec<R::E>], t: usize) {
        let r = self.stage.ring();
        match &self.plan.steps[t] {
            Step::Fixed(k, v) => cols[*k] = v.clone(),
            Step::Forced { k, i, j, cinv } => {
                let p = self.stage.mul_vec(&cols[*i], &cols[*j]);
                cols[*k] = p.iter().map(|x| r.mul(x, cinv)).collect();
            }
            Step::Free(_) => unreachable!("free steps are guessed"),
        }
    }

    fn run(&self, cols: &mut Vec<Vec<R::E>>, t: usize, out: &mut Vec<Matrix<R::E>>) {
        if t == self.plan.steps.len() {
            let n = self.stage.dim();
            let phi: Matrix<R::E> = (0..n)
                .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
                .collect();
            if self.stage.inverse(&phi).is_some() && self.stage.member(self.functor, &phi) {
                out.push(phi);
            }
            return;
        }
        match &self.plan.steps[t] {
            Step::Free(k) => {
                let n = self.stage.dim();
                let total = (self.elems.len() as u128).pow(n as u32);
                for idx in 0..total {
                    cols[*k] = decode(self.elems, idx, n);
                    if self.holds(cols, t) {
                        self.run(cols, t + 1, out);
                    }
                }
            }
            _ => {
                self.set(cols, t);
                if self.holds(cols, t) {
                    self.run(cols, t + 1, out);
                }
            }
        }
    }
}

/// Every point of the chosen functor with values in a finite `R`, sorted.
///
/// Columns are filled in order; a column `b_k` with `bᵢbⱼ = c·b_k` for
/// already known `i, j` is computed rather than guessed, and the unit of
/// `A`, when it is a basis vector, is fixed. The cap bounds `|R|^(n·b)`.
pub fn enumerate_points<R: CommRing>(
    stage: &Stage<'_, R>,
    functor: Functor,
    cap: u128,
) -> Result<Vec<Matrix<R::E>>> {
    let r = stage.ring();
    let cost = enumeration_cost(stage).ok_or(Error::InfiniteUnits)?;
    if cost > cap {
        return Err(Error::CapExceeded { needed: cost, cap });
    }
    let elems = r.elements().ok_or(Error::InfiniteUnits)?;
    let plan = plan(stage);
    let search = Search {
        stage,
        plan: &plan,
        elems: &elems,
        functor,
    };
    let n = stage.dim();
    let mut cols = vec![vec![r.zero(); n]; n];
    let first_free = plan.steps.iter().position(|s| matches!(s, Step::Free(_)));
    let mut out = Vec::new();
    match first_free {
        None => search.run(&mut cols, 0, &mut out),
        Some(p) => {
            for t in 0..p {
                search.set(&mut cols, t);
                if !search.holds(&cols, t) {
                    return Ok(Vec::new());
                }
            }
            let k = plan.steps[p].column();
            let total = (elems.len() as u128).pow(n as u32);
            out = (0..total)
                .into_par_iter()
                .fold(Vec::new, |mut acc, idx| {
                    let mut local = cols.clone();
                    local[k] = decode(&elems, idx, n);
                    if search.holds(&local, p) {
                        search.run(&mut local, p + 1, &mut acc);
                    }
                    acc
                })
                .reduce(Vec::new, |mut a, mut b| {
                    a.append(&mut b);
                    a
                });
        }
    }
    out.sort();
    Ok(out)
}

/// Torus of the basis grading: when every product of basis vectors is a
/// single term, scaling `bᵢ` by `χ(i)` for a character of the group
/// presented by `i + j = k` (for `bᵢbⱼ = c·b_k`) is an automorphism.
fn basis_torus<R: CommRing>(
    stage: &Stage<'_, R>,
    units: &RingUnits<'_, R>,
    rng: &mut ChaCha8Rng,
    pool: &[R::E],
) -> Option<Matrix<R::E>> {
    let a = stage.grading().algebra();
    if !a.is_monomial() {
        return None;
    }
    let n = a.dim();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if let Some(Some((k, _))) = a.monomial_product(i, j) {
                let mut row = vec![0i64; n];
                row[i] += 1;
                row[j] += 1;
                row[k] -= 1;
                relations.push(row);
            }
        }
    }
    let q = group_from_presentation(&Presentation::new(n, relations));
    let chi = random_character(stage.ring(), &q.group, units, rng, pool)?;
    let d = character_scalars(stage.ring(), &q.projection, &chi);
    Some(stage.diagonal(&d))
}

fn random_character<R: CommRing>(
    r: &R,
    group: &FGAbelianGroup,
    units: &RingUnits<'_, R>,
    rng: &mut ChaCha8Rng,
    pool: &[R::E],
) -> Option<Vec<R::E>> {
    let mut chi = Vec::new();
    for &d in group.torsion() {
        let opts = units.torsion(d).ok()?;
        chi.push(opts.choose(rng)?.clone());
    }
    for _ in 0..group.free_rank() {
        chi.push(pool.choose(rng).cloned().unwrap_or_else(|| r.one()));
    }
    Some(chi)
}

/// Units drawn at random, plus `±1`.
fn unit_pool<R: CommRing>(
    r: &R,
    units: &RingUnits<'_, R>,
    rng: &mut ChaCha8Rng,
    k: usize,
) -> Vec<R::E> {
    let mut pool: BTreeSet<R::E> = BTreeSet::new();
    pool.insert(r.one());
    pool.insert(r.neg(&r.one()));
    let known = units.known();
    for _ in 0..k {
        if let Some(x) = known.choose(rng) {
            pool.insert(x.clone());
        }
    }
    let mut tries = 0;
    while pool.len() < k && tries < 50 * k {
        tries += 1;
        let x = r.random(rng);
        if r.is_unit(&x) {
            pool.insert(x);
        }
    }
    pool.into_iter().collect()
}

/// Monomial maps `bⱼ ↦ λⱼ·b_{π(j)}` with `λ` from a small pool.
fn monomial_witnesses<R: CommRing>(stage: &Stage<'_, R>, pool: &[R::E]) -> Vec<Matrix<R::E>> {
    let n = stage.dim();
    let r = stage.ring();
    if n > 4 {
        return Vec::new();
    }
    let small: Vec<R::E> = pool.iter().take(4).cloned().collect();
    let mut out = Vec::new();
    let perms = permutations(n);
    for pi in perms {
        let total = (small.len() as u128).pow(n as u32);
        for idx in 0..total {
            let lambda = decode(&small, idx, n);
            let mut phi = vec![vec![r.zero(); n]; n];
            for j in 0..n {
                phi[pi[j]][j] = lambda[j].clone();
            }
            if stage.is_automorphism(&phi) {
                out.push(phi);
                if out.len() > 64 {
                    return out;
                }
            }
        }
    }
    out
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..n {
            if !cur.contains(&k) {
                cur.push(k);
                rec(n, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, &mut cur, &mut out);
    out
}

/// `I + n·D` for derivations `D` and square-zero `n ∈ R`.
fn unipotent_points<R: CommRing>(stage: &Stage<'_, R>, rng: &mut ChaCha8Rng) -> Vec<Matrix<R::E>> {
    let r = stage.ring();
    let nil = r.nilradical_basis();
    if nil.is_empty() {
        return Vec::new();
    }
    let mut square_zero: BTreeSet<R::E> = BTreeSet::new();
    let mut candidates = nil.clone();
    for x in &nil {
        for y in &nil {
            candidates.push(r.mul(x, y));
        }
    }
    for c in candidates {
        if !r.is_zero(&c) && r.is_zero(&r.mul(&c, &c)) {
            square_zero.insert(c);
        }
    }
    let square_zero: Vec<R::E> = square_zero.into_iter().collect();
    let derivations = stage.grading().algebra().derivations();
    let mut out = Vec::new();
    for d in &derivations {
        for nz in &square_zero {
            let coef = r.scalar(&stage.grading().field().from_i64(rng.gen_range(1..=3)));
            let nz = r.mul(nz, &coef);
            let mut phi = stage.identity();
            for (i, row) in d.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    let t = r.mul(&nz, &r.scalar(c));
                    phi[i][j] = r.add(&phi[i][j], &t);
                }
            }
            out.push(phi);
        }
    }
    out
}

/// Random invertible matrices, which are automorphisms of an algebra with
/// zero multiplication.
fn linear_points<R: CommRing>(
    stage: &Stage<'_, R>,
    rng: &mut ChaCha8Rng,
    k: usize,
) -> Vec<Matrix<R::E>> {
    let r = stage.ring();
    let n = stage.dim();
    let mut out = Vec::new();
    for _ in 0..20 * k {
        if out.len() >= k {
            break;
        }
        let phi: Matrix<R::E> = (0..n)
            .map(|_| (0..n).map(|_| r.random(rng)).collect())
            .collect();
        if stage.inverse(&phi).is_some() {
            out.push(phi);
        }
    }
    out
}

/// `e·φ₁ + (1 − e)·φ₂`.
fn mix<R: CommRing>(
    stage: &Stage<'_, R>,
    e: &R::E,
    a: &Matrix<R::E>,
    b: &Matrix<R::E>,
) -> Matrix<R::E> {
    let r = stage.ring();
    let f = r.sub(&r.one(), e);
    a.iter()
        .zip(b)
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(x, y)| r.add(&r.mul(e, x), &r.mul(&f, y)))
                .collect()
        })
        .collect()
}

/// At least `draws` automorphisms drawn from explicit constructions and
/// their products and blockwise mixtures. Repeats are kept, so a group with
/// few points still yields the requested number of draws.
pub fn sample_points<R: CommRing>(
    stage: &Stage<'_, R>,
    draws: usize,
    seed: u64,
) -> Result<Vec<Matrix<R::E>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = stage.ring();
    let units = RingUnits::new(r, stage.idempotents());
    let pool = unit_pool(r, &units, &mut rng, 8);
    let mut gens: Vec<Matrix<R::E>> = vec![stage.identity()];
    if let Ok(u) = stage.grading().universal_group() {
        for _ in 0..8 {
            if let Some(chi) = random_character(r, &u.group, &units, &mut rng, &pool) {
                let lambda = character_scalars(r, &u.degrees, &chi);
                let g = stage.grading();
                let d: Vec<R::E> = (0..stage.dim())
                    .map(|i| lambda[g.component_of(i)].clone())
                    .collect();
                gens.push(stage.diagonal(&d));
            }
        }
    }
    for _ in 0..8 {
        if let Some(phi) = basis_torus(stage, &units, &mut rng, &pool) {
            gens.push(phi);
        }
    }
    gens.extend(monomial_witnesses(stage, &pool));
    gens.extend(unipotent_points(stage, &mut rng));
    if stage.grading().algebra().is_zero_product() {
        gens.extend(linear_points(stage, &mut rng, 24));
    }
    gens.retain(|phi| stage.is_automorphism(phi));
    if gens.is_empty() {
        return Err(Error::Identity(
            "the identity is not an automorphism".into(),
        ));
    }
    let blocks = stage.idempotents().to_vec();
    let mut out: Vec<Matrix<R::E>> = gens.clone();
    let mut attempts = 0;
    while out.len() < draws && attempts < 50 * draws {
        attempts += 1;
        let a = out.choose(&mut rng).unwrap().clone();
        let b = gens.choose(&mut rng).unwrap().clone();
        let candidate = match rng.gen_range(0..3) {
            0 if blocks.len() > 1 => {
                let e = blocks.choose(&mut rng).unwrap();
                mix(stage, e, &a, &b)
            }
            1 => stage.compose(&b, &a),
            _ => stage.compose(&a, &b),
        };
        if stage.is_automorphism(&candidate) {
            out.push(candidate);
        }
    }
    Ok(out)
}

/// How the points of a battery run were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Enumerated,
    Sampled,
}

/// Agreement counts of the generic tests with the direct ones.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub coverage: Coverage,
    pub points: usize,
    pub cent_agree: usize,
    pub norm_agree: usize,
    pub stab_members: usize,
    pub autgamma_members: usize,
    pub failures: Vec<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cent_agree == self.points && self.norm_agree == self.points
    }
}

/// Compares `cent_generic` with `is_stab` and `norm_generic` with
/// `is_autgamma` on every point of `Aut(A)(R)` when the enumeration fits in
/// `cap`, and on `draws` sampled points otherwise.
pub fn theorem_check<R: CommRing>(
    stage: &Stage<'_, R>,
    cap: u128,
    draws: usize,
    seed: u64,
) -> Result<TheoremReport> {
    let (coverage, points) = match enumerate_points(stage, Functor::AutA, cap) {
        Ok(p) => (Coverage::Enumerated, p),
        Err(Error::CapExceeded { .. }) | Err(Error::InfiniteUnits) => {
            (Coverage::Sampled, sample_points(stage, draws, seed)?)
        }
        Err(e) => return Err(e),
    };
    let mut report = TheoremReport {
        coverage,
        points: points.len(),
        cent_agree: 0,
        norm_agree: 0,
        stab_members: 0,
        autgamma_members: 0,
        failures: Vec::new(),
    };
    for phi in &points {
        let stab = stage.is_stab(phi);
        let cent = stage.cent_generic(phi);
        if stab == cent {
            report.cent_agree += 1;
        } else {
            report.failures.push(format!(
                "cent={cent} stab={stab} at {}",
                stage.format_matrix(phi)
            ));
        }
        let perms = stage.block_permutations(phi);
        let autg = perms.is_ok() && stage.is_automorphism(phi);
        let norm = stage.norm_generic(phi)?;
        if autg == norm.is_some() {
            report.norm_agree += 1;
        } else {
            report.failures.push(format!(
                "norm={} autgamma={autg} at {}",
                norm.is_some(),
                stage.format_matrix(phi)
            ));
        }
        if let (Ok(p), Some(s)) = (&perms, &norm) {
            if p != s {
                report.failures.push(format!(
                    "block permutations {p:?} differ from generic shifts {s:?}"
                ));
            }
        }
        report.stab_members += stab as usize;
        report.autgamma_members += autg as usize;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comrings::{Tabled, TestRing};
    use crate::fixtures;
    use crate::scalars::Field;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn swap_of_cyc3() {
        let g = fixtures::cyc3(&f(3)).unwrap();
        let r = TestRing::base_field(g.field());
        let st = Stage::new(&g, &r).unwrap();
        let one = r.one();
        let zero = r.zero();
        let swap = vec![vec![zero.clone(), one.clone()], vec![one, zero]];
        assert!(st.is_automorphism(&swap));
        assert!(st.is_autgamma(&swap));
        assert!(!st.is_stab(&swap));
        assert!(!st.cent_generic(&swap));
        assert_eq!(st.norm_generic(&swap).unwrap(), Some(vec![vec![1, 0]]));
        assert_eq!(st.block_permutations(&swap).unwrap(), vec![vec![1, 0]]);
    }

    #[test]
    fn cyc3_point_counts() {
        let g = fixtures::cyc3(&f(3)).unwrap();
        let base = Tabled::new(&TestRing::base_field(g.field())).unwrap();
        let st = Stage::new(&g, &base).unwrap();
        assert_eq!(
            enumerate_points(&st, Functor::AutA, DEFAULT_CAP)
                .unwrap()
                .len(),
            2
        );
        assert_eq!(diag_points(&st, DEFAULT_CAP).unwrap().len(), 1);
        let dual = Tabled::new(&TestRing::dual_numbers(g.field(), 2).unwrap()).unwrap();
        let st = Stage::new(&g, &dual).unwrap();
        assert_eq!(
            enumerate_points(&st, Functor::AutA, DEFAULT_CAP)
                .unwrap()
                .len(),
            6
        );
        assert_eq!(diag_points(&st, DEFAULT_CAP).unwrap().len(), 3);
        assert_eq!(diag_count_exhaustive(&st).unwrap(), 3);
        assert_eq!(
            enumerate_points(&st, Functor::Diag, DEFAULT_CAP)
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn dgroup_certificate_for_zero6() {
        let q = Field::rationals();
        let g = fixtures::zero6(&q).unwrap();
        let r = TestRing::base_field(&q);
        let st = Stage::new(&g, &r).unwrap();
        let swap = vec![vec![r.zero(), r.one()], vec![r.one(), r.zero()]];
        assert!(st.is_autgamma(&swap));
        assert!(st.norm_generic(&swap).unwrap().is_some());
        match st.dgroup_norm(&swap).unwrap() {
            DGroupVerdict::NonMember {
                relation, product, ..
            } => {
                assert_eq!(relation, vec![3, 0]);
                assert_eq!(product, "g^3");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            st.dgroup_norm(&st.identity()).unwrap(),
            DGroupVerdict::Member
        );
    }

    #[test]
    fn branching_columns_of_fixtures() {
        let f3 = f(3);
        let r = TestRing::base_field(&f3);
        let cases = [
            (fixtures::cyc3(&f3).unwrap(), 1),
            (fixtures::cubic(&f3).unwrap(), 1),
            (fixtures::zero6(&f3).unwrap(), 2),
            (fixtures::triv(&f3).unwrap(), 1),
        ];
        for (g, b) in cases {
            let st = Stage::new(&g, &r).unwrap();
            assert_eq!(branching_columns(&st), b);
        }
    }

    #[test]
    fn inverse_over_product_ring() {
        let g = fixtures::zero6(&f(5)).unwrap();
        let base = TestRing::base_field(g.field());
        let r = TestRing::product(&base, &base).unwrap();
        let st = Stage::new(&g, &r).unwrap();
        let e = r.idempotents().unwrap();
        // invertible on each factor separately, but no entry is a unit
        let phi = vec![
            vec![e[0].clone(), e[1].clone()],
            vec![e[1].clone(), e[0].clone()],
        ];
        let inv = st.inverse(&phi).unwrap();
        assert_eq!(st.compose(&phi, &inv), st.identity());
        assert!(st.is_autgamma(&phi));
        let perms = st.block_permutations(&phi).unwrap();
        assert_eq!(perms.len(), 2);
        assert_ne!(perms[0], perms[1]);
        let singular = vec![
            vec![e[0].clone(), e[0].clone()],
            vec![e[1].clone(), e[1].clone()],
        ];
        assert!(st.inverse(&singular).is_none());
    }

    #[test]
    fn rational_torsion_pool() {
        let q = Field::rationals();
        let g = fixtures::cubic(&q).unwrap();
        let r = TestRing::base_field(&q);
        let st = Stage::new(&g, &r).unwrap();
        assert_eq!(diag_points(&st, DEFAULT_CAP).unwrap().len(), 1);
        let r3 = TestRing::group_algebra_finite(&q, &FGAbelianGroup::cyclic(3)).unwrap();
        let st = Stage::new(&g, &r3).unwrap();
        // cube roots of unity in Q x Q(zeta_3)
        assert_eq!(diag_points(&st, DEFAULT_CAP).unwrap().len(), 3);
        let gz = fixtures::zero6(&q).unwrap();
        let st = Stage::new(&gz, &r).unwrap();
        assert_eq!(diag_points(&st, DEFAULT_CAP), Err(Error::InfiniteUnits));
    }

    #[test]
    fn sampled_points_are_automorphisms() {
        let q = Field::rationals();
        let g = fixtures::zero6(&q).unwrap();
        let r = TestRing::dual_numbers(&q, 2).unwrap();
        let st = Stage::new(&g, &r).unwrap();
        let pts = sample_points(&st, 100, 1).unwrap();
        assert!(pts.len() >= 100);
        assert!(pts.iter().all(|p| st.is_automorphism(p)));
        assert!(pts.iter().any(|p| !st.is_autgamma(p)));
    }
}
