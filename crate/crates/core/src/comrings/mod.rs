//! Finite-dimensional commutative unital test rings given by structure
//! constants, their idempotent decomposition and units, and sparse
//! group-algebra arithmetic over them.

mod decompose;
mod groupalg;
mod tabled;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::abgroups::FGAbelianGroup;
use crate::linalg::{self, Mat};
use crate::scalars::{poly, split_top_level, Elem, Field};
use crate::{Error, Result};

pub use groupalg::{GAElem, GroupAlgebra};
pub use tabled::{Tabled, UnitGroup, TABLE_LIMIT};

/// Coordinates of a ring element in the ring's basis.
pub type RingElem = Vec<Elem>;

/// Default bound on `|R|` for full unit enumeration.
pub const UNIT_CAP: u128 = 1_000_000;

/// Arithmetic shared by the structure-constant ring and its table-driven
/// finite counterpart. Points, characters and group-algebra elements are
/// written against this trait.
pub trait CommRing: Send + Sync {
    type E: Clone + PartialEq + Eq + Ord + std::hash::Hash + fmt::Debug + Send + Sync;

    fn field(&self) -> &Field;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_unit(&self, a: &Self::E) -> bool;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    /// Image of a base-field scalar.
    fn scalar(&self, c: &Elem) -> Self::E;
    /// Primitive idempotents in canonical order.
    fn idempotents(&self) -> Result<Vec<Self::E>>;
    fn format(&self, a: &Self::E) -> String;
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::E;
    /// All elements, when the ring is finite and small enough to list.
    fn elements(&self) -> Option<Vec<Self::E>>;
    /// `|R|`, or `None` over an infinite field.
    fn size(&self) -> Option<u128>;
    /// The basis of `R` over its field.
    fn basis_elements(&self) -> Vec<Self::E>;
    /// A basis of the nilradical.
    fn nilradical_basis(&self) -> Vec<Self::E>;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::E) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::E) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::E, mut e: u64) -> Self::E {
        let mut acc = self.one();
        let mut sq = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// Whether `a·e` is a unit of the block ring `Re` (`e` idempotent).
    fn is_unit_in_block(&self, a: &Self::E, e: &Self::E) -> bool {
        let shifted = self.add(&self.mul(a, e), &self.sub(&self.one(), e));
        self.is_unit(&shifted)
    }

    /// Inverse of `a·e` inside `Re`.
    fn inv_in_block(&self, a: &Self::E, e: &Self::E) -> Option<Self::E> {
        let shifted = self.add(&self.mul(a, e), &self.sub(&self.one(), e));
        self.inv(&shifted).map(|x| self.mul(&x, e))
    }
}

/// Outcome of [`TestRing::classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitNil {
    pub unit: bool,
    pub nilpotent: bool,
}

#[derive(Clone)]
pub struct TestRing(Arc<RingData>);

struct RingData {
    name: String,
    field: Field,
    dim: usize,
    table: Vec<Vec<RingElem>>,
    one: RingElem,
    hint: Option<Vec<RingElem>>,
    idempotents: OnceLock<Result<Vec<RingElem>>>,
    nilradical: OnceLock<Vec<RingElem>>,
}

impl TestRing {
    /// A ring from its multiplication table `table[i][j] = bᵢ·bⱼ` and unit
    /// vector; commutativity, associativity and the unit law are checked.
    pub fn from_table(
        name: &str,
        field: &Field,
        table: Vec<Vec<RingElem>>,
        one: RingElem,
    ) -> Result<TestRing> {
        let ring = TestRing::unchecked(name, field, table, one, None)?;
        ring.check_axioms()?;
        Ok(ring)
    }

    fn unchecked(
        name: &str,
        field: &Field,
        table: Vec<Vec<RingElem>>,
        one: RingElem,
        hint: Option<Vec<RingElem>>,
    ) -> Result<TestRing> {
        let n = one.len();
        if n == 0 {
            return Err(Error::Dimension(
                "a test ring needs positive dimension".into(),
            ));
        }
        if table.len() != n
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|v| v.len() != n))
        {
            return Err(Error::Dimension(format!(
                "multiplication table must be {n}x{n}x{n}"
            )));
        }
        Ok(TestRing(Arc::new(RingData {
            name: name.to_string(),
            field: field.clone(),
            dim: n,
            table,
            one,
            hint,
            idempotents: OnceLock::new(),
            nilradical: OnceLock::new(),
        })))
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.dim();
        let basis: Vec<RingElem> = (0..n).map(|i| self.basis(i)).collect();
        for i in 0..n {
            if self.mul(&self.0.one, &basis[i]) != basis[i] {
                return Err(Error::RingAxiom(format!("1*b{i} != b{i}")));
            }
            for j in 0..n {
                if self.0.table[i][j] != self.0.table[j][i] {
                    return Err(Error::RingAxiom(format!("b{i}*b{j} != b{j}*b{i}")));
                }
                for k in 0..n {
                    let l = self.mul(&self.0.table[i][j], &basis[k]);
                    let r = self.mul(&basis[i], &self.0.table[j][k]);
                    if l != r {
                        return Err(Error::RingAxiom(format!(
                            "(b{i}*b{j})*b{k} != b{i}*(b{j}*b{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base_field(f: &Field) -> TestRing {
        TestRing::unchecked(f.name(), f, vec![vec![vec![f.one()]]], vec![f.one()], None)
            .expect("one-dimensional ring")
    }

    /// `F[ε]/(εⁿ)` with basis `1, ε, …, εⁿ⁻¹`.
    pub fn dual_numbers(f: &Field, n: usize) -> Result<TestRing> {
        let mut modulus = vec![f.zero(); n + 1];
        modulus[n] = f.one();
        let r = TestRing::truncated_poly(f, &modulus)?;
        Ok(r.renamed(&format!("{}[e]/(e^{n})", f.name())))
    }

    /// `F[t]/(f)` for a monic `f`, basis `1, t, …, t^(deg f − 1)`.
    pub fn truncated_poly(f: &Field, modulus: &[Elem]) -> Result<TestRing> {
        let mut m = modulus.to_vec();
        poly::trim(f, &mut m);
        let d = poly::degree(&m).unwrap_or(0);
        if d == 0 {
            return Err(Error::ModulusDegree(0));
        }
        if !f.is_one(m.last().unwrap()) {
            return Err(Error::NonMonicModulus);
        }
        let table = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let r =
                            poly::rem(f, &poly::monomial(f, f.one(), i + j), &m).expect("monic");
                        let mut v = r;
                        v.resize(d, f.zero());
                        v
                    })
                    .collect()
            })
            .collect();
        let mut one = vec![f.zero(); d];
        one[0] = f.one();
        let name = format!("{}[t]/({})", f.name(), poly::format(f, &m, "t"));
        TestRing::unchecked(&name, f, table, one, None)
    }

    /// `R₁ × R₂`; the primitive idempotents are recorded as those of the
    /// factors.
    pub fn product(a: &TestRing, b: &TestRing) -> Result<TestRing> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch(
                a.field().name().into(),
                b.field().name().into(),
            ));
        }
        let f = a.field();
        let (n, m) = (a.dim(), b.dim());
        let embed_a = |x: &RingElem| {
            let mut v = x.clone();
            v.extend(std::iter::repeat_n(f.zero(), m));
            v
        };
        let embed_b = |y: &RingElem| {
            let mut v = vec![f.zero(); n];
            v.extend(y.iter().cloned());
            v
        };
        let mut table = vec![vec![vec![f.zero(); n + m]; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = embed_a(&a.0.table[i][j]);
            }
        }
        for i in 0..m {
            for j in 0..m {
                table[n + i][n + j] = embed_b(&b.0.table[i][j]);
            }
        }
        let mut one = embed_a(&a.one());
        for (k, c) in b.one().into_iter().enumerate() {
            one[n + k] = c;
        }
        let mut hint: Vec<RingElem> = a.idempotents()?.iter().map(embed_a).collect();
        hint.extend(b.idempotents()?.iter().map(embed_b));
        hint.sort();
        let name = format!("{} x {}", a.name(), b.name());
        TestRing::unchecked(&name, f, table, one, Some(hint))
    }

    /// `F[G]` for a finite abelian `G`, basis the group elements in
    /// canonical order.
    pub fn group_algebra_finite(f: &Field, g: &FGAbelianGroup) -> Result<TestRing> {
        let elems = g
            .elements()
            .ok_or_else(|| Error::Precondition(format!("{g} is infinite")))?;
        let n = elems.len();
        let index = |x: &[i64]| elems.iter().position(|e| e == x).expect("closed");
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![f.zero(); n];
                        v[index(&g.add(&elems[i], &elems[j]))] = f.one();
                        v
                    })
                    .collect()
            })
            .collect();
        let mut one = vec![f.zero(); n];
        one[index(&g.zero())] = f.one();
        TestRing::unchecked(&format!("{}[{g}]", f.name()), f, table, one, None)
    }

    /// The same ring in the basis `b'ᵢ = Σ_k p[i][k]·b_k`.
    pub fn change_basis(&self, p: &Mat) -> Result<TestRing> {
        let f = self.field();
        let pt = linalg::transpose(p);
        let pt_inv = linalg::inverse(f, &pt)
            .ok_or_else(|| Error::Dimension("change of basis is singular".into()))?;
        let to_new = |v: &RingElem| linalg::mat_vec(f, &pt_inv, v);
        let n = self.dim();
        let table = (0..n)
            .map(|i| (0..n).map(|j| to_new(&self.mul(&p[i], &p[j]))).collect())
            .collect();
        let ring = TestRing::unchecked(&self.0.name, f, table, to_new(&self.one()), None)?;
        ring.check_axioms()?;
        Ok(ring)
    }

    pub fn renamed(&self, name: &str) -> TestRing {
        let d = &self.0;
        TestRing(Arc::new(RingData {
            name: name.to_string(),
            field: d.field.clone(),
            dim: d.dim,
            table: d.table.clone(),
            one: d.one.clone(),
            hint: d.hint.clone(),
            idempotents: OnceLock::new(),
            nilradical: OnceLock::new(),
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn table(&self) -> &[Vec<RingElem>] {
        &self.0.table
    }

    pub fn basis(&self, i: usize) -> RingElem {
        let f = self.field();
        let mut v = vec![f.zero(); self.dim()];
        v[i] = f.one();
        v
    }

    pub fn zero(&self) -> RingElem {
        vec![self.field().zero(); self.dim()]
    }

    pub fn one(&self) -> RingElem {
        self.0.one.clone()
    }

    pub fn from_scalar(&self, c: &Elem) -> RingElem {
        self.scale(c, &self.0.one)
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let f = self.field();
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        let f = self.field();
        a.iter().map(|x| f.neg(x)).collect()
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: &Elem, a: &RingElem) -> RingElem {
        let f = self.field();
        a.iter().map(|x| f.mul(c, x)).collect()
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let f = self.field();
        let n = self.dim();
        let mut out = self.zero();
        for i in 0..n {
            if f.is_zero(&a[i]) {
                continue;
            }
            for j in 0..n {
                if f.is_zero(&b[j]) {
                    continue;
                }
                let c = f.mul(&a[i], &b[j]);
                for (k, t) in self.0.table[i][j].iter().enumerate() {
                    if !f.is_zero(t) {
                        out[k] = f.add(&out[k], &f.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &RingElem, mut e: u64) -> RingElem {
        let mut acc = self.one();
        let mut sq = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    pub fn is_zero(&self, a: &RingElem) -> bool {
        let f = self.field();
        a.iter().all(|x| f.is_zero(x))
    }

    /// Matrix of `y ↦ a·y`; column `j` holds `a·bⱼ`.
    pub fn mul_matrix(&self, a: &RingElem) -> Mat {
        let cols: Vec<RingElem> = (0..self.dim())
            .map(|j| self.mul(a, &self.basis(j)))
            .collect();
        linalg::transpose(&cols)
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        linalg::rank(self.field(), &self.mul_matrix(a)) == self.dim()
    }

    pub fn inv(&self, a: &RingElem) -> Option<RingElem> {
        let x = linalg::solve(self.field(), &self.mul_matrix(a), &self.0.one)?;
        (self.mul(a, &x) == self.0.one).then_some(x)
    }

    pub fn is_nilpotent(&self, a: &RingElem) -> bool {
        self.is_zero(&self.pow(a, self.dim() as u64))
    }

    pub fn classify(&self, a: &RingElem) -> UnitNil {
        UnitNil {
            unit: self.is_unit(a),
            nilpotent: self.is_nilpotent(a),
        }
    }

    /// `|R|` for a finite base field.
    pub fn cardinality(&self) -> Option<u128> {
        let q = self.field().cardinality()? as u128;
        q.checked_pow(self.dim() as u32)
    }

    /// Element with canonical index `k` (base-`q` digits of `k`, low
    /// coordinate first).
    pub fn element_at(&self, mut k: u128) -> RingElem {
        let q = self.field().cardinality().expect("finite field") as u128;
        (0..self.dim())
            .map(|_| {
                let d = (k % q) as u32;
                k /= q;
                Elem::Fin(d)
            })
            .collect()
    }

    pub fn index_of(&self, a: &RingElem) -> u128 {
        let q = self.field().cardinality().expect("finite field") as u128;
        a.iter().rev().fold(0u128, |acc, x| match x {
            Elem::Fin(d) => acc * q + *d as u128,
            _ => panic!("finite coordinates expected"),
        })
    }

    /// All elements in canonical order, for finite rings up to `cap`.
    pub fn all_elements(&self, cap: u128) -> Result<Vec<RingElem>> {
        let size = self.cardinality().ok_or(Error::InfiniteUnits)?;
        if size > cap {
            return Err(Error::CapExceeded { needed: size, cap });
        }
        Ok((0..size).map(|k| self.element_at(k)).collect())
    }

    /// Canonical text: a field literal for one-dimensional rings, otherwise
    /// the coordinate vector `[c0,c1,...]`.
    pub fn format(&self, a: &RingElem) -> String {
        let f = self.field();
        if self.dim() == 1 {
            return f.format(&a[0]);
        }
        let parts: Vec<String> = a.iter().map(|x| f.format(x)).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses a coordinate vector, or a field literal read as a multiple
    /// of the unit.
    pub fn parse(&self, text: &str) -> Result<RingElem> {
        let t = text.trim();
        let f = self.field();
        if self.dim() > 1 {
            if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let parts = split_top_level(inner);
                if parts.len() != self.dim() {
                    return Err(Error::Literal {
                        text: t.to_string(),
                        field: self.name().to_string(),
                    });
                }
                return parts.iter().map(|p| f.parse(p)).collect();
            }
        }
        Ok(self.from_scalar(&f.parse(t)?))
    }

    /// Basis of the nilradical.
    pub fn nilradical(&self) -> &[RingElem] {
        self.0
            .nilradical
            .get_or_init(|| decompose::nilradical(self))
    }

    /// Primitive orthogonal idempotents summing to 1, sorted by coordinates.
    pub fn idempotents(&self) -> Result<Vec<RingElem>> {
        if let Some(h) = &self.0.hint {
            return Ok(h.clone());
        }
        self.0
            .idempotents
            .get_or_init(|| decompose::primitive_idempotents(self))
            .clone()
    }

    pub fn is_connected(&self) -> Result<bool> {
        Ok(self.idempotents()?.len() == 1)
    }

    /// The unit group by exhaustive enumeration.
    pub fn enumerate_units(&self, cap: u128) -> Result<UnitGroup<RingElem>> {
        let elems = self.all_elements(cap)?;
        let units: Vec<RingElem> = match Tabled::new(self) {
            Ok(t) => t.unit_indices().map(|i| t.elem(i).clone()).collect(),
            Err(_) => elems.into_iter().filter(|x| self.is_unit(x)).collect(),
        };
        Ok(UnitGroup::from_elements(self, units))
    }
}

impl CommRing for TestRing {
    type E = RingElem;

    fn field(&self) -> &Field {
        TestRing::field(self)
    }
    fn zero(&self) -> RingElem {
        TestRing::zero(self)
    }
    fn one(&self) -> RingElem {
        TestRing::one(self)
    }
    fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        TestRing::add(self, a, b)
    }
    fn neg(&self, a: &RingElem) -> RingElem {
        TestRing::neg(self, a)
    }
    fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        TestRing::mul(self, a, b)
    }
    fn is_unit(&self, a: &RingElem) -> bool {
        TestRing::is_unit(self, a)
    }
    fn inv(&self, a: &RingElem) -> Option<RingElem> {
        TestRing::inv(self, a)
    }
    fn scalar(&self, c: &Elem) -> RingElem {
        self.from_scalar(c)
    }
    fn idempotents(&self) -> Result<Vec<RingElem>> {
        TestRing::idempotents(self)
    }
    fn format(&self, a: &RingElem) -> String {
        TestRing::format(self, a)
    }
    fn is_zero(&self, a: &RingElem) -> bool {
        TestRing::is_zero(self, a)
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> RingElem {
        let f = self.field();
        match f.cardinality() {
            Some(q) => (0..self.dim())
                .map(|_| Elem::Fin(rng.gen_range(0..q as u32)))
                .collect(),
            None => (0..self.dim())
                .map(|_| f.from_i64(rng.gen_range(-3..=3)))
                .collect(),
        }
    }
    fn elements(&self) -> Option<Vec<RingElem>> {
        self.all_elements(UNIT_CAP).ok()
    }
    fn size(&self) -> Option<u128> {
        self.cardinality()
    }
    fn basis_elements(&self) -> Vec<RingElem> {
        (0..self.dim()).map(|i| self.basis(i)).collect()
    }
    fn nilradical_basis(&self) -> Vec<RingElem> {
        self.nilradical().to_vec()
    }
}

impl PartialEq for TestRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.field() == other.field()
                && self.0.table == other.0.table
                && self.0.one == other.0.one)
    }
}

impl fmt::Debug for TestRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TestRing({}, dim {})", self.name(), self.dim())
    }
}

impl fmt::Display for TestRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn dual_numbers_units_and_nilpotents() {
        let r = TestRing::dual_numbers(&f3(), 2).unwrap();
        let one_plus_eps = r.parse("[1,1]").unwrap();
        assert_eq!(
            r.classify(&one_plus_eps),
            UnitNil {
                unit: true,
                nilpotent: false
            }
        );
        assert_eq!(r.inv(&one_plus_eps).unwrap(), r.parse("[1,2]").unwrap());
        let eps = r.basis(1);
        assert_eq!(
            r.classify(&eps),
            UnitNil {
                unit: false,
                nilpotent: true
            }
        );
        assert_eq!(r.enumerate_units(UNIT_CAP).unwrap().order(), 6);
    }

    #[test]
    fn product_idempotent_is_neither() {
        let f = f3();
        let b = TestRing::base_field(&f);
        let r = TestRing::product(&b, &b).unwrap();
        let e = r.parse("[1,0]").unwrap();
        assert_eq!(
            r.classify(&e),
            UnitNil {
                unit: false,
                nilpotent: false
            }
        );
        assert_eq!(r.idempotents().unwrap().len(), 2);
        assert_eq!(r.enumerate_units(UNIT_CAP).unwrap().order(), 4);
    }

    #[test]
    fn rejects_non_associative_table() {
        let f = f3();
        // b0 is declared the unit but b0*b1 = 0.
        let table = vec![
            vec![vec![f.one(), f.zero()], vec![f.zero(), f.zero()]],
            vec![vec![f.zero(), f.zero()], vec![f.zero(), f.one()]],
        ];
        assert!(TestRing::from_table("bad", &f, table, vec![f.one(), f.zero()]).is_err());
    }

    #[test]
    fn group_algebra_dimension_and_literals() {
        let q = Field::rationals();
        let r = TestRing::group_algebra_finite(&q, &FGAbelianGroup::cyclic(6)).unwrap();
        assert_eq!(r.dim(), 6);
        assert_eq!(r.parse("2").unwrap(), r.scale(&q.from_i64(2), &r.one()));
        assert_eq!(r.format(&r.basis(1)), "[0,1,0,0,0,0]");
    }

    #[test]
    fn change_of_basis_keeps_structure() {
        let f = Field::prime(5).unwrap();
        let r = TestRing::dual_numbers(&f, 2).unwrap();
        let p = vec![vec![f.one(), f.one()], vec![f.zero(), f.from_i64(2)]];
        let s = r.change_basis(&p).unwrap();
        assert_eq!(s.enumerate_units(UNIT_CAP).unwrap().order(), 20);
    }
}
