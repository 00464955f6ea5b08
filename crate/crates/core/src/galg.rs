//! Finite-dimensional algebras given by structure constants, and gradings
//! presented by degree labels on a homogeneous basis.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::ToPrimitive;

use crate::abgroups::{group_from_presentation, FGAbelianGroup, GroupElem, Presentation};
use crate::comrings::{GroupAlgebra, TestRing};
use crate::scalars::{Elem, Field};
use crate::{Error, Result};

/// A vector of coordinates in the algebra basis.
pub type Vector = Vec<Elem>;

/// No associativity, commutativity or unit is assumed.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    names: Vec<String>,
    table: Vec<Vec<Vector>>,
}

impl Algebra {
    /// `table[i][j]` is the product `bᵢ·bⱼ`.
    pub fn new(field: &Field, names: Vec<String>, table: Vec<Vec<Vector>>) -> Result<Algebra> {
        let n = names.len();
        if table.len() != n
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|v| v.len() != n))
        {
            return Err(Error::Dimension(format!(
                "structure constants of a {n}-dimensional algebra must be {n}x{n}x{n}"
            )));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::Dimension("basis names must be distinct".into()));
        }
        Ok(Algebra {
            field: field.clone(),
            names,
            table,
        })
    }

    /// An algebra with every product zero.
    pub fn zero_product(field: &Field, names: Vec<String>) -> Algebra {
        let n = names.len();
        let table = vec![vec![vec![field.zero(); n]; n]; n];
        Algebra::new(field, names, table).expect("consistent shape")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn table(&self) -> &[Vec<Vector>] {
        &self.table
    }

    pub fn mul(&self, x: &[Elem], y: &[Elem]) -> Vector {
        let f = &self.field;
        let n = self.dim();
        let mut out = vec![f.zero(); n];
        for i in 0..n {
            if f.is_zero(&x[i]) {
                continue;
            }
            for j in 0..n {
                if f.is_zero(&y[j]) {
                    continue;
                }
                let c = f.mul(&x[i], &y[j]);
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !f.is_zero(t) {
                        out[k] = f.add(&out[k], &f.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero_product(&self) -> bool {
        self.table
            .iter()
            .flatten()
            .all(|v| v.iter().all(|c| self.field.is_zero(c)))
    }

    /// `bᵢ·bⱼ` as `(k, c)` when it is a single scaled basis vector (or zero,
    /// giving `None` inside `Some`); `None` if it has two or more terms.
    pub fn monomial_product(&self, i: usize, j: usize) -> Option<Option<(usize, Elem)>> {
        let nz: Vec<(usize, &Elem)> = self.table[i][j]
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .collect();
        match nz.len() {
            0 => Some(None),
            1 => Some(Some((nz[0].0, nz[0].1.clone()))),
            _ => None,
        }
    }

    /// Whether every product of basis vectors is a scalar multiple of one
    /// basis vector.
    pub fn is_monomial(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.monomial_product(i, j).is_some()))
    }

    /// The same structure constants read in a field containing this one.
    pub fn extend_scalars(&self, k: &Field) -> Result<Algebra> {
        let table = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.iter()
                            .map(|c| {
                                k.embed(&self.field, c).ok_or_else(|| {
                                    Error::FieldMismatch(self.field.name().into(), k.name().into())
                                })
                            })
                            .collect::<Result<Vector>>()
                    })
                    .collect::<Result<Vec<Vector>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(k, self.names.clone(), table)
    }

    /// Reduction of rational structure constants into `k`; fails when a
    /// denominator vanishes in `k`.
    pub fn reduce(&self, k: &Field) -> Result<Algebra> {
        let table = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.iter()
                            .map(|c| match c {
                                Elem::Rat(r) => k.from_rational(r),
                                _ => Err(Error::FieldMismatch(
                                    self.field.name().into(),
                                    k.name().into(),
                                )),
                            })
                            .collect::<Result<Vector>>()
                    })
                    .collect::<Result<Vec<Vector>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(k, self.names.clone(), table)
    }

    /// A basis of the derivations `D(xy) = D(x)y + xD(y)`, each as a matrix
    /// whose column `j` is `D(bⱼ)`.
    pub fn derivations(&self) -> Vec<Vec<Vector>> {
        let f = &self.field;
        let n = self.dim();
        // Unknown D[k][j] sits at position k*n + j.
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for out in 0..n {
                    let mut row = vec![f.zero(); n * n];
                    // D(bᵢbⱼ)_out = Σ_k c_ij^k D[out][k]
                    for (k, c) in self.table[i][j].iter().enumerate() {
                        if !f.is_zero(c) {
                            row[out * n + k] = f.add(&row[out * n + k], c);
                        }
                    }
                    // − (D(bᵢ)bⱼ)_out = − Σ_k D[k][i] c_kj^out
                    for k in 0..n {
                        let c = &self.table[k][j][out];
                        if !f.is_zero(c) {
                            row[k * n + i] = f.sub(&row[k * n + i], c);
                        }
                        let c = &self.table[i][k][out];
                        if !f.is_zero(c) {
                            row[k * n + j] = f.sub(&row[k * n + j], c);
                        }
                    }
                    if row.iter().any(|x| !f.is_zero(x)) {
                        rows.push(row);
                    }
                }
            }
        }
        crate::linalg::nullspace(f, &rows, n * n)
            .into_iter()
            .map(|v| {
                (0..n)
                    .map(|k| (0..n).map(|j| v[k * n + j].clone()).collect())
                    .collect()
            })
            .collect()
    }

    pub fn format_vector(&self, v: &[Elem]) -> String {
        let f = &self.field;
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(k, c)| {
                if f.is_one(c) {
                    self.names[k].clone()
                } else {
                    format!("{} {}", f.format(c), self.names[k])
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {} over {})", self.dim(), self.field)
    }
}

/// A grading `A = ⊕ A_g` given by a degree for each basis vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Grading {
    algebra: Algebra,
    group: FGAbelianGroup,
    labels: Vec<GroupElem>,
    support: Vec<GroupElem>,
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    pattern: BTreeSet<(usize, usize)>,
}

/// Checks the labels and the grading axiom directly on structure constants.
pub fn build_grading(
    algebra: &Algebra,
    group: &FGAbelianGroup,
    labels: Vec<GroupElem>,
) -> Result<Grading> {
    let n = algebra.dim();
    if labels.len() != n {
        return Err(Error::Dimension(format!(
            "{} degree labels for a {n}-dimensional algebra",
            labels.len()
        )));
    }
    for l in &labels {
        group.check(l)?;
    }
    let f = algebra.field();
    for i in 0..n {
        for j in 0..n {
            let expected = group.add(&labels[i], &labels[j]);
            for (k, c) in algebra.product(i, j).iter().enumerate() {
                if !f.is_zero(c) && labels[k] != expected {
                    return Err(Error::GradingAxiom {
                        left: algebra.name(i).into(),
                        right: algebra.name(j).into(),
                        offending: algebra.name(k).into(),
                        expected: group.format_elem(&expected),
                    });
                }
            }
        }
    }
    let support: Vec<GroupElem> = labels
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let component_of: Vec<usize> = labels
        .iter()
        .map(|l| support.iter().position(|s| s == l).unwrap())
        .collect();
    let mut components = vec![Vec::new(); support.len()];
    for (i, &c) in component_of.iter().enumerate() {
        components[c].push(i);
    }
    let mut pattern = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if algebra.product(i, j).iter().any(|c| !f.is_zero(c)) {
                pattern.insert((component_of[i], component_of[j]));
            }
        }
    }
    Ok(Grading {
        algebra: algebra.clone(),
        group: group.clone(),
        labels,
        support,
        components,
        component_of,
        pattern,
    })
}

/// Checks that `ψ: xᵢ ↦ xᵢ ⊗ deg(i)` is multiplicative on `A ⊗ FG`.
pub fn verify_grading_generic(
    algebra: &Algebra,
    group: &FGAbelianGroup,
    labels: &[GroupElem],
) -> bool {
    let n = algebra.dim();
    if labels.len() != n || labels.iter().any(|l| group.check(l).is_err()) {
        return false;
    }
    let base = TestRing::base_field(algebra.field());
    let ga = GroupAlgebra::new(&base, group);
    let psi: Vec<_> = labels.iter().map(|l| ga.monomial(base.one(), l)).collect();
    for i in 0..n {
        for j in 0..n {
            let both = ga.mul(&psi[i], &psi[j]);
            for (k, c) in algebra.product(i, j).iter().enumerate() {
                let c = base.from_scalar(c);
                // coefficient of x_k in ψ(xᵢxⱼ) versus in ψ(xᵢ)ψ(xⱼ)
                let lhs = ga.scale(&c, &psi[k]);
                let rhs = ga.scale(&c, &both);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// The universal group of a grading and its comparison maps.
#[derive(Clone, Debug)]
pub struct UniversalGroup {
    pub group: FGAbelianGroup,
    /// Degree in `U` of each support element (support order).
    pub degrees: Vec<GroupElem>,
    /// Image in `G` of each canonical generator of `U`.
    pub fold: Vec<GroupElem>,
    /// The same algebra graded by `U`.
    pub grading: Grading,
}

impl UniversalGroup {
    /// Applies the homomorphism `U → G`.
    pub fn fold_elem(&self, g: &Grading, u: &[i64]) -> GroupElem {
        g.group().combine(u, &self.fold)
    }
}

impl Grading {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn labels(&self) -> &[GroupElem] {
        &self.labels
    }

    /// The support in canonical (sorted) order.
    pub fn support(&self) -> &[GroupElem] {
        &self.support
    }

    /// Basis indices of the component of the `s`-th support element.
    pub fn component(&self, s: usize) -> &[usize] {
        &self.components[s]
    }

    /// Support index of the component holding basis vector `i`.
    pub fn component_of(&self, i: usize) -> usize {
        self.component_of[i]
    }

    pub fn support_index(&self, g: &[i64]) -> Option<usize> {
        self.support.iter().position(|s| s == g)
    }

    pub fn is_thin(&self) -> bool {
        self.components.iter().all(|c| c.len() == 1)
    }

    pub fn check_thin(&self) -> Result<()> {
        match self.components.iter().position(|c| c.len() != 1) {
            None => Ok(()),
            Some(s) => Err(Error::NotThin(
                self.group.format_elem(&self.support[s]),
                self.components[s].len(),
            )),
        }
    }

    /// Pairs of support indices `(g, h)` with `A_g·A_h ≠ 0`.
    pub fn pattern(&self) -> &BTreeSet<(usize, usize)> {
        &self.pattern
    }

    pub fn format_support_elem(&self, s: usize) -> String {
        self.group.format_elem(&self.support[s])
    }

    /// For a thin grading, the scalar `c` with `x_g·x_h = c·x_{g+h}` (zero
    /// when the product vanishes).
    pub fn thin_constant(&self, g: usize, h: usize) -> Elem {
        let i = self.components[g][0];
        let j = self.components[h][0];
        let f = self.field();
        let sum = self.group.add(&self.support[g], &self.support[h]);
        match self.support_index(&sum) {
            Some(k) => self.algebra.product(i, j)[self.components[k][0]].clone(),
            None => f.zero(),
        }
    }

    pub fn universal_group(&self) -> Result<UniversalGroup> {
        let m = self.support.len();
        let mut relations = Vec::new();
        for &(g, h) in &self.pattern {
            let sum = self.group.add(&self.support[g], &self.support[h]);
            let k = self
                .support_index(&sum)
                .ok_or_else(|| Error::Identity("product lands outside the support".into()))?;
            let mut r = vec![0i64; m];
            r[g] += 1;
            r[h] += 1;
            r[k] -= 1;
            relations.push(r);
        }
        let q = group_from_presentation(&Presentation::new(m, relations));
        let fold: Vec<GroupElem> = q
            .lifts
            .iter()
            .map(|lift| {
                let c: Vec<i64> = lift
                    .iter()
                    .map(|x| x.to_i64().expect("coefficient fits in i64"))
                    .collect();
                self.group.combine(&c, &self.support)
            })
            .collect();
        for (s, d) in q.projection.iter().enumerate() {
            if self.group.combine(d, &fold) != self.support[s] {
                return Err(Error::Identity(format!(
                    "universal degree of {} does not fold back",
                    self.format_support_elem(s)
                )));
            }
        }
        let labels = self
            .component_of
            .iter()
            .map(|&s| q.projection[s].clone())
            .collect();
        let grading = build_grading(&self.algebra, &q.group, labels)?;
        Ok(UniversalGroup {
            group: q.group,
            degrees: q.projection,
            fold,
            grading,
        })
    }

    /// `Γ_K` on `A ⊗ K`, re-verified.
    pub fn extend_scalars(&self, k: &Field) -> Result<Grading> {
        build_grading(
            &self.algebra.extend_scalars(k)?,
            &self.group,
            self.labels.clone(),
        )
    }

    /// The grading with structure constants reduced into `k`.
    pub fn reduce(&self, k: &Field) -> Result<Grading> {
        build_grading(&self.algebra.reduce(k)?, &self.group, self.labels.clone())
    }

    /// `(P, complement)` as pairs of group elements.
    pub fn product_pattern(&self) -> (Vec<(GroupElem, GroupElem)>, Vec<(GroupElem, GroupElem)>) {
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        for g in 0..self.support.len() {
            for h in 0..self.support.len() {
                let pair = (self.support[g].clone(), self.support[h].clone());
                if self.pattern.contains(&(g, h)) {
                    inside.push(pair);
                } else {
                    outside.push(pair);
                }
            }
        }
        (inside, outside)
    }
}

impl fmt::Debug for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Grading(dim {} by {}, support {:?})",
            self.dim(),
            self.group,
            self.support
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn example_gradings_are_valid() {
        let q = Field::rationals();
        let g = fixtures::cubic(&q).unwrap();
        assert_eq!(g.pattern().len(), 9);
        assert!(verify_grading_generic(g.algebra(), g.group(), g.labels()));
        let g = fixtures::zero6(&q).unwrap();
        assert!(g.pattern().is_empty());
        assert_eq!(g.support(), &[vec![2], vec![3]]);
        let f3 = Field::prime(3).unwrap();
        let g = fixtures::cyc3(&f3).unwrap();
        let pairs: Vec<_> = g.pattern().iter().copied().collect();
        assert_eq!(pairs, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn corrupted_label_gives_witness() {
        let f3 = Field::prime(3).unwrap();
        let g = fixtures::cyc3(&f3).unwrap();
        let err = build_grading(g.algebra(), g.group(), vec![vec![1], vec![1]]).unwrap_err();
        match err {
            Error::GradingAxiom { left, right, .. } => {
                assert_eq!((left.as_str(), right.as_str()), ("e1", "e1"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(!verify_grading_generic(
            g.algebra(),
            g.group(),
            &[vec![1], vec![1]]
        ));
    }

    #[test]
    fn universal_groups() {
        let q = Field::rationals();
        let u = fixtures::cubic(&q).unwrap().universal_group().unwrap();
        assert_eq!(u.group, FGAbelianGroup::cyclic(3));
        let u = fixtures::zero6(&q).unwrap().universal_group().unwrap();
        assert_eq!(u.group, FGAbelianGroup::free(2));
        let f3 = Field::prime(3).unwrap();
        let u = fixtures::cyc3(&f3).unwrap().universal_group().unwrap();
        assert_eq!(u.group, FGAbelianGroup::cyclic(3));
        let u = fixtures::triv(&f3).unwrap().universal_group().unwrap();
        assert_eq!(u.group, FGAbelianGroup::trivial());
    }

    #[test]
    fn scalar_extension_keeps_support_and_pattern() {
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::finite(9).unwrap();
        let g = fixtures::cyc3(&f3).unwrap();
        let h = g.extend_scalars(&f9).unwrap();
        assert_eq!(g.support(), h.support());
        assert_eq!(g.pattern(), h.pattern());
        let q = Field::rationals();
        let k = Field::extension(&q, crate::scalars::poly::from_ints(&q, &[1, 1, 1])).unwrap();
        let g = fixtures::cubic(&q).unwrap();
        assert_eq!(g.extend_scalars(&k).unwrap().pattern(), g.pattern());
    }

    #[test]
    fn derivations_of_dual_numbers() {
        let q = Field::rationals();
        let g = fixtures::triv(&q).unwrap();
        // D(1) = 0 and D(x) = a x.
        assert_eq!(g.algebra().derivations().len(), 1);
        let g = fixtures::zero6(&q).unwrap();
        assert_eq!(g.algebra().derivations().len(), 4);
        let g = fixtures::cubic(&q).unwrap();
        assert!(g.algebra().derivations().is_empty());
    }
}
