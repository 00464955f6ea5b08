//! Weyl groups of gradings: admissible permutations of the support, the
//! multiplicative system solved through Smith normal form for thin
//! gradings, and the exact sequence `Stab → Aut(Γ) → W`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::abgroups::{smith_normal_form, IntMatrix};
use crate::comrings::{Tabled, TestRing};
use crate::galg::Grading;
use crate::points::{self, enumerate_points, Functor, Stage};
use crate::scalars::{Elem, Field, Root};
use crate::{Error, Result};

/// A permutation of the support, by support index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(m: usize) -> Perm {
        Perm((0..m).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// Disjoint cycles of length at least two.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut k = self.0[start];
            while k != start {
                seen[k] = true;
                cycle.push(k);
                k = self.0[k];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle notation with the given labels, `()` for the identity.
    pub fn format_with(&self, labels: &[String]) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                let names: Vec<&str> = c.iter().map(|&i| labels[i].as_str()).collect();
                format!("({})", names.join(" "))
            })
            .collect()
    }
}

/// A finite permutation group, listed in full.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    pub labels: Vec<String>,
    pub elements: Vec<Perm>,
    pub generators: Vec<Perm>,
}

impl PermGroup {
    /// Checks closure under composition, then picks generators greedily.
    pub fn from_elements(
        labels: Vec<String>,
        elements: impl IntoIterator<Item = Perm>,
    ) -> Result<PermGroup> {
        let set: BTreeSet<Perm> = elements.into_iter().collect();
        let m = labels.len();
        if !set.contains(&Perm::identity(m)) {
            return Err(Error::Identity("permutation set lacks the identity".into()));
        }
        for a in &set {
            for b in &set {
                if !set.contains(&a.compose(b)) {
                    return Err(Error::Identity(format!(
                        "permutations {} and {} compose outside the set",
                        a.format_with(&labels),
                        b.format_with(&labels)
                    )));
                }
            }
        }
        let elements: Vec<Perm> = set.into_iter().collect();
        let mut span: BTreeSet<Perm> = BTreeSet::from([Perm::identity(m)]);
        let mut generators = Vec::new();
        for p in &elements {
            if span.contains(p) {
                continue;
            }
            generators.push(p.clone());
            span = closure(&generators, m);
        }
        Ok(PermGroup {
            labels,
            elements,
            generators,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.elements.iter().all(|p| other.contains(p))
    }

    pub fn format_generators(&self) -> String {
        if self.generators.is_empty() {
            return "()".into();
        }
        self.generators
            .iter()
            .map(|p| p.format_with(&self.labels))
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn closure(gens: &[Perm], m: usize) -> BTreeSet<Perm> {
    let mut set: BTreeSet<Perm> = BTreeSet::from([Perm::identity(m)]);
    let mut frontier: Vec<Perm> = vec![Perm::identity(m)];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = g.compose(&p);
            if set.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    set
}

impl fmt::Display for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "order {} generated by {}",
            self.order(),
            self.format_generators()
        )
    }
}

/// Support labels as text, in support order.
pub fn support_labels(g: &Grading) -> Vec<String> {
    (0..g.support().len())
        .map(|s| g.format_support_elem(s))
        .collect()
}

/// Permutations `σ` of the support that keep component dimensions, map the
/// product pattern onto itself, and satisfy `σ(g + h) = σ(g) + σ(h)` for
/// every pair with `A_g·A_h ≠ 0`.
pub fn admissible_permutations(g: &Grading) -> Vec<Perm> {
    let m = g.support().len();
    let group = g.group();
    let sum_index = |a: usize, b: usize| {
        let s = group.add(&g.support()[a], &g.support()[b]);
        g.support_index(&s)
    };
    points::permutations(m)
        .into_iter()
        .map(Perm)
        .filter(|p| {
            (0..m).all(|s| g.component(s).len() == g.component(p.apply(s)).len())
                && (0..m).all(|a| {
                    (0..m).all(|b| {
                        g.pattern().contains(&(a, b))
                            == g.pattern().contains(&(p.apply(a), p.apply(b)))
                    })
                })
                && g.pattern().iter().all(|&(a, b)| {
                    match (sum_index(a, b), sum_index(p.apply(a), p.apply(b))) {
                        (Some(k), Some(k2)) => p.apply(k) == k2,
                        _ => false,
                    }
                })
        })
        .collect()
}

/// Whether equations are read over an algebraic closure or over the base
/// field itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    Closure,
    Field,
}

/// The equations `λ_g·λ_h·c(σg, σh) = c(g, h)·λ_{g+h}` over `(g, h) ∈ P` for
/// a thin grading and a permutation `σ`.
pub struct ThinConstraintSystem<'g> {
    grading: &'g Grading,
    pub sigma: Perm,
    /// Exponent rows `e_g + e_h − e_{g+h}`.
    pub exponents: Vec<Vec<i64>>,
    /// Right-hand sides `c(g, h) / c(σg, σh)`.
    pub rhs: Vec<Elem>,
}

/// Outcome of [`ThinConstraintSystem::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThinSolution {
    /// One scalar per support element.
    Witness(Vec<Elem>),
    /// The row of `U·E·V = D` with `dᵢ = 0` whose transformed right-hand
    /// side is not 1, or the row whose root does not exist.
    Unsolvable {
        row: usize,
        value: String,
        degree: u64,
    },
    Undecided(String),
}

impl<'g> ThinConstraintSystem<'g> {
    pub fn new(g: &'g Grading, sigma: &Perm) -> Result<ThinConstraintSystem<'g>> {
        g.check_thin()?;
        let f = g.field();
        let m = g.support().len();
        let mut exponents = Vec::new();
        let mut rhs = Vec::new();
        for &(a, b) in g.pattern() {
            let sum = g.group().add(&g.support()[a], &g.support()[b]);
            let k = g
                .support_index(&sum)
                .ok_or_else(|| Error::Identity("product outside the support".into()))?;
            let mut row = vec![0i64; m];
            row[a] += 1;
            row[b] += 1;
            row[k] -= 1;
            let c = g.thin_constant(a, b);
            let cs = g.thin_constant(sigma.apply(a), sigma.apply(b));
            if f.is_zero(&cs) {
                return Err(Error::Precondition(format!(
                    "permutation {} does not preserve the product pattern",
                    sigma.format_with(&support_labels(g))
                )));
            }
            exponents.push(row);
            rhs.push(f.div(&c, &cs)?);
        }
        Ok(ThinConstraintSystem {
            grading: g,
            sigma: sigma.clone(),
            exponents,
            rhs,
        })
    }

    fn unknowns(&self) -> usize {
        self.grading.support().len()
    }

    /// `(d, c')` with `c'ᵢ = Π_r c_r^{U[i][r]}`, one entry per unknown.
    fn diagonalize(&self) -> Result<(crate::abgroups::SmithForm, Vec<BigInt>, Vec<Elem>)> {
        let f = self.grading.field();
        let m = self.unknowns();
        let e = IntMatrix::from_rows(m, &self.exponents);
        let s = smith_normal_form(&e);
        let rows = self.exponents.len();
        let diag = s.diagonal();
        let mut d = Vec::with_capacity(rows.max(m));
        let mut c_prime = Vec::with_capacity(rows);
        for i in 0..rows {
            d.push(diag.get(i).cloned().unwrap_or_default());
            let mut acc = f.one();
            for (r, c) in self.rhs.iter().enumerate() {
                let k = s.u.get(i, r);
                if !k.is_zero() {
                    acc = f.mul(&acc, &f.pow_int(c, k)?);
                }
            }
            c_prime.push(acc);
        }
        Ok((s, d, c_prime))
    }

    /// Solvability over an algebraic closure: every row with `dᵢ = 0` must
    /// have `c'ᵢ = 1`.
    pub fn solvable_in_closure(&self) -> Result<bool> {
        let f = self.grading.field();
        let (_, d, c) = self.diagonalize()?;
        Ok(d.iter()
            .zip(&c)
            .all(|(di, ci)| !di.is_zero() || f.is_one(ci)))
    }

    /// A witness in the base field, or the reason none exists.
    pub fn solve(&self, mode: SolveMode) -> Result<ThinSolution> {
        let f = self.grading.field();
        let m = self.unknowns();
        let (s, d, c) = self.diagonalize()?;
        let mut mu = vec![f.one(); m];
        for (i, (di, ci)) in d.iter().zip(&c).enumerate() {
            if di.is_zero() {
                if !f.is_one(ci) {
                    return Ok(ThinSolution::Unsolvable {
                        row: i,
                        value: f.format(ci),
                        degree: 0,
                    });
                }
                continue;
            }
            let deg = di.to_u64().expect("invariant factor fits in u64");
            if mode == SolveMode::Closure {
                continue;
            }
            match f.dth_root(ci, deg)? {
                Root::Witness(w) => mu[i] = w,
                Root::NoSolution => {
                    return Ok(ThinSolution::Unsolvable {
                        row: i,
                        value: f.format(ci),
                        degree: deg,
                    })
                }
                Root::Unknown => {
                    return Ok(ThinSolution::Undecided(format!(
                        "root of degree {deg} of {} in {}",
                        f.format(ci),
                        f.name()
                    )))
                }
            }
        }
        if mode == SolveMode::Closure {
            return Ok(ThinSolution::Witness(Vec::new()));
        }
        let lambda: Vec<Elem> = (0..m)
            .map(|j| {
                (0..m).try_fold(f.one(), |acc, i| {
                    Ok::<Elem, Error>(f.mul(&acc, &f.pow_int(&mu[i], s.v.get(j, i))?))
                })
            })
            .collect::<Result<_>>()?;
        if !self.check(&lambda) {
            return Err(Error::Identity(format!(
                "thin solver witness fails for {}",
                self.sigma.format_with(&support_labels(self.grading))
            )));
        }
        Ok(ThinSolution::Witness(lambda))
    }

    /// Whether `λ` satisfies every equation.
    pub fn check(&self, lambda: &[Elem]) -> bool {
        let f = self.grading.field();
        self.exponents.iter().zip(&self.rhs).all(|(row, c)| {
            let mut lhs = f.one();
            for (j, &k) in row.iter().enumerate() {
                if k != 0 {
                    match f.pow_int(&lambda[j], &BigInt::from(k)) {
                        Ok(x) => lhs = f.mul(&lhs, &x),
                        Err(_) => return false,
                    }
                }
            }
            lhs == *c
        })
    }

    /// Number of solutions over a finite field:
    /// `Π gcd(dᵢ, q − 1)·(q − 1)^(free)` when solvable, else 0.
    pub fn count_over_finite(&self) -> Result<u128> {
        let f = self.grading.field();
        let q = f.cardinality().ok_or(Error::InfiniteField)? as u128;
        if !matches!(self.solve(SolveMode::Field)?, ThinSolution::Witness(_)) {
            return Ok(0);
        }
        let (_, d, _) = self.diagonalize()?;
        let m = self.unknowns();
        let mut count: u128 = 1;
        let mut nonzero = 0;
        for di in d.iter().take(m) {
            if !di.is_zero() {
                nonzero += 1;
                let di = di.to_u128().expect("fits");
                count *= di.gcd(&(q - 1));
            }
        }
        for _ in nonzero..m {
            count *= q - 1;
        }
        Ok(count)
    }

    /// The monomial automorphism `x_g ↦ λ_g·x_{σg}` as a matrix over `F`.
    pub fn matrix(&self, lambda: &[Elem]) -> Vec<Vec<Elem>> {
        let g = self.grading;
        let f = g.field();
        let n = g.dim();
        let mut phi = vec![vec![f.zero(); n]; n];
        for s in 0..g.support().len() {
            let j = g.component(s)[0];
            let i = g.component(self.sigma.apply(s))[0];
            phi[i][j] = lambda[s].clone();
        }
        phi
    }
}

/// `W(Γ)` over an algebraic closure: the admissible permutations whose
/// system is solvable there. Available for thin gradings and for gradings
/// with a single support element.
pub fn weyl_closure(g: &Grading) -> Result<PermGroup> {
    let labels = support_labels(g);
    if g.support().len() == 1 {
        return PermGroup::from_elements(labels, [Perm::identity(1)]);
    }
    g.check_thin()?;
    let mut elems = Vec::new();
    for p in admissible_permutations(g) {
        if ThinConstraintSystem::new(g, &p)?.solvable_in_closure()? {
            elems.push(p);
        }
    }
    PermGroup::from_elements(labels, elems)
}

/// `W(Γ)` over the base field: thin gradings use the solver, others the
/// block permutations of enumerated points of `Aut(Γ)(F)`.
pub fn weyl_over_field(g: &Grading, cap: u128) -> Result<PermGroup> {
    let labels = support_labels(g);
    if g.is_thin() {
        let mut elems = Vec::new();
        for p in admissible_permutations(g) {
            match ThinConstraintSystem::new(g, &p)?.solve(SolveMode::Field)? {
                ThinSolution::Witness(_) => elems.push(p),
                ThinSolution::Unsolvable { .. } => {}
                ThinSolution::Undecided(msg) => return Err(Error::Undecided(msg)),
            }
        }
        return PermGroup::from_elements(labels, elems);
    }
    let ring = Tabled::new(&TestRing::base_field(g.field()))?;
    let stage = Stage::new(g, &ring)?;
    let mut elems = BTreeSet::new();
    for phi in enumerate_points(&stage, Functor::AutGamma, cap)? {
        let perms = stage
            .block_permutations(&phi)
            .map_err(|b| Error::Identity(format!("point fails at block {}", b.block)))?;
        elems.insert(Perm(perms[0].clone()));
    }
    PermGroup::from_elements(labels, elems)
}

/// Outcome of [`ses_check`].
#[derive(Clone, Debug)]
pub struct SesReport {
    pub field: String,
    pub aut_gamma: usize,
    pub stab: usize,
    pub weyl: PermGroup,
    pub closure: PermGroup,
    /// `|Aut(Γ)(F)|` predicted by the thin solver, when the grading is thin.
    pub thin_count: Option<u128>,
}

impl SesReport {
    pub fn passed(&self) -> bool {
        self.aut_gamma == self.stab * self.weyl.order()
            && self.weyl.is_subgroup_of(&self.closure)
            && self.thin_count.is_none_or(|c| c == self.aut_gamma as u128)
    }
}

/// Checks `|Aut(Γ)(F)| = |Stab(Γ)(F)|·|W(F)|` by enumeration over a finite
/// field, with `W(F)` read off the points and compared to the closure.
pub fn ses_check(g: &Grading, cap: u128) -> Result<SesReport> {
    let ring = Tabled::new(&TestRing::base_field(g.field()))?;
    let stage = Stage::new(g, &ring)?;
    let aut = enumerate_points(&stage, Functor::AutGamma, cap)?;
    let stab = aut.iter().filter(|phi| stage.is_stab(phi)).count();
    let mut perms = BTreeSet::new();
    for phi in &aut {
        let p = stage
            .block_permutations(phi)
            .map_err(|b| Error::Identity(format!("point fails at block {}", b.block)))?;
        perms.insert(Perm(p[0].clone()));
    }
    let weyl = PermGroup::from_elements(support_labels(g), perms)?;
    let closure = weyl_closure(g)?;
    let thin_count = if g.is_thin() {
        let mut total = 0u128;
        for p in admissible_permutations(g) {
            total += ThinConstraintSystem::new(g, &p)?.count_over_finite()?;
        }
        Some(total)
    } else {
        None
    };
    Ok(SesReport {
        field: g.field().name().to_string(),
        aut_gamma: aut.len(),
        stab,
        weyl,
        closure,
        thin_count,
    })
}

/// `|Aut(Γ)(F)|` for a thin grading over a finite field, from the solver.
pub fn thin_autgamma_count(g: &Grading) -> Result<u128> {
    let mut total = 0u128;
    for p in admissible_permutations(g) {
        total += ThinConstraintSystem::new(g, &p)?.count_over_finite()?;
    }
    Ok(total)
}

/// A finite field over which `W(F)` equals the closure.
#[derive(Clone, Debug)]
pub struct SplittingWitness {
    pub field: Field,
    pub weyl: PermGroup,
    pub closure: PermGroup,
}

/// Searches `F_{q^m}` for `m ≤ max_degree` (finite base field) or the
/// reductions modulo small primes and their extensions (rational base
/// field, keeping only primes that preserve the product pattern) for a
/// field where the Weyl group reaches the closure.
pub fn splitting_field(g: &Grading, max_degree: u32) -> Result<Option<SplittingWitness>> {
    g.check_thin()?;
    let closure = weyl_closure(g)?;
    let f = g.field();
    let candidates: Vec<(Grading, u64)> = match f.cardinality() {
        Some(q) => vec![(g.clone(), q)],
        None if f.degree() == 1 => {
            let mut out = Vec::new();
            for p in [2u64, 3, 5, 7, 11, 13] {
                let fp = Field::prime(p)?;
                if let Ok(h) = g.reduce(&fp) {
                    if h.pattern() == g.pattern() {
                        out.push((h, p));
                    }
                }
            }
            out
        }
        None => {
            return Err(Error::Precondition(
                "search needs Q or a finite field".into(),
            ))
        }
    };
    for (h, q) in candidates {
        let reduced_closure = weyl_closure(&h)?;
        if reduced_closure != closure {
            continue;
        }
        for m in 1..=max_degree {
            let Some(size) = q.checked_pow(m) else { break };
            if size > 1 << 16 {
                break;
            }
            let k = Field::finite(size)?;
            let hk = h.extend_scalars(&k)?;
            let w = weyl_over_field(&hk, points::DEFAULT_CAP)?;
            if w == closure {
                return Ok(Some(SplittingWitness {
                    field: k,
                    weyl: w,
                    closure,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn cycle_notation() {
        let labels: Vec<String> = ["0", "1", "2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(Perm(vec![0, 2, 1]).format_with(&labels), "(1 2)");
        assert_eq!(Perm(vec![0, 1, 2]).format_with(&labels), "()");
        assert_eq!(Perm(vec![1, 2, 0]).format_with(&labels), "(0 1 2)");
    }

    #[test]
    fn cubic_over_rationals_and_f7() {
        let q = Field::rationals();
        let g = fixtures::cubic(&q).unwrap();
        let adm = admissible_permutations(&g);
        assert_eq!(adm.len(), 2);
        let swap = Perm(vec![0, 2, 1]);
        let sys = ThinConstraintSystem::new(&g, &swap).unwrap();
        assert!(sys.solvable_in_closure().unwrap());
        assert!(matches!(
            sys.solve(SolveMode::Field).unwrap(),
            ThinSolution::Unsolvable { degree: 3, .. }
        ));
        assert_eq!(weyl_closure(&g).unwrap().order(), 2);
        assert_eq!(weyl_over_field(&g, points::DEFAULT_CAP).unwrap().order(), 1);
        let g7 = fixtures::cubic(&Field::prime(7).unwrap()).unwrap();
        assert_eq!(
            weyl_over_field(&g7, points::DEFAULT_CAP).unwrap().order(),
            1
        );
        let report = ses_check(&g7, points::DEFAULT_CAP).unwrap();
        assert_eq!((report.aut_gamma, report.stab), (3, 3));
        assert!(report.passed());
    }

    #[test]
    fn cube_root_witness() {
        // cubing is a bijection of F11
        let f11 = Field::prime(11).unwrap();
        let g = fixtures::cubic(&f11).unwrap();
        let sys = ThinConstraintSystem::new(&g, &Perm(vec![0, 2, 1])).unwrap();
        match sys.solve(SolveMode::Field).unwrap() {
            ThinSolution::Witness(l) => assert!(sys.check(&l)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn splitting_fields() {
        let q = Field::rationals();
        let w = splitting_field(&fixtures::cubic(&q).unwrap(), 3)
            .unwrap()
            .unwrap();
        assert_eq!(w.field.cardinality(), Some(3));
        assert_eq!(w.weyl.order(), 2);
        let f7 = Field::prime(7).unwrap();
        let w = splitting_field(&fixtures::cubic(&f7).unwrap(), 3)
            .unwrap()
            .unwrap();
        assert_eq!(w.field.cardinality(), Some(343));
    }

    #[test]
    fn zero6_and_cyc3_weyl() {
        let f5 = Field::prime(5).unwrap();
        let g = fixtures::zero6(&f5).unwrap();
        assert_eq!(weyl_closure(&g).unwrap().order(), 2);
        assert_eq!(thin_autgamma_count(&g).unwrap(), 32);
        let f3 = Field::prime(3).unwrap();
        let g = fixtures::cyc3(&f3).unwrap();
        assert_eq!(weyl_over_field(&g, points::DEFAULT_CAP).unwrap().order(), 2);
        assert!(ses_check(&g, points::DEFAULT_CAP).unwrap().passed());
        let t = fixtures::triv(&f3).unwrap();
        let r = ses_check(&t, points::DEFAULT_CAP).unwrap();
        assert!(r.passed());
        assert_eq!(r.aut_gamma, 2);
    }
}
