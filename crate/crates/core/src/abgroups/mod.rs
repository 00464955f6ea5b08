//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group is `Z/d₁ ⊕ … ⊕ Z/d_k ⊕ Z^r` with `d₁ | d₂ | … | d_k`, each `dᵢ ≥ 2`.
//! Elements are integer vectors with the torsion coordinates first, reduced
//! into `[0, dᵢ)`; the free coordinates follow.

mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

pub use snf::{hermite_rows, left_kernel, smith_normal_form, solve_left, IntMatrix, SmithForm};

use crate::{Error, Result};

pub type GroupElem = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FGAbelianGroup {
    torsion: Vec<u64>,
    free_rank: usize,
}

impl FGAbelianGroup {
    pub fn new(torsion: Vec<u64>, free_rank: usize) -> Result<FGAbelianGroup> {
        if torsion.iter().any(|&d| d < 2) {
            return Err(Error::Precondition(
                "invariant factors must be at least 2".into(),
            ));
        }
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Precondition(format!(
                "invariant factors {torsion:?} do not form a divisibility chain"
            )));
        }
        Ok(FGAbelianGroup { torsion, free_rank })
    }

    pub fn trivial() -> FGAbelianGroup {
        FGAbelianGroup::default()
    }

    pub fn cyclic(n: u64) -> FGAbelianGroup {
        if n == 0 {
            return FGAbelianGroup::free(1);
        }
        if n == 1 {
            return FGAbelianGroup::trivial();
        }
        FGAbelianGroup {
            torsion: vec![n],
            free_rank: 0,
        }
    }

    pub fn free(rank: usize) -> FGAbelianGroup {
        FGAbelianGroup {
            torsion: Vec::new(),
            free_rank: rank,
        }
    }

    /// The group presented by a list of cyclic summands (`0` meaning `Z`),
    /// e.g. `[2, 3]` gives `Z/6`. The projection maps the summand
    /// coordinates into the invariant-factor coordinates.
    pub fn from_cyclic_factors(orders: &[u64]) -> Quotient {
        let m = orders.len();
        let rels: Vec<Vec<i64>> = orders
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| {
                let mut r = vec![0; m];
                r[i] = d as i64;
                r
            })
            .collect();
        group_from_presentation(&Presentation::new(m, rels))
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Number of coordinates of an element.
    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }

    pub fn zero(&self) -> GroupElem {
        vec![0; self.ngens()]
    }

    /// Canonical generators (unit coordinate vectors).
    pub fn generators(&self) -> Vec<GroupElem> {
        (0..self.ngens())
            .map(|i| {
                let mut v = self.zero();
                v[i] = 1;
                v
            })
            .collect()
    }

    /// Order of the i-th canonical generator (`0` for a free generator).
    pub fn generator_order(&self, i: usize) -> u64 {
        self.torsion.get(i).copied().unwrap_or(0)
    }

    pub fn normalize(&self, v: &[i64]) -> GroupElem {
        assert_eq!(v.len(), self.ngens(), "element has the wrong length");
        v.iter()
            .enumerate()
            .map(|(i, &x)| match self.torsion.get(i) {
                Some(&d) => x.mod_floor(&(d as i64)),
                None => x,
            })
            .collect()
    }

    pub fn check(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.ngens() || self.normalize(v) != v {
            return Err(Error::BadGroupElement(v.to_vec()));
        }
        Ok(())
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> GroupElem {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.normalize(&s)
    }

    pub fn neg(&self, a: &[i64]) -> GroupElem {
        let s: Vec<i64> = a.iter().map(|x| -x).collect();
        self.normalize(&s)
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> GroupElem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> GroupElem {
        let s: Vec<i64> = a.iter().map(|x| k * x).collect();
        self.normalize(&s)
    }

    /// `Σ kᵢ·aᵢ`.
    pub fn combine(&self, coeffs: &[i64], elems: &[GroupElem]) -> GroupElem {
        elems.iter().zip(coeffs).fold(self.zero(), |acc, (e, &k)| {
            self.add(&acc, &self.scale(k, e))
        })
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// `None` for elements of infinite order.
    pub fn element_order(&self, a: &[i64]) -> Option<u64> {
        if a[self.torsion.len()..].iter().any(|&x| x != 0) {
            return None;
        }
        Some(
            self.torsion
                .iter()
                .zip(a)
                .map(|(&d, &x)| d / (x as u64).gcd(&d))
                .fold(1, |acc, o| acc.lcm(&o)),
        )
    }

    /// All elements in canonical (lexicographic) order, finite groups only.
    pub fn elements(&self) -> Option<Vec<GroupElem>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for &d in &self.torsion {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..d as i64).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        Some(out)
    }

    /// `k` for one coordinate, `(a,b,…)` for several, `0` for the trivial group.
    pub fn format_elem(&self, a: &[i64]) -> String {
        match a.len() {
            0 => "0".into(),
            1 => a[0].to_string(),
            _ => {
                let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub fn parse_elem(&self, text: &str) -> Result<GroupElem> {
        let t = text.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(t);
        let v: Vec<i64> = if self.ngens() == 0 && t == "0" {
            Vec::new()
        } else {
            t.split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Usage(format!("bad group element `{text}`")))?
        };
        if v.len() != self.ngens() {
            return Err(Error::BadGroupElement(v));
        }
        Ok(self.normalize(&v))
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FGAbelianGroup({self})")
    }
}

/// `m` abstract generators subject to integer relations (rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relations: Vec<Vec<i64>>,
}

impl Presentation {
    pub fn new(generators: usize, relations: Vec<Vec<i64>>) -> Presentation {
        for r in &relations {
            assert_eq!(
                r.len(),
                generators,
                "relation length must match generator count"
            );
        }
        Presentation {
            generators,
            relations,
        }
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.generators, &self.relations)
    }
}

/// `Z^m / rowspace` in invariant-factor form.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FGAbelianGroup,
    /// Image of each abstract generator.
    pub projection: Vec<GroupElem>,
    /// Each canonical generator of `group` written in the abstract generators.
    pub lifts: Vec<Vec<BigInt>>,
}

impl Quotient {
    /// Image of an integer combination of the abstract generators.
    pub fn project(&self, coeffs: &[i64]) -> GroupElem {
        self.group.combine(coeffs, &self.projection)
    }
}

pub fn group_from_presentation(p: &Presentation) -> Quotient {
    let m = p.generators;
    let s = smith_normal_form(&p.matrix());
    let diag = s.diagonal();
    let d_at = |i: usize| diag.get(i).cloned().unwrap_or_default();
    let torsion_idx: Vec<usize> = (0..m).filter(|&i| d_at(i) > BigInt::from(1)).collect();
    let free_idx: Vec<usize> = (0..m).filter(|&i| d_at(i).is_zero()).collect();
    let torsion: Vec<u64> = torsion_idx
        .iter()
        .map(|&i| d_at(i).to_u64().expect("invariant factor fits in u64"))
        .collect();
    let group = FGAbelianGroup {
        torsion,
        free_rank: free_idx.len(),
    };
    let kept: Vec<usize> = torsion_idx.iter().chain(&free_idx).copied().collect();
    let projection = (0..m)
        .map(|j| {
            let raw: Vec<i64> = kept
                .iter()
                .map(|&i| {
                    let d = d_at(i);
                    let x = s.v.get(j, i).clone();
                    let x = if d.is_zero() { x } else { x.mod_floor(&d) };
                    x.to_i64().expect("coordinate fits in i64")
                })
                .collect();
            group.normalize(&raw)
        })
        .collect();
    let lifts = kept.iter().map(|&i| s.v_inv.row(i).to_vec()).collect();
    Quotient {
        group,
        projection,
        lifts,
    }
}

/// The subgroup generated by a list of elements, with its relation lattice.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub ambient: FGAbelianGroup,
    pub gens: Vec<GroupElem>,
    pub group: FGAbelianGroup,
    /// Canonical generators of `group` as elements of the ambient group.
    pub inclusion: Vec<GroupElem>,
    /// Image of each listed generator in `group`.
    pub projection: Vec<GroupElem>,
    /// Hermite basis of `{a ∈ Z^S : Σ aᵢ·sᵢ = 0}`.
    pub relations: Vec<Vec<i64>>,
}

impl Subgroup {
    fn stacked(&self) -> IntMatrix {
        stacked_matrix(&self.ambient, &self.gens)
    }

    /// Coefficients expressing `g` in the listed generators, if `g` lies in
    /// the subgroup.
    pub fn express(&self, g: &[i64]) -> Option<Vec<i64>> {
        let b: Vec<BigInt> = g.iter().map(|&x| BigInt::from(x)).collect();
        let x = solve_left(&self.stacked(), &b)?;
        Some(
            x[..self.gens.len()]
                .iter()
                .map(|v| v.to_i64().expect("coefficient fits in i64"))
                .collect(),
        )
    }

    pub fn contains(&self, g: &[i64]) -> bool {
        self.express(g).is_some()
    }

    /// True when the listed elements generate the whole ambient group.
    pub fn is_whole(&self) -> bool {
        self.ambient.generators().iter().all(|g| self.contains(g))
    }
}

fn stacked_matrix(g: &FGAbelianGroup, s: &[GroupElem]) -> IntMatrix {
    let n = g.ngens();
    let mut rows: Vec<Vec<i64>> = s.to_vec();
    for (i, &d) in g.torsion.iter().enumerate() {
        let mut r = vec![0; n];
        r[i] = d as i64;
        rows.push(r);
    }
    IntMatrix::from_rows(n, &rows)
}

pub fn subgroup_generated(g: &FGAbelianGroup, s: &[GroupElem]) -> Result<Subgroup> {
    for x in s {
        g.check(x)?;
    }
    let k = s.len();
    let kernel = left_kernel(&stacked_matrix(g, s));
    let projected: Vec<Vec<BigInt>> = kernel.iter().map(|r| r[..k].to_vec()).collect();
    let relations: Vec<Vec<i64>> = hermite_rows(k, &projected)
        .into_iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("fits")).collect())
        .collect();
    let q = group_from_presentation(&Presentation::new(k, relations.clone()));
    let inclusion = q
        .lifts
        .iter()
        .map(|lift| {
            let c: Vec<i64> = lift.iter().map(|x| x.to_i64().expect("fits")).collect();
            g.combine(&c, s)
        })
        .collect();
    Ok(Subgroup {
        ambient: g.clone(),
        gens: s.to_vec(),
        group: q.group,
        inclusion,
        projection: q.projection,
        relations,
    })
}

/// A finite supply of units, queried by torsion.
pub trait UnitSource {
    type Elem: Clone;
    /// All `x` with `x^d = 1`.
    fn torsion(&self, d: u64) -> Result<Vec<Self::Elem>>;
    /// All units; fails when there are infinitely many.
    fn all(&self) -> Result<Vec<Self::Elem>>;
}

/// A character is its list of values on the canonical generators.
pub type Character<T> = Vec<T>;

/// Every homomorphism `U → R^×`, in canonical order.
pub fn enumerate_characters<S: UnitSource>(
    u: &FGAbelianGroup,
    units: &S,
) -> Result<Vec<Character<S::Elem>>> {
    let mut choices: Vec<Vec<S::Elem>> = Vec::new();
    for &d in &u.torsion {
        choices.push(units.torsion(d)?);
    }
    if u.free_rank > 0 {
        let all = units.all()?;
        for _ in 0..u.free_rank {
            choices.push(all.clone());
        }
    }
    let mut out: Vec<Character<S::Elem>> = vec![Vec::new()];
    for opts in &choices {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for partial in &out {
            for o in opts {
                let mut c = partial.clone();
                c.push(o.clone());
                next.push(c);
            }
        }
        out = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_display_and_validation() {
        assert_eq!(FGAbelianGroup::cyclic(6).to_string(), "Z/6");
        assert_eq!(FGAbelianGroup::free(2).to_string(), "Z^2");
        assert_eq!(FGAbelianGroup::trivial().to_string(), "0");
        assert_eq!(
            FGAbelianGroup::new(vec![2, 4], 1).unwrap().to_string(),
            "Z/2 + Z/4 + Z"
        );
        assert!(FGAbelianGroup::new(vec![2, 3], 0).is_err());
        assert!(FGAbelianGroup::new(vec![1], 0).is_err());
    }

    #[test]
    fn presentations() {
        let q = group_from_presentation(&Presentation::new(
            2,
            vec![vec![2, -1], vec![1, 1], vec![-1, 2]],
        ));
        assert_eq!(q.group, FGAbelianGroup::cyclic(3));
        for rel in [[2, -1], [1, 1], [-1, 2]] {
            assert!(q.group.is_zero(&q.project(&rel)));
        }
        let q = group_from_presentation(&Presentation::new(2, vec![]));
        assert_eq!(q.group, FGAbelianGroup::free(2));
        let q = group_from_presentation(&Presentation::new(1, vec![vec![6]]));
        assert_eq!(q.group, FGAbelianGroup::cyclic(6));
        let q = FGAbelianGroup::from_cyclic_factors(&[2, 3]);
        assert_eq!(q.group, FGAbelianGroup::cyclic(6));
    }

    #[test]
    fn lifts_invert_projection() {
        let q = group_from_presentation(&Presentation::new(3, vec![vec![2, 4, 0], vec![0, 6, 6]]));
        for (i, lift) in q.lifts.iter().enumerate() {
            let c: Vec<i64> = lift.iter().map(|x| x.to_i64().unwrap()).collect();
            let mut unit = q.group.zero();
            unit[i] = 1;
            assert_eq!(q.project(&c), unit);
        }
    }

    #[test]
    fn subgroup_of_c6() {
        let g = FGAbelianGroup::cyclic(6);
        let h = subgroup_generated(&g, &[vec![2], vec![3]]).unwrap();
        assert_eq!(h.group, FGAbelianGroup::cyclic(6));
        assert_eq!(h.relations, vec![vec![3, 0], vec![0, 2]]);
        assert!(h.is_whole());
        let h = subgroup_generated(&g, &[vec![2]]).unwrap();
        assert_eq!(h.group, FGAbelianGroup::cyclic(3));
        assert!(h.contains(&[4]));
        assert!(!h.contains(&[3]));
        assert!(!h.is_whole());
        let h = subgroup_generated(&FGAbelianGroup::free(2), &[]).unwrap();
        assert_eq!(h.group, FGAbelianGroup::trivial());
    }

    #[test]
    fn element_orders_and_listing() {
        let g = FGAbelianGroup::new(vec![2, 4], 0).unwrap();
        assert_eq!(g.element_order(&[1, 2]), Some(2));
        assert_eq!(g.element_order(&[1, 1]), Some(4));
        assert_eq!(g.elements().unwrap().len(), 8);
        assert_eq!(FGAbelianGroup::free(1).element_order(&[3]), None);
        assert_eq!(g.parse_elem("(3,-1)").unwrap(), vec![1, 3]);
    }

    struct Cyclic(u64);
    impl UnitSource for Cyclic {
        type Elem = u64;
        fn torsion(&self, d: u64) -> Result<Vec<u64>> {
            Ok((0..self.0).filter(|x| (x * d) % self.0 == 0).collect())
        }
        fn all(&self) -> Result<Vec<u64>> {
            Ok((0..self.0).collect())
        }
    }

    #[test]
    fn character_counts() {
        // F7^x is cyclic of order 6, F3^x of order 2.
        assert_eq!(
            enumerate_characters(&FGAbelianGroup::cyclic(3), &Cyclic(6))
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            enumerate_characters(&FGAbelianGroup::free(2), &Cyclic(2))
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            enumerate_characters(&FGAbelianGroup::trivial(), &Cyclic(2))
                .unwrap()
                .len(),
            1
        );
    }
}
