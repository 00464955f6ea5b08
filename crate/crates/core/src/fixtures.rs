//! The worked gradings and the standard battery of test rings.

use crate::abgroups::FGAbelianGroup;
use crate::comrings::TestRing;
use crate::galg::{build_grading, Algebra, Grading, Vector};
use crate::scalars::Field;
use crate::Result;

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn basis_vec(f: &Field, n: usize, k: usize, c: i64) -> Vector {
    let mut v = vec![f.zero(); n];
    v[k] = f.from_i64(c);
    v
}

/// Two-dimensional algebra with zero multiplication, graded by `ℤ/6` with
/// degrees 2 and 3.
pub fn zero6(f: &Field) -> Result<Grading> {
    let a = Algebra::zero_product(f, names(&["u", "v"]));
    build_grading(&a, &FGAbelianGroup::cyclic(6), vec![vec![2], vec![3]])
}

/// `e1² = e2`, `e2² = e1`, `e1e2 = 0`, graded by `ℤ/3` with degrees 1 and 2.
pub fn cyc3(f: &Field) -> Result<Grading> {
    let n = 2;
    let zero = vec![f.zero(); n];
    let table = vec![
        vec![basis_vec(f, n, 1, 1), zero.clone()],
        vec![zero, basis_vec(f, n, 0, 1)],
    ];
    let a = Algebra::new(f, names(&["e1", "e2"]), table)?;
    build_grading(&a, &FGAbelianGroup::cyclic(3), vec![vec![1], vec![2]])
}

/// `F[u]/(u³ − 2)` in the basis `1, u, u²`, graded by `ℤ/3` by powers of `u`.
/// In characteristic 2 the products `u·u²` and `u²·u²` vanish.
pub fn cubic(f: &Field) -> Result<Grading> {
    let n = 3;
    let v = |k, c| basis_vec(f, n, k, c);
    let table = vec![
        vec![v(0, 1), v(1, 1), v(2, 1)],
        vec![v(1, 1), v(2, 1), v(0, 2)],
        vec![v(2, 1), v(0, 2), v(1, 2)],
    ];
    let a = Algebra::new(f, names(&["b0", "b1", "b2"]), table)?;
    build_grading(
        &a,
        &FGAbelianGroup::cyclic(3),
        vec![vec![0], vec![1], vec![2]],
    )
}

/// `F[x]/(x²)` with the trivial grading.
pub fn triv(f: &Field) -> Result<Grading> {
    let n = 2;
    let zero = vec![f.zero(); n];
    let table = vec![
        vec![basis_vec(f, n, 0, 1), basis_vec(f, n, 1, 1)],
        vec![basis_vec(f, n, 1, 1), zero],
    ];
    let a = Algebra::new(f, names(&["e", "x"]), table)?;
    build_grading(&a, &FGAbelianGroup::trivial(), vec![vec![], vec![]])
}

/// A fixture by its short name: `zero6`, `cyc3`, `cubic` or `triv`.
pub fn by_name(name: &str, f: &Field) -> Option<Result<Grading>> {
    match name {
        "zero6" => Some(zero6(f)),
        "cyc3" => Some(cyc3(f)),
        "cubic" => Some(cubic(f)),
        "triv" => Some(triv(f)),
        _ => None,
    }
}

/// Fixture and base-field pairs of the standard battery.
pub fn battery_fixtures() -> Result<Vec<(String, Grading)>> {
    let q = Field::rationals();
    let f3 = Field::prime(3)?;
    let f5 = Field::prime(5)?;
    let f7 = Field::prime(7)?;
    let f9 = Field::finite(9)?;
    let mut out = Vec::new();
    for f in [&q, &f3, &f5] {
        out.push((format!("zero6/{}", f.name()), zero6(f)?));
    }
    for f in [&f3, &f9] {
        out.push((format!("cyc3/{}", f.name()), cyc3(f)?));
    }
    for f in [&q, &f7] {
        out.push((format!("cubic/{}", f.name()), cubic(f)?));
    }
    for f in [&q, &f3] {
        out.push((format!("triv/{}", f.name()), triv(f)?));
    }
    Ok(out)
}

/// Base field, dual numbers of order 2 and 3, `F × F`, `F[ℤ/2]`, `F[ℤ/3]`.
pub fn battery_rings(f: &Field) -> Result<Vec<TestRing>> {
    let base = TestRing::base_field(f);
    Ok(vec![
        base.clone(),
        TestRing::dual_numbers(f, 2)?,
        TestRing::dual_numbers(f, 3)?,
        TestRing::product(&base, &base)?,
        TestRing::group_algebra_finite(f, &FGAbelianGroup::cyclic(2))?,
        TestRing::group_algebra_finite(f, &FGAbelianGroup::cyclic(3))?,
    ])
}
