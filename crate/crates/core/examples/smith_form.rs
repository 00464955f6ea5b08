//! Smith normal form of a relation matrix and the group it presents.
use gradscheme::abgroups::{group_from_presentation, smith_normal_form, IntMatrix, Presentation};

fn main() {
    let rows = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
    let m = IntMatrix::from_rows(3, &rows);
    let s = smith_normal_form(&m);
    println!("invariant factors: {:?}", s.diagonal());
    println!("U*M*V = D holds: {}", s.verify(&m));
    let q = group_from_presentation(&Presentation::new(3, rows));
    println!("Z^3 / rows = {}", q.group);
}
