//! Arithmetic in F9 and F8, and a cube root in F11.
use gradscheme::scalars::{Field, Root};

fn main() -> gradscheme::Result<()> {
    for q in [9, 8] {
        let f = Field::finite(q)?;
        let elems = f.elements().unwrap();
        let generator = elems
            .iter()
            .find(|x| !f.is_zero(x) && f.unit_order(x).unwrap() == q - 1)
            .unwrap();
        println!(
            "{f}: {} elements, generator {}",
            elems.len(),
            f.format(generator)
        );
    }
    let f11 = Field::prime(11)?;
    match f11.dth_root(&f11.from_i64(7), 3)? {
        Root::Witness(r) => println!("cube root of 7 in F11: {}", f11.format(&r)),
        other => println!("no cube root: {other:?}"),
    }
    Ok(())
}
