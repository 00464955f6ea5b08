//! Weyl group of the Z/3 grading on Q[u]/(u^3 - 2) over Q, over an
//! algebraic closure and over a splitting finite field.
use gradscheme::fixtures;
use gradscheme::points::DEFAULT_CAP;
use gradscheme::scalars::Field;
use gradscheme::weyl;

fn main() -> gradscheme::Result<()> {
    let g = fixtures::cubic(&Field::rationals())?;
    let closure = weyl::weyl_closure(&g)?;
    let rational = weyl::weyl_over_field(&g, DEFAULT_CAP)?;
    println!(
        "closure: order {} generated by {}",
        closure.order(),
        closure.format_generators()
    );
    println!("over Q: order {}", rational.order());
    if let Some(w) = weyl::splitting_field(&g, 4)? {
        println!("full Weyl group over {}: order {}", w.field, w.weyl.order());
    }
    Ok(())
}
