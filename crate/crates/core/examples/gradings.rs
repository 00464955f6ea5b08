//! Support, product pattern and universal group of the bundled gradings.
use gradscheme::fixtures;
use gradscheme::scalars::Field;

fn main() -> gradscheme::Result<()> {
    let q = Field::rationals();
    let f3 = Field::prime(3)?;
    for (name, g) in [
        ("zero6", fixtures::zero6(&q)?),
        ("cyc3", fixtures::cyc3(&f3)?),
        ("cubic", fixtures::cubic(&q)?),
        ("triv", fixtures::triv(&f3)?),
    ] {
        let u = g.universal_group()?;
        println!(
            "{name}: group {}, support size {}, thin {}, pattern {:?}, U = {}",
            g.group(),
            g.support().len(),
            g.is_thin(),
            g.pattern(),
            u.group
        );
    }
    Ok(())
}
