//! Block decomposition of group algebras and dual numbers.
use gradscheme::abgroups::FGAbelianGroup;
use gradscheme::comrings::TestRing;
use gradscheme::scalars::Field;

fn main() -> gradscheme::Result<()> {
    let z6 = FGAbelianGroup::cyclic(6);
    let rings = [
        TestRing::group_algebra_finite(&Field::rationals(), &z6)?,
        TestRing::group_algebra_finite(&Field::prime(7)?, &z6)?,
        TestRing::dual_numbers(&Field::prime(3)?, 2)?,
    ];
    for r in &rings {
        let idem = r.idempotents()?;
        println!("{r}: {} primitive idempotents", idem.len());
        for e in &idem {
            println!("  {}", r.format(e));
        }
    }
    Ok(())
}
