//! The swap of a Z/6 grading lies in Aut(Gamma) but not in the normalizer
//! of the diagonalizable group, and the relation explaining why.
use gradscheme::comrings::TestRing;
use gradscheme::fixtures;
use gradscheme::points::Stage;
use gradscheme::scalars::Field;

fn main() -> gradscheme::Result<()> {
    let q = Field::rationals();
    let g = fixtures::zero6(&q)?;
    let r = TestRing::base_field(&q);
    let stage = Stage::new(&g, &r)?;
    let swap = vec![vec![r.zero(), r.one()], vec![r.one(), r.zero()]];
    println!("{}", stage.format_images(&swap).join(", "));
    println!("in Aut(Gamma): {}", stage.is_autgamma(&swap));
    println!(
        "generic normalizer shifts: {:?}",
        stage.norm_generic(&swap)?
    );
    println!("D(G) verdict: {:?}", stage.dgroup_norm(&swap)?);
    Ok(())
}
